//! Extension of functors on trivial representations to all representations,
//! restriction back, the unit and counit of this adjunction, and the
//! internal smash product.

mod adjunction;
mod extend;
mod ispace;
mod smash;

pub use adjunction::{
    check_adjunction, check_adjunction_single, check_counit_naturality, check_ispace_adjunction, counit, counit_single, unit,
    Counit, SingleCounit,
};
pub use extend::{extend, extend_global, extend_global_map, extend_map, Extension, GlobalExtension, KanResult};
pub use ispace::{
    check_ispace, check_ispace_map, random_ispace, random_tower, restrict_global, restrict_igspace, ISpaceFin, ISpaceMap,
};
pub use smash::{internal_smash, unit_space};
