//! Functors on the truncated site with values in pointed G-sets, global
//! families of them, and their coherence checks.

mod global;
mod igspace;

pub use global::{check_global, check_global_map, GlobalMap, GlobalSpace};
pub use igspace::{
    check_composition_exhaustive, check_igspace, check_igspace_map, find_natural_iso, IGSpaceFin, MorphismTable,
};
pub(crate) use igspace::perm_label;
