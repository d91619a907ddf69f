pub mod group;
pub mod hyperoctahedral;
pub mod matrix;
pub mod signed_perm;

pub use group::{enumerate_homs, group_product, same_group, CyclicSubgroup, FiniteGroup, GroupHom, Product};
pub use hyperoctahedral::{hyperoctahedral, Hyperoctahedral, MAX_TABLE_DIM};
pub use matrix::{averaged_rank, RationalMatrix};
pub use signed_perm::{Sign, SignedCycle, SignedPerm};
