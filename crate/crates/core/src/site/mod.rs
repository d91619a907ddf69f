//! The truncated representation site: representations, hom-spaces with
//! conjugation actions, restriction along homomorphisms and direct sums.

mod axioms;
mod catalog;
mod hom;
mod rep;

pub use axioms::{check_grothendieck, check_restriction_object, check_site_axioms};
pub use catalog::{CatalogHom, SiteCatalog};
pub use hom::{diagonal_hom, hom_space, DiagonalHom, HomSpace};
pub use rep::{fixed_subspace_dim, rep_direct_sum, rep_direct_sum_capped, rep_restrict, Rep};
