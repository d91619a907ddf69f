mod sphere;
mod structure;

pub use sphere::{
    check_sphere_fixed_points, constant, global_sphere, pointed_set, sign_vector_label, sphere, sphere_functor,
    sphere_map, sphere_smash_iso, suspension, suspension_functor,
};
pub use structure::{
    check_lax, check_spectrum, magma_lax, spectrum_from_lax, sphere_lax, sphere_spectrum, sphere_spectrum_single,
    suspension_spectrum, LaxMonoidalData, SpectrumBase, SpectrumStructure, UnitalMagma,
};
