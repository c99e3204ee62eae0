//! Gröbner fans, tropical bases and local tropicalizations.

pub mod basis;
pub mod fan;
pub mod local;

pub use basis::{is_unit_monomial, newton_perp, newton_perp_all, tropical_basis_of_fan};
pub use fan::{generic_weight, groebner_cone, groebner_fan, GroebnerCone, GroebnerFan};
pub use local::{
    compare_local_global, extended_newton_intersection, extended_tropical_basis,
    gamma_ptrop_finite, hypersurface_trop, interior_part, nntrop, nntrop_via_basis,
    pure_dimension_check, sample_interior_weights, tropical_basis, Engine, GammaPoly,
    GlobalComparison, Incidence, LocalTrop, StratumData, StratumKind,
};
