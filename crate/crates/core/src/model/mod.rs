pub mod group;
pub mod lengths;
pub mod presentation;

pub use group::{FGAbelianGroup, GroupElement};
pub use lengths::LengthSet;
pub use presentation::{
    validate_explicit, validate_implicit, ExplicitPresentation, ImplicitMonoid, Presentation, ValidationReport,
    Violation,
};
