pub mod description;
pub mod engine;
pub mod error;
pub mod invariants;
pub mod model;
pub mod nice;
pub mod oracle;
pub mod rational;
pub mod spectrum;

pub use engine::Budget;
pub use error::{Error, Result};
pub use model::{ExplicitPresentation, FGAbelianGroup, GroupElement, LengthSet, Presentation};
pub use rational::Rational;
pub mod zoo;
