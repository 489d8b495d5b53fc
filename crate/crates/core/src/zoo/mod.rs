//! Constructors for numerical monoids, block and T-block monoids,
//! seminormal finitely primary monoids and finite coproducts.

pub mod block;
pub mod coproduct;
pub mod numerical;
pub mod seminormal;
pub mod tblock;

pub use block::{block_monoid, BlockMonoid};
pub use coproduct::{coproduct, coproduct_full_elasticity_witness, required_components, Coproduct, CoproductWitness};
pub use numerical::{numerical_monoid, NumericalMonoid};
pub use seminormal::{seminormal_fp, SeminormalFP};
pub use tblock::{tblock_monoid, TBlockMonoid, TBlockSpec};
