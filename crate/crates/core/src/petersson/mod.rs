//! The Petersson pairing `<f, g> = int f conj(g) y^{k-2} dx dy` over
//! `Gamma_1(l) \ H`, computed as a sum over the translates of the standard
//! fundamental domain by coset representatives.

mod evaluator;
mod grid;
mod inner;

pub use evaluator::{CuspFormEvaluator, SlashEvaluator, UntwistedEisenstein, ZeroEvaluator};
pub use grid::{Node, QuadratureGrid};
pub use inner::{coset_reps_gamma1, inner, InnerProduct};
