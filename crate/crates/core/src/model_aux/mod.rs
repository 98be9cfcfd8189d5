//! Auxiliary models: floating smooth maps and finite categories.

pub mod fincat;
pub mod smooth;

pub use fincat::{enumerate_functors, enumerate_nat_trans, Arrow, Bounds, FiniteCategory, Functor, NatTrans, TrivialModel};
pub use smooth::{dual_eval, finite_difference, hyper_eval, Builder, Dual, Hyper, SmoothMap, SmoothModel};
