//! Elementary-function reductions of the incomplete beta function `B(nu,0,z)`
//! and the Lerch transcendent `Phi(z,1,nu)` for rational `nu`, together with
//! independent series and quadrature oracles, closed forms of two integral
//! families, and a timing harness.

pub mod bench;
mod dd;
pub mod error;
pub mod integrals;
pub mod numfmt;
pub mod oracles;
pub mod rational;
pub mod reduction;
mod sum;
pub mod verify;

pub use error::{Error, Result};
pub use integrals::{int_power_over_linear, int_tanh_power, IntegralFamily, IntegralSpec};
pub use rational::{decompose_neg, decompose_pos, parse_rational, NegDecomposition, PosDecomposition, RationalNu};
pub use reduction::{
    beta_int_mu, beta_mu_posint, connection_check, lerch_reduce, reduce_beta, reduce_beta_neg, reduce_beta_pos,
    ComplexValue, ReductionMethod, ReductionTrace, RootTerm,
};
pub use sum::NeumaierSum;
