//! Exact computations with the Lie superalgebras gl(m|n), osp(2m|2n) and
//! osp(2m+1|2n): root data and atypicality, matrix realizations and the
//! quotients `g_x`, finite-dimensional supermodules, the fibre functor
//! `M -> M_x`, categorical and modified traces, and support dimensions.

pub mod algebra;
pub mod arith;
pub mod atypicality;
pub mod error;
pub mod fibre;
pub mod linalg;
pub mod matrixreal;
pub mod rootdata;
pub mod scan;
pub mod supermodules;
pub mod support;
pub mod traces;

pub use arith::Q;
pub use error::{Error, Result};
