//! Symbolic kernel and geometric lift calculus.

pub mod canlift;
pub mod error;
pub mod geomcalc;
pub mod jetlift;
pub mod kinetic;
pub mod random;
pub mod symexpr;

pub use error::{Error, Result};
pub use symexpr::{Expr, ExprClass, VarId};
