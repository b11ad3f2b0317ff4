//! Exact computation in twisted Chevalley groups over finite commutative
//! rings with an automorphism of order 2 or 3.

pub mod basis;
pub mod certificates;
pub mod commutator;
pub mod congruence;
pub mod elements;
pub mod error;
pub mod fold;
pub mod matrix;
pub mod rep;
pub mod ring;
pub mod roots;
pub mod sweep;
pub mod word;

pub use error::{Error, Result};
pub use ring::{AForm, Elem, Expr, Ring, ThetaIdeal};
