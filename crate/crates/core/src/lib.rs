//! Exact kernel for the free commutative integro-differential ring over a
//! differential base ring with quasi-integration.

pub mod arith;
pub mod basering;
pub mod constants;
pub mod error;
pub mod idr;
pub mod mpoly;
pub mod shuffle;
pub mod verify;
pub mod words;

pub use error::{IdrError, Result};

pub use arith::{RatFun, Rational};
pub use basering::{BaseRing, LaurentBase, LaurentLog, RationalBase, TrivialBase};
pub use constants::{ConstMono, ConstPoly, ConstSym};
pub use idr::{IdrElem, IdrRing, Mode};
pub use shuffle::TensorElem;
pub use words::{Letter, Word};
