//! The constant ring `ℚ` with `∂ = 0`. The only quasi-integration is `Q = 0`,
//! so the kernel of `Q` is everything and has the single letter `1`.

use num_traits::{One, Zero};

use super::BaseRing;
use crate::arith::{fmt_rational, Rational};
use crate::constants::RjId;
use crate::error::Result;
use crate::words::Letter;

#[derive(Default)]
pub struct TrivialBase;

impl TrivialBase {
    pub fn new() -> Self {
        Self
    }

    /// The single letter, standing for `1`.
    pub const UNIT: Letter = Letter(0);
}

impl BaseRing for TrivialBase {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn from_rational(&self, c: &Rational) -> Rational {
        c.clone()
    }

    fn is_zero(&self, f: &Rational) -> bool {
        f.is_zero()
    }

    fn add(&self, f: &Rational, g: &Rational) -> Rational {
        f + g
    }

    fn neg(&self, f: &Rational) -> Rational {
        -f
    }

    fn mul(&self, f: &Rational, g: &Rational) -> Rational {
        f * g
    }

    fn as_rational(&self, f: &Rational) -> Option<Rational> {
        Some(f.clone())
    }

    fn derive(&self, _f: &Rational) -> Rational {
        Rational::zero()
    }

    fn quasi_int(&self, _f: &Rational) -> Rational {
        Rational::zero()
    }

    fn t_part(&self, f: &Rational) -> Result<Vec<(Letter, Rational)>> {
        if f.is_zero() {
            return Ok(Vec::new());
        }
        Ok(vec![(Self::UNIT, f.clone())])
    }

    fn cj_split(&self, f: &Rational) -> Result<(Rational, Vec<(RjId, Rational)>)> {
        Ok((f.clone(), Vec::new()))
    }

    fn letter_value(&self, l: Letter) -> Rational {
        assert_eq!(l, Self::UNIT, "the constant ring has a single letter");
        Rational::one()
    }

    fn rj_value(&self, id: RjId) -> Rational {
        panic!("the image of Q is zero, no basis element {}", id.0)
    }

    fn format(&self, f: &Rational) -> String {
        fmt_rational(f)
    }

    fn letter_count(&self) -> usize {
        1
    }

    fn rj_count(&self) -> usize {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;

    #[test]
    fn everything_is_in_the_kernel() {
        let b = TrivialBase::new();
        assert_eq!(b.derive(&q(5)), q(0));
        assert_eq!(b.quasi_int(&q(5)), q(0));
        assert_eq!(b.t_part(&q(5)).unwrap(), vec![(TrivialBase::UNIT, q(5))]);
        assert_eq!(b.cj_split(&q(5)).unwrap(), (q(5), vec![]));
    }
}
