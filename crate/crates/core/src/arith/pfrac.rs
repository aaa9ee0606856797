use super::{irreducible_factor, RatFun, UniPoly};

/// One summand `a / p^j` of a partial-fraction decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PfTerm {
    pub p: UniPoly,
    pub j: u32,
    pub a: UniPoly,
}

/// `f = poly_part + Σ a/p^j` over monic irreducible `p`, with `deg a < deg p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionForm {
    pub poly_part: UniPoly,
    pub terms: Vec<PfTerm>,
}

impl PartialFractionForm {
    pub fn reassemble(&self) -> RatFun {
        let mut acc = RatFun::from_poly(self.poly_part.clone());
        for t in &self.terms {
            let term = RatFun::new(t.a.clone(), t.p.pow(t.j)).expect("nonzero denominator");
            acc = &acc + &term;
        }
        acc
    }
}

/// Full partial-fraction decomposition over ℚ.
pub fn partial_fractions(f: &RatFun) -> PartialFractionForm {
    let factors = irreducible_factor(f.den()).expect("denominator is nonzero");
    partial_fractions_with(f, &factors)
}

/// Same as [`partial_fractions`] given the irreducible factorization of the
/// (monic) denominator.
pub fn partial_fractions_with(f: &RatFun, den_factors: &[(UniPoly, u32)]) -> PartialFractionForm {
    let (poly_part, proper) = f.split_polynomial_part();
    let mut terms = Vec::new();
    if !proper.is_zero() {
        let n = proper.num();
        let den = proper.den();
        for (p, e) in den_factors {
            let pe = p.pow(*e);
            let cof = den.exact_div(&pe).expect("factor divides denominator");
            let inv = cof.inverse_mod(&pe).expect("coprime cofactors");
            let mut a = (n * &inv).rem(&pe);
            let mut k = 0;
            while !a.is_zero() {
                let (qt, r) = a.divrem(p);
                if !r.is_zero() {
                    terms.push(PfTerm { p: p.clone(), j: e - k, a: r });
                }
                a = qt;
                k += 1;
            }
        }
    }
    terms.sort_by(|x, y| {
        x.p.degree()
            .cmp(&y.p.degree())
            .then_with(|| x.p.cmp(&y.p))
            .then_with(|| x.j.cmp(&y.j))
    });
    PartialFractionForm { poly_part, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfun::rf;

    #[test]
    fn worked_examples() {
        let pf = partial_fractions(&rf("1/(x*(x+1))"));
        assert!(pf.poly_part.is_zero());
        assert_eq!(pf.terms.len(), 2);
        assert_eq!(pf.terms[0], PfTerm { p: UniPoly::x(), j: 1, a: UniPoly::one() });
        assert_eq!(
            pf.terms[1],
            PfTerm { p: UniPoly::from_i64s(&[1, 1]), j: 1, a: UniPoly::from_i64s(&[-1]) }
        );

        let pf = partial_fractions(&rf("x"));
        assert_eq!(pf.poly_part, UniPoly::x());
        assert!(pf.terms.is_empty());

        let pf = partial_fractions(&rf("(x+2)/x^2"));
        assert_eq!(
            pf.terms,
            vec![
                PfTerm { p: UniPoly::x(), j: 1, a: UniPoly::one() },
                PfTerm { p: UniPoly::x(), j: 2, a: UniPoly::from_i64s(&[2]) },
            ]
        );
    }

    #[test]
    fn reassembles_mixed_denominators() {
        for s in [
            "(x^5+3*x-1)/((x^2+1)^2*(x-3)*x^3)",
            "(2*x+1)/(x^2+1)",
            "1/((x^2-2)^3*(2*x+5))",
            "(x^7)/(x^2+x+1)",
        ] {
            let f = rf(s);
            let pf = partial_fractions(&f);
            assert_eq!(pf.reassemble(), f, "{s}");
            for t in &pf.terms {
                assert!(t.a.degree() < t.p.degree());
            }
        }
    }
}
