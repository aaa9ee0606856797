//! Surface syntax: rational functions in `x` combined with `D(·)`, `int(·)`,
//! `E(·)` and `II(f₁,…,fₙ)`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'x' | '(' expr ')' | 'D(' expr ')' | 'int(' expr ')'
//!         | 'E(' expr ')' | 'II(' expr (',' expr)* ')'
//! ```
//!
//! Subtrees free of operator calls fold into rational-function literals while
//! parsing.

use idr_core::arith::{RatFun, Rational};
use idr_core::basering::{BaseRing, RationalBase};
use idr_core::idr::{IdrElem, IdrRing};
use idr_core::{IdrError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Rat(RatFun),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
    D(Box<Expr>),
    Int(Box<Expr>),
    E(Box<Expr>),
    II(Vec<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(offset: usize, message: impl Into<String>) -> IdrError {
    IdrError::Parse { offset, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos, format!("expected `{}`", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let end = self.pos + kw.len();
        if self.src.get(self.pos..end) == Some(kw.as_bytes()) && self.src.get(end) == Some(&b'(') {
            self.pos = end + 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'+') {
                lhs = fold(Expr::Add(Box::new(lhs), Box::new(self.term()?)), at)?;
            } else if self.eat(b'-') {
                lhs = fold(Expr::Sub(Box::new(lhs), Box::new(self.term()?)), at)?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            self.skip_ws();
            let at = self.pos;
            if self.eat(b'*') {
                lhs = fold(Expr::Mul(Box::new(lhs), Box::new(self.unary()?)), at)?;
            } else if self.eat(b'/') {
                lhs = fold(Expr::Div(Box::new(lhs), Box::new(self.unary()?)), at)?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        self.skip_ws();
        let at = self.pos;
        if self.eat(b'-') {
            return fold(Expr::Neg(Box::new(self.unary()?)), at);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        self.skip_ws();
        let at = self.pos;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        self.skip_ws();
        let digits_at = self.pos;
        let n = self.integer()?.ok_or_else(|| err(digits_at, "expected an integer exponent"))?;
        let n: i64 = n.parse().map_err(|_| err(digits_at, "exponent out of range"))?;
        fold(Expr::Pow(Box::new(base), if negative { -n } else { n }), at)
    }

    fn integer(&mut self) -> Result<Option<String>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Ok(None);
        }
        Ok(Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn atom(&mut self) -> Result<Expr> {
        self.skip_ws();
        let at = self.pos;
        if let Some(digits) = self.integer()? {
            let n: Rational = digits.parse().expect("digits");
            return Ok(Expr::Rat(RatFun::constant(n)));
        }
        for (kw, make) in [
            ("D", Expr::D as fn(Box<Expr>) -> Expr),
            ("int", Expr::Int),
            ("E", Expr::E),
        ] {
            if self.keyword(kw) {
                let inner = self.expr()?;
                self.expect(b')')?;
                return Ok(make(Box::new(inner)));
            }
        }
        if self.keyword("II") {
            let mut args = vec![self.expr()?];
            while self.eat(b',') {
                args.push(self.expr()?);
            }
            self.expect(b')')?;
            return Ok(Expr::II(args));
        }
        if self.eat(b'(') {
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(inner);
        }
        if self.eat(b'x') {
            return Ok(Expr::Rat(RatFun::x()));
        }
        match self.peek() {
            None => Err(err(at, "unexpected end of input, expected an expression")),
            Some(c) => Err(err(at, format!("unexpected `{}`", c as char))),
        }
    }
}

/// Collapses an operator node whose operands are literals.
fn fold(e: Expr, at: usize) -> Result<Expr> {
    use Expr::*;
    let out = match e {
        Add(a, b) => match (*a, *b) {
            (Rat(f), Rat(g)) => Rat(&f + &g),
            (a, b) => Add(Box::new(a), Box::new(b)),
        },
        Sub(a, b) => match (*a, *b) {
            (Rat(f), Rat(g)) => Rat(&f - &g),
            (a, b) => Sub(Box::new(a), Box::new(b)),
        },
        Mul(a, b) => match (*a, *b) {
            (Rat(f), Rat(g)) => Rat(&f * &g),
            (a, b) => Mul(Box::new(a), Box::new(b)),
        },
        Div(a, b) => match (*a, *b) {
            (Rat(f), Rat(g)) => Rat(f.div(&g).map_err(|_| err(at, "division by zero"))?),
            (a, b) => Div(Box::new(a), Box::new(b)),
        },
        Pow(a, n) => match *a {
            Rat(f) => Rat(f.powi(n).map_err(|_| err(at, "zero to a negative power"))?),
            a => Pow(Box::new(a), n),
        },
        Neg(a) => match *a {
            Rat(f) => Rat(-&f),
            a => Neg(Box::new(a)),
        },
        other => other,
    };
    Ok(out)
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(err(p.pos, format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(e)
}

type Elem = IdrElem<RatFun>;

/// The single base-ring coefficient of an element without words or constants.
fn as_base(a: &Elem) -> Option<RatFun> {
    match a.len() {
        0 => Some(RatFun::zero()),
        1 => {
            let (c, w, f) = a.terms().next().expect("one term");
            (c.is_one() && w.is_empty()).then(|| f.clone())
        }
        _ => None,
    }
}

/// Evaluates an expression in the given ring context.
pub fn eval(ring: &IdrRing<RationalBase>, e: &Expr) -> Result<Elem> {
    Ok(match e {
        Expr::Rat(f) => ring.embed(f.clone()),
        Expr::Add(a, b) => ring.add(&eval(ring, a)?, &eval(ring, b)?)?,
        Expr::Sub(a, b) => ring.sub(&eval(ring, a)?, &eval(ring, b)?)?,
        Expr::Mul(a, b) => ring.mul(&eval(ring, a)?, &eval(ring, b)?)?,
        Expr::Neg(a) => ring.neg(&eval(ring, a)?),
        Expr::Div(a, b) => {
            let d = eval(ring, b)?;
            let g = as_base(&d)
                .ok_or_else(|| IdrError::Invalid("only rational functions can be divisors".into()))?;
            ring.mul_base(&eval(ring, a)?, &g.inverse()?)?
        }
        Expr::Pow(a, n) => {
            let v = eval(ring, a)?;
            if *n >= 0 {
                ring.pow(&v, *n as u32)?
            } else {
                let g = as_base(&v)
                    .ok_or_else(|| IdrError::Invalid("negative powers need a rational function".into()))?;
                ring.embed(g.powi(*n)?)
            }
        }
        Expr::D(a) => ring.derive(&eval(ring, a)?)?,
        Expr::Int(a) => ring.integrate(&eval(ring, a)?)?,
        Expr::E(a) => ring.evaluate(&eval(ring, a)?)?,
        Expr::II(args) => {
            let mut fs = Vec::with_capacity(args.len());
            for a in args {
                let v = eval(ring, a)?;
                let f = as_base(&v)
                    .ok_or_else(|| IdrError::Invalid("II(...) takes rational functions".into()))?;
                fs.push(f);
            }
            ring.nested_integral(&ring.base().one(), &fs)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use idr_core::arith::rf;

    #[test]
    fn parse_examples() {
        let e = parse_expr("int(1/x)*int(1/(x+1))").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Int(Box::new(Expr::Rat(rf("1/x"))))),
                Box::new(Expr::Int(Box::new(Expr::Rat(rf("1/(x+1)")))))
            )
        );
        let e = parse_expr("E(x*int(1/x))").unwrap();
        assert!(matches!(e, Expr::E(_)));
        assert_eq!(parse_expr("int("), Err(IdrError::Parse { offset: 4, message: "unexpected end of input, expected an expression".into() }));
        assert_eq!(parse_expr("(x^2+1)/(x*(x+1))").unwrap(), Expr::Rat(rf("(x^2+1)/(x^2+x)")));
        assert!(matches!(parse_expr("1/0"), Err(IdrError::Parse { offset: 1, .. })));
        assert!(matches!(parse_expr("x)"), Err(IdrError::Parse { offset: 1, .. })));
    }
}
