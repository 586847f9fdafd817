//! ASCII expressions in `t` and `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := base ('^' nat)?
//! base   := nat | 't' | 'x' | '(' expr ')'
//! ```
//!
//! Divisors must be free of `x`; a rational literal is just `nat '/' nat`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use dynprim::algebra::{BaseField, Field, Poly, Rationals};
use dynprim::dynsys::{DegreeCap, DynError, DynPolynomial, RatFunc, RationalFunctions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("x appears in a denominator")]
    MixedVariable,
    #[error("denominator vanishes mod {0}")]
    Characteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected an expression in t only")]
    UnexpectedX,
    #[error("expected a polynomial in t")]
    NotPolynomial,
    #[error("not a dynamical polynomial: {0}")]
    Map(DynError),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: u128, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigUint),
    T,
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn has_x(&self) -> bool {
        match self {
            Expr::X => true,
            Expr::Int(_) | Expr::T => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.has_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.has_x() || b.has_x(),
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

// Parenthesizes exactly where the parser would otherwise build a different tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            wrap(f, a, p)?;
            write!(f, "{op}")?;
            wrap(f, b, p + 1)
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::T => write!(f, "t"),
            Expr::X => write!(f, "x"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Add(a, b) => bin(f, a, " + ", b, 1),
            Expr::Sub(a, b) => bin(f, a, " - ", b, 1),
            Expr::Mul(a, b) => bin(f, a, "*", b, 2),
            Expr::Div(a, b) => bin(f, a, "/", b, 2),
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigUint),
    T,
    X,
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().expect("digits"))));
            }
            't' => {
                out.push((i, Tok::T));
                i += 1;
            }
            'x' => {
                out.push((i, Tok::X));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            _ => {
                return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character {c:?}") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                let Some(e) = n.to_u32() else {
                    return self.err("exponent too large");
                };
                self.i += 1;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::T) => {
                self.i += 1;
                Ok(Expr::T)
            }
            Some(Tok::X) => {
                self.i += 1;
                Ok(Expr::X)
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, t, x or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0, end: src.chars().count() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

type XPoly<F> = Poly<RationalFunctions<F>>;

/// Evaluates into `k(t)[x]`.
pub fn eval<F: BaseField>(e: &Expr, base: F, cap: DegreeCap) -> Result<XPoly<F>, ParseError> {
    let k = RationalFunctions::new(base);
    eval_in(e, &k, cap)
}

fn eval_in<F: BaseField>(e: &Expr, k: &RationalFunctions<F>, cap: DegreeCap) -> Result<XPoly<F>, ParseError> {
    let konst = |c: RatFunc<F>| Poly::constant(k.clone(), c);
    Ok(match e {
        Expr::Int(n) => konst(k.constant(k.base().from_bigint(&n.clone().into()))),
        Expr::T => konst(k.t()),
        Expr::X => Poly::var(k.clone()),
        Expr::Neg(a) => -&eval_in(a, k, cap)?,
        Expr::Add(a, b) => &eval_in(a, k, cap)? + &eval_in(b, k, cap)?,
        Expr::Sub(a, b) => &eval_in(a, k, cap)? - &eval_in(b, k, cap)?,
        Expr::Mul(a, b) => {
            let (a, b) = (eval_in(a, k, cap)?, eval_in(b, k, cap)?);
            check_cap(size(&a) + size(&b), cap)?;
            &a * &b
        }
        Expr::Div(a, b) => {
            if b.has_x() {
                return Err(ParseError::MixedVariable);
            }
            let den = eval_in(b, k, cap)?.coeff(0);
            if den.is_zero() {
                let p = k.base().characteristic();
                if p != 0 && !eval(b, Rationals, cap)?.is_zero() {
                    return Err(ParseError::Characteristic(p));
                }
                return Err(ParseError::DivisionByZero);
            }
            let inv = k.inv(&den).expect("nonzero");
            eval_in(a, k, cap)?.scale(&inv)
        }
        Expr::Pow(a, n) => {
            let a = eval_in(a, k, cap)?;
            check_cap(size(&a) * *n as u128, cap)?;
            a.pow(*n as u64)
        }
    })
}

// Larger of the x-degree and the t-heights of the coefficients.
fn size<F: Field>(p: &XPoly<F>) -> u128 {
    p.coeffs()
        .iter()
        .map(|c| c.num().deg().max(c.den().deg()).max(0) as u128)
        .chain(std::iter::once(p.deg().max(0) as u128))
        .max()
        .unwrap_or(0)
}

fn check_cap(degree: u128, cap: DegreeCap) -> Result<(), ParseError> {
    cap.check(degree).map_err(|_| ParseError::DegreeCap { degree, cap: cap.get() })
}

pub fn parse_xpoly<F: BaseField>(src: &str, base: F, cap: DegreeCap) -> Result<XPoly<F>, ParseError> {
    eval(&parse_expr(src)?, base, cap)
}

/// A map `phi(x)` of degree at least 2.
pub fn parse_map<F: BaseField>(src: &str, base: F, cap: DegreeCap) -> Result<DynPolynomial<F>, ParseError> {
    DynPolynomial::from_x_poly(parse_xpoly(src, base, cap)?).map_err(ParseError::Map)
}

/// An element of `k(t)`.
pub fn parse_ratfunc<F: BaseField>(src: &str, base: F, cap: DegreeCap) -> Result<RatFunc<F>, ParseError> {
    let p = parse_xpoly(src, base, cap)?;
    if p.deg() > 0 {
        return Err(ParseError::UnexpectedX);
    }
    Ok(p.coeff(0))
}

/// An element of `k[t]`.
pub fn parse_tpoly<F: BaseField>(src: &str, base: F, cap: DegreeCap) -> Result<Poly<F>, ParseError> {
    let r = parse_ratfunc(src, base, cap)?;
    if !r.is_polynomial() {
        return Err(ParseError::NotPolynomial);
    }
    Ok(r.num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynprim::algebra::PrimeField;

    fn cap() -> DegreeCap {
        DegreeCap::default()
    }

    #[test]
    fn precedence() {
        let e = parse_expr("1 - 2 - 3").unwrap();
        assert_eq!(e.to_string(), "1 - 2 - 3");
        let e = parse_expr("1 - (2 - 3)").unwrap();
        assert_eq!(e.to_string(), "1 - (2 - 3)");
        let e = parse_expr("-x^2").unwrap();
        assert_eq!(e, Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::X), 2))));
        let e = parse_expr("(-x)^2").unwrap();
        assert_eq!(e.to_string(), "(-x)^2");
        let e = parse_expr("2^3^2");
        assert!(matches!(e, Err(ParseError::Syntax { pos: 3, .. })));
    }

    #[test]
    fn trinomial_example() {
        let phi = parse_map("x^3 + t*x + 1", Rationals, cap()).unwrap();
        let k = phi.field();
        assert_eq!(phi.coefficients(), vec![k.one(), k.zero(), k.t(), k.one()]);
    }

    #[test]
    fn family_example() {
        let phi = parse_map("x^3 + ((-3*t^3-3*t)/(3*t^2+2))*x^2 + t", Rationals, cap()).unwrap();
        let k = phi.field();
        let a = RatFunc::new(
            Poly::from_i64s(Rationals, &[0, -3, 0, -3]),
            Poly::from_i64s(Rationals, &[2, 0, 3]),
        );
        assert_eq!(phi.coefficients(), vec![k.one(), a, k.zero(), k.t()]);
        // Canonical display reparses to the same map.
        let again = parse_map(&phi.to_string(), Rationals, cap()).unwrap();
        assert_eq!(again, phi);
    }

    #[test]
    fn errors() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(parse_xpoly("x^2 + (1/2)*x", f2, cap()).unwrap_err(), ParseError::Characteristic(2));
        assert_eq!(parse_xpoly("1/(t - t)", Rationals, cap()).unwrap_err(), ParseError::DivisionByZero);
        assert_eq!(parse_xpoly("1/(x + 1)", Rationals, cap()).unwrap_err(), ParseError::MixedVariable);
        assert!(matches!(parse_expr("x + * 2"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("(x + 1"), Err(ParseError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_expr("x $ 1"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert_eq!(parse_ratfunc("x + t", Rationals, cap()).unwrap_err(), ParseError::UnexpectedX);
        assert_eq!(parse_tpoly("1/t", Rationals, cap()).unwrap_err(), ParseError::NotPolynomial);
        assert!(matches!(parse_map("t*x + 1", Rationals, cap()), Err(ParseError::Map(_))));
        assert!(matches!(
            parse_xpoly("x^100000000", Rationals, cap()),
            Err(ParseError::DegreeCap { .. })
        ));
    }

    #[test]
    fn reduces_into_fp() {
        let f5 = PrimeField::new(5).unwrap();
        let p = parse_tpoly("7*t^2 - 1/2", f5, cap()).unwrap();
        // 1/2 = 3 mod 5
        assert_eq!(p, Poly::from_i64s(f5, &[-3, 0, 2]));
    }
}
