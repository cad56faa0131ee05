//! Real defining expressions over `z1..zn` and their conjugates.
//!
//! The parser accepts `+ - * / ^`, parentheses, rational and decimal
//! literals, `i`, variables `zk`, the shorthands `xk = Re zk` and
//! `yk = Im zk`, and the functions `conj`, `Re`, `Im`. Precedence is
//! `^` > unary `−` > `* /` > `+ −`. The result is normalized: `Re`/`Im` are
//! rewritten through conjugation, conjugation is pushed to the leaves, and
//! operations on numeric literals are folded.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Multiindex, Scalar, Series, SeriesError, Vars};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("denominator at position {pos} vanishes at the origin (not a unit)")]
    NonUnitDenominator { pos: usize },
    #[error("irrational or unsupported literal `{name}` at position {pos}")]
    IrrationalLiteral { pos: usize, name: String },
    #[error("expression is not real-valued: coefficient of {monomial} is not mirrored")]
    NotReal { monomial: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Normalized expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    /// `z_k` (1-based).
    Z(usize),
    /// `conj(z_k)` (1-based).
    ZBar(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    fn num(c: Scalar) -> Expr {
        Expr::Num(c)
    }

    fn add(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Num(x), Expr::Num(y)) => Expr::Num(x + y),
            (a, b) => Expr::Add(Box::new(a), Box::new(b)),
        }
    }

    fn sub(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Num(x), Expr::Num(y)) => Expr::Num(x - y),
            (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
        }
    }

    fn mul(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Num(x), Expr::Num(y)) => Expr::Num(x * y),
            (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
        }
    }

    fn div(a: Expr, b: Expr) -> Expr {
        match (a, b) {
            (Expr::Num(x), Expr::Num(y)) if !y.is_zero() => Expr::Num(x / y),
            (a, b) => Expr::Div(Box::new(a), Box::new(b)),
        }
    }

    fn neg(a: Expr) -> Expr {
        match a {
            Expr::Num(x) => Expr::Num(-x),
            a => Expr::Neg(Box::new(a)),
        }
    }

    fn pow(a: Expr, k: i64) -> Expr {
        match a {
            Expr::Num(x) if !(x.is_zero() && k < 0) => Expr::Num(x.pow(k).expect("nonzero base")),
            a => Expr::Pow(Box::new(a), k),
        }
    }

    /// Formal conjugate, pushed to the leaves.
    pub fn conj(&self) -> Expr {
        match self {
            Expr::Num(c) => Expr::Num(c.conj()),
            Expr::Z(k) => Expr::ZBar(*k),
            Expr::ZBar(k) => Expr::Z(*k),
            Expr::Add(a, b) => Expr::add(a.conj(), b.conj()),
            Expr::Sub(a, b) => Expr::sub(a.conj(), b.conj()),
            Expr::Mul(a, b) => Expr::mul(a.conj(), b.conj()),
            Expr::Div(a, b) => Expr::div(a.conj(), b.conj()),
            Expr::Neg(a) => Expr::neg(a.conj()),
            Expr::Pow(a, k) => Expr::pow(a.conj(), *k),
        }
    }

    fn re(e: Expr) -> Expr {
        let c = e.conj();
        Expr::mul(Expr::num(Scalar::from_ratio(1, 2)), Expr::add(e, c))
    }

    fn im(e: Expr) -> Expr {
        // (e − ē)/(2i) = (−i/2)(e − ē)
        let c = e.conj();
        let k = Scalar::new(BigRational::zero(), BigRational::new((-1).into(), 2.into()));
        Expr::mul(Expr::num(k), Expr::sub(e, c))
    }

    /// Largest variable index occurring.
    pub fn max_var(&self) -> usize {
        match self {
            Expr::Num(_) => 0,
            Expr::Z(k) | Expr::ZBar(k) => *k,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.max_var().max(b.max_var()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.max_var(),
        }
    }

    /// Value at the origin, `None` if a non-unit is inverted.
    pub fn value_at_origin(&self) -> Option<Scalar> {
        Some(match self {
            Expr::Num(c) => c.clone(),
            Expr::Z(_) | Expr::ZBar(_) => Scalar::zero(),
            Expr::Add(a, b) => a.value_at_origin()? + b.value_at_origin()?,
            Expr::Sub(a, b) => a.value_at_origin()? - b.value_at_origin()?,
            Expr::Mul(a, b) => a.value_at_origin()? * b.value_at_origin()?,
            Expr::Div(a, b) => {
                let d = b.value_at_origin()?;
                a.value_at_origin()? * d.inv()?
            }
            Expr::Neg(a) => -a.value_at_origin()?,
            Expr::Pow(a, k) => a.value_at_origin()?.pow(*k)?,
        })
    }

    /// Variable list `z1..zn, cz1..czn` of the `(t, τ)` expansion ring.
    pub fn ring(n: usize) -> Vars {
        Vars::new(
            (1..=n)
                .map(|k| format!("z{k}"))
                .chain((1..=n).map(|k| format!("cz{k}"))),
        )
    }

    /// Expands to a series in `z1..zn, cz1..czn` (see [`Expr::ring`]).
    pub fn to_series(&self, n: usize, order: u32) -> Result<Series, SeriesError> {
        let vars = Expr::ring(n);
        self.expand(&vars, n, order)
    }

    fn expand(&self, vars: &Vars, n: usize, order: u32) -> Result<Series, SeriesError> {
        Ok(match self {
            Expr::Num(c) => Series::constant(vars, c.clone(), order),
            Expr::Z(k) => Series::var(vars, k - 1, order),
            Expr::ZBar(k) => Series::var(vars, n + k - 1, order),
            Expr::Add(a, b) => &a.expand(vars, n, order)? + &b.expand(vars, n, order)?,
            Expr::Sub(a, b) => &a.expand(vars, n, order)? - &b.expand(vars, n, order)?,
            Expr::Mul(a, b) => (&a.expand(vars, n, order)? * &b.expand(vars, n, order)?).truncate(order),
            Expr::Div(a, b) => {
                let d = b.expand(vars, n, order)?.reciprocal()?;
                (&a.expand(vars, n, order)? * &d).truncate(order)
            }
            Expr::Neg(a) => -&a.expand(vars, n, order)?,
            Expr::Pow(a, k) => {
                let mut base = a.expand(vars, n, order)?;
                if *k < 0 {
                    base = base.reciprocal()?;
                }
                let mut acc = Series::one(vars, order);
                for _ in 0..k.unsigned_abs() {
                    acc = (&acc * &base).truncate(order);
                }
                acc
            }
        })
    }
}

impl fmt::Display for Expr {
    /// Fully parenthesized text that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "({c})"),
            Expr::Z(k) => write!(f, "z{k}"),
            Expr::ZBar(k) => write!(f, "conj(z{k})"),
            Expr::Add(a, b) => write!(f, "({a}+{b})"),
            Expr::Sub(a, b) => write!(f, "({a}-{b})"),
            Expr::Mul(a, b) => write!(f, "({a}*{b})"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Pow(a, k) => write!(f, "({a}^{k})"),
        }
    }
}

/// A parsed real defining function `ρ(z, z̄)` in `ℂⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealDefining {
    pub expr: Expr,
    pub n: usize,
}

impl RealDefining {
    /// Expansion in `(t, τ)` with a check that the series is real, i.e. the
    /// coefficient of `t^a τ^b` is the conjugate of that of `t^b τ^a`.
    pub fn expand_real(&self, order: u32) -> Result<Series, ParseError> {
        let s = self.expr.to_series(self.n, order)?;
        let n = self.n;
        for (e, c) in s.terms() {
            let v = e.to_vec();
            let mirrored: Vec<u32> = v[n..].iter().chain(v[..n].iter()).copied().collect();
            let m = s.coeff(&Multiindex::from_slice(&mirrored));
            if m != c.conj() {
                return Err(ParseError::NotReal {
                    monomial: format!("{e}"),
                });
            }
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_ascii_digit() || chars[k].1 == '.') {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|x| x.1).collect();
            let q = parse_decimal(&s).ok_or(ParseError::Syntax {
                pos,
                msg: format!("bad number `{s}`"),
            })?;
            out.push((pos, Tok::Num(q)));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|x| x.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            k += 1;
        } else {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int, frac) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if (int.is_empty() && frac.is_empty()) || frac.contains('.') {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let den = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(num, den))
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat_op(c) {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos(),
                msg: format!("expected `{c}`"),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = Expr::add(acc, self.term()?);
            } else if self.eat_op('-') {
                acc = Expr::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = Expr::mul(acc, self.unary()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                let d = self.unary()?;
                match d.value_at_origin() {
                    Some(v) if !v.is_zero() => {}
                    _ => return Err(ParseError::NonUnitDenominator { pos }),
                }
                acc = Expr::div(acc, d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_op('-') {
            return Ok(Expr::neg(self.unary()?));
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let paren = self.eat_op('(');
        let neg = self.eat_op('-');
        let epos = self.pos();
        let k = match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() => {
                let k: i64 = q.to_integer().try_into().map_err(|_| ParseError::Syntax {
                    pos: epos,
                    msg: "exponent too large".into(),
                })?;
                self.at += 1;
                if neg {
                    -k
                } else {
                    k
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: epos,
                    msg: "expected integer exponent".into(),
                })
            }
        };
        if paren {
            self.expect_op(')')?;
        }
        if k < 0 {
            match base.value_at_origin() {
                Some(v) if !v.is_zero() => {}
                _ => return Err(ParseError::NonUnitDenominator { pos }),
            }
        }
        Ok(Expr::pow(base, k))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.at += 1;
                Ok(Expr::num(Scalar::from_real(q)))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                self.ident(&name, pos)
            }
            Some(Tok::Op(c)) => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            }),
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }

    fn ident(&mut self, name: &str, pos: usize) -> Result<Expr, ParseError> {
        let var_index = |prefix: &str| -> Option<usize> {
            let rest = name.strip_prefix(prefix)?;
            if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
                return None;
            }
            rest.parse().ok().filter(|&k: &usize| k >= 1)
        };
        match name {
            "i" => return Ok(Expr::num(Scalar::i())),
            "conj" | "Re" | "Im" => {
                self.expect_op('(')?;
                let e = self.expr()?;
                self.expect_op(')')?;
                return Ok(match name {
                    "conj" => e.conj(),
                    "Re" => Expr::re(e),
                    _ => Expr::im(e),
                });
            }
            _ => {}
        }
        if let Some(k) = var_index("z") {
            return Ok(Expr::Z(k));
        }
        if let Some(k) = var_index("x") {
            return Ok(Expr::re(Expr::Z(k)));
        }
        if let Some(k) = var_index("y") {
            return Ok(Expr::im(Expr::Z(k)));
        }
        Err(ParseError::IrrationalLiteral {
            pos,
            name: name.to_string(),
        })
    }
}

/// Parses a normalized expression tree.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

/// Parses a real defining function; `n` is the largest variable index.
pub fn parse_defining_expression(text: &str) -> Result<RealDefining, ParseError> {
    let expr = parse_expr(text)?;
    let n = expr.max_var();
    if n == 0 {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "expression involves no variable".into(),
        });
    }
    Ok(RealDefining { expr, n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        // -z1^2 = -(z1^2); 1+2*3 folds to 7
        assert_eq!(parse_expr("-z1^2").unwrap(), Expr::neg(Expr::pow(Expr::Z(1), 2)));
        assert_eq!(parse_expr("1+2*3").unwrap(), Expr::Num(Scalar::from_int(7)));
        assert_eq!(parse_expr("2^-1").unwrap(), Expr::Num(Scalar::from_ratio(1, 2)));
        assert_eq!(parse_expr("0.25").unwrap(), Expr::Num(Scalar::from_ratio(1, 4)));
    }

    #[test]
    fn print_parse_round_trip() {
        for t in [
            "Im(z2) - z1*conj(z1)",
            "Re(z1*conj(z2))/(1+Re(z1*conj(z2))) - (3/4-2*i)*z1^3",
            "y3 - x1^2 + (1+z1/2)^(-1)*0 + (1+z2)^-2",
        ] {
            let e = parse_expr(t).unwrap();
            let back = parse_expr(&e.to_string()).unwrap();
            assert_eq!(back, e, "{t}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_expr("Im(z2) - 1/z1"),
            Err(ParseError::NonUnitDenominator { .. })
        ));
        assert!(matches!(
            parse_expr("sqrt(2)*z1"),
            Err(ParseError::IrrationalLiteral { .. })
        ));
        assert!(matches!(parse_expr("z1 +* z2"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("z1^(1/2)"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn heisenberg_expansion_is_real() {
        let rho = parse_defining_expression("Im(z2) - z1*conj(z1)").unwrap();
        assert_eq!(rho.n, 2);
        let s = rho.expand_real(5).unwrap();
        assert_eq!(s.coeff_of(&[1, 0, 1, 0]), Scalar::from_int(-1));
        assert_eq!(
            s.coeff_of(&[0, 1, 0, 0]),
            Scalar::new(BigRational::zero(), BigRational::new((-1).into(), 2.into()))
        );
        let bad = parse_defining_expression("Im(z2) - i*z1*conj(z1)").unwrap();
        assert!(matches!(bad.expand_real(5), Err(ParseError::NotReal { .. })));
    }
}
