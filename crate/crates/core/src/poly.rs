//! Exact univariate polynomial arithmetic over arbitrary-precision rationals.
//!
//! Coefficients are stored ascending: index `i` holds the coefficient of
//! `t^i`. The trailing stored coefficient is always nonzero; the zero
//! polynomial stores no coefficients and has degree [`Degree::MinusInfinity`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact rational from an `f64`. Panics on NaN/infinity, which never arise
/// from the tolerances and slacks we convert.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).expect("finite float")
}

/// Degree of a polynomial; the zero polynomial gets a dedicated marker so
/// that degree-sequence predicates stay unambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn as_usize(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::MinusInfinity, Degree::MinusInfinity) => Ordering::Equal,
            (Degree::MinusInfinity, _) => Ordering::Less,
            (_, Degree::MinusInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialEq<usize> for Degree {
    fn eq(&self, other: &usize) -> bool {
        matches!(self, Degree::Finite(d) if d == other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// Monic product of `(t - r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        let mut p = Polynomial::one();
        for r in roots {
            p = &p * &Polynomial::from_coeffs(vec![-r.clone(), Rat::one()]);
        }
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::MinusInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitute `q` for the variable.
    pub fn compose(&self, q: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Quotient and remainder of division by a nonzero `divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() / &lead;
            if !q.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let delta = &q * c;
                    rem[k + i] -= delta;
                }
            }
            quot[k] = q;
            // leading term is eliminated exactly
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Exact division; errors if the divisor does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Monic gcd over the rationals; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lead = a.leading_coeff();
            a.scale(&lead.recip())
        }
    }

    /// Square-free part: `p / gcd(p, p')`, monic.
    pub fn square_free_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(&self.derivative());
        let q = self.div_exact(&g).expect("gcd divides");
        let lead = q.leading_coeff();
        q.scale(&lead.recip())
    }

    /// Scale by a positive rational so coefficients become coprime integers.
    /// Sign pattern (and hence real roots) is unchanged.
    pub fn primitive_integer(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        Polynomial {
            coeffs: ints
                .iter()
                .map(|v| Rat::from_integer(v / &g))
                .collect(),
        }
    }

    /// Cauchy bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Rat {
        let lead = self.leading_coeff();
        if lead.is_zero() {
            return Rat::one();
        }
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = (c / &lead).abs();
            if r > m {
                m = r;
            }
        }
        m + Rat::one()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

/// Serialization form: comma-separated exact rationals, ascending degree.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(rat_to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse an exact rational written as an integer, a fraction `p/q`, or a
/// decimal (`0.00001` becomes `1/100000` exactly).
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| Error::Parse(e.to_string()))?;
        let d = BigInt::from_str(den.trim()).map_err(|e| Error::Parse(e.to_string()))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|e| Error::Parse(e.to_string()))?
        };
        let frac_digits = frac.trim();
        let frac_part =
            BigInt::from_str(frac_digits).map_err(|e| Error::Parse(e.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_digits.len() as u32);
        let mag = int_part.abs() * &scale + frac_part;
        let signed = if neg { -mag } else { mag };
        return Ok(Rat::new(signed, scale));
    }
    let n = BigInt::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Rat::from_integer(n))
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Accepts the comma form (`"0,-10,0,0,0,1"`) and a human form with the
    /// variable `t` (`"t^5 - 10*t"`, factored products allowed).
    fn from_str(s: &str) -> Result<Polynomial> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if trimmed.contains(',') || !trimmed.contains('t') {
            let coeffs: Result<Vec<Rat>> = trimmed.split(',').map(parse_rational).collect();
            return Ok(Polynomial::from_coeffs(coeffs?));
        }
        ExprParser::new(trimmed).parse()
    }
}

/// Tiny expression parser for the human form: `+ - * / ^`, parentheses,
/// implicit multiplication, decimals kept exact.
struct ExprParser<'a> {
    chars: Vec<char>,
    pos: usize,
    src: &'a str,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str) -> Self {
        ExprParser {
            chars: src.chars().collect(),
            pos: 0,
            src,
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(Error::Parse(format!(
                "trailing input at byte {} in '{}'",
                self.pos, self.src
            )));
        }
        Ok(p)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        let mut neg = false;
        while let Some(c) = self.peek() {
            match c {
                '-' => {
                    neg = !neg;
                    self.pos += 1;
                    self.skip_ws();
                }
                '+' => {
                    self.pos += 1;
                    self.skip_ws();
                }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    match f.degree() {
                        Degree::Finite(0) => acc = acc.scale(&f.coeff(0).recip()),
                        _ => {
                            return Err(Error::Parse(
                                "division only by nonzero constants".into(),
                            ))
                        }
                    }
                }
                // implicit multiplication: `2(t-2)(t+4)` or `0.5 t`
                Some(c) if c == '(' || c == 't' || c.is_ascii_digit() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let exp: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("bad exponent".into()))?;
            let mut acc = Polynomial::one();
            for _ in 0..exp {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(p)
            }
            Some('t') => {
                self.pos += 1;
                Ok(Polynomial::monomial(Rat::one(), 1))
            }
            Some('-') => {
                self.pos += 1;
                let a = self.atom()?;
                Ok(-&a)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_digit() || c == '.')
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                Ok(Polynomial::constant(parse_rational(&text)?))
            }
            other => Err(Error::Parse(format!("unexpected input: {:?}", other))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn degree_of_zero_is_marker() {
        assert_eq!(Polynomial::zero().degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn degree_multiplicative() {
        let a = p("t^3 - 3*t");
        let b = p("t^4 - 4*t^2");
        assert_eq!((&a * &b).degree(), Degree::Finite(7));
    }

    #[test]
    fn exact_divide_factorization_identity() {
        // (t^2 - 1) / (t - 1) = t + 1
        let q = p("t^2-1").div_exact(&p("t-1")).unwrap();
        assert_eq!(q, p("t+1"));
    }

    #[test]
    fn exact_divide_rejects_non_divisor() {
        assert_eq!(p("t^2+1").div_exact(&p("t-1")), Err(Error::NotDivisible));
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(t^3 - t, t^2 - 1) = t^2 - 1
        let g = p("t^3-t").gcd(&p("t^2-1"));
        assert_eq!(g, p("t^2-1"));
    }

    #[test]
    fn derivative_power_rule() {
        assert_eq!(p("t^4-4*t^2").derivative(), p("4*t^3-8*t"));
    }

    #[test]
    fn composition_matches_substitution() {
        let f = p("t^2+1");
        let g = p("t-3");
        assert_eq!(f.compose(&g), p("(t-3)^2+1"));
    }

    #[test]
    fn parse_comma_and_human_forms_agree() {
        assert_eq!(p("0,-10,0,0,0,1"), p("t^5 - 10*t"));
        assert_eq!(p("t^5 - 10*t").to_string(), "0,-10,0,0,0,1");
    }

    #[test]
    fn parse_factored_decimals_exactly() {
        let q = p("0.5 t (-0.19 + t)");
        assert_eq!(q.coeff(1), rat(-19, 200));
        assert_eq!(q.coeff(2), rat(1, 2));
    }

    #[test]
    fn parse_rational_decimal() {
        assert_eq!(parse_rational("0.00001").unwrap(), rat(1, 100000));
        assert_eq!(parse_rational("-8.13297").unwrap(), rat(-813297, 100000));
    }

    #[test]
    fn eval_exactness() {
        let f = p("t^3 - 3*t");
        assert_eq!(f.eval(&rat(1, 2)), rat(-11, 8));
    }

    #[test]
    fn primitive_integer_preserves_roots() {
        let f = p("1/2,0,1/3"); // 1/2 + t^2/3
        let g = f.primitive_integer();
        assert_eq!(g, p("3,0,2"));
    }
}
