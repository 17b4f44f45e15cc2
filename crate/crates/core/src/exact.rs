//! Exact scalars: arbitrary-precision rationals and quadratic surds.
//!
//! [`ExactRational`] is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator, so equality is structural.
//! [`SurdValue`] represents `α + β·√d` with rational `α`, `β` and a rational
//! radicand `d ≥ 0`. The radicand is never reduced to a squarefree integer;
//! comparisons only ever need `β²·d`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type ExactRational = num_rational::BigRational;

/// Builds `numer / denom` in canonical form. Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> ExactRational {
    ExactRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(value))
}

pub fn from_bigint(value: BigInt) -> ExactRational {
    ExactRational::from_integer(value)
}

pub fn checked_div(a: &ExactRational, b: &ExactRational) -> Result<ExactRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn square(a: &ExactRational) -> ExactRational {
    a * a
}

/// Serializes as `p/q`, always including the denominator.
pub fn format_rational(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses an integer (`-12`), a fraction (`3/4`) or a finite decimal
/// (`-0.125`) into an exact rational. Decimals never pass through `f64`.
pub fn parse_rational(text: &str) -> std::result::Result<ExactRational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty value".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_int(num)?;
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(ExactRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if frac.is_empty() && whole.is_empty() {
            return Err(format!("invalid decimal {s:?}"));
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(whole) || !all_digits(frac) {
            return Err(format!("invalid decimal {s:?}"));
        }
        let digits = format!("{whole}{frac}");
        let mut numer: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| format!("invalid decimal {s:?}"))?
        };
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10u8), frac.len());
        return Ok(ExactRational::new(numer, denom));
    }
    parse_int(s).map(ExactRational::from_integer)
}

fn parse_int(s: &str) -> std::result::Result<BigInt, String> {
    let t = s.trim();
    let body = t.strip_prefix(['-', '+']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid number {t:?}"));
    }
    t.parse::<BigInt>().map_err(|e| format!("invalid number {t:?}: {e}"))
}

/// Exact value `alpha + beta·√radicand`.
///
/// Construction normalizes the degenerate forms `β = 0` and `d = 0` to
/// `{α, 0, 0}`, so a surd with no irrational part is structurally a rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdValue {
    alpha: ExactRational,
    beta: ExactRational,
    radicand: ExactRational,
}

impl SurdValue {
    pub fn new(alpha: ExactRational, beta: ExactRational, radicand: ExactRational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::domain(format!(
                "negative radicand {}",
                format_rational(&radicand)
            )));
        }
        if beta.is_zero() || radicand.is_zero() {
            return Ok(Self::rational(alpha));
        }
        Ok(Self { alpha, beta, radicand })
    }

    pub fn rational(alpha: ExactRational) -> Self {
        Self {
            alpha,
            beta: ExactRational::zero(),
            radicand: ExactRational::zero(),
        }
    }

    pub fn alpha(&self) -> &ExactRational {
        &self.alpha
    }

    pub fn beta(&self) -> &ExactRational {
        &self.beta
    }

    pub fn radicand(&self) -> &ExactRational {
        &self.radicand
    }

    /// `true` when the value has no irrational part in this representation.
    pub fn is_rational(&self) -> bool {
        self.beta.is_zero()
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        if factor.is_zero() {
            return Self::rational(ExactRational::zero());
        }
        Self {
            alpha: &self.alpha * factor,
            beta: &self.beta * factor,
            radicand: self.radicand.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            alpha: -&self.alpha,
            beta: -&self.beta,
            radicand: self.radicand.clone(),
        }
    }

    /// Ordering of `self` relative to the rational `q`.
    pub fn cmp_rational(&self, q: &ExactRational) -> Ordering {
        compare_rational_to_surd(q, self).reverse()
    }

    /// Lossy decimal rendering for diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.alpha.to_f64().unwrap_or(f64::NAN);
        let b = self.beta.to_f64().unwrap_or(f64::NAN);
        let d = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

impl fmt::Display for SurdValue {
    /// `alpha+beta*sqrt(d)` with each part as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}+{}*sqrt({})",
            format_rational(&self.alpha),
            format_rational(&self.beta),
            format_rational(&self.radicand)
        )
    }
}

impl FromStr for SurdValue {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let body = s
            .strip_suffix(')')
            .ok_or_else(|| format!("surd {s:?} must end with ')'"))?;
        let (head, radicand) = body
            .split_once("*sqrt(")
            .ok_or_else(|| format!("surd {s:?} is missing '*sqrt('"))?;
        // alpha may itself carry a leading sign, so split at the first '+'
        // that is not in position 0.
        let split = head
            .char_indices()
            .skip(1)
            .find(|&(_, c)| c == '+')
            .map(|(i, _)| i)
            .ok_or_else(|| format!("surd {s:?} is missing '+'"))?;
        let alpha = parse_rational(&head[..split])?;
        let beta = parse_rational(&head[split + 1..])?;
        let radicand = parse_rational(radicand)?;
        SurdValue::new(alpha, beta, radicand).map_err(|e| e.to_string())
    }
}

/// Exact ordering of `q` against `α + β√d`.
///
/// With `t = q − α` the question is `t` versus `β√d`. Differing signs decide
/// immediately; equal signs compare `t²` with `β²·d`, flipping the result
/// when both sides are negative.
pub fn compare_rational_to_surd(q: &ExactRational, s: &SurdValue) -> Ordering {
    let t = q - &s.alpha;
    if s.beta.is_zero() || s.radicand.is_zero() {
        return sign_of(&t);
    }
    let rhs_sign = sign_of(&s.beta);
    let t_sign = sign_of(&t);
    match (t_sign, rhs_sign) {
        (Ordering::Equal, r) => r.reverse(),
        (l, r) if l != r => l,
        (l, _) => {
            let lhs_sq = &t * &t;
            let rhs_sq = &s.beta * &s.beta * &s.radicand;
            let by_magnitude = lhs_sq.cmp(&rhs_sq);
            if l == Ordering::Greater {
                by_magnitude
            } else {
                by_magnitude.reverse()
            }
        }
    }
}

fn sign_of(q: &ExactRational) -> Ordering {
    q.cmp(&ExactRational::zero())
}

/// The bound pair `ratio_sq·(1 ∓ √(1−c))²`, expanded to
/// `ratio_sq·((2−c) ∓ 2√(1−c))`.
pub fn surd_bound_pair(
    ratio_sq: &ExactRational,
    c: &ExactRational,
) -> Result<(SurdValue, SurdValue)> {
    if !ratio_sq.is_positive() {
        return Err(Error::domain(format!(
            "ratio_sq must be positive, got {}",
            format_rational(ratio_sq)
        )));
    }
    let one = ExactRational::one();
    if c.is_negative() || *c > one {
        return Err(Error::domain(format!(
            "c must lie in [0, 1], got {}",
            format_rational(c)
        )));
    }
    let two = int(2);
    let alpha = ratio_sq * (&two - c);
    let beta = ratio_sq * &two;
    let radicand = &one - c;
    let lower = SurdValue::new(alpha.clone(), -&beta, radicand.clone())?;
    let upper = SurdValue::new(alpha, beta, radicand)?;
    Ok((lower, upper))
}
