//! Real-rootedness certificates via Sturm sequences.
//!
//! Polynomials are cleared to primitive integer form first. The squarefree
//! part `p / gcd(p, p′)` starts the chain, so the sign-variation count gives
//! distinct real roots. Remainders are pseudo-remainders rescaled by a
//! positive factor and stripped of content.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::checks::{hot_check_zero_extended, l_operator, CheckRecord, CheckReport, CheckStatus};
use crate::error::{Error, Result};
use crate::exact::{int, ExactRational};
use crate::sequences::{normalize_marik, PolynomialCoeffs};

pub const DEFAULT_DEGREE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCertificate {
    pub distinct_real_roots: usize,
    pub degree_of_squarefree_part: usize,
    pub is_real_rooted: bool,
    /// Every root is real and `≤ 0`.
    pub all_roots_nonpositive: bool,
}

/// Sturm chain over the squarefree part, as primitive integer polynomials.
#[derive(Clone, Debug)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &PolynomialCoeffs) -> Self {
        let base = IntPoly::primitive_from(p.coeffs());
        let squarefree = base.squarefree_part();
        let mut polys = vec![squarefree.clone()];
        let deriv = squarefree.derivative();
        if !deriv.is_zero() {
            polys.push(deriv);
        }
        while polys.len() >= 2 {
            let n = polys.len();
            let rem = polys[n - 2].pseudo_rem(&polys[n - 1]);
            if rem.is_zero() {
                break;
            }
            polys.push(rem.neg().primitive());
        }
        Self { polys }
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> Vec<PolynomialCoeffs> {
        self.polys
            .iter()
            .map(|p| {
                PolynomialCoeffs::new(p.0.iter().cloned().map(ExactRational::from_integer).collect())
                    .expect("chain members are nonzero")
            })
            .collect()
    }

    pub fn squarefree_degree(&self) -> usize {
        self.polys[0].degree()
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn at_pos_infinity(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| sign(p.leading())))
    }

    fn at_neg_infinity(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| {
            let s = sign(p.leading());
            if p.degree() % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    fn at_zero(&self) -> usize {
        Self::variations(self.polys.iter().map(|p| sign(&p.0[0])))
    }

    pub fn distinct_real_roots(&self) -> usize {
        self.at_neg_infinity() - self.at_pos_infinity()
    }

    /// Distinct roots in `(0, ∞)`.
    pub fn positive_roots(&self) -> usize {
        self.at_zero() - self.at_pos_infinity()
    }
}

pub fn certify(p: &PolynomialCoeffs) -> Result<RootCertificate> {
    certify_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn certify_with_cap(p: &PolynomialCoeffs, degree_cap: usize) -> Result<RootCertificate> {
    if p.degree() == 0 {
        return Err(Error::precondition("certification needs degree at least 1"));
    }
    if p.degree() > degree_cap {
        return Err(Error::precondition(format!(
            "degree {} exceeds the certification cap {degree_cap}",
            p.degree()
        )));
    }
    let chain = SturmChain::new(p);
    let distinct = chain.distinct_real_roots();
    let sq_degree = chain.squarefree_degree();
    let is_real_rooted = distinct == sq_degree;
    Ok(RootCertificate {
        distinct_real_roots: distinct,
        degree_of_squarefree_part: sq_degree,
        is_real_rooted,
        all_roots_nonpositive: is_real_rooted && chain.positive_roots() == 0,
    })
}

/// Higher order Turán inequalities for the factorial-normalized coefficients
/// of a real-rooted polynomial of degree `n ≥ 3`, at `1 ≤ k ≤ n−2`.
///
/// At `k = n−1` with `a_{n+1} = 0` the expression is
/// `a_n²·(3a_{n−1}² − 4a_{n−2}a_n)`, negative for `(1+x)^n`; that index is
/// available through [`marik_check_with_boundary`].
pub fn marik_check(p: &PolynomialCoeffs) -> Result<CheckReport> {
    marik_records(p, false)
}

/// [`marik_check`] extended to `k = n−1`, reading `a_{n+1}` as 0.
pub fn marik_check_with_boundary(p: &PolynomialCoeffs) -> Result<CheckReport> {
    marik_records(p, true)
}

fn marik_records(p: &PolynomialCoeffs, boundary: bool) -> Result<CheckReport> {
    let n = p.degree();
    if n < 3 {
        return Err(Error::precondition(format!("degree {n} is below 3")));
    }
    let cert = certify(p)?;
    if !cert.is_real_rooted {
        return Err(Error::NotRealRooted(cert));
    }
    let a = normalize_marik(p);
    let hi = if boundary { n as i64 - 1 } else { n as i64 - 2 };
    let records = (1..=hi).map(|k| hot_check_zero_extended(&a, k)).collect();
    let name = if boundary { "marik-boundary" } else { "marik" };
    Ok(CheckReport::new("polynomial", name, (1, hi), records))
}

/// Iterates the coefficient-level `L` operator `depth` times, certifying
/// after each level that the image is real-rooted with nonpositive roots.
/// Record `j` is the verdict for `L^j(f)`.
pub fn branden_check(p: &PolynomialCoeffs, depth: usize) -> Result<CheckReport> {
    if depth == 0 {
        return Err(Error::precondition("depth must be at least 1"));
    }
    if p.coeffs().iter().any(|c| c.is_negative()) {
        return Err(Error::precondition("coefficients must be nonnegative"));
    }
    if p.degree() == 0 {
        return Err(Error::precondition("certification needs degree at least 1"));
    }
    let cert = certify(p)?;
    if !cert.all_roots_nonpositive {
        return Err(Error::NotRealRooted(cert));
    }
    let mut current = p.to_window("level_0");
    let mut records = Vec::with_capacity(depth);
    for level in 1..=depth {
        current = l_operator(&current)?;
        let poly = PolynomialCoeffs::new(current.terms().to_vec())?;
        let cert = certify(&poly)?;
        let status = if cert.all_roots_nonpositive {
            CheckStatus::Holds
        } else {
            CheckStatus::Fails
        };
        records.push(
            CheckRecord::new(level as i64, status)
                .with("distinct_real_roots", int(cert.distinct_real_roots as i64))
                .with("degree_of_squarefree_part", int(cert.degree_of_squarefree_part as i64)),
        );
    }
    Ok(CheckReport::new("polynomial", "branden", (1, depth as i64), records))
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Integer polynomial, ascending degree, no trailing zeros (empty = 0).
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn trimmed(mut v: Vec<BigInt>) -> Self {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        IntPoly(v)
    }

    fn primitive_from(coeffs: &[ExactRational]) -> Self {
        let lcm = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly::trimmed(ints).primitive()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the (nonnegative) content; the sign is kept.
    fn primitive(self) -> Self {
        if self.is_zero() {
            return self;
        }
        let g = self.content();
        if g.is_one() {
            return self;
        }
        IntPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    fn neg(self) -> Self {
        IntPoly(self.0.into_iter().map(|c| -c).collect())
    }

    fn derivative(&self) -> Self {
        let v = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::trimmed(v).primitive()
    }

    /// A positive multiple of `self mod divisor`.
    fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let d_deg = divisor.degree();
        let lc = divisor.leading().clone();
        let mut rem = self.0.clone();
        let mut flips = false;
        while !rem.is_empty() && rem.len() > d_deg {
            let shift = rem.len() - 1 - d_deg;
            let lead = rem.last().expect("nonempty").clone();
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for (i, dc) in divisor.0.iter().enumerate() {
                rem[i + shift] -= &lead * dc;
            }
            if lc.is_negative() {
                flips = !flips;
            }
            rem = IntPoly::trimmed(rem).primitive().0;
        }
        let out = IntPoly::trimmed(rem);
        if flips {
            out.neg()
        } else {
            out
        }
    }

    fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// Exact quotient `self / divisor` when `divisor` divides `self` over Q,
    /// returned in primitive form.
    fn exact_div(&self, divisor: &IntPoly) -> IntPoly {
        let d_deg = divisor.degree();
        let lc = ExactRational::from_integer(divisor.leading().clone());
        let mut rem: Vec<ExactRational> =
            self.0.iter().cloned().map(ExactRational::from_integer).collect();
        let mut quot = vec![ExactRational::zero(); self.degree() - d_deg + 1];
        for shift in (0..quot.len()).rev() {
            let q = &rem[shift + d_deg] / &lc;
            for (i, dc) in divisor.0.iter().enumerate() {
                rem[shift + i] -= &q * ExactRational::from_integer(dc.clone());
            }
            quot[shift] = q;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()), "divisor must divide exactly");
        IntPoly::primitive_from(&quot)
    }

    fn squarefree_part(&self) -> IntPoly {
        let deriv = self.derivative();
        if deriv.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&deriv);
        if g.degree() == 0 {
            return self.clone();
        }
        self.exact_div(&g)
    }
}
