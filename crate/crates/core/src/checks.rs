//! Inequality verdicts over sequence windows.
//!
//! Per-index checks return a [`CheckRecord`]; whole-window checks collect
//! records into a [`CheckReport`]. Throughout, for a window `a` and index `k`:
//!
//! - `D_k = a_k² − a_{k−1}a_{k+1}` (the Turán expression at `k`),
//! - `N_k = a_{k+1}² − a_k a_{k+2} = D_{k+1}`,
//! - `c_k = a_k a_{k+2} / a_{k+1}²`,
//! - `R_k = N_k / D_k`.
//!
//! Rational inequalities are decided in cross-multiplied form; only the
//! surd bounds `(a_{k+1}/a_k)²·(1 ∓ √(1−c_k))²` need the surd comparator.

use std::cmp::Ordering;
use std::fmt;

use indexmap::IndexMap;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    compare_rational_to_surd, int, rat, surd_bound_pair, ExactRational, SurdValue,
};
use crate::sequences::SequenceWindow;

/// Why a check could not produce a verdict at an index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NaReason {
    /// `a_k·a_{k+1} = 0`.
    ZeroProduct,
    /// `a_k² − a_{k−1}a_{k+1} ≤ 0`.
    NonpositiveDenominator,
    /// `c_k > 1`, so `√(1−c_k)` is imaginary.
    ImaginaryBound,
    /// `c_k < 0`.
    NegativeC,
    /// A term required to be positive is negative.
    NonpositiveTerm,
    /// A term used as a divisor is zero.
    ZeroTerm,
    /// Some index the check reads lies outside the window.
    OutOfRange,
    /// The inputs lie outside the parameter region the check is defined on.
    OutsideRegion,
}

impl NaReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NaReason::ZeroProduct => "zero-product",
            NaReason::NonpositiveDenominator => "nonpositive-denominator",
            NaReason::ImaginaryBound => "imaginary-bound",
            NaReason::NegativeC => "negative-c",
            NaReason::NonpositiveTerm => "nonpositive-term",
            NaReason::ZeroTerm => "zero-term",
            NaReason::OutOfRange => "out-of-range",
            NaReason::OutsideRegion => "outside-region",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            NaReason::ZeroProduct,
            NaReason::NonpositiveDenominator,
            NaReason::ImaginaryBound,
            NaReason::NegativeC,
            NaReason::NonpositiveTerm,
            NaReason::ZeroTerm,
            NaReason::OutOfRange,
            NaReason::OutsideRegion,
        ]
        .into_iter()
        .find(|r| r.as_str() == s)
    }
}

impl fmt::Display for NaReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    /// Holds with equality somewhere in the tested relation.
    Holds,
    HoldsStrict,
    Fails,
    NotApplicable(NaReason),
}

impl CheckStatus {
    /// Status of `lhs ≥ rhs` given `lhs.cmp(rhs)`.
    pub fn from_ge(ord: Ordering) -> Self {
        match ord {
            Ordering::Greater => CheckStatus::HoldsStrict,
            Ordering::Equal => CheckStatus::Holds,
            Ordering::Less => CheckStatus::Fails,
        }
    }

    /// Status of `lhs ≤ rhs` given `lhs.cmp(rhs)`.
    pub fn from_le(ord: Ordering) -> Self {
        Self::from_ge(ord.reverse())
    }

    /// Conjunction: fails if either fails, strict only if both are strict.
    pub fn and(self, other: CheckStatus) -> CheckStatus {
        use CheckStatus::*;
        match (self, other) {
            (NotApplicable(r), _) | (_, NotApplicable(r)) => NotApplicable(r),
            (Fails, _) | (_, Fails) => Fails,
            (HoldsStrict, HoldsStrict) => HoldsStrict,
            _ => Holds,
        }
    }

    pub fn is_holding(self) -> bool {
        matches!(self, CheckStatus::Holds | CheckStatus::HoldsStrict)
    }

    pub fn is_applicable(self) -> bool {
        !matches!(self, CheckStatus::NotApplicable(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Holds => "holds",
            CheckStatus::HoldsStrict => "holds_strict",
            CheckStatus::Fails => "fails",
            CheckStatus::NotApplicable(_) => "not_applicable",
        }
    }

    pub fn reason(self) -> Option<NaReason> {
        match self {
            CheckStatus::NotApplicable(r) => Some(r),
            _ => None,
        }
    }
}

/// A value entering a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Rational(ExactRational),
    Surd(SurdValue),
}

impl From<ExactRational> for Witness {
    fn from(q: ExactRational) -> Self {
        Witness::Rational(q)
    }
}

impl From<SurdValue> for Witness {
    fn from(s: SurdValue) -> Self {
        Witness::Surd(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub k: i64,
    pub status: CheckStatus,
    pub witnesses: IndexMap<String, Witness>,
}

impl CheckRecord {
    pub fn new(k: i64, status: CheckStatus) -> Self {
        Self {
            k,
            status,
            witnesses: IndexMap::new(),
        }
    }

    pub fn not_applicable(k: i64, reason: NaReason) -> Self {
        Self::new(k, CheckStatus::NotApplicable(reason))
    }

    pub fn with(mut self, name: &str, value: impl Into<Witness>) -> Self {
        self.witnesses.insert(name.to_string(), value.into());
        self
    }

    pub fn witness_rational(&self, name: &str) -> Option<&ExactRational> {
        match self.witnesses.get(name) {
            Some(Witness::Rational(q)) => Some(q),
            _ => None,
        }
    }

    pub fn witness_surd(&self, name: &str) -> Option<&SurdValue> {
        match self.witnesses.get(name) {
            Some(Witness::Surd(s)) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub holds_strict: usize,
    pub fails: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of(records: &[CheckRecord]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                CheckStatus::Holds => s.holds += 1,
                CheckStatus::HoldsStrict => s.holds_strict += 1,
                CheckStatus::Fails => s.fails += 1,
                CheckStatus::NotApplicable(_) => s.not_applicable += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.holds + self.holds_strict + self.fails + self.not_applicable
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub sequence: String,
    pub check: String,
    pub range: (i64, i64),
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
    pub first_fail_index: Option<i64>,
}

impl CheckReport {
    /// Sorts `records` by index and derives the summary.
    pub fn new(
        sequence: impl Into<String>,
        check: impl Into<String>,
        range: (i64, i64),
        mut records: Vec<CheckRecord>,
    ) -> Self {
        records.sort_by_key(|r| r.k);
        let summary = Summary::of(&records);
        let first_fail_index = records
            .iter()
            .find(|r| r.status == CheckStatus::Fails)
            .map(|r| r.k);
        Self {
            sequence: sequence.into(),
            check: check.into(),
            range,
            records,
            summary,
            first_fail_index,
        }
    }

    /// No record fails. Not-applicable records do not count against this.
    pub fn passed(&self) -> bool {
        self.summary.fails == 0
    }

    pub fn all_holding(&self) -> bool {
        self.records.iter().all(|r| r.status.is_holding())
    }

    pub fn all_strict(&self) -> bool {
        self.records.iter().all(|r| r.status == CheckStatus::HoldsStrict)
    }

    pub fn record(&self, k: i64) -> Option<&CheckRecord> {
        self.records
            .binary_search_by_key(&k, |r| r.k)
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn status_at(&self, k: i64) -> Option<CheckStatus> {
        self.record(k).map(|r| r.status)
    }

    pub fn statuses(&self) -> Vec<(i64, CheckStatus)> {
        self.records.iter().map(|r| (r.k, r.status)).collect()
    }

    /// Smallest index from which every record through the end satisfies
    /// `pred`, or `None` when the last record does not.
    pub fn first_run_start(&self, pred: impl Fn(CheckStatus) -> bool) -> Option<i64> {
        let mut start = None;
        for r in self.records.iter().rev() {
            if pred(r.status) {
                start = Some(r.k);
            } else {
                break;
            }
        }
        start
    }

    /// `first_run_start` for plain (weak) holding.
    pub fn holds_from(&self) -> Option<i64> {
        self.first_run_start(CheckStatus::is_holding)
    }

    /// Restricts to records with `lo ≤ k ≤ hi`.
    pub fn restricted(&self, lo: i64, hi: i64) -> CheckReport {
        let records = self
            .records
            .iter()
            .filter(|r| (lo..=hi).contains(&r.k))
            .cloned()
            .collect();
        CheckReport::new(self.sequence.clone(), self.check.clone(), (lo, hi), records)
    }
}

fn collect(
    s: &SequenceWindow,
    check: &str,
    range: Option<(i64, i64)>,
    default: (i64, i64),
    f: impl Fn(i64) -> CheckRecord,
) -> CheckReport {
    let (lo, hi) = range.unwrap_or(default);
    let records = (lo..=hi).map(f).collect();
    CheckReport::new(s.name(), check, (lo, hi), records)
}

fn window_bounds(s: &SequenceWindow) -> (i64, i64) {
    (s.start_index() as i64, s.end_index() as i64)
}

/// `a_{k−1}, a_k, a_{k+1}, a_{k+2}`.
fn quad(s: &SequenceWindow, k: i64) -> Option<[&ExactRational; 4]> {
    Some([s.get(k - 1)?, s.get(k)?, s.get(k + 1)?, s.get(k + 2)?])
}

fn turan(prev: &ExactRational, cur: &ExactRational, next: &ExactRational) -> ExactRational {
    cur * cur - prev * next
}

// ---------------------------------------------------------------- L operator

/// `b_0 = a_0²`, `b_k = a_k² − a_{k−1}a_{k+1}` with the window continued by
/// zeros on the right.
pub fn l_operator(s: &SequenceWindow) -> Result<SequenceWindow> {
    if s.start_index() != 0 {
        return Err(Error::precondition(format!(
            "the L operator needs a window starting at index 0, got {}",
            s.start_index()
        )));
    }
    let a = s.terms();
    let zero = ExactRational::zero();
    let terms = (0..a.len())
        .map(|k| {
            let prev = if k == 0 { &zero } else { &a[k - 1] };
            let next = a.get(k + 1).unwrap_or(&zero);
            turan(prev, &a[k], next)
        })
        .collect();
    SequenceWindow::new(format!("L({})", s.name()), 0, terms)
}

/// `[a, L(a), …, L^j(a)]`.
pub fn l_levels(s: &SequenceWindow, j: usize) -> Result<Vec<SequenceWindow>> {
    let mut levels = vec![s.clone()];
    for _ in 0..j {
        let next = l_operator(levels.last().expect("nonempty"))?;
        levels.push(next);
    }
    Ok(levels)
}

fn level_record(k: i64, values: &[&ExactRational]) -> CheckRecord {
    let mut status = CheckStatus::HoldsStrict;
    let mut failed_level = None;
    for (level, v) in values.iter().enumerate() {
        let st = CheckStatus::from_ge(v.cmp(&&ExactRational::zero()));
        if st == CheckStatus::Fails && failed_level.is_none() {
            failed_level = Some(level);
        }
        status = status.and(st);
    }
    let mut rec = CheckRecord::new(k, status);
    for (level, v) in values.iter().enumerate() {
        rec = rec.with(&format!("level_{level}"), (*v).clone());
    }
    if let Some(level) = failed_level {
        rec = rec.with("failed_level", int(level as i64));
    }
    rec
}

/// Nonnegativity of `L^0 … L^j` at every index, for a window anchored at 0
/// and read as a finitely supported sequence.
pub fn is_k_log_concave(
    s: &SequenceWindow,
    j: usize,
    range: Option<(i64, i64)>,
) -> Result<CheckReport> {
    let levels = l_levels(s, j)?;
    Ok(collect(
        s,
        &format!("{j}-log-concave"),
        range,
        window_bounds(s),
        |k| {
            let values: Option<Vec<&ExactRational>> = levels.iter().map(|l| l.get(k)).collect();
            match values {
                Some(v) => level_record(k, &v),
                None => CheckRecord::not_applicable(k, NaReason::OutOfRange),
            }
        },
    ))
}

pub fn is_log_concave(s: &SequenceWindow, range: Option<(i64, i64)>) -> Result<CheckReport> {
    is_k_log_concave(s, 1, range)
}

/// `k`-log-concavity of a window cut from a longer sequence: `L^i` is only
/// evaluated where it is determined by the window itself, i.e. at `k` with
/// `k − i` and `k + i` inside, and without the `b_0 = a_0²` anchor.
pub fn is_k_log_concave_interior(
    s: &SequenceWindow,
    j: usize,
    range: Option<(i64, i64)>,
) -> CheckReport {
    let (start, end) = window_bounds(s);
    // levels[i][m] holds L^i at absolute index start + i + m
    let mut levels: Vec<Vec<ExactRational>> = vec![s.terms().to_vec()];
    for i in 0..j {
        let prev = &levels[i];
        if prev.len() < 3 {
            break;
        }
        let next = prev.windows(3).map(|w| turan(&w[0], &w[1], &w[2])).collect();
        levels.push(next);
    }
    let default = (start + j as i64, end - j as i64);
    collect(
        s,
        &format!("{j}-log-concave-interior"),
        range,
        default,
        |k| {
            let values: Option<Vec<&ExactRational>> = (0..=j)
                .map(|i| {
                    let offset = k - start - i as i64;
                    if offset < 0 {
                        return None;
                    }
                    levels.get(i)?.get(offset as usize)
                })
                .collect();
            match values {
                Some(v) => level_record(k, &v),
                None => CheckRecord::not_applicable(k, NaReason::OutOfRange),
            }
        },
    )
}

// ------------------------------------------------------ higher order Turán

fn hot_from_terms(k: i64, a: [&ExactRational; 4]) -> CheckRecord {
    let [am1, a0, a1, a2] = a;
    let d_k = turan(am1, a0, a1);
    let d_next = turan(a0, a1, a2);
    let cross = a0 * a1 - am1 * a2;
    let value = int(4) * &d_k * &d_next - &cross * &cross;
    CheckRecord::new(k, CheckStatus::from_ge(value.cmp(&ExactRational::zero())))
        .with("d_k", d_k)
        .with("d_k_plus_1", d_next)
        .with("cross", cross)
        .with("value", value)
}

/// `4·D_k·D_{k+1} − (a_k a_{k+1} − a_{k−1}a_{k+2})² ≥ 0`.
pub fn hot_check(s: &SequenceWindow, k: i64) -> CheckRecord {
    match quad(s, k) {
        Some(a) => hot_from_terms(k, a),
        None => CheckRecord::not_applicable(k, NaReason::OutOfRange),
    }
}

/// As [`hot_check`], but terms past the right end of the window read as 0.
pub fn hot_check_zero_extended(s: &SequenceWindow, k: i64) -> CheckRecord {
    let zero = ExactRational::zero();
    let get = |i: i64| {
        if i > s.end_index() as i64 {
            Some(&zero)
        } else {
            s.get(i)
        }
    };
    match (get(k - 1), get(k), get(k + 1), get(k + 2)) {
        (Some(a), Some(b), Some(c), Some(d)) => hot_from_terms(k, [a, b, c, d]),
        _ => CheckRecord::not_applicable(k, NaReason::OutOfRange),
    }
}

pub fn hot_report(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    let (start, end) = window_bounds(s);
    collect(s, "hot", range, (start + 1, end - 2), |k| hot_check(s, k))
}

// ------------------------------------------------------ two-sided surd bound

struct RatioData {
    d_k: ExactRational,
    ratio: ExactRational,
    c_k: ExactRational,
    lower: SurdValue,
    upper: SurdValue,
}

fn ratio_data(k: i64, a: [&ExactRational; 4]) -> std::result::Result<RatioData, CheckRecord> {
    let [am1, a0, a1, a2] = a;
    if a0.is_zero() || a1.is_zero() {
        return Err(CheckRecord::not_applicable(k, NaReason::ZeroProduct));
    }
    let d_k = turan(am1, a0, a1);
    if !d_k.is_positive() {
        return Err(CheckRecord::not_applicable(k, NaReason::NonpositiveDenominator).with("d_k", d_k));
    }
    let a1_sq = a1 * a1;
    let c_k = a0 * a2 / &a1_sq;
    if c_k > ExactRational::one() {
        return Err(CheckRecord::not_applicable(k, NaReason::ImaginaryBound).with("c_k", c_k));
    }
    if c_k.is_negative() {
        return Err(CheckRecord::not_applicable(k, NaReason::NegativeC).with("c_k", c_k));
    }
    let ratio = turan(a0, a1, a2) / &d_k;
    let ratio_sq = &a1_sq / (a0 * a0);
    let (lower, upper) = surd_bound_pair(&ratio_sq, &c_k).expect("c_k in [0, 1], ratio_sq > 0");
    Ok(RatioData {
        d_k,
        ratio,
        c_k,
        lower,
        upper,
    })
}

/// `(a_{k+1}/a_k)²(1−√(1−c_k))² ≤ R_k ≤ (a_{k+1}/a_k)²(1+√(1−c_k))²`.
///
/// Requires `a_k a_{k+1} ≠ 0`, `D_k > 0` and `0 ≤ c_k ≤ 1`; anything else is
/// not applicable.
pub fn ineq1_check(s: &SequenceWindow, k: i64) -> CheckRecord {
    let Some(a) = quad(s, k) else {
        return CheckRecord::not_applicable(k, NaReason::OutOfRange);
    };
    let data = match ratio_data(k, a) {
        Ok(d) => d,
        Err(rec) => return rec,
    };
    let lower_ok = CheckStatus::from_ge(compare_rational_to_surd(&data.ratio, &data.lower));
    let upper_ok = CheckStatus::from_le(compare_rational_to_surd(&data.ratio, &data.upper));
    CheckRecord::new(k, lower_ok.and(upper_ok))
        .with("c_k", data.c_k)
        .with("d_k", data.d_k)
        .with("ratio", data.ratio)
        .with("lower", data.lower)
        .with("upper", data.upper)
}

pub fn ineq1_report(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    let (start, end) = window_bounds(s);
    collect(s, "ineq1", range, (start + 1, end - 2), |k| ineq1_check(s, k))
}

fn positive_quad(k: i64, a: [&ExactRational; 4]) -> Option<CheckRecord> {
    if a.iter().any(|t| !t.is_positive()) {
        Some(CheckRecord::not_applicable(k, NaReason::NonpositiveTerm))
    } else {
        None
    }
}

/// `a_{k+2}/a_k ≤ R_k ≤ a_{k+1}/a_{k−1}` for positive terms with `D_k > 0`.
pub fn ineq2_check(s: &SequenceWindow, k: i64) -> CheckRecord {
    let Some(a) = quad(s, k) else {
        return CheckRecord::not_applicable(k, NaReason::OutOfRange);
    };
    if let Some(na) = positive_quad(k, a) {
        return na;
    }
    let [am1, a0, a1, a2] = a;
    let d_k = turan(am1, a0, a1);
    if !d_k.is_positive() {
        return CheckRecord::not_applicable(k, NaReason::NonpositiveDenominator).with("d_k", d_k);
    }
    let n_k = turan(a0, a1, a2);
    // a_{k+2}·D ≤ N·a_k and N·a_{k−1} ≤ a_{k+1}·D
    let left = CheckStatus::from_le((a2 * &d_k).cmp(&(&n_k * a0)));
    let right = CheckStatus::from_le((&n_k * am1).cmp(&(a1 * &d_k)));
    CheckRecord::new(k, left.and(right))
        .with("left_bound", a2 / a0)
        .with("ratio", &n_k / &d_k)
        .with("right_bound", a1 / am1)
}

pub fn ineq2_report(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    let (start, end) = window_bounds(s);
    collect(s, "ineq2", range, (start + 1, end - 2), |k| ineq2_check(s, k))
}

/// `lower ≤ a_{k+2}/a_k ≤ R_k ≤ upper` with the surd bounds of
/// [`ineq1_check`].
pub fn sandwich_check(s: &SequenceWindow, k: i64) -> CheckRecord {
    let Some(a) = quad(s, k) else {
        return CheckRecord::not_applicable(k, NaReason::OutOfRange);
    };
    if let Some(na) = positive_quad(k, a) {
        return na;
    }
    let data = match ratio_data(k, a) {
        Ok(d) => d,
        Err(rec) => return rec,
    };
    let step = a[3] / a[1];
    let first = CheckStatus::from_ge(compare_rational_to_surd(&step, &data.lower));
    let middle = CheckStatus::from_le(step.cmp(&data.ratio));
    let last = CheckStatus::from_le(compare_rational_to_surd(&data.ratio, &data.upper));
    CheckRecord::new(k, first.and(middle).and(last))
        .with("c_k", data.c_k)
        .with("lower", data.lower)
        .with("step_ratio", step)
        .with("ratio", data.ratio)
        .with("upper", data.upper)
}

pub fn sandwich_report(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    let (start, end) = window_bounds(s);
    collect(s, "sandwich", range, (start + 1, end - 2), |k| sandwich_check(s, k))
}

// ------------------------------------------------------------ other criteria

/// `a_k² ≥ r·a_{k−1}a_{k+1}` at each interior index.
pub fn criterion_r_check(
    s: &SequenceWindow,
    r: &ExactRational,
    range: Option<(i64, i64)>,
) -> Result<CheckReport> {
    if !r.is_positive() {
        return Err(Error::precondition("criterion ratio r must be positive"));
    }
    let (start, end) = window_bounds(s);
    Ok(collect(s, "criterion", range, (start + 1, end - 1), |k| {
        match (s.get(k - 1), s.get(k), s.get(k + 1)) {
            (Some(prev), Some(cur), Some(next)) => {
                let lhs = cur * cur;
                let rhs = r * prev * next;
                CheckRecord::new(k, CheckStatus::from_ge(lhs.cmp(&rhs)))
                    .with("lhs", lhs)
                    .with("rhs", rhs)
            }
            _ => CheckRecord::not_applicable(k, NaReason::OutOfRange),
        }
    }))
}

fn second_difference_record(k: i64, prev: &ExactRational, cur: &ExactRational, next: &ExactRational) -> CheckRecord {
    let diff = next - cur - (cur - prev);
    CheckRecord::new(k, CheckStatus::from_ge(diff.cmp(&ExactRational::zero())))
        .with("second_difference", diff)
}

/// `a_{k+1} − a_k ≥ a_k − a_{k−1}` at each interior index.
pub fn convexity_check(s: &SequenceWindow, range: Option<(i64, i64)>) -> Result<CheckReport> {
    if s.len() < 3 {
        return Err(Error::precondition("convexity needs at least 3 terms"));
    }
    let (start, end) = window_bounds(s);
    Ok(collect(s, "convex", range, (start + 1, end - 1), |k| {
        match (s.get(k - 1), s.get(k), s.get(k + 1)) {
            (Some(a), Some(b), Some(c)) => second_difference_record(k, a, b, c),
            _ => CheckRecord::not_applicable(k, NaReason::OutOfRange),
        }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RatioDirection {
    /// `a_{k+1}/a_k`
    Up,
    /// `a_k/a_{k+1}`
    Down,
}

/// Ratios `ρ_{k−1}, ρ_k, ρ_{k+1}` for the record at `k`, where `ρ_k` is built
/// from `a_k` and `a_{k+1}`.
fn ratio_triple(
    s: &SequenceWindow,
    k: i64,
    dir: RatioDirection,
) -> std::result::Result<[ExactRational; 3], CheckRecord> {
    let a = quad(s, k).ok_or_else(|| CheckRecord::not_applicable(k, NaReason::OutOfRange))?;
    if a.iter().any(|t| t.is_zero()) {
        return Err(CheckRecord::not_applicable(k, NaReason::ZeroTerm));
    }
    if a.iter().any(|t| t.is_negative()) {
        return Err(CheckRecord::not_applicable(k, NaReason::NonpositiveTerm));
    }
    let ratio = |lo: &ExactRational, hi: &ExactRational| match dir {
        RatioDirection::Up => hi / lo,
        RatioDirection::Down => lo / hi,
    };
    Ok([ratio(a[0], a[1]), ratio(a[1], a[2]), ratio(a[2], a[3])])
}

fn ratio_convexity(
    s: &SequenceWindow,
    range: Option<(i64, i64)>,
    dir: RatioDirection,
    name: &str,
) -> CheckReport {
    let (start, end) = window_bounds(s);
    collect(s, name, range, (start + 1, end - 2), |k| {
        match ratio_triple(s, k, dir) {
            Ok([prev, cur, next]) => second_difference_record(k, &prev, &cur, &next)
                .with("ratio_prev", prev)
                .with("ratio", cur)
                .with("ratio_next", next),
            Err(rec) => rec,
        }
    })
}

/// Convexity of `a_{k+1}/a_k`; the record at `k` covers `a_{k−1}..a_{k+2}`.
pub fn ratio_up_convexity_check(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    ratio_convexity(s, range, RatioDirection::Up, "ratio-up")
}

/// Convexity of `a_k/a_{k+1}`; the record at `k` covers `a_{k−1}..a_{k+2}`.
pub fn ratio_down_convexity_check(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    ratio_convexity(s, range, RatioDirection::Down, "ratio-down")
}

/// Log-convexity `r_k² ≤ r_{k−1}·r_{k+1}` of `r_k = a_{k+1}/a_k`.
pub fn ratio_log_convexity_check(s: &SequenceWindow, range: Option<(i64, i64)>) -> CheckReport {
    let (start, end) = window_bounds(s);
    collect(s, "ratio-log-convex", range, (start + 1, end - 2), |k| {
        match ratio_triple(s, k, RatioDirection::Up) {
            Ok([prev, cur, next]) => {
                let lhs = &cur * &cur;
                let rhs = &prev * &next;
                CheckRecord::new(k, CheckStatus::from_le(lhs.cmp(&rhs)))
                    .with("ratio_sq", lhs)
                    .with("neighbour_product", rhs)
            }
            Err(rec) => rec,
        }
    })
}

/// `N_k ≥ N_{k−1}`, i.e. `a_{k+1}² − a_k a_{k+2}` is nondecreasing; strict
/// increase is reported as `HoldsStrict`.
pub fn l_increasing_check(s: &SequenceWindow, range: Option<(i64, i64)>) -> Result<CheckReport> {
    if s.len() < 4 {
        return Err(Error::precondition("l-increasing needs at least 4 terms"));
    }
    let (start, end) = window_bounds(s);
    Ok(collect(s, "l-increasing", range, (start + 1, end - 2), |k| {
        match quad(s, k) {
            Some([am1, a0, a1, a2]) => {
                let prev = turan(am1, a0, a1);
                let cur = turan(a0, a1, a2);
                CheckRecord::new(k, CheckStatus::from_ge(cur.cmp(&prev)))
                    .with("current", cur)
                    .with("previous", prev)
            }
            None => CheckRecord::not_applicable(k, NaReason::OutOfRange),
        }
    }))
}

// ------------------------------------------------ reciprocal bound question

/// `(√5 − 1)/2` as a surd.
fn golden_conjugate() -> SurdValue {
    SurdValue::new(rat(-1, 2), rat(1, 2), int(5)).expect("positive radicand")
}

/// Tests `1/c_{k−1} ≤ (1 + √(1−c_k))²` at indices where `0 ≤ c_k ≤ (√5−1)/2`
/// and both sides of `a_{k+2}/a_k ≤ R_k ≤ a_{k+1}/a_{k−1}` hold. Outside that
/// region the record is not applicable. No truth value is presumed.
pub fn reciprocal_bound_check(s: &SequenceWindow, k: i64) -> CheckRecord {
    let base = ineq2_check(s, k);
    if !base.status.is_holding() {
        return match base.status {
            CheckStatus::NotApplicable(r) => CheckRecord::not_applicable(k, r),
            _ => CheckRecord::not_applicable(k, NaReason::OutsideRegion),
        };
    }
    let a = quad(s, k).expect("ineq2 applicable");
    let c_prev = a[0] * a[2] / (a[1] * a[1]);
    let c_k = a[1] * a[3] / (a[2] * a[2]);
    if compare_rational_to_surd(&c_k, &golden_conjugate()) == Ordering::Greater {
        return CheckRecord::not_applicable(k, NaReason::OutsideRegion).with("c_k", c_k);
    }
    let (_, upper) = surd_bound_pair(&ExactRational::one(), &c_k).expect("c_k in [0, 1]");
    let reciprocal = c_prev.recip();
    CheckRecord::new(k, CheckStatus::from_le(compare_rational_to_surd(&reciprocal, &upper)))
        .with("c_k_minus_1", c_prev)
        .with("c_k", c_k)
        .with("reciprocal", reciprocal)
        .with("upper", upper)
}

/// Builds `a_0 = head.0`, `a_1 = head.1` and `a_{k+2} = c_k·a_{k+1}²/a_k`,
/// so the window realizes the prescribed `c_k` values exactly.
pub fn window_from_c_values(
    name: &str,
    head: (ExactRational, ExactRational),
    cs: &[ExactRational],
) -> Result<SequenceWindow> {
    if head.0.is_zero() || head.1.is_zero() {
        return Err(Error::precondition("leading terms must be nonzero"));
    }
    let mut terms = vec![head.0, head.1];
    for c in cs {
        let n = terms.len();
        let next = c * &terms[n - 1] * &terms[n - 1] / &terms[n - 2];
        if next.is_zero() {
            return Err(Error::precondition("c values must be nonzero"));
        }
        terms.push(next);
    }
    SequenceWindow::new(name, 0, terms)
}

/// Outcome of the empirical search around the open reciprocal-bound question.
#[derive(Clone, Debug, Default)]
pub struct ReciprocalSearch {
    pub examined: usize,
    pub applicable: usize,
    pub holding: usize,
    /// `(pair c_{k−1}, c_k)` values at which the bound failed.
    pub counterexamples: Vec<(ExactRational, ExactRational)>,
}

impl ReciprocalSearch {
    fn absorb(&mut self, rec: &CheckRecord) {
        self.examined += 1;
        match rec.status {
            CheckStatus::NotApplicable(_) => {}
            CheckStatus::Fails => {
                self.applicable += 1;
                let prev = rec.witness_rational("c_k_minus_1").cloned().unwrap_or_default();
                let cur = rec.witness_rational("c_k").cloned().unwrap_or_default();
                self.counterexamples.push((prev, cur));
            }
            _ => {
                self.applicable += 1;
                self.holding += 1;
            }
        }
    }
}

/// Structured grid over `(c_{k−1}, c_k) = (i/steps, j/steps)` plus `trials`
/// seeded random rational pairs, each realized as a quadruple.
pub fn reciprocal_bound_search(steps: u32, trials: usize, seed: u64) -> ReciprocalSearch {
    let mut out = ReciprocalSearch::default();
    let mut probe = |c_prev: ExactRational, c_cur: ExactRational| {
        let w = window_from_c_values("probe", (int(1), int(1)), &[c_prev, c_cur])
            .expect("nonzero c values");
        out.absorb(&reciprocal_bound_check(&w, 1));
    };
    for i in 1..steps {
        for j in 1..steps {
            probe(rat(i as i64, steps as i64), rat(j as i64, steps as i64));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let den: i64 = rng.gen_range(2..=1000);
        let p = rng.gen_range(1..den);
        let q = rng.gen_range(1..den);
        probe(rat(p, den), rat(q, den));
    }
    out
}
