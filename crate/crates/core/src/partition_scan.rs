//! Scans over the partition function `p(n)`.
//!
//! `f(n) = (p(n+1)² − p(n)p(n+2)) / (p(n)² − p(n−1)p(n+1))` is the
//! consecutive-ratio of the Turán expressions and
//! `g_k(n) = p(n+k+2)/p(n+k)`. Note `g_k(n−1) = p(n+k+1)/p(n+k−1)`, so the
//! two ways the upper comparison is written coincide.

use std::cmp::Ordering;

use serde::Serialize;

use crate::checks::{
    convexity_check, hot_report, is_k_log_concave, is_k_log_concave_interior, l_increasing_check,
    ratio_log_convexity_check,
    CheckRecord, CheckReport, CheckStatus, NaReason,
};
use crate::error::{Error, Result};
use crate::exact::{
    compare_rational_to_surd, format_rational, from_bigint, int, surd_bound_pair, ExactRational,
    SurdValue,
};
use crate::sequences::PartitionTable;

pub const DEFAULT_MAX_N: usize = 1000;
pub const DEFAULT_K_MAX: u32 = 40;

/// `(first n, last n, k)` ranges on which `g_k(n) ≤ f(n) ≤ g_k(n−1)`.
pub const TABLE_RANGES: [(u32, u32, u32); 7] = [
    (224, 225, 20),
    (244, 261, 21),
    (268, 291, 22),
    (296, 323, 23),
    (326, 355, 24),
    (356, 389, 25),
    (390, 425, 26),
];

fn p(table: &PartitionTable, n: i64) -> Result<ExactRational> {
    table.get(n).cloned().map(from_bigint).ok_or_else(|| {
        Error::precondition(format!(
            "p({n}) is outside the memo table (0..={})",
            table.n_max()
        ))
    })
}

/// `p(n)² − p(n−1)p(n+1)`.
pub fn turan_delta(table: &PartitionTable, n: i64) -> Result<ExactRational> {
    let cur = p(table, n)?;
    Ok(&cur * &cur - p(table, n - 1)? * p(table, n + 1)?)
}

pub fn f_of_n(table: &PartitionTable, n: i64) -> Result<ExactRational> {
    if n < 1 {
        return Err(Error::precondition("f(n) needs n ≥ 1"));
    }
    let denom = turan_delta(table, n)?;
    if denom <= ExactRational::from_integer(0.into()) {
        return Err(Error::NotApplicable(NaReason::NonpositiveDenominator));
    }
    Ok(turan_delta(table, n + 1)? / denom)
}

pub fn g_k_of_n(table: &PartitionTable, n: i64, k: i64) -> Result<ExactRational> {
    if n + k < 0 {
        return Err(Error::precondition("g_k(n) needs n + k ≥ 0"));
    }
    Ok(p(table, n + k + 2)? / p(table, n + k)?)
}

/// `g_k(n) ≤ f ≤ g_k(n−1)` with strictness.
fn sandwich_status(table: &PartitionTable, n: i64, k: i64, f: &ExactRational) -> Result<CheckStatus> {
    let lo = g_k_of_n(table, n, k)?;
    let hi = g_k_of_n(table, n - 1, k)?;
    Ok(CheckStatus::from_le(lo.cmp(f)).and(CheckStatus::from_le(f.cmp(&hi))))
}

/// Every `k ∈ [1, k_max]` with `g_k(n) ≤ f(n) ≤ g_k(n−1)`.
pub fn find_admissible_k(table: &PartitionTable, n: i64, k_max: u32) -> Result<Vec<u32>> {
    if k_max < 1 {
        return Err(Error::precondition("k_max must be at least 1"));
    }
    let f = f_of_n(table, n)?;
    let mut out = Vec::new();
    for k in 1..=k_max {
        if sandwich_status(table, n, k as i64, &f)?.is_holding() {
            out.push(k);
        }
    }
    Ok(out)
}

fn table_record(table: &PartitionTable, n: i64, k: u32) -> Result<CheckRecord> {
    let f = match f_of_n(table, n) {
        Ok(f) => f,
        Err(Error::NotApplicable(reason)) => return Ok(CheckRecord::not_applicable(n, reason)),
        Err(e) => return Err(e),
    };
    let status = sandwich_status(table, n, k as i64, &f)?;
    Ok(CheckRecord::new(n, status)
        .with("k", int(k as i64))
        .with("g_k_lo", g_k_of_n(table, n, k as i64)?)
        .with("f_n", f)
        .with("g_k_hi", g_k_of_n(table, n - 1, k as i64)?))
}

/// `g_k(n) ≤ f(n) ≤ g_k(n−1)` for every `n ∈ [lo, hi]` at a fixed `k`.
pub fn verify_table_range(table: &PartitionTable, lo: u32, hi: u32, k: u32) -> Result<CheckReport> {
    let records = (lo as i64..=hi as i64)
        .map(|n| table_record(table, n, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new("partition", format!("fk-table(k={k})"), (lo as i64, hi as i64), records))
}

/// All seven ranges of [`TABLE_RANGES`] in one report, keyed by `n`.
pub fn verify_table_ranges(table: &PartitionTable) -> Result<CheckReport> {
    let mut records = Vec::new();
    for &(lo, hi, k) in TABLE_RANGES.iter() {
        for n in lo..=hi {
            records.push(table_record(table, n as i64, k)?);
        }
    }
    let lo = TABLE_RANGES[0].0 as i64;
    let hi = TABLE_RANGES[TABLE_RANGES.len() - 1].1 as i64;
    Ok(CheckReport::new("partition", "fk-table", (lo, hi), records))
}

/// Record `n` compares `Δ(n+1)` against `Δ(n)` for
/// `Δ(n) = p(n)² − p(n−1)p(n+1)`, over `lo ≤ n < hi`. Strict increase is
/// `HoldsStrict`; a tie is `Holds`.
pub fn delta_increasing_scan(table: &PartitionTable, lo: i64, hi: i64) -> Result<CheckReport> {
    if lo < 1 || lo >= hi {
        return Err(Error::precondition("delta scan needs 1 ≤ lo < hi"));
    }
    let window = partition_window(table, hi as usize + 1)?;
    let mut report = l_increasing_check(&window, Some((lo, hi - 1)))?;
    report.check = "delta-increasing".into();
    report.range = (lo, hi);
    Ok(report)
}

fn partition_window(table: &PartitionTable, top: usize) -> Result<crate::sequences::SequenceWindow> {
    if top > table.n_max() {
        return Err(Error::precondition(format!(
            "p({top}) is outside the memo table (0..={})",
            table.n_max()
        )));
    }
    Ok(table.window(top))
}

/// A literature claim "property holds for n ≥ threshold", scanned from 1.
#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub claim: &'static str,
    pub threshold: i64,
    pub scan: CheckReport,
    /// Smallest `n` from which every record through the scan end holds.
    pub holds_from: Option<i64>,
    pub verified: bool,
}

impl ClaimResult {
    fn new(
        claim: &'static str,
        threshold: i64,
        scan: CheckReport,
        accept: impl Fn(CheckStatus) -> bool,
    ) -> Self {
        let holds_from = scan.first_run_start(&accept);
        let verified = scan
            .records
            .iter()
            .filter(|r| r.k >= threshold)
            .all(|r| accept(r.status));
        Self {
            claim,
            threshold,
            scan,
            holds_from,
            verified,
        }
    }

    /// The scan restricted to `n ≥ threshold`.
    pub fn claimed_range(&self) -> CheckReport {
        self.scan.restricted(self.threshold, self.scan.range.1)
    }
}

/// Strict increase of `p(n)² − p(n−1)p(n+1)` from `n = 55`, scanned on
/// `[1, max_n]`.
pub fn delta_claim(table: &PartitionTable, max_n: usize) -> Result<ClaimResult> {
    let scan = delta_increasing_scan(table, 1, max_n as i64)?;
    Ok(ClaimResult::new("delta-increasing", 55, scan, |s| {
        s == CheckStatus::HoldsStrict
    }))
}

/// The cited ranges: higher order Turán from 95, 2-log-concavity from 221,
/// log-convexity of `p(n+1)/p(n)` from 116 and `2p(n) ≤ p(n+1) + p(n−1)`
/// from 1, each scanned on `[1, max_n]`.
///
/// 2-log-concavity is reported twice. `2-log-concave` asks for the centered
/// level-2 value `L²(n) ≥ 0` at every `n ≥ 221`; it is negative at 221.
/// `2-log-concave-tail` treats `{p(n)}_{n≥221}` as a sequence of its own, so
/// `L²` is only taken where it reads no term below 221, i.e. from 223.
pub fn cited_ranges_scan(table: &PartitionTable, max_n: usize) -> Result<Vec<ClaimResult>> {
    let window = partition_window(table, max_n + 3)?;
    let range = Some((1, max_n as i64));
    let holding = CheckStatus::is_holding;
    let mut hot = hot_report(&window, range);
    hot.check = "hot".into();
    let two_lc = is_k_log_concave(&window, 2, range)?;
    let log_convex = ratio_log_convexity_check(&window, range);
    let convex = convexity_check(&window, range)?;
    let tail = window
        .slice(221, max_n + 2)
        .filter(|w| w.len() >= 5)
        .map(|w| is_k_log_concave_interior(&w, 2, None))
        .unwrap_or_else(|| CheckReport::new(window.name(), "2-log-concave-interior", (223, 222), Vec::new()));
    Ok(vec![
        ClaimResult::new("hot", 95, hot, holding),
        ClaimResult::new("2-log-concave", 221, two_lc, holding),
        ClaimResult::new("2-log-concave-tail", 223, tail, holding),
        ClaimResult::new("ratio-log-convex", 116, log_convex, holding),
        ClaimResult::new("convex", 1, convex, holding),
    ])
}

/// Everything `verify-paper` runs.
#[derive(Clone, Debug)]
pub struct ClaimVerification {
    pub tables: CheckReport,
    pub claims: Vec<ClaimResult>,
}

impl ClaimVerification {
    pub fn all_verified(&self) -> bool {
        self.tables.all_holding() && self.claims.iter().all(|c| c.verified)
    }
}

pub fn verify_all(max_n: usize) -> Result<ClaimVerification> {
    let needed = (max_n + 3).max(TABLE_RANGES[6].1 as usize + TABLE_RANGES[6].2 as usize + 2);
    let table = PartitionTable::shared(needed);
    let tables = verify_table_ranges(&table)?;
    let mut claims = vec![delta_claim(&table, max_n)?];
    claims.extend(cited_ranges_scan(&table, max_n)?);
    Ok(ClaimVerification { tables, claims })
}

// ----------------------------------------------------------------- rows

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub n: i64,
    #[serde(serialize_with = "opt_rational")]
    pub f_n: Option<ExactRational>,
    pub admissible_k: Vec<u32>,
    /// The `k` used for the `g_k` columns.
    pub k: Option<u32>,
    #[serde(serialize_with = "opt_rational")]
    pub g_k_lo: Option<ExactRational>,
    #[serde(serialize_with = "opt_rational")]
    pub g_k_hi: Option<ExactRational>,
    pub lower_surd_ok: Option<bool>,
    pub upper_surd_ok: Option<bool>,
    #[serde(serialize_with = "status_label")]
    pub status: CheckStatus,
}

fn opt_rational<S: serde::Serializer>(
    q: &Option<ExactRational>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => ser.serialize_str(&format_rational(q)),
        None => ser.serialize_none(),
    }
}

fn status_label<S: serde::Serializer>(
    s: &CheckStatus,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(s.label())
}

impl ScanRow {
    fn empty(n: i64, status: CheckStatus) -> Self {
        Self {
            n,
            f_n: None,
            admissible_k: Vec::new(),
            k: None,
            g_k_lo: None,
            g_k_hi: None,
            lower_surd_ok: None,
            upper_surd_ok: None,
            status,
        }
    }
}

fn f_or_na(table: &PartitionTable, n: i64) -> Result<std::result::Result<ExactRational, NaReason>> {
    match f_of_n(table, n) {
        Ok(f) => Ok(Ok(f)),
        Err(Error::NotApplicable(r)) => Ok(Err(r)),
        Err(Error::Precondition(_)) if n < 1 => Ok(Err(NaReason::OutOfRange)),
        Err(e) => Err(e),
    }
}

/// One row per `n ∈ [lo, hi]`: `f(n)`, every admissible `k ≤ k_max`, and the
/// `g_k` columns for the smallest admissible `k`. A row with no admissible
/// `k` is `Fails`.
pub fn fk_scan(table: &PartitionTable, lo: i64, hi: i64, k_max: u32) -> Result<Vec<ScanRow>> {
    (lo..=hi)
        .map(|n| {
            let f = match f_or_na(table, n)? {
                Ok(f) => f,
                Err(r) => return Ok(ScanRow::empty(n, CheckStatus::NotApplicable(r))),
            };
            let admissible = find_admissible_k(table, n, k_max)?;
            let mut row = ScanRow::empty(n, CheckStatus::Fails);
            if let Some(&k) = admissible.first() {
                row.status = sandwich_status(table, n, k as i64, &f)?;
                row.k = Some(k);
                row.g_k_lo = Some(g_k_of_n(table, n, k as i64)?);
                row.g_k_hi = Some(g_k_of_n(table, n - 1, k as i64)?);
            }
            row.f_n = Some(f);
            row.admissible_k = admissible;
            Ok(row)
        })
        .collect()
}

/// How to read the upper bound in the closing comparison.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UpperReading {
    /// `(p(n+1)/p(n))²·(1 + √(1 − c_n))²`, consistent with the two-sided bound.
    #[default]
    Corrected,
    /// `(p(n+1)/p(n))²·(1 − √(1 + c_n))²`, the expression as printed.
    Literal,
}

fn upper_bound(ratio_sq: &ExactRational, c: &ExactRational, reading: UpperReading) -> SurdValue {
    match reading {
        UpperReading::Corrected => surd_bound_pair(ratio_sq, c).expect("c in [0, 1)").1,
        UpperReading::Literal => {
            let one = ExactRational::from_integer(1.into());
            let two = int(2);
            SurdValue::new(ratio_sq * (&two + c), -(ratio_sq * &two), &one + c)
                .expect("1 + c > 0")
        }
    }
}

/// One row per `n ∈ [lo, hi]` at fixed `k ≥ 3`: `g_k(n) ≥ lower surd` and
/// `g_k(n−1) ≤ upper surd`, where the surds are the two-sided bounds at
/// `c_n = p(n)p(n+2)/p(n+1)²`. The verdicts are recorded, not presumed.
pub fn terminal_bounds_scan(
    table: &PartitionTable,
    lo: i64,
    hi: i64,
    k: u32,
    k_max: u32,
    reading: UpperReading,
) -> Result<Vec<ScanRow>> {
    if k < 3 {
        return Err(Error::precondition("terminal bounds need k ≥ 3"));
    }
    (lo..=hi)
        .map(|n| {
            if n < 1 {
                return Ok(ScanRow::empty(n, CheckStatus::NotApplicable(NaReason::OutOfRange)));
            }
            let (pn, pn1, pn2) = (p(table, n)?, p(table, n + 1)?, p(table, n + 2)?);
            let c = &pn * &pn2 / (&pn1 * &pn1);
            let mut row = ScanRow::empty(n, CheckStatus::Fails);
            row.k = Some(k);
            row.g_k_lo = Some(g_k_of_n(table, n, k as i64)?);
            row.g_k_hi = Some(g_k_of_n(table, n - 1, k as i64)?);
            if let Ok(f) = f_or_na(table, n)? {
                row.admissible_k = find_admissible_k(table, n, k_max)?;
                row.f_n = Some(f);
            }
            let one = ExactRational::from_integer(1.into());
            match c.cmp(&one) {
                Ordering::Greater => {
                    row.status = CheckStatus::NotApplicable(NaReason::ImaginaryBound);
                    return Ok(row);
                }
                Ordering::Equal => {
                    row.status = CheckStatus::NotApplicable(NaReason::OutsideRegion);
                    return Ok(row);
                }
                Ordering::Less => {}
            }
            let ratio_sq = &pn1 * &pn1 / (&pn * &pn);
            let lower = surd_bound_pair(&ratio_sq, &c).expect("c in [0, 1)").0;
            let upper = upper_bound(&ratio_sq, &c, reading);
            let lower_st = CheckStatus::from_ge(compare_rational_to_surd(
                row.g_k_lo.as_ref().expect("set above"),
                &lower,
            ));
            let upper_st = CheckStatus::from_le(compare_rational_to_surd(
                row.g_k_hi.as_ref().expect("set above"),
                &upper,
            ));
            row.lower_surd_ok = Some(lower_st.is_holding());
            row.upper_surd_ok = Some(upper_st.is_holding());
            row.status = lower_st.and(upper_st);
            Ok(row)
        })
        .collect()
}

pub const FK_CSV_HEADER: &str = "n,f_n,admissible_k,g_k_lo,g_k_hi,status";

/// CSV table; `terminal` appends the `k,lower_surd_ok,upper_surd_ok` columns.
pub fn rows_to_csv(rows: &[ScanRow], terminal: bool) -> String {
    let mut out = String::from(FK_CSV_HEADER);
    if terminal {
        out.push_str(",k,lower_surd_ok,upper_surd_ok");
    }
    out.push('\n');
    let opt = |q: &Option<ExactRational>| q.as_ref().map(format_rational).unwrap_or_default();
    let flag = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
    for r in rows {
        let ks: Vec<String> = r.admissible_k.iter().map(|k| k.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{}",
            r.n,
            opt(&r.f_n),
            ks.join(";"),
            opt(&r.g_k_lo),
            opt(&r.g_k_hi),
            r.status.label()
        ));
        if terminal {
            out.push_str(&format!(
                ",{},{},{}",
                r.k.map(|k| k.to_string()).unwrap_or_default(),
                flag(r.lower_surd_ok),
                flag(r.upper_surd_ok)
            ));
        }
        out.push('\n');
    }
    out
}
