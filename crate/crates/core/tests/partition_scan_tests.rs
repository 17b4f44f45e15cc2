mod common;

use num_bigint::BigInt;
use turan::checks::CheckStatus;
use turan::partition_scan::{
    delta_claim, f_of_n, find_admissible_k, fk_scan, g_k_of_n, rows_to_csv, terminal_bounds_scan,
    turan_delta, verify_table_range, UpperReading, FK_CSV_HEADER, TABLE_RANGES,
};
use turan::PartitionTable;

struct Oracle(Vec<BigInt>);

impl Oracle {
    fn new(n_max: usize) -> Self {
        Oracle(common::euler_product(n_max).into_iter().map(BigInt::from).collect())
    }

    fn delta(&self, n: usize) -> BigInt {
        &self.0[n] * &self.0[n] - &self.0[n - 1] * &self.0[n + 1]
    }

    /// `g_k(n) ≤ f(n) ≤ g_k(n−1)` by cross-multiplication over the integers.
    fn admissible(&self, n: usize, k: usize) -> bool {
        let p = &self.0;
        let (num, den) = (self.delta(n + 1), self.delta(n));
        let lower = &p[n + k + 2] * &den <= &num * &p[n + k];
        let upper = &num * &p[n + k - 1] <= &p[n + k + 1] * &den;
        lower && upper
    }
}

fn table() -> std::sync::Arc<PartitionTable> {
    PartitionTable::shared(560)
}

#[test]
fn admissible_sets_match_integer_oracle() {
    let t = table();
    let oracle = Oracle::new(520);
    for n in 200..=440usize {
        let expected: Vec<u32> = (1..=40).filter(|&k| oracle.admissible(n, k)).map(|k| k as u32).collect();
        assert_eq!(find_admissible_k(&t, n as i64, 40).unwrap(), expected, "n={n}");
    }
}

#[test]
fn table_ks_fail_exactly_at_425() {
    let t = table();
    let mut failing = Vec::new();
    for &(lo, hi, k) in TABLE_RANGES.iter() {
        let report = verify_table_range(&t, lo, hi, k).unwrap();
        failing.extend(report.records.iter().filter(|r| !r.status.is_holding()).map(|r| r.k));
    }
    assert_eq!(failing, vec![425]);
    assert_eq!(find_admissible_k(&t, 425, 40).unwrap(), vec![27]);
    assert!(verify_table_range(&t, 390, 424, 26).unwrap().all_holding());
}

#[test]
fn g_k_decreases_in_k() {
    let t = table();
    for n in 26..=400i64 {
        for k in 1..40 {
            assert!(g_k_of_n(&t, n, k + 1).unwrap() < g_k_of_n(&t, n, k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn f_matches_oracle_deltas() {
    let t = table();
    let oracle = Oracle::new(520);
    for n in 26..=500usize {
        let f = f_of_n(&t, n as i64).unwrap();
        assert_eq!(f, turan::ExactRational::new(oracle.delta(n + 1), oracle.delta(n)));
        assert_eq!(turan_delta(&t, n as i64).unwrap(), turan::ExactRational::from_integer(oracle.delta(n)));
    }
}

#[test]
fn delta_increases_from_55() {
    let t = table();
    let claim = delta_claim(&t, 500).unwrap();
    assert!(claim.verified);
    let oracle = Oracle::new(520);
    let first_strict_run = (1..500usize)
        .rev()
        .take_while(|&n| oracle.delta(n + 1) > oracle.delta(n))
        .last()
        .unwrap();
    assert_eq!(claim.holds_from, Some(first_strict_run as i64));
    assert!(claim.holds_from.unwrap() <= 55);
}

#[test]
fn threaded_scans_merge_to_the_sequential_result() {
    let t = table();
    let sequential = fk_scan(&t, 1, 400, 40).unwrap();
    let chunks: Vec<(i64, i64)> = (0..8).map(|i| (1 + 50 * i, 50 * (i + 1))).collect();
    let merged: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|&(lo, hi)| {
                let t = t.clone();
                s.spawn(move || fk_scan(&t, lo, hi, 40).unwrap())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(merged, sequential);
    assert_eq!(rows_to_csv(&merged, false), rows_to_csv(&sequential, false));
}

#[test]
fn fk_rows_and_csv() {
    let t = table();
    let rows = fk_scan(&t, 224, 226, 40).unwrap();
    assert!(rows.iter().all(|r| r.status.is_holding()));
    assert_eq!(rows[0].k, Some(20));
    let csv = rows_to_csv(&rows, false);
    assert!(csv.starts_with(&format!("{FK_CSV_HEADER}\n")));
    assert_eq!(csv.lines().count(), 4);
    assert_eq!(csv, rows_to_csv(&fk_scan(&t, 224, 226, 40).unwrap(), false));
    let early = fk_scan(&t, 0, 2, 40).unwrap();
    assert!(matches!(early[0].status, CheckStatus::NotApplicable(_)));
}

#[test]
fn terminal_rows_record_both_readings() {
    let t = table();
    let corrected = terminal_bounds_scan(&t, 100, 300, 3, 40, UpperReading::Corrected).unwrap();
    let literal = terminal_bounds_scan(&t, 100, 300, 3, 40, UpperReading::Literal).unwrap();
    assert_eq!(corrected.len(), 201);
    for (a, b) in corrected.iter().zip(&literal) {
        assert_eq!(a.lower_surd_ok, b.lower_surd_ok);
        assert_eq!(a.g_k_lo, b.g_k_lo);
        assert!(a.upper_surd_ok.is_some() && b.upper_surd_ok.is_some());
    }
    let csv = rows_to_csv(&corrected, true);
    assert!(csv.lines().next().unwrap().ends_with(",k,lower_surd_ok,upper_surd_ok"));
    assert!(terminal_bounds_scan(&t, 100, 110, 2, 40, UpperReading::Corrected).is_err());
}
