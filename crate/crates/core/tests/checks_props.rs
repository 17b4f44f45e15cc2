mod common;

use num_traits::{Signed, Zero};
use turan::checks::{
    criterion_r_check, hot_report, ineq1_report, ineq2_check, ineq2_report, is_k_log_concave,
    is_k_log_concave_interior, is_log_concave, l_operator, reciprocal_bound_search, sandwich_report,
    window_from_c_values, CheckStatus,
};
use turan::exact::{int, rat};
use turan::{ExactRational, SequenceWindow};

fn turan_at(w: &SequenceWindow, k: usize) -> ExactRational {
    let t = w.terms();
    &t[k] * &t[k] - &t[k - 1] * &t[k + 1]
}

#[test]
fn right_ratio_bound_is_convexity_of_step_ratios() {
    let mut rng = common::rng(0x32);
    for _ in 0..300 {
        let w = common::strictly_log_concave(&mut rng, 8);
        let t = w.terms();
        let r: Vec<ExactRational> = (0..t.len() - 1).map(|i| &t[i + 1] / &t[i]).collect();
        for k in 1..t.len() - 2 {
            let rec = ineq2_check(&w, k as i64);
            let right_holds = rec.witness_rational("ratio").unwrap() <= rec.witness_rational("right_bound").unwrap();
            let convex = &r[k - 1] + &r[k + 1] >= &r[k] * int(2);
            assert_eq!(right_holds, convex, "k={k}");
        }
    }
}

#[test]
fn ratio_witnesses_match_direct_quotients() {
    let mut rng = common::rng(0x33);
    for _ in 0..200 {
        let w = common::strictly_log_concave(&mut rng, 7);
        let t = w.terms();
        for k in 1..t.len() - 2 {
            let rec = ineq2_check(&w, k as i64);
            assert_eq!(rec.witness_rational("ratio").unwrap(), &(turan_at(&w, k + 1) / turan_at(&w, k)));
            assert_eq!(rec.witness_rational("left_bound").unwrap(), &(&t[k + 2] / &t[k]));
            assert_eq!(rec.witness_rational("right_bound").unwrap(), &(&t[k + 1] / &t[k - 1]));
        }
    }
}

#[test]
fn ratio_bounded_windows_satisfy_the_sandwich() {
    let mut rng = common::rng(0x37);
    let mut seen = 0;
    while seen < 300 {
        let w = common::ratio_bounded(&mut rng, 9);
        if !ineq2_report(&w, None).all_holding() {
            continue;
        }
        seen += 1;
        assert!(sandwich_report(&w, None).all_holding(), "{:?}", w.terms());
        assert!(ineq1_report(&w, None).all_holding());
    }
}

#[test]
fn ineq1_agrees_with_hot_on_log_concave_windows() {
    let mut rng = common::rng(0x21);
    for _ in 0..300 {
        let w = common::strictly_log_concave(&mut rng, 8);
        let a = ineq1_report(&w, None);
        let b = hot_report(&w, None);
        for (k, status) in a.statuses() {
            if status.is_applicable() {
                assert_eq!(status.is_holding(), b.status_at(k).unwrap().is_holding(), "k={k}");
            }
        }
    }
}

#[test]
fn l_operator_of_log_concave_window_is_nonnegative() {
    let mut rng = common::rng(0x11);
    for _ in 0..200 {
        let w = common::strictly_log_concave(&mut rng, 10);
        let image = l_operator(&w).unwrap();
        assert!(image.terms().iter().all(|b| !b.is_negative()));
        assert!(image.terms().iter().skip(1).all(|b| b.is_positive()));
    }
}

#[test]
fn criterion_with_unit_ratio_is_log_concavity() {
    let mut rng = common::rng(0x10);
    for _ in 0..200 {
        let w = common::mixed_window(&mut rng, 9);
        let a = criterion_r_check(&w, &int(1), None).unwrap();
        for (k, status) in a.statuses() {
            let d = turan_at(&w, k as usize);
            assert_eq!(status.is_holding(), !d.is_negative(), "k={k}");
            assert_eq!(status == CheckStatus::HoldsStrict, d.is_positive());
        }
    }
    assert!(criterion_r_check(&SequenceWindow::new("t", 0, vec![int(1), int(2), int(3)]).unwrap(), &int(0), None).is_err());
}

#[test]
fn anchored_level_two_needs_small_leading_ratio() {
    // c_0 = 9/10 satisfies the ratio bounds, but b_0 = a_0² makes
    // b_1² − b_0 b_2 negative at k = 1.
    let cs = [rat(9, 10), rat(9, 10), rat(9, 10), rat(9, 10)];
    let w = window_from_c_values("anchored", (int(1), int(1)), &cs).unwrap();
    assert!(ineq2_report(&w, None).all_holding());
    assert!(is_k_log_concave_interior(&w, 2, None).all_holding());
    let anchored = is_k_log_concave(&w, 2, None).unwrap();
    assert_eq!(anchored.status_at(1), Some(CheckStatus::Fails));

    let small = window_from_c_values("anchored", (int(1), int(1)), &[rat(1, 2), rat(1, 2), rat(1, 2)]).unwrap();
    assert!(is_k_log_concave(&small, 2, None).unwrap().all_holding());
}

#[test]
fn log_concave_report_matches_direct_levels() {
    let mut rng = common::rng(0x12);
    for _ in 0..100 {
        let w = common::mixed_window(&mut rng, 8);
        let rep = is_log_concave(&w, Some((1, 6))).unwrap();
        for k in 1..=6 {
            let expected = !w.terms()[k as usize].is_negative() && !turan_at(&w, k as usize).is_negative();
            assert_eq!(rep.status_at(k).unwrap().is_holding(), expected);
        }
    }
}

#[test]
fn reciprocal_search_finds_and_reports_counterexamples() {
    let out = reciprocal_bound_search(40, 2000, 7);
    assert!(out.examined == 39 * 39 + 2000);
    assert!(out.applicable > 0 && out.applicable <= out.examined);
    assert_eq!(out.applicable, out.holding + out.counterexamples.len());
    for (prev, cur) in &out.counterexamples {
        assert!(!prev.is_zero() && !cur.is_zero());
    }
    let again = reciprocal_bound_search(40, 2000, 7);
    assert_eq!(again.counterexamples, out.counterexamples);
}
