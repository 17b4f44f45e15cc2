//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turan::checks::window_from_c_values;
use turan::exact::{rat, ExactRational};
use turan::{PolynomialCoeffs, SequenceWindow};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the grid `{i/den : lo·den ≤ i ≤ hi·den}` for a random `den`.
pub fn grid_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den_max: i64) -> ExactRational {
    let den = rng.gen_range(1..=den_max);
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// Strictly inside `(0, 1)`.
pub fn open_unit(rng: &mut ChaCha8Rng, den_max: i64) -> ExactRational {
    let den = rng.gen_range(2..=den_max);
    rat(rng.gen_range(1..den), den)
}

fn positive_head(rng: &mut ChaCha8Rng) -> (ExactRational, ExactRational) {
    let a = rat(rng.gen_range(1..=50), rng.gen_range(1..=9));
    let b = rat(rng.gen_range(1..=50), rng.gen_range(1..=9));
    (a, b)
}

/// Positive, strictly log-concave window of `len ≥ 3` terms: every
/// `c_k = a_k a_{k+2}/a_{k+1}²` lies in `(0, 1)`.
pub fn strictly_log_concave(rng: &mut ChaCha8Rng, len: usize) -> SequenceWindow {
    let cs: Vec<_> = (0..len - 2).map(|_| open_unit(rng, 1000)).collect();
    window_from_c_values("random-lc", positive_head(rng), &cs).unwrap()
}

/// Rational in `[lo, hi]` near `lo + t·(hi − lo)`, snapped to a grid of
/// denominator `10⁴` when a grid point lies in the interval.
fn pick_between(rng: &mut ChaCha8Rng, lo: &ExactRational, hi: &ExactRational) -> ExactRational {
    let t = rat(rng.gen_range(0..=1000), 1000);
    let target = lo + (hi - lo) * t;
    let grid = BigInt::from(10_000);
    let snapped = ExactRational::new((&target * ExactRational::from_integer(grid.clone())).floor().to_integer(), grid);
    if &snapped >= lo && &snapped <= hi {
        snapped
    } else {
        target
    }
}

/// Positive log-concave window whose `c` values satisfy
/// `max(0, (2c_{k−1} − 1)/c_{k−1}) ≤ c_k ≤ 1/(2 − c_{k−1})`, the region where
/// `a_{k+2}/a_k ≤ R_k ≤ a_{k+1}/a_{k−1}` holds.
pub fn ratio_bounded(rng: &mut ChaCha8Rng, len: usize) -> SequenceWindow {
    let one = ExactRational::one();
    let mut cs = vec![open_unit(rng, 100)];
    while cs.len() < len - 2 {
        let c = cs.last().unwrap().clone();
        let lo = (rat(2, 1) * &c - &one) / &c;
        let lo = if lo.is_negative() { ExactRational::zero() } else { lo };
        let hi = &one / (rat(2, 1) - &c);
        let next = pick_between(rng, &lo, &hi);
        cs.push(if next.is_zero() { hi.min(rat(1, 10_000)) } else { next });
    }
    window_from_c_values("random-ratio-bounded", positive_head(rng), &cs).unwrap()
}

/// Mixed-sign window with occasional zeros, for exercising not-applicable paths.
pub fn mixed_window(rng: &mut ChaCha8Rng, len: usize) -> SequenceWindow {
    let terms = (0..len)
        .map(|_| {
            if rng.gen_bool(0.1) {
                ExactRational::zero()
            } else {
                grid_rational(rng, -3, 40, 7)
            }
        })
        .collect();
    SequenceWindow::new("random-mixed", 0, terms).unwrap()
}

/// `Π (x + q_i)` for `degree` random rational shifts in `[-6, 6]`; repeats
/// are drawn on purpose now and then.
pub fn rational_rooted(rng: &mut ChaCha8Rng, degree: usize) -> (PolynomialCoeffs, Vec<ExactRational>) {
    let mut shifts: Vec<ExactRational> = Vec::with_capacity(degree);
    for _ in 0..degree {
        if !shifts.is_empty() && rng.gen_bool(0.15) {
            let i = rng.gen_range(0..shifts.len());
            shifts.push(shifts[i].clone());
        } else {
            shifts.push(grid_rational(rng, -6, 6, 5));
        }
    }
    (PolynomialCoeffs::from_shifts(&shifts), shifts)
}

/// Counts partitions of `n` by walking every nonincreasing list of parts.
pub fn enumerate_partitions(n: u32) -> u64 {
    fn walk(remaining: u32, max_part: u32) -> u64 {
        if remaining == 0 {
            return 1;
        }
        (1..=max_part.min(remaining)).map(|part| walk(remaining - part, part)).sum()
    }
    walk(n, n)
}

/// Coefficients of `Π_{m ≥ 1} 1/(1 − x^m)` through `x^n_max`, by expanding
/// each geometric factor in turn.
pub fn euler_product(n_max: usize) -> Vec<u128> {
    let mut series = vec![0u128; n_max + 1];
    series[0] = 1;
    for m in 1..=n_max {
        for i in m..=n_max {
            series[i] += series[i - m];
        }
    }
    series
}
