mod common;

use std::io::Write;

use num_bigint::BigInt;
use turan::exact::{from_bigint, int, rat};
use turan::sequences::{
    binomial, factorial, gen_binomial_row, gen_geometric_logconcave, gen_hermite, gen_laguerre,
    gen_partition, load_csv, normalize_binomial, normalize_marik, parse_csv, window_to_csv,
};
use turan::{Error, ExactRational, PartitionTable, PolynomialCoeffs};

#[test]
fn partition_numbers_match_enumeration() {
    let p = gen_partition(25);
    for n in 0..=25u32 {
        assert_eq!(p.terms()[n as usize], int(common::enumerate_partitions(n) as i64), "p({n})");
    }
}

#[test]
fn partition_numbers_match_euler_product() {
    let series = common::euler_product(300);
    let table = PartitionTable::new(300);
    for (n, v) in series.iter().enumerate() {
        assert_eq!(table.p(n), &BigInt::from(*v), "p({n})");
    }
}

#[test]
fn partition_landmarks() {
    let t = PartitionTable::shared(1000);
    assert_eq!(t.p(100).to_string(), "190569292");
    assert_eq!(t.p(200).to_string(), "3972999029388");
    assert_eq!(t.p(1000).to_string(), "24061467864032622473692149727991");
    assert_eq!(t.p(1000).to_string().len(), 32);
}

#[test]
fn shared_table_grows_and_agrees() {
    let small = PartitionTable::shared(50);
    let large = PartitionTable::shared(700);
    assert!(large.n_max() >= 700);
    assert_eq!(&small.values()[..=50], &large.values()[..=50]);
    assert!(PartitionTable::shared(10).n_max() >= 700);
}

/// `H_n(x) = n!·Σ_m (−1)^m (2x)^{n−2m} / (m!(n−2m)!)`.
fn hermite_closed_form(n: usize) -> Vec<ExactRational> {
    let mut c = vec![int(0); n + 1];
    for m in 0..=n / 2 {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let num = factorial(n as u64) * BigInt::from(2).pow((n - 2 * m) as u32);
        let den = factorial(m as u64) * factorial((n - 2 * m) as u64);
        c[n - 2 * m] = ExactRational::new(num * sign, den);
    }
    c
}

/// `L_n(x) = Σ_k C(n,k)·(−1)^k·x^k / k!`.
fn laguerre_closed_form(n: usize) -> Vec<ExactRational> {
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            ExactRational::new(binomial(n as u64, k as u64) * sign, factorial(k as u64))
        })
        .collect()
}

#[test]
fn hermite_matches_closed_form() {
    for n in 0..=20 {
        assert_eq!(gen_hermite(n).coeffs(), hermite_closed_form(n).as_slice(), "H_{n}");
    }
    assert_eq!(gen_hermite(3).coeffs(), &[int(0), int(-12), int(0), int(8)]);
}

#[test]
fn laguerre_matches_closed_form() {
    for n in 0..=20 {
        assert_eq!(gen_laguerre(n).coeffs(), laguerre_closed_form(n).as_slice(), "L_{n}");
    }
    assert_eq!(gen_laguerre(2).coeffs(), &[int(1), int(-2), rat(1, 2)]);
}

#[test]
fn binomial_rows_and_geometric_windows() {
    let row = gen_binomial_row(30);
    assert_eq!(row.len(), 31);
    assert_eq!(row.terms()[15], from_bigint("155117520".parse().unwrap()));
    let g = gen_geometric_logconcave(&rat(5, 2), 20).unwrap();
    for k in 1..19 {
        let (a, b, c) = (&g.terms()[k - 1], &g.terms()[k], &g.terms()[k + 1]);
        assert_eq!(b * b, rat(5, 2) * a * c);
    }
    assert!(gen_geometric_logconcave(&int(0), 5).is_err());
}

#[test]
fn normalizations_differ_by_n_factorial() {
    let mut rng = common::rng(3);
    for degree in 1..=10 {
        let (p, _) = common::rational_rooted(&mut rng, degree);
        let nf = from_bigint(factorial(degree as u64));
        let b = normalize_binomial(&p);
        let m = normalize_marik(&p);
        for (x, y) in b.terms().iter().zip(m.terms()) {
            assert_eq!(x * &nf, *y);
        }
    }
    let m = normalize_marik(&PolynomialCoeffs::from_integers(&[0, -12, 0, 8]).unwrap());
    assert_eq!(m.terms(), &[int(0), int(-24), int(0), int(48)]);
}

#[test]
fn polynomial_from_shifts_expands_product() {
    let p = PolynomialCoeffs::from_shifts(&[int(1), int(2), int(3)]);
    assert_eq!(p.coeffs(), &[int(6), int(11), int(6), int(1)]);
    assert!(matches!(PolynomialCoeffs::from_integers(&[0, 0]), Err(Error::Domain(_))));
    assert_eq!(PolynomialCoeffs::from_integers(&[1, 2, 0, 0]).unwrap().degree(), 1);
}

#[test]
fn csv_files_round_trip() {
    let w = gen_partition(40).slice(10, 30).unwrap();
    let mut file = tempfile::Builder::new().suffix(".csv").tempfile().unwrap();
    file.write_all(window_to_csv(&w).as_bytes()).unwrap();
    let back = load_csv(file.path()).unwrap();
    assert_eq!(back.start_index(), 10);
    assert_eq!(back.terms(), w.terms());
}

#[test]
fn csv_accepts_bare_values_and_decimals() {
    let w = parse_csv("value\n1\n0.5\n3/4\n", "t").unwrap();
    assert_eq!(w.terms(), &[int(1), rat(1, 2), rat(3, 4)]);
    assert_eq!(w.start_index(), 0);
}

#[test]
fn csv_errors_carry_line_numbers() {
    match parse_csv("index,value\n0,1\n2,3\n", "t") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
    match parse_csv("1\nabc\n", "t") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_csv("", "t"), Err(Error::Input(_))));
    assert!(matches!(load_csv("/nonexistent/file.csv"), Err(Error::Io(_))));
}
