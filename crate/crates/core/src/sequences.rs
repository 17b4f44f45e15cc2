//! Sequence windows, coefficient arrays and their generators.

use std::path::Path;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, from_bigint, int, parse_rational, ExactRational};

/// A finite run of exact terms; `terms[i]` is `a_{start_index + i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceWindow {
    name: String,
    start_index: usize,
    #[serde(serialize_with = "serialize_terms")]
    terms: Vec<ExactRational>,
}

fn serialize_terms<S: serde::Serializer>(
    terms: &[ExactRational],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(terms.iter().map(format_rational))
}

impl SequenceWindow {
    pub fn new(
        name: impl Into<String>,
        start_index: usize,
        terms: Vec<ExactRational>,
    ) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Input("sequence window must be nonempty".into()));
        }
        Ok(Self {
            name: name.into(),
            start_index,
            terms,
        })
    }

    pub fn from_integers(name: impl Into<String>, start_index: usize, terms: &[i64]) -> Result<Self> {
        Self::new(name, start_index, terms.iter().map(|&t| int(t)).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn start_index(&self) -> usize {
        self.start_index
    }

    /// Absolute index of the last term.
    pub fn end_index(&self) -> usize {
        self.start_index + self.terms.len() - 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ExactRational] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<ExactRational> {
        self.terms
    }

    /// Term at absolute index `k`, or `None` outside the window.
    pub fn get(&self, k: i64) -> Option<&ExactRational> {
        if k < self.start_index as i64 {
            return None;
        }
        self.terms.get((k - self.start_index as i64) as usize)
    }

    /// Term at absolute index `k`, reading anything outside the window as 0.
    pub fn get_or_zero(&self, k: i64) -> ExactRational {
        self.get(k).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn contains(&self, k: i64) -> bool {
        self.get(k).is_some()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Termwise multiple `λ·a_k`.
    pub fn scaled(&self, lambda: &ExactRational) -> Self {
        Self {
            name: self.name.clone(),
            start_index: self.start_index,
            terms: self.terms.iter().map(|t| t * lambda).collect(),
        }
    }

    /// Sub-window covering absolute indices `lo..=hi` intersected with this one.
    pub fn slice(&self, lo: usize, hi: usize) -> Option<Self> {
        let lo = lo.max(self.start_index);
        let hi = hi.min(self.end_index());
        if lo > hi {
            return None;
        }
        let from = lo - self.start_index;
        let to = hi - self.start_index;
        Some(Self {
            name: self.name.clone(),
            start_index: lo,
            terms: self.terms[from..=to].to_vec(),
        })
    }
}

/// Polynomial coefficients in ascending degree; the leading one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialCoeffs {
    coeffs: Vec<ExactRational>,
}

impl PolynomialCoeffs {
    /// Trailing zero coefficients are dropped. The zero polynomial is
    /// rejected with a domain error.
    pub fn new(mut coeffs: Vec<ExactRational>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::domain("zero polynomial"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `Π (x + q_i)`; roots are `−q_i`.
    pub fn from_shifts(shifts: &[ExactRational]) -> Self {
        let mut coeffs = vec![ExactRational::one()];
        for q in shifts {
            let mut next = vec![ExactRational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c * q;
                next[i + 1] += c;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> &ExactRational {
        self.coeffs.last().expect("nonempty by construction")
    }

    pub fn scaled(&self, lambda: &ExactRational) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c * lambda).collect())
    }

    /// The coefficients as a window starting at index 0.
    pub fn to_window(&self, name: impl Into<String>) -> SequenceWindow {
        SequenceWindow {
            name: name.into(),
            start_index: 0,
            terms: self.coeffs.clone(),
        }
    }
}

/// Memo table of `p(0..=n_max)` built with the pentagonal number recurrence.
#[derive(Debug)]
pub struct PartitionTable {
    values: Vec<BigInt>,
}

impl PartitionTable {
    pub fn new(n_max: usize) -> Self {
        let mut values: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        values.push(BigInt::one());
        for n in 1..=n_max {
            let mut acc = BigInt::zero();
            for j in 1usize.. {
                let first = j * (3 * j - 1) / 2;
                if first > n {
                    break;
                }
                let second = j * (3 * j + 1) / 2;
                let mut term = values[n - first].clone();
                if second <= n {
                    term += &values[n - second];
                }
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            values.push(acc);
        }
        Self { values }
    }

    /// Process-wide table covering at least `0..=n_max`, grown on demand.
    pub fn shared(n_max: usize) -> Arc<PartitionTable> {
        static SHARED: Mutex<Option<Arc<PartitionTable>>> = Mutex::new(None);
        let mut slot = SHARED.lock().unwrap_or_else(|e| e.into_inner());
        match slot.as_ref() {
            Some(table) if table.n_max() >= n_max => Arc::clone(table),
            _ => {
                let table = Arc::new(PartitionTable::new(n_max));
                *slot = Some(Arc::clone(&table));
                table
            }
        }
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// `p(n)`; panics past the table end.
    pub fn p(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        usize::try_from(n).ok().and_then(|n| self.values.get(n))
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Window `p(0..=n_max)` with `n_max` clipped to the table.
    pub fn window(&self, n_max: usize) -> SequenceWindow {
        let top = n_max.min(self.n_max());
        SequenceWindow {
            name: "partition".into(),
            start_index: 0,
            terms: self.values[..=top].iter().cloned().map(from_bigint).collect(),
        }
    }
}

/// `p(0..=n_max)` as a window.
pub fn gen_partition(n_max: usize) -> SequenceWindow {
    PartitionTable::shared(n_max).window(n_max)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn gen_binomial_row(n: usize) -> SequenceWindow {
    let terms = (0..=n as u64)
        .map(|k| from_bigint(binomial(n as u64, k)))
        .collect();
    SequenceWindow {
        name: format!("binomial({n})"),
        start_index: 0,
        terms,
    }
}

/// `a_k = r^{−k(k−1)/2}`, so that `a_k² = r·a_{k−1}·a_{k+1}` exactly.
pub fn gen_geometric_logconcave(r: &ExactRational, length: usize) -> Result<SequenceWindow> {
    if !r.is_positive() {
        return Err(Error::precondition("geometric ratio r must be positive"));
    }
    if length == 0 {
        return Err(Error::precondition("length must be at least 1"));
    }
    let inv = r.recip();
    let mut terms = Vec::with_capacity(length);
    let mut term = ExactRational::one();
    let mut step = ExactRational::one();
    for _ in 0..length {
        terms.push(term.clone());
        term = &term * &step;
        step = &step * &inv;
    }
    Ok(SequenceWindow {
        name: format!("geometric({})", format_rational(r)),
        start_index: 0,
        terms,
    })
}

/// Physicists' Hermite polynomial `H_n`.
pub fn gen_hermite(n: usize) -> PolynomialCoeffs {
    let mut prev = vec![int(1)];
    if n == 0 {
        return PolynomialCoeffs { coeffs: prev };
    }
    let mut cur = vec![int(0), int(2)];
    for m in 1..n {
        // H_{m+1} = 2x·H_m − 2m·H_{m−1}
        let mut next = vec![ExactRational::zero(); m + 2];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * int(2);
        }
        let factor = int(2 * m as i64);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * &factor;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    PolynomialCoeffs { coeffs: cur }
}

/// Laguerre polynomial `L_n`.
pub fn gen_laguerre(n: usize) -> PolynomialCoeffs {
    let mut prev = vec![int(1)];
    if n == 0 {
        return PolynomialCoeffs { coeffs: prev };
    }
    let mut cur = vec![int(1), int(-1)];
    for m in 1..n {
        // (m+1)·L_{m+1} = (2m+1−x)·L_m − m·L_{m−1}
        let mut next = vec![ExactRational::zero(); m + 2];
        let lead = int(2 * m as i64 + 1);
        for (i, c) in cur.iter().enumerate() {
            next[i] += c * &lead;
            next[i + 1] -= c;
        }
        let back = int(m as i64);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c * &back;
        }
        let denom = int(m as i64 + 1);
        for c in next.iter_mut() {
            *c /= &denom;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    PolynomialCoeffs { coeffs: cur }
}

/// `a_k = c_k / C(n, k)` for `f(x) = Σ C(n,k)·a_k·x^k`.
pub fn normalize_binomial(p: &PolynomialCoeffs) -> SequenceWindow {
    let n = p.degree() as u64;
    let terms = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c / from_bigint(binomial(n, k as u64)))
        .collect();
    SequenceWindow {
        name: "binomial-normalized".into(),
        start_index: 0,
        terms,
    }
}

/// `a_k = c_k·k!·(n−k)!` for `f(x) = Σ a_k·x^k / (k!(n−k)!)`.
pub fn normalize_marik(p: &PolynomialCoeffs) -> SequenceWindow {
    let n = p.degree() as u64;
    let terms = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * from_bigint(factorial(k as u64) * factorial(n - k as u64)))
        .collect();
    SequenceWindow {
        name: "factorial-normalized".into(),
        start_index: 0,
        terms,
    }
}

/// Reads a sequence from CSV. Rows are `index,value` or a bare `value`; an
/// optional first line of non-numeric column names is skipped. When indices
/// are present they must be consecutive, and the first one sets the window
/// start.
pub fn load_csv(path: impl AsRef<Path>) -> Result<SequenceWindow> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    parse_csv(&text, name)
}

pub fn parse_csv(text: &str, name: impl Into<String>) -> Result<SequenceWindow> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut start: Option<usize> = None;
    let mut terms: Vec<ExactRational> = Vec::new();
    for (row_no, record) in reader.records().enumerate() {
        let line = row_no + 1;
        let record = record.map_err(|e| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        let fields: Vec<&str> = record.iter().collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        if row_no == 0 && is_header(&fields) {
            continue;
        }
        let parse = |s: &str| parse_rational(s).map_err(|message| Error::Parse { line, message });
        match fields.as_slice() {
            [value] => {
                start.get_or_insert(0);
                terms.push(parse(value)?);
            }
            [index, value] => {
                let idx: usize = index.parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid index {index:?}"),
                })?;
                let expected = start.map(|s| s + terms.len());
                match expected {
                    None => start = Some(idx),
                    Some(e) if e == idx => {}
                    Some(e) => {
                        return Err(Error::Parse {
                            line,
                            message: format!("expected index {e}, found {idx}"),
                        })
                    }
                }
                terms.push(parse(value)?);
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 1 or 2 fields, found {}", fields.len()),
                })
            }
        }
    }
    if terms.is_empty() {
        return Err(Error::Input("CSV input contains no terms".into()));
    }
    SequenceWindow::new(name, start.unwrap_or(0), terms)
}

fn is_header(fields: &[&str]) -> bool {
    fields.iter().all(|f| {
        !f.is_empty() && f.chars().all(|c| c.is_ascii_alphabetic() || c == '_' || c == ' ')
    })
}

/// CSV rendering `index,value` used by the `gen` command.
pub fn window_to_csv(window: &SequenceWindow) -> String {
    let mut out = String::from("index,value\n");
    for (i, t) in window.terms().iter().enumerate() {
        out.push_str(&format!("{},{}\n", window.start_index() + i, format_rational(t)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ints(w: &SequenceWindow) -> Vec<ExactRational> {
        w.terms().to_vec()
    }

    fn from(v: &[i64]) -> Vec<ExactRational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn partition_small_values() {
        assert_eq!(ints(&gen_partition(5)), from(&[1, 1, 2, 3, 5, 7]));
        assert_eq!(ints(&gen_partition(0)), from(&[1]));
        assert_eq!(PartitionTable::new(10).p(10), &BigInt::from(42));
        assert_eq!(
            PartitionTable::new(100).p(100).to_string(),
            "190569292"
        );
    }

    #[test]
    fn shared_table_grows() {
        let small = PartitionTable::shared(3);
        assert!(small.n_max() >= 3);
        let big = PartitionTable::shared(50);
        assert!(big.n_max() >= 50);
        assert_eq!(big.p(3), &BigInt::from(3));
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(ints(&gen_binomial_row(4)), from(&[1, 4, 6, 4, 1]));
        assert_eq!(ints(&gen_binomial_row(0)), from(&[1]));
        assert_eq!(ints(&gen_binomial_row(2)), from(&[1, 2, 1]));
    }

    #[test]
    fn geometric_examples() {
        let w = gen_geometric_logconcave(&int(2), 4).unwrap();
        assert_eq!(w.terms(), &[int(1), int(1), rat(1, 2), rat(1, 8)]);
        assert_eq!(
            w.terms()[1].clone() * &w.terms()[1],
            int(2) * &w.terms()[0] * &w.terms()[2]
        );
        let ones = gen_geometric_logconcave(&int(1), 5).unwrap();
        assert!(ones.terms().iter().all(|t| *t == int(1)));
        let w = gen_geometric_logconcave(&int(3), 3).unwrap();
        assert_eq!(w.terms(), &[int(1), int(1), rat(1, 3)]);
        assert!(gen_geometric_logconcave(&int(0), 3).is_err());
        assert!(gen_geometric_logconcave(&int(2), 0).is_err());
    }

    #[test]
    fn orthogonal_polynomials() {
        assert_eq!(gen_hermite(3).coeffs(), from(&[0, -12, 0, 8]).as_slice());
        assert_eq!(gen_hermite(0).coeffs(), from(&[1]).as_slice());
        assert_eq!(gen_hermite(1).coeffs(), from(&[0, 2]).as_slice());
        assert_eq!(gen_laguerre(2).coeffs(), &[int(1), int(-2), rat(1, 2)]);
        assert_eq!(gen_laguerre(1).coeffs(), from(&[1, -1]).as_slice());
    }

    #[test]
    fn normalizations() {
        let quartic = PolynomialCoeffs::from_integers(&[1, 4, 6, 4, 1]).unwrap();
        assert_eq!(ints(&normalize_binomial(&quartic)), from(&[1, 1, 1, 1, 1]));
        let h3 = gen_hermite(3);
        assert_eq!(ints(&normalize_binomial(&h3)), from(&[0, -4, 0, 8]));
        assert_eq!(ints(&normalize_marik(&h3)), from(&[0, -24, 0, 48]));
        let one = PolynomialCoeffs::from_integers(&[1]).unwrap();
        assert_eq!(ints(&normalize_binomial(&one)), from(&[1]));
        assert_eq!(ints(&normalize_marik(&one)), from(&[1]));
        let sq = PolynomialCoeffs::from_integers(&[1, 2, 1]).unwrap();
        assert_eq!(ints(&normalize_marik(&sq)), from(&[2, 2, 2]));
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            PolynomialCoeffs::from_integers(&[0, 0]),
            Err(Error::Domain(_))
        ));
        assert_eq!(PolynomialCoeffs::from_integers(&[1, 2, 0]).unwrap().degree(), 1);
    }

    #[test]
    fn from_shifts_expands_products() {
        let p = PolynomialCoeffs::from_shifts(&[int(1), int(2)]);
        assert_eq!(p.coeffs(), from(&[2, 3, 1]).as_slice());
    }

    #[test]
    fn csv_with_header_and_indices() {
        let w = parse_csv("n,a\n0,1\n1,1\n2,2\n", "p").unwrap();
        assert_eq!(w.start_index(), 0);
        assert_eq!(ints(&w), from(&[1, 1, 2]));

        let w = parse_csv("index,value\n5,1/3\n6,0.25\n", "q").unwrap();
        assert_eq!(w.start_index(), 5);
        assert_eq!(w.terms(), &[rat(1, 3), rat(1, 4)]);
    }

    #[test]
    fn csv_bare_values() {
        let w = parse_csv("1/3\n2\n", "q").unwrap();
        assert_eq!(w.start_index(), 0);
        assert_eq!(w.terms(), &[rat(1, 3), int(2)]);
    }

    #[test]
    fn csv_errors_name_the_line() {
        match parse_csv("index,value\n0,1\n1,abc\n", "bad") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_csv("1\nabc\n", "bad") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_csv("", "empty"), Err(Error::Input(_))));
        assert!(matches!(parse_csv("index,value\n", "empty"), Err(Error::Input(_))));
        assert!(matches!(
            parse_csv("0,1\n2,1\n", "gap"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn window_indexing() {
        let w = SequenceWindow::from_integers("w", 3, &[5, 6, 7]).unwrap();
        assert_eq!(w.get(3), Some(&int(5)));
        assert_eq!(w.get(2), None);
        assert_eq!(w.get(6), None);
        assert_eq!(w.get_or_zero(6), int(0));
        assert_eq!(w.end_index(), 5);
        assert_eq!(w.slice(4, 10).unwrap().terms(), &[int(6), int(7)]);
        assert!(SequenceWindow::new("e", 0, vec![]).is_err());
    }
}
