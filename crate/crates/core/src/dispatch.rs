//! Name-based access to sequences and checks, shared by the CLI and the C ABI.

use std::str::FromStr;

use crate::checks::{
    convexity_check, criterion_r_check, hot_report, ineq1_report, ineq2_report, is_k_log_concave,
    is_k_log_concave_interior, is_log_concave, l_increasing_check, ratio_down_convexity_check,
    ratio_up_convexity_check, sandwich_report, CheckReport,
};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, ExactRational};
use crate::realroots::{branden_check, marik_check, marik_check_with_boundary};
use crate::sequences::{
    gen_binomial_row, gen_geometric_logconcave, gen_hermite, gen_laguerre, load_csv,
    PartitionTable, PolynomialCoeffs, SequenceWindow,
};

pub const CHECK_NAMES: [&str; 14] = [
    "logconcave",
    "klogconcave",
    "hot",
    "ineq1",
    "ineq2",
    "criterion",
    "convex",
    "ratio-up",
    "ratio-down",
    "l-increasing",
    "sandwich",
    "marik",
    "marik-boundary",
    "branden",
];

/// Window size used for `partition` when no range is given.
pub const DEFAULT_PARTITION_TOP: usize = 100;

/// `partition`, `binomial:N`, `geometric:R:LEN`, `hermite:N`, `laguerre:N`,
/// `terms:a,b,c` or `csv:PATH`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    Partition,
    Binomial(usize),
    Geometric(ExactRational, usize),
    Hermite(usize),
    Laguerre(usize),
    Terms(Vec<ExactRational>),
    Csv(String),
}

fn usize_arg(what: &str, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Input(format!("{what} must be a nonnegative integer, got `{s}`")))
}

pub fn rational_arg(what: &str, s: &str) -> Result<ExactRational> {
    parse_rational(s).map_err(|e| Error::Input(format!("{what}: {e}")))
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let need = |what: &str| {
            rest.ok_or_else(|| Error::Input(format!("sequence `{name}` needs `{name}:{what}`")))
        };
        Ok(match name {
            "partition" => SequenceSpec::Partition,
            "binomial" => SequenceSpec::Binomial(usize_arg("binomial row", need("N")?)?),
            "hermite" => SequenceSpec::Hermite(usize_arg("hermite degree", need("N")?)?),
            "laguerre" => SequenceSpec::Laguerre(usize_arg("laguerre degree", need("N")?)?),
            "geometric" => {
                let (r, len) = need("R:LEN")?
                    .rsplit_once(':')
                    .ok_or_else(|| Error::Input("geometric needs `geometric:R:LEN`".into()))?;
                SequenceSpec::Geometric(rational_arg("geometric ratio", r)?, usize_arg("length", len)?)
            }
            "terms" => SequenceSpec::Terms(
                need("a,b,...")?
                    .split(',')
                    .map(|t| rational_arg("term", t))
                    .collect::<Result<_>>()?,
            ),
            "csv" => SequenceSpec::Csv(need("PATH")?.to_string()),
            other => return Err(Error::Input(format!("unknown sequence `{other}`"))),
        })
    }
}

impl SequenceSpec {
    /// Builds the window. `partition_top` is the last index for `partition`.
    pub fn materialize(&self, partition_top: usize) -> Result<SequenceWindow> {
        Ok(match self {
            SequenceSpec::Partition => PartitionTable::shared(partition_top).window(partition_top),
            SequenceSpec::Binomial(n) => gen_binomial_row(*n),
            SequenceSpec::Geometric(r, len) => gen_geometric_logconcave(r, *len)?,
            SequenceSpec::Hermite(n) => gen_hermite(*n).to_window(format!("hermite-{n}")),
            SequenceSpec::Laguerre(n) => gen_laguerre(*n).to_window(format!("laguerre-{n}")),
            SequenceSpec::Terms(t) => SequenceWindow::new("terms", 0, t.clone())?,
            SequenceSpec::Csv(path) => load_csv(path)?,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct CheckParams {
    pub range: Option<(i64, i64)>,
    /// Level for `klogconcave` (default 2).
    pub j: Option<usize>,
    /// Ratio for `criterion`.
    pub r: Option<ExactRational>,
    /// Depth for `branden` (default 3).
    pub depth: Option<usize>,
    /// `klogconcave`/`logconcave` without the `b_0 = a_0²` anchor and the
    /// zero continuation.
    pub interior: bool,
}

impl CheckParams {
    fn level(&self, name: &str) -> usize {
        match name {
            "logconcave" => 1,
            "klogconcave" => self.j.unwrap_or(2),
            _ => 0,
        }
    }

    /// Last partition index a check over `range` reads.
    pub fn partition_top(&self, name: &str) -> usize {
        match self.range {
            Some((_, hi)) => hi.max(0) as usize + self.level(name) + 3,
            None => DEFAULT_PARTITION_TOP,
        }
    }
}

pub fn is_check_name(name: &str) -> bool {
    CHECK_NAMES.contains(&name)
}

fn as_polynomial(s: &SequenceWindow) -> Result<PolynomialCoeffs> {
    if s.start_index() != 0 {
        return Err(Error::precondition(
            "polynomial checks need coefficients starting at degree 0",
        ));
    }
    PolynomialCoeffs::new(s.terms().to_vec())
}

pub fn run_check(s: &SequenceWindow, name: &str, params: &CheckParams) -> Result<CheckReport> {
    let range = params.range;
    let mut report = match name {
        "logconcave" | "klogconcave" => {
            let j = params.level(name);
            if params.interior || s.start_index() != 0 {
                is_k_log_concave_interior(s, j, range)
            } else if j == 1 {
                is_log_concave(s, range)?
            } else {
                is_k_log_concave(s, j, range)?
            }
        }
        "hot" => hot_report(s, range),
        "ineq1" => ineq1_report(s, range),
        "ineq2" => ineq2_report(s, range),
        "criterion" => {
            let r = params
                .r
                .as_ref()
                .ok_or_else(|| Error::Input("criterion needs --r".into()))?;
            criterion_r_check(s, r, range)?
        }
        "convex" => convexity_check(s, range)?,
        "ratio-up" => ratio_up_convexity_check(s, range),
        "ratio-down" => ratio_down_convexity_check(s, range),
        "l-increasing" => l_increasing_check(s, range)?,
        "sandwich" => sandwich_report(s, range),
        "marik" => marik_check(&as_polynomial(s)?)?,
        "marik-boundary" => marik_check_with_boundary(&as_polynomial(s)?)?,
        "branden" => branden_check(&as_polynomial(s)?, params.depth.unwrap_or(3))?,
        other => return Err(Error::Input(format!("unknown check `{other}`"))),
    };
    report.sequence = s.name().to_string();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn parses_specs() {
        assert_eq!("partition".parse::<SequenceSpec>().unwrap(), SequenceSpec::Partition);
        assert_eq!("binomial:7".parse::<SequenceSpec>().unwrap(), SequenceSpec::Binomial(7));
        assert_eq!(
            "geometric:5/2:20".parse::<SequenceSpec>().unwrap(),
            SequenceSpec::Geometric(rat(5, 2), 20)
        );
        assert_eq!(
            "terms:1,3/2,2".parse::<SequenceSpec>().unwrap(),
            SequenceSpec::Terms(vec![int(1), rat(3, 2), int(2)])
        );
        for bad in ["binomial", "binomial:x", "fibonacci", "geometric:2", "terms:1,,2"] {
            assert!(bad.parse::<SequenceSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn every_name_dispatches() {
        let s = SequenceSpec::Binomial(8).materialize(0).unwrap();
        let params = CheckParams {
            r: Some(int(1)),
            ..Default::default()
        };
        for name in CHECK_NAMES {
            let report = run_check(&s, name, &params).unwrap();
            assert_eq!(report.sequence, s.name());
            if !["convex", "ratio-up", "ratio-down", "l-increasing", "marik-boundary"].contains(&name) {
                assert!(report.passed(), "{name}");
            }
        }
        assert!(run_check(&s, "nope", &params).is_err());
        assert!(run_check(&s, "criterion", &CheckParams::default()).is_err());
    }

    #[test]
    fn partition_top_covers_range() {
        let p = CheckParams {
            range: Some((95, 600)),
            ..Default::default()
        };
        assert_eq!(p.partition_top("hot"), 603);
        assert_eq!(p.partition_top("klogconcave"), 605);
    }
}
