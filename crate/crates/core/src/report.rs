//! JSON and CSV encodings of [`CheckReport`], with parsers for both.

use indexmap::IndexMap;
use serde_json::{json, Map, Value};

use crate::checks::{CheckRecord, CheckReport, CheckStatus, NaReason, Witness};
use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, SurdValue};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Csv,
    #[default]
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Input(format!("unknown format `{other}` (csv|json)"))),
        }
    }
}

pub fn render(report: &CheckReport, format: Format) -> String {
    match format {
        Format::Csv => to_csv(report),
        Format::Json => to_json(report),
    }
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Rational(q) => Value::String(format_rational(q)),
        Witness::Surd(s) => json!({
            "alpha": format_rational(s.alpha()),
            "beta": format_rational(s.beta()),
            "d": format_rational(s.radicand()),
        }),
    }
}

fn record_json(r: &CheckRecord) -> Value {
    let mut m = Map::new();
    m.insert("k".into(), json!(r.k));
    m.insert("status".into(), json!(r.status.label()));
    if let Some(reason) = r.status.reason() {
        m.insert("reason".into(), json!(reason.as_str()));
    }
    let witnesses: Map<String, Value> = r
        .witnesses
        .iter()
        .map(|(k, w)| (k.clone(), witness_json(w)))
        .collect();
    m.insert("witnesses".into(), Value::Object(witnesses));
    Value::Object(m)
}

pub fn report_json(report: &CheckReport) -> Value {
    json!({
        "sequence": report.sequence,
        "check": report.check,
        "range": [report.range.0, report.range.1],
        "records": report.records.iter().map(record_json).collect::<Vec<_>>(),
        "summary": report.summary,
        "first_fail_index": report.first_fail_index,
    })
}

pub fn to_json(report: &CheckReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(report)).expect("plain JSON values");
    s.push('\n');
    s
}

fn bad(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 0,
        message: message.into(),
    }
}

fn parse_status(label: &str, reason: Option<&str>) -> Result<CheckStatus> {
    Ok(match label {
        "holds" => CheckStatus::Holds,
        "holds_strict" => CheckStatus::HoldsStrict,
        "fails" => CheckStatus::Fails,
        "not_applicable" => {
            let reason = reason.ok_or_else(|| bad("not_applicable record without a reason"))?;
            CheckStatus::NotApplicable(
                NaReason::parse(reason).ok_or_else(|| bad(format!("unknown reason `{reason}`")))?,
            )
        }
        other => return Err(bad(format!("unknown status `{other}`"))),
    })
}

fn rational_field(v: &Value) -> Result<crate::exact::ExactRational> {
    let s = v.as_str().ok_or_else(|| bad("expected a p/q string"))?;
    parse_rational(s).map_err(bad)
}

fn witness_from_json(v: &Value) -> Result<Witness> {
    match v {
        Value::String(_) => Ok(Witness::Rational(rational_field(v)?)),
        Value::Object(m) => {
            let get = |k: &str| m.get(k).ok_or_else(|| bad(format!("surd without `{k}`")));
            let s = SurdValue::new(
                rational_field(get("alpha")?)?,
                rational_field(get("beta")?)?,
                rational_field(get("d")?)?,
            )?;
            Ok(Witness::Surd(s))
        }
        _ => Err(bad("witness must be a string or a surd object")),
    }
}

pub fn from_json(text: &str) -> Result<CheckReport> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let str_field = |k: &str| {
        v.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| bad(format!("missing `{k}`")))
    };
    let range = v
        .get("range")
        .and_then(Value::as_array)
        .filter(|a| a.len() == 2)
        .and_then(|a| Some((a[0].as_i64()?, a[1].as_i64()?)))
        .ok_or_else(|| bad("`range` must be [lo, hi]"))?;
    let mut records = Vec::new();
    for r in v
        .get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `records`"))?
    {
        let k = r.get("k").and_then(Value::as_i64).ok_or_else(|| bad("record without `k`"))?;
        let status = parse_status(
            r.get("status").and_then(Value::as_str).unwrap_or_default(),
            r.get("reason").and_then(Value::as_str),
        )?;
        let mut rec = CheckRecord::new(k, status);
        if let Some(ws) = r.get("witnesses").and_then(Value::as_object) {
            for (name, w) in ws {
                rec.witnesses.insert(name.clone(), witness_from_json(w)?);
            }
        }
        records.push(rec);
    }
    Ok(CheckReport::new(str_field("sequence")?, str_field("check")?, range, records))
}

pub const CSV_HEADER: [&str; 4] = ["k", "status", "reason", "witnesses"];

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Rational(q) => format_rational(q),
        Witness::Surd(s) => s.to_string(),
    }
}

/// One row per record; witnesses are `name=value` joined by `;`.
pub fn to_csv(report: &CheckReport) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory writer");
    for r in &report.records {
        let witnesses: Vec<String> = r
            .witnesses
            .iter()
            .map(|(k, v)| format!("{k}={}", witness_text(v)))
            .collect();
        w.write_record([
            r.k.to_string(),
            r.status.label().to_string(),
            r.status.reason().map(|x| x.as_str().to_string()).unwrap_or_default(),
            witnesses.join(";"),
        ])
        .expect("in-memory writer");
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("UTF-8 fields")
}

/// Parses [`to_csv`] output back into records.
pub fn records_from_csv(text: &str) -> Result<Vec<CheckRecord>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i + 2;
        let err = |message: String| Error::Parse { line, message };
        let row = row.map_err(|e| err(e.to_string()))?;
        if row.len() != 4 {
            return Err(err(format!("expected 4 fields, got {}", row.len())));
        }
        let k: i64 = row[0].parse().map_err(|_| err(format!("bad index `{}`", &row[0])))?;
        let reason = (!row[2].is_empty()).then(|| &row[2]);
        let status = parse_status(&row[1], reason).map_err(|e| err(e.to_string()))?;
        let mut witnesses = IndexMap::new();
        for item in row[3].split(';').filter(|s| !s.is_empty()) {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| err(format!("bad witness `{item}`")))?;
            let w = if value.contains("sqrt(") {
                Witness::Surd(value.parse().map_err(err)?)
            } else {
                Witness::Rational(parse_rational(value).map_err(err)?)
            };
            witnesses.insert(name.to_string(), w);
        }
        out.push(CheckRecord { k, status, witnesses });
    }
    Ok(out)
}
