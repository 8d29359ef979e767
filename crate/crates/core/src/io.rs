//! Serialization: a line-oriented text format for inequality systems and
//! versioned JSON documents for everything else.
//!
//! Text format, one item per line:
//!
//! ```text
//! system cn1 n=2
//! lower 0 1
//! upper 2 3
//! under-a 1 -1 0 >= 0
//! ```
//!
//! Each row line is `<family> <coef_y> <coef_x_1> ... <coef_x_n> >= <rhs>`.
//! Blank lines and lines starting with `#` are ignored by the parser. Writing
//! a parsed system reproduces the input byte for byte when it came from
//! [`write_system_text`].

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hull::{Family, InequalitySystem, LinearInequality, SystemKind};
use crate::rational::Rational;

pub const SCHEMA_VERSION: u32 = 1;

pub fn write_system_text(sys: &InequalitySystem) -> String {
    let join = |xs: &[Rational]| {
        xs.iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    writeln!(out, "system {} n={}", sys.kind, sys.n()).unwrap();
    writeln!(out, "lower {}", join(&sys.lower)).unwrap();
    writeln!(out, "upper {}", join(&sys.upper)).unwrap();
    for row in &sys.rows {
        writeln!(
            out,
            "{} {} {} >= {}",
            row.family,
            row.coef_y,
            join(&row.coef_x),
            row.rhs
        )
        .unwrap();
    }
    out
}

fn parse_error(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

fn parse_rationals(line: usize, tokens: &[&str]) -> Result<Vec<Rational>> {
    tokens
        .iter()
        .map(|t| t.parse::<Rational>().map_err(|e| parse_error(line, e)))
        .collect()
}

pub fn parse_system_text(text: &str) -> Result<InequalitySystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty system".to_string()))?;
    let (kind, n) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["system", kind, dim] => {
            let kind: SystemKind = kind.parse()?;
            let n = dim
                .strip_prefix("n=")
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| parse_error(ln, format!("bad dimension {dim:?}")))?;
            (kind, n)
        }
        _ => return Err(parse_error(ln, "expected `system <kind> n=<n>`")),
    };

    let mut bounds = |label: &str| -> Result<Vec<Rational>> {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing `{label}` line")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.first() != Some(&label) {
            return Err(parse_error(ln, format!("expected `{label}`")));
        }
        let values = parse_rationals(ln, &tokens[1..])?;
        if values.len() != n {
            return Err(parse_error(
                ln,
                format!("expected {n} values, found {}", values.len()),
            ));
        }
        Ok(values)
    };
    let lower = bounds("lower")?;
    let upper = bounds("upper")?;

    let mut rows = Vec::new();
    for (ln, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n + 4 || tokens[n + 2] != ">=" {
            return Err(parse_error(
                ln,
                format!("expected `<family> <coef_y> <{n} coefs> >= <rhs>`"),
            ));
        }
        let family: Family = tokens[0].parse().map_err(|e| parse_error(ln, e))?;
        let mut values = parse_rationals(ln, &tokens[1..n + 2])?;
        let coef_y = values.remove(0);
        let rhs = parse_rationals(ln, &tokens[n + 3..])?.remove(0);
        if coef_y.is_zero() && values.iter().all(Rational::is_zero) {
            return Err(parse_error(ln, "all coefficients are zero"));
        }
        rows.push(LinearInequality::new(family, coef_y, values, rhs));
    }
    Ok(InequalitySystem {
        kind,
        lower,
        upper,
        rows,
    })
}

/// A self-describing JSON document: `{"schema_version": 1, "kind": ..., "data": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document<T> {
    pub schema_version: u32,
    pub kind: String,
    pub data: T,
}

impl<T: Serialize + DeserializeOwned> Document<T> {
    pub fn new(kind: impl Into<String>, data: T) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            data,
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document<T> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull::{facet_system_cn0, facet_system_cn1, facet_system_mccormick};
    use crate::optimize::{build_certificate, primal_solve, verify_certificate, Objective};
    use crate::volume::volume_report;
    use crate::Instance;

    fn systems() -> Vec<InequalitySystem> {
        let inst = Instance::new(
            3,
            Rational::ratio(1, 2),
            vec![
                Rational::ratio(7, 3),
                Rational::from(2),
                Rational::ratio(5, 4),
            ],
        )
        .unwrap();
        vec![
            facet_system_cn1(&inst),
            facet_system_cn0(&inst),
            facet_system_mccormick(
                &[Rational::zero(), Rational::one()],
                &[Rational::from(2), Rational::from(3)],
            )
            .unwrap(),
            crate::volume::lifted_q_facets(&inst).unwrap(),
        ]
    }

    #[test]
    fn text_round_trip_is_byte_identical() {
        for sys in systems() {
            let text = write_system_text(&sys);
            let parsed = parse_system_text(&text).unwrap();
            assert_eq!(parsed, sys);
            assert_eq!(write_system_text(&parsed), text);
        }
    }

    #[test]
    fn text_example() {
        let sys = facet_system_cn1(&Instance::from_ints(1, &[2, 3]));
        let text = write_system_text(&sys);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("system cn1 n=2"));
        assert_eq!(lines.next(), Some("lower 0 1"));
        assert_eq!(lines.next(), Some("upper 2 3"));
        assert_eq!(lines.next(), Some("under-a 1 -1 0 >= 0"));
        assert_eq!(text.lines().count(), 3 + 8);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        let good = write_system_text(&facet_system_cn1(&Instance::from_ints(1, &[2, 3])));
        assert!(parse_system_text("").is_err());
        assert!(parse_system_text(&good.replace("n=2", "n=x")).is_err());
        assert!(parse_system_text(&good.replace("upper 2 3", "upper 2")).is_err());
        assert!(parse_system_text(&good.replace(">= 0\n", "<= 0\n")).is_err());
        assert!(parse_system_text(&good.replace("under-a", "under-z")).is_err());
        assert!(parse_system_text(&format!("# comment\n\n{good}")).is_ok());
    }

    #[test]
    fn json_documents_round_trip() {
        for sys in systems() {
            let json = Document::new("inequality-system", sys).to_json();
            let back = Document::<InequalitySystem>::from_json(&json).unwrap();
            assert_eq!(back.to_json(), json);
        }

        let inst = Instance::from_ints(1, &[2, 3, 5]);
        let obj = Objective::new(
            Rational::from(-1),
            vec![Rational::from(2), Rational::from(-3), Rational::one()],
        );
        let result = primal_solve(&inst, &obj).unwrap();
        let cert = build_certificate(&inst, &obj, &result).unwrap();
        let report = verify_certificate(&inst, &obj, &cert, &result).unwrap();
        let json = Document::new("verification", (result, cert, report)).to_json();
        assert_eq!(
            Document::<(
                crate::optimize::PrimalResult,
                crate::optimize::DualCertificate,
                crate::optimize::VerificationReport
            )>::from_json(&json)
            .unwrap()
            .to_json(),
            json
        );

        let vol = volume_report(&inst, 1000, 7).unwrap();
        let json = Document::new("volume", vol).to_json();
        let back = Document::<crate::volume::VolumeReport>::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        assert!(json.contains("\"closed_form\": \""));
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let json = Document::new("x", 1u32)
            .to_json()
            .replace("\"schema_version\": 1", "\"schema_version\": 9");
        assert!(Document::<u32>::from_json(&json).is_err());
    }
}
