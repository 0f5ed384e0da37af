//! CSV and JSON serialization.
//!
//! Schemas are stable and pinned by golden-file tests:
//!
//! * distribution tables: `n,x,k,prob,log_prob` (plus `prob_exact` in the
//!   exact-rational mode);
//! * outcome streams: `sigma0,x,k`;
//! * empirical distributions: `n,x,k,prob,log_prob,count`.
//!
//! Probabilities are printed with 17 significant digits, which round-trips
//! any finite f64 bit-exactly; the JSON writer uses the shortest
//! round-trip representation.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::JointPmf;
use crate::model::{Direction, WalkOutcome};
use crate::rational::{joint_pmf_rational, RationalParams};
use crate::sim::EmpiricalDist;

/// 17 significant digits: exact round-trip for every finite f64.
pub fn format_probability(p: f64) -> String {
    format!("{p:.16e}")
}

/// One serialized table entry.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PmfRecord {
    pub x: i64,
    pub k: u32,
    pub prob: f64,
    pub log_prob: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prob_exact: Option<String>,
}

/// A serialized table with its parameters and normalization defect.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PmfDocument {
    pub n: u32,
    pub eps_r: f64,
    pub eps_l: f64,
    pub normalization_defect: f64,
    pub entries: Vec<PmfRecord>,
}

impl PmfDocument {
    pub fn from_table(table: &JointPmf, exact: Option<&RationalParams>) -> PmfDocument {
        let entries = table
            .entries()
            .map(|e| PmfRecord {
                x: e.x,
                k: e.k,
                prob: e.prob,
                log_prob: e.ln_prob,
                prob_exact: exact
                    .map(|params| joint_pmf_rational(table.n(), e.x, e.k, params).to_string()),
            })
            .collect();
        PmfDocument {
            n: table.n(),
            eps_r: table.params().eps_r(),
            eps_l: table.params().eps_l(),
            normalization_defect: (table.total_mass() - 1.0).abs(),
            entries,
        }
    }
}

/// Write a table as CSV. The `prob_exact` column appears only when
/// rational parameters are supplied.
pub fn write_pmf_csv<W: Write>(
    mut w: W,
    table: &JointPmf,
    exact: Option<&RationalParams>,
) -> Result<()> {
    if exact.is_some() {
        writeln!(w, "n,x,k,prob,log_prob,prob_exact")?;
    } else {
        writeln!(w, "n,x,k,prob,log_prob")?;
    }
    for e in table.entries() {
        match exact {
            Some(params) => {
                let rational = joint_pmf_rational(table.n(), e.x, e.k, params);
                writeln!(
                    w,
                    "{},{},{},{},{},{}",
                    table.n(),
                    e.x,
                    e.k,
                    format_probability(e.prob),
                    format_probability(e.ln_prob),
                    rational
                )?;
            }
            None => writeln!(
                w,
                "{},{},{},{},{}",
                table.n(),
                e.x,
                e.k,
                format_probability(e.prob),
                format_probability(e.ln_prob)
            )?,
        }
    }
    Ok(())
}

/// Write a table as JSON.
pub fn write_pmf_json<W: Write>(
    w: W,
    table: &JointPmf,
    exact: Option<&RationalParams>,
) -> Result<()> {
    let doc = PmfDocument::from_table(table, exact);
    serde_json::to_writer_pretty(w, &doc).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(())
}

/// Read back a JSON table document.
pub fn read_pmf_json<R: std::io::Read>(r: R) -> Result<PmfDocument> {
    serde_json::from_reader(r).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

/// Read back a CSV table written by [`write_pmf_csv`].
pub fn read_pmf_csv<R: BufRead>(r: R) -> Result<(u32, Vec<PmfRecord>)> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| parse_err(1, "empty file"))?;
    let has_exact = match header.trim() {
        "n,x,k,prob,log_prob" => false,
        "n,x,k,prob,log_prob,prob_exact" => true,
        other => return Err(parse_err(1, format!("unexpected header {other:?}"))),
    };
    let mut n = 0u32;
    let mut records = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 2;
        let fields: Vec<&str> = line.trim().split(',').collect();
        let expected = if has_exact { 6 } else { 5 };
        if fields.len() != expected {
            return Err(parse_err(lineno, format!("expected {expected} fields")));
        }
        n = fields[0].parse().map_err(|_| parse_err(lineno, "bad n"))?;
        records.push(PmfRecord {
            x: fields[1].parse().map_err(|_| parse_err(lineno, "bad x"))?,
            k: fields[2].parse().map_err(|_| parse_err(lineno, "bad k"))?,
            prob: fields[3]
                .parse()
                .map_err(|_| parse_err(lineno, "bad prob"))?,
            log_prob: fields[4]
                .parse()
                .map_err(|_| parse_err(lineno, "bad log_prob"))?,
            prob_exact: if has_exact {
                Some(fields[5].to_string())
            } else {
                None
            },
        });
    }
    Ok((n, records))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Write an outcome stream as CSV (`sigma0,x,k`).
pub fn write_outcomes_csv<W: Write>(mut w: W, outcomes: &[WalkOutcome]) -> Result<()> {
    writeln!(w, "sigma0,x,k")?;
    for o in outcomes {
        writeln!(w, "{},{},{}", o.sigma0.signum(), o.x, o.k)?;
    }
    Ok(())
}

/// Read an outcome stream; the walk length is not part of the schema and
/// must be supplied. Each row is validated against the support.
pub fn read_outcomes_csv<R: BufRead>(r: R, n: u32) -> Result<Vec<WalkOutcome>> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .transpose()?
        .ok_or_else(|| parse_err(1, "empty file"))?;
    if header.trim() != "sigma0,x,k" {
        return Err(parse_err(
            1,
            format!("unexpected header {:?}", header.trim()),
        ));
    }
    let mut out = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 2;
        let fields: Vec<&str> = line.trim().split(',').collect();
        if fields.len() != 3 {
            return Err(parse_err(lineno, "expected 3 fields"));
        }
        let sigma0: i64 = fields[0]
            .parse()
            .map_err(|_| parse_err(lineno, "bad sigma0"))?;
        let sigma0 = Direction::from_signum(sigma0)
            .ok_or_else(|| parse_err(lineno, "sigma0 must be +1 or -1"))?;
        let outcome = WalkOutcome {
            sigma0,
            x: fields[1].parse().map_err(|_| parse_err(lineno, "bad x"))?,
            k: fields[2].parse().map_err(|_| parse_err(lineno, "bad k"))?,
            n,
        };
        if !outcome.is_valid() {
            return Err(parse_err(
                lineno,
                format!(
                    "outcome (x={}, k={}) is off the support of an n={} walk",
                    outcome.x, outcome.k, n
                ),
            ));
        }
        out.push(outcome);
    }
    Ok(out)
}

/// Write an empirical distribution with the table schema plus a count
/// column.
pub fn write_empirical_csv<W: Write>(mut w: W, dist: &EmpiricalDist) -> Result<()> {
    writeln!(w, "n,x,k,prob,log_prob,count")?;
    for (x, k, count) in dist.iter() {
        let prob = dist.prob(x, k);
        writeln!(
            w,
            "{},{},{},{},{},{}",
            dist.n(),
            x,
            k,
            format_probability(prob),
            format_probability(prob.ln()),
            count
        )?;
    }
    Ok(())
}
