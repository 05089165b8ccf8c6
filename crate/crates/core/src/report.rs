//! Output rendering: JSON trees for classification reports and the catalog
//! summary table in text, TSV and JSON form. Table rows for bundled laws
//! are computed and cross-checked against the stored expected values; rows
//! without a bundled law show the stored values directly.

use crate::catalog::{Catalog, CatalogEntry, ExpectedFamily, ExpectedRow, ParamCondition};
use crate::classify::{classify_entry, Report, Verdict};
use crate::degeneration::InvariantTriple;
use crate::pre_einstein::PreEinstein;
use crate::rational::{fmt_rat, parse_decimal, rat_to_f64, Rat};
use num_bigint::BigInt;
use serde_json::{json, Value};

/// `scale(d_1,...,d_n)`, the conventional shorthand for a diagonal
/// derivation with integer eigenvalue vector `d` and rational factor.
pub fn phi_display(scale: &Rat, diag: &[BigInt]) -> String {
    let ints: Vec<String> = diag.iter().map(|d| d.to_string()).collect();
    format!("{}({})", fmt_rat(scale), ints.join(","))
}

/// `(n_1,n_2,...)`; empty input renders as `()`.
pub fn series_display(series: &[usize]) -> String {
    let parts: Vec<String> = series.iter().map(|n| n.to_string()).collect();
    format!("({})", parts.join(","))
}

fn rat_json(r: &Rat) -> Value {
    Value::String(fmt_rat(r))
}

fn slot_json(slot: (usize, usize, usize)) -> Value {
    json!([slot.0, slot.1, slot.2])
}

fn invariants_json(t: &InvariantTriple) -> Value {
    json!({
        "dimDer": t.dim_der,
        "descendingCentralSeries": t.dcs,
        "derivedSeries": t.derived,
    })
}

fn phi_json(pre: &PreEinstein) -> Value {
    json!({
        "scale": rat_json(&pre.scale),
        "diag": pre.diag_ints.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "values": pre.phi.iter().map(rat_json).collect::<Vec<_>>(),
        "rank": pre.rank,
    })
}

/// Serializes a classification report. Rationals appear as `p/q` strings.
pub fn report_to_json(r: &Report) -> Value {
    let mut obj = json!({
        "name": r.name,
        "dim": r.dim,
        "verdict": r.verdict.to_string(),
        "evidence": r.evidence.to_string(),
        "dimDer": r.dim_der,
        "descendingCentralSeries": r.dcs,
        "derivedSeries": r.derived,
        "diagnostics": r.diagnostics,
    });
    let map = obj.as_object_mut().unwrap();
    map.insert(
        "param".into(),
        match &r.param {
            Some((name, value)) => json!({"name": name, "value": rat_json(value)}),
            None => Value::Null,
        },
    );
    map.insert("rank".into(), json!(r.rank));
    map.insert(
        "phi".into(),
        r.phi.as_ref().map(phi_json).unwrap_or(Value::Null),
    );
    map.insert(
        "eigenvalueType".into(),
        match &r.eig_type {
            Some(t) => Value::String(t.to_string()),
            None => Value::Null,
        },
    );
    map.insert(
        "min".into(),
        match (&r.min_exact, &r.min_display) {
            (Some(exact), Some(display)) => json!({
                "exact": rat_json(exact),
                "value": rat_to_f64(exact),
                "display": display,
            }),
            _ => Value::Null,
        },
    );
    map.insert(
        "nice".into(),
        match &r.nice {
            Some(n) => json!({
                "isNice": n.violations.is_empty(),
                "violations": n.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "einstein": n.einstein,
                "witness": n.witness.as_ref().map(|w| w.iter().map(rat_json).collect::<Vec<_>>()),
                "forcedZero": n.forced_zero,
            }),
            None => Value::Null,
        },
    );
    map.insert(
        "degeneration".into(),
        match &r.degeneration {
            Some(c) => json!({
                "x": c.x.iter().map(rat_json).collect::<Vec<_>>(),
                "dropped": c.dropped.iter().map(|&s| slot_json(s)).collect::<Vec<_>>(),
                "original": invariants_json(&c.original),
                "limit": invariants_json(&c.limit_invariants),
            }),
            None => Value::Null,
        },
    );
    map.insert(
        "soliton".into(),
        match &r.soliton {
            Some(s) => json!({
                "soliton": s.soliton,
                "c": s.c,
                "cExact": s.c_exact.as_ref().map(rat_json),
                "residual": s.residual,
                "route": s.route.to_string(),
            }),
            None => Value::Null,
        },
    );
    obj
}

/// One line of the catalog summary table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub family: String,
    pub condition: String,
    /// `Some(true)` definite Einstein, `Some(false)` definite not,
    /// `None` inconclusive.
    pub einstein: Option<bool>,
    pub phi: String,
    pub min: String,
    pub dim_der: String,
    pub dcs: String,
    /// "computed" when a bundled law was classified, "stored" otherwise.
    pub source: &'static str,
    /// Columns where the computed value contradicts the stored one.
    pub flags: Vec<String>,
    pub error: Option<String>,
}

impl TableRow {
    pub fn mark(&self) -> &'static str {
        match self.einstein {
            Some(true) => "✓",
            Some(false) => "-",
            None => "?",
        }
    }
}

fn stored_row(family: &str, condition: String, fam: &ExpectedFamily, row: &ExpectedRow) -> TableRow {
    TableRow {
        family: family.to_string(),
        condition,
        einstein: Some(row.einstein),
        phi: phi_display(&fam.phi_scale, &fam.phi_diag),
        min: fam.min_display.clone().unwrap_or_default(),
        dim_der: row.dim_der.to_string(),
        dcs: series_display(&row.dcs_inner),
        source: "stored",
        flags: Vec::new(),
        error: None,
    }
}

fn cross_check(report: &Report, fam: &ExpectedFamily, row: &ExpectedRow) -> Vec<String> {
    let mut flags = Vec::new();
    if let Some(pre) = &report.phi {
        if pre.scale != fam.phi_scale || pre.diag_ints != fam.phi_diag {
            flags.push("phi".into());
        }
    }
    if report.rank != Some(fam.rank) {
        flags.push("rank".into());
    }
    match (fam.min_decimal(), &report.min_display) {
        (Some(expected), Some(display)) => {
            if parse_decimal(display).ok() != Some(expected) {
                flags.push("min".into());
            }
        }
        (Some(_), None) => flags.push("min".into()),
        (None, _) => {}
    }
    if report.dim_der != row.dim_der {
        flags.push("dimDer".into());
    }
    if report.dcs_inner() != row.dcs_inner.as_slice() {
        flags.push("dcs".into());
    }
    let contradiction = matches!(
        (report.verdict, row.einstein),
        (Verdict::Einstein, false) | (Verdict::NotEinstein, true)
    );
    if contradiction {
        flags.push("verdict".into());
    }
    flags
}

/// Classifies the entry at every sample value and keeps the first report
/// with no cross-check flags. Invariants like dim Der can jump at special
/// parameter values inside a generic condition class, so a mismatch is
/// reported only when it persists at every sample.
fn computed_row(
    entry: &CatalogEntry,
    condition: String,
    samples: &[Rat],
    expected: Option<(&ExpectedFamily, &ExpectedRow)>,
    tol: f64,
) -> TableRow {
    let attempts: Vec<_> = if samples.is_empty() {
        vec![classify_entry(entry, None, tol)]
    } else {
        samples
            .iter()
            .map(|s| classify_entry(entry, Some(s), tol))
            .collect()
    };
    let mut reports = Vec::new();
    let mut first_err = None;
    for attempt in attempts {
        match attempt {
            Ok(r) => reports.push(r),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        };
    }
    if reports.is_empty() {
        return TableRow {
            family: entry.name.clone(),
            condition,
            einstein: None,
            phi: String::new(),
            min: String::new(),
            dim_der: String::new(),
            dcs: String::new(),
            source: "computed",
            flags: Vec::new(),
            error: Some(first_err.expect("no reports implies an error").to_string()),
        };
    }
    let flagged: Vec<(Vec<String>, &Report)> = reports
        .iter()
        .map(|r| {
            let flags = expected
                .map(|(fam, row)| cross_check(r, fam, row))
                .unwrap_or_default();
            (flags, r)
        })
        .collect();
    let (flags, report) = match flagged.iter().find(|(f, _)| f.is_empty()) {
        Some((f, r)) => (f.clone(), *r),
        None => {
            let mut intersection = flagged[0].0.clone();
            for (f, _) in &flagged[1..] {
                intersection.retain(|flag| f.contains(flag));
            }
            (intersection, flagged[0].1)
        }
    };
    TableRow {
        family: entry.name.clone(),
        condition,
        einstein: match report.verdict {
            Verdict::Einstein => Some(true),
            Verdict::NotEinstein => Some(false),
            Verdict::Inconclusive => None,
        },
        phi: report
            .phi
            .as_ref()
            .map(|p| phi_display(&p.scale, &p.diag_ints))
            .unwrap_or_default(),
        min: report.min_display.clone().unwrap_or_default(),
        dim_der: report.dim_der.to_string(),
        dcs: series_display(report.dcs_inner()),
        source: "computed",
        flags,
        error: None,
    }
}

/// Builds the full summary table in catalog order. Entries with a bundled
/// law are classified (instantiating parameters with a sample value that
/// satisfies each stored condition) and cross-checked; the rest are listed
/// from the stored values.
pub fn table_rows(catalog: &Catalog, tol: f64) -> Vec<TableRow> {
    use rayon::prelude::*;
    catalog
        .entries
        .par_iter()
        .map(|entry| entry_rows(entry, tol))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn entry_rows(entry: &CatalogEntry, tol: f64) -> Vec<TableRow> {
    let mut rows = Vec::new();
    let param_name = entry
        .law
        .as_ref()
        .and_then(|l| l.param())
        .unwrap_or("L")
        .to_string();
    match (&entry.law, &entry.expected) {
        (Some(law), Some(fam)) => {
            for row in &fam.rows {
                let condition = row.condition.describe(&param_name);
                let samples = if law.param().is_some() {
                    row.condition.samples()
                } else {
                    Vec::new()
                };
                rows.push(computed_row(entry, condition, &samples, Some((fam, row)), tol));
            }
        }
        (Some(law), None) => {
            let samples = if law.param().is_some() {
                ParamCondition::Always.samples()
            } else {
                Vec::new()
            };
            rows.push(computed_row(entry, "*".into(), &samples, None, tol));
        }
        (None, Some(fam)) => {
            for row in &fam.rows {
                rows.push(stored_row(
                    &entry.name,
                    row.condition.describe(&param_name),
                    fam,
                    row,
                ));
            }
        }
        (None, None) => {}
    }
    rows
}

/// Space-aligned text table with a header line.
pub fn render_text(rows: &[TableRow]) -> String {
    let header = ["FAMILY", "COND", "EN", "PHI", "MIN", "DER", "DCS", "SRC", "NOTES"];
    let mut cells: Vec<[String; 9]> = Vec::with_capacity(rows.len());
    for row in rows {
        let notes = match &row.error {
            Some(e) => format!("error: {e}"),
            None if row.flags.is_empty() => String::new(),
            None => format!("mismatch: {}", row.flags.join(",")),
        };
        cells.push([
            row.family.clone(),
            row.condition.clone(),
            row.mark().to_string(),
            blank_dash(&row.phi),
            blank_dash(&row.min),
            blank_dash(&row.dim_der),
            blank_dash(&row.dcs),
            row.source.to_string(),
            notes,
        ]);
    }
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, row: &[String]| {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            let pad = widths[i].saturating_sub(cell.chars().count());
            if i + 1 < row.len() {
                line.extend(std::iter::repeat(' ').take(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    let header_row: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    emit(&mut out, &header_row);
    for row in &cells {
        emit(&mut out, row.as_slice());
    }
    out
}

fn blank_dash(s: &str) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.to_string()
    }
}

/// Tab-separated table with a header line; verdicts as y/n/?.
pub fn render_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from("family\tcondition\ten\tphi\tmin\tdim_der\tdcs\tsource\tflags\terror\n");
    for row in rows {
        let en = match row.einstein {
            Some(true) => "y",
            Some(false) => "n",
            None => "?",
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            row.family,
            row.condition,
            en,
            row.phi,
            row.min,
            row.dim_der,
            row.dcs,
            row.source,
            row.flags.join(","),
            row.error.as_deref().unwrap_or(""),
        ));
    }
    out
}

/// JSON array of row objects.
pub fn render_json(rows: &[TableRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                json!({
                    "family": row.family,
                    "condition": row.condition,
                    "einstein": row.einstein,
                    "phi": row.phi,
                    "min": row.min,
                    "dimDer": row.dim_der,
                    "dcs": row.dcs,
                    "source": row.source,
                    "flags": row.flags,
                    "error": row.error,
                })
            })
            .collect(),
    )
}
