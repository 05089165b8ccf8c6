//! Classification pipeline: Jacobi and nilpotency checks, pre-Einstein
//! derivation, necessary spectrum conditions, then either the nice-basis
//! convexity criterion or a degeneration search, with an optional explicit
//! soliton representative to settle otherwise inconclusive cases.

use crate::algebra::LieLaw;
use crate::catalog::CatalogEntry;
use crate::degeneration::{assess, degeneration_candidates, Assessment, DegenerationCertificate};
use crate::derivations::derivation_space;
use crate::error::{Error, Result};
use crate::nice::{is_nice, nice_criterion, NiceCriterion};
use crate::numeric::{verify_soliton_numeric, NumericLaw, SolitonVerdict};
use crate::pre_einstein::{pre_einstein, EigenvalueType, PreEinstein};
use crate::rational::{display_3sig, fmt_rat, Rat};
use num_traits::{Signed, Zero};

/// Final verdict for one law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Einstein,
    NotEinstein,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Einstein => "EN",
            Verdict::NotEinstein => "not-EN",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// The kind of evidence behind a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// Zero bracket: flat, trivially an Einstein nilradical.
    Abelian,
    /// Positive solution of the nice-basis convexity system.
    ConvexSolution,
    /// A coordinate of the convexity system is forced to zero.
    ConvexObstruction,
    /// Diagonal degeneration to a limit with different invariants.
    Degeneration,
    /// Explicitly verified soliton representative.
    SolitonMetric,
    /// Pre-Einstein eigenvalues not all positive.
    NonPositiveSpectrum,
    /// No decisive certificate.
    Undetermined,
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Evidence::Abelian => "abelian",
            Evidence::ConvexSolution => "convex-solution",
            Evidence::ConvexObstruction => "convex-obstruction",
            Evidence::Degeneration => "degeneration",
            Evidence::SolitonMetric => "soliton-metric",
            Evidence::NonPositiveSpectrum => "non-positive-spectrum",
            Evidence::Undetermined => "undetermined",
        })
    }
}

/// Everything the pipeline established about one law.
#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub param: Option<(String, Rat)>,
    pub dim: usize,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub rank: Option<usize>,
    pub phi: Option<PreEinstein>,
    pub eig_type: Option<EigenvalueType>,
    pub min_exact: Option<Rat>,
    pub min_display: Option<String>,
    pub dim_der: usize,
    /// Full descending central series dimensions, `dim` down to `0`.
    pub dcs: Vec<usize>,
    /// Full derived series dimensions.
    pub derived: Vec<usize>,
    pub nice: Option<NiceCriterion>,
    pub degeneration: Option<DegenerationCertificate>,
    pub soliton: Option<SolitonVerdict>,
    pub diagnostics: Vec<String>,
}

impl Report {
    /// Series dimensions in the tables' convention: first term (the
    /// dimension) and last term (zero) omitted.
    pub fn dcs_inner(&self) -> &[usize] {
        inner(&self.dcs)
    }
}

/// Strips the leading full dimension and the trailing zero.
pub fn inner(series: &[usize]) -> &[usize] {
    if series.len() >= 2 {
        &series[1..series.len() - 1]
    } else {
        series
    }
}

/// Runs the pipeline on an instantiated law. `fixture` is an optional
/// explicit metric representative consulted only when the structural
/// analysis is inconclusive.
pub fn classify(
    name: &str,
    law: &LieLaw,
    fixture: Option<&NumericLaw>,
    tol: f64,
) -> Result<Report> {
    law.require_constant()?;
    law.require_jacobi()?;
    let dcs = law.descending_central_series()?;
    let derived = law.derived_series()?;
    let dim_der = derivation_space(law)?.dim();
    let mut report = Report {
        name: name.to_string(),
        param: None,
        dim: law.dim(),
        verdict: Verdict::Inconclusive,
        evidence: Evidence::Undetermined,
        rank: None,
        phi: None,
        eig_type: None,
        min_exact: None,
        min_display: None,
        dim_der,
        dcs,
        derived,
        nice: None,
        degeneration: None,
        soliton: None,
        diagnostics: Vec::new(),
    };

    let pre = match pre_einstein(law) {
        Ok(pre) => pre,
        Err(Error::RankZero) => {
            rank_zero_outcome(law, &mut report)?;
            return Ok(report);
        }
        Err(Error::TorusNotMaximal { index }) => {
            report.diagnostics.push(format!(
                "the diagonal derivations are not a maximal torus in this basis \
                 (trace condition fails against derivation basis element {index}); \
                 supply an adapted basis"
            ));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.rank = Some(pre.rank);

    if law.is_zero_law() {
        report.phi = Some(pre);
        report.verdict = Verdict::Einstein;
        report.evidence = Evidence::Abelian;
        report
            .diagnostics
            .push("abelian law: flat metric, eigenvalue type degenerate".into());
        return Ok(report);
    }

    if !pre.is_positive() {
        let bad: Vec<String> = pre
            .phi
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_positive())
            .map(|(i, v)| format!("phi_{} = {}", i + 1, fmt_rat(v)))
            .collect();
        report.diagnostics.push(format!(
            "pre-Einstein eigenvalues are not all positive ({}); no nilsoliton metric exists",
            bad.join(", ")
        ));
        report.phi = Some(pre);
        report.verdict = Verdict::NotEinstein;
        report.evidence = Evidence::NonPositiveSpectrum;
        return Ok(report);
    }

    let ty = pre.eigenvalue_type()?;
    match ty.min_value() {
        Ok(min) => {
            report.min_display = Some(display_3sig(&min));
            report.min_exact = Some(min);
        }
        Err(Error::DegenerateType) => {
            report
                .diagnostics
                .push("eigenvalue type is a multiple of the identity; Min is undefined".into());
        }
        Err(e) => return Err(e),
    }
    report.eig_type = Some(ty);
    let phi = pre.phi.clone();
    report.phi = Some(pre);

    let violations = is_nice(law)?;
    if violations.is_empty() {
        let crit = nice_criterion(law)?;
        match crit.einstein {
            Some(true) => {
                report.verdict = Verdict::Einstein;
                report.evidence = Evidence::ConvexSolution;
            }
            Some(false) => {
                report.verdict = Verdict::NotEinstein;
                report.evidence = Evidence::ConvexObstruction;
                report.diagnostics.push(format!(
                    "convexity system forces coordinate(s) {:?} to zero",
                    crit.forced_zero
                ));
            }
            None => {
                report
                    .diagnostics
                    .push("nice basis but empty support; no criterion applies".into());
            }
        }
        report.nice = Some(crit);
        return Ok(report);
    }
    report.diagnostics.push(format!(
        "basis is not nice: {}",
        violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    ));
    report.nice = Some(NiceCriterion {
        violations,
        einstein: None,
        witness: None,
        forced_zero: Vec::new(),
    });

    let candidates = degeneration_candidates(law, &phi)?;
    let mut kept: Option<DegenerationCertificate> = None;
    for cert in candidates {
        match assess(&cert) {
            Assessment::NotEinstein => {
                report.diagnostics.push(format!(
                    "degeneration limit has dim Der {} vs {}; the orbit is not closed",
                    cert.limit_invariants.dim_der, cert.original.dim_der
                ));
                report.degeneration = Some(cert);
                report.verdict = Verdict::NotEinstein;
                report.evidence = Evidence::Degeneration;
                return Ok(report);
            }
            Assessment::Indeterminate => {
                if kept.is_none() {
                    kept = Some(cert);
                }
            }
        }
    }
    if let Some(cert) = kept {
        report.diagnostics.push(
            "a diagonal degeneration exists but its limit has identical invariants".into(),
        );
        report.degeneration = Some(cert);
    } else {
        report
            .diagnostics
            .push("no diagonal degeneration inside G_phi".into());
    }

    if let Some(rep) = fixture {
        let verdict = verify_soliton_numeric(rep, tol)?;
        if verdict.soliton {
            report.diagnostics.push(format!(
                "soliton representative verified: c = {}, residual {:.2e}",
                verdict
                    .c_exact
                    .as_ref()
                    .map(fmt_rat)
                    .unwrap_or_else(|| format!("{}", verdict.c)),
                verdict.residual
            ));
            report.soliton = Some(verdict);
            report.verdict = Verdict::Einstein;
            report.evidence = Evidence::SolitonMetric;
            return Ok(report);
        }
        report
            .diagnostics
            .push("bundled representative fails the soliton equations".into());
        report.soliton = Some(verdict);
    }

    report.diagnostics.push(
        "undecided: export the graded soliton system (soliton-system) for manual analysis".into(),
    );
    Ok(report)
}

/// Outcome when the diagonal torus is zero: if every derivation is
/// traceless, the pre-Einstein derivation is zero and the law is certified
/// not an Einstein nilradical; otherwise the basis is simply not adapted.
fn rank_zero_outcome(law: &LieLaw, report: &mut Report) -> Result<()> {
    report.rank = Some(0);
    let der = derivation_space(law)?;
    let traceful = der.basis.iter().any(|d| !d.trace().is_zero());
    if traceful {
        report.diagnostics.push(
            "the diagonal torus is zero in this basis but some derivation has nonzero \
             trace; the basis is not adapted"
                .into(),
        );
    } else {
        report.diagnostics.push(
            "every derivation is traceless, so the pre-Einstein derivation is zero".into(),
        );
        report.verdict = Verdict::NotEinstein;
        report.evidence = Evidence::NonPositiveSpectrum;
    }
    Ok(())
}

/// Classifies a catalog entry, instantiating its parameter when needed.
pub fn classify_entry(
    entry: &CatalogEntry,
    param: Option<&Rat>,
    tol: f64,
) -> Result<Report> {
    let law = entry
        .law
        .as_ref()
        .ok_or_else(|| Error::UnknownEntry(format!("{}: no bundled law", entry.name)))?;
    let (instance, bound) = match (law.param(), param) {
        (Some(name), Some(value)) => (
            law.instantiate(value),
            Some((name.to_string(), value.clone())),
        ),
        (Some(name), None) => {
            return Err(Error::SymbolicLaw(format!(
                "entry {} has parameter {name}; classification needs a concrete value \
                 (Einstein status is not continuous in the structure constants)",
                entry.name
            )))
        }
        (None, _) => (law.clone(), None),
    };
    let mut report = classify(
        &entry.name,
        &instance,
        entry.soliton_fixture.as_ref(),
        tol,
    )?;
    report.param = bound;
    Ok(report)
}
