//! Built-in catalog: bundled example laws plus expected classification
//! values for the 7-dimensional indecomposable families, keyed by their
//! Carles-Magnin numbers.

use crate::algebra::LieLaw;
use crate::error::{Error, Result};
use crate::format;
use crate::numeric::NumericLaw;
use crate::rational::{parse_decimal, parse_rat, rat_i, Rat};
use num_bigint::BigInt;
use std::sync::OnceLock;

const TABLES_TSV: &str = include_str!("../assets/tables.tsv");
const LAW_1_17: &str = include_str!("../assets/laws/n1_17.alg");
const LAW_1_3I: &str = include_str!("../assets/laws/n1_3i.alg");
const LAW_2_2: &str = include_str!("../assets/laws/n2_2.alg");
const LAW_3_1I: &str = include_str!("../assets/laws/n3_1i.alg");
const LAW_1_17_SOLITON: &str = include_str!("../assets/laws/n1_17_soliton.alg");
const LAW_H3: &str = include_str!("../assets/laws/h3.alg");
const LAW_H3_R: &str = include_str!("../assets/laws/h3_r.alg");
const LAW_ABELIAN5: &str = include_str!("../assets/laws/abelian5.alg");
const LAW_FILIFORM4: &str = include_str!("../assets/laws/filiform4.alg");

/// Condition on the family parameter selecting a table sub-row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamCondition {
    /// No parameter, or the row holds for every value.
    Always,
    /// Parameter equal to the given value.
    Eq(Rat),
    /// Parameter distinct from every listed value.
    Ne(Vec<Rat>),
}

impl ParamCondition {
    pub fn parse(text: &str) -> Result<ParamCondition> {
        let t = text.trim();
        if t == "*" {
            return Ok(ParamCondition::Always);
        }
        if let Some(rest) = t.strip_prefix("!=") {
            let vals = rest
                .split(',')
                .map(|v| parse_rat(v.trim()).map_err(Error::Invalid))
                .collect::<Result<Vec<_>>>()?;
            if vals.is_empty() {
                return Err(Error::Invalid(format!("empty exclusion list: {text:?}")));
            }
            return Ok(ParamCondition::Ne(vals));
        }
        if let Some(rest) = t.strip_prefix('=') {
            return Ok(ParamCondition::Eq(
                parse_rat(rest.trim()).map_err(Error::Invalid)?,
            ));
        }
        Err(Error::Invalid(format!("bad parameter condition: {text:?}")))
    }

    pub fn matches(&self, value: &Rat) -> bool {
        match self {
            ParamCondition::Always => true,
            ParamCondition::Eq(v) => value == v,
            ParamCondition::Ne(vs) => vs.iter().all(|v| value != v),
        }
    }

    /// A concrete parameter value satisfying the condition; generic rows
    /// sample the smallest integer >= 2 outside the exclusions.
    pub fn sample(&self) -> Rat {
        match self {
            ParamCondition::Always => rat_i(2),
            ParamCondition::Eq(v) => v.clone(),
            ParamCondition::Ne(vs) => (2..)
                .map(rat_i)
                .find(|c| vs.iter().all(|v| v != c))
                .expect("finite exclusion list"),
        }
    }

    /// Several admissible values, for probing which behavior is generic
    /// within the condition class; an equality pins a single value.
    pub fn samples(&self) -> Vec<Rat> {
        match self {
            ParamCondition::Eq(v) => vec![v.clone()],
            ParamCondition::Always => vec![rat_i(2), rat_i(3)],
            ParamCondition::Ne(vs) => (2..)
                .map(rat_i)
                .filter(|c| vs.iter().all(|v| v != c))
                .take(2)
                .collect(),
        }
    }

    /// Rendering against a parameter name, e.g. `L != 0, 1`.
    pub fn describe(&self, param: &str) -> String {
        let join = |vs: &[Rat]| {
            vs.iter()
                .map(crate::rational::fmt_rat)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            ParamCondition::Always => "*".into(),
            ParamCondition::Eq(v) => format!("{param}={}", crate::rational::fmt_rat(v)),
            ParamCondition::Ne(vs) => format!("{param}!={}", join(vs)),
        }
    }
}

/// One table sub-row: the Einstein verdict and invariants at the parameter
/// values the condition selects. The `dcs` dimensions follow the tables'
/// convention of omitting the leading `dim` and the trailing `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub condition: ParamCondition,
    pub einstein: bool,
    pub dim_der: usize,
    pub dcs_inner: Vec<usize>,
}

/// Values a reference table states for one family: the torus data shared by
/// the whole family plus one row per parameter condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectedFamily {
    pub rank: usize,
    pub phi_scale: Rat,
    pub phi_diag: Vec<BigInt>,
    pub min_display: Option<String>,
    pub rows: Vec<ExpectedRow>,
}

impl ExpectedFamily {
    /// The stated Min as the exact rational its decimal denotes.
    pub fn min_decimal(&self) -> Option<Rat> {
        self.min_display
            .as_ref()
            .map(|s| parse_decimal(s).expect("validated at load"))
    }

    /// The generic sub-row: the one whose condition excludes only finitely
    /// many parameter values.
    pub fn generic(&self) -> &ExpectedRow {
        self.rows
            .iter()
            .find(|r| !matches!(r.condition, ParamCondition::Eq(_)))
            .unwrap_or(&self.rows[0])
    }
}

/// One catalog record: a name, optionally a bundled law (families whose law
/// is not bundled carry expected values only), and optionally a separately
/// stored soliton representative used to settle the verdict.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub note: &'static str,
    pub law: Option<LieLaw>,
    pub source: Option<&'static str>,
    pub expected: Option<ExpectedFamily>,
    pub soliton_fixture: Option<NumericLaw>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// The built-in catalog: every table family in order, followed by the
    /// small standard fixtures.
    pub fn bundled() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| build_bundled().expect("bundled catalog assets are well-formed"))
    }

    pub fn find(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}

/// Parses expected-value records, one TSV row per (family, condition):
/// `family  condition  rank  en  phi_scale  phi_diag  min  dimDer  dcs`.
/// Rows of one family must be consecutive and agree on the shared fields.
pub fn parse_expected(text: &str) -> Result<Vec<(String, ExpectedFamily)>> {
    let mut out: Vec<(String, ExpectedFamily)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = |msg: String| Error::Invalid(format!("line {}: {msg}", lineno + 1));
        if fields.len() != 9 {
            return Err(bad(format!("expected 9 fields, found {}", fields.len())));
        }
        let family = fields[0].trim().to_string();
        if family.is_empty() {
            return Err(bad("empty family name".into()));
        }
        let condition = ParamCondition::parse(fields[1])?;
        let rank: usize = fields[2]
            .trim()
            .parse()
            .map_err(|e| bad(format!("rank: {e}")))?;
        let en = match fields[3].trim() {
            "y" => true,
            "n" => false,
            other => return Err(bad(format!("verdict must be y or n, found {other:?}"))),
        };
        let phi_scale = parse_rat(fields[4].trim()).map_err(|e| bad(format!("scale: {e}")))?;
        let phi_diag = fields[5]
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<BigInt>()
                    .map_err(|e| bad(format!("phi: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let min_display = match fields[6].trim() {
            "" => None,
            s => {
                parse_decimal(s).map_err(|e| bad(format!("min: {e}")))?;
                Some(s.to_string())
            }
        };
        let dim_der: usize = fields[7]
            .trim()
            .parse()
            .map_err(|e| bad(format!("dim Der: {e}")))?;
        let dcs_inner = match fields[8].trim() {
            "" => Vec::new(),
            s => s
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|e| bad(format!("dcs: {e}")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let row = ExpectedRow {
            condition,
            einstein: en,
            dim_der,
            dcs_inner,
        };
        match out.last_mut() {
            Some((name, fam)) if *name == family => {
                if fam.rank != rank || fam.phi_scale != phi_scale || fam.phi_diag != phi_diag {
                    return Err(bad(format!(
                        "family {family} rows disagree on torus data"
                    )));
                }
                if let Some(m) = &min_display {
                    match &fam.min_display {
                        Some(prev) if prev != m => {
                            return Err(bad(format!("family {family} rows disagree on Min")))
                        }
                        Some(_) => {}
                        None => fam.min_display = Some(m.clone()),
                    }
                }
                fam.rows.push(row);
            }
            _ => {
                if out.iter().any(|(name, _)| *name == family) {
                    return Err(bad(format!("family {family} rows are not consecutive")));
                }
                out.push((
                    family,
                    ExpectedFamily {
                        rank,
                        phi_scale,
                        phi_diag,
                        min_display,
                        rows: vec![row],
                    },
                ));
            }
        }
    }
    Ok(out)
}

fn bundled_source(name: &str) -> Option<&'static str> {
    match name {
        "1.17" => Some(LAW_1_17),
        "1.3(i)" => Some(LAW_1_3I),
        "2.2" => Some(LAW_2_2),
        "3.1(i)" => Some(LAW_3_1I),
        _ => None,
    }
}

fn ints(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

fn fixture(
    name: &str,
    note: &'static str,
    source: &'static str,
    expected: ExpectedFamily,
) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        name: name.into(),
        note,
        law: Some(format::parse(source)?),
        source: Some(source),
        expected: Some(expected),
        soliton_fixture: None,
    })
}

fn build_bundled() -> Result<Catalog> {
    let mut entries = Vec::new();
    for (name, expected) in parse_expected(TABLES_TSV)? {
        let source = bundled_source(&name);
        let law = source.map(format::parse).transpose()?;
        let soliton_fixture = if name == "1.17" {
            Some(format::parse_numeric(LAW_1_17_SOLITON)?)
        } else {
            None
        };
        let note = match (law.is_some(), soliton_fixture.is_some()) {
            (true, true) => "bundled law and soliton representative",
            (true, false) => "bundled law",
            _ => "table values only",
        };
        entries.push(CatalogEntry {
            name,
            note,
            law,
            source,
            expected: Some(expected),
            soliton_fixture,
        });
    }
    let always = |en: bool, dim_der: usize, dcs: &[usize]| {
        vec![ExpectedRow {
            condition: ParamCondition::Always,
            einstein: en,
            dim_der,
            dcs_inner: dcs.to_vec(),
        }]
    };
    entries.push(fixture(
        "h3",
        "Heisenberg algebra",
        LAW_H3,
        ExpectedFamily {
            rank: 2,
            phi_scale: Rat::new(BigInt::from(2), BigInt::from(3)),
            phi_diag: ints(&[1, 1, 2]),
            min_display: Some("3".into()),
            rows: always(true, 6, &[1]),
        },
    )?);
    entries.push(fixture(
        "h3+R",
        "Heisenberg algebra plus a central line",
        LAW_H3_R,
        ExpectedFamily {
            rank: 3,
            phi_scale: Rat::new(BigInt::from(1), BigInt::from(3)),
            phi_diag: ints(&[2, 2, 4, 3]),
            min_display: Some("3".into()),
            rows: always(true, 10, &[1]),
        },
    )?);
    entries.push(fixture(
        "abelian5",
        "abelian algebra of dimension 5",
        LAW_ABELIAN5,
        ExpectedFamily {
            rank: 5,
            phi_scale: rat_i(1),
            phi_diag: ints(&[1, 1, 1, 1, 1]),
            min_display: None,
            rows: always(true, 25, &[]),
        },
    )?);
    entries.push(fixture(
        "filiform4",
        "filiform algebra of dimension 4",
        LAW_FILIFORM4,
        ExpectedFamily {
            rank: 2,
            phi_scale: Rat::new(BigInt::from(1), BigInt::from(3)),
            phi_diag: ints(&[1, 2, 3, 4]),
            min_display: Some("1.5".into()),
            rows: always(true, 7, &[2, 1]),
        },
    )?);
    Ok(Catalog { entries })
}
