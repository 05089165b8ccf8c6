//! Command-line interface: validate and analyze Lie algebra law files,
//! query the bundled catalog, and emit classification reports and tables.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use nilrad::algebra::LieLaw;
use nilrad::catalog::Catalog;
use nilrad::classify::{classify, Report};
use nilrad::degeneration::{
    assess, certificate_from_x, find_degeneration, Assessment, DegenerationCertificate,
};
use nilrad::derivations::derivation_space;
use nilrad::error::Error;
use nilrad::format::{parse, parse_numeric, serialize};
use nilrad::moment::{emit_soliton_system, moment_map, moment_map_f64, norm_sq};
use nilrad::nice::{is_nice, nice_criterion};
use nilrad::numeric::{verify_soliton_numeric, NumericLaw};
use nilrad::pre_einstein::{necessary_conditions, pre_einstein};
use nilrad::rational::{display_3sig, fmt_rat, parse_rat, rat_to_f64, Rat};
use nilrad::report::{
    phi_display, render_json, render_text, render_tsv, report_to_json, series_display, table_rows,
};

#[derive(Parser)]
#[command(
    name = "nilrad",
    version,
    about = "Exact analysis of nilpotent Lie algebra laws: derivations, moment maps, \
             pre-Einstein derivations, degenerations, and nilsoliton verification"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Numeric tolerance for floating-point verification routes
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,

    /// Worker threads for batch commands (0 = automatic)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

/// A law source: a file path, or the name of a bundled catalog entry.
#[derive(Clone)]
struct Target(String);

#[derive(Subcommand)]
enum Command {
    /// Parse a law file and check antisymmetry, Jacobi, and nilpotency
    Validate { target: Target },
    /// Dimension, derivation algebra dimension, and the two series
    Invariants {
        target: Target,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
    },
    /// Pre-Einstein derivation, eigenvalue type, and the Min value
    PreEinstein {
        target: Target,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
    },
    /// Nice-basis check and the convexity criterion when it applies
    Nice {
        target: Target,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
    },
    /// Moment map matrix (exact for rational laws)
    MomentMap {
        target: Target,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
    },
    /// Search for a diagonal degeneration with different limit invariants
    Degenerate {
        target: Target,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
        /// Check this diagonal X (comma-separated rationals) instead of searching
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<String>>,
    },
    /// Check whether a (possibly irrational) law is a nilsoliton
    VerifySoliton { target: Target },
    /// Emit the Jacobi + soliton polynomial system for a graded diagonal
    SolitonSystem {
        /// Law source; its pre-Einstein integer diagonal is used
        target: Option<Target>,
        /// Explicit integer diagonal, e.g. 1,1,2,3,3,4,5
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        diag: Option<Vec<i64>>,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
    },
    /// Run the full classification pipeline on one law
    Classify {
        target: Target,
        #[arg(long, value_parser = parse_param)]
        param: Option<(String, Rat)>,
    },
    /// Summary table over the bundled catalog
    Table {
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Bundled catalog queries
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List entry names with law availability
    List,
    /// Show one entry: note, law file, stored table values
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Tsv,
    Json,
}

impl std::str::FromStr for Target {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(Target(s.to_string()))
    }
}

fn parse_param(s: &str) -> std::result::Result<(String, Rat), String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| "expected NAME=VALUE".to_string())?;
    let name = name.trim();
    if name.is_empty() {
        return Err("empty parameter name".into());
    }
    let value = parse_rat(value.trim()).map_err(|e| e.to_string())?;
    Ok((name.to_string(), value))
}

fn main() -> ExitCode {
    // Die quietly like other pipeline tools when the reader goes away
    // (`nilrad table | head` must not panic on EPIPE).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // Errors only when a global pool already exists, which cannot
        // happen before any rayon use.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Loads a law from a file path, falling back to the bundled catalog when
/// no such file exists and the name matches an entry with a law.
fn load_law(target: &Target) -> Result<LieLaw, Error> {
    let path = PathBuf::from(&target.0);
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        return parse(&text);
    }
    if let Some(entry) = Catalog::bundled().find(&target.0) {
        if let Some(law) = &entry.law {
            return Ok(law.clone());
        }
        return Err(Error::Invalid(format!(
            "catalog entry {} stores table values only, no law",
            target.0
        )));
    }
    Err(Error::Invalid(format!(
        "no file or catalog entry named {}",
        target.0
    )))
}

fn load_numeric(target: &Target) -> Result<NumericLaw, Error> {
    let path = PathBuf::from(&target.0);
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        return parse_numeric(&text);
    }
    if let Some(entry) = Catalog::bundled().find(&target.0) {
        if let Some(fixture) = &entry.soliton_fixture {
            return Ok(fixture.clone());
        }
        if let Some(law) = &entry.law {
            law.require_constant()?;
            let text = serialize(law)?;
            return parse_numeric(&text);
        }
    }
    Err(Error::Invalid(format!(
        "no file or catalog entry named {}",
        target.0
    )))
}

/// Binds a parameter when the law needs one; classification and most
/// analyses are only defined at concrete values.
fn bind(law: LieLaw, param: &Option<(String, Rat)>) -> Result<LieLaw, Error> {
    match (law.param().map(str::to_string), param) {
        (None, None) => Ok(law),
        (None, Some((name, _))) => Err(Error::UnknownParameter(name.clone())),
        (Some(expected), Some((name, value))) => {
            if *name != expected {
                return Err(Error::UnknownParameter(format!(
                    "law parameter is {expected}, got {name}"
                )));
            }
            Ok(law.instantiate(value))
        }
        (Some(expected), None) => Err(Error::Invalid(format!(
            "parameter {expected} is unbound; pass --param {expected}=VALUE. \
             Being an Einstein nilradical is not a property which depends \
             continuously on the structural constants, so a symbolic parameter \
             cannot be analyzed as one case"
        ))),
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Validate { target } => validate(cli, target),
        Command::Invariants { target, param } => invariants(cli, target, param),
        Command::PreEinstein { target, param } => pre_einstein_cmd(cli, target, param),
        Command::Nice { target, param } => nice_cmd(cli, target, param),
        Command::MomentMap { target, param } => moment_map_cmd(cli, target, param),
        Command::Degenerate { target, param, x } => degenerate_cmd(cli, target, param, x),
        Command::VerifySoliton { target } => verify_soliton_cmd(cli, target),
        Command::SolitonSystem {
            target,
            diag,
            param,
        } => soliton_system_cmd(cli, target, diag, param),
        Command::Classify { target, param } => classify_cmd(cli, target, param),
        Command::Table { format } => table_cmd(cli, *format),
        Command::Catalog { command } => catalog_cmd(cli, command),
    }
}

fn validate(cli: &Cli, target: &Target) -> Result<(), Error> {
    let law = load_law(target)?;
    let symbolic = law.param().is_some();
    let (jacobi, nilpotent, dcs) = if symbolic {
        (None, None, None)
    } else {
        law.require_jacobi()?;
        let dcs = law.descending_central_series()?;
        (Some(true), Some(true), Some(dcs))
    };
    if cli.json {
        println!(
            "{}",
            json!({
                "dim": law.dim(),
                "slots": law.slot_count(),
                "param": law.param(),
                "jacobi": jacobi,
                "nilpotent": nilpotent,
                "descendingCentralSeries": dcs,
            })
        );
    } else {
        println!(
            "ok: dim {}, {} bracket entr{}",
            law.dim(),
            law.slot_count(),
            if law.slot_count() == 1 { "y" } else { "ies" }
        );
        match law.param() {
            Some(p) => println!(
                "parameter {p} unbound: Jacobi and nilpotency checked per instantiation"
            ),
            None => println!(
                "Jacobi identity holds; nilpotent with series {}",
                series_display(dcs.as_deref().unwrap_or(&[]))
            ),
        }
    }
    Ok(())
}

fn invariants(cli: &Cli, target: &Target, param: &Option<(String, Rat)>) -> Result<(), Error> {
    let law = bind(load_law(target)?, param)?;
    law.require_jacobi()?;
    let dcs = law.descending_central_series()?;
    let derived = law.derived_series()?;
    let dim_der = derivation_space(&law)?.dim();
    if cli.json {
        println!(
            "{}",
            json!({
                "dim": law.dim(),
                "dimDer": dim_der,
                "descendingCentralSeries": dcs,
                "derivedSeries": derived,
            })
        );
    } else {
        println!("dim            {}", law.dim());
        println!("dim Der        {dim_der}");
        println!("central series {}", series_display(&dcs));
        println!("derived series {}", series_display(&derived));
    }
    Ok(())
}

fn pre_einstein_cmd(
    cli: &Cli,
    target: &Target,
    param: &Option<(String, Rat)>,
) -> Result<(), Error> {
    let law = bind(load_law(target)?, param)?;
    law.require_jacobi()?;
    let pre = pre_einstein(&law)?;
    let verdict = necessary_conditions(&pre);
    let ty = if pre.is_positive() {
        Some(pre.eigenvalue_type()?)
    } else {
        None
    };
    let min = match &ty {
        Some(t) => t.min_value().ok(),
        None => None,
    };
    if cli.json {
        println!(
            "{}",
            json!({
                "phi": pre.phi.iter().map(fmt_rat).collect::<Vec<_>>(),
                "scale": fmt_rat(&pre.scale),
                "diag": pre.diag_ints.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                "rank": pre.rank,
                "eigenvalueType": ty.as_ref().map(|t| t.to_string()),
                "min": min.as_ref().map(|m| json!({
                    "exact": fmt_rat(m),
                    "value": rat_to_f64(m),
                    "display": display_3sig(m),
                })),
                "necessaryConditions": verdict.is_pass(),
            })
        );
    } else {
        println!("phi   {}", phi_display(&pre.scale, &pre.diag_ints));
        println!("rank  {}", pre.rank);
        match &ty {
            Some(t) => println!("type  {t}"),
            None => println!("type  none (eigenvalues not all positive)"),
        }
        match &min {
            Some(m) => println!("Min   {} = {}", fmt_rat(m), display_3sig(m)),
            None => println!("Min   undefined"),
        }
        match verdict {
            nilrad::pre_einstein::NecessaryVerdict::Pass => {
                println!("necessary conditions hold")
            }
            nilrad::pre_einstein::NecessaryVerdict::Fail(why) => {
                println!("necessary conditions fail: {why}")
            }
        }
    }
    Ok(())
}

fn nice_cmd(cli: &Cli, target: &Target, param: &Option<(String, Rat)>) -> Result<(), Error> {
    let law = bind(load_law(target)?, param)?;
    law.require_jacobi()?;
    let violations = is_nice(&law)?;
    if !violations.is_empty() {
        if cli.json {
            println!(
                "{}",
                json!({
                    "isNice": false,
                    "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                })
            );
        } else {
            println!("basis is not nice:");
            for v in &violations {
                println!("  {v}");
            }
        }
        return Ok(());
    }
    let crit = nice_criterion(&law)?;
    if cli.json {
        println!(
            "{}",
            json!({
                "isNice": true,
                "einstein": crit.einstein,
                "witness": crit.witness.as_ref().map(|w| w.iter().map(fmt_rat).collect::<Vec<_>>()),
                "forcedZero": crit.forced_zero,
            })
        );
    } else {
        println!("basis is nice");
        match crit.einstein {
            Some(true) => {
                println!("Einstein nilradical: yes (positive convexity solution)");
                if let Some(w) = &crit.witness {
                    let parts: Vec<String> = w.iter().map(|r| fmt_rat(r)).collect();
                    println!("witness x = ({})", parts.join(", "));
                }
            }
            Some(false) => {
                println!(
                    "Einstein nilradical: no (coordinates {:?} forced to zero)",
                    crit.forced_zero
                );
            }
            None => println!("empty support; criterion does not apply"),
        }
    }
    Ok(())
}

fn moment_map_cmd(cli: &Cli, target: &Target, param: &Option<(String, Rat)>) -> Result<(), Error> {
    // Files with irrational (sqrt) coefficients get the f64 matrix; every
    // other source gets the exact rational one.
    let path = PathBuf::from(&target.0);
    if path.exists() {
        let text = std::fs::read_to_string(&path)?;
        if parse(&text).is_err() {
            let nlaw = parse_numeric(&text)?;
            if !nlaw.all_rational() {
                let m = moment_map_f64(&nlaw);
                if cli.json {
                    let rows: Vec<Vec<f64>> = (0..m.nrows())
                        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
                        .collect();
                    println!("{}", json!({"exact": false, "matrix": rows}));
                } else {
                    for i in 0..m.nrows() {
                        let row: Vec<String> = (0..m.ncols())
                            .map(|j| format!("{:+.6}", m[(i, j)]))
                            .collect();
                        println!("{}", row.join("  "));
                    }
                }
                return Ok(());
            }
        }
    }
    let law = bind(load_law(target)?, param)?;
    law.require_jacobi()?;
    let m = moment_map(&law)?;
    if cli.json {
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| fmt_rat(&m[[i, j]])).collect())
            .collect();
        println!(
            "{}",
            json!({
                "exact": true,
                "matrix": rows,
                "normSq": fmt_rat(&norm_sq(&law)?),
            })
        );
    } else {
        for i in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|j| fmt_rat(&m[[i, j]])).collect();
            println!("{}", row.join("  "));
        }
        println!("norm^2 = {}", fmt_rat(&norm_sq(&law)?));
    }
    Ok(())
}

fn degeneration_json(cert: &DegenerationCertificate, verdict: &Assessment) -> Value {
    json!({
        "x": cert.x.iter().map(fmt_rat).collect::<Vec<_>>(),
        "dropped": cert.dropped.iter().map(|s| json!([s.0, s.1, s.2])).collect::<Vec<_>>(),
        "original": {
            "dimDer": cert.original.dim_der,
            "descendingCentralSeries": cert.original.dcs,
            "derivedSeries": cert.original.derived,
        },
        "limit": {
            "dimDer": cert.limit_invariants.dim_der,
            "descendingCentralSeries": cert.limit_invariants.dcs,
            "derivedSeries": cert.limit_invariants.derived,
        },
        "assessment": match verdict {
            Assessment::NotEinstein => "not-EN",
            Assessment::Indeterminate => "indeterminate",
        },
    })
}

fn print_degeneration(cert: &DegenerationCertificate, verdict: &Assessment) {
    let xs: Vec<String> = cert.x.iter().map(|r| fmt_rat(r)).collect();
    println!("X = diag({})", xs.join(", "));
    let dropped: Vec<String> = cert
        .dropped
        .iter()
        .map(|s| format!("({},{},{})", s.0, s.1, s.2))
        .collect();
    println!("limit drops slots {}", dropped.join(", "));
    println!(
        "dim Der {} -> {}, central series {} -> {}",
        cert.original.dim_der,
        cert.limit_invariants.dim_der,
        series_display(&cert.original.dcs),
        series_display(&cert.limit_invariants.dcs),
    );
    match verdict {
        Assessment::NotEinstein => {
            println!("invariants differ: the orbit is not closed; not an Einstein nilradical")
        }
        Assessment::Indeterminate => {
            println!("limit invariants match the original; no conclusion")
        }
    }
}

fn degenerate_cmd(
    cli: &Cli,
    target: &Target,
    param: &Option<(String, Rat)>,
    x: &Option<Vec<String>>,
) -> Result<(), Error> {
    let law = bind(load_law(target)?, param)?;
    law.require_jacobi()?;
    let pre = pre_einstein(&law)?;
    if let Some(parts) = x {
        let mut xs = Vec::with_capacity(parts.len());
        for p in parts {
            xs.push(parse_rat(p.trim()).map_err(|e| Error::Invalid(e.to_string()))?);
        }
        let cert = certificate_from_x(&law, &pre.phi, &xs)?;
        let verdict = assess(&cert);
        if cli.json {
            println!("{}", degeneration_json(&cert, &verdict));
        } else {
            print_degeneration(&cert, &verdict);
        }
        return Ok(());
    }
    match find_degeneration(&law, &pre.phi)? {
        Some(cert) => {
            let verdict = assess(&cert);
            if cli.json {
                println!("{}", degeneration_json(&cert, &verdict));
            } else {
                print_degeneration(&cert, &verdict);
            }
        }
        None => {
            if cli.json {
                println!("{}", json!({"found": false}));
            } else {
                println!("no diagonal degeneration inside G_phi");
            }
        }
    }
    Ok(())
}

fn verify_soliton_cmd(cli: &Cli, target: &Target) -> Result<(), Error> {
    let law = load_numeric(target)?;
    let verdict = verify_soliton_numeric(&law, cli.tol)?;
    if cli.json {
        println!(
            "{}",
            json!({
                "soliton": verdict.soliton,
                "c": verdict.c,
                "cExact": verdict.c_exact.as_ref().map(fmt_rat),
                "residual": verdict.residual,
                "route": verdict.route.to_string(),
            })
        );
    } else {
        println!(
            "soliton: {} (route {})",
            if verdict.soliton { "yes" } else { "no" },
            verdict.route
        );
        match &verdict.c_exact {
            Some(c) => println!("c = {} = {}", fmt_rat(c), verdict.c),
            None => println!("c = {}", verdict.c),
        }
        println!("residual = {:.3e}", verdict.residual);
    }
    Ok(())
}

fn soliton_system_cmd(
    cli: &Cli,
    target: &Option<Target>,
    diag: &Option<Vec<i64>>,
    param: &Option<(String, Rat)>,
) -> Result<(), Error> {
    let d: Vec<BigInt> = match (diag, target) {
        (Some(ints), _) => ints.iter().map(|&v| BigInt::from(v)).collect(),
        (None, Some(target)) => {
            let law = bind(load_law(target)?, param)?;
            law.require_jacobi()?;
            pre_einstein(&law)?.diag_ints
        }
        (None, None) => {
            return Err(Error::Invalid(
                "pass a law target or --diag d1,d2,...".into(),
            ))
        }
    };
    let text = emit_soliton_system(&d)?;
    if cli.json {
        let lines: Vec<&str> = text.lines().collect();
        println!(
            "{}",
            json!({
                "diag": d.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                "lines": lines,
            })
        );
    } else {
        print!("{text}");
    }
    Ok(())
}

fn print_report(report: &Report) {
    println!("law      {}", report.name);
    if let Some((name, value)) = &report.param {
        println!("param    {name} = {}", fmt_rat(value));
    }
    println!("verdict  {} ({})", report.verdict, report.evidence);
    if let Some(rank) = report.rank {
        println!("rank     {rank}");
    }
    if let Some(pre) = &report.phi {
        println!("phi      {}", phi_display(&pre.scale, &pre.diag_ints));
    }
    if let Some(ty) = &report.eig_type {
        println!("type     {ty}");
    }
    if let (Some(min), Some(disp)) = (&report.min_exact, &report.min_display) {
        println!("Min      {} = {disp}", fmt_rat(min));
    }
    println!("dim Der  {}", report.dim_der);
    println!("series   {}", series_display(&report.dcs));
    for d in &report.diagnostics {
        println!("note     {d}");
    }
}

fn classify_cmd(cli: &Cli, target: &Target, param: &Option<(String, Rat)>) -> Result<(), Error> {
    let fixture = Catalog::bundled()
        .find(&target.0)
        .and_then(|e| e.soliton_fixture.clone());
    let law = bind(load_law(target)?, param)?;
    let mut report = classify(&target.0, &law, fixture.as_ref(), cli.tol)?;
    report.param = param.clone();
    if cli.json {
        println!("{}", report_to_json(&report));
    } else {
        print_report(&report);
    }
    Ok(())
}

fn table_cmd(cli: &Cli, format: TableFormat) -> Result<(), Error> {
    let rows = table_rows(Catalog::bundled(), cli.tol);
    match (cli.json, format) {
        (true, _) | (false, TableFormat::Json) => println!("{}", render_json(&rows)),
        (false, TableFormat::Text) => print!("{}", render_text(&rows)),
        (false, TableFormat::Tsv) => print!("{}", render_tsv(&rows)),
    }
    Ok(())
}

fn catalog_cmd(cli: &Cli, command: &CatalogCommand) -> Result<(), Error> {
    let catalog = Catalog::bundled();
    match command {
        CatalogCommand::List => {
            if cli.json {
                let entries: Vec<Value> = catalog
                    .entries
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "hasLaw": e.law.is_some(),
                            "hasSolitonFixture": e.soliton_fixture.is_some(),
                            "note": e.note,
                        })
                    })
                    .collect();
                println!("{}", Value::Array(entries));
            } else {
                for e in &catalog.entries {
                    let mark = if e.law.is_some() { "law" } else { "   " };
                    println!("{:10} {mark}  {}", e.name, e.note);
                }
            }
        }
        CatalogCommand::Show { name } => {
            let entry = catalog
                .find(name)
                .ok_or_else(|| Error::UnknownEntry(name.clone()))?;
            if cli.json {
                let expected = entry.expected.as_ref().map(|fam| {
                    json!({
                        "rank": fam.rank,
                        "phi": phi_display(&fam.phi_scale, &fam.phi_diag),
                        "min": fam.min_display,
                        "rows": fam.rows.iter().map(|row| json!({
                            "condition": row.condition.describe("L"),
                            "einstein": row.einstein,
                            "dimDer": row.dim_der,
                            "dcs": row.dcs_inner,
                        })).collect::<Vec<_>>(),
                    })
                });
                println!(
                    "{}",
                    json!({
                        "name": entry.name,
                        "note": entry.note,
                        "law": entry.source,
                        "expected": expected,
                    })
                );
            } else {
                println!("{}  {}", entry.name, entry.note);
                if let Some(fam) = &entry.expected {
                    println!("stored values:");
                    println!("  phi  {}", phi_display(&fam.phi_scale, &fam.phi_diag));
                    if let Some(min) = &fam.min_display {
                        println!("  Min  {min}");
                    }
                    for row in &fam.rows {
                        println!(
                            "  [{}] EN {}  dim Der {}  dcs {}",
                            row.condition.describe("L"),
                            if row.einstein { "yes" } else { "no" },
                            row.dim_der,
                            series_display(&row.dcs_inner),
                        );
                    }
                }
                match entry.source {
                    Some(src) => {
                        println!("law file:");
                        print!("{src}");
                    }
                    None => println!("no bundled law (table values only)"),
                }
            }
        }
    }
    Ok(())
}
