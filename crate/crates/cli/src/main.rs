//! Command-line front end for quandle cohomology computations.

mod args;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qcoh::certificates::{certify_appendix, certify_linear, certify_module_example, Certificate, LinearMode};
use qcoh::cohomology::{cohomology_group, Cochain, Coefficients, QuandleModule};
use qcoh::extensions::{
    discrete_fiber_vanishing_check, equivalent, extend, extract_principal_cocycle, sampled_cocycle, PrincipalData,
};
use qcoh::geometry::{
    sample_sphere_cocycle, samples_to_csv, sphere_cocycle, sphere_cocycle_identity, sphere_op, ProjectiveCover,
    ProjectivePoint, TrivialCover, UnitVector,
};
use qcoh::limits::{make_alexander_tower, make_dihedral_tower, tower_cohomology, ColimitResult, TowerSystem};
use qcoh::quandle::verify_table;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Debug)]
pub enum CliError {
    /// The input was read but is mathematically invalid.
    Domain(qcoh::Error),
    /// Unreadable files, malformed JSON, unknown aliases.
    Input(String),
}

impl From<qcoh::Error> for CliError {
    fn from(e: qcoh::Error) -> Self {
        match e {
            qcoh::Error::Json(e) => CliError::Input(e.to_string()),
            e => CliError::Domain(e),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "qcoh", version, about = "Cohomology of finite and topological quandles")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quandle axioms on a table (a JSON file or an alias).
    Verify { quandle: String },
    /// Cohomology group in one degree.
    Cohomology {
        #[arg(long)]
        quandle: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        degree: usize,
        /// Quandle module JSON replacing the constant twisting.
        #[arg(long)]
        module: Option<PathBuf>,
        /// Also print representative cocycles.
        #[arg(long)]
        representatives: bool,
    },
    /// Extension of a quandle by a 2-cocycle.
    Extend {
        #[arg(long)]
        quandle: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Decide whether two cocycles give equivalent extensions.
    Equiv {
        #[arg(long)]
        quandle: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        psi: PathBuf,
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Cocycle of the section of a finite principal extension.
    Principal {
        #[arg(long)]
        data: PathBuf,
    },
    /// Sample the sphere quandle and its hemisphere cocycle.
    Sphere {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write sampled cocycle values as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Non-triviality certificates for linear quandles.
    Certify {
        #[arg(value_enum)]
        kind: CertKind,
        #[arg(long)]
        params: PathBuf,
    },
    /// Cohomology of a tower of quandles and its colimit.
    Tower {
        #[arg(value_enum)]
        kind: TowerKind,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        u: Option<i64>,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        degree: usize,
        /// Coefficients of the dihedral tower (default Z<p>).
        #[arg(long)]
        coeff: Option<String>,
        /// Tower JSON for `tower file`.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Linear,
    Appendix,
    Module,
}

#[derive(Clone, Copy, ValueEnum)]
enum TowerKind {
    Dihedral,
    Alexander,
    File,
}

struct Report {
    json: Value,
    text: String,
    /// A negative answer to a yes/no check.
    failure: Option<String>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, failure: None }
    }
}

fn coefficients_for(
    x: &qcoh::quandle::QuandleTable,
    coeff: &str,
    module: Option<&PathBuf>,
) -> Result<Coefficients, CliError> {
    let c = args::coefficients(coeff)?;
    match module {
        None => Ok(Coefficients::Twisted(c)),
        Some(path) => {
            let v = args::read_json(path)?;
            Ok(Coefficients::Module(QuandleModule::from_json(&v, x, Some(c.factors()))?))
        }
    }
}

fn cochain_file(path: &PathBuf, q: usize, c: &Coefficients) -> Result<Cochain, CliError> {
    Ok(Cochain::from_json(&args::read_json(path)?, q, c.factors())?)
}

fn verify(quandle: &str) -> Result<Report, CliError> {
    let path = std::path::Path::new(quandle);
    let rows: Vec<Vec<usize>> = if path.exists() {
        let v = args::read_json(path)?;
        let table = v.get("table").unwrap_or(&v);
        serde_json::from_value(table.clone())?
    } else {
        args::quandle(quandle)?.rows()
    };
    let report = verify_table(&rows);
    let valid = report.is_empty();
    let json = json!({ "valid": valid, "size": rows.len(), "violations": report.violations });
    let text = if valid { format!("valid quandle of order {}", rows.len()) } else { format!("not a quandle: {report}") };
    let failure = (!valid).then(|| format!("not a quandle: {report}"));
    Ok(Report { json, text, failure })
}

fn cohomology(quandle: &str, coeff: &str, degree: usize, module: Option<&PathBuf>, reps: bool) -> Result<Report, CliError> {
    let x = args::quandle(quandle)?;
    let c = coefficients_for(&x, coeff, module)?;
    let h = cohomology_group(&x, &c, degree)?;
    let mut json = serde_json::to_value(h.group())?;
    if reps {
        json["representatives"] = h.representatives().iter().map(Cochain::to_json).collect();
    }
    Ok(Report::ok(json, format!("H^{degree} = {}", h.group())))
}

fn extend_cmd(quandle: &str, coeff: &str, cocycle: &PathBuf, module: Option<&PathBuf>) -> Result<Report, CliError> {
    let x = args::quandle(quandle)?;
    let c = coefficients_for(&x, coeff, module)?;
    let psi = cochain_file(cocycle, x.size(), &c)?;
    let ext = extend(&x, &c, &psi)?;
    let json = json!({ "total": ext.total(), "projection": ext.projection() });
    let text = format!("extension of order {} over a base of order {}", ext.total().size(), x.size());
    Ok(Report::ok(json, text))
}

fn equiv(quandle: &str, coeff: &str, psi: &PathBuf, phi: &PathBuf, module: Option<&PathBuf>) -> Result<Report, CliError> {
    let x = args::quandle(quandle)?;
    let c = coefficients_for(&x, coeff, module)?;
    let (psi, phi) = (cochain_file(psi, x.size(), &c)?, cochain_file(phi, x.size(), &c)?);
    let g = equivalent(&x, &c, &psi, &phi)?;
    let json = json!({ "equivalent": g.is_some(), "shift": g.as_ref().map(Cochain::to_json) });
    let text = if g.is_some() { "equivalent" } else { "not equivalent" }.to_string();
    Ok(Report::ok(json, text))
}

fn principal(path: &PathBuf) -> Result<Report, CliError> {
    let d = PrincipalData::from_json(&args::read_json(path)?)?;
    let phi = extract_principal_cocycle(&d)?;
    let vanishes = discrete_fiber_vanishing_check(&phi);
    let json = json!({ "cocycle": phi.to_json(), "vanishes": vanishes });
    Ok(Report::ok(json, format!("cocycle {}vanishes", if vanishes { "" } else { "does not " })))
}

fn sphere(samples: usize, tol: f64, dim: usize, seed: u64, csv: Option<&PathBuf>) -> Result<Report, CliError> {
    if dim < 2 {
        return Err(CliError::Input("--dim must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut max_err, mut idempotent) = (0.0f64, true);
    for _ in 0..samples {
        let (x, y, z) = (UnitVector::random(&mut rng, dim), UnitVector::random(&mut rng, dim), UnitVector::random(&mut rng, dim));
        let lhs = sphere_op(&sphere_op(&x, &y)?, &z)?;
        let rhs = sphere_op(&sphere_op(&x, &z)?, &sphere_op(&y, &z)?)?;
        max_err = max_err.max(lhs.distance(&rhs));
        idempotent &= sphere_op(&x, &x)? == x;
    }
    let (mut checked, mut failures, mut skipped) = (0usize, 0usize, 0usize);
    while checked < samples {
        let p: Vec<_> = (0..3).map(|_| ProjectivePoint::new(UnitVector::random(&mut rng, dim))).collect();
        let (Ok(a), Ok(b), Ok(c)) = (&p[0], &p[1], &p[2]) else {
            skipped += 1;
            continue;
        };
        match sphere_cocycle_identity(a, b, c) {
            Ok(holds) => {
                checked += 1;
                failures += usize::from(!holds);
            }
            Err(_) => skipped += 1,
        }
    }
    let mut e1 = vec![0.0; dim];
    let mut e2 = vec![0.0; dim];
    e1[0] = 1.0;
    e2[1] = 1.0;
    let (e1, e2) = (ProjectivePoint::from_coords(e1)?, ProjectivePoint::from_coords(e2)?);
    let witness = sphere_cocycle(&e1, &e2)?;
    let points: Vec<ProjectivePoint> = std::iter::once(Ok(e1))
        .chain(std::iter::once(Ok(e2)))
        .chain(std::iter::repeat_with(|| ProjectivePoint::new(UnitVector::random(&mut rng, dim))))
        .filter_map(Result::ok)
        .take(8)
        .collect();
    let sphere_vanishes = discrete_fiber_vanishing_check(&sampled_cocycle(&ProjectiveCover, &points)?);
    let trivial_vanishes = discrete_fiber_vanishing_check(&sampled_cocycle(&TrivialCover, &points)?);
    if let Some(path) = csv {
        let rows = sample_sphere_cocycle(&mut rng, dim, samples);
        std::fs::write(path, samples_to_csv(&rows)).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let json = json!({
        "samples": samples,
        "dim": dim,
        "seed": seed,
        "max_distributivity_error": max_err,
        "idempotency_exact": idempotent,
        "cocycle_identity_checked": checked,
        "cocycle_identity_failures": failures,
        "boundary_skipped": skipped,
        "witness_e1_e2": witness,
        "sphere_cocycle_vanishes": sphere_vanishes,
        "trivial_cover_cocycle_vanishes": trivial_vanishes,
    });
    let good = max_err <= tol && idempotent && failures == 0;
    let text = format!(
        "max distributivity error {max_err:e}, idempotency {}, cocycle identity {checked} checked / {failures} failed / {skipped} skipped, phi(e1,e2) = {witness}",
        if idempotent { "exact" } else { "inexact" }
    );
    let failure = (!good).then(|| format!("sphere checks failed at tolerance {tol:e}"));
    Ok(Report { json, text, failure })
}

fn certificate_report(cert: Certificate) -> Report {
    let failing = cert.failing_identities().join(", ");
    let text = format!(
        "verdict {}; pairing [{}]{}",
        serde_json::to_value(cert.verdict).map(|v| v.as_str().unwrap_or_default().to_string()).unwrap_or_default(),
        cert.pairing.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "),
        if failing.is_empty() { String::new() } else { format!("; failing: {failing}") }
    );
    Report::ok(cert.to_json(), text)
}

fn certify(kind: CertKind, params: &PathBuf) -> Result<Report, CliError> {
    let p = args::read_json(params)?;
    let cert = match kind {
        CertKind::Linear | CertKind::Appendix => {
            let s = args::matrix(args::field(&p, "S")?, "S")?;
            let t = args::matrix(args::field(&p, "T")?, "T")?;
            let c = args::matrix(args::field(&p, "C")?, "C")?;
            let u0 = args::optional_vector(&p, "u0")?;
            let v0 = args::optional_vector(&p, "v0")?;
            if let CertKind::Linear = kind {
                let mode: LinearMode = match p.get("mode") {
                    Some(m) => serde_json::from_value(m.clone())?,
                    None => LinearMode::I,
                };
                certify_linear(&s, &t, &c, mode, u0, v0)?
            } else {
                let k = args::field(&p, "k")?.as_u64().ok_or_else(|| CliError::Input("k must be an integer".into()))?;
                let k = u32::try_from(k).map_err(|_| CliError::Input("k is too large".into()))?;
                certify_appendix(&s, &t, &c, k, u0, v0)?
            }
        }
        CertKind::Module => {
            let n = args::field(&p, "n")?.as_u64().ok_or_else(|| CliError::Input("n must be an integer".into()))?;
            let c1 = args::matrix(args::field(&p, "C1")?, "C1")?;
            let x = args::vector(args::field(&p, "x")?, "x")?;
            certify_module_example(n as usize, &c1, &x)?
        }
    };
    Ok(certificate_report(cert))
}

fn colimit_text(r: &ColimitResult) -> String {
    let stages: Vec<String> = r.stages.iter().map(|g| g.to_string()).collect();
    let mut lines = vec![format!("H^{} by stage: {}", r.degree, stages.join(", "))];
    if let Some(refs) = &r.reference_maps {
        for (n, m) in refs.iter().enumerate() {
            lines.push(format!("map {} -> {} in the reference basis: {m:?}", n + 1, n + 2));
        }
    }
    lines.push(format!("colimit at depth {}: {} (stabilized: {})", r.depth, r.colimit, r.stabilized));
    lines.join("\n")
}

fn tower(kind: TowerKind, p: Option<u64>, u: Option<i64>, depth: usize, degree: usize, coeff: Option<&str>, file: Option<&PathBuf>) -> Result<Report, CliError> {
    let need_p = || p.ok_or_else(|| CliError::Input("--p is required".into()));
    let sys = match kind {
        TowerKind::Dihedral => {
            let c = coeff.map(args::coefficients).transpose()?;
            make_dihedral_tower(need_p()?, depth, c)?
        }
        TowerKind::Alexander => {
            let u = u.ok_or_else(|| CliError::Input("--u is required".into()))?;
            make_alexander_tower(need_p()?, u, depth)?
        }
        TowerKind::File => {
            let path = file.ok_or_else(|| CliError::Input("--file is required".into()))?;
            TowerSystem::from_json(&args::read_json(path)?)?
        }
    };
    let r = tower_cohomology(&sys, degree, depth)?;
    Ok(Report::ok(r.to_json(), colimit_text(&r)))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Verify { quandle } => verify(quandle),
        Command::Cohomology { quandle, coeff, degree, module, representatives } => {
            cohomology(quandle, coeff, *degree, module.as_ref(), *representatives)
        }
        Command::Extend { quandle, coeff, cocycle, module } => extend_cmd(quandle, coeff, cocycle, module.as_ref()),
        Command::Equiv { quandle, coeff, psi, phi, module } => equiv(quandle, coeff, psi, phi, module.as_ref()),
        Command::Principal { data } => principal(data),
        Command::Sphere { samples, tol, dim, seed, csv } => sphere(*samples, *tol, *dim, *seed, csv.as_ref()),
        Command::Certify { kind, params } => certify(*kind, params),
        Command::Tower { kind, p, u, depth, degree, coeff, file } => {
            tower(*kind, *p, *u, *depth, *degree, coeff.as_deref(), file.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string().trim_end() }));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.json),
                Format::Text => println!("{}", report.text),
            }
            match report.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("{}", json!({ "error": "domain", "message": msg }));
                    ExitCode::from(1)
                }
            }
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{}", json!({ "error": "domain", "message": e.to_string() }));
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("{}", json!({ "error": "input", "message": msg }));
            ExitCode::from(2)
        }
    }
}
