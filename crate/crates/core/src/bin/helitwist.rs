use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use helitwist::lemmas::{run_suite, Suite, SuiteParams, SuiteReport};
use helitwist::surfaces::{
    check_matching, compare, count_consistency_classes, consistency::per_delta_tet_factor, validate_surface,
    LocallyHelicalSurface, Subcomplex,
};
use helitwist::{ClosedTriangulation, Triangulation};

#[derive(Parser)]
#[command(name = "helitwist", version, about = "Twisting of locally helical surfaces in triangulated 3-manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a triangulation, and any surfaces given, for well-formedness.
    Validate {
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long)]
        surface: Vec<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Report the twisting of one surface.
    Analyze {
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long)]
        surface: PathBuf,
        /// Region for the net twisting range; the whole complex if omitted.
        #[arg(long)]
        delta: Option<Subcomplex>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether two surfaces are consistent over a subcomplex.
    Compare {
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long, num_args = 1, required = true)]
        surface: Vec<PathBuf>,
        #[arg(long, default_value = "")]
        delta: Subcomplex,
        #[command(flatten)]
        out: Output,
    },
    /// Run the exhaustive property suites.
    Lemmas {
        /// A suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_twist: u32,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        /// Write counterexamples here.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Count consistency classes for twist bounds up to `max-twist`.
    Classes {
        #[arg(long)]
        triangulation: PathBuf,
        #[arg(long, default_value = "")]
        delta: Subcomplex,
        #[arg(long, default_value_t = 8)]
        max_twist: u32,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    report: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Failure {
    /// Exit 1: the input was read but fails a check.
    Check(String),
    /// Exit 2: the input could not be read or parsed.
    Input(String),
}

type Outcome = Result<bool, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_triangulation(path: &Path) -> Result<ClosedTriangulation, Failure> {
    let tri = Triangulation::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    ClosedTriangulation::new(tri).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<LocallyHelicalSurface, Failure> {
    LocallyHelicalSurface::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialize")),
        Format::Text => print!("{}", text()),
    }
}

fn check_delta(m: &ClosedTriangulation, delta: &Subcomplex) -> Result<(), Failure> {
    match delta.iter().find(|&t| t >= m.tet_count()) {
        Some(t) => Err(Failure::Input(format!("--delta: tetrahedron {t} out of range ({} tetrahedra)", m.tet_count()))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SurfaceCheck {
    path: String,
    error: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ValidateReport {
    tets: usize,
    orientations: Vec<String>,
    surfaces: Vec<SurfaceCheck>,
}

fn validate(triangulation: &Path, surfaces: &[PathBuf], out: Format) -> Outcome {
    let m = load_triangulation(triangulation)?;
    let mut checks = Vec::new();
    for path in surfaces {
        let h = load_surface(path)?;
        let error = check_matching(&m, &h).err().map(|e| e.to_string());
        checks.push(SurfaceCheck { path: path.display().to_string(), error });
    }
    let report = ValidateReport {
        tets: m.tet_count(),
        orientations: m.orientations().iter().map(|s| s.to_string()).collect(),
        surfaces: checks,
    };
    emit(out, &report, || {
        let mut s = format!("closed oriented triangulation, {} tetrahedra, orientations {}\n", report.tets, report.orientations.join(" "));
        for c in &report.surfaces {
            match &c.error {
                None => writeln!(s, "{}: ok", c.path),
                Some(e) => writeln!(s, "{}: {e}", c.path),
            }
            .expect("write to string");
        }
        s
    });
    Ok(report.surfaces.iter().all(|c| c.error.is_none()))
}

fn analyze(triangulation: &Path, surface: &Path, delta: Option<&Subcomplex>, out: Format) -> Outcome {
    let m = load_triangulation(triangulation)?;
    if let Some(d) = delta {
        check_delta(&m, d)?;
    }
    let h = load_surface(surface)?;
    let report = validate_surface(&m, &h, delta).map_err(|e| Failure::Check(format!("{}: {e}", surface.display())))?;
    emit(out, &report, || report.to_text());
    Ok(true)
}

fn compare_surfaces(triangulation: &Path, surfaces: &[PathBuf], delta: &Subcomplex, out: Format) -> Outcome {
    let [a, b] = surfaces else {
        return Err(Failure::Input(format!("--surface: compare takes exactly two surfaces, got {}", surfaces.len())));
    };
    let m = load_triangulation(triangulation)?;
    check_delta(&m, delta)?;
    let (h, g) = (load_surface(a)?, load_surface(b)?);
    for (path, s) in [(a, &h), (b, &g)] {
        check_matching(&m, s).map_err(|e| Failure::Check(format!("{}: {e}", path.display())))?;
    }
    let c = compare(&m, &h, &g, delta);
    emit(out, &c, || c.to_text());
    Ok(c.holds())
}

fn write_dump(path: &Path, reports: &[SuiteReport]) -> Result<(), Failure> {
    let mut s = String::new();
    for r in reports {
        for f in &r.failures {
            let _ = writeln!(s, "== {}: {}", r.suite, f.case);
            if let Some(d) = &f.dump {
                s.push_str(d);
                s.push('\n');
            }
        }
    }
    fs::write(path, s).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn lemmas(suite: &str, params: SuiteParams, dump: Option<&Path>, out: Format) -> Outcome {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(|e| Failure::Input(format!("--suite: {e}")))?]
    };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_suite(s, &params)).collect();
    if let Some(path) = dump {
        write_dump(path, &reports)?;
    }
    emit(out, &reports, || {
        let mut s = String::new();
        for r in &reports {
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{}: {verdict} ({} cases)", r.suite, r.cases);
            for n in &r.notes {
                let _ = writeln!(s, "  {n}");
            }
            for f in &r.failures {
                let _ = writeln!(s, "  counterexample: {}", f.case);
            }
        }
        s
    });
    Ok(reports.iter().all(SuiteReport::passed))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassCount {
    max_twist: u32,
    classes: u128,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClassesReport {
    delta: Subcomplex,
    per_delta_tet_factor: u128,
    counts: Vec<ClassCount>,
}

fn classes(triangulation: &Path, delta: &Subcomplex, max_twist: u32, out: Format) -> Outcome {
    let m = load_triangulation(triangulation)?;
    check_delta(&m, delta)?;
    let counts = (0..=max_twist)
        .map(|n| ClassCount { max_twist: n, classes: count_consistency_classes(&m, delta, n) })
        .collect();
    let report = ClassesReport { delta: delta.clone(), per_delta_tet_factor: per_delta_tet_factor(), counts };
    emit(out, &report, || {
        let mut s = format!("per tetrahedron of delta: {} choices\n", report.per_delta_tet_factor);
        for c in &report.counts {
            let _ = writeln!(s, "twist <= {}: {} classes", c.max_twist, c.classes);
        }
        s
    });
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { triangulation, surface, out } => validate(&triangulation, &surface, out.report),
        Command::Analyze { triangulation, surface, delta, out } => {
            analyze(&triangulation, &surface, delta.as_ref(), out.report)
        }
        Command::Compare { triangulation, surface, delta, out } => {
            compare_surfaces(&triangulation, &surface, &delta, out.report)
        }
        Command::Lemmas { suite, max_twist, max_weight, dump, out } => {
            lemmas(&suite, SuiteParams { max_twist, max_weight }, dump.as_deref(), out.report)
        }
        Command::Classes { triangulation, delta, max_twist, out } => {
            classes(&triangulation, &delta, max_twist, out.report)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
