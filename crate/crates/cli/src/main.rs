//! `grasscode`: build code fixtures, print generator matrices, geometry
//! tables and weight distributions, and run the verification suites.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grasscode::codes::{affine_grassmann_code, grassmann_code_from, schubert_code_from};
use grasscode::grassgeo::{big_cell_points, stratum};
use grasscode::report::CSV_HEADER;
use grasscode::verify::run_suite;
use grasscode::{Check, Error, Field, FieldSpec, Grassmannian, LinearCode, Subspace, Suite};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "grasscode",
    version,
    about = "Grassmann, affine Grassmann and Schubert divisor codes over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Length, dimension and minimum distance.
    Params(CodeArgs),
    /// Generator matrix, one row per line.
    Genmat(CodeArgs),
    /// Points of the underlying variety with strata and Plücker coordinates.
    Geometry(CodeArgs),
    /// Weight distribution by exhaustive sweep.
    Weights(CodeArgs),
    /// Run verification suites and report one line per check.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    Grassmann,
    Affine,
    Schubert,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct Fixture {
    #[arg(long = "l")]
    l: usize,
    #[arg(long = "m")]
    m: usize,
    /// Field order, read as p^e.
    #[arg(long = "q", conflicts_with_all = ["p", "e"], required_unless_present = "p")]
    q: Option<u64>,
    #[arg(long = "p")]
    p: Option<u32>,
    #[arg(long = "e", requires = "p")]
    e: Option<u32>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CodeArgs {
    #[command(flatten)]
    fixture: Fixture,
    #[arg(long, value_enum, default_value = "grassmann")]
    family: Family,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    fixture: Fixture,
    /// Comma-separated suites, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_guard() { EXIT_GUARD } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Params(a) => emit(&a.output, Format::Text, &params(&a)?),
        Command::Genmat(a) => emit(&a.output, Format::Csv, &genmat(&a)?),
        Command::Geometry(a) => emit(&a.output, Format::Csv, &geometry(&a)?),
        Command::Weights(a) => emit(&a.output, Format::Csv, &weights(&a)?),
        Command::Verify(a) => verify(&a),
    }
}

struct Rendered {
    text: String,
    csv: String,
    json: String,
}

fn emit(output: &Output, default: Format, r: &Rendered) -> Result<u8, Failure> {
    let body = match output.format.unwrap_or(default) {
        Format::Text => &r.text,
        Format::Csv => &r.csv,
        Format::Json => &r.json,
    };
    write_out(output, body)?;
    Ok(0)
}

fn write_out(output: &Output, body: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

struct Setup {
    l: usize,
    m: usize,
    field: Field,
}

fn setup(f: &Fixture) -> Result<Setup, Failure> {
    if f.l < 2 || f.l >= f.m {
        return Err(usage(format!("need 1 < l < m, got l={}, m={}", f.l, f.m)));
    }
    let field = match (f.q, f.p) {
        (Some(q), _) => FieldSpec::from_order(q)?,
        (None, Some(p)) => FieldSpec::new(p, f.e.unwrap_or(1))?,
        (None, None) => return Err(usage("give --q or --p")),
    };
    Ok(Setup {
        l: f.l,
        m: f.m,
        field,
    })
}

fn build_code(s: &Setup, family: Family) -> Result<LinearCode, Failure> {
    Ok(match family {
        Family::Grassmann => grassmann_code_from(&Grassmannian::new(s.l, s.m, &s.field)?)?,
        Family::Affine => affine_grassmann_code(s.l, s.m, &s.field)?,
        Family::Schubert => schubert_code_from(&Grassmannian::new(s.l, s.m, &s.field)?)?,
    })
}

#[derive(Serialize)]
struct ParamsJson {
    family: Family,
    l: usize,
    m: usize,
    q: u32,
    n: usize,
    k: usize,
    d: usize,
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Grassmann => "grassmann",
        Family::Affine => "affine",
        Family::Schubert => "schubert",
    }
}

fn params(a: &CodeArgs) -> Result<Rendered, Failure> {
    let s = setup(&a.fixture)?;
    let code = build_code(&s, a.family)?;
    let p = ParamsJson {
        family: a.family,
        l: s.l,
        m: s.m,
        q: s.field.q(),
        n: code.n(),
        k: code.k(),
        d: code.min_distance()?,
    };
    Ok(Rendered {
        text: format!("n={} k={} d={}\n", p.n, p.k, p.d),
        csv: format!(
            "family,l,m,q,n,k,d\n{},{},{},{},{},{},{}\n",
            family_name(p.family),
            p.l,
            p.m,
            p.q,
            p.n,
            p.k,
            p.d
        ),
        json: json(&p),
    })
}

#[derive(Serialize)]
struct GenmatJson {
    family: Family,
    l: usize,
    m: usize,
    q: u32,
    labels: Vec<String>,
    rows: Vec<Vec<u32>>,
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn genmat(a: &CodeArgs) -> Result<Rendered, Failure> {
    let s = setup(&a.fixture)?;
    let code = build_code(&s, a.family)?;
    let rows = code.genmat.row_vecs();
    let mut text = format!(
        "# {} ({},{},{}) {}x{}\n# columns: {}\n",
        family_name(a.family),
        s.l,
        s.m,
        s.field.q(),
        code.k(),
        code.n(),
        code.labels.join(" | ")
    );
    let mut csv = String::new();
    for r in &rows {
        let _ = writeln!(text, "{}", join(r, " "));
        let _ = writeln!(csv, "{}", join(r, ","));
    }
    let j = GenmatJson {
        family: a.family,
        l: s.l,
        m: s.m,
        q: s.field.q(),
        labels: code.labels.clone(),
        rows,
    };
    Ok(Rendered {
        text,
        csv,
        json: json(&j),
    })
}

#[derive(Serialize)]
struct PointJson {
    index: usize,
    stratum: usize,
    basis: Vec<Vec<u32>>,
    plucker: Vec<u32>,
}

#[derive(Serialize)]
struct GeometryJson {
    family: Family,
    l: usize,
    m: usize,
    q: u32,
    stratum_sizes: Vec<usize>,
    lines: usize,
    points: Vec<PointJson>,
}

fn geometry(a: &CodeArgs) -> Result<Rendered, Failure> {
    let s = setup(&a.fixture)?;
    let g = Grassmannian::new(s.l, s.m, &s.field)?;
    let chosen: Vec<usize> = match a.family {
        Family::Grassmann => (0..g.len()).collect(),
        // column order of the affine code
        Family::Affine => big_cell_points(s.l, s.m, &s.field)?
            .iter()
            .map(|p| g.index_of(p).expect("big cell point lies on G"))
            .collect(),
        Family::Schubert => g.omega_indices().into_iter().collect(),
    };
    let point = |i: usize| {
        let p: &Subspace = &g.points[i];
        PointJson {
            index: i,
            stratum: stratum(p, s.l, s.m),
            basis: p.basis_rows(),
            plucker: g.plucker[i].clone(),
        }
    };
    let points: Vec<PointJson> = chosen.iter().map(|&i| point(i)).collect();
    let sizes = g.stratum_sizes();
    let lines = g.line_sets()?.len();
    let mut text = format!(
        "G({},{}) over F_{}: {} points, {} lines, strata {}\n{} {} points\n",
        s.l,
        s.m,
        s.field.q(),
        g.len(),
        lines,
        join(&sizes, "/"),
        family_name(a.family),
        points.len()
    );
    let mut csv = String::from("index,stratum,basis,plucker\n");
    for p in &points {
        let basis = p
            .basis
            .iter()
            .map(|r| join(r, " "))
            .collect::<Vec<_>>()
            .join(" / ");
        let _ = writeln!(
            text,
            "{:>5}  W{}  [{}]  ({})",
            p.index,
            p.stratum,
            basis,
            join(&p.plucker, " ")
        );
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            p.index,
            p.stratum,
            basis,
            join(&p.plucker, " ")
        );
    }
    let j = GeometryJson {
        family: a.family,
        l: s.l,
        m: s.m,
        q: s.field.q(),
        stratum_sizes: sizes,
        lines,
        points,
    };
    Ok(Rendered {
        text,
        csv,
        json: json(&j),
    })
}

#[derive(Serialize)]
struct WeightJson {
    weight: usize,
    count: u64,
}

fn weights(a: &CodeArgs) -> Result<Rendered, Failure> {
    let s = setup(&a.fixture)?;
    let code = build_code(&s, a.family)?;
    let dist: Vec<WeightJson> = code
        .weight_distribution()?
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(weight, count)| WeightJson { weight, count })
        .collect();
    let mut csv = String::from("weight,count\n");
    let mut text = String::new();
    for w in &dist {
        let _ = writeln!(csv, "{},{}", w.weight, w.count);
        let _ = writeln!(text, "{:>6} {}", w.weight, w.count);
    }
    Ok(Rendered {
        text,
        csv,
        json: json(&dist),
    })
}

fn verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let s = setup(&a.fixture)?;
    let suites = Suite::parse_list(&a.suite).map_err(|e| usage(e.to_string()))?;
    let mut checks: Vec<Check> = Vec::new();
    let mut guarded = false;
    for suite in suites {
        match run_suite(suite, s.l, s.m, &s.field, a.seed) {
            Ok(c) => checks.extend(c),
            Err(e) if e.is_guard() => {
                eprintln!("skipped {suite}: {e}");
                guarded = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    let body = match a.output.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for c in &checks {
                let _ = writeln!(out, "{}", c.csv_line());
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{c}");
            }
            let _ = writeln!(out, "{} checks, {failed} failed", checks.len());
            out
        }
        Format::Json => json(&checks),
    };
    write_out(&a.output, &body)?;
    if a.output.out.is_some() {
        println!("{} checks, {failed} failed", checks.len());
    }
    Ok(if failed > 0 {
        EXIT_FAIL
    } else if guarded {
        EXIT_GUARD
    } else {
        0
    })
}
