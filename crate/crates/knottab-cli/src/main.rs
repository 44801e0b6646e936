use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use knottab::dowker::MAX_CROSSINGS;
use knottab::drawability::{interval_loop_witness, parity_filter, realize};
use knottab::invariants::{
    affine_matrix, alexander_poly, conjugation_matrix, count_colorings, nontrivial_classes, skein_eval,
    ColoringMatrix, LaurentPoly, SkeinCoeffs,
};
use knottab::notations::{braid_components, braid_is_connected_sum_candidate, saw_validate, BraidWord, LatticeWalk};
use knottab::tabulator::{tabulate_with, Checkpoint, KnotTable, TabulateConfig, TabulateError};
use knottab::DowkerSet;

const CHECKPOINT: &str = "checkpoint.json";

#[derive(Parser)]
#[command(name = "knottab", version, about = "Knot tabulation over Dowker codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate, merge and classify all codes up to a crossing count.
    Tabulate(TabulateArgs),
    /// Report validity, drawability and canonical form of one code.
    Check { code: String },
    /// Print the invariant certificate of one drawable code.
    Invariants(InvariantArgs),
    /// Components and connected-sum candidate of a braid word `n a1 a2 ...`.
    Braid { word: String },
    /// Validate a closed lattice walk given as steps in {±1, ±2, ±3}.
    Saw { steps: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(clap::Args)]
struct TabulateArgs {
    #[arg(long, allow_negative_numbers = true)]
    max_crossings: i64,
    #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
    max_group: i64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, env = "KNOT_WORKERS")]
    workers: Option<usize>,
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Continue from the checkpoint in the output directory.
    #[arg(long)]
    resume: bool,
}

#[derive(clap::Args)]
struct InvariantArgs {
    code: String,
    /// Affine coloring modulus; uses t = q - 1 unless `q,t` is given.
    #[arg(long = "q", value_delimiter = ' ', num_args = 1..)]
    q: Vec<String>,
    /// Conjugation classes of the symmetric group of this degree.
    #[arg(long = "group", num_args = 1..)]
    group: Vec<u32>,
    /// Skein value with integer coefficients `A,B,C`.
    #[arg(long, allow_hyphen_values = true)]
    skein: Option<String>,
    /// Conway polynomial.
    #[arg(long)]
    conway: bool,
}

enum Failure {
    Invalid(String),
    Budget(String),
    Internal(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(format!("i/o: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tabulate(args) => cmd_tabulate(args),
        Command::Check { code } => cmd_check(&code),
        Command::Invariants(args) => cmd_invariants(args),
        Command::Braid { word } => cmd_braid(&word),
        Command::Saw { steps } => cmd_saw(&steps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget exceeded: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(4)
        }
    }
}

fn parse_code(text: &str) -> Result<DowkerSet, Failure> {
    DowkerSet::parse(text).map_err(|e| Failure::Invalid(e.to_string()))
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn cmd_tabulate(args: TabulateArgs) -> Result<(), Failure> {
    if args.max_crossings < 0 || args.max_crossings as usize > MAX_CROSSINGS {
        return Err(Failure::Invalid(format!("--max-crossings must be in 0..={MAX_CROSSINGS}")));
    }
    if args.max_group < 1 || args.max_group > 7 {
        return Err(Failure::Invalid("--max-group must be in 1..=7".into()));
    }
    if let Some(w) = args.workers {
        if w == 0 {
            return Err(Failure::Invalid("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    let mut cfg = TabulateConfig::new(args.max_crossings as usize, args.max_group as u32);
    cfg.budget.seconds = args.budget_seconds;
    fs::create_dir_all(&args.out)?;
    let cp_path = args.out.join(CHECKPOINT);
    let resume = if args.resume {
        let text = fs::read_to_string(&cp_path)
            .map_err(|_| Failure::Invalid(format!("--resume needs {}", cp_path.display())))?;
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("bad checkpoint: {e}")))?;
        Some(cp)
    } else {
        None
    };
    match tabulate_with(&cfg, resume) {
        Ok(table) => {
            self_check(&table)?;
            write_outputs(&args.out, &table, args.format)?;
            if cp_path.exists() {
                fs::remove_file(&cp_path)?;
            }
            let h = table.histogram();
            println!("{}", h.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
            Ok(())
        }
        Err(TabulateError::BudgetExceeded(cp)) => {
            let text = serde_json::to_string(&cp).map_err(|e| Failure::Internal(e.to_string()))?;
            fs::write(&cp_path, text)?;
            Err(Failure::Budget(format!("progress saved to {}; rerun with --resume", cp_path.display())))
        }
        Err(e @ TabulateError::CheckpointMismatch { .. }) => Err(Failure::Invalid(e.to_string())),
    }
}

/// Every printed representative must read back as the same drawable code.
fn self_check(table: &KnotTable) -> Result<(), Failure> {
    for c in &table.classes {
        let text = c.representative.to_text();
        match DowkerSet::parse(&text) {
            Ok(s) if s == c.representative && realize(&s).is_drawable() => {}
            _ => return Err(Failure::Internal(format!("representative {text} does not round-trip"))),
        }
    }
    Ok(())
}

fn write_outputs(out: &Path, table: &KnotTable, format: Format) -> Result<(), Failure> {
    let (name, body) = match format {
        Format::Csv => ("table.csv", table.table_csv()),
        Format::Json => ("table.json", table.table_json()),
    };
    let files = [(name, body), ("knots.txt", table.knots_txt()), ("merges.log", table.merges_log())];
    let mut digests = serde_json::Map::new();
    for (name, body) in &files {
        fs::write(out.join(name), body)?;
        digests.insert(name.to_string(), serde_json::Value::String(sha256(body.as_bytes())));
    }
    let manifest = serde_json::json!({
        "max_crossings": table.n,
        "max_group": table.m,
        "pool_size": table.pool_size,
        "classes": table.classes.len(),
        "unresolved": table.unresolved(),
        "composite_classes": table.composite_classes,
        "sha256": digests,
    });
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Internal(e.to_string()))? + "\n";
    fs::write(out.join("manifest.json"), text)?;
    Ok(())
}

fn cmd_check(text: &str) -> Result<(), Failure> {
    let s = parse_code(text)?;
    println!("code: {}", s.to_text());
    println!("crossings: {}", s.crossings());
    println!("parity: {}", if parity_filter(&s) { "ok" } else { "fails" });
    let drawable = realize(&s).is_drawable();
    if drawable {
        println!("DRAWABLE");
    } else {
        println!("UNDRAWABLE");
        if let Some(w) = interval_loop_witness(&s) {
            let m = s.label_count();
            let path = |l: &knottab::drawability::IntervalLoop| {
                l.labels(m).iter().map(|x| x.to_string()).collect::<Vec<_>>().join("-")
            };
            let meets: Vec<String> = w.intersections.iter().map(|(a, b)| format!("{a},{b}")).collect();
            println!("witness: loops {} and {} meet at {}", path(&w.first), path(&w.second), meets.join(" "));
        }
    }
    let splits = s.detect_connected_sum();
    if splits.is_empty() {
        println!("splits: none");
    } else {
        let ks: Vec<String> = splits.iter().map(|k| k.k.to_string()).collect();
        println!("splits: {}", ks.join(" "));
    }
    println!("prime: {}", if s.is_composite() { "no" } else { "yes" });
    println!("canonical: {}", s.canonicalize().set.to_text());
    match s.dt_sequence() {
        Some(dt) => println!("dt: {}", dt.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")),
        None => println!("dt: none"),
    }
    Ok(())
}

fn affine_from(spec: &str) -> Result<ColoringMatrix, Failure> {
    let bad = || Failure::Invalid(format!("bad --q value {spec:?}"));
    let (q, t) = match spec.split_once(',') {
        Some((q, t)) => (q.trim().parse::<u32>().map_err(|_| bad())?, t.trim().parse::<u32>().map_err(|_| bad())?),
        None => {
            let q = spec.trim().parse::<u32>().map_err(|_| bad())?;
            (q, q.saturating_sub(1))
        }
    };
    affine_matrix(q, t).map_err(|e| Failure::Invalid(e.to_string()))
}

fn cmd_invariants(args: InvariantArgs) -> Result<(), Failure> {
    let s = parse_code(&args.code)?;
    let alex = alexander_poly(&s).map_err(|e| Failure::Invalid(e.to_string()))?;
    let coeffs: Vec<String> = alex.coefficients().iter().map(|c| c.to_string()).collect();
    let mut line = format!("alexander: {}", coeffs.join(" "));
    let mut mats = Vec::new();
    for q in args.q.iter().filter(|q| !q.is_empty()) {
        mats.push(affine_from(q)?);
    }
    for &p in &args.group {
        if !(2..=7).contains(&p) {
            return Err(Failure::Invalid("--group degree must be in 2..=7".into()));
        }
        for c in nontrivial_classes(p) {
            let m = conjugation_matrix(p, &c).map_err(|e| Failure::Invalid(e.to_string()))?;
            if m.k() > 1 {
                mats.push(m);
            }
        }
    }
    for m in &mats {
        let n = count_colorings(&s, m).map_err(|e| Failure::Invalid(e.to_string()))?;
        line.push_str(&format!(" ; colorings({}): {n}", m.id()));
    }
    let e = realize(&s).embedding().ok_or_else(|| Failure::Invalid("the code is not drawable".into()))?;
    if args.conway {
        let z = skein_eval(&e, &SkeinCoeffs::conway()).map_err(|e| Failure::Internal(e.to_string()))?;
        let z = z.as_poly().ok_or_else(|| Failure::Internal("conway value is not a polynomial".into()))?;
        let c: Vec<String> = z.coefficients().iter().map(|c| c.to_string()).collect();
        line.push_str(&format!(" ; conway: {}", c.join(" ")));
    }
    if let Some(spec) = &args.skein {
        let vals: Vec<i64> = spec
            .split(',')
            .map(|v| v.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Invalid(format!("bad --skein value {spec:?}")))?;
        let [a, b, c] = vals[..] else {
            return Err(Failure::Invalid("--skein takes A,B,C".into()));
        };
        let k = SkeinCoeffs { a: LaurentPoly::constant(a), b: LaurentPoly::constant(b), c: LaurentPoly::constant(c) };
        let v = skein_eval(&e, &k).map_err(|e| Failure::Invalid(e.to_string()))?;
        line.push_str(&format!(" ; skein({a},{b},{c}): {v}"));
    }
    println!("{line}");
    Ok(())
}

fn cmd_braid(text: &str) -> Result<(), Failure> {
    let w = BraidWord::parse(text).map_err(|e| Failure::Invalid(e.to_string()))?;
    println!("braid: {w}");
    println!("components: {}", braid_components(&w));
    match braid_is_connected_sum_candidate(&w) {
        Some(i) => println!("connected-sum candidate: generator {i}"),
        None => println!("connected-sum candidate: none"),
    }
    Ok(())
}

fn cmd_saw(text: &str) -> Result<(), Failure> {
    let w = LatticeWalk::parse(text).map_err(|e| Failure::Invalid(e.to_string()))?;
    println!("{}", if saw_validate(&w) { "VALID" } else { "INVALID" });
    Ok(())
}
