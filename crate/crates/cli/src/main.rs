use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use skewcat::algebra::{Algebra, AlgebraError};
use skewcat::builtins;
use skewcat::io::{self, InputError, Report};
use skewcat::verifier::{self, CampaignConfig, CheckConfig, GenBounds, Mutation, Summary};
use skewcat::DynSys;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "skewcat", version, about = "Skew category algebras of finite dynamical systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// instance file (JSON)
    path: Option<PathBuf>,
    /// use a built-in example instead of a file
    #[arg(long, conflicts_with = "path")]
    builtin: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that an instance file describes a category dynamical system
    Validate { path: PathBuf },
    /// Print the structural report of an instance
    Analyze {
        #[command(flatten)]
        source: Source,
        /// human-readable text instead of JSON
        #[arg(long)]
        pretty: bool,
    },
    /// Run a randomized verification campaign
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 600)]
        trials: usize,
        /// largest algebra dimension to generate (default: $SKEWCAT_MAX_DIM or 64)
        #[arg(long)]
        max_dim: Option<usize>,
        /// write the corpus, one instance per line, for --replay
        #[arg(long)]
        seed_file: Option<PathBuf>,
        /// check exactly the instances listed in a seed file
        #[arg(long, conflicts_with_all = ["seed", "trials"])]
        replay: Option<PathBuf>,
        /// leave the built-in examples out of the corpus
        #[arg(long)]
        no_builtins: bool,
        /// print the summary as JSON
        #[arg(long)]
        json: bool,
        #[arg(long, hide = true)]
        mutation: Option<String>,
    },
    /// Dimension and component intersections of a generated ideal
    Ideal {
        #[command(flatten)]
        source: Source,
        /// `"unit"` or a list of {"morphism", "point"?, "coeff"?} terms
        #[arg(long)]
        element: String,
    },
    /// Print a built-in example as an instance file
    Export {
        #[arg(long)]
        builtin: String,
    },
    /// List the built-in examples
    List,
}

struct Failure {
    code: u8,
    body: Value,
    message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure {
            code: EXIT_INPUT,
            body: e.to_json(),
            message: e.to_string(),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure {
            code: EXIT_CAP,
            body: serde_json::to_value(&e).expect("serializable"),
            message: e.to_string(),
        }
    }
}

fn input_failure(error: &str, message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        body: json!({"error": error, "message": message}),
        message,
    }
}

fn load(source: &Source) -> Result<DynSys, Failure> {
    match (&source.path, &source.builtin) {
        (_, Some(name)) => {
            builtins::by_name(name).ok_or_else(|| input_failure("UnknownBuiltin", format!("no built-in named {name:?}")))
        }
        (Some(path), None) => Ok(io::read_instance(path)?),
        (None, None) => Err(input_failure("MissingInput", "give an instance file or --builtin".into())),
    }
}

fn check_cap(sys: &DynSys, cap: usize) -> Result<(), Failure> {
    let dim = io::algebra_dim(sys);
    if dim > cap {
        return Err(AlgebraError::DimensionCapExceeded { dim, cap }.into());
    }
    Ok(())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn pretty_report(r: &Report) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
    let rows = [
        ("algebra dimension", r.algebra_dim.to_string()),
        ("radical dimension", r.radical_dim.to_string()),
        ("center dimension", r.center_dim.to_string()),
        ("simple", yes(r.simple)),
        ("inverse connected", yes(r.inverse_connected)),
        ("minimal", yes(r.minimal)),
        ("faithful", yes(r.faithful)),
        ("topologically free", yes(r.top_free)),
        ("maximal commutative", yes(r.maximal_commutative)),
        ("ker σ locally trivial", yes(r.sigma_kernel_locally_trivial)),
    ];
    let mut out: String = rows.iter().map(|(k, v)| format!("{k:<24}{v}\n")).collect();
    for (e, simple) in &r.ge_simple {
        out += &format!(
            "object {e}: G_e-simple {}, corner center dimension {}\n",
            yes(*simple),
            r.corner_center_dims[e]
        );
    }
    out
}

fn validate(path: &Path) -> Result<(), Failure> {
    let sys = io::read_instance(path)?;
    let g = sys.category();
    print_json(&json!({
        "valid": true,
        "objects": g.num_objects(),
        "morphisms": g.num_morphisms(),
        "algebra_dim": io::algebra_dim(&sys),
    }));
    Ok(())
}

fn analyze(source: &Source, pretty: bool) -> Result<(), Failure> {
    let sys = load(source)?;
    let report = io::analyze(&sys, io::max_dim_from_env())?;
    if pretty {
        print!("{}", pretty_report(&report));
    } else {
        println!("{}", io::to_canonical_json(&report));
    }
    Ok(())
}

fn ideal(source: &Source, element: &str) -> Result<(), Failure> {
    let sys = load(source)?;
    check_cap(&sys, io::max_dim_from_env())?;
    let a = Algebra::new(sys);
    let z = io::parse_element(&a, element)?;
    println!("{}", io::to_canonical_json(&io::ideal_report(&a, &z)));
    Ok(())
}

fn summary_json(summary: &Summary) -> Value {
    let mut per_check: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for o in &summary.outcomes {
        for r in &o.results {
            let slot = per_check.entry(r.name).or_default();
            if r.passed {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    }
    let failing: Vec<Value> = summary
        .outcomes
        .iter()
        .filter(|o| !o.is_clean())
        .map(|o| {
            json!({
                "source": o.source.to_string(),
                "error": o.error,
                "failed": o.failures().map(|r| json!({"check": r.name, "witness": r.witness})).collect::<Vec<_>>(),
                "shrunk": o.shrunk,
            })
        })
        .collect();
    json!({
        "instances": summary.instances(),
        "checks": summary.checks(),
        "failures": summary.failures(),
        "errors": summary.errors(),
        "per_check": per_check
            .iter()
            .map(|(k, (p, f))| (k.to_string(), json!({"passed": p, "failed": f})))
            .collect::<serde_json::Map<_, _>>(),
        "failing": failing,
    })
}

fn print_summary(summary: &Summary) {
    let s = summary_json(summary);
    println!(
        "instances {}  checks {}  failures {}  generator errors {}",
        s["instances"], s["checks"], s["failures"], s["errors"]
    );
    for (name, tally) in s["per_check"].as_object().expect("object") {
        println!("  {name:<18} {:>6} passed {:>4} failed", tally["passed"], tally["failed"]);
    }
    for f in s["failing"].as_array().expect("array") {
        println!("FAIL {}", f["source"].as_str().unwrap_or_default());
        if !f["error"].is_null() {
            println!("  error: {}", f["error"]);
        }
        for c in f["failed"].as_array().expect("array") {
            println!("  check {}: {}", c["check"], c["witness"]["detail"]);
        }
        for s in f["shrunk"].as_array().expect("array") {
            println!("  shrunk witness for {}: {}", s["check"], s["instance"]);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    seed: u64,
    trials: usize,
    max_dim: Option<usize>,
    seed_file: Option<&Path>,
    replay: Option<&Path>,
    no_builtins: bool,
    json_out: bool,
    mutation: Option<&str>,
) -> Result<ExitCode, Failure> {
    let mutation = mutation
        .map(|m| Mutation::from_name(m).ok_or_else(|| input_failure("UnknownMutation", format!("unknown mutation {m:?}"))))
        .transpose()?;
    let config = CampaignConfig {
        seed,
        trials,
        bounds: GenBounds {
            max_dim: max_dim.unwrap_or_else(io::max_dim_from_env),
            ..GenBounds::default()
        },
        checks: CheckConfig {
            mutation,
            ..CheckConfig::default()
        },
        include_builtins: !no_builtins,
        shrink: true,
    };
    let summary = match replay {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let sources = verifier::parse_seed_file(&text).map_err(|m| input_failure("SeedFile", m))?;
            verifier::run_sources(&sources, &config, false)
        }
        None => verifier::run_campaign(&config),
    };
    if let Some(path) = seed_file {
        std::fs::write(path, summary.seed_file()).map_err(|e| InputError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    if json_out {
        print_json(&summary_json(&summary));
    } else {
        print_summary(&summary);
    }
    Ok(if summary.failures() > 0 {
        ExitCode::from(EXIT_VERIFY_FAILED)
    } else if summary.errors() > 0 {
        ExitCode::from(EXIT_CAP)
    } else {
        ExitCode::SUCCESS
    })
}

fn export(name: &str) -> Result<(), Failure> {
    let sys = builtins::by_name(name).ok_or_else(|| input_failure("UnknownBuiltin", format!("no built-in named {name:?}")))?;
    println!("{}", io::instance_to_json(&sys));
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Validate { path } => validate(&path)?,
        Command::Analyze { source, pretty } => analyze(&source, pretty)?,
        Command::Verify {
            seed,
            trials,
            max_dim,
            seed_file,
            replay,
            no_builtins,
            json,
            mutation,
        } => {
            return verify(
                seed,
                trials,
                max_dim,
                seed_file.as_deref(),
                replay.as_deref(),
                no_builtins,
                json,
                mutation.as_deref(),
            )
        }
        Command::Ideal { source, element } => ideal(&source, &element)?,
        Command::Export { builtin } => export(&builtin)?,
        Command::List => builtins::NAMES.iter().for_each(|n| println!("{n}")),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            print_json(&f.body);
            eprintln!("skewcat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
