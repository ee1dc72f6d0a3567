//! `qstab`: stability checks and weight synthesis for quiver representations.
//!
//! Exit codes: 0 affirmative, 1 negative verdict, 2 input error, 3 resource
//! or prime error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};
use serde_json::{json, Value};

use qstab_core::catalog;
use qstab_core::format::{parse_input, FormatError, InputFile};
use qstab_core::quiver::{QuiverClass, Weight};
use qstab_core::rep::{direct_sum, end_algebra, ext1_dim, hom_dim, RepError};
use qstab_core::stability::{
    check_stability, subrep_dimvectors_all, OracleConfig, StabilityError, DEFAULT_BUDGET,
    DEFAULT_PRIMES,
};
use qstab_core::synthesis::{
    synthesize_weight, validate_sequence, Route, SequenceError, ShiftMode, SynthesisError,
};
use qstab_core::Representation;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    /// Dynkin, Euclidean (with delta) or wild.
    Classify,
    /// King stability of representations for a weight.
    Check,
    /// Common stability weight for an orthogonal Schur sequence.
    Synthesize,
    /// Semisimplicity of the endomorphism algebra of a direct sum.
    Endcheck,
    /// Subrepresentation dimension vectors over small prime fields.
    Subreps,
    /// Hom and Ext dimensions between two representations.
    Hom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Bound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qstab",
    version,
    about = "Exact stability computations for quiver representations"
)]
#[command(group(ArgGroup::new("source").required(true).args(["input", "catalog"])))]
struct Cli {
    command: Command,
    /// JSON input file with a quiver, representations, tubes and sequences.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Built-in example: A3, K2, K3 or D5tilde.
    #[arg(long, value_name = "NAME")]
    catalog: Option<String>,
    /// Comma-separated representation names (`name:mult` for endcheck).
    #[arg(long, value_name = "A,B,...")]
    reps: Option<String>,
    /// Named sequence from the input.
    #[arg(long, value_name = "NAME")]
    sequence: Option<String>,
    /// Weight in vertex order, e.g. "3,-1,-2,2,0,-1".
    #[arg(long, value_name = "W1,...,WN", allow_hyphen_values = true)]
    weight: Option<String>,
    /// Prime for the subrepresentation oracle (repeatable).
    #[arg(long = "prime", value_name = "P")]
    primes: Vec<u64>,
    /// How the defect shift bounds non-regular subrepresentations.
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Seed for randomised isomorphism tests.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum number of subspace tuples enumerated per prime.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

enum Failure {
    Input(String),
    Resource(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Resource(m) => m,
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<StabilityError> for Failure {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::NoPrimes
            | StabilityError::BudgetExceeded { .. }
            | StabilityError::VertexTooLarge { .. }
            | StabilityError::Rep(RepError::BadPrime { .. }) => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        StabilityError::Rep(e).into()
    }
}

/// Output of a command: text, JSON and whether the verdict is affirmative.
struct Outcome {
    text: String,
    json: Value,
    affirmative: bool,
}

struct Context {
    input: InputFile,
    config: OracleConfig,
}

impl Context {
    fn reps(&self, names: &[String]) -> Result<Vec<Representation>, Failure> {
        names
            .iter()
            .map(|n| Ok(self.input.representation(n)?.clone()))
            .collect()
    }

    fn primes_note(&self) -> String {
        let ps: Vec<String> = self
            .config
            .primes
            .iter()
            .map(|p| format!("F_{p}"))
            .collect();
        format!(
            "subrepresentations enumerated over {}; verdicts are relative to these fields",
            ps.join(", ")
        )
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("json"))
                }
            }
            ExitCode::from(if out.affirmative { 0 } else { 1 })
        }
        Err(f) => {
            match format {
                Format::Text => eprintln!("error: {}", f.message()),
                Format::Json => {
                    println!("{}", json!({"error": f.message(), "exit_code": f.code()}))
                }
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let input = match (&cli.input, &cli.catalog) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            parse_input(&text)?
        }
        (None, Some(name)) => {
            catalog::load(name)
                .map_err(|e| Failure::Input(e.to_string()))?
                .input
        }
        (None, None) => unreachable!("clap requires a source"),
    };
    let primes = if cli.primes.is_empty() {
        DEFAULT_PRIMES.to_vec()
    } else {
        cli.primes.clone()
    };
    let ctx = Context {
        input,
        config: OracleConfig {
            primes,
            budget: cli.budget,
        },
    };
    match cli.command {
        Command::Classify => classify(&ctx),
        Command::Check => check(&ctx, &cli),
        Command::Synthesize => synthesize(&ctx, &cli),
        Command::Endcheck => endcheck(&ctx, &cli),
        Command::Subreps => subreps(&ctx, &cli),
        Command::Hom => hom(&ctx, &cli),
    }
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .map(String::from)
        .collect()
}

/// `--reps` if given, else every representation in the input.
fn selected(ctx: &Context, cli: &Cli) -> Vec<String> {
    match &cli.reps {
        Some(r) => split_names(r),
        None => ctx
            .input
            .representation_names()
            .into_iter()
            .map(String::from)
            .collect(),
    }
}

fn classify(ctx: &Context) -> Result<Outcome, Failure> {
    let q = &ctx.input.quiver;
    let class = q.classify();
    let delta = class.delta().map(|d| d.as_slice().to_vec());
    let text = match class {
        QuiverClass::Euclidean(d) => format!("Euclidean, delta = {d}\n"),
        other => format!("{other}\n"),
    };
    Ok(Outcome {
        text,
        json: json!({"class": class.name(), "delta": delta}),
        affirmative: true,
    })
}

fn check(ctx: &Context, cli: &Cli) -> Result<Outcome, Failure> {
    let weight = cli
        .weight
        .as_deref()
        .ok_or_else(|| Failure::Input("check needs --weight".into()))?;
    let theta = Weight::parse(weight).map_err(Failure::Input)?;
    let names = selected(ctx, cli);
    let reps = ctx.reps(&names)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all_stable = true;
    for (name, v) in names.iter().zip(&reps) {
        let report = check_stability(v, &theta, &ctx.config)?;
        all_stable &= report.is_stable();
        let _ = write!(text, "{name}: {}", report.verdict);
        if let Some(d) = &report.destabilizer {
            let _ = write!(text, " (destabilizer {d}, theta = {})", theta.eval_dim(d));
        }
        text.push('\n');
        rows.push(json!({"name": name, "report": report}));
    }
    let _ = writeln!(text, "{}", ctx.primes_note());
    Ok(Outcome {
        text,
        json: json!({"weight": theta, "all_stable": all_stable, "results": rows, "primes": ctx.config.primes}),
        affirmative: all_stable,
    })
}

fn sequence_names(ctx: &Context, cli: &Cli) -> Result<Vec<String>, Failure> {
    match (&cli.sequence, &cli.reps) {
        (Some(s), _) => ctx
            .input
            .sequence(s)
            .map(<[String]>::to_vec)
            .ok_or_else(|| Failure::Input(format!("unknown sequence {s:?}"))),
        (None, Some(r)) => Ok(split_names(r)),
        (None, None) => Err(Failure::Input(
            "synthesize needs --sequence or --reps".into(),
        )),
    }
}

fn describe_sequence_error(e: &SequenceError, names: &[String]) -> String {
    match *e {
        SequenceError::NotSchur(i) => format!("{} is not Schur", names[i]),
        SequenceError::Isomorphic(i, j) => format!("{} and {} are isomorphic", names[i], names[j]),
        SequenceError::NotOrthogonal(i, j) => {
            format!("{} and {} are not orthogonal", names[i], names[j])
        }
        SequenceError::QuiverMismatch(i) => format!("{} lives on another quiver", names[i]),
        ref other => other.to_string(),
    }
}

fn synthesize(ctx: &Context, cli: &Cli) -> Result<Outcome, Failure> {
    let names = sequence_names(ctx, cli)?;
    let reps = ctx.reps(&names)?;
    let seq = match validate_sequence(&reps, cli.seed) {
        Ok(s) => s,
        Err(SequenceError::Rep(e)) => return Err(e.into()),
        Err(e) => {
            let reason = describe_sequence_error(&e, &names);
            return Ok(Outcome {
                text: format!(
                    "not an orthogonal Schur sequence: {reason}\nno common weight found\n"
                ),
                json: json!({"valid": false, "reason": reason, "weight": null}),
                affirmative: false,
            });
        }
    };
    let mode = match cli.mode {
        Mode::Exact => ShiftMode::Exact(ctx.config.clone()),
        Mode::Bound => ShiftMode::Bound,
    };
    let out = match synthesize_weight(&seq, ctx.input.tubes.as_ref(), &ctx.config, &mode) {
        Ok(out) => out,
        Err(SynthesisError::Stability(e)) => return Err(e.into()),
        Err(SynthesisError::Rep(e)) => return Err(e.into()),
        Err(e @ SynthesisError::MissingCatalog) => return Err(Failure::Input(e.to_string())),
        Err(e) => {
            return Ok(Outcome {
                text: format!("synthesis failed: {e}\nno common weight found\n"),
                json: json!({"valid": true, "error": e.to_string(), "weight": null}),
                affirmative: false,
            })
        }
    };
    let mut text = String::new();
    if let Some(classes) = seq.classes() {
        let parts: Vec<String> = names
            .iter()
            .zip(classes)
            .map(|(n, c)| format!("{n} {}", c.name()))
            .collect();
        let _ = writeln!(text, "members: {}", parts.join(", "));
    }
    match &out.route {
        Route::Linear { .. } => {
            let _ = writeln!(
                text,
                "route: linear feasibility over subrepresentation sets"
            );
        }
        Route::Tube {
            system,
            solution,
            shift,
            ..
        } => {
            let _ = writeln!(text, "route: tubes");
            for r in &system.rows {
                let _ = writeln!(
                    text,
                    "  theta{} = {:>2}  {}{}",
                    r.dim,
                    r.rhs,
                    r.name,
                    if r.dropped { " (implied)" } else { "" }
                );
            }
            let _ = writeln!(text, "theta = {}", solution.theta);
            let n = shift.n.map_or("none".to_string(), |n| n.to_string());
            let _ = writeln!(text, "N ({}) = {n}, sigma = {}", shift.mode, shift.sigma);
        }
    }
    match &out.weight {
        Some(w) => {
            let _ = writeln!(text, "weight found: {w}");
            for (name, r) in names.iter().zip(&out.reports) {
                let _ = writeln!(text, "  {name}: {}", r.verdict);
            }
        }
        None => {
            let _ = writeln!(text, "no common weight found");
        }
    }
    let _ = writeln!(text, "{}", ctx.primes_note());
    Ok(Outcome {
        text,
        json: json!({
            "valid": true,
            "members": names,
            "classes": seq.classes(),
            "synthesis": out,
        }),
        affirmative: out.found(),
    })
}

fn endcheck(ctx: &Context, cli: &Cli) -> Result<Outcome, Failure> {
    let summands = cli
        .reps
        .as_deref()
        .ok_or_else(|| Failure::Input("endcheck needs --reps".into()))?;
    let mut names = Vec::new();
    let mut mults = Vec::new();
    for item in split_names(summands) {
        let (name, mult) = match item.split_once(':') {
            Some((n, m)) => (
                n.to_string(),
                m.parse::<usize>()
                    .ok()
                    .filter(|m| *m > 0)
                    .ok_or_else(|| Failure::Input(format!("bad multiplicity in {item:?}")))?,
            ),
            None => (item, 1),
        };
        names.push(name);
        mults.push(mult);
    }
    if names.is_empty() {
        return Err(Failure::Input("endcheck needs at least one summand".into()));
    }
    let reps = ctx.reps(&names)?;
    let parts: Vec<(&Representation, usize)> = reps.iter().zip(mults.iter().copied()).collect();
    let sum = direct_sum(&parts)?;
    let end = end_algebra(&sum);
    let radical = end.radical_dim();
    let semisimple = radical == 0;
    let validation = match validate_sequence(&reps, cli.seed) {
        Ok(_) => None,
        Err(SequenceError::Rep(e)) => return Err(e.into()),
        Err(e) => Some(describe_sequence_error(&e, &names)),
    };
    let mut text = format!(
        "dim End = {}, radical dim = {radical}, {}\n",
        end.dim(),
        if semisimple {
            "semisimple"
        } else {
            "not semisimple"
        }
    );
    match &validation {
        None => text.push_str("summands form an orthogonal Schur sequence\n"),
        Some(r) => {
            let _ = writeln!(
                text,
                "summands do not form an orthogonal Schur sequence: {r}"
            );
        }
    }
    Ok(Outcome {
        text,
        json: json!({
            "summands": names.iter().zip(&mults).map(|(n, m)| json!({"name": n, "multiplicity": m})).collect::<Vec<_>>(),
            "dim": sum.dim(),
            "end_dim": end.dim(),
            "radical_dim": radical,
            "semisimple": semisimple,
            "orthogonal_schur": validation.is_none(),
            "reason": validation,
        }),
        affirmative: semisimple,
    })
}

fn subreps(ctx: &Context, cli: &Cli) -> Result<Outcome, Failure> {
    let names = selected(ctx, cli);
    let reps = ctx.reps(&names)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, v) in names.iter().zip(&reps) {
        let set = subrep_dimvectors_all(v, &ctx.config)?;
        let dims: Vec<String> = set.dimvectors.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "{name} {}: {}", set.dim, dims.join(" "));
        rows.push(json!({"name": name, "dim": set.dim, "subreps": set.dimvectors}));
    }
    let _ = writeln!(text, "{}", ctx.primes_note());
    Ok(Outcome {
        text,
        json: json!({"primes": ctx.config.primes, "results": rows}),
        affirmative: true,
    })
}

fn hom(ctx: &Context, cli: &Cli) -> Result<Outcome, Failure> {
    let names = cli.reps.as_deref().map(split_names).unwrap_or_default();
    let [a, b] = names.as_slice() else {
        return Err(Failure::Input("hom needs --reps A,B".into()));
    };
    let reps = ctx.reps(&names)?;
    let (v, w) = (&reps[0], &reps[1]);
    let (hvw, hwv) = (hom_dim(v, w)?, hom_dim(w, v)?);
    let (evw, ewv) = (ext1_dim(v, w)?, ext1_dim(w, v)?);
    let text = format!(
        "dim Hom({a}, {b}) = {hvw}\ndim Hom({b}, {a}) = {hwv}\ndim Ext1({a}, {b}) = {evw}\ndim Ext1({b}, {a}) = {ewv}\n"
    );
    Ok(Outcome {
        text,
        json: json!({
            "pair": [a, b],
            "hom": [hvw, hwv],
            "ext1": [evw, ewv],
        }),
        affirmative: true,
    })
}
