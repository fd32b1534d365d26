use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use liegrowth::linalg::FieldDescriptor;
use liegrowth::Exec;
use liegrowth_cli::commands::{self, QdimArgs, DEFAULT_PREFIX};
use liegrowth_cli::grid::GridSpec;
use liegrowth_cli::{run_pipeline, CliError, CliResult, PipelineConfig};

#[derive(Parser)]
#[command(name = "liegrowth", version, about = "Growth of monomial, Lie and groupoid algebras of infinite words")]
struct Cli {
    /// Run the hot loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Write the result here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Library word or `subst:…`, `periodic:d:digits`, `sigma:…`.
    #[arg(long, default_value = "fibonacci")]
    source: String,
    /// Scanned prefix length.
    #[arg(long, default_value_t = DEFAULT_PREFIX)]
    prefix: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Factor languages of infinite words.
    #[command(subcommand)]
    Words(WordsCmd),
    /// Growth series: preorder, submultiplicativity, regularization.
    #[command(subcommand)]
    Growth(GrowthCmd),
    /// Growth table and graded center of the monomial algebra.
    Monomial {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
    /// Commutator subspaces of the monomial algebra.
    #[command(subcommand)]
    Lie(LieCmd),
    /// The groupoid convolution algebra of the subshift.
    #[command(subcommand)]
    Groupoid(GroupoidCmd),
    /// q-dimension estimate of a growth series.
    Qdim {
        #[arg(long)]
        level: u32,
        /// σ for `⌈Φ_σ^q⌉` when no series is given, and for --corollaries.
        #[arg(long)]
        alpha: Option<f64>,
        /// CSV with columns n,value[,ln_value].
        #[arg(long)]
        series: Option<PathBuf>,
        /// Closed form such as `ceil:n-pow-ln-n` or `phi:3:0.5`.
        #[arg(long)]
        formula: Option<String>,
        /// Grid for --formula/--alpha, default dyadic:1:32.
        #[arg(long)]
        grid: Option<GridSpec>,
        #[arg(long)]
        tail: Option<f64>,
        /// Also check the doubling inequality and the separating function.
        #[arg(long)]
        corollaries: bool,
    },
    /// End-to-end run writing CSV tables, summary.json and SVG plots.
    Pipeline {
        #[arg(long)]
        config: Option<PathBuf>,
        /// `section.key=value`, applied after the config file.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Shorthand for --set output.dir=…
        #[arg(long)]
        out: Option<PathBuf>,
        /// Shorthand for --set word.source=…
        #[arg(long)]
        source: Option<String>,
    },
}

#[derive(Subcommand)]
enum WordsCmd {
    /// c(1..=max) as CSV.
    Complexity {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 20)]
        max: usize,
    },
    /// Window length within which a factor always recurs.
    Recurrence {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        factor: String,
    },
    /// Complexity bounds between a word and its binary reduction.
    SigmaBounds {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 15)]
        max: usize,
    },
    /// Nested central words of a bi-infinite extension.
    Extend {
        #[arg(long, default_value = "fibonacci")]
        source: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_PREFIX)]
        search: usize,
    },
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long)]
    series: Option<PathBuf>,
    #[arg(long)]
    formula: Option<String>,
    #[arg(long)]
    grid: Option<GridSpec>,
    #[arg(long)]
    lo: Option<u64>,
    #[arg(long)]
    hi: Option<u64>,
}

#[derive(Subcommand)]
enum GrowthCmd {
    /// Samples a closed form into a series CSV.
    Sample {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "dyadic:0:30")]
        grid: GridSpec,
    },
    /// Searches constants with f(n) <= C g(Dn).
    Preceq {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        lo: Option<u64>,
        #[arg(long)]
        hi: Option<u64>,
    },
    /// Lists violations of f(m+n) <= f(m) f(n).
    Submult(SeriesArgs),
    /// The regularizing transform and its three conditions.
    Transform {
        #[command(flatten)]
        s: SeriesArgs,
        #[arg(long)]
        t: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LieCmd {
    Dims {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
    /// Pass/fail table of the quarter bound for 3 < n <= max.
    Quarter {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
}

#[derive(Subcommand)]
enum GroupoidCmd {
    /// Filtration dimensions with the sandwich bounds.
    Growth {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
    /// Injectivity and multiplicativity of the embedding of the monomial algebra.
    Phi {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 6)]
        max: usize,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
    /// Dimension of the truncated center minus scalars.
    Center {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value = "Q")]
        field: FieldDescriptor,
    },
    /// Dumps φ(v) in canonical form.
    Element {
        #[command(flatten)]
        src: SourceArgs,
        #[arg(long)]
        word: String,
    },
}

/// Text to emit and whether the invariants it reports all hold.
fn dispatch(cli: &Cli) -> CliResult<(String, bool)> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Command::Words(w) => match w {
            WordsCmd::Complexity { src, max } => ok(commands::words_complexity(&src.source, *max, src.prefix, exec)?),
            WordsCmd::Recurrence { src, factor } => ok(commands::words_recurrence(&src.source, factor, src.prefix)?),
            WordsCmd::SigmaBounds { src, max } => commands::words_sigma_bounds(&src.source, *max, src.prefix),
            WordsCmd::Extend { source, steps, search } => ok(commands::words_extend(source, *steps, *search)?),
        },
        Command::Growth(g) => match g {
            GrowthCmd::Sample { formula, grid } => ok(commands::growth_sample(formula, grid)?),
            GrowthCmd::Preceq { f, g, lo, hi } => {
                let f = commands::load_series(Some(f), None, None)?;
                let g = commands::load_series(Some(g), None, None)?;
                ok(commands::growth_preceq(&f, &g, *lo, *hi)?)
            }
            GrowthCmd::Submult(s) => {
                let f = commands::load_series(s.series.as_deref(), s.formula.as_deref(), s.grid.as_ref())?;
                ok(commands::growth_submult(&f, s.lo, s.hi)?)
            }
            GrowthCmd::Transform { s, t } => {
                let f = commands::load_series(s.series.as_deref(), s.formula.as_deref(), s.grid.as_ref())?;
                ok(commands::growth_transform(&f, *t, s.lo, s.hi)?)
            }
        },
        Command::Monomial { src, max, field } => ok(commands::monomial(&src.source, *max, src.prefix, *field, exec)?),
        Command::Lie(l) => match l {
            LieCmd::Dims { src, max, field } => ok(commands::lie_dims(&src.source, *max, src.prefix, *field, exec)?),
            LieCmd::Quarter { src, max, field } => commands::lie_quarter(&src.source, *max, src.prefix, *field, exec),
        },
        Command::Groupoid(g) => match g {
            GroupoidCmd::Growth { src, depth, field } => {
                ok(commands::groupoid_growth(&src.source, *depth, src.prefix, *field, exec)?)
            }
            GroupoidCmd::Phi { src, max, field } => commands::groupoid_phi(&src.source, *max, src.prefix, *field, exec),
            GroupoidCmd::Center { src, n, field } => {
                ok(commands::groupoid_center(&src.source, *n, src.prefix, *field, exec)?)
            }
            GroupoidCmd::Element { src, word } => ok(commands::groupoid_element(&src.source, word, src.prefix, exec)?),
        },
        Command::Qdim { level, alpha, series, formula, grid, tail, corollaries } => {
            let args = QdimArgs {
                level: *level,
                alpha: *alpha,
                series: series.as_deref(),
                formula: formula.as_deref(),
                grid: grid.clone(),
                tail: *tail,
                corollaries: *corollaries,
            };
            ok(commands::qdim(&args, exec)?)
        }
        Command::Pipeline { config, overrides, out, source } => {
            let mut all = overrides.clone();
            if let Some(o) = out {
                all.push(format!("output.dir={:?}", o.display().to_string()));
            }
            if let Some(s) = source {
                all.push(format!("word.source={s:?}"));
            }
            if cli.sequential {
                all.push("run.parallel=false".into());
            }
            let cfg = PipelineConfig::load(config.as_deref(), &all)?;
            let outcome = run_pipeline(&cfg)?;
            let mut text = String::new();
            for c in &outcome.checks {
                let status = match (c.pass, c.asserted) {
                    (true, _) => "pass",
                    (false, true) => "FAIL",
                    (false, false) => "note",
                };
                text.push_str(&format!("{status:4}  {}: {} ({})\n", c.stage, c.name, c.detail));
            }
            text.push_str(&format!("wrote {} files to {}\n", outcome.files.len(), outcome.dir.display()));
            Ok((text, outcome.passed()))
        }
    }
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = dispatch(&cli).and_then(|(text, all_hold)| {
        emit(&cli, &text)?;
        if all_hold {
            Ok(())
        } else {
            Err(CliError::Assertion("some reported invariant fails; see the output".into()))
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
