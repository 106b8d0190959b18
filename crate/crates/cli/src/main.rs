use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use chromatic_hopf::checks::{self, CheckReport, CoassocColours};
use chromatic_hopf::model::{default_q, registry_for, MODEL_NAME};
use chromatic_hopf::pairing;
use chromatic_hopf::ring::parse_rational;
use chromatic_hopf::selftest::{random_colour_sets, run_selftest, SelftestConfig};
use chromatic_hopf::{ColourTag, Exec, ModelSpec, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

/// Exact verification of the coloured `U_q(sl2)` model.
#[derive(Debug, Parser)]
#[command(name = "chromatic-hopf", version)]
struct Cli {
    /// Model to load.
    #[arg(long, global = true, default_value = MODEL_NAME)]
    model: String,

    /// Run batch loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    /// Write the report stream here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one verification.
    Check {
        which: CheckKind,
        #[command(flatten)]
        colours: ColourArgs,
    },
    /// Derive a relation set.
    Derive {
        which: DeriveKind,
        #[command(flatten)]
        colours: ColourArgs,
    },
    /// Pairing and truncated dual-basis analysis.
    Pair {
        #[command(subcommand)]
        which: PairCommand,
    },
    /// Full seeded property suite.
    Selftest {
        #[arg(long, env = "CHROMATIC_HOPF_SEED", default_value_t = 0)]
        seed: u64,
        /// Number of random rational colour triples.
        #[arg(long, default_value_t = 20)]
        random: usize,
        /// Debug: perturb one R-matrix entry before running.
        #[arg(long, hide = true)]
        corrupt_r: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckKind {
    Ybe,
    Coassoc,
    Counit,
    Antipode,
    Rtt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DeriveKind {
    Rtt,
}

#[derive(Debug, Args)]
struct ColourArgs {
    /// Comma-separated colours: names (`l`) or nonzero rationals (`3/2`).
    /// Three for λ,μ,ν; coassoc also takes six for α,β,λ,μ,κ,ν.
    #[arg(long, value_delimiter = ',')]
    colours: Option<Vec<String>>,
    /// Use N random rational colour assignments instead.
    #[arg(long, conflicts_with = "colours")]
    random: Option<usize>,
    #[arg(long, env = "CHROMATIC_HOPF_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum PairCommand {
    /// Table of pairings up to a degree.
    Gram {
        #[arg(long, default_value_t = 1)]
        degree: usize,
        /// Evaluate at this `q` and report the rank.
        #[arg(long)]
        q: Option<String>,
    },
    /// ⟨ρ^ν w, σ^ν X⟩ = ⟨w, X⟩ up to a degree.
    CheckDuality {
        #[arg(long, default_value = "n")]
        colour: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Counit laws of the truncated universal T-matrix.
    TCheck {
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        q: Option<String>,
    },
}

#[derive(Debug)]
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    lines: Vec<String>,
    all_passed: bool,
}

impl Output {
    fn new() -> Self {
        Output {
            lines: Vec::new(),
            all_passed: true,
        }
    }

    fn report(&mut self, r: &CheckReport) {
        self.all_passed &= r.passed;
        self.lines.push(r.to_json_line());
        let ctx: Vec<String> = r.context.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let verdict = if r.passed { "pass" } else { "FAIL" };
        eprintln!("{:<18} {verdict}  {}", r.name, ctx.join(" "));
    }

    fn value(&mut self, v: &Value) {
        self.lines.push(v.to_string());
    }
}

fn parse_colours(raw: &[String]) -> Result<Vec<ColourTag>, Failure> {
    raw.iter()
        .map(|s| ColourTag::parse(s).map_err(Failure::from))
        .collect()
}

fn parse_q(raw: Option<&str>) -> Result<Rational, Failure> {
    match raw {
        Some(s) => Ok(parse_rational(s)?),
        None => Ok(default_q()),
    }
}

fn load(name: &str, colours: &[ColourTag]) -> Result<ModelSpec, Failure> {
    let mut all = colours.to_vec();
    all.extend(["l", "m", "n", "a", "b", "k"].map(|s| ColourTag::var(s).expect("valid")));
    Ok(ModelSpec::by_name(name, &registry_for(&all)?)?)
}

fn colour_sets(args: &ColourArgs, width: usize) -> Result<Vec<Vec<ColourTag>>, Failure> {
    if let Some(n) = args.random {
        return Ok(random_colour_sets(args.seed, n, width));
    }
    let given = match &args.colours {
        Some(raw) => parse_colours(raw)?,
        None => ["l", "m", "n"]
            .map(|s| ColourTag::var(s).expect("valid"))
            .to_vec(),
    };
    match (given.len(), width) {
        (3, 3) | (6, 6) => Ok(vec![given]),
        (3, 6) => {
            let v = |s: &str| ColourTag::var(s).expect("valid");
            Ok(vec![vec![
                v("a"),
                v("b"),
                given[0].clone(),
                given[1].clone(),
                v("k"),
                given[2].clone(),
            ]])
        }
        (n, _) => Err(Failure(format!(
            "expected 3 colours (or 6 for coassoc), got {n}"
        ))),
    }
}

fn run_check(
    cli: &Cli,
    which: CheckKind,
    args: &ColourArgs,
    out: &mut Output,
) -> Result<(), Failure> {
    let width = if matches!(which, CheckKind::Coassoc) {
        6
    } else {
        3
    };
    let sets = colour_sets(args, width)?;
    let model = load(&cli.model, &sets.concat())?;
    for c in &sets {
        let r = match which {
            CheckKind::Ybe => checks::check_cybe(&model, &c[0], &c[1], &c[2])?,
            CheckKind::Counit => checks::check_counit_coloured(&model, &c[0], &c[1], &c[2])?,
            CheckKind::Antipode => checks::check_antipode_coloured(&model, &c[0], &c[1], &c[2])?,
            CheckKind::Coassoc => {
                let six: [ColourTag; 6] = std::array::from_fn(|i| c[i].clone());
                checks::check_coassoc_coloured(&model, &CoassocColours::from_slice(&six))?
            }
            CheckKind::Rtt => {
                let rel = checks::derive_rtt_relations(&model, &c[0], &c[1], &c[2])?;
                checks::check_rtt_consistency(&model, &rel)?
            }
        };
        out.report(&r);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let mut out = Output::new();
    match &cli.command {
        Command::Check { which, colours } => run_check(cli, *which, colours, &mut out)?,
        Command::Derive {
            which: DeriveKind::Rtt,
            colours,
        } => {
            for c in colour_sets(colours, 3)? {
                let model = load(&cli.model, &c)?;
                let rel = checks::derive_rtt_relations(&model, &c[0], &c[1], &c[2])?;
                eprintln!(
                    "derived {} relations ({} nonzero) for lambda={} mu={} nu={}",
                    rel.count(),
                    rel.nonzero().count(),
                    c[0],
                    c[1],
                    c[2]
                );
                out.lines
                    .push(serde_json::to_string_pretty(&rel.to_json())?);
            }
        }
        Command::Pair { which } => match which {
            PairCommand::Gram { degree, q } => {
                let model = load(&cli.model, &[])?;
                let q = q.as_deref().map(parse_rational).transpose()?;
                let g = pairing::gram_matrix(&model, *degree, q.as_ref(), exec)?;
                match g.rank() {
                    Some(r) => eprintln!(
                        "gram degree {degree}: {}x{}, rank {r}",
                        g.rows.len(),
                        g.cols.len()
                    ),
                    None => eprintln!(
                        "gram degree {degree}: {}x{} (symbolic)",
                        g.rows.len(),
                        g.cols.len()
                    ),
                }
                out.value(&g.to_json());
            }
            PairCommand::CheckDuality { colour, degree } => {
                let nu = ColourTag::parse(colour)?;
                let model = load(&cli.model, std::slice::from_ref(&nu))?;
                out.report(&pairing::check_duality_compat(&model, &nu, *degree, exec)?);
            }
            PairCommand::TCheck { degree, q } => {
                let model = load(&cli.model, &[])?;
                let q = parse_q(q.as_deref())?;
                let t = pairing::truncated_t_check(&model, *degree, &q, exec)?;
                eprintln!(
                    "rank {}, kernel {}, rtt span {}, kernel spanned by rtt: {}",
                    t.rank, t.kernel_dim, t.rtt_span_dim, t.kernel_spanned_by_rtt
                );
                out.report(&t.report);
            }
        },
        Command::Selftest {
            seed,
            random,
            corrupt_r,
        } => {
            if cli.model != MODEL_NAME {
                return Err(Failure(format!("unknown model `{}`", cli.model)));
            }
            let cfg = SelftestConfig {
                seed: *seed,
                random_triples: *random,
                corrupt: *corrupt_r,
                exec,
            };
            let summary = run_selftest(&cfg)?;
            for r in &summary.reports {
                out.all_passed &= r.passed;
                out.lines.push(r.to_json_line());
            }
            eprint!("{}", summary.table());
        }
    }
    Ok(out)
}

fn emit(cli: &Cli, out: &Output) -> io::Result<()> {
    let mut text = out.lines.join("\n");
    text.push('\n');
    match &cli.out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if out.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
