//! Command-line surface for the higgs-moduli library.
//!
//! Group labels are passed as inline JSON objects (six families with
//! heterogeneous invariants), classes and base points as JSON files
//! (`-` reads stdin). Exit codes: 0 success, 1 domain error, 2 usage error.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use higgs_moduli::{
    base_point, char_poly, check_diagrams, check_freeness, check_quotient_iso, descriptor,
    fiber_descriptor, hitchin, hitchin_map, is_singular, isomorphic, list_components,
    spectral_pattern, ComplexRational, ComponentFamily, GroupLabel, HiggsClass, Level,
};

#[derive(Parser)]
#[command(
    name = "higgs-moduli",
    about = "Moduli of Higgs bundles over an elliptic curve as finite quotients: descriptors, canonical classes, Hitchin fibres, and structure checks",
    version
)]
struct Cli {
    /// Output format; csv applies to tabular reports only.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Torsion level N of the finite model.
    #[arg(long = "model-n", global = true)]
    model_n: Option<u32>,

    /// Seed for randomized checkers.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

/// Defaults read from the file named by `HIGGS_MODULI_CONFIG`, overridden by
/// flags.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Config {
    #[serde(default = "default_model_n")]
    model_n: u32,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default)]
    format: Option<Format>,
    #[serde(default = "default_model_cap")]
    model_cap: u64,
}

fn default_model_n() -> u32 {
    3
}

fn default_seed() -> u64 {
    42
}

fn default_model_cap() -> u64 {
    hitchin::DEFAULT_MODEL_CAP
}

impl Default for Config {
    fn default() -> Self {
        Config {
            model_n: default_model_n(),
            seed: default_seed(),
            format: None,
            model_cap: default_model_cap(),
        }
    }
}

fn load_config() -> Result<Config> {
    match std::env::var_os("HIGGS_MODULI_CONFIG") {
        None => Ok(Config::default()),
        Some(path) => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading config {}", path.to_string_lossy()))?;
            serde_json::from_str(&text).context("parsing config")
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Quotient description of a moduli space.
    Descriptor {
        /// Group label as inline JSON, e.g. '{"family":"Sp","m":3}'.
        group: String,
        #[arg(long, value_enum, default_value = "higgs")]
        level: LevelArg,
    },
    /// Canonical form of a class read from a JSON file.
    Canon {
        /// Path to the class JSON (`-` for stdin).
        class: PathBuf,
    },
    /// Whether two classes are the same moduli point.
    Isom { a: PathBuf, b: PathBuf },
    /// Whether a class is a singular point of its moduli space.
    Singular { class: PathBuf },
    /// Hitchin base point and characteristic polynomial of a class.
    Hitchin { class: PathBuf },
    /// Spectral pattern, fibre structure, and finite-model fibre counts over
    /// a base point.
    Fiber {
        /// Group label as inline JSON.
        group: String,
        /// Path to the base-point JSON `{"t": [["re","im"], ...]}`.
        base: PathBuf,
    },
    /// Connected components of an orthogonal or special orthogonal family.
    Components {
        #[arg(value_enum)]
        family: FamilyArg,
        n: u32,
    },
    /// Run a verification suite; emits one report per line.
    Verify {
        #[command(subcommand)]
        suite: VerifySuite,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Bundle,
    Higgs,
}

impl From<LevelArg> for Level {
    fn from(value: LevelArg) -> Level {
        match value {
            LevelArg::Bundle => Level::Bundle,
            LevelArg::Higgs => Level::Higgs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    O,
    So,
}

#[derive(Subcommand)]
enum VerifySuite {
    /// Freeness of weighted torsion translations vs the gcd criterion.
    Freeness(FreenessArgs),
    /// Orbit counts of weighted torsion actions on finite models.
    QuotientIso(QuotientIsoArgs),
    /// Seeded diagram suite: sums, translation laws, base invariance,
    /// chart consistency.
    Diagrams(DiagramArgs),
}

#[derive(Args)]
struct FreenessArgs {
    /// Check a single level h (requires --weights).
    #[arg(long, conflicts_with = "h_max")]
    h: Option<u32>,
    /// Comma-separated weights for a single check.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    /// Sweep all h up to this bound.
    #[arg(long)]
    h_max: Option<u32>,
    /// Maximum tuple length in the sweep.
    #[arg(long, default_value_t = 3)]
    l_max: usize,
    /// Weights range over 0..=weight-max in the sweep.
    #[arg(long, default_value_t = 6)]
    weight_max: i64,
}

#[derive(Args)]
struct QuotientIsoArgs {
    #[arg(long)]
    h: u32,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Vec<i64>,
    /// Model level; must be a multiple of h.
    #[arg(long = "N")]
    n: u32,
}

#[derive(Args)]
struct DiagramArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
}

#[derive(Deserialize)]
struct BaseRepr {
    t: Vec<ComplexRational>,
}

#[derive(Serialize)]
struct HitchinOutput {
    group: GroupLabel,
    t: Vec<ComplexRational>,
    coefficients: Vec<ComplexRational>,
    char_poly: Vec<ComplexRational>,
}

#[derive(Serialize)]
struct FiberOutput {
    pattern: higgs_moduli::SpectralPattern,
    descriptor: higgs_moduli::FiberDescriptor,
    model: higgs_moduli::FiberModelReport,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse_label(text: &str) -> Result<GroupLabel> {
    serde_json::from_str(text).with_context(|| format!("parsing group label {text:?}"))
}

fn parse_class(path: &PathBuf) -> Result<HiggsClass> {
    let text = read_input(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing class {}", path.display()))
}

fn emit<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn run(cli: Cli, config: &Config) -> Result<()> {
    let format = cli.format.or(config.format).unwrap_or(Format::Json);
    let model_n = cli.model_n.unwrap_or(config.model_n);
    let seed = cli.seed.unwrap_or(config.seed);
    match cli.command {
        Command::Descriptor { group, level } => {
            let label = parse_label(&group)?;
            emit(&descriptor(&label, level.into())?)
        }
        Command::Canon { class } => emit(&parse_class(&class)?),
        Command::Isom { a, b } => {
            let result = isomorphic(&parse_class(&a)?, &parse_class(&b)?)?;
            emit(&result)
        }
        Command::Singular { class } => emit(&is_singular(&parse_class(&class)?)),
        Command::Hitchin { class } => {
            let class = parse_class(&class)?;
            let base = hitchin_map(&class);
            emit(&HitchinOutput {
                group: class.label().clone(),
                t: base.t_canonical().to_vec(),
                coefficients: base.coefficients().to_vec(),
                char_poly: char_poly(&base),
            })
        }
        Command::Fiber { group, base } => {
            let label = parse_label(&group)?;
            let repr: BaseRepr = serde_json::from_str(&read_input(&base)?)
                .with_context(|| format!("parsing base point {}", base.display()))?;
            let point = base_point(&label, &repr.t)?;
            emit(&FiberOutput {
                pattern: spectral_pattern(&point),
                descriptor: fiber_descriptor(&label, &point)?,
                model: hitchin::fiber_count_model_with_cap(
                    &label,
                    &point,
                    model_n,
                    config.model_cap,
                )?,
            })
        }
        Command::Components { family, n } => {
            let family = match family {
                FamilyArg::O => ComponentFamily::O,
                FamilyArg::So => ComponentFamily::So,
            };
            let labels = list_components(family, n)?;
            match format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = labels
                        .iter()
                        .map(|label| {
                            let d = descriptor(label, Level::Higgs)?;
                            Ok(json!({
                                "group": label,
                                "copies": d.copies,
                                "dim": d.dim,
                                "action": d.action,
                                "presentation": d.presentation,
                            }))
                        })
                        .collect::<Result<_>>()?;
                    emit(&rows)
                }
                Format::Csv => {
                    println!("family,n,k,a,w2,d,copies,dim");
                    for label in &labels {
                        let d = descriptor(label, Level::Higgs)?;
                        let (k, a, w2, deg) = match *label {
                            GroupLabel::O { k, a, .. } => {
                                (k.to_string(), a.to_string(), String::new(), String::new())
                            }
                            GroupLabel::So { w2, .. } => {
                                (String::new(), String::new(), w2.to_string(), String::new())
                            }
                            GroupLabel::So2 { d } => {
                                (String::new(), String::new(), String::new(), d.to_string())
                            }
                            _ => Default::default(),
                        };
                        println!(
                            "{},{},{},{},{},{},{},{}",
                            label.family_name(),
                            label.rank(),
                            k,
                            a,
                            w2,
                            deg,
                            d.copies,
                            d.dim
                        );
                    }
                    Ok(())
                }
            }
        }
        Command::Verify { suite } => match suite {
            VerifySuite::Freeness(args) => {
                let report_line = |report: &higgs_moduli::LemmaReport| -> Result<()> {
                    match format {
                        Format::Json => emit(report),
                        Format::Csv => {
                            let p = &report.parameters;
                            let verdict = match report.verdict {
                                higgs_moduli::Verdict::Confirmed => "confirmed",
                                higgs_moduli::Verdict::Refuted => "refuted",
                            };
                            println!(
                                "{},{},{},{},{verdict}",
                                p["h"],
                                p["weights"]
                                    .as_array()
                                    .map(|w| w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                                    .unwrap_or_default(),
                                p["r"],
                                p["free"],
                            );
                            Ok(())
                        }
                    }
                };
                if format == Format::Csv {
                    println!("h,weights,r,free,verdict");
                }
                match (args.h, args.h_max) {
                    (Some(h), None) => {
                        let weights = args
                            .weights
                            .ok_or_else(|| anyhow!("--h requires --weights"))?;
                        report_line(&check_freeness(h, &weights)?)?;
                    }
                    (None, Some(h_max)) => {
                        for h in 1..=h_max {
                            for len in 1..=args.l_max {
                                let mut weights = vec![0i64; len];
                                loop {
                                    report_line(&check_freeness(h, &weights)?)?;
                                    let mut carry = 0;
                                    loop {
                                        if carry == len {
                                            break;
                                        }
                                        weights[carry] += 1;
                                        if weights[carry] <= args.weight_max {
                                            break;
                                        }
                                        weights[carry] = 0;
                                        carry += 1;
                                    }
                                    if carry == len {
                                        break;
                                    }
                                }
                            }
                        }
                    }
                    _ => return Err(anyhow!("pass either --h with --weights, or --h-max")),
                }
                Ok(())
            }
            VerifySuite::QuotientIso(args) => {
                emit(&check_quotient_iso(args.h, &args.weights, args.n)?)
            }
            VerifySuite::Diagrams(args) => {
                emit(&check_diagrams(args.seed.unwrap_or(seed), args.samples)?)
            }
        },
    }
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let config = match load_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    match run(cli, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
