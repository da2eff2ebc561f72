//! `folint`: decide whether a plane foliation has a rational first integral.
//!
//! Exit status: 0 integral found / property true, 1 no integral / property
//! false, 2 inconclusive, 3 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use folint_core::cluster::{parse_configuration, write_configuration, Configuration, DivisorClass};
use folint_core::engine::{algorithm1, pipeline, Caps, FirstIntegral, PipelineReport, Verdict};
use folint_core::io::parse_foliation;
use folint_core::linsys::ConditionSystem;
use folint_core::numfield::Field;
use folint_core::parse::parse_poly;
use folint_core::polyforms::{is_first_integral, is_invariant_curve, HomogeneousForm, ProjectiveOneForm};
use folint_core::resolve::{build_configuration, ResolveError, ResolveOptions, DEFAULT_DEPTH_CAP};

#[derive(Parser, Debug)]
#[command(name = "folint", version, about = "Rational first integrals of plane foliations")]
struct Cli {
    /// Largest degree of invariant curves searched for.
    #[arg(long = "dmax", global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    d_max: u32,
    /// Largest multiple of the orthogonal class examined.
    #[arg(long = "lmax", global = true, default_value_t = 60, value_parser = clap::value_parser!(u32).range(1..))]
    lambda_max: u32,
    /// Blow-up depth limit for resolution.
    #[arg(long = "depth", global = true, default_value_t = DEFAULT_DEPTH_CAP as u32, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    /// Print the candidate-by-candidate log of the curve search.
    #[arg(long, global = true)]
    trace: bool,
    /// Print stable `key=value` lines instead of prose.
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Resolve the foliation and print its configuration of dicritical points.
    Resolve {
        foliation: PathBuf,
        /// Skip singular points that are not defined over the base field.
        #[arg(long)]
        partial: bool,
    },
    /// Decide whether a rational first integral exists.
    Decide {
        foliation: PathBuf,
        /// Configuration file; computed by resolution when absent.
        configuration: Option<PathBuf>,
    },
    /// Decide whether a rational first integral of the given degree exists.
    DecideDegree {
        degree: u32,
        foliation: PathBuf,
        configuration: Option<PathBuf>,
    },
    /// Check that F/G is a first integral.
    CheckIntegral { f: String, g: String, foliation: PathBuf },
    /// Check that the curve G = 0 is invariant.
    Invariant { g: String, foliation: PathBuf },
    /// Check whether a configuration is P-sufficient.
    Psufficient { configuration: PathBuf },
    /// Dimension of the system of degree-d curves with multiplicities e.
    H0 {
        configuration: PathBuf,
        degree: i64,
        #[arg(allow_negative_numbers = true)]
        multiplicities: Vec<i64>,
    },
}

/// An error attributed to an input file.
struct InputFailure(String);

impl<E: std::fmt::Display> From<(&Path, E)> for InputFailure {
    fn from((path, e): (&Path, E)) -> Self {
        InputFailure(format!("{}: {e}", path.display()))
    }
}

fn read(path: &Path) -> Result<String, InputFailure> {
    std::fs::read_to_string(path).map_err(|e| (path, e).into())
}

fn load_foliation(path: &Path) -> Result<ProjectiveOneForm, InputFailure> {
    parse_foliation(&read(path)?).map_err(|e| (path, e).into())
}

fn load_configuration(path: &Path, field: Option<&Field>) -> Result<Configuration, InputFailure> {
    parse_configuration(&read(path)?, field).map_err(|e| (path, e).into())
}

fn parse_form(text: &str, field: &Field) -> Result<HomogeneousForm, InputFailure> {
    let p = parse_poly(text, field).map_err(|e| InputFailure(format!("'{text}': {e}")))?;
    HomogeneousForm::from_poly(p).map_err(|e| InputFailure(format!("'{text}': {e}")))
}

struct Output {
    machine: bool,
}

impl Output {
    fn line(&self, key: &str, human: impl std::fmt::Display) {
        if self.machine {
            println!("{key}={human}");
        } else {
            println!("{human}");
        }
    }

    fn kv(&self, key: &str, value: impl std::fmt::Display) {
        if self.machine {
            println!("{key}={value}");
        } else {
            println!("{key}: {value}");
        }
    }

    fn verdict(&self, v: &Verdict) -> ExitCode {
        match v {
            Verdict::Integral(fi) => {
                self.kv("verdict", "integral");
                self.integral(fi);
                ExitCode::from(0)
            }
            Verdict::NoIntegral(why) => {
                self.kv("verdict", "no-integral");
                self.kv("reason", why);
                ExitCode::from(1)
            }
            Verdict::Inconclusive(why) => {
                self.kv("verdict", "inconclusive");
                self.kv("reason", why);
                ExitCode::from(2)
            }
        }
    }

    fn integral(&self, fi: &FirstIntegral) {
        self.kv("numerator", fi.numerator());
        self.kv("denominator", fi.denominator());
        self.kv("degree", fi.degree());
    }

    fn boolean(&self, key: &str, value: bool) -> ExitCode {
        self.kv(key, value);
        ExitCode::from(if value { 0 } else { 1 })
    }
}

fn configuration_for(
    omega: &ProjectiveOneForm,
    path: Option<&Path>,
    depth: usize,
    out: &Output,
) -> Result<Result<Configuration, ExitCode>, InputFailure> {
    if let Some(p) = path {
        return Ok(Ok(load_configuration(p, Some(omega.field()))?));
    }
    let opts = ResolveOptions {
        depth_cap: depth,
        partial: false,
    };
    match build_configuration(omega, &opts) {
        Ok(r) => Ok(Ok(r.configuration)),
        Err(e) => Ok(Err(resolve_failure(&e, out))),
    }
}

fn resolve_failure(e: &ResolveError, out: &Output) -> ExitCode {
    out.kv("verdict", "inconclusive");
    if let ResolveError::FieldExtensionRequired { certificate } = e {
        out.kv("extension", certificate);
    }
    out.kv("reason", e);
    ExitCode::from(2)
}

fn print_report(report: &PipelineReport, out: &Output, trace: bool) {
    if let Some(search) = &report.search {
        if trace {
            for l in &search.trace {
                out.line("trace", l);
            }
        }
        for c in &search.curves {
            out.kv("curve", format!("{} [{}]", c.form, c.class));
        }
        if let Some(Some(dual)) = search.duals.iter().rev().find(|d| d.is_some()) {
            out.kv("final-dual-rays", dual.generators().len());
        }
    }
    if let Some(t) = &report.t {
        out.kv("T", t);
    }
}

fn run(cli: Cli) -> Result<ExitCode, InputFailure> {
    let out = Output { machine: cli.machine };
    let caps = Caps {
        d_max: cli.d_max,
        lambda_max: cli.lambda_max,
    };
    let depth = cli.depth as usize;
    Ok(match &cli.command {
        Command::Resolve { foliation, partial } => {
            let omega = load_foliation(foliation)?;
            let opts = ResolveOptions {
                depth_cap: depth,
                partial: *partial,
            };
            match build_configuration(&omega, &opts) {
                Ok(r) => {
                    for f in &r.skipped {
                        out.kv("skipped", f);
                    }
                    if out.machine {
                        out.kv("points", r.configuration.len());
                        out.kv("dicritical", r.configuration.dicritical_count());
                    }
                    print!("{}", write_configuration(&r.configuration));
                    ExitCode::from(0)
                }
                Err(e) => resolve_failure(&e, &out),
            }
        }
        Command::Decide {
            foliation,
            configuration,
        } => {
            let omega = load_foliation(foliation)?;
            let config = match configuration_for(&omega, configuration.as_deref(), depth, &out)? {
                Ok(c) => c,
                Err(code) => return Ok(code),
            };
            let report = pipeline(&omega, &config, caps, cli.trace);
            print_report(&report, &out, cli.trace);
            out.verdict(&report.verdict)
        }
        Command::DecideDegree {
            degree,
            foliation,
            configuration,
        } => {
            if *degree == 0 {
                return Err(InputFailure("degree must be positive".into()));
            }
            let omega = load_foliation(foliation)?;
            let config = match configuration_for(&omega, configuration.as_deref(), depth, &out)? {
                Ok(c) => c,
                Err(code) => return Ok(code),
            };
            out.verdict(&algorithm1(&omega, &config, *degree))
        }
        Command::CheckIntegral { f, g, foliation } => {
            let omega = load_foliation(foliation)?;
            let f = parse_form(f, omega.field())?;
            let g = parse_form(g, omega.field())?;
            if f.degree() != g.degree() {
                return Err(InputFailure("F and G must have the same degree".into()));
            }
            out.boolean("first-integral", is_first_integral(&f, &g, &omega))
        }
        Command::Invariant { g, foliation } => {
            let omega = load_foliation(foliation)?;
            let g = parse_form(g, omega.field())?;
            out.boolean("invariant", is_invariant_curve(&g, &omega))
        }
        Command::Psufficient { configuration } => {
            let config = load_configuration(configuration, None)?;
            out.boolean("p-sufficient", config.is_p_sufficient())
        }
        Command::H0 {
            configuration,
            degree,
            multiplicities,
        } => {
            let config = load_configuration(configuration, None)?;
            if multiplicities.len() != config.len() {
                return Err(InputFailure(format!(
                    "{} multiplicities given, the configuration has {} points",
                    multiplicities.len(),
                    config.len()
                )));
            }
            let class = DivisorClass::new(*degree, multiplicities.clone());
            let sys = ConditionSystem::new(&class, &config);
            out.kv("h0", sys.as_ref().map_or(0, |s| s.dimension()));
            if let Some(sys) = sys {
                for b in sys.basis() {
                    out.kv("basis", b);
                }
            }
            ExitCode::from(0)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(InputFailure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
