//! `vtalg`: verification suites, consequence checks, dimension tables,
//! evaluation and normal forms from the command line.
//!
//! Exit codes: 0 when everything passes, 1 for a verified failure, 2 for
//! usage, configuration or limit errors.

mod config;
mod run;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use vtalg::algebra::Algebra;
use vtalg::identity::eval::eval_tree;
use vtalg::identity::subst::linearize_identity;
use vtalg::identity::{is_consequence, preset};
use vtalg::named::{make_named, NamedId, RElem};
use vtalg::normal_form::{normal_form, DimTable};
use vtalg::terms::{parse_term, TermPoly};
use vtalg::Rational;

use crate::config::SuiteConfig;

#[derive(Parser)]
#[command(name = "vtalg", version, about = "Bounded-degree identity checking in vector-type superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a suite config and write its JSON report.
    Verify {
        config: PathBuf,
        /// Override every item's degree cap.
        #[arg(long)]
        cap: Option<usize>,
        /// Override the seed of random-mode items.
        #[arg(long)]
        seed: Option<u64>,
        /// Report path; defaults to the config's `output`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Suite items run in parallel.
        #[arg(long, env = "VTALG_JOBS", default_value_t = 1)]
        jobs: usize,
    },
    /// Decide whether a multilinear candidate follows from preset identities.
    Consequence {
        /// Comma-separated defining presets; omit for none.
        #[arg(long, value_delimiter = ',')]
        defining: Vec<String>,
        /// File holding the candidate term, or `preset:<name>`.
        candidate: String,
        degree: usize,
        /// Largest degree the engine accepts (5 by default, at most 6).
        #[arg(long, default_value_t = 5)]
        cap: usize,
        /// Letters bound to central elements.
        #[arg(long, value_delimiter = ',')]
        central: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the dimension table of a named algebra.
    Dims {
        algebra: String,
        max_degree: u32,
        /// Compare the text table with this file byte for byte.
        #[arg(long)]
        golden: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a term at a substitution in a named algebra.
    Eval {
        algebra: String,
        /// Term file, or `-` for stdin.
        term: String,
        /// JSON object from variable names to element texts or generator names.
        substitution: PathBuf,
    },
    /// Normal form of a term in the generators of a named algebra.
    Nf {
        algebra: String,
        /// Term text, or `@path` to read it from a file.
        term: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A verified negative outcome, as opposed to an error.
struct Failed;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Result<Result<(), Failed>> {
    match cmd {
        Command::Verify { config, cap, seed, out, jobs } => verify(&config, cap, seed, out, jobs),
        Command::Consequence { defining, candidate, degree, cap, central, out } => {
            consequence(&defining, &candidate, degree, cap, &central, out)
        }
        Command::Dims { algebra, max_degree, golden, format, out } => dims(&algebra, max_degree, golden, format, out),
        Command::Eval { algebra, term, substitution } => eval(&algebra, &term, &substitution).map(Ok),
        Command::Nf { algebra, term } => nf(&algebra, &term).map(Ok),
    }
}

fn verdict(pass: bool) -> Result<(), Failed> {
    if pass {
        Ok(())
    } else {
        Err(Failed)
    }
}

fn read_text(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))
}

/// Writes `text` to `out`, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn verify(path: &Path, cap: Option<usize>, seed: Option<u64>, out: Option<PathBuf>, jobs: usize) -> Result<Result<(), Failed>> {
    let mut cfg = SuiteConfig::load(path)?;
    for item in &mut cfg.items {
        item.override_with(cap, seed);
    }
    cfg.validate()?;
    let out = out.or_else(|| {
        cfg.output.as_ref().map(|o| {
            let p = PathBuf::from(o);
            if p.is_relative() {
                path.parent().unwrap_or(Path::new(".")).join(p)
            } else {
                p
            }
        })
    });
    let progress = |r: &run::ItemReport, secs: f64| {
        for s in &r.reports {
            eprintln!("{} [{secs:.1}s]", s.summary());
        }
    };
    let report = run::run_suite(&cfg, jobs, &progress)?;
    emit(out.as_deref(), &to_json(&report)?)?;
    eprintln!("suite {}: {:?}", report.suite, report.verdict);
    Ok(verdict(report.passed()))
}

fn consequence(
    defining: &[String],
    candidate: &str,
    degree: usize,
    cap: usize,
    central: &[String],
    out: Option<PathBuf>,
) -> Result<Result<(), Failed>> {
    let presets = defining.iter().filter(|d| !d.is_empty()).map(|d| preset(d)).collect::<Result<Vec<_>, _>>()?;
    let mut central: BTreeSet<String> = central.iter().cloned().collect();
    let mut f = match candidate.strip_prefix("preset:") {
        Some(name) => {
            let p = preset(name)?;
            if p.identities.len() != 1 {
                bail!("preset `{name}` holds {} identities; pick one", p.identities.len());
            }
            central.extend(p.central.iter().cloned());
            p.identities[0].poly.clone()
        }
        None => parse_term::<Rational>(read_text(candidate)?.trim())?,
    };
    if !f.is_multilinear() {
        let (g, c) = linearize_identity(&f, &central)?;
        eprintln!("candidate is not multilinear; using its full linearization");
        f = g;
        central = c;
    }
    let cert = is_consequence(&f, &central, &presets, degree, cap)?;
    if let Some(w) = &cert.warning {
        eprintln!("warning: {w}");
    }
    emit(out.as_deref(), &to_json(&cert)?)?;
    eprintln!("{}", if cert.is_member() { "MEMBER" } else { "NOT_MEMBER" });
    Ok(verdict(cert.is_member()))
}

fn dims(algebra: &str, max: u32, golden: Option<PathBuf>, format: Format, out: Option<PathBuf>) -> Result<Result<(), Failed>> {
    let id: NamedId = algebra.parse()?;
    let table = DimTable::compute(&id, max)?;
    let text = match format {
        Format::Text => table.to_text(),
        Format::Json => to_json(&table)?,
    };
    emit(out.as_deref(), &text)?;
    let Some(g) = golden else { return Ok(Ok(())) };
    let expected = std::fs::read_to_string(&g).with_context(|| format!("reading {}", g.display()))?;
    match table.compare_golden(&expected) {
        Ok(()) => {
            eprintln!("matches {}", g.display());
            Ok(Ok(()))
        }
        Err(m) => {
            eprintln!("mismatch against {}: {m}", g.display());
            Ok(Err(Failed))
        }
    }
}

fn named(algebra: &str) -> Result<vtalg::named::NamedAlgebra> {
    Ok(make_named(&algebra.parse()?)?)
}

fn eval(algebra: &str, term: &str, subst_path: &Path) -> Result<()> {
    let n = named(algebra)?;
    let real = n.realization();
    let f: TermPoly<Rational> = parse_term(read_text(term)?.trim())?;
    let raw: BTreeMap<String, String> = serde_json::from_str(&std::fs::read_to_string(subst_path)?)
        .with_context(|| format!("{} must be a JSON object of strings", subst_path.display()))?;
    let mut subst: BTreeMap<String, RElem> = BTreeMap::new();
    for (var, text) in raw {
        let e = match n.generator(text.trim()) {
            Ok(g) => g.elem.clone(),
            Err(_) => real.parse_elem(&text).with_context(|| format!("value of `{var}`"))?,
        };
        subst.insert(var, e);
    }
    // terms are read in the algebra itself, without parity checks
    let mut memo = HashMap::new();
    let mut value = real.zero();
    for (t, c) in f.terms() {
        let v = eval_tree(real, t, &subst, &mut memo)?;
        real.add_scaled_into(&mut value, c, &v);
    }
    println!("{}", real.render(&value));
    Ok(())
}

fn nf(algebra: &str, term: &str) -> Result<()> {
    let n = named(algebra)?;
    let text = match term.strip_prefix('@') {
        Some(p) => read_text(p)?,
        None => term.to_string(),
    };
    let f: TermPoly<Rational> = parse_term(text.trim())?;
    let r = normal_form(&f, &n)?;
    println!("{}", r.text);
    println!("{}", r.expansion_text());
    Ok(())
}
