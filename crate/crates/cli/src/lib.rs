//! The `seidel` command line. All computation lives in `seidel_core`;
//! this crate parses arguments and renders results.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use seidel_core::catalog::{self, CatalogError, SpecBundle};
use seidel_core::literal::{parse_element, parse_gamma};
use seidel_core::num::{format_rational, parse_rational, Rational};
use seidel_core::seidel::{self, describe_witness, InvertOutcome, OrderBound, SeidelError};
use seidel_core::verify::{self, DEFAULT_SEED, SUITES};

#[derive(Debug, Parser)]
#[command(name = "seidel", version, about = "Quantum homology and Seidel elements over Z/2")]
pub struct Cli {
    /// Seed for the randomised verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output style: prose, or one `key=value` record per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Lines,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List builtin rings and verification suites.
    Info,
    /// Load and validate a ring spec, then summarise it.
    Check { spec: String },
    /// Quantum product of two elements.
    Product { spec: String, x: String, y: String },
    /// Inverse of a homogeneous element up to an energy cutoff.
    Invert {
        spec: String,
        x: String,
        #[arg(long, value_parser = rational_arg)]
        cutoff: Rational,
    },
    /// Seidel element of the m-th power of a catalogued loop.
    Power {
        spec: String,
        #[arg(value_name = "LOOP")]
        loop_name: String,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_parser = rational_arg)]
        cutoff: Rational,
    },
    /// First power of a loop whose Seidel element lies in tau(Gamma).
    OrderBound {
        spec: String,
        #[arg(value_name = "LOOP")]
        loop_name: String,
        #[arg(long = "max", value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
        #[arg(long, value_parser = rational_arg)]
        cutoff: Rational,
    },
    /// The element [M] (x) <gamma>.
    Tau { spec: String, gamma: String },
    /// Run a verification suite (or `all`).
    Verify { suite: String },
    /// Print the spec file of a ring.
    Export { spec: String },
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Validation(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SeidelError> for Failure {
    fn from(e: SeidelError) -> Self {
        match e {
            SeidelError::CutoffTooSmall { .. } | SeidelError::Inconsistent(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Ordered output records; rendered as prose or as `key=value` lines.
struct Records {
    format: Format,
    lines: Vec<(String, String)>,
    text: Vec<String>,
}

impl Records {
    fn new(format: Format) -> Self {
        Records {
            format,
            lines: Vec::new(),
            text: Vec::new(),
        }
    }

    fn both(&mut self, key: &str, value: impl Into<String>, text: impl Into<String>) {
        self.lines.push((key.to_string(), value.into()));
        self.text.push(text.into());
    }

    fn field(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into();
        let text = format!("{key}: {value}");
        self.both(key, value, text);
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        match self.format {
            Format::Text => {
                for t in &self.text {
                    writeln!(out, "{t}")?;
                }
            }
            Format::Lines => {
                for (k, v) in &self.lines {
                    writeln!(out, "{k}={v}")?;
                }
            }
        }
        Ok(())
    }
}

fn load(spec: &str) -> Result<SpecBundle, Failure> {
    Ok(catalog::resolve(spec)?)
}

fn find_loop<'a>(bundle: &'a SpecBundle, name: &str) -> Result<&'a seidel::LoopElement, Failure> {
    bundle.loop_named(name).ok_or_else(|| {
        let known: Vec<&str> = bundle.loops.iter().map(|l| l.name()).collect();
        Failure::Usage(format!(
            "ring `{}` has no loop `{name}` (known: {})",
            bundle.spec.name(),
            if known.is_empty() { "none".to_string() } else { known.join(", ") }
        ))
    })
}

fn execute(cli: &Cli, rec: &mut Records) -> Result<(), Failure> {
    match &cli.command {
        Command::Info => {
            rec.field("version", env!("CARGO_PKG_VERSION"));
            rec.field("builtins", "cp1, cp2, cp1xcp1[:lambda], f2-as-s2xs2[:lambda] (lambda > 1, default 2)");
            rec.field("suites", format!("{}, all", SUITES.join(", ")));
        }
        Command::Check { spec } => {
            let bundle = load(spec)?;
            for (k, v) in catalog::describe(&bundle) {
                rec.field(k, v);
            }
            for l in &bundle.loops {
                let value = format!("{} q={} I={}", l.name(), bundle.spec.render(l.q()), l.maslov());
                rec.both("loop", value.clone(), format!("loop: {value}"));
            }
            rec.field("valid", "true");
        }
        Command::Product { spec, x, y } => {
            let bundle = load(spec)?;
            let s = &bundle.spec;
            let x = parse_element(s, x).map_err(|e| Failure::Usage(e.to_string()))?;
            let y = parse_element(s, y).map_err(|e| Failure::Usage(e.to_string()))?;
            let p = s.product(&x, &y).map_err(|e| Failure::Usage(e.to_string()))?;
            let r = s.render(&p);
            rec.both("result", r.clone(), r);
        }
        Command::Invert { spec, x, cutoff } => {
            let bundle = load(spec)?;
            let s = &bundle.spec;
            let x = parse_element(s, x).map_err(|e| Failure::Usage(e.to_string()))?;
            match seidel::invert(s, &x, cutoff)? {
                InvertOutcome::Inverse(y) => {
                    let r = s.render(&y);
                    rec.lines.push(("outcome".into(), "inverse".into()));
                    rec.both("result", r.clone(), format!("inverse: {r}"));
                }
                InvertOutcome::NotInvertible(w) => {
                    rec.lines.push(("outcome".into(), "not-invertible".into()));
                    rec.lines.push(("level".into(), format_rational(&w.level)));
                    rec.lines.push(("rank".into(), format!("{}/{}", w.rank, w.size)));
                    rec.text.push(format!("not invertible: no solution at {}", describe_witness(s, &w)));
                }
                InvertOutcome::Undetermined { requested, achieved } => {
                    rec.lines.push(("outcome".into(), "undetermined".into()));
                    rec.lines.push(("requested".into(), requested.to_string()));
                    rec.lines.push(("achieved".into(), achieved.to_string()));
                    rec.text.push(format!(
                        "undetermined: the input only certifies energies up to {achieved}, requested {requested}"
                    ));
                }
            }
        }
        Command::Power {
            spec,
            loop_name,
            m,
            cutoff,
        } => {
            let bundle = load(spec)?;
            let l = find_loop(&bundle, loop_name)?;
            let p = seidel::loop_power(l, *m, cutoff)?;
            rec.field("q", bundle.spec.render(p.q()));
            rec.field("maslov", p.maslov().to_string());
        }
        Command::OrderBound {
            spec,
            loop_name,
            max,
            cutoff,
        } => {
            let bundle = load(spec)?;
            let l = find_loop(&bundle, loop_name)?;
            match seidel::order_lower_bound(l, *max, cutoff)? {
                OrderBound::FirstTauPower(k, g) => {
                    rec.lines.push(("verdict".into(), "first-tau-power".into()));
                    rec.lines.push(("k".into(), k.to_string()));
                    rec.lines.push(("gamma".into(), g.to_string()));
                    rec.text.push(format!(
                        "first tau power at k = {k} with gamma = {g}; consistent with order {k}, not a proof of it"
                    ));
                }
                OrderBound::NoneUpTo(k) => {
                    rec.lines.push(("verdict".into(), "none-up-to".into()));
                    rec.lines.push(("k".into(), k.to_string()));
                    rec.text.push(format!(
                        "no tau power up to k = {k}: [g]^k is nontrivial in pi_1(Ham) for 1 <= k <= {k}"
                    ));
                }
            }
        }
        Command::Tau { spec, gamma } => {
            let bundle = load(spec)?;
            let s = &bundle.spec;
            let g = parse_gamma(s.gamma(), gamma).map_err(|e| Failure::Usage(e.to_string()))?;
            let r = s.render(&seidel::tau(s, &g));
            rec.both("result", r.clone(), r);
        }
        Command::Verify { suite } => {
            let reports = verify::run_suite(suite, cli.seed).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut failed = Vec::new();
            let mut total = 0;
            for report in &reports {
                for c in &report.checks {
                    total += 1;
                    let status = if c.passed { "pass" } else { "fail" };
                    let line = format!("{}: {}", report.suite, c.label);
                    rec.both(
                        status,
                        line.clone(),
                        format!("{} {line} [{}]", status.to_uppercase(), c.detail),
                    );
                    if !c.passed {
                        failed.push(format!("{line}: {}", c.detail));
                    }
                }
            }
            rec.field("passed", format!("{}/{total}", total - failed.len()));
            if let Some(first) = failed.first() {
                return Err(Failure::Verification(format!("first failure: {first}")));
            }
        }
        Command::Export { spec } => {
            let bundle = load(spec)?;
            let text = catalog::serialize_spec(&bundle)?;
            rec.lines.push(("spec".into(), text.trim_end().replace('\n', "\\n")));
            rec.text.push(text.trim_end().to_string());
        }
    }
    Ok(())
}

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut rec = Records::new(cli.format);
    let result = execute(cli, &mut rec);
    let _ = rec.write(out);
    match result {
        Ok(()) => 0,
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "seidel: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "seidel: {msg}");
            2
        }
    }
}
