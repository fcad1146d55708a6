//! `revcheck`: command-line front end for the reversibility deciders.
//!
//! Exit codes: 0 positive, 1 negative, 2 inconclusive, 3 input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use revcore::cardinal::{decide_reversible, CardinalSequence};
use revcore::family::{decide_family, DecideOptions, StructureFamily};
use revcore::ordinal::{classify_csb_limit, decide_union_reversibility, Classification, Expr, OtpFamily};
use revcore::structure::{components, find_morphisms, is_reversible_bruteforce, BinaryStructure, MorphismKind, DEFAULT_GUARD};
use revcore::wellfounded::{
    certify_by_invariant, invariant_fibers, is_well_founded, otp_fibers, FiniteRelation, Invariant,
};
use revcore::Status;

#[derive(Parser)]
#[command(name = "revcheck", version, about = "Decide reversibility of disconnected binary structures")]
struct Cli {
    /// Output format: `text` adds a prose summary, `structured` prints only key-value lines
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Suppress prose; evidence is always printed
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Brute-force reversibility of a finite structure
    CheckStructure {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Connectivity components of a structure
    Components { file: PathBuf },
    /// Enumerate morphisms between two structures
    Morphisms {
        source: PathBuf,
        target: PathBuf,
        /// hom, mono, emb, cond or iso
        #[arg(long, default_value = "hom")]
        kind: MorphismKind,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decide reversibility of a template family
    DecideFamily {
        file: PathBuf,
        /// Largest number of parts in a merge search
        #[arg(long)]
        max_parts: Option<usize>,
        /// Largest template size searched exhaustively
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: usize,
    },
    /// Decide reversibility of a sequence of cardinals
    DecideCardinals { file: PathBuf },
    /// Classify an order-type expression as a CSB order of a limit type
    ClassifyOtp { expr: String },
    /// Decide reversibility of a disjoint union of order types
    DecideOtpUnion { file: PathBuf },
    /// Check that a finite relation is well founded
    WfCheck { file: PathBuf },
    /// Certify reversibility by an invariant with finite fibers
    Certify {
        file: PathBuf,
        /// size, longest-chain (template families) or theta0, theta1, theta (order-type families)
        #[arg(long, default_value = "size")]
        invariant: String,
    },
}

struct Report {
    status: Status,
    summary: String,
    body: String,
}

impl Report {
    fn new(status: Status, summary: impl Into<String>, body: impl Into<String>) -> Self {
        Report {
            status,
            summary: summary.into(),
            body: body.into(),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load<T, E: std::error::Error + Send + Sync + 'static>(path: &Path, parse: impl Fn(&str) -> Result<T, E>) -> Result<T> {
    parse(&read(path)?).with_context(|| path.display().to_string())
}

fn status_of(flag: bool) -> Status {
    if flag {
        Status::Positive
    } else {
        Status::Negative
    }
}

fn run(command: Command) -> Result<Report> {
    Ok(match command {
        Command::CheckStructure { file, guard } => {
            let x = load(&file, BinaryStructure::parse)?;
            match is_reversible_bruteforce(&x, guard) {
                Ok(r) => {
                    let mut body = format!(
                        "status {}\ncondensations {}\nautomorphisms {}\n",
                        status_of(r.reversible),
                        r.condensations,
                        r.automorphisms
                    );
                    if let Some(c) = &r.counterexample {
                        for (v, &w) in c.map.iter().enumerate() {
                            body += &format!("map {} -> {}\n", x.name(v), x.name(w));
                        }
                        body += &format!("non-edge {} {}\n", x.name(c.pair.0), x.name(c.pair.1));
                    }
                    let summary = if r.reversible { "reversible" } else { "not reversible" };
                    Report::new(status_of(r.reversible), summary, body)
                }
                Err(e) => Report::new(Status::Inconclusive, e.to_string(), "status inconclusive\n"),
            }
        }
        Command::Components { file } => {
            let x = load(&file, BinaryStructure::parse)?;
            let parts = components(&x);
            let mut body = format!("components {}\n", parts.len());
            for block in parts.blocks() {
                let names: Vec<&str> = block.iter().map(|&v| x.name(v)).collect();
                body += &format!("component {}\n", names.join(" "));
            }
            Report::new(Status::Positive, format!("{} component(s)", parts.len()), body)
        }
        Command::Morphisms { source, target, kind, limit } => {
            let x = load(&source, BinaryStructure::parse)?;
            let y = load(&target, BinaryStructure::parse)?;
            let maps = find_morphisms(&x, &y, kind, limit);
            let mut body = format!("kind {}\ncount {}\n", kind.short_name(), maps.len());
            for m in &maps {
                let pairs: Vec<String> = m.iter().enumerate().map(|(v, &w)| format!("{}->{}", x.name(v), y.name(w))).collect();
                body += &format!("morphism {}\n", pairs.join(" "));
            }
            Report::new(status_of(!maps.is_empty()), format!("{} {kind}(s) found", maps.len()), body)
        }
        Command::DecideFamily { file, max_parts, guard } => {
            let fam = load(&file, StructureFamily::parse)?;
            let verdict = decide_family(&fam, DecideOptions { max_parts, guard });
            let summary = match verdict.status {
                Status::Positive => "reversible",
                Status::Negative => "not reversible",
                Status::Inconclusive => "undecided",
            };
            Report::new(verdict.status, summary, verdict.to_text(&fam))
        }
        Command::DecideCardinals { file } => {
            let seq = load(&file, CardinalSequence::parse)?;
            let verdict = decide_reversible(&seq);
            let summary = if verdict.reversible { "reversible" } else { "not reversible" };
            Report::new(verdict.status(), summary, verdict.to_text())
        }
        Command::ClassifyOtp { expr } => {
            let e = Expr::parse(&expr).map_err(|err| anyhow!("expression `{expr}`: {err}"))?;
            match classify_csb_limit(&e) {
                Classification::Yes(sum) => Report::new(
                    Status::Positive,
                    "CSB of a limit type",
                    format!("status positive\nclass yes\nnormal-form {sum}\n"),
                ),
                Classification::No(r) => {
                    let kind = if r.definitive { "definitive" } else { "rewrite-exhaustion" };
                    let body = format!(
                        "status negative\nclass no\nkind {kind}\nreason {}\noffending {}\n",
                        r.message, r.offending
                    );
                    Report::new(Status::Negative, format!("not in the class: {}", r.message), body)
                }
                Classification::Unsupported(err) => Report::new(
                    Status::Inconclusive,
                    err.to_string(),
                    format!("status inconclusive\nclass unsupported\nreason {err}\n"),
                ),
            }
        }
        Command::DecideOtpUnion { file } => {
            let fam = load(&file, OtpFamily::parse)?;
            let verdict = decide_union_reversibility(&fam);
            let summary = if verdict.reversible { "reversible" } else { "not reversible" };
            Report::new(verdict.status(), summary, verdict.to_text())
        }
        Command::WfCheck { file } => {
            let r = load(&file, FiniteRelation::parse)?;
            let report = is_well_founded(&r);
            let mut body = format!("status {}\n", status_of(report.well_founded));
            if let Some(c) = &report.cycle {
                let names: Vec<&str> = c.iter().map(|&v| r.carrier()[v].as_str()).collect();
                body += &format!("cycle {}\n", names.join(" "));
            }
            let summary = if report.well_founded { "well founded" } else { "has a cycle" };
            Report::new(status_of(report.well_founded), summary, body)
        }
        Command::Certify { file, invariant } => {
            let (fibers, names) = if let Some(theta) = Invariant::<BinaryStructure>::by_name(&invariant) {
                let fam = load(&file, StructureFamily::parse)?;
                let names = fam.templates().iter().map(|t| t.name.clone()).collect::<Vec<_>>();
                (invariant_fibers(&fam, &theta)?, names)
            } else if let Some(theta) = Invariant::<Expr>::by_name(&invariant) {
                let fam = load(&file, OtpFamily::parse)?;
                let names = fam.members().iter().map(|(s, _)| s.to_string().replace(' ', "")).collect::<Vec<_>>();
                (otp_fibers(&fam, &theta)?, names)
            } else {
                return Err(anyhow!("unknown invariant `{invariant}`"));
            };
            match certify_by_invariant(&fibers, &invariant) {
                Some(cert) => Report::new(Status::Positive, "reversible (certified)", cert.to_text(&names)),
                None => {
                    let mut body = format!("status inconclusive\ninvariant {invariant}\n");
                    for f in fibers.iter().filter(|f| f.is_infinite()) {
                        let members: Vec<&str> = f.members.iter().map(|&i| names[i].as_str()).collect();
                        body += &format!("infinite-fiber {} members {}\n", f.value, members.join(" "));
                    }
                    Report::new(Status::Inconclusive, "no certificate: some fiber is infinite", body)
                }
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(report) => {
            if cli.format == Format::Text && !cli.quiet {
                println!("{}", report.summary);
            }
            print!("{}", report.body);
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
