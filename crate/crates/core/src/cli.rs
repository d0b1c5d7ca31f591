//! Command implementations behind the `geocond` binary.
//!
//! Every command that prints JSON prints a mass document (`frame` + `masses`)
//! with extra fields, so its output can be fed back as input. Exit codes:
//! 0 on success, 1 for usage, I/O and input parse errors, 2 when a
//! mathematical precondition of the requested operation fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use serde::Serialize;

use crate::classical::{self, ConditionalTable};
use crate::combination::{self, ConditioningRule};
use crate::error::Error;
use crate::frame::{Frame, Subset};
use crate::io::{mass_map, round_output, MassDocument};
use crate::lp::{self, ConditionalSimplex, SimplexKind};
use crate::mass::{inverse_subset_sums, MassFunction, MassVector, SignedMassFunction};
use crate::oracle::{self, Norm};
use crate::plot;
use crate::NORMALIZATION_TOL;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "geocond", version, about = "Conditioning and combination of belief functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Condition a mass function on an event.
    Condition {
        input: PathBuf,
        #[arg(long, value_enum)]
        rule: Rule,
        /// Space-separated element names, e.g. "x y".
        #[arg(long)]
        event: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Belief and plausibility of every event under every classical operator.
    Compare {
        input: PathBuf,
        #[arg(long)]
        event: String,
        /// Slack allowed in the nested-chain check.
        #[arg(long, default_value_t = NORMALIZATION_TOL)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Combine two mass functions on the same frame.
    Combine {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum)]
        rule: CombineRule,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the numerical oracles against the closed forms for one event.
    Verify {
        input: PathBuf,
        #[arg(long)]
        event: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Slack allowed when comparing closed forms with the oracles.
        #[arg(long, default_value_t = NORMALIZATION_TOL)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Ternary scene of the conditional sets for a 3-element frame.
    PlotTernary {
        input: PathBuf,
        /// Two-element event.
        #[arg(long)]
        event: String,
        /// Add the belief-space L2 point and L∞ barycentre.
        #[arg(long)]
        belief_space: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Random mass function on an anonymous frame.
    Random {
        /// Frame size.
        n: usize,
        /// Number of focal elements.
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Dempster,
    Credal,
    Suppes,
    Conjunctive,
    Disjunctive,
    L1,
    L2,
    Linf,
    L2Belief,
    LinfBaryBelief,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CombineRule {
    Dempster,
    Conjunctive,
    Disjunctive,
    /// Combination induced by L2 conditioning.
    L2,
    /// Combination induced by Suppes–Zanotti conditioning.
    Suppes,
    /// Dempster conditioning applied focal element by focal element.
    DempsterInduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Svg,
}

/// A failure together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self { code: EXIT_DOMAIN, message: message.into() }
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (program name first), runs the command and writes its output.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_INPUT
            }
        },
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn execute(command: &Command) -> CmdResult<String> {
    match command {
        Command::Condition { input, rule, event, format } => {
            expect_text(*format)?;
            let m = load(input)?;
            let event = parse_event(&m, event)?;
            cmd_condition(&m, *rule, event).map(|doc| to_json(&doc))
        }
        Command::Compare { input, event, tolerance, format } => {
            expect_text(*format)?;
            let m = load(input)?;
            let event = parse_event(&m, event)?;
            cmd_compare(&m, event, *tolerance).map(|doc| to_json(&doc))
        }
        Command::Combine { first, second, rule, format } => {
            expect_text(*format)?;
            let (m1, m2) = (load(first)?, load(second)?);
            if m1.frame() != m2.frame() {
                return Err(Failure::input("the two inputs are defined on different frames"));
            }
            cmd_combine(&m1, &m2, *rule).map(|doc| to_json(&doc))
        }
        Command::Verify { input, event, samples, seed, tolerance, format } => {
            expect_text(*format)?;
            let m = load(input)?;
            let event = parse_event(&m, event)?;
            cmd_verify(&m, event, *samples, *seed, *tolerance).map(|doc| to_json(&doc))
        }
        Command::PlotTernary { input, event, belief_space, format } => {
            let m = load(input)?;
            let event = parse_event(&m, event)?;
            let scene = plot::ternary_scene(&m, event, *belief_space).map_err(|e| Failure::domain(e.to_string()))?;
            match format {
                Format::Csv => Ok(scene.to_csv()),
                Format::Svg => Ok(scene.to_svg()),
                Format::Text => Err(Failure::input("plot-ternary writes csv or svg")),
            }
        }
        Command::Random { n, k, seed, format } => {
            expect_text(*format)?;
            cmd_random(*n, *k, *seed).map(|doc| doc.to_json())
        }
    }
}

fn expect_text(format: Format) -> CmdResult<()> {
    match format {
        Format::Text => Ok(()),
        other => Err(Failure::input(format!("this command only writes text, not {other:?}").to_lowercase())),
    }
}

fn load(path: &PathBuf) -> CmdResult<MassFunction> {
    MassDocument::read(path)
        .and_then(|doc| doc.to_mass())
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn parse_event(m: &MassFunction, key: &str) -> CmdResult<Subset> {
    let event = m.frame().parse_key(key).map_err(|e| Failure::domain(format!("event {key:?}: {e}")))?;
    if event.is_empty() {
        return Err(Failure::domain("the conditioning event must be nonempty"));
    }
    Ok(event)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("outputs always serialize");
    text.push('\n');
    text
}

#[derive(Debug, Serialize)]
pub struct VertexOut {
    pub generator: String,
    pub masses: IndexMap<String, f64>,
    pub admissible: bool,
}

#[derive(Debug, Serialize)]
pub struct IntervalOut {
    pub event: String,
    pub lower: f64,
    pub upper: f64,
}

/// Output of `condition`; `masses` holds the conditional (or the barycentre
/// of a conditional set).
#[derive(Debug, Serialize)]
pub struct ConditionOutput {
    pub frame: Vec<String>,
    pub masses: IndexMap<String, f64>,
    pub rule: String,
    pub event: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexOut>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<IntervalOut>>,
}

fn rule_name(rule: Rule) -> String {
    rule.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn intervals_out(frame: &Frame, lower: &[f64], upper: &[f64]) -> Vec<IntervalOut> {
    frame
        .nonempty_subsets()
        .map(|a| IntervalOut {
            event: frame.key(a),
            lower: round_output(lower[a.index()]),
            upper: round_output(upper[a.index()]),
        })
        .collect()
}

fn simplex_kind(kind: SimplexKind) -> &'static str {
    match kind {
        SimplexKind::L1Simplex => "l1-simplex",
        SimplexKind::LinfSimplex => "linf-simplex",
        SimplexKind::LinfPoint => "linf-point",
    }
}

/// Explains a failed precondition of `rule` on `event`.
fn precondition(m: &MassFunction, rule: Rule, event: Subset, err: Error) -> Failure {
    let frame = m.frame();
    let key = frame.key(event);
    let message = match (rule, err) {
        (Rule::Dempster, Error::TotalConflict { .. }) => {
            format!("Dempster conditioning needs pl(B) > 0, but pl({key}) = 0")
        }
        (Rule::Credal, Error::TotalConflict { .. }) => {
            format!("credal conditioning needs pl(B) > 0, but pl({key}) = 0")
        }
        (Rule::Credal, Error::UndefinedDenominator(a)) => format!(
            "credal conditioning on {key} is undefined: b(A∩B) + pl(Ā∩B) or pl(A∩B) + b(Ā∩B) vanishes for A = {}",
            frame.key(a)
        ),
        (Rule::Suppes, Error::ZeroBelief(_)) => {
            format!("Suppes-Zanotti conditioning needs b(B) > 0, but b({key}) = 0")
        }
        (_, other) => other.to_string(),
    };
    Failure::domain(message)
}

fn simplex_output(base: ConditionOutput, set: &ConditionalSimplex) -> ConditionOutput {
    let frame = set.barycenter.frame();
    let vertices = set
        .vertices
        .iter()
        .zip(&set.admissible)
        .map(|((g, v), ok)| VertexOut { generator: frame.key(*g), masses: mass_map(v), admissible: *ok })
        .collect();
    ConditionOutput {
        masses: mass_map(&set.barycenter),
        admissible: Some(set.admissible.iter().all(|ok| *ok)),
        kind: Some(simplex_kind(set.kind).into()),
        vertices: Some(vertices),
        ..base
    }
}

pub fn cmd_condition(m: &MassFunction, rule: Rule, event: Subset) -> CmdResult<ConditionOutput> {
    let frame = m.frame();
    let fail = |e| precondition(m, rule, event, e);
    let base = ConditionOutput {
        frame: frame.names().to_vec(),
        masses: IndexMap::new(),
        rule: rule_name(rule),
        event: frame.key(event),
        admissible: None,
        kind: None,
        conflict: None,
        vertices: None,
        intervals: None,
    };
    let out = match rule {
        Rule::Dempster => ConditionOutput { masses: mass_map(&classical::dempster_condition(m, event).map_err(fail)?), ..base },
        Rule::Credal => {
            let credal = classical::credal_condition(m, event).map_err(fail)?;
            let lower = credal.intervals.lower();
            let masses = match &credal.mass {
                Some(mass) => mass_map(mass),
                None => {
                    let mut raw = lower.to_vec();
                    inverse_subset_sums(&mut raw);
                    mass_map(&SignedMassFunction::from_raw(frame, raw).map_err(fail)?)
                }
            };
            ConditionOutput {
                masses,
                admissible: Some(credal.mass.is_some()),
                intervals: Some(intervals_out(frame, lower, credal.intervals.upper())),
                ..base
            }
        }
        Rule::Suppes => {
            let g = classical::suppes_geometric_condition(m, event).map_err(fail)?;
            ConditionOutput {
                masses: mass_map(&g.mass),
                intervals: Some(intervals_out(frame, g.intervals.lower(), g.intervals.upper())),
                ..base
            }
        }
        Rule::Conjunctive => {
            let mu = classical::conjunctive_condition(m, event).map_err(fail)?;
            ConditionOutput { masses: mass_map(&mu), conflict: Some(round_output(mu.conflict())), ..base }
        }
        Rule::Disjunctive => {
            ConditionOutput { masses: mass_map(&classical::disjunctive_condition(m, event).map_err(fail)?), ..base }
        }
        Rule::L1 => simplex_output(base, &lp::l1_condition(m, event).map_err(fail)?),
        Rule::L2 => ConditionOutput { masses: mass_map(&lp::l2_condition(m, event).map_err(fail)?), ..base },
        Rule::Linf => simplex_output(base, &lp::linf_condition(m, event).map_err(fail)?),
        Rule::L2Belief | Rule::LinfBaryBelief => {
            let point = if rule == Rule::L2Belief {
                lp::l2_condition_belief_space(m, event)
            } else {
                lp::linf_barycentre_belief_space(m, event)
            }
            .map_err(fail)?;
            ConditionOutput { masses: mass_map(&point), admissible: Some(point.is_admissible()), ..base }
        }
    };
    Ok(out)
}

/// A `[bel, pl]` pair, or `"undefined"` when the operator's precondition fails.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Interval([f64; 2]),
    Undefined(&'static str),
}

#[derive(Debug, Serialize)]
pub struct CompareRow {
    pub event: String,
    pub disjunctive: Cell,
    pub credal: Cell,
    pub dempster: Cell,
    pub suppes: Cell,
    pub conjunctive: Cell,
}

#[derive(Debug, Serialize)]
pub struct LinkOut {
    pub link: &'static str,
    pub slack: f64,
    pub event: String,
}

#[derive(Debug, Serialize)]
pub struct ChainOut {
    /// `pass`, `fail`, or `undefined` when one of the chain operators is.
    pub verdict: &'static str,
    pub tolerance: f64,
    pub links: Vec<LinkOut>,
}

/// Output of `compare`; `masses` echoes the input.
#[derive(Debug, Serialize)]
pub struct CompareOutput {
    pub frame: Vec<String>,
    pub masses: IndexMap<String, f64>,
    pub event: String,
    pub rows: Vec<CompareRow>,
    pub chain: ChainOut,
}

type Columns = Option<(Vec<f64>, Vec<f64>)>;

fn columns(m: &MassFunction) -> (Vec<f64>, Vec<f64>) {
    let b = m.belief();
    let pl = b.plausibility();
    (b.values().to_vec(), pl.values().to_vec())
}

pub fn cmd_compare(m: &MassFunction, event: Subset, tolerance: f64) -> CmdResult<CompareOutput> {
    let frame = m.frame();
    let disjunctive: Columns = classical::disjunctive_condition(m, event).ok().map(|c| columns(&c));
    let credal: Columns = classical::credal_condition(m, event)
        .ok()
        .map(|c| (c.intervals.lower().to_vec(), c.intervals.upper().to_vec()));
    let dempster: Columns = classical::dempster_condition(m, event).ok().map(|c| columns(&c));
    let suppes: Columns = classical::suppes_geometric_condition(m, event)
        .ok()
        .map(|g| (g.intervals.lower().to_vec(), g.intervals.upper().to_vec()));
    let conjunctive: Columns = classical::conjunctive_condition(m, event)
        .ok()
        .map(|c| (c.implicability_values(), frame.subsets().map(|a| c.plausibility(a)).collect()));

    let cell = |col: &Columns, a: Subset| match col {
        Some((b, pl)) => Cell::Interval([round_output(b[a.index()]), round_output(pl[a.index()])]),
        None => Cell::Undefined("undefined"),
    };
    let rows = frame
        .nonempty_subsets()
        .map(|a| CompareRow {
            event: frame.key(a),
            disjunctive: cell(&disjunctive, a),
            credal: cell(&credal, a),
            dempster: cell(&dempster, a),
            suppes: cell(&suppes, a),
            conjunctive: cell(&conjunctive, a),
        })
        .collect();

    let chain = match (disjunctive, credal, dempster, conjunctive) {
        (Some(disjunctive), Some(credal), Some(dempster), Some(conjunctive)) => {
            let report = classical::chain_report(&ConditionalTable { event, disjunctive, credal, dempster, conjunctive });
            ChainOut {
                verdict: if report.holds_within(tolerance) { "pass" } else { "fail" },
                tolerance,
                links: report
                    .links
                    .iter()
                    .map(|l| LinkOut { link: l.link, slack: round_output(l.slack), event: frame.key(l.event) })
                    .collect(),
            }
        }
        _ => ChainOut { verdict: "undefined", tolerance, links: Vec::new() },
    };
    Ok(CompareOutput { frame: frame.names().to_vec(), masses: mass_map(m), event: frame.key(event), rows, chain })
}

/// Output of `combine`.
#[derive(Debug, Serialize)]
pub struct CombineOutput {
    pub frame: Vec<String>,
    pub masses: IndexMap<String, f64>,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict: Option<f64>,
}

pub fn cmd_combine(m1: &MassFunction, m2: &MassFunction, rule: CombineRule) -> CmdResult<CombineOutput> {
    let domain = |e: Error| Failure::domain(e.to_string());
    let induced = |r: ConditioningRule| combination::conditioning_induced_combine(r, m1, m2).map_err(domain);
    let (masses, conflict) = match rule {
        CombineRule::Dempster => {
            let (m, report) = combination::dempster_sum(m1, m2).map_err(domain)?;
            (mass_map(&m), Some(round_output(report.kappa)))
        }
        CombineRule::Conjunctive => {
            let mu = combination::conjunctive_combine(m1, m2).map_err(domain)?;
            (mass_map(&mu), Some(round_output(mu.conflict())))
        }
        CombineRule::Disjunctive => (mass_map(&combination::disjunctive_combine(m1, m2).map_err(domain)?), None),
        CombineRule::L2 => (mass_map(&induced(ConditioningRule::L2)?), None),
        CombineRule::Suppes => (mass_map(&induced(ConditioningRule::SuppesGeometric)?), None),
        CombineRule::DempsterInduced => (mass_map(&induced(ConditioningRule::Dempster)?), None),
    };
    let rule = rule.to_possible_value().expect("no skipped variants").get_name().to_string();
    Ok(CombineOutput { frame: m1.frame().names().to_vec(), masses, rule, conflict })
}

#[derive(Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of `verify`; `masses` echoes the input.
#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub frame: Vec<String>,
    pub masses: IndexMap<String, f64>,
    pub event: String,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckOut>,
}

pub fn cmd_verify(m: &MassFunction, event: Subset, samples: usize, seed: u64, tolerance: f64) -> CmdResult<VerifyOutput> {
    let domain = |e: Error| Failure::domain(e.to_string());
    let mut checks = Vec::new();

    let l2 = lp::l2_condition(m, event).map_err(domain)?;
    let solved = oracle::l2_project_linear_solve(m, event).map_err(domain)?;
    let gap = oracle::lp_distance(&l2, &solved, Norm::Linf).map_err(domain)?;
    checks.push(CheckOut {
        name: "l2 closed form = linear solve".into(),
        passed: gap <= tolerance,
        detail: format!("max gap {gap:.3e}"),
    });

    let l1 = lp::l1_condition(m, event).map_err(domain)?;
    let linf = lp::linf_condition(m, event).map_err(domain)?;
    let candidates = |set: &ConditionalSimplex| set.vertices.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>();
    for (norm, cands) in [
        (Norm::L1, candidates(&l1)),
        (Norm::L2, vec![l2.to_signed()]),
        (Norm::Linf, candidates(&linf)),
    ] {
        let report = oracle::sampled_nonimprovement(m, event, norm, &cands, samples, seed).map_err(domain)?;
        checks.push(CheckOut {
            name: format!("{norm:?} minimum not improved by sampling"),
            passed: report.holds,
            detail: format!(
                "claimed {:.9}, worst margin {:.3e}, candidate spread {:.3e}",
                report.claimed, report.worst_margin, report.candidate_spread
            ),
        });
    }

    let (barycenter_ok, bary_gap) = lp::l1_barycenter_equals_l2(m, event).map_err(domain)?;
    checks.push(CheckOut {
        name: "l1 barycentre = l2".into(),
        passed: barycenter_ok && bary_gap <= tolerance,
        detail: format!("max gap {bary_gap:.3e}"),
    });

    match classical::nested_chain_check(m, event) {
        Ok(report) => {
            let worst = report.worst();
            checks.push(CheckOut {
                name: "nested chain".into(),
                passed: report.holds_within(tolerance),
                detail: format!("tightest link {} with slack {:.3e} at {:?}", worst.link, worst.slack, m.frame().key(worst.event)),
            });
        }
        Err(e) => checks.push(CheckOut { name: "nested chain".into(), passed: false, detail: format!("undefined: {e}") }),
    }

    let frame = m.frame();
    Ok(VerifyOutput { frame: frame.names().to_vec(), masses: mass_map(m), event: frame.key(event), samples, seed, checks })
}

pub fn cmd_random(n: usize, k: usize, seed: u64) -> CmdResult<MassDocument> {
    let frame = Frame::anonymous(n).map_err(|e| Failure::domain(e.to_string()))?;
    let m = MassFunction::random(&frame, k, seed).map_err(|e| Failure::domain(e.to_string()))?;
    Ok(MassDocument::from_vector(&m))
}
