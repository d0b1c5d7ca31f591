//! Classical conditioning operators: Dempster, credal (Fagin–Halpern),
//! Suppes–Zanotti geometric, conjunctive and disjunctive.

use crate::combination::{dempster_sum, disjunctive_combine};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::{BeliefVector, MassFunction, MassVector, UnnormalizedMass};
use crate::{NORMALIZATION_TOL, ZERO_TOL};

/// Lower and upper conditional values for every event of the frame.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalAssignment {
    frame: Frame,
    event: Subset,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl IntervalAssignment {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// The conditioning event.
    pub fn event(&self) -> Subset {
        self.event
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn get(&self, a: Subset) -> (f64, f64) {
        (self.lower[a.index()], self.upper[a.index()])
    }

    /// True if `[self] ⊆ [other]` for every event, within `tol`.
    pub fn is_within(&self, other: &IntervalAssignment, tol: f64) -> bool {
        self.lower.iter().zip(&other.lower).all(|(a, b)| *a >= b - tol)
            && self.upper.iter().zip(&other.upper).all(|(a, b)| *a <= b + tol)
    }
}

fn check_event(m: &MassFunction, event: Subset) -> Result<()> {
    m.frame().check(event)?;
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    Ok(())
}

/// `b ⊕ b_B`.
pub fn dempster_condition(m: &MassFunction, event: Subset) -> Result<MassFunction> {
    check_event(m, event)?;
    let pl = m.plausibility().get(event);
    if pl <= ZERO_TOL {
        return Err(Error::TotalConflict { kappa: 1.0 - pl });
    }
    let categorical = MassFunction::categorical(m.frame(), event)?;
    Ok(dempster_sum(m, &categorical)?.0)
}

/// Closed-form Dempster conditional values:
/// `bel = (pl(B) − pl(B∖A)) / pl(B)`, `pl = pl(A∩B) / pl(B)`.
pub fn dempster_closed_form(m: &MassFunction, event: Subset) -> Result<IntervalAssignment> {
    check_event(m, event)?;
    let pl = m.plausibility();
    let pl_b = pl.get(event);
    if pl_b <= ZERO_TOL {
        return Err(Error::TotalConflict { kappa: 1.0 - pl_b });
    }
    let frame = m.frame();
    let lower = frame.subsets().map(|a| (pl_b - pl.get(event.difference(a))) / pl_b).collect();
    let upper = frame.subsets().map(|a| pl.get(a.intersection(event)) / pl_b).collect();
    Ok(IntervalAssignment { frame: frame.clone(), event, lower, upper })
}

/// Credal conditioning: closed-form envelope and, when it inverts to a
/// nonnegative assignment, the conditional mass.
#[derive(Clone, Debug, PartialEq)]
pub struct CredalConditional {
    pub intervals: IntervalAssignment,
    pub mass: Option<MassFunction>,
}

pub fn credal_condition(m: &MassFunction, event: Subset) -> Result<CredalConditional> {
    check_event(m, event)?;
    let frame = m.frame();
    let b = m.belief();
    let pl = b.plausibility();
    if pl.get(event) <= ZERO_TOL {
        return Err(Error::TotalConflict { kappa: 1.0 - pl.get(event) });
    }
    let mut lower = Vec::with_capacity(frame.power_set_size());
    let mut upper = Vec::with_capacity(frame.power_set_size());
    for a in frame.subsets() {
        let inside = a.intersection(event);
        let outside = frame.complement(a).intersection(event);
        let low_den = b.get(inside) + pl.get(outside);
        let up_den = pl.get(inside) + b.get(outside);
        if low_den <= ZERO_TOL || up_den <= ZERO_TOL {
            return Err(Error::UndefinedDenominator(a));
        }
        lower.push(b.get(inside) / low_den);
        upper.push(pl.get(inside) / up_den);
    }
    let mass = BeliefVector::new(frame, lower.clone()).and_then(|bv| bv.to_mass()).ok();
    Ok(CredalConditional {
        intervals: IntervalAssignment { frame: frame.clone(), event, lower, upper },
        mass,
    })
}

/// Suppes–Zanotti conditioning values and the Möbius mass of its belief.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricConditional {
    pub intervals: IntervalAssignment,
    pub mass: MassFunction,
}

pub fn suppes_geometric_condition(m: &MassFunction, event: Subset) -> Result<GeometricConditional> {
    check_event(m, event)?;
    let frame = m.frame();
    let b = m.belief();
    let b_event = b.get(event);
    if b_event <= ZERO_TOL {
        return Err(Error::ZeroBelief(event));
    }
    let lower: Vec<f64> = frame.subsets().map(|a| b.get(a.intersection(event)) / b_event).collect();
    let upper = frame
        .subsets()
        .map(|a| (b_event - b.get(event.difference(a))) / b_event)
        .collect();
    let mass = BeliefVector::new(frame, lower.clone())?.to_mass()?;
    Ok(GeometricConditional {
        intervals: IntervalAssignment { frame: frame.clone(), event, lower, upper },
        mass,
    })
}

/// Conjunctive (unnormalized) conditioning `m_∩(B|A) = Σ_{C⊆A^c} m(B∪C)`.
///
/// Mass that lands on the empty set is kept and reported via
/// [`UnnormalizedMass::conflict`].
pub fn conjunctive_condition(m: &MassFunction, event: Subset) -> Result<UnnormalizedMass> {
    check_event(m, event)?;
    let frame = m.frame();
    let outside = frame.complement(event);
    let mut raw = vec![0.0; frame.power_set_size()];
    for b in event.subsets() {
        raw[b.index()] = outside.subsets().map(|c| m.mass(b.union(c))).sum();
    }
    Ok(UnnormalizedMass::from_raw_unchecked(frame, raw))
}

/// `b ∪ b_B` via the disjunctive rule.
pub fn disjunctive_condition(m: &MassFunction, event: Subset) -> Result<MassFunction> {
    check_event(m, event)?;
    disjunctive_combine(m, &MassFunction::categorical(m.frame(), event)?)
}

/// Names of the seven links in `b_∪ ≤ b_Cr ≤ b_⊕ ≤ b_∩ ≤ pl_∩ ≤ pl_⊕ ≤ pl_Cr ≤ pl_∪`.
pub const CHAIN_LINKS: [&str; 7] = [
    "b_or <= b_cr",
    "b_cr <= b_dempster",
    "b_dempster <= b_and",
    "b_and <= pl_and",
    "pl_and <= pl_dempster",
    "pl_dempster <= pl_cr",
    "pl_cr <= pl_or",
];

/// Belief and plausibility of every operator, for every event.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalTable {
    pub event: Subset,
    pub disjunctive: (Vec<f64>, Vec<f64>),
    pub credal: (Vec<f64>, Vec<f64>),
    pub dempster: (Vec<f64>, Vec<f64>),
    pub conjunctive: (Vec<f64>, Vec<f64>),
}

impl ConditionalTable {
    /// The eight set functions in chain order.
    pub fn chain(&self) -> [&[f64]; 8] {
        [
            &self.disjunctive.0,
            &self.credal.0,
            &self.dempster.0,
            &self.conjunctive.0,
            &self.conjunctive.1,
            &self.dempster.1,
            &self.credal.1,
            &self.disjunctive.1,
        ]
    }
}

fn belief_and_plausibility(m: &MassFunction) -> (Vec<f64>, Vec<f64>) {
    let b = m.belief();
    let pl = b.plausibility();
    (b.values().to_vec(), pl.values().to_vec())
}

/// Computes all operators entering the nested chain on `(m, B)`.
///
/// The conjunctive column uses the closed forms `b(A ∪ B̄)` (empty-set mass
/// included) and `pl(A ∩ B)`.
pub fn conditional_table(m: &MassFunction, event: Subset) -> Result<ConditionalTable> {
    check_event(m, event)?;
    let frame = m.frame();
    let disjunctive = belief_and_plausibility(&disjunctive_condition(m, event)?);
    let credal = credal_condition(m, event)?.intervals;
    let dempster = belief_and_plausibility(&dempster_condition(m, event)?);
    let conj = conjunctive_condition(m, event)?;
    let b_and = conj.implicability_values();
    let pl_and = frame.subsets().map(|a| conj.plausibility(a)).collect();
    Ok(ConditionalTable {
        event,
        disjunctive,
        credal: (credal.lower, credal.upper),
        dempster,
        conjunctive: (b_and, pl_and),
    })
}

/// Smallest slack of one chain link and the event attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkSlack {
    pub link: &'static str,
    pub slack: f64,
    pub event: Subset,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub holds: bool,
    pub links: Vec<LinkSlack>,
    /// Per event, the smallest slack over all links.
    pub event_slack: Vec<f64>,
}

impl ChainReport {
    pub fn worst(&self) -> &LinkSlack {
        self.links
            .iter()
            .min_by(|a, b| a.slack.total_cmp(&b.slack))
            .expect("seven links")
    }

    pub fn holds_within(&self, tol: f64) -> bool {
        self.links.iter().all(|l| l.slack >= -tol)
    }
}

/// Checks `b_∪ ≤ b_Cr ≤ b_⊕ ≤ b_∩ ≤ pl_∩ ≤ pl_⊕ ≤ pl_Cr ≤ pl_∪` for every event.
pub fn nested_chain_check(m: &MassFunction, event: Subset) -> Result<ChainReport> {
    let table = conditional_table(m, event)?;
    Ok(chain_report(&table))
}

pub fn chain_report(table: &ConditionalTable) -> ChainReport {
    let chain = table.chain();
    let events = chain[0].len();
    let mut event_slack = vec![f64::INFINITY; events];
    let links = CHAIN_LINKS
        .iter()
        .enumerate()
        .map(|(k, &link)| {
            let mut worst = LinkSlack { link, slack: f64::INFINITY, event: Subset::EMPTY };
            for a in 0..events {
                let slack = chain[k + 1][a] - chain[k][a];
                event_slack[a] = event_slack[a].min(slack);
                if slack < worst.slack {
                    worst.slack = slack;
                    worst.event = Subset(a as u32);
                }
            }
            worst
        })
        .collect::<Vec<_>>();
    let holds = links.iter().all(|l| l.slack >= -NORMALIZATION_TOL);
    ChainReport { holds, links, event_slack }
}
