//! Combination rules over focal elements.
//!
//! All rules iterate over pairs of focal elements only, so cost is
//! `|ℰ1|·|ℰ2|` rather than `4^n`.

use crate::classical;
use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::lp;
use crate::mass::{MassFunction, MassVector, UnnormalizedMass};
use crate::{NORMALIZATION_TOL, ZERO_TOL};

/// Total mass assigned to empty intersections.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConflictReport {
    pub kappa: f64,
}

fn same_frame(m1: &impl MassVector, m2: &impl MassVector) -> Result<()> {
    if m1.frame() == m2.frame() {
        Ok(())
    } else {
        Err(Error::FrameMismatch)
    }
}

fn pairwise(m1: &MassFunction, m2: &MassFunction, join: impl Fn(Subset, Subset) -> Subset) -> Vec<f64> {
    let mut raw = vec![0.0; m1.frame().power_set_size()];
    let rhs = m2.focal();
    for (b, mb) in m1.focal() {
        for &(c, mc) in &rhs {
            raw[join(b, c).index()] += mb * mc;
        }
    }
    raw
}

/// Unnormalized intersection rule; conflict stays on the empty set.
pub fn conjunctive_combine(m1: &MassFunction, m2: &MassFunction) -> Result<UnnormalizedMass> {
    same_frame(m1, m2)?;
    let raw = pairwise(m1, m2, Subset::intersection);
    Ok(UnnormalizedMass::from_raw_unchecked(m1.frame(), raw))
}

/// Dempster's orthogonal sum.
pub fn dempster_sum(m1: &MassFunction, m2: &MassFunction) -> Result<(MassFunction, ConflictReport)> {
    let joint = conjunctive_combine(m1, m2)?;
    let kappa = joint.conflict().clamp(0.0, 1.0);
    let sum = joint.normalized()?;
    Ok((sum, ConflictReport { kappa }))
}

/// Union rule.
pub fn disjunctive_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    same_frame(m1, m2)?;
    MassFunction::from_raw(m1.frame(), pairwise(m1, m2, Subset::union))
}

/// Conditioning rules with a unique output, usable to induce a combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditioningRule {
    L2,
    Dempster,
    SuppesGeometric,
    Conjunctive,
}

impl ConditioningRule {
    /// Conditions `m` on `event`, mapping precondition failures to [`Error::UndefinedConditional`].
    pub fn condition(self, m: &MassFunction, event: Subset) -> Result<MassFunction> {
        let undefined = |reason: String| Error::UndefinedConditional { event, reason };
        match self {
            ConditioningRule::L2 => lp::l2_condition(m, event),
            ConditioningRule::Dempster => classical::dempster_condition(m, event)
                .map_err(|e| undefined(format!("pl(A) = 0 ({e})"))),
            ConditioningRule::SuppesGeometric => classical::suppes_geometric_condition(m, event)
                .map(|g| g.mass)
                .map_err(|e| undefined(format!("b(A) = 0 ({e})"))),
            ConditioningRule::Conjunctive => {
                let mu = classical::conjunctive_condition(m, event)?;
                if mu.conflict() > NORMALIZATION_TOL {
                    return Err(undefined(format!("m(∅|A) = {} > 0", mu.conflict())));
                }
                let mut raw = mu.raw().to_vec();
                raw[0] = 0.0;
                MassFunction::from_raw(m.frame(), raw)
            }
        }
    }
}

/// Combination induced by a conditioning rule through linearity:
/// `Σ_A m'(A) · mass(b|_A)`.
pub fn conditioning_induced_combine(
    rule: ConditioningRule,
    m: &MassFunction,
    other: &MassFunction,
) -> Result<MassFunction> {
    same_frame(m, other)?;
    let mut raw = vec![0.0; m.frame().power_set_size()];
    for (a, weight) in other.focal() {
        let conditional = rule.condition(m, a)?;
        for (r, v) in raw.iter_mut().zip(conditional.raw()) {
            *r += weight * v;
        }
    }
    MassFunction::from_raw(m.frame(), raw)
}

/// Both sides of Dempster's convex decomposition and their largest gap.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionCheck {
    pub holds: bool,
    pub max_deviation: f64,
    pub direct: MassFunction,
    pub decomposed: MassFunction,
}

/// Checks `b ⊕ b' = Σ_A μ(A) · (b ⊕ b_A)` with `μ(A) ∝ m'(A)·pl_b(A)`.
pub fn dempster_decomposition_check(m: &MassFunction, other: &MassFunction) -> Result<DecompositionCheck> {
    let (direct, _) = dempster_sum(m, other)?;
    let pl = m.plausibility();
    let terms: Vec<(f64, MassFunction)> = other
        .focal()
        .into_iter()
        .filter(|&(a, _)| pl.get(a) > ZERO_TOL)
        .map(|(a, w)| Ok((w * pl.get(a), classical::dempster_condition(m, a)?)))
        .collect::<Result<_>>()?;
    let total: f64 = terms.iter().map(|(w, _)| w).sum();
    if total < ZERO_TOL {
        return Err(Error::TotalConflict { kappa: 1.0 - total });
    }
    let weighted: Vec<(f64, &MassFunction)> = terms.iter().map(|(w, c)| (w / total, c)).collect();
    let decomposed = MassFunction::convex_combine(&weighted)?;
    let max_deviation = direct
        .raw()
        .iter()
        .zip(decomposed.raw())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(DecompositionCheck { holds: max_deviation < NORMALIZATION_TOL, max_deviation, direct, decomposed })
}
