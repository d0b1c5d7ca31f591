//! Conditioning by distance minimisation.
//!
//! The conditional of `m` given `A` is the point (or set of points) of the
//! conditioning simplex `M_A` (the convex hull of the categorical mass
//! vectors `m_B`, `∅ ⊊ B ⊆ A`) closest to `m` in the L1, L2 or L∞ norm of
//! the mass space. All three admit closed forms in terms of
//! `pl(A^c) = Σ_{C⊄A} m(C)`, the mass that has to be moved inside `A`:
//!
//! | norm | result |
//! |------|--------|
//! | L1   | simplex with vertices `m + pl(A^c)·e_B` |
//! | L2   | `m + pl(A^c)/(2^|A|−1)` on every `B ⊆ A` |
//! | L∞   | simplex around the L2 point, or the L2 point itself |
//!
//! Outputs live on the full frame with zero mass outside the subsets of `A`.

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::{MassFunction, MassVector, SignedMassFunction};
use crate::NORMALIZATION_TOL;

/// The simplex `M_A` of mass functions whose core lies in `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditioningSimplex {
    frame: Frame,
    event: Subset,
    generators: Vec<Subset>,
}

impl ConditioningSimplex {
    pub fn new(frame: &Frame, event: Subset) -> Result<Self> {
        frame.check(event)?;
        if event.is_empty() {
            return Err(Error::EmptyEvent);
        }
        Ok(Self { frame: frame.clone(), event, generators: event.nonempty_subsets().collect() })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn event(&self) -> Subset {
        self.event
    }

    /// Nonempty subsets of `A`, ascending; there are `2^|A| − 1` of them.
    pub fn generators(&self) -> &[Subset] {
        &self.generators
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// Categorical corner `m_B` of the simplex.
    pub fn corner(&self, generator: Subset) -> Result<MassFunction> {
        MassFunction::categorical(&self.frame, generator)
    }

    /// Point with the given simplicial coordinates (one per generator).
    pub fn point(&self, coordinates: &[f64]) -> Result<SignedMassFunction> {
        if coordinates.len() != self.generators.len() {
            return Err(Error::LengthMismatch { expected: self.generators.len(), actual: coordinates.len() });
        }
        let mut raw = vec![0.0; self.frame.power_set_size()];
        for (g, c) in self.generators.iter().zip(coordinates) {
            raw[g.index()] = *c;
        }
        SignedMassFunction::from_raw(&self.frame, raw)
    }

    /// True if `candidate` has support inside `A` and sums to one.
    pub fn contains(&self, candidate: &impl MassVector) -> bool {
        candidate.frame() == &self.frame
            && candidate
                .support()
                .iter()
                .all(|(s, _)| s.is_subset_of(self.event))
            && (candidate.total() - 1.0).abs() <= NORMALIZATION_TOL
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexKind {
    L1Simplex,
    LinfSimplex,
    LinfPoint,
}

/// A set of (pseudo) conditional mass functions described by its vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalSimplex {
    pub event: Subset,
    pub kind: SimplexKind,
    /// Vertices keyed by the generating subset, in ascending order.
    pub vertices: Vec<(Subset, SignedMassFunction)>,
    pub barycenter: SignedMassFunction,
    pub admissible: Vec<bool>,
}

impl ConditionalSimplex {
    fn from_vertices(event: Subset, kind: SimplexKind, vertices: Vec<(Subset, SignedMassFunction)>) -> Result<Self> {
        let weight = 1.0 / vertices.len() as f64;
        let weighted: Vec<(f64, &SignedMassFunction)> = vertices.iter().map(|(_, v)| (weight, v)).collect();
        let barycenter = SignedMassFunction::affine_combine(&weighted)?;
        let admissible = vertices.iter().map(|(_, v)| v.is_admissible()).collect();
        Ok(Self { event, kind, vertices, barycenter, admissible })
    }

    pub fn is_point(&self) -> bool {
        self.kind == SimplexKind::LinfPoint
    }

    pub fn vertex(&self, generator: Subset) -> Option<&SignedMassFunction> {
        self.vertices.iter().find(|(g, _)| *g == generator).map(|(_, v)| v)
    }
}

/// Quantities every closed form is built from.
struct Deficit {
    /// `Σ_{C⊄A} m(C) = pl(A^c)`.
    outside_total: f64,
    /// `max_{C⊄A} m(C)`.
    outside_max: f64,
    /// `2^|A| − 1`.
    generators: usize,
}

fn deficit(m: &MassFunction, event: Subset) -> Result<Deficit> {
    m.frame().check(event)?;
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    let (outside_total, outside_max) = m
        .frame()
        .nonempty_subsets()
        .filter(|c| !c.is_subset_of(event))
        .map(|c| m.mass(c))
        .fold((0.0, 0.0f64), |(s, mx), v| (s + v, mx.max(v)));
    Ok(Deficit { outside_total, outside_max, generators: (1usize << event.len()) - 1 })
}

/// `m` restricted to the subsets of `A`, plus `shift(B)` on each `B ⊆ A`.
fn shifted(m: &MassFunction, event: Subset, shift: impl Fn(Subset) -> f64) -> Vec<f64> {
    let mut raw = vec![0.0; m.frame().power_set_size()];
    for b in event.nonempty_subsets() {
        raw[b.index()] = m.mass(b) + shift(b);
    }
    raw
}

/// The simplex of L1 conditional belief functions.
///
/// Vertex `B` adds the whole outside mass `pl(A^c)` to `m(B)` and keeps
/// every other subset of `A` at its original mass.
pub fn l1_condition(m: &MassFunction, event: Subset) -> Result<ConditionalSimplex> {
    let d = deficit(m, event)?;
    let vertices = event
        .nonempty_subsets()
        .map(|vertex| {
            let raw = shifted(m, event, |b| if b == vertex { d.outside_total } else { 0.0 });
            Ok((vertex, SignedMassFunction::from_raw(m.frame(), raw)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ConditionalSimplex::from_vertices(event, SimplexKind::L1Simplex, vertices)
}

/// Membership in the L1 conditional set: core inside `A` and
/// `candidate(B) ≥ m(B)` for every `B ⊆ A`.
pub fn l1_contains(m: &MassFunction, event: Subset, candidate: &impl MassVector) -> Result<bool> {
    let simplex = ConditioningSimplex::new(m.frame(), event)?;
    if !simplex.contains(candidate) {
        return Ok(false);
    }
    Ok(event
        .nonempty_subsets()
        .all(|b| candidate.mass(b) >= m.mass(b) - crate::NEGATIVITY_TOL))
}

/// The unique L2 conditional: outside mass spread evenly over the subsets of `A`.
pub fn l2_condition(m: &MassFunction, event: Subset) -> Result<MassFunction> {
    let d = deficit(m, event)?;
    let share = d.outside_total / d.generators as f64;
    MassFunction::from_raw(m.frame(), shifted(m, event, |_| share))
}

/// Whether the L1 barycentre equals the L2 conditional, and the largest gap.
pub fn l1_barycenter_equals_l2(m: &MassFunction, event: Subset) -> Result<(bool, f64)> {
    let l1 = l1_condition(m, event)?;
    let l2 = l2_condition(m, event)?;
    let gap = max_gap(&l1.barycenter, &l2);
    Ok((gap <= 1e-12, gap))
}

/// The L∞ conditional set.
///
/// With `M = max_{C⊄A} m(C)`, `S = Σ_{C⊄A} m(C)` and `k = 2^|A| − 1`:
/// if `M ≥ S/k` the result is a simplex whose vertex `B̄` adds `M` to every
/// `B ≠ B̄` and `S − (k−1)·M` to `B̄`; otherwise it is the single L2 point.
/// See [`linf_vertices_are_optimal`] for when the vertices overshoot.
pub fn linf_condition(m: &MassFunction, event: Subset) -> Result<ConditionalSimplex> {
    let d = deficit(m, event)?;
    let k = d.generators as f64;
    if d.outside_max >= d.outside_total / k {
        let remainder = d.outside_total - (k - 1.0) * d.outside_max;
        let vertices = event
            .nonempty_subsets()
            .map(|vertex| {
                let raw = shifted(m, event, |b| if b == vertex { remainder } else { d.outside_max });
                Ok((vertex, SignedMassFunction::from_raw(m.frame(), raw)?))
            })
            .collect::<Result<Vec<_>>>()?;
        ConditionalSimplex::from_vertices(event, SimplexKind::LinfSimplex, vertices)
    } else {
        let point = l2_condition(m, event)?.to_signed();
        ConditionalSimplex::from_vertices(event, SimplexKind::LinfPoint, vec![(event, point)])
    }
}

/// Minimal L∞ distance from `m` to `M_A`: `M` in the simplex case, `S/k` otherwise.
pub fn linf_norm_value(m: &MassFunction, event: Subset) -> Result<f64> {
    let d = deficit(m, event)?;
    let k = d.generators as f64;
    Ok(d.outside_max.max(d.outside_total / k))
}

/// Whether every point of [`linf_condition`] attains [`linf_norm_value`].
///
/// The vertex formula only bounds `m'(B) − m(B)` from below. The vertex
/// entry `S − (k−1)·M` stays within `[−M, M]` only while `S ≥ (k−2)·M`,
/// which always holds for `|A| ≤ 2` but can fail for larger events.
pub fn linf_vertices_are_optimal(m: &MassFunction, event: Subset) -> Result<bool> {
    let d = deficit(m, event)?;
    let k = d.generators as f64;
    if d.outside_max < d.outside_total / k {
        return Ok(true);
    }
    Ok(d.outside_total - (k - 1.0) * d.outside_max >= -d.outside_max - crate::NEGATIVITY_TOL)
}

/// Membership in the exact set of L∞ minimisers: `candidate ∈ M_A` and
/// `|candidate(B) − m(B)| ≤ max(M, S/k)` for every `B ⊆ A`.
pub fn linf_contains(m: &MassFunction, event: Subset, candidate: &impl MassVector) -> Result<bool> {
    let simplex = ConditioningSimplex::new(m.frame(), event)?;
    if !simplex.contains(candidate) {
        return Ok(false);
    }
    let bound = linf_norm_value(m, event)? + NORMALIZATION_TOL;
    Ok(event
        .nonempty_subsets()
        .all(|b| (candidate.mass(b) - m.mass(b)).abs() <= bound))
}

/// Sum over `∅ ⊊ C ⊆ outside` of `weight(C) · m(B ∪ C)`.
fn outside_sum(m: &MassFunction, b: Subset, outside: Subset, weight: impl Fn(Subset) -> f64) -> f64 {
    outside.nonempty_subsets().map(|c| weight(c) * m.mass(b.union(c))).sum()
}

/// Fills the `A` slot so the result sums to one.
fn close_with_event_slot(m: &MassFunction, event: Subset, mut raw: Vec<f64>) -> Result<SignedMassFunction> {
    // m(A) plus whatever the proper subsets did not absorb of the outside mass;
    // written as a correction so that `core ⊆ A` returns m(A) exactly.
    let outside = deficit(m, event)?.outside_total;
    let absorbed: f64 = event
        .nonempty_subsets()
        .filter(|&b| b != event)
        .map(|b| raw[b.index()] - m.mass(b))
        .sum();
    raw[event.index()] = m.mass(event) + outside - absorbed;
    SignedMassFunction::from_raw(m.frame(), raw)
}

fn alternating(b: Subset) -> f64 {
    // (−1)^{|B|+1}
    if b.len() % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// L2 conditional computed in the belief space.
///
/// For `∅ ⊊ B ⊊ A`:
/// `m(B) + Σ_{∅⊊C⊆A^c} m(B+C)·2^{−|C|} + (−1)^{|B|+1} Σ_{∅⊊C⊆A^c} m(C)·2^{−|C|}`.
/// The slot of `A` itself absorbs whatever mass normalization requires.
pub fn l2_condition_belief_space(m: &MassFunction, event: Subset) -> Result<SignedMassFunction> {
    deficit(m, event)?;
    let outside = m.frame().complement(event);
    let halving = |c: Subset| 0.5f64.powi(c.len() as i32);
    let pure_outside = outside_sum(m, Subset::EMPTY, outside, halving);
    let mut raw = vec![0.0; m.frame().power_set_size()];
    for b in event.nonempty_subsets().filter(|&b| b != event) {
        raw[b.index()] = m.mass(b) + outside_sum(m, b, outside, halving) + alternating(b) * pure_outside;
    }
    close_with_event_slot(m, event, raw)
}

/// Barycentre of the L∞ conditional set in the belief space.
///
/// For `∅ ⊊ B ⊊ A`:
/// `m(B) + ½ Σ_{∅⊊C⊆A^c} m(B+C) + ½ (−1)^{|B|+1} b(A^c)`;
/// the slot of `A` is fixed by normalization.
pub fn linf_barycentre_belief_space(m: &MassFunction, event: Subset) -> Result<SignedMassFunction> {
    deficit(m, event)?;
    let outside = m.frame().complement(event);
    let belief_outside = outside_sum(m, Subset::EMPTY, outside, |_| 1.0);
    let mut raw = vec![0.0; m.frame().power_set_size()];
    for b in event.nonempty_subsets().filter(|&b| b != event) {
        raw[b.index()] =
            m.mass(b) + 0.5 * outside_sum(m, b, outside, |_| 1.0) + 0.5 * alternating(b) * belief_outside;
    }
    close_with_event_slot(m, event, raw)
}

fn max_gap(a: &impl MassVector, b: &impl MassVector) -> f64 {
    a.raw().iter().zip(b.raw()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
