//! Dense mass, belief and plausibility representations.
//!
//! Every vector stores one slot per subset of the frame, indexed by bitmask.
//! Slot 0 (the empty set) is pinned to zero for [`MassFunction`] and
//! [`SignedMassFunction`]; [`UnnormalizedMass`] uses it for conflict.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::{NEGATIVITY_TOL, NORMALIZATION_TOL};

/// In-place subset-sum (zeta) transform: `out[A] = Σ_{B⊆A} in[B]`.
pub fn subset_sums(values: &mut [f64]) {
    debug_assert!(values.len().is_power_of_two());
    let len = values.len();
    let mut bit = 1;
    while bit < len {
        for a in 0..len {
            if a & bit != 0 {
                values[a] += values[a ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// In-place Möbius inversion of [`subset_sums`].
pub fn inverse_subset_sums(values: &mut [f64]) {
    debug_assert!(values.len().is_power_of_two());
    let len = values.len();
    let mut bit = 1;
    while bit < len {
        for a in 0..len {
            if a & bit != 0 {
                values[a] -= values[a ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Read access shared by every mass-like vector.
pub trait MassVector {
    fn frame(&self) -> &Frame;

    /// Full-length slice indexed by subset bitmask, including the empty slot.
    fn raw(&self) -> &[f64];

    fn mass(&self, subset: Subset) -> f64 {
        self.raw().get(subset.index()).copied().unwrap_or(0.0)
    }

    fn total(&self) -> f64 {
        self.raw().iter().sum()
    }

    /// `Σ_{B⊆A} m(B)` for every `A`; the empty slot is included in each sum.
    fn implicability_values(&self) -> Vec<f64> {
        let mut values = self.raw().to_vec();
        subset_sums(&mut values);
        values
    }

    /// Focal elements and their masses (entries strictly above zero), ascending.
    fn focal(&self) -> Vec<(Subset, f64)> {
        self.raw()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, &v)| (Subset(i as u32), v))
            .collect()
    }

    /// Nonzero entries (of either sign) on nonempty subsets.
    fn support(&self) -> Vec<(Subset, f64)> {
        self.raw()
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &v)| v != 0.0)
            .map(|(i, &v)| (Subset(i as u32), v))
            .collect()
    }

    fn core(&self) -> Subset {
        self.focal()
            .into_iter()
            .fold(Subset::EMPTY, |acc, (s, _)| acc.union(s))
    }
}

/// Summary of how far a candidate mass vector is from a valid assignment.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostics {
    pub sum: f64,
    pub sum_deviation: f64,
    pub negatives: Vec<(Subset, f64)>,
    pub non_finite: Vec<Subset>,
    pub focal: Vec<Subset>,
    pub core: Subset,
}

impl Diagnostics {
    pub fn is_ok(&self) -> bool {
        self.sum_deviation <= NORMALIZATION_TOL
            && self.negatives.is_empty()
            && self.non_finite.is_empty()
    }

    fn into_error(self) -> Option<Error> {
        if let Some(&s) = self.non_finite.first() {
            return Some(Error::NonFinite(s));
        }
        if let Some(&(subset, value)) = self.negatives.first() {
            return Some(Error::NegativeMass { subset, value });
        }
        if self.sum_deviation > NORMALIZATION_TOL {
            return Some(Error::NotNormalized { sum: self.sum });
        }
        None
    }
}

/// Diagnoses a full-length vector (slot 0 = empty set, which must be zero).
pub fn diagnose(raw: &[f64]) -> Diagnostics {
    let mut negatives = Vec::new();
    let mut non_finite = Vec::new();
    let mut focal = Vec::new();
    let mut core = Subset::EMPTY;
    let mut sum = 0.0;
    for (i, &v) in raw.iter().enumerate().skip(1) {
        let s = Subset(i as u32);
        if !v.is_finite() {
            non_finite.push(s);
            continue;
        }
        sum += v;
        if v < -NEGATIVITY_TOL {
            negatives.push((s, v));
        }
        if v > 0.0 {
            focal.push(s);
            core = core.union(s);
        }
    }
    Diagnostics { sum, sum_deviation: (sum - 1.0).abs(), negatives, non_finite, focal, core }
}

fn expand(frame: &Frame, values: Vec<f64>) -> Result<Vec<f64>> {
    let expected = frame.power_set_size() - 1;
    if values.len() != expected {
        return Err(Error::LengthMismatch { expected, actual: values.len() });
    }
    let mut raw = Vec::with_capacity(expected + 1);
    raw.push(0.0);
    raw.extend(values);
    Ok(raw)
}

fn gather<I>(frame: &Frame, entries: I) -> Result<Vec<f64>>
where
    I: IntoIterator<Item = (Subset, f64)>,
{
    let mut raw = vec![0.0; frame.power_set_size()];
    for (s, v) in entries {
        frame.check(s)?;
        if s.is_empty() {
            return Err(Error::EmptyEvent);
        }
        raw[s.index()] += v;
    }
    Ok(raw)
}

/// A basic probability assignment: nonnegative masses on nonempty subsets summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction {
    frame: Frame,
    raw: Vec<f64>,
}

impl MassVector for MassFunction {
    fn frame(&self) -> &Frame {
        &self.frame
    }
    fn raw(&self) -> &[f64] {
        &self.raw
    }
}

impl MassFunction {
    /// Builds from the `2^n − 1` masses of the nonempty subsets, in bitmask order.
    pub fn new(frame: &Frame, values: Vec<f64>) -> Result<Self> {
        Self::from_raw(frame, expand(frame, values)?)
    }

    pub fn from_focal<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        Self::from_raw(frame, gather(frame, entries)?)
    }

    /// Builds from a full-length vector whose slot 0 must be zero.
    pub fn from_raw(frame: &Frame, raw: Vec<f64>) -> Result<Self> {
        if raw.len() != frame.power_set_size() {
            return Err(Error::LengthMismatch { expected: frame.power_set_size(), actual: raw.len() });
        }
        if raw[0] != 0.0 {
            return Err(Error::EmptyEvent);
        }
        if let Some(err) = diagnose(&raw).into_error() {
            return Err(err);
        }
        Ok(Self { frame: frame.clone(), raw })
    }

    /// All mass on `event`.
    pub fn categorical(frame: &Frame, event: Subset) -> Result<Self> {
        frame.check(event)?;
        if event.is_empty() {
            return Err(Error::EmptyEvent);
        }
        let mut raw = vec![0.0; frame.power_set_size()];
        raw[event.index()] = 1.0;
        Ok(Self { frame: frame.clone(), raw })
    }

    pub fn vacuous(frame: &Frame) -> Self {
        Self::categorical(frame, frame.full()).expect("full frame is nonempty")
    }

    /// Convex combination `Σ w_i m_i`.
    pub fn convex_combine(weights: &[(f64, &MassFunction)]) -> Result<Self> {
        let (_, first) = weights.first().ok_or(Error::WeightMismatch { sum: 0.0 })?;
        let frame = first.frame.clone();
        let mut raw = vec![0.0; frame.power_set_size()];
        let mut sum = 0.0;
        for &(w, m) in weights {
            if m.frame != frame {
                return Err(Error::FrameMismatch);
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight(w));
            }
            sum += w;
            for (r, v) in raw.iter_mut().zip(&m.raw) {
                *r += w * v;
            }
        }
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::WeightMismatch { sum });
        }
        Self::from_raw(&frame, raw)
    }

    /// Random mass with `focal_count` distinct focal elements and flat-simplex masses.
    pub fn random(frame: &Frame, focal_count: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(frame, focal_count, &mut rng)
    }

    pub fn random_with<R: Rng + ?Sized>(frame: &Frame, focal_count: usize, rng: &mut R) -> Result<Self> {
        let available = frame.power_set_size() - 1;
        if focal_count == 0 || focal_count > available {
            return Err(Error::BadCount { requested: focal_count, available });
        }
        let mut chosen = index::sample(rng, available, focal_count).into_vec();
        chosen.sort_unstable();
        let draws: Vec<f64> = chosen.iter().map(|_| rng.sample::<f64, _>(Exp1) + f64::MIN_POSITIVE).collect();
        let total: f64 = draws.iter().sum();
        let mut raw = vec![0.0; available + 1];
        for (i, d) in chosen.into_iter().zip(draws) {
            raw[i + 1] = d / total;
        }
        Self::from_raw(frame, raw)
    }

    /// Masses of the nonempty subsets in bitmask order.
    pub fn values(&self) -> &[f64] {
        &self.raw[1..]
    }

    pub fn diagnostics(&self) -> Diagnostics {
        diagnose(&self.raw)
    }

    pub fn belief(&self) -> BeliefVector {
        let mut values = self.raw.clone();
        subset_sums(&mut values);
        BeliefVector { frame: self.frame.clone(), values }
    }

    pub fn plausibility(&self) -> PlausibilityVector {
        self.belief().plausibility()
    }

    pub fn to_signed(&self) -> SignedMassFunction {
        SignedMassFunction { frame: self.frame.clone(), raw: self.raw.clone() }
    }
}

/// Validates an arbitrary full-length vector without constructing anything.
pub fn validate(raw: &[f64]) -> Diagnostics {
    diagnose(raw)
}

/// A normalized mass assignment whose entries may be negative (a pseudo belief function).
#[derive(Clone, Debug, PartialEq)]
pub struct SignedMassFunction {
    frame: Frame,
    raw: Vec<f64>,
}

impl MassVector for SignedMassFunction {
    fn frame(&self) -> &Frame {
        &self.frame
    }
    fn raw(&self) -> &[f64] {
        &self.raw
    }
}

impl SignedMassFunction {
    pub fn new(frame: &Frame, values: Vec<f64>) -> Result<Self> {
        Self::from_raw(frame, expand(frame, values)?)
    }

    pub fn from_focal<I>(frame: &Frame, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        Self::from_raw(frame, gather(frame, entries)?)
    }

    pub fn from_raw(frame: &Frame, raw: Vec<f64>) -> Result<Self> {
        if raw.len() != frame.power_set_size() {
            return Err(Error::LengthMismatch { expected: frame.power_set_size(), actual: raw.len() });
        }
        if raw[0] != 0.0 {
            return Err(Error::EmptyEvent);
        }
        let diag = diagnose(&raw);
        if let Some(&s) = diag.non_finite.first() {
            return Err(Error::NonFinite(s));
        }
        if diag.sum_deviation > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum: diag.sum });
        }
        Ok(Self { frame: frame.clone(), raw })
    }

    pub fn is_admissible(&self) -> bool {
        self.raw.iter().all(|&v| v >= -NEGATIVITY_TOL)
    }

    pub fn values(&self) -> &[f64] {
        &self.raw[1..]
    }

    pub fn to_mass(&self) -> Result<MassFunction> {
        MassFunction::from_raw(&self.frame, self.raw.clone())
    }

    /// Entrywise affine combination `Σ w_i v_i`; weights must sum to one but may be negative.
    pub fn affine_combine(weights: &[(f64, &SignedMassFunction)]) -> Result<Self> {
        let (_, first) = weights.first().ok_or(Error::WeightMismatch { sum: 0.0 })?;
        let frame = first.frame.clone();
        let mut raw = vec![0.0; frame.power_set_size()];
        let mut sum = 0.0;
        for &(w, m) in weights {
            if m.frame != frame {
                return Err(Error::FrameMismatch);
            }
            sum += w;
            for (r, v) in raw.iter_mut().zip(&m.raw) {
                *r += w * v;
            }
        }
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::WeightMismatch { sum });
        }
        Self::from_raw(&frame, raw)
    }
}

impl From<MassFunction> for SignedMassFunction {
    fn from(m: MassFunction) -> Self {
        SignedMassFunction { frame: m.frame, raw: m.raw }
    }
}

/// Output of the conjunctive rule: mass may sit on the empty set.
#[derive(Clone, Debug, PartialEq)]
pub struct UnnormalizedMass {
    frame: Frame,
    raw: Vec<f64>,
}

impl MassVector for UnnormalizedMass {
    fn frame(&self) -> &Frame {
        &self.frame
    }
    fn raw(&self) -> &[f64] {
        &self.raw
    }
}

impl UnnormalizedMass {
    /// Builds from a full-length vector; slot 0 holds the conflict.
    pub fn from_raw(frame: &Frame, raw: Vec<f64>) -> Result<Self> {
        if raw.len() != frame.power_set_size() {
            return Err(Error::LengthMismatch { expected: frame.power_set_size(), actual: raw.len() });
        }
        if !raw[0].is_finite() {
            return Err(Error::NonFinite(Subset::EMPTY));
        }
        if raw[0] < -NEGATIVITY_TOL {
            return Err(Error::NegativeMass { subset: Subset::EMPTY, value: raw[0] });
        }
        let mut rest = raw.clone();
        rest[0] = 0.0;
        let mut diagnostics = diagnose(&rest);
        diagnostics.sum += raw[0];
        diagnostics.sum_deviation = (diagnostics.sum - 1.0).abs();
        if let Some(err) = diagnostics.into_error() {
            return Err(err);
        }
        Ok(Self { frame: frame.clone(), raw })
    }

    pub(crate) fn from_raw_unchecked(frame: &Frame, raw: Vec<f64>) -> Self {
        debug_assert_eq!(raw.len(), frame.power_set_size());
        Self { frame: frame.clone(), raw }
    }

    /// Mass on the empty set.
    pub fn conflict(&self) -> f64 {
        self.raw[0]
    }

    /// `Σ_{D⊆A} m(D)`, empty-set mass included.
    pub fn implicability(&self, event: Subset) -> f64 {
        event.subsets().map(|d| self.raw[d.index()]).sum()
    }

    /// `Σ_{D∩A≠∅} m(D)`.
    pub fn plausibility(&self, event: Subset) -> f64 {
        self.raw
            .iter()
            .enumerate()
            .filter(|(d, _)| *d as u32 & event.bits() != 0)
            .map(|(_, v)| v)
            .sum()
    }

    /// Drops the empty-set mass and rescales the rest (Dempster normalization).
    pub fn normalized(&self) -> Result<MassFunction> {
        let kappa = self.conflict();
        let keep = 1.0 - kappa;
        if keep < crate::ZERO_TOL {
            return Err(Error::TotalConflict { kappa });
        }
        let mut raw: Vec<f64> = self.raw.iter().map(|v| v / keep).collect();
        raw[0] = 0.0;
        MassFunction::from_raw(&self.frame, raw)
    }

    /// The same assignment as a [`MassFunction`], provided no mass sits on the empty set.
    pub fn to_mass(&self) -> Result<MassFunction> {
        if self.conflict() > NEGATIVITY_TOL {
            return Err(Error::NotNormalized { sum: 1.0 - self.conflict() });
        }
        let mut raw = self.raw.clone();
        raw[0] = 0.0;
        MassFunction::from_raw(&self.frame, raw)
    }
}

/// Belief values `b(A)` for every subset `A`, including `b(∅) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct BeliefVector {
    frame: Frame,
    values: Vec<f64>,
}

impl BeliefVector {
    pub fn new(frame: &Frame, values: Vec<f64>) -> Result<Self> {
        if values.len() != frame.power_set_size() {
            return Err(Error::LengthMismatch { expected: frame.power_set_size(), actual: values.len() });
        }
        if values[0].abs() > NORMALIZATION_TOL {
            return Err(Error::NotABeliefFunction { subset: Subset::EMPTY, mass: values[0] });
        }
        let top = values[frame.full().index()];
        if (top - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { sum: top });
        }
        Ok(Self { frame: frame.clone(), values })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, event: Subset) -> f64 {
        self.values[event.index()]
    }

    pub fn plausibility(&self) -> PlausibilityVector {
        let full = self.frame.full().index();
        let values = (0..self.values.len()).map(|a| 1.0 - self.values[a ^ full]).collect();
        PlausibilityVector { frame: self.frame.clone(), values }
    }

    /// Möbius inversion back to masses.
    pub fn to_mass(&self) -> Result<MassFunction> {
        let mut raw = self.values.clone();
        inverse_subset_sums(&mut raw);
        raw[0] = 0.0;
        if let Some((i, &mass)) = raw.iter().enumerate().find(|(_, &v)| v < -NORMALIZATION_TOL) {
            return Err(Error::NotABeliefFunction { subset: Subset(i as u32), mass });
        }
        for v in raw.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        MassFunction::from_raw(&self.frame, raw)
    }
}

/// Plausibility values `pl(A) = 1 − b(A^c)` for every subset `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlausibilityVector {
    frame: Frame,
    values: Vec<f64>,
}

impl PlausibilityVector {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, event: Subset) -> f64 {
        self.values[event.index()]
    }
}
