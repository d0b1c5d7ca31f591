//! Numerical checks that do not go through the closed forms.
//!
//! Everything here evaluates distances directly, solves linear systems, or
//! samples feasible points. Sampling can only confirm a claimed optimum, never
//! prove it.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::lp::ConditioningSimplex;
use crate::mass::{MassFunction, MassVector, SignedMassFunction};
use crate::{NORMALIZATION_TOL, ZERO_TOL};

/// Minkowski norms on mass vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub const ALL: [Norm; 3] = [Norm::L1, Norm::L2, Norm::Linf];

    fn of(self, diffs: impl Iterator<Item = f64>) -> f64 {
        match self {
            Norm::L1 => diffs.map(f64::abs).sum(),
            Norm::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Linf => diffs.map(f64::abs).fold(0.0, f64::max),
        }
    }
}

/// Lp distance between two mass vectors over all nonempty subsets.
pub fn lp_distance(a: &impl MassVector, b: &impl MassVector, norm: Norm) -> Result<f64> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    Ok(norm.of(a.raw().iter().zip(b.raw()).skip(1).map(|(x, y)| x - y)))
}

/// Jousselme's distance `sqrt(½ Δᵀ D Δ)` with `D(A,B) = |A∩B| / |A∪B|`.
pub fn jousselme_distance(a: &impl MassVector, b: &impl MassVector) -> Result<f64> {
    if a.frame() != b.frame() {
        return Err(Error::FrameMismatch);
    }
    let delta: Vec<(Subset, f64)> = a
        .raw()
        .iter()
        .zip(b.raw())
        .enumerate()
        .skip(1)
        .map(|(i, (x, y))| (Subset(i as u32), x - y))
        .filter(|(_, d)| *d != 0.0)
        .collect();
    let mut quad = 0.0;
    for &(s, ds) in &delta {
        for &(t, dt) in &delta {
            let jaccard = s.intersection(t).len() as f64 / s.union(t).len() as f64;
            quad += ds * jaccard * dt;
        }
    }
    Ok((0.5 * quad.max(0.0)).sqrt())
}

/// Auxiliary variables `β(B) = m(B) − m_a(B)` for the proper subsets of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct BetaVector {
    pub event: Subset,
    /// `(B, β(B))` for `∅ ⊊ B ⊊ A`, ascending.
    pub values: Vec<(Subset, f64)>,
}

impl BetaVector {
    /// Differences between `m` and a candidate `m_a` in `M_A`.
    pub fn between(m: &MassFunction, candidate: &impl MassVector, event: Subset) -> Self {
        let values = event
            .nonempty_subsets()
            .filter(|&b| b != event)
            .map(|b| (b, m.mass(b) - candidate.mass(b)))
            .collect();
        Self { event, values }
    }

    /// `β(A) = b(A) − 1 − Σ β(B)`.
    pub fn event_value(&self, m: &MassFunction) -> f64 {
        m.belief().get(self.event) - 1.0 - self.values.iter().map(|(_, v)| v).sum::<f64>()
    }

    /// The point `m_a` of `M_A` these variables describe.
    pub fn reconstruct(&self, m: &MassFunction) -> Result<SignedMassFunction> {
        let mut raw = vec![0.0; m.frame().power_set_size()];
        for &(b, beta) in &self.values {
            raw[b.index()] = m.mass(b) - beta;
        }
        raw[self.event.index()] = m.mass(self.event) - self.event_value(m);
        SignedMassFunction::from_raw(m.frame(), raw)
    }
}

/// The `d × d` matrix with 2 on the diagonal and 1 elsewhere.
pub fn normal_matrix(d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |i, j| if i == j { 2.0 } else { 1.0 })
}

/// Largest deviation of `𝒜⁻¹·1` from `1/(d+1)·1`, with the inverse taken numerically.
pub fn normal_matrix_inverse_identity(d: usize) -> Result<f64> {
    if d == 0 {
        return Ok(0.0);
    }
    let inv = normal_matrix(d)
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("singular normal matrix".into()))?;
    let ones = DVector::from_element(d, 1.0);
    let expected = 1.0 / (d as f64 + 1.0);
    Ok((inv * ones).iter().map(|v| (v - expected).abs()).fold(0.0, f64::max))
}

/// L2 projection onto `M_A` by solving the normal equations
/// `2β(B) + Σ_{X≠B} β(X) = b(A) − 1` with an LU factorisation.
pub fn l2_project_linear_solve(m: &MassFunction, event: Subset) -> Result<MassFunction> {
    m.frame().check(event)?;
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    let proper: Vec<Subset> = event.nonempty_subsets().filter(|&b| b != event).collect();
    let d = proper.len();
    let rhs_value = m.belief().get(event) - 1.0;
    let beta = if d == 0 {
        Vec::new()
    } else {
        let rhs = DVector::from_element(d, rhs_value);
        let solution = normal_matrix(d)
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::InvalidArgument("singular normal matrix".into()))?;
        solution.iter().copied().collect()
    };
    let betas = BetaVector { event, values: proper.into_iter().zip(beta).collect() };
    let mut raw = betas.reconstruct(m)?.raw().to_vec();
    // LU round-off can leave entries a hair below zero.
    for v in raw.iter_mut() {
        if *v < 0.0 && *v > -NORMALIZATION_TOL {
            *v = 0.0;
        }
    }
    MassFunction::from_raw(m.frame(), raw)
}

/// Uniform draw from `M_A` (flat Dirichlet over the generators).
pub fn sample_conditioning_simplex<R: Rng + ?Sized>(simplex: &ConditioningSimplex, rng: &mut R) -> SignedMassFunction {
    let draws: Vec<f64> = (0..simplex.dimension()).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    let coords: Vec<f64> = draws.iter().map(|d| d / total).collect();
    simplex.point(&coords).expect("Dirichlet draw is normalized")
}

/// Outcome of a sampling check.
#[derive(Clone, Debug, PartialEq)]
pub struct NonImprovementReport {
    pub holds: bool,
    /// Smallest candidate distance: the claimed optimum.
    pub claimed: f64,
    /// `min(sample distance) − claimed`; negative means a sample did better.
    pub worst_margin: f64,
    /// A sample that beat the claimed optimum, if any.
    pub witness: Option<SignedMassFunction>,
    /// Largest `distance − claimed` over candidates and their midpoints;
    /// only checked for L1 and L∞, whose optima form convex sets.
    pub candidate_spread: f64,
}

/// Checks that no point of `M_A` is closer to `m` than the claimed minimisers.
///
/// The sample set holds `samples` uniform draws, every corner `m_B`, and
/// every pairwise midpoint of the candidates.
pub fn sampled_nonimprovement(
    m: &MassFunction,
    event: Subset,
    norm: Norm,
    candidates: &[SignedMassFunction],
    samples: usize,
    seed: u64,
) -> Result<NonImprovementReport> {
    if candidates.is_empty() {
        return Err(Error::InvalidArgument("no candidate minimisers".into()));
    }
    let simplex = ConditioningSimplex::new(m.frame(), event)?;
    let distances = candidates
        .iter()
        .map(|c| lp_distance(m, c, norm))
        .collect::<Result<Vec<_>>>()?;
    let claimed = distances.iter().copied().fold(f64::INFINITY, f64::min);

    let midpoints = candidates
        .iter()
        .enumerate()
        .flat_map(|(i, a)| candidates[i + 1..].iter().map(move |b| (a, b)))
        .map(|(a, b)| SignedMassFunction::affine_combine(&[(0.5, a), (0.5, b)]))
        .collect::<Result<Vec<_>>>()?;

    let mut candidate_spread = 0.0f64;
    if norm != Norm::L2 {
        for d in distances.iter().copied() {
            candidate_spread = candidate_spread.max(d - claimed);
        }
        for mid in &midpoints {
            candidate_spread = candidate_spread.max(lp_distance(m, mid, norm)? - claimed);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let corners = simplex
        .generators()
        .iter()
        .map(|&g| simplex.corner(g).map(SignedMassFunction::from))
        .collect::<Result<Vec<_>>>()?;
    let random = (0..samples).map(|_| sample_conditioning_simplex(&simplex, &mut rng));

    let mut worst_margin = f64::INFINITY;
    let mut witness = None;
    for point in corners.into_iter().chain(midpoints).chain(random) {
        let margin = lp_distance(m, &point, norm)? - claimed;
        if margin < worst_margin {
            worst_margin = margin;
            if margin < -NORMALIZATION_TOL {
                witness = Some(point);
            }
        }
    }
    let holds = worst_margin >= -NORMALIZATION_TOL && candidate_spread <= NORMALIZATION_TOL;
    Ok(NonImprovementReport { holds, claimed, worst_margin, witness, candidate_spread })
}

/// Exhaustive grid over `M_A` for a two-element event.
#[derive(Clone, Debug, PartialEq)]
pub struct GridReport {
    pub points: usize,
    pub grid_minimum: f64,
    pub claimed: f64,
}

impl GridReport {
    /// No grid point beats the claim, and the grid gets within `slack` of it.
    pub fn confirms(&self, slack: f64) -> bool {
        self.grid_minimum >= self.claimed - NORMALIZATION_TOL && self.grid_minimum <= self.claimed + slack
    }
}

/// Evaluates the distance from `m` at every point of a regular grid of step
/// `resolution` on the 2-simplex `M_A`, `|A| = 2`.
pub fn grid_minimum(m: &MassFunction, event: Subset, norm: Norm, claimed: f64, resolution: f64) -> Result<GridReport> {
    let simplex = ConditioningSimplex::new(m.frame(), event)?;
    if event.len() != 2 {
        return Err(Error::WrongDimensions { frame: m.frame().len(), event: event.len() });
    }
    let steps = (1.0 / resolution).round() as usize;
    let gens = simplex.generators();
    let base: Vec<f64> = m.raw().to_vec();
    let mut grid_minimum = f64::INFINITY;
    let mut points = 0;
    // Only three entries change; the rest of the difference is constant.
    let fixed: Vec<f64> = base
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(i, _)| !gens.iter().any(|g| g.index() == *i))
        .map(|(_, v)| *v)
        .collect();
    for i in 0..=steps {
        for j in 0..=(steps - i) {
            let p = [i as f64 / steps as f64, j as f64 / steps as f64, (steps - i - j) as f64 / steps as f64];
            let diffs = fixed
                .iter()
                .copied()
                .chain(gens.iter().zip(p).map(|(g, v)| base[g.index()] - v));
            grid_minimum = grid_minimum.min(norm.of(diffs));
            points += 1;
        }
    }
    Ok(GridReport { points, grid_minimum, claimed })
}

/// Sampled envelope of Bayes-conditioned probabilities consistent with `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct CredalEnvelope {
    pub event: Subset,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Draws with `P(B) > 0`.
    pub accepted: usize,
}

impl CredalEnvelope {
    pub fn get(&self, a: Subset) -> (f64, f64) {
        (self.lower[a.index()], self.upper[a.index()])
    }
}

/// Samples probabilities `P ≥ b` by splitting every focal mass among its
/// elements, then conditions each on `B`.
///
/// Half of the splits send the whole focal mass to one element, so extreme
/// points of the credal set are reached with positive probability.
pub fn credal_sampling(m: &MassFunction, event: Subset, samples: usize, seed: u64) -> Result<CredalEnvelope> {
    let frame: &Frame = m.frame();
    frame.check(event)?;
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    let pl = m.plausibility().get(event);
    if pl <= ZERO_TOL {
        return Err(Error::TotalConflict { kappa: 1.0 - pl });
    }
    let focal = m.focal();
    let n = frame.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = vec![f64::INFINITY; frame.power_set_size()];
    let mut upper = vec![f64::NEG_INFINITY; frame.power_set_size()];
    let mut accepted = 0;
    let mut prob = vec![0.0; n];
    for _ in 0..samples {
        prob.iter_mut().for_each(|p| *p = 0.0);
        for &(set, mass) in &focal {
            let elements: Vec<usize> = set.elements().collect();
            if elements.len() == 1 || rng.random_bool(0.5) {
                let pick = elements[rng.random_range(0..elements.len())];
                prob[pick] += mass;
            } else {
                let draws: Vec<f64> = elements.iter().map(|_| rng.sample::<f64, _>(Exp1)).collect();
                let total: f64 = draws.iter().sum();
                for (e, d) in elements.iter().zip(draws) {
                    prob[*e] += mass * d / total;
                }
            }
        }
        let p_event: f64 = event.elements().map(|e| prob[e]).sum();
        if p_event <= ZERO_TOL {
            continue;
        }
        accepted += 1;
        for a in frame.subsets() {
            let p = a.intersection(event).elements().map(|e| prob[e]).sum::<f64>() / p_event;
            let i = a.index();
            lower[i] = lower[i].min(p);
            upper[i] = upper[i].max(p);
        }
    }
    Ok(CredalEnvelope { event, lower, upper, accepted })
}
