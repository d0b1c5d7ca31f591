#![allow(dead_code)]

use geocond::{Frame, MassFunction, MassVector, Subset};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ternary() -> (Frame, MassFunction, Subset) {
    let f = Frame::new(["x", "y", "z"]).unwrap();
    let m = MassFunction::new(&f, vec![0.2, 0.3, 0.0, 0.0, 0.5, 0.0, 0.0]).unwrap();
    let a = f.parse_key("x y").unwrap();
    (f, m, a)
}

/// Uniformly chosen event size, then a uniform event of that size.
pub fn random_event<R: Rng>(frame: &Frame, rng: &mut R) -> Subset {
    let n = frame.len();
    let size = rng.random_range(1..=n);
    let elements: Vec<usize> = (0..n).collect();
    elements
        .choose_multiple(rng, size)
        .fold(Subset::EMPTY, |s, &i| s.union(Subset::singleton(i)))
}

/// Random mass function on `n` elements with up to `max_focal` focal elements.
pub fn random_mass<R: Rng>(n: usize, max_focal: usize, rng: &mut R) -> MassFunction {
    let frame = Frame::anonymous(n).unwrap();
    let available = frame.power_set_size() - 1;
    let k = rng.random_range(1..=max_focal.min(available));
    MassFunction::random_with(&frame, k, rng).unwrap()
}

/// `(m, A)` with `2 ≤ n ≤ 6`.
pub fn random_pair<R: Rng>(rng: &mut R) -> (MassFunction, Subset) {
    let n = rng.random_range(2..=6);
    let m = random_mass(n, 12, rng);
    let a = random_event(m.frame(), rng);
    (m, a)
}

/// `(m, A)` whose outside mass is spread evenly enough that
/// `max_{C⊄A} m(C) < Σ_{C⊄A} m(C) / (2^|A| − 1)`.
pub fn spread_outside_pair<R: Rng>(rng: &mut R) -> (MassFunction, Subset) {
    let n = rng.random_range(3..=6);
    let frame = Frame::anonymous(n).unwrap();
    let size = rng.random_range(1..=2.min(n - 1));
    let elements: Vec<usize> = (0..n).collect();
    let a = elements
        .choose_multiple(rng, size)
        .fold(Subset::EMPTY, |s, &i| s.union(Subset::singleton(i)));
    let mut raw = vec![0.0; frame.power_set_size()];
    for s in frame.nonempty_subsets() {
        raw[s.index()] = if s.is_subset_of(a) {
            rng.random_range(0.0..1.0)
        } else {
            1.0 + 0.2 * rng.random_range(0.0..1.0)
        };
    }
    let total: f64 = raw.iter().sum();
    raw.iter_mut().for_each(|v| *v /= total);
    (MassFunction::from_raw(&frame, raw).unwrap(), a)
}

pub fn max_gap(a: &impl MassVector, b: &impl MassVector) -> f64 {
    a.raw().iter().zip(b.raw()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Masses of `x`, `y`, `{x, y}` for the ternary instance.
pub fn coords(f: &Frame, v: &impl MassVector) -> [f64; 3] {
    ["x", "y", "x y"].map(|k| v.mass(f.parse_key(k).unwrap()))
}
