mod common;

use geocond::classical::{self, credal_condition, dempster_closed_form, nested_chain_check};
use geocond::combination::{
    conditioning_induced_combine, conjunctive_combine, dempster_decomposition_check, dempster_sum, disjunctive_combine,
    ConditioningRule,
};
use geocond::io::MassDocument;
use geocond::lp::{self, ConditioningSimplex};
use geocond::oracle::{self, jousselme_distance, lp_distance, Norm};
use geocond::{Frame, MassFunction, MassVector, SignedMassFunction, Subset};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::max_gap;

const TOL: f64 = 1e-9;

fn mass_on(n: usize) -> impl Strategy<Value = MassFunction> {
    let len = (1usize << n) - 1;
    prop::collection::vec(prop_oneof![3 => Just(0.0), 2 => 0.001..1.0f64], len)
        .prop_filter("some mass", |w| w.iter().sum::<f64>() > 0.0)
        .prop_map(move |w| {
            let total: f64 = w.iter().sum();
            let frame = Frame::anonymous(n).unwrap();
            MassFunction::new(&frame, w.into_iter().map(|v| v / total).collect()).unwrap()
        })
}

fn mass() -> impl Strategy<Value = MassFunction> {
    (1usize..=5).prop_flat_map(mass_on)
}

fn event_in(frame: &Frame) -> impl Strategy<Value = Subset> {
    (1..=frame.full().bits()).prop_map(Subset)
}

fn pair() -> impl Strategy<Value = (MassFunction, Subset)> {
    mass().prop_flat_map(|m| {
        let events = event_in(m.frame());
        (Just(m), events)
    })
}

fn two_masses() -> impl Strategy<Value = (MassFunction, MassFunction)> {
    (1usize..=4).prop_flat_map(|n| (mass_on(n), mass_on(n)))
}

/// Least-squares projection of `b` onto the affine hull of the categorical
/// belief vectors `b_B`, `B ⊆ A`, returned as masses on the subsets of `A`.
fn belief_space_projection(m: &MassFunction, event: Subset) -> Vec<(Subset, f64)> {
    let frame = m.frame();
    let rows: Vec<Subset> = frame.nonempty_subsets().collect();
    let categorical = |g: Subset| -> Vec<f64> { rows.iter().map(|&s| if g.is_subset_of(s) { 1.0 } else { 0.0 }).collect() };
    let b = m.belief();
    let anchor = categorical(event);
    let free: Vec<Subset> = event.nonempty_subsets().filter(|&g| g != event).collect();
    if free.is_empty() {
        return vec![(event, 1.0)];
    }
    let columns: Vec<Vec<f64>> = free
        .iter()
        .map(|&g| categorical(g).iter().zip(&anchor).map(|(x, y)| x - y).collect())
        .collect();
    let design = DMatrix::from_fn(rows.len(), free.len(), |i, j| columns[j][i]);
    let target = DVector::from_iterator(rows.len(), rows.iter().zip(&anchor).map(|(&s, a)| b.get(s) - a));
    let normal = design.transpose() * &design;
    let rhs = design.transpose() * target;
    let solution = normal.lu().solve(&rhs).expect("categorical belief vectors are independent");
    let mut out: Vec<(Subset, f64)> = free.iter().copied().zip(solution.iter().copied()).collect();
    out.push((event, 1.0 - solution.iter().sum::<f64>()));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn zeta_and_moebius_are_inverse(m in mass()) {
        prop_assert!(max_gap(&m.belief().to_mass().unwrap(), &m) <= 1e-12);
    }

    #[test]
    fn plausibility_is_dual_to_belief(m in mass()) {
        let b = m.belief();
        let pl = m.plausibility();
        for a in m.frame().subsets() {
            prop_assert!((pl.get(a) - (1.0 - b.get(m.frame().complement(a)))).abs() <= 1e-12);
            prop_assert!(b.get(a) <= pl.get(a) + 1e-12);
        }
    }

    #[test]
    fn belief_is_monotone_and_two_monotone(m in mass()) {
        let b = m.belief();
        for x in m.frame().subsets() {
            for y in m.frame().subsets() {
                if x.is_subset_of(y) {
                    prop_assert!(b.get(x) <= b.get(y) + 1e-12);
                }
                let lhs = b.get(x.union(y));
                let rhs = b.get(x) + b.get(y) - b.get(x.intersection(y));
                prop_assert!(lhs >= rhs - 1e-12);
            }
        }
    }

    #[test]
    fn document_round_trip((m, _) in pair()) {
        let doc = MassDocument::from_vector(&m);
        let back = MassDocument::parse(&doc.to_json()).unwrap().to_mass().unwrap();
        prop_assert!(max_gap(&back, &m) <= 1e-6);
    }

    #[test]
    fn dempster_sum_is_commutative_with_vacuous_identity((m1, m2) in two_masses()) {
        let vacuous = MassFunction::vacuous(m1.frame());
        let (same, report) = dempster_sum(&m1, &vacuous).unwrap();
        prop_assert_eq!(report.kappa, 0.0);
        prop_assert!(max_gap(&same, &m1) <= 1e-12);
        if let Ok((ab, kab)) = dempster_sum(&m1, &m2) {
            let (ba, kba) = dempster_sum(&m2, &m1).unwrap();
            prop_assert!(max_gap(&ab, &ba) <= 1e-12);
            prop_assert!((kab.kappa - kba.kappa).abs() <= 1e-12);
            prop_assert!((ab.total() - 1.0).abs() <= TOL);
        }
    }

    #[test]
    fn normalized_conjunctive_is_dempster((m1, m2) in two_masses()) {
        let unnormalized = conjunctive_combine(&m1, &m2).unwrap();
        prop_assert!((unnormalized.total() - 1.0).abs() <= TOL);
        match dempster_sum(&m1, &m2) {
            Ok((d, report)) => {
                prop_assert!((report.kappa - unnormalized.conflict()).abs() <= 1e-12);
                prop_assert!(max_gap(&unnormalized.normalized().unwrap(), &d) <= 1e-12);
            }
            Err(_) => prop_assert!(unnormalized.conflict() >= 1.0 - 1e-12),
        }
    }

    #[test]
    fn disjunctive_implicabilities_multiply((m1, m2) in two_masses()) {
        let d = disjunctive_combine(&m1, &m2).unwrap();
        let (b, b1, b2) = (d.belief(), m1.belief(), m2.belief());
        for a in m1.frame().subsets() {
            prop_assert!((b.get(a) - b1.get(a) * b2.get(a)).abs() <= 1e-12);
        }
    }

    #[test]
    fn dempster_decomposes_over_focal_elements((m1, m2) in two_masses()) {
        if dempster_sum(&m1, &m2).is_ok() {
            let check = dempster_decomposition_check(&m1, &m2).unwrap();
            prop_assert!(check.max_deviation <= TOL);
        }
    }

    #[test]
    fn induced_combination_with_categorical_is_the_rule((m, a) in pair()) {
        let categorical = MassFunction::categorical(m.frame(), a).unwrap();
        for rule in [ConditioningRule::L2, ConditioningRule::Dempster, ConditioningRule::SuppesGeometric, ConditioningRule::Conjunctive] {
            if let Ok(direct) = rule.condition(&m, a) {
                prop_assert_eq!(conditioning_induced_combine(rule, &m, &categorical).unwrap(), direct);
            }
        }
    }

    #[test]
    fn l1_vertices_lie_in_the_conditioning_simplex((m, a) in pair()) {
        let simplex = ConditioningSimplex::new(m.frame(), a).unwrap();
        let l1 = lp::l1_condition(&m, a).unwrap();
        let l2 = lp::l2_condition(&m, a).unwrap();
        prop_assert!(l1.vertices.iter().all(|(_, v)| simplex.contains(v)));
        prop_assert!(l1.admissible.iter().all(|ok| *ok));
        prop_assert!(lp::l1_contains(&m, a, &l2).unwrap());
        prop_assert!(max_gap(&l1.barycenter, &l2) <= 1e-12);
        let distance = lp_distance(&m, &l1.vertices[0].1, Norm::L1).unwrap();
        for (_, v) in &l1.vertices {
            prop_assert!((lp_distance(&m, v, Norm::L1).unwrap() - distance).abs() <= 1e-12);
        }
        prop_assert!((lp_distance(&m, &l2, Norm::L1).unwrap() - distance).abs() <= 1e-12);
    }

    #[test]
    fn l2_matches_the_linear_system((m, a) in pair()) {
        let closed = lp::l2_condition(&m, a).unwrap();
        let solved = oracle::l2_project_linear_solve(&m, a).unwrap();
        prop_assert!(max_gap(&closed, &solved) <= TOL);
    }

    #[test]
    fn l2_is_closer_than_sampled_points((m, a) in pair(), seed in any::<u64>()) {
        let simplex = ConditioningSimplex::new(m.frame(), a).unwrap();
        let l2 = lp::l2_condition(&m, a).unwrap();
        let best = lp_distance(&m, &l2, Norm::L2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let p = oracle::sample_conditioning_simplex(&simplex, &mut rng);
            prop_assert!(lp_distance(&m, &p, Norm::L2).unwrap() >= best - 1e-12);
        }
    }

    #[test]
    fn linf_barycentre_is_l2_and_l2_is_linf_optimal((m, a) in pair()) {
        let linf = lp::linf_condition(&m, a).unwrap();
        let l2 = lp::l2_condition(&m, a).unwrap();
        let value = lp::linf_norm_value(&m, a).unwrap();
        prop_assert!(max_gap(&linf.barycenter, &l2) <= 1e-12);
        prop_assert!(lp::linf_contains(&m, a, &l2).unwrap());
        prop_assert!((lp_distance(&m, &l2, Norm::Linf).unwrap() - value).abs() <= 1e-12);
        if lp::linf_vertices_are_optimal(&m, a).unwrap() {
            for (_, v) in &linf.vertices {
                prop_assert!((lp_distance(&m, v, Norm::Linf).unwrap() - value).abs() <= 1e-12);
                prop_assert!(lp::linf_contains(&m, a, v).unwrap());
            }
        }
    }

    #[test]
    fn linf_vertices_optimal_for_events_of_two_elements(m in mass_on(3), a in prop::sample::select(vec![3u32, 5, 6])) {
        prop_assert!(lp::linf_vertices_are_optimal(&m, Subset(a)).unwrap());
    }

    #[test]
    fn l2_conditioning_composes((m, a) in pair(), inner in any::<u32>()) {
        let inner = Subset(inner & a.bits());
        prop_assume!(!inner.is_empty());
        let twice = lp::l2_condition(&lp::l2_condition(&m, a).unwrap(), inner).unwrap();
        prop_assert!(max_gap(&twice, &lp::l2_condition(&m, inner).unwrap()) <= 1e-12);
    }

    #[test]
    fn belief_space_l2_is_the_least_squares_projection((m, a) in pair()) {
        let closed = lp::l2_condition_belief_space(&m, a).unwrap();
        prop_assert!((closed.total() - 1.0).abs() <= TOL);
        for (g, v) in belief_space_projection(&m, a) {
            prop_assert!((closed.mass(g) - v).abs() <= TOL, "{} vs {} on {}", closed.mass(g), v, g);
        }
    }

    #[test]
    fn belief_space_barycentre_sums_to_one((m, a) in pair()) {
        let bary = lp::linf_barycentre_belief_space(&m, a).unwrap();
        prop_assert!((bary.total() - 1.0).abs() <= TOL);
        let outside = m.frame().complement(a);
        if m.core().is_subset_of(a) || outside.is_empty() {
            prop_assert!(max_gap(&bary, &m) <= 1e-12);
        }
    }

    #[test]
    fn classical_intervals_are_ordered((m, b) in pair()) {
        let pl_b = m.plausibility().get(b);
        prop_assume!(pl_b > 1e-9);
        let dempster = dempster_closed_form(&m, b).unwrap();
        let via_sum = classical::dempster_condition(&m, b).unwrap().belief();
        for a in m.frame().subsets() {
            let (lo, up) = dempster.get(a);
            prop_assert!(lo <= up + 1e-12);
            prop_assert!((lo - via_sum.get(a)).abs() <= TOL);
        }
        if let Ok(credal) = credal_condition(&m, b) {
            prop_assert!(dempster.is_within(&credal.intervals, TOL));
            let report = nested_chain_check(&m, b).unwrap();
            let conflict = m.belief().get(m.frame().complement(b));
            // Only the conjunctive link can break, and only through conflict.
            for link in &report.links {
                if link.link != "b_and <= pl_and" || conflict <= 1e-12 {
                    prop_assert!(link.slack >= -TOL, "{} {}", link.link, link.slack);
                }
            }
        }
    }

    #[test]
    fn credal_samples_stay_inside_the_closed_form((m, b) in pair(), seed in any::<u64>()) {
        prop_assume!(m.plausibility().get(b) > 1e-9);
        if let Ok(credal) = credal_condition(&m, b) {
            let envelope = oracle::credal_sampling(&m, b, 200, seed).unwrap();
            for a in m.frame().nonempty_subsets() {
                let (lo, up) = credal.intervals.get(a);
                let (slo, sup) = envelope.get(a);
                if envelope.accepted > 0 {
                    prop_assert!(slo >= lo - TOL && sup <= up + TOL);
                }
            }
        }
    }

    #[test]
    fn distances_satisfy_the_triangle_inequality(
        (x, y, z) in (1usize..=4).prop_flat_map(|n| (mass_on(n), mass_on(n), mass_on(n)))
    ) {
        for norm in Norm::ALL {
            let xy = lp_distance(&x, &y, norm).unwrap();
            let yz = lp_distance(&y, &z, norm).unwrap();
            let xz = lp_distance(&x, &z, norm).unwrap();
            prop_assert!(xz <= xy + yz + 1e-12);
        }
        let xy = jousselme_distance(&x, &y).unwrap();
        let yz = jousselme_distance(&y, &z).unwrap();
        let xz = jousselme_distance(&x, &z).unwrap();
        prop_assert!(xz <= xy + yz + 1e-12);
        prop_assert!(jousselme_distance(&x, &x).unwrap() <= 1e-12);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&xy));
    }

    #[test]
    fn affine_combination_of_vertices_stays_normalized((m, a) in pair(), w in 0.0..1.0f64) {
        let linf = lp::linf_condition(&m, a).unwrap();
        let first = &linf.vertices[0].1;
        let last = &linf.vertices[linf.vertices.len() - 1].1;
        let mix = SignedMassFunction::affine_combine(&[(w, first), (1.0 - w, last)]).unwrap();
        prop_assert!((mix.total() - 1.0).abs() <= TOL);
    }
}
