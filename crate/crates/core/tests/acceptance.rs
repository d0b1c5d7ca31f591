//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use geocond::classical::{self, nested_chain_check};
use geocond::combination::{conditioning_induced_combine, dempster_decomposition_check, dempster_sum, ConditioningRule};
use geocond::lp::{self, SimplexKind};
use geocond::oracle::{self, Norm};
use geocond::{MassFunction, MassVector, Subset};

use common::{coords, max_gap, random_event, random_pair, rng, spread_outside_pair, ternary};

const GOLDEN_TOL: f64 = 1e-12;
const SWEEP_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-9;
const CHAIN_TOL: f64 = 1e-9;
const CSV_TOL: f64 = 1e-9;
const GOLDEN_RUNTIME: Duration = Duration::from_millis(1);
const ORACLE_RUNTIME: Duration = Duration::from_secs(60);
const SAMPLES: usize = 10_000;
const GRID_RESOLUTION: f64 = 1e-3;
/// Grid distance can exceed the true minimum by at most a few grid steps.
const GRID_SLACK: f64 = 3e-3;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn close(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn golden_reproduction() -> Outcome {
    let (f, m, a) = ternary();
    let mut best = Duration::MAX;
    let mut result = None;
    for _ in 0..20 {
        let start = Instant::now();
        let l1 = lp::l1_condition(&m, a).unwrap();
        let l2 = lp::l2_condition(&m, a).unwrap();
        let linf = lp::linf_condition(&m, a).unwrap();
        best = best.min(start.elapsed());
        result = Some((l1, l2, linf));
    }
    let (l1, l2, linf) = result.unwrap();
    let l1_expected = [[0.7, 0.3, 0.0], [0.2, 0.8, 0.0], [0.2, 0.3, 0.5]];
    let linf_expected = [[-0.3, 0.8, 0.5], [0.7, -0.2, 0.5], [0.7, 0.8, -0.5]];
    let l1_ok = l1.vertices.len() == 3
        && l1.vertices.iter().zip(l1_expected).all(|((_, v), e)| close(coords(&f, v), e, GOLDEN_TOL));
    let l2_ok = close(coords(&f, &l2), [11.0 / 30.0, 14.0 / 30.0, 5.0 / 30.0], GOLDEN_TOL);
    let linf_ok = linf.vertices.len() == 3
        && linf.vertices.iter().zip(linf_expected).all(|((_, v), e)| close(coords(&f, v), e, GOLDEN_TOL));
    outcome(
        l1_ok && l2_ok && linf_ok && best < GOLDEN_RUNTIME,
        format!("L1 {l1_ok}, L2 {l2_ok}, Linf {linf_ok}, runtime {best:?}"),
    )
}

fn l1_barycentre_sweep() -> Outcome {
    let mut r = rng(2);
    let mut worst = 0.0f64;
    let count = 600;
    for _ in 0..count {
        let (m, a) = random_pair(&mut r);
        let l1 = lp::l1_condition(&m, a).unwrap();
        let l2 = lp::l2_condition(&m, a).unwrap();
        worst = worst.max(max_gap(&l1.barycenter, &l2));
    }
    outcome(worst <= SWEEP_TOL, format!("{count} pairs, max |mean(L1 vertices) - L2| = {worst:.2e}"))
}

fn sweep_instances() -> Vec<(MassFunction, Subset)> {
    let mut r = rng(3);
    (0..600)
        .map(|i| if i % 4 == 3 { spread_outside_pair(&mut r) } else { random_pair(&mut r) })
        .collect()
}

fn linf_sweep() -> Outcome {
    let (mut case1, mut case2) = (0, 0);
    let (mut bary_gap, mut norm_gap) = (0.0f64, 0.0f64);
    let (mut overshooting, mut norm_fail, mut norm_fail_explained) = (0, 0, 0);
    for (m, a) in sweep_instances() {
        let optimal = lp::linf_vertices_are_optimal(&m, a).unwrap();
        if !optimal {
            overshooting += 1;
        }
        let linf = lp::linf_condition(&m, a).unwrap();
        let l2 = lp::l2_condition(&m, a).unwrap();
        match linf.kind {
            SimplexKind::LinfPoint => {
                case2 += 1;
                bary_gap = bary_gap.max(max_gap(&linf.vertices[0].1, &l2));
            }
            _ => case1 += 1,
        }
        bary_gap = bary_gap.max(max_gap(&linf.barycenter, &l2));
        let claimed = lp::linf_norm_value(&m, a).unwrap();
        let mut gap = 0.0f64;
        for (_, v) in &linf.vertices {
            gap = gap.max((oracle::lp_distance(&m, v, Norm::Linf).unwrap() - claimed).abs());
        }
        norm_gap = norm_gap.max(gap);
        if gap > SWEEP_TOL {
            norm_fail += 1;
            if !optimal {
                norm_fail_explained += 1;
            }
        }
    }
    outcome(
        case1 > 0 && case2 >= 50 && bary_gap <= SWEEP_TOL && norm_gap <= SWEEP_TOL,
        format!(
            "{} pairs ({case1} simplex, {case2} single point), max |bary - L2| = {bary_gap:.2e}, \
             max |vertex norm - value| = {norm_gap:.2e} (exceeded on {norm_fail} pairs, {norm_fail_explained} of them \
             with S < (k-2)M; {overshooting} such pairs in total)",
            case1 + case2
        ),
    )
}

fn optimality_oracles() -> Outcome {
    let start = Instant::now();
    let instances = sweep_instances();
    let mut solve_gap = 0.0f64;
    for (m, a) in &instances {
        let closed = lp::l2_condition(m, *a).unwrap();
        let solved = oracle::l2_project_linear_solve(m, *a).unwrap();
        solve_gap = solve_gap.max(max_gap(&closed, &solved));
    }

    let mut sampled_fail = Vec::new();
    let mut grid_checked = 0;
    let mut grid_fail = Vec::new();
    let checked = 100;
    for (i, (m, a)) in instances.iter().take(checked).enumerate() {
        let l1: Vec<_> = lp::l1_condition(m, *a).unwrap().vertices.into_iter().map(|(_, v)| v).collect();
        let linf: Vec<_> = lp::linf_condition(m, *a).unwrap().vertices.into_iter().map(|(_, v)| v).collect();
        let l2 = vec![lp::l2_condition(m, *a).unwrap().to_signed()];
        for (norm, candidates) in [(Norm::L1, &l1), (Norm::L2, &l2), (Norm::Linf, &linf)] {
            let report = oracle::sampled_nonimprovement(m, *a, norm, candidates, SAMPLES, i as u64).unwrap();
            if !report.holds {
                sampled_fail.push((i, norm, lp::linf_vertices_are_optimal(m, *a).unwrap()));
            }
            if a.len() == 2 && norm != Norm::L2 {
                if norm == Norm::L1 {
                    grid_checked += 1;
                }
                let grid = oracle::grid_minimum(m, *a, norm, report.claimed, GRID_RESOLUTION).unwrap();
                if !grid.confirms(GRID_SLACK) {
                    grid_fail.push((i, norm));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let unexplained = sampled_fail.iter().filter(|(_, norm, optimal)| *norm != Norm::Linf || *optimal).count();
    outcome(
        solve_gap <= ORACLE_TOL && sampled_fail.is_empty() && grid_fail.is_empty() && elapsed < ORACLE_RUNTIME,
        format!(
            "linear solve gap {solve_gap:.2e} on {} instances; sampling ({SAMPLES}/instance) failed {} of {} checks \
             ({unexplained} not explained by Linf vertices with S < (k-2)M); grid failures {:?} on {grid_checked} \
             |A| = 2 instances; runtime {elapsed:.1?}",
            instances.len(),
            sampled_fail.len(),
            3 * checked,
            grid_fail
        ),
    )
}

fn nested_chain() -> Outcome {
    let mut r = rng(5);
    let target = 200;
    let (mut used, mut undefined) = (0, 0);
    let (mut chain_ok, mut chain_fail_with_conflict, mut chain_fail_without_conflict) = (0, 0, 0);
    let (mut credal_in_dempster, mut dempster_in_credal) = (0, 0);
    let mut worst_slack = f64::INFINITY;
    let mut closed_gap = 0.0f64;
    while used < target {
        let (m, b) = random_pair(&mut r);
        let belief = m.belief();
        if belief.get(b) <= 0.0 || belief.plausibility().get(b) <= 0.0 {
            continue;
        }
        let credal = match classical::credal_condition(&m, b) {
            Ok(c) => c.intervals,
            Err(_) => {
                undefined += 1;
                continue;
            }
        };
        used += 1;
        let report = nested_chain_check(&m, b).unwrap();
        worst_slack = worst_slack.min(report.worst().slack);
        let conflict = belief.get(m.frame().complement(b));
        if report.holds_within(CHAIN_TOL) {
            chain_ok += 1;
        } else if conflict > 0.0 {
            chain_fail_with_conflict += 1;
        } else {
            chain_fail_without_conflict += 1;
        }
        let dempster = classical::dempster_closed_form(&m, b).unwrap();
        if credal.is_within(&dempster, CHAIN_TOL) {
            credal_in_dempster += 1;
        }
        if dempster.is_within(&credal, CHAIN_TOL) {
            dempster_in_credal += 1;
        }
        let via_sum = classical::dempster_condition(&m, b).unwrap();
        let (bel, pl) = (via_sum.belief(), via_sum.plausibility());
        for a in m.frame().subsets() {
            let (lo, up) = dempster.get(a);
            closed_gap = closed_gap.max((lo - bel.get(a)).abs()).max((up - pl.get(a)).abs());
        }
    }
    outcome(
        chain_ok == used && credal_in_dempster == used && closed_gap <= CHAIN_TOL,
        format!(
            "{used} pairs ({undefined} skipped, credal undefined); chain holds on {chain_ok}, fails on {} with b(not B) > 0 \
             and {chain_fail_without_conflict} without, worst slack {worst_slack:.3}; credal within Dempster on {credal_in_dempster}, \
             Dempster within credal on {dempster_in_credal}; closed form vs sum gap {closed_gap:.2e}",
            chain_fail_with_conflict
        ),
    )
}

fn decomposition() -> Outcome {
    let mut r = rng(6);
    let target = 200;
    let (mut used, mut worst) = (0, 0.0f64);
    while used < target {
        let (m, _) = random_pair(&mut r);
        let other = common::random_mass(m.frame().len(), 6, &mut r);
        if dempster_sum(&m, &other).is_err() {
            continue;
        }
        let check = dempster_decomposition_check(&m, &other).unwrap();
        worst = worst.max(check.max_deviation);
        used += 1;
    }
    let rules = [
        ConditioningRule::L2,
        ConditioningRule::Dempster,
        ConditioningRule::SuppesGeometric,
        ConditioningRule::Conjunctive,
    ];
    let (mut exact, mut compared) = (0, 0);
    for _ in 0..200 {
        let (m, a) = random_pair(&mut r);
        let categorical = MassFunction::categorical(m.frame(), a).unwrap();
        for rule in rules {
            if let Ok(direct) = rule.condition(&m, a) {
                compared += 1;
                if conditioning_induced_combine(rule, &m, &categorical).unwrap() == direct {
                    exact += 1;
                }
            }
        }
    }
    outcome(
        worst <= ORACLE_TOL && exact == compared,
        format!("{used} pairs, max decomposition gap {worst:.2e}; categorical induced combination exact on {exact}/{compared}"),
    )
}

fn nested_composition() -> Outcome {
    let mut r = rng(7);
    let count = 300;
    let mut worst = 0.0f64;
    for _ in 0..count {
        let (m, a) = random_pair(&mut r);
        let inner = loop {
            let s = Subset(r_bits(&mut r, a));
            if !s.is_empty() {
                break s;
            }
        };
        let twice = lp::l2_condition(&lp::l2_condition(&m, a).unwrap(), inner).unwrap();
        let once = lp::l2_condition(&m, inner).unwrap();
        worst = worst.max(max_gap(&twice, &once));
    }
    outcome(worst <= SWEEP_TOL, format!("{count} chains A' ⊆ A, max gap {worst:.2e}"))
}

fn r_bits(r: &mut impl rand::Rng, within: Subset) -> u32 {
    r.random_range(0..=within.bits()) & within.bits()
}

fn belief_space_closed_forms() -> Outcome {
    let mut r = rng(8);
    let count = 600;
    let mut sum_gap = 0.0f64;
    for _ in 0..count {
        let (m, a) = random_pair(&mut r);
        for point in [lp::l2_condition_belief_space(&m, a).unwrap(), lp::linf_barycentre_belief_space(&m, a).unwrap()] {
            sum_gap = sum_gap.max((point.total() - 1.0).abs());
        }
    }
    let identity_count = 200;
    let mut identity_gap = 0.0f64;
    for _ in 0..identity_count {
        let (m, _) = random_pair(&mut r);
        let a = m.core().union(random_event(m.frame(), &mut r));
        for point in [lp::l2_condition_belief_space(&m, a).unwrap(), lp::linf_barycentre_belief_space(&m, a).unwrap()] {
            identity_gap = identity_gap.max(max_gap(&point, &m));
        }
    }
    outcome(
        sum_gap <= ORACLE_TOL && identity_gap <= SWEEP_TOL,
        format!("{count} instances, max |sum - 1| = {sum_gap:.2e}; {identity_count} with core ⊆ A, max gap {identity_gap:.2e}"),
    )
}

fn parse_csv(text: &str) -> Vec<(String, String, f64, f64)> {
    text.lines()
        .skip(1)
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            (cols[0].to_string(), cols[1].to_string(), cols[2].parse().unwrap(), cols[3].parse().unwrap())
        })
        .collect()
}

fn plot_csv() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ternary.json");
    std::fs::write(&input, r#"{"frame": ["x", "y", "z"], "masses": {"x": 0.2, "y": 0.3, "x z": 0.5}}"#).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_geocond"))
        .args(["plot-ternary", input.to_str().unwrap(), "--event", "x y", "--format", "csv"])
        .output()
        .unwrap();
    if !output.status.success() {
        return outcome(false, format!("exit {:?}: {}", output.status.code(), String::from_utf8_lossy(&output.stderr)));
    }
    let rows = parse_csv(&String::from_utf8(output.stdout).unwrap());
    let of_kind = |k: &str| rows.iter().filter(|r| r.1 == k).map(|r| (r.2, r.3)).collect::<Vec<_>>();
    let (l1, linf, l2) = (of_kind("l1-vertex"), of_kind("linf-vertex"), of_kind("l2-point"));
    if l1.len() != 3 || linf.len() != 3 || l2.len() != 1 {
        return outcome(false, format!("unexpected point counts {} {} {}", l1.len(), linf.len(), l2.len()));
    }
    let near = |p: (f64, f64), q: (f64, f64)| (p.0 - q.0).abs().max((p.1 - q.1).abs());
    let midpoints: Vec<(f64, f64)> = (0..3)
        .map(|i| {
            let (p, q) = (linf[(i + 1) % 3], linf[(i + 2) % 3]);
            ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0)
        })
        .collect();
    let midpoint_gap = l1
        .iter()
        .map(|&v| midpoints.iter().map(|&mid| near(v, mid)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let centroid = |pts: &[(f64, f64)]| (pts.iter().map(|p| p.0).sum::<f64>() / 3.0, pts.iter().map(|p| p.1).sum::<f64>() / 3.0);
    let centroid_gap = near(centroid(&l1), l2[0]).max(near(centroid(&linf), l2[0]));
    outcome(
        midpoint_gap <= CSV_TOL && centroid_gap <= CSV_TOL,
        format!("L1 vertices vs Linf edge midpoints {midpoint_gap:.2e}, centroids vs L2 point {centroid_gap:.2e}"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("golden ternary reproduction of L1, L2, Linf", golden_reproduction),
        ("L1 barycentre equals L2", l1_barycentre_sweep),
        ("Linf case split, barycentre and norm value", linf_sweep),
        ("optimality oracles", optimality_oracles),
        ("classical operators and nested chain", nested_chain),
        ("Dempster decomposition and induced combination", decomposition),
        ("nested L2 composition", nested_composition),
        ("belief-space closed forms", belief_space_closed_forms),
        ("ternary plot CSV geometry", plot_csv),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let Outcome { pass, detail } = check();
        if !pass {
            failed += 1;
        }
        println!("criterion {} {}: {title}: {detail}", i + 1, if pass { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
