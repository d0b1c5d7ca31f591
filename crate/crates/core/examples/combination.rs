//! Dempster's rule, the conjunctive and disjunctive rules, and combinations
//! induced by conditioning.

use geocond::combination::{self, ConditioningRule};
use geocond::{Frame, MassFunction, MassVector, Result};

fn main() -> Result<()> {
    let frame = Frame::new(["rain", "sun", "snow"])?;
    let full = frame.full();
    let forecast = MassFunction::from_focal(&frame, [(frame.subset(["rain"])?, 0.6), (full, 0.4)])?;
    let sky = MassFunction::from_focal(&frame, [(frame.subset(["sun", "snow"])?, 0.5), (full, 0.5)])?;

    let (sum, conflict) = combination::dempster_sum(&forecast, &sky)?;
    println!("Dempster: {:?}  conflict {:.2}", pretty(&frame, &sum), conflict.kappa);

    let joint = combination::conjunctive_combine(&forecast, &sky)?;
    println!("conjunctive: {:?}  empty set {:.2}", pretty(&frame, &joint), joint.conflict());

    let union = combination::disjunctive_combine(&forecast, &sky)?;
    println!("disjunctive: {:?}", pretty(&frame, &union));

    let check = combination::dempster_decomposition_check(&forecast, &sky)?;
    println!("decomposition over focal elements holds: {} (gap {:.1e})", check.holds, check.max_deviation);

    for rule in [ConditioningRule::Dempster, ConditioningRule::L2] {
        let induced = combination::conditioning_induced_combine(rule, &forecast, &sky)?;
        println!("{rule:?}-induced: {:?}", pretty(&frame, &induced));
    }
    Ok(())
}

fn pretty(frame: &Frame, v: &impl MassVector) -> Vec<(String, f64)> {
    v.support().into_iter().map(|(s, m)| (frame.key(s), (m * 1e4).round() / 1e4)).collect()
}
