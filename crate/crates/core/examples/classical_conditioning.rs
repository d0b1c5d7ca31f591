//! Dempster, credal, Suppes-Zanotti, conjunctive and disjunctive conditioning,
//! side by side, plus the nested-interval check.

use geocond::classical::{self, conditional_table};
use geocond::{Frame, MassFunction, Result};

fn main() -> Result<()> {
    let frame = Frame::new(["x", "y", "z"])?;
    let m = MassFunction::from_focal(
        &frame,
        [(frame.subset(["x"])?, 0.2), (frame.subset(["y"])?, 0.3), (frame.subset(["x", "z"])?, 0.5)],
    )?;
    let b = frame.subset(["x", "y"])?;
    let table = conditional_table(&m, b)?;

    println!("{:<6} {:>14} {:>14} {:>14} {:>14}", "A", "disjunctive", "credal", "dempster", "conjunctive");
    for a in frame.nonempty_subsets() {
        let i = a.index();
        let cell = |(lo, hi): &(Vec<f64>, Vec<f64>)| format!("[{:.3}, {:.3}]", lo[i], hi[i]);
        println!(
            "{:<6} {:>14} {:>14} {:>14} {:>14}",
            frame.key(a),
            cell(&table.disjunctive),
            cell(&table.credal),
            cell(&table.dempster),
            cell(&table.conjunctive)
        );
    }

    let suppes = classical::suppes_geometric_condition(&m, b)?;
    let (lo, hi) = suppes.intervals.get(frame.subset(["x"])?);
    println!("Suppes-Zanotti on x: [{lo:.3}, {hi:.3}]");

    let chain = classical::nested_chain_check(&m, b)?;
    let worst = chain.worst();
    println!("nested chain holds: {} (tightest link {} at {:.2e})", chain.holds, worst.link, worst.slack + 0.0);

    match classical::suppes_geometric_condition(&m, frame.subset(["z"])?) {
        Ok(_) => unreachable!("b(z) is zero"),
        Err(e) => println!("conditioning on z: {e}"),
    }
    Ok(())
}
