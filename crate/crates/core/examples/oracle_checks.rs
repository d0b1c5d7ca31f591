//! Cross-checks the closed forms with independent numerics: a linear solve,
//! random sampling of the conditioning simplex and a fine grid.

use geocond::oracle::{self, Norm};
use geocond::{lp, Frame, MassFunction, Result};

fn main() -> Result<()> {
    let frame = Frame::new(["x", "y", "z"])?;
    let m = MassFunction::random(&frame, 4, 2024)?;
    let event = frame.subset(["x", "y"])?;

    let closed = lp::l2_condition(&m, event)?;
    let solved = oracle::l2_project_linear_solve(&m, event)?;
    println!("L2 closed form vs linear solve: {:.1e}", oracle::lp_distance(&closed, &solved, Norm::Linf)?);

    let l1 = lp::l1_condition(&m, event)?;
    let linf = lp::linf_condition(&m, event)?;
    let candidates = [
        (Norm::L1, l1.vertices.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>()),
        (Norm::L2, vec![closed.to_signed()]),
        (Norm::Linf, linf.vertices.iter().map(|(_, v)| v.clone()).collect()),
    ];
    for (norm, cands) in &candidates {
        let report = oracle::sampled_nonimprovement(&m, event, *norm, cands, 10_000, 1)?;
        let grid = oracle::grid_minimum(&m, event, *norm, report.claimed, 1e-3)?;
        println!(
            "{norm:?}: claimed {:.6}, best sample margin {:.2e}, grid minimum {:.6} over {} points",
            report.claimed, report.worst_margin, grid.grid_minimum, grid.points
        );
    }

    let envelope = oracle::credal_sampling(&m, event, 10_000, 5)?;
    let exact = geocond::classical::credal_condition(&m, event)?;
    let x = frame.subset(["x"])?;
    println!("credal on x: sampled {:?}, closed form {:?}", envelope.get(x), exact.intervals.get(x));
    Ok(())
}
