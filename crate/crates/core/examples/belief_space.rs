//! Conditioning measured in the belief space rather than the mass space.

use geocond::{lp, Frame, MassFunction, MassVector, Result};

fn main() -> Result<()> {
    let frame = Frame::new(["x", "y", "z"])?;
    let m = MassFunction::from_focal(
        &frame,
        [(frame.subset(["x"])?, 0.2), (frame.subset(["y"])?, 0.3), (frame.subset(["x", "z"])?, 0.5)],
    )?;
    let a = frame.subset(["x", "y"])?;

    let mass_space = lp::l2_condition(&m, a)?;
    let l2 = lp::l2_condition_belief_space(&m, a)?;
    let bary = lp::linf_barycentre_belief_space(&m, a)?;
    println!("{:<6} {:>12} {:>12} {:>16}", "B", "mass-space", "belief L2", "belief Linf bary");
    for b in a.nonempty_subsets() {
        println!("{:<6} {:>12.4} {:>12.4} {:>16.4}", frame.key(b), mass_space.mass(b), l2.mass(b), bary.mass(b));
    }
    println!("belief L2 admissible: {}, Linf barycentre admissible: {}", l2.is_admissible(), bary.is_admissible());
    Ok(())
}
