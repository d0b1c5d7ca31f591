//! The ternary instance `m = {x: 0.2, y: 0.3, xz: 0.5}` conditioned on `{x, y}`
//! under every geometric rule.

use geocond::{lp, Frame, MassFunction, MassVector, Result};

fn show(frame: &Frame, label: &str, v: &impl MassVector) {
    let entries: Vec<String> = v
        .support()
        .into_iter()
        .map(|(s, m)| format!("{}: {m:.4}", frame.key(s)))
        .collect();
    println!("  {label:<10} {{{}}}", entries.join(", "));
}

fn main() -> Result<()> {
    let frame = Frame::new(["x", "y", "z"])?;
    let m = MassFunction::from_focal(
        &frame,
        [(frame.subset(["x"])?, 0.2), (frame.subset(["y"])?, 0.3), (frame.subset(["x", "z"])?, 0.5)],
    )?;
    let a = frame.subset(["x", "y"])?;

    println!("L1 conditional simplex:");
    for (g, v) in &lp::l1_condition(&m, a)?.vertices {
        show(&frame, &frame.key(*g), v);
    }

    println!("L2 conditional:");
    show(&frame, "l2", &lp::l2_condition(&m, a)?);

    let linf = lp::linf_condition(&m, a)?;
    println!("Linf conditional (norm value {:.4}):", lp::linf_norm_value(&m, a)?);
    for ((g, v), ok) in linf.vertices.iter().zip(&linf.admissible) {
        show(&frame, &format!("{}{}", frame.key(*g), if *ok { "" } else { " (*)" }), v);
    }
    println!("  (*) pseudo belief function: some mass is negative");
    Ok(())
}
