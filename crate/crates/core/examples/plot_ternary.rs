//! Writes the ternary scene for the case-study mass function as CSV and SVG.
//!
//! Run with an output directory to save the files, otherwise the CSV is
//! printed: `cargo run --example plot_ternary -- /tmp`.

use geocond::{plot, Frame, MassFunction, Result};

fn main() -> Result<()> {
    let frame = Frame::new(["x", "y", "z"])?;
    let m = MassFunction::from_focal(
        &frame,
        [(frame.subset(["x"])?, 0.2), (frame.subset(["y"])?, 0.3), (frame.subset(["x", "z"])?, 0.5)],
    )?;
    let scene = plot::ternary_scene(&m, frame.subset(["x", "y"])?, true)?;

    match std::env::args().nth(1) {
        Some(dir) => {
            let dir = std::path::Path::new(&dir);
            std::fs::write(dir.join("ternary.csv"), scene.to_csv()).expect("write csv");
            std::fs::write(dir.join("ternary.svg"), scene.to_svg()).expect("write svg");
            println!("wrote {} and {}", dir.join("ternary.csv").display(), dir.join("ternary.svg").display());
        }
        None => print!("{}", scene.to_csv()),
    }
    Ok(())
}
