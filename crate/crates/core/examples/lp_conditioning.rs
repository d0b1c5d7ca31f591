//! Lp conditioning on a larger frame, including the regime where the L∞
//! vertex formula stops being optimal.

use geocond::oracle::{lp_distance, Norm};
use geocond::{lp, Frame, MassFunction, MassVector, Result};

fn main() -> Result<()> {
    let frame = Frame::new(["a", "b", "c", "d"])?;
    let m = MassFunction::random(&frame, 6, 11)?;
    let event = frame.subset(["a", "b"])?;

    let l1 = lp::l1_condition(&m, event)?;
    let l2 = lp::l2_condition(&m, event)?;
    let linf = lp::linf_condition(&m, event)?;
    println!("random m on 4 elements, event {{a, b}}");
    println!("  L1 vertices: {}, all admissible: {}", l1.vertices.len(), l1.admissible.iter().all(|&ok| ok));
    println!("  L2 distance: {:.4}", lp_distance(&m, &l2, Norm::L2)?);
    println!("  Linf is a single point: {}, value {:.4}", linf.is_point(), lp::linf_norm_value(&m, event)?);
    println!("  L1 barycentre equals L2: {}", lp::l1_barycenter_equals_l2(&m, event)?.0);

    // all outside mass on one focal element and a three-element event
    let m = MassFunction::from_focal(&frame, [(frame.subset(["a"])?, 0.7), (frame.subset(["d"])?, 0.3)])?;
    let event = frame.subset(["a", "b", "c"])?;
    let linf = lp::linf_condition(&m, event)?;
    let value = lp::linf_norm_value(&m, event)?;
    let vertex = &linf.vertices[0].1;
    println!("m = {{a: 0.7, d: 0.3}}, event {{a, b, c}}");
    println!("  optimal Linf distance {value:.4}");
    println!("  distance of vertex {}: {:.4}", frame.key(linf.vertices[0].0), lp_distance(&m, vertex, Norm::Linf)?);
    println!("  vertices optimal: {}", lp::linf_vertices_are_optimal(&m, event)?);
    println!("  barycentre in the exact optimum set: {}", lp::linf_contains(&m, event, &linf.barycenter)?);
    println!("  L2 point mass on a: {:.4}", lp::l2_condition(&m, event)?.mass(frame.subset(["a"])?));
    Ok(())
}
