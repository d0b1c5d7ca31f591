//! Ternary scenes of the conditioning simplex for `|Θ| = 3`, `|A| = 2`.
//!
//! A point of `M_A` with masses `(m(x), m(y), m(xy))` is drawn at
//! `m(x)·P_x + m(y)·P_y + m(xy)·P_xy` with `P_x = (0, 0)`, `P_y = (1, 0)` and
//! `P_xy = (½, √3/2)`. The map is affine, so midpoints and centroids are
//! preserved and pseudo belief functions land outside the reference triangle.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::lp;
use crate::mass::{MassFunction, MassVector};

const APEX_HEIGHT: f64 = 0.866_025_403_784_438_6;

/// Points and polygons of a ternary figure.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryPlotScene {
    pub event: Subset,
    pub points: Vec<ScenePoint>,
    pub polygons: Vec<ScenePolygon>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenePoint {
    pub label: String,
    pub kind: &'static str,
    pub x: f64,
    pub y: f64,
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenePolygon {
    pub label: &'static str,
    pub color: &'static str,
    pub fill: bool,
    pub vertices: Vec<(f64, f64)>,
}

/// Cartesian position of a mass vector supported on the subsets of `{x, y}`.
pub fn to_cartesian(v: &impl MassVector, x: Subset, y: Subset) -> (f64, f64) {
    let xy = x.union(y);
    let (my, mxy) = (v.mass(y), v.mass(xy));
    (my + 0.5 * mxy, APEX_HEIGHT * mxy)
}

/// Builds the scene for `m` conditioned on the two-element event `event`.
///
/// Always contains the reference triangle, the L1 simplex, the L2 point and
/// the L∞ set; `belief_space` adds the two belief-space points.
pub fn ternary_scene(m: &MassFunction, event: Subset, belief_space: bool) -> Result<TernaryPlotScene> {
    let frame = m.frame();
    frame.check(event)?;
    if frame.len() != 3 || event.len() != 2 {
        return Err(Error::WrongDimensions { frame: frame.len(), event: event.len() });
    }
    let mut elements = event.elements();
    let x = Subset::singleton(elements.next().expect("two elements"));
    let y = Subset::singleton(elements.next().expect("two elements"));
    let key = |s: Subset| frame.key(s);

    let mut points = Vec::new();
    let mut polygons = Vec::new();

    let mut reference = Vec::new();
    for g in [x, y, event] {
        let corner = MassFunction::categorical(frame, g)?;
        let (px, py) = to_cartesian(&corner, x, y);
        reference.push((px, py));
        points.push(ScenePoint { label: format!("m_{{{}}}", key(g)), kind: "reference-vertex", x: px, y: py, admissible: true });
    }
    polygons.push(ScenePolygon { label: "conditioning simplex", color: "#9e9e9e", fill: false, vertices: reference });

    let l1 = lp::l1_condition(m, event)?;
    let mut l1_poly = Vec::new();
    for ((g, v), ok) in l1.vertices.iter().zip(&l1.admissible) {
        let (px, py) = to_cartesian(v, x, y);
        l1_poly.push((px, py));
        points.push(ScenePoint { label: format!("l1[{}]", key(*g)), kind: "l1-vertex", x: px, y: py, admissible: *ok });
    }
    polygons.push(ScenePolygon { label: "L1 conditional simplex", color: "#d62728", fill: true, vertices: l1_poly });

    let linf = lp::linf_condition(m, event)?;
    let mut linf_poly = Vec::new();
    let kind = if linf.is_point() { "linf-point" } else { "linf-vertex" };
    for ((g, v), ok) in linf.vertices.iter().zip(&linf.admissible) {
        let (px, py) = to_cartesian(v, x, y);
        linf_poly.push((px, py));
        points.push(ScenePoint { label: format!("linf[{}]", key(*g)), kind, x: px, y: py, admissible: *ok });
    }
    polygons.push(ScenePolygon { label: "Linf conditional simplex", color: "#2ca02c", fill: false, vertices: linf_poly });

    let l2 = lp::l2_condition(m, event)?;
    let (px, py) = to_cartesian(&l2, x, y);
    points.push(ScenePoint { label: "l2".into(), kind: "l2-point", x: px, y: py, admissible: true });

    if belief_space {
        let l2b = lp::l2_condition_belief_space(m, event)?;
        let (px, py) = to_cartesian(&l2b, x, y);
        points.push(ScenePoint { label: "l2-belief".into(), kind: "l2-belief-point", x: px, y: py, admissible: l2b.is_admissible() });
        let bary = lp::linf_barycentre_belief_space(m, event)?;
        let (px, py) = to_cartesian(&bary, x, y);
        points.push(ScenePoint {
            label: "linf-bary-belief".into(),
            kind: "linf-bary-belief-point",
            x: px,
            y: py,
            admissible: bary.is_admissible(),
        });
    }

    Ok(TernaryPlotScene { event, points, polygons })
}

fn coord(v: f64) -> String {
    let s = format!("{v:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

impl TernaryPlotScene {
    /// CSV with columns `label,kind,x,y,admissible`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,kind,x,y,admissible\n");
        for p in &self.points {
            let label = if p.label.contains(',') { format!("\"{}\"", p.label) } else { p.label.clone() };
            let _ = writeln!(out, "{label},{},{},{},{}", p.kind, coord(p.x), coord(p.y), p.admissible);
        }
        out
    }

    /// Static SVG rendering of the scene.
    pub fn to_svg(&self) -> String {
        const SIZE: f64 = 480.0;
        const MARGIN: f64 = 40.0;
        let xs = self.points.iter().map(|p| p.x);
        let ys = self.points.iter().map(|p| p.y);
        let (min_x, max_x) = xs.fold((0.0f64, 1.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let (min_y, max_y) = ys.fold((0.0f64, APEX_HEIGHT), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let scale = (SIZE - 2.0 * MARGIN) / (max_x - min_x).max(max_y - min_y);
        let px = |x: f64| MARGIN + (x - min_x) * scale;
        let py = |y: f64| SIZE - MARGIN - (y - min_y) * scale;

        let mut svg = String::new();
        let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
        let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);
        for poly in &self.polygons {
            let pts = poly
                .vertices
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect::<Vec<_>>()
                .join(" ");
            let fill = if poly.fill { format!("{}55", poly.color) } else { "none".into() };
            let _ = writeln!(
                svg,
                r#"  <polygon points="{pts}" fill="{fill}" stroke="{}" stroke-width="1.5"><title>{}</title></polygon>"#,
                poly.color, poly.label
            );
        }
        for p in &self.points {
            let (cx, cy) = (px(p.x), py(p.y));
            let color = match p.kind {
                "l1-vertex" | "l2-point" => "#d62728",
                "linf-vertex" | "linf-point" => "#2ca02c",
                "l2-belief-point" | "linf-bary-belief-point" => "#e377c2",
                _ => "#616161",
            };
            if p.kind.ends_with("-point") {
                let _ = writeln!(svg, r#"  <rect x="{:.2}" y="{:.2}" width="8" height="8" fill="{color}"/>"#, cx - 4.0, cy - 4.0);
            } else {
                let _ = writeln!(svg, r#"  <circle cx="{cx:.2}" cy="{cy:.2}" r="3.5" fill="{color}"/>"#);
            }
            let _ = writeln!(
                svg,
                r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" fill="{color}">{}</text>"#,
                cx + 5.0,
                cy - 5.0,
                escape(&p.label)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
