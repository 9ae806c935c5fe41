//! SVG rendering of a plane tropical curve and the real part of its
//! patchwork.
//!
//! The left panel shows the curve in the chart `x_3 = 0`, clipped to a box
//! around its vertices. The right panel shows the real part in the four
//! reflected copies of the Newton triangle; points on the outer boundary of
//! the resulting square are identified with their antipodes. Each class of
//! the real part is drawn from the barycenters of the triangles containing
//! its dual edge to the edge midpoint.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use patchwork::hypersurface::{realize, Realization};
use patchwork::{Instance, Patchwork};

use crate::CliError;

const PANEL: f64 = 400.0;
const MARGIN: f64 = 30.0;
const PALETTE: [&str; 6] = [
    "#c0392b", "#2471a3", "#229954", "#af7ac5", "#d68910", "#17a589",
];

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("finite coordinate")
}

struct Viewport {
    min: [f64; 2],
    max: [f64; 2],
    offset_x: f64,
}

impl Viewport {
    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        let span = (self.max[0] - self.min[0]).max(self.max[1] - self.min[1]);
        let s = PANEL / span;
        (
            self.offset_x + (p[0] - self.min[0]) * s,
            MARGIN + PANEL - (p[1] - self.min[1]) * s,
        )
    }
}

/// Largest `t` keeping `apex + t * dir` inside the box.
fn exit_time(vp: &Viewport, apex: [f64; 2], dir: [f64; 2]) -> f64 {
    (0..2)
        .filter(|&i| dir[i] != 0.0)
        .map(|i| {
            let bound = if dir[i] > 0.0 { vp.max[i] } else { vp.min[i] };
            (bound - apex[i]) / dir[i]
        })
        .fold(f64::INFINITY, f64::min)
        .max(0.0)
}

fn line(out: &mut String, class: &str, a: (f64, f64), b: (f64, f64)) {
    writeln!(
        out,
        r#"    <line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
        a.0, a.1, b.0, b.1
    )
    .unwrap();
}

pub fn render_svg(instance: &Instance) -> Result<String, CliError> {
    let f = &instance.polynomial;
    if f.n() != 3 {
        return Err(CliError::Usage(format!(
            "plots need a plane curve (n = 3), got n = {}",
            f.n()
        )));
    }
    let patchwork = Patchwork::new(f)?;
    let poset = patchwork.poset();
    let complex = patchwork.complex(&instance.sign_bits())?;

    let mut vertices = Vec::new();
    let mut segments = Vec::new();
    let mut rays = Vec::new();
    for (id, cell) in poset.cells().iter().enumerate() {
        if cell.sedentarity != 0 {
            continue;
        }
        let flat = |p: &[BigRational]| [to_f64(&p[0]), to_f64(&p[1])];
        match realize(f, poset, id).map_err(patchwork::PipelineError::from)? {
            Realization::Vertex(p) => vertices.push(flat(&p)),
            Realization::Segment(a, b) => segments.push((flat(&a), flat(&b))),
            Realization::Ray { apex, direction } => {
                rays.push((flat(&apex), [direction[0] as f64, direction[1] as f64]))
            }
        }
    }
    let mut min = [f64::INFINITY; 2];
    let mut max = [f64::NEG_INFINITY; 2];
    for p in &vertices {
        for i in 0..2 {
            min[i] = min[i].min(p[i]);
            max[i] = max[i].max(p[i]);
        }
    }
    let pad = (0.25 * (max[0] - min[0]).max(max[1] - min[1])).max(1.0);
    let curve_vp = Viewport {
        min: [min[0] - pad, min[1] - pad],
        max: [max[0] + pad, max[1] + pad],
        offset_x: MARGIN,
    };

    let width = 3.0 * MARGIN + 2.0 * PANEL;
    let height = 2.0 * MARGIN + PANEL;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(
        out,
        r#"  <g id="tropical-curve" stroke="black" stroke-width="1.5">"#
    )
    .unwrap();
    for (a, b) in &segments {
        line(&mut out, "edge", curve_vp.map(*a), curve_vp.map(*b));
    }
    for (apex, dir) in &rays {
        let t = exit_time(&curve_vp, *apex, *dir);
        let end = [apex[0] + t * dir[0], apex[1] + t * dir[1]];
        line(&mut out, "ray", curve_vp.map(*apex), curve_vp.map(end));
    }
    for p in &vertices {
        let (x, y) = curve_vp.map(*p);
        writeln!(
            out,
            r#"    <circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="3"/>"#
        )
        .unwrap();
    }
    writeln!(out, "  </g>").unwrap();

    let d = f.degree() as f64;
    let real_vp = Viewport {
        min: [-d, -d],
        max: [d, d],
        offset_x: 2.0 * MARGIN + PANEL,
    };
    writeln!(out, r#"  <g id="real-part">"#).unwrap();
    write_grid(&mut out, &patchwork, &real_vp);
    let (count, labels) = complex.component_labels();
    let mut groups = vec![String::new(); count];
    let points = poset.points();
    let faces = poset.face_poset();
    for (i, class) in complex.classes(1).iter().enumerate() {
        let cell = poset.cell(class.cell);
        let z = if class.rep.get(2) {
            class.rep.antipode()
        } else {
            class.rep
        };
        let reflect = |p: [f64; 2]| {
            [
                if z.get(0) { -p[0] } else { p[0] },
                if z.get(1) { -p[1] } else { p[1] },
            ]
        };
        let centroid = |verts: &[usize]| {
            let k = verts.len() as f64;
            let sum = verts.iter().fold([0.0, 0.0], |acc, &v| {
                let e = points[v].entries();
                [acc[0] + e[0] as f64, acc[1] + e[1] as f64]
            });
            [sum[0] / k, sum[1] / k]
        };
        let edge = &faces.face(cell.dual_face).vertices;
        let mid = reflect(centroid(edge));
        for &tri in faces.cofacets_of(cell.dual_face) {
            let bary = reflect(centroid(&faces.face(tri).vertices));
            line(
                &mut groups[labels[1][i]],
                "arc",
                real_vp.map(bary),
                real_vp.map(mid),
            );
        }
    }
    for (k, body) in groups.iter().enumerate() {
        writeln!(
            out,
            r#"   <g class="component" data-component="{k}" stroke="{}" stroke-width="2.5">"#,
            PALETTE[k % PALETTE.len()]
        )
        .unwrap();
        out.push_str(body);
        writeln!(out, "   </g>").unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    Ok(out)
}

/// Triangulation in all four copies and the dashed outer boundary, whose
/// opposite points are glued.
fn write_grid(out: &mut String, patchwork: &Patchwork, vp: &Viewport) {
    let s = patchwork.subdivision();
    writeln!(
        out,
        r##"   <g class="grid" stroke="#bbbbbb" stroke-width="0.75">"##
    )
    .unwrap();
    for face in s.faces().iter().filter(|f| f.dim == 1) {
        let e0 = s.points()[face.vertices[0]].entries();
        let e1 = s.points()[face.vertices[1]].entries();
        for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)] {
            let a = [sx * e0[0] as f64, sy * e0[1] as f64];
            let b = [sx * e1[0] as f64, sy * e1[1] as f64];
            line(out, "grid-edge", vp.map(a), vp.map(b));
        }
    }
    writeln!(out, "   </g>").unwrap();
    let d = s.degree() as f64;
    let corners = [[d, 0.0], [0.0, d], [-d, 0.0], [0.0, -d]];
    let path: Vec<String> = corners
        .iter()
        .map(|&c| {
            let (x, y) = vp.map(c);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(
        out,
        r#"   <polygon class="gluing" points="{}" fill="none" stroke="black" stroke-dasharray="6 4"/>"#,
        path.join(" ")
    )
    .unwrap();
}
