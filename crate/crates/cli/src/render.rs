use std::fmt::Write;

use troplocal::poly::{exp_to_z, Poly};
use troplocal::polyhedral::{Cone, NewtonPolyhedron, PlSet};
use troplocal::tropical::LocalTrop;

const UNIT: f64 = 40.0;
const PANEL: f64 = 320.0;
const MARGIN: f64 = 40.0;
const OFFSET: f64 = 36.0;

fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    if r == r.trunc() {
        format!("{}", r as i64)
    } else {
        format!("{r:.2}")
    }
}

fn to_f64(z: &troplocal::arith::Z) -> f64 {
    z.to_string().parse().unwrap_or(0.0)
}

fn line(out: &mut String, x1: f64, y1: f64, x2: f64, y2: f64, class: &str) {
    let _ = writeln!(
        out,
        r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        num(x1),
        num(y1),
        num(x2),
        num(y2)
    );
}

fn dot(out: &mut String, x: f64, y: f64, r: f64, class: &str) {
    let _ = writeln!(
        out,
        r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
        num(x),
        num(y),
        num(r)
    );
}

fn label(out: &mut String, x: f64, y: f64, text: &str) {
    let _ = writeln!(out, r#"<text x="{}" y="{}">{text}</text>"#, num(x), num(y));
}

/// Lattice dots, support, compact edges and the unbounded edges of the Newton polyhedron.
fn newton_panel(out: &mut String, f: &Poly, x0: f64, y0: f64) {
    let supp: Vec<_> = f.support();
    let bound = supp
        .iter()
        .flat_map(|e| e.iter().copied())
        .max()
        .unwrap_or(0) as usize
        + 1;
    let step = (PANEL / bound.max(1) as f64).min(UNIT);
    let px = |a: f64| x0 + a * step;
    let py = |b: f64| y0 + PANEL - b * step;
    let _ = writeln!(out, r#"<g class="newton-diagram">"#);
    line(out, px(0.0), py(0.0), x0 + PANEL, py(0.0), "axis");
    line(out, px(0.0), py(0.0), px(0.0), y0, "axis");
    for a in 0..=bound {
        for b in 0..=bound {
            dot(out, px(a as f64), py(b as f64), 1.5, "lattice");
        }
    }
    for e in &supp {
        dot(out, px(e[0] as f64), py(e[1] as f64), 4.0, "support");
    }
    let pts: Vec<_> = supp.iter().map(|e| exp_to_z(e)).collect();
    if let Ok(np) = NewtonPolyhedron::new(&pts, &Cone::orthant(2)) {
        for face in np.compact_faces() {
            if face.vertices.len() == 2 {
                let a = &face.vertices[0];
                let b = &face.vertices[1];
                line(
                    out,
                    px(to_f64(&a[0])),
                    py(to_f64(&a[1])),
                    px(to_f64(&b[0])),
                    py(to_f64(&b[1])),
                    "edge",
                );
            }
        }
        let vs = np.vertices();
        if let Some(top) = vs
            .iter()
            .min_by(|a, b| a[0].cmp(&b[0]).then(b[1].cmp(&a[1])))
        {
            line(
                out,
                px(to_f64(&top[0])),
                py(to_f64(&top[1])),
                px(to_f64(&top[0])),
                y0,
                "unbounded",
            );
        }
        if let Some(right) = vs
            .iter()
            .min_by(|a, b| a[1].cmp(&b[1]).then(b[0].cmp(&a[0])))
        {
            line(
                out,
                px(to_f64(&right[0])),
                py(to_f64(&right[1])),
                x0 + PANEL,
                py(to_f64(&right[1])),
                "unbounded",
            );
        }
    }
    let _ = writeln!(out, "</g>");
}

fn ray_end(r: &[troplocal::arith::Z]) -> (f64, f64) {
    let a = to_f64(&r[0]);
    let b = to_f64(&r[1]);
    let m = a.max(b).max(1e-9);
    (a / m, b / m)
}

/// Finite part as rays and sectors, the two lines at infinity and the corner point.
fn fan_panel(out: &mut String, t: &LocalTrop, x0: f64, y0: f64) {
    let px = |a: f64| x0 + a * PANEL;
    let py = |b: f64| y0 + PANEL - b * PANEL;
    let _ = writeln!(out, r#"<g class="local-trop">"#);
    line(out, px(0.0), py(0.0), px(1.0), py(0.0), "axis");
    line(out, px(0.0), py(0.0), px(0.0), py(1.0), "axis");
    if t.nntrop.is_empty() {
        let _ = writeln!(out, "</g>");
        return;
    }
    let ec = &t.ambient;
    let draw_set = |out: &mut String, set: &PlSet| {
        for c in set.pieces() {
            match c.dim() {
                0 => dot(out, px(0.0), py(0.0), 4.0, "trop-point"),
                1 => {
                    let (a, b) = ray_end(&c.rays()[0]);
                    line(out, px(0.0), py(0.0), px(a), py(b), "trop-ray");
                }
                _ => {
                    let mut pts = vec![(px(0.0), py(0.0))];
                    for r in c.rays() {
                        let (a, b) = ray_end(r);
                        pts.push((px(a), py(b)));
                    }
                    if c.rays().len() == 2 {
                        let (a1, b1) = ray_end(&c.rays()[0]);
                        let (a2, b2) = ray_end(&c.rays()[1]);
                        if (a1 - a2).abs() > 1e-9 && (b1 - b2).abs() > 1e-9 {
                            pts.insert(2, (px(1.0), py(1.0)));
                        }
                    }
                    let s: Vec<String> = pts
                        .iter()
                        .map(|(x, y)| format!("{},{}", num(*x), num(*y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        r#"<polygon class="trop-sector" points="{}"/>"#,
                        s.join(" ")
                    );
                }
            }
        }
    };
    draw_set(out, &t.nntrop.strata[0]);
    for (i, s) in ec.strata().iter().enumerate().skip(1) {
        let set = &t.nntrop.strata[i];
        let name = format!(
            "face [{}]",
            s.face_rays
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        match s.face_rays.as_slice() {
            [0] => {
                let x = px(1.0) + OFFSET;
                line(out, x, py(0.0), x, py(1.0), "stratum");
                label(out, x + 4.0, py(1.0) - 6.0, &name);
                for c in set.pieces() {
                    if c.dim() == 1 {
                        line(out, x, py(0.0), x, py(1.0), "trop-stratum");
                    } else {
                        dot(out, x, py(0.0), 4.0, "trop-point");
                    }
                }
            }
            [1] => {
                let y = py(1.0) - OFFSET;
                line(out, px(0.0), y, px(1.0), y, "stratum");
                label(out, px(0.0), y - 6.0, &name);
                for c in set.pieces() {
                    if c.dim() == 1 {
                        line(out, px(0.0), y, px(1.0), y, "trop-stratum");
                    } else {
                        dot(out, px(0.0), y, 4.0, "trop-point");
                    }
                }
            }
            _ => {
                let (x, y) = (px(1.0) + OFFSET, py(1.0) - OFFSET);
                dot(out, x, y, 2.0, "stratum");
                label(out, x + 6.0, y - 6.0, &name);
                if !set.is_empty() {
                    dot(out, x, y, 4.0, "trop-point");
                }
            }
        }
    }
    let _ = writeln!(out, "</g>");
}

/// SVG picture of a Newton diagram (when `f` is given) and a local tropicalization in two
/// variables.
pub fn svg(f: Option<&Poly>, t: Option<&LocalTrop>) -> String {
    let panels = f.is_some() as usize + t.is_some() as usize;
    let width = MARGIN + panels.max(1) as f64 * (PANEL + OFFSET + 2.0 * MARGIN);
    let height = PANEL + OFFSET + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(width),
        num(height),
        num(width),
        num(height)
    );
    out.push_str(
        "<style>.axis{stroke:#444;stroke-width:1}.lattice{fill:#bbb}.support{fill:#000}\
         .edge{stroke:#000;stroke-width:2}.unbounded{stroke:#000;stroke-dasharray:4 3}\
         .stratum{stroke:#999;stroke-dasharray:2 2;fill:#999}.trop-ray,.trop-stratum{stroke:#c00;stroke-width:3}\
         .trop-point{fill:#c00}.trop-sector{fill:#c00;fill-opacity:0.3}text{font:12px sans-serif}</style>\n",
    );
    let mut x0 = MARGIN;
    let y0 = MARGIN + OFFSET;
    if let Some(f) = f {
        newton_panel(&mut out, f, x0, y0);
        x0 += PANEL + OFFSET + 2.0 * MARGIN;
    }
    match t {
        Some(t) => fan_panel(&mut out, t, x0, y0),
        None if f.is_none() => {
            let _ = writeln!(out, r#"<g class="axes">"#);
            line(&mut out, x0, y0 + PANEL, x0 + PANEL, y0 + PANEL, "axis");
            line(&mut out, x0, y0 + PANEL, x0, y0, "axis");
            let _ = writeln!(out, "</g>");
        }
        None => {}
    }
    out.push_str("</svg>");
    out
}
