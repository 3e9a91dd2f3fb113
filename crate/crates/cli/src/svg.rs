//! Trajectory plots in the affine chart `x₃ = 1`.
//!
//! The drawing is 800×800. The chart window is a square centred at the
//! origin; points outside it or on the line at infinity are drawn on a
//! boundary band in the direction they escape.

use std::fmt::Write;

pub const SIZE: f64 = 800.0;
const BAND: f64 = 24.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartPoint {
    Finite(f64, f64),
    /// On the line at infinity, in direction `(x₁, x₂)`.
    Infinite(f64, f64),
}

impl ChartPoint {
    pub fn from_homogeneous([x1, x2, x3]: [f64; 3]) -> Self {
        if x3 == 0.0 || !(x1 / x3).is_finite() || !(x2 / x3).is_finite() {
            ChartPoint::Infinite(x1, x2)
        } else {
            ChartPoint::Finite(x1 / x3, x2 / x3)
        }
    }
}

/// Half-width of the window: twice the largest coordinate of the start and
/// target, at least 1.
fn radius(points: &[ChartPoint], target: Option<ChartPoint>) -> f64 {
    let mut r: f64 = 1.0;
    for p in points.first().copied().into_iter().chain(target) {
        if let ChartPoint::Finite(x, y) = p {
            r = r.max(x.abs()).max(y.abs());
        }
    }
    2.0 * r
}

/// Pixel position and whether the point was pushed to the band.
fn place(p: ChartPoint, r: f64) -> (f64, f64, bool) {
    let inner = SIZE / 2.0 - BAND;
    let (dx, dy, outside) = match p {
        ChartPoint::Finite(x, y) if x.abs() <= r && y.abs() <= r => (x / r, y / r, false),
        ChartPoint::Finite(x, y) | ChartPoint::Infinite(x, y) => {
            let m = x.abs().max(y.abs());
            if m == 0.0 {
                (0.0, 0.0, true)
            } else {
                (x / m, y / m, true)
            }
        }
    };
    let scale = if outside { inner + BAND / 2.0 } else { inner };
    (SIZE / 2.0 + dx * scale, SIZE / 2.0 - dy * scale, outside)
}

pub fn render(points: &[ChartPoint], target: Option<ChartPoint>) -> String {
    let r = radius(points, target);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="800" height="800" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{b:.2}" y="{b:.2}" width="{w:.2}" height="{w:.2}" fill="none" stroke="#bbbbbb" stroke-width="{band:.2}"/>"##,
        b = BAND / 2.0,
        w = SIZE - BAND,
        band = BAND
    );
    let _ = writeln!(s, r##"<line x1="{BAND:.2}" y1="400.00" x2="{e:.2}" y2="400.00" stroke="#dddddd"/>"##, e = SIZE - BAND);
    let _ = writeln!(s, r##"<line x1="400.00" y1="{BAND:.2}" x2="400.00" y2="{e:.2}" stroke="#dddddd"/>"##, e = SIZE - BAND);
    let _ = writeln!(s, "<!-- chart window [-{r:.6}, {r:.6}]^2 -->");
    let placed: Vec<(f64, f64, bool)> = points.iter().map(|p| place(*p, r)).collect();
    let path: Vec<String> = placed.iter().map(|(x, y, _)| format!("{x:.2},{y:.2}")).collect();
    if !path.is_empty() {
        let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#4060a0" stroke-width="1"/>"##, path.join(" "));
    }
    for (i, (x, y, out)) in placed.iter().enumerate() {
        let colour = if *out { "#c03030" } else { "#203060" };
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{colour}"><title>{i}</title></circle>"#);
    }
    if let Some(t) = target {
        let (x, y, _) = place(t, r);
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{y:.2}" r="7" fill="none" stroke="#208040" stroke-width="2"><title>p+</title></circle>"##);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_at_infinity_go_to_the_band() {
        let (x, y, out) = place(ChartPoint::Infinite(1.0, 0.0), 2.0);
        assert!(out);
        assert_eq!((x, y), (SIZE - BAND / 2.0, 400.0));
        let (x, y, out) = place(ChartPoint::Finite(1.0, -1.0), 2.0);
        assert!(!out);
        assert!(x > 400.0 && y > 400.0);
    }

    #[test]
    fn fixed_size() {
        let svg = render(&[ChartPoint::Finite(0.0, 0.0)], None);
        assert!(svg.starts_with(r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800""#));
    }
}
