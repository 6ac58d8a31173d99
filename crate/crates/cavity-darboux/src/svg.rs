//! Self-contained SVG line plots: fixed 800x500 viewBox, one polyline per
//! trace, linear (or log-y) axes auto-ranged with a 5% margin, six tick
//! labels per axis, no external fonts or scripts.

use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 784.0;
const TOP: f64 = 32.0;
const BOTTOM: f64 = 452.0;
const TICKS: usize = 6;

#[derive(Debug, Clone)]
pub struct PlotStyle {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub logy: bool,
}

fn tick_label(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let mag = x.abs();
    if !(1e-3..1e5).contains(&mag) {
        return format!("{x:.2e}");
    }
    let mut s = format!("{x:.4}");
    while s.contains('.') && (s.ends_with('0') || s.ends_with('.')) {
        s.pop();
    }
    s
}

/// Range with a 5% margin on each side; degenerate spans get a unit pad.
fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if lo == hi {
        return (lo - 1.0, hi + 1.0);
    }
    let margin = 0.05 * (hi - lo);
    (lo - margin, hi + margin)
}

/// Renders one trace. With `logy` every value must be positive; otherwise
/// the plot silently falls back to linear axes.
pub fn render(t: &[f64], v: &[f64], style: &PlotStyle) -> String {
    assert_eq!(t.len(), v.len());
    assert!(!t.is_empty(), "empty trace");
    let logy = style.logy && v.iter().all(|&y| y > 0.0);
    let y_data: Vec<f64> = if logy {
        v.iter().map(|&y| y.log10()).collect()
    } else {
        v.to_vec()
    };
    let (x_lo, x_hi) = padded_range(t.iter().copied());
    let (y_lo, y_hi) = padded_range(y_data.iter().copied());
    let x_of = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * (RIGHT - LEFT);
    let y_of = |y: f64| BOTTOM - (y - y_lo) / (y_hi - y_lo) * (BOTTOM - TOP);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    let _ = writeln!(
        out,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "  <text x=\"{:.1}\" y=\"20\" font-size=\"15\" text-anchor=\"middle\">{}</text>",
        (LEFT + RIGHT) / 2.0,
        escape(&style.title)
    );
    // frame
    let _ = writeln!(
        out,
        "  <rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{:.1}\" height=\"{:.1}\" fill=\"none\" stroke=\"black\"/>",
        RIGHT - LEFT,
        BOTTOM - TOP
    );
    // ticks
    for k in 0..TICKS {
        let f = k as f64 / (TICKS - 1) as f64;
        let xv = x_lo + f * (x_hi - x_lo);
        let xp = x_of(xv);
        let _ = writeln!(
            out,
            "  <line x1=\"{xp:.2}\" y1=\"{BOTTOM}\" x2=\"{xp:.2}\" y2=\"{:.1}\" stroke=\"black\"/>",
            BOTTOM + 6.0
        );
        let _ = writeln!(
            out,
            "  <text x=\"{xp:.2}\" y=\"{:.1}\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            BOTTOM + 22.0,
            tick_label(xv)
        );
        let yv = y_lo + f * (y_hi - y_lo);
        let yp = y_of(yv);
        let _ = writeln!(
            out,
            "  <line x1=\"{:.1}\" y1=\"{yp:.2}\" x2=\"{LEFT}\" y2=\"{yp:.2}\" stroke=\"black\"/>",
            LEFT - 6.0
        );
        let label = if logy {
            format!("1e{}", tick_label(yv))
        } else {
            tick_label(yv)
        };
        let _ = writeln!(
            out,
            "  <text x=\"{:.1}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{}</text>",
            LEFT - 10.0,
            yp + 4.0,
            label
        );
    }
    // axis labels
    let _ = writeln!(
        out,
        "  <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        (LEFT + RIGHT) / 2.0,
        HEIGHT - 8.0,
        escape(&style.x_label)
    );
    let _ = writeln!(
        out,
        "  <text x=\"18\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>",
        (TOP + BOTTOM) / 2.0,
        (TOP + BOTTOM) / 2.0,
        escape(&style.y_label)
    );
    // the trace
    let mut points = String::with_capacity(t.len() * 14);
    for (&x, &y) in t.iter().zip(&y_data) {
        let _ = write!(points, "{:.2},{:.2} ", x_of(x), y_of(y));
    }
    let _ = writeln!(
        out,
        "  <polyline points=\"{}\" fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1\"/>",
        points.trim_end()
    );
    out.push_str("</svg>\n");
    out
}

pub fn write(
    path: &std::path::Path,
    t: &[f64],
    v: &[f64],
    style: &PlotStyle,
) -> std::io::Result<()> {
    std::fs::write(path, render(t, v, style))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn style() -> PlotStyle {
        PlotStyle {
            title: "W(t)".into(),
            x_label: "t".into(),
            y_label: "W".into(),
            logy: false,
        }
    }

    #[test]
    fn structure_is_self_contained() {
        let t: Vec<f64> = (0..100).map(|k| k as f64).collect();
        let v: Vec<f64> = t.iter().map(|x| (x * 0.2).sin()).collect();
        let svg = render(&t, &v, &style());
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("viewBox=\"0 0 800 500\""));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.matches("text-anchor=\"middle\">").count() >= TICKS);
        assert!(!svg.contains("font-family"));
        assert!(!svg.contains("<script"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let t: Vec<f64> = (0..512).map(|k| 0.1 * k as f64).collect();
        let v: Vec<f64> = t.iter().map(|x| (x * 1.7).cos() / (1.0 + x)).collect();
        assert_eq!(render(&t, &v, &style()), render(&t, &v, &style()));
    }

    #[test]
    fn logy_falls_back_when_nonpositive() {
        let t = vec![0.0, 1.0, 2.0];
        let v = vec![1.0, -1.0, 2.0];
        let mut s = style();
        s.logy = true;
        let svg = render(&t, &v, &s);
        assert!(!svg.contains(">1e")); // no log labels
    }

    #[test]
    fn tick_labels_stay_compact() {
        assert_eq!(tick_label(0.0), "0");
        assert_eq!(tick_label(2.5), "2.5");
        assert_eq!(tick_label(100.0), "100");
        assert_eq!(tick_label(1.23456e7), "1.23e7");
        assert_eq!(tick_label(-0.25), "-0.25");
    }
}
