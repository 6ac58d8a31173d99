//! CSV emission and parsing: header line, 17-significant-digit decimal
//! floats (lossless for f64), `\n` newlines, UTF-8.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// One f64 with 17 significant digits; round-trips losslessly through parse.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a two-column trace under the given header labels.
pub fn render(x_label: &str, y_label: &str, t: &[f64], v: &[f64]) -> String {
    assert_eq!(t.len(), v.len());
    let mut out = String::with_capacity(t.len() * 48 + 16);
    let _ = writeln!(out, "{x_label},{y_label}");
    for (&tk, &vk) in t.iter().zip(v) {
        let _ = writeln!(out, "{},{}", format_float(tk), format_float(vk));
    }
    out
}

pub fn write(
    path: &Path,
    x_label: &str,
    y_label: &str,
    t: &[f64],
    v: &[f64],
) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(render(x_label, y_label, t, v).as_bytes())
}

/// Parses a two-column trace back; returns the header labels and columns.
pub fn parse(text: &str) -> Result<((String, String), Vec<f64>, Vec<f64>), String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty csv")?;
    let (hx, hy) = header.split_once(',').ok_or("malformed header")?;
    let mut t = Vec::new();
    let mut v = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let (a, b) = line
            .split_once(',')
            .ok_or_else(|| format!("malformed record on line {}", idx + 2))?;
        t.push(
            a.parse::<f64>()
                .map_err(|e| format!("line {}: {e}", idx + 2))?,
        );
        v.push(
            b.parse::<f64>()
                .map_err(|e| format!("line {}: {e}", idx + 2))?,
        );
    }
    Ok(((hx.to_string(), hy.to_string()), t, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_and_layout() {
        let text = render("t", "W", &[0.0, 0.5], &[1.0, -0.25]);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,W"));
        assert_eq!(
            lines.next(),
            Some("0.0000000000000000e0,1.0000000000000000e0")
        );
    }

    #[test]
    fn parse_inverts_render() {
        let t = vec![0.0, 1.0 / 3.0, 72.18830323380084];
        let v = vec![1.0, -(2.0f64).sqrt() / 3.0, 3.5e-14];
        let ((hx, hy), t2, v2) = parse(&render("t", "V", &t, &v)).unwrap();
        assert_eq!((hx.as_str(), hy.as_str()), ("t", "V"));
        assert_eq!(t, t2);
        assert_eq!(v, v2);
    }

    proptest! {
        #[test]
        fn floats_roundtrip_bit_exact(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let back: f64 = format_float(x).parse().unwrap();
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }
}
