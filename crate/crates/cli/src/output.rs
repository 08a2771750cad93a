//! Artifact emission: hashed CSV files and minimal self-contained SVG plots.

use std::path::Path;

use crate::CliError;

/// Full-precision float cell; `{:e}` round-trips f64 exactly and keeps the
/// files byte-stable across runs.
pub fn cell(v: f64) -> String {
    format!("{v:.17e}")
}

/// Write a CSV with the config-hash comment line, a header row, and rows.
/// Extra comment lines (scalar summaries) go between hash and header.
pub fn write_csv(
    path: &Path,
    hash: &str,
    comments: &[String],
    header: &str,
    rows: &[Vec<String>],
) -> Result<(), CliError> {
    let mut out = format!("# config {hash}\n");
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    out.push_str(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))
}

/// One polyline on a plot.
pub struct Curve {
    pub label: String,
    pub color: &'static str,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

pub const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Render curves into a fixed 800x500 SVG with axis ticks and a legend.
pub fn svg_plot(title: &str, x_label: &str, y_label: &str, curves: &[Curve]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 500.0;
    const L: f64 = 62.0;
    const R: f64 = 16.0;
    const T: f64 = 34.0;
    const B: f64 = 48.0;

    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for c in curves {
        for &(x, y) in &c.points {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
    }
    if !x0.is_finite() || x1 <= x0 {
        (x0, x1) = (0.0, 1.0);
    }
    if !y0.is_finite() || y1 <= y0 {
        (y0, y1) = (y0.min(0.0), y0.min(0.0) + 1.0);
    }
    // A small vertical margin keeps extremal points off the frame.
    let pad = 0.04 * (y1 - y0);
    let (y0, y1) = (y0 - pad, y1 + pad);

    let px = |x: f64| L + (x - x0) / (x1 - x0) * (W - L - R);
    let py = |y: f64| H - B - (y - y0) / (y1 - y0) * (H - T - B);

    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {W} {H}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    );
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str(&format!(
        "<text x=\"{:.1}\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">{title}</text>\n",
        (L + W - R) / 2.0
    ));

    // Frame.
    s.push_str(&format!(
        "<rect x=\"{L:.1}\" y=\"{T:.1}\" width=\"{:.1}\" height=\"{:.1}\" \
         fill=\"none\" stroke=\"black\"/>\n",
        W - L - R,
        H - T - B
    ));

    // Five ticks per axis.
    for i in 0..=4 {
        let fx = x0 + (x1 - x0) * i as f64 / 4.0;
        let gx = px(fx);
        s.push_str(&format!(
            "<line x1=\"{gx:.2}\" y1=\"{:.2}\" x2=\"{gx:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            H - B,
            H - B + 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{gx:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{fx:.3}</text>\n",
            H - B + 18.0
        ));
        let fy = y0 + (y1 - y0) * i as f64 / 4.0;
        let gy = py(fy);
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{gy:.2}\" x2=\"{L:.2}\" y2=\"{gy:.2}\" stroke=\"black\"/>\n",
            L - 5.0
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{fy:.3}</text>\n",
            L - 8.0,
            gy + 4.0
        ));
    }
    s.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{x_label}</text>\n",
        (L + W - R) / 2.0,
        H - 10.0
    ));
    s.push_str(&format!(
        "<text x=\"16\" y=\"{:.1}\" text-anchor=\"middle\" \
         transform=\"rotate(-90 16 {:.1})\">{y_label}</text>\n",
        (T + H - B) / 2.0,
        (T + H - B) / 2.0
    ));

    for c in curves {
        let pts: Vec<String> = c
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let dash = if c.dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        s.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{dash}/>\n",
            pts.join(" "),
            c.color
        ));
    }

    // Legend, top-right inside the frame.
    for (i, c) in curves.iter().enumerate() {
        let y = T + 16.0 + 16.0 * i as f64;
        let dash = if c.dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        s.push_str(&format!(
            "<line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
             stroke=\"{}\" stroke-width=\"1.5\"{dash}/>\n",
            W - R - 150.0,
            W - R - 120.0,
            c.color
        ));
        s.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\">{}</text>\n",
            W - R - 114.0,
            y + 4.0,
            c.label
        ));
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(path: &Path, svg: &str) -> Result<(), CliError> {
    std::fs::write(path, svg)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))
}
