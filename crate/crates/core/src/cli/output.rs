//! CSV and SVG emission, CSV ingestion, atomic file writes.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use crate::distribution::{Distribution, DistributionMeta, Variable};

pub const CSV_HEADER: &str = "theta_rad,sin_theta,k,P";

/// Renders an angular distribution as CSV. Floats use Rust's shortest
/// round-trip formatting, so the output is byte-stable.
pub fn write_csv(dist: &Distribution) -> String {
    let p = dist.momentum();
    let mut out = String::with_capacity(64 * dist.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (&theta, &value) in dist.abscissa.iter().zip(&dist.values) {
        let s = theta.sin();
        let _ = writeln!(out, "{theta},{s},{},{value}", p * s);
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("expected header {CSV_HEADER:?}, found {0:?}")]
    Header(String),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
}

/// Reads CSV produced by [`write_csv`] back into a θ distribution. The
/// wavelength is recovered from `k / sin θ`.
pub fn read_csv(text: &str, jacobian: bool, paper_literal: bool) -> Result<Distribution, CsvError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers()?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(CsvError::Header(header));
    }
    let mut thetas = Vec::new();
    let mut values = Vec::new();
    let mut best_ratio: Option<(f64, f64)> = None;
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 2;
        if record.len() != 4 {
            return Err(CsvError::Row { row, message: format!("expected 4 fields, got {}", record.len()) });
        }
        let mut nums = [0.0f64; 4];
        for (slot, field) in nums.iter_mut().zip(record.iter()) {
            *slot = field
                .trim()
                .parse()
                .map_err(|_| CsvError::Row { row, message: format!("not a number: {field:?}") })?;
        }
        let [theta, s, k, value] = nums;
        if !nums.iter().all(|v| v.is_finite()) {
            return Err(CsvError::Row { row, message: "non-finite value".into() });
        }
        if thetas.last().is_some_and(|&prev| theta <= prev) {
            return Err(CsvError::Row { row, message: "theta must be strictly increasing".into() });
        }
        if best_ratio.is_none_or(|(bs, _)| s.abs() > bs.abs()) && s != 0.0 {
            best_ratio = Some((s, k));
        }
        thetas.push(theta);
        values.push(value);
    }
    if thetas.is_empty() {
        return Err(CsvError::Row { row: 2, message: "no data rows".into() });
    }
    let (s, k) = best_ratio.ok_or(CsvError::Row { row: 2, message: "cannot infer wavelength with sin θ = 0 only".into() })?;
    let p = k / s;
    if !(p > 0.0) {
        return Err(CsvError::Row { row: 2, message: "k and sin θ imply a non-positive momentum".into() });
    }
    Ok(Distribution {
        abscissa: thetas,
        values,
        meta: DistributionMeta {
            variable: Variable::Theta,
            jacobian_applied: jacobian,
            paper_literal,
            wavelength: 2.0 * std::f64::consts::PI / p,
            system: "read from CSV".into(),
        },
    })
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

/// Static SVG plot of a peak-normalized angular distribution against
/// `sin θ`.
pub fn render_svg(dist: &Distribution, title: &str) -> String {
    let peak = dist.peak();
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |s: f64| LEFT + (s + 1.0) / 2.0 * plot_w;
    let sy = |v: f64| TOP + (1.0 - v) * plot_h;
    let coordinate: Vec<f64> = match dist.meta.variable {
        Variable::Theta => dist.abscissa.iter().map(|t| t.sin()).collect(),
        Variable::K => {
            let p = dist.momentum();
            dist.abscissa.iter().map(|k| (k / p).clamp(-1.0, 1.0)).collect()
        }
    };

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 500" width="800" height="500">"#);
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="800" height="500" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="28" font-family="sans-serif" font-size="18" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    // Axes.
    let _ = writeln!(
        svg,
        r#"<g stroke="black" stroke-width="1"><line x1="{l:.1}" y1="{b:.1}" x2="{r:.1}" y2="{b:.1}"/><line x1="{l:.1}" y1="{t:.1}" x2="{l:.1}" y2="{b:.1}"/></g>"#,
        l = LEFT,
        r = WIDTH - RIGHT,
        t = TOP,
        b = HEIGHT - BOTTOM
    );
    for s in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let x = sx(s);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.1}" y1="{y0:.1}" x2="{x:.1}" y2="{y1:.1}" stroke="black"/><text x="{x:.1}" y="{ty:.1}" font-family="sans-serif" font-size="13" text-anchor="middle">{s}</text>"#,
            y0 = HEIGHT - BOTTOM,
            y1 = HEIGHT - BOTTOM + 6.0,
            ty = HEIGHT - BOTTOM + 22.0,
        );
    }
    for v in [0.0, 0.5, 1.0] {
        let y = sy(v);
        let _ = writeln!(
            svg,
            r#"<line x1="{x0:.1}" y1="{y:.1}" x2="{x1:.1}" y2="{y:.1}" stroke="black"/><text x="{tx:.1}" y="{ty:.1}" font-family="sans-serif" font-size="13" text-anchor="end">{v}</text>"#,
            x0 = LEFT - 6.0,
            x1 = LEFT,
            tx = LEFT - 10.0,
            ty = y + 4.0,
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">sin θ</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {:.1})">P / P_max</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    svg.push_str(r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points=""#);
    let scale = if peak > 0.0 { 1.0 / peak } else { 0.0 };
    for (i, (&s, &v)) in coordinate.iter().zip(&dist.values).enumerate() {
        if i > 0 {
            svg.push(' ');
        }
        let _ = write!(svg, "{:.2},{:.2}", sx(s), sy(v * scale));
    }
    svg.push_str("\"/>\n</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, then renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::angular_distribution;
    use crate::slit::{canonical_system, Figure};

    #[test]
    fn csv_first_row_and_centre() {
        let d = angular_distribution(&canonical_system(Figure::Fig2), 2001, false, false).unwrap();
        let csv = write_csv(&d);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first: Vec<f64> = lines.next().unwrap().split(',').map(|f| f.parse().unwrap()).collect();
        assert_eq!(first[0], -std::f64::consts::FRAC_PI_2);
        assert_eq!(first[1], -1.0);
        assert!((first[3] - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        let centre = csv.lines().nth(1001).unwrap();
        assert!(centre.starts_with("0,0,0,"), "{centre}");
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let d = angular_distribution(&canonical_system(Figure::Fig5), 301, false, false).unwrap();
        let back = read_csv(&write_csv(&d), false, false).unwrap();
        assert_eq!(back.abscissa, d.abscissa);
        assert_eq!(back.values, d.values);
        assert!((back.meta.wavelength - 1.0).abs() < 1e-15);
    }

    #[test]
    fn csv_rejects_bad_input() {
        assert!(matches!(read_csv("a,b,c,d\n1,2,3,4\n", false, false), Err(CsvError::Header(_))));
        assert!(read_csv(&format!("{CSV_HEADER}\n"), false, false).is_err());
        assert!(read_csv(&format!("{CSV_HEADER}\n0.1,0.1,x,1\n"), false, false).is_err());
        assert!(read_csv(&format!("{CSV_HEADER}\n0.2,0.19,1.2,1\n0.1,0.09,0.6,1\n"), false, false).is_err());
    }

    #[test]
    fn svg_is_static_document() {
        let d = angular_distribution(&canonical_system(Figure::Fig3), 201, false, false).unwrap();
        let svg = render_svg(&d, "Figure 3 <a=4>");
        assert!(svg.contains(r#"viewBox="0 0 800 500""#));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(!svg.contains("<script"));
        assert!(svg.contains("&lt;a=4&gt;"));
        for tick in [">-1<", ">-0.5<", ">0<", ">0.5<", ">1<"] {
            assert!(svg.contains(tick), "{tick}");
        }
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
