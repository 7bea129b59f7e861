//! Self-contained SVG convergence charts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::warn;

/// Values at or below this are drawn at `log10(LOG_FLOOR) = -300`.
pub const LOG_FLOOR: f64 = 1e-300;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    /// `(iteration, best fitness)`.
    pub points: Vec<(f64, f64)>,
}

/// Reads the `mean` column of a convergence CSV (`iteration, run_0.., mean`).
/// Other CSV shapes give `Ok(None)`.
pub fn read_series(path: &Path) -> Result<Option<Series>, String> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    if headers.get(0) != Some("iteration") || headers.iter().next_back() != Some("mean") {
        return Ok(None);
    }
    let mean_col = headers.len() - 1;
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let parse = |i: usize| -> Result<f64, String> {
            record
                .get(i)
                .ok_or("short row")?
                .parse::<f64>()
                .map_err(|e| e.to_string())
        };
        points.push((parse(0)?, parse(mean_col)?));
    }
    if points.len() < 2 {
        return Err(format!("only {} data rows", points.len()));
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(Some(Series { label, points }))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Renders one chart. The y axis is `log10` of the value (floored at
/// `LOG_FLOOR`) unless some value is negative, in which case it is linear.
pub fn render_svg(title: &str, series: &[Series]) -> String {
    let log_scale = series.iter().all(|s| s.points.iter().all(|p| p.1 >= 0.0));
    let y_of = |v: f64| {
        if log_scale {
            v.max(LOG_FLOOR).log10()
        } else {
            v
        }
    };

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for s in series {
        for &(x, v) in &s.points {
            let y = y_of(v);
            if !(x.is_finite() && y.is_finite()) {
                continue;
            }
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if !x_min.is_finite() {
        (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
    }
    if x_max <= x_min {
        x_max = x_min + 1.0;
    }
    if y_max <= y_min {
        y_min -= 1.0;
        y_max += 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| TOP + (y_max - y) / (y_max - y_min) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="16">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let xv = x_min + f * (x_max - x_min);
        let yv = y_min + f * (y_max - y_min);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{:.*}</text>"#,
            sx(xv),
            TOP + plot_h + 18.0,
            if x_max - x_min < 10.0 { 1 } else { 0 },
            xv
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            sy(yv) + 4.0,
            if log_scale {
                format!("{yv:.1}")
            } else {
                format!("{yv:.4e}")
            }
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">iteration</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 16.0
    );
    let y_label = if log_scale {
        "log10(best fitness)"
    } else {
        "best fitness"
    };
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{y_label}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, v)| x.is_finite() && y_of(*v).is_finite())
            .map(|&(x, v)| format!("{:.2},{:.2}", sx(x), sy(y_of(v))))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// True for `<name>.csv` without an inner extension such as `.best.csv`.
fn is_convergence_file(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "csv")
        && path
            .file_stem()
            .is_some_and(|s| !s.to_string_lossy().contains('.'))
}

/// Writes `convergence.svg` into every directory below `root` that holds
/// convergence CSVs. Unreadable or short files are skipped with a warning.
pub fn chart_dir(root: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        let mut entries: Vec<PathBuf> = fs::read_dir(&dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<_, _>>()?;
        entries.sort();
        let mut series = Vec::new();
        for path in &entries {
            if path.is_dir() {
                stack.push(path.clone());
            } else if is_convergence_file(path) {
                match read_series(path) {
                    Ok(Some(s)) => series.push(s),
                    Ok(None) => {}
                    Err(e) => warn!("skipping {}: {e}", path.display()),
                }
            }
        }
        if !series.is_empty() {
            let title = dir
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let out = dir.join("convergence.svg");
            fs::write(&out, render_svg(&title, &series))?;
            written.push(out);
        }
    }
    written.sort();
    Ok(written)
}
