// SPDX-License-Identifier: Apache-2.0

//! Minimal log–log SVG line charts.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Context, Result};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

struct Point {
    x: f64,
    y: f64,
    whisker: Option<(f64, f64)>,
}

/// Renders `y` against `x` with one polyline per value of `group`. When the
/// CSV has `ci_low` and `ci_high` columns they are drawn as whiskers.
/// Points with non-positive coordinates cannot sit on log axes and are
/// skipped.
pub fn emit_svg(csv_text: &str, x: &str, y: &str, group: Option<&str>) -> Result<String> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = reader.headers().context("reading CSV header")?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let xi = col(x).with_context(|| format!("--x: no column `{x}`"))?;
    let yi = col(y).with_context(|| format!("--y: no column `{y}`"))?;
    let gi = match group {
        Some(g) => Some(col(g).with_context(|| format!("--group: no column `{g}`"))?),
        None => None,
    };
    let ci = col("ci_low").zip(col("ci_high"));

    let mut series: BTreeMap<String, Vec<Point>> = BTreeMap::new();
    let mut rows = 0usize;
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.with_context(|| format!("CSV data row {row}"))?;
        rows += 1;
        let num = |j: usize, name: &str| -> Result<f64> {
            let field = record.get(j).with_context(|| format!("row {row}: missing `{name}`"))?;
            field
                .parse::<f64>()
                .with_context(|| format!("row {row}: `{name}` value `{field}` is not a number"))
        };
        let px = num(xi, x)?;
        let py = num(yi, y)?;
        let whisker = match ci {
            Some((lo, hi)) => Some((num(lo, "ci_low")?, num(hi, "ci_high")?)),
            None => None,
        };
        let key = gi.map_or_else(String::new, |g| record.get(g).unwrap_or_default().to_owned());
        if px > 0.0 && py > 0.0 {
            series.entry(key).or_default().push(Point { x: px, y: py, whisker });
        }
    }
    if rows == 0 {
        bail!("no data rows");
    }
    if series.is_empty() {
        bail!("no rows with positive `{x}` and `{y}`");
    }

    let all = || series.values().flatten();
    let (xmin, xmax) = decade_bounds(all().map(|p| p.x));
    let (ymin, ymax) = decade_bounds(
        all().flat_map(|p| [Some(p.y), p.whisker.map(|w| w.0), p.whisker.map(|w| w.1)])
            .flatten()
            .filter(|v| *v > 0.0),
    );
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |v: f64| LEFT + (v.log10() - xmin) / (xmax - xmin) * plot_w;
    let sy = |v: f64| TOP + (ymax - v.log10()) / (ymax - ymin) * plot_h;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    )?;
    for e in xmin as i32..=xmax as i32 {
        let px = sx(10f64.powi(e));
        writeln!(
            svg,
            r##"<line x1="{px:.2}" y1="{TOP}" x2="{px:.2}" y2="{:.2}" stroke="#ddd"/><text x="{px:.2}" y="{:.2}" font-size="12" text-anchor="middle">1e{e}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 18.0
        )?;
    }
    for e in ymin as i32..=ymax as i32 {
        let py = sy(10f64.powi(e));
        writeln!(
            svg,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">1e{e}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            py + 4.0
        )?;
    }
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" font-size="14" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0,
        escape(x)
    )?;
    writeln!(
        svg,
        r#"<text x="18" y="{:.2}" font-size="14" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y)
    )?;

    for (i, (name, points)) in series.iter_mut().enumerate() {
        points.sort_by(|a, b| a.x.total_cmp(&b.x));
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = points.iter().map(|p| format!("{:.2},{:.2}", sx(p.x), sy(p.y))).collect();
        writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            coords.join(" ")
        )?;
        for p in points.iter() {
            let (cx, cy) = (sx(p.x), sy(p.y));
            writeln!(svg, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="3" fill="{color}"/>"#)?;
            if let Some((lo, hi)) = p.whisker.filter(|w| w.0 > 0.0 && w.1 > 0.0) {
                writeln!(
                    svg,
                    r#"<line x1="{cx:.2}" y1="{:.2}" x2="{cx:.2}" y2="{:.2}" stroke="{color}"/>"#,
                    sy(lo),
                    sy(hi)
                )?;
            }
        }
        if group.is_some() {
            let ly = TOP + 20.0 + 20.0 * i as f64;
            let lx = LEFT + plot_w + 15.0;
            writeln!(
                svg,
                r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
                lx + 20.0,
                lx + 26.0,
                ly + 4.0,
                escape(&format!("{} = {name}", group.unwrap_or_default()))
            )?;
        }
    }
    writeln!(svg, "</svg>")?;
    Ok(svg)
}

/// Whole decades around the data, in log10 units.
fn decade_bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v.log10()), hi.max(v.log10()))
    });
    let (lo, hi) = (lo.floor(), hi.ceil());
    if hi > lo {
        (lo, hi)
    } else {
        (lo, lo + 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
