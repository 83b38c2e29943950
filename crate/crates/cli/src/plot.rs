//! Static SVG line charts of aggregate CSV files.

use std::fmt::Write;

use phasealign::experiments::{Envelope, AGGREGATE_HEADER};

/// One parsed aggregate line; only the columns the chart uses are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub scheme: String,
    pub k: usize,
    pub mean: f64,
}

/// Parses an aggregate CSV. Errors name the offending 1-based line.
pub fn parse_aggregates(text: &str) -> Result<Vec<Point>, String> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            None => return Err("line 1: empty file, expected header".into()),
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break (i, l.trim()),
        }
    };
    if header.1 != AGGREGATE_HEADER {
        return Err(format!("line {}: expected header `{AGGREGATE_HEADER}`", header.0 + 1));
    }
    let width = AGGREGATE_HEADER.split(',').count();
    let mut points = Vec::new();
    for (i, line) in lines {
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != width {
            return Err(format!("line {n}: expected {width} fields, found {}", fields.len()));
        }
        if fields[0].is_empty() {
            return Err(format!("line {n}: empty scheme"));
        }
        let k: usize = fields[1]
            .parse()
            .map_err(|_| format!("line {n}: k `{}` is not a positive integer", fields[1]))?;
        if k == 0 {
            return Err(format!("line {n}: k must be positive"));
        }
        let mean: f64 = fields[2]
            .parse()
            .map_err(|_| format!("line {n}: mean_sum_rate `{}` is not a number", fields[2]))?;
        if !mean.is_finite() {
            return Err(format!("line {n}: mean_sum_rate must be finite"));
        }
        points.push(Point {
            scheme: fields[0].to_string(),
            k,
            mean,
        });
    }
    if points.is_empty() {
        return Err(format!("line {}: no data rows after header", header.0 + 2));
    }
    Ok(points)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 70.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn k_label(k: usize) -> String {
    if k.is_power_of_two() && k >= 4 {
        format!("2^{}", k.trailing_zeros())
    } else {
        k.to_string()
    }
}

/// Round step for about five ticks over `span`.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm <= 1.0 {
        1.0
    } else if norm <= 2.0 {
        2.0
    } else if norm <= 5.0 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

/// Renders mean sum rate against K (log x axis), one polyline per scheme,
/// plus an optional dashed envelope curve.
pub fn render_svg(points: &[Point], envelope: Option<Envelope>) -> String {
    let mut schemes: Vec<&str> = Vec::new();
    for p in points {
        if !schemes.contains(&p.scheme.as_str()) {
            schemes.push(&p.scheme);
        }
    }
    let mut ks: Vec<usize> = points.iter().map(|p| p.k).collect();
    ks.sort_unstable();
    ks.dedup();
    let (k_min, k_max) = (ks[0] as f64, *ks.last().unwrap() as f64);
    let (mut x_lo, mut x_hi) = (k_min.log10(), k_max.log10());
    if x_hi - x_lo < 1e-9 {
        x_lo -= 0.5;
        x_hi += 0.5;
    }

    // Envelope sampled on a log grid, skipping K where it is undefined.
    let env_curve: Vec<(f64, f64)> = envelope
        .map(|env| {
            (0..=64)
                .map(|i| 10f64.powf(x_lo + (x_hi - x_lo) * i as f64 / 64.0))
                .map(|k| (k, env.value(k)))
                .filter(|(_, v)| v.is_finite() && *v > 0.0)
                .collect()
        })
        .unwrap_or_default();

    let mut y_min = points.iter().map(|p| p.mean).fold(0.0, f64::min);
    let mut y_max = points.iter().map(|p| p.mean).fold(f64::NEG_INFINITY, f64::max);
    for &(_, v) in &env_curve {
        y_max = y_max.max(v);
        y_min = y_min.min(v);
    }
    if y_max - y_min < 1e-9 {
        y_max = y_min + 1.0;
    }
    let step = tick_step(y_max - y_min);
    y_min = (y_min / step).floor() * step;
    y_max = (y_max / step).ceil() * step;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |k: f64| LEFT + (k.log10() - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |v: f64| TOP + (y_max - v) / (y_max - y_min) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // Axes, ticks, grid.
    let (x0, x1, y0, y1) = (LEFT, LEFT + plot_w, TOP + plot_h, TOP);
    let _ = writeln!(w, r#"<g stroke="black" stroke-width="1">"#);
    let _ = writeln!(w, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/>"#);
    let _ = writeln!(w, r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/>"#);
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, r#"<g text-anchor="middle">"#);
    for &k in &ks {
        let x = sx(k as f64);
        let _ = writeln!(w, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/>"#, y0 + 5.0);
        let _ = writeln!(w, r#"<text x="{x:.2}" y="{:.2}">{}</text>"#, y0 + 20.0, k_label(k));
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, r#"<g text-anchor="end">"#);
    let n_ticks = ((y_max - y_min) / step).round() as i64;
    for i in 0..=n_ticks {
        let v = y_min + i as f64 * step;
        let y = sy(v);
        let _ = writeln!(w, r##"<line x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="#dddddd"/>"##);
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, x0 - 8.0, y + 4.0, trim_number(v, step));
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">number of users K (log scale)</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 20.0
    );
    let _ = writeln!(
        w,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">mean sum rate (nats)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    if !env_curve.is_empty() {
        let pts: Vec<String> = env_curve
            .iter()
            .map(|&(k, v)| format!("{:.2},{:.2}", sx(k), sy(v)))
            .collect();
        let _ = writeln!(
            w,
            r##"<path d="M {}" fill="none" stroke="#555555" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            pts.join(" L ")
        );
    }

    for (i, scheme) in schemes.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut series: Vec<&Point> = points.iter().filter(|p| p.scheme == *scheme).collect();
        series.sort_by_key(|p| p.k);
        let pts: Vec<String> = series
            .iter()
            .map(|p| format!("{:.2},{:.2}", sx(p.k as f64), sy(p.mean)))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
        for p in &series {
            let _ = writeln!(
                w,
                r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                sx(p.k as f64),
                sy(p.mean)
            );
        }
        let ly = TOP + 10.0 + 20.0 * i as f64;
        let lx = LEFT + plot_w + 15.0;
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 25.0
        );
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}">{}</text>"#, lx + 32.0, ly + 4.0, escape(scheme));
    }
    if let Some(env) = envelope {
        let ly = TOP + 10.0 + 20.0 * schemes.len() as f64;
        let lx = LEFT + plot_w + 15.0;
        let label = match env {
            Envelope::LnK => "ln K",
            Envelope::LnKOverLnLnK => "ln K / ln ln K",
            Envelope::Const => "constant 1",
        };
        let _ = writeln!(
            w,
            r##"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="#555555" stroke-dasharray="6 4"/>"##,
            lx + 25.0
        );
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, lx + 32.0, ly + 4.0);
    }
    let _ = writeln!(w, "</svg>");
    svg
}

fn trim_number(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 { 0 } else { (-step.log10()).ceil() as usize };
    let s = format!("{:.*}", decimals, v);
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}
