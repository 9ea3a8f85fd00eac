//! Minimal standalone SVG line charts.

use std::fmt::Write as _;

use crate::error::{invalid, Result};

/// A named polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Reads the first two columns of a `theta,density,...` CSV; the header row
/// is skipped.
pub fn parse_curve_csv(name: &str, text: &str) -> Result<Curve> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    lines.next().ok_or_else(|| invalid(format!("{name}: empty CSV")))?;
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut cols = line.split(',');
        let mut next = |what: &str| -> Result<f64> {
            let raw = cols.next().ok_or_else(|| invalid(format!("{name}: row {} lacks a {what} column", i + 2)))?;
            raw.trim().parse::<f64>().map_err(|_| invalid(format!("{name}: row {}: bad {what} {raw:?}", i + 2)))
        };
        let x = next("theta")?;
        let y = next("density")?;
        if !(x.is_finite() && y.is_finite()) {
            return Err(invalid(format!("{name}: row {} is not finite", i + 2)));
        }
        points.push((x, y));
    }
    if points.is_empty() {
        return Err(invalid(format!("{name}: no data rows")));
    }
    Ok(Curve { name: name.to_string(), points })
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;

const STYLES: [(&str, &str); 6] = [
    ("#1f4e9c", "12 6"),
    ("#000000", ""),
    ("#b2182b", "2 4"),
    ("#4d9221", "5 3"),
    ("#8c510a", "10 3 2 3"),
    ("#762a83", "1 2"),
];

/// Step of roughly `span / 5` rounded to 1, 2 or 5 times a power of ten.
fn tick_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let m = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(hi - lo);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi > lo {
        (lo, hi)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Tick label without float noise.
fn label(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let s = format!("{v:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// An 800×500 chart with auto-scaled linear axes and a legend. Output
/// depends only on the input.
pub fn render_svg(curves: &[Curve]) -> Result<String> {
    if curves.is_empty() {
        return Err(invalid("no curves to plot"));
    }
    if let Some(c) = curves.iter().find(|c| c.points.is_empty()) {
        return Err(invalid(format!("curve {:?} has no points", c.name)));
    }
    let all = || curves.iter().flat_map(|c| c.points.iter());
    let (x0, x1) = range(all().map(|p| p.0));
    let (y_min, y_max) = range(all().map(|p| p.1));
    let (y0, y1) = (y_min.min(0.0), y_max + 0.05 * (y_max - y_min.min(0.0)));
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ =
        writeln!(w, r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#);

    let x_step = tick_step(x1 - x0);
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            w,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 20.0,
            label(t, x_step)
        );
    }
    let y_step = tick_step(y1 - y0);
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            y + 4.0,
            label(t, y_step)
        );
    }
    let _ =
        writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">θ</text>"#, LEFT + plot_w / 2.0, HEIGHT - 10.0);

    for (i, c) in curves.iter().enumerate() {
        let (color, dash) = STYLES[i % STYLES.len()];
        let pts: Vec<String> = c.points.iter().map(|(x, y)| format!("{:.2},{:.2}", sx(*x), sy(*y))).collect();
        let dash_attr = if dash.is_empty() { String::new() } else { format!(r#" stroke-dasharray="{dash}""#) };
        let _ = writeln!(
            w,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{}"/>"#,
            pts.join(" ")
        );
        let ly = TOP + 20.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="1.5"{dash_attr}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            lx + 36.0,
            ly + 4.0,
            escape(&c.name)
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(name: &str) -> Curve {
        Curve { name: name.into(), points: vec![(0.0, 0.0), (1.0, 2.0), (2.0, 1.0)] }
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(render_svg(&[]).is_err());
        let empty = Curve { name: "e".into(), points: vec![] };
        assert!(render_svg(&[empty]).is_err());
    }

    #[test]
    fn one_polyline_per_curve() {
        let svg = render_svg(&[curve("a"), curve("a")]).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(r#"viewBox="0 0 800 500""#));
        let lines: Vec<&str> = svg.lines().filter(|l| l.starts_with("<polyline")).collect();
        let pts = |l: &str| l.split("points=").nth(1).unwrap().to_string();
        assert_eq!(pts(lines[0]), pts(lines[1]));
    }

    #[test]
    fn deterministic() {
        let cs = [curve("x"), curve("y <&>")];
        assert_eq!(render_svg(&cs).unwrap(), render_svg(&cs).unwrap());
        assert!(render_svg(&cs).unwrap().contains("y &lt;&amp;&gt;"));
    }

    #[test]
    fn single_point_curve_renders() {
        let c = Curve { name: "p".into(), points: vec![(1.0, 1.0)] };
        assert!(render_svg(&[c]).is_ok());
    }

    #[test]
    fn csv_parsing() {
        let c = parse_curve_csv("f", "theta,density,spike_mass_at_zero\n0,0.5,0.1\n1,0.25,0.1\n").unwrap();
        assert_eq!(c.points, vec![(0.0, 0.5), (1.0, 0.25)]);
        assert!(parse_curve_csv("f", "").is_err());
        assert!(parse_curve_csv("f", "theta,density\n").is_err());
        assert!(parse_curve_csv("f", "theta,density\n0,abc\n").is_err());
        assert!(parse_curve_csv("f", "theta,density\n0\n").is_err());
    }

    #[test]
    fn tick_steps() {
        assert_eq!(tick_step(8.0), 2.0);
        assert_eq!(tick_step(0.5), 0.1);
        assert_eq!(label(-0.0, 0.1), "0.0");
        assert_eq!(ticks(-1.0, 5.0), vec![-1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
    }
}
