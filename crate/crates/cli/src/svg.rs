//! Fixed-layout SVG line chart. Every coordinate is printed with three decimals so the
//! same inputs always give the same bytes.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

pub struct Series {
    pub label: String,
    pub color: &'static str,
    pub points: Vec<(f64, f64)>,
}

fn fx(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" { "0.000".into() } else { s }
}

pub fn chart(title: &str, series: &[Series]) -> String {
    let (x0, x1) = (0.0, 2.0);
    let ys = series.iter().flat_map(|s| s.points.iter().map(|p| p.1)).filter(|y| y.is_finite());
    let (lo, hi) = ys.fold((0.0f64, 0.0f64), |(a, b), y| (a.min(y), b.max(y)));
    let hi = if hi - lo < 1e-12 { lo + 1.0 } else { hi };
    let pad = 0.05 * (hi - lo);
    let (y0, y1) = (lo - pad, hi + pad);
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        fx(WIDTH / 2.0),
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        fx(LEFT),
        fx(TOP),
        fx(pw),
        fx(ph)
    );
    for i in 0..=4 {
        let t = 0.5 * i as f64;
        let x = sx(t);
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/><text x="{0}" y="{3}" font-family="sans-serif" font-size="12" text-anchor="middle">{4:.1}</text>"#,
            fx(x),
            fx(TOP + ph),
            fx(TOP + ph + 5.0),
            fx(TOP + ph + 20.0),
            t
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let y = sy(0.0);
        let _ = writeln!(
            out,
            r##"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="#999" stroke-dasharray="4 4"/>"##,
            fx(LEFT),
            fx(y),
            fx(LEFT + pw)
        );
    }
    for i in 0..=4 {
        let v = y0 + (y1 - y0) * i as f64 / 4.0;
        let y = sy(v);
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/><text x="{3}" y="{4}" font-family="sans-serif" font-size="12" text-anchor="end">{5}</text>"#,
            fx(LEFT - 5.0),
            fx(y),
            fx(LEFT),
            fx(LEFT - 8.0),
            fx(y + 4.0),
            fx(v)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">tau</text>"#,
        fx(LEFT + pw / 2.0),
        fx(HEIGHT - 10.0)
    );
    for (i, s) in series.iter().enumerate() {
        let mut d = String::new();
        let mut pen_up = true;
        for &(x, y) in &s.points {
            if !y.is_finite() {
                pen_up = true;
                continue;
            }
            let _ = write!(d, "{}{},{} ", if pen_up { "M" } else { "L" }, fx(sx(x)), fx(sy(y)));
            pen_up = false;
        }
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
            d.trim_end(),
            s.color
        );
        let ly = TOP + 16.0 + 18.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="{3}" stroke-width="2"/><text x="{4}" y="{5}" font-family="sans-serif" font-size="12">{6}</text>"#,
            fx(LEFT + pw - 150.0),
            fx(ly),
            fx(LEFT + pw - 125.0),
            s.color,
            fx(LEFT + pw - 120.0),
            fx(ly + 4.0),
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_layout() {
        let s = Series { label: "x".into(), color: "red", points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, f64::NAN), (2.0, 0.5)] };
        let a = chart("t<1>", &[s]);
        assert!(a.contains(r#"viewBox="0 0 800 500""#));
        assert!(a.contains("t&lt;1&gt;"));
        assert_eq!(a.matches(" M").count() + a.matches("\"M").count(), 2);
    }
}
