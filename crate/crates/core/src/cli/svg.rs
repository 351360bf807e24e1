use std::fmt::Write;

use crate::rational::Rational;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 40.0;
const Y_TICKS: i64 = 4;

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Scatter plot of `(index, value)` with exact rational labels on the value
/// axis.
pub fn scatter(title: &str, values: &[Rational]) -> String {
    let lo = values.iter().min().cloned().unwrap_or_else(Rational::zero);
    let hi = values.iter().max().cloned().unwrap_or_else(Rational::one);
    let (lo, hi) = if lo == hi {
        (&lo - &Rational::one(), &hi + &Rational::one())
    } else {
        (lo, hi)
    };
    let span = &hi - &lo;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |k: usize| LEFT + plot_w * (k as f64 + 0.5) / values.len().max(1) as f64;
    let y_of = |v: &Rational| {
        let frac = (v - &lo)
            .checked_div(&span)
            .expect("non-empty span")
            .to_f64();
        TOP + plot_h * (1.0 - frac)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="18" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(
        out,
        r#"<path d="M{x0} {y0} L{x0} {y1} L{x1} {y1}" fill="none" stroke="black"/>"#
    );
    for t in 0..=Y_TICKS {
        let v = &lo + &(&span * &Rational::ratio(t, Y_TICKS).expect("nonzero"));
        let y = y_of(&v);
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{y:.2}" x2="{x0}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            x0 - 4.0,
            x0 - 7.0,
            y + 4.0,
            escape(&v.to_string())
        );
    }
    let x_step = (values.len() / 5).max(1);
    for k in (0..values.len()).step_by(x_step) {
        let x = x_of(k);
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{y1}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{k}</text>"#,
            y1 + 4.0,
            y1 + 17.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">index</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 4.0
    );
    for (k, v) in values.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="steelblue"><title>{k}: {}</title></circle>"#,
            x_of(k),
            y_of(v),
            escape(&v.to_string())
        );
    }
    out.push_str("</svg>\n");
    out
}
