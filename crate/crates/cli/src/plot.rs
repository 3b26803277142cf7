use std::fmt::Write as _;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 300.0;
const MARGIN: f64 = 40.0;

/// `n,letter` rows under a header.
pub fn csv(values: &[usize]) -> String {
    let mut out = String::from("n,letter\n");
    for (n, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{n},{v}");
    }
    out
}

/// A step plot of `n -> letter`, one horizontal segment per term.
pub fn svg(values: &[usize], title: &str) -> String {
    let n = values.len().max(1) as f64;
    let top = values.iter().copied().max().unwrap_or(0).max(1) as f64;
    let x = |k: f64| MARGIN + k * (WIDTH - 2.0 * MARGIN) / n;
    let y = |v: f64| HEIGHT - MARGIN - v * (HEIGHT - 2.0 * MARGIN) / top;

    let mut points = String::new();
    for (k, &v) in values.iter().enumerate() {
        let (x0, x1, yv) = (x(k as f64), x(k as f64 + 1.0), y(v as f64));
        let _ = write!(points, "{x0:.2},{yv:.2} {x1:.2},{yv:.2} ");
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{:.0}" font-family="sans-serif" font-size="14">{}</text>"#,
        MARGIN / 2.0,
        escape(title)
    );
    let (x0, x1, y0, y1) = (x(0.0), x(n), y(0.0), y(top));
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.2},{y1:.2} L{x0:.2},{y0:.2} L{x1:.2},{y0:.2}" stroke="black" fill="none"/>"#
    );
    for v in 0..=top as usize {
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="end">{v}</text>"#,
            x0 - 6.0,
            y(v as f64) + 3.0
        );
    }
    let _ = writeln!(
        out,
        r#"<polyline points="{}" stroke="steelblue" stroke-width="1.5" fill="none"/>"#,
        points.trim_end()
    );
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
