//! CSV and SVG output for grid scans.

use std::fmt::Write;

pub fn csv(rows: &[(u64, u64)]) -> String {
    let mut out = String::with_capacity(12 * rows.len() + 4);
    out.push_str("d,n\n");
    for (d, n) in rows {
        writeln!(out, "{d},{n}").expect("writing to a String");
    }
    out
}

const VIEW: u64 = 1000;
const MARGIN: u64 = 60;

/// Position of `v` in `1..=max` along an axis of `VIEW - 2 MARGIN` pixels,
/// in hundredths of a pixel so the output is exact.
fn scale(v: u64, max: u64) -> u64 {
    let span = (VIEW - 2 * MARGIN) * 100;
    if max <= 1 {
        return 0;
    }
    (v - 1) * span / (max - 1)
}

fn px(hundredths: u64) -> String {
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

/// Scatter plot with `d` across and `n` upward, one 2px square per row.
pub fn svg(rows: &[(u64, u64)], d_max: u64, n_max: u64) -> String {
    let mut out = String::new();
    let lo = MARGIN;
    let hi = VIEW - MARGIN;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW} {VIEW}" width="{VIEW}" height="{VIEW}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{VIEW}" height="{VIEW}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<line x1="{lo}" y1="{hi}" x2="{hi}" y2="{hi}" stroke="black"/>"#).unwrap();
    writeln!(out, r#"<line x1="{lo}" y1="{lo}" x2="{lo}" y2="{hi}" stroke="black"/>"#).unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="20" text-anchor="middle">d (1 to {d_max})</text>"#,
        VIEW / 2,
        VIEW - MARGIN / 3
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="20" text-anchor="middle" transform="rotate(-90 {} {})">n (1 to {n_max})</text>"#,
        MARGIN / 2,
        VIEW / 2,
        MARGIN / 2,
        VIEW / 2
    )
    .unwrap();
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for &(d, n) in rows {
        // centre the square on the grid point; y grows downward in SVG
        let x = lo * 100 + scale(d, d_max) - 100;
        let y = hi * 100 - scale(n, n_max) - 100;
        writeln!(out, r#"<rect x="{}" y="{}" width="2" height="2"/>"#, px(x), px(y)).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        assert_eq!(csv(&[]), "d,n\n");
        assert_eq!(csv(&[(2, 1), (6, 2)]), "d,n\n2,1\n6,2\n");
    }

    #[test]
    fn svg_marks_every_row() {
        let s = svg(&[(1, 1), (10, 10)], 10, 10);
        assert!(s.contains(r#"viewBox="0 0 1000 1000""#));
        assert_eq!(s.matches(r#"width="2" height="2""#).count(), 2);
        // corners of the plot area
        assert!(s.contains(r#"<rect x="59.00" y="939.00" width="2" height="2"/>"#));
        assert!(s.contains(r#"<rect x="939.00" y="59.00" width="2" height="2"/>"#));
    }
}
