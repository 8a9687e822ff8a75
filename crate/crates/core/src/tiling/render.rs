use std::fmt::Write;

use super::Patch;

const DIGITS: usize = 20;

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
];

/// One line `type:[left,right)` per tile, space separated; types 1-based.
pub fn render_text(patch: &Patch) -> String {
    patch
        .tiles
        .iter()
        .map(|t| {
            format!(
                "{}:[{},{})",
                t.kind + 1,
                t.left.to_decimal(DIGITS),
                t.right.to_decimal(DIGITS)
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Interval bars colored by type.
pub fn render_svg(patch: &Patch) -> String {
    let mut out = String::new();
    let Some((lo, hi)) = patch.support() else {
        out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"0\" height=\"0\"/>\n");
        return out;
    };
    let width = 1000.0;
    let (a, b) = (lo.to_f64(), hi.to_f64());
    let scale = if b > a { width / (b - a) } else { 1.0 };
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"60\" viewBox=\"0 0 {} 60\">",
        width + 20.0,
        width + 20.0
    );
    for t in &patch.tiles {
        let x = 10.0 + (t.left.to_f64() - a) * scale;
        let w = (t.right.to_f64() - t.left.to_f64()) * scale;
        let _ = writeln!(
            out,
            "  <rect class=\"tile\" x=\"{x:.4}\" y=\"10\" width=\"{w:.4}\" height=\"30\" fill=\"{}\" stroke=\"#000\" stroke-width=\"0.5\"><title>{}</title></rect>",
            PALETTE[t.kind % PALETTE.len()],
            t.kind + 1
        );
    }
    out.push_str("</svg>\n");
    out
}
