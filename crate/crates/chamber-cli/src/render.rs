//! Schematic renderers: a fixed-width text grid and a static SVG, one
//! column per chamber with disc markers between columns.

use chamber_index::catalog::{Piece, Side};
use chamber_index::link::ChamberLink;

fn piece_glyph(piece: &Piece) -> String {
    match piece {
        Piece::Clasp { kind, .. } => format!("[{}]", kind.label()),
        Piece::Span { .. } => "---".to_string(),
        Piece::Turn {
            side: Side::Bottom, ..
        } => "\\_/".to_string(),
        Piece::Turn { side: Side::Top, .. } => "/^\\".to_string(),
        Piece::Circle => "(o)".to_string(),
    }
}

/// Deterministic text schematic: a header with disc counts, then one
/// column block per chamber between `|` disc markers, one glyph per
/// piece ([W]/[S]/[A] clasps, `---` spans, turn-back hooks, circles).
pub fn render_ascii(link: &ChamberLink) -> String {
    let counts: Vec<usize> = (0..link.chamber_count())
        .map(|d| link.chambers()[d].top_count())
        .collect();
    let mut out = String::new();
    out.push_str("discs: ");
    out.push_str(
        &counts
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');

    let rows = link
        .chambers()
        .iter()
        .map(|c| c.pieces().len())
        .max()
        .unwrap_or(0)
        .max(1);
    let rule = format!("+{}", "-----+".repeat(link.chamber_count()));
    out.push_str(&rule);
    out.push('\n');
    for row in 0..rows {
        out.push('|');
        for chamber in link.chambers() {
            let cell = chamber
                .pieces()
                .get(row)
                .map(piece_glyph)
                .unwrap_or_default();
            out.push_str(&format!(" {cell:<3} |"));
        }
        out.push('\n');
    }
    out.push_str(&rule);
    out.push('\n');
    out
}

const COLUMN_WIDTH: i64 = 90;
const ROW_HEIGHT: i64 = 26;
const HEADER_HEIGHT: i64 = 34;

fn piece_label(piece: &Piece) -> String {
    match piece {
        Piece::Clasp {
            kind,
            top_pair,
            bottom_pair,
        } => format!(
            "{} t({},{}) b({},{})",
            kind.label(),
            top_pair.0,
            top_pair.1,
            bottom_pair.0,
            bottom_pair.1
        ),
        Piece::Span { bottom, top } => format!("span {bottom}-{top}"),
        Piece::Turn { side, pair } => format!(
            "turn {} ({},{})",
            match side {
                Side::Bottom => "b",
                Side::Top => "t",
            },
            pair.0,
            pair.1
        ),
        Piece::Circle => "circle".to_string(),
    }
}

/// Static SVG 1.1 schematic with the same column layout as the text
/// renderer.
pub fn render_svg(link: &ChamberLink) -> String {
    let m = link.chamber_count() as i64;
    let rows = link
        .chambers()
        .iter()
        .map(|c| c.pieces().len())
        .max()
        .unwrap_or(0)
        .max(1) as i64;
    let width = m * COLUMN_WIDTH + 2;
    let height = HEADER_HEIGHT + rows * ROW_HEIGHT + 10;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("  <style>text { font-family: monospace; font-size: 11px; }</style>\n");
    for (i, chamber) in link.chambers().iter().enumerate() {
        let x = i as i64 * COLUMN_WIDTH + 1;
        out.push_str(&format!(
            "  <rect x=\"{x}\" y=\"{HEADER_HEIGHT}\" width=\"{COLUMN_WIDTH}\" height=\"{}\" fill=\"none\" stroke=\"#888\"/>\n",
            rows * ROW_HEIGHT
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">chamber {i}</text>\n",
            x + COLUMN_WIDTH / 2,
            HEADER_HEIGHT - 20
        ));
        let disc = i;
        let count = chamber.top_count();
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">disc {disc}: {count}</text>\n",
            x + COLUMN_WIDTH,
            HEADER_HEIGHT - 6
        ));
        out.push_str(&format!(
            "  <line x1=\"{0}\" y1=\"{HEADER_HEIGHT}\" x2=\"{0}\" y2=\"{1}\" stroke=\"#222\" stroke-width=\"2\"/>\n",
            x + COLUMN_WIDTH,
            HEADER_HEIGHT + rows * ROW_HEIGHT
        ));
        for (row, piece) in chamber.pieces().iter().enumerate() {
            let y = HEADER_HEIGHT + row as i64 * ROW_HEIGHT + 17;
            out.push_str(&format!(
                "  <text x=\"{}\" y=\"{y}\" text-anchor=\"middle\">{}</text>\n",
                x + COLUMN_WIDTH / 2,
                piece_label(piece)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}
