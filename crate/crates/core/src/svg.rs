//! Deterministic SVG drawings of boards with cycle and edge overlays, y axis pointing up.

use crate::board::{decompose_center_board, graph_over, Board};
use crate::frames::canonical_second_cycle;
use crate::geometry::{Leaper, Square};
use crate::pinwheel::{build_pinwheel, PinwheelSpec};
use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("cannot render an empty board")]
    EmptyBoard,
    #[error("cell size {0} is below the minimum of 4 pixels")]
    CellTooSmall(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Overlay {
    /// A closed polyline through the square centers.
    Cycle { squares: Vec<Square>, stroke: String },
    /// One segment per pair, e.g. a whole leaper graph.
    Edges { pairs: Vec<(Square, Square)>, stroke: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub cell_px: i64,
    pub overlays: Vec<Overlay>,
    pub show_grid: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { cell_px: 24, overlays: Vec::new(), show_grid: true }
    }
}

/// `v / 2` written exactly.
fn half(v: i64) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{}{}.5", if v < 0 { "-" } else { "" }, (v / 2).abs())
    }
}

pub fn render_svg(board: &Board, spec: &RenderSpec) -> Result<String, RenderError> {
    if board.is_empty() {
        return Err(RenderError::EmptyBoard);
    }
    if spec.cell_px < 4 {
        return Err(RenderError::CellTooSmall(spec.cell_px));
    }
    let c = spec.cell_px;
    // Doubled pixel coordinates of a center: (x2·c, −y2·c) / 2.
    let px = |s: Square| (s.x2 * c, -s.y2 * c);
    let squares = board.squares();
    let min_x = squares.iter().map(|s| s.x2).min().unwrap() - 1;
    let max_x = squares.iter().map(|s| s.x2).max().unwrap() + 1;
    let min_y = squares.iter().map(|s| s.y2).min().unwrap() - 1;
    let max_y = squares.iter().map(|s| s.y2).max().unwrap() + 1;
    let (left, top) = (min_x * c, -max_y * c);
    let (width, height) = ((max_x - min_x) * c, (max_y - min_y) * c);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        half(left),
        half(top),
        half(width),
        half(height),
        half(width),
        half(height)
    )
    .unwrap();
    let (px0, py0) = board.parity();
    let stroke = if spec.show_grid { r##" stroke="#888888" stroke-width="1""## } else { "" };
    for &s in squares {
        let (x, y) = px(s);
        let dark = ((s.x2 - px0 as i64) / 2 + (s.y2 - py0 as i64) / 2).rem_euclid(2) == 0;
        let fill = if dark { "#d9d9d9" } else { "#ffffff" };
        writeln!(
            out,
            r#"<rect x="{}" y="{}" width="{c}" height="{c}" fill="{fill}"{stroke}/>"#,
            half(x - c),
            half(y - c)
        )
        .unwrap();
    }
    for overlay in &spec.overlays {
        match overlay {
            Overlay::Cycle { squares, stroke } => {
                let points: Vec<String> = squares
                    .iter()
                    .chain(squares.first())
                    .map(|&s| {
                        let (x, y) = px(s);
                        format!("{},{}", half(x), half(y))
                    })
                    .collect();
                writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="2"/>"#,
                    points.join(" ")
                )
                .unwrap();
            }
            Overlay::Edges { pairs, stroke } => {
                let mut sorted: Vec<(Square, Square)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
                sorted.sort();
                sorted.dedup();
                for (a, b) in sorted {
                    let ((x1, y1), (x2, y2)) = (px(a), px(b));
                    writeln!(
                        out,
                        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="2"/>"#,
                        half(x1),
                        half(y1),
                        half(x2),
                        half(y2)
                    )
                    .unwrap();
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// File names of the reference figures kept under version control.
pub const FIGURES: [&str; 3] = ["knight-3x3.svg", "two-three-5x5.svg", "pinwheel-4-1-2.svg"];

const FIRST: &str = "#c00000";
const SECOND: &str = "#0050c0";

/// The knight ring on 3×3; the (2,3) cycles on 5×5 with their second leaper cycles;
/// W_4(1,2) with the (1,2) and (2,17) leaper graphs.
pub fn reference_figure(name: &str) -> Option<String> {
    let (board, overlays) = match name {
        "knight-3x3.svg" => {
            let cycles = decompose_center_board(Leaper::of(1, 2)).ok()?.cycles;
            (Board::centered(3), cycles.into_iter().map(|c| Overlay::Cycle { squares: c, stroke: FIRST.into() }).collect())
        }
        "two-three-5x5.svg" => {
            let cycles = decompose_center_board(Leaper::of(2, 3)).ok()?.cycles;
            let mut overlays = Vec::new();
            for c in cycles {
                let (_, d) = canonical_second_cycle(2, 3, &c).ok()?;
                overlays.push(Overlay::Cycle { squares: c, stroke: FIRST.into() });
                overlays.push(Overlay::Cycle { squares: d.squares(), stroke: SECOND.into() });
            }
            (Board::centered(5), overlays)
        }
        "pinwheel-4-1-2.svg" => {
            let spec = PinwheelSpec::new(4, 1, 2);
            let w = build_pinwheel(spec).ok()?;
            let squares = w.squares();
            let edges = |l: Leaper| graph_over(l, &squares).edges();
            let overlays = vec![
                Overlay::Edges { pairs: edges(spec.leaper()), stroke: FIRST.into() },
                Overlay::Edges { pairs: edges(spec.partner()), stroke: SECOND.into() },
            ];
            (w.board(), overlays)
        }
        _ => return None,
    };
    render_svg(&board, &RenderSpec { overlays, ..Default::default() }).ok()
}
