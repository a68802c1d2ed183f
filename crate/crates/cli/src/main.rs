use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use leaper_core::board::{decompose_center_board, graph_over, Board};
use leaper_core::descent::{cycle_type_table, descent_of, ecf_of_descent, Descent, LiftKind};
use leaper_core::direction::labels_to_string;
use leaper_core::frames::canonical_second_cycle;
use leaper_core::io::{board_from_json, board_to_json, cycle_from_json, cycle_to_json, graph_to_json};
use leaper_core::perfect::{build_dual_board, check_perfect, perfect_cycle};
use leaper_core::pinwheel::{build_pinwheel, verify_pinwheel_dual, PinwheelSpec};
use leaper_core::signature::{fundamental_cycle, second_fundamental, signature_of_descent};
use leaper_core::suite::{run_suite_with, Bounds};
use leaper_core::svg::{render_svg, Overlay, RenderSpec};
use leaper_core::{Leaper, Square};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const CYCLE_STROKE: &str = "#c00000";
const SECOND_STROKE: &str = "#0050c0";

#[derive(Parser)]
#[command(name = "leapers", about = "Leaper cycles, second leapers, dual boards and pinwheel boards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Also write an SVG drawing to this file.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    /// Pixels per square in the SVG.
    #[arg(long, default_value_t = 24)]
    cell: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Descent, even continued fraction and cycle types of a (p, q)-leaper.
    Analyze { p: i64, q: i64, #[command(flatten)] out: Output },
    /// Cycles of the leaper on the central (p+q)×(p+q) board.
    Cycles { p: i64, q: i64, #[command(flatten)] out: Output },
    /// A perfect cycle D^M_o(e) of the (r, s)-leaper and its perfection report.
    Lift {
        r: i64,
        s: i64,
        #[arg(long, default_value = "h")]
        origin: char,
        #[arg(long = "seed-descent", alias = "descent", default_value = "")]
        seed_descent: String,
        #[command(flatten)]
        out: Output,
    },
    /// Canonical second leaper cycles over every cycle of the central board.
    SecondLeaper { p: i64, q: i64, #[command(flatten)] out: Output },
    /// The board B^M_o(e), dual with respect to the (r, s)-leaper M and L.
    Dualboard {
        r: i64,
        s: i64,
        #[arg(long, default_value = "h")]
        origin: char,
        #[arg(long = "seed-descent", alias = "descent", default_value = "")]
        seed_descent: String,
        #[command(flatten)]
        out: Output,
    },
    /// The pinwheel board of order n for the (p, q)-leaper.
    Pinwheel {
        n: i64,
        p: i64,
        q: i64,
        #[arg(long, default_value_t = 0)]
        margin: i64,
        #[arg(long)]
        augmented: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Fundamental direction cycle of a descent, or, with --origin, its second fundamental cycle.
    Dirgraph {
        #[arg(long = "seed-descent", alias = "descent", default_value = "")]
        seed_descent: String,
        #[arg(long)]
        origin: Option<char>,
        #[command(flatten)]
        out: Output,
    },
    /// Run an invariant sweep; prints one JSON line per case and exits nonzero on failure.
    Verify {
        suite: String,
        #[arg(long)]
        max_sum: Option<i64>,
        #[arg(long)]
        max_len: Option<usize>,
        /// Print only failing cases and the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Draw a board from JSON with optional cycle overlays.
    Render {
        /// Board JSON file.
        board: PathBuf,
        /// Cycle JSON files to overlay.
        #[arg(long = "cycle")]
        cycles: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        svg: PathBuf,
        #[arg(long, default_value_t = 24)]
        cell: i64,
        #[arg(long)]
        no_grid: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn lift_kind(c: char) -> Result<LiftKind> {
    LiftKind::from_symbol(c).map_err(|e| anyhow::anyhow!("{e}"))
}

fn parse_descent(s: &str) -> Result<Descent> {
    s.parse().map_err(|e| anyhow::anyhow!("{e}"))
}

fn squares_json(squares: &[Square]) -> Value {
    serde_json::from_str(&cycle_to_json(squares)).expect("valid JSON")
}

fn emit(out: &Output, value: Value, text: String) {
    if out.json {
        println!("{value}");
    } else {
        print!("{text}");
    }
}

fn write_svg(out: &Output, board: &Board, overlays: Vec<Overlay>) -> Result<()> {
    if let Some(path) = &out.svg {
        let spec = RenderSpec { cell_px: out.cell, overlays, show_grid: true };
        let svg = render_svg(board, &spec)?;
        std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cycle_overlay(squares: Vec<Square>, stroke: &str) -> Overlay {
    Overlay::Cycle { squares, stroke: stroke.to_string() }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { p, q, out } => {
            let e = descent_of(p, q)?;
            let ecf = ecf_of_descent(&e)?;
            let table = cycle_type_table(p, q)?;
            let mut text = format!("leaper ({p}, {q})\ndescent {}\necf {ecf}\nisolated {}\n", if e.is_empty() { "(empty)".into() } else { e.to_string() }, (q - p).pow(2));
            for r in &table {
                text += &format!(
                    "type {}: {} cycles of length {} (l = {}, d = {}), second leaper {}{}\n",
                    r.index,
                    r.count,
                    r.length,
                    r.l,
                    r.d,
                    r.second_leaper,
                    if r.third_leaper { ", third leaper (1, 2)" } else { "" }
                );
            }
            let value = json!({"leaper": [p, q], "descent": e.to_string(), "ecf": ecf.to_string(), "isolated": (q - p).pow(2), "types": table});
            emit(&out, value, text);
            write_svg(&out, &Board::centered(p + q), Vec::new())?;
        }
        Command::Cycles { p, q, out } => {
            let l = Leaper::new(p, q)?;
            let dec = decompose_center_board(l)?;
            let mut text = format!("{} isolated squares, {} cycles\n", dec.isolated.len(), dec.cycles.len());
            for c in &dec.cycles {
                text += &format!("{}\n", cycle_to_json(c));
            }
            let value = json!({"coords": "doubled", "isolated": squares_json(&dec.isolated.iter().copied().collect::<Vec<_>>()), "cycles": dec.cycles.iter().map(|c| squares_json(c)).collect::<Vec<_>>()});
            emit(&out, value, text);
            let overlays = dec.cycles.iter().map(|c| cycle_overlay(c.clone(), CYCLE_STROKE)).collect();
            write_svg(&out, &Board::centered(p + q), overlays)?;
        }
        Command::Lift { r, s, origin, seed_descent, out } => {
            let e = parse_descent(&seed_descent)?;
            let d = perfect_cycle(Leaper::new(r, s)?, lift_kind(origin)?, &e)?;
            let report = check_perfect(&d);
            let text = format!(
                "perfect cycle of {} with params ({}, {}), {} squares\nperfect: {}\n{}\n",
                d.leaper,
                d.params.0,
                d.params.1,
                d.len(),
                report.is_perfect(),
                cycle_to_json(&d.squares())
            );
            let value = json!({"leaper": d.leaper, "params": [d.params.0, d.params.1], "paths": d.paths.iter().map(|p| squares_json(p)).collect::<Vec<_>>(), "report": report, "perfect": report.is_perfect()});
            emit(&out, value, text);
            write_svg(&out, &Board::from_squares(d.squares())?, vec![cycle_overlay(d.squares(), SECOND_STROKE)])?;
        }
        Command::SecondLeaper { p, q, out } => {
            let l = Leaper::new(p, q)?;
            let dec = decompose_center_board(l)?;
            let mut text = String::new();
            let mut items = Vec::new();
            let mut overlays = Vec::new();
            for c in &dec.cycles {
                let (m, d) = canonical_second_cycle(l.p(), l.q(), c)?;
                text += &format!("cycle of length {}: second leaper {m}\n{}\n", c.len(), cycle_to_json(&d.squares()));
                items.push(json!({"length": c.len(), "second_leaper": m, "cycle": squares_json(c), "second_cycle": squares_json(&d.squares())}));
                overlays.push(cycle_overlay(d.squares(), SECOND_STROKE));
            }
            emit(&out, json!({"leaper": l, "cycles": items}), text);
            write_svg(&out, &Board::centered(l.p() + l.q()), overlays)?;
        }
        Command::Dualboard { r, s, origin, seed_descent, out } => {
            let e = parse_descent(&seed_descent)?;
            let b = build_dual_board(Leaper::new(r, s)?, lift_kind(origin)?, &e)?;
            let dual = leaper_core::duality::verify_dual_board(&b.board, b.l, b.m, None)?;
            let text = format!("board of {} squares, dual with respect to {} and {}: {dual}\n{}\n", b.board.len(), b.m, b.l, board_to_json(&b.board));
            let board: Value = serde_json::from_str(&board_to_json(&b.board))?;
            let value = json!({"m": b.m, "l": b.l, "dual": dual, "board": board, "l_cycle": squares_json(&b.l_cycle), "m_cycle": squares_json(&b.m_cycle.squares())});
            emit(&out, value, text);
            write_svg(&out, &b.board, vec![cycle_overlay(b.m_cycle.squares(), SECOND_STROKE), cycle_overlay(b.l_cycle.clone(), CYCLE_STROKE)])?;
        }
        Command::Pinwheel { n, p, q, margin, augmented, out } => {
            let mut spec = PinwheelSpec::new(n, p, q).with_margin(margin);
            if augmented {
                spec = spec.augmented();
            }
            let w = build_pinwheel(spec)?;
            let report = verify_pinwheel_dual(spec)?;
            let text = format!(
                "pinwheel board of order {n}, margin {margin}: {} squares, dual with respect to {} and {}: {}\n{}\n",
                report.squares,
                report.l,
                report.m,
                report.dual,
                board_to_json(&w.board())
            );
            let board: Value = serde_json::from_str(&board_to_json(&w.board()))?;
            emit(&out, json!({"report": report, "board": board}), text);
            let edges = |l: Leaper| graph_over(l, &w.squares()).edges();
            let overlays = vec![
                Overlay::Edges { pairs: edges(report.l), stroke: CYCLE_STROKE.into() },
                Overlay::Edges { pairs: edges(report.m), stroke: SECOND_STROKE.into() },
            ];
            write_svg(&out, &w.board(), overlays)?;
        }
        Command::Dirgraph { seed_descent, origin, out } => {
            let e = parse_descent(&seed_descent)?;
            let g = match origin {
                Some(o) => second_fundamental(lift_kind(o)?, &e).context("no second fundamental cycle for this origin")?,
                None => fundamental_cycle(&e),
            };
            let labels = g.cycle_labels().map(|l| labels_to_string(&l)).unwrap_or_default();
            let text = format!("signature {}\nlabels {labels}\n", signature_of_descent(&e));
            let graph: Value = serde_json::from_str(&graph_to_json(&g))?;
            emit(&out, json!({"descent": e.to_string(), "labels": labels, "graph": graph}), text);
            if out.svg.is_some() {
                bail!("direction graphs have no board to draw");
            }
        }
        Command::Verify { suite, max_sum, max_len, quiet } => {
            let bounds = Bounds { max_sum, max_len };
            let result = run_suite_with(&suite, bounds, |o| {
                if !quiet || !o.ok {
                    println!("{}", serde_json::to_string(o).expect("outcome serializes"));
                }
            })?;
            println!("{}", json!({"suite": result.suite, "cases": result.cases, "failures": result.failures.len()}));
            return Ok(if result.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Render { board, cycles, svg, cell, no_grid } => {
            let b = board_from_json(&std::fs::read_to_string(&board).with_context(|| format!("reading {}", board.display()))?)?;
            let mut overlays = Vec::new();
            for path in &cycles {
                let c = cycle_from_json(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?;
                overlays.push(cycle_overlay(c, CYCLE_STROKE));
            }
            let text = render_svg(&b, &RenderSpec { cell_px: cell, overlays, show_grid: !no_grid })?;
            std::fs::write(&svg, text).with_context(|| format!("writing {}", svg.display()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(["leapers", "dualboard", "0", "1", "--origin", "h", "--seed-descent", "hħ", "--json"]).unwrap();
        assert!(matches!(cli.command, Command::Dualboard { r: 0, s: 1, origin: 'h', .. }));
        let cli = Cli::try_parse_from(["leapers", "verify", "knuth", "--max-sum", "7"]).unwrap();
        assert!(matches!(cli.command, Command::Verify { max_sum: Some(7), .. }));
    }
}
