//! JSON forms of boards, cycles and direction graphs. Every coordinate is doubled, and
//! boards and wrapped cycles say so with a "coords":"doubled" tag.

use crate::board::{Board, BoardError};
use crate::direction::{DirectionError, DirectionGraph};
use crate::geometry::Square;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported coordinate convention {0:?}; expected \"doubled\"")]
    Coords(String),
    #[error("declared parity {declared:?} does not match the squares")]
    Parity { declared: (u8, u8) },
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Direction(#[from] DirectionError),
}

const DOUBLED: &str = "doubled";

#[derive(Serialize, Deserialize)]
struct BoardDto {
    coords: String,
    parity: [u8; 2],
    squares: Vec<Square>,
}

#[derive(Serialize, Deserialize)]
struct CycleDto {
    coords: String,
    cycle: Vec<Square>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CycleInput {
    Bare(Vec<Square>),
    Wrapped(CycleDto),
}

fn check_coords(c: &str) -> Result<(), IoError> {
    if c == DOUBLED {
        Ok(())
    } else {
        Err(IoError::Coords(c.to_string()))
    }
}

/// Squares are written in ascending order.
pub fn board_to_json(board: &Board) -> String {
    let (a, b) = board.parity();
    let dto = BoardDto { coords: DOUBLED.into(), parity: [a, b], squares: board.squares().iter().copied().collect() };
    serde_json::to_string(&dto).expect("board serializes")
}

pub fn board_from_json(text: &str) -> Result<Board, IoError> {
    let dto: BoardDto = serde_json::from_str(text)?;
    check_coords(&dto.coords)?;
    let declared = (dto.parity[0], dto.parity[1]);
    if declared.0 > 1 || declared.1 > 1 {
        return Err(IoError::Parity { declared });
    }
    Board::with_parity(declared, dto.squares.into_iter().collect()).map_err(|e| match e {
        BoardError::MixedParity { .. } => IoError::Parity { declared },
        other => IoError::Board(other),
    })
}

/// A bare array of doubled pairs in traversal order.
pub fn cycle_to_json(cycle: &[Square]) -> String {
    serde_json::to_string(cycle).expect("cycle serializes")
}

/// Accepts a bare array or {"coords":"doubled","cycle":[...]}.
pub fn cycle_from_json(text: &str) -> Result<Vec<Square>, IoError> {
    match serde_json::from_str::<CycleInput>(text)? {
        CycleInput::Bare(c) => Ok(c),
        CycleInput::Wrapped(dto) => {
            check_coords(&dto.coords)?;
            Ok(dto.cycle)
        }
    }
}

/// {"vertices": n, "arcs": [[from, to, label], ...]}.
pub fn graph_to_json(g: &DirectionGraph) -> String {
    serde_json::to_string(g).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<DirectionGraph, IoError> {
    let raw: DirectionGraph = serde_json::from_str(text)?;
    Ok(DirectionGraph::new(raw.vertices, raw.arcs)?)
}
