//! Leaper graphs over square boards: cycle decomposition of the central board,
//! lifting transformations and second leapers, direction graphs and signatures,
//! perfect cycles and dual boards, pinwheel boards.

pub mod board;
pub mod descent;
pub mod direction;
pub mod duality;
pub mod frames;
pub mod geometry;
pub mod io;
pub mod perfect;
pub mod pinwheel;
pub mod signature;
pub mod suite;
pub mod svg;

pub use geometry::{Leaper, Mat2, Section, Square, Translation};
