//! Boards, leaper graphs, freeness and the cycle decomposition of the central board.

use crate::descent::{cycle_type_table, DescentError};
use crate::geometry::{Leaper, Square};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoardError {
    #[error("square {square} does not match board parity {parity:?}")]
    MixedParity { square: Square, parity: (u8, u8) },
    #[error("board is empty")]
    EmptyBoard,
    #[error("leaper {0} is not skew")]
    NotSkew(Leaper),
    #[error("square {square} has degree {degree}, expected {expected}")]
    DegreeViolation { square: Square, degree: usize, expected: usize },
    #[error("cycle class of length {length} and size {size} matches no cycle type")]
    UnmatchedClass { length: usize, size: usize },
    #[error(transparent)]
    Descent(#[from] DescentError),
}

/// A finite family of unit cells related by integer translations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Board {
    parity: (u8, u8),
    squares: BTreeSet<Square>,
}

impl Board {
    pub fn from_squares<I: IntoIterator<Item = Square>>(squares: I) -> Result<Self, BoardError> {
        let squares: BTreeSet<Square> = squares.into_iter().collect();
        let parity = squares.iter().next().ok_or(BoardError::EmptyBoard)?.parity();
        Self::with_parity(parity, squares)
    }

    pub fn with_parity(parity: (u8, u8), squares: BTreeSet<Square>) -> Result<Self, BoardError> {
        if let Some(&square) = squares.iter().find(|s| s.parity() != parity) {
            return Err(BoardError::MixedParity { square, parity });
        }
        Ok(Board { parity, squares })
    }

    /// A w×h rectangle with its lower-left square at the origin.
    pub fn rectangle(width: i64, height: i64) -> Self {
        let squares = (0..width)
            .flat_map(|i| (0..height).map(move |j| Square::at(i, j)))
            .collect();
        Board { parity: (0, 0), squares }
    }

    /// The n×n board centered at the origin.
    pub fn centered(n: i64) -> Self {
        let coords: Vec<i64> = (0..n).map(|i| 2 * i - (n - 1)).collect();
        let squares = coords
            .iter()
            .flat_map(|&x| coords.iter().map(move |&y| Square::new(x, y)))
            .collect();
        let par = ((n - 1).rem_euclid(2)) as u8;
        Board { parity: (par, par), squares }
    }

    pub fn parity(&self) -> (u8, u8) {
        self.parity
    }

    pub fn squares(&self) -> &BTreeSet<Square> {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn contains(&self, s: Square) -> bool {
        self.squares.contains(&s)
    }
}

/// The distinct squares reachable by one move, board-independent.
pub fn move_targets(leaper: Leaper, a: Square) -> Vec<Square> {
    leaper.translations().into_iter().map(|t| a + t).collect()
}

/// A leaper graph; adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaperGraph {
    leaper: Leaper,
    board: Board,
    adjacency: BTreeMap<Square, Vec<Square>>,
}

pub fn build_leaper_graph(leaper: Leaper, board: &Board) -> LeaperGraph {
    let translations = leaper.translations();
    let adjacency = board
        .squares
        .iter()
        .map(|&a| {
            let mut nb: Vec<Square> =
                translations.iter().map(|&t| a + t).filter(|b| board.contains(*b)).collect();
            nb.sort();
            (a, nb)
        })
        .collect();
    LeaperGraph { leaper, board: board.clone(), adjacency }
}

/// Leaper graph over an arbitrary square set (parity is not checked).
pub fn graph_over(leaper: Leaper, squares: &BTreeSet<Square>) -> LeaperGraph {
    let board = Board { parity: squares.iter().next().map_or((0, 0), |s| s.parity()), squares: squares.clone() };
    build_leaper_graph(leaper, &board)
}

impl LeaperGraph {
    pub fn leaper(&self) -> Leaper {
        self.leaper
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn neighbors(&self, a: Square) -> &[Square] {
        self.adjacency.get(&a).map_or(&[], |v| v.as_slice())
    }

    pub fn degree(&self, a: Square) -> usize {
        self.neighbors(a).len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as ordered pairs (a, b) with a < b, sorted.
    pub fn edges(&self) -> Vec<(Square, Square)> {
        self.adjacency
            .iter()
            .flat_map(|(&a, nb)| nb.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn has_edge(&self, a: Square, b: Square) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Connected components, each sorted, in order of least square.
    pub fn components(&self) -> Vec<Vec<Square>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.adjacency.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &b in self.neighbors(a) {
                    if seen.insert(b) {
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The canonical traversal of the graph when it is a single cycle.
    pub fn as_single_cycle(&self) -> Option<Vec<Square>> {
        if self.vertex_count() < 3 || self.adjacency.values().any(|nb| nb.len() != 2) {
            return None;
        }
        let start = *self.adjacency.keys().next()?;
        let cycle = self.trace_from(start);
        (cycle.len() == self.vertex_count()).then_some(cycle)
    }

    /// Follows a degree-two component from `start` toward its lesser neighbor.
    fn trace_from(&self, start: Square) -> Vec<Square> {
        let mut cycle = vec![start];
        let mut prev = start;
        let mut cur = self.neighbors(start)[0];
        while cur != start {
            cycle.push(cur);
            let nb = self.neighbors(cur);
            let next = if nb[0] == prev { nb[1] } else { nb[0] };
            prev = cur;
            cur = next;
        }
        cycle
    }
}

/// Connectivity of the leaper graph over a nonempty board.
pub fn is_free(leaper: Leaper, board: &Board) -> bool {
    build_leaper_graph(leaper, board).is_connected()
}

/// Closed-form freeness over a width×height rectangle.
pub fn knuth_free_predicate(leaper: Leaper, width: i64, height: i64) -> bool {
    let (p, q) = (leaper.p(), leaper.q());
    leaper.is_basic() && width.min(height) >= p + q && width.max(height) >= 2 * q
}

/// Rotates a cycle to start at its least square and orients it toward the lesser neighbor.
pub fn canonical_cycle(cycle: &[Square]) -> Vec<Square> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&i| cycle[i]).unwrap();
    let next = cycle[(start + 1) % n];
    let prev = cycle[(start + n - 1) % n];
    if n < 3 || next <= prev {
        (0..n).map(|k| cycle[(start + k) % n]).collect()
    } else {
        (0..n).map(|k| cycle[(start + n - k) % n]).collect()
    }
}

/// Equality of cyclic sequences up to rotation and reversal.
pub fn same_cycle(a: &[Square], b: &[Square]) -> bool {
    a.len() == b.len() && canonical_cycle(a) == canonical_cycle(b)
}

/// Cycle decomposition of the centered (p+q)×(p+q) board.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub isolated: BTreeSet<Square>,
    pub cycles: Vec<Vec<Square>>,
}

/// Splits the central board into its isolated central block and degree-two cycles.
pub fn decompose_center_board(leaper: Leaper) -> Result<CycleDecomposition, BoardError> {
    if !leaper.is_skew() {
        return Err(BoardError::NotSkew(leaper));
    }
    let (p, q) = (leaper.p(), leaper.q());
    let graph = build_leaper_graph(leaper, &Board::centered(p + q));
    let half_hole = q - p;
    let mut isolated = BTreeSet::new();
    for (&a, nb) in &graph.adjacency {
        let central = a.x2.abs() < half_hole && a.y2.abs() < half_hole;
        let expected = if central { 0 } else { 2 };
        if nb.len() != expected {
            return Err(BoardError::DegreeViolation { square: a, degree: nb.len(), expected });
        }
        if central {
            isolated.insert(a);
        }
    }
    let mut seen = BTreeSet::new();
    let mut cycles = Vec::new();
    for &a in graph.adjacency.keys() {
        if isolated.contains(&a) || seen.contains(&a) {
            continue;
        }
        let cycle = graph.trace_from(a);
        seen.extend(cycle.iter().copied());
        cycles.push(cycle);
    }
    Ok(CycleDecomposition { isolated, cycles })
}

/// Translation-invariant shape of a square set.
fn shape_key(cycle: &[Square]) -> Vec<(i64, i64)> {
    let min = *cycle.iter().min().unwrap();
    let mut key: Vec<(i64, i64)> = cycle.iter().map(|&s| (s.x2 - min.x2, s.y2 - min.y2)).collect();
    key.sort();
    key
}

/// Groups the cycles into translation classes and matches each class to its type index.
pub fn classify_cycle_types(
    decomp: &CycleDecomposition,
    leaper: Leaper,
) -> Result<Vec<(usize, Vec<Vec<Square>>)>, BoardError> {
    let table = cycle_type_table(leaper.p(), leaper.q())?;
    let mut classes: BTreeMap<Vec<(i64, i64)>, Vec<Vec<Square>>> = BTreeMap::new();
    for c in &decomp.cycles {
        classes.entry(shape_key(c)).or_default().push(c.clone());
    }
    let mut typed: BTreeMap<usize, Vec<Vec<Square>>> = BTreeMap::new();
    for (key, members) in classes {
        let length = key.len();
        let record = table
            .iter()
            .find(|r| r.length as usize == length && r.count as usize == members.len())
            .filter(|r| !typed.contains_key(&r.index))
            .ok_or(BoardError::UnmatchedClass { length, size: members.len() })?;
        typed.insert(record.index, members);
    }
    if typed.len() != table.len() {
        let missing = table.iter().find(|r| !typed.contains_key(&r.index)).unwrap();
        return Err(BoardError::UnmatchedClass { length: missing.length as usize, size: 0 });
    }
    Ok(typed.into_iter().collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Rotation {
    Deg0,
    Deg45,
}

/// The basic leaper whose graph is a scaled (and possibly 45°-rotated) copy.
pub fn reduce_to_basic(p: i64, q: i64) -> Result<(Leaper, i64, Rotation), crate::geometry::InvalidLeaper> {
    let l = Leaper::new(p, q)?;
    let d = num_integer::gcd(l.p(), l.q());
    let (p1, q1) = (l.p() / d, l.q() / d);
    if (p1 + q1) % 2 == 1 {
        Ok((Leaper::of(p1, q1), d, Rotation::Deg0))
    } else {
        Ok((Leaper::new((q1 - p1) / 2, (p1 + q1) / 2)?, d, Rotation::Deg45))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq(x: i64, y: i64) -> Square {
        Square::new(x, y)
    }

    #[test]
    fn move_targets_examples() {
        let mut t = move_targets(Leaper::of(1, 2), sq(0, 0));
        t.sort();
        let mut want = vec![];
        for (a, b) in [(2, 4), (4, 2)] {
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                want.push(sq(sx * a, sy * b));
            }
        }
        want.sort();
        assert_eq!(t, want);
        assert_eq!(move_targets(Leaper::of(0, 1), sq(0, 0)).len(), 4);
        let mut d = move_targets(Leaper::of(1, 1), sq(2, 2));
        d.sort();
        assert_eq!(d, vec![sq(0, 0), sq(0, 4), sq(4, 0), sq(4, 4)]);
    }

    #[test]
    fn knight_on_three_by_three_is_one_eight_cycle() {
        let g = build_leaper_graph(Leaper::of(1, 2), &Board::centered(3));
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.degree(sq(0, 0)), 0);
        assert!(!is_free(Leaper::of(1, 2), &Board::centered(3)));
        assert_eq!(build_leaper_graph(Leaper::of(1, 2), &Board::centered(1)).edge_count(), 0);
        assert!(is_free(Leaper::of(1, 2), &Board::centered(1)));
        assert!(is_free(Leaper::of(1, 2), &Board::rectangle(3, 4)));
    }

    #[test]
    fn two_three_on_five_by_five() {
        let g = build_leaper_graph(Leaper::of(2, 3), &Board::centered(5));
        assert_eq!(g.edge_count(), 24);
        let d = decompose_center_board(Leaper::of(2, 3)).unwrap();
        let mut lens: Vec<usize> = d.cycles.iter().map(Vec::len).collect();
        lens.sort();
        assert_eq!(lens, vec![8, 16]);
        assert_eq!(d.isolated.len(), 1);
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_center_board(Leaper::of(1, 2)).unwrap();
        assert_eq!((d.isolated.len(), d.cycles.len(), d.cycles[0].len()), (1, 1, 8));
        // The (1, 2k) boards carry one cycle of length 8k, not 4k.
        let d = decompose_center_board(Leaper::of(1, 4)).unwrap();
        assert_eq!((d.isolated.len(), d.cycles.len(), d.cycles[0].len()), (9, 1, 16));
        let d = decompose_center_board(Leaper::of(1, 6)).unwrap();
        assert_eq!((d.cycles.len(), d.cycles[0].len()), (1, 24));
        assert!(decompose_center_board(Leaper::of(0, 1)).is_err());
    }

    #[test]
    fn classification_examples() {
        let l = Leaper::of(2, 3);
        let types = classify_cycle_types(&decompose_center_board(l).unwrap(), l).unwrap();
        assert_eq!(types.len(), 2);
        assert_eq!((types[0].0, types[0].1.len(), types[0].1[0].len()), (1, 1, 8));
        assert_eq!((types[1].0, types[1].1.len(), types[1].1[0].len()), (2, 1, 16));
        let l = Leaper::of(3, 4);
        let types = classify_cycle_types(&decompose_center_board(l).unwrap(), l).unwrap();
        assert_eq!(types.iter().map(|t| t.1.len()).collect::<Vec<_>>(), vec![1, 1, 1]);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_basic(1, 3).unwrap(), (Leaper::of(1, 2), 1, Rotation::Deg45));
        assert_eq!(reduce_to_basic(2, 4).unwrap(), (Leaper::of(1, 2), 2, Rotation::Deg0));
        assert_eq!(reduce_to_basic(0, 1).unwrap(), (Leaper::of(0, 1), 1, Rotation::Deg0));
        assert_eq!(reduce_to_basic(3, 3).unwrap(), (Leaper::of(0, 1), 3, Rotation::Deg45));
    }

    #[test]
    fn knuth_predicate_examples() {
        assert!(knuth_free_predicate(Leaper::of(1, 2), 3, 4));
        assert!(!knuth_free_predicate(Leaper::of(1, 2), 3, 3));
        assert!(!knuth_free_predicate(Leaper::of(2, 4), 6, 8));
    }

    #[test]
    fn canonical_cycle_orientation() {
        let c = vec![sq(4, 0), sq(0, 2), sq(2, 4), sq(0, 0)];
        let k = canonical_cycle(&c);
        assert_eq!(k[0], sq(0, 0));
        assert_eq!(k[1], sq(2, 4));
        assert!(same_cycle(&c, &k));
        let mut r = c.clone();
        r.reverse();
        assert!(same_cycle(&c, &r));
    }

    #[test]
    fn center_board_counts_for_small_sums() {
        for s in 3..=25i64 {
            for p in 1..s {
                let q = s - p;
                let l = match Leaper::new(p, q) {
                    Ok(l) if l.is_skew() && l.is_basic() && p < q => l,
                    _ => continue,
                };
                let d = decompose_center_board(l).unwrap();
                assert_eq!(d.isolated.len() as i64, (q - p) * (q - p));
                let total: usize = d.cycles.iter().map(Vec::len).sum();
                assert_eq!(total as i64, (p + q) * (p + q) - (q - p) * (q - p));
                assert!(d.cycles.iter().all(|c| c.len() % 2 == 0));
            }
        }
    }

    proptest! {
        #[test]
        fn moves_are_involutive(p in 0i64..6, q in 1i64..7, x in -20i64..20, y in -20i64..20) {
            let l = Leaper::new(p, q).unwrap();
            let a = Square::new(x, y);
            for b in move_targets(l, a) {
                prop_assert!(move_targets(l, b).contains(&a));
            }
        }

        #[test]
        fn reduction_is_basic(p in 0i64..40, q in 1i64..40) {
            let (l, d, _) = reduce_to_basic(p, q).unwrap();
            prop_assert!(l.is_basic());
            prop_assert!(d >= 1);
        }
    }
}
