//! The explicit isomorphism between a cycle and its second-leaper cycle, displacement
//! multisets, and dual-board verification.

use crate::board::{graph_over, Board, LeaperGraph};
use crate::direction::{direction_matrix, direction_of_move, extract_cycle};
use crate::frames::ProperCycle;
use crate::geometry::{Leaper, Mat2, Square};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualityError {
    #[error("ψ is not a bijection for m = {0}, n = {1}")]
    NotBijective(i64, i64),
    #[error("the two cycles are not over the same squares")]
    MismatchedSquares,
    #[error("isomorphism is not decided for these graphs without a witness map")]
    Unsupported,
}

/// υ(ε, j) = m + n + 2·((ε·m − j) mod (m + n)) + 1.
pub fn upsilon(eps: i64, j: i64, m: i64, n: i64) -> i64 {
    m + n + 2 * (eps * m - j).rem_euclid(m + n) + 1
}

/// ψ over 1..=4(m+n), stored with `map[j − 1] = ψ(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub m: i64,
    pub n: i64,
    pub map: Vec<usize>,
}

impl IsoWitness {
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// ψ(j) for any integer j, periodic in 4(m + n).
    pub fn at(&self, j: i64) -> usize {
        self.map[(j - 1).rem_euclid(self.map.len() as i64) as usize]
    }

    pub fn increments(&self) -> Vec<i64> {
        let len = self.map.len() as i64;
        (1..=len).map(|j| (self.at(j + 1) as i64 - self.at(j) as i64).rem_euclid(len)).collect()
    }
}

pub fn psi_permutation(m: i64, n: i64) -> Result<IsoWitness, DualityError> {
    if m < 1 || n < 1 || (m + n) % 2 != 0 {
        return Err(DualityError::NotBijective(m, n));
    }
    let len = 4 * (m + n);
    let mut map = Vec::with_capacity(len as usize);
    let mut cur = 1i64;
    for _ in 0..len {
        map.push(cur as usize);
        cur = (cur + upsilon(cur % 2, cur, m, n) - 1).rem_euclid(len) + 1;
    }
    let distinct: BTreeSet<usize> = map.iter().copied().collect();
    if distinct.len() != map.len() || cur != 1 {
        return Err(DualityError::NotBijective(m, n));
    }
    Ok(IsoWitness { m, n, map })
}

/// The side and corner path lengths of a sectioned cycle.
pub fn side_corner_counts(d: &ProperCycle) -> (i64, i64) {
    (d.paths[0].len() as i64, d.paths[1].len() as i64)
}

/// a_j ↦ a_ψ(j) on the squares of D, enumerated a^E first.
pub fn iso_from_psi(d: &ProperCycle) -> Result<BTreeMap<Square, Square>, DualityError> {
    let (m, n) = side_corner_counts(d);
    let psi = psi_permutation(m, n)?;
    let a = d.squares();
    Ok((1..=a.len() as i64).map(|j| (a[(j - 1) as usize], a[psi.at(j) - 1])).collect())
}

/// The ψ-image of D's enumeration is a cycle of `leaper`, i.e. ψ maps D onto the L-cycle.
pub fn psi_is_isomorphism(d: &ProperCycle, leaper: Leaper) -> Result<bool, DualityError> {
    let (m, n) = side_corner_counts(d);
    let psi = psi_permutation(m, n)?;
    let a = d.squares();
    Ok((1..=a.len() as i64).all(|j| leaper.is_move(a[psi.at(j + 1) - 1] - a[psi.at(j) - 1])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplacementReport {
    pub mu: i64,
    pub alpha: i64,
    pub beta: i64,
    pub d_displacements: BTreeMap<i64, usize>,
    pub c_displacements: BTreeMap<i64, usize>,
}

impl DisplacementReport {
    /// {x : μ ≤ x ≤ 3μ, x ≡ residue (mod 4)}, each eight times.
    pub fn expected(mu: i64, residue: i64) -> BTreeMap<i64, usize> {
        (mu..=3 * mu).filter(|x| x.rem_euclid(4) == residue).map(|x| (x, 8)).collect()
    }

    pub fn laws_hold(&self) -> bool {
        self.alpha == self.beta
            && self.d_displacements == Self::expected(self.mu, self.alpha)
            && self.c_displacements == Self::expected(self.mu, self.beta)
    }
}

fn steps_to_successor(walk: &[Square], other: &[Square]) -> BTreeMap<i64, usize> {
    let n = walk.len();
    let pos: BTreeMap<Square, usize> = walk.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut out = BTreeMap::new();
    for j in 0..n {
        let (a, b) = (other[j], other[(j + 1) % n]);
        let steps = (pos[&b] as i64 - pos[&a] as i64).rem_euclid(n as i64);
        *out.entry(steps).or_insert(0) += 1;
    }
    out
}

/// D-displacements (steps along D to each square's C-successor) and C-displacements.
pub fn displacement_report(c: &[Square], d: &[Square]) -> Result<DisplacementReport, DualityError> {
    let (sc, sd): (BTreeSet<Square>, BTreeSet<Square>) = (c.iter().copied().collect(), d.iter().copied().collect());
    if sc != sd || sc.len() != c.len() || sd.len() != d.len() || c.len() % 4 != 0 {
        return Err(DualityError::MismatchedSquares);
    }
    let d_disp = steps_to_successor(d, c);
    let c_disp = steps_to_successor(c, d);
    let residue = |m: &BTreeMap<i64, usize>| m.keys().next().map_or(0, |x| x.rem_euclid(4));
    Ok(DisplacementReport {
        mu: c.len() as i64 / 4,
        alpha: residue(&d_disp),
        beta: residue(&c_disp),
        d_displacements: d_disp,
        c_displacements: c_disp,
    })
}

/// L-edges correspond to M-edges under the witness bijection of the board.
pub fn witness_preserves_edges(l_graph: &LeaperGraph, m_graph: &LeaperGraph, witness: &BTreeMap<Square, Square>) -> bool {
    let squares = l_graph.board().squares();
    let image: BTreeSet<Square> = witness.values().copied().collect();
    if witness.len() != squares.len() || image != *m_graph.board().squares() || witness.keys().ne(squares.iter()) {
        return false;
    }
    let mapped: BTreeSet<(Square, Square)> = l_graph
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (witness[&a], witness[&b]);
            (x.min(y), x.max(y))
        })
        .collect();
    mapped == m_graph.edges().into_iter().collect()
}

/// Duality of a board with respect to L and M: both graphs connected and isomorphic.
pub fn verify_dual_board(
    board: &Board,
    l: Leaper,
    m: Leaper,
    witness: Option<&BTreeMap<Square, Square>>,
) -> Result<bool, DualityError> {
    let (gl, gm) = (graph_over(l, board.squares()), graph_over(m, board.squares()));
    if l == m || board.len() < 2 || !gl.is_connected() || !gm.is_connected() || gl.edge_count() != gm.edge_count() {
        return Ok(false);
    }
    let degrees = |g: &LeaperGraph| -> Vec<usize> {
        let mut d: Vec<usize> = board.squares().iter().map(|&s| g.degree(s)).collect();
        d.sort();
        d
    };
    if degrees(&gl) != degrees(&gm) {
        return Ok(false);
    }
    if gl.as_single_cycle().is_some() && gm.as_single_cycle().is_some() {
        return Ok(true);
    }
    match witness {
        Some(w) if witness_preserves_edges(&gl, &gm, w) => Ok(true),
        _ => Err(DualityError::Unsupported),
    }
}

/// Dist^II(ψ(j), ψ(j + 1)) = A^I(j)·A for every j, where Dist^II is read off D's direction
/// graph and A^I(j) is the direction of the L-move from a_ψ(j) to a_ψ(j+1).
pub fn duality_identity_holds(l: Leaper, d: &ProperCycle, a: Mat2) -> Result<bool, DualityError> {
    let (m, n) = side_corner_counts(d);
    let psi = psi_permutation(m, n)?;
    let squares = d.squares();
    let Ok(phi2) = extract_cycle(d.leaper, &squares) else { return Ok(false) };
    let Ok(pot) = phi2.potentials() else { return Ok(false) };
    let len = squares.len() as i64;
    Ok((1..=len).all(|j| {
        let (x, y) = (psi.at(j) - 1, psi.at(j + 1) - 1);
        let dist = pot[y].1 - pot[x].1;
        match direction_of_move(l, squares[y] - squares[x]) {
            Some(label) => dist == direction_matrix(label) * a,
            None => false,
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::decompose_center_board;
    use crate::descent::{descent_of, leaper_of_descent, matrix_product, Descent, LiftKind};
    use crate::frames::{canonical_second_cycle, type_cycle};
    use crate::signature::flip;

    #[test]
    fn upsilon_examples() {
        assert_eq!(upsilon(0, 2, 1, 1), 3);
        assert_eq!(upsilon(0, 3, 1, 1), 5);
        assert_eq!(upsilon(0, 0, 1, 3), 5);
        for eps in 0..2 {
            for j in -10..10 {
                assert_eq!(upsilon(eps, j, 2, 4), upsilon(eps, j + 6, 2, 4));
            }
        }
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_permutation(1, 1).unwrap().map, vec![1, 4, 7, 2, 5, 8, 3, 6]);
        assert_eq!(psi_permutation(1, 3).unwrap().len(), 16);
        assert!(psi_permutation(1, 2).is_err());
    }

    #[test]
    fn psi_increment_law() {
        let mut pairs = BTreeSet::new();
        for (p, q) in [(1, 2), (2, 3), (1, 4), (3, 4), (2, 5), (3, 8), (4, 7), (5, 8), (4, 9)] {
            for index in 1..=descent_of(p, q).unwrap().len() + 1 {
                if let Ok((_, d)) = type_cycle(p, q, index) {
                    pairs.insert(side_corner_counts(&d));
                }
            }
        }
        assert!(pairs.len() > 5);
        for (m, n) in pairs {
            let psi = psi_permutation(m, n).unwrap();
            let mut got: BTreeMap<i64, usize> = BTreeMap::new();
            for x in psi.increments() {
                *got.entry(x).or_insert(0) += 1;
            }
            let want: BTreeMap<i64, usize> =
                (m + n..=3 * (m + n)).filter(|x| (x - (n - m - 1)).rem_euclid(4) == 0).map(|x| (x, 8)).collect();
            assert_eq!(got, want, "m={m} n={n}");
        }
    }

    #[test]
    fn psi_maps_second_cycles_onto_cycles() {
        for (p, q) in [(1, 2), (2, 3), (1, 4), (3, 4), (2, 5), (3, 8), (4, 7)] {
            for c in decompose_center_board(Leaper::of(p, q)).unwrap().cycles {
                let (_, d) = canonical_second_cycle(p, q, &c).unwrap();
                assert!(psi_is_isomorphism(&d, Leaper::of(p, q)).unwrap(), "({p},{q})");
                let iso = iso_from_psi(&d).unwrap();
                assert_eq!(iso.len(), c.len());
                let report = displacement_report(&c, &d.squares()).unwrap();
                assert!(report.laws_hold(), "({p},{q}) {report:?}");
            }
        }
    }

    #[test]
    fn base_displacements() {
        let (c, d) = type_cycle(1, 2, 1).unwrap();
        let r = displacement_report(&c, &d.squares()).unwrap();
        assert_eq!(r.mu, 2);
        assert!(r.d_displacements == BTreeMap::from([(3, 8)]) || r.d_displacements == BTreeMap::from([(5, 8)]));
        assert!(r.laws_hold());
    }

    #[test]
    fn two_three_type_two_displacements() {
        let (c, d) = type_cycle(2, 3, 2).unwrap();
        let r = displacement_report(&c, &d.squares()).unwrap();
        assert_eq!(r.mu, 4);
        assert!(r.d_displacements == BTreeMap::from([(5, 8), (9, 8)]) || r.d_displacements == BTreeMap::from([(7, 8), (11, 8)]));
        let reversed: Vec<Square> = c.iter().rev().copied().collect();
        let r2 = displacement_report(&reversed, &d.squares()).unwrap();
        assert_ne!(r.alpha, r2.alpha);
        assert!(r2.laws_hold());
    }

    #[test]
    fn dual_board_examples() {
        let (c, _) = type_cycle(2, 3, 2).unwrap();
        assert_eq!(c.len(), 16);
        let board = Board::from_squares(c.iter().copied()).unwrap();
        assert!(verify_dual_board(&board, Leaper::of(2, 3), Leaper::of(0, 1), None).unwrap());
        assert!(verify_dual_board(&board, Leaper::of(1, 2), Leaper::of(2, 3), None).unwrap());
        assert!(verify_dual_board(&board, Leaper::of(2, 3), Leaper::of(1, 2), None).unwrap());
        let pair = Board::from_squares([Square::at(0, 0), Square::at(1, 2)]).unwrap();
        assert!(!verify_dual_board(&pair, Leaper::of(1, 2), Leaper::of(0, 1), None).unwrap());
    }

    fn cycle_with_descent(e: &Descent, origin: LiftKind) -> (Leaper, Vec<Square>, ProperCycle) {
        let full = e.push(origin);
        let l = leaper_of_descent(&full);
        let index = e.chars().iter().filter(|&&k| k != LiftKind::F).count() + 1;
        assert_eq!(descent_of(l.p(), l.q()).unwrap(), full);
        let (c, d) = type_cycle(l.p(), l.q(), index).unwrap();
        (l, c, d)
    }

    #[test]
    fn duality_identity_for_small_descents() {
        for e in Descent::enumerate(&LiftKind::CORE, 3) {
            for o in [LiftKind::G, LiftKind::H] {
                let (l, _, d) = cycle_with_descent(&e, o);
                let a = matrix_product(&e) * o.matrix();
                assert!(duality_identity_holds(l, &d, a).unwrap(), "{e} {}", o.symbol());
            }
        }
    }

    #[test]
    fn psi_transfers_to_flipped_descents() {
        for e in Descent::enumerate(&LiftKind::CORE, 3) {
            for o in [LiftKind::G, LiftKind::H] {
                let (_, c2, d2) = cycle_with_descent(&e, o);
                let (l1, c1, d1) = cycle_with_descent(&flip(&e), o);
                assert_eq!(c1.len(), c2.len());
                let (m, n) = side_corner_counts(&d2);
                let psi = psi_permutation(m, n).unwrap();
                assert!(psi_is_isomorphism(&d2, leaper_of_descent(&e.push(o))).unwrap());
                // Some enumeration b of C′ makes b_j ↦ b_ψ(j) an isomorphism onto D′.
                let len = c1.len();
                let found = (0..len).any(|start| {
                    [false, true].into_iter().any(|rev| {
                        let b = |j: usize| {
                            let k = if rev { (start + len - (j - 1) % len) % len } else { (start + j - 1) % len };
                            c1[k]
                        };
                        (1..=len as i64).all(|j| d1.leaper.is_move(b(psi.at(j + 1)) - b(psi.at(j))))
                    })
                });
                assert!(found, "{e} {} with {l1}", o.symbol());
            }
        }
    }
}
