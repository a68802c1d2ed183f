//! Perfect cycles, the four extended lifts, and the dual boards they span.

use crate::board::{canonical_cycle, graph_over, Board};
use crate::descent::{Descent, LiftKind};
use crate::frames::{cycle_edges, lift_cycle_by, lift_paths, LiftError, SectionedCycle};
use crate::geometry::{Leaper, Section, Square, Translation};
use std::collections::{BTreeMap, BTreeSet};

/// An M-cycle with its perfect partitioning; `params` are the perfection proportions (p, q).
pub type PerfectCycle = SectionedCycle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PerfectError {
    #[error("no initial cycle of type {origin} for {leaper}")]
    InvalidOrigin { leaper: Leaper, origin: char },
    #[error("input is not perfect: {0}")]
    NotPerfectInput(String),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// The eight squares of an initial cycle, E first, counterclockwise.
pub fn initial_cycle(m: Leaper, origin: LiftKind) -> Result<PerfectCycle, PerfectError> {
    let (r, s) = (m.p(), m.q());
    let invalid = || PerfectError::InvalidOrigin { leaper: m, origin: origin.symbol() };
    // Side square on the E ray at distance `side`, corner square at (corner, corner).
    let (side, corner) = match origin {
        LiftKind::F if r != 0 => (r + s, r),
        LiftKind::G if r != s => (s - r, s),
        LiftKind::H => (r + s, s),
        _ => return Err(invalid()),
    };
    let paths: [Vec<Square>; 8] = std::array::from_fn(|i| {
        let base = if i % 2 == 0 { Square::at(side, 0) } else { Square::at(corner, corner) };
        vec![base.rotate_quarter((i / 2) as i64)]
    });
    Ok(SectionedCycle { leaper: m, params: origin.lift_params(r, s), paths })
}

/// The lift of a perfect cycle together with its partitioning.
pub fn lift_perfect(kind: LiftKind, d: &PerfectCycle) -> PerfectCycle {
    let (p, q) = d.params;
    SectionedCycle { leaper: d.leaper, params: kind.lift_params(p, q), paths: lift_paths(kind, p, q, &d.paths) }
}

/// D^M_o(e): lifts e_l, …, e_1 applied to the initial cycle.
pub fn perfect_cycle(m: Leaper, origin: LiftKind, e: &Descent) -> Result<PerfectCycle, PerfectError> {
    let mut d = initial_cycle(m, origin)?;
    for &k in e.chars().iter().rev() {
        d = lift_perfect(k, &d);
    }
    Ok(d)
}

/// The six defining properties, each with the first failure found.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct PerfectionReport {
    pub translation: Option<String>,
    pub symmetry: Option<String>,
    pub separation: Option<String>,
    pub simplicity: Option<String>,
    pub coherence: Option<String>,
    pub protocoherence: Option<String>,
}

impl PerfectionReport {
    pub fn is_perfect(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<(&'static str, &str)> {
        [
            ("translation", &self.translation),
            ("symmetry", &self.symmetry),
            ("separation", &self.separation),
            ("simplicity", &self.simplicity),
            ("coherence", &self.coherence),
            ("protocoherence", &self.protocoherence),
        ]
        .into_iter()
        .filter_map(|(n, f)| f.as_deref().map(|f| (n, f)))
        .collect()
    }
}

/// Mirror image across the line of the ray in direction `sec`.
fn reflect_across(sec: Section, s: Square) -> Square {
    s.reflect_x().rotate_quarter(sec.index() as i64)
}

fn check_symmetry(d: &PerfectCycle) -> Option<String> {
    for sec in Section::ALL {
        let path = d.path(sec);
        if path.len() % 2 == 0 {
            return Some(format!("path {sec} has even length {}", path.len()));
        }
        let mid = path[path.len() / 2].as_vector();
        if sec.ray().cross(mid) != 0 || sec.ray().dot(mid) < 0 {
            return Some(format!("middle of path {sec} is off its ray"));
        }
        let mirrored: Vec<Square> = path.iter().rev().map(|&s| reflect_across(sec, s)).collect();
        if mirrored != path {
            return Some(format!("path {sec} is not symmetric about its ray"));
        }
        let rotated: Vec<Square> = path.iter().map(|s| s.rotate_quarter(1)).collect();
        if rotated != d.path(sec.offset(2)) {
            return Some(format!("quarter turn does not carry path {sec} onto {}", sec.offset(2)));
        }
    }
    None
}

fn check_separation(d: &PerfectCycle) -> Option<String> {
    for sec in Section::ALL {
        let next = sec.offset(1);
        let (a, b) = (d.path(sec), d.path(next));
        let between = a[a.len() / 2 + 1..].iter().chain(&b[..b.len() / 2]);
        for s in between {
            let v = s.as_vector();
            if sec.ray().cross(v) <= 0 || v.cross(next.ray()) <= 0 {
                return Some(format!("{s} is not strictly between rays {sec} and {next}"));
            }
        }
    }
    None
}

fn orient(a: Square, b: Square, c: Square) -> i64 {
    (b - a).cross(c - a).signum()
}

fn on_segment(a: Square, b: Square, c: Square) -> bool {
    c.x2 >= a.x2.min(b.x2) && c.x2 <= a.x2.max(b.x2) && c.y2 >= a.y2.min(b.y2) && c.y2 <= a.y2.max(b.y2)
}

/// Closed segments [a, b] and [c, d] share a point.
pub fn segments_meet(a: Square, b: Square, c: Square, d: Square) -> bool {
    let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0 && !(o1 == 0 && o2 == 0) {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// The closed broken line through the squares is the contour of a simple polygon.
pub fn is_simple_polygon(cycle: &[Square]) -> bool {
    let n = cycle.len();
    if n < 3 || cycle.iter().collect::<BTreeSet<_>>().len() != n {
        return false;
    }
    let seg = |j: usize| (cycle[j], cycle[(j + 1) % n]);
    for j in 0..n {
        let (a, b) = seg(j);
        // Consecutive segments share exactly their common endpoint.
        let c = cycle[(j + 2) % n];
        if orient(a, b, c) == 0 && (c - b).dot(a - b) > 0 {
            return false;
        }
        for k in j + 2..n {
            if j == 0 && k == n - 1 {
                continue;
            }
            let (c, d) = seg(k);
            if segments_meet(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn check_coherence(d: &PerfectCycle) -> Option<String> {
    let squares = d.squares();
    let graph = graph_over(d.leaper, &squares.iter().copied().collect());
    let edges: BTreeSet<(Square, Square)> = graph.edges().into_iter().collect();
    (edges != cycle_edges(&squares)).then(|| format!("the {}-graph over the squares is not the cycle", d.leaper))
}

fn check_protocoherence(d: &PerfectCycle) -> Option<String> {
    let (p, q) = d.params;
    let set = d.square_set();
    for shift in [Translation::real(2 * q, 0), Translation::real(p + q, p + q)] {
        for &a in &set {
            for t in d.leaper.translations() {
                if set.contains(&(a + t - shift)) {
                    return Some(format!("{a} reaches the copy shifted by {shift:?}"));
                }
            }
        }
    }
    None
}

pub fn check_perfect(d: &PerfectCycle) -> PerfectionReport {
    let squares = d.squares();
    let distinct = squares.iter().collect::<BTreeSet<_>>().len() == squares.len();
    let base_fail = if d.paths.iter().any(Vec::is_empty) {
        Some("empty path".to_string())
    } else if !distinct {
        Some("repeated square".to_string())
    } else {
        None
    };
    if let Some(f) = base_fail {
        return PerfectionReport {
            translation: Some(f.clone()),
            symmetry: Some(f.clone()),
            separation: Some(f.clone()),
            simplicity: Some(f.clone()),
            coherence: Some(f.clone()),
            protocoherence: Some(f),
        };
    }
    PerfectionReport {
        translation: (!d.translation_identities_hold()).then(|| "translation identities fail".to_string()),
        symmetry: check_symmetry(d),
        separation: check_separation(d),
        simplicity: (!is_simple_polygon(&squares)).then(|| "broken line self-intersects".to_string()),
        coherence: check_coherence(d),
        protocoherence: check_protocoherence(d),
    }
}

/// Both strict envelopes: |x| + |y| < p + q and max(|x|, |y|) < q.
pub fn within_bound(d: &PerfectCycle) -> bool {
    let (p, q) = d.params;
    d.squares().iter().all(|s| s.x2.abs() + s.y2.abs() < 2 * (p + q) && s.x2.abs().max(s.y2.abs()) < 2 * q)
}

/// Recovers the unique perfect partitioning of a cycle: a^E = D ∩ (D + (q, p)) ∩ (D + (q, −p)),
/// the other sections by rotation.
pub fn recover_partition(m: Leaper, params: (i64, i64), cycle: &[Square]) -> Option<PerfectCycle> {
    let (p, q) = params;
    let set: BTreeSet<Square> = cycle.iter().copied().collect();
    let shifts = |sec: Section| -> [Translation; 2] {
        let turns = (sec.index() / 2) as i64;
        let pair = if sec.is_side() {
            [Translation::real(q, p), Translation::real(q, -p)]
        } else {
            [Translation::real(q, p), Translation::real(p, q)]
        };
        pair.map(|t| t.rotate_quarter(turns))
    };
    let mut label = BTreeMap::new();
    for sec in Section::ALL {
        let [t1, t2] = shifts(sec);
        for &a in &set {
            if set.contains(&(a - t1)) && set.contains(&(a - t2)) && label.insert(a, sec).is_some() {
                return None;
            }
        }
    }
    if label.len() != set.len() {
        return None;
    }
    let n = cycle.len();
    for order in [cycle.to_vec(), cycle.iter().rev().copied().collect::<Vec<_>>()] {
        // Start at the first E square that follows a non-E square.
        let Some(start) = (0..n).find(|&j| label[&order[j]] == Section::E && label[&order[(j + n - 1) % n]] != Section::E)
        else {
            continue;
        };
        let mut paths: [Vec<Square>; 8] = Default::default();
        let mut current = 0usize;
        let mut ok = true;
        for j in 0..n {
            let s = order[(start + j) % n];
            let idx = label[&s].index();
            if idx != current {
                if idx != current + 1 {
                    ok = false;
                    break;
                }
                current = idx;
            }
            paths[idx].push(s);
        }
        if ok && current == 7 {
            return Some(SectionedCycle { leaper: m, params, paths });
        }
    }
    None
}

/// A board dual with respect to M and L = A_e·A_o·(r, s)ᵀ, with both Hamiltonian cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBoard {
    pub board: Board,
    pub m: Leaper,
    pub l: Leaper,
    pub m_cycle: PerfectCycle,
    pub l_cycle: Vec<Square>,
}

/// B^M_o(e). The L-cycle is built by lifting the seed L-cycle alongside the perfect cycle
/// and must agree with the L-graph traced over the board.
pub fn build_dual_board(m: Leaper, origin: LiftKind, e: &Descent) -> Result<DualBoard, PerfectError> {
    let mut d = initial_cycle(m, origin)?;
    let seed_leaper = Leaper::of(d.params.0, d.params.1);
    let mut l_cycle = graph_over(seed_leaper, &d.square_set())
        .as_single_cycle()
        .ok_or_else(|| PerfectError::NotPerfectInput(format!("seed squares do not form a {seed_leaper}-cycle")))?;
    for &k in e.chars().iter().rev() {
        let sections = d.section_map();
        l_cycle = lift_cycle_by(k, d.params.0, d.params.1, &l_cycle, |s| sections.get(&s).copied())?;
        d = lift_perfect(k, &d);
    }
    let l = Leaper::of(d.params.0, d.params.1);
    let board = Board::from_squares(d.squares()).map_err(|err| PerfectError::NotPerfectInput(err.to_string()))?;
    let traced = graph_over(l, board.squares())
        .as_single_cycle()
        .ok_or_else(|| PerfectError::NotPerfectInput(format!("the {l}-graph over the board is not a single cycle")))?;
    if canonical_cycle(&l_cycle) != traced {
        return Err(PerfectError::NotPerfectInput("lifted and traced L-cycles disagree".into()));
    }
    Ok(DualBoard { board, m, l, m_cycle: d, l_cycle })
}
