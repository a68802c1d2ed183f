//! Frames, the lifting transformations on sets, cycles and sectioned cycles, and
//! the canonical second-leaper cycle of every cycle of the central board.

use crate::board::graph_over;
use crate::descent::{descent_of, leaper_of_descent, DescentError, LiftKind};
use crate::geometry::{Leaper, Section, Square, Translation};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftError {
    #[error("invalid frame proportions ({0}, {1})")]
    InvalidProportions(i64, i64),
    #[error("not a cycle of the frame leaper: {0}")]
    NotAFrameCycle(String),
    #[error("not a proper cycle: {0}")]
    NotProper(String),
    #[error("not a cycle of the leaper: {0}")]
    NotACycleOfL(String),
    #[error("third-leaper construction inapplicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Descent(#[from] DescentError),
}

/// The (m+n)×(m+n) board centered at the origin with a central (n−m)×(n−m) hole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    m: i64,
    n: i64,
}

pub fn build_frame(m: i64, n: i64) -> Result<Frame, LiftError> {
    Frame::new(m, n)
}

impl Frame {
    pub fn new(m: i64, n: i64) -> Result<Self, LiftError> {
        if m < 0 || m >= n {
            return Err(LiftError::InvalidProportions(m, n));
        }
        Ok(Frame { m, n })
    }

    pub fn m(self) -> i64 {
        self.m
    }

    pub fn n(self) -> i64 {
        self.n
    }

    pub fn params(self) -> (i64, i64) {
        (self.m, self.n)
    }

    pub fn leaper(self) -> Leaper {
        Leaper::of(self.m, self.n)
    }

    pub fn lifted(self, kind: LiftKind) -> Frame {
        let (m, n) = kind.lift_params(self.m, self.n);
        Frame { m, n }
    }

    fn outer(self) -> i64 {
        self.m + self.n
    }

    fn hole(self) -> i64 {
        self.n - self.m
    }

    pub fn section_of(self, s: Square) -> Option<Section> {
        let big = self.outer();
        let parity = (big - 1).rem_euclid(2);
        if s.x2.rem_euclid(2) != parity || s.y2.rem_euclid(2) != parity {
            return None;
        }
        if s.x2.abs() > big - 1 || s.y2.abs() > big - 1 {
            return None;
        }
        // Centers never sit on the hole's extended sides, by parity.
        let h = self.hole();
        let col = if s.x2 > h { 1 } else if s.x2 < -h { -1 } else { 0 };
        let row = if s.y2 > h { 1 } else if s.y2 < -h { -1 } else { 0 };
        Some(match (col, row) {
            (0, 0) => return None,
            (1, 0) => Section::E,
            (1, 1) => Section::NE,
            (0, 1) => Section::N,
            (-1, 1) => Section::NW,
            (-1, 0) => Section::W,
            (-1, -1) => Section::SW,
            (0, -1) => Section::S,
            _ => Section::SE,
        })
    }

    pub fn contains(self, s: Square) -> bool {
        self.section_of(s).is_some()
    }

    pub fn in_shell(self, s: Square) -> bool {
        let Some(sec) = self.section_of(s) else { return false };
        let (m, n, h, big) = (self.m, self.n, self.hole(), self.outer());
        if 3 * m <= n {
            return false;
        }
        let (ax, ay) = (s.x2.abs(), s.y2.abs());
        let horizontal = matches!(sec, Section::E | Section::W);
        if 2 * m >= n {
            if !sec.is_side() {
                ax > big - 2 * h && ay > big - 2 * h
            } else if horizontal {
                h < ax && ax < 3 * h
            } else {
                h < ay && ay < 3 * h
            }
        } else {
            let t = 3 * m - n;
            if !sec.is_side() {
                h < ax && ax < h + 2 * t && h < ay && ay < h + 2 * t
            } else if horizontal {
                ax > big - 2 * t && ay < t
            } else {
                ay > big - 2 * t && ax < t
            }
        }
    }

    pub fn squares(self) -> BTreeSet<Square> {
        let big = self.outer();
        let coords: Vec<i64> = (0..big).map(|i| 2 * i - (big - 1)).collect();
        coords
            .iter()
            .flat_map(|&x| coords.iter().map(move |&y| Square::new(x, y)))
            .filter(|&s| self.contains(s))
            .collect()
    }

    pub fn section_squares(self, sec: Section) -> BTreeSet<Square> {
        self.squares().into_iter().filter(|&s| self.section_of(s) == Some(sec)).collect()
    }

    pub fn shell(self) -> BTreeSet<Square> {
        self.squares().into_iter().filter(|&s| self.in_shell(s)).collect()
    }

    pub fn core(self) -> BTreeSet<Square> {
        self.squares().into_iter().filter(|&s| !self.in_shell(s)).collect()
    }

    /// The 8-square shell cycles, indexed by their E square in row-major order.
    pub fn shell_cycles(self) -> Vec<Vec<Square>> {
        let mut east: Vec<Square> =
            self.shell().into_iter().filter(|&s| self.section_of(s) == Some(Section::E)).collect();
        east.sort_by_key(|s| (-s.y2, s.x2));
        east.into_iter().filter_map(|s| self.trace_local_cycle(s)).collect()
    }

    /// Follows the frame leaper from `start`; every frame square outside the hole has degree two.
    fn trace_local_cycle(self, start: Square) -> Option<Vec<Square>> {
        let l = self.leaper();
        let nb = |a: Square| -> Vec<Square> {
            let mut v: Vec<Square> = l.translations().into_iter().map(|t| a + t).filter(|&b| self.contains(b)).collect();
            v.sort();
            v
        };
        let first = nb(start);
        if first.len() != 2 {
            return None;
        }
        let mut cycle = vec![start];
        let (mut prev, mut cur) = (start, first[0]);
        while cur != start {
            cycle.push(cur);
            let v = nb(cur);
            if v.len() != 2 {
                return None;
            }
            let next = if v[0] == prev { v[1] } else { v[0] };
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }
}

/// The translation v^kind_sec attached to an (m, n) frame, in doubled units.
pub fn lift_vector(kind: LiftKind, m: i64, n: i64, sec: Section) -> Translation {
    let base = if sec.is_side() {
        match kind {
            LiftKind::G => Translation::real(n - m, 0),
            _ => Translation::real(m + n, 0),
        }
    } else {
        match kind {
            LiftKind::F => Translation::real(m, m),
            _ => Translation::real(n, n),
        }
    };
    base.rotate_quarter(sec.quarter_turns())
}

/// Union over the eight sections of (S + v_i) ∩ H_i.
pub fn lift_set(kind: LiftKind, frame: Frame, set: &BTreeSet<Square>) -> BTreeSet<Square> {
    let target = frame.lifted(kind);
    let mut out = BTreeSet::new();
    for &s in set {
        for sec in Section::ALL {
            let t = s + lift_vector(kind, frame.m, frame.n, sec);
            if target.section_of(t) == Some(sec) {
                out.insert(t);
            }
        }
    }
    out
}

/// Which cycle neighbor an endpoint of a replacement path connects to.
#[derive(Clone, Copy)]
enum Facing {
    /// (−n, m) for a side square in E.
    Up,
    /// (−n, −m) for a side square in E.
    Down,
    /// (−n, −m) for a corner square in NE.
    Westward,
    /// (−m, −n) for a corner square in NE.
    Southward,
}

impl Facing {
    fn base(self, m: i64, n: i64) -> Translation {
        match self {
            Facing::Up => Translation::real(-n, m),
            Facing::Down | Facing::Westward => Translation::real(-n, -m),
            Facing::Southward => Translation::real(-m, -n),
        }
    }
}

struct Replacement {
    /// Section offsets of the lifted copies, in path order.
    offsets: &'static [i64],
    ends: Option<(Facing, Facing)>,
}

fn replacement(kind: LiftKind, side: bool) -> Replacement {
    use Facing::*;
    let (offsets, ends): (&'static [i64], _) = match (kind, side) {
        (LiftKind::F, true) => (&[4], None),
        (LiftKind::F, false) => (&[3, 0, -3], Some((Westward, Southward))),
        (LiftKind::G, true) => (&[3, 0, -3], Some((Up, Down))),
        (LiftKind::G, false) => (&[4], None),
        (LiftKind::H, true) => (&[2, -1, 4, 1, -2], Some((Up, Down))),
        (LiftKind::H, false) => (&[-3, 0, 3], Some((Westward, Southward))),
        (LiftKind::HBar, true) => (&[-3, 0, 3], Some((Up, Down))),
        (LiftKind::HBar, false) => (&[2, -1, 4, 1, -2], Some((Westward, Southward))),
    };
    Replacement { offsets, ends }
}

/// Per-square replacement of an (m, n)-leaper cycle; `section` assigns each square its
/// section (frame section for frame cycles, path index for sectioned cycles).
pub fn lift_cycle_by<F>(kind: LiftKind, m: i64, n: i64, cycle: &[Square], section: F) -> Result<Vec<Square>, LiftError>
where
    F: Fn(Square) -> Option<Section>,
{
    let len = cycle.len();
    if len < 3 {
        return Err(LiftError::NotAFrameCycle(format!("cycle of length {len}")));
    }
    let mut out = Vec::new();
    for j in 0..len {
        let a = cycle[j];
        let pred = cycle[(j + len - 1) % len];
        let sec = section(a).ok_or_else(|| LiftError::NotAFrameCycle(format!("{a} has no section")))?;
        let rule = replacement(kind, sec.is_side());
        let mut path: Vec<Square> =
            rule.offsets.iter().map(|&o| a + lift_vector(kind, m, n, sec.offset(o))).collect();
        if let Some((first, last)) = rule.ends {
            let turns = sec.quarter_turns();
            let toward = pred - a;
            if toward == first.base(m, n).rotate_quarter(turns) {
            } else if toward == last.base(m, n).rotate_quarter(turns) {
                path.reverse();
            } else {
                return Err(LiftError::NotAFrameCycle(format!("{a} in {sec}: predecessor {pred} is not a frame neighbor")));
            }
        }
        out.extend(path);
    }
    let (p, q) = kind.lift_params(m, n);
    let target = Leaper::of(p, q);
    let distinct: BTreeSet<Square> = out.iter().copied().collect();
    if distinct.len() != out.len() {
        return Err(LiftError::NotAFrameCycle("lifted walk revisits a square".into()));
    }
    for j in 0..out.len() {
        let (a, b) = (out[j], out[(j + 1) % out.len()]);
        if !target.is_move(b - a) {
            return Err(LiftError::NotAFrameCycle(format!("lifted walk breaks between {a} and {b}")));
        }
    }
    Ok(out)
}

/// Lifts an L_F-cycle of the frame to the corresponding L_H-cycle.
pub fn lift_cycle(kind: LiftKind, frame: Frame, cycle: &[Square]) -> Result<Vec<Square>, LiftError> {
    let l = frame.leaper();
    for j in 0..cycle.len() {
        let (a, b) = (cycle[j], cycle[(j + 1) % cycle.len()]);
        if !frame.contains(a) || !l.is_move(b - a) {
            return Err(LiftError::NotAFrameCycle(format!("{a} → {b} is not a move within the frame")));
        }
    }
    lift_cycle_by(kind, frame.m, frame.n, cycle, |s| frame.section_of(s))
}

/// A second-leaper cycle split into eight paths, E first, counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionedCycle {
    /// The leaper touring the cycle.
    pub leaper: Leaper,
    /// Proportions (p, q) of the enclosing frame.
    pub params: (i64, i64),
    pub paths: [Vec<Square>; 8],
}

pub type ProperCycle = SectionedCycle;

impl SectionedCycle {
    pub fn squares(&self) -> Vec<Square> {
        self.paths.iter().flatten().copied().collect()
    }

    pub fn square_set(&self) -> BTreeSet<Square> {
        self.paths.iter().flatten().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn path(&self, sec: Section) -> &[Square] {
        &self.paths[sec.index()]
    }

    /// Section of each square by path membership.
    pub fn section_map(&self) -> BTreeMap<Square, Section> {
        let mut map = BTreeMap::new();
        for sec in Section::ALL {
            for &s in self.path(sec) {
                map.insert(s, sec);
            }
        }
        map
    }

    /// Consecutive squares, cyclically, are moves of the touring leaper.
    pub fn is_leaper_cycle(&self) -> bool {
        let sq = self.squares();
        let n = sq.len();
        n >= 3 && self.square_set().len() == n && (0..n).all(|j| self.leaper.is_move(sq[(j + 1) % n] - sq[j]))
    }

    /// The four translation identities, e.g. a^E a^NE + (−q, −p) = −a^SW −a^W.
    pub fn translation_identities_hold(&self) -> bool {
        let (p, q) = self.params;
        let shifts = [
            Translation::real(-q, -p),
            Translation::real(-p, -q),
            Translation::real(p, -q),
            Translation::real(q, -p),
        ];
        (0..4).all(|i| {
            let lhs: Vec<Square> = self.paths[i].iter().chain(&self.paths[i + 1]).map(|&s| s + shifts[i]).collect();
            let mut rhs: Vec<Square> = self.paths[i + 4].iter().chain(&self.paths[(i + 5) % 8]).copied().collect();
            rhs.reverse();
            lhs == rhs
        })
    }

    /// Proper within the frame of its proportions.
    pub fn check_proper(&self) -> Result<(), LiftError> {
        let frame = Frame::new(self.params.0, self.params.1)?;
        if self.paths.iter().any(Vec::is_empty) {
            return Err(LiftError::NotProper("empty path".into()));
        }
        for sec in Section::ALL {
            if let Some(s) = self.path(sec).iter().find(|&&s| frame.section_of(s) != Some(sec)) {
                return Err(LiftError::NotProper(format!("{s} lies outside section {sec}")));
            }
        }
        if !self.is_leaper_cycle() {
            return Err(LiftError::NotProper(format!("not a cycle of {}", self.leaper)));
        }
        if !self.translation_identities_hold() {
            return Err(LiftError::NotProper("translation identities fail".into()));
        }
        Ok(())
    }
}

fn concat_paths(paths: &[Vec<Square>; 8], from: i64, to: i64) -> Vec<Square> {
    (from..=to).flat_map(|i| paths[i.rem_euclid(8) as usize].iter().copied()).collect()
}

/// The eight new paths of the lift: each is a (possibly reversed) run of old paths, translated.
pub fn lift_paths(kind: LiftKind, p: i64, q: i64, paths: &[Vec<Square>; 8]) -> [Vec<Square>; 8] {
    std::array::from_fn(|i| {
        let sec = Section::ALL[i];
        let (reverse, from, to) = match (kind, sec.is_side()) {
            (LiftKind::F, true) | (LiftKind::G, false) => (true, 3, 5),
            (LiftKind::F, false) | (LiftKind::G, true) => (false, 0, 0),
            (LiftKind::H, true) | (LiftKind::HBar, false) => (true, 2, 6),
            (LiftKind::H, false) | (LiftKind::HBar, true) => (false, -1, 1),
        };
        let mut run = concat_paths(paths, i as i64 + from, i as i64 + to);
        if reverse {
            run.reverse();
        }
        let v = lift_vector(kind, p, q, sec);
        run.into_iter().map(|s| s + v).collect()
    })
}

/// Lifts a proper cycle of the frame to a proper cycle of the lifted frame.
pub fn lift_proper(kind: LiftKind, frame: Frame, d: &ProperCycle) -> Result<ProperCycle, LiftError> {
    if d.params != frame.params() {
        return Err(LiftError::NotProper(format!("cycle belongs to frame {:?}, not {:?}", d.params, frame.params())));
    }
    let out = SectionedCycle {
        leaper: d.leaper,
        params: frame.lifted(kind).params(),
        paths: lift_paths(kind, frame.m, frame.n, &d.paths),
    };
    out.check_proper()?;
    Ok(out)
}

/// Proper 8-cycle over one square per section, ordered E, NE, …, SE.
fn seed_from_sections(frame: Frame, squares: &[Square], leaper: Leaper) -> Result<ProperCycle, LiftError> {
    let mut paths: [Vec<Square>; 8] = Default::default();
    for &s in squares {
        let sec = frame.section_of(s).ok_or_else(|| LiftError::NotACycleOfL(format!("{s} outside frame")))?;
        paths[sec.index()].push(s);
    }
    if paths.iter().any(|p| p.len() != 1) {
        return Err(LiftError::NotACycleOfL("seed needs exactly one square per section".into()));
    }
    let seed = SectionedCycle { leaper, params: frame.params(), paths };
    if !seed.is_leaper_cycle() {
        return Err(LiftError::NotProper(format!("shell squares do not form a {leaper} cycle in section order")));
    }
    Ok(seed)
}

/// The (0,1)-proper 8-cycle around the hole of the (1, 2) frame.
pub fn base_seed() -> ProperCycle {
    let frame = Frame { m: 1, n: 2 };
    let squares: Vec<Square> = frame.squares().into_iter().collect();
    seed_from_sections(frame, &squares, Leaper::of(0, 1)).expect("the (1,2) ring is a (0,1) cycle")
}

/// Scales a cycle of a non-basic leaper down to its basic residue-class copy.
fn rescale(p: i64, q: i64, d: i64, cycle: &[Square]) -> Result<(Vec<Square>, Box<dyn Fn(Square) -> Square>), LiftError> {
    let big = p + q;
    let first = *cycle.first().ok_or_else(|| LiftError::NotACycleOfL("empty cycle".into()))?;
    let class_center = |c: i64| {
        let j0 = ((c + big - 1) / 2).rem_euclid(d);
        -(big - 1) + 2 * j0 + d * (big / d - 1)
    };
    let (cx, cy) = (class_center(first.x2), class_center(first.y2));
    let mut small = Vec::with_capacity(cycle.len());
    for &s in cycle {
        if (s.x2 - cx) % d != 0 || (s.y2 - cy) % d != 0 {
            return Err(LiftError::NotACycleOfL(format!("{s} leaves the residue class of {first}")));
        }
        small.push(Square::new((s.x2 - cx) / d, (s.y2 - cy) / d));
    }
    Ok((small, Box::new(move |s: Square| Square::new(s.x2 * d + cx, s.y2 * d + cy))))
}

/// The canonical second leaper M and proper cycle D over the squares of C.
pub fn canonical_second_cycle(p: i64, q: i64, cycle: &[Square]) -> Result<(Leaper, ProperCycle), LiftError> {
    let l = Leaper::new(p, q).map_err(|e| LiftError::NotACycleOfL(e.to_string()))?;
    if !l.is_skew() || (p + q) % 2 == 0 || p > q {
        return Err(LiftError::NotACycleOfL(format!("({p}, {q}) is not skew with odd sum")));
    }
    let d = num_integer::gcd(p, q);
    if d > 1 {
        let (small, back) = rescale(p, q, d, cycle)?;
        let (m, dc) = canonical_second_cycle(p / d, q / d, &small)?;
        let paths = dc.paths.map(|path| path.into_iter().map(&back).collect());
        let m = Leaper::of(m.p() * d, m.q() * d);
        return Ok((m, SectionedCycle { leaper: m, params: (p, q), paths }));
    }
    let set: BTreeSet<Square> = cycle.iter().copied().collect();
    for j in 0..cycle.len() {
        if !l.is_move(cycle[(j + 1) % cycle.len()] - cycle[j]) {
            return Err(LiftError::NotACycleOfL(format!("{} → {} is not a move", cycle[j], cycle[(j + 1) % cycle.len()])));
        }
    }
    let result = unlift(Frame::new(p, q)?, &set)?;
    if result.square_set() != set {
        return Err(LiftError::NotACycleOfL("second cycle covers different squares".into()));
    }
    Ok((result.leaper, result))
}

fn unlift(outer: Frame, set: &BTreeSet<Square>) -> Result<ProperCycle, LiftError> {
    let (p, q) = outer.params();
    if (p, q) == (1, 2) {
        let seed = base_seed();
        if seed.square_set() != *set {
            return Err(LiftError::NotACycleOfL("not the (1,2) ring".into()));
        }
        return Ok(seed);
    }
    let e = descent_of(p, q)?;
    let kind = e.chars()[0];
    let inner_leaper = leaper_of_descent(&e.suffix(1));
    let inner = Frame::new(inner_leaper.p(), inner_leaper.q())?;
    let in_shell = set.iter().filter(|&&s| outer.in_shell(s)).count();
    if kind != LiftKind::F && in_shell == set.len() {
        let squares: Vec<Square> = set.iter().copied().collect();
        return seed_from_sections(outer, &squares, inner_leaper);
    }
    if in_shell != 0 {
        return Err(LiftError::NotACycleOfL("cycle straddles shell and core".into()));
    }
    let mut pre = BTreeSet::new();
    for &t in set {
        let sec = outer.section_of(t).ok_or_else(|| LiftError::NotACycleOfL(format!("{t} outside the frame")))?;
        let a = t - lift_vector(kind, inner.m, inner.n, sec);
        if !inner.contains(a) {
            return Err(LiftError::NotACycleOfL(format!("{t} has no preimage in the inner frame")));
        }
        pre.insert(a);
    }
    if lift_set(kind, inner, &pre) != *set {
        return Err(LiftError::NotACycleOfL("preimage does not lift back onto the cycle".into()));
    }
    let _ = graph_over(inner.leaper(), &pre)
        .as_single_cycle()
        .ok_or_else(|| LiftError::NotACycleOfL("preimage is not a single inner cycle".into()))?;
    let inner_cycle = unlift(inner, &pre)?;
    lift_proper(kind, inner, &inner_cycle)
}

/// A representative cycle of the given type together with its canonical second cycle,
/// built by lifting seeds rather than decomposing the board.
pub fn type_cycle(p: i64, q: i64, index: usize) -> Result<(Vec<Square>, ProperCycle), LiftError> {
    let e = descent_of(p, q)?;
    let creators: Vec<usize> =
        e.chars().iter().enumerate().filter(|(_, k)| **k != LiftKind::F).map(|(i, _)| i).collect();
    let k = creators.len() + 1;
    if index == 0 || index > k {
        return Err(DescentError::TypeOutOfRange { index, k }.into());
    }
    let (mut cycle, mut proper, upto) = if index == k {
        let seed = base_seed();
        let frame = Frame { m: 1, n: 2 };
        let ring = frame.trace_local_cycle(seed.paths[0][0]).expect("ring");
        (ring, seed, e.len())
    } else {
        let pos = creators[index - 1];
        let at = leaper_of_descent(&e.suffix(pos));
        let frame = Frame::new(at.p(), at.q())?;
        let shell = frame.shell_cycles().into_iter().next().ok_or_else(|| LiftError::NotACycleOfL("empty shell".into()))?;
        let seed = seed_from_sections(frame, &shell, leaper_of_descent(&e.suffix(pos + 1)))?;
        (shell, seed, pos)
    };
    for &kind in e.chars()[..upto].iter().rev() {
        let frame = Frame::new(proper.params.0, proper.params.1)?;
        cycle = lift_cycle(kind, frame, &cycle)?;
        proper = lift_proper(kind, frame, &proper)?;
    }
    Ok((cycle, proper))
}

/// Every third square of the (0,1)-cycle: a (1,2)-cycle when the length is prime to three.
pub fn third_leaper_cycle(d: &ProperCycle) -> Result<Vec<Square>, LiftError> {
    if d.leaper != Leaper::of(0, 1) {
        return Err(LiftError::Inapplicable(format!("second leaper is {}, not (0, 1)", d.leaper)));
    }
    let seq = d.squares();
    let len = seq.len();
    if len % 3 == 0 {
        return Err(LiftError::Inapplicable(format!("length {len} is divisible by three")));
    }
    let out: Vec<Square> = (1..=len).map(|i| seq[(3 * i - 1) % len]).collect();
    let knight = Leaper::of(1, 2);
    for j in 0..len {
        if !knight.is_move(out[(j + 1) % len] - out[j]) {
            return Err(LiftError::Inapplicable(format!("{} and {} are not knight-linked", out[j], out[(j + 1) % len])));
        }
    }
    Ok(out)
}

pub fn section_visit_counts(frame: Frame, cycle: &[Square]) -> BTreeMap<Section, usize> {
    let mut counts: BTreeMap<Section, usize> = Section::ALL.iter().map(|&s| (s, 0)).collect();
    for &s in cycle {
        if let Some(sec) = frame.section_of(s) {
            *counts.get_mut(&sec).unwrap() += 1;
        }
    }
    counts
}

/// The eight symmetries of the square about the origin.
pub fn dihedral(index: usize, s: Square) -> Square {
    let r = s.rotate_quarter((index % 4) as i64);
    if index >= 4 {
        r.reflect_x()
    } else {
        r
    }
}

/// Edge set of a cycle as ordered pairs.
pub fn cycle_edges(cycle: &[Square]) -> BTreeSet<(Square, Square)> {
    let n = cycle.len();
    (0..n)
        .map(|j| {
            let (a, b) = (cycle[j], cycle[(j + 1) % n]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Invariance of a cycle's edge set under all eight symmetries.
pub fn is_fully_symmetric(cycle: &[Square]) -> bool {
    let edges = cycle_edges(cycle);
    (1..8).all(|g| {
        let image: Vec<Square> = cycle.iter().map(|&s| dihedral(g, s)).collect();
        cycle_edges(&image) == edges
    })
}

/// Sectioned-cycle symmetry: rotation shifts paths by two sections, reflection reverses them.
pub fn is_section_symmetric(d: &SectionedCycle) -> bool {
    let rot = (0..8).all(|i| {
        let image: Vec<Square> = d.paths[i].iter().map(|&s| s.rotate_quarter(1)).collect();
        image == d.paths[(i + 2) % 8]
    });
    // Reflection in the x axis maps section i to section −i with orientation reversed.
    let refl = (0..8).all(|i| {
        let mut image: Vec<Square> = d.paths[i].iter().map(|&s| s.reflect_x()).collect();
        image.reverse();
        image == d.paths[(8 - i) % 8]
    });
    rot && refl
}
