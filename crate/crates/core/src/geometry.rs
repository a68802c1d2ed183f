//! Squares, translations, leapers and the 2×2 integer matrices that act on them.
//!
//! All coordinates are doubled: a square is stored as twice its center, so integer
//! and half-integer centers are both exact.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A unit cell, identified by twice the coordinates of its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Square {
    pub x2: i64,
    pub y2: i64,
}

impl Square {
    pub const fn new(x2: i64, y2: i64) -> Self {
        Square { x2, y2 }
    }

    /// The square whose center is the integer point (x, y).
    pub const fn at(x: i64, y: i64) -> Self {
        Square { x2: 2 * x, y2: 2 * y }
    }

    pub fn rotate_quarter(self, turns: i64) -> Self {
        let t = Translation::new(self.x2, self.y2).rotate_quarter(turns);
        Square::new(t.dx2, t.dy2)
    }

    /// Mirror image across the x axis.
    pub fn reflect_x(self) -> Self {
        Square::new(self.x2, -self.y2)
    }

    pub fn parity(self) -> (u8, u8) {
        (self.x2.rem_euclid(2) as u8, self.y2.rem_euclid(2) as u8)
    }

    pub fn as_vector(self) -> Translation {
        Translation::new(self.x2, self.y2)
    }
}

impl From<[i64; 2]> for Square {
    fn from(v: [i64; 2]) -> Self {
        Square::new(v[0], v[1])
    }
}

impl From<Square> for [i64; 2] {
    fn from(s: Square) -> Self {
        [s.x2, s.y2]
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x2, self.y2)
    }
}

/// A displacement in doubled units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Translation {
    pub dx2: i64,
    pub dy2: i64,
}

impl Translation {
    pub const ZERO: Translation = Translation { dx2: 0, dy2: 0 };

    pub const fn new(dx2: i64, dy2: i64) -> Self {
        Translation { dx2, dy2 }
    }

    /// The displacement by the integer vector (x, y).
    pub const fn real(x: i64, y: i64) -> Self {
        Translation { dx2: 2 * x, dy2: 2 * y }
    }

    /// Counterclockwise rotation by `turns` quarter turns.
    pub fn rotate_quarter(self, turns: i64) -> Self {
        let (mut x, mut y) = (self.dx2, self.dy2);
        for _ in 0..turns.rem_euclid(4) {
            (x, y) = (-y, x);
        }
        Translation::new(x, y)
    }

    pub fn dot(self, other: Translation) -> i64 {
        self.dx2 * other.dx2 + self.dy2 * other.dy2
    }

    pub fn cross(self, other: Translation) -> i64 {
        self.dx2 * other.dy2 - self.dy2 * other.dx2
    }
}

impl Add<Translation> for Square {
    type Output = Square;
    fn add(self, t: Translation) -> Square {
        Square::new(self.x2 + t.dx2, self.y2 + t.dy2)
    }
}

impl Sub<Translation> for Square {
    type Output = Square;
    fn sub(self, t: Translation) -> Square {
        Square::new(self.x2 - t.dx2, self.y2 - t.dy2)
    }
}

impl Sub for Square {
    type Output = Translation;
    fn sub(self, other: Square) -> Translation {
        Translation::new(self.x2 - other.x2, self.y2 - other.y2)
    }
}

impl Add for Translation {
    type Output = Translation;
    fn add(self, t: Translation) -> Translation {
        Translation::new(self.dx2 + t.dx2, self.dy2 + t.dy2)
    }
}

impl AddAssign for Translation {
    fn add_assign(&mut self, t: Translation) {
        self.dx2 += t.dx2;
        self.dy2 += t.dy2;
    }
}

impl Neg for Translation {
    type Output = Translation;
    fn neg(self) -> Translation {
        Translation::new(-self.dx2, -self.dy2)
    }
}

/// A (p, q)-leaper in canonical order p ≤ q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Leaper {
    p: i64,
    q: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid leaper ({0}, {1})")]
pub struct InvalidLeaper(pub i64, pub i64);

impl Leaper {
    /// Builds a leaper from its two step lengths in either order.
    pub fn new(a: i64, b: i64) -> Result<Self, InvalidLeaper> {
        if a < 0 || b < 0 || (a == 0 && b == 0) {
            return Err(InvalidLeaper(a, b));
        }
        Ok(Leaper { p: a.min(b), q: a.max(b) })
    }

    /// Panicking constructor for literals known to be valid.
    pub fn of(a: i64, b: i64) -> Self {
        Self::new(a, b).expect("valid leaper literal")
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn is_orthogonal(self) -> bool {
        self.p == 0
    }

    pub fn is_diagonal(self) -> bool {
        self.p == self.q
    }

    pub fn is_skew(self) -> bool {
        0 < self.p && self.p < self.q
    }

    pub fn is_basic(self) -> bool {
        num_integer::gcd(self.p, self.q) == 1 && (self.p + self.q) % 2 == 1
    }

    /// The distinct move translations, in the order of the skew directions 1..8.
    pub fn translations(self) -> Vec<Translation> {
        let mut out: Vec<Translation> = Vec::with_capacity(8);
        for m in Mat2::DIRECTIONS {
            let (x, y) = m.apply(self.p, self.q);
            let t = Translation::real(x, y);
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }

    pub fn is_move(self, t: Translation) -> bool {
        let (ax, ay) = (t.dx2.abs(), t.dy2.abs());
        let (p2, q2) = (2 * self.p, 2 * self.q);
        (ax == p2 && ay == q2) || (ax == q2 && ay == p2)
    }
}

impl TryFrom<[i64; 2]> for Leaper {
    type Error = InvalidLeaper;
    fn try_from(v: [i64; 2]) -> Result<Self, InvalidLeaper> {
        Leaper::new(v[0], v[1])
    }
}

impl From<Leaper> for [i64; 2] {
    fn from(l: Leaper) -> Self {
        [l.p, l.q]
    }
}

impl fmt::Display for Leaper {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// A 2×2 integer matrix [[a, b], [c, d]].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub const IDENTITY: Mat2 = Mat2::new(1, 0, 0, 1);
    pub const ZERO: Mat2 = Mat2::new(0, 0, 0, 0);

    /// The direction matrices A_1..A_8, counterclockwise from (q, p).
    pub const DIRECTIONS: [Mat2; 8] = [
        Mat2::new(0, 1, 1, 0),
        Mat2::new(1, 0, 0, 1),
        Mat2::new(-1, 0, 0, 1),
        Mat2::new(0, -1, 1, 0),
        Mat2::new(0, -1, -1, 0),
        Mat2::new(-1, 0, 0, -1),
        Mat2::new(1, 0, 0, -1),
        Mat2::new(0, 1, -1, 0),
    ];

    pub fn apply(self, x: i64, y: i64) -> (i64, i64) {
        (self.a * x + self.b * y, self.c * x + self.d * y)
    }

    pub fn det(self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn transpose(self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(self) -> Option<Mat2> {
        match self.det() {
            1 => Some(Mat2::new(self.d, -self.b, -self.c, self.a)),
            -1 => Some(Mat2::new(-self.d, self.b, self.c, -self.a)),
            _ => None,
        }
    }

    pub fn scale(self, k: i64) -> Mat2 {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// Exact division of every entry, if possible.
    pub fn div_exact(self, k: i64) -> Option<Mat2> {
        let all = [self.a, self.b, self.c, self.d];
        if k == 0 || all.iter().any(|v| v % k != 0) {
            return None;
        }
        Some(Mat2::new(self.a / k, self.b / k, self.c / k, self.d / k))
    }
}

impl From<[[i64; 2]; 2]> for Mat2 {
    fn from(m: [[i64; 2]; 2]) -> Self {
        Mat2::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<Mat2> for [[i64; 2]; 2] {
    fn from(m: Mat2) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1)
    }
}

impl AddAssign for Mat2 {
    fn add_assign(&mut self, o: Mat2) {
        *self = *self + o;
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The eight sections of a frame (and the eight rays of a perfect cycle),
/// counterclockwise from east.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Section {
    E,
    NE,
    N,
    NW,
    W,
    SW,
    S,
    SE,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::E,
        Section::NE,
        Section::N,
        Section::NW,
        Section::W,
        Section::SW,
        Section::S,
        Section::SE,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: i64) -> Section {
        Section::ALL[i.rem_euclid(8) as usize]
    }

    pub fn offset(self, k: i64) -> Section {
        Section::from_index(self.index() as i64 + k)
    }

    pub fn is_side(self) -> bool {
        self.index() % 2 == 0
    }

    /// Quarter turns taking the base section (E for sides, NE for corners) to this one.
    pub fn quarter_turns(self) -> i64 {
        (self.index() / 2) as i64
    }

    /// Direction of the ray through the middle of the section.
    pub fn ray(self) -> Translation {
        const RAYS: [(i64, i64); 8] =
            [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
        let (x, y) = RAYS[self.index()];
        Translation::new(x, y)
    }

    pub fn name(self) -> &'static str {
        ["E", "NE", "N", "NW", "W", "SW", "S", "SE"][self.index()]
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
