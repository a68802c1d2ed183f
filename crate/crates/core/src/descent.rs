//! Descents, lift matrices, even continued fractions and the cycle-type table.

use crate::geometry::{Leaper, Mat2};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DescentError {
    #[error("({0}, {1}) is not a skew basic leaper")]
    NotSkewBasic(i64, i64),
    #[error("invalid character {0:?} in descent")]
    BadChar(char),
    #[error("malformed even continued fraction: {0}")]
    InvalidEcf(String),
    #[error("type index {index} out of range 1..={k}")]
    TypeOutOfRange { index: usize, k: usize },
}

/// One of the lifting transformations; `HBar` only occurs in extended descents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiftKind {
    F,
    G,
    H,
    HBar,
}

impl LiftKind {
    pub const CORE: [LiftKind; 3] = [LiftKind::F, LiftKind::G, LiftKind::H];
    pub const EXTENDED: [LiftKind; 4] = [LiftKind::F, LiftKind::G, LiftKind::H, LiftKind::HBar];

    pub fn matrix(self) -> Mat2 {
        match self {
            LiftKind::F => Mat2::new(1, 0, 2, 1),
            LiftKind::G => Mat2::new(0, 1, -1, 2),
            LiftKind::H | LiftKind::HBar => Mat2::new(0, 1, 1, 2),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            LiftKind::F => 'f',
            LiftKind::G => 'g',
            LiftKind::H => 'h',
            LiftKind::HBar => 'ħ',
        }
    }

    /// Accepts `H` as an ASCII spelling of ħ.
    pub fn from_symbol(c: char) -> Result<Self, DescentError> {
        match c {
            'f' => Ok(LiftKind::F),
            'g' => Ok(LiftKind::G),
            'h' => Ok(LiftKind::H),
            'ħ' | 'H' => Ok(LiftKind::HBar),
            _ => Err(DescentError::BadChar(c)),
        }
    }

    /// Frame proportions after lifting an (m, n) frame.
    pub fn lift_params(self, m: i64, n: i64) -> (i64, i64) {
        match self {
            LiftKind::F => (m, 2 * m + n),
            LiftKind::G => (n, 2 * n - m),
            LiftKind::H | LiftKind::HBar => (n, m + 2 * n),
        }
    }
}

pub fn lift_matrix(kind: LiftKind) -> Mat2 {
    kind.matrix()
}

/// A string of lifts e₁e₂…e_l; e₁ is applied last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Descent(pub Vec<LiftKind>);

impl Descent {
    pub fn empty() -> Self {
        Descent(Vec::new())
    }

    pub fn chars(&self) -> &[LiftKind] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_core(&self) -> bool {
        !self.0.contains(&LiftKind::HBar)
    }

    pub fn suffix(&self, from: usize) -> Descent {
        Descent(self.0[from..].to_vec())
    }

    pub fn concat(&self, other: &Descent) -> Descent {
        Descent(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn push(&self, k: LiftKind) -> Descent {
        let mut v = self.0.clone();
        v.push(k);
        Descent(v)
    }

    /// All descents over `alphabet` of length ≤ `max_len`, shortest first.
    pub fn enumerate(alphabet: &[LiftKind], max_len: usize) -> Vec<Descent> {
        let mut out = vec![Descent::empty()];
        let mut layer = vec![Descent::empty()];
        for _ in 0..max_len {
            layer = layer.iter().flat_map(|d| alphabet.iter().map(move |&k| d.push(k))).collect();
            out.extend(layer.iter().cloned());
        }
        out
    }
}

impl fmt::Display for Descent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.0 {
            write!(f, "{}", k.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Descent {
    type Err = DescentError;
    fn from_str(s: &str) -> Result<Self, DescentError> {
        s.chars().map(LiftKind::from_symbol).collect::<Result<Vec<_>, _>>().map(Descent)
    }
}

impl Serialize for Descent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The peel loop reducing a skew basic leaper to the (1, 2)-leaper.
pub fn descent_of(p: i64, q: i64) -> Result<Descent, DescentError> {
    let skew_basic = Leaper::new(p, q).map(|l| l.is_skew() && l.is_basic()).unwrap_or(false);
    if !skew_basic || p > q {
        return Err(DescentError::NotSkewBasic(p, q));
    }
    let (mut p, mut q) = (p, q);
    let mut chars = Vec::new();
    while (p, q) != (1, 2) {
        if 3 * p < q {
            chars.push(LiftKind::F);
            q -= 2 * p;
        } else if 2 * p > q {
            chars.push(LiftKind::G);
            (p, q) = (2 * p - q, p);
        } else {
            chars.push(LiftKind::H);
            (p, q) = (q - 2 * p, p);
        }
    }
    Ok(Descent(chars))
}

/// A_{e₁}···A_{e_l}.
pub fn matrix_product(e: &Descent) -> Mat2 {
    e.0.iter().fold(Mat2::IDENTITY, |acc, k| acc * k.matrix())
}

/// The leaper A_e·(1, 2)ᵀ.
pub fn leaper_of_descent(e: &Descent) -> Leaper {
    let (p, q) = matrix_product(e).apply(1, 2);
    Leaper::of(p, q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An even continued fraction c₁ ± 1/(c₂ ± 1/(… c_k)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ecf {
    pub terms: Vec<i64>,
    /// signs[i] follows terms[i]; one fewer than the terms.
    pub signs: Vec<Sign>,
}

impl Ecf {
    pub fn k(&self) -> usize {
        self.terms.len()
    }

    fn validate(&self) -> Result<(), DescentError> {
        if self.terms.is_empty() || self.signs.len() + 1 != self.terms.len() {
            return Err(DescentError::InvalidEcf(format!("{self}")));
        }
        if self.terms.iter().any(|c| c % 2 != 0 || *c < 0) || self.terms[1..].iter().any(|&c| c == 0) {
            return Err(DescentError::InvalidEcf(format!("{self}")));
        }
        Ok(())
    }
}

impl fmt::Display for Ecf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
            if let Some(s) = self.signs.get(i) {
                write!(f, "{}", s.symbol())?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for Ecf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn ecf_of_descent(e: &Descent) -> Result<Ecf, DescentError> {
    let mut terms = Vec::new();
    let mut signs = Vec::new();
    let mut run = 0;
    for &k in &e.0 {
        match k {
            LiftKind::F => run += 1,
            LiftKind::G | LiftKind::H => {
                terms.push(2 * run + 2);
                signs.push(if k == LiftKind::G { Sign::Minus } else { Sign::Plus });
                run = 0;
            }
            LiftKind::HBar => return Err(DescentError::BadChar('ħ')),
        }
    }
    terms.push(2 * run + 2);
    Ok(Ecf { terms, signs })
}

pub fn descent_of_ecf(ecf: &Ecf) -> Result<Descent, DescentError> {
    ecf.validate()?;
    if ecf.terms.iter().any(|&c| c < 2) {
        return Err(DescentError::InvalidEcf(format!("{ecf}: terms must be at least 2")));
    }
    let mut chars = Vec::new();
    for (i, &c) in ecf.terms.iter().enumerate() {
        chars.extend(std::iter::repeat(LiftKind::F).take(((c - 2) / 2) as usize));
        if let Some(s) = ecf.signs.get(i) {
            chars.push(if *s == Sign::Minus { LiftKind::G } else { LiftKind::H });
        }
    }
    Ok(Descent(chars))
}

/// Bottom-up exact evaluation.
pub fn ecf_value(ecf: &Ecf) -> Result<Rational, DescentError> {
    ecf.validate()?;
    let mut value = Rational::from_integer(BigInt::from(*ecf.terms.last().unwrap()));
    for i in (0..ecf.terms.len() - 1).rev() {
        if value.is_zero() {
            return Err(DescentError::InvalidEcf(format!("{ecf}: vanishing tail")));
        }
        let tail = value.recip();
        let c = Rational::from_integer(BigInt::from(ecf.terms[i]));
        value = match ecf.signs[i] {
            Sign::Plus => c + tail,
            Sign::Minus => c - tail,
        };
    }
    Ok(value)
}

/// l_i/d_i: the ECF truncated at c_i with "2−" inserted between consecutive terms.
pub fn cycle_length_ratio(ecf: &Ecf, i: usize) -> Result<Rational, DescentError> {
    if i == 0 || i > ecf.k() {
        return Err(DescentError::TypeOutOfRange { index: i, k: ecf.k() });
    }
    let mut terms = Vec::with_capacity(2 * i);
    let mut signs = Vec::with_capacity(2 * i);
    for j in 0..i {
        terms.push(ecf.terms[j]);
        if j + 1 < i {
            signs.push(ecf.signs[j]);
            terms.push(2);
            signs.push(Sign::Minus);
        }
    }
    ecf_value(&Ecf { terms, signs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleTypeRecord {
    pub index: usize,
    pub second_leaper: Leaper,
    pub count: i64,
    pub l: i64,
    pub d: i64,
    pub length: i64,
    /// The g/h character that created the type; none for the deepest type.
    #[serde(serialize_with = "serialize_origin")]
    pub origin: Option<LiftKind>,
    pub third_leaper: bool,
}

fn serialize_origin<S: serde::Serializer>(o: &Option<LiftKind>, s: S) -> Result<S::Ok, S::Error> {
    match o {
        Some(k) => s.serialize_str(&k.symbol().to_string()),
        None => s.serialize_none(),
    }
}

fn small(r: &BigInt) -> i64 {
    i64::try_from(r).expect("cycle lengths fit in 64 bits")
}

/// One record per cycle type, shallowest (shortest) first.
pub fn cycle_type_table(p: i64, q: i64) -> Result<Vec<CycleTypeRecord>, DescentError> {
    let e = descent_of(p, q)?;
    let ecf = ecf_of_descent(&e)?;
    let creators: Vec<usize> =
        e.0.iter().enumerate().filter(|(_, k)| **k != LiftKind::F).map(|(i, _)| i).collect();
    let k = creators.len() + 1;
    let mut out = Vec::with_capacity(k);
    for i in 1..=k {
        let (second_leaper, origin) = if i < k {
            let pos = creators[i - 1];
            (leaper_of_descent(&e.suffix(pos + 1)), Some(e.0[pos]))
        } else {
            (Leaper::of(0, 1), None)
        };
        let ratio = cycle_length_ratio(&ecf, i)?;
        let (l, d) = (small(ratio.numer()), small(ratio.denom()));
        let count = (second_leaper.q() - second_leaper.p()).pow(2);
        let third_leaper = i == k && ecf.terms[k - 1] == 2 && l % 3 != 0;
        out.push(CycleTypeRecord { index: i, second_leaper, count, l, d, length: 4 * l, origin, third_leaper });
    }
    Ok(out)
}

/// Convenience: q/p as an exact rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(q), BigInt::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Descent {
        s.parse().unwrap()
    }

    /// Oracle: evaluate a continued fraction top-down through convergents p_n/q_n.
    fn convergent_oracle(ecf: &Ecf) -> (i64, i64) {
        // h_n = c_n h_{n-1} + s_{n-1} h_{n-2}, with s the sign preceding c_n.
        let (mut h2, mut h1) = (0i64, 1i64);
        let (mut k2, mut k1) = (1i64, 0i64);
        let mut prev_sign = 1i64;
        for (i, &c) in ecf.terms.iter().enumerate() {
            let h = c * h1 + prev_sign * h2;
            let k = c * k1 + prev_sign * k2;
            (h2, h1, k2, k1) = (h1, h, k1, k);
            prev_sign = match ecf.signs.get(i) {
                Some(Sign::Minus) => -1,
                _ => 1,
            };
        }
        let g = num_integer::gcd(h1, k1);
        (h1 / g, k1 / g)
    }

    #[test]
    fn descent_examples() {
        assert_eq!(descent_of(18, 41).unwrap(), d("hfgh"));
        assert_eq!(descent_of(1, 2).unwrap(), d(""));
        assert_eq!(descent_of(3, 4).unwrap(), d("gg"));
        assert!(descent_of(1, 3).is_err());
        assert!(descent_of(2, 2).is_err());
        assert!(descent_of(0, 1).is_err());
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(matrix_product(&d("hfgh")).apply(1, 2), (18, 41));
        // Step by step: A_h(1,2) = (2,5); A_g(2,5) = (5,8); A_f(5,8) = (5,18); A_h(5,18) = (18,41).
        assert_eq!(LiftKind::H.matrix().apply(1, 2), (2, 5));
        assert_eq!(LiftKind::G.matrix().apply(2, 5), (5, 8));
        assert_eq!(LiftKind::F.matrix().apply(5, 8), (5, 18));
        assert_eq!(LiftKind::H.matrix().apply(5, 18), (18, 41));
        assert_eq!(matrix_product(&d("")), Mat2::IDENTITY);
        assert_eq!(LiftKind::H.matrix().apply(0, 1), (1, 2));
        for k in LiftKind::EXTENDED {
            assert_eq!(k.matrix().det().abs(), 1);
        }
    }

    #[test]
    fn ecf_examples() {
        let e = ecf_of_descent(&d("hfgh")).unwrap();
        assert_eq!(e.to_string(), "[2+, 4-, 2+, 2]");
        assert_eq!(ecf_value(&e).unwrap(), ratio(18, 41));
        assert_eq!(convergent_oracle(&e), (41, 18));
        let e = ecf_of_descent(&d("g")).unwrap();
        assert_eq!(e.to_string(), "[2-, 2]");
        assert_eq!(ecf_value(&e).unwrap(), ratio(2, 3));
        let e = ecf_of_descent(&d("")).unwrap();
        assert_eq!(ecf_value(&e).unwrap(), ratio(1, 2));
        let e = Ecf { terms: vec![2, 2], signs: vec![Sign::Plus] };
        assert_eq!(ecf_value(&e).unwrap(), ratio(2, 5));
        assert!(descent_of_ecf(&Ecf { terms: vec![3], signs: vec![] }).is_err());
        assert!(descent_of_ecf(&Ecf { terms: vec![2, 2], signs: vec![] }).is_err());
    }

    #[test]
    fn length_ratio_examples() {
        let e = ecf_of_descent(&d("g")).unwrap();
        assert_eq!(cycle_length_ratio(&e, 2).unwrap(), ratio(3, 4));
        assert_eq!(cycle_length_ratio(&e, 1).unwrap(), ratio(1, 2));
        let e = ecf_of_descent(&d("h")).unwrap();
        assert_eq!(cycle_length_ratio(&e, 2).unwrap(), ratio(3, 8));
        assert!(cycle_length_ratio(&e, 3).is_err());
    }

    #[test]
    fn type_table_examples() {
        let t = cycle_type_table(2, 3).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].second_leaper, t[0].count, t[0].length, t[0].third_leaper), (Leaper::of(1, 2), 1, 8, false));
        assert_eq!((t[1].second_leaper, t[1].count, t[1].length, t[1].third_leaper), (Leaper::of(0, 1), 1, 16, true));
        let t = cycle_type_table(2, 5).unwrap();
        assert_eq!((t[0].second_leaper, t[0].length), (Leaper::of(1, 2), 8));
        assert_eq!((t[1].second_leaper, t[1].length, t[1].third_leaper), (Leaper::of(0, 1), 32, true));
        let t = cycle_type_table(3, 8).unwrap();
        assert_eq!(descent_of(3, 8).unwrap(), d("hg"));
        let leapers: Vec<Leaper> = t.iter().map(|r| r.second_leaper).collect();
        assert_eq!(leapers, vec![Leaper::of(2, 3), Leaper::of(1, 2), Leaper::of(0, 1)]);
        assert!(t.iter().all(|r| r.count == 1));
        let t = cycle_type_table(1, 2).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!((t[0].second_leaper, t[0].length, t[0].origin), (Leaper::of(0, 1), 8, None));
    }

    /// Oracle for lengths: iterate the (d, l) recurrence of each lift from the shell base.
    fn length_oracle(e: &Descent, creator: Option<usize>) -> (i64, i64) {
        let (mut d, mut l, upto) = match creator {
            Some(pos) => (1, 2, pos),
            None => (1, 2, e.len()),
        };
        for k in e.0[..upto].iter().rev() {
            (d, l) = match k {
                LiftKind::F => (d, 2 * d + l),
                LiftKind::G => (2 * l - d, 3 * l - 2 * d),
                _ => (2 * l - d, 5 * l - 2 * d),
            };
        }
        (l, d)
    }

    #[test]
    fn lengths_match_recurrence_oracle() {
        for e in Descent::enumerate(&LiftKind::CORE, 6) {
            let l = leaper_of_descent(&e);
            let t = cycle_type_table(l.p(), l.q()).unwrap();
            let creators: Vec<usize> =
                e.0.iter().enumerate().filter(|(_, k)| **k != LiftKind::F).map(|(i, _)| i).collect();
            for r in &t {
                let oracle = length_oracle(&e, creators.get(r.index - 1).copied());
                assert_eq!((r.l, r.d), oracle, "descent {e}, type {}", r.index);
            }
        }
    }

    #[test]
    fn ecf_value_is_q_over_p_up_to_101() {
        for s in 3..=101i64 {
            for p in 1..(s + 1) / 2 {
                let q = s - p;
                if num_integer::gcd(p, q) != 1 || s % 2 == 0 {
                    continue;
                }
                let e = descent_of(p, q).unwrap();
                let ecf = ecf_of_descent(&e).unwrap();
                assert_eq!(ecf_value(&ecf).unwrap(), ratio(p, q));
                assert_eq!(descent_of_ecf(&ecf).unwrap(), e);
            }
        }
    }

    #[test]
    fn descents_are_injective() {
        let mut seen = std::collections::HashMap::new();
        for s in 3..=31i64 {
            for p in 1..(s + 1) / 2 {
                let q = s - p;
                if let Ok(e) = descent_of(p, q) {
                    assert!(seen.insert(e.clone(), (p, q)).is_none(), "{e} repeated");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn descent_round_trips(chars in proptest::collection::vec(0usize..3, 0..=8)) {
            let e = Descent(chars.into_iter().map(|i| LiftKind::CORE[i]).collect());
            let l = leaper_of_descent(&e);
            prop_assert_eq!(descent_of(l.p(), l.q()).unwrap(), e.clone());
            prop_assert_eq!(descent_of_ecf(&ecf_of_descent(&e).unwrap()).unwrap(), e.clone());
            let (mut m, mut n) = (1, 2);
            for k in e.0.iter().rev() {
                (m, n) = k.lift_params(m, n);
            }
            prop_assert_eq!((m, n), (l.p(), l.q()));
            let ecf = ecf_of_descent(&e).unwrap();
            prop_assert_eq!(convergent_oracle(&ecf), (l.q(), l.p()));
        }
    }
}
