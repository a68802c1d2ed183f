//! Signatures: cyclic strings over {+s, +c, −s, −c} that determine direction cycles.

use crate::descent::{Descent, LiftKind};
use crate::direction::{DirectionGraph, Label};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subscript {
    S,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigChar {
    pub positive: bool,
    pub sub: Subscript,
}

pub const PLUS_S: SigChar = SigChar { positive: true, sub: Subscript::S };
pub const PLUS_C: SigChar = SigChar { positive: true, sub: Subscript::C };
pub const MINUS_S: SigChar = SigChar { positive: false, sub: Subscript::S };
pub const MINUS_C: SigChar = SigChar { positive: false, sub: Subscript::C };

impl SigChar {
    /// Swaps the sign.
    pub fn bar(self) -> SigChar {
        SigChar { positive: !self.positive, ..self }
    }

    /// Swaps sign and subscript.
    pub fn double_bar(self) -> SigChar {
        let sub = match self.sub {
            Subscript::S => Subscript::C,
            Subscript::C => Subscript::S,
        };
        SigChar { positive: !self.positive, sub }
    }

    /// Serialization letter: S, C, s, c for +s, +c, −s, −c.
    pub fn letter(self) -> char {
        match (self.positive, self.sub) {
            (true, Subscript::S) => 'S',
            (true, Subscript::C) => 'C',
            (false, Subscript::S) => 's',
            (false, Subscript::C) => 'c',
        }
    }

    pub fn from_letter(c: char) -> Option<SigChar> {
        Some(match c {
            'S' => PLUS_S,
            'C' => PLUS_C,
            's' => MINUS_S,
            'c' => MINUS_C,
            _ => return None,
        })
    }

    fn index(self) -> usize {
        match (self.positive, self.sub) {
            (true, Subscript::S) => 0,
            (true, Subscript::C) => 1,
            (false, Subscript::S) => 2,
            (false, Subscript::C) => 3,
        }
    }
}

impl fmt::Display for SigChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { '+' } else { '−' };
        let sub = if self.sub == Subscript::S { 's' } else { 'c' };
        write!(f, "{sign}{sub}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("bad signature letter {0:?}")]
    BadLetter(char),
    #[error("signature {0} does not close into a direction cycle")]
    InconsistentSignature(String),
    #[error("counts ({0}, {1}) are not generated by any descent")]
    NotRealizable(i64, i64),
}

/// A cyclic signature string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<SigChar>);

impl Signature {
    pub fn chars(&self) -> &[SigChar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lexicographically least rotation, by serialization letter.
    pub fn canonical_rotation(&self) -> Signature {
        let n = self.0.len();
        let key = |k: usize| -> String { (0..n).map(|j| self.0[(j + k) % n].letter()).collect() };
        let best = (0..n).min_by_key(|&k| key(k)).unwrap_or(0);
        Signature((0..n).map(|j| self.0[(j + best) % n]).collect())
    }

    pub fn is_rotation_of(&self, other: &Signature) -> bool {
        self.canonical_rotation() == other.canonical_rotation()
    }

    /// (s-type count, c-type count), both signs included.
    pub fn counts(&self) -> (i64, i64) {
        let s = self.0.iter().filter(|c| c.sub == Subscript::S).count() as i64;
        (s, self.0.len() as i64 - s)
    }

    /// The "+s+c−s" form.
    pub fn pretty(&self) -> String {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    fn repeat(word: &[SigChar], times: usize) -> Signature {
        Signature(word.iter().copied().cycle().take(word.len() * times).collect())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{}", c.letter()))
    }
}

impl FromStr for Signature {
    type Err = SignatureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars().map(|c| SigChar::from_letter(c).ok_or(SignatureError::BadLetter(c))).collect::<Result<_, _>>().map(Signature)
    }
}

fn word(s: &str) -> Vec<SigChar> {
    s.chars().map(|c| SigChar::from_letter(c).expect("static word")).collect()
}

/// Images of +s and +c under a single rewrite.
fn rewrite_rule(kind: LiftKind) -> (Vec<SigChar>, Vec<SigChar>) {
    match kind {
        LiftKind::F => (word("s"), word("SCS")),
        LiftKind::G => (word("CSC"), word("c")),
        LiftKind::H => (word("SCSCS"), word("scs")),
        LiftKind::HBar => (word("csc"), word("CSCSC")),
    }
}

fn bar_word(w: &[SigChar]) -> Vec<SigChar> {
    w.iter().map(|c| c.bar()).collect()
}

/// Character-wise rewrite; negative characters map to the barred image.
pub fn rewrite(kind: LiftKind, sig: &Signature) -> Signature {
    let (on_s, on_c) = rewrite_rule(kind);
    let mut out = Vec::new();
    for &ch in &sig.0 {
        let img = if ch.sub == Subscript::S { &on_s } else { &on_c };
        if ch.positive {
            out.extend_from_slice(img);
        } else {
            out.extend(bar_word(img));
        }
    }
    Signature(out)
}

/// A corner word and a side word; a signature is (corner side)⁴.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CornerSidePair {
    pub corner: Vec<SigChar>,
    pub side: Vec<SigChar>,
}

impl CornerSidePair {
    pub fn base() -> Self {
        CornerSidePair { corner: vec![PLUS_S], side: vec![PLUS_C] }
    }

    pub fn expand(&self) -> Signature {
        let mut w = self.corner.clone();
        w.extend_from_slice(&self.side);
        Signature::repeat(&w, 4)
    }

    pub fn is_palindromic(&self) -> bool {
        let pal = |w: &[SigChar]| w.len() % 2 == 1 && w.iter().eq(w.iter().rev());
        pal(&self.corner) && pal(&self.side)
    }
}

pub fn rearrange(kind: LiftKind, pair: &CornerSidePair) -> CornerSidePair {
    let (c, s) = (&pair.corner, &pair.side);
    let (cb, sb) = (bar_word(c), bar_word(s));
    let cat = |parts: &[&Vec<SigChar>]| -> Vec<SigChar> { parts.iter().flat_map(|p| p.iter().copied()).collect() };
    let (corner, side) = match kind {
        LiftKind::F => (cat(&[s, c, s]), sb),
        LiftKind::G => (cb.clone(), cat(&[c, s, c])),
        LiftKind::H => (cat(&[c, s, c, s, c]), cat(&[&cb, &sb, &cb])),
        LiftKind::HBar => (cat(&[&sb, &cb, &sb]), cat(&[s, c, s, c, s])),
    };
    CornerSidePair { corner, side }
}

/// R_e((+s+c)⁴), the last character of e applied first.
pub fn signature_of_descent(e: &Descent) -> Signature {
    e.chars().iter().rev().fold(CornerSidePair::base().expand(), |sig, &k| rewrite(k, &sig))
}

/// W_e(+s, +c), the last character of e applied first.
pub fn corner_side_of_descent(e: &Descent) -> CornerSidePair {
    e.chars().iter().rev().fold(CornerSidePair::base(), |p, &k| rearrange(k, &p))
}

/// Which move-direction table assigns signature characters to squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LabelScheme {
    /// Cycles of the leaper itself.
    Leaper,
    /// Second cycles by origin.
    OriginG,
    OriginH,
    OriginF,
}

impl LabelScheme {
    pub fn of_origin(origin: LiftKind) -> Option<LabelScheme> {
        match origin {
            LiftKind::G => Some(LabelScheme::OriginG),
            LiftKind::H => Some(LabelScheme::OriginH),
            LiftKind::F => Some(LabelScheme::OriginF),
            LiftKind::HBar => None,
        }
    }

    /// (in, out) direction pairs for +s, +c, −s, −c.
    pub fn table(self) -> [[(Label, Label); 4]; 4] {
        let rows: [&str; 4] = match self {
            LabelScheme::Leaper => ["14365872", "25476183", "27416385", "16385274"],
            LabelScheme::OriginG => ["25476183", "18325476", "16385274", "23456781"],
            LabelScheme::OriginH => ["12345678", "23456781", "21436587", "18325476"],
            LabelScheme::OriginF => ["21436587", "14365872", "12345678", "27416385"],
        };
        rows.map(|r| {
            let b = r.as_bytes();
            std::array::from_fn(|j| (b[2 * j] - b'0', b[2 * j + 1] - b'0'))
        })
    }

    pub fn out_direction(self, ch: SigChar, inward: Label) -> Option<Label> {
        self.table()[ch.index()].iter().find(|&&(i, _)| i == inward).map(|&(_, o)| o)
    }

    /// Recovers the character of a square from the directions into and out of it.
    pub fn classify(self, inward: Label, outward: Label) -> Option<SigChar> {
        [PLUS_S, PLUS_C, MINUS_S, MINUS_C].into_iter().find(|&c| self.out_direction(c, inward) == Some(outward))
    }
}

/// Walks the signature through the table: direction 1 when admissible, else 2.
pub fn generate_cycle(sig: &Signature, scheme: LabelScheme) -> Result<Vec<Label>, SignatureError> {
    let bad = || SignatureError::InconsistentSignature(sig.to_string());
    let first = *sig.0.first().ok_or_else(bad)?;
    let start = if scheme.out_direction(first, 1).is_some() { 1 } else { 2 };
    let mut inward = start;
    let mut labels = Vec::with_capacity(sig.len());
    for &ch in &sig.0 {
        let out = scheme.out_direction(ch, inward).ok_or_else(bad)?;
        labels.push(out);
        inward = out;
    }
    if inward != start {
        return Err(bad());
    }
    Ok(labels)
}

/// Φ(e): the direction cycle of every leaper cycle with descent e.
pub fn fundamental_cycle(e: &Descent) -> DirectionGraph {
    let labels = generate_cycle(&signature_of_descent(e), LabelScheme::Leaper).expect("rewrite-generated signatures close");
    DirectionGraph::cycle(&labels)
}

/// Φ^II_o(e): the direction cycle of canonical second cycles of descent e and origin o.
pub fn second_fundamental(origin: LiftKind, e: &Descent) -> Option<DirectionGraph> {
    let scheme = LabelScheme::of_origin(origin)?;
    let labels = generate_cycle(&corner_side_of_descent(e).expand(), scheme).expect("rearrangement-generated signatures close");
    Some(DirectionGraph::cycle(&labels))
}

/// Reads the signature off an oriented direction cycle.
pub fn signature_of_labels(labels: &[Label], scheme: LabelScheme) -> Option<Signature> {
    let n = labels.len();
    (0..n).map(|j| scheme.classify(labels[(j + n - 1) % n], labels[j])).collect::<Option<Vec<_>>>().map(Signature)
}

/// (n_s, n_c) by the linear recurrences from (4, 4).
pub fn ns_nc(e: &Descent) -> (i64, i64) {
    e.chars().iter().rev().fold((4, 4), |(s, c), k| match k {
        LiftKind::F => (s + 2 * c, c),
        LiftKind::G => (s, 2 * s + c),
        LiftKind::H => (3 * s + 2 * c, 2 * s + c),
        LiftKind::HBar => (s + 2 * c, 2 * s + 3 * c),
    })
}

/// Peels descent characters off (n_s, n_c) until (4, 4) remains.
pub fn recover_descent(counts: (i64, i64)) -> Result<Descent, SignatureError> {
    let (mut a, mut b) = counts;
    let mut out = Vec::new();
    while (a, b) != (4, 4) {
        if a < 4 || b < 4 {
            return Err(SignatureError::NotRealizable(counts.0, counts.1));
        }
        let (kind, next) = if a > 2 * b {
            (LiftKind::F, (a - 2 * b, b))
        } else if 2 * a < b {
            (LiftKind::G, (a, b - 2 * a))
        } else if 2 * b > a && a > b {
            (LiftKind::H, (-a + 2 * b, 2 * a - 3 * b))
        } else if a < b && b < 2 * a {
            (LiftKind::HBar, (-3 * a + 2 * b, 2 * a - b))
        } else {
            return Err(SignatureError::NotRealizable(counts.0, counts.1));
        };
        out.push(kind);
        (a, b) = next;
    }
    Ok(Descent(out))
}

pub fn recover_descent_of_signature(sig: &Signature) -> Result<Descent, SignatureError> {
    recover_descent(sig.counts())
}

/// Reversed, with f and g exchanged.
pub fn flip(e: &Descent) -> Descent {
    Descent(
        e.chars()
            .iter()
            .rev()
            .map(|k| match k {
                LiftKind::F => LiftKind::G,
                LiftKind::G => LiftKind::F,
                other => *other,
            })
            .collect(),
    )
}

/// f ↔ g and h ↔ ħ in place.
pub fn companion(e: &Descent) -> Descent {
    Descent(
        e.chars()
            .iter()
            .map(|k| match k {
                LiftKind::F => LiftKind::G,
                LiftKind::G => LiftKind::F,
                LiftKind::H => LiftKind::HBar,
                LiftKind::HBar => LiftKind::H,
            })
            .collect(),
    )
}

pub fn equivalent_descents(a: &Descent, b: &Descent) -> bool {
    a == b || companion(a) == *b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::descent_of;
    use crate::direction::{
        cycle_graphs_equal, equivalent_as_cycles, extract_cycle, find_duality, find_duality_with_matrix, labels_from_str, named_permutation,
        verify_dual_pair,
    };
    use crate::frames::type_cycle;
    use crate::geometry::{Leaper, Mat2};
    use crate::descent::matrix_product;
    use proptest::prelude::*;

    fn d(s: &str) -> Descent {
        s.parse().unwrap()
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn bars() {
        assert_eq!(PLUS_S.bar(), MINUS_S);
        assert_eq!(PLUS_C.double_bar(), MINUS_S);
        assert_eq!(PLUS_S.double_bar(), MINUS_C);
    }

    #[test]
    fn rewrite_examples() {
        let base = sig("SCSCSCSC");
        assert_eq!(rewrite(LiftKind::F, &base), Signature::repeat(&word("sSCS"), 4));
        assert_eq!(rewrite(LiftKind::G, &base), Signature::repeat(&word("CSCc"), 4));
        assert_eq!(rewrite(LiftKind::H, &base), Signature::repeat(&word("SCSCSscs"), 4));
        assert_eq!(signature_of_descent(&d("f")), Signature::repeat(&word("sSCS"), 4));
        assert_eq!(signature_of_descent(&d("g")), Signature::repeat(&word("CSCc"), 4));
        assert_eq!(signature_of_descent(&d("")), base);
    }

    #[test]
    fn rearrangement_examples() {
        let b = CornerSidePair::base();
        assert_eq!(rearrange(LiftKind::F, &b), CornerSidePair { corner: word("CSC"), side: word("c") });
        assert_eq!(rearrange(LiftKind::G, &b), CornerSidePair { corner: word("s"), side: word("SCS") });
        assert_eq!(rearrange(LiftKind::H, &b), CornerSidePair { corner: word("SCSCS"), side: word("scs") });
    }

    #[test]
    fn generated_cycles() {
        assert!(cycle_graphs_equal(&fundamental_cycle(&d("")), &DirectionGraph::cycle(&labels_from_str("14725836"))));
        assert!(cycle_graphs_equal(&fundamental_cycle(&d("")), &DirectionGraph::cycle(&labels_from_str("47258361"))));
        let g = second_fundamental(LiftKind::G, &d("")).unwrap();
        assert!(cycle_graphs_equal(&g, &DirectionGraph::cycle(&labels_from_str("25476183"))));
        let h = second_fundamental(LiftKind::H, &d("")).unwrap();
        assert!(cycle_graphs_equal(&h, &DirectionGraph::cycle(&labels_from_str("34567812"))));
        assert!(generate_cycle(&sig("SSSSSSSS"), LabelScheme::Leaper).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(ns_nc(&d("")), (4, 4));
        assert_eq!(ns_nc(&d("f")), (12, 4));
        assert_eq!(ns_nc(&d("h")), (20, 12));
        assert_eq!(recover_descent((12, 4)).unwrap(), d("f"));
        assert_eq!(recover_descent((4, 4)).unwrap(), d(""));
        assert_eq!(recover_descent((20, 12)).unwrap(), d("h"));
        assert!(recover_descent((8, 8)).is_err());
        assert!(recover_descent((3, 4)).is_err());
    }

    #[test]
    fn flips_and_companions() {
        assert_eq!(flip(&d("f")), d("g"));
        assert_eq!(flip(&d("hfgh")), d("hfgh"));
        assert_eq!(companion(&d("hħ")), d("ħh"));
        assert!(equivalent_descents(&d("fh"), &d("għ")));
        assert!(equivalent_descents(&d("hħ"), &d("ħh")));
        assert!(!equivalent_descents(&d("hh"), &d("hħ")));
    }

    #[test]
    fn counts_and_signatures_agree_and_determine_descents() {
        for e in Descent::enumerate(&LiftKind::EXTENDED, 6) {
            let s = signature_of_descent(&e);
            assert_eq!(s.counts(), ns_nc(&e), "{e}");
            assert_eq!(recover_descent_of_signature(&s).unwrap(), e);
            assert_eq!(s.len() % 8, 0);
            let quarter = s.len() / 4;
            assert!((0..s.len()).all(|j| s.0[j] == s.0[(j + quarter) % s.len()]), "{e}");
        }
    }

    #[test]
    fn rearrangements_are_palindromic() {
        for e in Descent::enumerate(&LiftKind::EXTENDED, 5) {
            assert!(corner_side_of_descent(&e).is_palindromic(), "{e}");
        }
    }

    #[test]
    fn flip_bridge() {
        let pi_g = named_permutation("g").unwrap();
        let pi_h = named_permutation("h").unwrap();
        let pi_f = named_permutation("f").unwrap();
        for e in Descent::enumerate(&LiftKind::EXTENDED, 4) {
            let e2 = flip(&e);
            let (on_s, on_c) = e.chars().iter().rev().fold((vec![PLUS_S], vec![PLUS_C]), |(s, c), &k| {
                (rewrite(k, &Signature(s)).0, rewrite(k, &Signature(c)).0)
            });
            assert_eq!(CornerSidePair { corner: on_s, side: on_c }, corner_side_of_descent(&e2), "{e}");
            let phi = fundamental_cycle(&e);
            for (perm, origin) in [(&pi_g, LiftKind::G), (&pi_h, LiftKind::H), (&pi_f, LiftKind::F)] {
                let second = second_fundamental(origin, &e2).unwrap();
                assert!(cycle_graphs_equal(&phi.relabel(perm), &second), "{e} origin {}", origin.symbol());
            }
        }
    }

    #[test]
    fn descent_equivalence_matches_permutation_search() {
        let all = Descent::enumerate(&LiftKind::EXTENDED, 3);
        let cycles: Vec<DirectionGraph> = all.iter().map(fundamental_cycle).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                if a.len() != b.len() {
                    continue;
                }
                let by_search = equivalent_as_cycles(&cycles[i], &cycles[j]).is_some();
                assert_eq!(equivalent_descents(a, b), by_search, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn fundamental_cycles_match_extracted_cycles() {
        for (p, q) in [(1, 2), (1, 4), (2, 3), (3, 4), (2, 5), (3, 8), (4, 9), (5, 8)] {
            let e = descent_of(p, q).unwrap();
            let creators: Vec<usize> = e.chars().iter().enumerate().filter(|(_, k)| **k != LiftKind::F).map(|(i, _)| i).collect();
            for index in 1..=creators.len() + 1 {
                let (cycle, second) = type_cycle(p, q, index).unwrap();
                let prefix_end = if index <= creators.len() { creators[index - 1] } else { e.len() };
                let prefix = Descent(e.chars()[..prefix_end].to_vec());
                let phi = extract_cycle(Leaper::of(p, q), &cycle).unwrap();
                assert!(cycle_graphs_equal(&phi, &fundamental_cycle(&prefix)), "({p},{q}) type {index}");
                if second.leaper.is_skew() {
                    let origin_at = if index <= creators.len() { creators[index - 1] } else { *creators.last().unwrap() };
                    let second_prefix = Descent(e.chars()[..origin_at].to_vec());
                    let expected = second_fundamental(e.chars()[origin_at], &second_prefix).unwrap();
                    let got = extract_cycle(second.leaper, &second.squares()).unwrap();
                    assert!(cycle_graphs_equal(&got, &expected), "({p},{q}) type {index} second");
                }
            }
        }
    }

    #[test]
    fn fundamental_and_second_fundamental_are_dual() {
        for e in Descent::enumerate(&LiftKind::CORE, 3) {
            for origin in [LiftKind::G, LiftKind::H] {
                let phi = fundamental_cycle(&e);
                let second = second_fundamental(origin, &e).unwrap();
                let a = matrix_product(&e) * origin.matrix();
                assert!(find_duality(&second, &phi).is_some());
                let eta = find_duality_with_matrix(&second, &phi, a).expect("A_e·A_o is a duality matrix");
                assert!(verify_dual_pair(&second, &phi, &eta, a));
                let inverse: Vec<usize> = {
                    let mut v = vec![0; eta.len()];
                    for (x, &y) in eta.iter().enumerate() {
                        v[y] = x;
                    }
                    v
                };
                assert!(verify_dual_pair(&phi, &second, &inverse, a.unimodular_inverse().unwrap()));
            }
        }
        let knight = fundamental_cycle(&d(""));
        assert!(!verify_dual_pair(&knight, &knight, &(0..8).collect::<Vec<_>>(), Mat2::IDENTITY));
    }

    proptest! {
        #[test]
        fn signature_text_round_trips(e in proptest::collection::vec(0usize..4, 0..6)) {
            let e = Descent(e.into_iter().map(|i| LiftKind::EXTENDED[i]).collect());
            let s = signature_of_descent(&e);
            prop_assert_eq!(s.to_string().parse::<Signature>().unwrap(), s.clone());
            let labels = generate_cycle(&s, LabelScheme::Leaper).unwrap();
            prop_assert_eq!(signature_of_labels(&labels, LabelScheme::Leaper).unwrap(), s);
        }
    }
}
