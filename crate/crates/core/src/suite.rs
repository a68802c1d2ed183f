//! Exhaustive invariant sweeps. Each suite expands into independent cases that run in
//! parallel; results are collected in case order so output is deterministic.

use crate::board::{canonical_cycle, classify_cycle_types, decompose_center_board, graph_over, is_free, knuth_free_predicate, Board};
use crate::descent::{cycle_type_table, descent_of, leaper_of_descent, matrix_product, Descent, LiftKind};
use crate::direction::{cycle_class_key, cycle_graphs_equal, extract_cycle, find_duality_with_matrix, verify_dual_pair, DirectionGraph};
use crate::duality::{displacement_report, duality_identity_holds, psi_is_isomorphism, psi_permutation, side_corner_counts, verify_dual_board};
use crate::frames::{canonical_second_cycle, is_fully_symmetric, is_section_symmetric, section_visit_counts, third_leaper_cycle, type_cycle, Frame, ProperCycle};
use crate::geometry::{Leaper, Section, Square};
use crate::perfect::{build_dual_board, check_perfect, initial_cycle, lift_perfect, perfect_cycle};
use crate::pinwheel::{build_pinwheel, pinwheel_complement, pinwheel_direction_graph, pinwheel_eta, pinwheel_matrix, verify_pinwheel_dual, PinwheelSpec};
use crate::signature::{
    corner_side_of_descent, equivalent_descents, flip, fundamental_cycle, ns_nc, recover_descent, recover_descent_of_signature, rewrite,
    second_fundamental, signature_of_descent, CornerSidePair, Signature, PLUS_C, PLUS_S,
};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

pub const SUITES: [&str; 10] =
    ["second-leaper", "seclen-symm", "third-leaper", "knuth", "dirgraph", "flip-equiv", "perfect", "displacement", "pinwheel", "counts"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; known suites: {}", SUITES.join(", "))]
    UnknownSuite(String),
}

/// Sweep bounds; `None` picks the suite's default.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    /// Largest p + q.
    pub max_sum: Option<i64>,
    /// Longest descent.
    pub max_len: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub case: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<(String, String)>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }
}

type Check = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

fn case(id: impl Into<String>, f: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> (String, Check) {
    (id.into(), Box::new(f))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs a suite, feeding each outcome to `progress` in case order.
pub fn run_suite_with(name: &str, bounds: Bounds, mut progress: impl FnMut(&CaseOutcome)) -> Result<SuiteResult, SuiteError> {
    let cases = cases_for(name, bounds)?;
    let outcomes: Vec<CaseOutcome> = cases
        .par_iter()
        .map(|(id, check)| {
            let r = check();
            CaseOutcome { case: id.clone(), ok: r.is_ok(), diagnostic: r.err() }
        })
        .collect();
    let mut failures = Vec::new();
    for o in &outcomes {
        progress(o);
        if let Some(d) = &o.diagnostic {
            failures.push((o.case.clone(), d.clone()));
        }
    }
    Ok(SuiteResult { suite: name.to_string(), cases: outcomes.len(), failures })
}

pub fn run_suite(name: &str, bounds: Bounds) -> Result<SuiteResult, SuiteError> {
    run_suite_with(name, bounds, |_| {})
}

fn cases_for(name: &str, b: Bounds) -> Result<Vec<(String, Check)>, SuiteError> {
    Ok(match name {
        "second-leaper" => per_leaper(b.max_sum.unwrap_or(25), second_leaper_case),
        "seclen-symm" => per_leaper(b.max_sum.unwrap_or(25), seclen_symm_case),
        "third-leaper" => third_leaper_cases(b.max_sum.unwrap_or(25)),
        "knuth" => per_leaper(b.max_sum.unwrap_or(13), knuth_case),
        "dirgraph" => dirgraph_cases(b.max_sum.unwrap_or(25), b.max_len.unwrap_or(4)),
        "flip-equiv" => flip_equiv_cases(b.max_len.unwrap_or(4)),
        "perfect" => perfect_cases(b.max_len.unwrap_or(3)),
        "displacement" | "displ" => displacement_cases(b.max_sum.unwrap_or(25)),
        "pinwheel" => pinwheel_cases(b.max_sum.unwrap_or(9)),
        "counts" => per_leaper(b.max_sum.unwrap_or(25), counts_case),
        other => return Err(SuiteError::UnknownSuite(other.to_string())),
    })
}

/// Basic skew leapers 0 < p < q with gcd 1 and p + q odd, by sum then p.
pub fn basic_skew_leapers(max_sum: i64) -> Vec<(i64, i64)> {
    (3..=max_sum)
        .step_by(2)
        .flat_map(|s| (1..=(s - 1) / 2).map(move |p| (p, s - p)))
        .filter(|&(p, q)| num_integer::gcd(p, q) == 1)
        .collect()
}

fn per_leaper(max_sum: i64, f: fn(i64, i64) -> Result<(), String>) -> Vec<(String, Check)> {
    basic_skew_leapers(max_sum).into_iter().map(|(p, q)| case(format!("({p},{q})"), move || f(p, q))).collect()
}

fn typed_cycles(p: i64, q: i64) -> Result<Vec<(usize, Vec<Vec<Square>>)>, String> {
    let l = Leaper::of(p, q);
    let dec = decompose_center_board(l).map_err(|e| e.to_string())?;
    classify_cycle_types(&dec, l).map_err(|e| e.to_string())
}

fn second_leaper_case(p: i64, q: i64) -> Result<(), String> {
    let l = Leaper::of(p, q);
    let dec = decompose_center_board(l).map_err(|e| e.to_string())?;
    ensure(dec.isolated.len() as i64 == (q - p).pow(2), || format!("{} isolated squares", dec.isolated.len()))?;
    let table = cycle_type_table(p, q).map_err(|e| e.to_string())?;
    let typed = classify_cycle_types(&dec, l).map_err(|e| e.to_string())?;
    ensure(typed.len() == table.len(), || format!("{} classes for {} types", typed.len(), table.len()))?;
    for (index, members) in typed {
        let rec = &table[index - 1];
        ensure(members.len() as i64 == (rec.second_leaper.q() - rec.second_leaper.p()).pow(2), || format!("type {index}: {} cycles", members.len()))?;
        for c in members {
            ensure(c.len() as i64 == rec.length, || format!("type {index}: length {}", c.len()))?;
            let (m, d) = canonical_second_cycle(p, q, &c).map_err(|e| format!("type {index}: {e}"))?;
            ensure(m == rec.second_leaper, || format!("type {index}: second leaper {m}, table says {}", rec.second_leaper))?;
            let set: BTreeSet<Square> = c.iter().copied().collect();
            let traced = graph_over(m, &set).as_single_cycle().ok_or_else(|| format!("type {index}: {m}-graph is not one cycle"))?;
            ensure(traced.len() == set.len() && traced == canonical_cycle(&d.squares()), || format!("type {index}: traced cycle differs from the proper cycle"))?;
        }
    }
    Ok(())
}

/// Moves a sectioned cycle so that its bounding box is centered on the origin, doubling
/// coordinates to keep the center exact.
fn centered_proper(d: &ProperCycle) -> ProperCycle {
    let all = d.squares();
    let shift = bounding_center(&all);
    let mut out = d.clone();
    out.paths = d.paths.clone().map(|path| path.into_iter().map(|s| Square::new(2 * s.x2 - shift.0, 2 * s.y2 - shift.1)).collect());
    out
}

fn bounding_center(squares: &[Square]) -> (i64, i64) {
    let (xs, ys): (Vec<i64>, Vec<i64>) = squares.iter().map(|s| (s.x2, s.y2)).unzip();
    (xs.iter().min().unwrap() + xs.iter().max().unwrap(), ys.iter().min().unwrap() + ys.iter().max().unwrap())
}

fn centered(cycle: &[Square]) -> Vec<Square> {
    let shift = bounding_center(cycle);
    cycle.iter().map(|s| Square::new(2 * s.x2 - shift.0, 2 * s.y2 - shift.1)).collect()
}

fn seclen_symm_case(p: i64, q: i64) -> Result<(), String> {
    let frame = Frame::new(p, q).map_err(|e| e.to_string())?;
    for (index, members) in typed_cycles(p, q)? {
        for c in members {
            let counts = section_visit_counts(frame, &c);
            ensure(counts.values().all(|n| n % 2 == 1), || format!("type {index}: even section count {counts:?}"))?;
            let side: BTreeSet<usize> = Section::ALL.iter().filter(|s| s.is_side()).map(|s| counts[s]).collect();
            let corner: BTreeSet<usize> = Section::ALL.iter().filter(|s| !s.is_side()).map(|s| counts[s]).collect();
            ensure(side.len() == 1 && corner.len() == 1, || format!("type {index}: nonuniform counts {counts:?}"))?;
            ensure(is_fully_symmetric(&centered(&c)), || format!("type {index}: cycle not symmetric"))?;
            let (_, d) = canonical_second_cycle(p, q, &c).map_err(|e| e.to_string())?;
            let dc = centered_proper(&d);
            ensure(is_fully_symmetric(&dc.squares()) && is_section_symmetric(&dc), || format!("type {index}: second cycle not symmetric"))?;
        }
    }
    Ok(())
}

fn third_leaper_cases(max_sum: i64) -> Vec<(String, Check)> {
    basic_skew_leapers(max_sum)
        .into_iter()
        .filter(|&(p, q)| cycle_type_table(p, q).map(|t| t.last().unwrap().third_leaper).unwrap_or(false))
        .map(|(p, q)| case(format!("({p},{q})"), move || third_leaper_case(p, q)))
        .collect()
}

fn third_leaper_case(p: i64, q: i64) -> Result<(), String> {
    let e = descent_of(p, q).map_err(|err| err.to_string())?;
    let typed = typed_cycles(p, q)?;
    let (_, members) = typed.last().unwrap();
    ensure(members.len() == 1, || format!("{} deepest cycles", members.len()))?;
    let c = &members[0];
    let (_, d) = canonical_second_cycle(p, q, c).map_err(|err| err.to_string())?;
    let t = third_leaper_cycle(&d).map_err(|err| err.to_string())?;
    let set: BTreeSet<Square> = c.iter().copied().collect();
    ensure(t.iter().copied().collect::<BTreeSet<_>>() == set && t.len() == set.len(), || "third-leaper cycle misses squares".into())?;
    let full = graph_over(Leaper::of(1, 2), &set).as_single_cycle();
    let equal = full.as_deref() == Some(canonical_cycle(&t).as_slice());
    let expect = e.chars().last().is_none_or(|&k| k == LiftKind::G);
    ensure(equal == expect, || format!("full (1,2)-graph equal: {equal}, descent {e}"))
}

fn knuth_case(p: i64, q: i64) -> Result<(), String> {
    let l = Leaper::of(p, q);
    ensure(is_free(l, &Board::rectangle(p + q, 2 * q)), || format!("not free over {}×{}", p + q, 2 * q))?;
    ensure(!is_free(l, &Board::rectangle(p + q, 2 * q - 1)), || format!("free over {}×{}", p + q, 2 * q - 1))?;
    for w in p + q..=2 * q + 2 {
        for h in p + q..=2 * q + 2 {
            let brute = is_free(l, &Board::rectangle(w, h));
            ensure(brute == knuth_free_predicate(l, w, h), || format!("{w}×{h}: brute force says {brute}"))?;
        }
    }
    Ok(())
}

fn fundamental_prefix(e: &Descent, index: usize) -> (Descent, Option<(LiftKind, Descent)>) {
    let creators: Vec<usize> = e.chars().iter().enumerate().filter(|(_, k)| **k != LiftKind::F).map(|(i, _)| i).collect();
    let end = if index <= creators.len() { creators[index - 1] } else { e.len() };
    let origin_at = if index <= creators.len() { Some(creators[index - 1]) } else { creators.last().copied() };
    (Descent(e.chars()[..end].to_vec()), origin_at.map(|at| (e.chars()[at], Descent(e.chars()[..at].to_vec()))))
}

fn check_extracted(leaper: Leaper, cycle: &[Square], expected: &DirectionGraph, what: &str) -> Result<(), String> {
    let g = extract_cycle(leaper, cycle).map_err(|err| format!("{what}: {err}"))?;
    ensure(g.is_valid(), || format!("{what}: not trivial"))?;
    ensure(g.is_coherent(), || format!("{what}: not coherent"))?;
    ensure(cycle_graphs_equal(&g, expected), || format!("{what}: differs from the generated cycle"))
}

fn dirgraph_cases(max_sum: i64, max_len: usize) -> Vec<(String, Check)> {
    let mut out = per_leaper(max_sum, |p, q| {
        let e = descent_of(p, q).map_err(|err| err.to_string())?;
        for (index, members) in typed_cycles(p, q)? {
            let (prefix, second) = fundamental_prefix(&e, index);
            let phi = fundamental_cycle(&prefix);
            let expected_second = second.and_then(|(o, pre)| second_fundamental(o, &pre));
            for c in members {
                check_extracted(Leaper::of(p, q), &c, &phi, &format!("type {index}"))?;
                let (m, d) = canonical_second_cycle(p, q, &c).map_err(|err| err.to_string())?;
                if m.is_skew() {
                    let want = expected_second.as_ref().ok_or_else(|| format!("type {index}: no second fundamental cycle"))?;
                    check_extracted(m, &d.squares(), want, &format!("type {index} second"))?;
                }
            }
        }
        Ok(())
    });
    for e in Descent::enumerate(&LiftKind::CORE, max_len) {
        for o in [LiftKind::G, LiftKind::H] {
            let e = e.clone();
            out.push(case(format!("identity {e}{}", o.symbol()), move || {
                let (l, _, d) = cycle_with_descent(&e, o)?;
                let a = matrix_product(&e) * o.matrix();
                ensure(duality_identity_holds(l, &d, a).map_err(|err| err.to_string())?, || "identity fails".into())
            }));
        }
    }
    out
}

/// A cycle of the type created by the final character o of e·o, with its proper cycle.
fn cycle_with_descent(e: &Descent, o: LiftKind) -> Result<(Leaper, Vec<Square>, ProperCycle), String> {
    let full = e.push(o);
    let l = leaper_of_descent(&full);
    let index = e.chars().iter().filter(|&&k| k != LiftKind::F).count() + 1;
    let (c, d) = type_cycle(l.p(), l.q(), index).map_err(|err| err.to_string())?;
    Ok((l, c, d))
}

fn flip_equiv_cases(max_len: usize) -> Vec<(String, Check)> {
    let all = Descent::enumerate(&LiftKind::EXTENDED, max_len);
    let keys: BTreeMap<Descent, Vec<u8>> =
        all.par_iter().map(|e| (e.clone(), cycle_class_key(&fundamental_cycle(e)).expect("fundamental cycles are cycles"))).collect();
    let keys = std::sync::Arc::new(keys);
    all.iter()
        .cloned()
        .map(|e| {
            let keys = keys.clone();
            case(e.to_string(), move || {
                let flipped = flip(&e);
                let (on_s, on_c) = e.chars().iter().rev().fold((vec![PLUS_S], vec![PLUS_C]), |(s, c), &k| {
                    (rewrite(k, &Signature(s)).0, rewrite(k, &Signature(c)).0)
                });
                ensure(CornerSidePair { corner: on_s, side: on_c } == corner_side_of_descent(&flipped), || format!("flip bridge fails for {flipped}"))?;
                let sig = signature_of_descent(&e);
                ensure(sig.counts() == ns_nc(&e), || format!("counts {:?} vs recurrence {:?}", sig.counts(), ns_nc(&e)))?;
                ensure(recover_descent(ns_nc(&e)).ok().as_ref() == Some(&e), || "counts do not recover the descent".into())?;
                ensure(recover_descent_of_signature(&sig).ok().as_ref() == Some(&e), || "signature does not recover the descent".into())?;
                for (other, key) in keys.iter().filter(|(o, _)| o.len() == e.len()) {
                    let by_search = *key == keys[&e];
                    ensure(equivalent_descents(&e, other) == by_search, || format!("equivalence with {other}: search says {by_search}"))?;
                }
                Ok(())
            })
        })
        .collect()
}

fn perfect_cases(max_len: usize) -> Vec<(String, Check)> {
    let mut out = Vec::new();
    for (r, s) in [(0, 1), (1, 2), (1, 4), (2, 3)] {
        let m = Leaper::of(r, s);
        for o in LiftKind::CORE {
            if initial_cycle(m, o).is_err() {
                continue;
            }
            for e in Descent::enumerate(&LiftKind::EXTENDED, max_len) {
                out.push(case(format!("{m} {} {e}", o.symbol()), move || {
                    let d = perfect_cycle(m, o, &e).map_err(|err| err.to_string())?;
                    let report = check_perfect(&d);
                    ensure(report.is_perfect(), || format!("{:?}", report.failures()))?;
                    let b = build_dual_board(m, o, &e).map_err(|err| err.to_string())?;
                    ensure(verify_dual_board(&b.board, b.l, b.m, None).map_err(|err| err.to_string())?, || "board is not dual".into())
                }));
            }
        }
    }
    out.push(case("(5,12) example", || {
        let e: Descent = "hħ".parse().unwrap();
        let b = build_dual_board(Leaper::of(0, 1), LiftKind::H, &e).map_err(|err| err.to_string())?;
        ensure(b.l == Leaper::of(5, 12), || format!("L = {}", b.l))?;
        let seed = initial_cycle(Leaper::of(0, 1), LiftKind::H).map_err(|err| err.to_string())?;
        // The last character lifts first: hħ applies ħ then h, and the reverse order gives ħh.
        let lifted = lift_perfect(LiftKind::H, &lift_perfect(LiftKind::HBar, &seed));
        ensure(lifted.square_set() == *b.board.squares(), || "board differs from the lifted perfect cycle".into())?;
        let other = build_dual_board(Leaper::of(0, 1), LiftKind::H, &"ħh".parse().unwrap()).map_err(|err| err.to_string())?;
        let reversed = lift_perfect(LiftKind::HBar, &lift_perfect(LiftKind::H, &seed));
        ensure(other.l == b.l && reversed.square_set() == *other.board.squares(), || "ħh board differs".into())?;
        ensure(other.board != b.board, || "hħ and ħh boards coincide".into())?;
        let phi = extract_cycle(b.l, &b.l_cycle).map_err(|err| err.to_string())?;
        ensure(cycle_graphs_equal(&phi, &fundamental_cycle(&e)), || "L-cycle is not an instantiation of the fundamental cycle".into())
    }));
    out
}

fn displacement_cases(max_sum: i64) -> Vec<(String, Check)> {
    let mut out = per_leaper(max_sum, |p, q| {
        let l = Leaper::of(p, q);
        for (index, members) in typed_cycles(p, q)? {
            for c in members {
                let (_, d) = canonical_second_cycle(p, q, &c).map_err(|err| err.to_string())?;
                let (m, n) = side_corner_counts(&d);
                psi_permutation(m, n).map_err(|err| format!("type {index}: {err}"))?;
                ensure(psi_is_isomorphism(&d, l).map_err(|err| err.to_string())?, || format!("type {index}: ψ is not an isomorphism"))?;
                let r = displacement_report(&c, &d.squares()).map_err(|err| err.to_string())?;
                ensure(r.laws_hold(), || format!("type {index}: {r:?}"))?;
            }
        }
        Ok(())
    });
    for len in 0.. {
        let batch: Vec<(Descent, LiftKind)> = Descent::enumerate(&LiftKind::CORE, len)
            .into_iter()
            .filter(|e| e.len() == len)
            .flat_map(|e| [(e.clone(), LiftKind::G), (e, LiftKind::H)])
            .filter(|(e, o)| [e.clone(), flip(e)].iter().all(|x| leaper_sum(&x.push(*o)) <= max_sum))
            .collect();
        if batch.is_empty() {
            break;
        }
        for (e, o) in batch {
            out.push(case(format!("isoflip {e}{}", o.symbol()), move || psi_transfers(&e, o)));
        }
    }
    out
}

fn leaper_sum(e: &Descent) -> i64 {
    let l = leaper_of_descent(e);
    l.p() + l.q()
}

/// ψ of the cycle for e·o, applied to some enumeration of the cycle for flip(e)·o, is an
/// isomorphism onto that cycle's second leaper cycle.
fn psi_transfers(e: &Descent, o: LiftKind) -> Result<(), String> {
    let (l2, _, d2) = cycle_with_descent(e, o)?;
    let (_, c1, d1) = cycle_with_descent(&flip(e), o)?;
    ensure(c1.len() == d2.len(), || "flip pair lengths differ".into())?;
    let (m, n) = side_corner_counts(&d2);
    let psi = psi_permutation(m, n).map_err(|err| err.to_string())?;
    ensure(psi_is_isomorphism(&d2, l2).map_err(|err| err.to_string())?, || "ψ fails on the original".into())?;
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
    ensure(found, || "no enumeration of the flipped cycle carries ψ".into())
}

fn pinwheel_cases(max_sum: i64) -> Vec<(String, Check)> {
    let mut out = Vec::new();
    let leapers: Vec<(i64, i64)> = std::iter::once((0, 1)).chain(basic_skew_leapers(max_sum)).collect();
    for (p, q) in leapers {
        for n in 1..=3 {
            for d in 0..=if p == 0 { 0 } else { 2 } {
                out.push(case(format!("W_{n},{d}({p},{q})"), move || {
                    let r = verify_pinwheel_dual(PinwheelSpec::new(n, p, q).with_margin(d)).map_err(|err| err.to_string())?;
                    ensure(r.dual && r.l_connected && r.m_connected, || format!("{r:?}"))?;
                    ensure(d > 0 || (r.l_unicyclic && r.m_unicyclic), || format!("not unicyclic: {r:?}"))
                }));
            }
        }
    }
    for n in 1..=3 {
        for d in 0..=2 {
            out.push(case(format!("graph W_{n},{d}"), move || {
                let base = pinwheel_direction_graph(n, d, 1, 2).map_err(|err| err.to_string())?;
                for (p, q) in basic_skew_leapers(max_sum).into_iter().filter(|&pq| pq != (1, 2)) {
                    let other = pinwheel_direction_graph(n, d, p, q).map_err(|err| err.to_string())?;
                    ensure(other == base, || format!("graph over ({p},{q}) differs"))?;
                }
                ensure(base.graph.is_valid() && base.graph.is_coherent(), || "not trivial and coherent".into())?;
                let complement = pinwheel_complement(n, &base.graph);
                let eta = pinwheel_eta(n, d, &base).ok_or("no η among the reflection candidates")?;
                ensure(verify_dual_pair(&base.graph, &complement, &eta, pinwheel_matrix(n)), || "η fails".into())?;
                ensure(find_duality_with_matrix(&base.graph, &complement, pinwheel_matrix(n)).is_some(), || "search finds no η".into())
            }));
        }
    }
    out.push(case("named instances", || {
        let named = [
            (PinwheelSpec::new(2, 1, 2).with_margin(1), (2, 9)),
            (PinwheelSpec::new(2, 2, 1), (1, 6)),
            (PinwheelSpec::new(1, 0, 1).augmented(), (1, 2)),
        ]
        .into_iter()
        .chain((1..=4).map(|n| (PinwheelSpec::new(n, 0, 1), (1, 2 * n))));
        for (spec, (r, s)) in named {
            let rep = verify_pinwheel_dual(spec).map_err(|err| err.to_string())?;
            ensure(rep.dual && rep.m == Leaper::of(r, s), || format!("{rep:?}"))?;
        }
        Ok(())
    }));
    out.push(case("sizes grow with margin", || {
        for n in 1..=3 {
            let sizes: Vec<usize> =
                (0..=4).map(|d| build_pinwheel(PinwheelSpec::new(n, 1, 2).with_margin(d)).map(|w| w.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
            ensure(sizes.windows(2).all(|w| w[0] < w[1]), || format!("n = {n}: {sizes:?}"))?;
        }
        Ok(())
    }));
    out
}

fn counts_case(p: i64, q: i64) -> Result<(), String> {
    let table = cycle_type_table(p, q).map_err(|e| e.to_string())?;
    let covered: i64 = table.iter().map(|r| r.count * r.length).sum::<i64>() + (q - p).pow(2);
    ensure(covered == (p + q).pow(2), || format!("table covers {covered} of {} squares", (p + q).pow(2)))?;
    let dec = decompose_center_board(Leaper::of(p, q)).map_err(|e| e.to_string())?;
    let mut by_len: BTreeMap<i64, i64> = BTreeMap::new();
    for c in &dec.cycles {
        *by_len.entry(c.len() as i64).or_default() += 1;
    }
    let mut want: BTreeMap<i64, i64> = BTreeMap::new();
    for r in &table {
        *want.entry(r.length).or_default() += r.count;
    }
    ensure(by_len == want, || format!("cycle lengths {by_len:?}, table {want:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_leaper_enumeration() {
        assert_eq!(basic_skew_leapers(7), vec![(1, 2), (1, 4), (2, 3), (1, 6), (2, 5), (3, 4)]);
        assert!(basic_skew_leapers(2).is_empty());
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(run_suite("nope", Bounds::default()), Err(SuiteError::UnknownSuite("nope".into())));
    }

    #[test]
    fn small_suites_pass_and_report_in_order() {
        let small = Bounds { max_sum: Some(9), max_len: Some(2) };
        for name in SUITES {
            let mut seen = Vec::new();
            let r = run_suite_with(name, small, |o| seen.push(o.case.clone())).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures);
            assert_eq!(r.exit_code(), 0);
            assert_eq!(seen.len(), r.cases);
            assert!(r.cases > 0, "{name}");
        }
    }
}
