use leaper_core::board::{decompose_center_board, graph_over};
use leaper_core::descent::{cycle_type_table, descent_of, leaper_of_descent, matrix_product, Descent, LiftKind};
use leaper_core::direction::{cycle_graphs_equal, extract_cycle, find_duality_with_matrix, instantiate};
use leaper_core::frames::type_cycle;
use leaper_core::io::{board_from_json, board_to_json, cycle_from_json, cycle_to_json, graph_from_json, graph_to_json};
use leaper_core::perfect::{build_dual_board, check_perfect};
use leaper_core::pinwheel::{build_pinwheel, pinwheel_direction_graph, PinwheelSpec};
use leaper_core::signature::{fundamental_cycle, second_fundamental};
use leaper_core::suite::basic_skew_leapers;
use leaper_core::svg::{render_svg, Overlay, RenderSpec};
use leaper_core::Leaper;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn descent_strategy(alphabet: &'static [LiftKind], max_len: usize) -> impl Strategy<Value = Descent> {
    proptest::collection::vec(0..alphabet.len(), 0..=max_len).prop_map(move |v| Descent(v.into_iter().map(|i| alphabet[i]).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn descents_round_trip_through_leapers(e in descent_strategy(&LiftKind::CORE, 6)) {
        let l = leaper_of_descent(&e);
        prop_assert_eq!(descent_of(l.p(), l.q()).unwrap(), e);
    }

    #[test]
    fn type_table_covers_the_board(i in 0usize..68) {
        let (p, q) = basic_skew_leapers(25)[i];
        let table = cycle_type_table(p, q).unwrap();
        let covered: i64 = table.iter().map(|r| r.count * r.length).sum();
        prop_assert_eq!(covered + (q - p).pow(2), (p + q).pow(2));
    }

    #[test]
    fn instantiating_a_fundamental_cycle_reproduces_the_leaper_cycle(e in descent_strategy(&LiftKind::CORE, 3)) {
        let l = leaper_of_descent(&e);
        let index = e.chars().iter().filter(|&&k| k != LiftKind::F).count() + 1;
        let (cycle, _) = type_cycle(l.p(), l.q(), index).unwrap();
        let phi = fundamental_cycle(&e);
        let inst = instantiate(&phi, l, &[cycle[0]]).unwrap();
        let got: BTreeSet<_> = inst.squares.iter().copied().collect();
        prop_assert_eq!(got.len(), cycle.len());
        // Vertices of a generated cycle are numbered in traversal order.
        let traced = graph_over(l, &got).as_single_cycle();
        prop_assert!(traced.is_some());
        prop_assert!(cycle_graphs_equal(&extract_cycle(l, &inst.squares).unwrap(), &phi));
    }

    #[test]
    fn second_fundamental_cycles_are_dual(e in descent_strategy(&LiftKind::CORE, 4), h in any::<bool>()) {
        let o = if h { LiftKind::H } else { LiftKind::G };
        let second = second_fundamental(o, &e).unwrap();
        let a = matrix_product(&e) * o.matrix();
        prop_assert!(find_duality_with_matrix(&second, &fundamental_cycle(&e), a).is_some());
    }

    #[test]
    fn perfect_boards_survive_serialization(e in descent_strategy(&LiftKind::EXTENDED, 2)) {
        let b = build_dual_board(Leaper::of(1, 2), LiftKind::G, &e).unwrap();
        prop_assert!(check_perfect(&b.m_cycle).is_perfect());
        prop_assert_eq!(board_from_json(&board_to_json(&b.board)).unwrap(), b.board.clone());
        prop_assert_eq!(cycle_from_json(&cycle_to_json(&b.l_cycle)).unwrap(), b.l_cycle.clone());
        let g = extract_cycle(b.l, &b.l_cycle).unwrap();
        prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
    }
}

#[test]
fn every_central_cycle_renders_deterministically() {
    let l = Leaper::of(3, 8);
    let dec = decompose_center_board(l).unwrap();
    let board = leaper_core::board::Board::centered(11);
    let overlays: Vec<Overlay> = dec.cycles.iter().map(|c| Overlay::Cycle { squares: c.clone(), stroke: "#000".into() }).collect();
    let spec = RenderSpec { overlays, ..Default::default() };
    let a = render_svg(&board, &spec).unwrap();
    assert_eq!(a, render_svg(&board, &spec).unwrap());
    assert_eq!(a.matches("<polyline").count(), dec.cycles.len());
}

#[test]
fn pinwheel_graph_matches_the_board_graph() {
    let w = build_pinwheel(PinwheelSpec::new(2, 2, 3)).unwrap();
    let g = graph_over(Leaper::of(2, 3), &w.squares());
    let pg = pinwheel_direction_graph(2, 0, 2, 3).unwrap();
    assert_eq!(pg.graph.vertices, w.len());
    assert_eq!(pg.graph.arcs.len(), g.edge_count());
}
