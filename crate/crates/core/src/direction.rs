//! Direction graphs: leaper graphs with moves abstracted to the eight skew directions.

use crate::board::LeaperGraph;
use crate::geometry::{Leaper, Mat2, Square, Translation};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

/// Skew direction labels 1..=8; direction i moves by A_i·(p, q)ᵀ.
pub type Label = u8;

pub fn direction_matrix(label: Label) -> Mat2 {
    Mat2::DIRECTIONS[(label - 1) as usize]
}

/// −i, i.e. i + 4 modulo 8.
pub fn opposite(label: Label) -> Label {
    (label + 3) % 8 + 1
}

pub fn is_direction_matrix(m: Mat2) -> bool {
    Mat2::DIRECTIONS.contains(&m)
}

pub fn direction_of_move(leaper: Leaper, t: Translation) -> Option<Label> {
    if !leaper.is_skew() {
        return None;
    }
    (1..=8u8).find(|&i| {
        let (x, y) = direction_matrix(i).apply(leaper.p(), leaper.q());
        Translation::real(x, y) == t
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DirectionError {
    #[error("direction graph has a cycle with nonzero matrix sum through vertices {0:?}")]
    NontrivialCycle(Vec<usize>),
    #[error("leaper {0} is not skew")]
    NotSkew(Leaper),
    #[error("malformed direction graph: {0}")]
    Malformed(String),
    #[error("expected {expected} anchors, one per component, got {got}")]
    AnchorCount { expected: usize, got: usize },
}

/// A symmetric labeled digraph stored as one arc per adjacent pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionGraph {
    pub vertices: usize,
    pub arcs: Vec<(usize, usize, Label)>,
}

impl DirectionGraph {
    pub fn new(vertices: usize, arcs: Vec<(usize, usize, Label)>) -> Result<Self, DirectionError> {
        let mut pairs = BTreeSet::new();
        for &(u, v, l) in &arcs {
            if u >= vertices || v >= vertices || u == v || !(1..=8).contains(&l) {
                return Err(DirectionError::Malformed(format!("arc ({u}, {v}, {l})")));
            }
            if !pairs.insert((u.min(v), u.max(v))) {
                return Err(DirectionError::Malformed(format!("repeated pair ({u}, {v})")));
            }
        }
        Ok(DirectionGraph { vertices, arcs })
    }

    /// A cycle through vertices 0, 1, …, n−1 with the given outgoing labels.
    pub fn cycle(labels: &[Label]) -> Self {
        let n = labels.len();
        DirectionGraph { vertices: n, arcs: (0..n).map(|j| (j, (j + 1) % n, labels[j])).collect() }
    }

    /// Outgoing (neighbor, label) lists under the symmetric closure, sorted.
    pub fn adjacency(&self) -> Vec<Vec<(usize, Label)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for &(u, v, l) in &self.arcs {
            adj[u].push((v, l));
            adj[v].push((u, opposite(l)));
        }
        for a in &mut adj {
            a.sort();
        }
        adj
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut comp = vec![usize::MAX; self.vertices];
        let mut out = Vec::new();
        for s in 0..self.vertices {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Matrix potentials relative to the least vertex of each component; fails with a
    /// witness cycle when some cycle has nonzero matrix sum.
    pub fn potentials(&self) -> Result<Vec<(usize, Mat2)>, DirectionError> {
        let adj = self.adjacency();
        let mut pot: Vec<Option<(usize, Mat2)>> = vec![None; self.vertices];
        let mut parent = vec![usize::MAX; self.vertices];
        for root in 0..self.vertices {
            if pot[root].is_some() {
                continue;
            }
            pot[root] = Some((root, Mat2::ZERO));
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let pu = pot[u].unwrap().1;
                for &(v, l) in &adj[u] {
                    let want = pu + direction_matrix(l);
                    match pot[v] {
                        None => {
                            pot[v] = Some((root, want));
                            parent[v] = u;
                            queue.push_back(v);
                        }
                        Some((_, pv)) if pv != want => {
                            return Err(DirectionError::NontrivialCycle(witness(&parent, u, v)));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(pot.into_iter().map(Option::unwrap).collect())
    }

    /// All cycles have vanishing direction-matrix sums.
    pub fn is_valid(&self) -> bool {
        self.potentials().is_ok()
    }

    /// Dist(x, y), defined for valid graphs and x, y in one component.
    pub fn distance(&self, x: usize, y: usize) -> Result<Option<Mat2>, DirectionError> {
        let pot = self.potentials()?;
        Ok((pot[x].0 == pot[y].0).then(|| pot[y].1 - pot[x].1))
    }

    /// Distances within a component encode identity and adjacency faithfully.
    pub fn is_coherent(&self) -> bool {
        let Ok(pot) = self.potentials() else { return false };
        let mut by_pot: HashMap<(usize, Mat2), usize> = HashMap::new();
        for (x, &key) in pot.iter().enumerate() {
            if by_pot.insert(key, x).is_some() {
                return false;
            }
        }
        let adj = self.adjacency();
        for x in 0..self.vertices {
            let (root, px) = pot[x];
            for l in 1..=8u8 {
                let at = by_pot.get(&(root, px + direction_matrix(l))).copied();
                let arc = adj[x].iter().find(|&&(_, lab)| lab == l).map(|&(v, _)| v);
                if at != arc {
                    return false;
                }
            }
        }
        true
    }

    /// Vertex order around the graph when it is a single cycle, starting at vertex 0
    /// toward its lesser neighbor.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        if self.vertices < 3 || adj.iter().any(|a| a.len() != 2) || !self.is_connected() {
            return None;
        }
        let mut order = vec![0usize];
        let (mut prev, mut cur) = (0usize, adj[0][0].0);
        while cur != 0 {
            order.push(cur);
            let next = if adj[cur][0].0 == prev { adj[cur][1].0 } else { adj[cur][0].0 };
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Outgoing labels along `cycle_order`.
    pub fn cycle_labels(&self) -> Option<Vec<Label>> {
        let order = self.cycle_order()?;
        let adj = self.adjacency();
        let n = order.len();
        Some(
            (0..n)
                .map(|j| adj[order[j]].iter().find(|&&(v, _)| v == order[(j + 1) % n]).unwrap().1)
                .collect(),
        )
    }

    pub fn relabel(&self, perm: &EquivPermutation) -> DirectionGraph {
        DirectionGraph {
            vertices: self.vertices,
            arcs: self.arcs.iter().map(|&(u, v, l)| (u, v, perm.apply(l))).collect(),
        }
    }
}

fn witness(parent: &[usize], u: usize, v: usize) -> Vec<usize> {
    let chain = |mut x: usize| {
        let mut c = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            c.push(x);
        }
        c
    };
    let (cu, cv) = (chain(u), chain(v));
    let on_u: BTreeSet<usize> = cu.iter().copied().collect();
    let lca_pos_v = cv.iter().position(|x| on_u.contains(x)).unwrap();
    let lca = cv[lca_pos_v];
    let lca_pos_u = cu.iter().position(|&x| x == lca).unwrap();
    let mut cycle: Vec<usize> = cu[..=lca_pos_u].iter().rev().copied().collect();
    cycle.extend(cv[..lca_pos_v].iter());
    cycle
}

/// A direction graph extracted from a leaper graph, with its vertex squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub graph: DirectionGraph,
    pub squares: Vec<Square>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtractError {
    #[error("leaper graph contains a nontrivial cycle through {0:?}")]
    NontrivialCycle(Vec<Square>),
    #[error("leaper {0} is not skew")]
    NotSkew(Leaper),
}

/// Vertices are the squares in sorted order; each edge a < b becomes the arc a → b.
pub fn extract(g: &LeaperGraph) -> Result<Extraction, ExtractError> {
    let l = g.leaper();
    if !l.is_skew() {
        return Err(ExtractError::NotSkew(l));
    }
    let squares: Vec<Square> = g.board().squares().iter().copied().collect();
    let index: BTreeMap<Square, usize> = squares.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let arcs = g
        .edges()
        .into_iter()
        .map(|(a, b)| (index[&a], index[&b], direction_of_move(l, b - a).expect("edges are moves")))
        .collect();
    let graph = DirectionGraph { vertices: squares.len(), arcs };
    match graph.potentials() {
        Ok(_) => Ok(Extraction { graph, squares }),
        Err(DirectionError::NontrivialCycle(w)) => Err(ExtractError::NontrivialCycle(w.into_iter().map(|i| squares[i]).collect())),
        Err(_) => unreachable!("potentials only fails with a witness"),
    }
}

/// Direction cycle of a cycle of squares, vertex j being the j-th square.
pub fn extract_cycle(leaper: Leaper, cycle: &[Square]) -> Result<DirectionGraph, ExtractError> {
    if !leaper.is_skew() {
        return Err(ExtractError::NotSkew(leaper));
    }
    let n = cycle.len();
    let labels: Vec<Label> = (0..n)
        .map(|j| direction_of_move(leaper, cycle[(j + 1) % n] - cycle[j]).expect("consecutive squares are moves"))
        .collect();
    Ok(DirectionGraph::cycle(&labels))
}

/// Image of a direction graph under τ(x) = anchor + Dist(root, x)·(p, q)ᵀ, one anchor per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instantiation {
    pub squares: Vec<Square>,
    pub edges: BTreeSet<(Square, Square)>,
}

pub fn instantiate(phi: &DirectionGraph, leaper: Leaper, anchors: &[Square]) -> Result<Instantiation, DirectionError> {
    let pot = phi.potentials()?;
    let comps = phi.components();
    if comps.len() != anchors.len() {
        return Err(DirectionError::AnchorCount { expected: comps.len(), got: anchors.len() });
    }
    let anchor_of: BTreeMap<usize, Square> = comps.iter().zip(anchors).map(|(c, &a)| (c[0], a)).collect();
    let squares: Vec<Square> = pot
        .iter()
        .map(|&(root, m)| {
            let (x, y) = m.apply(leaper.p(), leaper.q());
            anchor_of[&root] + Translation::real(x, y)
        })
        .collect();
    let edges = phi
        .arcs
        .iter()
        .map(|&(u, v, _)| (squares[u].min(squares[v]), squares[u].max(squares[v])))
        .collect();
    Ok(Instantiation { squares, edges })
}

/// A relabeling of the eight directions induced by A_i ↦ P·A_i·Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivPermutation {
    pub name: String,
    /// image[i − 1] = π(i).
    pub image: [Label; 8],
}

impl EquivPermutation {
    pub fn from_digits(name: &str, digits: &str) -> Self {
        let v: Vec<Label> = digits.bytes().map(|b| b - b'0').collect();
        EquivPermutation { name: name.to_string(), image: v.try_into().expect("eight digits") }
    }

    pub fn apply(&self, l: Label) -> Label {
        self.image[(l - 1) as usize]
    }

    pub fn identity() -> Self {
        Self::from_digits("identity", "12345678")
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &EquivPermutation) -> EquivPermutation {
        EquivPermutation {
            name: format!("{}∘{}", self.name, first.name),
            image: std::array::from_fn(|i| self.apply(first.image[i])),
        }
    }

    pub fn digits(&self) -> String {
        self.image.iter().map(|d| char::from(b'0' + d)).collect()
    }
}

/// The named permutations: g, h, II, f, Reflect, Pinwheel, Shift.
pub fn named_permutations() -> Vec<EquivPermutation> {
    [
        ("g", "27856341"),
        ("h", "72583614"),
        ("II", "47618325"),
        ("f", "23816745"),
        ("Reflect", "87654321"),
        ("Pinwheel", "38527416"),
        ("Shift", "23456781"),
    ]
    .iter()
    .map(|(n, d)| EquivPermutation::from_digits(n, d))
    .collect()
}

pub fn named_permutation(name: &str) -> Option<EquivPermutation> {
    named_permutations().into_iter().find(|p| p.name == name)
}

/// Integer matrices P′, Q′ and k with A_π(i) = P′·A_i·Q′ / (√2)^k.
pub fn inducing_pair(name: &str) -> Option<(Mat2, Mat2, u32)> {
    Some(match name {
        "g" => (Mat2::new(1, 1, 1, -1), Mat2::new(1, -1, 1, 1), 2),
        "h" => (Mat2::new(1, 1, 1, -1), Mat2::new(1, 1, 1, -1), 2),
        "f" => (Mat2::new(-1, 1, 1, 1), Mat2::new(1, 1, -1, 1), 2),
        "Shift" => (Mat2::new(1, -1, 1, 1), Mat2::new(-1, 1, 1, 1), 2),
        "II" => (Mat2::IDENTITY, Mat2::new(1, 0, 0, -1), 0),
        "Pinwheel" => (Mat2::IDENTITY, Mat2::new(0, 1, -1, 0), 0),
        "Reflect" => (Mat2::new(1, 0, 0, -1), Mat2::IDENTITY, 0),
        _ => return None,
    })
}

pub fn apply_perm(perm: &EquivPermutation, phi: &DirectionGraph) -> DirectionGraph {
    phi.relabel(perm)
}

fn is_rotation(a: &[Label], b: &[Label]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| (0..a.len()).all(|j| a[(j + k) % a.len()] == b[j])))
}

/// The same cycle traversed backwards.
pub fn reversed_labels(labels: &[Label]) -> Vec<Label> {
    labels.iter().rev().map(|&l| opposite(l)).collect()
}

/// Labeled-graph isomorphism of two direction cycles.
pub fn cycle_graphs_equal(a: &DirectionGraph, b: &DirectionGraph) -> bool {
    match (a.cycle_labels(), b.cycle_labels()) {
        (Some(la), Some(lb)) => is_rotation(&la, &lb) || is_rotation(&reversed_labels(&la), &lb),
        _ => false,
    }
}

/// The sixteen permutations generated by Shift and Reflect, Shift powers first.
pub fn dihedral_permutations() -> Vec<EquivPermutation> {
    let shift = named_permutation("Shift").unwrap();
    let reflect = named_permutation("Reflect").unwrap();
    let mut powers = vec![EquivPermutation::identity()];
    for k in 1..8 {
        let mut next = shift.after(&powers[k - 1]);
        next.name = format!("Shift^{k}");
        powers.push(next);
    }
    let reflected: Vec<EquivPermutation> = powers.iter().map(|p| reflect.after(p)).collect();
    powers.into_iter().chain(reflected).collect()
}

pub fn equivalent_as_cycles(a: &DirectionGraph, b: &DirectionGraph) -> Option<EquivPermutation> {
    dihedral_permutations().into_iter().find(|p| cycle_graphs_equal(&a.relabel(p), b))
}

/// Start of the lexicographically least rotation (Booth).
fn least_rotation(s: &[Label]) -> usize {
    let d: Vec<Label> = s.iter().chain(s).copied().collect();
    let mut f = vec![-1i64; d.len()];
    let mut k = 0i64;
    for j in 1..d.len() as i64 {
        let sj = d[j as usize];
        let mut i = f[(j - k - 1) as usize];
        while i != -1 && sj != d[(k + i + 1) as usize] {
            if sj < d[(k + i + 1) as usize] {
                k = j - i - 1;
            }
            i = f[i as usize];
        }
        if sj != d[(k + i + 1) as usize] {
            if sj < d[k as usize] {
                k = j;
            }
            f[(j - k) as usize] = -1;
        } else {
            f[(j - k) as usize] = i + 1;
        }
    }
    k as usize
}

fn min_rotation(s: &[Label]) -> Vec<Label> {
    let k = least_rotation(s);
    s[k..].iter().chain(&s[..k]).copied().collect()
}

/// A key shared exactly by cycles related by one of the sixteen dihedral relabelings,
/// rotation, or reversal.
pub fn cycle_class_key(g: &DirectionGraph) -> Option<Vec<Label>> {
    let labels = g.cycle_labels()?;
    dihedral_permutations()
        .iter()
        .flat_map(|p| {
            let relabeled: Vec<Label> = labels.iter().map(|&l| p.apply(l)).collect();
            [min_rotation(&relabeled), min_rotation(&reversed_labels(&relabeled))]
        })
        .min()
}

fn undirected_edges(g: &DirectionGraph) -> BTreeSet<(usize, usize)> {
    g.arcs.iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect()
}

/// Unlabeled isomorphism, decided only for the cases duals arise in: two cycles, or
/// graphs that coincide as vertex-indexed graphs, or graphs related by `witness`.
pub fn unlabeled_isomorphic(a: &DirectionGraph, b: &DirectionGraph, witness: Option<&[usize]>) -> Option<bool> {
    if a.vertices != b.vertices || a.arcs.len() != b.arcs.len() {
        return Some(false);
    }
    if a.cycle_order().is_some() && b.cycle_order().is_some() {
        return Some(true);
    }
    let (ea, eb) = (undirected_edges(a), undirected_edges(b));
    if ea == eb {
        return Some(true);
    }
    let w = witness?;
    let mapped: BTreeSet<(usize, usize)> = ea.into_iter().map(|(u, v)| (w[u].min(w[v]), w[u].max(w[v]))).collect();
    if mapped == eb {
        return Some(true);
    }
    None
}

/// Why a claimed duality fails.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NotDual {
    #[error("graphs are not both coherent and connected")]
    NotCoherentConnected,
    #[error("underlying graphs are not isomorphic")]
    NotIsomorphic,
    #[error("isomorphism of the underlying graphs is not decided for these graphs")]
    Unsupported,
    #[error("the vertex map is not a bijection")]
    NotBijection,
    #[error("the matrix is a direction matrix or not unimodular")]
    BadMatrix,
    #[error("arc ({0}, {1}) labeled {2} disagrees with the distance in the dual")]
    Arc(usize, usize, Label),
}

/// Checks that η: V(Φ) → V(Φ′) and A make Φ′ a complement of Φ: for every arc
/// η(a) → η(b) labeled i in Φ′, Dist_Φ(a, b) = A_i·A.
pub fn check_dual_pair(phi: &DirectionGraph, dual: &DirectionGraph, eta: &[usize], a: Mat2) -> Result<(), NotDual> {
    if !(phi.is_coherent() && dual.is_coherent() && phi.is_connected() && dual.is_connected()) {
        return Err(NotDual::NotCoherentConnected);
    }
    if eta.len() != phi.vertices || phi.vertices != dual.vertices {
        return Err(NotDual::NotBijection);
    }
    let mut inverse = vec![usize::MAX; eta.len()];
    for (x, &y) in eta.iter().enumerate() {
        if y >= eta.len() || inverse[y] != usize::MAX {
            return Err(NotDual::NotBijection);
        }
        inverse[y] = x;
    }
    match unlabeled_isomorphic(phi, dual, None) {
        Some(true) => {}
        Some(false) => return Err(NotDual::NotIsomorphic),
        None => return Err(NotDual::Unsupported),
    }
    if is_direction_matrix(a) || a.det().abs() != 1 {
        return Err(NotDual::BadMatrix);
    }
    let pot = phi.potentials().map_err(|_| NotDual::NotCoherentConnected)?;
    for &(u, v, l) in &dual.arcs {
        if pot[inverse[v]].1 - pot[inverse[u]].1 != direction_matrix(l) * a {
            return Err(NotDual::Arc(u, v, l));
        }
    }
    Ok(())
}

pub fn verify_dual_pair(phi: &DirectionGraph, dual: &DirectionGraph, eta: &[usize], a: Mat2) -> bool {
    check_dual_pair(phi, dual, eta, a).is_ok()
}

/// Searches for (η, A) making `dual` a complement of `phi`. Fixing η⁻¹ on one arc of the
/// dual pins A down; coherence of `phi` then pins η down through potentials.
pub fn find_duality(phi: &DirectionGraph, dual: &DirectionGraph) -> Option<(Vec<usize>, Mat2)> {
    search_duality(phi, dual, None)
}

/// Dualities are not unique (symmetric graphs admit several); this looks for η given A.
pub fn find_duality_with_matrix(phi: &DirectionGraph, dual: &DirectionGraph, a: Mat2) -> Option<Vec<usize>> {
    search_duality(phi, dual, Some(a)).map(|(eta, _)| eta)
}

fn search_duality(phi: &DirectionGraph, dual: &DirectionGraph, want: Option<Mat2>) -> Option<(Vec<usize>, Mat2)> {
    if phi.vertices != dual.vertices || unlabeled_isomorphic(phi, dual, None) != Some(true) {
        return None;
    }
    let pot = phi.potentials().ok()?;
    let dual_pot = dual.potentials().ok()?;
    let by_pot: HashMap<Mat2, usize> = pot.iter().enumerate().map(|(x, &(_, m))| (m, x)).collect();
    let &(u, _, l) = dual.arcs.first()?;
    let n = phi.vertices;
    for x0 in 0..n {
        for x1 in 0..n {
            if x0 == x1 {
                continue;
            }
            let a = direction_matrix(l).transpose() * (pot[x1].1 - pot[x0].1);
            if is_direction_matrix(a) || a.det().abs() != 1 || want.is_some_and(|w| w != a) {
                continue;
            }
            // Dist_Φ(η⁻¹y, η⁻¹u) = Dist_Φ′(y, u)·A for every y.
            let mut eta = vec![usize::MAX; n];
            let ok = (0..n).all(|y| {
                let target = pot[x0].1 + (dual_pot[y].1 - dual_pot[u].1) * a;
                match by_pot.get(&target) {
                    Some(&x) if eta[x] == usize::MAX => {
                        eta[x] = y;
                        true
                    }
                    _ => false,
                }
            });
            if ok && verify_dual_pair(phi, dual, &eta, a) {
                return Some((eta, a));
            }
        }
    }
    None
}

pub fn labels_to_string(labels: &[Label]) -> String {
    labels.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn labels_from_str(s: &str) -> Vec<Label> {
    s.bytes().map(|b| b - b'0').collect()
}
