use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebraic::FieldElement;
use crate::tiling::{GeometricSubstitution, Tile, Tiling};

/// A pair of tiles of types `i`, `j` whose left endpoints differ by
/// `x = left_j - left_i`, up to common translation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OverlapClass {
    pub i: usize,
    pub j: usize,
    pub x: FieldElement,
}

impl OverlapClass {
    /// Canonical orientation: `x ≥ 0`, and `i ≤ j` when `x = 0`.
    pub fn canonical(i: usize, j: usize, x: FieldElement) -> Self {
        if x.is_negative() {
            Self { i: j, j: i, x: -x }
        } else if x.is_zero() && i > j {
            Self { i: j, j: i, x }
        } else {
            Self { i, j, x }
        }
    }

    pub fn from_tiles(a: &Tile, b: &Tile) -> Self {
        Self::canonical(a.kind, b.kind, &b.left - &a.left)
    }

    pub fn is_coincidence(&self) -> bool {
        self.i == self.j && self.x.is_zero()
    }

    /// Whether the supports have overlapping interiors: `-ω_j < x < ω_i`.
    pub fn is_valid(&self, omega: &[FieldElement]) -> bool {
        -&omega[self.j] < self.x && self.x < omega[self.i]
    }
}

impl fmt::Display for OverlapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.i + 1, self.j + 1, self.x)
    }
}

impl fmt::Debug for OverlapClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Overlapping pairs between two left-to-right runs of contiguous or
/// sorted tiles, in order of the left end of the intersection.
fn sweep(a: &[Tile], b: &[Tile]) -> Vec<OverlapClass> {
    let mut out = Vec::new();
    let (mut p, mut q) = (0, 0);
    while p < a.len() && q < b.len() {
        let lo = if a[p].left > b[q].left { &a[p].left } else { &b[q].left };
        let hi = if a[p].right < b[q].right { &a[p].right } else { &b[q].right };
        if lo < hi {
            out.push(OverlapClass::from_tiles(&a[p], &b[q]));
        }
        match a[p].right.cmp(&b[q].right) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                p += 1;
                q += 1;
            }
        }
    }
    out
}

/// Inflates the `i`-tile at 0 and the `j`-tile at `x` and lists the
/// overlapping child pairs, canonicalised.
pub fn overlap_children(geo: &GeometricSubstitution, c: &OverlapClass) -> Vec<OverlapClass> {
    let f = geo.field();
    let a = geo.inflate_tile(&geo.tile(c.i, f.zero()));
    let b = geo.inflate_tile(&geo.tile(c.j, c.x.clone()));
    sweep(&a, &b)
}

#[derive(Clone, Debug)]
pub struct SeedOverlaps {
    pub classes: Vec<OverlapClass>,
    /// Positive return vectors, ascending.
    pub return_vectors: Vec<FieldElement>,
    /// Dimension of the ℚ-span of the return vectors.
    pub span_rank: usize,
}

/// Overlaps between `T` and `T - w` near the origin for every return
/// vector `w` with `0 < w ≤ L·max ω`.
pub fn seed_overlaps(geo: &GeometricSubstitution, tiling: &Tiling, l: u32) -> SeedOverlaps {
    let f = geo.field();
    let r = geo.max_length() * &f.from_integer(i64::from(l));
    let window = tiling.tiles_meeting(&-&r, &r);
    let mut returns: BTreeSet<FieldElement> = BTreeSet::new();
    for (k, a) in window.tiles.iter().enumerate() {
        for b in &window.tiles[k + 1..] {
            if b.kind != a.kind {
                continue;
            }
            let w = &b.left - &a.left;
            if w > r {
                break;
            }
            returns.insert(w);
        }
    }
    let mut classes = Vec::new();
    let mut seen = HashSet::new();
    for w in &returns {
        let moved = tiling.tiles_meeting(&(&-&r + w), &(&r + w)).shifted(&-w);
        for c in sweep(&window.tiles, &moved.tiles) {
            if seen.insert(c.clone()) {
                classes.push(c);
            }
        }
    }
    let return_vectors: Vec<FieldElement> = returns.into_iter().collect();
    let span_rank = rational_rank(&return_vectors);
    SeedOverlaps {
        classes,
        return_vectors,
        span_rank,
    }
}

fn rational_rank(v: &[FieldElement]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = v.iter().map(|w| w.coords().to_vec()).collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let factor = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug)]
pub struct OverlapGraph {
    /// Classes in discovery order.
    pub nodes: Vec<OverlapClass>,
    /// `edges[n]` are the distinct children of node `n`, in sweep order.
    pub edges: Vec<Vec<usize>>,
    pub seeds: Vec<usize>,
    pub cap: usize,
    pub truncated: bool,
}

impl OverlapGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// Breadth-first closure of `seeds` under [`overlap_children`]. Stops
/// with `truncated` set once more than `cap` classes would be needed.
pub fn overlap_graph(geo: &GeometricSubstitution, seeds: &[OverlapClass], cap: usize) -> OverlapGraph {
    let mut nodes: Vec<OverlapClass> = Vec::new();
    let mut index: HashMap<OverlapClass, usize> = HashMap::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut seed_ids = Vec::new();
    let mut truncated = false;
    let mut queue = VecDeque::new();
    for s in seeds {
        if index.contains_key(s) {
            continue;
        }
        if nodes.len() == cap {
            truncated = true;
            break;
        }
        index.insert(s.clone(), nodes.len());
        seed_ids.push(nodes.len());
        queue.push_back(nodes.len());
        nodes.push(s.clone());
        edges.push(Vec::new());
    }
    'bfs: while let Some(n) = queue.pop_front() {
        if truncated {
            break;
        }
        let children = overlap_children(geo, &nodes[n]);
        let mut out = Vec::new();
        for c in children {
            let id = match index.get(&c) {
                Some(&id) => id,
                None => {
                    if nodes.len() == cap {
                        truncated = true;
                        edges[n] = out;
                        break 'bfs;
                    }
                    let id = nodes.len();
                    index.insert(c.clone(), id);
                    nodes.push(c);
                    edges.push(Vec::new());
                    queue.push_back(id);
                    id
                }
            };
            if !out.contains(&id) {
                out.push(id);
            }
        }
        edges[n] = out;
    }
    OverlapGraph {
        nodes,
        edges,
        seeds: seed_ids,
        cap,
        truncated,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumVerdict {
    PdsCertifiedByTheorem,
    PdsConsistentByOverlap,
    /// A closed set of classes none of which reaches a coincidence, with a
    /// cycle inside it.
    NotPdsEvidence {
        cycle: Vec<OverlapClass>,
        component: Vec<OverlapClass>,
    },
    Inconclusive { reason: String },
}

impl SpectrumVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            SpectrumVerdict::PdsCertifiedByTheorem => "PDS_CERTIFIED_BY_THEOREM",
            SpectrumVerdict::PdsConsistentByOverlap => "PDS_CONSISTENT_BY_OVERLAP",
            SpectrumVerdict::NotPdsEvidence { .. } => "NOT_PDS_EVIDENCE",
            SpectrumVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

/// Decides from the closed overlap graph. `span_rank` and `degree` come
/// from the seed return vectors and the field of λ.
pub fn spectrum_verdict(g: &OverlapGraph, span_rank: usize, degree: usize) -> SpectrumVerdict {
    if g.truncated {
        return SpectrumVerdict::Inconclusive {
            reason: format!("overlap graph exceeded the cap of {} classes", g.cap),
        };
    }
    if span_rank < degree {
        return SpectrumVerdict::Inconclusive {
            reason: format!("return vectors span rank {span_rank} < degree {degree}"),
        };
    }
    let n = g.nodes.len();
    let mut reverse = vec![Vec::new(); n];
    for (a, out) in g.edges.iter().enumerate() {
        for &b in out {
            reverse[b].push(a);
        }
    }
    let mut good = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&k| g.nodes[k].is_coincidence()).collect();
    for &k in &stack {
        good[k] = true;
    }
    while let Some(k) = stack.pop() {
        for &p in &reverse[k] {
            if !good[p] {
                good[p] = true;
                stack.push(p);
            }
        }
    }
    if good.iter().all(|&x| x) {
        return SpectrumVerdict::PdsConsistentByOverlap;
    }
    // Nodes that cannot reach a coincidence form a forward-closed set; any
    // terminal strongly connected component inside it carries a cycle.
    let comps = tarjan(&g.edges, &good);
    let comp_of = {
        let mut m = vec![usize::MAX; n];
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                m[v] = c;
            }
        }
        m
    };
    let terminal = comps
        .iter()
        .enumerate()
        .filter(|(c, members)| {
            members
                .iter()
                .all(|&v| g.edges[v].iter().all(|&w| comp_of[w] == *c))
        })
        .min_by_key(|(_, members)| members.iter().min().copied())
        .map(|(_, m)| m.clone())
        .expect("a finite graph has a terminal component");
    let mut members = terminal.clone();
    members.sort_unstable();
    let in_comp: HashSet<usize> = members.iter().copied().collect();
    let mut path = vec![members[0]];
    let cycle = loop {
        let cur = *path.last().unwrap();
        let next = *g.edges[cur]
            .iter()
            .find(|w| in_comp.contains(w))
            .expect("terminal component nodes have children inside it");
        if let Some(pos) = path.iter().position(|&p| p == next) {
            break path[pos..].to_vec();
        }
        path.push(next);
    };
    SpectrumVerdict::NotPdsEvidence {
        cycle: cycle.iter().map(|&k| g.nodes[k].clone()).collect(),
        component: members.iter().map(|&k| g.nodes[k].clone()).collect(),
    }
}

/// Strongly connected components of the subgraph on nodes with
/// `excluded[v] == false`; iterative Tarjan.
fn tarjan(edges: &[Vec<usize>], excluded: &[bool]) -> Vec<Vec<usize>> {
    let n = edges.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if excluded[root] || index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < edges[v].len() {
                let w = edges[v][*pos];
                *pos += 1;
                if excluded[w] {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::Substitution;
    use crate::tiling::fixed_tiling;

    fn geo(images: &[&str]) -> GeometricSubstitution {
        GeometricSubstitution::new(&Substitution::from_digits(images).unwrap()).unwrap()
    }

    fn full(images: &[&str]) -> (GeometricSubstitution, SeedOverlaps, OverlapGraph) {
        let g = geo(images);
        let seed = g.substitution().admissible_seed().unwrap();
        let t = fixed_tiling(&g, seed).unwrap();
        let s = seed_overlaps(&g, &t, 8);
        let graph = overlap_graph(&g, &s.classes, 500);
        (g, s, graph)
    }

    #[test]
    fn children_examples() {
        let g = geo(&["21", "1"]);
        let f = g.field().clone();
        let c = OverlapClass::canonical(0, 0, f.zero());
        let kids = overlap_children(&g, &c);
        assert_eq!(
            kids,
            vec![OverlapClass::canonical(1, 1, f.zero()), OverlapClass::canonical(0, 0, f.zero())]
        );
        let kids = overlap_children(&g, &OverlapClass::canonical(0, 1, f.zero()));
        assert_eq!(
            kids,
            vec![OverlapClass::canonical(0, 1, f.zero()), OverlapClass::canonical(0, 0, f.one())]
        );
        assert!(kids.iter().all(|k| k.is_valid(g.omega())));
    }

    #[test]
    fn canonical_orientation() {
        let g = geo(&["21", "1"]);
        let f = g.field().clone();
        let c = OverlapClass::canonical(0, 1, f.from_integer(-1));
        assert_eq!((c.i, c.j), (1, 0));
        assert_eq!(c.x, f.one());
        let c = OverlapClass::canonical(1, 0, f.zero());
        assert_eq!((c.i, c.j), (0, 1));
    }

    #[test]
    fn golden_seeds_and_graph() {
        let (g, s, graph) = full(&["21", "1"]);
        let f = g.field().clone();
        assert!(s.return_vectors.contains(&f.generator()));
        assert!(s.return_vectors.contains(&(&f.generator() + &f.one())));
        assert_eq!(s.span_rank, 2);
        assert!(!graph.truncated);
        assert!(graph.nodes.len() <= 20);
        assert_eq!(spectrum_verdict(&graph, s.span_rank, 2), SpectrumVerdict::PdsConsistentByOverlap);
    }

    #[test]
    fn coincidence_only_seed() {
        let g = geo(&["21", "1"]);
        let graph = overlap_graph(&g, &[OverlapClass::canonical(0, 0, g.field().zero())], 500);
        assert_eq!(graph.nodes.len(), 2);
        assert!(graph.nodes.iter().all(OverlapClass::is_coincidence));
    }

    #[test]
    fn unit_grid_rank() {
        let (_, s, _) = full(&["11"]);
        assert_eq!(s.return_vectors.len(), 8);
        assert_eq!(s.span_rank, 1);
    }

    #[test]
    fn thue_morse_has_a_bad_cycle() {
        let (_, s, graph) = full(&["12", "21"]);
        assert!(!graph.truncated);
        match spectrum_verdict(&graph, s.span_rank, 1) {
            SpectrumVerdict::NotPdsEvidence { cycle, .. } => {
                assert!(!cycle.is_empty());
                assert!(cycle.iter().all(|c| !c.is_coincidence()));
            }
            v => panic!("unexpected verdict {v:?}"),
        }
    }

    #[test]
    fn truncation_is_inconclusive() {
        let (g, s, _) = full(&["21", "1"]);
        let graph = overlap_graph(&g, &s.classes, 1);
        assert!(graph.truncated);
        assert_eq!(spectrum_verdict(&graph, 2, 2).label(), "INCONCLUSIVE");
    }
}
