//! Simple undirected graphs on dense vertex ids `0..n`, plus the structural
//! predicates used by the certificates: components, odd components after
//! vertex removal, bipartiteness, regularity, edge cuts and global edge
//! connectivity.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// Packed symmetric adjacency bit matrix for constant-time edge tests.
#[derive(Clone)]
struct BitMatrix {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        Self {
            words_per_row,
            bits: vec![0; words_per_row * n],
        }
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
    }
}

/// An immutable simple undirected graph.
///
/// Neighbor lists are sorted; there are no loops and no parallel edges.
/// Equality compares structure only, not labels.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    matrix: BitMatrix,
    edge_count: usize,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("label", &self.label)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n ≥ 1` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Self::from_edges(n, std::iter::empty())
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        let mut matrix = BitMatrix::new(n);
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order: n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if matrix.get(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            matrix.set(u, v);
            matrix.set(v, u);
            adj[u].push(v);
            adj[v].push(u);
            edge_count += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            adj,
            matrix,
            edge_count,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && v < self.order() && self.matrix.get(u, v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.edge_count == n * (n - 1) / 2
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.order();
        let mut a = vec![vec![0.0; n]; n];
        for (u, v) in self.edges() {
            a[u][v] = 1.0;
            a[v][u] = 1.0;
        }
        a
    }

    /// Adjacency rows as bitmasks; only available for `n ≤ 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.order() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect(),
        )
    }

    /// Same vertex set with the given edges deleted. Edges not present are ignored.
    pub fn without_edges<'a, I>(&self, removed: I) -> Graph
    where
        I: IntoIterator<Item = &'a (usize, usize)>,
    {
        let mut drop = BitMatrix::new(self.order());
        for &(u, v) in removed {
            if self.has_edge(u, v) {
                drop.set(u, v);
                drop.set(v, u);
            }
        }
        let kept: Vec<_> = self.edges().filter(|&(u, v)| !drop.get(u, v)).collect();
        let mut g = Graph::from_edges(self.order(), kept).expect("subgraph of a simple graph");
        g.label = self.label.clone();
        g
    }

    /// Induced subgraph on `keep`; vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        keep.check_within(self.order())?;
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]));
        Graph::from_edges(keep.len(), edges)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v));
        Graph::from_edges(n, edges).expect("complement of a simple graph")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        let mut g = Graph::from_edges(self.order(), edges).expect("permutation of a simple graph");
        g.label = self.label.clone();
        g
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.order(), edges).expect("union of simple graphs")
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_avoiding(&vec![false; self.order()])
    }

    /// Components of `G − s`.
    pub fn components_without(&self, s: &VertexSet) -> Result<Vec<VertexSet>, GraphError> {
        s.check_within(self.order())?;
        let mut removed = vec![false; self.order()];
        for &v in s.iter() {
            removed[v] = true;
        }
        Ok(self.components_avoiding(&removed))
    }

    fn components_avoiding(&self, removed: &[bool]) -> Vec<VertexSet> {
        let n = self.order();
        let mut seen = removed.to_vec();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(VertexSet(members));
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Number of odd-order components of `G − s`.
    pub fn odd_component_count(&self, s: &VertexSet) -> Result<usize, GraphError> {
        Ok(self
            .components_without(s)?
            .iter()
            .filter(|c| c.len() % 2 == 1)
            .count())
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|ns| ns.len() == d).then_some(d)
    }

    /// BFS two-colouring; on failure returns an odd cycle as a closed vertex walk
    /// `v0, v1, …, vk` with an edge `vk – v0`.
    pub fn bipartiteness(&self) -> Bipartiteness {
        let n = self.order();
        let mut color: Vec<Option<u8>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(1 - cu);
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Bipartiteness::OddCycle(odd_cycle(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Bipartiteness::Bipartite(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartiteness(), Bipartiteness::Bipartite(_))
    }

    /// `e_G(X, Y)`: edges with one end in each of the disjoint sets.
    pub fn cut_size(&self, x: &VertexSet, y: &VertexSet) -> Result<usize, GraphError> {
        x.check_within(self.order())?;
        y.check_within(self.order())?;
        if let Some(v) = x.first_common(y) {
            return Err(GraphError::Overlap(v));
        }
        Ok(x
            .iter()
            .map(|&u| y.iter().filter(|&&v| self.has_edge(u, v)).count())
            .sum())
    }
}

/// Component statistics of the subgraph induced by `alive` (bitmask form,
/// `n ≤ 64`): `(components, odd components)`.
pub(crate) fn mask_components(adj: &[u64], alive: u64) -> (usize, usize) {
    let mut rest = alive;
    let (mut total, mut odd) = (0, 0);
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut grow = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                grow |= adj[v];
            }
            frontier = grow & alive & !comp;
            comp |= frontier;
        }
        rest &= !comp;
        total += 1;
        odd += (comp.count_ones() % 2) as usize;
    }
    (total, odd)
}

/// Mask with the low `n` bits set.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    // u and w share a colour and are adjacent; climb to their common ancestor.
    let (mut a, mut b) = (u, w);
    let mut left = vec![];
    let mut right = vec![];
    while depth[a] > depth[b] {
        left.push(a);
        a = parent[a];
    }
    while depth[b] > depth[a] {
        right.push(b);
        b = parent[b];
    }
    while a != b {
        left.push(a);
        right.push(b);
        a = parent[a];
        b = parent[b];
    }
    left.push(a);
    right.reverse();
    left.extend(right);
    left
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartiteness {
    /// Colour (0 or 1) per vertex.
    Bipartite(Vec<u8>),
    OddCycle(Vec<usize>),
}

/// A sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn check_within(&self, n: usize) -> Result<(), GraphError> {
        match self.0.last() {
            Some(&v) if v >= n => Err(GraphError::VertexOutOfRange { vertex: v, order: n }),
            _ => Ok(()),
        }
    }

    fn first_common(&self, other: &VertexSet) -> Option<usize> {
        self.0.iter().copied().find(|&v| other.contains(v))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Self::new(iter)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Ordered list of non-empty, disjoint vertex sets covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self, GraphError> {
        let mut owner = vec![None; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(GraphError::InvalidPartition(format!("part {i} is empty")));
            }
            part.check_within(n)?;
            for &v in part {
                if let Some(j) = owner[v] {
                    return Err(GraphError::InvalidPartition(format!(
                        "vertex {v} lies in parts {j} and {i}"
                    )));
                }
                owner[v] = Some(i);
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(GraphError::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self { parts })
    }

    /// Part index of each vertex; `labels[v] < m`.
    pub fn from_labels(labels: &[usize]) -> Result<Self, GraphError> {
        let m = labels.iter().max().map_or(0, |&x| x + 1);
        let mut parts = vec![Vec::new(); m];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v);
        }
        Self::new(labels.len(), parts.into_iter().map(VertexSet).collect())
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// A global minimum edge cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCut {
    pub value: usize,
    /// One shore of the cut; empty when the graph is disconnected or trivial.
    pub side: VertexSet,
}

/// Global edge connectivity by Stoer–Wagner minimum cut over unit weights.
///
/// Disconnected graphs (and the single-vertex graph) report 0 with an empty cut.
pub fn edge_connectivity(g: &Graph) -> EdgeCut {
    let n = g.order();
    if n < 2 || !g.is_connected() {
        return EdgeCut {
            value: 0,
            side: VertexSet::default(),
        };
    }
    let mut w = vec![vec![0usize; n]; n];
    for (u, v) in g.edges() {
        w[u][v] = 1;
        w[v][u] = 1;
    }
    // merged[i]: original vertices currently contracted into super-vertex i
    let mut merged: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best = (usize::MAX, Vec::new());

    while alive.len() > 1 {
        let mut key = vec![0usize; n];
        let mut added = vec![false; n];
        let mut prev = alive[0];
        let mut last = alive[0];
        for step in 0..alive.len() {
            let next = alive
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .max_by_key(|&v| (key[v], std::cmp::Reverse(v)))
                .unwrap();
            added[next] = true;
            if step == alive.len() - 1 && key[next] < best.0 {
                best = (key[next], merged[next].clone());
            }
            prev = last;
            last = next;
            for &v in &alive {
                if !added[v] {
                    key[v] += w[next][v];
                }
            }
        }
        // contract `last` into `prev`
        let moved = std::mem::take(&mut merged[last]);
        merged[prev].extend(moved);
        for &v in &alive {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0;
        alive.retain(|&v| v != last);
    }
    EdgeCut {
        value: best.0,
        side: VertexSet::new(best.1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, gen_gd, path, petersen, star};

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert_eq!(Graph::empty(0), Err(GraphError::Empty));
    }

    #[test]
    fn component_examples() {
        assert_eq!(complete(4).components(), vec![VertexSet::new(0..4)]);
        let two_triangles = complete(3).disjoint_union(&complete(3));
        assert_eq!(
            two_triangles.components(),
            vec![VertexSet::new(0..3), VertexSet::new(3..6)]
        );
        let empty = Graph::empty(3).unwrap();
        assert_eq!(empty.components().len(), 3);
        assert!(empty.components().iter().all(|c| c.len() == 1));
    }

    #[test]
    fn odd_components_examples() {
        assert_eq!(complete(4).odd_component_count(&VertexSet::default()), Ok(0));
        assert_eq!(star(3).odd_component_count(&VertexSet::new([0])), Ok(3));
        let c6 = cycle(6);
        assert_eq!(c6.components_without(&VertexSet::new([0, 3])).unwrap().len(), 2);
        assert_eq!(c6.odd_component_count(&VertexSet::new([0, 3])), Ok(0));
        assert!(c6.odd_component_count(&VertexSet::new([6])).is_err());
    }

    #[test]
    fn bipartite_examples() {
        assert!(complete_bipartite(3, 3).is_bipartite());
        match cycle(5).bipartiteness() {
            Bipartiteness::OddCycle(c) => {
                assert_eq!(c.len() % 2, 1);
                let g = cycle(5);
                for i in 0..c.len() {
                    assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
        assert!(!gen_gd(3).unwrap().is_bipartite());
    }

    #[test]
    fn regular_degree_examples() {
        assert_eq!(complete(4).regular_degree(), Some(3));
        assert_eq!(path(3).regular_degree(), None);
        assert_eq!(petersen().regular_degree(), Some(3));
    }

    #[test]
    fn edge_connectivity_examples() {
        assert_eq!(edge_connectivity(&cycle(6)).value, 2);
        assert_eq!(edge_connectivity(&complete(4)).value, 3);
        let bridged = {
            let two = complete(4).disjoint_union(&complete(4));
            let mut edges: Vec<_> = two.edges().collect();
            edges.push((0, 4));
            Graph::from_edges(8, edges).unwrap()
        };
        let cut = edge_connectivity(&bridged);
        assert_eq!(cut.value, 1);
        let other = VertexSet::new((0..8).filter(|v| !cut.side.contains(*v)));
        assert_eq!(bridged.cut_size(&cut.side, &other), Ok(1));
        let disconnected = complete(3).disjoint_union(&complete(3));
        assert_eq!(edge_connectivity(&disconnected), EdgeCut { value: 0, side: VertexSet::default() });
    }

    #[test]
    fn cut_size_examples() {
        let k4 = complete(4);
        assert_eq!(k4.cut_size(&VertexSet::new([0, 1]), &VertexSet::new([2, 3])), Ok(4));
        assert_eq!(cycle(4).cut_size(&VertexSet::new([0]), &VertexSet::new([2])), Ok(0));
        let g3 = gen_gd(3).unwrap();
        assert_eq!(g3.cut_size(&VertexSet::new(0..3), &VertexSet::new(5..8)), Ok(3));
        assert_eq!(
            k4.cut_size(&VertexSet::new([0, 1]), &VertexSet::new([1, 2])),
            Err(GraphError::Overlap(1))
        );
    }

    #[test]
    fn mask_components_agree_with_bfs() {
        let g = petersen();
        let adj = g.adjacency_masks().unwrap();
        for removed in [vec![], vec![0, 1], vec![0, 2, 6, 8], vec![5, 6, 7, 8, 9]] {
            let s = VertexSet::new(removed);
            let comps = g.components_without(&s).unwrap();
            let alive = full_mask(10) & !s.to_mask();
            assert_eq!(
                mask_components(&adj, alive),
                (comps.len(), comps.iter().filter(|c| c.len() % 2 == 1).count())
            );
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![VertexSet::new([0, 1]), VertexSet::new([2])]).is_ok());
        assert!(Partition::new(3, vec![VertexSet::new([0, 1])]).is_err());
        assert!(Partition::new(3, vec![VertexSet::new([0, 1]), VertexSet::new([1, 2])]).is_err());
        assert!(Partition::new(2, vec![VertexSet::new([0, 1]), VertexSet::default()]).is_err());
    }
}
