//! Small directed multigraphs, their edge cones, cyclomatic numbers and the
//! doubly-chordal-bipartite predicate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertex label. Column vertices of bipartite graphs are starred (`3*`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Vertex {
    Plain(usize),
    Star(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Plain(i) => write!(f, "{i}"),
            Vertex::Star(i) => write!(f, "{i}*"),
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiGraph {
    vertices: BTreeSet<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
}

impl DiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on the plain vertices `1..=n` with no edges.
    pub fn on_plain(n: usize) -> Self {
        DiGraph { vertices: (1..=n).map(Vertex::Plain).collect(), edges: Vec::new() }
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    /// Adds an edge (multi-edges are kept) and its endpoints.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) {
        self.vertices.insert(a);
        self.vertices.insert(b);
        self.edges.push((a, b));
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge list sorted, for comparisons that ignore insertion order.
    pub fn sorted_edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut e = self.edges.clone();
        e.sort();
        e
    }

    /// Connected components of the undirected view, each sorted, in order of
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let index: BTreeMap<Vertex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let verts: Vec<Vertex> = self.vertices.iter().copied().collect();
        let mut uf = UnionFind::new(verts.len());
        for (a, b) in &self.edges {
            uf.union(index[a], index[b]);
        }
        let mut groups: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
        for (i, v) in verts.iter().enumerate() {
            groups.entry(uf.find(i)).or_default().push(*v);
        }
        let mut comps: Vec<Vec<Vertex>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    pub fn num_components(&self) -> usize {
        self.components().len()
    }

    /// `|E| - |V| + #components`, multi-edges counted.
    pub fn cyclomatic(&self) -> usize {
        self.edges.len() + self.num_components() - self.vertices.len()
    }

    pub fn is_forest(&self) -> bool {
        self.cyclomatic() == 0
    }

    pub fn is_acyclic(&self) -> bool {
        let index: BTreeMap<Vertex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in &self.edges {
            out[index[a]].push(index[b]);
            indeg[index[b]] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &x in &out[u] {
                indeg[x] -= 1;
                if indeg[x] == 0 {
                    stack.push(x);
                }
            }
        }
        seen == n
    }

    /// `Cone(e_a - e_b | a -> b)`; starred vertices get their own coordinates,
    /// so a bipartite edge `a -> b*` contributes `e_a - f_b`.
    pub fn edge_cone(&self) -> Result<Cone> {
        if !self.is_acyclic() {
            return Err(Error::Cyclic);
        }
        let coords: Vec<Vertex> = self.vertices.iter().copied().collect();
        let index: BTreeMap<Vertex, usize> = coords.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut gens: BTreeSet<Vec<i64>> = BTreeSet::new();
        for (a, b) in &self.edges {
            let mut g = vec![0i64; coords.len()];
            g[index[a]] += 1;
            g[index[b]] -= 1;
            gens.insert(g);
        }
        Ok(Cone { coords, generators: gens.into_iter().collect() })
    }

    /// Dimension of the edge cone, `|V| - #components`. The rank of the
    /// generator matrix is computed as well and must agree.
    pub fn cone_dimension(&self) -> usize {
        let dim = self.vertices.len() - self.num_components();
        let coords: Vec<Vertex> = self.vertices.iter().copied().collect();
        let index: BTreeMap<Vertex, usize> = coords.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let rows: Vec<Vec<i64>> = self
            .edges
            .iter()
            .map(|(a, b)| {
                let mut g = vec![0i64; coords.len()];
                g[index[a]] += 1;
                g[index[b]] -= 1;
                g
            })
            .collect();
        let r = integer_rank(&rows);
        assert_eq!(r, dim, "edge cone rank disagrees with |V| - #components");
        dim
    }

    /// 2-colouring of the undirected view, if one exists.
    pub fn bipartition(&self) -> Option<BTreeMap<Vertex, bool>> {
        let adj = self.simple_adjacency();
        let mut color: BTreeMap<Vertex, bool> = BTreeMap::new();
        for &s in &self.vertices {
            if color.contains_key(&s) {
                continue;
            }
            color.insert(s, false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = color[&u];
                for &x in &adj[&u] {
                    match color.get(&x) {
                        Some(&cx) if cx == cu => return None,
                        Some(_) => {}
                        None => {
                            color.insert(x, !cu);
                            stack.push(x);
                        }
                    }
                }
            }
        }
        Some(color)
    }

    fn simple_adjacency(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = self.vertices.iter().map(|&v| (v, BTreeSet::new())).collect();
        for &(a, b) in &self.edges {
            if a != b {
                adj.get_mut(&a).unwrap().insert(b);
                adj.get_mut(&b).unwrap().insert(a);
            }
        }
        adj
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for v in &self.vertices {
            s.push_str(&format!("  \"{v}\";\n"));
        }
        for (a, b) in &self.edges {
            s.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    /// Coordinate order of the ambient lattice.
    pub coords: Vec<Vertex>,
    /// Deduplicated ray generators.
    pub generators: Vec<Vec<i64>>,
}

impl Cone {
    pub fn ambient_dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn dimension(&self) -> usize {
        integer_rank(&self.generators)
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let nrows = m.len();
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = 1i128;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                m[r][c] = (m[rank][col] * m[r][c] - m[r][col] * m[rank][c]) / prev;
            }
            m[r][col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Every cycle of length at least 6 has at least two chords. Cycles are
/// enumerated exhaustively on the simple undirected view.
pub fn doubly_chordal_bipartite(g: &DiGraph) -> Result<bool> {
    if g.bipartition().is_none() {
        return Err(Error::NotBipartite);
    }
    let adj = g.simple_adjacency();
    let verts: Vec<Vertex> = g.vertices.iter().copied().collect();
    let idx: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs: Vec<Vec<usize>> = verts.iter().map(|v| adj[v].iter().map(|x| idx[x]).collect()).collect();
    let n = verts.len();
    let mut is_adj = vec![vec![false; n]; n];
    for (u, ns) in nbrs.iter().enumerate() {
        for &x in ns {
            is_adj[u][x] = true;
        }
    }
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        let ok = extend_cycles(s, &nbrs, &is_adj, &mut path, &mut on_path, 0);
        on_path[s] = false;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth-first extension of simple paths starting at `start` through vertices
/// larger than `start`; returns false on the first long cycle with fewer than
/// two chords. `chords` counts edges between non-consecutive path vertices,
/// excluding the would-be closing pair (start, last). It only grows as the
/// path extends, so paths with two chords are pruned.
fn extend_cycles(
    start: usize,
    nbrs: &[Vec<usize>],
    is_adj: &[Vec<bool>],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    chords: usize,
) -> bool {
    if chords >= 2 {
        return true;
    }
    let u = *path.last().unwrap();
    let k = path.len();
    for &x in &nbrs[u] {
        if x == start && k >= 6 {
            return false;
        }
        if x > start && !on_path[x] {
            let mut extra = path.iter().take(k - 1).skip(1).filter(|&&y| is_adj[x][y]).count();
            if k >= 3 && is_adj[start][u] {
                extra += 1;
            }
            path.push(x);
            on_path[x] = true;
            let ok = extend_cycles(start, nbrs, is_adj, path, on_path, chords + extra);
            on_path[x] = false;
            path.pop();
            if !ok {
                return false;
            }
        }
    }
    true
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Partition of `1..=n` under a sequence of merges; used for chain graphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    /// `label[i]` is the smallest element of the block of `i + 1`.
    label: Vec<u8>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition { label: (0..n as u8).collect() }
    }

    pub fn merge(&self, a: usize, b: usize) -> Self {
        let la = self.label[a - 1];
        let lb = self.label[b - 1];
        if la == lb {
            return self.clone();
        }
        let (keep, drop) = (la.min(lb), la.max(lb));
        Partition { label: self.label.iter().map(|&l| if l == drop { keep } else { l }).collect() }
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.label[a - 1] == self.label[b - 1]
    }

    pub fn num_blocks(&self) -> usize {
        self.label.iter().enumerate().filter(|(i, &l)| *i == l as usize).count()
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut m: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for (i, &l) in self.label.iter().enumerate() {
            m.entry(l).or_default().push(i + 1);
        }
        m.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Vertex::{Plain as P, Star as S};

    fn undirected(edges: &[(Vertex, Vertex)]) -> DiGraph {
        let mut g = DiGraph::new();
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    #[test]
    fn single_edge_and_path() {
        let g = undirected(&[(P(1), P(2))]);
        assert_eq!(g.cone_dimension(), 1);
        assert_eq!(g.edge_cone().unwrap().dimension(), 1);
        let g = undirected(&[(P(1), P(2)), (P(2), P(3))]);
        assert_eq!(g.cone_dimension(), 2);
        assert_eq!(g.cyclomatic(), 0);
    }

    #[test]
    fn edgeless_and_double_edge() {
        let g = DiGraph::on_plain(4);
        assert_eq!(g.cone_dimension(), 0);
        assert_eq!(g.num_components(), 4);
        let g = undirected(&[(P(1), P(2)), (P(1), P(2))]);
        assert_eq!(g.cyclomatic(), 1);
        assert_eq!(g.edge_cone().unwrap().generators.len(), 1);
    }

    #[test]
    fn directed_cycle_rejected() {
        let g = undirected(&[(P(1), P(2)), (P(2), P(1))]);
        assert_eq!(g.edge_cone(), Err(Error::Cyclic));
    }

    #[test]
    fn rank_small_matrices() {
        assert_eq!(integer_rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(integer_rank(&[vec![2, 4], vec![1, 2]]), 1);
        assert_eq!(integer_rank(&[vec![0, 0]]), 0);
        assert_eq!(integer_rank(&[vec![3, 1], vec![1, 3]]), 2);
    }

    fn double_square() -> DiGraph {
        undirected(&[(P(1), S(1)), (P(1), S(2)), (P(2), S(2)), (P(2), S(1)), (P(2), S(3)), (P(3), S(2)), (P(3), S(3))])
    }

    #[test]
    fn doubly_chordal_examples() {
        assert!(!doubly_chordal_bipartite(&double_square()).unwrap());
        let mut k33 = DiGraph::new();
        for i in 1..=3 {
            for j in 1..=3 {
                k33.add_edge(P(i), S(j));
            }
        }
        assert!(doubly_chordal_bipartite(&k33).unwrap());
        let tree = undirected(&[(P(1), S(1)), (P(1), S(2)), (P(2), S(2))]);
        assert!(doubly_chordal_bipartite(&tree).unwrap());
        let six_cycle =
            undirected(&[(P(1), S(1)), (S(1), P(2)), (P(2), S(2)), (S(2), P(3)), (P(3), S(3)), (S(3), P(1))]);
        assert!(!doubly_chordal_bipartite(&six_cycle).unwrap());
        let triangle = undirected(&[(P(1), P(2)), (P(2), P(3)), (P(3), P(1))]);
        assert_eq!(doubly_chordal_bipartite(&triangle), Err(Error::NotBipartite));
    }

    #[test]
    fn partitions() {
        let p = Partition::discrete(4).merge(1, 3).merge(3, 4);
        assert_eq!(p.blocks(), vec![vec![1, 3, 4], vec![2]]);
        assert_eq!(p.num_blocks(), 2);
        assert!(p.same_block(4, 1));
    }

    #[test]
    fn dot_output() {
        let g = undirected(&[(P(3), S(1))]);
        assert_eq!(g.to_dot("G"), "digraph G {\n  \"3\";\n  \"1*\";\n  \"3\" -> \"1*\";\n}\n");
    }
}
