//! Kazhdan-Lusztig varieties `N_{v,w}`: the patterned matrix `Z^(v)`,
//! unexpected zeros, the graph `G_{v,w}`, complexity and the closed formulas
//! for the families with no unexpected zeros, a single rectangle, and
//! `w = w0·t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::bruhat::{covers, ensure_leq, leq_unchecked};
use crate::diagram::{essential_set, opposite_rothe, Cell, Diagram};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Partition, Vertex};
use crate::perm::Perm;
use crate::symbolic::{expand_minors, fulton_conditions, Entry, Matrix, Polynomial, Var};

/// `Z^(v)`: 1 at `(v(i), i)`, zeros north and east of every 1, a variable
/// `z_{ij}` on every cell of `D°(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    pub n: usize,
    pub entries: Matrix,
}

impl ZMatrix {
    pub fn free_cells(&self) -> BTreeSet<Cell> {
        let mut out = BTreeSet::new();
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if matches!(e, Entry::Var(_)) {
                    out.insert((r + 1, c + 1));
                }
            }
        }
        out
    }
}

impl fmt::Display for ZMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    Entry::Zero => "0".to_string(),
                    Entry::One => "1".to_string(),
                    Entry::Var(v) => v.to_string(),
                })
                .collect();
            writeln!(f, "{}", cells.iter().map(|s| format!("{s:>4}")).collect::<String>())?;
        }
        Ok(())
    }
}

pub fn z_matrix(v: &Perm) -> ZMatrix {
    let n = v.n();
    let d = opposite_rothe(v);
    let mut entries = vec![vec![Entry::Zero; n]; n];
    for i in 1..=n {
        entries[v.at(i) - 1][i - 1] = Entry::One;
    }
    for &(i, j) in &d.cells {
        entries[i - 1][j - 1] = Entry::Var(Var::z(i, j));
    }
    ZMatrix { n, entries }
}

/// `t_{v(j),i} · v`, the permutation attached to the free cell `(i,j)`.
fn cell_move(v: &Perm, (i, j): Cell) -> Perm {
    v.left_mul_t(v.at(j), i)
}

/// Cells `(i,j) ∈ D°(v)` with `t_{v(j),i}·v ≰ w`.
pub fn unexpected_zeros(v: &Perm, w: &Perm) -> Result<Vec<Cell>> {
    ensure_leq(v, w)?;
    Ok(unexpected_zeros_unchecked(v, w))
}

fn unexpected_zeros_unchecked(v: &Perm, w: &Perm) -> Vec<Cell> {
    opposite_rothe(v).cells.into_iter().filter(|&c| !leq_unchecked(&cell_move(v, c), w)).collect()
}

/// `G_{v,w}` on `[n]`: an edge `v(j) → i` for every free cell that is not an
/// unexpected zero.
pub fn kl_graph(v: &Perm, w: &Perm) -> Result<DiGraph> {
    ensure_leq(v, w)?;
    Ok(kl_graph_unchecked(v, w))
}

fn kl_graph_unchecked(v: &Perm, w: &Perm) -> DiGraph {
    let mut g = DiGraph::on_plain(v.n());
    for c in opposite_rothe(v).cells {
        if leq_unchecked(&cell_move(v, c), w) {
            g.add_edge(Vertex::Plain(v.at(c.1)), Vertex::Plain(c.0));
        }
    }
    g
}

/// Graph with an edge `v(j) → i` for every cell of `D°(v)`. It coincides with
/// `G_{v,w}` whenever there are no unexpected zeros.
pub fn full_graph(v: &Perm) -> DiGraph {
    let mut g = DiGraph::on_plain(v.n());
    for (i, j) in opposite_rothe(v).cells {
        g.add_edge(Vertex::Plain(v.at(j)), Vertex::Plain(i));
    }
    g
}

/// `G_{v,w}` relabelled by positions: the edge `v(j) → i` becomes the
/// undirected pair `(j, v⁻¹(i))`, the transposition `v·t_{j,v⁻¹(i)}`. Its
/// components are those of every chain graph of `[v,w]`.
pub fn position_graph(v: &Perm, w: &Perm) -> Result<DiGraph> {
    ensure_leq(v, w)?;
    let vinv = v.inverse();
    let mut g = DiGraph::on_plain(v.n());
    for (i, j) in opposite_rothe(v).cells {
        if leq_unchecked(&cell_move(v, (i, j)), w) {
            let (a, b) = (j.min(vinv.at(i)), j.max(vinv.at(i)));
            g.add_edge(Vertex::Plain(a), Vertex::Plain(b));
        }
    }
    Ok(g)
}

/// `dim N_{v,w} − dim σ_{v,w}`.
pub fn complexity(v: &Perm, w: &Perm) -> Result<usize> {
    ensure_leq(v, w)?;
    Ok(complexity_unchecked(v, w))
}

pub(crate) fn complexity_unchecked(v: &Perm, w: &Perm) -> usize {
    let g = kl_graph_unchecked(v, w);
    w.length() - v.length() - (v.n() - g.num_components())
}

/// Determinantal generators: minors of `Z^(v)` for the essential rank
/// conditions of `w`, sign-normalized and deduplicated.
pub fn generators(v: &Perm, w: &Perm, limit: usize) -> Result<Vec<Polynomial>> {
    ensure_leq(v, w)?;
    let z = z_matrix(v);
    let mut out: BTreeSet<Polynomial> = BTreeSet::new();
    for c in fulton_conditions(w) {
        out.extend(expand_minors(&z.entries, &c, limit)?);
    }
    let mut v: Vec<Polynomial> = out.into_iter().collect();
    v.sort_by_key(|p| (p.degree(), p.to_string()));
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct KLReport {
    pub v: Perm,
    pub w: Perm,
    pub dim: usize,
    pub unexpected_zeros: Vec<Cell>,
    pub graph: DiGraph,
    pub components: usize,
    pub dim_sigma: usize,
    pub cyclomatic: usize,
    pub complexity: usize,
    pub toric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Polynomial>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytics: Option<Analytics>,
}

/// `with_generators` expands minors up to `size_limit`; analytics are filled in
/// whenever there are no unexpected zeros.
pub fn analyze(v: &Perm, w: &Perm, with_generators: bool, size_limit: usize) -> Result<KLReport> {
    ensure_leq(v, w)?;
    let uz = unexpected_zeros_unchecked(v, w);
    let graph = kl_graph_unchecked(v, w);
    let dim = w.length() - v.length();
    debug_assert_eq!(dim, opposite_rothe(v).len() - opposite_rothe(w).len());
    let components = graph.num_components();
    let dim_sigma = graph.cone_dimension();
    let complexity = dim - dim_sigma;
    let generators = if with_generators { Some(generators(v, w, size_limit)?) } else { None };
    let analytics = if uz.is_empty() { Some(analytics_unchecked(v, w)) } else { None };
    Ok(KLReport {
        v: v.clone(),
        w: w.clone(),
        dim,
        unexpected_zeros: uz,
        cyclomatic: graph.cyclomatic(),
        graph,
        components,
        dim_sigma,
        complexity,
        toric: complexity == 0,
        generators,
        analytics,
    })
}

/// South-west corners of `D°(v)`: cells with no cell of `D°(v)` anywhere
/// south in their column and none anywhere west in their row.
pub fn sw_corners(v: &Perm) -> BTreeSet<Cell> {
    let d = opposite_rothe(v);
    d.cells
        .iter()
        .copied()
        .filter(|&(i, j)| !d.cells.iter().any(|&(r, c)| (c == j && r > i) || (r == i && c < j)))
        .collect()
}

/// Positions `i` with `v(i) = n − i + 1` whose row and column avoid `D°(v)`.
pub fn antidiagonal_fixed(v: &Perm) -> BTreeSet<usize> {
    let n = v.n();
    let d = opposite_rothe(v);
    (1..=n)
        .filter(|&i| v.at(i) == n - i + 1)
        .filter(|&i| !d.cells.iter().any(|&(r, c)| c == i || r == n - i + 1))
        .collect()
}

pub type Pair = (Cell, Cell);

fn distance((i, j): Cell, (k, l): Cell) -> usize {
    (k - i) + (l - j)
}

/// `P_v`: pairs `((i,j),(k,l))` of `D°(v)` with `i < k`, `j < l`, taken in
/// increasing distance unless the first or the second cell already occurs in
/// a strictly shorter pair.
pub fn pair_set(v: &Perm) -> Vec<Pair> {
    pair_set_of(&opposite_rothe(v))
}

pub fn pair_set_of(d: &Diagram) -> Vec<Pair> {
    let mut by_dist: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
    for &a in &d.cells {
        for &b in &d.cells {
            if a.0 < b.0 && a.1 < b.1 {
                by_dist.entry(distance(a, b)).or_default().push((a, b));
            }
        }
    }
    // Only strictly shorter pairs block, so each distance level is decided
    // against the pairs of the previous levels and tie order is irrelevant.
    let mut out: Vec<Pair> = Vec::new();
    let mut firsts: BTreeSet<Cell> = BTreeSet::new();
    let mut seconds: BTreeSet<Cell> = BTreeSet::new();
    for (_, level) in by_dist {
        let taken: Vec<Pair> = level.into_iter().filter(|(a, b)| !firsts.contains(a) && !seconds.contains(b)).collect();
        for &(a, b) in &taken {
            firsts.insert(a);
            seconds.insert(b);
        }
        out.extend(taken);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analytics {
    pub c_v: BTreeSet<Cell>,
    pub a_v: BTreeSet<usize>,
    pub p_v: Vec<Pair>,
    pub nu: usize,
    pub complexity: usize,
}

/// Requires that `Σ_v` has no unexpected zeros for `w`.
pub fn no_unexpected_zero_analytics(v: &Perm, w: &Perm) -> Result<Analytics> {
    let uz = unexpected_zeros(v, w)?;
    if !uz.is_empty() {
        return Err(Error::UnexpectedZeros(uz));
    }
    Ok(analytics_unchecked(v, w))
}

fn analytics_unchecked(v: &Perm, w: &Perm) -> Analytics {
    let p_v = pair_set(v);
    let d_w = opposite_rothe(w).len();
    Analytics {
        c_v: sw_corners(v),
        a_v: antidiagonal_fixed(v),
        nu: kl_graph_unchecked(v, w).cyclomatic(),
        complexity: p_v.len().saturating_sub(d_w),
        p_v,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaCase {
    /// All relevant subranks of `v` strictly below the bound.
    BelowBound,
    /// Exactly one of two subranks at the bound.
    OneAtBound,
    /// Every relevant subrank at the bound.
    AtBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseFormula {
    pub case: FormulaCase,
    pub nu: usize,
    pub predicted: i64,
    pub direct: usize,
}

impl CaseFormula {
    pub fn holds(&self) -> bool {
        self.predicted == self.direct as i64
    }
}

/// If `D°(w)` is a single rectangle, returns its essential cell.
pub fn single_rectangle(w: &Perm) -> Option<Cell> {
    let d = opposite_rothe(w);
    if d.is_empty() || d.components().len() != 1 {
        return None;
    }
    let rows: BTreeSet<usize> = d.cells.iter().map(|c| c.0).collect();
    let cols: BTreeSet<usize> = d.cells.iter().map(|c| c.1).collect();
    if rows.len() * cols.len() != d.len() {
        return None;
    }
    let ess = essential_set(&d);
    (ess.len() == 1).then(|| *ess.iter().next().unwrap())
}

/// Complexity of `N_{v,w}` when `D°(w)` is one rectangle with essential cell
/// `(a,b)` and `m = r_w(a,b)`.
pub fn rectangle_complexity(v: &Perm, w: &Perm) -> Result<CaseFormula> {
    ensure_leq(v, w)?;
    let (a, b) =
        single_rectangle(w).ok_or_else(|| Error::Precondition(format!("D°({w}) is not a single rectangle")))?;
    let m = w.rank_unchecked(a, b);
    let nu = kl_graph_unchecked(v, w).cyclomatic();
    let d_w = opposite_rothe(w).len() as i64;
    let (case, predicted) = if v.rank_unchecked(a, b) < m {
        (FormulaCase::BelowBound, nu as i64 - d_w)
    } else {
        (FormulaCase::AtBound, nu as i64)
    };
    Ok(CaseFormula { case, nu, predicted, direct: complexity_unchecked(v, w) })
}

/// Complexity of `N_{v,w}` for `w = w0·t_{l,k}`, `l < k`, with essential
/// cells `(n−k+2, l)` and `(n−l+1, k−1)`, both of rank `l − 1`.
pub fn w0t_complexity(v: &Perm, l: usize, k: usize) -> Result<CaseFormula> {
    let n = v.n();
    if !(1 <= l && l < k && k <= n) {
        return Err(Error::Precondition(format!("need 1 <= l < k <= n, got l={l}, k={k}")));
    }
    let w = Perm::longest(n).right_mul_t(l, k);
    ensure_leq(v, &w)?;
    let m = l - 1;
    let r1 = v.rank_unchecked(n - k + 2, l);
    let r2 = v.rank_unchecked(n - l + 1, k - 1);
    let nu = kl_graph_unchecked(v, &w).cyclomatic() as i64;
    let d_w = (2 * (k - l) - 1) as i64;
    debug_assert_eq!(d_w as usize, opposite_rothe(&w).len());
    let (case, predicted) = match (r1 == m, r2 == m) {
        (false, false) => (FormulaCase::BelowBound, nu - d_w),
        (true, true) => (FormulaCase::AtBound, nu),
        _ => (FormulaCase::OneAtBound, nu - d_w + (k - l) as i64),
    };
    Ok(CaseFormula { case, nu: nu as usize, predicted, direct: complexity_unchecked(v, &w) })
}

#[derive(Clone, Debug)]
pub enum Fixed {
    N(usize),
    V(Perm),
    W(Perm),
}

/// Complexities achieved as the free permutation(s) vary.
pub fn complexity_range(fixed: &Fixed) -> RangeInclusive<usize> {
    match fixed {
        Fixed::N(n) => {
            let m = n.saturating_sub(1);
            0..=m * m.saturating_sub(1) / 2
        }
        Fixed::V(v) => 0..=pair_set(v).len(),
        Fixed::W(w) => {
            let n = w.n();
            let simple = (1..n).filter(|&i| leq_unchecked(&Perm::simple(n, i), w)).count();
            0..=w.length() - simple
        }
    }
}

/// Components of `G_C` for a toric interval, read off the one-line
/// notations: the cycles of `a ↦ w⁻¹(v(a))`.
pub fn cyclic_components(v: &Perm, w: &Perm) -> Vec<Vec<usize>> {
    let n = v.n();
    let winv = w.inverse();
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            cyc.push(a);
            a = winv.at(v.at(a));
        }
        cyc.sort();
        out.push(cyc);
    }
    out.sort();
    out
}

fn ensure_toric(v: &Perm, w: &Perm) -> Result<()> {
    if complexity(v, w)? != 0 {
        return Err(Error::Precondition(format!("N_{{{v},{w}}} is not toric")));
    }
    Ok(())
}

/// Under toricity, `a` is moved in `[v,w]` iff `v(a) != w(a)`.
pub fn moved_in(v: &Perm, w: &Perm, a: usize) -> Result<bool> {
    ensure_toric(v, w)?;
    if a == 0 || a > v.n() {
        return Err(Error::BadPosition(a, v.n()));
    }
    Ok(v.at(a) != w.at(a))
}

/// Vertices that are not isolated in the chain graphs of `[v,w]`.
pub fn moved_vertices(v: &Perm, w: &Perm) -> Result<BTreeSet<usize>> {
    let g = position_graph(v, w)?;
    Ok(g.edges()
        .iter()
        .flat_map(|&(a, b)| [a, b])
        .filter_map(|x| match x {
            Vertex::Plain(i) => Some(i),
            Vertex::Star(_) => None,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendVerdict {
    pub transposition: (usize, usize),
    pub predicted_toric: bool,
    pub complexity: usize,
}

/// Extends a toric `[v,w]` by a cover `w ⋖ w2 = w·t_{a,b}`: predicted toric
/// iff `a` and `b` lie in different components of `G_C`.
pub fn extend_by_cover(v: &Perm, w: &Perm, w2: &Perm) -> Result<ExtendVerdict> {
    ensure_toric(v, w)?;
    let (a, b) = covers(w)
        .into_iter()
        .find(|(_, u)| u == w2)
        .map(|(t, _)| t)
        .ok_or_else(|| Error::Precondition(format!("{w2} does not cover {w}")))?;
    let comps = cyclic_components(v, w);
    let same = comps.iter().any(|c| c.contains(&a) && c.contains(&b));
    Ok(ExtendVerdict { transposition: (a, b), predicted_toric: !same, complexity: complexity_unchecked(v, w2) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueVerdict {
    pub predicted_toric: bool,
    pub complexity: usize,
}

/// Glues toric `[u,v]` and `[v,w]`. The union of the two chain graphs has a
/// cycle iff components of the two sides overlap cyclically, i.e. iff the
/// bipartite graph with a node per component and an edge per vertex `a`
/// (joining the components containing `a`) has a cycle.
pub fn glue(u: &Perm, v: &Perm, w: &Perm) -> Result<GlueVerdict> {
    ensure_toric(u, v)?;
    ensure_toric(v, w)?;
    let n = u.n();
    let side = |comps: Vec<Vec<usize>>| {
        let mut at = vec![0; n + 1];
        for (idx, c) in comps.iter().enumerate() {
            for &a in c {
                at[a] = idx;
            }
        }
        at
    };
    let left = side(cyclic_components(u, v));
    let right = side(cyclic_components(v, w));
    let mut g = DiGraph::new();
    for a in 1..=n {
        g.add_edge(Vertex::Plain(left[a]), Vertex::Star(right[a]));
    }
    Ok(GlueVerdict { predicted_toric: g.is_forest(), complexity: complexity_unchecked(u, w) })
}

/// Component partition of `G_{v,w}` in position labels.
pub fn position_partition(v: &Perm, w: &Perm) -> Result<Partition> {
    let g = position_graph(v, w)?;
    Ok(crate::bruhat::partition_of(&g, v.n()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;
    use crate::symbolic::DEFAULT_SIZE_LIMIT;

    fn edges(g: &DiGraph) -> Vec<(usize, usize)> {
        g.sorted_edges()
            .into_iter()
            .map(|(a, b)| match (a, b) {
                (Vertex::Plain(a), Vertex::Plain(b)) => (a, b),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn z_matrix_examples() {
        let z = z_matrix(&p("43125"));
        assert_eq!(z.free_cells(), BTreeSet::from([(2, 3), (5, 1), (5, 2), (5, 3), (5, 4)]));
        let id = z_matrix(&Perm::identity(4));
        assert_eq!(id.free_cells().len(), 6);
        assert!(id.free_cells().iter().all(|&(i, j)| i > j));
        assert!(z_matrix(&Perm::longest(4)).free_cells().is_empty());
    }

    #[test]
    fn worked_pair() {
        let (v, w) = (p("43125"), p("53412"));
        assert_eq!(unexpected_zeros(&v, &w).unwrap(), vec![(5, 2), (5, 3)]);
        let g = kl_graph(&v, &w).unwrap();
        assert_eq!(edges(&g), vec![(1, 2), (2, 5), (4, 5)]);
        let r = analyze(&v, &w, true, DEFAULT_SIZE_LIMIT).unwrap();
        assert_eq!(r.dim_sigma, 3);
        assert_eq!(r.complexity, 0);
        let gens: Vec<String> = r.generators.unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(gens, vec!["z52", "z53 - z23*z54"]);
        for c in opposite_rothe(&v).cells {
            let ok = leq_unchecked(&cell_move(&v, c), &w);
            assert_eq!(ok, !r.unexpected_zeros.contains(&c));
        }
    }

    #[test]
    fn trivial_cases() {
        let v = p("31524");
        assert!(unexpected_zeros(&v, &Perm::longest(5)).unwrap().is_empty());
        for (_, u) in covers(&v) {
            assert_eq!(kl_graph(&v, &u).unwrap().num_edges(), 1);
            assert_eq!(complexity(&v, &u).unwrap(), 0);
        }
        assert!(kl_graph(&p("53412"), &p("43125")).is_err());
    }

    #[test]
    fn interval_graph_matches_atoms() {
        let (v, w) = (p("12435"), p("41325"));
        assert_eq!(edges(&kl_graph(&v, &w).unwrap()), vec![(1, 2), (2, 3), (2, 4)]);
        let atoms = crate::bruhat::atom_graph(&v, &w).unwrap();
        assert_eq!(position_partition(&v, &w).unwrap(), crate::bruhat::partition_of(&atoms, 5));
    }

    #[test]
    fn full_graph_and_corners() {
        let v = p("58672341");
        let g = full_graph(&v);
        assert_eq!(edges(&g), vec![(2, 3), (2, 4), (3, 4), (5, 6), (5, 7), (5, 8), (6, 7)]);
        assert_eq!(sw_corners(&v).len(), 2);
        // Position 8 carries the antidiagonal 1 in row 1; vertex 1 is isolated.
        assert_eq!(antidiagonal_fixed(&v), BTreeSet::from([8]));
        assert!(!g.edges().iter().any(|&(a, b)| a == Vertex::Plain(1) || b == Vertex::Plain(1)));
        assert_eq!(g.cone_dimension(), 5);
    }

    #[test]
    fn pair_set_examples() {
        let v = p("423516");
        assert_eq!(opposite_rothe(&v).len(), 9);
        assert_eq!(pair_set(&v).len(), 4);
        // An antichain diagram has no pairs.
        assert!(pair_set(&Perm::longest(5)).is_empty());
        assert!(pair_set(&p("2413")).is_empty());
        // Identity: complexity of N_{id,w0} is C(n-1,2).
        assert_eq!(pair_set(&Perm::identity(5)).len(), 6);
    }

    #[test]
    fn interval_toolkit() {
        let (v, w) = (p("12435"), p("41325"));
        let e = extend_by_cover(&v, &w, &p("42315")).unwrap();
        assert_eq!(e.transposition, (2, 4));
        assert!(!e.predicted_toric);
        assert_eq!(e.complexity, 1);
        let e = extend_by_cover(&v, &w, &p("41352")).unwrap();
        assert_eq!(e.transposition, (4, 5));
        assert!(e.predicted_toric);
        assert_eq!(e.complexity, 0);
        assert_eq!(cyclic_components(&v, &w), vec![vec![1, 2, 3, 4], vec![5]]);
        assert!(moved_in(&v, &w, 2).unwrap());
        assert!(!moved_in(&v, &w, 5).unwrap());
        assert!(moved_in(&v, &p("42315"), 2).is_err());
        assert!(moved_vertices(&v, &p("42315")).unwrap().contains(&2));
    }

    #[test]
    fn formulas_on_examples() {
        let r = rectangle_complexity(&Perm::identity(4), &p("1324")).unwrap_err();
        assert!(matches!(r, Error::Precondition(_)));
        let w = p("2143");
        assert_eq!(single_rectangle(&w), Some((3, 2)));
        for v in Perm::all(4).into_iter().filter(|v| leq_unchecked(v, &w)) {
            assert!(rectangle_complexity(&v, &w).unwrap().holds(), "{v}");
        }
        for v in Perm::all(4) {
            for l in 1..4 {
                for k in l + 1..=4 {
                    if let Ok(f) = w0t_complexity(&v, l, k) {
                        assert!(f.holds(), "{v} {l} {k} {f:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(complexity_range(&Fixed::N(5)), 0..=6);
        let id = Perm::identity(5);
        assert_eq!(complexity_range(&Fixed::V(id.clone())), 0..=complexity(&id, &Perm::longest(5)).unwrap());
        assert_eq!(complexity_range(&Fixed::W(Perm::longest(5))), 0..=6);
    }
}
