//! Bruhat order on `S_n`: comparison, covers, intervals, maximal chains and
//! the chain and atom graphs of an interval.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DiGraph, Partition, Vertex};
use crate::perm::Perm;

/// `v <= w` iff `r_v(a,b) <= r_w(a,b)` for all `a, b`.
pub fn leq(v: &Perm, w: &Perm) -> Result<bool> {
    if v.n() != w.n() {
        return Err(Error::SizeMismatch(v.n(), w.n()));
    }
    Ok(leq_unchecked(v, w))
}

pub(crate) fn leq_unchecked(v: &Perm, w: &Perm) -> bool {
    let n = v.n();
    // Running count over columns for each threshold row `a`.
    let mut cv = vec![0usize; n + 2];
    let mut cw = vec![0usize; n + 2];
    for b in 1..=n {
        for a in 1..=v.at(b) {
            cv[a] += 1;
        }
        for a in 1..=w.at(b) {
            cw[a] += 1;
        }
        if (1..=n).any(|a| cv[a] > cw[a]) {
            return false;
        }
    }
    true
}

pub fn ensure_leq(v: &Perm, w: &Perm) -> Result<()> {
    if leq(v, w)? {
        Ok(())
    } else {
        Err(Error::NotLeq { v: v.to_string(), w: w.to_string() })
    }
}

/// Upper covers `v·t_{a,b}` (positions `a < b`) with length `ℓ(v) + 1`.
pub fn covers(v: &Perm) -> Vec<((usize, usize), Perm)> {
    let n = v.n();
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let (x, y) = (v.at(a), v.at(b));
            // Cover iff v(a) < v(b) and no position between holds a value in between.
            if x < y && !(a + 1..b).any(|c| x < v.at(c) && v.at(c) < y) {
                out.push(((a, b), v.right_mul_t(a, b)));
            }
        }
    }
    out
}

/// Lower covers `v·t_{a,b}` with length `ℓ(v) − 1`.
pub fn lower_covers(v: &Perm) -> Vec<((usize, usize), Perm)> {
    let n = v.n();
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let (x, y) = (v.at(a), v.at(b));
            if x > y && !(a + 1..b).any(|c| y < v.at(c) && v.at(c) < x) {
                out.push(((a, b), v.right_mul_t(a, b)));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub v: Perm,
    pub w: Perm,
}

impl Interval {
    pub fn new(v: Perm, w: Perm) -> Result<Self> {
        ensure_leq(&v, &w)?;
        Ok(Interval { v, w })
    }

    pub fn length(&self) -> usize {
        self.w.length() - self.v.length()
    }

    pub fn contains(&self, u: &Perm) -> bool {
        u.n() == self.v.n() && leq_unchecked(&self.v, u) && leq_unchecked(u, &self.w)
    }

    /// Covers of `u` that stay inside the interval.
    pub fn covers_within(&self, u: &Perm) -> Vec<((usize, usize), Perm)> {
        covers(u).into_iter().filter(|(_, x)| leq_unchecked(x, &self.w)).collect()
    }

    /// Atoms `v ⋖ v·t ≤ w`.
    pub fn atoms(&self) -> Vec<((usize, usize), Perm)> {
        self.covers_within(&self.v)
    }

    /// All elements, sorted by length and then lexicographically.
    pub fn elements(&self) -> Vec<Perm> {
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue = VecDeque::from([self.v.clone()]);
        seen.insert(self.v.clone());
        while let Some(u) = queue.pop_front() {
            for (_, x) in self.covers_within(&u) {
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        out
    }

    /// Lazy depth-first enumeration of maximal chains.
    pub fn chains(&self) -> Chains<'_> {
        Chains { interval: self, stack: vec![(vec![self.v.clone()], Vec::new())] }
    }

    /// Set of component partitions of `G_C` over all maximal chains `C`,
    /// computed by a memoized search over `(element, partition)` states.
    pub fn chain_partitions(&self) -> BTreeSet<Partition> {
        let mut memo: HashMap<(Perm, Partition), BTreeSet<Partition>> = HashMap::new();
        self.partitions_from(&self.v, Partition::discrete(self.v.n()), &mut memo)
    }

    fn partitions_from(
        &self,
        u: &Perm,
        part: Partition,
        memo: &mut HashMap<(Perm, Partition), BTreeSet<Partition>>,
    ) -> BTreeSet<Partition> {
        if u == &self.w {
            return BTreeSet::from([part]);
        }
        let key = (u.clone(), part);
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let mut out = BTreeSet::new();
        for ((a, b), x) in self.covers_within(u) {
            out.extend(self.partitions_from(&x, key.1.merge(a, b), memo));
        }
        memo.insert(key, out.clone());
        out
    }
}

pub struct Chains<'a> {
    interval: &'a Interval,
    stack: Vec<(Vec<Perm>, Vec<(usize, usize)>)>,
}

impl Iterator for Chains<'_> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        while let Some((elems, labels)) = self.stack.pop() {
            let last = elems.last().unwrap();
            if last == &self.interval.w {
                return Some(Chain { elements: elems, labels });
            }
            let mut next = self.interval.covers_within(last);
            next.reverse();
            for (t, x) in next {
                let mut e = elems.clone();
                e.push(x);
                let mut l = labels.clone();
                l.push(t);
                self.stack.push((e, l));
            }
        }
        None
    }
}

/// Saturated chain `u_0 ⋖ u_1 ⋖ ... ⋖ u_l` with `u_{i+1} = u_i · t_{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chain {
    elements: Vec<Perm>,
    labels: Vec<(usize, usize)>,
}

impl Chain {
    /// Validates the cover steps and derives the transposition labels.
    pub fn new(elements: Vec<Perm>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        let n = elements[0].n();
        let mut labels = Vec::new();
        for pair in elements.windows(2) {
            let (x, y) = (&pair[0], &pair[1]);
            if y.n() != n {
                return Err(Error::SizeMismatch(n, y.n()));
            }
            let diff: Vec<usize> = (1..=n).filter(|&i| x.at(i) != y.at(i)).collect();
            let ok = diff.len() == 2 && y.length() == x.length() + 1 && x.right_mul_t(diff[0], diff[1]) == *y;
            if !ok {
                return Err(Error::InvalidChain(format!("{x} -> {y} is not a cover")));
            }
            labels.push((diff[0], diff[1]));
        }
        Ok(Chain { elements, labels })
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Undirected graph on `[n]` with one edge `(a,b)` per chain step.
pub fn chain_graph(c: &Chain) -> DiGraph {
    let mut g = DiGraph::on_plain(c.elements[0].n());
    for &(a, b) in &c.labels {
        g.add_edge(Vertex::Plain(a), Vertex::Plain(b));
    }
    g
}

/// Undirected graph on `[n]` with an edge `(a,b)` for every atom `v·t_{a,b}`.
pub fn atom_graph(v: &Perm, w: &Perm) -> Result<DiGraph> {
    let iv = Interval::new(v.clone(), w.clone())?;
    let mut g = DiGraph::on_plain(v.n());
    for ((a, b), _) in iv.atoms() {
        g.add_edge(Vertex::Plain(a), Vertex::Plain(b));
    }
    Ok(g)
}

/// Partition of `[n]` given by the components of a graph on plain vertices.
pub fn partition_of(g: &DiGraph, n: usize) -> Partition {
    let mut p = Partition::discrete(n);
    for &(a, b) in g.edges() {
        if let (Vertex::Plain(a), Vertex::Plain(b)) = (a, b) {
            p = p.merge(a, b);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

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
    fn leq_examples() {
        assert!(leq(&p("43125"), &p("53412")).unwrap());
        assert!(leq(&p("12435"), &p("41325")).unwrap());
        assert!(!leq(&p("53412"), &p("43125")).unwrap());
        assert!(leq(&p("2413"), &p("2413")).unwrap());
        assert!(leq(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn leq_matches_rank_tables() {
        let all = Perm::all(4);
        for v in &all {
            let rv = v.rank_table();
            for w in &all {
                let rw = w.rank_table();
                let expect = rv.iter().flatten().zip(rw.iter().flatten()).all(|(x, y)| x <= y);
                assert_eq!(leq_unchecked(v, w), expect, "{v} {w}");
            }
        }
    }

    #[test]
    fn covers_examples() {
        let up: Vec<String> = covers(&Perm::identity(3)).into_iter().map(|(_, u)| u.to_string()).collect();
        assert_eq!(up, vec!["213", "132"]);
        assert!(covers(&Perm::longest(4)).is_empty());
        for u in Perm::all(4) {
            for (_, x) in covers(&u) {
                assert_eq!(x.length(), u.length() + 1);
                assert!(lower_covers(&x).iter().any(|(_, y)| y == &u));
            }
        }
    }

    #[test]
    fn atoms_and_graphs() {
        let iv = Interval::new(p("12435"), p("41325")).unwrap();
        let atoms: BTreeSet<String> = iv.atoms().into_iter().map(|(_, u)| u.to_string()).collect();
        assert_eq!(atoms, BTreeSet::from(["14235".into(), "13425".into(), "21435".into()]));
        let g = atom_graph(&p("12435"), &p("41325")).unwrap();
        assert_eq!(edges(&g), vec![(1, 2), (2, 3), (2, 4)]);
        assert_eq!(atom_graph(&p("2413"), &p("2413")).unwrap().num_edges(), 0);
        assert!(atom_graph(&p("53412"), &p("43125")).is_err());
    }

    #[test]
    fn chain_examples() {
        let c1 = Chain::new(["12435", "14235", "41235", "41325"].map(p).to_vec()).unwrap();
        assert_eq!(edges(&chain_graph(&c1)), vec![(1, 2), (2, 3), (3, 4)]);
        let c2 = Chain::new(["12435", "13425", "31425", "41325"].map(p).to_vec()).unwrap();
        // Position labels are (2,4), (1,2), (1,3); same components as the atom graph.
        assert_eq!(edges(&chain_graph(&c2)), vec![(1, 2), (1, 3), (2, 4)]);
        assert_eq!(partition_of(&chain_graph(&c2), 5), partition_of(&chain_graph(&c1), 5));
        let c0 = Chain::new(vec![p("123")]).unwrap();
        assert_eq!(chain_graph(&c0).num_edges(), 0);
        assert!(Chain::new(["12435", "41235"].map(p).to_vec()).is_err());
    }

    #[test]
    fn chains_enumerate_all_maximal() {
        let iv = Interval::new(Perm::identity(3), Perm::longest(3)).unwrap();
        let chains: Vec<Chain> = iv.chains().collect();
        assert_eq!(chains.len(), 4);
        for c in &chains {
            assert_eq!(c.len(), 3);
            Chain::new(c.elements().to_vec()).unwrap();
        }
        assert_eq!(iv.elements().len(), 6);
    }

    #[test]
    fn chain_partitions_are_unique() {
        let iv = Interval::new(p("12435"), p("41325")).unwrap();
        let parts = iv.chain_partitions();
        assert_eq!(parts.len(), 1);
        let g = atom_graph(&iv.v, &iv.w).unwrap();
        assert_eq!(parts.into_iter().next().unwrap(), partition_of(&g, 5));
    }
}
