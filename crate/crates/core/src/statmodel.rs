//! Gaussian conditional independence statements realized as symmetric matrix
//! Schubert or Kazhdan-Lusztig varieties, and quasi-independence models read
//! off toric matrix Schubert varieties.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::diagram::{hook_components, regions};
use crate::error::{Error, Result};
use crate::graph::{doubly_chordal_bipartite, DiGraph, Vertex};
use crate::kl;
use crate::matrix_schubert::analyze_sym_low;
use crate::perm::Perm;
use crate::symbolic::{expand_minors_on, fulton_conditions, symmetric_matrix, Polynomial};

/// `A ⊥ B | C` for an `m`-dimensional Gaussian vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CIStatement {
    pub m: usize,
    pub a: BTreeSet<usize>,
    pub b: BTreeSet<usize>,
    pub c: BTreeSet<usize>,
}

impl CIStatement {
    pub fn new(
        m: usize,
        a: impl IntoIterator<Item = usize>,
        b: impl IntoIterator<Item = usize>,
        c: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let s = CIStatement { m, a: a.into_iter().collect(), b: b.into_iter().collect(), c: c.into_iter().collect() };
        if s.a.is_empty() || s.b.is_empty() {
            return Err(Error::Precondition("A and B must be nonempty".into()));
        }
        let all: Vec<usize> = s.a.iter().chain(&s.b).chain(&s.c).copied().collect();
        if all.iter().any(|&x| x == 0 || x > m) {
            return Err(Error::Precondition(format!("indices must lie in 1..={m}")));
        }
        if all.iter().collect::<BTreeSet<_>>().len() != all.len() {
            return Err(Error::Precondition("A, B and C must be pairwise disjoint".into()));
        }
        Ok(s)
    }

    /// Every statement on `[m]` with nonempty `A` and `B`.
    pub fn all(m: usize) -> Vec<CIStatement> {
        let mut out = Vec::new();
        let mut assign = vec![0u8; m];
        loop {
            let pick = |t: u8| (1..=m).filter(|&x| assign[x - 1] == t).collect::<BTreeSet<_>>();
            let (a, b, c) = (pick(1), pick(2), pick(3));
            if !a.is_empty() && !b.is_empty() {
                out.push(CIStatement { m, a, b, c });
            }
            // Odometer over {unused, A, B, C}^m.
            let mut idx = 0;
            while idx < m && assign[idx] == 3 {
                assign[idx] = 0;
                idx += 1;
            }
            if idx == m {
                break;
            }
            assign[idx] += 1;
        }
        out
    }
}

impl fmt::Display for CIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &BTreeSet<usize>| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}} _||_ {{{}}} | {{{}}}", show(&self.a), show(&self.b), show(&self.c))
    }
}

/// `rank Σ_{A∪C, B∪C} <= |C|` on a symmetric `m × m` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CICondition {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub bound: usize,
}

impl CICondition {
    /// The `(|C|+1)`-minors, expanded on `s_{ij}` variables.
    pub fn minors(&self, m: usize, limit: usize) -> Result<Vec<Polynomial>> {
        expand_minors_on(&symmetric_matrix(m), &self.rows, &self.cols, self.bound, limit)
    }
}

pub fn ci_condition(s: &CIStatement) -> CICondition {
    CICondition { rows: s.a.union(&s.c).copied().collect(), cols: s.b.union(&s.c).copied().collect(), bound: s.c.len() }
}

fn is_interval(s: &BTreeSet<usize>, lo: usize, hi: usize) -> bool {
    lo <= hi && s.len() == hi - lo + 1 && s.iter().next() == Some(&lo) && s.iter().next_back() == Some(&hi)
}

/// Realization as a symmetric matrix Schubert variety: case 1 is
/// `A = [1,i], B = [j,m], C = ∅`; case 2 adds `C = [i+1, j−1]`.
pub fn ci_realize_ms(s: &CIStatement) -> Option<(u8, Perm)> {
    let n = s.m;
    let i = *s.a.iter().next_back()?;
    let j = *s.b.iter().next()?;
    if !is_interval(&s.a, 1, i) || !is_interval(&s.b, j, n) || i >= j {
        return None;
    }
    let word: Vec<usize> = if s.c.is_empty() {
        (j - i..j).rev().chain((j..=n).rev()).chain((1..j - i).rev()).collect()
    } else if i + 1 < j && is_interval(&s.c, i + 1, j - 1) {
        (n - j + i + 2..=n).rev().chain((1..=i).rev()).chain((i + 1..=n - j + i + 1).rev()).collect()
    } else {
        return None;
    };
    let case = if s.c.is_empty() { 1 } else { 2 };
    Some((case, Perm::from_vec_unchecked(word)))
}

/// The symmetric Fulton minors of the realized `w`, for comparison with
/// [`ci_condition`].
pub fn sym_fulton_minors(w: &Perm, limit: usize) -> Result<BTreeSet<Polynomial>> {
    let n = w.n();
    let sym = symmetric_matrix(n);
    let mut out = BTreeSet::new();
    for c in fulton_conditions(w) {
        let rows: Vec<usize> = (c.a..=n).collect();
        let cols: Vec<usize> = (1..=c.b).collect();
        out.extend(expand_minors_on(&sym, &rows, &cols, c.bound, limit)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CIComplexity {
    pub w: Perm,
    pub formula: usize,
    pub direct: i64,
}

/// `0` if `C = ∅`, else `(|C|−1)(m−1−|C|/2)`, next to the symmetric
/// complexity of the realized permutation.
pub fn ms_ci_complexity(s: &CIStatement) -> Result<CIComplexity> {
    let (_, w) = ci_realize_ms(s)
        .ok_or_else(|| Error::Precondition(format!("{s} is not realizable as a symmetric matrix Schubert variety")))?;
    let c = s.c.len();
    let formula = if c == 0 {
        0
    } else {
        let twice = (c - 1) * (2 * s.m - 2 - c);
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    };
    let direct = analyze_sym_low(&w).sym.expect("symmetric block").complexity;
    Ok(CIComplexity { w, formula, direct })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum KLCIParams {
    /// `A = [1,k]`, `B = [m−l+1, m]`, `C = ∅`, with `l + k <= m`.
    ZeroBlock { k: usize, l: usize },
    /// `k = 1+s`, `l = 1+t`, `l + k = m + 1`; `A = [1,k−1]`, `B = [k+1,m]`, `C = {k}`.
    RankOne { s: usize, t: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct KLCIConstruction {
    pub v: Perm,
    pub w: Perm,
    pub statement: CIStatement,
    pub formula: usize,
    pub complexity: usize,
    pub dim_sigma: usize,
}

/// `v = (n−m, ..., n, n−m−1, ..., 1)` with the case-specific `w`.
pub fn kl_ci_construct(n: usize, m: usize, params: KLCIParams) -> Result<KLCIConstruction> {
    if m + 1 > n {
        return Err(Error::Precondition(format!("need m + 1 <= n, got m={m}, n={n}")));
    }
    let v_word: Vec<usize> = (n - m..=n).chain((1..n - m).rev()).collect();
    let (w_word, statement): (Vec<usize>, CIStatement) = match params {
        KLCIParams::ZeroBlock { k, l } => {
            if k == 0 || l == 0 || k + l > m {
                return Err(Error::Precondition(format!("need k, l >= 1 and k + l <= m, got k={k}, l={l}")));
            }
            let w = (n - l - k + 1..=n - l).rev().chain((n - l + 1..=n).rev()).chain((1..=n - l - k).rev()).collect();
            (w, CIStatement::new(m, 1..=k, m - l + 1..=m, [])?)
        }
        KLCIParams::RankOne { s, t } => {
            let (k, l) = (1 + s, 1 + t);
            if k + l != m + 1 || s == 0 || t == 0 {
                return Err(Error::Precondition(format!("need s, t >= 1 and s + t = m - 1, got s={s}, t={t}")));
            }
            let w = std::iter::once(n)
                .chain((n - t - s..=n - 1 - t).rev())
                .chain((n - t..=n - 1).rev())
                .chain((1..n - t - s).rev())
                .collect();
            (w, CIStatement::new(m, 1..k, k + 1..=m, [k])?)
        }
    };
    let v = Perm::new(v_word)?;
    let w = Perm::new(w_word)?;
    let rep = kl::analyze(&v, &w, false, 0)?;
    let formula = m * (m - 1) / 2 - statement.a.len() * statement.b.len();
    Ok(KLCIConstruction { v, w, statement, formula, complexity: rep.complexity, dim_sigma: rep.dim_sigma })
}

/// Two-way quasi-independence model on a state space `S ⊆ [m] × [n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QIModel {
    pub m: usize,
    pub n: usize,
    /// Original matrix rows (top to bottom) and columns (left to right).
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub states: BTreeSet<(usize, usize)>,
    pub graph: DiGraph,
}

impl QIModel {
    pub fn from_states(m: usize, n: usize, states: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let states: BTreeSet<(usize, usize)> = states.into_iter().collect();
        let mut graph = DiGraph::new();
        for &(x, y) in &states {
            graph.add_edge(Vertex::Plain(x), Vertex::Star(y));
        }
        QIModel { m, n, rows: (1..=m).collect(), cols: (1..=n).collect(), states, graph }
    }
}

/// One model per hook of a toric `w`: the cells of the component of L(w)
/// containing the hook, reindexed to `[m] × [n]`.
pub fn qi_from_toric(w: &Perm) -> Result<Vec<QIModel>> {
    let r = regions(w);
    let hooks = hook_components(&r.lprime).ok_or_else(|| Error::NotToric(w.to_string()))?;
    let comps = r.l.components();
    let mut out = Vec::new();
    for h in hooks {
        let cells = comps.iter().find(|c| c.contains(&h.corner)).expect("hook lies in L");
        let rows: Vec<usize> = cells.iter().map(|c| c.0).collect::<BTreeSet<_>>().into_iter().collect();
        let cols: Vec<usize> = cells.iter().map(|c| c.1).collect::<BTreeSet<_>>().into_iter().collect();
        let idx = |v: &[usize], x: usize| v.iter().position(|&y| y == x).unwrap() + 1;
        let states = cells.iter().map(|&(i, j)| (idx(&rows, i), idx(&cols, j)));
        let mut model = QIModel::from_states(rows.len(), cols.len(), states);
        model.rows = rows;
        model.cols = cols;
        out.push(model);
    }
    Ok(out)
}

/// Rational MLE iff the state-space graph is doubly chordal bipartite.
pub fn rational_mle(model: &QIModel) -> bool {
    doubly_chordal_bipartite(&model.graph).unwrap_or(false)
}

/// Two squares sharing an edge: a 6-cycle with a single chord.
pub fn double_square() -> QIModel {
    QIModel::from_states(3, 3, [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2), (3, 3)])
}
