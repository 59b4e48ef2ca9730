//! Matrix Schubert varieties `X̄_w`, their reduced part `Y_w`, the weight cone
//! graph `G_w`, toricity, the effect of simple reflections `w ↦ w·s_M`, and
//! the symmetric / lower-triangular variants.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::{regions, staircase_structure_from, Cell, ColumnLabel, Regions, StairKind, StaircaseStructure};
use crate::error::{Error, Result};
use crate::graph::{DiGraph, Vertex};
use crate::perm::Perm;

/// `G_w`: an edge `a → b*` for every `(a,b) ∈ L(w)`; only vertices that carry
/// an edge are present.
pub fn weight_graph(cells: impl IntoIterator<Item = Cell>) -> DiGraph {
    let mut g = DiGraph::new();
    for (a, b) in cells {
        g.add_edge(Vertex::Plain(a), Vertex::Star(b));
    }
    g
}

pub fn toric_by_patterns(w: &Perm) -> bool {
    let p4312 = Perm::from_vec_unchecked(vec![4, 3, 1, 2]);
    let p3412 = Perm::from_vec_unchecked(vec![3, 4, 1, 2]);
    !w.contains_pattern(&p4312) && !w.contains_pattern(&p3412)
}

#[derive(Clone, Debug, Serialize)]
pub struct SymReport {
    pub dim_xbar: usize,
    /// `|SW(w) ∩ Δ^up|`.
    pub sw_up: usize,
    pub dim_y: usize,
    pub graph: DiGraph,
    pub dim_sigma_sym: usize,
    pub dim_sigma_low: usize,
    /// `dim Y^sym − dim σ^sym`, computed from the restricted graph.
    pub complexity: i64,
    /// `complexity(Y_w) − |SW(w) ∩ Δ^up|`.
    pub complexity_formula: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MSReport {
    pub w: Perm,
    pub diagram_size: usize,
    pub essential: BTreeSet<Cell>,
    pub dim_xbar: usize,
    /// Number of coordinates outside SW(w).
    pub free_dim: usize,
    pub dim_y: usize,
    pub graph: DiGraph,
    pub dim_sigma: usize,
    pub complexity: usize,
    pub toric: bool,
    pub toric_by_hooks: bool,
    pub toric_by_patterns: bool,
    #[serde(skip)]
    pub regions: Regions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sym: Option<SymReport>,
}

pub fn analyze(w: &Perm) -> MSReport {
    let n = w.n();
    let r = regions(w);
    let graph = weight_graph(r.l.cells.iter().copied());
    let dim_y = r.lprime.len();
    let dim_sigma = graph.cone_dimension();
    let complexity = dim_y - dim_sigma;
    let toric_by_hooks = crate::diagram::hook_components(&r.lprime).is_some();
    MSReport {
        w: w.clone(),
        diagram_size: r.d.len(),
        essential: r.ess.clone(),
        dim_xbar: n * n - r.d.len(),
        free_dim: n * n - r.sw.len(),
        dim_y,
        graph,
        dim_sigma,
        complexity,
        toric: complexity == 0,
        toric_by_hooks,
        toric_by_patterns: toric_by_patterns(w),
        regions: r,
        sym: None,
    }
}

/// Symmetric and lower-triangular variants, `Δ^low = {i ≥ j}`.
pub fn analyze_sym_low(w: &Perm) -> MSReport {
    let mut rep = analyze(w);
    let n = w.n();
    let r = &rep.regions;
    let sw_up = r.sw.cells.iter().filter(|&&(i, j)| i < j).count();
    let graph = weight_graph(r.l.cells.iter().copied().filter(|&(i, j)| i >= j));
    let dim_y = rep.dim_y - sw_up;
    let dim_sigma_sym = graph.cone_dimension();
    let low = weight_graph(r.l.cells.iter().copied().filter(|&(i, j)| i >= j));
    rep.sym = Some(SymReport {
        dim_xbar: rep.dim_xbar - n * (n - 1) / 2,
        sw_up,
        dim_y,
        dim_sigma_sym,
        dim_sigma_low: low.cone_dimension(),
        complexity: dim_y as i64 - dim_sigma_sym as i64,
        complexity_formula: rep.complexity as i64 - sw_up as i64,
        graph,
    });
    rep
}

/// `w = (v_1+m, ..., v_m+m, m, ..., 1)` in `S_{2m}`; SW(w) stays below the
/// diagonal, so the symmetric complexity equals the complexity of `Y_v`.
pub fn sym_embedding(v: &Perm) -> Perm {
    let m = v.n();
    let word: Vec<usize> = v.word().iter().map(|&x| x + m).chain((1..=m).rev()).collect();
    Perm::from_vec_unchecked(word)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseKind {
    /// A case of the non-toric characterization, numbered 1 to 5.
    NonToric,
    /// A case of the toric characterization, numbered 1 to 8.
    Toric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatchedCase {
    pub kind: CaseKind,
    pub number: u8,
    /// Sub-case `a`, `b` or `c` of non-toric case 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub: Option<char>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "change", rename_all = "snake_case")]
pub enum WeightConeDelta {
    NoChange,
    NewHook,
    GainsEdge {
        from: usize,
        to: usize,
    },
    LosesEdge {
        from: usize,
        to: usize,
    },
    HookShorter,
    HookTaller,
    HookNarrower,
    HookWider,
    /// Non-toric outcome, or a toric case the change table does not cover.
    Unspecified,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionVerdict {
    pub w: Perm,
    pub m: usize,
    /// `None` for columns outside every staircase and hook.
    pub label: Option<ColumnLabel>,
    pub predicted_toric: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<MatchedCase>,
    pub weight_cone_delta: WeightConeDelta,
    /// Direct recomputation for `w·s_M`.
    pub actual_toric: bool,
    /// For edge gain/loss predictions: whether L′ is unchanged and the edge
    /// sets differ by exactly the predicted edge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_cone_holds: Option<bool>,
}

impl ReflectionVerdict {
    pub fn agrees(&self) -> bool {
        self.predicted_toric == self.actual_toric && self.weight_cone_holds != Some(false)
    }
}

/// Position of `M` inside a staircase: step `i`, column `k` (1-based) and the
/// surrounding data the case analysis needs.
struct StepPos<'a> {
    st: &'a StaircaseStructure,
    kind: StairKind,
    j: usize,
    i: usize,
    k: usize,
}

impl StepPos<'_> {
    fn stair(&self) -> &crate::diagram::Staircase {
        match self.kind {
            StairKind::Alpha => self.st.alpha(self.j),
            StairKind::Beta => self.st.beta(self.j).expect("label refers to an existing block"),
        }
    }
    fn step(&self) -> &crate::diagram::Step {
        &self.stair().steps[self.i - 1]
    }
    fn width(&self) -> usize {
        self.step().width()
    }
    fn height(&self) -> usize {
        self.step().height
    }
    fn k_last(&self) -> bool {
        self.k == self.width()
    }
    fn i_last(&self) -> bool {
        self.i == self.stair().steps.len()
    }
    fn next_height(&self) -> Option<usize> {
        self.stair().steps.get(self.i).map(|s| s.height)
    }
    /// `height(β[j+1]^1)`, or `None` when `β[j+1]` is empty.
    fn next_beta_height(&self) -> Option<usize> {
        self.st.beta(self.j + 1).and_then(|b| b.steps.first()).map(|s| s.height)
    }
}

fn non_toric_case(p: &StepPos) -> Option<MatchedCase> {
    let nt = |number, sub| Some(MatchedCase { kind: CaseKind::NonToric, number, sub });
    let (i, k, klast, ilast) = (p.i, p.k, p.k_last(), p.i_last());
    match p.kind {
        StairKind::Alpha => {
            if i == 1 && k == 1 && p.width() > 1 && p.height() == 0 {
                return nt(1, None);
            }
            if klast && !ilast && p.next_height().is_some_and(|h| h >= 2) {
                return nt(2, None);
            }
            if klast && ilast {
                match p.next_beta_height() {
                    Some(0) if p.width() > p.height().min(1) => return nt(3, Some('a')),
                    Some(h) if h > 0 => return nt(3, Some('b')),
                    None => return nt(3, Some('c')),
                    _ => {}
                }
            }
            if 1 < k && !klast {
                return nt(4, None);
            }
            None
        }
        StairKind::Beta => {
            (p.height().min(2) < k && !klast).then_some(MatchedCase { kind: CaseKind::NonToric, number: 5, sub: None })
        }
    }
}

fn toric_case(p: &StepPos) -> Option<MatchedCase> {
    let t = |number| Some(MatchedCase { kind: CaseKind::Toric, number, sub: None });
    let (i, k, klast, ilast) = (p.i, p.k, p.k_last(), p.i_last());
    match p.kind {
        StairKind::Alpha => {
            if i == 1 && k == 1 && p.width() > 1 && p.height() > 0 {
                return t(1);
            }
            if k == 1 && !klast && i != 1 {
                return t(2);
            }
            if klast && !ilast && p.next_height() == Some(1) {
                return t(3);
            }
            if klast && ilast && p.width() <= p.height().min(1) && p.next_beta_height() == Some(0) {
                return t(4);
            }
            None
        }
        StairKind::Beta => {
            if k == 1 && p.height() > 0 {
                return t(5);
            }
            if k == 2 && p.height() > 1 {
                return t(6);
            }
            if klast {
                return t(7);
            }
            None
        }
    }
}

fn delta_for(case: MatchedCase, p: &StepPos, w: &Perm, m: usize) -> WeightConeDelta {
    use WeightConeDelta::*;
    let (i, k) = (p.i, p.k);
    match case.number {
        5 if !p.k_last() => NoChange,
        6 if !p.k_last() => NewHook,
        7 if !p.i_last() => NewHook,
        7 => HookWider,
        2 => GainsEdge { from: w.at(m), to: m },
        4 if i != 1 => GainsEdge { from: w.at(m), to: m },
        4 => HookTaller,
        3 if k != 1 || i != 1 => LosesEdge { from: w.at(m + 1), to: m },
        3 => HookShorter,
        1 => HookTaller,
        _ => Unspecified,
    }
}

/// Classifies the move `w ↦ w·s_M` for toric `Y_w` by the column label of
/// `M`, and compares with direct recomputation.
pub fn reflection_classify(w: &Perm, m: usize) -> Result<ReflectionVerdict> {
    let n = w.n();
    if m == 0 || m >= n {
        return Err(Error::BadPosition(m, n.saturating_sub(1)));
    }
    let r = regions(w);
    let st = staircase_structure_from(w, &r).ok_or_else(|| Error::NotToric(w.to_string()))?;
    let u = w.right_mul_t(m, m + 1);
    let ru = regions(&u);
    let actual_toric = crate::diagram::hook_components(&ru.lprime).is_some();
    let label = st.label(m);

    let (predicted_toric, case, delta) = match label {
        None => (actual_toric, None, WeightConeDelta::Unspecified),
        Some(ColumnLabel::Hook { .. }) => {
            (true, Some(MatchedCase { kind: CaseKind::Toric, number: 8, sub: None }), WeightConeDelta::HookNarrower)
        }
        Some(ColumnLabel::Alpha { j, i, k }) | Some(ColumnLabel::Beta { j, i, k }) => {
            let kind =
                if matches!(label, Some(ColumnLabel::Alpha { .. })) { StairKind::Alpha } else { StairKind::Beta };
            let pos = StepPos { st: &st, kind, j, i, k };
            match non_toric_case(&pos) {
                Some(c) => (false, Some(c), WeightConeDelta::Unspecified),
                None => match toric_case(&pos) {
                    Some(c) => (true, Some(c), delta_for(c, &pos, w, m)),
                    None => (true, None, WeightConeDelta::Unspecified),
                },
            }
        }
    };

    let weight_cone_holds = match delta {
        WeightConeDelta::GainsEdge { from, to } | WeightConeDelta::LosesEdge { from, to } => {
            let before: BTreeSet<Cell> = r.l.cells.clone();
            let after: BTreeSet<Cell> = ru.l.cells.clone();
            let e = (from, to);
            let edge_ok = if matches!(delta, WeightConeDelta::GainsEdge { .. }) {
                !before.contains(&e) && after == before.iter().copied().chain([e]).collect()
            } else {
                before.contains(&e) && after == before.iter().copied().filter(|&c| c != e).collect()
            };
            Some(edge_ok && r.lprime == ru.lprime && actual_toric)
        }
        _ => None,
    };

    Ok(ReflectionVerdict {
        w: w.clone(),
        m,
        label,
        predicted_toric,
        case,
        weight_cone_delta: delta,
        actual_toric,
        weight_cone_holds,
    })
}

/// Verdicts for every `M` in `1..n`.
pub fn scan_reflections(w: &Perm) -> Result<Vec<ReflectionVerdict>> {
    (1..w.n()).map(|m| reflection_classify(w, m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

    #[test]
    fn worked_45231() {
        let r = analyze(&p("45231"));
        assert_eq!(r.diagram_size, 2);
        assert_eq!(r.essential, BTreeSet::from([(3, 3), (5, 1)]));
        assert_eq!(r.dim_xbar, 23);
        assert_eq!(r.dim_y, 7);
        assert_eq!(r.dim_sigma, 5);
        assert_eq!(r.complexity, 2);
        assert_eq!(r.free_dim, 16);
        assert!(!r.toric && !r.toric_by_hooks && !r.toric_by_patterns);
    }

    #[test]
    fn toric_examples() {
        let r = analyze(&p("251346"));
        assert!(r.toric && r.toric_by_hooks && r.toric_by_patterns);
        let r = analyze(&Perm::longest(5));
        assert_eq!((r.dim_y, r.complexity), (0, 0));
        assert_eq!(r.graph.num_vertices(), 0);
    }

    #[test]
    fn symmetric_variant() {
        let s = analyze_sym_low(&p("3412")).sym.unwrap();
        assert_eq!(s.complexity, 1);
        assert_eq!(s.complexity_formula, 1);
        let r = analyze_sym_low(&p("45231"));
        let s = r.sym.unwrap();
        assert_eq!(s.dim_sigma_sym, r.dim_sigma);
        assert_eq!(s.dim_xbar, 13);
        assert_eq!(sym_embedding(&p("2413")).to_string(), "68574321");
        for v in Perm::all(4) {
            let plain = analyze(&v).complexity as i64;
            assert_eq!(analyze_sym_low(&sym_embedding(&v)).sym.unwrap().complexity, plain, "{v}");
        }
    }

    #[test]
    fn reflection_basics() {
        assert!(matches!(reflection_classify(&p("45231"), 1), Err(Error::NotToric(_))));
        assert!(matches!(reflection_classify(&p("2413"), 4), Err(Error::BadPosition(4, 3))));
        for w in Perm::all(4).into_iter().filter(|w| analyze(w).toric) {
            for v in scan_reflections(&w).unwrap() {
                if let Some(ColumnLabel::Hook { .. }) = v.label {
                    assert!(v.predicted_toric && v.actual_toric);
                }
            }
        }
    }
}
