//! Opposite Rothe diagrams, the regions derived from them, and the hook and
//! staircase structure of toric permutations.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::perm::Perm;

/// A cell `(row, column)`, 1-based, row 1 at the top.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub n: usize,
    pub cells: BTreeSet<Cell>,
}

impl Diagram {
    pub fn new(n: usize, cells: impl IntoIterator<Item = Cell>) -> Self {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        debug_assert!(cells.iter().all(|&(i, j)| i >= 1 && j >= 1 && i <= n && j <= n));
        Diagram { n, cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.cells.contains(&c)
    }

    /// Connected components under edge adjacency, ordered by their first cell.
    pub fn components(&self) -> Vec<BTreeSet<Cell>> {
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        let mut out = Vec::new();
        for &c in &self.cells {
            if seen.contains(&c) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![c];
            seen.insert(c);
            while let Some((i, j)) = stack.pop() {
                comp.insert((i, j));
                let nb = [(i.wrapping_sub(1), j), (i + 1, j), (i, j.wrapping_sub(1)), (i, j + 1)];
                for x in nb {
                    if self.cells.contains(&x) && seen.insert(x) {
                        stack.push(x);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn minus(&self, other: &Diagram) -> Diagram {
        Diagram { n: self.n, cells: self.cells.difference(&other.cells).copied().collect() }
    }
}

/// `D°(w) = {(i,j) : w(j) < i, w⁻¹(i) > j}`: the cells that are neither north
/// nor east of a 1 of the permutation matrix.
pub fn opposite_rothe(w: &Perm) -> Diagram {
    let n = w.n();
    let winv = w.inverse();
    let mut cells = BTreeSet::new();
    for i in 1..=n {
        for j in 1..=n {
            if w.at(j) < i && winv.at(i) > j {
                cells.insert((i, j));
            }
        }
    }
    Diagram { n, cells }
}

/// North-east corners: cells of `d` with no cell of `d` directly north and
/// none directly east.
pub fn essential_set(d: &Diagram) -> BTreeSet<Cell> {
    d.cells.iter().copied().filter(|&(i, j)| !d.contains((i.wrapping_sub(1), j)) && !d.contains((i, j + 1))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regions {
    pub d: Diagram,
    pub ess: BTreeSet<Cell>,
    pub dom: Diagram,
    pub sw: Diagram,
    pub l: Diagram,
    pub lprime: Diagram,
}

/// dom = component of `(n,1)` in D°; SW = cells weakly south-west of an
/// essential cell; L = SW \ dom; L′ = SW \ D°.
pub fn regions(w: &Perm) -> Regions {
    let n = w.n();
    let d = opposite_rothe(w);
    let ess = essential_set(&d);
    let dom = d
        .components()
        .into_iter()
        .find(|c| c.contains(&(n, 1)))
        .map(|c| Diagram { n, cells: c })
        .unwrap_or_else(|| Diagram::new(n, []));
    let mut sw = BTreeSet::new();
    for &(a, b) in &ess {
        for i in a..=n {
            for j in 1..=b {
                sw.insert((i, j));
            }
        }
    }
    let sw = Diagram { n, cells: sw };
    let l = sw.minus(&dom);
    let lprime = sw.minus(&d);
    Regions { d, ess, dom, sw, l, lprime }
}

/// ASCII picture: `1` permutation entries, `*` essential cells, `#` other D°
/// cells, `+` cells of SW outside D°, `.` elsewhere.
pub fn render_ascii(w: &Perm, r: &Regions) -> String {
    let n = w.n();
    let mut s = String::new();
    for i in 1..=n {
        for j in 1..=n {
            let ch = if w.at(j) == i {
                '1'
            } else if r.ess.contains(&(i, j)) {
                '*'
            } else if r.d.contains((i, j)) {
                '#'
            } else if r.sw.contains((i, j)) {
                '+'
            } else {
                '.'
            };
            s.push(ch);
        }
        s.push('\n');
    }
    s
}

/// A hook component of L′: corner `(row, col)` with its vertical arm above
/// and horizontal arm to the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hook {
    pub corner: Cell,
    /// Number of rows, corner included.
    pub height: usize,
    /// Number of columns, corner included.
    pub width: usize,
    pub cells: BTreeSet<Cell>,
}

impl Hook {
    pub fn top(&self) -> usize {
        self.corner.0 + 1 - self.height
    }

    pub fn last_col(&self) -> usize {
        self.corner.1 + self.width - 1
    }
}

/// Splits L′ into hooks; `None` unless every component is a hook and no two
/// hooks share a row or a column.
pub fn hook_components(lprime: &Diagram) -> Option<Vec<Hook>> {
    let mut hooks = Vec::new();
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    for comp in lprime.components() {
        let r = comp.iter().map(|c| c.0).max()?;
        let h = comp.iter().map(|c| c.1).min()?;
        if !comp.contains(&(r, h)) || comp.iter().any(|&(i, j)| i != r && j != h) {
            return None;
        }
        let top = comp.iter().map(|c| c.0).min()?;
        let last = comp.iter().map(|c| c.1).max()?;
        // Components are connected, so the arms are contiguous.
        for i in top..=r {
            if !rows.insert(i) {
                return None;
            }
        }
        for j in h..=last {
            if !cols.insert(j) {
                return None;
            }
        }
        hooks.push(Hook { corner: (r, h), height: r - top + 1, width: last - h + 1, cells: comp });
    }
    hooks.sort_by_key(|h| h.corner.1);
    Some(hooks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StairKind {
    Alpha,
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub columns: Vec<usize>,
    /// Northernmost row of the step.
    pub top: usize,
    /// Extended height for first steps.
    pub height: usize,
    /// Whether the 1 in column `k` of the step sits exactly `k` rows above the top.
    pub on_step: Vec<bool>,
}

impl Step {
    pub fn width(&self) -> usize {
        self.columns.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Staircase {
    pub kind: StairKind,
    /// 1-based index `j` of `α[j]` / `β[j]`.
    pub index: usize,
    pub steps: Vec<Step>,
}

impl Staircase {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().flat_map(|s| s.columns.iter().copied())
    }
}

/// Column label `α[j]^i_k`, `β[j]^i_k` or `h_j` (all indices 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColumnLabel {
    Alpha { j: usize, i: usize, k: usize },
    Beta { j: usize, i: usize, k: usize },
    Hook { j: usize },
}

impl std::fmt::Display for ColumnLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnLabel::Alpha { j, i, k } => write!(f, "alpha[{j}]^{i}_{k}"),
            ColumnLabel::Beta { j, i, k } => write!(f, "beta[{j}]^{i}_{k}"),
            ColumnLabel::Hook { j } => write!(f, "h_{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StaircaseStructure {
    pub hooks: Vec<Hook>,
    /// `alpha[j-1]` is `α[j]`, one per hook (possibly empty).
    pub alpha: Vec<Staircase>,
    /// `beta[j-1]` is `β[j]`, `hooks.len() + 1` entries (possibly empty).
    pub beta: Vec<Staircase>,
}

impl StaircaseStructure {
    pub fn label(&self, col: usize) -> Option<ColumnLabel> {
        for (j, h) in self.hooks.iter().enumerate() {
            if h.corner.1 == col {
                return Some(ColumnLabel::Hook { j: j + 1 });
            }
        }
        for s in self.alpha.iter().chain(&self.beta) {
            for (i, step) in s.steps.iter().enumerate() {
                if let Some(k) = step.columns.iter().position(|&c| c == col) {
                    let (j, i, k) = (s.index, i + 1, k + 1);
                    return Some(match s.kind {
                        StairKind::Alpha => ColumnLabel::Alpha { j, i, k },
                        StairKind::Beta => ColumnLabel::Beta { j, i, k },
                    });
                }
            }
        }
        None
    }

    pub fn alpha(&self, j: usize) -> &Staircase {
        &self.alpha[j - 1]
    }

    /// `β[j]`, or `None` when `j` is past the last block.
    pub fn beta(&self, j: usize) -> Option<&Staircase> {
        self.beta.get(j - 1)
    }
}

/// Hook decomposition of L′(w) together with the α/β staircases. Returns
/// `None` when L′(w) is not a union of row- and column-disjoint hooks.
pub fn staircase_structure(w: &Perm) -> Option<StaircaseStructure> {
    let r = regions(w);
    staircase_structure_from(w, &r)
}

pub fn staircase_structure_from(w: &Perm, r: &Regions) -> Option<StaircaseStructure> {
    let hooks = hook_components(&r.lprime)?;
    let l_comps = r.l.components();

    let mut dom_top: BTreeMap<usize, usize> = BTreeMap::new();
    for &(i, j) in &r.dom.cells {
        let t = dom_top.entry(j).or_insert(i);
        *t = (*t).min(i);
    }
    let max_dom_col = dom_top.keys().next_back().copied().unwrap_or(0);

    // Columns of L_j \ L'_j with the top row of those extra cells.
    let mut alpha_cols: Vec<Vec<(usize, usize)>> = Vec::new();
    for h in &hooks {
        let lj = l_comps.iter().find(|c| c.contains(&h.corner)).expect("hook lies in L");
        let mut tops: BTreeMap<usize, usize> = BTreeMap::new();
        for &(i, j) in lj.difference(&h.cells) {
            let t = tops.entry(j).or_insert(i);
            *t = (*t).min(i);
        }
        alpha_cols.push(tops.into_iter().collect());
    }

    let beta_range = |from: usize, to: usize| -> Vec<(usize, usize)> {
        (from..=to).map_while(|c| dom_top.get(&c).map(|&t| (c, t))).collect()
    };
    let k = hooks.len();
    let mut beta_cols = Vec::new();
    let mut prev_end = 0;
    for (jj, h) in hooks.iter().enumerate() {
        beta_cols.push(beta_range(prev_end + 1, h.corner.1.saturating_sub(1)));
        prev_end = alpha_cols[jj].last().map(|c| c.0).unwrap_or(h.corner.1).max(h.last_col());
    }
    beta_cols.push(beta_range(prev_end + 1, max_dom_col));

    let winv = w.inverse();
    let make_steps = |cols: &[(usize, usize)]| -> Vec<Step> {
        let mut steps: Vec<Step> = Vec::new();
        for &(c, t) in cols {
            match steps.last_mut() {
                Some(s) if s.top == t => s.columns.push(c),
                _ => steps.push(Step { columns: vec![c], top: t, height: 0, on_step: Vec::new() }),
            }
        }
        for idx in 1..steps.len() {
            steps[idx].height = steps[idx].top - steps[idx - 1].top;
        }
        for s in &mut steps {
            s.on_step = s.columns.iter().enumerate().map(|(k, &c)| w.at(c) + k + 1 == s.top).collect();
        }
        steps
    };

    let mut beta: Vec<Staircase> = beta_cols
        .iter()
        .enumerate()
        .map(|(j, cols)| Staircase { kind: StairKind::Beta, index: j + 1, steps: make_steps(cols) })
        .collect();
    let mut alpha: Vec<Staircase> = alpha_cols
        .iter()
        .enumerate()
        .map(|(j, cols)| Staircase { kind: StairKind::Alpha, index: j + 1, steps: make_steps(cols) })
        .collect();

    // Extended heights of first steps.
    for s in beta.iter_mut() {
        if let Some(first) = s.steps.first_mut() {
            first.height =
                if s.index == 1 { first.top - 1 } else { free_rows_above(&winv, first.top, first.columns[0]) };
        }
    }
    for j in 1..=k {
        let beta_before_exists = !beta[j - 1].is_empty();
        let s = &mut alpha[j - 1];
        if let Some(first) = s.steps.first_mut() {
            let (a, b) = (first.top, first.columns[0]);
            first.height = if j == 1 && !beta_before_exists {
                a - 1
            } else if !beta_before_exists {
                0
            } else {
                r.d.cells.iter().filter(|&&(c, col)| col + 2 == b && c > a).count()
            };
        }
    }
    Some(StaircaseStructure { hooks, alpha, beta })
}

/// Consecutive rows directly above `top` whose 1 lies in column `first_col`
/// or further east.
fn free_rows_above(winv: &Perm, top: usize, first_col: usize) -> usize {
    (1..top).rev().take_while(|&row| winv.at(row) >= first_col).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

    #[test]
    fn rothe_examples() {
        assert_eq!(opposite_rothe(&p("45231")).cells, BTreeSet::from([(5, 1), (3, 3)]));
        assert_eq!(opposite_rothe(&p("53412")).cells, BTreeSet::from([(4, 2), (2, 4)]));
        let id = opposite_rothe(&Perm::identity(5));
        assert_eq!(id.len(), 10);
        assert!(id.cells.iter().all(|&(i, j)| i > j));
        assert!(opposite_rothe(&Perm::longest(6)).is_empty());
    }

    #[test]
    fn essential_examples() {
        assert_eq!(essential_set(&opposite_rothe(&p("45231"))), BTreeSet::from([(3, 3), (5, 1)]));
        assert_eq!(essential_set(&opposite_rothe(&p("53412"))), BTreeSet::from([(4, 2), (2, 4)]));
        assert_eq!(essential_set(&opposite_rothe(&p("251346"))), BTreeSet::from([(3, 1), (3, 3), (4, 4), (6, 5)]));
        assert!(essential_set(&Diagram::new(3, [])).is_empty());
    }

    #[test]
    fn regions_45231() {
        let r = regions(&p("45231"));
        assert_eq!(r.sw.len(), 9);
        assert!(r.sw.cells.iter().all(|&(i, j)| (3..=5).contains(&i) && j <= 3));
        assert_eq!(r.dom.cells, BTreeSet::from([(5, 1)]));
        assert_eq!(r.l.len(), 8);
        assert_eq!(r.lprime.len(), 7);
    }

    #[test]
    fn regions_251346() {
        let r = regions(&p("251346"));
        let expect = BTreeSet::from([(3, 2), (3, 3), (4, 2), (4, 3), (4, 4), (5, 2), (5, 3), (5, 4)]);
        assert_eq!(r.l.cells, expect);
    }

    #[test]
    fn regions_longest_empty() {
        let r = regions(&Perm::longest(5));
        assert!(r.dom.is_empty() && r.sw.is_empty() && r.l.is_empty() && r.lprime.is_empty());
    }

    #[test]
    fn hooks_251346_and_45231() {
        let s = staircase_structure(&p("251346")).expect("toric");
        assert_eq!(s.hooks.len(), 1);
        assert!(staircase_structure(&p("45231")).is_none());
        let id = staircase_structure(&Perm::identity(4)).unwrap();
        assert!(id.hooks.is_empty());
        assert!(hook_components(&Diagram::new(4, [])).unwrap().is_empty());
    }

    #[test]
    fn two_hook_labels() {
        // 4132756: hooks with corners in columns 1 and 5, β[2] = columns 3..4.
        let w = p("4132756");
        let s = staircase_structure(&w).unwrap();
        assert_eq!(s.hooks.iter().map(|h| h.corner).collect::<Vec<_>>(), vec![(4, 1), (7, 5)]);
        assert_eq!(s.label(1), Some(ColumnLabel::Hook { j: 1 }));
        assert_eq!(s.label(2), Some(ColumnLabel::Alpha { j: 1, i: 1, k: 1 }));
        assert_eq!(s.label(3), Some(ColumnLabel::Beta { j: 2, i: 1, k: 1 }));
        assert_eq!(s.label(4), Some(ColumnLabel::Beta { j: 2, i: 1, k: 2 }));
        assert_eq!(s.label(5), Some(ColumnLabel::Hook { j: 2 }));
        assert_eq!(s.label(6), Some(ColumnLabel::Alpha { j: 2, i: 1, k: 1 }));
        assert_eq!(s.label(7), None);
        assert!(s.beta(1).unwrap().is_empty());
    }

    #[test]
    fn first_step_height_cases() {
        // β[1] present, α[1]^1 counts D° cells in column b-2 below its top.
        let s = staircase_structure(&p("1253746")).unwrap();
        let a1 = &s.alpha(1).steps[0];
        assert_eq!(a1.columns, vec![4]);
        assert_eq!(a1.top, 4);
        assert_eq!(a1.height, 3);
        let b1 = &s.beta(1).unwrap().steps[0];
        assert_eq!(b1.height, b1.top - 1);
    }

    #[test]
    fn ascii_render() {
        let w = p("45231");
        let pic = render_ascii(&w, &regions(&w));
        assert_eq!(pic, "....1\n..1..\n++*1.\n1++..\n*1+..\n");
    }
}
