//! Rank conditions and symbolic expansion of minors of matrices whose entries
//! are 0, 1 or a single variable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::diagram::{essential_set, opposite_rothe};
use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_SIZE_LIMIT: usize = 8;

/// Variable `z_{ij}` (generic/patterned matrices) or `s_{ij}` (symmetric
/// matrices, always stored with `i <= j`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub letter: char,
    pub i: usize,
    pub j: usize,
}

impl Var {
    pub fn z(i: usize, j: usize) -> Self {
        Var { letter: 'z', i, j }
    }

    pub fn s(i: usize, j: usize) -> Self {
        Var { letter: 's', i: i.min(j), j: i.max(j) }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "{}{}{}", self.letter, self.i, self.j)
        } else {
            write!(f, "{}{}_{}", self.letter, self.i, self.j)
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Entry {
    Zero,
    One,
    Var(Var),
}

pub type Matrix = Vec<Vec<Entry>>;

/// Generic `n × n` matrix of variables `z_{ij}`.
pub fn generic_matrix(n: usize) -> Matrix {
    (1..=n).map(|i| (1..=n).map(|j| Entry::Var(Var::z(i, j))).collect()).collect()
}

/// Symmetric `m × m` matrix with `s_{ij} = s_{ji}`.
pub fn symmetric_matrix(m: usize) -> Matrix {
    (1..=m).map(|i| (1..=m).map(|j| Entry::Var(Var::s(i, j))).collect()).collect()
}

/// Integer polynomial; keys are variable multisets sorted ascending.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<Var>, i64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![v], 1);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mut vars: Vec<Var>, c: i64) {
        if c == 0 {
            return;
        }
        vars.sort();
        let total = self.terms.get(&vars).copied().unwrap_or(0) + c;
        if total == 0 {
            self.terms.remove(&vars);
        } else {
            self.terms.insert(vars, total);
        }
    }

    pub fn add(&mut self, other: &Polynomial, scale: i64) {
        for (k, &c) in &other.terms {
            self.add_term(k.clone(), c * scale);
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ka, &ca) in &self.terms {
            for (kb, &cb) in &other.terms {
                let mut k = ka.clone();
                k.extend_from_slice(kb);
                out.add_term(k, ca * cb);
            }
        }
        out
    }

    fn times_entry(&self, e: Entry) -> Polynomial {
        match e {
            Entry::Zero => Polynomial::zero(),
            Entry::One => self.clone(),
            Entry::Var(v) => {
                let mut out = Polynomial::zero();
                for (k, &c) in &self.terms {
                    let mut k = k.clone();
                    k.push(v);
                    out.add_term(k, c);
                }
                out
            }
        }
    }

    /// Terms in display order: descending lexicographic comparison of the
    /// (ascending) variable lists.
    pub fn ordered_terms(&self) -> Vec<(&Vec<Var>, i64)> {
        self.terms.iter().rev().map(|(k, &c)| (k, c)).collect()
    }

    /// Multiplies by -1 if needed so that the leading coefficient is positive.
    pub fn normalized(&self) -> Polynomial {
        match self.ordered_terms().first() {
            Some(&(_, c)) if c < 0 => {
                let mut p = Polynomial::zero();
                p.add(self, -1);
                p
            }
            _ => self.clone(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.is_empty())
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (vars, c)) in terms.into_iter().enumerate() {
            let mag = c.unsigned_abs();
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let body: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            match (mag, body.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{}", body.join("*"))?,
                (_, false) => write!(f, "{mag}*{}", body.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `rank(rows a..n, cols 1..b) <= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankCondition {
    pub a: usize,
    pub b: usize,
    pub bound: usize,
}

/// One condition per essential cell of `w`, with bound `r_w(a,b)`.
pub fn fulton_conditions(w: &Perm) -> Vec<RankCondition> {
    let ess = essential_set(&opposite_rothe(w));
    ess.into_iter().map(|(a, b)| RankCondition { a, b, bound: w.rank_unchecked(a, b) }).collect()
}

/// All `(bound+1)`-minors of the south-west submatrix named by `c`,
/// expanded, zero minors dropped, sign-normalized and deduplicated.
pub fn expand_minors(m: &Matrix, c: &RankCondition, limit: usize) -> Result<Vec<Polynomial>> {
    let n = m.len();
    let rows: Vec<usize> = (c.a..=n).collect();
    let cols: Vec<usize> = (1..=c.b).collect();
    expand_minors_on(m, &rows, &cols, c.bound, limit)
}

/// All `(bound+1)`-minors of `m` restricted to the given 1-based rows and
/// columns.
pub fn expand_minors_on(
    m: &Matrix,
    rows: &[usize],
    cols: &[usize],
    bound: usize,
    limit: usize,
) -> Result<Vec<Polynomial>> {
    let size = rows.len().max(cols.len());
    if size > limit {
        return Err(Error::SizeLimit(size, limit));
    }
    let k = bound + 1;
    let mut out: BTreeSet<Polynomial> = BTreeSet::new();
    if k > rows.len() || k > cols.len() {
        return Ok(Vec::new());
    }
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Matrix = rs.iter().map(|&r| cs.iter().map(|&c| m[r - 1][c - 1]).collect()).collect();
            let d = det_cofactor(&sub);
            if !d.is_zero() {
                out.insert(d.normalized());
            }
        }
    }
    let mut v: Vec<Polynomial> = out.into_iter().collect();
    v.sort_by_key(|p| p.to_string());
    Ok(v)
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// Determinant by cofactor expansion along the row with the most zeros.
pub fn det_cofactor(m: &Matrix) -> Polynomial {
    let k = m.len();
    if k == 0 {
        return Polynomial::constant(1);
    }
    let zeros = |r: &Vec<Entry>| r.iter().filter(|e| **e == Entry::Zero).count();
    let row = (0..k).max_by_key(|&r| (zeros(&m[r]), std::cmp::Reverse(r))).unwrap();
    let mut out = Polynomial::zero();
    for col in 0..k {
        let e = m[row][col];
        if e == Entry::Zero {
            continue;
        }
        let minor: Matrix =
            (0..k).filter(|&r| r != row).map(|r| (0..k).filter(|&c| c != col).map(|c| m[r][c]).collect()).collect();
        let sign = if (row + col) % 2 == 0 { 1 } else { -1 };
        out.add(&det_cofactor(&minor).times_entry(e), sign);
    }
    out
}

/// Determinant by the Leibniz permutation sum; used to cross-check
/// [`det_cofactor`].
pub fn det_leibniz(m: &Matrix) -> Polynomial {
    let k = m.len();
    let mut out = Polynomial::zero();
    if k == 0 {
        return Polynomial::constant(1);
    }
    for sigma in Perm::all(k) {
        let sign = if sigma.inversions() % 2 == 0 { 1 } else { -1 };
        let mut term = Polynomial::constant(sign);
        for r in 0..k {
            term = term.times_entry(m[r][sigma.at(r + 1) - 1]);
            if term.is_zero() {
                break;
            }
        }
        out.add(&term, 1);
    }
    out
}
