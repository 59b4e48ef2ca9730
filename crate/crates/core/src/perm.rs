//! Permutations of `[n]` in one-line notation.
//!
//! Everything is 1-based: `w.at(i)` is `w(i)` and the permutation matrix has its
//! 1 at `(w(i), i)` (row, column).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    word: Vec<usize>,
}

impl Perm {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::Parse { pos: 0, msg: "empty permutation".into() });
        }
        let mut seen = vec![false; n + 1];
        for (pos, &x) in word.iter().enumerate() {
            if x == 0 || x > n {
                return Err(Error::Parse { pos: pos + 1, msg: format!("value {x} not in 1..{n}") });
            }
            if seen[x] {
                return Err(Error::Parse { pos: pos + 1, msg: format!("value {x} repeated") });
            }
            seen[x] = true;
        }
        Ok(Perm { word })
    }

    /// Caller guarantees that `word` is a permutation of `1..=word.len()`.
    pub(crate) fn from_vec_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Perm::new(word.clone()).is_ok());
        Perm { word }
    }

    /// Accepts "45231" (single digits) and "4,5,2,3,1". Error positions are
    /// 1-based character offsets for the digit form and entry indices for the
    /// comma form.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty permutation".into() });
        }
        let word = if s.contains(',') {
            let mut word = Vec::new();
            for (k, part) in s.split(',').enumerate() {
                let part = part.trim();
                let x = part.parse::<usize>().map_err(|_| Error::Parse {
                    pos: k + 1,
                    msg: format!("entry {part:?} is not a positive integer"),
                })?;
                word.push(x);
            }
            word
        } else {
            let mut word = Vec::new();
            for (k, c) in s.chars().enumerate() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::Parse { pos: k + 1, msg: format!("unexpected character {c:?}") })?;
                word.push(d as usize);
            }
            word
        };
        Perm::new(word)
    }

    pub fn identity(n: usize) -> Self {
        Perm { word: (1..=n).collect() }
    }

    /// The longest element `w0 = n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Perm { word: (1..=n).rev().collect() }
    }

    /// The simple reflection `s_i = t_{i,i+1}`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1 && i <= n && j <= n, "transposition ({i},{j}) outside 1..{n}");
        let mut word: Vec<usize> = (1..=n).collect();
        word.swap(i - 1, j - 1);
        Perm { word }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `w(i)`, 1-based.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Perm { word: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Perm { word: other.word.iter().map(|&x| self.word[x - 1]).collect() })
    }

    /// `w · t_{i,j}`: swaps the entries in positions `i` and `j`.
    pub fn right_mul_t(&self, i: usize, j: usize) -> Perm {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Perm { word }
    }

    /// `t_{a,b} · w`: swaps the values `a` and `b`.
    pub fn left_mul_t(&self, a: usize, b: usize) -> Perm {
        let word = self
            .word
            .iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect();
        Perm { word }
    }

    /// `r_w(a,b) = #{ i <= b : w(i) >= a }`, the rank of the south-west
    /// submatrix on rows `a..n` and columns `1..b`.
    pub fn rank(&self, a: usize, b: usize) -> Result<usize> {
        let n = self.n();
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::OutOfRange(a, b, n));
        }
        Ok(self.rank_unchecked(a, b))
    }

    #[inline]
    pub fn rank_unchecked(&self, a: usize, b: usize) -> usize {
        self.word[..b].iter().filter(|&&x| x >= a).count()
    }

    /// Full rank table, `t[a][b] = r_w(a,b)` for `1 <= a,b <= n` (other
    /// entries zero).
    pub fn rank_table(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut t = vec![vec![0; n + 1]; n + 2];
        for a in (1..=n).rev() {
            for b in 1..=n {
                let hit = usize::from(self.word[b - 1] >= a);
                t[a][b] = t[a][b - 1] + hit;
            }
        }
        t
    }

    pub fn inversions(&self) -> usize {
        let w = &self.word;
        let mut c = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// Coxeter length (number of inversions).
    pub fn length(&self) -> usize {
        self.inversions()
    }

    /// True iff some subsequence of `self` is order-isomorphic to `p`.
    pub fn contains_pattern(&self, p: &Perm) -> bool {
        let k = p.n();
        let n = self.n();
        if k > n {
            return false;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if order_isomorphic(&self.word, &idx, &p.word) {
                return true;
            }
            // next k-combination of 0..n
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// One reduced word `[i_1, ..., i_l]` with `w = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Sort w by adjacent swaps on the right: w s_i swaps positions i, i+1.
        // Collecting the swaps that remove a descent gives w s_{j_1} ... s_{j_l} = id,
        // so w = s_{j_l} ... s_{j_1}.
        let mut cur = self.word.clone();
        let mut swaps = Vec::new();
        loop {
            let Some(i) = (0..cur.len().saturating_sub(1)).find(|&i| cur[i] > cur[i + 1]) else {
                break;
            };
            cur.swap(i, i + 1);
            swaps.push(i + 1);
        }
        swaps.reverse();
        swaps
    }

    /// Product of simple reflections `s_{i_1} ... s_{i_l}` in `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        let mut p = Perm::identity(n);
        for &i in word {
            p = p.right_mul_t(i, i + 1);
        }
        p
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Perm { word: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

fn order_isomorphic(w: &[usize], idx: &[usize], p: &[usize]) -> bool {
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if (w[idx[a]] < w[idx[b]]) != (p[a] < p[b]) {
                return false;
            }
        }
    }
    true
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for x in &self.word {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Perm::parse(s)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Perm::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the tests: `p("45231")`.
pub fn p(s: &str) -> Perm {
    Perm::parse(s).unwrap_or_else(|e| panic!("bad permutation literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(p("45231").word(), &[4, 5, 2, 3, 1]);
        assert_eq!(p("4,5,2,3,1"), p("45231"));
        assert_eq!(Perm::parse("10,9,8,7,6,5,4,3,2,1").unwrap(), Perm::longest(10));
        assert!(matches!(Perm::parse("4523x"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(Perm::parse("2,2,1"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(Perm::parse("1,2,a"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(Perm::parse("124"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn compose_simple_reflections() {
        let s = |i| Perm::simple(4, i);
        let w = s(1).compose(&s(2)).unwrap().compose(&s(1)).unwrap().compose(&s(3)).unwrap();
        assert_eq!(w, p("3241"));
        let w = p("45231");
        assert_eq!(Perm::identity(5).compose(&w).unwrap(), w);
        assert!(w.compose(&Perm::identity(4)).is_err());
    }

    #[test]
    fn left_and_right_transpositions() {
        let v = p("43125");
        assert_eq!(v.right_mul_t(2, 5), p("45123"));
        assert_eq!(v.left_mul_t(2, 5), p("43152"));
        let t = Perm::transposition(5, 2, 5);
        assert_eq!(v.compose(&t).unwrap(), v.right_mul_t(2, 5));
        assert_eq!(t.compose(&v).unwrap(), v.left_mul_t(2, 5));
    }

    #[test]
    fn rank_values() {
        let w = p("45231");
        assert_eq!(w.rank(5, 1).unwrap(), 0);
        assert_eq!(w.rank(3, 3).unwrap(), 2);
        assert_eq!(w.rank(1, 5).unwrap(), 5);
        assert!(w.rank(0, 1).is_err());
        assert!(w.rank(1, 6).is_err());
        let t = w.rank_table();
        for a in 1..=5 {
            for b in 1..=5 {
                assert_eq!(t[a][b], w.rank_unchecked(a, b));
            }
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(Perm::identity(5).length(), 0);
        assert_eq!(Perm::longest(5).length(), 10);
        assert_eq!(p("45231").length(), 8);
    }

    #[test]
    fn patterns() {
        assert!(p("45231").contains_pattern(&p("3412")));
        assert!(!p("251346").contains_pattern(&p("3412")));
        assert!(!p("251346").contains_pattern(&p("4312")));
        assert!(p("4312").contains_pattern(&p("4312")));
        assert!(!p("12").contains_pattern(&p("123")));
    }

    #[test]
    fn reduced_words() {
        for w in Perm::all(5) {
            let rw = w.reduced_word();
            assert_eq!(rw.len(), w.length());
            assert_eq!(Perm::from_word(5, &rw), w);
        }
        assert_eq!(Perm::from_word(4, &[1, 2, 1, 3]), p("3241"));
    }

    #[test]
    fn enumeration() {
        let all = Perm::all(4);
        assert_eq!(all.len(), 24);
        assert_eq!(all[0], Perm::identity(4));
        assert_eq!(all[23], Perm::longest(4));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn serde_roundtrip() {
        let w = p("45231");
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "\"45231\"");
        let back: Perm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
