//! Permutations of `{1, ..., N}` in one-line notation.
//!
//! Stored zero-based; the public constructors and accessors speak one-based
//! one-line notation `[w(1), ..., w(N)]`. Composition is right-to-left:
//! `a.compose(&b)` is `i -> a(b(i))`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn from_one_line(w: &[usize]) -> Result<Self> {
        let n = w.len();
        let mut seen = vec![false; n];
        for &x in w {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::Domain(format!("{w:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm(w.iter().map(|x| x - 1).collect()))
    }

    pub(crate) fn from_zero_based(w: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = w.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x)
        });
        Perm(w)
    }

    /// Simple transposition `s_i` exchanging `i` and `i+1` (one-based `i`).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, j - 1);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// One-based image `w(i)`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.0.len();
        let mut c = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] > self.0[j] {
                    c += 1;
                }
            }
        }
        c
    }

    /// The left action on vectors, `(w v)_{w(i)} = v_i`.
    pub fn act<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.0[i]] = x.clone();
        }
        out
    }

    /// One-based image of a set.
    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.at(i)).collect();
        out.sort_unstable();
        out
    }

    /// All permutations of `n` letters in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm(cur.clone()));
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// A reduced word `[i_1, ..., i_l]` with `self = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.0.clone();
        let mut word = Vec::new();
        // Bubble the right factors off: w = w' s_i with w(i) > w(i+1) shortens w.
        while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            w.swap(i, i + 1);
            word.push(i + 1);
        }
        word.reverse();
        word
    }

    /// True when the permutation maps the interval `[a, b]` to itself for each listed block.
    pub fn preserves_blocks(&self, blocks: &[(usize, usize)]) -> bool {
        blocks
            .iter()
            .all(|&(a, b)| (a..=b).all(|i| (a..=b).contains(&self.at(i))))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_line())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
