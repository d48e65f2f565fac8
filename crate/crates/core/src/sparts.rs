//! Compositions, partitions and superpartitions.
//!
//! Rows, variables and positions are one-based in every public signature.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalars::QTScalar;
use crate::xpoly::{subsets, EvalPoint};

/// The permutation `w` with `w(i)` the row of the `i`-circle in the diagram of `eta`.
///
/// Rows are the entries of `eta` sorted decreasingly; equal entries keep their index order.
pub fn sort_rank(eta: &[u32]) -> Perm {
    let mut idx: Vec<usize> = (0..eta.len()).collect();
    idx.sort_by(|&a, &b| eta[b].cmp(&eta[a]).then(a.cmp(&b)));
    let mut w = vec![0; eta.len()];
    for (row, &i) in idx.iter().enumerate() {
        w[i] = row;
    }
    Perm::from_zero_based(w)
}

/// `r_eta(i)`: the row in which the `i`-circle appears.
pub fn row_of_circle(eta: &[u32], i: usize) -> usize {
    sort_rank(eta).at(i)
}

/// `q^{eta_i} t^{1 - r_eta(i)}`.
pub fn eigenvalue(eta: &[u32], i: usize) -> QTScalar {
    QTScalar::monomial(eta[i - 1] as i64, 1 - row_of_circle(eta, i) as i64)
}

/// All eigenvalues `(bar eta_1, ..., bar eta_N)` at once.
pub fn eigenvalues(eta: &[u32]) -> Vec<QTScalar> {
    let w = sort_rank(eta);
    (1..=eta.len())
        .map(|i| QTScalar::monomial(eta[i - 1] as i64, 1 - w.at(i) as i64))
        .collect()
}

/// Entries sorted decreasingly.
pub fn sorted_desc(v: &[u32]) -> Vec<u32> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// All compositions of `d` into `n` parts, in lexicographically decreasing order.
pub fn compositions(d: u32, n: usize) -> Vec<Vec<u32>> {
    fn go(d: u32, n: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=d).rev() {
            cur.push(k);
            go(d - k, n - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(d, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `d` with at most `max_len` parts and parts at most `max_part`, decreasing order.
pub fn partitions(d: u32, max_len: usize, max_part: u32) -> Vec<Vec<u32>> {
    fn go(d: u32, max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if d == 0 {
            out.push(cur.clone());
            return;
        }
        if max_len == 0 {
            return;
        }
        for k in (1..=max_part.min(d)).rev() {
            cur.push(k);
            go(d - k, max_len - 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// Conjugate of a partition given as a weakly decreasing vector (zeros allowed).
pub fn conjugate(lam: &[u32]) -> Vec<u32> {
    let width = lam.first().copied().unwrap_or(0);
    (1..=width)
        .map(|j| lam.iter().filter(|&&x| x >= j).count() as u32)
        .collect()
}

/// `n(lambda) = sum (i-1) lambda_i`.
pub fn n_stat(lam: &[u32]) -> i64 {
    lam.iter().enumerate().map(|(i, &x)| i as i64 * x as i64).sum()
}

/// `delta_k = (k-1, k-2, ..., 0)`.
pub fn delta(k: usize) -> Vec<u32> {
    (0..k as u32).rev().collect()
}

/// Which evaluation map.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("unknown sign {s:?}"))),
        }
    }
}

/// A superpartition `(anti; sym)` in `N` variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperPartition {
    n: usize,
    anti: Vec<u32>,
    sym: Vec<u32>,
}

impl SuperPartition {
    /// `anti` must be strictly decreasing; `sym` weakly decreasing, padded with zeros to `N - m`.
    pub fn new(anti: Vec<u32>, sym: Vec<u32>, n: usize) -> Result<Self> {
        let m = anti.len();
        if m > n {
            return Err(Error::Domain(format!("fermionic degree {m} exceeds N = {n}")));
        }
        if anti.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::Domain(format!("anti part {anti:?} is not strictly decreasing")));
        }
        if sym.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("sym part {sym:?} is not a partition")));
        }
        let mut sym: Vec<u32> = sym;
        while sym.len() > n - m && sym.last() == Some(&0) {
            sym.pop();
        }
        if sym.len() > n - m {
            return Err(Error::Domain(format!("sym part {sym:?} has more than N - m = {} parts", n - m)));
        }
        sym.resize(n - m, 0);
        Ok(SuperPartition { n, anti, sym })
    }

    /// `Lambda_0 = (delta_m; empty)`.
    pub fn lambda0(m: usize, n: usize) -> Self {
        SuperPartition::new(delta(m), Vec::new(), n).expect("delta_m is a valid anti part")
    }

    /// Parses `a1,a2,...;s1,s2,...`, optionally parenthesised, with `∅` or nothing for an empty side.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("superpartition {s:?} needs a ';'")))?;
        let side = |x: &str| -> Result<Vec<u32>> {
            let x = x.trim();
            if x.is_empty() || x == "∅" {
                return Ok(Vec::new());
            }
            x.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part {p:?}"))))
                .collect()
        };
        SuperPartition::new(side(a)?, side(b)?, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.anti.len()
    }

    pub fn anti(&self) -> &[u32] {
        &self.anti
    }

    /// The symmetric part, zero-padded to `N - m` entries.
    pub fn sym(&self) -> &[u32] {
        &self.sym
    }

    /// The composition `(Lambda_1, ..., Lambda_N) = (anti, sym)`.
    pub fn composition(&self) -> Vec<u32> {
        let mut v = self.anti.clone();
        v.extend_from_slice(&self.sym);
        v
    }

    /// `Lambda + (1^m)`.
    pub fn shifted_composition(&self) -> Vec<u32> {
        let mut v = self.composition();
        for x in v.iter_mut().take(self.m()) {
            *x += 1;
        }
        v
    }

    /// `Lambda^*`, length `N`.
    pub fn star(&self) -> Vec<u32> {
        sorted_desc(&self.composition())
    }

    /// `Lambda^⊛`, length `N`.
    pub fn circ(&self) -> Vec<u32> {
        sorted_desc(&self.shifted_composition())
    }

    /// `|Lambda^*|`.
    pub fn size(&self) -> u32 {
        self.anti.iter().chain(&self.sym).sum()
    }

    /// Total `x`-degree of `P_Lambda`: `|Lambda^a| - m(m-1)/2 + |Lambda^s|`.
    pub fn poly_degree(&self) -> u32 {
        let m = self.m() as u32;
        self.size() - m * m.saturating_sub(1) / 2
    }

    /// `eta_Lambda = (Lambda_1, ..., Lambda_m, Lambda_N, ..., Lambda_{m+1})`.
    pub fn eta(&self) -> Vec<u32> {
        let mut v = self.anti.clone();
        v.extend(self.sym.iter().rev());
        v
    }

    /// Rows (one-based) of the diagram that end with a circle.
    pub fn circle_rows(&self) -> Vec<usize> {
        let (s, c) = (self.star(), self.circ());
        (0..self.n).filter(|&i| c[i] == s[i] + 1).map(|i| i + 1).collect()
    }

    /// The exponent `(Lambda^a - delta_m, Lambda^s)` of the dominant monomial of `P_Lambda`.
    pub fn dominant_exponent(&self) -> Vec<u32> {
        let m = self.m();
        let mut v: Vec<u32> = self
            .anti
            .iter()
            .enumerate()
            .map(|(i, &a)| a - (m - 1 - i) as u32)
            .collect();
        v.extend_from_slice(&self.sym);
        v
    }

    /// The minimal-length `w` with `w Lambda = Lambda^*`.
    pub fn sorting_permutation(&self) -> Perm {
        sort_rank(&self.composition())
    }

    /// `u_Lambda^+` or `u_Lambda^-` as a substitution point, built from `w`.
    pub fn eval_point(&self, sign: Sign) -> EvalPoint {
        self.eval_point_with(sign, &self.sorting_permutation())
    }

    /// The evaluation point built from an arbitrary permutation in place of `w`.
    pub fn eval_point_with(&self, sign: Sign, w: &Perm) -> EvalPoint {
        let (s, c) = (self.star(), self.circ());
        let coords = (1..=self.n)
            .map(|i| {
                let r = w.at(i);
                match sign {
                    Sign::Plus => (c[r - 1] as i64, 1 - r as i64),
                    Sign::Minus => (-(s[r - 1] as i64), r as i64 - 1),
                }
            })
            .collect();
        EvalPoint::new(coords)
    }

    /// `(Lambda, sigma)` generates a superevaluation.
    pub fn is_superevaluation(&self, sigma: &Perm) -> bool {
        sigma.len() == self.n
            && sigma.act(&self.composition()) == self.star()
            && sigma.act(&self.shifted_composition()) == self.circ()
    }

    /// Rebuilds a superpartition from a diagram: `star` with circles at `circles` (one-based rows).
    pub fn from_diagram(star: &[u32], circles: &[usize]) -> Result<Self> {
        let n = star.len();
        let mut anti: Vec<u32> = circles.iter().map(|&i| star[i - 1]).collect();
        anti.sort_unstable_by(|a, b| b.cmp(a));
        let sym: Vec<u32> = (1..=n).filter(|i| !circles.contains(i)).map(|i| star[i - 1]).collect();
        let sp = SuperPartition::new(anti, sorted_desc(&sym), n)?;
        if sp.circle_rows() != circles {
            return Err(Error::Domain(format!("circles {circles:?} do not fit the diagram {star:?}")));
        }
        Ok(sp)
    }

    /// All superpartitions with fermionic degree `m`, `N` variables and `|Lambda^*| = d`.
    pub fn all(m: usize, n: usize, d: u32) -> Vec<SuperPartition> {
        let mut out = Vec::new();
        if m > n {
            return out;
        }
        let base = (m * m.saturating_sub(1) / 2) as u32;
        if d < base {
            return out;
        }
        for da in base..=d {
            // anti = lambda + delta_m with lambda a partition of da - base, at most m parts
            for lam in partitions(da - base, m, da - base) {
                let mut lam = lam;
                lam.resize(m, 0);
                let anti: Vec<u32> = lam.iter().enumerate().map(|(i, &x)| x + (m - 1 - i) as u32).collect();
                for sym in partitions(d - da, n - m, d - da) {
                    out.push(SuperPartition::new(anti.clone(), sym, n).unwrap());
                }
            }
        }
        out.sort();
        out
    }

    /// The same superpartition with a different number of variables.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        SuperPartition::new(self.anti.clone(), self.sym.clone(), n)
    }

    /// Compact text form without the zero padding, e.g. `2,0;1`.
    pub fn to_text(&self) -> String {
        let side = |v: &[u32]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        let sym: Vec<u32> = self.sym.iter().copied().filter(|&x| x > 0).collect();
        format!("{};{}", side(&self.anti), side(&sym))
    }

    /// LaTeX picture of the diagram with circles in the extra cells.
    pub fn to_latex_diagram(&self) -> String {
        let (s, c) = (self.star(), self.circ());
        let rows: Vec<String> = (0..self.n)
            .filter(|&i| c[i] > 0)
            .map(|i| {
                let mut cells = vec![String::new(); s[i] as usize];
                if c[i] > s[i] {
                    cells.push("\\bl\\bigcirc".into());
                }
                cells.join("&")
            })
            .collect();
        format!("\\tableau{{{}}}", rows.join("\\\\"))
    }
}

impl fmt::Debug for SuperPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl fmt::Display for SuperPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

/// Combinatorial statistics entering the evaluation formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    /// Cells `(i, j)` of `Lambda^*` outside (circled row and circled column), with arm in `Lambda^⊛` and leg in `Lambda^*`.
    pub b_cells: Vec<(usize, usize, i64, i64)>,
    /// Cells `(i, j)` of `Lambda^⊛ / delta_{m+1}`.
    pub s_cells: Vec<(usize, usize)>,
    pub n_s: i64,
    pub n_anti_skew: i64,
    pub anti_skew_size: i64,
    pub n_conj_anti_skew: i64,
}

impl SuperPartition {
    /// Rows of the conjugate diagram that carry a circle, and the anti part of the conjugate.
    pub fn conjugate_anti(&self) -> Vec<u32> {
        let (s, c) = (self.star(), self.circ());
        let (sc, cc) = (conjugate(&s), conjugate(&c));
        let mut out = Vec::new();
        for (j, &c) in cc.iter().enumerate() {
            let a = sc.get(j).copied().unwrap_or(0);
            if c != a {
                out.push(a);
            }
        }
        out
    }

    pub fn hook_data(&self) -> HookData {
        let m = self.m();
        let (s, c) = (self.star(), self.circ());
        let circled = self.circle_rows();
        let circle_cols: Vec<usize> = circled.iter().map(|&i| s[i - 1] as usize + 1).collect();
        let sc = conjugate(&s);
        let mut b_cells = Vec::new();
        for i in 1..=self.n {
            for j in 1..=s[i - 1] as usize {
                if circled.contains(&i) && circle_cols.contains(&j) {
                    continue;
                }
                let arm = c[i - 1] as i64 - j as i64;
                let leg = sc[j - 1] as i64 - i as i64;
                b_cells.push((i, j, arm, leg));
            }
        }
        let mut dm1 = delta(m + 1);
        dm1.resize(self.n.max(m + 1), 0);
        let mut s_cells = Vec::new();
        for i in 1..=self.n {
            for j in dm1[i - 1] as usize + 1..=c[i - 1] as usize {
                s_cells.push((i, j));
            }
        }
        let n_s = n_stat(&c) - n_stat(&dm1);
        let dm = delta(m);
        let n_anti_skew = n_stat(&self.anti) - n_stat(&dm);
        let anti_skew_size = self.anti.iter().sum::<u32>() as i64 - dm.iter().sum::<u32>() as i64;
        let n_conj_anti_skew = n_stat(&self.conjugate_anti()) - n_stat(&dm);
        HookData {
            b_cells,
            s_cells,
            n_s,
            n_anti_skew,
            anti_skew_size,
            n_conj_anti_skew,
        }
    }
}

/// Which of the two vertical-strip families.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum StripType {
    I,
    II,
}

/// A vertical strip `Omega / Lambda` with the data feeding its Pieri coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StripCertificate {
    pub lam: SuperPartition,
    pub omg: SuperPartition,
    pub strip_type: StripType,
    pub r: usize,
    pub rows_filled: Vec<usize>,
    pub rows_circled_square: Vec<usize>,
    pub rows_new_circle: Vec<usize>,
    pub rows_kept_circle: Vec<usize>,
    pub w: Perm,
    pub sigma_tilde: Perm,
    pub sigma: Perm,
    /// A representative `sigma s` of the coset of `sigma` for which `(Omega, w sigma s)` is a superevaluation.
    pub sigma_prime: Perm,
    pub j_tilde: Vec<usize>,
    pub j: Vec<usize>,
    pub l: Vec<usize>,
}

impl StripCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "lam": self.lam.to_text(),
            "omg": self.omg.to_text(),
            "type": match self.strip_type { StripType::I => "I", StripType::II => "II" },
            "r": self.r,
            "rows_filled": self.rows_filled,
            "rows_circled_square": self.rows_circled_square,
            "rows_new_circle": self.rows_new_circle,
            "rows_kept_circle": self.rows_kept_circle,
            "w": self.w.one_line(),
            "sigma_tilde": self.sigma_tilde.one_line(),
            "sigma": self.sigma.one_line(),
            "sigma_prime": self.sigma_prime.one_line(),
            "J_tilde": self.j_tilde,
            "J": self.j,
            "L": self.l,
        })
    }
}

/// Row classification of a candidate `Omega / Lambda`; `None` when it is not a vertical strip.
struct RowClasses {
    filled: Vec<usize>,
    circled_square: Vec<usize>,
    new_circle: Vec<usize>,
    kept_circle: Vec<usize>,
}

fn classify(lam: &SuperPartition, omg: &SuperPartition) -> Option<RowClasses> {
    let n = lam.n;
    let (ls, lc, os, oc) = (lam.star(), lam.circ(), omg.star(), omg.circ());
    for i in 0..n {
        if !(os[i] == ls[i] || os[i] == ls[i] + 1) || !(oc[i] == lc[i] || oc[i] == lc[i] + 1) {
            return None;
        }
    }
    let lcirc = lam.circle_rows();
    let ocirc = omg.circle_rows();
    let mut rc = RowClasses {
        filled: Vec::new(),
        circled_square: Vec::new(),
        new_circle: Vec::new(),
        kept_circle: Vec::new(),
    };
    for i in 1..=n {
        let grew = os[i - 1] > ls[i - 1];
        let was = lcirc.contains(&i);
        let is = ocirc.contains(&i);
        if grew && was {
            rc.circled_square.push(i);
        }
        if grew && !was {
            rc.filled.push(i);
        }
        if is && !(was && !grew) {
            rc.new_circle.push(i);
        }
        if is && was && !grew {
            rc.kept_circle.push(i);
        }
    }
    Some(rc)
}

/// Finds `s` in `S_m x S_{m+1,N}` with `(Omega, w sigma s)` a superevaluation and
/// `sigma s (Omega + 1^m) = tau_J (Lambda + 1^m)`.
fn coset_fix(lam: &SuperPartition, omg: &SuperPartition, w: &Perm, sigma: &Perm, j: &[usize]) -> Option<Perm> {
    let n = lam.n;
    let m = lam.m();
    let mut target = lam.shifted_composition();
    for &i in j {
        target[i - 1] += 1;
    }
    let ws = w.compose(sigma);
    let left = Perm::all(m);
    let right = Perm::all(n - m);
    for a in &left {
        for b in &right {
            let mut s: Vec<usize> = a.one_line();
            s.extend(b.one_line().iter().map(|x| x + m));
            let s = Perm::from_one_line(&s).unwrap();
            if omg.is_superevaluation(&ws.compose(&s))
                && sigma.compose(&s).act(&omg.shifted_composition()) == target
            {
                return Some(sigma.compose(&s));
            }
        }
    }
    None
}

/// Involution exchanging the `k`-th element of `a` with the `k`-th element of `b`.
fn pairing(n: usize, a: &[usize], b: &[usize]) -> Perm {
    let mut p = Perm::identity(n);
    for (&x, &y) in a.iter().zip(b) {
        p = Perm::transposition(n, x, y).compose(&p);
    }
    p
}

/// All `Omega` with `Omega / Lambda` a vertical `r`-strip of the given type, with certificates.
pub fn enumerate_strips(lam: &SuperPartition, r: usize, strip_type: StripType) -> Vec<StripCertificate> {
    let n = lam.n;
    let m = lam.m();
    let max_r = match strip_type {
        StripType::I => n - m,
        StripType::II => m,
    };
    if r == 0 || r > max_r {
        return Vec::new();
    }
    let rows: Vec<usize> = (1..=n).collect();
    let ls = lam.star();
    let w = lam.sorting_permutation();
    let mut out = Vec::new();
    for grow in subsets(&rows, r) {
        let mut os = ls.clone();
        for &i in &grow {
            os[i - 1] += 1;
        }
        if os.windows(2).any(|p| p[0] < p[1]) {
            continue;
        }
        for circles in subsets(&rows, m) {
            let Ok(omg) = SuperPartition::from_diagram(&os, &circles) else {
                continue;
            };
            let Some(rc) = classify(lam, &omg) else {
                continue;
            };
            let both: Vec<usize> = rc
                .circled_square
                .iter()
                .copied()
                .filter(|i| rc.new_circle.contains(i))
                .collect();
            let ok = match strip_type {
                StripType::I => both.is_empty(),
                StripType::II => rc.filled.is_empty(),
            };
            if !ok {
                continue;
            }
            let sq_only: Vec<usize> = rc.circled_square.iter().copied().filter(|i| !both.contains(i)).collect();
            let nc_only: Vec<usize> = rc.new_circle.iter().copied().filter(|i| !both.contains(i)).collect();
            debug_assert_eq!(sq_only.len(), nc_only.len());
            let sigma_tilde = pairing(n, &sq_only, &nc_only);
            let mut j_tilde = rc.circled_square.clone();
            if strip_type == StripType::I {
                j_tilde.extend(&rc.filled);
                j_tilde.sort_unstable();
            }
            let winv = w.inverse();
            let sigma = winv.compose(&sigma_tilde).compose(&w);
            let j = winv.compose(&sigma_tilde).image(&j_tilde);
            let l: Vec<usize> = (m + 1..=n).filter(|i| !j.contains(i)).collect();
            let sigma_prime = coset_fix(lam, &omg, &w, &sigma, &j).unwrap_or_else(|| sigma.clone());
            out.push(StripCertificate {
                lam: lam.clone(),
                omg,
                strip_type,
                r,
                rows_filled: rc.filled,
                rows_circled_square: rc.circled_square,
                rows_new_circle: rc.new_circle,
                rows_kept_circle: rc.kept_circle,
                w: w.clone(),
                sigma_tilde,
                sigma,
                sigma_prime,
                j_tilde,
                j,
                l,
            });
        }
    }
    out.sort_by(|a, b| a.omg.cmp(&b.omg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str, n: usize) -> SuperPartition {
        SuperPartition::parse(s, n).unwrap()
    }

    #[test]
    fn derived_shapes() {
        let l = sp("3,1,0;2,1", 5);
        assert_eq!(l.circ(), vec![4, 2, 2, 1, 1]);
        assert_eq!(l.star(), vec![3, 2, 1, 1, 0]);
        let z = sp("0;∅", 3);
        assert_eq!(z.star(), vec![0, 0, 0]);
        assert_eq!(z.circ(), vec![1, 0, 0]);
        assert_eq!(sp("2,0;1", 5).eta(), vec![2, 0, 0, 0, 1]);
    }

    #[test]
    fn circle_rows_of_composition() {
        let eta = [0, 2, 1, 3, 2, 0, 2, 0, 0];
        let expect = [(4, 1), (2, 2), (5, 3), (7, 4), (3, 5), (1, 6)];
        for (i, r) in expect {
            assert_eq!(row_of_circle(&eta, i), r);
        }
        assert_eq!(eigenvalue(&eta, 1), QTScalar::monomial(0, -5));
        for i in 1..=4 {
            assert_eq!(eigenvalue(&[0; 4], i), QTScalar::monomial(0, 1 - i as i64));
        }
        assert_eq!(eigenvalue(&[1, 0], 1), QTScalar::q());
    }

    #[test]
    fn sorting_permutations() {
        assert!(sp("4,2;1", 3).sorting_permutation().is_identity());
        assert_eq!(sp("2,0;1", 3).sorting_permutation().one_line(), vec![1, 3, 2]);
        let l = sp("3,1;5,4,3", 5);
        let w = l.sorting_permutation();
        assert_eq!(w.one_line(), vec![3, 5, 1, 2, 4]);
        assert_eq!(w.act(&l.composition()), vec![5, 4, 3, 3, 1]);
        assert_eq!(w.act(&l.shifted_composition()), l.circ());
    }

    #[test]
    fn evaluation_points() {
        let m = 3;
        let n = 5;
        let p = SuperPartition::lambda0(m, n).eval_point(Sign::Minus);
        let expect: Vec<(i64, i64)> = (0..n as i64)
            .map(|i| if (i as usize) < m { (i + 1 - m as i64, i) } else { (0, i) })
            .collect();
        assert_eq!(p.coords, expect);
        let e = SuperPartition::new(vec![], vec![], 4).unwrap().eval_point(Sign::Minus);
        assert_eq!(e.coords, vec![(0, 0), (0, 1), (0, 2), (0, 3)]);
        let plus = sp("2,0;1", 3).eval_point(Sign::Plus);
        assert_eq!(plus.coords, vec![(3, 0), (1, -2), (1, -1)]);
    }

    #[test]
    fn hook_statistics() {
        let z = sp("0;∅", 3).hook_data();
        assert!(z.s_cells.is_empty() && z.b_cells.is_empty());
        assert_eq!((z.n_s, z.n_anti_skew, z.anti_skew_size, z.n_conj_anti_skew), (0, 0, 0, 0));
        assert_eq!(n_stat(&[2, 1]), 1);
        assert_eq!(sp("3,1,0;2,1", 5).hook_data().anti_skew_size, 1);
    }

    #[test]
    fn b_cells_of_worked_diagram() {
        // Lambda^* = (5,5,3,3,1,1,1,0) with circles on rows 1, 3, 5, 8.
        let l = sp("5,3,1,0;5,3,1,1", 8);
        assert_eq!(l.circle_rows(), vec![1, 3, 5, 8]);
        let cells: Vec<(usize, usize)> = l.hook_data().b_cells.iter().map(|c| (c.0, c.1)).collect();
        let expect = vec![
            (1, 3), (1, 5), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (4, 1), (4, 2), (4, 3), (6, 1), (7, 1),
        ];
        assert_eq!(cells, expect);
        let s_cells = l.hook_data().s_cells;
        assert_eq!(s_cells.iter().filter(|c| c.0 == 1).count(), 2);
        assert_eq!(s_cells.len(), 6 + 5 + 4 + 3 + 2 + 1 + 1 + 1 - (4 + 3 + 2 + 1));
    }

    #[test]
    fn upper_strips_of_worked_example() {
        let l = sp("2,0;1", 5);
        let got: Vec<String> = enumerate_strips(&l, 2, StripType::I).iter().map(|c| c.omg.to_text()).collect();
        let mut expect = vec!["1,0;3,1", "2,0;2,1", "2,1;1,1", "2,0;1,1,1"];
        expect.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, expect);
    }

    #[test]
    fn lower_strips_of_worked_example() {
        let l = sp("2,0;1", 5);
        let mut got: Vec<String> = enumerate_strips(&l, 2, StripType::II).iter().map(|c| c.omg.to_text()).collect();
        got.sort();
        let mut expect = vec!["3,1;1", "3,0;1,1", "1,0;3,1"];
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn certificate_of_worked_example() {
        let l = sp("2,1;4,3,2", 6);
        let o = sp("3,0;5,3,2,2", 6);
        let cert = enumerate_strips(&l, 3, StripType::I)
            .into_iter()
            .find(|c| c.omg == o)
            .expect("strip present");
        assert_eq!(cert.w.one_line(), vec![3, 5, 1, 2, 4, 6]);
        assert_eq!(cert.j_tilde, vec![1, 3, 5]);
        assert_eq!(cert.sigma_tilde.one_line(), vec![1, 3, 2, 4, 6, 5]);
        assert_eq!(cert.j, vec![3, 4, 6]);
        assert_eq!(cert.sigma.one_line(), vec![4, 6, 3, 1, 5, 2]);
    }

    #[test]
    fn superevaluation_checks() {
        let l = sp("1,0;∅", 2);
        assert!(l.is_superevaluation(&l.sorting_permutation()));
        assert!(!l.is_superevaluation(&Perm::from_one_line(&[2, 1]).unwrap()));
    }

    #[test]
    fn parse_and_print() {
        let l = sp("(2,0;1)", 5);
        assert_eq!(l.to_text(), "2,0;1");
        assert_eq!(l.sym(), &[1, 0, 0]);
        assert_eq!(sp(";2,1", 3).m(), 0);
        assert!(SuperPartition::parse("1,1;0", 3).is_err());
        assert!(SuperPartition::parse("2;1,1,1", 3).is_err());
        assert!(SuperPartition::parse("2,1", 3).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for sp in SuperPartition::all(2, 4, 3) {
            assert_eq!(sp.size(), 3);
            assert_eq!(sp.m(), 2);
        }
        assert_eq!(SuperPartition::all(1, 3, 0).len(), 1);
        assert_eq!(compositions(2, 3).len(), 6);
    }
}
