//! Non-symmetric `E_eta` and bisymmetric `P_Lambda` Macdonald polynomials.
//!
//! [`nonsym_e`] builds `E_eta` recursively from `E_0 = 1` with two operators that
//! permute joint eigenvectors of the `Y_i`:
//!
//! * `(T_i + (1-t) y_i / (y_i - y_{i+1}))` exchanges the eigenvalues `y_i` and `y_{i+1}`;
//! * `x_N omega` sends `E_nu` to `q^{nu_1} E_{(nu_2, ..., nu_N, nu_1 + 1)}`.
//!
//! Two slower constructions serve as oracles. [`nonsym_e_triangular`] back-substitutes
//! against the separating operator `Y_c = sum_i 2^{i-1} Y_i`, whose joint eigenvalue
//! determines `eta` and which is triangular on monomials. [`nonsym_e_dense`] solves the
//! full stacked eigen-system.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{apply_omega, apply_t, apply_y, symmetrize, SymKind};
use crate::linalg::solve;
use crate::perm::Perm;
use crate::scalars::{bracket_factorial, Param, QTScalar};
use crate::sparts::{compositions, eigenvalues, sort_rank, sorted_desc, SuperPartition};
use crate::xpoly::{vandermonde, Exps, VandermondeKind, XPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct EBasisElement {
    pub eta: Vec<u32>,
    pub poly: XPoly,
    pub eigenvalues: Vec<QTScalar>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PBasisElement {
    pub lam: SuperPartition,
    pub poly: XPoly,
    /// `P = c_lam * A_m S^t_{m+1,N} E_eta / prod_{j<k<=m} (x_k - x_j)`, where `eta` lists the
    /// antisymmetric entries in increasing order followed by the reversed symmetric ones.
    pub c_lam: QTScalar,
    /// `P = c_t * A^t_m S^t_{m+1,N} E_eta / Delta^t_m` with the same `eta`.
    pub c_t: QTScalar,
}

impl PBasisElement {
    pub fn to_json(&self) -> Value {
        json!({
            "lam": self.lam.to_text(),
            "N": self.lam.n(),
            "poly": self.poly.to_json(),
            "c_lam": self.c_lam.to_json(),
            "c_t": self.c_t.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v["N"].as_u64().ok_or_else(|| Error::Parse("missing N".into()))? as usize;
        let lam = SuperPartition::parse(v["lam"].as_str().unwrap_or_default(), n)?;
        Ok(PBasisElement {
            lam,
            poly: XPoly::from_json(&v["poly"])?,
            c_lam: QTScalar::from_json(&v["c_lam"])?,
            c_t: QTScalar::from_json(&v["c_t"])?,
        })
    }
}

/// `w_nu`, the minimal-length permutation with `nu = w_nu nu^+`.
pub fn composition_sorting_perm(nu: &[u32]) -> Perm {
    sort_rank(nu).inverse()
}

type Key = (Vec<u32>, std::cmp::Reverse<usize>, Exps);

/// A total order refining the Bruhat order on compositions of the same size.
fn bruhat_key(nu: &Exps) -> Key {
    let len = composition_sorting_perm(&nu.0).length();
    (sorted_desc(&nu.0), std::cmp::Reverse(len), nu.clone())
}

fn dominates(a: &[u32], b: &[u32]) -> bool {
    let (mut sa, mut sb) = (0u64, 0u64);
    a.iter().zip(b).all(|(&x, &y)| {
        sa += x as u64;
        sb += y as u64;
        sa >= sb
    })
}

/// Bruhat order on the symmetric group through the rank-matrix criterion.
pub fn perm_bruhat_leq(u: &Perm, v: &Perm) -> bool {
    let n = u.len();
    (1..=n).all(|i| {
        (1..=n).all(|k| {
            let cu = (1..=i).filter(|&j| u.at(j) >= k).count();
            let cv = (1..=i).filter(|&j| v.at(j) >= k).count();
            cu <= cv
        })
    })
}

/// `nu ⪯ eta` in the Bruhat order on compositions.
pub fn bruhat_leq(nu: &[u32], eta: &[u32]) -> bool {
    let (np, ep) = (sorted_desc(nu), sorted_desc(eta));
    if np == ep {
        return perm_bruhat_leq(&composition_sorting_perm(eta), &composition_sorting_perm(nu));
    }
    np.iter().sum::<u32>() == ep.iter().sum::<u32>() && dominates(&ep, &np)
}

fn separator_weights(n: usize) -> Vec<QTScalar> {
    (0..n).map(|i| QTScalar::from_int(1i64 << i)).collect()
}

fn separator_eigenvalue(eta: &[u32]) -> QTScalar {
    eigenvalues(eta)
        .iter()
        .zip(separator_weights(eta.len()))
        .map(|(v, w)| v * &w)
        .sum()
}

fn y_cache() -> &'static RwLock<HashMap<Exps, Arc<XPoly>>> {
    static C: OnceLock<RwLock<HashMap<Exps, Arc<XPoly>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `Y_c x^nu`.
fn y_separator(nu: &Exps) -> Arc<XPoly> {
    if let Some(v) = y_cache().read().unwrap().get(nu) {
        return v.clone();
    }
    let n = nu.0.len();
    let mono = XPoly::x_pow(&nu.0);
    let parts: Vec<XPoly> = (1..=n)
        .zip(separator_weights(n))
        .map(|(i, w)| apply_y(i, &mono).scale(&w))
        .collect();
    let out = XPoly::collect(n, parts.into_iter().flat_map(|p| p.into_terms().collect::<Vec<_>>()));
    let out = Arc::new(out);
    y_cache().write().unwrap().insert(nu.clone(), out.clone());
    out
}

fn e_cache() -> &'static RwLock<HashMap<Vec<u32>, Arc<EBasisElement>>> {
    static C: OnceLock<RwLock<HashMap<Vec<u32>, Arc<EBasisElement>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn p_cache() -> &'static RwLock<HashMap<SuperPartition, Arc<PBasisElement>>> {
    static C: OnceLock<RwLock<HashMap<SuperPartition, Arc<PBasisElement>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// Seeds the in-process cache with a previously computed `E_eta`.
pub fn cache_insert_e(eta: &[u32], poly: XPoly) {
    let e = EBasisElement {
        eta: eta.to_vec(),
        poly,
        eigenvalues: eigenvalues(eta),
    };
    e_cache().write().unwrap().insert(eta.to_vec(), Arc::new(e));
}

/// Every `E_eta` currently held in the in-process cache.
pub fn cached_e() -> Vec<Arc<EBasisElement>> {
    e_cache().read().unwrap().values().cloned().collect()
}

/// Every `P_Lambda` currently held in the in-process cache.
pub fn cached_p() -> Vec<Arc<PBasisElement>> {
    p_cache().read().unwrap().values().cloned().collect()
}

/// Seeds the in-process cache with a previously computed `P_Lambda`.
pub fn cache_insert_p(p: PBasisElement) {
    p_cache().write().unwrap().insert(p.lam.clone(), Arc::new(p));
}

/// Whether `P_Lambda` is already in the in-process cache.
pub fn is_p_cached(lam: &SuperPartition) -> bool {
    p_cache().read().unwrap().contains_key(lam)
}

/// The non-symmetric Macdonald polynomial `E_eta`.
pub fn nonsym_e(eta: &[u32]) -> Result<Arc<EBasisElement>> {
    if let Some(v) = e_cache().read().unwrap().get(eta) {
        return Ok(v.clone());
    }
    let n = eta.len();
    if n == 0 {
        return Err(Error::Domain("E_eta needs at least one variable".into()));
    }
    let poly = if eta.iter().all(|&x| x == 0) {
        XPoly::one(n)
    } else if eta[n - 1] > 0 {
        let mut nu = vec![eta[n - 1] - 1];
        nu.extend_from_slice(&eta[..n - 1]);
        let prev = nonsym_e(&nu)?;
        let raised = XPoly::var(n, n).try_mul(&apply_omega(&prev.poly))?;
        raised.scale(&QTScalar::monomial(-(nu[0] as i64), 0))
    } else {
        let j = (1..n).rev().find(|&j| eta[j - 1] > 0).expect("nonzero entry");
        let mut zeta = eta.to_vec();
        zeta.swap(j - 1, j);
        let prev = nonsym_e(&zeta)?;
        let (yj, yk) = (&prev.eigenvalues[j - 1], &prev.eigenvalues[j]);
        let c = (&(&QTScalar::one() - &QTScalar::t()) * yj) / &(yj - yk);
        let f = &apply_t(j, &prev.poly) + &prev.poly.scale(&c);
        let lead = f.coefficient(eta);
        if lead.is_zero() {
            return Err(Error::Inconsistent(format!("E_{eta:?}: intertwiner lost the leading monomial")));
        }
        f.scale(&lead.inv())
    };
    let out = Arc::new(EBasisElement {
        eta: eta.to_vec(),
        poly,
        eigenvalues: eigenvalues(eta),
    });
    e_cache().write().unwrap().insert(eta.to_vec(), out.clone());
    Ok(out)
}

/// `E_eta` by back-substitution against the separating operator `Y_c`.
pub fn nonsym_e_triangular(eta: &[u32]) -> Result<XPoly> {
    let n = eta.len();
    if n == 0 {
        return Err(Error::Domain("E_eta needs at least one variable".into()));
    }
    let lam = separator_eigenvalue(eta);
    let top = Exps(eta.to_vec());
    let top_key = bruhat_key(&top);
    let mut residual: BTreeMap<Key, QTScalar> = BTreeMap::new();
    let push = |residual: &mut BTreeMap<Key, QTScalar>, f: &XPoly, b: &QTScalar| {
        for (e, c) in f.terms() {
            let v = c * b;
            let k = bruhat_key(e);
            match residual.get_mut(&k) {
                Some(x) => {
                    *x += &v;
                    if x.is_zero() {
                        residual.remove(&k);
                    }
                }
                None => {
                    residual.insert(k, v);
                }
            }
        }
    };
    let shifted = |e: &Exps| -> Result<XPoly> {
        let y = y_separator(e);
        let k = bruhat_key(e);
        if y.coefficient(&e.0) != separator_eigenvalue(&e.0) || y.terms().any(|(f, _)| f != e && bruhat_key(f) > k) {
            return Err(Error::Inconsistent(format!("Y_c is not triangular on x^{e:?}")));
        }
        y.try_sub(&XPoly::monomial(e.clone(), lam.clone()))
    };
    push(&mut residual, &shifted(&top)?, &QTScalar::one());
    let mut poly = XPoly::x_pow(eta);
    while let Some((k, r)) = residual.pop_last() {
        if k >= top_key {
            return Err(Error::Inconsistent(format!("E_{eta:?}: residual at or above x^eta")));
        }
        let nu = k.2.clone();
        let d = &separator_eigenvalue(&nu.0) - &lam;
        if d.is_zero() {
            return Err(Error::Degenerate(format!("E_{eta:?}: eigenvalue collision at {nu:?}")));
        }
        let b = -&(&r / &d);
        let mut step = shifted(&nu)?;
        step = step.try_sub(&XPoly::monomial(nu.clone(), d))?;
        push(&mut residual, &step, &b);
        poly.add_term(nu, b);
    }
    Ok(poly)
}

/// `E_eta` from the full stacked eigen-system over every composition of `|eta|`.
pub fn nonsym_e_dense(eta: &[u32]) -> Result<XPoly> {
    let n = eta.len();
    let d: u32 = eta.iter().sum();
    let unknowns: Vec<Vec<u32>> = compositions(d, n).into_iter().filter(|nu| nu != eta).collect();
    let index: HashMap<&[u32], usize> = unknowns.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let ev = eigenvalues(eta);
    let mut rows: Vec<Vec<QTScalar>> = Vec::new();
    let mut rhs: Vec<QTScalar> = Vec::new();
    let all = compositions(d, n);
    for i in 1..=n {
        // (Y_i - ev_i) applied to each monomial, read off on every monomial
        let images: Vec<XPoly> = all
            .iter()
            .map(|nu| {
                let m = XPoly::x_pow(nu);
                &apply_y(i, &m) - &m.scale(&ev[i - 1])
            })
            .collect();
        for target in &all {
            let mut row = vec![QTScalar::zero(); unknowns.len()];
            let mut b = QTScalar::zero();
            for (nu, img) in all.iter().zip(&images) {
                let c = img.coefficient(target);
                if c.is_zero() {
                    continue;
                }
                match index.get(nu.as_slice()) {
                    Some(&j) => row[j] = c,
                    None => b = -c,
                }
            }
            if row.iter().any(|x| !x.is_zero()) || !b.is_zero() {
                rows.push(row);
                rhs.push(b);
            }
        }
    }
    let sol = if unknowns.is_empty() {
        if rhs.iter().any(|b| !b.is_zero()) {
            return Err(Error::Inconsistent(format!("x^{eta:?} is not an eigenvector")));
        }
        Vec::new()
    } else {
        solve(rows, rhs)?
    };
    let mut out = XPoly::x_pow(eta);
    for (nu, c) in unknowns.iter().zip(sol) {
        out.add_term(Exps(nu.clone()), c);
    }
    Ok(out)
}

/// Invariance under permutations of `x_1..x_m` and of `x_{m+1}..x_N`.
pub fn is_bisymmetric(f: &XPoly, m: usize) -> bool {
    let n = f.nvars();
    (1..n).filter(|&i| i != m).all(|i| f.permute_vars(&Perm::simple(n, i)) == *f)
}

/// The bisymmetric Macdonald polynomial `P_Lambda`, normalized on its dominant monomial.
pub fn bisym_p(lam: &SuperPartition) -> Result<Arc<PBasisElement>> {
    if let Some(v) = p_cache().read().unwrap().get(lam) {
        return Ok(v.clone());
    }
    let (m, n) = (lam.m(), lam.n());
    let mut eta = lam.eta();
    eta[..m].reverse();
    let e = nonsym_e(&eta)?;
    let g = symmetrize(SymKind::TSym, m + 1, n, &e.poly);
    let dom = lam.dominant_exponent();
    let idx: Vec<usize> = (1..=m).collect();
    let reversal_sign = QTScalar::from_int(if (m * m.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 });

    let h = symmetrize(SymKind::Antisym, 1, m, &g);
    let raw = h
        .exact_div(&vandermonde(VandermondeKind::Plain, &idx, n))
        .map_err(|err| Error::Inconsistent(format!("P_{lam}: antisymmetrized image not divisible by the Vandermonde: {err}")))?;
    let lead = raw.coefficient(&dom);
    if lead.is_zero() {
        return Err(Error::Degenerate(format!("P_{lam}: dominant coefficient vanishes")));
    }
    let poly = raw.scale(&lead.inv());
    let c_lam = &lead.inv() * &reversal_sign;

    let h2 = symmetrize(SymKind::TAntisym, 1, m, &g);
    let raw2 = h2
        .exact_div(&vandermonde(VandermondeKind::TDeformed, &idx, n))
        .map_err(|err| Error::Inconsistent(format!("P_{lam}: t-antisymmetrized image not divisible by the t-Vandermonde: {err}")))?;
    let lead2 = raw2.coefficient(&dom);
    if lead2.is_zero() {
        return Err(Error::Degenerate(format!("P_{lam}: t-deformed route has vanishing dominant coefficient")));
    }
    let c_t = lead2.inv();
    if raw2.scale(&c_t) != poly {
        return Err(Error::Inconsistent(format!("P_{lam}: the two antisymmetrizer routes are not proportional")));
    }
    let out = Arc::new(PBasisElement {
        lam: lam.clone(),
        poly,
        c_lam,
        c_t,
    });
    p_cache().write().unwrap().insert(lam.clone(), out.clone());
    Ok(out)
}

/// `c_Lambda(t) = 1 / (prod_i [n_{Lambda^s}(i)]_{1/t}! * t^{(N-m)(N-m-1)/2})`, zeros of `Lambda^s` included.
pub fn c_lambda_formula(lam: &SuperPartition) -> QTScalar {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    for &s in lam.sym() {
        *counts.entry(s).or_default() += 1;
    }
    let k = (lam.n() - lam.m()) as i64;
    let mut inv = QTScalar::monomial(0, k * (k - 1) / 2);
    for &c in counts.values() {
        inv *= &bracket_factorial(c, Param::TInverse).expect("nonnegative count");
    }
    inv.inv()
}

/// Coefficients `c_Omega` with `f = sum c_Omega P_Omega`, over superpartitions of fermionic degree `m`.
pub fn expand_in_p_basis(f: &XPoly, m: usize) -> Result<Vec<(SuperPartition, QTScalar)>> {
    let n = f.nvars();
    if f.is_zero() {
        return Ok(Vec::new());
    }
    if !f.is_homogeneous() {
        return Err(Error::Domain("expansion needs a homogeneous polynomial".into()));
    }
    if m > n {
        return Err(Error::Domain(format!("fermionic degree {m} exceeds N = {n}")));
    }
    let d = f.degree().unwrap_or(0) + (m * m.saturating_sub(1) / 2) as u32;
    let basis = SuperPartition::all(m, n, d);
    let polys: Vec<Arc<PBasisElement>> = basis.par_iter().map(bisym_p).collect::<Result<_>>()?;
    let doms: Vec<Vec<u32>> = basis.iter().map(SuperPartition::dominant_exponent).collect();
    let a: Vec<Vec<QTScalar>> = doms
        .iter()
        .map(|e| polys.iter().map(|p| p.poly.coefficient(e)).collect())
        .collect();
    let b: Vec<QTScalar> = doms.iter().map(|e| f.coefficient(e)).collect();
    let coeffs = solve(a, b)?;
    let mut residual = f.clone();
    for (p, c) in polys.iter().zip(&coeffs) {
        if !c.is_zero() {
            residual = residual.try_sub(&p.poly.scale(c))?;
        }
    }
    if !residual.is_zero() {
        return Err(Error::Inconsistent(format!(
            "not in the span of P_Omega with m = {m}: residual has {} terms",
            residual.len()
        )));
    }
    Ok(basis.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::apply_y;

    fn sc(s: &str) -> QTScalar {
        QTScalar::parse(s).unwrap()
    }

    fn sp(s: &str, n: usize) -> SuperPartition {
        SuperPartition::parse(s, n).unwrap()
    }

    #[test]
    fn small_e_polynomials() {
        assert_eq!(nonsym_e(&[0, 0, 0]).unwrap().poly, XPoly::one(3));
        assert_eq!(nonsym_e(&[0, 1]).unwrap().poly, XPoly::var(2, 2));
        let e10 = nonsym_e(&[1, 0]).unwrap();
        let expect = &XPoly::var(2, 1) + &XPoly::var(2, 2).scale(&sc("q(1-t)/(1-q t)"));
        assert_eq!(e10.poly, expect);
        assert_eq!(e10.poly.to_latex(), "\\frac{q-qt}{1-qt} x_{2} + x_{1}");
    }

    #[test]
    fn recursion_matches_both_solvers() {
        for n in 2..=3 {
            for d in 0..=2 {
                for eta in compositions(d, n) {
                    let e = nonsym_e(&eta).unwrap();
                    assert_eq!(e.poly, nonsym_e_dense(&eta).unwrap(), "eta = {eta:?}");
                    assert_eq!(e.poly, nonsym_e_triangular(&eta).unwrap(), "eta = {eta:?}");
                    for i in 1..=n {
                        assert_eq!(apply_y(i, &e.poly), e.poly.scale(&e.eigenvalues[i - 1]));
                    }
                    for (nu, _) in e.poly.terms() {
                        assert!(bruhat_leq(&nu.0, &eta), "{nu:?} not below {eta:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        assert!(bruhat_leq(&[0, 1], &[1, 0]));
        assert!(!bruhat_leq(&[1, 0], &[0, 1]));
        assert!(bruhat_leq(&[1, 1, 0], &[2, 0, 0]));
        assert!(!bruhat_leq(&[2, 0, 0], &[1, 1, 0]));
    }

    #[test]
    fn trivial_superpartitions() {
        for n in 2..=4 {
            let p = bisym_p(&sp("0;∅", n)).unwrap();
            assert_eq!(p.poly, XPoly::one(n));
        }
        let p = bisym_p(&SuperPartition::new(vec![], vec![1], 2).unwrap()).unwrap();
        assert_eq!(p.poly, &XPoly::var(2, 1) + &XPoly::var(2, 2));
    }

    #[test]
    fn c_lambda_examples() {
        assert_eq!(c_lambda_formula(&sp("0;∅", 3)), sc("1/(1+t)"));
        assert_eq!(c_lambda_formula(&sp("1,0;2", 3)), QTScalar::one());
    }

    #[test]
    fn p_is_bisymmetric_and_monic() {
        let lam = sp("2,0;1", 4);
        let p = bisym_p(&lam).unwrap();
        assert!(is_bisymmetric(&p.poly, 2));
        assert_eq!(p.poly.coefficient(&[1, 0, 1, 0]), QTScalar::one());
    }

    #[test]
    fn expansion_recovers_basis_elements() {
        let lam = sp("1,0;1", 3);
        let p = bisym_p(&lam).unwrap();
        assert_eq!(expand_in_p_basis(&p.poly, 2).unwrap(), vec![(lam, QTScalar::one())]);
        assert!(expand_in_p_basis(&XPoly::zero(3), 2).unwrap().is_empty());
        assert!(expand_in_p_basis(&XPoly::var(3, 1), 2).is_err());
    }
}
