//! Pieri rules for `e_r(x_{m+1}, ..., x_N)` (type I strips) and `e_r(x_1, ..., x_m)` (type II strips).
//!
//! Every coefficient is a product of binomials evaluated factor by factor at a point, so the
//! operator-level coefficients `C_{J,sigma}`, `D_{J,sigma}` never exist as rational functions in `x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::evalsym::eval_formula;
use crate::hecke::apply_e_of_y;
use crate::macdonald::{bisym_p, expand_in_p_basis};
use crate::perm::Perm;
use crate::scalars::QTScalar;
use crate::sparts::{enumerate_strips, Sign, StripCertificate, StripType, SuperPartition};
use crate::xpoly::{elementary_symmetric, subsets, vandermonde, VandermondeKind, XPoly};

/// Which elementary symmetric function multiplies `P_Lambda`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `e_r(x_{m+1}, ..., x_N)`.
    Upper,
    /// `e_r(x_1, ..., x_m)`.
    Lower,
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" | "sym" | "I" => Ok(Variant::Upper),
            "lower" | "anti" | "II" => Ok(Variant::Lower),
            _ => Err(Error::Parse(format!("unknown Pieri variant {s:?}"))),
        }
    }
}

impl Variant {
    fn strip_type(self) -> StripType {
        match self {
            Variant::Upper => StripType::I,
            Variant::Lower => StripType::II,
        }
    }

    fn max_r(self, m: usize, n: usize) -> usize {
        match self {
            Variant::Upper => n - m,
            Variant::Lower => m,
        }
    }
}

/// The index sets attached to a permutation relative to the split `[1,m] | [m+1,N]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSets {
    pub a: Vec<usize>,
    pub a_c: Vec<usize>,
    pub b: Vec<usize>,
    pub b_c: Vec<usize>,
    pub s: usize,
    pub z: usize,
    pub d: usize,
}

impl SigmaSets {
    pub fn new(sigma: &Perm, m: usize) -> Self {
        let n = sigma.len();
        let inv = sigma.inverse();
        let (a, a_c): (Vec<usize>, Vec<usize>) = (1..=m).partition(|&i| inv.at(i) <= m);
        let (b, b_c): (Vec<usize>, Vec<usize>) = (m + 1..=n).partition(|&i| inv.at(i) > m);
        let s = a_c.len();
        let z = inversions_on(sigma, m);
        let cross = a_c.iter().map(|&i| a.iter().filter(|&&j| i < j).count()).sum::<usize>();
        let d = s * s.saturating_sub(1) / 2 + cross + z;
        SigmaSets { a, a_c, b, b_c, s, z, d }
    }
}

/// `#{i < j <= m : sigma(i) > sigma(j)}`.
fn inversions_on(sigma: &Perm, m: usize) -> usize {
    (1..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
        .filter(|&(i, j)| sigma.at(i) > sigma.at(j))
        .count()
}

/// Accumulates a product of numerator and denominator factors, refusing vanishing denominators.
struct Fraction {
    num: Vec<QTScalar>,
    den: Vec<QTScalar>,
}

impl Fraction {
    fn new() -> Self {
        Fraction {
            num: Vec::new(),
            den: Vec::new(),
        }
    }

    fn mul(&mut self, x: QTScalar) {
        self.num.push(x);
    }

    fn div(&mut self, x: QTScalar) {
        self.den.push(x);
    }

    fn a_pair(&mut self, xi: &QTScalar, yj: &QTScalar) {
        self.mul(&(xi * &QTScalar::t()) - yj);
        self.div(xi - yj);
    }

    fn finish(self, what: &str) -> Result<QTScalar> {
        if self.num.iter().any(QTScalar::is_zero) {
            return Ok(QTScalar::zero());
        }
        if self.den.iter().any(QTScalar::is_zero) {
            return Err(Error::Degenerate(format!("{what}: a denominator factor vanishes")));
        }
        let num = self.num.iter().fold(QTScalar::one(), |acc, x| &acc * x);
        let den = self.den.iter().fold(QTScalar::one(), |acc, x| &acc * x);
        Ok(&num / &den)
    }
}

fn var(x: &[QTScalar], i: usize) -> &QTScalar {
    &x[i - 1]
}

/// `x` with `x_i -> q x_i` for `i` in `set`.
fn q_shifted(x: &[QTScalar], set: &[usize]) -> Vec<QTScalar> {
    let mut out = x.to_vec();
    for &i in set {
        out[i - 1] = out[i - 1].mul_monomial(1, 0);
    }
    out
}

fn push_phi(fr: &mut Fraction, sets: &SigmaSets, x: &[QTScalar]) {
    if sets.d % 2 == 1 {
        fr.mul(QTScalar::from_int(-1));
    }
    let tm1 = &QTScalar::t() - &QTScalar::one();
    for &j in &sets.b_c {
        fr.mul(&tm1 * var(x, j));
    }
    for block in [&sets.a_c, &sets.b_c] {
        for (k, &i) in block.iter().enumerate() {
            for &j in &block[k + 1..] {
                fr.mul(var(x, i) - var(x, j));
            }
        }
    }
    for &i in &sets.a_c {
        for &j in &sets.b_c {
            fr.div(var(x, i) - var(x, j));
        }
    }
}

/// `Phi(sigma)` evaluated at `x` (already shifted by the caller when needed).
pub fn phi_at(sigma: &Perm, m: usize, x: &[QTScalar]) -> Result<QTScalar> {
    let mut fr = Fraction::new();
    push_phi(&mut fr, &SigmaSets::new(sigma, m), x);
    fr.finish("Phi")
}

/// The second closed form of `Phi(sigma)`, through `Delta_m / K_sigma Delta_m`.
pub fn phi_alternative_at(sigma: &Perm, m: usize, x: &[QTScalar]) -> Result<QTScalar> {
    let sets = SigmaSets::new(sigma, m);
    let image = sigma.image(&(1..=m).collect::<Vec<_>>());
    let mut fr = Fraction::new();
    let tm1 = &QTScalar::t() - &QTScalar::one();
    for &j in &sets.b_c {
        fr.mul(&tm1 * var(x, j));
        for &k in image.iter().filter(|&&k| k != j) {
            fr.mul(var(x, j) - var(x, k));
        }
    }
    for &i in &sets.a_c {
        for &k in &image {
            fr.div(var(x, i) - var(x, k));
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            fr.mul(var(x, i) - var(x, j));
            fr.div(var(x, sigma.at(i)) - var(x, sigma.at(j)));
        }
    }
    fr.finish("Phi")
}

fn push_a_m(fr: &mut Fraction, m: usize, x: &[QTScalar]) {
    for i in 1..=m {
        for j in i + 1..=m {
            fr.a_pair(var(x, i), var(x, j));
        }
    }
}

fn push_k_sigma_delta(fr: &mut Fraction, sigma: &Perm, m: usize, x: &[QTScalar]) {
    for i in 1..=m {
        for j in i + 1..=m {
            fr.mul(var(x, sigma.at(i)) - var(x, sigma.at(j)));
        }
    }
}

fn push_a_cross(fr: &mut Fraction, rows: &[usize], cols: &[usize], x: &[QTScalar]) {
    for &i in rows {
        for &j in cols.iter().filter(|&&j| j != i) {
            fr.a_pair(var(x, i), var(x, j));
        }
    }
}

fn t_power(r: usize, n: usize) -> QTScalar {
    let (r, n) = (r as i64, n as i64);
    QTScalar::monomial(0, r * (r + 1 - 2 * n) / 2)
}

/// `C_{J,sigma}` at `x`, with `L = [m+1,N] \ J`.
pub fn coeff_c_at(sigma: &Perm, j: &[usize], m: usize, x: &[QTScalar]) -> Result<QTScalar> {
    let n = sigma.len();
    let l: Vec<usize> = (m + 1..=n).filter(|i| !j.contains(i)).collect();
    let image = sigma.image(&(1..=m).collect::<Vec<_>>());
    let xs = q_shifted(x, j);
    let mut fr = Fraction::new();
    fr.mul(t_power(j.len(), n));
    push_a_m(&mut fr, m, x);
    push_a_cross(&mut fr, j, &l, x);
    push_a_cross(&mut fr, j, &image, &xs);
    push_phi(&mut fr, &SigmaSets::new(sigma, m), &xs);
    push_k_sigma_delta(&mut fr, sigma, m, &xs);
    fr.finish("C")
}

/// `D_{J,sigma}` at `x`; pairs with both indices in `J` are left out of the `J x A_sigma` product.
pub fn coeff_d_at(sigma: &Perm, j: &[usize], m: usize, x: &[QTScalar]) -> Result<QTScalar> {
    let n = sigma.len();
    let sets = SigmaSets::new(sigma, m);
    let sym: Vec<usize> = (m + 1..=n).collect();
    let xs = q_shifted(x, j);
    let mut fr = Fraction::new();
    if sets.b_c.len() % 2 == 1 {
        fr.mul(QTScalar::from_int(-1));
    }
    fr.mul(t_power(j.len(), n));
    push_a_m(&mut fr, m, x);
    let a_rest: Vec<usize> = sets.a.iter().copied().filter(|i| !j.contains(i)).collect();
    push_a_cross(&mut fr, j, &sym, x);
    push_phi(&mut fr, &sets, x);
    push_a_cross(&mut fr, j, &a_rest, &xs);
    push_k_sigma_delta(&mut fr, sigma, m, &xs);
    fr.finish("D")
}

fn plus_point(lam: &SuperPartition) -> Vec<QTScalar> {
    lam.eval_point(Sign::Plus)
        .coords
        .iter()
        .map(|&(a, b)| QTScalar::monomial(a, b))
        .collect()
}

/// `u_Lambda^+(C_{J,sigma})` for a type I certificate.
pub fn coeff_c(lam: &SuperPartition, cert: &StripCertificate) -> Result<QTScalar> {
    coeff_c_at(&cert.sigma, &cert.j, lam.m(), &plus_point(lam))
}

/// `u_Lambda^+(D_{J,sigma})` for a type II certificate.
pub fn coeff_d(lam: &SuperPartition, cert: &StripCertificate) -> Result<QTScalar> {
    coeff_d_at(&cert.sigma, &cert.j, lam.m(), &plus_point(lam))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PieriTerm {
    pub omega: SuperPartition,
    pub certificate: Option<StripCertificate>,
    pub coeff: QTScalar,
}

impl PieriTerm {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "omega": self.omega.to_text(),
            "coeff": self.coeff.to_json(),
        });
        if let Some(c) = &self.certificate {
            v["certificate"] = c.to_json();
        }
        v
    }
}

fn trivial_terms(lam: &SuperPartition, r: usize, variant: Variant) -> Option<Vec<PieriTerm>> {
    if r == 0 {
        return Some(vec![PieriTerm {
            omega: lam.clone(),
            certificate: None,
            coeff: QTScalar::one(),
        }]);
    }
    (r > variant.max_r(lam.m(), lam.n())).then(Vec::new)
}

fn sort_terms(terms: &mut [PieriTerm]) {
    terms.sort_by(|a, b| a.omega.cmp(&b.omega));
}

/// The expansion of `e_r * P_Lambda` from the explicit coefficients.
pub fn pieri_expand(lam: &SuperPartition, r: usize, variant: Variant) -> Result<Vec<PieriTerm>> {
    if let Some(t) = trivial_terms(lam, r, variant) {
        return Ok(t);
    }
    let m = lam.m();
    let dt = vandermonde(VandermondeKind::TDeformed, &(1..=m).collect::<Vec<_>>(), lam.n());
    let u_dt = dt.specialize(&lam.eval_point(Sign::Plus))?;
    if u_dt.is_zero() {
        return Err(Error::Degenerate(format!("u_{lam}^+ of the t-Vandermonde vanishes")));
    }
    let u0_lam = eval_formula(lam, Sign::Plus);
    let prefactor = match variant {
        Variant::Upper => QTScalar::one(),
        Variant::Lower => QTScalar::monomial(r as i64, 0),
    };
    let certs = enumerate_strips(lam, r, variant.strip_type());
    let computed: Result<Vec<Option<PieriTerm>>> = certs
        .into_par_iter()
        .map(|cert| {
            let c = match variant {
                Variant::Upper => coeff_c(lam, &cert)?,
                Variant::Lower => coeff_d(lam, &cert)?,
            };
            if c.is_zero() {
                return Ok(None);
            }
            let ratio = &u0_lam / &eval_formula(&cert.omg, Sign::Plus);
            let coeff = &(&(&c / &u_dt) * &ratio) * &prefactor;
            Ok(Some(PieriTerm {
                omega: cert.omg.clone(),
                certificate: Some(cert),
                coeff,
            }))
        })
        .collect();
    let mut terms: Vec<PieriTerm> = computed?.into_iter().flatten().collect();
    sort_terms(&mut terms);
    Ok(terms)
}

/// The elementary symmetric function that multiplies `P_Lambda` in `variant`.
pub fn pieri_multiplier(m: usize, n: usize, r: usize, variant: Variant) -> Result<XPoly> {
    match variant {
        Variant::Upper => elementary_symmetric(r, m + 1, n, n),
        Variant::Lower => elementary_symmetric(r, 1, m, n),
    }
}

/// The same expansion obtained by multiplying out and solving in the `P` basis.
pub fn pieri_bruteforce(lam: &SuperPartition, r: usize, variant: Variant) -> Result<Vec<PieriTerm>> {
    if let Some(t) = trivial_terms(lam, r, variant) {
        return Ok(t);
    }
    let (m, n) = (lam.m(), lam.n());
    let product = bisym_p(lam)?.poly.try_mul(&pieri_multiplier(m, n, r, variant)?)?;
    let mut terms: Vec<PieriTerm> = expand_in_p_basis(&product, m)?
        .into_iter()
        .map(|(omega, coeff)| PieriTerm {
            omega,
            certificate: None,
            coeff,
        })
        .collect();
    sort_terms(&mut terms);
    Ok(terms)
}

/// Compares the two expansions as sets of `(Omega, coefficient)`.
pub fn same_expansion(a: &[PieriTerm], b: &[PieriTerm]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.omega == y.omega && x.coeff == y.coeff)
}

/// Coset representatives of `S_N / (S_m x S_{m+1,N})`, one per image `sigma([m])`.
fn coset_representatives(m: usize, n: usize) -> Vec<Perm> {
    subsets(&(1..=n).collect::<Vec<_>>(), m)
        .into_iter()
        .map(|head| {
            let tail = (1..=n).filter(|i| !head.contains(i));
            let line: Vec<usize> = head.iter().copied().chain(tail).collect();
            Perm::from_one_line(&line).expect("a rearrangement of 1..n")
        })
        .collect()
}

/// Checks the operator expansion of `e_r(Y) Delta_m^t f` against its explicit right-hand side
/// at `points` random rational points (seeded).
pub fn op_identity_check(m: usize, r: usize, variant: Variant, f: &XPoly, points: usize, seed: u64) -> Result<bool> {
    let n = f.nvars();
    if r == 0 || r > variant.max_r(m, n) {
        return Err(Error::Domain(format!("r = {r} out of range for m = {m}, N = {n}")));
    }
    let g = f.try_mul(&vandermonde(VandermondeKind::TDeformed, &(1..=m).collect::<Vec<_>>(), n))?;
    let lhs = match variant {
        Variant::Upper => apply_e_of_y(r, m + 1, n, &g)?,
        Variant::Lower => apply_e_of_y(r, 1, m, &g)?,
    };
    let js: Vec<Vec<usize>> = match variant {
        Variant::Upper => subsets(&(m + 1..=n).collect::<Vec<_>>(), r),
        Variant::Lower => subsets(&(1..=n).collect::<Vec<_>>(), r),
    };
    let reps = coset_representatives(m, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let x: Vec<QTScalar> = loop {
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(2..10_000)).collect();
            let mut w = v.clone();
            w.sort_unstable();
            w.dedup();
            if w.len() == n {
                break v.into_iter().map(QTScalar::from_int).collect();
            }
        };
        let mut rhs = Vec::new();
        for j in &js {
            let l: Vec<usize> = (m + 1..=n).filter(|i| !j.contains(i)).collect();
            for sigma in &reps {
                let head = sigma.image(&(1..=m).collect::<Vec<_>>());
                if head.iter().any(|i| l.contains(i)) {
                    continue;
                }
                if variant == Variant::Lower && !j.iter().all(|i| head.contains(i)) {
                    continue;
                }
                let c = match variant {
                    Variant::Upper => coeff_c_at(sigma, j, m, &x)?,
                    Variant::Lower => coeff_d_at(sigma, j, m, &x)?,
                };
                if c.is_zero() {
                    continue;
                }
                let shifted = q_shifted(&x, j);
                let y: Vec<QTScalar> = (1..=n).map(|i| shifted[sigma.at(i) - 1].clone()).collect();
                rhs.push(&c * &f.specialize_values(&y)?);
            }
        }
        let rhs = rhs.iter().fold(QTScalar::zero(), |acc, v| &acc + v);
        if lhs.specialize_values(&x)? != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str, n: usize) -> SuperPartition {
        SuperPartition::parse(s, n).unwrap()
    }

    fn s(x: &str) -> QTScalar {
        QTScalar::parse(x).unwrap()
    }

    fn coeff_of(terms: &[PieriTerm], omega: &str) -> QTScalar {
        let n = terms[0].omega.n();
        let o = sp(omega, n);
        terms.iter().find(|t| t.omega == o).map(|t| t.coeff.clone()).unwrap_or_else(QTScalar::zero)
    }

    fn generic_point(n: usize) -> Vec<QTScalar> {
        [3, 7, 11, 19, 29, 41][..n].iter().map(|&v| QTScalar::from_int(v)).collect()
    }

    #[test]
    fn sigma_sets_of_worked_permutation() {
        let sigma = Perm::from_one_line(&[3, 4, 1, 2]).unwrap();
        let sets = SigmaSets::new(&sigma, 2);
        assert!(sets.a.is_empty());
        assert_eq!(sets.a_c, vec![1, 2]);
        assert_eq!(sets.b_c, vec![3, 4]);
        assert_eq!((sets.s, sets.z, sets.d), (2, 0, 1));
    }

    #[test]
    fn phi_trivial_and_worked() {
        let x = generic_point(4);
        let id = Perm::from_one_line(&[2, 1, 4, 3]).unwrap();
        assert_eq!(phi_at(&id, 2, &x).unwrap(), QTScalar::from_int(-1));
        let sigma = Perm::from_one_line(&[3, 4, 1, 2]).unwrap();
        let (x1, x2, x3, x4) = (&x[0], &x[1], &x[2], &x[3]);
        let tm1 = &QTScalar::t() - &QTScalar::one();
        let num = &(&(&(&tm1 * &tm1) * &(x3 * x4)) * &(x1 - x2)) * &(x3 - x4);
        let den = &(&(x1 - x3) * &(x1 - x4)) * &(&(x2 - x3) * &(x2 - x4));
        assert_eq!(phi_at(&sigma, 2, &x).unwrap(), -&(&num / &den));
    }

    #[test]
    fn phi_closed_forms_agree() {
        let x = generic_point(5);
        for m in 1..=3 {
            for sigma in Perm::all(5) {
                assert_eq!(phi_at(&sigma, m, &x).unwrap(), phi_alternative_at(&sigma, m, &x).unwrap());
            }
        }
    }

    #[test]
    fn phi_sign_under_block_permutations() {
        let x = generic_point(4);
        let m = 2;
        let blocks: Vec<Perm> = Perm::all(4).into_iter().filter(|w| w.preserves_blocks(&[(1, 2), (3, 4)])).collect();
        for sigma in Perm::all(4) {
            let base = phi_at(&sigma, m, &x).unwrap();
            for w in &blocks {
                let sign = if inversions_on(w, m).is_multiple_of(2) { base.clone() } else { -&base };
                assert_eq!(phi_at(&sigma.compose(w), m, &x).unwrap(), sign);
            }
        }
    }

    #[test]
    fn c_is_a_coset_function() {
        let x = generic_point(4);
        let blocks: Vec<Perm> = Perm::all(4).into_iter().filter(|w| w.preserves_blocks(&[(1, 2), (3, 4)])).collect();
        for sigma in Perm::all(4).iter().step_by(5) {
            let base = coeff_c_at(sigma, &[3], 2, &x).unwrap();
            for w in &blocks {
                assert_eq!(coeff_c_at(&sigma.compose(w), &[3], 2, &x).unwrap(), base);
            }
        }
    }

    #[test]
    fn upper_worked_example() {
        let terms = pieri_expand(&sp("2,0;1", 5), 2, Variant::Upper).unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(coeff_of(&terms, "1,0;3,1"), s("q*(1-t)/(1-q*t)"));
        assert_eq!(coeff_of(&terms, "2,0;2,1"), s("(1-q)*(1-q*t^2)/(1-q*t)^2"));
        let c = s("-(t+1)*(1-t)*(1-q)*(1-q^2*t^4)/((1-q^2*t^3)*(1-q*t)*(1-q*t^2))");
        assert_eq!(coeff_of(&terms, "2,1;1,1"), c);
        assert_eq!(coeff_of(&terms, "2,0;1,1,1"), s("(1-q*t)*(1-t^3)/((1-t)*(1-q*t^3))"));
    }

    #[test]
    fn lower_worked_example() {
        let terms = pieri_expand(&sp("2,0;1", 5), 2, Variant::Lower).unwrap();
        assert_eq!(terms.len(), 3);
        assert!(coeff_of(&terms, "3,1;1").is_one());
        assert_eq!(coeff_of(&terms, "3,0;1,1"), s("-q*(1+t)*(1-t)/(1-q*t^2)"));
        let c = s("q^3*(1-t)*(1-q^2*t^3)*(1-q*t)/((1-q*t)*(1-q^3*t^3)*(1-q^2*t))");
        assert_eq!(coeff_of(&terms, "1,0;3,1"), c);
    }

    #[test]
    fn out_of_range_and_zero() {
        let lam = sp("2,0;1", 5);
        assert!(pieri_expand(&lam, 9, Variant::Upper).unwrap().is_empty());
        let e0 = pieri_bruteforce(&lam, 0, Variant::Lower).unwrap();
        assert_eq!(e0.len(), 1);
        assert!(e0[0].coeff.is_one());
    }

    #[test]
    fn formula_matches_oracle_small() {
        for (lam, r) in [("1,0;1", 1), ("1;1", 2), ("0;2", 1)] {
            let lam = sp(lam, 4);
            for v in [Variant::Upper, Variant::Lower] {
                if r > v.max_r(lam.m(), 4) {
                    continue;
                }
                let a = pieri_expand(&lam, r, v).unwrap();
                let b = pieri_bruteforce(&lam, r, v).unwrap();
                assert!(same_expansion(&a, &b), "{lam} r={r} {v:?}");
            }
        }
    }

    #[test]
    fn operator_identity_examples() {
        let one = XPoly::one(3);
        assert!(op_identity_check(1, 1, Variant::Upper, &one, 3, 1).unwrap());
        let e1 = elementary_symmetric(1, 2, 3, 3).unwrap();
        assert!(op_identity_check(1, 1, Variant::Upper, &e1, 3, 2).unwrap());
        let f = elementary_symmetric(2, 3, 4, 4).unwrap();
        assert!(op_identity_check(2, 1, Variant::Upper, &f, 3, 3).unwrap());
        assert!(op_identity_check(2, 1, Variant::Lower, &f, 3, 4).unwrap());
    }
}
