//! Invariant suites over bounded families of inputs, each reporting its first counterexample.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::evalsym::{eval_both, inversion_check, symmetry_check};
use crate::hecke::{
    apply_omega, apply_t, apply_t_word, apply_y, e_of_y_symmetric_check, rel_y_check, sym_sum_check, symmetrize,
    SymKind,
};
use crate::macdonald::{bisym_p, bruhat_leq, c_lambda_formula, nonsym_e};
use crate::pieri::{op_identity_check, pieri_bruteforce, pieri_expand, same_expansion, Variant};
use crate::scalars::QTScalar;
use crate::sparts::{compositions, eigenvalues, Sign, SuperPartition};
use crate::xpoly::{subsets, Exps, XPoly};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    Hecke,
    Eigen,
    Symmetry,
    Evaluation,
    Pieri,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Hecke, Suite::Eigen, Suite::Symmetry, Suite::Evaluation, Suite::Pieri];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hecke => "hecke",
            Suite::Eigen => "eigen",
            Suite::Symmetry => "symmetry",
            Suite::Evaluation => "evaluation",
            Suite::Pieri => "pieri",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Size limits for a suite: the number of variables and the maximal degree `|eta|` or `|Lambda^*|`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n: usize,
    pub deg: u32,
}

impl Bounds {
    pub const MAX_N: usize = 6;
    pub const MAX_DEG: u32 = 6;

    pub fn new(n: usize, deg: u32) -> Result<Self> {
        if n == 0 || n > Self::MAX_N || deg > Self::MAX_DEG {
            return Err(Error::Domain(format!(
                "bounds N = {n}, deg = {deg} outside 1 <= N <= {}, deg <= {}",
                Self::MAX_N,
                Self::MAX_DEG
            )));
        }
        Ok(Bounds { n, deg })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckFailure {
    pub check: String,
    pub case: Value,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bounds: Bounds,
    pub checks: usize,
    pub failure: Option<CheckFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "suite": self.suite.name(),
            "N": self.bounds.n,
            "deg": self.bounds.deg,
            "checks": self.checks,
            "passed": self.passed(),
        });
        if let Some(f) = &self.failure {
            v["counterexample"] = json!({ "check": f.check, "case": f.case, "error": f.error });
        }
        v
    }
}

type Check = Box<dyn Fn() -> Result<bool> + Send + Sync>;

struct Case {
    check: &'static str,
    desc: Value,
    run: Check,
}

fn case(check: &'static str, desc: Value, run: impl Fn() -> Result<bool> + Send + Sync + 'static) -> Case {
    Case {
        check,
        desc,
        run: Box::new(run),
    }
}

fn run_cases(suite: Suite, bounds: Bounds, cases: Vec<Case>) -> SuiteReport {
    let checks = cases.len();
    let failure = cases.into_par_iter().find_map_first(|c| {
        let (ok, error) = match (c.run)() {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        (!ok).then(|| CheckFailure {
            check: c.check.to_string(),
            case: c.desc,
            error,
        })
    });
    SuiteReport {
        suite,
        bounds,
        checks,
        failure,
    }
}

/// Runs one suite.
pub fn run_suite(suite: Suite, bounds: Bounds) -> SuiteReport {
    let cases = match suite {
        Suite::Hecke => hecke_cases(bounds),
        Suite::Eigen => eigen_cases(bounds),
        Suite::Symmetry => symmetry_cases(bounds),
        Suite::Evaluation => evaluation_cases(bounds),
        Suite::Pieri => pieri_cases(bounds),
    };
    run_cases(suite, bounds, cases)
}

fn monomials(n: usize, max_deg: u32) -> Vec<Vec<u32>> {
    (0..=max_deg).flat_map(|d| compositions(d, n)).collect()
}

/// A seeded random polynomial symmetric in `x_1..x_m` and in `x_{m+1}..x_N`, of degree at most `deg`.
pub fn random_bisymmetric(m: usize, n: usize, deg: u32, seed: u64) -> XPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = monomials(n, deg);
    let coeffs = [QTScalar::one(), QTScalar::q(), QTScalar::t(), QTScalar::from_int(-2)];
    let mut f = XPoly::zero(n);
    for _ in 0..3 {
        let e = &pool[rng.gen_range(0..pool.len())];
        let c = &coeffs[rng.gen_range(0..coeffs.len())];
        f.add_term(Exps(e.clone()), c.clone());
    }
    let f = if m >= 2 { symmetrize(SymKind::Sym, 1, m, &f) } else { f };
    if m + 1 < n {
        symmetrize(SymKind::Sym, m + 1, n, &f)
    } else {
        f
    }
}

fn hecke_cases(b: Bounds) -> Vec<Case> {
    let n = b.n;
    let mut cases = Vec::new();
    for e in monomials(n, b.deg) {
        let desc = json!({ "N": n, "monomial": e });
        let f = XPoly::x_pow(&e);
        cases.push(case("hecke_relations", desc.clone(), {
            let f = f.clone();
            move || Ok(hecke_relations_hold(&f))
        }));
        cases.push(case("cherednik_relations", desc, move || Ok(cherednik_relations_hold(&f))));
    }
    for m in 0..n {
        for r in 1..=n - m {
            for seed in 0..2u64 {
                let f = random_bisymmetric(m, n, b.deg.min(3), seed + 10 * (m * n + r) as u64);
                let desc = json!({ "N": n, "m": m, "r": r, "f": f.to_text() });
                cases.push(case("rel_y", desc, move || rel_y_check(m, r, &f)));
            }
        }
    }
    for r in 0..=n {
        let f = random_bisymmetric(0, n, b.deg.min(2), 100 + r as u64);
        let desc = json!({ "N": n, "r": r, "f": f.to_text() });
        cases.push(case("e_of_y_symmetric", desc, move || e_of_y_symmetric_check(r, &f)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for r in 1..n {
        for j in subsets(&(1..=n).collect::<Vec<_>>(), r) {
            let x: Vec<QTScalar> = distinct_points(&mut rng, n);
            let desc = json!({ "N": n, "J": j });
            cases.push(case("symmetrized_product", desc, move || sym_sum_check(&j, &x)));
        }
    }
    cases
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<QTScalar> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(2..1000)).collect();
        let mut w = v.clone();
        w.sort_unstable();
        w.dedup();
        if w.len() == n {
            return v.into_iter().map(QTScalar::from_int).collect();
        }
    }
}

fn hecke_relations_hold(f: &XPoly) -> bool {
    let n = f.nvars();
    let t = QTScalar::t();
    let tm1 = &t - &QTScalar::one();
    for i in 1..n {
        let tf = apply_t(i, f);
        if &apply_t(i, &tf) - &tf.scale(&tm1) != f.scale(&t) {
            return false;
        }
        if i + 1 < n && apply_t_word(&[i, i + 1, i], f) != apply_t_word(&[i + 1, i, i + 1], f) {
            return false;
        }
        if (i + 2..n).any(|j| apply_t_word(&[i, j], f) != apply_t_word(&[j, i], f)) {
            return false;
        }
        if i >= 2 && apply_omega(&tf) != apply_t(i - 1, &apply_omega(f)) {
            return false;
        }
    }
    true
}

fn cherednik_relations_hold(f: &XPoly) -> bool {
    let n = f.nvars();
    let tm1 = &QTScalar::t() - &QTScalar::one();
    let ys: Vec<XPoly> = (1..=n).map(|i| apply_y(i, f)).collect();
    for i in 1..=n {
        for j in i + 1..=n {
            if apply_y(i, &ys[j - 1]) != apply_y(j, &ys[i - 1]) {
                return false;
            }
        }
    }
    for i in 1..n {
        let tf = apply_t(i, f);
        if apply_t(i, &ys[i - 1]) != &apply_y(i + 1, &tf) + &ys[i - 1].scale(&tm1) {
            return false;
        }
        if apply_t(i, &ys[i]) != &apply_y(i, &tf) - &ys[i - 1].scale(&tm1) {
            return false;
        }
        for j in (1..=n).filter(|&j| j != i && j != i + 1) {
            if apply_t(i, &ys[j - 1]) != apply_y(j, &tf) {
                return false;
            }
        }
    }
    true
}

/// Checks `Y_i E_eta = eta_bar_i E_eta` for every `i`, and that `E_eta` is `x^eta` plus Bruhat-lower terms.
pub fn eigen_check(eta: &[u32]) -> Result<bool> {
    let e = nonsym_e(eta)?;
    let vals = eigenvalues(eta);
    for (i, v) in vals.iter().enumerate() {
        if apply_y(i + 1, &e.poly) != e.poly.scale(v) {
            return Ok(false);
        }
    }
    if !e.poly.coefficient(eta).is_one() {
        return Ok(false);
    }
    let lower = e.poly.terms().all(|(nu, _)| bruhat_leq(&nu.0, eta));
    Ok(lower)
}

fn eigen_cases(b: Bounds) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=b.n {
        for eta in monomials(n, b.deg) {
            let desc = json!({ "eta": eta });
            cases.push(case("eigen_triangular", desc, move || eigen_check(&eta)));
        }
    }
    cases
}

fn sweep(ms: impl IntoIterator<Item = usize>, n: usize, deg: u32) -> Vec<SuperPartition> {
    ms.into_iter()
        .filter(|&m| m <= n)
        .flat_map(|m| (0..=deg).flat_map(move |d| SuperPartition::all(m, n, d)))
        .collect()
}

fn symmetry_cases(b: Bounds) -> Vec<Case> {
    let mut cases = Vec::new();
    let lams = sweep([1, 2], b.n, b.deg);
    for (i, lam) in lams.iter().enumerate() {
        for omg in lams[i..].iter().filter(|o| o.m() == lam.m()) {
            let desc = json!({ "lam": lam.to_text(), "omega": omg.to_text(), "N": b.n });
            for sign in [Sign::Plus, Sign::Minus] {
                let (l, o) = (lam.clone(), omg.clone());
                cases.push(case("symmetry", desc.clone(), move || symmetry_check(&l, &o, sign)));
            }
            let (l, o) = (lam.clone(), omg.clone());
            cases.push(case("q_inversion", desc.clone(), move || Ok(inversion_check(&l, &o)? && inversion_check(&o, &l)?)));
        }
    }
    cases
}

/// Checks that the dominant coefficient of `P_Lambda` is 1 and its constant is `c_Lambda(t)`.
pub fn normalization_check(lam: &SuperPartition) -> Result<bool> {
    let p = bisym_p(lam)?;
    Ok(p.poly.coefficient(&lam.dominant_exponent()).is_one() && p.c_lam == c_lambda_formula(lam))
}

fn evaluation_cases(b: Bounds) -> Vec<Case> {
    let mut cases = Vec::new();
    for n in 1..=b.n {
        for lam in sweep(0..=n, n, b.deg) {
            let desc = json!({ "lam": lam.to_text(), "N": n });
            let l = lam.clone();
            cases.push(case("normalization", desc.clone(), move || normalization_check(&l)));
            for sign in [Sign::Plus, Sign::Minus] {
                let l = lam.clone();
                cases.push(case("evaluation_formula", desc.clone(), move || eval_both(&l, sign).map(|_| true)));
            }
        }
    }
    cases
}

/// Checks that the explicit Pieri coefficients agree with the brute-force expansion.
pub fn pieri_check(lam: &SuperPartition, r: usize, variant: Variant) -> Result<bool> {
    Ok(same_expansion(&pieri_expand(lam, r, variant)?, &pieri_bruteforce(lam, r, variant)?))
}

fn pieri_cases(b: Bounds) -> Vec<Case> {
    let n = b.n;
    let mut cases = Vec::new();
    for lam in sweep([1, 2], n, b.deg) {
        for r in 1..=2 {
            for variant in [Variant::Upper, Variant::Lower] {
                let desc = json!({ "lam": lam.to_text(), "N": n, "r": r, "variant": format!("{variant:?}") });
                let l = lam.clone();
                cases.push(case("pieri_formula", desc, move || pieri_check(&l, r, variant)));
            }
        }
    }
    for m in (1..=2).filter(|&m| m < n) {
        for r in 1..=2 {
            for variant in [Variant::Upper, Variant::Lower] {
                let max_r = if variant == Variant::Upper { n - m } else { m };
                if r > max_r {
                    continue;
                }
                let f = random_bisymmetric(m, n, b.deg.min(2), (100 * m + 10 * r) as u64);
                let desc = json!({ "m": m, "N": n, "r": r, "variant": format!("{variant:?}"), "f": f.to_text() });
                cases.push(case("operator_expansion", desc, move || op_identity_check(m, r, variant, &f, 2, 11)));
            }
        }
    }
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert!(Bounds::new(0, 2).is_err());
    }

    #[test]
    fn random_bisymmetric_is_bisymmetric() {
        for m in 0..=3 {
            let f = random_bisymmetric(m, 4, 3, 5);
            assert!(crate::macdonald::is_bisymmetric(&f, m), "m={m}");
        }
    }

    #[test]
    fn small_suites_pass() {
        let b = Bounds::new(3, 2).unwrap();
        for s in Suite::ALL {
            let rep = run_suite(s, b);
            assert!(rep.passed(), "{}", rep.to_json());
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn failures_carry_the_case() {
        let cases = vec![
            case("ok", json!(1), || Ok(true)),
            case("bad", json!(2), || Ok(false)),
            case("err", json!(3), || Err(Error::DivisionByZero)),
        ];
        let rep = run_cases(Suite::Hecke, Bounds::new(2, 1).unwrap(), cases);
        let f = rep.failure.unwrap();
        assert_eq!(f.check, "bad");
        assert_eq!(f.case, json!(2));
    }
}
