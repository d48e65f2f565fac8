//! Evaluation maps `u_Lambda^+-`, their closed product formulas at `Lambda_0 = (delta_m; )`,
//! and the evaluation symmetry between two superpartitions.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::macdonald::bisym_p;
use crate::perm::Perm;
use crate::scalars::QTScalar;
use crate::sparts::{Sign, SuperPartition};
use crate::xpoly::XPoly;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Via {
    Substitution,
    Formula,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationResult {
    pub lam: SuperPartition,
    pub sign: Sign,
    pub value: QTScalar,
    pub via: Via,
}

impl EvaluationResult {
    pub fn to_json(&self) -> Value {
        json!({
            "lam": self.lam.to_text(),
            "N": self.lam.n(),
            "sign": match self.sign { Sign::Plus => "+", Sign::Minus => "-" },
            "value": self.value.to_json(),
            "via": match self.via { Via::Substitution => "substitution", Via::Formula => "formula" },
        })
    }
}

/// `u_Lambda^sign(f)`, using the minimal sorting permutation.
pub fn evaluate(lam: &SuperPartition, sign: Sign, f: &XPoly) -> Result<QTScalar> {
    f.specialize(&lam.eval_point(sign))
}

/// Same as [`evaluate`] but with an arbitrary `sigma` for which `(Lambda, sigma)` is a superevaluation.
pub fn evaluate_with(lam: &SuperPartition, sign: Sign, sigma: &Perm, f: &XPoly) -> Result<QTScalar> {
    if !lam.is_superevaluation(sigma) {
        return Err(Error::Domain(format!("({lam}, {sigma:?}) does not generate a superevaluation")));
    }
    f.specialize(&lam.eval_point_with(sign, sigma))
}

fn one_minus(a: i64, b: i64) -> QTScalar {
    &QTScalar::one() - &QTScalar::monomial(a, b)
}

/// The closed product for `u_{Lambda_0}^sign(P_Lambda)`; no polynomial is built.
pub fn eval_formula(lam: &SuperPartition, sign: Sign) -> QTScalar {
    let n = lam.n() as i64;
    let m = lam.m() as i64;
    let h = lam.hook_data();
    let t_exp = h.n_s + h.n_conj_anti_skew;
    let mut num = Vec::with_capacity(h.s_cells.len() + 1);
    let mut den = Vec::with_capacity(h.b_cells.len());
    match sign {
        Sign::Minus => {
            num.push(QTScalar::monomial(h.n_anti_skew - (m - 1) * h.anti_skew_size, t_exp));
            for &(i, j) in &h.s_cells {
                num.push(one_minus(j as i64 - 1, n - i as i64 + 1));
            }
            for &(_, _, arm, leg) in &h.b_cells {
                den.push(one_minus(arm, leg + 1));
            }
        }
        Sign::Plus => {
            num.push(QTScalar::monomial(m * h.anti_skew_size - h.n_anti_skew, -t_exp));
            for &(i, j) in &h.s_cells {
                num.push(one_minus(1 - j as i64, i as i64 - n - 1));
            }
            for &(_, _, arm, leg) in &h.b_cells {
                den.push(one_minus(-arm, -leg - 1));
            }
        }
    }
    let num = num.iter().fold(QTScalar::one(), |acc, x| &acc * x);
    let den = den.iter().fold(QTScalar::one(), |acc, x| &acc * x);
    &num / &den
}

/// Both routes for `u_{Lambda_0}^sign(P_Lambda)`; errors if they disagree.
pub fn eval_both(lam: &SuperPartition, sign: Sign) -> Result<(EvaluationResult, EvaluationResult)> {
    let p = bisym_p(lam)?;
    let lam0 = SuperPartition::lambda0(lam.m(), lam.n());
    let direct = evaluate(&lam0, sign, &p.poly)?;
    let closed = eval_formula(lam, sign);
    if direct != closed {
        return Err(Error::Inconsistent(format!(
            "u_0({lam}) by substitution is {direct}, by formula {closed}"
        )));
    }
    let wrap = |value, via| EvaluationResult {
        lam: lam.clone(),
        sign,
        value,
        via,
    };
    Ok((wrap(direct, Via::Substitution), wrap(closed, Via::Formula)))
}

/// `u_Omega^sign(P_Lambda) / u_{Lambda_0}^sign(P_Lambda)`.
pub fn normalized_evaluation(lam: &SuperPartition, omg: &SuperPartition, sign: Sign) -> Result<QTScalar> {
    let p = bisym_p(lam)?;
    let lam0 = SuperPartition::lambda0(lam.m(), lam.n());
    let norm = evaluate(&lam0, sign, &p.poly)?;
    if norm.is_zero() {
        return Err(Error::Degenerate(format!("u_0^{sign:?}(P_{lam}) vanishes")));
    }
    Ok(&evaluate(omg, sign, &p.poly)? / &norm)
}

/// Checks `u_Omega(P~_Lambda) = u_Lambda(P~_Omega)`.
pub fn symmetry_check(lam: &SuperPartition, omg: &SuperPartition, sign: Sign) -> Result<bool> {
    if lam.m() != omg.m() || lam.n() != omg.n() {
        return Err(Error::Domain(format!("{lam} and {omg} differ in m or N")));
    }
    Ok(normalized_evaluation(lam, omg, sign)? == normalized_evaluation(omg, lam, sign)?)
}

/// Checks `u_Omega^-(P_Lambda)|_{q,t -> 1/q,1/t} = q^{m(m-1)/2 - |Lambda^a|} u_Omega^+(P_Lambda)`.
pub fn inversion_check(lam: &SuperPartition, omg: &SuperPartition) -> Result<bool> {
    let p = bisym_p(lam)?;
    let minus = evaluate(omg, Sign::Minus, &p.poly)?.invert_qt();
    let m = lam.m() as i64;
    let anti: i64 = lam.anti().iter().map(|&x| x as i64).sum();
    let plus = evaluate(omg, Sign::Plus, &p.poly)?.mul_monomial(m * (m - 1) / 2 - anti, 0);
    Ok(minus == plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xpoly::{vandermonde, VandermondeKind};

    fn sp(s: &str, n: usize) -> SuperPartition {
        SuperPartition::parse(s, n).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let n = 4;
        let x = XPoly::x_pow(&[1; 4]);
        let empty = sp(";", n);
        assert_eq!(evaluate(&empty, Sign::Minus, &x).unwrap(), QTScalar::monomial(0, 6));
        for sign in [Sign::Plus, Sign::Minus] {
            assert!(evaluate(&sp("2,0;1", 5), sign, &XPoly::one(5)).unwrap().is_one());
        }
        let dt = vandermonde(VandermondeKind::TDeformed, &[1, 2], 3);
        let want = &QTScalar::monomial(3, 1) - &QTScalar::monomial(1, -2);
        assert_eq!(evaluate(&sp("2,0;1", 3), Sign::Plus, &dt).unwrap(), want);
    }

    #[test]
    fn trivial_formula() {
        for n in 1..=4 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(eval_formula(&sp("0;", n), sign).is_one());
            }
        }
    }

    #[test]
    fn formula_matches_substitution() {
        for sign in [Sign::Plus, Sign::Minus] {
            eval_both(&sp("2,0;1", 4), sign).unwrap();
            eval_both(&sp("1;2,1", 4), sign).unwrap();
            eval_both(&sp(";2,1", 3), sign).unwrap();
        }
    }

    #[test]
    fn symmetry_examples() {
        let a = sp("1,0;", 4);
        assert!(symmetry_check(&a, &a, Sign::Minus).unwrap());
        assert!(symmetry_check(&a, &sp("2,0;", 4), Sign::Minus).unwrap());
        assert!(symmetry_check(&sp("2,0;1", 4), &sp("1,0;2", 4), Sign::Plus).unwrap());
    }

    #[test]
    fn inversion_relation() {
        let lam = sp("2,0;1", 4);
        for omg in [sp("1,0;", 4), sp("1,0;2", 4), lam.clone()] {
            assert!(inversion_check(&lam, &omg).unwrap());
        }
    }

    #[test]
    fn other_superevaluation_permutations() {
        let lam = sp("1,0;1,1", 4);
        let p = bisym_p(&lam).unwrap();
        let w = lam.sorting_permutation();
        for sign in [Sign::Plus, Sign::Minus] {
            let base = evaluate(&lam, sign, &p.poly).unwrap();
            for sigma in Perm::all(4).into_iter().filter(|s| lam.is_superevaluation(s)) {
                assert_eq!(evaluate_with(&lam, sign, &sigma, &p.poly).unwrap(), base, "{sigma:?} vs {w:?}");
            }
        }
    }
}
