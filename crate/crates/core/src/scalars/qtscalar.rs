use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::qtpoly::{QTMono, QTPoly};
use crate::error::{Error, Result};

/// An element of `Q(q,t)` as a reduced fraction `num / den`.
///
/// The fraction is reduced over `Z[q,t]` (including integer content) and the
/// leading coefficient of `den` in graded-lex order is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QTScalar {
    num: QTPoly,
    den: QTPoly,
}

impl Default for QTScalar {
    fn default() -> Self {
        QTScalar::zero()
    }
}

impl QTScalar {
    pub fn zero() -> Self {
        QTScalar {
            num: QTPoly::zero(),
            den: QTPoly::one(),
        }
    }

    pub fn one() -> Self {
        QTScalar::from_poly(QTPoly::one())
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        QTScalar::from_poly(QTPoly::constant(c))
    }

    pub fn from_poly(p: QTPoly) -> Self {
        QTScalar {
            num: p,
            den: QTPoly::one(),
        }
    }

    pub fn q() -> Self {
        QTScalar::monomial(1, 0)
    }

    pub fn t() -> Self {
        QTScalar::monomial(0, 1)
    }

    /// `q^a t^b` for arbitrary integer exponents.
    pub fn monomial(a: i64, b: i64) -> Self {
        let (na, da) = split_exp(a);
        let (nb, db) = split_exp(b);
        QTScalar {
            num: QTPoly::monomial(1, QTMono::new(na, nb)),
            den: QTPoly::monomial(1, QTMono::new(da, db)),
        }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: QTPoly, den: QTPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QTPoly, den: QTPoly) -> Self {
        if num.is_zero() {
            return QTScalar::zero();
        }
        let g = QTPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        QTScalar { num, den }
    }

    pub fn numer(&self) -> &QTPoly {
        &self.num
    }

    pub fn denom(&self) -> &QTPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a constant, i.e. the value lies in `Q[q,t]`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Multiplies by `q^a t^b`; only monomial factors can newly cancel.
    pub fn mul_monomial(&self, a: i64, b: i64) -> Self {
        if self.is_zero() || (a == 0 && b == 0) {
            return self.clone();
        }
        let (na, da) = split_exp(a);
        let (nb, db) = split_exp(b);
        let num = self.num.mul_term(QTMono::new(na, nb), &BigInt::one());
        let den = self.den.mul_term(QTMono::new(da, db), &BigInt::one());
        let mn = num.min_mono();
        let md = den.min_mono();
        let c = QTMono::new(mn.q.min(md.q), mn.t.min(md.t));
        if c == QTMono::ONE {
            return QTScalar { num, den };
        }
        let c = QTPoly::monomial(1, c);
        QTScalar {
            num: num.div_exact(&c).unwrap(),
            den: den.div_exact(&c).unwrap(),
        }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            num = num.neg();
            den = den.neg();
        }
        Ok(QTScalar { num, den })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut base = self.clone();
        let mut acc = QTScalar::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The image under `(q, t) -> (1/q, 1/t)`.
    pub fn invert_qt(&self) -> Self {
        if self.is_zero() {
            return QTScalar::zero();
        }
        let (n, nq, nt) = self.num.reversed();
        let (d, dq, dt) = self.den.reversed();
        let base = QTScalar::reduce(n, d);
        base.mul_monomial(dq as i64 - nq as i64, dt as i64 - nt as i64)
    }

    /// Substitutes `q` and `t` by integers; `None` when the denominator vanishes.
    pub fn eval_int(&self, q: i64, t: i64) -> Option<(BigInt, BigInt)> {
        let (q, t) = (BigInt::from(q), BigInt::from(t));
        let d = self.den.eval_int(&q, &t);
        if d.is_zero() {
            return None;
        }
        Some((self.num.eval_int(&q, &t), d))
    }

    /// Parses expressions such as `q*(1-t)/(1-q*t)` or `-q^3 t^-2`.
    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_scalar(s)
    }

    /// `{"num": [[c, a, b], ...], "den": [...]}` with graded-lex ascending terms.
    pub fn to_json(&self) -> Value {
        json!({
            "num": poly_json(&self.num),
            "den": poly_json(&self.den),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let num = poly_from_json(v.get("num").ok_or_else(|| Error::Parse("missing num".into()))?)?;
        let den = poly_from_json(v.get("den").ok_or_else(|| Error::Parse("missing den".into()))?)?;
        QTScalar::new(num, den)
    }

    pub fn to_latex(&self) -> String {
        super::render::scalar_latex(self)
    }

    pub fn to_text(&self) -> String {
        super::render::scalar_text(self)
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return QTScalar::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = QTPoly::gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            return QTScalar::normalize_sign(num, den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return QTScalar::zero();
        }
        let h = QTPoly::gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        QTScalar::normalize_sign(num, b1.mul(&d1).mul(&g))
    }

    fn normalize_sign(num: QTPoly, den: QTPoly) -> Self {
        if num.is_zero() {
            return QTScalar::zero();
        }
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            QTScalar {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            QTScalar { num, den }
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return QTScalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let g1 = QTPoly::gcd(&self.num, &other.den);
        let g2 = QTPoly::gcd(&other.num, &self.den);
        let a = cancel(&self.num, &g1);
        let d = cancel(&other.den, &g1);
        let c = cancel(&other.num, &g2);
        let b = cancel(&self.den, &g2);
        QTScalar::normalize_sign(a.mul(&c), b.mul(&d))
    }
}

fn cancel(p: &QTPoly, g: &QTPoly) -> QTPoly {
    if g.is_one() {
        p.clone()
    } else {
        p.div_exact(g).unwrap()
    }
}

fn split_exp(a: i64) -> (u32, u32) {
    if a >= 0 {
        (a as u32, 0)
    } else {
        (0, (-a) as u32)
    }
}

fn poly_json(p: &QTPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!([c.to_string(), m.q, m.t]))
            .collect(),
    )
}

fn poly_from_json(v: &Value) -> Result<QTPoly> {
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected term array".into()))?;
    let mut terms = Vec::with_capacity(arr.len());
    for t in arr {
        let bad = || Error::Parse(format!("bad term {t}"));
        let t = t.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
        let c: BigInt = match &t[0] {
            Value::String(s) => s.parse().map_err(|_| bad())?,
            Value::Number(n) => BigInt::from(n.as_i64().ok_or_else(bad)?),
            _ => return Err(bad()),
        };
        let a = t[1].as_u64().ok_or_else(bad)? as u32;
        let b = t[2].as_u64().ok_or_else(bad)? as u32;
        terms.push((c, a, b));
    }
    Ok(QTPoly::from_terms(terms))
}

impl fmt::Debug for QTScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for QTScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl From<i64> for QTScalar {
    fn from(c: i64) -> Self {
        QTScalar::from_int(c)
    }
}

impl From<QTPoly> for QTScalar {
    fn from(p: QTPoly) -> Self {
        QTScalar::from_poly(p)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&QTScalar> for &QTScalar {
            type Output = QTScalar;
            fn $m(self, rhs: &QTScalar) -> QTScalar {
                let f: fn(&QTScalar, &QTScalar) -> QTScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<QTScalar> for QTScalar {
            type Output = QTScalar;
            fn $m(self, rhs: QTScalar) -> QTScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QTScalar> for QTScalar {
            type Output = QTScalar;
            fn $m(self, rhs: &QTScalar) -> QTScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<QTScalar> for &QTScalar {
            type Output = QTScalar;
            fn $m(self, rhs: QTScalar) -> QTScalar {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b));
binop!(Sub, sub, |a, b| a.add_impl(&-b));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.checked_div(b).expect("division by zero"));

impl Neg for &QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        QTScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for QTScalar {
    type Output = QTScalar;
    fn neg(self) -> QTScalar {
        -&self
    }
}

impl AddAssign<&QTScalar> for QTScalar {
    fn add_assign(&mut self, rhs: &QTScalar) {
        *self = self.add_impl(rhs);
    }
}

impl SubAssign<&QTScalar> for QTScalar {
    fn sub_assign(&mut self, rhs: &QTScalar) {
        *self = self.add_impl(&-rhs);
    }
}

impl MulAssign<&QTScalar> for QTScalar {
    fn mul_assign(&mut self, rhs: &QTScalar) {
        *self = self.mul_impl(rhs);
    }
}

impl Sum for QTScalar {
    fn sum<I: Iterator<Item = QTScalar>>(iter: I) -> Self {
        iter.fold(QTScalar::zero(), |a, b| a + b)
    }
}

impl Product for QTScalar {
    fn product<I: Iterator<Item = QTScalar>>(iter: I) -> Self {
        iter.fold(QTScalar::one(), |a, b| a * b)
    }
}

impl Zero for QTScalar {
    fn zero() -> Self {
        QTScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QTScalar::is_zero(self)
    }
}

impl One for QTScalar {
    fn one() -> Self {
        QTScalar::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> QTScalar {
        QTScalar::parse(x).unwrap()
    }

    #[test]
    fn common_denominator() {
        assert_eq!(s("q/(1-t)") + s("q*t/(1-t)"), s("q*(1+t)/(1-t)"));
    }

    #[test]
    fn self_division_is_one() {
        let a = s("(1-q*t^2)/(3-q)");
        assert!((&a / &a).is_one());
    }

    #[test]
    fn gcd_cancellation() {
        let a = s("(1-q^2)/(1-q)");
        assert_eq!(a, s("1+q"));
        assert!(a.is_polynomial());
    }

    #[test]
    fn canonical_denominator_sign() {
        let a = s("1/(1-q*t)");
        let (lm, lc) = a.denom().leading().unwrap();
        assert_eq!(*lm, QTMono::new(1, 1));
        assert!(lc.is_positive());
        assert_eq!(a.to_latex(), "\\frac{1}{1-qt}");
    }

    #[test]
    fn integer_content_is_reduced() {
        let a = QTScalar::new(QTPoly::from_terms([(2, 0, 0), (-2, 1, 0)]), QTPoly::from_terms([(4, 0, 1)])).unwrap();
        assert_eq!(a, s("(1-q)/(2*t)"));
        assert_eq!(a.denom(), &QTPoly::from_terms([(2, 0, 1)]));
    }

    #[test]
    fn monomials_with_negative_exponents() {
        assert!(QTScalar::monomial(0, 0).is_one());
        assert_eq!(QTScalar::monomial(3, 0), s("q^3"));
        let m = QTScalar::monomial(0, -5);
        assert_eq!(m.denom(), &QTPoly::from_terms([(1, 0, 5)]));
        assert!((m * QTScalar::monomial(0, 5)).is_one());
    }

    #[test]
    fn invert_qt_involution() {
        let a = s("q*(1-t)/(1-q*t^3)");
        assert_eq!(a.invert_qt(), s("(1-1/t)/(q*(1-1/(q*t^3)))"));
        assert_eq!(a.invert_qt().invert_qt(), a);
    }

    #[test]
    fn json_round_trip() {
        let a = s("-q^2*(1-t)/(7-q*t)");
        let v = a.to_json();
        assert_eq!(QTScalar::from_json(&v).unwrap(), a);
        assert_eq!(QTScalar::from_json(&QTScalar::zero().to_json()).unwrap(), QTScalar::zero());
    }

    #[test]
    fn division_by_zero_errors() {
        assert_eq!(s("q").checked_div(&QTScalar::zero()), Err(Error::DivisionByZero));
        assert!(QTScalar::new(QTPoly::one(), QTPoly::zero()).is_err());
    }
}
