//! Sparse polynomials in `x_1, ..., x_N` over `Q(q,t)`.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalars::QTScalar;

/// Exponent vector, ordered graded-lexicographically (total degree, then lex with `x_1` largest).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exps(pub Vec<u32>);

impl Exps {
    pub fn zero(n: usize) -> Self {
        Exps(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Exps) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn sub(&self, other: &Exps) -> Exps {
        Exps(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn add(&self, other: &Exps) -> Exps {
        Exps(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Substitution point `x_i -> q^{a_i} t^{b_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalPoint {
    pub coords: Vec<(i64, i64)>,
}

impl EvalPoint {
    pub fn new(coords: Vec<(i64, i64)>) -> Self {
        EvalPoint { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// The value of `x_i` (one-based) as a scalar.
    pub fn value(&self, i: usize) -> QTScalar {
        let (a, b) = self.coords[i - 1];
        QTScalar::monomial(a, b)
    }

    /// The point with `x_i` replaced by `q x_i` for every `i` in `set`.
    pub fn q_shifted(&self, set: &[usize]) -> EvalPoint {
        let mut p = self.clone();
        for &i in set {
            p.coords[i - 1].0 += 1;
        }
        p
    }
}

/// Which Vandermonde product to build.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VandermondeKind {
    Plain,
    TDeformed,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XPoly {
    n: usize,
    terms: BTreeMap<Exps, QTScalar>,
}

impl XPoly {
    pub fn zero(n: usize) -> Self {
        XPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, QTScalar::one())
    }

    pub fn constant(n: usize, c: QTScalar) -> Self {
        Self::monomial(Exps::zero(n), c)
    }

    pub fn monomial(e: Exps, c: QTScalar) -> Self {
        let n = e.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        XPoly { n, terms }
    }

    /// `x^e` with coefficient one.
    pub fn x_pow(e: &[u32]) -> Self {
        Self::monomial(Exps(e.to_vec()), QTScalar::one())
    }

    /// The variable `x_i` (one-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self::x_pow(&e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, QTScalar)>>(n: usize, it: I) -> Self {
        let mut p = XPoly::zero(n);
        for (e, c) in it {
            assert_eq!(e.0.len(), n, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exps, &QTScalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exps, QTScalar)> {
        self.terms.into_iter()
    }

    pub fn leading(&self) -> Option<(&Exps, &QTScalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exps::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Exps::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, e: Exps, c: QTScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Sums `(exponent, coefficient)` pairs, grouping equal exponents before adding scalars.
    pub fn collect<I: IntoIterator<Item = (Exps, QTScalar)>>(n: usize, it: I) -> Self {
        let mut groups: HashMap<Exps, Vec<QTScalar>> = HashMap::new();
        for (e, c) in it {
            if !c.is_zero() {
                groups.entry(e).or_default().push(c);
            }
        }
        let terms = groups
            .into_iter()
            .filter_map(|(e, cs)| {
                let s = sum_scalars(cs);
                (!s.is_zero()).then_some((e, s))
            })
            .collect();
        XPoly { n, terms }
    }

    pub fn coefficient(&self, e: &[u32]) -> QTScalar {
        self.terms.get(&Exps(e.to_vec())).cloned().unwrap_or_default()
    }

    fn check_shape(&self, other: &XPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Shape {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &XPoly) -> Result<XPoly> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &XPoly) -> Result<XPoly> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &XPoly) -> Result<XPoly> {
        self.check_shape(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(XPoly::zero(self.n));
        }
        let pairs = self.terms.iter().flat_map(|(ea, ca)| {
            other.terms.iter().map(move |(eb, cb)| (ea.add(eb), ca * cb))
        });
        Ok(XPoly::collect(self.n, pairs))
    }

    pub fn scale(&self, c: &QTScalar) -> XPoly {
        if c.is_zero() {
            return XPoly::zero(self.n);
        }
        if c.is_one() {
            return self.clone();
        }
        XPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_exps(&self, m: &Exps) -> XPoly {
        XPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, v)| (e.add(m), v.clone())).collect(),
        }
    }

    /// `K_sigma f = f(x_{sigma(1)}, ..., x_{sigma(N)})`.
    pub fn permute_vars(&self, sigma: &Perm) -> XPoly {
        assert_eq!(sigma.len(), self.n, "permutation size");
        XPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exps(sigma.act(&e.0)), c.clone()))
                .collect(),
        }
    }

    /// `tau_J f`: every `x_i` with `i` in `J` (one-based) is replaced by `q x_i`.
    pub fn q_shift(&self, set: &[usize]) -> XPoly {
        XPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let k: i64 = set.iter().map(|&i| e.0[i - 1] as i64).sum();
                    (e.clone(), c.mul_monomial(k, 0))
                })
                .collect(),
        }
    }

    /// Exact division by `g` using graded-lex multivariate division.
    pub fn exact_div(&self, g: &XPoly) -> Result<XPoly> {
        self.check_shape(g)?;
        let (lg, lc) = g.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = lc.inv();
        let rest: Vec<(&Exps, &QTScalar)> = g.terms.iter().rev().skip(1).collect();
        let mut work = self.terms.clone();
        let mut quot = XPoly::zero(self.n);
        let mut rem = XPoly::zero(self.n);
        while let Some((e, c)) = work.pop_last() {
            if !lg.divides(&e) {
                rem.terms.insert(e, c);
                continue;
            }
            let qe = e.sub(lg);
            let qc = &c * &lc_inv;
            for (ge, gc) in &rest {
                let key = qe.add(ge);
                let delta = -(&qc * *gc);
                match work.entry(key) {
                    Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    Entry::Occupied(mut o) => {
                        let s = o.get() + &delta;
                        if s.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = s;
                        }
                    }
                }
            }
            quot.terms.insert(qe, qc);
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible {
                terms: rem.len(),
                remainder: rem.to_text(),
            })
        }
    }

    /// Substitutes `x_i -> q^{a_i} t^{b_i}`.
    pub fn specialize(&self, p: &EvalPoint) -> Result<QTScalar> {
        if p.len() != self.n {
            return Err(Error::Shape {
                expected: self.n,
                found: p.len(),
            });
        }
        let mut groups: HashMap<(i64, i64), Vec<QTScalar>> = HashMap::new();
        for (e, c) in &self.terms {
            let mut a = 0i64;
            let mut b = 0i64;
            for (k, &(qa, tb)) in e.0.iter().zip(&p.coords) {
                a += *k as i64 * qa;
                b += *k as i64 * tb;
            }
            groups.entry((a, b)).or_default().push(c.clone());
        }
        let parts: Vec<QTScalar> = groups
            .into_iter()
            .map(|((a, b), cs)| sum_scalars(cs).mul_monomial(a, b))
            .collect();
        Ok(sum_scalars(parts))
    }

    /// Substitutes arbitrary scalar values for the variables.
    pub fn specialize_values(&self, vals: &[QTScalar]) -> Result<QTScalar> {
        if vals.len() != self.n {
            return Err(Error::Shape {
                expected: self.n,
                found: vals.len(),
            });
        }
        let mut pows: Vec<Vec<QTScalar>> = vals.iter().map(|v| vec![QTScalar::one(), v.clone()]).collect();
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let mut acc = c.clone();
            for (i, &k) in e.0.iter().enumerate() {
                let k = k as usize;
                while pows[i].len() <= k {
                    let next = pows[i].last().unwrap() * &vals[i];
                    pows[i].push(next);
                }
                if k > 0 {
                    acc = &acc * &pows[i][k];
                }
            }
            out.push(acc);
        }
        Ok(sum_scalars(out))
    }

    pub fn map_coeffs(&self, f: impl Fn(&QTScalar) -> QTScalar) -> XPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (e.clone(), v))
            })
            .collect();
        XPoly { n: self.n, terms }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "terms": self.terms.iter().map(|(e, c)| json!({"x": e.0, "coeff": c.to_json()})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<XPoly> {
        let n = v
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing N".into()))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        let mut p = XPoly::zero(n);
        for t in terms {
            let x: Vec<u32> = t
                .get("x")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("missing x".into()))?
                .iter()
                .map(|v| v.as_u64().map(|k| k as u32))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("bad exponent".into()))?;
            if x.len() != n {
                return Err(Error::Shape {
                    expected: n,
                    found: x.len(),
                });
            }
            let c = QTScalar::from_json(t.get("coeff").ok_or_else(|| Error::Parse("missing coeff".into()))?)?;
            p.add_term(Exps(x), c);
        }
        Ok(p)
    }

    pub fn to_text(&self) -> String {
        render(self, false)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

/// Sums scalars pairwise, as a balanced tree.
pub fn sum_scalars(mut v: Vec<QTScalar>) -> QTScalar {
    if v.is_empty() {
        return QTScalar::zero();
    }
    v.sort_by_key(|a| a.denom().len());
    let mut by_den: HashMap<crate::scalars::QTPoly, Vec<QTScalar>> = HashMap::new();
    for s in v {
        by_den.entry(s.denom().clone()).or_default().push(s);
    }
    let mut level: Vec<QTScalar> = by_den
        .into_iter()
        .map(|(d, group)| {
            let num = group
                .iter()
                .fold(crate::scalars::QTPoly::zero(), |acc, s| acc.add(s.numer()));
            QTScalar::new(num, d).unwrap()
        })
        .collect();
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        level = next;
    }
    level.pop().unwrap()
}

fn render(p: &XPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<String> = Vec::new();
    for (e, c) in p.terms() {
        let mono: Vec<String> = e
            .0
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| match (latex, k) {
                (true, 1) => format!("x_{{{}}}", i + 1),
                (true, k) => format!("x_{{{}}}^{{{}}}", i + 1, k),
                (false, 1) => format!("x{}", i + 1),
                (false, k) => format!("x{}^{}", i + 1, k),
            })
            .collect();
        let mono = if latex { mono.join(" ") } else { mono.join("*") };
        let coeff = if latex { c.to_latex() } else { c.to_text() };
        let needs_paren = !latex && (coeff.contains(" + ") || coeff.contains(" - ") || coeff.contains('/'));
        let term = match (mono.is_empty(), coeff.as_str()) {
            (true, _) => coeff.clone(),
            (false, "1") => mono,
            (false, "-1") => format!("-{mono}"),
            (false, _) if latex => format!("{coeff} {mono}"),
            (false, _) if needs_paren => format!("({coeff})*{mono}"),
            (false, _) => format!("{coeff}*{mono}"),
        };
        parts.push(term);
    }
    parts.join(" + ")
}

impl fmt::Debug for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &XPoly {
    type Output = XPoly;
    fn add(self, rhs: &XPoly) -> XPoly {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl Sub for &XPoly {
    type Output = XPoly;
    fn sub(self, rhs: &XPoly) -> XPoly {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl Mul for &XPoly {
    type Output = XPoly;
    fn mul(self, rhs: &XPoly) -> XPoly {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl Neg for &XPoly {
    type Output = XPoly;
    fn neg(self) -> XPoly {
        self.scale(&QTScalar::from_int(-1))
    }
}

/// `e_r` in the variables `x_a, ..., x_b` (one-based, inclusive).
pub fn elementary_symmetric(r: usize, a: usize, b: usize, n: usize) -> Result<XPoly> {
    if a == 0 || b > n || (a > b && r > 0) || (a <= b && r > b - a + 1) {
        return Err(Error::Domain(format!("e_{r} on [{a},{b}] with N = {n}")));
    }
    let vars: Vec<usize> = if a <= b { (a..=b).collect() } else { Vec::new() };
    let mut out = XPoly::zero(n);
    for subset in subsets(&vars, r) {
        let mut e = vec![0; n];
        for i in subset {
            e[i - 1] = 1;
        }
        out.add_term(Exps(e), QTScalar::one());
    }
    Ok(out)
}

/// All `k`-element subsets of `items`, each in increasing order, in lexicographic order.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// `prod_{j<k} (x_{i_j} - x_{i_k})` or `prod_{j<k} (t x_{i_j} - x_{i_k})` over the ordered index list.
pub fn vandermonde(kind: VandermondeKind, idx: &[usize], n: usize) -> XPoly {
    let tc = match kind {
        VandermondeKind::Plain => QTScalar::one(),
        VandermondeKind::TDeformed => QTScalar::t(),
    };
    let mut out = XPoly::one(n);
    for (j, &a) in idx.iter().enumerate() {
        for &b in &idx[j + 1..] {
            let f = &XPoly::var(n, a).scale(&tc) - &XPoly::var(n, b);
            out = &out * &f;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> XPoly {
        XPoly::var(n, i)
    }

    #[test]
    fn ring_examples() {
        let s = &x(2, 1) + &x(2, 2);
        let d = &x(2, 1) - &x(2, 2);
        assert_eq!(&s * &d, &XPoly::x_pow(&[2, 0]) - &XPoly::x_pow(&[0, 2]));
        assert!((&s * &XPoly::zero(2)).is_zero());
        assert!(x(2, 1).try_add(&x(3, 1)).is_err());
    }

    #[test]
    fn permutation_examples() {
        let s12 = Perm::from_one_line(&[2, 1]).unwrap();
        assert_eq!(x(2, 1).permute_vars(&s12), x(2, 2));
        let sigma = Perm::from_one_line(&[3, 1, 2]).unwrap();
        assert_eq!(XPoly::x_pow(&[2, 0, 1]).permute_vars(&sigma), XPoly::x_pow(&[0, 1, 2]));
    }

    #[test]
    fn q_shift_examples() {
        assert_eq!(x(2, 1).q_shift(&[1]), x(2, 1).scale(&QTScalar::q()));
        let f = XPoly::x_pow(&[1, 2]);
        assert_eq!(f.q_shift(&[]), f);
        assert_eq!(f.q_shift(&[1, 2]), f.scale(&QTScalar::monomial(3, 0)));
    }

    #[test]
    fn exact_division_examples() {
        let n = 3;
        let f = &XPoly::x_pow(&[2, 0, 0]) - &XPoly::x_pow(&[0, 2, 0]);
        assert_eq!(f.exact_div(&(&x(n, 1) - &x(n, 2))).unwrap(), &x(n, 1) + &x(n, 2));
        assert_eq!(f.exact_div(&XPoly::one(n)).unwrap(), f);
        let t = QTScalar::t();
        let a = &x(n, 1).scale(&t) - &x(n, 2);
        let b = &x(n, 1).scale(&t) - &x(n, 3);
        let c = &x(n, 2).scale(&t) - &x(n, 3);
        let prod = &(&a * &b) * &c;
        assert_eq!(prod.exact_div(&a).unwrap(), &b * &c);
        assert!(matches!(x(n, 1).exact_div(&x(n, 2)), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn specialization_examples() {
        let f = &x(2, 1) + &x(2, 2);
        let p = EvalPoint::new(vec![(0, 0), (0, 1)]);
        assert_eq!(f.specialize(&p).unwrap(), QTScalar::parse("1+t").unwrap());
        assert!(XPoly::one(2).specialize(&p).unwrap().is_one());
        let g = XPoly::x_pow(&[1, 1]);
        let p2 = EvalPoint::new(vec![(1, 0), (0, 1)]);
        assert_eq!(g.specialize(&p2).unwrap(), QTScalar::parse("q*t").unwrap());
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary_symmetric(0, 1, 3, 3).unwrap(), XPoly::one(3));
        assert_eq!(elementary_symmetric(1, 2, 3, 3).unwrap(), &x(3, 2) + &x(3, 3));
        assert_eq!(elementary_symmetric(2, 1, 2, 4).unwrap(), XPoly::x_pow(&[1, 1, 0, 0]));
        assert!(elementary_symmetric(3, 1, 2, 4).is_err());
    }

    #[test]
    fn coefficient_examples() {
        let f = XPoly::x_pow(&[2, 0]).scale(&QTScalar::from_int(3));
        assert_eq!(f.coefficient(&[2, 0]), QTScalar::from_int(3));
        let g = &x(2, 1) + &x(2, 2);
        assert!(g.coefficient(&[0, 0]).is_zero());
        assert_eq!((&g * &g).coefficient(&[1, 1]), QTScalar::from_int(2));
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde(VandermondeKind::Plain, &[1], 3), XPoly::one(3));
        assert_eq!(
            vandermonde(VandermondeKind::TDeformed, &[1, 2], 2),
            &x(2, 1).scale(&QTScalar::t()) - &x(2, 2)
        );
        assert_eq!(vandermonde(VandermondeKind::Plain, &[1, 3], 3), &x(3, 1) - &x(3, 3));
    }

    #[test]
    fn rendering() {
        let f = &x(2, 2) + &x(2, 1).scale(&QTScalar::parse("(1-t)/(1-q*t)").unwrap());
        assert_eq!(f.to_latex(), "x_{2} + \\frac{1-t}{1-qt} x_{1}");
        assert_eq!(x(2, 1).to_text(), "x1");
        assert_eq!(XPoly::one(2).to_text(), "1");
        assert_eq!(XPoly::from_json(&f.to_json()).unwrap(), f);
    }
}
