use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent pair `q^q t^t`, ordered graded-lexicographically with `q` before `t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct QTMono {
    pub q: u32,
    pub t: u32,
}

impl QTMono {
    pub const ONE: QTMono = QTMono { q: 0, t: 0 };

    pub fn new(q: u32, t: u32) -> Self {
        QTMono { q, t }
    }

    pub fn degree(&self) -> u32 {
        self.q + self.t
    }

    fn divides(&self, other: &QTMono) -> bool {
        self.q <= other.q && self.t <= other.t
    }
}

impl Ord for QTMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.q.cmp(&other.q))
            .then(self.t.cmp(&other.t))
    }
}

impl PartialOrd for QTMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `q, t` with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QTPoly {
    terms: BTreeMap<QTMono, BigInt>,
}

/// Dense univariate polynomial in `t` over the integers, index = degree.
type UPoly = Vec<BigInt>;

impl QTPoly {
    pub fn zero() -> Self {
        QTPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, QTMono::ONE)
    }

    pub fn monomial(c: impl Into<BigInt>, m: QTMono) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        QTPoly { terms }
    }

    /// Builds from `(coefficient, q-exponent, t-exponent)` triples, merging repeats.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (C, u32, u32)>,
        C: Into<BigInt>,
    {
        let mut p = QTPoly::zero();
        for (c, a, b) in it {
            p.add_term(QTMono::new(a, b), c.into());
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&QTMono, &BigInt)> {
        self.terms.iter()
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

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&QTMono::ONE).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&QTMono::ONE))
    }

    pub fn as_monomial(&self) -> Option<(&QTMono, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&QTMono::ONE).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&QTMono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_q(&self) -> u32 {
        self.terms.keys().map(|m| m.q).max().unwrap_or(0)
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|m| m.t).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: QTMono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn neg(&self) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }

    pub fn mul(&self, other: &QTPoly) -> QTPoly {
        if self.is_zero() || other.is_zero() {
            return QTPoly::zero();
        }
        if let Some((m, c)) = other.as_monomial() {
            return self.mul_term(*m, c);
        }
        if let Some((m, c)) = self.as_monomial() {
            return other.mul_term(*m, c);
        }
        let mut out = QTPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(QTMono::new(ma.q + mb.q, ma.t + mb.t), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: QTMono, c: &BigInt) -> QTPoly {
        if c.is_zero() {
            return QTPoly::zero();
        }
        QTPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (QTMono::new(k.q + m.q, k.t + m.t), v * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> QTPoly {
        self.mul_term(QTMono::ONE, c)
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_int_exact(&self, c: &BigInt) -> QTPoly {
        if c.is_one() {
            return self.clone();
        }
        QTPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v / c)).collect(),
        }
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum of the exponents.
    pub fn min_mono(&self) -> QTMono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return QTMono::ONE;
        };
        it.fold(*first, |acc, m| QTMono::new(acc.q.min(m.q), acc.t.min(m.t)))
    }

    fn shift_down(&self, m: QTMono) -> QTPoly {
        if m == QTMono::ONE {
            return self.clone();
        }
        QTPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (QTMono::new(k.q - m.q, k.t - m.t), v.clone()))
                .collect(),
        }
    }

    /// Exact division in `Z[q,t]`; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &QTPoly) -> Option<QTPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        if let Some((m, c)) = divisor.as_monomial() {
            let mut out = BTreeMap::new();
            for (k, v) in &self.terms {
                if !m.divides(k) {
                    return None;
                }
                let (quo, rem) = v.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                out.insert(QTMono::new(k.q - m.q, k.t - m.t), quo);
            }
            return Some(QTPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = QTPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !lm.divides(rm) {
                return None;
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = QTMono::new(rm.q - lm.q, rm.t - lm.t);
            rem = rem.sub(&divisor.mul_term(qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Returns the polynomial with its sign fixed so the leading coefficient is positive.
    pub fn sign_normalized(self) -> QTPoly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self,
        }
    }

    /// Greatest common divisor in `Z[q,t]`, with positive leading coefficient.
    pub fn gcd(a: &QTPoly, b: &QTPoly) -> QTPoly {
        if a.is_zero() {
            return b.clone().sign_normalized();
        }
        if b.is_zero() {
            return a.clone().sign_normalized();
        }
        if a == b {
            return a.clone().sign_normalized();
        }
        let ma = a.min_mono();
        let mb = b.min_mono();
        let mono = QTMono::new(ma.q.min(mb.q), ma.t.min(mb.t));
        let int_gcd = a.content().gcd(&b.content());
        if a.len() == 1 || b.len() == 1 {
            return QTPoly::monomial(int_gcd, mono);
        }
        let a0 = a.shift_down(ma);
        let b0 = b.shift_down(mb);
        if a0.is_constant() || b0.is_constant() {
            return QTPoly::monomial(int_gcd, mono);
        }
        // Cheap common case: one side divides the other.
        let (small, large) = if a0.leading().unwrap().0 <= b0.leading().unwrap().0 {
            (&a0, &b0)
        } else {
            (&b0, &a0)
        };
        let core = if large.div_exact(small).is_some() {
            small.clone()
        } else {
            let a1 = a0.div_int_exact(&a0.content());
            let b1 = b0.div_int_exact(&b0.content());
            gcd_heuristic(&a1, &b1).unwrap_or_else(|| from_dense(&gcd_dense(to_dense(&a1), to_dense(&b1))))
        };
        let core = core.sign_normalized();
        let core = core.div_int_exact(&core.content());
        core.mul_term(mono, &int_gcd)
    }

    /// `p(1/q, 1/t) * q^dq * t^dt` with `dq, dt` the degrees of `p`; returns it with `(dq, dt)`.
    pub fn reversed(&self) -> (QTPoly, u32, u32) {
        let dq = self.degree_q();
        let dt = self.degree_t();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (QTMono::new(dq - m.q, dt - m.t), c.clone()))
            .collect();
        (QTPoly { terms }, dq, dt)
    }

    /// Evaluates at integer points; used by tests as a cheap fingerprint.
    pub fn eval_int(&self, q: &BigInt, t: &BigInt) -> BigInt {
        self.terms
            .iter()
            .map(|(m, c)| c * num_traits::pow(q.clone(), m.q as usize) * num_traits::pow(t.clone(), m.t as usize))
            .sum()
    }
}

impl fmt::Debug for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::render::poly_text(self))
    }
}

fn to_dense(p: &QTPoly) -> Vec<UPoly> {
    let dq = p.degree_q() as usize;
    let dt = p.degree_t() as usize;
    let mut out = vec![vec![BigInt::zero(); dt + 1]; dq + 1];
    for (m, c) in p.terms() {
        out[m.q as usize][m.t as usize] = c.clone();
    }
    for row in &mut out {
        utrim(row);
    }
    out
}

fn from_dense(d: &[UPoly]) -> QTPoly {
    let mut p = QTPoly::zero();
    for (i, row) in d.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            p.add_term(QTMono::new(i as u32, j as u32), c.clone());
        }
    }
    p
}

fn utrim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uis_zero(p: &UPoly) -> bool {
    p.is_empty()
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    utrim(&mut out);
    out
}

fn usub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    utrim(&mut out);
    out
}

fn ucontent(a: &UPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn udiv_int(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

/// Exact division in `Z[t]`; panics if the division leaves a remainder.
fn udiv_exact(a: &UPoly, b: &UPoly) -> UPoly {
    udiv_checked(a, b).expect("inexact univariate division")
}

fn udiv_checked(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem = a.clone();
    let mut quo = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while !rem.is_empty() && rem.len() > db {
        let dr = rem.len() - 1;
        let (c, r) = rem[dr].div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            rem[shift + i] -= &c * y;
        }
        quo[shift] = c;
        utrim(&mut rem);
    }
    if !rem.is_empty() {
        return None;
    }
    utrim(&mut quo);
    Some(quo)
}

fn ueval(p: &UPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn unorm(p: &UPoly) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Balanced base-`xi` digits of `n`, lowest first.
fn balanced_digits(n: BigInt, xi: &BigInt) -> UPoly {
    let half = xi / 2;
    let mut rest = n;
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let mut d = rest.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        rest = (rest - &d) / xi;
        digits.push(d);
    }
    digits
}

fn next_point(xi: BigInt) -> BigInt {
    xi * 73794 / 27011
}

/// Full gcd in `Z[x]` (content included), by integer gcds at large points with a
/// subresultant fallback.
fn ugcd_heuristic(a: &UPoly, b: &UPoly) -> UPoly {
    let c = ucontent(a).gcd(&ucontent(b));
    let (pa, pb) = (uprimitive(a), uprimitive(b));
    if pa.len() <= 1 || pb.len() <= 1 {
        return vec![c];
    }
    let mut xi = unorm(&pa).min(unorm(&pb)) * 2 + 29;
    for _ in 0..6 {
        let g = ueval(&pa, &xi).gcd(&ueval(&pb, &xi));
        let h = uprimitive(&balanced_digits(g, &xi));
        if !h.is_empty() && udiv_checked(&pa, &h).is_some() && udiv_checked(&pb, &h).is_some() {
            return h.into_iter().map(|x| x * &c).collect();
        }
        xi = next_point(xi);
    }
    ugcd(a, b)
}

/// Heuristic gcd in `Z[q,t]`: evaluate `t` at a large integer, take the gcd in `Z[q]`,
/// lift each coefficient back by balanced digits and confirm by trial division.
fn gcd_heuristic(a: &QTPoly, b: &QTPoly) -> Option<QTPoly> {
    let (da, db) = (to_dense(a), to_dense(b));
    let norm = |d: &[UPoly]| d.iter().map(unorm).max().unwrap_or_default();
    let mut xi = norm(&da).min(norm(&db)) * 2 + 29;
    for _ in 0..4 {
        let ea: UPoly = da.iter().map(|c| ueval(c, &xi)).collect();
        let eb: UPoly = db.iter().map(|c| ueval(c, &xi)).collect();
        if ea.last().is_some_and(|x| !x.is_zero()) && eb.last().is_some_and(|x| !x.is_zero()) {
            let g = ugcd_heuristic(&ea, &eb);
            let lifted: Vec<UPoly> = g.into_iter().map(|c| balanced_digits(c, &xi)).collect();
            let cand = from_dense(&lifted);
            if !cand.is_zero() {
                let cand = cand.div_int_exact(&cand.content());
                if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                    return Some(cand);
                }
            }
        }
        xi = next_point(xi);
    }
    None
}

fn uprem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &lr * y;
        }
        utrim(&mut r);
    }
    r
}

fn uprimitive(a: &UPoly) -> UPoly {
    let c = ucontent(a);
    let mut p = if c.is_zero() { a.clone() } else { udiv_int(a, &c) };
    if p.last().is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -&*x;
        }
    }
    p
}

fn ugcd(a: &UPoly, b: &UPoly) -> UPoly {
    if uis_zero(a) {
        return uprimitive_signed(b);
    }
    if uis_zero(b) {
        return uprimitive_signed(a);
    }
    let g = ucontent(a).gcd(&ucontent(b));
    let mut x = uprimitive(a);
    let mut y = uprimitive(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = uprem(&x, &y);
        x = y;
        y = uprimitive(&r);
    }
    let mut out = uprimitive(&x);
    for c in out.iter_mut() {
        *c *= &g;
    }
    out
}

fn uprimitive_signed(a: &UPoly) -> UPoly {
    let mut p = a.clone();
    if p.last().is_some_and(|x| x.is_negative()) {
        for x in p.iter_mut() {
            *x = -&*x;
        }
    }
    p
}

fn qcontent(a: &[UPoly]) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        if c.is_empty() {
            continue;
        }
        g = ugcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn qtrim(p: &mut Vec<UPoly>) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn qprimitive(a: &[UPoly]) -> Vec<UPoly> {
    let c = qcontent(a);
    if c.is_empty() || (c.len() == 1 && c[0].is_one()) {
        return a.to_vec();
    }
    a.iter().map(|x| udiv_exact(x, &c)).collect()
}

/// Pseudo-remainder in `Z[t][q]`.
fn qprem(a: &[UPoly], b: &[UPoly]) -> Vec<UPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = umul(c, lb);
        }
        let shift = dr - db;
        for (i, y) in b.iter().enumerate() {
            r[shift + i] = usub(&r[shift + i], &umul(&lr, y));
        }
        qtrim(&mut r);
    }
    r
}

/// Primitive pseudo-remainder sequence gcd of two nonzero polynomials in `Z[t][q]`.
fn gcd_dense(a: Vec<UPoly>, b: Vec<UPoly>) -> Vec<UPoly> {
    let ca = qcontent(&a);
    let cb = qcontent(&b);
    let c = ugcd(&ca, &cb);
    let mut x = qprimitive(&a);
    let mut y = qprimitive(&b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = qprem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { qprimitive(&r) };
    }
    let x = qprimitive(&x);
    x.iter().map(|row| umul(row, &c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ts: &[(i64, u32, u32)]) -> QTPoly {
        QTPoly::from_terms(ts.iter().map(|&(c, a, b)| (c, a, b)))
    }

    #[test]
    fn graded_lex_leading_term() {
        let f = p(&[(1, 0, 0), (-1, 1, 1), (5, 0, 1)]);
        assert_eq!(f.leading().unwrap().0, &QTMono::new(1, 1));
        let g = p(&[(1, 0, 2), (1, 1, 0)]);
        // q before t: q*? ties broken by q-exponent
        assert_eq!(g.leading().unwrap().0, &QTMono::new(0, 2));
    }

    #[test]
    fn exact_division() {
        let a = p(&[(1, 0, 0), (-1, 2, 0)]); // 1 - q^2
        let b = p(&[(1, 0, 0), (-1, 1, 0)]); // 1 - q
        assert_eq!(a.div_exact(&b).unwrap(), p(&[(1, 0, 0), (1, 1, 0)]));
        assert!(b.div_exact(&a).is_none());
    }

    #[test]
    fn gcd_of_products() {
        let f1 = p(&[(1, 0, 0), (-1, 1, 1)]); // 1 - qt
        let f2 = p(&[(1, 0, 0), (-1, 0, 3)]); // 1 - t^3
        let f3 = p(&[(2, 2, 0), (3, 0, 1), (1, 0, 0)]);
        let a = f1.mul(&f2).mul(&QTPoly::constant(6));
        let b = f1.mul(&f3).mul(&QTPoly::constant(4));
        let g = QTPoly::gcd(&a, &b);
        assert_eq!(g, f1.scale(&BigInt::from(2)).sign_normalized());
        let g2 = QTPoly::gcd(&f2, &f3);
        assert_eq!(g2, QTPoly::one());
    }

    #[test]
    fn gcd_with_monomial_factors() {
        let a = p(&[(1, 2, 1), (-1, 3, 2)]); // q^2 t (1 - q t)
        let b = p(&[(1, 1, 3), (-1, 2, 4)]); // q t^3 (1 - q t)
        assert_eq!(QTPoly::gcd(&a, &b), p(&[(-1, 1, 1), (1, 2, 2)]).sign_normalized());
    }
}
