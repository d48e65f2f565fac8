//! Hecke and double affine Hecke operators acting on [`XPoly`].
//!
//! `T_i` acts on a monomial through the closed form of its divided difference, so the
//! generators never need polynomial division. `T_0` is the one exception and goes
//! through [`XPoly::exact_div`].

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalars::{bracket_factorial, Param, QTScalar};
use crate::xpoly::{subsets, Exps, XPoly};

struct Consts {
    t: QTScalar,
    t_inv: QTScalar,
    one_minus_t: QTScalar,
    t_minus_one: QTScalar,
    t_inv_minus_one: QTScalar,
    one_minus_t_inv: QTScalar,
}

fn consts() -> &'static Consts {
    static C: OnceLock<Consts> = OnceLock::new();
    C.get_or_init(|| {
        let t = QTScalar::t();
        let t_inv = t.inv();
        let one = QTScalar::one();
        Consts {
            one_minus_t: &one - &t,
            t_minus_one: &t - &one,
            t_inv_minus_one: &t_inv - &one,
            one_minus_t_inv: &one - &t_inv,
            t,
            t_inv,
        }
    })
}

fn with_pair(e: &Exps, i: usize, a: u32, b: u32) -> Exps {
    let mut v = e.0.clone();
    v[i - 1] = a;
    v[i] = b;
    Exps(v)
}

/// Image of `x^e` under `T_i` (or its inverse) as `(exponent, multiplier)` pairs.
fn hecke_monomial(e: &Exps, i: usize, inverse: bool, out: &mut Vec<(Exps, &'static QTScalar)>) {
    let k = consts();
    let (a, b) = (e.0[i - 1], e.0[i]);
    let swapped = with_pair(e, i, b, a);
    if a == b {
        out.push((e.clone(), if inverse { &k.t_inv } else { &k.t }));
        return;
    }
    match (a > b, inverse) {
        (true, false) => {
            out.push((swapped, one_ref()));
            for j in 1..a - b {
                out.push((with_pair(e, i, b + j, a - j), &k.one_minus_t));
            }
        }
        (true, true) => {
            out.push((e.clone(), &k.t_inv_minus_one));
            out.push((swapped, &k.t_inv));
            for j in 1..a - b {
                out.push((with_pair(e, i, b + j, a - j), &k.t_inv_minus_one));
            }
        }
        (false, false) => {
            out.push((swapped, &k.t));
            for j in 0..b - a {
                out.push((with_pair(e, i, a + j, b - j), &k.t_minus_one));
            }
        }
        (false, true) => {
            out.push((swapped, one_ref()));
            for j in 1..b - a {
                out.push((with_pair(e, i, a + j, b - j), &k.one_minus_t_inv));
            }
        }
    }
}

fn one_ref() -> &'static QTScalar {
    static ONE: OnceLock<QTScalar> = OnceLock::new();
    ONE.get_or_init(QTScalar::one)
}

fn hecke(i: usize, f: &XPoly, inverse: bool) -> XPoly {
    let n = f.nvars();
    assert!(i >= 1 && i < n, "T_{i} needs 1 <= i < N = {n}");
    let mut buf = Vec::new();
    let mut pairs = Vec::with_capacity(f.len() * 3);
    for (e, c) in f.terms() {
        buf.clear();
        hecke_monomial(e, i, inverse, &mut buf);
        for (e2, m) in buf.drain(..) {
            let v = if m.is_one() { c.clone() } else { c * m };
            pairs.push((e2, v));
        }
    }
    XPoly::collect(n, pairs)
}

/// `T_i f`.
pub fn apply_t(i: usize, f: &XPoly) -> XPoly {
    hecke(i, f, false)
}

/// `T_i^{-1} f = (t^{-1} - 1 + t^{-1} T_i) f`.
pub fn apply_t_inv(i: usize, f: &XPoly) -> XPoly {
    hecke(i, f, true)
}

/// `T_0 f`.
pub fn apply_t0(f: &XPoly) -> Result<XPoly> {
    let n = f.nvars();
    if n < 2 {
        return Err(Error::Domain("T_0 needs N >= 2".into()));
    }
    let shifted = XPoly::from_terms(
        n,
        f.terms().map(|(e, c)| {
            let mut v = e.0.clone();
            v.swap(0, n - 1);
            (Exps(v), c.mul_monomial(e.0[0] as i64 - e.0[n - 1] as i64, 0))
        }),
    );
    let diff = &shifted - f;
    let qxn = XPoly::var(n, n).scale(&QTScalar::q());
    let x1 = XPoly::var(n, 1);
    let d = diff
        .exact_div(&(&qxn - &x1))
        .map_err(|e| Error::Inconsistent(format!("T_0 divided difference: {e}")))?;
    let lead = &qxn.scale(&QTScalar::t()) - &x1;
    Ok(&f.scale(&QTScalar::t()) + &(&lead * &d))
}

/// `omega f = f(q x_N, x_1, ..., x_{N-1})`.
pub fn apply_omega(f: &XPoly) -> XPoly {
    let n = f.nvars();
    XPoly::from_terms(
        n,
        f.terms().map(|(e, c)| {
            let mut v = e.0[1..].to_vec();
            v.push(e.0[0]);
            (Exps(v), c.mul_monomial(e.0[0] as i64, 0))
        }),
    )
}

/// The Cherednik operator `Y_i = t^{-N+i} T_i ... T_{N-1} omega Tbar_1 ... Tbar_{i-1}`.
pub fn apply_y(i: usize, f: &XPoly) -> XPoly {
    let n = f.nvars();
    assert!(i >= 1 && i <= n, "Y_{i} needs 1 <= i <= N = {n}");
    let mut g = f.clone();
    for j in (1..i).rev() {
        g = apply_t_inv(j, &g);
    }
    g = apply_omega(&g);
    for j in (i..n).rev() {
        g = apply_t(j, &g);
    }
    g.scale(&QTScalar::monomial(0, i as i64 - n as i64))
}

/// Applies `T_sigma` for a permutation given by a reduced word, rightmost letter first.
pub fn apply_t_word(word: &[usize], f: &XPoly) -> XPoly {
    word.iter().rev().fold(f.clone(), |g, &i| apply_t(i, &g))
}

/// Interval symmetrizers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SymKind {
    /// `sum K_sigma`.
    Sym,
    /// `sum T_sigma`.
    TSym,
    /// `sum (-1)^{l(sigma)} K_sigma`.
    Antisym,
    /// `sum (-1/t)^{l(sigma)} T_sigma`.
    TAntisym,
}

/// The symmetrizer of the given kind over the permutations of `[a, b]`.
///
/// The Hecke sums factor along minimal coset representatives,
/// `S_{[a,k]} = S_{[a,k-1]} (1 + T_{k-1} + T_{k-1}T_{k-2} + ... + T_{k-1}...T_a)`.
pub fn symmetrize(kind: SymKind, a: usize, b: usize, f: &XPoly) -> XPoly {
    let n = f.nvars();
    assert!(a >= 1 && b <= n, "interval [{a},{b}] outside [1,{n}]");
    if b <= a {
        return f.clone();
    }
    match kind {
        SymKind::Sym | SymKind::Antisym => {
            let signed = matches!(kind, SymKind::Antisym);
            let len = b - a + 1;
            let mut out = XPoly::zero(n);
            for p in Perm::all(len) {
                let mut full: Vec<usize> = (1..=n).collect();
                for (k, x) in p.one_line().into_iter().enumerate() {
                    full[a - 1 + k] = a - 1 + x;
                }
                let sigma = Perm::from_one_line(&full).unwrap();
                let g = f.permute_vars(&sigma);
                out = if signed && p.length() % 2 == 1 { &out - &g } else { &out + &g };
            }
            out
        }
        SymKind::TSym | SymKind::TAntisym => {
            let weight = match kind {
                SymKind::TSym => QTScalar::one(),
                _ => -QTScalar::t().inv(),
            };
            let mut g = f.clone();
            for k in (a + 1..=b).rev() {
                g = coset_chain(&weight, a, k, &g);
            }
            g
        }
    }
}

/// `(1 + w T_{k-1} + w^2 T_{k-1} T_{k-2} + ... + w^{k-a} T_{k-1} ... T_a) g`.
fn coset_chain(weight: &QTScalar, a: usize, k: usize, g: &XPoly) -> XPoly {
    // Horner form: g + w T_{k-1}(g + w T_{k-2}(g + ... (g + w T_a g)))
    let mut inner = g.clone();
    for j in a..k {
        inner = g + &apply_t(j, &inner).scale(weight);
    }
    inner
}

/// `e_r(Y_a, ..., Y_b) f`.
pub fn apply_e_of_y(r: usize, a: usize, b: usize, f: &XPoly) -> Result<XPoly> {
    let n = f.nvars();
    if a < 1 || b > n || a > b + 1 || r > b + 1 - a {
        return Err(Error::Domain(format!("e_{r}(Y_{a}..Y_{b}) with N = {n}")));
    }
    let idx: Vec<usize> = (a..=b).collect();
    let mut out = XPoly::zero(n);
    for s in subsets(&idx, r) {
        let g = s.iter().fold(f.clone(), |g, &i| apply_y(i, &g));
        out = &out + &g;
    }
    Ok(out)
}

/// `Y_{N-r+1} ... Y_N f` through its closed form for a bisymmetric `f`:
/// `t^{(2m+r+1-2N)r/2} omega^r (TBar_r ... TBar_{m+r-1}) ... (TBar_1 ... TBar_m) f`.
pub fn top_y_product_closed(m: usize, r: usize, f: &XPoly) -> XPoly {
    let n = f.nvars();
    let mut g = f.clone();
    for k in 1..=r {
        for i in (k..m + k).rev() {
            g = apply_t_inv(i, &g);
        }
    }
    for _ in 0..r {
        g = apply_omega(&g);
    }
    let e = (2 * m + r + 1) as i64 - 2 * n as i64;
    g.scale(&QTScalar::monomial(0, e * r as i64 / 2))
}

/// `Y_{N-r+1} ... Y_N f` applied directly.
pub fn top_y_product(r: usize, f: &XPoly) -> XPoly {
    let n = f.nvars();
    (n + 1 - r..=n).rev().fold(f.clone(), |g, i| apply_y(i, &g))
}

/// Whether `Y_{N-r+1} ... Y_N f` agrees with its closed form; `f` must be bisymmetric for `m`.
pub fn rel_y_check(m: usize, r: usize, f: &XPoly) -> Result<bool> {
    let n = f.nvars();
    if m > n || r == 0 || r > n - m {
        return Err(Error::Domain(format!("rel Y needs 1 <= r <= N - m, got m = {m}, r = {r}, N = {n}")));
    }
    Ok(top_y_product(r, f) == top_y_product_closed(m, r, f))
}

/// Whether `e_r(Y_1..Y_N) f = S^t_N Y_{N-r+1}...Y_N f / ([r]_t! [N-r]_t!)` for a symmetric `f`.
pub fn e_of_y_symmetric_check(r: usize, f: &XPoly) -> Result<bool> {
    let n = f.nvars();
    let lhs = apply_e_of_y(r, 1, n, f)?;
    let a = &bracket_factorial(r as i64, Param::T)? * &bracket_factorial((n - r) as i64, Param::T)?;
    let rhs = symmetrize(SymKind::TSym, 1, n, &top_y_product(r, f)).scale(&a.inv());
    Ok(lhs == rhs)
}

/// Checks, at the point `x`, that summing `K_sigma prod_{i<j} (x_i - t x_j)/(x_i - x_j)` over all
/// `sigma` with `sigma([N-r+1, N]) = J` gives `[r]_t! [N-r]_t! prod_{j in J, l notin J} (t x_j - x_l)/(x_j - x_l)`.
pub fn sym_sum_check(j: &[usize], x: &[QTScalar]) -> Result<bool> {
    let n = x.len();
    let r = j.len();
    let t = QTScalar::t();
    let tail: Vec<usize> = (n + 1 - r..=n).collect();
    let mut want: Vec<usize> = j.to_vec();
    want.sort_unstable();
    let ratio = |a: &QTScalar, b: &QTScalar, num: QTScalar| -> Result<QTScalar> { num.checked_div(&(a - b)) };
    let mut lhs = QTScalar::zero();
    for sigma in Perm::all(n) {
        let mut img = sigma.image(&tail);
        img.sort_unstable();
        if img != want {
            continue;
        }
        let y: Vec<&QTScalar> = (1..=n).map(|i| &x[sigma.at(i) - 1]).collect();
        let mut v = QTScalar::one();
        for a in 0..n {
            for b in a + 1..n {
                v = &v * &ratio(y[a], y[b], y[a] - &(&t * y[b]))?;
            }
        }
        lhs = &lhs + &v;
    }
    let mut rhs = &bracket_factorial(r as i64, Param::T)? * &bracket_factorial((n - r) as i64, Param::T)?;
    for &a in j {
        for l in (1..=n).filter(|l| !j.contains(l)) {
            let (xa, xl) = (&x[a - 1], &x[l - 1]);
            rhs = &rhs * &ratio(xa, xl, &(&t * xa) - xl)?;
        }
    }
    Ok(lhs == rhs)
}

/// One factor of an operator word.
#[derive(Clone, Debug)]
pub enum Atom {
    K(Perm),
    T(usize),
    TBar(usize),
    T0,
    Omega,
    Y(usize),
    Tau(Vec<usize>),
    Mul(XPoly),
    Scalar(QTScalar),
}

/// A product of atoms, applied right to left.
#[derive(Clone, Debug, Default)]
pub struct OperatorWord(pub Vec<Atom>);

impl OperatorWord {
    pub fn apply(&self, f: &XPoly) -> Result<XPoly> {
        let mut g = f.clone();
        for atom in self.0.iter().rev() {
            g = match atom {
                Atom::K(p) => g.permute_vars(p),
                Atom::T(i) => apply_t(*i, &g),
                Atom::TBar(i) => apply_t_inv(*i, &g),
                Atom::T0 => apply_t0(&g)?,
                Atom::Omega => apply_omega(&g),
                Atom::Y(i) => apply_y(*i, &g),
                Atom::Tau(set) => g.q_shift(set),
                Atom::Mul(h) => g.try_mul(h)?,
                Atom::Scalar(c) => g.scale(c),
            };
        }
        Ok(g)
    }
}
