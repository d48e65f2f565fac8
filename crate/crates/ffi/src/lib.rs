//! C ABI over `bimac`.
//!
//! Every function returns a [`BimacStatus`]; results come back through out-pointers as opaque
//! handles or owned strings. Handles are released with the matching `*_free` function, strings
//! with [`bimac_string_free`]. After a failure, [`bimac_last_error`] describes it until the next
//! call on the same thread.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bimac::evalsym::{eval_formula, evaluate};
use bimac::macdonald::{bisym_p, nonsym_e};
use bimac::pieri::{pieri_bruteforce, pieri_expand, same_expansion, PieriTerm, Variant};
use bimac::sparts::{Sign, SuperPartition};
use bimac::verify::{run_suite, Bounds, Suite};
use bimac::{Error, QTScalar, XPoly};

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BimacStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    DivisionByZero = 5,
    Degenerate = 6,
    Inconsistent = 7,
    Cache = 8,
    IndexOutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BimacFormat {
    Text = 0,
    Latex = 1,
    Json = 2,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BimacSign {
    Plus = 0,
    Minus = 1,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BimacVariant {
    /// `e_r(x_{m+1}, ..., x_N)`.
    Upper = 0,
    /// `e_r(x_1, ..., x_m)`.
    Lower = 1,
}

/// A polynomial in `x_1..x_N` with coefficients in `Q(q,t)`.
pub struct BimacPoly(XPoly);

/// An element of `Q(q,t)`.
pub struct BimacScalar(QTScalar);

/// A Pieri expansion: a list of `(Omega, coefficient)`.
pub struct BimacExpansion(Vec<PieriTerm>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(BimacStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) => BimacStatus::Parse,
            Error::Domain(_) | Error::Shape { .. } => BimacStatus::Domain,
            Error::DivisionByZero | Error::NotDivisible { .. } => BimacStatus::DivisionByZero,
            Error::Degenerate(_) => BimacStatus::Degenerate,
            Error::Inconsistent(_) => BimacStatus::Inconsistent,
            Error::Cache(_) => BimacStatus::Cache,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BimacStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BimacStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            BimacStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(BimacStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(BimacStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err(Fail(BimacStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

unsafe fn deref<'a, T>(h: *const T) -> Result<&'a T, Fail> {
    h.as_ref()
        .ok_or_else(|| Fail(BimacStatus::NullPointer, "null handle".into()))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

fn sign_of(s: BimacSign) -> Sign {
    match s {
        BimacSign::Plus => Sign::Plus,
        BimacSign::Minus => Sign::Minus,
    }
}

fn variant_of(v: BimacVariant) -> Variant {
    match v {
        BimacVariant::Upper => Variant::Upper,
        BimacVariant::Lower => Variant::Lower,
    }
}

/// The message for the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn bimac_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn bimac_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `E_eta` for the composition `eta[0..len]`.
#[no_mangle]
pub unsafe extern "C" fn bimac_e_new(eta: *const u32, len: usize, out: *mut *mut BimacPoly) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        if eta.is_null() || len == 0 {
            return Err(Fail(BimacStatus::NullPointer, "empty composition".into()));
        }
        let eta = std::slice::from_raw_parts(eta, len);
        let e = nonsym_e(eta)?;
        *out = Box::into_raw(Box::new(BimacPoly(e.poly.clone())));
        Ok(())
    })
}

/// `P_Lambda` for a superpartition written `"a1,a2,...;s1,s2,..."` in `n` variables.
#[no_mangle]
pub unsafe extern "C" fn bimac_p_new(spart: *const c_char, n: usize, out: *mut *mut BimacPoly) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let lam = SuperPartition::parse(read_str(spart)?, n)?;
        let p = bisym_p(&lam)?;
        *out = Box::into_raw(Box::new(BimacPoly(p.poly.clone())));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_poly_free(p: *mut BimacPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bimac_poly_nvars(p: *const BimacPoly, out: *mut usize) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        *out = deref(p)?.0.nvars();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_poly_nterms(p: *const BimacPoly, out: *mut usize) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        *out = deref(p)?.0.len();
        Ok(())
    })
}

/// The coefficient of `x^exps`, where `exps` has one entry per variable.
#[no_mangle]
pub unsafe extern "C" fn bimac_poly_coefficient(
    p: *const BimacPoly,
    exps: *const u32,
    len: usize,
    out: *mut *mut BimacScalar,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let p = &deref(p)?.0;
        if exps.is_null() {
            return Err(Fail(BimacStatus::NullPointer, "null exponent vector".into()));
        }
        if len != p.nvars() {
            return Err(Error::Shape {
                expected: p.nvars(),
                found: len,
            }
            .into());
        }
        let c = p.coefficient(std::slice::from_raw_parts(exps, len));
        *out = Box::into_raw(Box::new(BimacScalar(c)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_poly_render(
    p: *const BimacPoly,
    format: BimacFormat,
    out: *mut *mut c_char,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let p = &deref(p)?.0;
        let s = match format {
            BimacFormat::Text => p.to_text(),
            BimacFormat::Latex => p.to_latex(),
            BimacFormat::Json => p.to_json().to_string(),
        };
        *out = owned_string(s);
        Ok(())
    })
}

/// Parses a scalar such as `"q*(1-t)/(1-q*t)"`.
#[no_mangle]
pub unsafe extern "C" fn bimac_scalar_parse(s: *const c_char, out: *mut *mut BimacScalar) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let c = QTScalar::parse(read_str(s)?)?;
        *out = Box::into_raw(Box::new(BimacScalar(c)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_scalar_free(s: *mut BimacScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Exact equality of two scalars.
#[no_mangle]
pub unsafe extern "C" fn bimac_scalar_equal(
    a: *const BimacScalar,
    b: *const BimacScalar,
    out: *mut bool,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        *out = deref(a)?.0 == deref(b)?.0;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_scalar_render(
    s: *const BimacScalar,
    format: BimacFormat,
    out: *mut *mut c_char,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let s = &deref(s)?.0;
        let text = match format {
            BimacFormat::Text => s.to_text(),
            BimacFormat::Latex => s.to_latex(),
            BimacFormat::Json => s.to_json().to_string(),
        };
        *out = owned_string(text);
        Ok(())
    })
}

/// `u_Omega^sign(P_Lambda)`; a null `at` means `Lambda_0`, evaluated by the closed product.
#[no_mangle]
pub unsafe extern "C" fn bimac_evaluate(
    spart: *const c_char,
    at: *const c_char,
    n: usize,
    sign: BimacSign,
    out: *mut *mut BimacScalar,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let lam = SuperPartition::parse(read_str(spart)?, n)?;
        let sign = sign_of(sign);
        let value = if at.is_null() {
            eval_formula(&lam, sign)
        } else {
            let omg = SuperPartition::parse(read_str(at)?, n)?;
            if omg.m() != lam.m() {
                return Err(Error::Domain(format!("{omg} and {lam} differ in m")).into());
            }
            evaluate(&omg, sign, &bisym_p(&lam)?.poly)?
        };
        *out = Box::into_raw(Box::new(BimacScalar(value)));
        Ok(())
    })
}

/// The Pieri expansion of `e_r P_Lambda` from the explicit coefficients.
#[no_mangle]
pub unsafe extern "C" fn bimac_pieri(
    spart: *const c_char,
    n: usize,
    r: usize,
    variant: BimacVariant,
    out: *mut *mut BimacExpansion,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let lam = SuperPartition::parse(read_str(spart)?, n)?;
        let terms = pieri_expand(&lam, r, variant_of(variant))?;
        *out = Box::into_raw(Box::new(BimacExpansion(terms)));
        Ok(())
    })
}

/// Compares the explicit Pieri expansion with the brute-force one.
#[no_mangle]
pub unsafe extern "C" fn bimac_pieri_check(
    spart: *const c_char,
    n: usize,
    r: usize,
    variant: BimacVariant,
    out: *mut bool,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let lam = SuperPartition::parse(read_str(spart)?, n)?;
        let v = variant_of(variant);
        *out = same_expansion(&pieri_expand(&lam, r, v)?, &pieri_bruteforce(&lam, r, v)?);
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_expansion_free(e: *mut BimacExpansion) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bimac_expansion_len(e: *const BimacExpansion, out: *mut usize) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        *out = deref(e)?.0.len();
        Ok(())
    })
}

fn term(e: &BimacExpansion, i: usize) -> Result<&PieriTerm, Fail> {
    e.0.get(i).ok_or_else(|| {
        Fail(
            BimacStatus::IndexOutOfRange,
            format!("term {i} of an expansion with {} terms", e.0.len()),
        )
    })
}

/// The superpartition `Omega` of term `i`, as an owned string.
#[no_mangle]
pub unsafe extern "C" fn bimac_expansion_omega(
    e: *const BimacExpansion,
    i: usize,
    out: *mut *mut c_char,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        *out = owned_string(term(deref(e)?, i)?.omega.to_text());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn bimac_expansion_coeff(
    e: *const BimacExpansion,
    i: usize,
    out: *mut *mut BimacScalar,
) -> BimacStatus {
    guard(|| {
        check_out(out)?;
        let c = term(deref(e)?, i)?.coeff.clone();
        *out = Box::into_raw(Box::new(BimacScalar(c)));
        Ok(())
    })
}

/// Runs the named suite (`hecke`, `eigen`, `symmetry`, `evaluation` or `pieri`).
#[no_mangle]
pub unsafe extern "C" fn bimac_verify(suite: *const c_char, n: usize, deg: u32, passed: *mut bool) -> BimacStatus {
    guard(|| {
        check_out(passed)?;
        let suite: Suite = read_str(suite)?.parse()?;
        *passed = run_suite(suite, Bounds::new(n, deg)?).passed();
        Ok(())
    })
}
