use super::QTScalar;
use crate::error::{Error, Result};

/// Which parameter a bracket is taken in.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Q,
    T,
    TInverse,
}

impl Param {
    fn value(self) -> QTScalar {
        match self {
            Param::Q => QTScalar::q(),
            Param::T => QTScalar::t(),
            Param::TInverse => QTScalar::monomial(0, -1),
        }
    }
}

/// `[k]_x = 1 + x + ... + x^(k-1)`.
pub fn bracket(k: i64, param: Param) -> Result<QTScalar> {
    if k < 0 {
        return Err(Error::Domain(format!("bracket of negative integer {k}")));
    }
    let x = param.value();
    let mut acc = QTScalar::zero();
    let mut pw = QTScalar::one();
    for _ in 0..k {
        acc += &pw;
        pw = &pw * &x;
    }
    Ok(acc)
}

/// `[k]_x! = [1]_x [2]_x ... [k]_x`, with `[0]_x! = 1`.
pub fn bracket_factorial(k: i64, param: Param) -> Result<QTScalar> {
    if k < 0 {
        return Err(Error::Domain(format!("bracket factorial of negative integer {k}")));
    }
    (1..=k).try_fold(QTScalar::one(), |acc, j| Ok(acc * bracket(j, param)?))
}
