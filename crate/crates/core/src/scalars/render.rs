use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{QTMono, QTPoly, QTScalar};

#[derive(Copy, Clone, PartialEq, Eq)]
enum Style {
    Text,
    Latex,
}

fn mono(m: &QTMono, style: Style) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("q", m.q), ("t", m.t)] {
        match (e, style) {
            (0, _) => {}
            (1, _) => parts.push(name.to_string()),
            (e, Style::Text) => parts.push(format!("{name}^{e}")),
            (e, Style::Latex) => parts.push(format!("{name}^{{{e}}}")),
        }
    }
    match style {
        Style::Text => parts.join("*"),
        Style::Latex => parts.concat(),
    }
}

fn poly(p: &QTPoly, style: Style) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag: BigInt = c.abs();
        let sep = match (i, neg, style) {
            (0, true, _) => "-",
            (0, false, _) => "",
            (_, true, Style::Text) => " - ",
            (_, false, Style::Text) => " + ",
            (_, true, Style::Latex) => "-",
            (_, false, Style::Latex) => "+",
        };
        out.push_str(sep);
        let body = mono(m, style);
        if body.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&body);
        } else if style == Style::Text {
            out.push_str(&format!("{mag}*{body}"));
        } else {
            out.push_str(&format!("{mag}{body}"));
        }
    }
    out
}

pub(crate) fn poly_text(p: &QTPoly) -> String {
    poly(p, Style::Text)
}

/// Numerator and denominator with signs arranged so the lowest term of the
/// denominator is positive, matching the `(1-t)/(1-qt)` reading style.
fn display_parts(s: &QTScalar) -> (QTPoly, QTPoly) {
    let (num, den) = (s.numer().clone(), s.denom().clone());
    let flip = den.terms().next().is_some_and(|(_, c)| c.is_negative());
    if flip {
        (num.neg(), den.neg())
    } else {
        (num, den)
    }
}

pub(crate) fn scalar_text(s: &QTScalar) -> String {
    let (num, den) = display_parts(s);
    if den.is_one() {
        return poly_text(&num);
    }
    let wrap = |p: &QTPoly| {
        let body = poly_text(p);
        if p.len() > 1 || body.contains('*') {
            format!("({body})")
        } else {
            body
        }
    };
    format!("{}/{}", wrap(&num), wrap(&den))
}

pub(crate) fn scalar_latex(s: &QTScalar) -> String {
    let (num, den) = display_parts(s);
    if den.is_one() {
        return poly(&num, Style::Latex);
    }
    format!("\\frac{{{}}}{{{}}}", poly(&num, Style::Latex), poly(&den, Style::Latex))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_fractions() {
        let a = QTScalar::parse("(1-t)/(1-q*t)").unwrap();
        assert_eq!(scalar_latex(&a), "\\frac{1-t}{1-qt}");
        assert_eq!(scalar_text(&a), "(1 - t)/(1 - q*t)");
        let b = QTScalar::parse("-3*q^2*t").unwrap();
        assert_eq!(scalar_text(&b), "-3*q^2*t");
        assert_eq!(scalar_latex(&b), "-3q^{2}t");
        assert_eq!(scalar_text(&QTScalar::monomial(0, -2)), "1/t^2");
    }
}
