use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{CoeffSpace, CoeffVector, LogSeries, Monomial, Var};
use crate::scalars::{ExactScalar, Exponent};

pub(crate) fn power_text(var: &Var, e: &Exponent) -> String {
    match e.to_i64() {
        Some(1) => format!("{var}"),
        Some(n) if n >= 0 => format!("{var}^{n}"),
        _ => format!("{var}^({e})"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut parts: Vec<String> = Vec::new();
        for fac in self.factors() {
            if !fac.exp.is_zero() {
                parts.push(power_text(&fac.var, &fac.exp));
            }
            match fac.log {
                0 => {}
                1 => parts.push(format!("lg({})", fac.var)),
                k => parts.push(format!("lg({})^{k}", fac.var)),
            }
        }
        f.write_str(&parts.join("*"))
    }
}

/// `(negative, text)`; `text` is empty when the coefficient is a bare unit.
fn scalar_coeff_text(c: &ExactScalar, unit_ok: bool) -> (bool, String) {
    match c.as_rat() {
        Some(r) => {
            let mag = r.abs();
            let text = if unit_ok && mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                format!("{mag}")
            } else {
                format!("({mag})")
            };
            (r.is_negative(), text)
        }
        None => (false, format!("({c})")),
    }
}

fn vector_text(space: CoeffSpace, v: &CoeffVector) -> String {
    let dense = |n: usize, off: usize| -> String {
        let items: Vec<String> = (0..n).map(|i| format!("{}", v.get(off + i))).collect();
        format!("[{}]", items.join(", "))
    };
    match space {
        CoeffSpace::Scalar => format!("{}", v.get(0)),
        CoeffSpace::Vector(n) => dense(n, 0),
        CoeffSpace::Matrix(n) => {
            let rows: Vec<String> = (0..n).map(|r| dense(n, r * n)).collect();
            format!("[{}]", rows.join(", "))
        }
    }
}

/// Canonical text: terms in monomial order, e.g. `(1/2)*x^(-1/2) + 3*x^(1/2)*lg(x)^2`.
impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (m, v) in self.terms() {
            let (neg, coeff) = match self.space() {
                CoeffSpace::Scalar => scalar_coeff_text(&v.get(0), !m.is_one()),
                s => (false, vector_text(s, v)),
            };
            let body = match (coeff.is_empty(), m.is_one()) {
                (true, _) => format!("{m}"),
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{m}"),
            };
            pieces.push((neg, body));
        }
        for (v, n) in self.trunc() {
            pieces.push((false, format!("O({})", power_text(v, &Exponent::int(n + 1)))));
        }
        if pieces.is_empty() {
            return f.write_str("0");
        }
        for (i, (neg, body)) in pieces.iter().enumerate() {
            match (i == 0, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
