//! Sparse Laurent polynomials in `q` with exact integer coefficients.
//!
//! Coefficients are `i64` with checked arithmetic; an overflow panics rather
//! than wrapping. Terms are kept in a `BTreeMap`, so iteration is always in
//! ascending exponent order and no zero coefficient is ever stored.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::lattice::Sign;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

fn checked(op: Option<i64>) -> i64 {
    op.expect("polynomial coefficient overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff · q^exp`.
    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs in any order;
    /// repeated exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds `Σ coeffs[i] · q^(top − i)`, i.e. coefficients listed from the
    /// highest power down.
    pub fn from_descending(top: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (top - i as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry = checked(entry.checked_add(coeff));
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn trailing_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<i64> {
        self.terms.values().next_back().copied()
    }

    /// Every coefficient is `≥ 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// `p(1)`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().fold(0i64, |acc, &c| checked(acc.checked_add(c)))
    }

    /// `sign · q^k · p`.
    pub fn scale_qpow(&self, k: i64, sign: Sign) -> Self {
        let s = sign.as_i64();
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (checked(e.checked_add(k)), checked(c.checked_mul(s)))).collect(),
        }
    }

    /// Plain-text rendering in descending powers: `2q^4 + q^3 - q`, `1`, `0`.
    pub fn to_text(&self) -> String {
        self.render(|e| match e {
            0 => String::new(),
            1 => "q".into(),
            _ => format!("q^{e}"),
        })
    }

    /// LaTeX rendering in descending powers: `2q^{4} + q^{3} - q`.
    pub fn to_latex(&self) -> String {
        self.render(|e| match e {
            0 => String::new(),
            1 => "q".into(),
            2..=9 => format!("q^{e}"),
            _ => format!("q^{{{e}}}"),
        })
    }

    fn render(&self, power: impl Fn(i64) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms().rev().enumerate() {
            let sep = match (n, c < 0) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            out.push_str(sep);
            let mag = c.unsigned_abs();
            let pw = power(e);
            if pw.is_empty() {
                let _ = write!(out, "{mag}");
            } else if mag == 1 {
                out.push_str(&pw);
            } else {
                let _ = write!(out, "{mag}{pw}");
            }
        }
        out
    }
}

impl From<Vec<(i64, i64)>> for LaurentPoly {
    fn from(v: Vec<(i64, i64)>) -> Self {
        Self::from_terms(v)
    }
}

impl From<LaurentPoly> for Vec<(i64, i64)> {
    fn from(p: LaurentPoly) -> Self {
        p.terms.into_iter().collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale_qpow(0, Sign::Minus)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(checked(e1.checked_add(e2)), checked(c1.checked_mul(c2)));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
