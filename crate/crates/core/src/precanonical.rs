//! Pre-canonical bases and the first route to the atomic decomposition.
//!
//! `𝒩ⁱ` for `i` in `2..=6` interpolates between the atomic basis (`i = 2`)
//! and the canonical basis (`i = 6`). By definition
//!
//! ```text
//! Nⁱ_λ = Σ_{I ⊆ Φ^{≥i}} (−q)^|I| H̃_{λ − Σ_I}
//! ```
//!
//! where `H̃_μ` straightens `μ` under the dot action (zero if singular). The
//! one-level change of basis `𝒩ⁱ → 𝒩ⁱ⁺¹` ([`inverse_step`]) is a short case
//! table; its inverse ([`step_up`]) is a linear recursion. Composing the four
//! `step_up` layers gives [`atomic`].
//!
//! The summation formulas in [`closed_form`] are kept as an independent check
//! on `step_up`.

use std::collections::HashMap;

use crate::combo::{unroll_chain, BasisLabel, Combination};
use crate::error::{Error, Result};
use crate::lattice::{dominance_leq, dominant_rep, roots_of_height_at_least, Sign, SignedDominant, Weight};
use crate::poly::LaurentPoly;

fn check_level(i: u8, min: u8, max: u8) -> Result<u8> {
    if (min..=max).contains(&i) {
        Ok(i)
    } else {
        Err(Error::LevelOutOfRange { level: i, min, max })
    }
}

fn w(a: i64, b: i64) -> Weight {
    Weight::new(a, b)
}

/// `H̃_w`: zero if `w` is singular, else `±H̄` at its dominant representative.
pub fn tilde_h(weight: Weight) -> Combination {
    let mut out = Combination::zero(BasisLabel::Canonical);
    if let SignedDominant::Regular { sign, rep } = dominant_rep(weight) {
        out.add_term(rep, &LaurentPoly::monomial(sign.as_i64(), 0));
    }
    out
}

/// `Nⁱ_λ` in the canonical basis, straight from the signed subset sum.
pub fn defn_precanonical(i: u8, lam: Weight) -> Result<Combination> {
    let i = check_level(i, 2, 6)?;
    let lam = lam.require_dominant()?;
    let roots = roots_of_height_at_least(i);
    let mut out = Combination::zero(BasisLabel::Canonical);
    for mask in 0u32..(1 << roots.len()) {
        let mut shifted = lam;
        for (j, &root) in roots.iter().enumerate() {
            if mask & (1 << j) != 0 {
                shifted = shifted - root;
            }
        }
        let size = mask.count_ones();
        let sign = if size % 2 == 0 { Sign::Plus } else { Sign::Minus };
        let coeff = LaurentPoly::q_pow(i64::from(size)).scale_qpow(0, sign);
        for (mu, c) in tilde_h(shifted).iter() {
            out.add_term(mu, &(&coeff * c));
        }
    }
    Ok(out)
}

/// `Nⁱ_λ` written in `𝒩ⁱ⁺¹`, for `i` in `2..=5`.
pub fn inverse_step(i: u8, lam: Weight) -> Result<Combination> {
    let i = check_level(i, 2, 5)?;
    let Weight { a, b } = lam.require_dominant()?;
    let basis = BasisLabel::PreCanonical(i + 1);
    let mut out = Combination::unit(basis, lam);
    let q = |k: i64| LaurentPoly::q_pow(k);
    let mq = |k: i64| LaurentPoly::monomial(-1, k);
    match i {
        5 if b >= 1 => out.add_term(w(a, b - 1), &mq(1)),
        4 => match a {
            _ if a >= 3 => out.add_term(w(a - 3, b + 1), &mq(1)),
            2 => {}
            1 => out.add_term(w(0, b), &q(1)),
            0 if b >= 1 => out.add_term(w(1, b - 1), &q(1)),
            _ => {}
        },
        3 if a >= 1 => out.add_term(w(a - 1, b), &mq(1)),
        3 if b >= 2 => out.add_term(w(2, b - 2), &mq(2)),
        2 if b >= 1 => out.add_term(w(a + 1, b - 1), &mq(1)),
        _ => {}
    }
    Ok(out)
}

/// `Nⁱ⁺¹_λ` written in `𝒩ⁱ`, for `i` in `2..=5`.
///
/// Each level is a linear recursion `f(λ) = N_λ ± q^k f(λ')`. At level 4 the
/// walk `(1,b) → (0,b) → (1,b−1) → …` carries alternating signs, so this
/// layer on its own is not positive.
pub fn step_up(i: u8, lam: Weight) -> Result<Combination> {
    let i = check_level(i, 2, 5)?;
    let lam = lam.require_dominant()?;
    let basis = BasisLabel::PreCanonical(i);
    let plus = |k, mu| Some((k, Sign::Plus, mu));
    let minus = |k, mu| Some((k, Sign::Minus, mu));
    match i {
        5 => unroll_chain(basis, lam, |Weight { a, b }| if b >= 1 { plus(1, w(a, b - 1)) } else { None }),
        4 => unroll_chain(basis, lam, |Weight { a, b }| match a {
            _ if a >= 3 => plus(1, w(a - 3, b + 1)),
            1 => minus(1, w(0, b)),
            0 if b >= 1 => minus(1, w(1, b - 1)),
            _ => None,
        }),
        3 => unroll_chain(basis, lam, |Weight { a, b }| {
            if a >= 1 {
                plus(1, w(a - 1, b))
            } else if b >= 2 {
                plus(2, w(2, b - 2))
            } else {
                None
            }
        }),
        2 => unroll_chain(basis, lam, |Weight { a, b }| if b >= 1 { plus(1, w(a + 1, b - 1)) } else { None }),
        _ => unreachable!(),
    }
}

/// Memo for [`step_up`] keyed by `(level, weight)`.
#[derive(Default)]
pub struct StepCache {
    table: HashMap<(u8, Weight), Combination>,
}

impl StepCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step_up(&mut self, i: u8, lam: Weight) -> Result<Combination> {
        if let Some(hit) = self.table.get(&(i, lam)) {
            return Ok(hit.clone());
        }
        let value = step_up(i, lam)?;
        self.table.insert((i, lam), value.clone());
        Ok(value)
    }

    /// `Nⁱ_λ` in the atomic basis, for `i` in `2..=6`.
    pub fn precanonical_in_atomic(&mut self, i: u8, lam: Weight) -> Result<Combination> {
        let i = check_level(i, 2, 6)?;
        let lam = lam.require_dominant()?;
        let mut current = Combination::unit(BasisLabel::PreCanonical(i), lam);
        for level in (2..i).rev() {
            current = current.substitute(BasisLabel::PreCanonical(level), |mu| self.step_up(level, mu))?;
        }
        Ok(current.relabel(BasisLabel::Atomic))
    }
}

/// `Nⁱ_λ` in the atomic basis, for `i` in `2..=6`.
pub fn precanonical_in_atomic(i: u8, lam: Weight) -> Result<Combination> {
    StepCache::new().precanonical_in_atomic(i, lam)
}

/// `H̄_λ = Σ_{μ≤λ} a_{λ,μ}(q) N_μ`.
///
/// The result is checked before it is returned: `a_{λ,λ} = 1`, every other
/// `μ` lies below `λ`, and every coefficient is in `ℕ[q]`. A violation is an
/// [`Error::Internal`].
pub fn atomic(lam: Weight) -> Result<Combination> {
    atomic_with(&mut StepCache::new(), lam)
}

pub fn atomic_with(cache: &mut StepCache, lam: Weight) -> Result<Combination> {
    let out = cache.precanonical_in_atomic(6, lam)?;
    check_atomic_expansion(lam, &out)?;
    Ok(out)
}

pub(crate) fn check_atomic_expansion(lam: Weight, expansion: &Combination) -> Result<()> {
    if !expansion.coeff(lam).is_one() {
        return Err(Error::Internal(format!("leading coefficient of H̄_{lam} is not 1")));
    }
    for (mu, c) in expansion.iter() {
        if !dominance_leq(mu, lam) {
            return Err(Error::Internal(format!("N_{mu} appears in H̄_{lam} but {mu} is not below {lam}")));
        }
        if !c.is_nonnegative() {
            return Err(Error::Internal(format!("coefficient of N_{mu} in H̄_{lam} is {c}")));
        }
    }
    Ok(())
}

/// The summation formulas for single layers of the change of basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// `N⁶_λ = Σ_{i=0}^{λ₂} qⁱ N⁵_{(λ₁, λ₂−i)}`.
    SixInFive,
    /// `N³_λ = Σ_{i=0}^{λ₂} qⁱ N²_{(λ₁+i, λ₂−i)}`.
    ThreeInTwo,
    /// `N⁵_λ` as an `𝒩⁴` part plus an `𝒩³` part, by `λ₁ mod 3`.
    FiveInFourThree,
    /// `N⁴_λ` in `𝒩³`, by the parity of `λ₂`.
    FourInThree,
}

/// Value of a [`ClosedForm`]. Only [`ClosedForm::FiveInFourThree`] fills
/// `lower`, with its `𝒩³` part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedExpansion {
    pub main: Combination,
    pub lower: Option<Combination>,
}

pub fn closed_form(which: ClosedForm, lam: Weight) -> Result<ClosedExpansion> {
    let Weight { a: l1, b: l2 } = lam.require_dominant()?;
    let q = LaurentPoly::q_pow;
    let mq = |k| LaurentPoly::monomial(-1, k);
    match which {
        ClosedForm::SixInFive => {
            let mut main = Combination::zero(BasisLabel::PreCanonical(5));
            for i in 0..=l2 {
                main.add_term(w(l1, l2 - i), &q(i));
            }
            Ok(ClosedExpansion { main, lower: None })
        }
        ClosedForm::ThreeInTwo => {
            let mut main = Combination::zero(BasisLabel::PreCanonical(2));
            for i in 0..=l2 {
                main.add_term(w(l1 + i, l2 - i), &q(i));
            }
            Ok(ClosedExpansion { main, lower: None })
        }
        ClosedForm::FiveInFourThree => {
            let (m, r) = (l1 / 3, l1 % 3);
            let mut main = Combination::zero(BasisLabel::PreCanonical(4));
            let mut lower = Combination::zero(BasisLabel::PreCanonical(3));
            let top = if r == 1 { m - 1 } else { m };
            for i in 0..=top {
                main.add_term(w(l1 - 3 * i, l2 + i), &q(i));
            }
            match r {
                0 => {
                    for i in 1..=m + l2 {
                        lower.add_term(w(1, m + l2 - i), &mq(m + 2 * i - 1));
                    }
                }
                1 => {
                    for i in 0..=m + l2 {
                        lower.add_term(w(1, m + l2 - i), &q(m + 2 * i));
                    }
                }
                _ => {}
            }
            Ok(ClosedExpansion { main, lower: Some(lower) })
        }
        ClosedForm::FourInThree => {
            let m = l2 / 2;
            let mut main = Combination::zero(BasisLabel::PreCanonical(3));
            for i in 0..=l1 {
                main.add_term(w(l1 - i, l2), &q(i));
            }
            for i in 1..=m {
                let base = l1 + 4 * i - 2;
                main.add_term(w(2, l2 - 2 * i), &q(base));
                main.add_term(w(1, l2 - 2 * i), &q(base + 1));
                main.add_term(w(0, l2 - 2 * i), &q(base + 2));
            }
            Ok(ClosedExpansion { main, lower: None })
        }
    }
}

/// Rewrites a closed form as a single combination in the basis `step_up`
/// produces, so the two can be compared term by term.
///
/// For [`ClosedForm::FiveInFourThree`] the `𝒩³` part is pushed up into `𝒩⁴`
/// with [`inverse_step`].
pub fn closed_form_in_step_basis(which: ClosedForm, lam: Weight) -> Result<Combination> {
    let ClosedExpansion { main, lower } = closed_form(which, lam)?;
    match lower {
        None => Ok(main),
        Some(lower) => {
            let pushed = lower.substitute(BasisLabel::PreCanonical(4), |mu| inverse_step(3, mu))?;
            main.add(&pushed)
        }
    }
}

/// The layer of [`step_up`] a closed form describes.
pub fn closed_form_level(which: ClosedForm) -> u8 {
    match which {
        ClosedForm::SixInFive => 5,
        ClosedForm::FiveInFourThree => 4,
        ClosedForm::FourInThree => 3,
        ClosedForm::ThreeInTwo => 2,
    }
}

/// Atomic expansion of `N⁵_{(0,2m)}` in the regrouped form obtained by
/// cancelling the `N²_{(1,·)}` terms:
///
/// ```text
/// Σ_{i=0}^{m} Σ_{j ∈ {0} ∪ [2, 2m−2i]} q^{4i+j} N_{(j, 2m−2i−j)}
/// ```
pub fn n5_even_column_atomic(m: i64) -> Combination {
    let mut out = Combination::zero(BasisLabel::Atomic);
    let l2 = 2 * m;
    for i in 0..=m {
        let top = l2 - 2 * i;
        for j in std::iter::once(0).chain(2..=top) {
            out.add_term(w(j, top - j), &LaurentPoly::q_pow(4 * i + j));
        }
    }
    out
}
