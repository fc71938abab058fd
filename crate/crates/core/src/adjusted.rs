//! Adjusted pre-canonical bases and the second route to the atomic
//! decomposition.
//!
//! `Ñ⁶ = H̄`, and for `k` in `2..=5`
//!
//! ```text
//! Ñᵏ_λ = Ñᵏ⁺¹_λ − q Ñᵏ⁺¹_{λ−γ_k}   if λ ∈ X_k,
//! Ñᵏ_λ = Ñᵏ⁺¹_λ                    otherwise.
//! ```
//!
//! Inverting one layer only produces powers of `q`, so `H̄_λ` is positive in
//! `Ñ²`. [`adjusted2_in_atomic`] then writes each `Ñ²_λ` in the atomic basis
//! with non-negative coefficients.

use std::collections::HashMap;

use crate::combo::{unroll_chain, BasisLabel, Combination};
use crate::error::{Error, Result};
use crate::lattice::{gamma, x_i_member, x_set_member, IndexSet, Sign, Weight};
use crate::poly::LaurentPoly;
use crate::precanonical::check_atomic_expansion;

fn check_level(k: u8, min: u8, max: u8) -> Result<u8> {
    if (min..=max).contains(&k) {
        Ok(k)
    } else {
        Err(Error::LevelOutOfRange { level: k, min, max })
    }
}

/// `Ñᵏ_λ` in `Ñᵏ⁺¹`.
pub fn adjusted_step_down(k: u8, lam: Weight) -> Result<Combination> {
    let k = check_level(k, 2, 5)?;
    let lam = lam.require_dominant()?;
    let mut out = Combination::unit(BasisLabel::Adjusted(k + 1), lam);
    if x_set_member(k, lam)? {
        out.add_term(lam - gamma(k)?, &LaurentPoly::monomial(-1, 1));
    }
    Ok(out)
}

/// `Ñᵏ⁺¹_λ` in `Ñᵏ`: `Σ_j q^j Ñᵏ_{λ − jγ_k}` while the chain stays in `X_k`.
pub fn adjusted_expand_up(k: u8, lam: Weight) -> Result<Combination> {
    let k = check_level(k, 2, 5)?;
    let lam = lam.require_dominant()?;
    let g = gamma(k)?;
    let out = unroll_chain(BasisLabel::Adjusted(k), lam, |mu| match x_set_member(k, mu) {
        Ok(true) => Some((1, Sign::Plus, mu - g)),
        _ => None,
    })?;
    debug_assert!(out.iter().all(|(_, c)| c.is_nonnegative()));
    Ok(out)
}

/// `Ñᵏ_λ = Σ_{I ∈ Uᵏ_λ} (−q)^|I| H̄_{λ−Γ_I}`, for `k` in `2..=6`, where
/// `Uᵏ_λ` collects the `I ⊆ {2,..,5}` with `min I ≥ k` and `λ ∈ X_I`.
pub fn adjusted_in_canonical(k: u8, lam: Weight) -> Result<Combination> {
    let k = check_level(k, 2, 6)?;
    let lam = lam.require_dominant()?;
    let mut out = Combination::zero(BasisLabel::Canonical);
    for set in IndexSet::all_with_min_at_least(k) {
        if !x_i_member(set, lam)? {
            continue;
        }
        let mu = lam - set.gamma_sum();
        if !mu.is_dominant() {
            return Err(Error::Internal(format!("{lam} ∈ X_{set} but {lam} − Γ_{set} = {mu} is not dominant")));
        }
        let sign = if set.len() % 2 == 0 { 1 } else { -1 };
        out.add_term(mu, &LaurentPoly::monomial(sign, i64::from(set.len())));
    }
    Ok(out)
}

/// `Ñ²_λ` in the atomic basis.
pub fn adjusted2_in_atomic(lam: Weight) -> Result<Combination> {
    Adjusted2Cache::new().get(lam)
}

/// Memo for [`adjusted2_in_atomic`].
#[derive(Default)]
pub struct Adjusted2Cache {
    table: HashMap<Weight, Combination>,
}

impl Adjusted2Cache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every recursive edge lowers `a + b`: `(2,b) → (0,b)`,
    /// `(1,b) → (1,b−1)`, `(0,b) → (0,b−2)`.
    pub fn get(&mut self, lam: Weight) -> Result<Combination> {
        let lam = lam.require_dominant()?;
        if let Some(hit) = self.table.get(&lam) {
            return Ok(hit.clone());
        }
        let Weight { a, b } = lam;
        let q = LaurentPoly::q_pow;
        let mut out = Combination::unit(BasisLabel::Atomic, lam);
        if a >= 3 || a + b < 2 {
            // Ñ² and N² agree
        } else if a == 2 {
            out = out.add(&self.get(Weight::new(0, b))?.scale(&q(2)))?;
        } else if a == 1 {
            out = out.add(&self.get(Weight::new(1, b - 1))?.scale(&q(2)))?;
            for j in 1..=b {
                out.add_term(Weight::new(1 + j, b - j), &q(j));
            }
        } else {
            out = out.add(&self.get(Weight::new(0, b - 2))?.scale(&q(4)))?;
            for j in 2..=b {
                out.add_term(Weight::new(j, b - j), &q(j));
            }
        }
        if let Some((mu, c)) = out.iter().find(|(_, c)| !c.is_nonnegative()) {
            return Err(Error::Internal(format!("Ñ²_{lam} has coefficient {c} at N_{mu}")));
        }
        self.table.insert(lam, out.clone());
        Ok(out)
    }
}

/// `H̄_λ` in the atomic basis via the adjusted bases.
///
/// Runs the same output checks as [`crate::precanonical::atomic`].
pub fn atomic_second(lam: Weight) -> Result<Combination> {
    let lam = lam.require_dominant()?;
    let mut current = Combination::unit(BasisLabel::Adjusted(6), lam);
    for k in (2..=5).rev() {
        current = current.substitute(BasisLabel::Adjusted(k), |mu| adjusted_expand_up(k, mu))?;
        if let Some((mu, c)) = current.iter().find(|(_, c)| !c.is_nonnegative()) {
            return Err(Error::Internal(format!("H̄_{lam} in Ñ^{k} has coefficient {c} at {mu}")));
        }
    }
    let mut cache = Adjusted2Cache::new();
    let out = current.substitute(BasisLabel::Atomic, |mu| cache.get(mu))?;
    check_atomic_expansion(lam, &out)?;
    Ok(out)
}
