//! Kostka–Foulkes polynomials from atomic expansions, and a Freudenthal
//! weight-multiplicity oracle to check them against at `q = 1`.
//!
//! The atomic basis has a closed form in the standard basis,
//! `N_λ = Σ_{μ≤λ} q^{ht(λ−μ)} H_μ`, so substituting it into
//! `H̄_λ = Σ a_{λ,ν} N_ν` gives `H̄_λ = Σ K_{λ,μ}(q) H_μ`.

use std::collections::HashMap;

use crate::adjusted::{
    adjusted2_in_atomic, adjusted_expand_up, adjusted_in_canonical, adjusted_step_down, atomic_second,
};
use crate::combo::{BasisLabel, Combination};
use crate::error::{Error, Result};
use crate::lattice::{
    dominance_leq, dominant_weights_below, height, to_root_coords, x_i_member, x_i_member_closed_form, IndexSet,
    Weight, POSITIVE_ROOTS, RHO,
};
use crate::poly::LaurentPoly;
use crate::precanonical::{
    atomic, closed_form_in_step_basis, closed_form_level, defn_precanonical, inverse_step, n5_even_column_atomic,
    precanonical_in_atomic, step_up, ClosedForm,
};

/// `N_λ` in the standard basis.
pub fn atomic_to_standard(lam: Weight) -> Result<Combination> {
    let mut out = Combination::zero(BasisLabel::Standard);
    for mu in dominant_weights_below(lam)? {
        out.add_term(mu, &LaurentPoly::q_pow(height(lam - mu)));
    }
    Ok(out)
}

/// `H̄_λ` in the standard basis; the coefficients are `K_{λ,μ}(q)`.
pub fn canonical_to_standard(lam: Weight) -> Result<Combination> {
    atomic(lam)?.substitute(BasisLabel::Standard, atomic_to_standard)
}

/// `K_{λ,μ}(q) = Σ_{ν ≥ μ} q^{ht(ν−μ)} a_{λ,ν}(q)`.
///
/// Zero when `μ` is not below `λ`.
pub fn kostka_foulkes(lam: Weight, mu: Weight) -> Result<LaurentPoly> {
    let expansion = atomic(lam)?;
    kostka_from_atomic(&expansion, mu)
}

/// [`kostka_foulkes`] from an already computed atomic expansion.
pub fn kostka_from_atomic(expansion: &Combination, mu: Weight) -> Result<LaurentPoly> {
    let mu = mu.require_dominant()?;
    let mut out = LaurentPoly::zero();
    for (nu, a) in expansion.iter() {
        if dominance_leq(mu, nu) {
            out += &a.scale_qpow(height(nu - mu), crate::lattice::Sign::Plus);
        }
    }
    Ok(out)
}

/// The invariant form with `(α₁,α₁) = 2`, `(α₂,α₂) = 6`:
/// `((a,b)_ϖ, (c₁,c₂)_α) = a·c₁ + 3b·c₂`.
pub fn form(x: Weight, y: Weight) -> i64 {
    let rc = to_root_coords(y);
    x.a * rc.c1 + 3 * x.b * rc.c2
}

/// Weight multiplicity `m_λ(μ)` of the irreducible G2-module with highest
/// weight `λ`, by Freudenthal's recursion.
pub fn freudenthal_multiplicity(lam: Weight, mu: Weight) -> Result<u64> {
    Freudenthal::new(lam)?.multiplicity(mu)
}

/// Memoized Freudenthal recursion for one highest weight.
pub struct Freudenthal {
    lam: Weight,
    norm_top: i64,
    memo: HashMap<Weight, u64>,
}

impl Freudenthal {
    pub fn new(lam: Weight) -> Result<Self> {
        let lam = lam.require_dominant()?;
        let shifted = lam + RHO;
        Ok(Freudenthal { lam, norm_top: form(shifted, shifted), memo: HashMap::new() })
    }

    pub fn multiplicity(&mut self, mu: Weight) -> Result<u64> {
        if !dominance_leq(mu, self.lam) {
            return Ok(0);
        }
        if mu == self.lam {
            return Ok(1);
        }
        if let Some(&m) = self.memo.get(&mu) {
            return Ok(m);
        }
        let mut rhs: i64 = 0;
        for (alpha, _) in POSITIVE_ROOTS {
            let mut k = 1;
            loop {
                let up = mu + k * alpha;
                if !dominance_leq(up, self.lam) {
                    break;
                }
                let m = self.multiplicity(up)? as i64;
                rhs += m * form(up, alpha);
                k += 1;
            }
        }
        rhs *= 2;
        let shifted = mu + RHO;
        let lhs = self.norm_top - form(shifted, shifted);
        let m = if rhs == 0 {
            0
        } else if lhs <= 0 || rhs % lhs != 0 || rhs < 0 {
            return Err(Error::Internal(format!(
                "Freudenthal step at μ={mu} for λ={}: {rhs} / {lhs} is not a non-negative integer",
                self.lam
            )));
        } else {
            (rhs / lhs) as u64
        };
        self.memo.insert(mu, m);
        Ok(m)
    }
}

/// Number of weights in the Weyl-group orbit of a dominant weight.
pub fn orbit_size(mu: Weight) -> u64 {
    match (mu.a > 0, mu.b > 0) {
        (true, true) => 12,
        (false, false) => 1,
        _ => 6,
    }
}

/// `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
pub fn weyl_dimension(lam: Weight) -> Result<u64> {
    let lam = lam.require_dominant()?;
    let (mut num, mut den) = (1i128, 1i128);
    for (alpha, _) in POSITIVE_ROOTS {
        num *= i128::from(form(lam + RHO, alpha));
        den *= i128::from(form(RHO, alpha));
    }
    if num % den != 0 {
        return Err(Error::Internal(format!("Weyl dimension of {lam} is not an integer")));
    }
    u64::try_from(num / den).map_err(|e| Error::Internal(e.to_string()))
}

/// `Σ_{μ dominant} m_λ(μ)·|W·μ|`, which must equal [`weyl_dimension`].
pub fn dimension_from_multiplicities(lam: Weight) -> Result<u64> {
    let mut f = Freudenthal::new(lam)?;
    let mut total = 0;
    for mu in dominant_weights_below(lam)? {
        total += f.multiplicity(mu)? * orbit_size(mu);
    }
    Ok(total)
}

/// Outcome of one named check in a [`VerifyReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub weight: Weight,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

fn expect_eq(lhs: &Combination, rhs: &Combination, what: &str) -> std::result::Result<(), String> {
    if lhs.same_element(rhs) {
        Ok(())
    } else {
        Err(format!("{what}: {lhs:?} != {rhs:?}"))
    }
}

type CheckFn = fn(Weight) -> std::result::Result<(), String>;

// Lets a check use `?` on library results; errors become the failure text.
impl From<Error> for String {
    fn from(e: Error) -> String {
        e.to_string()
    }
}

fn check_positivity(lam: Weight) -> std::result::Result<(), String> {
    // atomic() itself rejects negative coefficients
    atomic(lam).map(|_| ()).map_err(|e| e.to_string())
}

fn check_cross_approach(lam: Weight) -> std::result::Result<(), String> {
    expect_eq(&atomic_second(lam)?, &atomic(lam)?, "adjusted vs pre-canonical route")
}

fn check_round_trip(lam: Weight) -> std::result::Result<(), String> {
    let back = atomic(lam)?.substitute(BasisLabel::Canonical, |mu| defn_precanonical(2, mu))?;
    expect_eq(&back, &Combination::unit(BasisLabel::Canonical, lam), "N² substituted into atomic(λ)")
}

fn check_step_inverse(lam: Weight) -> std::result::Result<(), String> {
    for i in 2..=5 {
        let up = step_up(i, lam)?.substitute(BasisLabel::PreCanonical(i + 1), |mu| inverse_step(i, mu))?;
        expect_eq(&up, &Combination::unit(BasisLabel::PreCanonical(i + 1), lam), "inverse_step ∘ step_up")?;
        let down = inverse_step(i, lam)?.substitute(BasisLabel::PreCanonical(i), |mu| step_up(i, mu))?;
        expect_eq(&down, &Combination::unit(BasisLabel::PreCanonical(i), lam), "step_up ∘ inverse_step")?;
    }
    Ok(())
}

fn check_closed_forms(lam: Weight) -> std::result::Result<(), String> {
    for which in [ClosedForm::SixInFive, ClosedForm::FiveInFourThree, ClosedForm::FourInThree, ClosedForm::ThreeInTwo] {
        let closed = closed_form_in_step_basis(which, lam)?;
        let rec = step_up(closed_form_level(which), lam)?;
        if closed != rec {
            return Err(format!("{which:?}: closed form {closed:?} != recursion {rec:?}"));
        }
    }
    if lam.a == 0 && lam.b % 2 == 0 {
        expect_eq(&precanonical_in_atomic(5, lam)?, &n5_even_column_atomic(lam.b / 2), "N⁵_(0,2m) regrouping")?;
    }
    Ok(())
}

fn check_levelwise_definition(lam: Weight) -> std::result::Result<(), String> {
    for i in 2..=5 {
        let via = inverse_step(i, lam)?.substitute(BasisLabel::Canonical, |mu| defn_precanonical(i + 1, mu))?;
        expect_eq(&defn_precanonical(i, lam)?, &via, "definition vs inverse step")?;
    }
    Ok(())
}

fn check_adjusted_steps(lam: Weight) -> std::result::Result<(), String> {
    for k in 2..=5 {
        let up = adjusted_expand_up(k, lam)?;
        if !up.iter().all(|(_, c)| c.is_nonnegative()) {
            return Err(format!("Ñ^{} in Ñ^{k} is not positive", k + 1));
        }
        let back = up.substitute(BasisLabel::Adjusted(k + 1), |mu| adjusted_step_down(k, mu))?;
        expect_eq(&back, &Combination::unit(BasisLabel::Adjusted(k + 1), lam), "step_down ∘ expand_up")?;
        let fwd = adjusted_step_down(k, lam)?.substitute(BasisLabel::Adjusted(k), |mu| adjusted_expand_up(k, mu))?;
        expect_eq(&fwd, &Combination::unit(BasisLabel::Adjusted(k), lam), "expand_up ∘ step_down")?;
    }
    Ok(())
}

fn check_adjusted_canonical(lam: Weight) -> std::result::Result<(), String> {
    for k in 2..=6u8 {
        let mut layered = Combination::unit(BasisLabel::Adjusted(k), lam);
        for level in k..=5 {
            layered = layered.substitute(BasisLabel::Adjusted(level + 1), |mu| adjusted_step_down(level, mu))?;
        }
        expect_eq(&layered, &adjusted_in_canonical(k, lam)?, "layered Ñ vs subset sum")?;
    }
    for set in IndexSet::all() {
        if x_i_member(set, lam)? != x_i_member_closed_form(set, lam)? {
            return Err(format!("X_{set} membership disagrees with closed form"));
        }
    }
    Ok(())
}

fn check_adjusted2(lam: Weight) -> std::result::Result<(), String> {
    let a2 = adjusted2_in_atomic(lam)?;
    if !a2.iter().all(|(_, c)| c.is_nonnegative()) {
        return Err("Ñ² has a negative atomic coefficient".into());
    }
    let lhs = adjusted_in_canonical(2, lam)?.sub(&defn_precanonical(2, lam)?)?;
    let rhs = a2
        .sub(&Combination::unit(BasisLabel::Atomic, lam))?
        .substitute(BasisLabel::Canonical, |mu| defn_precanonical(2, mu))?;
    expect_eq(&lhs, &rhs, "Ñ² − N² in H̄")
}

fn check_kostka(lam: Weight) -> std::result::Result<(), String> {
    let expansion = atomic(lam)?;
    let below = dominant_weights_below(lam)?;
    let mut kf = HashMap::new();
    for &mu in &below {
        kf.insert(mu, kostka_from_atomic(&expansion, mu)?);
    }
    let mut freud = Freudenthal::new(lam)?;
    for &mu in &below {
        let k = &kf[&mu];
        let m = freud.multiplicity(mu)?;
        if k.eval_at_one() != m as i64 {
            return Err(format!("K_{{{lam},{mu}}}(1) = {} but m_λ(μ) = {m}", k.eval_at_one()));
        }
        let ht = height(lam - mu);
        if k.degree() != Some(ht) || k.leading_coeff() != Some(1) {
            return Err(format!("K_{{{lam},{mu}}} = {k} is not monic of degree {ht}"));
        }
    }
    if !kf[&lam].is_one() {
        return Err("K_{λ,λ} ≠ 1".into());
    }
    let standard = canonical_to_standard(lam)?;
    for (mu, c) in standard.iter() {
        if kf.get(&mu) != Some(c) {
            return Err(format!("canonical_to_standard disagrees with K at {mu}"));
        }
    }
    if standard.len() != below.len() {
        return Err("support of H̄_λ in the standard basis is not {μ ≤ λ}".into());
    }
    Ok(())
}

fn check_monotonicity(lam: Weight) -> std::result::Result<(), String> {
    let expansion = atomic(lam)?;
    let below = dominant_weights_below(lam)?;
    let kf: HashMap<_, _> =
        below.iter().map(|&mu| kostka_from_atomic(&expansion, mu).map(|k| (mu, k))).collect::<Result<_>>()?;
    for &mu in &below {
        for &nu in &below {
            if !dominance_leq(mu, nu) {
                continue;
            }
            let diff = &kf[&mu] - &kf[&nu].scale_qpow(height(nu - mu), crate::lattice::Sign::Plus);
            if !diff.is_nonnegative() {
                return Err(format!("K_{{{lam},{mu}}} − q^ht K_{{{lam},{nu}}} = {diff}"));
            }
        }
    }
    Ok(())
}

/// The checks [`verify`] runs, in report order.
pub const CHECKS: [(&str, CheckFn); 12] = [
    ("atomic positivity", check_positivity),
    ("cross-approach equality", check_cross_approach),
    ("definitional round-trip", check_round_trip),
    ("step_up/inverse_step inverse", check_step_inverse),
    ("closed forms", check_closed_forms),
    ("level-wise definition", check_levelwise_definition),
    ("adjusted step consistency", check_adjusted_steps),
    ("adjusted canonical expansion", check_adjusted_canonical),
    ("adjusted N2 vs atomic", check_adjusted2),
    ("KF(1) = multiplicity, monic degree", check_kostka),
    ("KF monotonicity", check_monotonicity),
    ("Weyl dimension", check_dimension),
];

fn check_dimension(lam: Weight) -> std::result::Result<(), String> {
    let (lhs, rhs) = (dimension_from_multiplicities(lam)?, weyl_dimension(lam)?);
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("Σ m·|orbit| = {lhs}, Weyl formula = {rhs}"))
    }
}

/// Runs every check in [`CHECKS`] for one dominant weight.
pub fn verify(lam: Weight) -> Result<VerifyReport> {
    let lam = lam.require_dominant()?;
    let checks = CHECKS.iter().map(|&(name, f)| CheckResult { name, failure: f(lam).err() }).collect();
    Ok(VerifyReport { weight: lam, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b)
    }

    fn q(k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }

    #[test]
    fn atomic_to_standard_examples() {
        let mut e = Combination::unit(BasisLabel::Standard, w(1, 0));
        e.add_term(w(0, 0), &q(3));
        assert_eq!(atomic_to_standard(w(1, 0)).unwrap(), e);
        assert_eq!(atomic_to_standard(w(0, 0)).unwrap(), Combination::unit(BasisLabel::Standard, w(0, 0)));
        let mut e = Combination::unit(BasisLabel::Standard, w(0, 1));
        e.add_term(w(1, 0), &q(2));
        e.add_term(w(0, 0), &q(5));
        assert_eq!(atomic_to_standard(w(0, 1)).unwrap(), e);
    }

    #[test]
    fn small_kostka_values() {
        assert_eq!(kostka_foulkes(w(0, 1), w(0, 0)).unwrap(), &q(1) + &q(5));
        assert_eq!(kostka_foulkes(w(2, 0), w(0, 0)).unwrap(), LaurentPoly::from_terms([(6, 1), (4, 1), (2, 1)]));
        assert!(kostka_foulkes(w(1, 0), w(0, 1)).unwrap().is_zero());
        for lam in [w(0, 0), w(3, 1), w(2, 2)] {
            assert!(kostka_foulkes(lam, lam).unwrap().is_one());
        }
        assert!(kostka_foulkes(w(1, 0), w(-1, 0)).is_err());
        let col = canonical_to_standard(w(0, 1)).unwrap();
        assert_eq!(col.coeff(w(0, 0)), &q(1) + &q(5));
        assert!(col.coeff(w(0, 1)).is_one());
    }

    #[test]
    fn freudenthal_examples() {
        assert_eq!(freudenthal_multiplicity(w(1, 0), w(0, 0)).unwrap(), 1);
        assert_eq!(freudenthal_multiplicity(w(0, 1), w(0, 0)).unwrap(), 2);
        assert_eq!(freudenthal_multiplicity(w(2, 0), w(0, 0)).unwrap(), 3);
        assert_eq!(freudenthal_multiplicity(w(3, 2), w(3, 2)).unwrap(), 1);
        // short roots of the 7-dimensional module
        assert_eq!(freudenthal_multiplicity(w(1, 0), w(-1, 1)).unwrap(), 1);
        assert_eq!(freudenthal_multiplicity(w(1, 0), w(0, 1)).unwrap(), 0);
    }

    #[test]
    fn weyl_dimensions() {
        for (lam, dim) in [(w(0, 0), 1), (w(1, 0), 7), (w(0, 1), 14), (w(2, 0), 27), (w(1, 1), 64)] {
            assert_eq!(weyl_dimension(lam).unwrap(), dim);
            assert_eq!(dimension_from_multiplicities(lam).unwrap(), dim, "{lam}");
        }
    }

    #[test]
    fn verify_small_weights() {
        for lam in [w(0, 0), w(1, 1), w(2, 4), w(0, 4)] {
            let report = verify(lam).unwrap();
            assert_eq!(report.checks.len(), CHECKS.len());
            assert!(report.all_passed(), "{report:?}");
        }
    }
}
