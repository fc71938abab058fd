//! Linear combinations of basis elements indexed by dominant weights.
//!
//! A [`Combination`] is a finite sum `Σ c_μ(q) · B_μ` where `B` is one of the
//! bases named by [`BasisLabel`]. The label is carried on the value and
//! checked whenever two combinations meet.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{to_root_coords, Sign, Weight};
use crate::poly::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    /// Kazhdan–Lusztig basis `H̄`.
    Canonical,
    /// Standard basis `H` of the spherical module.
    Standard,
    /// Atomic basis `N`.
    Atomic,
    /// `𝒩ⁱ`, `i` in `2..=6`.
    PreCanonical(u8),
    /// `Ñᵏ`, `k` in `2..=6`.
    Adjusted(u8),
}

impl BasisLabel {
    pub fn pre_canonical(i: u8) -> Result<Self> {
        check_level(i, 2, 6).map(BasisLabel::PreCanonical)
    }

    pub fn adjusted(k: u8) -> Result<Self> {
        check_level(k, 2, 6).map(BasisLabel::Adjusted)
    }

    /// Collapses labels that name the same basis: level 6 of either family is
    /// the canonical basis, and `𝒩²` is the atomic basis.
    pub fn normalized(self) -> Self {
        match self {
            BasisLabel::PreCanonical(6) | BasisLabel::Adjusted(6) => BasisLabel::Canonical,
            BasisLabel::PreCanonical(2) => BasisLabel::Atomic,
            other => other,
        }
    }

    pub fn same_basis(self, other: BasisLabel) -> bool {
        self.normalized() == other.normalized()
    }

    /// Symbol used in plain-text output.
    pub fn text_symbol(self) -> String {
        match self {
            BasisLabel::Canonical => "Hbar".into(),
            BasisLabel::Standard => "H".into(),
            BasisLabel::Atomic => "N".into(),
            BasisLabel::PreCanonical(i) => format!("N^{i}"),
            BasisLabel::Adjusted(k) => format!("Ntilde^{k}"),
        }
    }

    /// Symbol used in LaTeX output, without the subscript.
    pub fn latex_symbol(self) -> String {
        match self {
            BasisLabel::Canonical => r"\underline{\mathbf{H}}".into(),
            BasisLabel::Standard => r"\mathbf{H}".into(),
            BasisLabel::Atomic => r"\mathbf{N}".into(),
            BasisLabel::PreCanonical(i) => format!(r"\mathbf{{N}}^{{{i}}}"),
            BasisLabel::Adjusted(k) => format!(r"\widetilde{{\mathbf{{N}}}}^{{{k}}}"),
        }
    }
}

fn check_level(level: u8, min: u8, max: u8) -> Result<u8> {
    if (min..=max).contains(&level) {
        Ok(level)
    } else {
        Err(Error::LevelOutOfRange { level, min, max })
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Canonical => f.write_str("canonical"),
            BasisLabel::Standard => f.write_str("standard"),
            BasisLabel::Atomic => f.write_str("atomic"),
            BasisLabel::PreCanonical(i) => write!(f, "precanonical-{i}"),
            BasisLabel::Adjusted(k) => write!(f, "adjusted-{k}"),
        }
    }
}

impl FromStr for BasisLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let level = |rest: &str| rest.parse::<u8>().map_err(|e| format!("bad basis level in {s:?}: {e}"));
        match s {
            "canonical" => Ok(BasisLabel::Canonical),
            "standard" => Ok(BasisLabel::Standard),
            "atomic" => Ok(BasisLabel::Atomic),
            _ => {
                if let Some(rest) = s.strip_prefix("precanonical-") {
                    BasisLabel::pre_canonical(level(rest)?).map_err(|e| e.to_string())
                } else if let Some(rest) = s.strip_prefix("adjusted-") {
                    BasisLabel::adjusted(level(rest)?).map_err(|e| e.to_string())
                } else {
                    Err(format!("unknown basis {s:?}"))
                }
            }
        }
    }
}

/// `Σ terms[μ] · B_μ` with every `μ` dominant and every coefficient nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination {
    basis: BasisLabel,
    terms: BTreeMap<Weight, LaurentPoly>,
}

impl Combination {
    pub fn zero(basis: BasisLabel) -> Self {
        Combination { basis, terms: BTreeMap::new() }
    }

    /// The single basis element `B_μ`.
    pub fn unit(basis: BasisLabel, mu: Weight) -> Self {
        let mut c = Self::zero(basis);
        c.add_term(mu, &LaurentPoly::one());
        c
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    /// Same terms, different label. Used where two labels name one basis.
    pub fn relabel(mut self, basis: BasisLabel) -> Self {
        self.basis = basis;
        self
    }

    /// Adds `coeff · B_μ`.
    ///
    /// Panics if `mu` is not dominant: callers straighten weights first.
    pub fn add_term(&mut self, mu: Weight, coeff: &LaurentPoly) {
        assert!(mu.is_dominant(), "combination index {mu} is not dominant");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mu).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mu);
        }
    }

    pub fn coeff(&self, mu: Weight) -> LaurentPoly {
        self.terms.get(&mu).cloned().unwrap_or_default()
    }

    pub fn get(&self, mu: Weight) -> Option<&LaurentPoly> {
        self.terms.get(&mu)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(a, b)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Weight, &LaurentPoly)> {
        self.terms.iter().map(|(&w, p)| (w, p))
    }

    fn check_basis(&self, other: BasisLabel) -> Result<()> {
        if self.basis.same_basis(other) {
            Ok(())
        } else {
            Err(Error::BasisMismatch { left: self.basis, right: other })
        }
    }

    pub fn add(&self, other: &Combination) -> Result<Combination> {
        self.check_basis(other.basis)?;
        let mut out = self.clone();
        for (mu, c) in other.iter() {
            out.add_term(mu, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Combination) -> Result<Combination> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, p: &LaurentPoly) -> Combination {
        let mut out = Combination::zero(self.basis);
        for (mu, c) in self.iter() {
            out.add_term(mu, &(p * c));
        }
        out
    }

    /// `Σ_μ self[μ] · expand(μ)`, where `expand` writes each `B_μ` in the
    /// `target` basis.
    pub fn substitute<F>(&self, target: BasisLabel, mut expand: F) -> Result<Combination>
    where
        F: FnMut(Weight) -> Result<Combination>,
    {
        let mut out = Combination::zero(target);
        for (mu, c) in self.iter() {
            let image = expand(mu)?;
            if !image.basis.same_basis(target) {
                return Err(Error::BasisMismatch { left: target, right: image.basis });
            }
            for (nu, d) in image.iter() {
                out.add_term(nu, &(c * d));
            }
        }
        Ok(out)
    }

    /// Equal as elements of the module: same basis up to normalization and
    /// the same terms.
    pub fn same_element(&self, other: &Combination) -> bool {
        self.basis.same_basis(other.basis) && self.terms == other.terms
    }

    /// Display order: `designated` first if present, the rest by
    /// [`display_key`].
    pub fn sorted_support(&self, designated: Option<Weight>) -> Vec<Weight> {
        sorted_support(self.terms.keys().copied(), designated)
    }

    pub fn to_json_doc(&self, weight: Weight) -> ExpansionJson {
        ExpansionJson {
            basis: self.basis.to_string(),
            weight,
            terms: self
                .sorted_support(Some(weight))
                .into_iter()
                .map(|mu| TermJson { weight: mu, poly: self.terms[&mu].clone() })
                .collect(),
        }
    }

    pub fn from_json_doc(doc: &ExpansionJson) -> std::result::Result<Combination, String> {
        let basis: BasisLabel = doc.basis.parse()?;
        let mut out = Combination::zero(basis);
        for t in &doc.terms {
            if !t.weight.is_dominant() {
                return Err(format!("term weight {} is not dominant", t.weight));
            }
            out.add_term(t.weight, &t.poly);
        }
        Ok(out)
    }
}

/// Unrolls a linear recursion `f(μ) = B_μ + c(μ)·f(next(μ))`, where each
/// `c(μ) = ±q^k`, into `Σ_j (Π c) · B_{μ_j}`.
///
/// `next` returns `None` to stop. The walk is abandoned with an internal
/// error after `2(a+b) + 4` steps.
pub(crate) fn unroll_chain<F>(basis: BasisLabel, start: Weight, mut next: F) -> Result<Combination>
where
    F: FnMut(Weight) -> Option<(i64, Sign, Weight)>,
{
    let guard = 2 * (start.a + start.b) + 4;
    let mut out = Combination::zero(basis);
    let mut mu = start;
    let mut coeff = LaurentPoly::one();
    for _ in 0..=guard {
        out.add_term(mu, &coeff);
        match next(mu) {
            None => return Ok(out),
            Some((k, sign, nu)) => {
                coeff = coeff.scale_qpow(k, sign);
                mu = nu;
            }
        }
    }
    Err(Error::Internal(format!("recursion from {start} in {basis} exceeded {guard} steps")))
}

/// Sort key for display: decreasing height, then decreasing first root
/// coordinate, then decreasing second root coordinate.
pub fn display_key(mu: Weight) -> impl Ord {
    let rc = to_root_coords(mu);
    (Reverse(rc.c1 + rc.c2), Reverse(rc.c1), Reverse(rc.c2))
}

pub fn sorted_support<I: IntoIterator<Item = Weight>>(support: I, designated: Option<Weight>) -> Vec<Weight> {
    let mut found = false;
    let mut rest: Vec<Weight> = support
        .into_iter()
        .filter(|&w| {
            let hit = Some(w) == designated;
            found |= hit;
            !hit
        })
        .collect();
    rest.sort_by_key(|&w| display_key(w));
    match designated {
        Some(d) if found => std::iter::once(d).chain(rest).collect(),
        _ => rest,
    }
}

/// JSON form of an expansion: `{"basis", "weight", "terms": [{"weight", "poly"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub basis: String,
    pub weight: Weight,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub weight: Weight,
    pub poly: LaurentPoly,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b)
    }

    fn q(k: i64) -> LaurentPoly {
        LaurentPoly::q_pow(k)
    }

    #[test]
    fn add_and_scale() {
        let lam = w(1, 1);
        let x = Combination::unit(BasisLabel::Atomic, lam);
        let y = x.scale(&-LaurentPoly::one());
        assert!(x.add(&y).unwrap().is_zero());

        let z = Combination::unit(BasisLabel::Atomic, w(1, 0)).scale(&(&LaurentPoly::one() + &q(1)));
        let scaled = z.scale(&q(1));
        assert_eq!(scaled.coeff(w(1, 0)), &q(1) + &q(2));
        assert_eq!(scaled.len(), 1);

        let mut two = Combination::unit(BasisLabel::Atomic, w(2, 0));
        two.add_term(w(1, 0), &q(1));
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let x = Combination::unit(BasisLabel::Atomic, w(0, 0));
        let y = Combination::unit(BasisLabel::Canonical, w(0, 0));
        assert!(matches!(x.add(&y), Err(Error::BasisMismatch { .. })));
    }

    #[test]
    fn level_six_and_two_normalize() {
        assert!(BasisLabel::PreCanonical(6).same_basis(BasisLabel::Canonical));
        assert!(BasisLabel::Adjusted(6).same_basis(BasisLabel::PreCanonical(6)));
        assert!(BasisLabel::PreCanonical(2).same_basis(BasisLabel::Atomic));
        assert!(!BasisLabel::Adjusted(2).same_basis(BasisLabel::Atomic));
        assert_ne!(BasisLabel::PreCanonical(6), BasisLabel::Canonical);
        assert!(BasisLabel::pre_canonical(7).is_err());
        assert!(BasisLabel::adjusted(1).is_err());
    }

    #[test]
    fn label_strings_round_trip() {
        for label in [
            BasisLabel::Canonical,
            BasisLabel::Standard,
            BasisLabel::Atomic,
            BasisLabel::PreCanonical(3),
            BasisLabel::Adjusted(5),
        ] {
            assert_eq!(label.to_string().parse::<BasisLabel>().unwrap(), label);
        }
        assert!("precanonical-9".parse::<BasisLabel>().is_err());
        assert!("nonsense".parse::<BasisLabel>().is_err());
    }

    #[test]
    fn substitute_edge_cases() {
        let mut x = Combination::unit(BasisLabel::Atomic, w(2, 0));
        x.add_term(w(1, 0), &q(2));
        let same = x.substitute(BasisLabel::Atomic, |mu| Ok(Combination::unit(BasisLabel::Atomic, mu))).unwrap();
        assert_eq!(same, x);

        let empty = Combination::zero(BasisLabel::Atomic);
        let out = empty.substitute(BasisLabel::Canonical, |_| unreachable!()).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.basis(), BasisLabel::Canonical);

        let err = x.substitute(BasisLabel::Canonical, |mu| Ok(Combination::unit(BasisLabel::Standard, mu)));
        assert!(err.is_err());
    }

    #[test]
    fn display_order() {
        assert_eq!(sorted_support([w(0, 4), w(5, 1)], None), vec![w(5, 1), w(0, 4)]);
        assert_eq!(sorted_support([w(3, 3)], Some(w(3, 3))), vec![w(3, 3)]);
        let support = [w(0, 4), w(1, 4), w(2, 3), w(2, 4), w(3, 3), w(4, 2), w(5, 1)];
        assert_eq!(
            sorted_support(support, Some(w(2, 4))),
            vec![w(2, 4), w(3, 3), w(1, 4), w(4, 2), w(2, 3), w(5, 1), w(0, 4)]
        );
    }

    #[test]
    fn display_key_is_injective_on_dominant_weights() {
        let mut seen = std::collections::HashMap::new();
        for a in 0..=12 {
            for b in 0..=12 {
                let rc = to_root_coords(w(a, b));
                let key = (rc.c1 + rc.c2, rc.c1, rc.c2);
                assert!(seen.insert(key, w(a, b)).is_none(), "tie at {a},{b}");
            }
        }
    }

    #[test]
    fn json_doc_round_trip() {
        let mut x = Combination::unit(BasisLabel::PreCanonical(3), w(2, 1));
        x.add_term(w(0, 1), &(&q(3) - &q(1)));
        let doc = x.to_json_doc(w(2, 1));
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(
            text,
            r#"{"basis":"precanonical-3","weight":[2,1],"terms":[{"weight":[2,1],"poly":[[0,1]]},{"weight":[0,1],"poly":[[1,-1],[3,1]]}]}"#
        );
        let parsed: ExpansionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Combination::from_json_doc(&parsed).unwrap(), x);
    }

    fn combo_strategy() -> impl Strategy<Value = Combination> {
        prop::collection::vec(((0i64..4, 0i64..4), prop::collection::vec((0i64..5, -3i64..4), 0..3)), 0..5).prop_map(
            |terms| {
                let mut c = Combination::zero(BasisLabel::Atomic);
                for ((a, b), p) in terms {
                    c.add_term(w(a, b), &LaurentPoly::from_terms(p));
                }
                c
            },
        )
    }

    fn expander(mu: Weight) -> Result<Combination> {
        let mut c = Combination::unit(BasisLabel::Standard, mu);
        if mu.a > 0 {
            c.add_term(w(mu.a - 1, mu.b), &LaurentPoly::monomial(-2, 1));
        }
        c.add_term(w(0, 0), &q(mu.b));
        Ok(c)
    }

    proptest! {
        #[test]
        fn substitute_is_linear(x in combo_strategy(), y in combo_strategy(), k in 0i64..3, c in -3i64..4) {
            let f = |x: &Combination| x.substitute(BasisLabel::Standard, expander).unwrap();
            prop_assert_eq!(f(&x.add(&y).unwrap()), f(&x).add(&f(&y)).unwrap());
            let p = LaurentPoly::monomial(c, k);
            prop_assert_eq!(f(&x.scale(&p)), f(&x).scale(&p));
        }

        #[test]
        fn no_zero_coefficients_stored(x in combo_strategy(), y in combo_strategy()) {
            let s = x.sub(&y).unwrap();
            prop_assert!(s.iter().all(|(_, p)| !p.is_zero()));
        }
    }
}
