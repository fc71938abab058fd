//! The weight lattice of G2 in fundamental-weight coordinates.
//!
//! A [`Weight`] `(a, b)` stands for `a·ϖ₁ + b·ϖ₂`. The simple roots are
//! `α₁ = (2,−1)` and `α₂ = (−3,2)`, and `ϖ₁ = 2α₁ + α₂`, `ϖ₂ = 3α₁ + 2α₂`,
//! so converting to simple-root coordinates is the fixed linear map
//! `(a, b) ↦ (2a + 3b, a + 2b)`.
//!
//! Also here: the dominance order, the ρ-shifted ("dot") action of the
//! finite Weyl group, and the sets `X_k` / `X_I` that drive the adjusted
//! bases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `a·ϖ₁ + b·ϖ₂` of the weight lattice.
///
/// Arithmetic is checked; overflowing a coordinate panics instead of wrapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight::new(0, 0);

    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    /// Errors with [`Error::NotDominant`] unless `self` is dominant.
    pub fn require_dominant(self) -> Result<Self> {
        if self.is_dominant() {
            Ok(self)
        } else {
            Err(Error::NotDominant(self))
        }
    }

    pub fn root_coords(self) -> RootCoords {
        to_root_coords(self)
    }

    pub fn height(self) -> i64 {
        height(self)
    }
}

impl From<[i64; 2]> for Weight {
    fn from([a, b]: [i64; 2]) -> Self {
        Weight::new(a, b)
    }
}

impl From<Weight> for [i64; 2] {
    fn from(w: Weight) -> Self {
        [w.a, w.b]
    }
}

impl From<(i64, i64)> for Weight {
    fn from((a, b): (i64, i64)) -> Self {
        Weight::new(a, b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn checked(op: Option<i64>) -> i64 {
    op.expect("weight coordinate overflow")
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(checked(self.a.checked_add(rhs.a)), checked(self.b.checked_add(rhs.b)))
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(checked(self.a.checked_sub(rhs.a)), checked(self.b.checked_sub(rhs.b)))
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(checked(self.a.checked_neg()), checked(self.b.checked_neg()))
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight::new(checked(self.checked_mul(rhs.a)), checked(self.checked_mul(rhs.b)))
    }
}

/// Coefficients `(c1, c2)` of `c1·α₁ + c2·α₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootCoords {
    pub c1: i64,
    pub c2: i64,
}

impl RootCoords {
    pub fn is_nonnegative(self) -> bool {
        self.c1 >= 0 && self.c2 >= 0
    }
}

pub const ALPHA1: Weight = Weight::new(2, -1);
pub const ALPHA2: Weight = Weight::new(-3, 2);
pub const RHO: Weight = Weight::new(1, 1);

/// The positive root of height `i`, for `i` in `2..=5`.
pub const GAMMA2: Weight = Weight::new(-1, 1);
pub const GAMMA3: Weight = Weight::new(1, 0);
pub const GAMMA4: Weight = Weight::new(3, -1);
pub const GAMMA5: Weight = Weight::new(0, 1);

/// The six positive roots with their heights, in increasing height.
pub const POSITIVE_ROOTS: [(Weight, i64); 6] =
    [(ALPHA1, 1), (ALPHA2, 1), (GAMMA2, 2), (GAMMA3, 3), (GAMMA4, 4), (GAMMA5, 5)];

const PHI_GE: [&[Weight]; 7] = [
    &[ALPHA1, ALPHA2, GAMMA2, GAMMA3, GAMMA4, GAMMA5],
    &[ALPHA1, ALPHA2, GAMMA2, GAMMA3, GAMMA4, GAMMA5],
    &[GAMMA2, GAMMA3, GAMMA4, GAMMA5],
    &[GAMMA3, GAMMA4, GAMMA5],
    &[GAMMA4, GAMMA5],
    &[GAMMA5],
    &[],
];

/// Positive roots of height at least `i`. Empty for `i ≥ 6`.
pub fn roots_of_height_at_least(i: u8) -> &'static [Weight] {
    PHI_GE[usize::from(i.min(6))]
}

/// `γ_k` for `k` in `2..=5`.
pub fn gamma(k: u8) -> Result<Weight> {
    match k {
        2 => Ok(GAMMA2),
        3 => Ok(GAMMA3),
        4 => Ok(GAMMA4),
        5 => Ok(GAMMA5),
        _ => Err(Error::LevelOutOfRange { level: k, min: 2, max: 5 }),
    }
}

pub fn to_root_coords(w: Weight) -> RootCoords {
    RootCoords { c1: checked((2 * w.a).checked_add(3 * w.b)), c2: checked(w.a.checked_add(2 * w.b)) }
}

/// Sum of simple-root coordinates, `3a + 5b`.
pub fn height(w: Weight) -> i64 {
    let rc = to_root_coords(w);
    rc.c1 + rc.c2
}

/// `mu ≤ lam` in the dominance order: `lam − mu` is a non-negative
/// combination of simple roots.
pub fn dominance_leq(mu: Weight, lam: Weight) -> bool {
    to_root_coords(lam - mu).is_nonnegative()
}

/// A simple reflection of the finite Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Simple {
    S1,
    S2,
}

impl TryFrom<u8> for Simple {
    type Error = Error;
    fn try_from(i: u8) -> Result<Self> {
        match i {
            1 => Ok(Simple::S1),
            2 => Ok(Simple::S2),
            _ => Err(Error::LevelOutOfRange { level: i, min: 1, max: 2 }),
        }
    }
}

fn reflect_linear(s: Simple, v: Weight) -> Weight {
    match s {
        Simple::S1 => Weight::new(-v.a, v.a + v.b),
        Simple::S2 => Weight::new(v.a + 3 * v.b, -v.b),
    }
}

/// `s·w = s(w + ρ) − ρ`.
pub fn dot_reflect(s: Simple, w: Weight) -> Weight {
    reflect_linear(s, w + RHO) - RHO
}

/// `±1`, the sign `(−1)^ℓ(w)` of a Weyl group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Result of straightening a weight under the dot action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignedDominant {
    Singular,
    Regular { sign: Sign, rep: Weight },
}

/// |W_f| = 12; a reduced straightening path is at most 6 reflections long.
const STRAIGHTEN_CAP: usize = 12;

/// Move `w` into the dominant chamber by the dot action.
///
/// Returns `Singular` when `w + ρ` lies on a wall, otherwise the dominant
/// representative `w_λ·w` together with `(−1)^ℓ(w_λ)`.
pub fn dominant_rep(w: Weight) -> SignedDominant {
    let mut v = w + RHO;
    let mut sign = Sign::Plus;
    let mut steps = 0;
    while v.a < 0 || v.b < 0 {
        let s = if v.a < 0 { Simple::S1 } else { Simple::S2 };
        v = reflect_linear(s, v);
        sign = sign.flip();
        steps += 1;
        assert!(steps <= STRAIGHTEN_CAP, "internal error: straightening {w} did not terminate");
    }
    if v.a == 0 || v.b == 0 {
        SignedDominant::Singular
    } else {
        SignedDominant::Regular { sign, rep: v - RHO }
    }
}

fn check_k(k: u8) -> Result<u8> {
    if (2..=5).contains(&k) {
        Ok(k)
    } else {
        Err(Error::LevelOutOfRange { level: k, min: 2, max: 5 })
    }
}

/// Membership in `X_k` for `k` in `2..=5`.
pub fn x_set_member(k: u8, lam: Weight) -> Result<bool> {
    let k = check_k(k)?;
    let lam = lam.require_dominant()?;
    Ok(x_member_unchecked(k, lam))
}

fn x_member_unchecked(k: u8, lam: Weight) -> bool {
    match k {
        5 => lam.b >= 1,
        4 => lam.a >= 3,
        3 => lam.a >= 2,
        2 => lam.a >= 2 && lam.b >= 1,
        _ => unreachable!(),
    }
}

/// A subset of `{2, 3, 4, 5}`, stored as a bitmask over bits 2..=5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(u8);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);
    const MASK: u8 = 0b11_1100;

    pub fn from_indices(indices: &[u8]) -> Result<Self> {
        let mut bits = 0u8;
        for &i in indices {
            bits |= 1 << check_k(i)?;
        }
        Ok(IndexSet(bits))
    }

    /// All 16 subsets, in increasing bitmask order.
    pub fn all() -> impl Iterator<Item = IndexSet> {
        (0u8..16).map(|m| IndexSet(m << 2))
    }

    /// All subsets whose minimum is at least `k` (the empty set included).
    pub fn all_with_min_at_least(k: u8) -> impl Iterator<Item = IndexSet> {
        Self::all().filter(move |s| IndexSet::min(*s).is_none_or(|m| m >= k))
    }

    pub fn contains(self, i: u8) -> bool {
        (2..=5).contains(&i) && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> u32 {
        (self.0 & Self::MASK).count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<u8> {
        self.iter().next()
    }

    pub fn without(self, i: u8) -> IndexSet {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (2u8..=5).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// `Γ_I = Σ_{i∈I} γ_i`.
    pub fn gamma_sum(self) -> Weight {
        self.iter().fold(Weight::ZERO, |acc, i| acc + gamma(i).expect("index in 2..=5"))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Membership in `X_I`, by the recursive definition:
/// `X_∅ = X⁺` and `X_I = {λ ∈ X_{i₀} : λ − γ_{i₀} ∈ X_{I∖{i₀}}}` with `i₀ = min I`.
pub fn x_i_member(set: IndexSet, lam: Weight) -> Result<bool> {
    let lam = lam.require_dominant()?;
    Ok(x_i_member_unchecked(set, lam))
}

fn x_i_member_unchecked(set: IndexSet, lam: Weight) -> bool {
    match set.min() {
        None => lam.is_dominant(),
        Some(i0) => {
            x_member_unchecked(i0, lam) && {
                let next = lam - gamma(i0).expect("index in 2..=5");
                next.is_dominant() && x_i_member_unchecked(set.without(i0), next)
            }
        }
    }
}

/// Closed-form membership conditions for `X_I`, one row per subset.
///
/// Kept as a cross-check against [`x_i_member`]; the recursive definition is
/// the one the rest of the crate uses.
pub fn x_i_member_closed_form(set: IndexSet, lam: Weight) -> Result<bool> {
    let Weight { a, b } = lam.require_dominant()?;
    let rows: [(&[u8], bool); 16] = [
        (&[], true),
        (&[2], a > 1 && b > 0),
        (&[3], a > 1),
        (&[4], a > 2),
        (&[5], b > 0),
        (&[2, 3], a > 1 && b > 0),
        (&[2, 4], a > 1 && b > 0),
        (&[2, 5], a > 1 && b > 1),
        (&[3, 4], a > 3),
        (&[3, 5], a > 1 && b > 0),
        (&[4, 5], a > 2),
        (&[2, 3, 4], a > 2 && b > 0),
        (&[2, 3, 5], a > 1 && b > 1),
        (&[2, 4, 5], a > 1 && b > 0),
        (&[3, 4, 5], a > 3),
        (&[2, 3, 4, 5], a > 2 && b > 0),
    ];
    for (indices, holds) in rows {
        if IndexSet::from_indices(indices)? == set {
            return Ok(holds);
        }
    }
    unreachable!("every subset of {{2,3,4,5}} has a row")
}

/// All dominant `μ ≤ λ`.
///
/// The root-coordinate bounds `2c + 3d ≤ 2a + 3b` and `c + 2d ≤ a + 2b` make
/// the search box finite.
pub fn dominant_weights_below(lam: Weight) -> Result<Vec<Weight>> {
    let lam = lam.require_dominant()?;
    let rc = to_root_coords(lam);
    let mut out = Vec::new();
    for c in 0..=rc.c1 / 2 {
        for d in 0..=rc.c2 / 2 {
            let mu = Weight::new(c, d);
            if dominance_leq(mu, lam) {
                out.push(mu);
            }
        }
    }
    Ok(out)
}

/// All dominant weights `(a, b)` with `a ≤ max_a` and `b ≤ max_b`.
pub fn dominant_box(max_a: i64, max_b: i64) -> impl Iterator<Item = Weight> {
    (0..=max_a).flat_map(move |a| (0..=max_b).map(move |b| Weight::new(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(a: i64, b: i64) -> Weight {
        Weight::new(a, b)
    }

    #[test]
    fn root_coords_of_fundamental_weights() {
        assert_eq!(to_root_coords(w(1, 0)), RootCoords { c1: 2, c2: 1 });
        assert_eq!(to_root_coords(w(0, 1)), RootCoords { c1: 3, c2: 2 });
        assert_eq!(to_root_coords(w(0, 0)), RootCoords { c1: 0, c2: 0 });
    }

    #[test]
    fn root_table_is_consistent() {
        assert_eq!(to_root_coords(ALPHA1), RootCoords { c1: 1, c2: 0 });
        assert_eq!(to_root_coords(ALPHA2), RootCoords { c1: 0, c2: 1 });
        for (root, ht) in POSITIVE_ROOTS {
            assert_eq!(height(root), ht, "{root}");
        }
        assert_eq!(GAMMA2, ALPHA1 + ALPHA2);
        assert_eq!(GAMMA3, 2 * ALPHA1 + ALPHA2);
        assert_eq!(GAMMA4, 3 * ALPHA1 + ALPHA2);
        assert_eq!(GAMMA5, 3 * ALPHA1 + 2 * ALPHA2);
        let sum = POSITIVE_ROOTS.iter().fold(Weight::ZERO, |acc, (r, _)| acc + *r);
        assert_eq!(sum, 2 * RHO);
        assert_eq!(roots_of_height_at_least(2).len(), 4);
        assert_eq!(roots_of_height_at_least(5), &[GAMMA5]);
        assert!(roots_of_height_at_least(6).is_empty());
    }

    #[test]
    fn heights() {
        assert_eq!(height(GAMMA5), 5);
        assert_eq!(height(GAMMA3), 3);
        assert_eq!(height(w(0, 0)), 0);
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(w(0, 0), w(1, 0)));
        assert!(dominance_leq(w(1, 0), w(0, 1)));
        assert!(!dominance_leq(w(0, 1), w(1, 0)));
    }

    #[test]
    fn dot_reflection_examples() {
        assert_eq!(dot_reflect(Simple::S1, w(-2, 1)), w(0, 0));
        assert_eq!(dot_reflect(Simple::S2, w(3, -2)), w(0, 0));
        assert!(Simple::try_from(3).is_err());
    }

    #[test]
    fn dot_reflection_matches_wall_formulas() {
        // s1·(−k−1, n) = (k−1, n−k) and s2·(n, −k−1) = (n−3k, k−1)
        for k in -6..=6 {
            for n in -6..=6 {
                assert_eq!(dot_reflect(Simple::S1, w(-k - 1, n)), w(k - 1, n - k));
                assert_eq!(dot_reflect(Simple::S2, w(n, -k - 1)), w(n - 3 * k, k - 1));
            }
        }
    }

    #[test]
    fn dominant_rep_examples() {
        for n in -10..=10 {
            assert_eq!(dominant_rep(w(-1, n)), SignedDominant::Singular);
            assert_eq!(dominant_rep(w(n, -1)), SignedDominant::Singular);
        }
        assert_eq!(dominant_rep(w(3, 2)), SignedDominant::Regular { sign: Sign::Plus, rep: w(3, 2) });
        assert_eq!(dominant_rep(w(-2, 1)), SignedDominant::Regular { sign: Sign::Minus, rep: w(0, 0) });
    }

    #[test]
    fn regular_orbit_of_zero_has_twelve_elements() {
        // The dot-orbit of 0 is W·ρ − ρ; every element straightens back to 0.
        let mut orbit = vec![w(0, 0)];
        let mut i = 0;
        while i < orbit.len() {
            for s in [Simple::S1, Simple::S2] {
                let next = dot_reflect(s, orbit[i]);
                if !orbit.contains(&next) {
                    orbit.push(next);
                }
            }
            i += 1;
        }
        assert_eq!(orbit.len(), 12);
        for x in orbit {
            assert!(matches!(dominant_rep(x), SignedDominant::Regular { rep, .. } if rep == w(0, 0)));
        }
    }

    #[test]
    fn dominance_is_a_partial_order() {
        let pts: Vec<_> = dominant_box(8, 8).collect();
        for &x in &pts {
            assert!(dominance_leq(x, x));
            for &y in &pts {
                if dominance_leq(x, y) && dominance_leq(y, x) {
                    assert_eq!(x, y);
                }
                if dominance_leq(x, y) {
                    assert!(height(y) - height(x) >= 0);
                    assert_eq!(height(y) - height(x), height(y - x));
                    for &z in &pts {
                        if dominance_leq(y, z) {
                            assert!(dominance_leq(x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn x_set_examples() {
        assert!(x_set_member(4, w(3, 0)).unwrap());
        assert!(!x_set_member(2, w(2, 0)).unwrap());
        assert!(!x_set_member(5, w(0, 0)).unwrap());
        assert_eq!(x_set_member(5, w(0, -1)), Err(Error::NotDominant(w(0, -1))));
        assert!(x_set_member(6, w(0, 0)).is_err());
    }

    #[test]
    fn x_set_shift_stays_dominant() {
        for k in 2..=5 {
            for lam in dominant_box(10, 10) {
                if x_set_member(k, lam).unwrap() {
                    assert!((lam - gamma(k).unwrap()).is_dominant(), "k={k} {lam}");
                }
            }
        }
    }

    #[test]
    fn x_i_examples() {
        let s = |v: &[u8]| IndexSet::from_indices(v).unwrap();
        assert!(x_i_member(s(&[3, 4]), w(4, 0)).unwrap());
        assert!(!x_i_member(s(&[2, 5]), w(2, 1)).unwrap());
        for lam in dominant_box(5, 5) {
            assert!(x_i_member(IndexSet::EMPTY, lam).unwrap());
        }
        assert!(x_i_member(IndexSet::EMPTY, w(-1, 0)).is_err());
    }

    #[test]
    fn x_i_recursive_matches_closed_form() {
        for set in IndexSet::all() {
            for lam in dominant_box(10, 10) {
                assert_eq!(x_i_member(set, lam).unwrap(), x_i_member_closed_form(set, lam).unwrap(), "I={set} λ={lam}");
            }
        }
    }

    #[test]
    fn index_set_basics() {
        let s = IndexSet::from_indices(&[5, 3]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.min(), Some(3));
        assert_eq!(s.to_string(), "{3,5}");
        assert_eq!(s.gamma_sum(), GAMMA3 + GAMMA5);
        assert_eq!(IndexSet::all().count(), 16);
        assert_eq!(IndexSet::all_with_min_at_least(4).count(), 4);
        assert_eq!(IndexSet::all_with_min_at_least(6).count(), 1);
        assert!(IndexSet::from_indices(&[1]).is_err());
    }

    #[test]
    fn dominant_weights_below_small() {
        assert_eq!(dominant_weights_below(w(1, 0)).unwrap(), vec![w(0, 0), w(1, 0)]);
        let below = dominant_weights_below(w(0, 1)).unwrap();
        assert_eq!(below, vec![w(0, 0), w(0, 1), w(1, 0)]);
    }

    proptest! {
        #[test]
        fn dot_reflections_are_involutions(a in -50i64..50, b in -50i64..50, s in prop::bool::ANY) {
            let s = if s { Simple::S1 } else { Simple::S2 };
            prop_assert_eq!(dot_reflect(s, dot_reflect(s, w(a, b))), w(a, b));
        }

        #[test]
        fn dominant_rep_is_dot_invariant(a in -40i64..40, b in -40i64..40, s in prop::bool::ANY) {
            let s = if s { Simple::S1 } else { Simple::S2 };
            let x = w(a, b);
            let y = dot_reflect(s, x);
            match (dominant_rep(x), dominant_rep(y)) {
                (SignedDominant::Singular, other) => prop_assert_eq!(other, SignedDominant::Singular),
                (SignedDominant::Regular { sign, rep }, other) => {
                    prop_assert_ne!(x, y);
                    prop_assert_eq!(other, SignedDominant::Regular { sign: sign.flip(), rep });
                }
            }
        }
    }
}
