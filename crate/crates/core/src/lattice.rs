//! Root data of B2, the weight lattice and the Weyl group action.
//!
//! Weights are stored as doubled Euclidean coordinates `(d1, d2) = (2 v1, 2 v2)`,
//! so every weight of the lattice `P = Z ω1 + Z ω2` is a pair of integers of
//! equal parity. All arithmetic is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// A number in `Z/2`, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &'static str| Error::Parse {
            input: s.to_string(),
            reason: why,
        };
        let s = s.trim();
        match s.split_once('/') {
            None => s
                .parse::<i64>()
                .map(HalfInt::from_int)
                .map_err(|_| bad("not an integer")),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad("bad numerator"))?;
                match den.trim() {
                    "1" => Ok(HalfInt::from_int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad("denominator must be 1 or 2")),
                }
            }
        }
    }
}

/// A point of the B2 weight lattice.
///
/// Ordering is lexicographic on the doubled coordinates, which fixes the
/// iteration order of every sparse map keyed by weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    d1: i64,
    d2: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { d1: 0, d2: 0 };

    /// Builds a weight from doubled coordinates, rejecting mixed parity.
    pub fn doubled(d1: i64, d2: i64) -> Result<Self> {
        if (d1 - d2).rem_euclid(2) != 0 {
            return Err(Error::Parse {
                input: format!("{},{}", HalfInt(d1), HalfInt(d2)),
                reason: "coordinates must both be integers or both half-integers",
            });
        }
        Ok(Weight { d1, d2 })
    }

    pub const fn int(v1: i64, v2: i64) -> Self {
        Weight {
            d1: 2 * v1,
            d2: 2 * v2,
        }
    }

    pub(crate) const fn raw(d1: i64, d2: i64) -> Self {
        Weight { d1, d2 }
    }

    pub fn from_halves(v1: HalfInt, v2: HalfInt) -> Result<Self> {
        Weight::doubled(v1.twice(), v2.twice())
    }

    pub const fn d1(self) -> i64 {
        self.d1
    }

    pub const fn d2(self) -> i64 {
        self.d2
    }

    pub const fn v1(self) -> HalfInt {
        HalfInt(self.d1)
    }

    pub const fn v2(self) -> HalfInt {
        HalfInt(self.d2)
    }

    /// True when both coordinates are integers (the coset of ω1).
    pub const fn is_integral(self) -> bool {
        self.d1 % 2 == 0
    }

    /// Four times the Euclidean inner product.
    pub const fn dot4(self, other: Weight) -> i64 {
        self.d1 * other.d1 + self.d2 * other.d2
    }

    /// `2 v1 + v2` in doubled units; strictly positive on every positive root.
    pub const fn height(self) -> i64 {
        2 * self.d1 + self.d2
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.v1(), self.v2())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse {
            input: s.to_string(),
            reason: "expected `v1,v2`",
        })?;
        Weight::from_halves(a.parse()?, b.parse()?)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::raw(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::raw(self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        *self = *self + rhs;
    }
}

impl SubAssign for Weight {
    fn sub_assign(&mut self, rhs: Weight) {
        *self = *self - rhs;
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::raw(-self.d1, -self.d2)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        Weight::raw(self * rhs.d1, self * rhs.d2)
    }
}

pub const E1: Weight = Weight::int(1, 0);
pub const E2: Weight = Weight::int(0, 1);
/// Simple root `e1 - e2` (long).
pub const ALPHA1: Weight = Weight::int(1, -1);
/// Simple root `e2` (short).
pub const ALPHA2: Weight = Weight::int(0, 1);
pub const OMEGA1: Weight = Weight::int(1, 0);
pub const OMEGA2: Weight = Weight::raw(1, 1);
/// Half the sum of the positive roots, `(3/2, 1/2)`.
pub const RHO: Weight = Weight::raw(3, 1);
pub const POSITIVE_ROOTS: [Weight; 4] = [ALPHA1, ALPHA2, E1, Weight::int(1, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    const fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Plus, s) | (s, Sign::Plus) => s,
            (Sign::Minus, Sign::Minus) => Sign::Plus,
        }
    }
}

/// A signed permutation of the two Euclidean coordinates: first transpose
/// (when `swap`), then multiply the coordinates by `s1` and `s2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    pub swap: bool,
    pub s1: Sign,
    pub s2: Sign,
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement {
        swap: false,
        s1: Sign::Plus,
        s2: Sign::Plus,
    };

    /// `S`, the reflection negating both coordinates (central in W).
    pub const FULL_REFLECTION: WeylElement = WeylElement {
        swap: false,
        s1: Sign::Minus,
        s2: Sign::Minus,
    };

    pub fn all() -> [WeylElement; 8] {
        let mut out = [WeylElement::IDENTITY; 8];
        let mut i = 0;
        for swap in [false, true] {
            for s1 in [Sign::Plus, Sign::Minus] {
                for s2 in [Sign::Plus, Sign::Minus] {
                    out[i] = WeylElement { swap, s1, s2 };
                    i += 1;
                }
            }
        }
        out
    }

    pub const fn det(self) -> i64 {
        let t = if self.swap { -1 } else { 1 };
        t * self.s1.value() * self.s2.value()
    }

    pub const fn apply(self, lam: Weight) -> Weight {
        let (x, y) = if self.swap {
            (lam.d2, lam.d1)
        } else {
            (lam.d1, lam.d2)
        };
        Weight::raw(self.s1.value() * x, self.s2.value() * y)
    }

    /// `self ∘ other`.
    pub const fn compose(self, other: WeylElement) -> WeylElement {
        let (s1, s2) = if self.swap {
            (self.s1.times(other.s2), self.s2.times(other.s1))
        } else {
            (self.s1.times(other.s1), self.s2.times(other.s2))
        };
        WeylElement {
            swap: self.swap ^ other.swap,
            s1,
            s2,
        }
    }

    pub fn inverse(self) -> WeylElement {
        WeylElement::all()
            .into_iter()
            .find(|w| self.compose(*w) == WeylElement::IDENTITY)
            .expect("W is a group")
    }

    /// The dot action `w∘λ = w(λ + ρ) - ρ`.
    pub const fn dot(self, lam: Weight) -> Weight {
        let shifted = self.apply(Weight::raw(lam.d1 + RHO.d1, lam.d2 + RHO.d2));
        Weight::raw(shifted.d1 - RHO.d1, shifted.d2 - RHO.d2)
    }
}

pub fn apply(w: WeylElement, lam: Weight) -> Weight {
    w.apply(lam)
}

/// `v1 >= v2 >= 0`.
pub fn is_dominant(lam: Weight) -> bool {
    lam.d1 >= lam.d2 && lam.d2 >= 0
}

/// `v1 > v2 > 0`.
pub fn is_strictly_dominant(lam: Weight) -> bool {
    lam.d1 > lam.d2 && lam.d2 > 0
}

/// The dominant point of the orbit `W·λ`.
pub fn dominant_representative(lam: Weight) -> Weight {
    let (a, b) = (lam.d1.abs(), lam.d2.abs());
    Weight::raw(a.max(b), a.min(b))
}

/// Moves `λ` into the open fundamental chamber.
///
/// Returns the strictly dominant image with `det(w)` for the unique `w`
/// achieving it, or `(λ, 0)` when `λ` lies on a reflection wall.
pub fn to_dominant_regular(lam: Weight) -> (Weight, i64) {
    let (x, y) = (lam.d1, lam.d2);
    if x == 0 || y == 0 || x.abs() == y.abs() {
        return (lam, 0);
    }
    let mut sign = x.signum() * y.signum();
    let (mut a, mut b) = (x.abs(), y.abs());
    if a < b {
        std::mem::swap(&mut a, &mut b);
        sign = -sign;
    }
    (Weight::raw(a, b), sign)
}

/// Dimension of the irreducible module with highest weight `λ`, from the
/// Weyl product `Π_{α>0} ⟨λ+ρ, α⟩ / ⟨ρ, α⟩`.
pub fn dim_irrep(lam: Weight) -> Result<BigInt> {
    if !is_dominant(lam) {
        return Err(Error::NotDominant(lam));
    }
    let (d1, d2) = (lam.d1 as i128, lam.d2 as i128);
    // (v1-v2+1)(2v2+1)(2v1+3)(v1+v2+2)/6 in doubled coordinates
    let num = BigInt::from(d1 - d2 + 2)
        * BigInt::from(d2 + 1)
        * BigInt::from(d1 + 3)
        * BigInt::from(d1 + d2 + 4);
    Ok(num / 24)
}

/// One of the two fundamental modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fundamental {
    /// `L^{ω1}`, dimension 5.
    Vector,
    /// `L^{ω2}`, dimension 4.
    Spinor,
}

const VECTOR_WEIGHTS: [Weight; 5] = [
    Weight::int(1, 0),
    Weight::int(-1, 0),
    Weight::int(0, 1),
    Weight::int(0, -1),
    Weight::int(0, 0),
];

const SPINOR_WEIGHTS: [Weight; 4] = [
    Weight::raw(1, 1),
    Weight::raw(1, -1),
    Weight::raw(-1, 1),
    Weight::raw(-1, -1),
];

impl Fundamental {
    pub const ALL: [Fundamental; 2] = [Fundamental::Vector, Fundamental::Spinor];

    pub fn from_index(i: u32) -> Result<Self> {
        match i {
            1 => Ok(Fundamental::Vector),
            2 => Ok(Fundamental::Spinor),
            _ => Err(Error::InvalidModuleIndex(i)),
        }
    }

    pub const fn index(self) -> u32 {
        match self {
            Fundamental::Vector => 1,
            Fundamental::Spinor => 2,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Fundamental::Vector => "vector",
            Fundamental::Spinor => "spinor",
        }
    }

    pub const fn highest_weight(self) -> Weight {
        match self {
            Fundamental::Vector => OMEGA1,
            Fundamental::Spinor => OMEGA2,
        }
    }

    pub const fn dim(self) -> u32 {
        match self {
            Fundamental::Vector => 5,
            Fundamental::Spinor => 4,
        }
    }

    /// Weights of the module; every multiplicity is one.
    pub fn weights(self) -> &'static [Weight] {
        match self {
            Fundamental::Vector => &VECTOR_WEIGHTS,
            Fundamental::Spinor => &SPINOR_WEIGHTS,
        }
    }

    /// Highest weight `p·ω` of the `p`-th tensor power.
    pub fn top_weight(self, p: u32) -> Weight {
        (p as i64) * self.highest_weight()
    }

    /// Whether `w` lies in the lattice coset carrying the weights of the
    /// `p`-th tensor power (`pω2 + Q` for the spinor, `Q` for the vector).
    pub fn in_power_coset(self, p: u32, w: Weight) -> bool {
        match self {
            Fundamental::Vector => w.is_integral(),
            Fundamental::Spinor => (w.d1 - p as i64).rem_euclid(2) == 0,
        }
    }
}

impl fmt::Display for Fundamental {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fundamental {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vector" | "1" => Ok(Fundamental::Vector),
            "spinor" | "2" => Ok(Fundamental::Spinor),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "module must be `vector` or `spinor`",
            }),
        }
    }
}

/// Weights of `L^{ω_i}`, `i ∈ {1, 2}`.
pub fn weights_of_fundamental(i: u32) -> Result<Vec<Weight>> {
    Ok(Fundamental::from_index(i)?.weights().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn apply_examples() {
        let rho = w("3/2,1/2");
        assert_eq!(apply(WeylElement::IDENTITY, rho), rho);
        let swap = WeylElement {
            swap: true,
            s1: Sign::Plus,
            s2: Sign::Plus,
        };
        assert_eq!(apply(swap, rho), w("1/2,3/2"));
        let flip = WeylElement {
            swap: false,
            s1: Sign::Plus,
            s2: Sign::Minus,
        };
        assert_eq!(apply(flip, rho), w("3/2,-1/2"));
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(w("1,0")));
        assert!(!is_dominant(w("0,1")));
        assert!(!is_dominant(w("1,-1")));
    }

    #[test]
    fn to_dominant_regular_examples() {
        assert_eq!(to_dominant_regular(w("5/2,1/2")), (w("5/2,1/2"), 1));
        assert_eq!(to_dominant_regular(w("5/2,-1/2")), (w("5/2,1/2"), -1));
        assert_eq!(to_dominant_regular(w("3/2,3/2")), (w("3/2,3/2"), 0));
        assert_eq!(to_dominant_regular(w("0,2")).1, 0);
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim_irrep(w("1,0")).unwrap(), BigInt::from(5));
        assert_eq!(dim_irrep(w("1/2,1/2")).unwrap(), BigInt::from(4));
        // adjoint: 8 roots + 2-dimensional zero weight space
        assert_eq!(dim_irrep(w("1,1")).unwrap(), BigInt::from(10));
        assert_eq!(dim_irrep(Weight::ZERO).unwrap(), BigInt::from(1));
        assert!(matches!(dim_irrep(w("0,1")), Err(Error::NotDominant(_))));
    }

    #[test]
    fn fundamental_weights() {
        let v = weights_of_fundamental(1).unwrap();
        assert_eq!(v.len(), 5);
        assert_eq!(v.iter().fold(Weight::ZERO, |a, b| a + *b), Weight::ZERO);
        assert_eq!(weights_of_fundamental(2).unwrap().len(), 4);
        assert!(matches!(
            weights_of_fundamental(3),
            Err(Error::InvalidModuleIndex(3))
        ));
    }

    #[test]
    fn root_data() {
        let sum = POSITIVE_ROOTS.iter().fold(Weight::ZERO, |a, b| a + *b);
        assert_eq!(2 * RHO, sum);
        assert_eq!(RHO, OMEGA1 + OMEGA2);
        assert_eq!(E1, ALPHA1 + ALPHA2);
        assert_eq!(Weight::int(1, 1), ALPHA1 + 2 * ALPHA2);
    }

    #[test]
    fn weyl_group_structure() {
        let all = WeylElement::all();
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), 8);
        assert_eq!(all.iter().map(|w| w.det()).sum::<i64>(), 0);
        for a in all {
            assert_eq!(a.compose(a.inverse()), WeylElement::IDENTITY);
            for b in all {
                assert_eq!(a.compose(b).det(), a.det() * b.det());
            }
        }
    }

    #[test]
    fn parse_rejects_mixed_parity() {
        assert!("1/2,1".parse::<Weight>().is_err());
        assert!("1/3,1".parse::<Weight>().is_err());
        assert!("1".parse::<Weight>().is_err());
        assert_eq!(w("-3/2,1/2").to_string(), "-3/2,1/2");
        assert_eq!(w("4/2,0").to_string(), "2,0");
    }

    fn any_weight() -> impl Strategy<Value = Weight> {
        (-40i64..40, -20i64..20, any::<bool>())
            .prop_map(|(a, b, odd)| Weight::raw(2 * a + odd as i64, 2 * b + odd as i64))
    }

    proptest! {
        #[test]
        fn group_law(lam in any_weight(), i in 0usize..8, j in 0usize..8) {
            let all = WeylElement::all();
            let (a, b) = (all[i], all[j]);
            prop_assert_eq!(a.apply(b.apply(lam)), a.compose(b).apply(lam));
        }

        #[test]
        fn dominant_regular_sign_tracks_det(lam in any_weight(), i in 0usize..8) {
            let wl = WeylElement::all()[i];
            let (dom, s) = to_dominant_regular(lam);
            let (dom2, s2) = to_dominant_regular(wl.apply(lam));
            prop_assert_eq!(s2, s * wl.det());
            if s != 0 {
                prop_assert!(is_strictly_dominant(dom));
                prop_assert_eq!(dom, dom2);
            }
        }

        #[test]
        fn weight_text_round_trip(lam in any_weight()) {
            prop_assert_eq!(lam.to_string().parse::<Weight>().unwrap(), lam);
        }
    }
}
