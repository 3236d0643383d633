//! Finitely supported integer functions on the weight lattice.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    dominant_representative, is_dominant, Weight, WeylElement, POSITIVE_ROOTS, RHO,
};

/// An axis-aligned box in doubled coordinates, inclusive on both ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: (i64, i64),
    pub hi: (i64, i64),
}

impl Window {
    /// The box `|v1|, |v2| <= radius`, with `radius` in doubled units.
    pub fn centered(radius2: i64) -> Self {
        Window {
            lo: (-radius2, -radius2),
            hi: (radius2, radius2),
        }
    }

    pub fn contains(&self, w: Weight) -> bool {
        (self.lo.0..=self.hi.0).contains(&w.d1()) && (self.lo.1..=self.hi.1).contains(&w.d2())
    }

    /// Grows the box by `margin2` doubled units on every side.
    pub fn expand(&self, margin2: i64) -> Self {
        Window {
            lo: (self.lo.0 - margin2, self.lo.1 - margin2),
            hi: (self.hi.0 + margin2, self.hi.1 + margin2),
        }
    }

    pub fn union(&self, other: &Window) -> Self {
        Window {
            lo: (self.lo.0.min(other.lo.0), self.lo.1.min(other.lo.1)),
            hi: (self.hi.0.max(other.hi.0), self.hi.1.max(other.hi.1)),
        }
    }

    /// Every lattice point of the box, in weight order.
    pub fn points(&self) -> impl Iterator<Item = Weight> + '_ {
        (self.lo.0..=self.hi.0).flat_map(move |d1| {
            (self.lo.1..=self.hi.1)
                .filter(move |d2| (d1 - d2).rem_euclid(2) == 0)
                .map(move |d2| Weight::raw(d1, d2))
        })
    }
}

/// A formal sum `Σ c_μ e^μ` with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LatticeSeries {
    terms: BTreeMap<Weight, BigInt>,
}

impl LatticeSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(w: Weight) -> Self {
        Self::term(w, BigInt::one())
    }

    pub fn term(w: Weight, c: BigInt) -> Self {
        let mut s = Self::new();
        s.add_term(w, c);
        s
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, w: Weight) -> BigInt {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn get(&self, w: &Weight) -> Option<&BigInt> {
        self.terms.get(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Weight> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients (the value at the identity of the torus).
    pub fn mass(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn support_bounds(&self) -> Option<Window> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut win = Window {
            lo: (first.d1(), first.d2()),
            hi: (first.d1(), first.d2()),
        };
        for w in it {
            win.lo = (win.lo.0.min(w.d1()), win.lo.1.min(w.d2()));
            win.hi = (win.hi.0.max(w.d1()), win.hi.1.max(w.d2()));
        }
        Some(win)
    }

    pub fn add(&self, other: &LatticeSeries) -> LatticeSeries {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LatticeSeries {
        if c.is_zero() {
            return LatticeSeries::new();
        }
        LatticeSeries {
            terms: self.terms.iter().map(|(w, v)| (*w, v * c)).collect(),
        }
    }

    pub fn convolve(&self, other: &LatticeSeries) -> LatticeSeries {
        let mut acc: HashMap<Weight, BigInt> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 16));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                *acc.entry(*a + *b).or_default() += ca * cb;
            }
        }
        acc.into_iter().collect()
    }

    pub fn pow(&self, n: u32) -> LatticeSeries {
        let mut out = LatticeSeries::monomial(Weight::ZERO);
        for _ in 0..n {
            out = out.convolve(self);
        }
        out
    }

    /// Translates every exponent by `by`.
    pub fn shift(&self, by: Weight) -> LatticeSeries {
        LatticeSeries {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (*w + by, c.clone()))
                .collect(),
        }
    }

    /// Applies `w` to every exponent (the linear action).
    pub fn act(&self, w: WeylElement) -> LatticeSeries {
        LatticeSeries {
            terms: self
                .terms
                .iter()
                .map(|(x, c)| (w.apply(*x), c.clone()))
                .collect(),
        }
    }

    /// Restriction to the exponents accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(Weight) -> bool) -> LatticeSeries {
        LatticeSeries {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(**w))
                .map(|(w, c)| (*w, c.clone()))
                .collect(),
        }
    }

    /// Whether the coefficients are constant on every orbit of the linear action.
    pub fn is_weyl_invariant(&self) -> bool {
        self.terms.iter().all(|(x, c)| {
            WeylElement::all()
                .iter()
                .all(|w| self.terms.get(&w.apply(*x)) == Some(c))
        })
    }

    pub fn into_terms(self) -> BTreeMap<Weight, BigInt> {
        self.terms
    }
}

impl FromIterator<(Weight, BigInt)> for LatticeSeries {
    fn from_iter<I: IntoIterator<Item = (Weight, BigInt)>>(iter: I) -> Self {
        let mut s = LatticeSeries::new();
        for (w, c) in iter {
            s.add_term(w, c);
        }
        s
    }
}

impl<'a> Add for &'a LatticeSeries {
    type Output = LatticeSeries;
    fn add(self, rhs: &'a LatticeSeries) -> LatticeSeries {
        LatticeSeries::add(self, rhs)
    }
}

impl<'a> Sub for &'a LatticeSeries {
    type Output = LatticeSeries;
    fn sub(self, rhs: &'a LatticeSeries) -> LatticeSeries {
        LatticeSeries::add(self, &-rhs)
    }
}

impl Neg for &LatticeSeries {
    type Output = LatticeSeries;
    fn neg(self) -> LatticeSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl<'a> Mul for &'a LatticeSeries {
    type Output = LatticeSeries;
    fn mul(self, rhs: &'a LatticeSeries) -> LatticeSeries {
        self.convolve(rhs)
    }
}

/// `Ψ^λ = Σ_w ε(w) e^{w(λ+ρ)-ρ}`.
pub fn singular_element(lam: Weight) -> Result<LatticeSeries> {
    if !is_dominant(lam) {
        return Err(Error::NotDominant(lam));
    }
    Ok(WeylElement::all()
        .into_iter()
        .map(|w| (w.dot(lam), BigInt::from(w.det())))
        .collect())
}

/// `Π_{α>0} (1 - e^{-α})`, expanded factor by factor.
pub fn weyl_denominator_product() -> LatticeSeries {
    POSITIVE_ROOTS
        .iter()
        .fold(LatticeSeries::monomial(Weight::ZERO), |acc, alpha| {
            let factor = LatticeSeries::from_iter([
                (Weight::ZERO, BigInt::one()),
                (-*alpha, BigInt::from(-1)),
            ]);
            acc.convolve(&factor)
        })
}

/// Weight multiplicities of the irreducible module `L^λ` by Freudenthal's
/// recursion over the dominant weights below `λ`, extended by symmetry.
pub fn weight_multiplicities(lam: Weight) -> Result<LatticeSeries> {
    if !is_dominant(lam) {
        return Err(Error::NotDominant(lam));
    }
    let norm = |w: Weight| (w + RHO).dot4(w + RHO);
    let top = norm(lam);
    let lam_sq = lam.dot4(lam);

    // dominant μ = λ - aα1 - bα2, ordered by depth a + b
    let mut layers: Vec<(i64, Weight)> = Vec::new();
    for a in 0..=lam.d1() / 2 {
        for b in 0..=(lam.d2() + 2 * a) / 2 {
            let mu = Weight::raw(lam.d1() - 2 * a, lam.d2() + 2 * a - 2 * b);
            if is_dominant(mu) {
                layers.push((a + b, mu));
            }
        }
    }
    layers.sort();

    let mut dom: HashMap<Weight, BigInt> = HashMap::new();
    for (depth, mu) in layers {
        if depth == 0 {
            dom.insert(mu, BigInt::one());
            continue;
        }
        let mut sum = BigInt::zero();
        for alpha in POSITIVE_ROOTS {
            let mut k = 1;
            loop {
                let nu = mu + k * alpha;
                if nu.dot4(nu) > lam_sq {
                    break;
                }
                if let Some(m) = dom.get(&dominant_representative(nu)) {
                    sum += m * nu.dot4(alpha);
                }
                k += 1;
            }
        }
        let denom = top - norm(mu);
        debug_assert!(denom > 0);
        let m: BigInt = (sum * 2) / denom;
        if !m.is_zero() {
            dom.insert(mu, m);
        }
    }

    let mut out = LatticeSeries::new();
    for (mu, m) in &dom {
        let orbit: std::collections::BTreeSet<Weight> =
            WeylElement::all().iter().map(|w| w.apply(*mu)).collect();
        for x in orbit {
            out.add_term(x, m.clone());
        }
    }
    Ok(out)
}
