//! Tensor-power decompositions and the antisymmetric multiplicity function.
//!
//! Three independent routes to the same `DecompositionResult`:
//! extraction from the full weight diagram, the recurrence on `M(μ, p)`,
//! and iterated single tensor steps.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
pub use crate::formal::Window;
use crate::formal::{singular_element, weight_multiplicities, LatticeSeries};
use crate::lattice::{
    dim_irrep, is_dominant, to_dominant_regular, Fundamental, Weight, WeylElement, RHO,
};

/// Irreducible multiplicities of `(L^ω)^{⊗p}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    module: Fundamental,
    power: u32,
    multiplicities: BTreeMap<Weight, BigInt>,
}

impl DecompositionResult {
    /// Zero entries are dropped; negative entries and non-dominant keys are rejected.
    pub fn new(
        module: Fundamental,
        power: u32,
        multiplicities: BTreeMap<Weight, BigInt>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (w, m) in multiplicities {
            if !is_dominant(w) {
                return Err(Error::NotDominant(w));
            }
            if m.is_negative() {
                return Err(Error::NegativeMultiplicity { weight: w, mult: m });
            }
            if !m.is_zero() {
                kept.insert(w, m);
            }
        }
        Ok(DecompositionResult {
            module,
            power,
            multiplicities: kept,
        })
    }

    /// The empty tensor product.
    pub fn unit(module: Fundamental) -> Self {
        DecompositionResult {
            module,
            power: 0,
            multiplicities: BTreeMap::from([(Weight::ZERO, BigInt::one())]),
        }
    }

    pub fn module(&self) -> Fundamental {
        self.module
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn multiplicities(&self) -> &BTreeMap<Weight, BigInt> {
        &self.multiplicities
    }

    pub fn multiplicity(&self, w: Weight) -> BigInt {
        self.multiplicities.get(&w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `Σ m_μ dim L^μ`.
    pub fn dimension_sum(&self) -> BigInt {
        self.multiplicities
            .iter()
            .map(|(w, m)| m * dim_irrep(*w).expect("keys are dominant"))
            .sum()
    }

    /// `(dim L^ω)^p`.
    pub fn expected_dimension(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.module.dim()), self.power as usize)
    }

    pub fn support_in_coset(&self) -> bool {
        self.multiplicities
            .keys()
            .all(|w| self.module.in_power_coset(self.power, *w))
    }

    /// `Σ m_μ ch(L^μ)`.
    pub fn character(&self) -> Result<LatticeSeries> {
        let mut out = LatticeSeries::new();
        for (w, m) in &self.multiplicities {
            out = out.add(&weight_multiplicities(*w)?.scale(m));
        }
        Ok(out)
    }

    /// `Σ m_μ Ψ^μ`.
    pub fn singular_sum(&self) -> LatticeSeries {
        let mut out = LatticeSeries::new();
        for (w, m) in &self.multiplicities {
            out = out.add(&singular_element(*w).expect("keys are dominant").scale(m));
        }
        out
    }

    /// The antisymmetric extension of the multiplicities to all of `P`.
    pub fn m_extended(&self, mu: Weight) -> BigInt {
        let (dom, sign) = to_dominant_regular(mu + RHO);
        if sign == 0 {
            return BigInt::zero();
        }
        self.multiplicity(dom - RHO) * sign
    }
}

/// `m_extended` for a decomposition.
pub fn m_extended(decomposition: &DecompositionResult, mu: Weight) -> BigInt {
    decomposition.m_extended(mu)
}

/// Weight diagram of `(L^ω)^{⊗p}` by `p`-fold convolution.
pub fn tensor_power_weights(module: Fundamental, p: u32) -> LatticeSeries {
    let ch: LatticeSeries = module
        .weights()
        .iter()
        .map(|w| (*w, BigInt::one()))
        .collect();
    ch.pow(p)
}

/// Recovers irreducible multiplicities from a Weyl-invariant weight diagram
/// by the alternating sum `m_μ = Σ_w ε(w) d(μ + ρ - wρ)`, then checks that
/// the multiplicities rebuild the diagram.
pub fn extract_multiplicities(
    d: &LatticeSeries,
    module: Fundamental,
    p: u32,
) -> Result<DecompositionResult> {
    if let Some((w, _)) = d.iter().find(|(w, c)| {
        WeylElement::all()
            .iter()
            .any(|g| d.get(&g.apply(**w)) != Some(*c))
    }) {
        return Err(Error::NotWeylInvariant(*w));
    }
    let shifts: Vec<(Weight, i64)> = WeylElement::all()
        .iter()
        .map(|g| (RHO - g.apply(RHO), g.det()))
        .collect();
    let mut mults = BTreeMap::new();
    for mu in d.support().filter(|w| is_dominant(*w)) {
        let m: BigInt = shifts.iter().map(|(s, e)| d.coeff(mu + *s) * e).sum();
        if m.is_negative() {
            return Err(Error::NegativeMultiplicity {
                weight: mu,
                mult: m,
            });
        }
        if !m.is_zero() {
            mults.insert(mu, m);
        }
    }
    let result = DecompositionResult::new(module, p, mults)?;
    let rebuilt = result.character()?;
    if &rebuilt != d {
        let diff = &rebuilt - d;
        let at = diff.support().next().unwrap_or(Weight::ZERO);
        return Err(Error::Reconstruction(at));
    }
    Ok(result)
}

/// `M(·, p)` for one module and power; only dominant values are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityFunction {
    module: Fundamental,
    power: u32,
    dominant: BTreeMap<Weight, BigInt>,
}

impl MultiplicityFunction {
    pub fn unit(module: Fundamental) -> Self {
        MultiplicityFunction {
            module,
            power: 0,
            dominant: BTreeMap::from([(Weight::ZERO, BigInt::one())]),
        }
    }

    pub fn from_decomposition(d: &DecompositionResult) -> Self {
        MultiplicityFunction {
            module: d.module,
            power: d.power,
            dominant: d.multiplicities.clone(),
        }
    }

    pub fn module(&self) -> Fundamental {
        self.module
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    /// `M(μ, p)` at any lattice point.
    pub fn value(&self, mu: Weight) -> BigInt {
        let (dom, sign) = to_dominant_regular(mu + RHO);
        if sign == 0 {
            return BigInt::zero();
        }
        match self.dominant.get(&(dom - RHO)) {
            Some(m) => m * sign,
            None => BigInt::zero(),
        }
    }

    /// A box containing every point where `M(·, p)` can be nonzero.
    pub fn default_window(&self) -> Window {
        Window::centered(self.module.top_weight(self.power).d1() + 6)
    }

    pub fn values_on(&self, window: &Window) -> LatticeSeries {
        window.points().map(|w| (w, self.value(w))).collect()
    }

    pub fn decomposition(&self) -> DecompositionResult {
        DecompositionResult {
            module: self.module,
            power: self.power,
            multiplicities: self.dominant.clone(),
        }
    }

    /// `M(μ, p+1) = Σ_ζ M(μ - ζ, p)` over the weights `ζ` of the module.
    pub fn step(&self) -> MultiplicityFunction {
        let p = self.power + 1;
        let top = self.module.top_weight(p).d1();
        let mut dominant = BTreeMap::new();
        for d1 in 0..=top {
            for d2 in (0..=d1).rev().step_by(2) {
                let mu = Weight::raw(d1, d2);
                if !self.module.in_power_coset(p, mu) {
                    continue;
                }
                let m: BigInt = self
                    .module
                    .weights()
                    .iter()
                    .map(|z| self.value(mu - *z))
                    .sum();
                if !m.is_zero() {
                    dominant.insert(mu, m);
                }
            }
        }
        MultiplicityFunction {
            module: self.module,
            power: p,
            dominant,
        }
    }
}

/// `M(·, p)` for `p = 0, 1, …`, grown on demand.
#[derive(Clone, Debug)]
pub struct MultiplicityTower {
    levels: Vec<MultiplicityFunction>,
}

impl MultiplicityTower {
    pub fn new(module: Fundamental) -> Self {
        MultiplicityTower {
            levels: vec![MultiplicityFunction::unit(module)],
        }
    }

    pub fn module(&self) -> Fundamental {
        self.levels[0].module
    }

    pub fn level(&mut self, p: u32) -> &MultiplicityFunction {
        while self.levels.len() <= p as usize {
            let next = self.levels.last().expect("non-empty").step();
            self.levels.push(next);
        }
        &self.levels[p as usize]
    }

    pub fn value(&mut self, p: u32, mu: Weight) -> BigInt {
        self.level(p).value(mu)
    }

    pub fn into_levels(self) -> Vec<MultiplicityFunction> {
        self.levels
    }
}

/// `M(·, p)` for `p = 0..=p_max` by the recurrence.
pub fn recur_multiplicity(module: Fundamental, p_max: u32) -> Vec<MultiplicityFunction> {
    let mut tower = MultiplicityTower::new(module);
    tower.level(p_max);
    tower.into_levels()
}

/// Decomposes `L^μ ⊗ L^ω` by reflecting each `μ + ζ + ρ` into the chamber.
pub fn single_step_decompose(mu: Weight, module: Fundamental) -> Result<BTreeMap<Weight, BigInt>> {
    if !is_dominant(mu) {
        return Err(Error::NotDominant(mu));
    }
    let mut acc = LatticeSeries::new();
    for z in module.weights() {
        let (dom, sign) = to_dominant_regular(mu + *z + RHO);
        if sign != 0 {
            acc.add_term(dom - RHO, BigInt::from(sign));
        }
    }
    Ok(acc.into_terms())
}

/// `p` single steps starting from the trivial module.
pub fn iterate_single_step(module: Fundamental, p: u32) -> Result<DecompositionResult> {
    let mut current = DecompositionResult::unit(module);
    for q in 1..=p {
        let mut next = LatticeSeries::new();
        for (mu, m) in &current.multiplicities {
            for (nu, c) in single_step_decompose(*mu, module)? {
                next.add_term(nu, c * m);
            }
        }
        current = DecompositionResult::new(module, q, next.into_terms())?;
    }
    Ok(current)
}

/// Highest weights of `L^μ ⊗ L^{ω1}`, which is multiplicity free.
pub fn tensor_with_vector(mu: Weight) -> Result<Vec<Weight>> {
    if !is_dominant(mu) {
        return Err(Error::NotDominant(mu));
    }
    let e1 = Weight::int(1, 0);
    let e2 = Weight::int(0, 1);
    let (d1, d2) = (mu.d1(), mu.d2());
    let list: Vec<Weight> = if mu == Weight::ZERO {
        vec![e1]
    } else if d2 == 0 {
        vec![mu + e1, mu - e1, mu + e2]
    } else if d1 == d2 {
        vec![mu, mu + e1, mu - e2]
    } else if d2 == 1 {
        // (μ1, -1/2) + ρ lies on a wall
        vec![mu, mu + e1, mu - e1, mu + e2]
    } else {
        vec![mu, mu + e1, mu - e1, mu + e2, mu - e2]
    };
    let set: BTreeSet<Weight> = list.into_iter().filter(|w| is_dominant(*w)).collect();
    Ok(set.into_iter().collect())
}
