//! Injection fans, singular elements of tensor powers, and the fan recursion.
//!
//! The `p`-fold fan is `(Ψ^0)^{p-1}`. All algebra runs in natural coordinates;
//! `OriginConvention::LowestWeightShifted` is a display adapter that moves
//! the origin to the lowest fan weight `-2(p-1)ρ` and negates coefficients,
//! which is the indexing used by the closed-form fan evaluator.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::{c_hat, exact_half, neg_one_pow, Guard};
use crate::closed_forms::FormulaVariant;
use crate::engine::{DecompositionResult, MultiplicityFunction};
use crate::error::{Error, Result};
use crate::formal::{singular_element, LatticeSeries, Window};
use crate::lattice::{is_dominant, Fundamental, Weight, RHO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OriginConvention {
    Natural,
    LowestWeightShifted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    power: u32,
    terms: LatticeSeries,
    origin: OriginConvention,
}

impl Fan {
    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn terms(&self) -> &LatticeSeries {
        &self.terms
    }

    pub fn origin(&self) -> OriginConvention {
        self.origin
    }

    pub fn coeff(&self, w: Weight) -> BigInt {
        self.terms.coeff(w)
    }

    fn shift_vector(&self) -> Weight {
        (2 * (self.power as i64 - 1)) * RHO
    }

    pub fn to_lowest_weight_shifted(&self) -> Fan {
        match self.origin {
            OriginConvention::LowestWeightShifted => self.clone(),
            OriginConvention::Natural => Fan {
                power: self.power,
                terms: (-&self.terms).shift(self.shift_vector()),
                origin: OriginConvention::LowestWeightShifted,
            },
        }
    }

    pub fn to_natural(&self) -> Fan {
        match self.origin {
            OriginConvention::Natural => self.clone(),
            OriginConvention::LowestWeightShifted => Fan {
                power: self.power,
                terms: (-&self.terms).shift(-self.shift_vector()),
                origin: OriginConvention::Natural,
            },
        }
    }
}

/// The pairwise fan: the nonzero fan vectors `γ` with `s(γ) = -c(-γ)`,
/// where `c` are the coefficients of `Ψ^0`.
pub fn fan_pairwise() -> Fan {
    let psi0 = singular_element(Weight::ZERO).expect("0 is dominant");
    let terms = psi0
        .iter()
        .filter(|(w, _)| **w != Weight::ZERO)
        .map(|(w, c)| (-*w, -c))
        .collect();
    Fan {
        power: 2,
        terms,
        origin: OriginConvention::LowestWeightShifted,
    }
}

/// `(Ψ^0)^{p-1}` by repeated convolution, in natural coordinates.
pub fn fan_power_direct(p: u32) -> Result<Fan> {
    if p < 2 {
        return Err(Error::OutOfRange(format!(
            "fan power must be at least 2, got {p}"
        )));
    }
    let psi0 = singular_element(Weight::ZERO).expect("0 is dominant");
    Ok(Fan {
        power: p,
        terms: psi0.pow(p - 1),
        origin: OriginConvention::Natural,
    })
}

/// Closed-form fan coefficient `γ_p(a, b)` in lowest-weight-shifted coordinates.
pub fn fan_closed_form(p: u32, a: i64, b: i64, variant: FormulaVariant) -> BigInt {
    let g = variant.guard();
    let p = p as i64;
    let mut total = BigInt::zero();
    for k in 1..=p {
        let outer = c_hat(g, p - 1, k - 1);
        if outer.is_zero() {
            continue;
        }
        for l in 1..=k {
            let cl = c_hat(g, k - 1, l - 1);
            let cb = c_hat(g, p - k, b + k - 3 * l + 2);
            if cl.is_zero() || cb.is_zero() {
                continue;
            }
            for m in 1..=p - k + 1 {
                let term = c_hat(g, p - k, m - 1) * c_hat(g, k - 1, a - k - 3 * m + 4);
                if term.is_zero() {
                    continue;
                }
                let sign = neg_one_pow(k + a + b - 2 * (l + m));
                total += &outer * &cl * &cb * term * sign;
            }
        }
    }
    total
}

/// `Ψ^{(⊗p ω)}`, the numerator of `ch(L^ω)^p` in the Weyl formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPowerElement {
    module: Fundamental,
    power: u32,
    terms: LatticeSeries,
}

impl SingularPowerElement {
    pub fn module(&self) -> Fundamental {
        self.module
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn terms(&self) -> &LatticeSeries {
        &self.terms
    }

    pub fn from_decomposition(d: &DecompositionResult) -> Self {
        SingularPowerElement {
            module: d.module(),
            power: d.power(),
            terms: d.singular_sum(),
        }
    }

    /// Entries at dominant points, which are the irreducible multiplicities.
    pub fn dominant_part(&self) -> LatticeSeries {
        self.terms.filter(is_dominant)
    }
}

fn character_of(module: Fundamental) -> LatticeSeries {
    module
        .weights()
        .iter()
        .map(|w| (*w, BigInt::one()))
        .collect()
}

/// `Ψ^{(⊗p ω)} = ch(L^ω) Ψ^{(⊗(p-1) ω)}` from `Ψ^{(⊗1 ω)} = Ψ^ω`.
pub fn singular_power_direct(module: Fundamental, p: u32) -> Result<SingularPowerElement> {
    if p < 1 {
        return Err(Error::OutOfRange("singular power needs p >= 1".into()));
    }
    let ch = character_of(module);
    let mut terms = singular_element(module.highest_weight())?;
    for _ in 1..p {
        terms = ch.convolve(&terms);
    }
    Ok(SingularPowerElement {
        module,
        power: p,
        terms,
    })
}

/// `(Ψ^ω)^p`, the product the closed singular forms describe.
pub fn ambient_singular_power(module: Fundamental, p: u32) -> LatticeSeries {
    singular_element(module.highest_weight())
        .expect("fundamental weights are dominant")
        .pow(p)
}

/// Closed-form coefficient of `(Ψ^{ω1})^p` at `(c, d)`.
pub fn vector_singular_closed(p: u32, at: Weight, variant: FormulaVariant) -> BigInt {
    let (Some(c), Some(d)) = (at.v1().to_integer(), at.v2().to_integer()) else {
        return BigInt::zero();
    };
    let g = variant.guard();
    let p = p as i64;
    let mut total = BigInt::zero();
    for k in 1..=p + 1 {
        let outer = c_hat(g, p, k - 1);
        for l in 1..=k {
            let cl = c_hat(g, k - 1, l - 1);
            let cd = c_hat(g, p - k + 1, -d + 2 * k - 5 * (l - 1) - 2);
            if cl.is_zero() || cd.is_zero() {
                continue;
            }
            for m in 1..=p - k + 2 {
                let term =
                    c_hat(g, p - k + 1, m - 1) * c_hat(g, k - 1, p - c - 2 * k - 5 * (m - 1) + 2);
                if term.is_zero() {
                    continue;
                }
                let sign = neg_one_pow(k - d - c + p - 4 * (l + m) + 7);
                total += &outer * &cl * &cd * term * sign;
            }
        }
    }
    total
}

/// Closed-form coefficient of `(Ψ^{ω2})^p` at `(c, d)`.
pub fn spinor_singular_closed(p: u32, at: Weight, variant: FormulaVariant) -> BigInt {
    match variant {
        FormulaVariant::Validated => spinor_singular_validated(p as i64, at),
        FormulaVariant::Literal => spinor_singular_printed(p as i64, at),
    }
}

fn spinor_singular_validated(p: i64, at: Weight) -> BigInt {
    let (dc, dd) = (at.d1(), at.d2());
    let g = Guard::Inclusive;
    let mut total = BigInt::zero();
    for k in 1..=p + 1 {
        let outer = c_hat(g, p, k - 1);
        for l in 1..=k {
            let Some(i) = quarter(p - dd + 2 * (k - 1) - 8 * (l - 1)) else {
                continue;
            };
            let ci = c_hat(g, p - k + 1, i);
            if ci.is_zero() {
                continue;
            }
            let cl = c_hat(g, k - 1, l - 1);
            for m in 1..=p - k + 2 {
                let Some(j) = quarter(p - dc - 2 * (k - 1) - 8 * (m - 1)) else {
                    continue;
                };
                let term = c_hat(g, p - k + 1, m - 1) * c_hat(g, k - 1, j);
                if term.is_zero() {
                    continue;
                }
                let sign = neg_one_pow((k - 1) + (l - 1) + (m - 1) + i + j);
                total += &outer * &cl * &ci * term * sign;
            }
        }
    }
    total
}

fn spinor_singular_printed(p: i64, at: Weight) -> BigInt {
    let (dc, dd) = (at.d1(), at.d2());
    let g = Guard::Literal;
    // (c - d)/2 must be an integer for the sign to be defined
    let Some(half_diff) = quarter(dc - dd) else {
        return BigInt::zero();
    };
    let mut total = BigInt::zero();
    for k in 1..=p + 1 {
        let outer = c_hat(g, p, k - 1);
        for l in 1..=k {
            let cl = c_hat(g, k, l - 1);
            for m in 1..=p - k + 2 {
                let Some(first) = quarter(8 * (1 - m) - 2 * k + dc - p + 2) else {
                    continue;
                };
                let Some(second) = quarter(4 - 8 * m + 2 * k - dd + p + 2) else {
                    continue;
                };
                let term = c_hat(g, k, first) * c_hat(g, p - k + 1, m - 1) * c_hat(g, k, second);
                if term.is_zero() {
                    continue;
                }
                let sign = neg_one_pow(k + half_diff - (l + m) + 1);
                total += &outer * &cl * term * sign;
            }
        }
    }
    total
}

/// `x / 4` when exact.
fn quarter(x: i64) -> Option<i64> {
    exact_half(x).and_then(exact_half)
}

/// A point where a printed formula and the direct construction disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffEntry {
    pub point: Weight,
    pub printed: BigInt,
    pub direct: BigInt,
}

fn diff_over(
    window: &Window,
    direct: impl Fn(Weight) -> BigInt,
    printed: impl Fn(Weight) -> BigInt,
) -> Vec<DiffEntry> {
    window
        .points()
        .filter_map(|w| {
            let (a, b) = (printed(w), direct(w));
            (a != b).then_some(DiffEntry {
                point: w,
                printed: a,
                direct: b,
            })
        })
        .collect()
}

/// Support box of `s` grown by one unit, or a unit box when `s` is empty.
fn probe_window(s: &LatticeSeries) -> Window {
    s.support_bounds().unwrap_or(Window::centered(0)).expand(2)
}

/// Fan closed form under `variant` against `(Ψ^0)^{p-1}`, shifted coordinates.
pub fn fan_diff(p: u32, variant: FormulaVariant) -> Result<Vec<DiffEntry>> {
    let direct = fan_power_direct(p)?.to_lowest_weight_shifted();
    let window = probe_window(direct.terms());
    Ok(diff_over(
        &window,
        |w| direct.coeff(w),
        |w| match (w.v1().to_integer(), w.v2().to_integer()) {
            (Some(a), Some(b)) => fan_closed_form(p, a, b, variant),
            _ => BigInt::zero(),
        },
    ))
}

/// Singular closed form under `variant` against `(Ψ^ω)^p`.
pub fn singular_diff(module: Fundamental, p: u32, variant: FormulaVariant) -> Vec<DiffEntry> {
    let direct = ambient_singular_power(module, p);
    let window = probe_window(&direct);
    diff_over(
        &window,
        |w| direct.coeff(w),
        |w| match module {
            Fundamental::Vector => vector_singular_closed(p, w, variant),
            Fundamental::Spinor => spinor_singular_closed(p, w, variant),
        },
    )
}

/// Outcome of checking `Σ_γ s(γ) M(μ+γ) = -ψ(μ)` everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub module: Fundamental,
    pub power: u32,
    /// Points where the fan sum is nonzero or `ψ` is nonzero.
    pub checked_points: usize,
    /// `Σ_γ s(γ) M(μ+γ) + ψ(μ)`; empty when the identity holds.
    pub residual: LatticeSeries,
    /// Points where the fan sum alone vanishes.
    pub homogeneous_zeros_outside_psi: bool,
}

/// Applies the shifted fan (zero point included) to `Ψ^{(⊗p ω)}`.
pub fn annihilation_check(module: Fundamental, p: u32) -> Result<AnnihilationReport> {
    let fan = fan_power_direct(p)?.to_lowest_weight_shifted();
    let m = singular_power_direct(module, p)?;
    let psi = ambient_singular_power(module, p);
    // Σ_γ s(γ) M(μ+γ) is the convolution of M with Σ_γ s(γ) e^{-γ}
    let reflected: LatticeSeries = fan.terms().iter().map(|(g, s)| (-*g, s.clone())).collect();
    let fan_sum = reflected.convolve(m.terms());
    let residual = fan_sum.add(&psi);
    let checked_points = fan_sum
        .support()
        .chain(psi.support())
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let homogeneous_zeros_outside_psi = fan_sum.support().all(|w| !psi.coeff(w).is_zero());
    Ok(AnnihilationReport {
        module,
        power: p,
        checked_points,
        residual,
        homogeneous_zeros_outside_psi,
    })
}

/// Contributions to one solved value, grouped by the first coordinate of
/// the fan vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditStep {
    pub point: Weight,
    pub singular: BigInt,
    pub lines: BTreeMap<i64, BigInt>,
    pub value: BigInt,
}

#[derive(Clone, Debug)]
pub struct FanSolution {
    pub function: MultiplicityFunction,
    pub values: LatticeSeries,
    pub audit: Vec<AuditStep>,
}

impl FanSolution {
    pub fn audit_at(&self, point: Weight) -> Option<&AuditStep> {
        self.audit.iter().find(|a| a.point == point)
    }
}

/// Solves `(Ψ^0)^{p-1} · M = (Ψ^ω)^p` for `M` point by point in decreasing
/// height: `M(ν) = ψ(ν) + Σ_{γ≠0} s(γ) M(ν+γ)`.
///
/// Audit entries are kept for dominant points inside `audit_window`.
pub fn fan_recursion_solve(
    module: Fundamental,
    p: u32,
    audit_window: Option<&Window>,
) -> Result<FanSolution> {
    if p == 0 {
        let function = MultiplicityFunction::unit(module);
        return Ok(FanSolution {
            values: LatticeSeries::monomial(Weight::ZERO),
            function,
            audit: Vec::new(),
        });
    }
    let c = if p == 1 {
        LatticeSeries::monomial(Weight::ZERO)
    } else {
        fan_power_direct(p)?.terms().clone()
    };
    let lead = c.coeff(Weight::ZERO);
    if lead.is_zero() {
        return Err(Error::DegenerateFan(Weight::ZERO));
    }
    let psi = ambient_singular_power(module, p);
    let steps: Vec<(Weight, BigInt)> = c
        .iter()
        .filter(|(d, _)| **d != Weight::ZERO)
        .map(|(d, cd)| (-*d, -cd))
        .collect();

    let t = module.top_weight(p).d1();
    let mut domain: Vec<Weight> = Window {
        lo: (-t - 6, -t - 4),
        hi: (t, t + 2),
    }
    .points()
    .filter(|w| module.in_power_coset(p, *w))
    .collect();
    domain.sort_by_key(|w| (std::cmp::Reverse(w.height()), std::cmp::Reverse(*w)));

    let mut solved: HashMap<Weight, BigInt> = HashMap::with_capacity(domain.len());
    let mut audit = Vec::new();
    for nu in domain {
        let singular = psi.coeff(nu);
        let keep_audit = is_dominant(nu) && audit_window.is_none_or(|w| w.contains(nu));
        let mut lines: BTreeMap<i64, BigInt> = BTreeMap::new();
        let mut acc = singular.clone();
        for (gamma, s) in &steps {
            if let Some(m) = solved.get(&(nu + *gamma)) {
                let contrib = s * m;
                if keep_audit {
                    *lines.entry(gamma.d1() / 2).or_default() += &contrib;
                }
                acc += contrib;
            }
        }
        if (&acc % &lead) != BigInt::zero() {
            return Err(Error::DegenerateFan(nu));
        }
        let value = acc / &lead;
        if keep_audit {
            audit.push(AuditStep {
                point: nu,
                singular,
                lines,
                value: value.clone(),
            });
        }
        if !value.is_zero() {
            solved.insert(nu, value);
        }
    }

    let values: LatticeSeries = solved.into_iter().collect();
    let dominant = values.filter(is_dominant).into_terms();
    let decomposition = DecompositionResult::new(module, p, dominant)?;
    Ok(FanSolution {
        function: MultiplicityFunction::from_decomposition(&decomposition),
        values,
        audit,
    })
}
