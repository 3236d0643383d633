//! Table polynomials and Γ-ratio families for `M(μ, p)` at fixed offsets
//! from the top weight, with their weight maps and polynomial fits.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::binomial::{factorial, Guard};
use crate::engine::MultiplicityTower;
use crate::error::{Error, Result};
use crate::lattice::{Fundamental, HalfInt, Weight};
use crate::poly::{finite_differences, Poly};

/// Which reading of a printed formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaVariant {
    /// Corrected so that it matches the direct construction.
    Validated,
    /// As printed.
    Literal,
}

impl FormulaVariant {
    pub fn guard(self) -> Guard {
        match self {
            FormulaVariant::Validated => Guard::Inclusive,
            FormulaVariant::Literal => Guard::Literal,
        }
    }
}

/// Which parameter-to-weight map to use for the tables and diagonal lines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoordinateMap {
    /// Spinor `pω2 - aα2 - (b-1)e1`; diagonal `pω1 - tα1 - (s-1)e1`.
    Validated,
    /// Spinor `pω2 - aα2 - (b-1)α1`; diagonal `pω2 - tα1 - (s-1)e1`.
    Literal,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn integral(family: impl Into<String>, p: u32, value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegral {
            family: family.into(),
            p,
            value: value.to_string(),
        })
    }
}

/// Product of `(p + shift)` over `shifts`, divided by `den`.
fn falling(p: i64, shifts: &[i64], den: i64) -> BigRational {
    shifts
        .iter()
        .fold(BigRational::one(), |acc, s| acc * rat(p + s))
        / rat(den)
}

/// Spinor table entry at column `a` and row `b`.
pub fn spinor_table(a: HalfInt, b: u32, p: u32) -> Result<BigInt> {
    let out_of_range = || Error::OutOfRange(format!("spinor table has no entry a={a}, b={b}"));
    if !(0..=5).contains(&a.twice()) || !(1..=3).contains(&b) {
        return Err(out_of_range());
    }
    let Some(ai) = a.to_integer() else {
        return Ok(BigInt::zero());
    };
    let pi = p as i64;
    let value = match (ai, b) {
        (0, 1) => rat(1),
        (1, 1) => falling(pi, &[-1], 1),
        (2, 1) => falling(pi, &[0, -3], 2),
        (0, 2) => rat(0),
        (1, 2) => falling(pi, &[0, -1], 2),
        (2, 2) => falling(pi, &[-1, 1, -3], 3),
        (1, 3) => rat(0),
        (2, 3) => falling(pi, &[-1, -2, -3, 2], 12),
        _ => return Err(out_of_range()),
    };
    integral(format!("spinor-table-b{b}-a{a}"), p, value)
}

/// Vector table entry at column `a` and row `p - row`.
pub fn vector_table(a: u32, row: u32, p: u32) -> Result<BigInt> {
    if a > 3 || row > 3 {
        return Err(Error::OutOfRange(format!(
            "vector table has no entry a={a}, row=p-{row}"
        )));
    }
    let pi = p as i64;
    let value = match (row, a) {
        (0, 0) => rat(1),
        (1, 1) => falling(pi, &[-1], 1),
        (2, 0) => falling(pi, &[0, -1], 2),
        (2, 1) => falling(pi, &[-1, -2], 2),
        (2, 2) => falling(pi, &[0, -3], 2),
        (3, 0) => falling(pi, &[-1, -2, -3], 6),
        (3, 1) => falling(pi, &[0, -1, -3], 2),
        (3, 2) => falling(pi, &[0, -2, -4], 3),
        (3, 3) => falling(pi, &[0, -1, -5], 6),
        _ => rat(0),
    };
    integral(format!("vector-table-r{row}-a{a}"), p, value)
}

/// `1/Γ(n)`, zero at the poles `n <= 0`.
fn inv_gamma(n: i64) -> BigRational {
    if n <= 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial((n - 1) as u64))
    }
}

fn poly_in_t(coeffs: &[i64], t: i64) -> i64 {
    coeffs.iter().rev().fold(0, |acc, c| acc * t + c)
}

/// The non-binomial factor of the `s >= 4` families as a polynomial in `p`.
pub fn residual_factor(s: u32, t: u32, variant: FormulaVariant) -> Option<Poly> {
    let t = t as i64;
    let c = |coeffs: &[i64]| poly_in_t(coeffs, t);
    let coeffs = match (s, variant) {
        (4, _) => vec![
            c(&[6, 8, 8, 4, 1]),
            -2 * (t + 2) * (t + 2) * (t + 1),
            c(&[2, 6, 1]),
        ],
        (5, FormulaVariant::Validated) => {
            vec![c(&[12, 60, 29, 6, 1]), -c(&[18, 53, 17, 2]), c(&[6, 11, 1])]
        }
        (5, FormulaVariant::Literal) => vec![
            c(&[6, 8, 8, 4, 1]),
            -(2 * t + 4) * (t + 1) * (t + 2),
            c(&[6, 11, 1]),
        ],
        (6, _) => vec![
            -(t + 1) * (t + 3) * c(&[12, 208, 68, 8, 1]),
            c(&[516, 1408, 1086, 326, 45, 3]),
            -c(&[276, 654, 309, 54, 3]),
            c(&[36, 86, 21, 1]),
        ],
        _ => return None,
    };
    Some(Poly::from_ints(&coeffs))
}

/// The `s`-th diagonal family at line `t`, as an exact integer.
pub fn diagonal_formula(s: u32, t: u32, p: u32, variant: FormulaVariant) -> Result<BigInt> {
    if !(1..=6).contains(&s) || p < 1 {
        return Err(Error::OutOfRange(format!(
            "diagonal family needs 1 <= s <= 6 and p >= 1, got s={s}, p={p}"
        )));
    }
    let (pi, ti) = (p as i64, t as i64);
    let gp = BigRational::from_integer(factorial(p as u64));
    let residual = residual_factor(s, t, variant)
        .map(|q| q.eval_int(pi))
        .unwrap_or_else(BigRational::one);
    let value = match s {
        1 => gp * rat(pi + 1 - 2 * ti) * inv_gamma(pi + 2 - ti) * inv_gamma(ti + 1),
        2 => {
            gp * rat(pi - ti) * rat(pi - 2 * ti) * inv_gamma(pi + 2 - ti) * inv_gamma(ti)
                / rat(ti + 1)
        }
        3 => gp * rat(pi - 2 * ti - 1) * inv_gamma(pi - ti) * inv_gamma(ti + 1) / rat(2),
        4 => {
            gp * rat(pi - 2 * ti - 2) * inv_gamma(pi + 1 - ti) * inv_gamma(ti + 3) * residual
                / rat(6)
        }
        5 => {
            gp * rat(pi - 2 * ti - 3) * inv_gamma(pi - ti) * inv_gamma(ti + 3) * residual / rat(24)
        }
        _ => {
            gp * rat(pi - 2 * ti - 4) * inv_gamma(pi - ti) * inv_gamma(ti + 4) * residual / rat(120)
        }
    };
    integral(format!("diagonal-s{s}-t{t}"), p, value)
}

pub fn spinor_table_weight(a: HalfInt, b: u32, p: u32, map: CoordinateMap) -> Option<Weight> {
    let (pi, b) = (p as i64, b as i64);
    let d1 = pi - 2 * (b - 1);
    let d2 = match map {
        CoordinateMap::Validated => pi - a.twice(),
        CoordinateMap::Literal => pi - a.twice() + 2 * (b - 1),
    };
    Weight::doubled(d1, d2).ok()
}

pub fn vector_table_weight(a: u32, row: u32, p: u32) -> Weight {
    Weight::int(p as i64 - row as i64, a as i64)
}

pub fn diagonal_weight(s: u32, t: u32, p: u32, map: CoordinateMap) -> Weight {
    let (pi, s, t) = (p as i64, s as i64, t as i64);
    match map {
        CoordinateMap::Validated => Weight::int(pi - t - s + 1, t),
        CoordinateMap::Literal => Weight::raw(pi - 2 * t - 2 * s + 2, pi + 2 * t),
    }
}

/// One closed-form family, a function of `p` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormFamily {
    SpinorTable { a: HalfInt, b: u32 },
    VectorTable { a: u32, row: u32 },
    Diagonal { s: u32, t: u32 },
}

impl ClosedFormFamily {
    pub fn id(&self) -> String {
        match self {
            ClosedFormFamily::SpinorTable { a, b } => format!("spinor-table-b{b}-a{a}"),
            ClosedFormFamily::VectorTable { a, row } => format!("vector-table-r{row}-a{a}"),
            ClosedFormFamily::Diagonal { s, t } => format!("diagonal-s{s}-t{t}"),
        }
    }

    pub fn module(&self) -> Fundamental {
        match self {
            ClosedFormFamily::SpinorTable { .. } => Fundamental::Spinor,
            _ => Fundamental::Vector,
        }
    }

    /// Every printed spinor cell: `a ∈ {0, 1/2, …, 5/2}`, `b ∈ {1, 2, 3}`,
    /// except the blank cell `a = 0, b = 3`.
    pub fn spinor_table() -> Vec<ClosedFormFamily> {
        let mut out = Vec::new();
        for b in 1..=3 {
            for a2 in 0..=5 {
                if !(a2 == 0 && b == 3) {
                    out.push(ClosedFormFamily::SpinorTable {
                        a: HalfInt::from_twice(a2),
                        b,
                    });
                }
            }
        }
        out
    }

    pub fn vector_table() -> Vec<ClosedFormFamily> {
        (0..=3)
            .flat_map(|row| (0..=3).map(move |a| ClosedFormFamily::VectorTable { a, row }))
            .collect()
    }

    pub fn evaluate(&self, p: u32, variant: FormulaVariant) -> Result<BigInt> {
        match *self {
            ClosedFormFamily::SpinorTable { a, b } => spinor_table(a, b, p),
            ClosedFormFamily::VectorTable { a, row } => vector_table(a, row, p),
            ClosedFormFamily::Diagonal { s, t } => diagonal_formula(s, t, p, variant),
        }
    }

    /// The weight the family describes at `p`; `None` off the lattice.
    pub fn weight(&self, p: u32, map: CoordinateMap) -> Option<Weight> {
        match *self {
            ClosedFormFamily::SpinorTable { a, b } => spinor_table_weight(a, b, p, map),
            ClosedFormFamily::VectorTable { a, row } => Some(vector_table_weight(a, row, p)),
            ClosedFormFamily::Diagonal { s, t } => Some(diagonal_weight(s, t, p, map)),
        }
    }

    /// Parameters for which the family is asserted to equal `M`.
    pub fn in_domain(&self, p: u32) -> bool {
        match *self {
            ClosedFormFamily::Diagonal { t, .. } => p >= 1 && t <= p,
            _ => p >= 1,
        }
    }

    /// Engine value at the mapped weight; off-lattice images count as zero.
    pub fn engine_value(
        &self,
        tower: &mut MultiplicityTower,
        p: u32,
        map: CoordinateMap,
    ) -> BigInt {
        debug_assert_eq!(tower.module(), self.module());
        match self.weight(p, map) {
            Some(w) => tower.value(p, w),
            None => BigInt::zero(),
        }
    }
}

impl fmt::Display for ClosedFormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

/// An exact fit of `p ↦ M(offset(p), p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialFit {
    pub poly: Poly,
    pub window: RangeInclusive<u32>,
    /// `(p, predicted, engine)` beyond the window.
    pub predictions: Vec<(u32, BigInt, BigInt)>,
}

impl PolynomialFit {
    pub fn coefficients(&self) -> &[BigRational] {
        self.poly.coefficients()
    }
}

/// Fits a polynomial of degree at most `degree_bound` to the engine values
/// over `p_window`, requires the finite differences past the bound to vanish,
/// and checks the fit at the next three powers.
pub fn fit_polynomial(
    tower: &mut MultiplicityTower,
    offset: impl Fn(u32) -> Weight,
    degree_bound: usize,
    p_window: RangeInclusive<u32>,
) -> Result<PolynomialFit> {
    let ps: Vec<u32> = p_window.clone().collect();
    if ps.len() <= degree_bound {
        return Err(Error::OutOfRange(format!(
            "window of {} powers cannot fix degree {degree_bound}",
            ps.len()
        )));
    }
    let values: Vec<BigInt> = ps.iter().map(|p| tower.value(*p, offset(*p))).collect();
    let rows = finite_differences(&values);
    if let Some(row) = rows.get(degree_bound + 1) {
        if row.iter().any(|d| !d.is_zero()) {
            return Err(Error::Polynomiality(format!(
                "order {} differences do not vanish on p in {:?}",
                degree_bound + 1,
                p_window
            )));
        }
    }
    let points: Vec<(i64, BigInt)> = ps
        .iter()
        .zip(&values)
        .take(degree_bound + 1)
        .map(|(p, v)| (*p as i64, v.clone()))
        .collect();
    let poly = Poly::interpolate(&points);
    let mut predictions = Vec::new();
    let last = *p_window.end();
    for p in last + 1..=last + 3 {
        let predicted = poly.eval_int(p as i64);
        let actual = tower.value(p, offset(p));
        if predicted != BigRational::from_integer(actual.clone()) {
            return Err(Error::Polynomiality(format!(
                "fit predicts {predicted} at p={p}, engine gives {actual}"
            )));
        }
        predictions.push((p, predicted.to_integer(), actual));
    }
    Ok(PolynomialFit {
        poly,
        window: p_window,
        predictions,
    })
}

/// How the engine polynomial for the diagonal `(s, t)` factors over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationProfile {
    pub s: u32,
    pub t: u32,
    pub poly: Poly,
    pub roots: Vec<(BigRational, usize)>,
    pub splits: bool,
    /// Printed non-binomial factor for `s >= 4`.
    pub residual: Option<Poly>,
    pub residual_irreducible: Option<bool>,
}

/// Fits `M((p-t-s+1, t), p)` (degree `t + s - 1`) and factors it.
pub fn factorization_profile(
    tower: &mut MultiplicityTower,
    s: u32,
    t: u32,
) -> Result<FactorizationProfile> {
    let degree = (t + s - 1) as usize;
    let window = 1..=(degree as u32 + 2);
    let fit = fit_polynomial(
        tower,
        |p| diagonal_weight(s, t, p, CoordinateMap::Validated),
        degree,
        window,
    )?;
    let roots = fit.poly.rational_roots()?;
    let splits = fit.poly.splits_over_q()?;
    let residual = residual_factor(s, t, FormulaVariant::Validated);
    let residual_irreducible = match &residual {
        Some(q) => Some(q.is_irreducible_over_q()?),
        None => None,
    };
    Ok(FactorizationProfile {
        s,
        t,
        poly: fit.poly,
        roots,
        splits,
        residual,
        residual_irreducible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::recur_multiplicity;

    fn h(s: &str) -> HalfInt {
        s.parse().unwrap()
    }

    #[test]
    fn spinor_examples() {
        assert_eq!(spinor_table(h("1"), 1, 3).unwrap(), BigInt::from(2));
        assert_eq!(spinor_table(h("1"), 2, 3).unwrap(), BigInt::from(3));
        assert_eq!(spinor_table(h("2"), 3, 4).unwrap(), BigInt::from(3));
        assert_eq!(spinor_table(h("2"), 2, 2).unwrap(), BigInt::from(-1));
        assert_eq!(spinor_table(h("3/2"), 2, 9).unwrap(), BigInt::zero());
        assert!(spinor_table(h("0"), 3, 4).is_err());
        assert!(spinor_table(h("3"), 1, 4).is_err());
    }

    #[test]
    fn spinor_table_weights() {
        let w = spinor_table_weight(h("1"), 2, 3, CoordinateMap::Validated).unwrap();
        assert_eq!(w, "1/2,1/2".parse().unwrap());
        assert!(spinor_table_weight(h("1/2"), 1, 3, CoordinateMap::Validated).is_none());
        let lit = spinor_table_weight(h("1"), 2, 3, CoordinateMap::Literal).unwrap();
        assert_eq!(lit, "1/2,3/2".parse().unwrap());
    }

    #[test]
    fn vector_examples() {
        assert_eq!(vector_table(0, 0, 7).unwrap(), BigInt::one());
        assert_eq!(vector_table(0, 2, 2).unwrap(), BigInt::one());
        assert_eq!(vector_table(0, 1, 9).unwrap(), BigInt::zero());
        assert_eq!(vector_table(0, 3, 3).unwrap(), BigInt::zero());
        assert!(vector_table(4, 0, 3).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let v = FormulaVariant::Validated;
        assert_eq!(diagonal_formula(1, 2, 5, v).unwrap(), BigInt::from(5));
        for p in 3..12i64 {
            assert_eq!(
                diagonal_formula(2, 2, p as u32, v).unwrap(),
                BigInt::from(p * (p - 2) * (p - 4) / 3)
            );
            assert_eq!(
                diagonal_formula(2, 1, p as u32, v).unwrap(),
                BigInt::from((p - 1) * (p - 2) / 2)
            );
            assert_eq!(diagonal_formula(2, 0, p as u32, v).unwrap(), BigInt::zero());
        }
        assert!(diagonal_formula(7, 0, 3, v).is_err());
    }

    #[test]
    fn diagonal_families_match_engine_on_small_powers() {
        let mut tower = MultiplicityTower::new(Fundamental::Vector);
        for s in 1..=6 {
            for p in 1..=9 {
                for t in 0..=p {
                    let fam = ClosedFormFamily::Diagonal { s, t };
                    assert_eq!(
                        fam.evaluate(p, FormulaVariant::Validated).unwrap(),
                        fam.engine_value(&mut tower, p, CoordinateMap::Validated),
                        "{fam} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn printed_fifth_family_differs() {
        let mut tower = MultiplicityTower::new(Fundamental::Vector);
        let fam = ClosedFormFamily::Diagonal { s: 5, t: 0 };
        let bad = (1..=12).any(|p| {
            fam.evaluate(p, FormulaVariant::Literal).ok()
                != Some(fam.engine_value(&mut tower, p, CoordinateMap::Validated))
        });
        assert!(bad);
    }

    #[test]
    fn fits() {
        let mut tower = MultiplicityTower::new(Fundamental::Vector);
        let fit = fit_polynomial(&mut tower, |p| Weight::int(p as i64 - 2, 1), 2, 2..=6).unwrap();
        assert_eq!(
            fit.poly,
            Poly::from_ints(&[2, -3, 1]).scale(&BigRational::new(1.into(), 2.into()))
        );
        let fit = fit_polynomial(&mut tower, |p| Weight::int(p as i64 - 3, 2), 3, 3..=8).unwrap();
        assert_eq!(
            fit.poly,
            Poly::from_ints(&[0, 8, -6, 1]).scale(&BigRational::new(1.into(), 3.into()))
        );
        assert!(fit_polynomial(&mut tower, |p| Weight::int(p as i64, 0), 2, 1..=2).is_err());

        let mut sp = MultiplicityTower::new(Fundamental::Spinor);
        let fit = fit_polynomial(&mut sp, |p| Weight::raw(p as i64, p as i64), 0, 1..=4).unwrap();
        assert_eq!(fit.poly, Poly::from_ints(&[1]));
    }

    #[test]
    fn underestimated_degree_is_rejected() {
        let mut tower = MultiplicityTower::new(Fundamental::Vector);
        let r = fit_polynomial(&mut tower, |p| Weight::int(p as i64 - 3, 2), 2, 3..=9);
        assert!(matches!(r, Err(Error::Polynomiality(_))));
    }

    #[test]
    fn factorization_small_cases() {
        let mut tower = MultiplicityTower::new(Fundamental::Vector);
        let prof = factorization_profile(&mut tower, 2, 2).unwrap();
        assert!(prof.splits);
        let prof = factorization_profile(&mut tower, 4, 3).unwrap();
        assert!(!prof.splits);
        assert_eq!(prof.residual_irreducible, Some(true));
        let prof = factorization_profile(&mut tower, 4, 0).unwrap();
        assert_eq!(prof.residual_irreducible, Some(false));
    }

    #[test]
    fn vector_and_spinor_upper_lines_coincide() {
        let v = recur_multiplicity(Fundamental::Vector, 10);
        let s = recur_multiplicity(Fundamental::Spinor, 10);
        for p in 0..=10u32 {
            for t in 0..=p as i64 {
                let pi = p as i64;
                assert_eq!(
                    v[p as usize].value(Weight::int(pi - t, t)),
                    s[p as usize].value(Weight::raw(pi, pi - 2 * t))
                );
            }
        }
    }
}
