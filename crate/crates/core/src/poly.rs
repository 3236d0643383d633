//! Univariate polynomials over Q in the variable `p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|c| BigRational::from_integer((*c).into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(i64, BigInt)]) -> Poly {
        let mut total = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Poly::from_ints(&[1]);
            let mut denom = BigInt::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::from_ints(&[-xj, 1]));
                    denom *= xi - xj;
                }
            }
            total = total.add(&basis.scale(&BigRational::new(yi.clone(), denom)));
        }
        total
    }

    /// Synthetic division by `(p - r)`: quotient and remainder.
    pub fn div_linear(&self, r: &BigRational) -> (Poly, BigRational) {
        if self.is_zero() {
            return (Poly::zero(), BigRational::zero());
        }
        let mut quotient = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut carry = BigRational::zero();
        for i in (0..self.coeffs.len()).rev() {
            carry = &carry * r + &self.coeffs[i];
            if i > 0 {
                quotient[i - 1] = carry.clone();
            }
        }
        (Poly::new(quotient), carry)
    }

    /// Integer coefficients with unit content and positive leading term.
    pub fn primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    /// Rational roots with multiplicity, in increasing order.
    pub fn rational_roots(&self) -> Result<Vec<(BigRational, usize)>> {
        let mut rest = self.clone();
        let mut roots: Vec<(BigRational, usize)> = Vec::new();
        if rest.is_zero() {
            return Ok(roots);
        }
        let zero = BigRational::zero();
        let mut zero_mult = 0;
        while rest.degree().unwrap_or(0) > 0 && rest.coeffs[0].is_zero() {
            rest = rest.div_linear(&zero).0;
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((zero, zero_mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let ints = rest.primitive();
            let lead_divs = divisors(ints.last().expect("nonzero"))?;
            let const_divs = divisors(&ints[0])?;
            let mut candidates: Vec<BigRational> = Vec::new();
            for u in &const_divs {
                for v in &lead_divs {
                    let q = BigRational::new(u.clone(), v.clone());
                    candidates.push(q.clone());
                    candidates.push(-q);
                }
            }
            candidates.sort();
            candidates.dedup();
            for r in candidates {
                let mut mult = 0;
                loop {
                    if rest.degree().unwrap_or(0) == 0 {
                        break;
                    }
                    let (q, rem) = rest.div_linear(&r);
                    if !rem.is_zero() {
                        break;
                    }
                    rest = q;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Whether the polynomial is a product of linear factors over Q.
    pub fn splits_over_q(&self) -> Result<bool> {
        let found: usize = self.rational_roots()?.iter().map(|(_, m)| m).sum();
        Ok(Some(found) == self.degree())
    }

    /// `b² - 4ac` for a quadratic.
    pub fn discriminant(&self) -> Option<BigRational> {
        if self.degree() != Some(2) {
            return None;
        }
        let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
        Some(b * b - BigRational::from_integer(4.into()) * a * c)
    }

    /// Irreducibility over Q for degree at most 3.
    pub fn is_irreducible_over_q(&self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => Ok(false),
            Some(1) => Ok(true),
            Some(2) => {
                let d = self.discriminant().expect("quadratic");
                Ok(!is_rational_square(&d))
            }
            Some(3) => Ok(self.rational_roots()?.is_empty()),
            Some(n) => Err(Error::OutOfRange(format!(
                "irreducibility test covers degree <= 3, got {n}"
            ))),
        }
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(q.numer()) && sq(q.denom())
}

/// Positive divisors of `n` (of `|n|`), by trial division.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let Some(m) = n.to_u128() else {
        return Err(Error::OutOfRange(format!("{n} is too large to factor")));
    };
    if m > 1u128 << 90 {
        return Err(Error::OutOfRange(format!("{n} is too large to factor")));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= m {
        if m % d == 0 {
            small.push(BigInt::from(d));
            if d * d != m {
                large.push(BigInt::from(m / d));
            }
        }
        d += 1;
        if d > 1 << 26 {
            return Err(Error::OutOfRange(format!("{n} is too large to factor")));
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Successive forward differences; row `k` holds the `k`-th differences.
pub fn finite_differences(values: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut rows = vec![values.to_vec()];
    while rows.last().is_some_and(|r| r.len() > 1) {
        let last = rows.last().expect("non-empty");
        let next = last.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    rows
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 if show_coeff => f.write_str("*p")?,
                1 => f.write_str("p")?,
                _ if show_coeff => write!(f, "*p^{i}")?,
                _ => write!(f, "p^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn interpolation_recovers_half_binomial() {
        let pts: Vec<_> = (2..6)
            .map(|p: i64| (p, BigInt::from((p - 1) * (p - 2) / 2)))
            .collect();
        let poly = Poly::interpolate(&pts);
        assert_eq!(poly.coefficients(), &[q(1, 1), q(-3, 2), q(1, 2)]);
        assert_eq!(poly.to_string(), "1/2*p^2 - 3/2*p + 1");
        assert_eq!(poly.eval_int(30), q(29 * 28 / 2, 1));
    }

    #[test]
    fn roots_and_splitting() {
        // p(p-2)(p-4)/3
        let poly = Poly::from_ints(&[0, 8, -6, 1]).scale(&q(1, 3));
        let roots = poly.rational_roots().unwrap();
        assert_eq!(roots, vec![(q(0, 1), 1), (q(2, 1), 1), (q(4, 1), 1)]);
        assert!(poly.splits_over_q().unwrap());

        let sq = Poly::from_ints(&[1, -2, 1]);
        assert_eq!(sq.rational_roots().unwrap(), vec![(q(1, 1), 2)]);

        let irreducible = Poly::from_ints(&[-2, 0, 1]);
        assert!(!irreducible.splits_over_q().unwrap());
        assert!(irreducible.is_irreducible_over_q().unwrap());
        assert!(!sq.is_irreducible_over_q().unwrap());

        let half = Poly::from_ints(&[-1, 2]);
        assert_eq!(half.rational_roots().unwrap(), vec![(q(1, 2), 1)]);
    }

    #[test]
    fn differences_vanish_past_degree() {
        let vals: Vec<BigInt> = (0..8).map(|p: i64| BigInt::from(p * p * p - p)).collect();
        let rows = finite_differences(&vals);
        assert!(rows[3].iter().all(|d| *d == BigInt::from(6)));
        assert!(rows[4].iter().all(|d| d.is_zero()));
    }

    #[test]
    fn division_by_linear_factor() {
        let poly = Poly::from_ints(&[-6, 11, -6, 1]);
        let (quot, rem) = poly.div_linear(&q(3, 1));
        assert!(rem.is_zero());
        assert_eq!(quot, Poly::from_ints(&[2, -3, 1]));
    }
}
