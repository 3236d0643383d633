//! Binomials, factorials and the truncated binomial used by the index formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Which lower indices the truncated binomial `Ĉ_j^i` admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Guard {
    /// `0 <= i <= j`.
    Inclusive,
    /// `0 < i <= j`, `j > 0`, as printed.
    Literal,
}

/// `Ĉ_j^i` under the given guard.
pub fn c_hat(guard: Guard, j: i64, i: i64) -> BigInt {
    let admitted = match guard {
        Guard::Inclusive => 0 <= i && i <= j,
        Guard::Literal => 0 < i && i <= j && j > 0,
    };
    if admitted {
        binomial(j, i)
    } else {
        BigInt::zero()
    }
}

/// `(-1)^e`.
pub fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Halves `x` when it is even.
pub fn exact_half(x: i64) -> Option<i64> {
    (x % 2 == 0).then_some(x / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal() {
        for n in 1..20 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(40, 20), BigInt::from(137846528820u64));
    }

    #[test]
    fn guards() {
        assert_eq!(c_hat(Guard::Inclusive, 3, 0), BigInt::one());
        assert_eq!(c_hat(Guard::Literal, 3, 0), BigInt::zero());
        assert_eq!(c_hat(Guard::Literal, 0, 0), BigInt::zero());
        assert_eq!(c_hat(Guard::Literal, 4, 2), BigInt::from(6));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3628800));
    }
}
