//! Exact rational scalars and the integer combinatorics that feed them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QScalar = BigRational;

pub fn q(n: i64) -> QScalar {
    QScalar::from_integer(BigInt::from(n))
}

pub fn qfrac(num: i64, den: i64) -> QScalar {
    QScalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn qint(n: BigInt) -> QScalar {
    QScalar::from_integer(n)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial `(x)_m = x (x-1) ... (x-m+1)`; `(x)_0 = 1`.
pub fn falling(x: i64, m: u64) -> BigInt {
    (0..m as i64).fold(BigInt::one(), |acc, j| acc * (x - j))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> QScalar {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        qint(p)
    } else {
        QScalar::new(BigInt::one(), p)
    }
}

pub fn sign(odd: bool) -> QScalar {
    if odd {
        -QScalar::one()
    } else {
        QScalar::one()
    }
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(x: &QScalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_q(s: &str) -> Option<QScalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(QScalar::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(qint),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinatorics() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(falling(5, 3), BigInt::from(60));
        assert_eq!(falling(-1, 2), BigInt::from(2));
        assert_eq!(falling(7, 0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(pow2(-3), qfrac(1, 8));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_q("-7/3"), Some(qfrac(-7, 3)));
        assert_eq!(parse_q("4/2"), Some(q(2)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(fmt_q(&qfrac(6, -4)), "-3/2");
    }
}
