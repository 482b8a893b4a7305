//! Truncated exact power series and the Maclaurin coefficients of `sec x + tan x`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{HkError, Result};
use crate::Rational;

/// Coefficients `c_0..c_n` of a power series truncated after degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series(pub Vec<Rational>);

impl Series {
    pub fn sin(n: usize) -> Self {
        Series(
            (0..=n)
                .map(|k| {
                    if k % 2 == 0 {
                        Rational::zero()
                    } else {
                        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                        Rational::new(BigInt::from(sign), factorial(k))
                    }
                })
                .collect(),
        )
    }

    pub fn cos(n: usize) -> Self {
        Series(
            (0..=n)
                .map(|k| {
                    if k % 2 == 1 {
                        Rational::zero()
                    } else {
                        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
                        Rational::new(BigInt::from(sign), factorial(k))
                    }
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.0.len().min(other.0.len());
        Series(
            (0..n)
                .map(|k| (0..=k).map(|i| &self.0[i] * &other.0[k - i]).sum())
                .collect(),
        )
    }

    /// Multiplicative inverse; the constant coefficient must be nonzero.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = &self.0[0];
        if c0.is_zero() {
            return Err(HkError::Invalid("series with zero constant term is not invertible".into()));
        }
        let mut out: Vec<Rational> = Vec::with_capacity(self.0.len());
        out.push(c0.recip());
        for k in 1..self.0.len() {
            let s: Rational = (1..=k).map(|j| &self.0[j] * &out[k - j]).sum();
            out.push(-s / c0);
        }
        Ok(Series(out))
    }

    pub fn add(&self, other: &Series) -> Series {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Coefficients of `sec x + tan x` up to degree `n`.
pub fn sec_plus_tan(n: usize) -> Series {
    let sec = Series::cos(n).inverse().expect("cos(0) = 1");
    let tan = Series::sin(n).mul(&sec);
    sec.add(&tan)
}

/// `m_d`, the coefficient of `x^d` in `sec x + tan x`, for `1 <= d <= 64`.
pub fn zigzag_m(d: usize) -> Result<Rational> {
    if !(1..=64).contains(&d) {
        return Err(HkError::BadDims(format!("m_d is provided for 1 <= d <= 64, got {d}")));
    }
    Ok(sec_plus_tan(d).0[d].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn first_coefficients() {
        assert_eq!(zigzag_m(1).unwrap(), q(1, 1));
        assert_eq!(zigzag_m(2).unwrap(), q(1, 2));
        assert_eq!(zigzag_m(3).unwrap(), q(1, 3));
        assert_eq!(zigzag_m(4).unwrap(), q(5, 24));
        assert_eq!(zigzag_m(3).unwrap() + q(1, 1), q(4, 3));
        assert!(zigzag_m(0).is_err());
        assert!(zigzag_m(65).is_err());
    }

    #[test]
    fn series_identities() {
        // sin^2 + cos^2 = 1
        let n = 12;
        let s = Series::sin(n);
        let c = Series::cos(n);
        let one = s.mul(&s).add(&c.mul(&c));
        assert_eq!(one.0[0], q(1, 1));
        assert!(one.0[1..].iter().all(|x| x.is_zero()));
        let inv = c.inverse().unwrap();
        let prod = inv.mul(&c);
        assert!(prod.0[1..].iter().all(|x| x.is_zero()));
    }
}
