//! Exact binomial coefficients.

use crate::error::{Error, Result};

/// `C(n, k)` computed exactly in 128-bit integers.
///
/// Every intermediate `C(n - k + i, i)` is an integer, so the running
/// product divides exactly. Overflow is reported instead of wrapping.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = (n - k + i + 1) as u128;
        acc = acc
            .checked_mul(num)
            .ok_or(Error::Capacity {
                what: "binomial n",
                value: n as usize,
                limit: 127,
            })?
            / (i as u128 + 1);
    }
    Ok(acc)
}

/// `C(n, k)` as a float, exact whenever the integer fits in 53 bits.
pub fn binomial_f64(n: u64, k: u64) -> Result<f64> {
    binomial(n, k).map(|b| b as f64)
}

/// `C(n, k)` as a float for any size: exact while the integer fits in
/// 128 bits, a rounded running product beyond.
pub fn binomial_real(n: u64, k: u64) -> f64 {
    match binomial(n, k) {
        Ok(b) => b as f64,
        Err(_) => {
            let k = k.min(n - k);
            (0..k).fold(1.0, |acc, i| acc * (n - k + i + 1) as f64 / (i + 1) as f64)
        }
    }
}

/// `n!` as a float. Exact through `22!`, correctly rounded products beyond.
pub fn factorial_f64(n: u64) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(5, 6).unwrap(), 0);
        assert_eq!(binomial(60, 30).unwrap(), 118_264_581_564_861_424);
    }

    #[test]
    fn pascal_rule_holds() {
        for n in 1..70u64 {
            for k in 1..n {
                let lhs = binomial(n, k).unwrap();
                let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(binomial(130, 65).is_err());
        assert!(binomial(120, 60).is_ok());
    }
}
