//! Combinatorial number functions: factorials, double factorials, binomials,
//! Stirling numbers of the first kind, composition sums, and power sums.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num::bigint::BigInt;
use num::{One, Zero};

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// `k!!` for `k >= -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(Error::Domain(format!("double factorial of {k}")));
    }
    let mut acc = BigInt::one();
    let mut m = k;
    while m > 1 {
        acc *= m;
        m -= 2;
    }
    Ok(acc)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn multinomial(parts: &[u64]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u64;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// Unsigned Stirling numbers of the first kind `c(n, k)`, satisfying
/// `[z^n] (log 1/(1-z))^k = c(n, k) k! / n!`.
pub fn stirling_first_unsigned(n: u64, k: u64) -> Result<BigInt> {
    if k > n {
        return Err(Error::Domain(format!("stirling c({n}, {k}) needs k <= n")));
    }
    // c(n, k) = c(n-1, k-1) + (n-1) c(n-1, k), c(0, 0) = 1.
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m as usize + 1];
        for (j, value) in row.iter().enumerate() {
            next[j + 1] += value;
            next[j] += value * (m - 1);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

/// Sum over compositions `(n_1, ..., n_k)` of `n` into `k` positive parts of
/// `n_1! ... n_k! / n!`.
pub fn composition_factorial_sum(n: u64, k: u64) -> Result<Rational> {
    if !(2..=n).contains(&k) {
        return Err(Error::Domain(format!(
            "composition sum needs 2 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    // s[m][j] = sum over compositions of m into j positive parts of the
    // product of factorials.
    let n = n as usize;
    let k = k as usize;
    let mut s = vec![vec![BigInt::zero(); k + 1]; n + 1];
    s[0][0] = BigInt::one();
    for j in 1..=k {
        for m in j..=n {
            let mut acc = BigInt::zero();
            for last in 1..=(m - j + 1) {
                let prev = &s[m - last][j - 1];
                if !prev.is_zero() {
                    acc += prev * factorial(last as u64);
                }
            }
            s[m][j] = acc;
        }
    }
    Ok(Rational::new(s[n][k].clone(), factorial(n as u64)))
}

/// Exact power sum `1^k + 2^k + ... + t^k` for integer `t >= 0`.
pub fn power_sum(k: u32, t: &BigInt) -> Rational {
    if t.is_zero() || t < &BigInt::zero() {
        return Rational::zero();
    }
    // Faulhaber via the recurrence
    // (t+1)^(k+1) - 1 = sum_{j=0}^{k} C(k+1, j) S_j(t).
    let mut sums: Vec<Rational> = Vec::with_capacity(k as usize + 1);
    for kk in 0..=k {
        let mut lhs = Rational::from_integer((t + 1u32).pow(kk + 1) - 1);
        for (j, s) in sums.iter().enumerate() {
            lhs -= Rational::from_integer(binomial(kk as u64 + 1, j as u64)) * s;
        }
        sums.push(lhs / Rational::from_integer(BigInt::from(kk + 1)));
    }
    sums[k as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::series::PowerSeries;

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert_eq!(double_factorial(0).unwrap(), BigInt::one());
        assert_eq!(double_factorial(-1).unwrap(), BigInt::one());
        assert_eq!(double_factorial(6).unwrap(), BigInt::from(48));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn odd_double_factorial_identity() {
        // (2k+1)!! = (2k+1)! / (2^k k!) for k = 0..20.
        for k in 0u64..=20 {
            let lhs = double_factorial(2 * k as i64 + 1).unwrap();
            let rhs = factorial(2 * k + 1) / (BigInt::from(2).pow(k as u32) * factorial(k));
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn stirling_small_values() {
        assert_eq!(stirling_first_unsigned(3, 2).unwrap(), BigInt::from(3));
        assert_eq!(stirling_first_unsigned(4, 1).unwrap(), BigInt::from(6));
        for n in 0..8 {
            assert_eq!(stirling_first_unsigned(n, n).unwrap(), BigInt::one());
        }
        assert!(stirling_first_unsigned(2, 3).is_err());
    }

    #[test]
    fn stirling_matches_log_power_series() {
        // [z^N] (log 1/(1-z))^k = c(N, k) k! / N!  for N <= 12.
        for n in 1u64..=12 {
            let log = PowerSeries::log_inv_one_minus_z(n as usize);
            for k in 1u64..=n {
                let coeff = log.pow(k as u32).coefficient(n as usize);
                let expected = Rational::new(
                    stirling_first_unsigned(n, k).unwrap() * factorial(k),
                    factorial(n),
                );
                assert_eq!(coeff, expected, "N = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn composition_sum_examples() {
        // n = 3, k = 2: compositions (1,2), (2,1) -> (2 + 2)/6 = 2/3.
        assert_eq!(composition_factorial_sum(3, 2).unwrap(), rat(2, 3));
        // n = k = 2: single composition (1,1) -> 1/2.
        assert_eq!(composition_factorial_sum(2, 2).unwrap(), rat(1, 2));
        assert!(composition_factorial_sum(3, 4).is_err());
    }

    #[test]
    fn composition_sum_matches_enumeration() {
        // Direct enumeration oracle for small n.
        fn enumerate(n: u64, k: u64) -> Rational {
            fn go(rem: u64, parts: u64, acc: BigInt, total: &mut BigInt) {
                if parts == 1 {
                    if rem >= 1 {
                        *total += acc * factorial(rem);
                    }
                    return;
                }
                for first in 1..=(rem - parts + 1) {
                    go(rem - first, parts - 1, &acc * factorial(first), total);
                }
            }
            let mut total = BigInt::zero();
            go(n, k, BigInt::one(), &mut total);
            Rational::new(total, factorial(n))
        }
        for n in 2u64..=9 {
            for k in 2..=n {
                assert_eq!(
                    composition_factorial_sum(n, k).unwrap(),
                    enumerate(n, k),
                    "n = {n}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn composition_sum_bound() {
        // The 4/n bound, for all 2 <= k <= n <= 30.
        for n in 2u64..=30 {
            for k in 2..=n {
                let s = composition_factorial_sum(n, k).unwrap();
                assert!(s <= rat(4, n as i64), "n = {n}, k = {k}: {s}");
            }
        }
    }

    #[test]
    fn power_sum_values() {
        assert_eq!(power_sum(0, &BigInt::from(5)), int(5));
        assert_eq!(power_sum(1, &BigInt::from(100)), int(5050));
        assert_eq!(power_sum(2, &BigInt::from(4)), int(30));
        assert_eq!(power_sum(3, &BigInt::from(3)), int(36));
        assert_eq!(power_sum(2, &BigInt::zero()), int(0));
    }

    #[test]
    fn multinomial_value() {
        assert_eq!(multinomial(&[1, 2, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[3]), BigInt::one());
    }
}
