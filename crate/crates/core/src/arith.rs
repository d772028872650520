//! Small exact-arithmetic helpers shared by the enumeration and counting ops.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Ascending list of positive divisors of `n` (requires `n >= 1`).
pub fn divisors(n: i64) -> Vec<i64> {
    assert!(n >= 1, "divisors of a non-positive integer");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number of positive divisors.
pub fn sigma0(n: i64) -> u64 {
    factorize(n).iter().map(|&(_, k)| k as u64 + 1).product()
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(n: i64) -> Vec<(i64, u32)> {
    assert!(n >= 1, "factorization of a non-positive integer");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: i64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Multiplicative inverse of `a` modulo `m` (`m >= 1`), in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let a = a.rem_euclid(m);
    let ext = i64::extended_gcd(&a, &m);
    if ext.gcd != 1 {
        return None;
    }
    Some(ext.x.rem_euclid(m))
}

/// `base^exp` in u128 or an overflow error naming `what`.
pub fn checked_pow(base: u128, exp: u32, what: &str) -> Result<u128> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{what}: {base}^{exp} exceeds u128")))
}

/// Partitions of `sum` into parts of size at most `max_part`.
pub fn partitions_with_parts_at_most(sum: u64, max_part: u64) -> u128 {
    let sum = sum as usize;
    let mut dp = vec![0u128; sum + 1];
    dp[0] = 1;
    for part in 1..=(max_part as usize).min(sum.max(1)) {
        for s in part..=sum {
            dp[s] += dp[s - part];
        }
    }
    dp[sum]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(9), [1, 3, 9]);
        assert_eq!(divisors(45), [1, 3, 5, 9, 15, 45]);
        assert_eq!(sigma0(45), 6);
    }

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1), []);
        assert_eq!(factorize(360), [(2, 3), (3, 2), (5, 1)]);
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(15));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(2, 9), Some(5));
        assert_eq!(mod_inverse(3, 9), None);
        assert_eq!(mod_inverse(4, 1), Some(0));
    }

    #[test]
    fn partition_counts() {
        // partitions of 4 into parts <= 2: 2+2, 2+1+1, 1+1+1+1
        assert_eq!(partitions_with_parts_at_most(4, 2), 3);
        assert_eq!(partitions_with_parts_at_most(3, 3), 3);
        assert_eq!(partitions_with_parts_at_most(0, 5), 1);
    }
}
