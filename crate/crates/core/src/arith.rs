//! Small number-theoretic helpers on machine integers (group orders and
//! divisor lattices are always desk scale).

use alloc::vec::Vec;

pub use num_integer::{gcd, lcm};

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exponent of the prime `p` in `n` (`n > 0`).
pub fn valuation(p: u64, mut n: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Multiplicative order of `p` modulo `n`; 1 when `n = 1`.
///
/// Returns `None` if `gcd(p, n) != 1`.
pub fn multiplicative_order(p: u64, n: u64) -> Option<u32> {
    if n == 1 {
        return Some(1);
    }
    if gcd(p, n) != 1 {
        return None;
    }
    let mut acc = p % n;
    let mut ord = 1;
    while acc != 1 {
        acc = acc * (p % n) % n;
        ord += 1;
    }
    Some(ord)
}

/// True when `d / e` is prime, i.e. `C_e ⊂ C_d` is a maximal subgroup.
pub fn is_cover(e: u64, d: u64) -> bool {
    d % e == 0 && is_prime(d / e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(6), [1, 2, 3, 6]);
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(9), [1, 3, 9]);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(3, 1), Some(1));
        assert_eq!(multiplicative_order(3, 2), Some(1));
        assert_eq!(multiplicative_order(3, 4), Some(2));
        assert_eq!(multiplicative_order(2, 7), Some(3));
        assert_eq!(multiplicative_order(3, 6), None);
    }

    #[test]
    fn primes() {
        assert_eq!(prime_factors(12), [2, 3]);
        assert_eq!(valuation(3, 54), 3);
        assert!(is_cover(2, 6) && is_cover(3, 6) && !is_cover(1, 6));
    }
}
