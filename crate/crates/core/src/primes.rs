//! Word-size primes used for modular rank computations.

/// Default pair of primes near 2^61 used for cross-checked modular runs.
pub const DEFAULT_PRIMES: [u64; 2] = [2305843009213693951, 2305843009213693921];

/// Used only when the two configured primes disagree.
pub const FALLBACK_PRIME: u64 = 2305843009213693907;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `n`, if any.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..n).rev().find(|&k| is_prime(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_prime() {
        for p in DEFAULT_PRIMES {
            assert!(is_prime(p));
        }
        assert!(is_prime(FALLBACK_PRIME));
        assert_eq!(prev_prime(DEFAULT_PRIMES[1]), Some(FALLBACK_PRIME));
    }

    #[test]
    fn small_cases() {
        let primes: alloc::vec::Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2,3,5,7
        assert!(!is_prime(1 << 61));
    }
}
