//! Scalar arithmetic in the prime field F_p.

use crate::error::{Error, Result};

/// Largest modulus accepted. Keeps every product of two residues inside a `u64`
/// with room for accumulation.
pub const MAX_PRIME: u32 = 1 << 31;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u32) -> Result<()> {
    if p < MAX_PRIME && is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadPrime(p))
    }
}

#[inline]
pub fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub(a: u32, b: u32, p: u32) -> u32 {
    add(a, p - b % p, p)
}

#[inline]
pub fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat.
///
/// Panics on zero; callers only invert pivots.
pub fn inv(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "inverting zero in F_{p}");
    pow(a, (p - 2) as u64, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(check_prime(4).is_err());
        assert!(check_prime(65521).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(mul(a, inv(a, p), p), 1);
            }
        }
        assert_eq!(reduce_i64(-1, 3), 2);
        assert_eq!(sub(0, 1, 3), 2);
    }
}
