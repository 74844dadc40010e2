//! Big-integer helpers shared by the group, Schnorr, and Paillier code:
//! uniform sampling, modular inverse, Miller-Rabin primality, and prime
//! generation. All randomness comes from caller-supplied RNGs so key
//! material is reproducible from seeds.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;

const SMALL_PRIMES: [u32; 30] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113,
];

const MILLER_RABIN_ROUNDS: usize = 28;

/// Uniform value in `[0, bound)` by rejection sampling.
pub fn random_below(rng: &mut dyn RngCore, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "bound must be positive");
    let bits = bound.bits();
    let bytes = bits.div_ceil(8) as usize;
    let excess_bits = (bytes as u64) * 8 - bits;
    let mask = 0xffu8 >> excess_bits;
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= mask;
        let v = BigUint::from_bytes_be(&buf);
        if &v < bound {
            return v;
        }
    }
}

/// Uniform value in `[lo, hi)`.
pub fn random_range(rng: &mut dyn RngCore, lo: &BigUint, hi: &BigUint) -> BigUint {
    assert!(lo < hi, "empty range");
    lo + random_below(rng, &(hi - lo))
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    use num_bigint::BigInt;
    let a_signed = BigInt::from(a.clone());
    let m_signed = BigInt::from(m.clone());
    let e = a_signed.extended_gcd(&m_signed);
    if !e.gcd.is_one() {
        return None;
    }
    // Normalize the Bezout coefficient into [0, m).
    let x = ((e.x % &m_signed) + &m_signed) % &m_signed;
    x.to_biguint()
}

/// Miller-Rabin probable-prime test: trial division by small primes,
/// then a base-2 round plus random-base rounds drawn from `rng`.
pub fn is_probable_prime(n: &BigUint, rng: &mut dyn RngCore) -> bool {
    if n < &BigUint::from(2u32) {
        return false;
    }
    for p in SMALL_PRIMES {
        let p = BigUint::from(p);
        if n == &p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }

    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let composite_witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            return false;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                return false;
            }
        }
        true
    };

    if composite_witness(&two) {
        return false;
    }
    let lo = BigUint::from(2u32);
    let hi = n_minus_1.clone();
    for _ in 0..MILLER_RABIN_ROUNDS {
        let a = random_range(rng, &lo, &hi);
        if composite_witness(&a) {
            return false;
        }
    }
    true
}

/// Random probable prime with exactly `bits` bits (top bit set, odd).
pub fn gen_prime(bits: u64, rng: &mut dyn RngCore) -> BigUint {
    assert!(bits >= 8, "prime width below 8 bits");
    let bytes = bits.div_ceil(8) as usize;
    let top_bit = (bits - 1) % 8;
    let mask = if top_bit == 7 { 0xff } else { (1u8 << (top_bit + 1)) - 1 };
    let mut buf = vec![0u8; bytes];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= mask;
        buf[0] |= 1 << top_bit;
        buf[bytes - 1] |= 1;
        let candidate = BigUint::from_bytes_be(&buf);
        if is_probable_prime(&candidate, rng) {
            return candidate;
        }
    }
}
