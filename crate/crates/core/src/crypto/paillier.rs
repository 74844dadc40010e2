//! Paillier additive homomorphic encryption with the `g = n + 1`
//! simplification, plus the signed fixed-point encoding used to carry
//! model-update coordinates: values scaled by 10^6, with the upper half
//! of `[0, n)` decoding as negative.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::RngCore;
use thiserror::Error;

use super::num::{gen_prime, mod_inverse, random_range};

/// Fixed-point scale for encoding real-valued coordinates.
pub const FIXED_POINT_SCALE: f64 = 1e6;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PaillierError {
    #[error("plaintext not in [0, n)")]
    MessageOutOfRange,
    #[error("ciphertext not in [1, n^2)")]
    CiphertextOutOfRange,
    #[error("fixed-point overflow: |value| >= n / (2 * 10^6)")]
    FixedPointOverflow,
    #[error("value not representable after decoding")]
    DecodeOverflow,
    #[error("key width below 64 bits")]
    KeyTooSmall,
}

/// Public half: modulus `n` and cached `n^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierPublic {
    pub n: BigUint,
    pub nn: BigUint,
}

/// Full key: public part plus the decryption exponent
/// `lambda = lcm(p-1, q-1)` and `mu = L(g^lambda mod n^2)^-1 mod n`.
#[derive(Debug, Clone)]
pub struct PaillierKey {
    pub public: PaillierPublic,
    lambda: BigUint,
    mu: BigUint,
}

/// A Paillier ciphertext: a value in `[1, n^2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaillierCiphertext(pub BigUint);

fn l_function(x: &BigUint, n: &BigUint) -> BigUint {
    (x - BigUint::one()) / n
}

impl PaillierKey {
    /// Generate a key with an (approximately) `bits`-wide modulus from
    /// two `bits/2` primes. Deterministic given the RNG.
    pub fn generate(bits: u64, rng: &mut dyn RngCore) -> Result<PaillierKey, PaillierError> {
        if bits < 64 {
            return Err(PaillierError::KeyTooSmall);
        }
        loop {
            let p = gen_prime(bits / 2, rng);
            let q = gen_prime(bits / 2, rng);
            if p == q {
                continue;
            }
            let n = &p * &q;
            let nn = &n * &n;
            let lambda = (&p - BigUint::one()).lcm(&(&q - BigUint::one()));
            // g = n + 1, so g^lambda mod n^2 = 1 + lambda*n mod n^2.
            let g_lambda = (BigUint::one() + &lambda * &n) % &nn;
            let Some(mu) = mod_inverse(&l_function(&g_lambda, &n), &n) else {
                continue;
            };
            return Ok(PaillierKey {
                public: PaillierPublic { n, nn },
                lambda,
                mu,
            });
        }
    }

    pub fn decrypt(&self, c: &PaillierCiphertext) -> Result<BigUint, PaillierError> {
        let nn = &self.public.nn;
        if c.0.is_zero() || &c.0 >= nn {
            return Err(PaillierError::CiphertextOutOfRange);
        }
        let u = c.0.modpow(&self.lambda, nn);
        Ok((l_function(&u, &self.public.n) * &self.mu) % &self.public.n)
    }
}

impl PaillierPublic {
    /// Encrypt `m` in `[0, n)` with randomness drawn from `rng`
    /// (redrawn until coprime with `n`).
    pub fn encrypt(
        &self,
        m: &BigUint,
        rng: &mut dyn RngCore,
    ) -> Result<PaillierCiphertext, PaillierError> {
        if m >= &self.n {
            return Err(PaillierError::MessageOutOfRange);
        }
        let r = loop {
            let candidate = random_range(rng, &BigUint::one(), &self.n);
            if candidate.gcd(&self.n).is_one() {
                break candidate;
            }
        };
        // (n + 1)^m mod n^2 = 1 + m*n mod n^2.
        let g_m = (BigUint::one() + m * &self.n) % &self.nn;
        let r_n = r.modpow(&self.n, &self.nn);
        Ok(PaillierCiphertext((g_m * r_n) % &self.nn))
    }

    /// Homomorphic addition: ciphertext multiplication mod `n^2`.
    pub fn add(
        &self,
        a: &PaillierCiphertext,
        b: &PaillierCiphertext,
    ) -> Result<PaillierCiphertext, PaillierError> {
        if a.0.is_zero() || a.0 >= self.nn || b.0.is_zero() || b.0 >= self.nn {
            return Err(PaillierError::CiphertextOutOfRange);
        }
        Ok(PaillierCiphertext((&a.0 * &b.0) % &self.nn))
    }

    /// Homomorphic scalar multiplication: ciphertext exponentiation.
    pub fn smul(
        &self,
        c: &PaillierCiphertext,
        k: &BigUint,
    ) -> Result<PaillierCiphertext, PaillierError> {
        if c.0.is_zero() || c.0 >= self.nn {
            return Err(PaillierError::CiphertextOutOfRange);
        }
        Ok(PaillierCiphertext(c.0.modpow(k, &self.nn)))
    }
}

/// Signed fixed-point encoding into `[0, n)`: round `x * 10^6` and map
/// negatives to the upper half. Rejects magnitudes at or above `n/2`
/// in scaled units, keeping sums decodable.
pub fn encode_fixed(public: &PaillierPublic, x: f64) -> Result<BigUint, PaillierError> {
    if !x.is_finite() {
        return Err(PaillierError::FixedPointOverflow);
    }
    let scaled = (x * FIXED_POINT_SCALE).round();
    if scaled.abs() >= 2f64.powi(126) {
        return Err(PaillierError::FixedPointOverflow);
    }
    let v = scaled as i128;
    let magnitude = BigUint::from(v.unsigned_abs());
    let half = &public.n >> 1;
    if magnitude >= half {
        return Err(PaillierError::FixedPointOverflow);
    }
    if v >= 0 {
        Ok(magnitude)
    } else {
        Ok(&public.n - magnitude)
    }
}

/// Inverse of [`encode_fixed`], valid while the true magnitude stayed
/// below `n/2` through all homomorphic sums.
pub fn decode_fixed(public: &PaillierPublic, m: &BigUint) -> Result<f64, PaillierError> {
    let half = &public.n >> 1;
    let signed = if m > &half {
        -(&public.n - m).to_i128().ok_or(PaillierError::DecodeOverflow)?
    } else {
        m.to_i128().ok_or(PaillierError::DecodeOverflow)?
    };
    Ok(signed as f64 / FIXED_POINT_SCALE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn key(bits: u64, seed: u64) -> PaillierKey {
        PaillierKey::generate(bits, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
    }

    #[test]
    fn zero_round_trips() {
        let k = key(128, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let c = k.public.encrypt(&BigUint::ZERO, &mut rng).unwrap();
        assert_eq!(k.decrypt(&c).unwrap(), BigUint::ZERO);
    }

    #[test]
    fn addition_of_two_and_three_decrypts_to_five() {
        let k = key(128, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let c2 = k.public.encrypt(&BigUint::from(2u32), &mut rng).unwrap();
        let c3 = k.public.encrypt(&BigUint::from(3u32), &mut rng).unwrap();
        let sum = k.public.add(&c2, &c3).unwrap();
        assert_eq!(k.decrypt(&sum).unwrap(), BigUint::from(5u32));
    }

    #[test]
    fn scalar_multiple_of_seven_by_six_decrypts_to_forty_two() {
        let k = key(128, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let c7 = k.public.encrypt(&BigUint::from(7u32), &mut rng).unwrap();
        let c42 = k.public.smul(&c7, &BigUint::from(6u32)).unwrap();
        assert_eq!(k.decrypt(&c42).unwrap(), BigUint::from(42u32));
    }

    #[test]
    fn homomorphism_against_plaintext_oracle_at_two_key_sizes() {
        for (bits, seed) in [(128u64, 7u64), (256, 8)] {
            let k = key(bits, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 100);
            for _ in 0..250 {
                let a = BigUint::from(rng.random::<u64>());
                let b = BigUint::from(rng.random::<u64>());
                let ca = k.public.encrypt(&a, &mut rng).unwrap();
                let cb = k.public.encrypt(&b, &mut rng).unwrap();
                let sum = k.public.add(&ca, &cb).unwrap();
                assert_eq!(k.decrypt(&sum).unwrap(), (&a + &b) % &k.public.n);
            }
        }
    }

    #[test]
    fn message_out_of_range_is_rejected() {
        let k = key(128, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        assert_eq!(
            k.public.encrypt(&k.public.n, &mut rng).unwrap_err(),
            PaillierError::MessageOutOfRange
        );
    }

    #[test]
    fn malformed_ciphertexts_are_rejected() {
        let k = key(128, 11);
        let zero = PaillierCiphertext(BigUint::ZERO);
        let big = PaillierCiphertext(k.public.nn.clone());
        assert_eq!(k.decrypt(&zero).unwrap_err(), PaillierError::CiphertextOutOfRange);
        assert_eq!(k.decrypt(&big).unwrap_err(), PaillierError::CiphertextOutOfRange);
        assert!(k.public.add(&zero, &big).is_err());
    }

    #[test]
    fn fixed_point_encodes_signed_values() {
        let k = key(128, 12);
        for x in [-3.75, -0.000001, 0.0, 0.000001, 12345.678901] {
            let m = encode_fixed(&k.public, x).unwrap();
            let back = decode_fixed(&k.public, &m).unwrap();
            assert!((back - x).abs() < 1e-9, "{x} -> {back}");
        }
    }

    #[test]
    fn fixed_point_sum_through_ciphertexts_matches_plaintext() {
        let k = key(128, 13);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let xs = [-2.5f64, 1.25, 0.75, -0.125, 3.0];
        let mut acc: Option<PaillierCiphertext> = None;
        for &x in &xs {
            let c = k
                .public
                .encrypt(&encode_fixed(&k.public, x).unwrap(), &mut rng)
                .unwrap();
            acc = Some(match acc {
                None => c,
                Some(prev) => k.public.add(&prev, &c).unwrap(),
            });
        }
        let total = decode_fixed(&k.public, &k.decrypt(&acc.unwrap()).unwrap()).unwrap();
        let expected: f64 = xs.iter().sum();
        assert!((total - expected).abs() < 1e-6);
    }

    #[test]
    fn fixed_point_overflow_is_rejected() {
        let k = key(64, 15);
        // 64-bit n: n / (2 * 10^6) is around 4.6e12.
        assert!(encode_fixed(&k.public, 1e13).is_err());
        assert!(encode_fixed(&k.public, f64::NAN).is_err());
        assert!(encode_fixed(&k.public, f64::INFINITY).is_err());
    }

    #[test]
    fn keygen_is_seed_deterministic() {
        let a = key(128, 16);
        let b = key(128, 16);
        assert_eq!(a.public, b.public);
        assert!(PaillierKey::generate(32, &mut ChaCha8Rng::seed_from_u64(1)).is_err());
    }
}
