//! Non-interactive Schnorr identification and signatures. The challenge
//! is derived by hashing the commitment together with a caller-supplied
//! context, so a transcript only verifies against the context it was
//! produced for; a signature is the same transcript with the message as
//! context.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::group::{GroupParams, KeyPair};
use super::num::random_range;
use super::{hash_parts, Digest};
use crate::wire::{self, Reader, WireError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TranscriptError {
    #[error("empty context")]
    EmptyContext,
    #[error("wire decode failed: {0}")]
    Wire(#[from] WireError),
}

/// Commitment / challenge / response triple with the context bytes the
/// challenge was bound to. Valid transcripts satisfy
/// `g^s = t * y^c mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTranscript {
    pub commitment: BigUint,
    pub challenge: BigUint,
    pub response: BigUint,
    pub context: Vec<u8>,
}

impl ProofTranscript {
    /// Wire format: `t || c || s || len(context) || context`, with `t`
    /// at modulus width and `c`, `s` at subgroup-order width.
    pub fn to_bytes(&self, group: &GroupParams) -> Vec<u8> {
        let mut out = Vec::new();
        wire::put_biguint_fixed(&mut out, &self.commitment, group.p_bytes());
        wire::put_biguint_fixed(&mut out, &self.challenge, group.q_bytes());
        wire::put_biguint_fixed(&mut out, &self.response, group.q_bytes());
        wire::put_bytes(&mut out, &self.context);
        out
    }

    pub fn from_bytes(bytes: &[u8], group: &GroupParams) -> Result<ProofTranscript, WireError> {
        let mut r = Reader::new(bytes);
        let commitment = r.biguint_fixed(group.p_bytes())?;
        let challenge = r.biguint_fixed(group.q_bytes())?;
        let response = r.biguint_fixed(group.q_bytes())?;
        let context = r.bytes()?.to_vec();
        r.finish()?;
        Ok(ProofTranscript {
            commitment,
            challenge,
            response,
            context,
        })
    }
}

fn challenge(group: &GroupParams, public: &BigUint, commitment: &BigUint, context: &[u8]) -> BigUint {
    let mut g_bytes = Vec::new();
    wire::put_biguint_fixed(&mut g_bytes, &group.g, group.p_bytes());
    let mut y_bytes = Vec::new();
    wire::put_biguint_fixed(&mut y_bytes, public, group.p_bytes());
    let mut t_bytes = Vec::new();
    wire::put_biguint_fixed(&mut t_bytes, commitment, group.p_bytes());
    let d: Digest = hash_parts(&[&g_bytes, &y_bytes, &t_bytes, context]);
    BigUint::from_bytes_be(d.as_bytes()) % &group.q
}

/// Derive the commitment nonce from the secret key, the context, and an
/// explicit seed. Keeps proving a pure function of its inputs while the
/// nonce stays unpredictable without the secret.
fn derive_nonce(group: &GroupParams, kp: &KeyPair, context: &[u8], nonce_seed: u64) -> BigUint {
    let mut secret_bytes = Vec::new();
    wire::put_biguint_fixed(&mut secret_bytes, &kp.secret, group.q_bytes());
    let seed = hash_parts(&[&secret_bytes, context, &nonce_seed.to_be_bytes()]);
    let mut rng = ChaCha8Rng::from_seed(*seed.as_bytes());
    random_range(&mut rng, &BigUint::from(1u32), &group.q)
}

/// Prove knowledge of `kp.secret` bound to `context`.
pub fn schnorr_prove(
    group: &GroupParams,
    kp: &KeyPair,
    context: &[u8],
    nonce_seed: u64,
) -> Result<ProofTranscript, TranscriptError> {
    if context.is_empty() {
        return Err(TranscriptError::EmptyContext);
    }
    let k = derive_nonce(group, kp, context, nonce_seed);
    let commitment = group.g.modpow(&k, &group.p);
    let c = challenge(group, &kp.public, &commitment, context);
    let response = (k + &c * &kp.secret) % &group.q;
    Ok(ProofTranscript {
        commitment,
        challenge: c,
        response,
        context: context.to_vec(),
    })
}

/// Verify a transcript against a public key and the context it claims.
/// Rejects values outside the group, a stale or foreign challenge, and
/// any response failing the check equation.
pub fn schnorr_verify(group: &GroupParams, public: &BigUint, transcript: &ProofTranscript) -> bool {
    if transcript.context.is_empty() {
        return false;
    }
    if !group.contains(&transcript.commitment) || !group.contains(public) {
        return false;
    }
    if transcript.challenge >= group.q || transcript.response >= group.q {
        return false;
    }
    let expected = challenge(group, public, &transcript.commitment, &transcript.context);
    if transcript.challenge != expected {
        return false;
    }
    let lhs = group.g.modpow(&transcript.response, &group.p);
    let rhs = (&transcript.commitment * public.modpow(&transcript.challenge, &group.p)) % &group.p;
    lhs == rhs
}

/// Fiat-Shamir signature: a transcript whose context is the message.
pub fn schnorr_sign(
    group: &GroupParams,
    kp: &KeyPair,
    message: &[u8],
) -> Result<ProofTranscript, TranscriptError> {
    schnorr_prove(group, kp, message, 0)
}

pub fn verify_sig(
    group: &GroupParams,
    public: &BigUint,
    message: &[u8],
    signature: &ProofTranscript,
) -> bool {
    signature.context == message && schnorr_verify(group, public, signature)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crypto::group::TEST_GROUP;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn keypair(seed: u64) -> KeyPair {
        KeyPair::generate(&TEST_GROUP, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn honest_transcripts_always_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for trial in 0..10_000u64 {
            let kp = KeyPair::generate(&TEST_GROUP, &mut rng);
            let ctx = trial.to_be_bytes();
            let t = schnorr_prove(&TEST_GROUP, &kp, &ctx, trial).unwrap();
            assert!(schnorr_verify(&TEST_GROUP, &kp.public, &t), "trial {trial}");
        }
    }

    #[test]
    fn random_forgeries_never_verify() {
        let kp = keypair(1);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut accepted = 0u32;
        for _ in 0..10_000 {
            let forged = ProofTranscript {
                commitment: BigUint::from(rng.random::<u64>()) % &TEST_GROUP.p,
                challenge: BigUint::from(rng.random::<u32>()) % &TEST_GROUP.q,
                response: BigUint::from(rng.random::<u32>()) % &TEST_GROUP.q,
                context: b"ctx".to_vec(),
            };
            if schnorr_verify(&TEST_GROUP, &kp.public, &forged) {
                accepted += 1;
            }
        }
        assert_eq!(accepted, 0);
    }

    #[test]
    fn response_bit_flip_fails_verification() {
        let kp = keypair(2);
        let mut t = schnorr_prove(&TEST_GROUP, &kp, b"session-9", 7).unwrap();
        t.response ^= BigUint::from(1u32);
        assert!(!schnorr_verify(&TEST_GROUP, &kp.public, &t));
    }

    #[test]
    fn replay_under_different_context_fails() {
        let kp = keypair(3);
        let mut t = schnorr_prove(&TEST_GROUP, &kp, b"tx-1", 7).unwrap();
        t.context = b"tx-2".to_vec();
        assert!(!schnorr_verify(&TEST_GROUP, &kp.public, &t));
    }

    #[test]
    fn empty_context_is_rejected() {
        let kp = keypair(4);
        assert_eq!(
            schnorr_prove(&TEST_GROUP, &kp, b"", 0),
            Err(TranscriptError::EmptyContext)
        );
    }

    #[test]
    fn out_of_group_values_are_rejected() {
        let kp = keypair(5);
        let good = schnorr_prove(&TEST_GROUP, &kp, b"ctx", 1).unwrap();
        let mut t = good.clone();
        t.commitment = TEST_GROUP.p.clone();
        assert!(!schnorr_verify(&TEST_GROUP, &kp.public, &t));
        let mut t = good.clone();
        t.response = TEST_GROUP.q.clone();
        assert!(!schnorr_verify(&TEST_GROUP, &kp.public, &t));
        let mut t = good;
        t.commitment = BigUint::ZERO;
        assert!(!schnorr_verify(&TEST_GROUP, &kp.public, &t));
    }

    #[test]
    fn signature_round_trip_and_message_binding() {
        let kp = keypair(6);
        let other = keypair(7);
        let sig = schnorr_sign(&TEST_GROUP, &kp, b"record write").unwrap();
        assert!(verify_sig(&TEST_GROUP, &kp.public, b"record write", &sig));
        assert!(!verify_sig(&TEST_GROUP, &other.public, b"record write", &sig));
        assert!(!verify_sig(&TEST_GROUP, &kp.public, b"record writf", &sig));
    }

    #[test]
    fn adjacent_messages_do_not_cross_verify() {
        let kp = keypair(8);
        let s1 = schnorr_sign(&TEST_GROUP, &kp, b"m1").unwrap();
        let s2 = schnorr_sign(&TEST_GROUP, &kp, b"m2").unwrap();
        assert!(verify_sig(&TEST_GROUP, &kp.public, b"m1", &s1));
        assert!(verify_sig(&TEST_GROUP, &kp.public, b"m2", &s2));
        assert!(!verify_sig(&TEST_GROUP, &kp.public, b"m2", &s1));
        assert!(!verify_sig(&TEST_GROUP, &kp.public, b"m1", &s2));
    }

    #[test]
    fn wire_round_trip_preserves_transcript() {
        let kp = keypair(9);
        let t = schnorr_prove(&TEST_GROUP, &kp, b"wire", 3).unwrap();
        let bytes = t.to_bytes(&TEST_GROUP);
        let back = ProofTranscript::from_bytes(&bytes, &TEST_GROUP).unwrap();
        assert_eq!(t, back);
        assert!(ProofTranscript::from_bytes(&bytes[..bytes.len() - 1], &TEST_GROUP).is_err());
    }

    #[test]
    fn proving_is_deterministic_per_seed() {
        let kp = keypair(10);
        let a = schnorr_prove(&TEST_GROUP, &kp, b"ctx", 42).unwrap();
        let b = schnorr_prove(&TEST_GROUP, &kp, b"ctx", 42).unwrap();
        let c = schnorr_prove(&TEST_GROUP, &kp, b"ctx", 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
