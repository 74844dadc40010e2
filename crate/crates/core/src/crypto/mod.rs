//! Desk-scale cryptographic primitives: SHA-256 hashing and Merkle
//! roots, Schnorr identification and signatures over a prime-field
//! subgroup, Paillier additive homomorphic encryption, and
//! Diffie-Hellman channel keys with authenticated symmetric framing.
//!
//! Everything here is deterministic given explicit seeds and auditable
//! at desk scale. None of it is hardened production cryptography: the
//! symmetric frame cipher is a hash keystream, arithmetic is not
//! constant time, and default key sizes are chosen for simulation
//! speed, not for adversaries.

mod channel;
mod group;
mod num;
mod paillier;
mod schnorr;

pub use channel::{dh_derive, open, seal, ChannelError, Frame};
pub use group::{GroupParams, KeyPair};
pub use num::{gen_prime, is_probable_prime, mod_inverse, random_below, random_range};
pub use paillier::{
    decode_fixed, encode_fixed, PaillierCiphertext, PaillierError, PaillierKey, PaillierPublic,
    FIXED_POINT_SCALE,
};
pub use schnorr::{schnorr_prove, schnorr_sign, schnorr_verify, verify_sig, ProofTranscript};

use serde::{Deserialize, Serialize};
use sha2::{Digest as _, Sha256};

/// SHA-256 digest of canonical bytes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; 32]);

impl Digest {
    pub const ZERO: Digest = Digest([0u8; 32]);

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    pub fn from_hex(s: &str) -> Option<Digest> {
        let raw = hex::decode(s).ok()?;
        let arr: [u8; 32] = raw.try_into().ok()?;
        Some(Digest(arr))
    }
}

impl std::fmt::Debug for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

impl std::fmt::Display for Digest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for Digest {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Digest {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Digest::from_hex(&s).ok_or_else(|| serde::de::Error::custom("expected 64 hex chars"))
    }
}

/// SHA-256 of arbitrary bytes.
pub fn hash(bytes: &[u8]) -> Digest {
    let mut h = Sha256::new();
    h.update(bytes);
    Digest(h.finalize().into())
}

/// Hash over the concatenation of several byte slices, avoiding an
/// intermediate buffer.
pub fn hash_parts(parts: &[&[u8]]) -> Digest {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    Digest(h.finalize().into())
}

/// Merkle root over a list of digests: pairwise hash of concatenated
/// children, the odd node at each level duplicated. An empty list roots
/// to the hash of the empty byte string; a single leaf roots to
/// `hash(d || d)`.
pub fn merkle_root(leaves: &[Digest]) -> Digest {
    if leaves.is_empty() {
        return hash(b"");
    }
    let mut level: Vec<Digest> = leaves.to_vec();
    loop {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        for pair in level.chunks(2) {
            let left = &pair[0];
            let right = pair.get(1).unwrap_or(left);
            next.push(hash_parts(&[left.as_bytes(), right.as_bytes()]));
        }
        if next.len() == 1 {
            return next[0];
        }
        level = next;
    }
}
