//! Diffie-Hellman channel keys over the Schnorr group, with a
//! hash-keystream frame cipher and a hash tag for integrity. Bit-exact
//! and dependency-free; adequate for simulated links, not for
//! production traffic.

use num_bigint::BigUint;
use thiserror::Error;

use super::group::GroupParams;
use super::hash_parts;
use crate::wire::{self, Reader, WireError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChannelError {
    #[error("peer public value outside the group")]
    PeerOutOfGroup,
    #[error("authentication tag mismatch")]
    TagMismatch,
    #[error("malformed frame: {0}")]
    Malformed(#[from] WireError),
}

/// Sealed frame: message counter, integrity tag over the ciphertext,
/// and the ciphertext itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub counter: u64,
    pub tag: [u8; 32],
    pub ciphertext: Vec<u8>,
}

impl Frame {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        wire::put_u64(&mut out, self.counter);
        out.extend_from_slice(&self.tag);
        wire::put_bytes(&mut out, &self.ciphertext);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Frame, WireError> {
        let mut r = Reader::new(bytes);
        let counter = r.u64()?;
        let tag: [u8; 32] = r.take(32)?.try_into().unwrap();
        let ciphertext = r.bytes()?.to_vec();
        r.finish()?;
        Ok(Frame {
            counter,
            tag,
            ciphertext,
        })
    }
}

/// Both sides derive `hash(peer_public ^ my_secret mod p)`; DH symmetry
/// makes the two directions agree.
pub fn dh_derive(
    group: &GroupParams,
    my_secret: &BigUint,
    peer_public: &BigUint,
) -> Result<[u8; 32], ChannelError> {
    if !group.contains(peer_public) {
        return Err(ChannelError::PeerOutOfGroup);
    }
    let shared = peer_public.modpow(my_secret, &group.p);
    let mut shared_bytes = Vec::new();
    wire::put_biguint_fixed(&mut shared_bytes, &shared, group.p_bytes());
    Ok(*hash_parts(&[&shared_bytes]).as_bytes())
}

fn keystream_block(key: &[u8; 32], counter: u64, block_index: u64) -> [u8; 32] {
    *hash_parts(&[key, &counter.to_be_bytes(), &block_index.to_be_bytes()]).as_bytes()
}

fn apply_keystream(key: &[u8; 32], counter: u64, data: &mut [u8]) {
    for (block_index, chunk) in data.chunks_mut(32).enumerate() {
        let ks = keystream_block(key, counter, block_index as u64);
        for (byte, k) in chunk.iter_mut().zip(ks.iter()) {
            *byte ^= k;
        }
    }
}

fn frame_tag(key: &[u8; 32], counter: u64, ciphertext: &[u8]) -> [u8; 32] {
    *hash_parts(&[key, &counter.to_be_bytes(), ciphertext]).as_bytes()
}

/// Encrypt and authenticate `plaintext` under `key` at `counter`.
/// Callers must not reuse a counter under the same key.
pub fn seal(key: &[u8; 32], plaintext: &[u8], counter: u64) -> Frame {
    let mut ciphertext = plaintext.to_vec();
    apply_keystream(key, counter, &mut ciphertext);
    let tag = frame_tag(key, counter, &ciphertext);
    Frame {
        counter,
        tag,
        ciphertext,
    }
}

/// Verify the tag, then decrypt. A bad tag is an authentication
/// failure, distinct from a frame that does not parse at all.
pub fn open(key: &[u8; 32], frame: &Frame) -> Result<Vec<u8>, ChannelError> {
    let expected = frame_tag(key, frame.counter, &frame.ciphertext);
    if expected != frame.tag {
        return Err(ChannelError::TagMismatch);
    }
    let mut plaintext = frame.ciphertext.clone();
    apply_keystream(key, frame.counter, &mut plaintext);
    Ok(plaintext)
}
