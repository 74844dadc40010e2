//! Canonical byte encoding: big-endian fixed-width integers and
//! length-prefixed variable fields. These bytes feed straight into
//! ledger hashing, so encoders must be bit-exact and decoders must
//! reject anything an encoder could not have produced.

use num_bigint::BigUint;
use thiserror::Error;

/// Hard cap on any single length-prefixed field, so corrupt prefixes
/// cannot trigger huge allocations while decoding untrusted input.
pub const MAX_FIELD_LEN: usize = 1 << 24;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum WireError {
    #[error("unexpected end of input at byte {0}")]
    Truncated(usize),
    #[error("field length {len} exceeds cap at byte {at}")]
    FieldTooLong { len: u64, at: usize },
    #[error("trailing {0} bytes after value")]
    TrailingBytes(usize),
    #[error("invalid value: {0}")]
    Invalid(&'static str),
}

pub fn put_u8(out: &mut Vec<u8>, v: u8) {
    out.push(v);
}

pub fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_be_bytes());
}

/// u32 big-endian length prefix followed by the raw bytes.
pub fn put_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    out.extend_from_slice(&(bytes.len() as u32).to_be_bytes());
    out.extend_from_slice(bytes);
}

pub fn put_str(out: &mut Vec<u8>, s: &str) {
    put_bytes(out, s.as_bytes());
}

/// Big-endian magnitude padded on the left to exactly `width` bytes.
/// Panics if the value does not fit; encoders size `width` from group
/// or key parameters that bound the value.
pub fn put_biguint_fixed(out: &mut Vec<u8>, v: &BigUint, width: usize) {
    let raw = v.to_bytes_be();
    assert!(raw.len() <= width, "integer wider than its wire field");
    out.resize(out.len() + (width - raw.len()), 0);
    out.extend_from_slice(&raw);
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }

    pub fn take(&mut self, n: usize) -> Result<&'a [u8], WireError> {
        if self.remaining() < n {
            return Err(WireError::Truncated(self.pos));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn u8(&mut self) -> Result<u8, WireError> {
        Ok(self.take(1)?[0])
    }

    pub fn u64(&mut self) -> Result<u64, WireError> {
        let s = self.take(8)?;
        Ok(u64::from_be_bytes(s.try_into().unwrap()))
    }

    pub fn bytes(&mut self) -> Result<&'a [u8], WireError> {
        let at = self.pos;
        let len = u32::from_be_bytes(self.take(4)?.try_into().unwrap()) as u64;
        if len as usize > MAX_FIELD_LEN {
            return Err(WireError::FieldTooLong { len, at });
        }
        self.take(len as usize)
    }

    pub fn string(&mut self) -> Result<String, WireError> {
        let raw = self.bytes()?;
        String::from_utf8(raw.to_vec()).map_err(|_| WireError::Invalid("non-utf8 string field"))
    }

    pub fn biguint_fixed(&mut self, width: usize) -> Result<BigUint, WireError> {
        Ok(BigUint::from_bytes_be(self.take(width)?))
    }

    /// Decoders call this last: canonical encodings have no slack.
    pub fn finish(self) -> Result<(), WireError> {
        if self.remaining() != 0 {
            Err(WireError::TrailingBytes(self.remaining()))
        } else {
            Ok(())
        }
    }
}
