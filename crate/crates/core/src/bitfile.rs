//! Packed bit files with a sidecar header.
//!
//! A bit string of `N` bits is stored as two files:
//!
//! * `<path>`: `ceil(N / 8)` bytes. Bit `i` is bit `i % 8` (LSB = 0) of
//!   byte `i / 8`. Unused high bits of the final byte are zero.
//! * `<path>.hdr`: 20 bytes.
//!
//! | offset | size | field                         |
//! |--------|------|-------------------------------|
//! | 0      | 8    | magic `QRNGBITS` (ASCII)      |
//! | 8      | 4    | format version, u32 LE (= 1)  |
//! | 12     | 8    | bit count `N`, u64 LE         |

use std::ffi::OsString;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::bits::BitString;

pub const MAGIC: [u8; 8] = *b"QRNGBITS";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 20;

#[derive(Debug, Error)]
pub enum BitFileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("header is {0} bytes, expected 20")]
    HeaderLength(usize),
    #[error("bad magic in header")]
    BadMagic,
    #[error("unsupported bit-file version {0}")]
    UnsupportedVersion(u32),
    #[error("header declares {bits} bits ({expected} bytes) but payload has {actual} bytes")]
    PayloadLength {
        bits: u64,
        expected: u64,
        actual: u64,
    },
    #[error("padding bits of the final byte are not zero")]
    NonZeroPadding,
}

pub fn header_path(path: &Path) -> PathBuf {
    let mut s: OsString = path.as_os_str().to_owned();
    s.push(".hdr");
    PathBuf::from(s)
}

pub fn encode_header(bit_count: u64) -> [u8; HEADER_LEN] {
    let mut h = [0u8; HEADER_LEN];
    h[..8].copy_from_slice(&MAGIC);
    h[8..12].copy_from_slice(&VERSION.to_le_bytes());
    h[12..].copy_from_slice(&bit_count.to_le_bytes());
    h
}

/// Returns the bit count.
pub fn decode_header(bytes: &[u8]) -> Result<u64, BitFileError> {
    if bytes.len() != HEADER_LEN {
        return Err(BitFileError::HeaderLength(bytes.len()));
    }
    if bytes[..8] != MAGIC {
        return Err(BitFileError::BadMagic);
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(BitFileError::UnsupportedVersion(version));
    }
    Ok(u64::from_le_bytes(
        bytes[12..20].try_into().expect("8 bytes"),
    ))
}

pub fn decode(header: &[u8], payload: &[u8]) -> Result<BitString, BitFileError> {
    let bits = decode_header(header)?;
    let expected = bits.div_ceil(8);
    if payload.len() as u64 != expected {
        return Err(BitFileError::PayloadLength {
            bits,
            expected,
            actual: payload.len() as u64,
        });
    }
    let len = usize::try_from(bits).map_err(|_| BitFileError::PayloadLength {
        bits,
        expected,
        actual: payload.len() as u64,
    })?;
    if len % 8 != 0 && payload[len / 8] >> (len % 8) != 0 {
        return Err(BitFileError::NonZeroPadding);
    }
    Ok(BitString::from_bytes(payload, len).expect("payload length checked"))
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> BitFileError + '_ {
    move |source| BitFileError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn write_bits(path: &Path, bits: &BitString) -> Result<(), BitFileError> {
    fs::write(path, bits.as_bytes()).map_err(io_err(path))?;
    let hdr = header_path(path);
    fs::write(&hdr, encode_header(bits.len() as u64)).map_err(io_err(&hdr))
}

pub fn read_bits(path: &Path) -> Result<BitString, BitFileError> {
    let hdr = header_path(path);
    let header = fs::read(&hdr).map_err(io_err(&hdr))?;
    let payload = fs::read(path).map_err(io_err(path))?;
    decode(&header, &payload)
}
