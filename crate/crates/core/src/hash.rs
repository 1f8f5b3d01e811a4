//! Message hashing and the digest-to-polynomial encoding.
//!
//! The 256-bit digest is cut into 32 bytes. In each byte the five high bits
//! pick a coefficient (their popcount mod 3 mapped to 0, 1, -1) and the
//! three low bits pick a monomial. The 96 monomial bits are numbered
//! globally and bit position `j` stands for the variable `x_{(j mod 32)+1}`.

use std::fmt;

use sha3::{Digest, Sha3_256};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::Coefficient;

/// Variable count of the standard encoding.
pub const DIGEST_POLY_NVARS: usize = 32;

/// A SHA3-256 digest. Bit `i` is bit `7 - i % 8` of byte `i / 8`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digest256(pub [u8; 32]);

impl Digest256 {
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < 256, "digest bit {i} out of range");
        (self.0[i / 8] >> (7 - i % 8)) & 1 == 1
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }
}

impl fmt::Debug for Digest256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest256({self})")
    }
}

impl fmt::Display for Digest256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// SHA3-256 of the raw message bytes.
pub fn hash_message(message: &[u8]) -> Digest256 {
    Digest256(Sha3_256::digest(message).into())
}

fn block_coefficient<C: Coefficient>(byte: u8) -> C {
    match (byte >> 3).count_ones() % 3 {
        0 => C::zero(),
        1 => C::one(),
        _ => -C::one(),
    }
}

/// The standard 32-variable encoding of a digest.
pub fn digest_to_poly<C: Coefficient>(digest: &Digest256) -> Polynomial<C> {
    encode_digest(digest, DIGEST_POLY_NVARS).expect("32 variables is always supported")
}

/// Encoding with monomial bit position `j` standing for
/// `x_{(j mod nvars)+1}`. With `nvars = 32` this is [`digest_to_poly`];
/// other widths exist for the reduced test profiles.
pub fn encode_digest<C: Coefficient>(digest: &Digest256, nvars: usize) -> Result<Polynomial<C>> {
    if !(3..=crate::poly::MAX_VARS).contains(&nvars) {
        return Err(Error::InvalidParams(format!(
            "digest encoding needs 3..=64 variables, got {nvars}"
        )));
    }
    let terms = digest.0.iter().enumerate().map(|(k, &byte)| {
        let m = (0..3)
            .filter(|i| byte >> (2 - i) & 1 == 1)
            .fold(Monomial::ONE, |m, i| m.mul(Monomial::var((3 * k + i) % nvars + 1)));
        (m, block_coefficient::<C>(byte))
    });
    Polynomial::from_terms(nvars, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_hex(s: &str) -> Digest256 {
        let bytes: Vec<u8> = (0..64)
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap())
            .collect();
        Digest256(bytes.try_into().unwrap())
    }

    #[test]
    fn sha3_known_answers() {
        assert_eq!(
            hash_message(b""),
            from_hex("a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a")
        );
        assert_eq!(
            hash_message(b"abc"),
            from_hex("3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532")
        );
        assert_eq!(hash_message(b"abc"), hash_message(b"abc"));
    }

    #[test]
    fn bit_order_is_msb_first() {
        let mut bytes = [0u8; 32];
        bytes[0] = 0b1000_0000;
        bytes[1] = 0b0000_0001;
        let d = Digest256(bytes);
        assert!(d.bit(0));
        assert!(!d.bit(1));
        assert!(d.bit(15));
        assert_eq!((0..256).filter(|&i| d.bit(i)).count(), 2);
    }

    #[test]
    fn zero_digest_gives_zero() {
        assert!(digest_to_poly::<i64>(&Digest256([0; 32])).is_zero());
    }

    #[test]
    fn single_block_constant() {
        let mut bytes = [0u8; 32];
        bytes[0] = 0b1111_1000;
        let p = digest_to_poly::<i64>(&Digest256(bytes));
        assert_eq!(p, Polynomial::constant(32, -1));
    }

    #[test]
    fn coefficient_table() {
        // high bits popcount 0..=5 -> 0, 1, -1, 0, 1, -1
        let expected = [0, 1, -1, 0, 1, -1];
        let highs = [0b00000u8, 0b00001, 0b00011, 0b00111, 0b01111, 0b11111];
        for (h, e) in highs.iter().zip(expected) {
            assert_eq!(block_coefficient::<i64>(h << 3 | 0b111), e);
        }
    }

    #[test]
    fn position_mapping_wraps() {
        // block 10 covers positions 30, 31, 32 -> x31, x32, x1
        let mut bytes = [0u8; 32];
        bytes[10] = 0b0000_1111;
        let p = digest_to_poly::<i64>(&Digest256(bytes));
        assert_eq!(p.terms(), &[(Monomial::from_vars([1, 31, 32]), 1)]);
        // low bits 100 -> only the leftmost of the three positions
        bytes[10] = 0b0000_1100;
        let p = digest_to_poly::<i64>(&Digest256(bytes));
        assert_eq!(p.terms(), &[(Monomial::var(31), 1)]);
    }

    #[test]
    fn reduced_width() {
        let d = Digest256([0xff; 32]);
        let p = encode_digest::<i64>(&d, 9).unwrap();
        assert_eq!(p.nvars(), 9);
        assert!(p.degree() <= 3);
        assert!(encode_digest::<i64>(&d, 2).is_err());
        assert_eq!(encode_digest::<i64>(&d, 32).unwrap(), digest_to_poly(&d));
    }
}
