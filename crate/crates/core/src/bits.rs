//! Packed vectors over F₂.
//!
//! Bits live in 64-bit words, least significant bit first. Inner products
//! are AND followed by a popcount parity, which is all the linear algebra
//! the simulator needs.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vec {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl F2Vec {
    pub fn zeros(len: usize) -> Self {
        F2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut v = F2Vec::zeros(0);
        for b in bits {
            v.push(b);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        debug_assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        debug_assert!(
            index < self.len,
            "bit index {index} out of range {}",
            self.len
        );
        let mask = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= mask;
        } else {
            self.words[index / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    pub fn push(&mut self, value: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, value);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &F2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Parity of the bitwise AND, i.e. the standard dot product over F₂.
    #[inline]
    pub fn dot(&self, other: &F2Vec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Number of positions where both vectors are one.
    #[inline]
    pub fn and_count(&self, other: &F2Vec) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    /// Compact CSV encoding: `<len>:<hex>`, bit `k` stored in byte `k / 8` at
    /// position `7 - k % 8` (big-endian within each byte).
    pub fn to_hex(&self) -> String {
        let n_bytes = self.len.div_ceil(8);
        let mut out = format!("{}:", self.len);
        for byte_index in 0..n_bytes {
            let mut byte = 0u8;
            for bit in 0..8 {
                let k = byte_index * 8 + bit;
                if k < self.len && self.get(k) {
                    byte |= 0x80 >> bit;
                }
            }
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    pub fn from_hex(text: &str) -> Result<Self> {
        let (len_part, hex_part) = text
            .split_once(':')
            .ok_or_else(|| Error::BadEncoding(format!("missing length prefix in {text:?}")))?;
        let len: usize = len_part
            .parse()
            .map_err(|_| Error::BadEncoding(format!("bad length prefix {len_part:?}")))?;
        if hex_part.len() != 2 * len.div_ceil(8) {
            return Err(Error::BadEncoding(format!(
                "expected {} hex digits for {len} bits, got {}",
                2 * len.div_ceil(8),
                hex_part.len()
            )));
        }
        let mut v = F2Vec::zeros(len);
        for byte_index in 0..len.div_ceil(8) {
            let byte = u8::from_str_radix(&hex_part[2 * byte_index..2 * byte_index + 2], 16)
                .map_err(|_| Error::BadEncoding(format!("bad hex digits in {hex_part:?}")))?;
            for bit in 0..8 {
                let k = byte_index * 8 + bit;
                let on = byte & (0x80 >> bit) != 0;
                if k < len {
                    v.set(k, on);
                } else if on {
                    return Err(Error::BadEncoding("padding bits must be zero".into()));
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for F2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        write!(f, "F2Vec[{s}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dot_and_weight() {
        let a = F2Vec::from_bools([true, false, true, true]);
        let b = F2Vec::from_bools([true, true, true, false]);
        assert!(!a.dot(&b));
        assert_eq!(a.and_count(&b), 2);
        assert_eq!(a.count_ones(), 3);
        assert_eq!(a.iter_ones().collect::<Vec<_>>(), vec![0, 2, 3]);
    }

    #[test]
    fn hex_layout_is_big_endian_within_bytes() {
        let v = F2Vec::from_bools([true, false, false, false, false, false, false, false, true]);
        assert_eq!(v.to_hex(), "9:8080");
        assert!(F2Vec::from_hex("9:8081").is_err());
        assert!(F2Vec::from_hex("9:80").is_err());
        assert!(F2Vec::from_hex("8080").is_err());
    }

    #[test]
    fn words_span_boundaries() {
        let mut v = F2Vec::zeros(130);
        v.set(63, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![63, 64, 129]);
        v.flip(64);
        assert_eq!(v.count_ones(), 2);
    }

    proptest! {
        #[test]
        fn hex_roundtrip(bits in proptest::collection::vec(any::<bool>(), 0..200)) {
            let v = F2Vec::from_bools(bits);
            prop_assert_eq!(F2Vec::from_hex(&v.to_hex()).unwrap(), v);
        }
    }
}
