//! 2n-bit exponent vectors labelling gamma-product group elements.

use std::fmt;

use crate::error::{Error, Result};

/// Label `a = (a_1 ... a_{2n})` of the group element
/// `Γ_a = γ_1^{a_1} ... γ_{2n}^{a_{2n}}`.
///
/// Bit `a_1` is the most significant bit of the packed index, so the
/// bitstring `"10"` maps to index 2. This ordering is used bit-exactly in
/// all file formats.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    bits: u32,
    width: u8,
}

impl ExponentVector {
    /// Builds from a packed index; `width` is the number of bits (2n).
    pub fn from_index(index: usize, width: usize) -> Result<Self> {
        if width == 0 || width > 32 {
            return Err(Error::InvalidArgument(format!(
                "exponent width {width} out of range"
            )));
        }
        if index >= (1usize << width) {
            return Err(Error::InvalidArgument(format!(
                "index {index} does not fit in {width} bits"
            )));
        }
        Ok(Self {
            bits: index as u32,
            width: width as u8,
        })
    }

    /// Parses a bitstring such as `"0101"`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > 32 {
            return Err(Error::InvalidArgument(format!(
                "bitstring {s:?} has invalid length"
            )));
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "bitstring {s:?} contains non-binary character {c:?}"
                    )))
                }
            }
        }
        Ok(Self {
            bits,
            width: s.len() as u8,
        })
    }

    /// Packed index with `a_1` most significant.
    pub fn index(self) -> usize {
        self.bits as usize
    }

    /// Number of bits, i.e. 2n.
    pub fn width(self) -> usize {
        self.width as usize
    }

    /// Bit `a_k` for 1-based `k`.
    pub fn bit(self, k: usize) -> u8 {
        debug_assert!(k >= 1 && k <= self.width());
        ((self.bits >> (self.width() - k)) & 1) as u8
    }

    /// Hamming weight: number of gamma factors in `Γ_a`.
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Mod-2 dot product `a · b`.
    pub fn dot(self, other: Self) -> u8 {
        ((self.bits & other.bits).count_ones() & 1) as u8
    }

    /// Bitwise xor: the label of `Γ_a Γ_b` up to phase.
    pub fn xor(self, other: Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self {
            bits: self.bits ^ other.bits,
            width: self.width,
        }
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 1..=self.width() {
            write!(f, "{}", self.bit(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExponentVector({self})")
    }
}

/// Whether the one-sided products `Γ_a` and `Γ_b` commute as operators.
///
/// Reordering `Γ_a Γ_b` into `Γ_b Γ_a` moves every gamma factor of `b` past
/// every factor of `a`; shared factors commute with themselves, so the sign
/// is `(-1)^{wt(a)·wt(b) - a·b}`. The two-sided elements `Γ_a ⊗ Γ_a` always
/// commute since the sign squares away.
pub fn exponent_commutes(a: ExponentVector, b: ExponentVector) -> Result<bool> {
    if a.width() != b.width() {
        return Err(Error::DimensionMismatch {
            expected: a.width(),
            got: b.width(),
        });
    }
    let sign = (a.weight() * b.weight() + u32::from(a.dot(b))) & 1;
    Ok(sign == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitstring_round_trip() {
        let a = ExponentVector::from_bitstring("1010").unwrap();
        assert_eq!(a.index(), 0b1010);
        assert_eq!(a.to_string(), "1010");
        assert_eq!(a.bit(1), 1);
        assert_eq!(a.bit(2), 0);
        assert_eq!(a.weight(), 2);
    }

    #[test]
    fn msb_first_convention() {
        // "10" is index 2: bit a_1 is most significant.
        let a = ExponentVector::from_bitstring("10").unwrap();
        assert_eq!(a.index(), 2);
    }

    #[test]
    fn rejects_bad_bitstrings() {
        assert!(ExponentVector::from_bitstring("").is_err());
        assert!(ExponentVector::from_bitstring("102").is_err());
    }

    #[test]
    fn commutes_examples() {
        let a = ExponentVector::from_bitstring("1000").unwrap();
        let b = ExponentVector::from_bitstring("0101").unwrap();
        let c = ExponentVector::from_bitstring("0100").unwrap();
        assert!(exponent_commutes(a, b).unwrap());
        assert!(!exponent_commutes(a, c).unwrap());
    }

    #[test]
    fn identity_commutes_with_everything() {
        let zero = ExponentVector::from_index(0, 6).unwrap();
        for i in 0..64 {
            let b = ExponentVector::from_index(i, 6).unwrap();
            assert!(exponent_commutes(zero, b).unwrap());
        }
    }

    #[test]
    fn width_mismatch_is_an_error() {
        let a = ExponentVector::from_bitstring("10").unwrap();
        let b = ExponentVector::from_bitstring("1000").unwrap();
        assert!(matches!(
            exponent_commutes(a, b),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
