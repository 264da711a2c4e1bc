//! 3×3 matrices over F₂ packed into nine bits.
//!
//! Entry `u_ij` (1-based) sits at bit `8 - (3(i-1) + (j-1))`, so `u_11` is the
//! most significant bit and each row occupies a contiguous 3-bit field. The
//! zero matrix is `0` and the identity is `273 = 0b100_010_001`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ROW_PRODUCT[(r << 9) | b]` is the 3-bit row vector `r · B` where `B` is
/// the matrix with code `b`.
static ROW_PRODUCT: [u8; 4096] = build_row_products();

const fn build_row_products() -> [u8; 4096] {
    let mut table = [0u8; 4096];
    let mut r = 0;
    while r < 8 {
        let mut b = 0;
        while b < 512 {
            let rows = [(b >> 6) & 7, (b >> 3) & 7, b & 7];
            let mut acc = 0;
            if r & 4 != 0 {
                acc ^= rows[0];
            }
            if r & 2 != 0 {
                acc ^= rows[1];
            }
            if r & 1 != 0 {
                acc ^= rows[2];
            }
            table[(r << 9) | b] = acc as u8;
            b += 1;
        }
        r += 1;
    }
    table
}

/// A 3×3 matrix over F₂ in the packed 0–511 encoding.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u16", into = "u16")]
pub struct F2Mat3(u16);

impl F2Mat3 {
    pub const ZERO: F2Mat3 = F2Mat3(0);
    pub const IDENTITY: F2Mat3 = F2Mat3(273);

    pub fn new(bits: u16) -> Result<Self> {
        if bits < 512 {
            Ok(F2Mat3(bits))
        } else {
            Err(Error::InvalidBlock(bits as u32))
        }
    }

    /// Keeps the low nine bits.
    #[inline]
    pub const fn from_bits_truncate(bits: u16) -> Self {
        F2Mat3(bits & 0x1ff)
    }

    #[inline]
    pub const fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Entry `u_{row,col}` with 0-based indices.
    pub fn entry(self, row: usize, col: usize) -> bool {
        assert!(row < 3 && col < 3, "index out of range");
        (self.0 >> (8 - (3 * row + col))) & 1 == 1
    }

    pub fn from_entries(entries: [[bool; 3]; 3]) -> Self {
        let mut bits = 0u16;
        for (row, cols) in entries.iter().enumerate() {
            for (col, &set) in cols.iter().enumerate() {
                if set {
                    bits |= 1 << (8 - (3 * row + col));
                }
            }
        }
        F2Mat3(bits)
    }

    pub fn to_entries(self) -> [[bool; 3]; 3] {
        let mut out = [[false; 3]; 3];
        for (row, cols) in out.iter_mut().enumerate() {
            for (col, slot) in cols.iter_mut().enumerate() {
                *slot = self.entry(row, col);
            }
        }
        out
    }

    /// Matrix product over F₂, one table lookup per row.
    #[inline]
    pub fn mul_f2(self, rhs: F2Mat3) -> F2Mat3 {
        F2Mat3(mul_bits(self.0, rhs.0))
    }
}

/// Product of two packed matrices given as raw 9-bit codes.
#[inline(always)]
pub(crate) fn mul_bits(a: u16, b: u16) -> u16 {
    let b = b as usize;
    let a = a as usize;
    let r0 = ROW_PRODUCT[((a >> 6) << 9) | b] as u16;
    let r1 = ROW_PRODUCT[(((a >> 3) & 7) << 9) | b] as u16;
    let r2 = ROW_PRODUCT[((a & 7) << 9) | b] as u16;
    (r0 << 6) | (r1 << 3) | r2
}

/// Entrywise sum; XOR of the codes.
#[inline]
pub fn mat_add(a: F2Mat3, b: F2Mat3) -> F2Mat3 {
    F2Mat3(a.0 ^ b.0)
}

#[inline]
pub fn mat_mul(a: F2Mat3, b: F2Mat3) -> F2Mat3 {
    a.mul_f2(b)
}

impl Add for F2Mat3 {
    type Output = F2Mat3;
    fn add(self, rhs: F2Mat3) -> F2Mat3 {
        mat_add(self, rhs)
    }
}

impl AddAssign for F2Mat3 {
    fn add_assign(&mut self, rhs: F2Mat3) {
        self.0 ^= rhs.0;
    }
}

impl Mul for F2Mat3 {
    type Output = F2Mat3;
    fn mul(self, rhs: F2Mat3) -> F2Mat3 {
        mat_mul(self, rhs)
    }
}

impl MulAssign for F2Mat3 {
    fn mul_assign(&mut self, rhs: F2Mat3) {
        *self = mat_mul(*self, rhs);
    }
}

impl TryFrom<u16> for F2Mat3 {
    type Error = Error;
    fn try_from(bits: u16) -> Result<Self> {
        F2Mat3::new(bits)
    }
}

impl From<F2Mat3> for u16 {
    fn from(m: F2Mat3) -> u16 {
        m.0
    }
}

impl fmt::Display for F2Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for F2Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Mat3({})", self.0)
    }
}
