//! Truncated banded unipotent block matrices with period-3 diagonals.
//!
//! An element of `G_k` is an infinite upper triangular block matrix with
//! identity blocks on the main diagonal and 3×3 blocks over F₂ above it.
//! Upper diagonal `j` is periodic with period 3, so it is described by a
//! [`DiagTriple`]; only the first `k` upper diagonals are kept. The block at
//! row `r`, column `r + j` is `diags[j - 1].block(r)`.
//!
//! [`GroupElement::mul`] and [`GroupElement::inv`] are the generic
//! (convolution) arithmetic and are the source of truth. The closed forms
//! for squares and conjugates at the leading diagonals are accelerations and
//! are checked against the generic product.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2algebra::{mul_bits, F2Mat3};

/// The three period blocks `[A_1, A_2, A_3]` of one upper diagonal.
///
/// Packed as `A_1 << 18 | A_2 << 9 | A_3`, so the derived ordering is
/// lexicographic in the printed triple.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagTriple(u32);

const SHIFT: [u32; 3] = [18, 9, 0];

impl DiagTriple {
    pub const ZERO: DiagTriple = DiagTriple(0);

    pub fn new(blocks: [u16; 3]) -> Result<Self> {
        for &b in &blocks {
            F2Mat3::new(b)?;
        }
        Ok(Self::pack(blocks))
    }

    pub fn from_blocks(blocks: [F2Mat3; 3]) -> Self {
        Self::pack([blocks[0].bits(), blocks[1].bits(), blocks[2].bits()])
    }

    #[inline(always)]
    pub(crate) fn pack(b: [u16; 3]) -> Self {
        DiagTriple(((b[0] as u32) << 18) | ((b[1] as u32) << 9) | b[2] as u32)
    }

    /// Raw 9-bit code at 0-based period position `p` (taken mod 3).
    #[inline(always)]
    pub(crate) fn raw(self, p: usize) -> u16 {
        ((self.0 >> SHIFT[p % 3]) & 0x1ff) as u16
    }

    /// Block `a(i)` with the 1-based cyclic index used in the printed
    /// formulas: `block(i) == block(i + 3)` for every integer `i`.
    pub fn block(self, i: i64) -> F2Mat3 {
        let p = (i - 1).rem_euclid(3) as usize;
        F2Mat3::from_bits_truncate(self.raw(p))
    }

    pub fn blocks(self) -> [F2Mat3; 3] {
        [self.block(1), self.block(2), self.block(3)]
    }

    pub fn to_array(self) -> [u16; 3] {
        [self.raw(0), self.raw(1), self.raw(2)]
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn packed(self) -> u32 {
        self.0
    }
}

impl std::ops::Add for DiagTriple {
    type Output = DiagTriple;
    fn add(self, rhs: DiagTriple) -> DiagTriple {
        DiagTriple(self.0 ^ rhs.0)
    }
}

impl fmt::Display for DiagTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.to_array();
        write!(f, "[{a},{b},{c}]")
    }
}

impl fmt::Debug for DiagTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for DiagTriple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagTriple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let arr = <[u16; 3]>::deserialize(d)?;
        DiagTriple::new(arr).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building a triple from literal codes; panics on codes ≥ 512.
pub fn triple(a: u16, b: u16, c: u16) -> DiagTriple {
    DiagTriple::new([a, b, c]).expect("block code out of range")
}

// ---------------------------------------------------------------------------
// slice kernels

/// `out = a · b`, all three of the same length.
pub(crate) fn mul_into(a: &[DiagTriple], b: &[DiagTriple], out: &mut [DiagTriple]) {
    let k = a.len();
    debug_assert!(b.len() == k && out.len() == k);
    for d in 1..=k {
        let mut c = [0u16; 3];
        for (p, slot) in c.iter_mut().enumerate() {
            let mut s = a[d - 1].raw(p) ^ b[d - 1].raw(p);
            for j in 1..d {
                let x = a[j - 1].raw(p);
                if x != 0 {
                    s ^= mul_bits(x, b[d - j - 1].raw(p + j));
                }
            }
            *slot = s;
        }
        out[d - 1] = DiagTriple::pack(c);
    }
}

/// `out = a⁻¹`, solved one diagonal at a time from `a · out = 1`.
pub(crate) fn inv_into(a: &[DiagTriple], out: &mut [DiagTriple]) {
    let k = a.len();
    debug_assert!(out.len() == k);
    for d in 1..=k {
        let mut c = [0u16; 3];
        for (p, slot) in c.iter_mut().enumerate() {
            let mut s = a[d - 1].raw(p);
            for j in 1..d {
                let x = a[j - 1].raw(p);
                if x != 0 {
                    s ^= mul_bits(x, out[d - j - 1].raw(p + j));
                }
            }
            *slot = s;
        }
        out[d - 1] = DiagTriple::pack(c);
    }
}

pub(crate) fn vanish_count_of(diags: &[DiagTriple]) -> usize {
    diags.iter().take_while(|t| t.is_zero()).count()
}

// ---------------------------------------------------------------------------
// closed forms on triples

/// Leading pair `(c_1, c_2)` of the square of an element whose first `l`
/// diagonals vanish and whose next two are `a1`, `a2`:
/// `c_1(i) = a_1(i) a_1(l+i+1)`,
/// `c_2(i) = a_1(i) a_2(l+i+1) + a_2(i) a_1(l+i+2)`.
pub fn square_leading(a1: DiagTriple, a2: DiagTriple, l: usize) -> (DiagTriple, DiagTriple) {
    let mut c1 = [0u16; 3];
    let mut c2 = [0u16; 3];
    for p in 0..3 {
        c1[p] = mul_bits(a1.raw(p), a1.raw(p + l + 1));
        c2[p] = mul_bits(a1.raw(p), a2.raw(p + l + 1)) ^ mul_bits(a2.raw(p), a1.raw(p + l + 2));
    }
    (DiagTriple::pack(c1), DiagTriple::pack(c2))
}

/// Second non-trivial diagonal after conjugating by an element with first
/// diagonal `b1`: `c_2(i) = a_2(i) + b_1(i) a_1(i+1) + a_1(i) b_1(l+i+1)`.
///
/// The result is `a2` plus a shift that depends only on `(a1, b1, l mod 3)`,
/// so conjugating twice by the same `b1` returns `a2`.
pub fn conj_second(a1: DiagTriple, a2: DiagTriple, b1: DiagTriple, l: usize) -> DiagTriple {
    let mut c2 = [0u16; 3];
    for (p, slot) in c2.iter_mut().enumerate() {
        *slot = a2.raw(p)
            ^ mul_bits(b1.raw(p), a1.raw(p + 1))
            ^ mul_bits(a1.raw(p), b1.raw(p + l + 1));
    }
    DiagTriple::pack(c2)
}

// ---------------------------------------------------------------------------
// elements

/// An element of `G_k`: the first `k` upper diagonals, zero-filled.
///
/// Ordering is the canonical encoding order (level, then diagonals
/// lexicographically).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    diags: Vec<DiagTriple>,
}

/// Leading data of a square: vanish count `2l + 1` and the next two diagonals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareForm {
    pub vanish: usize,
    pub c1: DiagTriple,
    pub c2: DiagTriple,
}

/// The first two non-trivial diagonals of a non-identity element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LeadingPair {
    pub vanish: usize,
    pub a1: DiagTriple,
    /// Zero-filled when diagonal `vanish + 2` lies beyond the truncation.
    pub a2: DiagTriple,
}

impl GroupElement {
    pub fn identity(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroLevel);
        }
        Ok(GroupElement {
            diags: vec![DiagTriple::ZERO; k],
        })
    }

    pub fn from_diags(diags: Vec<DiagTriple>) -> Result<Self> {
        if diags.is_empty() {
            return Err(Error::ZeroLevel);
        }
        Ok(GroupElement { diags })
    }

    pub(crate) fn from_slice(diags: &[DiagTriple]) -> Self {
        GroupElement {
            diags: diags.to_vec(),
        }
    }

    /// Builds a level-`k` element from the listed diagonals: extra
    /// diagonals are truncated, missing ones zero-filled.
    pub fn from_codes(k: usize, codes: &[[u16; 3]]) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroLevel);
        }
        let mut diags = vec![DiagTriple::ZERO; k];
        for (slot, c) in diags.iter_mut().zip(codes) {
            *slot = DiagTriple::new(*c)?;
        }
        Ok(GroupElement { diags })
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.diags.len()
    }

    #[inline]
    pub fn diags(&self) -> &[DiagTriple] {
        &self.diags
    }

    /// Upper diagonal `j`, 1-based; zero beyond the truncation.
    pub fn diag(&self, j: usize) -> DiagTriple {
        assert!(j >= 1, "diagonals are 1-based");
        self.diags.get(j - 1).copied().unwrap_or_default()
    }

    /// Block entry at row `r`, column `r + j` of the infinite matrix
    /// (1-based `r`, `j ≥ 0`).
    pub fn entry(&self, r: i64, j: usize) -> F2Mat3 {
        match j {
            0 => F2Mat3::IDENTITY,
            j if j <= self.level() => self.diags[j - 1].block(r),
            _ => F2Mat3::ZERO,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.diags.iter().all(|t| t.is_zero())
    }

    /// Number of leading all-zero diagonals (`l` in `M_l(...)`).
    pub fn vanish_count(&self) -> usize {
        vanish_count_of(&self.diags)
    }

    fn check_level(&self, other: &GroupElement) -> Result<()> {
        if self.level() != other.level() {
            return Err(Error::LevelMismatch {
                left: self.level(),
                right: other.level(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        self.check_level(rhs)?;
        let mut out = vec![DiagTriple::ZERO; self.level()];
        mul_into(&self.diags, &rhs.diags, &mut out);
        Ok(GroupElement { diags: out })
    }

    pub fn inv(&self) -> GroupElement {
        let mut out = vec![DiagTriple::ZERO; self.level()];
        inv_into(&self.diags, &mut out);
        GroupElement { diags: out }
    }

    /// `self^n` by repeated squaring.
    pub fn pow(&self, mut n: u64) -> GroupElement {
        let k = self.level();
        let mut acc = vec![DiagTriple::ZERO; k];
        let mut base = self.diags.clone();
        let mut tmp = vec![DiagTriple::ZERO; k];
        while n > 0 {
            if n & 1 == 1 {
                mul_into(&acc, &base, &mut tmp);
                std::mem::swap(&mut acc, &mut tmp);
            }
            n >>= 1;
            if n > 0 {
                mul_into(&base, &base, &mut tmp);
                std::mem::swap(&mut base, &mut tmp);
            }
        }
        GroupElement { diags: acc }
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &GroupElement) -> Result<GroupElement> {
        g.mul(self)?.mul(&g.inv())
    }

    /// Drops every diagonal beyond `k`.
    pub fn truncate(&self, k: usize) -> Result<GroupElement> {
        if k == 0 {
            return Err(Error::ZeroLevel);
        }
        if k > self.level() {
            return Err(Error::LevelTooSmall(self.level(), k));
        }
        Ok(GroupElement {
            diags: self.diags[..k].to_vec(),
        })
    }

    pub fn first_two_diagonals(&self) -> Result<LeadingPair> {
        let l = self.vanish_count();
        if l == self.level() {
            return Err(Error::IdentityInput);
        }
        Ok(LeadingPair {
            vanish: l,
            a1: self.diag(l + 1),
            a2: self.diag(l + 2),
        })
    }

    /// Closed form for the leading data of `self²`.
    pub fn square_closed_form(&self) -> Result<SquareForm> {
        let lp = self.first_two_diagonals()?;
        let (c1, c2) = square_leading(lp.a1, lp.a2, lp.vanish);
        Ok(SquareForm {
            vanish: 2 * lp.vanish + 1,
            c1,
            c2,
        })
    }

    /// Closed form for the first two non-trivial diagonals of `b⁻¹ · self · b`
    /// where `b` has first diagonal `b1`. Returns `(a1, c2)`; the leading
    /// diagonal is unchanged.
    pub fn conj_closed_form(&self, b1: DiagTriple) -> Result<(DiagTriple, DiagTriple)> {
        let lp = self.first_two_diagonals()?;
        Ok((lp.a1, conj_second(lp.a1, lp.a2, b1, lp.vanish)))
    }

    /// Canonical serialized form: `k` as little-endian `u32`, then the `3k`
    /// block codes as little-endian `u16` in diagonal order.
    pub fn to_canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 6 * self.level());
        out.extend_from_slice(&(self.level() as u32).to_le_bytes());
        write_blocks(&self.diags, &mut out);
        out
    }

    pub fn from_canonical_bytes(bytes: &[u8]) -> Result<Self> {
        let bad = || Error::Parse("truncated canonical encoding".into());
        let head: [u8; 4] = bytes.get(..4).ok_or_else(bad)?.try_into().unwrap();
        let k = u32::from_le_bytes(head) as usize;
        let body = bytes.get(4..).ok_or_else(bad)?;
        if body.len() != 6 * k {
            return Err(bad());
        }
        GroupElement::from_diags(read_blocks(body)?)
    }
}

pub(crate) fn write_blocks(diags: &[DiagTriple], out: &mut Vec<u8>) {
    for t in diags {
        for code in t.to_array() {
            out.extend_from_slice(&code.to_le_bytes());
        }
    }
}

pub(crate) fn read_blocks(body: &[u8]) -> Result<Vec<DiagTriple>> {
    body.chunks_exact(6)
        .map(|c| {
            let code = |i: usize| u16::from_le_bytes([c[2 * i], c[2 * i + 1]]);
            DiagTriple::new([code(0), code(1), code(2)])
        })
        .collect()
}

impl fmt::Display for GroupElement {
    /// `M_l([A,B,C],...)` listing diagonals `l+1..=k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.vanish_count();
        write!(f, "M_{l}(")?;
        for (i, t) in self.diags[l..].iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} @k={}", self.level())
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Parses `M_l([A,B,C],...)`; the level is `l` plus the number of
    /// listed triples.
    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("{m} in {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix("M_").ok_or_else(|| err("expected `M_`"))?;
        let open = rest.find('(').ok_or_else(|| err("expected `(`"))?;
        let l: usize = rest[..open]
            .trim()
            .parse()
            .map_err(|_| err("bad vanish count"))?;
        let inner = rest[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| err("expected closing `)`"))?;
        let compact: String = inner.chars().filter(|c| !c.is_whitespace()).collect();
        let mut triples = Vec::new();
        let mut cur = compact.as_str();
        while !cur.is_empty() {
            let body = cur.strip_prefix('[').ok_or_else(|| err("expected `[`"))?;
            let close = body.find(']').ok_or_else(|| err("expected `]`"))?;
            let nums = body[..close]
                .split(',')
                .map(|n| n.parse::<u16>().map_err(|_| err("bad block code")))
                .collect::<Result<Vec<_>>>()?;
            let arr: [u16; 3] = nums.try_into().map_err(|_| err("triple needs 3 codes"))?;
            triples.push(DiagTriple::new(arr)?);
            cur = &body[close + 1..];
            cur = cur.strip_prefix(',').unwrap_or(cur);
        }
        let mut diags = vec![DiagTriple::ZERO; l];
        diags.extend(triples);
        GroupElement::from_diags(diags)
    }
}

impl Serialize for GroupElement {
    /// Flat array-of-arrays form, one `[A,B,C]` per diagonal.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.diags.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let diags = Vec::<DiagTriple>::deserialize(d)?;
        GroupElement::from_diags(diags).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x0(k: usize) -> GroupElement {
        GroupElement::from_codes(
            k,
            &[[11, 11, 11], [17, 17, 17], [26, 26, 26], [11, 11, 0], [17, 0, 0]],
        )
        .unwrap()
    }

    fn x1(k: usize) -> GroupElement {
        GroupElement::from_codes(
            k,
            &[[23, 224, 138], [59, 136, 495], [26, 488, 227], [23, 224, 0], [59, 0, 0]],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_block_indexing() {
        let t = triple(1, 2, 3);
        for i in -6..6 {
            assert_eq!(t.block(i), t.block(i + 3));
        }
        assert_eq!(t.block(1).bits(), 1);
        assert_eq!(t.block(0).bits(), 3);
        assert_eq!(t.block(5).bits(), 2);
    }

    #[test]
    fn identity_basics() {
        let id = GroupElement::identity(3).unwrap();
        assert_eq!(id.to_string(), "M_3()");
        assert_eq!(id.vanish_count(), 3);
        assert!(id.is_identity());
        assert_eq!(id.mul(&x0(3)).unwrap(), x0(3));
        assert_eq!(x0(3).mul(&id).unwrap(), x0(3));
        assert_eq!(id.inv(), id);
        assert!(GroupElement::identity(0).is_err());
        assert!(matches!(id.first_two_diagonals(), Err(Error::IdentityInput)));
        assert!(matches!(id.square_closed_form(), Err(Error::IdentityInput)));
    }

    #[test]
    fn level_mismatch_is_rejected() {
        assert!(matches!(
            x0(3).mul(&x0(4)),
            Err(Error::LevelMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn product_first_diagonal_is_sum() {
        let p = x0(5).mul(&x1(5)).unwrap();
        assert_eq!(p.diag(1), triple(28, 235, 129));
        assert_eq!(p.inv().diag(1), triple(28, 235, 129));
    }

    #[test]
    fn entries_follow_period_three() {
        let g = x1(4);
        assert_eq!(g.entry(1, 1).bits(), 23);
        assert_eq!(g.entry(2, 1).bits(), 224);
        assert_eq!(g.entry(4, 1).bits(), 23);
        assert_eq!(g.entry(3, 2).bits(), 495);
        assert_eq!(g.entry(7, 0), F2Mat3::IDENTITY);
        assert_eq!(g.entry(1, 5), F2Mat3::ZERO);
    }

    #[test]
    fn relation_x0_x1_x3() {
        for k in 1..=8 {
            let x3 = x0(k).mul(&x1(k)).unwrap().inv();
            let r = x0(k).mul(&x1(k)).unwrap().mul(&x3).unwrap();
            assert!(r.is_identity());
        }
    }

    #[test]
    fn closed_forms_on_generators() {
        let sq = x0(5).square_closed_form().unwrap();
        assert_eq!(sq.vanish, 1);
        assert_eq!(sq.c1, triple(26, 26, 26));
        let x = x0(5).mul(&x1(5)).unwrap().inv();
        let sq = x.square_closed_form().unwrap();
        assert_eq!((sq.vanish, sq.c1), (1, triple(51, 89, 196)));

        let lp = x0(5).first_two_diagonals().unwrap();
        assert_eq!((lp.vanish, lp.a1, lp.a2), (0, triple(11, 11, 11), triple(17, 17, 17)));
        let lp = x0(5).pow(2).first_two_diagonals().unwrap();
        assert_eq!((lp.vanish, lp.a1, lp.a2), (1, triple(26, 26, 26), DiagTriple::ZERO));
    }

    #[test]
    fn conj_closed_form_examples() {
        let x = x0(5).mul(&x1(5)).unwrap().inv();
        assert_eq!(x.diag(2), triple(29, 211, 263));
        let (a1, c2) = x.conj_closed_form(x0(5).diag(1)).unwrap();
        assert_eq!(a1, triple(28, 235, 129));
        assert_eq!(c2, triple(19, 64, 355));
        let (_, same) = x.conj_closed_form(DiagTriple::ZERO).unwrap();
        assert_eq!(same, x.diag(2));
    }

    #[test]
    fn text_format_round_trip() {
        let g = x0(5);
        assert_eq!(
            g.to_string(),
            "M_0([11,11,11],[17,17,17],[26,26,26],[11,11,0],[17,0,0])"
        );
        assert_eq!(g.to_string().parse::<GroupElement>().unwrap(), g);
        let sq = x0(4).pow(2);
        assert!(sq.to_string().starts_with("M_1([26,26,26],[0,0,0],"));
        assert_eq!(sq.to_string().parse::<GroupElement>().unwrap(), sq);
        assert_eq!("M_2()".parse::<GroupElement>().unwrap().level(), 2);
        assert!("M_0([1,2])".parse::<GroupElement>().is_err());
        assert!("M_0([600,0,0])".parse::<GroupElement>().is_err());
        assert!("N_0()".parse::<GroupElement>().is_err());
        assert!("M_0()".parse::<GroupElement>().is_err());
    }

    #[test]
    fn canonical_bytes_round_trip() {
        let g = x1(6);
        let bytes = g.to_canonical_bytes();
        assert_eq!(bytes.len(), 4 + 36);
        assert_eq!(&bytes[..4], &6u32.to_le_bytes());
        assert_eq!(GroupElement::from_canonical_bytes(&bytes).unwrap(), g);
        assert!(GroupElement::from_canonical_bytes(&bytes[..10]).is_err());
    }

    #[test]
    fn truncate_rules() {
        assert_eq!(x0(5).truncate(3).unwrap(), x0(3));
        assert!(x0(3).truncate(0).is_err());
        assert!(x0(3).truncate(4).is_err());
    }
}
