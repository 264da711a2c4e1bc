//! Numeric invariants of the surface `S(u) = (C_T × C_T)/G`.
//!
//! With `b = 1 − 1/ord(x0) − 1/ord(x1) − 1/ord(x0 x1)`:
//!
//! - `g(C_T) = 1 + |H| b / 2`
//! - `e(S) = 4 (g − 1)² / |H| = |H| b²`
//! - `χ(S) = e(S) / 4`, `K_S² = 8 χ(S)`
//! - `ν(T) = ord(x0) ord(x1) ord(x0 x1)`

use std::fmt::Display;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::beauville::{check_a, BeauvilleTriple};
use crate::error::{Error, Result};
use crate::groups::element_order;

/// Surface invariants in exact arithmetic over the integer type `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceInvariants<T> {
    pub orders: [u64; 3],
    pub h_order: u64,
    pub nu: u64,
    pub genus: T,
    pub euler: T,
    pub chi: T,
    pub k_squared: T,
}

fn integral<T: Integer + Clone + Display>(name: &'static str, r: &Ratio<T>) -> Result<T> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral {
            name,
            value: r.to_string(),
        })
    }
}

impl<T> SurfaceInvariants<T>
where
    T: Integer + Signed + Clone + FromPrimitive + Display,
{
    /// Invariants for a group `H` of order `h_order` with ramification
    /// orders `orders`.
    pub fn from_orders(h_order: u64, orders: [u64; 3]) -> Result<Self> {
        let from = |v: u64| T::from_u64(v).ok_or_else(|| Error::Parse(format!("{v} does not fit")));
        let h = Ratio::from_integer(from(h_order)?);
        let mut bracket = Ratio::<T>::one();
        for &o in &orders {
            if o == 0 {
                return Err(Error::DegenerateBracket("order 0".into()));
            }
            bracket = bracket - Ratio::new(T::one(), from(o)?);
        }
        if bracket <= Ratio::zero() {
            return Err(Error::DegenerateBracket(bracket.to_string()));
        }
        let two = Ratio::from_integer(from(2)?);
        let four = Ratio::from_integer(from(4)?);
        let eight = Ratio::from_integer(from(8)?);
        let g = Ratio::one() + h.clone() * bracket.clone() / two;
        let genus = integral("g(C_T)", &g)?;
        let gm1 = g - Ratio::one();
        let e_genus = four.clone() * gm1.clone() * gm1 / h.clone();
        let e_bracket = h * bracket.clone() * bracket;
        if e_genus != e_bracket {
            return Err(Error::EulerMismatch(e_genus.to_string(), e_bracket.to_string()));
        }
        let euler = integral("e(S)", &e_genus)?;
        let chi_r = e_genus / four;
        let chi = integral("chi(S)", &chi_r)?;
        let k_squared = integral("K^2", &(chi_r * eight))?;
        Ok(SurfaceInvariants {
            orders,
            h_order,
            nu: orders.iter().product(),
            genus,
            euler,
            chi,
            k_squared,
        })
    }

    /// `e = 4χ`, `K² = 8χ` and `ν` a power of two.
    pub fn is_consistent(&self) -> bool {
        let four = T::from_u8(4).expect("small");
        let eight = T::from_u8(8).expect("small");
        self.euler == four * self.chi.clone()
            && self.k_squared == eight * self.chi.clone()
            && self.nu.is_power_of_two()
    }
}

/// Ramification orders `(ord t0, ord t1, ord t0 t1)`.
pub fn ramification_orders(u: &BeauvilleTriple) -> Result<[u64; 3]> {
    let (t0, t1) = u.t();
    Ok([element_order(t0), element_order(t1), element_order(&t0.mul(t1)?)])
}

/// Invariants of `S(u)`; requires condition (A).
pub fn invariants<T>(u: &BeauvilleTriple) -> Result<SurfaceInvariants<T>>
where
    T: Integer + Signed + Clone + FromPrimitive + Display,
{
    if !check_a(u)? {
        return Err(Error::ConditionAFailed);
    }
    SurfaceInvariants::from_orders(u.h().order() as u64, ramification_orders(u)?)
}

/// One output row per level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub k: usize,
    pub order_g: u64,
    pub order_h: u64,
    pub ord_x0: u64,
    pub ord_x1: u64,
    pub ord_x: u64,
    pub nu: u64,
    pub genus: i64,
    pub euler: i64,
    pub chi: i64,
    pub k_squared: i64,
}

/// Row for `u` without re-checking (A).
pub(crate) fn surface_row(u: &BeauvilleTriple) -> Result<SurfaceRow> {
    let inv = SurfaceInvariants::<i64>::from_orders(u.h().order() as u64, ramification_orders(u)?)?;
    Ok(SurfaceRow {
        k: u.level(),
        order_g: u.g().order() as u64,
        order_h: inv.h_order,
        ord_x0: inv.orders[0],
        ord_x1: inv.orders[1],
        ord_x: inv.orders[2],
        nu: inv.nu,
        genus: inv.genus,
        euler: inv.euler,
        chi: inv.chi,
        k_squared: inv.k_squared,
    })
}

/// Invariants row for `u`; requires condition (A).
pub fn invariants_row(u: &BeauvilleTriple) -> Result<SurfaceRow> {
    if !check_a(u)? {
        return Err(Error::ConditionAFailed);
    }
    surface_row(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn level_three_values() {
        let inv = SurfaceInvariants::<i64>::from_orders(128, [4, 4, 4]).unwrap();
        assert_eq!((inv.genus, inv.euler, inv.chi, inv.k_squared, inv.nu), (17, 8, 2, 16, 64));
        assert!(inv.is_consistent());
        let big = SurfaceInvariants::<BigInt>::from_orders(128, [4, 4, 4]).unwrap();
        assert_eq!(big.genus, BigInt::from(17));
    }

    #[test]
    fn degenerate_bracket_is_flagged() {
        assert!(matches!(
            SurfaceInvariants::<i64>::from_orders(8, [2, 2, 2]),
            Err(Error::DegenerateBracket(s)) if s == "-1/2"
        ));
        assert!(matches!(
            SurfaceInvariants::<i64>::from_orders(8, [2, 4, 4]),
            Err(Error::DegenerateBracket(_))
        ));
    }

    #[test]
    fn fractional_genus_is_an_error() {
        assert!(matches!(
            SurfaceInvariants::<i64>::from_orders(4, [4, 8, 8]),
            Err(Error::NonIntegral { .. })
        ));
    }

    proptest! {
        // Two-power orders and group sizes large enough for integrality.
        #[test]
        fn relations_hold(a in 2u32..6, b in 2u32..6, c in 2u32..6, extra in 0u32..8) {
            let h = 1u64 << (a.max(b).max(c) * 2 + extra);
            let orders = [1u64 << a, 1 << b, 1 << c];
            if let Ok(inv) = SurfaceInvariants::<BigInt>::from_orders(h, orders) {
                prop_assert!(inv.is_consistent());
                prop_assert!(inv.genus >= BigInt::from(2));
            }
        }
    }
}
