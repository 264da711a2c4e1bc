//! The mixed Beauville conditions.
//!
//! - (A) `T` generates `H`.
//! - (B) some `g0 ∈ G∖H` has `g0 Σ(T) g0⁻¹ ∩ Σ(T) = {id}`.
//! - (B′) every `g ∈ G∖H` does.
//! - (C) no `g ∈ G∖H` has `g² ∈ Σ(T)`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::sigma::Conjugators;
use super::BeauvilleTriple;
use crate::band::{mul_into, square_leading, DiagTriple, GroupElement};
use crate::error::{Error, Result};
use crate::groups::{closure, Generator};
use crate::tables;

/// Default cap on `|H| · |Σ(T)|` conjugations for the (B′) sweep.
pub const DEFAULT_BPRIME_WORK: usize = 1 << 28;

pub fn check_a(u: &BeauvilleTriple) -> Result<bool> {
    let gens = [
        Generator::new("t0", u.t().0.clone()),
        Generator::new("t1", u.t().1.clone()),
    ];
    match closure(&gens, u.level(), u.h().order()) {
        Ok(sub) => Ok(sub.order() == u.h().order()),
        // T stays inside H, so overflowing |H| cannot happen; a failure here
        // would mean T is not in H, which the triple constructor rejects.
        Err(Error::BudgetExceeded { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Verdict for condition (B) at a single `g0`.
#[derive(Clone, Debug, Serialize)]
pub struct BVerdict {
    pub verdict: bool,
    pub g0: GroupElement,
    /// Smallest non-identity element of the intersection under canonical
    /// encoding order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GroupElement>,
    #[serde(rename = "intersectionSize")]
    pub intersection_size: usize,
}

/// The members of `g0 Σ(T) g0⁻¹ ∩ Σ(T)` as indices into `H`.
pub fn b_intersection(u: &BeauvilleTriple, g0: &GroupElement) -> Result<Vec<u32>> {
    let g_idx = u.g().index_of(g0).ok_or(Error::NotInGroup("group G"))?;
    if u.h().contains(g0) {
        return Err(Error::ConjugatorInSubgroup);
    }
    let _ = g_idx;
    let st = u.sigma_t()?;
    let h = u.h();
    let conj = Conjugators::for_element(g0);
    let (mut tmp, mut out) = conj.buffers();
    let mut hits = Vec::new();
    for m in st.union.indices() {
        conj.conj_into(0, h.slice(m), &mut tmp, &mut out);
        let c = h
            .index_of_slice(&out)
            .ok_or(Error::InvalidTriple("H is not normal in G".into()))?;
        if st.union.contains_index(c) {
            hits.push(c);
        }
    }
    hits.sort_unstable();
    Ok(hits)
}

pub fn check_b(u: &BeauvilleTriple, g0: &GroupElement) -> Result<BVerdict> {
    let hits = b_intersection(u, g0)?;
    let h = u.h();
    let witness = hits
        .iter()
        .map(|&i| h.element(i))
        .filter(|e| !e.is_identity())
        .min();
    Ok(BVerdict {
        verdict: witness.is_none(),
        g0: g0.clone(),
        witness,
        intersection_size: hits.len(),
    })
}

/// Verdict for (B′) over the whole coset `G∖H`.
#[derive(Clone, Debug, Serialize)]
pub struct BPrimeVerdict {
    pub verdict: bool,
    #[serde(rename = "cosetSize")]
    pub coset_size: usize,
    /// Number of `g ∈ G∖H` for which the intersection is non-trivial.
    pub failing: usize,
}

/// Checks (B′) by conjugating `Σ(T)` with every `g = h·r`, `h ∈ H`, where `r`
/// is the triple's coset representative. Refuses when `|H|·|Σ(T)|` exceeds
/// `work_budget`.
pub fn check_bprime(u: &BeauvilleTriple, work_budget: usize) -> Result<BPrimeVerdict> {
    let st = u.sigma_t()?;
    let h = u.h();
    let n = h.order();
    let members: Vec<u32> = st.union.indices().collect();
    if n.saturating_mul(members.len()) > work_budget {
        return Err(Error::BudgetExceeded {
            budget: work_budget,
        });
    }
    let k = u.level();
    let id = h
        .index_of(&GroupElement::identity(k)?)
        .ok_or(Error::NotInGroup("subgroup H"))?;
    let rep = u.coset_rep().diags().to_vec();
    let fails: Vec<bool> = (0..n as u32)
        .into_par_iter()
        .map(|hi| {
            let mut g = vec![DiagTriple::ZERO; k];
            mul_into(h.slice(hi), &rep, &mut g);
            let conj = Conjugators::for_element(&GroupElement::from_diags(g).expect("k >= 1"));
            let (mut tmp, mut out) = conj.buffers();
            members.iter().any(|&m| {
                if m == id {
                    return false;
                }
                conj.conj_into(0, h.slice(m), &mut tmp, &mut out);
                h.index_of_slice(&out)
                    .is_some_and(|c| st.union.contains_index(c))
            })
        })
        .collect();
    let failing = fails.iter().filter(|&&f| f).count();
    Ok(BPrimeVerdict {
        verdict: failing == 0,
        coset_size: n,
        failing,
    })
}

/// Verdict for (C), with the leading-diagonal argument re-derived.
#[derive(Clone, Debug, Serialize)]
pub struct CVerdict {
    pub verdict: bool,
    /// Number of `g ∈ G∖H` with `g² ∈ Σ(T)`.
    pub violations: usize,
    /// Every `g²` has exactly one vanishing diagonal and a leading triple
    /// from the squares table, every second diagonal of a `Σ(T)` member with
    /// vanishing first diagonal is in the published list, and the two lists
    /// are disjoint.
    #[serde(rename = "leadingArgument")]
    pub leading_argument: bool,
    /// Observed `(first diagonal of h, leading triple of (h·r)²)` pairs.
    #[serde(rename = "classTable")]
    pub class_table: Vec<(DiagTriple, DiagTriple)>,
    /// Observed second diagonals of `Σ(T)` members with zero first diagonal.
    #[serde(rename = "sigmaSecondDiagonals")]
    pub sigma_second: Vec<DiagTriple>,
}

pub fn check_c(u: &BeauvilleTriple) -> Result<CVerdict> {
    let k = u.level();
    if k < 2 {
        return Err(Error::LevelTooSmall(k, 2));
    }
    let st = u.sigma_t()?;
    let h = u.h();
    let rep = u.coset_rep().diags().to_vec();

    // (in Σ(T), vanish count, h first diag, g² second diag) per h
    let rows: Vec<(bool, usize, DiagTriple, DiagTriple)> = (0..h.order() as u32)
        .into_par_iter()
        .map(|hi| {
            let mut g = vec![DiagTriple::ZERO; k];
            let mut sq = vec![DiagTriple::ZERO; k];
            mul_into(h.slice(hi), &rep, &mut g);
            mul_into(&g, &g, &mut sq);
            let inside = h
                .index_of_slice(&sq)
                .is_some_and(|i| st.union.contains_index(i));
            let vanish = sq.iter().take_while(|t| t.is_zero()).count();
            (inside, vanish, h.slice(hi)[0], sq[1])
        })
        .collect();

    let violations = rows.iter().filter(|r| r.0).count();
    let class_table: BTreeSet<(DiagTriple, DiagTriple)> = rows.iter().map(|r| (r.2, r.3)).collect();
    let square_leaders: BTreeSet<DiagTriple> = tables::SQUARES_TABLE
        .iter()
        .map(|row| DiagTriple::new(row[2]).expect("table codes"))
        .collect();
    let squares_ok = rows
        .iter()
        .all(|r| r.1 == 1 && square_leaders.contains(&r.3));

    let sigma_allowed: BTreeSet<DiagTriple> = tables::SIGMA_SECOND_DIAGONALS
        .iter()
        .map(|&t| DiagTriple::new(t).expect("table codes"))
        .collect();
    let sigma_second: BTreeSet<DiagTriple> = st
        .union
        .indices()
        .map(|i| h.slice(i))
        .filter(|e| e[0].is_zero())
        .map(|e| e[1])
        .collect();
    let leading_argument = squares_ok
        && sigma_second.is_subset(&sigma_allowed)
        && sigma_allowed.is_disjoint(&square_leaders);

    Ok(CVerdict {
        verdict: violations == 0,
        violations,
        leading_argument,
        class_table: class_table.into_iter().collect(),
        sigma_second: sigma_second.into_iter().collect(),
    })
}

/// One row of the squares table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareRow {
    pub h_first: DiagTriple,
    pub times_r_first: DiagTriple,
    pub square_leading: DiagTriple,
}

/// Squares table from the closed forms alone: for each possible first
/// diagonal `D` of `h ∈ H`, `h·r` has first diagonal `D + r₁` and `(h·r)²`
/// has leading (second) diagonal `c₁(i) = a₁(i) a₁(i+1)`.
pub fn squares_table(r_first: DiagTriple) -> Vec<SquareRow> {
    tables::H_FIRST_DIAGONALS
        .iter()
        .map(|&d| {
            let h_first = DiagTriple::new(d).expect("table codes");
            let a1 = h_first + r_first;
            let (c1, _) = square_leading(a1, DiagTriple::ZERO, 0);
            SquareRow {
                h_first,
                times_r_first: a1,
                square_leading: c1,
            }
        })
        .collect()
}
