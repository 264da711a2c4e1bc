//! Mixed Beauville structures `u = (G, H, T)` on the groups `G_k ⊃ H_k`.

pub mod conditions;
pub mod powers;
pub mod schemes;
pub mod sigma;

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::band::GroupElement;
use crate::cache;
use crate::error::{Error, Result};
use crate::groups::{
    check_hom_extends, enumerate_g, enumerate_h, EnumeratedGroup, GeneratorSet, Spherical, DEFAULT_BUDGET,
};
use crate::surfaces::{self, SurfaceRow};
use crate::words::Word;

pub use conditions::{
    b_intersection, check_a, check_b, check_bprime, check_c, squares_table, BPrimeVerdict, BVerdict, CVerdict,
    SquareRow, DEFAULT_BPRIME_WORK,
};
pub use powers::{form_of, power_is_trivial, t_of, verify_power_forms, PowerFormReport, PowerRow, TwoPowerVanish};
pub use schemes::{all_figures, conj_scheme, scheme_figure, ConjScheme, Edge, EdgeLabel, Family, Regime, SchemeFigure};
pub use sigma::{sigma, sigma_t, SigmaSet, SigmaT};

/// A triple `(G, H, T)` with `[G : H] = 2` and `T = (t0, t1) ∈ H × H`, plus
/// a representative of the non-trivial coset.
#[derive(Debug)]
pub struct BeauvilleTriple {
    g: Arc<EnumeratedGroup>,
    h: Arc<EnumeratedGroup>,
    t: (GroupElement, GroupElement),
    rep: GroupElement,
    sigma_t: OnceLock<SigmaT>,
}

impl BeauvilleTriple {
    pub fn new(
        g: Arc<EnumeratedGroup>,
        h: Arc<EnumeratedGroup>,
        t: (GroupElement, GroupElement),
        rep: GroupElement,
    ) -> Result<Self> {
        let k = g.level();
        if h.level() != k {
            return Err(Error::LevelMismatch {
                left: k,
                right: h.level(),
            });
        }
        if 2 * h.order() != g.order() {
            return Err(Error::InvalidTriple(format!(
                "[G : H] = {}/{} is not 2",
                g.order(),
                h.order()
            )));
        }
        if !h.iter().all(|e| g.index_of_slice(e).is_some()) {
            return Err(Error::InvalidTriple("H is not contained in G".into()));
        }
        if !h.contains(&t.0) || !h.contains(&t.1) {
            return Err(Error::NotInGroup("subgroup H"));
        }
        if !g.contains(&rep) {
            return Err(Error::NotInGroup("group G"));
        }
        if h.contains(&rep) {
            return Err(Error::ConjugatorInSubgroup);
        }
        Ok(BeauvilleTriple {
            g,
            h,
            t,
            rep,
            sigma_t: OnceLock::new(),
        })
    }

    /// `u_k = (G_k, H_k, (x0, x1))` with coset representative `x2`.
    pub fn standard(k: usize, budget: usize) -> Result<Self> {
        Self::standard_cached(k, budget, None)
    }

    /// As [`Self::standard`], reusing enumerated groups stored in `cache_dir`.
    pub fn standard_cached(k: usize, budget: usize, cache_dir: Option<&std::path::Path>) -> Result<Self> {
        let gs = GeneratorSet::new(k)?;
        let (g, h) = match cache_dir {
            Some(dir) => (
                cache::load_or_build(dir, "G", k, &gs.g_generators(), || enumerate_g(&gs, budget))?,
                cache::load_or_build(dir, "H", k, &gs.h_generators(), || enumerate_h(&gs, budget))?,
            ),
            None => (enumerate_g(&gs, budget)?, enumerate_h(&gs, budget)?),
        };
        Self::new(
            Arc::new(g),
            Arc::new(h),
            (gs.x(0).clone(), gs.x(1).clone()),
            gs.x(2).clone(),
        )
    }

    pub fn level(&self) -> usize {
        self.g.level()
    }

    pub fn g(&self) -> &Arc<EnumeratedGroup> {
        &self.g
    }

    pub fn h(&self) -> &Arc<EnumeratedGroup> {
        &self.h
    }

    pub fn t(&self) -> (&GroupElement, &GroupElement) {
        (&self.t.0, &self.t.1)
    }

    pub fn coset_rep(&self) -> &GroupElement {
        &self.rep
    }

    /// `Σ(T)`, computed once.
    pub fn sigma_t(&self) -> Result<&SigmaT> {
        if let Some(s) = self.sigma_t.get() {
            return Ok(s);
        }
        let s = sigma_t((&self.t.0, &self.t.1), &self.h)?;
        Ok(self.sigma_t.get_or_init(|| s))
    }

    /// Same groups (by identity) and same `T`.
    pub fn same_as(&self, other: &BeauvilleTriple) -> bool {
        Arc::ptr_eq(&self.g, &other.g) && Arc::ptr_eq(&self.h, &other.h) && self.t == other.t
    }

    fn with_t(&self, t: (GroupElement, GroupElement)) -> Result<Self> {
        if !self.h.contains(&t.0) || !self.h.contains(&t.1) {
            return Err(Error::NotInGroup("subgroup H"));
        }
        Ok(BeauvilleTriple {
            g: self.g.clone(),
            h: self.h.clone(),
            t,
            rep: self.rep.clone(),
            sigma_t: OnceLock::new(),
        })
    }
}

/// An automorphism of an enumerated group, stored as an index map.
#[derive(Clone, Debug)]
pub struct Automorphism {
    group: Arc<EnumeratedGroup>,
    map: Vec<u32>,
}

impl Automorphism {
    /// Extends `generators()[i] ↦ images[i]`; fails unless the extension is
    /// a bijective homomorphism.
    pub fn new(group: Arc<EnumeratedGroup>, images: &[GroupElement]) -> Result<Self> {
        let v = check_hom_extends(&group, images)?;
        if !v.is_automorphism() {
            return Err(Error::NotAutomorphism);
        }
        let map = v.map.ok_or(Error::NotAutomorphism)?;
        Ok(Automorphism { group, map })
    }

    /// Images given as words in `x0, x1, …`, evaluated at the group's level.
    pub fn from_words(group: Arc<EnumeratedGroup>, gens: &GeneratorSet, words: &[&str]) -> Result<Self> {
        let images = words
            .iter()
            .map(|w| gens.eval(&w.parse::<Word>()?))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, &images)
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        let i = self.group.index_of(g).ok_or(Error::NotInGroup("automorphism domain"))?;
        Ok(self.group.element(self.map[i as usize]))
    }

    pub fn group(&self) -> &Arc<EnumeratedGroup> {
        &self.group
    }
}

/// Maps on mixed Beauville structures of a fixed `G`.
#[derive(Clone, Debug)]
pub enum Transform {
    /// `(c, a) ↦ (c⁻¹, a⁻¹)`
    Iota,
    /// `(c, a) ↦ (a, c)`
    Sigma3,
    /// `(c, a) ↦ (c, c⁻¹ a⁻¹)`
    Sigma4,
    /// `(G, H, (c, a)) ↦ (G, ψ(H), (ψ(c), ψ(a)))`
    SigmaPsi(Automorphism),
}

/// Applies `op` to `u`. For `σ_ψ` the automorphism must be of `u`'s `G`
/// and must map `H` onto itself.
pub fn transform(u: &BeauvilleTriple, op: &Transform) -> Result<BeauvilleTriple> {
    let (c, a) = u.t();
    let t = match op {
        Transform::Iota => (c.inv(), a.inv()),
        Transform::Sigma3 => (a.clone(), c.clone()),
        Transform::Sigma4 => (c.clone(), c.inv().mul(&a.inv())?),
        Transform::SigmaPsi(psi) => {
            if !Arc::ptr_eq(psi.group(), u.g()) && psi.group().fingerprint() != u.g().fingerprint() {
                return Err(Error::InvalidTriple("automorphism of a different group".into()));
            }
            for e in u.h().elements() {
                if !u.h().contains(&psi.apply(&e)?) {
                    return Err(Error::InvalidTriple("ψ(H) differs from H".into()));
                }
            }
            (psi.apply(c)?, psi.apply(a)?)
        }
    };
    u.with_t(t)
}

/// Reality test for `S(u)` through `ρ = σ_ψ`: `ι(u) = σ_ψ(u)` and
/// `σ_ψ(ι(u)) = u`.
pub fn real_via(u: &BeauvilleTriple, psi: &Automorphism) -> Result<bool> {
    let rho = Transform::SigmaPsi(psi.clone());
    let iu = transform(u, &Transform::Iota)?;
    let ru = transform(u, &rho)?;
    let riu = transform(&iu, &rho)?;
    Ok(iu.same_as(&ru) && riu.same_as(u))
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub budget: usize,
    /// Run the full (B′) sweep.
    pub bprime: bool,
    pub bprime_work: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            bprime: false,
            bprime_work: DEFAULT_BPRIME_WORK,
            cache_dir: None,
        }
    }
}

/// At a power-of-two level: whether `x^k` lies in the (B) intersection and
/// equals `y^k`.
#[derive(Clone, Debug, Serialize)]
pub struct TwoPowerCheck {
    #[serde(rename = "xkInIntersection")]
    pub xk_in_intersection: bool,
    #[serde(rename = "xkEqualsYk")]
    pub xk_equals_yk: bool,
    pub xk: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct BeauvilleReport {
    pub k: usize,
    #[serde(rename = "orderG")]
    pub order_g: usize,
    #[serde(rename = "orderH")]
    pub order_h: usize,
    #[serde(rename = "sigmaT")]
    pub sigma_t_size: usize,
    #[serde(rename = "conditionA")]
    pub condition_a: bool,
    #[serde(rename = "conditionB")]
    pub condition_b: BVerdict,
    #[serde(rename = "conditionC")]
    pub condition_c: bool,
    #[serde(rename = "conditionCLeading")]
    pub condition_c_leading: bool,
    #[serde(rename = "conditionBPrime", skip_serializing_if = "Option::is_none")]
    pub condition_bprime: Option<BPrimeVerdict>,
    #[serde(rename = "twoPower", skip_serializing_if = "Option::is_none")]
    pub two_power: Option<TwoPowerCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<SurfaceRow>,
    /// All conditions hold, or `k` is a power of two and exactly (B) fails
    /// with `x^k` in the intersection.
    #[serde(rename = "matchesExpectedPattern")]
    pub matches_expected_pattern: bool,
}

impl BeauvilleReport {
    pub fn is_beauville(&self) -> bool {
        self.condition_a && self.condition_b.verdict && self.condition_c
    }
}

/// Runs (A), (B) with `g0 = x2`, (C) and optionally (B′) on `u_k`.
pub fn verify(k: usize, opts: &VerifyOptions) -> Result<BeauvilleReport> {
    let u = BeauvilleTriple::standard_cached(k, opts.budget, opts.cache_dir.as_deref())?;
    verify_triple(&u, opts)
}

pub fn verify_triple(u: &BeauvilleTriple, opts: &VerifyOptions) -> Result<BeauvilleReport> {
    let k = u.level();
    let a = check_a(u)?;
    let b = check_b(u, u.coset_rep())?;
    let c = if k >= 2 { Some(check_c(u)?) } else { None };
    let bprime = if opts.bprime {
        Some(check_bprime(u, opts.bprime_work)?)
    } else {
        None
    };
    let two_power = if k.is_power_of_two() && k > 1 {
        let gs = GeneratorSet::new(k)?;
        let xk = gs.spherical(Spherical::X).pow(k as u64);
        let yk = gs.spherical(Spherical::Y).pow(k as u64);
        let hits = b_intersection(u, u.coset_rep())?;
        let xk_in = u.h().index_of(&xk).is_some_and(|i| hits.binary_search(&i).is_ok());
        Some(TwoPowerCheck {
            xk_in_intersection: xk_in && !xk.is_identity(),
            xk_equals_yk: xk == yk,
            xk,
        })
    } else {
        None
    };
    let invariants = if a { Some(surfaces::surface_row(u)?) } else { None };
    let c_ok = c.as_ref().is_none_or(|c| c.verdict);
    let matches = match &two_power {
        None => a && b.verdict && c_ok,
        Some(tp) => a && !b.verdict && c_ok && tp.xk_in_intersection && tp.xk_equals_yk,
    };
    Ok(BeauvilleReport {
        k,
        order_g: u.g().order(),
        order_h: u.h().order(),
        sigma_t_size: u.sigma_t()?.union.len(),
        condition_a: a,
        condition_b: b,
        condition_c: c_ok,
        condition_c_leading: c.as_ref().is_none_or(|c| c.leading_argument),
        condition_bprime: bprime,
        two_power,
        invariants,
        matches_expected_pattern: matches,
    })
}

#[cfg(test)]
mod tests;
