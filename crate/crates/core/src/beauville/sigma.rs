//! `Σ(x)`: the union of all `H`-conjugates of the cyclic subgroup `⟨x⟩`.

use std::collections::VecDeque;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::band::{inv_into, mul_into, DiagTriple, GroupElement};
use crate::error::{Error, Result};
use crate::groups::EnumeratedGroup;

/// Left-multiplication data for conjugating by `s` and `s⁻¹` for each
/// generator `s` of a group.
pub(crate) struct Conjugators {
    level: usize,
    pairs: Vec<(Vec<DiagTriple>, Vec<DiagTriple>)>,
}

impl Conjugators {
    pub(crate) fn for_element(g: &GroupElement) -> Self {
        let k = g.level();
        let mut inv = vec![DiagTriple::ZERO; k];
        inv_into(g.diags(), &mut inv);
        Conjugators {
            level: k,
            pairs: vec![(g.diags().to_vec(), inv)],
        }
    }

    /// Generators and their inverses of `group`.
    pub(crate) fn of_generators(group: &EnumeratedGroup) -> Self {
        let k = group.level();
        let mut pairs = Vec::new();
        for g in group.generators() {
            let mut inv = vec![DiagTriple::ZERO; k];
            inv_into(g.element.diags(), &mut inv);
            pairs.push((g.element.diags().to_vec(), inv.clone()));
            pairs.push((inv, g.element.diags().to_vec()));
        }
        Conjugators { level: k, pairs }
    }

    pub(crate) fn len(&self) -> usize {
        self.pairs.len()
    }

    /// `out = s · m · s⁻¹` for the `i`-th conjugator `s`.
    #[inline]
    pub(crate) fn conj_into(&self, i: usize, m: &[DiagTriple], tmp: &mut [DiagTriple], out: &mut [DiagTriple]) {
        let (s, s_inv) = &self.pairs[i];
        mul_into(s, m, tmp);
        mul_into(tmp, s_inv, out);
    }

    pub(crate) fn buffers(&self) -> (Vec<DiagTriple>, Vec<DiagTriple>) {
        (vec![DiagTriple::ZERO; self.level], vec![DiagTriple::ZERO; self.level])
    }
}

/// A subset of an enumerated group `H`, stored as a bitset over its indices.
#[derive(Clone)]
pub struct SigmaSet {
    base: Option<GroupElement>,
    group: Arc<EnumeratedGroup>,
    members: FixedBitSet,
}

impl std::fmt::Debug for SigmaSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SigmaSet")
            .field("base", &self.base)
            .field("len", &self.len())
            .finish()
    }
}

impl SigmaSet {
    fn empty(group: Arc<EnumeratedGroup>, base: Option<GroupElement>) -> Self {
        let n = group.order();
        SigmaSet {
            base,
            group,
            members: FixedBitSet::with_capacity(n),
        }
    }

    /// The element whose `Σ` this is; `None` for unions.
    pub fn base(&self) -> Option<&GroupElement> {
        self.base.as_ref()
    }

    pub fn group(&self) -> &Arc<EnumeratedGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    #[inline]
    pub fn contains_index(&self, i: u32) -> bool {
        self.members.contains(i as usize)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.group.index_of(g).is_some_and(|i| self.contains_index(i))
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.ones().map(|i| i as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.indices().map(|i| self.group.element(i))
    }

    pub fn union(&self, other: &SigmaSet) -> SigmaSet {
        assert!(Arc::ptr_eq(&self.group, &other.group), "sets over different groups");
        let mut members = self.members.clone();
        members.union_with(&other.members);
        SigmaSet {
            base: None,
            group: self.group.clone(),
            members,
        }
    }

    pub fn intersection(&self, other: &SigmaSet) -> SigmaSet {
        assert!(Arc::ptr_eq(&self.group, &other.group), "sets over different groups");
        let mut members = self.members.clone();
        members.intersect_with(&other.members);
        SigmaSet {
            base: None,
            group: self.group.clone(),
            members,
        }
    }

    /// `true` iff the set is exactly `{id}`.
    pub fn is_trivial(&self) -> bool {
        let id = GroupElement::identity(self.group.level()).expect("level >= 1");
        self.len() == 1 && self.contains(&id)
    }

    /// `g · self · g⁻¹` for `g` normalizing the underlying group.
    pub fn conjugated_by(&self, g: &GroupElement) -> Result<SigmaSet> {
        let conj = Conjugators::for_element(g);
        let (mut tmp, mut out) = conj.buffers();
        let mut res = SigmaSet::empty(self.group.clone(), None);
        for i in self.indices() {
            conj.conj_into(0, self.group.slice(i), &mut tmp, &mut out);
            let j = self
                .group
                .index_of_slice(&out)
                .ok_or(Error::NotInGroup("subgroup H (conjugator does not normalize it)"))?;
            res.members.insert(j as usize);
        }
        Ok(res)
    }
}

/// `Σ(x) = { h xʲ h⁻¹ : h ∈ H, j ≥ 0 }`, identity included.
///
/// Computed as the smallest set containing the powers of `x` that is closed
/// under conjugation by the generators of `H` and their inverses.
pub fn sigma(x: &GroupElement, h: &Arc<EnumeratedGroup>) -> Result<SigmaSet> {
    let mut set = SigmaSet::empty(h.clone(), Some(x.clone()));
    let mut queue = VecDeque::new();
    let mut p = GroupElement::identity(h.level())?;
    loop {
        let i = h.index_of(&p).ok_or(Error::NotInGroup("subgroup H"))?;
        if set.members.put(i as usize) {
            break;
        }
        queue.push_back(i);
        p = p.mul(x)?;
    }
    let conj = Conjugators::of_generators(h);
    let (mut tmp, mut out) = conj.buffers();
    while let Some(m) = queue.pop_front() {
        for s in 0..conj.len() {
            conj.conj_into(s, h.slice(m), &mut tmp, &mut out);
            let j = h.index_of_slice(&out).ok_or(Error::NotInGroup("subgroup H"))?;
            if !set.members.put(j as usize) {
                queue.push_back(j);
            }
        }
    }
    Ok(set)
}

/// `Σ(T) = Σ(x0) ∪ Σ(x1) ∪ Σ((x0 x1)⁻¹)` with its three parts.
#[derive(Clone, Debug)]
pub struct SigmaT {
    pub parts: [SigmaSet; 3],
    pub union: SigmaSet,
}

pub fn sigma_t(t: (&GroupElement, &GroupElement), h: &Arc<EnumeratedGroup>) -> Result<SigmaT> {
    let third = t.0.mul(t.1)?.inv();
    let parts = [sigma(t.0, h)?, sigma(t.1, h)?, sigma(&third, h)?];
    let union = parts[0].union(&parts[1]).union(&parts[2]);
    Ok(SigmaT { parts, union })
}
