//! Generators of `G`, enumeration of the finite quotients `G_k` and `H_k`,
//! element orders and homomorphism extension.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::BuildHasher;
use std::str::FromStr;

use hashbrown::{DefaultHashBuilder, HashTable};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::band::{inv_into, mul_into, DiagTriple, GroupElement};
use crate::error::{Error, Result};
use crate::tables;
use crate::words::Word;

/// Default enumeration budget; `|G_8| = 2^22` is the largest group it admits.
pub const DEFAULT_BUDGET: usize = 1 << 22;

/// Products computed per parallel batch during closure.
const BATCH: usize = 1 << 14;

/// A labelled generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub element: GroupElement,
}

impl Generator {
    pub fn new(label: impl Into<String>, element: GroupElement) -> Self {
        Generator {
            label: label.into(),
            element,
        }
    }
}

/// `x0, …, x6` at a fixed truncation level. `x3..x6` are derived from
/// `x_{i+3} = (x_i x_{i+1})⁻¹` and every relation is re-checked.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    level: usize,
    x: [GroupElement; 7],
}

pub fn make_generators(k: usize) -> Result<GeneratorSet> {
    GeneratorSet::new(k)
}

impl GeneratorSet {
    pub fn new(k: usize) -> Result<Self> {
        let x0 = GroupElement::from_codes(k, &tables::X0_BAND)?;
        let x1 = GroupElement::from_codes(k, &tables::X1_BAND)?;
        let x2 = GroupElement::from_codes(k, &tables::X2_BAND)?;
        let x3 = x0.mul(&x1)?.inv();
        let x4 = x1.mul(&x2)?.inv();
        let x5 = x2.mul(&x3)?.inv();
        let x6 = x3.mul(&x4)?.inv();
        let set = GeneratorSet {
            level: k,
            x: [x0, x1, x2, x3, x4, x5, x6],
        };
        for i in 0..7 {
            let r = set.x[i].mul(&set.x[(i + 1) % 7])?.mul(&set.x[(i + 3) % 7])?;
            if !r.is_identity() {
                return Err(Error::RelationFailure { index: i, level: k });
            }
        }
        Ok(set)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn x(&self, i: usize) -> &GroupElement {
        &self.x[i]
    }

    pub fn all(&self) -> &[GroupElement; 7] {
        &self.x
    }

    /// `x0, x1, x2`, which generate `G_k`.
    pub fn g_generators(&self) -> Vec<Generator> {
        (0..3)
            .map(|i| Generator::new(format!("x{i}"), self.x[i].clone()))
            .collect()
    }

    /// `x0, x1`, which generate `H_k`.
    pub fn h_generators(&self) -> Vec<Generator> {
        (0..2)
            .map(|i| Generator::new(format!("x{i}"), self.x[i].clone()))
            .collect()
    }

    pub fn spherical(&self, which: Spherical) -> GroupElement {
        let conj = |e: &GroupElement| e.conjugate_by(&self.x[2]).expect("same level");
        match which {
            Spherical::X0 => self.x[0].clone(),
            Spherical::X1 => self.x[1].clone(),
            Spherical::X => self.x[3].clone(),
            Spherical::Y0 => conj(&self.x[0]),
            Spherical::Y1 => conj(&self.x[1]),
            Spherical::Y => conj(&self.x[3]),
        }
    }

    /// Evaluates a word with `x_i ↦ x_i` for `i < 7`.
    pub fn eval(&self, word: &Word) -> Result<GroupElement> {
        word.eval(&self.x)
    }
}

/// Members of the two spherical systems `(x0, x1, x)` and
/// `(y0, y1, y) = x2 (x0, x1, x) x2⁻¹`, where `x = (x0 x1)⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spherical {
    X0,
    X1,
    X,
    Y0,
    Y1,
    Y,
}

impl Spherical {
    pub const ALL: [Spherical; 6] = [
        Spherical::X0,
        Spherical::X1,
        Spherical::X,
        Spherical::Y0,
        Spherical::Y1,
        Spherical::Y,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Spherical::X0 => "x0",
            Spherical::X1 => "x1",
            Spherical::X => "x",
            Spherical::Y0 => "y0",
            Spherical::Y1 => "y1",
            Spherical::Y => "y",
        }
    }

    /// The published power forms.
    pub fn printed_forms(self) -> &'static tables::PowerForms {
        match self {
            Spherical::X0 => &tables::X0_FORMS,
            Spherical::X1 => &tables::X1_FORMS,
            Spherical::X => &tables::X_FORMS,
            Spherical::Y0 => &tables::Y0_FORMS,
            Spherical::Y1 => &tables::Y1_FORMS,
            Spherical::Y => &tables::Y_FORMS,
        }
    }
}

impl fmt::Display for Spherical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Spherical {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Spherical::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown element {s:?}; expected x0|x1|x|y0|y1|y")))
    }
}

// ---------------------------------------------------------------------------
// enumerated groups

/// A fully enumerated finite group of level-`k` elements.
///
/// Elements live in a flat arena (`k` triples each) in discovery order; a
/// hash table maps element contents to their index.
pub struct EnumeratedGroup {
    level: usize,
    generators: Vec<Generator>,
    arena: Vec<DiagTriple>,
    table: HashTable<u32>,
    hasher: DefaultHashBuilder,
}

impl fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumeratedGroup")
            .field("level", &self.level)
            .field("order", &self.order())
            .field(
                "generators",
                &self.generators.iter().map(|g| &g.label).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl EnumeratedGroup {
    fn empty(level: usize, generators: Vec<Generator>) -> Self {
        EnumeratedGroup {
            level,
            generators,
            arena: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    /// Builds a group from an explicit element list. The list must be
    /// duplicate-free; closure is not re-checked.
    pub fn from_elements<'a>(
        level: usize,
        generators: Vec<Generator>,
        elements: impl IntoIterator<Item = &'a [DiagTriple]>,
    ) -> Result<Self> {
        let mut g = EnumeratedGroup::empty(level, generators);
        for e in elements {
            if e.len() != level {
                return Err(Error::LevelMismatch {
                    left: level,
                    right: e.len(),
                });
            }
            if !g.insert(e).1 {
                return Err(Error::InvalidTriple("duplicate element in list".into()));
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn level(&self) -> usize {
        self.level
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.arena.len() / self.level
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    #[inline]
    pub fn slice(&self, index: u32) -> &[DiagTriple] {
        let k = self.level;
        let i = index as usize * k;
        &self.arena[i..i + k]
    }

    pub fn element(&self, index: u32) -> GroupElement {
        GroupElement::from_slice(self.slice(index))
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[DiagTriple]> + '_ {
        self.arena.chunks_exact(self.level)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.iter().map(GroupElement::from_slice)
    }

    #[inline]
    pub fn index_of_slice(&self, diags: &[DiagTriple]) -> Option<u32> {
        let h = self.hasher.hash_one(diags);
        self.table.find(h, |&i| self.slice(i) == diags).copied()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        if g.level() != self.level {
            return None;
        }
        self.index_of_slice(g.diags())
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index_of(g).is_some()
    }

    fn insert(&mut self, diags: &[DiagTriple]) -> (u32, bool) {
        let h = self.hasher.hash_one(diags);
        if let Some(i) = self.index_of_slice(diags) {
            return (i, false);
        }
        let idx = self.order() as u32;
        let (arena, level, hasher) = (&self.arena, self.level, &self.hasher);
        self.table.insert_unique(h, idx, |&i| {
            let s = i as usize * level;
            hasher.hash_one(&arena[s..s + level])
        });
        self.arena.extend_from_slice(diags);
        (idx, true)
    }

    /// Index of `a · b` when both and their product are members.
    pub fn mul_indices(&self, a: u32, b: u32) -> Option<u32> {
        let mut buf = vec![DiagTriple::ZERO; self.level];
        mul_into(self.slice(a), self.slice(b), &mut buf);
        self.index_of_slice(&buf)
    }

    /// Sorted canonical encodings; independent of discovery order.
    pub fn sorted_elements(&self) -> Vec<&[DiagTriple]> {
        let mut v: Vec<&[DiagTriple]> = self.iter().collect();
        v.sort_unstable();
        v
    }

    /// Hex digest of the level and generator encodings.
    pub fn fingerprint(&self) -> String {
        generator_fingerprint(self.level, &self.generators)
    }
}

pub fn generator_fingerprint(level: usize, generators: &[Generator]) -> String {
    let mut h = Sha256::new();
    h.update((level as u32).to_le_bytes());
    for g in generators {
        h.update(g.label.as_bytes());
        h.update(g.element.to_canonical_bytes());
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Breadth-first closure of `gens` under left multiplication by the
/// generators and their inverses.
///
/// Each BFS layer is expanded in parallel batches and merged sequentially, so
/// the discovery order (and hence every index) is the same for any thread
/// count. Fails with [`Error::BudgetExceeded`] rather than returning a
/// partial group.
pub fn closure(gens: &[Generator], k: usize, budget: usize) -> Result<EnumeratedGroup> {
    if k == 0 {
        return Err(Error::ZeroLevel);
    }
    for g in gens {
        if g.element.level() != k {
            return Err(Error::LevelMismatch {
                left: k,
                right: g.element.level(),
            });
        }
    }
    let mut steps: Vec<Vec<DiagTriple>> = gens.iter().map(|g| g.element.diags().to_vec()).collect();
    for g in gens {
        let mut inv = vec![DiagTriple::ZERO; k];
        inv_into(g.element.diags(), &mut inv);
        steps.push(inv);
    }

    let mut group = EnumeratedGroup::empty(k, gens.to_vec());
    if budget == 0 {
        return Err(Error::BudgetExceeded { budget });
    }
    group.insert(&vec![DiagTriple::ZERO; k]);

    let ns = steps.len();
    let mut layer = 0..1usize;
    let mut products: Vec<DiagTriple> = Vec::new();
    let mut hashes: Vec<u64> = Vec::new();
    while !layer.is_empty() && ns > 0 {
        let next_start = group.order();
        let mut start = layer.start;
        while start < layer.end {
            let end = (start + BATCH).min(layer.end);
            let count = (end - start) * ns;
            products.resize(count * k, DiagTriple::ZERO);
            hashes.resize(count, 0);
            {
                let arena = &group.arena;
                let hasher = &group.hasher;
                products
                    .par_chunks_mut(k)
                    .zip(hashes.par_iter_mut())
                    .enumerate()
                    .for_each(|(n, (slot, hash))| {
                        let e = (start + n / ns) * k;
                        mul_into(&steps[n % ns], &arena[e..e + k], slot);
                        *hash = hasher.hash_one(&*slot);
                    });
            }
            for (slot, &h) in products.chunks_exact(k).zip(&hashes) {
                if group.table.find(h, |&i| group.slice(i) == slot).is_some() {
                    continue;
                }
                if group.order() >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                let idx = group.order() as u32;
                let (arena, hasher) = (&group.arena, &group.hasher);
                group.table.insert_unique(h, idx, |&i| {
                    let s = i as usize * k;
                    hasher.hash_one(&arena[s..s + k])
                });
                group.arena.extend_from_slice(slot);
            }
            start = end;
        }
        layer = next_start..group.order();
    }
    Ok(group)
}

/// `G_k` generated by `x0, x1, x2`.
pub fn enumerate_g(gens: &GeneratorSet, budget: usize) -> Result<EnumeratedGroup> {
    closure(&gens.g_generators(), gens.level(), budget)
}

/// `H_k` generated by `x0, x1`.
pub fn enumerate_h(gens: &GeneratorSet, budget: usize) -> Result<EnumeratedGroup> {
    closure(&gens.h_generators(), gens.level(), budget)
}

/// One row of the order ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderRow {
    pub k: usize,
    pub order: u64,
    /// `|G_{k+1}| / |G_k|`.
    pub ratio: u64,
}

/// `|G_k|` for `k = 1..=k_max` with the growth ratio to the next level.
///
/// Only `G_{k_max+1}` is enumerated; smaller levels are counted as images
/// under truncation, which is a surjective homomorphism.
pub fn group_order_ladder(k_max: usize, budget: usize) -> Result<Vec<LadderRow>> {
    if k_max == 0 {
        return Err(Error::ZeroLevel);
    }
    let top = enumerate_g(&make_generators(k_max + 1)?, budget)?;
    Ok(ladder_from_group(&top))
}

/// Ladder rows `1..level` computed from one enumerated group by truncation.
pub fn ladder_from_group(top: &EnumeratedGroup) -> Vec<LadderRow> {
    let kt = top.level();
    let mut orders: Vec<u64> = (1..kt)
        .into_par_iter()
        .map(|k| {
            let images: HashSet<&[DiagTriple]> = top.iter().map(|e| &e[..k]).collect();
            images.len() as u64
        })
        .collect();
    orders.push(top.order() as u64);
    (1..kt)
        .map(|k| LadderRow {
            k,
            order: orders[k - 1],
            ratio: orders[k] / orders[k - 1],
        })
        .collect()
}

/// `log2 |G_k|` under the observed growth pattern: `|G_3| = 2^8`, then
/// factors 8, 8, 4 repeating. `None` below level 3.
pub fn estimated_log2_order(k: usize) -> Option<u32> {
    if k < 3 {
        return None;
    }
    let steps = (3..k).map(|j| if j % 3 == 2 { 2 } else { 3 }).sum::<u32>();
    Some(8 + steps)
}

/// Least `n ≥ 1` with `gⁿ = 1`.
///
/// Elements are unipotent over F₂, so the order is a power of two and
/// repeated squaring finds it.
pub fn element_order(g: &GroupElement) -> u64 {
    let mut n = 1u64;
    let mut p = g.clone();
    while !p.is_identity() {
        p = p.mul(&p).expect("same level");
        n <<= 1;
    }
    n
}

/// First Cayley edge on which an image assignment is inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomConflict {
    pub element: GroupElement,
    pub generator: String,
}

/// Outcome of [`check_hom_extends`].
#[derive(Clone, Debug)]
pub struct HomVerdict {
    pub extends: bool,
    pub bijective: bool,
    /// `map[i]` is the index of the image of element `i`, when it extends.
    pub map: Option<Vec<u32>>,
    pub conflict: Option<HomConflict>,
}

impl HomVerdict {
    pub fn is_automorphism(&self) -> bool {
        self.extends && self.bijective
    }
}

/// Decides whether `generators()[i] ↦ images[i]` extends to an endomorphism
/// of the enumerated group.
///
/// Images are propagated along a breadth-first Cayley traversal and every
/// edge `g → s·g` is checked for `φ(s·g) = φ(s)·φ(g)`; consistency on all
/// edges is equivalent to the assignment extending.
pub fn check_hom_extends(group: &EnumeratedGroup, images: &[GroupElement]) -> Result<HomVerdict> {
    let gens = group.generators();
    if images.len() != gens.len() {
        return Err(Error::Parse(format!(
            "{} images given for {} generators",
            images.len(),
            gens.len()
        )));
    }
    let k = group.level();
    let image_idx: Vec<u32> = images
        .iter()
        .map(|im| group.index_of(im).ok_or(Error::NotInGroup("enumerated group")))
        .collect::<Result<_>>()?;
    let id = group
        .index_of(&GroupElement::identity(k)?)
        .ok_or(Error::NotInGroup("enumerated group"))?;

    let n = group.order();
    let mut map = vec![u32::MAX; n];
    map[id as usize] = id;
    let mut queue = VecDeque::from([id]);
    let mut buf = vec![DiagTriple::ZERO; k];
    while let Some(g) = queue.pop_front() {
        for (s, gen) in gens.iter().enumerate() {
            mul_into(gen.element.diags(), group.slice(g), &mut buf);
            let h = group
                .index_of_slice(&buf)
                .ok_or(Error::NotInGroup("enumerated group"))?;
            let target = group
                .mul_indices(image_idx[s], map[g as usize])
                .ok_or(Error::NotInGroup("enumerated group"))?;
            match map[h as usize] {
                u32::MAX => {
                    map[h as usize] = target;
                    queue.push_back(h);
                }
                m if m != target => {
                    return Ok(HomVerdict {
                        extends: false,
                        bijective: false,
                        map: None,
                        conflict: Some(HomConflict {
                            element: group.element(g),
                            generator: gen.label.clone(),
                        }),
                    });
                }
                _ => {}
            }
        }
    }
    if map.contains(&u32::MAX) {
        return Err(Error::InvalidTriple(
            "generators do not reach every element".into(),
        ));
    }
    let distinct: HashSet<u32> = map.iter().copied().collect();
    Ok(HomVerdict {
        extends: true,
        bijective: distinct.len() == n,
        map: Some(map),
        conflict: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band::triple;

    #[test]
    fn generators_match_published_band_data() {
        let gs = make_generators(5).unwrap();
        assert_eq!(
            gs.x(0).to_string(),
            "M_0([11,11,11],[17,17,17],[26,26,26],[11,11,0],[17,0,0])"
        );
        assert_eq!(
            gs.x(2).to_string(),
            "M_0([46,68,217],[12,194,363],[26,326,77],[46,68,0],[12,0,0])"
        );
        assert_eq!(gs.x(3).diag(1), triple(28, 235, 129));
        assert_eq!(gs.x(3).diag(2), triple(29, 211, 263));
        let y = gs.spherical(Spherical::Y);
        assert_eq!((y.diag(1), y.diag(2)), (triple(28, 235, 129), triple(58, 3, 445)));
    }

    #[test]
    fn relations_hold_at_every_level() {
        for k in 1..=12 {
            let gs = make_generators(k).unwrap();
            for i in 0..7 {
                let r = gs.x(i).mul(gs.x((i + 1) % 7)).unwrap().mul(gs.x((i + 3) % 7)).unwrap();
                assert!(r.is_identity(), "relation {i} at k={k}");
            }
        }
        assert!(make_generators(0).is_err());
    }

    #[test]
    fn trivial_closure() {
        let id = GroupElement::identity(4).unwrap();
        let g = closure(&[Generator::new("e", id)], 4, 10).unwrap();
        assert_eq!(g.order(), 1);
        let g = closure(&[], 4, 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn small_orders() {
        let gs = make_generators(3).unwrap();
        assert_eq!(enumerate_g(&gs, DEFAULT_BUDGET).unwrap().order(), 256);
        assert_eq!(enumerate_h(&gs, DEFAULT_BUDGET).unwrap().order(), 128);
    }

    #[test]
    fn order_estimate_matches_enumeration() {
        assert_eq!(estimated_log2_order(2), None);
        assert_eq!(estimated_log2_order(8), Some(22));
        let top = enumerate_g(&make_generators(6).unwrap(), DEFAULT_BUDGET).unwrap();
        for row in ladder_from_group(&top).iter().filter(|r| r.k >= 3) {
            assert_eq!(1u64 << estimated_log2_order(row.k).unwrap(), row.order);
        }
    }

    #[test]
    fn budget_is_a_refusal() {
        let gs = make_generators(3).unwrap();
        assert!(matches!(
            enumerate_g(&gs, 255),
            Err(Error::BudgetExceeded { budget: 255 })
        ));
        assert!(enumerate_g(&gs, 256).is_ok());
    }

    #[test]
    fn element_orders() {
        let gs = make_generators(3).unwrap();
        assert_eq!(element_order(&GroupElement::identity(3).unwrap()), 1);
        assert_eq!(element_order(gs.x(0)), 4);
        let gs5 = make_generators(5).unwrap();
        assert_eq!(element_order(gs5.x(3)), 8);
    }

    #[test]
    fn identity_images_give_identity_automorphism() {
        let gs = make_generators(3).unwrap();
        let g = enumerate_g(&gs, DEFAULT_BUDGET).unwrap();
        let images: Vec<_> = gs.g_generators().into_iter().map(|g| g.element).collect();
        let v = check_hom_extends(&g, &images).unwrap();
        assert!(v.is_automorphism());
        let map = v.map.unwrap();
        assert!(map.iter().enumerate().all(|(i, &m)| i as u32 == m));
    }

    #[test]
    fn trivial_images_give_trivial_endomorphism() {
        let gs = make_generators(3).unwrap();
        let h = enumerate_h(&gs, DEFAULT_BUDGET).unwrap();
        let id = GroupElement::identity(3).unwrap();
        let v = check_hom_extends(&h, &[id.clone(), id]).unwrap();
        assert!(v.extends && !v.bijective);
    }

    #[test]
    fn swapping_generators_is_not_a_homomorphism_of_h3() {
        // x0 has order 4 and x1 has order 4 too, but the relator
        // x1 x0^-1 x1^-1 x0^-3 x1^2 x0^-1 x1 x0 x1 is not symmetric.
        let gs = make_generators(3).unwrap();
        let h = enumerate_h(&gs, DEFAULT_BUDGET).unwrap();
        let w: Word = tables::H_RELATORS[1].parse().unwrap();
        let swapped = w.eval(&[gs.x(1).clone(), gs.x(0).clone()]).unwrap();
        let v = check_hom_extends(&h, &[gs.x(1).clone(), gs.x(0).clone()]).unwrap();
        assert_eq!(v.extends, swapped.is_identity());
        if !v.extends {
            assert!(v.conflict.is_some());
        }
    }

    #[test]
    fn images_outside_group_are_rejected() {
        let gs = make_generators(3).unwrap();
        let h = enumerate_h(&gs, DEFAULT_BUDGET).unwrap();
        assert!(matches!(
            check_hom_extends(&h, &[gs.x(2).clone(), gs.x(1).clone()]),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn spherical_names_round_trip() {
        for s in Spherical::ALL {
            assert_eq!(s.name().parse::<Spherical>().unwrap(), s);
        }
        assert!("z".parse::<Spherical>().is_err());
    }
}
