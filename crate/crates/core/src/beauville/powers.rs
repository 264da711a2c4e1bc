//! Classification of the powers of the spherical generators by `t(n)`.

use serde::Serialize;

use crate::band::{DiagTriple, GroupElement, LeadingPair};
use crate::error::{Error, Result};
use crate::groups::{element_order, GeneratorSet, Spherical};

/// `t(n)`: `n mod 4` for odd `n`, otherwise the largest power of two
/// dividing `n`.
pub fn t_of(n: u64) -> u64 {
    assert!(n >= 1, "t(n) needs n >= 1");
    if n & 1 == 1 {
        n & 3
    } else {
        1 << n.trailing_zeros()
    }
}

/// Index into [`crate::tables::PowerForms`] for exponent class `t`, and the
/// vanish count the form predicts.
pub fn form_of(t: u64) -> (usize, usize) {
    match t {
        1 => (0, 0),
        3 => (1, 0),
        _ => {
            debug_assert!(t.is_power_of_two());
            let r = t.trailing_zeros();
            let form = if r % 2 == 1 { 2 } else { 3 };
            (form, t as usize - 1)
        }
    }
}

/// Whether `x^n` is trivial in `G_k`: `t(n)` a power of two exceeding `k`.
pub fn power_is_trivial(n: u64, k: usize) -> bool {
    let t = t_of(n);
    t.is_power_of_two() && t > 1 && t as usize > k
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerRow {
    pub n: u64,
    pub t: u64,
    /// Predicted form index, `None` when the power is predicted trivial.
    pub form: Option<usize>,
    pub observed: Option<LeadingPair>,
    /// Printed forms consistent with the observation.
    pub candidates: Vec<usize>,
    pub matches: bool,
}

/// Vanish count of `g^(2^r)` under the two printed readings.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TwoPowerVanish {
    pub r: u32,
    pub observed: usize,
    /// `2^r - 1`, the form listed for every `r`.
    pub minus_one: usize,
    /// `2^(r-2) + 1`, the alternative printed for even `r`.
    pub alternative: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerFormReport {
    pub generator: Spherical,
    pub k: usize,
    pub order: u64,
    pub rows: Vec<PowerRow>,
    #[serde(rename = "twoPowers")]
    pub two_powers: Vec<TwoPowerVanish>,
}

impl PowerFormReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

fn triple(c: [u16; 3]) -> DiagTriple {
    DiagTriple::new(c).expect("table codes")
}

/// Forms whose vanish class, leading triple and (when it survives
/// truncation) second triple agree with `lp` at level `k`.
fn candidates(gen: Spherical, lp: &LeadingPair, k: usize) -> Vec<usize> {
    let l = lp.vanish;
    let forms = gen.printed_forms();
    (0..4)
        .filter(|&f| {
            let class_ok = match f {
                0 | 1 => l == 0,
                _ => {
                    let t = l + 1;
                    t.is_power_of_two() && t > 1 && (t.trailing_zeros() % 2 == 1) == (f == 2)
                }
            };
            class_ok && triple(forms[f][0]) == lp.a1 && (l + 2 > k || triple(forms[f][1]) == lp.a2)
        })
        .collect()
}

/// Computes `gen^n` for `n = 1..=ord(gen)` at level `k` and checks each
/// against the printed form selected by `t(n)`.
pub fn verify_power_forms(gen: Spherical, k: usize) -> Result<PowerFormReport> {
    let gs = GeneratorSet::new(k)?;
    let g = gs.spherical(gen);
    let order = element_order(&g);
    let mut rows = Vec::with_capacity(order as usize);
    let mut p = GroupElement::identity(k)?;
    for n in 1..=order {
        p = p.mul(&g)?;
        let t = t_of(n);
        let trivial = power_is_trivial(n, k);
        let observed = p.first_two_diagonals().ok();
        let (form, matches, cands) = match (&observed, trivial) {
            (None, true) => (None, true, Vec::new()),
            (None, false) | (Some(_), true) => (None, false, Vec::new()),
            (Some(lp), false) => {
                let (f, l) = form_of(t);
                let cands = candidates(gen, lp, k);
                (Some(f), lp.vanish == l && cands == [f], cands)
            }
        };
        rows.push(PowerRow {
            n,
            t,
            form,
            observed,
            candidates: cands,
            matches,
        });
    }
    let two_powers = rows
        .iter()
        .filter(|r| r.n.is_power_of_two() && r.n > 1)
        .filter_map(|r| {
            let lp = r.observed?;
            let r_exp = r.n.trailing_zeros();
            Some(TwoPowerVanish {
                r: r_exp,
                observed: lp.vanish,
                minus_one: r.n as usize - 1,
                alternative: (r_exp % 2 == 0).then(|| (1usize << (r_exp - 2)) + 1),
            })
        })
        .collect();
    let report = PowerFormReport {
        generator: gen,
        k,
        order,
        rows,
        two_powers,
    };
    if let Some(bad) = report.rows.iter().find(|r| !r.matches) {
        return Err(Error::Classification {
            generator: gen.to_string(),
            n: bad.n,
            t: bad.t,
        });
    }
    Ok(report)
}
