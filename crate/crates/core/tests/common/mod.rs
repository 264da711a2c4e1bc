//! Oracles shared by the integration suites.
#![allow(dead_code)]

use beauville_core::band::triple;
use beauville_core::{DiagTriple, GroupElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Entry `(i, j)` (0-based) of a packed 3×3 block, decoded from the bit
/// weights `2^(8 − 3i − j)`.
fn bit(code: u16, i: usize, j: usize) -> bool {
    (code >> (8 - 3 * i - j)) & 1 == 1
}

/// Dense `3n × 3n` F₂ matrix of the element's first `n` block rows.
fn dense(g: &GroupElement, n: usize) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; 3 * n]; 3 * n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for r in 0..n {
        for d in 1..=g.level() {
            if r + d >= n {
                break;
            }
            // Block row r + 1 (1-based) of diagonal d.
            let code = g.diag(d).to_array()[r % 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[3 * r + i][3 * (r + d) + j] = bit(code, i, j);
                }
            }
        }
    }
    m
}

/// Product by explicit block-matrix multiplication, read back from the
/// first three block rows.
pub fn dense_mul(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let k = a.level();
    let n = k + 4;
    let (ma, mb) = (dense(a, n), dense(b, n));
    let size = 3 * n;
    let mut c = vec![vec![false; size]; size];
    for i in 0..size {
        for l in 0..size {
            if ma[i][l] {
                for j in 0..size {
                    c[i][j] ^= mb[l][j];
                }
            }
        }
    }
    let mut diags = Vec::with_capacity(k);
    for d in 1..=k {
        let mut codes = [0u16; 3];
        for (r, code) in codes.iter_mut().enumerate() {
            for i in 0..3 {
                for j in 0..3 {
                    if c[3 * r + i][3 * (r + d) + j] {
                        *code |= 1 << (8 - 3 * i - j);
                    }
                }
            }
        }
        diags.push(DiagTriple::new(codes).unwrap());
    }
    GroupElement::from_diags(diags).unwrap()
}

pub fn random_triple(rng: &mut ChaCha8Rng) -> DiagTriple {
    triple(rng.gen_range(0..512), rng.gen_range(0..512), rng.gen_range(0..512))
}

/// A random level-`k` element whose first `vanish` diagonals are zero and
/// whose next one is non-zero.
pub fn random_element(rng: &mut ChaCha8Rng, k: usize, vanish: usize) -> GroupElement {
    let mut diags = vec![DiagTriple::ZERO; k];
    for d in diags.iter_mut().skip(vanish) {
        *d = random_triple(rng);
    }
    if vanish < k {
        while diags[vanish].is_zero() {
            diags[vanish] = random_triple(rng);
        }
    }
    GroupElement::from_diags(diags).unwrap()
}

/// Checks the three closed forms against full multiplication on `cases`
/// random inputs at level `k`. Returns the first discrepancy.
pub fn closed_form_suite(rng: &mut ChaCha8Rng, k: usize, cases: usize) -> Result<(), String> {
    for case in 0..cases {
        // Product: a = M_l(a_1, ...), b = M_{l+j}(b_1, ...). The first j
        // non-trivial diagonals of a survive, then a_{j+1} + b_1.
        let l = rng.gen_range(0..k);
        let j = rng.gen_range(0..k - l);
        let a = random_element(rng, k, l);
        let b = random_element(rng, k, l + j);
        for p in [a.mul(&b).unwrap(), b.mul(&a).unwrap()] {
            for d in 1..=k {
                let expect = if d <= l + j { a.diag(d) } else if d == l + j + 1 { a.diag(d) + b.diag(d) } else { continue };
                if p.diag(d) != expect {
                    return Err(format!("product form, case {case}: k={k} l={l} j={j} diag {d}"));
                }
            }
        }

        // Square of a random element with 2l + 1 < k.
        let l = rng.gen_range(0..=(k.saturating_sub(2)) / 2);
        let a = random_element(rng, k, l);
        let sf = a.square_closed_form().unwrap();
        let sq = a.mul(&a).unwrap();
        if sq.vanish_count() < sf.vanish.min(k) {
            return Err(format!("square form, case {case}: k={k} vanish {}", sq.vanish_count()));
        }
        if sf.vanish < k && sq.diag(sf.vanish + 1) != sf.c1 {
            return Err(format!("square form, case {case}: k={k} c1"));
        }
        if sf.vanish + 1 < k && sq.diag(sf.vanish + 2) != sf.c2 {
            return Err(format!("square form, case {case}: k={k} c2"));
        }

        // Conjugation: b⁻¹ a b with b = M_0(b_1, ...).
        let l = rng.gen_range(0..k - 1);
        let a = random_element(rng, k, l);
        let b = random_element(rng, k, 0);
        let conj = b.inv().mul(&a).unwrap().mul(&b).unwrap();
        let (a1, c2) = a.conj_closed_form(b.diag(1)).unwrap();
        if conj.diag(l + 1) != a1 || conj.diag(l + 2) != c2 || conj.vanish_count() != l {
            return Err(format!("conjugation form, case {case}: k={k} l={l}"));
        }
        // Conjugating by b⁻¹ gives the same leading pair.
        let conj_inv = b.mul(&a).unwrap().mul(&b.inv()).unwrap();
        if conj_inv.diag(l + 2) != c2 {
            return Err(format!("conjugation by inverse, case {case}: k={k} l={l}"));
        }

        // Generic product against the dense block-matrix product.
        let x = random_element(rng, k, 0);
        let vy = rng.gen_range(0..k);
        let y = random_element(rng, k, vy);
        if x.mul(&y).unwrap() != dense_mul(&x, &y) {
            return Err(format!("product case {case}: k={k} disagrees with dense oracle"));
        }
    }
    Ok(())
}
