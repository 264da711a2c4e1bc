use std::collections::BTreeSet;

use super::*;
use crate::band::triple;
use crate::groups::element_order;
use crate::tables;

fn u(k: usize) -> BeauvilleTriple {
    BeauvilleTriple::standard(k, DEFAULT_BUDGET).unwrap()
}

/// `{ h xʲ h⁻¹ : h ∈ H, 0 ≤ j < ord(x) }` by the double loop.
fn brute_sigma(x: &GroupElement, h: &EnumeratedGroup) -> BTreeSet<GroupElement> {
    let ord = element_order(x);
    let mut out = BTreeSet::new();
    for g in h.elements() {
        let mut p = GroupElement::identity(h.level()).unwrap();
        for _ in 0..ord {
            out.insert(p.conjugate_by(&g).unwrap());
            p = p.mul(x).unwrap();
        }
    }
    out
}

#[test]
fn sigma_of_identity_is_trivial() {
    let u3 = u(3);
    let s = sigma(&GroupElement::identity(3).unwrap(), u3.h()).unwrap();
    assert!(s.is_trivial());
}

#[test]
fn sigma_matches_double_loop_at_level_three() {
    let u3 = u(3);
    let gs = GeneratorSet::new(3).unwrap();
    for which in [Spherical::X0, Spherical::X1, Spherical::X] {
        let x = gs.spherical(which);
        let fast: BTreeSet<_> = sigma(&x, u3.h()).unwrap().elements().collect();
        assert_eq!(fast, brute_sigma(&x, u3.h()), "{which}");
    }
}

#[test]
fn sigma_t_size_at_level_three() {
    let u3 = u(3);
    let gs = GeneratorSet::new(3).unwrap();
    let mut oracle = BTreeSet::new();
    for which in [Spherical::X0, Spherical::X1, Spherical::X] {
        oracle.extend(brute_sigma(&gs.spherical(which), u3.h()));
    }
    let st = u3.sigma_t().unwrap();
    assert_eq!(st.union.len(), oracle.len());
    assert_eq!(st.union.len(), SIGMA_T3_SIZE);
    for x in [gs.x(0), gs.x(1), gs.x(3)] {
        assert!(st.union.contains(x));
    }
}

/// `|Σ(T_3)|` from the double-loop oracle.
const SIGMA_T3_SIZE: usize = 55;

#[test]
fn sigma_sets_are_conjugation_invariant() {
    for k in [3, 4, 5] {
        let uk = u(k);
        let st = uk.sigma_t().unwrap();
        for part in st.parts.iter().chain([&st.union]) {
            for gen in uk.h().generators() {
                for s in [gen.element.clone(), gen.element.inv()] {
                    let c = part.conjugated_by(&s).unwrap();
                    assert_eq!(c.indices().collect::<Vec<_>>(), part.indices().collect::<Vec<_>>());
                }
            }
        }
    }
}

#[test]
fn cross_intersections_are_trivial() {
    for k in [3, 5, 6] {
        let uk = u(k);
        let gs = GeneratorSet::new(k).unwrap();
        let s = |w: Spherical| sigma(&gs.spherical(w), uk.h()).unwrap();
        use Spherical::*;
        for (a, b) in [(X0, Y1), (X0, Y), (X1, Y0), (X1, Y), (X, Y0), (X, Y1), (X, Y), (X0, Y0), (X1, Y1)] {
            assert!(s(a).intersection(&s(b)).is_trivial(), "k={k} {a}/{b}");
        }
    }
}

#[test]
fn condition_a() {
    assert!(check_a(&u(3)).unwrap());
    assert!(check_a(&u(4)).unwrap());
    let u3 = u(3);
    let x0 = u3.t().0.clone();
    let bad = u3.with_t((x0.clone(), x0)).unwrap();
    assert!(!check_a(&bad).unwrap());
}

#[test]
fn condition_b_at_three_and_four() {
    let u3 = u(3);
    let v = check_b(&u3, u3.coset_rep()).unwrap();
    assert!(v.verdict);
    assert_eq!(v.intersection_size, 1);
    assert!(v.witness.is_none());

    let u4 = u(4);
    let v = check_b(&u4, u4.coset_rep()).unwrap();
    assert!(!v.verdict);
    let gs = GeneratorSet::new(4).unwrap();
    let x4 = gs.spherical(Spherical::X).pow(4);
    assert!(!x4.is_identity());
    assert_eq!(x4, gs.spherical(Spherical::Y).pow(4));
    let hits = b_intersection(&u4, u4.coset_rep()).unwrap();
    assert!(hits.contains(&u4.h().index_of(&x4).unwrap()));
    assert!(v.witness.unwrap() <= x4);
}

#[test]
fn condition_b_rejects_bad_conjugators() {
    let u3 = u(3);
    assert!(matches!(check_b(&u3, u3.t().0), Err(Error::ConjugatorInSubgroup)));
    let foreign = GroupElement::from_codes(3, &[[1, 0, 0]]).unwrap();
    assert!(matches!(check_b(&u3, &foreign), Err(Error::NotInGroup(_))));
}

#[test]
fn b_and_bprime_agree_on_the_whole_coset() {
    for k in [3, 4] {
        let uk = u(k);
        let bp = check_bprime(&uk, DEFAULT_BPRIME_WORK).unwrap();
        assert_eq!(bp.coset_size, uk.h().order());
        for g in uk.g().elements().filter(|g| !uk.h().contains(g)) {
            assert_eq!(check_b(&uk, &g).unwrap().verdict, bp.verdict, "k={k} g={g}");
        }
        assert_eq!(bp.verdict, k == 3);
        assert!(bp.failing == 0 || bp.failing == bp.coset_size);
    }
}

#[test]
fn bprime_respects_work_budget() {
    assert!(matches!(check_bprime(&u(3), 10), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn condition_c_and_squares_table() {
    for k in [2, 3, 4, 5] {
        let c = check_c(&u(k)).unwrap();
        assert!(c.verdict, "k={k}");
        assert_eq!(c.violations, 0);
        if k >= 3 {
            assert!(c.leading_argument, "k={k}");
        }
    }
    assert!(matches!(check_c(&u(1)), Err(Error::LevelTooSmall(1, 2))));

    let gs = GeneratorSet::new(3).unwrap();
    let rows = squares_table(gs.x(2).diag(1));
    for (row, printed) in rows.iter().zip(tables::SQUARES_TABLE) {
        assert_eq!(row.h_first.to_array(), printed[0]);
        assert_eq!(row.times_r_first.to_array(), printed[1]);
        assert_eq!(row.square_leading.to_array(), printed[2]);
    }
    assert_eq!(rows[1].square_leading, triple(14, 147, 100));
}

#[test]
fn observed_class_table_matches_closed_form() {
    let u4 = u(4);
    let c = check_c(&u4).unwrap();
    let rows = squares_table(u4.coset_rep().diag(1));
    let expected: BTreeSet<_> = rows.iter().map(|r| (r.h_first, r.square_leading)).collect();
    let observed: BTreeSet<_> = c.class_table.iter().copied().collect();
    assert_eq!(observed, expected);
}

#[test]
fn transforms() {
    let u3 = u(3);
    let iu = transform(&u3, &Transform::Iota).unwrap();
    assert_eq!(iu.t().0, &u3.t().0.inv());
    assert_eq!(iu.t().1, &u3.t().1.inv());
    let s3 = transform(&transform(&u3, &Transform::Sigma3).unwrap(), &Transform::Sigma3).unwrap();
    assert!(s3.same_as(&u3));
    let s4 = transform(&u3, &Transform::Sigma4).unwrap();
    assert_eq!(s4.t().1, &u3.t().1.mul(u3.t().0).unwrap().inv());

    for op in [Transform::Iota, Transform::Sigma3, Transform::Sigma4] {
        let v = transform(&u3, &op).unwrap();
        assert!(check_a(&v).unwrap());
        assert!(check_b(&v, v.coset_rep()).unwrap().verdict);
        assert!(check_c(&v).unwrap().verdict);
    }
}

#[test]
fn psi_realizes_reality_at_level_three() {
    let u3 = u(3);
    let gs = GeneratorSet::new(3).unwrap();
    let psi = Automorphism::from_words(u3.g().clone(), &gs, &tables::PSI_IMAGES).unwrap();
    let rho = transform(&u3, &Transform::SigmaPsi(psi.clone())).unwrap();
    let iu = transform(&u3, &Transform::Iota).unwrap();
    assert_eq!(rho.t(), iu.t());
    assert!(real_via(&u3, &psi).unwrap());
}

#[test]
fn non_automorphisms_are_rejected() {
    let u3 = u(3);
    let gs = GeneratorSet::new(3).unwrap();
    assert!(matches!(
        Automorphism::from_words(u3.g().clone(), &gs, &["x1", "x0", "x2"]),
        Err(Error::NotAutomorphism)
    ));
}

#[test]
fn verify_reports() {
    let r3 = verify(3, &VerifyOptions::default()).unwrap();
    assert!(r3.is_beauville() && r3.matches_expected_pattern);
    let inv = r3.invariants.as_ref().unwrap();
    assert_eq!((inv.genus, inv.euler, inv.chi, inv.k_squared, inv.nu), (17, 8, 2, 16, 64));

    let r4 = verify(4, &VerifyOptions { bprime: true, ..Default::default() }).unwrap();
    assert!(!r4.is_beauville());
    assert!(r4.condition_a && r4.condition_c && !r4.condition_b.verdict);
    assert!(r4.matches_expected_pattern);
    assert!(!r4.condition_bprime.as_ref().unwrap().verdict);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let u5 = u(5);
            let b = check_b(&u5, u5.coset_rep()).unwrap();
            let c = check_c(&u5).unwrap();
            (
                u5.g().fingerprint(),
                u5.g().iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
                u5.sigma_t().unwrap().union.indices().collect::<Vec<_>>(),
                b.witness,
                b.intersection_size,
                c.class_table,
            )
        })
    };
    assert_eq!(run(1), run(3));
}
