use fusion_center::catalog;
use fusion_center::center::{
    almost_invariance_identity_residual, block_multiplicativity_residual, block_unitarity_residual, decompose_cstar_finite, invariance_diagnostics,
    random_unitary, regular_block, regular_block_with_basis, regular_half_braiding, regular_rep_residual, rep_from_braiding, two_formula_residual,
    unit_column_residual, verify_half_braiding, HalfBraidedObject,
};
use fusion_center::fusion_ring::{FiniteRing, IrrBackend, SuTwoLevel};
use fusion_center::skeleton::SkeletalCategory;
use fusion_center::C64;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn full() -> Vec<SkeletalCategory> {
    catalog::full_data_names().into_iter().map(|n| catalog::category(n).unwrap()).collect()
}

fn left_mult(b: &dyn IrrBackend, s: usize) -> DMatrix<f64> {
    let n = b.size().unwrap();
    DMatrix::from_fn(n, n, |r, t| b.mult(s, t, r) as f64)
}

#[test]
fn regular_half_braiding_is_unitary_and_multiplicative() {
    for cat in full() {
        let all: Vec<usize> = (0..cat.rank()).collect();
        let z = regular_half_braiding(&cat, &all).unwrap();
        assert!(z.truncated.is_empty());
        let rep = verify_half_braiding(&cat, &z);
        assert!(rep.pass(), "{}: {:?}", cat.name, rep.first_failure());
        for s in 0..cat.rank() {
            let (iso, co) = block_unitarity_residual(&cat, &cat.simple(s), &all);
            assert!(iso < 1e-9 && co < 1e-9, "{} {s}: {iso} {co}", cat.name);
            for t in 0..cat.rank() {
                let r = block_multiplicativity_residual(&cat, &cat.simple(s), &cat.simple(t));
                assert!(r < 1e-9, "{} {s} {t}: {r}", cat.name);
            }
        }
        assert!(unit_column_residual(&cat) < 1e-12);
    }
}

#[test]
fn defining_and_projection_formulas_agree() {
    for name in ["Fibonacci", "Ising"] {
        let cat = catalog::category(name).unwrap();
        for s in 0..cat.rank() {
            assert!(two_formula_residual(&cat, &cat.simple(s)) < 1e-9);
        }
        assert!(two_formula_residual(&cat, &cat.simples(&[1, 1])) < 1e-9);
    }
}

#[test]
fn braiding_does_not_depend_on_tree_basis() {
    let cat = catalog::ising();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = cat.simples(&[1, 1]);
    for t in 0..cat.rank() {
        for s in 0..cat.rank() {
            let k = cat.word_dims(&x.concat(&cat.simple(s)))[t];
            if k == 0 {
                continue;
            }
            let u = random_unitary(k, &mut rng);
            let a = regular_block(&cat, &x, t, s);
            let b = regular_block_with_basis(&cat, &x, t, s, Some(&u));
            assert!(a.dist(&b) < 1e-10);
        }
    }
}

#[test]
fn truncated_window_records_dropped_blocks() {
    let cat = catalog::fibonacci();
    let z = regular_half_braiding(&cat, &[0]).unwrap();
    assert!(!z.truncated.is_empty());
}

#[test]
fn regular_representation_is_left_multiplication() {
    for cat in full() {
        let all: Vec<usize> = (0..cat.rank()).collect();
        let z = regular_half_braiding(&cat, &all).unwrap();
        let rep = rep_from_braiding(&cat, &z).unwrap();
        assert!(regular_rep_residual(&cat, &z, &rep).unwrap() < 1e-9);
        let ring = FiniteRing::from_category(&cat);
        let space = z.regular.as_ref().unwrap();
        for s in 0..cat.rank() {
            let want = left_mult(&ring, s);
            for r in 0..cat.rank() {
                for t in 0..cat.rank() {
                    let got = rep.mats[s][(space.xi_index(&cat, r), space.xi_index(&cat, t))];
                    assert!((got - C64::new(want[(r, t)], 0.0)).norm() < 1e-9);
                }
            }
        }
        assert!(rep.star_residual() < 1e-9);
        assert!(rep.norm_excess() <= 1e-9);
        assert!(rep.multiplicativity_residual(&cat) < 1e-9);
        assert!(rep.report(&cat).pass());
    }
}

#[test]
fn trivial_half_braiding_gives_trivial_representation() {
    let cat = catalog::fibonacci();
    let z = HalfBraidedObject::trivial(&cat);
    assert!(verify_half_braiding(&cat, &z).pass());
    let rep = rep_from_braiding(&cat, &z).unwrap();
    assert_eq!(rep.dim, 1);
    for s in 0..cat.rank() {
        assert!((rep.mats[s][(0, 0)].re - cat.d(s)).abs() < 1e-12);
    }
}

#[test]
fn fibonacci_characters_and_kazhdan_projection() {
    let ring = FiniteRing::from_category(&catalog::fibonacci());
    let dec = decompose_cstar_finite(&ring, 1e-9).unwrap();
    assert!(dec.report.pass());
    assert_eq!(dec.blocks.len(), 2);
    let mut vals: Vec<f64> = dec.blocks.iter().map(|b| b.character().unwrap()[1].re).collect();
    vals.sort_by(f64::total_cmp);
    assert!((vals[0] - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-9);
    assert!((vals[1] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
    // Eigenvalues of the fusion matrix [[0,1],[1,1]] as an independent oracle.
    let ev = left_mult(&ring, 1).symmetric_eigen().eigenvalues;
    let mut ev: Vec<f64> = ev.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    assert!((ev[0] - vals[0]).abs() < 1e-12 && (ev[1] - vals[1]).abs() < 1e-12);

    let d = DVector::from_vec(vec![1.0, ring.dim(1)]);
    let p_oracle = &d * d.transpose() / d.norm_squared();
    let p = dec.kazhdan.map(|z| z.re);
    assert!((&p - &p_oracle).amax() < 1e-9);
    for s in 0..2 {
        let l = left_mult(&ring, s);
        assert!((&l * &p - &p * ring.dim(s)).amax() < 1e-9);
    }
}

#[test]
fn ising_and_su2_decompositions() {
    let ising = FiniteRing::from_category(&catalog::ising());
    let dec = decompose_cstar_finite(&ising, 1e-9).unwrap();
    assert!(dec.report.pass());
    assert_eq!(dec.blocks.len(), 3);
    let sigma: Vec<f64> = dec.blocks.iter().map(|b| b.character().unwrap()[1].re).collect();
    assert!((sigma[0] - 2f64.sqrt()).abs() < 1e-9 && dec.blocks[0].trivial);
    let su = SuTwoLevel::new(4);
    let dec = decompose_cstar_finite(&su, 1e-9).unwrap();
    assert!(dec.report.pass());
    assert_eq!(dec.blocks.len(), 5);
}

#[test]
fn regular_representation_has_one_invariant_vector() {
    for cat in full() {
        let all: Vec<usize> = (0..cat.rank()).collect();
        let z = regular_half_braiding(&cat, &all).unwrap();
        let rep = rep_from_braiding(&cat, &z).unwrap();
        let inv = invariance_diagnostics(&rep, &all, 1e-9);
        assert_eq!(inv.invariant_dim(), 1, "{}", cat.name);
        let s = inv.summary();
        assert!(s.max_residual < 1e-9);
        assert_eq!(s.kazhdan_rank, 1);
        // Invariant vector is proportional to (d_s).
        let v = inv.invariant.column(0);
        let space = z.regular.as_ref().unwrap();
        let dsq: f64 = cat.dims.iter().map(|d| d * d).sum();
        for r in 0..cat.rank() {
            let c = v[space.xi_index(&cat, r)].norm();
            assert!((c - cat.d(r) / dsq.sqrt()).abs() < 1e-9);
        }
    }
}

#[test]
fn fibonacci_regular_gap() {
    let cat = catalog::fibonacci();
    let z = regular_half_braiding(&cat, &[0, 1]).unwrap();
    let rep = rep_from_braiding(&cat, &z).unwrap();
    let inv = invariance_diagnostics(&rep, &[1], 1e-9);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    // On the complement π([τ]) acts by 1 − φ, so the gap is φ − |1 − φ| = 1.
    assert!((inv.gap.unwrap() - 1.0).abs() < 1e-9);
    assert!((inv.d_x - phi).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn almost_invariance_identity(which in 0usize..3, re in prop::collection::vec(-1.0f64..1.0, 4), im in prop::collection::vec(-1.0f64..1.0, 4)) {
        let cat = [catalog::fibonacci(), catalog::ising(), catalog::vec_zn(4)][which].clone();
        let all: Vec<usize> = (0..cat.rank()).collect();
        let z = regular_half_braiding(&cat, &all).unwrap();
        let rep = rep_from_braiding(&cat, &z).unwrap();
        let n = rep.dim;
        let mut v = DVector::from_fn(n, |i, _| C64::new(re[i % 4] + 0.1, im[(i + 1) % 4]));
        v /= C64::new(v.norm(), 0.0);
        prop_assert!(almost_invariance_identity_residual(&cat, &z, &rep, &v) < 1e-9);
    }
}
