use fusion_center::catalog;
use fusion_center::center::{build_zphi, decompose_cstar_finite};
use fusion_center::fusion_ring::FiniteRing;
use fusion_center::multipliers::{aphi_block, build_aphi, cp_check, fusion_state_gram, Multiplier};
use fusion_center::skeleton::SkeletalCategory;
use fusion_center::C64;
use nalgebra::DMatrix;
use proptest::prelude::*;
use std::f64::consts::PI;

fn window(cat: &SkeletalCategory) -> Vec<usize> {
    (0..cat.rank()).collect()
}

/// `φ(k) = Σ_j c_j ω^{jk}` on `ℤ/n`; the circulant `φ(t − s)` has eigenvalues `n c_j`.
fn fourier(n: usize, c: &[f64]) -> Multiplier {
    Multiplier::from_fn(0..n, |k| {
        c.iter().enumerate().map(|(j, &cj)| C64::from_polar(cj, 2.0 * PI * (j * k) as f64 / n as f64)).sum()
    })
}

#[test]
fn counterexample_on_vec_z2() {
    let cat = catalog::vec_zn(2);
    let phi = Multiplier::parse_inline("{e:1, g:-2}", |s| cat.rules.index(s)).unwrap();
    let v = cp_check(&cat, &phi, &[window(&cat)]).unwrap();
    assert!(!v.positive);
    let oracle: f64 = DMatrix::<f64>::from_row_slice(2, 2, &[1.0, -2.0, -2.0, 1.0]).symmetric_eigen().eigenvalues.min();
    assert!((v.windows[0].min_eigenvalue - oracle).abs() < 1e-9);
    assert!((oracle + 1.0).abs() < 1e-12);
    let w = v.windows[0].witness.as_ref().unwrap();
    assert_eq!(w.root, "e");
    assert!(build_zphi(&cat, &phi, &window(&cat)).is_err());
}

#[test]
fn group_case_reduces_to_translates() {
    for n in 2..=5 {
        let cat = catalog::vec_zn(n);
        let c: Vec<f64> = (0..n).map(|j| 0.3 + 0.17 * j as f64).collect();
        let phi = fourier(n, &c);
        for s in 0..n {
            for t in 0..n {
                let a = aphi_block(&cat, &phi, s, t).unwrap();
                assert_eq!(a.param_count(), 1);
                let want = phi.get((t + n - s) % n).unwrap();
                assert!((a.scalar(cat.unit()) - want).norm() < 1e-12, "n={n} s={s} t={t}");
            }
        }
    }
}

#[test]
fn trivial_multipliers_are_positive() {
    for name in ["VecZ3", "Fibonacci", "Ising"] {
        let cat = catalog::category(name).unwrap();
        let w = window(&cat);
        for phi in [Multiplier::delta(cat.rank(), cat.unit()), Multiplier::constant_one(cat.rank())] {
            assert!(cp_check(&cat, &phi, &[w.clone()]).unwrap().positive);
            let z = build_zphi(&cat, &phi, &w).unwrap();
            assert!(z.report.pass(), "{name}: {:?}", z.report.first_failure());
        }
        // δ_e gives the regular object, the constant 1 gives the trivial one.
        let z = build_zphi(&cat, &Multiplier::constant_one(cat.rank()), &w).unwrap();
        assert_eq!(z.dim(), 1);
        let z = build_zphi(&cat, &Multiplier::delta(cat.rank(), cat.unit()), &w).unwrap();
        assert_eq!(z.dim(), cat.rank());
    }
}

#[test]
fn characters_give_gns_objects() {
    for name in ["VecZ2", "VecZ4", "Fibonacci", "Ising"] {
        let cat = catalog::category(name).unwrap();
        let ring = FiniteRing::from_category(&cat);
        let dec = decompose_cstar_finite(&ring, 1e-9).unwrap();
        let w = window(&cat);
        for b in &dec.blocks {
            let v = cp_check(&cat, &b.multiplier, &[w.clone()]).unwrap();
            assert!(v.positive, "{name}");
            let z = build_zphi(&cat, &b.multiplier, &w).unwrap();
            assert!(z.report.pass(), "{name}: {:?}", z.report.first_failure());
            for s in 0..cat.rank() {
                let got = z.rep.multiplier_of(&z.xi)[s];
                assert!((got - b.multiplier.get(s).unwrap()).norm() < 1e-9);
            }
            let (_, min) = fusion_state_gram(&ring, &b.multiplier, &w).unwrap();
            assert!(min > -1e-9);
        }
    }
}

#[test]
fn fibonacci_positive_multipliers_form_an_interval() {
    // Extreme points are the two characters divided by dimensions: φ(τ) ∈ [−φ⁻², 1].
    let cat = catalog::fibonacci();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let lo = (1.0 - 5f64.sqrt()) / 2.0 / phi;
    for (x, ok) in [(1.0, true), (0.0, true), (lo + 1e-6, true), (lo - 1e-3, false), (1.0 + 1e-3, false)] {
        let m = Multiplier::from_fn(0..2, |s| C64::new(if s == 0 { 1.0 } else { x }, 0.0));
        assert_eq!(cp_check(&cat, &m, &[vec![0, 1]]).unwrap().positive, ok, "φ(τ) = {x}");
    }
}

#[test]
fn non_hermitian_or_partial_multipliers_are_rejected() {
    let cat = catalog::vec_zn(3);
    let m = Multiplier::from_fn(0..3, |s| C64::new(1.0, s as f64));
    assert!(cp_check(&cat, &m, &[vec![0, 1, 2]]).is_err());
    let partial = Multiplier::from_fn(0..1, |_| C64::new(1.0, 0.0));
    assert!(build_aphi(&cat, &partial, &[0, 1]).is_err());
    assert!(cp_check(&cat, &Multiplier::delta(3, 0), &[]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn circulant_spectrum(n in 2usize..6, c in prop::collection::vec(-1.0f64..1.0, 6)) {
        let cat = catalog::vec_zn(n);
        let c = &c[..n];
        let v = cp_check(&cat, &fourier(n, c), &[window(&cat)]).unwrap();
        let want = n as f64 * c.iter().copied().fold(f64::INFINITY, f64::min);
        prop_assert!((v.windows[0].min_eigenvalue - want).abs() < 1e-9);
        prop_assert_eq!(v.positive, want >= -1e-9);
    }

    #[test]
    fn positive_multipliers_are_convex(t in 0.0f64..1.0, which in 0usize..2) {
        let cat = [catalog::fibonacci(), catalog::ising()][which].clone();
        let ring = FiniteRing::from_category(&cat);
        let dec = decompose_cstar_finite(&ring, 1e-9).unwrap();
        let a = &dec.blocks[0].multiplier;
        let b = &dec.blocks[dec.blocks.len() - 1].multiplier;
        prop_assert!(cp_check(&cat, &a.mix(b, t), &[window(&cat)]).unwrap().positive);
    }
}
