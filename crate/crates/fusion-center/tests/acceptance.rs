//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use fusion_center::catalog;
use fusion_center::center::{
    block_multiplicativity_residual, block_unitarity_residual, build_zphi, decompose_cstar_finite, regular_half_braiding, regular_rep_residual,
    rep_from_braiding, two_formula_residual, unit_column_residual, vector_morphism, FusionRepresentation, invariance_diagnostics,
};
use fusion_center::fusion_ring::{fusion_matrix_norm, fusion_matrix_norm_balls, parse_object, FiniteRing, FreeGroup, IrrBackend, TemperleyLieb};
use fusion_center::multipliers::{aphi_block, cp_check, Multiplier};
use fusion_center::qsystems::{
    bimodule_morphisms_ts, module_report, qduality_data, qmod_dimension, qsystem_catalog, schauenburg_induce, simple_modules, solve_modules,
    test_bimodules, transfer_almost_invariant, verify_dual_qsystem, verify_qsystem, Side,
};
use fusion_center::skeleton::{validate_category, SkeletalCategory};
use fusion_center::C64;
use nalgebra::{DMatrix, DVector};
use std::collections::HashMap;
use std::f64::consts::PI;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn all_labels(cat: &SkeletalCategory) -> Vec<usize> {
    (0..cat.rank()).collect()
}

fn max_residual(rep: &fusion_center::report::Report, ids: &[&str]) -> f64 {
    ids.iter().map(|id| rep.get(id).map_or(f64::INFINITY, |c| c.residual)).fold(0.0, f64::max)
}

const SOUNDNESS: [&str; 4] = ["fsymbols.pentagon", "fsymbols.unitarity", "duality.conjugate-equations", "duality.spherical"];

fn soundness(cat: &SkeletalCategory) -> f64 {
    max_residual(&validate_category(cat), &SOUNDNESS)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut worst = 0.0_f64;
    for name in ["VecZ2", "VecZ3", "Fibonacci", "Ising"] {
        worst = worst.max(soundness(&catalog::category(name).unwrap()));
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(worst < 1e-9 && secs < 10.0, format!("max residual {worst:.2e}, {secs:.2}s"))
}

fn full_entries() -> Vec<SkeletalCategory> {
    let mut v: Vec<SkeletalCategory> = (1..=12).map(catalog::vec_zn).collect();
    v.push(catalog::fibonacci());
    v.push(catalog::ising());
    v
}

fn regular_residuals(cat: &SkeletalCategory) -> (f64, f64, f64) {
    let all = all_labels(cat);
    let (mut unit, mut mult) = (0.0_f64, 0.0_f64);
    for s in 0..cat.rank() {
        let (iso, co) = block_unitarity_residual(cat, &cat.simple(s), &all);
        unit = unit.max(iso).max(co);
        for t in 0..cat.rank() {
            mult = mult.max(block_multiplicativity_residual(cat, &cat.simple(s), &cat.simple(t)));
        }
    }
    (unit, mult, unit_column_residual(cat))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let (mut u, mut m, mut e) = (0.0_f64, 0.0_f64, 0.0_f64);
    for cat in full_entries() {
        let (a, b, c) = regular_residuals(&cat);
        u = u.max(a);
        m = m.max(b);
        e = e.max(c);
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(u < 1e-9 && m < 1e-9 && e < 1e-12 && secs < 30.0, format!("unitarity {u:.2e}, multiplicativity {m:.2e}, unit column {e:.2e}, {secs:.2}s"))
}

fn two_formulas(cat: &SkeletalCategory) -> f64 {
    (0..cat.rank()).map(|s| two_formula_residual(cat, &cat.simple(s))).fold(0.0, f64::max)
}

fn criterion_3() -> Outcome {
    let worst = [catalog::fibonacci(), catalog::ising()].iter().map(two_formulas).fold(0.0, f64::max);
    outcome(worst < 1e-9, format!("max blockwise difference {worst:.2e}"))
}

fn rep_bounds(rep: &FusionRepresentation) -> (f64, f64) {
    (rep.star_residual(), rep.norm_excess())
}

fn criterion_4() -> Outcome {
    let (mut reg, mut star, mut excess, mut count) = (0.0_f64, 0.0_f64, f64::NEG_INFINITY, 0);
    for cat in full_entries() {
        let z = regular_half_braiding(&cat, &all_labels(&cat)).unwrap();
        let rep = rep_from_braiding(&cat, &z).unwrap();
        reg = reg.max(regular_rep_residual(&cat, &z, &rep).unwrap());
        let mut reps = vec![rep];
        let dec = decompose_cstar_finite(&FiniteRing::from_category(&cat), 1e-9).unwrap();
        for b in &dec.blocks {
            reps.push(b.rep.clone());
            if let Ok(zp) = build_zphi(&cat, &b.multiplier, &all_labels(&cat)) {
                reps.push(zp.rep);
            }
        }
        for r in &reps {
            let (s, e) = rep_bounds(r);
            star = star.max(s);
            excess = excess.max(e);
            count += 1;
        }
    }
    outcome(reg < 1e-9 && star < 1e-9 && excess <= 1e-9, format!("π_reg vs N {reg:.2e}; {count} representations: star {star:.2e}, max(‖π(U_s)‖ − d_s) {excess:.2e}"))
}

fn criterion_5() -> Outcome {
    let mut worst_rt = 0.0_f64;
    let mut fails = vec![];
    let mut count = 0;
    let mut names: Vec<String> = vec!["Fibonacci".into(), "Ising".into()];
    names.extend((2..=6).map(|n| format!("VecZ{n}")));
    for name in names {
        let cat = catalog::category(&name).unwrap();
        let w = all_labels(&cat);
        let mut phis = vec![Multiplier::delta(cat.rank(), cat.unit()), Multiplier::constant_one(cat.rank())];
        let dec = decompose_cstar_finite(&FiniteRing::from_category(&cat), 1e-9).unwrap();
        phis.extend(dec.blocks.iter().map(|b| b.multiplier.clone()));
        for phi in &phis {
            count += 1;
            let ok = cp_check(&cat, phi, &[w.clone()]).map(|v| v.positive).unwrap_or(false);
            match build_zphi(&cat, phi, &w) {
                Ok(z) if ok && z.report.pass() => {
                    let got = z.rep.multiplier_of(&z.xi);
                    let rt = w.iter().map(|&s| (got[s] - phi.get(s).unwrap()).norm()).fold(0.0, f64::max);
                    worst_rt = worst_rt.max(rt);
                }
                _ => fails.push(name.clone()),
            }
        }
    }
    let z2 = catalog::vec_zn(2);
    let bad = Multiplier::parse_inline("{e:1, g:-2}", |s| z2.rules.index(s)).unwrap();
    let v = cp_check(&z2, &bad, &[vec![0, 1]]).unwrap();
    let min = v.windows[0].min_eigenvalue;
    let rejected = !v.positive && (min + 1.0).abs() < 1e-9;
    outcome(
        fails.is_empty() && worst_rt < 1e-9 && rejected,
        format!("{count} multipliers, round trip {worst_rt:.2e}, failures {fails:?}; Vec(Z/2) φ(g)=−2 min eigenvalue {min:.12}"),
    )
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0_f64;
    let mut shapes = true;
    for n in 2..=8 {
        let cat = catalog::vec_zn(n);
        let phi = Multiplier::from_fn(0..n, |k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            C64::new(0.5 + 0.3 * a.cos(), 0.2 * a.sin())
        });
        for s in 0..n {
            for t in 0..n {
                let a = aphi_block(&cat, &phi, s, t).unwrap();
                shapes &= a.param_count() == 1;
                worst = worst.max((a.scalar(cat.unit()) - phi.get((t + n - s) % n).unwrap()).norm());
            }
        }
    }
    outcome(shapes && worst < 1e-12, format!("max |A^φ_st − φ(s⁻¹t)| {worst:.2e} over VecZ2..VecZ8, all blocks 1×1: {shapes}"))
}

/// Adjacency of left multiplication by `a, A, b, B` on the ball of reduced words.
fn free_group_ball(radius: usize) -> Vec<Vec<usize>> {
    let inv = |l: u8| l ^ 1;
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..radius {
        let mut next = vec![];
        for w in &frontier {
            for l in 0..4u8 {
                if w.first() != Some(&inv(l)) {
                    next.push([vec![l], w.clone()].concat());
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    words
        .iter()
        .map(|w| {
            (0..4u8)
                .filter_map(|l| {
                    let p = if w.first() == Some(&inv(l)) { w[1..].to_vec() } else { [vec![l], w.clone()].concat() };
                    index.get(&p).copied()
                })
                .collect()
        })
        .collect()
}

fn power_iteration(adj: &[Vec<usize>], iters: usize) -> f64 {
    let n = adj.len();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut lambda = 0.0;
    for _ in 0..iters {
        let mut w = v.clone();
        for (i, nb) in adj.iter().enumerate() {
            for &j in nb {
                w[i] += v[j];
            }
        }
        lambda = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().zip(&w).for_each(|(a, b)| *a = b / lambda);
    }
    lambda - 1.0
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let tl = TemperleyLieb::new(3.0).unwrap();
    let x = parse_object(&tl, "1").unwrap();
    let rep = fusion_matrix_norm(&tl, &x, &[250, 500, 1000, 2000], 1e-3).unwrap();
    let last = rep.bounds.last().unwrap().compressed;
    let oracle = 2.0 * (PI / 2001.0).cos();
    let tl_ok = (last - 2.0).abs() < 1e-3 && (last - oracle).abs() < 1e-9 && rep.monotone;

    let fg = FreeGroup::new(2);
    let gx = fg.generator_sum().into_iter().collect();
    // The radial reduction is compared with power iteration on the explicit ball.
    let r_small = 8;
    let explicit = power_iteration(&free_group_ball(r_small), 3000);
    let radial_small = fusion_matrix_norm_balls(&fg, &gx, &[r_small], 1e-9).unwrap().best;
    let agree = (explicit - radial_small).abs() < 1e-6;
    let big = fusion_matrix_norm_balls(&fg, &gx, &[12, 2000], 1e-9).unwrap();
    let r12 = big.bounds[0].compressed;
    let far = big.bounds[1].compressed;
    let target = 2.0 * 3f64.sqrt();
    let fg_ok = agree && (far - target).abs() < 1e-2 && far <= target + 1e-12;
    let secs = t.elapsed().as_secs_f64();
    outcome(
        tl_ok && fg_ok && secs < 60.0,
        format!(
            "TL(3) n=2000: {last:.6} (oracle {oracle:.6}); F2 radius {r_small}: radial {radial_small:.8} vs power iteration {explicit:.8}; radius 12: {r12:.4}; radius 2000: {far:.6} vs 2√3 = {target:.6}; {secs:.2}s"
        ),
    )
}

fn criterion_8() -> Outcome {
    let ring = FiniteRing::from_category(&catalog::fibonacci());
    let dec = decompose_cstar_finite(&ring, 1e-9).unwrap();
    let mut vals: Vec<f64> = dec.blocks.iter().filter_map(|b| b.character()).map(|c| c[1].re).collect();
    vals.sort_by(f64::total_cmp);
    let want = [(1.0 - 5f64.sqrt()) / 2.0, (1.0 + 5f64.sqrt()) / 2.0];
    let chars_ok = dec.blocks.len() == 2 && vals.len() == 2 && (vals[0] - want[0]).abs() < 1e-9 && (vals[1] - want[1]).abs() < 1e-9;
    let p = dec.kazhdan.map(|z| z.re);
    let mut kres = 0.0_f64;
    for s in 0..2 {
        let l = DMatrix::from_fn(2, 2, |r, t| ring.mult(s, t, r) as f64);
        kres = kres.max((&l * &p - &p * ring.dim(s)).amax());
    }
    let rank = p.trace();
    outcome(chars_ok && kres < 1e-9 && (rank - 1.0).abs() < 1e-9, format!("characters {vals:?}; ‖[X]p − d(X)p‖ {kres:.2e}, rank p {rank:.6}"))
}

fn criterion_9() -> Outcome {
    let mut worst = 0.0_f64;
    let mut flags = true;
    let mut modules = 0;
    for (cat, q) in qsystem_catalog() {
        let v = verify_qsystem(&cat, &q);
        flags &= v.report.pass() && v.standard && v.simple;
        worst = worst.max(v.report.max_residual(""));
        flags &= verify_dual_qsystem(&cat, &q).report.pass();
        let mut solved = vec![];
        for side in [Side::Left, Side::Right, Side::Bi] {
            let simples = simple_modules(&cat, &q, side).unwrap();
            solved.extend(simples.iter().cloned());
            if side != Side::Bi && simples.len() >= 2 {
                let total = simples[0].object.0[0].add(&simples[1].object.0[0]);
                solved.extend(solve_modules(&cat, &q, &total, side).unwrap());
            }
        }
        for m in &solved {
            modules += 1;
            let r = module_report(&cat, &q, m);
            flags &= r.pass();
            worst = worst.max(r.max_residual(""));
            if m.side() == Side::Bi {
                let dd = qduality_data(&cat, &q, m).unwrap();
                flags &= dd.report.pass();
                worst = worst.max(dd.report.max_residual(""));
                let qd = qmod_dimension(&cat, &q, m, 3).unwrap();
                let e = (qd.d_q_left * q.dim - qd.d).abs().max((qd.d_q_right * q.dim - qd.d).abs());
                flags &= e < 1e-9 && qd.report.pass();
                worst = worst.max(e);
            }
        }
    }
    outcome(flags && worst < 1e-9, format!("3 Q-systems, {modules} solved modules, max residual {worst:.2e}"))
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    let mut worst = 0.0_f64;
    let mut dims = vec![];
    let mut slopes_ok = true;
    let mut exact = 0.0_f64;
    for (cat, q) in qsystem_catalog() {
        let all = all_labels(&cat);
        let z = regular_half_braiding(&cat, &all).unwrap();
        let ind = schauenburg_induce(&cat, &q, &z).unwrap();
        ok &= ind.report.pass();
        worst = worst.max(ind.report.max_residual(""));
        let ts = bimodule_morphisms_ts(&cat, &q, &ind, 3).unwrap();
        ok &= ts.report.pass() && ts.image_dim == ts.brute_force_dim;
        dims.push((q.name.clone(), ts.image_dim, ts.brute_force_dim));

        let rep = rep_from_braiding(&cat, &z).unwrap();
        let base: DVector<C64> = invariance_diagnostics(&rep, &all, 1e-9).invariant.column(0).into_owned();
        let bims = test_bimodules(&cat, &q);
        let tr = transfer_almost_invariant(&cat, &q, &ind, &vector_morphism(&cat, &z.object, &base), &bims).unwrap();
        exact = exact.max(tr.rows.iter().map(|r| r.r2).fold(tr.r1, f64::max));
        ok &= tr.report.pass();
        let n = base.len();
        let mut dir = DVector::from_fn(n, |i, _| C64::new((i as f64 + 1.0).sin(), (2.0 * i as f64).cos()));
        dir -= &base * base.dotc(&dir);
        dir /= C64::new(dir.norm(), 0.0);
        let mut slopes = vec![];
        for eps in [0.1, 0.05, 0.025] {
            let v = &base + &dir * C64::new(eps, 0.0);
            let xi = vector_morphism(&cat, &z.object, &(&v / C64::new(v.norm(), 0.0)));
            let tr = transfer_almost_invariant(&cat, &q, &ind, &xi, &bims).unwrap();
            ok &= tr.report.pass();
            slopes.push(tr.rows.iter().map(|r| r.r2).fold(tr.r1, f64::max) / eps);
        }
        let (lo, hi) = slopes.iter().fold((f64::INFINITY, 0.0_f64), |(a, b), &s| (a.min(s), b.max(s)));
        slopes_ok &= hi <= 3.0 * lo;
    }
    outcome(
        ok && worst < 1e-9 && exact < 1e-9 && slopes_ok,
        format!("induction residual {worst:.2e}; T^S rank vs brute force {dims:?}; invariant transfer {exact:.2e}; linear growth {slopes_ok}"),
    )
}

fn criterion_11() -> Outcome {
    let mut total = 0;
    let mut survivors = vec![];
    for name in ["VecZ2", "VecZ3", "Fibonacci", "Ising"] {
        let base = catalog::category(name).unwrap();
        let keys = base.fsym.as_ref().unwrap().keys();
        for key in keys {
            let (r, c) = {
                let b = base.fsym.as_ref().unwrap().block(key.0, key.1, key.2, key.3).unwrap();
                (b.mat.nrows(), b.mat.ncols())
            };
            for i in 0..r {
                for j in 0..c {
                    let mut cat = base.clone();
                    cat.fsym.as_mut().unwrap().block_mut(key.0, key.1, key.2, key.3).unwrap().mat[(i, j)] += C64::new(1e-3, 0.0);
                    total += 1;
                    let s = soundness(&cat);
                    let (u, m, e) = regular_residuals(&cat);
                    let flipped = s >= 1e-9 || u >= 1e-9 || m >= 1e-9 || e >= 1e-12 || two_formulas(&cat) >= 1e-9;
                    if !flipped {
                        survivors.push(format!("{name}{key:?}[{i},{j}]"));
                    }
                }
            }
        }
    }
    outcome(survivors.is_empty(), format!("{total} single-entry perturbations, {} undetected {survivors:?}", survivors.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("skeleton soundness", criterion_1),
        ("regular half-braiding", criterion_2),
        ("two-formula oracle", criterion_3),
        ("representation suite", criterion_4),
        ("cp-multiplier loop", criterion_5),
        ("group reduction", criterion_6),
        ("spectral diagnostics", criterion_7),
        ("finite C*(C)", criterion_8),
        ("Q-system suite", criterion_9),
        ("Schauenburg induction", criterion_10),
        ("mutation robustness", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!("[{}] criterion {:>2} {name}: {} ({:.1}s)", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {}/11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
