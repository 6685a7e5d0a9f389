use super::{FusionRules, SkeletalCategory, CONVENTION};
use crate::linalg::{eye, max_abs};
use crate::report::{Check, Report};
use crate::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fusion-ring axioms: unit, duality, rigidity, Frobenius symmetry, associativity.
pub fn fusion_rule_residuals(rules: &FusionRules) -> Vec<(String, f64)> {
    let k = rules.rank();
    let e = rules.unit();
    let mut unit = 0usize;
    let mut dual = 0usize;
    let mut rigid = 0usize;
    let mut frob = 0usize;
    let mut assoc = 0usize;
    for s in 0..k {
        if rules.dual(rules.dual(s)) != s {
            dual += 1;
        }
        for t in 0..k {
            for r in 0..k {
                let d = usize::from(t == r);
                if rules.n(e, t, r) != d || rules.n(t, e, r) != d {
                    unit += 1;
                }
                let n = rules.n(s, t, r);
                if n != rules.n(rules.dual(s), r, t) || n != rules.n(r, rules.dual(t), s) {
                    frob += 1;
                }
            }
            if rules.n(s, t, e) != usize::from(t == rules.dual(s)) {
                rigid += 1;
            }
        }
    }
    if rules.dual(e) != e {
        dual += 1;
    }
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let l: usize = (0..k).map(|x| rules.n(a, b, x) * rules.n(x, c, d)).sum();
                    let r: usize = (0..k).map(|x| rules.n(b, c, x) * rules.n(a, x, d)).sum();
                    if l != r {
                        assoc += 1;
                    }
                }
            }
        }
    }
    vec![
        ("rules.unit".into(), unit as f64),
        ("rules.dual-involution".into(), dual as f64),
        ("rules.unique-duals".into(), rigid as f64),
        ("rules.frobenius-symmetry".into(), frob as f64),
        ("rules.associativity".into(), assoc as f64),
    ]
}

impl SkeletalCategory {
    /// Largest deviation of `F^{abc}_d` from the identity when a leg is the unit.
    pub fn unit_leg_residual(&self) -> f64 {
        let Some(fs) = &self.fsym else { return 0.0 };
        let e = self.unit();
        let mut worst = 0.0f64;
        for (a, b, c, d) in fs.keys() {
            if a != e && b != e && c != e {
                continue;
            }
            let blk = fs.block(a, b, c, d).unwrap();
            // With a unit leg both bases are indexed by the same single intermediate label.
            for (i, &(ee, mu, nu)) in blk.left.iter().enumerate() {
                for (j, &(f, rho, sigma)) in blk.right.iter().enumerate() {
                    let expect = if a == e {
                        ee == b && f == d && mu == 0 && nu == rho && sigma == 0
                    } else if b == e {
                        ee == a && f == c && mu == 0 && rho == 0 && nu == sigma
                    } else {
                        ee == d && f == b && nu == 0 && rho == 0 && mu == sigma
                    };
                    let target = if expect { 1.0 } else { 0.0 };
                    worst = worst.max((blk.mat[(i, j)] - C64::new(target, 0.0)).norm());
                }
            }
        }
        worst
    }

    /// Largest `‖F F* − ι‖`, `‖F* F − ι‖` entry over all blocks.
    pub fn f_unitarity_residual(&self) -> f64 {
        let Some(fs) = &self.fsym else { return 0.0 };
        let mut worst = 0.0f64;
        for key in fs.keys() {
            let blk = fs.block(key.0, key.1, key.2, key.3).unwrap();
            if blk.left.len() != blk.right.len() {
                return f64::INFINITY;
            }
            let n = blk.left.len();
            worst = worst.max(max_abs(&(&blk.mat * blk.mat.adjoint() - eye(n))));
            worst = worst.max(max_abs(&(blk.mat.adjoint() * &blk.mat - eye(n))));
        }
        worst
    }

    /// Largest pentagon discrepancy over all admissible index tuples.
    ///
    /// Both sides express a fully left-associated tree of `a⊗b⊗c⊗d` in the
    /// fully right-associated basis: directly in two moves, or in three.
    pub fn pentagon_residual(&self) -> f64 {
        let Some(fs) = &self.fsym else { return 0.0 };
        let k = self.rank();
        let n = |s, t, r| self.n(s, t, r);
        let f = |a, b, c, d, e, ff, mu, nu, rho, sigma| fs.get(a, b, c, d, e, ff, mu, nu, rho, sigma);
        let mut worst = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        for e in 0..k {
                            for x in 0..k {
                                for al in 0..n(a, b, x) {
                                    for y in 0..k {
                                        for be in 0..n(x, c, y) {
                                            for ga in 0..n(y, d, e) {
                                                for z in 0..k {
                                                    for de in 0..n(c, d, z) {
                                                        for w in 0..k {
                                                            for ze in 0..n(b, z, w) {
                                                                for et in 0..n(a, w, e) {
                                                                    let mut lhs = C64::new(0.0, 0.0);
                                                                    for ep in 0..n(x, z, e) {
                                                                        lhs += f(x, c, d, e, y, z, be, ga, de, ep) * f(a, b, z, e, x, w, al, ep, ze, et);
                                                                    }
                                                                    let mut rhs = C64::new(0.0, 0.0);
                                                                    for u in 0..k {
                                                                        for ka in 0..n(b, c, u) {
                                                                            for la in 0..n(a, u, y) {
                                                                                let f1 = f(a, b, c, y, x, u, al, be, ka, la);
                                                                                if f1 == C64::new(0.0, 0.0) {
                                                                                    continue;
                                                                                }
                                                                                for zp in 0..n(u, d, w) {
                                                                                    rhs += f1 * f(a, u, d, e, y, w, la, ga, zp, et) * f(b, c, d, w, u, z, ka, zp, de, ze);
                                                                                }
                                                                            }
                                                                        }
                                                                    }
                                                                    worst = worst.max((lhs - rhs).norm());
                                                                }
                                                            }
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        worst
    }

    /// `max |Σ_r N_{st}^r d_r − d_s d_t|` together with `|d_e − 1|` and `|d_s − d_s̄|`.
    pub fn dimension_residual(&self) -> f64 {
        let k = self.rank();
        let mut worst = (self.d(self.unit()) - 1.0).abs();
        for s in 0..k {
            worst = worst.max((self.d(s) - self.d(self.dual(s))).abs());
            for t in 0..k {
                let lhs: f64 = (0..k).map(|r| self.n(s, t, r) as f64 * self.d(r)).sum();
                worst = worst.max((lhs - self.d(s) * self.d(t)).abs());
            }
        }
        worst
    }
}

/// Run the full skeleton suite; overall pass iff every residual is below `cat.tol`.
pub fn validate_category(cat: &SkeletalCategory) -> Report {
    let tol = cat.tol;
    let mut rep = Report::new();
    for (id, v) in fusion_rule_residuals(&cat.rules) {
        rep.push(Check::new(id, "fusion ring axioms", v, 0.5));
    }
    rep.push(Check::new("dims.perron", "dimension function", cat.dimension_residual(), tol));
    let piv = cat.pivotal.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    rep.push(Check::new("pivotal.modulus", "pivotal phases", piv, tol));
    let Some(fs) = &cat.fsym else {
        rep.note("fusion-ring-only data: F-symbol checks skipped");
        return rep.sorted();
    };
    rep.push(Check::flag("fsymbols.convention", "recoupling convention marker", fs.convention == CONVENTION));
    rep.push(Check::new("fsymbols.unit-legs", "F trivial on unit legs", cat.unit_leg_residual(), tol));
    rep.push(Check::new("fsymbols.unitarity", "F unitary", cat.f_unitarity_residual(), tol));
    rep.push(Check::new("fsymbols.pentagon", "pentagon identity", cat.pentagon_residual(), tol));
    let mut conj = 0.0f64;
    let mut norm = 0.0f64;
    for s in 0..cat.rank() {
        let (a, b, c) = cat.conjugate_equation_residuals(&cat.simple(s));
        conj = conj.max(a).max(b);
        norm = norm.max(c);
    }
    rep.push(Check::new("duality.conjugate-equations", "conjugate equations", conj, tol));
    rep.push(Check::new("duality.norms", "standard solution norms", norm, tol));
    rep.push(Check::new("duality.spherical", "left and right traces agree", sphericality_residual(cat, 4), tol));
    rep.sorted()
}

/// Left minus right trace on random endomorphisms of two-letter words.
pub fn sphericality_residual(cat: &SkeletalCategory, samples: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = cat.rank();
    let mut worst = 0.0f64;
    for s in 0..k {
        for t in 0..k {
            let w = cat.simples(&[s, t]);
            for _ in 0..samples {
                let m = cat.random_morphism(&w, &w, &mut rng);
                let diff = (cat.trace_left(&m) - cat.trace_right(&m)).norm();
                worst = worst.max(diff / (1.0 + m.max_abs()));
            }
        }
    }
    worst
}
