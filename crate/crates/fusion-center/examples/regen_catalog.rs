//! Regenerates `data/fibonacci.json` and `data/ising.json`.
//!
//! The F-symbols are found by solving the pentagon equations inside a real
//! gauge ansatz: every 1x1 block away from the unit legs is a sign, and the
//! single 2x2 block is a reflection `[[cos t, sin t], [sin t, -cos t]]`.
//! Sign patterns are tried in order of increasing number of minus signs; for
//! each pattern the angle is scanned on a grid and refined by golden-section
//! search. The first pattern with pentagon residual below 1e-12 is written.

use fusion_center::catalog::{fibonacci_rules, ising_rules};
use fusion_center::skeleton::io::category_to_json;
use fusion_center::skeleton::{FSymbolTable, FusionRules, SkeletalCategory, CONVENTION};
use fusion_center::C64;

type Key = (usize, usize, usize, usize);

fn build(rules: &FusionRules, name: &str, singles: &[Key], pair: Key, signs: &[f64], theta: f64) -> SkeletalCategory {
    let mut t = FSymbolTable::zero(rules, CONVENTION);
    for key in t.keys() {
        let b = t.block_mut(key.0, key.1, key.2, key.3).unwrap();
        let n = b.mat.nrows();
        for i in 0..n {
            b.mat[(i, i)] = C64::new(1.0, 0.0);
        }
    }
    for (k, key) in singles.iter().enumerate() {
        t.block_mut(key.0, key.1, key.2, key.3).unwrap().mat[(0, 0)] = C64::new(signs[k], 0.0);
    }
    let b = t.block_mut(pair.0, pair.1, pair.2, pair.3).unwrap();
    let (c, s) = (theta.cos(), theta.sin());
    b.mat[(0, 0)] = C64::new(c, 0.0);
    b.mat[(0, 1)] = C64::new(s, 0.0);
    b.mat[(1, 0)] = C64::new(s, 0.0);
    b.mat[(1, 1)] = C64::new(-c, 0.0);
    let k = rules.rank();
    SkeletalCategory::new(name, rules.clone(), Some(t), vec![C64::new(1.0, 0.0); k], 1e-9).unwrap()
}

fn golden(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    (a + b) / 2.0
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

fn solve(rules: FusionRules, name: &str) -> SkeletalCategory {
    let unit = rules.unit();
    let probe = FSymbolTable::zero(&rules, CONVENTION);
    let mut singles = vec![];
    let mut pairs = vec![];
    for key in probe.keys() {
        if key.0 == unit || key.1 == unit || key.2 == unit {
            continue;
        }
        match probe.block(key.0, key.1, key.2, key.3).unwrap().mat.nrows() {
            1 => singles.push(key),
            2 => pairs.push(key),
            n => panic!("block of size {n} is outside the ansatz"),
        }
    }
    assert_eq!(pairs.len(), 1, "ansatz expects exactly one 2x2 block");
    let pair = pairs[0];
    let grid = 720;
    for weight in 0..=singles.len() {
        for minus in combinations(singles.len(), weight) {
            let mut signs = vec![1.0; singles.len()];
            minus.iter().for_each(|&i| signs[i] = -1.0);
            let res = |th: f64| build(&rules, name, &singles, pair, &signs, th).pentagon_residual();
            let step = std::f64::consts::PI / grid as f64;
            let best = (1..grid).map(|i| i as f64 * step).min_by(|a, b| res(*a).total_cmp(&res(*b))).unwrap();
            let th = golden(res, best - step, best + step);
            if res(th) < 1e-12 {
                eprintln!("{name}: {} minus signs, theta = {th}, residual = {:e}", weight, res(th));
                return build(&rules, name, &singles, pair, &signs, th);
            }
        }
    }
    panic!("no solution for {name} inside the ansatz");
}

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for (rules, name, file) in [(fibonacci_rules(), "Fibonacci", "fibonacci.json"), (ising_rules(), "Ising", "ising.json")] {
        let cat = solve(rules, name);
        std::fs::write(dir.join(file), category_to_json(&cat).unwrap() + "\n").unwrap();
    }
}
