use super::linear::{diff, solution_space};
use super::QSystem;
use crate::linalg::{herm_eigen, herm_fn, max_abs, range_isometry, zeros};
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, ObjectExpr, SkeletalCategory, Word};
use crate::{Error, Result, C64};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
    Bi,
}

impl Side {
    pub fn parse(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "bi" | "bimodule" => Ok(Side::Bi),
            _ => Err(Error::Input(format!("unknown module side '{s}' (left, right, bi)"))),
        }
    }

    fn has_left(self) -> bool {
        self != Side::Right
    }

    fn has_right(self) -> bool {
        self != Side::Left
    }
}

/// An object with a left action `Q ⊗ M → M`, a right action `M ⊗ Q → M`, or both.
#[derive(Clone, Debug)]
pub struct ModuleStructure {
    pub name: String,
    pub object: Word,
    pub left: Option<Morphism>,
    pub right: Option<Morphism>,
}

impl ModuleStructure {
    pub fn side(&self) -> Side {
        match (&self.left, &self.right) {
            (Some(_), Some(_)) => Side::Bi,
            (Some(_), None) => Side::Left,
            _ => Side::Right,
        }
    }

    pub fn left_action(&self) -> Result<&Morphism> {
        self.left.as_ref().ok_or_else(|| Error::Input(format!("module '{}' has no left action", self.name)))
    }

    pub fn right_action(&self) -> Result<&Morphism> {
        self.right.as_ref().ok_or_else(|| Error::Input(format!("module '{}' has no right action", self.name)))
    }

    /// `Q` acting on itself by `m_Q = w*`.
    pub fn regular(q: &QSystem, side: Side) -> Self {
        let m = q.m();
        ModuleStructure {
            name: "Q".into(),
            object: q.object.clone(),
            left: side.has_left().then(|| m.clone()),
            right: side.has_right().then_some(m),
        }
    }

    /// Whether this is `Q` with its regular action on the given side.
    pub fn is_regular_on(&self, q: &QSystem, side: Side) -> bool {
        let m = q.m();
        let act = match side {
            Side::Left => self.left.as_ref(),
            _ => self.right.as_ref(),
        };
        self.object == q.object && act.is_some_and(|a| a.source == m.source && a.dist(&m) < 1e-12)
    }

    /// Forget one of the actions.
    pub fn restrict(&self, side: Side) -> Self {
        let mut out = self.clone();
        if !side.has_left() {
            out.left = None;
        }
        if !side.has_right() {
            out.right = None;
        }
        out
    }
}

/// The free module `Q ⊗ X`, `X ⊗ Q` or `Q ⊗ X ⊗ Q`.
pub fn free_module(cat: &SkeletalCategory, q: &QSystem, x: &Word, side: Side) -> ModuleStructure {
    let iq = cat.identity(&q.object);
    let ix = cat.identity(x);
    let m = q.m();
    let (object, left, right) = match side {
        Side::Left => (q.object.concat(x), Some(cat.tensor(&m, &ix)), None),
        Side::Right => (x.concat(&q.object), None, Some(cat.tensor(&ix, &m))),
        Side::Bi => (
            Word::cat(&[&q.object, x, &q.object]),
            Some(cat.tensor_all(&[&m, &ix, &iq])),
            Some(cat.tensor_all(&[&iq, &ix, &m])),
        ),
    };
    ModuleStructure { name: "free".into(), object, left, right }
}

/// Module axioms and the identities `m m* = d(Q)ι`, `m*m = (ι⊗m)(w⊗ι)`.
pub fn module_report(cat: &SkeletalCategory, q: &QSystem, module: &ModuleStructure) -> Report {
    let tol = cat.tol;
    let d = q.dim;
    let iq = cat.identity(&q.object);
    let im = cat.identity(&module.object);
    let mq = q.m();
    let wv = &q.w * &q.v;
    let mut rep = Report::new();
    let id = |s: &str| format!("module.{}.{s}", module.name);
    if let Some(m) = &module.left {
        rep.push(Check::new(id("left.associativity"), "m(m_Q⊗ι) = m(ι⊗m)", (m * &cat.tensor(&mq, &im)).dist(&(m * &cat.tensor(&iq, m))), tol));
        rep.push(Check::new(id("left.unit"), "m(v⊗ι) = ι", (m * &cat.tensor(&q.v, &im)).dist(&im), tol));
        rep.push(Check::new(id("left.star"), "m* = (ι⊗m)(wv⊗ι)", m.dagger().dist(&(&cat.tensor(&iq, m) * &cat.tensor(&wv, &im))), tol));
        rep.push(Check::new(id("left.mmstar"), "m m* = d(Q)ι", (m * &m.dagger()).dist(&im.scale_re(d)), tol));
        rep.push(Check::new(id("left.mstarm"), "m*m = (ι⊗m)(w⊗ι)", (&m.dagger() * m).dist(&(&cat.tensor(&iq, m) * &cat.tensor(&q.w, &im))), tol));
    }
    if let Some(m) = &module.right {
        rep.push(Check::new(id("right.associativity"), "m(ι⊗m_Q) = m(m⊗ι)", (m * &cat.tensor(&im, &mq)).dist(&(m * &cat.tensor(m, &iq))), tol));
        rep.push(Check::new(id("right.unit"), "m(ι⊗v) = ι", (m * &cat.tensor(&im, &q.v)).dist(&im), tol));
        rep.push(Check::new(id("right.star"), "m* = (m⊗ι)(ι⊗wv)", m.dagger().dist(&(&cat.tensor(m, &iq) * &cat.tensor(&im, &wv))), tol));
        rep.push(Check::new(id("right.mmstar"), "m m* = d(Q)ι", (m * &m.dagger()).dist(&im.scale_re(d)), tol));
        rep.push(Check::new(id("right.mstarm"), "m*m = (m⊗ι)(ι⊗w)", (&m.dagger() * m).dist(&(&cat.tensor(m, &iq) * &cat.tensor(&im, &q.w))), tol));
    }
    if let (Some(l), Some(r)) = (&module.left, &module.right) {
        let lhs = l * &cat.tensor(&iq, r);
        let rhs = r * &cat.tensor(l, &iq);
        rep.push(Check::new(id("bimodule"), "m^l(ι⊗m^r) = m^r(m^l⊗ι)", lhs.dist(&rhs), tol));
    }
    rep.sorted()
}

/// Basis of the module maps `a → b` for the actions both carry.
pub fn module_morphisms(cat: &SkeletalCategory, q: &QSystem, a: &ModuleStructure, b: &ModuleStructure) -> Vec<Morphism> {
    let iq = cat.identity(&q.object);
    solution_space(
        &cat.zero(&a.object, &b.object),
        |t| {
            let mut out = vec![];
            if let (Some(ma), Some(mb)) = (&a.left, &b.left) {
                out.extend(diff(&(t * ma), &(mb * &cat.tensor(&iq, t))));
            }
            if let (Some(ma), Some(mb)) = (&a.right, &b.right) {
                out.extend(diff(&(t * ma), &(mb * &cat.tensor(t, &iq))));
            }
            out
        },
        1e-9,
    )
}

/// Spectral projections of a generic self-adjoint element of a *-algebra of
/// endomorphisms, given by a linear basis. These are minimal projections.
fn minimal_projections(algebra: &[Morphism], rng: &mut ChaCha8Rng) -> Vec<Morphism> {
    let Some(first) = algebra.first() else { return vec![] };
    let mut h = first.scale_re(0.0);
    for b in algebra {
        let c = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        h = &h + &b.scale(c);
    }
    h = &h + &h.dagger();
    let scale = h.blocks.iter().map(max_abs).fold(1e-300, f64::max);
    let mut eig: Vec<(f64, usize, nalgebra::DVector<C64>)> = vec![];
    for (r, blk) in h.blocks.iter().enumerate() {
        if blk.nrows() == 0 {
            continue;
        }
        let (vals, vecs) = herm_eigen(blk);
        for (i, &v) in vals.iter().enumerate() {
            eig.push((v, r, vecs.column(i).into_owned()));
        }
    }
    eig.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = vec![];
    let mut start = 0;
    for i in 1..=eig.len() {
        if i == eig.len() || eig[i].0 - eig[i - 1].0 > 1e-7 * scale {
            let mut p = first.scale_re(0.0);
            for (_, r, v) in &eig[start..i] {
                p.blocks[*r] += v * v.adjoint();
            }
            out.push(p);
            start = i;
        }
    }
    out
}

/// The submodule cut out by a projection `p` commuting with the actions.
fn submodule(cat: &SkeletalCategory, q: &QSystem, parent: &ModuleStructure, p: &Morphism, name: String) -> Result<(ModuleStructure, Morphism)> {
    let vblocks: Vec<_> = p.blocks.iter().map(range_isometry).collect();
    let obj = ObjectExpr { mult: vblocks.iter().map(|b| b.ncols()).collect() };
    let nw = Word::single(obj);
    let v = cat.morphism(&nw, &parent.object, vblocks)?;
    let iq = cat.identity(&q.object);
    let left = parent.left.as_ref().map(|m| &(&v.dagger() * m) * &cat.tensor(&iq, &v));
    let right = parent.right.as_ref().map(|m| &(&v.dagger() * m) * &cat.tensor(&v, &iq));
    Ok((ModuleStructure { name, object: nw, left, right }, v))
}

fn describe(cat: &SkeletalCategory, o: &ObjectExpr) -> String {
    let parts: Vec<String> = (0..cat.rank())
        .filter(|&s| o.mult[s] > 0)
        .map(|s| if o.mult[s] == 1 { cat.label(s).to_string() } else { format!("{}*{}", o.mult[s], cat.label(s)) })
        .collect();
    if parts.is_empty() { "0".into() } else { parts.join("+") }
}

/// Representatives of the simple modules on one side, found as summands of the
/// free modules on the simple objects.
pub fn simple_modules(cat: &SkeletalCategory, q: &QSystem, side: Side) -> Result<Vec<ModuleStructure>> {
    cat.require_full()?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut found: Vec<ModuleStructure> = vec![];
    for s in 0..cat.rank() {
        let free = free_module(cat, q, &cat.simple(s), side);
        let algebra = module_morphisms(cat, q, &free, &free);
        for p in minimal_projections(&algebra, &mut rng) {
            let (m, _) = submodule(cat, q, &free, &p, String::new())?;
            if found.iter().any(|f| f.object.0[0].mult.iter().sum::<usize>() > 0 && !module_morphisms(cat, q, f, &m).is_empty()) {
                continue;
            }
            let mut m = m;
            let tag = match side {
                Side::Left => "L",
                Side::Right => "R",
                Side::Bi => "B",
            };
            m.name = format!("{tag}{}[{}]", found.len(), describe(cat, &m.object.0[0]));
            found.push(m);
        }
    }
    Ok(found)
}

/// Direct sum on the single factor `⊕ N_i`, stacking tree bases in order.
pub fn direct_sum(cat: &SkeletalCategory, q: &QSystem, parts: &[&ModuleStructure], name: impl Into<String>) -> Result<ModuleStructure> {
    let k = cat.rank();
    let mut total = ObjectExpr::zero(k);
    for p in parts {
        if p.object.len() != 1 {
            return Err(Error::Shape("direct sums need single-factor modules".into()));
        }
        total = total.add(&p.object.0[0]);
    }
    let w = Word::single(total.clone());
    let iq = cat.identity(&q.object);
    let side = parts.first().map_or(Side::Left, |p| p.side());
    let mut left = side.has_left().then(|| cat.zero(&q.object.concat(&w), &w));
    let mut right = side.has_right().then(|| cat.zero(&w.concat(&q.object), &w));
    let mut off = vec![0; k];
    for p in parts {
        let mult = &p.object.0[0].mult;
        let blocks = (0..k)
            .map(|r| {
                let mut b = zeros(total.mult[r], mult[r]);
                for i in 0..mult[r] {
                    b[(off[r] + i, i)] = C64::new(1.0, 0.0);
                }
                b
            })
            .collect();
        let j = cat.morphism(&p.object, &w, blocks)?;
        if let Some(acc) = left.as_mut() {
            *acc = &*acc + &(&(&j * p.left_action()?) * &cat.tensor(&iq, &j.dagger()));
        }
        if let Some(acc) = right.as_mut() {
            *acc = &*acc + &(&(&j * p.right_action()?) * &cat.tensor(&j.dagger(), &iq));
        }
        for r in 0..k {
            off[r] += mult[r];
        }
    }
    Ok(ModuleStructure { name: name.into(), object: w, left, right })
}

/// All module structures on the object `m` up to isomorphism, as direct sums of
/// simple modules whose underlying objects add up to `m`.
pub fn solve_modules(cat: &SkeletalCategory, q: &QSystem, m: &ObjectExpr, side: Side) -> Result<Vec<ModuleStructure>> {
    let simples = simple_modules(cat, q, side)?;
    let sizes: Vec<&Vec<usize>> = simples.iter().map(|s| &s.object.0[0].mult).collect();
    let mut combos = vec![];
    let mut current = vec![0usize; simples.len()];
    fn rec(i: usize, rest: &[usize], sizes: &[&Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == sizes.len() {
            if rest.iter().all(|&x| x == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let mut rest = rest.to_vec();
        loop {
            rec(i + 1, &rest, sizes, cur, out);
            if sizes[i].iter().all(|&x| x == 0) || sizes[i].iter().zip(&rest).any(|(&a, &b)| a > b) {
                break;
            }
            for (r, a) in rest.iter_mut().zip(sizes[i].iter()) {
                *r -= a;
            }
            cur[i] += 1;
        }
        cur[i] = 0;
    }
    rec(0, &m.mult, &sizes, &mut current, &mut combos);
    let mut out = vec![];
    for combo in combos {
        let mut parts = vec![];
        let mut name = vec![];
        for (i, &c) in combo.iter().enumerate() {
            for _ in 0..c {
                parts.push(&simples[i]);
            }
            if c > 0 {
                name.push(if c == 1 { simples[i].name.clone() } else { format!("{c}x{}", simples[i].name) });
            }
        }
        out.push(direct_sum(cat, q, &parts, name.join("+"))?);
    }
    Ok(out)
}

/// `A^{-1/2} m (ι ⊗ A^{1/2})` with `A = m m*`, turning an algebraic one-sided module
/// into a *-compatible one.
pub fn renormalize(cat: &SkeletalCategory, q: &QSystem, module: &ModuleStructure) -> Result<ModuleStructure> {
    let iq = cat.identity(&q.object);
    let fix = |m: &Morphism, left: bool| -> Morphism {
        let a = m * &m.dagger();
        let mut half = a.clone();
        let mut inv_half = a.clone();
        for (r, b) in a.blocks.iter().enumerate() {
            half.blocks[r] = herm_fn(b, |x| x.max(0.0).sqrt());
            inv_half.blocks[r] = herm_fn(b, |x| if x > 0.0 { 1.0 / x.sqrt() } else { 0.0 });
        }
        let inner = if left { cat.tensor(&iq, &half) } else { cat.tensor(&half, &iq) };
        &(&inv_half * m) * &inner
    };
    match module.side() {
        Side::Left => Ok(ModuleStructure { left: Some(fix(module.left_action()?, true)), ..module.clone() }),
        Side::Right => Ok(ModuleStructure { right: Some(fix(module.right_action()?, false)), ..module.clone() }),
        Side::Bi => Err(Error::Capability("renormalisation acts on one-sided modules".into())),
    }
}

/// Conjugate a one-sided module by an invertible, non-unitary `g`:
/// `g m (ι ⊗ g^{-1})`. The result satisfies the algebraic axioms only.
pub fn skew_module(cat: &SkeletalCategory, q: &QSystem, module: &ModuleStructure, seed: u64) -> Result<ModuleStructure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = cat.identity(&module.object);
    let mut ginv = g.clone();
    for (r, b) in g.blocks.iter_mut().enumerate() {
        let n = b.nrows();
        let pert = crate::linalg::CMat::from_fn(n, n, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        *b += pert * C64::new(0.6, 0.0);
        ginv.blocks[r] = b.clone().try_inverse().ok_or_else(|| Error::Numerical("singular skew".into()))?;
    }
    let iq = cat.identity(&q.object);
    match module.side() {
        Side::Left => Ok(ModuleStructure { left: Some(&(&g * module.left_action()?) * &cat.tensor(&iq, &ginv)), ..module.clone() }),
        Side::Right => Ok(ModuleStructure { right: Some(&(&g * module.right_action()?) * &cat.tensor(&ginv, &iq)), ..module.clone() }),
        Side::Bi => Err(Error::Capability("skewing acts on one-sided modules".into())),
    }
}
