use super::modules::{module_report, ModuleStructure, Side};
use super::QSystem;
use crate::linalg::{fix_column_phases, range_isometry};
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, ObjectExpr, SkeletalCategory, Word};
use crate::{Error, Result};

/// `M ⊗_Q N` with its structure morphism `P : M ⊗ N → M ⊗_Q N`.
#[derive(Clone, Debug)]
pub struct RelativeTensorData {
    /// The projection `p = d(Q)^{-1}(ι ⊗ v*w* ⊗ ι)(m^{r*} ⊗ m^{l*})` on `M ⊗ N`.
    pub projection: Morphism,
    pub p: Morphism,
    /// The coequalizer, carrying `M`'s left and `N`'s right action when present.
    pub module: ModuleStructure,
    pub report: Report,
}

/// `d(Q)^{-1} P_t (f ⊗ g) P_s*`.
pub fn tensor_over(cat: &SkeletalCategory, q: &QSystem, p_target: &Morphism, f: &Morphism, g: &Morphism, p_source: &Morphism) -> Morphism {
    (&(p_target * &cat.tensor(f, g)) * &p_source.dagger()).scale_re(1.0 / q.dim)
}

pub fn relative_tensor(cat: &SkeletalCategory, q: &QSystem, m: &ModuleStructure, n: &ModuleStructure) -> Result<RelativeTensorData> {
    let mr = m.right_action()?;
    let nl = n.left_action()?;
    let tol = cat.tol;
    for module in [m, n] {
        let rep = module_report(cat, q, module);
        if let Some(c) = rep.first_failure() {
            return Err(Error::Verification(format!("{} residual {:.3e}", c.id, c.residual)));
        }
    }
    let d = q.dim;
    let im = cat.identity(&m.object);
    let inn = cat.identity(&n.object);
    let iq = cat.identity(&q.object);
    let vw = &q.v.dagger() * &q.m();
    let projection = (&cat.tensor_all(&[&im, &vw, &inn]) * &cat.tensor(&mr.dagger(), &nl.dagger())).scale_re(1.0 / d);

    let (object, p) = if n.is_regular_on(q, Side::Left) {
        (m.object.clone(), mr.clone())
    } else if m.is_regular_on(q, Side::Right) {
        (n.object.clone(), nl.clone())
    } else {
        let blocks: Vec<_> = projection
            .blocks
            .iter()
            .map(|b| {
                let mut v = range_isometry(b);
                fix_column_phases(&mut v);
                v
            })
            .collect();
        let obj = Word::single(ObjectExpr { mult: blocks.iter().map(|b| b.ncols()).collect() });
        let v = cat.morphism(&obj, &projection.source, blocks)?;
        (obj, v.dagger().scale_re(d.sqrt()))
    };

    let left = m.left.as_ref().map(|ml| (&(&p * &cat.tensor(ml, &inn)) * &cat.tensor(&iq, &p.dagger())).scale_re(1.0 / d));
    let right = n.right.as_ref().map(|nr| (&(&p * &cat.tensor(&im, nr)) * &cat.tensor(&p.dagger(), &iq)).scale_re(1.0 / d));
    let module = ModuleStructure { name: format!("{}⊗_Q{}", m.name, n.name), object: object.clone(), left, right };

    let mut rep = Report::new();
    let id = |s: &str| format!("relative.{}.{s}", module.name);
    let pp = &projection * &projection;
    rep.push(Check::new(id("idempotent"), "p² = p", pp.dist(&projection), tol));
    rep.push(Check::new(id("selfadjoint"), "p* = p", projection.dagger().dist(&projection), tol));
    rep.push(Check::new(id("coisometry"), "P P* = d(Q)ι", (&p * &p.dagger()).dist(&cat.identity(&object).scale_re(d)), tol));
    rep.push(Check::new(id("range"), "P*P = d(Q)p", (&p.dagger() * &p).dist(&projection.scale_re(d)), tol));
    let bal = (&p * &cat.tensor(mr, &inn)).dist(&(&p * &cat.tensor(&im, nl)));
    rep.push(Check::new(id("balanced"), "P(m^r⊗ι) = P(ι⊗m^l)", bal, tol));
    if module.left.is_some() || module.right.is_some() {
        rep.extend(module_report(cat, q, &module));
    }
    Ok(RelativeTensorData { projection, p, module, report: rep.sorted() })
}

/// `Φ : (X ⊗_Q Y) ⊗_Q Z → X ⊗_Q (Y ⊗_Q Z)` and its unitarity residual.
pub fn associator(cat: &SkeletalCategory, q: &QSystem, x: &ModuleStructure, y: &ModuleStructure, z: &ModuleStructure) -> Result<(Morphism, f64)> {
    let xy = relative_tensor(cat, q, x, y)?;
    let yz = relative_tensor(cat, q, y, z)?;
    let xy_z = relative_tensor(cat, q, &xy.module, z)?;
    let x_yz = relative_tensor(cat, q, x, &yz.module)?;
    let ix = cat.identity(&x.object);
    let iz = cat.identity(&z.object);
    let into = &x_yz.p * &cat.tensor(&ix, &yz.p);
    let from = &xy_z.p * &cat.tensor(&xy.p, &iz);
    let phi = (&into * &from.dagger()).scale_re(1.0 / (q.dim * q.dim));
    let res = (&phi.dagger() * &phi)
        .dist(&cat.identity(&xy_z.module.object))
        .max((&phi * &phi.dagger()).dist(&cat.identity(&x_yz.module.object)));
    Ok((phi, res))
}
