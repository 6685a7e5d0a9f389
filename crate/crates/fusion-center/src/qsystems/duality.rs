use super::modules::{module_morphisms, module_report, ModuleStructure};
use super::relative::{associator, relative_tensor, tensor_over};
use super::QSystem;
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, SkeletalCategory};
use crate::{Error, Result, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The conjugate module `M̄`: a left action on `M` gives a right action on `M̄`
/// and vice versa.
pub fn dual_module(cat: &SkeletalCategory, q: &QSystem, m: &ModuleStructure) -> ModuleStructure {
    let mbar = cat.dual_word(&m.object);
    let r = cat.std_r(&m.object);
    let rb = cat.std_rbar(&m.object);
    let iq = cat.identity(&q.object);
    let imb = cat.identity(&mbar);
    let right = m.left.as_ref().map(|ml| {
        &(&cat.tensor(&r.dagger(), &imb) * &cat.tensor_all(&[&imb, ml, &imb])) * &cat.tensor_all(&[&imb, &iq, &rb])
    });
    let left = m.right.as_ref().map(|mr| {
        &(&cat.tensor(&imb, &rb.dagger()) * &cat.tensor_all(&[&imb, mr, &imb])) * &cat.tensor_all(&[&r, &iq, &imb])
    });
    ModuleStructure { name: format!("{}̄", m.name), object: mbar, left, right }
}

/// `S̄_M = (m^l ⊗ ι)(ι ⊗ R̄_M) : Q → M ⊗ M̄`.
fn s_bar(cat: &SkeletalCategory, q: &QSystem, m: &ModuleStructure) -> Result<Morphism> {
    let ml = m.left_action()?;
    let iq = cat.identity(&q.object);
    let imb = cat.identity(&cat.dual_word(&m.object));
    Ok(&cat.tensor(ml, &imb) * &cat.tensor(&iq, &cat.std_rbar(&m.object)))
}

/// `S_M = (ι ⊗ m^r)(R_M ⊗ ι) : Q → M̄ ⊗ M`.
fn s_map(cat: &SkeletalCategory, q: &QSystem, m: &ModuleStructure) -> Result<Morphism> {
    let mr = m.right_action()?;
    let iq = cat.identity(&q.object);
    let imb = cat.identity(&cat.dual_word(&m.object));
    Ok(&cat.tensor(&imb, mr) * &cat.tensor(&cat.std_r(&m.object), &iq))
}

#[derive(Clone, Debug)]
pub struct QDualityData {
    pub dual: ModuleStructure,
    pub s_bar: Morphism,
    pub s: Morphism,
    /// `R^Q = d(Q)^{-1}P_{M̄,M}S_M : Q → M̄ ⊗_Q M`.
    pub r_q: Morphism,
    /// `R̄^Q = d(Q)^{-1}P_{M,M̄}S̄_M : Q → M ⊗_Q M̄`.
    pub rbar_q: Morphism,
    pub report: Report,
}

/// Zig-zag through the relative tensor products:
/// `(R̄*⊗_Q ι)Φ^{-1}(ι⊗_Q R) = ι_a` with `Q ⊗_Q a` and `a ⊗_Q Q` modelled by `a`.
fn conjugate_residual(cat: &SkeletalCategory, q: &QSystem, a: &ModuleStructure, b: &ModuleStructure, r: &Morphism, rbar: &Morphism) -> Result<f64> {
    let ab = relative_tensor(cat, q, a, b)?;
    let ba = relative_tensor(cat, q, b, a)?;
    let a_ba = relative_tensor(cat, q, a, &ba.module)?;
    let ab_a = relative_tensor(cat, q, &ab.module, a)?;
    let ia = cat.identity(&a.object);
    let (phi, _) = associator(cat, q, a, b, a)?;
    let into = tensor_over(cat, q, &a_ba.p, &ia, r, a.right_action()?);
    let out = tensor_over(cat, q, a.left_action()?, &rbar.dagger(), &ia, &ab_a.p);
    Ok((&(&out * &phi.dagger()) * &into).dist(&ia))
}

/// Duality data of a bimodule.
pub fn qduality_data(cat: &SkeletalCategory, q: &QSystem, m: &ModuleStructure) -> Result<QDualityData> {
    if m.left.is_none() || m.right.is_none() {
        return Err(Error::Input("duality data needs a bimodule".into()));
    }
    let tol = cat.tol;
    let d = q.dim;
    let dual = dual_module(cat, q, m);
    let mut rep = module_report(cat, q, &dual);
    let id = |s: &str| format!("qduality.{}.{s}", m.name);
    let iq = cat.identity(&q.object);
    let im = cat.identity(&m.object);
    let imb = cat.identity(&dual.object);
    let r = cat.std_r(&m.object);
    let rb = cat.std_rbar(&m.object);

    let dm = (&r.dagger() * &cat.tensor(dual.right_action()?, &im)).dist(&(&r.dagger() * &cat.tensor(&imb, m.left_action()?)));
    rep.push(Check::new(id("dual-action"), "R*(m_{M̄}⊗ι) = R*(ι⊗m_M)", dm, tol));
    let dm2 = (&rb.dagger() * &cat.tensor(m.right_action()?, &imb)).dist(&(&rb.dagger() * &cat.tensor(&im, dual.left_action()?)));
    rep.push(Check::new(id("dual-action-right"), "R̄*(m_M⊗ι) = R̄*(ι⊗m_{M̄})", dm2, tol));

    let sb = s_bar(cat, q, m)?;
    let s = s_map(cat, q, m)?;
    let sb_alt = &cat.tensor(&im, dual.right_action()?) * &cat.tensor(&rb, &iq);
    let s_alt = &cat.tensor(dual.left_action()?, &im) * &cat.tensor(&iq, &r);
    rep.push(Check::new(id("sbar-two-routes"), "(m^l⊗ι)(ι⊗R̄) = (ι⊗m^r_{M̄})(R̄⊗ι)", sb.dist(&sb_alt), tol));
    rep.push(Check::new(id("s-two-routes"), "(ι⊗m^r)(R⊗ι) = (m^l_{M̄}⊗ι)(ι⊗R)", s.dist(&s_alt), tol));

    // Zig-zags with S̄ reproduce the actions and descend to the identity.
    let l1 = &cat.tensor(&im, &r.dagger()) * &cat.tensor(&sb, &im);
    let l2 = &cat.tensor(&rb.dagger(), &imb) * &cat.tensor(&imb, &sb);
    let d1 = (&l1 * &m.left_action()?.dagger()).scale_re(1.0 / d);
    let d2 = (&l2 * &dual.right_action()?.dagger()).scale_re(1.0 / d);
    rep.push(Check::new(id("zigzag-left"), "(ι⊗[R*])(S̄⊗_Q ι) = ι", d1.dist(&im), tol));
    rep.push(Check::new(id("zigzag-right"), "([R̄*]⊗ι)(ι⊗_Q S̄) = ι", d2.dist(&imb), tol));
    let desc1 = (&l1 * &cat.tensor(&q.m(), &im)).dist(&(&l1 * &cat.tensor(&iq, m.left_action()?)));
    let desc2 = (&l2 * &cat.tensor(&imb, &q.m())).dist(&(&l2 * &cat.tensor(dual.right_action()?, &iq)));
    rep.push(Check::new(id("zigzag-left-descent"), "L₁(m_Q⊗ι) = L₁(ι⊗m^l)", desc1, tol));
    rep.push(Check::new(id("zigzag-right-descent"), "L₂(ι⊗m_Q) = L₂(m^r_{M̄}⊗ι)", desc2, tol));
    let sd = (&sb.dagger() * &cat.tensor(m.right_action()?, &imb)).dist(&(&sb.dagger() * &cat.tensor(&im, dual.left_action()?)));
    rep.push(Check::new(id("sbar-descent"), "S̄*(m^r⊗ι) = S̄*(ι⊗m^l_{M̄})", sd, tol));

    let mbm = relative_tensor(cat, q, &dual, m)?;
    let mmb = relative_tensor(cat, q, m, &dual)?;
    let r_q = (&mbm.p * &s).scale_re(1.0 / d);
    let rbar_q = (&mmb.p * &sb).scale_re(1.0 / d);
    let c1 = conjugate_residual(cat, q, m, &dual, &r_q, &rbar_q)?;
    let c2 = conjugate_residual(cat, q, &dual, m, &rbar_q, &r_q)?;
    rep.push(Check::new(id("conjugate-1"), "(R̄^{Q*}⊗_Q ι)(ι⊗_Q R^Q) = ι_M", c1, tol));
    rep.push(Check::new(id("conjugate-2"), "(R^{Q*}⊗_Q ι)(ι⊗_Q R̄^Q) = ι_{M̄}", c2, tol));
    Ok(QDualityData { dual, s_bar: sb, s, r_q, rbar_q, report: rep.sorted() })
}

#[derive(Clone, Debug, Serialize)]
pub struct QDimension {
    pub d: f64,
    /// `v* R^{Q*} R^Q v`.
    pub d_q_left: f64,
    /// `v* R̄^{Q*} R̄^Q v`.
    pub d_q_right: f64,
    pub expected: f64,
    /// Largest `|Tr^Q(T) − d(Q)^{-1}Tr(T)|` over random bimodule endomorphisms.
    pub trace_residual: f64,
    #[serde(skip)]
    pub report: Report,
}

/// `d(M)` and `d^Q(M)` of a bimodule, with the trace rescaling checked on
/// `samples` random bimodule endomorphisms.
pub fn qmod_dimension(cat: &SkeletalCategory, q: &QSystem, m: &ModuleStructure, samples: usize) -> Result<QDimension> {
    let data = qduality_data(cat, q, m)?;
    if let Some(c) = data.report.checks.iter().find(|c| c.id.contains("conjugate") && !c.pass) {
        return Err(Error::Verification(format!("{} residual {:.3e}", c.id, c.residual)));
    }
    let tol = cat.tol;
    let dm = cat.word_dim(&m.object);
    let scalar = |x: &Morphism| (&(&q.v.dagger() * &(&x.dagger() * x)) * &q.v).scalar(cat.unit()).re;
    let d_q_left = scalar(&data.r_q);
    let d_q_right = scalar(&data.rbar_q);
    let expected = dm / q.dim;

    let mbm = relative_tensor(cat, q, &data.dual, m)?;
    let ends = module_morphisms(cat, q, m, m);
    let imb = cat.identity(&data.dual.object);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst = 0.0_f64;
    for _ in 0..samples {
        let mut t = cat.zero(&m.object, &m.object);
        for b in &ends {
            let c = C64::new(rand::RngExt::random::<f64>(&mut rng) - 0.5, rand::RngExt::random::<f64>(&mut rng) - 0.5);
            t = &t + &b.scale(c);
        }
        let lifted = tensor_over(cat, q, &mbm.p, &imb, &t, &mbm.p);
        let trq = (&(&(&q.v.dagger() * &data.r_q.dagger()) * &lifted) * &(&data.r_q * &q.v)).scalar(cat.unit());
        let tr = cat.categorical_trace(&t)?;
        worst = worst.max((trq - tr / q.dim).norm());
    }
    let mut report = Report::new();
    let id = |s: &str| format!("qdim.{}.{s}", m.name);
    report.push(Check::new(id("left"), "v*R^{Q*}R^Q v = d(M)/d(Q)", (d_q_left - expected).abs(), tol));
    report.push(Check::new(id("right"), "v*R̄^{Q*}R̄^Q v = d(M)/d(Q)", (d_q_right - expected).abs(), tol));
    report.push(Check::new(id("trace"), "Tr^Q = d(Q)^{-1}Tr", worst, tol));
    Ok(QDimension { d: dm, d_q_left, d_q_right, expected, trace_residual: worst, report })
}

/// `(dim Mor(X ⊗_Q Y, Z), dim Mor(Y, X̄ ⊗_Q Z))` for bimodules.
pub fn frobenius_reciprocity_left(cat: &SkeletalCategory, q: &QSystem, x: &ModuleStructure, y: &ModuleStructure, z: &ModuleStructure) -> Result<(usize, usize)> {
    let xy = relative_tensor(cat, q, x, y)?;
    let xbz = relative_tensor(cat, q, &dual_module(cat, q, x), z)?;
    Ok((module_morphisms(cat, q, &xy.module, z).len(), module_morphisms(cat, q, y, &xbz.module).len()))
}

/// `(dim Mor(X ⊗_Q Y, Z), dim Mor(X, Z ⊗_Q Ȳ))` for bimodules.
pub fn frobenius_reciprocity_right(cat: &SkeletalCategory, q: &QSystem, x: &ModuleStructure, y: &ModuleStructure, z: &ModuleStructure) -> Result<(usize, usize)> {
    let xy = relative_tensor(cat, q, x, y)?;
    let zyb = relative_tensor(cat, q, z, &dual_module(cat, q, y))?;
    Ok((module_morphisms(cat, q, &xy.module, z).len(), module_morphisms(cat, q, x, &zyb.module).len()))
}

/// For a left-module map `T : M → N`, residuals of
/// `(T⊗ι)R̄_M = (ι⊗T∨)R̄_N`, of `T∨` being a right-module map, and of
/// `(T⊗ι)S̄_M = (ι⊗T∨)S̄_N`.
pub fn vee_residuals(cat: &SkeletalCategory, q: &QSystem, t: &Morphism, m: &ModuleStructure, n: &ModuleStructure) -> Result<[f64; 3]> {
    let tv = cat.dual_morphism(t);
    let mb = dual_module(cat, q, m);
    let nb = dual_module(cat, q, n);
    let iq = cat.identity(&q.object);
    let imb = cat.identity(&mb.object);
    let inn = cat.identity(&n.object);
    let a = (&cat.tensor(t, &imb) * &cat.std_rbar(&m.object)).dist(&(&cat.tensor(&inn, &tv) * &cat.std_rbar(&n.object)));
    let b = (&tv * nb.right_action()?).dist(&(mb.right_action()? * &cat.tensor(&tv, &iq)));
    let c = (&cat.tensor(t, &imb) * &s_bar(cat, q, m)?).dist(&(&cat.tensor(&inn, &tv) * &s_bar(cat, q, n)?));
    Ok([a, b, c])
}
