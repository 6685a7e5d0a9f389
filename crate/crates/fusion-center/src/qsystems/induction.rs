use super::linear::{diff, map_rank, solution_space};
use super::modules::{free_module, module_morphisms, module_report, ModuleStructure, Side};
use super::relative::relative_tensor;
use super::QSystem;
use crate::center::{invariance_diagnostics, rep_from_braiding, HalfBraidedObject};
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, SkeletalCategory};
use crate::{Result, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `X ⊗ Q` with `m^r = ι ⊗ m_Q` and `m^l = (ι ⊗ m_Q)(c_Q ⊗ ι)`.
#[derive(Clone, Debug)]
pub struct InducedObject {
    pub source: HalfBraidedObject,
    pub module: ModuleStructure,
    /// `c_Q : Q ⊗ X → X ⊗ Q`.
    pub c_q: Morphism,
    pub report: Report,
}

/// `Q` and the free bimodules `Q ⊗ U_s ⊗ Q`.
pub fn test_bimodules(cat: &SkeletalCategory, q: &QSystem) -> Vec<ModuleStructure> {
    let mut out = vec![ModuleStructure::regular(q, Side::Bi)];
    for s in 0..cat.rank() {
        let mut f = free_module(cat, q, &cat.simple(s), Side::Bi);
        f.name = format!("Q{}Q", cat.label(s));
        out.push(f);
    }
    out
}

/// `σ_Y = (ι_X ⊗ v ⊗ ι_Y)(ι_X ⊗ m^r_Y)(c_Y ⊗ ι_Q) : Y ⊗ X ⊗ Q → X ⊗ Q ⊗ Y`.
fn sigma(cat: &SkeletalCategory, q: &QSystem, z: &HalfBraidedObject, y: &ModuleStructure) -> Result<Morphism> {
    let ix = cat.identity(&z.object);
    let iy = cat.identity(&y.object);
    let iq = cat.identity(&q.object);
    let cy = z.braid_word(cat, &y.object);
    Ok(&(&cat.tensor_all(&[&ix, &q.v, &iy]) * &cat.tensor(&ix, y.right_action()?)) * &cat.tensor(&cy, &iq))
}

/// The Q-bimodule `X ⊗ Q` induced by a half-braided object, with residuals of the
/// bimodule axioms, multiplicativity and descent of `σ`, and unitarity of the
/// induced half-braiding on the test bimodules.
pub fn schauenburg_induce(cat: &SkeletalCategory, q: &QSystem, z: &HalfBraidedObject) -> Result<InducedObject> {
    cat.require_full()?;
    let tol = cat.tol;
    let ix = cat.identity(&z.object);
    let iq = cat.identity(&q.object);
    let c_q = z.braid_word(cat, &q.object);
    let right = cat.tensor(&ix, &q.m());
    let left = &right * &cat.tensor(&c_q, &iq);
    let module = ModuleStructure { name: format!("Ind({})", z.name), object: z.object.concat(&q.object), left: Some(left), right: Some(right) };
    let mut rep = module_report(cat, q, &module);
    let id = |s: &str| format!("induce.{}.{s}", z.name);

    let tests = test_bimodules(cat, q);
    let ixq = cat.identity(&module.object);
    let (mut mult, mut desc, mut unit) = (0.0_f64, 0.0_f64, 0.0_f64);
    for a in &tests {
        for b in &tests {
            let ia = cat.identity(&a.object);
            let ib = cat.identity(&b.object);
            let plain = ModuleStructure {
                name: format!("{}·{}", a.name, b.name),
                object: a.object.concat(&b.object),
                left: Some(cat.tensor(a.left_action()?, &ib)),
                right: Some(cat.tensor(&ia, b.right_action()?)),
            };
            let s_ab = sigma(cat, q, z, &plain)?;
            let composed = &cat.tensor(&sigma(cat, q, z, a)?, &ib) * &cat.tensor(&ia, &sigma(cat, q, z, b)?);
            mult = mult.max(s_ab.dist(&composed));
            let rel = relative_tensor(cat, q, a, b)?;
            let lhs = &cat.tensor(&ixq, &rel.p) * &s_ab;
            let rhs = &sigma(cat, q, z, &rel.module)? * &cat.tensor(&rel.p, &ixq);
            desc = desc.max(lhs.dist(&rhs));
        }
        let into = relative_tensor(cat, q, a, &module)?;
        let out = relative_tensor(cat, q, &module, a)?;
        let ct = (&(&out.p * &sigma(cat, q, z, a)?) * &into.p.dagger()).scale_re(1.0 / q.dim);
        let u = (&ct.dagger() * &ct).dist(&cat.identity(&into.module.object)).max((&ct * &ct.dagger()).dist(&cat.identity(&out.module.object)));
        unit = unit.max(u);
    }
    rep.push(Check::new(id("sigma-multiplicative"), "(σ_Z⊗ι)(ι⊗σ_Y) = σ_{Z⊗Y}", mult, tol));
    rep.push(Check::new(id("sigma-descent"), "(ι⊗P)σ_{Z⊗Y} = σ_{Z⊗_QY}(P⊗ι)", desc, tol));
    rep.push(Check::new(id("braiding-unitary"), "c̃_Y unitary", unit, tol));
    Ok(InducedObject { source: z.clone(), module, c_q, report: rep.sorted() })
}

/// `T^S = (ι_X ⊗ v*w* ⊗ ι)(c_Q ⊗ ι ⊗ ι)(ι_Q ⊗ S ⊗ ι ⊗ ι)w^{(3)} : Q → X ⊗ Q`.
fn t_of_s(cat: &SkeletalCategory, q: &QSystem, ind: &InducedObject, s: &Morphism) -> Morphism {
    let iq = cat.identity(&q.object);
    let ix = cat.identity(&ind.source.object);
    let vw = &q.v.dagger() * &q.m();
    let a = cat.tensor_all(&[&ix, &vw, &iq]);
    let b = cat.tensor_all(&[&ind.c_q, &iq, &iq]);
    let c = cat.tensor_all(&[&iq, s, &iq, &iq]);
    &(&(&a * &b) * &c) * q.coproduct(3)
}

/// `T = (ι_X ⊗ v*w*)(c_Q ⊗ ι)(ι_Q ⊗ S ⊗ ι)w^{(2)} : Q → X`.
fn t_small(cat: &SkeletalCategory, q: &QSystem, ind: &InducedObject, s: &Morphism) -> Morphism {
    let iq = cat.identity(&q.object);
    let ix = cat.identity(&ind.source.object);
    let vw = &q.v.dagger() * &q.m();
    &(&(&cat.tensor(&ix, &vw) * &cat.tensor(&ind.c_q, &iq)) * &cat.tensor_all(&[&iq, s, &iq])) * q.coproduct(2)
}

/// Residual of `(T⊗ι)ww* = (ι⊗w*)(c_Q⊗ι)(ι⊗T⊗ι)(ι⊗w)` as a list of entries.
fn char_equation(cat: &SkeletalCategory, q: &QSystem, ind: &InducedObject, t: &Morphism) -> Vec<C64> {
    let iq = cat.identity(&q.object);
    let ix = cat.identity(&ind.source.object);
    let lhs = &(&cat.tensor(t, &iq) * &q.w) * &q.m();
    let rhs = &(&(&cat.tensor(&ix, &q.m()) * &cat.tensor(&ind.c_q, &iq)) * &cat.tensor_all(&[&iq, t, &iq])) * &cat.tensor(&iq, &q.w);
    diff(&lhs, &rhs)
}

#[derive(Clone, Debug, Serialize)]
pub struct TsReport {
    pub mor_qx_dim: usize,
    /// Rank of `S ↦ T^S`.
    pub image_dim: usize,
    pub kernel_dim: usize,
    /// Dimension of the solutions `T : Q → X` of the characterising equation.
    pub brute_force_dim: usize,
    /// `dim Mor_{Q-Q}(Q, X ⊗ Q)` solved directly.
    pub bimodule_dim: usize,
    /// Invariant vectors of the source representation.
    pub invariant_dim: usize,
    pub injective: bool,
    #[serde(skip)]
    pub report: Report,
}

/// Compares the parametrisation `S ↦ T^S` with two independent solves of the
/// bimodule morphism space `Mor_{Q-Q}(Q, X ⊗ Q)`.
pub fn bimodule_morphisms_ts(cat: &SkeletalCategory, q: &QSystem, ind: &InducedObject, samples: usize) -> Result<TsReport> {
    let tol = cat.tol;
    let x = &ind.source.object;
    let template = cat.zero(&q.object, x);
    let mor_qx_dim = template.param_count();
    let image_dim = map_rank(&template, |s| t_of_s(cat, q, ind, s).to_vec(), 1e-9);
    let brute = solution_space(&template, |t| char_equation(cat, q, ind, t), 1e-9);
    let qreg = ModuleStructure::regular(q, Side::Bi);
    let bimodule_dim = module_morphisms(cat, q, &qreg, &ind.module).len();
    let rep_z = rep_from_braiding(cat, &ind.source)?;
    let labels: Vec<usize> = (0..cat.rank()).collect();
    let invariant_dim = invariance_diagnostics(&rep_z, &labels, tol.max(1e-9)).invariant_dim();

    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let iq = cat.identity(&q.object);
    let (mut chr, mut fac, mut bim) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..samples {
        let s = cat.random_morphism(&q.object, x, &mut rng);
        let t = t_small(cat, q, ind, &s);
        chr = chr.max(char_equation(cat, q, ind, &t).iter().map(|z| z.norm()).fold(0.0, f64::max));
        let ts = t_of_s(cat, q, ind, &s);
        fac = fac.max(ts.dist(&(&cat.tensor(&t, &iq) * &q.w)));
        let left = (&ts * qreg.left_action()?).dist(&(ind.module.left_action()? * &cat.tensor(&iq, &ts)));
        let right = (&ts * qreg.right_action()?).dist(&(ind.module.right_action()? * &cat.tensor(&ts, &iq)));
        bim = bim.max(left).max(right);
    }
    let mut report = Report::new();
    let id = |s: &str| format!("ts.{}.{s}", ind.source.name);
    report.push(Check::new(id("characterisation"), "T from S solves (T⊗ι)ww* = (ι⊗w*)(c_Q⊗ι)(ι⊗T⊗ι)(ι⊗w)", chr, tol));
    report.push(Check::new(id("factorisation"), "T^S = (T⊗ι)w", fac, tol));
    report.push(Check::new(id("bimodule-map"), "T^S is a bimodule map", bim, tol));
    report.push(Check::flag(id("dim-brute-force"), "rank(S↦T^S) = dim of solutions", image_dim == brute.len()));
    report.push(Check::flag(id("dim-bimodule"), "rank(S↦T^S) = dim Mor_{Q-Q}(Q, X⊗Q)", image_dim == bimodule_dim));
    report.note(format!("S ↦ T^S has kernel of dimension {}", mor_qx_dim - image_dim));
    Ok(TsReport {
        mor_qx_dim,
        image_dim,
        kernel_dim: mor_qx_dim - image_dim,
        brute_force_dim: brute.len(),
        bimodule_dim,
        invariant_dim,
        injective: image_dim == mor_qx_dim,
        report: report.sorted(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferRow {
    pub bimodule: String,
    /// `‖c_Y(ι⊗ξ) − ξ⊗ι‖`.
    pub source_residual: f64,
    /// Distance between the two sides of the comparison identities.
    pub r2: f64,
    pub bound: f64,
    /// Distance between the two expressions of the transported side.
    pub route_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub xi_norm: f64,
    pub xi_tilde_norm: f64,
    /// `‖ξ̃ − ξ ⊗ ι_Q‖`.
    pub r1: f64,
    /// `‖c_Q(ι⊗ξ) − ξ⊗ι‖`.
    pub s_q: f64,
    pub r1_bound: f64,
    pub rows: Vec<TransferRow>,
    #[serde(skip)]
    pub xi_tilde: Morphism,
    #[serde(skip)]
    pub report: Report,
}

/// `ξ̃ = d(Q)^{-1}T^{ξv*}` and the comparison of `c̃_Y(ι ⊗_Q ξ̃)` with `ξ̃ ⊗_Q ι`
/// on the given bimodules. All distances are operator norms.
pub fn transfer_almost_invariant(cat: &SkeletalCategory, q: &QSystem, ind: &InducedObject, xi: &Morphism, bimodules: &[ModuleStructure]) -> Result<TransferReport> {
    let tol = cat.tol;
    let d = q.dim;
    let z = &ind.source;
    let iq = cat.identity(&q.object);
    let xi_tilde = t_of_s(cat, q, ind, &(xi * &q.v.dagger())).scale_re(1.0 / d);
    let xi_q = cat.tensor(xi, &iq);
    let r1 = xi_tilde.op_dist(&xi_q);
    let s_q = (&ind.c_q * &cat.tensor(&iq, xi)).op_dist(&xi_q);
    let r1_bound = d * s_q + tol;
    let ix = cat.identity(&z.object);
    let mut rows = vec![];
    let mut report = Report::new();
    let id = |s: &str| format!("transfer.{}.{s}", z.name);
    report.push(Check::at_most(id("r1"), "‖ξ̃ − ξ⊗ι‖ ≤ d(Q)‖c_Q(ι⊗ξ) − ξ⊗ι‖", r1, r1_bound));
    for y in bimodules {
        let iy = cat.identity(&y.object);
        let cy = z.braid_word(cat, &y.object);
        let lift = &cat.tensor(&iy, &xi_tilde) * &cat.tensor(&iy, &q.v);
        let lhs1 = &(&cat.tensor(&ix, y.right_action()?) * &cat.tensor(&cy, &iq)) * &lift;
        let alt1 = &(&(&cy * &cat.tensor(y.right_action()?, &ix)) * &cat.tensor(&iy, &ind.c_q.dagger())) * &lift;
        let lhs2 = &(&cat.tensor(&ix, y.left_action()?) * &cat.tensor(&xi_tilde, &iy)) * &cat.tensor(&q.v, &iy);
        let source_residual = (&cy * &cat.tensor(&iy, xi)).op_dist(&cat.tensor(xi, &iy));
        let r2 = lhs1.op_dist(&lhs2);
        let bound = d.sqrt() * (2.0 * r1 + source_residual) + tol;
        let route_residual = lhs1.dist(&alt1);
        report.push(Check::at_most(id(&format!("r2.{}", y.name)), "‖c̃_Y(ι⊗_Qξ̃) − ξ̃⊗_Qι‖ ≤ d(Q)^{1/2}(2r₁ + ‖c_Y(ι⊗ξ) − ξ⊗ι‖)", r2, bound));
        report.push(Check::new(id(&format!("routes.{}", y.name)), "two expressions of c̃_Y(ι⊗_Qξ̃)", route_residual, tol));
        rows.push(TransferRow { bimodule: y.name.clone(), source_residual, r2, bound, route_residual });
    }
    Ok(TransferReport {
        xi_norm: xi.norm(),
        xi_tilde_norm: xi_tilde.norm(),
        r1,
        s_q,
        r1_bound,
        rows,
        xi_tilde,
        report: report.sorted(),
    })
}
