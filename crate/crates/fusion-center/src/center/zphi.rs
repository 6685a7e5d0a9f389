use super::{regular_half_braiding, rep_from_braiding, FusionRepresentation, HalfBraidedObject};
use crate::linalg::{herm_fn, spectral_norm, support_isometry, zeros};
use crate::multipliers::{build_aphi, cp_check, AphiBlocks, Multiplier};
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, ObjectExpr, SkeletalCategory, Word};
use crate::{Error, Result, C64};
use nalgebra::DVector;

/// The half-braided object `Z_φ = A^φ-⊕_s U_s ⊗ Ū_s` with its cyclic vector.
#[derive(Clone, Debug)]
pub struct GnsCenterObject {
    pub phi: Multiplier,
    pub aphi: AphiBlocks,
    /// Isometry from `Z_φ` onto the support of `A^φ` inside the flattened `Z_reg`.
    pub support: Morphism,
    pub object: HalfBraidedObject,
    /// `ξ_φ` in the tree basis of `Mor(1, Z_φ)`.
    pub xi: DVector<C64>,
    pub rep: FusionRepresentation,
    pub report: Report,
}

impl GnsCenterObject {
    pub fn dim(&self) -> usize {
        self.rep.dim
    }
}

/// `max_x ‖(A ⊗ ι_x) c_x − c_x (ι_x ⊗ A)‖` on the flattened regular object.
pub fn intertwining_residual(cat: &SkeletalCategory, a: &Morphism, z: &HalfBraidedObject) -> f64 {
    let mut worst = 0.0_f64;
    for x in 0..cat.rank() {
        let ix = cat.identity(&cat.simple(x));
        let lhs = &cat.tensor(a, &ix) * &z.braid[x];
        let rhs = &z.braid[x] * &cat.tensor(&ix, a);
        worst = worst.max(lhs.dist(&rhs));
    }
    worst
}

/// GNS-type construction from a multiplier that passes the positivity test on `window`.
pub fn build_zphi(cat: &SkeletalCategory, phi: &Multiplier, window: &[usize]) -> Result<GnsCenterObject> {
    cat.require_full()?;
    let verdict = cp_check(cat, phi, &[window.to_vec()])?;
    if !verdict.positive {
        let w = verdict.windows[0].witness.as_ref();
        return Err(Error::Verification(format!(
            "multiplier is not positive on the window: minimum eigenvalue {:e} at root '{}'",
            verdict.windows[0].min_eigenvalue,
            w.map_or("?", |w| w.root.as_str())
        )));
    }
    let aphi = build_aphi(cat, phi, window)?;
    let zreg = regular_half_braiding(cat, window)?;
    let space = zreg.regular.clone().expect("regular window");
    let scale = aphi.grand.blocks.iter().map(spectral_norm).fold(1.0, f64::max);
    let cut = 1e-8 * scale;
    let mut mult = vec![0; cat.rank()];
    let mut vblocks = vec![];
    let mut half = vec![];
    for (r, b) in aphi.grand.blocks.iter().enumerate() {
        let v = support_isometry(b, cut);
        mult[r] = v.ncols();
        vblocks.push(v);
        half.push(herm_fn(b, |x| x.max(0.0).sqrt()));
    }
    let zw = Word::single(ObjectExpr { mult });
    let support = cat.morphism(&zw, &space.word, vblocks)?;
    let a_half = cat.morphism(&space.word, &space.word, half)?;
    let braid: Vec<Morphism> = (0..cat.rank())
        .map(|x| {
            let ix = cat.identity(&cat.simple(x));
            &(&cat.tensor(&support.dagger(), &ix) * &zreg.braid[x]) * &cat.tensor(&ix, &support)
        })
        .collect();
    let object = HalfBraidedObject { name: "Z_phi".into(), object: zw.clone(), braid, truncated: zreg.truncated.clone(), regular: None };
    let e = cat.unit();
    let xi_e = cat.unit_vector(&space.word, space.xi_index(cat, e));
    let xi_m = &(&support.dagger() * &a_half) * &xi_e;
    let xi: DVector<C64> = xi_m.blocks[e].column(0).into_owned();
    let rep = rep_from_braiding(cat, &object)?;

    let mut report = Report::new();
    let tol = cat.tol;
    report.push(Check::new("zphi.intertwining", "A^φ commutes with the regular half-braiding", intertwining_residual(cat, &aphi.grand, &zreg), tol));
    report.push(Check::new("zphi.unitarity", "c_φ unitary", object.unitarity_residual(cat), tol));
    report.push(Check::new("zphi.multiplicativity", "c_φ multiplicative", object.multiplicativity_residual(cat), tol));
    let recovered = rep.multiplier_of(&xi);
    let mut rt = 0.0_f64;
    for &s in window {
        rt = rt.max((recovered[s] - phi.get(s)?).norm());
    }
    report.push(Check::new("zphi.roundtrip", "φ(s) = d_s^{-1}(π_φ([U_s])ξ_φ, ξ_φ)", rt, tol));
    let mut span = zeros(rep.dim, cat.rank());
    for s in 0..cat.rank() {
        span.set_column(s, &(&rep.mats[s] * &xi));
    }
    let rank = if rep.dim == 0 { 0 } else { span.rank(1e-8 * span.norm().max(1.0)) };
    report.push(Check::flag("zphi.cyclic", "ξ_φ cyclic", rank == rep.dim));
    report.extend(rep.report(cat));
    Ok(GnsCenterObject { phi: phi.clone(), aphi, support, object, xi, rep, report: report.sorted() })
}
