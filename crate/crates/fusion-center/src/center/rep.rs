use super::HalfBraidedObject;
use crate::linalg::{eye, spectral_norm, zeros, CMat};
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, SkeletalCategory, Word};
use crate::{Error, Result, C64};
use nalgebra::DVector;

/// A representation of the fusion algebra: one matrix `π([U_s])` per label.
#[derive(Clone, Debug)]
pub struct FusionRepresentation {
    pub name: String,
    pub dim: usize,
    pub mats: Vec<CMat>,
    pub dims: Vec<f64>,
    pub duals: Vec<usize>,
}

impl FusionRepresentation {
    /// `π([X])` for an object given by multiplicities.
    pub fn object(&self, mult: &[usize]) -> CMat {
        let mut acc = zeros(self.dim, self.dim);
        for (s, &m) in mult.iter().enumerate() {
            acc += &self.mats[s] * C64::new(m as f64, 0.0);
        }
        acc
    }

    /// `max_s ‖π([U_s̄]) − π([U_s])*‖`.
    pub fn star_residual(&self) -> f64 {
        (0..self.mats.len()).map(|s| crate::linalg::max_abs(&(&self.mats[self.duals[s]] - self.mats[s].adjoint()))).fold(0.0, f64::max)
    }

    /// `max_s (‖π([U_s])‖ − d_s)`, negative when the bound holds with room.
    pub fn norm_excess(&self) -> f64 {
        (0..self.mats.len()).map(|s| spectral_norm(&self.mats[s]) - self.dims[s]).fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max ‖π(s)π(t) − Σ_r N_{st}^r π(r)‖` and `‖π(e) − ι‖`.
    pub fn multiplicativity_residual(&self, cat: &SkeletalCategory) -> f64 {
        let mut worst = crate::linalg::max_abs(&(&self.mats[cat.unit()] - eye(self.dim)));
        for s in 0..cat.rank() {
            for t in 0..cat.rank() {
                let lhs = &self.mats[s] * &self.mats[t];
                let mut rhs = zeros(self.dim, self.dim);
                for r in 0..cat.rank() {
                    let n = cat.n(s, t, r);
                    if n > 0 {
                        rhs += &self.mats[r] * C64::new(n as f64, 0.0);
                    }
                }
                worst = worst.max(crate::linalg::max_abs(&(lhs - rhs)));
            }
        }
        worst
    }

    /// Direct sum with the trivial one-dimensional representation `[X] ↦ d(X)`.
    pub fn with_trivial_summand(&self) -> Self {
        let n = self.dim + 1;
        let mats = self
            .mats
            .iter()
            .enumerate()
            .map(|(s, m)| {
                let mut b = zeros(n, n);
                b.view_mut((0, 0), (self.dim, self.dim)).copy_from(m);
                b[(self.dim, self.dim)] = C64::new(self.dims[s], 0.0);
                b
            })
            .collect();
        FusionRepresentation { name: format!("{}+trivial", self.name), dim: n, mats, dims: self.dims.clone(), duals: self.duals.clone() }
    }

    /// The vector coefficient `s ↦ d_s^{-1}(π([U_s])ξ, ξ)`.
    pub fn multiplier_of(&self, xi: &DVector<C64>) -> Vec<C64> {
        self.mats.iter().enumerate().map(|(s, m)| (m * xi).dotc(xi).conj() / self.dims[s]).collect()
    }

    pub fn report(&self, cat: &SkeletalCategory) -> Report {
        let mut rep = Report::new();
        let tol = cat.tol;
        rep.push(Check::new(format!("rep.{}.star", self.name), "π([Ū]) = π([U])*", self.star_residual(), tol));
        rep.push(Check::at_most(format!("rep.{}.norm-bound", self.name), "‖π([X])‖ ≤ d(X)", self.norm_excess().max(0.0), tol));
        rep.push(Check::new(format!("rep.{}.multiplicative", self.name), "π multiplicative on fusion rules", self.multiplicativity_residual(cat), tol));
        rep.sorted()
    }
}

/// `K_s = (ι_Z ⊗ R̄_s*)(c_s ⊗ ι_s̄) : U_s ⊗ Z ⊗ Ū_s → Z`.
fn contraction(cat: &SkeletalCategory, z: &HalfBraidedObject, s: usize) -> Morphism {
    let sw = cat.simple(s);
    let sbar = cat.simple(cat.dual(s));
    let rb = cat.std_rbar(&sw);
    &cat.tensor(&cat.identity(&z.object), &rb.dagger()) * &cat.tensor(&z.braid[s], &cat.identity(&sbar))
}

/// `π_Z([U_s])ξ = (ι ⊗ R̄_s*)(c_s ⊗ ι)(ι ⊗ ξ ⊗ ι)R̄_s` on `Mor(1, Z)`, in the tree basis.
pub fn rep_from_braiding(cat: &SkeletalCategory, z: &HalfBraidedObject) -> Result<FusionRepresentation> {
    cat.require_full()?;
    let e = cat.unit();
    let m = cat.word_dims(&z.object)[e];
    let mut mats = Vec::with_capacity(cat.rank());
    for s in 0..cat.rank() {
        let sw = cat.simple(s);
        let sbar = cat.simple(cat.dual(s));
        let k = contraction(cat, z, s);
        let rb = cat.std_rbar(&sw);
        let mut mat = zeros(m, m);
        for i in 0..m {
            let xi = cat.unit_vector(&z.object, i);
            let v = &k * &(&cat.tensor_all(&[&cat.identity(&sw), &xi, &cat.identity(&sbar)]) * &rb);
            mat.set_column(i, &v.blocks[e].column(0));
        }
        mats.push(mat);
    }
    Ok(FusionRepresentation {
        name: z.name.clone(),
        dim: m,
        mats,
        dims: cat.dims.clone(),
        duals: (0..cat.rank()).map(|s| cat.dual(s)).collect(),
    })
}

/// The vector of `Mor(1, Z)` with coordinates `coeffs` in the tree basis.
pub fn vector_morphism(cat: &SkeletalCategory, z: &Word, coeffs: &DVector<C64>) -> Morphism {
    let mut m = cat.zero(&Word::unit(), z);
    m.blocks[cat.unit()].set_column(0, coeffs);
    m
}

/// For a unit vector `ξ`: `|2d_s − 2Re(π([U_s])ξ, ξ) − ‖c_s(ι ⊗ ξ) − ξ ⊗ ι‖₂²|`, maximised over `s`.
/// The norm on `Mor(U_s, Z ⊗ U_s)` is `‖T‖₂² = Tr(T*T)`.
pub fn almost_invariance_identity_residual(cat: &SkeletalCategory, z: &HalfBraidedObject, rep: &FusionRepresentation, coeffs: &DVector<C64>) -> f64 {
    let xi = vector_morphism(cat, &z.object, coeffs);
    let mut worst = 0.0_f64;
    for s in 0..cat.rank() {
        let sw = cat.simple(s);
        let is = cat.identity(&sw);
        let t = &(&z.braid[s] * &cat.tensor(&is, &xi)) - &cat.tensor(&xi, &is);
        let lhs = cat.block_trace(&(&t.dagger() * &t)).re;
        let val = (&rep.mats[s] * coeffs).dotc(coeffs).conj();
        let rhs = 2.0 * cat.d(s) - 2.0 * val.re;
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// `max |π([U_s])_{ξ_r ξ_t} − N_{st}^r|` for a regular half-braiding over the full label set.
pub fn regular_rep_residual(cat: &SkeletalCategory, z: &HalfBraidedObject, rep: &FusionRepresentation) -> Result<f64> {
    let space = z.regular.as_ref().ok_or_else(|| Error::Input(format!("'{}' is not a regular half-braiding", z.name)))?;
    let mut worst = 0.0_f64;
    for s in 0..cat.rank() {
        let m = &rep.mats[s];
        for &r in &space.labels {
            for &t in &space.labels {
                let got = m[(space.xi_index(cat, r), space.xi_index(cat, t))];
                worst = worst.max((got - C64::new(cat.n(s, t, r) as f64, 0.0)).norm());
            }
        }
    }
    Ok(worst)
}
