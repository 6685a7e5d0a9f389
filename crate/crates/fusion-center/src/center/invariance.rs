use super::FusionRepresentation;
use crate::linalg::{eye, null_space, spectral_norm, zeros, CMat};
use crate::C64;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub labels: Vec<usize>,
    /// Orthonormal basis of `{ξ : π([U_s])ξ = d_s ξ, s ∈ F}` as columns.
    pub invariant: CMat,
    /// `max_{s∈F} ‖π([U_s])ξ − d_sξ‖` for each basis vector.
    pub residuals: Vec<f64>,
    pub d_x: f64,
    /// `d(X_F) − ‖π([X_F])‖` on the orthogonal complement; `None` when it is zero.
    pub gap: Option<f64>,
    /// Orthogonal projection onto the invariant subspace.
    pub kazhdan: CMat,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceSummary {
    pub invariant_dim: usize,
    pub max_residual: f64,
    pub d_x: f64,
    pub gap: Option<f64>,
    pub kazhdan_rank: usize,
}

impl InvarianceReport {
    pub fn invariant_dim(&self) -> usize {
        self.invariant.ncols()
    }

    pub fn summary(&self) -> InvarianceSummary {
        InvarianceSummary {
            invariant_dim: self.invariant_dim(),
            max_residual: self.residuals.iter().copied().fold(0.0, f64::max),
            d_x: self.d_x,
            gap: self.gap,
            kazhdan_rank: self.kazhdan.trace().re.round() as usize,
        }
    }
}

/// Invariant vectors and the spectral gap of `π([X_F])`, `X_F = ⊕_{s∈F} U_s`.
pub fn invariance_diagnostics(rep: &FusionRepresentation, labels: &[usize], tol: f64) -> InvarianceReport {
    let n = rep.dim;
    let mut stack = zeros(n * labels.len().max(1), n);
    for (k, &s) in labels.iter().enumerate() {
        let m = &rep.mats[s] - eye(n) * C64::new(rep.dims[s], 0.0);
        stack.view_mut((k * n, 0), (n, n)).copy_from(&m);
    }
    let invariant = if n == 0 { zeros(0, 0) } else { null_space(&stack, tol.max(1e-12) * 10.0) };
    let residuals = (0..invariant.ncols())
        .map(|j| {
            let v = invariant.column(j);
            labels.iter().map(|&s| (&rep.mats[s] * v - v * C64::new(rep.dims[s], 0.0)).norm()).fold(0.0, f64::max)
        })
        .collect();
    let kazhdan = &invariant * invariant.adjoint();
    let mut mult = vec![0; rep.mats.len()];
    for &s in labels {
        mult[s] += 1;
    }
    let d_x: f64 = labels.iter().map(|&s| rep.dims[s]).sum();
    let gap = (invariant.ncols() < n).then(|| {
        let q = eye(n) - &kazhdan;
        d_x - spectral_norm(&(&q * rep.object(&mult) * &q))
    });
    InvarianceReport { labels: labels.to_vec(), invariant, residuals, d_x, gap, kazhdan }
}
