use super::FusionRepresentation;
use crate::fusion_ring::IrrBackend;
use crate::linalg::{eye, herm_eigen, max_abs, null_space, zeros, CMat};
use crate::multipliers::Multiplier;
use crate::report::{Check, Report};
use crate::skeleton::cmat_from_real;
use crate::{Error, Result, C64};
use nalgebra::DVector;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One simple summand of the finite-dimensional `C*(C)`.
#[derive(Clone, Debug)]
pub struct CStarBlock {
    /// Central projection on `ℓ²(Irr)` in the basis `ξ_s`.
    pub projection: CMat,
    pub rep: FusionRepresentation,
    /// `φ(s) = d_s^{-1}(π([U_s])ξ, ξ)` for the first basis vector `ξ` of the block.
    pub multiplier: Multiplier,
    pub trivial: bool,
}

impl CStarBlock {
    /// Character values `π([U_s])` of a one-dimensional block.
    pub fn character(&self) -> Option<Vec<C64>> {
        (self.rep.dim == 1).then(|| self.rep.mats.iter().map(|m| m[(0, 0)]).collect())
    }
}

#[derive(Clone, Debug)]
pub struct CStarDecomposition {
    pub blocks: Vec<CStarBlock>,
    /// Kazhdan projection in the regular representation.
    pub kazhdan: CMat,
    /// Coefficients of the Kazhdan projection as an element `Σ_s p_s [U_s]`.
    pub kazhdan_element: Vec<f64>,
    pub report: Report,
}

/// Group eigenvalues closer than `gap` and return the spectral projections.
fn spectral_projections(h: &CMat, gap: f64) -> Vec<CMat> {
    let (vals, vecs) = herm_eigen(h);
    let mut out = vec![];
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i] - vals[i - 1] > gap {
            let w = vecs.columns(start, i - start).into_owned();
            out.push(&w * w.adjoint());
            start = i;
        }
    }
    out
}

/// Block decomposition of the fusion algebra of a finite backend, acting on `ℓ²(Irr)`.
pub fn decompose_cstar_finite(backend: &dyn IrrBackend, tol: f64) -> Result<CStarDecomposition> {
    let n = backend.size().ok_or_else(|| Error::Capability("C*(C) decomposition needs a finite fusion ring".into()))?;
    let labels: Vec<usize> = (0..n).collect();
    let dims: Vec<f64> = labels.iter().map(|&s| backend.dim(s)).collect();
    let duals: Vec<usize> = labels.iter().map(|&s| backend.dual(s)).collect();
    let left: Vec<CMat> = labels
        .iter()
        .map(|&s| cmat_from_real(&nalgebra::DMatrix::from_fn(n, n, |r, t| backend.mult(s, t, r) as f64)))
        .collect();
    let right: Vec<CMat> = labels
        .iter()
        .map(|&s| cmat_from_real(&nalgebra::DMatrix::from_fn(n, n, |r, t| backend.mult(t, s, r) as f64)))
        .collect();

    // Central elements z with z[U_s] = [U_s]z for all s.
    let mut sys = zeros(n * n * n, n);
    for s in 0..n {
        for u in 0..n {
            let c = &left[u] * &left[s] - &left[s] * &left[u];
            for (k, z) in c.iter().enumerate() {
                sys[(s * n * n + k, u)] = *z;
            }
        }
    }
    let center = null_space(&sys, 1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut h = zeros(n, n);
    for j in 0..center.ncols() {
        let c = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        for u in 0..n {
            h += &left[u] * (center[(u, j)] * c);
        }
    }
    let h = &h + h.adjoint();
    let central = spectral_projections(&h, 1e-6 * (1.0 + max_abs(&h)));

    let mut blocks = vec![];
    for p in central {
        let rank = p.trace().re.round() as usize;
        let k = (rank as f64).sqrt().round() as usize;
        if k * k != rank || k == 0 {
            return Err(Error::Numerical(format!("central block of rank {rank} is not a full matrix block")));
        }
        // An irreducible subspace: eigenspace of a generic element of the commutant inside the block.
        let mut g = zeros(n, n);
        for r in &right {
            g += r * C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
        }
        let g = &p * (&g + g.adjoint()) * &p + (eye(n) - &p) * C64::new(1e3 * (1.0 + max_abs(&g)), 0.0);
        let (vals, vecs) = herm_eigen(&g);
        let w = vecs.columns(0, k).into_owned();
        if k > 1 && vals.len() > k && (vals[k] - vals[k - 1]).abs() < 1e-9 {
            return Err(Error::Numerical("degenerate commutant element while isolating an irreducible".into()));
        }
        let mats: Vec<CMat> = left.iter().map(|l| w.adjoint() * l * &w).collect();
        let rep = FusionRepresentation { name: format!("block{}", blocks.len()), dim: k, mats, dims: dims.clone(), duals: duals.clone() };
        let mut xi = DVector::zeros(k);
        xi[0] = C64::new(1.0, 0.0);
        let values = rep.multiplier_of(&xi);
        let multiplier = Multiplier::from_fn(labels.iter().copied(), |s| values[s]);
        let trivial = k == 1 && labels.iter().all(|&s| (rep.mats[s][(0, 0)] - dims[s]).norm() < 1e-8 * dims[s].max(1.0));
        blocks.push(CStarBlock { projection: p, rep, multiplier, trivial });
    }
    blocks.sort_by(|a, b| b.trivial.cmp(&a.trivial).then(a.rep.dim.cmp(&b.rep.dim)));
    for (i, b) in blocks.iter_mut().enumerate() {
        b.rep.name = format!("block{i}");
    }

    let mut report = Report::new();
    let ntriv = blocks.iter().filter(|b| b.trivial).count();
    report.push(Check::flag("cstar.trivial-once", "trivial character occurs once", ntriv == 1));
    let mut ortho = max_abs(&(blocks.iter().fold(zeros(n, n), |acc, b| acc + &b.projection) - eye(n)));
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            ortho = ortho.max(max_abs(&(&a.projection * &b.projection)));
        }
        for l in &left {
            ortho = ortho.max(max_abs(&(&a.projection * l - l * &a.projection)));
        }
    }
    report.push(Check::new("cstar.central-projections", "blocks are orthogonal central ideals", ortho, tol));
    let dsq: f64 = dims.iter().map(|d| d * d).sum();
    let kazhdan = blocks.iter().find(|b| b.trivial).map_or(zeros(n, n), |b| b.projection.clone());
    let kazhdan_element: Vec<f64> = dims.iter().map(|d| d / dsq).collect();
    let mut kres = 0.0_f64;
    for (s, l) in left.iter().enumerate() {
        kres = kres.max(max_abs(&(l * &kazhdan - &kazhdan * C64::new(dims[s], 0.0))));
    }
    report.push(Check::new("cstar.kazhdan", "[X]p = d(X)p", kres, tol));
    Ok(CStarDecomposition { blocks, kazhdan, kazhdan_element, report: report.sorted() })
}
