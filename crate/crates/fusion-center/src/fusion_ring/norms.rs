use super::IrrBackend;
use crate::linalg::{lanczos_top, real_sym_top};
use crate::{Error, Result};
use nalgebra::DMatrix;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Sizes above this use Lanczos instead of a dense eigensolver.
const DENSE_LIMIT: usize = 512;
const LANCZOS_STEPS: usize = 600;

/// `Γ_X` over the first `n` labels: entry `(s, t)` is `dim C(U_s, X ⊗ U_t)`.
#[derive(Clone, Debug)]
pub struct FusionMatrix {
    pub object: BTreeMap<usize, usize>,
    pub n: usize,
    /// Column `t` lists `(s, a_{st})` over all `s`, including labels beyond the truncation.
    pub columns: Vec<Vec<(usize, u32)>>,
}

impl FusionMatrix {
    pub fn entry(&self, s: usize, t: usize) -> u32 {
        self.columns[t].iter().find(|&&(r, _)| r == s).map_or(0, |&(_, a)| a)
    }

    /// `P_n Γ_X P_n` as a dense matrix.
    pub fn dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (t, col) in self.columns.iter().enumerate() {
            for &(s, a) in col {
                if s < self.n {
                    m[(s, t)] = a as f64;
                }
            }
        }
        m
    }
}

pub fn fusion_matrix(backend: &dyn IrrBackend, x: &BTreeMap<usize, usize>, n: usize) -> FusionMatrix {
    let n = backend.size().map_or(n, |s| s.min(n));
    let columns = (0..n)
        .map(|t| {
            let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
            for (&a, &m) in x {
                for (s, k) in backend.products(a, t) {
                    *acc.entry(s).or_insert(0) += (m * k) as u32;
                }
            }
            acc.into_iter().collect()
        })
        .collect();
    FusionMatrix { object: x.clone(), n, columns }
}

/// Norm estimates on one truncation.
#[derive(Clone, Debug, Serialize)]
pub struct TruncationBound {
    pub n: usize,
    pub radius: Option<usize>,
    /// `‖P_n Γ_X P_n‖`.
    pub compressed: f64,
    /// `‖Γ_X P_n‖`.
    pub column: f64,
    pub method: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormReport {
    pub backend: String,
    pub d_x: f64,
    pub bounds: Vec<TruncationBound>,
    /// Best certified lower bound for `‖Γ_X‖`.
    pub best: f64,
    pub monotone: bool,
    pub converged: bool,
    pub within_dimension: bool,
}

fn object_dim(backend: &dyn IrrBackend, x: &BTreeMap<usize, usize>) -> f64 {
    x.iter().map(|(&s, &m)| m as f64 * backend.dim(s)).sum()
}

/// `(‖PΓP‖, ‖ΓP‖)` for an explicit truncation.
fn explicit_bounds(g: &FusionMatrix) -> (f64, f64, &'static str) {
    let n = g.n;
    if n == 0 {
        return (0.0, 0.0, "empty");
    }
    let mut rows: HashMap<usize, usize> = HashMap::new();
    for col in &g.columns {
        for &(s, _) in col {
            let k = rows.len();
            rows.entry(s).or_insert(k);
        }
    }
    if n <= DENSE_LIMIT && rows.len() <= 4 * DENSE_LIMIT {
        let a = g.dense();
        let compressed = real_sym_top(&(a.transpose() * &a)).max(0.0).sqrt();
        let mut full = DMatrix::<f64>::zeros(rows.len(), n);
        for (t, col) in g.columns.iter().enumerate() {
            for &(s, v) in col {
                full[(rows[&s], t)] = v as f64;
            }
        }
        let column = real_sym_top(&(full.transpose() * &full)).max(0.0).sqrt();
        return (compressed, column, "dense");
    }
    let cols: Vec<Vec<(usize, f64)>> = g.columns.iter().map(|c| c.iter().map(|&(s, v)| (rows[&s], v as f64)).collect()).collect();
    let inside: Vec<bool> = {
        let mut v = vec![false; rows.len()];
        for (&s, &i) in &rows {
            v[i] = s < n;
        }
        v
    };
    let nr = rows.len();
    let (cols, inside) = (&cols, &inside);
    let gram = |restrict: bool| {
        move |x: &[f64], y: &mut [f64]| {
            let mut tmp = vec![0.0; nr];
            for (t, col) in cols.iter().enumerate() {
                for &(i, v) in col {
                    if !restrict || inside[i] {
                        tmp[i] += v * x[t];
                    }
                }
            }
            for (t, col) in cols.iter().enumerate() {
                y[t] = col.iter().filter(|&&(i, _)| !restrict || inside[i]).map(|&(i, v)| v * tmp[i]).sum();
            }
        }
    };
    let ones = vec![1.0; n];
    let compressed = lanczos_top(n, LANCZOS_STEPS, &ones, gram(true)).max(0.0).sqrt();
    let column = lanczos_top(n, LANCZOS_STEPS, &ones, gram(false)).max(0.0).sqrt();
    (compressed, column, "lanczos")
}

fn finish(backend: &dyn IrrBackend, x: &BTreeMap<usize, usize>, mut bounds: Vec<TruncationBound>, tol: f64) -> NormReport {
    let d_x = object_dim(backend, x);
    let slack = 1e-9_f64.max(tol);
    let monotone = bounds.windows(2).all(|w| w[1].compressed >= w[0].compressed - slack * w[0].compressed.max(1.0));
    // A bound for a smaller truncation is also a bound for any larger one.
    let mut run = 0.0_f64;
    for b in &mut bounds {
        run = run.max(b.compressed);
        b.compressed = run;
    }
    let best = bounds.iter().map(|b| b.compressed).fold(0.0, f64::max);
    let converged = bounds.len() >= 2 && {
        let k = bounds.len();
        (bounds[k - 1].compressed - bounds[k - 2].compressed).abs() < tol
    } || (backend.is_finite() && bounds.last().is_some_and(|b| Some(b.n) == backend.size()));
    let within_dimension = bounds.iter().all(|b| b.compressed <= d_x + 1e-9 && b.column <= d_x + 1e-9);
    NormReport { backend: backend.name(), d_x, bounds, best, monotone, converged, within_dimension }
}

fn check_schedule(schedule: &[usize]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::Input("truncation schedule is empty".into()));
    }
    if schedule.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Input("truncations must be strictly increasing".into()));
    }
    Ok(())
}

/// Lower bounds `‖P_n Γ_X P_n‖` for each truncation size in `schedule`.
pub fn fusion_matrix_norm(backend: &dyn IrrBackend, x: &BTreeMap<usize, usize>, schedule: &[usize], tol: f64) -> Result<NormReport> {
    check_schedule(schedule)?;
    let mut bounds = vec![];
    for &n in schedule {
        let g = fusion_matrix(backend, x, n);
        let (compressed, column, method) = explicit_bounds(&g);
        bounds.push(TruncationBound { n: g.n, radius: None, compressed, column, method });
    }
    Ok(finish(backend, x, bounds, tol))
}

/// As [`fusion_matrix_norm`] on complete word-length balls, using the
/// backend's radial reduction when it has one.
pub fn fusion_matrix_norm_balls(backend: &dyn IrrBackend, x: &BTreeMap<usize, usize>, radii: &[usize], tol: f64) -> Result<NormReport> {
    check_schedule(radii)?;
    let xv: Vec<(usize, usize)> = x.iter().map(|(&s, &m)| (s, m)).collect();
    let mut bounds = vec![];
    for &r in radii {
        let n = backend.ball_size(r);
        if let Some((compressed, column)) = backend.radial_bounds(&xv, r) {
            bounds.push(TruncationBound { n, radius: Some(r), compressed, column, method: "radial" });
        } else {
            let g = fusion_matrix(backend, x, n);
            let (compressed, column, method) = explicit_bounds(&g);
            bounds.push(TruncationBound { n: g.n, radius: Some(r), compressed, column, method });
        }
    }
    Ok(finish(backend, x, bounds, tol))
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub enum Verdict {
    AmenableConsistent,
    GapFound,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmenabilityVerdict {
    pub verdict: Verdict,
    pub d_x: f64,
    pub best_bound: f64,
    pub gap: f64,
    /// True when the truncation covers a finite ring entirely.
    pub definitive: bool,
    pub norms: NormReport,
}

pub fn amenability_report(backend: &dyn IrrBackend, x: &BTreeMap<usize, usize>, schedule: &[usize], tol: f64) -> Result<AmenabilityVerdict> {
    let norms = fusion_matrix_norm(backend, x, schedule, tol)?;
    Ok(verdict_from(backend, norms, tol))
}

pub fn verdict_from(backend: &dyn IrrBackend, norms: NormReport, tol: f64) -> AmenabilityVerdict {
    let gap = (norms.d_x - norms.best).max(0.0);
    let definitive = backend.is_finite() && norms.bounds.last().is_some_and(|b| Some(b.n) == backend.size());
    let verdict = if gap < tol { Verdict::AmenableConsistent } else { Verdict::GapFound };
    AmenabilityVerdict { verdict, d_x: norms.d_x, best_bound: norms.best, gap, definitive, norms }
}
