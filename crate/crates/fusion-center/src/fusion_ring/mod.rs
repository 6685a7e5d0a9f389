//! Fusion rings, finite and infinite: the fusion *-algebra, dimension
//! functions, fusion matrices and their truncated norms.

mod backends;
mod element;
mod norms;

pub use backends::{FiniteRing, FreeGroup, IrrBackend, SuTwoLevel, TemperleyLieb, ZxZ};
pub use element::FusionElement;
pub use norms::{amenability_report, fusion_matrix, fusion_matrix_norm, fusion_matrix_norm_balls, verdict_from, AmenabilityVerdict, FusionMatrix, NormReport, TruncationBound, Verdict};

use crate::{Error, Result};
use std::collections::BTreeMap;

/// Parse an object expression such as `tau`, `2*tau + 1` or `a+A+b+B`.
pub fn parse_object(backend: &dyn IrrBackend, expr: &str) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for term in expr.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Input(format!("empty term in object expression '{expr}'")));
        }
        let (m, name) = match term.split_once('*') {
            Some((m, n)) => (m.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad multiplicity in '{term}'")))?, n.trim()),
            None => (1, term),
        };
        let s = backend.index_of(name)?;
        *out.entry(s).or_insert(0) += m;
    }
    Ok(out)
}

/// Perron-Frobenius dimensions over the first `n` labels of a backend.
pub fn dimensions(backend: &dyn IrrBackend, n: usize) -> Result<Vec<(usize, f64)>> {
    let labels = backend.labels(n);
    let mut out = Vec::with_capacity(labels.len());
    for s in labels {
        let d = backend.dim(s);
        if !(d > 0.0) {
            return Err(Error::Numerical(format!("non-positive dimension for label {}", backend.label_name(s))));
        }
        out.push((s, d));
    }
    Ok(out)
}

/// `max |Σ_r N_{st}^r d_r − d_s d_t|` over the first `n` labels, relative to `d_s d_t`.
pub fn dimension_residual(backend: &dyn IrrBackend, n: usize) -> f64 {
    let labels = backend.labels(n);
    let mut worst = (backend.dim(backend.unit()) - 1.0).abs();
    for &s in &labels {
        for &t in &labels {
            let lhs: f64 = backend.products(s, t).iter().map(|&(r, m)| m as f64 * backend.dim(r)).sum();
            let rhs = backend.dim(s) * backend.dim(t);
            if rhs.is_finite() && lhs.is_finite() {
                worst = worst.max((lhs - rhs).abs() / rhs.max(1.0));
            }
        }
    }
    worst
}

/// Fusion-rule invariants restricted to the first `n` labels: unit, duality,
/// unique duals and Frobenius symmetry. Returns the number of violations.
pub fn ring_axiom_violations(backend: &dyn IrrBackend, n: usize) -> usize {
    let labels = backend.labels(n);
    let e = backend.unit();
    let mut bad = 0;
    for &s in &labels {
        if backend.dual(backend.dual(s)) != s {
            bad += 1;
        }
        for &t in &labels {
            if backend.mult(e, t, s) != usize::from(s == t) || backend.mult(t, e, s) != usize::from(s == t) {
                bad += 1;
            }
            if backend.mult(s, t, e) != usize::from(t == backend.dual(s)) {
                bad += 1;
            }
            for (r, m) in backend.products(s, t) {
                if backend.mult(backend.dual(s), r, t) != m || backend.mult(r, backend.dual(t), s) != m {
                    bad += 1;
                }
            }
        }
    }
    bad
}
