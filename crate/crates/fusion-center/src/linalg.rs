//! Dense and iterative linear-algebra helpers over complex matrices.

use crate::C64;
use nalgebra::{DMatrix, DVector};

pub type CMat = DMatrix<C64>;

pub fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Largest entry modulus, 0 for empty matrices.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn herm_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (vec![], zeros(0, 0));
    }
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = zeros(n, n);
    for (k, &i) in idx.iter().enumerate() {
        vecs.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, vecs)
}

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let g = if m.nrows() >= m.ncols() { m.adjoint() * m } else { m * m.adjoint() };
    let (vals, _) = herm_eigen(&g);
    vals.last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Apply `f` to the spectrum of a Hermitian matrix.
pub fn herm_fn(m: &CMat, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = herm_eigen(m);
    let n = vals.len();
    let mut d = zeros(n, n);
    for (i, v) in vals.iter().enumerate() {
        d[(i, i)] = C64::new(f(*v), 0.0);
    }
    &vecs * d * vecs.adjoint()
}

/// Orthonormal basis of the kernel of `a`, as columns.
///
/// A singular value counts as zero when it is below `tol * max(1, largest)`.
pub fn null_space(a: &CMat, tol: f64) -> CMat {
    let n = a.ncols();
    if n == 0 {
        return zeros(0, 0);
    }
    if a.nrows() == 0 {
        return eye(n);
    }
    let padded = if a.nrows() < n {
        let mut p = zeros(n, n);
        p.rows_mut(0, a.nrows()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("v_t requested");
    let top = svd.singular_values.iter().cloned().fold(0.0, f64::max).max(1.0);
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] <= tol * top).collect();
    let mut out = zeros(n, keep.len());
    for (k, &i) in keep.iter().enumerate() {
        for j in 0..n {
            out[(j, k)] = vt[(i, j)].conj();
        }
    }
    out
}

/// Gram-Schmidt on columns in place; columns that vanish are dropped.
pub fn orthonormalize(m: &mut CMat) {
    let mut cols: Vec<DVector<C64>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v: DVector<C64> = m.column(j).into_owned();
        for _ in 0..2 {
            for u in &cols {
                let p = u.dotc(&v);
                v -= u * p;
            }
        }
        let nv = v.norm();
        if nv > 1e-12 {
            cols.push(v / C64::new(nv, 0.0));
        }
    }
    let mut out = zeros(m.nrows(), cols.len());
    for (k, c) in cols.iter().enumerate() {
        out.set_column(k, c);
    }
    *m = out;
}

/// Rotate each column so that its largest-modulus entry is real and positive.
pub fn fix_column_phases(m: &mut CMat) {
    for j in 0..m.ncols() {
        let mut best = C64::new(0.0, 0.0);
        for i in 0..m.nrows() {
            if m[(i, j)].norm() > best.norm() + 1e-12 {
                best = m[(i, j)];
            }
        }
        if best.norm() > 0.0 {
            let ph = best.conj() / best.norm();
            for i in 0..m.nrows() {
                m[(i, j)] *= ph;
            }
        }
    }
}

/// Isometry onto the range of a projection (eigenvalues above 1/2).
pub fn range_isometry(p: &CMat) -> CMat {
    let (vals, vecs) = herm_eigen(p);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.5).collect();
    let mut out = zeros(p.nrows(), keep.len());
    for (k, &i) in keep.iter().enumerate() {
        out.set_column(k, &vecs.column(i));
    }
    fix_column_phases(&mut out);
    out
}

/// Isometry onto the eigenvectors of a positive matrix above `cut`.
pub fn support_isometry(p: &CMat, cut: f64) -> CMat {
    let (vals, vecs) = herm_eigen(p);
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > cut).collect();
    let mut out = zeros(p.nrows(), keep.len());
    for (k, &i) in keep.iter().enumerate() {
        out.set_column(k, &vecs.column(i));
    }
    fix_column_phases(&mut out);
    out
}

/// Top eigenvalue of a real symmetric operator by Lanczos with full
/// reorthogonalisation. The returned Ritz value is a lower bound for the
/// largest eigenvalue.
pub fn lanczos_top(n: usize, steps: usize, seed_vec: &[f64], apply: impl Fn(&[f64], &mut [f64])) -> f64 {
    let m = steps.min(n).max(1);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut q = seed_vec.to_vec();
    let nq = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q.iter_mut().for_each(|x| *x /= nq);
    let mut alpha = Vec::with_capacity(m);
    let mut beta: Vec<f64> = Vec::with_capacity(m);
    let mut w = vec![0.0; n];
    for k in 0..m {
        apply(&q, &mut w);
        let a: f64 = w.iter().zip(&q).map(|(x, y)| x * y).sum();
        alpha.push(a);
        basis.push(q.clone());
        for _ in 0..2 {
            for b in &basis {
                let c: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let bn = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if k + 1 == m || bn < 1e-13 {
            break;
        }
        beta.push(bn);
        q = w.iter().map(|x| x / bn).collect();
    }
    let k = alpha.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        t[(i, i)] = alpha[i];
        if i + 1 < k {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    t.symmetric_eigenvalues().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// Largest eigenvalue of a real symmetric dense matrix.
pub fn real_sym_top(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.symmetric_eigenvalues().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
}

/// Stack matrices vertically into one column vector (column-major per block).
pub fn flatten(blocks: &[&CMat]) -> DVector<C64> {
    let total: usize = blocks.iter().map(|b| b.len()).sum();
    let mut v = DVector::zeros(total);
    let mut k = 0;
    for b in blocks {
        for z in b.iter() {
            v[k] = *z;
            k += 1;
        }
    }
    v
}
