use crate::linalg::{null_space, zeros, CMat};
use crate::skeleton::Morphism;
use crate::C64;

/// Basis of `{T : constraints(T) = 0}` for `T` shaped like `template`.
/// `constraints` must be linear in `T`.
pub fn solution_space(template: &Morphism, constraints: impl Fn(&Morphism) -> Vec<C64>, tol: f64) -> Vec<Morphism> {
    let n = template.param_count();
    if n == 0 {
        return vec![];
    }
    let a = constraint_matrix(template, &constraints);
    if a.nrows() == 0 {
        return (0..n).map(|i| unit(template, i)).collect();
    }
    let ker = null_space(&a, tol);
    (0..ker.ncols()).map(|j| template.with_vec(ker.column(j).as_slice())).collect()
}

/// Matrix of a linear map on morphisms shaped like `template`, one column per entry.
pub fn constraint_matrix(template: &Morphism, f: &impl Fn(&Morphism) -> Vec<C64>) -> CMat {
    let n = template.param_count();
    let cols: Vec<Vec<C64>> = (0..n).map(|i| f(&unit(template, i))).collect();
    let rows = cols.first().map_or(0, |c| c.len());
    let mut a = zeros(rows, n);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            a[(i, j)] = *z;
        }
    }
    a
}

/// Numerical rank of a linear map between morphism spaces.
pub fn map_rank(template: &Morphism, f: impl Fn(&Morphism) -> Vec<C64>, tol: f64) -> usize {
    let a = constraint_matrix(template, &f);
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    a.ncols() - null_space(&a, tol).ncols()
}

fn unit(template: &Morphism, i: usize) -> Morphism {
    let mut v = vec![C64::new(0.0, 0.0); template.param_count()];
    v[i] = C64::new(1.0, 0.0);
    template.with_vec(&v)
}

/// Entries of `a − b`.
pub fn diff(a: &Morphism, b: &Morphism) -> Vec<C64> {
    a.to_vec().iter().zip(b.to_vec()).map(|(x, y)| x - y).collect()
}
