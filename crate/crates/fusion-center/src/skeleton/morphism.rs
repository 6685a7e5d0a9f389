use super::{ObjectExpr, SkeletalCategory, Word};
use crate::linalg::{eye, max_abs, spectral_norm, zeros, CMat};
use crate::{Error, Result, C64};
use rand::{Rng, RngExt};
use std::ops::{Add, Mul, Sub};

/// A morphism between tensor words, stored as one matrix per simple root `r`
/// acting between the multiplicity spaces in the left-associated tree basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub source: Word,
    pub target: Word,
    pub blocks: Vec<CMat>,
}

impl Morphism {
    pub fn dagger(&self) -> Morphism {
        Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// `self ∘ g`; requires `g.target == self.source`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if g.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose: inner target has {} factors, outer source has {}",
                g.target.len(),
                self.source.len()
            )));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (r, (a, b)) in self.blocks.iter().zip(&g.blocks).enumerate() {
            if a.ncols() != b.nrows() {
                return Err(Error::Shape(format!("block {r}: {}x{} after {}x{}", a.nrows(), a.ncols(), b.nrows(), b.ncols())));
            }
            blocks.push(a * b);
        }
        Ok(Morphism { source: g.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn scale(&self, z: C64) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks: self.blocks.iter().map(|b| b * z).collect() }
    }

    pub fn scale_re(&self, x: f64) -> Morphism {
        self.scale(C64::new(x, 0.0))
    }

    fn same_shape(&self, o: &Morphism) -> bool {
        self.source == o.source
            && self.target == o.target
            && self.blocks.iter().zip(&o.blocks).all(|(a, b)| a.shape() == b.shape())
    }

    pub fn try_add(&self, o: &Morphism) -> Result<Morphism> {
        if !self.same_shape(o) {
            return Err(Error::Shape("cannot add morphisms with different source/target".into()));
        }
        Ok(Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a + b).collect(),
        })
    }

    /// Largest entry modulus over all blocks.
    pub fn max_abs(&self) -> f64 {
        self.blocks.iter().map(max_abs).fold(0.0, f64::max)
    }

    /// Largest entry modulus of the difference; infinite when the shapes differ.
    pub fn dist(&self, o: &Morphism) -> f64 {
        if !self.same_shape(o) {
            return f64::INFINITY;
        }
        self.blocks.iter().zip(&o.blocks).map(|(a, b)| max_abs(&(a - b))).fold(0.0, f64::max)
    }

    /// Operator norm: the largest spectral norm of a block.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(spectral_norm).fold(0.0, f64::max)
    }

    /// Operator-norm distance.
    pub fn op_dist(&self, o: &Morphism) -> f64 {
        if !self.same_shape(o) {
            return f64::INFINITY;
        }
        (self - o).norm()
    }

    /// The scalar carried by a morphism between unit-like words.
    pub fn scalar(&self, unit: usize) -> C64 {
        let b = &self.blocks[unit];
        if b.nrows() == 1 && b.ncols() == 1 { b[(0, 0)] } else { C64::new(0.0, 0.0) }
    }

    /// Total number of matrix entries.
    pub fn param_count(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    /// Entries of all blocks in a fixed order.
    pub fn to_vec(&self) -> Vec<C64> {
        self.blocks.iter().flat_map(|b| b.iter().copied()).collect()
    }

    /// Inverse of [`Morphism::to_vec`] with the same shape as `self`.
    pub fn with_vec(&self, v: &[C64]) -> Morphism {
        let mut out = self.clone();
        let mut k = 0;
        for b in out.blocks.iter_mut() {
            for z in b.iter_mut() {
                *z = v[k];
                k += 1;
            }
        }
        out
    }

    /// Hilbert-Schmidt inner product of block entries.
    pub fn hs_inner(&self, o: &Morphism) -> C64 {
        self.blocks.iter().zip(&o.blocks).map(|(a, b)| b.dotc(a)).sum()
    }
}

impl Mul<&Morphism> for &Morphism {
    type Output = Morphism;
    fn mul(self, g: &Morphism) -> Morphism {
        self.compose(g).expect("composition shape mismatch")
    }
}

impl Add<&Morphism> for &Morphism {
    type Output = Morphism;
    fn add(self, g: &Morphism) -> Morphism {
        self.try_add(g).expect("addition shape mismatch")
    }
}

impl Sub<&Morphism> for &Morphism {
    type Output = Morphism;
    fn sub(self, g: &Morphism) -> Morphism {
        self.try_add(&g.scale_re(-1.0)).expect("subtraction shape mismatch")
    }
}

/// Offsets of the product basis `⊕_{c,d,μ} V_c ⊗ W_d ⊗ C^{N_{cd}^r}` for each root `r`.
pub(crate) struct PairLayout {
    k: usize,
    pub dims: Vec<usize>,
    off: Vec<usize>,
}

impl PairLayout {
    pub(crate) fn new(cat: &SkeletalCategory, dx: &[usize], dy: &[usize]) -> Self {
        let k = cat.rank();
        let mut dims = vec![0; k];
        let mut off = vec![usize::MAX; k * k * k];
        for r in 0..k {
            for c in 0..k {
                if dx[c] == 0 {
                    continue;
                }
                for d in 0..k {
                    let n = cat.n(c, d, r);
                    if dy[d] == 0 || n == 0 {
                        continue;
                    }
                    off[(r * k + c) * k + d] = dims[r];
                    dims[r] += dx[c] * dy[d] * n;
                }
            }
        }
        PairLayout { k, dims, off }
    }

    #[inline]
    pub(crate) fn off(&self, r: usize, c: usize, d: usize) -> usize {
        self.off[(r * self.k + c) * self.k + d]
    }
}

impl SkeletalCategory {
    pub fn identity(&self, w: &Word) -> Morphism {
        let dims = self.word_dims(w);
        Morphism { source: w.clone(), target: w.clone(), blocks: dims.iter().map(|&n| eye(n)).collect() }
    }

    pub fn zero(&self, source: &Word, target: &Word) -> Morphism {
        let ds = self.word_dims(source);
        let dt = self.word_dims(target);
        Morphism { source: source.clone(), target: target.clone(), blocks: ds.iter().zip(&dt).map(|(&s, &t)| zeros(t, s)).collect() }
    }

    /// Wrap blocks after checking their shapes against the multiplicity counts.
    pub fn morphism(&self, source: &Word, target: &Word, blocks: Vec<CMat>) -> Result<Morphism> {
        let ds = self.word_dims(source);
        let dt = self.word_dims(target);
        if blocks.len() != self.rank() {
            return Err(Error::Shape(format!("expected {} blocks, got {}", self.rank(), blocks.len())));
        }
        for r in 0..self.rank() {
            if blocks[r].shape() != (dt[r], ds[r]) {
                return Err(Error::Shape(format!(
                    "block '{}' has shape {:?}, expected {:?}",
                    self.label(r),
                    blocks[r].shape(),
                    (dt[r], ds[r])
                )));
            }
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), blocks })
    }

    /// Identity blocks between two words with equal multiplicity counts.
    pub fn regroup(&self, source: &Word, target: &Word) -> Result<Morphism> {
        let ds = self.word_dims(source);
        let dt = self.word_dims(target);
        if ds != dt {
            return Err(Error::Shape("regrouping requires equal multiplicities".into()));
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), blocks: ds.iter().map(|&n| eye(n)).collect() })
    }

    /// Scalar multiple of the identity on the unit word.
    pub fn scalar(&self, z: C64) -> Morphism {
        self.identity(&Word::unit()).scale(z)
    }

    /// The isometry `U_r → w` picking out the `idx`-th tree basis vector at root `r`.
    pub fn tree_vector(&self, w: &Word, r: usize, idx: usize) -> Morphism {
        let mut m = self.zero(&self.simple(r), w);
        m.blocks[r][(idx, 0)] = C64::new(1.0, 0.0);
        m
    }

    /// The `idx`-th orthonormal basis vector of `Mor(1, w)`.
    pub fn unit_vector(&self, w: &Word, idx: usize) -> Morphism {
        let mut m = self.zero(&Word::unit(), w);
        m.blocks[self.unit()][(idx, 0)] = C64::new(1.0, 0.0);
        m
    }

    /// The inclusion of the `i`-th copy of `U_a` into the single-factor word `[A]`.
    pub fn inclusion(&self, a_obj: &ObjectExpr, a: usize, i: usize) -> Morphism {
        let w = Word::single(a_obj.clone());
        let mut m = self.zero(&self.simple(a), &w);
        m.blocks[a][(i, 0)] = C64::new(1.0, 0.0);
        m
    }

    /// Projection onto the isotypic component of `U_r` in `w`.
    pub fn isotypic_projection(&self, w: &Word, r: usize) -> Morphism {
        let mut m = self.zero(w, w);
        let n = m.blocks[r].nrows();
        m.blocks[r] = eye(n);
        m
    }

    /// Morphism with independent standard complex Gaussian-like entries.
    pub fn random_morphism<R: Rng>(&self, source: &Word, target: &Word, rng: &mut R) -> Morphism {
        let mut m = self.zero(source, target);
        for b in m.blocks.iter_mut() {
            for z in b.iter_mut() {
                *z = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            }
        }
        m
    }

    /// `f ⊗ g`, re-expressed in the left-associated basis of the concatenated words.
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let k = self.rank();
        let dx = self.word_dims(&f.source);
        let dy = self.word_dims(&f.target);
        let dw = self.word_dims(&g.source);
        let dv = self.word_dims(&g.target);
        let ls = PairLayout::new(self, &dx, &dw);
        let lt = PairLayout::new(self, &dy, &dv);
        let mut kron: Vec<CMat> = (0..k).map(|r| zeros(lt.dims[r], ls.dims[r])).collect();
        for r in 0..k {
            for c in 0..k {
                for d in 0..k {
                    let n = self.n(c, d, r);
                    if n == 0 || dx[c] * dw[d] == 0 || dy[c] * dv[d] == 0 {
                        continue;
                    }
                    let (os, ot) = (ls.off(r, c, d), lt.off(r, c, d));
                    let (fc, gd) = (&f.blocks[c], &g.blocks[d]);
                    for x in 0..dx[c] {
                        for y in 0..dy[c] {
                            let fy = fc[(y, x)];
                            if fy == C64::new(0.0, 0.0) {
                                continue;
                            }
                            for w in 0..dw[d] {
                                for v in 0..dv[d] {
                                    let z = fy * gd[(v, w)];
                                    for mu in 0..n {
                                        kron[r][(ot + (y * dv[d] + v) * n + mu, os + (x * dw[d] + w) * n + mu)] = z;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let us = self.assoc_u(&dx, &g.source);
        let ut = self.assoc_u(&dy, &g.target);
        let blocks = (0..k)
            .map(|r| {
                let mut m = kron[r].clone();
                if let Some(u) = &ut {
                    m = &u[r] * m;
                }
                if let Some(u) = &us {
                    m *= u[r].adjoint();
                }
                m
            })
            .collect();
        Morphism { source: f.source.concat(&g.source), target: f.target.concat(&g.target), blocks }
    }

    /// Tensor product of several morphisms, left to right.
    pub fn tensor_all(&self, fs: &[&Morphism]) -> Morphism {
        let mut acc = fs[0].clone();
        for f in &fs[1..] {
            acc = self.tensor(&acc, f);
        }
        acc
    }

    /// Unitary from the split basis of `X ⊗ W` (tree of `X`, tree of `W`,
    /// joining vertex) to the left-associated basis of the concatenated word.
    /// `X` enters only through its multiplicity counts `dx`. `None` is the identity.
    fn assoc_u(&self, dx: &[usize], w: &Word) -> Option<Vec<CMat>> {
        if w.len() <= 1 {
            return None;
        }
        let k = self.rank();
        let fsym = self.fsym.as_ref().expect("tensor products of words need F-symbols");
        let wp = w.prefix(w.len() - 1);
        let a_obj = &w.0[w.len() - 1];
        let na = &a_obj.mult;
        let uprev = self.assoc_u(dx, &wp);
        let dwp = self.word_dims(&wp);
        let dw = self.word_dims(w);
        let split_prev = PairLayout::new(self, dx, &dwp);
        let left_new = PairLayout::new(self, &split_prev.dims, na);
        let split_new = PairLayout::new(self, dx, &dw);
        let wlay = PairLayout::new(self, &dwp, na);
        let mut out: Vec<CMat> = (0..k).map(|r| zeros(left_new.dims[r], split_new.dims[r])).collect();
        for r in 0..k {
            for c in 0..k {
                if dx[c] == 0 {
                    continue;
                }
                for d in 0..k {
                    let ncd = self.n(c, d, r);
                    if ncd == 0 || dw[d] == 0 {
                        continue;
                    }
                    for dp in 0..k {
                        if dwp[dp] == 0 {
                            continue;
                        }
                        for a in 0..k {
                            let nda = self.n(dp, a, d);
                            if nda == 0 || na[a] == 0 {
                                continue;
                            }
                            let Some(blk) = fsym.block(c, dp, a, r) else { continue };
                            for nu in 0..nda {
                                for mu in 0..ncd {
                                    let Some(j) = blk.col(d, nu, mu) else { continue };
                                    for (i, &(e, kappa, lambda)) in blk.left.iter().enumerate() {
                                        let coef = blk.mat[(i, j)].conj();
                                        if coef == C64::new(0.0, 0.0) {
                                            continue;
                                        }
                                        let nce = self.n(c, dp, e);
                                        let nea = self.n(e, a, r);
                                        let de = split_prev.dims[e];
                                        for x in 0..dx[c] {
                                            for wq in 0..dwp[dp] {
                                                for ia in 0..na[a] {
                                                    let wi = wlay.off(d, dp, a) + (wq * na[a] + ia) * nda + nu;
                                                    let scol = split_new.off(r, c, d) + (x * dw[d] + wi) * ncd + mu;
                                                    let sprev = split_prev.off(e, c, dp) + (x * dwp[dp] + wq) * nce + kappa;
                                                    let base = left_new.off(r, e, a);
                                                    match &uprev {
                                                        Some(u) => {
                                                            for y in 0..de {
                                                                let val = u[e][(y, sprev)];
                                                                if val != C64::new(0.0, 0.0) {
                                                                    let row = base + (y * na[a] + ia) * nea + lambda;
                                                                    out[r][(row, scol)] += coef * val;
                                                                }
                                                            }
                                                        }
                                                        None => {
                                                            let row = base + (sprev * na[a] + ia) * nea + lambda;
                                                            out[r][(row, scol)] += coef;
                                                        }
                                                    }
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Some(out)
    }
}
