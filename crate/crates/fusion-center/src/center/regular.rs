//! The regular half-braided object `Z_reg = ⊕_s U_s ⊗ Ū_s`.

use super::HalfBraidedObject;
use crate::linalg::{eye, CMat};
use crate::skeleton::{Morphism, ObjectExpr, SkeletalCategory, Word};
use crate::{Error, Result, C64};

/// A finite window `⊕_{s∈S} U_s ⊗ Ū_s` flattened into one factor `Z_f`.
///
/// At root `r` the multiplicity space of `Z_f` lists, for `s` in window
/// order, the `N_{s s̄}^r` tree vectors of `U_s ⊗ Ū_s`.
#[derive(Clone, Debug)]
pub struct RegularSpace {
    pub labels: Vec<usize>,
    pub object: ObjectExpr,
    pub word: Word,
    /// `offsets[i][r]`: first row of label `labels[i]` at root `r`.
    pub offsets: Vec<Vec<usize>>,
}

impl RegularSpace {
    pub fn new(cat: &SkeletalCategory, labels: &[usize]) -> Result<Self> {
        let k = cat.rank();
        let mut seen = vec![false; k];
        for &s in labels {
            if s >= k || seen[s] {
                return Err(Error::Input(format!("window labels must be distinct labels below {k}")));
            }
            seen[s] = true;
        }
        let mut mult = vec![0; k];
        let mut offsets = Vec::with_capacity(labels.len());
        for &s in labels {
            offsets.push(mult.clone());
            for (r, m) in mult.iter_mut().enumerate() {
                *m += cat.n(s, cat.dual(s), r);
            }
        }
        let object = ObjectExpr { mult };
        Ok(RegularSpace { labels: labels.to_vec(), word: Word::single(object.clone()), object, offsets })
    }

    pub fn full(cat: &SkeletalCategory) -> Self {
        Self::new(cat, &(0..cat.rank()).collect::<Vec<_>>()).expect("all labels")
    }

    pub fn position(&self, s: usize) -> Option<usize> {
        self.labels.iter().position(|&x| x == s)
    }

    pub fn pair_word(cat: &SkeletalCategory, s: usize) -> Word {
        cat.simples(&[s, cat.dual(s)])
    }

    /// The isometry `J_s : U_s ⊗ Ū_s → Z_f`.
    pub fn embed(&self, cat: &SkeletalCategory, s: usize) -> Morphism {
        let i = self.position(s).expect("label inside the window");
        let src = Self::pair_word(cat, s);
        let mut m = cat.zero(&src, &self.word);
        for r in 0..cat.rank() {
            let n = cat.n(s, cat.dual(s), r);
            for a in 0..n {
                m.blocks[r][(self.offsets[i][r] + a, a)] = C64::new(1.0, 0.0);
            }
        }
        m
    }

    /// Index of `ξ_s = d_s^{-1/2} R̄_s` in the basis of `Mor(1, Z_f)`.
    pub fn xi_index(&self, cat: &SkeletalCategory, s: usize) -> usize {
        self.offsets[self.position(s).expect("label inside the window")][cat.unit()]
    }

    /// Assemble `Σ_{s,t} J_s B_{st} J_t*` from blocks `B_{st} : U_t Ū_t → U_s Ū_s`.
    pub fn assemble(&self, cat: &SkeletalCategory, block: impl Fn(usize, usize) -> Morphism) -> Morphism {
        let mut acc = cat.zero(&self.word, &self.word);
        for &s in &self.labels {
            let js = self.embed(cat, s);
            for &t in &self.labels {
                let b = block(s, t);
                acc = &acc + &(&(&js * &b) * &self.embed(cat, t).dagger());
            }
        }
        acc
    }
}

/// `c_{X,ts}` from the isometries `u^α : U_t → X ⊗ U_s`:
/// `(d_s/d_t)^{1/2} Σ_α (u^{α*} ⊗ u^{α∨} ⊗ ι_X)(ι_{X s s̄} ⊗ R_X)`.
///
/// `mix` replaces the tree basis `u^α` by `Σ_α mix[α,β] u^α`.
pub fn regular_block_with_basis(cat: &SkeletalCategory, x: &Word, t: usize, s: usize, mix: Option<&CMat>) -> Morphism {
    let sw = cat.simple(s);
    let xs = x.concat(&sw);
    let src = Word::cat(&[x, &sw, &cat.simple(cat.dual(s))]);
    let tgt = Word::cat(&[&RegularSpace::pair_word(cat, t), x]);
    let n = cat.word_dims(&xs)[t];
    let mut acc = cat.zero(&src, &tgt);
    if n == 0 {
        return acc;
    }
    let lift = cat.tensor(&cat.identity(&src), &cat.std_r(x));
    let ix = cat.identity(x);
    let basis: Vec<Morphism> = (0..n).map(|a| cat.tree_vector(&xs, t, a)).collect();
    for b in 0..n {
        let u = match mix {
            None => basis[b].clone(),
            Some(m) => basis.iter().enumerate().fold(cat.zero(&cat.simple(t), &xs), |acc, (a, v)| &acc + &v.scale(m[(a, b)])),
        };
        let uv = cat.dual_morphism(&u);
        let term = &cat.tensor_all(&[&u.dagger(), &uv, &ix]) * &lift;
        acc = &acc + &term;
    }
    acc.scale_re((cat.d(s) / cat.d(t)).sqrt())
}

pub fn regular_block(cat: &SkeletalCategory, x: &Word, t: usize, s: usize) -> Morphism {
    regular_block_with_basis(cat, x, t, s, None)
}

/// The same block through the unit-isotypic projection of `Ū_p ⊗ X ⊗ U_t`:
/// `(d_p d_t)^{1/2} (ι ⊗ ι ⊗ ι_X ⊗ R̄_t*)(ι_p ⊗ p_e ⊗ ι_t̄)(R̄_p ⊗ ι_X ⊗ ι_t ⊗ ι_t̄)`.
pub fn regular_block_alt(cat: &SkeletalCategory, x: &Word, p: usize, t: usize) -> Morphism {
    let pw = cat.simple(p);
    let pbar = cat.simple(cat.dual(p));
    let tw = cat.simple(t);
    let tbar = cat.simple(cat.dual(t));
    let rbp = cat.std_rbar(&pw);
    let rbt = cat.std_rbar(&tw);
    let mid = Word::cat(&[&pbar, x, &tw]);
    let pe = cat.isotypic_projection(&mid, cat.unit());
    let a = cat.tensor(&rbp, &cat.identity(&Word::cat(&[x, &tw, &tbar])));
    let b = cat.tensor_all(&[&cat.identity(&pw), &pe, &cat.identity(&tbar)]);
    let c = cat.tensor(&cat.identity(&Word::cat(&[&pw, &pbar, x])), &rbt.dagger());
    (&(&c * &b) * &a).scale_re((cat.d(p) * cat.d(t)).sqrt())
}

/// All blocks `c_{X,ts}`, `t` over every label and `s` over the window.
pub fn regular_blocks(cat: &SkeletalCategory, x: &Word, window: &[usize]) -> Vec<Vec<Morphism>> {
    (0..cat.rank()).map(|t| window.iter().map(|&s| regular_block(cat, x, t, s)).collect()).collect()
}

/// `max_{r,s} ‖Σ_t c*_{X,tr} c_{X,ts} − δ_{rs} ι‖` and `max_{t,τ} ‖Σ_s c_{X,ts} c*_{X,τs} − δ ι‖`,
/// the second restricted to rows inside the window.
pub fn block_unitarity_residual(cat: &SkeletalCategory, x: &Word, window: &[usize]) -> (f64, f64) {
    let blocks = regular_blocks(cat, x, window);
    let k = cat.rank();
    let mut iso = 0.0_f64;
    for (i, &r) in window.iter().enumerate() {
        for (j, &s) in window.iter().enumerate() {
            let src = Word::cat(&[x, &RegularSpace::pair_word(cat, s)]);
            let tgt = Word::cat(&[x, &RegularSpace::pair_word(cat, r)]);
            let mut acc = cat.zero(&src, &tgt);
            for row in blocks.iter().take(k) {
                if row[i].max_abs() == 0.0 || row[j].max_abs() == 0.0 {
                    continue;
                }
                acc = &acc + &(&row[i].dagger() * &row[j]);
            }
            let want = if r == s { cat.identity(&src) } else { cat.zero(&src, &tgt) };
            iso = iso.max(acc.dist(&want));
        }
    }
    let mut co = 0.0_f64;
    for &t in window {
        for &tau in window {
            let src = Word::cat(&[&RegularSpace::pair_word(cat, tau), x]);
            let tgt = Word::cat(&[&RegularSpace::pair_word(cat, t), x]);
            let mut acc = cat.zero(&src, &tgt);
            for (j, _) in window.iter().enumerate() {
                acc = &acc + &(&blocks[t][j] * &blocks[tau][j].dagger());
            }
            let want = if t == tau { cat.identity(&src) } else { cat.zero(&src, &tgt) };
            co = co.max(acc.dist(&want));
        }
    }
    (iso, co)
}

/// `max ‖c_{s,te} − δ_{st} d_s^{-1/2}(ι_s ⊗ R_s)‖` over all `s, t`.
pub fn unit_column_residual(cat: &SkeletalCategory) -> f64 {
    let e = cat.unit();
    let ew = RegularSpace::pair_word(cat, e);
    let mut worst = 0.0_f64;
    for s in 0..cat.rank() {
        let sw = cat.simple(s);
        for t in 0..cat.rank() {
            let c = regular_block(cat, &sw, t, e);
            let want = if s == t {
                let rs = cat.std_r(&sw);
                let v = cat.tensor(&cat.identity(&sw), &rs).scale_re(cat.d(s).powf(-0.5));
                // ι_s ⊗ R_s : U_s → U_s Ū_s U_s, read on U_s ⊗ U_e ⊗ Ū_e.
                let into = cat.regroup(&Word::cat(&[&sw, &ew]), &sw).expect("unit legs");
                &v * &into
            } else {
                cat.zero(&c.source, &c.target)
            };
            worst = worst.max(c.dist(&want));
        }
    }
    worst
}

/// `max ‖c_{X,ts}(defining) − c_{X,ts}(projection formula)‖` over all blocks.
pub fn two_formula_residual(cat: &SkeletalCategory, x: &Word) -> f64 {
    let mut worst = 0.0_f64;
    for t in 0..cat.rank() {
        for s in 0..cat.rank() {
            worst = worst.max(regular_block(cat, x, t, s).dist(&regular_block_alt(cat, x, t, s)));
        }
    }
    worst
}

/// `max ‖c_{X⊗Y,ts} − Σ_r (c_{X,tr} ⊗ ι_Y)(ι_X ⊗ c_{Y,rs})‖`, with the left side
/// computed from the defining formula on the word `X ⊗ Y`.
pub fn block_multiplicativity_residual(cat: &SkeletalCategory, x: &Word, y: &Word) -> f64 {
    let xy = x.concat(y);
    let ix = cat.identity(x);
    let iy = cat.identity(y);
    let k = cat.rank();
    let cx: Vec<Vec<Morphism>> = (0..k).map(|t| (0..k).map(|r| regular_block(cat, x, t, r)).collect()).collect();
    let cy: Vec<Vec<Morphism>> = (0..k).map(|r| (0..k).map(|s| regular_block(cat, y, r, s)).collect()).collect();
    let mut worst = 0.0_f64;
    for t in 0..k {
        for s in 0..k {
            let lhs = regular_block(cat, &xy, t, s);
            let mut rhs = cat.zero(&lhs.source, &lhs.target);
            for r in 0..k {
                if cx[t][r].max_abs() == 0.0 || cy[r][s].max_abs() == 0.0 {
                    continue;
                }
                rhs = &rhs + &(&cat.tensor(&cx[t][r], &iy) * &cat.tensor(&ix, &cy[r][s]));
            }
            worst = worst.max(lhs.dist(&rhs));
        }
    }
    worst
}

/// The regular half-braiding on a window, assembled on the flattened object.
///
/// For a window smaller than `Irr`, blocks `c_{x,ts}` with `t` outside the
/// window are dropped and listed in `truncated`.
pub fn regular_half_braiding(cat: &SkeletalCategory, window: &[usize]) -> Result<HalfBraidedObject> {
    cat.require_full()?;
    let space = RegularSpace::new(cat, window)?;
    let mut braid = Vec::with_capacity(cat.rank());
    let mut truncated = vec![];
    for x in 0..cat.rank() {
        let xw = cat.simple(x);
        let src = xw.concat(&space.word);
        let tgt = space.word.concat(&xw);
        let mut c = cat.zero(&src, &tgt);
        for t in 0..cat.rank() {
            for &s in window {
                let b = regular_block(cat, &xw, t, s);
                if space.position(t).is_none() {
                    if b.max_abs() > cat.tol {
                        truncated.push((x, t, s));
                    }
                    continue;
                }
                let left = cat.tensor(&space.embed(cat, t), &cat.identity(&xw));
                let right = cat.tensor(&cat.identity(&xw), &space.embed(cat, s).dagger());
                c = &c + &(&(&left * &b) * &right);
            }
        }
        braid.push(c);
    }
    Ok(HalfBraidedObject { name: "Z_reg".into(), object: space.word.clone(), braid, truncated, regular: Some(space) })
}

/// A Haar-like random unitary of size `n`, from QR of a random matrix.
pub fn random_unitary<R: rand::Rng>(n: usize, rng: &mut R) -> CMat {
    use rand::RngExt;
    if n == 0 {
        return eye(0);
    }
    let m = CMat::from_fn(n, n, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    m.qr().q()
}
