use super::FusionRules;
use crate::linalg::{zeros, CMat};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Recoupling convention used throughout: a left-associated tree vector
/// `|((ab)_e^μ c)_d^ν⟩` equals `Σ_{f,ρ,σ} F^{abc}_d[(e,μ,ν),(f,ρ,σ)] |(a(bc)_f^ρ)_d^σ⟩`.
pub const CONVENTION: &str = "left-to-right:((ab)_e c)_d=sum_f F[e,f](a(bc)_f)_d;unitary;unit-legs-trivial";

/// One F-symbol entry as stored in category files.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub e: String,
    pub f: String,
    #[serde(default)]
    pub mu: usize,
    #[serde(default)]
    pub nu: usize,
    #[serde(default)]
    pub rho: usize,
    #[serde(default)]
    pub sigma: usize,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

/// The recoupling matrix `F^{abc}_d` between the two tree bases of `Hom(d, a⊗b⊗c)`.
#[derive(Clone, Debug)]
pub struct FBlock {
    /// Rows: `(e, μ, ν)` with `μ < N_{ab}^e`, `ν < N_{ec}^d`.
    pub left: Vec<(usize, usize, usize)>,
    /// Columns: `(f, ρ, σ)` with `ρ < N_{bc}^f`, `σ < N_{af}^d`.
    pub right: Vec<(usize, usize, usize)>,
    pub mat: CMat,
    left_pos: HashMap<(usize, usize, usize), usize>,
    right_pos: HashMap<(usize, usize, usize), usize>,
}

impl FBlock {
    fn empty(rules: &FusionRules, a: usize, b: usize, c: usize, d: usize) -> Self {
        let k = rules.rank();
        let mut left = vec![];
        let mut right = vec![];
        for e in 0..k {
            for mu in 0..rules.n(a, b, e) {
                for nu in 0..rules.n(e, c, d) {
                    left.push((e, mu, nu));
                }
            }
        }
        for f in 0..k {
            for rho in 0..rules.n(b, c, f) {
                for sigma in 0..rules.n(a, f, d) {
                    right.push((f, rho, sigma));
                }
            }
        }
        let left_pos = left.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let right_pos = right.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        FBlock { mat: zeros(left.len(), right.len()), left, right, left_pos, right_pos }
    }

    pub fn row(&self, e: usize, mu: usize, nu: usize) -> Option<usize> {
        self.left_pos.get(&(e, mu, nu)).copied()
    }

    pub fn col(&self, f: usize, rho: usize, sigma: usize) -> Option<usize> {
        self.right_pos.get(&(f, rho, sigma)).copied()
    }
}

/// Sparse table of F-symbols keyed by `(a, b, c, d)`.
#[derive(Clone, Debug)]
pub struct FSymbolTable {
    pub convention: String,
    blocks: HashMap<(usize, usize, usize, usize), FBlock>,
}

impl FSymbolTable {
    /// All admissible blocks, initialised to zero.
    pub fn zero(rules: &FusionRules, convention: &str) -> Self {
        let k = rules.rank();
        let mut blocks = HashMap::new();
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for d in 0..k {
                        let blk = FBlock::empty(rules, a, b, c, d);
                        if !blk.left.is_empty() || !blk.right.is_empty() {
                            blocks.insert((a, b, c, d), blk);
                        }
                    }
                }
            }
        }
        FSymbolTable { convention: convention.to_string(), blocks }
    }

    /// Multiplicity-free table from a closure `(a,b,c,d,e,f) ↦ F`.
    pub fn from_fn(rules: &FusionRules, f: impl Fn(usize, usize, usize, usize, usize, usize) -> C64) -> Self {
        let mut t = Self::zero(rules, CONVENTION);
        for ((a, b, c, d), blk) in t.blocks.iter_mut() {
            for (i, &(e, _, _)) in blk.left.iter().enumerate() {
                for (j, &(ff, _, _)) in blk.right.iter().enumerate() {
                    blk.mat[(i, j)] = f(*a, *b, *c, *d, e, ff);
                }
            }
        }
        t
    }

    /// Parse file entries; an entry outside the admissible index set is an input error.
    pub fn from_entries(rules: &FusionRules, convention: &str, entries: &[FEntry]) -> Result<Self> {
        let mut t = Self::zero(rules, convention);
        for en in entries {
            let ix = |s: &str| rules.index(s);
            let key = (ix(&en.a)?, ix(&en.b)?, ix(&en.c)?, ix(&en.d)?);
            let (e, f) = (ix(&en.e)?, ix(&en.f)?);
            let tag = format!("F[{},{},{},{}; e={}, f={}; {},{},{},{}]", en.a, en.b, en.c, en.d, en.e, en.f, en.mu, en.nu, en.rho, en.sigma);
            let blk = t.blocks.get_mut(&key).ok_or_else(|| Error::Input(format!("inadmissible F-symbol key {tag}")))?;
            let i = blk.row(e, en.mu, en.nu).ok_or_else(|| Error::Input(format!("inadmissible left index in {tag}")))?;
            let j = blk.col(f, en.rho, en.sigma).ok_or_else(|| Error::Input(format!("inadmissible right index in {tag}")))?;
            if blk.left.len() != blk.right.len() {
                return Err(Error::Input(format!("non-square F block at {tag}")));
            }
            blk.mat[(i, j)] = C64::new(en.re, en.im);
        }
        Ok(t)
    }

    /// Every nonzero entry, for serialisation.
    pub fn entries(&self, rules: &FusionRules) -> Vec<FEntry> {
        let mut keys: Vec<_> = self.blocks.keys().copied().collect();
        keys.sort();
        let mut out = vec![];
        for key in keys {
            let blk = &self.blocks[&key];
            for (i, &(e, mu, nu)) in blk.left.iter().enumerate() {
                for (j, &(f, rho, sigma)) in blk.right.iter().enumerate() {
                    let z = blk.mat[(i, j)];
                    if z.norm() == 0.0 {
                        continue;
                    }
                    let l = |s: usize| rules.label(s).to_string();
                    out.push(FEntry {
                        a: l(key.0), b: l(key.1), c: l(key.2), d: l(key.3), e: l(e), f: l(f),
                        mu, nu, rho, sigma, re: z.re, im: z.im,
                    });
                }
            }
        }
        out
    }

    pub fn block(&self, a: usize, b: usize, c: usize, d: usize) -> Option<&FBlock> {
        self.blocks.get(&(a, b, c, d))
    }

    pub fn block_mut(&mut self, a: usize, b: usize, c: usize, d: usize) -> Option<&mut FBlock> {
        self.blocks.get_mut(&(a, b, c, d))
    }

    pub fn keys(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut k: Vec<_> = self.blocks.keys().copied().collect();
        k.sort();
        k
    }

    /// Single entry, zero when absent.
    #[allow(clippy::too_many_arguments)]
    pub fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize, f: usize, mu: usize, nu: usize, rho: usize, sigma: usize) -> C64 {
        match self.blocks.get(&(a, b, c, d)) {
            Some(blk) => match (blk.row(e, mu, nu), blk.col(f, rho, sigma)) {
                (Some(i), Some(j)) => blk.mat[(i, j)],
                _ => C64::new(0.0, 0.0),
            },
            None => C64::new(0.0, 0.0),
        }
    }
}
