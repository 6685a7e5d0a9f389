//! Skeletal data model: fusion rules, F-symbols, pivotal phases, and the
//! morphism calculus on tensor words of simple objects.

mod duality;
mod fsymbols;
pub mod io;
mod morphism;
mod validate;

pub use duality::StandardPair;
pub use fsymbols::{FBlock, FEntry, FSymbolTable, CONVENTION};
pub use morphism::Morphism;
pub use validate::validate_category;

use crate::linalg::CMat;
use crate::{Error, Result, C64};
use nalgebra::DMatrix;

/// Fusion rules `N_{st}^r` over a finite ordered label set.
#[derive(Clone, Debug)]
pub struct FusionRules {
    labels: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    mult: Vec<u32>,
}

impl FusionRules {
    /// Build from `(s, t, r, N)` triples; unlisted triples are zero.
    pub fn new(labels: Vec<String>, unit: usize, dual: Vec<usize>, triples: &[(usize, usize, usize, u32)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Input("empty label set".into()));
        }
        if unit >= n {
            return Err(Error::Input("unit label out of range".into()));
        }
        if dual.len() != n || dual.iter().any(|&d| d >= n) {
            return Err(Error::Input("dual map must cover every label".into()));
        }
        let mut mult = vec![0u32; n * n * n];
        for &(s, t, r, m) in triples {
            if s >= n || t >= n || r >= n {
                return Err(Error::Input(format!("fusion triple ({s},{t},{r}) out of range")));
            }
            mult[(s * n + t) * n + r] = m;
        }
        Ok(FusionRules { labels, unit, dual, mult })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn dual(&self, s: usize) -> usize {
        self.dual[s]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Input(format!("unknown label '{name}'")))
    }

    /// `N_{st}^r`.
    #[inline]
    pub fn n(&self, s: usize, t: usize, r: usize) -> usize {
        let k = self.rank();
        self.mult[(s * k + t) * k + r] as usize
    }

    /// Nonzero `(r, N_{st}^r)`.
    pub fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        (0..self.rank()).filter_map(|r| {
            let m = self.n(s, t, r);
            (m > 0).then_some((r, m))
        }).collect()
    }

    /// Left multiplication matrix `L_s` with `(r, t)` entry `N_{st}^r`.
    pub fn left_matrix(&self, s: usize) -> DMatrix<f64> {
        let k = self.rank();
        DMatrix::from_fn(k, k, |r, t| self.n(s, t, r) as f64)
    }
}

/// A finite direct sum of simples: `mult[s]` copies of `U_s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectExpr {
    pub mult: Vec<usize>,
}

impl ObjectExpr {
    pub fn zero(rank: usize) -> Self {
        ObjectExpr { mult: vec![0; rank] }
    }

    pub fn simple(rank: usize, s: usize) -> Self {
        let mut o = Self::zero(rank);
        o.mult[s] = 1;
        o
    }

    pub fn from_pairs(rank: usize, pairs: &[(usize, usize)]) -> Self {
        let mut o = Self::zero(rank);
        for &(s, m) in pairs {
            o.mult[s] += m;
        }
        o
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn dim(&self, dims: &[f64]) -> f64 {
        self.mult.iter().zip(dims).map(|(&m, d)| m as f64 * d).sum()
    }

    /// Conjugate object, with the `i`-th copy of `s` paired to the `i`-th copy of `s̄`.
    pub fn dual(&self, rules: &FusionRules) -> Self {
        let mut o = Self::zero(self.mult.len());
        for (s, &m) in self.mult.iter().enumerate() {
            o.mult[rules.dual(s)] = m;
        }
        o
    }

    pub fn add(&self, other: &Self) -> Self {
        ObjectExpr { mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }
}

/// A tensor word `X_1 ⊗ X_2 ⊗ … ⊗ X_n`; the empty word is the unit object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<ObjectExpr>);

impl Word {
    pub fn unit() -> Self {
        Word(vec![])
    }

    pub fn simple(rank: usize, s: usize) -> Self {
        Word(vec![ObjectExpr::simple(rank, s)])
    }

    pub fn simples(rank: usize, labels: &[usize]) -> Self {
        Word(labels.iter().map(|&s| ObjectExpr::simple(rank, s)).collect())
    }

    pub fn single(o: ObjectExpr) -> Self {
        Word(vec![o])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    /// Concatenate several words.
    pub fn cat(parts: &[&Word]) -> Word {
        Word(parts.iter().flat_map(|w| w.0.iter().cloned()).collect())
    }

    pub fn dual(&self, rules: &FusionRules) -> Word {
        Word(self.0.iter().rev().map(|o| o.dual(rules)).collect())
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    pub fn dim(&self, dims: &[f64]) -> f64 {
        self.0.iter().map(|o| o.dim(dims)).product()
    }
}

/// A skeletal unitary fusion category, or a bare fusion ring when no F-symbols are given.
#[derive(Clone, Debug)]
pub struct SkeletalCategory {
    pub name: String,
    pub rules: FusionRules,
    pub fsym: Option<FSymbolTable>,
    /// Pivotal phases `κ_s`.
    pub pivotal: Vec<C64>,
    pub dims: Vec<f64>,
    pub tol: f64,
}

impl SkeletalCategory {
    /// Assemble a category; dimensions are the Perron-Frobenius data of the rules.
    pub fn new(name: impl Into<String>, rules: FusionRules, fsym: Option<FSymbolTable>, pivotal: Vec<C64>, tol: f64) -> Result<Self> {
        if pivotal.len() != rules.rank() {
            return Err(Error::Input("pivotal data must cover every label".into()));
        }
        if !(tol > 0.0) {
            return Err(Error::Input("tolerance must be positive".into()));
        }
        let dims = perron_dims(&rules)?;
        Ok(SkeletalCategory { name: name.into(), rules, fsym, pivotal, dims, tol })
    }

    pub fn rank(&self) -> usize {
        self.rules.rank()
    }

    pub fn unit(&self) -> usize {
        self.rules.unit()
    }

    pub fn dual(&self, s: usize) -> usize {
        self.rules.dual(s)
    }

    pub fn n(&self, s: usize, t: usize, r: usize) -> usize {
        self.rules.n(s, t, r)
    }

    pub fn d(&self, s: usize) -> f64 {
        self.dims[s]
    }

    pub fn has_fsymbols(&self) -> bool {
        self.fsym.is_some()
    }

    pub fn fsym(&self) -> Result<&FSymbolTable> {
        self.fsym.as_ref().ok_or_else(|| {
            Error::Capability(format!("category '{}' carries fusion rules only; F-symbols are required", self.name))
        })
    }

    pub fn require_full(&self) -> Result<()> {
        self.fsym().map(|_| ())
    }

    pub fn simple(&self, s: usize) -> Word {
        Word::simple(self.rank(), s)
    }

    pub fn simples(&self, labels: &[usize]) -> Word {
        Word::simples(self.rank(), labels)
    }

    pub fn label(&self, s: usize) -> &str {
        self.rules.label(s)
    }

    /// Multiplicity of each simple in a tensor word, i.e. `dim Hom(U_r, X)`.
    pub fn word_dims(&self, w: &Word) -> Vec<usize> {
        let k = self.rank();
        let mut cur = vec![0usize; k];
        cur[self.unit()] = 1;
        for f in &w.0 {
            let mut next = vec![0usize; k];
            for b in 0..k {
                if cur[b] == 0 {
                    continue;
                }
                for a in 0..k {
                    if f.mult[a] == 0 {
                        continue;
                    }
                    for r in 0..k {
                        next[r] += cur[b] * f.mult[a] * self.n(b, a, r);
                    }
                }
            }
            cur = next;
        }
        cur
    }

    pub fn word_dim(&self, w: &Word) -> f64 {
        w.dim(&self.dims)
    }

    pub fn dual_word(&self, w: &Word) -> Word {
        w.dual(&self.rules)
    }

    /// Object holding the multiplicity spaces of `w` as a single factor.
    pub fn flatten(&self, w: &Word) -> ObjectExpr {
        ObjectExpr { mult: self.word_dims(w) }
    }
}

/// Perron-Frobenius dimensions: the positive joint eigenvector of the fusion matrices with `d_e = 1`.
pub fn perron_dims(rules: &FusionRules) -> Result<Vec<f64>> {
    let k = rules.rank();
    let mut m = DMatrix::<f64>::zeros(k, k);
    for s in 0..k {
        m += rules.left_matrix(s);
    }
    let m = (&m + m.transpose()) * 0.5;
    let eig = m.symmetric_eigen();
    let mut best = 0;
    for i in 0..k {
        if eig.eigenvalues[i] > eig.eigenvalues[best] {
            best = i;
        }
    }
    let v = eig.eigenvectors.column(best);
    let ve = v[rules.unit()];
    if ve.abs() < 1e-12 {
        return Err(Error::Numerical("fusion graph is reducible: no strictly positive Perron vector".into()));
    }
    let d: Vec<f64> = v.iter().map(|x| x / ve).collect();
    if d.iter().any(|&x| x <= 1e-12) {
        return Err(Error::Numerical("fusion graph is reducible: Perron vector has vanishing entries".into()));
    }
    Ok(d)
}

pub(crate) fn cmat_from_real(m: &DMatrix<f64>) -> CMat {
    m.map(|x| C64::new(x, 0.0))
}
