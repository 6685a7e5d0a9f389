//! Q-systems: axioms, modules and bimodules, relative tensor products,
//! duality for bimodules, the dual Q-system and induction of half-braidings.

mod context;
mod duality;
mod induction;
pub mod linear;
mod modules;
mod relative;

pub use context::{verify_dual_qsystem, verify_qsystem, verify_qsystem_in, BimoduleModel, Plain, QSystemVerdict, TensorContext};
pub use duality::{
    dual_module, frobenius_reciprocity_left, frobenius_reciprocity_right, qduality_data, qmod_dimension, vee_residuals, QDimension,
    QDualityData,
};
pub use induction::{
    bimodule_morphisms_ts, schauenburg_induce, test_bimodules, transfer_almost_invariant, InducedObject, TransferReport, TransferRow,
    TsReport,
};
pub use modules::{
    direct_sum, free_module, module_morphisms, module_report, renormalize, simple_modules, skew_module, solve_modules, ModuleStructure, Side,
};
pub use relative::{associator, relative_tensor, tensor_over, RelativeTensorData};

use crate::skeleton::{Morphism, ObjectExpr, SkeletalCategory, Word};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A Q-system `(Q, v, w)` with `v : 1 → Q` and `w : Q → Q ⊗ Q`.
#[derive(Clone, Debug)]
pub struct QSystem {
    pub name: String,
    pub object: Word,
    pub v: Morphism,
    pub w: Morphism,
    /// `d(Q)` in the ambient category.
    pub dim: f64,
    /// `w^{(1)}, w^{(2)}, w^{(3)}` with `w^{(n)} = (w ⊗ ι)w^{(n−1)}`.
    coproducts: Vec<Morphism>,
}

impl QSystem {
    pub fn new(cat: &SkeletalCategory, name: impl Into<String>, object: Word, v: Morphism, w: Morphism) -> Result<Self> {
        if v.source != Word::unit() || v.target != object {
            return Err(Error::Shape("v must map the unit to Q".into()));
        }
        if w.source != object || w.target != object.concat(&object) {
            return Err(Error::Shape("w must map Q to Q ⊗ Q".into()));
        }
        let dim = cat.word_dim(&object);
        let mut coproducts = vec![w.clone()];
        for k in 1..3 {
            let rest = cat.identity(&repeat(&object, k));
            let next = &cat.tensor(&w, &rest) * &coproducts[k - 1];
            coproducts.push(next);
        }
        Ok(QSystem { name: name.into(), object, v, w, dim, coproducts })
    }

    /// `w^{(n)} : Q → Q^{⊗(n+1)}` for `1 ≤ n ≤ 3`; only kept for Q-systems in `C` itself.
    pub fn coproduct(&self, n: usize) -> &Morphism {
        self.coproducts.get(n - 1).expect("iterated coproducts exist for Q-systems in the ambient category")
    }

    /// The product `m_Q = w*`.
    pub fn m(&self) -> Morphism {
        self.w.dagger()
    }

    /// `Q^{⊗k}` as a word.
    pub fn power(&self, k: usize) -> Word {
        repeat(&self.object, k)
    }

    /// The trivial Q-system `Q = 1`.
    pub fn trivial(cat: &SkeletalCategory) -> Result<Self> {
        cat.require_full()?;
        let q = cat.simple(cat.unit());
        let v = cat.regroup(&Word::unit(), &q)?;
        let w = cat.regroup(&q, &q.concat(&q))?;
        Self::new(cat, "trivial", q, v, w)
    }

    /// The group algebra `⊕_g U_g` of a pointed category with trivial associator.
    pub fn group_algebra(cat: &SkeletalCategory) -> Result<Self> {
        cat.require_full()?;
        if cat.dims.iter().any(|d| (d - 1.0).abs() > 1e-12) {
            return Err(Error::Capability(format!("'{}' is not pointed; no group algebra", cat.name)));
        }
        let q = Word::single(ObjectExpr { mult: vec![1; cat.rank()] });
        let mut v = cat.zero(&Word::unit(), &q);
        v.blocks[cat.unit()][(0, 0)] = C64::new(1.0, 0.0);
        let mut w = cat.zero(&q, &q.concat(&q));
        for b in w.blocks.iter_mut() {
            b.fill(C64::new(1.0, 0.0));
        }
        Self::new(cat, "group-algebra", q, v, w)
    }

    /// `Q_X = X̄ ⊗ X` with `v = d(X)^{-1/2} R_X` and `w = d(X)^{1/2} ι ⊗ R̄_X ⊗ ι`,
    /// transported to a single factor.
    pub fn from_simple(cat: &SkeletalCategory, x: usize) -> Result<Self> {
        cat.require_full()?;
        let xw = cat.simple(x);
        let xbar = cat.dual_word(&xw);
        let q2 = xbar.concat(&xw);
        let d = cat.d(x);
        let v = cat.std_r(&xw).scale_re(d.powf(-0.5));
        let w = cat.tensor_all(&[&cat.identity(&xbar), &cat.std_rbar(&xw), &cat.identity(&xw)]).scale_re(d.sqrt());
        let flat = Word::single(cat.flatten(&q2));
        let g = cat.regroup(&q2, &flat)?;
        let v = &g * &v;
        let w = &(&cat.tensor(&g, &g) * &w) * &g.dagger();
        Self::new(cat, format!("Q_{}", cat.label(x)), flat, v, w)
    }

    /// Built-in Q-systems: `trivial`, `group-algebra`, or `Q_<label>`.
    pub fn by_name(cat: &SkeletalCategory, name: &str) -> Result<Self> {
        match name {
            "trivial" => Self::trivial(cat),
            "group-algebra" | "group" => Self::group_algebra(cat),
            _ => match name.strip_prefix("Q_") {
                Some(l) => Self::from_simple(cat, cat.rules.index(l)?),
                None => Err(Error::Input(format!("unknown Q-system '{name}'; available: trivial, group-algebra, Q_<label>"))),
            },
        }
    }

    /// The dual Q-system `Q̂ = Q ⊗ Q` in the bimodule model, with `v̂ = d(Q)^{-1/2} w`
    /// and `ŵ = d(Q)^{1/2} ι ⊗ v ⊗ ι`.
    pub fn dual(&self, cat: &SkeletalCategory) -> Self {
        let d = self.dim;
        let iq = cat.identity(&self.object);
        let v = self.w.scale_re(d.powf(-0.5));
        let w = cat.tensor_all(&[&iq, &self.v, &iq]).scale_re(d.sqrt());
        QSystem { name: format!("dual({})", self.name), object: self.power(2), v, w, dim: d, coproducts: vec![] }
    }
}

fn repeat(w: &Word, k: usize) -> Word {
    Word(w.0.iter().cloned().cycle().take(w.len() * k).collect())
}

/// The three Q-systems used by the acceptance suite, with their categories.
pub fn qsystem_catalog() -> Vec<(SkeletalCategory, QSystem)> {
    let fib = crate::catalog::fibonacci();
    let z2 = crate::catalog::vec_zn(2);
    let tau = fib.rules.index("tau").expect("tau");
    vec![
        (fib.clone(), QSystem::trivial(&fib).expect("trivial")),
        (z2.clone(), QSystem::group_algebra(&z2).expect("group algebra")),
        (fib.clone(), QSystem::from_simple(&fib, tau).expect("Q_tau")),
    ]
}

/// JSON form of a Q-system: `object` maps labels to multiplicities; `v` and `w`
/// map root labels to matrices of `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QSystemFile {
    #[serde(default)]
    pub name: Option<String>,
    pub object: BTreeMap<String, usize>,
    pub v: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
    pub w: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

impl QSystemFile {
    pub fn into_qsystem(self, cat: &SkeletalCategory) -> Result<QSystem> {
        let mut mult = vec![0; cat.rank()];
        for (l, &m) in &self.object {
            mult[cat.rules.index(l)?] = m;
        }
        let q = Word::single(ObjectExpr { mult });
        let v = read_blocks(cat, &Word::unit(), &q, &self.v)?;
        let w = read_blocks(cat, &q, &q.concat(&q), &self.w)?;
        QSystem::new(cat, self.name.unwrap_or_else(|| "file".into()), q, v, w)
    }

    pub fn from_qsystem(cat: &SkeletalCategory, q: &QSystem) -> Result<Self> {
        if q.object.len() != 1 {
            return Err(Error::Shape("only single-factor Q-systems are serialised".into()));
        }
        let object = (0..cat.rank()).filter(|&s| q.object.0[0].mult[s] > 0).map(|s| (cat.label(s).to_string(), q.object.0[0].mult[s])).collect();
        Ok(QSystemFile { name: Some(q.name.clone()), object, v: write_blocks(cat, &q.v), w: write_blocks(cat, &q.w) })
    }
}

fn read_blocks(cat: &SkeletalCategory, src: &Word, tgt: &Word, data: &BTreeMap<String, Vec<Vec<[f64; 2]>>>) -> Result<Morphism> {
    let mut m = cat.zero(src, tgt);
    for (l, rows) in data {
        let r = cat.rules.index(l)?;
        let b = &mut m.blocks[r];
        if rows.len() != b.nrows() || rows.iter().any(|row| row.len() != b.ncols()) {
            return Err(Error::Shape(format!("block '{l}' should be {}x{}", b.nrows(), b.ncols())));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                b[(i, j)] = C64::new(z[0], z[1]);
            }
        }
    }
    Ok(m)
}

fn write_blocks(cat: &SkeletalCategory, m: &Morphism) -> BTreeMap<String, Vec<Vec<[f64; 2]>>> {
    m.blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.is_empty())
        .map(|(r, b)| (cat.label(r).to_string(), (0..b.nrows()).map(|i| (0..b.ncols()).map(|j| [b[(i, j)].re, b[(i, j)].im]).collect()).collect()))
        .collect()
}

pub fn load_qsystem(cat: &SkeletalCategory, text: &str) -> Result<QSystem> {
    let f: QSystemFile = serde_json::from_str(text)?;
    f.into_qsystem(cat)
}
