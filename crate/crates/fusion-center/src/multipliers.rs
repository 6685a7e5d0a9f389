//! Positive-definite functions on `Irr(C)`: the matrices `A^φ`, the
//! positivity test, and Gram matrices of the fusion-algebra state `ω_φ`.

use crate::center::RegularSpace;
use crate::fusion_ring::IrrBackend;
use crate::linalg::{herm_eigen, max_abs, spectral_norm, CMat};
use crate::skeleton::{Morphism, SkeletalCategory, Word};
use crate::{Error, Result, C64};
use nalgebra::DVector;
use serde::Serialize;
use std::collections::BTreeMap;

/// A function on a finite window of labels.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiplier {
    pub values: BTreeMap<usize, C64>,
}

impl Multiplier {
    pub fn new(values: BTreeMap<usize, C64>) -> Self {
        Multiplier { values }
    }

    pub fn from_fn(labels: impl IntoIterator<Item = usize>, f: impl Fn(usize) -> C64) -> Self {
        Multiplier { values: labels.into_iter().map(|s| (s, f(s))).collect() }
    }

    /// `δ_e`.
    pub fn delta(rank: usize, unit: usize) -> Self {
        Self::from_fn(0..rank, |s| C64::new(if s == unit { 1.0 } else { 0.0 }, 0.0))
    }

    pub fn constant_one(rank: usize) -> Self {
        Self::from_fn(0..rank, |_| C64::new(1.0, 0.0))
    }

    pub fn get(&self, s: usize) -> Result<C64> {
        self.values.get(&s).copied().ok_or_else(|| Error::Input(format!("multiplier is not defined on label {s}")))
    }

    pub fn is_normalized(&self, unit: usize, tol: f64) -> bool {
        self.values.get(&unit).is_some_and(|v| (v - C64::new(1.0, 0.0)).norm() < tol)
    }

    /// `max_s |φ(s̄) − conj φ(s)|` over labels whose dual is also in the window.
    pub fn hermiticity_residual(&self, dual: impl Fn(usize) -> usize) -> f64 {
        self.values
            .iter()
            .filter_map(|(&s, &v)| self.values.get(&dual(s)).map(|&w| (w - v.conj()).norm()))
            .fold(0.0, f64::max)
    }

    /// Convex combination `tφ + (1−t)ψ` on the common window.
    pub fn mix(&self, other: &Multiplier, t: f64) -> Multiplier {
        let values = self.values.iter().filter_map(|(&s, &a)| other.values.get(&s).map(|&b| (s, a * t + b * (1.0 - t)))).collect();
        Multiplier { values }
    }

    /// Parse a JSON map `label → [re, im]` or `label → re`.
    pub fn from_json(text: &str, index: impl Fn(&str) -> Result<usize>) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed multiplier: {e}")))?;
        let mut values = BTreeMap::new();
        for (k, v) in raw {
            let z = match &v {
                serde_json::Value::Number(n) => C64::new(n.as_f64().unwrap_or(f64::NAN), 0.0),
                serde_json::Value::Array(a) if a.len() == 2 => {
                    let re = a[0].as_f64().ok_or_else(|| Error::Input(format!("bad value for '{k}'")))?;
                    let im = a[1].as_f64().ok_or_else(|| Error::Input(format!("bad value for '{k}'")))?;
                    C64::new(re, im)
                }
                _ => return Err(Error::Input(format!("bad value for '{k}': expected number or [re, im]"))),
            };
            values.insert(index(&k)?, z);
        }
        Ok(Multiplier { values })
    }

    /// Parse `{e:1, g:-2}` style inline text, or JSON.
    pub fn parse_inline(text: &str, index: impl Fn(&str) -> Result<usize>) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') && t.contains('"') {
            return Self::from_json(t, index);
        }
        let body = t.trim_start_matches('{').trim_end_matches('}');
        let mut values = BTreeMap::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once(':').ok_or_else(|| Error::Input(format!("expected label:value, got '{part}'")))?;
            let re: f64 = v.trim().parse().map_err(|_| Error::Input(format!("bad number '{}'", v.trim())))?;
            values.insert(index(k.trim())?, C64::new(re, 0.0));
        }
        Ok(Multiplier { values })
    }
}

/// `M^φ_W = Σ_r φ(r) p_r^W` on a tensor word.
pub fn m_phi(cat: &SkeletalCategory, w: &Word, phi: &Multiplier) -> Result<Morphism> {
    let mut m = cat.identity(w);
    for r in 0..cat.rank() {
        if m.blocks[r].nrows() > 0 {
            m.blocks[r] *= phi.get(r)?;
        }
    }
    Ok(m)
}

/// `A^φ_{st} = (d_s d_t)^{1/2} (ι ⊗ ι ⊗ R̄_t*)(ι_s ⊗ M^φ_{Ū_s ⊗ U_t} ⊗ ι_t̄)(R̄_s ⊗ ι ⊗ ι) : U_t Ū_t → U_s Ū_s`.
pub fn aphi_block(cat: &SkeletalCategory, phi: &Multiplier, s: usize, t: usize) -> Result<Morphism> {
    let sw = cat.simple(s);
    let tw = cat.simple(t);
    let sbar = cat.simple(cat.dual(s));
    let tbar = cat.simple(cat.dual(t));
    let m = m_phi(cat, &sbar.concat(&tw), phi)?;
    let a = cat.tensor(&cat.std_rbar(&sw), &cat.identity(&tw.concat(&tbar)));
    let b = cat.tensor_all(&[&cat.identity(&sw), &m, &cat.identity(&tbar)]);
    let c = cat.tensor(&cat.identity(&sw.concat(&sbar)), &cat.std_rbar(&tw).dagger());
    Ok((&(&c * &b) * &a).scale_re((cat.d(s) * cat.d(t)).sqrt()))
}

/// The blocks `A^φ_{st}` on a window, assembled into an endomorphism of `⊕_s U_s Ū_s`.
#[derive(Clone, Debug)]
pub struct AphiBlocks {
    pub space: RegularSpace,
    pub blocks: BTreeMap<(usize, usize), Morphism>,
    pub grand: Morphism,
}

pub fn build_aphi(cat: &SkeletalCategory, phi: &Multiplier, window: &[usize]) -> Result<AphiBlocks> {
    cat.require_full()?;
    let space = RegularSpace::new(cat, window)?;
    let mut blocks = BTreeMap::new();
    for &s in window {
        for &t in window {
            blocks.insert((s, t), aphi_block(cat, phi, s, t)?);
        }
    }
    let grand = space.assemble(cat, |s, t| blocks[&(s, t)].clone());
    Ok(AphiBlocks { space, blocks, grand })
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub root: String,
    pub eigenvalue: f64,
    /// Eigenvector coordinates as `[re, im]` pairs.
    pub vector: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowResult {
    pub window: Vec<String>,
    pub min_eigenvalue: f64,
    pub hermiticity: f64,
    pub positive: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CpVerdict {
    pub windows: Vec<WindowResult>,
    pub positive: bool,
    /// Largest window checked when positive, first failing window otherwise.
    pub decided_on: Vec<String>,
}

/// Minimum eigenvalue and witness of a self-adjoint morphism, over its root blocks.
pub fn min_eigen(a: &Morphism) -> (f64, Option<(usize, DVector<C64>)>) {
    let mut best = (f64::INFINITY, None);
    for (r, b) in a.blocks.iter().enumerate() {
        if b.nrows() == 0 {
            continue;
        }
        let (vals, vecs) = herm_eigen(b);
        if vals[0] < best.0 {
            best = (vals[0], Some((r, vecs.column(0).into_owned())));
        }
    }
    best
}

/// Positivity of `(A^φ_{s_i s_j})` on each window of a schedule.
///
/// Only subsets are checked: a tuple with a repeated label adds a copy of an
/// existing block row and column, which cannot create a negative direction.
pub fn cp_check(cat: &SkeletalCategory, phi: &Multiplier, schedule: &[Vec<usize>]) -> Result<CpVerdict> {
    cat.require_full()?;
    if schedule.is_empty() {
        return Err(Error::Input("empty window schedule".into()));
    }
    let mut windows = vec![];
    let mut positive = true;
    let mut decided_on = vec![];
    for w in schedule {
        let a = build_aphi(cat, phi, w)?;
        let herm = a.grand.blocks.iter().map(|b| max_abs(&(b - b.adjoint()))).fold(0.0, f64::max);
        let scale = a.grand.blocks.iter().map(spectral_norm).fold(1.0, f64::max);
        if herm > cat.tol * scale {
            return Err(Error::Input(format!("A^φ is not self-adjoint (residual {herm:e}); φ(s̄) must equal conj φ(s)")));
        }
        let (min, wit) = min_eigen(&a.grand);
        let ok = min >= -cat.tol * scale;
        let names: Vec<String> = w.iter().map(|&s| cat.label(s).to_string()).collect();
        let witness = if ok {
            None
        } else {
            wit.map(|(r, v)| Witness { root: cat.label(r).to_string(), eigenvalue: min, vector: v.iter().map(|z| [z.re, z.im]).collect() })
        };
        if positive {
            decided_on = names.clone();
        }
        if !ok && positive {
            positive = false;
        }
        windows.push(WindowResult { window: names, min_eigenvalue: min, hermiticity: herm, positive: ok, witness });
    }
    Ok(CpVerdict { windows, positive, decided_on })
}

/// The state `ω([U_s]) = d_s φ(s)` on the fusion algebra.
#[derive(Clone, Debug)]
pub struct FusionState<'a> {
    pub phi: &'a Multiplier,
}

impl FusionState<'_> {
    pub fn eval(&self, backend: &dyn IrrBackend, s: usize) -> Result<C64> {
        Ok(self.phi.get(s)? * backend.dim(s))
    }
}

/// `G_{ts} = ω([U_t]*[U_s]) = Σ_r N_{t̄ s}^r d_r φ(r)` and its minimum eigenvalue.
pub fn fusion_state_gram(backend: &dyn IrrBackend, phi: &Multiplier, window: &[usize]) -> Result<(CMat, f64)> {
    let st = FusionState { phi };
    let n = window.len();
    let mut g = CMat::zeros(n, n);
    for (i, &t) in window.iter().enumerate() {
        for (j, &s) in window.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (r, m) in backend.products(backend.dual(t), s) {
                acc += st.eval(backend, r)? * m as f64;
            }
            g[(i, j)] = acc;
        }
    }
    let min = if n == 0 { 0.0 } else { herm_eigen(&g).0[0] };
    Ok((g, min))
}
