use super::IrrBackend;
use crate::{Error, Result, C64};
use std::collections::BTreeMap;
use std::fmt;

/// A finitely supported element `Σ c_s [U_s]` of the fusion algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct FusionElement {
    pub backend: String,
    pub coeffs: BTreeMap<usize, C64>,
}

impl FusionElement {
    pub fn zero(backend: &dyn IrrBackend) -> Self {
        FusionElement { backend: backend.name(), coeffs: BTreeMap::new() }
    }

    pub fn basis(backend: &dyn IrrBackend, s: usize) -> Self {
        Self::from_terms(backend, &[(s, C64::new(1.0, 0.0))])
    }

    pub fn from_terms(backend: &dyn IrrBackend, terms: &[(usize, C64)]) -> Self {
        let mut e = Self::zero(backend);
        for &(s, c) in terms {
            *e.coeffs.entry(s).or_insert(C64::new(0.0, 0.0)) += c;
        }
        e.prune();
        e
    }

    /// The class of an object given as label multiplicities.
    pub fn from_object(backend: &dyn IrrBackend, obj: &BTreeMap<usize, usize>) -> Self {
        let terms: Vec<_> = obj.iter().map(|(&s, &m)| (s, C64::new(m as f64, 0.0))).collect();
        Self::from_terms(backend, &terms)
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != C64::new(0.0, 0.0));
    }

    pub fn coeff(&self, s: usize) -> C64 {
        self.coeffs.get(&s).copied().unwrap_or_default()
    }

    fn same_backend(&self, other: &Self) -> Result<()> {
        if self.backend != other.backend {
            return Err(Error::Input(format!("fusion elements over different backends: '{}' and '{}'", self.backend, other.backend)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_backend(other)?;
        let mut out = self.clone();
        for (&s, &c) in &other.coeffs {
            *out.coeffs.entry(s).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, z: C64) -> Self {
        let mut out = self.clone();
        out.coeffs.values_mut().for_each(|c| *c *= z);
        out.prune();
        out
    }

    /// `[U_s][U_t] = Σ_r N_{st}^r [U_r]`, extended bilinearly.
    pub fn multiply(&self, other: &Self, backend: &dyn IrrBackend) -> Result<Self> {
        self.same_backend(other)?;
        if self.backend != backend.name() {
            return Err(Error::Input(format!("element over '{}' multiplied with backend '{}'", self.backend, backend.name())));
        }
        let mut out = Self::zero(backend);
        for (&s, &a) in &self.coeffs {
            for (&t, &b) in &other.coeffs {
                for (r, m) in backend.products(s, t) {
                    *out.coeffs.entry(r).or_default() += a * b * m as f64;
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// `(Σ c_s [U_s])* = Σ c̄_s [U_s̄]`.
    pub fn star(&self, backend: &dyn IrrBackend) -> Self {
        let mut out = Self::zero(backend);
        for (&s, &c) in &self.coeffs {
            *out.coeffs.entry(backend.dual(s)).or_default() += c.conj();
        }
        out.prune();
        out
    }

    pub fn dist(&self, other: &Self) -> f64 {
        let keys: std::collections::BTreeSet<_> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().map(|&s| (self.coeff(s) - other.coeff(s)).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for FusionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(s, c)| format!("({}{:+}i)[{s}]", c.re, c.im)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
