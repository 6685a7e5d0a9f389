//! JSON category files.

use super::{FEntry, FSymbolTable, FusionRules, SkeletalCategory};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryFile {
    #[serde(default)]
    pub name: Option<String>,
    pub labels: Vec<String>,
    pub unit: String,
    pub dual: BTreeMap<String, String>,
    /// `[s, t, r, N]` quadruples.
    pub fusion: Vec<(String, String, String, u32)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fsymbols: Option<Vec<FEntry>>,
    #[serde(default)]
    pub pivotal: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub convention: Option<String>,
}

impl CategoryFile {
    pub fn into_category(self) -> Result<SkeletalCategory> {
        let idx = |s: &str| -> Result<usize> {
            self.labels.iter().position(|l| l == s).ok_or_else(|| Error::Input(format!("unknown label '{s}'")))
        };
        let unit = idx(&self.unit)?;
        let mut dual = Vec::with_capacity(self.labels.len());
        for l in &self.labels {
            let d = self.dual.get(l).ok_or_else(|| Error::Input(format!("missing dual for label '{l}'")))?;
            dual.push(idx(d)?);
        }
        let mut triples = vec![];
        for (s, t, r, m) in &self.fusion {
            triples.push((idx(s)?, idx(t)?, idx(r)?, *m));
        }
        let rules = FusionRules::new(self.labels.clone(), unit, dual, &triples)?;
        let fsym = match &self.fsymbols {
            Some(entries) => {
                let conv = self.convention.clone().unwrap_or_default();
                Some(FSymbolTable::from_entries(&rules, &conv, entries)?)
            }
            None => None,
        };
        let mut pivotal = vec![C64::new(1.0, 0.0); self.labels.len()];
        for (l, v) in &self.pivotal {
            pivotal[idx(l)?] = C64::new(v[0], v[1]);
        }
        SkeletalCategory::new(
            self.name.clone().unwrap_or_else(|| "file".into()),
            rules,
            fsym,
            pivotal,
            self.tolerance.unwrap_or(crate::DEFAULT_TOL),
        )
    }

    pub fn from_category(cat: &SkeletalCategory) -> Self {
        let r = &cat.rules;
        let k = r.rank();
        let mut fusion = vec![];
        for s in 0..k {
            for t in 0..k {
                for x in 0..k {
                    let m = r.n(s, t, x);
                    if m > 0 {
                        fusion.push((r.label(s).into(), r.label(t).into(), r.label(x).into(), m as u32));
                    }
                }
            }
        }
        CategoryFile {
            name: Some(cat.name.clone()),
            labels: r.labels().to_vec(),
            unit: r.label(r.unit()).into(),
            dual: (0..k).map(|s| (r.label(s).to_string(), r.label(r.dual(s)).to_string())).collect(),
            fusion,
            fsymbols: cat.fsym.as_ref().map(|f| f.entries(r)),
            pivotal: (0..k).map(|s| (r.label(s).to_string(), [cat.pivotal[s].re, cat.pivotal[s].im])).collect(),
            tolerance: Some(cat.tol),
            convention: cat.fsym.as_ref().map(|f| f.convention.clone()),
        }
    }
}

pub fn parse_category(text: &str) -> Result<SkeletalCategory> {
    let f: CategoryFile = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed category file: {e}")))?;
    f.into_category()
}

pub fn load_category(path: &Path) -> Result<SkeletalCategory> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_category(&text)
}

pub fn category_to_json(cat: &SkeletalCategory) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CategoryFile::from_category(cat))?)
}
