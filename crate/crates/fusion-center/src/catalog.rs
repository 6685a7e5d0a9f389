//! Built-in categories and fusion-ring backends.
//!
//! Fibonacci and Ising F-symbols are data files produced offline by
//! `cargo run --example regen_catalog`, which solves the pentagon equations
//! inside a real orthogonal gauge ansatz.

use crate::fusion_ring::{FiniteRing, FreeGroup, IrrBackend, SuTwoLevel, TemperleyLieb, ZxZ};
use crate::skeleton::{io::parse_category, FSymbolTable, FusionRules, SkeletalCategory};
use crate::{Error, Result, C64};

const FIBONACCI_JSON: &str = include_str!("../data/fibonacci.json");
const ISING_JSON: &str = include_str!("../data/ising.json");

/// Whether an entry carries F-symbols or only fusion rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    FullData,
    RingOnly,
}

/// A named catalog item.
pub enum CatalogEntry {
    Full(SkeletalCategory),
    Ring(Box<dyn IrrBackend>),
}

impl CatalogEntry {
    pub fn kind(&self) -> EntryKind {
        match self {
            CatalogEntry::Full(_) => EntryKind::FullData,
            CatalogEntry::Ring(_) => EntryKind::RingOnly,
        }
    }

    pub fn category(&self) -> Result<&SkeletalCategory> {
        match self {
            CatalogEntry::Full(c) => Ok(c),
            CatalogEntry::Ring(b) => Err(Error::Capability(format!("'{}' is a fusion-ring backend without F-symbols", b.name()))),
        }
    }

    /// A fusion-ring view of the entry.
    pub fn backend(&self) -> Box<dyn IrrBackend> {
        match self {
            CatalogEntry::Full(c) => Box::new(FiniteRing::from_category(c)),
            CatalogEntry::Ring(b) => b.boxed_clone(),
        }
    }
}

/// Names accepted by [`get`]; parametrised families list their range.
pub fn available() -> Vec<String> {
    vec![
        "VecZ<n> (1<=n<=12)".into(),
        "Fibonacci".into(),
        "Ising".into(),
        "TL(<d>) (generic d>=2, e.g. TL(3))".into(),
        "SU2_<k> (1<=k<=10)".into(),
        "FreeGroup<k> (1<=k<=3)".into(),
        "ZxZ".into(),
    ]
}

fn unknown(name: &str) -> Error {
    Error::Input(format!("unknown catalog entry '{name}'; available: {}", available().join(", ")))
}

/// Look up a catalog entry by name.
pub fn get(name: &str) -> Result<CatalogEntry> {
    if let Some(n) = name.strip_prefix("VecZ") {
        let n: usize = n.parse().map_err(|_| unknown(name))?;
        if !(1..=12).contains(&n) {
            return Err(unknown(name));
        }
        return Ok(CatalogEntry::Full(vec_zn(n)));
    }
    match name {
        "Fibonacci" => return Ok(CatalogEntry::Full(fibonacci())),
        "Ising" => return Ok(CatalogEntry::Full(ising())),
        "ZxZ" => return Ok(CatalogEntry::Ring(Box::new(ZxZ))),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("TL(").and_then(|r| r.strip_suffix(')')) {
        let d: f64 = rest.parse().map_err(|_| unknown(name))?;
        return Ok(CatalogEntry::Ring(Box::new(TemperleyLieb::new(d)?)));
    }
    if let Some(k) = name.strip_prefix("SU2_") {
        let k: usize = k.parse().map_err(|_| unknown(name))?;
        if !(1..=10).contains(&k) {
            return Err(unknown(name));
        }
        return Ok(CatalogEntry::Ring(Box::new(SuTwoLevel::new(k))));
    }
    if let Some(k) = name.strip_prefix("FreeGroup") {
        let k: usize = k.parse().map_err(|_| unknown(name))?;
        if !(1..=3).contains(&k) {
            return Err(unknown(name));
        }
        return Ok(CatalogEntry::Ring(Box::new(FreeGroup::new(k))));
    }
    Err(unknown(name))
}

/// Full-data category by name; ring-only entries are a capability error.
pub fn category(name: &str) -> Result<SkeletalCategory> {
    match get(name)? {
        CatalogEntry::Full(c) => Ok(c),
        CatalogEntry::Ring(b) => Err(Error::Capability(format!("'{}' has no F-symbol data", b.name()))),
    }
}

/// `Vec(ℤ/n)` with trivial associator. Labels are `e, g1, …`; for `n = 2` the generator is `g`.
pub fn vec_zn(n: usize) -> SkeletalCategory {
    let labels = (0..n)
        .map(|i| match (i, n) {
            (0, _) => "e".to_string(),
            (1, 2) => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let dual = (0..n).map(|i| (n - i) % n).collect();
    let mut triples = vec![];
    for s in 0..n {
        for t in 0..n {
            triples.push((s, t, (s + t) % n, 1));
        }
    }
    let rules = FusionRules::new(labels, 0, dual, &triples).expect("cyclic group rules");
    let fsym = FSymbolTable::from_fn(&rules, |_, _, _, _, _, _| C64::new(1.0, 0.0));
    SkeletalCategory::new(format!("VecZ{n}"), rules, Some(fsym), vec![C64::new(1.0, 0.0); n], crate::DEFAULT_TOL)
        .expect("cyclic group category")
}

/// Fusion rules `τ ⊗ τ = 1 ⊕ τ`.
pub fn fibonacci_rules() -> FusionRules {
    let t = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 1)];
    FusionRules::new(vec!["1".into(), "tau".into()], 0, vec![0, 1], &t).expect("fibonacci rules")
}

/// Fusion rules of the Ising category: `σσ = 1 ⊕ ψ`, `σψ = σ`, `ψψ = 1`.
pub fn ising_rules() -> FusionRules {
    let (one, sig, psi) = (0, 1, 2);
    let mut t = vec![];
    for x in 0..3 {
        t.push((one, x, x, 1));
        if x != one {
            t.push((x, one, x, 1));
        }
    }
    t.push((sig, sig, one, 1));
    t.push((sig, sig, psi, 1));
    t.push((sig, psi, sig, 1));
    t.push((psi, sig, sig, 1));
    t.push((psi, psi, one, 1));
    FusionRules::new(vec!["1".into(), "sigma".into(), "psi".into()], 0, vec![0, 1, 2], &t).expect("ising rules")
}

pub fn fibonacci() -> SkeletalCategory {
    parse_category(FIBONACCI_JSON).expect("embedded Fibonacci data")
}

pub fn ising() -> SkeletalCategory {
    parse_category(ISING_JSON).expect("embedded Ising data")
}

/// Names of the full-data entries used by the test suites.
pub fn full_data_names() -> Vec<&'static str> {
    vec!["VecZ2", "VecZ3", "VecZ4", "Fibonacci", "Ising"]
}
