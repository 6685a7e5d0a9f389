//! Named residual checks collected into reports.

use serde::Serialize;

/// One residual compared against a tolerance.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub id: String,
    pub tag: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(id: impl Into<String>, tag: impl Into<String>, residual: f64, tol: f64) -> Self {
        let pass = residual.is_finite() && residual < tol;
        Check { id: id.into(), tag: tag.into(), residual, tol, pass }
    }

    /// A check that passes when `residual <= tol`; used for bounds that may be attained.
    pub fn at_most(id: impl Into<String>, tag: impl Into<String>, residual: f64, tol: f64) -> Self {
        let pass = residual.is_finite() && residual <= tol;
        Check { id: id.into(), tag: tag.into(), residual, tol, pass }
    }

    /// A boolean condition recorded as residual 0 or 1.
    pub fn flag(id: impl Into<String>, tag: impl Into<String>, ok: bool) -> Self {
        Check { id: id.into(), tag: tag.into(), residual: if ok { 0.0 } else { 1.0 }, tol: 0.5, pass: ok }
    }
}

/// A list of checks plus free-form notes.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Largest residual among checks whose id starts with `prefix`.
    pub fn max_residual(&self, prefix: &str) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.id.starts_with(prefix))
            .map(|c| c.residual)
            .fold(0.0, f64::max)
    }
}
