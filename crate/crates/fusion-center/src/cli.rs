//! Command-line front end: load a category, run one family of checks and
//! emit a text or JSON report.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! input or usage errors.

use crate::catalog::{self, CatalogEntry};
use crate::center::{
    build_zphi, decompose_cstar_finite, invariance_diagnostics, regular_half_braiding, regular_rep_residual, rep_from_braiding, two_formula_residual,
    unit_column_residual, verify_half_braiding, block_unitarity_residual,
};
use crate::fusion_ring::{self, FiniteRing, IrrBackend};
use crate::multipliers::{cp_check, Multiplier};
use crate::qsystems::{
    bimodule_morphisms_ts, load_qsystem, module_report, qduality_data, qmod_dimension, schauenburg_induce, simple_modules, test_bimodules,
    transfer_almost_invariant, verify_dual_qsystem, verify_qsystem, QSystem, Side,
};
use crate::report::{Check, Report};
use crate::skeleton::io::load_category;
use crate::skeleton::{validate_category, SkeletalCategory};
use crate::{Error, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Parser, Debug)]
#[command(name = "fusion-center", version, about = "Numerical checks for skeletal unitary fusion categories")]
pub struct Cli {
    /// Residual tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Truncation sizes (or ball radii), comma separated and strictly increasing.
    #[arg(long, global = true, value_delimiter = ',')]
    pub truncate: Vec<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Built-in catalog entry, e.g. Fibonacci, VecZ3, TL(3), FreeGroup2.
    #[arg(long, global = true)]
    pub category: Option<String>,
    /// Category JSON file.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Fusion rules, F-symbol unitarity, pentagon, duality and sphericality.
    Validate,
    /// Perron-Frobenius dimensions.
    Dims {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Truncated fusion-matrix norms against d(X).
    Amenability {
        /// Object such as `tau` or `a+A+b+B`; defaults to the sum of all labels of a finite ring.
        #[arg(long)]
        object: Option<String>,
        /// Read the truncations as word-length radii.
        #[arg(long)]
        balls: bool,
    },
    /// Positivity of the A^φ matrices.
    CpCheck {
        /// `{e:1, g:-2}`, a JSON map, or `@path`.
        #[arg(long)]
        phi: String,
        /// Label windows, `;`-separated lists such as `e,g;e`. Defaults to growing prefixes.
        #[arg(long)]
        sets: Option<String>,
    },
    /// Regular half-braiding, its representation, C*(C) and an optional GNS object.
    Center {
        #[arg(long, alias = "zphi")]
        phi: Option<String>,
    },
    /// Q-system axioms, modules, dual Q-system and dimensions.
    Qsystem {
        /// `trivial`, `group-algebra`, `Q_<label>`, `@path` or `auto`.
        #[arg(long, default_value = "auto")]
        qsystem: String,
    },
    /// Induction of the regular (or GNS) half-braiding to Q-bimodules.
    Induce {
        #[arg(long, default_value = "auto")]
        qsystem: String,
        #[arg(long)]
        phi: Option<String>,
    },
}

/// Everything a run needs, after argument parsing.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub category: Option<String>,
    pub file: Option<PathBuf>,
    pub command: Command,
    pub tol: Option<f64>,
    pub truncate: Vec<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig { category: c.category, file: c.file, command: c.command, tol: c.tol, truncate: c.truncate, format: c.format, output: c.output }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub source: String,
    pub pass: bool,
    pub first_failure: Option<String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub data: Value,
}

impl RunReport {
    fn new(command: &str, source: &str, report: Report, data: Value) -> Self {
        let report = report.sorted();
        let first_failure = report.first_failure().map(|c| c.id.clone());
        RunReport { command: command.into(), source: source.into(), pass: report.pass(), first_failure, checks: report.checks, notes: report.notes, data }
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass { 0 } else { 1 }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => serde_json::to_string_pretty(self).expect("report serialises"),
            Format::Text => {
                let mut out = format!("{} on {}\n", self.command, self.source);
                for c in &self.checks {
                    out += &format!(
                        "{}  {:<48} residual={:<10.3e} tol={:<8.1e} [{}]\n",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.id,
                        c.residual,
                        c.tol,
                        c.tag
                    );
                }
                for n in &self.notes {
                    out += &format!("note: {n}\n");
                }
                if !self.data.is_null() {
                    out += &format!("data: {}\n", serde_json::to_string(&self.data).expect("data serialises"));
                }
                match &self.first_failure {
                    None => out += "overall: PASS\n",
                    Some(id) => out += &format!("overall: FAIL (first failing check: {id})\n"),
                }
                out
            }
        }
    }
}

enum Source {
    Full(SkeletalCategory),
    Ring(Box<dyn IrrBackend>),
}

impl Source {
    fn category(&self) -> Result<&SkeletalCategory> {
        match self {
            Source::Full(c) => Ok(c),
            Source::Ring(b) => Err(Error::Capability(format!("'{}' is a fusion-ring backend without F-symbols", b.name()))),
        }
    }

    fn backend(&self) -> Box<dyn IrrBackend> {
        match self {
            Source::Full(c) => Box::new(FiniteRing::from_category(c)),
            Source::Ring(b) => b.boxed_clone(),
        }
    }
}

fn load_source(cfg: &RunConfig) -> Result<(Source, String)> {
    let mut src = match (&cfg.category, &cfg.file) {
        (Some(_), Some(_)) => return Err(Error::Input("give either --category or --file, not both".into())),
        (None, None) => return Err(Error::Input(format!("no category given; use --file or --category ({})", catalog::available().join(", ")))),
        (Some(name), None) => match catalog::get(name)? {
            CatalogEntry::Full(c) => (Source::Full(c), name.clone()),
            CatalogEntry::Ring(b) => (Source::Ring(b), name.clone()),
        },
        (None, Some(path)) => (Source::Full(load_category(path)?), path.display().to_string()),
    };
    if let Some(t) = cfg.tol {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Input("--tol must be positive".into()));
        }
        if let Source::Full(c) = &mut src.0 {
            c.tol = t;
        }
    }
    if cfg.truncate.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Input("--truncate must be strictly increasing".into()));
    }
    Ok(src)
}

fn parse_phi(cat: &SkeletalCategory, text: &str) -> Result<Multiplier> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => text.to_string(),
    };
    Multiplier::parse_inline(&body, |l| cat.rules.index(l))
}

fn pick_qsystem(cat: &SkeletalCategory, name: &str) -> Result<QSystem> {
    if let Some(path) = name.strip_prefix('@') {
        return load_qsystem(cat, &std::fs::read_to_string(path)?);
    }
    if name != "auto" {
        return QSystem::by_name(cat, name);
    }
    if cat.dims.iter().all(|d| (d - 1.0).abs() < 1e-12) && cat.rank() > 1 {
        return QSystem::group_algebra(cat);
    }
    match (0..cat.rank()).find(|&s| s != cat.unit()) {
        Some(s) => QSystem::from_simple(cat, s),
        None => QSystem::trivial(cat),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

/// Execute one configured run.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    let (src, name) = load_source(cfg)?;
    let tol = cfg.tol.unwrap_or(crate::DEFAULT_TOL);
    match &cfg.command {
        Command::Validate => match &src {
            Source::Full(cat) => Ok(RunReport::new("validate", &name, validate_category(cat), Value::Null)),
            Source::Ring(b) => {
                let n = cfg.truncate.last().copied().unwrap_or(200);
                let mut rep = Report::new();
                rep.push(Check::new("ring.axioms", "fusion ring axioms", fusion_ring::ring_axiom_violations(b.as_ref(), n) as f64, 0.5));
                rep.push(Check::new("dims.perron", "dimension function", fusion_ring::dimension_residual(b.as_ref(), n), tol));
                rep.note(format!("fusion-ring-only data, checked on the first {n} labels"));
                Ok(RunReport::new("validate", &name, rep, Value::Null))
            }
        },
        Command::Dims { count } => {
            let b = src.backend();
            let dims = fusion_ring::dimensions(b.as_ref(), *count)?;
            let mut rep = Report::new();
            rep.push(Check::new("dims.perron", "dimension function", fusion_ring::dimension_residual(b.as_ref(), *count), tol));
            let data: Vec<Value> = dims.iter().map(|&(s, d)| json!({"label": b.label_name(s), "dim": d})).collect();
            Ok(RunReport::new("dims", &name, rep, Value::Array(data)))
        }
        Command::Amenability { object, balls } => {
            let b = src.backend();
            let x = match object {
                Some(e) => fusion_ring::parse_object(b.as_ref(), e)?,
                None => match b.size() {
                    Some(n) => (0..n).map(|s| (s, 1)).collect(),
                    None => return Err(Error::Input("--object is required for infinite rings".into())),
                },
            };
            let schedule = if !cfg.truncate.is_empty() {
                cfg.truncate.clone()
            } else if *balls {
                vec![2, 4, 6, 8]
            } else {
                match b.size() {
                    Some(n) => vec![n],
                    None => vec![50, 100, 200, 400],
                }
            };
            let norms = if *balls {
                fusion_ring::fusion_matrix_norm_balls(b.as_ref(), &x, &schedule, tol)?
            } else {
                fusion_ring::fusion_matrix_norm(b.as_ref(), &x, &schedule, tol)?
            };
            let verdict = fusion_ring::verdict_from(b.as_ref(), norms, tol);
            let mut rep = Report::new();
            rep.push(Check::flag("amenability.monotone", "‖P_nΓP_n‖ nondecreasing in n", verdict.norms.monotone));
            rep.push(Check::flag("amenability.bounded", "‖P_nΓP_n‖ ≤ ‖Γ_X‖ ≤ d(X)", verdict.norms.within_dimension));
            rep.note(format!("verdict {:?}: best bound {:.9}, d(X) = {:.9}, gap {:.3e}", verdict.verdict, verdict.best_bound, verdict.d_x, verdict.gap));
            Ok(RunReport::new("amenability", &name, rep, to_value(&verdict)))
        }
        Command::CpCheck { phi, sets } => {
            let cat = src.category()?;
            let phi = parse_phi(cat, phi)?;
            let schedule: Vec<Vec<usize>> = match sets {
                Some(s) => s
                    .split(';')
                    .map(|w| w.split(',').map(|l| cat.rules.index(l.trim())).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
                None => (1..=cat.rank()).map(|k| (0..k).collect()).collect(),
            };
            let verdict = cp_check(cat, &phi, &schedule)?;
            let mut rep = Report::new();
            for w in &verdict.windows {
                let id = format!("cp.window.{}", w.window.join(","));
                rep.push(Check::at_most(id, "A^φ positive on the window", (-w.min_eigenvalue).max(0.0), cat.tol));
                if let Some(wit) = &w.witness {
                    rep.note(format!("witness on [{}]: eigenvalue {:.12} at root {}, vector {:?}", w.window.join(","), wit.eigenvalue, wit.root, wit.vector));
                }
            }
            Ok(RunReport::new("cp-check", &name, rep, to_value(&verdict)))
        }
        Command::Center { phi } => {
            let cat = src.category()?;
            let all: Vec<usize> = (0..cat.rank()).collect();
            let z = regular_half_braiding(cat, &all)?;
            let mut rep = verify_half_braiding(cat, &z);
            let (u1, u2) = block_unitarity_residual(cat, &cat.simple(0), &all);
            let mut unit = u1.max(u2);
            let mut two = 0.0_f64;
            for s in 0..cat.rank() {
                let (a, b) = block_unitarity_residual(cat, &cat.simple(s), &all);
                unit = unit.max(a).max(b);
                two = two.max(two_formula_residual(cat, &cat.simple(s)));
            }
            rep.push(Check::new("regular.block-unitarity", "Σ_t c*_{ts}c_{ts} = ι", unit, cat.tol));
            rep.push(Check::new("regular.unit-column", "c_{s,te} = δ_{st}d_s^{-1/2}(ι⊗R_s)", unit_column_residual(cat), cat.tol.min(1e-12)));
            rep.push(Check::new("regular.two-formulas", "two formulas for c_{X,ts} agree", two, cat.tol));
            let r = rep_from_braiding(cat, &z)?;
            rep.extend(r.report(cat));
            rep.push(Check::new("regular.left-multiplication", "π_reg([U_s]) = left multiplication on ξ_t", regular_rep_residual(cat, &z, &r)?, cat.tol));
            let cstar = decompose_cstar_finite(&FiniteRing::from_category(cat), cat.tol)?;
            rep.extend(cstar.report.clone());
            let inv = invariance_diagnostics(&r, &all, cat.tol);
            let mut data = json!({
                "invariance": inv.summary(),
                "characters": cstar.blocks.iter().map(|b| b.character().map(|c| c.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())).collect::<Vec<_>>(),
            });
            if let Some(p) = phi {
                let phi = parse_phi(cat, p)?;
                let g = build_zphi(cat, &phi, &all)?;
                rep.extend(g.report.clone());
                data["zphi_dim"] = json!(g.dim());
            }
            Ok(RunReport::new("center", &name, rep, data))
        }
        Command::Qsystem { qsystem } => {
            let cat = src.category()?;
            let q = pick_qsystem(cat, qsystem)?;
            let v = verify_qsystem(cat, &q);
            let mut rep = v.report.clone();
            let dv = verify_dual_qsystem(cat, &q);
            rep.extend(dv.report.clone());
            let mut modules = json!({});
            for side in [Side::Left, Side::Right, Side::Bi] {
                let simples = simple_modules(cat, &q, side)?;
                modules[format!("{side:?}").to_lowercase()] = json!(simples.iter().map(|m| m.name.clone()).collect::<Vec<_>>());
                for m in &simples {
                    rep.extend(module_report(cat, &q, m));
                    if side == Side::Bi {
                        rep.extend(qduality_data(cat, &q, m)?.report);
                        rep.extend(qmod_dimension(cat, &q, m, 20)?.report);
                    }
                }
            }
            let data = json!({"qsystem": v, "dual": dv, "simple_modules": modules});
            Ok(RunReport::new("qsystem", &name, rep, data))
        }
        Command::Induce { qsystem, phi } => {
            let cat = src.category()?;
            let q = pick_qsystem(cat, qsystem)?;
            let all: Vec<usize> = (0..cat.rank()).collect();
            let (z, xi) = match phi {
                Some(p) => {
                    let g = build_zphi(cat, &parse_phi(cat, p)?, &all)?;
                    let xi = crate::center::vector_morphism(cat, &g.object.object, &g.xi);
                    (g.object, xi)
                }
                None => {
                    let z = regular_half_braiding(cat, &all)?;
                    let space = z.regular.clone().expect("regular window");
                    let xi = cat.unit_vector(&z.object, space.xi_index(cat, cat.unit()));
                    (z, xi)
                }
            };
            let ind = schauenburg_induce(cat, &q, &z)?;
            let mut rep = ind.report.clone();
            let ts = bimodule_morphisms_ts(cat, &q, &ind, 5)?;
            rep.extend(ts.report.clone());
            let tr = transfer_almost_invariant(cat, &q, &ind, &xi, &test_bimodules(cat, &q))?;
            rep.extend(tr.report.clone());
            Ok(RunReport::new("induce", &name, rep, json!({"ts": ts, "transfer": tr})))
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Verification(_) | Error::Numerical(_) => 1,
        _ => 2,
    }
}

/// Parse arguments, run, print, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = RunConfig::from(cli);
    match run(&cfg) {
        Ok(report) => {
            let text = report.render(cfg.format);
            if let Some(path) = &cfg.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{text}");
            }
            report.exit_code()
        }
        Err(e) => {
            let code = exit_code_for(&e);
            match cfg.format {
                Format::Machine => println!("{}", json!({"error": e.to_string(), "exit": code})),
                Format::Text => eprintln!("error: {e}"),
            }
            code
        }
    }
}
