use super::linear::{diff, solution_space};
use super::QSystem;
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, SkeletalCategory, Word};
use crate::C64;
use serde::Serialize;

/// The operations the Q-system axioms need from a C*-tensor category.
pub trait TensorContext {
    fn cat(&self) -> &SkeletalCategory;
    fn unit_word(&self) -> Word;
    fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism;
    fn dim(&self, w: &Word) -> f64;
    /// Linear conditions for `t` to be a morphism of the context; empty when every
    /// morphism of the ambient category qualifies.
    fn membership(&self, t: &Morphism) -> Vec<C64>;

    fn id(&self, w: &Word) -> Morphism {
        self.cat().identity(w)
    }
}

/// The ambient category.
pub struct Plain<'a>(pub &'a SkeletalCategory);

impl TensorContext for Plain<'_> {
    fn cat(&self) -> &SkeletalCategory {
        self.0
    }
    fn unit_word(&self) -> Word {
        Word::unit()
    }
    fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        self.0.tensor(f, g)
    }
    fn dim(&self, w: &Word) -> f64 {
        self.0.word_dim(w)
    }
    fn membership(&self, _t: &Morphism) -> Vec<C64> {
        vec![]
    }
}

/// Free bimodules `Q^{⊗j}` (`j ≥ 1`) inside `Q-mod-Q`, with `Q^{⊗a} ⊗_Q Q^{⊗c}` modelled
/// by `Q^{⊗(a+c−1)}` through `P = ι ⊗ m_Q ⊗ ι`. The unit is `Q`.
pub struct BimoduleModel<'a> {
    pub cat: &'a SkeletalCategory,
    pub q: &'a QSystem,
}

impl BimoduleModel<'_> {
    fn power_of(&self, w: &Word) -> usize {
        let k = self.q.object.len();
        assert!(w.len() % k == 0 && w.len() >= k, "word is not a positive power of Q");
        w.len() / k
    }

    /// `P_{a,c} : Q^{⊗(a+c)} → Q^{⊗(a+c−1)}`.
    pub fn structure(&self, a: usize, c: usize) -> Morphism {
        let left = self.cat.identity(&self.q.power(a - 1));
        let right = self.cat.identity(&self.q.power(c - 1));
        self.cat.tensor_all(&[&left, &self.q.m(), &right])
    }

    fn left_action(&self, a: usize) -> Morphism {
        self.cat.tensor(&self.q.m(), &self.cat.identity(&self.q.power(a - 1)))
    }

    fn right_action(&self, a: usize) -> Morphism {
        self.cat.tensor(&self.cat.identity(&self.q.power(a - 1)), &self.q.m())
    }
}

impl TensorContext for BimoduleModel<'_> {
    fn cat(&self) -> &SkeletalCategory {
        self.cat
    }
    fn unit_word(&self) -> Word {
        self.q.object.clone()
    }
    fn tensor(&self, f: &Morphism, g: &Morphism) -> Morphism {
        let (a, b) = (self.power_of(&f.source), self.power_of(&f.target));
        let (c, e) = (self.power_of(&g.source), self.power_of(&g.target));
        let inner = self.cat.tensor(f, g);
        (&(&self.structure(b, e) * &inner) * &self.structure(a, c).dagger()).scale_re(1.0 / self.q.dim)
    }
    fn dim(&self, w: &Word) -> f64 {
        self.cat.word_dim(w) / self.q.dim
    }
    fn membership(&self, t: &Morphism) -> Vec<C64> {
        let (a, b) = (self.power_of(&t.source), self.power_of(&t.target));
        let iq = self.cat.identity(&self.q.object);
        let mut out = diff(&(t * &self.left_action(a)), &(&self.left_action(b) * &self.cat.tensor(&iq, t)));
        out.extend(diff(&(t * &self.right_action(a)), &(&self.right_action(b) * &self.cat.tensor(t, &iq))));
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct QSystemVerdict {
    pub name: String,
    pub dim: f64,
    pub standard: bool,
    pub simple: bool,
    pub irreducible: bool,
    /// `dim Hom(1, Q)` in the context.
    pub unit_multiplicity: usize,
    /// `dim End_{Q-Q}(Q)` in the context.
    pub bimodule_endomorphisms: usize,
    #[serde(skip)]
    pub report: Report,
}

/// Axioms of `(q, v, w)` in a tensor context.
pub fn verify_qsystem_in(ctx: &dyn TensorContext, name: &str, q: &Word, v: &Morphism, w: &Morphism) -> QSystemVerdict {
    let cat = ctx.cat();
    let tol = cat.tol;
    let iq = ctx.id(q);
    let one = ctx.id(&ctx.unit_word());
    let m = w.dagger();
    let d = ctx.dim(q);
    let mut rep = Report::new();
    let id = |s: &str| format!("qsystem.{name}.{s}");
    rep.push(Check::new(id("v-isometry"), "v*v = ι", (&v.dagger() * v).dist(&one), tol));
    rep.push(Check::new(id("unit-left"), "(v*⊗ι)w = ι", (&ctx.tensor(&v.dagger(), &iq) * w).dist(&iq), tol));
    rep.push(Check::new(id("unit-right"), "(ι⊗v*)w = ι", (&ctx.tensor(&iq, &v.dagger()) * w).dist(&iq), tol));
    let assoc = (&ctx.tensor(w, &iq) * w).dist(&(&ctx.tensor(&iq, w) * w));
    rep.push(Check::new(id("associativity"), "(w⊗ι)w = (ι⊗w)w", assoc, tol));
    let ww = w * &m;
    rep.push(Check::new(id("frobenius-left"), "(w*⊗ι)(ι⊗w) = ww*", (&ctx.tensor(&m, &iq) * &ctx.tensor(&iq, w)).dist(&ww), tol));
    rep.push(Check::new(id("frobenius-right"), "(ι⊗w*)(w⊗ι) = ww*", (&ctx.tensor(&iq, &m) * &ctx.tensor(w, &iq)).dist(&ww), tol));
    let standard_res = (&m * w).dist(&iq.scale_re(d));
    rep.push(Check::new(id("standard"), "w*w = d(Q)ι", standard_res, tol));
    let member = ctx.membership(v).into_iter().chain(ctx.membership(w)).map(|z| z.norm()).fold(0.0, f64::max);
    rep.push(Check::new(id("structure-maps"), "v, w are morphisms of the context", member, tol));

    let homs = solution_space(&cat.zero(&ctx.unit_word(), q), |t| ctx.membership(t), 1e-9);
    let ends = solution_space(
        &cat.zero(q, q),
        |t| {
            let mut out = ctx.membership(t);
            out.extend(diff(&(t * &m), &(&m * &ctx.tensor(&iq, t))));
            out.extend(diff(&(t * &m), &(&m * &ctx.tensor(t, &iq))));
            out
        },
        1e-9,
    );
    rep.push(Check::flag(id("simple"), "Q simple as a Q-bimodule", ends.len() == 1));
    QSystemVerdict {
        name: name.to_string(),
        dim: d,
        standard: standard_res < tol,
        simple: ends.len() == 1,
        irreducible: homs.len() == 1,
        unit_multiplicity: homs.len(),
        bimodule_endomorphisms: ends.len(),
        report: rep.sorted(),
    }
}

/// Axioms of a Q-system in the ambient category, plus the iterated-coproduct identity
/// `w^{(2)}w* = (w*⊗ι⊗ι)(ι⊗w^{(2)})`.
pub fn verify_qsystem(cat: &SkeletalCategory, q: &QSystem) -> QSystemVerdict {
    let mut out = verify_qsystem_in(&Plain(cat), &q.name, &q.object, &q.v, &q.w);
    let iq = cat.identity(&q.object);
    let w2 = q.coproduct(2);
    let lhs = w2 * &q.m();
    let rhs = &cat.tensor_all(&[&q.m(), &iq, &iq]) * &cat.tensor(&iq, w2);
    out.report.push(Check::new(format!("qsystem.{}.coproduct", q.name), "w^(2)w* = (w*⊗ι⊗ι)(ι⊗w^(2))", lhs.dist(&rhs), cat.tol));
    out.report = out.report.clone().sorted();
    out
}

/// The dual Q-system checked inside the bimodule model.
pub fn verify_dual_qsystem(cat: &SkeletalCategory, q: &QSystem) -> QSystemVerdict {
    let dual = q.dual(cat);
    verify_qsystem_in(&BimoduleModel { cat, q }, &dual.name, &dual.object, &dual.v, &dual.w)
}
