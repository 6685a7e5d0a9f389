use super::{Morphism, ObjectExpr, SkeletalCategory, Word};
use crate::report::{Check, Report};
use crate::{Result, C64};

/// Solutions `(R_s, R̄_s)` of the conjugate equations for one simple.
#[derive(Clone, Debug)]
pub struct StandardPair {
    pub label: usize,
    pub r: Morphism,
    pub rbar: Morphism,
}

impl SkeletalCategory {
    /// `R_A : 1 → Ā ⊗ A` for a single factor. On each simple the vector is
    /// `√d_s κ_s` times the canonical basis vector of `Hom(1, s̄ ⊗ s)`.
    fn r_factor(&self, a: &ObjectExpr) -> Morphism {
        let abar = a.dual(&self.rules);
        let w = Word(vec![abar.clone(), a.clone()]);
        let mut m = self.zero(&Word::unit(), &w);
        let e = self.unit();
        // Basis at root e: pairs (b, x) with x = (copy of b̄, copy of b) and N_{b̄ b}^e = 1.
        let mut off = 0;
        for b in 0..self.rank() {
            if abar.mult[b] == 0 {
                continue;
            }
            for x in 0..self.rank() {
                let n = self.n(b, x, e);
                if n == 0 || a.mult[x] == 0 {
                    continue;
                }
                for i in 0..abar.mult[b] {
                    let row = off + (i * a.mult[x] + i) * n;
                    m.blocks[e][(row, 0)] = self.pivotal[x] * self.d(x).sqrt();
                }
                off += abar.mult[b] * a.mult[x] * n;
            }
        }
        m
    }

    /// `R̄_A : 1 → A ⊗ Ā`, with the canonical basis vector scaled by `√d_s`.
    fn rbar_factor(&self, a: &ObjectExpr) -> Morphism {
        let abar = a.dual(&self.rules);
        let w = Word(vec![a.clone(), abar.clone()]);
        let mut m = self.zero(&Word::unit(), &w);
        let e = self.unit();
        let mut off = 0;
        for b in 0..self.rank() {
            if a.mult[b] == 0 {
                continue;
            }
            for x in 0..self.rank() {
                let n = self.n(b, x, e);
                if n == 0 || abar.mult[x] == 0 {
                    continue;
                }
                for i in 0..a.mult[b] {
                    let row = off + (i * abar.mult[x] + i) * n;
                    m.blocks[e][(row, 0)] = C64::new(self.d(b).sqrt(), 0.0);
                }
                off += a.mult[b] * abar.mult[x] * n;
            }
        }
        m
    }

    /// `R_X : 1 → X̄ ⊗ X` for a tensor word, via `R_{X⊗A} = (ι_Ā ⊗ R_X ⊗ ι_A) R_A`.
    pub fn std_r(&self, x: &Word) -> Morphism {
        if x.is_empty() {
            return self.identity(&Word::unit());
        }
        let mut acc = self.r_factor(&x.0[0]);
        for k in 1..x.len() {
            let a = Word::single(x.0[k].clone());
            let ra = self.r_factor(&x.0[k]);
            let abar = self.dual_word(&a);
            let mid = self.tensor_all(&[&self.identity(&abar), &acc, &self.identity(&a)]);
            acc = &mid * &ra;
        }
        acc
    }

    /// `R̄_X : 1 → X ⊗ X̄`, via `R̄_{X⊗A} = (ι_X ⊗ R̄_A ⊗ ι_X̄) R̄_X`.
    pub fn std_rbar(&self, x: &Word) -> Morphism {
        if x.is_empty() {
            return self.identity(&Word::unit());
        }
        let mut acc = self.rbar_factor(&x.0[0]);
        for k in 1..x.len() {
            let xp = x.prefix(k);
            let rba = self.rbar_factor(&x.0[k]);
            let xpbar = self.dual_word(&xp);
            let mid = self.tensor_all(&[&self.identity(&xp), &rba, &self.identity(&xpbar)]);
            acc = &mid * &acc;
        }
        acc
    }

    pub fn standard_solution(&self, s: usize) -> Result<StandardPair> {
        self.require_full()?;
        let w = self.simple(s);
        Ok(StandardPair { label: s, r: self.std_r(&w), rbar: self.std_rbar(&w) })
    }

    /// Residuals of both conjugate equations and of the norm condition for a word.
    pub fn conjugate_equation_residuals(&self, x: &Word) -> (f64, f64, f64) {
        let xbar = self.dual_word(x);
        let r = self.std_r(x);
        let rb = self.std_rbar(x);
        let ix = self.identity(x);
        let ixb = self.identity(&xbar);
        let lhs1 = &self.tensor(&ixb, &rb.dagger()) * &self.tensor(&r, &ixb);
        let lhs2 = &self.tensor(&ix, &r.dagger()) * &self.tensor(&rb, &ix);
        let d = self.word_dim(x);
        let n1 = ((&r.dagger() * &r).scalar(self.unit()).re - d).abs();
        let n2 = ((&rb.dagger() * &rb).scalar(self.unit()).re - d).abs();
        (lhs1.dist(&ixb), lhs2.dist(&ix), n1.max(n2))
    }

    /// Left categorical trace `R*(ι ⊗ T)R`.
    pub fn trace_left(&self, t: &Morphism) -> C64 {
        let x = &t.source;
        let r = self.std_r(x);
        let xbar = self.dual_word(x);
        (&(&r.dagger() * &self.tensor(&self.identity(&xbar), t)) * &r).scalar(self.unit())
    }

    /// Right categorical trace `R̄*(T ⊗ ι)R̄`.
    pub fn trace_right(&self, t: &Morphism) -> C64 {
        let x = &t.source;
        let rb = self.std_rbar(x);
        let xbar = self.dual_word(x);
        (&(&rb.dagger() * &self.tensor(t, &self.identity(&xbar))) * &rb).scalar(self.unit())
    }

    pub fn categorical_trace(&self, t: &Morphism) -> Result<C64> {
        if t.source != t.target {
            return Err(crate::Error::Shape("trace needs an endomorphism".into()));
        }
        self.require_full()?;
        Ok(self.trace_left(t))
    }

    /// Trace computed from block traces, `Σ_r d_r tr(T_r)`.
    pub fn block_trace(&self, t: &Morphism) -> C64 {
        t.blocks.iter().enumerate().map(|(r, b)| b.trace() * self.d(r)).sum()
    }

    /// `(Tr_X ⊗ ι)(T)` for `T ∈ End(X ⊗ Y)` where `X` is the first `k` factors.
    pub fn partial_trace_left(&self, t: &Morphism, k: usize) -> Result<Morphism> {
        if t.source != t.target || k > t.source.len() {
            return Err(crate::Error::Shape("partial trace needs an endomorphism of a longer word".into()));
        }
        let x = t.source.prefix(k);
        let y = t.source.suffix(k);
        let xbar = self.dual_word(&x);
        let iy = self.identity(&y);
        let rx = self.std_r(&x);
        let up = self.tensor(&rx, &iy);
        let mid = self.tensor(&self.identity(&xbar), t);
        Ok(&(&up.dagger() * &mid) * &up)
    }

    /// `(ι ⊗ Tr_Y)(T)` for `T ∈ End(X ⊗ Y)` where `X` is the first `k` factors.
    pub fn partial_trace_right(&self, t: &Morphism, k: usize) -> Result<Morphism> {
        if t.source != t.target || k > t.source.len() {
            return Err(crate::Error::Shape("partial trace needs an endomorphism of a longer word".into()));
        }
        let x = t.source.prefix(k);
        let y = t.source.suffix(k);
        let ybar = self.dual_word(&y);
        let ix = self.identity(&x);
        let rby = self.std_rbar(&y);
        let up = self.tensor(&ix, &rby);
        let mid = self.tensor(t, &self.identity(&ybar));
        Ok(&(&up.dagger() * &mid) * &up)
    }

    /// `T∨ : Ȳ → X̄` for `T : X → Y`, defined by `(T ⊗ ι)R̄_X = (ι ⊗ T∨)R̄_Y`.
    pub fn dual_morphism(&self, t: &Morphism) -> Morphism {
        let xbar = self.dual_word(&t.source);
        let ybar = self.dual_word(&t.target);
        let ry = self.std_r(&t.target);
        let rbx = self.std_rbar(&t.source);
        let a = self.tensor(&self.identity(&ybar), &rbx);
        let b = self.tensor_all(&[&self.identity(&ybar), t, &self.identity(&xbar)]);
        let c = self.tensor(&ry.dagger(), &self.identity(&xbar));
        &(&c * &b) * &a
    }

    /// Residuals of the standard pair for one simple, reported as checks.
    pub fn standard_pair_report(&self, s: usize) -> Report {
        let mut rep = Report::new();
        let w = self.simple(s);
        let (c1, c2, nrm) = self.conjugate_equation_residuals(&w);
        let name = self.label(s).to_string();
        rep.push(Check::new(format!("conjugate.{name}.eq1"), "conjugate equations", c1, self.tol));
        rep.push(Check::new(format!("conjugate.{name}.eq2"), "conjugate equations", c2, self.tol));
        rep.push(Check::new(format!("conjugate.{name}.norm"), "standard solution norm", nrm, self.tol));
        let t = self.identity(&w);
        let sph = (self.trace_left(&t) - self.trace_right(&t)).norm();
        rep.push(Check::new(format!("spherical.{name}"), "left and right traces agree", sph, self.tol));
        rep
    }
}
