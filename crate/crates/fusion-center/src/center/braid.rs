use super::RegularSpace;
use crate::report::{Check, Report};
use crate::skeleton::{Morphism, ObjectExpr, SkeletalCategory, Word};

/// An object `Z` with unitaries `c_s : U_s ⊗ Z → Z ⊗ U_s` for every simple `s`.
///
/// Values on arbitrary objects follow from naturality and multiplicativity.
#[derive(Clone, Debug)]
pub struct HalfBraidedObject {
    pub name: String,
    pub object: Word,
    pub braid: Vec<Morphism>,
    /// `(x, t, s)` blocks dropped because `t` lies outside the window.
    pub truncated: Vec<(usize, usize, usize)>,
    pub regular: Option<RegularSpace>,
}

impl HalfBraidedObject {
    /// The unit object with `c_X = ι_X`.
    pub fn trivial(cat: &SkeletalCategory) -> Self {
        let braid = (0..cat.rank()).map(|s| cat.identity(&cat.simple(s))).collect();
        HalfBraidedObject { name: "unit".into(), object: Word::unit(), braid, truncated: vec![], regular: None }
    }

    /// `c_A` for a single factor `A = ⊕ U_a`, through the inclusions of its summands.
    pub fn braid_factor(&self, cat: &SkeletalCategory, a: &ObjectExpr) -> Morphism {
        let aw = Word::single(a.clone());
        let iz = cat.identity(&self.object);
        let mut acc = cat.zero(&aw.concat(&self.object), &self.object.concat(&aw));
        for (s, &m) in a.mult.iter().enumerate() {
            for i in 0..m {
                let inc = cat.inclusion(a, s, i);
                let term = &(&cat.tensor(&iz, &inc) * &self.braid[s]) * &cat.tensor(&inc.dagger(), &iz);
                acc = &acc + &term;
            }
        }
        acc
    }

    /// `c_X` for a tensor word, by `c_{X⊗A} = (c_X ⊗ ι_A)(ι_X ⊗ c_A)`.
    pub fn braid_word(&self, cat: &SkeletalCategory, x: &Word) -> Morphism {
        let mut acc = cat.identity(&self.object);
        let mut prefix = Word::unit();
        for a in &x.0 {
            let aw = Word::single(a.clone());
            let ca = self.braid_factor(cat, a);
            acc = &cat.tensor(&acc, &cat.identity(&aw)) * &cat.tensor(&cat.identity(&prefix), &ca);
            prefix = prefix.concat(&aw);
        }
        acc
    }

    /// `c_{s⊗t}` through the decomposition `Σ_{r,α} (ι ⊗ u^α) c_r (u^{α*} ⊗ ι)`.
    pub fn braid_through_simples(&self, cat: &SkeletalCategory, w: &Word) -> Morphism {
        let iz = cat.identity(&self.object);
        let dims = cat.word_dims(w);
        let mut acc = cat.zero(&w.concat(&self.object), &self.object.concat(w));
        for (r, &n) in dims.iter().enumerate() {
            for a in 0..n {
                let u = cat.tree_vector(w, r, a);
                acc = &acc + &(&(&cat.tensor(&iz, &u) * &self.braid[r]) * &cat.tensor(&u.dagger(), &iz));
            }
        }
        acc
    }

    pub fn unitarity_residual(&self, cat: &SkeletalCategory) -> f64 {
        let mut worst = 0.0_f64;
        for c in &self.braid {
            worst = worst.max((&c.dagger() * c).dist(&cat.identity(&c.source)));
            worst = worst.max((c * &c.dagger()).dist(&cat.identity(&c.target)));
        }
        worst
    }

    /// `max_{s,t} ‖(c_s ⊗ ι)(ι ⊗ c_t) − c_{s⊗t}‖`.
    pub fn multiplicativity_residual(&self, cat: &SkeletalCategory) -> f64 {
        let mut worst = 0.0_f64;
        for s in 0..cat.rank() {
            for t in 0..cat.rank() {
                let w = cat.simples(&[s, t]);
                worst = worst.max(self.braid_word(cat, &w).dist(&self.braid_through_simples(cat, &w)));
            }
        }
        worst
    }

    /// `‖c_e − ι_Z‖` with `U_e ⊗ Z` and `Z ⊗ U_e` identified with `Z`.
    pub fn unit_residual(&self, cat: &SkeletalCategory) -> f64 {
        let c = &self.braid[cat.unit()];
        let into = cat.regroup(&self.object, &c.source).expect("unit legs");
        let out = cat.regroup(&c.target, &self.object).expect("unit legs");
        (&(&out * c) * &into).dist(&cat.identity(&self.object))
    }
}

/// Unitarity, unit and multiplicativity residuals of a half-braiding.
pub fn verify_half_braiding(cat: &SkeletalCategory, z: &HalfBraidedObject) -> Report {
    let mut rep = Report::new();
    let tol = cat.tol;
    rep.push(Check::new(format!("halfbraid.{}.unitarity", z.name), "unitary half-braiding", z.unitarity_residual(cat), tol));
    rep.push(Check::new(format!("halfbraid.{}.unit", z.name), "half-braiding at the unit", z.unit_residual(cat), tol));
    rep.push(Check::new(
        format!("halfbraid.{}.multiplicativity", z.name),
        "c_{X⊗Y} = (c_X⊗ι)(ι⊗c_Y)",
        z.multiplicativity_residual(cat),
        tol,
    ));
    if !z.truncated.is_empty() {
        rep.note(format!("{} blocks truncated outside the window", z.truncated.len()));
    }
    rep.sorted()
}
