use crate::skeleton::{perron_dims, FusionRules, SkeletalCategory};
use crate::{Error, Result};

/// A possibly infinite set of simple classes with its fusion rules.
///
/// Labels are positions in a fixed exhaustion order.
pub trait IrrBackend: Send + Sync {
    fn name(&self) -> String;
    fn is_finite(&self) -> bool;
    /// Number of labels when finite.
    fn size(&self) -> Option<usize>;
    fn unit(&self) -> usize {
        0
    }
    fn dual(&self, s: usize) -> usize;
    fn dim(&self, s: usize) -> f64;
    /// Nonzero `(r, N_{st}^r)`.
    fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)>;
    fn mult(&self, s: usize, t: usize, r: usize) -> usize {
        self.products(s, t).into_iter().find(|&(x, _)| x == r).map_or(0, |(_, m)| m)
    }
    fn label_name(&self, s: usize) -> String;
    fn index_of(&self, name: &str) -> Result<usize>;
    /// Number of labels of word length at most `radius`.
    fn ball_size(&self, radius: usize) -> usize;
    /// The first `n` labels (all of them if the backend is smaller).
    fn labels(&self, n: usize) -> Vec<usize> {
        let m = self.size().map_or(n, |s| s.min(n));
        (0..m).collect()
    }
    /// Exact norms `(‖P Γ P‖, ‖Γ P‖)` on a complete ball, using symmetry when available.
    fn radial_bounds(&self, _x: &[(usize, usize)], _radius: usize) -> Option<(f64, f64)> {
        None
    }
    fn boxed_clone(&self) -> Box<dyn IrrBackend>;
}

/// A finite fusion ring with Perron-Frobenius dimensions.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    pub name: String,
    pub rules: FusionRules,
    pub dims: Vec<f64>,
}

impl FiniteRing {
    pub fn new(name: impl Into<String>, rules: FusionRules) -> Result<Self> {
        let dims = perron_dims(&rules)?;
        Ok(FiniteRing { name: name.into(), rules, dims })
    }

    pub fn from_category(cat: &SkeletalCategory) -> Self {
        FiniteRing { name: cat.name.clone(), rules: cat.rules.clone(), dims: cat.dims.clone() }
    }
}

impl IrrBackend for FiniteRing {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn size(&self) -> Option<usize> {
        Some(self.rules.rank())
    }
    fn unit(&self) -> usize {
        self.rules.unit()
    }
    fn dual(&self, s: usize) -> usize {
        self.rules.dual(s)
    }
    fn dim(&self, s: usize) -> f64 {
        self.dims[s]
    }
    fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        self.rules.products(s, t)
    }
    fn mult(&self, s: usize, t: usize, r: usize) -> usize {
        self.rules.n(s, t, r)
    }
    fn label_name(&self, s: usize) -> String {
        self.rules.label(s).to_string()
    }
    fn index_of(&self, name: &str) -> Result<usize> {
        self.rules.index(name)
    }
    fn ball_size(&self, _radius: usize) -> usize {
        self.rules.rank()
    }
    fn boxed_clone(&self) -> Box<dyn IrrBackend> {
        Box::new(self.clone())
    }
}

/// Temperley-Lieb / SU(2)-type ring with loop value `d ≥ 2`:
/// labels `0, 1, 2, …`, `N_{ab}^c = 1` iff `|a−b| ≤ c ≤ a+b` and `a+b+c` is even.
#[derive(Clone, Debug)]
pub struct TemperleyLieb {
    pub d: f64,
}

impl TemperleyLieb {
    pub fn new(d: f64) -> Result<Self> {
        if !(d >= 2.0) {
            return Err(Error::Input(format!("generic Temperley-Lieb ring needs d >= 2, got {d}")));
        }
        Ok(TemperleyLieb { d })
    }
}

impl IrrBackend for TemperleyLieb {
    fn name(&self) -> String {
        format!("TL({})", self.d)
    }
    fn is_finite(&self) -> bool {
        false
    }
    fn size(&self) -> Option<usize> {
        None
    }
    fn dual(&self, s: usize) -> usize {
        s
    }
    /// Chebyshev recursion `d_{n+1} = d·d_n − d_{n−1}`.
    fn dim(&self, s: usize) -> f64 {
        let (mut a, mut b) = (1.0, self.d);
        if s == 0 {
            return 1.0;
        }
        for _ in 1..s {
            let c = self.d * b - a;
            a = b;
            b = c;
        }
        b
    }
    fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        let lo = s.abs_diff(t);
        (lo..=s + t).step_by(2).map(|c| (c, 1)).collect()
    }
    fn mult(&self, s: usize, t: usize, r: usize) -> usize {
        usize::from(s.abs_diff(t) <= r && r <= s + t && (s + t + r) % 2 == 0)
    }
    fn label_name(&self, s: usize) -> String {
        s.to_string()
    }
    fn index_of(&self, name: &str) -> Result<usize> {
        name.parse().map_err(|_| Error::Input(format!("unknown label '{name}' (expected a nonnegative integer)")))
    }
    fn ball_size(&self, radius: usize) -> usize {
        radius + 1
    }
    fn boxed_clone(&self) -> Box<dyn IrrBackend> {
        Box::new(self.clone())
    }
}

/// The SU(2) level-`k` fusion ring: labels `0..=k` with the truncated Clebsch-Gordan rule.
#[derive(Clone, Debug)]
pub struct SuTwoLevel {
    pub k: usize,
}

impl SuTwoLevel {
    pub fn new(k: usize) -> Self {
        SuTwoLevel { k }
    }
}

impl IrrBackend for SuTwoLevel {
    fn name(&self) -> String {
        format!("SU2_{}", self.k)
    }
    fn is_finite(&self) -> bool {
        true
    }
    fn size(&self) -> Option<usize> {
        Some(self.k + 1)
    }
    fn dual(&self, s: usize) -> usize {
        s
    }
    fn dim(&self, s: usize) -> f64 {
        let q = std::f64::consts::PI / (self.k as f64 + 2.0);
        ((s as f64 + 1.0) * q).sin() / q.sin()
    }
    fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        let lo = s.abs_diff(t);
        let hi = (s + t).min(2 * self.k - s - t);
        if lo > hi {
            return vec![];
        }
        (lo..=hi).step_by(2).map(|c| (c, 1)).collect()
    }
    fn label_name(&self, s: usize) -> String {
        s.to_string()
    }
    fn index_of(&self, name: &str) -> Result<usize> {
        let s: usize = name.parse().map_err(|_| Error::Input(format!("unknown label '{name}'")))?;
        if s > self.k {
            return Err(Error::Input(format!("label {s} exceeds level {}", self.k)));
        }
        Ok(s)
    }
    fn ball_size(&self, radius: usize) -> usize {
        (radius + 1).min(self.k + 1)
    }
    fn boxed_clone(&self) -> Box<dyn IrrBackend> {
        Box::new(self.clone())
    }
}

/// The free group on `k` generators as a pointed fusion ring (all dimensions 1).
///
/// Letters are `a, A, b, B, c, C` with capitals denoting inverses; labels are
/// reduced words ordered by length, then lexicographically in that alphabet.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    pub k: usize,
}

impl FreeGroup {
    pub fn new(k: usize) -> Self {
        FreeGroup { k }
    }

    fn letters(&self) -> usize {
        2 * self.k
    }

    fn inv(l: usize) -> usize {
        l ^ 1
    }

    /// Number of reduced words of length exactly `len`.
    fn sphere(&self, len: usize) -> usize {
        if len == 0 {
            1
        } else {
            (self.letters() - 1).checked_pow(len as u32 - 1).and_then(|p| p.checked_mul(self.letters())).unwrap_or(usize::MAX)
        }
    }

    pub fn word(&self, mut idx: usize) -> Vec<usize> {
        let mut len = 0;
        while idx >= self.sphere(len) {
            idx -= self.sphere(len);
            len += 1;
        }
        if len == 0 {
            return vec![];
        }
        let m = self.letters() - 1;
        let mut digits = vec![0; len];
        for i in (1..len).rev() {
            digits[i] = idx % m;
            idx /= m;
        }
        digits[0] = idx;
        let mut w = Vec::with_capacity(len);
        w.push(digits[0]);
        for i in 1..len {
            let forbidden = Self::inv(w[i - 1]);
            let l = if digits[i] >= forbidden { digits[i] + 1 } else { digits[i] };
            w.push(l);
        }
        w
    }

    pub fn index(&self, w: &[usize]) -> usize {
        let len = w.len();
        let mut base: usize = (0..len).map(|l| self.sphere(l)).sum();
        if len == 0 {
            return 0;
        }
        let m = self.letters() - 1;
        let mut idx = w[0];
        for i in 1..len {
            let forbidden = Self::inv(w[i - 1]);
            let dgt = if w[i] > forbidden { w[i] - 1 } else { w[i] };
            idx = idx * m + dgt;
        }
        base += idx;
        base
    }

    fn multiply(&self, s: &[usize], t: &[usize]) -> Vec<usize> {
        let mut w = s.to_vec();
        for &l in t {
            if w.last() == Some(&Self::inv(l)) {
                w.pop();
            } else {
                w.push(l);
            }
        }
        w
    }

    /// The symmetric generating object `Σ (a_i + a_i^{-1})`.
    pub fn generator_sum(&self) -> Vec<(usize, usize)> {
        (0..self.letters()).map(|l| (self.index(&[l]), 1)).collect()
    }
}

impl IrrBackend for FreeGroup {
    fn name(&self) -> String {
        format!("FreeGroup{}", self.k)
    }
    fn is_finite(&self) -> bool {
        false
    }
    fn size(&self) -> Option<usize> {
        None
    }
    fn dual(&self, s: usize) -> usize {
        let w: Vec<usize> = self.word(s).iter().rev().map(|&l| Self::inv(l)).collect();
        self.index(&w)
    }
    fn dim(&self, _s: usize) -> f64 {
        1.0
    }
    fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        vec![(self.index(&self.multiply(&self.word(s), &self.word(t))), 1)]
    }
    fn label_name(&self, s: usize) -> String {
        let w = self.word(s);
        if w.is_empty() {
            return "e".into();
        }
        w.iter()
            .map(|&l| {
                let c = (b'a' + (l / 2) as u8) as char;
                if l % 2 == 1 { c.to_ascii_uppercase() } else { c }
            })
            .collect()
    }
    fn index_of(&self, name: &str) -> Result<usize> {
        if name == "e" {
            return Ok(0);
        }
        let mut w = vec![];
        for ch in name.chars() {
            let lower = ch.to_ascii_lowercase();
            if !lower.is_ascii_lowercase() || (lower as u8 - b'a') as usize >= self.k {
                return Err(Error::Input(format!("unknown letter '{ch}' in '{name}'")));
            }
            let l = 2 * (lower as u8 - b'a') as usize + usize::from(ch.is_ascii_uppercase());
            w = self.multiply(&w, &[l]);
        }
        Ok(self.index(&w))
    }
    /// Saturates at `usize::MAX` for radii whose balls cannot be enumerated.
    fn ball_size(&self, radius: usize) -> usize {
        (0..=radius).map(|l| self.sphere(l)).fold(0usize, usize::saturating_add)
    }
    /// For the symmetric generator sum the top singular vectors are radial,
    /// so both norms reduce to a weighted path on the spheres `0..=radius`.
    fn radial_bounds(&self, x: &[(usize, usize)], radius: usize) -> Option<(f64, f64)> {
        let mut gens = self.generator_sum();
        gens.sort();
        let mut xs = x.to_vec();
        xs.sort();
        if xs != gens || self.k == 0 {
            return None;
        }
        let q = self.letters() as f64;
        let n = radius + 1;
        let weight = |j: usize| if j == 0 { q.sqrt() } else { (q - 1.0).sqrt() };
        let mut a = nalgebra::DMatrix::<f64>::zeros(n, n);
        for j in 0..radius {
            a[(j, j + 1)] = weight(j);
            a[(j + 1, j)] = weight(j);
        }
        let compressed = crate::linalg::real_sym_top(&a);
        let mut g = &a * &a;
        let w = weight(radius);
        g[(radius, radius)] += w * w;
        let column = crate::linalg::real_sym_top(&g).max(0.0).sqrt();
        Some((compressed, column))
    }
    fn boxed_clone(&self) -> Box<dyn IrrBackend> {
        Box::new(self.clone())
    }
}

/// The group `ℤ²` as a pointed fusion ring; labels ordered by ℓ¹-spheres.
#[derive(Clone, Debug)]
pub struct ZxZ;

impl ZxZ {
    /// Point of the exhaustion with index `idx`.
    pub fn point(idx: usize) -> (i64, i64) {
        if idx == 0 {
            return (0, 0);
        }
        let mut rho = 1usize;
        let mut rem = idx - 1;
        while rem >= 4 * rho {
            rem -= 4 * rho;
            rho += 1;
        }
        let r = rho as i64;
        let side = rem / rho;
        let j = (rem % rho) as i64;
        match side {
            0 => (r - j, j),
            1 => (-j, r - j),
            2 => (-r + j, -j),
            _ => (j, -r + j),
        }
    }

    pub fn index((x, y): (i64, i64)) -> usize {
        let rho = (x.abs() + y.abs()) as usize;
        if rho == 0 {
            return 0;
        }
        let base = 1 + 2 * rho * (rho - 1);
        let (side, j) = if x > 0 && y >= 0 {
            (0, y)
        } else if x <= 0 && y > 0 {
            (1, -x)
        } else if x < 0 && y <= 0 {
            (2, -y)
        } else {
            (3, x)
        };
        base + side * rho + j as usize
    }

    pub fn generator_sum() -> Vec<(usize, usize)> {
        vec![(Self::index((1, 0)), 1), (Self::index((-1, 0)), 1), (Self::index((0, 1)), 1), (Self::index((0, -1)), 1)]
    }
}

impl IrrBackend for ZxZ {
    fn name(&self) -> String {
        "ZxZ".into()
    }
    fn is_finite(&self) -> bool {
        false
    }
    fn size(&self) -> Option<usize> {
        None
    }
    fn dual(&self, s: usize) -> usize {
        let (x, y) = Self::point(s);
        Self::index((-x, -y))
    }
    fn dim(&self, _s: usize) -> f64 {
        1.0
    }
    fn products(&self, s: usize, t: usize) -> Vec<(usize, usize)> {
        let (a, b) = Self::point(s);
        let (c, d) = Self::point(t);
        vec![(Self::index((a + c, b + d)), 1)]
    }
    fn label_name(&self, s: usize) -> String {
        let (x, y) = Self::point(s);
        format!("({x},{y})")
    }
    fn index_of(&self, name: &str) -> Result<usize> {
        let bad = || Error::Input(format!("unknown label '{name}' (expected (x,y))"));
        let inner = name.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (x, y) = inner.split_once(',').ok_or_else(bad)?;
        let x: i64 = x.trim().parse().map_err(|_| bad())?;
        let y: i64 = y.trim().parse().map_err(|_| bad())?;
        Ok(Self::index((x, y)))
    }
    fn ball_size(&self, radius: usize) -> usize {
        1 + 2 * radius * (radius + 1)
    }
    fn boxed_clone(&self) -> Box<dyn IrrBackend> {
        Box::new(self.clone())
    }
}
