//! The extended affine Weyl group `W̃ = X ⋊ W₀`.
//!
//! An element is the pair `(w, ν)` standing for `t_ν · w`; it acts on the
//! apartment `X ⊗ R` by `x ↦ w(x) - ν`, so a pure translation `t_ν` moves
//! points by `-ν`. Composition follows from the action:
//! `(t_ν w)(t_ν' w') = t_{ν + w ν'} w w'`.
//!
//! The base alcove is `{x : 0 < <x, α> < 1 for all α > 0}`. Its walls give the
//! simple affine reflections `s_1, …, s_r` (through the origin) and
//! `s_0 = s_{θ,1}`, where `s_{α,k}` reflects in `{<x, α> = k}` and equals
//! `t_{-k α^∨} s_α`.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dot, SmithQuotient};
use crate::rootsys::{Coweight, FiniteWeylElt, RootSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AffineError {
    #[error("element lives in a lattice of rank {got}, the group has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple reflection index {0} out of range")]
    BadIndex(usize),
    #[error("cannot parse element from {0:?}")]
    Parse(String),
}

/// `t_ν · w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElt {
    finite: FiniteWeylElt,
    translation: Coweight,
}

impl AffineElt {
    pub fn finite_part(&self) -> &FiniteWeylElt {
        &self.finite
    }

    pub fn translation_part(&self) -> &Coweight {
        &self.translation
    }

    pub fn is_translation(&self) -> bool {
        self.finite.is_identity()
    }

    fn dim(&self) -> usize {
        self.translation.coords().len()
    }
}

/// The affine reflection `s_{α,k}` in the hyperplane `<x, α> = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Reflection {
    /// Index into [`RootSystem::positive_roots`].
    pub root: usize,
    pub level: i64,
}

/// Class of an element in `X / Q^∨`, i.e. its component in `W̃ / W_aff`.
///
/// The trivial class is always stored with no components, so it prints and
/// parses as `0` in every group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OmegaClass(Vec<i64>);

impl OmegaClass {
    fn new(components: Vec<i64>) -> Self {
        if components.iter().all(|&x| x == 0) {
            OmegaClass(Vec::new())
        } else {
            OmegaClass(components)
        }
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for OmegaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// `s_{i_1} ⋯ s_{i_k} τ` with `τ` the length-zero element of class `omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub omega: OmegaClass,
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("e")?;
        } else {
            let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
            f.write_str(&parts.join("."))?;
        }
        write!(f, "@{}", self.omega)
    }
}

impl FromStr for ReducedWord {
    type Err = AffineError;

    /// `0.1.2@1` or `e@0`; the class part may be omitted for the trivial class.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AffineError::Parse(s.to_string());
        let (word, class) = s.trim().split_once('@').unwrap_or((s.trim(), ""));
        let letters = match word {
            "" | "e" => Vec::new(),
            w => w
                .split('.')
                .map(|x| x.trim().parse::<usize>().map_err(|_| err()))
                .collect::<Result<_, _>>()?,
        };
        let omega = match class.trim() {
            "" => Vec::new(),
            c => c
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<_, _>>()?,
        };
        Ok(ReducedWord { letters, omega: OmegaClass::new(omega) })
    }
}

/// Serialized form of an element used in JSON exports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementRecord {
    pub finite_word: Vec<usize>,
    pub translation: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct AffineWeylGroup {
    rs: RootSystem,
    quotient: SmithQuotient,
    /// index 0 is `s_0`
    simple: Vec<AffineElt>,
    /// `2h`; the base-alcove point `2ρ^∨ / 2h` has all root values in `(0, 1)`.
    scale: i64,
}

impl AffineWeylGroup {
    pub fn new(rs: RootSystem) -> Self {
        let quotient = SmithQuotient::new(rs.dim(), rs.simple_coroots());
        let scale = 2 * rs.coxeter_number();
        let mut group = AffineWeylGroup { rs, quotient, simple: Vec::new(), scale };
        let theta = group.rs.positive_roots().len() - 1;
        let mut simple = vec![group.reflection(Reflection { root: theta, level: 1 })];
        for i in 1..=group.rs.rank() {
            simple.push(group.from_parts(group.rs.simple_reflection(i).clone(), group.rs.zero()));
        }
        group.simple = simple;
        group
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Number of simple affine reflections, `rank + 1`.
    pub fn num_generators(&self) -> usize {
        self.simple.len()
    }

    pub fn identity(&self) -> AffineElt {
        self.from_parts(FiniteWeylElt::identity(self.rs.dim()), self.rs.zero())
    }

    pub fn from_parts(&self, finite: FiniteWeylElt, translation: Coweight) -> AffineElt {
        AffineElt { finite, translation }
    }

    /// The translation `t_ν`, acting on the apartment by `x ↦ x - ν`.
    pub fn translation(&self, nu: &Coweight) -> AffineElt {
        self.from_parts(FiniteWeylElt::identity(self.rs.dim()), nu.clone())
    }

    pub fn simple_reflection(&self, i: usize) -> &AffineElt {
        &self.simple[i]
    }

    pub fn reflection(&self, r: Reflection) -> AffineElt {
        let root = &self.rs.positive_roots()[r.root];
        let nu: Vec<i64> = root.coroot.iter().map(|c| -r.level * c).collect();
        self.from_parts(
            FiniteWeylElt::reflection(&root.functional, &root.coroot),
            self.rs.coweight(nu).expect("coroot has lattice dimension"),
        )
    }

    fn check(&self, a: &AffineElt) -> Result<(), AffineError> {
        if a.dim() != self.rs.dim() || a.finite.dim() != self.rs.dim() {
            return Err(AffineError::DimensionMismatch { expected: self.rs.dim(), got: a.dim() });
        }
        Ok(())
    }

    pub(crate) fn mul(&self, a: &AffineElt, b: &AffineElt) -> AffineElt {
        let moved = a.finite.apply(b.translation.coords());
        let nu = a.translation.coords().iter().zip(&moved).map(|(x, y)| x + y).collect();
        AffineElt { finite: a.finite.mul(&b.finite), translation: Coweight::from_raw(nu) }
    }

    pub fn compose(&self, a: &AffineElt, b: &AffineElt) -> Result<AffineElt, AffineError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn invert(&self, a: &AffineElt) -> Result<AffineElt, AffineError> {
        self.check(a)?;
        let w_inv = a.finite.inverse(&self.rs);
        let nu = w_inv.apply_coweight(&a.translation).neg();
        Ok(AffineElt { finite: w_inv, translation: nu })
    }

    pub fn apply(&self, a: &AffineElt, point: &[Rational64]) -> Result<Vec<Rational64>, AffineError> {
        self.check(a)?;
        if point.len() != self.rs.dim() {
            return Err(AffineError::DimensionMismatch { expected: self.rs.dim(), got: point.len() });
        }
        Ok(self.apply_unchecked(a, point))
    }

    fn apply_unchecked(&self, a: &AffineElt, point: &[Rational64]) -> Vec<Rational64> {
        a.finite
            .apply_rational(point)
            .into_iter()
            .zip(a.translation.coords())
            .map(|(x, &n)| x - Rational64::from(n))
            .collect()
    }

    /// A point in the interior of the base alcove.
    pub fn base_point(&self) -> Vec<Rational64> {
        self.rs
            .two_rho_check()
            .iter()
            .map(|&x| Rational64::new(x, self.scale))
            .collect()
    }

    /// Iwahori–Matsumoto length:
    /// `Σ_{α>0, w⁻¹α>0} |<ν,α>| + Σ_{α>0, w⁻¹α<0} |<ν,α> + 1|`.
    pub fn length(&self, a: &AffineElt) -> usize {
        let v = a.finite.apply(self.rs.two_rho_check());
        self.rs
            .positive_roots()
            .iter()
            .map(|r| {
                let n = dot(a.translation.coords(), &r.functional);
                if dot(&v, &r.functional) > 0 {
                    n.unsigned_abs()
                } else {
                    (n + 1).unsigned_abs()
                }
            })
            .sum::<u64>() as usize
    }

    /// Number of affine root hyperplanes separating the base alcove from its image.
    pub fn length_by_hyperplanes(&self, a: &AffineElt) -> usize {
        let p = self.base_point();
        let q = self.apply_unchecked(a, &p);
        let pair = |x: &[Rational64], f: &[i64]| -> Rational64 {
            x.iter().zip(f).map(|(&x, &c)| x * Rational64::from(c)).sum()
        };
        let mut count = 0;
        for r in self.rs.positive_roots() {
            let (s, t) = (pair(&p, &r.functional), pair(&q, &r.functional));
            let (lo, hi) = if s < t { (s, t) } else { (t, s) };
            let mut k = lo.floor().to_integer();
            while Rational64::from(k) <= hi {
                let kq = Rational64::from(k);
                if (s - kq) * (t - kq) < Rational64::zero() {
                    count += 1;
                }
                k += 1;
            }
        }
        count
    }

    /// `ℓ(s_i a) < ℓ(a)`, decided by which side of the wall of `s_i` the image
    /// of the base point lands on.
    pub fn is_left_descent(&self, a: &AffineElt, i: usize) -> bool {
        let v = a.finite.apply(self.rs.two_rho_check());
        if i == 0 {
            let theta = &self.rs.highest_root().functional;
            dot(&v, theta) - self.scale * dot(a.translation.coords(), theta) > self.scale
        } else {
            let alpha = &self.rs.simple_roots()[i - 1];
            dot(&v, alpha) - self.scale * dot(a.translation.coords(), alpha) < 0
        }
    }

    fn first_left_descent(&self, a: &AffineElt) -> Option<usize> {
        (0..self.simple.len()).find(|&i| self.is_left_descent(a, i))
    }

    pub fn omega_class(&self, a: &AffineElt) -> OmegaClass {
        OmegaClass::new(self.quotient.label(a.translation.coords()))
    }

    /// Moduli of the cyclic factors of `X / Q^∨` (0 for a free factor).
    pub fn omega_structure(&self) -> Vec<i64> {
        self.quotient.moduli()
    }

    pub fn parse_omega_class(&self, components: &[i64]) -> Result<OmegaClass, AffineError> {
        let moduli = self.quotient.moduli();
        let label = if components.iter().all(|&x| x == 0) {
            Vec::new()
        } else if components.len() == moduli.len() {
            components
                .iter()
                .zip(&moduli)
                .map(|(&x, &d)| if d == 0 { x } else { x.rem_euclid(d) })
                .collect()
        } else {
            return Err(AffineError::Parse(format!("{components:?}")));
        };
        Ok(OmegaClass::new(label))
    }

    /// The unique length-zero element of the given class.
    pub fn length_zero_element(&self, class: &OmegaClass) -> AffineElt {
        let nu = self.quotient.lift(class.components());
        let mut y = self.translation(&Coweight::from_raw(nu));
        while let Some(i) = self.first_left_descent(&y) {
            y = self.mul(&self.simple[i], &y);
        }
        y
    }

    /// Strips left descents (smallest index first) down to a length-zero element.
    pub fn reduced_word(&self, a: &AffineElt) -> ReducedWord {
        let mut letters = Vec::new();
        let mut y = a.clone();
        while let Some(i) = self.first_left_descent(&y) {
            letters.push(i);
            y = self.mul(&self.simple[i], &y);
        }
        ReducedWord { letters, omega: self.omega_class(a) }
    }

    pub fn from_reduced_word(&self, word: &ReducedWord) -> Result<AffineElt, AffineError> {
        let class = self.parse_omega_class(word.omega.components())?;
        let mut y = self.length_zero_element(&class);
        for &i in word.letters.iter().rev() {
            let s = self.simple.get(i).ok_or(AffineError::BadIndex(i))?;
            y = self.mul(s, &y);
        }
        Ok(y)
    }

    /// Bruhat order, by the descent recursion: with `s y < y`,
    /// `x ≤ y` iff `s x ≤ s y` (when `s x < x`) or `x ≤ s y` (otherwise).
    pub fn bruhat_leq(&self, x: &AffineElt, y: &AffineElt) -> Result<bool, AffineError> {
        self.check(x)?;
        self.check(y)?;
        if self.omega_class(x) != self.omega_class(y) {
            return Ok(false);
        }
        let mut lx = self.length(x);
        let mut ly = self.length(y);
        let (mut x, mut y) = (x.clone(), y.clone());
        loop {
            if lx > ly {
                return Ok(false);
            }
            if lx == ly {
                return Ok(x == y);
            }
            let s = self.first_left_descent(&y).expect("positive length implies a descent");
            y = self.mul(&self.simple[s], &y);
            ly -= 1;
            if self.is_left_descent(&x, s) {
                x = self.mul(&self.simple[s], &x);
                lx -= 1;
            }
        }
    }

    /// Range of hyperplane levels searched by [`Self::lower_covers`]:
    /// `1 + max_α |<ν, α>| + 1`.
    pub fn cover_bound(&self, y: &AffineElt) -> i64 {
        let reach = self
            .rs
            .positive_roots()
            .iter()
            .map(|r| dot(y.translation.coords(), &r.functional).abs())
            .max()
            .unwrap_or(0);
        reach + 2
    }

    /// All `(s_{α,k}, s_{α,k} y)` with `ℓ(s_{α,k} y) = ℓ(y) - 1`.
    pub fn lower_covers(&self, y: &AffineElt) -> Vec<(Reflection, AffineElt)> {
        let ly = self.length(y);
        if ly == 0 {
            return Vec::new();
        }
        let bound = self.cover_bound(y);
        let mut out = Vec::new();
        for root in 0..self.rs.positive_roots().len() {
            for level in -bound..=bound {
                let r = Reflection { root, level };
                let x = self.mul(&self.reflection(r), y);
                if self.length(&x) + 1 == ly {
                    out.push((r, x));
                }
            }
        }
        out
    }

    pub fn record(&self, a: &AffineElt) -> ElementRecord {
        ElementRecord {
            finite_word: a.finite.word(&self.rs),
            translation: a.translation.coords().to_vec(),
        }
    }

    pub fn from_record(&self, rec: &ElementRecord) -> Result<AffineElt, AffineError> {
        if rec.finite_word.iter().any(|&i| i == 0 || i > self.rs.rank()) {
            return Err(AffineError::Parse(format!("{:?}", rec.finite_word)));
        }
        let nu = self
            .rs
            .coweight(rec.translation.clone())
            .map_err(|_| AffineError::DimensionMismatch { expected: self.rs.dim(), got: rec.translation.len() })?;
        Ok(self.from_parts(self.rs.weyl_from_word(&rec.finite_word), nu))
    }

    /// Parses `t:1,0` (a translation) or a reduced word such as `0.1@1`.
    pub fn parse_element(&self, s: &str) -> Result<AffineElt, AffineError> {
        let s = s.trim();
        if let Some(coords) = s.strip_prefix("t:") {
            let v = coords
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| AffineError::Parse(s.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            let nu = self
                .rs
                .coweight(v)
                .map_err(|_| AffineError::Parse(s.to_string()))?;
            return Ok(self.translation(&nu));
        }
        self.from_reduced_word(&s.parse()?)
    }
}
