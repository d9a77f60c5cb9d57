//! Finite root systems, their Weyl groups and the cocharacter lattices they act on.
//!
//! A root system is realized on a cocharacter lattice `X` given in its own
//! integer coordinates. Roots are integer linear functionals on `X` and
//! coroots are integer vectors in `X`, so the pairing `<λ, α>` is a plain dot
//! product and every reflection `s_α(λ) = λ - <λ, α> α^∨` is exact.
//!
//! Simple roots are numbered as in Bourbaki, starting from 1 in words and
//! from 0 in slices. The stored Cartan matrix has entries
//! `cartan[i][j] = <α_i, α_j^∨>`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, dot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("no irreducible root system of type {0}{1}")]
    InvalidType(CartanType, usize),
    #[error("the GL lattice only exists for type A, got {0}{1}")]
    GeneralLinearNeedsTypeA(CartanType, usize),
    #[error("lattice generator {0} is not a coweight (pairs non-integrally with a root)")]
    NotInCoweightLattice(String),
    #[error("explicit lattice does not contain the coroot lattice")]
    MissingCoroots,
    #[error("coweight has {got} coordinates, the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coweight {0} is not dominant")]
    NotDominant(Coweight),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl CartanType {
    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => CartanType::A,
            'B' => CartanType::B,
            'C' => CartanType::C,
            'D' => CartanType::D,
            'E' => CartanType::E,
            'F' => CartanType::F,
            'G' => CartanType::G,
            _ => return None,
        })
    }

    fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }

    /// Squared lengths and pairwise inner products of the simple roots,
    /// scaled to be integers.
    fn gram(self, rank: usize) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0i64; rank]; rank];
        let mut link = |i: usize, j: usize, b: i64| {
            g[i][j] = b;
            g[j][i] = b;
        };
        match self {
            CartanType::A => {
                for i in 0..rank - 1 {
                    link(i, i + 1, -1);
                }
            }
            CartanType::B => {
                for i in 0..rank - 1 {
                    link(i, i + 1, -2);
                }
            }
            CartanType::C => {
                for i in 0..rank - 2 {
                    link(i, i + 1, -1);
                }
                link(rank - 2, rank - 1, -2);
            }
            CartanType::D => {
                for i in 0..rank - 2 {
                    link(i, i + 1, -1);
                }
                link(rank - 3, rank - 1, -1);
            }
            CartanType::E => {
                link(0, 2, -1);
                link(1, 3, -1);
                for i in 2..rank - 1 {
                    link(i, i + 1, -1);
                }
            }
            CartanType::F => {
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
            }
            CartanType::G => link(0, 1, -3),
        }
        let norms: Vec<i64> = match self {
            CartanType::A | CartanType::D | CartanType::E => vec![2; rank],
            CartanType::B => (0..rank).map(|i| if i + 1 == rank { 2 } else { 4 }).collect(),
            CartanType::C => (0..rank).map(|i| if i + 1 == rank { 4 } else { 2 }).collect(),
            CartanType::F => vec![4, 4, 2, 2],
            CartanType::G => vec![2, 6],
        };
        for (i, n) in norms.into_iter().enumerate() {
            g[i][i] = n;
        }
        g
    }
}

/// Which cocharacter lattice the Weyl group acts on.
///
/// Coordinates of a [`Coweight`] are taken in the lattice's own basis:
/// simple coroots for `Coroot`, fundamental coweights for `Coweight`,
/// the standard basis of `Z^n` for `GeneralLinear`, and an echelon basis
/// (in fundamental-coweight coordinates) for `Explicit`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LatticeChoice {
    Coroot,
    Coweight,
    GeneralLinear,
    /// Generators written in simple-coroot coordinates, possibly fractional.
    Explicit(Vec<Vec<Rational64>>),
}

impl fmt::Display for LatticeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeChoice::Coroot => f.write_str("Qv"),
            LatticeChoice::Coweight => f.write_str("Pv"),
            LatticeChoice::GeneralLinear => f.write_str("GL"),
            LatticeChoice::Explicit(gens) => {
                f.write_str("gens:")?;
                for (k, g) in gens.iter().enumerate() {
                    if k > 0 {
                        f.write_str(";")?;
                    }
                    let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                    f.write_str(&parts.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for LatticeChoice {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RootSystemError::Parse { what: "lattice", input: s.to_string() };
        match s.trim() {
            "Qv" | "Q" | "coroot" => Ok(LatticeChoice::Coroot),
            "Pv" | "P" | "coweight" => Ok(LatticeChoice::Coweight),
            "GL" => Ok(LatticeChoice::GeneralLinear),
            other => {
                let body = other.strip_prefix("gens:").ok_or_else(err)?;
                let gens = body
                    .split(';')
                    .map(|g| {
                        g.split(',')
                            .map(|x| x.trim().parse::<Rational64>().map_err(|_| err()))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(LatticeChoice::Explicit(gens))
            }
        }
    }
}

/// A group as named on the command line: `A1`, `C2`, `G2`, `GL3`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub lattice: LatticeChoice,
}

impl GroupDescriptor {
    pub fn new(cartan_type: CartanType, rank: usize, lattice: LatticeChoice) -> Self {
        GroupDescriptor { cartan_type, rank, lattice }
    }

    pub fn gl(n: usize) -> Self {
        GroupDescriptor::new(CartanType::A, n - 1, LatticeChoice::GeneralLinear)
    }

    /// Parses a group name plus an optional lattice override.
    ///
    /// `GLn` is type `A_{n-1}` on `Z^n`; any other name defaults to the coroot lattice.
    pub fn parse(group: &str, lattice: Option<&str>) -> Result<Self, RootSystemError> {
        let group = group.trim();
        let err = || RootSystemError::Parse { what: "group", input: group.to_string() };
        let mut desc = if let Some(n) = group.strip_prefix("GL").or_else(|| group.strip_prefix("gl")) {
            let n: usize = n.parse().map_err(|_| err())?;
            if n < 2 {
                return Err(err());
            }
            GroupDescriptor::gl(n)
        } else {
            let mut chars = group.chars();
            let t = chars.next().and_then(CartanType::from_char).ok_or_else(err)?;
            let rank: usize = chars.as_str().parse().map_err(|_| err())?;
            GroupDescriptor::new(t, rank, LatticeChoice::Coroot)
        };
        if let Some(l) = lattice {
            desc.lattice = l.parse()?;
        }
        if !desc.cartan_type.is_valid_rank(desc.rank) {
            return Err(RootSystemError::InvalidType(desc.cartan_type, desc.rank));
        }
        Ok(desc)
    }

    pub fn build(&self) -> Result<RootSystem, RootSystemError> {
        RootSystem::new(self.cartan_type, self.rank, self.lattice.clone())
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.cartan_type, &self.lattice) {
            (CartanType::A, LatticeChoice::GeneralLinear) => write!(f, "GL{}", self.rank + 1),
            (t, l) => write!(f, "{t}{} ({l})", self.rank),
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("GroupDescriptor", 3)?;
        s.serialize_field("type", &self.cartan_type)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("lattice", &self.lattice.to_string())?;
        s.end()
    }
}

/// An integer vector in the cocharacter lattice, in lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(Vec<i64>);

impl Coweight {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub(crate) fn from_raw(v: Vec<i64>) -> Self {
        Coweight(v)
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Coweight {
        Coweight(self.0.iter().map(|a| k * a).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A root together with its coroot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots.
    pub coroot_coeffs: Vec<i64>,
    /// The root as a linear functional on lattice coordinates.
    pub functional: Vec<i64>,
    /// The coroot in lattice coordinates.
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }
}

/// Element of the finite Weyl group, stored as its matrix on lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWeylElt {
    dim: usize,
    mat: Box<[i64]>,
}

impl FiniteWeylElt {
    pub fn identity(dim: usize) -> Self {
        let mut mat = vec![0; dim * dim].into_boxed_slice();
        for i in 0..dim {
            mat[i * dim + i] = 1;
        }
        FiniteWeylElt { dim, mat }
    }

    /// Reflection `λ ↦ λ - <λ, α> α^∨`.
    pub(crate) fn reflection(functional: &[i64], coroot: &[i64]) -> Self {
        let dim = functional.len();
        let mut w = FiniteWeylElt::identity(dim);
        for a in 0..dim {
            for b in 0..dim {
                w.mat[a * dim + b] -= coroot[a] * functional[b];
            }
        }
        w
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity(&self) -> bool {
        *self == FiniteWeylElt::identity(self.dim)
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.mat.chunks(self.dim).map(<[i64]>::to_vec).collect()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.mat.chunks(self.dim).map(|row| dot(row, v)).collect()
    }

    pub fn apply_coweight(&self, v: &Coweight) -> Coweight {
        Coweight(self.apply(&v.0))
    }

    pub fn apply_rational(&self, v: &[Rational64]) -> Vec<Rational64> {
        self.mat
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(&a, &b)| Rational64::from(a) * b).sum())
            .collect()
    }

    /// Matrix product `self · other` (apply `other` first).
    pub fn mul(&self, other: &FiniteWeylElt) -> FiniteWeylElt {
        let n = self.dim;
        let mut mat = vec![0; n * n].into_boxed_slice();
        for i in 0..n {
            for k in 0..n {
                let a = self.mat[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    mat[i * n + j] += a * other.mat[k * n + j];
                }
            }
        }
        FiniteWeylElt { dim: n, mat }
    }

    /// Canonical reduced word (1-based simple reflection indices), read left to right.
    pub fn word(&self, rs: &RootSystem) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        'strip: while !w.is_identity() {
            for i in 0..rs.rank() {
                if rs.is_negative_coroot(&w.apply(&rs.simple_coroots[i])) {
                    w = w.mul(&rs.simple_reflections[i]);
                    rev.push(i + 1);
                    continue 'strip;
                }
            }
            unreachable!("nonidentity Weyl group element without a right descent");
        }
        rev.reverse();
        rev
    }

    /// Number of positive roots made negative.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots
            .iter()
            .filter(|r| rs.is_negative_coroot(&self.apply(&r.coroot)))
            .count()
    }

    pub fn inverse(&self, rs: &RootSystem) -> FiniteWeylElt {
        let mut word = self.word(rs);
        word.reverse();
        rs.weyl_from_word(&word)
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    lattice: LatticeChoice,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational64>>,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    simple_reflections: Vec<FiniteWeylElt>,
    positive_roots: Vec<Root>,
    highest_root: usize,
    two_rho: Vec<i64>,
    two_rho_check: Vec<i64>,
}

impl RootSystem {
    pub fn new(cartan_type: CartanType, rank: usize, lattice: LatticeChoice) -> Result<Self, RootSystemError> {
        if !cartan_type.is_valid_rank(rank) {
            return Err(RootSystemError::InvalidType(cartan_type, rank));
        }
        let gram = cartan_type.gram(rank);
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let cartan_q: Vec<Vec<Rational64>> = cartan.iter().map(|r| linalg::rational_vec(r)).collect();
        let cartan_inv = linalg::invert_rational(&cartan_q).expect("Cartan matrices are nonsingular");

        let (simple_roots, simple_coroots) = match &lattice {
            LatticeChoice::Coroot => {
                let roots = cartan.clone();
                let coroots = (0..rank)
                    .map(|j| (0..rank).map(|i| i64::from(i == j)).collect())
                    .collect();
                (roots, coroots)
            }
            LatticeChoice::Coweight => {
                let roots = (0..rank)
                    .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
                    .collect();
                let coroots = (0..rank).map(|j| (0..rank).map(|i| cartan[i][j]).collect()).collect();
                (roots, coroots)
            }
            LatticeChoice::GeneralLinear => {
                if cartan_type != CartanType::A {
                    return Err(RootSystemError::GeneralLinearNeedsTypeA(cartan_type, rank));
                }
                let n = rank + 1;
                let v: Vec<Vec<i64>> = (0..rank)
                    .map(|i| {
                        let mut e = vec![0; n];
                        e[i] = 1;
                        e[i + 1] = -1;
                        e
                    })
                    .collect();
                (v.clone(), v)
            }
            LatticeChoice::Explicit(gens) => explicit_lattice(&cartan, gens)?,
        };

        let simple_reflections = (0..rank)
            .map(|i| FiniteWeylElt::reflection(&simple_roots[i], &simple_coroots[i]))
            .collect();

        let mut rs = RootSystem {
            cartan_type,
            rank,
            lattice,
            cartan,
            cartan_inv,
            simple_roots,
            simple_coroots,
            simple_reflections,
            positive_roots: Vec::new(),
            highest_root: 0,
            two_rho: Vec::new(),
            two_rho_check: Vec::new(),
        };
        rs.enumerate_positive_roots();
        Ok(rs)
    }

    pub fn from_descriptor(desc: &GroupDescriptor) -> Result<Self, RootSystemError> {
        desc.build()
    }

    fn enumerate_positive_roots(&mut self) {
        let r = self.rank;
        let unit = |i: usize| -> Vec<i64> { (0..r).map(|k| i64::from(k == i)).collect() };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
        for i in 0..r {
            seen.insert(unit(i));
            queue.push_back((unit(i), unit(i)));
        }
        let mut all = Vec::new();
        while let Some((c, d)) = queue.pop_front() {
            for i in 0..r {
                let root_pair: i64 = (0..r).map(|j| c[j] * self.cartan[j][i]).sum();
                let coroot_pair: i64 = (0..r).map(|j| d[j] * self.cartan[i][j]).sum();
                let mut c2 = c.clone();
                c2[i] -= root_pair;
                let mut d2 = d.clone();
                d2[i] -= coroot_pair;
                if seen.insert(c2.clone()) {
                    queue.push_back((c2, d2));
                }
            }
            all.push((c, d));
        }
        let mut positive: Vec<Root> = all
            .into_iter()
            .filter(|(c, _)| c.iter().all(|&x| x >= 0))
            .map(|(coeffs, coroot_coeffs)| {
                let m = self.dim();
                let functional = (0..m)
                    .map(|k| (0..r).map(|j| coeffs[j] * self.simple_roots[j][k]).sum())
                    .collect();
                let coroot = (0..m)
                    .map(|k| (0..r).map(|j| coroot_coeffs[j] * self.simple_coroots[j][k]).sum())
                    .collect();
                Root { coeffs, coroot_coeffs, functional, coroot }
            })
            .collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
        let m = self.dim();
        self.two_rho = (0..m).map(|k| positive.iter().map(|p| p.functional[k]).sum()).collect();
        self.two_rho_check = (0..m).map(|k| positive.iter().map(|p| p.coroot[k]).sum()).collect();
        self.highest_root = positive.len() - 1;
        self.positive_roots = positive;
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    /// Semisimple rank: the number of simple roots.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Rank of the cocharacter lattice.
    pub fn dim(&self) -> usize {
        self.simple_coroots.first().map_or(0, Vec::len)
    }

    pub fn lattice(&self) -> &LatticeChoice {
        &self.lattice
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::new(self.cartan_type, self.rank, self.lattice.clone())
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive_roots[self.highest_root]
    }

    /// Coxeter number `h = ht(θ) + 1`.
    pub fn coxeter_number(&self) -> i64 {
        self.highest_root().height() + 1
    }

    /// `2ρ` as a functional on the lattice (sum of positive roots).
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// `2ρ^∨` as a lattice vector (sum of positive coroots).
    pub fn two_rho_check(&self) -> &[i64] {
        &self.two_rho_check
    }

    pub fn simple_reflection(&self, i: usize) -> &FiniteWeylElt {
        &self.simple_reflections[i - 1]
    }

    /// Structure of `X / Q^∨` as cyclic factors; 0 denotes a free factor.
    pub fn fundamental_group_structure(&self) -> Vec<i64> {
        linalg::SmithQuotient::new(self.dim(), &self.simple_coroots).moduli()
    }

    /// `|X / Q^∨|`, or `None` when the quotient is infinite.
    pub fn fundamental_group_order(&self) -> Option<u64> {
        let moduli = self.fundamental_group_structure();
        if moduli.contains(&0) {
            None
        } else {
            Some(moduli.iter().map(|&d| d as u64).product())
        }
    }

    pub fn coweight(&self, coords: Vec<i64>) -> Result<Coweight, RootSystemError> {
        if coords.len() != self.dim() {
            return Err(RootSystemError::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(Coweight(coords))
    }

    pub fn zero(&self) -> Coweight {
        Coweight(vec![0; self.dim()])
    }

    /// The coroot of the positive root with the given index, as a coweight.
    pub fn coroot(&self, root: usize) -> Coweight {
        Coweight(self.positive_roots[root].coroot.clone())
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight(self.simple_coroots[i - 1].clone())
    }

    pub fn pair(&self, lambda: &Coweight, functional: &[i64]) -> i64 {
        dot(&lambda.0, functional)
    }

    /// `<λ, α_i>` for simple root `i` (1-based).
    pub fn pair_simple(&self, lambda: &Coweight, i: usize) -> i64 {
        dot(&lambda.0, &self.simple_roots[i - 1])
    }

    pub fn pair_two_rho(&self, lambda: &Coweight) -> i64 {
        dot(&lambda.0, &self.two_rho)
    }

    pub(crate) fn is_negative_coroot(&self, v: &[i64]) -> bool {
        dot(v, &self.two_rho) < 0
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| dot(&lambda.0, a) >= 0)
    }

    pub fn reflect_simple(&self, lambda: &Coweight, i: usize) -> Coweight {
        let p = dot(&lambda.0, &self.simple_roots[i - 1]);
        Coweight(
            lambda.0.iter().zip(&self.simple_coroots[i - 1]).map(|(x, c)| x - p * c).collect(),
        )
    }

    /// `s_β(λ)` for the positive root with the given index.
    pub fn reflect(&self, lambda: &Coweight, root: usize) -> Coweight {
        let r = &self.positive_roots[root];
        let p = dot(&lambda.0, &r.functional);
        Coweight(lambda.0.iter().zip(&r.coroot).map(|(x, c)| x - p * c).collect())
    }

    pub fn weyl_from_word(&self, word: &[usize]) -> FiniteWeylElt {
        word.iter()
            .fold(FiniteWeylElt::identity(self.dim()), |w, &i| w.mul(&self.simple_reflections[i - 1]))
    }

    pub fn root_reflection(&self, root: usize) -> FiniteWeylElt {
        let r = &self.positive_roots[root];
        FiniteWeylElt::reflection(&r.functional, &r.coroot)
    }

    /// Index of the positive root whose reflection is `w`, if `w` is a reflection.
    pub fn reflection_root(&self, w: &FiniteWeylElt) -> Option<usize> {
        (0..self.positive_roots.len()).find(|&k| self.root_reflection(k) == *w)
    }

    /// Coefficients of `v` in the simple coroots, if `v ∈ Q^∨`.
    pub fn coroot_coefficients(&self, v: &Coweight) -> Option<Vec<i64>> {
        let pairings: Vec<Rational64> =
            self.simple_roots.iter().map(|a| Rational64::from(dot(&v.0, a))).collect();
        let coeffs: Vec<Rational64> = (0..self.rank)
            .map(|j| (0..self.rank).map(|i| self.cartan_inv[j][i] * pairings[i]).sum())
            .collect();
        let coeffs = linalg::to_integer(&coeffs)?;
        let back: Vec<i64> = (0..self.dim())
            .map(|k| (0..self.rank).map(|j| coeffs[j] * self.simple_coroots[j][k]).sum())
            .collect();
        (back == v.0).then_some(coeffs)
    }

    /// Dominance order: `λ ≤ μ` iff `μ - λ` is a nonnegative combination of simple coroots.
    pub fn dominance_leq(&self, lambda: &Coweight, mu: &Coweight) -> bool {
        self.coroot_coefficients(&mu.sub(lambda))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// The dominant element `λ⁺` of the orbit of `λ`, with `w` such that `w·λ = λ⁺`.
    pub fn dominant_representative(&self, lambda: &Coweight) -> (Coweight, FiniteWeylElt) {
        let mut cur = lambda.clone();
        let mut w = FiniteWeylElt::identity(self.dim());
        while let Some(i) = (1..=self.rank).find(|&i| self.pair_simple(&cur, i) < 0) {
            cur = self.reflect_simple(&cur, i);
            w = self.simple_reflection(i).mul(&w);
        }
        (cur, w)
    }

    pub fn weyl_orbit(&self, lambda: &Coweight) -> BTreeSet<Coweight> {
        let mut orbit = BTreeSet::new();
        orbit.insert(lambda.clone());
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(x) = queue.pop_front() {
            for i in 1..=self.rank {
                let y = self.reflect_simple(&x, i);
                if orbit.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        orbit
    }

    /// Dominant coweights `λ ≤ μ` (same class modulo `Q^∨`), found by
    /// repeatedly subtracting positive coroots while staying dominant.
    pub fn dominant_weights_below(&self, mu: &Coweight) -> Result<BTreeSet<Coweight>, RootSystemError> {
        if !self.is_dominant(mu) {
            return Err(RootSystemError::NotDominant(mu.clone()));
        }
        let mut found = BTreeSet::from([mu.clone()]);
        let mut stack = vec![mu.clone()];
        while let Some(lambda) = stack.pop() {
            for r in &self.positive_roots {
                let next = Coweight(lambda.0.iter().zip(&r.coroot).map(|(a, b)| a - b).collect());
                if self.is_dominant(&next) && found.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        Ok(found)
    }

    /// Weight support `Ω(μ)` of the irreducible representation of highest weight `μ`.
    pub fn weight_support(&self, mu: &Coweight) -> Result<BTreeSet<Coweight>, RootSystemError> {
        let dominant = self.dominant_weights_below(mu)?;
        Ok(dominant.iter().flat_map(|l| self.weyl_orbit(l)).collect())
    }

    pub fn is_minuscule(&self, mu: &Coweight) -> Result<bool, RootSystemError> {
        if !self.is_dominant(mu) {
            return Err(RootSystemError::NotDominant(mu.clone()));
        }
        Ok(self
            .positive_roots
            .iter()
            .all(|r| matches!(dot(&mu.0, &r.functional), 0 | 1)))
    }
}

/// Roots and coroots for the lattice spanned by `gens` (simple-coroot coordinates).
fn explicit_lattice(
    cartan: &[Vec<i64>],
    gens: &[Vec<Rational64>],
) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>), RootSystemError> {
    let rank = cartan.len();
    let mut rows = Vec::new();
    for g in gens {
        if g.len() != rank {
            return Err(RootSystemError::DimensionMismatch { expected: rank, got: g.len() });
        }
        // fundamental-coweight coordinates are the pairings with simple roots
        let omega: Vec<Rational64> = (0..rank)
            .map(|i| (0..rank).map(|j| g[j] * Rational64::from(cartan[i][j])).sum())
            .collect();
        let omega = linalg::to_integer(&omega).ok_or_else(|| {
            let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
            RootSystemError::NotInCoweightLattice(format!("({})", parts.join(",")))
        })?;
        rows.push(omega);
    }
    let basis = linalg::row_basis(rows);
    if basis.len() != rank {
        return Err(RootSystemError::MissingCoroots);
    }
    // basis vectors are rows; column k of the transpose is basis vector k
    let bt: Vec<Vec<Rational64>> = (0..rank)
        .map(|i| (0..rank).map(|k| Rational64::from(basis[k][i])).collect())
        .collect();
    let roots: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|k| basis[k][i]).collect()).collect();
    let mut coroots = Vec::new();
    for j in 0..rank {
        let target: Vec<Rational64> = (0..rank).map(|i| Rational64::from(cartan[i][j])).collect();
        let x = linalg::solve_rational(&bt, &target).ok_or(RootSystemError::MissingCoroots)?;
        coroots.push(linalg::to_integer(&x).ok_or(RootSystemError::MissingCoroots)?);
    }
    Ok((roots, coroots))
}
