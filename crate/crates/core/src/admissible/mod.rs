//! The admissible set `Adm(μ)`: the Bruhat order ideal generated by the
//! translations `t_λ`, `λ ∈ W₀μ`.
//!
//! Elements are enumerated breadth first from the maximal translations
//! through [`AffineWeylGroup::lower_covers`], so the element list is sorted
//! by decreasing length and every cover relation is recorded exactly once.

mod export;

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::affine_weyl::{AffineElt, AffineError, AffineWeylGroup, Reflection};
use crate::rootsys::{Coweight, RootSystem, RootSystemError};

pub use export::{ElementExport, PosetExport};

pub const DEFAULT_CAP: usize = 500_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibleError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error("admissible set has more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("{0} is not in the admissible set")]
    NotInPoset(String),
    #[error("{element} has codimension {codim}, expected 1")]
    WrongCodimension { element: String, codim: usize },
    #[error("finite part of {0} is not a reflection")]
    NotAReflection(String),
}

/// `lower ⋖ upper` with `lower = reflection · upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub lower: usize,
    pub upper: usize,
    pub reflection: Reflection,
}

#[derive(Debug, Clone)]
pub struct AdmissiblePoset {
    group: Arc<AffineWeylGroup>,
    mu: Coweight,
    elements: Vec<AffineElt>,
    index: HashMap<AffineElt, usize>,
    lengths: Vec<usize>,
    covers: Vec<Cover>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    lambda: Vec<Coweight>,
    max_length: usize,
}

impl AdmissiblePoset {
    /// Builds `Adm(μ)`. A non-dominant `μ` is replaced by its dominant conjugate.
    pub fn build(group: Arc<AffineWeylGroup>, mu: &Coweight, cap: usize) -> Result<Self, AdmissibleError> {
        let rs = group.root_system();
        let mu = rs.coweight(mu.coords().to_vec())?;
        let mu = if rs.is_dominant(&mu) {
            mu
        } else {
            let (dominant, _) = rs.dominant_representative(&mu);
            log::warn!("μ = {mu} is not dominant; using its dominant conjugate {dominant}");
            dominant
        };
        let lambda: Vec<Coweight> = rs.weyl_orbit(&mu).into_iter().collect();
        let max_length = rs.pair_two_rho(&mu) as usize;

        let mut poset = AdmissiblePoset {
            group: Arc::clone(&group),
            mu,
            elements: Vec::new(),
            index: HashMap::new(),
            lengths: Vec::new(),
            covers: Vec::new(),
            upper: Vec::new(),
            lower: Vec::new(),
            lambda,
            max_length,
        };

        let mut level = Vec::new();
        for nu in poset.lambda.clone() {
            let t = group.translation(&nu);
            level.push(poset.insert(t, max_length, cap)?);
        }
        while !level.is_empty() {
            let mut next = Vec::new();
            for &y in &level {
                let below = group.lower_covers(&poset.elements[y]);
                let ly = poset.lengths[y];
                for (reflection, x) in below {
                    let idx = match poset.index.get(&x) {
                        Some(&i) => i,
                        None => {
                            let i = poset.insert(x, ly - 1, cap)?;
                            next.push(i);
                            i
                        }
                    };
                    poset.covers.push(Cover { lower: idx, upper: y, reflection });
                    poset.upper[idx].push(y);
                    poset.lower[y].push(idx);
                }
            }
            level = next;
        }
        Ok(poset)
    }

    /// Convenience wrapper building the group from a root system.
    pub fn from_root_system(rs: RootSystem, mu: &Coweight, cap: usize) -> Result<Self, AdmissibleError> {
        Self::build(Arc::new(AffineWeylGroup::new(rs)), mu, cap)
    }

    fn insert(&mut self, x: AffineElt, length: usize, cap: usize) -> Result<usize, AdmissibleError> {
        if self.elements.len() >= cap {
            return Err(AdmissibleError::CapExceeded { cap });
        }
        let i = self.elements.len();
        self.index.insert(x.clone(), i);
        self.elements.push(x);
        self.lengths.push(length);
        self.upper.push(Vec::new());
        self.lower.push(Vec::new());
        Ok(i)
    }

    pub fn group(&self) -> &AffineWeylGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<AffineWeylGroup> {
        Arc::clone(&self.group)
    }

    pub fn root_system(&self) -> &RootSystem {
        self.group.root_system()
    }

    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[AffineElt] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &AffineElt {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &AffineElt) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &AffineElt) -> bool {
        self.index.contains_key(x)
    }

    pub fn length_of(&self, i: usize) -> usize {
        self.lengths[i]
    }

    /// `⟨2ρ, μ⟩`, the common length of the maximal elements.
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Indices of the elements covering `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// `Λ(μ) = W₀μ`, sorted.
    pub fn lambda_set(&self) -> &[Coweight] {
        &self.lambda
    }

    /// `Ω(μ)`, the weight support of `V_μ`.
    pub fn weight_support(&self) -> BTreeSet<Coweight> {
        self.root_system()
            .weight_support(&self.mu)
            .expect("μ is dominant after construction")
    }

    pub fn codim_of(&self, i: usize) -> usize {
        self.max_length - self.lengths[i]
    }

    fn locate(&self, x: &AffineElt) -> Result<usize, AdmissibleError> {
        self.index_of(x)
            .ok_or_else(|| AdmissibleError::NotInPoset(self.describe(x)))
    }

    /// Reduced-word label of an element, e.g. `0.1@0`.
    pub fn describe(&self, x: &AffineElt) -> String {
        self.group.reduced_word(x).to_string()
    }

    pub fn codimension(&self, y: &AffineElt) -> Result<usize, AdmissibleError> {
        Ok(self.codim_of(self.locate(y)?))
    }

    /// Elements with no strict upper bound in the poset.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// Indices of the elements of codimension at most one, in poset order.
    pub fn codim_le1_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.codim_of(i) <= 1).collect()
    }

    /// The graph on `Codim≤1(x) = {y ∈ Adm(μ) : x ≤ y, codim(y) ≤ 1}` whose
    /// edges join a codimension-one `y` to a maximal `t_λ` with `y ≤ t_λ`.
    ///
    /// Membership and edges are decided with [`AffineWeylGroup::bruhat_leq`].
    pub fn codim_le1_graph(&self, x: &AffineElt) -> Result<StrataGraph, AdmissibleError> {
        let base = self.locate(x)?;
        let mut codim0 = Vec::new();
        let mut codim1 = Vec::new();
        for y in self.codim_le1_indices() {
            if self.group.bruhat_leq(x, &self.elements[y])? {
                if self.codim_of(y) == 0 {
                    codim0.push(y);
                } else {
                    codim1.push(y);
                }
            }
        }
        let mut edges = Vec::new();
        for &y in &codim1 {
            for &z in &codim0 {
                if self.group.bruhat_leq(&self.elements[y], &self.elements[z])? {
                    edges.push((y, z));
                }
            }
        }
        Ok(StrataGraph { base, codim0, codim1, edges })
    }

    /// For each element, the set of codimension ≤ 1 elements above it,
    /// as bitsets over positions in [`Self::codim_le1_indices`].
    ///
    /// Computed from the cover relations, top down.
    pub fn codim_le1_upsets(&self) -> (Vec<usize>, Vec<FixedBitSet>) {
        let members = self.codim_le1_indices();
        let mut position = vec![usize::MAX; self.len()];
        for (k, &i) in members.iter().enumerate() {
            position[i] = k;
        }
        let mut sets: Vec<FixedBitSet> = Vec::with_capacity(self.len());
        // elements are stored by decreasing length, so every upper cover comes first
        for i in 0..self.len() {
            let mut set = FixedBitSet::with_capacity(members.len());
            if position[i] != usize::MAX {
                set.insert(position[i]);
            }
            for &u in &self.upper[i] {
                set.union_with(&sets[u]);
            }
            sets.push(set);
        }
        (members, sets)
    }

    /// `Irr(x) = {λ ∈ Λ(μ) : x ≤ t_λ}` by scanning `Λ(μ)`.
    pub fn irr_bruteforce(&self, x: &AffineElt) -> Result<BTreeSet<Coweight>, AdmissibleError> {
        self.require_codim_one(x)?;
        let mut out = BTreeSet::new();
        for nu in &self.lambda {
            if self.group.bruhat_leq(x, &self.group.translation(nu))? {
                out.insert(nu.clone());
            }
        }
        Ok(out)
    }

    /// `Irr(x)` from the normal form `x = t_ν s_β`:
    /// `{ν, s_β ν}` if `x < s_β x`, otherwise `{ν + β^∨, s_β(ν + β^∨)}`.
    pub fn irr_haines(&self, x: &AffineElt) -> Result<HainesIrr, AdmissibleError> {
        self.require_codim_one(x)?;
        let rs = self.root_system();
        let beta = rs
            .reflection_root(x.finite_part())
            .ok_or_else(|| AdmissibleError::NotAReflection(self.describe(x)))?;
        let nu = x.translation_part().clone();
        // s_β · t_ν s_β = t_{s_β ν}
        let s_beta_x = self.group.translation(&rs.reflect(&nu, beta));
        let (case, base) = if self.group.length(&s_beta_x) > self.group.length(x) {
            (IrrCase::A, nu.clone())
        } else {
            (IrrCase::B, nu.add(&rs.coroot(beta)))
        };
        let set = BTreeSet::from([base.clone(), rs.reflect(&base, beta)]);
        Ok(HainesIrr { case, nu, beta, set })
    }

    fn require_codim_one(&self, x: &AffineElt) -> Result<usize, AdmissibleError> {
        let i = self.locate(x)?;
        match self.codim_of(i) {
            1 => Ok(i),
            codim => Err(AdmissibleError::WrongCodimension { element: self.describe(x), codim }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IrrCase {
    /// `x < s_β x`
    A,
    /// `s_β x < x`
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HainesIrr {
    pub case: IrrCase,
    /// Translation part in `x = t_ν s_β`.
    pub nu: Coweight,
    /// Index of `β` among the positive roots.
    pub beta: usize,
    pub set: BTreeSet<Coweight>,
}

/// Bipartite incidence graph on `Codim≤1(x)`; all vertex ids are poset indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataGraph {
    pub base: usize,
    pub codim0: Vec<usize>,
    pub codim1: Vec<usize>,
    /// `(codim-one vertex, maximal vertex)`
    pub edges: Vec<(usize, usize)>,
}

impl StrataGraph {
    pub fn vertex_count(&self) -> usize {
        self.codim0.len() + self.codim1.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.codim0.iter().chain(&self.codim1).copied()
    }

    pub fn is_connected(&self) -> bool {
        components(self.vertices().collect(), &self.edges) <= 1
    }

    /// Connectivity of the graph on `Codim≤1(x) \ {x}`.
    pub fn is_connected_without_base(&self) -> bool {
        let vertices: Vec<usize> = self.vertices().filter(|&v| v != self.base).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| a != self.base && b != self.base)
            .collect();
        components(vertices, &edges) <= 1
    }

    /// True when every edge joins the two sides.
    pub fn is_bipartite(&self) -> bool {
        self.edges
            .iter()
            .all(|(a, b)| self.codim1.contains(a) && self.codim0.contains(b))
    }
}

/// Number of connected components, by union-find.
pub(crate) fn components(vertices: Vec<usize>, edges: &[(usize, usize)]) -> usize {
    if vertices.is_empty() {
        return 0;
    }
    let local: HashMap<usize, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut uf = UnionFind::<usize>::new(vertices.len());
    let mut count = vertices.len();
    for (a, b) in edges {
        if let (Some(&a), Some(&b)) = (local.get(a), local.get(b)) {
            if uf.union(a, b) {
                count -= 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::GroupDescriptor;

    fn poset(name: &str, mu: &[i64]) -> AdmissiblePoset {
        let rs = GroupDescriptor::parse(name, None).unwrap().build().unwrap();
        let mu = rs.coweight(mu.to_vec()).unwrap();
        AdmissiblePoset::from_root_system(rs, &mu, DEFAULT_CAP).unwrap()
    }

    fn bottom(p: &AdmissiblePoset) -> AffineElt {
        let i = (0..p.len()).max_by_key(|&i| p.codim_of(i)).unwrap();
        p.element(i).clone()
    }

    fn cw(p: &AdmissiblePoset, v: &[i64]) -> Coweight {
        p.root_system().coweight(v.to_vec()).unwrap()
    }

    #[test]
    fn a1_alpha_has_five_elements() {
        let p = poset("A1", &[1]);
        assert_eq!(p.len(), 5);
        let mut lengths: Vec<usize> = (0..5).map(|i| p.length_of(i)).collect();
        lengths.sort();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2]);
        assert_eq!(p.codimension(&bottom(&p)).unwrap(), 2);
        let maxima: BTreeSet<AffineElt> = p.maximal_elements().into_iter().map(|i| p.element(i).clone()).collect();
        let expected: BTreeSet<AffineElt> =
            [[1], [-1]].iter().map(|v| p.group().translation(&cw(&p, v))).collect();
        assert_eq!(maxima, expected);
    }

    #[test]
    fn gl2_minuscule_has_three_elements() {
        let p = poset("GL2", &[1, 0]);
        assert_eq!(p.len(), 3);
        let b = bottom(&p);
        assert_eq!(p.group().length(&b), 0);
        assert_eq!(p.codimension(&b).unwrap(), 1);
        let g = p.codim_le1_graph(&b).unwrap();
        assert_eq!((g.codim0.len(), g.codim1.len(), g.edges.len()), (2, 1, 2));
        assert!(g.is_connected());
        assert!(!g.is_connected_without_base());
        let expected = BTreeSet::from([cw(&p, &[1, 0]), cw(&p, &[0, 1])]);
        assert_eq!(p.irr_bruteforce(&b).unwrap(), expected);
        let h = p.irr_haines(&b).unwrap();
        assert_eq!(h.case, IrrCase::A);
        assert_eq!(h.set, expected);
    }

    #[test]
    fn zero_coweight_gives_a_point() {
        let p = poset("A1", &[0]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.maximal_elements(), vec![0]);
        let g = p.codim_le1_graph(p.element(0)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.is_connected());
    }

    #[test]
    fn top_graph_is_single_vertex() {
        let p = poset("GL3", &[1, 0, 0]);
        let top = p.group().translation(&cw(&p, &[1, 0, 0]));
        assert_eq!(p.codimension(&top).unwrap(), 0);
        let g = p.codim_le1_graph(&top).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn a1_bottom_graph() {
        let p = poset("A1", &[1]);
        let g = p.codim_le1_graph(&bottom(&p)).unwrap();
        assert_eq!((g.codim0.len(), g.codim1.len()), (2, 2));
        // each length-one element sits below both translations
        assert_eq!(g.edges.len(), 4);
        assert!(g.is_connected() && g.is_bipartite());
    }

    #[test]
    fn non_dominant_mu_is_normalized() {
        let p = poset("GL3", &[0, 0, 1]);
        assert_eq!(p.mu(), &cw(&p, &[1, 0, 0]));
        assert_eq!(p.len(), 7);
    }

    #[test]
    fn errors() {
        let p = poset("A1", &[1]);
        let far = p.group().translation(&cw(&p, &[5]));
        assert!(matches!(p.codimension(&far), Err(AdmissibleError::NotInPoset(_))));
        assert!(matches!(p.codim_le1_graph(&far), Err(AdmissibleError::NotInPoset(_))));
        let top = p.group().translation(&cw(&p, &[1]));
        assert!(matches!(
            p.irr_bruteforce(&top),
            Err(AdmissibleError::WrongCodimension { codim: 0, .. })
        ));
        assert!(matches!(p.irr_haines(&bottom(&p)), Err(AdmissibleError::WrongCodimension { codim: 2, .. })));

        let rs = GroupDescriptor::parse("A1", None).unwrap().build().unwrap();
        let mu = rs.coweight(vec![3]).unwrap();
        assert_eq!(
            AdmissiblePoset::from_root_system(rs.clone(), &mu, 4).unwrap_err(),
            AdmissibleError::CapExceeded { cap: 4 }
        );
        let bad = rs.coweight(vec![1]).unwrap();
        let gl2 = GroupDescriptor::gl(2).build().unwrap();
        assert!(matches!(
            AdmissiblePoset::from_root_system(gl2, &bad, 10),
            Err(AdmissibleError::RootSystem(RootSystemError::DimensionMismatch { .. }))
        ));
    }

    #[test]
    fn upsets_match_graph_vertices() {
        let p = poset("A2", &[1, 1]);
        let (members, sets) = p.codim_le1_upsets();
        for i in 0..p.len() {
            let g = p.codim_le1_graph(p.element(i)).unwrap();
            let mut from_graph: Vec<usize> = g.vertices().collect();
            from_graph.sort();
            let from_sets: Vec<usize> = sets[i].ones().map(|k| members[k]).collect();
            assert_eq!(from_sets, from_graph);
        }
    }

    #[test]
    fn haines_case_b_in_a1() {
        let p = poset("A1", &[2]);
        let mut saw_b = false;
        for i in 0..p.len() {
            if p.codim_of(i) == 1 {
                let x = p.element(i);
                let h = p.irr_haines(x).unwrap();
                assert_eq!(h.set, p.irr_bruteforce(x).unwrap());
                saw_b |= h.case == IrrCase::B;
            }
        }
        assert!(saw_b);
    }
}
