#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use kr_admissible::{AdmissiblePoset, AffineElt, AffineWeylGroup, Coweight, GroupDescriptor, RootSystem};
use num_rational::Rational64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn group(name: &str) -> AffineWeylGroup {
    group_with(name, None)
}

pub fn group_with(name: &str, lattice: Option<&str>) -> AffineWeylGroup {
    AffineWeylGroup::new(GroupDescriptor::parse(name, lattice).unwrap().build().unwrap())
}

pub fn poset(name: &str, lattice: Option<&str>, mu: &[i64]) -> AdmissiblePoset {
    let g = group_with(name, lattice);
    let mu = g.root_system().coweight(mu.to_vec()).unwrap();
    AdmissiblePoset::build(Arc::new(g), &mu, 500_000).unwrap()
}

/// `(group, lattice, μ)` triples of the acceptance sweep.
pub const SWEEP: &[(&str, Option<&str>, &[i64])] = &[
    ("A1", Some("Qv"), &[1]),
    ("A1", Some("Qv"), &[2]),
    ("A1", Some("Qv"), &[3]),
    ("GL2", None, &[1, 0]),
    ("GL2", None, &[2, 0]),
    ("GL2", None, &[2, 1]),
    ("GL3", None, &[1, 0, 0]),
    ("GL3", None, &[1, 1, 0]),
    ("GL3", None, &[2, 1, 0]),
    ("GL4", None, &[1, 0, 0, 0]),
    ("GL4", None, &[1, 1, 0, 0]),
    ("A2", Some("Qv"), &[1, 1]),
    ("C2", Some("Qv"), &[1, 1]),
    ("C2", Some("Qv"), &[1, 2]),
    ("G2", Some("Qv"), &[1, 2]),
];

/// Groups used for random-element checks.
pub const GROUPS: &[(&str, Option<&str>)] = &[
    ("A1", None),
    ("A1", Some("Pv")),
    ("GL2", None),
    ("GL3", None),
    ("GL4", None),
    ("A2", None),
    ("A2", Some("Pv")),
    ("A3", Some("Pv")),
    ("B2", Some("Pv")),
    ("B3", None),
    ("C2", None),
    ("C2", Some("Pv")),
    ("C3", Some("Pv")),
    ("D4", Some("Pv")),
    ("G2", None),
    ("F4", None),
    ("E6", Some("Pv")),
];

pub fn random_coweight(rs: &RootSystem, rng: &mut ChaCha8Rng, bound: i64) -> Coweight {
    rs.coweight((0..rs.dim()).map(|_| rng.gen_range(-bound..=bound)).collect()).unwrap()
}

pub fn random_element(g: &AffineWeylGroup, rng: &mut ChaCha8Rng, bound: i64) -> AffineElt {
    let rs = g.root_system();
    let len = rng.gen_range(0..=2 * rs.positive_roots().len());
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(1..=rs.rank())).collect();
    g.from_parts(rs.weyl_from_word(&word), random_coweight(rs, rng, bound))
}

pub fn random_point(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Rational64> {
    (0..dim)
        .map(|_| Rational64::new(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
        .collect()
}

fn pair(x: &[Rational64], f: &[i64]) -> Rational64 {
    x.iter().zip(f).map(|(&a, &b)| a * Rational64::from(b)).sum()
}

/// Alcove count: `Σ_{α>0} |⌊<x·p, α>⌋|` for `p` in the open base alcove.
pub fn alcove_length(g: &AffineWeylGroup, x: &AffineElt) -> usize {
    let rs = g.root_system();
    let h = rs.coxeter_number();
    let mut rho = vec![0i64; rs.dim()];
    for r in rs.positive_roots() {
        for (a, b) in rho.iter_mut().zip(&r.coroot) {
            *a += b;
        }
    }
    let p: Vec<Rational64> = rho.iter().map(|&c| Rational64::new(c, 2 * h)).collect();
    let q = g.apply(x, &p).unwrap();
    rs.positive_roots()
        .iter()
        .map(|r| pair(&q, &r.functional).floor().to_integer().unsigned_abs() as usize)
        .sum()
}

/// All products of subwords of a reduced word of `y`, i.e. the Bruhat interval `[·, y]`.
pub fn subword_ideal(g: &AffineWeylGroup, y: &AffineElt) -> HashSet<AffineElt> {
    let letters = g.reduced_word(y).letters;
    let mut tau = y.clone();
    for &i in &letters {
        tau = g.compose(g.simple_reflection(i), &tau).unwrap();
    }
    let mut out = HashSet::from([tau]);
    for &i in letters.iter().rev() {
        let s = g.simple_reflection(i);
        let next: Vec<AffineElt> = out.iter().map(|x| g.compose(s, x).unwrap()).collect();
        out.extend(next);
    }
    out
}

pub fn subword_leq(g: &AffineWeylGroup, x: &AffineElt, y: &AffineElt) -> bool {
    subword_ideal(g, y).contains(x)
}

/// `W₀λ` by closure under `λ ↦ λ - <λ, α_i> α_i∨`.
pub fn orbit(rs: &RootSystem, lambda: &Coweight) -> BTreeSet<Coweight> {
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut stack = vec![lambda.clone()];
    while let Some(v) = stack.pop() {
        for i in 1..=rs.rank() {
            let n = rs.pair(&v, &rs.simple_roots()[i - 1]);
            let w = v.sub(&rs.simple_coroot(i).scale(n));
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen
}

/// `Adm(μ)` as the union of subword ideals of `t_λ`, `λ ∈ W₀μ`.
pub fn adm_oracle(g: &AffineWeylGroup, mu: &Coweight) -> HashSet<AffineElt> {
    let mut out = HashSet::new();
    for lambda in orbit(g.root_system(), mu) {
        out.extend(subword_ideal(g, &g.translation(&lambda)));
    }
    out
}
