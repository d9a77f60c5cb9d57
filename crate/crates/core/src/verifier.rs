//! Batch verification of the codimension ≤ 1 combinatorics of admissible sets.
//!
//! Each `(group, μ)` entry of a sweep yields one [`VerificationReport`]
//! holding the outcome of the named checks:
//!
//! * `s2`: every graph on `Codim≤1(x)` is connected;
//! * `codim1_bound`: every codimension-one `x` lies below at most two maximal translations;
//! * `irr_pair`: ... and in fact below exactly two distinct ones;
//! * `haines`: the closed formula for `Irr(x)` agrees with the direct scan,
//!   and case (b) never fires for minuscule `μ`;
//! * `structure`: maximal elements are the translations by `W₀μ`, all of
//!   length `⟨2ρ, μ⟩`, every `t_ν` with `ν ∈ Ω(μ)` is admissible, and the
//!   poset sits in a single component of `W̃ / W_aff`.
//!
//! Per-element work runs on rayon when `parallel` is set; results are
//! collected in element order so the report does not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::{AdmissibleError, AdmissiblePoset, IrrCase, DEFAULT_CAP};
use crate::affine_weyl::{AffineWeylGroup, ElementRecord};
use crate::rootsys::{Coweight, GroupDescriptor};

/// At most this many witnesses are kept per failing check.
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    S2,
    Codim1Bound,
    IrrPair,
    Haines,
    Structure,
}

impl CheckName {
    pub const ALL: [CheckName; 5] =
        [CheckName::S2, CheckName::Codim1Bound, CheckName::IrrPair, CheckName::Haines, CheckName::Structure];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::S2 => "s2",
            CheckName::Codim1Bound => "codim1_bound",
            CheckName::IrrPair => "irr_pair",
            CheckName::Haines => "haines",
            CheckName::Structure => "structure",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: CheckName,
    pub status: CheckStatus,
    pub witnesses: Vec<ElementRecord>,
    pub counts: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl CheckResult {
    fn new(name: CheckName) -> Self {
        CheckResult { name, status: CheckStatus::Pass, witnesses: Vec::new(), counts: BTreeMap::new(), message: None }
    }

    fn count(&mut self, key: &str, n: usize) {
        self.counts.insert(key.to_string(), n as u64);
    }

    fn fail_with(&mut self, group: &AffineWeylGroup, witnesses: impl IntoIterator<Item = crate::AffineElt>) {
        self.status = CheckStatus::Fail;
        self.witnesses
            .extend(witnesses.into_iter().take(MAX_WITNESSES).map(|x| group.record(&x)));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportErrorKind {
    Config,
    Cap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportError {
    pub kind: ReportErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: GroupDescriptor,
    pub mu: Vec<i64>,
    pub poset_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ReportError>,
    pub checks: Vec<CheckResult>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One sweep entry; `mu` is in the lattice coordinates of `group`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepEntry {
    pub group: GroupDescriptor,
    pub mu: Vec<i64>,
}

impl SweepEntry {
    pub fn new(group: GroupDescriptor, mu: Vec<i64>) -> Self {
        SweepEntry { group, mu }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub cap: usize,
    pub parallel: bool,
    /// Restrict to these checks; `None` runs all of them.
    pub only: Option<BTreeSet<CheckName>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { cap: DEFAULT_CAP, parallel: true, only: None }
    }
}

impl VerifyOptions {
    fn wants(&self, name: CheckName) -> bool {
        self.only.as_ref().is_none_or(|o| o.contains(&name))
    }
}

fn map_indices<T: Send>(n: usize, parallel: bool, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    if parallel {
        (0..n).into_par_iter().map(f).collect()
    } else {
        (0..n).map(f).collect()
    }
}

/// Connectivity of every `Codim≤1(x)` graph.
///
/// The vertex sets come from [`AdmissiblePoset::codim_le1_upsets`] and the
/// edges are the cover relations between codimension one and zero.
pub fn verify_s2(p: &AdmissiblePoset, parallel: bool) -> CheckResult {
    let mut result = CheckResult::new(CheckName::S2);
    let (members, upsets) = p.codim_le1_upsets();
    let mut position = vec![usize::MAX; p.len()];
    for (k, &i) in members.iter().enumerate() {
        position[i] = k;
    }
    let local_edges: Vec<(usize, usize)> = p
        .covers()
        .iter()
        .filter(|c| p.codim_of(c.lower) == 1)
        .map(|c| (position[c.lower], position[c.upper]))
        .collect();

    let outcomes = map_indices(p.len(), parallel, |x| {
        let set = &upsets[x];
        let excluded = position[x];
        let connected = |skip: usize| {
            let mut uf = UnionFind::<usize>::new(members.len());
            let mut comps = set.ones().filter(|&v| v != skip).count();
            for &(a, b) in &local_edges {
                if a != skip && b != skip && set.contains(a) && set.contains(b) && uf.union(a, b) {
                    comps -= 1;
                }
            }
            comps <= 1
        };
        let with_base = connected(usize::MAX);
        let without_base = (excluded != usize::MAX).then(|| connected(excluded));
        (with_base, without_base)
    });

    let disconnected: Vec<usize> = (0..p.len()).filter(|&x| !outcomes[x].0).collect();
    let without: Vec<usize> = (0..p.len()).filter(|&x| outcomes[x].1 == Some(false)).collect();
    result.count("graphs_checked", p.len());
    result.count("disconnected", disconnected.len());
    result.count("codim_le1_bases", outcomes.iter().filter(|o| o.1.is_some()).count());
    result.count("disconnected_without_base", without.len());
    if !disconnected.is_empty() {
        result.fail_with(p.group(), disconnected.iter().map(|&x| p.element(x).clone()));
    }
    result
}

struct CodimOneFacts {
    index: usize,
    brute: BTreeSet<Coweight>,
    haines: Result<(IrrCase, BTreeSet<Coweight>, bool), AdmissibleError>,
}

fn codim_one_facts(p: &AdmissiblePoset, parallel: bool) -> Vec<CodimOneFacts> {
    let codim1: Vec<usize> = (0..p.len()).filter(|&i| p.codim_of(i) == 1).collect();
    let omega = p.weight_support();
    map_indices(codim1.len(), parallel, |k| {
        let i = codim1[k];
        let x = p.element(i);
        let brute = p.irr_bruteforce(x).expect("x has codimension one");
        let haines = p.irr_haines(x).map(|h| {
            let nu_in_support = omega.contains(&h.nu);
            (h.case, h.set, nu_in_support)
        });
        CodimOneFacts { index: i, brute, haines }
    })
}

fn verify_codim1_bound_from(p: &AdmissiblePoset, facts: &[CodimOneFacts]) -> CheckResult {
    let mut result = CheckResult::new(CheckName::Codim1Bound);
    result.count("codim1_elements", facts.len());
    if facts.is_empty() {
        result.status = CheckStatus::Skipped;
        return result;
    }
    let too_many: Vec<_> = facts.iter().filter(|f| f.brute.len() > 2).collect();
    result.count("max_irr_size", facts.iter().map(|f| f.brute.len()).max().unwrap_or(0));
    result.count("violations", too_many.len());
    if !too_many.is_empty() {
        result.fail_with(p.group(), too_many.iter().map(|f| p.element(f.index).clone()));
    }
    result
}

fn verify_irr_pair_from(p: &AdmissiblePoset, facts: &[CodimOneFacts]) -> CheckResult {
    let mut result = CheckResult::new(CheckName::IrrPair);
    result.count("codim1_elements", facts.len());
    if facts.is_empty() {
        result.status = CheckStatus::Skipped;
        return result;
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for f in facts {
        *sizes.entry(f.brute.len()).or_default() += 1;
    }
    for (size, n) in &sizes {
        result.count(&format!("irr_size_{size}"), *n);
    }
    let odd: Vec<_> = facts.iter().filter(|f| f.brute.len() != 2).collect();
    if !odd.is_empty() {
        result.message = Some(format!("{} codimension-one elements without exactly two maxima above", odd.len()));
        result.fail_with(p.group(), odd.iter().map(|f| p.element(f.index).clone()));
    }
    result
}

fn verify_haines_from(p: &AdmissiblePoset, facts: &[CodimOneFacts]) -> CheckResult {
    let mut result = CheckResult::new(CheckName::Haines);
    result.count("codim1_elements", facts.len());
    if facts.is_empty() {
        result.status = CheckStatus::Skipped;
        return result;
    }
    let minuscule = p
        .root_system()
        .is_minuscule(p.mu())
        .expect("μ is dominant after construction");
    let mut case_a = 0;
    let mut case_b = 0;
    let mut nu_outside_support = 0;
    let mut bad = Vec::new();
    let mut errors = Vec::new();
    for f in facts {
        match &f.haines {
            Ok((case, set, nu_in_support)) => {
                match case {
                    IrrCase::A => case_a += 1,
                    IrrCase::B => case_b += 1,
                }
                if !nu_in_support {
                    nu_outside_support += 1;
                }
                if *set != f.brute || (minuscule && *case == IrrCase::B) {
                    bad.push(f.index);
                }
            }
            Err(e) => {
                errors.push(e.to_string());
                bad.push(f.index);
            }
        }
    }
    result.count("case_a", case_a);
    result.count("case_b", case_b);
    result.count("minuscule", usize::from(minuscule));
    result.count("nu_outside_weight_support", nu_outside_support);
    result.count("mismatches", bad.len());
    if let Some(e) = errors.first() {
        result.message = Some(e.clone());
    }
    if !bad.is_empty() {
        result.fail_with(p.group(), bad.iter().map(|&i| p.element(i).clone()));
    }
    result
}

pub fn verify_codim1_bound(p: &AdmissiblePoset, parallel: bool) -> CheckResult {
    verify_codim1_bound_from(p, &codim_one_facts(p, parallel))
}

pub fn verify_irr_pair(p: &AdmissiblePoset, parallel: bool) -> CheckResult {
    verify_irr_pair_from(p, &codim_one_facts(p, parallel))
}

pub fn verify_haines(p: &AdmissiblePoset, parallel: bool) -> CheckResult {
    verify_haines_from(p, &codim_one_facts(p, parallel))
}

pub fn verify_structure(p: &AdmissiblePoset) -> CheckResult {
    let mut result = CheckResult::new(CheckName::Structure);
    let g = p.group();
    let maxima: BTreeSet<crate::AffineElt> = p.maximal_elements().into_iter().map(|i| p.element(i).clone()).collect();
    let expected: BTreeSet<crate::AffineElt> = p.lambda_set().iter().map(|nu| g.translation(nu)).collect();
    let orbit = p.root_system().weyl_orbit(p.mu());
    let mut witnesses: Vec<crate::AffineElt> = Vec::new();
    let mut problems = Vec::new();

    if p.lambda_set().iter().cloned().collect::<BTreeSet<_>>() != orbit {
        problems.push("Λ(μ) differs from W₀μ");
    }
    if maxima != expected {
        problems.push("maximal elements differ from the translations by W₀μ");
        witnesses.extend(maxima.symmetric_difference(&expected).cloned());
    }
    let wrong_length: Vec<_> = maxima.iter().filter(|m| g.length(m) != p.max_length()).cloned().collect();
    if !wrong_length.is_empty() {
        problems.push("maximal element of length other than ⟨2ρ,μ⟩");
        witnesses.extend(wrong_length);
    }
    let support = p.weight_support();
    let missing: Vec<_> = support.iter().map(|nu| g.translation(nu)).filter(|t| !p.contains(t)).collect();
    if !missing.is_empty() {
        problems.push("translation by a weight of V_μ outside Adm(μ)");
        witnesses.extend(missing);
    }
    let class = p.element(0).clone();
    let class = g.omega_class(&class);
    let strays: Vec<_> = p.elements().iter().filter(|x| g.omega_class(x) != class).cloned().collect();
    if !strays.is_empty() {
        problems.push("elements in more than one component");
        witnesses.extend(strays);
    }

    result.count("maximal_elements", maxima.len());
    result.count("orbit_size", orbit.len());
    result.count("weight_support_size", support.len());
    result.count("max_length", p.max_length());
    if !problems.is_empty() {
        result.message = Some(problems.join("; "));
        result.fail_with(g, witnesses);
    }
    result
}

/// Runs the requested checks on a built poset, in [`CheckName::ALL`] order.
pub fn verify_poset(p: &AdmissiblePoset, opts: &VerifyOptions) -> Vec<CheckResult> {
    let needs_facts = [CheckName::Codim1Bound, CheckName::IrrPair, CheckName::Haines]
        .into_iter()
        .any(|c| opts.wants(c));
    let facts = if needs_facts { codim_one_facts(p, opts.parallel) } else { Vec::new() };
    let mut out = Vec::new();
    for name in CheckName::ALL {
        if !opts.wants(name) {
            continue;
        }
        out.push(match name {
            CheckName::S2 => verify_s2(p, opts.parallel),
            CheckName::Codim1Bound => verify_codim1_bound_from(p, &facts),
            CheckName::IrrPair => verify_irr_pair_from(p, &facts),
            CheckName::Haines => verify_haines_from(p, &facts),
            CheckName::Structure => verify_structure(p),
        });
    }
    out
}

pub fn build_entry(entry: &SweepEntry, cap: usize) -> Result<AdmissiblePoset, AdmissibleError> {
    let rs = entry.group.build()?;
    let mu = rs.coweight(entry.mu.clone())?;
    AdmissiblePoset::build(Arc::new(AffineWeylGroup::new(rs)), &mu, cap)
}

pub fn run_entry(entry: &SweepEntry, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = VerificationReport {
        group: entry.group.clone(),
        mu: entry.mu.clone(),
        poset_size: 0,
        error: None,
        checks: Vec::new(),
        wall_time_ms: 0.0,
    };
    match build_entry(entry, opts.cap) {
        Ok(p) => {
            report.poset_size = p.len();
            report.checks = verify_poset(&p, opts);
        }
        Err(e) => {
            let kind = match e {
                AdmissibleError::CapExceeded { .. } => ReportErrorKind::Cap,
                _ => ReportErrorKind::Config,
            };
            report.error = Some(ReportError { kind, message: e.to_string() });
        }
    }
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

/// One report per entry, in entry order.
pub fn run_sweep(entries: &[SweepEntry], opts: &VerifyOptions) -> Vec<VerificationReport> {
    entries.iter().map(|e| run_entry(e, opts)).collect()
}

/// Reports as pretty JSON; `with_timing = false` drops the wall-time fields.
pub fn reports_to_json(reports: &[VerificationReport], with_timing: bool) -> String {
    let mut value = serde_json::to_value(reports).expect("reports are serializable");
    if !with_timing {
        if let Some(items) = value.as_array_mut() {
            for item in items {
                if let Some(obj) = item.as_object_mut() {
                    obj.remove("wall_time_ms");
                }
            }
        }
    }
    serde_json::to_string_pretty(&value).expect("reports are serializable")
}

/// The sweep used as the acceptance gate: small rank, exhaustive.
pub fn default_sweep() -> Vec<SweepEntry> {
    let parse = |g: &str| GroupDescriptor::parse(g, None).expect("built-in group names parse");
    vec![
        SweepEntry::new(parse("A1"), vec![1]),
        SweepEntry::new(parse("A1"), vec![2]),
        SweepEntry::new(parse("A1"), vec![3]),
        SweepEntry::new(parse("GL2"), vec![1, 0]),
        SweepEntry::new(parse("GL2"), vec![2, 0]),
        SweepEntry::new(parse("GL2"), vec![2, 1]),
        SweepEntry::new(parse("GL3"), vec![1, 0, 0]),
        SweepEntry::new(parse("GL3"), vec![1, 1, 0]),
        SweepEntry::new(parse("GL3"), vec![2, 1, 0]),
        SweepEntry::new(parse("GL4"), vec![1, 0, 0, 0]),
        SweepEntry::new(parse("GL4"), vec![1, 1, 0, 0]),
        // α1∨ + α2∨
        SweepEntry::new(parse("A2"), vec![1, 1]),
        // ω1∨ = α1∨ + α2∨ and 2ω2∨ = α1∨ + 2α2∨
        SweepEntry::new(parse("C2"), vec![1, 1]),
        SweepEntry::new(parse("C2"), vec![1, 2]),
        // ω2∨ = α1∨ + 2α2∨, with ⟨2ρ, ω2∨⟩ = 6
        SweepEntry::new(parse("G2"), vec![1, 2]),
    ]
}
