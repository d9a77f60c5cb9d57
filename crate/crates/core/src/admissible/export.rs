//! JSON, CSV and DOT renderings of admissible posets and strata graphs.

use std::fmt::Write;

use serde::Serialize;

use super::{AdmissiblePoset, StrataGraph};
use crate::rootsys::{Coweight, GroupDescriptor};

#[derive(Debug, Clone, Serialize)]
pub struct ElementExport {
    pub index: usize,
    pub length: usize,
    pub codim: usize,
    pub reduced_word: String,
    pub finite_word: Vec<usize>,
    pub translation: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PosetExport {
    pub group: GroupDescriptor,
    pub mu: Coweight,
    pub size: usize,
    pub max_length: usize,
    pub lambda: Vec<Coweight>,
    pub omega: Vec<Coweight>,
    pub elements: Vec<ElementExport>,
    /// `[lower, upper]` index pairs
    pub covers: Vec<[usize; 2]>,
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\\\""))
}

impl AdmissiblePoset {
    pub fn export(&self) -> PosetExport {
        let g = self.group();
        let elements = (0..self.len())
            .map(|i| {
                let rec = g.record(self.element(i));
                ElementExport {
                    index: i,
                    length: self.length_of(i),
                    codim: self.codim_of(i),
                    reduced_word: self.describe(self.element(i)),
                    finite_word: rec.finite_word,
                    translation: rec.translation,
                }
            })
            .collect();
        PosetExport {
            group: self.root_system().descriptor(),
            mu: self.mu().clone(),
            size: self.len(),
            max_length: self.max_length(),
            lambda: self.lambda_set().to_vec(),
            omega: self.weight_support().into_iter().collect(),
            elements,
            covers: self.covers().iter().map(|c| [c.lower, c.upper]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("poset export is serializable")
    }

    /// One row per element; words are dot-separated, translations comma-separated.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["index", "length", "codim", "reduced_word", "finite_word", "translation"])
            .expect("writing to memory");
        for e in self.export().elements {
            let fw: Vec<String> = e.finite_word.iter().map(ToString::to_string).collect();
            let tr: Vec<String> = e.translation.iter().map(ToString::to_string).collect();
            w.write_record([
                e.index.to_string(),
                e.length.to_string(),
                e.codim.to_string(),
                e.reduced_word,
                fw.join("."),
                tr.join(","),
            ])
            .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV is UTF-8")
    }

    /// Hasse diagram, edges pointing upward.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            let x = self.element(i);
            let label = if x.is_translation() {
                format!("t{}", x.translation_part())
            } else {
                self.describe(x)
            };
            writeln!(out, "  n{i} [label={}, length={}];", quoted(&label), self.length_of(i)).unwrap();
        }
        for c in self.covers() {
            writeln!(out, "  n{} -> n{};", c.lower, c.upper).unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Undirected DOT for `Codim≤1(x)`: maximal vertices labelled by `λ`,
    /// codimension-one vertices by reduced word.
    pub fn strata_dot(&self, graph: &StrataGraph) -> String {
        let mut out = format!("graph codim_le1_{} {{\n", graph.base);
        writeln!(out, "  label={};", quoted(&format!("Codim<=1({})", self.describe(self.element(graph.base))))).unwrap();
        for &v in &graph.codim0 {
            let label = self.element(v).translation_part().to_string();
            writeln!(out, "  n{v} [label={}, shape=box];", quoted(&label)).unwrap();
        }
        for &v in &graph.codim1 {
            writeln!(out, "  n{v} [label={}];", quoted(&self.describe(self.element(v)))).unwrap();
        }
        for &(a, b) in &graph.edges {
            writeln!(out, "  n{a} -- n{b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}
