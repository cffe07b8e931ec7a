//! Graphviz DOT renderings of runs, paths and tree sequences.

use std::fmt::Write;

use crate::algob::GrayCodeRun;
use crate::trees::{InvVector, KTree, STree};

/// Anything that can be exported.
#[derive(Clone, Copy, Debug)]
pub enum DotPayload<'a> {
    Run(&'a GrayCodeRun),
    Path(&'a [InvVector]),
    STrees(&'a [STree]),
    KTrees(&'a [KTree]),
}

pub fn export_dot(payload: DotPayload<'_>) -> String {
    match payload {
        DotPayload::Run(run) => {
            let labels: Vec<String> = run.words.iter().map(|w| w.to_string()).collect();
            let edges: Vec<String> = run.moves.iter().map(|m| m.to_string()).collect();
            chain("gray_code", &labels, &edges)
        }
        DotPayload::Path(path) => {
            let labels: Vec<String> = path.iter().map(|v| v.to_string()).collect();
            let edges: Vec<String> = path.windows(2).map(|p| unit_step(&p[0], &p[1])).collect();
            chain("hamilton_path", &labels, &edges)
        }
        DotPayload::STrees(trees) => forest(trees.iter().map(Ordered::from_stree).collect()),
        DotPayload::KTrees(trees) => forest(trees.iter().map(Ordered::from_ktree).collect()),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn chain(name: &str, labels: &[String], edges: &[String]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=box, fontname=monospace];").unwrap();
    for (k, label) in labels.iter().enumerate() {
        writeln!(out, "  n{k} [label={}];", quote(label)).unwrap();
    }
    for (k, label) in edges.iter().enumerate() {
        writeln!(out, "  n{k} -> n{} [label={}];", k + 1, quote(label)).unwrap();
    }
    out.push_str("}\n");
    out
}

// "+1 @2" names the coordinate that moved.
fn unit_step(a: &InvVector, b: &InvVector) -> String {
    let mut parts = Vec::new();
    for (k, (x, y)) in a.0.iter().zip(&b.0).enumerate() {
        if x != y {
            let delta = *y as i64 - *x as i64;
            parts.push(format!("{delta:+} @{}", k + 1));
        }
    }
    parts.join(" ")
}

// Common shape of both tree kinds for rendering; `None` is an empty slot.
struct Ordered {
    label: String,
    slots: Vec<Option<Ordered>>,
}

impl Ordered {
    fn from_stree(t: &STree) -> Ordered {
        Ordered {
            label: t.label.to_string(),
            slots: t
                .slots
                .iter()
                .map(|s| s.as_deref().map(Ordered::from_stree))
                .collect(),
        }
    }

    fn from_ktree(t: &KTree) -> Ordered {
        fn go(t: &KTree, offset: usize) -> Option<Ordered> {
            let KTree::Node(kids) = t else { return None };
            let mut base = offset + t.internal() - 1;
            let slots = kids
                .iter()
                .map(|kid| {
                    base -= kid.internal();
                    go(kid, base)
                })
                .collect();
            Some(Ordered {
                label: (offset + t.internal()).to_string(),
                slots,
            })
        }
        go(t, 0).unwrap_or(Ordered {
            label: String::new(),
            slots: Vec::new(),
        })
    }

    fn caption(&self) -> String {
        let mut s = self.label.clone();
        if !self.slots.is_empty() {
            let inner: Vec<String> = self
                .slots
                .iter()
                .map(|s| s.as_ref().map_or("ε".to_string(), Ordered::caption))
                .collect();
            s = format!("{s}({})", inner.join(","));
        }
        s
    }
}

fn forest(trees: Vec<Ordered>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph trees {{").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    writeln!(out, "  ordering=out;").unwrap();
    for (k, tree) in trees.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{k} {{").unwrap();
        writeln!(out, "    label={};", quote(&tree.caption())).unwrap();
        let mut next = 0;
        emit_node(&mut out, k, tree, &mut next);
        writeln!(out, "  }}").unwrap();
    }
    out.push_str("}\n");
    out
}

fn emit_node(out: &mut String, cluster: usize, node: &Ordered, next: &mut usize) -> String {
    let id = format!("t{cluster}_{}", *next);
    *next += 1;
    writeln!(out, "    {id} [label={}];", quote(&node.label)).unwrap();
    for slot in &node.slots {
        let child = match slot {
            Some(c) => emit_node(out, cluster, c, next),
            None => {
                let leaf = format!("t{cluster}_{}", *next);
                *next += 1;
                writeln!(out, "    {leaf} [shape=point];").unwrap();
                leaf
            }
        };
        writeln!(out, "    {id} -> {child};").unwrap();
    }
    id
}
