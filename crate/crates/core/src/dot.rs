//! Graphviz export of finite transition graphs.

use std::fmt::Write as _;
use std::path::Path;

use crate::shift::VertexShift;
use crate::wandering::{Block, Truncation};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per symbol, labelled by name with its follower count.
pub fn shift_dot(name: &str, x: &VertexShift) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for a in 0..x.len() {
        writeln!(
            out,
            "  n{a} [label={}, xlabel={}];",
            quote(x.name(a)),
            quote(&format!("|f|={}", x.successors(a).len()))
        )
        .unwrap();
    }
    for (a, b) in x.edges() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn fill(b: Block) -> &'static str {
    match b {
        Block::Transitive => "gold",
        Block::Cyclic => "lightblue",
        Block::Wandering => "white",
    }
}

/// A truncation, coloured by block when labels are given; boundary
/// states are dashed.
pub fn truncation_dot(name: &str, t: &Truncation, labels: Option<&[Block]>) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  node [shape=box, style=filled, fillcolor=white];").unwrap();
    for i in 0..t.len() {
        let mut attrs = vec![
            format!("label={}", quote(&t.names[i])),
            format!("xlabel={}", quote(&format!("|f|={}", t.succ[i].len()))),
        ];
        if let Some(l) = labels {
            attrs.push(format!("fillcolor={}", fill(l[i])));
            attrs.push(format!("group={}", l[i].letter()));
        }
        if t.boundary[i] {
            attrs.push("style=\"filled,dashed\"".into());
        }
        writeln!(out, "  n{i} [{}];", attrs.join(", ")).unwrap();
    }
    for (a, b) in t.edges() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn write_dot(path: &Path, text: &str) -> std::io::Result<()> {
    std::fs::write(path, text)
}

/// Node and edge counts of DOT text produced here.
pub fn dot_counts(text: &str) -> (usize, usize) {
    let lines = text.lines().map(str::trim);
    let (mut nodes, mut edges) = (0, 0);
    for l in lines {
        if l.contains(" -> ") {
            edges += 1;
        } else if l.starts_with('n') && !l.starts_with("node ") && l.contains('[') {
            nodes += 1;
        }
    }
    (nodes, edges)
}
