//! Graphviz export.

use std::fmt::Write;

use crate::audit::adjacency;
use crate::group::{vertex_order, ConnectingSet, Mode};

/// Undirected DOT graph: rotation vertices `r0..`, reflection vertices `f0..`,
/// labelled `a^k` and `a^k b`.
pub fn to_dot(cs: &ConnectingSet, mode: Mode) -> String {
    let vertices = vertex_order(cs.n(), mode).expect("connecting set has n >= 3");
    let id = |i: usize| {
        let g = vertices[i];
        format!("{}{}", if g.is_reflection() { 'f' } else { 'r' }, g.exponent())
    };
    let a = adjacency(cs, mode);
    let mut out = String::new();
    let _ = writeln!(out, "graph cayley {{");
    let _ = writeln!(out, "  // {mode} {cs}");
    for (i, g) in vertices.iter().enumerate() {
        let _ = writeln!(out, "  {} [label=\"{g}\"];", id(i));
    }
    for i in 0..a.rows() {
        for j in i + 1..a.cols() {
            if a[(i, j)] != 0 {
                let _ = writeln!(out, "  {} -- {};", id(i), id(j));
            }
        }
    }
    out.push_str("}\n");
    out
}
