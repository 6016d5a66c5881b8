//! DOT rendering of the graphs each pipeline builds.

use std::fmt::Write;

use knotdimer_core::alexander::build_alexander_graph;
use knotdimer_core::dimer::PlaneBipartiteGraph;
use knotdimer_core::twisted::{build_twisted_graph, twisted_dimer_run, DrawnGraph, Node, Representation};

use crate::config::{GraphKind, KnotInput};
use crate::error::CliError;

pub fn export(knot: &KnotInput, kind: GraphKind, rep: &Representation) -> Result<String, CliError> {
    let (d, face) = (&knot.diagram, knot.face);
    let name = match kind {
        GraphKind::Alexander => "alexander",
        GraphKind::Twisted => "twisted",
        GraphKind::Planar => "planar",
    };
    if d.is_unknot() {
        return Ok(format!("graph {name} {{\n}}\n"));
    }
    Ok(match kind {
        GraphKind::Alexander => {
            let ag = build_alexander_graph(d, face)?;
            let cols: Vec<String> = ag.faces.iter().map(|f| format!("F{f}")).collect();
            plane_dot(name, &ag.graph, |i| format!("X{i}"), |j| cols[j].clone())
        }
        GraphKind::Twisted => drawn_dot(name, &build_twisted_graph(d, rep, face)?),
        GraphKind::Planar => {
            let run = twisted_dimer_run(d, rep, face)?;
            plane_dot(name, &run.signed, |i| format!("r{i}"), |j| format!("c{j}"))
        }
    })
}

fn plane_dot(
    name: &str,
    g: &PlaneBipartiteGraph,
    row_label: impl Fn(usize) -> String,
    col_label: impl Fn(usize) -> String,
) -> String {
    let mut s = format!("graph {name} {{\n");
    for i in 0..g.n1() {
        writeln!(s, "  r{i} [shape=box, label=\"{}\"];", row_label(i)).unwrap();
    }
    for j in 0..g.n2() {
        writeln!(s, "  c{j} [shape=circle, label=\"{}\"];", col_label(j)).unwrap();
    }
    for e in g.edges() {
        writeln!(s, "  r{} -- c{} [label=\"{}\"];", e.v1, e.v2, e.weight).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Rows, columns and crossing junctions as nodes; every edge is drawn as
/// its chain of segments, each labelled with the edge id and weight.
fn drawn_dot(name: &str, g: &DrawnGraph) -> String {
    let node_id = |v: usize| match g.node(v) {
        Node::Row(i) => format!("r{i}"),
        Node::Col(j) => format!("c{j}"),
        _ => format!("x{v}"),
    };
    let mut s = format!("graph {name} {{\n");
    for i in 0..g.n1() {
        writeln!(s, "  r{i} [shape=box];").unwrap();
    }
    for j in 0..g.n2() {
        writeln!(s, "  c{j} [shape=circle];").unwrap();
    }
    for v in g.junction_nodes() {
        writeln!(s, "  x{v} [shape=point];").unwrap();
    }
    for (a, b, e) in g.segments() {
        writeln!(s, "  {} -- {} [label=\"e{e}: {}\"];", node_id(a), node_id(b), g.edges()[e].weight).unwrap();
    }
    s.push_str("}\n");
    s
}
