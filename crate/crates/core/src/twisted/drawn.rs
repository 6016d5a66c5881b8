//! Bipartite graphs drawn in the plane with edge crossings.
//!
//! The drawing is a plane map whose nodes are the graph vertices plus one
//! degree-4 junction per crossing. Every graph edge is a path of segments
//! running straight through its junctions: at a junction the two segments of
//! one edge are opposite in the rotation. Segment `s` owns darts `2s` and
//! `2s + 1`; rotations list outgoing darts counterclockwise.
//!
//! Butterfly at junction `x` of `A = r1-c2` (weight `a`) and `B = r2-c1`
//! (weight `b`):
//!
//! ```text
//!   r1 ---- c1         r1 ------------ c1        r1-c0   1    r0-c1  -1
//!      \  /             \            /           r2-c0  -b    r0-c2   a
//!       x       =>       c0 ------ r0            r0-c0  -1
//!      /  \             /            \           r1-c1   1    r2-c2  ab
//!   r2 ---- c2         r2 ------------ c2
//! ```
//!
//! `c0` takes the two arms towards `r1`, `r2` in their cyclic order at `x`,
//! `r0` the arms towards `c1`, `c2`. The wing `r1-c1` runs along the sector of
//! `x` between those two arms, and likewise `r2-c2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::dimer::{Edge, PlaneBipartiteGraph};
use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::matrix::LPMatrix;

const DEAD: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    /// First-class vertex.
    Row(usize),
    /// Second-class vertex.
    Col(usize),
    Junction,
    Removed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawnEdge {
    pub v1: usize,
    pub v2: usize,
    pub weight: LaurentPoly,
}

/// Counts of rewrites performed by [`DrawnGraph::planarize`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlanarizeStats {
    pub triplings: usize,
    pub butterflies: usize,
    pub det_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawnGraph {
    edges: Vec<DrawnEdge>,
    nodes: Vec<Node>,
    row_node: Vec<usize>,
    col_node: Vec<usize>,
    origin: Vec<usize>,
    seg_edge: Vec<usize>,
    rot: Vec<Vec<usize>>,
}

impl DrawnGraph {
    /// `n1 + n2` isolated vertices.
    pub fn new(n1: usize, n2: usize) -> Self {
        let mut g = DrawnGraph {
            edges: Vec::new(),
            nodes: Vec::new(),
            row_node: Vec::new(),
            col_node: Vec::new(),
            origin: Vec::new(),
            seg_edge: Vec::new(),
            rot: Vec::new(),
        };
        for _ in 0..n1 {
            g.add_row();
        }
        for _ in 0..n2 {
            g.add_col();
        }
        g
    }

    pub(crate) fn add_row(&mut self) -> usize {
        let i = self.row_node.len();
        let node = self.push_node(Node::Row(i));
        self.row_node.push(node);
        i
    }

    pub(crate) fn add_col(&mut self) -> usize {
        let j = self.col_node.len();
        let node = self.push_node(Node::Col(j));
        self.col_node.push(node);
        j
    }

    pub(crate) fn add_junction(&mut self) -> usize {
        self.push_node(Node::Junction)
    }

    fn push_node(&mut self, kind: Node) -> usize {
        self.nodes.push(kind);
        self.rot.push(Vec::new());
        self.nodes.len() - 1
    }

    /// Registers an edge without drawing it.
    pub(crate) fn push_edge(&mut self, v1: usize, v2: usize, weight: LaurentPoly) -> usize {
        self.edges.push(DrawnEdge { v1, v2, weight });
        self.edges.len() - 1
    }

    /// New segment from node `a` to node `b` carrying `edge`; returns the
    /// dart leaving `a`. Rotations are left to the caller.
    pub(crate) fn new_segment(&mut self, a: usize, b: usize, edge: usize) -> usize {
        let s = self.seg_edge.len();
        self.seg_edge.push(edge);
        self.origin.push(a);
        self.origin.push(b);
        2 * s
    }

    pub fn n1(&self) -> usize {
        self.row_node.len()
    }

    pub fn n2(&self) -> usize {
        self.col_node.len()
    }

    pub fn edges(&self) -> &[DrawnEdge] {
        &self.edges
    }

    pub fn row_node(&self, i: usize) -> usize {
        self.row_node[i]
    }

    pub fn col_node(&self, j: usize) -> usize {
        self.col_node[j]
    }

    pub fn node(&self, v: usize) -> Node {
        self.nodes[v]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn rotation(&self, node: usize) -> &[usize] {
        &self.rot[node]
    }

    pub(crate) fn rotation_mut(&mut self, node: usize) -> &mut Vec<usize> {
        &mut self.rot[node]
    }

    pub fn origin(&self, dart: usize) -> usize {
        self.origin[dart]
    }

    pub fn head(&self, dart: usize) -> usize {
        self.origin[dart ^ 1]
    }

    pub fn dart_edge(&self, dart: usize) -> usize {
        self.seg_edge[dart / 2]
    }

    pub fn junction_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&v| self.nodes[v] == Node::Junction).collect()
    }

    pub fn junction_count(&self) -> usize {
        self.nodes.iter().filter(|&&k| k == Node::Junction).count()
    }

    /// Live segments as `(node, node, edge)`, in creation order.
    pub fn segments(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.seg_edge.len())
            .filter(|&s| self.seg_edge[s] != DEAD)
            .map(|s| (self.origin[2 * s], self.origin[2 * s + 1], self.seg_edge[s]))
    }

    fn live_darts(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.origin.len()).filter(|&d| self.seg_edge[d / 2] != DEAD)
    }

    /// Next dart along the face to the right of `d`.
    pub fn next_dart(&self, d: usize) -> usize {
        let v = self.head(d);
        let rot = &self.rot[v];
        let k = rot.iter().position(|&x| x == d ^ 1).expect("dart missing from rotation");
        rot[(k + 1) % rot.len()]
    }

    /// Faces as dart cycles, and the face of every dart (`DEAD` if removed).
    pub fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut dart_face = vec![DEAD; self.origin.len()];
        let mut faces = Vec::new();
        for d0 in self.live_darts() {
            if dart_face[d0] != DEAD {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = d0;
            while dart_face[d] == DEAD {
                dart_face[d] = faces.len();
                cycle.push(d);
                d = self.next_dart(d);
            }
            faces.push(cycle);
        }
        (faces, dart_face)
    }

    fn node_node_edge_start(&self, e: usize) -> Option<usize> {
        let start = self.row_node[self.edges[e].v1];
        self.rot[start].iter().copied().find(|&d| self.seg_edge[d / 2] == e)
    }

    /// Darts of edge `e` from its first-class end, or `None` if undrawn.
    pub fn edge_darts(&self, e: usize) -> Option<Vec<usize>> {
        let mut d = self.node_node_edge_start(e)?;
        let mut out = vec![d];
        loop {
            let v = self.head(d);
            if self.nodes[v] != Node::Junction {
                return Some(out);
            }
            let rot = &self.rot[v];
            let k = rot.iter().position(|&x| x == d ^ 1).unwrap();
            d = rot[(k + 2) % 4];
            out.push(d);
        }
    }

    /// Junction nodes met along edge `e`, in order from its first-class end.
    pub fn edge_junctions(&self, e: usize) -> Vec<usize> {
        match self.edge_darts(e) {
            Some(darts) => darts[..darts.len() - 1].iter().map(|&d| self.head(d)).collect(),
            None => Vec::new(),
        }
    }

    pub fn weight_matrix(&self) -> LPMatrix {
        let mut m = LPMatrix::zeros(self.n1(), self.n2());
        for e in &self.edges {
            m.add_to(e.v1, e.v2, &e.weight);
        }
        m
    }

    /// Euler check of the underlying plane map, per connected component.
    pub fn check_map(&self) -> Result<(), Error> {
        let n = self.nodes.len();
        let mut comp = vec![DEAD; n];
        let mut ncomp = 0;
        for s in 0..n {
            if comp[s] != DEAD || self.rot[s].is_empty() {
                continue;
            }
            comp[s] = ncomp;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rot[v] {
                    let w = self.head(d);
                    if comp[w] == DEAD {
                        comp[w] = ncomp;
                        stack.push(w);
                    }
                }
            }
            ncomp += 1;
        }
        for v in 0..n {
            if self.nodes[v] == Node::Junction && self.rot[v].len() != 4 {
                return Err(Error::NotPlanarEmbedding(format!("junction node {v} has degree {}", self.rot[v].len())));
            }
            for &d in &self.rot[v] {
                if self.origin[d] != v {
                    return Err(Error::NotPlanarEmbedding(format!("dart {d} listed at node {v} it does not leave")));
                }
            }
        }
        let mut counts = vec![(0usize, 0usize, 0usize); ncomp];
        for v in 0..n {
            if comp[v] != DEAD {
                counts[comp[v]].0 += 1;
            }
        }
        for d in self.live_darts().filter(|d| d % 2 == 0) {
            counts[comp[self.origin[d]]].1 += 1;
        }
        for face in self.faces().0 {
            counts[comp[self.origin[face[0]]]].2 += 1;
        }
        for (c, &(v, e, f)) in counts.iter().enumerate() {
            if v + f != e + 2 {
                return Err(Error::NotPlanarEmbedding(format!("map component {c}: V={v} E={e} F={f}")));
            }
        }
        Ok(())
    }

    /// Splits the segment of dart `d` (from `a` to `b`) at `node`. Afterwards
    /// `d` runs from `a` to `node`, the returned dart from `node` to `b`, and
    /// `node` lists `[towards b, towards a]`.
    pub(crate) fn split_dart(&mut self, d: usize, node: usize) -> usize {
        let b = self.head(d);
        let edge = self.seg_edge[d / 2];
        let d2 = self.new_segment(node, b, edge);
        let back = d ^ 1;
        let k = self.rot[b].iter().position(|&x| x == back).unwrap();
        self.rot[b][k] = d2 ^ 1;
        self.origin[back] = node;
        self.rot[node].push(d2);
        self.rot[node].push(back);
        d2
    }

    fn relabel_run(&mut self, mut d: usize, edge: usize) -> usize {
        loop {
            self.seg_edge[d / 2] = edge;
            let v = self.head(d);
            match self.nodes[v] {
                Node::Junction => {
                    let rot = &self.rot[v];
                    let k = rot.iter().position(|&x| x == d ^ 1).unwrap();
                    d = rot[(k + 2) % 4];
                }
                _ => return v,
            }
        }
    }

    /// Replaces edge `e = (r, c)` of weight `a` by the path
    /// `r -1- c' -(-1)- r' -a- c`. Junctions `[0, cut1)` of `e` stay on the
    /// first piece, `[cut1, cut2)` go to the middle one and the rest to the
    /// last. Returns the ids of the middle and last edges.
    pub fn triple_edge(&mut self, e: usize, cut1: usize, cut2: usize) -> Result<(usize, usize), Error> {
        let darts = self.edge_darts(e).ok_or_else(|| Error::DimensionMismatch(format!("edge {e} is not drawn")))?;
        if cut1 > cut2 || cut2 >= darts.len() {
            return Err(Error::DimensionMismatch(format!("cuts {cut1}, {cut2} out of range for edge {e}")));
        }
        let DrawnEdge { v1: r, v2: c, weight: a } = self.edges[e].clone();
        let c_new = self.add_col();
        let r_new = self.add_row();
        let c_node = self.col_node[c_new];
        let r_node = self.row_node[r_new];
        let after_c = self.split_dart(darts[cut1], c_node);
        let r_dart = if cut1 == cut2 { after_c } else { darts[cut2] };
        self.split_dart(r_dart, r_node);
        let middle = self.push_edge(r_new, c_new, LaurentPoly::constant(-1));
        let last = self.push_edge(r_new, c, a);
        self.edges[e] = DrawnEdge { v1: r, v2: c_new, weight: LaurentPoly::one() };
        // c_node lists [towards r_new, towards r]; r_node lists [towards c, towards c_new]
        let reached = self.relabel_run(darts[0], e);
        debug_assert_eq!(reached, c_node);
        let to_r_new = self.rot[c_node][0];
        self.relabel_run(to_r_new, middle);
        let to_c = self.rot[r_node][0];
        self.relabel_run(to_c, last);
        Ok((middle, last))
    }

    fn kill_segment(&mut self, d: usize) {
        self.seg_edge[d / 2] = DEAD;
        self.origin[d] = DEAD;
        self.origin[d ^ 1] = DEAD;
    }

    /// Replaces the crossing at junction node `x` by a butterfly. Both edges
    /// through `x` must cross nothing else.
    pub fn insert_butterfly(&mut self, x: usize) -> Result<(), Error> {
        if self.nodes.get(x) != Some(&Node::Junction) {
            return Err(Error::NotSingleCrossing(format!("node {x} is not a junction")));
        }
        let arms: Vec<usize> = self.rot[x].clone();
        let edge_a = self.seg_edge[arms[0] / 2];
        let edge_b = self.seg_edge[arms[1] / 2];
        for e in [edge_a, edge_b] {
            let k = self.edge_junctions(e).len();
            if k != 1 || edge_a == edge_b {
                return Err(Error::NotSingleCrossing(format!("edge {e} has {k} crossings")));
            }
        }
        let (ea, eb) = (self.edges[edge_a].clone(), self.edges[edge_b].clone());
        let (r1, c2, r2, c1) = (ea.v1, ea.v2, eb.v1, eb.v2);
        // arm kinds: 0 = r1, 1 = c2, 2 = r2, 3 = c1
        let kind: Vec<usize> = arms
            .iter()
            .map(|&d| {
                let far = self.head(d);
                let e = self.seg_edge[d / 2];
                match (e == edge_a, far == self.row_node[if e == edge_a { r1 } else { r2 }]) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                }
            })
            .collect();
        let is_row_arm = |k: usize| kind[k] == 0 || kind[k] == 2;
        let row_first = (0..4).find(|&k| is_row_arm(k) && is_row_arm((k + 1) % 4)).unwrap();
        let col_first = (0..4).find(|&k| !is_row_arm(k) && !is_row_arm((k + 1) % 4)).unwrap();

        let r0 = self.add_row();
        let c0 = self.add_col();
        let (a, b) = (ea.weight, eb.weight);
        self.edges[edge_a] = DrawnEdge { v1: r1, v2: c0, weight: LaurentPoly::one() };
        self.edges[edge_b] = DrawnEdge { v1: r2, v2: c0, weight: -&b };
        let e_r0c2 = self.push_edge(r0, c2, a.clone());
        let e_r0c1 = self.push_edge(r0, c1, LaurentPoly::constant(-1));
        let e_r0c0 = self.push_edge(r0, c0, LaurentPoly::constant(-1));
        let e_wing1 = self.push_edge(r1, c1, LaurentPoly::one());
        let e_wing2 = self.push_edge(r2, c2, &a * &b);

        let far: Vec<usize> = arms.iter().map(|&d| self.head(d)).collect();
        let far_entry: Vec<usize> = arms.iter().map(|&d| d ^ 1).collect();
        for &d in &arms {
            self.kill_segment(d);
        }
        self.rot[x].clear();
        self.nodes[x] = Node::Removed;

        let r0n = self.row_node[r0];
        let c0n = self.col_node[c0];
        // main segments, as darts leaving the arm's far vertex
        let main_edge = [edge_a, e_r0c2, edge_b, e_r0c1];
        let mut main_far = [0usize; 4];
        let mut main_mid = [0usize; 4];
        for k in 0..4 {
            let mid = if is_row_arm(k) { c0n } else { r0n };
            let dart = self.new_segment(far[k], mid, main_edge[kind[k]]);
            main_far[k] = dart;
            main_mid[k] = dart ^ 1;
        }
        let spine = self.new_segment(r0n, c0n, e_r0c0);
        self.rot[c0n] = vec![main_mid[row_first], main_mid[(row_first + 1) % 4], spine ^ 1];
        self.rot[r0n] = vec![main_mid[col_first], main_mid[(col_first + 1) % 4], spine];

        // wings: r1-c1 joins kinds 0 and 3, r2-c2 joins kinds 2 and 1
        let arm_of = |want: usize| (0..4).find(|&k| kind[k] == want).unwrap();
        let mut wing_far = [0usize; 4];
        for (from, to, e) in [(0, 3, e_wing1), (2, 1, e_wing2)] {
            let (kf, kt) = (arm_of(from), arm_of(to));
            let dart = self.new_segment(far[kf], far[kt], e);
            wing_far[kf] = dart;
            wing_far[kt] = dart ^ 1;
        }
        for k in 0..4 {
            let partner = match kind[k] {
                0 => 3,
                3 => 0,
                2 => 1,
                _ => 2,
            };
            let wing_is_next = kind[(k + 1) % 4] == partner;
            let entries = if wing_is_next { [wing_far[k], main_far[k]] } else { [main_far[k], wing_far[k]] };
            let rot = &mut self.rot[far[k]];
            let pos = rot.iter().position(|&d| d == far_entry[k]).unwrap();
            rot.splice(pos..=pos, entries);
        }
        Ok(())
    }

    /// Triples edges until every edge crosses at most one other edge, once.
    /// Returns the number of triplings.
    pub fn split_multiple_crossings(&mut self) -> Result<usize, Error> {
        self.tripling_pass(|_| Ok(()))
    }

    fn tripling_pass(&mut self, mut after: impl FnMut(&DrawnGraph) -> Result<(), Error>) -> Result<usize, Error> {
        let mut count = 0;
        let mut e = 0;
        while e < self.edges.len() {
            if self.edge_junctions(e).len() >= 2 {
                self.triple_edge(e, 1, 2)?;
                count += 1;
                after(self)?;
            } else {
                e += 1;
            }
        }
        Ok(count)
    }

    /// Removes every crossing: edges crossing more than once are tripled until
    /// each carries at most one junction, then every junction becomes a
    /// butterfly. `|det|` of the weight matrix is compared against the input
    /// after each individual rewrite.
    pub fn planarize(&self) -> Result<(PlaneBipartiteGraph, PlanarizeStats), Error> {
        self.planarize_with(true)
    }

    /// As [`planarize`](Self::planarize), optionally without the determinant
    /// check after each rewrite.
    pub fn planarize_with(&self, check_each: bool) -> Result<(PlaneBipartiteGraph, PlanarizeStats), Error> {
        let mut g = self.clone();
        let mut stats = PlanarizeStats::default();
        let reference = if check_each && g.n1() == g.n2() { Some(g.weight_matrix().det()?) } else { None };
        let check = |g: &DrawnGraph, what: &str, stats: &mut PlanarizeStats| -> Result<(), Error> {
            if let Some(want) = &reference {
                stats.det_checks += 1;
                let got = g.weight_matrix().det()?;
                if !got.equal_up_to_sign(want) {
                    return Err(Error::RewriteCheckFailed(format!("{what}: determinant {got} differs from {want}")));
                }
            }
            Ok(())
        };
        stats.triplings = g.tripling_pass(|g| check(g, "tripling", &mut stats))?;
        while let Some(x) = (0..g.nodes.len()).find(|&v| g.nodes[v] == Node::Junction) {
            g.insert_butterfly(x)?;
            stats.butterflies += 1;
            check(&g, "butterfly", &mut stats)?;
        }
        g.check_map()?;
        Ok((g.to_plane_graph()?, stats))
    }

    /// The drawing as a plane graph; fails while junctions remain.
    pub fn to_plane_graph(&self) -> Result<PlaneBipartiteGraph, Error> {
        if self.junction_count() > 0 {
            return Err(Error::NotPlanarEmbedding(format!("{} crossings remain", self.junction_count())));
        }
        let edges: Vec<Edge> =
            self.edges.iter().map(|e| Edge { v1: e.v1, v2: e.v2, weight: e.weight.clone() }).collect();
        let rotation: Vec<Vec<usize>> = self
            .row_node
            .iter()
            .chain(&self.col_node)
            .map(|&v| self.rot[v].iter().map(|&d| self.seg_edge[d / 2]).collect())
            .collect();
        PlaneBipartiteGraph::new(self.n1(), self.n2(), edges, rotation)
    }
}
