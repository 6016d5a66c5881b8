//! Weighted bipartite plane graphs, perfect matchings and Kasteleyn signs.
//!
//! The embedding is a rotation system: for every vertex, the counterclockwise
//! cyclic order of its incident edges. Vertices `0..n1` form the first color
//! class and `n1..n1 + n2` the second. Edge `e` owns two darts, `2e` from its
//! first-class end and `2e + 1` back. A face is the dart cycle produced by
//! `next(d) = ccw_successor(head(d), reverse(d))` and lies to the right of
//! each of its darts.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::matrix::{sparse_permanent, LPMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub v1: usize,
    pub v2: usize,
    pub weight: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBipartiteGraph {
    n1: usize,
    n2: usize,
    edges: Vec<Edge>,
    rotation: Vec<Vec<usize>>,
    outer: Option<usize>,
}

/// Faces of an embedded graph, with one face per component marked outer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faces {
    pub darts: Vec<Vec<usize>>,
    pub dart_face: Vec<usize>,
    /// Component of every face.
    pub component: Vec<usize>,
    /// Outer face of every component that has edges.
    pub outer: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn is_outer(&self, f: usize) -> bool {
        self.outer.contains(&f)
    }
}

/// Edge signs `±1` indexed like the graph's edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KasteleynWeighting {
    pub signs: Vec<i8>,
}

impl PlaneBipartiteGraph {
    /// Validates that `rotation[v]` is a permutation of the edges at `v`.
    pub fn new(n1: usize, n2: usize, edges: Vec<Edge>, rotation: Vec<Vec<usize>>) -> Result<Self, Error> {
        let g = PlaneBipartiteGraph { n1, n2, edges, rotation, outer: None };
        g.validate()?;
        Ok(g)
    }

    /// Graph whose rotation at each vertex is the order edges were listed.
    /// Useful for matching-only computations; the embedding may be non-planar.
    pub fn with_insertion_rotation(n1: usize, n2: usize, edges: Vec<Edge>) -> Result<Self, Error> {
        let mut rotation = vec![Vec::new(); n1 + n2];
        for (e, edge) in edges.iter().enumerate() {
            if edge.v1 >= n1 || edge.v2 >= n2 {
                return Err(Error::DimensionMismatch(format!("edge {e} has an endpoint out of range")));
            }
            rotation[edge.v1].push(e);
            rotation[n1 + edge.v2].push(e);
        }
        Self::new(n1, n2, edges, rotation)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.rotation.len() != self.n1 + self.n2 {
            return Err(Error::DimensionMismatch("one rotation list per vertex".into()));
        }
        let mut seen = vec![0u8; self.edges.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for &e in rot {
                let edge = self.edges.get(e).ok_or_else(|| Error::DimensionMismatch(format!("unknown edge {e}")))?;
                let end = if v < self.n1 { edge.v1 } else { self.n1 + edge.v2 };
                if end != v {
                    return Err(Error::DimensionMismatch(format!("edge {e} listed at vertex {v} it does not touch")));
                }
                seen[e] += 1;
            }
        }
        if let Some(e) = seen.iter().position(|&k| k != 2) {
            return Err(Error::DimensionMismatch(format!("edge {e} must appear once at each end")));
        }
        if let Some(d) = self.outer {
            if d >= 2 * self.edges.len() {
                return Err(Error::DimensionMismatch(format!("outer dart {d} out of range")));
            }
        }
        Ok(())
    }

    /// Declares the face to the right of dart `d` unbounded.
    pub fn with_outer_dart(mut self, d: usize) -> Result<Self, Error> {
        self.outer = Some(d);
        self.validate()?;
        Ok(self)
    }

    pub fn outer_dart(&self) -> Option<usize> {
        self.outer
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn vertex_count(&self) -> usize {
        self.n1 + self.n2
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn tail(&self, d: usize) -> usize {
        let e = &self.edges[d / 2];
        if d % 2 == 0 {
            e.v1
        } else {
            self.n1 + e.v2
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    /// Next dart along the face to the right of `d`.
    pub fn next_dart(&self, d: usize) -> usize {
        let v = self.head(d);
        let rot = &self.rotation[v];
        let back = d / 2;
        let k = rot.iter().position(|&e| e == back).unwrap();
        let e = rot[(k + 1) % rot.len()];
        if v < self.n1 {
            2 * e
        } else {
            2 * e + 1
        }
    }

    /// Connected component of every vertex, numbered by smallest vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.rotation[v] {
                    let w = if v < self.n1 { self.n1 + self.edges[e].v2 } else { self.edges[e].v1 };
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        comp
    }

    /// Face traversal with a per-component Euler check.
    pub fn faces(&self) -> Result<Faces, Error> {
        let nd = 2 * self.edges.len();
        let mut dart_face = vec![usize::MAX; nd];
        let mut darts: Vec<Vec<usize>> = Vec::new();
        for d0 in 0..nd {
            if dart_face[d0] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = d0;
            while dart_face[d] == usize::MAX {
                dart_face[d] = darts.len();
                cycle.push(d);
                d = self.next_dart(d);
            }
            darts.push(cycle);
        }
        let comp = self.components();
        let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut v_count = vec![0usize; ncomp];
        let mut e_count = vec![0usize; ncomp];
        let mut f_count = vec![0usize; ncomp];
        for &c in &comp {
            v_count[c] += 1;
        }
        for e in &self.edges {
            e_count[comp[e.v1]] += 1;
        }
        let component: Vec<usize> = darts.iter().map(|cycle| comp[self.tail(cycle[0])]).collect();
        for &c in &component {
            f_count[c] += 1;
        }
        for c in 0..ncomp {
            if e_count[c] > 0 && v_count[c] + f_count[c] != e_count[c] + 2 {
                return Err(Error::NotPlanarEmbedding(format!(
                    "component {c}: V={} E={} F={}",
                    v_count[c], e_count[c], f_count[c]
                )));
            }
        }
        let designated = self.outer.map(|d| dart_face[d]);
        let mut outer = Vec::new();
        for c in 0..ncomp {
            if e_count[c] == 0 {
                continue;
            }
            let chosen = match designated {
                Some(f) if component[f] == c => f,
                _ => (0..darts.len())
                    .filter(|&f| component[f] == c)
                    .max_by_key(|&f| (darts[f].len(), core::cmp::Reverse(f)))
                    .unwrap(),
            };
            outer.push(chosen);
        }
        Ok(Faces { darts, dart_face, component, outer })
    }

    /// `|V1| x |V2|` matrix of summed edge weights.
    pub fn weight_matrix(&self) -> LPMatrix {
        let mut m = LPMatrix::zeros(self.n1, self.n2);
        for e in &self.edges {
            m.add_to(e.v1, e.v2, &e.weight);
        }
        m
    }

    /// Copy with every edge weight multiplied by its sign.
    pub fn signed(&self, w: &KasteleynWeighting) -> Self {
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(&w.signs) {
            if s < 0 {
                e.weight = -&e.weight;
            }
        }
        g
    }

    /// Weight matrix after applying the spanning-tree Kasteleyn signs.
    pub fn kasteleyn_matrix(&self) -> Result<LPMatrix, Error> {
        let w = kasteleyn_weighting_by_component(self)?;
        Ok(self.signed(&w).weight_matrix())
    }
}

/// All perfect matchings as ascending edge-index lists, in ascending order.
pub fn enumerate_matchings(g: &PlaneBipartiteGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if g.n1 != g.n2 {
        return out;
    }
    let mut matched = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    branch(g, &mut matched, &mut chosen, &mut out);
    out.sort();
    out
}

fn branch(g: &PlaneBipartiteGraph, matched: &mut [bool], chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let other = |v: usize, e: usize| if v < g.n1 { g.n1 + g.edges[e].v2 } else { g.edges[e].v1 };
    let mut best: Option<(usize, usize)> = None;
    for v in (0..g.vertex_count()).filter(|&v| !matched[v]) {
        let deg = g.rotation[v].iter().filter(|&&e| !matched[other(v, e)]).count();
        if best.is_none_or(|(_, d)| deg < d) {
            best = Some((v, deg));
        }
    }
    let Some((v, deg)) = best else {
        let mut m = chosen.clone();
        m.sort_unstable();
        out.push(m);
        return;
    };
    if deg == 0 {
        return;
    }
    let mut options: Vec<usize> = g.rotation[v].iter().copied().filter(|&e| !matched[other(v, e)]).collect();
    options.sort_unstable();
    for e in options {
        let w = other(v, e);
        matched[v] = true;
        matched[w] = true;
        chosen.push(e);
        branch(g, matched, chosen, out);
        chosen.pop();
        matched[v] = false;
        matched[w] = false;
    }
}

/// Sum over perfect matchings of the product of edge weights.
pub fn partition_function(g: &PlaneBipartiteGraph) -> LaurentPoly {
    if g.n1 != g.n2 {
        return LaurentPoly::zero();
    }
    let rows: Vec<Vec<(usize, &LaurentPoly)>> = (0..g.n1)
        .map(|v| g.rotation[v].iter().map(|&e| (g.edges[e].v2, &g.edges[e].weight)).collect())
        .collect();
    sparse_permanent(g.n2, &rows)
}

/// Partition function by explicit enumeration of every matching.
pub fn partition_function_by_enumeration(g: &PlaneBipartiteGraph) -> LaurentPoly {
    let mut z = LaurentPoly::zero();
    for m in enumerate_matchings(g) {
        let mut prod = LaurentPoly::one();
        for e in m {
            prod = &prod * &g.edges[e].weight;
        }
        z += &prod;
    }
    z
}

fn face_parity_ok(len: usize, negatives: usize) -> bool {
    if len % 4 == 0 {
        negatives % 2 == 1
    } else {
        negatives % 2 == 0
    }
}

fn negatives_on(face: &[usize], signs: &[i8]) -> usize {
    face.iter().filter(|&&d| signs[d / 2] < 0).count()
}

/// Checks the face parity condition on every bounded face.
pub fn verify_kasteleyn(g: &PlaneBipartiteGraph, w: &KasteleynWeighting) -> bool {
    if w.signs.len() != g.edge_count() {
        return false;
    }
    let Ok(faces) = g.faces() else { return false };
    faces
        .darts
        .iter()
        .enumerate()
        .filter(|(f, _)| !faces.is_outer(*f))
        .all(|(_, darts)| face_parity_ok(darts.len(), negatives_on(darts, &w.signs)))
}

/// Kasteleyn signs for a connected plane graph: `+1` on a BFS spanning tree,
/// then the dual tree of the remaining edges is pruned leaf by leaf towards
/// the outer face, each pruned face fixing the sign of its dual-tree edge.
pub fn kasteleyn_weighting(g: &PlaneBipartiteGraph) -> Result<KasteleynWeighting, Error> {
    let comp = g.components();
    let ncomp = comp.iter().copied().max().map_or(0, |m| m + 1);
    if ncomp > 1 {
        return Err(Error::Disconnected(ncomp));
    }
    kasteleyn_weighting_by_component(g)
}

/// Same construction run independently on every connected component.
pub fn kasteleyn_weighting_by_component(g: &PlaneBipartiteGraph) -> Result<KasteleynWeighting, Error> {
    let faces = g.faces()?;
    let n = g.vertex_count();
    let mut signs = vec![0i8; g.edge_count()];

    // spanning forest
    let mut visited = vec![false; n];
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &g.rotation[v] {
                let w = if v < g.n1 { g.n1 + g.edges[e].v2 } else { g.edges[e].v1 };
                if !visited[w] {
                    visited[w] = true;
                    signs[e] = 1;
                    queue.push_back(w);
                }
            }
        }
    }

    // dual forest over the non-tree edges, rooted at the outer faces
    let nf = faces.len();
    let mut parent_edge = vec![usize::MAX; nf];
    let mut reached = vec![false; nf];
    let mut order = Vec::with_capacity(nf);
    for &root in &faces.outer {
        reached[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            order.push(f);
            for &d in &faces.darts[f] {
                if signs[d / 2] != 0 {
                    continue;
                }
                let h = faces.dart_face[d ^ 1];
                if !reached[h] {
                    reached[h] = true;
                    parent_edge[h] = d / 2;
                    queue.push_back(h);
                }
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return Err(Error::KasteleynCheckFailed("dual forest does not reach every face".into()));
    }
    for &f in order.iter().rev() {
        let e = parent_edge[f];
        if e == usize::MAX {
            continue;
        }
        signs[e] = 1;
        let darts = &faces.darts[f];
        if !face_parity_ok(darts.len(), negatives_on(darts, &signs)) {
            signs[e] = -1;
        }
    }
    if let Some(e) = signs.iter().position(|&s| s == 0) {
        return Err(Error::KasteleynCheckFailed(format!("edge {e} left unsigned")));
    }
    let w = KasteleynWeighting { signs };
    if !verify_kasteleyn(g, &w) {
        return Err(Error::KasteleynCheckFailed("spanning-tree weighting violates a face".into()));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn edge(v1: usize, v2: usize, w: i64) -> Edge {
        Edge { v1, v2, weight: LaurentPoly::constant(w) }
    }

    /// Cycle `r0 c0 r1 c1 ... ` of length `2k`, drawn as a convex polygon.
    fn cycle(k: usize) -> PlaneBipartiteGraph {
        let mut edges = Vec::new();
        for i in 0..k {
            edges.push(edge(i, i, 1));
            edges.push(edge((i + 1) % k, i, 1));
        }
        PlaneBipartiteGraph::with_insertion_rotation(k, k, edges).unwrap()
    }

    #[test]
    fn faces_of_small_graphs() {
        let single = PlaneBipartiteGraph::with_insertion_rotation(1, 1, vec![edge(0, 0, 1)]).unwrap();
        assert_eq!(single.faces().unwrap().len(), 1);
        let square = cycle(2);
        let f = square.faces().unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.darts.iter().all(|d| d.len() == 4));
    }

    #[test]
    fn matchings_of_small_graphs() {
        assert_eq!(enumerate_matchings(&cycle(2)).len(), 2);
        assert_eq!(enumerate_matchings(&cycle(5)).len(), 2);
        let unbalanced = PlaneBipartiteGraph::with_insertion_rotation(2, 1, vec![edge(0, 0, 1), edge(1, 0, 1)]).unwrap();
        assert!(enumerate_matchings(&unbalanced).is_empty());
        assert!(partition_function(&unbalanced).is_zero());
    }

    #[test]
    fn parallel_edges_sum_in_the_matrix() {
        let g = PlaneBipartiteGraph::with_insertion_rotation(1, 1, vec![edge(0, 0, 2), edge(0, 0, 3)]).unwrap();
        assert_eq!(g.weight_matrix().get(0, 0), &LaurentPoly::constant(5));
        assert_eq!(enumerate_matchings(&g).len(), 2);
        assert_eq!(partition_function(&g), LaurentPoly::constant(5));
        let empty = PlaneBipartiteGraph::with_insertion_rotation(2, 2, vec![]).unwrap();
        assert_eq!(empty.weight_matrix(), LPMatrix::zeros(2, 2));
    }

    #[test]
    fn square_needs_one_negative_sign() {
        let g = cycle(2);
        assert!(!verify_kasteleyn(&g, &KasteleynWeighting { signs: vec![1; 4] }));
        let w = kasteleyn_weighting(&g).unwrap();
        assert_eq!(w.signs.iter().filter(|&&s| s < 0).count(), 1);
        assert!(verify_kasteleyn(&g, &w));
        assert_eq!(g.signed(&w).weight_matrix().perm().unwrap(), -g.weight_matrix().det().unwrap());
    }

    #[test]
    fn tree_keeps_all_signs() {
        let g = PlaneBipartiteGraph::with_insertion_rotation(2, 2, vec![edge(0, 0, 1), edge(0, 1, 1), edge(1, 1, 1)]).unwrap();
        let w = kasteleyn_weighting(&g).unwrap();
        assert!(w.signs.iter().all(|&s| s == 1));
        assert_eq!(g.kasteleyn_matrix().unwrap(), g.weight_matrix());
    }

    #[test]
    fn disconnected_is_reported() {
        let g = PlaneBipartiteGraph::with_insertion_rotation(2, 2, vec![edge(0, 0, 1), edge(1, 1, 1)]).unwrap();
        assert_eq!(kasteleyn_weighting(&g), Err(Error::Disconnected(2)));
        assert!(kasteleyn_weighting_by_component(&g).is_ok());
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // K_{3,3} admits no planar rotation system
        let mut edges = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                edges.push(edge(i, j, 1));
            }
        }
        let g = PlaneBipartiteGraph::with_insertion_rotation(3, 3, edges).unwrap();
        assert!(matches!(g.faces(), Err(Error::NotPlanarEmbedding(_))));
    }

    #[test]
    fn figure_sign_pattern_is_kasteleyn() {
        // weight matrix of the 5+5 example graph with entries a..m; the
        // Kasteleyn matrix negates the entries i and m
        let [a, b, c, d, e, f, g, h, i, j, k, l, m] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
        let weights = LPMatrix::from_int_rows(&[
            &[a, b, 0, 0, 0],
            &[e, 0, i, j, 0],
            &[d, 0, h, k, 0],
            &[0, f, 0, l, m],
            &[0, c, 0, 0, g],
        ]);
        let kast = LPMatrix::from_int_rows(&[
            &[a, b, 0, 0, 0],
            &[e, 0, -i, j, 0],
            &[d, 0, h, k, 0],
            &[0, f, 0, l, -m],
            &[0, c, 0, 0, g],
        ]);
        assert_eq!(weights.get(1, 2), &LaurentPoly::constant(i));
        assert_eq!(weights.get(3, 4), &LaurentPoly::constant(m));
        let det = weights.det().unwrap();
        let perm = kast.perm().unwrap();
        assert!(perm == det || perm == -det.clone(), "{perm} vs {det}");
    }
}
