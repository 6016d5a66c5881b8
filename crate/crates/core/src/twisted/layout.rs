//! Drawings of gadget graphs.
//!
//! A single gadget is drawn with its rows on one line and its columns on a
//! parallel line, so `(i, j)` and `(k, l)` cross iff `(i - k)(j - l) < 0`.
//!
//! The twisted Alexander graph is drawn greedily: vertices are visited
//! breadth-first and each edge is inserted into the rotation of its endpoints
//! by a sort key. An edge reaching a vertex already drawn is routed through
//! the fewest faces of the current map, crossing one segment per face change.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::drawn::DrawnGraph;
use crate::laurent::LaurentPoly;
use crate::matrix::LPMatrix;

/// Sort key of an edge at one endpoint.
pub(crate) type Key = (usize, i64);

#[derive(Clone, Debug)]
pub(crate) struct KeyedEdge {
    pub v1: usize,
    pub v2: usize,
    pub weight: LaurentPoly,
    pub key1: Key,
    pub key2: Key,
}

/// Crossing point of two segments between the lines, as a fraction with
/// positive denominator.
fn crossing_height(b: (i128, i128), c: (i128, i128)) -> (i128, i128) {
    let num = b.0 - c.0;
    let den = (b.0 - c.0) - (b.1 - c.1);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// The two-line drawing of the matrix gadget: one edge per nonzero entry, in
/// row-major order.
pub fn gadget_drawing(m: &LPMatrix) -> DrawnGraph {
    let (n1, n2) = (m.rows(), m.cols());
    let mut g = DrawnGraph::new(n1, n2);
    let mut ends = Vec::new();
    for i in 0..n1 {
        for j in 0..n2 {
            if !m.get(i, j).is_zero() {
                g.push_edge(i, j, m.get(i, j).clone());
                ends.push((i, j));
            }
        }
    }
    let scale = (n1.max(n2) as i128 + 1).pow(3);
    // perturb the top line until no three edges meet in a point
    let (bottom, top, pairs) = (0..)
        .find_map(|seed: i128| {
            let bottom: Vec<i128> = (0..n1 as i128).map(|i| i * scale).collect();
            let top: Vec<i128> = (0..n2 as i128).map(|j| j * scale + (j * j * (2 * seed + 1)) % scale).collect();
            let mut pairs = Vec::new();
            let mut heights: Vec<Vec<(i128, i128)>> = vec![Vec::new(); ends.len()];
            for e in 0..ends.len() {
                for f in e + 1..ends.len() {
                    let ((i, j), (k, l)) = (ends[e], ends[f]);
                    if (i as i64 - k as i64) * (j as i64 - l as i64) < 0 {
                        let h = crossing_height((bottom[i], top[j]), (bottom[k], top[l]));
                        heights[e].push(h);
                        heights[f].push(h);
                        pairs.push((e, f, h));
                    }
                }
            }
            let generic = heights.iter_mut().all(|hs| {
                hs.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
                hs.windows(2).all(|w| w[0].0 * w[1].1 != w[1].0 * w[0].1)
            });
            generic.then_some((bottom, top, pairs))
        })
        .unwrap();

    // junctions along every edge, ordered from the row end
    let mut along: Vec<Vec<((i128, i128), usize)>> = vec![Vec::new(); ends.len()];
    let mut junction_of_pair = Vec::new();
    for &(e, f, h) in &pairs {
        let x = g.add_junction();
        along[e].push((h, x));
        along[f].push((h, x));
        junction_of_pair.push((x, e, f));
    }
    // (up, down) darts of each edge at each of its junctions
    let mut at_junction: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); ends.len()];
    let mut first = vec![0usize; ends.len()];
    let mut last = vec![0usize; ends.len()];
    for (e, list) in along.iter_mut().enumerate() {
        list.sort_by(|a, b| (a.0 .0 * b.0 .1).cmp(&(b.0 .0 * a.0 .1)));
        let mut path = vec![g.row_node(ends[e].0)];
        path.extend(list.iter().map(|&(_, x)| x));
        path.push(g.col_node(ends[e].1));
        let darts: Vec<usize> = path.windows(2).map(|w| g.new_segment(w[0], w[1], e)).collect();
        first[e] = darts[0];
        last[e] = *darts.last().unwrap();
        for k in 1..path.len() - 1 {
            at_junction[e].push((path[k], darts[k], darts[k - 1] ^ 1));
        }
    }
    let darts_at = |e: usize, x: usize| at_junction[e].iter().find(|t| t.0 == x).map(|t| (t.1, t.2)).unwrap();
    for &(x, e, f) in &junction_of_pair {
        let (left, right) = if ends[e].0 < ends[f].0 { (e, f) } else { (f, e) };
        let (l_up, l_down) = darts_at(left, x);
        let (r_up, r_down) = darts_at(right, x);
        g.rotation_mut(x).extend([l_up, r_up, l_down, r_down]);
    }
    for i in 0..n1 {
        let mut out: Vec<usize> = (0..ends.len()).filter(|&e| ends[e].0 == i).collect();
        out.sort_by_key(|&e| core::cmp::Reverse(top[ends[e].1]));
        let node = g.row_node(i);
        g.rotation_mut(node).extend(out.iter().map(|&e| first[e]));
    }
    for j in 0..n2 {
        let mut inc: Vec<usize> = (0..ends.len()).filter(|&e| ends[e].1 == j).collect();
        inc.sort_by_key(|&e| bottom[ends[e].0]);
        let node = g.col_node(j);
        g.rotation_mut(node).extend(inc.iter().map(|&e| last[e] ^ 1));
    }
    g
}

/// Greedy drawing of a bipartite graph, keeping the listed edge order as
/// edge ids.
pub(crate) fn greedy_drawing(n1: usize, n2: usize, edges: &[KeyedEdge]) -> DrawnGraph {
    let mut g = DrawnGraph::new(n1, n2);
    for e in edges {
        g.push_edge(e.v1, e.v2, e.weight.clone());
    }
    // vertices 0..n1 are rows, n1.. columns
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n1 + n2];
    for (e, edge) in edges.iter().enumerate() {
        incident[edge.v1].push(e);
        incident[n1 + edge.v2].push(e);
    }
    let key_at = |e: usize, v: usize| if v < n1 { edges[e].key1 } else { edges[e].key2 };
    for (v, list) in incident.iter_mut().enumerate() {
        list.sort_by_key(|&e| (key_at(e, v), e));
    }
    let node_of = |g: &DrawnGraph, v: usize| if v < n1 { g.row_node(v) } else { g.col_node(v - n1) };
    let mut placed = vec![false; n1 + n2];
    let mut drawn = vec![false; edges.len()];
    for s in 0..n1 + n2 {
        if placed[s] || incident[s].is_empty() {
            continue;
        }
        placed[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &incident[u] {
                if drawn[e] {
                    continue;
                }
                drawn[e] = true;
                let w = if u < n1 { n1 + edges[e].v2 } else { edges[e].v1 };
                let (v1, v2) = (edges[e].v1, n1 + edges[e].v2);
                let pos = |g: &DrawnGraph, v: usize| {
                    let node = node_of(g, v);
                    let key = (key_at(e, v), e);
                    g.rotation(node).iter().filter(|&&d| (key_at(g.dart_edge(d), v), g.dart_edge(d)) < key).count()
                };
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                    let (pu, pw) = (pos(&g, u), pos(&g, w));
                    let (nu, nw) = (node_of(&g, u), node_of(&g, w));
                    let d = g.new_segment(nu, nw, e);
                    g.rotation_mut(nu).insert(pu, d);
                    g.rotation_mut(nw).insert(pw, d ^ 1);
                } else {
                    let (p1, p2) = (pos(&g, v1), pos(&g, v2));
                    let (a, b) = (node_of(&g, v1), node_of(&g, v2));
                    route(&mut g, e, (a, p1), (b, p2));
                }
            }
        }
    }
    g
}

/// Draws edge `e` from corner `from` to corner `to` (node, rotation index),
/// crossing the fewest segments.
fn route(g: &mut DrawnGraph, e: usize, from: (usize, usize), to: (usize, usize)) {
    let (faces, dart_face) = g.faces();
    let corner_face = |g: &DrawnGraph, (node, p): (usize, usize)| {
        let rot = g.rotation(node);
        dart_face[rot[p % rot.len()]]
    };
    let (fu, fw) = (corner_face(g, from), corner_face(g, to));
    let mut parent = vec![usize::MAX; faces.len()];
    let mut seen = vec![false; faces.len()];
    seen[fu] = true;
    let mut queue = VecDeque::from([fu]);
    while let Some(f) = queue.pop_front() {
        if f == fw {
            break;
        }
        for &d in &faces[f] {
            let h = dart_face[d ^ 1];
            if !seen[h] {
                seen[h] = true;
                parent[h] = d;
                queue.push_back(h);
            }
        }
    }
    let mut crossed = Vec::new();
    let mut f = fw;
    while f != fu {
        let d = parent[f];
        crossed.push(d);
        f = dart_face[d];
    }
    crossed.reverse();

    let mut path = vec![from.0];
    for &d in &crossed {
        let x = g.add_junction();
        g.split_dart(d, x);
        path.push(x);
    }
    path.push(to.0);
    let darts: Vec<usize> = path.windows(2).map(|w| g.new_segment(w[0], w[1], e)).collect();
    for k in 1..path.len() - 1 {
        // [towards b, forward, towards a, backward]
        let rot = g.rotation_mut(path[k]);
        rot.insert(1, darts[k]);
        rot.push(darts[k - 1] ^ 1);
    }
    g.rotation_mut(from.0).insert(from.1, darts[0]);
    let last = *darts.last().unwrap();
    g.rotation_mut(to.0).insert(to.1, last ^ 1);
}
