//! Twisted Alexander polynomials.
//!
//! A representation `rho` of the knot group on unimodular integer matrices
//! turns every Alexander-matrix entry into a block: `t` becomes `t rho(x)`
//! for the over-arc `x` of the crossing and `1` becomes the identity. The
//! determinant of the block matrix with one face's block column removed is
//! the twisted polynomial.
//!
//! The dimer route replaces every Alexander-graph edge by the bipartite graph
//! of its block, draws the result with crossings, removes crossings by edge
//! tripling and butterflies, and sums matchings under a Kasteleyn sign.

mod drawn;
mod layout;
mod rep;

pub use drawn::{DrawnEdge, DrawnGraph, Node, PlanarizeStats};
pub use layout::gadget_drawing;
pub use rep::{
    builtin_coloring_rep, find_coloring, parse_representation, trivial_rep, verify_representation, IntMatrix, Representation,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::alexander::{build_alexander_graph, column_sign, resolve_face, row_sign};
use crate::dimer::{kasteleyn_weighting_by_component, partition_function, PlaneBipartiteGraph};
use crate::error::Error;
use crate::knot::{FaceColor, KnotDiagram, QuadrantRole};
use crate::laurent::LaurentPoly;
use crate::matrix::LPMatrix;
use layout::KeyedEdge;

/// Crossing-by-bounded-face block matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    pub matrix: LPMatrix,
    pub dim: usize,
    /// Face id of every block column.
    pub columns: Vec<usize>,
    pub signed: bool,
}

impl BlockMatrix {
    pub fn block_rows(&self) -> usize {
        self.matrix.rows() / self.dim
    }

    pub fn block_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn block(&self, i: usize, j: usize) -> LPMatrix {
        let n = self.dim;
        LPMatrix::from_fn(n, n, |a, b| self.matrix.get(i * n + a, j * n + b).clone())
    }

    /// Drops the block column of `face`.
    pub fn without_face(&self, face: usize) -> Result<LPMatrix, Error> {
        let k = self.columns.iter().position(|&f| f == face).ok_or(Error::FaceUnbounded(face))?;
        let cols: Vec<usize> = (k * self.dim..(k + 1) * self.dim).collect();
        Ok(self.matrix.without_columns(&cols))
    }
}

fn require_verified(d: &KnotDiagram, rho: &Representation) -> Result<(), Error> {
    if verify_representation(d, rho) {
        Ok(())
    } else {
        Err(Error::InvalidRepresentation("a crossing relation fails".into()))
    }
}

/// `t rho(x)` for left quadrants, the identity for right ones, each with the
/// sign of the untwisted entry when `signed`.
fn block_entry(role: QuadrantRole, x: &IntMatrix, signed: bool) -> LPMatrix {
    let n = x.dim();
    let sign = match role {
        QuadrantRole::RightAhead | QuadrantRole::LeftBehind if signed => -1,
        _ => 1,
    };
    if role.is_left() {
        LPMatrix::from_fn(n, n, |a, b| LaurentPoly::monomial(sign * x.get(a, b), 1))
    } else {
        LPMatrix::from_fn(n, n, |a, b| LaurentPoly::constant(if a == b { sign } else { 0 }))
    }
}

fn over_images<'a>(d: &KnotDiagram, rho: &'a Representation) -> Vec<&'a IntMatrix> {
    d.wirtinger_relations().iter().map(|r| rho.image(r.over)).collect()
}

/// The signed block matrix, one block row per crossing and one block column
/// per bounded face.
pub fn twisted_block_matrix(d: &KnotDiagram, rho: &Representation) -> Result<BlockMatrix, Error> {
    require_verified(d, rho)?;
    let n = rho.dim();
    let columns = d.bounded_faces();
    let mut col_of = vec![usize::MAX; d.face_count()];
    for (k, &f) in columns.iter().enumerate() {
        col_of[f] = k;
    }
    let mut matrix = LPMatrix::zeros(d.crossing_count() * n, columns.len() * n);
    let over = over_images(d, rho);
    for c in 0..d.crossing_count() {
        let roles = d.quadrant_roles(c);
        for (q, &role) in roles.iter().enumerate() {
            let k = col_of[d.face_at(c, q)];
            if k == usize::MAX {
                continue;
            }
            let block = block_entry(role, over[c], true);
            for a in 0..n {
                for b in 0..n {
                    matrix.add_to(c * n + a, k * n + b, block.get(a, b));
                }
            }
        }
    }
    Ok(BlockMatrix { matrix, dim: n, columns, signed: true })
}

/// Flips block rows and block columns by the checkerboard rule, as in the
/// untwisted case.
pub fn sign_normalize_blocks(b: &BlockMatrix, d: &KnotDiagram, colors: &[FaceColor]) -> BlockMatrix {
    let mut out = b.clone();
    if !b.signed {
        return out;
    }
    let n = b.dim;
    let minus = LaurentPoly::constant(-1);
    for c in 0..b.block_rows() {
        if row_sign(d, colors, c) < 0 {
            for a in 0..n {
                out.matrix.scale_row(c * n + a, &minus);
            }
        }
    }
    for (k, &f) in b.columns.iter().enumerate() {
        if column_sign(colors, f) < 0 {
            for a in 0..n {
                out.matrix.scale_col(k * n + a, &minus);
            }
        }
    }
    out.signed = false;
    out
}

/// Twisted determinant deleting the block column of `face` (or the default
/// face); unit-normalized.
pub fn twisted_det_with(d: &KnotDiagram, rho: &Representation, face: Option<usize>) -> Result<LaurentPoly, Error> {
    require_verified(d, rho)?;
    if d.is_unknot() {
        return Ok(LaurentPoly::one());
    }
    Ok(twisted_alexander_matrix(d, rho, face)?.det()?.normalize_unit())
}

/// Signed square block matrix: the block column of `face` (or the default
/// face) removed.
pub fn twisted_alexander_matrix(d: &KnotDiagram, rho: &Representation, face: Option<usize>) -> Result<LPMatrix, Error> {
    let face = resolve_face(d, face)?;
    twisted_block_matrix(d, rho)?.without_face(face)
}

pub fn twisted_det(d: &KnotDiagram, rho: &Representation) -> Result<LaurentPoly, Error> {
    twisted_det_with(d, rho, None)
}

/// Bipartite graph of a matrix: row `i` joins column `j` with weight
/// `m[i][j]` whenever that entry is nonzero.
pub fn encode_matrix_gadget(m: &LPMatrix) -> DrawnGraph {
    gadget_drawing(m)
}

/// Twisted Alexander graph: each Alexander-graph edge becomes the gadget of
/// its sign-normalized block. Row vertex `c * n + a` is copy `a` of crossing
/// `c`; column vertex `k * n + b` is copy `b` of the `k`-th retained face.
pub fn build_twisted_graph(d: &KnotDiagram, rho: &Representation, face: Option<usize>) -> Result<DrawnGraph, Error> {
    require_verified(d, rho)?;
    let n = rho.dim();
    if d.is_unknot() {
        return Ok(DrawnGraph::new(0, 0));
    }
    let ag = build_alexander_graph(d, face)?;
    let g = &ag.graph;
    let over = over_images(d, rho);
    let position = |v: usize, e: usize| g.rotation(v).iter().position(|&x| x == e).unwrap();
    let mut edges = Vec::new();
    for (e, edge) in g.edges().iter().enumerate() {
        let (c, q) = ag.corners[e];
        let block = block_entry(d.quadrant_roles(c)[q], over[c], false);
        let (p1, p2) = (position(edge.v1, e), position(g.n1() + edge.v2, e));
        for a in 0..n {
            for b in 0..n {
                let w = block.get(a, b);
                if w.is_zero() {
                    continue;
                }
                edges.push(KeyedEdge {
                    v1: edge.v1 * n + a,
                    v2: edge.v2 * n + b,
                    weight: w.clone(),
                    key1: (p1, -(b as i64)),
                    key2: (p2, a as i64),
                });
            }
        }
    }
    Ok(layout::greedy_drawing(g.n1() * n, g.n2() * n, &edges))
}

/// Everything the dimer route computes on the way to the polynomial.
#[derive(Clone, Debug)]
pub struct TwistedDimerRun {
    pub drawn: DrawnGraph,
    pub plane: PlaneBipartiteGraph,
    pub stats: PlanarizeStats,
    /// Kasteleyn-signed plane graph.
    pub signed: PlaneBipartiteGraph,
    pub value: LaurentPoly,
}

/// Dimer route with every intermediate graph kept.
pub fn twisted_dimer_run(d: &KnotDiagram, rho: &Representation, face: Option<usize>) -> Result<TwistedDimerRun, Error> {
    let drawn = build_twisted_graph(d, rho, face)?;
    let (plane, stats) = drawn.planarize()?;
    let w = kasteleyn_weighting_by_component(&plane)?;
    let signed = plane.signed(&w);
    let value = if d.is_unknot() { LaurentPoly::one() } else { partition_function(&signed).normalize_unit() };
    Ok(TwistedDimerRun { drawn, plane, stats, signed, value })
}

pub fn twisted_dimer_with(d: &KnotDiagram, rho: &Representation, face: Option<usize>) -> Result<LaurentPoly, Error> {
    Ok(twisted_dimer_run(d, rho, face)?.value)
}

pub fn twisted_dimer(d: &KnotDiagram, rho: &Representation) -> Result<LaurentPoly, Error> {
    twisted_dimer_with(d, rho, None)
}
