//! The Alexander polynomial by determinant, by dimer partition function and by
//! Kauffman's state sum.
//!
//! Every crossing contributes one relation whose abelianized free derivatives
//! are read off the quadrant roles:
//!
//! ```text
//!   left-behind  -t | left-ahead  +t
//!   ----------------+----------------> over-strand
//!   right-behind +1 | right-ahead -1
//! ```
//!
//! Opposite quadrants share a checkerboard color, so flipping the sign of
//! black columns and of rows whose positive pair is black leaves only `t`
//! (left) and `1` (right).

use alloc::vec;
use alloc::vec::Vec;

use crate::dimer::{self, Edge, KasteleynWeighting, PlaneBipartiteGraph};
use crate::error::Error;
use crate::knot::{FaceColor, KnotDiagram, QuadrantRole};
use crate::laurent::LaurentPoly;
use crate::matrix::LPMatrix;

/// Crossing-by-bounded-face matrix of abelianized free derivatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoxMatrix {
    pub matrix: LPMatrix,
    /// Face id of every column.
    pub columns: Vec<usize>,
    pub signed: bool,
}

/// Crossing/face incidence graph with two adjacent faces removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderGraph {
    pub graph: PlaneBipartiteGraph,
    /// Face id of every second-class vertex.
    pub faces: Vec<usize>,
    /// Unbounded face and the deleted adjacent face.
    pub deleted: [usize; 2],
    /// `(crossing, quadrant)` of every edge.
    pub corners: Vec<(usize, usize)>,
}

pub(crate) fn raw_entry(role: QuadrantRole) -> LaurentPoly {
    match role {
        QuadrantRole::LeftAhead => LaurentPoly::t(),
        QuadrantRole::RightAhead => LaurentPoly::constant(-1),
        QuadrantRole::LeftBehind => LaurentPoly::monomial(-1, 1),
        QuadrantRole::RightBehind => LaurentPoly::one(),
    }
}

pub(crate) fn normalized_entry(role: QuadrantRole) -> LaurentPoly {
    if role.is_left() {
        LaurentPoly::t()
    } else {
        LaurentPoly::one()
    }
}

pub fn fox_matrix(d: &KnotDiagram) -> FoxMatrix {
    let columns = d.bounded_faces();
    let mut col_of = vec![usize::MAX; d.face_count()];
    for (j, &f) in columns.iter().enumerate() {
        col_of[f] = j;
    }
    let mut matrix = LPMatrix::zeros(d.crossing_count(), columns.len());
    for c in 0..d.crossing_count() {
        for (q, role) in d.quadrant_roles(c).into_iter().enumerate() {
            let j = col_of[d.face_at(c, q)];
            if j != usize::MAX {
                matrix.add_to(c, j, &raw_entry(role));
            }
        }
    }
    FoxMatrix { matrix, columns, signed: true }
}

/// Row sign of crossing `c`: `-1` when its `+t`/`+1` quadrants are black.
pub(crate) fn row_sign(d: &KnotDiagram, colors: &[FaceColor], c: usize) -> i8 {
    let q = d.crossing(c).over_out;
    if colors[d.face_at(c, q)] == FaceColor::White {
        1
    } else {
        -1
    }
}

pub(crate) fn column_sign(colors: &[FaceColor], f: usize) -> i8 {
    if colors[f] == FaceColor::White {
        1
    } else {
        -1
    }
}

/// Flips rows and columns by the checkerboard rule so every entry has
/// nonnegative coefficients.
pub fn sign_normalize(m: &FoxMatrix, d: &KnotDiagram, colors: &[FaceColor]) -> Result<FoxMatrix, Error> {
    let mut out = m.clone();
    if !m.signed {
        return Ok(out);
    }
    let minus = LaurentPoly::constant(-1);
    for c in 0..m.matrix.rows() {
        if row_sign(d, colors, c) < 0 {
            out.matrix.scale_row(c, &minus);
        }
    }
    for (j, &f) in m.columns.iter().enumerate() {
        if column_sign(colors, f) < 0 {
            out.matrix.scale_col(j, &minus);
        }
    }
    for i in 0..out.matrix.rows() {
        for j in 0..out.matrix.cols() {
            if !out.matrix.get(i, j).is_nonnegative() {
                return Err(Error::NotNormalizable(alloc::format!(
                    "entry ({i}, {j}) = {} after sign normalization",
                    out.matrix.get(i, j)
                )));
            }
        }
    }
    out.signed = false;
    Ok(out)
}

/// Checks that `face` may be deleted: bounded and adjacent to the unbounded face.
pub fn check_deletable(d: &KnotDiagram, face: usize) -> Result<(), Error> {
    if face >= d.face_count() {
        return Err(Error::FaceOutOfRange(face));
    }
    if face == d.unbounded_face() {
        return Err(Error::FaceUnbounded(face));
    }
    if !d.faces_adjacent(face, d.unbounded_face()) {
        return Err(Error::FaceNotAdjacent(face));
    }
    Ok(())
}

/// Lowest-index bounded face sharing an edge with the unbounded face.
pub fn default_deleted_face(d: &KnotDiagram) -> Option<usize> {
    d.faces_adjacent_to_unbounded().first().copied()
}

pub fn delete_face_column(m: &FoxMatrix, d: &KnotDiagram, face: usize) -> Result<LPMatrix, Error> {
    check_deletable(d, face)?;
    let j = m.columns.iter().position(|&f| f == face).ok_or(Error::FaceUnbounded(face))?;
    Ok(m.matrix.without_columns(&[j]))
}

/// Determinant of the square Alexander matrix, deleting `face` (or the
/// default face); unit-normalized.
pub fn alexander_det_with(d: &KnotDiagram, face: Option<usize>) -> Result<LaurentPoly, Error> {
    if d.is_unknot() {
        return Ok(LaurentPoly::one());
    }
    let face = resolve_face(d, face)?;
    let m = delete_face_column(&fox_matrix(d), d, face)?;
    Ok(m.det()?.normalize_unit())
}

pub fn alexander_det(d: &KnotDiagram) -> Result<LaurentPoly, Error> {
    alexander_det_with(d, None)
}

pub(crate) fn resolve_face(d: &KnotDiagram, face: Option<usize>) -> Result<usize, Error> {
    match face {
        Some(f) => {
            check_deletable(d, f)?;
            Ok(f)
        }
        None => default_deleted_face(d).ok_or(Error::EmptyDiagram),
    }
}

/// Incidence graph of crossings and retained faces, embedded as the diagram:
/// edges leave a crossing in quadrant order and reach a face in the reverse
/// of its clockwise boundary walk.
pub fn build_alexander_graph(d: &KnotDiagram, face: Option<usize>) -> Result<AlexanderGraph, Error> {
    if d.is_unknot() {
        let graph = PlaneBipartiteGraph::new(0, 0, Vec::new(), Vec::new())?;
        return Ok(AlexanderGraph { graph, faces: Vec::new(), deleted: [0, 0], corners: Vec::new() });
    }
    let deleted_face = resolve_face(d, face)?;
    let deleted = [d.unbounded_face(), deleted_face];
    let faces: Vec<usize> = (0..d.face_count()).filter(|f| !deleted.contains(f)).collect();
    let mut vertex_of = vec![usize::MAX; d.face_count()];
    for (k, &f) in faces.iter().enumerate() {
        vertex_of[f] = k;
    }
    let n = d.crossing_count();
    let mut edges = Vec::new();
    let mut corners = Vec::new();
    let mut edge_at = vec![[usize::MAX; 4]; n];
    for (c, slots) in edge_at.iter_mut().enumerate() {
        let roles = d.quadrant_roles(c);
        for (q, slot) in slots.iter_mut().enumerate() {
            let v = vertex_of[d.face_at(c, q)];
            if v == usize::MAX {
                continue;
            }
            *slot = edges.len();
            edges.push(Edge { v1: c, v2: v, weight: normalized_entry(roles[q]) });
            corners.push((c, q));
        }
    }
    let mut rotation: Vec<Vec<usize>> =
        edge_at.iter().map(|slots| slots.iter().copied().filter(|&e| e != usize::MAX).collect()).collect();
    for &f in &faces {
        rotation.push(d.faces()[f].corners.iter().rev().map(|&(c, q)| edge_at[c][q]).collect());
    }
    let graph = PlaneBipartiteGraph::new(n, faces.len(), edges, rotation)?;
    Ok(AlexanderGraph { graph, faces, deleted, corners })
}

/// `-1` on the edge into the quadrant between the outgoing over- and
/// under-strands of each crossing.
pub fn kauffman_weighting(d: &KnotDiagram, ag: &AlexanderGraph) -> Result<KasteleynWeighting, Error> {
    let signs = ag
        .corners
        .iter()
        .map(|&(c, q)| if q == d.crossing(c).outgoing_quadrant() { -1 } else { 1 })
        .collect();
    let w = KasteleynWeighting { signs };
    if !dimer::verify_kasteleyn(&ag.graph, &w) {
        return Err(Error::KasteleynCheckFailed("local crossing signs violate a face".into()));
    }
    Ok(w)
}

/// Partition function of the Alexander graph under the local signs.
pub fn alexander_dimer_with(d: &KnotDiagram, face: Option<usize>) -> Result<LaurentPoly, Error> {
    if d.is_unknot() {
        return Ok(LaurentPoly::one());
    }
    let ag = build_alexander_graph(d, face)?;
    let w = kauffman_weighting(d, &ag)?;
    Ok(dimer::partition_function(&ag.graph.signed(&w)).normalize_unit())
}

pub fn alexander_dimer(d: &KnotDiagram) -> Result<LaurentPoly, Error> {
    alexander_dimer_with(d, None)
}

/// Kauffman's state sum, walking the diagram directly: a state places one
/// marker per crossing in a quadrant so that every retained face gets
/// exactly one marker.
pub fn kauffman_state_sum(d: &KnotDiagram) -> Result<LaurentPoly, Error> {
    Ok(kauffman_states(d, None)?.0.normalize_unit())
}

/// State sum before normalization, and the number of states.
pub fn kauffman_states(d: &KnotDiagram, face: Option<usize>) -> Result<(LaurentPoly, usize), Error> {
    if d.is_unknot() {
        return Ok((LaurentPoly::one(), 1));
    }
    let deleted_face = resolve_face(d, face)?;
    let mut used = vec![false; d.face_count()];
    used[d.unbounded_face()] = true;
    used[deleted_face] = true;
    let mut total = LaurentPoly::zero();
    let mut count = 0;
    place_markers(d, 0, &mut used, &LaurentPoly::one(), &mut total, &mut count);
    Ok((total, count))
}

fn place_markers(
    d: &KnotDiagram,
    c: usize,
    used: &mut [bool],
    weight: &LaurentPoly,
    total: &mut LaurentPoly,
    count: &mut usize,
) {
    if c == d.crossing_count() {
        *total += weight;
        *count += 1;
        return;
    }
    let x = d.crossing(c);
    let roles = d.quadrant_roles(c);
    for q in 0..4 {
        let f = d.face_at(c, q);
        if used[f] {
            continue;
        }
        let mut local = if roles[q].is_left() { LaurentPoly::t() } else { LaurentPoly::one() };
        if q == x.outgoing_quadrant() {
            local = -local;
        }
        used[f] = true;
        place_markers(d, c + 1, used, &(weight * &local), total, count);
        used[f] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::builtin_knot;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn trefoil_three_ways() {
        let d = builtin_knot("trefoil").unwrap();
        let expected = p("t^2 - t + 1");
        assert_eq!(alexander_det(&d).unwrap(), expected);
        assert_eq!(alexander_dimer(&d).unwrap(), expected);
        assert_eq!(kauffman_state_sum(&d).unwrap(), expected);
    }

    #[test]
    fn trefoil_fox_rows() {
        let d = builtin_knot("trefoil").unwrap();
        let m = fox_matrix(&d);
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (3, 4));
        let colors = d.checkerboard_coloring();
        let normalized = sign_normalize(&m, &d, &colors).unwrap();
        for i in 0..3 {
            let mut row: Vec<LaurentPoly> = m.matrix.row(i).iter().filter(|e| !e.is_zero()).cloned().collect();
            row.sort();
            let mut want = vec![p("t"), p("-t"), p("-1"), p("1")];
            want.sort();
            // the unbounded face takes one quadrant of every trefoil crossing
            assert_eq!(row.len(), 3);
            assert!(row.iter().all(|e| want.contains(e)));
            assert!(normalized.matrix.row(i).iter().all(LaurentPoly::is_nonnegative));
        }
    }

    #[test]
    fn normalization_changes_det_by_sign() {
        let d = builtin_knot("trefoil").unwrap();
        let m = fox_matrix(&d);
        let normalized = sign_normalize(&m, &d, &d.checkerboard_coloring()).unwrap();
        let f = default_deleted_face(&d).unwrap();
        let a = delete_face_column(&m, &d, f).unwrap().det().unwrap();
        let b = delete_face_column(&normalized, &d, f).unwrap().det().unwrap();
        assert!(a.equal_up_to_sign(&b));
        assert_eq!(sign_normalize(&normalized, &d, &d.checkerboard_coloring()).unwrap(), normalized);
    }

    #[test]
    fn trefoil_alexander_graph() {
        // the triangle lying left of every over-strand is taken as unbounded
        let d = builtin_knot("trefoil").unwrap();
        let left_triangle = (0..d.face_count())
            .find(|&f| {
                let corners = &d.faces()[f].corners;
                corners.len() == 3 && corners.iter().all(|&(c, q)| d.quadrant_roles(c)[q].is_left())
            })
            .unwrap();
        let d = d.with_unbounded_face(left_triangle).unwrap();
        let ag = build_alexander_graph(&d, None).unwrap();
        assert_eq!((ag.graph.n1(), ag.graph.n2()), (3, 3));
        assert_eq!(ag.graph.edge_count(), 7);
        assert_eq!(ag.graph.edges().iter().filter(|e| e.weight == LaurentPoly::t()).count(), 2);
        assert_eq!(ag.graph.faces().unwrap().len(), 3);
        assert_eq!(dimer::enumerate_matchings(&ag.graph).len(), 3);
        assert_eq!(dimer::partition_function(&ag.graph), p("t^2 + t + 1"));
        let w = kauffman_weighting(&d, &ag).unwrap();
        assert_eq!(w.signs.iter().filter(|&&s| s < 0).count(), 2);
    }

    #[test]
    fn graph_matrix_is_normalized_fox_matrix() {
        for name in ["trefoil", "figure8", "5_2", "7_4", "8_19"] {
            let d = builtin_knot(name).unwrap();
            let colors = d.checkerboard_coloring();
            let normalized = sign_normalize(&fox_matrix(&d), &d, &colors).unwrap();
            for &f in &d.faces_adjacent_to_unbounded() {
                let ag = build_alexander_graph(&d, Some(f)).unwrap();
                assert_eq!(ag.graph.weight_matrix(), delete_face_column(&normalized, &d, f).unwrap(), "{name} face {f}");
            }
        }
    }

    #[test]
    fn deletion_errors() {
        let d = builtin_knot("figure8").unwrap();
        assert_eq!(check_deletable(&d, d.unbounded_face()), Err(Error::FaceUnbounded(d.unbounded_face())));
        assert_eq!(check_deletable(&d, 99), Err(Error::FaceOutOfRange(99)));
        let far = d.bounded_faces().into_iter().find(|&f| !d.faces_adjacent(f, d.unbounded_face()));
        if let Some(f) = far {
            assert_eq!(build_alexander_graph(&d, Some(f)).unwrap_err(), Error::FaceNotAdjacent(f));
        }
    }

    #[test]
    fn unknot_and_kink() {
        let u = KnotDiagram::unknot();
        assert!(alexander_det(&u).unwrap().is_one());
        assert!(alexander_dimer(&u).unwrap().is_one());
        assert!(kauffman_state_sum(&u).unwrap().is_one());
        let kink = KnotDiagram::parse_pd("X(1,2,2,1)").unwrap();
        let m = fox_matrix(&kink);
        assert_eq!((m.matrix.rows(), m.matrix.cols()), (1, 2));
        assert!(alexander_det(&kink).unwrap().is_one());
        assert!(alexander_dimer(&kink).unwrap().is_one());
        assert!(kauffman_state_sum(&kink).unwrap().is_one());
    }

    #[test]
    fn figure_eight_determinant() {
        let d = builtin_knot("figure8").unwrap();
        let delta = alexander_det(&d).unwrap();
        assert_eq!(delta, p("t^2 - 3t + 1"));
        assert_eq!(delta.eval_unit_point(true), 5.into());
    }
}
