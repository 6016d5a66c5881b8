//! Planar diagram (PD) codes and the combinatorics of the diagram they encode.
//!
//! A crossing `X(a,b,c,d)` lists its four edge labels counterclockwise,
//! starting with the incoming under-edge. Slot `q` and slot `q + 1` bound
//! quadrant `q`. Orientation of the over-strand is not written down; it is
//! recovered by requiring every edge to have one head and one tail.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

static KNOT_TABLE: &str = include_str!("../data/knots.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    /// Labels as written in the PD code.
    pub labels: [u32; 4],
    /// Edge index (orientation order) at each slot.
    pub edges: [usize; 4],
    /// Slot through which the over-strand leaves: 1 or 3.
    pub over_out: usize,
}

impl Crossing {
    pub fn over_in(&self) -> usize {
        (self.over_out + 2) % 4
    }

    /// `+1` when the over-strand runs from slot 3 to slot 1.
    pub fn sign(&self) -> i8 {
        if self.over_out == 1 {
            1
        } else {
            -1
        }
    }

    /// Quadrant between the outgoing over- and outgoing under-strand.
    pub fn outgoing_quadrant(&self) -> usize {
        if self.over_out == 1 {
            1
        } else {
            2
        }
    }
}

/// Position of a quadrant relative to the oriented over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuadrantRole {
    LeftAhead,
    RightAhead,
    LeftBehind,
    RightBehind,
}

impl QuadrantRole {
    pub fn is_left(self) -> bool {
        matches!(self, QuadrantRole::LeftAhead | QuadrantRole::LeftBehind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceColor {
    Black,
    White,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// `(crossing, quadrant)` corners in traversal order; the face lies to
    /// the right, so bounded faces are walked clockwise.
    pub corners: Vec<(usize, usize)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    /// Consecutive edge indices, from an under-crossing exit to the next entry.
    pub edges: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WirtingerRelation {
    pub crossing: usize,
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub sign: i8,
}

/// A validated, oriented knot diagram. The zero-crossing diagram is the unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    /// Per edge: `(crossing, slot)` at its tail and at its head.
    edge_ends: Vec<[(usize, usize); 2]>,
    faces: Vec<Face>,
    corner_face: Vec<[usize; 4]>,
    unbounded: usize,
    arcs: Vec<Arc>,
    edge_arc: Vec<usize>,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        KnotDiagram {
            crossings: Vec::new(),
            edge_ends: Vec::new(),
            faces: vec![Face { corners: Vec::new() }],
            corner_face: Vec::new(),
            unbounded: 0,
            arcs: Vec::new(),
            edge_arc: Vec::new(),
        }
    }

    pub fn parse_pd(text: &str) -> Result<Self, Error> {
        let tuples = parse_tuples(text)?;
        if tuples.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        Self::from_tuples(&tuples)
    }

    pub fn from_tuples(tuples: &[[u32; 4]]) -> Result<Self, Error> {
        if tuples.is_empty() {
            return Err(Error::EmptyDiagram);
        }
        let n = tuples.len();
        let mut occurrences: Vec<(u32, Vec<(usize, usize)>)> = Vec::new();
        for (c, tuple) in tuples.iter().enumerate() {
            for (s, &label) in tuple.iter().enumerate() {
                if label == 0 {
                    return Err(Error::MalformedInput("edge labels must be positive".into()));
                }
                match occurrences.binary_search_by_key(&label, |(l, _)| *l) {
                    Ok(i) => occurrences[i].1.push((c, s)),
                    Err(i) => occurrences.insert(i, (label, vec![(c, s)])),
                }
            }
        }
        let bad: Vec<String> =
            occurrences.iter().filter(|(_, occ)| occ.len() != 2).map(|(l, occ)| format!("{l}x{}", occ.len())).collect();
        if !bad.is_empty() {
            return Err(Error::BadLabeling(format!("labels must appear exactly twice, found {}", bad.join(" "))));
        }
        let over_out = orient_over_strands(tuples, &occurrences)?;

        // Walk the knot from the smallest label to assign edge indices.
        let occ_of = |label: u32| &occurrences[occurrences.binary_search_by_key(&label, |(l, _)| *l).unwrap()].1;
        let is_out = |c: usize, s: usize| s == 2 || s == over_out[c];
        let mut edge_ends = Vec::with_capacity(2 * n);
        let mut edge_of_slot = vec![[usize::MAX; 4]; n];
        let mut label = occurrences[0].0;
        for e in 0..2 * n {
            let occ = occ_of(label);
            let (tail, head) = if is_out(occ[0].0, occ[0].1) { (occ[0], occ[1]) } else { (occ[1], occ[0]) };
            if edge_of_slot[tail.0][tail.1] != usize::MAX {
                return Err(Error::BadLabeling(format!(
                    "the diagram has more than one component ({e} of {} edges reached)",
                    2 * n
                )));
            }
            edge_of_slot[tail.0][tail.1] = e;
            edge_of_slot[head.0][head.1] = e;
            edge_ends.push([tail, head]);
            label = tuples[head.0][(head.1 + 2) % 4];
        }
        if label != occurrences[0].0 {
            return Err(Error::BadLabeling("orientation walk does not close up".into()));
        }
        let crossings: Vec<Crossing> = (0..n)
            .map(|c| Crossing { labels: tuples[c], edges: edge_of_slot[c], over_out: over_out[c] })
            .collect();

        let (faces, corner_face) = trace_faces(&crossings, &edge_ends);
        if faces.len() != n + 2 {
            return Err(Error::NonPlanar(format!(
                "{} crossings, {} edges and {} faces violate Euler's formula",
                n,
                2 * n,
                faces.len()
            )));
        }
        let unbounded = (0..faces.len()).max_by_key(|&f| (faces[f].len(), core::cmp::Reverse(f))).unwrap();

        let (arcs, edge_arc) = trace_arcs(&crossings, &edge_ends);
        let d = KnotDiagram { crossings, edge_ends, faces, corner_face, unbounded, arcs, edge_arc };
        d.check_coloring()?;
        Ok(d)
    }

    fn check_coloring(&self) -> Result<(), Error> {
        let colors = self.checkerboard_coloring();
        for c in 0..self.crossings.len() {
            for q in 0..4 {
                if colors[self.corner_face[c][q]] == colors[self.corner_face[c][(q + 1) % 4]] {
                    return Err(Error::NonPlanar("face adjacency graph is not bipartite".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_unknot(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    /// `(crossing, slot)` at the tail and head of edge `e`.
    pub fn edge_ends(&self, e: usize) -> [(usize, usize); 2] {
        self.edge_ends[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_at(&self, crossing: usize, quadrant: usize) -> usize {
        self.corner_face[crossing][quadrant]
    }

    pub fn unbounded_face(&self) -> usize {
        self.unbounded
    }

    /// Same diagram with a different face declared unbounded.
    pub fn with_unbounded_face(&self, face: usize) -> Result<Self, Error> {
        if face >= self.faces.len() {
            return Err(Error::FaceOutOfRange(face));
        }
        let mut d = self.clone();
        d.unbounded = face;
        Ok(d)
    }

    pub fn bounded_faces(&self) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| f != self.unbounded).collect()
    }

    /// Whether `f` and `g` lie on the two sides of some edge.
    pub fn faces_adjacent(&self, f: usize, g: usize) -> bool {
        (0..self.crossings.len()).any(|c| {
            (0..4).any(|q| {
                let a = self.corner_face[c][q];
                let b = self.corner_face[c][(q + 1) % 4];
                (a == f && b == g) || (a == g && b == f)
            })
        })
    }

    /// Bounded faces sharing an edge with the unbounded face, ascending.
    pub fn faces_adjacent_to_unbounded(&self) -> Vec<usize> {
        self.bounded_faces().into_iter().filter(|&f| self.faces_adjacent(f, self.unbounded)).collect()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_of_edge(&self, e: usize) -> usize {
        self.edge_arc[e]
    }

    pub fn wirtinger_relations(&self) -> Vec<WirtingerRelation> {
        self.crossings
            .iter()
            .enumerate()
            .map(|(c, x)| WirtingerRelation {
                crossing: c,
                over: self.edge_arc[x.edges[1]],
                incoming: self.edge_arc[x.edges[0]],
                outgoing: self.edge_arc[x.edges[2]],
                sign: x.sign(),
            })
            .collect()
    }

    /// Role of each quadrant `0..4` of crossing `c`.
    pub fn quadrant_roles(&self, c: usize) -> [QuadrantRole; 4] {
        let x = &self.crossings[c];
        let mut roles = [QuadrantRole::LeftAhead; 4];
        roles[x.over_out] = QuadrantRole::LeftAhead;
        roles[(x.over_out + 3) % 4] = QuadrantRole::RightAhead;
        roles[(x.over_in() + 3) % 4] = QuadrantRole::LeftBehind;
        roles[x.over_in()] = QuadrantRole::RightBehind;
        roles
    }

    /// Proper two-coloring of the faces with the unbounded face white.
    pub fn checkerboard_coloring(&self) -> Vec<FaceColor> {
        let mut colors = vec![None; self.faces.len()];
        colors[self.unbounded] = Some(FaceColor::White);
        let mut queue = VecDeque::from([self.unbounded]);
        while let Some(f) = queue.pop_front() {
            let other = match colors[f] {
                Some(FaceColor::White) => FaceColor::Black,
                _ => FaceColor::White,
            };
            for &(c, q) in &self.faces[f].corners {
                for g in [self.corner_face[c][(q + 1) % 4], self.corner_face[c][(q + 3) % 4]] {
                    if colors[g].is_none() {
                        colors[g] = Some(other);
                        queue.push_back(g);
                    }
                }
            }
        }
        colors.into_iter().map(|c| c.unwrap_or(FaceColor::White)).collect()
    }

    /// The same diagram traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        if self.is_unknot() {
            return self.clone();
        }
        let tuples: Vec<[u32; 4]> =
            self.crossings.iter().map(|x| [x.labels[2], x.labels[3], x.labels[0], x.labels[1]]).collect();
        let d = Self::from_tuples(&tuples).expect("reversal of a valid diagram is valid");
        // corner (c, q) becomes (c, q + 2); keep the same face unbounded
        let (c, q) = self.faces[self.unbounded].corners[0];
        let f = d.corner_face[c][(q + 2) % 4];
        d.with_unbounded_face(f).unwrap()
    }

    pub fn to_pd_string(&self) -> String {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|x| format!("X({},{},{},{})", x.labels[0], x.labels[1], x.labels[2], x.labels[3]))
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unknot() {
            f.write_str("unknot")
        } else {
            f.write_str(&self.to_pd_string())
        }
    }
}

fn parse_tuples(text: &str) -> Result<Vec<[u32; 4]>, Error> {
    let mut rest = text.trim();
    if let Some(inner) = rest.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')) {
        rest = inner;
    }
    let mut out = Vec::new();
    loop {
        rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
        if rest.is_empty() {
            return Ok(out);
        }
        let Some(after) = rest.strip_prefix('X') else {
            return Err(Error::MalformedInput(format!("expected 'X(' at {:?}", truncate(rest))));
        };
        let close = match after.chars().next() {
            Some('(') => ')',
            Some('[') => ']',
            _ => return Err(Error::MalformedInput(format!("expected '(' after X at {:?}", truncate(rest)))),
        };
        let Some(end) = after.find(close) else {
            return Err(Error::MalformedInput(format!("unterminated crossing {:?}", truncate(rest))));
        };
        let body = &after[1..end];
        let labels: Vec<&str> = body.split(',').map(str::trim).collect();
        if labels.len() != 4 {
            return Err(Error::MalformedInput(format!("crossing needs 4 labels, got {:?}", body)));
        }
        let mut tuple = [0u32; 4];
        for (slot, l) in tuple.iter_mut().zip(&labels) {
            *slot = l.parse().map_err(|_| Error::MalformedInput(format!("bad edge label {l:?}")))?;
        }
        out.push(tuple);
        rest = &after[end + 1..];
    }
}

fn truncate(s: &str) -> String {
    s.chars().take(24).collect()
}

/// Chooses the outgoing over-slot of every crossing so that each label has
/// one incoming and one outgoing occurrence.
fn orient_over_strands(tuples: &[[u32; 4]], occurrences: &[(u32, Vec<(usize, usize)>)]) -> Result<Vec<usize>, Error> {
    let n = tuples.len();
    let mut over_out: Vec<Option<usize>> = vec![None; n];
    let partner = |c: usize, s: usize| {
        let occ = &occurrences[occurrences.binary_search_by_key(&tuples[c][s], |(l, _)| *l).unwrap()].1;
        if occ[0] == (c, s) {
            occ[1]
        } else {
            occ[0]
        }
    };
    let mut queue: VecDeque<usize> = VecDeque::new();
    // outgoing-ness of a slot, when known
    let role = |over_out: &[Option<usize>], c: usize, s: usize| -> Option<bool> {
        match s {
            0 => Some(false),
            2 => Some(true),
            _ => over_out[c].map(|o| o == s),
        }
    };
    let mut seeded = vec![false; n];
    loop {
        for c in 0..n {
            for s in [0, 2] {
                let (pc, ps) = partner(c, s);
                if ps % 2 == 1 && over_out[pc].is_none() {
                    let out = s == 0;
                    over_out[pc] = Some(if out { ps } else { (ps + 2) % 4 });
                    queue.push_back(pc);
                }
            }
        }
        while let Some(c) = queue.pop_front() {
            for s in [1, 3] {
                let (pc, ps) = partner(c, s);
                if ps % 2 == 1 && over_out[pc].is_none() {
                    let out = role(&over_out, c, s) == Some(false);
                    over_out[pc] = Some(if out { ps } else { (ps + 2) % 4 });
                    queue.push_back(pc);
                }
            }
        }
        match (0..n).find(|&c| over_out[c].is_none() && !seeded[c]) {
            Some(c) => {
                seeded[c] = true;
                over_out[c] = Some(1);
                queue.push_back(c);
            }
            None => break,
        }
    }
    for (c, tuple) in tuples.iter().enumerate() {
        for s in 0..4 {
            let (pc, ps) = partner(c, s);
            if role(&over_out, c, s) == role(&over_out, pc, ps) {
                return Err(Error::BadLabeling(format!("label {} cannot be oriented consistently", tuple[s])));
            }
        }
    }
    Ok(over_out.into_iter().map(|o| o.unwrap_or(1)).collect())
}

fn trace_faces(crossings: &[Crossing], edge_ends: &[[(usize, usize); 2]]) -> (Vec<Face>, Vec<[usize; 4]>) {
    let n = crossings.len();
    let mut corner_face = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for c0 in 0..n {
        for q0 in 0..4 {
            if corner_face[c0][q0] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let (mut c, mut q) = (c0, q0);
            while corner_face[c][q] == usize::MAX {
                corner_face[c][q] = id;
                corners.push((c, q));
                let s = (q + 1) % 4;
                let [a, b] = edge_ends[crossings[c].edges[s]];
                (c, q) = if a == (c, s) { b } else { a };
            }
            faces.push(Face { corners });
        }
    }
    (faces, corner_face)
}

fn trace_arcs(crossings: &[Crossing], edge_ends: &[[(usize, usize); 2]]) -> (Vec<Arc>, Vec<usize>) {
    let m = edge_ends.len();
    let starts_arc = |e: usize| edge_ends[e][0].1 == 2;
    let first = (0..m).find(|&e| starts_arc(e)).unwrap_or(0);
    let mut arcs: Vec<Arc> = Vec::new();
    let mut edge_arc = vec![0; m];
    for k in 0..m {
        let e = (first + k) % m;
        if starts_arc(e) {
            arcs.push(Arc { edges: Vec::new() });
        }
        edge_arc[e] = arcs.len() - 1;
        arcs.last_mut().unwrap().edges.push(e);
    }
    debug_assert_eq!(arcs.len(), crossings.len());
    (arcs, edge_arc)
}

/// Names in the builtin table, in table order.
pub fn builtin_names() -> Vec<String> {
    table_lines(KNOT_TABLE).map(|(name, _)| name.to_string()).collect()
}

pub fn builtin_knot(name: &str) -> Result<KnotDiagram, Error> {
    lookup_knot(KNOT_TABLE, name)
}

/// Parses a whole knot table: `name PD` per line, `#` comments, and a bare
/// `unknot` line for the zero-crossing knot.
pub fn parse_knot_table(text: &str) -> Result<Vec<(String, KnotDiagram)>, Error> {
    table_lines(text)
        .map(|(name, pd)| {
            let d = if pd.is_empty() { KnotDiagram::unknot() } else { KnotDiagram::parse_pd(pd)? };
            Ok((name.to_string(), d))
        })
        .collect()
}

pub fn lookup_knot(table: &str, name: &str) -> Result<KnotDiagram, Error> {
    match table_lines(table).find(|(n, _)| *n == name) {
        Some((_, "")) => Ok(KnotDiagram::unknot()),
        Some((_, pd)) => KnotDiagram::parse_pd(pd),
        None => Err(Error::UnknownKnot(name.to_string())),
    }
}

fn table_lines(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(|l| match l.split_once(char::is_whitespace) {
        Some((name, pd)) => (name, pd.trim()),
        None => (l, ""),
    })
}
