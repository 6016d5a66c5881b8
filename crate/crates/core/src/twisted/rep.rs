//! Integer matrix representations of knot groups, given on arc generators.
//!
//! With meridians read off the faces as in the Dehn presentation, the
//! relation at a crossing of sign `s` is `out = over^-s * in * over^s`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::knot::KnotDiagram;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix { n, entries: vec![0; n * n] };
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidRepresentation(format!("{n} rows of unequal or wrong length")));
        }
        Ok(IntMatrix { n, entries: rows.iter().flatten().copied().collect() })
    }

    /// Permutation matrix sending basis vector `e_x` to `e_{perm[x]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = IntMatrix { n, entries: vec![0; n * n] };
        for (x, &y) in perm.iter().enumerate() {
            m.entries[y * n + x] = 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        if self.n != rhs.n {
            return None;
        }
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = a.checked_mul(rhs.entries[k * n + j])?;
                    out[i * n + j] = out[i * n + j].checked_add(v)?;
                }
            }
        }
        Some(IntMatrix { n, entries: out })
    }

    /// Inverse over the integers, when the determinant is `±1`.
    pub fn inverse(&self) -> Option<IntMatrix> {
        let n = self.n;
        let mut a: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j) as i128).collect()).collect();
        let mut b: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
        let sub = |x: &mut Vec<Vec<i128>>, i: usize, k: usize, q: i128| -> Option<()> {
            for j in 0..n {
                let v = x[k][j].checked_mul(q)?;
                x[i][j] = x[i][j].checked_sub(v)?;
            }
            Some(())
        };
        for k in 0..n {
            loop {
                let pivot = (k..n).filter(|&r| a[r][k] != 0).min_by_key(|&r| a[r][k].abs())?;
                a.swap(k, pivot);
                b.swap(k, pivot);
                let mut done = true;
                for i in k + 1..n {
                    if a[i][k] != 0 {
                        let q = a[i][k] / a[k][k];
                        sub(&mut a, i, k, q)?;
                        sub(&mut b, i, k, q)?;
                        done &= a[i][k] == 0;
                    }
                }
                if done {
                    break;
                }
            }
            if a[k][k].abs() != 1 {
                return None;
            }
        }
        for k in (0..n).rev() {
            if a[k][k] == -1 {
                for j in 0..n {
                    a[k][j] = -a[k][j];
                    b[k][j] = -b[k][j];
                }
            }
            for i in 0..k {
                let q = a[i][k];
                if q != 0 {
                    sub(&mut a, i, k, q)?;
                    sub(&mut b, i, k, q)?;
                }
            }
        }
        let entries = b.into_iter().flatten().map(i64::try_from).collect::<Result<Vec<_>, _>>().ok()?;
        Some(IntMatrix { n, entries })
    }

    pub fn is_unimodular(&self) -> bool {
        self.inverse().is_some()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.chunks(self.n.max(1))).finish()
    }
}

/// One invertible integer matrix per arc of a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dim: usize,
    images: Vec<IntMatrix>,
}

impl Representation {
    /// Checks shapes and unimodularity; Wirtinger compatibility is checked
    /// separately by [`verify_representation`].
    pub fn new(dim: usize, images: Vec<IntMatrix>) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidRepresentation("dimension must be positive".into()));
        }
        for (a, m) in images.iter().enumerate() {
            if m.dim() != dim {
                return Err(Error::InvalidRepresentation(format!("arc {a}: image is {0}x{0}, expected {dim}x{dim}", m.dim())));
            }
            if !m.is_unimodular() {
                return Err(Error::InvalidRepresentation(format!("arc {a}: determinant is not +1 or -1")));
            }
        }
        Ok(Representation { dim, images })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[IntMatrix] {
        &self.images
    }

    pub fn image(&self, arc: usize) -> &IntMatrix {
        &self.images[arc]
    }

    /// `P * rho(a) * P^-1` for every arc.
    pub fn conjugated(&self, p: &IntMatrix) -> Result<Self, Error> {
        let inv = p.inverse().ok_or_else(|| Error::InvalidRepresentation("conjugating matrix is not unimodular".into()))?;
        let overflow = || Error::InvalidRepresentation("integer overflow while conjugating".into());
        let images = self
            .images
            .iter()
            .map(|m| p.checked_mul(m).and_then(|pm| pm.checked_mul(&inv)).ok_or_else(overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Representation::new(self.dim, images)
    }
}

/// Reads the text form: a `dim n` line, then for every arc an `arc <id>`
/// line followed by `n` rows of `n` integers. Blank lines and `#` comments
/// are ignored; every id from 0 up must appear exactly once.
pub fn parse_representation(text: &str) -> Result<Representation, Error> {
    let bad = |line: usize, msg: &str| Error::MalformedInput(format!("line {line}: {msg}"));
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (k, first) = lines.next().ok_or_else(|| bad(1, "empty representation"))?;
    let dim: usize = match first.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", n] => n.parse().map_err(|_| bad(k, "dimension is not a number"))?,
        _ => return Err(bad(k, "expected 'dim <n>'")),
    };
    if dim == 0 {
        return Err(bad(k, "dimension must be positive"));
    }
    let mut images: Vec<Option<IntMatrix>> = Vec::new();
    while let Some((k, header)) = lines.next() {
        let id: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["arc", id] => id.parse().map_err(|_| bad(k, "arc id is not a number"))?,
            _ => return Err(bad(k, "expected 'arc <id>'")),
        };
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (k, row) = lines.next().ok_or_else(|| bad(k, "matrix is cut short"))?;
            let row: Vec<i64> = row
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| bad(k, "entry is not an integer")))
                .collect::<Result<_, _>>()?;
            if row.len() != dim {
                return Err(bad(k, &format!("row has {} entries, expected {dim}", row.len())));
            }
            rows.push(row);
        }
        if images.len() <= id {
            images.resize(id + 1, None);
        }
        if images[id].is_some() {
            return Err(bad(k, &format!("arc {id} given twice")));
        }
        images[id] = Some(IntMatrix::from_rows(&rows)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(a, m)| m.ok_or_else(|| Error::MalformedInput(format!("arc {a} has no matrix"))))
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(dim, images)
}

impl fmt::Display for Representation {
    /// The text form read by [`parse_representation`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for (a, m) in self.images.iter().enumerate() {
            writeln!(f, "arc {a}")?;
            for row in m.rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
                writeln!(f, "{}", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

pub fn trivial_rep(d: &KnotDiagram) -> Representation {
    Representation { dim: 1, images: vec![IntMatrix::identity(1); d.arcs().len()] }
}

/// Whether every crossing relation holds as a matrix identity.
pub fn verify_representation(d: &KnotDiagram, rho: &Representation) -> bool {
    if rho.images.len() != d.arcs().len() {
        return false;
    }
    d.wirtinger_relations().iter().all(|r| {
        let (over, inc, out) = (&rho.images[r.over], &rho.images[r.incoming], &rho.images[r.outgoing]);
        // s = +1: over * out = in * over;  s = -1: out * over = over * in
        let (lhs, rhs) = if r.sign > 0 {
            (over.checked_mul(out), inc.checked_mul(over))
        } else {
            (out.checked_mul(over), over.checked_mul(inc))
        };
        matches!((lhs, rhs), (Some(a), Some(b)) if a == b)
    })
}

fn coloring_holds(d: &KnotDiagram, p: u64, colors: &[u64]) -> bool {
    d.wirtinger_relations()
        .iter()
        .all(|r| (2 * colors[r.over]) % p == (colors[r.incoming] + colors[r.outgoing]) % p)
}

/// Dihedral representation of a Fox `p`-coloring: an arc of color `c` acts
/// on `Z/p` by the reflection `x -> 2c - x`.
pub fn builtin_coloring_rep(d: &KnotDiagram, p: u64, colors: &[u64]) -> Result<Representation, Error> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidColoring(format!("modulus {p} must be an odd integer of at least 3")));
    }
    if colors.len() != d.arcs().len() {
        return Err(Error::InvalidColoring(format!("{} colors given for {} arcs", colors.len(), d.arcs().len())));
    }
    let colors: Vec<u64> = colors.iter().map(|c| c % p).collect();
    if colors.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::InvalidColoring("coloring is constant".into()));
    }
    if !coloring_holds(d, p, &colors) {
        return Err(Error::InvalidColoring("2 * over = in + out fails at some crossing".into()));
    }
    let images = colors
        .iter()
        .map(|&c| {
            let perm: Vec<usize> = (0..p).map(|x| ((2 * c + p - x) % p) as usize).collect();
            IntMatrix::permutation(&perm)
        })
        .collect();
    Representation::new(p as usize, images)
}

/// First non-constant `p`-coloring in lexicographic order with arc 0
/// colored 0, if any.
pub fn find_coloring(d: &KnotDiagram, p: u64) -> Option<Vec<u64>> {
    let arcs = d.arcs().len();
    if arcs < 2 || p < 3 {
        return None;
    }
    let relations = d.wirtinger_relations();
    let mut colors = vec![0u64; arcs];
    // relations whose largest arc is `a` are checked once `a` is colored
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); arcs];
    for (k, r) in relations.iter().enumerate() {
        due[r.over.max(r.incoming).max(r.outgoing)].push(k);
    }
    fn extend(
        a: usize,
        p: u64,
        colors: &mut Vec<u64>,
        due: &[Vec<usize>],
        rel: &[crate::knot::WirtingerRelation],
    ) -> bool {
        if a == colors.len() {
            return colors.iter().any(|&c| c != colors[0]);
        }
        for c in 0..p {
            colors[a] = c;
            let ok = due[a]
                .iter()
                .all(|&k| (2 * colors[rel[k].over]) % p == (colors[rel[k].incoming] + colors[rel[k].outgoing]) % p);
            if ok && extend(a + 1, p, colors, due, rel) {
                return true;
            }
        }
        false
    }
    let ok = due[0].iter().all(|&k| {
        let r = &relations[k];
        (2 * colors[r.over]) % p == (colors[r.incoming] + colors[r.outgoing]) % p
    });
    if ok && extend(1, p, &mut colors, &due, &relations) {
        Some(colors)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::builtin_knot;

    #[test]
    fn inverse_of_unimodular_matrices() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.checked_mul(&inv).unwrap(), IntMatrix::identity(2));
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![3, 0, 1], vec![2, 5, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.checked_mul(&m).unwrap(), IntMatrix::identity(3));
        assert!(IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap().inverse().is_none());
        assert!(IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap().inverse().is_none());
    }

    #[test]
    fn rejects_bad_images() {
        let singular = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(Representation::new(2, vec![singular]), Err(Error::InvalidRepresentation(_))));
        assert!(matches!(Representation::new(3, vec![IntMatrix::identity(2)]), Err(Error::InvalidRepresentation(_))));
        assert!(IntMatrix::from_rows(&[vec![1, 2, 3], vec![1, 2, 3]]).is_err());
    }

    #[test]
    fn trefoil_three_coloring() {
        let d = builtin_knot("trefoil").unwrap();
        let rho = builtin_coloring_rep(&d, 3, &[0, 1, 2]).unwrap();
        assert!(verify_representation(&d, &rho));
        assert!(verify_representation(&d, &trivial_rep(&d)));
        assert!(matches!(builtin_coloring_rep(&d, 3, &[1, 1, 1]), Err(Error::InvalidColoring(_))));
        assert!(matches!(builtin_coloring_rep(&d, 5, &[0, 1, 2]), Err(Error::InvalidColoring(_))));
        assert!(matches!(builtin_coloring_rep(&d, 4, &[0, 1, 2]), Err(Error::InvalidColoring(_))));
    }

    #[test]
    fn figure_eight_five_coloring() {
        let d = builtin_knot("figure8").unwrap();
        assert_eq!(find_coloring(&d, 3), None);
        let colors = find_coloring(&d, 5).unwrap();
        let rho = builtin_coloring_rep(&d, 5, &colors).unwrap();
        assert_eq!(rho.dim(), 5);
        assert!(verify_representation(&d, &rho));
    }

    #[test]
    fn swapped_images_break_a_relation() {
        let d = builtin_knot("figure8").unwrap();
        let colors = find_coloring(&d, 5).unwrap();
        let rho = builtin_coloring_rep(&d, 5, &colors).unwrap();
        let (i, j) = (0..colors.len())
            .flat_map(|i| (i + 1..colors.len()).map(move |j| (i, j)))
            .find(|&(i, j)| colors[i] != colors[j])
            .unwrap();
        let mut images = rho.images().to_vec();
        images.swap(i, j);
        assert!(!verify_representation(&d, &Representation::new(5, images).unwrap()));
    }

    #[test]
    fn text_form_round_trips() {
        let d = builtin_knot("trefoil").unwrap();
        let rho = builtin_coloring_rep(&d, 3, &[0, 1, 2]).unwrap();
        let text = rho.to_string();
        assert!(text.starts_with("dim 3\narc 0\n"));
        assert_eq!(parse_representation(&text).unwrap(), rho);
    }

    #[test]
    fn text_form_rejections() {
        let cases = [
            "",
            "dim 0",
            "dim 2\narc 0\n1 0\n0",
            "dim 2\narc 0\n1 0 0\n0 1",
            "dim 2\narc 1\n1 0\n0 1",
            "dim 2\narc 0\n1 0\n0 1\narc 0\n1 0\n0 1",
            "dim 2\narc 0\n2 0\n0 1",
            "dimension 2",
        ];
        for text in cases {
            assert!(parse_representation(text).is_err(), "{text:?}");
        }
        assert!(matches!(
            parse_representation("dim 2\narc 0\n2 0\n0 1"),
            Err(Error::InvalidRepresentation(_))
        ));
    }
}
