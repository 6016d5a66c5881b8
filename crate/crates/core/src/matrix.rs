//! Dense matrices over [`LaurentPoly`] with exact determinant and permanent.
//!
//! The determinant first eliminates along unit pivots (`±t^k`), which never
//! needs division and keeps the sparse gadget matrices sparse. Whatever is
//! left is handled by memoized cofactor expansion (dimension up to 8) or
//! fraction-free Bareiss elimination.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::laurent::LaurentPoly;

const COFACTOR_LIMIT: usize = 8;
const RYSER_LIMIT: usize = 10;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LPMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LPMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LPMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        LPMatrix { rows, cols, entries }
    }

    /// Integer matrix given row by row.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(rows.len(), cols, |i, j| LaurentPoly::constant(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(LPMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: &LaurentPoly) {
        self.entries[i * self.cols + j] += value;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale_row(&mut self, i: usize, by: &LaurentPoly) {
        for j in 0..self.cols {
            let v = self.get(i, j) * by;
            self.set(i, j, v);
        }
    }

    pub fn scale_col(&mut self, j: usize, by: &LaurentPoly) {
        for i in 0..self.rows {
            let v = self.get(i, j) * by;
            self.set(i, j, v);
        }
    }

    /// Copy with the listed columns removed.
    pub fn without_columns(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|j| !drop.contains(j)).collect();
        Self::from_fn(self.rows, keep.len(), |i, j| self.get(i, keep[j]).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn mul(&self, rhs: &LPMatrix) -> Result<LPMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = LPMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<(), Error> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<LaurentPoly, Error> {
        self.require_square()?;
        let (factor, rest) = match unit_pivot_reduce(self) {
            Some(reduced) => reduced,
            None => return Ok(LaurentPoly::zero()),
        };
        if rest.rows == 0 {
            return Ok(factor);
        }
        let tail = if rest.rows <= COFACTOR_LIMIT { rest.det_cofactor() } else { rest.det_bareiss() };
        Ok(&factor * &tail)
    }

    /// Laplace expansion along rows with the minors memoized by column set.
    pub fn det_cofactor(&self) -> LaurentPoly {
        assert!(self.is_square() && self.rows < 64);
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        // minors[mask] = det of the last popcount(mask) rows restricted to the columns in mask
        let mut minors: BTreeMap<u64, LaurentPoly> = BTreeMap::new();
        minors.insert(0, LaurentPoly::one());
        let mut layer: Vec<u64> = vec![0];
        for depth in 1..=n {
            let row = n - depth;
            let mut next: BTreeMap<u64, ()> = BTreeMap::new();
            for &mask in &layer {
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        next.insert(mask | (1 << j), ());
                    }
                }
            }
            for &mask in next.keys() {
                let mut acc = LaurentPoly::zero();
                for (pos, j) in (0..n).filter(|j| mask & (1 << j) != 0).enumerate() {
                    let a = self.get(row, j);
                    if a.is_zero() {
                        continue;
                    }
                    let minor = &minors[&(mask & !(1 << j))];
                    if minor.is_zero() {
                        continue;
                    }
                    if pos % 2 == 0 {
                        acc.add_mul(a, minor);
                    } else {
                        acc.add_mul(&-a, minor);
                    }
                }
                minors.insert(mask, acc);
            }
            layer = next.into_keys().collect();
        }
        minors.remove(&((1u64 << n) - 1)).unwrap()
    }

    /// Fraction-free Bareiss elimination. Each row is first multiplied by the
    /// power of `t` that makes it a polynomial; the extracted unit is restored
    /// at the end.
    pub fn det_bareiss(&self) -> LaurentPoly {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut shift_total = 0i32;
        let mut a: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for i in 0..n {
            let low = self.row(i).iter().filter_map(|e| e.low_degree()).min();
            let Some(low) = low else {
                return LaurentPoly::zero();
            };
            shift_total += low;
            a.push(self.row(i).iter().map(|e| e.shift(-low)).collect());
        }
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return LaurentPoly::zero();
                };
                a.swap(k, swap);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let mut v = &a[i][j] * &a[k][k];
                    if !a[i][k].is_zero() && !a[k][j].is_zero() {
                        v -= &(&a[i][k] * &a[k][j]);
                    }
                    a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].shift(shift_total);
        if negate {
            -det
        } else {
            det
        }
    }

    /// Exact permanent.
    pub fn perm(&self) -> Result<LaurentPoly, Error> {
        self.require_square()?;
        if self.rows <= RYSER_LIMIT {
            Ok(self.perm_ryser())
        } else {
            Ok(self.perm_sparse())
        }
    }

    /// Ryser's inclusion–exclusion formula, walking column subsets in Gray
    /// code order so each step updates the row sums by one column.
    pub fn perm_ryser(&self) -> LaurentPoly {
        assert!(self.is_square() && self.rows < 32);
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut row_sums = vec![LaurentPoly::zero(); n];
        let mut total = LaurentPoly::zero();
        let mut subset: u64 = 0;
        for g in 1u64..(1u64 << n) {
            let j = g.trailing_zeros() as usize;
            let adding = subset & (1 << j) == 0;
            subset ^= 1 << j;
            for (i, s) in row_sums.iter_mut().enumerate() {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                if adding {
                    *s += a;
                } else {
                    *s -= a;
                }
            }
            if row_sums.iter().any(|s| s.is_zero()) {
                continue;
            }
            let mut prod = row_sums[0].clone();
            for s in &row_sums[1..] {
                prod = &prod * s;
            }
            if (n - subset.count_ones() as usize) % 2 == 0 {
                total += &prod;
            } else {
                total -= &prod;
            }
        }
        total
    }

    /// Row-by-row dynamic program over the set of columns already used.
    pub fn perm_sparse(&self) -> LaurentPoly {
        assert!(self.is_square());
        let n = self.rows;
        let rows: Vec<Vec<(usize, &LaurentPoly)>> = (0..n)
            .map(|i| (0..n).filter(|&j| !self.get(i, j).is_zero()).map(|j| (j, self.get(i, j))).collect())
            .collect();
        sparse_permanent(n, &rows)
    }
}

/// Permanent of a square matrix given as sparse rows, where a row may list
/// the same column more than once (each listing is a separate choice). A
/// column leaves the state once its last row is processed, so the state
/// space is bounded by the column frontier of the row order.
pub(crate) fn sparse_permanent(ncols: usize, rows: &[Vec<(usize, &LaurentPoly)>]) -> LaurentPoly {
    let n = rows.len();
    if n != ncols {
        return LaurentPoly::zero();
    }
    let support: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| {
            let mut cols: Vec<usize> = r.iter().map(|&(j, _)| j).collect();
            cols.sort_unstable();
            cols.dedup();
            cols
        })
        .collect();
    let order = frontier_order(&support, ncols);
    let mut last_row = vec![usize::MAX; ncols];
    for (step, &i) in order.iter().enumerate() {
        for &j in &support[i] {
            last_row[j] = step;
        }
    }
    if last_row.iter().any(|&s| s == usize::MAX) {
        return LaurentPoly::zero();
    }
    let words = ncols.div_ceil(64).max(1);
    let mut states: BTreeMap<Vec<u64>, LaurentPoly> = BTreeMap::new();
    states.insert(vec![0; words], LaurentPoly::one());
    for (step, &i) in order.iter().enumerate() {
        let closing: Vec<usize> = support[i].iter().copied().filter(|&j| last_row[j] == step).collect();
        let mut next: BTreeMap<Vec<u64>, LaurentPoly> = BTreeMap::new();
        for (used, weight) in &states {
            for &(j, w) in &rows[i] {
                if used[j / 64] & (1 << (j % 64)) != 0 {
                    continue;
                }
                let mut key = used.clone();
                key[j / 64] |= 1 << (j % 64);
                if closing.iter().any(|&c| key[c / 64] & (1 << (c % 64)) == 0) {
                    continue;
                }
                for &c in &closing {
                    key[c / 64] &= !(1 << (c % 64));
                }
                next.entry(key).or_default().add_mul(weight, w);
            }
        }
        next.retain(|_, w| !w.is_zero());
        states = next;
        if states.is_empty() {
            return LaurentPoly::zero();
        }
    }
    states.into_values().next().unwrap_or_default()
}

/// Greedy row order keeping the set of open columns small: always take the
/// row that opens the fewest new columns, preferring rows that close some.
pub(crate) fn frontier_order(support: &[Vec<usize>], ncols: usize) -> Vec<usize> {
    let n = support.len();
    let mut remaining_in_col = vec![0usize; ncols];
    for row in support {
        for &j in row {
            remaining_in_col[j] += 1;
        }
    }
    let mut opened = vec![false; ncols];
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, (usize, isize, usize))> = None;
        for i in (0..n).filter(|&i| !done[i]) {
            let new_cols = support[i].iter().filter(|&&j| !opened[j]).count();
            let closes = support[i].iter().filter(|&&j| remaining_in_col[j] == 1).count() as isize;
            let key = (new_cols, -closes, i);
            if best.is_none_or(|(_, b)| key < b) {
                best = Some((i, key));
            }
        }
        let (i, _) = best.unwrap();
        done[i] = true;
        for &j in &support[i] {
            opened[j] = true;
            remaining_in_col[j] -= 1;
        }
        order.push(i);
    }
    order
}

/// Eliminates along unit pivots until none remain. Returns the accumulated
/// factor and the reduced dense matrix, or `None` when the determinant is
/// visibly zero (an empty row or column).
fn unit_pivot_reduce(m: &LPMatrix) -> Option<(LaurentPoly, LPMatrix)> {
    let n = m.rows;
    let mut rows: Vec<BTreeMap<usize, LaurentPoly>> = (0..n)
        .map(|i| (0..n).filter(|&j| !m.get(i, j).is_zero()).map(|j| (j, m.get(i, j).clone())).collect())
        .collect();
    let mut col_rows: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for &j in r.keys() {
            col_rows[j].insert(i, ());
        }
    }
    let mut row_alive = vec![true; n];
    let mut col_alive = vec![true; n];
    let mut factor = LaurentPoly::one();
    loop {
        if (0..n).any(|i| row_alive[i] && rows[i].is_empty()) || (0..n).any(|j| col_alive[j] && col_rows[j].is_empty())
        {
            return None;
        }
        let mut best: Option<(usize, usize, usize)> = None;
        for i in (0..n).filter(|&i| row_alive[i]) {
            for (&j, v) in &rows[i] {
                if !v.is_unit() {
                    continue;
                }
                let cost = (rows[i].len() - 1) * (col_rows[j].len() - 1);
                if best.is_none_or(|(_, _, c)| cost < c) {
                    best = Some((i, j, cost));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        let pivot = rows[pi][&pj].clone();
        let inv = pivot.unit_inverse().unwrap();
        let rank_i = (0..pi).filter(|&i| row_alive[i]).count();
        let rank_j = (0..pj).filter(|&j| col_alive[j]).count();
        factor = &factor * &pivot;
        if (rank_i + rank_j) % 2 == 1 {
            factor = -factor;
        }
        let pivot_row: Vec<(usize, LaurentPoly)> =
            rows[pi].iter().filter(|(&j, _)| j != pj).map(|(&j, v)| (j, v.clone())).collect();
        let targets: Vec<usize> = col_rows[pj].keys().copied().filter(|&k| k != pi).collect();
        for k in targets {
            let coef = &rows[k].remove(&pj).unwrap() * &inv;
            for (j, v) in &pivot_row {
                let entry = rows[k].entry(*j).or_default();
                entry.add_mul(&-&coef, v);
                if entry.is_zero() {
                    rows[k].remove(j);
                    col_rows[*j].remove(&k);
                } else {
                    col_rows[*j].insert(k, ());
                }
            }
        }
        for (j, _) in &pivot_row {
            col_rows[*j].remove(&pi);
        }
        rows[pi].clear();
        col_rows[pj].clear();
        row_alive[pi] = false;
        col_alive[pj] = false;
    }
    let live_rows: Vec<usize> = (0..n).filter(|&i| row_alive[i]).collect();
    let live_cols: Vec<usize> = (0..n).filter(|&j| col_alive[j]).collect();
    let rest = LPMatrix::from_fn(live_rows.len(), live_cols.len(), |i, j| {
        rows[live_rows[i]].get(&live_cols[j]).cloned().unwrap_or_default()
    });
    Some((factor, rest))
}

impl fmt::Debug for LPMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LPMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            f.write_str("  ")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("\n")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> LPMatrix {
        LPMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    /// Leibniz formula over all permutations, used as the oracle here.
    fn leibniz(m: &LPMatrix, signed: bool) -> LaurentPoly {
        fn rec(m: &LPMatrix, row: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, signed: bool, acc: &mut LaurentPoly) {
            let n = m.rows();
            if row == n {
                let mut prod = LaurentPoly::one();
                for (i, &j) in perm.iter().enumerate() {
                    prod = &prod * m.get(i, j);
                }
                let inversions = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
                if signed && inversions % 2 == 1 {
                    *acc -= &prod;
                } else {
                    *acc += &prod;
                }
                return;
            }
            for j in 0..n {
                if !used[j] {
                    used[j] = true;
                    perm.push(j);
                    rec(m, row + 1, used, perm, signed, acc);
                    perm.pop();
                    used[j] = false;
                }
            }
        }
        let mut acc = LaurentPoly::zero();
        rec(m, 0, &mut vec![false; m.rows()], &mut Vec::new(), signed, &mut acc);
        acc
    }

    #[test]
    fn small_determinants() {
        assert_eq!(mat(&[&["t^2 - 3"]]).det().unwrap(), p("t^2 - 3"));
        assert_eq!(mat(&[&["t", "1"], &["1", "t"]]).det().unwrap(), p("t^2 - 1"));
        assert_eq!(LPMatrix::zeros(0, 0).det().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn non_square_is_rejected() {
        assert_eq!(LPMatrix::zeros(2, 3).det(), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert_eq!(LPMatrix::zeros(2, 3).perm(), Err(Error::NotSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn small_permanents() {
        assert_eq!(mat(&[&["1", "1"], &["1", "1"]]).perm().unwrap(), p("2"));
        assert_eq!(mat(&[&["t", "0"], &["0", "t"]]).perm().unwrap(), p("t^2"));
    }

    #[test]
    fn all_det_routes_agree_with_leibniz() {
        let m = mat(&[
            &["t", "2", "0", "t^-1", "1"],
            &["1 + t", "0", "3", "0", "t"],
            &["0", "t^2", "-1 + t", "2", "0"],
            &["2", "0", "t", "t - 1", "3"],
            &["t", "1", "0", "0", "2t"],
        ]);
        let oracle = leibniz(&m, true);
        assert_eq!(m.det().unwrap(), oracle);
        assert_eq!(m.det_cofactor(), oracle);
        assert_eq!(m.det_bareiss(), oracle);
        let perm = leibniz(&m, false);
        assert_eq!(m.perm_ryser(), perm);
        assert_eq!(m.perm_sparse(), perm);
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        let m = mat(&[&["0", "t", "2"], &["t", "0", "1"], &["3", "1", "0"]]);
        assert_eq!(m.det_bareiss(), leibniz(&m, true));
        let singular = mat(&[&["t", "1"], &["t^2", "t"]]);
        assert!(singular.det().unwrap().is_zero());
        assert!(singular.det_bareiss().is_zero());
    }
}
