//! Dense exact matrices over the rationals.
//!
//! Elimination runs on an integer copy (each row cleared of denominators) with
//! Bareiss fraction-free updates and largest-magnitude pivoting.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{abs_cmp, denominator_lcm, ExactScalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| ExactScalar::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn from_columns(cols: &[Vec<ExactScalar>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = ExactMatrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExactScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Vec<ExactScalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, c: &ExactScalar) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        let mut m = ExactMatrix::from_rows(rows);
        m.cols = self.cols + other.cols;
        m
    }

    pub fn rank(&self) -> usize {
        Echelon::of(self).pivots.len()
    }

    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<ExactScalar>>) {
        let e = Echelon::of(self);
        (e.pivots.len(), e.nullspace())
    }

    pub fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        Echelon::of(self).nullspace()
    }

    /// Vectors `y` with `yᵀ·self = 0`.
    pub fn left_nullspace(&self) -> Vec<Vec<ExactScalar>> {
        self.transpose().nullspace()
    }

    pub fn det(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return ExactScalar::one();
        }
        let e = Echelon::of(self);
        if e.pivots.len() < n {
            return ExactScalar::zero();
        }
        let last = BigRational::from_integer(e.rows[n - 1][n - 1].clone());
        let scale = e.row_scales.iter().fold(BigInt::one(), |acc, s| acc * s);
        let d = last / BigRational::from_integer(scale);
        if e.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// One solution of `self·x = b`, with free variables set to zero.
    pub fn solve(&self, b: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let col = ExactMatrix::from_columns(&[b.to_vec()]);
        let aug = self.hstack(&col);
        let e = Echelon::of(&aug);
        if e.pivots.iter().any(|&(_, c)| c == self.cols) {
            return Err(Error::Invalid("inconsistent linear system".into()));
        }
        let mut x = vec![ExactScalar::zero(); self.cols];
        e.back_substitute(&mut x, Some(self.cols));
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        if self.rank() < self.rows {
            return Err(Error::Invalid("singular matrix".into()));
        }
        let id = ExactMatrix::identity(self.rows);
        let cols = (0..self.rows).map(|j| self.solve(&id.column(j))).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix::from_columns(&cols))
    }

    /// Determinant-based rank: the largest nonsingular square minor (small matrices only).
    pub fn rank_by_minors(&self) -> usize {
        let k_max = self.rows.min(self.cols);
        for k in (1..=k_max).rev() {
            for rs in combinations(self.rows, k) {
                for cs in combinations(self.cols, k) {
                    let m = self.select_rows(&rs).select_columns(&cs);
                    if !leibniz_det(&m).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }
}

/// Leibniz expansion; used as an independent determinant for small matrices.
pub fn leibniz_det(m: &ExactMatrix) -> ExactScalar {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut total = ExactScalar::zero();
    for (perm, sign) in permutations_with_sign(n) {
        let mut t = ExactScalar::from_integer(sign.into());
        for (i, &j) in perm.iter().enumerate() {
            t *= m.get(i, j);
            if t.is_zero() {
                break;
            }
        }
        total += t;
    }
    total
}

/// All permutations of `0..n` paired with their signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if k == p.len() {
            out.push((p.clone(), sign));
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, if i == k { sign } else { -sign }, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, 1, &mut out);
    out
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Integer row echelon form produced by Bareiss elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    row_scales: Vec<BigInt>,
    pivots: Vec<(usize, usize)>,
    swaps: usize,
    cols: usize,
}

impl Echelon {
    fn of(m: &ExactMatrix) -> Echelon {
        let mut row_scales = Vec::with_capacity(m.rows);
        let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
            .map(|i| {
                let row = m.row(i);
                let l = denominator_lcm(row);
                let r = row.iter().map(|q| q.numer() * (&l / q.denom())).collect();
                row_scales.push(l);
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut swaps = 0;
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .filter(|&i| !rows[i][c].is_zero())
                .max_by(|&a, &b| abs_cmp(&rows[a][c], &rows[b][c]).then(b.cmp(&a)));
            let Some(p) = best else { continue };
            if p != r {
                rows.swap(p, r);
                row_scales.swap(p, r);
                swaps += 1;
            }
            let (top, rest) = rows.split_at_mut(r + 1);
            let pr = &top[r];
            let piv = &pr[c];
            for row in rest.iter_mut() {
                let f = std::mem::take(&mut row[c]);
                for j in c + 1..m.cols {
                    let v = piv * &row[j];
                    let v = if f.is_zero() || pr[j].is_zero() { v } else { v - &f * &pr[j] };
                    row[j] = if prev.is_one() { v } else { v / &prev };
                }
            }
            prev = piv.clone();
            pivots.push((r, c));
            r += 1;
        }
        Echelon { rows, row_scales, pivots, swaps, cols: m.cols }
    }

    /// Fills pivot variables of `x` given its free entries; column `rhs` (if any) is the right-hand side.
    fn back_substitute(&self, x: &mut [ExactScalar], rhs: Option<usize>) {
        for &(r, c) in self.pivots.iter().rev() {
            let row = &self.rows[r];
            let mut acc = match rhs {
                Some(b) => BigRational::from_integer(row[b].clone()),
                None => ExactScalar::zero(),
            };
            for (j, xj) in x.iter().enumerate().skip(c + 1) {
                if !row[j].is_zero() && !xj.is_zero() {
                    acc -= xj * BigRational::from_integer(row[j].clone());
                }
            }
            x[c] = acc / BigRational::from_integer(row[c].clone());
        }
    }

    fn nullspace(&self) -> Vec<Vec<ExactScalar>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|&(_, c)| c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|f| {
                let mut x = vec![ExactScalar::zero(); self.cols];
                x[f] = ExactScalar::one();
                self.back_substitute(&mut x, None);
                x
            })
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals of integer rows known to be sparse; used by the
/// large truncated complexes. Rows are modified in place.
pub fn sparse_rank(rows: Vec<Vec<(usize, BigInt)>>) -> usize {
    SparseEliminator::default().insert_all(rows)
}

/// Incremental rank computation on sparse integer rows.
///
/// Each inserted row is reduced by the stored pivots (fraction-free, with the
/// row divided by its content after every step) and kept if nonzero.
#[derive(Default, Clone)]
pub struct SparseEliminator {
    pivots: std::collections::BTreeMap<usize, Vec<(usize, BigInt)>>,
}

impl SparseEliminator {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn insert_all(&mut self, rows: Vec<Vec<(usize, BigInt)>>) -> usize {
        for r in rows {
            self.insert(r);
        }
        self.rank()
    }

    /// Returns whether the row increased the rank.
    pub fn insert(&mut self, row: Vec<(usize, BigInt)>) -> bool {
        let mut row: Vec<(usize, BigInt)> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        row.sort_by_key(|(c, _)| *c);
        loop {
            let Some((lead, _)) = row.first() else { return false };
            let lead = *lead;
            match self.pivots.get(&lead) {
                None => {
                    normalize_content(&mut row);
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(p) => {
                    row = eliminate(&row, p);
                }
            }
        }
    }
}

fn eliminate(row: &[(usize, BigInt)], piv: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let a = &piv[0].1;
    let b = &row[0].1;
    let g = num_integer::Integer::gcd(a, b);
    let fa = a / &g;
    let fb = b / &g;
    // fa·row − fb·piv, leading entries cancel
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < piv.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = piv.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, &fa * &row[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&fb * &piv[j].1)));
            j += 1;
        } else {
            let v = &fa * &row[i].1 - &fb * &piv[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    normalize_content(&mut out);
    out
}

fn normalize_content(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = num_integer::Integer::gcd(&g, v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -&*v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn rank_examples() {
        let (r, ns) = ExactMatrix::identity(3).rank_nullspace();
        assert_eq!((r, ns.len()), (3, 0));
        let (r, ns) = ExactMatrix::zeros(2, 4).rank_nullspace();
        assert_eq!((r, ns.len()), (0, 4));
        let m = ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let (r, ns) = m.rank_nullspace();
        assert_eq!(r, 1);
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn det_and_solve() {
        let m = ExactMatrix::from_rows(vec![
            vec![rat(1, 2), int(3), int(0)],
            vec![int(2), int(-1), rat(1, 3)],
            vec![int(0), int(4), int(5)],
        ]);
        assert_eq!(m.det(), leibniz_det(&m));
        let b = vec![int(1), int(2), int(3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        let sing = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&[int(1), int(0)]).is_err());
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let m = ExactMatrix::from_i64(&[&[0, 2, 4, 0], &[1, 0, 1, 1], &[1, 2, 5, 1], &[0, 0, 3, 3]]);
        let rows = m
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().enumerate().map(|(j, x)| (j, x.to_integer())).collect())
            .collect();
        assert_eq!(sparse_rank(rows), m.rank());
    }

    #[test]
    fn small_helpers() {
        assert_eq!(combinations(4, 2).len(), 6);
        let perms = permutations_with_sign(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i64>(), 0);
    }
}
