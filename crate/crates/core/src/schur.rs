//! Schur polynomials written in the elementary symmetric polynomials, and the
//! rectangle of shapes indexing the Schur basis of top-degree cohomology.

use std::fmt;

use crate::algebra::matrix::permutations_with_sign;
use crate::algebra::rational::int;
use crate::algebra::symmetric::elementary_symmetric;
use crate::algebra::{Monomial, MultiPoly, Vars};
use crate::error::{Error, Result};

/// A Young diagram given by weakly decreasing row lengths; zero rows are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungShape(Vec<usize>);

impl YoungShape {
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("rows {rows:?} are not weakly decreasing")));
        }
        while rows.last() == Some(&0) {
            rows.pop();
        }
        Ok(YoungShape(rows))
    }

    pub fn empty() -> Self {
        YoungShape(Vec::new())
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row `i`, zero past the last row.
    pub fn row(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }
}

impl fmt::Display for YoungShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `s_μ(x_1..x_r)` as a sum over semistandard tableaux with entries in `1..=r`.
pub fn schur_by_tableaux(mu: &YoungShape, x: &Vars) -> MultiPoly {
    let r = x.len();
    let cells: Vec<(usize, usize)> = mu.rows().iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |j| (i, j))).collect();
    let mut filling = vec![vec![0usize; mu.row(0)]; mu.len()];
    let mut out = MultiPoly::zero(x);

    fn rec(idx: usize, cells: &[(usize, usize)], filling: &mut Vec<Vec<usize>>, r: usize, out: &mut MultiPoly) {
        if idx == cells.len() {
            let mut e = vec![0u32; r];
            for row in filling.iter() {
                for &v in row {
                    if v > 0 {
                        e[v - 1] += 1;
                    }
                }
            }
            out.add_term(Monomial(e.into_iter().collect()), int(1));
            return;
        }
        let (i, j) = cells[idx];
        // Rows weakly increase, columns strictly increase.
        let lo_row = if j > 0 { filling[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { filling[i - 1][j] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=r {
            filling[i][j] = v;
            rec(idx + 1, cells, filling, r, out);
        }
        filling[i][j] = 0;
    }

    if mu.len() > r {
        return out;
    }
    rec(0, &cells, &mut filling, r, &mut out);
    out
}

/// Rewrites a symmetric polynomial in `x` as a polynomial in `y_i = e_i(x)` by
/// repeatedly cancelling the leading monomial `x^a` with
/// `e_1^{a_1−a_2} ⋯ e_r^{a_r}`. Fails if the input is not symmetric.
pub fn symmetric_to_elementary(p: &MultiPoly, y: &Vars) -> Result<MultiPoly> {
    let x = p.vars().clone();
    let r = x.len();
    assert_eq!(y.len(), r);
    let e = elementary_symmetric(&x);
    let mut rest = p.clone();
    let mut out = MultiPoly::zero(y);
    while let Some((m, c)) = rest.leading_term() {
        let a = m.exps().to_vec();
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("polynomial is not symmetric".into()));
        }
        let c = c.clone();
        let ey: Vec<u32> = (0..r).map(|i| a[i] - a.get(i + 1).copied().unwrap_or(0)).collect();
        let mut prod = MultiPoly::constant(&x, c.clone());
        for (i, &k) in ey.iter().enumerate() {
            if k > 0 {
                prod = &prod * &e[i + 1].pow(k);
            }
        }
        rest = &rest - &prod;
        out.add_term(Monomial(ey.into_iter().collect()), c);
    }
    Ok(out)
}

/// `S_μ(y)` with `S_μ(e(x)) = s_μ(x)`, in variables `y1..yr`.
pub fn schur_in_elementary(mu: &YoungShape, r: usize) -> MultiPoly {
    let x = Vars::indexed("x", r);
    let s = schur_by_tableaux(mu, &x);
    symmetric_to_elementary(&s, &Vars::indexed("y", r)).expect("Schur polynomials are symmetric")
}

/// `det(x_i^{μ_j + r − j}) / det(x_i^{r − j})`, by exact division.
pub fn bialternant(mu: &YoungShape, x: &Vars) -> MultiPoly {
    let r = x.len();
    if mu.len() > r {
        return MultiPoly::zero(x);
    }
    let alt = |shift: &dyn Fn(usize) -> u32| -> MultiPoly {
        let mut out = MultiPoly::zero(x);
        for (perm, sign) in permutations_with_sign(r) {
            let e: Vec<u32> = (0..r).map(|i| shift(perm[i])).collect();
            out.add_term(Monomial(e.into_iter().collect()), int(sign));
        }
        out
    };
    let num = alt(&|j| (mu.row(j) + r - 1 - j) as u32);
    let den = alt(&|j| (r - 1 - j) as u32);
    num.div_exact(&den).expect("the Vandermonde determinant divides every alternant")
}

/// All shapes inside the `rows × cols` rectangle, by weight and then
/// descending lexicographic order.
pub fn shapes_in_box(rows: usize, cols: usize) -> Vec<YoungShape> {
    let mut out = Vec::new();
    fn rec(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungShape>) {
        if cur.len() == rows {
            out.push(YoungShape::new(cur.clone()).unwrap());
            return;
        }
        for v in (0..=max).rev() {
            cur.push(v);
            rec(rows, v, cur, out);
            cur.pop();
        }
    }
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| b.rows().cmp(a.rows())));
    out
}

/// A Schur basis element `S_μ(y) dy_1 ∧ ⋯ ∧ dy_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurForm {
    pub shape: YoungShape,
    pub coefficient: MultiPoly,
}

/// Shapes in the `r × (N − r − 2)` rectangle with their `S_μ(y)`.
pub fn schur_basis(n: usize, r: usize) -> Result<Vec<SchurForm>> {
    if r == 0 || n < r + 2 {
        return Err(Error::Invalid(format!("need 1 ≤ r ≤ N − 2, got N = {n}, r = {r}")));
    }
    Ok(shapes_in_box(r, n - r - 2)
        .into_iter()
        .map(|shape| {
            let coefficient = schur_in_elementary(&shape, r);
            SchurForm { shape, coefficient }
        })
        .collect())
}

/// `true` when `S_μ(e(x))` agrees with the bialternant.
pub fn schur_routes_agree(mu: &YoungShape, r: usize) -> bool {
    let x = Vars::indexed("x", r);
    let s = schur_in_elementary(mu, r);
    crate::algebra::symmetric::elem_sym_substitute(&s, &x) == bialternant(mu, &x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::binomial;
    use crate::algebra::rational::ExactScalar;

    fn sh(v: &[usize]) -> YoungShape {
        YoungShape::new(v.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let y2 = Vars::indexed("y", 2);
        assert_eq!(schur_in_elementary(&sh(&[1]), 2), MultiPoly::parse("y1", &y2).unwrap());
        assert_eq!(schur_in_elementary(&sh(&[1, 1]), 2), MultiPoly::parse("y2", &y2).unwrap());
        assert_eq!(schur_in_elementary(&sh(&[2]), 2), MultiPoly::parse("y1^2 - y2", &y2).unwrap());
        let x = Vars::indexed("x", 2);
        assert_eq!(bialternant(&sh(&[2]), &x), MultiPoly::parse("x1^2 + x1*x2 + x2^2", &x).unwrap());
    }

    #[test]
    fn routes_agree_in_box() {
        for r in 1..=3 {
            for mu in shapes_in_box(3, 3) {
                assert!(schur_routes_agree(&mu, r), "{mu} r={r}");
            }
        }
    }

    #[test]
    fn basis_counts() {
        let b: Vec<YoungShape> = schur_basis(5, 2).unwrap().into_iter().map(|f| f.shape).collect();
        assert_eq!(b, vec![YoungShape::empty(), sh(&[1]), sh(&[1, 1])]);
        assert_eq!(schur_basis(4, 2).unwrap().len(), 1);
        let b: Vec<YoungShape> = schur_basis(6, 1).unwrap().into_iter().map(|f| f.shape).collect();
        assert_eq!(b, vec![YoungShape::empty(), sh(&[1]), sh(&[2]), sh(&[3])]);
        for n in 3..=8 {
            for r in 1..=n - 2 {
                assert_eq!(ExactScalar::from_integer((schur_basis(n, r).unwrap().len() as i64).into()), binomial((n - 2) as u64, r as u64));
            }
        }
    }
}
