//! The generalized Veronese map `Φ_λ` and the identities relating the
//! `r`-fold symmetric product of a line arrangement to its Veronese image.

use num_traits::Zero;

use crate::algebra::matrix::ExactMatrix;
use crate::algebra::rational::ExactScalar;
use crate::algebra::symmetric::elementary_symmetric;
use crate::algebra::{series_pow, MultiPoly, RatFunc, TruncSeries, Vars};
use crate::error::{Error, Result};
use crate::form::DifferentialForm;
use crate::partition::{generic_witness, Partition, StratumMatrix, Subdiagram};
use crate::theta::{block_linear_forms, theta_rational};

/// Row `i` holds the coefficients of `a(T)^{r−i} b(T)^i mod T^n`, where `a`, `b`
/// are the two rows of `w2` read as truncated series.
pub fn veronese_block(w2: &ExactMatrix, r: usize) -> ExactMatrix {
    assert_eq!(w2.rows(), 2, "source block must have two rows");
    assert!(r >= 1 && w2.cols() >= 1);
    let a = TruncSeries::new(w2.row(0).to_vec());
    let b = TruncSeries::new(w2.row(1).to_vec());
    let a_pows: Vec<_> = (0..=r).map(|e| series_pow(&a, e as u32)).collect();
    let b_pows: Vec<_> = (0..=r).map(|e| series_pow(&b, e as u32)).collect();
    let rows = (0..=r).map(|i| a_pows[r - i].mul(&b_pows[i]).into_coeffs()).collect();
    ExactMatrix::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VeroneseImage {
    pub source: StratumMatrix,
    /// `(r+1) × N`, with the source's partition.
    pub target: ExactMatrix,
    pub r: usize,
}

impl VeroneseImage {
    pub fn partition(&self) -> &Partition {
        self.source.partition()
    }

    /// The image as a stratum point; fails when `r + 1 ≥ N`.
    pub fn target_stratum(&self) -> Result<StratumMatrix> {
        StratumMatrix::new(self.r, self.source.partition().clone(), self.target.clone())
    }

    /// Columns of target block `k`.
    pub fn target_block(&self, k: usize) -> Vec<Vec<ExactScalar>> {
        let off = self.partition().offset(k);
        (0..self.partition().parts()[k]).map(|j| self.target.column(off + j)).collect()
    }

    /// First vanishing maximal minor of the image.
    pub fn stratum_witness(&self) -> Option<Subdiagram> {
        generic_witness(&self.target, self.partition())
    }

    pub fn is_generic_stratum(&self) -> bool {
        self.stratum_witness().is_none()
    }
}

/// `Φ_λ(z)`, block by block.
pub fn veronese_lambda(z: &StratumMatrix, r: usize) -> Result<VeroneseImage> {
    if z.r() != 1 {
        return Err(Error::Invalid("the Veronese map takes a 2-row matrix".into()));
    }
    if r == 0 {
        return Err(Error::Invalid("r must be positive".into()));
    }
    let mut cols = Vec::with_capacity(z.n_total());
    for k in 0..z.partition().len() {
        let img = veronese_block(&z.block_matrix(k), r);
        cols.extend((0..img.cols()).map(|j| img.column(j)));
    }
    Ok(VeroneseImage { source: z.clone(), target: ExactMatrix::from_columns(&cols), r })
}

/// Outcome of an exact identity check; `mismatch` names the first failing coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub mismatch: Option<usize>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// `Σ_j L_j(y) T^j ≡ Π_i Σ_j l_j(x_i) T^j mod T^n` after `y = e(x)`.
pub fn check_generating_identity(z_block: &ExactMatrix, r: usize) -> IdentityCheck {
    let n = z_block.cols();
    let x = Vars::indexed("x", r);
    let y = Vars::indexed("y", r);
    let e = elementary_symmetric(&x);
    let w = veronese_block(z_block, r);
    let big_l = block_linear_forms(&(0..n).map(|j| w.column(j)).collect::<Vec<_>>(), &y);
    let lhs: Vec<MultiPoly> = big_l.iter().map(|l| l.substitute(&e[1..])).collect();

    let line = Vars::new(["x"]);
    let small_l = block_linear_forms(&(0..n).map(|j| z_block.column(j)).collect::<Vec<_>>(), &line);
    let mut rhs = TruncSeries::one(&MultiPoly::zero(&x), n);
    for i in 0..r {
        let image = [MultiPoly::var(&x, i)];
        let s = TruncSeries::new(small_l.iter().map(|l| l.substitute(&image)).collect());
        rhs = rhs.mul(&s);
    }
    IdentityCheck { mismatch: (0..n).find(|&j| lhs[j] != *rhs.coeff(j)) }
}

/// `θ_i(y w^(k))|_{y=e(x)} = Σ_j θ_i(x_j z^(k))` for `i ≥ 1`, and
/// `L_0(e(x)) = Π_j l_0(x_j)` for `i = 0`, with `w = Φ_λ(z)`.
///
/// The differentials of both sides are compared as well.
pub fn check_pullback_theta_identity(z: &StratumMatrix, r: usize, k: usize, i: usize) -> Result<bool> {
    let img = veronese_lambda(z, r)?;
    let x = Vars::indexed("x", r);
    let y = Vars::indexed("y", r);
    let line = Vars::new(["x"]);
    let e = elementary_symmetric(&x);
    let at = |j: usize| [MultiPoly::var(&x, j)];

    let big = theta_rational(k, &img.target_block(k), i, &y)?.value.substitute(&e[1..])?;
    let small = theta_rational(k, &z.block(k), i, &line)?.value;
    let copies: Vec<RatFunc> = (0..r).map(|j| small.substitute(&at(j))).collect::<Result<_>>()?;

    if i == 0 {
        let prod = copies.iter().fold(RatFunc::one(&x), |acc, c| acc.mul(c));
        if big != prod {
            return Ok(false);
        }
        let dlog = |f: &RatFunc| -> Result<DifferentialForm> {
            if f.constant_value().is_some_and(|c| !c.is_zero()) {
                return Ok(DifferentialForm::zero(&x, 1));
            }
            Ok(DifferentialForm::function(f.clone()).d().mul_function(&f.inv()?))
        };
        let lhs = dlog(&big)?;
        let mut rhs = DifferentialForm::zero(&x, 1);
        for c in &copies {
            rhs = rhs.add(&dlog(c)?);
        }
        return Ok(lhs == rhs);
    }
    let sum = copies.iter().fold(RatFunc::zero(&x), |acc, c| acc.add(c));
    if big != sum {
        return Ok(false);
    }
    let d = |f: &RatFunc| DifferentialForm::function(f.clone()).d();
    let rhs = copies.iter().fold(DifferentialForm::zero(&x, 1), |acc, c| acc.add(&d(c)));
    Ok(d(&big) == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_examples() {
        let w = veronese_block(&ExactMatrix::from_i64(&[&[1], &[2]]), 2);
        assert_eq!(w, ExactMatrix::from_i64(&[&[1], &[2], &[4]]));
        let id = ExactMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(veronese_block(&id, 1), id);
        assert_eq!(veronese_block(&id, 2), ExactMatrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]));
    }

    // Column (1,-1) maps to (a², ab, b²) = (1,-1,1); the generating identity
    // forces the middle entry to be ab, with no binomial weight.
    #[test]
    fn lambda_example() {
        let l = Partition::parse("1,1,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 0, 1], &[0, 1, -1]]).unwrap();
        let img = veronese_lambda(&z, 2).unwrap();
        assert_eq!(img.target, ExactMatrix::from_i64(&[&[1, 0, 1], &[0, 0, -1], &[0, 1, 1]]));
        assert_eq!(veronese_lambda(&z, 1).unwrap().target, *z.entries());
        assert!(img.is_generic_stratum());
    }

    #[test]
    fn identities_on_small_cases() {
        let zb = ExactMatrix::from_i64(&[&[2, -1, 3], &[1, 4, -2]]);
        for r in 1..=3 {
            assert!(check_generating_identity(&zb, r).holds());
        }
        let l = Partition::parse("2,1,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[2, -1, 1, 0], &[1, 3, 1, 1]]).unwrap();
        for k in 0..3 {
            for i in 0..z.partition().parts()[k] {
                assert!(check_pullback_theta_identity(&z, 2, k, i).unwrap());
            }
        }
    }
}
