//! Truncated power series `R[T]/(T^n)` over a coefficient ring.

use std::fmt;

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::ratfunc::RatFunc;
use super::rational::{int, ExactScalar};
use crate::error::{Error, Result};

/// Commutative ring operations needed by [`TruncSeries`].
///
/// Constructors take `&self` because polynomial rings carry a variable list.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, other: &Self) -> Self;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    fn scale_elem(&self, c: &ExactScalar) -> Self;
    fn inverse_elem(&self) -> Option<Self>;
}

impl CoeffRing for ExactScalar {
    fn zero_like(&self) -> Self {
        ExactScalar::zero()
    }
    fn one_like(&self) -> Self {
        ExactScalar::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn scale_elem(&self, c: &ExactScalar) -> Self {
        self * c
    }
    fn inverse_elem(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl CoeffRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn scale_elem(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn inverse_elem(&self) -> Option<Self> {
        self.constant_value()
            .filter(|c| !c.is_zero())
            .map(|c| MultiPoly::constant(self.vars(), c.recip()))
    }
}

impl CoeffRing for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_elem(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_elem(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
    fn scale_elem(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn inverse_elem(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Element of `R[T]/(T^n)`; `coeffs[i]` multiplies `T^i`.
#[derive(Clone, PartialEq)]
pub struct TruncSeries<R: CoeffRing> {
    coeffs: Vec<R>,
}

impl<R: CoeffRing> fmt::Debug for TruncSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<R: CoeffRing> TruncSeries<R> {
    /// Series with the given coefficients; the modulus is their count.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "modulus must be positive");
        TruncSeries { coeffs }
    }

    pub fn zero(template: &R, n: usize) -> Self {
        TruncSeries::new(vec![template.zero_like(); n])
    }

    pub fn one(template: &R, n: usize) -> Self {
        let mut c = vec![template.zero_like(); n];
        c[0] = template.one_like();
        TruncSeries::new(c)
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus(), other.modulus(), "series moduli differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        TruncSeries::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_elem(b)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        TruncSeries::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub_elem(b)).collect())
    }

    pub fn neg(&self) -> Self {
        TruncSeries::new(self.coeffs.iter().map(|a| a.neg_elem()).collect())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        TruncSeries::new(self.coeffs.iter().map(|a| a.scale_elem(c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let n = self.modulus();
        let mut out: Vec<R> = vec![self.coeffs[0].zero_like(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs[..n - i].iter().enumerate() {
                if b.is_zero_elem() {
                    continue;
                }
                out[i + j] = out[i + j].add_elem(&a.mul_elem(b));
            }
        }
        TruncSeries::new(out)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0].inverse_elem().is_some()
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inverse_elem().ok_or(Error::LogOfNonUnit)?;
        let n = self.modulus();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for m in 1..n {
            let mut acc = self.coeffs[0].zero_like();
            for j in 1..=m {
                if self.coeffs[j].is_zero_elem() || out[m - j].is_zero_elem() {
                    continue;
                }
                acc = acc.add_elem(&self.coeffs[j].mul_elem(&out[m - j]));
            }
            out.push(acc.mul_elem(&inv0).neg_elem());
        }
        Ok(TruncSeries::new(out))
    }

    /// Formal derivative in `T`, truncated to modulus `n - 1` (at least 1).
    fn derivative_t(&self) -> Vec<R> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale_elem(&int(i as i64)))
            .collect()
    }
}

/// Logarithm of a unit series: the constant term is kept as the logarithmic
/// slot, `theta[i - 1]` is the coefficient of `T^i` for `i ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogSeries<R: CoeffRing> {
    pub log_slot: R,
    pub theta: Vec<R>,
}

impl<R: CoeffRing> LogSeries<R> {
    /// Slot `i`; slot 0 is the logarithmic slot.
    pub fn slot(&self, i: usize) -> &R {
        if i == 0 {
            &self.log_slot
        } else {
            &self.theta[i - 1]
        }
    }

    pub fn modulus(&self) -> usize {
        self.theta.len() + 1
    }
}

/// `log s` through `log s_0 + ∫ u'/u` with `u = s / s_0`.
pub fn series_log<R: CoeffRing>(s: &TruncSeries<R>) -> Result<LogSeries<R>> {
    let s0 = s.coeffs[0].clone();
    let inv0 = s0.inverse_elem().ok_or(Error::LogOfNonUnit)?;
    let n = s.modulus();
    if n == 1 {
        return Ok(LogSeries { log_slot: s0, theta: Vec::new() });
    }
    let u = TruncSeries::new(s.coeffs.iter().map(|c| c.mul_elem(&inv0)).collect());
    let du = TruncSeries::new(u.derivative_t());
    let u_short = TruncSeries::new(u.coeffs[..n - 1].to_vec());
    let w = du.mul(&u_short.inverse()?);
    let theta = w
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| c.scale_elem(&ExactScalar::new(1.into(), ((i + 1) as i64).into())))
        .collect();
    Ok(LogSeries { log_slot: s0, theta })
}

/// `s^k` by repeated squaring; `s^0` is the identity.
pub fn series_pow<R: CoeffRing>(s: &TruncSeries<R>, k: u32) -> TruncSeries<R> {
    let mut result = TruncSeries::one(&s.coeffs[0], s.modulus());
    let mut base = s.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            result = result.mul(&base);
        }
        k >>= 1;
        if k > 0 {
            base = base.mul(&base);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Vars;
    use crate::algebra::rational::rat;

    fn q(v: &[i64]) -> TruncSeries<ExactScalar> {
        TruncSeries::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn log_examples() {
        let l = series_log(&q(&[1, 1, 0])).unwrap();
        assert_eq!(l.log_slot, int(1));
        assert_eq!(l.theta, vec![int(1), rat(-1, 2)]);
        let l = series_log(&q(&[5, 0, 0, 0])).unwrap();
        assert_eq!(l.log_slot, int(5));
        assert!(l.theta.iter().all(|c| c.is_zero()));
        assert_eq!(series_log(&q(&[0, 1])), Err(Error::LogOfNonUnit));
    }

    #[test]
    fn generic_second_slot() {
        let v = Vars::new(["x0", "x1", "x2"]);
        let s = TruncSeries::new((0..3).map(|i| RatFunc::from_poly(MultiPoly::var(&v, i))).collect());
        let l = series_log(&s).unwrap();
        let expect = RatFunc::new(MultiPoly::parse("x2*x0 - 1/2*x1^2", &v).unwrap(), MultiPoly::parse("x0^2", &v).unwrap()).unwrap();
        assert_eq!(l.theta[1], expect);
        assert_eq!(l.log_slot, RatFunc::from_poly(MultiPoly::var(&v, 0)));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(series_pow(&q(&[1, 1]), 2), q(&[1, 2]));
        assert_eq!(series_pow(&q(&[3, 7, 1]), 0), q(&[1, 0, 0]));
        assert_eq!(series_pow(&q(&[0, 1, 0]), 2), q(&[0, 0, 1]));
    }
}
