//! Normalized rational functions.

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{MultiPoly, Vars};
use super::rational::ExactScalar;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic in the graded-lex order.
///
/// Two equal values always have identical representations.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Reduces by the gcd and makes the denominator monic.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero(num.vars()));
        }
        let g = gcd(&num, &den);
        if g.is_one() {
            return Ok(RatFunc::from_coprime(num, den));
        }
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        Ok(RatFunc::from_coprime(n, d))
    }

    /// Trusts that `num` and `den` are coprime; only the leading coefficient is normalized.
    pub fn from_coprime(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "division by zero polynomial");
        if num.is_zero() {
            return RatFunc::zero(num.vars());
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// `num / base^k` for an irreducible `base`, cancelling by trial division.
    pub fn from_num_over_power(num: MultiPoly, base: &MultiPoly, k: u32) -> Self {
        let mut num = num;
        let mut k = k;
        if num.is_zero() {
            return RatFunc::zero(num.vars());
        }
        if let Some(c) = base.constant_value() {
            let s = num_traits::pow(c.recip(), k as usize);
            return RatFunc::from_poly(num.scale(&s));
        }
        while k > 0 {
            match num.div_exact(base) {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        RatFunc::from_coprime(num, base.pow(k))
    }

    pub fn zero(vars: &Vars) -> Self {
        RatFunc { num: MultiPoly::zero(vars), den: MultiPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        RatFunc::from_poly(MultiPoly::one(vars))
    }

    pub fn constant(vars: &Vars, c: ExactScalar) -> Self {
        RatFunc::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RatFunc { num: p, den }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<ExactScalar> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        if self.is_polynomial() {
            return RatFunc::from_coprime(&(&self.num * &other.den) + &other.num, other.den.clone());
        }
        if other.is_polynomial() {
            return RatFunc::from_coprime(&(&other.num * &self.den) + &self.num, self.den.clone());
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return RatFunc::from_coprime(num, &self.den * &other.den);
        }
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&other.num * &b1);
        if num.is_zero() {
            return RatFunc::zero(self.vars());
        }
        // Any common factor of num and b1·d1·g divides g.
        let h = gcd(&num, &g);
        let den = &(&b1 * &d1) * &g;
        if h.is_one() {
            RatFunc::from_coprime(num, den)
        } else {
            RatFunc::from_coprime(num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.vars());
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let split = |p: &MultiPoly, g: &MultiPoly| if g.is_one() { p.clone() } else { p.div_exact(g).unwrap() };
        let n = &split(&self.num, &g1) * &split(&other.num, &g2);
        let d = &split(&self.den, &g2) * &split(&other.den, &g1);
        RatFunc::from_coprime(n, d)
    }

    pub fn scale(&self, c: &ExactScalar) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.vars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        self.mul(&RatFunc::from_poly(p.clone()))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        RatFunc::from_coprime(self.num.pow(k), self.den.pow(k))
    }

    pub fn derivative(&self, v: usize) -> RatFunc {
        if self.is_polynomial() {
            return RatFunc::from_poly(self.num.derivative(v));
        }
        let top = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        RatFunc::new(top, &self.den * &self.den).unwrap()
    }

    /// Substitutes polynomial images for the variables; the result is re-reduced.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<RatFunc> {
        RatFunc::new(self.num.substitute(images), self.den.substitute(images))
    }

    pub fn eval(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// `a/b == c/d` checked as `a·d == b·c`, without normalizing.
    pub fn cross_equal(a: (&MultiPoly, &MultiPoly), b: (&MultiPoly, &MultiPoly)) -> bool {
        a.0 * b.1 == a.1 * b.0
    }

    pub fn with_vars(&self, vars: &Vars) -> RatFunc {
        RatFunc { num: self.num.with_vars(vars), den: self.den.with_vars(vars) }
    }

    pub fn permute_vars(&self, perm: &[usize]) -> RatFunc {
        RatFunc::from_coprime(self.num.permute_vars(perm), self.den.permute_vars(perm))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(s: &str, v: &Vars) -> MultiPoly {
        MultiPoly::parse(s, v).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let v = Vars::new(["x"]);
        let r = RatFunc::new(p("x^2-1", &v), p("x-1", &v)).unwrap();
        assert_eq!((r.num().clone(), r.den().clone()), (p("x+1", &v), p("1", &v)));
        let r = RatFunc::new(p("0", &v), p("x", &v)).unwrap();
        assert_eq!((r.num().clone(), r.den().clone()), (p("0", &v), p("1", &v)));
        let r = RatFunc::new(p("2*x", &v), p("4", &v)).unwrap();
        assert_eq!((r.num().clone(), r.den().clone()), (MultiPoly::var(&v, 0).scale(&rat(1, 2)), p("1", &v)));
        let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(again, r);
        assert_eq!(RatFunc::new(p("x", &v), p("0", &v)), Err(Error::DivisionByZero));
    }

    #[test]
    fn field_operations() {
        let v = Vars::new(["x", "y"]);
        let a = RatFunc::new(p("1", &v), p("x-y", &v)).unwrap();
        let b = RatFunc::new(p("1", &v), p("x+y", &v)).unwrap();
        let s = a.add(&b);
        assert_eq!(s, RatFunc::new(p("2*x", &v), p("x^2-y^2", &v)).unwrap());
        assert_eq!(s.sub(&a).sub(&b), RatFunc::zero(&v));
        let c = RatFunc::new(p("x-y", &v), p("3*y", &v)).unwrap();
        assert_eq!(a.mul(&c), RatFunc::new(p("1", &v), p("3*y", &v)).unwrap());
        assert_eq!(c.div(&c).unwrap(), RatFunc::one(&v));
        let d = a.derivative(0);
        assert_eq!(d, RatFunc::new(p("-1", &v), p("(x-y)^2", &v)).unwrap());
    }

    #[test]
    fn power_denominators() {
        let v = Vars::new(["x", "y"]);
        let base = p("x + 2*y - 1", &v);
        let r = RatFunc::from_num_over_power(&base * &p("x", &v), &base, 3);
        assert_eq!(r, RatFunc::new(p("x", &v), base.pow(2)).unwrap());
    }
}
