//! Fractions whose denominators are products of powers of fixed irreducible
//! polynomials, e.g. the linear forms cutting out a hyperplane arrangement.
//!
//! Keeping the exponent of each known factor makes every operation gcd-free:
//! a reduced representation only needs trial divisions by the factors.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::poly::{MultiPoly, Vars};
use super::ratfunc::RatFunc;
use super::rational::ExactScalar;
use super::series::CoeffRing;

/// Pairwise non-associate, non-constant irreducible polynomials over one variable list.
#[derive(Clone)]
pub struct BaseSet(Arc<BaseSetInner>);

struct BaseSetInner {
    vars: Vars,
    bases: Vec<MultiPoly>,
}

impl BaseSet {
    /// The caller guarantees irreducibility (linear forms are always fine).
    pub fn new(vars: &Vars, bases: Vec<MultiPoly>) -> Self {
        for (i, b) in bases.iter().enumerate() {
            assert_eq!(b.vars(), vars, "base over a different variable list");
            assert!(b.constant_value().is_none(), "constant base");
            for c in &bases[..i] {
                assert!(c.monic() != b.monic(), "repeated base");
            }
        }
        BaseSet(Arc::new(BaseSetInner { vars: vars.clone(), bases }))
    }

    pub fn vars(&self) -> &Vars {
        &self.0.vars
    }

    pub fn bases(&self) -> &[MultiPoly] {
        &self.0.bases
    }

    pub fn len(&self) -> usize {
        self.0.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.bases.is_empty()
    }

    pub fn index_of(&self, p: &MultiPoly) -> Option<usize> {
        let m = p.monic();
        self.0.bases.iter().position(|b| b.monic() == m)
    }

    /// Writes `p = c · Π base_i^{e_i}` when such a factorization exists.
    pub fn factor(&self, p: &MultiPoly) -> Option<(ExactScalar, Exps)> {
        if p.is_zero() {
            return None;
        }
        let mut rest = p.clone();
        let mut exps: Exps = SmallVec::from_elem(0, self.len());
        for (i, b) in self.bases().iter().enumerate() {
            while let Some(q) = rest.div_exact(b) {
                rest = q;
                exps[i] += 1;
                if rest.is_constant() {
                    break;
                }
            }
            if rest.is_constant() {
                break;
            }
        }
        rest.constant_value().map(|c| (c, exps))
    }

    pub fn product(&self, exps: &[u32]) -> MultiPoly {
        let mut out = MultiPoly::one(self.vars());
        for (b, &e) in self.bases().iter().zip(exps) {
            if e > 0 {
                out = &out * &b.pow(e);
            }
        }
        out
    }
}

impl PartialEq for BaseSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.vars == other.0.vars && self.0.bases == other.0.bases)
    }
}

impl fmt::Debug for BaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.bases().iter()).finish()
    }
}

pub type Exps = SmallVec<[u32; 8]>;

/// `num / Π base_i^{exps_i}`, reduced so that no base with positive exponent divides `num`.
#[derive(Clone, PartialEq)]
pub struct LinFrac {
    set: BaseSet,
    num: MultiPoly,
    exps: Exps,
}

impl LinFrac {
    pub fn new(set: &BaseSet, num: MultiPoly, exps: Exps) -> Self {
        assert_eq!(exps.len(), set.len());
        let mut x = LinFrac { set: set.clone(), num, exps };
        x.reduce_all();
        x
    }

    pub fn from_poly(set: &BaseSet, num: MultiPoly) -> Self {
        LinFrac { set: set.clone(), num, exps: SmallVec::from_elem(0, set.len()) }
    }

    pub fn zero(set: &BaseSet) -> Self {
        LinFrac::from_poly(set, MultiPoly::zero(set.vars()))
    }

    pub fn one(set: &BaseSet) -> Self {
        LinFrac::from_poly(set, MultiPoly::one(set.vars()))
    }

    /// `1 / base_i^k`.
    pub fn base_power_inv(set: &BaseSet, i: usize, k: u32) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, set.len());
        exps[i] = k;
        LinFrac { set: set.clone(), num: MultiPoly::one(set.vars()), exps }
    }

    /// Converts a rational function whose denominator factors over the base set.
    pub fn from_ratfunc(set: &BaseSet, f: &RatFunc) -> Option<Self> {
        let (c, exps) = set.factor(f.den())?;
        Some(LinFrac::new(set, f.num().scale(&c.recip()), exps))
    }

    pub fn set(&self) -> &BaseSet {
        &self.set
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn vars(&self) -> &Vars {
        self.set.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn reduce_at(&mut self, i: usize) {
        if self.num.is_zero() {
            self.exps.iter_mut().for_each(|e| *e = 0);
            return;
        }
        while self.exps[i] > 0 {
            match self.num.div_exact(&self.set.bases()[i]) {
                Some(q) => {
                    self.num = q;
                    self.exps[i] -= 1;
                }
                None => break,
            }
        }
    }

    fn reduce_all(&mut self) {
        for i in 0..self.exps.len() {
            self.reduce_at(i);
        }
    }

    fn check(&self, other: &Self) {
        assert!(self.set == other.set, "fractions over different base sets");
    }

    /// Numerator over the denominator `Π base^target`, with `target ≥ exps`.
    pub fn numerator_over(&self, target: &[u32]) -> MultiPoly {
        let lift: Vec<u32> = target.iter().zip(&self.exps).map(|(t, e)| t - e).collect();
        if lift.iter().all(|&e| e == 0) {
            self.num.clone()
        } else {
            &self.num * &self.set.product(&lift)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let target: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let num = &self.numerator_over(&target) + &other.numerator_over(&target);
        let mut x = LinFrac { set: self.set.clone(), num, exps: target };
        // where the exponents differ exactly one summand is divisible by the base
        for i in 0..x.exps.len() {
            if self.exps[i] == other.exps[i] {
                x.reduce_at(i);
            }
        }
        if x.num.is_zero() {
            x.exps.iter_mut().for_each(|e| *e = 0);
        }
        x
    }

    pub fn neg(&self) -> Self {
        LinFrac { set: self.set.clone(), num: -&self.num, exps: self.exps.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return LinFrac::zero(&self.set);
        }
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        let mut x = LinFrac { set: self.set.clone(), num: &self.num * &other.num, exps };
        for i in 0..x.exps.len() {
            if (self.exps[i] == 0) != (other.exps[i] == 0) {
                x.reduce_at(i);
            }
        }
        x
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        let mut x = LinFrac { set: self.set.clone(), num: &self.num * p, exps: self.exps.clone() };
        x.reduce_all();
        x
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return LinFrac::zero(&self.set);
        }
        LinFrac { set: self.set.clone(), num: self.num.scale(c), exps: self.exps.clone() }
    }

    pub fn derivative(&self, v: usize) -> Self {
        if self.is_polynomial() {
            return LinFrac::from_poly(&self.set, self.num.derivative(v));
        }
        let active: Vec<usize> = (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect();
        let bases = self.set.bases();
        let mut prod_all = MultiPoly::one(self.vars());
        for &i in &active {
            prod_all = &prod_all * &bases[i];
        }
        let mut num = &self.num.derivative(v) * &prod_all;
        for &i in &active {
            let db = bases[i].derivative(v);
            if db.is_zero() {
                continue;
            }
            let mut others = db.scale(&ExactScalar::from_integer(self.exps[i].into()));
            for &j in &active {
                if j != i {
                    others = &others * &bases[j];
                }
            }
            num = &num - &(&self.num * &others);
        }
        let exps: Exps = self.exps.iter().map(|&e| if e > 0 { e + 1 } else { 0 }).collect();
        LinFrac::new(&self.set, num, exps)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_coprime(self.num.clone(), self.set.product(&self.exps))
    }

    /// Substitutes `images` for the variables. `base_images[i]` gives the
    /// factorization `c · Π target_j^{g_j}` of base `i` after substitution.
    pub fn pullback(&self, target: &BaseSet, images: &[MultiPoly], base_images: &[(ExactScalar, Exps)]) -> Self {
        let mut num = self.num.substitute(images);
        let mut exps: Exps = SmallVec::from_elem(0, target.len());
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let (c, g) = &base_images[i];
            num = num.scale(&num_traits::pow(c.recip(), e as usize));
            for (t, &gj) in exps.iter_mut().zip(g.iter()) {
                *t += gj * e;
            }
        }
        LinFrac::new(target, num, exps)
    }

    /// Re-expresses over a larger base set; `index_map[i]` is the position of base `i` in `target`.
    pub fn embed(&self, target: &BaseSet, index_map: &[usize]) -> Self {
        let mut exps: Exps = SmallVec::from_elem(0, target.len());
        for (i, &e) in self.exps.iter().enumerate() {
            exps[index_map[i]] = e;
        }
        LinFrac { set: target.clone(), num: self.num.clone(), exps }
    }
}

impl fmt::Debug for LinFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {:?}", self.num, self.exps.as_slice())
    }
}

impl CoeffRing for LinFrac {
    fn zero_like(&self) -> Self {
        LinFrac::zero(&self.set)
    }
    fn one_like(&self) -> Self {
        LinFrac::one(&self.set)
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
        let (c, f) = self.set.factor(&self.num)?;
        let num = self.set.product(&self.exps).scale(&c.recip());
        Some(LinFrac::new(&self.set, num, f))
    }
}

impl LinFrac {
    pub fn is_one(&self) -> bool {
        self.is_polynomial() && self.num.constant_value().is_some_and(|c| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::series::{series_log, TruncSeries};

    fn p(s: &str, v: &Vars) -> MultiPoly {
        MultiPoly::parse(s, v).unwrap()
    }

    #[test]
    fn arithmetic_matches_ratfunc() {
        let v = Vars::new(["x", "y"]);
        let set = BaseSet::new(&v, vec![p("x + 2*y + 1", &v), p("x - y", &v)]);
        let a = LinFrac::new(&set, p("x*y + 3", &v), SmallVec::from_slice(&[2, 1]));
        let b = LinFrac::new(&set, p("(x - y)*(y + 1)", &v), SmallVec::from_slice(&[1, 2]));
        assert_eq!(b.exps(), &[1, 1]);
        assert_eq!(a.add(&b).to_ratfunc(), a.to_ratfunc().add(&b.to_ratfunc()));
        assert_eq!(a.mul(&b).to_ratfunc(), a.to_ratfunc().mul(&b.to_ratfunc()));
        assert_eq!(a.derivative(1).to_ratfunc(), a.to_ratfunc().derivative(1));
        assert!(a.sub(&a).is_zero());
        let u = LinFrac::new(&set, p("3*(x - y)^2", &v), SmallVec::from_slice(&[1, 0]));
        assert!(u.mul(&u.inverse_elem().unwrap()).is_one());
    }

    #[test]
    fn log_over_localization() {
        let v = Vars::new(["x", "y"]);
        let set = BaseSet::new(&v, vec![p("x + 2*y + 1", &v)]);
        let lf = |s: &str| LinFrac::from_poly(&set, p(s, &v));
        let rf = |s: &str| RatFunc::from_poly(p(s, &v));
        let src = ["x + 2*y + 1", "x - y", "3*y", "x*y"];
        let sl = TruncSeries::new(src.iter().map(|s| lf(s)).collect());
        let sr = TruncSeries::new(src.iter().map(|s| rf(s)).collect());
        let ll = series_log(&sl).unwrap();
        let lr = series_log(&sr).unwrap();
        for (a, b) in ll.theta.iter().zip(&lr.theta) {
            assert_eq!(&a.to_ratfunc(), b);
        }
    }
}
