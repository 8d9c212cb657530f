//! Sparse multivariate polynomials over the rationals in graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rational::{int, ExactScalar};
use crate::error::{Error, Result};

/// Ordered variable names shared by every polynomial in one computation.
#[derive(Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// `prefix1, …, prefixN`.
    pub fn indexed(prefix: &str, n: usize) -> Self {
        Vars::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(n);
        m.0[i] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial stored as a map from monomials to nonzero coefficients.
///
/// All operands of a binary operation must share the same variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl MultiPoly {
    pub fn zero(vars: &Vars) -> Self {
        MultiPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        MultiPoly::constant(vars, ExactScalar::one())
    }

    pub fn constant(vars: &Vars, c: ExactScalar) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        MultiPoly::monomial(vars, Monomial::var(vars.len(), i, 1), ExactScalar::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: ExactScalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, ExactScalar)>) -> Self {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `c_0 + c_1 v + c_2 v² + …` in the variable with index `v`.
    pub fn from_univariate(vars: &Vars, v: usize, coeffs: &[ExactScalar]) -> Self {
        MultiPoly::from_terms(
            vars,
            coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::var(vars.len(), v, e as u32), c.clone())),
        )
    }

    /// Affine form `c_0 + Σ c_{i+1} v_i`.
    pub fn affine(vars: &Vars, coeffs: &[ExactScalar]) -> Self {
        assert_eq!(coeffs.len(), vars.len() + 1);
        let mut p = MultiPoly::constant(vars, coeffs[0].clone());
        for (i, c) in coeffs[1..].iter().enumerate() {
            p.add_term(Monomial::var(vars.len(), i, 1), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.0.len(), self.vars.len());
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn constant_value(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            Some(ExactScalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> ExactScalar {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ExactScalar)> + '_ {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> ExactScalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(ExactScalar::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[v]).max()
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] > 0)
    }

    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.div(m), a.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e > 0 {
                let mut m2 = m.clone();
                m2.0[v] -= 1;
                out.terms.insert(m2, c * int(e as i64));
            }
        }
        out
    }

    /// Replaces variable `i` with `images[i]`; images share one target variable list.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = match images.first() {
            Some(p) => p.vars.clone(),
            None => self.vars.clone(),
        };
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(&p.vars), p.clone()]).collect();
        let mut out = MultiPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluates every variable at a rational point.
    pub fn eval(&self, point: &[ExactScalar]) -> ExactScalar {
        assert_eq!(point.len(), self.nvars());
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Sets the listed variables to constants, keeping the variable list.
    pub fn specialize(&self, assignment: &[(usize, ExactScalar)]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let mut t = c.clone();
            for (v, x) in assignment {
                let e = m2.0[*v];
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                    m2.0[*v] = 0;
                }
            }
            out.add_term(m2, t);
        }
        out
    }

    /// Coefficients with respect to variable `v`; entry `e` multiplies `v^e`.
    pub fn coefficients_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[v] as usize;
            let mut m2 = m.clone();
            m2.0[v] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Inverse of [`MultiPoly::coefficients_in`].
    pub fn from_coefficients_in(vars: &Vars, v: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut m2 = m.clone();
                m2.0[v] += e as u32;
                out.add_term(m2, a.clone());
            }
        }
        out
    }

    /// Dense coefficients when only variable `v` occurs.
    pub fn to_univariate(&self, v: usize) -> Option<Vec<ExactScalar>> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![ExactScalar::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return None;
            }
            out[m.0[v] as usize] = c.clone();
        }
        Some(out)
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        assert_eq!(self.vars, divisor.vars, "variable lists differ");
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        for v in 0..self.nvars() {
            if divisor.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (lm_d, lc_d) = divisor.leading_term().unwrap();
        let lc_inv = lc_d.recip();
        let mut rem = self.terms.clone();
        let mut quot = MultiPoly::zero(&self.vars);
        while let Some((lm_r, lc_r)) = rem.iter().next_back() {
            if !lm_d.divides(lm_r) {
                return None;
            }
            let m = lm_r.div(lm_d);
            let c = lc_r * &lc_inv;
            let m_key = m.clone();
            for (k, a) in &divisor.terms {
                let key = k.mul(&m);
                let delta = a * &c;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.terms.insert(m_key, c);
        }
        Some(quot)
    }

    /// Same polynomial over another variable list of equal length.
    pub fn with_vars(&self, vars: &Vars) -> MultiPoly {
        assert_eq!(vars.len(), self.nvars());
        MultiPoly { vars: vars.clone(), terms: self.terms.clone() }
    }

    /// Reorders variables: variable `i` of `self` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = SmallVec::from_elem(0, self.nvars());
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] = x;
            }
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Parses expressions such as `"3/2*x^2*y - x + 1"` or `"(x-1)^2"` over `vars`.
    pub fn parse(s: &str, vars: &Vars) -> Result<MultiPoly> {
        let mut p = Parser { src: s.as_bytes(), pos: 0, vars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.0[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars.0[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, rhs.vars, "variable lists differ");
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        let mut acc: std::collections::HashMap<Monomial, ExactScalar> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let prod = c1 * c2;
                acc.entry(m1.mul(m2))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    let c = d.constant_value().filter(|c| !c.is_zero()).ok_or_else(|| self.err("non-constant divisor"))?;
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: num_bigint::BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(MultiPoly::constant(self.vars, ExactScalar::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self.vars.index_of(name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(MultiPoly::var(self.vars, i))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn xy() -> Vars {
        Vars::new(["x", "y"])
    }

    #[test]
    fn grlex_order() {
        let v = xy();
        let p = MultiPoly::parse("y^2 + x + x*y + 1", &v).unwrap();
        let order: Vec<String> = p.terms().map(|(m, _)| format!("{:?}", m.exps())).collect();
        assert_eq!(order, ["[0, 0]", "[1, 0]", "[0, 2]", "[1, 1]"]);
        assert_eq!(p.to_string(), "x*y + y^2 + x + 1");
    }

    #[test]
    fn arithmetic_and_division() {
        let v = xy();
        let a = MultiPoly::parse("x^2 - y^2", &v).unwrap();
        let b = MultiPoly::parse("x - y", &v).unwrap();
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, MultiPoly::parse("x + y", &v).unwrap());
        assert!(b.div_exact(&a).is_none());
        assert!(MultiPoly::parse("x^2 + y", &v).unwrap().div_exact(&b).is_none());
        assert_eq!(&(&q * &b) - &a, MultiPoly::zero(&v));
    }

    #[test]
    fn calculus_and_substitution() {
        let v = xy();
        let p = MultiPoly::parse("3*x^2*y + y", &v).unwrap();
        assert_eq!(p.derivative(0), MultiPoly::parse("6*x*y", &v).unwrap());
        let s = p.substitute(&[MultiPoly::parse("y", &v).unwrap(), MultiPoly::parse("x+1", &v).unwrap()]);
        assert_eq!(s, MultiPoly::parse("3*y^2*(x+1) + x + 1", &v).unwrap());
        assert_eq!(p.eval(&[rat(1, 2), int(2)]), rat(7, 2));
        let c = p.coefficients_in(0);
        assert_eq!(c.len(), 3);
        assert_eq!(MultiPoly::from_coefficients_in(&v, 0, &c), p);
    }

    #[test]
    fn parse_rationals() {
        let v = xy();
        let p = MultiPoly::parse("-1/2*x + 3/4", &v).unwrap();
        assert_eq!(p.constant_term(), rat(3, 4));
        assert_eq!(p.leading_coeff(), rat(-1, 2));
        assert!(MultiPoly::parse("z", &v).is_err());
    }
}
