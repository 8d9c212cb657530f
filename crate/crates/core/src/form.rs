//! Rational differential forms.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::algebra::matrix::permutations_with_sign;
use crate::algebra::rational::{int, ExactScalar};
use crate::algebra::{MultiPoly, RatFunc, Vars};

/// A `p`-form `Σ_I f_I dv_I` over sorted index sets `I`.
#[derive(Clone, PartialEq)]
pub struct DifferentialForm {
    degree: usize,
    vars: Vars,
    coeffs: BTreeMap<Vec<usize>, RatFunc>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` on a repeated index.
fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl DifferentialForm {
    pub fn zero(vars: &Vars, degree: usize) -> Self {
        DifferentialForm { degree, vars: vars.clone(), coeffs: BTreeMap::new() }
    }

    pub fn function(f: RatFunc) -> Self {
        let mut out = DifferentialForm::zero(f.vars(), 0);
        if !f.is_zero() {
            out.coeffs.insert(Vec::new(), f);
        }
        out
    }

    /// `Σ_i coeffs[i] dv_i`.
    pub fn one_form(vars: &Vars, coeffs: Vec<RatFunc>) -> Self {
        assert_eq!(coeffs.len(), vars.len(), "one coefficient per variable");
        let mut out = DifferentialForm::zero(vars, 1);
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_zero() {
                out.coeffs.insert(vec![i], c);
            }
        }
        out
    }

    /// `f dv_I` for an arbitrary index list `I`.
    pub fn term(indices: &[usize], f: RatFunc) -> Self {
        let vars = f.vars().clone();
        let mut out = DifferentialForm::zero(&vars, indices.len());
        let mut idx = indices.to_vec();
        if let Some(sign) = sort_with_sign(&mut idx) {
            if !f.is_zero() {
                out.coeffs.insert(idx, f.scale(&int(sign)));
            }
        }
        out
    }

    pub fn dvar(vars: &Vars, i: usize) -> Self {
        DifferentialForm::term(&[i], RatFunc::one(vars))
    }

    /// `f dv_1 ∧ ⋯ ∧ dv_n`.
    pub fn top(f: RatFunc) -> Self {
        let n = f.vars().len();
        DifferentialForm::term(&(0..n).collect::<Vec<_>>(), f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, indices: &[usize]) -> RatFunc {
        self.coeffs.get(indices).cloned().unwrap_or_else(|| RatFunc::zero(&self.vars))
    }

    /// Coefficients of `dv_0, …, dv_{n-1}` for a 1-form.
    pub fn one_form_coeffs(&self) -> Vec<RatFunc> {
        assert_eq!(self.degree, 1, "not a 1-form");
        (0..self.vars.len()).map(|i| self.coeff(&[i])).collect()
    }

    /// Coefficient of `dv_1 ∧ ⋯ ∧ dv_n`.
    pub fn top_coeff(&self) -> RatFunc {
        self.coeff(&(0..self.vars.len()).collect::<Vec<_>>())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &RatFunc)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, idx: Vec<usize>, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.coeffs.remove(&idx) {
            Some(g) => {
                let s = g.add(&f);
                if !s.is_zero() {
                    self.coeffs.insert(idx, s);
                }
            }
            None => {
                self.coeffs.insert(idx, f);
            }
        }
    }

    pub fn add(&self, other: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = self.clone();
        for (i, f) in &other.coeffs {
            out.insert_add(i.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> DifferentialForm {
        self.scale(&int(-1))
    }

    pub fn sub(&self, other: &DifferentialForm) -> DifferentialForm {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &ExactScalar) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.vars, self.degree);
        for (i, f) in &self.coeffs {
            out.insert_add(i.clone(), f.scale(c));
        }
        out
    }

    pub fn mul_function(&self, g: &RatFunc) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.vars, self.degree);
        for (i, f) in &self.coeffs {
            out.insert_add(i.clone(), f.mul(g));
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> DifferentialForm {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        let mut out = DifferentialForm::zero(&self.vars, self.degree + other.degree);
        for (i, f) in &self.coeffs {
            for (j, g) in &other.coeffs {
                let mut idx: Vec<usize> = i.iter().chain(j.iter()).copied().collect();
                if let Some(sign) = sort_with_sign(&mut idx) {
                    out.insert_add(idx, f.mul(g).scale(&int(sign)));
                }
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.vars, self.degree + 1);
        for (i, f) in &self.coeffs {
            for v in 0..self.vars.len() {
                if i.contains(&v) {
                    continue;
                }
                let df = f.derivative(v);
                if df.is_zero() {
                    continue;
                }
                let mut idx = vec![v];
                idx.extend_from_slice(i);
                let sign = sort_with_sign(&mut idx).unwrap();
                out.insert_add(idx, df.scale(&int(sign)));
            }
        }
        out
    }

    /// Pullback along `v_i ↦ images[i]`; the images live in the target variables.
    pub fn pullback(&self, images: &[MultiPoly]) -> crate::Result<DifferentialForm> {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images[0].vars().clone();
        let dimg: Vec<DifferentialForm> = images
            .iter()
            .map(|p| {
                let c: Vec<RatFunc> = (0..target.len()).map(|j| RatFunc::from_poly(p.derivative(j))).collect();
                DifferentialForm::one_form(&target, c)
            })
            .collect();
        let mut out = DifferentialForm::zero(&target, self.degree);
        for (i, f) in &self.coeffs {
            let mut piece = DifferentialForm::function(f.substitute(images)?);
            if piece.is_zero() {
                continue;
            }
            for &v in i {
                piece = piece.wedge(&dimg[v]);
            }
            out = out.add(&piece);
        }
        Ok(out)
    }

    /// Action of the variable permutation `v_i ↦ v_{perm[i]}` on coefficients and differentials.
    pub fn permute(&self, perm: &[usize]) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.vars, self.degree);
        for (i, f) in &self.coeffs {
            let mut idx: Vec<usize> = i.iter().map(|&v| perm[v]).collect();
            let sign = sort_with_sign(&mut idx).expect("permutation is injective");
            out.insert_add(idx, f.permute_vars(perm).scale(&int(sign)));
        }
        out
    }

    /// Average of all variable permutations applied to the form.
    pub fn symmetrize(&self) -> DifferentialForm {
        let n = self.vars.len();
        let perms = permutations_with_sign(n);
        let mut acc = DifferentialForm::zero(&self.vars, self.degree);
        for (p, _) in &perms {
            acc = acc.add(&self.permute(p));
        }
        acc.scale(&ExactScalar::new(1.into(), (perms.len() as i64).into()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(i, f)| json!({"indices": i, "num": f.num().to_string(), "den": f.den().to_string()}))
            .collect();
        json!({"degree": self.degree, "vars": self.vars.names(), "terms": terms})
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(i, c)| {
                let d: Vec<String> = i.iter().map(|&v| format!("d{}", self.vars.names()[v])).collect();
                if d.is_empty() {
                    format!("{c}")
                } else {
                    format!("[{c}] {}", d.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Symmetrization as a free function.
pub fn symmetrize(form: &DifferentialForm) -> DifferentialForm {
    form.symmetrize()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn rf(s: &str, v: &Vars) -> RatFunc {
        RatFunc::from_poly(MultiPoly::parse(s, v).unwrap())
    }

    #[test]
    fn wedge_and_d() {
        let v = Vars::indexed("x", 2);
        let a = DifferentialForm::one_form(&v, vec![rf("x1", &v), rf("x2^2", &v)]);
        assert!(a.wedge(&a).is_zero());
        let b = DifferentialForm::one_form(&v, vec![rf("1", &v), rf("x1", &v)]);
        let w = a.wedge(&b);
        assert_eq!(w.top_coeff(), rf("x1^2 - x2^2", &v));
        assert!(DifferentialForm::function(rf("x1^3*x2", &v)).d().d().is_zero());
        assert_eq!(b.d().top_coeff(), rf("1", &v));
    }

    #[test]
    fn pullback_of_elementary_differentials() {
        let y = Vars::indexed("y", 2);
        let x = Vars::indexed("x", 2);
        let e = crate::algebra::symmetric::elementary_symmetric(&x);
        let dy1 = DifferentialForm::dvar(&y, 0).pullback(&e[1..]).unwrap();
        assert_eq!(dy1.one_form_coeffs(), vec![rf("1", &x), rf("1", &x)]);
        let dy2 = DifferentialForm::dvar(&y, 1).pullback(&e[1..]).unwrap();
        assert_eq!(dy2.one_form_coeffs(), vec![rf("x2", &x), rf("x1", &x)]);
    }

    #[test]
    fn symmetrize_examples() {
        let x = Vars::indexed("x", 2);
        let s = DifferentialForm::dvar(&x, 0).symmetrize();
        assert_eq!(s.one_form_coeffs(), vec![RatFunc::constant(&x, rat(1, 2)), RatFunc::constant(&x, rat(1, 2))]);
        let g = DifferentialForm::top(rf("x1^2 + 3*x1", &x)).symmetrize();
        let expect = rf("x1^2 + 3*x1 - x2^2 - 3*x2", &x).scale(&rat(1, 2));
        assert_eq!(g.top_coeff(), expect);
        assert_eq!(g.symmetrize(), g);
    }
}
