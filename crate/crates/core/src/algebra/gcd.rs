//! Multivariate gcd over the rationals.
//!
//! Recursive on a main variable with content extraction. A specialization of
//! the remaining variables decides coprimality cheaply in the common case;
//! otherwise the primitive parts go through a subresultant remainder sequence
//! with coefficients in the remaining variables.

use num_traits::One;

use super::poly::MultiPoly;
use super::rational::{int, ExactScalar};
use super::upoly;

/// Monic gcd in the graded-lex order; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(a.vars(), b.vars(), "variable lists differ");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(a.vars());
    }
    let ma = a.min_monomial();
    let mb = b.min_monomial();
    let m = ma.gcd(&mb);
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let g = if a1.is_constant() || b1.is_constant() {
        MultiPoly::one(a.vars())
    } else {
        gcd_no_monomial(&a1, &b1)
    };
    g.mul_monomial(&m, &ExactScalar::one()).monic()
}

pub fn lcm(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.vars());
    }
    let g = gcd(a, b);
    (a * &b.div_exact(&g).expect("gcd divides")).monic()
}

/// Gcd of a list; zero for an empty list.
pub fn gcd_list<'a>(items: impl IntoIterator<Item = &'a MultiPoly>, vars: &super::poly::Vars) -> MultiPoly {
    let mut g = MultiPoly::zero(vars);
    for p in items {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_no_monomial(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let (da, db) = (a.total_degree().unwrap(), b.total_degree().unwrap());
    if db <= da {
        if a.div_exact(b).is_some() {
            return b.clone();
        }
    } else if b.div_exact(a).is_some() {
        return a.clone();
    }
    let n = a.nvars();
    let used_a: Vec<bool> = (0..n).map(|v| a.uses_var(v)).collect();
    let used_b: Vec<bool> = (0..n).map(|v| b.uses_var(v)).collect();
    for v in 0..n {
        if used_a[v] && !used_b[v] {
            return gcd_with_coefficients(b, &a.coefficients_in(v));
        }
        if used_b[v] && !used_a[v] {
            return gcd_with_coefficients(a, &b.coefficients_in(v));
        }
    }
    let shared: Vec<usize> = (0..n).filter(|&v| used_a[v]).collect();
    if shared.len() == 1 {
        let v = shared[0];
        let g = upoly::gcd(&a.to_univariate(v).unwrap(), &b.to_univariate(v).unwrap());
        return MultiPoly::from_univariate(a.vars(), v, &g);
    }
    let v = *shared
        .iter()
        .min_by_key(|&&v| a.degree_in(v).unwrap().max(b.degree_in(v).unwrap()))
        .unwrap();
    let vars = a.vars().clone();
    let ca = a.coefficients_in(v);
    let cb = b.coefficients_in(v);
    let cont_a = gcd_list(&ca, &vars);
    let cont_b = gcd_list(&cb, &vars);
    let cont = gcd(&cont_a, &cont_b);
    let pa = a.div_exact(&cont_a).expect("content divides");
    let pb = b.div_exact(&cont_b).expect("content divides");
    if coprime_by_specialization(&pa, &pb, v) {
        return cont;
    }
    let g = subresultant_gcd(&pa.coefficients_in(v), &pb.coefficients_in(v));
    let g_cont = gcd_list(&g, &vars);
    let g: Vec<MultiPoly> = g.iter().map(|c| c.div_exact(&g_cont).unwrap()).collect();
    &cont * &MultiPoly::from_coefficients_in(&vars, v, &g)
}

fn gcd_with_coefficients(p: &MultiPoly, coeffs: &[MultiPoly]) -> MultiPoly {
    let mut g = p.clone();
    for c in coeffs {
        g = gcd(&g, c);
        if g.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    g
}

/// Sound one-sided test: `true` proves that primitive `pa`, `pb` (w.r.t. `v`) are coprime.
///
/// At a point where neither leading coefficient in `v` vanishes, a common factor
/// of positive `v`-degree survives specialization, so a constant univariate gcd
/// rules it out.
fn coprime_by_specialization(pa: &MultiPoly, pb: &MultiPoly, v: usize) -> bool {
    let n = pa.nvars();
    let lca = pa.coefficients_in(v).pop().unwrap();
    let lcb = pb.coefficients_in(v).pop().unwrap();
    let mut hits = 0;
    for attempt in 0..6i64 {
        let point: Vec<(usize, ExactScalar)> = (0..n)
            .filter(|&i| i != v)
            .map(|i| (i, int(((i as i64) * 7 + 3 + attempt * 13) % 29 - 11)))
            .collect();
        if lca.specialize(&point).is_zero() || lcb.specialize(&point).is_zero() {
            continue;
        }
        let ua = pa.specialize(&point).to_univariate(v).unwrap();
        let ub = pb.specialize(&point).to_univariate(v).unwrap();
        if upoly::degree(&upoly::gcd(&ua, &ub)) == Some(0) {
            return true;
        }
        hits += 1;
        if hits == 2 {
            return false;
        }
    }
    false
}

fn poly_degree(p: &[MultiPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(p: &mut Vec<MultiPoly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = poly_degree(b).unwrap();
    let lb = &b[db];
    let mut r: Vec<MultiPoly> = a.to_vec();
    trim(&mut r);
    let mut e = (poly_degree(&r).unwrap_or(0) + 1).saturating_sub(db);
    while let Some(dr) = poly_degree(&r) {
        if dr < db {
            break;
        }
        let t = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in b[..=db].iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&t * bj);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn subresultant_gcd(a: &[MultiPoly], b: &[MultiPoly]) -> Vec<MultiPoly> {
    let vars = a[0].vars().clone();
    let (mut x, mut y) = if poly_degree(a) >= poly_degree(b) { (a.to_vec(), b.to_vec()) } else { (b.to_vec(), a.to_vec()) };
    trim(&mut x);
    trim(&mut y);
    let mut g = MultiPoly::one(&vars);
    let mut h = MultiPoly::one(&vars);
    loop {
        let delta = poly_degree(&x).unwrap() - poly_degree(&y).unwrap();
        let r = pseudo_rem(&x, &y);
        match poly_degree(&r) {
            None => return y,
            Some(0) => return vec![MultiPoly::one(&vars)],
            Some(_) => {}
        }
        let divisor = &g * &h.pow(delta as u32);
        x = y;
        y = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division")).collect();
        g = x[poly_degree(&x).unwrap()].clone();
        if delta > 0 {
            let num = g.pow(delta as u32);
            h = if delta == 1 { num } else { num.div_exact(&h.pow(delta as u32 - 1)).expect("subresultant division") };
        }
    }
}

pub fn is_coprime(a: &MultiPoly, b: &MultiPoly) -> bool {
    gcd(a, b).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::Vars;

    fn p(s: &str, v: &Vars) -> MultiPoly {
        MultiPoly::parse(s, v).unwrap()
    }

    #[test]
    fn basic_cases() {
        let v = Vars::new(["x", "y", "z"]);
        assert_eq!(gcd(&p("x^2-1", &v), &p("x-1", &v)), p("x-1", &v));
        assert_eq!(gcd(&p("0", &v), &p("2*x", &v)), p("x", &v));
        assert_eq!(gcd(&p("x*y^2", &v), &p("x^2*y", &v)), p("x*y", &v));
        assert!(gcd(&p("x+y", &v), &p("x-y", &v)).is_one());
    }

    #[test]
    fn hidden_common_factor() {
        let v = Vars::new(["x", "y", "z"]);
        let f = p("x*y + z^2 - 3", &v);
        let a = &f * &p("x^2 + y*z + 1", &v);
        let b = &f * &p("x - y^2*z + 2*x*z", &v);
        assert_eq!(gcd(&a, &b), f.monic());
        let sq = &f * &f;
        assert_eq!(gcd(&(&sq * &p("x+1", &v)), &(&sq * &p("y-z", &v))), sq.monic());
    }

    #[test]
    fn content_and_lcm() {
        let v = Vars::new(["x", "y"]);
        let a = p("(y+1)*(x^2 + y)", &v);
        let b = p("(y+1)*(y-2)*x", &v);
        assert_eq!(gcd(&a, &b), p("y+1", &v));
        let l = lcm(&p("x*(x+y)", &v), &p("(x+y)*(x-y)", &v));
        assert_eq!(l, p("x*(x+y)*(x-y)", &v).monic());
    }
}
