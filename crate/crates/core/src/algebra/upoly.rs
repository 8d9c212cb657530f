//! Dense univariate polynomials over the rationals, index = degree.

use num_traits::{One, Zero};

use super::rational::ExactScalar;

pub type UPoly = Vec<ExactScalar>;

pub fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[ExactScalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[ExactScalar], b: &[ExactScalar]) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(ExactScalar::zero);
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &[ExactScalar], c: &ExactScalar) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x * c).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[ExactScalar], b: &[ExactScalar]) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn div_rem(a: &[ExactScalar], b: &[ExactScalar]) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    let inv = b[db].recip();
    let mut q = vec![ExactScalar::zero(); r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &inv;
        let shift = dr - db;
        for (j, y) in b[..=db].iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic greatest common divisor; empty for `gcd(0, 0)`.
pub fn gcd(a: &[ExactScalar], b: &[ExactScalar]) -> UPoly {
    let mut x: UPoly = a.to_vec();
    let mut y: UPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = monic(&r);
    }
    monic(&x)
}

pub fn monic(a: &[ExactScalar]) -> UPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) if a[d].is_one() => a[..=d].to_vec(),
        Some(d) => scale(&a[..=d], &a[d].recip()),
    }
}

pub fn eval(a: &[ExactScalar], x: &ExactScalar) -> ExactScalar {
    a.iter().rev().fold(ExactScalar::zero(), |acc, c| acc * x + c)
}

pub fn derivative(a: &[ExactScalar]) -> UPoly {
    let mut out: UPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * ExactScalar::from_integer((i as i64).into()))
        .collect();
    trim(&mut out);
    out
}

/// Coefficients of `a(x + p)`, i.e. the Taylor expansion of `a` at `p`.
pub fn taylor_shift(a: &[ExactScalar], p: &ExactScalar) -> UPoly {
    let mut c: UPoly = a.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &c[j + 1] * p;
            c[j] += t;
        }
    }
    trim(&mut c);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn p(v: &[i64]) -> UPoly {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn division_and_gcd() {
        let a = mul(&p(&[-1, 1]), &p(&[2, 0, 1]));
        let (q, r) = div_rem(&a, &p(&[-1, 1]));
        assert_eq!(q, p(&[2, 0, 1]));
        assert!(r.is_empty());
        let g = gcd(&mul(&p(&[-1, 1]), &p(&[3, 1])), &mul(&p(&[-1, 1]), &p(&[5, 1])));
        assert_eq!(g, p(&[-1, 1]));
    }

    #[test]
    fn shift() {
        // (x+2)^2 = x^2 + 4x + 4
        assert_eq!(taylor_shift(&p(&[0, 0, 1]), &int(2)), p(&[4, 4, 1]));
        assert_eq!(eval(&p(&[1, 2, 3]), &int(2)), int(17));
    }
}
