//! Elementary symmetric polynomials and the substitution `y_i ↦ e_i(x)`.

use super::poly::{MultiPoly, Vars};

/// `e_0, …, e_r` in the variables of `x` (which must have `r` variables).
pub fn elementary_symmetric(x: &Vars) -> Vec<MultiPoly> {
    let r = x.len();
    let mut e = vec![MultiPoly::one(x)];
    e.resize(r + 1, MultiPoly::zero(x));
    for j in 0..r {
        let xj = MultiPoly::var(x, j);
        for i in (1..=j + 1).rev() {
            e[i] = &e[i] + &(&e[i - 1] * &xj);
        }
    }
    e
}

/// Replaces each `y_i` by `e_i(x_1, …, x_r)`; `x` must have as many variables as `p`.
pub fn elem_sym_substitute(p: &MultiPoly, x: &Vars) -> MultiPoly {
    assert_eq!(p.nvars(), x.len(), "one x variable per y variable");
    let e = elementary_symmetric(x);
    p.substitute(&e[1..])
}

/// `∂e_i/∂x_j` for `i, j = 1..r`, row `i - 1`, column `j - 1`.
pub fn elementary_jacobian(x: &Vars) -> Vec<Vec<MultiPoly>> {
    let e = elementary_symmetric(x);
    (1..=x.len())
        .map(|i| (0..x.len()).map(|j| e[i].derivative(j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_examples() {
        let y = Vars::indexed("y", 2);
        let x = Vars::indexed("x", 2);
        let p = |s: &str, v: &Vars| MultiPoly::parse(s, v).unwrap();
        assert_eq!(elem_sym_substitute(&p("y1", &y), &x), p("x1 + x2", &x));
        assert_eq!(elem_sym_substitute(&p("y2", &y), &x), p("x1*x2", &x));
        assert_eq!(elem_sym_substitute(&p("y1^2 - y2", &y), &x), p("x1^2 + x1*x2 + x2^2", &x));
    }

    #[test]
    fn jacobian_r2() {
        let x = Vars::indexed("x", 2);
        let j = elementary_jacobian(&x);
        assert_eq!(j[1][0], MultiPoly::var(&x, 1));
        assert_eq!(j[1][1], MultiPoly::var(&x, 0));
    }
}
