//! Forms on the `r`-dimensional affine chart `Y` of the Veronese image: the
//! ψ-generators, their wedge products, the pullback along `y = e(x)`, and a
//! truncated direct computation of top cohomology for `r = 2`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::matrix::{permutations_with_sign, ExactMatrix, SparseEliminator};
use crate::algebra::rational::{denominator_lcm, int, ExactScalar};
use crate::algebra::symmetric::{elementary_jacobian, elementary_symmetric};
use crate::algebra::{BaseSet, CoeffRing, LinFrac, Monomial, MultiPoly, RatFunc, Vars};
use crate::derham1d::{infinity_last_order, omission_index, w_generators, WMember};
use crate::error::{Error, Result};
use crate::form::DifferentialForm;
use crate::partition::{Partition, StratumMatrix};
use crate::theta::{linfrac_one_form, omega_1d, omega_r, validate_params, CharacterParams, Mode, ThetaSystem};
use crate::veronese::veronese_lambda;

pub use crate::form::symmetrize;

/// `coefficient · dy_1 ∧ ⋯ ∧ dy_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct RTopForm {
    pub coefficient: RatFunc,
}

impl RTopForm {
    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn to_form(&self) -> DifferentialForm {
        DifferentialForm::top(self.coefficient.clone())
    }
}

/// Determinant by permutation expansion over any coefficient ring.
pub fn leibniz<R: CoeffRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|row| row.len() == n), "square, non-empty matrix");
    let mut acc = m[0][0].zero_like();
    for (perm, sign) in permutations_with_sign(n) {
        let mut term = m[0][perm[0]].clone();
        for (i, &p) in perm.iter().enumerate().skip(1) {
            if term.is_zero_elem() {
                break;
            }
            term = term.mul_elem(&m[i][p]);
        }
        acc = if sign > 0 { acc.add_elem(&term) } else { acc.sub_elem(&term) };
    }
    acc
}

/// `ψ_1 ∧ ⋯ ∧ ψ_r` for `r` one-forms in `r` variables.
pub fn wedge_r_form(forms: &[DifferentialForm]) -> Result<RTopForm> {
    let r = forms.len();
    if r == 0 || forms.iter().any(|f| f.degree() != 1 || f.vars().len() != r) {
        return Err(Error::Invalid("need r one-forms in r variables".into()));
    }
    let m: Vec<Vec<RatFunc>> = forms.iter().map(|f| f.one_form_coeffs()).collect();
    Ok(RTopForm { coefficient: leibniz(&m) })
}

/// Pullback along `y_i = e_i(x_1, …, x_r)`.
pub fn pullback_to_xr(form: &DifferentialForm) -> Result<DifferentialForm> {
    let x = Vars::indexed("x", form.vars().len());
    let e = elementary_symmetric(&x);
    form.pullback(&e[1..])
}

/// The W-generators of a stratum point with one omitted, in a chart where a
/// block at infinity, if any, is last.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    pub members: Vec<WMember>,
    pub omitted: WMember,
    pub infinity: bool,
    /// `block_order[i]` is the original index of chart block `i`.
    pub block_order: Vec<usize>,
    coeffs: Vec<Vec<LinFrac>>,
    sys: ThetaSystem,
}

impl GeneratorBasis {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `dy_i`-coefficients of generator `j`.
    pub fn coefficients(&self, j: usize) -> &[LinFrac] {
        &self.coeffs[j]
    }

    pub fn base_set(&self) -> &BaseSet {
        self.sys.base_set()
    }

    pub fn system(&self) -> &ThetaSystem {
        &self.sys
    }

    pub fn forms(&self) -> Vec<DifferentialForm> {
        self.coeffs.iter().map(|c| linfrac_one_form(self.sys.vars(), c)).collect()
    }
}

fn checked_params(w: &StratumMatrix, params: &CharacterParams) -> Result<()> {
    let mut violations = validate_params(params, w.partition(), w.r());
    if params.mode != Mode::Cohomology {
        violations.push("cohomology-mode parameters required".into());
    }
    if !violations.is_empty() {
        return Err(Error::InvalidParams(violations));
    }
    if let Some(mu) = w.stratum_witness() {
        return Err(Error::Invalid(format!("point is outside the generic stratum: minor {mu} vanishes")));
    }
    Ok(())
}

fn permuted_params(params: &CharacterParams, order: &[usize]) -> CharacterParams {
    CharacterParams::new(order.iter().map(|&k| params.alpha[k].clone()).collect(), params.mode)
}

/// Builds the generators over `point`, which is already in chart block order.
fn generator_basis(point: &StratumMatrix, chart_params: &CharacterParams, order: Vec<usize>, vars: &Vars) -> Result<GeneratorBasis> {
    let sys = ThetaSystem::new(point, vars)?;
    let drop = omission_index(chart_params).ok_or_else(|| Error::InvalidParams(vec!["ω vanishes".into()]))?;
    let mut members = Vec::new();
    let mut coeffs = Vec::new();
    let mut omitted = None;
    for (j, (m, c)) in w_generators(&sys, &order).into_iter().enumerate() {
        if j == drop {
            omitted = Some(m);
        } else {
            members.push(m);
            coeffs.push(c);
        }
    }
    let infinity = sys.at_infinity(sys.num_blocks() - 1);
    Ok(GeneratorBasis { members, omitted: omitted.unwrap(), infinity, block_order: order, coeffs, sys })
}

fn basis_at(w: &StratumMatrix, params: &CharacterParams, vars: &Vars) -> Result<GeneratorBasis> {
    checked_params(w, params)?;
    let order = infinity_last_order(w);
    let wc = w.permute_blocks(&order);
    let pc = permuted_params(params, &order);
    generator_basis(&wc, &pc, order, vars)
}

/// The `N − 2` one-forms `ψ_j` on `Y` in variables `y1..yr`, selected like the
/// line basis: a block at infinity is rotated last and the last generator with
/// a nonzero `ω̃`-coefficient is omitted.
pub fn psi_forms(w: &StratumMatrix, params: &CharacterParams) -> Result<GeneratorBasis> {
    basis_at(w, params, &Vars::indexed("y", w.r()))
}

/// The line basis `φ_j` of a 2-row point, as coefficient fractions in `x`.
pub fn phi_generators(z: &StratumMatrix, params: &CharacterParams) -> Result<GeneratorBasis> {
    if z.r() != 1 {
        return Err(Error::Invalid("the line basis needs a 2-row matrix".into()));
    }
    basis_at(z, params, &Vars::new(["x"]))
}

/// Outcome of one wedge pullback comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeCheck {
    pub indices: Vec<usize>,
    pub holds: bool,
    /// Leading monomial of the difference of numerators when the identity fails.
    pub mismatch: Option<String>,
}

/// Bases `l(x_b)` for every affine line base `l` and copy `b`, indexed `b·n + i`.
fn copy_bases(line: &BaseSet, x: &Vars) -> BaseSet {
    let r = x.len();
    let mut bases = Vec::with_capacity(r * line.len());
    for b in 0..r {
        let img = [MultiPoly::var(x, b)];
        bases.extend(line.bases().iter().map(|l| l.substitute(&img)));
    }
    BaseSet::new(x, bases)
}

/// `g(x_b)` for a fraction `g` on the line.
fn line_copy(g: &LinFrac, xset: &BaseSet, b: usize) -> LinFrac {
    let x = xset.vars();
    let nb = g.set().len();
    let images: Vec<_> = (0..nb)
        .map(|i| {
            let mut e = smallvec::SmallVec::from_elem(0u32, xset.len());
            e[b * nb + i] = 1;
            (ExactScalar::one(), e)
        })
        .collect();
    g.pullback(xset, &[MultiPoly::var(x, b)], &images)
}

/// Pullback of a fraction on `Y` along `y = e(x)`, with every base factored
/// into copies of the line bases.
fn symmetric_pullback(c: &LinFrac, xset: &BaseSet) -> Result<LinFrac> {
    let e = elementary_symmetric(xset.vars());
    let mut images = Vec::with_capacity(c.set().len());
    for base in c.set().bases() {
        let q = base.substitute(&e[1..]);
        images.push(xset.factor(&q).ok_or_else(|| Error::Invalid(format!("{q} does not split into line factors")))?);
    }
    Ok(c.pullback(xset, &e[1..], &images))
}

/// Checks `π*(ψ_{j_1} ∧ ⋯ ∧ ψ_{j_r}) = Σ_σ sgn σ φ_{j_σ(1)}(x_1) ∧ ⋯ ∧ φ_{j_σ(r)}(x_r)`
/// at `w = Φ_λ(z)`.
///
/// The left side is a determinant over `Y` pulled back through `e` and the
/// Jacobian `det(∂e/∂x)`; the right side is built from copies of the line forms.
pub fn verify_wedge_pullback(z: &StratumMatrix, r: usize, params: &CharacterParams, indices: &[usize]) -> Result<WedgeCheck> {
    let phi = phi_generators(z, params)?;
    let w = veronese_lambda(z, r)?.target_stratum()?;
    let psi = psi_forms(&w, params)?;
    if phi.members != psi.members {
        return Err(Error::Invalid("line and Veronese generator lists differ".into()));
    }
    if indices.len() != r || indices.iter().any(|&j| j >= psi.len()) || indices.windows(2).any(|p| p[0] >= p[1]) {
        return Err(Error::Invalid(format!("need {r} increasing indices below {}", psi.len())));
    }
    let x = Vars::indexed("x", r);
    let xset = copy_bases(phi.base_set(), &x);

    let ymat: Vec<Vec<LinFrac>> = indices.iter().map(|&j| psi.coefficients(j).to_vec()).collect();
    let jac: Vec<Vec<MultiPoly>> = elementary_jacobian(&x);
    let lhs = symmetric_pullback(&leibniz(&ymat), &xset)?.mul_poly(&leibniz(&jac));

    let xmat: Vec<Vec<LinFrac>> =
        indices.iter().map(|&j| (0..r).map(|b| line_copy(&phi.coefficients(j)[0], &xset, b)).collect()).collect();
    let rhs = leibniz(&xmat);

    let diff = lhs.sub(&rhs);
    let mismatch = diff.num().leading_term().map(|(m, _)| MultiPoly::monomial(&x, m.clone(), int(1)).to_string());
    Ok(WedgeCheck { indices: indices.to_vec(), holds: mismatch.is_none(), mismatch })
}

/// `π*ψ_j = Σ_b φ_j(x_b)` for every generator, through the general form pullback.
pub fn check_psi_pullback(z: &StratumMatrix, r: usize, params: &CharacterParams) -> Result<bool> {
    let phi = phi_generators(z, params)?;
    let w = veronese_lambda(z, r)?.target_stratum()?;
    let psi = psi_forms(&w, params)?;
    let x = Vars::indexed("x", r);
    for (p, f) in psi.forms().iter().zip(phi.forms()) {
        let sum = (0..r).try_fold(DifferentialForm::zero(&x, 1), |acc, b| {
            f.pullback(&[MultiPoly::var(&x, b)]).map(|g| acc.add(&g))
        })?;
        if pullback_to_xr(p)? != sum {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `π*ω̃ = Σ_b π_b*ω` at `w = Φ_λ(z)`.
pub fn check_omega_pullback(z: &StratumMatrix, r: usize, params: &CharacterParams) -> Result<bool> {
    let w = veronese_lambda(z, r)?.target_stratum()?;
    let lhs = pullback_to_xr(&omega_r(&w, params)?)?;
    let omega = omega_1d(z, params)?;
    let x = Vars::indexed("x", r);
    let mut rhs = DifferentialForm::zero(&x, 1);
    for b in 0..r {
        rhs = rhs.add(&omega.pullback(&[MultiPoly::var(&x, b)])?);
    }
    Ok(lhs == rhs)
}

/// Truncated top cohomology of `(Ω•(Y), ∇_ω̃)` for `r = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HrRank {
    /// `dim V_d − dim(V_d ∩ ∇U_{d+1})`.
    pub rank: usize,
    /// Rank of the `C(N−2, 2)` wedge classes modulo `∇U_{d+1}`.
    pub wedge_rank: usize,
    pub expected: usize,
    pub stabilized: bool,
    pub d: usize,
    /// Pole-order bound of the 1-form truncation.
    pub one_form_bound: usize,
    pub two_form_dim: usize,
    pub one_form_dim: usize,
}

/// `g ∈ GL_{r+1}` with `g · v = e_0`.
fn frame_sending_to_e0(v: &[ExactScalar]) -> Result<ExactMatrix> {
    let n = v.len();
    let mut cols = vec![v.to_vec()];
    for j in 0..n {
        let mut e = vec![int(0); n];
        e[j] = int(1);
        let mut trial = cols.clone();
        trial.push(e);
        if ExactMatrix::from_columns(&trial).rank() == trial.len() {
            cols = trial;
        }
        if cols.len() == n {
            break;
        }
    }
    ExactMatrix::from_columns(&cols).inverse()
}

/// The arrangement with its last block moved to the line at infinity.
struct PlaneChart {
    basis: GeneratorBasis,
    omega: Vec<LinFrac>,
    blocks: usize,
}

impl PlaneChart {
    fn new(w: &StratumMatrix, params: &CharacterParams) -> Result<Self> {
        checked_params(w, params)?;
        let order = infinity_last_order(w);
        let mut wc = w.permute_blocks(&order);
        let pc = permuted_params(params, &order);
        let ell = wc.partition().len();
        let last = wc.column(ell - 1, 0);
        if !last[1..].iter().all(|c| c.is_zero()) {
            wc = wc.left_mul(&frame_sending_to_e0(&last)?);
        }
        let y = Vars::indexed("y", wc.r());
        let basis = generator_basis(&wc, &pc, order, &y)?;
        let omega = basis.sys.omega_coeffs(&pc);
        Ok(PlaneChart { basis, omega, blocks: ell })
    }

    fn set(&self) -> &BaseSet {
        self.basis.base_set()
    }

    /// `y^a / Π L^bound` for all `|a| ≤ max_deg`.
    fn atoms(&self, max_deg: i64, bound: u32) -> Vec<LinFrac> {
        let y = self.set().vars();
        let exps: smallvec::SmallVec<[u32; 8]> = smallvec::SmallVec::from_elem(bound, self.set().len());
        let mut out = Vec::new();
        for deg in 0..=max_deg.max(-1) {
            let deg = deg as u32;
            for a in 0..=deg {
                let m = Monomial(smallvec::smallvec![deg - a, a]);
                out.push(LinFrac::new(self.set(), MultiPoly::monomial(y, m, int(1)), exps.clone()));
            }
        }
        out
    }

    /// `∇(f dy_1)` and `∇(f dy_2)` as `dy_1 ∧ dy_2` coefficients.
    fn nabla(&self, f: &LinFrac) -> [LinFrac; 2] {
        let on_dy1 = f.derivative(1).add(&self.omega[1].mul(f)).neg();
        let on_dy2 = f.derivative(0).add(&self.omega[0].mul(f));
        [on_dy1, on_dy2]
    }

    fn wedges(&self) -> Vec<LinFrac> {
        let b = &self.basis;
        let mut out = Vec::new();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let (p, q) = (b.coefficients(i), b.coefficients(j));
                out.push(p[0].mul(&q[1]).sub(&p[1].mul(&q[0])));
            }
        }
        out
    }

    /// `(rank, wedge_rank, dim V, dim U)` at two-form bound `d` and one-form bound `d1`.
    fn ranks(&self, d: usize, d1: usize) -> (usize, usize, usize, usize) {
        let ell = self.blocks as i64;
        let v = self.atoms(ell * d as i64 - 3, d as u32);
        let u_atoms = self.atoms(ell * d1 as i64 - 2, d1 as u32);
        let image: Vec<LinFrac> = u_atoms.iter().flat_map(|f| self.nabla(f)).collect();
        let wedges = self.wedges();

        let nb = self.set().len();
        let mut top = vec![0u32; nb];
        for f in v.iter().chain(&image).chain(&wedges) {
            for (t, &e) in top.iter_mut().zip(f.exps()) {
                *t = (*t).max(e);
            }
        }
        let mut index = MonomialIndex::default();
        let mut rows = |fs: &[LinFrac]| -> Vec<Vec<(usize, BigInt)>> { fs.iter().map(|f| index.row(&f.numerator_over(&top))).collect() };
        let image_rows = rows(&image);
        let v_rows = rows(&v);
        let wedge_rows = rows(&wedges);

        let mut exact = SparseEliminator::default();
        let base = exact.insert_all(image_rows);
        let mut with_v = exact.clone();
        let rank = with_v.insert_all(v_rows) - base;
        let wedge_rank = exact.insert_all(wedge_rows) - base;
        (rank, wedge_rank, v.len(), 2 * u_atoms.len())
    }
}

#[derive(Default)]
struct MonomialIndex(HashMap<Monomial, usize>);

impl MonomialIndex {
    fn row(&mut self, p: &MultiPoly) -> Vec<(usize, BigInt)> {
        let l = denominator_lcm(p.terms().map(|(_, c)| c));
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(p.num_terms());
        // Highest monomials first keeps pivots on leading terms.
        for (m, c) in p.terms().rev() {
            let len = self.0.len();
            let i = *self.0.entry(m.clone()).or_insert(len);
            out.push((i, c.numer() * (&l / c.denom())));
        }
        out
    }
}

/// Truncated `H²` rank at bounds `d` and `d + 1` (one-form bound one higher
/// than the two-form bound in each case). Only `r = 2` is supported.
pub fn hr_rank_truncated(w: &StratumMatrix, params: &CharacterParams, d: usize) -> Result<HrRank> {
    if w.r() != 2 {
        return Err(Error::UnsupportedR);
    }
    if d == 0 {
        return Err(Error::Invalid("degree bound must be positive".into()));
    }
    let chart = PlaneChart::new(w, params)?;
    let (rank, wedge_rank, two_form_dim, one_form_dim) = chart.ranks(d, d + 1);
    let (rank2, wedge2, _, _) = chart.ranks(d + 1, d + 2);
    let n = w.n_total();
    Ok(HrRank {
        rank,
        wedge_rank,
        expected: (n - 2) * (n - 3) / 2,
        stabilized: rank == rank2 && wedge_rank == wedge2,
        d,
        one_form_bound: d + 1,
        two_form_dim,
        one_form_dim,
    })
}

/// A truncated `H²` computation at a sampled point of `Z_3`, reported as evidence only.
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureEvidence {
    pub lambda: Vec<usize>,
    pub seed: u64,
    pub point: serde_json::Value,
    pub alpha: serde_json::Value,
    pub result: HrRank,
}

pub fn conjecture_probe(lambda: &Partition, seed: u64, bound: u64, d: usize) -> Result<ConjectureEvidence> {
    let w = crate::partition::sample_stratum_point(lambda, 2, seed, bound)?;
    let params = CharacterParams::sample(lambda, 2, Mode::Cohomology, seed)?;
    let result = hr_rank_truncated(&w, &params, d)?;
    Ok(ConjectureEvidence { lambda: lambda.parts().to_vec(), seed, point: w.to_json(), alpha: params.to_json(), result })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::combinations;
    use crate::algebra::rational::rat;
    use crate::derham1d::h1_basis;

    fn rf(s: &str, v: &Vars) -> RatFunc {
        RatFunc::from_poly(MultiPoly::parse(s, v).unwrap())
    }

    #[test]
    fn wedge_examples() {
        let y = Vars::indexed("y", 2);
        let dy1 = DifferentialForm::dvar(&y, 0);
        let dy2 = DifferentialForm::dvar(&y, 1);
        assert!(wedge_r_form(&[dy1.clone(), dy1.clone()]).unwrap().is_zero());
        assert_eq!(wedge_r_form(&[dy1, dy2]).unwrap().coefficient, RatFunc::one(&y));
        let a = DifferentialForm::one_form(&y, vec![rf("y1", &y), rf("2", &y)]);
        let b = DifferentialForm::one_form(&y, vec![rf("3", &y), rf("y2", &y)]);
        assert_eq!(wedge_r_form(&[a, b]).unwrap().coefficient, rf("y1*y2 - 6", &y));
    }

    #[test]
    fn pullback_examples() {
        let y = Vars::indexed("y", 2);
        let x = Vars::indexed("x", 2);
        let dx = |i| DifferentialForm::dvar(&x, i);
        assert_eq!(pullback_to_xr(&DifferentialForm::dvar(&y, 0)).unwrap(), dx(0).add(&dx(1)));
        let expect = dx(0).mul_function(&rf("x2", &x)).add(&dx(1).mul_function(&rf("x1", &x)));
        assert_eq!(pullback_to_xr(&DifferentialForm::dvar(&y, 1)).unwrap(), expect);
    }

    fn sample(l: &str, seed: u64) -> (StratumMatrix, CharacterParams) {
        let l = Partition::parse(l).unwrap();
        let z = crate::partition::sample_stratum_point(&l, 1, seed, 5).unwrap();
        let p = CharacterParams::sample(&l, 1, Mode::Cohomology, seed).unwrap();
        (z, p)
    }

    #[test]
    fn r1_psi_is_line_basis() {
        for l in ["1,1,1", "2,1", "3", "2,2"] {
            let (z, p) = sample(l, 3);
            let psi = psi_forms(&z, &p).unwrap();
            let phi = h1_basis(&z, &p).unwrap();
            assert_eq!(psi.members, phi.members);
            let y = Vars::indexed("y", 1);
            let renamed: Vec<_> = phi.forms.iter().map(|f| f.pullback(&[MultiPoly::var(&y, 0)]).unwrap()).collect();
            assert_eq!(psi.forms(), renamed);
        }
    }

    #[test]
    fn log_case_members() {
        let l = Partition::parse("1,1,1,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 0, 1, 1], &[0, 1, -1, 2]]).unwrap();
        let p = CharacterParams::new(vec![vec![rat(1, 2)], vec![rat(1, 3)], vec![rat(1, 5)], vec![rat(-31, 30)]], Mode::Cohomology);
        let w = veronese_lambda(&z, 2).unwrap().target_stratum().unwrap();
        let psi = psi_forms(&w, &p).unwrap();
        // Block 0 sits at infinity and is rotated last.
        assert_eq!(psi.block_order, vec![1, 2, 3, 0]);
        assert_eq!(psi.members, vec![WMember::Log { block: 1 }, WMember::Log { block: 2 }]);
        assert_eq!(psi.omitted, WMember::Log { block: 3 });
    }

    #[test]
    fn wedge_pullback_small() {
        for (l, r) in [("1,1,1,1", 2), ("2,1,1", 2), ("1,1,1,1,1", 3), ("3,1", 2)] {
            let (z, p) = sample(l, 11);
            let n = z.n_total();
            for idx in combinations(n - 2, r) {
                let c = verify_wedge_pullback(&z, r, &p, &idx).unwrap();
                assert!(c.holds, "{l} r={r} {idx:?}: {:?}", c.mismatch);
            }
            assert!(check_psi_pullback(&z, r, &p).unwrap(), "{l}");
            assert!(check_omega_pullback(&z, r, &p).unwrap(), "{l}");
        }
    }

    #[test]
    fn wedge_pullback_detects_wrong_pairing() {
        // Pairing ψ with the φ list of a different point breaks the identity.
        let (z, p) = sample("1,1,1,1", 2);
        let (z2, _) = sample("1,1,1,1", 9);
        let phi = phi_generators(&z2, &p).unwrap();
        let psi = psi_forms(&veronese_lambda(&z, 2).unwrap().target_stratum().unwrap(), &p).unwrap();
        let x = Vars::indexed("x", 2);
        let lhs = pullback_to_xr(&wedge_r_form(&psi.forms()).unwrap().to_form()).unwrap();
        let g = |j: usize, b: usize| phi.forms()[j].pullback(&[MultiPoly::var(&x, b)]).unwrap();
        let rhs = g(0, 0).wedge(&g(1, 1)).sub(&g(1, 0).wedge(&g(0, 1)));
        assert_ne!(lhs, rhs);
    }

    #[test]
    fn symmetrize_examples() {
        let x = Vars::indexed("x", 2);
        let dx1 = DifferentialForm::dvar(&x, 0);
        let half = dx1.add(&DifferentialForm::dvar(&x, 1)).scale(&rat(1, 2));
        assert_eq!(symmetrize(&dx1), half);
        assert_eq!(symmetrize(&half), half);
    }

    #[test]
    fn unsupported_r() {
        let l = Partition::parse("1,1,1,1,1").unwrap();
        let w = crate::partition::sample_stratum_point(&l, 3, 1, 5).unwrap();
        let p = CharacterParams::sample(&l, 3, Mode::Cohomology, 1).unwrap();
        assert_eq!(hr_rank_truncated(&w, &p, 1), Err(Error::UnsupportedR));
    }

    #[test]
    fn hr_rank_four_lines() {
        let (z, p) = sample("1,1,1,1", 4);
        let w = veronese_lambda(&z, 2).unwrap().target_stratum().unwrap();
        let h = hr_rank_truncated(&w, &p, 1).unwrap();
        assert_eq!((h.rank, h.wedge_rank, h.stabilized), (1, 1, true), "{h:?}");
    }

    #[test]
    fn hr_rank_five_lines() {
        let (z, p) = sample("1,1,1,1,1", 6);
        let w = veronese_lambda(&z, 2).unwrap().target_stratum().unwrap();
        let h = hr_rank_truncated(&w, &p, 1).unwrap();
        assert_eq!((h.rank, h.wedge_rank, h.stabilized), (3, 3, true), "{h:?}");
    }

    #[test]
    fn probe_runs() {
        for l in ["1,1,1,1", "2,1,1", "2,2", "3,1"] {
            let e = conjecture_probe(&Partition::parse(l).unwrap(), 2, 5, 1).unwrap();
            assert_eq!(e.result.expected, 1);
        }
    }
}
