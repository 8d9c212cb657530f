//! The twisted de Rham complex on the line minus the block points.
//!
//! Functions and 1-forms are kept in partial-fraction coordinates: atoms
//! `x^m` (only when a block sits at infinity) and `(x − p_k)^{−s}` at the
//! affine block points `p_k = −z_{00}^(k)/z_{10}^(k)`. The truncated complex
//! of bound `d` maps functions with pole order `≤ d` at every point to forms
//! with pole order `≤ d + n_k` at `p_k`, which is exactly where `∇_ω` lands.

use num_traits::{One, Zero};

use crate::algebra::matrix::ExactMatrix;
use crate::algebra::rational::{int, ExactScalar};
use crate::algebra::upoly::{self, UPoly};
use crate::algebra::{LinFrac, MultiPoly, RatFunc, Vars};
use crate::error::{Error, Result};
use crate::form::DifferentialForm;
use crate::partition::StratumMatrix;
use crate::theta::{linfrac_one_form, omega_form, validate_params, CharacterParams, Mode, ThetaSystem};

/// `dg + g ω` for a function `g`.
pub fn nabla_apply(g: &RatFunc, omega: &DifferentialForm) -> DifferentialForm {
    DifferentialForm::function(g.clone()).d().add(&omega.mul_function(g))
}

/// `dφ + ω ∧ φ` for a form of any degree.
pub fn nabla_form(phi: &DifferentialForm, omega: &DifferentialForm) -> DifferentialForm {
    phi.d().add(&omega.wedge(phi))
}

/// `num / Π_k (x − p_k)^{exps_k}` over a fixed list of points.
#[derive(Clone, Debug, PartialEq)]
struct Frac1 {
    num: UPoly,
    exps: Vec<u32>,
}

fn linear_power(p: &ExactScalar, e: u32) -> UPoly {
    let lin = vec![-p.clone(), ExactScalar::one()];
    let mut out = vec![ExactScalar::one()];
    for _ in 0..e {
        out = upoly::mul(&out, &lin);
    }
    out
}

fn product(points: &[ExactScalar], exps: &[u32]) -> UPoly {
    points
        .iter()
        .zip(exps)
        .fold(vec![ExactScalar::one()], |acc, (p, &e)| upoly::mul(&acc, &linear_power(p, e)))
}

/// Partial-fraction expansion: polynomial part plus principal parts, with
/// `principal[k][s − 1]` the coefficient of `(x − p_k)^{−s}`.
#[derive(Clone, Debug, PartialEq)]
struct PartialFractions {
    poly: UPoly,
    principal: Vec<Vec<ExactScalar>>,
}

impl Frac1 {
    fn lift(&self, points: &[ExactScalar], target: &[u32]) -> UPoly {
        let extra: Vec<u32> = target.iter().zip(&self.exps).map(|(t, e)| t - e).collect();
        upoly::mul(&self.num, &product(points, &extra))
    }

    fn add(&self, other: &Frac1, points: &[ExactScalar]) -> Frac1 {
        let exps: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let num = upoly::add(&self.lift(points, &exps), &other.lift(points, &exps));
        Frac1 { num, exps }
    }

    fn mul(&self, other: &Frac1) -> Frac1 {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Frac1 { num: upoly::mul(&self.num, &other.num), exps }
    }

    fn derivative(&self, points: &[ExactScalar]) -> Frac1 {
        let exps: Vec<u32> = self.exps.iter().map(|&e| if e > 0 { e + 1 } else { 0 }).collect();
        let ones: Vec<u32> = self.exps.iter().map(|&e| u32::from(e > 0)).collect();
        let mut num = upoly::mul(&upoly::derivative(&self.num), &product(points, &ones));
        for (k, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut others = ones.clone();
            others[k] = 0;
            let term = upoly::mul(&self.num, &product(points, &others));
            num = upoly::add(&num, &upoly::scale(&term, &int(-(e as i64))));
        }
        Frac1 { num, exps }
    }

    fn decompose(&self, points: &[ExactScalar]) -> PartialFractions {
        let den = product(points, &self.exps);
        let (poly, _) = upoly::div_rem(&self.num, &den);
        let mut principal = Vec::with_capacity(points.len());
        for (k, p) in points.iter().enumerate() {
            let e = self.exps[k] as usize;
            if e == 0 || upoly::degree(&self.num).is_none() {
                principal.push(Vec::new());
                continue;
            }
            let mut rest = self.exps.clone();
            rest[k] = 0;
            let q = upoly::taylor_shift(&product(points, &rest), p);
            let n = upoly::taylor_shift(&self.num, p);
            // Series division n / q in the local coordinate u = x − p, up to u^{e−1}.
            let get = |v: &UPoly, i: usize| v.get(i).cloned().unwrap_or_else(ExactScalar::zero);
            let q0_inv = get(&q, 0).recip();
            let mut c: Vec<ExactScalar> = Vec::with_capacity(e);
            for j in 0..e {
                let mut acc = get(&n, j);
                for i in 1..=j {
                    acc -= get(&q, i) * &c[j - i];
                }
                c.push(acc * &q0_inv);
            }
            // u^j / u^e is the atom of order e − j.
            principal.push((1..=e).map(|s| c[e - s].clone()).collect());
        }
        PartialFractions { poly, principal }
    }
}

/// Writes a univariate rational function over the given points; fails if it
/// has a pole elsewhere.
fn frac_of(f: &RatFunc, points: &[ExactScalar]) -> Result<Frac1> {
    let num = f.num().to_univariate(0).expect("univariate");
    let mut den = f.den().to_univariate(0).expect("univariate");
    let mut exps = vec![0u32; points.len()];
    for (k, p) in points.iter().enumerate() {
        let lin = linear_power(p, 1);
        loop {
            if upoly::degree(&den).unwrap_or(0) == 0 {
                break;
            }
            let (q, r) = upoly::div_rem(&den, &lin);
            if upoly::degree(&r).is_some() {
                break;
            }
            den = q;
            exps[k] += 1;
        }
    }
    if upoly::degree(&den) != Some(0) {
        return Err(Error::Invalid("form has a pole away from the block points".into()));
    }
    Ok(Frac1 { num: upoly::scale(&num, &den[0].recip()), exps })
}

/// One generator of the space of holomorphic combinations of `dθ_i^(k)`.
///
/// Block indices refer to the caller's original block order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WMember {
    /// `dθ_i^(k)`, `i ≥ 1`.
    Theta { block: usize, order: usize },
    /// `d log l_0^(k) − d log l_0^(ℓ)` (all points affine).
    LogDifference { block: usize, last: usize },
    /// `d log l_0^(k)` (last block at infinity).
    Log { block: usize },
}

impl std::fmt::Display for WMember {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WMember::Theta { block, order } => write!(f, "dθ_{order}^({})", block + 1),
            WMember::LogDifference { block, last } => write!(f, "dθ_0^({}) - dθ_0^({})", block + 1, last + 1),
            WMember::Log { block } => write!(f, "dθ_0^({})", block + 1),
        }
    }
}

/// Coefficient vectors of the W-generators of an arrangement given in a chart
/// whose block at infinity, if any, is last. `order` maps chart blocks to
/// caller block indices.
pub(crate) fn w_generators(sys: &ThetaSystem, order: &[usize]) -> Vec<(WMember, Vec<LinFrac>)> {
    let ell = sys.num_blocks();
    let infinity = sys.at_infinity(ell - 1);
    let mut out = Vec::new();
    for (k, &block) in order.iter().enumerate().take(ell) {
        for i in 1..sys.block_size(k) {
            out.push((WMember::Theta { block, order: i }, sys.dtheta(k, i)));
        }
    }
    let last = sys.dtheta(ell - 1, 0);
    for k in 0..ell - 1 {
        let f = sys.dtheta(k, 0);
        if infinity {
            out.push((WMember::Log { block: order[k] }, f));
        } else {
            let diff = f.iter().zip(&last).map(|(a, b)| a.sub(b)).collect();
            out.push((WMember::LogDifference { block: order[k], last: order[ell - 1] }, diff));
        }
    }
    out
}

/// W-coordinates of `ω` for parameters in chart block order.
pub(crate) fn omega_coordinates(params: &CharacterParams) -> Vec<ExactScalar> {
    let ell = params.alpha.len();
    let mut out = Vec::new();
    for block in &params.alpha {
        out.extend(block[1..].iter().cloned());
    }
    for block in &params.alpha[..ell - 1] {
        out.push(block[0].clone());
    }
    out
}

/// Position of the generator left out of the cohomology basis: the last one
/// with a nonzero coefficient in `ω`.
pub(crate) fn omission_index(params: &CharacterParams) -> Option<usize> {
    omega_coordinates(params).iter().rposition(|c| !c.is_zero())
}

/// The line arrangement of a 2-row stratum point in a chart where a block
/// at infinity, if any, is the last one.
#[derive(Clone, Debug)]
pub struct LineChart {
    /// `order[i]` is the original index of chart block `i`.
    order: Vec<usize>,
    z: StratumMatrix,
    params: CharacterParams,
    sys: ThetaSystem,
    /// Affine block points in chart block order.
    points: Vec<ExactScalar>,
    /// Pole order `n_k` of `ω` at each affine point.
    orders: Vec<u32>,
    /// `n_ℓ` when the last block sits at infinity.
    infinity: Option<u32>,
    omega: Frac1,
}

/// Cyclic rotation putting a block at infinity (`z_{i0}^(k) = 0` for `i ≥ 1`) last.
pub fn infinity_last_order(z: &StratumMatrix) -> Vec<usize> {
    let ell = z.partition().len();
    match (0..ell).find(|&k| z.column(k, 0)[1..].iter().all(|c| c.is_zero())) {
        Some(k) => (1..=ell).map(|i| (k + i) % ell).collect(),
        None => (0..ell).collect(),
    }
}

impl LineChart {
    pub fn new(z: &StratumMatrix, params: &CharacterParams) -> Result<Self> {
        if z.r() != 1 {
            return Err(Error::Invalid("the line complex needs a 2-row matrix".into()));
        }
        if let Some(mu) = z.stratum_witness() {
            return Err(Error::Invalid(format!("point is outside the generic stratum: minor {mu} vanishes")));
        }
        if params.alpha.len() != z.partition().len() {
            return Err(Error::InvalidParams(validate_params(params, z.partition(), 1)));
        }
        let order = infinity_last_order(z);
        let zc = z.permute_blocks(&order);
        let pc = CharacterParams::new(order.iter().map(|&k| params.alpha[k].clone()).collect(), params.mode);
        let x = Vars::new(["x"]);
        let sys = ThetaSystem::new(&zc, &x)?;
        let ell = zc.partition().len();
        let mut points = Vec::new();
        let mut orders = Vec::new();
        let mut infinity = None;
        for k in 0..ell {
            let c = zc.column(k, 0);
            let n = zc.partition().parts()[k] as u32;
            if c[1].is_zero() {
                assert_eq!(k, ell - 1, "at most one block at infinity, rotated last");
                infinity = Some(n);
            } else {
                points.push(-&c[0] / &c[1]);
                orders.push(n);
            }
        }
        let omega_rf = omega_form(&zc, &pc, &x)?.one_form_coeffs().remove(0);
        let omega = frac_of(&omega_rf, &points)?;
        Ok(LineChart { order, z: zc, params: pc, sys, points, orders, infinity, omega })
    }

    pub fn block_order(&self) -> &[usize] {
        &self.order
    }

    pub fn has_infinity(&self) -> bool {
        self.infinity.is_some()
    }

    pub fn points(&self) -> &[ExactScalar] {
        &self.points
    }

    /// The chart's stratum point, blocks reordered.
    pub fn point(&self) -> &StratumMatrix {
        &self.z
    }

    pub fn params(&self) -> &CharacterParams {
        &self.params
    }

    pub fn omega(&self) -> DifferentialForm {
        linfrac_one_form(self.sys.vars(), &self.sys.omega_coeffs(&self.params))
    }

    /// Pole order of `ω` at each affine block point.
    pub fn omega_pole_orders(&self) -> Vec<usize> {
        self.omega.decompose(&self.points).principal.iter().map(|p| p.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1)).collect()
    }

    /// Generators of the W-space with labels, in display order.
    pub fn w_members(&self) -> Vec<(WMember, DifferentialForm)> {
        let x = self.sys.vars();
        w_generators(&self.sys, &self.order).into_iter().map(|(m, c)| (m, linfrac_one_form(x, &c))).collect()
    }

    /// The coefficient of each W-generator in `ω`.
    pub fn omega_coordinates(&self) -> Vec<ExactScalar> {
        omega_coordinates(&self.params)
    }

    /// Codomain layout at bound `d`: polynomial slots then pole slots per point.
    fn codomain_dim(&self, d: usize) -> usize {
        self.poly_len(d) + self.orders.iter().map(|&n| d + n as usize).sum::<usize>()
    }

    fn poly_len(&self, d: usize) -> usize {
        self.infinity.map_or(0, |n| d + n as usize - 1)
    }

    /// Basis atoms of functions with pole order `≤ d`.
    fn domain_atoms(&self, d: usize) -> Vec<Frac1> {
        let np = self.points.len();
        let mut out = vec![Frac1 { num: vec![ExactScalar::one()], exps: vec![0; np] }];
        if self.has_infinity() {
            for m in 1..=d {
                let mut num = vec![ExactScalar::zero(); m + 1];
                num[m] = ExactScalar::one();
                out.push(Frac1 { num, exps: vec![0; np] });
            }
        }
        for k in 0..np {
            for s in 1..=d as u32 {
                let mut exps = vec![0; np];
                exps[k] = s;
                out.push(Frac1 { num: vec![ExactScalar::one()], exps });
            }
        }
        out
    }

    fn vectorize(&self, f: &Frac1, d: usize) -> Result<Vec<ExactScalar>> {
        let pf = f.decompose(&self.points);
        let mut v = vec![ExactScalar::zero(); self.codomain_dim(d)];
        let pl = self.poly_len(d);
        if upoly::degree(&pf.poly).is_some_and(|deg| deg >= pl) {
            return Err(Error::IncreaseDegreeBound);
        }
        for (m, c) in pf.poly.iter().enumerate() {
            if !c.is_zero() {
                v[m] = c.clone();
            }
        }
        let mut off = pl;
        for (k, pr) in pf.principal.iter().enumerate() {
            let bound = d + self.orders[k] as usize;
            for (s1, c) in pr.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if s1 >= bound {
                    return Err(Error::IncreaseDegreeBound);
                }
                v[off + s1] = c.clone();
            }
            off += bound;
        }
        Ok(v)
    }

    fn nabla_frac(&self, g: &Frac1) -> Frac1 {
        g.derivative(&self.points).add(&g.mul(&self.omega), &self.points)
    }

    /// Columns are `∇_ω` of the domain atoms of bound `d`.
    pub fn nabla_matrix(&self, d: usize) -> ExactMatrix {
        let cols: Vec<Vec<ExactScalar>> = self
            .domain_atoms(d)
            .iter()
            .map(|g| self.vectorize(&self.nabla_frac(g), d).expect("∇ stays inside the truncation"))
            .collect();
        ExactMatrix::from_columns(&cols)
    }

    /// Dimension of the truncated space of regular 1-forms at bound `d`.
    pub fn omega1_dim(&self, d: usize) -> usize {
        // Without a point at infinity the residues must sum to zero.
        self.codomain_dim(d) - usize::from(!self.has_infinity())
    }

    pub fn omega0_dim(&self, d: usize) -> usize {
        1 + (self.points.len() + usize::from(self.has_infinity())) * d
    }

    fn form_vector(&self, phi: &DifferentialForm, d: usize) -> Result<Vec<ExactScalar>> {
        if phi.degree() != 1 || phi.vars().len() != 1 {
            return Err(Error::Invalid("expected a 1-form in one variable".into()));
        }
        let f = frac_of(&phi.one_form_coeffs().remove(0).with_vars(self.sys.vars()), &self.points)?;
        let v = self.vectorize(&f, d)?;
        if !self.has_infinity() {
            let mut off = 0;
            let mut residue_sum = ExactScalar::zero();
            for &n in &self.orders {
                residue_sum += &v[off];
                off += d + n as usize;
            }
            if !residue_sum.is_zero() {
                return Err(Error::Invalid("form has a pole at infinity".into()));
            }
        }
        Ok(v)
    }
}

/// A basis of `H¹` taken from the W-space with one generator omitted.
#[derive(Clone, Debug)]
pub struct CohomBasis1D {
    pub forms: Vec<DifferentialForm>,
    pub members: Vec<WMember>,
    pub omitted: WMember,
    pub infinity: bool,
    /// `block_order[i]` is the original index of chart block `i`.
    pub block_order: Vec<usize>,
}

/// The W-space generators; a block at infinity must already be last.
pub fn w_space_basis(z: &StratumMatrix, params: &CharacterParams) -> Result<Vec<DifferentialForm>> {
    let chart = LineChart::new(z, params)?;
    let ell = z.partition().len();
    assert!(
        chart.order.iter().copied().eq(0..ell),
        "a block at infinity must be the last block"
    );
    Ok(chart.w_members().into_iter().map(|(_, f)| f).collect())
}

/// Omits the last W-generator whose coefficient in `ω` is nonzero.
pub fn h1_basis(z: &StratumMatrix, params: &CharacterParams) -> Result<CohomBasis1D> {
    let violations = validate_params(params, z.partition(), 1);
    if !violations.is_empty() {
        return Err(Error::InvalidParams(violations));
    }
    if params.mode != Mode::Cohomology {
        return Err(Error::InvalidParams(vec!["cohomology-mode parameters required".into()]));
    }
    let chart = LineChart::new(z, params)?;
    Ok(basis_from_chart(&chart))
}

fn basis_from_chart(chart: &LineChart) -> CohomBasis1D {
    let members = chart.w_members();
    let drop = omission_index(&chart.params).expect("ω has a nonzero W-coordinate");
    let mut forms = Vec::new();
    let mut labels = Vec::new();
    let mut omitted = None;
    for (j, (m, f)) in members.into_iter().enumerate() {
        if j == drop {
            omitted = Some(m);
        } else {
            forms.push(f);
            labels.push(m);
        }
    }
    CohomBasis1D {
        forms,
        members: labels,
        omitted: omitted.unwrap(),
        infinity: chart.has_infinity(),
        block_order: chart.order.clone(),
    }
}

/// Coefficients `c` with `φ − Σ c_j basis_j ∈ ∇_ω(Ω⁰_d)`.
///
/// The system `[basis | ∇ atoms]` is square and invertible at every bound,
/// so `d` only needs to be large enough for `φ` itself to fit.
pub fn canonical_form(
    phi: &DifferentialForm,
    basis: &CohomBasis1D,
    z: &StratumMatrix,
    params: &CharacterParams,
    d: usize,
) -> Result<Vec<ExactScalar>> {
    let chart = LineChart::new(z, params)?;
    chart_canonical_form(&chart, phi, basis, d)
}

fn chart_canonical_form(chart: &LineChart, phi: &DifferentialForm, basis: &CohomBasis1D, d: usize) -> Result<Vec<ExactScalar>> {
    let target = chart.form_vector(phi, d)?;
    let mut cols = Vec::with_capacity(basis.forms.len());
    for f in &basis.forms {
        cols.push(chart.form_vector(f, d)?);
    }
    let nb = cols.len();
    let basis_m = ExactMatrix::from_columns(&cols);
    let m = basis_m.hstack(&chart.nabla_matrix(d));
    if m.rank() != m.cols() {
        return Err(Error::Invalid("basis forms are dependent modulo exact forms".into()));
    }
    let sol = m.solve(&target).map_err(|_| Error::IncreaseDegreeBound)?;
    Ok(sol[..nb].to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct H1Rank {
    pub h1_rank: usize,
    pub h0_rank: usize,
    pub stabilized: bool,
    /// False when the parameters violate the non-resonance conditions.
    pub within_hypotheses: bool,
}

/// Ranks of the truncated complex at bound `d`, with `d + 1` as the stability check.
pub fn h1_rank_truncated(z: &StratumMatrix, params: &CharacterParams, d: usize) -> Result<H1Rank> {
    let within = validate_params(params, z.partition(), 1).is_empty() && params.mode == Mode::Cohomology;
    let chart = LineChart::new(z, params)?;
    let at = |d: usize| {
        let rank = chart.nabla_matrix(d).rank();
        (chart.omega1_dim(d) - rank, chart.omega0_dim(d) - rank)
    };
    let (h1, h0) = at(d);
    let next = at(d + 1);
    Ok(H1Rank { h1_rank: h1, h0_rank: h0, stabilized: (h1, h0) == next, within_hypotheses: within })
}

/// `g · z` with `g ∈ GL_2` chosen so that the last block's first column is `(1, 0)`,
/// which puts that block at infinity.
pub fn move_last_block_to_infinity(z: &StratumMatrix) -> Result<StratumMatrix> {
    let ell = z.partition().len();
    let v = z.column(ell - 1, 0);
    let e = if v[1].is_zero() { vec![int(0), int(1)] } else { vec![int(1), int(0)] };
    let frame = ExactMatrix::from_columns(&[v, e]);
    if frame.det().is_zero() {
        return Err(Error::DegenerateBlock);
    }
    Ok(z.left_mul(&frame.inverse()?))
}

/// Row `i` holds the canonical coefficients of `x^i dx`, `0 ≤ i ≤ N − 3`.
pub fn monomial_basis_change(z: &StratumMatrix, params: &CharacterParams, d: usize) -> Result<ExactMatrix> {
    let ell = z.partition().len();
    if !z.column(ell - 1, 0)[1].is_zero() {
        return Err(Error::Invalid("the last block must sit at infinity".into()));
    }
    let basis = h1_basis(z, params)?;
    let chart = LineChart::new(z, params)?;
    let x = Vars::new(["x"]);
    let n = z.n_total();
    let mut rows = Vec::with_capacity(n - 2);
    for i in 0..n - 2 {
        let mut m = MultiPoly::one(&x);
        for _ in 0..i {
            m = &m * &MultiPoly::var(&x, 0);
        }
        let phi = DifferentialForm::one_form(&x, vec![RatFunc::from_poly(m)]);
        rows.push(chart_canonical_form(&chart, &phi, &basis, d)?);
    }
    Ok(ExactMatrix::from_rows(rows))
}

/// Chart-level access for callers that reduce many forms at one point.
pub struct LineReducer {
    chart: LineChart,
    basis: CohomBasis1D,
}

impl LineReducer {
    pub fn new(z: &StratumMatrix, params: &CharacterParams) -> Result<Self> {
        let basis = h1_basis(z, params)?;
        let chart = LineChart::new(z, params)?;
        Ok(LineReducer { chart, basis })
    }

    pub fn basis(&self) -> &CohomBasis1D {
        &self.basis
    }

    pub fn chart(&self) -> &LineChart {
        &self.chart
    }

    pub fn reduce(&self, phi: &DifferentialForm, d: usize) -> Result<Vec<ExactScalar>> {
        chart_canonical_form(&self.chart, phi, &self.basis, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::partition::Partition;

    fn rf(n: &str, d: &str) -> RatFunc {
        let x = Vars::new(["x"]);
        RatFunc::new(MultiPoly::parse(n, &x).unwrap(), MultiPoly::parse(d, &x).unwrap()).unwrap()
    }

    fn beta() -> (StratumMatrix, CharacterParams) {
        let l = Partition::parse("1,1,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 0, 1], &[0, 1, -1]]).unwrap();
        let p = CharacterParams::new(vec![vec![rat(1, 2)], vec![rat(1, 3)], vec![rat(-5, 6)]], Mode::Cohomology);
        (z, p)
    }

    #[test]
    fn partial_fractions_roundtrip() {
        let pts = vec![int(0), int(1), rat(-1, 2)];
        let f = rf("x^5 + 3*x - 1", "x^2*(x - 1)^3*(2*x + 1)");
        let fr = frac_of(&f, &pts).unwrap();
        assert_eq!(fr.exps, vec![2, 3, 1]);
        let pf = fr.decompose(&pts);
        let x = Vars::new(["x"]);
        let mut back = RatFunc::from_poly(MultiPoly::from_univariate(&x, 0, &pf.poly));
        for (k, pr) in pf.principal.iter().enumerate() {
            for (s1, c) in pr.iter().enumerate() {
                let lin = MultiPoly::from_univariate(&x, 0, &linear_power(&pts[k], (s1 + 1) as u32));
                back = back.add(&RatFunc::new(MultiPoly::constant(&x, c.clone()), lin).unwrap());
            }
        }
        assert_eq!(back, f);
        let d = fr.derivative(&pts);
        let dd = RatFunc::new(MultiPoly::from_univariate(&x, 0, &d.num), MultiPoly::from_univariate(&x, 0, &product(&pts, &d.exps))).unwrap();
        assert_eq!(dd, f.derivative(0));
    }

    #[test]
    fn nabla_examples() {
        let (z, p) = beta();
        let chart = LineChart::new(&z, &p).unwrap();
        let w = chart.omega();
        let x = Vars::new(["x"]);
        assert_eq!(nabla_apply(&RatFunc::one(&x), &w), w);
        assert!(nabla_apply(&RatFunc::zero(&x), &w).is_zero());
        let g = RatFunc::from_poly(MultiPoly::var(&x, 0));
        let expect = DifferentialForm::dvar(&x, 0).add(&w.mul_function(&g));
        assert_eq!(nabla_apply(&g, &w), expect);
    }

    #[test]
    fn w_space_examples() {
        let (z, p) = beta();
        let chart = LineChart::new(&z, &p).unwrap();
        assert_eq!(chart.block_order(), &[1, 2, 0]);
        let f: Vec<_> = chart.w_members().into_iter().map(|(_, f)| f.one_form_coeffs().remove(0)).collect();
        assert_eq!(f, vec![rf("1", "x"), rf("1", "x - 1")]);
        let b = h1_basis(&z, &p).unwrap();
        assert_eq!(b.forms.len(), 1);
        assert_eq!(b.omitted, WMember::Log { block: 2 });

        let l = Partition::parse("2,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 2, 1], &[1, 1, -1]]).unwrap();
        let p = CharacterParams::new(vec![vec![rat(1, 3), rat(1, 2)], vec![rat(-1, 3)]], Mode::Cohomology);
        let members: Vec<_> = LineChart::new(&z, &p).unwrap().w_members().into_iter().map(|(m, _)| m).collect();
        assert_eq!(members, vec![WMember::Theta { block: 0, order: 1 }, WMember::LogDifference { block: 0, last: 1 }]);
    }

    #[test]
    fn beta_regression_vector() {
        let (z, p) = beta();
        let b = h1_basis(&z, &p).unwrap();
        let x = Vars::new(["x"]);
        let phi = DifferentialForm::one_form(&x, vec![rf("x", "x*(1 - x)")]);
        let c = canonical_form(&phi, &b, &z, &p, 3).unwrap();
        // ω ≡ 0 gives dx/(x−1) ≡ −(α_0^(2)/α_0^(3)) dx/x.
        assert_eq!(c, vec![rat(-2, 5)]);
    }

    #[test]
    fn truncated_rank_examples() {
        let (z, p) = beta();
        let r = h1_rank_truncated(&z, &p, 2).unwrap();
        assert_eq!((r.h1_rank, r.h0_rank, r.stabilized, r.within_hypotheses), (1, 0, true, true));
        let l = Partition::parse("3").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 2, 0], &[1, 1, 3]]).unwrap();
        let p = CharacterParams::new(vec![vec![int(0), rat(1, 2), rat(2, 3)]], Mode::Cohomology);
        let r = h1_rank_truncated(&z, &p, 3).unwrap();
        assert_eq!((r.h1_rank, r.h0_rank, r.stabilized), (1, 0, true));
        let chart = LineChart::new(&z, &p).unwrap();
        assert_eq!(chart.omega_pole_orders(), vec![3]);
    }

    #[test]
    fn monomial_change_beta() {
        let (z, _) = beta();
        let zr = z.permute_blocks(&[1, 2, 0]);
        let pr = CharacterParams::new(vec![vec![rat(1, 3)], vec![rat(-5, 6)], vec![rat(1, 2)]], Mode::Cohomology);
        let m = monomial_basis_change(&zr, &pr, 2).unwrap();
        assert_eq!(m.rows(), 1);
        assert!(!m.det().is_zero());
    }
}
