//! Theta coordinates of the Jordan group, character exponents, parameter
//! checks and the twisted 1-forms `ω = Σ α_i^(k) dθ_i`.

use num_traits::Zero;

use crate::algebra::rational::{int, is_integer, rat, ExactScalar};
use crate::algebra::{series_log, BaseSet, CoeffRing, LinFrac, MultiPoly, RatFunc, TruncSeries, Vars};
use crate::error::{Error, Result};
use crate::form::DifferentialForm;
use crate::partition::{Partition, StratumMatrix};
use crate::sampling::{Stream, ALPHA_SEED_OFFSET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `Σ_k α_0^(k) = −r−1`.
    Integral,
    /// `Σ_k α_0^(k) = 0`.
    Cohomology,
}

/// Character parameters, one vector `(α_0, …, α_{n_k−1})` per block.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterParams {
    pub alpha: Vec<Vec<ExactScalar>>,
    pub mode: Mode,
}

/// Numerators of sampled parameters lie in `[-ALPHA_NUM_BOUND, ALPHA_NUM_BOUND]`.
pub const ALPHA_NUM_BOUND: u64 = 291;
/// Common denominator of sampled parameters.
pub const ALPHA_DEN: i64 = 97;

impl CharacterParams {
    pub fn new(alpha: Vec<Vec<ExactScalar>>, mode: Mode) -> Self {
        CharacterParams { alpha, mode }
    }

    pub fn target_sum(mode: Mode, r: usize) -> ExactScalar {
        match mode {
            Mode::Integral => int(-(r as i64) - 1),
            Mode::Cohomology => ExactScalar::zero(),
        }
    }

    /// Draws parameters satisfying every condition of `validate_params`.
    ///
    /// Entries are `n/97` with `|n| ≤ 291`; the last block's `α_0` is fixed by
    /// the sum condition and the whole vector is redrawn if that breaks a
    /// block condition.
    pub fn sample(lambda: &Partition, r: usize, mode: Mode, seed: u64) -> Result<Self> {
        let mut stream = Stream::new(seed ^ ALPHA_SEED_OFFSET);
        let target = CharacterParams::target_sum(mode, r);
        let mut draws = 0usize;
        let mut draw = |stream: &mut Stream| -> Result<ExactScalar> {
            draws += 1;
            if draws > crate::partition::MAX_SAMPLING_DRAWS {
                return Err(Error::SamplingExhausted);
            }
            Ok(rat(stream.int_in(ALPHA_NUM_BOUND), ALPHA_DEN))
        };
        let ell = lambda.len();
        loop {
            let mut alpha = Vec::with_capacity(ell);
            for (k, &n) in lambda.parts().iter().enumerate() {
                let mut block = Vec::with_capacity(n);
                for i in 0..n {
                    if k + 1 == ell && i == 0 {
                        block.push(ExactScalar::zero());
                        continue;
                    }
                    loop {
                        let a = draw(&mut stream)?;
                        let bad = (n == 1 && is_integer(&a)) || (n > 1 && i + 1 == n && a.is_zero());
                        if !bad {
                            block.push(a);
                            break;
                        }
                    }
                }
                alpha.push(block);
            }
            let others: ExactScalar = alpha[..ell - 1].iter().map(|b| b[0].clone()).sum();
            alpha[ell - 1][0] = &target - &others;
            let p = CharacterParams { alpha, mode };
            if validate_params(&p, lambda, r).is_empty() {
                return Ok(p);
            }
        }
    }

    pub fn get(&self, k: usize, i: usize) -> &ExactScalar {
        &self.alpha[k][i]
    }

    /// Parameters viewed in the other normalization: only the first block's
    /// `α_0` moves, by `±(r+1)`.
    pub fn renormalized(&self, mode: Mode, r: usize) -> Self {
        let mut alpha = self.alpha.clone();
        let shift = CharacterParams::target_sum(mode, r) - CharacterParams::target_sum(self.mode, r);
        alpha[0][0] += shift;
        CharacterParams { alpha, mode }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let blocks: Vec<Vec<String>> = self
            .alpha
            .iter()
            .map(|b| b.iter().map(crate::algebra::rational::to_ratio_string).collect())
            .collect();
        serde_json::json!({"mode": self.mode, "alpha": blocks})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let mode: Mode = serde_json::from_value(v["mode"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let blocks = v["alpha"].as_array().ok_or_else(|| Error::Parse("alpha must be an array".into()))?;
        let mut alpha = Vec::new();
        for b in blocks {
            let b = b.as_array().ok_or_else(|| Error::Parse("alpha block must be an array".into()))?;
            let mut block = Vec::new();
            for x in b {
                let s = x.as_str().ok_or_else(|| Error::Parse("alpha entries are strings".into()))?;
                block.push(crate::algebra::rational::parse_ratio(s)?);
            }
            alpha.push(block);
        }
        Ok(CharacterParams { alpha, mode })
    }
}

/// Lists every violated condition; an empty list means the parameters are valid.
pub fn validate_params(params: &CharacterParams, lambda: &Partition, r: usize) -> Vec<String> {
    let mut out = Vec::new();
    if params.alpha.len() != lambda.len() {
        out.push(format!("{} parameter blocks for {} blocks of {lambda}", params.alpha.len(), lambda.len()));
        return out;
    }
    for (k, (b, &n)) in params.alpha.iter().zip(lambda.parts()).enumerate() {
        if b.len() != n {
            out.push(format!("block {} has {} parameters, expected {n}", k + 1, b.len()));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let sum: ExactScalar = params.alpha.iter().map(|b| b[0].clone()).sum();
    let target = CharacterParams::target_sum(params.mode, r);
    if sum != target {
        out.push(format!(
            "Σ_k α_0^(k) = {} but {} mode requires {}",
            sum,
            match params.mode {
                Mode::Integral => "integral",
                Mode::Cohomology => "cohomology",
            },
            target
        ));
    }
    for (k, (b, &n)) in params.alpha.iter().zip(lambda.parts()).enumerate() {
        if n == 1 && is_integer(&b[0]) {
            out.push(format!("α_0^({}) ∈ Z", k + 1));
        }
        if n > 1 && b[n - 1].is_zero() {
            out.push(format!("α_{}^({})=0 with n_k>1", n - 1, k + 1));
        }
    }
    out
}

/// `l_j = c_{0j} + Σ_i v_i c_{ij}` for each column `c_j` of a block.
pub fn block_linear_forms(columns: &[Vec<ExactScalar>], vars: &Vars) -> Vec<MultiPoly> {
    columns
        .iter()
        .map(|c| {
            assert_eq!(c.len(), vars.len() + 1, "column length must be one more than the variable count");
            MultiPoly::affine(vars, c)
        })
        .collect()
}

/// A single theta coordinate as a rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaRational {
    pub block: usize,
    pub order: usize,
    pub value: RatFunc,
}

/// `θ_i` of one block; order 0 returns the logarithmic slot `l_0`.
pub fn theta_rational(block: usize, columns: &[Vec<ExactScalar>], i: usize, vars: &Vars) -> Result<ThetaRational> {
    assert!(i < columns.len(), "order must be below the block size");
    let sys = ThetaSystem::from_blocks(vars, &[columns.to_vec()])?;
    let value = if i == 0 {
        RatFunc::from_poly(sys.log_slot(0).clone())
    } else {
        sys.theta(0, i).to_ratfunc()
    };
    Ok(ThetaRational { block, order: i, value })
}

#[derive(Clone, Debug)]
struct BlockTheta {
    forms: Vec<MultiPoly>,
    base: Option<usize>,
    theta: Vec<LinFrac>,
}

/// Theta coordinates of every block of an arrangement, over a shared base set
/// made of the non-constant `l_0^(k)` (normalized to be monic).
#[derive(Clone, Debug)]
pub struct ThetaSystem {
    vars: Vars,
    set: BaseSet,
    blocks: Vec<BlockTheta>,
}

impl ThetaSystem {
    /// Uses `z.r()` affine variables `vars`.
    pub fn new(z: &StratumMatrix, vars: &Vars) -> Result<Self> {
        assert_eq!(vars.len(), z.r(), "one variable per non-homogeneous coordinate");
        let blocks: Vec<Vec<Vec<ExactScalar>>> = (0..z.partition().len()).map(|k| z.block(k)).collect();
        ThetaSystem::from_blocks(vars, &blocks)
    }

    pub fn from_blocks(vars: &Vars, blocks: &[Vec<Vec<ExactScalar>>]) -> Result<Self> {
        let mut bases: Vec<MultiPoly> = Vec::new();
        let mut pre = Vec::with_capacity(blocks.len());
        for cols in blocks {
            let forms = block_linear_forms(cols, vars);
            let l0 = &forms[0];
            if l0.is_zero() {
                return Err(Error::DegenerateBlock);
            }
            let base = if l0.is_constant() {
                None
            } else {
                let m = l0.monic();
                Some(match bases.iter().position(|b| *b == m) {
                    Some(i) => i,
                    None => {
                        bases.push(m);
                        bases.len() - 1
                    }
                })
            };
            pre.push((forms, base));
        }
        let set = BaseSet::new(vars, bases);
        let mut out = Vec::with_capacity(pre.len());
        for (forms, base) in pre {
            let series = TruncSeries::new(forms.iter().map(|l| LinFrac::from_poly(&set, l.clone())).collect());
            let theta = series_log(&series)?.theta;
            out.push(BlockTheta { forms, base, theta });
        }
        Ok(ThetaSystem { vars: vars.clone(), set, blocks: out })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn base_set(&self) -> &BaseSet {
        &self.set
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self, k: usize) -> usize {
        self.blocks[k].forms.len()
    }

    /// `l_0^(k)`, the logarithmic slot.
    pub fn log_slot(&self, k: usize) -> &MultiPoly {
        &self.blocks[k].forms[0]
    }

    pub fn linear_forms(&self, k: usize) -> &[MultiPoly] {
        &self.blocks[k].forms
    }

    /// Position of `l_0^(k)` in the base set; `None` when the block sits at infinity.
    pub fn base_index(&self, k: usize) -> Option<usize> {
        self.blocks[k].base
    }

    pub fn at_infinity(&self, k: usize) -> bool {
        self.blocks[k].base.is_none()
    }

    /// `θ_i^(k)` for `i ≥ 1`.
    pub fn theta(&self, k: usize, i: usize) -> &LinFrac {
        assert!(i >= 1, "order 0 is the logarithmic slot");
        &self.blocks[k].theta[i - 1]
    }

    /// Coefficients of `dθ_i^(k)`; order 0 gives `d log l_0^(k)`.
    pub fn dtheta(&self, k: usize, i: usize) -> Vec<LinFrac> {
        let n = self.vars.len();
        if i == 0 {
            return match self.blocks[k].base {
                None => vec![LinFrac::zero(&self.set); n],
                Some(b) => {
                    let base = &self.set.bases()[b];
                    (0..n)
                        .map(|v| LinFrac::base_power_inv(&self.set, b, 1).mul_poly(&base.derivative(v)))
                        .collect()
                }
            };
        }
        let t = self.theta(k, i);
        (0..n).map(|v| t.derivative(v)).collect()
    }

    /// Coefficients of `Σ_k Σ_i α_i^(k) dθ_i^(k)`.
    pub fn omega_coeffs(&self, params: &CharacterParams) -> Vec<LinFrac> {
        let n = self.vars.len();
        let mut acc = vec![LinFrac::zero(&self.set); n];
        for (k, block) in params.alpha.iter().enumerate() {
            for (i, a) in block.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (slot, c) in acc.iter_mut().zip(self.dtheta(k, i)) {
                    *slot = slot.add(&c.scale(a));
                }
            }
        }
        acc
    }
}

pub fn linfrac_one_form(vars: &Vars, coeffs: &[LinFrac]) -> DifferentialForm {
    DifferentialForm::one_form(vars, coeffs.iter().map(|c| c.to_ratfunc()).collect())
}

/// `ω` for arbitrary parameters and any stratum point, without checks.
pub fn omega_form(z: &StratumMatrix, params: &CharacterParams, vars: &Vars) -> Result<DifferentialForm> {
    let sys = ThetaSystem::new(z, vars)?;
    check_shape(params, z.partition())?;
    Ok(linfrac_one_form(vars, &sys.omega_coeffs(params)))
}

fn check_shape(params: &CharacterParams, lambda: &Partition) -> Result<()> {
    let ok = params.alpha.len() == lambda.len() && params.alpha.iter().zip(lambda.parts()).all(|(b, &n)| b.len() == n);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(validate_params(params, lambda, 0)))
    }
}

fn checked_omega(z: &StratumMatrix, params: &CharacterParams, vars: &Vars) -> Result<DifferentialForm> {
    let mut violations = validate_params(params, z.partition(), z.r());
    if params.mode != Mode::Cohomology {
        violations.push("ω requires cohomology-mode parameters".into());
    }
    if !violations.is_empty() {
        return Err(Error::InvalidParams(violations));
    }
    if let Some(mu) = z.stratum_witness() {
        return Err(Error::Invalid(format!("point is outside the generic stratum: minor {mu} vanishes")));
    }
    omega_form(z, params, vars)
}

/// `ω = c(x) dx` on the affine line.
pub fn omega_1d(z: &StratumMatrix, params: &CharacterParams) -> Result<DifferentialForm> {
    if z.r() != 1 {
        return Err(Error::Invalid("omega_1d needs a 2-row matrix".into()));
    }
    checked_omega(z, params, &Vars::new(["x"]))
}

/// `ω̃ = Σ_i c_i(y) dy_i` on affine `r`-space with variables `y1..yr`.
pub fn omega_r(w: &StratumMatrix, params: &CharacterParams) -> Result<DifferentialForm> {
    checked_omega(w, params, &Vars::indexed("y", w.r()))
}

/// `Σ_k Σ_i α_i^(k) θ_i(h^(k))` kept as a formal sum.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterExponent<R: CoeffRing> {
    /// `(α_0^(k), h_0^(k))` pairs standing for `α_0^(k) log h_0^(k)`.
    pub log_part: Vec<(ExactScalar, R)>,
    pub rational: R,
}

pub fn character_exponent<R: CoeffRing>(h: &[TruncSeries<R>], params: &CharacterParams) -> Result<CharacterExponent<R>> {
    if h.len() != params.alpha.len() || h.iter().zip(&params.alpha).any(|(s, a)| s.modulus() != a.len()) {
        return Err(Error::Invalid("group element blocks do not match the parameters".into()));
    }
    let template = h.first().ok_or_else(|| Error::Invalid("no blocks".into()))?.coeff(0).clone();
    let mut log_part = Vec::with_capacity(h.len());
    let mut rational = template.zero_like();
    for (s, a) in h.iter().zip(&params.alpha) {
        let l = series_log(s)?;
        log_part.push((a[0].clone(), l.log_slot.clone()));
        for (t, ai) in l.theta.iter().zip(&a[1..]) {
            rational = rational.add_elem(&t.scale_elem(ai));
        }
    }
    Ok(CharacterExponent { log_part, rational })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn cols(v: &[&[i64]]) -> Vec<Vec<ExactScalar>> {
        v.iter().map(|c| c.iter().map(|&x| int(x)).collect()).collect()
    }

    fn rf(s: &str, v: &Vars) -> RatFunc {
        let (n, d) = s.split_once('|').unwrap_or((s, "1"));
        RatFunc::new(MultiPoly::parse(n, v).unwrap(), MultiPoly::parse(d, v).unwrap()).unwrap()
    }

    #[test]
    fn theta_examples() {
        let x = Vars::new(["x"]);
        let t = theta_rational(0, &cols(&[&[0, 1]]), 0, &x).unwrap();
        assert_eq!(t.value, rf("x", &x));
        let t = theta_rational(0, &cols(&[&[1, 0], &[0, 1]]), 1, &x).unwrap();
        assert_eq!(t.value, rf("x", &x));
        let t = theta_rational(0, &cols(&[&[1, 0], &[0, 1], &[0, 0]]), 2, &x).unwrap();
        assert_eq!(t.value, rf("-1/2*x^2", &x));
        assert_eq!(theta_rational(0, &cols(&[&[0, 0], &[1, 1]]), 1, &x), Err(Error::DegenerateBlock));
    }

    #[test]
    fn theta_denominator_is_power_of_l0() {
        let x = Vars::new(["x"]);
        let c = cols(&[&[2, 3], &[1, -1], &[5, 2], &[-1, 4]]);
        for i in 1..4 {
            let t = theta_rational(0, &c, i, &x).unwrap().value;
            let l0 = MultiPoly::parse("3*x + 2", &x).unwrap().monic();
            assert_eq!(*t.den(), l0.pow(t.den().total_degree().unwrap()));
            assert!(t.den().total_degree().unwrap() as usize <= i);
        }
    }

    #[test]
    fn validate_examples() {
        let l = Partition::parse("1,1,1").unwrap();
        let p = CharacterParams::new(vec![vec![rat(1, 3)], vec![rat(1, 3)], vec![rat(-2, 3)]], Mode::Cohomology);
        assert!(validate_params(&p, &l, 1).is_empty());
        let p = CharacterParams::new(vec![vec![int(1)], vec![rat(-1, 2)], vec![rat(-1, 2)]], Mode::Cohomology);
        assert_eq!(validate_params(&p, &l, 1), vec!["α_0^(1) ∈ Z".to_string()]);
        let l = Partition::parse("2,1,1").unwrap();
        let p = CharacterParams::new(vec![vec![rat(1, 3), int(0)], vec![rat(1, 3)], vec![rat(-2, 3)]], Mode::Cohomology);
        assert_eq!(validate_params(&p, &l, 1), vec!["α_1^(1)=0 with n_k>1".to_string()]);
        let p = CharacterParams::new(vec![vec![rat(1, 3), int(1)], vec![rat(1, 3)], vec![rat(-2, 3)]], Mode::Integral);
        assert_eq!(validate_params(&p, &l, 1).len(), 1);
    }

    #[test]
    fn sampled_params_are_valid() {
        for l in Partition::all_of(5).into_iter().chain(Partition::all_of(4)) {
            for mode in [Mode::Integral, Mode::Cohomology] {
                for seed in 0..5 {
                    let p = CharacterParams::sample(&l, 2, mode, seed).unwrap();
                    assert!(validate_params(&p, &l, 2).is_empty());
                    assert_eq!(p, CharacterParams::sample(&l, 2, mode, seed).unwrap());
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let x = Vars::new(["x"]);
        let l = Partition::parse("1,1,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 0, 1], &[0, 1, -1]]).unwrap();
        let (a1, a2, a3) = (rat(1, 5), rat(1, 3), rat(-8, 15));
        let p = CharacterParams::new(vec![vec![a1], vec![a2.clone()], vec![a3.clone()]], Mode::Cohomology);
        let w = omega_1d(&z, &p).unwrap();
        let expect = rf("1|x", &x).scale(&a2).sub(&rf("1|1 - x", &x).scale(&a3));
        assert_eq!(w.one_form_coeffs(), vec![expect]);
        assert!(w.d().is_zero());

        let l = Partition::parse("3").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        let p = CharacterParams::new(vec![vec![int(0), rat(2, 7), rat(3, 5)]], Mode::Cohomology);
        let w = omega_1d(&z, &p).unwrap();
        assert_eq!(w.one_form_coeffs(), vec![rf("2/7 - 3/5*x", &x)]);

        let l = Partition::parse("2,1").unwrap();
        let z = StratumMatrix::from_i64(1, l, &[&[1, 0, 1], &[0, 1, 2]]).unwrap();
        let sys = ThetaSystem::new(&z, &x).unwrap();
        assert_eq!(sys.dtheta(0, 1)[0].to_ratfunc(), rf("1", &x));
        assert!(sys.at_infinity(0));
    }

    #[test]
    fn omega_r_for_affine_hyperplanes() {
        let y = Vars::indexed("y", 2);
        let l = Partition::parse("1,1,1,1").unwrap();
        let w = StratumMatrix::from_i64(2, l, &[&[1, 0, 1, 2], &[1, 1, 0, 3], &[0, 1, 1, 7]]).unwrap();
        let a = [rat(1, 2), rat(1, 3), rat(1, 7), rat(-41, 42)];
        let p = CharacterParams::new(a.iter().map(|x| vec![x.clone()]).collect(), Mode::Cohomology);
        let form = omega_r(&w, &p).unwrap();
        let mut expect = DifferentialForm::zero(&y, 1);
        for (k, ak) in a.iter().enumerate() {
            let f = MultiPoly::affine(&y, &w.column(k, 0));
            let df = DifferentialForm::function(RatFunc::from_poly(f.clone())).d();
            let f_inv = RatFunc::new(MultiPoly::one(&y), f).unwrap();
            expect = expect.add(&df.mul_function(&f_inv).scale(ak));
        }
        assert_eq!(form, expect);
        assert!(form.d().is_zero());
    }

    #[test]
    fn exponent_examples() {
        let p = CharacterParams::new(vec![vec![rat(1, 2), rat(3, 4)]], Mode::Cohomology);
        let t = Vars::new(["t"]);
        let h = TruncSeries::new(vec![MultiPoly::one(&t), MultiPoly::var(&t, 0)]);
        let e = character_exponent(&[h], &p).unwrap();
        assert_eq!(e.rational, MultiPoly::var(&t, 0).scale(&rat(3, 4)));
        let id = TruncSeries::new(vec![int(1), int(0)]);
        let e = character_exponent(&[id], &p).unwrap();
        assert!(e.rational.is_zero() && e.log_part == vec![(rat(1, 2), int(1))]);
        let bad = TruncSeries::new(vec![int(0), int(1)]);
        assert_eq!(character_exponent(&[bad], &p), Err(Error::LogOfNonUnit));
    }
}
