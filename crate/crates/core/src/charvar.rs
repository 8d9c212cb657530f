//! Principal symbols of the general hypergeometric system on `T*Z` and the
//! decision procedure showing the characteristic variety is the zero section.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::matrix::ExactMatrix;
use crate::algebra::rational::{to_ratio_string, ExactScalar};
use crate::partition::{sample_stratum_point, subdiagrams_of_weight, Partition, StratumMatrix, Subdiagram};
use crate::error::Result;

/// A cotangent vector `ξ` at `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolPoint {
    pub z: StratumMatrix,
    pub xi: ExactMatrix,
}

/// One symbol equation that does not vanish at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `ξ_ip ξ_jq − ξ_iq ξ_jp`.
    Minor { rows: (usize, usize), cols: (usize, usize) },
    /// `tr(ᵗ(zX)ξ)` with `X = Λ^m` in block `k`.
    Torus { block: usize, power: usize },
    /// `tr(ᵗ(E_ab z)ξ) = (ξ ᵗz)_ab`.
    Frame { row: usize, col: usize },
}

/// Every violated symbol equation at `p`, minors first.
pub fn symbol_residual(p: &SymbolPoint) -> Vec<Violation> {
    let z = p.z.entries();
    let xi = &p.xi;
    assert_eq!((xi.rows(), xi.cols()), (z.rows(), z.cols()), "ξ has the shape of z");
    let (rows, n) = (z.rows(), z.cols());
    let mut out = Vec::new();
    for i in 0..rows {
        for j in i + 1..rows {
            for a in 0..n {
                for b in a + 1..n {
                    let m = xi.get(i, a) * xi.get(j, b) - xi.get(i, b) * xi.get(j, a);
                    if !m.is_zero() {
                        out.push(Violation::Minor { rows: (i, j), cols: (a, b) });
                    }
                }
            }
        }
    }
    let lambda = p.z.partition();
    for (k, &nk) in lambda.parts().iter().enumerate() {
        let off = lambda.offset(k);
        for m in 0..nk {
            let mut t = ExactScalar::zero();
            for i in 0..rows {
                for q in m..nk {
                    t += z.get(i, off + q - m) * xi.get(i, off + q);
                }
            }
            if !t.is_zero() {
                out.push(Violation::Torus { block: k, power: m });
            }
        }
    }
    let xz = xi.mul(&z.transpose());
    for a in 0..rows {
        for b in 0..rows {
            if !xz.get(a, b).is_zero() {
                out.push(Violation::Frame { row: a, col: b });
            }
        }
    }
    out
}

/// `ξ = a ᵗb` when `rank ξ ≤ 1`; `a` is the first nonzero column and `b` the
/// matching row of `ξ` divided by the pivot entry of `a`.
pub fn rank1_decompose(xi: &ExactMatrix) -> Option<(Vec<ExactScalar>, Vec<ExactScalar>)> {
    let Some(c) = (0..xi.cols()).find(|&j| (0..xi.rows()).any(|i| !xi.get(i, j).is_zero())) else {
        return Some((vec![ExactScalar::zero(); xi.rows()], vec![ExactScalar::zero(); xi.cols()]));
    };
    let a = xi.column(c);
    let i = a.iter().position(|v| !v.is_zero()).unwrap();
    let b: Vec<ExactScalar> = xi.row(i).iter().map(|v| v / &a[i]).collect();
    let ok = (0..xi.rows()).all(|r| (0..xi.cols()).all(|s| *xi.get(r, s) == &a[r] * &b[s]));
    ok.then_some((a, b))
}

pub fn outer(a: &[ExactScalar], b: &[ExactScalar]) -> ExactMatrix {
    ExactMatrix::from_rows(a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect())
}

/// `m_k` = one past the last nonzero entry of block `k` of `b`.
pub fn truncation_profile(b: &[ExactScalar], lambda: &Partition) -> Subdiagram {
    assert_eq!(b.len(), lambda.total());
    let counts = (0..lambda.len())
        .map(|k| {
            let off = lambda.offset(k);
            b[off..off + lambda.parts()[k]].iter().rposition(|v| !v.is_zero()).map_or(0, |p| p + 1)
        })
        .collect();
    Subdiagram::new(counts, lambda).expect("profile fits the partition")
}

/// Vectors `b` supported on `μ` with `z b = 0`, i.e. the kernel of `z_μ` padded by zeros.
pub fn profile_kernel(z: &StratumMatrix, mu: &Subdiagram) -> Vec<Vec<ExactScalar>> {
    let cols = mu.columns(z.partition());
    z.select(mu)
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut b = vec![ExactScalar::zero(); z.n_total()];
            for (c, x) in cols.iter().zip(v) {
                b[*c] = x;
            }
            b
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailedCheck {
    GenericStratum,
    MaximalMinor,
    OversizedRank,
}

#[derive(Clone, Debug)]
pub struct CharvarVerdict {
    pub trivial: bool,
    pub failed_check: Option<FailedCheck>,
    pub failing_subdiagram: Option<Subdiagram>,
    /// A nonzero `ξ` with empty residual, present whenever the verdict is nontrivial.
    pub witness: Option<SymbolPoint>,
}

impl CharvarVerdict {
    pub fn to_json(&self, z: &StratumMatrix) -> serde_json::Value {
        let mut v = serde_json::json!({
            "lambda": z.partition().parts(),
            "r": z.r(),
            "trivial": self.trivial,
        });
        if let Some(c) = self.failed_check {
            v["failed_check"] = serde_json::to_value(c).unwrap();
        }
        if let Some(mu) = &self.failing_subdiagram {
            v["failing_subdiagram"] = serde_json::json!(mu.counts());
        }
        if let Some(w) = &self.witness {
            let rows: Vec<Vec<String>> = w.xi.to_rows().iter().map(|r| r.iter().map(to_ratio_string).collect()).collect();
            v["witness_xi"] = serde_json::json!(rows);
        }
        v
    }
}

/// Witness for a vanishing `det z_ν`, `|ν| = r + 1`: `b` from the kernel of `z_ν`
/// and `a` orthogonal to every `z^(k) Λ^m b^(k)`.
fn minor_witness(z: &StratumMatrix, nu: &Subdiagram) -> Option<SymbolPoint> {
    let b = profile_kernel(z, nu).into_iter().next()?;
    let lambda = z.partition();
    let mut vs = Vec::new();
    for k in 0..lambda.len() {
        let off = lambda.offset(k);
        let nk = lambda.parts()[k];
        for m in 0..nk {
            let mut v = vec![ExactScalar::zero(); z.r() + 1];
            for p in 0..nk - m {
                let coef = &b[off + p + m];
                if coef.is_zero() {
                    continue;
                }
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi += z.entries().get(i, off + p) * coef;
                }
            }
            vs.push(v);
        }
    }
    let a = ExactMatrix::from_columns(&vs).left_nullspace().into_iter().next()?;
    Some(SymbolPoint { z: z.clone(), xi: outer(&a, &b) })
}

/// Witness for `rank z_μ < r + 1`, `|μ| > r + 1`: `a` from the left kernel of
/// `z_μ`, `b` from its kernel.
fn rank_witness(z: &StratumMatrix, mu: &Subdiagram) -> Option<SymbolPoint> {
    let a = z.select(mu).left_nullspace().into_iter().next()?;
    let b = profile_kernel(z, mu).into_iter().next()?;
    Some(SymbolPoint { z: z.clone(), xi: outer(&a, &b) })
}

fn validated(p: Option<SymbolPoint>) -> Option<SymbolPoint> {
    p.filter(|w| !w.xi.is_zero() && symbol_residual(w).is_empty())
}

/// Runs the three checks in order: genericity, every maximal minor `det z_ν`,
/// and the rank of every oversized `z_μ`.
pub fn charvar_trivial(z: &StratumMatrix) -> CharvarVerdict {
    let w = z.r() + 1;
    let lambda = z.partition();
    let generic = z.is_generic_stratum();
    for nu in subdiagrams_of_weight(lambda, w) {
        if z.select(&nu).det().is_zero() {
            let check = if generic { FailedCheck::MaximalMinor } else { FailedCheck::GenericStratum };
            return CharvarVerdict {
                trivial: false,
                failed_check: Some(check),
                witness: validated(minor_witness(z, &nu)),
                failing_subdiagram: Some(nu),
            };
        }
    }
    for weight in w + 1..=z.n_total() {
        for mu in subdiagrams_of_weight(lambda, weight) {
            if z.select(&mu).rank() < w {
                return CharvarVerdict {
                    trivial: false,
                    failed_check: Some(FailedCheck::OversizedRank),
                    witness: validated(rank_witness(z, &mu)),
                    failing_subdiagram: Some(mu),
                };
            }
        }
    }
    CharvarVerdict { trivial: true, failed_check: None, failing_subdiagram: None, witness: None }
}

/// A sampled generic point with the last selected column of the first
/// weight-`(r+1)` subdiagram replaced by its first selected column.
pub fn degenerate_point(lambda: &Partition, r: usize, seed: u64, bound: u64) -> Result<StratumMatrix> {
    let z = sample_stratum_point(lambda, r, seed, bound)?;
    let nu = subdiagrams_of_weight(lambda, r + 1).into_iter().next().expect("r + 1 ≤ N");
    let cols = nu.columns(lambda);
    let (first, last) = (cols[0], *cols.last().unwrap());
    let mut e = z.entries().clone();
    for i in 0..=r {
        let v = e.get(i, first).clone();
        e.set(i, last, v);
    }
    z.with_entries(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn v(x: &[i64]) -> Vec<ExactScalar> {
        x.iter().map(|&a| int(a)).collect()
    }

    fn z_of(l: &str, rows: &[&[i64]]) -> StratumMatrix {
        StratumMatrix::from_i64(rows.len() - 1, Partition::parse(l).unwrap(), rows).unwrap()
    }

    #[test]
    fn residual_examples() {
        let z = z_of("2,1,1", &[&[1, 2, 0, 1], &[0, 1, 1, 3]]);
        let zero = SymbolPoint { z: z.clone(), xi: ExactMatrix::zeros(2, 4) };
        assert!(symbol_residual(&zero).is_empty());
        let rank2 = SymbolPoint { z: z.clone(), xi: ExactMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]) };
        assert!(symbol_residual(&rank2).iter().any(|x| matches!(x, Violation::Minor { .. })));
        let bad = SymbolPoint { z, xi: outer(&v(&[1, 1]), &v(&[1, 0, 0, 0])) };
        assert!(symbol_residual(&bad).iter().any(|x| matches!(x, Violation::Frame { .. })));
    }

    #[test]
    fn rank1_examples() {
        let (a, b) = rank1_decompose(&ExactMatrix::zeros(2, 3)).unwrap();
        assert!(a.iter().chain(&b).all(|x| x.is_zero()));
        let xi = outer(&v(&[1, 2]), &v(&[3, 0, 1]));
        let (a, b) = rank1_decompose(&xi).unwrap();
        assert_eq!(outer(&a, &b), xi);
        assert!(rank1_decompose(&ExactMatrix::identity(2)).is_none());
    }

    #[test]
    fn profile_examples() {
        let l = Partition::parse("2,1").unwrap();
        assert_eq!(truncation_profile(&v(&[0, 0, 0]), &l).counts(), &[0, 0]);
        assert_eq!(truncation_profile(&v(&[5, 0, 3]), &l).counts(), &[1, 1]);
        assert_eq!(truncation_profile(&v(&[0, 1, 0]), &Partition::parse("3").unwrap()).counts(), &[2]);
    }

    #[test]
    fn verdicts() {
        let l = Partition::parse("2,1,1").unwrap();
        let z = sample_stratum_point(&l, 1, 7, 5).unwrap();
        assert!(charvar_trivial(&z).trivial);

        let z = z_of("1,1,1", &[&[1, 0, 1], &[0, 1, 0]]);
        let verdict = charvar_trivial(&z);
        assert!(!verdict.trivial);
        assert_eq!(verdict.failing_subdiagram.unwrap().counts(), &[1, 0, 1]);
        let w = verdict.witness.expect("validated witness");
        assert!(!w.xi.is_zero() && symbol_residual(&w).is_empty());

        let d = degenerate_point(&l, 1, 3, 5).unwrap();
        let verdict = charvar_trivial(&d);
        assert!(!verdict.trivial && verdict.witness.is_some());
    }

    #[test]
    fn small_profiles_force_zero() {
        let l = Partition::parse("2,2,1").unwrap();
        let z = sample_stratum_point(&l, 2, 4, 5).unwrap();
        for w in 0..=3 {
            for mu in subdiagrams_of_weight(&l, w) {
                assert!(profile_kernel(&z, &mu).is_empty(), "{mu}");
            }
        }
    }
}
