//! Partitions, subdiagrams and the generic stratum.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{int, parse_ratio, to_ratio_string};
use crate::algebra::{ExactMatrix, ExactScalar};
use crate::error::{Error, Result};
use crate::sampling::Stream;

/// Ordered block sizes `(n_1, …, n_ℓ)`; order matters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Invalid(format!("partition parts must be positive: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Parses `"2,1,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad partition {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `N = Σ n_k`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Column index of the first column of block `k`.
    pub fn offset(&self, k: usize) -> usize {
        self.parts[..k].iter().sum()
    }

    /// Block, position within it, for every column.
    pub fn column_labels(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(k, &n)| (0..n).map(move |j| (k, j)))
            .collect()
    }

    /// All partitions of `n` with weakly decreasing parts, in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Blocks reordered so that block `order[i]` becomes block `i`.
    pub fn permuted(&self, order: &[usize]) -> Partition {
        Partition { parts: order.iter().map(|&k| self.parts[k]).collect() }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Componentwise truncation `(m_1, …, m_ℓ)` of a partition.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subdiagram {
    counts: Vec<usize>,
}

impl Subdiagram {
    pub fn new(counts: Vec<usize>, parent: &Partition) -> Result<Self> {
        if counts.len() != parent.len() || counts.iter().zip(parent.parts()).any(|(m, n)| m > n) {
            return Err(Error::Invalid(format!("{counts:?} is not a subdiagram of {parent}")));
        }
        Ok(Subdiagram { counts })
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn weight(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Global column indices selected by this subdiagram, in block order.
    pub fn columns(&self, parent: &Partition) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(k, &m)| (0..m).map(move |j| parent.offset(k) + j))
            .collect()
    }

    pub fn contains(&self, other: &Subdiagram) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for Subdiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.counts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All subdiagrams of weight `w`, in descending lexicographic order of counts.
pub fn subdiagrams_of_weight(lambda: &Partition, w: usize) -> Vec<Subdiagram> {
    fn rec(parts: &[usize], k: usize, rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Subdiagram>) {
        if k == parts.len() {
            if rest == 0 {
                out.push(Subdiagram { counts: cur.clone() });
            }
            return;
        }
        let capacity: usize = parts[k + 1..].iter().sum();
        for m in (0..=parts[k].min(rest)).rev() {
            if rest - m > capacity {
                break;
            }
            cur.push(m);
            rec(parts, k + 1, rest - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(lambda.parts(), 0, w, &mut Vec::new(), &mut out);
    out
}

/// Subdiagrams of every weight.
pub fn all_subdiagrams(lambda: &Partition) -> Vec<Subdiagram> {
    (0..=lambda.total()).flat_map(|w| subdiagrams_of_weight(lambda, w)).collect()
}

/// An `(r+1) × N` matrix whose columns are grouped into the blocks of a partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StratumMatrix {
    r: usize,
    partition: Partition,
    entries: ExactMatrix,
}

impl StratumMatrix {
    pub fn new(r: usize, partition: Partition, entries: ExactMatrix) -> Result<Self> {
        let n = partition.total();
        if r == 0 {
            return Err(Error::Invalid("r must be positive".into()));
        }
        if r + 1 >= n {
            return Err(Error::Invalid(format!("need r + 1 < N, got r = {r}, N = {n}")));
        }
        if entries.rows() != r + 1 || entries.cols() != n {
            return Err(Error::Invalid(format!(
                "expected a {}x{} matrix, got {}x{}",
                r + 1,
                n,
                entries.rows(),
                entries.cols()
            )));
        }
        Ok(StratumMatrix { r, partition, entries })
    }

    pub fn from_i64(r: usize, partition: Partition, rows: &[&[i64]]) -> Result<Self> {
        StratumMatrix::new(r, partition, ExactMatrix::from_i64(rows))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn entries(&self) -> &ExactMatrix {
        &self.entries
    }

    pub fn n_total(&self) -> usize {
        self.partition.total()
    }

    /// Column `j` of block `k`.
    pub fn column(&self, k: usize, j: usize) -> Vec<ExactScalar> {
        assert!(j < self.partition.parts()[k]);
        self.entries.column(self.partition.offset(k) + j)
    }

    /// Columns of block `k`.
    pub fn block(&self, k: usize) -> Vec<Vec<ExactScalar>> {
        (0..self.partition.parts()[k]).map(|j| self.column(k, j)).collect()
    }

    pub fn block_matrix(&self, k: usize) -> ExactMatrix {
        ExactMatrix::from_columns(&self.block(k))
    }

    /// The square matrix of the first `m_k` columns of every block.
    pub fn extract_z_mu(&self, mu: &Subdiagram) -> Result<ExactMatrix> {
        if mu.weight() != self.r + 1 {
            return Err(Error::WeightMismatch);
        }
        Ok(self.select(mu))
    }

    /// Columns selected by a subdiagram of any weight.
    pub fn select(&self, mu: &Subdiagram) -> ExactMatrix {
        self.entries.select_columns(&mu.columns(&self.partition))
    }

    /// First subdiagram of weight `r + 1` whose minor vanishes, if any.
    pub fn stratum_witness(&self) -> Option<Subdiagram> {
        generic_witness(&self.entries, &self.partition)
    }

    pub fn is_generic_stratum(&self) -> bool {
        self.stratum_witness().is_none()
    }

    /// `g · z` for an `(r+1) × (r+1)` matrix `g`.
    pub fn left_mul(&self, g: &ExactMatrix) -> StratumMatrix {
        StratumMatrix { r: self.r, partition: self.partition.clone(), entries: g.mul(&self.entries) }
    }

    /// Blocks reordered so that old block `order[i]` becomes block `i`.
    pub fn permute_blocks(&self, order: &[usize]) -> StratumMatrix {
        let cols: Vec<Vec<ExactScalar>> = order.iter().flat_map(|&k| self.block(k)).collect();
        StratumMatrix {
            r: self.r,
            partition: self.partition.permuted(order),
            entries: ExactMatrix::from_columns(&cols),
        }
    }

    pub fn with_entries(&self, entries: ExactMatrix) -> Result<StratumMatrix> {
        StratumMatrix::new(self.r, self.partition.clone(), entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StratumJson::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: StratumJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        j.try_into()
    }
}

/// First vanishing maximal minor `det z_μ`, `|μ| = rows`, of a matrix
/// partitioned by `lambda`; works for any shape, including `rows ≥ N`.
pub fn generic_witness(entries: &ExactMatrix, lambda: &Partition) -> Option<Subdiagram> {
    subdiagrams_of_weight(lambda, entries.rows())
        .into_iter()
        .find(|mu| entries.select_columns(&mu.columns(lambda)).det().is_zero())
}

/// Wire format `{r, lambda, entries}` with `"p/q"` entries.
#[derive(Serialize, Deserialize)]
pub struct StratumJson {
    pub r: usize,
    pub lambda: Vec<usize>,
    pub entries: Vec<Vec<String>>,
}

impl From<&StratumMatrix> for StratumJson {
    fn from(z: &StratumMatrix) -> Self {
        StratumJson {
            r: z.r,
            lambda: z.partition.parts.clone(),
            entries: z.entries.to_rows().iter().map(|row| row.iter().map(to_ratio_string).collect()).collect(),
        }
    }
}

impl TryFrom<StratumJson> for StratumMatrix {
    type Error = Error;
    fn try_from(j: StratumJson) -> Result<Self> {
        let rows = j
            .entries
            .iter()
            .map(|row| row.iter().map(|s| parse_ratio(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        StratumMatrix::new(j.r, Partition::new(j.lambda)?, ExactMatrix::from_rows(rows))
    }
}

pub const MAX_SAMPLING_DRAWS: usize = 1000;

/// Deterministic integer point of the generic stratum.
///
/// Each draw fills the matrix row-major from the seeded stream; draws repeat
/// until the stratum test passes.
pub fn sample_stratum_point(lambda: &Partition, r: usize, seed: u64, bound: u64) -> Result<StratumMatrix> {
    let mut stream = Stream::new(seed);
    sample_from_stream(lambda, r, &mut stream, bound)
}

pub fn sample_from_stream(lambda: &Partition, r: usize, stream: &mut Stream, bound: u64) -> Result<StratumMatrix> {
    let n = lambda.total();
    if r == 0 || r + 1 >= n {
        return Err(Error::Invalid(format!("need 0 < r and r + 1 < N, got r = {r}, N = {n}")));
    }
    for _ in 0..MAX_SAMPLING_DRAWS {
        let rows: Vec<Vec<ExactScalar>> = (0..=r).map(|_| (0..n).map(|_| int(stream.int_in(bound))).collect()).collect();
        let z = StratumMatrix::new(r, lambda.clone(), ExactMatrix::from_rows(rows))?;
        if z.is_generic_stratum() {
            return Ok(z);
        }
    }
    Err(Error::SamplingExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn counts(list: &[Subdiagram]) -> Vec<Vec<usize>> {
        list.iter().map(|m| m.counts().to_vec()).collect()
    }

    #[test]
    fn subdiagram_examples() {
        let l = part(&[4, 3, 3, 2]);
        assert!(counts(&subdiagrams_of_weight(&l, 4)).contains(&vec![1, 2, 0, 1]));
        assert_eq!(counts(&subdiagrams_of_weight(&part(&[1, 1, 1]), 2)), vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(counts(&subdiagrams_of_weight(&part(&[2, 1]), 2)), vec![vec![2, 0], vec![1, 1]]);
    }

    #[test]
    fn extraction_and_stratum_examples() {
        let l = part(&[1, 1, 1]);
        let z = StratumMatrix::from_i64(1, l.clone(), &[&[1, 0, 1], &[0, 1, -1]]).unwrap();
        let mu = Subdiagram::new(vec![1, 1, 0], &l).unwrap();
        assert_eq!(z.extract_z_mu(&mu).unwrap(), ExactMatrix::from_i64(&[&[1, 0], &[0, 1]]));
        let mu = Subdiagram::new(vec![1, 0, 1], &l).unwrap();
        assert_eq!(z.extract_z_mu(&mu).unwrap(), ExactMatrix::from_i64(&[&[1, 1], &[0, -1]]));
        assert_eq!(z.extract_z_mu(&Subdiagram::new(vec![1, 0, 0], &l).unwrap()), Err(Error::WeightMismatch));
        assert!(z.is_generic_stratum());
        let bad = StratumMatrix::from_i64(1, l.clone(), &[&[1, 0, 1], &[0, 1, 0]]).unwrap();
        assert_eq!(bad.stratum_witness().unwrap().counts(), &[1, 0, 1]);
        let l21 = part(&[2, 1]);
        let z = StratumMatrix::from_i64(1, l21.clone(), &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        let mu = Subdiagram::new(vec![2, 0], &l21).unwrap();
        assert_eq!(z.extract_z_mu(&mu).unwrap(), ExactMatrix::from_i64(&[&[1, 2], &[4, 5]]));
    }

    #[test]
    fn sampling_examples() {
        let z = sample_stratum_point(&part(&[1, 1, 1, 1]), 1, 7, 5).unwrap();
        assert!(z.is_generic_stratum());
        assert_eq!(z, sample_stratum_point(&part(&[1, 1, 1, 1]), 1, 7, 5).unwrap());
        let z = sample_stratum_point(&part(&[2, 1, 1]), 1, 3, 5).unwrap();
        for mu in subdiagrams_of_weight(z.partition(), 2) {
            assert!(!z.extract_z_mu(&mu).unwrap().det().is_zero());
        }
        assert_eq!(sample_stratum_point(&part(&[1, 1, 1]), 1, 1, 0), Err(Error::SamplingExhausted));
        assert!(sample_stratum_point(&part(&[1, 1]), 1, 1, 5).is_err());
    }

    #[test]
    fn json_round_trip() {
        let z = sample_stratum_point(&part(&[2, 1, 1]), 1, 11, 9).unwrap();
        let g = ExactMatrix::from_rows(vec![vec![crate::algebra::rational::rat(1, 3), int(2)], vec![int(0), int(-1)]]);
        let w = z.left_mul(&g);
        let j = w.to_json();
        assert_eq!(StratumMatrix::from_json(&j).unwrap(), w);
        assert!(j["entries"][0][0].as_str().unwrap().contains('/'));
    }

    #[test]
    fn partitions_of_small_numbers() {
        let counts: Vec<usize> = (3..=6).map(|n| Partition::all_of(n).len()).collect();
        assert_eq!(counts, vec![3, 5, 7, 11]);
    }
}
