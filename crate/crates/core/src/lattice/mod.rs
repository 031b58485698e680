//! Lattice geometry, local weights, state enumeration and the tangle evaluator.

pub mod enumerate;
pub mod tangle;
pub mod weights;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, int, rat, MonomialWeight, QLaurent, Rational};
use crate::error::{Error, Result};

pub use enumerate::{
    enumerate_states_a, enumerate_states_bc, partition_function_a, partition_function_bc, LatticeState,
};

pub use tangle::{evaluate_tangle, TangleDiagram};
pub use weights::{bend_weight, r_weight, rect_weight};

/// Weakly decreasing sequence of nonnegative parts; its length is the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("partition must have at least one part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn largest(&self) -> u32 {
        self.0[0]
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts equal to `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.0.iter().filter(|&&p| p == value).count()
    }

    pub fn shifted(&self, by: u32) -> Self {
        Self(self.0.iter().map(|p| p + by).collect())
    }

    /// All partitions of length `r` with largest part at most `max`.
    pub fn all_in_box(r: usize, max: u32) -> Vec<Partition> {
        fn rec(r: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if cur.len() == r {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (0..=cap).rev() {
                cur.push(p);
                rec(r, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(r, max, &mut Vec::new(), &mut out);
        out
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Exact values for `q` and the spectral parameters `x_1..x_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPoint {
    #[serde(with = "arith::rational_serde")]
    pub q: Rational,
    #[serde(with = "arith::rational_vec_serde")]
    pub xs: Vec<Rational>,
}

impl SpectralPoint {
    pub fn new(q: Rational, xs: Vec<Rational>) -> Self {
        Self { q, xs }
    }

    pub fn rank(&self) -> usize {
        self.xs.len()
    }

    /// `x_j` for 1-based `j`.
    pub fn x(&self, j: usize) -> &Rational {
        &self.xs[j - 1]
    }

    /// Describes the first genericity condition that fails, if any.
    pub fn genericity_violation(&self) -> Option<String> {
        let q = &self.q;
        let one = Rational::one();
        if q.is_zero() || *q == one || *q == -one.clone() {
            return Some(format!("q = {} is degenerate", arith::format_rational(q)));
        }
        if self.xs.iter().any(|x| x.is_zero()) {
            return Some("some x_i is zero".into());
        }
        // Every slot parameter x_i^{+-1}; all pairwise differences and
        // q-shifted differences must be nonzero.
        let mut vals: Vec<(usize, Rational)> = Vec::new();
        for (i, x) in self.xs.iter().enumerate() {
            vals.push((i, x.clone()));
            vals.push((i, x.recip()));
        }
        for (a, (i, u)) in vals.iter().enumerate() {
            for (b, (j, v)) in vals.iter().enumerate() {
                if a == b {
                    continue;
                }
                if u == v {
                    return Some(format!("x_{}^(+-1) collides with x_{}^(+-1)", i + 1, j + 1));
                }
                if *u == q * v {
                    return Some(format!("x_{}^(+-1) = q x_{}^(+-1)", i + 1, j + 1));
                }
            }
        }
        None
    }

    pub fn is_generic(&self) -> bool {
        self.genericity_violation().is_none()
    }

    pub fn swapped(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.xs.swap(i - 1, i);
        p
    }

    pub fn inverted(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.xs[i - 1] = p.xs[i - 1].recip();
        p
    }
}

/// Deterministic generator of random exact points.
pub struct PointSampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl PointSampler {
    pub const DEFAULT_BOUND: i64 = 1_000_000;

    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), bound: Self::DEFAULT_BOUND }
    }

    pub fn with_bound(seed: u64, bound: i64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), bound: bound.max(2) }
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.bound..=self.bound);
        let d = self.rng.gen_range(1..=self.bound);
        rat(n, d)
    }

    /// Draws until the point passes every genericity predicate.
    pub fn point(&mut self, r: usize) -> SpectralPoint {
        loop {
            let q = self.rational();
            let xs = (0..r).map(|_| self.rational()).collect();
            let p = SpectralPoint::new(q, xs);
            if p.is_generic() {
                return p;
            }
        }
    }

    pub fn points(&mut self, r: usize, n: usize) -> Vec<SpectralPoint> {
        (0..n).map(|_| self.point(r)).collect()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// The four bend weights of one pair of rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BendRow {
    #[serde(rename = "A")]
    pub a: MonomialWeight,
    #[serde(rename = "B")]
    pub b: MonomialWeight,
    #[serde(rename = "C")]
    pub c: MonomialWeight,
    #[serde(rename = "D")]
    pub d: MonomialWeight,
}

impl BendRow {
    pub fn new(a: MonomialWeight, b: MonomialWeight, c: MonomialWeight, d: MonomialWeight) -> Self {
        Self { a, b, c, d }
    }

    /// Weight for arc occupancy `(upper, lower)`.
    pub fn get(&self, upper: u8, lower: u8) -> &MonomialWeight {
        match (upper, lower) {
            (0, 0) => &self.a,
            (0, _) => &self.b,
            (_, 0) => &self.c,
            _ => &self.d,
        }
    }

    pub fn get_mut(&mut self, upper: u8, lower: u8) -> &mut MonomialWeight {
        match (upper, lower) {
            (0, 0) => &mut self.a,
            (0, _) => &mut self.b,
            (_, 0) => &mut self.c,
            _ => &mut self.d,
        }
    }

    /// `C = 1, B = -q, A = D = 0`.
    pub fn wzj() -> Self {
        Self::new(
            MonomialWeight::zero(),
            MonomialWeight::constant(QLaurent::monomial(int(-1), 1)),
            MonomialWeight::one(),
            MonomialWeight::zero(),
        )
    }

    pub fn all_ones() -> Self {
        Self::new(MonomialWeight::one(), MonomialWeight::one(), MonomialWeight::one(), MonomialWeight::one())
    }

    /// Constants with `B = C = c`.
    pub fn equal_bc(a: QLaurent, c: QLaurent, d: QLaurent) -> Self {
        Self::new(
            MonomialWeight::constant(a),
            MonomialWeight::constant(c.clone()),
            MonomialWeight::constant(c),
            MonomialWeight::constant(d),
        )
    }

    /// `B = q m x`, `C = m x^{-1}`, constant `A`, `D`.
    pub fn shifted_bc(a: QLaurent, m: QLaurent, d: QLaurent) -> Self {
        Self::new(
            MonomialWeight::constant(a),
            MonomialWeight::new(&m * &QLaurent::q(), 1),
            MonomialWeight::new(m, -1),
            MonomialWeight::constant(d),
        )
    }
}

/// Per-pair bend weights, indexed `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BendWeights {
    pub rows: Vec<BendRow>,
}

impl BendWeights {
    pub fn new(rows: Vec<BendRow>) -> Self {
        Self { rows }
    }

    pub fn uniform(row: BendRow, r: usize) -> Self {
        Self { rows: vec![row; r] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Row `j`, 1-based.
    pub fn row(&self, j: usize) -> Result<&BendRow> {
        if j == 0 || j > self.rows.len() {
            return Err(Error::InvalidInput(format!("bend index {j} out of range 1..={}", self.rows.len())));
        }
        Ok(&self.rows[j - 1])
    }

    pub fn require_rank(&self, r: usize) -> Result<()> {
        if self.rows.len() < r {
            return Err(Error::InvalidInput(format!("need {r} bend rows, have {}", self.rows.len())));
        }
        Ok(())
    }

    /// Indices of rows whose listed weights are all zero.
    pub fn zero_pattern(&self) -> BTreeSet<(usize, char)> {
        let mut out = BTreeSet::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (ch, w) in [('A', &row.a), ('B', &row.b), ('C', &row.c), ('D', &row.d)] {
                if w.is_zero() {
                    out.insert((j + 1, ch));
                }
            }
        }
        out
    }
}
