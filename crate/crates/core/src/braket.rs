//! Column transfer operators on the `2r` slots of a type B/C lattice, the
//! twisting matrices `F`, `F*` and `Delta`, and the bra of bend weights.
//!
//! Slots run top to bottom as `x_r, 1/x_r, ..., x_1, 1/x_1`. A state of the
//! slots is a bitmask whose most significant bit (of `2r`) is the top slot.
//! A column operator maps the occupancy on its right to the one on its
//! left, so the partition function reads `<K| C_0 C_1 ... C_{lambda_1} |0>`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Rational};
use crate::classify::{check_scenario, ScenarioSpec};
use crate::error::{Error, Result};
use crate::lattice::weights::rect_weight_unchecked;
use crate::lattice::{bend_weight, r_weight, BendWeights, Partition, SpectralPoint};
use crate::relations::{check_solvable, uniform_regime, FishConstantKind, SolveMode, Verdict};

pub type SparseVec = BTreeMap<u32, Rational>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OccupancyVector {
    /// Top slot first.
    pub bits: Vec<u8>,
}

impl OccupancyVector {
    pub fn from_index(index: u32, nslots: usize) -> Self {
        Self { bits: (0..nslots).map(|s| bit(index, nslots, s)).collect() }
    }

    pub fn index(&self) -> u32 {
        let n = self.bits.len();
        self.bits.iter().enumerate().fold(0, |acc, (s, &b)| acc | ((b as u32) << (n - 1 - s)))
    }

    pub fn particles(&self) -> usize {
        self.bits.iter().filter(|b| **b == 1).count()
    }
}

impl std::fmt::Display for OccupancyVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

fn bit(index: u32, n: usize, s: usize) -> u8 {
    ((index >> (n - 1 - s)) & 1) as u8
}

fn with_bit(index: u32, n: usize, s: usize, v: u8) -> u32 {
    let m = 1 << (n - 1 - s);
    if v == 1 {
        index | m
    } else {
        index & !m
    }
}

/// Slot parameters top to bottom.
pub fn slot_params(pt: &SpectralPoint) -> Vec<Rational> {
    let mut p = Vec::with_capacity(2 * pt.rank());
    for x in pt.xs.iter().rev() {
        p.push(x.clone());
        p.push(x.recip());
    }
    p
}

/// Slot of `x_j` (the slot of `1/x_j` is one below).
pub fn upper_slot(r: usize, j: usize) -> usize {
    2 * (r - j)
}

/// Sparse square matrix over slot states; `(left, right)` keyed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub nslots: usize,
    pub entries: BTreeMap<(u32, u32), Rational>,
}

impl TransferMatrix {
    pub fn zero(nslots: usize) -> Self {
        Self { nslots, entries: BTreeMap::new() }
    }

    pub fn identity(nslots: usize) -> Self {
        let entries = (0..1u32 << nslots).map(|i| ((i, i), Rational::one())).collect();
        Self { nslots, entries }
    }

    pub fn diagonal(nslots: usize, values: &[Rational]) -> Self {
        let entries =
            values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| ((i as u32, i as u32), v.clone())).collect();
        Self { nslots, entries }
    }

    pub fn dim(&self) -> usize {
        1 << self.nslots
    }

    pub fn get(&self, l: u32, r: u32) -> Rational {
        self.entries.get(&(l, r)).cloned().unwrap_or_else(Rational::zero)
    }

    fn add(&mut self, l: u32, r: u32, v: Rational) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((l, r)).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(l, r));
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut rows: HashMap<u32, Vec<(u32, &Rational)>> = HashMap::new();
        for ((k, j), v) in &other.entries {
            rows.entry(*k).or_default().push((*j, v));
        }
        let mut out = Self::zero(self.nslots);
        for ((i, k), a) in &self.entries {
            if let Some(row) = rows.get(k) {
                for (j, b) in row {
                    out.add(*i, *j, a * *b);
                }
            }
        }
        out
    }

    /// `M v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((l, r), w) in &self.entries {
            if let Some(x) = v.get(r) {
                *out.entry(*l).or_insert_with(Rational::zero) += w * x;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    /// `v M`.
    pub fn apply_bra(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for ((l, r), w) in &self.entries {
            if let Some(x) = v.get(l) {
                *out.entry(*r).or_insert_with(Rational::zero) += x * w;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nslots)
    }

    /// Entry `(left, right)` is zero unless the particle counts differ by
    /// exactly `shift` (left minus right).
    pub fn respects_flux(&self, shift: i64) -> bool {
        self.entries.keys().all(|(l, r)| l.count_ones() as i64 - r.count_ones() as i64 == shift)
    }
}

/// One column with `inflow` paths entering from below and none leaving at
/// the top. `twisted` selects the conjugated weights, whose pass-through
/// factor depends on the set of slots where a path turns left.
pub fn column_operator_slots(inflow: u32, params: &[Rational], q: &Rational, twisted: bool) -> Result<TransferMatrix> {
    let n = params.len();
    let mut m = TransferMatrix::zero(n);
    let mut stack: Vec<(u8, u8, u32)> = Vec::with_capacity(n);
    column_dfs(n, inflow, params, q, twisted, &mut stack, &mut m)?;
    Ok(m)
}

fn column_dfs(
    n: usize,
    below: u32,
    p: &[Rational],
    q: &Rational,
    twisted: bool,
    stack: &mut Vec<(u8, u8, u32)>,
    out: &mut TransferMatrix,
) -> Result<()> {
    let depth = stack.len();
    if depth == n {
        if below != 0 {
            return Ok(());
        }
        // stack[d] holds slot n-1-d.
        let mut l_idx = 0;
        let mut r_idx = 0;
        for (d, &(l, r, _)) in stack.iter().enumerate() {
            let s = n - 1 - d;
            l_idx = with_bit(l_idx, n, s, l);
            r_idx = with_bit(r_idx, n, s, r);
        }
        let w = column_weight(n, p, q, twisted, stack)?;
        out.add(l_idx, r_idx, w);
        return Ok(());
    }
    for l in 0..2u8 {
        for r in 0..2u8 {
            let top = below as i64 + r as i64 - l as i64;
            if top < 0 {
                continue;
            }
            // Remaining slots above can absorb at most one path each.
            if top as usize > n - depth - 1 {
                continue;
            }
            stack.push((l, r, top as u32));
            column_dfs(n, top as u32, p, q, twisted, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

fn column_weight(n: usize, p: &[Rational], q: &Rational, twisted: bool, stack: &[(u8, u8, u32)]) -> Result<Rational> {
    let slot = |d: usize| n - 1 - d;
    let mut w = Rational::one();
    if !twisted {
        for (d, &(l, r, t)) in stack.iter().enumerate() {
            w *= rect_weight_unchecked(l, r, t, &p[slot(d)], q);
        }
        return Ok(w);
    }
    let turns: Vec<usize> = stack.iter().enumerate().filter(|(_, c)| c.0 == 1 && c.1 == 0).map(|(d, _)| slot(d)).collect();
    for (d, &(l, r, _)) in stack.iter().enumerate() {
        let s = slot(d);
        match (l, r) {
            (0, 0) => {}
            (0, _) => return Ok(Rational::zero()),
            (_, 0) => w *= &p[s],
            _ => {
                w *= &p[s];
                for &k in turns.iter().filter(|&&k| k != s) {
                    w *= arith::div(&(&p[s] - q * &p[k]), &(&p[s] - &p[k]), "twisted weight x_j - x_k")?;
                }
            }
        }
    }
    Ok(w)
}

pub fn column_operator(inflow: u32, pt: &SpectralPoint) -> Result<TransferMatrix> {
    column_operator_slots(inflow, &slot_params(pt), &pt.q, false)
}

pub fn twisted_column_operator(inflow: u32, pt: &SpectralPoint) -> Result<TransferMatrix> {
    column_operator_slots(inflow, &slot_params(pt), &pt.q, true)
}

/// Local crossing weight between slots `s` and `s+1` for left states `(a, b)`
/// and right states `(c, d)`.
fn local_r(a: u8, b: u8, c: u8, d: u8, s: usize, p: &[Rational], q: &Rational) -> Result<Rational> {
    if a + b != c + d {
        return Ok(Rational::zero());
    }
    r_weight(a, b, c, d, &p[s + 1], &p[s], q)
}

/// Crossing of slots `s` (upper) and `s + 1` placed left of a column, with
/// the upper strand carrying the lower slot's parameter.
pub fn slot_r_matrix(s: usize, params: &[Rational], q: &Rational) -> Result<TransferMatrix> {
    let n = params.len();
    if s + 1 >= n {
        return Err(Error::InvalidInput(format!("slot {s} has no neighbour below among {n} slots")));
    }
    let mut m = TransferMatrix::zero(n);
    for base in 0..1u32 << n {
        if bit(base, n, s) != 0 || bit(base, n, s + 1) != 0 {
            continue;
        }
        for (a, b, c, d) in local_states() {
            let l = with_bit(with_bit(base, n, s, a), n, s + 1, b);
            let r = with_bit(with_bit(base, n, s, c), n, s + 1, d);
            m.add(l, r, local_r(a, b, c, d, s, params, q)?);
        }
    }
    Ok(m)
}

fn local_states() -> impl Iterator<Item = (u8, u8, u8, u8)> {
    (0..16u8).map(|m| (m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1)).filter(|(a, b, c, d)| a + b == c + d)
}

/// `v R_s(p)`.
fn r_bra(v: &SparseVec, n: usize, s: usize, p: &[Rational], q: &Rational) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    for (l, x) in v {
        let (a, b) = (bit(*l, n, s), bit(*l, n, s + 1));
        for (c, d) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let w = local_r(a, b, c, d, s, p, q)?;
            if !w.is_zero() {
                let r = with_bit(with_bit(*l, n, s, c), n, s + 1, d);
                *out.entry(r).or_insert_with(Rational::zero) += x * w;
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    Ok(out)
}

/// `R_s(p) v`.
fn r_ket(v: &SparseVec, n: usize, s: usize, p: &[Rational], q: &Rational) -> Result<SparseVec> {
    let mut out = SparseVec::new();
    for (r, x) in v {
        let (c, d) = (bit(*r, n, s), bit(*r, n, s + 1));
        for (a, b) in [(0u8, 0u8), (0, 1), (1, 0), (1, 1)] {
            let w = local_r(a, b, c, d, s, p, q)?;
            if !w.is_zero() {
                let l = with_bit(with_bit(*r, n, s, a), n, s + 1, b);
                *out.entry(l).or_insert_with(Rational::zero) += w * x;
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    Ok(out)
}

/// One adjacent swap of a bubble sort: slot `s`, parameters before and
/// after exchanging slots `s` and `s + 1`.
struct Step {
    s: usize,
    before: Vec<Rational>,
    after: Vec<Rational>,
}

/// Bubbles the particles of `c` to the bottom (`down`) or the top, and
/// records the braid word.
fn bubble(c: u32, params: &[Rational], down: bool) -> (u32, Vec<Step>) {
    let n = params.len();
    let mut c = c;
    let mut p = params.to_vec();
    let mut steps = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for s in 0..n.saturating_sub(1) {
            let (a, b) = (bit(c, n, s), bit(c, n, s + 1));
            if (down && a == 1 && b == 0) || (!down && a == 0 && b == 1) {
                let before = p.clone();
                p.swap(s, s + 1);
                c = with_bit(with_bit(c, n, s, b), n, s + 1, a);
                steps.push(Step { s, before, after: p.clone() });
                changed = true;
            }
        }
    }
    (c, steps)
}

/// `prod_{o occupied, e empty} (p_o - p_e)/(p_o - q p_e)`.
pub fn delta_entry(c: u32, params: &[Rational], q: &Rational) -> Result<Rational> {
    let n = params.len();
    let mut v = Rational::one();
    for o in (0..n).filter(|&o| bit(c, n, o) == 1) {
        for e in (0..n).filter(|&e| bit(c, n, e) == 0) {
            v *= arith::div(&(&params[o] - &params[e]), &(&params[o] - q * &params[e]), "Delta p_o - q p_e")?;
        }
    }
    Ok(v)
}

/// Row `c` of `F`: `<sorted(c)| R...R`, with the particles of `c` moved to
/// the bottom.
pub fn f_row(c: u32, params: &[Rational], q: &Rational) -> Result<SparseVec> {
    let n = params.len();
    let (sorted, steps) = bubble(c, params, true);
    let mut v = SparseVec::from([(sorted, Rational::one())]);
    for st in steps.iter().rev() {
        v = r_bra(&v, n, st.s, &st.before, q)?;
    }
    Ok(v)
}

/// Column `c` of `F*`: the inverse braid applied to `c` with its particles
/// moved to the top.
pub fn fstar_column(c: u32, params: &[Rational], q: &Rational) -> Result<SparseVec> {
    let n = params.len();
    let (top, steps) = bubble(c, params, false);
    let mut v = SparseVec::from([(top, Rational::one())]);
    for st in steps.iter().rev() {
        v = r_ket(&v, n, st.s, &st.after, q)?;
    }
    Ok(v)
}

pub struct FMatrices {
    pub f: TransferMatrix,
    pub fstar: TransferMatrix,
    pub delta: TransferMatrix,
}

impl FMatrices {
    /// `F* Delta^{-1}`.
    pub fn f_inverse(&self) -> Result<TransferMatrix> {
        let mut inv = TransferMatrix::zero(self.f.nslots);
        for ((l, r), v) in &self.fstar.entries {
            let d = self.delta.get(*r, *r);
            inv.add(*l, *r, arith::div(v, &d, "Delta entry")?);
        }
        Ok(inv)
    }
}

pub fn f_matrices(pt: &SpectralPoint) -> Result<FMatrices> {
    f_matrices_slots(&slot_params(pt), &pt.q)
}

pub fn f_matrices_slots(params: &[Rational], q: &Rational) -> Result<FMatrices> {
    let n = params.len();
    let mut f = TransferMatrix::zero(n);
    let mut fstar = TransferMatrix::zero(n);
    let mut deltas = Vec::with_capacity(1 << n);
    for c in 0..1u32 << n {
        for (j, v) in f_row(c, params, q)? {
            f.add(c, j, v);
        }
        for (i, v) in fstar_column(c, params, q)? {
            fstar.add(i, c, v);
        }
        deltas.push(delta_entry(c, params, q)?);
    }
    Ok(FMatrices { f, fstar, delta: TransferMatrix::diagonal(n, &deltas) })
}

/// Row vector of products of bend weights, pair `j` read off the slots of
/// `x_j` (upper arc) and `1/x_j` (lower arc).
pub fn k_bra(bw: &BendWeights, pt: &SpectralPoint) -> Result<SparseVec> {
    let r = pt.rank();
    bw.require_rank(r)?;
    let n = 2 * r;
    let mut out = SparseVec::new();
    for c in 0..1u32 << n {
        let mut w = Rational::one();
        for j in 1..=r {
            let s = upper_slot(r, j);
            w *= bend_weight(bw, j, bit(c, n, s), bit(c, n, s + 1), pt.x(j), &pt.q)?;
            if w.is_zero() {
                break;
            }
        }
        if !w.is_zero() {
            out.insert(c, w);
        }
    }
    Ok(out)
}

/// `<K| F^{-1}` restricted to states with `r` particles, from
/// `<K|F^{-1}|c> = <K| B_c^{-1} |top(c)> / Delta(c)`.
pub fn kf_generic(bw: &BendWeights, pt: &SpectralPoint) -> Result<SparseVec> {
    let r = pt.rank();
    let n = 2 * r;
    let params = slot_params(pt);
    let q = &pt.q;
    let k: SparseVec = k_bra(bw, pt)?.into_iter().filter(|(c, _)| c.count_ones() as usize == r).collect();
    let mut out = SparseVec::new();
    for c in (0..1u32 << n).filter(|c| c.count_ones() as usize == r) {
        let (top, steps) = bubble(c, &params, false);
        let mut v = k.clone();
        for st in &steps {
            v = r_bra(&v, n, st.s, &st.after, q)?;
        }
        if let Some(x) = v.get(&top) {
            let val = arith::div(x, &delta_entry(c, &params, q)?, "Delta entry")?;
            if !val.is_zero() {
                out.insert(c, val);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraketMethod {
    /// `<K| C_0 ... C_{lambda_1} |0>`.
    Braket,
    /// `<K| F^{-1} C~_0 ... C~_{lambda_1} |0>`.
    Twisted,
}

fn column_chain(lambda: &Partition, params: &[Rational], q: &Rational, twisted: bool) -> Result<SparseVec> {
    let mut cache: BTreeMap<u32, TransferMatrix> = BTreeMap::new();
    let mut v = SparseVec::from([(0u32, Rational::one())]);
    for col in (0..=lambda.largest()).rev() {
        let inflow = lambda.multiplicity(col) as u32;
        if !cache.contains_key(&inflow) {
            cache.insert(inflow, column_operator_slots(inflow, params, q, twisted)?);
        }
        v = cache[&inflow].apply(&v);
    }
    Ok(v)
}

fn pair(a: &SparseVec, b: &SparseVec) -> Rational {
    a.iter().filter_map(|(k, x)| b.get(k).map(|y| x * y)).sum()
}

pub fn braket_partition_function(
    lambda: &Partition,
    bw: &BendWeights,
    pt: &SpectralPoint,
    method: BraketMethod,
) -> Result<Rational> {
    if lambda.rank() != pt.rank() {
        return Err(Error::InvalidInput(format!("partition rank {} vs point rank {}", lambda.rank(), pt.rank())));
    }
    let params = slot_params(pt);
    match method {
        BraketMethod::Braket => Ok(pair(&k_bra(bw, pt)?, &column_chain(lambda, &params, &pt.q, false)?)),
        BraketMethod::Twisted => Ok(pair(&kf_generic(bw, pt)?, &column_chain(lambda, &params, &pt.q, true)?)),
    }
}

/// `<target| C~_0 ... C~_{lambda_1} |0>` for arbitrary slot parameters.
pub fn twisted_grid_direct(lambda: &Partition, params: &[Rational], q: &Rational, target: u32) -> Result<Rational> {
    Ok(column_chain(lambda, params, q, true)?.get(&target).cloned().unwrap_or_else(Rational::zero))
}

/// The state with the top `r` of `2r` slots occupied.
pub fn top_half(r: usize) -> u32 {
    ((1u32 << r) - 1) << r
}

/// `sum over sigma in S_r / Stab(lambda) of prod y_sigma(i)^(lambda_i + 1)
///  prod_{lambda_j > lambda_i} (y_sigma(j) - q y_sigma(i))/(y_sigma(j) - y_sigma(i))`.
pub fn twisted_grid_closed_form(lambda: &Partition, ys: &[Rational], q: &Rational) -> Result<Rational> {
    use itertools::Itertools;
    let r = lambda.rank();
    if ys.len() != r {
        return Err(Error::InvalidInput(format!("need {r} arguments, got {}", ys.len())));
    }
    let l = lambda.parts();
    let mut total = Rational::zero();
    for sigma in (0..r).permutations(r) {
        // One representative per coset: equal parts take increasing indices.
        if (0..r).any(|i| (i + 1..r).any(|k| l[i] == l[k] && sigma[i] > sigma[k])) {
            continue;
        }
        let mut t = Rational::one();
        for i in 0..r {
            t *= arith::pow(&ys[sigma[i]], l[i] as i32 + 1)?;
        }
        for i in 0..r {
            for j in 0..r {
                if l[j] > l[i] {
                    let (a, b) = (&ys[sigma[j]], &ys[sigma[i]]);
                    t *= arith::div(&(a - q * b), &(a - b), "y_j - y_i")?;
                }
            }
        }
        total += t;
    }
    Ok(total)
}

/// Index of the state given the occupancy of each pair `(x_j, 1/x_j)`,
/// listed for `j = 1..r`.
fn pair_state(r: usize, occ: &[(u8, u8)]) -> u32 {
    let n = 2 * r;
    let mut c = 0;
    for (j0, &(u, l)) in occ.iter().enumerate() {
        let s = upper_slot(r, j0 + 1);
        c = with_bit(with_bit(c, n, s, u), n, s + 1, l);
    }
    c
}

fn ratio(a: &Rational, b: &Rational, q: &Rational) -> Result<Rational> {
    arith::div(&(a - q * b), &(a - b), "closed-form bra denominator")
}

fn signed_pow(x: &Rational, e: i8) -> Rational {
    if e > 0 {
        x.clone()
    } else {
        x.recip()
    }
}

fn add_entry(out: &mut SparseVec, c: u32, v: Rational) {
    let e = out.entry(c).or_insert_with(Rational::zero);
    *e += v;
    if e.is_zero() {
        out.remove(&c);
    }
}

/// Closed form of `<K|F^{-1}` on the `r`-particle states, for `r` up to 3.
/// Rank two needs a uniform regime with fish constant 1 and the
/// two-particle caduceus relation; rank three needs the rank-three
/// catalog cases 4 or 7.
pub fn kf_closed_form(bw: &BendWeights, pt: &SpectralPoint) -> Result<SparseVec> {
    let r = pt.rank();
    bw.require_rank(r)?;
    let q = &pt.q;
    let x = |j: usize| pt.x(j).clone();
    let xb = |j: usize| pt.x(j).recip();
    let row = |j: usize| &bw.rows[j - 1];
    let mut out = SparseVec::new();
    match r {
        1 => {
            let regime = uniform_regime(bw, 1).map_err(|v| Error::RegimeMismatch(format!("{v:?}")))?;
            let up = row(1).c.eval(&x(1), q)? * ratio(&x(1), &xb(1), q)?;
            let cb = row(1).c.eval(&xb(1), q)?;
            let down = match regime.fish_constant_kind {
                Some(FishConstantKind::XqRatio) => -(cb * ratio(&x(1), &xb(1), q)?),
                _ => cb * ratio(&xb(1), &x(1), q)?,
            };
            add_entry(&mut out, pair_state(1, &[(1, 0)]), up);
            add_entry(&mut out, pair_state(1, &[(0, 1)]), down);
        }
        2 => {
            let regime = uniform_regime(bw, 2).map_err(|v| Error::RegimeMismatch(format!("{v:?}")))?;
            if regime.fish_constant_kind != Some(FishConstantKind::One) {
                return Err(Error::RegimeMismatch(format!("rank two closed form needs fish constant 1, got {:?}", regime.tag)));
            }
            if check_solvable(bw, 2, SolveMode::RankTwo).verdict != Verdict::RankTwoSolvable {
                return Err(Error::RegimeMismatch("two-particle caduceus relation fails".into()));
            }
            for e1 in [1i8, -1] {
                for e2 in [1i8, -1] {
                    let (y1, y2) = (signed_pow(&x(1), e1), signed_pow(&x(2), e2));
                    let (yb1, yb2) = (y1.recip(), y2.recip());
                    let coeff = ratio(&y1, &yb1, q)? * ratio(&y2, &yb2, q)? * ratio(&y2, &yb1, q)?;
                    let cc = row(1).c.eval(&y1, q)? * row(2).c.eval(&y2, q)?;
                    let ad = row(1).a.eval(&y1, q)?
                        * row(2).d.eval(&y2, q)?
                        * arith::div(&((Rational::one() - q) * &yb2), &(&y1 - &yb2), "y1 - 1/y2")?;
                    let occ = |e: i8| if e > 0 { (1, 0) } else { (0, 1) };
                    add_entry(&mut out, pair_state(2, &[occ(e1), occ(e2)]), coeff * (cc + ad));
                }
            }
            let mut p12 = row(1).a.eval(&x(2), q)? * row(2).d.eval(&x(1), q)?;
            let mut p21 = row(1).a.eval(&x(1), q)? * row(2).d.eval(&x(2), q)?;
            for e1 in [1i8, -1] {
                for e2 in [1i8, -1] {
                    p12 *= ratio(&signed_pow(&x(1), e1), &signed_pow(&xb(2), e2), q)?;
                    p21 *= ratio(&signed_pow(&x(2), e2), &signed_pow(&xb(1), e1), q)?;
                }
            }
            add_entry(&mut out, pair_state(2, &[(1, 1), (0, 0)]), p12);
            add_entry(&mut out, pair_state(2, &[(0, 0), (1, 1)]), p21);
        }
        3 => {
            let ok = [4, 7].iter().any(|&id| check_scenario(bw, &ScenarioSpec::rank3(id)));
            if !ok {
                return Err(Error::RegimeMismatch("rank three closed form needs catalog case 4 or 7".into()));
            }
            for e in itertools::iproduct!([1i8, -1], [1i8, -1], [1i8, -1]) {
                let es = [e.0, e.1, e.2];
                let ys: Vec<Rational> = (0..3).map(|i| signed_pow(&x(i + 1), es[i])).collect();
                let mut v = Rational::one();
                for i in 0..3 {
                    v *= row(i + 1).c.eval(&ys[i], q)?;
                }
                for k in 0..3 {
                    for l in 0..=k {
                        v *= ratio(&ys[k], &ys[l].recip(), q)?;
                    }
                }
                let occ: Vec<(u8, u8)> = es.iter().map(|&e| if e > 0 { (1, 0) } else { (0, 1) }).collect();
                add_entry(&mut out, pair_state(3, &occ), v);
            }
        }
        _ => return Err(Error::InvalidInput(format!("closed-form bra covers ranks 1 to 3, got {r}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::lattice::{partition_function_bc, BendRow};

    fn pt(r: usize) -> SpectralPoint {
        SpectralPoint::new(rat(2, 7), [rat(3, 2), rat(-5, 3), rat(7, 4), rat(-9, 5)][..r].to_vec())
    }

    #[test]
    fn occupancy_round_trip() {
        let o = OccupancyVector::from_index(0b1001, 4);
        assert_eq!(o.bits, vec![1, 0, 0, 1]);
        assert_eq!(o.index(), 9);
        assert_eq!(o.to_string(), "1001");
    }

    #[test]
    fn empty_column_is_one() {
        let c = column_operator(0, &pt(1)).unwrap();
        assert_eq!(c.get(0, 0), int(1));
        assert!(c.respects_flux(0));
        assert!(column_operator(2, &pt(2)).unwrap().respects_flux(2));
    }

    #[test]
    fn slot_r_unitarity_and_braid() {
        let p = slot_params(&pt(2));
        let q = rat(2, 7);
        for s in 0..3 {
            let r1 = slot_r_matrix(s, &p, &q).unwrap();
            let mut sp = p.clone();
            sp.swap(s, s + 1);
            let r2 = slot_r_matrix(s, &sp, &q).unwrap();
            assert!(r2.mul(&r1).is_identity());
        }
        // R_0(s1 s0 p) R_1(s0 p) R_0(p) = R_1(s0 s1 p) R_0(s1 p) R_1(p)
        let sw = |p: &[Rational], s: usize| {
            let mut v = p.to_vec();
            v.swap(s, s + 1);
            v
        };
        let lhs = slot_r_matrix(0, &sw(&sw(&p, 0), 1), &q)
            .unwrap()
            .mul(&slot_r_matrix(1, &sw(&p, 0), &q).unwrap())
            .mul(&slot_r_matrix(0, &p, &q).unwrap());
        let rhs = slot_r_matrix(1, &sw(&sw(&p, 1), 0), &q)
            .unwrap()
            .mul(&slot_r_matrix(0, &sw(&p, 1), &q).unwrap())
            .mul(&slot_r_matrix(1, &p, &q).unwrap());
        assert_eq!(lhs, rhs);
        let eq = vec![rat(3, 2), rat(3, 2)];
        let m = slot_r_matrix(0, &eq, &q).unwrap();
        assert_eq!(m.get(0b01, 0b10), int(0));
        assert_eq!(m.get(0b10, 0b10), int(1));
    }

    #[test]
    fn f_identities() {
        for r in 1..=2 {
            let fm = f_matrices(&pt(r)).unwrap();
            assert_eq!(fm.f.mul(&fm.fstar), fm.delta);
            let inv = fm.f_inverse().unwrap();
            assert!(fm.f.mul(&inv).is_identity());
            let e = SparseVec::from([(0, int(1))]);
            assert_eq!(inv.apply(&e), e);
        }
    }

    #[test]
    fn brakets_match_enumeration() {
        let bws = [BendWeights::uniform(BendRow::all_ones(), 2), BendWeights::uniform(BendRow::wzj(), 2)];
        for bw in &bws {
            for l in Partition::all_in_box(2, 2) {
                let z = partition_function_bc(&l, bw, &pt(2)).unwrap();
                assert_eq!(braket_partition_function(&l, bw, &pt(2), BraketMethod::Braket).unwrap(), z);
                assert_eq!(braket_partition_function(&l, bw, &pt(2), BraketMethod::Twisted).unwrap(), z);
            }
        }
    }

    #[test]
    fn twisted_grid_examples() {
        let q = rat(2, 7);
        let ys = vec![rat(3, 2), rat(-5, 3)];
        let l00 = Partition::new(vec![0, 0]).unwrap();
        let l10 = Partition::new(vec![1, 0]).unwrap();
        assert_eq!(twisted_grid_closed_form(&l00, &ys, &q).unwrap(), &ys[0] * &ys[1]);
        let want = &ys[0] * &ys[1] * (&ys[0] + &ys[1]);
        assert_eq!(twisted_grid_closed_form(&l10, &ys, &q).unwrap(), want);
        let p = vec![ys[0].clone(), ys[1].clone(), rat(7, 4), rat(-9, 5)];
        assert_eq!(twisted_grid_direct(&l10, &p, &q, top_half(2)).unwrap(), want);
        let one = Partition::new(vec![0]).unwrap();
        assert_eq!(twisted_grid_direct(&one, &p[..2], &q, top_half(1)).unwrap(), ys[0]);
    }

    #[test]
    fn k_bra_examples() {
        let k = k_bra(&BendWeights::uniform(BendRow::wzj(), 1), &pt(1)).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(k[&0b01], -rat(2, 7));
        assert_eq!(k[&0b10], int(1));
    }
}
