//! Admissible states and direct partition functions by row-sweep dynamic
//! programming over column-multiplicity vectors.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::Rational;
use crate::error::Result;

use super::weights::rect_weight_unchecked;
use super::{BendWeights, Partition, SpectralPoint};

/// Which boundary geometry a state lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Geometry {
    /// `r` rows, parameters `x_1..x_r` bottom to top.
    TypeA,
    /// `2r` rows, bottom to top `x̄_1, x_1, ..., x̄_r, x_r`, bends on the left.
    TypeBC,
}

/// One admissible path configuration.
///
/// `vertical_mult[k][c]` is the multiplicity on the vertical edge of column
/// `c` below row `k` (`k = nrows` is the top boundary). `horizontal_occ[k][b]`
/// is the occupancy of the horizontal edge of row `k` at boundary `b`,
/// where boundary `b` sits left of column `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeState {
    pub geometry: Geometry,
    pub vertical_mult: Vec<Vec<u32>>,
    pub horizontal_occ: Vec<Vec<u8>>,
    /// Per pair `j`, the `(upper, lower)` arc occupancy. Empty for type A.
    pub bend_config: Vec<(u8, u8)>,
}

impl LatticeState {
    pub fn nrows(&self) -> usize {
        self.horizontal_occ.len()
    }

    pub fn ncols(&self) -> usize {
        self.vertical_mult[0].len()
    }

    /// True when every rectangular vertex conserves paths.
    pub fn conserves(&self) -> bool {
        (0..self.nrows()).all(|k| {
            (0..self.ncols()).all(|c| {
                let b = self.vertical_mult[k][c];
                let t = self.vertical_mult[k + 1][c];
                let l = self.horizontal_occ[k][c] as u32;
                let r = self.horizontal_occ[k][c + 1] as u32;
                b + r == t + l
            })
        })
    }

    /// Spectral parameter of row `k` counted from the bottom.
    pub fn row_param(&self, k: usize, pt: &SpectralPoint) -> Rational {
        row_param(self.geometry, k, pt)
    }

    /// Product of all vertex weights, including bends for type B/C.
    pub fn weight(&self, bw: Option<&BendWeights>, pt: &SpectralPoint) -> Result<Rational> {
        let mut w = Rational::one();
        for k in 0..self.nrows() {
            let x = self.row_param(k, pt);
            for c in 0..self.ncols() {
                let l = self.horizontal_occ[k][c];
                let r = self.horizontal_occ[k][c + 1];
                w *= rect_weight_unchecked(l, r, self.vertical_mult[k + 1][c], &x, &pt.q);
            }
        }
        if let Some(bw) = bw {
            for (j, &(u, l)) in self.bend_config.iter().enumerate() {
                w *= super::bend_weight(bw, j + 1, u, l, pt.x(j + 1), &pt.q)?;
            }
        }
        Ok(w)
    }
}

fn row_param(geometry: Geometry, k: usize, pt: &SpectralPoint) -> Rational {
    match geometry {
        Geometry::TypeA => pt.xs[k].clone(),
        Geometry::TypeBC if k % 2 == 0 => pt.xs[k / 2].recip(),
        Geometry::TypeBC => pt.xs[k / 2].clone(),
    }
}

/// One way to fill a row given the multiplicities entering from below.
#[derive(Clone, Debug)]
struct RowMove {
    above: Vec<u32>,
    horiz: Vec<u8>,
}

impl RowMove {
    fn left_exit(&self) -> u8 {
        self.horiz[0]
    }

    fn weight(&self, x: &Rational, q: &Rational) -> Rational {
        let mut w = Rational::one();
        for c in 0..self.above.len() {
            w *= rect_weight_unchecked(self.horiz[c], self.horiz[c + 1], self.above[c], x, q);
        }
        w
    }
}

/// Sweeps columns right to left carrying the single horizontal edge.
fn row_moves(below: &[u32], cap: u32) -> Vec<RowMove> {
    fn rec(below: &[u32], cap: u32, c: usize, above: &mut Vec<u32>, horiz: &mut Vec<u8>, out: &mut Vec<RowMove>) {
        let right = horiz[c + 1];
        for left in [0u8, 1] {
            let t = below[c] as i64 + right as i64 - left as i64;
            if t < 0 || t > cap as i64 {
                continue;
            }
            above[c] = t as u32;
            horiz[c] = left;
            if c == 0 {
                out.push(RowMove { above: above.clone(), horiz: horiz.clone() });
            } else {
                rec(below, cap, c - 1, above, horiz, out);
            }
        }
    }
    let n = below.len();
    let mut out = Vec::new();
    let mut above = vec![0; n];
    let mut horiz = vec![0; n + 1];
    rec(below, cap, n - 1, &mut above, &mut horiz, &mut out);
    out
}

struct MoveCache {
    cap: u32,
    map: HashMap<Vec<u32>, Rc<Vec<RowMove>>>,
}

impl MoveCache {
    fn new(cap: u32) -> Self {
        Self { cap, map: HashMap::new() }
    }

    fn get(&mut self, below: &[u32]) -> Rc<Vec<RowMove>> {
        if let Some(v) = self.map.get(below) {
            return v.clone();
        }
        let v = Rc::new(row_moves(below, self.cap));
        self.map.insert(below.to_vec(), v.clone());
        v
    }
}

fn bottom_vector(lambda: &Partition) -> Vec<u32> {
    let mut v = vec![0u32; lambda.largest() as usize + 1];
    for &p in lambda.parts() {
        v[p as usize] += 1;
    }
    v
}

/// Remaining paths must fit into the remaining rows, one exit per row.
fn feasible(above: &[u32], rows_left: usize) -> bool {
    above.iter().sum::<u32>() as usize <= rows_left
}

/// Lazy depth-first stream of admissible states.
pub struct StateStream {
    geometry: Geometry,
    nrows: usize,
    cache: MoveCache,
    bottom: Vec<u32>,
    frames: Vec<(Rc<Vec<RowMove>>, usize)>,
    started: bool,
}

impl StateStream {
    fn new(geometry: Geometry, lambda: &Partition) -> Self {
        let r = lambda.rank();
        let nrows = match geometry {
            Geometry::TypeA => r,
            Geometry::TypeBC => 2 * r,
        };
        Self {
            geometry,
            nrows,
            cache: MoveCache::new(r as u32),
            bottom: bottom_vector(lambda),
            frames: Vec::new(),
            started: false,
        }
    }

    fn current_below(&self) -> Vec<u32> {
        match self.frames.last() {
            None => self.bottom.clone(),
            Some((moves, i)) => moves[*i].above.clone(),
        }
    }

    fn build(&self) -> LatticeState {
        let mut vertical = vec![self.bottom.clone()];
        let mut horizontal = Vec::new();
        for (moves, i) in &self.frames {
            vertical.push(moves[*i].above.clone());
            horizontal.push(moves[*i].horiz.clone());
        }
        let bend_config = match self.geometry {
            Geometry::TypeA => Vec::new(),
            Geometry::TypeBC => (0..self.nrows / 2).map(|j| (horizontal[2 * j + 1][0], horizontal[2 * j][0])).collect(),
        };
        let state = LatticeState { geometry: self.geometry, vertical_mult: vertical, horizontal_occ: horizontal, bend_config };
        debug_assert!(state.conserves());
        state
    }

    /// Advances the top frame (or pops) until it points at a feasible move.
    fn settle_top(&mut self) -> bool {
        while let Some((moves, i)) = self.frames.last() {
            let depth = self.frames.len();
            let moves = moves.clone();
            let mut k = *i;
            while k < moves.len() && !feasible(&moves[k].above, self.nrows - depth) {
                k += 1;
            }
            if k < moves.len() {
                self.frames.last_mut().unwrap().1 = k;
                return true;
            }
            self.frames.pop();
            if let Some(top) = self.frames.last_mut() {
                top.1 += 1;
            }
        }
        false
    }

    /// Descends until a full state is reached.
    fn descend(&mut self) -> bool {
        loop {
            if self.frames.len() == self.nrows {
                return true;
            }
            let below = self.current_below();
            let moves = self.cache.get(&below);
            self.frames.push((moves, 0));
            if !self.settle_top() {
                return false;
            }
        }
    }
}

impl Iterator for StateStream {
    type Item = LatticeState;

    fn next(&mut self) -> Option<LatticeState> {
        if !self.started {
            self.started = true;
            if self.nrows == 0 || !feasible(&self.bottom, self.nrows) {
                return None;
            }
        } else {
            match self.frames.last_mut() {
                None => return None,
                Some(top) => top.1 += 1,
            }
            if !self.settle_top() {
                return None;
            }
        }
        if self.descend() {
            Some(self.build())
        } else {
            None
        }
    }
}

pub fn enumerate_states_a(lambda: &Partition) -> StateStream {
    StateStream::new(Geometry::TypeA, lambda)
}

pub fn enumerate_states_bc(lambda: &Partition) -> StateStream {
    StateStream::new(Geometry::TypeBC, lambda)
}

/// Type A partition function, summed by dynamic programming.
pub fn partition_function_a(lambda: &Partition, pt: &SpectralPoint) -> Result<Rational> {
    let r = lambda.rank();
    check_rank(r, pt)?;
    let mut cache = MoveCache::new(r as u32);
    let mut layer: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    layer.insert(bottom_vector(lambda), Rational::one());
    for k in 0..r {
        let x = &pt.xs[k];
        let mut next: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (below, w) in &layer {
            for mv in cache.get(below).iter() {
                if !feasible(&mv.above, r - k - 1) {
                    continue;
                }
                let add = w * mv.weight(x, &pt.q);
                accumulate(&mut next, mv.above.clone(), add);
            }
        }
        layer = next;
    }
    Ok(layer.into_values().fold(Rational::zero(), |a, b| a + b))
}

/// Type B/C partition function, summed by dynamic programming. The lower
/// row of each pair records its left exit until the bend is applied.
pub fn partition_function_bc(lambda: &Partition, bw: &BendWeights, pt: &SpectralPoint) -> Result<Rational> {
    let r = lambda.rank();
    check_rank(r, pt)?;
    bw.require_rank(r)?;
    let nrows = 2 * r;
    let mut cache = MoveCache::new(r as u32);
    let mut layer: BTreeMap<(Vec<u32>, u8), Rational> = BTreeMap::new();
    layer.insert((bottom_vector(lambda), 0), Rational::one());
    for k in 0..nrows {
        let x = row_param(Geometry::TypeBC, k, pt);
        let upper_row = k % 2 == 1;
        let bends = if upper_row {
            let j = k / 2 + 1;
            let mut b = [[Rational::zero(), Rational::zero()], [Rational::zero(), Rational::zero()]];
            for u in 0..2u8 {
                for l in 0..2u8 {
                    b[u as usize][l as usize] = super::bend_weight(bw, j, u, l, pt.x(j), &pt.q)?;
                }
            }
            Some(b)
        } else {
            None
        };
        let mut next: BTreeMap<(Vec<u32>, u8), Rational> = BTreeMap::new();
        for ((below, pending), w) in &layer {
            for mv in cache.get(below).iter() {
                if !feasible(&mv.above, nrows - k - 1) {
                    continue;
                }
                let exit = mv.left_exit();
                let (key, factor) = match &bends {
                    Some(b) => {
                        let bwv = &b[exit as usize][*pending as usize];
                        if bwv.is_zero() {
                            continue;
                        }
                        ((mv.above.clone(), 0), bwv.clone())
                    }
                    None => ((mv.above.clone(), exit), Rational::one()),
                };
                let add = w * mv.weight(&x, &pt.q) * factor;
                accumulate(&mut next, key, add);
            }
        }
        layer = next;
    }
    Ok(layer.into_values().fold(Rational::zero(), |a, b| a + b))
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, add: Rational) {
    if add.is_zero() {
        return;
    }
    let e = map.entry(key).or_insert_with(Rational::zero);
    *e += add;
}

fn check_rank(r: usize, pt: &SpectralPoint) -> Result<()> {
    if pt.rank() < r {
        return Err(crate::error::Error::InvalidInput(format!(
            "point has {} parameters, partition needs {r}",
            pt.rank()
        )));
    }
    if pt.xs[..r].iter().any(|x| x.is_zero()) {
        return Err(crate::error::Error::ZeroBase);
    }
    Ok(())
}
