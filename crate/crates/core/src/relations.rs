//! Verifiers for the local relations (Yang-Baxter, unitarity, fish,
//! caduceus), the solvability decision built on them, and the signed
//! permutation symmetry of type B/C partition functions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{self, format_rational, MonomialWeight, QLaurent, Rational};
use crate::error::{Error, Result};
use crate::lattice::tangle::{self, labels, CrossingFn, EvalOptions};
use crate::lattice::{
    evaluate_tangle, partition_function_bc, BendRow, BendWeights, Partition, PointSampler, SpectralPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RegimeTag {
    R1a,
    R1b,
    R2a,
    R2b,
    Degenerate,
    None,
}

/// `One` means `F = 1`; `XqRatio` means `F = (x^2 - q)/(1 - q x^2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FishConstantKind {
    One,
    XqRatio,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FishRegime {
    pub tag: RegimeTag,
    pub fish_constant_kind: Option<FishConstantKind>,
}

impl FishRegime {
    pub fn new(tag: RegimeTag) -> Self {
        let fish_constant_kind = match tag {
            RegimeTag::R1a | RegimeTag::R2b | RegimeTag::Degenerate => Some(FishConstantKind::One),
            RegimeTag::R1b | RegimeTag::R2a => Some(FishConstantKind::XqRatio),
            RegimeTag::None => None,
        };
        Self { tag, fish_constant_kind }
    }

    /// The predicted fish constant at `(x, q)`.
    pub fn predicted_constant(&self, x: &Rational, q: &Rational) -> Result<Option<Rational>> {
        Ok(match self.fish_constant_kind {
            None => None,
            Some(FishConstantKind::One) => Some(Rational::one()),
            Some(FishConstantKind::XqRatio) => {
                let x2 = x * x;
                Some(arith::div(&(&x2 - q), &(Rational::one() - q * &x2), "fish constant 1 - q x^2")?)
            }
        })
    }
}

fn constant_or_zero(w: &MonomialWeight) -> bool {
    w.is_zero() || w.xdeg == 0
}

fn classify_row(row: &BendRow) -> RegimeTag {
    let (a, b, c, d) = (&row.a, &row.b, &row.c, &row.d);
    let q = QLaurent::q();
    let ad_const = constant_or_zero(a) && constant_or_zero(d);
    let ad_zero = a.is_zero() && d.is_zero();
    if b.is_zero() && c.is_zero() {
        return if ad_const { RegimeTag::Degenerate } else { RegimeTag::None };
    }
    if c.is_zero() {
        return RegimeTag::None;
    }
    match c.xdeg {
        0 if *b == *c && ad_const => RegimeTag::R1a,
        0 if *b == c.scale(&-&q) && ad_zero => RegimeTag::R1b,
        -1 if *b == c.scale(&QLaurent::constant(arith::int(-1))).shift_x(2) && ad_zero => RegimeTag::R2a,
        -1 if *b == c.scale(&q).shift_x(2) && ad_const => RegimeTag::R2b,
        _ => RegimeTag::None,
    }
}

/// Symbolic fish classification of bend row `j`.
pub fn fish_classify(bw: &BendWeights, j: usize) -> FishRegime {
    match bw.row(j) {
        Ok(row) => FishRegime::new(classify_row(row)),
        Err(_) => FishRegime::new(RegimeTag::None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub boundary: BTreeMap<String, u32>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    fn new(boundary: &BTreeMap<String, u32>, lhs: &Rational, rhs: &Rational) -> Self {
        Self { boundary: boundary.clone(), lhs: format_rational(lhs), rhs: format_rational(rhs) }
    }
}

/// Outcome of a proportionality test `LHS = F * RHS` over boundary cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProportionalityCheck {
    pub holds: bool,
    #[serde(with = "arith::rational_serde")]
    pub f: Rational,
    pub cases_checked: usize,
    /// Every case had both sides zero; `f` is 1 by convention.
    pub vacuous: bool,
    pub witness: Option<Witness>,
}

/// Accumulates `(lhs, rhs)` pairs and decides proportionality. A pair with
/// exactly one side zero fails; pairs with both sides zero are skipped.
struct Ratio {
    f: Option<Rational>,
    cases: usize,
    witness: Option<Witness>,
}

impl Ratio {
    fn new() -> Self {
        Self { f: None, cases: 0, witness: None }
    }

    fn push(&mut self, boundary: &BTreeMap<String, u32>, lhs: Rational, rhs: Rational) {
        self.cases += 1;
        if self.witness.is_some() || (lhs.is_zero() && rhs.is_zero()) {
            return;
        }
        if lhs.is_zero() || rhs.is_zero() {
            self.witness = Some(Witness::new(boundary, &lhs, &rhs));
            return;
        }
        let r = &lhs / &rhs;
        match &self.f {
            None => self.f = Some(r),
            Some(f) if *f == r => {}
            Some(_) => self.witness = Some(Witness::new(boundary, &lhs, &rhs)),
        }
    }

    fn finish(self) -> ProportionalityCheck {
        let vacuous = self.f.is_none() && self.witness.is_none();
        ProportionalityCheck {
            holds: self.witness.is_none(),
            f: self.f.unwrap_or_else(Rational::one),
            cases_checked: self.cases,
            vacuous,
            witness: self.witness,
        }
    }
}

fn bits(n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..1u32 << n).map(move |m| (0..n).map(|i| (m >> (n - 1 - i)) & 1).collect())
}

/// Searches every YBE boundary with vertical labels up to `max_mult` for a
/// mismatch. `crossing` overrides the standard crossing weights.
pub fn ybe_witness(
    x_j: &Rational,
    x_k: &Rational,
    q: &Rational,
    max_mult: u32,
    crossing: Option<&CrossingFn>,
) -> Result<Option<Witness>> {
    let pt = SpectralPoint::new(q.clone(), vec![x_j.clone(), x_k.clone()]);
    let (lhs, rhs) = (tangle::ybe_lhs(), tangle::ybe_rhs());
    let opts = EvalOptions { max_mult: None, crossing };
    for h in bits(4) {
        for phi in 0..=max_mult {
            for gamma in 0..=max_mult {
                let b = labels(&[
                    ("alpha", h[0]),
                    ("beta", h[1]),
                    ("epsilon", h[2]),
                    ("delta", h[3]),
                    ("phi", phi),
                    ("gamma", gamma),
                ]);
                let l = tangle::evaluate_tangle_with(&lhs, &b, None, &pt, opts)?;
                let r = tangle::evaluate_tangle_with(&rhs, &b, None, &pt, opts)?;
                if l != r {
                    return Ok(Some(Witness::new(&b, &l, &r)));
                }
            }
        }
    }
    Ok(None)
}

/// Both Yang-Baxter tangles agree for every boundary labeling.
pub fn check_ybe(x_j: &Rational, x_k: &Rational, q: &Rational, max_mult: u32) -> Result<bool> {
    Ok(ybe_witness(x_j, x_k, q, max_mult, None)?.is_none())
}

pub fn unitarity_witness(x_j: &Rational, x_k: &Rational, q: &Rational) -> Result<Option<Witness>> {
    let pt = SpectralPoint::new(q.clone(), vec![x_j.clone(), x_k.clone()]);
    let d = tangle::unitarity();
    for h in bits(4) {
        let b = labels(&[("alpha", h[0]), ("beta", h[1]), ("alpha_out", h[2]), ("beta_out", h[3])]);
        let v = evaluate_tangle(&d, &b, None, &pt)?;
        let want = if (h[0], h[1]) == (h[2], h[3]) { Rational::one() } else { Rational::zero() };
        if v != want {
            return Ok(Some(Witness::new(&b, &v, &want)));
        }
    }
    Ok(None)
}

/// The double crossing is the identity on `{0,1}^2`.
pub fn check_unitarity(x_j: &Rational, x_k: &Rational, q: &Rational) -> Result<bool> {
    Ok(unitarity_witness(x_j, x_k, q)?.is_none())
}

/// Evaluates both fish diagrams for row `j` at `(x, q)` over all four
/// boundaries and returns their common ratio.
pub fn check_fish_numeric(bw: &BendWeights, j: usize, x: &Rational, q: &Rational) -> Result<ProportionalityCheck> {
    bw.row(j)?;
    let pt = SpectralPoint::new(q.clone(), vec![x.clone()]);
    let (lhs, rhs) = (tangle::fish_lhs(j), tangle::fish_rhs(j));
    let mut ratio = Ratio::new();
    for h in bits(2) {
        let b = labels(&[("alpha", h[0]), ("beta", h[1])]);
        let l = evaluate_tangle(&lhs, &b, Some(bw), &pt)?;
        let r = evaluate_tangle(&rhs, &b, Some(bw), &pt)?;
        if r.is_zero() && !l.is_zero() {
            return Err(Error::DivisionByZeroRhs { alpha: h[0] as u8, beta: h[1] as u8 });
        }
        ratio.push(&b, l, r);
    }
    Ok(ratio.finish())
}

/// Compares the four-crossing double-bend tangle for pairs `j` (lower) and
/// `k` (upper) with two bare bends, over boundaries carrying `particles`
/// path ends.
pub fn check_caduceus(
    bw: &BendWeights,
    j: usize,
    k: usize,
    particles: u32,
    pt: &SpectralPoint,
) -> Result<ProportionalityCheck> {
    bw.row(j)?;
    bw.row(k)?;
    let (lhs, rhs) = (tangle::caduceus_lhs(j, k), tangle::caduceus_rhs(j, k));
    let mut ratio = Ratio::new();
    for h in bits(4).filter(|h| h.iter().sum::<u32>() == particles) {
        let b = labels(&[("alpha", h[0]), ("beta", h[1]), ("gamma", h[2]), ("delta", h[3])]);
        let l = evaluate_tangle(&lhs, &b, Some(bw), pt)?;
        let r = evaluate_tangle(&rhs, &b, Some(bw), pt)?;
        ratio.push(&b, l, r);
    }
    Ok(ratio.finish())
}

/// `C_j(x_j) C_k(x_k) / (C_j(x_k) C_k(x_j))`, the caduceus constant in the
/// regimes where the fish constant is not 1.
pub fn caduceus_c_ratio(bw: &BendWeights, j: usize, k: usize, pt: &SpectralPoint) -> Result<Rational> {
    let (cj, ck) = (&bw.row(j)?.c, &bw.row(k)?.c);
    let q = &pt.q;
    let num = cj.eval(pt.x(j), q)? * ck.eval(pt.x(k), q)?;
    let den = cj.eval(pt.x(k), q)? * ck.eval(pt.x(j), q)?;
    arith::div(&num, &den, "C_j(x_k) C_k(x_j)")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SolveMode {
    Full,
    RankTwo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Solvable,
    RankTwoSolvable,
    NotSolvable,
    MixedRegimeUnsupported,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaduceusResult {
    pub pair: (usize, usize),
    pub particles: u32,
    pub holds: bool,
    /// Ratio at the first sample point.
    pub f: String,
    pub vacuous: bool,
    pub point: Option<SpectralPoint>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvabilityReport {
    pub uniform: bool,
    pub regime: FishRegime,
    pub row_regimes: Vec<RegimeTag>,
    pub caduceus_results: Vec<CaduceusResult>,
    /// Pair and particle counts skipped because no configuration of the
    /// remaining bends can absorb the rest of the paths.
    pub skipped: Vec<((usize, usize), u32)>,
    pub verdict: Verdict,
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { samples: 5, seed: 0 }
    }
}

fn compatible(row: &BendRow, tag: RegimeTag) -> Vec<RegimeTag> {
    use RegimeTag::*;
    match tag {
        Degenerate if row.a.is_zero() && row.d.is_zero() => vec![Degenerate, R1a, R1b, R2a, R2b],
        Degenerate => vec![Degenerate, R1a, R2b],
        None => vec![],
        t => vec![t],
    }
}

/// Common regime of all rows, or the reason there is none.
pub fn uniform_regime(bw: &BendWeights, r: usize) -> std::result::Result<FishRegime, Verdict> {
    let rows: Vec<&BendRow> = bw.rows.iter().take(r).collect();
    if rows.len() < r {
        return Err(Verdict::NotSolvable);
    }
    let tags: Vec<RegimeTag> = rows.iter().map(|row| classify_row(row)).collect();
    if tags.contains(&RegimeTag::None) {
        return Err(Verdict::NotSolvable);
    }
    if tags.iter().all(|t| *t == RegimeTag::Degenerate) {
        return Ok(FishRegime::new(RegimeTag::Degenerate));
    }
    let mut common = vec![RegimeTag::R1a, RegimeTag::R1b, RegimeTag::R2a, RegimeTag::R2b];
    for (row, tag) in rows.iter().zip(&tags) {
        let ok = compatible(row, *tag);
        common.retain(|t| ok.contains(t));
    }
    common.first().map(|t| FishRegime::new(*t)).ok_or(Verdict::MixedRegimeUnsupported)
}

/// Whether the rows other than `pair` can hold exactly `rest` path ends
/// with nonzero bend weights.
fn spectators_admit(bw: &BendWeights, r: usize, pair: (usize, usize), rest: u32) -> bool {
    let mut reachable = vec![true];
    for j in (1..=r).filter(|j| *j != pair.0 && *j != pair.1) {
        let row = &bw.rows[j - 1];
        let mut next = vec![false; reachable.len() + 2];
        for (n, ok) in reachable.iter().enumerate() {
            if !ok {
                continue;
            }
            for (w, add) in [(&row.a, 0), (&row.b, 1), (&row.c, 1), (&row.d, 2)] {
                if !w.is_zero() {
                    next[n + add] = true;
                }
            }
        }
        reachable = next;
    }
    reachable.get(rest as usize).copied().unwrap_or(false)
}

pub fn check_solvable(bw: &BendWeights, r: usize, mode: SolveMode) -> SolvabilityReport {
    check_solvable_with(bw, r, mode, SolveOptions::default())
}

/// Uniform fish regime plus caduceus at every adjacent pair, sampled at
/// `opts.samples` points. A caduceus case is required only when the other
/// bends can absorb the remaining paths.
pub fn check_solvable_with(bw: &BendWeights, r: usize, mode: SolveMode, opts: SolveOptions) -> SolvabilityReport {
    let row_regimes: Vec<RegimeTag> = (1..=r).map(|j| fish_classify(bw, j).tag).collect();
    let mut report = SolvabilityReport {
        uniform: false,
        regime: FishRegime::new(RegimeTag::None),
        row_regimes,
        caduceus_results: Vec::new(),
        skipped: Vec::new(),
        verdict: Verdict::NotSolvable,
    };
    match uniform_regime(bw, r) {
        Ok(regime) => {
            report.uniform = true;
            report.regime = regime;
        }
        Err(v) => {
            report.verdict = v;
            return report;
        }
    }
    let counts: &[u32] = match mode {
        SolveMode::Full => &[1, 2, 3],
        SolveMode::RankTwo => &[2],
    };
    let points = PointSampler::new(opts.seed).points(r, opts.samples.max(1));
    let mut all = true;
    for j in 1..r {
        let pair = (j, j + 1);
        for &p in counts {
            if p as usize > r || !spectators_admit(bw, r, pair, r as u32 - p) {
                report.skipped.push((pair, p));
                continue;
            }
            let mut entry = CaduceusResult {
                pair,
                particles: p,
                holds: true,
                f: String::new(),
                vacuous: true,
                point: None,
                witness: None,
            };
            for pt in &points {
                match check_caduceus(bw, j, j + 1, p, pt) {
                    Ok(c) => {
                        if entry.f.is_empty() {
                            entry.f = format_rational(&c.f);
                        }
                        entry.vacuous &= c.vacuous;
                        if !c.holds {
                            entry.holds = false;
                            entry.point = Some(pt.clone());
                            entry.witness = c.witness;
                            break;
                        }
                    }
                    Err(e) => {
                        entry.holds = false;
                        entry.point = Some(pt.clone());
                        entry.f = e.to_string();
                        break;
                    }
                }
            }
            all &= entry.holds;
            report.caduceus_results.push(entry);
        }
    }
    report.verdict = match (all, mode) {
        (false, _) => Verdict::NotSolvable,
        (true, SolveMode::Full) => Verdict::Solvable,
        (true, SolveMode::RankTwo) => Verdict::RankTwoSolvable,
    };
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryFailure {
    pub generator: String,
    pub before: String,
    pub after: String,
}

/// Checks `Z(B_lambda)` under every swap `s_i` and every inversion
/// `x_i -> 1/x_i`. In the regimes with fish constant `(x^2-q)/(1-qx^2)`
/// the inversion check is applied to `(1/x_i - q x_i) Z`.
pub fn weyl_symmetry_failures(lambda: &Partition, bw: &BendWeights, pt: &SpectralPoint) -> Result<Vec<SymmetryFailure>> {
    let r = lambda.rank();
    if pt.rank() != r {
        return Err(Error::InvalidInput(format!("point rank {} differs from partition rank {r}", pt.rank())));
    }
    let regime = uniform_regime(bw, r)
        .map_err(|v| Error::RegimeMismatch(format!("symmetry check needs a uniform regime, got {v:?}")))?;
    let twisted = regime.fish_constant_kind == Some(FishConstantKind::XqRatio);
    let z = partition_function_bc(lambda, bw, pt)?;
    let mut out = Vec::new();
    for i in 1..r {
        let z2 = partition_function_bc(lambda, bw, &pt.swapped(i))?;
        if z2 != z {
            out.push(SymmetryFailure { generator: format!("s{i}"), before: format_rational(&z), after: format_rational(&z2) });
        }
    }
    for i in 1..=r {
        let inv = pt.inverted(i);
        let factor = |p: &SpectralPoint| {
            if twisted {
                let x = p.x(i);
                x.recip() - &p.q * x
            } else {
                Rational::one()
            }
        };
        let before = factor(pt) * &z;
        let after = factor(&inv) * partition_function_bc(lambda, bw, &inv)?;
        if before != after {
            out.push(SymmetryFailure {
                generator: format!("inv{i}"),
                before: format_rational(&before),
                after: format_rational(&after),
            });
        }
    }
    Ok(out)
}

pub fn check_weyl_symmetry(lambda: &Partition, bw: &BendWeights, pt: &SpectralPoint) -> Result<bool> {
    Ok(weyl_symmetry_failures(lambda, bw, pt)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn row(a: QLaurent, b: MonomialWeight, c: MonomialWeight, d: QLaurent) -> BendRow {
        BendRow::new(MonomialWeight::constant(a), b, c, MonomialWeight::constant(d))
    }

    fn k(n: i64) -> QLaurent {
        QLaurent::constant(int(n))
    }

    #[test]
    fn ybe_and_unitarity_at_a_point() {
        let (xj, xk, q) = (rat(3, 7), rat(-5, 2), rat(2, 9));
        assert!(check_ybe(&xj, &xk, &q, 4).unwrap());
        assert!(check_unitarity(&xj, &xk, &q).unwrap());
    }

    #[test]
    fn doubled_c1_breaks_ybe() {
        let doubled = |a: u8, b: u8, c: u8, d: u8, xu: &Rational, xl: &Rational, q: &Rational| {
            let w = crate::lattice::r_weight(a, b, c, d, xu, xl, q)?;
            Ok(if (a, b, c, d) == (0, 1, 0, 1) { w * int(2) } else { w })
        };
        let w = ybe_witness(&rat(3, 7), &rat(-5, 2), &rat(2, 9), 4, Some(&doubled)).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn classification_examples() {
        let one = MonomialWeight::one();
        let r1a = BendWeights::new(vec![row(k(3), one.clone(), one.clone(), k(-2))]);
        assert_eq!(fish_classify(&r1a, 1).tag, RegimeTag::R1a);
        let wzj = BendWeights::uniform(BendRow::wzj(), 1);
        assert_eq!(fish_classify(&wzj, 1).tag, RegimeTag::R1b);
        let r2b = BendWeights::uniform(BendRow::shifted_bc(k(2), QLaurent::one(), k(5)), 1);
        assert_eq!(fish_classify(&r2b, 1).tag, RegimeTag::R2b);
        let r2a = BendWeights::new(vec![row(
            QLaurent::zero(),
            MonomialWeight::new(k(-1), 1),
            MonomialWeight::new(QLaurent::one(), -1),
            QLaurent::zero(),
        )]);
        assert_eq!(fish_classify(&r2a, 1).tag, RegimeTag::R2a);
        let degen = BendWeights::new(vec![row(k(1), MonomialWeight::zero(), MonomialWeight::zero(), k(1))]);
        assert_eq!(fish_classify(&degen, 1).tag, RegimeTag::Degenerate);
        let bad = BendWeights::new(vec![row(k(1), MonomialWeight::int(2), one, k(1))]);
        assert_eq!(fish_classify(&bad, 1).tag, RegimeTag::None);
    }

    #[test]
    fn fish_constants() {
        let (x, q) = (rat(5, 3), rat(1, 4));
        let one = MonomialWeight::one();
        let r1a = BendWeights::new(vec![row(k(3), one.clone(), one, k(-2))]);
        let c = check_fish_numeric(&r1a, 1, &x, &q).unwrap();
        assert!(c.holds);
        assert_eq!(c.f, int(1));
        let wzj = BendWeights::uniform(BendRow::wzj(), 1);
        let c = check_fish_numeric(&wzj, 1, &x, &q).unwrap();
        assert!(c.holds);
        let x2 = &x * &x;
        assert_eq!(c.f, (&x2 - &q) / (int(1) - &q * &x2));
        let degen = BendWeights::new(vec![row(k(1), MonomialWeight::zero(), MonomialWeight::zero(), k(1))]);
        assert_eq!(check_fish_numeric(&degen, 1, &x, &q).unwrap().f, int(1));
    }

    #[test]
    fn caduceus_examples() {
        let pt = SpectralPoint::new(rat(2, 9), vec![rat(3, 7), rat(-5, 2)]);
        let ones = BendWeights::uniform(BendRow::all_ones(), 2);
        let c = check_caduceus(&ones, 1, 2, 2, &pt).unwrap();
        assert!(c.holds && c.f == int(1));
        let wzj = BendWeights::uniform(BendRow::wzj(), 2);
        let c = check_caduceus(&wzj, 1, 2, 2, &pt).unwrap();
        assert!(c.holds && c.f == int(1));
        let one = MonomialWeight::one();
        let bad = BendWeights::new(vec![
            row(k(2), one.clone(), one.clone(), k(0)),
            row(k(0), one.clone(), one, k(1)),
        ]);
        assert!(!check_caduceus(&bad, 1, 2, 2, &pt).unwrap().holds);
    }

    #[test]
    fn solvability_examples() {
        assert_eq!(check_solvable(&BendWeights::uniform(BendRow::wzj(), 3), 3, SolveMode::Full).verdict, Verdict::Solvable);
        let one = MonomialWeight::one();
        let e = QLaurent::one() - QLaurent::q().pow(2);
        let case4 = BendWeights::new(vec![
            row(k(0), one.clone(), one.clone(), k(1)),
            row(e.clone(), one.clone(), one.clone(), k(1)),
            row(e, one.clone(), one.clone(), k(0)),
        ]);
        assert_eq!(check_solvable(&case4, 3, SolveMode::Full).verdict, Verdict::Solvable);
        let mut bad = BendWeights::uniform(BendRow::all_ones(), 3);
        bad.rows[0].a = MonomialWeight::int(2);
        assert_eq!(check_solvable(&bad, 3, SolveMode::Full).verdict, Verdict::NotSolvable);
    }

    #[test]
    fn symmetry_examples() {
        let pt = SpectralPoint::new(rat(2, 9), vec![rat(3, 7), rat(-5, 2)]);
        let wzj = BendWeights::uniform(BendRow::wzj(), 2);
        assert!(check_weyl_symmetry(&Partition::new(vec![2, 1]).unwrap(), &wzj, &pt).unwrap());
        let ones = BendWeights::uniform(BendRow::all_ones(), 2);
        assert!(check_weyl_symmetry(&Partition::new(vec![2, 0]).unwrap(), &ones, &pt).unwrap());
    }
}
