//! Catalogs of solvable bend weights at rank three and at general rank,
//! instance construction, classification of a given weight set, and the
//! probe comparing solvable models against spherical functions.

use itertools::Itertools;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, format_rational, int, MonomialWeight, QLaurent, Rational};
use crate::error::{Error, Result};
use crate::lattice::{partition_function_bc, BendRow, BendWeights, Partition, PointSampler, SpectralPoint};
use crate::relations::{check_solvable, SolveMode, Verdict};
use crate::special::{c_lambda, hall_littlewood_sum, RootSystemSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Rank3,
    RankR,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub family: Family,
    pub id: u32,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sym {
    A,
    B,
    C,
    D,
    /// Coefficient of `C_j`.
    M,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: QLaurent,
    pub xdeg: i32,
    pub factors: Vec<(Sym, usize)>,
}

impl Term {
    fn new(coeff: QLaurent, factors: &[(Sym, usize)]) -> Self {
        Self { coeff, xdeg: 0, factors: factors.to_vec() }
    }

    fn x(mut self, xdeg: i32) -> Self {
        self.xdeg = xdeg;
        self
    }

    pub fn eval(&self, bw: &BendWeights) -> MonomialWeight {
        let mut w = MonomialWeight::new(self.coeff.clone(), self.xdeg);
        for (s, j) in &self.factors {
            w = w.mul(&sym_weight(bw, *s, *j));
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    Eq(Term, Term),
    Zero(Sym, usize),
    NonZero(Sym, usize),
    /// Nonzero with the given power of `x`.
    XDeg(Sym, usize, i32),
    /// Zero or free of `x`.
    Constant(Sym, usize),
    EvenRank,
}

fn sym_weight(bw: &BendWeights, s: Sym, j: usize) -> MonomialWeight {
    let row = &bw.rows[j - 1];
    match s {
        Sym::A => row.a.clone(),
        Sym::B => row.b.clone(),
        Sym::C => row.c.clone(),
        Sym::D => row.d.clone(),
        Sym::M => MonomialWeight::constant(row.c.coeff.clone()),
    }
}

impl Constraint {
    pub fn holds(&self, bw: &BendWeights) -> bool {
        match self {
            Constraint::Eq(a, b) => a.eval(bw) == b.eval(bw),
            Constraint::Zero(s, j) => sym_weight(bw, *s, *j).is_zero(),
            Constraint::NonZero(s, j) => !sym_weight(bw, *s, *j).is_zero(),
            Constraint::XDeg(s, j, d) => {
                let w = sym_weight(bw, *s, *j);
                !w.is_zero() && w.xdeg == *d
            }
            Constraint::Constant(s, j) => sym_weight(bw, *s, *j).xdeg == 0,
            Constraint::EvenRank => bw.rank() % 2 == 0,
        }
    }
}

fn qc(n: i64) -> QLaurent {
    QLaurent::constant(int(n))
}

fn qp(k: i32) -> QLaurent {
    QLaurent::q_pow(k)
}

impl ScenarioSpec {
    pub fn rank3(id: u32) -> Self {
        Self { family: Family::Rank3, id, rank: 3 }
    }

    pub fn rank_r(id: u32, rank: usize) -> Self {
        Self { family: Family::RankR, id, rank }
    }

    pub fn catalog(rank: usize) -> Vec<Self> {
        if rank == 3 {
            (1..=8).map(Self::rank3).collect()
        } else {
            (1..=5).map(|id| Self::rank_r(id, rank)).collect()
        }
    }

    pub fn name(&self) -> String {
        let f = match self.family {
            Family::Rank3 => "rank3",
            Family::RankR => "rankr",
        };
        format!("{f}-{}", self.id)
    }

    pub fn validate(&self) -> Result<()> {
        let max = match self.family {
            Family::Rank3 if self.rank != 3 => {
                return Err(Error::InvalidInput(format!("rank-three catalog used at rank {}", self.rank)))
            }
            Family::Rank3 => 8,
            Family::RankR => 5,
        };
        if self.id == 0 || self.id > max || self.rank == 0 {
            return Err(Error::InvalidInput(format!("no scenario {} at rank {}", self.id, self.rank)));
        }
        Ok(())
    }

    pub fn constraints(&self) -> Vec<Constraint> {
        use Constraint::*;
        use Sym::*;
        let r = self.rank;
        let mut out = Vec::new();
        let zero_ad = |out: &mut Vec<Constraint>| {
            for j in 1..=r {
                out.push(Zero(A, j));
                out.push(Zero(D, j));
            }
        };
        let b_times_c = |out: &mut Vec<Constraint>, coeff: QLaurent, xdeg: i32| {
            for j in 1..=r {
                out.push(NonZero(C, j));
                out.push(Eq(Term::new(QLaurent::one(), &[(B, j)]), Term::new(coeff.clone(), &[(C, j)]).x(xdeg)));
            }
        };
        let constants_equal_bc = |out: &mut Vec<Constraint>| {
            for j in 1..=r {
                out.push(Constant(A, j));
                out.push(Constant(D, j));
                out.push(XDeg(C, j, 0));
                out.push(Eq(Term::new(QLaurent::one(), &[(B, j)]), Term::new(QLaurent::one(), &[(C, j)])));
            }
        };
        let shifted = |out: &mut Vec<Constraint>| {
            for j in 1..=r {
                out.push(XDeg(C, j, -1));
                out.push(Eq(Term::new(QLaurent::one(), &[(B, j)]), Term::new(QLaurent::q(), &[(M, j)]).x(1)));
            }
        };
        let mmm: Vec<(Sym, usize)> = (1..=r).map(|j| (M, j)).collect();
        // A_i X_j D_k = coeff * X_1 ... X_r
        let triple = |out: &mut Vec<Constraint>, i: usize, j: usize, k: usize, x: Sym, coeff: QLaurent| {
            let all: Vec<(Sym, usize)> = (1..=r).map(|t| (x, t)).collect();
            out.push(Eq(Term::new(QLaurent::one(), &[(A, i), (x, j), (D, k)]), Term::new(coeff, &all)));
        };
        match (self.family, self.id) {
            (_, 1) => {
                zero_ad(&mut out);
                b_times_c(&mut out, qc(-1) * QLaurent::q(), 0);
            }
            (_, 2) => {
                zero_ad(&mut out);
                b_times_c(&mut out, qc(-1), 2);
            }
            (Family::Rank3, 3) => {
                constants_equal_bc(&mut out);
                for p in (1..=3).permutations(3) {
                    triple(&mut out, p[0], p[1], p[2], C, QLaurent::one());
                }
            }
            (Family::Rank3, 4) | (Family::Rank3, 5) => {
                constants_equal_bc(&mut out);
                let (zero_a, zero_d, list, c) = if self.id == 4 {
                    (1, 3, [(3, 2, 1), (3, 1, 2), (2, 3, 1)], QLaurent::one() - qp(2))
                } else {
                    (3, 1, [(1, 2, 3), (2, 1, 3), (1, 3, 2)], QLaurent::one() - qp(-2))
                };
                out.push(Zero(A, zero_a));
                out.push(Zero(D, zero_d));
                for (i, j, k) in list {
                    triple(&mut out, i, j, k, C, c.clone());
                }
            }
            (Family::Rank3, 6) => {
                shifted(&mut out);
                for j in 1..=3 {
                    out.push(Constant(A, j));
                    out.push(Constant(D, j));
                }
                for p in (1..=3usize).permutations(3) {
                    let (i, j, k) = (p[0], p[1], p[2]);
                    let e = 2 * (k as i32 - j as i32);
                    out.push(Eq(
                        Term::new(qp(e), &[(M, i), (A, j), (D, k)]),
                        Term::new(QLaurent::q(), &mmm),
                    ));
                }
            }
            (Family::Rank3, 7) | (Family::Rank3, 8) => {
                shifted(&mut out);
                let (za, zd, list) = if self.id == 7 {
                    (
                        1,
                        3,
                        [
                            ((1, 3, 2), qp(3) - qp(1)),
                            ((3, 2, 1), qp(3) - qp(1)),
                            ((2, 3, 1), qp(5) - qp(3)),
                        ],
                    )
                } else {
                    (
                        3,
                        1,
                        [
                            ((1, 2, 3), qp(-1) - qp(1)),
                            ((3, 1, 2), qp(-1) - qp(1)),
                            ((2, 1, 3), qp(-3) - qp(-1)),
                        ],
                    )
                };
                out.push(Zero(A, za));
                out.push(Zero(D, zd));
                for ((i, j, k), c) in list {
                    out.push(Eq(Term::new(QLaurent::one(), &[(M, i), (A, j), (D, k)]), Term::new(c, &mmm)));
                }
            }
            (Family::RankR, 3) => {
                constants_equal_bc(&mut out);
                for (i, j) in (1..=r).cartesian_product(1..=r).filter(|(i, j)| i != j) {
                    out.push(Eq(
                        Term::new(QLaurent::one(), &[(A, i), (D, j)]),
                        Term::new(QLaurent::one(), &[(C, i), (C, j)]),
                    ));
                }
            }
            (Family::RankR, 4) => {
                shifted(&mut out);
                for j in 1..=r {
                    out.push(Constant(A, j));
                    out.push(Constant(D, j));
                }
                for (i, j) in (1..=r).cartesian_product(1..=r).filter(|(i, j)| i != j) {
                    let e = 1 - 2 * (j as i32 - i as i32);
                    out.push(Eq(
                        Term::new(QLaurent::one(), &[(A, i), (D, j)]),
                        Term::new(qp(e), &[(M, i), (M, j)]),
                    ));
                }
            }
            (Family::RankR, 5) => {
                out.push(EvenRank);
                for j in 1..=r {
                    out.push(Zero(B, j));
                    out.push(Zero(C, j));
                    out.push(NonZero(A, j));
                    out.push(NonZero(D, j));
                }
                for j in 1..r {
                    out.push(Eq(
                        Term::new(qp(2), &[(A, j), (D, j + 1)]),
                        Term::new(QLaurent::one(), &[(A, j + 1), (D, j)]),
                    ));
                }
            }
            _ => {}
        }
        out
    }

    /// Instance with no seed scaling.
    fn base_instance(&self) -> Result<BendWeights> {
        let r = self.rank;
        let one = QLaurent::one;
        let c = |x: QLaurent| MonomialWeight::constant(x);
        let consts = |a: QLaurent, d: QLaurent| BendRow::equal_bc(a, one(), d);
        let rows: Vec<BendRow> = match (self.family, self.id) {
            (_, 1) => vec![BendRow::wzj(); r],
            (_, 2) => vec![
                BendRow::new(MonomialWeight::zero(), MonomialWeight::new(qc(-1), 1), MonomialWeight::new(one(), -1), MonomialWeight::zero());
                r
            ],
            (Family::Rank3, 3) | (Family::RankR, 3) => vec![BendRow::all_ones(); r],
            (Family::Rank3, 4) => {
                let s = one() - qp(2);
                vec![consts(QLaurent::zero(), one()), consts(s.clone(), one()), consts(s, QLaurent::zero())]
            }
            (Family::Rank3, 5) => {
                let s = one() - qp(-2);
                vec![consts(s.clone(), QLaurent::zero()), consts(s, one()), consts(QLaurent::zero(), one())]
            }
            (Family::Rank3, 6) => (1..=3).map(|j| BendRow::shifted_bc(qp(2 * j), one(), qp(1 - 2 * j))).collect(),
            (Family::Rank3, 7) => {
                let s = qp(5) - qp(3);
                vec![
                    BendRow::shifted_bc(QLaurent::zero(), one(), one()),
                    BendRow::shifted_bc(s.clone(), qp(2), one()),
                    BendRow::shifted_bc(s, one(), QLaurent::zero()),
                ]
            }
            (Family::Rank3, 8) => {
                let s = qp(-3) - qp(-1);
                vec![
                    BendRow::shifted_bc(s.clone(), one(), QLaurent::zero()),
                    BendRow::shifted_bc(s, qp(-2), one()),
                    BendRow::shifted_bc(QLaurent::zero(), one(), one()),
                ]
            }
            (Family::RankR, 4) => (1..=r as i32).map(|j| BendRow::shifted_bc(qp(2 * j), one(), qp(1 - 2 * j))).collect(),
            (Family::RankR, 5) => {
                if r % 2 == 1 {
                    return Err(Error::NoSolutionFound(format!("{}: needs even rank, got {r}", self.name())));
                }
                (0..r as i32)
                    .map(|j| BendRow::new(c(qp(2 * j)), MonomialWeight::zero(), MonomialWeight::zero(), MonomialWeight::one()))
                    .collect()
            }
            _ => return Err(Error::InvalidInput(format!("unknown scenario {}", self.name()))),
        };
        Ok(BendWeights::new(rows))
    }
}

pub fn check_scenario(bw: &BendWeights, s: &ScenarioSpec) -> bool {
    bw.rank() == s.rank && s.validate().is_ok() && s.constraints().iter().all(|c| c.holds(bw))
}

/// A solution of the scenario's constraints. Seed 0 gives the reference
/// instance; other seeds rescale each row by a monomial `c q^k`, which
/// preserves every constraint since each is homogeneous in every row.
pub fn build_instance(s: &ScenarioSpec, seed: u64) -> Result<BendWeights> {
    s.validate()?;
    let mut bw = s.base_instance()?;
    if seed != 0 {
        let mut rng = PointSampler::new(seed);
        let cs = [int(1), int(-1), int(2), arith::rat(1, 2), int(-3), arith::rat(2, 3)];
        for row in bw.rows.iter_mut() {
            let f = QLaurent::monomial(cs[rng.index(cs.len())].clone(), rng.index(5) as i32 - 2);
            *row = BendRow::new(row.a.scale(&f), row.b.scale(&f), row.c.scale(&f), row.d.scale(&f));
        }
    }
    if !check_scenario(&bw, s) {
        return Err(Error::NoSolutionFound(format!("{}: constructed instance violates its constraints", s.name())));
    }
    Ok(bw)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ClassifyOutcome {
    Scenario { scenario: ScenarioSpec },
    NotSolvable { verdict: Verdict },
    /// Solvable, yet no catalog entry matches.
    Inconsistent { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub rank: usize,
    pub verdict: Verdict,
    pub matches: Vec<ScenarioSpec>,
    pub outcome: ClassifyOutcome,
}

pub fn classify_bend_weights(bw: &BendWeights, r: usize) -> Result<Classification> {
    bw.require_rank(r)?;
    let verdict = check_solvable(bw, r, SolveMode::Full).verdict;
    let matches: Vec<ScenarioSpec> = ScenarioSpec::catalog(r).into_iter().filter(|s| check_scenario(bw, s)).collect();
    let outcome = match (verdict, matches.first()) {
        (Verdict::Solvable, Some(s)) => ClassifyOutcome::Scenario { scenario: *s },
        (Verdict::Solvable, None) => ClassifyOutcome::Inconsistent {
            reason: format!("solvable at rank {r} but matches no catalog scenario"),
        },
        (v, _) => ClassifyOutcome::NotSolvable { verdict: v },
    };
    Ok(Classification { rank: r, verdict, matches, outcome })
}

/// Multiplies one randomly chosen nonzero weight by `1 + q`.
pub fn perturb(bw: &BendWeights, rng: &mut PointSampler) -> (BendWeights, usize, char) {
    let slots: Vec<(usize, char)> = bw
        .rows
        .iter()
        .enumerate()
        .flat_map(|(j, row)| {
            [('A', &row.a), ('B', &row.b), ('C', &row.c), ('D', &row.d)]
                .into_iter()
                .filter(|(_, w)| !w.is_zero())
                .map(move |(s, _)| (j + 1, s))
        })
        .collect();
    let (j, s) = slots[rng.index(slots.len())];
    let mut out = bw.clone();
    let row = &mut out.rows[j - 1];
    let w = match s {
        'A' => &mut row.a,
        'B' => &mut row.b,
        'C' => &mut row.c,
        _ => &mut row.d,
    };
    *w = w.scale(&(QLaurent::one() + QLaurent::q()));
    (out, j, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeTarget {
    /// `c_lambda^{-1} sum_W w(x^lambda rho)`.
    Plain,
    /// `prod x_i` times the plain target.
    TimesProduct,
    /// `c_lambda^{-1} sum_W w(x^{lambda + 1} rho)`.
    Shifted,
}

impl ProbeTarget {
    pub const ALL: [ProbeTarget; 3] = [ProbeTarget::Plain, ProbeTarget::TimesProduct, ProbeTarget::Shifted];

    pub fn eval(self, lambda: &Partition, pt: &SpectralPoint) -> Result<Rational> {
        let spec = RootSystemSpec::type_c(pt.rank());
        let shift = if self == ProbeTarget::Shifted { 1 } else { 0 };
        let s = arith::div(&hall_littlewood_sum(&spec, lambda, shift, pt)?, &c_lambda(lambda, &pt.q)?, "c_lambda")?;
        Ok(match self {
            ProbeTarget::TimesProduct => s * pt.xs.iter().product::<Rational>(),
            _ => s,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeWitness {
    pub target: ProbeTarget,
    pub lambda: Partition,
    pub point: SpectralPoint,
    pub z: String,
    pub target_value: String,
    /// `Z / target` at this `(lambda, point)`, if defined.
    pub ratio: Option<String>,
    /// The ratio it was compared against, from the first `(lambda, point)`.
    pub reference_ratio: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioProbe {
    pub scenario: ScenarioSpec,
    pub instance: BendWeights,
    pub points: Vec<SpectralPoint>,
    /// One entry per target that `Z` fails to match.
    pub witnesses: Vec<ProbeWitness>,
    /// Targets `Z` is proportional to, with the constant.
    pub matched: Vec<(ProbeTarget, String)>,
    pub witness_found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub rank: usize,
    pub seed: u64,
    pub lambdas: Vec<Partition>,
    pub scenarios: Vec<ScenarioProbe>,
    pub errors: Vec<String>,
}

/// For each scenario instance, looks for `(lambda, point)` showing that
/// `Z(B_lambda)` is not a fixed nonzero multiple of any target, across all
/// of `lambdas` and two points.
pub fn negative_probe(r: usize, scenarios: &[ScenarioSpec], lambdas: &[Partition], seed: u64) -> ProbeReport {
    let mut report = ProbeReport { rank: r, seed, lambdas: lambdas.to_vec(), scenarios: Vec::new(), errors: Vec::new() };
    if lambdas.is_empty() {
        return report;
    }
    let points = probe_points(r, seed);
    for s in scenarios {
        match probe_one(s, r, lambdas, &points, seed) {
            Ok(p) => report.scenarios.push(p),
            Err(e) => report.errors.push(format!("{}: {e}", s.name())),
        }
    }
    report
}

/// Two generic points sharing `q`, so that a proportionality constant
/// depending on `q` alone is the same at both.
pub fn probe_points(r: usize, seed: u64) -> Vec<SpectralPoint> {
    let mut rng = PointSampler::new(seed);
    let first = rng.point(r);
    let second = loop {
        let p = SpectralPoint::new(first.q.clone(), (0..r).map(|_| rng.rational()).collect());
        if p.is_generic() && p != first {
            break p;
        }
    };
    vec![first, second]
}

fn probe_one(
    s: &ScenarioSpec,
    r: usize,
    lambdas: &[Partition],
    points: &[SpectralPoint],
    seed: u64,
) -> Result<ScenarioProbe> {
    let spec = ScenarioSpec { rank: r, ..*s };
    let bw = build_instance(&spec, seed)?;
    let mut zs = Vec::new();
    for l in lambdas {
        if l.rank() != r {
            return Err(Error::InvalidInput(format!("partition {l:?} has rank {} not {r}", l.rank())));
        }
        for pt in points {
            zs.push((l, pt, partition_function_bc(l, &bw, pt)?));
        }
    }
    let mut witnesses = Vec::new();
    let mut matched = Vec::new();
    for target in ProbeTarget::ALL {
        let mut reference: Option<Rational> = None;
        let mut witness = None;
        for (l, pt, z) in &zs {
            let t = target.eval(l, pt)?;
            let ratio = if t.is_zero() { None } else { Some(z / &t) };
            let bad = match (&ratio, &reference) {
                (None, _) => !z.is_zero(),
                (Some(k), None) => k.is_zero(),
                (Some(k), Some(r0)) => k != r0,
            };
            if bad {
                witness = Some(ProbeWitness {
                    target,
                    lambda: (*l).clone(),
                    point: (*pt).clone(),
                    z: format_rational(z),
                    target_value: format_rational(&t),
                    ratio: ratio.as_ref().map(format_rational),
                    reference_ratio: reference.as_ref().map(format_rational),
                });
                break;
            }
            if reference.is_none() {
                reference = ratio;
            }
        }
        match (witness, reference) {
            (Some(w), _) => witnesses.push(w),
            (None, Some(k)) => matched.push((target, format_rational(&k))),
            (None, None) => {}
        }
    }
    let witness_found = matched.is_empty() && !witnesses.is_empty();
    Ok(ScenarioProbe { scenario: spec, instance: bw, points: points.to_vec(), witnesses, matched, witness_found })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert!(check_scenario(&build_instance(&ScenarioSpec::rank3(4), 0).unwrap(), &ScenarioSpec::rank3(4)));
        assert!(check_scenario(&BendWeights::uniform(BendRow::all_ones(), 3), &ScenarioSpec::rank3(3)));
        let s7 = build_instance(&ScenarioSpec::rank3(7), 0).unwrap();
        assert!(check_scenario(&s7, &ScenarioSpec::rank3(7)));
        assert!(!check_scenario(&s7, &ScenarioSpec::rank3(4)));
        assert_eq!(build_instance(&ScenarioSpec::rank_r(1, 4), 0).unwrap(), BendWeights::uniform(BendRow::wzj(), 4));
        assert!(matches!(build_instance(&ScenarioSpec::rank_r(5, 3), 0), Err(Error::NoSolutionFound(_))));
    }

    #[test]
    fn seeded_instances_satisfy_constraints() {
        for s in ScenarioSpec::catalog(3).into_iter().chain(ScenarioSpec::catalog(4)) {
            for seed in 0..4 {
                let bw = build_instance(&s, seed).unwrap();
                assert!(check_scenario(&bw, &s), "{}", s.name());
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify_bend_weights(&BendWeights::uniform(BendRow::all_ones(), 3), 3).unwrap();
        assert_eq!(c.outcome, ClassifyOutcome::Scenario { scenario: ScenarioSpec::rank3(3) });
        let c = classify_bend_weights(&BendWeights::uniform(BendRow::wzj(), 4), 4).unwrap();
        assert_eq!(c.outcome, ClassifyOutcome::Scenario { scenario: ScenarioSpec::rank_r(1, 4) });
        let mut bw = BendWeights::uniform(BendRow::all_ones(), 3);
        bw.rows[0].a = MonomialWeight::int(2);
        let c = classify_bend_weights(&bw, 3).unwrap();
        assert!(matches!(c.outcome, ClassifyOutcome::NotSolvable { .. }));
    }

    #[test]
    fn empty_probe() {
        let r = negative_probe(4, &[ScenarioSpec::rank_r(3, 4)], &[], 0);
        assert!(r.scenarios.is_empty());
    }
}
