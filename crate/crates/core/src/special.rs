//! Weyl group sums: Hall-Littlewood polynomials of types A and C, the
//! sign-character formula for the `C = 1, B = -q` model, and the closed
//! forms for solvable models of rank one to three.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};
use crate::lattice::{BendWeights, Partition, SpectralPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootType {
    A,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Root {
    pub vector: Vec<i32>,
    pub long: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystemSpec {
    #[serde(rename = "type")]
    pub kind: RootType,
    pub rank: usize,
    pub positive_roots: Vec<Root>,
}

impl RootSystemSpec {
    /// `e_i - e_j`, `i < j`.
    pub fn type_a(r: usize) -> Self {
        let mut roots = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let mut v = vec![0; r];
                v[i] = 1;
                v[j] = -1;
                roots.push(Root { vector: v, long: false });
            }
        }
        Self { kind: RootType::A, rank: r, positive_roots: roots }
    }

    /// `e_i - e_j`, `e_i + e_j` (short) and `2 e_i` (long).
    pub fn type_c(r: usize) -> Self {
        let mut roots = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                for s in [-1, 1] {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v[j] = s;
                    roots.push(Root { vector: v, long: false });
                }
            }
            let mut v = vec![0; r];
            v[i] = 2;
            roots.push(Root { vector: v, long: true });
        }
        Self { kind: RootType::C, rank: r, positive_roots: roots }
    }

    pub fn new(kind: RootType, r: usize) -> Self {
        match kind {
            RootType::A => Self::type_a(r),
            RootType::C => Self::type_c(r),
        }
    }

    pub fn weyl_group(&self) -> Vec<SignedPermutation> {
        match self.kind {
            RootType::A => symmetric_group(self.rank),
            RootType::C => weyl_orbit_c(self.rank),
        }
    }
}

/// `w` sends `x` to `y` with `y_i = x_{perm[i]}^{signs[i]}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(r: usize) -> Self {
        Self { perm: (0..r).collect(), signs: vec![1; r] }
    }

    pub fn act(&self, xs: &[Rational]) -> Vec<Rational> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| if s > 0 { xs[p].clone() } else { xs[p].recip() })
            .collect()
    }

    pub fn act_point(&self, pt: &SpectralPoint) -> SpectralPoint {
        SpectralPoint::new(pt.q.clone(), self.act(&pt.xs))
    }

    /// `(-1)^length`, the determinant of the signed permutation matrix.
    pub fn sign(&self) -> i32 {
        let inversions = (0..self.perm.len())
            .tuple_combinations()
            .filter(|&(i, j)| self.perm[i] > self.perm[j])
            .count();
        let negs = self.signs.iter().filter(|s| **s < 0).count();
        if (inversions + negs) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn symmetric_group(r: usize) -> Vec<SignedPermutation> {
    (0..r).permutations(r).map(|perm| SignedPermutation { perm, signs: vec![1; r] }).collect()
}

/// All `2^r r!` signed permutations.
pub fn weyl_orbit_c(r: usize) -> Vec<SignedPermutation> {
    let mut out = Vec::with_capacity((1 << r) * (1..=r).product::<usize>());
    for perm in (0..r).permutations(r) {
        for mask in 0..1u32 << r {
            let signs = (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermutation { perm: perm.clone(), signs });
        }
    }
    out
}

fn monomial(ys: &[Rational], exps: &[i32]) -> Result<Rational> {
    let mut t = Rational::one();
    for (y, &e) in ys.iter().zip(exps) {
        if e != 0 {
            t *= arith::pow(y, e)?;
        }
    }
    Ok(t)
}

fn neg(v: &[i32]) -> Vec<i32> {
    v.iter().map(|e| -e).collect()
}

/// Which positive roots contribute a `(1 - q x^{-alpha})` numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Numerators {
    All,
    Short,
    Long,
    None,
}

impl Numerators {
    fn includes(self, root: &Root) -> bool {
        match self {
            Numerators::All => true,
            Numerators::Short => !root.long,
            Numerators::Long => root.long,
            Numerators::None => false,
        }
    }
}

/// `prod_{alpha > 0} (1 - q y^{-alpha})^[selected] / (1 - y^{-alpha})`.
pub fn root_product(spec: &RootSystemSpec, ys: &[Rational], q: &Rational, num: Numerators) -> Result<Rational> {
    let mut t = Rational::one();
    for root in &spec.positive_roots {
        let m = monomial(ys, &neg(&root.vector))?;
        if num.includes(root) {
            t *= Rational::one() - q * &m;
        }
        t = arith::div(&t, &(Rational::one() - &m), "1 - x^(-alpha)")?;
    }
    Ok(t)
}

/// `prod_{alpha selected} (1 - q x^{-alpha})` with no denominators.
pub fn root_numerators(spec: &RootSystemSpec, ys: &[Rational], q: &Rational, num: Numerators) -> Result<Rational> {
    let mut t = Rational::one();
    for root in spec.positive_roots.iter().filter(|r| num.includes(r)) {
        t *= Rational::one() - q * monomial(ys, &neg(&root.vector))?;
    }
    Ok(t)
}

/// `sum_w w(f)`, optionally weighted by the sign character.
pub fn weyl_sum<F>(spec: &RootSystemSpec, xs: &[Rational], signed: bool, f: F) -> Result<Rational>
where
    F: Fn(&[Rational]) -> Result<Rational>,
{
    let mut s = Rational::zero();
    for w in spec.weyl_group() {
        let v = f(&w.act(xs))?;
        if signed && w.sign() < 0 {
            s -= v;
        } else {
            s += v;
        }
    }
    Ok(s)
}

fn multiplicities(lambda: &Partition) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for &p in lambda.parts() {
        *m.entry(p).or_insert(0) += 1;
    }
    m
}

fn q_integer(q: &Rational, j: usize) -> Result<Rational> {
    let num = Rational::one() - num_traits::pow(q.clone(), j);
    arith::div(&num, &(Rational::one() - q), "1 - q")
}

/// `prod_i prod_{j <= m_i} (1 - q^j)/(1 - q)` over every part value,
/// zero included.
pub fn c_lambda(lambda: &Partition, q: &Rational) -> Result<Rational> {
    let mut c = Rational::one();
    for m in multiplicities(lambda).values() {
        for j in 1..=*m {
            c *= q_integer(q, j)?;
        }
    }
    Ok(c)
}

/// `sum_{w in W_lambda} q^{length(w)}` for the stabilizer of `lambda`:
/// a symmetric group factor per repeated value, and in type C a
/// hyperoctahedral factor for the zero parts.
pub fn stabilizer_poincare(kind: RootType, lambda: &Partition, q: &Rational) -> Result<Rational> {
    let mut c = Rational::one();
    for (&v, &m) in &multiplicities(lambda) {
        for j in 1..=m {
            c *= if kind == RootType::C && v == 0 { q_integer(q, 2 * j)? } else { q_integer(q, j)? };
        }
    }
    Ok(c)
}

fn exps(lambda: &Partition, shift: i32) -> Vec<i32> {
    lambda.parts().iter().map(|&p| p as i32 + shift).collect()
}

fn require_rank(lambda: &Partition, pt: &SpectralPoint) -> Result<usize> {
    if lambda.rank() != pt.rank() {
        return Err(Error::InvalidInput(format!(
            "partition has {} parts but point has {} coordinates",
            lambda.rank(),
            pt.rank()
        )));
    }
    Ok(lambda.rank())
}

/// `sum_w w(x^(lambda + shift) prod_{alpha > 0} (1 - q x^{-alpha})/(1 - x^{-alpha}))`.
pub fn hall_littlewood_sum(spec: &RootSystemSpec, lambda: &Partition, shift: i32, pt: &SpectralPoint) -> Result<Rational> {
    require_rank(lambda, pt)?;
    let e = exps(lambda, shift);
    weyl_sum(spec, &pt.xs, false, |y| Ok(monomial(y, &e)? * root_product(spec, y, &pt.q, Numerators::All)?))
}

/// Hall-Littlewood polynomial, normalized to be monic in `x^lambda`.
pub fn macdonald_p(spec: &RootSystemSpec, lambda: &Partition, pt: &SpectralPoint) -> Result<Rational> {
    let s = hall_littlewood_sum(spec, lambda, 0, pt)?;
    arith::div(&s, &stabilizer_poincare(spec.kind, lambda, &pt.q)?, "stabilizer polynomial")
}

/// Partition function of the `C = 1, B = -q, A = D = 0` model:
/// `c_lambda^{-1} prod x_i prod_{alpha long} (1 - q x^{-alpha})
///  sum_w w(x^lambda prod_{alpha short} (1 - q x^{-alpha}) / prod_{alpha > 0} (1 - x^{-alpha}))`.
pub fn wzj_rhs(lambda: &Partition, pt: &SpectralPoint) -> Result<Rational> {
    let r = require_rank(lambda, pt)?;
    let spec = RootSystemSpec::type_c(r);
    let e = exps(lambda, 0);
    let q = &pt.q;
    let s = weyl_sum(&spec, &pt.xs, false, |y| Ok(monomial(y, &e)? * root_product(&spec, y, q, Numerators::Short)?))?;
    let prefactor = pt.xs.iter().product::<Rational>() * root_numerators(&spec, &pt.xs, q, Numerators::Long)?;
    arith::div(&(prefactor * s), &c_lambda(lambda, q)?, "c_lambda")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedForm {
    R1a,
    R1b,
    R2a,
    R2b,
    Rank2,
    Rank3Case4,
    Rank3Case7,
}

impl ClosedForm {
    pub fn rank(self) -> usize {
        match self {
            ClosedForm::R1a | ClosedForm::R1b | ClosedForm::R2a | ClosedForm::R2b => 1,
            ClosedForm::Rank2 => 2,
            ClosedForm::Rank3Case4 | ClosedForm::Rank3Case7 => 3,
        }
    }
}

/// Evaluates the closed-form partition function, reading `C_j`, `m_j`
/// (the coefficient of `C_j = m_j x^{-1}`) and `A_1 D_2` from `params`.
pub fn rank_closed_form(theorem: ClosedForm, lambda: &Partition, pt: &SpectralPoint, params: &BendWeights) -> Result<Rational> {
    let r = require_rank(lambda, pt)?;
    if r != theorem.rank() {
        return Err(Error::InvalidInput(format!("{theorem:?} needs rank {}, got {r}", theorem.rank())));
    }
    if params.rank() < r {
        return Err(Error::MissingParam(format!("{theorem:?} needs {r} bend rows, got {}", params.rank())));
    }
    let q = &pt.q;
    let spec = RootSystemSpec::type_c(r);
    let c_at = |j: usize, x: &Rational| params.rows[j - 1].c.eval(x, q);
    let m = |j: usize| params.rows[j - 1].c.coeff.eval(q);
    let xprod: Rational = pt.xs.iter().product();
    match theorem {
        ClosedForm::R1a | ClosedForm::R2b => {
            let shift = if theorem == ClosedForm::R1a { 1 } else { 0 };
            let pre = if theorem == ClosedForm::R1a { c_at(1, pt.x(1))? } else { pt.x(1) * c_at(1, pt.x(1))? };
            Ok(pre * hall_littlewood_sum(&spec, lambda, shift, pt)?)
        }
        ClosedForm::R1b | ClosedForm::R2a => {
            let (shift, pre) = if theorem == ClosedForm::R1b {
                (1, c_at(1, pt.x(1))?)
            } else {
                (0, c_at(1, pt.x(1))? * pt.x(1))
            };
            let e = exps(lambda, shift);
            let alt = weyl_sum(&spec, &pt.xs, true, |y| monomial(y, &e))?;
            Ok(pre * root_product(&spec, &pt.xs, q, Numerators::All)? * alt)
        }
        ClosedForm::Rank2 => {
            let one_a = match params.rows[0].c.xdeg {
                0 => true,
                -1 => false,
                d => return Err(Error::RegimeMismatch(format!("rank-two closed form needs C of degree 0 or -1, got {d}"))),
            };
            let (shift, kappa) = if one_a { (1, m(1)? * m(2)?) } else { (0, m(1)? * m(2)?) };
            let cl = c_lambda(lambda, q)?;
            let main = kappa * hall_littlewood_sum(&spec, lambda, shift, pt)?;
            let a1d2 = params.rows[0].a.eval(pt.x(1), q)? * params.rows[1].d.eval(pt.x(2), q)?;
            if a1d2.is_zero() {
                return arith::div(&main, &cl, "c_lambda");
            }
            let (l1, l2) = (lambda.parts()[0] as i32, lambda.parts()[1] as i32);
            let one = Rational::one();
            let frac = |a: &Rational, b: &Rational| arith::div(&(a - q * b), &(a - b), "rank-two correction");
            let g1 = |y: &[Rational]| -> Result<Rational> {
                let (x1, x2) = (&y[0], &y[1]);
                let (b1, b2) = (x1.recip(), x2.recip());
                let t = arith::pow(x1, l1 + 1)? * arith::pow(x2, l2 + 1)?;
                let corr = arith::div(&((&one - q) * &b2), &(x1 - &b2), "x1 - 1/x2")?;
                Ok(t * frac(x1, x2)? * frac(x2, &b1)? * corr * frac(x1, &b1)? * frac(x2, &b2)?)
            };
            let g2 = |y: &[Rational]| -> Result<Rational> {
                let (x1, x2) = (&y[0], &y[1]);
                let (b1, b2) = (x1.recip(), x2.recip());
                let t = arith::pow(x1, l1 - l2)?;
                Ok(t * frac(x1, x2)? * frac(&b1, x2)? * frac(x1, &b2)? * frac(&b1, &b2)? * frac(x1, &b1)?)
            };
            let s1 = weyl_sum(&spec, &pt.xs, false, g1)?;
            // The second summand is invariant under x2 -> 1/x2, so half the
            // full sum is the sum over cosets.
            let s2 = weyl_sum(&spec, &pt.xs, false, g2)? / Rational::from_integer(2.into());
            arith::div(&(main + a1d2 * (s1 + s2)), &cl, "c_lambda")
        }
        ClosedForm::Rank3Case4 => {
            let kappa = m(1)? * m(2)? * m(3)?;
            let s = hall_littlewood_sum(&spec, lambda, 1, pt)?;
            arith::div(&(kappa * s), &c_lambda(lambda, q)?, "c_lambda")
        }
        ClosedForm::Rank3Case7 => {
            let kappa = c_at(1, pt.x(1))? * c_at(2, pt.x(2))? * c_at(3, pt.x(3))?;
            let s = hall_littlewood_sum(&spec, lambda, 0, pt)?;
            arith::div(&(xprod * kappa * s), &c_lambda(lambda, q)?, "c_lambda")
        }
    }
}

/// Schur polynomial as a ratio of alternants, for cross-checks at `q = 0`.
pub fn schur_bialternant(lambda: &Partition, xs: &[Rational]) -> Result<Rational> {
    let r = lambda.rank();
    let spec = RootSystemSpec::type_a(r);
    let num_e: Vec<i32> = lambda.parts().iter().enumerate().map(|(i, &p)| p as i32 + (r - 1 - i) as i32).collect();
    let den_e: Vec<i32> = (0..r).map(|i| (r - 1 - i) as i32).collect();
    let num = weyl_sum(&spec, xs, true, |y| monomial(y, &num_e))?;
    let den = weyl_sum(&spec, xs, true, |y| monomial(y, &den_e))?;
    arith::div(&num, &den, "Vandermonde")
}
