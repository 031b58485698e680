//! Exact arithmetic: big rationals, Laurent polynomials in `q`, and
//! monomial-in-`x` weights with Laurent coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for any integer exponent.
pub fn pow(base: &Rational, exp: i32) -> Result<Rational> {
    if exp < 0 {
        if base.is_zero() {
            return Err(Error::ZeroBase);
        }
        Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
    } else {
        Ok(num_traits::pow(base.clone(), exp as usize))
    }
}

/// `num / den`, reporting a vanishing denominator as a pole.
pub fn div(num: &Rational, den: &Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::PoleHit(what.to_string()));
    }
    Ok(num / den)
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Serde adapter encoding a [`Rational`] as the string `"p/q"`.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rational(&s).map_err(D::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
            other => Err(D::Error::custom(format!("expected rational string, got {other}"))),
        }
    }
}

pub mod rational_vec_serde {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_rational(&s).map_err(D::Error::custom),
                serde_json::Value::Number(n) if n.is_i64() => Ok(int(n.as_i64().unwrap())),
                other => Err(D::Error::custom(format!("expected rational string, got {other}"))),
            })
            .collect()
    }
}

/// Univariate Laurent polynomial in `q` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    coeffs: BTreeMap<i32, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^k`
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn q() -> Self {
        Self::monomial(int(1), 1)
    }

    pub fn q_pow(k: i32) -> Self {
        Self::monomial(int(1), k)
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// If this is a single term `c q^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(Rational, i32)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn shift(&self, by: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, v)| (k + by, v.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (k, c) in &self.coeffs {
            acc += c * pow(q0, *k)?;
        }
        Ok(acc)
    }
}

pub fn qlaurent_eval(p: &QLaurent, q0: &Rational) -> Result<Rational> {
    p.eval(q0)
}

pub fn qlaurent_equal(p1: &QLaurent, p2: &QLaurent) -> bool {
    p1 == p2
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let cs = format_rational(&mag);
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{cs}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{cs}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent { coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(QLaurent, Add, add);
forward_owned!(QLaurent, Sub, sub);
forward_owned!(QLaurent, Mul, mul);

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> =
            self.coeffs.iter().map(|(k, c)| (k.to_string(), format_rational(c))).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, serde_json::Value>::deserialize(d)?;
        let mut out = QLaurent::zero();
        for (k, v) in m {
            let k: i32 = k.trim().parse().map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let c = match v {
                serde_json::Value::String(s) => parse_rational(&s).map_err(D::Error::custom)?,
                serde_json::Value::Number(n) if n.is_i64() => int(n.as_i64().unwrap()),
                other => return Err(D::Error::custom(format!("bad coefficient {other}"))),
            };
            out.add_term(k, c);
        }
        Ok(out)
    }
}

/// `coeff(q) * x^xdeg`. The zero weight is stored with `xdeg = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialWeight {
    pub coeff: QLaurent,
    pub xdeg: i32,
}

impl<'de> Deserialize<'de> for MonomialWeight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            coeff: QLaurent,
            #[serde(default)]
            xdeg: i32,
        }
        let raw = Raw::deserialize(d)?;
        Ok(MonomialWeight::new(raw.coeff, raw.xdeg))
    }
}

impl MonomialWeight {
    pub fn new(coeff: QLaurent, xdeg: i32) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { coeff, xdeg }
        }
    }

    pub fn zero() -> Self {
        Self { coeff: QLaurent::zero(), xdeg: 0 }
    }

    pub fn one() -> Self {
        Self::constant(QLaurent::one())
    }

    pub fn constant(coeff: QLaurent) -> Self {
        Self::new(coeff, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(QLaurent::constant(int(n)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.xdeg + other.xdeg)
    }

    pub fn scale(&self, c: &QLaurent) -> Self {
        Self::new(&self.coeff * c, self.xdeg)
    }

    pub fn shift_x(&self, by: i32) -> Self {
        Self::new(self.coeff.clone(), self.xdeg + by)
    }

    pub fn eval(&self, x0: &Rational, q0: &Rational) -> Result<Rational> {
        if self.is_zero() {
            return Ok(Rational::zero());
        }
        Ok(self.coeff.eval(q0)? * pow(x0, self.xdeg)?)
    }
}

pub fn weight_eval(w: &MonomialWeight, x0: &Rational, q0: &Rational) -> Result<Rational> {
    w.eval(x0, q0)
}

impl fmt::Display for MonomialWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.xdeg {
            _ if self.is_zero() => write!(f, "0"),
            0 => write!(f, "{}", self.coeff),
            d => write!(f, "({})*x^{d}", self.coeff),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_one_minus_q_squared() {
        let p = QLaurent::from_terms([(0, int(1)), (2, int(-1))]);
        assert_eq!(qlaurent_eval(&p, &rat(1, 2)).unwrap(), rat(3, 4));
        assert_eq!(qlaurent_eval(&QLaurent::zero(), &rat(7, 3)).unwrap(), int(0));
    }

    #[test]
    fn negative_power_at_zero_is_an_error() {
        let p = QLaurent::q_pow(-1);
        assert!(matches!(qlaurent_eval(&p, &int(0)), Err(Error::ZeroBase)));
    }

    #[test]
    fn weight_examples() {
        let xbar = MonomialWeight::new(QLaurent::one(), -1);
        assert_eq!(weight_eval(&xbar, &int(3), &rat(1, 2)).unwrap(), rat(1, 3));
        let b = MonomialWeight::new(QLaurent::q(), 1);
        assert_eq!(weight_eval(&b, &int(2), &rat(1, 3)).unwrap(), rat(2, 3));
        assert_eq!(weight_eval(&MonomialWeight::zero(), &int(0), &int(0)).unwrap(), int(0));
    }

    #[test]
    fn structural_equality() {
        let one = QLaurent::one();
        let q = QLaurent::q();
        let a = &(&one - &q) * &(&one + &q);
        let b = &one - &q.pow(2);
        assert!(qlaurent_equal(&a, &b));
        let c = &q.pow(3) - &q;
        let d = &q * &(&q.pow(2) - &one);
        assert!(qlaurent_equal(&c, &d));
        assert!(!qlaurent_equal(&b, &(&one - &q)));
    }

    #[test]
    fn json_round_trip() {
        let p = QLaurent::from_terms([(-1, rat(1, 2)), (0, int(3))]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"-1":"1/2","0":"3"}"#);
        let back: QLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let w = MonomialWeight::new(p, -1);
        let ws = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<MonomialWeight>(&ws).unwrap(), w);
    }

    #[test]
    fn zero_weight_is_canonical() {
        let w = MonomialWeight::new(QLaurent::zero(), 5);
        assert_eq!(w, MonomialWeight::zero());
        assert_eq!(w.xdeg, 0);
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(parse_rational(" 10/4 ").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
