//! Local Boltzmann weights: rectangular vertices, crossings and bends.

use num_traits::{One, Zero};

use crate::arith::{self, Rational};
use crate::error::{Error, Result};

use super::BendWeights;

/// Rectangular vertex weight. Paths move up and left, so conservation
/// reads `bottom + right = top + left`.
pub fn rect_weight(left: u8, bottom: u32, right: u8, top: u32, x: &Rational, q: &Rational) -> Result<Rational> {
    if left > 1 || right > 1 || bottom + right as u32 != top + left as u32 {
        return Err(Error::ConservationViolated(format!(
            "rect (left {left}, bottom {bottom}, right {right}, top {top})"
        )));
    }
    Ok(rect_weight_unchecked(left, right, top, x, q))
}

/// Same as [`rect_weight`] for a configuration already known to conserve.
pub(crate) fn rect_weight_unchecked(left: u8, right: u8, top: u32, x: &Rational, q: &Rational) -> Rational {
    match (left, right) {
        (0, 0) => Rational::one(),
        (0, _) => Rational::one() - num_traits::pow(q.clone(), top as usize),
        _ => x.clone(),
    }
}

/// Crossing weight. `x_upper` belongs to the strand entering at the
/// upper-left port, `x_lower` to the one entering lower-left.
pub fn r_weight(lu: u8, ll: u8, ru: u8, rl: u8, x_upper: &Rational, x_lower: &Rational, q: &Rational) -> Result<Rational> {
    if lu > 1 || ll > 1 || ru > 1 || rl > 1 || lu + ll != ru + rl {
        return Err(Error::ConservationViolated(format!("crossing ({lu},{ll},{ru},{rl})")));
    }
    let (xj, xk) = (x_upper, x_lower);
    let den = xk - q * xj;
    let d = |num: Rational| arith::div(&num, &den, "crossing denominator x_lower - q x_upper");
    match (lu, ll, ru, rl) {
        (0, 0, 0, 0) | (1, 1, 1, 1) => Ok(Rational::one()),
        (1, 0, 0, 1) => d(q * (xk - xj)),
        (0, 1, 1, 0) => d(xk - xj),
        (1, 0, 1, 0) => d((Rational::one() - q) * xj),
        (0, 1, 0, 1) => d((Rational::one() - q) * xk),
        _ => unreachable!(),
    }
}

/// Crossing weight where conservation violations count as zero.
pub(crate) fn r_weight_or_zero(lu: u8, ll: u8, ru: u8, rl: u8, xu: &Rational, xl: &Rational, q: &Rational) -> Result<Rational> {
    match r_weight(lu, ll, ru, rl, xu, xl, q) {
        Err(Error::ConservationViolated(_)) => Ok(Rational::zero()),
        other => other,
    }
}

/// Bend weight of pair `j` (1-based) for arc occupancy `(upper, lower)`,
/// evaluated at the parameter `x`.
pub fn bend_weight(bw: &BendWeights, j: usize, upper: u8, lower: u8, x: &Rational, q: &Rational) -> Result<Rational> {
    if upper > 1 || lower > 1 {
        return Err(Error::InvalidInput(format!("bend occupancy ({upper},{lower})")));
    }
    bw.row(j)?.get(upper, lower).eval(x, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, MonomialWeight, QLaurent};
    use crate::lattice::BendRow;

    #[test]
    fn rect_table() {
        let x = int(5);
        let q = rat(1, 2);
        assert_eq!(rect_weight(0, 3, 0, 3, &x, &q).unwrap(), int(1));
        assert_eq!(rect_weight(0, 1, 1, 2, &x, &q).unwrap(), rat(3, 4));
        assert_eq!(rect_weight(1, 0, 1, 0, &x, &q).unwrap(), x);
        assert_eq!(rect_weight(1, 3, 0, 2, &x, &q).unwrap(), x);
        assert!(matches!(rect_weight(1, 0, 0, 0, &x, &q), Err(Error::ConservationViolated(_))));
    }

    #[test]
    fn crossing_table() {
        let q = rat(1, 2);
        assert_eq!(r_weight(0, 0, 0, 0, &int(3), &int(2), &q).unwrap(), int(1));
        assert_eq!(r_weight(1, 0, 0, 1, &int(3), &int(2), &q).unwrap(), int(-1));
        assert_eq!(r_weight(1, 0, 1, 0, &int(7), &int(7), &q).unwrap(), int(1));
        assert_eq!(r_weight(0, 1, 1, 0, &int(7), &int(7), &q).unwrap(), int(0));
        assert!(matches!(r_weight(0, 1, 0, 1, &int(2), &int(1), &q), Err(Error::PoleHit(_))));
        assert!(matches!(r_weight(1, 1, 0, 1, &int(2), &int(3), &q), Err(Error::ConservationViolated(_))));
    }

    #[test]
    fn bend_table() {
        let row = BendRow::new(
            MonomialWeight::one(),
            MonomialWeight::one(),
            MonomialWeight::new(QLaurent::one(), -1),
            MonomialWeight::zero(),
        );
        let bw = BendWeights::new(vec![row]);
        let q = rat(1, 3);
        assert_eq!(bend_weight(&bw, 1, 0, 0, &int(2), &q).unwrap(), int(1));
        assert_eq!(bend_weight(&bw, 1, 1, 0, &int(2), &q).unwrap(), rat(1, 2));
        assert_eq!(bend_weight(&bw, 1, 1, 1, &int(2), &q).unwrap(), int(0));
        assert!(bend_weight(&bw, 2, 1, 1, &int(2), &q).is_err());
    }
}
