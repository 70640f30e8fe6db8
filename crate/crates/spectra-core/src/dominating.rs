//! Dominating values: quadratic lower bounds for `2μ·φ_f` and certified
//! interval enclosures of the regions they prove positive.
//!
//! A value `r` is *dominating* when `φ_f(r) > 0` (strictly — `r = 0` has
//! `φ = 0` and does not qualify). Discarding the nonnegative indicator terms
//! of `2μ·φ_f(r)` and bounding the fractional parts in two different ways
//! yields two inverted parabolas `p_1`, `p_2` with `2μ·φ_f(r) ≥ p_i(r)`;
//! each is negative at 0 and 1 and positive at 1/2, so each proves an open
//! interval of dominating values around 1/2 between its roots
//! `(B_i ∓ √D_i)/(2A)`.
//!
//! Root endpoints are generally irrational, so the report carries certified
//! rational enclosures in both directions: an *inner* pair whose interior is
//! provably contained in the true open interval (sound "yes, dominating"
//! claims) and an *outer* pair provably containing it (sound exclusions).

use num_traits::{One, Signed, Zero};

use crate::curve::CurveInvariants;
use crate::distribution::phi_closed;
use crate::error::Error;
use crate::exact::{rat, rat_int, sqrt_enclosure, BigInt, IntervalEnclosure, Rational};

/// Which of the two lower bounds a quadratic belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundLabel {
    First,
    Second,
}

/// An inverted parabola `a2·r² + a1·r + a0` with `a2 < 0`, negative at 0
/// and 1 and positive at 1/2 for every valid curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticBound {
    pub a2: Rational,
    pub a1: Rational,
    pub a0: Rational,
    pub label: BoundLabel,
}

impl QuadraticBound {
    pub fn eval(&self, r: &Rational) -> Rational {
        &self.a2 * r * r + &self.a1 * r + &self.a0
    }

    /// Discriminant `a1² − 4·a2·a0` of the stored coefficients.
    pub fn discriminant(&self) -> Rational {
        &self.a1 * &self.a1 - rat_int(4) * &self.a2 * &self.a0
    }
}

/// First lower bound: coefficients
/// `a2 = −(2e_0 − 1 + Σ l_j e_j)`, `a1 = 2e_0 − n_g + Σ l_j e_j`,
/// `a0 = −(Σ_{j<g} (n_j − 1) + 1/4 + Σ_j l_j/(4 n_j))`.
pub fn p1_bound(inv: &CurveInvariants) -> QuadraticBound {
    let g = inv.g;
    let sum_le = inv.sum_l_e();
    let two_e0 = BigInt::from(2) * &inv.e[0];

    let a2 = -rat_int(&two_e0 - BigInt::one() + &sum_le);
    let a1 = rat_int(&two_e0 - inv.n_j(g) + &sum_le);
    let mut a0 = rat(1, 4);
    for j in 1..g {
        a0 += rat_int(inv.n_j(j) - BigInt::one());
    }
    for j in 1..=g {
        a0 += rat(inv.l_j(j).clone(), BigInt::from(4) * inv.n_j(j));
    }
    QuadraticBound {
        a2,
        a1,
        a0: -a0,
        label: BoundLabel::First,
    }
}

/// Second lower bound (sharper near 0): same leading coefficient,
/// `a1 = e_0 + Σ l_j e_j`, `a0 = −(1/4 + Σ_j l_j/(4 n_j))`.
pub fn p2_bound(inv: &CurveInvariants) -> QuadraticBound {
    let g = inv.g;
    let sum_le = inv.sum_l_e();

    let a2 = -rat_int(BigInt::from(2) * &inv.e[0] - BigInt::one() + &sum_le);
    let a1 = rat_int(&inv.e[0] + &sum_le);
    let mut a0 = rat(1, 4);
    for j in 1..=g {
        a0 += rat(inv.l_j(j).clone(), BigInt::from(4) * inv.n_j(j));
    }
    QuadraticBound {
        a2,
        a1,
        a0: -a0,
        label: BoundLabel::Second,
    }
}

/// Inner and outer rational enclosures of one open root interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosurePair {
    /// Certified subset: every rational strictly inside `inner` lies
    /// strictly between the true roots (hence is dominating).
    pub inner: IntervalEnclosure,
    /// Certified superset: the true open interval lies inside `outer`.
    pub outer: IntervalEnclosure,
}

/// Certified report of the dominating-value intervals of a curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatingReport {
    /// Enclosures of the open interval proven by the first bound.
    pub interval1: EnclosurePair,
    /// Enclosures of the open interval proven by the second bound.
    pub interval2: EnclosurePair,
    /// `(0, lct)`: open interval of dominating values at the left end.
    pub left_interval: (Rational, Rational),
    /// `[1 − 1/(n_g w_g), 1)`: φ is strictly negative on this interval.
    pub right_negative_interval: (Rational, Rational),
    pub d1: Rational,
    pub d2: Rational,
}

/// Enclose the open interval between the roots of `p`, refining until 1/2
/// is strictly interior to the inner enclosure (the bounds prove `p(1/2) >
/// 0`, so the true interval always contains 1/2 and refinement terminates).
fn root_interval(p: &QuadraticBound, d: &Rational, precision_bits: u32) -> Result<EnclosurePair, Error> {
    // p(r) = −A r² + B r − C with A > 0; roots (B ∓ √D)/(2A).
    let a = -p.a2.clone();
    let b = p.a1.clone();
    let denom = rat_int(2) * &a;
    let half = rat(1, 2);

    let mut bits = precision_bits;
    for _ in 0..64 {
        let s = sqrt_enclosure(d, bits)?;
        let inner = IntervalEnclosure::new(
            (&b - s.lo()) / &denom,
            (&b + s.lo()) / &denom,
        );
        if inner.contains_interior(&half) {
            let outer = IntervalEnclosure::new(
                (&b - s.hi()) / &denom,
                (&b + s.hi()) / &denom,
            );
            return Ok(EnclosurePair { inner, outer });
        }
        bits = bits.saturating_mul(2);
    }
    Err(Error::Internal(
        "enclosure refinement failed to certify 1/2 as dominating".to_string(),
    ))
}

/// Build the full report: discriminants, certified root-interval enclosures
/// for both bounds, and the two unconditional end intervals.
///
/// The bracketing gap between inner and outer endpoints is at most
/// `2^(−precision_bits)` divided by `2(2e_0 − 1 + Σ l_j e_j)`; internal
/// refinement (see [`root_interval`]) can only shrink it further.
pub fn dominating_intervals(
    inv: &CurveInvariants,
    precision_bits: u32,
) -> Result<DominatingReport, Error> {
    if precision_bits == 0 {
        return Err(Error::InvalidPrecision);
    }
    let p1 = p1_bound(inv);
    let p2 = p2_bound(inv);
    let d1 = p1.discriminant();
    let d2 = p2.discriminant();
    if !d1.is_positive() || !d2.is_positive() {
        // Positive discriminants hold for every valid curve; reaching this
        // branch means the coefficients were transcribed wrong.
        return Err(Error::Internal(format!(
            "non-positive discriminant (D1 = {d1}, D2 = {d2})"
        )));
    }

    let interval1 = root_interval(&p1, &d1, precision_bits)?;
    let interval2 = root_interval(&p2, &d2, precision_bits)?;

    Ok(DominatingReport {
        interval1,
        interval2,
        left_interval: (Rational::zero(), inv.lct.clone()),
        right_negative_interval: (inv.max_exp_lt1.clone(), Rational::one()),
        d1,
        d2,
    })
}

/// Whether `r ∈ [0, 1)` is a dominating value, i.e. `φ_f(r) > 0` exactly.
pub fn is_dominating(inv: &CurveInvariants, r: &Rational) -> Result<bool, Error> {
    Ok(phi_closed(inv, r)?.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{derive_invariants, PuiseuxPairs};

    fn inv_of(pairs: &[(i64, i64)]) -> CurveInvariants {
        derive_invariants(&PuiseuxPairs::from_ints(pairs).unwrap())
    }

    /// Exact check that x lies weakly inside the true open root interval:
    /// (2A·x − B)² ≤ D, with equality only at the roots themselves.
    fn dist_sq_ok(p: &QuadraticBound, d: &Rational, x: &Rational, inside: bool) -> bool {
        let a = -p.a2.clone();
        let b = &p.a1;
        let t = rat_int(2) * a * x - b;
        let t2 = &t * &t;
        if inside {
            t2 <= *d
        } else {
            t2 >= *d
        }
    }

    #[test]
    fn cusp_quadratics() {
        let inv = inv_of(&[(2, 1)]);
        let p1 = p1_bound(&inv);
        assert_eq!(p1.a2, rat_int(-4));
        assert_eq!(p1.a1, rat_int(3));
        assert_eq!(p1.a0, rat(-3, 8));
        assert_eq!(p1.eval(&rat(1, 2)), rat(1, 8));

        let p2 = p2_bound(&inv);
        assert_eq!(p2.a2, rat_int(-4));
        assert_eq!(p2.a1, rat_int(3));
        assert_eq!(p2.a0, rat(-3, 8));

        assert_eq!(p1.discriminant(), rat_int(3));
        assert_eq!(p2.discriminant(), rat_int(3));
    }

    #[test]
    fn worked_curve_p2() {
        let inv = inv_of(&[(3, 4), (2, 3)]);
        let p2 = p2_bound(&inv);
        assert_eq!(p2.a2, rat_int(-22));
        assert_eq!(p2.a1, rat_int(17));
        assert_eq!(p2.a0, rat(-23, 24));
    }

    #[test]
    fn cusp_report() {
        let inv = inv_of(&[(2, 1)]);
        let report = dominating_intervals(&inv, 20).unwrap();
        assert_eq!(report.d1, rat_int(3));
        assert_eq!(report.d2, rat_int(3));
        assert_eq!(report.left_interval, (Rational::zero(), rat(5, 6)));
        assert_eq!(report.right_negative_interval, (rat(5, 6), Rational::one()));

        // Inner enclosure inside the true interval ((3−√3)/8, (3+√3)/8),
        // outer enclosure outside, checked exactly via squared distances.
        let p1 = p1_bound(&inv);
        for pair in [&report.interval1, &report.interval2] {
            assert!(dist_sq_ok(&p1, &report.d1, pair.inner.lo(), true));
            assert!(dist_sq_ok(&p1, &report.d1, pair.inner.hi(), true));
            assert!(dist_sq_ok(&p1, &report.d1, pair.outer.lo(), false));
            assert!(dist_sq_ok(&p1, &report.d1, pair.outer.hi(), false));
            assert!(pair.inner.contains_interior(&rat(1, 2)));
            assert!(pair.outer.lo() <= pair.inner.lo());
            assert!(pair.inner.hi() <= pair.outer.hi());
        }
    }

    #[test]
    fn worked_curve_half_inside_inner() {
        let inv = inv_of(&[(3, 4), (2, 3)]);
        let report = dominating_intervals(&inv, 32).unwrap();
        assert!(report.interval1.inner.contains_interior(&rat(1, 2)));
        assert!(report.interval2.inner.contains_interior(&rat(1, 2)));
    }

    #[test]
    fn is_dominating_examples() {
        let inv = inv_of(&[(2, 1)]);
        assert!(is_dominating(&inv, &rat(1, 2)).unwrap());
        assert!(!is_dominating(&inv, &rat(5, 6)).unwrap());
        assert!(!is_dominating(&inv, &Rational::zero()).unwrap());
        assert!(is_dominating(&inv, &rat(3, 2)).is_err());
    }

    #[test]
    fn zero_precision_rejected() {
        let inv = inv_of(&[(2, 1)]);
        assert_eq!(
            dominating_intervals(&inv, 0),
            Err(Error::InvalidPrecision)
        );
    }

    #[test]
    fn gap_width_contract() {
        let inv = inv_of(&[(3, 4), (2, 3)]);
        let bits = 24;
        let report = dominating_intervals(&inv, bits).unwrap();
        // 2(2e_0 − 1 + Σ l_j e_j) = 44 for this curve.
        let budget = rat(1, BigInt::one() << bits) / rat_int(44);
        for pair in [&report.interval1, &report.interval2] {
            assert!(pair.inner.lo() - pair.outer.lo() <= budget);
            assert!(pair.outer.hi() - pair.inner.hi() <= budget);
        }
    }
}
