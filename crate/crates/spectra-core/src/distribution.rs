//! Closed-form spectral counting and the cumulative difference function φ.
//!
//! Two results are implemented: an exact closed formula for
//! `#{α_i ≤ r}` on `[0, 1)` built from fractional parts of `e_j·r`, and the
//! cumulative difference function
//!
//! ```text
//! φ_f(r) = ∫_0^r (N_2 − D_f) = r²/2 − #{α_i ≤ r}/μ    on [0, 1),
//! ```
//!
//! where `N_2` is the triangle density on `[0,2]` and `D_f` the normalized
//! spectral counting measure. Both are evaluated with exact rationals, and
//! the indicator decisions at jump points are exact comparisons, so the
//! `≤` vs `<` behavior at spectral values is bit-exact rather than
//! tolerance-based.
//!
//! Every function here is a closed form: none of them enumerates the
//! spectrum. The enumeration in [`crate::spectrum`] is the independent
//! oracle the test suite compares against.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::curve::CurveInvariants;
use crate::error::Error;
use crate::exact::{rat, rat_int, BigInt, Rational};
use crate::spectrum::Spectrum;

/// One evaluated grid point: `phi = r²/2 − count/μ` holds exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSample {
    pub r: Rational,
    pub phi: Rational,
    pub count: BigInt,
}

fn check_unit_range(r: &Rational) -> Result<(), Error> {
    if r.is_negative() || *r >= Rational::one() {
        Err(Error::ROutOfRange { r: r.to_string() })
    } else {
        Ok(())
    }
}

/// All formula ingredients for one evaluation point `r = p/q`, kept in
/// integer arithmetic over the common denominator `2q²N` with `N = Π n_j`.
/// Both closed forms below are sums of fractional parts of multiples of
/// `p/q`, so every term is exactly `(something mod q·stuff)` over that
/// denominator; evaluating this way skips per-operation gcd normalization
/// and keeps dense grid sweeps cheap.
struct EvalParts {
    /// Numerator `p ≥ 0` of `r`.
    p: BigInt,
    /// Denominator `q ≥ 1` of `r`.
    q: BigInt,
    /// `N = n_1 ··· n_g`.
    nprod: BigInt,
    /// `f_j = (e_j·p) mod q`, so `{e_j r} = f_j/q`, for `j = 0..=g`.
    f: Vec<BigInt>,
    /// `Σ_j (N/n_j)·Σ_b (w_j(n_j f_j − b q) mod n_j q)`: the inner double
    /// sum `Σ_j Σ_b {w_j({e_j r} − b/n_j)}·1[{e_j r} ≥ b/n_j]`, scaled by
    /// `qN`.
    indicator: BigInt,
}

impl EvalParts {
    fn build(inv: &CurveInvariants, r: &Rational) -> EvalParts {
        let p = r.numer().clone();
        let q = r.denom().clone();
        let f: Vec<BigInt> = inv.e.iter().map(|e| (e * &p) % &q).collect();
        let mut nprod = BigInt::one();
        for j in 1..=inv.g {
            nprod *= inv.n_j(j);
        }

        let mut indicator = BigInt::zero();
        #[allow(clippy::needless_range_loop)] // j is the subscript in the formula
        for j in 1..=inv.g {
            let n = inv.n_j(j);
            let w = &inv.w[j];
            let scale = &nprod / n;
            let modulus = n * &q;
            // {e_j r} ≥ b/n_j ⇔ b·q ≤ n_j·f_j, so b runs to ⌊n_j f_j / q⌋.
            let njfj = n * &f[j];
            let mut b_max = &njfj / &q;
            let n_minus_1 = n - BigInt::one();
            if b_max > n_minus_1 {
                b_max = n_minus_1;
            }
            let mut arg = &njfj - &q;
            let mut b = BigInt::one();
            while b <= b_max {
                // {w_j({e_j r} − b/n_j)} = (w_j(n_j f_j − b q) mod n_j q)/(n_j q)
                indicator += &scale * ((w * &arg) % &modulus);
                arg -= &q;
                b += BigInt::one();
            }
        }
        EvalParts {
            p,
            q,
            nprod,
            f,
            indicator,
        }
    }
}

/// Exact number of spectral exponents `≤ r` for `r ∈ [0, 1)`, by closed
/// formula:
///
/// ```text
/// (μ − n_g w_g)/2·r + n_g w_g/2·r² + Σ_j (n_j−1)/2·{e_j r}
///   + ½{e_0 r}(1−{e_0 r}) + Σ_j l_j/(2n_j)·{e_{j−1} r}(1−{e_{j−1} r})
///   − Σ_j Σ_b {w_j({e_j r} − b/n_j)}·1[{e_j r} ≥ b/n_j]
/// ```
///
/// The rational expression must reduce to an integer; if it does not, an
/// internal consistency error is returned rather than rounding (that would
/// silently mask a transcription bug).
pub fn count_leq_closed(inv: &CurveInvariants, r: &Rational) -> Result<BigInt, Error> {
    check_unit_range(r)?;
    let g = inv.g;
    let parts = EvalParts::build(inv, r);
    let (p, q, nn) = (&parts.p, &parts.q, &parts.nprod);
    let ngwg = inv.n_j(g) * &inv.w[g];

    // Every term times the common denominator D = 2q²N.
    let mut s = (&inv.mu - &ngwg) * p * q * nn;
    s += ngwg * p * p * nn;
    for j in 1..=g {
        s += (inv.n_j(j) - BigInt::one()) * &parts.f[j] * q * nn;
    }
    s += &parts.f[0] * (q - &parts.f[0]) * nn;
    for j in 1..=g {
        s += inv.l_j(j) * &parts.f[j - 1] * (q - &parts.f[j - 1]) * (nn / inv.n_j(j));
    }
    s -= BigInt::from(2) * q * &parts.indicator;

    let d = BigInt::from(2) * q * q * nn;
    if !(&s % &d).is_zero() {
        return Err(Error::Internal(format!(
            "closed counting formula evaluated to the non-integer {} at r = {r}",
            rat(s, d)
        )));
    }
    Ok(s / d)
}

/// The cumulative difference function `φ_f(r)` for `r ∈ [0, 1)`, by closed
/// formula:
///
/// ```text
/// (1/2μ)[ (2e_0 − 1 + Σ l_j e_j)·r(1−r) − Σ (n_j−1){e_j r}
///         − {e_0 r}(1−{e_0 r}) − Σ (l_j/n_j){e_{j−1} r}(1−{e_{j−1} r})
///         + Σ_j Σ_b 2{w_j({e_j r} − b/n_j)}·1[{e_j r} ≥ b/n_j] ]
/// ```
pub fn phi_closed(inv: &CurveInvariants, r: &Rational) -> Result<Rational, Error> {
    check_unit_range(r)?;
    let g = inv.g;
    let parts = EvalParts::build(inv, r);
    let (p, q, nn) = (&parts.p, &parts.q, &parts.nprod);

    // The bracket times q²N; dividing by 2μq²N at the end restores φ.
    let lead = BigInt::from(2) * &inv.e[0] - BigInt::one() + inv.sum_l_e();
    let mut s = lead * p * (q - p) * nn;
    for j in 1..=g {
        s -= (inv.n_j(j) - BigInt::one()) * &parts.f[j] * q * nn;
    }
    s -= &parts.f[0] * (q - &parts.f[0]) * nn;
    for j in 1..=g {
        s -= inv.l_j(j) * &parts.f[j - 1] * (q - &parts.f[j - 1]) * (nn / inv.n_j(j));
    }
    s += BigInt::from(2) * q * &parts.indicator;

    Ok(rat(s, BigInt::from(2) * &inv.mu * q * q * nn))
}

/// `φ_f(r)` straight from its definition `r²/2 − #{α_i ≤ r}/μ`, with the
/// count supplied by [`count_leq_closed`]. Equals [`phi_closed`] exactly;
/// the test suite validates the two routes against each other and against
/// the enumeration oracle.
pub fn phi_from_def(inv: &CurveInvariants, r: &Rational) -> Result<Rational, Error> {
    let count = count_leq_closed(inv, r)?;
    Ok(r * r * rat(1, 2) - rat(count, inv.mu.clone()))
}

/// The triangle density `N_2`: `s` on `[0,1)`, `2 − s` on `[1,2)`, `0`
/// elsewhere.
pub fn n2(s: &Rational) -> Rational {
    let zero = Rational::zero();
    let one = Rational::one();
    let two = rat_int(2);
    if *s >= zero && *s < one {
        s.clone()
    } else if *s >= one && *s < two {
        &two - s
    } else {
        zero
    }
}

/// Evaluate φ and the count on every grid point, preserving order. Errors
/// name the index of the first out-of-range point.
pub fn sample_phi(inv: &CurveInvariants, grid: &[Rational]) -> Result<Vec<PhiSample>, Error> {
    let mut out = Vec::with_capacity(grid.len());
    for (index, r) in grid.iter().enumerate() {
        check_unit_range(r).map_err(|_| Error::GridPointOutOfRange {
            index,
            r: r.to_string(),
        })?;
        let count = count_leq_closed(inv, r)?;
        let phi = phi_closed(inv, r)?;
        // The defining identity must hold between the two closed routes.
        let from_def = r * r * rat(1, 2) - rat(count.clone(), inv.mu.clone());
        if phi != from_def {
            return Err(Error::Internal(format!(
                "φ closed form ({phi}) disagrees with r²/2 − count/μ ({from_def}) at r = {r}"
            )));
        }
        out.push(PhiSample {
            r: r.clone(),
            phi,
            count,
        });
    }
    Ok(out)
}

/// Default plotting grid: every spectral value, every midpoint of
/// consecutive spectral values, and the uniform grid `{t/512 : 0 ≤ t < 512}`,
/// deduplicated and sorted. Captures every jump exactly and fills in enough
/// points for a smooth plot.
pub fn default_plot_grid(spec: &Spectrum) -> Vec<Rational> {
    let mut grid = BTreeSet::new();
    let values = spec.values_lt1();
    for (v, _) in values {
        grid.insert(v.clone());
    }
    for pair in values.windows(2) {
        grid.insert((&pair[0].0 + &pair[1].0) * rat(1, 2));
    }
    for t in 0..512 {
        grid.insert(rat(t, 512));
    }
    grid.into_iter().collect()
}
