//! Exact arithmetic kernel: unbounded integers, normalized rationals,
//! floor/fractional-part helpers, and certified rational enclosures of
//! square roots.
//!
//! Everything here is exact; no floating point is used anywhere in the
//! library. Decimal rendering is a presentation concern and lives in the
//! CLI.

use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub use num_bigint::BigInt;
/// Exact fraction of unbounded integers. Always stored normalized:
/// positive denominator, gcd(|num|, den) = 1, so equality is structural.
pub use num_rational::BigRational as Rational;

/// Shorthand for a rational from an integer pair (normalizes on build).
pub fn rat<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Shorthand for an integral rational.
pub fn rat_int<N: Into<BigInt>>(n: N) -> Rational {
    Rational::from(n.into())
}

/// Fractional part `{x} = x - ⌊x⌋`, always in `[0, 1)`.
///
/// Note this is *not* truncation: `fract(-5/4) = 3/4`.
pub fn fract(x: &Rational) -> Rational {
    x - x.floor()
}

/// `⌊x⌋` as an integer.
pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Largest integer `s` with `s² ≤ n`. Errors on negative input.
pub fn isqrt_floor(n: &BigInt) -> Result<BigInt, Error> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    Ok(n.sqrt())
}

/// Parse `"p/q"` or `"p"` into an exact rational.
///
/// Unlike the `FromStr` impl of the underlying ratio type this rejects a
/// zero denominator with a proper error instead of panicking, so it is safe
/// on untrusted input. Round-trips with `Display` ("p/q" or "n").
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let err = |msg: &str| Error::ParseRational {
        input: s.to_string(),
        msg: msg.to_string(),
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty string"));
    }
    let (num_str, den_str) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| err("numerator is not an integer"))?;
    let den: BigInt = match den_str {
        Some(d) => {
            if d.contains('/') {
                return Err(err("more than one '/'"));
            }
            d.parse().map_err(|_| err("denominator is not an integer"))?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("denominator is zero"));
    }
    Ok(Rational::new(num, den))
}

/// A pair of rational bounds `lo ≤ hi` bracketing a possibly irrational
/// quantity. Used to carry certified enclosures of square roots and of
/// interval endpoints built from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalEnclosure {
    lo: Rational,
    hi: Rational,
}

impl IntervalEnclosure {
    /// Build an enclosure; panics if `lo > hi` (programming error).
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order: {lo} > {hi}");
        Self { lo, hi }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Exact point, i.e. `lo = hi`.
    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    /// Closed containment `lo ≤ x ≤ hi`.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Strict containment `lo < x < hi`.
    pub fn contains_interior(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

impl std::fmt::Display for IntervalEnclosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Certified rational enclosure of `√x`.
///
/// Guarantees `lo² ≤ x ≤ hi²` and `hi − lo ≤ 2^(−precision_bits)`, checked
/// by exact arithmetic; when `x` is the square of a rational the enclosure
/// degenerates to that exact point.
///
/// Method: scaled integer square root. With `x = p/q` normalized and
/// `S = 2^precision_bits`, let `s = ⌊√(p·q·S²)⌋`; then `s/(qS) ≤ √x ≤
/// (s+1)/(qS)` and the width is `1/(qS) ≤ 2^(−precision_bits)`.
pub fn sqrt_enclosure(x: &Rational, precision_bits: u32) -> Result<IntervalEnclosure, Error> {
    if precision_bits == 0 {
        return Err(Error::InvalidPrecision);
    }
    if x.is_negative() {
        return Err(Error::NegativeSqrt);
    }
    let p = x.numer();
    let q = x.denom();
    let scale = BigInt::one() << precision_bits;
    let n = p * q * &scale * &scale;
    let s = isqrt_floor(&n)?;
    let qs = q * &scale;
    if &s * &s == n {
        // √x is exactly s/(qS): degenerate enclosure.
        let v = Rational::new(s, qs);
        Ok(IntervalEnclosure::new(v.clone(), v))
    } else {
        let lo = Rational::new(s.clone(), qs.clone());
        let hi = Rational::new(s + BigInt::one(), qs);
        Ok(IntervalEnclosure::new(lo, hi))
    }
}
