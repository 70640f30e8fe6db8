//! Serialization helpers shared by all commands.
//!
//! Exact values are primary: rationals are always emitted as exact `p/q`
//! text (bare integer when the denominator is 1), and decimal columns are
//! annotations rounded from the exact value. Integers stay JSON numbers
//! only while they are exactly representable in a double.

use num_traits::{Pow, Signed, ToPrimitive, Zero};
use serde_json::Value;
use spectra_core::exact::{BigInt, Rational};

/// Exact rational as text: `5/6`, `-47/144`, or `3` when integral.
pub fn rat_str(x: &Rational) -> String {
    x.to_string()
}

/// An integer as a JSON value: a number when `|x| < 2^53`, else a string
/// so no consumer ever sees a silently rounded value.
pub fn int_value(x: &BigInt) -> Value {
    const EXACT_DOUBLE: i64 = 1 << 53;
    match x.to_i64() {
        Some(v) if -EXACT_DOUBLE < v && v < EXACT_DOUBLE => Value::from(v),
        _ => Value::from(x.to_string()),
    }
}

/// `x` rounded to `digits` decimal places, half away from zero, with `.`
/// as the separator. `digits = 0` yields a bare integer. A value that
/// rounds to zero prints without a minus sign.
pub fn decimal_str(x: &Rational, digits: u32) -> String {
    let p = x.numer().abs();
    let q = x.denom();
    let scaled = p * BigInt::from(10u32).pow(digits);
    // ⌊(2·scaled + q) / (2q)⌋ = round-half-up of scaled/q (all nonnegative)
    let n = (BigInt::from(2) * scaled + q) / (BigInt::from(2) * q);
    let mut s = n.to_string();
    if digits > 0 {
        let d = digits as usize;
        if s.len() <= d {
            s.insert_str(0, &"0".repeat(d + 1 - s.len()));
        }
        s.insert(s.len() - d, '.');
    }
    if x.is_negative() && !n.is_zero() {
        s.insert(0, '-');
    }
    s
}

/// Sign marker for CSV/JSON: `+`, `-`, or `0`.
pub fn sign_str(x: &Rational) -> &'static str {
    if x.is_positive() {
        "+"
    } else if x.is_negative() {
        "-"
    } else {
        "0"
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use spectra_core::exact::rat;

    #[test]
    fn rational_text() {
        assert_eq!(rat_str(&rat(5, 6)), "5/6");
        assert_eq!(rat_str(&rat(3, 1)), "3");
        assert_eq!(rat_str(&rat(-11, 72)), "-11/72");
        assert_eq!(rat_str(&rat(4, 6)), "2/3");
    }

    #[test]
    fn int_values_switch_to_strings_past_double_range() {
        assert_eq!(int_value(&BigInt::from(68)), Value::from(68));
        assert_eq!(int_value(&BigInt::from(-3)), Value::from(-3));
        let exact_max = (BigInt::from(1) << 53) - 1;
        assert_eq!(int_value(&exact_max), Value::from((1i64 << 53) - 1));
        let too_big: BigInt = BigInt::from(1) << 53;
        assert_eq!(too_big.to_string(), "9007199254740992");
        assert_eq!(int_value(&too_big), Value::from("9007199254740992"));
        assert_eq!(
            int_value(&(-&too_big)),
            Value::from("-9007199254740992")
        );
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal_str(&rat(1, 8), 3), "0.125");
        assert_eq!(decimal_str(&rat(1, 8), 2), "0.13");
        assert_eq!(decimal_str(&rat(2, 3), 6), "0.666667");
        assert_eq!(decimal_str(&rat(1, 2), 12), "0.500000000000");
        assert_eq!(decimal_str(&rat(89, 90), 4), "0.9889");
        assert_eq!(decimal_str(&rat(5, 1), 2), "5.00");
        assert_eq!(decimal_str(&rat(0, 1), 3), "0.000");
    }

    #[test]
    fn decimal_rounds_half_away_from_zero() {
        assert_eq!(decimal_str(&rat(3, 2), 0), "2");
        assert_eq!(decimal_str(&rat(-3, 2), 0), "-2");
        assert_eq!(decimal_str(&rat(1, 20), 1), "0.1");
        assert_eq!(decimal_str(&rat(-1, 20), 1), "-0.1");
        assert_eq!(decimal_str(&rat(1, 40), 1), "0.0");
    }

    #[test]
    fn negative_zero_never_printed() {
        assert_eq!(decimal_str(&rat(-1, 40), 1), "0.0");
        assert_eq!(decimal_str(&rat(-1, 1_000_000), 3), "0.000");
    }

    #[test]
    fn signs() {
        assert_eq!(sign_str(&rat(1, 8)), "+");
        assert_eq!(sign_str(&rat(-11, 72)), "-");
        assert_eq!(sign_str(&rat(0, 1)), "0");
    }
}
