//! Brute-force spectrum oracle.
//!
//! Enumerates the Hodge spectral exponents in `(0, 1)` directly from their
//! triple-indexed description
//!
//! ```text
//! c/e_j + b/(e_j n_j) + a/(e_j w_j),   1 ≤ j ≤ g,  0 ≤ c < e_j,
//!                                      1 ≤ b < n_j, 1 ≤ a ≤ ⌊w_j(1 − b/n_j)⌋,
//! ```
//!
//! which yields exactly `μ/2` values counted with multiplicity. This is the
//! independent route against which every closed formula in the library is
//! tested; it never shares code with those formulas.
//!
//! The enumeration is a desk-scale tool (μ up to a few million is
//! comfortable). Block `j` values share the denominator `e_j·n_j·w_j`, so
//! when that fits in a `u64` the enumeration runs on machine words and only
//! the final distinct values are lifted to exact rationals; otherwise an
//! unbounded (and correspondingly slow) fallback does the same thing with
//! big integers.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::curve::CurveInvariants;
use crate::error::Error;
use crate::exact::{BigInt, Rational};

/// Sorted multiset of the spectral exponents in `(0, 1)`.
///
/// Invariants (checked by the test suite against the closed formulas):
/// total multiplicity `μ/2`, minimum = log-canonical threshold, maximum =
/// `1 − 1/(n_g w_g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    /// Distinct values ascending, each with its multiplicity.
    values_lt1: Vec<(Rational, u64)>,
    /// Running totals of the multiplicities (same length as `values_lt1`).
    cumulative: Vec<u64>,
    /// Milnor number of the curve the spectrum belongs to.
    mu: BigInt,
}

impl Spectrum {
    /// Distinct exponents in `(0,1)` ascending with multiplicities.
    pub fn values_lt1(&self) -> &[(Rational, u64)] {
        &self.values_lt1
    }

    pub fn mu(&self) -> &BigInt {
        &self.mu
    }

    /// Number of exponents in `(0,1)` counted with multiplicity (= μ/2).
    pub fn total_multiplicity(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    /// Smallest exponent (the spectrum of a valid curve is never empty).
    pub fn min_value(&self) -> &Rational {
        &self.values_lt1.first().expect("spectrum is never empty").0
    }

    /// Largest exponent below 1.
    pub fn max_value(&self) -> &Rational {
        &self.values_lt1.last().expect("spectrum is never empty").0
    }
}

/// Enumerate the spectral exponents in `(0, 1)` with multiplicities.
///
/// Distinct index triples producing the same rational accumulate
/// multiplicity; values are returned sorted ascending.
pub fn enumerate_spectrum_lt1(inv: &CurveInvariants) -> Spectrum {
    let values_lt1 = enumerate_u64(inv).unwrap_or_else(|| enumerate_big(inv));
    let mut cumulative = Vec::with_capacity(values_lt1.len());
    let mut acc = 0u64;
    for (_, m) in &values_lt1 {
        acc += m;
        cumulative.push(acc);
    }
    Spectrum {
        values_lt1,
        cumulative,
        mu: inv.mu.clone(),
    }
}

/// Machine-word enumeration; `None` if any block denominator `e_j n_j w_j`
/// overflows a `u64`.
fn enumerate_u64(inv: &CurveInvariants) -> Option<Vec<(Rational, u64)>> {
    let g = inv.g;
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for j in 1..=g {
        let e = inv.e[j].to_u64()?;
        let n = inv.n_j(j).to_u64()?;
        let w = inv.w[j].to_u64()?;
        let nw = n.checked_mul(w)?;
        let d = e.checked_mul(nw)?;
        // Every value in this block is num/d with num < d: the exponents lie
        // strictly below 1, so none of the sums below can overflow.
        for c in 0..e {
            let base_c = c * nw;
            for b in 1..n {
                let a_max = (w * (n - b)) / n;
                let base_cb = base_c + b * w;
                for a in 1..=a_max {
                    let num = base_cb + a * n;
                    let q = num_integer::gcd(num, d);
                    raw.push((num / q, d / q));
                }
            }
        }
    }
    // Reduced fractions: sort by value via u128 cross-multiplication, then
    // merge equal (num, den) pairs into multiplicities.
    raw.sort_unstable_by(|x, y| {
        (x.0 as u128 * y.1 as u128).cmp(&(y.0 as u128 * x.1 as u128))
    });
    let mut out: Vec<(Rational, u64)> = Vec::new();
    let mut it = raw.into_iter();
    if let Some(mut cur) = it.next() {
        let mut mult = 1u64;
        for v in it {
            if v == cur {
                mult += 1;
            } else {
                out.push((Rational::new_raw(cur.0.into(), cur.1.into()), mult));
                cur = v;
                mult = 1;
            }
        }
        out.push((Rational::new_raw(cur.0.into(), cur.1.into()), mult));
    }
    Some(out)
}

/// Unbounded fallback: same enumeration over big integers.
fn enumerate_big(inv: &CurveInvariants) -> Vec<(Rational, u64)> {
    let g = inv.g;
    let one = BigInt::one();
    let mut raw: Vec<Rational> = Vec::new();
    for j in 1..=g {
        let e = &inv.e[j];
        let n = inv.n_j(j);
        let w = &inv.w[j];
        let d = e * n * w;
        let nw = n * w;
        let mut c = BigInt::zero();
        while &c < e {
            let base_c = &c * &nw;
            let mut b = BigInt::one();
            while &b < n {
                let a_max = (w * (n - &b)) / n;
                let base_cb = &base_c + &b * w;
                let mut a = BigInt::one();
                while a <= a_max {
                    raw.push(Rational::new(&base_cb + &a * n, d.clone()));
                    a += &one;
                }
                b += &one;
            }
            c += &one;
        }
    }
    raw.sort_unstable();
    let mut out: Vec<(Rational, u64)> = Vec::new();
    for v in raw {
        match out.last_mut() {
            Some((u, m)) if *u == v => *m += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// The full spectrum on `(0, 2)`: the values below 1 together with their
/// mirror images under `α ↦ 2 − α`. Total multiplicity `μ`; no exponent
/// equals 1, so the result is symmetric about 1 with a gap there.
pub fn full_spectrum(inv: &CurveInvariants) -> Vec<(Rational, u64)> {
    let spec = enumerate_spectrum_lt1(inv);
    let two = Rational::from(BigInt::from(2));
    let mut out = spec.values_lt1.clone();
    out.extend(
        spec.values_lt1
            .iter()
            .rev()
            .map(|(v, m)| (&two - v, *m)),
    );
    out
}

/// Number of spectral exponents `≤ r` (inclusive), counted with
/// multiplicity, by direct inspection of the enumerated spectrum.
pub fn oracle_count(spec: &Spectrum, r: &Rational) -> Result<u64, Error> {
    if r.is_negative() || *r >= Rational::one() {
        return Err(Error::ROutOfRange { r: r.to_string() });
    }
    let idx = spec.values_lt1.partition_point(|(v, _)| v <= r);
    Ok(if idx == 0 { 0 } else { spec.cumulative[idx - 1] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{derive_invariants, PuiseuxPairs};
    use crate::exact::rat;

    fn spectrum_of(pairs: &[(i64, i64)]) -> (CurveInvariants, Spectrum) {
        let inv = derive_invariants(&PuiseuxPairs::from_ints(pairs).unwrap());
        let spec = enumerate_spectrum_lt1(&inv);
        (inv, spec)
    }

    #[test]
    fn cusp_spectrum() {
        let (_, spec) = spectrum_of(&[(2, 1)]);
        assert_eq!(spec.values_lt1(), &[(rat(5, 6), 1)]);
        assert_eq!(spec.total_multiplicity(), 1);
    }

    #[test]
    fn single_pair_2_3() {
        let (_, spec) = spectrum_of(&[(2, 3)]);
        assert_eq!(spec.values_lt1(), &[(rat(7, 10), 1), (rat(9, 10), 1)]);
    }

    #[test]
    fn worked_curve_endpoints() {
        let (inv, spec) = spectrum_of(&[(3, 4), (2, 3)]);
        assert_eq!(spec.total_multiplicity(), 34);
        assert_eq!(spec.min_value(), &rat(5, 21));
        assert_eq!(spec.max_value(), &rat(89, 90));
        assert_eq!(spec.min_value(), &inv.lct);
        assert_eq!(spec.max_value(), &inv.max_exp_lt1);
    }

    #[test]
    fn full_spectrum_mirrors() {
        let inv = derive_invariants(&PuiseuxPairs::from_ints(&[(2, 1)]).unwrap());
        assert_eq!(full_spectrum(&inv), vec![(rat(5, 6), 1), (rat(7, 6), 1)]);

        let inv = derive_invariants(&PuiseuxPairs::from_ints(&[(2, 3)]).unwrap());
        assert_eq!(
            full_spectrum(&inv),
            vec![
                (rat(7, 10), 1),
                (rat(9, 10), 1),
                (rat(11, 10), 1),
                (rat(13, 10), 1)
            ]
        );
    }

    #[test]
    fn full_spectrum_symmetric_with_total_mu() {
        let (inv, _) = spectrum_of(&[(3, 4), (2, 3)]);
        let full = full_spectrum(&inv);
        let total: u64 = full.iter().map(|(_, m)| m).sum();
        assert_eq!(BigInt::from(total), inv.mu);
        let two = Rational::from(BigInt::from(2));
        for (v, m) in &full {
            let mirrored = &two - v;
            let found = full.iter().find(|(u, _)| *u == mirrored).unwrap();
            assert_eq!(found.1, *m);
            assert!(*v != Rational::from(BigInt::one()));
        }
    }

    #[test]
    fn oracle_count_examples() {
        let (_, spec) = spectrum_of(&[(2, 1)]);
        assert_eq!(oracle_count(&spec, &rat(5, 6)).unwrap(), 1);
        assert_eq!(oracle_count(&spec, &rat(1, 2)).unwrap(), 0);
        assert!(oracle_count(&spec, &rat(3, 2)).is_err());
        assert!(oracle_count(&spec, &rat(-1, 2)).is_err());
        assert_eq!(oracle_count(&spec, &Rational::zero()).unwrap(), 0);
    }

    #[test]
    fn oracle_count_is_monotone_and_saturates() {
        let (_, spec) = spectrum_of(&[(3, 4), (2, 3)]);
        let mut prev = 0;
        for t in 0..100 {
            let c = oracle_count(&spec, &rat(t, 100)).unwrap();
            assert!(c >= prev);
            prev = c;
        }
        assert_eq!(oracle_count(&spec, spec.max_value()).unwrap(), 34);
    }

    #[test]
    fn big_fallback_agrees_with_fast_path() {
        for pairs in [&[(2, 1)][..], &[(2, 3)][..], &[(3, 4), (2, 3)][..]] {
            let inv = derive_invariants(&PuiseuxPairs::from_ints(pairs).unwrap());
            assert_eq!(enumerate_u64(&inv).unwrap(), enumerate_big(&inv));
        }
    }
}
