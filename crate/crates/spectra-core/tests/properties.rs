//! Randomized invariant checks across the whole library: arithmetic
//! contracts, invariant identities and round trips, spectrum/counting
//! agreement, and certified enclosure soundness.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use spectra_core::curve::{
    derive_invariants, pairs_from_characteristic, pairs_from_semigroup, PuiseuxPairs,
};
use spectra_core::distribution::{count_leq_closed, phi_closed, phi_from_def};
use spectra_core::dominating::{dominating_intervals, is_dominating, p1_bound, p2_bound};
use spectra_core::exact::{
    fract, parse_rational, rat, rat_int, sqrt_enclosure, BigInt, Rational,
};
use spectra_core::spectrum::{enumerate_spectrum_lt1, oracle_count};

fn any_rational() -> impl Strategy<Value = Rational> {
    (any::<i32>(), 1..=10_000i64).prop_map(|(p, q)| rat(i64::from(p), q))
}

fn unit_rational(max_den: u64) -> impl Strategy<Value = Rational> {
    (1..=max_den).prop_flat_map(|q| (0..q).prop_map(move |p| rat(p, q)))
}

/// All coprime pairs `(n, l)` with `2 ≤ n ≤ max_n`, `1 ≤ l ≤ max_l`.
fn allowed(max_n: i64, max_l: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 2..=max_n {
        for l in 1..=max_l {
            if num_integer::gcd(n, l) == 1 {
                v.push((n, l));
            }
        }
    }
    v
}

fn pairs_strategy(max_g: usize, max_n: i64, max_l: i64) -> impl Strategy<Value = PuiseuxPairs> {
    prop::collection::vec(prop::sample::select(allowed(max_n, max_l)), 1..=max_g)
        .prop_map(|ps| PuiseuxPairs::from_ints(&ps).unwrap())
}

proptest! {
    #[test]
    fn fract_is_in_unit_interval(x in any_rational()) {
        let f = fract(&x);
        prop_assert!(!f.is_negative());
        prop_assert!(f < Rational::one());
        prop_assert!((x - f).is_integer());
    }

    #[test]
    fn rational_text_round_trips(x in any_rational()) {
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn sqrt_enclosure_contract(p in 0..=1_000_000i64, q in 1..=1_000i64, bits in 1u32..=48) {
        let x = rat(p, q);
        let enc = sqrt_enclosure(&x, bits).unwrap();
        prop_assert!(!enc.lo().is_negative());
        prop_assert!(enc.lo() * enc.lo() <= x);
        prop_assert!(x <= enc.hi() * enc.hi());
        prop_assert!(enc.width() <= rat(1, BigInt::one() << bits));
    }

    #[test]
    fn sqrt_enclosure_detects_perfect_squares(s in 0..=1_000i64, q in 1..=40i64, bits in 1u32..=32) {
        let root = rat(s, q);
        let enc = sqrt_enclosure(&(&root * &root), bits).unwrap();
        prop_assert!(enc.is_degenerate());
        prop_assert_eq!(enc.lo().clone(), root);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(220))]

    #[test]
    fn invariants_and_round_trips(pairs in pairs_strategy(4, 5, 9)) {
        // derive_invariants itself asserts the recurrence/closed-form
        // identities internally on every call.
        let inv = derive_invariants(&pairs);
        prop_assert!(inv.mu.is_even());
        prop_assert!(inv.mu.is_positive());

        let back = pairs_from_characteristic(&inv.char_exponents).unwrap();
        prop_assert_eq!(back.pairs(), pairs.pairs());
        let back = pairs_from_semigroup(&inv.beta_bar).unwrap();
        prop_assert_eq!(back.pairs(), pairs.pairs());

        prop_assert!(inv.lct.is_positive());
        prop_assert!(inv.lct <= inv.max_exp_lt1);
        prop_assert!(inv.max_exp_lt1 < Rational::one());
    }

    #[test]
    fn quadratic_bound_shape(pairs in pairs_strategy(4, 5, 9)) {
        let inv = derive_invariants(&pairs);
        for p in [p1_bound(&inv), p2_bound(&inv)] {
            prop_assert!(p.a2.is_negative());
            prop_assert!(p.eval(&Rational::zero()).is_negative());
            prop_assert!(p.eval(&rat(1, 2)).is_positive());
            prop_assert!(p.eval(&Rational::one()).is_negative());

            // discriminant two ways: a2 and a0 are both negative, so
            // a1² − 4·a2·a0 = a1² − 4·|a2|·|a0|
            let d = p.discriminant();
            prop_assert!(d.is_positive());
            let alt = &p.a1 * &p.a1 - rat_int(4) * p.a2.abs() * p.a0.abs();
            prop_assert_eq!(d, alt);
        }

        // value of the second bound at 1/2: (1/4)·Σ l_j (e_j − 1/n_j)
        let mut s = Rational::zero();
        for j in 1..=inv.g {
            s += rat_int(inv.l_j(j).clone())
                * (rat_int(inv.e[j].clone()) - rat(1, inv.n_j(j).clone()));
        }
        prop_assert_eq!(p2_bound(&inv).eval(&rat(1, 2)), s / rat_int(4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectrum_matches_closed_forms(
        pairs in pairs_strategy(2, 4, 5),
        r in unit_rational(200),
        ra in unit_rational(150),
        rb in unit_rational(150),
    ) {
        let inv = derive_invariants(&pairs);
        let spec = enumerate_spectrum_lt1(&inv);

        let half_mu = (&inv.mu / BigInt::from(2)).to_u64().unwrap();
        prop_assert_eq!(spec.total_multiplicity(), half_mu);
        prop_assert_eq!(spec.min_value(), &inv.lct);
        prop_assert_eq!(spec.max_value(), &inv.max_exp_lt1);

        // every value lies in (0,1) with denominator dividing lcm_j(e_{j−1} w_j)
        let mut lcm = BigInt::one();
        for j in 1..=inv.g {
            lcm = lcm.lcm(&(&inv.e[j - 1] * &inv.w[j]));
        }
        for (v, m) in spec.values_lt1() {
            prop_assert!(v.is_positive());
            prop_assert!(v < &Rational::one());
            prop_assert!(*m >= 1);
            prop_assert!((v * rat_int(lcm.clone())).is_integer());
        }

        // closed-form count == enumeration, φ two ways, monotone, saturating
        let closed = count_leq_closed(&inv, &r).unwrap();
        prop_assert_eq!(closed, BigInt::from(oracle_count(&spec, &r).unwrap()));
        prop_assert_eq!(phi_closed(&inv, &r).unwrap(), phi_from_def(&inv, &r).unwrap());
        let (lo, hi) = if ra <= rb { (&ra, &rb) } else { (&rb, &ra) };
        prop_assert!(oracle_count(&spec, lo).unwrap() <= oracle_count(&spec, hi).unwrap());
        prop_assert_eq!(oracle_count(&spec, spec.max_value()).unwrap(), half_mu);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bounds_and_enclosures_are_sound(
        pairs in pairs_strategy(3, 5, 9),
        r in unit_rational(128),
        bits in 4u32..=40,
    ) {
        let inv = derive_invariants(&pairs);

        // both parabolas sit below 2μ·φ on the whole domain
        let two_mu_phi = rat_int(BigInt::from(2) * &inv.mu) * phi_closed(&inv, &r).unwrap();
        let p1 = p1_bound(&inv);
        let p2 = p2_bound(&inv);
        prop_assert!(two_mu_phi >= p1.eval(&r));
        prop_assert!(two_mu_phi >= p2.eval(&r));

        let report = dominating_intervals(&inv, bits).unwrap();
        let cases = [
            (&p1, &report.interval1, &report.d1),
            (&p2, &report.interval2, &report.d2),
        ];
        for (p, pair, d) in cases {
            prop_assert!(pair.outer.lo() <= pair.inner.lo());
            prop_assert!(pair.inner.hi() <= pair.outer.hi());
            prop_assert!(pair.inner.contains_interior(&rat(1, 2)));

            // endpoint containment, exactly: x is weakly inside the open
            // root interval iff (2A·x − B)² ≤ D
            let a = -p.a2.clone();
            let endpoint_cases = [
                (pair.inner.lo(), true),
                (pair.inner.hi(), true),
                (pair.outer.lo(), false),
                (pair.outer.hi(), false),
            ];
            for (x, inside) in endpoint_cases {
                let t = rat_int(2) * &a * x - &p.a1;
                let t2 = &t * &t;
                if inside {
                    prop_assert!(t2 <= *d);
                } else {
                    prop_assert!(t2 >= *d);
                }
            }

            // strictly interior rationals of the inner enclosure really are
            // dominating values
            let width = pair.inner.hi() - pair.inner.lo();
            for step in 1..=16 {
                let x = pair.inner.lo() + &width * rat(step, 17);
                prop_assert!(is_dominating(&inv, &x).unwrap(), "not dominating at {}", x);
            }
        }
    }
}
