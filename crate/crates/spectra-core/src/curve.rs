//! Curve descriptions and derived numerical invariants.
//!
//! The canonical description of an irreducible plane curve singularity here
//! is its list of Puiseux pairs `(n_1,l_1),…,(n_g,l_g)` with `n_j ≥ 2`,
//! `l_j ≥ 1` and `gcd(n_j,l_j) = 1`. Two equivalent descriptions — the
//! characteristic exponents `β_i/m` and the minimal semigroup generators
//! `β̄_0,…,β̄_g` — are supported as conversions that round-trip exactly.
//!
//! Convention note: some references encode the pairs as `(n_j, k_j)` with
//! `k_j = n_j + l_j` (so the first characteristic exponent is `k_1/n_1`).
//! This library fixes the `(n_j, l_j)` convention; translate on input if
//! your source uses `k_j`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::exact::{rat_int, BigInt, Rational};

/// Validated, ordered list of Puiseux pairs. `g ≥ 1` always holds: a smooth
/// point has no pairs and is rejected, since every formula in this library
/// presupposes an actual singularity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuiseuxPairs {
    pairs: Vec<(BigInt, BigInt)>,
}

impl PuiseuxPairs {
    /// Validate and wrap a raw list. See [`validate_pairs`].
    pub fn new(raw: Vec<(BigInt, BigInt)>) -> Result<Self, Error> {
        validate_pairs(&raw)
    }

    /// Convenience constructor from machine integers (tests, CLI, families).
    pub fn from_ints(raw: &[(i64, i64)]) -> Result<Self, Error> {
        validate_pairs(
            &raw.iter()
                .map(|&(n, l)| (BigInt::from(n), BigInt::from(l)))
                .collect::<Vec<_>>(),
        )
    }

    /// Number of pairs `g`.
    pub fn g(&self) -> usize {
        self.pairs.len()
    }

    /// The pairs in order, `j = 1..=g` at index `j-1`.
    pub fn pairs(&self) -> &[(BigInt, BigInt)] {
        &self.pairs
    }
}

/// Check the defining constraints and return the validated value, or a
/// structured error naming the first violated constraint (1-based index,
/// checked in order: n ≥ 2, l ≥ 1, coprimality).
pub fn validate_pairs(raw: &[(BigInt, BigInt)]) -> Result<PuiseuxPairs, Error> {
    if raw.is_empty() {
        return Err(Error::EmptyPairs);
    }
    let two = BigInt::from(2);
    for (idx, (n, l)) in raw.iter().enumerate() {
        let index = idx + 1;
        if n < &two {
            return Err(Error::NTooSmall {
                index,
                value: n.to_string(),
            });
        }
        if !l.is_positive() {
            return Err(Error::LNonPositive {
                index,
                value: l.to_string(),
            });
        }
        let gcd = n.gcd(l);
        if !gcd.is_one() {
            return Err(Error::NonCoprime {
                index,
                gcd: gcd.to_string(),
            });
        }
    }
    Ok(PuiseuxPairs {
        pairs: raw.to_vec(),
    })
}

/// Everything derived from the pairs. All integer sequences use the usual
/// subscripts: `e` and `w` and `mu_seq` run over `0..=g` (index = subscript),
/// `beta` runs over `1..=g` (stored at index `j-1`), `beta_bar` over `0..=g`.
///
/// The constructor cross-checks each recurrence against an independent
/// closed form (Milnor number, `w_j`, `n_g·μ_{g−1}`, `β̄_j = w_j e_j`) with
/// denominators cleared so every check is integer-exact; a violation is a
/// bug in this library, not bad input, and panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveInvariants {
    pub g: usize,
    /// `n_1..n_g` at indices `0..g-1`.
    pub n: Vec<BigInt>,
    /// `l_1..l_g` at indices `0..g-1`.
    pub l: Vec<BigInt>,
    /// `e_0..e_g`; `e_g = 1`, `e_{i-1} = n_i e_i`, so `e_0 = n_1···n_g = m`.
    pub e: Vec<BigInt>,
    /// `w_0..w_g`; `w_0 = 1`, `w_j = n_j n_{j-1} w_{j-1} + l_j` (`n_0 = 1`).
    pub w: Vec<BigInt>,
    /// `μ_0..μ_g`; `μ_0 = 0`, `μ_j = (n_j−1)(w_j−1) + n_j μ_{j−1}`.
    pub mu_seq: Vec<BigInt>,
    /// Milnor number `μ = μ_g`; always even.
    pub mu: BigInt,
    /// `β_1..β_g` with `β_i = e_0 + Σ_{k≤i} l_k e_k`.
    pub beta: Vec<BigInt>,
    /// Minimal semigroup generators `β̄_0..β̄_g`; `β̄_j = w_j e_j`.
    pub beta_bar: Vec<BigInt>,
    /// Characteristic exponents `β_i/e_0`, `i = 1..=g`, strictly increasing.
    pub char_exponents: Vec<Rational>,
    /// Smallest spectral exponent: `(1/e_1)(1/n_1 + 1/(n_1+l_1))`.
    pub lct: Rational,
    /// Largest spectral exponent below 1: `1 − 1/(n_g w_g)`.
    pub max_exp_lt1: Rational,
    /// `β_g/μ`, the convergence-criterion ratio for curve families.
    pub beta_g_over_mu: Rational,
}

impl CurveInvariants {
    /// `n_j` for `j` in `1..=g`.
    pub fn n_j(&self, j: usize) -> &BigInt {
        &self.n[j - 1]
    }

    /// `l_j` for `j` in `1..=g`.
    pub fn l_j(&self, j: usize) -> &BigInt {
        &self.l[j - 1]
    }

    /// `β_i` for `i` in `1..=g`.
    pub fn beta_i(&self, i: usize) -> &BigInt {
        &self.beta[i - 1]
    }

    /// `Σ_j l_j e_j`, a combination used throughout the quadratic bounds;
    /// equals `β_g − e_0`.
    pub fn sum_l_e(&self) -> BigInt {
        self.beta_i(self.g) - &self.e[0]
    }
}

/// Compute every derived invariant of a validated list of pairs.
pub fn derive_invariants(p: &PuiseuxPairs) -> CurveInvariants {
    let g = p.g();
    let n: Vec<BigInt> = p.pairs().iter().map(|(n, _)| n.clone()).collect();
    let l: Vec<BigInt> = p.pairs().iter().map(|(_, l)| l.clone()).collect();
    let one = BigInt::one();

    // e_g = 1, e_{i-1} = n_i · e_i.
    let mut e = vec![BigInt::one(); g + 1];
    for i in (0..g).rev() {
        e[i] = &n[i] * &e[i + 1];
    }

    // w_0 = 1, w_j = n_j n_{j-1} w_{j-1} + l_j with n_0 = 1.
    let mut w = vec![BigInt::one(); g + 1];
    for j in 1..=g {
        let n_prev = if j >= 2 { n[j - 2].clone() } else { one.clone() };
        w[j] = &n[j - 1] * n_prev * &w[j - 1] + &l[j - 1];
    }

    // μ_0 = 0, μ_j = (n_j − 1)(w_j − 1) + n_j μ_{j-1}.
    let mut mu_seq = vec![BigInt::zero(); g + 1];
    for j in 1..=g {
        mu_seq[j] = (&n[j - 1] - &one) * (&w[j] - &one) + &n[j - 1] * &mu_seq[j - 1];
    }
    let mu = mu_seq[g].clone();

    // Independent closed form for the Milnor number:
    //   μ = Σ_j l_j e_j (e_{j-1} − 1) + (e_0 − 1)².
    let mut mu_closed = (&e[0] - &one) * (&e[0] - &one);
    for j in 1..=g {
        mu_closed += &l[j - 1] * &e[j] * (&e[j - 1] - &one);
    }
    assert_eq!(
        mu, mu_closed,
        "Milnor number recurrence disagrees with its closed form"
    );
    assert!(
        (&mu % BigInt::from(2)).is_zero(),
        "Milnor number must be even"
    );

    // Closed form for w_j, cleared of denominators using e_k² n_k = e_k e_{k-1}:
    //   w_j e_j e_{j-1} = Σ_{k≤j} l_k e_k e_{k-1} + e_0².
    let mut prefix = &e[0] * &e[0];
    for j in 1..=g {
        prefix += &l[j - 1] * &e[j] * &e[j - 1];
        assert_eq!(
            &w[j] * &e[j] * &e[j - 1],
            prefix,
            "w recurrence disagrees with its closed form at j = {j}"
        );
    }

    // Closed form for n_g μ_{g-1}, cleared of denominators:
    //   n_g² μ_{g-1} = Σ_{k≤g-1} l_k e_k (e_{k-1} − n_g) + e_0² + n_g² − 2 e_0 n_g.
    let ng = &n[g - 1];
    let mut ngmu_closed = &e[0] * &e[0] + ng * ng - BigInt::from(2) * &e[0] * ng;
    for k in 1..g {
        ngmu_closed += &l[k - 1] * &e[k] * (&e[k - 1] - ng);
    }
    assert_eq!(
        ng * ng * &mu_seq[g - 1],
        ngmu_closed,
        "n_g·μ_(g-1) recurrence disagrees with its closed form"
    );

    // β_i = e_0 + Σ_{k≤i} l_k e_k.
    let mut beta = Vec::with_capacity(g);
    let mut acc = e[0].clone();
    for i in 1..=g {
        acc += &l[i - 1] * &e[i];
        beta.push(acc.clone());
    }

    // β̄_0 = e_0, β̄_1 = β_1, β̄_i = n_{i-1} β̄_{i-1} − β_{i-1} + β_i.
    let mut beta_bar = vec![e[0].clone()];
    if g >= 1 {
        beta_bar.push(beta[0].clone());
    }
    for i in 2..=g {
        let bb = &n[i - 2] * &beta_bar[i - 1] - &beta[i - 2] + &beta[i - 1];
        beta_bar.push(bb);
    }
    for j in 0..=g {
        assert_eq!(
            beta_bar[j],
            &w[j] * &e[j],
            "semigroup generator β̄_{j} disagrees with w_{j}·e_{j}"
        );
    }

    let char_exponents: Vec<Rational> = beta
        .iter()
        .map(|b| Rational::new(b.clone(), e[0].clone()))
        .collect();

    let lct = Rational::new(BigInt::one(), e[1].clone())
        * (Rational::new(BigInt::one(), n[0].clone())
            + Rational::new(BigInt::one(), &n[0] + &l[0]));
    let max_exp_lt1 = Rational::one() - Rational::new(BigInt::one(), ng * &w[g]);
    let beta_g_over_mu = Rational::new(beta[g - 1].clone(), mu.clone());

    CurveInvariants {
        g,
        n,
        l,
        e,
        w,
        mu_seq,
        mu,
        beta,
        beta_bar,
        char_exponents,
        lct,
        max_exp_lt1,
        beta_g_over_mu,
    }
}

/// Recover the Puiseux pairs from the characteristic exponents `β_i/m`
/// (strictly increasing rationals > 1).
///
/// Writes the common scale as `m = lcm` of the reduced denominators, then
/// peels the gcd chain `e_i = gcd(e_{i−1}, β_i)`, `n_i = e_{i−1}/e_i`,
/// `l_i = (β_i − β_{i−1})/e_i` (with `β_0 = e_0 = m`). The result is
/// validated and round-tripped; any failure reports `InvalidExponents`.
pub fn pairs_from_characteristic(exponents: &[Rational]) -> Result<PuiseuxPairs, Error> {
    let invalid = |msg: &str| Error::InvalidExponents(msg.to_string());
    if exponents.is_empty() {
        return Err(invalid("the list is empty"));
    }
    let one = Rational::one();
    for (i, x) in exponents.iter().enumerate() {
        if x <= &one {
            return Err(invalid(&format!("exponent {} is not > 1", i + 1)));
        }
        if i > 0 && exponents[i - 1] >= *x {
            return Err(invalid("exponents must be strictly increasing"));
        }
    }

    // m = lcm of the denominators; for genuine characteristic exponents this
    // recovers e_0 exactly.
    let mut m = BigInt::one();
    for x in exponents {
        m = m.lcm(x.denom());
    }
    let betas: Vec<BigInt> = exponents
        .iter()
        .map(|x| (x * rat_int(m.clone())).to_integer())
        .collect();

    let mut pairs = Vec::with_capacity(exponents.len());
    let mut e_prev = m.clone();
    let mut beta_prev = m.clone();
    for b in &betas {
        let e_i = e_prev.gcd(b);
        let n_i = &e_prev / &e_i;
        let diff = b - &beta_prev;
        let (l_i, rem) = diff.div_rem(&e_i);
        if !rem.is_zero() {
            return Err(invalid("exponent steps are not compatible with the gcd chain"));
        }
        pairs.push((n_i, l_i));
        e_prev = e_i;
        beta_prev = b.clone();
    }
    if !e_prev.is_one() {
        return Err(invalid("the gcd chain does not terminate at 1"));
    }

    let pairs = validate_pairs(&pairs)
        .map_err(|e| invalid(&format!("recovered pairs fail validation: {e}")))?;
    let inv = derive_invariants(&pairs);
    if inv.char_exponents != exponents {
        return Err(invalid("round trip does not reproduce the input"));
    }
    Ok(pairs)
}

/// Recover the Puiseux pairs from the minimal semigroup generators
/// `β̄_0 < β̄_1 < … < β̄_g`.
///
/// Uses the gcd chain `e_i = gcd(e_{i−1}, β̄_i)` (which must strictly
/// decrease and reach 1 in exactly `g` steps), inverts the generator
/// recurrence to get `β_i`, and reads off `l_i = (β_i − β_{i−1})/e_i`. The
/// result is validated and round-tripped; failures report `InvalidSemigroup`.
pub fn pairs_from_semigroup(gens: &[BigInt]) -> Result<PuiseuxPairs, Error> {
    let invalid = |msg: &str| Error::InvalidSemigroup(msg.to_string());
    if gens.len() < 2 {
        return Err(invalid("need at least two generators (β̄_0 and β̄_1)"));
    }
    for (i, b) in gens.iter().enumerate() {
        if !b.is_positive() {
            return Err(invalid(&format!("generator {i} is not positive")));
        }
        if i > 0 && gens[i - 1] >= *b {
            return Err(invalid("generators must be strictly increasing"));
        }
    }

    let g = gens.len() - 1;
    let e0 = gens[0].clone();

    // gcd chain: e_i = gcd(e_{i-1}, β̄_i), strictly decreasing, e_g = 1.
    let mut e = vec![e0.clone()];
    for i in 1..=g {
        let e_i = e[i - 1].gcd(&gens[i]);
        if e_i == e[i - 1] {
            return Err(invalid(&format!(
                "gcd chain stalls at step {i} (n_{i} would be 1)"
            )));
        }
        e.push(e_i);
    }
    if !e[g].is_one() {
        return Err(invalid(&format!(
            "gcd chain does not reach 1 in exactly {g} steps"
        )));
    }

    // Invert β̄_i = n_{i-1} β̄_{i-1} − β_{i-1} + β_i (β̄_1 = β_1).
    let mut beta = vec![gens[1].clone()];
    for i in 2..=g {
        let n_prev = &e[i - 2] / &e[i - 1];
        let b = &gens[i] - n_prev * &gens[i - 1] + &beta[i - 2];
        beta.push(b);
    }

    let mut pairs = Vec::with_capacity(g);
    let mut beta_prev = e0;
    for i in 1..=g {
        let n_i = &e[i - 1] / &e[i];
        let diff = &beta[i - 1] - &beta_prev;
        let (l_i, rem) = diff.div_rem(&e[i]);
        if !rem.is_zero() {
            return Err(invalid("generator steps are not compatible with the gcd chain"));
        }
        pairs.push((n_i, l_i));
        beta_prev = beta[i - 1].clone();
    }

    let pairs = validate_pairs(&pairs)
        .map_err(|e| invalid(&format!("recovered pairs fail validation: {e}")))?;
    let inv = derive_invariants(&pairs);
    if inv.beta_bar != gens {
        return Err(invalid(
            "round trip does not reproduce the input (not a minimal generator list)",
        ));
    }
    Ok(pairs)
}
