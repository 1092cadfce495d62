//! Partitions and the closed-form invariants attached to `GL_n(q)` and
//! `GU_n(q)` in non-defining characteristic `ℓ`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exactfield::{is_prime, prime_power};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CombinatError {
    #[error("ℓ = {ell} divides q = {q}")]
    SameCharacteristic { q: u64, ell: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("δ must be 1 or 2, got {0}")]
    BadDelta(u32),
    #[error("ℓ = {ell} is not a linear prime for q = {q}")]
    NonLinearPrime { q: u64, ell: u64 },
    #[error("partitions of different weight ({0} vs {1})")]
    WeightMismatch(usize, usize),
    #[error("not a partition: {0:?}")]
    InvalidPartition(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for EValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EValue::Finite(e) => write!(f, "{e}"),
            EValue::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for EValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EValue::Finite(e) => s.serialize_u64(*e),
            EValue::Infinite => s.serialize_str("infinity"),
        }
    }
}

fn check_q_ell(q: u64, ell: u64) -> Result<(), CombinatError> {
    prime_power(q).ok_or(CombinatError::NotPrimePower(q))?;
    if ell != 0 && !is_prime(ell) {
        return Err(CombinatError::NotPrime(ell));
    }
    if ell != 0 && q.is_multiple_of(ell) {
        return Err(CombinatError::SameCharacteristic { q, ell });
    }
    Ok(())
}

/// `min{i ≥ 2 : 1 + q + ... + q^{i-1} ≡ 0 mod ℓ}`; `ℓ = 0` gives infinity.
pub fn e_value(q: u64, ell: u64) -> Result<EValue, CombinatError> {
    check_q_ell(q, ell)?;
    if ell == 0 {
        return Ok(EValue::Infinite);
    }
    e_value_unchecked(q % ell, ell)
}

/// The same minimum taken over `1 + q^2 + ... + q^{2(i-1)}`.
pub fn e_tilde(q: u64, ell: u64) -> Result<EValue, CombinatError> {
    check_q_ell(q, ell)?;
    if ell == 0 {
        return Ok(EValue::Infinite);
    }
    let qm = q % ell;
    e_value_unchecked(qm * qm % ell, ell)
}

// The pair (q^i, partial sum) repeats within ℓ steps, so ℓ + 1 terms suffice.
fn e_value_unchecked(q: u64, ell: u64) -> Result<EValue, CombinatError> {
    let (mut sum, mut pw) = (1 % ell, 1 % ell);
    for i in 2..=ell + 1 {
        pw = pw * q % ell;
        sum = (sum + pw) % ell;
        if sum == 0 {
            return Ok(EValue::Finite(i));
        }
    }
    Ok(EValue::Infinite)
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatError::InvalidPartition(parts));
        }
        Ok(Self(parts))
    }

    /// Sorts `parts` and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Exponent notation, e.g. `(3,2^2,1^3)`.
    pub fn exponent_notation(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let k = self.0[i..].iter().take_while(|&&x| x == p).count();
            out.push(if k == 1 { p.to_string() } else { format!("{p}^{k}") });
            i += k;
        }
        format!("({})", out.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// No part occurs `e` or more times.
pub fn is_e_regular(lambda: &Partition, e: EValue) -> bool {
    let EValue::Finite(e) = e else { return true };
    let p = lambda.parts();
    let mut i = 0;
    while i < p.len() {
        let k = p[i..].iter().take_while(|&&x| x == p[i]).count();
        if k as u64 >= e {
            return false;
        }
        i += k;
    }
    true
}

/// `λ ⊴ μ` by comparing prefix sums.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool, CombinatError> {
    if lambda.weight() != mu.weight() {
        return Err(CombinatError::WeightMismatch(lambda.weight(), mu.weight()));
    }
    let len = lambda.parts().len().max(mu.parts().len());
    let (mut a, mut b) = (0, 0);
    for i in 0..len {
        a += lambda.parts().get(i).copied().unwrap_or(0);
        b += mu.parts().get(i).copied().unwrap_or(0);
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `μ_0 = (m+1, .., m+1, m, .., m)` with `n = (e-1)m + r`: `r` parts equal
/// to `m+1` and `e-r-1` parts equal to `m`.
pub fn mullineux_socle_label(n: usize, e: EValue) -> Partition {
    match e {
        EValue::Infinite => Partition(vec![1; n]),
        EValue::Finite(e) => {
            let e = e as usize;
            let (m, r) = (n / (e - 1), n % (e - 1));
            let mut parts = vec![m + 1; r];
            parts.extend(std::iter::repeat_n(m, e - r - 1));
            Partition::from_unsorted(parts)
        }
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Power series truncated after `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesTrunc {
    coeffs: Vec<BigUint>,
}

impl PowerSeriesTrunc {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigUint::zero(); order + 1];
        coeffs[0] = BigUint::one();
        Self { coeffs }
    }

    /// `1 / (1 - t^k)`.
    pub fn geometric(k: usize, order: usize) -> Self {
        assert!(k > 0);
        let coeffs = (0..=order).map(|i| if i % k == 0 { BigUint::one() } else { BigUint::zero() }).collect();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigUint {
        &self.coeffs[i]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigUint::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        Self { coeffs }
    }
}

/// The parts `e ℓ^j ≤ n` (together with 1 these are the allowed parts).
fn hc_parts(n: usize, e: u64, ell: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut x = e as u128;
    while x <= n as u128 {
        out.push(x as usize);
        if ell < 2 {
            break;
        }
        x *= ell as u128;
    }
    out
}

/// Coefficient of `t^n` in `1/(1-t) Π_{j ≥ 0} 1/(1 - t^{e ℓ^j})`.
pub fn hc_series_coefficient(n: usize, e: EValue, ell: u64) -> BigUint {
    let EValue::Finite(e) = e else { return BigUint::one() };
    let mut s = PowerSeriesTrunc::geometric(1, n);
    for k in hc_parts(n, e, ell) {
        s = s.mul(&PowerSeriesTrunc::geometric(k, n));
    }
    s.coeff(n).clone()
}

/// Composition length of the Steinberg module of `GL_n(q)` over a field of
/// characteristic `ℓ`.
pub fn comp_length_gl(n: usize, q: u64, ell: u64) -> Result<BigUint, CombinatError> {
    Ok(hc_series_coefficient(n, e_value(q, ell)?, ell))
}

/// Partitions of `n` each of whose parts is 1 or `e ℓ^j`, by exhaustive
/// enumeration.
pub fn p_sigma_star_gl(n: usize, e: u64, ell: u64) -> Vec<Partition> {
    let allowed = |p: usize| {
        if p == 1 {
            return true;
        }
        let mut x = e as u128;
        while x <= p as u128 {
            if x == p as u128 {
                return true;
            }
            if ell < 2 {
                break;
            }
            x *= ell as u128;
        }
        false
    };
    partitions(n).into_iter().filter(|l| l.parts().iter().all(|&p| allowed(p))).collect()
}

/// `n = 1` or `n = e ℓ^j` for some `j ≥ 0`.
pub fn is_cuspidal_dsigma_gl(n: usize, e: u64, ell: u64) -> bool {
    n == 1 || hc_parts(n, e, ell).contains(&n)
}

/// `q^{δm - 1} ≢ -1 mod ℓ` for all `m ≥ 1`.
pub fn is_linear_prime(delta: u32, q: u64, ell: u64) -> Result<bool, CombinatError> {
    if delta != 1 && delta != 2 {
        return Err(CombinatError::BadDelta(delta));
    }
    check_q_ell(q, ell)?;
    if ell == 0 {
        return Ok(true);
    }
    let qm = q % ell;
    let pow = |e: u64| (0..e).fold(1 % ell, |acc, _| acc * qm % ell);
    // q has order < ℓ modulo ℓ, so m = 1..=ℓ covers a full period
    Ok((1..=ell).all(|m| pow(delta as u64 * m - 1) != ell - 1))
}

/// Composition length of the Steinberg module of `GU_n(q)` at a linear
/// prime: coefficient of `t^m`, `m = ⌊n/2⌋`, in the series built from `ẽ`.
pub fn comp_length_gu(n: usize, q: u64, ell: u64) -> Result<BigUint, CombinatError> {
    if !is_linear_prime(2, q, ell)? {
        return Err(CombinatError::NonLinearPrime { q, ell });
    }
    Ok(hc_series_coefficient(n / 2, e_tilde(q, ell)?, ell))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn fin(e: u64) -> EValue {
        EValue::Finite(e)
    }

    #[test]
    fn e_examples() {
        assert_eq!(e_value(2, 7).unwrap(), fin(3));
        assert_eq!(e_value(2, 3).unwrap(), fin(2));
        assert_eq!(e_value(3, 13).unwrap(), fin(3));
        assert_eq!(e_value(2, 5).unwrap(), fin(4));
        assert_eq!(e_value(4, 3).unwrap(), fin(3));
        assert_eq!(e_value(3, 2).unwrap(), fin(2));
        assert_eq!(e_value(2, 0).unwrap(), EValue::Infinite);
        assert_eq!(e_value(4, 2), Err(CombinatError::SameCharacteristic { q: 4, ell: 2 }));
        assert_eq!(e_tilde(2, 5).unwrap(), fin(2));
        assert_eq!(e_tilde(2, 7).unwrap(), fin(3));
    }

    #[test]
    fn e_tilde_is_e_of_q_squared() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for ell in [2u64, 3, 5, 7, 11, 13] {
                if q % ell != 0 {
                    assert_eq!(e_tilde(q, ell).unwrap(), e_value(q * q, ell).unwrap());
                }
            }
        }
    }

    #[test]
    fn e_two_iff_q_minus_one() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            for ell in [2u64, 3, 5, 7] {
                if q % ell != 0 {
                    let two = e_value(q, ell).unwrap() == fin(2);
                    assert_eq!(two, (q + 1) % ell == 0);
                    if two {
                        assert_eq!(mullineux_socle_label(5, fin(2)), part(&[5]));
                    }
                }
            }
        }
    }

    #[test]
    fn mullineux_examples() {
        assert_eq!(mullineux_socle_label(3, fin(3)), part(&[2, 1]));
        assert_eq!(mullineux_socle_label(5, fin(2)), part(&[5]));
        assert_eq!(mullineux_socle_label(4, EValue::Infinite), part(&[1, 1, 1, 1]));
        assert_eq!(mullineux_socle_label(7, fin(4)), part(&[3, 2, 2]));
        for n in 1..20 {
            for e in 2..8 {
                let mu = mullineux_socle_label(n, fin(e));
                assert_eq!(mu.weight(), n);
                assert!(is_e_regular(&mu, fin(e)));
            }
        }
    }

    #[test]
    fn regularity_and_dominance() {
        assert!(is_e_regular(&part(&[2, 1]), fin(3)));
        assert!(!is_e_regular(&part(&[1, 1]), fin(2)));
        let chain = [part(&[1, 1, 1]), part(&[2, 1]), part(&[3])];
        assert!(dominance_leq(&chain[0], &chain[1]).unwrap());
        assert!(dominance_leq(&chain[1], &chain[2]).unwrap());
        assert!(!dominance_leq(&chain[2], &chain[1]).unwrap());
        assert!(!dominance_leq(&part(&[3, 3]), &part(&[4, 1, 1])).unwrap());
        assert!(!dominance_leq(&part(&[4, 1, 1]), &part(&[3, 3])).unwrap());
        assert!(dominance_leq(&part(&[1]), &part(&[2])).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn exponent_notation() {
        assert_eq!(part(&[2, 1]).exponent_notation(), "(2,1)");
        assert_eq!(part(&[3, 2, 2, 1, 1, 1]).exponent_notation(), "(3,2^2,1^3)");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn gl_lengths() {
        assert_eq!(comp_length_gl(3, 2, 7).unwrap(), BigUint::from(2u32));
        assert_eq!(comp_length_gl(2, 2, 3).unwrap(), BigUint::from(2u32));
        assert_eq!(comp_length_gl(4, 3, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(comp_length_gl(2, 2, 5).unwrap(), BigUint::from(1u32));
        let ps = p_sigma_star_gl(3, 3, 7);
        assert_eq!(ps, vec![part(&[3]), part(&[1, 1, 1])]);
        assert_eq!(p_sigma_star_gl(1, 3, 7), vec![part(&[1])]);
    }

    #[test]
    fn gl_length_one_iff_ell_prime_to_index() {
        for n in 1..=4usize {
            for q in [2u64, 3, 4, 5] {
                for ell in [2u64, 3, 5, 7, 13] {
                    if q % ell == 0 {
                        continue;
                    }
                    let idx = crate::bngroup::q_factorial(n, q);
                    let divides = (&idx % BigUint::from(ell)).is_zero();
                    assert_eq!(comp_length_gl(n, q, ell).unwrap().is_one(), !divides, "n={n} q={q} ℓ={ell}");
                }
            }
        }
    }

    #[test]
    fn series_matches_enumeration() {
        for n in 0..=30 {
            for e in 2..=10 {
                for ell in [2, 3, 5, 7] {
                    let c = hc_series_coefficient(n, fin(e), ell);
                    assert_eq!(c, BigUint::from(p_sigma_star_gl(n, e, ell).len()));
                }
            }
        }
    }

    #[test]
    fn cuspidality() {
        assert!(is_cuspidal_dsigma_gl(1, 3, 7));
        assert!(is_cuspidal_dsigma_gl(3, 3, 7));
        assert!(is_cuspidal_dsigma_gl(21, 3, 7));
        assert!(!is_cuspidal_dsigma_gl(4, 3, 7));
        assert!(is_cuspidal_dsigma_gl(4, 2, 2));
        assert!(!is_cuspidal_dsigma_gl(3, 2, 2));
    }

    #[test]
    fn linear_primes() {
        assert!(is_linear_prime(2, 2, 5).unwrap());
        assert!(!is_linear_prime(2, 2, 3).unwrap());
        assert!(!is_linear_prime(1, 2, 3).unwrap());
        assert!(is_linear_prime(3, 2, 5).is_err());
    }

    #[test]
    fn gu_lengths() {
        assert_eq!(comp_length_gu(3, 2, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(comp_length_gu(4, 2, 5).unwrap(), BigUint::from(2u32));
        assert_eq!(comp_length_gu(1, 2, 5).unwrap(), BigUint::from(1u32));
        assert_eq!(comp_length_gu(4, 2, 3), Err(CombinatError::NonLinearPrime { q: 2, ell: 3 }));
    }

    #[test]
    fn power_series_truncated_product() {
        // 1/(1-t) * 1/(1-t) has coefficients i+1
        let s = PowerSeriesTrunc::geometric(1, 8).mul(&PowerSeriesTrunc::geometric(1, 8));
        assert!((0..=8).all(|i| *s.coeff(i) == BigUint::from(i + 1)));
        assert_eq!(PowerSeriesTrunc::one(3).mul(&s).order(), 3);
    }

    proptest::proptest! {
        #[test]
        fn dominance_is_partial_order(a in 0usize..42, b in 0usize..42, c in 0usize..42) {
            let ps = partitions(10);
            let (x, y, z) = (&ps[a], &ps[b], &ps[c]);
            proptest::prop_assert!(dominance_leq(x, x).unwrap());
            if dominance_leq(x, y).unwrap() && dominance_leq(y, z).unwrap() {
                proptest::prop_assert!(dominance_leq(x, z).unwrap());
            }
            if dominance_leq(x, y).unwrap() && dominance_leq(y, x).unwrap() {
                proptest::prop_assert_eq!(x, y);
            }
        }

        #[test]
        fn series_multiplication_is_convolution(a in proptest::collection::vec(0u32..5, 6), b in proptest::collection::vec(0u32..5, 6)) {
            let sa = PowerSeriesTrunc { coeffs: a.iter().map(|&x| BigUint::from(x)).collect() };
            let sb = PowerSeriesTrunc { coeffs: b.iter().map(|&x| BigUint::from(x)).collect() };
            let p = sa.mul(&sb);
            for n in 0..6 {
                let direct: u32 = (0..=n).map(|i| a[i] * b[n - i]).sum();
                proptest::prop_assert_eq!(p.coeff(n).clone(), BigUint::from(direct));
            }
        }
    }
}
