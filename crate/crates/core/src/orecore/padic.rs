//! p-adic valuations of binomial coefficients and factorials.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{OreError, Result};

use super::bcoef::binomial;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// v_p(x) by repeated division; `None` for x = 0.
pub fn valuation(x: &BigUint, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigUint::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Sum of the base-p digits of n.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// v_p(n!) by Legendre's formula Σ ⌊n/p^i⌋.
pub fn legendre(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = p;
    while q <= n {
        v += n / q;
        q = match q.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicMargin {
    /// v_p(C(p^r, n)·p^n)
    pub v_term: u64,
    /// s_p(n)
    pub digit_sum: u64,
    /// v_p(n!)
    pub v_fact: u64,
}

/// Computes v_p(C(p^r,n)·p^n), s_p(n) and v_p(n!) and checks the chain
/// v_p(C(p^r,n)·p^n) ≥ r + n − v_p(n!) ≥ r + ((p−2)n + s_p(n))/(p−1) ≥ r + 1
/// together with v_p(n!) = (n − s_p(n))/(p−1).
pub fn padic_margin(p: u64, r: u32, n: u64) -> Result<PadicMargin> {
    if !is_prime(p) {
        return Err(OreError::InvalidParams(format!("p = {p} is not prime")));
    }
    let pr = p.checked_pow(r).ok_or_else(|| OreError::InvalidParams("p^r overflows".into()))?;
    if n < 1 || n > pr {
        return Err(OreError::InvalidParams(format!("n = {n} must lie in 1..={pr}")));
    }
    let term = binomial(pr, n) * BigUint::from(p).pow(n as u32);
    let v_term = valuation(&term, p).expect("nonzero");
    let mut fact = BigUint::one();
    for j in 2..=n {
        fact *= BigUint::from(j);
    }
    let v_fact = valuation(&fact, p).expect("nonzero");
    let s = digit_sum(n, p);
    let r = r as u64;
    assert_eq!(v_fact, legendre(n, p));
    assert_eq!(v_fact * (p - 1), n - s, "Legendre digit-sum identity");
    assert!(v_term >= r + n - v_fact);
    // r + n − v_p(n!) = r + ((p−2)n + s_p(n))/(p−1) exactly, and that is ≥ r + 1
    assert_eq!((r + n - v_fact) * (p - 1), r * (p - 1) + (p - 2) * n + s);
    assert!(r + n - v_fact > r);
    Ok(PadicMargin { v_term, digit_sum: s, v_fact })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(padic_margin(2, 2, 2).unwrap().v_term, 3);
        assert_eq!(padic_margin(2, 2, 4).unwrap().v_term, 4);
        assert_eq!(digit_sum(6, 2), 2);
        assert!(padic_margin(4, 2, 1).is_err());
        assert!(padic_margin(2, 2, 5).is_err());
        assert!(padic_margin(2, 2, 0).is_err());
    }

    #[test]
    fn valuation_of_24() {
        assert_eq!(valuation(&BigUint::from(24u32), 2), Some(3));
        assert_eq!(valuation(&BigUint::from(0u32), 2), None);
    }
}
