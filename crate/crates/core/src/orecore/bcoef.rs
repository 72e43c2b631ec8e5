//! Binomial-type coefficients of α^m(x^n) for α(x) = x + p·x^e.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeffring::FiniteRing;
use crate::error::{OreError, Result};
use crate::termorder::Term;

use super::padic::is_prime;
use super::poly::SkewPoly;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// S_m = (e^m − 1)/(e − 1) = 1 + e + ... + e^{m−1}.
pub fn s_m(e: u64, m: u64) -> u64 {
    (0..m).fold(0u64, |acc, _| acc * e + 1)
}

/// Memoized table of bcoef(n, m, k): the coefficient of p^k·x^{n+k(e−1)} in
/// α^m(x^n) with p treated as a formal symbol.
#[derive(Debug)]
pub struct BcoefTable {
    e: u64,
    memo: Mutex<HashMap<(u64, u64, u64), BigUint>>,
}

impl BcoefTable {
    pub fn new(e: u64) -> Result<BcoefTable> {
        if e < 2 {
            return Err(OreError::InvalidParams(format!("e must be at least 2, got {e}")));
        }
        Ok(BcoefTable { e, memo: Mutex::new(HashMap::new()) })
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    /// N_{n,m}(k) = min(k, n·S_m)
    pub fn upper(&self, n: u64, m: u64, k: u64) -> u64 {
        k.min(n.saturating_mul(s_m(self.e, m)))
    }

    /// l_{k,n} = max(0, ⌈(k − n)/e⌉)
    pub fn lower(&self, k: u64, n: u64) -> u64 {
        if k <= n {
            0
        } else {
            (k - n).div_ceil(self.e)
        }
    }

    pub fn get(&self, n: u64, m: u64, k: u64) -> BigUint {
        if m == 0 {
            return if k == 0 { BigUint::one() } else { BigUint::zero() };
        }
        if m == 1 {
            return binomial(n, k);
        }
        if let Some(v) = self.memo.lock().unwrap().get(&(n, m, k)) {
            return v.clone();
        }
        let e = self.e;
        let term = |l: u64| self.get(n, m - 1, l) * binomial(n + l * (e - 1), k - l);
        let hi = self.upper(n, m - 1, k);
        let truncated: BigUint = (self.lower(k, n)..=hi).map(term).sum();
        let full: BigUint = (0..=hi).map(term).sum();
        assert_eq!(truncated, full, "bcoef index ranges disagree at n={n} m={m} k={k}");
        self.memo.lock().unwrap().insert((n, m, k), truncated.clone());
        truncated
    }
}

pub fn bcoef(n: u64, m: u64, k: u64, e: u64) -> Result<BigUint> {
    Ok(BcoefTable::new(e)?.get(n, m, k))
}

/// α^m(x^n) over Z/p^{r+1} from the closed formula
/// Σ_{k ≤ N_{n,m}(r)} bcoef(n,m,k)·p^k·x^{n+k(e−1)}; the result lives in variable 0 of `nvars`.
pub fn alpha_power_closed(
    table: &BcoefTable,
    n: u64,
    m: u64,
    p: u64,
    r: u64,
    nvars: usize,
) -> Result<(FiniteRing, SkewPoly<usize>)> {
    if !is_prime(p) {
        return Err(OreError::InvalidParams(format!("p = {p} is not prime")));
    }
    if r < 1 {
        return Err(OreError::InvalidParams("r must be at least 1".into()));
    }
    let modulus = p.checked_pow(r as u32 + 1).filter(|&q| q <= 256).ok_or_else(|| {
        OreError::InvalidParams(format!("p^(r+1) = {p}^{} exceeds the finite-ring cap", r + 1))
    })?;
    let ring = FiniteRing::zmod(modulus)?;
    let big_mod = BigUint::from(modulus);
    let mut out = SkewPoly::zero();
    let e = table.e();
    for k in 0..=table.upper(n, m, r) {
        let c = (table.get(n, m, k) * BigUint::from(p).pow(k as u32)) % &big_mod;
        let exp = n + k * (e - 1);
        let mut exps = vec![0u32; nvars];
        exps[0] = exp as u32;
        out.add_term(&ring, Term::from_exps(exps), c.to_usize().unwrap());
    }
    Ok((ring, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bcoef(3, 1, 2, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(bcoef(1, 2, 1, 2).unwrap(), BigUint::from(2u32));
        let t = BcoefTable::new(3).unwrap();
        for n in 0..5 {
            for m in 0..5 {
                assert_eq!(t.get(n, m, 0), BigUint::one());
            }
        }
        assert!(bcoef(1, 1, 1, 1).is_err());
        assert_eq!(s_m(2, 3), 7);
    }

    #[test]
    fn closed_form_examples() {
        let t = BcoefTable::new(2).unwrap();
        let (r, f) = alpha_power_closed(&t, 1, 1, 2, 2, 1).unwrap();
        assert_eq!(f.format(&r), "2*x0^2 + x0");
        let (r, f) = alpha_power_closed(&t, 2, 1, 2, 1, 1).unwrap();
        assert_eq!(f.format(&r), "x0^2");
        let (r, f) = alpha_power_closed(&t, 3, 0, 2, 2, 1).unwrap();
        assert_eq!(f.format(&r), "x0^3");
    }

    /// Expands α^m(x) with p kept symbolic (integer coefficients of x^j) and reads off
    /// the coefficient of p^k x^{1+k(e−1)}.
    #[test]
    fn formal_expansion_agrees() {
        // polynomials in (x, p) as maps (deg_x, deg_p) -> coefficient
        use std::collections::BTreeMap;
        type P = BTreeMap<(u64, u64), BigUint>;
        fn mul(a: &P, b: &P) -> P {
            let mut out = P::new();
            for ((x1, p1), c1) in a {
                for ((x2, p2), c2) in b {
                    *out.entry((x1 + x2, p1 + p2)).or_default() += c1 * c2;
                }
            }
            out
        }
        let e = 2u64;
        let t = BcoefTable::new(e).unwrap();
        let mut alpha_x = P::new();
        alpha_x.insert((1, 0), BigUint::one());
        alpha_x.insert((e, 1), BigUint::one());
        // substitute x -> α(x) into a polynomial
        let subst = |f: &P| -> P {
            let mut out = P::new();
            for ((xd, pd), c) in f {
                let mut pw = P::new();
                pw.insert((0, *pd), c.clone());
                for _ in 0..*xd {
                    pw = mul(&pw, &alpha_x);
                }
                for (k, v) in pw {
                    *out.entry(k).or_default() += v;
                }
            }
            out
        };
        for n in 1..4u64 {
            let mut f = P::new();
            f.insert((n, 0), BigUint::one());
            for m in 1..4u64 {
                f = subst(&f);
                for ((xd, pd), c) in &f {
                    assert_eq!(*xd, n + pd * (e - 1));
                    assert_eq!(*c, t.get(n, m, *pd), "n={n} m={m} k={pd}");
                }
            }
        }
    }
}
