use crate::coeffring::{FiniteRing, Side};
use crate::error::{OreError, Result};

use super::poly::SkewPoly;
use super::ring::{Bijectivity, SkewPolyRing};
use super::space::{kernel_of, PolySpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// A standard term in a ring of bijective type.
    Unconditional,
    /// No g ≠ 0 of total degree ≤ D annihilates f from either side.
    CertifiedTo(u64),
    /// g·f = 0 (side Left) or f·g = 0 (side Right).
    ZeroDivisor { witness: SkewPoly<usize>, side: Side },
}

/// True when every α_i is certified bijective (inverse supplied or finite order ≤ `max_order`).
pub fn is_bijective_type(s: &SkewPolyRing<FiniteRing>, max_order: u64) -> Result<bool> {
    for i in 0..s.nvars() {
        if matches!(s.certify_bijective(i, max_order)?, Bijectivity::Uncertified { .. }) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches for a nonzero g of total degree ≤ `d` with g·f = 0 or f·g = 0.
/// `budget` caps the number of additive generators of the searched slice.
pub fn regularity_bounded(s: &SkewPolyRing<FiniteRing>, f: &SkewPoly<usize>, d: u64, budget: usize) -> Result<Regularity> {
    let r = s.coeff_ring();
    if f.len() == 1 && *f.lc().unwrap() == r.one() && is_bijective_type(s, 64)? {
        return Ok(Regularity::Unconditional);
    }
    if f.is_zero() {
        return Ok(Regularity::ZeroDivisor { witness: s.one(), side: Side::Left });
    }
    let domain = PolySpace::new(r, s.terms_up_to(d))?;
    if domain.dim() > budget {
        return Err(OreError::Budget(format!(
            "{} additive generators in degree ≤ {d} exceed the budget {budget}",
            domain.dim()
        )));
    }
    for side in [Side::Left, Side::Right] {
        let ker = kernel_of(&domain, |g| match side {
            Side::Right => s.mul(f, g),
            _ => s.mul(g, f),
        })?;
        if let Some(v) = ker.tail_rows(0).last() {
            return Ok(Regularity::ZeroDivisor { witness: domain.decode(v), side });
        }
    }
    Ok(Regularity::CertifiedTo(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = SkewPolyRing::commutative(FiniteRing::zmod(4).unwrap(), 1).unwrap();
        let two = s.parse("2").unwrap();
        match regularity_bounded(&s, &two, 4, 1000).unwrap() {
            Regularity::ZeroDivisor { witness, .. } => assert_eq!(witness, two),
            other => panic!("{other:?}"),
        }
        let f = s.parse("x0 + 2").unwrap();
        assert_eq!(regularity_bounded(&s, &f, 4, 1000).unwrap(), Regularity::CertifiedTo(4));
        assert_eq!(regularity_bounded(&s, &s.var(0), 4, 1000).unwrap(), Regularity::Unconditional);
        assert!(matches!(regularity_bounded(&s, &f, 40, 10), Err(OreError::Budget(_))));
    }

    #[test]
    fn zero_divisor_witness_annihilates() {
        let s = SkewPolyRing::commutative(FiniteRing::zmod(6).unwrap(), 1).unwrap();
        let f = s.parse("3*x0 + 3").unwrap();
        let Regularity::ZeroDivisor { witness, .. } = regularity_bounded(&s, &f, 3, 1000).unwrap() else { panic!() };
        assert!(!witness.is_zero());
        assert!(s.mul(&witness, &f).unwrap().is_zero());
    }
}
