//! Nice sets and nice polynomials: elements sharing one left annihilator.

use serde::Serialize;

use crate::bitset::Bits;
use crate::coeffring::FiniteRing;
use crate::error::{OreError, Result};
use crate::modlattice::is_essential_left_ideal;
use crate::orecore::space::kernel_of;
use crate::orecore::{PolySpace, SkewPoly, SkewPolyRing};

use super::{additive_basis, coordinate_lattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NiceCertificate {
    /// c = chain[k−1]·…·chain[0]
    pub c: usize,
    pub chain: Vec<usize>,
    /// cE∖{0}, sorted.
    pub set: Vec<usize>,
    pub annihilator: Vec<usize>,
    /// An element a of E with ann(a) ⊆ ann(E), when one exists.
    pub anchor: Option<usize>,
}

/// True when the nonzero elements of `elems` exist and share one left annihilator.
pub fn is_nice(r: &FiniteRing, elems: &[usize]) -> bool {
    let mut nz = elems.iter().copied().filter(|&x| x != 0);
    let Some(first) = nz.next() else { return false };
    let ann = r.left_annihilator(first);
    nz.all(|x| r.left_annihilator(x) == ann)
}

pub fn poly_is_nice(r: &FiniteRing, f: &SkewPoly<usize>) -> bool {
    is_nice(r, &f.iter().map(|(_, c)| *c).collect::<Vec<_>>())
}

fn nonzero_images(r: &FiniteRing, c: usize, e: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = e.iter().map(|&x| r.mul(c, x)).filter(|&x| x != 0).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Finds c ∈ R with cE∖{0} nonempty and nice, and inside L when L is given.
///
/// First shrinks the nonzero part of cE with multipliers c' ∈ ann(b)∖ann(a) until
/// all annihilators agree, keeping a fixed anchor alive when one exists; then
/// moves the elements into L one at a time.
pub fn nicify(r: &FiniteRing, e: &[usize], l: Option<&Bits>) -> Result<NiceCertificate> {
    let e: Vec<usize> = e.iter().copied().filter(|&x| x != 0).collect();
    if e.is_empty() {
        return Err(OreError::EmptySet);
    }
    if let Some(l) = l {
        if !r.is_left_ideal(l) || !is_essential_left_ideal(r, l) {
            return Err(OreError::Precondition("L must be an essential left ideal".into()));
        }
    }
    let ann_e = r.left_annihilator_of(&Bits::from_iter(e.iter().copied()));
    let anchor = e.iter().copied().find(|&a| r.left_annihilator(a).is_subset(&ann_e));
    let mut c = r.one();
    let mut chain = Vec::new();
    loop {
        let cur = nonzero_images(r, c, &e);
        assert!(!cur.is_empty(), "the multiplier never kills the whole set");
        let a = match anchor {
            Some(a0) => r.mul(c, a0),
            None => cur[0],
        };
        let ann_a = r.left_annihilator(a);
        let Some(&b) = cur.iter().find(|&&b| r.left_annihilator(b) != ann_a) else { break };
        let ann_b = r.left_annihilator(b);
        let step = match ann_b.minus(&ann_a).iter().next() {
            Some(x) => x,
            None => {
                assert!(anchor.is_none(), "ann(ca) ⊆ ann(cb) while the anchor lives");
                ann_a.minus(&ann_b).iter().next().expect("annihilators differ")
            }
        };
        chain.push(step);
        c = r.mul(step, c);
    }
    if let Some(l) = l {
        for &x in &e {
            let y = r.mul(c, x);
            if y == 0 || l.contains(y) {
                continue;
            }
            let step = r
                .elements()
                .find(|&s| {
                    let z = r.mul(s, y);
                    z != 0 && l.contains(z)
                })
                .expect("an essential L meets every nonzero cyclic ideal");
            chain.push(step);
            c = r.mul(step, c);
        }
    }
    let set = nonzero_images(r, c, &e);
    assert!(!set.is_empty() && is_nice(r, &set));
    if let Some(l) = l {
        assert!(set.iter().all(|&x| l.contains(x)));
    }
    let annihilator = r.left_annihilator_of(&Bits::from_iter(set.iter().copied()));
    if let Some(a) = anchor {
        assert_eq!(annihilator, r.left_annihilator(r.mul(c, a)));
    }
    Ok(NiceCertificate { c, chain, set, annihilator: annihilator.to_vec(), anchor })
}

/// (c, c·f) with c·f a nonzero nice polynomial.
pub fn nicify_poly(r: &FiniteRing, f: &SkewPoly<usize>) -> Result<(usize, SkewPoly<usize>)> {
    let coeffs: Vec<usize> = f.iter().rev().map(|(_, c)| *c).collect();
    let cert = nicify(r, &coeffs, None)?;
    Ok((cert.c, f.scale_left(r, &cert.c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnnihilatorSlice {
    /// Both slices agree; `size` is their common order.
    Pass { size: u128 },
    /// An element of one slice missing from the other.
    Violation { witness: SkewPoly<usize>, in_left_annihilator: bool },
}

/// Compares {h : h·g = 0} with the left ideal S·ann_R(g) among polynomials of
/// total degree ≤ d.
pub fn nice_annihilator_slice(s: &SkewPolyRing<FiniteRing>, g: &SkewPoly<usize>, d: u64) -> Result<AnnihilatorSlice> {
    let r = s.coeff_ring();
    if !poly_is_nice(r, g) {
        return Err(OreError::Precondition(format!("{} is not nice", s.format(g))));
    }
    let coeffs = Bits::from_iter(g.iter().map(|(_, c)| *c));
    let ann = r.left_annihilator_of(&coeffs);
    let terms = s.terms_up_to(d);
    let domain = PolySpace::new(r, terms.clone())?;
    let ker = kernel_of(&domain, |h| s.mul(h, g))?;
    let lhs: Vec<SkewPoly<usize>> = ker.tail_rows(0).iter().map(|v| domain.decode(v)).collect();
    let mut rhs_gens = Vec::new();
    for t in &terms {
        for a in additive_basis(r, &ann) {
            let p = s.mul_term(t, &s.constant(a))?;
            if !p.is_zero() {
                rhs_gens.push(p);
            }
        }
    }
    let big = PolySpace::covering(r, lhs.iter().chain(&rhs_gens).chain(std::iter::once(&s.one())))?;
    let low = coordinate_lattice(&big, r, |t| Ok(t.total_degree() <= d))?;
    let rhs = big.r_span(&rhs_gens)?.intersection(&low);
    let lhs_lat = big.span(&lhs)?;
    for (_, v) in lhs_lat.rows() {
        if !rhs.contains(v) {
            return Ok(AnnihilatorSlice::Violation { witness: big.decode(v), in_left_annihilator: true });
        }
    }
    for (_, v) in rhs.rows() {
        if !lhs_lat.contains(v) {
            return Ok(AnnihilatorSlice::Violation { witness: big.decode(v), in_left_annihilator: false });
        }
    }
    Ok(AnnihilatorSlice::Pass { size: lhs_lat.size().expect("finite") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::zoo;
    use proptest::prelude::*;

    #[test]
    fn nicify_examples() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let cert = nicify(&z6, &[2, 3], None).unwrap();
        assert_eq!((cert.c, cert.set.clone()), (2, vec![4]));
        let cert = nicify(&z6, &[1, 5], Some(&Bits::full(6))).unwrap();
        assert_eq!(cert.c, 1);
        let z12 = FiniteRing::zmod(12).unwrap();
        let l = Bits::from_iter((0..12).step_by(2));
        let cert = nicify(&z12, &[4, 6], Some(&l)).unwrap();
        // ann(4c) and ann(6c) differ whenever both are nonzero, so one element must die
        let ce: Vec<usize> = [4, 6].iter().map(|&x| z12.mul(cert.c, x)).filter(|&x| x != 0).collect();
        assert!(!ce.is_empty() && ce.iter().all(|&x| l.contains(x)));
        assert!(is_nice(&z12, &ce));
        assert!((1..12).all(|c| { let (a, b) = (z12.mul(c, 4), z12.mul(c, 6)); a == 0 || b == 0 || z12.left_annihilator(a) != z12.left_annihilator(b) }));
        assert!(matches!(nicify(&z6, &[0], None), Err(OreError::EmptySet)));
        assert!(nicify(&z6, &[1], Some(&Bits::from_iter([0, 2, 4]))).is_err());
    }

    #[test]
    fn annihilator_slice_examples() {
        let s = SkewPolyRing::commutative(FiniteRing::zmod(6).unwrap(), 1).unwrap();
        let g = s.parse("3*x0 + 3").unwrap();
        assert_eq!(nice_annihilator_slice(&s, &g, 3).unwrap(), AnnihilatorSlice::Pass { size: 81 });
        let u = s.parse("5*x0 + 1").unwrap();
        assert_eq!(nice_annihilator_slice(&s, &u, 3).unwrap(), AnnihilatorSlice::Pass { size: 1 });
        let bad = s.parse("3*x0 + 2").unwrap();
        assert!(matches!(nice_annihilator_slice(&s, &bad, 3), Err(OreError::Precondition(_))));
    }

    #[test]
    fn annihilator_slice_over_skew_ring() {
        // F2×F2 with the swap automorphism
        let r = crate::coeffring::build_finite("product:zmod:2,zmod:2").unwrap();
        let swap: Vec<usize> = r
            .elements()
            .map(|a| {
                let c = r.to_coords(a).unwrap();
                r.from_coords(&[c[1], c[0]]).unwrap()
            })
            .collect();
        let s = SkewPolyRing::univariate(r.clone(), crate::CoeffMap::Table(swap), crate::CoeffMap::Zero).unwrap();
        let g = s.parse("(1,0)*x0 + (1,0)").unwrap();
        assert!(matches!(nice_annihilator_slice(&s, &g, 3).unwrap(), AnnihilatorSlice::Pass { .. }));
    }

    fn ring_strategy() -> impl Strategy<Value = FiniteRing> {
        let rings = zoo(16);
        (0..rings.len()).prop_map(move |i| rings[i].clone())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn nicify_output_is_nice((r, picks, lpick) in ring_strategy().prop_flat_map(|r| {
            let n = r.size();
            (Just(r), proptest::collection::vec(1..n, 1..5), 0..64usize)
        })) {
            let ess: Vec<Bits> = crate::modlattice::ModuleInstance::regular(&r)
                .enumerate_submodules(64).unwrap().iter().copied()
                .filter(|l| is_essential_left_ideal(&r, l)).collect();
            let l = ess[lpick % ess.len()];
            let cert = nicify(&r, &picks, Some(&l)).unwrap();
            let ce: Vec<usize> = picks.iter().map(|&x| r.mul(cert.c, x)).filter(|&x| x != 0).collect();
            prop_assert!(!ce.is_empty());
            prop_assert!(is_nice(&r, &ce));
            prop_assert!(ce.iter().all(|&x| l.contains(x)));
        }
    }
}
