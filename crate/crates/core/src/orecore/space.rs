//! Coordinates for finite-rank slices of a polynomial ring over a finite ring,
//! so that R-spans, kernels and membership reduce to lattice computations.

use std::collections::{BTreeSet, HashMap};

use crate::coeffring::FiniteRing;
use crate::error::{OreError, Result};
use crate::linalg::{kernel, Lattice};
use crate::termorder::Term;

use super::poly::SkewPoly;

#[derive(Clone, Debug)]
pub struct PolySpace {
    ring: FiniteRing,
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    rmod: Vec<u64>,
}

/// Elements u_k of R whose coordinates are the unit vectors; they generate (R, +).
pub fn additive_generators(r: &FiniteRing) -> Result<Vec<usize>> {
    let m = r
        .additive_moduli()
        .ok_or_else(|| OreError::Precondition(format!("{} has no additive coordinates", r.spec())))?;
    Ok((0..m.len())
        .map(|k| {
            let mut v = vec![0u64; m.len()];
            v[k] = 1;
            r.from_coords(&v).unwrap()
        })
        .collect())
}

impl PolySpace {
    /// Columns are ordered by decreasing term, so a lattice row's pivot is its leading term.
    pub fn new(ring: &FiniteRing, terms: impl IntoIterator<Item = Term>) -> Result<PolySpace> {
        let rmod = ring
            .additive_moduli()
            .ok_or_else(|| OreError::Precondition(format!("{} has no additive coordinates", ring.spec())))?
            .to_vec();
        let set: BTreeSet<Term> = terms.into_iter().collect();
        let terms: Vec<Term> = set.into_iter().rev().collect();
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Ok(PolySpace { ring: ring.clone(), terms, index, rmod })
    }

    /// A space covering the support of every given polynomial.
    pub fn covering<'a>(ring: &FiniteRing, polys: impl IntoIterator<Item = &'a SkewPoly<usize>>) -> Result<PolySpace> {
        let terms: Vec<Term> = polys.into_iter().flat_map(|p| p.support().cloned().collect::<Vec<_>>()).collect();
        PolySpace::new(ring, terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn dim(&self) -> usize {
        self.terms.len() * self.rmod.len()
    }

    pub fn moduli(&self) -> Vec<u64> {
        self.terms.iter().flat_map(|_| self.rmod.iter().copied()).collect()
    }

    pub fn contains_support(&self, f: &SkewPoly<usize>) -> bool {
        f.support().all(|t| self.index.contains_key(t))
    }

    pub fn encode(&self, f: &SkewPoly<usize>) -> Option<Vec<i128>> {
        let w = self.rmod.len();
        let mut v = vec![0i128; self.dim()];
        for (t, c) in f.iter() {
            let i = *self.index.get(t)?;
            for (k, d) in self.ring.to_coords(*c).unwrap().into_iter().enumerate() {
                v[i * w + k] = d as i128;
            }
        }
        Some(v)
    }

    pub fn decode(&self, v: &[i128]) -> SkewPoly<usize> {
        let w = self.rmod.len();
        let mut f = SkewPoly::zero();
        for (i, t) in self.terms.iter().enumerate() {
            let digits: Vec<u64> = (0..w).map(|k| v[i * w + k].rem_euclid(self.rmod[k] as i128) as u64).collect();
            f.add_term(&self.ring, t.clone(), self.ring.from_coords(&digits).unwrap());
        }
        f
    }

    /// Additive generators u_k·τ of the space.
    pub fn generators(&self) -> Vec<SkewPoly<usize>> {
        let units = additive_generators(&self.ring).unwrap();
        self.terms
            .iter()
            .flat_map(|t| units.iter().map(move |&u| SkewPoly::monomial(&self.ring, u, t.clone())))
            .collect()
    }

    /// The additive subgroup spanned by `polys` (all supported in this space).
    pub fn span(&self, polys: &[SkewPoly<usize>]) -> Result<Lattice> {
        let mut l = Lattice::new(self.moduli());
        for p in polys {
            let v = self.encode(p).ok_or_else(|| OreError::Precondition("polynomial outside the coordinate space".into()))?;
            l.insert(&v);
        }
        Ok(l)
    }

    /// The left R-span of `polys`.
    pub fn r_span(&self, polys: &[SkewPoly<usize>]) -> Result<Lattice> {
        let units = additive_generators(&self.ring)?;
        let scaled: Vec<SkewPoly<usize>> =
            polys.iter().flat_map(|p| units.iter().map(move |u| p.scale_left(&self.ring, u))).collect();
        self.span(&scaled)
    }

    pub fn elements(&self, l: &Lattice) -> Vec<SkewPoly<usize>> {
        l.elements().iter().map(|v| self.decode(v)).collect()
    }
}

/// Kernel of the additive map φ on `domain` whose values on the domain generators are given
/// by `image`; returns the kernel as a lattice in domain coordinates.
pub fn kernel_of(
    domain: &PolySpace,
    image: impl Fn(&SkewPoly<usize>) -> Result<SkewPoly<usize>>,
) -> Result<Lattice> {
    let gens = domain.generators();
    let imgs: Vec<SkewPoly<usize>> = gens.iter().map(&image).collect::<Result<_>>()?;
    let target = PolySpace::covering(&domain.ring, imgs.iter())?;
    let graph: Vec<(Vec<i128>, Vec<i128>)> =
        gens.iter().zip(&imgs).map(|(g, i)| (target.encode(i).unwrap(), domain.encode(g).unwrap())).collect();
    Ok(kernel(&target.moduli(), &domain.moduli(), &graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_round_trip() {
        let r = crate::coeffring::build_finite("product:zmod:2,zmod:3").unwrap();
        let f = SkewPoly::parse(&r, "(1,2)*x0^2 + (0,1)", 1).unwrap();
        let sp = PolySpace::covering(&r, [&f]).unwrap();
        assert_eq!(sp.decode(&sp.encode(&f).unwrap()), f);
        let l = sp.r_span(std::slice::from_ref(&f)).unwrap();
        assert_eq!(l.size(), Some(6));
    }
}
