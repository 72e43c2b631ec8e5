//! Skew Laurent polynomials R[x_0^{±1}, ..., x_{k−1}^{±1}; α] with commuting
//! variables, and the group generated by a monoid of Laurent terms.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::coeffring::{validate_endo, CoeffMap, EndoKind, FiniteRing, RingEndoData};
use crate::error::{OreError, Result};
use crate::linalg::Lattice;
use crate::termorder::{LaurentTerm, Term};

use super::poly::{LaurentPoly, SkewPoly};
use super::ring::SkewPolyRing;

pub struct LaurentRing {
    ring: FiniteRing,
    alphas: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
    memo: Mutex<HashMap<Vec<i32>, Vec<usize>>>,
}

impl std::fmt::Debug for LaurentRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LaurentRing({}, {} vars)", self.ring.spec(), self.alphas.len())
    }
}

impl LaurentRing {
    /// One coefficient automorphism per variable; the automorphisms must commute.
    pub fn new(ring: FiniteRing, alphas: Vec<CoeffMap>) -> Result<LaurentRing> {
        let tables: Vec<Vec<usize>> = alphas.iter().map(|a| a.table(&ring)).collect();
        for (i, t) in tables.iter().enumerate() {
            if let Some(bad) = validate_endo(&ring, &RingEndoData::new(EndoKind::Automorphism, t.clone()))? {
                return Err(OreError::Precondition(format!(
                    "alpha of x{i} is not an automorphism ({} at {},{})",
                    bad.axiom, bad.a, bad.b
                )));
            }
        }
        for (i, a) in tables.iter().enumerate() {
            for (j, b) in tables.iter().enumerate().skip(i + 1) {
                if ring.elements().any(|x| a[b[x]] != b[a[x]]) {
                    return Err(OreError::Precondition(format!("alphas of x{i} and x{j} do not commute")));
                }
            }
        }
        let inverses = tables
            .iter()
            .map(|t| {
                let mut inv = vec![0; t.len()];
                for (x, &y) in t.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Ok(LaurentRing { ring, alphas: tables, inverses, memo: Mutex::new(HashMap::new()) })
    }

    /// The Laurent ring of a skew polynomial ring whose variables commute and carry no derivation.
    pub fn from_skew(s: &SkewPolyRing<FiniteRing>) -> Result<LaurentRing> {
        let k = s.nvars();
        let mut alphas = Vec::new();
        for i in 0..k {
            let v = s.var_data(i);
            let commuting = v.alpha_images.iter().enumerate().all(|(j, p)| *p == s.var(j));
            let no_delta = v.delta_coeff.is_zero() && v.delta_images.iter().all(|p| p.is_zero());
            if !commuting || !no_delta {
                return Err(OreError::Precondition(format!(
                    "x{i} does not commute with the lower variables or carries a derivation"
                )));
            }
            alphas.push(v.alpha_coeff.clone());
        }
        LaurentRing::new(s.coeff_ring().clone(), alphas)
    }

    pub fn coeff_ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.alphas.len()
    }

    /// α_λ = Π α_i^{e_i} as a table.
    pub fn alpha_of(&self, l: &LaurentTerm) -> Vec<usize> {
        if let Some(t) = self.memo.lock().unwrap().get(l.exps()) {
            return t.clone();
        }
        let mut t: Vec<usize> = self.ring.elements().collect();
        for (i, &e) in l.exps().iter().enumerate() {
            let step = if e >= 0 { &self.alphas[i] } else { &self.inverses[i] };
            for _ in 0..e.unsigned_abs() {
                t = t.iter().map(|&x| step[x]).collect();
            }
        }
        self.memo.lock().unwrap().insert(l.exps().to_vec(), t.clone());
        t
    }

    /// (aλ)(bτ) = a·α_λ(b)·λτ
    pub fn mul(&self, f: &LaurentPoly<usize>, g: &LaurentPoly<usize>) -> LaurentPoly<usize> {
        let mut out = LaurentPoly::zero();
        for (l, a) in f.iter() {
            let al = self.alpha_of(l);
            for (t, b) in g.iter() {
                out.add_term(&self.ring, l.mul(t), self.ring.mul(*a, al[*b]));
            }
        }
        out
    }

    pub fn monomial(&self, c: usize, t: LaurentTerm) -> LaurentPoly<usize> {
        LaurentPoly::monomial(&self.ring, c, t)
    }

    pub fn embed(&self, f: &SkewPoly<usize>) -> LaurentPoly<usize> {
        let mut out = LaurentPoly::zero();
        for (t, c) in f.iter() {
            out.add_term(&self.ring, t.to_laurent(), *c);
        }
        out
    }

    pub fn to_standard(&self, f: &LaurentPoly<usize>) -> Option<SkewPoly<usize>> {
        let mut out = SkewPoly::zero();
        for (t, c) in f.iter() {
            if !t.is_standard() {
                return None;
            }
            out.add_term(&self.ring, Term::from_exps(t.exps().iter().map(|&e| e as u32).collect()), *c);
        }
        Some(out)
    }
}

/// A basis of the group G = sT·sT^{−1} generated by the given terms, with each
/// generator written in that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedGroup {
    pub basis: Vec<LaurentTerm>,
    pub coords: Vec<Vec<i64>>,
}

impl LocalizedGroup {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, t: &LaurentTerm) -> bool {
        let mut l = Lattice::new(vec![0; t.exps().len()]);
        for b in &self.basis {
            l.insert(&b.exps().iter().map(|&e| e as i128).collect::<Vec<_>>());
        }
        l.contains(&t.exps().iter().map(|&e| e as i128).collect::<Vec<_>>())
    }
}

pub fn laurent_localize(gens: &[LaurentTerm]) -> Result<LocalizedGroup> {
    let k = gens.first().map(|g| g.exps().len()).unwrap_or(0);
    let mut lat = Lattice::new(vec![0; k]);
    for g in gens {
        if g.exps().len() != k {
            return Err(OreError::MismatchedUniverse { left: k, right: g.exps().len() });
        }
        lat.insert(&g.exps().iter().map(|&e| e as i128).collect::<Vec<_>>());
    }
    let rows: Vec<(usize, Vec<i128>)> = lat.rows().map(|(c, r)| (c, r.clone())).collect();
    let basis = rows.iter().map(|(_, r)| LaurentTerm::from_exps(r.iter().map(|&e| e as i32).collect())).collect();
    let coords = gens
        .iter()
        .map(|g| {
            let used = lat
                .decompose(&g.exps().iter().map(|&e| e as i128).collect::<Vec<_>>())
                .expect("generators lie in their own span");
            rows.iter()
                .map(|(c, _)| used.iter().find(|(uc, _)| uc == c).map(|(_, k)| *k as i64).unwrap_or(0))
                .collect()
        })
        .collect();
    Ok(LocalizedGroup { basis, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lt(s: &str, k: usize) -> LaurentTerm {
        LaurentTerm::parse(s, k).unwrap()
    }

    fn check_coords(g: &LocalizedGroup, gens: &[LaurentTerm]) {
        for (gen, c) in gens.iter().zip(&g.coords) {
            let mut acc = LaurentTerm::one(gen.exps().len());
            for (b, &k) in g.basis.iter().zip(c) {
                let p = if k >= 0 { b.clone() } else { b.inv() };
                for _ in 0..k.unsigned_abs() {
                    acc = acc.mul(&p);
                }
            }
            assert_eq!(&acc, gen);
        }
    }

    #[test]
    fn localize_examples() {
        let gens = [lt("x0^2", 1), lt("x0^3", 1)];
        let g = laurent_localize(&gens).unwrap();
        assert_eq!(g.basis, vec![lt("x0", 1)]);
        check_coords(&g, &gens);
        let g1 = laurent_localize(&[lt("x0", 1)]).unwrap();
        assert_eq!(g1.basis, vec![lt("x0", 1)]);
        let gens2 = [lt("x0^2*x1", 2), lt("x0*x1", 2)];
        let g2 = laurent_localize(&gens2).unwrap();
        assert_eq!(g2.rank(), 2);
        assert!(g2.contains(&lt("x0", 2)) && g2.contains(&lt("x1", 2)));
        check_coords(&g2, &gens2);
    }

    fn untwisted_ring() -> LaurentRing {
        let r = FiniteRing::zmod(5).unwrap();
        LaurentRing::new(r, vec![CoeffMap::Identity]).unwrap()
    }

    #[test]
    fn inverse_terms() {
        let s = untwisted_ring();
        let x = s.monomial(1, lt("x0", 1));
        let xi = s.monomial(1, lt("x0^-1", 1));
        assert_eq!(s.mul(&x, &xi), s.monomial(1, LaurentTerm::one(1)));
    }

    fn swap_ring() -> LaurentRing {
        // F2 × F2 with α swapping the factors
        let r = crate::coeffring::build_finite("product:zmod:2,zmod:2").unwrap();
        let swap: Vec<usize> = r.elements().map(|a| (a % 2) * 2 + a / 2).collect();
        LaurentRing::new(r, vec![CoeffMap::Table(swap), CoeffMap::Identity]).unwrap()
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly<usize>> {
        prop::collection::vec((prop::collection::vec(-2i32..=2, 2), 1usize..4), 1..4).prop_map(|v| {
            let r = crate::coeffring::build_finite("product:zmod:2,zmod:2").unwrap();
            let mut p = LaurentPoly::zero();
            for (e, c) in v {
                p.add_term(&r, LaurentTerm::from_exps(e), c);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn pseudo_valuation(f in arb_laurent(), g in arb_laurent()) {
            let s = swap_ring();
            let r = s.coeff_ring();
            prop_assume!(!f.is_zero() && !g.is_zero());
            let (lf, cf) = (f.lt().unwrap().clone(), *f.lc().unwrap());
            let (lg, cg) = (g.lt().unwrap().clone(), *g.lc().unwrap());
            let lead = r.mul(cf, s.alpha_of(&lf)[cg]);
            let fg = s.mul(&f, &g);
            let top = lf.mul(&lg);
            let h = fg.sub(r, &s.monomial(lead, top.clone()));
            if let Some(t) = h.lt() {
                prop_assert!(*t < top);
            }
            if lead != 0 {
                prop_assert_eq!(fg.lt(), Some(&top));
            }
        }

        #[test]
        fn associativity(f in arb_laurent(), g in arb_laurent(), h in arb_laurent()) {
            let s = swap_ring();
            prop_assert_eq!(s.mul(&s.mul(&f, &g), &h), s.mul(&f, &s.mul(&g, &h)));
        }
    }
}
