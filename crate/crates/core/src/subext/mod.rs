//! Term-spanned subextensions A = R·sT of a skew polynomial ring over a finite
//! ring, and bounded verification of their structure theory.

pub mod lifting;
pub mod named;
pub mod nice;
pub mod special;
pub mod words;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bits;
use crate::coeffring::FiniteRing;
use crate::error::{OreError, Result};
use crate::linalg::Lattice;
use crate::orecore::ring::terms_up_to;
use crate::orecore::space::additive_generators;
use crate::orecore::{PolySpace, SkewPoly, SkewPolyRing};
use crate::termorder::Term;

pub use lifting::{
    goldie_check, lift_directsum_check, lift_ideal_check, singular_slice_check, DirectSumVerdict, GoldieReport,
    LiftKind, LiftVerdict, SingularSlice,
};
pub use named::{build_named_example, NamedExample, NamedParams};
pub use nice::{is_nice, nice_annihilator_slice, nicify, nicify_poly, AnnihilatorSlice, NiceCertificate};
pub use special::{
    certify_special, find_nice_degree, ideal_slice, InducedMap, NiceDegree, SpecialData, SpecialLevel,
    SpecialVerdict, IdealSlice,
};
pub use words::{free_words_distinct, WordReport};

pub type Ambient = Arc<SkewPolyRing<FiniteRing>>;

type TermTest = Arc<dyn Fn(&Term) -> bool + Send + Sync>;

/// How the spanning terms are described: an explicit listing that is complete
/// up to a total degree, or a membership predicate.
#[derive(Clone)]
pub enum Basis {
    Explicit { terms: BTreeSet<Term>, complete_to: u64 },
    Predicate { test: TermTest },
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Explicit { terms, complete_to } => write!(f, "Explicit({terms:?}, to {complete_to})"),
            Basis::Predicate { .. } => f.write_str("Predicate"),
        }
    }
}

/// The left R-span of a set of standard terms containing 1.
#[derive(Clone, Debug)]
pub struct Subextension {
    name: String,
    ambient: Ambient,
    basis: Basis,
}

impl Subextension {
    pub fn explicit(
        name: &str,
        ambient: Ambient,
        terms: impl IntoIterator<Item = Term>,
        complete_to: u64,
    ) -> Result<Subextension> {
        let k = ambient.nvars();
        let terms: BTreeSet<Term> = terms.into_iter().collect();
        if let Some(t) = terms.iter().find(|t| t.exps().len() != k) {
            return Err(OreError::MismatchedUniverse { left: k, right: t.exps().len() });
        }
        if !terms.contains(&Term::one(k)) {
            return Err(OreError::Precondition(format!("{name}: the basis must contain 1")));
        }
        Ok(Subextension { name: name.into(), ambient, basis: Basis::Explicit { terms, complete_to } })
    }

    pub fn predicate(
        name: &str,
        ambient: Ambient,
        test: impl Fn(&Term) -> bool + Send + Sync + 'static,
    ) -> Result<Subextension> {
        if !test(&Term::one(ambient.nvars())) {
            return Err(OreError::Precondition(format!("{name}: the basis must contain 1")));
        }
        Ok(Subextension { name: name.into(), ambient, basis: Basis::Predicate { test: Arc::new(test) } })
    }

    /// The ambient ring as a subextension of itself.
    pub fn whole(ambient: Ambient) -> Subextension {
        Subextension::predicate("whole", ambient, |_| true).unwrap()
    }

    /// The span of the monoid generated by `gens` under exponent addition (the
    /// terms it produces are closed under multiplication when the variables commute).
    pub fn monoid(name: &str, ambient: Ambient, gens: Vec<Term>) -> Result<Subextension> {
        let k = ambient.nvars();
        if let Some(g) = gens.iter().find(|g| g.exps().len() != k) {
            return Err(OreError::MismatchedUniverse { left: k, right: g.exps().len() });
        }
        let gens: Vec<Vec<u32>> = gens.iter().filter(|g| g.total_degree() > 0).map(|g| g.exps().to_vec()).collect();
        Subextension::predicate(name, ambient, move |t| in_monoid(t.exps(), &gens, &mut HashMap::new()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ring(&self) -> &FiniteRing {
        self.ambient.coeff_ring()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    /// The distinguished (highest) variable.
    pub fn x_var(&self) -> usize {
        self.nvars() - 1
    }

    pub fn contains_term(&self, t: &Term) -> Result<bool> {
        match &self.basis {
            Basis::Explicit { terms, complete_to } => {
                if t.total_degree() > *complete_to {
                    return Err(OreError::StrataExceeded { requested: t.total_degree(), available: *complete_to });
                }
                Ok(terms.contains(t))
            }
            Basis::Predicate { test } => Ok(test(t)),
        }
    }

    pub fn contains(&self, f: &SkewPoly<usize>) -> Result<bool> {
        for t in f.support() {
            if !self.contains_term(t)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis terms of total degree ≤ d, increasing.
    pub fn window(&self, d: u64) -> Result<Vec<Term>> {
        match &self.basis {
            Basis::Explicit { terms, complete_to } => {
                if d > *complete_to {
                    return Err(OreError::StrataExceeded { requested: d, available: *complete_to });
                }
                Ok(terms.iter().filter(|t| t.total_degree() <= d).cloned().collect())
            }
            Basis::Predicate { test } => Ok(terms_up_to(self.nvars(), d).into_iter().filter(|t| test(t)).collect()),
        }
    }

    /// Basis terms with x-degree ≤ `dx` and lower total degree ≤ `dlow`.
    pub fn window_by_x(&self, dx: u32, dlow: u64) -> Result<Vec<Term>> {
        let x = self.x_var();
        let mut out: Vec<Term> = match &self.basis {
            Basis::Explicit { terms, .. } => terms
                .iter()
                .filter(|t| t.deg(x) <= dx && t.total_degree() - t.deg(x) as u64 <= dlow)
                .cloned()
                .collect(),
            Basis::Predicate { test } => {
                let mut v = Vec::new();
                for low in terms_up_to(x, dlow) {
                    for m in 0..=dx {
                        let mut e = low.exps().to_vec();
                        e.push(m);
                        let t = Term::from_exps(e);
                        if test(&t) {
                            v.push(t);
                        }
                    }
                }
                v
            }
        };
        out.sort();
        Ok(out)
    }

    pub fn term_poly(&self, t: &Term) -> SkewPoly<usize> {
        SkewPoly::term(self.ring(), t.clone())
    }
}

fn in_monoid(t: &[u32], gens: &[Vec<u32>], memo: &mut HashMap<Vec<u32>, bool>) -> bool {
    if t.iter().all(|&e| e == 0) {
        return true;
    }
    if let Some(&b) = memo.get(t) {
        return b;
    }
    let mut ok = false;
    for g in gens {
        if g.iter().zip(t).all(|(a, b)| a <= b) {
            let rest: Vec<u32> = t.iter().zip(g).map(|(a, b)| a - b).collect();
            if in_monoid(&rest, gens, memo) {
                ok = true;
                break;
            }
        }
    }
    memo.insert(t.to_vec(), ok);
    ok
}

/// A minimal-ish list of elements generating the additive group of `set`.
pub fn additive_basis(r: &FiniteRing, set: &Bits) -> Vec<usize> {
    let mut chosen = Vec::new();
    let mut span = Bits::singleton(0);
    for x in set.iter() {
        if !span.contains(x) {
            chosen.push(x);
            span = r.additive_closure(&Bits::from_iter(chosen.iter().copied()));
        }
    }
    chosen
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    Pass { pairs: usize },
    Violation { left: Term, right: Term, product: SkewPoly<usize>, offending: Term },
}

/// Multiplies every ordered pair of basis terms whose degrees add up to at most
/// `d` and checks that the product stays in the span.
pub fn closure_check(a: &Subextension, d: u64) -> Result<Closure> {
    let terms = a.window(d)?;
    let pairs: Vec<(&Term, &Term)> = terms
        .iter()
        .flat_map(|l| terms.iter().map(move |r| (l, r)))
        .filter(|(l, r)| l.total_degree() + r.total_degree() <= d)
        .collect();
    let s = a.ambient();
    let found: Vec<Result<Option<(SkewPoly<usize>, Term)>>> = pairs
        .par_iter()
        .map(|(l, r)| {
            let prod = s.mul(&a.term_poly(l), &a.term_poly(r))?;
            for t in prod.support() {
                if !a.contains_term(t)? {
                    return Ok(Some((prod.clone(), t.clone())));
                }
            }
            Ok(None)
        })
        .collect();
    for ((l, r), res) in pairs.iter().zip(found) {
        if let Some((product, offending)) = res? {
            return Ok(Closure::Violation { left: (*l).clone(), right: (*r).clone(), product, offending });
        }
    }
    Ok(Closure::Pass { pairs: pairs.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttainableDegrees {
    pub degrees: Vec<u32>,
    pub d_a: u32,
    /// False when d_A > 0 is not itself among the degrees found.
    pub gcd_attained: bool,
}

/// x-degrees of basis terms up to `d`; lower variables are searched to total degree 4d.
pub fn attainable_degrees(a: &Subextension, d: u32) -> Result<AttainableDegrees> {
    let x = a.x_var();
    let degrees: BTreeSet<u32> = a.window_by_x(d, 4 * d as u64)?.iter().map(|t| t.deg(x)).collect();
    let degrees: Vec<u32> = degrees.into_iter().collect();
    assert_eq!(degrees.first(), Some(&0), "1 lies in every subextension");
    let d_a = degrees.iter().fold(0u32, |g, &m| num_integer::gcd(g, m));
    assert!(degrees.iter().all(|&m| d_a == 0 && m == 0 || d_a > 0 && m % d_a == 0));
    let gcd_attained = d_a == 0 || degrees.contains(&d_a);
    Ok(AttainableDegrees { degrees, d_a, gcd_attained })
}

/// Decides f ∈ A, or f ∈ A·L when `l` is given, using only the generators τ·l
/// with deg_x(τ) ≤ deg_x(f) and total degree of τ at most max(d, deg f).
pub fn membership(f: &SkewPoly<usize>, a: &Subextension, l: Option<&Bits>, d: u64) -> Result<bool> {
    let x = a.x_var();
    let m = f.deg_var(x);
    if m as u64 > d {
        return Err(OreError::InvalidParams(format!("deg_x(f) = {m} exceeds the bound {d}")));
    }
    let Some(l) = l else {
        return a.contains(f);
    };
    let r = a.ring();
    if !r.is_left_ideal(l) {
        return Err(OreError::Precondition("L is not a left ideal".into()));
    }
    let reach = d.max(f.total_degree());
    let taus: Vec<Term> = a.window(reach)?.into_iter().filter(|t| t.deg(x) <= m).collect();
    let gens = al_generators(a, &taus, l)?;
    let mut all = gens.clone();
    all.push(f.clone());
    let space = PolySpace::covering(r, all.iter())?;
    let lat = space.r_span(&gens)?;
    Ok(lat.contains(&space.encode(f).unwrap()))
}

/// The products τ·l for τ in `taus` and l in an additive basis of L; their left
/// R-span is the part of A·L generated by those terms.
pub fn al_generators(a: &Subextension, taus: &[Term], l: &Bits) -> Result<Vec<SkewPoly<usize>>> {
    let r = a.ring();
    let ls = additive_basis(r, l);
    let s = a.ambient();
    let mut out = Vec::new();
    for t in taus {
        for &c in &ls {
            let p = s.mul_term(t, &s.constant(c))?;
            if !p.is_zero() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// The sublattice of `space` spanned by the coordinates whose terms satisfy `keep`.
pub fn coordinate_lattice(space: &PolySpace, r: &FiniteRing, mut keep: impl FnMut(&Term) -> Result<bool>) -> Result<Lattice> {
    let units = additive_generators(r)?;
    let mut polys = Vec::new();
    for t in space.terms() {
        if keep(t)? {
            polys.extend(units.iter().map(|&u| SkewPoly::monomial(r, u, t.clone())));
        }
    }
    space.span(&polys)
}
