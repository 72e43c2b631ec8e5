//! Bounded checks that uniform and essential left ideals of R lift to A, that
//! independent families lift to direct sums, that sing(A) = A ∩ sing(R)·T, and
//! the Goldie sub-checks built from them.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bits;
use crate::error::{OreError, Result};
use crate::linalg::{kernel, Lattice};
use crate::modlattice::{is_essential_left_ideal, ModuleInstance, DEFAULT_BUDGET};
use crate::orecore::{PolySpace, SkewPoly};
use crate::termorder::Term;
use crate::verdict::Status;

use super::{additive_basis, al_generators, coordinate_lattice, Subextension};

/// (A ∩ A·L) among polynomials supported on basis terms of total degree ≤ d,
/// inside a space that also covers `extra`.
fn a_cap_al(a: &Subextension, l: &Bits, d: u64, extra: &[SkewPoly<usize>]) -> Result<(PolySpace, Lattice)> {
    let r = a.ring();
    let taus = a.window(d)?;
    let gens = al_generators(a, &taus, l)?;
    let ones: Vec<SkewPoly<usize>> = taus.iter().map(|t| a.term_poly(t)).collect();
    let space = PolySpace::covering(r, gens.iter().chain(&ones).chain(extra))?;
    let keep = coordinate_lattice(&space, r, |t| Ok(t.total_degree() <= d && a.contains_term(t)?))?;
    Ok((space.clone(), space.r_span(&gens)?.intersection(&keep)))
}

fn nonzero_elements(space: &PolySpace, l: &Lattice) -> Vec<SkewPoly<usize>> {
    space.elements(l).into_iter().filter(|p| !p.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectSumVerdict {
    /// Orders of the lifted slices; their sum is direct.
    Pass { sizes: Vec<u128> },
    Violation { detail: String },
}

/// Checks that each A ∩ A·L_i is nonzero and that their sum is direct, among
/// polynomials of total degree ≤ d.
pub fn lift_directsum_check(a: &Subextension, ls: &[Bits], d: u64) -> Result<DirectSumVerdict> {
    let r = a.ring();
    let module = ModuleInstance::regular(r);
    if ls.iter().any(|l| !r.is_left_ideal(l)) || !module.is_independent(ls) {
        return Err(OreError::Precondition("the left ideals must form an independent family".into()));
    }
    let taus = a.window(d)?;
    let mut all = Vec::new();
    for l in ls {
        all.extend(al_generators(a, &taus, l)?);
    }
    let mut slices = Vec::new();
    for l in ls {
        slices.push(a_cap_al(a, l, d, &all)?);
    }
    let space = &slices.last().map(|s| s.0.clone());
    let Some(space) = space else {
        return Ok(DirectSumVerdict::Pass { sizes: vec![] });
    };
    let lats: Vec<Lattice> = slices.iter().map(|(sp, lat)| reencode(sp, lat, space)).collect();
    let mut sizes = Vec::new();
    let mut sum = Lattice::new(space.moduli());
    let mut expected: u128 = 1;
    for (i, lat) in lats.iter().enumerate() {
        let size = lat.size().expect("finite");
        if size == 1 {
            return Ok(DirectSumVerdict::Violation { detail: format!("A ∩ A·L_{i} is zero to degree {d}") });
        }
        sizes.push(size);
        sum = sum.sum(lat);
        expected *= size;
        if sum.size() != Some(expected) {
            return Ok(DirectSumVerdict::Violation { detail: format!("A ∩ A·L_{i} meets the earlier summands") });
        }
    }
    Ok(DirectSumVerdict::Pass { sizes })
}

fn reencode(from: &PolySpace, lat: &Lattice, to: &PolySpace) -> Lattice {
    let polys: Vec<SkewPoly<usize>> = lat.tail_rows(0).iter().map(|v| from.decode(v)).collect();
    to.span(&polys).expect("target space covers the source")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftKind {
    Uniform,
    Essential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftVerdict {
    Pass { checked: usize },
    /// For uniform: nonzero f, g with A_{≤D2}·f ∩ A_{≤D2}·g = 0. For essential:
    /// nonzero f with A_{≤D2}·f ∩ A ∩ A·L = 0.
    Counterexample { f: SkewPoly<usize>, g: Option<SkewPoly<usize>> },
    BoundedInconclusive { reason: String },
}

impl LiftVerdict {
    pub fn status(&self) -> Status {
        match self {
            LiftVerdict::Pass { .. } => Status::Pass,
            LiftVerdict::Counterexample { .. } => Status::Fail,
            LiftVerdict::BoundedInconclusive { .. } => Status::BoundedInconclusive,
        }
    }
}

/// Bounded check that a uniform (essential) left ideal L of R lifts to a uniform
/// (essential) left ideal A ∩ A·L of A. `budget` caps the number of candidate
/// elements (uniform: pairs) examined.
pub fn lift_ideal_check(a: &Subextension, l: &Bits, kind: LiftKind, d1: u64, d2: u64, budget: usize) -> Result<LiftVerdict> {
    let r = a.ring();
    let s = a.ambient();
    if !r.is_left_ideal(l) {
        return Err(OreError::Precondition("L is not a left ideal".into()));
    }
    let class = ModuleInstance::regular(r).classify_submodule(l)?;
    let holds = match kind {
        LiftKind::Uniform => class.uniform,
        LiftKind::Essential => class.essential,
    };
    if !holds {
        return Err(OreError::Precondition(format!("L is not {kind:?} in R")));
    }
    let multipliers: Vec<SkewPoly<usize>> = a.window(d2)?.iter().map(|t| a.term_poly(t)).collect();
    let candidates: Vec<SkewPoly<usize>> = match kind {
        LiftKind::Uniform => {
            let (space, lat) = a_cap_al(a, l, d1, &[])?;
            let n = lat.size().expect("finite") as usize - 1;
            if n.saturating_mul(n) / 2 > budget {
                return Ok(LiftVerdict::BoundedInconclusive { reason: format!("{n} elements exceed the pair budget {budget}") });
            }
            nonzero_elements(&space, &lat)
        }
        LiftKind::Essential => {
            let space = PolySpace::new(r, a.window(d1)?)?;
            let full = space.r_span(&space.terms().iter().map(|t| a.term_poly(t)).collect::<Vec<_>>())?;
            let n = full.size().expect("finite") as usize - 1;
            if n > budget {
                return Ok(LiftVerdict::BoundedInconclusive { reason: format!("{n} elements exceed the budget {budget}") });
            }
            nonzero_elements(&space, &full)
        }
    };
    let products: Vec<Vec<SkewPoly<usize>>> = candidates
        .par_iter()
        .map(|f| multipliers.iter().map(|m| s.mul(m, f)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut cover: Vec<SkewPoly<usize>> = products.iter().flatten().cloned().collect();
    match kind {
        LiftKind::Uniform => {
            let space = PolySpace::covering(r, cover.iter())?;
            let lats: Vec<Lattice> = products.iter().map(|ps| space.r_span(ps)).collect::<Result<_>>()?;
            let pairs: Vec<(usize, usize)> =
                (0..lats.len()).flat_map(|i| (i + 1..lats.len()).map(move |j| (i, j))).collect();
            let bad = pairs.par_iter().find_first(|&&(i, j)| lats[i].intersection(&lats[j]).is_zero());
            Ok(match bad {
                Some(&(i, j)) => LiftVerdict::Counterexample { f: candidates[i].clone(), g: Some(candidates[j].clone()) },
                None => LiftVerdict::Pass { checked: pairs.len() },
            })
        }
        LiftKind::Essential => {
            let reach = cover.iter().map(|p| p.total_degree()).max().unwrap_or(0);
            let probe = al_generators(a, &a.window(reach)?, l)?;
            cover.extend(probe);
            let (space, target) = a_cap_al(a, l, reach, &cover)?;
            let bad = products.par_iter().position_first(|ps| {
                let m = space.r_span(ps).expect("covered");
                m.intersection(&target).is_zero()
            });
            Ok(match bad {
                Some(i) => LiftVerdict::Counterexample { f: candidates[i].clone(), g: None },
                None => LiftVerdict::Pass { checked: candidates.len() },
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularSlice {
    pub status: Status,
    pub sing_ring: Vec<usize>,
    /// Order of A ∩ sing(R)·T among basis terms of degree ≤ D.
    pub formula_size: u128,
    /// Additive generators a of sing(R) whose annihilator lift was certified essential.
    pub certified_singular: usize,
    /// Elements f outside the formula checked to have (A ∩ A·L) ∩ ann_A(f) = 0.
    pub certified_nonsingular: usize,
    pub failure: Option<String>,
}

fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Bounded check of sing(A) ∩ A_{≤d} = A ∩ sing(R)·T.
///
/// ⊇: for each additive generator a of sing(R), ann_R(a) is essential and its
/// lift A ∩ A·ann_R(a), which annihilates every a·τ, passes the essential lift
/// check at (d1, d2). ⊆: both sides are additive groups, so it suffices to treat
/// f ∉ A ∩ sing(R)·T with p·f inside it for a prime p. For such f, split off the
/// leading part g with coefficients in sing(R), take L' with L' ∩ ann_R(lc) = 0
/// for the next coefficient, and verify that no nonzero h in (A ∩ A·L)_{≤d},
/// L = ann_R(g) ∩ L', has h·f = 0.
pub fn singular_slice_check(a: &Subextension, d: u64, d1: u64, d2: u64, budget: usize) -> Result<SingularSlice> {
    let r = a.ring();
    let s = a.ambient();
    let module = ModuleInstance::regular(r);
    let sing = module.singular_submodule();
    let window = a.window(d)?;
    let mut out = SingularSlice {
        status: Status::Pass,
        sing_ring: sing.to_vec(),
        formula_size: (sing.len() as u128).pow(window.len() as u32),
        certified_singular: 0,
        certified_nonsingular: 0,
        failure: None,
    };
    for b in r.elements().skip(1) {
        let rb = r.left_ideal(&Bits::singleton(b));
        let (_, lat) = a_cap_al(a, &rb, 0, &[])?;
        if lat.is_zero() {
            out.status = Status::SkippedHypothesis;
            out.failure = Some(format!("A ∩ A·R{} = 0", r.format(b)));
            return Ok(out);
        }
    }
    for c in additive_basis(r, &sing) {
        let ann = r.left_annihilator(c);
        if !is_essential_left_ideal(r, &ann) {
            out.status = Status::Fail;
            out.failure = Some(format!("ann({}) is not essential", r.format(c)));
            return Ok(out);
        }
        let (space, lat) = a_cap_al(a, &ann, d, &[])?;
        for v in lat.tail_rows(0) {
            let h = space.decode(&v);
            for t in &window {
                if !s.mul(&h, &SkewPoly::monomial(r, c, t.clone()))?.is_zero() {
                    out.status = Status::Fail;
                    out.failure = Some(format!("{} does not kill {}·{t:?}", s.format(&h), r.format(c)));
                    return Ok(out);
                }
            }
        }
        match lift_ideal_check(a, &ann, LiftKind::Essential, d1, d2, budget)? {
            LiftVerdict::Pass { .. } => out.certified_singular += 1,
            LiftVerdict::Counterexample { f, .. } => {
                out.status = Status::Fail;
                out.failure = Some(format!("lift of ann({}) misses {}", r.format(c), s.format(&f)));
                return Ok(out);
            }
            LiftVerdict::BoundedInconclusive { reason } => {
                out.status = Status::BoundedInconclusive;
                out.failure = Some(reason);
                return Ok(out);
            }
        }
    }
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for p in primes_of(r.characteristic()) {
        let q: Vec<usize> = r.elements().filter(|&c| sing.contains(r.int_mul(p as i64, c))).collect();
        let count = (q.len() as u128).checked_pow(window.len() as u32).unwrap_or(u128::MAX);
        if count > budget as u128 {
            out.status = Status::BoundedInconclusive;
            out.failure = Some(format!("{count} torsion candidates exceed the budget {budget}"));
            return Ok(out);
        }
        candidates.push(q);
    }
    let mut seen = std::collections::HashSet::new();
    let mut fs: Vec<SkewPoly<usize>> = Vec::new();
    for q in &candidates {
        let mut digits = vec![0usize; window.len()];
        loop {
            let mut f = SkewPoly::zero();
            for (t, &i) in window.iter().zip(&digits) {
                f.add_term(r, t.clone(), q[i]);
            }
            if f.iter().any(|(_, c)| !sing.contains(*c)) && seen.insert(f.clone()) {
                fs.push(f);
            }
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < q.len() {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    let results: Vec<Result<Option<String>>> = fs.par_iter().map(|f| nonsingular_certificate(a, f, &sing, d)).collect();
    for (f, res) in fs.iter().zip(results) {
        if let Some(why) = res? {
            out.status = Status::Fail;
            out.failure = Some(format!("{}: {why}", s.format(f)));
            return Ok(out);
        }
        out.certified_nonsingular += 1;
    }
    Ok(out)
}

fn nonsingular_certificate(a: &Subextension, f: &SkewPoly<usize>, sing: &Bits, d: u64) -> Result<Option<String>> {
    let r = a.ring();
    let s = a.ambient();
    let mut g_coeffs = Bits::EMPTY;
    let mut lead = None;
    for (_, c) in f.iter().rev() {
        if sing.contains(*c) {
            g_coeffs.insert(*c);
        } else {
            lead = Some(*c);
            break;
        }
    }
    let lc = lead.expect("f lies outside sing(R)·T");
    let ann_lc = r.left_annihilator(lc);
    let Some(lp) = r
        .elements()
        .skip(1)
        .map(|b| r.left_ideal(&Bits::singleton(b)))
        .find(|rb| rb.intersect(&ann_lc) == Bits::singleton(0))
    else {
        return Ok(Some(format!("ann({}) is essential although {} ∉ sing(R)", r.format(lc), r.format(lc))));
    };
    let l = r.left_annihilator_of(&g_coeffs).intersect(&lp);
    if l == Bits::singleton(0) {
        return Ok(Some("ann_R(g) ∩ L' = 0".into()));
    }
    let (space, lat) = a_cap_al(a, &l, d, &[])?;
    let rows = lat.tail_rows(0);
    let imgs: Vec<SkewPoly<usize>> =
        rows.iter().map(|v| s.mul(&space.decode(v), f)).collect::<Result<_>>()?;
    let target = PolySpace::covering(r, imgs.iter())?;
    let graph: Vec<(Vec<i128>, Vec<i128>)> =
        rows.iter().zip(&imgs).map(|(v, img)| (target.encode(img).unwrap(), v.clone())).collect();
    let ker = kernel(&target.moduli(), &space.moduli(), &graph);
    Ok(ker.tail_rows(0).first().map(|v| format!("{} ∈ A ∩ A·L kills it", s.format(&space.decode(v)))))
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldieReport {
    pub status: Status,
    pub udim_ring: usize,
    pub uniform_lifts: Vec<Status>,
    pub direct_sum: Status,
    pub essential_lift: Status,
    /// Size of the largest independent family of cyclic window ideals found (capped at udim + 1).
    pub largest_family: usize,
    pub detail: Option<String>,
}

/// Goldie sub-checks for A: the uniform ideals of an essential direct sum in R
/// lift to uniform ideals forming a direct sum whose lift is essential, and no
/// udim(R)+1 independent cyclic ideals A_{≤d2}·cτ (c ∈ R, τ of degree ≤ d1) exist.
pub fn goldie_check(a: &Subextension, d1: u64, d2: u64, budget: usize) -> Result<GoldieReport> {
    let r = a.ring();
    let s = a.ambient();
    let module = ModuleInstance::regular(r);
    let ud = module.uniform_dimension(DEFAULT_BUDGET)?;
    let mut report = GoldieReport {
        status: Status::Pass,
        udim_ring: ud.dim,
        uniform_lifts: Vec::new(),
        direct_sum: Status::Pass,
        essential_lift: Status::Pass,
        largest_family: 0,
        detail: None,
    };
    for u in &ud.family {
        let v = lift_ideal_check(a, u, LiftKind::Uniform, d1, d2, budget)?;
        report.status = report.status.and(v.status());
        report.uniform_lifts.push(v.status());
    }
    report.direct_sum = match lift_directsum_check(a, &ud.family, d1)? {
        DirectSumVerdict::Pass { .. } => Status::Pass,
        DirectSumVerdict::Violation { detail } => {
            report.detail = Some(detail);
            Status::Fail
        }
    };
    report.status = report.status.and(report.direct_sum);
    let sum = module.sum_all(ud.family.iter());
    report.essential_lift = lift_ideal_check(a, &sum, LiftKind::Essential, d1, d2, budget)?.status();
    report.status = report.status.and(report.essential_lift);
    let multipliers: Vec<Term> = a.window(d2)?;
    let mut gens: Vec<Vec<SkewPoly<usize>>> = Vec::new();
    for t in a.window(d1)? {
        for c in r.elements().skip(1) {
            let f = SkewPoly::monomial(r, c, t.clone());
            gens.push(multipliers.iter().map(|m| s.mul(&a.term_poly(m), &f)).collect::<Result<_>>()?);
        }
    }
    let space = PolySpace::covering(r, gens.iter().flatten())?;
    let mut lats: Vec<Lattice> = Vec::new();
    for g in &gens {
        let l = space.r_span(g)?;
        if !lats.iter().any(|o| o.same_as(&l)) {
            lats.push(l);
        }
    }
    let goal = ud.dim + 1;
    let mut best = 0;
    independent_search(&lats, goal, &mut Vec::new(), &Lattice::new(space.moduli()), 1, 0, &mut best);
    report.largest_family = best;
    if best >= goal {
        report.status = Status::Fail;
        report.detail = Some(format!("{goal} independent cyclic ideals found"));
    }
    Ok(report)
}

fn independent_search(
    lats: &[Lattice],
    goal: usize,
    chosen: &mut Vec<usize>,
    sum: &Lattice,
    order: u128,
    from: usize,
    best: &mut usize,
) {
    *best = (*best).max(chosen.len());
    if *best >= goal {
        return;
    }
    for i in from..lats.len() {
        let size = lats[i].size().expect("finite");
        let next = sum.sum(&lats[i]);
        if next.size() == Some(order * size) {
            chosen.push(i);
            independent_search(lats, goal, chosen, &next, order * size, i + 1, best);
            chosen.pop();
            if *best >= goal {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::FiniteRing;
    use crate::orecore::SkewPolyRing;
    use std::sync::Arc;

    fn ring(n: u64) -> (FiniteRing, Arc<SkewPolyRing<FiniteRing>>) {
        let r = FiniteRing::zmod(n).unwrap();
        (r.clone(), Arc::new(SkewPolyRing::commutative(r, 1).unwrap()))
    }

    fn ideal(r: &FiniteRing, g: usize) -> Bits {
        r.left_ideal(&Bits::singleton(g))
    }

    #[test]
    fn direct_sums() {
        let (r, s) = ring(6);
        let a = Subextension::whole(s);
        let v = lift_directsum_check(&a, &[ideal(&r, 2), ideal(&r, 3)], 2).unwrap();
        assert_eq!(v, DirectSumVerdict::Pass { sizes: vec![27, 8] });
        let (r12, s12) = ring(12);
        let a12 = Subextension::whole(s12);
        assert!(matches!(lift_directsum_check(&a12, &[ideal(&r12, 4), ideal(&r12, 6)], 2).unwrap(), DirectSumVerdict::Pass { .. }));
        assert!(lift_directsum_check(&a12, &[ideal(&r12, 2), ideal(&r12, 6)], 2).is_err());
        assert!(matches!(lift_directsum_check(&a12, &[ideal(&r12, 3)], 1).unwrap(), DirectSumVerdict::Pass { .. }));
    }

    #[test]
    fn lifts_over_small_rings() {
        let (r, s) = ring(4);
        let a = Subextension::whole(s);
        let two = ideal(&r, 2);
        for kind in [LiftKind::Uniform, LiftKind::Essential] {
            assert!(matches!(lift_ideal_check(&a, &two, kind, 2, 3, 1 << 16).unwrap(), LiftVerdict::Pass { .. }));
        }
        assert!(matches!(
            lift_ideal_check(&a, &Bits::full(4), LiftKind::Essential, 2, 3, 1 << 16).unwrap(),
            LiftVerdict::Pass { .. }
        ));
        assert!(matches!(
            lift_ideal_check(&a, &two, LiftKind::Essential, 2, 3, 10).unwrap(),
            LiftVerdict::BoundedInconclusive { .. }
        ));
        let (r6, s6) = ring(6);
        let a6 = Subextension::whole(s6);
        assert!(matches!(
            lift_ideal_check(&a6, &ideal(&r6, 2), LiftKind::Uniform, 2, 3, 1 << 16).unwrap(),
            LiftVerdict::Pass { .. }
        ));
        assert!(lift_ideal_check(&a6, &ideal(&r6, 2), LiftKind::Essential, 2, 3, 1 << 16).is_err());
    }

    #[test]
    fn truncated_windows_expose_failures() {
        // with D2 = 0 the multipliers are scalars and 1, x0 cannot meet
        let (r, s) = ring(2);
        let a = Subextension::whole(s);
        let v = lift_ideal_check(&a, &Bits::full(2), LiftKind::Uniform, 1, 0, 1 << 16).unwrap();
        assert!(matches!(v, LiftVerdict::Counterexample { .. }));
        let _ = r;
    }

    #[test]
    fn singular_slices() {
        let (_, s) = ring(6);
        let v = singular_slice_check(&Subextension::whole(s), 3, 2, 3, 1 << 16).unwrap();
        assert_eq!((v.status, v.formula_size, v.certified_singular), (Status::Pass, 1, 0));
        assert!(v.certified_nonsingular > 0);
        let (_, s4) = ring(4);
        let v = singular_slice_check(&Subextension::whole(s4), 2, 2, 3, 1 << 16).unwrap();
        assert_eq!((v.status, v.sing_ring.clone(), v.formula_size, v.certified_singular), (Status::Pass, vec![0, 2], 8, 1));
    }

    #[test]
    fn goldie_over_semiprime_rings() {
        for n in [2, 6] {
            let (_, s) = ring(n);
            let g = goldie_check(&Subextension::whole(s), 2, 3, 1 << 16).unwrap();
            assert_eq!(g.status, Status::Pass, "{n}: {g:?}");
            assert_eq!(g.largest_family, g.udim_ring);
        }
    }
}
