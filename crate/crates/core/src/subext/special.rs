//! Special subextensions: stratified subrings with regular special elements
//! λ_m = υ_m·x^m, induced subrings B_m and induced automorphisms α_(m).

use std::collections::BTreeSet;

use crate::coeffring::{CoeffMap, FiniteRing};
use crate::error::{OreError, Result};
use crate::linalg::{kernel, Lattice};
use crate::orecore::{Bijectivity, PolySpace, Regularity, SkewPoly, SkewPolyRing};
use crate::orecore::regularity::regularity_bounded;
use crate::orecore::space::additive_generators;
use crate::termorder::Term;

use super::nice::{nicify_poly, poly_is_nice};
use super::{attainable_degrees, closure_check, coordinate_lattice, Ambient, Closure, Subextension};

const REGULARITY_BUDGET: usize = 4096;
const WORD_CAP: usize = 512;

/// How α_(m) acts on B_m.
#[derive(Clone, Debug)]
pub enum InducedMap {
    /// The restriction of α^m, the m-th power of the conjugation of x.
    ConjugationPower,
    /// Images of the generators of B_m together with the action on scalars.
    Images { coeff: CoeffMap, images: Vec<SkewPoly<usize>> },
}

#[derive(Clone, Debug)]
pub struct SpecialLevel {
    pub m: u32,
    /// υ_m, a polynomial in the variables below x.
    pub upsilon: SkewPoly<usize>,
    /// Generators of B_m as an R-ring.
    pub b_gens: Vec<SkewPoly<usize>>,
    pub alpha: InducedMap,
}

#[derive(Clone, Debug)]
pub struct SpecialData {
    pub d_a: u32,
    pub levels: Vec<SpecialLevel>,
}

impl SpecialData {
    pub fn level(&self, m: u32) -> Option<&SpecialLevel> {
        self.levels.iter().find(|l| l.m == m)
    }

    /// λ_m = υ_m·x^m
    pub fn lambda(&self, s: &SkewPolyRing<FiniteRing>, m: u32) -> Option<SkewPoly<usize>> {
        let k = s.nvars();
        self.level(m).map(|l| l.upsilon.shift(&Term::var(k, k - 1).pow(m)))
    }

    /// The ambient ring over itself: λ_m = x^m, B_m the whole lower ring, α_(m) = α^m.
    pub fn ambient(s: &Ambient, d: u32) -> SpecialData {
        let k = s.nvars();
        let levels = (1..=d)
            .map(|m| SpecialLevel {
                m,
                upsilon: s.one(),
                b_gens: (0..k - 1).map(|j| s.var(j)).collect(),
                alpha: InducedMap::ConjugationPower,
            })
            .collect();
        SpecialData { d_a: 1, levels }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialVerdict {
    Certified { levels: Vec<u32>, bound: u64 },
    Violation { condition: &'static str, detail: String },
    Inconclusive { condition: &'static str, detail: String },
}

/// Products of generators with total degree ≤ `bound`, starting with 1.
pub fn b_words(s: &SkewPolyRing<FiniteRing>, gens: &[SkewPoly<usize>], bound: u64) -> Result<Vec<SkewPoly<usize>>> {
    let mut seen: BTreeSet<SkewPoly<usize>> = BTreeSet::new();
    let mut out = vec![s.one()];
    seen.insert(s.one());
    let mut frontier = vec![s.one()];
    while !frontier.is_empty() && out.len() < WORD_CAP {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                let p = s.mul(w, g)?;
                if p.is_zero() || p.total_degree() > bound || !seen.insert(p.clone()) {
                    continue;
                }
                out.push(p.clone());
                next.push(p);
            }
        }
        frontier = next;
    }
    Ok(out)
}

fn is_lower(f: &SkewPoly<usize>, x: usize) -> bool {
    f.max_var().is_none_or(|j| j < x)
}

fn induced(
    s: &SkewPolyRing<FiniteRing>,
    level: &SpecialLevel,
    x: usize,
    g: Gen,
) -> Result<SkewPoly<usize>> {
    let r = s.coeff_ring();
    match (&level.alpha, g) {
        (InducedMap::ConjugationPower, Gen::Poly(i)) => s.apply_power_endo(x, level.m as u64, &level.b_gens[i]),
        (InducedMap::ConjugationPower, Gen::Scalar(c)) => s.apply_power_endo(x, level.m as u64, &s.constant(c)),
        (InducedMap::Images { images, .. }, Gen::Poly(i)) => Ok(images[i].clone()),
        (InducedMap::Images { coeff, .. }, Gen::Scalar(c)) => Ok(s.constant(coeff.apply(r, &c))),
    }
}

#[derive(Clone, Copy)]
enum Gen {
    Poly(usize),
    Scalar(usize),
}

fn in_span(r: &FiniteRing, gens: &[SkewPoly<usize>], f: &SkewPoly<usize>) -> Result<bool> {
    let space = PolySpace::covering(r, gens.iter().chain(std::iter::once(f)))?;
    Ok(space.r_span(gens)?.contains(&space.encode(f).unwrap()))
}

fn regular(s: &SkewPolyRing<FiniteRing>, f: &SkewPoly<usize>, d: u64) -> Result<Option<bool>> {
    match regularity_bounded(s, f, d, REGULARITY_BUDGET) {
        Ok(Regularity::ZeroDivisor { .. }) => Ok(Some(false)),
        Ok(_) => Ok(Some(true)),
        Err(OreError::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Checks the defining conditions of a special subextension up to `d`: the span
/// is a subring (hence stratified by x-degree), the attainable degrees form
/// d_A·ℕ, and for every attainable m ≤ d the special element is in A and regular,
/// B_m ⊆ A, deg_x(λ_m p − α_(m)(p)λ_m) < m on generators p of B_m and on scalars,
/// α_(m) maps B_m onto itself, and every q·x^m ∈ A with q an additive generator of
/// its stratum has a regular u ∈ B_m with u·q·x^m ∈ B_m·λ_m.
pub fn certify_special(a: &Subextension, data: &SpecialData, d: u64) -> Result<SpecialVerdict> {
    use SpecialVerdict::*;
    let s = a.ambient();
    let r = a.ring();
    let x = a.x_var();
    if let Closure::Violation { left, right, offending, .. } = closure_check(a, d)? {
        return Ok(Violation {
            condition: "stratified subring",
            detail: format!("{left:?}·{right:?} has the term {offending:?} outside the span"),
        });
    }
    let att = attainable_degrees(a, d as u32)?;
    if att.d_a != data.d_a {
        return Ok(Violation {
            condition: "degree progression",
            detail: format!("gcd of attainable degrees is {}, data says {}", att.d_a, data.d_a),
        });
    }
    if att.d_a > 0 {
        if let Some(m) = (0..=d as u32).step_by(att.d_a as usize).find(|m| !att.degrees.contains(m)) {
            return Ok(Violation { condition: "degree progression", detail: format!("x-degree {m} is not attained") });
        }
    }
    let units = additive_generators(r)?;
    let mut certified = Vec::new();
    for &m in att.degrees.iter().filter(|&&m| m > 0) {
        let level = data
            .level(m)
            .ok_or_else(|| OreError::IncompleteData(format!("no special data for x-degree {m}")))?;
        if !is_lower(&level.upsilon, x) || level.b_gens.iter().any(|g| !is_lower(g, x)) {
            return Err(OreError::Precondition(format!("level {m}: υ and B_m must avoid x")));
        }
        let lambda = data.lambda(s, m).unwrap();
        if level.upsilon.is_zero() || !a.contains(&lambda)? {
            return Ok(Violation { condition: "special element", detail: format!("λ_{m} = {} ∉ A", s.format(&lambda)) });
        }
        match regular(s, &level.upsilon, d)? {
            Some(true) => {}
            Some(false) => {
                return Ok(Violation {
                    condition: "special element",
                    detail: format!("υ_{m} = {} is a zero divisor", s.format(&level.upsilon)),
                })
            }
            None => {
                return Ok(Inconclusive { condition: "special element", detail: format!("regularity of υ_{m}") })
            }
        }
        for g in &level.b_gens {
            if !a.contains(g)? {
                return Ok(Violation { condition: "induced subring", detail: format!("{} ∉ A", s.format(g)) });
            }
        }
        if let InducedMap::Images { images, .. } = &level.alpha {
            if images.len() != level.b_gens.len() {
                return Err(OreError::IncompleteData(format!("level {m}: one image per B_m generator")));
            }
        }
        let gens: Vec<Gen> =
            (0..level.b_gens.len()).map(Gen::Poly).chain(r.elements().map(Gen::Scalar)).collect();
        for &g in &gens {
            let p = match g {
                Gen::Poly(i) => level.b_gens[i].clone(),
                Gen::Scalar(c) => s.constant(c),
            };
            let ap = induced(s, level, x, g)?;
            let defect = s.sub(&s.mul(&lambda, &p)?, &s.mul(&ap, &lambda)?);
            if !defect.is_zero() && defect.deg_var(x) >= m {
                return Ok(Violation {
                    condition: "commutation defect",
                    detail: format!("λ_{m}·p − α_(m)(p)·λ_{m} = {} for p = {}", s.format(&defect), s.format(&p)),
                });
            }
        }
        let images: Vec<SkewPoly<usize>> =
            (0..level.b_gens.len()).map(|i| induced(s, level, x, Gen::Poly(i))).collect::<Result<_>>()?;
        let reach = images.iter().map(|p| p.total_degree()).max().unwrap_or(0).max(d);
        let words = b_words(s, &level.b_gens, reach)?;
        for (g, img) in level.b_gens.iter().zip(&images) {
            if !in_span(r, &words, img)? {
                return Ok(Violation {
                    condition: "induced automorphism",
                    detail: format!("α_(m)({}) = {} leaves B_{m}", s.format(g), s.format(img)),
                });
            }
        }
        let onto = match &level.alpha {
            InducedMap::ConjugationPower => match s.certify_bijective(x, 64)? {
                Bijectivity::Uncertified { .. } => false,
                Bijectivity::FiniteOrder(n) => {
                    // α^{-m} = α^{m(n−1)}: its images must stay in B_m as well
                    let mut ok = true;
                    for g in &level.b_gens {
                        let inv = s.apply_power_endo(x, m as u64 * (n - 1), g)?;
                        ok &= in_span(r, &b_words(s, &level.b_gens, inv.total_degree().max(d))?, &inv)?;
                    }
                    ok
                }
                Bijectivity::Inverse => true,
            },
            InducedMap::Images { .. } => {
                let back = b_words(s, &images, reach)?;
                let mut ok = true;
                for g in &level.b_gens {
                    ok &= in_span(r, &back, g)?;
                }
                ok
            }
        };
        if !onto {
            return Ok(Inconclusive { condition: "induced automorphism", detail: format!("surjectivity of α_({m})") });
        }
        if let Some(v) = absorption(a, level, &units, d)? {
            return Ok(v);
        }
        certified.push(m);
    }
    Ok(Certified { levels: certified, bound: d })
}

fn absorption(a: &Subextension, level: &SpecialLevel, units: &[usize], d: u64) -> Result<Option<SpecialVerdict>> {
    let s = a.ambient();
    let r = a.ring();
    let x = a.x_var();
    let m = level.m;
    let words = b_words(s, &level.b_gens, 2 * d)?;
    let targets: Vec<SkewPoly<usize>> = words.iter().map(|w| s.mul(w, &level.upsilon)).collect::<Result<_>>()?;
    let mut regular_words: Vec<(usize, bool)> = Vec::new();
    let strata: Vec<Term> = a.window_by_x(m, d)?.into_iter().filter(|t| t.deg(x) == m).collect();
    for t in strata {
        let sigma = t.below(x);
        for &u in units {
            let q = SkewPoly::monomial(r, u, sigma.clone());
            let mut found = false;
            for (i, w) in words.iter().enumerate() {
                let wq = s.mul(w, &q)?;
                if wq.is_zero() || !in_span(r, &targets, &wq)? {
                    continue;
                }
                let reg = match regular_words.iter().find(|(j, _)| *j == i) {
                    Some(&(_, b)) => b,
                    None => {
                        let b = regular(s, w, d)?.unwrap_or(false);
                        regular_words.push((i, b));
                        b
                    }
                };
                if reg {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(Some(SpecialVerdict::Inconclusive {
                    condition: "absorption",
                    detail: format!("no regular u ∈ B_{m} up to degree {} absorbs {}", 2 * d, s.format(&q.shift(&Term::var(s.nvars(), x).pow(m)))),
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceDegree {
    Found { poly: SkewPoly<usize>, word: SkewPoly<usize>, c: usize, path: String },
    NotFound { searched: usize },
}

/// Looks for a nice polynomial of x-degree d_A in A·a among c·w·λ_{d_A}·a with w
/// a word in the generators of B_{d_A} of degree ≤ d and c a nicifying scalar.
pub fn find_nice_degree(a: &Subextension, data: &SpecialData, coeff: usize, d: u64) -> Result<NiceDegree> {
    let s = a.ambient();
    let r = a.ring();
    let x = a.x_var();
    if coeff == 0 {
        return Err(OreError::Precondition("a must be nonzero".into()));
    }
    let da = data.d_a;
    if da == 0 {
        return Err(OreError::Precondition("d_A = 0: no x-degree to reach".into()));
    }
    let level = data.level(da).ok_or_else(|| OreError::IncompleteData(format!("no special data for {da}")))?;
    let lambda = data.lambda(s, da).unwrap();
    let la = s.mul(&lambda, &s.constant(coeff))?;
    let words = b_words(s, &level.b_gens, d)?;
    for w in &words {
        let f = s.mul(w, &la)?;
        if f.is_zero() || f.deg_var(x) != da {
            continue;
        }
        let wname = if *w == s.one() { String::new() } else { format!("({})·", s.format(w)) };
        if poly_is_nice(r, &f) {
            return Ok(NiceDegree::Found { poly: f, word: w.clone(), c: r.one(), path: format!("{wname}λ·a") });
        }
        let (c, cf) = nicify_poly(r, &f)?;
        if !cf.is_zero() && cf.deg_var(x) == da {
            return Ok(NiceDegree::Found {
                poly: cf,
                word: w.clone(),
                c,
                path: format!("{}·{wname}λ·a", r.format(c)),
            });
        }
    }
    Ok(NiceDegree::NotFound { searched: words.len() })
}

/// I_{m,n} ∩ B_m-window: the p in the span of B_m-words of degree ≤ d with
/// p·λ_m^n ≡ (element of I) modulo x-degree < nm.
#[derive(Clone, Debug)]
pub struct IdealSlice {
    pub m: u32,
    pub n: u32,
    pub generators: Vec<SkewPoly<usize>>,
    pub size: u128,
    pub bound: u64,
    space: PolySpace,
    lattice: Lattice,
}

impl IdealSlice {
    pub fn contains(&self, p: &SkewPoly<usize>) -> bool {
        self.space.encode(p).is_some_and(|v| self.lattice.contains(&v))
    }
}

/// The two-sided ideal of A generated by `gens`, truncated to the R-span of
/// a·g·(u·b) with a, b basis terms of total degree adding up to ≤ d.
pub fn ideal_window(a: &Subextension, gens: &[SkewPoly<usize>], d: u64) -> Result<Vec<SkewPoly<usize>>> {
    let s = a.ambient();
    let r = a.ring();
    let terms = a.window(d)?;
    let units = additive_generators(r)?;
    let mut out = Vec::new();
    for l in &terms {
        for g in gens {
            let lg = s.mul(&a.term_poly(l), g)?;
            for rt in terms.iter().filter(|t| t.total_degree() + l.total_degree() <= d) {
                for &u in &units {
                    let p = s.mul(&lg, &SkewPoly::monomial(r, u, rt.clone()))?;
                    if !p.is_zero() {
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn ideal_slice(
    a: &Subextension,
    data: &SpecialData,
    gens: &[SkewPoly<usize>],
    m: u32,
    n: u32,
    d: u64,
) -> Result<IdealSlice> {
    let s = a.ambient();
    let r = a.ring();
    let x = a.x_var();
    let top = m * n;
    if d < top as u64 {
        return Err(OreError::InvalidParams(format!("D = {d} is below nm = {top}")));
    }
    let level = data.level(m).ok_or_else(|| OreError::IncompleteData(format!("no special data for {m}")))?;
    let lambda = data.lambda(s, m).unwrap();
    let rho = s.pow(&lambda, n)?;
    let lead_of = |f: &SkewPoly<usize>| -> SkewPoly<usize> {
        let mut out = SkewPoly::zero();
        for (t, c) in f.stratum(x, top).iter() {
            out.add_term(r, t.below(x), *c);
        }
        out
    };
    let c_rho = lead_of(&rho);
    let window = ideal_window(a, gens, d)?;
    let ispace = PolySpace::covering(r, window.iter())?;
    let low = coordinate_lattice(&ispace, r, |t| Ok(t.deg(x) <= top))?;
    let bounded = ispace.r_span(&window)?.intersection(&low);
    let pi: Vec<SkewPoly<usize>> = bounded.tail_rows(0).iter().map(|v| lead_of(&ispace.decode(v))).collect();
    let words = b_words(s, &level.b_gens, d)?;
    let images: Vec<SkewPoly<usize>> = words.iter().map(|w| s.mul(w, &c_rho)).collect::<Result<_>>()?;
    let bspace = PolySpace::covering(r, words.iter())?;
    let blat = bspace.r_span(&words)?;
    let brows: Vec<Vec<i128>> = blat.tail_rows(0);
    let bpolys: Vec<SkewPoly<usize>> = brows.iter().map(|v| bspace.decode(v)).collect();
    let bimgs: Vec<SkewPoly<usize>> = bpolys.iter().map(|p| s.mul(p, &c_rho)).collect::<Result<_>>()?;
    let tspace = PolySpace::covering(r, pi.iter().chain(&bimgs).chain(&images))?;
    let zero = vec![0i128; bspace.dim()];
    let mut graph: Vec<(Vec<i128>, Vec<i128>)> =
        brows.iter().zip(&bimgs).map(|(v, img)| (tspace.encode(img).unwrap(), v.clone())).collect();
    graph.extend(pi.iter().map(|p| (tspace.encode(p).unwrap(), zero.clone())));
    let lattice = kernel(&tspace.moduli(), &bspace.moduli(), &graph);
    let generators = lattice.tail_rows(0).iter().map(|v| bspace.decode(v)).collect();
    Ok(IdealSlice { m, n, generators, size: lattice.size().expect("finite"), bound: d, space: bspace, lattice })
}

/// Slices I_{m,1..=n_max} with the monotonicity and α_(m)-stability checks:
/// returns (slices, monotone, alpha_stable).
pub fn slice_chain(
    a: &Subextension,
    data: &SpecialData,
    gens: &[SkewPoly<usize>],
    m: u32,
    n_max: u32,
    d: u64,
) -> Result<(Vec<IdealSlice>, bool, bool)> {
    let s = a.ambient();
    let x = a.x_var();
    let slices: Vec<IdealSlice> = (1..=n_max).map(|n| ideal_slice(a, data, gens, m, n, d)).collect::<Result<_>>()?;
    let monotone = slices.windows(2).all(|w| w[0].generators.iter().all(|p| w[1].contains(p)));
    let conj = matches!(data.level(m).map(|l| &l.alpha), Some(InducedMap::ConjugationPower));
    let mut stable = true;
    if conj {
        for (i, sl) in slices.iter().enumerate() {
            for (j, later) in slices.iter().enumerate().skip(i + 1) {
                let k = (j - i) as u64;
                for p in &sl.generators {
                    let img = s.apply_power_endo(x, m as u64 * k, p)?;
                    stable &= later.contains(&img) || !later.space.contains_support(&img);
                }
            }
        }
    }
    Ok((slices, monotone, stable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subext::Subextension;
    use std::sync::Arc;

    fn poly_ring(n: u64, k: usize) -> Ambient {
        Arc::new(SkewPolyRing::commutative(FiniteRing::zmod(n).unwrap(), k).unwrap())
    }

    #[test]
    fn ambient_is_special() {
        for (n, k) in [(4, 1), (6, 2)] {
            let s = poly_ring(n, k);
            let a = Subextension::whole(s.clone());
            let v = certify_special(&a, &SpecialData::ambient(&s, 4), 4).unwrap();
            assert_eq!(v, SpecialVerdict::Certified { levels: vec![1, 2, 3, 4], bound: 4 });
        }
    }

    #[test]
    fn unclosed_span_is_rejected() {
        let s = poly_ring(5, 1);
        let t = |e: &str| Term::parse(e, 1).unwrap();
        let a = Subextension::explicit("1,x^2", s.clone(), [t("1"), t("x0^2")], 8).unwrap();
        let v = certify_special(&a, &SpecialData::ambient(&s, 4), 4).unwrap();
        assert!(matches!(v, SpecialVerdict::Violation { condition: "stratified subring", .. }), "{v:?}");
    }

    #[test]
    fn missing_level_is_reported() {
        let s = poly_ring(4, 1);
        let a = Subextension::whole(s.clone());
        let data = SpecialData::ambient(&s, 2);
        assert!(matches!(certify_special(&a, &data, 4), Err(OreError::IncompleteData(_))));
    }

    #[test]
    fn zero_divisor_upsilon_is_rejected() {
        let s = poly_ring(4, 1);
        let a = Subextension::whole(s.clone());
        let mut data = SpecialData::ambient(&s, 3);
        data.levels[1].upsilon = s.constant(2);
        let v = certify_special(&a, &data, 3).unwrap();
        assert!(matches!(v, SpecialVerdict::Violation { condition: "special element", .. }), "{v:?}");
    }

    #[test]
    fn nice_degree_in_ambient() {
        let s = poly_ring(6, 1);
        let a = Subextension::whole(s.clone());
        let data = SpecialData::ambient(&s, 3);
        match find_nice_degree(&a, &data, 5, 3).unwrap() {
            NiceDegree::Found { poly, .. } => assert_eq!(poly, s.parse("5*x0").unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn slices_of_principal_ideals() {
        let s = poly_ring(4, 1);
        let a = Subextension::whole(s.clone());
        let data = SpecialData::ambient(&s, 4);
        let lam = data.lambda(&s, 1).unwrap();
        let sl = ideal_slice(&a, &data, &[lam], 1, 1, 3).unwrap();
        assert!(sl.contains(&s.one()));
        let zero = ideal_slice(&a, &data, &[], 1, 2, 3).unwrap();
        assert_eq!(zero.size, 1);
        let (chain, monotone, stable) = slice_chain(&a, &data, &[s.parse("2*x0").unwrap()], 1, 3, 4).unwrap();
        assert!(monotone && stable);
        assert!(chain[0].contains(&s.constant(2)) && !chain[0].contains(&s.one()));
    }
}
