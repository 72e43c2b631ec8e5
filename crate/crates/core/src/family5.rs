//! The family R[x][y; α] over R = Z/p^{r+1} with α(x) = x + p·x^e, the degree
//! bounds S_m, r̂, S̄_m, the term sets T̃ and sT, and the nicely-essential
//! witnesses that make span(sT) a strongly nicely essential subring.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeffring::{CoeffMap, FiniteRing};
use crate::error::{OreError, Result};
use crate::orecore::bcoef::{s_m, BcoefTable};
use crate::orecore::padic::{is_prime, padic_margin};
use crate::orecore::{alpha_power_closed, SkewPoly, SkewPolyRing, VarData};
use crate::subext::{Ambient, InducedMap, SpecialData, SpecialLevel, Subextension};
use crate::termorder::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Family5Params {
    pub p: u64,
    pub r: u64,
    pub e: u64,
    pub c: u64,
    pub d: u64,
}

impl Family5Params {
    /// Validates p prime, e ≥ 2, r ≥ 1, c, d ≥ 1 and d | e − 1. The family wants
    /// r ≥ 2; r = 1 is accepted with a warning.
    pub fn new(p: u64, r: u64, e: u64, c: u64, d: u64) -> Result<Family5Params> {
        if !is_prime(p) {
            return Err(OreError::InvalidParams(format!("p = {p} is not prime")));
        }
        if e < 2 || r < 1 || c < 1 || d < 1 {
            return Err(OreError::InvalidParams(format!("need e ≥ 2, r ≥ 1, c, d ≥ 1; got e={e} r={r} c={c} d={d}")));
        }
        if !(e - 1).is_multiple_of(d) {
            return Err(OreError::InvalidParams(format!("d = {d} does not divide e − 1 = {}", e - 1)));
        }
        match p.checked_pow(r as u32 + 1) {
            Some(q) if q <= 256 => {}
            _ => {
                return Err(OreError::InvalidParams(format!(
                    "p^(r+1) = {p}^{} is too large for the finite-ring tables; the smallest instance is p=2, r=1",
                    r + 1
                )))
            }
        }
        Ok(Family5Params { p, r, e, c, d })
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.r == 1 {
            vec!["r = 1 lies outside the family's range r ≥ 2".into()]
        } else {
            vec![]
        }
    }

    /// p^r, the order of α.
    pub fn pr(&self) -> u64 {
        self.p.pow(self.r as u32)
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.r as u32 + 1)
    }

    pub fn s(&self, m: u64) -> u64 {
        s_m(self.e, m)
    }

    /// The unique r̂ with c·S_{r̂−1} ≤ r < c·S_{r̂}.
    pub fn r_hat(&self) -> u64 {
        let mut m = 1;
        while self.c * self.s(m) <= self.r {
            m += 1;
        }
        assert!(self.c * self.s(m - 1) <= self.r && self.r < self.c * self.s(m));
        m
    }

    pub fn s_bar(&self, m: u64) -> u64 {
        let rh = self.r_hat();
        if m <= rh {
            self.c * self.s(m)
        } else {
            let s = m - rh;
            self.c * (s + self.s(rh)) + s * self.r * (self.e - 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub s: Vec<u64>,
    pub r_hat: u64,
    pub s_bar: Vec<u64>,
}

/// S_m and S̄_m for m = 0..=upto, with r̂.
pub fn bounds(params: &Family5Params, upto: u64) -> Bounds {
    let s: Vec<u64> = (0..=upto).map(|m| params.s(m)).collect();
    assert_eq!(s[0], 0);
    for m in 0..upto as usize {
        assert_eq!(s[m + 1], 1 + s[m] * params.e);
    }
    Bounds { s, r_hat: params.r_hat(), s_bar: (0..=upto).map(|m| params.s_bar(m)).collect() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermSet {
    /// x^n y^m with n − cm ∈ dℤ
    Tilde,
    /// x^n y^m with n − cm ∈ dℕ and n ≤ S̄_m
    Bar,
}

pub fn in_term_set(n: u64, m: u64, params: &Family5Params, which: TermSet) -> bool {
    let diff = n as i128 - (params.c * m) as i128;
    match which {
        TermSet::Tilde => diff.rem_euclid(params.d as i128) == 0,
        TermSet::Bar => diff >= 0 && diff % params.d as i128 == 0 && n <= params.s_bar(m),
    }
}

fn exps(t: &Term) -> (u64, u64) {
    (t.deg(0) as u64, t.deg(1) as u64)
}

pub fn xy(n: u64, m: u64) -> Term {
    Term::from_exps(vec![n as u32, m as u32])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCertificate {
    pub order: u64,
    /// α^{p^r}(x) = x
    pub fixes_x: bool,
    /// α^{p^{r−1}}(x) ≠ x
    pub proper: bool,
}

impl OrderCertificate {
    pub fn holds(&self) -> bool {
        self.fixes_x && self.proper
    }
}

#[derive(Clone, Debug)]
pub struct Family5 {
    pub params: Family5Params,
    pub ring: Ambient,
    pub order: OrderCertificate,
}

fn ring_with(r: &FiniteRing, image: SkewPoly<usize>, inverse: Option<SkewPoly<usize>>) -> Result<SkewPolyRing<FiniteRing>> {
    let x = VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: vec![],
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![],
        inverse: None,
    };
    let y = VarData {
        alpha_coeff: CoeffMap::Identity,
        alpha_images: vec![image],
        delta_coeff: CoeffMap::Zero,
        delta_images: vec![SkewPoly::zero()],
        inverse: inverse.map(|i| (CoeffMap::Identity, vec![i])),
    };
    SkewPolyRing::new(r.clone(), vec![x, y])
}

/// R[x][y; α] over Z/p^{r+1}, α(x) = x + p·x^e, δ = 0, with the order of α
/// certified by substitution and α^{p^r − 1}(x) supplied as the inverse.
pub fn build_family5(params: &Family5Params) -> Result<Family5> {
    let r = FiniteRing::zmod(params.modulus())?;
    let x = SkewPoly::term(&r, xy(1, 0));
    let mut image = x.clone();
    image.add_term(&r, xy(params.e, 0), params.p as usize);
    let plain = ring_with(&r, image.clone(), None)?;
    let pr = params.pr();
    let fixes_x = plain.apply_power_endo(1, pr, &x)? == x;
    let proper = plain.apply_power_endo(1, pr / params.p, &x)? != x;
    let inverse = plain.apply_power_endo(1, pr - 1, &x)?;
    let ring = Arc::new(ring_with(&r, image, Some(inverse))?);
    Ok(Family5 { params: *params, ring, order: OrderCertificate { order: pr, fixes_x, proper } })
}

impl Family5 {
    pub fn term(&self, n: u64, m: u64) -> SkewPoly<usize> {
        SkewPoly::term(self.ring.coeff_ring(), xy(n, m))
    }

    /// A = span(sT)
    pub fn bar_subext(&self) -> Subextension {
        let p = self.params;
        Subextension::predicate("family5-bar", self.ring.clone(), move |t| {
            let (n, m) = exps(t);
            in_term_set(n, m, &p, TermSet::Bar)
        })
        .expect("1 ∈ sT")
    }

    /// Ã = span(T̃)
    pub fn tilde_subext(&self) -> Subextension {
        let p = self.params;
        Subextension::predicate("family5-tilde", self.ring.clone(), move |t| {
            let (n, m) = exps(t);
            in_term_set(n, m, &p, TermSet::Tilde)
        })
        .expect("1 ∈ T̃")
    }

    /// Special data for Ã: λ_m = x^{cm} y^m, B_m = R[x^d], α_(m) = α^m.
    pub fn tilde_special_data(&self, upto: u32) -> SpecialData {
        let p = self.params;
        let levels = (1..=upto)
            .map(|m| SpecialLevel {
                m,
                upsilon: self.term(p.c * m as u64, 0),
                b_gens: vec![self.term(p.d, 0)],
                alpha: InducedMap::ConjugationPower,
            })
            .collect();
        SpecialData { d_a: 1, levels }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CentralVerdict {
    Pass { checked: usize },
    Violation { central: String, against: String },
}

/// Checks that x^{p^r} and y^{p^r} commute with every term of total degree ≤ d
/// and with the additive generators of R.
pub fn central_check(f: &Family5, d: u64) -> Result<CentralVerdict> {
    let s = &f.ring;
    let r = s.coeff_ring();
    let pr = f.params.pr();
    let mut checked = 0;
    let mut against: Vec<SkewPoly<usize>> = s.terms_up_to(d).into_iter().map(|t| SkewPoly::term(r, t)).collect();
    against.extend(crate::orecore::space::additive_generators(r)?.into_iter().map(|a| s.constant(a)));
    for z in [f.term(pr, 0), f.term(0, pr)] {
        for g in &against {
            if s.mul(&z, g)? != s.mul(g, &z)? {
                return Ok(CentralVerdict::Violation { central: s.format(&z), against: s.format(g) });
            }
            checked += 1;
        }
    }
    Ok(CentralVerdict::Pass { checked })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub left: String,
    pub right: String,
    pub product: String,
    /// A term of the product outside sT, if any.
    pub offending: Option<String>,
    /// Largest x-exponent in the product.
    pub max_x: u64,
    /// N = S̄_m + S̄_{m′} + min(r, S_m·S̄_{m′})(e−1)
    pub bound: u64,
    pub s_bar_sum: u64,
}

impl PairReport {
    pub fn holds(&self) -> bool {
        self.offending.is_none() && self.max_x <= self.bound && self.bound <= self.s_bar_sum
    }
}

/// Expands λ·τ for λ, τ ∈ sT and checks the product terms and the exponent bound.
pub fn closure_pair(f: &Family5, lambda: &Term, tau: &Term) -> Result<PairReport> {
    let p = &f.params;
    let (n, m) = exps(lambda);
    let (n2, m2) = exps(tau);
    for (a, b) in [(n, m), (n2, m2)] {
        if !in_term_set(a, b, p, TermSet::Bar) {
            return Err(OreError::Precondition(format!("x^{a} y^{b} is not in sT")));
        }
    }
    let s = &f.ring;
    let prod = s.mul(&f.term(n, m), &f.term(n2, m2))?;
    let offending = prod.support().find(|t| {
        let (a, b) = exps(t);
        !in_term_set(a, b, p, TermSet::Bar)
    });
    let max_x = prod.support().map(|t| t.deg(0) as u64).max().unwrap_or(0);
    Ok(PairReport {
        left: s.format(&f.term(n, m)),
        right: s.format(&f.term(n2, m2)),
        product: s.format(&prod),
        offending: offending.map(|t| format!("{t:?}")),
        max_x,
        bound: pair_bound(p, m, m2),
        s_bar_sum: p.s_bar(m + m2),
    })
}

pub fn pair_bound(p: &Family5Params, m: u64, m2: u64) -> u64 {
    p.s_bar(m) + p.s_bar(m2) + p.r.min(p.s(m) * p.s_bar(m2)) * (p.e - 1)
}

/// All sT terms with y-degree ≤ max_m.
pub fn bar_terms(p: &Family5Params, max_m: u64) -> Vec<Term> {
    (0..=max_m)
        .flat_map(|m| (0..=p.s_bar(m)).filter(move |&n| in_term_set(n, m, p, TermSet::Bar)).map(move |n| xy(n, m)))
        .collect()
}

/// closure_pair over every pair of sT terms with m + m′ ≤ max_m. Returns the
/// number of pairs or the first failing report.
pub fn closure_sweep(f: &Family5, max_m: u64) -> Result<std::result::Result<usize, PairReport>> {
    use rayon::prelude::*;
    let terms = bar_terms(&f.params, max_m);
    let pairs: Vec<(&Term, &Term)> = terms
        .iter()
        .flat_map(|a| terms.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.deg(1) + b.deg(1) <= max_m as u32)
        .collect();
    let reports: Vec<PairReport> = pairs.par_iter().map(|(a, b)| closure_pair(f, a, b)).collect::<Result<_>>()?;
    Ok(match reports.into_iter().find(|r| !r.holds()) {
        Some(bad) => Err(bad),
        None => Ok(pairs.len()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessCase {
    /// τ ∈ sT already
    InBar,
    /// n − cm = kd > 0 and n > S̄_m
    Above { k: u64, a: u64 },
    /// n − cm = −kd < 0
    Below { k: u64, b: u64, s: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeWitness {
    pub tau: (u64, u64),
    pub upsilon: (u64, u64),
    pub product: (u64, u64),
    pub case: WitnessCase,
    /// υ ∈ sT ∩ T(x^{p^r}, y^{p^r}) and the expanded υ·τ is a single sT term.
    pub verified: bool,
}

/// The explicit υ_τ ∈ sT ∩ T(x^{p^r}, y^{p^r}) with υ_τ·τ ∈ sT for τ ∈ T̃.
pub fn ne_witness(f: &Family5, tau: &Term) -> Result<NeWitness> {
    let p = &f.params;
    let (n, m) = exps(tau);
    if !in_term_set(n, m, p, TermSet::Tilde) {
        return Err(OreError::Precondition(format!("x^{n} y^{m} is not in T̃")));
    }
    let pr = p.pr();
    let rh = p.r_hat();
    let (case, upsilon) = if in_term_set(n, m, p, TermSet::Bar) {
        (WitnessCase::InBar, (0, 0))
    } else if n >= p.c * m {
        let k = (n - p.c * m) / p.d;
        // a = ⌈(k/r + r̂)/p^r⌉
        let a = (k + rh * p.r).div_ceil(p.r * pr).max(1);
        (WitnessCase::Above { k, a }, (p.c * a * pr, a * pr))
    } else {
        let k = (p.c * m - n) / p.d;
        let (b, s) = (k + rh, k);
        (WitnessCase::Below { k, b, s }, ((p.c * b + s * p.d) * pr, b * pr))
    };
    let prod = f.ring.mul(&f.term(upsilon.0, upsilon.1), &f.term(n, m))?;
    let product = (n + upsilon.0, m + upsilon.1);
    let verified = upsilon.0 % pr == 0
        && upsilon.1 % pr == 0
        && in_term_set(upsilon.0, upsilon.1, p, TermSet::Bar)
        && prod == f.term(product.0, product.1)
        && in_term_set(product.0, product.1, p, TermSet::Bar);
    Ok(NeWitness { tau: (n, m), upsilon, product, case, verified })
}

/// One central witness for a finite set of T̃ terms: the product of the
/// per-term witnesses, checked against every member.
pub fn set_witness(f: &Family5, taus: &[Term]) -> Result<Option<(u64, u64)>> {
    let mut up = (0, 0);
    for t in taus {
        let w = ne_witness(f, t)?;
        if !w.verified {
            return Ok(None);
        }
        up = (up.0 + w.upsilon.0, up.1 + w.upsilon.1);
    }
    let u = f.term(up.0, up.1);
    for t in taus {
        let prod = f.ring.mul(&u, &SkewPoly::term(f.ring.coeff_ring(), t.clone()))?;
        let ok = prod.len() == 1 && prod.support().all(|s| in_term_set(s.deg(0) as u64, s.deg(1) as u64, &f.params, TermSet::Bar));
        if !ok {
            return Ok(None);
        }
    }
    Ok(Some(up))
}

/// All T̃ terms x^n y^m with n, m ≤ max_exp.
pub fn tilde_terms(p: &Family5Params, max_exp: u64) -> Vec<Term> {
    (0..=max_exp)
        .flat_map(|m| (0..=max_exp).filter(move |&n| in_term_set(n, m, p, TermSet::Tilde)).map(move |n| xy(n, m)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityCase {
    BothLow,
    BothHigh,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityFailure {
    pub params: (u64, u64, u64),
    pub m: u64,
    pub m2: u64,
    pub case: InequalityCase,
    pub what: &'static str,
}

/// S̄ is increasing and N(m, m′) ≤ S̄_{m+m′} for all m, m′ ≤ max_m, for every
/// (e, c, r) in the grid. Case labels follow m + m′ ≤ r̂, m, m′ ≥ r̂, or neither.
pub fn inequality_sweep(grid: &[(u64, u64, u64)], max_m: u64) -> std::result::Result<usize, InequalityFailure> {
    let mut checked = 0;
    for &(e, c, r) in grid {
        let p = Family5Params { p: 2, r, e, c, d: 1 };
        let rh = p.r_hat();
        for m in 0..=max_m {
            for m2 in 0..=max_m {
                let case = if m + m2 <= rh {
                    InequalityCase::BothLow
                } else if m >= rh && m2 >= rh {
                    InequalityCase::BothHigh
                } else {
                    InequalityCase::Mixed
                };
                if p.s_bar(m + 1) <= p.s_bar(m) {
                    return Err(InequalityFailure { params: (e, c, r), m, m2, case, what: "S̄ not increasing" });
                }
                if pair_bound(&p, m, m2) > p.s_bar(m + m2) {
                    return Err(InequalityFailure { params: (e, c, r), m, m2, case, what: "N exceeds S̄_{m+m′}" });
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// v_p(C(p^r, n)·p^n) ≥ r + 1 and Legendre's identity for all 1 ≤ n ≤ p^r.
pub fn valuation_sweep(primes: &[u64], rs: &[u32]) -> Result<std::result::Result<usize, (u64, u32, u64)>> {
    let mut checked = 0;
    for &p in primes {
        for &r in rs {
            for n in 1..=p.pow(r) {
                let m = padic_margin(p, r, n)?;
                if m.v_term < r as u64 + 1 || m.v_fact * (p - 1) != n - m.digit_sum {
                    return Ok(Err((p, r, n)));
                }
                checked += 1;
            }
        }
    }
    Ok(Ok(checked))
}

/// The closed formula for α^m(x^n) against repeated substitution, n, m ≤ max.
pub fn formula_check(f: &Family5, max: u64) -> Result<std::result::Result<usize, (u64, u64)>> {
    let p = &f.params;
    let table = BcoefTable::new(p.e)?;
    let mut checked = 0;
    for n in 0..=max {
        for m in 0..=max {
            let (_, closed) = alpha_power_closed(&table, n, m, p.p, p.r, 2)?;
            let direct = f.ring.apply_power_endo(1, m, &f.term(n, 0))?;
            if closed != direct {
                return Ok(Err((n, m)));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subext::{certify_special, closure_check, Closure, SpecialVerdict};

    fn base() -> Family5 {
        build_family5(&Family5Params::new(2, 2, 2, 1, 1).unwrap()).unwrap()
    }

    #[test]
    fn parameter_validation() {
        assert!(Family5Params::new(4, 2, 2, 1, 1).is_err());
        assert!(Family5Params::new(2, 2, 3, 1, 3).is_err());
        assert!(Family5Params::new(2, 2, 1, 1, 1).is_err());
        assert!(Family5Params::new(5, 3, 2, 1, 1).is_err());
        let p = Family5Params::new(2, 1, 2, 1, 1).unwrap();
        assert_eq!(p.warnings().len(), 1);
        assert!(Family5Params::new(2, 2, 3, 1, 2).unwrap().warnings().is_empty());
    }

    #[test]
    fn bounds_examples() {
        let p = Family5Params::new(2, 2, 2, 1, 1).unwrap();
        let b = bounds(&p, 6);
        assert_eq!(b.s[3], 7);
        assert_eq!(b.r_hat, 2);
        assert_eq!(b.s_bar, vec![0, 1, 3, 6, 9, 12, 15]);
        // the other boundary: c·S_{r̂−1} = r exactly
        let q = Family5Params::new(2, 2, 2, 2, 1).unwrap();
        assert_eq!(q.r_hat(), 2);
    }

    #[test]
    fn term_sets() {
        let p = Family5Params::new(2, 2, 2, 1, 1).unwrap();
        assert!(in_term_set(1, 1, &p, TermSet::Bar));
        assert!(!in_term_set(5, 1, &p, TermSet::Bar));
        assert!(in_term_set(5, 1, &p, TermSet::Tilde));
        assert!(in_term_set(0, 0, &p, TermSet::Bar) && in_term_set(0, 0, &p, TermSet::Tilde));
        let q = Family5Params::new(2, 2, 3, 1, 2).unwrap();
        assert!(!in_term_set(0, 1, &q, TermSet::Tilde));
        assert!(in_term_set(3, 1, &q, TermSet::Tilde) && !in_term_set(3, 1, &q, TermSet::Bar));
        assert!(in_term_set(1, 1, &q, TermSet::Bar) && in_term_set(4, 2, &q, TermSet::Bar));
    }

    #[test]
    fn order_of_alpha() {
        let f = base();
        assert!(f.order.holds());
        let x = f.term(1, 0);
        assert_eq!(f.ring.apply_power_endo(1, 0, &x).unwrap(), x);
        let small = build_family5(&Family5Params::new(2, 1, 2, 1, 1).unwrap()).unwrap();
        assert_eq!(small.ring.apply_power_endo(1, 2, &small.term(1, 0)).unwrap(), small.term(1, 0));
        assert!(small.order.holds());
        assert_eq!(f.ring.certify_bijective(1, 8).unwrap(), crate::orecore::Bijectivity::Inverse);
    }

    #[test]
    fn centrality() {
        assert!(matches!(central_check(&base(), 6).unwrap(), CentralVerdict::Pass { .. }));
        let small = build_family5(&Family5Params::new(2, 1, 2, 1, 1).unwrap()).unwrap();
        let x2 = small.term(2, 0);
        assert_eq!(small.ring.apply_alpha(1, &x2).unwrap(), x2);
        assert!(matches!(central_check(&small, 5).unwrap(), CentralVerdict::Pass { .. }));
    }

    #[test]
    fn closure_pairs() {
        let f = base();
        let xy1 = xy(1, 1);
        let r = closure_pair(&f, &xy1, &xy1).unwrap();
        assert_eq!(f.ring.mul(&f.term(1, 1), &f.term(1, 1)).unwrap(), f.ring.parse("x0^2*x1^2 + 2*x0^3*x1^2").unwrap());
        assert!(r.holds());
        assert_eq!((r.max_x, r.bound, r.s_bar_sum), (3, 3, 3));
        let one = xy(0, 0);
        let t = xy(3, 2);
        assert_eq!(closure_pair(&f, &one, &t).unwrap().product, f.ring.format(&f.term(3, 2)));
        assert!(closure_pair(&f, &xy(5, 1), &one).is_err());
        assert!(closure_sweep(&f, 6).unwrap().is_ok());
    }

    #[test]
    fn closure_check_agrees() {
        let f = base();
        assert!(matches!(closure_check(&f.bar_subext(), 8).unwrap(), Closure::Pass { .. }));
    }

    #[test]
    fn witnesses() {
        let f = base();
        let w = ne_witness(&f, &xy(2, 1)).unwrap();
        assert_eq!(w.case, WitnessCase::Above { k: 1, a: 1 });
        assert_eq!((w.upsilon, w.product), ((4, 4), (6, 5)));
        assert!(w.verified);
        let w = ne_witness(&f, &xy(0, 1)).unwrap();
        assert_eq!(w.case, WitnessCase::Below { k: 1, b: 3, s: 1 });
        assert_eq!((w.upsilon, w.product), ((16, 12), (16, 13)));
        assert!(w.verified);
        let w = ne_witness(&f, &xy(1, 1)).unwrap();
        assert_eq!((w.case, w.upsilon), (WitnessCase::InBar, (0, 0)));
        let q = build_family5(&Family5Params::new(2, 2, 3, 1, 2).unwrap()).unwrap();
        assert!(ne_witness(&q, &xy(0, 1)).is_err());
        for t in tilde_terms(&q.params, 12) {
            assert!(ne_witness(&q, &t).unwrap().verified, "{t:?}");
        }
        let set = [xy(2, 1), xy(0, 1), xy(5, 1)];
        assert!(set_witness(&f, &set).unwrap().is_some());
    }

    #[test]
    fn sweeps() {
        let grid: Vec<(u64, u64, u64)> =
            [2, 3].iter().flat_map(|&e| [1, 2].iter().flat_map(move |&c| [2, 3].iter().map(move |&r| (e, c, r)))).collect();
        assert_eq!(inequality_sweep(&grid, 10), Ok(8 * 121));
        assert_eq!(valuation_sweep(&[2, 3, 5], &[1, 2, 3]).unwrap(), Ok(2 + 4 + 8 + 3 + 9 + 27 + 5 + 25 + 125));
        assert_eq!(formula_check(&base(), 5).unwrap(), Ok(36));
    }

    #[test]
    fn tilde_is_special() {
        let f = base();
        let a = f.tilde_subext();
        let v = certify_special(&a, &f.tilde_special_data(4), 4).unwrap();
        assert!(matches!(v, SpecialVerdict::Certified { .. }), "{v:?}");
        let q = build_family5(&Family5Params::new(2, 2, 3, 1, 2).unwrap()).unwrap();
        let v = certify_special(&q.tilde_subext(), &q.tilde_special_data(4), 4).unwrap();
        assert!(matches!(v, SpecialVerdict::Certified { .. }), "{v:?}");
    }
}
