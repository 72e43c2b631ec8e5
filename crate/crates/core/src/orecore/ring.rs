use std::collections::HashMap;
use std::sync::Mutex;

use crate::coeffring::{validate_endo, CoeffMap, CoeffRing, EndoKind, FiniteRing, RingEndoData};
use crate::error::{OreError, Result};
use crate::termorder::Term;

use super::poly::SkewPoly;

/// Conjugation and derivation data of one variable x_i: the maps act on
/// coefficients and send each lower variable x_j (j < i) to a polynomial in x_0..x_{i-1}.
#[derive(Clone, Debug)]
pub struct VarData<E> {
    pub alpha_coeff: CoeffMap,
    pub alpha_images: Vec<SkewPoly<E>>,
    pub delta_coeff: CoeffMap,
    pub delta_images: Vec<SkewPoly<E>>,
    /// Images under α_i^{-1}, when known.
    pub inverse: Option<(CoeffMap, Vec<SkewPoly<E>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bijectivity {
    /// α_i composed with the supplied inverse is the identity on generators.
    Inverse,
    /// α_i^k is the identity on generators.
    FiniteOrder(u64),
    /// Neither certificate was found up to the searched order.
    Uncertified { searched: u64 },
}

/// An iterated Ore extension R[x_0; α_0, δ_0]...[x_{k-1}; α_{k-1}, δ_{k-1}].
pub struct SkewPolyRing<R: CoeffRing> {
    ring: R,
    vars: Vec<VarData<R::Elem>>,
    degree_budget: Option<u64>,
    alpha_memo: Mutex<HashMap<(usize, Term), SkewPoly<R::Elem>>>,
    delta_memo: Mutex<HashMap<(usize, Term), SkewPoly<R::Elem>>>,
}

impl<R: CoeffRing> Clone for SkewPolyRing<R> {
    fn clone(&self) -> Self {
        SkewPolyRing {
            ring: self.ring.clone(),
            vars: self.vars.clone(),
            degree_budget: self.degree_budget,
            alpha_memo: Mutex::new(HashMap::new()),
            delta_memo: Mutex::new(HashMap::new()),
        }
    }
}

impl<R: CoeffRing> std::fmt::Debug for SkewPolyRing<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SkewPolyRing({}, {} vars)", self.ring.spec(), self.vars.len())
    }
}

impl<R: CoeffRing> SkewPolyRing<R> {
    pub fn new(ring: R, vars: Vec<VarData<R::Elem>>) -> Result<Self> {
        let k = vars.len();
        for (i, v) in vars.iter().enumerate() {
            for (what, imgs) in [("alpha", &v.alpha_images), ("delta", &v.delta_images)] {
                if imgs.len() != i {
                    return Err(OreError::IncompleteData(format!(
                        "x{i} needs {what} images for {i} lower variables, got {}",
                        imgs.len()
                    )));
                }
                for p in imgs {
                    if let Some(j) = p.max_var() {
                        if j >= i {
                            return Err(OreError::VariableOutOfRange { var: j, limit: i });
                        }
                    }
                    if p.nvars().is_some_and(|n| n != k) {
                        return Err(OreError::MismatchedUniverse { left: p.nvars().unwrap(), right: k });
                    }
                }
            }
            if let Some(fr) = ring.finite() {
                for m in [&v.alpha_coeff, &v.delta_coeff] {
                    if let CoeffMap::Table(t) = m {
                        if t.len() != fr.size() || t.iter().any(|&x| x >= fr.size()) {
                            return Err(OreError::MapNotTotal { expected: fr.size(), got: t.len() });
                        }
                    }
                }
                let alpha = RingEndoData::new(EndoKind::Endomorphism, v.alpha_coeff.table(fr));
                if let Some(bad) = validate_endo(fr, &alpha)? {
                    return Err(OreError::Precondition(format!(
                        "alpha of x{i} is not a ring endomorphism ({} at {},{})",
                        bad.axiom, bad.a, bad.b
                    )));
                }
                let delta = RingEndoData::derivation(v.delta_coeff.table(fr), v.alpha_coeff.table(fr));
                if let Some(bad) = validate_endo(fr, &delta)? {
                    return Err(OreError::Precondition(format!(
                        "delta of x{i} is not an alpha-derivation ({} at {},{})",
                        bad.axiom, bad.a, bad.b
                    )));
                }
            } else if matches!(v.alpha_coeff, CoeffMap::Table(_)) || matches!(v.delta_coeff, CoeffMap::Table(_)) {
                return Err(OreError::InfiniteRing);
            }
        }
        Ok(SkewPolyRing {
            ring,
            vars,
            degree_budget: None,
            alpha_memo: Mutex::new(HashMap::new()),
            delta_memo: Mutex::new(HashMap::new()),
        })
    }

    /// The commutative polynomial ring R[x_0, ..., x_{k-1}].
    pub fn commutative(ring: R, k: usize) -> Result<Self> {
        let vars = (0..k)
            .map(|i| VarData {
                alpha_coeff: CoeffMap::Identity,
                alpha_images: (0..i).map(|j| SkewPoly::term(&ring, Term::var(k, j))).collect(),
                delta_coeff: CoeffMap::Zero,
                delta_images: vec![SkewPoly::zero(); i],
                inverse: None,
            })
            .collect();
        Self::new(ring, vars)
    }

    pub fn with_degree_budget(mut self, budget: u64) -> Self {
        self.degree_budget = Some(budget);
        self
    }

    pub fn degree_budget(&self) -> Option<u64> {
        self.degree_budget
    }

    pub fn coeff_ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_data(&self, i: usize) -> &VarData<R::Elem> {
        &self.vars[i]
    }

    /// True when no derivation is present.
    pub fn is_graded(&self) -> bool {
        self.vars.iter().all(|v| v.delta_coeff.is_zero() && v.delta_images.iter().all(|p| p.is_zero()))
    }

    pub fn one(&self) -> SkewPoly<R::Elem> {
        SkewPoly::term(&self.ring, Term::one(self.nvars()))
    }

    pub fn var(&self, i: usize) -> SkewPoly<R::Elem> {
        SkewPoly::term(&self.ring, Term::var(self.nvars(), i))
    }

    pub fn constant(&self, c: R::Elem) -> SkewPoly<R::Elem> {
        SkewPoly::constant(&self.ring, c, self.nvars())
    }

    pub fn monomial(&self, c: R::Elem, t: Term) -> SkewPoly<R::Elem> {
        SkewPoly::monomial(&self.ring, c, t)
    }

    pub fn parse(&self, s: &str) -> Result<SkewPoly<R::Elem>> {
        SkewPoly::parse(&self.ring, s, self.nvars())
    }

    pub fn format(&self, f: &SkewPoly<R::Elem>) -> String {
        f.format(&self.ring)
    }

    fn check_budget(&self, p: &SkewPoly<R::Elem>) -> Result<()> {
        if let Some(b) = self.degree_budget {
            let d = p.total_degree();
            if d > b {
                return Err(OreError::DegreeBudget { degree: d, budget: b });
            }
        }
        Ok(())
    }

    fn check_universe(&self, f: &SkewPoly<R::Elem>) -> Result<()> {
        match f.nvars() {
            Some(n) if n != self.nvars() => Err(OreError::MismatchedUniverse { left: n, right: self.nvars() }),
            _ => Ok(()),
        }
    }

    pub fn add(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        f.add(&self.ring, g)
    }

    pub fn sub(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        f.sub(&self.ring, g)
    }

    pub fn scale(&self, a: &R::Elem, f: &SkewPoly<R::Elem>) -> SkewPoly<R::Elem> {
        f.scale_left(&self.ring, a)
    }

    /// α_i on a polynomial in the variables below i.
    pub fn apply_alpha(&self, i: usize, f: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        self.below(i, f)?;
        let v = &self.vars[i];
        let mut out = SkewPoly::zero();
        for (t, c) in f.iter() {
            let img = self.alpha_term(i, t)?;
            out.add_assign(&self.ring, &img.scale_left(&self.ring, &v.alpha_coeff.apply(&self.ring, c)));
        }
        Ok(out)
    }

    /// δ_i on a polynomial in the variables below i.
    pub fn apply_delta(&self, i: usize, f: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        self.below(i, f)?;
        let v = &self.vars[i];
        let mut out = SkewPoly::zero();
        for (t, c) in f.iter() {
            // δ(cτ) = α(c)δ(τ) + δ(c)τ
            let dt = self.delta_term(i, t)?;
            out.add_assign(&self.ring, &dt.scale_left(&self.ring, &v.alpha_coeff.apply(&self.ring, c)));
            let dc = v.delta_coeff.apply(&self.ring, c);
            out.add_term(&self.ring, t.clone(), dc);
        }
        Ok(out)
    }

    /// α_i^m(f) by m-fold substitution.
    pub fn apply_power_endo(&self, i: usize, m: u64, f: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        let mut cur = f.clone();
        self.below(i, &cur)?;
        for _ in 0..m {
            cur = self.apply_alpha(i, &cur)?;
        }
        Ok(cur)
    }

    fn below(&self, i: usize, f: &SkewPoly<R::Elem>) -> Result<()> {
        if i >= self.nvars() {
            return Err(OreError::VariableOutOfRange { var: i, limit: self.nvars() });
        }
        self.check_universe(f)?;
        match f.max_var() {
            Some(j) if j >= i => Err(OreError::VariableOutOfRange { var: j, limit: i }),
            _ => Ok(()),
        }
    }

    /// α_i(τ) = Π α_i(x_j)^{e_j} for a term τ in variables below i.
    fn alpha_term(&self, i: usize, t: &Term) -> Result<SkewPoly<R::Elem>> {
        if t.leading_var().is_none() {
            return Ok(self.one());
        }
        if let Some(p) = self.alpha_memo.lock().unwrap().get(&(i, t.clone())) {
            return Ok(p.clone());
        }
        let j = t.leading_var().unwrap();
        let rest = t.with_exp(j, t.deg(j) - 1);
        let head = self.alpha_term(i, &rest)?;
        let p = self.mul(&head, &self.vars[i].alpha_images[j])?;
        self.alpha_memo.lock().unwrap().insert((i, t.clone()), p.clone());
        Ok(p)
    }

    /// δ_i(τ'x_j) = α_i(τ')δ_i(x_j) + δ_i(τ')x_j.
    fn delta_term(&self, i: usize, t: &Term) -> Result<SkewPoly<R::Elem>> {
        if t.leading_var().is_none() {
            return Ok(SkewPoly::zero());
        }
        if let Some(p) = self.delta_memo.lock().unwrap().get(&(i, t.clone())) {
            return Ok(p.clone());
        }
        let j = t.leading_var().unwrap();
        let rest = t.with_exp(j, t.deg(j) - 1);
        let mut p = self.mul(&self.alpha_term(i, &rest)?, &self.vars[i].delta_images[j])?;
        let d_rest = self.delta_term(i, &rest)?;
        p.add_assign(&self.ring, &self.mul(&d_rest, &self.var(j))?);
        self.delta_memo.lock().unwrap().insert((i, t.clone()), p.clone());
        Ok(p)
    }

    /// x_i · h
    fn mul_var(&self, i: usize, h: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        let v = &self.vars[i];
        let k = self.nvars();
        let mut out = SkewPoly::zero();
        for (sigma, c) in h.iter() {
            let low = sigma.below(i);
            let high = Term::from_exps(sigma.exps().iter().zip(low.exps()).map(|(a, b)| a - b).collect());
            let xi_high = high.mul(&Term::var(k, i));
            // x_i c σ_low σ_high = α(c) α(σ_low) x_i σ_high + (α(c) δ(σ_low) + δ(c) σ_low) σ_high
            let ac = v.alpha_coeff.apply(&self.ring, c);
            if !self.ring.is_zero(&ac) {
                let a_low = self.alpha_term(i, &low)?;
                out.add_assign(&self.ring, &a_low.shift(&xi_high).scale_left(&self.ring, &ac));
                let d_low = self.delta_term(i, &low)?;
                out.add_assign(&self.ring, &d_low.shift(&high).scale_left(&self.ring, &ac));
            }
            let dc = v.delta_coeff.apply(&self.ring, c);
            out.add_term(&self.ring, sigma.clone(), dc);
        }
        Ok(out)
    }

    /// τ · g for a single term τ.
    pub fn mul_term(&self, t: &Term, g: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        let mut cur = g.clone();
        for i in (0..self.nvars()).rev() {
            for _ in 0..t.deg(i) {
                cur = self.mul_var(i, &cur)?;
                self.check_budget(&cur)?;
            }
        }
        Ok(cur)
    }

    pub fn mul(&self, f: &SkewPoly<R::Elem>, g: &SkewPoly<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        self.check_universe(f)?;
        self.check_universe(g)?;
        let mut out = SkewPoly::zero();
        for (t, a) in f.iter() {
            let tg = self.mul_term(t, g)?;
            out.add_assign(&self.ring, &tg.scale_left(&self.ring, a));
        }
        self.check_budget(&out)?;
        Ok(out)
    }

    pub fn pow(&self, f: &SkewPoly<R::Elem>, n: u32) -> Result<SkewPoly<R::Elem>> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Certifies that α_i is bijective, via the supplied inverse or a finite order ≤ `max_order`.
    pub fn certify_bijective(&self, i: usize, max_order: u64) -> Result<Bijectivity> {
        let v = &self.vars[i];
        let gens: Vec<SkewPoly<R::Elem>> = (0..i).map(|j| self.var(j)).collect();
        if let Some((inv_coeff, inv_imgs)) = &v.inverse {
            let mut ok = true;
            if let Some(fr) = self.ring.finite() {
                ok &= fr.elements().all(|a| {
                    inv_coeff.apply(&self.ring, &v.alpha_coeff.apply(&self.ring, &self.ring.from_index(a).unwrap()))
                        == self.ring.from_index(a).unwrap()
                        && v.alpha_coeff.apply(&self.ring, &inv_coeff.apply(&self.ring, &self.ring.from_index(a).unwrap()))
                            == self.ring.from_index(a).unwrap()
                });
            } else {
                ok &= inv_coeff.is_identity() && v.alpha_coeff.is_identity();
            }
            for (j, g) in gens.iter().enumerate() {
                // α(α^{-1}(x_j)) and α^{-1}(α(x_j)) must both be x_j
                ok &= self.apply_alpha(i, &inv_imgs[j])? == *g;
                ok &= self.substitute(i, inv_coeff, inv_imgs, &v.alpha_images[j])? == *g;
            }
            if ok {
                return Ok(Bijectivity::Inverse);
            }
        }
        let mut cur: Vec<SkewPoly<R::Elem>> = v.alpha_images.clone();
        let mut coeff = v.alpha_coeff.clone();
        for k in 1..=max_order {
            let gens_fixed = cur.iter().zip(&gens).all(|(a, b)| a == b);
            let coeff_fixed = match self.ring.finite() {
                Some(fr) => coeff.table(fr).iter().enumerate().all(|(a, &b)| a == b),
                None => coeff.is_identity(),
            };
            if gens_fixed && coeff_fixed {
                return Ok(Bijectivity::FiniteOrder(k));
            }
            cur = cur.iter().map(|p| self.apply_alpha(i, p)).collect::<Result<_>>()?;
            coeff = v.alpha_coeff.compose(&coeff);
        }
        Ok(Bijectivity::Uncertified { searched: max_order })
    }

    /// Applies the endomorphism of the lower ring given by coefficient map and variable images.
    fn substitute(
        &self,
        i: usize,
        coeff: &CoeffMap,
        imgs: &[SkewPoly<R::Elem>],
        f: &SkewPoly<R::Elem>,
    ) -> Result<SkewPoly<R::Elem>> {
        let mut out = SkewPoly::zero();
        for (t, c) in f.iter() {
            let mut img = self.constant(coeff.apply(&self.ring, c));
            for j in 0..i {
                for _ in 0..t.deg(j) {
                    img = self.mul(&img, &imgs[j])?;
                }
            }
            out.add_assign(&self.ring, &img);
        }
        Ok(out)
    }

    /// Checks that the declared data respects the defining relations of the lower
    /// ring: for generators u, v ∈ R ∪ {x_j : j < i}, α_i(uv) = α_i(u)α_i(v) and
    /// δ_i(uv) = α_i(u)δ_i(v) + δ_i(u)v. Returns the first failing (i, u, v).
    pub fn check_relations(&self) -> Result<Option<(usize, String, String)>> {
        for i in 0..self.nvars() {
            let mut gens: Vec<SkewPoly<R::Elem>> = (0..i).map(|j| self.var(j)).collect();
            if let Some(fr) = self.ring.finite() {
                gens.extend(fr.elements().map(|a| self.constant(self.ring.from_index(a).unwrap())));
            } else {
                gens.push(self.one());
            }
            for u in &gens {
                for w in &gens {
                    let uw = self.mul(u, w)?;
                    let lhs_a = self.apply_alpha(i, &uw)?;
                    let rhs_a = self.mul(&self.apply_alpha(i, u)?, &self.apply_alpha(i, w)?)?;
                    let lhs_d = self.apply_delta(i, &uw)?;
                    let rhs_d = self.add(
                        &self.mul(&self.apply_alpha(i, u)?, &self.apply_delta(i, w)?)?,
                        &self.mul(&self.apply_delta(i, u)?, w)?,
                    );
                    if lhs_a != rhs_a || lhs_d != rhs_d {
                        return Ok(Some((i, self.format(u), self.format(w))));
                    }
                }
            }
        }
        Ok(None)
    }

    /// All terms of total degree ≤ d.
    pub fn terms_up_to(&self, d: u64) -> Vec<Term> {
        terms_up_to(self.nvars(), d)
    }
}

pub fn terms_up_to(k: usize, d: u64) -> Vec<Term> {
    fn rec(k: usize, i: usize, left: u64, cur: &mut Vec<u32>, out: &mut Vec<Term>) {
        if i == k {
            out.push(Term::from_exps(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e as u32;
            rec(k, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(k, 0, d, &mut vec![0; k], &mut out);
    out.sort();
    out
}

impl SkewPolyRing<FiniteRing> {
    /// R[x; σ, δ] in one variable from coefficient tables.
    pub fn univariate(ring: FiniteRing, alpha: CoeffMap, delta: CoeffMap) -> Result<Self> {
        Self::new(
            ring,
            vec![VarData { alpha_coeff: alpha, alpha_images: vec![], delta_coeff: delta, delta_images: vec![], inverse: None }],
        )
    }
}
