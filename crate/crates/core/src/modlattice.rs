//! Finite left modules over finite rings, explored by brute force: submodule
//! lattices, uniform and essential submodules, uniform dimension, singular
//! submodules, (semi)primeness and nicely essential extensions.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::{Bits, MAX_CARRIER};
use crate::coeffring::{FiniteRing, Side};
use crate::error::{OreError, Result};

/// Default cap on the carrier size for lattice enumeration.
pub const DEFAULT_BUDGET: usize = 64;

/// A finite left module: an abelian group on `0..n` (0 is the zero) with a left
/// action of a finite ring.
#[derive(Clone, Debug)]
pub struct ModuleInstance {
    ring: FiniteRing,
    n: usize,
    add: Vec<u8>,
    act: Vec<u8>,
    labels: Vec<String>,
    cyclic: Vec<Bits>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub uniform: bool,
    pub essential: bool,
}

/// All submodules, sorted by size.
#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    members: Vec<Bits>,
}

impl SubmoduleLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Bits> {
        self.members.iter()
    }

    pub fn contains(&self, s: &Bits) -> bool {
        self.members.binary_search_by_key(&(s.len(), *s), |b| (b.len(), *b)).is_ok()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Bits> {
        self.members.iter().filter(|b| b.len() > 1)
    }

    /// Closed under sums and intersections.
    pub fn is_closed(&self, m: &ModuleInstance) -> bool {
        self.members.iter().all(|a| {
            self.members.iter().all(|b| self.contains(&m.sum(a, b)) && self.contains(&a.intersect(b)))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformDimension {
    pub dim: usize,
    /// Independent uniform submodules whose sum is essential.
    pub family: Vec<Bits>,
    /// A largest independent family of nonzero submodules, found separately.
    pub max_independent: Vec<Bits>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Primeness {
    pub prime: bool,
    pub semiprime: bool,
    /// Always true for a finite ring; the two facts behind it follow.
    pub goldie: bool,
    pub acc_left_annihilators: bool,
    pub udim: usize,
    pub singular_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceEssential {
    pub holds: bool,
    /// A single multiplier that works for E = M∖0 and hence for every finite E.
    pub multiplier: Option<usize>,
    /// A smallest failing E found by the bounded search (or M∖0 itself).
    pub failing: Option<Vec<usize>>,
    /// Left-regular c with c·x ∈ L for every x, when they all exist.
    pub strong: bool,
    pub denominators: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnoughUniform {
    pub holds: bool,
    pub degenerate: bool,
    /// (N, U) with U ⊆ N uniform.
    pub witnesses: Vec<(Bits, Bits)>,
}

fn axiom(name: &'static str, witness: String) -> OreError {
    OreError::RingAxiom { axiom: name, witness }
}

impl ModuleInstance {
    /// Validates the group and action axioms exhaustively.
    pub fn from_tables(ring: &FiniteRing, add: Vec<usize>, act: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || n > MAX_CARRIER {
            return Err(OreError::CarrierTooLarge { size: n, cap: MAX_CARRIER });
        }
        if add.len() != n * n {
            return Err(OreError::MapNotTotal { expected: n * n, got: add.len() });
        }
        if act.len() != ring.size() * n {
            return Err(OreError::MapNotTotal { expected: ring.size() * n, got: act.len() });
        }
        if let Some(&bad) = add.iter().chain(&act).find(|&&v| v >= n) {
            return Err(OreError::Precondition(format!("table entry {bad} outside the carrier of {n} elements")));
        }
        let m = Self::build(ring, n, add, act, labels);
        m.validate()?;
        Ok(m)
    }

    fn build(ring: &FiniteRing, n: usize, add: Vec<usize>, act: Vec<usize>, labels: Vec<String>) -> Self {
        let add: Vec<u8> = add.into_iter().map(|v| v as u8).collect();
        let act: Vec<u8> = act.into_iter().map(|v| v as u8).collect();
        let cyclic = (0..n).map(|x| Bits::from_iter(ring.elements().map(|r| act[r * n + x] as usize))).collect();
        ModuleInstance { ring: ring.clone(), n, add, act, labels, cyclic }
    }

    /// The left regular module R_R acting on itself by multiplication.
    pub fn regular(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let add = (0..n * n).map(|i| ring.add(i / n, i % n)).collect();
        let act = (0..n * n).map(|i| ring.mul(i / n, i % n)).collect();
        let labels = ring.elements().map(|a| ring.format(a)).collect();
        Self::build(ring, n, add, act, labels)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::build(ring, 1, vec![0], vec![0; ring.size()], vec!["0".into()])
    }

    /// The same group viewed as a module over a subring of the acting ring.
    pub fn restrict_scalars(&self, sub: &FiniteRing) -> Result<Self> {
        let embed = sub
            .embedding()
            .ok_or_else(|| OreError::Precondition(format!("{} is not a subring", sub.spec())))?;
        if embed.iter().any(|&e| e >= self.ring.size()) {
            return Err(OreError::Precondition("subring does not embed in the acting ring".into()));
        }
        let n = self.n;
        let add = self.add.iter().map(|&v| v as usize).collect();
        let act = embed.iter().flat_map(|&e| (0..n).map(move |x| (e, x))).map(|(e, x)| self.act(e, x)).collect();
        let m = Self::build(sub, n, add, act, self.labels.clone());
        m.validate()?;
        Ok(m)
    }

    /// A submodule as a module in its own right (elements re-indexed in order).
    pub fn submodule(&self, carrier: &Bits) -> Result<Self> {
        if !self.is_submodule(carrier) {
            return Err(OreError::Precondition(format!("{carrier:?} is not a submodule")));
        }
        let elems = carrier.to_vec();
        let mut pos = vec![usize::MAX; self.n];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let k = elems.len();
        let add = (0..k * k).map(|i| pos[self.add(elems[i / k], elems[i % k])]).collect();
        let act = (0..self.ring.size() * k).map(|i| pos[self.act(i / k, elems[i % k])]).collect();
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Ok(Self::build(&self.ring, k, add, act, labels))
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        let w = |a: usize, b: usize| format!("({}, {})", self.labels[a], self.labels[b]);
        for x in 0..n {
            if self.add(0, x) != x {
                return Err(axiom("module zero", self.labels[x].clone()));
            }
            if !(0..n).any(|y| self.add(x, y) == 0) {
                return Err(axiom("module inverse", self.labels[x].clone()));
            }
            for y in 0..n {
                if self.add(x, y) != self.add(y, x) {
                    return Err(axiom("module commutativity", w(x, y)));
                }
                for z in 0..n {
                    if self.add(self.add(x, y), z) != self.add(x, self.add(y, z)) {
                        return Err(axiom("module associativity", w(x, y)));
                    }
                }
            }
        }
        let r = &self.ring;
        for x in 0..n {
            if self.act(r.one(), x) != x {
                return Err(axiom("unital action", self.labels[x].clone()));
            }
            for a in r.elements() {
                for y in 0..n {
                    if self.act(a, self.add(x, y)) != self.add(self.act(a, x), self.act(a, y)) {
                        return Err(axiom("r(x+y) = rx+ry", w(x, y)));
                    }
                }
                for b in r.elements() {
                    if self.act(r.add(a, b), x) != self.add(self.act(a, x), self.act(b, x)) {
                        return Err(axiom("(r+s)x = rx+sx", format!("{} {} {}", r.format(a), r.format(b), self.labels[x])));
                    }
                    if self.act(r.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(axiom("(rs)x = r(sx)", format!("{} {} {}", r.format(a), r.format(b), self.labels[x])));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels_of(&self, s: &Bits) -> Vec<String> {
        s.iter().map(|x| self.labels[x].clone()).collect()
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.n + x] as usize
    }

    pub fn full(&self) -> Bits {
        Bits::full(self.n)
    }

    /// R·x
    pub fn cyclic(&self, x: usize) -> Bits {
        self.cyclic[x]
    }

    pub fn sum(&self, a: &Bits, b: &Bits) -> Bits {
        let mut out = Bits::EMPTY;
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    pub fn sum_all<'a>(&self, family: impl IntoIterator<Item = &'a Bits>) -> Bits {
        family.into_iter().fold(Bits::singleton(0), |acc, b| self.sum(&acc, b))
    }

    pub fn is_submodule(&self, s: &Bits) -> bool {
        s.contains(0)
            && s.iter().all(|x| s.iter().all(|y| s.contains(self.add(x, y))) && self.cyclic[x].is_subset(s))
    }

    fn distinct_cyclics(&self) -> Vec<Bits> {
        let mut seen = HashSet::new();
        let mut out: Vec<Bits> = (1..self.n).map(|x| self.cyclic[x]).filter(|c| seen.insert(*c)).collect();
        out.sort_by_key(|b| (b.len(), *b));
        out
    }

    /// Every submodule, as the closure of the cyclic submodules under sums.
    pub fn enumerate_submodules(&self, budget: usize) -> Result<SubmoduleLattice> {
        if self.n > budget {
            return Err(OreError::Budget(format!(
                "module of {} elements exceeds the lattice budget of {budget}",
                self.n
            )));
        }
        let cyclics = self.distinct_cyclics();
        let mut seen: HashSet<Bits> = HashSet::from([Bits::singleton(0)]);
        let mut members = vec![Bits::singleton(0)];
        let mut i = 0;
        while i < members.len() {
            let cur = members[i];
            for c in &cyclics {
                if !c.is_subset(&cur) {
                    let s = self.sum(&cur, c);
                    if seen.insert(s) {
                        members.push(s);
                    }
                }
            }
            i += 1;
        }
        members.sort_by_key(|b| (b.len(), *b));
        Ok(SubmoduleLattice { members })
    }

    pub fn is_uniform(&self, l: &Bits) -> bool {
        let nz: Vec<usize> = l.iter().filter(|&x| x != 0).collect();
        !nz.is_empty()
            && nz.iter().all(|&x| nz.iter().all(|&y| self.cyclic[x].intersect(&self.cyclic[y]).len() > 1))
    }

    /// L meets every nonzero cyclic submodule.
    pub fn is_essential(&self, l: &Bits) -> bool {
        (1..self.n).all(|x| self.cyclic[x].intersect(l).len() > 1)
    }

    pub fn classify_submodule(&self, l: &Bits) -> Result<Classification> {
        if !self.is_submodule(l) {
            return Err(OreError::Precondition(format!("{l:?} is not a submodule")));
        }
        Ok(Classification { uniform: self.is_uniform(l), essential: self.is_essential(l) })
    }

    /// Each member meets the sum of the others in 0.
    pub fn is_independent(&self, family: &[Bits]) -> bool {
        (0..family.len()).all(|i| {
            let others = self.sum_all(family.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b));
            family[i].intersect(&others).len() == 1
        })
    }

    /// Greedy essential direct sum of uniform submodules, cross-checked against
    /// the largest independent family of nonzero submodules.
    pub fn uniform_dimension(&self, budget: usize) -> Result<UniformDimension> {
        let lattice = self.enumerate_submodules(budget)?;
        let mut family: Vec<Bits> = Vec::new();
        let mut total = Bits::singleton(0);
        for u in lattice.nonzero().filter(|u| self.is_uniform(u)) {
            if u.intersect(&total).len() == 1 {
                family.push(*u);
                total = self.sum(&total, u);
            }
        }
        assert!(self.n == 1 || self.is_essential(&total), "greedy uniform family is not essential");
        debug_assert!(self.is_independent(&family));
        let max_independent = self.max_independent_family();
        assert_eq!(
            family.len(),
            max_independent.len(),
            "uniform dimension certificate disagrees with the largest independent family"
        );
        Ok(UniformDimension { dim: family.len(), family, max_independent })
    }

    /// Depth-first search over cyclic submodules; a nonzero submodule meeting
    /// the running sum trivially at least doubles its size, which bounds the depth.
    pub fn max_independent_family(&self) -> Vec<Bits> {
        let cyc = self.distinct_cyclics();
        let mut best = Vec::new();
        let mut cur = Vec::new();
        self.dfs(&cyc, 0, Bits::singleton(0), &mut cur, &mut best);
        best
    }

    fn dfs(&self, cyc: &[Bits], start: usize, total: Bits, cur: &mut Vec<Bits>, best: &mut Vec<Bits>) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        let room = (self.n / total.len()).ilog2() as usize;
        if cur.len() + room <= best.len() {
            return;
        }
        for i in start..cyc.len() {
            if cyc[i].intersect(&total).len() == 1 {
                cur.push(cyc[i]);
                self.dfs(cyc, i + 1, self.sum(&total, &cyc[i]), cur, best);
                cur.pop();
            }
        }
    }

    /// {x : ann(x) is an essential left ideal of the acting ring}.
    pub fn singular_submodule(&self) -> Bits {
        let s = Bits::from_iter((0..self.n).filter(|&x| {
            let ann = Bits::from_iter(self.ring.elements().filter(|&r| self.act(r, x) == 0));
            is_essential_left_ideal(&self.ring, &ann)
        }));
        assert!(self.is_submodule(&s), "singular elements do not form a submodule");
        s
    }

    /// Some a with 0 ≠ a·x ∈ L for every x in E.
    pub fn nice_multiplier(&self, l: &Bits, e: &[usize]) -> Option<usize> {
        self.ring.elements().find(|&a| {
            e.iter().all(|&x| {
                let ax = self.act(a, x);
                ax != 0 && l.contains(ax)
            })
        })
    }

    /// Decides whether L is nicely essential in M. One multiplier for E = M∖0
    /// settles every E; otherwise the smallest failing E up to `max_e` is reported.
    pub fn nicely_essential_check(&self, l: &Bits, max_e: usize) -> Result<NiceEssential> {
        if !self.is_submodule(l) {
            return Err(OreError::Precondition(format!("{l:?} is not a submodule")));
        }
        let nonzero: Vec<usize> = (1..self.n).collect();
        let multiplier = self.nice_multiplier(l, &nonzero);
        let failing = match multiplier {
            Some(_) => None,
            None => Some(self.smallest_failing(l, &nonzero, max_e).unwrap_or_else(|| nonzero.clone())),
        };
        let mut denominators = Vec::new();
        let mut strong = true;
        for x in 0..self.n {
            match self.ring.elements().find(|&c| self.ring.is_regular(c, Side::Left) && l.contains(self.act(c, x))) {
                Some(c) => denominators.push((x, c)),
                None => strong = false,
            }
        }
        let holds = multiplier.is_some();
        Ok(NiceEssential { holds, multiplier, failing, strong: holds && strong, denominators })
    }

    fn smallest_failing(&self, l: &Bits, pool: &[usize], max_e: usize) -> Option<Vec<usize>> {
        for k in 1..=max_e.min(pool.len()) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let e: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
                if self.nice_multiplier(l, &e).is_none() {
                    return Some(e);
                }
                let mut j = k;
                while j > 0 && idx[j - 1] == pool.len() - k + j - 1 {
                    j -= 1;
                }
                if j == 0 {
                    break;
                }
                idx[j - 1] += 1;
                for t in j..k {
                    idx[t] = idx[t - 1] + 1;
                }
            }
        }
        None
    }

    /// Every nonzero submodule contains a uniform one: a smallest nonzero cyclic inside it.
    pub fn enough_uniform(&self, budget: usize) -> Result<EnoughUniform> {
        let lattice = self.enumerate_submodules(budget)?;
        let mut witnesses = Vec::new();
        let mut holds = true;
        for nsub in lattice.nonzero() {
            let u = nsub.iter().filter(|&x| x != 0).map(|x| self.cyclic[x]).min_by_key(|c| (c.len(), *c)).unwrap();
            if self.is_uniform(&u) {
                witnesses.push((*nsub, u));
            } else {
                holds = false;
            }
        }
        Ok(EnoughUniform { holds, degenerate: self.n == 1, witnesses })
    }
}

/// A left ideal I is essential when R·r meets I nontrivially for every r ≠ 0.
pub fn is_essential_left_ideal(ring: &FiniteRing, ideal: &Bits) -> bool {
    ring.elements()
        .skip(1)
        .all(|r| ring.elements().any(|s| {
            let sr = ring.mul(s, r);
            sr != 0 && ideal.contains(sr)
        }))
}

/// Two-sided ideals of a finite ring, closed under sums.
pub fn two_sided_ideals(ring: &FiniteRing) -> Vec<Bits> {
    let principal: Vec<Bits> = {
        let mut seen = HashSet::new();
        ring.elements().map(|g| ring.two_sided_ideal(&Bits::singleton(g))).filter(|b| seen.insert(*b)).collect()
    };
    let mut seen: HashSet<Bits> = principal.iter().copied().collect();
    let mut all = principal.clone();
    let mut i = 0;
    while i < all.len() {
        for p in &principal {
            let s = ring.additive_closure(&all[i].union(p));
            if seen.insert(s) {
                all.push(s);
            }
        }
        i += 1;
    }
    all.sort_by_key(|b| (b.len(), *b));
    all
}

fn product_nonzero(ring: &FiniteRing, a: &Bits, b: &Bits) -> bool {
    a.iter().any(|x| b.iter().any(|y| ring.mul(x, y) != 0))
}

/// Prime and semiprime by ideal enumeration; the Goldie facts are reported
/// alongside, and semiprime Goldie rings are asserted to have zero singular ideal.
pub fn primeness(ring: &FiniteRing) -> Result<Primeness> {
    let ideals: Vec<Bits> = two_sided_ideals(ring).into_iter().filter(|b| b.len() > 1).collect();
    let prime = ideals.iter().all(|i| ideals.iter().all(|j| product_nonzero(ring, i, j)));
    let semiprime = ideals.iter().all(|n| product_nonzero(ring, n, n));
    let regular = ModuleInstance::regular(ring);
    let udim = regular.uniform_dimension(MAX_CARRIER)?.dim;
    let singular_zero = regular.singular_submodule().len() == 1;
    if semiprime {
        assert!(singular_zero, "semiprime Goldie ring {} with nonzero singular ideal", ring.spec());
    }
    Ok(Primeness { prime, semiprime, goldie: true, acc_left_annihilators: true, udim, singular_zero })
}

/// The transfer properties of a nicely essential subring A ⊆ S, evaluated exhaustively.
#[derive(Clone, Debug, Serialize)]
pub struct SubringTransfer {
    pub ring: String,
    /// A as indices of S.
    pub subring: Vec<usize>,
    pub nicely_essential: bool,
    pub strongly: bool,
    pub udim_a: usize,
    pub udim_s: usize,
    pub udim_s_over_a: usize,
    pub sing_a: Vec<usize>,
    pub a_cap_sing_s: Vec<usize>,
    pub sing_a_nicely_essential: bool,
    pub disjoint_ideals_lift: bool,
    pub a: Primeness,
    pub s: Primeness,
}

impl SubringTransfer {
    /// The implications that must hold for a nicely essential subring; empty when all do.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !self.nicely_essential {
            return v;
        }
        if self.udim_a != self.udim_s || self.udim_a != self.udim_s_over_a {
            v.push(format!("udim: A {} vs S {} vs S over A {}", self.udim_a, self.udim_s, self.udim_s_over_a));
        }
        if self.sing_a != self.a_cap_sing_s {
            v.push(format!("sing(A) = {:?} but A ∩ sing(S) = {:?}", self.sing_a, self.a_cap_sing_s));
        }
        if !self.sing_a_nicely_essential {
            v.push("sing(A) is not nicely essential in sing(S)".into());
        }
        if !self.disjoint_ideals_lift {
            v.push("disjoint left ideals of A generate intersecting left ideals of S".into());
        }
        if self.a.prime && !self.s.prime {
            v.push("A prime but S not".into());
        }
        if self.a.semiprime && !self.s.semiprime {
            v.push("A semiprime but S not".into());
        }
        if self.strongly && self.s.semiprime && !self.a.semiprime {
            v.push("S semiprime, A strongly nicely essential, A not semiprime".into());
        }
        v
    }
}

/// Evaluates the subring `a_set` of `s` (all properties, whether or not it is nicely essential).
pub fn subring_transfer(s: &FiniteRing, a_set: &Bits) -> Result<SubringTransfer> {
    let a = FiniteRing::subring(s, a_set)?;
    let embed = a.embedding().unwrap().to_vec();
    let s_over_a = ModuleInstance::regular(s).restrict_scalars(&a)?;
    let nice = s_over_a.nicely_essential_check(a_set, 2)?;
    let reg_a = ModuleInstance::regular(&a);
    let reg_s = ModuleInstance::regular(s);
    let sing_s = reg_s.singular_submodule();
    let sing_a: Vec<usize> = reg_a.singular_submodule().iter().map(|i| embed[i]).collect();
    let a_cap_sing_s = a_set.intersect(&sing_s).to_vec();
    let sing_a_bits = Bits::from_iter(sing_a.iter().copied());
    let sing_a_nicely_essential = s_over_a
        .submodule(&sing_s)
        .and_then(|m| {
            let pos: Vec<usize> = sing_s.iter().collect();
            let inner = Bits::from_iter(pos.iter().enumerate().filter(|(_, e)| sing_a_bits.contains(**e)).map(|(i, _)| i));
            m.nicely_essential_check(&inner, 1)
        })
        .map(|r| r.holds)
        .unwrap_or(false);
    let left_ideals: Vec<Bits> = reg_a
        .enumerate_submodules(MAX_CARRIER)?
        .nonzero()
        .map(|l| Bits::from_iter(l.iter().map(|i| embed[i])))
        .collect();
    let disjoint_ideals_lift = left_ideals.iter().all(|l| {
        left_ideals.iter().all(|l2| {
            l.intersect(l2).len() > 1 || s.left_ideal(l).intersect(&s.left_ideal(l2)).len() == 1
        })
    });
    Ok(SubringTransfer {
        ring: s.spec().to_string(),
        subring: a_set.to_vec(),
        nicely_essential: nice.holds,
        strongly: nice.strong,
        udim_a: reg_a.uniform_dimension(MAX_CARRIER)?.dim,
        udim_s: reg_s.uniform_dimension(MAX_CARRIER)?.dim,
        udim_s_over_a: s_over_a.uniform_dimension(MAX_CARRIER)?.dim,
        sing_a,
        a_cap_sing_s,
        sing_a_nicely_essential,
        disjoint_ideals_lift,
        a: primeness(&a)?,
        s: primeness(s)?,
    })
}

/// All nicely essential subrings of `s`, found by exhausting its subrings.
pub fn nicely_essential_subrings(s: &FiniteRing) -> Result<Vec<SubringTransfer>> {
    let mut out = Vec::new();
    for a_set in s.subrings() {
        let a = FiniteRing::subring(s, &a_set)?;
        let m = ModuleInstance::regular(s).restrict_scalars(&a)?;
        let nonzero: Vec<usize> = (1..s.size()).collect();
        if m.nice_multiplier(&a_set, &nonzero).is_some() {
            out.push(subring_transfer(s, &a_set)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{build_finite, zoo};

    fn z(n: u64) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn distinct_primes(mut n: u64) -> usize {
        let mut count = 0;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                count += 1;
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        count + usize::from(n > 1)
    }

    #[test]
    fn lattice_sizes() {
        let m = ModuleInstance::regular(&z(12));
        let lat = m.enumerate_submodules(DEFAULT_BUDGET).unwrap();
        assert_eq!(lat.len(), (1..=12).filter(|d| 12 % d == 0).count());
        assert!(lat.is_closed(&m));
        assert_eq!(ModuleInstance::regular(&z(7)).enumerate_submodules(64).unwrap().len(), 2);
        let p = build_finite("product:zmod:2,zmod:3").unwrap();
        assert_eq!(ModuleInstance::regular(&p).enumerate_submodules(64).unwrap().len(), 4);
        assert!(matches!(ModuleInstance::regular(&z(65)).enumerate_submodules(64), Err(OreError::Budget(_))));
    }

    #[test]
    fn classification() {
        let m4 = ModuleInstance::regular(&z(4));
        let c = m4.classify_submodule(&Bits::from_iter([0, 2])).unwrap();
        assert_eq!(c, Classification { uniform: true, essential: true });
        let m6 = ModuleInstance::regular(&z(6));
        let c = m6.classify_submodule(&Bits::from_iter([0, 2, 4])).unwrap();
        assert_eq!(c, Classification { uniform: true, essential: false });
        let f = ModuleInstance::regular(&z(5));
        assert_eq!(f.classify_submodule(&f.full()).unwrap(), Classification { uniform: true, essential: true });
        assert!(m6.classify_submodule(&Bits::from_iter([0, 1])).is_err());
    }

    #[test]
    fn uniform_dimension_examples() {
        assert_eq!(ModuleInstance::regular(&z(12)).uniform_dimension(64).unwrap().dim, 2);
        assert_eq!(ModuleInstance::regular(&z(11)).uniform_dimension(64).unwrap().dim, 1);
        let f2 = build_finite("product:zmod:2,product:zmod:2,zmod:2").unwrap();
        let u = ModuleInstance::regular(&f2).uniform_dimension(64).unwrap();
        assert_eq!(u.dim, 3);
        assert_eq!(u.max_independent.len(), 3);
    }

    #[test]
    fn udim_of_zmod_counts_prime_factors() {
        for n in 2..=60u64 {
            let u = ModuleInstance::regular(&z(n)).uniform_dimension(64).unwrap();
            assert_eq!(u.dim, distinct_primes(n), "Z/{n}");
        }
    }

    #[test]
    fn singular_examples() {
        assert_eq!(ModuleInstance::regular(&z(4)).singular_submodule().to_vec(), vec![0, 2]);
        assert_eq!(ModuleInstance::regular(&z(7)).singular_submodule().to_vec(), vec![0]);
        assert_eq!(ModuleInstance::regular(&z(6)).singular_submodule().to_vec(), vec![0]);
        assert_eq!(ModuleInstance::regular(&z(8)).singular_submodule().to_vec(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn primeness_examples() {
        let p6 = primeness(&z(6)).unwrap();
        assert!(p6.semiprime && !p6.prime);
        assert!(!primeness(&z(4)).unwrap().semiprime);
        assert!(primeness(&z(5)).unwrap().prime);
        let t = primeness(&build_finite("tri2:zmod:2").unwrap()).unwrap();
        assert!(!t.semiprime);
    }

    #[test]
    fn primeness_matches_elementwise_criterion() {
        for r in zoo(27) {
            let p = primeness(&r).unwrap();
            let nz: Vec<usize> = r.elements().skip(1).collect();
            let arb_nonzero = |a: usize, b: usize| r.elements().any(|x| r.mul(r.mul(a, x), b) != 0);
            let prime = nz.iter().all(|&a| nz.iter().all(|&b| arb_nonzero(a, b)));
            let semiprime = nz.iter().all(|&a| arb_nonzero(a, a));
            assert_eq!((p.prime, p.semiprime), (prime, semiprime), "{}", r.spec());
        }
    }

    #[test]
    fn nicely_essential_examples() {
        let m6 = ModuleInstance::regular(&z(6));
        let full = m6.nicely_essential_check(&m6.full(), 3).unwrap();
        assert!(full.holds && full.strong);
        assert_eq!(full.multiplier, Some(1));
        let r = m6.nicely_essential_check(&Bits::from_iter([0, 2, 4]), 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing, Some(vec![3]));
        let m4 = ModuleInstance::regular(&z(4));
        let r = m4.nicely_essential_check(&Bits::from_iter([0, 2]), 3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.failing, Some(vec![1, 2]));
        assert_eq!(m4.nice_multiplier(&Bits::from_iter([0, 2]), &[2]), Some(1));
    }

    #[test]
    fn enough_uniform_examples() {
        let e = ModuleInstance::regular(&z(12)).enough_uniform(64).unwrap();
        assert!(e.holds && !e.degenerate);
        assert_eq!(e.witnesses.len(), 5);
        let zero = ModuleInstance::zero(&z(3)).enough_uniform(64).unwrap();
        assert!(zero.holds && zero.degenerate);
    }

    #[test]
    fn restriction_and_tables() {
        let s = z(12);
        let a_set = s.subrings()[0];
        let a = FiniteRing::subring(&s, &a_set).unwrap();
        let m = ModuleInstance::regular(&s).restrict_scalars(&a).unwrap();
        assert_eq!(m.uniform_dimension(64).unwrap().dim, 2);
        let bad = ModuleInstance::from_tables(&z(2), vec![0, 1, 1, 0], vec![0, 0, 1, 0], vec!["0".into(), "1".into()]);
        assert!(matches!(bad, Err(OreError::RingAxiom { .. })));
        let ok = ModuleInstance::from_tables(&z(2), vec![0, 1, 1, 0], vec![0, 0, 0, 1], vec!["0".into(), "1".into()]);
        assert!(ok.is_ok());
    }

    #[test]
    fn nicely_essential_subrings_are_whole_rings() {
        for s in zoo(16) {
            for t in nicely_essential_subrings(&s).unwrap() {
                assert_eq!(t.subring.len(), s.size());
                assert!(t.violations().is_empty(), "{:?}", t.violations());
            }
        }
    }
}
