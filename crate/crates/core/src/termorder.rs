//! Standard and Laurent terms under the reverse lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{OreError, Result};

/// Exponent vector over a fixed, ordered variable list.
pub trait Monomial: Clone + Eq + Ord + std::hash::Hash + fmt::Debug + Send + Sync {
    type Exp: Copy + Ord + Default + fmt::Display + fmt::Debug;
    fn nvars(&self) -> usize;
    fn exp(&self, i: usize) -> Self::Exp;
    fn one_of(nvars: usize) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn is_one(&self) -> bool {
        (0..self.nvars()).all(|i| self.exp(i) == Self::Exp::default())
    }
}

/// A standard term x0^e0 * ... * x{k-1}^e{k-1}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: Vec<u32>,
}

/// A term of the free abelian group on the variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentTerm {
    exps: Vec<i32>,
}

fn revlex<E: Ord + Copy>(a: &[E], b: &[E]) -> Ordering {
    for i in (0..a.len().min(b.len())).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn check_universe(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(OreError::MismatchedUniverse { left: a, right: b });
    }
    Ok(())
}

/// Compares two terms by the exponent of the greatest variable where they differ.
pub fn compare_revlex<M: Monomial>(a: &M, b: &M) -> Result<Ordering> {
    check_universe(a.nvars(), b.nvars())?;
    Ok(a.cmp(b))
}

impl Term {
    pub fn one(nvars: usize) -> Term {
        Term { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Term {
        let mut t = Term::one(nvars);
        t.exps[i] = 1;
        t
    }

    pub fn from_exps(exps: Vec<u32>) -> Term {
        Term { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn deg(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, o: &Term) -> Term {
        Term { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn pow(&self, k: u32) -> Term {
        Term { exps: self.exps.iter().map(|a| a * k).collect() }
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Term {
        let mut t = self.clone();
        t.exps[i] = e;
        t
    }

    /// Greatest variable with a nonzero exponent.
    pub fn leading_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// The part in variables below `i`.
    pub fn below(&self, i: usize) -> Term {
        let mut t = self.clone();
        for e in &mut t.exps[i..] {
            *e = 0;
        }
        t
    }

    pub fn divides(&self, o: &Term) -> bool {
        self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    pub fn to_laurent(&self) -> LaurentTerm {
        LaurentTerm { exps: self.exps.iter().map(|&e| e as i32).collect() }
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Term> {
        let exps = parse_powers(s, nvars)?;
        if exps.iter().any(|&e| e < 0) {
            return Err(OreError::Parse { input: s.into(), reason: "negative exponent in a standard term".into() });
        }
        Ok(Term { exps: exps.into_iter().map(|e| e as u32).collect() })
    }
}

impl LaurentTerm {
    pub fn one(nvars: usize) -> LaurentTerm {
        LaurentTerm { exps: vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<i32>) -> LaurentTerm {
        LaurentTerm { exps }
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn mul(&self, o: &LaurentTerm) -> LaurentTerm {
        LaurentTerm { exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn inv(&self) -> LaurentTerm {
        LaurentTerm { exps: self.exps.iter().map(|a| -a).collect() }
    }

    pub fn is_standard(&self) -> bool {
        self.exps.iter().all(|&e| e >= 0)
    }

    pub fn parse(s: &str, nvars: usize) -> Result<LaurentTerm> {
        Ok(LaurentTerm { exps: parse_powers(s, nvars)? })
    }
}

fn parse_powers(s: &str, nvars: usize) -> Result<Vec<i32>> {
    let bad = |why: &str| OreError::Parse { input: s.to_string(), reason: why.to_string() };
    let mut exps = vec![0i32; nvars];
    let s = s.trim();
    if s == "1" {
        return Ok(exps);
    }
    for factor in s.split('*') {
        let f = factor.trim();
        let body = f.strip_prefix('x').ok_or_else(|| bad("expected x<i> or x<i>^<e>"))?;
        let (idx, e) = match body.split_once('^') {
            Some((i, e)) => (i, e.trim().parse::<i32>().map_err(|_| bad("bad exponent"))?),
            None => (body, 1),
        };
        let i: usize = idx.trim().parse().map_err(|_| bad("bad variable index"))?;
        if i >= nvars {
            return Err(OreError::VariableOutOfRange { var: i, limit: nvars });
        }
        exps[i] += e;
    }
    Ok(exps)
}

fn write_powers<E: fmt::Display + Default + PartialEq + Copy>(f: &mut fmt::Formatter<'_>, exps: &[E], one: E) -> fmt::Result {
    let mut first = true;
    for (i, &e) in exps.iter().enumerate() {
        if e == E::default() {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == one {
            write!(f, "x{i}")?;
        } else {
            write!(f, "x{i}^{e}")?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(f, &self.exps, 1)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_powers(f, &self.exps, 1)
    }
}

impl fmt::Debug for LaurentTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Terms over different universes are ordered by universe size; `compare_revlex`
// reports that case as an error instead.
impl Ord for Term {
    fn cmp(&self, o: &Self) -> Ordering {
        self.exps.len().cmp(&o.exps.len()).then_with(|| revlex(&self.exps, &o.exps))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for LaurentTerm {
    fn cmp(&self, o: &Self) -> Ordering {
        self.exps.len().cmp(&o.exps.len()).then_with(|| revlex(&self.exps, &o.exps))
    }
}

impl PartialOrd for LaurentTerm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Monomial for Term {
    type Exp = u32;
    fn nvars(&self) -> usize {
        self.exps.len()
    }
    fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }
    fn one_of(nvars: usize) -> Self {
        Term::one(nvars)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl Monomial for LaurentTerm {
    type Exp = i32;
    fn nvars(&self) -> usize {
        self.exps.len()
    }
    fn exp(&self, i: usize) -> i32 {
        self.exps[i]
    }
    fn one_of(nvars: usize) -> Self {
        LaurentTerm::one(nvars)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

/// Leading term of a polynomial; `Bottom` stands for lt(0) and lies below every term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LeadTerm<M> {
    Bottom,
    Term(M),
}

/// Minimum of a finite set of standard terms: take the smallest leading variable,
/// then the smallest exponent of it, then recurse on the remaining prefixes.
pub fn min_term(set: &[Term]) -> Result<Term> {
    let first = set.first().ok_or(OreError::EmptySet)?;
    for t in set {
        check_universe(first.nvars(), t.nvars())?;
    }
    let mut cands: Vec<&Term> = set.iter().collect();
    let mut upper = first.nvars();
    loop {
        let lead = |t: &Term| t.exps[..upper].iter().rposition(|&e| e > 0);
        if let Some(t) = cands.iter().find(|t| lead(t).is_none()) {
            return Ok((*t).clone());
        }
        let v = cands.iter().map(|t| lead(t).unwrap()).min().unwrap();
        cands.retain(|t| lead(t) == Some(v));
        let e = cands.iter().map(|t| t.exps[v]).min().unwrap();
        cands.retain(|t| t.exps[v] == e);
        upper = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        Term::parse(s, 3).unwrap()
    }

    #[test]
    fn revlex_examples() {
        assert_eq!(compare_revlex(&t("x1*x2"), &t("x2^2")).unwrap(), Ordering::Less);
        assert_eq!(compare_revlex(&t("x1^3"), &t("x2")).unwrap(), Ordering::Less);
        let inv = LaurentTerm::parse("x0^-1", 1).unwrap();
        let x = LaurentTerm::parse("x0", 1).unwrap();
        assert_eq!(compare_revlex(&inv, &x).unwrap(), Ordering::Less);
        assert!(matches!(
            compare_revlex(&Term::one(2), &Term::one(3)),
            Err(OreError::MismatchedUniverse { left: 2, right: 3 })
        ));
    }

    #[test]
    fn min_term_examples() {
        assert_eq!(min_term(&[t("x2"), t("x1*x2"), t("x1^2")]).unwrap(), t("x1^2"));
        assert_eq!(min_term(&[t("1"), t("x1")]).unwrap(), t("1"));
        assert_eq!(min_term(&[t("x1*x2^3"), t("x1^5*x2^3"), t("x2^4")]).unwrap(), t("x1*x2^3"));
        assert_eq!(min_term(&[]), Err(OreError::EmptySet));
    }

    #[test]
    fn text_format() {
        assert_eq!(t("x0^2*x1").to_string(), "x0^2*x1");
        assert_eq!(t("x1*x0^2").to_string(), "x0^2*x1");
        assert_eq!(Term::one(2).to_string(), "1");
        assert_eq!(LaurentTerm::parse("x0^-1*x1^2", 2).unwrap().to_string(), "x0^-1*x1^2");
        assert!(matches!(Term::parse("x3", 3), Err(OreError::VariableOutOfRange { var: 3, limit: 3 })));
        assert!(Term::parse("x0^-1", 1).is_err());
    }

    #[test]
    fn laurent_translation_compatibility_exhaustive() {
        let range = -2..=2;
        let all: Vec<LaurentTerm> = range
            .clone()
            .flat_map(|a| range.clone().map(move |b| LaurentTerm::from_exps(vec![a, b])))
            .collect();
        for l in &all {
            for a in &all {
                for b in &all {
                    if a < b {
                        assert!(l.mul(a) < l.mul(b), "{l} {a} {b}");
                    }
                }
            }
        }
    }

    fn term3() -> impl Strategy<Value = Term> {
        prop::collection::vec(0u32..4, 3).prop_map(Term::from_exps)
    }

    proptest! {
        #[test]
        fn order_is_total_and_transitive(a in term3(), b in term3(), c in term3()) {
            let ab = compare_revlex(&a, &b).unwrap();
            prop_assert_eq!(ab.reverse(), compare_revlex(&b, &a).unwrap());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }

        #[test]
        fn min_term_is_a_lower_bound(set in prop::collection::vec(term3(), 1..8)) {
            let m = min_term(&set).unwrap();
            prop_assert!(set.contains(&m));
            for x in &set {
                prop_assert!(m <= *x);
            }
        }

        #[test]
        fn multiplication_is_monotone(a in term3(), b in term3(), l in term3()) {
            if a < b {
                prop_assert!(l.mul(&a) < l.mul(&b));
            }
        }
    }
}
