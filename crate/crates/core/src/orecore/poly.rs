use std::collections::BTreeMap;
use std::fmt;

use crate::coeffring::CoeffRing;
use crate::error::{OreError, Result};
use crate::termorder::{LaurentTerm, LeadTerm, Monomial, Term};

/// A finite R-linear combination of terms with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<M: Monomial, E> {
    terms: BTreeMap<M, E>,
}

pub type SkewPoly<E> = Poly<Term, E>;
pub type LaurentPoly<E> = Poly<LaurentTerm, E>;

impl<M: Monomial, E: Clone + Eq + fmt::Debug> Poly<M, E> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial<R: CoeffRing<Elem = E>>(r: &R, c: E, t: M) -> Self {
        let mut p = Self::zero();
        p.add_term(r, t, c);
        p
    }

    pub fn term(r: &impl CoeffRing<Elem = E>, t: M) -> Self {
        Self::monomial(r, r.one(), t)
    }

    pub fn constant<R: CoeffRing<Elem = E>>(r: &R, c: E, nvars: usize) -> Self {
        Self::monomial(r, c, M::one_of(nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, t: &M) -> Option<&E> {
        self.terms.get(t)
    }

    /// Terms in increasing order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&M, &E)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &M> {
        self.terms.keys()
    }

    pub fn add_term<R: CoeffRing<Elem = E>>(&mut self, r: &R, t: M, c: E) {
        if r.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(old) => {
                let s = r.add(old, &c);
                if r.is_zero(&s) {
                    self.terms.remove(&t);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(r, o);
        out
    }

    pub fn add_assign<R: CoeffRing<Elem = E>>(&mut self, r: &R, o: &Self) {
        for (t, c) in &o.terms {
            self.add_term(r, t.clone(), c.clone());
        }
    }

    pub fn neg<R: CoeffRing<Elem = E>>(&self, r: &R) -> Self {
        Poly { terms: self.terms.iter().map(|(t, c)| (t.clone(), r.neg(c))).collect() }
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        self.add(r, &o.neg(r))
    }

    /// a·f, multiplying every coefficient on the left.
    pub fn scale_left<R: CoeffRing<Elem = E>>(&self, r: &R, a: &E) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(r, t.clone(), r.mul(a, c));
        }
        out
    }

    /// Multiplies every term on the right by a term that commutes past nothing,
    /// i.e. plain exponent addition (valid when `t` only involves variables at or
    /// above every variable of `self`).
    pub fn shift(&self, t: &M) -> Self {
        Poly { terms: self.terms.iter().map(|(s, c)| (s.times(t), c.clone())).collect() }
    }

    pub fn map_coeffs<R: CoeffRing<Elem = E>>(&self, r: &R, f: impl Fn(&E) -> E) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            out.add_term(r, t.clone(), f(c));
        }
        out
    }

    pub fn lead(&self) -> LeadTerm<M> {
        match self.terms.keys().next_back() {
            Some(t) => LeadTerm::Term(t.clone()),
            None => LeadTerm::Bottom,
        }
    }

    pub fn lt(&self) -> Option<&M> {
        self.terms.keys().next_back()
    }

    pub fn lc(&self) -> Option<&E> {
        self.terms.values().next_back()
    }

    pub fn nvars(&self) -> Option<usize> {
        self.terms.keys().next().map(|t| t.nvars())
    }

    pub fn format<R: CoeffRing<Elem = E>>(&self, r: &R) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(t, c)| {
                if t.is_one() {
                    r.format_elem(c)
                } else if r.is_one(c) {
                    format!("{t:?}")
                } else {
                    format!("{}*{t:?}", r.format_elem(c))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// (lt(f), lc(f)); the zero polynomial gives the bottom sentinel and coefficient 0.
pub fn leading_data<M: Monomial, R: CoeffRing>(r: &R, f: &Poly<M, R::Elem>) -> (LeadTerm<M>, R::Elem) {
    (f.lead(), f.lc().cloned().unwrap_or_else(|| r.zero()))
}

impl<E: Clone + Eq + fmt::Debug> Poly<Term, E> {
    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|t| t.total_degree()).max().unwrap_or(0)
    }

    /// Highest exponent of variable `i` in the support (0 for the zero polynomial).
    pub fn deg_var(&self, i: usize) -> u32 {
        self.terms.keys().map(|t| t.deg(i)).max().unwrap_or(0)
    }

    /// Largest variable index occurring.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|t| t.leading_var()).max()
    }

    /// The part of `self` whose terms have x_i-degree exactly `k`.
    pub fn stratum(&self, i: usize, k: u32) -> Self {
        Poly { terms: self.terms.iter().filter(|(t, _)| t.deg(i) == k).map(|(t, c)| (t.clone(), c.clone())).collect() }
    }

    pub fn parse<R: CoeffRing<Elem = E>>(r: &R, s: &str, nvars: usize) -> Result<Self> {
        parse_poly(r, s, nvars, Term::parse)
    }
}

impl<E: Clone + Eq + fmt::Debug> Poly<LaurentTerm, E> {
    pub fn parse<R: CoeffRing<Elem = E>>(r: &R, s: &str, nvars: usize) -> Result<Self> {
        parse_poly(r, s, nvars, LaurentTerm::parse)
    }
}

fn split_depth0(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_poly<M: Monomial, R: CoeffRing>(
    r: &R,
    s: &str,
    nvars: usize,
    term: impl Fn(&str, usize) -> Result<M>,
) -> Result<Poly<M, R::Elem>> {
    let mut p = Poly::zero();
    if s.trim() == "0" {
        return Ok(p);
    }
    for mono in split_depth0(s, '+') {
        let mono = mono.trim();
        if mono.is_empty() {
            return Err(OreError::Parse { input: s.into(), reason: "empty summand".into() });
        }
        let factors = split_depth0(mono, '*');
        let first = factors[0].trim();
        let (coeff, rest) = if first.starts_with('x') {
            (r.one(), &factors[..])
        } else {
            (r.parse_elem(first)?, &factors[1..])
        };
        let t = if rest.is_empty() {
            M::one_of(nvars)
        } else {
            term(&rest.join("*"), nvars)?
        };
        p.add_term(r, t, coeff);
    }
    Ok(p)
}

impl<M: Monomial, E: fmt::Debug> fmt::Debug for Poly<M, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (t, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c:?}*{t:?}")?;
        }
        Ok(())
    }
}
