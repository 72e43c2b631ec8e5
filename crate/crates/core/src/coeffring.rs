//! Coefficient rings: small finite rings with memoized tables, and the exact
//! integers for characteristic-zero examples.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bitset::{Bits, MAX_CARRIER};
use crate::error::{OreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Arithmetic interface shared by the finite rings and the exact integers.
pub trait CoeffRing: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u64;
    fn is_commutative(&self) -> bool;
    fn is_regular(&self, a: &Self::Elem, side: Side) -> bool;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    fn spec(&self) -> String;

    /// The finite table representation, when there is one.
    fn finite(&self) -> Option<&FiniteRing> {
        None
    }
    fn to_index(&self, _a: &Self::Elem) -> Option<usize> {
        None
    }
    fn from_index(&self, _i: usize) -> Option<Self::Elem> {
        None
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

#[derive(Clone, Debug)]
enum Shape {
    Zmod(u64),
    Product(FiniteRing, FiniteRing),
    Tri2(FiniteRing),
    Sub { parent: FiniteRing, embed: Vec<usize> },
}

#[derive(Debug)]
struct Tables {
    size: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    one: usize,
    characteristic: u64,
    commutative: bool,
    shape: Shape,
    // Mixed-radix additive coordinates: element index i has digits in Z/moduli[k].
    moduli: Option<Vec<u64>>,
    spec: String,
}

/// A finite ring on the carrier `0..size`; index 0 is always the zero element.
#[derive(Clone)]
pub struct FiniteRing {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.t.spec)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.t, &o.t) || (self.t.add == o.t.add && self.t.mul == o.t.mul)
    }
}

/// The exact integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IntegerRing;

#[derive(Clone, Debug)]
pub enum AnyRing {
    Finite(FiniteRing),
    Integer(IntegerRing),
}

impl AnyRing {
    pub fn into_finite(self) -> Result<FiniteRing> {
        match self {
            AnyRing::Finite(r) => Ok(r),
            AnyRing::Integer(_) => Err(OreError::InfiniteRing),
        }
    }
}

/// Parses a ring spec such as `zmod:8`, `product:zmod:2,zmod:3`, `tri2:zmod:2` or `bigint`.
pub fn build_ring(spec: &str) -> Result<AnyRing> {
    let s = spec.trim();
    if s == "bigint" {
        return Ok(AnyRing::Integer(IntegerRing));
    }
    let (ring, rest) = parse_finite(s, spec)?;
    if !rest.trim().is_empty() {
        return Err(malformed(spec, &format!("trailing input `{rest}`")));
    }
    Ok(AnyRing::Finite(ring))
}

pub fn build_finite(spec: &str) -> Result<FiniteRing> {
    build_ring(spec)?.into_finite()
}

fn malformed(spec: &str, reason: &str) -> OreError {
    OreError::MalformedSpec { spec: spec.to_string(), reason: reason.to_string() }
}

fn parse_finite<'a>(s: &'a str, whole: &str) -> Result<(FiniteRing, &'a str)> {
    let s = s.trim_start();
    if let Some(rest) = s.strip_prefix("zmod:") {
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(malformed(whole, "zmod needs a modulus"));
        }
        let n: u64 = rest[..end].parse().map_err(|_| malformed(whole, "bad modulus"))?;
        if n < 2 {
            return Err(malformed(whole, "modulus must be at least 2"));
        }
        if n as usize > MAX_CARRIER {
            return Err(OreError::CarrierTooLarge { size: n as usize, cap: MAX_CARRIER });
        }
        Ok((FiniteRing::zmod(n)?, &rest[end..]))
    } else if let Some(rest) = s.strip_prefix("product:") {
        let (a, rest) = parse_finite(rest, whole)?;
        let rest = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| malformed(whole, "product needs two comma-separated factors"))?;
        let (b, rest) = parse_finite(rest, whole)?;
        Ok((FiniteRing::product(&a, &b)?, rest))
    } else if let Some(rest) = s.strip_prefix("tri2:") {
        let (r, rest) = parse_finite(rest, whole)?;
        Ok((FiniteRing::tri2(&r)?, rest))
    } else if s.starts_with("bigint") {
        Err(malformed(whole, "bigint cannot be a factor of a finite ring"))
    } else {
        Err(malformed(whole, "expected zmod:, product:, tri2: or bigint"))
    }
}

/// Splits at top-level commas, ignoring commas nested in brackets or parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn strip_delims(s: &str, open: char, close: char) -> Option<&str> {
    s.trim().strip_prefix(open)?.strip_suffix(close)
}

fn radix_digits(mut i: usize, moduli: &[u64]) -> Vec<u64> {
    let mut d = vec![0; moduli.len()];
    for k in (0..moduli.len()).rev() {
        d[k] = (i as u64) % moduli[k];
        i /= moduli[k] as usize;
    }
    d
}

impl FiniteRing {
    pub fn zmod(n: u64) -> Result<FiniteRing> {
        let size = n as usize;
        if !(2..=MAX_CARRIER).contains(&size) {
            return Err(OreError::CarrierTooLarge { size, cap: MAX_CARRIER });
        }
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = ((a + b) % size) as u8;
                mul[a * size + b] = ((a * b) % size) as u8;
            }
        }
        Self::finish(add, mul, 1, Shape::Zmod(n), Some(vec![n]), format!("zmod:{n}"))
    }

    pub fn product(a: &FiniteRing, b: &FiniteRing) -> Result<FiniteRing> {
        let (na, nb) = (a.size(), b.size());
        let size = na * nb;
        if size > MAX_CARRIER {
            return Err(OreError::CarrierTooLarge { size, cap: MAX_CARRIER });
        }
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for x in 0..size {
            for y in 0..size {
                let (xa, xb, ya, yb) = (x / nb, x % nb, y / nb, y % nb);
                add[x * size + y] = (a.add(xa, ya) * nb + b.add(xb, yb)) as u8;
                mul[x * size + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u8;
            }
        }
        let one = a.one() * nb + b.one();
        let moduli = match (&a.t.moduli, &b.t.moduli) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
            _ => None,
        };
        let spec = format!("product:{},{}", a.t.spec, b.t.spec);
        Self::finish(add, mul, one, Shape::Product(a.clone(), b.clone()), moduli, spec)
    }

    /// Upper-triangular 2×2 matrices `[[a,b],[0,d]]` over a commutative ring.
    pub fn tri2(r: &FiniteRing) -> Result<FiniteRing> {
        if !r.is_commutative() {
            return Err(malformed(&r.t.spec, "tri2 needs a commutative base ring"));
        }
        let n = r.size();
        let size = n * n * n;
        if size > MAX_CARRIER {
            return Err(OreError::CarrierTooLarge { size, cap: MAX_CARRIER });
        }
        let split = |x: usize| (x / (n * n), (x / n) % n, x % n);
        let join = |a: usize, b: usize, d: usize| (a * n + b) * n + d;
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for x in 0..size {
            let (a, b, d) = split(x);
            for y in 0..size {
                let (a2, b2, d2) = split(y);
                add[x * size + y] = join(r.add(a, a2), r.add(b, b2), r.add(d, d2)) as u8;
                let top = r.add(r.mul(a, b2), r.mul(b, d2));
                mul[x * size + y] = join(r.mul(a, a2), top, r.mul(d, d2)) as u8;
            }
        }
        let one = join(r.one(), 0, r.one());
        let moduli = r.t.moduli.as_ref().map(|m| m.iter().chain(m).chain(m).copied().collect());
        let spec = format!("tri2:{}", r.t.spec);
        Self::finish(add, mul, one, Shape::Tri2(r.clone()), moduli, spec)
    }

    /// The subring on the given elements of `parent` (must contain 0 and 1 and be closed).
    pub fn subring(parent: &FiniteRing, elements: &Bits) -> Result<FiniteRing> {
        let embed: Vec<usize> = elements.iter().collect();
        if embed.first() != Some(&0) || !elements.contains(parent.one()) {
            return Err(OreError::Precondition("subring must contain 0 and 1".into()));
        }
        let size = embed.len();
        let mut pos = vec![usize::MAX; parent.size()];
        for (i, &e) in embed.iter().enumerate() {
            pos[e] = i;
        }
        let look = |e: usize| -> Result<u8> {
            match pos[e] {
                usize::MAX => Err(OreError::Precondition("element set is not closed".into())),
                i => Ok(i as u8),
            }
        };
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for (i, &a) in embed.iter().enumerate() {
            for (j, &b) in embed.iter().enumerate() {
                add[i * size + j] = look(parent.add(a, b))?;
                mul[i * size + j] = look(parent.mul(a, b))?;
            }
        }
        let one = pos[parent.one()];
        let spec = format!("sub({}){:?}", parent.t.spec, embed);
        Self::finish(add, mul, one, Shape::Sub { parent: parent.clone(), embed }, None, spec)
    }

    fn finish(
        add: Vec<u8>,
        mul: Vec<u8>,
        one: usize,
        shape: Shape,
        moduli: Option<Vec<u64>>,
        spec: String,
    ) -> Result<FiniteRing> {
        let size = (add.len() as f64).sqrt().round() as usize;
        let mut neg = vec![0u8; size];
        for a in 0..size {
            neg[a] = (0..size)
                .find(|&b| add[a * size + b] == 0)
                .ok_or(OreError::RingAxiom { axiom: "additive inverse", witness: format!("{a}") })?
                as u8;
        }
        let commutative = (0..size).all(|a| (0..a).all(|b| mul[a * size + b] == mul[b * size + a]));
        let mut characteristic = 1u64;
        let mut acc = one;
        while acc != 0 {
            acc = add[acc * size + one] as usize;
            characteristic += 1;
            if characteristic as usize > size {
                return Err(OreError::RingAxiom { axiom: "finite characteristic", witness: "1".into() });
            }
        }
        let ring = FiniteRing {
            t: Arc::new(Tables { size, add, mul, neg, one, characteristic, commutative, shape, moduli, spec }),
        };
        ring.validate_axioms()?;
        Ok(ring)
    }

    /// Exhaustive check of the ring axioms on the tables.
    pub fn validate_axioms(&self) -> Result<()> {
        let n = self.size();
        let fail = |axiom: &'static str, w: String| Err(OreError::RingAxiom { axiom, witness: w });
        if self.t.add[0] != 0 {
            return fail("additive identity", "0".into());
        }
        for a in 0..n {
            if self.add(a, 0) != a || self.add(0, a) != a {
                return fail("additive identity", format!("{a}"));
            }
            if self.mul(a, self.one()) != a || self.mul(self.one(), a) != a {
                return fail("multiplicative identity", format!("{a}"));
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", format!("({a},{b})"));
                }
                let ab = self.mul(a, b);
                let apb = self.add(a, b);
                for c in 0..n {
                    if self.add(apb, c) != self.add(a, self.add(b, c)) {
                        return fail("additive associativity", format!("({a},{b},{c})"));
                    }
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return fail("multiplicative associativity", format!("({a},{b},{c})"));
                    }
                    if self.mul(apb, c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return fail("right distributivity", format!("({a},{b},{c})"));
                    }
                    if self.mul(c, apb) != self.add(self.mul(c, a), self.mul(c, b)) {
                        return fail("left distributivity", format!("({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.t.size
    }
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.t.add[a * self.t.size + b] as usize
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t.mul[a * self.t.size + b] as usize
    }
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.t.neg[a] as usize
    }
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn one(&self) -> usize {
        self.t.one
    }
    pub fn characteristic(&self) -> u64 {
        self.t.characteristic
    }
    pub fn is_commutative(&self) -> bool {
        self.t.commutative
    }
    pub fn spec(&self) -> &str {
        &self.t.spec
    }
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// n·a for an integer n.
    pub fn int_mul(&self, n: i64, a: usize) -> usize {
        let mut k = n.unsigned_abs();
        let mut acc = 0;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        if n < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    pub fn from_int(&self, n: i64) -> usize {
        self.int_mul(n, self.one())
    }

    /// Moduli of the additive coordinate decomposition, if the ring has one.
    pub fn additive_moduli(&self) -> Option<&[u64]> {
        self.t.moduli.as_deref()
    }

    pub fn to_coords(&self, a: usize) -> Option<Vec<u64>> {
        self.t.moduli.as_ref().map(|m| radix_digits(a, m))
    }

    pub fn from_coords(&self, digits: &[u64]) -> Option<usize> {
        let m = self.t.moduli.as_ref()?;
        let mut i = 0usize;
        for (d, q) in digits.iter().zip(m) {
            i = i * (*q as usize) + (*d % *q) as usize;
        }
        Some(i)
    }

    /// {x : x·a = 0}
    pub fn left_annihilator(&self, a: usize) -> Bits {
        Bits::from_iter(self.elements().filter(|&x| self.mul(x, a) == 0))
    }

    /// {x : a·x = 0}
    pub fn right_annihilator(&self, a: usize) -> Bits {
        Bits::from_iter(self.elements().filter(|&x| self.mul(a, x) == 0))
    }

    /// {x : x·a = 0 for all a in the set}
    pub fn left_annihilator_of(&self, set: &Bits) -> Bits {
        Bits::from_iter(self.elements().filter(|&x| set.iter().all(|a| self.mul(x, a) == 0)))
    }

    pub fn is_regular(&self, a: usize, side: Side) -> bool {
        let left = || self.left_annihilator(a).len() == 1;
        let right = || self.right_annihilator(a).len() == 1;
        match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::Both => left() && right(),
        }
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one() && self.mul(b, a) == self.one())
    }

    /// Additive subgroup generated by a set.
    pub fn additive_closure(&self, gens: &Bits) -> Bits {
        let mut set = Bits::singleton(0);
        let mut frontier: Vec<usize> = vec![0];
        let gens: Vec<usize> = gens.iter().collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.add(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// Left ideal R·gens.
    pub fn left_ideal(&self, gens: &Bits) -> Bits {
        let prods = Bits::from_iter(gens.iter().flat_map(|g| self.elements().map(move |r| (r, g))).map(|(r, g)| self.mul(r, g)));
        self.additive_closure(&prods)
    }

    /// Two-sided ideal R·gens·R.
    pub fn two_sided_ideal(&self, gens: &Bits) -> Bits {
        let mut prods = Bits::EMPTY;
        for g in gens.iter() {
            for r in self.elements() {
                let rg = self.mul(r, g);
                for s in self.elements() {
                    prods.insert(self.mul(rg, s));
                }
            }
        }
        self.additive_closure(&prods)
    }

    pub fn is_left_ideal(&self, set: &Bits) -> bool {
        set.contains(0)
            && set.iter().all(|a| {
                set.iter().all(|b| set.contains(self.add(a, b)))
                    && self.elements().all(|r| set.contains(self.mul(r, a)))
            })
    }

    pub fn format(&self, a: usize) -> String {
        match &self.t.shape {
            Shape::Zmod(_) => a.to_string(),
            Shape::Product(x, y) => {
                let nb = y.size();
                format!("({},{})", x.format(a / nb), y.format(a % nb))
            }
            Shape::Tri2(r) => {
                let n = r.size();
                let (p, q, d) = (a / (n * n), (a / n) % n, a % n);
                format!("[[{},{}],[{},{}]]", r.format(p), r.format(q), r.format(0), r.format(d))
            }
            Shape::Sub { parent, embed } => parent.format(embed[a]),
        }
    }

    pub fn parse(&self, s: &str) -> Result<usize> {
        let bad = |why: &str| OreError::Parse { input: s.to_string(), reason: why.to_string() };
        let s = s.trim();
        match &self.t.shape {
            Shape::Zmod(n) => {
                let v: i64 = s.parse().map_err(|_| bad("expected an integer residue"))?;
                Ok(v.rem_euclid(*n as i64) as usize)
            }
            Shape::Product(x, y) => {
                let inner = strip_delims(s, '(', ')').unwrap_or(s);
                let parts = split_top(inner);
                if parts.len() != 2 {
                    return Err(bad("expected a pair (a,b)"));
                }
                Ok(x.parse(parts[0])? * y.size() + y.parse(parts[1])?)
            }
            Shape::Tri2(r) => {
                let rows = split_top(strip_delims(s, '[', ']').ok_or_else(|| bad("expected [[a,b],[0,d]]"))?);
                if rows.len() != 2 {
                    return Err(bad("expected two rows"));
                }
                let top = split_top(strip_delims(rows[0], '[', ']').ok_or_else(|| bad("bad first row"))?);
                let bot = split_top(strip_delims(rows[1], '[', ']').ok_or_else(|| bad("bad second row"))?);
                if top.len() != 2 || bot.len() != 2 || r.parse(bot[0])? != 0 {
                    return Err(bad("expected an upper-triangular matrix"));
                }
                let n = r.size();
                Ok((r.parse(top[0])? * n + r.parse(top[1])?) * n + r.parse(bot[1])?)
            }
            Shape::Sub { parent, embed } => {
                let e = parent.parse(s)?;
                embed.iter().position(|&x| x == e).ok_or_else(|| bad("element is not in the subring"))
            }
        }
    }

    /// Subrings (containing 1) of this ring, by closure of generator sets.
    pub fn subrings(&self) -> Vec<Bits> {
        let prime = self.additive_closure(&Bits::singleton(self.one()));
        let mut found: Vec<Bits> = vec![prime];
        let mut i = 0;
        while i < found.len() {
            let cur = found[i];
            for g in self.elements() {
                if cur.contains(g) {
                    continue;
                }
                let next = self.ring_closure(&cur.union(&Bits::singleton(g)));
                if !found.contains(&next) {
                    found.push(next);
                }
            }
            i += 1;
        }
        found.sort_by_key(|b| (b.len(), *b));
        found
    }

    fn ring_closure(&self, gens: &Bits) -> Bits {
        let mut set = self.additive_closure(&gens.union(&Bits::singleton(self.one())));
        loop {
            let mut prods = set;
            for a in set.iter() {
                for b in set.iter() {
                    prods.insert(self.mul(a, b));
                }
            }
            let next = self.additive_closure(&prods);
            if next == set {
                return set;
            }
            set = next;
        }
    }

    /// For a subring built by [`FiniteRing::subring`], the parent index of each element.
    pub fn embedding(&self) -> Option<&[usize]> {
        match &self.t.shape {
            Shape::Sub { embed, .. } => Some(embed),
            _ => None,
        }
    }
}

impl CoeffRing for FiniteRing {
    type Elem = usize;

    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.t.one
    }
    fn add(&self, a: &usize, b: &usize) -> usize {
        FiniteRing::add(self, *a, *b)
    }
    fn neg(&self, a: &usize) -> usize {
        FiniteRing::neg(self, *a)
    }
    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteRing::mul(self, *a, *b)
    }
    fn from_int(&self, n: i64) -> usize {
        FiniteRing::from_int(self, n)
    }
    fn characteristic(&self) -> u64 {
        self.t.characteristic
    }
    fn is_commutative(&self) -> bool {
        self.t.commutative
    }
    fn is_regular(&self, a: &usize, side: Side) -> bool {
        FiniteRing::is_regular(self, *a, side)
    }
    fn format_elem(&self, a: &usize) -> String {
        self.format(*a)
    }
    fn parse_elem(&self, s: &str) -> Result<usize> {
        self.parse(s)
    }
    fn spec(&self) -> String {
        self.t.spec.clone()
    }
    fn finite(&self) -> Option<&FiniteRing> {
        Some(self)
    }
    fn to_index(&self, a: &usize) -> Option<usize> {
        Some(*a)
    }
    fn from_index(&self, i: usize) -> Option<usize> {
        (i < self.size()).then_some(i)
    }
    fn is_zero(&self, a: &usize) -> bool {
        *a == 0
    }
}

impl CoeffRing for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn is_commutative(&self) -> bool {
        true
    }
    fn is_regular(&self, a: &BigInt, _side: Side) -> bool {
        !a.is_zero()
    }
    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<BigInt> {
        s.trim()
            .parse()
            .map_err(|_| OreError::Parse { input: s.to_string(), reason: "expected an integer".into() })
    }
    fn spec(&self) -> String {
        "bigint".into()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
}

/// A map on coefficients: identity, zero, or an explicit table on a finite ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffMap {
    Identity,
    Zero,
    Table(Vec<usize>),
}

impl CoeffMap {
    pub fn apply<R: CoeffRing>(&self, r: &R, a: &R::Elem) -> R::Elem {
        match self {
            CoeffMap::Identity => a.clone(),
            CoeffMap::Zero => r.zero(),
            CoeffMap::Table(t) => {
                let i = r.to_index(a).expect("table maps need a finite ring");
                r.from_index(t[i]).expect("table entry out of range")
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            CoeffMap::Identity => true,
            CoeffMap::Table(t) => t.iter().enumerate().all(|(i, &v)| i == v),
            CoeffMap::Zero => false,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CoeffMap::Zero => true,
            CoeffMap::Table(t) => t.iter().all(|&v| v == 0),
            CoeffMap::Identity => false,
        }
    }

    pub fn table(&self, r: &FiniteRing) -> Vec<usize> {
        match self {
            CoeffMap::Identity => r.elements().collect(),
            CoeffMap::Zero => vec![0; r.size()],
            CoeffMap::Table(t) => t.clone(),
        }
    }

    pub fn compose(&self, inner: &CoeffMap) -> CoeffMap {
        match (self, inner) {
            (CoeffMap::Identity, m) | (m, CoeffMap::Identity) => m.clone(),
            (CoeffMap::Zero, _) => CoeffMap::Zero,
            (CoeffMap::Table(a), CoeffMap::Zero) => CoeffMap::Table(vec![a[0]; a.len()]),
            (CoeffMap::Table(a), CoeffMap::Table(b)) => CoeffMap::Table(b.iter().map(|&x| a[x]).collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoKind {
    Endomorphism,
    Automorphism,
    SigmaDerivation,
}

/// A declared endomorphism, automorphism or σ-derivation of a finite ring.
#[derive(Clone, Debug)]
pub struct RingEndoData {
    pub kind: EndoKind,
    pub map: Vec<usize>,
    /// The conjugation σ for a σ-derivation; `None` means the identity.
    pub partner: Option<Vec<usize>>,
}

impl RingEndoData {
    pub fn new(kind: EndoKind, map: Vec<usize>) -> Self {
        RingEndoData { kind, map, partner: None }
    }

    pub fn derivation(map: Vec<usize>, sigma: Vec<usize>) -> Self {
        RingEndoData { kind: EndoKind::SigmaDerivation, map, partner: Some(sigma) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoViolation {
    pub axiom: &'static str,
    pub a: usize,
    pub b: usize,
}

/// Checks the axioms of the declared kind; `Ok(None)` means the map is valid.
pub fn validate_endo(r: &FiniteRing, data: &RingEndoData) -> Result<Option<EndoViolation>> {
    let n = r.size();
    let total = |m: &Vec<usize>| -> Result<()> {
        if m.len() != n || m.iter().any(|&v| v >= n) {
            return Err(OreError::MapNotTotal { expected: n, got: m.iter().filter(|&&v| v < n).count().min(m.len()) });
        }
        Ok(())
    };
    total(&data.map)?;
    let f = &data.map;
    let v = |axiom, a, b| Ok(Some(EndoViolation { axiom, a, b }));
    match data.kind {
        EndoKind::Endomorphism | EndoKind::Automorphism => {
            for a in 0..n {
                for b in 0..n {
                    if r.mul(f[a], f[b]) != f[r.mul(a, b)] {
                        return v("multiplicative", a, b);
                    }
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if r.add(f[a], f[b]) != f[r.add(a, b)] {
                        return v("additive", a, b);
                    }
                }
            }
            if f[r.one()] != r.one() {
                return v("unital", r.one(), r.one());
            }
            if data.kind == EndoKind::Automorphism {
                let mut seen = Bits::EMPTY;
                for a in 0..n {
                    if seen.contains(f[a]) {
                        let b = (0..a).find(|&b| f[b] == f[a]).unwrap_or(0);
                        return v("injective", b, a);
                    }
                    seen.insert(f[a]);
                }
            }
        }
        EndoKind::SigmaDerivation => {
            let identity: Vec<usize> = (0..n).collect();
            let sigma = data.partner.as_ref().unwrap_or(&identity);
            total(sigma)?;
            for a in 0..n {
                for b in 0..n {
                    if r.add(f[a], f[b]) != f[r.add(a, b)] {
                        return v("additive", a, b);
                    }
                    let rhs = r.add(r.mul(sigma[a], f[b]), r.mul(f[a], b));
                    if f[r.mul(a, b)] != rhs {
                        return v("twisted Leibniz", a, b);
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The test zoo: Z/n, products of two or three cyclic rings, and upper-triangular
/// 2×2 matrices over Z/2 and Z/3, restricted to at most `max_size` elements.
pub fn zoo(max_size: usize) -> Vec<FiniteRing> {
    let mut out = Vec::new();
    let z = |n: u64| FiniteRing::zmod(n).unwrap();
    for n in 2..=max_size.min(60) as u64 {
        out.push(z(n));
    }
    for a in 2..=8u64 {
        for b in a..=16u64 {
            if (a * b) as usize <= max_size.min(64) {
                out.push(FiniteRing::product(&z(a), &z(b)).unwrap());
            }
        }
    }
    for (a, b, c) in [(2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 2, 4), (2, 2, 5)] {
        if (a * b * c) as usize <= max_size {
            let bc = FiniteRing::product(&z(b), &z(c)).unwrap();
            out.push(FiniteRing::product(&z(a), &bc).unwrap());
        }
    }
    for n in [2u64, 3] {
        if (n * n * n) as usize <= max_size {
            out.push(FiniteRing::tri2(&z(n)).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_named_rings() {
        let r = build_finite("zmod:8").unwrap();
        assert_eq!((r.size(), r.characteristic()), (8, 8));
        let p = build_finite("product:zmod:2,zmod:3").unwrap();
        assert_eq!((p.size(), p.characteristic()), (6, 6));
        assert!(p.is_commutative());
        let t = build_finite("tri2:zmod:2").unwrap();
        assert_eq!(t.size(), 8);
        assert!(!t.is_commutative());
        assert!(matches!(build_ring("bigint").unwrap(), AnyRing::Integer(_)));
    }

    #[test]
    fn product_of_coprime_moduli_is_cyclic() {
        let p = build_finite("product:zmod:2,zmod:3").unwrap();
        // an element of additive order 6 exists, so (Z/6, +) ≅ (P, +) and 1 generates
        let one = p.one();
        let mut orbit = Bits::EMPTY;
        let mut x = 0;
        for _ in 0..6 {
            x = p.add(x, one);
            orbit.insert(x);
        }
        assert_eq!(orbit.len(), 6);
        for k in 0..6i64 {
            for l in 0..6i64 {
                assert_eq!(p.mul(p.from_int(k), p.from_int(l)), p.from_int(k * l));
            }
        }
    }

    #[test]
    fn tri2_noncommutative_by_exhaustion() {
        let t = build_finite("tri2:zmod:2").unwrap();
        let witness = (0..8).flat_map(|a| (0..8).map(move |b| (a, b))).find(|&(a, b)| t.mul(a, b) != t.mul(b, a));
        assert!(witness.is_some());
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(build_ring("zmod:300"), Err(OreError::CarrierTooLarge { size: 300, .. })));
        assert!(matches!(build_ring("product:zmod:16,zmod:32"), Err(OreError::CarrierTooLarge { size: 512, .. })));
        assert!(matches!(build_ring("zmod:1"), Err(OreError::MalformedSpec { .. })));
        assert!(matches!(build_ring("zmod8"), Err(OreError::MalformedSpec { .. })));
        assert!(matches!(build_ring("zmod:4 junk"), Err(OreError::MalformedSpec { .. })));
        assert!(build_ring("tri2:tri2:zmod:2").is_err());
    }

    #[test]
    fn annihilators() {
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.left_annihilator(2).to_vec(), vec![0, 3]);
        assert_eq!(z6.left_annihilator(5).to_vec(), vec![0]);
        let z8 = FiniteRing::zmod(8).unwrap();
        assert_eq!(z8.left_annihilator(4).to_vec(), vec![0, 2, 4, 6]);
        assert!(z6.is_regular(5, Side::Both));
        assert!(!z6.is_regular(2, Side::Left));
        let t = build_finite("tri2:zmod:2").unwrap();
        let e12 = t.parse("[[0,1],[0,0]]").unwrap();
        assert!(!t.is_regular(e12, Side::Left));
        assert!(IntegerRing.is_regular(&BigInt::from(-3), Side::Both));
        assert!(!IntegerRing.is_regular(&BigInt::from(0), Side::Left));
    }

    #[test]
    fn element_text_round_trips() {
        for spec in ["zmod:12", "product:zmod:2,zmod:3", "tri2:zmod:2", "product:product:zmod:2,zmod:2,zmod:3", "tri2:product:zmod:2,zmod:2"] {
            let r = build_finite(spec).unwrap();
            for a in r.elements() {
                assert_eq!(r.parse(&r.format(a)).unwrap(), a, "{spec} {a}");
            }
        }
        let t = build_finite("tri2:zmod:2").unwrap();
        assert_eq!(t.format(t.one()), "[[1,0],[0,1]]");
    }

    #[test]
    fn coordinates_match_addition() {
        for spec in ["product:zmod:4,zmod:6", "tri2:zmod:3"] {
            let r = build_finite(spec).unwrap();
            let m = r.additive_moduli().unwrap().to_vec();
            for a in r.elements() {
                for b in r.elements() {
                    let (ca, cb) = (r.to_coords(a).unwrap(), r.to_coords(b).unwrap());
                    let sum: Vec<u64> = ca.iter().zip(&cb).zip(&m).map(|((x, y), q)| (x + y) % q).collect();
                    assert_eq!(r.from_coords(&sum).unwrap(), r.add(a, b));
                }
            }
        }
    }

    #[test]
    fn endomorphism_validation() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(validate_endo(&z4, &RingEndoData::new(EndoKind::Automorphism, id)).unwrap(), None);
        let dbl: Vec<usize> = (0..4).map(|a| 2 * a % 4).collect();
        let bad = validate_endo(&z4, &RingEndoData::new(EndoKind::Endomorphism, dbl)).unwrap().unwrap();
        assert_eq!((bad.a, bad.b), (1, 1));
        let z8 = FiniteRing::zmod(8).unwrap();
        let zero = RingEndoData::derivation(vec![0; 8], (0..8).collect());
        assert_eq!(validate_endo(&z8, &zero).unwrap(), None);
        assert!(matches!(
            validate_endo(&z8, &RingEndoData::new(EndoKind::Endomorphism, vec![0; 5])),
            Err(OreError::MapNotTotal { expected: 8, .. })
        ));
    }

    #[test]
    fn inner_derivation_is_a_derivation() {
        // δ(a) = ta − at on tri2 is an (identity-)derivation.
        let r = build_finite("tri2:zmod:2").unwrap();
        let t = r.parse("[[1,1],[0,0]]").unwrap();
        let d: Vec<usize> = r.elements().map(|a| r.sub(r.mul(t, a), r.mul(a, t))).collect();
        assert!(d.iter().any(|&x| x != 0));
        assert_eq!(validate_endo(&r, &RingEndoData::derivation(d, r.elements().collect())).unwrap(), None);
    }

    #[test]
    fn subrings_of_small_rings() {
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.subrings().len(), 1);
        let p = build_finite("product:zmod:2,zmod:2").unwrap();
        // the diagonal copy of F2 and the whole ring
        assert_eq!(p.subrings().len(), 2);
        let t = build_finite("tri2:zmod:2").unwrap();
        for s in t.subrings() {
            let sub = FiniteRing::subring(&t, &s).unwrap();
            assert_eq!(sub.size(), s.len());
        }
    }
}
