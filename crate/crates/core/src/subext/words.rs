//! Distinctness of words in a few generators, the bounded evidence that they
//! generate a free monoid.

use std::collections::HashMap;

use serde::Serialize;

use crate::coeffring::CoeffRing;
use crate::error::Result;
use crate::orecore::{SkewPoly, SkewPolyRing};

#[derive(Clone, Debug, Serialize)]
pub struct WordReport {
    pub max_len: usize,
    /// Number of words of each length 1..=max_len.
    pub counts: Vec<usize>,
    /// Every word of length two with its product.
    pub length_two: Vec<(String, String)>,
    /// Two distinct words with equal products, if any.
    pub collision: Option<(String, String, String)>,
    /// A word whose product vanishes, if any.
    pub zero_word: Option<String>,
}

impl WordReport {
    pub fn distinct(&self) -> bool {
        self.collision.is_none() && self.zero_word.is_none()
    }
}

/// Multiplies out all words of length ≤ max_len in the named generators and
/// checks that distinct words give distinct nonzero elements.
pub fn free_words_distinct<R: CoeffRing>(
    s: &SkewPolyRing<R>,
    gens: &[(&str, SkewPoly<R::Elem>)],
    max_len: usize,
) -> Result<WordReport> {
    let mut report =
        WordReport { max_len, counts: Vec::new(), length_two: Vec::new(), collision: None, zero_word: None };
    let mut seen: HashMap<SkewPoly<R::Elem>, String> = HashMap::new();
    let mut layer: Vec<(String, SkewPoly<R::Elem>)> = vec![(String::new(), s.one())];
    for len in 1..=max_len {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for (w, p) in &layer {
            for (name, g) in gens {
                let word = if w.is_empty() { name.to_string() } else { format!("{w}·{name}") };
                let prod = s.mul(p, g)?;
                if len == 2 {
                    report.length_two.push((word.clone(), s.format(&prod)));
                }
                if prod.is_zero() {
                    report.zero_word.get_or_insert(word.clone());
                } else if let Some(prev) = seen.get(&prod) {
                    report.collision.get_or_insert((prev.clone(), word.clone(), s.format(&prod)));
                } else {
                    seen.insert(prod.clone(), word.clone());
                }
                next.push((word, prod));
            }
        }
        report.counts.push(next.len());
        if !report.distinct() {
            break;
        }
        layer = next;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::FiniteRing;

    #[test]
    fn commuting_generators_collide() {
        let s = SkewPolyRing::commutative(FiniteRing::zmod(5).unwrap(), 2).unwrap();
        let x = s.var(0);
        let y = s.var(1);
        let r = free_words_distinct(&s, &[("x", x), ("y", y)], 3).unwrap();
        let (a, b, _) = r.collision.unwrap();
        assert_eq!((a.as_str(), b.as_str()), ("x·y", "y·x"));
    }

    #[test]
    fn single_generator_is_free() {
        let s = SkewPolyRing::commutative(FiniteRing::zmod(5).unwrap(), 1).unwrap();
        let r = free_words_distinct(&s, &[("x", s.var(0))], 6).unwrap();
        assert!(r.distinct());
        assert_eq!(r.counts, vec![1; 6]);
    }
}
