//! Fixed-width element sets for carriers of at most 256 elements.

use std::fmt;

pub const MAX_CARRIER: usize = 256;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bits([u64; 4]);

impl Bits {
    pub const EMPTY: Bits = Bits([0; 4]);

    pub fn singleton(i: usize) -> Bits {
        let mut b = Bits::EMPTY;
        b.insert(i);
        b
    }

    pub fn full(n: usize) -> Bits {
        let mut b = Bits::EMPTY;
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Bits {
        let mut b = Bits::EMPTY;
        for i in it {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < MAX_CARRIER && self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn union(&self, o: &Bits) -> Bits {
        Bits([0, 1, 2, 3].map(|k| self.0[k] | o.0[k]))
    }

    pub fn intersect(&self, o: &Bits) -> Bits {
        Bits([0, 1, 2, 3].map(|k| self.0[k] & o.0[k]))
    }

    pub fn minus(&self, o: &Bits) -> Bits {
        Bits([0, 1, 2, 3].map(|k| self.0[k] & !o.0[k]))
    }

    pub fn is_subset(&self, o: &Bits) -> bool {
        (0..4).all(|k| self.0[k] & !o.0[k] == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |k| {
            let mut w = self.0[k];
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = Bits::from_iter([0, 5, 64, 200]);
        let b = Bits::from_iter([5, 200, 255]);
        assert_eq!(a.intersect(&b).to_vec(), vec![5, 200]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.minus(&b).to_vec(), vec![0, 64]);
        assert!(Bits::from_iter([5]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(Bits::full(256).contains(255));
    }
}
