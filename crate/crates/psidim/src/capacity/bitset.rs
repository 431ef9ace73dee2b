//! Minimal fixed-width bitset over function indices. The shattering and
//! covering searches spend most of their time intersecting these.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn empty(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.set(i);
        }
        s
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    pub fn test(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn is_full(&self) -> bool {
        (0..self.len).all(|i| self.test(i))
    }

    pub fn and_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        let mut out = self.clone();
        out.and_assign(other);
        out
    }

    /// Lowest set bit, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (w_idx, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(w_idx * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Ones in `self & other` without allocating.
    pub fn count_intersection(&self, other: &Bitset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops_across_word_boundary() {
        let mut a = Bitset::empty(130);
        a.set(0);
        a.set(64);
        a.set(129);
        assert!(a.test(0) && a.test(64) && a.test(129));
        assert!(!a.test(1));
        assert_eq!(a.count_ones(), 3);
        assert_eq!(a.first_set(), Some(0));

        let mut b = Bitset::empty(130);
        b.set(64);
        b.set(100);
        assert_eq!(a.count_intersection(&b), 1);

        a.and_assign(&b);
        assert_eq!(a.first_set(), Some(64));
        assert_eq!(a.count_ones(), 1);

        a.or_assign(&b);
        assert!(a.test(100));

        assert!(Bitset::full(130).is_full());
        assert!(!Bitset::empty(3).any());
    }
}
