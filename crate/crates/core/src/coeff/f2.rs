//! Dense linear algebra over F2.

use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Row echelon basis in which every stored row remembers, as a tag, which
/// combination of tracked inputs produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<(BitVec, BitVec)>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis, returning the remainder and the
    /// accumulated tag of the rows used.
    pub fn reduce(&self, mut v: BitVec, mut tag: BitVec) -> (BitVec, BitVec) {
        while let Some(p) = v.first_one() {
            match self.pivots.get(&p) {
                Some(&r) => {
                    v.xor_assign(&self.rows[r].0);
                    tag.xor_assign(&self.rows[r].1);
                }
                None => break,
            }
        }
        (v, tag)
    }

    /// Inserts `v` with its tag. Returns `None` if `v` was independent,
    /// otherwise the tag of the dependency (which reduces `v` to zero).
    pub fn insert(&mut self, v: BitVec, tag: BitVec) -> Option<BitVec> {
        let (rem, tag) = self.reduce(v, tag);
        match rem.first_one() {
            Some(p) => {
                self.pivots.insert(p, self.rows.len());
                self.rows.push((rem, tag));
                None
            }
            None => Some(tag),
        }
    }

    /// Clears every pivot position of `v`, giving a representative of
    /// `v` modulo the span that depends linearly on `v`.
    pub fn normal_form(&self, mut v: BitVec) -> BitVec {
        let mut order: Vec<(usize, usize)> = self.pivots.iter().map(|(&p, &r)| (p, r)).collect();
        order.sort_unstable();
        for (p, r) in order {
            if v.get(p) {
                v.xor_assign(&self.rows[r].0);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec, tag_len: usize) -> bool {
        self.reduce(v.clone(), BitVec::zeros(tag_len)).0.is_zero()
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

/// Kernel of the linear map sending basis vector `i` to `images[i]`.
pub fn kernel(images: &[BitVec]) -> Vec<BitVec> {
    let n = images.len();
    let mut e = Echelon::new();
    let mut ker = Vec::new();
    for (i, img) in images.iter().enumerate() {
        if let Some(tag) = e.insert(img.clone(), BitVec::unit(n, i)) {
            ker.push(tag);
        }
    }
    ker
}

pub fn rank(vectors: &[BitVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone(), BitVec::zeros(0));
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[u8]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b == 1);
        }
        v
    }

    #[test]
    fn kernel_of_small_map() {
        let images = vec![bv(&[1, 0]), bv(&[1, 0]), bv(&[0, 1])];
        let ker = kernel(&images);
        assert_eq!(ker, vec![bv(&[1, 1, 0])]);
        assert_eq!(rank(&images), 2);
    }

    #[test]
    fn bits_across_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(129, true);
        v.flip(64);
        assert_eq!(v.first_one(), Some(64));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![64, 129]);
    }
}
