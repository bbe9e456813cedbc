//! Dense linear algebra over GF(2) on packed bit vectors.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        let m = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
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

    pub fn and_count(&self, other: &BitVec) -> u32 {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Bits set in `self` are a subset of those in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row echelon form of a list of equal-length rows.
///
/// `pivots[k]` is the pivot column of `rows[k]`; the rows are fully reduced
/// (each pivot column is zero in every other row).
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<BitVec>,
    pub pivots: Vec<usize>,
    ncols: usize,
}

impl Echelon {
    pub fn new(ncols: usize, input: impl IntoIterator<Item = BitVec>) -> Self {
        let mut e = Echelon {
            rows: Vec::new(),
            pivots: Vec::new(),
            ncols,
        };
        for r in input {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `v` against the current rows; returns the residue.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    /// Insert a row; returns false if it was already in the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }
}

/// Rank of the row space.
pub fn rank(ncols: usize, rows: &[BitVec]) -> usize {
    Echelon::new(ncols, rows.iter().cloned()).rank()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows over `ncols` unknowns.
pub fn kernel(ncols: usize, rows: &[BitVec]) -> Vec<BitVec> {
    let e = Echelon::new(ncols, rows.iter().cloned());
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = BitVec::zeros(ncols);
            x.set(free, true);
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if row.get(free) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// One solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(ncols: usize, rows: &[BitVec], rhs: &[bool]) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    // Augment each equation with its right-hand side in the last column.
    let aug: Vec<BitVec> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v = BitVec::zeros(ncols + 1);
            for i in r.iter_ones() {
                v.set(i, true);
            }
            v.set(ncols, b);
            v
        })
        .collect();
    let e = Echelon::new(ncols + 1, aug);
    if e.pivots.contains(&ncols) {
        return None;
    }
    let mut x = BitVec::zeros(ncols);
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        if row.get(ncols) {
            x.set(p, true);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    fn mul(rows: &[BitVec], x: &BitVec) -> Vec<bool> {
        rows.iter().map(|r| r.and_count(x) % 2 == 1).collect()
    }

    #[test]
    fn kernel_small() {
        let rows = vec![bv("0010"), bv("1100"), bv("0010")];
        let k = kernel(4, &rows);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mul(&rows, v).iter().all(|b| !b));
        }
        assert_eq!(rank(4, &rows), 2);
    }

    #[test]
    fn solve_consistent_and_not() {
        let rows = vec![bv("110"), bv("011")];
        let x = solve(3, &rows, &[true, false]).unwrap();
        assert_eq!(mul(&rows, &x), vec![true, false]);
        let rows = vec![bv("11"), bv("11")];
        assert!(solve(2, &rows, &[true, false]).is_none());
    }

    #[test]
    fn bit_iteration_across_words() {
        let v = BitVec::from_indices(200, [0, 63, 64, 199]);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![0, 63, 64, 199]);
        assert_eq!(v.count_ones(), 4);
    }

    proptest::proptest! {
        #[test]
        fn kernel_vectors_annihilate(seed in proptest::collection::vec(proptest::bool::ANY, 7 * 11)) {
            let rows: Vec<BitVec> = seed.chunks(11).map(BitVec::from_bools).collect();
            let k = kernel(11, &rows);
            proptest::prop_assert_eq!(k.len() + rank(11, &rows), 11);
            for v in &k {
                proptest::prop_assert!(mul(&rows, v).iter().all(|b| !b));
            }
        }
    }
}
