//! Abelian groups of signed Hermitian Pauli words in canonical reduced form.

use std::fmt;

use serde::Serialize;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::gf2::{kernel, BitVec};
use crate::pauli::{Letter, PauliWord, Phase};

/// Column of the symplectic vector used for pivoting: `2q` for the X part of
/// qubit `q`, `2q + 1` for its Z part.
fn has_column(w: &PauliWord, col: usize) -> bool {
    let (x, z) = w.letter(col / 2).bits();
    if col % 2 == 0 {
        x
    } else {
        z
    }
}

fn first_column(w: &PauliWord) -> Option<usize> {
    (0..w.num_qubits()).find_map(|q| match w.letter(q) {
        Letter::I => None,
        Letter::Z => Some(2 * q + 1),
        _ => Some(2 * q),
    })
}

fn symplectic(w: &PauliWord) -> BitVec {
    let n = w.num_qubits();
    let mut v = BitVec::zeros(2 * n);
    for q in 0..n {
        let (x, z) = w.letter(q).bits();
        v.set(2 * q, x);
        v.set(2 * q + 1, z);
    }
    v
}

/// A stabilizer group given by signed generators; the generators are kept
/// fully reduced so that equal groups have identical generator lists.
///
/// Each generator is a `PauliWord` whose phase is the sign (`+1` or `-1`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedStabilizerGroup {
    n: usize,
    generators: Vec<PauliWord>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl SignedStabilizerGroup {
    pub fn trivial(n: usize) -> Self {
        SignedStabilizerGroup {
            n,
            generators: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Group generated by the given signed words.
    ///
    /// Fails if a word is not Hermitian, two words anticommute, or the signs
    /// are contradictory (the group would contain `-I`).
    pub fn from_generators(n: usize, words: &[PauliWord]) -> Result<Self> {
        let mut g = Self::trivial(n);
        for w in words {
            g.insert(w)?;
        }
        Ok(g)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Canonical generators, each carrying its sign as phase.
    pub fn generators(&self) -> &[PauliWord] {
        &self.generators
    }

    /// Number of independent generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Dimension of the joint eigenspace, `2^(n - rank)`.
    pub fn projector_rank(&self) -> u64 {
        1u64 << (self.n - self.rank())
    }

    /// Multiply `w` by generators until no pivot column remains set.
    fn reduce_word(&self, w: &PauliWord) -> PauliWord {
        let mut r = w.clone();
        for (g, &p) in self.generators.iter().zip(&self.pivots) {
            if has_column(&r, p) {
                r = r.mul_unchecked(g);
            }
        }
        r
    }

    /// Add a signed word. Returns `Ok(false)` if it was already implied.
    pub fn insert(&mut self, w: &PauliWord) -> Result<bool> {
        if w.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: w.num_qubits(),
            });
        }
        if !w.is_hermitian() {
            return Err(Error::Domain(format!("{w} is not Hermitian")));
        }
        if let Some(g) = self.generators.iter().find(|g| g.anticommutes(w)) {
            return Err(Error::Domain(format!("{w} anticommutes with {g}")));
        }
        let r = self.reduce_word(w);
        let Some(p) = first_column(&r) else {
            // w·(product of generators) = ±I; the group already holds ±w.
            return if r.phase() == Phase::ONE {
                Ok(false)
            } else {
                Err(Error::Inconsistent(format!(
                    "{w} contradicts the signs of the existing generators"
                )))
            };
        };
        for i in 0..self.generators.len() {
            if has_column(&self.generators[i], p) {
                self.generators[i] = self.generators[i].mul_unchecked(&r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.generators.insert(at, r);
        Ok(true)
    }

    /// If `±letters` lies in the group, the sign it carries there.
    pub fn sign_of(&self, letters: &PauliWord) -> Option<i8> {
        let r = self.reduce_word(&letters.unsigned());
        if !r.is_identity_up_to_phase() {
            return None;
        }
        r.phase().sign()
    }

    /// Whether every element of `other` is also in `self` with the same sign.
    pub fn contains_group(&self, other: &Self) -> bool {
        other
            .generators
            .iter()
            .all(|g| self.sign_of(g).map(Phase::from_sign) == Some(g.phase()))
    }

    /// Some Pauli word lies in both groups with opposite signs. For the
    /// associated projectors this is equivalent to `PQ = 0`.
    pub fn conflicts_with(&self, other: &Self) -> bool {
        let (a, b) = (&self.generators, &other.generators);
        if a.is_empty() || b.is_empty() {
            return false;
        }
        // Columns of [A | B]; a kernel vector (α, β) gives αA = βB.
        let m = a.len() + b.len();
        let cols: Vec<BitVec> = a.iter().chain(b.iter()).map(symplectic).collect();
        let rows: Vec<BitVec> = (0..2 * self.n)
            .map(|bit| BitVec::from_bools(&cols.iter().map(|c| c.get(bit)).collect::<Vec<_>>()))
            .collect();
        kernel(m, &rows).into_iter().any(|v| {
            let mut pa = PauliWord::identity(self.n);
            let mut pb = PauliWord::identity(self.n);
            for i in v.iter_ones() {
                if i < a.len() {
                    pa = pa.mul_unchecked(&a[i]);
                } else {
                    pb = pb.mul_unchecked(&b[i - a.len()]);
                }
            }
            pa.phase() != pb.phase()
        })
    }

    /// Dense projector `∏ (I + g)/2`.
    pub fn to_dense_projector(&self, cap: usize) -> Result<DenseMatrix> {
        let dim = 1usize << self.n;
        let mut p = DenseMatrix::identity(dim);
        let half = num_complex::Complex64::new(0.5, 0.0);
        for g in &self.generators {
            let f = DenseMatrix::identity(dim).add(&g.to_dense(cap)?).scale(half);
            p = p.matmul(&f);
        }
        Ok(p)
    }
}

impl fmt::Debug for SignedStabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if g.phase() == Phase::ONE {
                write!(f, "+")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for SignedStabilizerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
