//! Phase-tracked N-qubit Pauli operators in symplectic bitmask form.
//!
//! A word is stored as `i^k · σ_1 ⊗ … ⊗ σ_n` where every `σ_q` is one of the
//! letters `I, X, Y, Z` (with `Y` kept as a letter, not as `iXZ`). Qubit `q`
//! carries an X component when bit `q` of the x-mask is set and a Z component
//! when bit `q` of the z-mask is set; both set means `Y`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Power of `i` multiplying a Pauli word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    /// Exponent `k` in `i^k`, always in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// `Some(+1)` / `Some(-1)` for real phases.
    pub fn sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    pub fn from_sign(sign: i8) -> Self {
        if sign < 0 {
            Phase::MINUS_ONE
        } else {
            Phase::ONE
        }
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        use num_complex::Complex64 as C;
        match self.0 {
            0 => C::new(1.0, 0.0),
            1 => C::new(0.0, 1.0),
            2 => C::new(-1.0, 0.0),
            _ => C::new(0.0, -1.0),
        }
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        }
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An N-qubit Pauli operator with an exact phase in `{±1, ±i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: Phase,
}

fn chunks(n: usize) -> usize {
    n.div_ceil(WORD_BITS).max(1)
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord {
            n,
            x: vec![0; chunks(n)],
            z: vec![0; chunks(n)],
            phase: Phase::ONE,
        }
    }

    /// Word with `letter` on 0-based qubit `q` and identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut w = Self::identity(n);
        w.set_letter(q, letter);
        w
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut w = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            w.set_letter(q, l);
        }
        w
    }

    /// Build from packed masks for `n ≤ 64`.
    pub fn from_masks(n: usize, xmask: u64, zmask: u64, phase: Phase) -> Self {
        assert!(n <= WORD_BITS, "from_masks supports at most 64 qubits");
        let keep = if n == WORD_BITS { u64::MAX } else { (1u64 << n) - 1 };
        PauliWord {
            n,
            x: vec![xmask & keep],
            z: vec![zmask & keep],
            phase,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_bits(&self) -> &[u64] {
        &self.x
    }

    pub fn z_bits(&self) -> &[u64] {
        &self.z
    }

    /// Low 64 bits of the x-mask; exact for `n ≤ 64`.
    pub fn xmask(&self) -> u64 {
        self.x[0]
    }

    pub fn zmask(&self) -> u64 {
        self.z[0]
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    /// Same letters with phase `+1`.
    pub fn unsigned(&self) -> Self {
        self.clone().with_phase(Phase::ONE)
    }

    pub fn negate(&self) -> Self {
        let mut w = self.clone();
        w.phase = w.phase.mul(Phase::MINUS_ONE);
        w
    }

    pub fn letter(&self, q: usize) -> Letter {
        let (c, b) = (q / WORD_BITS, q % WORD_BITS);
        Letter::from_bits((self.x[c] >> b) & 1 == 1, (self.z[c] >> b) & 1 == 1)
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        assert!(q < self.n, "qubit {q} out of range for {} qubits", self.n);
        let (c, b) = (q / WORD_BITS, q % WORD_BITS);
        let (xb, zb) = letter.bits();
        self.x[c] = (self.x[c] & !(1 << b)) | ((xb as u64) << b);
        self.z[c] = (self.z[c] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.n).map(|q| self.letter(q))
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    /// True when every letter is `I`, regardless of phase.
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(self.z.iter()).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// 0-based qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.letter(q) != Letter::I).collect()
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Operator product `self · other` with exact phase.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let mut plus = 0u32;
        let mut minus = 0u32;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for c in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[c], self.z[c], other.x[c], other.z[c]);
            let (ax, ay, az) = (x1 & !z1, x1 & z1, !x1 & z1);
            let (bx, by, bz) = (x2 & !z2, x2 & z2, !x2 & z2);
            // XY = iZ, YZ = iX, ZX = iY and the reversed orders give -i.
            plus += ((ax & by) | (ay & bz) | (az & bx)).count_ones();
            minus += ((ay & bx) | (az & by) | (ax & bz)).count_ones();
            x.push(x1 ^ x2);
            z.push(z1 ^ z2);
        }
        let k = self.phase.0 as i64 + other.phase.0 as i64 + plus as i64 - minus as i64;
        PauliWord {
            n: self.n,
            x,
            z,
            phase: Phase::from_exponent(k),
        }
    }

    /// Symplectic form; zero iff the operators commute.
    pub fn anticommutes(&self, other: &Self) -> bool {
        let mut acc = 0u32;
        for c in 0..self.x.len() {
            acc ^= ((self.x[c] & other.z[c]) ^ (self.z[c] & other.x[c])).count_ones() & 1;
        }
        acc == 1
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(!self.anticommutes(other))
    }

    /// Letters restricted to the given 0-based qubits, in that order; phase kept.
    pub fn restrict(&self, qubits: &[usize]) -> Self {
        let mut w = PauliWord::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            w.set_letter(i, self.letter(q));
        }
        w.phase = self.phase;
        w
    }

    /// Apply a qubit relabeling: output qubit `perm[q]` receives the letter of qubit `q`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Self {
        let mut w = PauliWord::identity(self.n);
        for q in 0..self.n {
            w.set_letter(perm[q], self.letter(q));
        }
        w.phase = self.phase;
        w
    }

    /// Apply the same letter map on every qubit; the phase is left untouched.
    pub fn relabel_letters(&self, map: &[Letter; 3]) -> Self {
        let mut w = PauliWord::identity(self.n);
        for q in 0..self.n {
            let l = match self.letter(q) {
                Letter::I => Letter::I,
                Letter::X => map[0],
                Letter::Y => map[1],
                Letter::Z => map[2],
            };
            w.set_letter(q, l);
        }
        w.phase = self.phase;
        w
    }

    /// Dense `2^n × 2^n` matrix, qubit 1 most significant.
    pub fn to_dense(&self, cap: usize) -> Result<DenseMatrix> {
        if self.n > cap {
            return Err(Error::DenseCapExceeded { n: self.n, cap });
        }
        let dim = 1usize << self.n;
        let mut m = DenseMatrix::zeros(dim);
        for col in 0..dim {
            let (row, amp) = self.apply_to_basis(col);
            m.set(row, col, amp);
        }
        Ok(m)
    }

    /// Image of the computational basis vector `|col⟩`: `(row, amplitude)`.
    ///
    /// Basis index bit `n-1-q` holds qubit `q` so that qubit 1 is most significant.
    pub fn apply_to_basis(&self, col: usize) -> (usize, num_complex::Complex64) {
        let mut row = col;
        let mut k = self.phase.0 as u32;
        for q in 0..self.n {
            let shift = self.n - 1 - q;
            let bit = (col >> shift) & 1;
            match self.letter(q) {
                Letter::I => {}
                Letter::X => row ^= 1 << shift,
                Letter::Z => k += 2 * bit as u32,
                Letter::Y => {
                    // Y|0> = i|1>, Y|1> = -i|0>
                    row ^= 1 << shift;
                    k += if bit == 0 { 1 } else { 3 };
                }
            }
        }
        (row, Phase((k % 4) as u8).to_complex())
    }
}

/// Left-to-right product of a nonempty list of words.
pub fn product_of(words: &[PauliWord]) -> Result<PauliWord> {
    let (first, rest) = words.split_first().ok_or(Error::EmptyProduct)?;
    rest.iter().try_fold(first.clone(), |acc, w| acc.multiply(w))
}

impl PartialOrd for PauliWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by letter string (I < X < Y < Z, qubit 1 first), then phase.
impl Ord for PauliWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.letters().cmp(other.letters()))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.phase.prefix())?;
        for l in self.letters() {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliWord({self})")
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut k = 0i64;
        match chars.first() {
            Some('+') => pos = 1,
            Some('-') | Some('\u{2212}') => {
                pos = 1;
                k = 2;
            }
            _ => {}
        }
        if chars.get(pos) == Some(&'i') {
            pos += 1;
            k += 1;
        }
        let letters: Vec<Letter> = chars[pos..]
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                Letter::from_char(c).ok_or(Error::Parse {
                    position: pos + i + 1,
                    found: c,
                })
            })
            .collect::<Result<_>>()?;
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(PauliWord::from_letters(&letters).with_phase(Phase::from_exponent(k)))
    }
}

impl Serialize for PauliWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let p = w("ZZZZ");
        assert_eq!(p.num_qubits(), 4);
        assert!(p.letters().all(|l| l == Letter::Z));
        assert_eq!(p.phase(), Phase::ONE);

        let id = w("IIII");
        assert!(id.is_identity_up_to_phase());
        assert_eq!(id.phase(), Phase::ONE);

        let m = w("-IIXX");
        assert_eq!(m.support(), vec![2, 3]);
        assert_eq!(m.phase(), Phase::MINUS_ONE);
        assert_eq!(m.to_string(), "-IIXX");
        assert_eq!(w("+XYZ").to_string(), "XYZ");
    }

    #[test]
    fn parse_errors_name_position() {
        match "XQZ".parse::<PauliWord>() {
            Err(Error::Parse { position, found }) => {
                assert_eq!(position, 2);
                assert_eq!(found, 'Q');
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("-".parse::<PauliWord>(), Err(Error::EmptyWord)));
        assert!(matches!("".parse::<PauliWord>(), Err(Error::EmptyWord)));
        assert!("xyz".parse::<PauliWord>().is_err());
    }

    #[test]
    fn single_qubit_table() {
        assert_eq!(w("Z").multiply(&w("X")).unwrap().to_string(), "iY");
        assert_eq!(w("X").multiply(&w("Y")).unwrap().to_string(), "iZ");
        assert_eq!(w("Y").multiply(&w("Z")).unwrap().to_string(), "iX");
        assert_eq!(w("X").multiply(&w("Z")).unwrap().to_string(), "-iY");
        assert_eq!(w("Y").multiply(&w("Y")).unwrap().to_string(), "I");
    }

    #[test]
    fn zzzz_times_xxzz() {
        // Z·X = iY on qubits 1 and 2, so the phase is i·i = -1.
        let p = w("ZZZZ").multiply(&w("XXZZ")).unwrap();
        assert_eq!(p.to_string(), "-YYII");
    }

    #[test]
    fn identity_is_neutral() {
        let p = w("-XYZI");
        assert_eq!(p.multiply(&w("IIII")).unwrap(), p);
        assert_eq!(w("IIII").multiply(&p).unwrap(), p);
    }

    #[test]
    fn mismatched_dimensions() {
        assert!(matches!(
            w("XX").multiply(&w("X")),
            Err(Error::DimensionMismatch { left: 2, right: 1 })
        ));
        assert!(w("XX").commutes(&w("X")).is_err());
    }

    #[test]
    fn products() {
        let rows: Vec<_> = ["ZZZZ", "XXZZ", "ZXXI", "XZIX", "IIXX"].iter().map(|s| w(s)).collect();
        assert_eq!(product_of(&rows).unwrap().to_string(), "-IIII");
        let rows: Vec<_> = ["ZZZZZZ", "XXXXXX", "ZXZXII", "XZIIZX", "IIXZXZ"]
            .iter()
            .map(|s| w(s))
            .collect();
        assert_eq!(product_of(&rows).unwrap().to_string(), "-IIIIII");
        assert_eq!(product_of(&[w("IIII")]).unwrap().to_string(), "IIII");
        assert!(matches!(product_of(&[]), Err(Error::EmptyProduct)));
    }

    #[test]
    fn commutation_examples() {
        assert!(!w("X").commutes(&w("Z")).unwrap());
        assert!(w("ZZZZ").commutes(&w("XXZZ")).unwrap());
        assert!(w("ZXXI").commutes(&w("XZIX")).unwrap());
    }

    #[test]
    fn wide_words_span_chunks() {
        let n = 130;
        let mut a = PauliWord::identity(n);
        let mut b = PauliWord::identity(n);
        a.set_letter(0, Letter::X);
        a.set_letter(129, Letter::Z);
        b.set_letter(0, Letter::Z);
        b.set_letter(129, Letter::X);
        assert!(a.commutes(&b).unwrap());
        let p = a.multiply(&b).unwrap();
        // X·Z = -iY and Z·X = iY
        assert_eq!(p.phase(), Phase::ONE);
        assert_eq!(p.letter(0), Letter::Y);
        assert_eq!(p.letter(129), Letter::Y);
        assert_eq!(p.to_string().len(), n);
    }

    #[test]
    fn dense_examples() {
        use num_complex::Complex64 as C;
        let i = w("I").to_dense(10).unwrap();
        assert_eq!(i, DenseMatrix::identity(2));
        let z = w("Z").to_dense(10).unwrap();
        assert_eq!(z.get(0, 0), C::new(1.0, 0.0));
        assert_eq!(z.get(1, 1), C::new(-1.0, 0.0));
        let iy = w("iY").to_dense(10).unwrap();
        assert_eq!(iy.get(0, 1), C::new(1.0, 0.0));
        assert_eq!(iy.get(1, 0), C::new(-1.0, 0.0));
        assert_eq!(iy.get(0, 0), C::new(0.0, 0.0));
        assert!(matches!(
            w("XXX").to_dense(2),
            Err(Error::DenseCapExceeded { n: 3, cap: 2 })
        ));
    }
}
