//! Joint eigenstates of commuting Pauli sets as explicit amplitude vectors,
//! together with Bell-pair decompositions, computational-basis measurement,
//! and reduced-density-matrix spectra.
//!
//! Basis index bit `n-1-q` carries 0-based qubit `q`, so qubit 1 is the most
//! significant bit. Bell states are `Φ± = (|00⟩ ± |11⟩)/√2` and
//! `Ψ± = (|01⟩ ± |10⟩)/√2`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ks::ContextSystem;
use crate::pauli::{PauliWord, Phase};
use crate::stabilizer::SignedStabilizerGroup;

/// Default largest qubit count for dense vectors (16384 amplitudes).
pub const DEFAULT_DENSE_CAP: usize = 14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const NONZERO: f64 = 1e-12;

/// A unit vector with canonical global phase: the first amplitude whose
/// modulus exceeds `1e-12` is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

impl DenseState {
    /// Normalize and fix the global phase. Fails on a zero vector or a
    /// length that is not `2^n`.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << n {
            return Err(Error::Domain(format!(
                "{} amplitudes for {n} qubits",
                amps.len()
            )));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < NONZERO {
            return Err(Error::Domain("zero vector".into()));
        }
        let first = amps.iter().find(|a| a.norm() > NONZERO * norm).copied().unwrap_or(ZERO);
        let rot = first.conj() / (first.norm() * norm);
        let amps = amps.into_iter().map(|a| a * rot).collect();
        Ok(DenseState { n, amps })
    }

    /// Computational basis state `|bits⟩`, qubit 1 first.
    pub fn basis(bits: &[bool]) -> Self {
        let n = bits.len();
        let idx = bits.iter().fold(0usize, |acc, &b| acc << 1 | b as usize);
        let mut amps = vec![ZERO; 1 << n];
        amps[idx] = Complex64::new(1.0, 0.0);
        DenseState { n, amps }
    }

    pub fn bell(label: BellLabel) -> Self {
        DenseState {
            n: 2,
            amps: label.amplitudes().to_vec(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `w|ψ⟩` as a raw vector.
    pub fn apply(&self, w: &PauliWord) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.amps.len()];
        for (col, &a) in self.amps.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            let (row, f) = w.apply_to_basis(col);
            out[row] += f * a;
        }
        out
    }

    /// `‖w ψ − s ψ‖` for a word `w` and eigenvalue `s`.
    pub fn eigen_residual(&self, w: &PauliWord, eigenvalue: i8) -> f64 {
        let s = eigenvalue as f64;
        self.apply(w)
            .iter()
            .zip(&self.amps)
            .map(|(a, b)| (a - b * s).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest amplitude difference; both states carry canonical phase, so
    /// this compares up to global phase.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Export as `[[re, im], …]` in basis order.
    pub fn to_json_pairs(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.amps
                .iter()
                .map(|a| serde_json::json!([a.re, a.im]))
                .collect(),
        )
    }

    fn check_cap(n: usize, cap: usize) -> Result<()> {
        if n > cap {
            Err(Error::DenseCapExceeded { n, cap })
        } else {
            Ok(())
        }
    }
}

impl Serialize for DenseState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_pairs().serialize(s)
    }
}

/// Product of local amplitude vectors placed on the given 0-based qubits.
/// The parts must cover `0..n` exactly once.
pub fn embed(n: usize, parts: &[(&[usize], &[Complex64])]) -> Result<Vec<Complex64>> {
    let mut owner = vec![None; n];
    for (pi, (qubits, amps)) in parts.iter().enumerate() {
        if amps.len() != 1 << qubits.len() {
            return Err(Error::Domain(format!("part {pi} has the wrong length")));
        }
        for &q in qubits.iter() {
            if q >= n || owner[q].replace(pi).is_some() {
                return Err(Error::Domain(format!("qubit {} placed twice or out of range", q + 1)));
            }
        }
    }
    if owner.iter().any(Option::is_none) {
        return Err(Error::Domain("parts do not cover every qubit".into()));
    }
    Ok((0..1usize << n)
        .map(|x| {
            parts
                .iter()
                .map(|(qubits, amps)| {
                    let local = qubits
                        .iter()
                        .fold(0usize, |acc, &q| acc << 1 | (x >> (n - 1 - q)) & 1);
                    amps[local]
                })
                .product()
        })
        .collect())
}

/// The unique joint eigenstate of a single-context table with the given
/// eigenvalues (`O_i ψ = s_i ψ`).
pub fn joint_eigenstate(sys: &ContextSystem, eigenvalues: &[i8], cap: usize) -> Result<DenseState> {
    if eigenvalues.len() != sys.observables().len() {
        return Err(Error::Domain(format!(
            "{} eigenvalues for {} observables",
            eigenvalues.len(),
            sys.observables().len()
        )));
    }
    let signed: Vec<PauliWord> = sys
        .observables()
        .iter()
        .zip(eigenvalues)
        .map(|(o, &s)| o.clone().with_phase(Phase::from_sign(s)))
        .collect();
    let group = SignedStabilizerGroup::from_generators(sys.num_qubits(), &signed)?;
    let state = stabilizer_state(&group, cap)?;
    for (o, &s) in sys.observables().iter().zip(eigenvalues) {
        let r = state.eigen_residual(o, s);
        if r > 1e-10 {
            return Err(Error::Domain(format!("eigen-equation for {o} off by {r:e}")));
        }
    }
    Ok(state)
}

/// The state stabilized by a full-rank signed group.
pub fn stabilizer_state(group: &SignedStabilizerGroup, cap: usize) -> Result<DenseState> {
    let n = group.num_qubits();
    DenseState::check_cap(n, cap)?;
    if group.rank() < n {
        return Err(Error::Underdetermined {
            dimension: group.projector_rank() as usize,
        });
    }
    let dim = 1usize << n;
    for k in 0..dim {
        let mut v = DenseState {
            n,
            amps: vec![ZERO; dim],
        };
        v.amps[k] = Complex64::new(1.0, 0.0);
        for g in group.generators() {
            let gv = v.apply(g);
            for (a, b) in v.amps.iter_mut().zip(gv) {
                *a = (*a + b) * 0.5;
            }
        }
        // |⟨ψ|k⟩|² ≥ 2^-n for some k.
        if v.norm() > 0.5 / (dim as f64).sqrt() {
            return DenseState::from_amplitudes(n, v.amps);
        }
    }
    unreachable!("a rank-one projector has a nonzero column")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
    ];

    /// Amplitudes on `|00⟩, |01⟩, |10⟩, |11⟩`.
    pub fn amplitudes(self) -> [Complex64; 4] {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match self {
            BellLabel::PhiPlus => [h, ZERO, ZERO, h],
            BellLabel::PhiMinus => [h, ZERO, ZERO, -h],
            BellLabel::PsiPlus => [ZERO, h, h, ZERO],
            BellLabel::PsiMinus => [ZERO, h, -h, ZERO],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "Φ+",
            BellLabel::PhiMinus => "Φ-",
            BellLabel::PsiPlus => "Ψ+",
            BellLabel::PsiMinus => "Ψ-",
        }
    }

    pub fn ascii(self) -> &'static str {
        match self {
            BellLabel::PhiPlus => "Phi+",
            BellLabel::PhiMinus => "Phi-",
            BellLabel::PsiPlus => "Psi+",
            BellLabel::PsiMinus => "Psi-",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Disjoint qubit pairs (0-based) covering every qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing(Vec<(usize, usize)>);

impl Pairing {
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; n];
        for &(a, b) in &pairs {
            for q in [a, b] {
                if q >= n {
                    return Err(Error::InvalidPairing(format!("qubit {} out of range", q + 1)));
                }
                if std::mem::replace(&mut seen[q], true) {
                    return Err(Error::InvalidPairing(format!("qubit {} used twice", q + 1)));
                }
            }
        }
        if let Some(q) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPairing(format!("qubit {} not paired", q + 1)));
        }
        Ok(Pairing(pairs))
    }

    /// `(1,2)(3,4)…` in 0-based form.
    pub fn adjacent(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::InvalidPairing(format!("{n} qubits cannot be paired")));
        }
        Self::new(n, (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect())
    }

    /// Parse `"12,34"` or `"1-2,3-4"` style text with 1-based qubits.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let pairs = text
            .split(',')
            .map(|p| {
                let p = p.trim();
                let nums: Option<Vec<usize>> = if p.contains('-') {
                    p.split('-').map(|s| s.trim().parse().ok()).collect()
                } else {
                    p.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
                };
                match nums.as_deref() {
                    Some(&[a, b]) if a >= 1 && b >= 1 => Ok((a - 1, b - 1)),
                    _ => Err(Error::InvalidPairing(format!("cannot read pair {p:?}"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, pairs)
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }
}

/// Coefficients of a state in the product Bell basis of a pairing.
#[derive(Debug, Clone)]
pub struct BellDecomposition {
    pub n: usize,
    pub pairing: Pairing,
    /// All `4^(n/2)` coefficients, label tuples in pairing order.
    pub coefficients: BTreeMap<Vec<BellLabel>, Complex64>,
}

impl BellDecomposition {
    /// Terms whose modulus exceeds `tol`.
    pub fn nonzero(&self, tol: f64) -> Vec<(&[BellLabel], Complex64)> {
        self.coefficients
            .iter()
            .filter(|(_, c)| c.norm() > tol)
            .map(|(k, &c)| (k.as_slice(), c))
            .collect()
    }

    pub fn reconstruct(&self) -> Result<DenseState> {
        let n = self.n;
        let mut amps = vec![ZERO; 1 << n];
        for (labels, &c) in &self.coefficients {
            let mut idx = 0usize;
            for (&(a, b), l) in self.pairing.pairs().iter().zip(labels) {
                let li = l.index();
                idx |= (li >> 1) << (n - 1 - a);
                idx |= (li & 1) << (n - 1 - b);
            }
            amps[idx] = c;
        }
        for &(a, b) in self.pairing.pairs() {
            transform_pair(&mut amps, n, a, b, true);
        }
        DenseState::from_amplitudes(n, amps)
    }

    pub fn term_name(labels: &[BellLabel], ascii: bool) -> String {
        labels
            .iter()
            .map(|l| if ascii { l.ascii() } else { l.symbol() })
            .collect()
    }

    /// `{"pairing": [[1,2],…], "terms": {"Φ+Φ-": [re, im]}}` with nonzero terms.
    pub fn to_json(&self, tol: f64) -> serde_json::Value {
        let pairing: Vec<[usize; 2]> = self.pairing.pairs().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
        let terms: serde_json::Map<String, serde_json::Value> = self
            .nonzero(tol)
            .into_iter()
            .map(|(k, c)| (Self::term_name(k, false), serde_json::json!([c.re, c.im])))
            .collect();
        serde_json::json!({ "pairing": pairing, "terms": terms })
    }
}

/// In-place change of basis on qubits `a, b` between computational and Bell
/// components. Forward stores the Bell label index `L` at local bits
/// `(L >> 1, L & 1)`.
fn transform_pair(amps: &mut [Complex64], n: usize, a: usize, b: usize, inverse: bool) {
    let (ma, mb) = (1usize << (n - 1 - a), 1usize << (n - 1 - b));
    let h = FRAC_1_SQRT_2;
    for base in 0..amps.len() {
        if base & (ma | mb) != 0 {
            continue;
        }
        let i = [base, base | mb, base | ma, base | ma | mb];
        let v = [amps[i[0]], amps[i[1]], amps[i[2]], amps[i[3]]];
        let out = if inverse {
            // |00⟩ = (Φ+ + Φ-)/√2, |11⟩ = (Φ+ - Φ-)/√2, |01⟩ = (Ψ+ + Ψ-)/√2, |10⟩ = (Ψ+ - Ψ-)/√2
            [
                (v[0] + v[1]) * h,
                (v[2] + v[3]) * h,
                (v[2] - v[3]) * h,
                (v[0] - v[1]) * h,
            ]
        } else {
            [
                (v[0] + v[3]) * h,
                (v[0] - v[3]) * h,
                (v[1] + v[2]) * h,
                (v[1] - v[2]) * h,
            ]
        };
        for k in 0..4 {
            amps[i[k]] = out[k];
        }
    }
}

pub fn bell_decompose(state: &DenseState, pairing: &Pairing) -> Result<BellDecomposition> {
    let n = state.n;
    Pairing::new(n, pairing.pairs().to_vec())?;
    let mut amps = state.amps.clone();
    for &(a, b) in pairing.pairs() {
        transform_pair(&mut amps, n, a, b, false);
    }
    let mut coefficients = BTreeMap::new();
    for (idx, &c) in amps.iter().enumerate() {
        let labels = pairing
            .pairs()
            .iter()
            .map(|&(a, b)| {
                let hi = (idx >> (n - 1 - a)) & 1;
                let lo = (idx >> (n - 1 - b)) & 1;
                BellLabel::from_index(hi << 1 | lo)
            })
            .collect();
        coefficients.insert(labels, c);
    }
    Ok(BellDecomposition {
        n,
        pairing: pairing.clone(),
        coefficients,
    })
}

/// Number of Bell-product terms above `1e-10` and their moduli (descending).
pub fn bell_support(state: &DenseState, pairing: &Pairing) -> Result<(usize, Vec<f64>)> {
    let d = bell_decompose(state, pairing)?;
    let mut mags: Vec<f64> = d.nonzero(1e-10).into_iter().map(|(_, c)| c.norm()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    Ok((mags.len(), mags))
}

#[derive(Debug, Clone)]
pub struct Measurement {
    pub probability: f64,
    /// Post-measurement state of the unmeasured qubits, in ascending order;
    /// absent for zero-probability outcomes.
    pub residual: Option<DenseState>,
}

/// Project onto `outcome` for the listed 0-based qubits.
pub fn measure_computational(state: &DenseState, qubits: &[usize], outcome: &[bool]) -> Result<Measurement> {
    let n = state.n;
    if qubits.len() != outcome.len() {
        return Err(Error::Domain(format!(
            "{} outcome bits for {} qubits",
            outcome.len(),
            qubits.len()
        )));
    }
    let mut measured = vec![None; n];
    for (&q, &b) in qubits.iter().zip(outcome) {
        if q >= n || measured[q].replace(b).is_some() {
            return Err(Error::Domain(format!("qubit {} repeated or out of range", q + 1)));
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&q| measured[q].is_none()).collect();
    let mut amps = vec![ZERO; 1 << rest.len()];
    for (x, &a) in state.amps.iter().enumerate() {
        let matches = qubits
            .iter()
            .zip(outcome)
            .all(|(&q, &b)| ((x >> (n - 1 - q)) & 1 == 1) == b);
        if !matches {
            continue;
        }
        let local = rest.iter().fold(0usize, |acc, &q| acc << 1 | (x >> (n - 1 - q)) & 1);
        amps[local] = a;
    }
    let probability: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let residual = if probability > 1e-24 {
        Some(DenseState::from_amplitudes(rest.len(), amps)?)
    } else {
        None
    };
    Ok(Measurement {
        probability,
        residual,
    })
}

/// Eigenvalues (descending) of the reduced density matrix on `subset`.
pub fn reduced_spectrum(state: &DenseState, subset: &[usize]) -> Vec<f64> {
    let n = state.n;
    let rest: Vec<usize> = (0..n).filter(|q| !subset.contains(q)).collect();
    let (da, db) = (1usize << subset.len(), 1usize << rest.len());
    let mut m = DMatrix::<Complex64>::zeros(da, db);
    for (x, &a) in state.amps.iter().enumerate() {
        let pick = |qs: &[usize]| qs.iter().fold(0usize, |acc, &q| acc << 1 | (x >> (n - 1 - q)) & 1);
        m[(pick(subset), pick(&rest))] = a;
    }
    let rho = &m * m.adjoint();
    let mut ev: Vec<f64> = rho
        .symmetric_eigenvalues()
        .iter()
        .map(|&e| if e.abs() < 1e-14 { 0.0 } else { e })
        .collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|q| s >> q & 1 == 1).collect())
        .collect()
}

/// For every bipartition size `k ≤ n/2`, the sorted multiset of reduced
/// spectra over all `k`-qubit subsets. Invariant under local unitaries and
/// qubit relabeling.
pub fn entanglement_profile(state: &DenseState) -> BTreeMap<usize, Vec<Vec<f64>>> {
    let n = state.n;
    (1..=n / 2)
        .map(|k| {
            let mut spectra: Vec<Vec<f64>> = subsets_of_size(n, k)
                .iter()
                .map(|s| reduced_spectrum(state, s))
                .collect();
            spectra.sort_by(|a, b| {
                a.iter()
                    .zip(b)
                    .map(|(x, y)| x.total_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            (k, spectra)
        })
        .collect()
}

pub fn profiles_match(
    a: &BTreeMap<usize, Vec<Vec<f64>>>,
    b: &BTreeMap<usize, Vec<Vec<f64>>>,
    tol: f64,
) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|((ka, sa), (kb, sb))| {
            ka == kb
                && sa.len() == sb.len()
                && sa.iter().zip(sb).all(|(x, y)| {
                    x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p - q).abs() <= tol)
                })
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResidualVerdict {
    BellState,
    ProfileMatch,
    Mismatch,
}

impl fmt::Display for ResidualVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResidualVerdict::BellState => "bell-state",
            ResidualVerdict::ProfileMatch => "profile-match",
            ResidualVerdict::Mismatch => "mismatch",
        })
    }
}

/// "Similar to the reference" is read as equal entanglement profiles.
pub fn classify_residual(residual: &DenseState, reference: &DenseState) -> ResidualVerdict {
    const TOL: f64 = 1e-9;
    if residual.n == 2 {
        let maximal = (0..2).all(|q| {
            let s = reduced_spectrum(residual, &[q]);
            (s[0] - 0.5).abs() <= TOL && (s[1] - 0.5).abs() <= TOL
        });
        if maximal {
            return ResidualVerdict::BellState;
        }
    }
    if residual.n == reference.n
        && profiles_match(&entanglement_profile(residual), &entanglement_profile(reference), TOL)
    {
        ResidualVerdict::ProfileMatch
    } else {
        ResidualVerdict::Mismatch
    }
}
