//! Observable hypergraphs ("KS systems"): construction, verification, and the
//! value-assignment contradictions they encode.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitVec};
use crate::pauli::{product_of, Letter, PauliWord, Phase};
use crate::stabilizer::SignedStabilizerGroup;

/// Mutually commuting observables whose product is `sign · I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Context {
    pub members: Vec<usize>,
    pub sign: i8,
}

#[derive(Debug, Clone, Deserialize)]
struct RawSystem {
    n: usize,
    observables: Vec<PauliWord>,
    contexts: Vec<Context>,
}

/// A set of observables together with the contexts they are measured in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSystem")]
pub struct ContextSystem {
    n: usize,
    observables: Vec<PauliWord>,
    contexts: Vec<Context>,
}

impl TryFrom<RawSystem> for ContextSystem {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        ContextSystem::new(raw.n, raw.observables, raw.contexts)
    }
}

impl ContextSystem {
    /// Checks structural invariants only: distinct phase-free observables on
    /// `n` qubits, member indices in range, signs in `{+1, -1}`. Physical
    /// validity is the job of [`verify_system`].
    pub fn new(n: usize, observables: Vec<PauliWord>, contexts: Vec<Context>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSystem("qubit count must be positive".into()));
        }
        let mut seen = HashMap::new();
        for (i, o) in observables.iter().enumerate() {
            if o.num_qubits() != n {
                return Err(Error::InvalidSystem(format!(
                    "observable {o} has {} qubits, expected {n}",
                    o.num_qubits()
                )));
            }
            if o.phase() != Phase::ONE {
                return Err(Error::InvalidSystem(format!("observable {o} must carry phase +1")));
            }
            if o.is_identity_up_to_phase() {
                return Err(Error::InvalidSystem("identity is not an observable here".into()));
            }
            if let Some(j) = seen.insert(o.clone(), i) {
                return Err(Error::InvalidSystem(format!(
                    "duplicate observable {o} at positions {j} and {i}"
                )));
            }
        }
        for (ci, c) in contexts.iter().enumerate() {
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InvalidSystem(format!("context {ci} has sign {}", c.sign)));
            }
            if let Some(&m) = c.members.iter().find(|&&m| m >= observables.len()) {
                return Err(Error::InvalidSystem(format!(
                    "context {ci} references observable {m} out of range"
                )));
            }
            let mut sorted = c.members.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != c.members.len() {
                return Err(Error::InvalidSystem(format!("context {ci} repeats a member")));
            }
        }
        Ok(ContextSystem {
            n,
            observables,
            contexts,
        })
    }

    /// One context holding every row, sign taken from the operator product.
    pub fn single_context(rows: Vec<PauliWord>) -> Result<Self> {
        let n = rows
            .first()
            .ok_or_else(|| Error::InvalidSystem("no rows".into()))?
            .num_qubits();
        let product = product_of(&rows)?;
        let sign = product_sign(&product).ok_or_else(|| {
            Error::InvalidSystem(format!("row product {product} is not ±identity"))
        })?;
        let members = (0..rows.len()).collect();
        Self::new(n, rows, vec![Context { members, sign }])
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.parse()).collect::<Result<Vec<PauliWord>>>()?;
        Self::single_context(rows)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn observables(&self) -> &[PauliWord] {
        &self.observables
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn context_words(&self, c: &Context) -> Vec<PauliWord> {
        c.members.iter().map(|&m| self.observables[m].clone()).collect()
    }

    pub fn is_single_context(&self) -> bool {
        self.contexts.len() == 1 && self.contexts[0].members.len() == self.observables.len()
    }

    /// How many contexts each observable lies in.
    pub fn incidence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.observables.len()];
        for c in &self.contexts {
            for &m in &c.members {
                deg[m] += 1;
            }
        }
        deg
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("system serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// `Some(±1)` when the word is `±I`.
pub fn product_sign(w: &PauliWord) -> Option<i8> {
    if w.is_identity_up_to_phase() {
        w.phase().sign()
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    EmptyContext { context: usize },
    NonCommuting { context: usize, a: PauliWord, b: PauliWord },
    ProductNotIdentity { context: usize, product: PauliWord },
    SignMismatch { context: usize, declared: i8, actual: i8 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyContext { context } => write!(f, "context {context}: empty"),
            Violation::NonCommuting { context, a, b } => {
                write!(f, "context {context}: members do not commute ({a}, {b})")
            }
            Violation::ProductNotIdentity { context, product } => {
                write!(f, "context {context}: product {product} is not ±identity")
            }
            Violation::SignMismatch {
                context,
                declared,
                actual,
            } => write!(
                f,
                "context {context}: product sign mismatch (declared {declared:+}, actual {actual:+})"
            ),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ContextCheck {
    pub context: usize,
    pub commuting: bool,
    pub product: PauliWord,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ContextCheck>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per context: pairwise commutation and `product = sign · I`.
pub fn verify_system(sys: &ContextSystem) -> ValidationReport {
    let mut checks = Vec::new();
    let mut violations = Vec::new();
    for (ci, c) in sys.contexts.iter().enumerate() {
        let words = sys.context_words(c);
        if words.is_empty() {
            violations.push(Violation::EmptyContext { context: ci });
            continue;
        }
        let mut commuting = true;
        'pairs: for i in 0..words.len() {
            for j in i + 1..words.len() {
                if words[i].anticommutes(&words[j]) {
                    violations.push(Violation::NonCommuting {
                        context: ci,
                        a: words[i].clone(),
                        b: words[j].clone(),
                    });
                    commuting = false;
                    break 'pairs;
                }
            }
        }
        let product = product_of(&words).expect("uniform qubit count");
        match product_sign(&product) {
            None => violations.push(Violation::ProductNotIdentity {
                context: ci,
                product: product.clone(),
            }),
            Some(actual) if actual != c.sign => violations.push(Violation::SignMismatch {
                context: ci,
                declared: c.sign,
                actual,
            }),
            Some(_) => {}
        }
        checks.push(ContextCheck {
            context: ci,
            commuting,
            product,
        });
    }
    ValidationReport { checks, violations }
}

/// Odd number of negative contexts and every observable in an even number of
/// contexts. Either one alone is not enough; together they rule out any ±1
/// assignment respecting every context's product.
pub fn parity_witness(sys: &ContextSystem) -> bool {
    let negatives = sys.contexts.iter().filter(|c| c.sign < 0).count();
    negatives % 2 == 1 && sys.incidence().iter().all(|d| d % 2 == 0)
}

/// Whether the context equations `Σ_{o∈C} e_o = [sign_C = -1]` over GF(2)
/// have no solution, where `v(o) = (-1)^{e_o}`.
pub fn gf2_infeasible(sys: &ContextSystem) -> bool {
    let m = sys.observables.len();
    let rows: Vec<BitVec> = sys
        .contexts
        .iter()
        .map(|c| BitVec::from_indices(m, c.members.iter().copied()))
        .collect();
    let rhs: Vec<bool> = sys.contexts.iter().map(|c| c.sign < 0).collect();
    gf2::solve(m, &rows, &rhs).is_none()
}

/// A single-qubit observable: letter `letter` on 0-based qubit `qubit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Slot {
    pub qubit: usize,
    pub letter: Letter,
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.qubit + 1)
    }
}

/// Single-qubit slots used by the given words, sorted.
pub fn slots_of(words: &[PauliWord]) -> Vec<Slot> {
    let mut slots: Vec<Slot> = words
        .iter()
        .flat_map(|w| {
            w.support().into_iter().map(move |q| Slot {
                qubit: q,
                letter: w.letter(q),
            })
        })
        .collect();
    slots.sort_unstable();
    slots.dedup();
    slots
}

/// Refine a system down to single-qubit observables: every observable of
/// weight two or more gets a new context made of itself and its single-qubit
/// factors (`v(ZXXI) = v(Z1)v(X2)v(X3)`).
pub fn lift_to_single_qubit(sys: &ContextSystem) -> Result<ContextSystem> {
    let n = sys.n;
    let mut observables = sys.observables.clone();
    let mut index: HashMap<PauliWord, usize> =
        observables.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    let mut contexts = sys.contexts.clone();
    for (oi, o) in sys.observables.iter().enumerate() {
        if o.weight() < 2 {
            continue;
        }
        let mut members = vec![oi];
        let mut factors = Vec::new();
        for q in o.support() {
            let f = PauliWord::single(n, q, o.letter(q));
            let id = *index.entry(f.clone()).or_insert_with(|| {
                observables.push(f.clone());
                observables.len() - 1
            });
            members.push(id);
            factors.push(f);
        }
        let mut words = vec![o.clone()];
        words.extend(factors);
        let sign = product_sign(&product_of(&words)?).expect("factors reproduce the word");
        contexts.push(Context { members, sign });
    }
    ContextSystem::new(n, observables, contexts)
}

/// Default eigenvalue signature: `-1` on the last row and `+1` elsewhere.
pub fn default_signature(rows: usize) -> Vec<i8> {
    let mut s = vec![1; rows];
    if let Some(last) = s.last_mut() {
        *last = -1;
    }
    s
}

/// Eigenvalue signature for a single-context system: `+1` everywhere, with the
/// last row flipped when the product is `-I`.
pub fn signature_for(sys: &ContextSystem) -> Vec<i8> {
    let mut s = vec![1; sys.observables.len()];
    if sys.contexts.first().map(|c| c.sign) == Some(-1) {
        if let Some(last) = s.last_mut() {
            *last = -1;
        }
    }
    s
}

/// Outcome of the single-qubit value-assignment test for a GHZ-type table.
#[derive(Debug, Clone, Serialize)]
pub struct GhzReport {
    pub slots: Vec<String>,
    /// `Some((satisfying, total))` when exhaustive enumeration ran.
    pub exhaustive: Option<(u64, u64)>,
    pub gf2_infeasible: bool,
    pub infeasible: bool,
}

/// Exhaustive enumeration is skipped above this many single-qubit slots.
pub const GHZ_EXHAUSTIVE_MAX_SLOTS: usize = 26;

/// Whether no ±1 assignment to the single-qubit observables reproduces the
/// given eigenvalue of every row.
pub fn ghz_infeasible(sys: &ContextSystem, eigenvalues: &[i8]) -> Result<GhzReport> {
    if !sys.is_single_context() {
        return Err(Error::Domain("expected one context holding every observable".into()));
    }
    let rows = sys.observables();
    if eigenvalues.len() != rows.len() {
        return Err(Error::Domain(format!(
            "{} eigenvalues for {} observables",
            eigenvalues.len(),
            rows.len()
        )));
    }
    if eigenvalues.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Domain("eigenvalues must be +1 or -1".into()));
    }
    let declared = sys.contexts[0].sign;
    let eig_product: i8 = eigenvalues.iter().product();
    if eig_product != declared {
        return Err(Error::Inconsistent(format!(
            "eigenvalue product {eig_product:+} differs from operator product sign {declared:+}"
        )));
    }
    let signed: Vec<PauliWord> = rows
        .iter()
        .zip(eigenvalues)
        .map(|(r, &s)| r.clone().with_phase(Phase::from_sign(s)))
        .collect();
    SignedStabilizerGroup::from_generators(sys.n, &signed)?;

    let slots = slots_of(rows);
    let slot_index: HashMap<Slot, usize> = slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let equations: Vec<BitVec> = rows
        .iter()
        .map(|r| {
            BitVec::from_indices(
                slots.len(),
                r.support().into_iter().map(|q| {
                    slot_index[&Slot {
                        qubit: q,
                        letter: r.letter(q),
                    }]
                }),
            )
        })
        .collect();
    let rhs: Vec<bool> = eigenvalues.iter().map(|&s| s < 0).collect();
    let gf2_infeasible = gf2::solve(slots.len(), &equations, &rhs).is_none();

    let exhaustive = (slots.len() <= GHZ_EXHAUSTIVE_MAX_SLOTS).then(|| {
        let masks: Vec<u64> = equations.iter().map(|e| e.words()[0]).collect();
        let targets: Vec<u32> = rhs.iter().map(|&b| b as u32).collect();
        let total = 1u64 << slots.len();
        let satisfying = (0..total)
            .filter(|&a| {
                masks
                    .iter()
                    .zip(&targets)
                    .all(|(m, &t)| (a & m).count_ones() & 1 == t)
            })
            .count() as u64;
        (satisfying, total)
    });
    if let Some((sat, _)) = exhaustive {
        if (sat == 0) != gf2_infeasible {
            return Err(Error::Domain(
                "exhaustive enumeration and GF(2) elimination disagree".into(),
            ));
        }
    }
    Ok(GhzReport {
        slots: slots.iter().map(Slot::to_string).collect(),
        exhaustive,
        gf2_infeasible,
        infeasible: gf2_infeasible,
    })
}

/// The 2N-qubit table with 2N+1 rows: all Z, then XXZ…Z, ZXXI…I, XZIXI…I,
/// adjacent XX pairs sliding from qubits (4,5) to (2N-1,2N), and finally X on
/// qubits 3 and 2N.
pub fn build_star_table(half: usize) -> Result<ContextSystem> {
    if half < 2 {
        return Err(Error::Domain(format!("star table needs N >= 2, got {half}")));
    }
    let n = 2 * half;
    let row = |f: &dyn Fn(usize) -> Letter| {
        PauliWord::from_letters(&(0..n).map(f).collect::<Vec<_>>())
    };
    let mut rows = vec![
        row(&|_| Letter::Z),
        row(&|q| if q < 2 { Letter::X } else { Letter::Z }),
        row(&|q| match q {
            0 => Letter::Z,
            1 | 2 => Letter::X,
            _ => Letter::I,
        }),
        row(&|q| match q {
            0 | 3 => Letter::X,
            1 => Letter::Z,
            _ => Letter::I,
        }),
    ];
    for start in 3..n - 1 {
        rows.push(row(&|q| if q == start || q == start + 1 { Letter::X } else { Letter::I }));
    }
    rows.push(row(&|q| if q == 2 || q == n - 1 { Letter::X } else { Letter::I }));
    ContextSystem::single_context(rows)
}

fn words(rows: &[&str]) -> Vec<PauliWord> {
    rows.iter().map(|r| r.parse().expect("fixture word")).collect()
}

/// Named reference systems.
pub fn builtin_fixtures() -> BTreeMap<&'static str, ContextSystem> {
    let mut m = BTreeMap::new();
    m.insert(
        "table1-left",
        ContextSystem::single_context(words(&["ZZZZ", "XXZZ", "ZXXI", "XZIX", "IIXX"]))
            .expect("table1-left"),
    );
    m.insert(
        "table2-left",
        ContextSystem::single_context(words(&[
            "ZZZZZZ", "XXXXXX", "ZXZXII", "XZIIZX", "IIXZXZ",
        ]))
        .expect("table2-left"),
    );
    m.insert(
        "table2-right",
        ContextSystem::single_context(words(&[
            "ZZZZZZZI", "XXXXXXIZ", "ZXZXIIZZ", "XZIIIIXX", "IIXZZXII", "IIIIXZXX",
        ]))
        .expect("table2-right"),
    );
    let kite = words(&["IXXZ", "YYIX", "XIYY", "ZZZI", "IXXX", "YYIZ"]);
    m.insert(
        "kite-quadruples",
        ContextSystem::new(
            4,
            kite,
            vec![
                Context {
                    members: vec![0, 1, 2, 3],
                    sign: -1,
                },
                Context {
                    members: vec![4, 5, 2, 3],
                    sign: 1,
                },
            ],
        )
        .expect("kite-quadruples"),
    );
    m
}

/// Result of the sub-table search behind [`is_genuinely_multipartite`].
#[derive(Debug, Clone, Serialize)]
pub struct MultipartiteReport {
    pub genuine: bool,
    /// The table itself is a valid GHZ-type proof.
    pub is_proof: bool,
    /// A proper sub-table that is already a proof, as 1-based (rows, qubits).
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
    pub column_subsets: u64,
    pub row_subsets: u64,
}

/// Work cap (column subsets × row subsets) for the sub-table search.
pub const MULTIPARTITE_DEFAULT_CAP: u64 = 1 << 34;

/// Per-row data restricted to a column subset.
struct Restricted {
    letters: [u64; 3],
    anti: u64,
}

/// Whether some row subset of `rows` (already restricted, identity rows
/// dropped) pairwise commutes, uses every single-qubit slot an even number of
/// times, and multiplies to `-I`. `skip_full` excludes the full row set.
fn find_ghz_subset(rows: &[PauliWord], skip_full: bool) -> (Option<u64>, u64) {
    let r = rows.len();
    assert!(r < 32, "too many rows for subset search");
    let data: Vec<Restricted> = rows
        .iter()
        .map(|w| {
            let mut letters = [0u64; 3];
            for q in w.support() {
                let li = match w.letter(q) {
                    Letter::X => 0,
                    Letter::Y => 1,
                    _ => 2,
                };
                letters[li] |= 1 << q;
            }
            Restricted { letters, anti: 0 }
        })
        .collect();
    let mut data = data;
    for i in 0..r {
        for j in 0..r {
            if i != j && rows[i].anticommutes(&rows[j]) {
                data[i].anti |= 1 << j;
            }
        }
    }
    let total = 1usize << r;
    let full = total - 1;
    let mut xor = vec![[0u64; 3]; total];
    let mut comm = vec![true; total];
    let mut checked = 0u64;
    for s in 1..total {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let d = &data[low];
        xor[s] = [
            xor[rest][0] ^ d.letters[0],
            xor[rest][1] ^ d.letters[1],
            xor[rest][2] ^ d.letters[2],
        ];
        comm[s] = comm[rest] && (d.anti & s as u64) == 0;
        checked += 1;
        if !comm[s] || xor[s] != [0, 0, 0] || (skip_full && s == full) {
            continue;
        }
        let members: Vec<PauliWord> = (0..r).filter(|i| s >> i & 1 == 1).map(|i| rows[i].clone()).collect();
        let p = product_of(&members).expect("nonempty");
        if product_sign(&p) == Some(-1) {
            return (Some(s as u64), checked);
        }
    }
    (None, checked)
}

/// Genuine multipartiteness of a GHZ-type table: the table is itself a proof
/// and no proper sub-table (rows and/or qubits removed, rows that become the
/// identity discarded) is one.
pub fn is_genuinely_multipartite(rows: &[PauliWord], cap: u64) -> Result<MultipartiteReport> {
    let n = rows
        .first()
        .ok_or_else(|| Error::Domain("empty table".into()))?
        .num_qubits();
    if n > 63 {
        return Err(Error::Domain("sub-table search supports at most 63 qubits".into()));
    }
    let rows: Vec<PauliWord> = rows.iter().filter(|r| !r.is_identity_up_to_phase()).cloned().collect();
    // Identity-only columns carry no information.
    let cols: Vec<usize> = (0..n)
        .filter(|&q| rows.iter().any(|r| r.letter(q) != Letter::I))
        .collect();
    let rows: Vec<PauliWord> = rows.iter().map(|r| r.restrict(&cols)).collect();
    let ncols = cols.len();
    let (whole, mut row_subsets) = find_ghz_subset(&rows, false);
    let is_proof = whole.is_some();
    let mut report = MultipartiteReport {
        genuine: false,
        is_proof,
        witness: None,
        column_subsets: 1,
        row_subsets,
    };
    if !is_proof {
        return Ok(report);
    }
    let per_subset = 1u64 << rows.len();
    if (1u64 << ncols).saturating_mul(per_subset) > cap {
        return Err(Error::ResourceCap(format!(
            "sub-table search needs 2^{} column subsets x 2^{} row subsets",
            ncols,
            rows.len()
        )));
    }
    let full_cols = (1u64 << ncols) - 1;
    for cmask in 1..=full_cols {
        let keep: Vec<usize> = (0..ncols).filter(|q| cmask >> q & 1 == 1).collect();
        let mut kept_rows = Vec::new();
        let mut restricted = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            let w = r.restrict(&keep);
            if !w.is_identity_up_to_phase() {
                kept_rows.push(i);
                restricted.push(w);
            }
        }
        if restricted.is_empty() {
            continue;
        }
        report.column_subsets += 1;
        let skip_full = cmask == full_cols;
        let (found, checked) = find_ghz_subset(&restricted, skip_full);
        row_subsets += checked;
        if let Some(s) = found {
            let wrows = (0..restricted.len())
                .filter(|i| s >> i & 1 == 1)
                .map(|i| kept_rows[i] + 1)
                .collect();
            let wcols = keep.iter().map(|&k| cols[k] + 1).collect();
            report.witness = Some((wrows, wcols));
            report.row_subsets = row_subsets;
            return Ok(report);
        }
    }
    report.row_subsets = row_subsets;
    report.genuine = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn table1_left_verifies() {
        let sys = &builtin_fixtures()["table1-left"];
        assert_eq!(sys.contexts()[0].sign, -1);
        assert!(verify_system(sys).is_valid());
    }

    #[test]
    fn wrong_sign_is_reported() {
        let sys = &builtin_fixtures()["table1-left"];
        let bad = ContextSystem::new(
            4,
            sys.observables().to_vec(),
            vec![Context {
                members: (0..5).collect(),
                sign: 1,
            }],
        )
        .unwrap();
        let report = verify_system(&bad);
        assert!(!report.is_valid());
        assert!(report.violations[0].to_string().contains("product sign mismatch"));
    }

    #[test]
    fn anticommuting_members_reported() {
        let sys = ContextSystem::new(
            2,
            vec![w("XI"), w("ZI")],
            vec![Context {
                members: vec![0, 1],
                sign: 1,
            }],
        )
        .unwrap();
        let report = verify_system(&sys);
        assert!(report.violations[0].to_string().contains("members do not commute"));
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(ContextSystem::new(2, vec![w("XI"), w("XI")], vec![]).is_err());
        assert!(ContextSystem::new(2, vec![w("-XI")], vec![]).is_err());
        assert!(ContextSystem::new(
            2,
            vec![w("XI")],
            vec![Context {
                members: vec![3],
                sign: 1
            }]
        )
        .is_err());
    }

    #[test]
    fn witness_examples() {
        let thin = ContextSystem::from_strings(&["ZI", "IZ", "ZZ"]).unwrap();
        assert_eq!(thin.contexts()[0].sign, 1);
        assert!(!parity_witness(&thin));
        let t1 = &builtin_fixtures()["table1-left"];
        assert!(!parity_witness(t1));
        let lifted = lift_to_single_qubit(t1).unwrap();
        assert!(verify_system(&lifted).is_valid());
        assert!(parity_witness(&lifted));
        assert_eq!(lifted.contexts().iter().filter(|c| c.sign < 0).count(), 1);
    }

    #[test]
    fn all_positive_is_feasible() {
        let sys = ContextSystem::from_strings(&["XX", "ZZ"]).ok();
        assert!(sys.is_none(), "XX·ZZ = -YY is not ±I");
        let sys = ContextSystem::from_strings(&["ZI", "IZ", "ZZ"]).unwrap();
        assert_eq!(sys.contexts()[0].sign, 1);
        assert!(!gf2_infeasible(&sys));
        assert!(!gf2_infeasible(&lift_to_single_qubit(&sys).unwrap()));
    }

    #[test]
    fn ghz_table1_left() {
        let sys = &builtin_fixtures()["table1-left"];
        let r = ghz_infeasible(sys, &[1, 1, 1, 1, -1]).unwrap();
        assert!(r.infeasible);
        assert_eq!(r.exhaustive, Some((0, 256)));
        assert!(matches!(
            ghz_infeasible(sys, &[1, 1, 1, 1, 1]),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn star_rows() {
        let t2 = build_star_table(2).unwrap();
        assert_eq!(t2, builtin_fixtures()["table1-left"]);
        let t3 = build_star_table(3).unwrap();
        let rendered: Vec<String> = t3.observables().iter().map(|o| o.to_string()).collect();
        assert_eq!(
            rendered,
            ["ZZZZZZ", "XXZZZZ", "ZXXIII", "XZIXII", "IIIXXI", "IIIIXX", "IIXIIX"]
        );
        assert!(build_star_table(1).is_err());
    }

    #[test]
    fn star_columns_even() {
        for half in 2..=8 {
            let t = build_star_table(half).unwrap();
            assert_eq!(t.observables().len(), 2 * half + 1);
            for q in 0..2 * half {
                for l in [Letter::X, Letter::Z] {
                    let c = t.observables().iter().filter(|o| o.letter(q) == l).count();
                    assert_eq!(c % 2, 0, "N={half} qubit {q} letter {l}");
                }
            }
        }
    }

    #[test]
    fn kite_quadruples_signs() {
        let kite = &builtin_fixtures()["kite-quadruples"];
        assert!(verify_system(kite).is_valid());
    }

    #[test]
    fn multipartite_small_cases() {
        let t1 = builtin_fixtures()["table1-left"].observables().to_vec();
        assert!(is_genuinely_multipartite(&t1, MULTIPARTITE_DEFAULT_CAP).unwrap().genuine);
        let mut padded = t1.clone();
        padded.push(t1[0].clone());
        let r = is_genuinely_multipartite(&padded, MULTIPARTITE_DEFAULT_CAP).unwrap();
        assert!(r.is_proof);
        assert!(!r.genuine);
        assert!(r.witness.is_some());
    }

    #[test]
    fn two_row_tables_are_never_proofs() {
        for n in 1..=3 {
            let all: Vec<PauliWord> = (1..1u64 << (2 * n))
                .map(|k| PauliWord::from_masks(n, k & ((1 << n) - 1), k >> n, Phase::ONE))
                .collect();
            for a in &all {
                for b in &all {
                    if a.anticommutes(b) {
                        continue;
                    }
                    let r = is_genuinely_multipartite(&[a.clone(), b.clone()], 1 << 20).unwrap();
                    assert!(!r.genuine && !r.is_proof, "{a} {b}");
                }
            }
        }
    }
}
