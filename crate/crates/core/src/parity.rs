//! Eigenspace projectors of contexts, basis tables, and parity proofs.
//!
//! Every projector is identified by its signed stabilizer group in canonical
//! form; dense matrices only appear in tests. A basis is a set of mutually
//! orthogonal projectors whose ranks add up to `2^n`. A parity proof is an odd
//! set of bases in which every projector occurs an even number of times, so
//! no 0/1 valuation can put exactly one 1 in every basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{self, BitVec, Echelon};
use crate::ks::{verify_system, ContextSystem};
use crate::pauli::{PauliWord, Phase};
use crate::stabilizer::SignedStabilizerGroup;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StabilizerProjector {
    pub group: SignedStabilizerGroup,
    pub rank: u64,
}

impl StabilizerProjector {
    pub fn new(group: SignedStabilizerGroup) -> Self {
        let rank = group.projector_rank();
        StabilizerProjector { group, rank }
    }

    /// Canonical identifier, e.g. `<+ZIII, -IXII>`.
    pub fn id(&self) -> String {
        self.group.to_string()
    }
}

impl fmt::Display for StabilizerProjector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)
    }
}

pub fn orthogonal(p: &StabilizerProjector, q: &StabilizerProjector) -> bool {
    p.group.conflicts_with(&q.group)
}

/// Projectors of a system, grouped by the context that produced them.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectorPool {
    pub n: usize,
    pub projectors: Vec<StabilizerProjector>,
    /// For each context, the indices of its projectors (one pure basis).
    pub families: Vec<Vec<usize>>,
}

impl ProjectorPool {
    pub fn dimension(&self) -> u64 {
        1u64 << self.n
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    /// Number of projectors of each rank.
    pub fn rank_histogram(&self) -> BTreeMap<u64, usize> {
        let mut h = BTreeMap::new();
        for p in &self.projectors {
            *h.entry(p.rank).or_insert(0) += 1;
        }
        h
    }
}

/// One projector per consistent sign assignment to each context's members.
pub fn projectors_of(sys: &ContextSystem) -> Result<ProjectorPool> {
    let report = verify_system(sys);
    if !report.is_valid() {
        return Err(Error::InvalidSystem(
            report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "),
        ));
    }
    if sys.num_qubits() > 62 {
        return Err(Error::Domain("projector ranks need n <= 62".into()));
    }
    let mut index: HashMap<SignedStabilizerGroup, usize> = HashMap::new();
    let mut projectors = Vec::new();
    let mut families = Vec::new();
    for c in sys.contexts() {
        let words = sys.context_words(c);
        if words.len() > 24 {
            return Err(Error::ResourceCap(format!("context with {} members", words.len())));
        }
        let mut family = Vec::new();
        for pattern in 0u32..1 << words.len() {
            let signed: Vec<PauliWord> = words
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    let phase = if pattern >> i & 1 == 1 { Phase::MINUS_ONE } else { Phase::ONE };
                    w.clone().with_phase(phase)
                })
                .collect();
            let Ok(group) = SignedStabilizerGroup::from_generators(sys.num_qubits(), &signed) else {
                continue;
            };
            let id = *index.entry(group.clone()).or_insert_with(|| {
                projectors.push(StabilizerProjector::new(group));
                projectors.len() - 1
            });
            family.push(id);
        }
        family.sort_unstable();
        family.dedup();
        families.push(family);
    }
    Ok(ProjectorPool {
        n: sys.num_qubits(),
        projectors,
        families,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Pure,
    Hybrid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Basis {
    pub projectors: Vec<usize>,
    pub kind: BasisKind,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisTable {
    pub pool: ProjectorPool,
    pub bases: Vec<Basis>,
    /// The enumeration hit its cap; `bases` is incomplete.
    pub partial: bool,
    #[serde(skip)]
    orthogonality: Vec<BitVec>,
}

/// Default cap on search nodes for [`enumerate_bases`].
pub const DEFAULT_BASIS_CAP: u64 = 50_000_000;

/// Orthogonality graph of the pool as adjacency bitsets.
pub fn orthogonality_graph(pool: &ProjectorPool) -> Vec<BitVec> {
    let m = pool.len();
    let rows: Vec<Vec<usize>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (i + 1..m)
                .filter(|&j| orthogonal(&pool.projectors[i], &pool.projectors[j]))
                .collect()
        })
        .collect();
    let mut adj = vec![BitVec::zeros(m); m];
    for (i, js) in rows.into_iter().enumerate() {
        for j in js {
            adj[i].set(j, true);
            adj[j].set(i, true);
        }
    }
    adj
}

struct CliqueSearch<'a> {
    ranks: &'a [u64],
    adj: &'a [BitVec],
    target: u64,
    cap: u64,
    nodes: u64,
    partial: bool,
    found: Vec<Vec<usize>>,
}

impl CliqueSearch<'_> {
    fn run(&mut self, clique: &mut Vec<usize>, sum: u64, cand: &BitVec) {
        if self.nodes >= self.cap {
            self.partial = true;
            return;
        }
        self.nodes += 1;
        if sum == self.target {
            self.found.push(clique.clone());
            return;
        }
        let avail: u64 = cand.iter_ones().map(|v| self.ranks[v]).sum();
        if sum + avail < self.target {
            return;
        }
        let mut cand = cand.clone();
        while let Some(v) = cand.first_one() {
            cand.set(v, false);
            if sum + self.ranks[v] > self.target {
                continue;
            }
            let mut next = cand.clone();
            for (w, a) in next.words_mut().iter_mut().zip(self.adj[v].words()) {
                *w &= a;
            }
            clique.push(v);
            self.run(clique, sum + self.ranks[v], &next);
            clique.pop();
            if self.partial {
                return;
            }
            let left: u64 = cand.iter_ones().map(|v| self.ranks[v]).sum();
            if sum + left < self.target {
                return;
            }
        }
    }
}

/// All bases over the pool: sets of mutually orthogonal projectors with rank
/// sum `2^n`. Pure bases (a whole context family) come first in context
/// order, then hybrids in lexicographic order.
pub fn enumerate_bases(pool: &ProjectorPool, cap: u64) -> Result<BasisTable> {
    if pool.is_empty() {
        return Err(Error::Domain("empty projector pool".into()));
    }
    let adj = orthogonality_graph(pool);
    let ranks: Vec<u64> = pool.projectors.iter().map(|p| p.rank).collect();
    let mut search = CliqueSearch {
        ranks: &ranks,
        adj: &adj,
        target: pool.dimension(),
        cap,
        nodes: 0,
        partial: false,
        found: Vec::new(),
    };
    let all = BitVec::from_indices(pool.len(), 0..pool.len());
    search.run(&mut Vec::new(), 0, &all);
    let partial = search.partial;
    let mut found = search.found;
    for b in found.iter_mut() {
        b.sort_unstable();
    }
    found.sort();
    found.dedup();
    let mut bases: Vec<Basis> = Vec::new();
    for fam in &pool.families {
        if !bases.iter().any(|b| &b.projectors == fam) {
            bases.push(Basis {
                projectors: fam.clone(),
                kind: BasisKind::Pure,
            });
        }
    }
    for b in found {
        if !pool.families.contains(&b) {
            bases.push(Basis {
                projectors: b,
                kind: BasisKind::Hybrid,
            });
        }
    }
    Ok(BasisTable {
        pool: pool.clone(),
        bases,
        partial,
        orthogonality: adj,
    })
}

impl BasisTable {
    pub fn count(&self, kind: BasisKind) -> usize {
        self.bases.iter().filter(|b| b.kind == kind).count()
    }

    /// Row per projector: the bases it belongs to.
    pub fn incidence(&self) -> Vec<BitVec> {
        let mut rows = vec![BitVec::zeros(self.bases.len()); self.pool.len()];
        for (bi, b) in self.bases.iter().enumerate() {
            for &p in &b.projectors {
                rows[p].set(bi, true);
            }
        }
        rows
    }

    /// Column per basis: the projectors it contains.
    pub fn basis_vectors(&self) -> Vec<BitVec> {
        self.bases
            .iter()
            .map(|b| BitVec::from_indices(self.pool.len(), b.projectors.iter().copied()))
            .collect()
    }

    pub fn orthogonality(&self) -> &[BitVec] {
        &self.orthogonality
    }

    /// The table restricted to the listed bases, in the given order.
    pub fn with_bases(&self, keep: &[usize]) -> BasisTable {
        let mut t = self.clone();
        t.bases = keep.iter().map(|&i| self.bases[i].clone()).collect();
        t
    }
}

/// Every orthogonal pair of projectors shares at least one basis.
pub fn is_saturated(table: &BasisTable) -> bool {
    let m = table.pool.len();
    let mut covered = vec![BitVec::zeros(m); m];
    for b in &table.bases {
        for &p in &b.projectors {
            for &q in &b.projectors {
                covered[p].set(q, true);
            }
        }
    }
    (0..m).all(|p| table.orthogonality[p].is_subset_of(&covered[p]))
}

/// Projector counts by (rank, multiplicity) and basis counts by size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProofSymbol {
    pub projector_classes: BTreeMap<(u64, usize), usize>,
    pub basis_sizes: BTreeMap<usize, usize>,
}

fn superscript(n: u64) -> String {
    const D: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

fn subscript(n: u64) -> String {
    const D: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string().chars().map(|c| D[c.to_digit(10).unwrap() as usize]).collect()
}

impl ProofSymbol {
    pub fn projector_count(&self) -> usize {
        self.projector_classes.values().sum()
    }

    pub fn basis_count(&self) -> usize {
        self.basis_sizes.values().sum()
    }

    /// Short form `projectors-bases`, e.g. `24-9`.
    pub fn short(&self) -> String {
        format!("{}-{}", self.projector_count(), self.basis_count())
    }

    /// `12²₂12⁴₂−4₄4₆1₈`
    pub fn utf8(&self) -> String {
        let left: String = self
            .projector_classes
            .iter()
            .map(|(&(r, m), &c)| format!("{c}{}{}", superscript(r), subscript(m as u64)))
            .collect();
        let right: String = self
            .basis_sizes
            .iter()
            .map(|(&s, &c)| format!("{c}{}", subscript(s as u64)))
            .collect();
        format!("{left}\u{2212}{right}")
    }

    /// `12^2_2 12^4_2 - 4_4 4_6 1_8`
    pub fn ascii(&self) -> String {
        let left: Vec<String> = self
            .projector_classes
            .iter()
            .map(|(&(r, m), &c)| format!("{c}^{r}_{m}"))
            .collect();
        let right: Vec<String> = self
            .basis_sizes
            .iter()
            .map(|(&s, &c)| format!("{c}_{s}"))
            .collect();
        format!("{} - {}", left.join(" "), right.join(" "))
    }
}

impl fmt::Display for ProofSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.utf8())
    }
}

pub fn proof_symbol(bases: &[usize], table: &BasisTable) -> ProofSymbol {
    let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
    let mut basis_sizes = BTreeMap::new();
    for &b in bases {
        let basis = &table.bases[b];
        *basis_sizes.entry(basis.projectors.len()).or_insert(0) += 1;
        for &p in &basis.projectors {
            *mult.entry(p).or_insert(0) += 1;
        }
    }
    let mut projector_classes = BTreeMap::new();
    for (p, m) in mult {
        *projector_classes
            .entry((table.pool.projectors[p].rank, m))
            .or_insert(0) += 1;
    }
    ProofSymbol {
        projector_classes,
        basis_sizes,
    }
}

/// Odd basis count and even occurrence of every projector.
pub fn is_parity_proof(bases: &[usize], table: &BasisTable) -> bool {
    if bases.len() % 2 == 0 {
        return false;
    }
    let cols = table.basis_vectors();
    let mut acc = BitVec::zeros(table.pool.len());
    for &b in bases {
        acc.xor_assign(&cols[b]);
    }
    acc.is_zero()
}

/// No nonempty proper subset of the bases is itself a parity proof, i.e. the
/// only nonzero even-incidence subset is the whole set.
pub fn is_critical(bases: &[usize], table: &BasisTable) -> bool {
    let cols = table.basis_vectors();
    let selected: Vec<BitVec> = bases.iter().map(|&b| cols[b].clone()).collect();
    gf2::rank(table.pool.len(), &selected) + 1 == bases.len()
}

/// Dropping any single basis breaks the proof.
pub fn fails_on_single_drop(bases: &[usize], table: &BasisTable) -> bool {
    (0..bases.len()).all(|i| {
        let rest: Vec<usize> = bases.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &b)| b).collect();
        !is_parity_proof(&rest, table)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofRecord {
    pub bases: Vec<usize>,
    pub symbol: String,
    pub critical: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolCount {
    pub symbol: String,
    pub ascii: String,
    pub projectors: usize,
    pub bases: usize,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Census {
    pub kernel_dimension: usize,
    /// Kernel too large to enumerate; only the dimension is meaningful.
    pub partial: bool,
    pub total: u64,
    pub types: Vec<SymbolCount>,
    /// Number of critical proofs per basis count.
    pub by_basis_count: BTreeMap<usize, u64>,
    #[serde(skip)]
    pub proofs: Vec<Vec<usize>>,
}

impl Census {
    pub fn smallest(&self) -> Option<&SymbolCount> {
        self.types.iter().min_by_key(|t| (t.bases, t.projectors, t.symbol.clone()))
    }

    pub fn records(&self, table: &BasisTable) -> Vec<ProofRecord> {
        self.proofs
            .iter()
            .map(|p| ProofRecord {
                bases: p.clone(),
                symbol: proof_symbol(p, table).utf8(),
                critical: true,
            })
            .collect()
    }
}

/// Low kernel bits walked by Gray code inside one chunk.
const CHUNK_BITS: usize = 16;

/// Visit all `2^d` kernel combinations in parallel chunks keyed by the high
/// bits; `scan` appends critical proofs found in a chunk.
fn walk_kernel<F>(d: usize, scan: F) -> Vec<Vec<usize>>
where
    F: Fn(u64, &mut Vec<Vec<usize>>) + Sync,
{
    let high = d.saturating_sub(CHUNK_BITS);
    (0u64..1 << high)
        .into_par_iter()
        .flat_map_iter(|h| {
            let mut out = Vec::new();
            scan(h, &mut out);
            out
        })
        .collect()
}

/// Whether the selected columns have exactly one linear dependency.
fn single_dependency_u128(cols: &[u128], members: u128) -> bool {
    let mut basis: Vec<u128> = Vec::with_capacity(members.count_ones() as usize);
    let mut deps = 0;
    let mut rest = members;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mut v = cols[b];
        for &e in &basis {
            let pivot = 127 - e.leading_zeros();
            if v >> pivot & 1 == 1 {
                v ^= e;
            }
        }
        if v == 0 {
            deps += 1;
            if deps > 1 {
                return false;
            }
        } else {
            let at = basis.partition_point(|&e| e.leading_zeros() < v.leading_zeros());
            basis.insert(at, v);
        }
    }
    deps == 1
}

fn ones_u128(mut v: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(v.count_ones() as usize);
    while v != 0 {
        out.push(v.trailing_zeros() as usize);
        v &= v - 1;
    }
    out
}

fn scan_chunk_u128(kernel: &[u128], cols: &[u128], h: u64, out: &mut Vec<Vec<usize>>) {
    let low = kernel.len().min(CHUNK_BITS);
    let mut v = kernel[low..]
        .iter()
        .enumerate()
        .filter(|(i, _)| h >> i & 1 == 1)
        .fold(0u128, |acc, (_, k)| acc ^ k);
    for step in 0u64..1 << low {
        if step > 0 {
            v ^= kernel[step.trailing_zeros() as usize];
        }
        if v.count_ones() % 2 == 1 && single_dependency_u128(cols, v) {
            out.push(ones_u128(v));
        }
    }
}

fn scan_chunk(kernel: &[BitVec], cols: &[BitVec], m: usize, h: u64, out: &mut Vec<Vec<usize>>) {
    let low = kernel.len().min(CHUNK_BITS);
    let mut v = BitVec::zeros(kernel.first().map_or(0, BitVec::len));
    for (i, k) in kernel[low..].iter().enumerate() {
        if h >> i & 1 == 1 {
            v.xor_assign(k);
        }
    }
    for step in 0u64..1 << low {
        if step > 0 {
            v.xor_assign(&kernel[step.trailing_zeros() as usize]);
        }
        if v.count_ones() % 2 == 0 {
            continue;
        }
        let members: Vec<usize> = v.iter_ones().collect();
        let mut e = Echelon::new(m, std::iter::empty());
        let independent = members.iter().filter(|&&b| e.insert(cols[b].clone())).count();
        if independent + 1 == members.len() {
            out.push(members);
        }
    }
}

/// Default cap on the kernel dimension enumerated by [`enumerate_parity_proofs`].
pub const DEFAULT_KERNEL_CAP: usize = 30;

/// Every critical parity proof of the table, found by walking the GF(2)
/// kernel of the projector-by-basis incidence matrix.
pub fn enumerate_parity_proofs(table: &BasisTable, kernel_cap: usize) -> Result<Census> {
    if table.partial {
        return Err(Error::Domain("basis table is partial".into()));
    }
    let nb = table.bases.len();
    let incidence = table.incidence();
    let kernel = gf2::kernel(nb, &incidence);
    let d = kernel.len();
    if d > kernel_cap {
        return Ok(Census {
            kernel_dimension: d,
            partial: true,
            total: 0,
            types: Vec::new(),
            by_basis_count: BTreeMap::new(),
            proofs: Vec::new(),
        });
    }
    let cols = table.basis_vectors();
    let mut proofs = if nb <= 128 && table.pool.len() <= 128 {
        let pack = |v: &BitVec| v.iter_ones().fold(0u128, |acc, i| acc | 1 << i);
        let kernel: Vec<u128> = kernel.iter().map(pack).collect();
        let cols: Vec<u128> = cols.iter().map(pack).collect();
        walk_kernel(d, |h, out| scan_chunk_u128(&kernel, &cols, h, out))
    } else {
        walk_kernel(d, |h, out| scan_chunk(&kernel, &cols, table.pool.len(), h, out))
    };
    proofs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut by_symbol: BTreeMap<ProofSymbol, u64> = BTreeMap::new();
    let mut by_basis_count = BTreeMap::new();
    for p in &proofs {
        *by_symbol.entry(proof_symbol(p, table)).or_insert(0) += 1;
        *by_basis_count.entry(p.len()).or_insert(0) += 1;
    }
    let mut types: Vec<SymbolCount> = by_symbol
        .into_iter()
        .map(|(s, count)| SymbolCount {
            symbol: s.utf8(),
            ascii: s.ascii(),
            projectors: s.projector_count(),
            bases: s.basis_count(),
            count,
        })
        .collect();
    types.sort_by(|a, b| (a.bases, a.projectors, &a.symbol).cmp(&(b.bases, b.projectors, &b.symbol)));
    Ok(Census {
        kernel_dimension: d,
        partial: false,
        total: proofs.len() as u64,
        types,
        by_basis_count,
        proofs,
    })
}

/// Critical parity proofs among subsets of the listed bases, by direct
/// enumeration of all `2^k` subsets (`k ≤ 24`). Independent of the kernel
/// route; used to cross-check it.
pub fn brute_force_proofs(table: &BasisTable, window: &[usize]) -> Result<Vec<Vec<usize>>> {
    let k = window.len();
    if k > 24 {
        return Err(Error::ResourceCap(format!("brute force over 2^{k} subsets")));
    }
    let cols = table.basis_vectors();
    let total = 1usize << k;
    let mut xor = vec![BitVec::zeros(table.pool.len()); 1];
    xor.reserve(total);
    for s in 1..total {
        let low = s.trailing_zeros() as usize;
        let mut v = xor[s & (s - 1)].clone();
        v.xor_assign(&cols[window[low]]);
        xor.push(v);
    }
    let zero: Vec<bool> = xor.iter().map(BitVec::is_zero).collect();
    drop(xor);
    // inner[s]: some nonempty proper subset of s has even incidence.
    let mut inner = vec![false; total];
    for s in 1..total {
        let mut bits = s;
        while bits != 0 {
            let e = bits & bits.wrapping_neg();
            bits ^= e;
            let t = s ^ e;
            if t != 0 && (zero[t] || inner[t]) {
                inner[s] = true;
                break;
            }
        }
    }
    let mut out: Vec<Vec<usize>> = (1..total)
        .filter(|&s| zero[s] && s.count_ones() % 2 == 1 && !inner[s])
        .map(|s| {
            let mut v: Vec<usize> = (0..k).filter(|i| s >> i & 1 == 1).map(|i| window[i]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoPowerReport {
    pub hybrid_bases: usize,
    /// Half the hybrid count; absent when that count is odd.
    pub h: Option<usize>,
    pub total: u64,
    pub two_power_h: Option<u64>,
    pub holds: Option<bool>,
}

pub fn check_two_power_h(table: &BasisTable, census: &Census) -> TwoPowerReport {
    let hybrid = table.count(BasisKind::Hybrid);
    let h = (hybrid % 2 == 0).then_some(hybrid / 2);
    let two_power_h = h.and_then(|h| 1u64.checked_shl(h as u32));
    TwoPowerReport {
        hybrid_bases: hybrid,
        h,
        total: census.total,
        two_power_h,
        holds: two_power_h.map(|p| p == census.total),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ks::Context;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    fn single(rows: &[&str]) -> ContextSystem {
        ContextSystem::from_strings(rows).unwrap()
    }

    #[test]
    fn complete_context_gives_one_pure_basis() {
        let sys = single(&["ZI", "IZ", "ZZ"]);
        let pool = projectors_of(&sys).unwrap();
        assert_eq!(pool.len(), 4);
        assert!(pool.projectors.iter().all(|p| p.rank == 1));
        let table = enumerate_bases(&pool, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(table.bases.len(), 1);
        assert_eq!(table.bases[0].kind, BasisKind::Pure);
        assert!(is_saturated(&table));
        let census = enumerate_parity_proofs(&table, DEFAULT_KERNEL_CAP).unwrap();
        assert_eq!(census.total, 0);
        let r = check_two_power_h(&table, &census);
        assert_eq!(r.h, Some(0));
        assert_eq!(r.holds, Some(false));
    }

    #[test]
    fn single_qubit_z() {
        let sys = ContextSystem::new(
            1,
            vec![w("Z")],
            vec![Context {
                members: vec![0],
                sign: 1,
            }],
        );
        // {Z} alone has product Z, not ±I; build the pool from the group directly.
        assert!(projectors_of(&sys.unwrap()).is_err());
        let plus = StabilizerProjector::new(SignedStabilizerGroup::from_generators(1, &[w("Z")]).unwrap());
        let minus = StabilizerProjector::new(SignedStabilizerGroup::from_generators(1, &[w("-Z")]).unwrap());
        let x = StabilizerProjector::new(SignedStabilizerGroup::from_generators(1, &[w("X")]).unwrap());
        assert!(orthogonal(&plus, &minus));
        assert!(!orthogonal(&plus, &x));
        assert_eq!(plus.rank, 1);
    }

    #[test]
    fn symbol_rendering() {
        let s = ProofSymbol {
            projector_classes: [((2, 2), 12), ((4, 2), 12)].into_iter().collect(),
            basis_sizes: [(4, 4), (6, 4), (8, 1)].into_iter().collect(),
        };
        assert_eq!(s.utf8(), "12²₂12⁴₂−4₄4₆1₈");
        assert_eq!(s.ascii(), "12^2_2 12^4_2 - 4_4 4_6 1_8");
        assert_eq!(s.short(), "24-9");
        let big = ProofSymbol {
            projector_classes: [((8, 2), 24), ((32, 2), 12)].into_iter().collect(),
            basis_sizes: [(4, 4), (10, 4), (16, 1)].into_iter().collect(),
        };
        assert_eq!(big.utf8(), "24⁸₂12³²₂−4₄4₁₀1₁₆");
    }

    #[test]
    fn single_basis_is_never_a_proof() {
        let sys = single(&["ZI", "IZ", "ZZ"]);
        let table = enumerate_bases(&projectors_of(&sys).unwrap(), DEFAULT_BASIS_CAP).unwrap();
        assert!(!is_parity_proof(&[0], &table));
    }
}
