//! Backtracking reconstruction of context systems whose parity witness holds.
//!
//! Starting from a seed system, contexts of the requested sizes are added one
//! at a time. Whenever some observable lies in an odd number of contexts the
//! next context must contain it, which keeps the branching small. Completed
//! systems are deduplicated up to qubit permutations and a global relabeling
//! of `X, Y, Z`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ks::{parity_witness, product_sign, verify_system, Context, ContextSystem};
use crate::pauli::{Letter, PauliWord, Phase};
use crate::stabilizer::SignedStabilizerGroup;

/// Largest qubit count the search enumerates words for.
pub const SEARCH_MAX_QUBITS: usize = 7;

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    /// Distinct completions, sorted by canonical key.
    pub systems: Vec<ContextSystem>,
    pub nodes: u64,
    /// The node budget ran out; `systems` holds what was found until then.
    pub partial: bool,
}

/// A candidate context: its words (phase +1) and product sign.
#[derive(Debug, Clone)]
struct Candidate {
    words: Vec<PauliWord>,
    sign: i8,
}

fn all_words(n: usize) -> Vec<PauliWord> {
    (1..1u64 << (2 * n))
        .map(|k| PauliWord::from_masks(n, k & ((1 << n) - 1), k >> n, Phase::ONE))
        .collect()
}

/// Every context of `size` members containing `anchor`. When `min_anchor` is
/// set the anchor must be the smallest member.
fn contexts_through(
    anchor: &PauliWord,
    size: usize,
    words: &[PauliWord],
    min_anchor: bool,
) -> Vec<Candidate> {
    let partners: Vec<&PauliWord> = words
        .iter()
        .filter(|w| *w != anchor && !w.anticommutes(anchor))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut chosen: Vec<&PauliWord> = Vec::new();
    fn rec<'a>(
        anchor: &PauliWord,
        size: usize,
        partners: &[&'a PauliWord],
        start: usize,
        chosen: &mut Vec<&'a PauliWord>,
        min_anchor: bool,
        seen: &mut HashSet<Vec<PauliWord>>,
        out: &mut Vec<Candidate>,
    ) {
        if chosen.len() + 2 == size {
            let mut group = SignedStabilizerGroup::trivial(anchor.num_qubits());
            let mut prod = anchor.clone();
            group.insert(anchor).expect("hermitian");
            for w in chosen.iter() {
                if !group.insert(w).expect("commuting") {
                    return;
                }
                prod = prod.mul_unchecked(w);
            }
            // Independence of the chosen words makes `last` a new member.
            let last = prod.unsigned();
            let mut members: Vec<PauliWord> = chosen.iter().map(|w| (*w).clone()).collect();
            members.push(anchor.clone());
            members.push(last.clone());
            if min_anchor && members.iter().any(|m| m < anchor) {
                return;
            }
            members.sort();
            if !seen.insert(members.clone()) {
                return;
            }
            let total = prod.mul_unchecked(&last);
            let sign = product_sign(&total).expect("closing member");
            out.push(Candidate {
                words: members,
                sign,
            });
            return;
        }
        for i in start..partners.len() {
            let w = partners[i];
            if chosen.iter().any(|c| c.anticommutes(w)) {
                continue;
            }
            chosen.push(w);
            rec(anchor, size, partners, i + 1, chosen, min_anchor, seen, out);
            chosen.pop();
        }
    }
    if size < 3 {
        return out;
    }
    rec(
        anchor,
        size,
        &partners,
        0,
        &mut chosen,
        min_anchor,
        &mut seen,
        &mut out,
    );
    out
}

struct State<'a> {
    n: usize,
    words: &'a [PauliWord],
    observables: Vec<PauliWord>,
    index: HashMap<PauliWord, usize>,
    degree: Vec<usize>,
    contexts: Vec<Context>,
    context_sets: HashSet<Vec<usize>>,
    remaining: BTreeMap<usize, usize>,
    budget: u64,
    nodes: u64,
    partial: bool,
    found: BTreeMap<String, ContextSystem>,
    cache: HashMap<(PauliWord, usize), Rc<Vec<Candidate>>>,
}

impl State<'_> {
    fn through(&mut self, anchor: &PauliWord, size: usize) -> Rc<Vec<Candidate>> {
        let words = self.words;
        self.cache
            .entry((anchor.clone(), size))
            .or_insert_with(|| Rc::new(contexts_through(anchor, size, words, false)))
            .clone()
    }

    fn remaining_slots(&self) -> usize {
        self.remaining.iter().map(|(k, c)| k * c).sum()
    }

    fn odd_observables(&self) -> Vec<usize> {
        (0..self.observables.len())
            .filter(|&i| self.degree[i] % 2 == 1)
            .collect()
    }

    fn push(&mut self, cand: &Candidate) -> Option<usize> {
        let before = self.observables.len();
        let mut members = Vec::with_capacity(cand.words.len());
        for w in &cand.words {
            let id = match self.index.get(w) {
                Some(&id) => id,
                None => {
                    self.observables.push(w.clone());
                    self.degree.push(0);
                    self.index.insert(w.clone(), self.observables.len() - 1);
                    self.observables.len() - 1
                }
            };
            members.push(id);
        }
        let mut key = members.clone();
        key.sort_unstable();
        if !self.context_sets.insert(key) {
            self.truncate(before);
            return None;
        }
        for &m in &members {
            self.degree[m] += 1;
        }
        self.contexts.push(Context {
            members,
            sign: cand.sign,
        });
        Some(before)
    }

    fn truncate(&mut self, len: usize) {
        for w in self.observables.drain(len..) {
            self.index.remove(&w);
        }
        self.degree.truncate(len);
    }

    fn pop(&mut self, before: usize) {
        let c = self.contexts.pop().expect("pushed");
        let mut key = c.members.clone();
        key.sort_unstable();
        self.context_sets.remove(&key);
        for &m in &c.members {
            self.degree[m] -= 1;
        }
        self.truncate(before);
    }

    fn record(&mut self) {
        let sys = ContextSystem::new(self.n, self.observables.clone(), self.contexts.clone())
            .expect("search keeps systems well formed");
        if !parity_witness(&sys) {
            return;
        }
        let key = canonical_key(&sys);
        self.found.entry(key).or_insert(sys);
    }

    fn run(&mut self) {
        if self.nodes >= self.budget {
            self.partial = true;
            return;
        }
        self.nodes += 1;
        if self.remaining.is_empty() {
            self.record();
            return;
        }
        let odd = self.odd_observables();
        if odd.len() > self.remaining_slots() {
            return;
        }
        let sizes: Vec<usize> = self.remaining.keys().copied().collect();
        for size in sizes {
            let candidates = match odd.first() {
                Some(&o) => {
                    let anchor = self.observables[o].clone();
                    self.through(&anchor, size)
                }
                None => Rc::new(
                    self.words
                        .iter()
                        .flat_map(|w| contexts_through(w, size, self.words, true))
                        .collect(),
                ),
            };
            self.take(size);
            for cand in candidates.iter() {
                if let Some(before) = self.push(cand) {
                    self.run();
                    self.pop(before);
                }
                if self.partial {
                    break;
                }
            }
            self.give_back(size);
            if self.partial {
                return;
            }
        }
    }

    fn take(&mut self, size: usize) {
        let c = self.remaining.get_mut(&size).expect("size available");
        *c -= 1;
        if *c == 0 {
            self.remaining.remove(&size);
        }
    }

    fn give_back(&mut self, size: usize) {
        *self.remaining.entry(size).or_insert(0) += 1;
    }
}

/// Add contexts with the given sizes to `seed` so that the completed system
/// has an odd number of negative contexts and even observable incidence.
///
/// A seed that fails [`verify_system`] has no completions.
pub fn search_completions(seed: &ContextSystem, shape: &[usize], budget: u64) -> Result<SearchOutcome> {
    let n = seed.num_qubits();
    if n > SEARCH_MAX_QUBITS {
        return Err(Error::Domain(format!(
            "completion search supports at most {SEARCH_MAX_QUBITS} qubits"
        )));
    }
    if let Some(&k) = shape.iter().find(|&&k| k < 3) {
        return Err(Error::Domain(format!("context size {k} is below 3")));
    }
    if !verify_system(seed).is_valid() {
        return Ok(SearchOutcome {
            systems: Vec::new(),
            nodes: 0,
            partial: false,
        });
    }
    let words = all_words(n);
    let mut remaining = BTreeMap::new();
    for &k in shape {
        *remaining.entry(k).or_insert(0) += 1;
    }
    let mut state = State {
        n,
        words: &words,
        observables: seed.observables().to_vec(),
        index: seed
            .observables()
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect(),
        degree: seed.incidence(),
        contexts: seed.contexts().to_vec(),
        context_sets: seed
            .contexts()
            .iter()
            .map(|c| {
                let mut k = c.members.clone();
                k.sort_unstable();
                k
            })
            .collect(),
        remaining,
        budget,
        nodes: 0,
        partial: false,
        found: BTreeMap::new(),
        cache: HashMap::new(),
    };
    state.run();
    Ok(SearchOutcome {
        systems: state.found.into_values().collect(),
        nodes: state.nodes,
        partial: state.partial,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

const LETTER_MAPS: [[Letter; 3]; 6] = [
    [Letter::X, Letter::Y, Letter::Z],
    [Letter::X, Letter::Z, Letter::Y],
    [Letter::Y, Letter::X, Letter::Z],
    [Letter::Y, Letter::Z, Letter::X],
    [Letter::Z, Letter::X, Letter::Y],
    [Letter::Z, Letter::Y, Letter::X],
];

/// Key identifying a system up to qubit permutation and a global permutation
/// of `X, Y, Z`. Context signs are recomputed after relabeling.
pub fn canonical_key(sys: &ContextSystem) -> String {
    let mut best: Option<String> = None;
    for perm in permutations(sys.num_qubits()) {
        for map in &LETTER_MAPS {
            let obs: Vec<PauliWord> = sys
                .observables()
                .iter()
                .map(|o| o.permute_qubits(&perm).relabel_letters(map))
                .collect();
            let mut ctxs: Vec<String> = sys
                .contexts()
                .iter()
                .map(|c| {
                    let words: Vec<PauliWord> = c.members.iter().map(|&m| obs[m].clone()).collect();
                    let sign = crate::pauli::product_of(&words)
                        .ok()
                        .and_then(|p| product_sign(&p))
                        .unwrap_or(0);
                    let mut names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                    names.sort();
                    format!("{sign:+}:{}", names.join(","))
                })
                .collect();
            ctxs.sort();
            let key = ctxs.join(";");
            if best.as_ref().map_or(true, |b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

/// Whether the contexts split into two classes, each partitioning all
/// observables, with `rows` contexts in the first class. For six 3-member
/// contexts over nine observables this is the 3×3 array layout.
pub fn is_grid(sys: &ContextSystem, rows: usize, cols: usize) -> bool {
    let ctx = sys.contexts();
    let m = sys.observables().len();
    if ctx.len() != rows + cols || m != rows * cols {
        return false;
    }
    let partitions = |set: &[&Context]| {
        let mut covered = BTreeSet::new();
        set.iter().all(|c| c.members.iter().all(|&x| covered.insert(x))) && covered.len() == m
    };
    (0u32..1 << ctx.len())
        .filter(|s| s.count_ones() as usize == rows)
        .any(|s| {
            let pick = |side: u32| -> Vec<&Context> {
                ctx.iter()
                    .enumerate()
                    .filter(|(i, _)| s >> i & 1 == side)
                    .map(|(_, c)| c)
                    .collect()
            };
            let (a, b) = (pick(1), pick(0));
            partitions(&a) && partitions(&b)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ks::builtin_fixtures;

    #[test]
    fn three_member_contexts_on_two_qubits() {
        let words = all_words(2);
        let all: HashSet<Vec<PauliWord>> = words
            .iter()
            .flat_map(|w| contexts_through(w, 3, &words, true))
            .map(|c| c.words)
            .collect();
        assert_eq!(all.len(), 15);
    }

    #[test]
    fn mermin_square_from_empty_seed() {
        let seed = ContextSystem::new(2, vec![], vec![]).unwrap();
        let out = search_completions(&seed, &[3; 6], 1 << 24).unwrap();
        assert!(!out.partial);
        let grids: Vec<_> = out.systems.iter().filter(|s| is_grid(s, 3, 3)).collect();
        assert!(!grids.is_empty());
        for g in grids {
            assert!(verify_system(g).is_valid());
            assert!(parity_witness(g));
            assert!(g.incidence().iter().all(|&d| d == 2));
        }
    }

    #[test]
    fn inconsistent_seed_has_no_completions() {
        let kite = &builtin_fixtures()["kite-quadruples"];
        let mut ctx = kite.contexts().to_vec();
        ctx[0].sign = 1;
        let bad = ContextSystem::new(4, kite.observables().to_vec(), ctx).unwrap();
        let out = search_completions(&bad, &[3, 3, 3, 3], 1 << 20).unwrap();
        assert!(out.systems.is_empty());
    }

    #[test]
    fn canonical_key_ignores_qubit_order() {
        let a = ContextSystem::from_strings(&["XZ", "ZX", "YY"]).unwrap();
        let b = ContextSystem::from_strings(&["ZX", "XZ", "YY"]).unwrap();
        let c = ContextSystem::from_strings(&["XX", "ZZ", "YY"]).unwrap();
        assert_eq!(canonical_key(&a), canonical_key(&b));
        assert_ne!(canonical_key(&a), canonical_key(&c));
    }
}
