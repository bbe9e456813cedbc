use std::collections::BTreeMap;

use ksproof::dense::DenseMatrix;
use ksproof::ks::{gf2_infeasible, parity_witness, Context, ContextSystem};
use ksproof::parity::{
    enumerate_bases, enumerate_parity_proofs, is_critical, is_parity_proof, orthogonal, projectors_of, proof_symbol,
    BasisKind, DEFAULT_BASIS_CAP,
};
use ksproof::reproduce::{dense_agrees, square_system};
use ksproof::search::canonical_key;
use ksproof::states::{
    bell_decompose, measure_computational, stabilizer_state, DenseState, Pairing, DEFAULT_DENSE_CAP,
};
use ksproof::{PauliWord, Phase, SignedStabilizerGroup};
use num_complex::Complex64;
use proptest::prelude::*;

fn word(n: usize) -> impl Strategy<Value = PauliWord> {
    let mask = (1u64 << n) - 1;
    (any::<u64>(), any::<u64>(), 0..4i64)
        .prop_map(move |(x, z, k)| PauliWord::from_masks(n, x & mask, z & mask, Phase::from_exponent(k)))
}

fn sized_pair() -> impl Strategy<Value = (PauliWord, PauliWord)> {
    (1usize..=4).prop_flat_map(|n| (word(n), word(n)))
}

fn long_word() -> impl Strategy<Value = PauliWord> {
    (1usize..=150, any::<u64>()).prop_flat_map(|(n, seed)| {
        proptest::collection::vec(0u8..4, n).prop_map(move |letters| {
            let text: String = letters.iter().map(|&l| ['I', 'X', 'Y', 'Z'][l as usize]).collect();
            let prefix = ["", "i", "-", "-i"][(seed % 4) as usize];
            format!("{prefix}{text}").parse::<PauliWord>().unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn product_and_commutation_match_dense((a, b) in sized_pair()) {
        prop_assert!(dense_agrees(&a, &b).unwrap());
    }

    #[test]
    fn ab_and_ba_differ_by_sign((a, b) in sized_pair()) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        prop_assert_eq!(ab.unsigned(), ba.unsigned());
        if a.anticommutes(&b) {
            prop_assert_eq!(ab, ba.negate());
        } else {
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn multiplication_is_associative(
        (a, b, c) in (1usize..=6).prop_flat_map(|n| (word(n), word(n), word(n)))
    ) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn render_parse_round_trip(w in long_word()) {
        let text = w.to_string();
        prop_assert_eq!(text.parse::<PauliWord>().unwrap(), w);
    }

    #[test]
    fn square_is_identity_up_to_phase(w in (1usize..=8).prop_flat_map(word)) {
        let sq = w.multiply(&w).unwrap();
        prop_assert!(sq.is_identity_up_to_phase());
        if w.is_hermitian() {
            prop_assert_eq!(sq.phase(), Phase::ONE);
        }
    }
}

#[test]
fn exhaustive_two_qubit_dense_agreement() {
    for n in 1..=2usize {
        let words: Vec<PauliWord> = (0..1u64 << (2 * n))
            .flat_map(|k| {
                (0..4).map(move |p| PauliWord::from_masks(n, k & ((1 << n) - 1), k >> n, Phase::from_exponent(p)))
            })
            .collect();
        for a in &words {
            for b in &words {
                assert!(dense_agrees(a, b).unwrap(), "{a} * {b}");
            }
        }
    }
}

/// Every 3-member context `{a, b, ab}` on two qubits with its product sign.
fn two_qubit_contexts() -> (Vec<PauliWord>, Vec<Vec<usize>>) {
    let words: Vec<PauliWord> = (1..16u64)
        .map(|k| PauliWord::from_masks(2, k & 3, k >> 2, Phase::ONE))
        .collect();
    let mut contexts = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i].anticommutes(&words[j]) {
                continue;
            }
            let p = words[i].multiply(&words[j]).unwrap().unsigned();
            let k = words.iter().position(|w| *w == p).unwrap();
            if k > j {
                contexts.push(vec![i, j, k]);
            }
        }
    }
    (words, contexts)
}

fn subsystem(words: &[PauliWord], all: &[Vec<usize>], pick: &[bool]) -> Option<ContextSystem> {
    let chosen: Vec<&Vec<usize>> = all.iter().zip(pick).filter(|(_, &p)| p).map(|(c, _)| c).collect();
    if chosen.is_empty() {
        return None;
    }
    let mut used: Vec<usize> = chosen.iter().flat_map(|c| c.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    let contexts = chosen
        .iter()
        .map(|c| {
            let members: Vec<usize> = c.iter().map(|m| used.binary_search(m).unwrap()).collect();
            let ws: Vec<PauliWord> = c.iter().map(|&m| words[m].clone()).collect();
            let sign = ksproof::ks::product_sign(&ksproof::product_of(&ws).unwrap()).unwrap();
            Context { members, sign }
        })
        .collect();
    ContextSystem::new(2, used.iter().map(|&m| words[m].clone()).collect(), contexts).ok()
}

/// Direct search for a ±1 assignment meeting every context sign.
fn assignment_exists(sys: &ContextSystem) -> bool {
    let m = sys.observables().len();
    (0u32..1 << m).any(|v| {
        sys.contexts().iter().all(|c| {
            let neg = c.members.iter().filter(|&&i| v >> i & 1 == 1).count();
            (if neg % 2 == 1 { -1 } else { 1 }) == c.sign
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn witness_implies_infeasible(pick in proptest::collection::vec(any::<bool>(), 15)) {
        let (words, all) = two_qubit_contexts();
        prop_assume!(all.len() == 15);
        if let Some(sys) = subsystem(&words, &all, &pick) {
            let infeasible = gf2_infeasible(&sys);
            if parity_witness(&sys) {
                prop_assert!(infeasible);
            }
            prop_assert_eq!(infeasible, !assignment_exists(&sys));
        }
    }

    #[test]
    fn canonical_key_ignores_qubit_order(pick in proptest::collection::vec(any::<bool>(), 15)) {
        let (words, all) = two_qubit_contexts();
        if let Some(sys) = subsystem(&words, &all, &pick) {
            let swapped = ContextSystem::new(
                2,
                sys.observables().iter().map(|w| w.permute_qubits(&[1, 0])).collect(),
                sys.contexts().to_vec(),
            ).unwrap();
            prop_assert_eq!(canonical_key(&sys), canonical_key(&swapped));
        }
    }
}

/// Greedily insert random signed words that commute with what is already
/// there; `candidates` bounds how many are tried.
fn commuting_group(n: usize, candidates: usize) -> impl Strategy<Value = SignedStabilizerGroup> {
    proptest::collection::vec(word(n), 1..=candidates).prop_map(move |ws| {
        let mut g = SignedStabilizerGroup::trivial(n);
        for w in ws {
            let sign = if w.phase().exponent() >= 2 { Phase::MINUS_ONE } else { Phase::ONE };
            let w = w.unsigned().with_phase(sign);
            if w.is_identity_up_to_phase() || g.generators().iter().any(|h| h.anticommutes(&w)) {
                continue;
            }
            let _ = g.insert(&w);
        }
        g
    })
}

fn dense_ok(p: &DenseMatrix, q: &DenseMatrix) -> bool {
    p.matmul(q).trace().norm() < 1e-9
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn orthogonality_matches_trace(
        (g, h) in (1usize..=3).prop_flat_map(|n| (commuting_group(n, n), commuting_group(n, n)))
    ) {
        let p = ksproof::parity::StabilizerProjector::new(g.clone());
        let q = ksproof::parity::StabilizerProjector::new(h.clone());
        let dp = g.to_dense_projector(DEFAULT_DENSE_CAP).unwrap();
        let dq = h.to_dense_projector(DEFAULT_DENSE_CAP).unwrap();
        prop_assert_eq!(orthogonal(&p, &q), dense_ok(&dp, &dq));
        prop_assert!((dp.trace().re - g.projector_rank() as f64).abs() < 1e-9);
    }

    #[test]
    fn stabilizer_states_satisfy_generators(g in (1usize..=5).prop_flat_map(|n| commuting_group(n, 40))) {
        prop_assume!(g.rank() == g.num_qubits());
        let s = stabilizer_state(&g, DEFAULT_DENSE_CAP).unwrap();
        for w in g.generators() {
            let sign = w.phase().sign().unwrap();
            prop_assert!(s.eigen_residual(&w.unsigned(), sign) < 1e-10);
        }
    }

    #[test]
    fn bell_decomposition_round_trip(
        amps in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
        perm in Just(()).prop_perturb(|_, mut rng| {
            let mut q = vec![0usize, 1, 2, 3];
            for i in (1..4).rev() {
                let j = (rng.next_u32() as usize) % (i + 1);
                q.swap(i, j);
            }
            q
        })
    ) {
        let amps: Vec<Complex64> = amps.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        prop_assume!(amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-3);
        let s = DenseState::from_amplitudes(4, amps).unwrap();
        let pairing = Pairing::new(4, vec![(perm[0], perm[1]), (perm[2], perm[3])]).unwrap();
        let d = bell_decompose(&s, &pairing).unwrap();
        let total: f64 = d.coefficients.values().map(|c| c.norm_sqr()).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        prop_assert!(d.reconstruct().unwrap().approx_eq(&s, 1e-10));
    }

    #[test]
    fn measurement_probabilities_sum_to_one(
        amps in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 8),
        q in 0usize..3,
    ) {
        let amps: Vec<Complex64> = amps.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        prop_assume!(amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-3);
        let s = DenseState::from_amplitudes(3, amps).unwrap();
        let p0 = measure_computational(&s, &[q], &[false]).unwrap().probability;
        let p1 = measure_computational(&s, &[q], &[true]).unwrap().probability;
        prop_assert!((p0 + p1 - 1.0).abs() < 1e-10);
    }
}

#[test]
fn square_table_invariants() {
    let sys = square_system().unwrap();
    let pool = projectors_of(&sys).unwrap();
    let table = enumerate_bases(&pool, DEFAULT_BASIS_CAP).unwrap();
    let dim = pool.dimension();
    for b in &table.bases {
        assert_eq!(b.projectors.iter().map(|&p| pool.projectors[p].rank).sum::<u64>(), dim);
    }
    let pure: Vec<&Vec<usize>> = table
        .bases
        .iter()
        .filter(|b| b.kind == BasisKind::Pure)
        .map(|b| &b.projectors)
        .collect();
    assert_eq!(pure, pool.families.iter().collect::<Vec<_>>());
    let census = enumerate_parity_proofs(&table, 30).unwrap();
    let mut symbol_total = 0;
    let mut classes: BTreeMap<String, u64> = BTreeMap::new();
    for (i, p) in census.proofs.iter().enumerate() {
        assert!(is_parity_proof(p, &table));
        assert!(is_critical(p, &table));
        let s = proof_symbol(p, &table);
        let weighted: u64 = s.projector_classes.iter().map(|(&(r, m), &c)| r * m as u64 * c as u64).sum();
        assert_eq!(weighted, p.len() as u64 * dim);
        *classes.entry(s.utf8()).or_insert(0) += 1;
        // Direct deletion on a sample: no proper sub-collection obtained by
        // dropping one or two bases is still a proof.
        if i % 37 == 0 {
            for a in 0..p.len() {
                for b in a..p.len() {
                    let rest: Vec<usize> = p
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != a && j != b)
                        .map(|(_, &x)| x)
                        .collect();
                    assert!(!is_parity_proof(&rest, &table));
                }
            }
        }
        symbol_total += 1;
    }
    assert_eq!(symbol_total, census.total);
    assert_eq!(census.types.iter().map(|t| t.count).sum::<u64>(), census.total);
    assert_eq!(classes.len(), census.types.len());
}
