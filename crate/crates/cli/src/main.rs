mod config;
mod manifest;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ksproof::ks::{
    build_star_table, builtin_fixtures, ghz_infeasible, gf2_infeasible, is_genuinely_multipartite,
    lift_to_single_qubit, parity_witness, signature_for, verify_system, ContextSystem, MULTIPARTITE_DEFAULT_CAP,
};
use ksproof::parity::{
    brute_force_proofs, check_two_power_h, enumerate_bases, enumerate_parity_proofs, is_critical, is_parity_proof,
    is_saturated, projectors_of, proof_symbol, BasisTable, DEFAULT_BASIS_CAP, DEFAULT_KERNEL_CAP,
};
use ksproof::reproduce::{self, Status};
use ksproof::search::search_completions;
use ksproof::states::{
    bell_decompose, classify_residual, joint_eigenstate, measure_computational, DenseState,
    BellLabel, Pairing, DEFAULT_DENSE_CAP,
};
use ksproof::Error;

use config::Config;
use manifest::RunManifest;

#[derive(Parser)]
#[command(name = "ksproof", version, about = "Kochen-Specker proofs and GHZ paradoxes from the Pauli group")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// File of `key = value` caps: dense_cap, basis_cap, kernel_cap, workers.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Largest qubit count for dense state vectors.
    #[arg(long, global = true)]
    dense_cap: Option<usize>,
    /// Node budget for basis enumeration.
    #[arg(long, global = true)]
    basis_cap: Option<u64>,
    /// Largest kernel dimension walked by the parity census.
    #[arg(long, global = true)]
    kernel_cap: Option<usize>,
    /// Write the result here (plus a `.manifest.json` side file) instead of stdout.
    #[arg(long, short, global = true)]
    out: Option<PathBuf>,
    /// ASCII instead of UTF-8 symbols.
    #[arg(long, global = true)]
    ascii: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a system file.
    #[command(subcommand)]
    Gen(Gen),
    /// Check commutation and product signs of every context.
    Verify { system: PathBuf },
    /// Test whether single-qubit values can reproduce the row eigenvalues.
    GhzCheck {
        system: PathBuf,
        /// Comma-separated ±1 per row, e.g. `+,+,+,+,-` (default: last row -1 if the product is -I).
        #[arg(long, allow_hyphen_values = true)]
        eigenvalues: Option<String>,
    },
    /// Check that no proper sub-table is itself a proof.
    Multipartite {
        system: PathBuf,
        /// Work cap in column subsets times row subsets.
        #[arg(long, default_value_t = MULTIPARTITE_DEFAULT_CAP)]
        cap: u64,
    },
    /// Joint eigenstate amplitudes.
    State(StateArgs),
    /// Joint eigenstate in a product Bell basis.
    Bell {
        #[command(flatten)]
        state: StateArgs,
        /// Qubit pairs, e.g. `12,34` or `1-3,2-4` (default: adjacent pairs).
        #[arg(long)]
        pairing: Option<String>,
    },
    /// Measure some qubits of the joint eigenstate in the computational basis.
    Measure {
        #[command(flatten)]
        state: StateArgs,
        /// 1-based qubits, e.g. `1,3`.
        #[arg(long)]
        qubits: String,
        /// One bit per measured qubit, e.g. `01`.
        #[arg(long)]
        outcome: String,
        /// Pairing for the residual's Bell decomposition.
        #[arg(long)]
        pairing: Option<String>,
    },
    /// Eigenspace projectors of every context.
    Projectors { system: PathBuf },
    /// Pure and hybrid bases over the projectors.
    Bases { system: PathBuf },
    /// All critical parity proofs with symbol counts.
    ParityCensus {
        system: PathBuf,
        /// Compare against brute-force subset enumeration on a window of 20 bases.
        #[arg(long)]
        brute_force_check: bool,
        /// Write one JSON line per proof to this file.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Symbol of a proof given as `{"bases": [...]}`, with `"system"` inline or `--system`.
    Symbol {
        proof: PathBuf,
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// DOT graph of observables and contexts; negative contexts drawn bold.
    ExportGraph { system: PathBuf },
    /// Run every reference check and print a pass/fail table.
    ReproducePaper {
        /// Skip items above this many qubits; 10 enables the stretch case.
        #[arg(long, default_value_t = 8)]
        max_qubits: usize,
        /// Random cases per qubit count in the oracle suite.
        #[arg(long, default_value_t = 10_000)]
        oracle_cases: usize,
        /// Directory of fixture files to check against the built-in copies.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// The 2N-qubit table with 2N+1 rows.
    Star {
        #[arg(long = "N", short = 'N')]
        half: usize,
    },
    /// A built-in fixture by name.
    Fixture {
        /// table1-left, table2-left, table2-right or kite-quadruples.
        name: String,
    },
    /// Add a context per observable holding it and its single-qubit factors.
    Lift { system: PathBuf },
    /// Complete a seed by new contexts until every observable has even incidence.
    Complete {
        seed: PathBuf,
        /// Context sizes, e.g. `3,3,3,3`.
        #[arg(long)]
        shape: String,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
}

#[derive(Args)]
struct StateArgs {
    system: PathBuf,
    /// Comma-separated ±1 per row (default: last row -1 if the product is -I).
    #[arg(long, allow_hyphen_values = true)]
    eigenvalues: Option<String>,
}

/// Failure with its exit code: 1 verification, 2 usage or input, 3 cap.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DenseCapExceeded { .. } | Error::ResourceCap(_) => 3,
            Error::Inconsistent(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Rendered output plus whether it reports a failed check.
struct Outcome {
    text: String,
    failed: Option<String>,
    inputs: Vec<PathBuf>,
    extra_outputs: Vec<PathBuf>,
}

impl Outcome {
    fn ok(text: String, inputs: Vec<PathBuf>) -> Self {
        Outcome {
            text,
            failed: None,
            inputs,
            extra_outputs: Vec::new(),
        }
    }
}

struct Caps {
    dense: usize,
    basis: u64,
    kernel: usize,
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn read_system(path: &Path) -> Result<ContextSystem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    ContextSystem::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_eigenvalues(text: &str) -> Result<Vec<i8>, Failure> {
    text.split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" | "\u{2212}" | "\u{2212}1" => Ok(-1),
            other => Err(Failure::usage(format!("eigenvalue {other:?} is not ±1"))),
        })
        .collect()
}

fn eigenvalues_for(sys: &ContextSystem, given: &Option<String>) -> Result<Vec<i8>, Failure> {
    match given {
        Some(t) => parse_eigenvalues(t),
        None => Ok(signature_for(sys)),
    }
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("bad {what} {t:?}"))))
        .collect()
}

fn load_state(args: &StateArgs, caps: &Caps) -> Result<(ContextSystem, DenseState), Failure> {
    let sys = read_system(&args.system)?;
    let eig = eigenvalues_for(&sys, &args.eigenvalues)?;
    let state = joint_eigenstate(&sys, &eig, caps.dense)?;
    Ok((sys, state))
}

fn pairing_for(n: usize, text: &Option<String>) -> Result<Pairing, Failure> {
    Ok(match text {
        Some(t) => Pairing::parse(n, t)?,
        None => Pairing::adjacent(n)?,
    })
}

fn bits_string(n: usize, idx: usize) -> String {
    (0..n).map(|q| if idx >> (n - 1 - q) & 1 == 1 { '1' } else { '0' }).collect()
}

fn state_json(state: &DenseState) -> Value {
    let n = state.num_qubits();
    let amps: Vec<Value> = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 1e-12)
        .map(|(i, a)| json!({ "basis": bits_string(n, i), "amplitude": [a.re, a.im] }))
        .collect();
    json!({ "n": n, "amplitudes": amps })
}

fn bell_json(state: &DenseState, pairing: &Pairing, ascii: bool) -> Result<Value, Failure> {
    let d = bell_decompose(state, pairing)?;
    let terms: Vec<Value> = d
        .nonzero(1e-10)
        .into_iter()
        .map(|(labels, c)| {
            json!({
                "term": ksproof::states::BellDecomposition::term_name(labels, ascii),
                "coefficient": [c.re, c.im],
            })
        })
        .collect();
    let pairs: Vec<[usize; 2]> = pairing.pairs().iter().map(|&(a, b)| [a + 1, b + 1]).collect();
    Ok(json!({ "pairing": pairs, "terms": terms }))
}

/// Reference for an m-qubit residual: a Bell pair, or the star-table eigenstate on m qubits.
fn reference_for(m: usize, cap: usize) -> Result<Option<DenseState>, Failure> {
    if m == 2 {
        return Ok(Some(DenseState::bell(BellLabel::PhiPlus)));
    }
    if m < 4 || m % 2 == 1 || m > cap {
        return Ok(None);
    }
    let sys = build_star_table(m / 2)?;
    Ok(Some(joint_eigenstate(&sys, &signature_for(&sys), cap)?))
}

fn table_for(sys: &ContextSystem, caps: &Caps) -> Result<BasisTable, Failure> {
    let pool = projectors_of(sys)?;
    let table = enumerate_bases(&pool, caps.basis)?;
    if table.partial {
        return Err(Failure {
            code: 3,
            message: format!("basis enumeration stopped at the cap of {} nodes", caps.basis),
        });
    }
    Ok(table)
}

fn cmd_gen(gen: &Gen) -> CmdResult {
    let (sys, inputs) = match gen {
        Gen::Star { half } => (build_star_table(*half)?, vec![]),
        Gen::Fixture { name } => (
            builtin_fixtures()
                .get(name.as_str())
                .cloned()
                .ok_or_else(|| Failure::usage(format!("no fixture named {name:?}")))?,
            vec![],
        ),
        Gen::Lift { system } => (lift_to_single_qubit(&read_system(system)?)?, vec![system.clone()]),
        Gen::Complete { seed, shape, budget } => {
            let shape = parse_list(shape, "context size")?;
            let out = search_completions(&read_system(seed)?, &shape, *budget)?;
            let systems: Vec<Value> = out
                .systems
                .iter()
                .map(|s| serde_json::to_value(s).expect("serializable"))
                .collect();
            let text = pretty(&json!({ "nodes": out.nodes, "partial": out.partial, "systems": systems }));
            let mut outcome = Outcome::ok(text, vec![seed.clone()]);
            if out.partial {
                outcome.failed = Some(format!("search budget of {budget} nodes exhausted"));
            }
            return Ok(outcome);
        }
    };
    Ok(Outcome::ok(pretty(&sys), inputs))
}

fn cmd_verify(path: &Path) -> CmdResult {
    let sys = read_system(path)?;
    let report = verify_system(&sys);
    let valid = report.is_valid();
    let text = pretty(&json!({
        "valid": valid,
        "parity_witness": parity_witness(&sys),
        "gf2_infeasible": valid && gf2_infeasible(&sys),
        "report": report,
    }));
    let mut o = Outcome::ok(text, vec![path.to_path_buf()]);
    if !valid {
        o.failed = Some(report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "));
    }
    Ok(o)
}

fn cmd_ghz(path: &Path, eigenvalues: &Option<String>) -> CmdResult {
    let sys = read_system(path)?;
    let eig = eigenvalues_for(&sys, eigenvalues)?;
    let report = ghz_infeasible(&sys, &eig)?;
    let mut o = Outcome::ok(pretty(&report), vec![path.to_path_buf()]);
    if !report.infeasible {
        o.failed = Some("a single-qubit assignment reproduces every eigenvalue".into());
    }
    Ok(o)
}

fn cmd_multipartite(path: &Path, cap: u64) -> CmdResult {
    let sys = read_system(path)?;
    let report = is_genuinely_multipartite(sys.observables(), cap)?;
    let mut o = Outcome::ok(pretty(&report), vec![path.to_path_buf()]);
    if !report.genuine {
        o.failed = Some(match &report.witness {
            Some((rows, cols)) => format!("sub-table rows {rows:?} on qubits {cols:?} is already a proof"),
            None => "the table is not a proof".into(),
        });
    }
    Ok(o)
}

fn cmd_measure(
    args: &StateArgs,
    qubits: &str,
    outcome: &str,
    pairing: &Option<String>,
    caps: &Caps,
    ascii: bool,
) -> CmdResult {
    let (_, state) = load_state(args, caps)?;
    let qubits: Vec<usize> = parse_list(qubits, "qubit")?
        .into_iter()
        .map(|q| q.checked_sub(1).ok_or_else(|| Failure::usage("qubits are 1-based")))
        .collect::<Result<_, _>>()?;
    let bits: Vec<bool> = outcome
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(Failure::usage(format!("outcome digit {c:?} is not 0 or 1"))),
        })
        .collect::<Result<_, _>>()?;
    let m = measure_computational(&state, &qubits, &bits)?;
    let residual = match &m.residual {
        None => Value::Null,
        Some(r) => {
            let mut v = json!({ "state": state_json(r) });
            if r.num_qubits() % 2 == 0 && r.num_qubits() > 0 {
                let p = pairing_for(r.num_qubits(), pairing)?;
                v["bell"] = bell_json(r, &p, ascii)?;
            }
            if let Some(reference) = reference_for(r.num_qubits(), caps.dense)? {
                v["verdict"] = json!(classify_residual(r, &reference).to_string());
            }
            v
        }
    };
    let text = pretty(&json!({ "probability": m.probability, "residual": residual }));
    Ok(Outcome::ok(text, vec![args.system.clone()]))
}

fn cmd_projectors(path: &Path) -> CmdResult {
    let sys = read_system(path)?;
    let pool = projectors_of(&sys)?;
    let mut context_of = vec![Vec::new(); pool.len()];
    for (ci, fam) in pool.families.iter().enumerate() {
        for &p in fam {
            context_of[p].push(ci);
        }
    }
    let list: Vec<Value> = pool
        .projectors
        .iter()
        .enumerate()
        .map(|(i, p)| json!({ "id": i, "group": p.id(), "rank": p.rank, "contexts": context_of[i] }))
        .collect();
    let text = pretty(&json!({
        "n": pool.n,
        "count": pool.len(),
        "ranks": pool.rank_histogram().into_iter().map(|(r, c)| (r.to_string(), c)).collect::<std::collections::BTreeMap<_, _>>(),
        "projectors": list,
    }));
    Ok(Outcome::ok(text, vec![path.to_path_buf()]))
}

fn cmd_bases(path: &Path, caps: &Caps) -> CmdResult {
    let sys = read_system(path)?;
    let table = table_for(&sys, caps)?;
    let bases: Vec<Value> = table
        .bases
        .iter()
        .enumerate()
        .map(|(i, b)| json!({ "id": i, "kind": b.kind, "projectors": b.projectors }))
        .collect();
    let text = pretty(&json!({
        "projectors": table.pool.len(),
        "bases": bases.len(),
        "pure": table.count(ksproof::parity::BasisKind::Pure),
        "hybrid": table.count(ksproof::parity::BasisKind::Hybrid),
        "saturated": is_saturated(&table),
        "table": bases,
    }));
    Ok(Outcome::ok(text, vec![path.to_path_buf()]))
}

fn cmd_census(path: &Path, brute: bool, catalog: &Option<PathBuf>, caps: &Caps, ascii: bool) -> CmdResult {
    let sys = read_system(path)?;
    let table = table_for(&sys, caps)?;
    let census = enumerate_parity_proofs(&table, caps.kernel)?;
    if census.partial {
        return Err(Failure {
            code: 3,
            message: format!(
                "kernel dimension {} exceeds the cap of {}",
                census.kernel_dimension, caps.kernel
            ),
        });
    }
    let report = check_two_power_h(&table, &census);
    let types: Vec<Value> = census
        .types
        .iter()
        .map(|t| {
            json!({
                "symbol": if ascii { &t.ascii } else { &t.symbol },
                "projectors": t.projectors,
                "bases": t.bases,
                "count": t.count,
            })
        })
        .collect();
    let mut summary = json!({
        "projectors": table.pool.len(),
        "bases": table.bases.len(),
        "hybrid": report.hybrid_bases,
        "kernel_dimension": census.kernel_dimension,
        "total": census.total,
        "types": types,
        "by_basis_count": census.by_basis_count.iter().map(|(k, v)| (k.to_string(), *v)).collect::<std::collections::BTreeMap<_, _>>(),
        "H": report.h,
        "two_power_H_holds": report.holds,
    });
    let mut failed = None;
    if brute {
        let window: Vec<usize> = (0..table.bases.len().min(reproduce::BRUTE_FORCE_WINDOW)).collect();
        let brute_proofs = brute_force_proofs(&table, &window)?;
        let (agrees, _) = reproduce::window_agrees(&table, &census, &window)?;
        summary["brute_force_check"] = json!({ "window": window.len(), "proofs": brute_proofs.len(), "agrees": agrees });
        if !agrees {
            failed = Some("kernel and brute-force enumeration disagree".to_string());
        }
    }
    let mut extra = Vec::new();
    if let Some(cat) = catalog {
        let mut lines = String::new();
        for p in &census.proofs {
            let s = proof_symbol(p, &table);
            let line = json!({ "bases": p, "symbol": if ascii { s.ascii() } else { s.utf8() }, "critical": true });
            writeln!(lines, "{line}").expect("write to string");
        }
        std::fs::write(cat, lines).map_err(|e| Failure::usage(format!("{}: {e}", cat.display())))?;
        extra.push(cat.clone());
    }
    Ok(Outcome {
        text: pretty(&summary),
        failed,
        inputs: vec![path.to_path_buf()],
        extra_outputs: extra,
    })
}

fn cmd_symbol(proof_path: &Path, system: &Option<PathBuf>, caps: &Caps, ascii: bool) -> CmdResult {
    let text = std::fs::read_to_string(proof_path).map_err(|e| Failure::usage(format!("{}: {e}", proof_path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", proof_path.display())))?;
    let bases: Vec<usize> = serde_json::from_value(v["bases"].clone())
        .map_err(|_| Failure::usage(format!("{}: missing \"bases\" list", proof_path.display())))?;
    let mut inputs = vec![proof_path.to_path_buf()];
    let sys = match (system, v.get("system")) {
        (Some(p), _) => {
            inputs.push(p.clone());
            read_system(p)?
        }
        (None, Some(s)) => serde_json::from_value(s.clone()).map_err(|e| Failure::usage(format!("embedded system: {e}")))?,
        (None, None) => return Err(Failure::usage("no system: embed \"system\" or pass --system")),
    };
    let table = table_for(&sys, caps)?;
    if let Some(&b) = bases.iter().find(|&&b| b >= table.bases.len()) {
        return Err(Failure::usage(format!("basis {b} out of range ({} bases)", table.bases.len())));
    }
    let s = proof_symbol(&bases, &table);
    let proof = is_parity_proof(&bases, &table);
    let critical = proof && is_critical(&bases, &table);
    let mut o = Outcome::ok(
        pretty(&json!({
            "symbol": if ascii { s.ascii() } else { s.utf8() },
            "short": s.short(),
            "parity_proof": proof,
            "critical": critical,
        })),
        inputs,
    );
    if !proof {
        o.failed = Some("the bases do not form a parity proof".into());
    }
    Ok(o)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn cmd_export_graph(path: &Path) -> CmdResult {
    let sys = read_system(path)?;
    if sys.contexts().is_empty() {
        return Err(Failure::usage("no contexts"));
    }
    let mut out = String::from("graph contexts {\n  node [shape=circle];\n");
    for (i, o) in sys.observables().iter().enumerate() {
        writeln!(out, "  o{i} [label=\"{}\"];", dot_escape(&o.to_string())).expect("write to string");
    }
    for (ci, c) in sys.contexts().iter().enumerate() {
        let style = if c.sign < 0 { "bold" } else { "solid" };
        let width = if c.sign < 0 { 3 } else { 1 };
        writeln!(
            out,
            "  subgraph c{ci} {{\n    edge [style={style}, penwidth={width}, label=\"{}\"];",
            if c.sign < 0 { "-I" } else { "+I" }
        )
        .expect("write to string");
        for (i, &a) in c.members.iter().enumerate() {
            for &b in &c.members[i + 1..] {
                writeln!(out, "    o{a} -- o{b};").expect("write to string");
            }
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    Ok(Outcome::ok(out, vec![path.to_path_buf()]))
}

fn check_fixtures(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut found = Vec::new();
    for (name, builtin) in builtin_fixtures() {
        let path = dir.join(format!("{name}.json"));
        if !path.exists() {
            continue;
        }
        let integrity = |why: String| Failure::verification(format!("integrity error: {}: {why}", path.display()));
        let text = std::fs::read_to_string(&path).map_err(|e| integrity(e.to_string()))?;
        let sys = ContextSystem::from_json(&text).map_err(|e| integrity(e.to_string()))?;
        if sys != builtin {
            return Err(integrity("differs from the built-in fixture".into()));
        }
        found.push(path);
    }
    Ok(found)
}

fn cmd_reproduce(max_qubits: usize, oracle_cases: usize, fixtures: &Option<PathBuf>, caps: &Caps) -> CmdResult {
    let inputs = match fixtures {
        Some(dir) => check_fixtures(dir)?,
        None => Vec::new(),
    };
    let opts = reproduce::Options {
        max_qubits,
        oracle_cases,
        kernel_cap: caps.kernel,
        basis_cap: caps.basis,
        ..reproduce::Options::default()
    };
    let mut text = String::new();
    let mut failures = Vec::new();
    for id in 1..=reproduce::TITLES.len() {
        let r = reproduce::run(id, &opts);
        writeln!(text, "{r}").expect("write to string");
        if r.status == Status::Fail {
            failures.push(format!("[{id}] {}", r.title));
        }
    }
    let mut o = Outcome::ok(text, inputs);
    if !failures.is_empty() {
        o.failed = Some(format!("failed checks: {}", failures.join(", ")));
    }
    Ok(o)
}

fn dispatch(cli: &Cli, caps: &Caps) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(gen) => cmd_gen(gen),
        Command::Verify { system } => cmd_verify(system),
        Command::GhzCheck { system, eigenvalues } => cmd_ghz(system, eigenvalues),
        Command::Multipartite { system, cap } => cmd_multipartite(system, *cap),
        Command::State(args) => {
            let (_, state) = load_state(args, caps)?;
            Ok(Outcome::ok(pretty(&state_json(&state)), vec![args.system.clone()]))
        }
        Command::Bell { state, pairing } => {
            let (_, s) = load_state(state, caps)?;
            let p = pairing_for(s.num_qubits(), pairing)?;
            Ok(Outcome::ok(pretty(&bell_json(&s, &p, g.ascii)?), vec![state.system.clone()]))
        }
        Command::Measure {
            state,
            qubits,
            outcome,
            pairing,
        } => cmd_measure(state, qubits, outcome, pairing, caps, g.ascii),
        Command::Projectors { system } => cmd_projectors(system),
        Command::Bases { system } => cmd_bases(system, caps),
        Command::ParityCensus {
            system,
            brute_force_check,
            catalog,
        } => cmd_census(system, *brute_force_check, catalog, caps, g.ascii),
        Command::Symbol { proof, system } => cmd_symbol(proof, system, caps, g.ascii),
        Command::ExportGraph { system } => cmd_export_graph(system),
        Command::ReproducePaper {
            max_qubits,
            oracle_cases,
            fixtures,
        } => cmd_reproduce(*max_qubits, *oracle_cases, fixtures, caps),
    }
}

fn run(cli: Cli) -> Result<Option<String>, Failure> {
    let start = Instant::now();
    let g = &cli.global;
    let config = match &g.config {
        Some(p) => Config::load(p).map_err(Failure::usage)?,
        None => Config::default(),
    };
    if let Some(w) = g.workers.or(config.workers) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let caps = Caps {
        dense: g.dense_cap.or(config.dense_cap).unwrap_or(DEFAULT_DENSE_CAP),
        basis: g.basis_cap.or(config.basis_cap).unwrap_or(DEFAULT_BASIS_CAP),
        kernel: g.kernel_cap.or(config.kernel_cap).unwrap_or(DEFAULT_KERNEL_CAP),
    };
    let outcome = dispatch(&cli, &caps)?;
    match &g.out {
        Some(path) => {
            std::fs::write(path, &outcome.text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            let mut inputs = outcome.inputs.clone();
            inputs.extend(g.config.clone());
            let mut outputs = vec![path.clone()];
            outputs.extend(outcome.extra_outputs.iter().cloned());
            RunManifest::new(&inputs, &outputs, start.elapsed().as_secs_f64())
                .and_then(|m| m.write(&RunManifest::path_for(path)))
                .map_err(|e| Failure::usage(format!("manifest: {e}")))?;
        }
        None => print!("{}", outcome.text),
    }
    Ok(outcome.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(why)) => {
            eprintln!("ksproof: {why}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("ksproof: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
