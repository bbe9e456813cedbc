//! Browser bindings. Every function takes and returns JSON text so the page
//! needs no glue beyond `JSON.parse`.

use wasm_bindgen::prelude::*;

pub mod api {
    use serde_json::{json, Value};

    use ksproof::ks::{
        build_star_table, builtin_fixtures, ghz_infeasible, is_genuinely_multipartite, signature_for, verify_system,
        ContextSystem, MULTIPARTITE_DEFAULT_CAP,
    };
    use ksproof::parity::{check_two_power_h, enumerate_bases, enumerate_parity_proofs, projectors_of, BasisKind};
    use ksproof::states::{bell_decompose, joint_eigenstate, measure_computational, BellDecomposition, Pairing};

    /// Browser tabs stay responsive below these.
    const DENSE_CAP: usize = 10;
    const BASIS_CAP: u64 = 2_000_000;
    const KERNEL_CAP: usize = 20;

    fn err(e: impl std::fmt::Display) -> String {
        e.to_string()
    }

    fn parse(system: &str) -> Result<ContextSystem, String> {
        ContextSystem::from_json(system).map_err(err)
    }

    /// Built-in system by name, or `star-N` for the 2N-qubit table.
    pub fn system(name: &str) -> Result<String, String> {
        if let Some(half) = name.strip_prefix("star-") {
            let half: usize = half.parse().map_err(err)?;
            return Ok(build_star_table(half).map_err(err)?.to_json());
        }
        builtin_fixtures()
            .get(name)
            .map(ContextSystem::to_json)
            .ok_or_else(|| format!("no system named {name:?}"))
    }

    /// Validity, GHZ infeasibility and multipartiteness of a system.
    pub fn check(system: &str) -> Result<String, String> {
        let sys = parse(system)?;
        let report = verify_system(&sys);
        let mut out = json!({
            "n": sys.num_qubits(),
            "rows": sys.observables().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "valid": report.is_valid(),
            "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        });
        if report.is_valid() && sys.is_single_context() {
            let ghz = ghz_infeasible(&sys, &signature_for(&sys)).map_err(err)?;
            out["ghz_infeasible"] = json!(ghz.infeasible);
            let mp = is_genuinely_multipartite(sys.observables(), MULTIPARTITE_DEFAULT_CAP).map_err(err)?;
            out["genuine"] = json!(mp.genuine);
        }
        Ok(out.to_string())
    }

    /// Measure `qubits` (1-based) of the joint eigenstate with `outcome` bits and
    /// return the probability plus the residual's Bell terms.
    pub fn measure(system: &str, qubits: &str, outcome: &str) -> Result<String, String> {
        let sys = parse(system)?;
        let state = joint_eigenstate(&sys, &signature_for(&sys), DENSE_CAP).map_err(err)?;
        let qubits: Vec<usize> = if qubits.trim().is_empty() {
            Vec::new()
        } else {
            qubits
                .split(',')
                .map(|q| match q.trim().parse::<usize>() {
                    Ok(q) if q >= 1 => Ok(q - 1),
                    _ => Err(format!("bad qubit {q:?}")),
                })
                .collect::<Result<_, _>>()?
        };
        let bits: Vec<bool> = outcome.trim().chars().map(|c| c == '1').collect();
        let m = measure_computational(&state, &qubits, &bits).map_err(err)?;
        let terms = match &m.residual {
            Some(r) if r.num_qubits() % 2 == 0 && r.num_qubits() > 0 => {
                let d = bell_decompose(r, &Pairing::adjacent(r.num_qubits()).map_err(err)?).map_err(err)?;
                d.nonzero(1e-10)
                    .into_iter()
                    .map(|(labels, c)| json!({ "term": BellDecomposition::term_name(labels, false), "re": c.re, "im": c.im }))
                    .collect()
            }
            _ => Vec::new(),
        };
        Ok(json!({ "probability": m.probability, "terms": terms }).to_string())
    }

    /// Projectors, bases and the critical parity-proof census.
    pub fn census(system: &str) -> Result<String, String> {
        let sys = parse(system)?;
        let pool = projectors_of(&sys).map_err(err)?;
        let table = enumerate_bases(&pool, BASIS_CAP).map_err(err)?;
        if table.partial {
            return Err("too many bases for the browser".into());
        }
        let c = enumerate_parity_proofs(&table, KERNEL_CAP).map_err(err)?;
        if c.partial {
            return Err(format!("kernel dimension {} is too large for the browser", c.kernel_dimension));
        }
        let h = check_two_power_h(&table, &c);
        let types: Vec<Value> = c.types.iter().map(|t| json!({ "symbol": t.symbol, "count": t.count })).collect();
        Ok(json!({
            "projectors": pool.len(),
            "pure": table.count(BasisKind::Pure),
            "hybrid": table.count(BasisKind::Hybrid),
            "total": c.total,
            "H": h.h,
            "two_power_H_holds": h.holds,
            "types": types,
        })
        .to_string())
    }
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn system(name: &str) -> Result<String, JsError> {
    js(api::system(name))
}

#[wasm_bindgen]
pub fn check(system: &str) -> Result<String, JsError> {
    js(api::check(system))
}

#[wasm_bindgen]
pub fn measure(system: &str, qubits: &str, outcome: &str) -> Result<String, JsError> {
    js(api::measure(system, qubits, outcome))
}

#[wasm_bindgen]
pub fn census(system: &str) -> Result<String, JsError> {
    js(api::census(system))
}
