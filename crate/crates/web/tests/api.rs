use ksproof_web::api;
use serde_json::Value;

const SQUARE: &str = r#"{"n":2,"observables":["XI","IX","XX","IZ","ZI","ZZ","XZ","ZX","YY"],
"contexts":[{"members":[0,1,2],"sign":1},{"members":[3,4,5],"sign":1},{"members":[6,7,8],"sign":1},
{"members":[0,3,6],"sign":1},{"members":[1,4,7],"sign":1},{"members":[2,5,8],"sign":-1}]}"#;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn star_check() {
    let sys = api::system("star-2").unwrap();
    let v = parse(api::check(&sys).unwrap());
    assert_eq!(v["valid"], true);
    assert_eq!(v["ghz_infeasible"], true);
    assert_eq!(v["genuine"], true);
}

#[test]
fn measuring_four_qubits_leaves_bell_pair() {
    let sys = api::system("table1-left").unwrap();
    let v = parse(api::measure(&sys, "1,2", "00").unwrap());
    assert!((v["probability"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
}

#[test]
fn square_census() {
    let v = parse(api::census(SQUARE).unwrap());
    assert_eq!(v["total"], 512);
    assert_eq!(v["H"], 9);
    assert_eq!(v["two_power_H_holds"], true);
}

#[test]
fn errors_are_messages() {
    assert!(api::system("nope").is_err());
    assert!(api::check("{").is_err());
}
