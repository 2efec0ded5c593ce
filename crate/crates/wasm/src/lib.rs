//! Browser bindings: demos, fixpoint chains and suite groups, as JSON strings.

use predictable::demo::{self, DemoParams, DEMOS};
use predictable::effects::{dfirst_chain_left, dfirst_chain_right, dlast_chain_left, dlast_chain_right, DFirst, DLast};
use predictable::eval::{observe_counted, ObsBudget};
use predictable::suite::{run_suite, Group, SuiteConfig};
use serde_json::json;
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub fn demos() -> String {
    let list: Vec<_> =
        DEMOS.iter().map(|d| json!({ "name": d.name, "about": d.about, "expects": d.expects.label() })).collect();
    serde_json::Value::from(list).to_string()
}

/// Runs a demo; the JSON carries the text rendering and exit code as well.
#[wasm_bindgen]
pub fn run_demo(name: &str, depth: usize, fuel: u64, env: i64, s0: i64) -> String {
    let params = DemoParams { depth, fuel, seed: 0, env, s0 };
    match demo::run_demo(name, &params) {
        Ok(r) => {
            let mut v: serde_json::Value = serde_json::from_str(&r.json()).expect("demo json");
            v["text"] = r.text().into();
            v["exit_code"] = r.exit_code().into();
            v.to_string()
        }
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Observes `x <> (x <> ...)` or `(... <> x) <> x` for `x = Just 1` in
/// `DFirst` or `DLast`.
#[wasm_bindgen]
pub fn chain(monoid: &str, nesting: &str, fuel: u64) -> String {
    let b = ObsBudget::new(1, fuel);
    let (o, used) = match (monoid, nesting) {
        ("dfirst", "right") => observe_counted(&dfirst_chain_right(DFirst::just(1i64)), b),
        ("dfirst", "left") => observe_counted(&dfirst_chain_left(DFirst::just(1i64)), b),
        ("dlast", "right") => observe_counted(&dlast_chain_right(DLast::just(1i64)), b),
        ("dlast", "left") => observe_counted(&dlast_chain_left(DLast::just(1i64)), b),
        _ => return json!({ "error": format!("unknown chain {monoid}/{nesting}") }).to_string(),
    };
    json!({ "observation": o.to_string(), "fuel_used": used }).to_string()
}

/// One suite group as a JSON array of items.
#[wasm_bindgen]
pub fn suite(group: &str, seed: u64) -> String {
    match Group::parse(group) {
        Some(g) => {
            let items: Vec<serde_json::Value> = run_suite(&g, &SuiteConfig::new(seed))
                .iter()
                .map(|i| {
                    let mut v: serde_json::Value = serde_json::from_str(&i.json()).expect("item json");
                    v["ok"] = i.ok().into();
                    v
                })
                .collect();
            serde_json::Value::from(items).to_string()
        }
        None => json!({ "error": format!("unknown group `{group}`") }).to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_return_json() {
        let v: serde_json::Value = serde_json::from_str(&run_demo("reader-repeat", 3, 100, 4, 0)).unwrap();
        assert_eq!(v["elements"], json!([4, 4, 4]));
        assert_eq!(v["exit_code"], 0);
        let v: serde_json::Value = serde_json::from_str(&chain("dfirst", "left", 50)).unwrap();
        assert_eq!(v["observation"], "⊥");
        let v: serde_json::Value = serde_json::from_str(&chain("dfirst", "right", 50)).unwrap();
        assert_eq!(v["observation"], "Just 1");
        let v: serde_json::Value = serde_json::from_str(&suite("transpose", 1)).unwrap();
        assert!(v.as_array().unwrap().iter().all(|i| i["ok"] == true));
        assert!(serde_json::from_str::<serde_json::Value>(&demos()).unwrap().as_array().unwrap().len() >= 10);
    }
}
