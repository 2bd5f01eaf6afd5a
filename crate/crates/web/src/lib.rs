//! Browser bindings. Every export takes plain values and returns a JSON
//! string; failures come back as `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cosetposet::catalog::{default_catalog, resolve_group};
use cosetposet::complexes::{order_complex, poset_reduced_euler_characteristic, reduced_betti};
use cosetposet::coset_poset::build_coset_poset;
use cosetposet::genchecks::imprimitive_parity_identity;
use cosetposet::hallzeta::{
    as_integer, brute_force_generation_probability_with_budget, hall_polynomial, poset_moebius_hat,
};
use cosetposet::{GeneratedGroup, SubgroupLattice};

/// Largest group the page will build a coset poset for.
pub const BROWSER_ORDER_LIMIT: u64 = 168;

/// Tuple budget for the brute-force column in the browser.
pub const BROWSER_TUPLE_BUDGET: u64 = 200_000;

fn respond(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

fn group(spec: &str) -> Result<GeneratedGroup, String> {
    let g = resolve_group(spec.trim(), &default_catalog()).map_err(|e| e.to_string())?;
    match g.order_u64() {
        Some(o) if o <= BROWSER_ORDER_LIMIT => Ok(g),
        _ => Err(format!("order {} is above the browser limit {BROWSER_ORDER_LIMIT}", g.order())),
    }
}

/// Names, orders and degrees of the bundled groups small enough for the page.
#[wasm_bindgen]
pub fn catalog() -> String {
    let entries: Vec<Value> = default_catalog()
        .iter()
        .filter(|e| e.expected_order.to_string().parse::<u64>().is_ok_and(|o| o <= BROWSER_ORDER_LIMIT))
        .map(|e| json!({ "name": e.name, "order": e.expected_order.to_string(), "degree": e.degree }))
        .collect();
    Value::Array(entries).to_string()
}

/// Size, f-vector, reduced Euler characteristic and reduced Betti numbers of
/// the order complex of the coset poset.
#[wasm_bindgen]
pub fn coset_poset_summary(spec: &str, prime: u32) -> String {
    respond((|| {
        let g = group(spec)?;
        let lat = SubgroupLattice::enumerate(&g, BROWSER_ORDER_LIMIT).map_err(|e| e.to_string())?;
        let poset = build_coset_poset(&g, &lat).map_err(|e| e.to_string())?;
        let delta = order_complex(poset.poset());
        let betti = reduced_betti(&delta, prime as u64).map_err(|e| e.to_string())?;
        Ok(json!({
            "order": g.order().to_string(),
            "subgroups": lat.len(),
            "cosets": poset.len(),
            "f_vector": delta.f_vector(),
            "chi": poset_reduced_euler_characteristic(poset.poset()).to_string(),
            "moebius_hat": poset_moebius_hat(poset.poset()).to_string(),
            "prime": prime,
            "betti": betti.values(),
        }))
    })())
}

/// Hall's polynomial, its value at `k`, and the brute-force count when the
/// tuple space is small enough.
#[wasm_bindgen]
pub fn generation_probability(spec: &str, k: i32) -> String {
    respond((|| {
        let g = group(spec)?;
        let lat = SubgroupLattice::enumerate(&g, BROWSER_ORDER_LIMIT).map_err(|e| e.to_string())?;
        let mu = lat.moebius_to_top().map_err(|e| e.to_string())?;
        let poly = hall_polynomial(&g, &lat, &mu).map_err(|e| e.to_string())?;
        let value = poly.evaluate(k as i64);
        let brute = if k >= 1 {
            brute_force_generation_probability_with_budget(&g, k as u32, BROWSER_TUPLE_BUDGET)
                .ok()
                .map(|r| r.to_string())
        } else {
            None
        };
        Ok(json!({
            "polynomial": poly.to_string(),
            "k": k,
            "value": value.to_string(),
            "integer": as_integer(&value).map(|v| v.to_string()),
            "brute_force": brute,
        }))
    })())
}

/// `n!/(d!^ℓ ℓ!)` against the product of binomials, with its parity.
#[wasm_bindgen]
pub fn parity_identity(n: u32, d: u32) -> String {
    respond(
        imprimitive_parity_identity(n as u64, d as u64)
            .map(|id| {
                json!({
                    "n": id.n,
                    "d": id.d,
                    "factorial_side": id.factorial_side.to_string(),
                    "binomial_side": id.binomial_side.to_string(),
                    "holds": id.holds(),
                    "even": id.even,
                })
            })
            .map_err(|e| e.to_string()),
    )
}
