//! WebAssembly bindings for the static demo page. Every entry point returns a JSON string,
//! either a result object or `{"error": ...}`.

use cohchow::arithmetic::{dega, div_hat, hecke_height as height, hecke_height_by_decomposition, render};
use cohchow::deligne::DeligneComplex;
use cohchow::dolbeault::torus;
use cohchow::error::Error;
use cohchow::linalg::{fmt_q, parse_q};
use serde_json::{json, Value};
use std::sync::Arc;
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value, Error>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// Exact and numeric height of the Hecke correspondence, cross-checked against the
/// decomposition into a triple product and a Rohrlich–Jensen sum.
#[wasm_bindgen]
pub fn hecke_height(n: i32, k: i32, digits: u32) -> String {
    respond((|| {
        let (n, k) = (i64::from(n), i64::from(k));
        let h = height(n, k)?;
        let numeric = render(&h, digits as usize)?;
        let agrees = hecke_height_by_decomposition(n, k)? == h;
        Ok(json!({ "exact": h.to_string(), "numeric": numeric, "second_route_agrees": agrees }))
    })())
}

/// Chain and cohomology dimensions of the weight-`p` Deligne complex of the complex torus of
/// dimension `g ≤ 3`.
#[wasm_bindgen]
pub fn torus_deligne(g: u32, p: i32) -> String {
    respond((|| {
        if !(1..=3).contains(&g) || !(0..=8).contains(&p) {
            return Err(Error::input("need 1 ≤ g ≤ 3 and 0 ≤ p ≤ 8"));
        }
        let a = torus(g as usize);
        let d = DeligneComplex::new(Arc::new(a.space), p)?;
        let c = d.complex();
        let rows: Vec<Value> =
            (c.lo()..=c.hi()).map(|n| json!({ "degree": n, "chain_dim": c.dim(n), "dim": c.cohomology(n).dim() })).collect();
        Ok(json!({ "g": g, "weight": p, "degrees": rows }))
    })())
}

/// Principal arithmetic divisor of a nonzero rational and its arithmetic degree.
#[wasm_bindgen]
pub fn product_formula(x: &str) -> String {
    respond((|| {
        let q = parse_q(x.trim()).ok_or_else(|| Error::input(format!("not a rational `{x}`")))?;
        let d = div_hat(&q)?;
        let finite: Vec<Value> = d.finite.iter().map(|(p, v)| json!({ "prime": p, "order": v })).collect();
        Ok(json!({ "x": fmt_q(&q), "finite": finite, "green": d.green.to_string(), "degree": dega(&d).to_string() }))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn hecke() {
        let v = parse(hecke_height(1, 12, 20));
        assert_eq!(v["exact"], "-24 + 576*zeta'(-1)");
        assert_eq!(v["second_route_agrees"], true);
        assert!(parse(hecke_height(0, 12, 20))["error"].is_string());
    }

    #[test]
    fn torus_dims() {
        let v = parse(torus_deligne(1, 1));
        let dims: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
        assert_eq!(dims.iter().sum::<u64>(), 2);
        assert!(parse(torus_deligne(4, 1))["error"].is_string());
    }

    #[test]
    fn product() {
        let v = parse(product_formula("-355/113"));
        assert_eq!(v["degree"], "0");
        assert_eq!(v["finite"].as_array().unwrap().len(), 3);
        assert!(parse(product_formula("0"))["error"].is_string());
    }
}
