//! Browser bindings. Each export takes plain strings and numbers and returns
//! a JSON string: `{"ok": true, ...}` or `{"ok": false, "code", "message"}`.

use padic_mult::ktheory::{algebra_k_groups, primed_algebra_k_groups};
use padic_mult::reps::orbit::{build_orbit_rep, diagonal_of, minimal_period};
use padic_mult::units::quotient_group;
use padic_mult::{classify, Case, Error, LocallyConstantFn, MultiplierSpec, Prime, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn inputs(p: u32, r: &str) -> Result<(Prime, MultiplierSpec)> {
    let p = Prime::new(p.into())?;
    let r: MultiplierSpec = r.parse()?;
    r.validate(p)?;
    Ok((p, r))
}

fn finish(res: Result<Value>) -> String {
    let v = match res {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v
        }
        Err(e) => json!({"ok": false, "code": e.code(), "message": e.to_string()}),
    };
    v.to_string()
}

pub fn classify_value(p: u32, r: &str) -> Result<Value> {
    let (p, r) = inputs(p, r)?;
    let c = classify(p, &r, 8)?;
    let k = algebra_k_groups(&c)?;
    let mut out = json!({
        "case": c.case.roman(),
        "exact": c.exact,
        "k0": k.k0.to_string(),
        "k1": k.k1.to_string(),
    });
    match &c.case {
        Case::NonTorsionUnit { nr, order } => {
            out["nr"] = json!(nr);
            out["d"] = json!(order);
            out["order"] = json!(c.supernatural_order().map(|s| s.to_string()));
        }
        Case::RootOfUnity { order } => {
            out["order"] = json!(order.to_string());
            let primed = primed_algebra_k_groups(&c)?;
            out["primed"] = json!({"k0": primed.k0.to_string(), "k1": primed.k1.to_string()});
        }
        Case::NonUnit { valuation, unit_part } => {
            out["N"] = json!(valuation);
            out["unit_residue"] = json!(unit_part.residue());
            out["unit_precision"] = json!(unit_part.precision());
        }
    }
    Ok(out)
}

pub fn quotient_value(p: u32, r: &str) -> Result<Value> {
    let (p, r) = inputs(p, r)?;
    let q = quotient_group(p, &r, 64)?;
    if q.order() > 64 {
        return Err(Error::InvalidArgument(format!("quotient of order {} is too large to draw", q.order())));
    }
    Ok(json!({"level": q.level, "coset_reps": q.coset_reps, "table": q.table}))
}

/// Diagonal of `m_f` on the orbit window of `x`, for `f` the indicator of
/// `residue mod p^level`.
pub fn orbit_value(p: u32, r: &str, x: i32, level: u32, residue: u32, radius: u32) -> Result<Value> {
    let (p, r) = inputs(p, r)?;
    if radius > 200 {
        return Err(Error::InvalidArgument("radius is capped at 200".into()));
    }
    let f = LocallyConstantFn::indicator(p, level, residue.into())?;
    let (_, m) = build_orbit_rep(p, &r, x.into(), &f, radius.into())?;
    let diag = diagonal_of(&m);
    let bits: Vec<u8> = diag.iter().map(|v| u8::from(!v.is_zero())).collect();
    Ok(json!({"start": -i64::from(radius), "diagonal": bits, "period": minimal_period(&diag)}))
}

/// Case, `N_r`, orders and K-groups of the crossed product.
#[wasm_bindgen]
pub fn classify_json(p: u32, r: &str) -> String {
    finish(classify_value(p, r))
}

/// Coset representatives and multiplication table of `Z_p^x / G_r`.
#[wasm_bindgen]
pub fn quotient_json(p: u32, r: &str) -> String {
    finish(quotient_value(p, r))
}

/// Which points `r^k x` of the orbit window land in `residue mod p^level`.
#[wasm_bindgen]
pub fn orbit_json(p: u32, r: &str, x: i32, level: u32, residue: u32, radius: u32) -> String {
    finish(orbit_value(p, r, x, level, residue, radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn classify_reports_k_groups() {
        let v = parse(classify_json(3, "6"));
        assert_eq!(v["ok"], true);
        assert_eq!(v["case"], "III");
        assert_eq!(v["k0"], "C(Z_3^x, Z)");
        let v = parse(classify_json(5, "teich(2)"));
        assert_eq!(v["order"], "4");
        assert!(v["primed"]["k0"].is_string());
    }

    #[test]
    fn errors_are_structured() {
        let v = parse(classify_json(9, "2"));
        assert_eq!(v["ok"], false);
        assert_eq!(v["code"], "not_odd_prime");
        assert_eq!(parse(classify_json(3, "1"))["code"], "excluded_multiplier");
    }

    #[test]
    fn quotient_table_is_square() {
        let v = parse(quotient_json(5, "7"));
        let n = v["coset_reps"].as_array().unwrap().len();
        assert!(v["table"].as_array().unwrap().iter().all(|row| row.as_array().unwrap().len() == n));
    }

    #[test]
    fn orbit_period_of_an_indicator() {
        // 7 has order 4 mod 25, so the indicator of 7 mod 25 repeats every 4 steps.
        let v = parse(orbit_json(5, "7", 1, 2, 7, 8));
        assert_eq!(v["period"], 4);
        assert_eq!(v["diagonal"].as_array().unwrap().len(), 17);
        assert_eq!(v["diagonal"][9], 1);
    }
}
