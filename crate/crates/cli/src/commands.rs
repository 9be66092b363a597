//! One function per subcommand. Each returns a [`CommandResult`] whose
//! payload and human text describe the same thing.

use std::fmt::Write as _;

use num_rational::BigRational;
use padic_mult::classify::{classify, supernatural_order, HSubgroup};
use padic_mult::function::{alpha_endo, beta_endo, FunctionDocument, LocallyConstantFn};
use padic_mult::ktheory::{algebra_k_groups, ideal_k_groups, primed_algebra_k_groups, KGroups};
use padic_mult::operator::OperatorDocument;
use padic_mult::padic::teichmuller;
use padic_mult::reps::covariance::{check_covariance, covariance_interior};
use padic_mult::reps::digits::{
    build_digit_rep, build_hs_rep, intertwiner, nonneg_diagonal, word_diagonal, DigitSystem,
};
use padic_mult::reps::orbit::{build_cyclic_rep, build_orbit_rep, orbit_decompose};
use padic_mult::units::{find_nr, quotient_group, unit_order};
use padic_mult::verify::{run, Suite, VerifyConfig};
use padic_mult::{Case, Error, MultiplierSpec, Prime, Result, TruncatedOp};
use serde_json::{json, Value};

pub struct CommandResult {
    /// `false` when a property check failed (exit status 1).
    pub ok: bool,
    pub payload: Value,
    pub human: String,
}

impl CommandResult {
    fn ok(payload: Value, human: impl Into<String>) -> Self {
        CommandResult { ok: true, payload, human: human.into() }
    }
}

pub fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

pub fn multiplier(p: Prime, r: &str) -> Result<MultiplierSpec> {
    let spec: MultiplierSpec = r.parse()?;
    spec.validate(p)?;
    Ok(spec)
}

pub fn cmd_classify(p: Prime, r: &MultiplierSpec, precision: u32) -> Result<CommandResult> {
    let c = classify(p, r, precision)?;
    let mut payload = json!({
        "p": p.get(),
        "r": r.to_string(),
        "case": c.case.roman(),
        "exact": c.exact,
    });
    let human = match &c.case {
        Case::NonTorsionUnit { nr, order } => {
            let s = c.supernatural_order().expect("Case I").to_string();
            payload["nr"] = json!(nr);
            payload["d"] = json!(order);
            payload["supernatural_order"] = json!(s);
            format!("case I: N_r = {nr}, d_(N_r) = {order}, ord(r) = {s}")
        }
        Case::RootOfUnity { order } => {
            payload["ord"] = json!(order);
            format!("case II: ord(r) = {order}")
        }
        Case::NonUnit { valuation, unit_part } => {
            payload["N"] = json!(valuation);
            payload["unit_part"] = json!({
                "residue": unit_part.residue(),
                "precision": unit_part.precision(),
                "digits": unit_part.digits(),
            });
            format!("case III: N = {valuation}, r' = {} mod {}^{}", unit_part.residue(), p, unit_part.precision())
        }
    };
    let human = if c.exact { human } else { format!("{human} (consistent up to precision)") };
    Ok(CommandResult::ok(payload, human))
}

pub fn cmd_order(p: Prime, r: &MultiplierSpec, level: u32) -> Result<CommandResult> {
    let d = unit_order(p, level, r.residue(p, level)? as i64)?;
    Ok(CommandResult::ok(json!({"p": p.get(), "r": r.to_string(), "N": level, "order": d}), d.to_string()))
}

pub fn cmd_nr(p: Prime, r: &MultiplierSpec, cap: u32) -> Result<CommandResult> {
    let nr = find_nr(p, r, cap)?;
    Ok(CommandResult::ok(json!({"p": p.get(), "r": r.to_string(), "nr": nr}), nr.to_string()))
}

pub fn cmd_quotient(p: Prime, r: &MultiplierSpec, cap: u32) -> Result<CommandResult> {
    let q = quotient_group(p, r, cap)?;
    let payload = json!({
        "p": p.get(),
        "r": r.to_string(),
        "level": q.level,
        "order": q.order(),
        "subgroup_order": q.subgroup.order,
        "coset_reps": q.coset_reps,
        "table": q.table,
    });
    let mut human = format!(
        "Z_{p}^x / G_r = U_{} / G_(r,{}) has order {} (|G_(r,{})| = {})\ncoset reps: {:?}\n",
        q.level,
        q.level,
        q.order(),
        q.level,
        q.subgroup.order,
        q.coset_reps
    );
    for row in &q.table {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(human, "  {}", cells.join(" "));
    }
    Ok(CommandResult::ok(payload, human.trim_end()))
}

pub fn cmd_teich(p: Prime, i: u64, level: u32) -> Result<CommandResult> {
    let w = teichmuller(p, i, level)?;
    Ok(CommandResult::ok(json!({"p": p.get(), "i": i, "N": level, "omega": w}), w.to_string()))
}

pub fn cmd_decompose(p: Prime, r: &MultiplierSpec, x: i128, precision: u32) -> Result<CommandResult> {
    let d = orbit_decompose(p, r, x, precision)?;
    let mut payload = json!({
        "p": p.get(),
        "r": r.to_string(),
        "x": x.to_string(),
        "L": d.l,
        "coset_index": d.coset_index,
        "section": d.section,
        "tail": d.tail,
        "precision": d.precision,
    });
    let rk = match d.k {
        Some(k) => {
            payload["k"] = json!(k);
            format!("r^{k} * ")
        }
        None => String::new(),
    };
    let human = format!(
        "{x} = {rk}{p}^{} * {} * {} mod {p}^{} (coset {})",
        d.l,
        d.section,
        d.tail,
        d.l + d.precision,
        d.coset_index
    );
    Ok(CommandResult::ok(payload, human))
}

fn k_payload(k: &KGroups) -> (Value, String) {
    (json!({"k0": k.k0.to_string(), "k1": k.k1.to_string()}), format!("K0 = {}\nK1 = {}", k.k0, k.k1))
}

pub fn cmd_ktheory(p: Prime, r: &MultiplierSpec, primed: bool, ideal: bool) -> Result<CommandResult> {
    let c = classify(p, r, 1)?;
    let k = match (ideal, primed) {
        (true, _) => ideal_k_groups(&c, primed)?,
        (false, true) => primed_algebra_k_groups(&c)?,
        (false, false) => algebra_k_groups(&c)?,
    };
    let (mut payload, human) = k_payload(&k);
    payload["case"] = json!(c.case.roman());
    Ok(CommandResult::ok(payload, human))
}

pub fn cmd_snumber(p: Prime, r: &MultiplierSpec, cap: u32, contains: Option<&str>) -> Result<CommandResult> {
    let s = supernatural_order(p, r, cap)?;
    let mut payload = json!({"p": p.get(), "r": r.to_string(), "S": s.to_string(), "factors": &s});
    let mut human = format!("S = {s}");
    if let Some(q) = contains {
        let value: BigRational = q.parse().map_err(|_| Error::Parse(format!("bad rational {q:?}")))?;
        let inside = HSubgroup::new(s).contains(&value);
        payload["contains"] = json!({"q": q, "member": inside});
        let _ = write!(human, "\n{q} {} H_S", if inside { "∈" } else { "∉" });
    }
    Ok(CommandResult::ok(payload, human))
}

pub struct VerifyArgs {
    pub suite: Suite,
    pub config: VerifyConfig,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CommandResult> {
    let report = run(args.suite, &args.config)?;
    let payload = serde_json::to_value(&report).expect("report serializes");
    Ok(CommandResult { ok: report.ok(), payload, human: report.to_string() })
}

pub fn cmd_expand(p: Prime, r: &MultiplierSpec, x: i128, max_len: u32) -> Result<CommandResult> {
    let sys = DigitSystem::new(p, r)?;
    let e = sys.expand(x, max_len)?;
    let label = padic_mult::BasisIndex::Word(e.word.clone()).to_string();
    let payload = json!({
        "p": p.get(),
        "r": r.to_string(),
        "x": x.to_string(),
        "digits": e.word.digits(),
        "label": label,
        "terminated": e.terminated,
        "kappa": padic_mult::reps::kappa(&e.word),
    });
    let tail = if e.terminated { "" } else { " (truncated)" };
    Ok(CommandResult::ok(payload, format!("{label}{tail}")))
}

fn function_result(f: &LocallyConstantFn) -> CommandResult {
    let doc = f.to_document();
    CommandResult::ok(serde_json::to_value(&doc).expect("document serializes"), f.to_json())
}

fn operator_result(op: &TruncatedOp) -> CommandResult {
    let doc: OperatorDocument = op.to_document();
    CommandResult::ok(serde_json::to_value(&doc).expect("document serializes"), op.to_json())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endo {
    Alpha,
    Beta,
}

pub fn cmd_endo(f: &LocallyConstantFn, r: &MultiplierSpec, which: Endo) -> Result<CommandResult> {
    let g = match which {
        Endo::Alpha => alpha_endo(f, r)?,
        Endo::Beta => beta_endo(f, r)?,
    };
    Ok(function_result(&g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Orbit,
    Cyclic,
    Digit,
    Hs,
    Intertwiner,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    V,
    /// `m_f` on the domain of `v`.
    M,
    /// `m_f` on the codomain of `v`, the shape `m_(α f)` needs.
    MOut,
}

pub struct RepArgs<'a> {
    pub family: Family,
    pub part: Part,
    pub p: Prime,
    pub r: Option<&'a MultiplierSpec>,
    pub f: Option<&'a LocallyConstantFn>,
    pub x: i128,
    pub window: u64,
    pub max_len: u32,
    pub n: u32,
    pub cutoff: u64,
}

pub fn cmd_rep(a: &RepArgs<'_>) -> Result<CommandResult> {
    let need_r = || a.r.ok_or_else(|| Error::InvalidArgument("this family needs -r".into()));
    let need_f = || a.f.ok_or_else(|| Error::InvalidArgument("this family needs --fn".into()));
    let sys = || DigitSystem::new(a.p, need_r()?);
    let (v, m) = match a.family {
        Family::Orbit => build_orbit_rep(a.p, need_r()?, a.x, need_f()?, a.window)?,
        Family::Cyclic => build_cyclic_rep(a.p, need_r()?, a.x, need_f()?)?,
        Family::Digit => build_digit_rep(&sys()?, need_f()?, a.max_len)?,
        Family::Hs => build_hs_rep(a.p, a.n, need_f()?, a.cutoff)?,
        Family::Intertwiner => {
            let u = intertwiner(&sys()?, a.max_len)?;
            return Ok(operator_result(&u));
        }
    };
    let op = match (a.part, a.family) {
        (Part::V, _) => v,
        (Part::MOut, Family::Digit) => word_diagonal(&sys()?, v.codomain().to_vec(), need_f()?)?,
        (Part::MOut, Family::Hs) => nonneg_diagonal(v.codomain().len() as u64 - 1, need_f()?)?,
        _ => m,
    };
    Ok(operator_result(&op))
}

pub fn cmd_covariance(v: &TruncatedOp, m: &TruncatedOp, m_alpha: &TruncatedOp) -> Result<CommandResult> {
    let interior = covariance_interior(v)?;
    let holds = check_covariance(v, m, m_alpha, &interior)?;
    let labels: Vec<String> = interior.iter().map(ToString::to_string).collect();
    let payload = json!({"holds": holds, "interior": labels});
    let human = format!("covariance {} on {} interior indices", if holds { "holds" } else { "FAILS" }, interior.len());
    Ok(CommandResult { ok: holds, payload, human })
}

/// Accept either a bare document or an `{"status": "ok", "payload": ...}` envelope.
pub fn unwrap_envelope(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(match v {
        Value::Object(ref o) if o.contains_key("payload") && o.contains_key("status") => o["payload"].clone(),
        other => other,
    })
}

pub fn load_function(text: &str) -> Result<LocallyConstantFn> {
    let doc: FunctionDocument =
        serde_json::from_value(unwrap_envelope(text)?).map_err(|e| Error::Parse(e.to_string()))?;
    LocallyConstantFn::from_document(&doc)
}

pub fn load_operator(text: &str) -> Result<TruncatedOp> {
    let doc: OperatorDocument =
        serde_json::from_value(unwrap_envelope(text)?).map_err(|e| Error::Parse(e.to_string()))?;
    TruncatedOp::from_document(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_and_bare_documents_load_alike() {
        let bare = r#"{"p": 3, "level": 1, "values": ["1", "0", "2"]}"#;
        let wrapped = format!(r#"{{"status": "ok", "payload": {bare}, "humanText": ""}}"#);
        assert_eq!(load_function(bare).unwrap(), load_function(&wrapped).unwrap());
        assert!(load_function("{").is_err());
    }
}
