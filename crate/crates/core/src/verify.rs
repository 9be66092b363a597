//! Property suites behind `padic-mult verify`.
//!
//! Every property is checked against an oracle that does not share code
//! with the routine under test where that is practical (brute-force orders,
//! enumeration of subgroups, direct evaluation of functions).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{mul_mod, pow_mod};
use crate::classify::{classify, Case};
use crate::error::{Error, Result};
use crate::function::{alpha_endo, beta_endo, LocallyConstantFn};
use crate::ktheory::{algebra_k_groups, ideal_k_groups, primed_algebra_k_groups, KAtom};
use crate::padic::{teichmuller, MultiplierSpec, Prime};
use crate::reps::covariance::{check_covariance, covariance_interior};
use crate::reps::digits::{
    build_digit_rep, build_hs_rep, check_equivalence, nonneg_diagonal, word_diagonal, DigitSystem,
};
use crate::reps::orbit::{
    build_cyclic_rep, build_orbit_rep, check_matrix_units, diagonal_of, minimal_period, orbit_decompose,
};
use crate::reps::pi0::{laurent, laurent_product, pi0_symbol, presented_product, Term};
use crate::scalar::ExactScalar;
use crate::units::{find_nr, group_order, quotient_at_level, subgroup, unit_order};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Orders,
    Subgroups,
    Quotients,
    Teich,
    Endos,
    Reps,
    Digits,
    Ktheory,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Orders,
        Suite::Subgroups,
        Suite::Quotients,
        Suite::Teich,
        Suite::Endos,
        Suite::Reps,
        Suite::Digits,
        Suite::Ktheory,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Orders => "orders",
            Suite::Subgroups => "subgroups",
            Suite::Quotients => "quotients",
            Suite::Teich => "teich",
            Suite::Endos => "endos",
            Suite::Reps => "reps",
            Suite::Digits => "digits",
            Suite::Ktheory => "ktheory",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_p: u64,
    pub max_n: u32,
    pub max_len: u32,
    pub window: u64,
    pub seed: u64,
    /// Random functions drawn per family.
    pub samples: usize,
    /// Digit system for the `digits` suite; `None` runs `(3, 6)` and `(5, 10)`.
    pub digits: Option<(Prime, MultiplierSpec)>,
    /// Deliberately miscount one check per property (exercises the failure path).
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_p: 7,
            max_n: 5,
            max_len: 4,
            window: 8,
            seed: 0,
            samples: 20,
            digits: None,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub suite: Suite,
    pub property: String,
    pub passed: u64,
    pub failed: u64,
    /// First few failing instances.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn totals(&self) -> (u64, u64) {
        self.properties.iter().fold((0, 0), |(a, b), p| (a + p.passed, b + p.failed))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.properties {
            let tag = if p.failed == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "[{tag}] {}/{}: {} passed, {} failed", p.suite, p.property, p.passed, p.failed)?;
            for msg in &p.failures {
                writeln!(f, "       {msg}")?;
            }
        }
        let (pass, fail) = self.totals();
        write!(f, "{} properties, {pass} checks passed, {fail} failed", self.properties.len())
    }
}

struct Recorder {
    suite: Suite,
    fault: bool,
    out: Vec<PropertyResult>,
}

impl Recorder {
    fn property(&mut self, name: &str) -> &mut PropertyResult {
        self.out.push(PropertyResult {
            suite: self.suite,
            property: name.to_string(),
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        });
        self.out.last_mut().expect("just pushed")
    }

    fn check(&mut self, name: &str, ok: bool, context: impl FnOnce() -> String) {
        let fault = self.fault && !self.out.iter().any(|p| p.suite == self.suite && p.property == name);
        let idx = match self.out.iter().position(|p| p.suite == self.suite && p.property == name) {
            Some(i) => i,
            None => {
                self.property(name);
                self.out.len() - 1
            }
        };
        let entry = &mut self.out[idx];
        if ok && !fault {
            entry.passed += 1;
        } else {
            entry.failed += 1;
            if entry.failures.len() < 5 {
                let note = if fault { " (injected)" } else { "" };
                entry.failures.push(format!("{}{note}", context()));
            }
        }
    }
}

/// Brute-force `ord(r mod m)`.
pub fn naive_order(r: u64, m: u64) -> u64 {
    let r = r % m;
    let mut acc = r;
    let mut k = 1;
    while acc != 1 % m {
        acc = mul_mod(acc, r, m);
        k += 1;
    }
    k
}

/// A random function of the given level with small Gaussian-rational values.
pub fn random_function(rng: &mut impl Rng, p: Prime, level: u32) -> Result<LocallyConstantFn> {
    LocallyConstantFn::from_fn(p, level, |_| {
        let re = ExactScalar::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        if rng.gen_bool(0.3) {
            &re + &(&ExactScalar::i() * &ExactScalar::from_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
        } else {
            re
        }
    })
}

fn primes(cfg: &VerifyConfig) -> Vec<Prime> {
    Prime::up_to(cfg.max_p)
}

/// `r` in `2..=p^2` prime to `p`.
fn unit_pool(p: Prime) -> impl Iterator<Item = u64> {
    let q = p.get();
    (2..=q * q).filter(move |r| r % q != 0)
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<VerifyReport> {
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut properties = Vec::new();
    for s in suites {
        let mut rec = Recorder { suite: s, fault: cfg.inject_fault, out: Vec::new() };
        match s {
            Suite::Orders => orders(cfg, &mut rec)?,
            Suite::Subgroups => subgroups(cfg, &mut rec)?,
            Suite::Quotients => quotients(cfg, &mut rec)?,
            Suite::Teich => teich(cfg, &mut rec)?,
            Suite::Endos => endos(cfg, &mut rec)?,
            Suite::Reps => reps(cfg, &mut rec)?,
            Suite::Digits => digits(cfg, &mut rec)?,
            Suite::Ktheory => ktheory(cfg, &mut rec)?,
            Suite::All => unreachable!(),
        }
        properties.extend(rec.out);
    }
    Ok(VerifyReport { seed: cfg.seed, properties })
}

fn orders(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    for p in primes(cfg) {
        let q = p.get();
        for r in unit_pool(p) {
            for n in 1..=cfg.max_n {
                let m = p.pow(n)?;
                let got = unit_order(p, n, r as i64)?;
                rec.check("order matches brute force", got == naive_order(r, m), || format!("p={q} r={r} N={n}"));
            }
            let nr = find_nr(p, &MultiplierSpec::ExactInt(r as i64), cfg.max_n)?;
            rec.check(
                "N_r is the first level with p | order",
                (1..nr).all(|k| !naive_order(r, q.pow(k)).is_multiple_of(q))
                    && naive_order(r, q.pow(nr)).is_multiple_of(q),
                || format!("p={q} r={r}"),
            );
            for n in nr..cfg.max_n {
                let lo = naive_order(r, p.pow(n)?);
                let hi = naive_order(r, p.pow(n + 1)?);
                rec.check("order multiplies by p past N_r", hi == q * lo, || format!("p={q} r={r} N={n}"));
            }
        }
    }
    Ok(())
}

fn subgroups(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    for p in primes(cfg) {
        let q = p.get();
        for r in unit_pool(p) {
            let nr = find_nr(p, &MultiplierSpec::ExactInt(r as i64), cfg.max_n)?;
            for n in nr..cfg.max_n {
                let (lo, hi) = (p.pow(n)?, p.pow(n + 1)?);
                let small = subgroup(p, n, r as i64)?;
                let big = subgroup(p, n + 1, r as i64)?;
                let lifted: Vec<u64> = (1..hi).filter(|k| k % q != 0 && small.contains(k % lo)).collect();
                rec.check("G_(r,N+1) is the preimage of G_(r,N)", lifted == big.elements, || {
                    format!("p={q} r={r} N={n}")
                });
            }
            let n = cfg.max_n.min(3);
            let m = p.pow(n)?;
            let mut powers: Vec<u64> = (0..naive_order(r, m)).map(|k| pow_mod(r, k, m)).collect();
            powers.sort_unstable();
            rec.check("subgroup is the set of powers", powers == subgroup(p, n, r as i64)?.elements, || {
                format!("p={q} r={r} N={n}")
            });
        }
    }
    Ok(())
}

fn quotients(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    for p in primes(cfg) {
        let q = p.get();
        for r in unit_pool(p) {
            let nr = find_nr(p, &MultiplierSpec::ExactInt(r as i64), cfg.max_n)?;
            let base = group_order(p, nr)? / naive_order(r, p.pow(nr)?);
            for n in nr..=cfg.max_n {
                let idx = group_order(p, n)? / naive_order(r, p.pow(n)?);
                rec.check("|U_N|/d_N is stable past N_r", idx == base, || format!("p={q} r={r} N={n}"));
            }
            let quot = quotient_at_level(p, nr, r as i64)?;
            rec.check("quotient order", quot.order() as u64 == base, || format!("p={q} r={r}"));
            rec.check("quotient table is a group", crate::units::is_group_table(&quot.table), || {
                format!("p={q} r={r}")
            });
            let m = p.pow(nr)?;
            let section_ok = quot
                .coset_reps
                .iter()
                .enumerate()
                .all(|(i, &c)| (1..c).filter(|k| k % q != 0).all(|k| quot.coset_index(k as i64).ok() != Some(i)))
                && quot.coset_reps[0] == 1
                && (1..m).filter(|k| k % q != 0).all(|k| quot.coset_index(k as i64).is_ok());
            rec.check("section picks the smallest residue", section_ok, || format!("p={q} r={r}"));
        }
    }
    Ok(())
}

fn teich(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    for p in primes(cfg) {
        let q = p.get();
        for n in 1..=cfg.max_n {
            let m = p.pow(n)?;
            let lifts: Vec<u64> = (1..q).map(|i| teichmuller(p, i, n)).collect::<Result<_>>()?;
            for (i, &w) in (1..q).zip(&lifts) {
                rec.check("ω^(p-1) = 1", pow_mod(w, q - 1, m) == 1, || format!("p={q} i={i} N={n}"));
                rec.check("ω ≡ i mod p", w % q == i, || format!("p={q} i={i} N={n}"));
                if n > 1 {
                    let lower = teichmuller(p, i, n - 1)?;
                    rec.check("reduction is compatible", w % p.pow(n - 1)? == lower, || format!("p={q} i={i} N={n}"));
                }
            }
            rec.check("ω_(p-1) = p^N - 1", lifts[q as usize - 2] == m - 1, || format!("p={q} N={n}"));
            let mut residues: Vec<u64> = lifts.iter().map(|w| w % q).collect();
            residues.dedup();
            rec.check("lifts are distinct mod p", residues.len() == lifts.len(), || format!("p={q} N={n}"));
        }
    }
    Ok(())
}

/// A small pool of multipliers covering all three cases.
fn multiplier_pool(p: Prime) -> Vec<MultiplierSpec> {
    let q = p.get() as i64;
    let mut pool = vec![
        MultiplierSpec::ExactInt(2),
        MultiplierSpec::ExactInt(q + 2),
        MultiplierSpec::ExactInt(-1),
        MultiplierSpec::TeichProduct { index: 2, negated: false },
        MultiplierSpec::ExactInt(q),
        MultiplierSpec::ExactInt(2 * q),
        MultiplierSpec::ExactInt(q * q),
    ];
    if q > 3 {
        pool.push(MultiplierSpec::TeichProduct { index: 2, negated: true });
    }
    pool
}

fn endos(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for p in primes(cfg) {
        for r in multiplier_pool(p) {
            let unit = r.valuation(p)? == 0;
            for _ in 0..cfg.samples {
                let level = rng.gen_range(0..=2);
                let f = random_function(&mut rng, p, level)?;
                let back = beta_endo(&alpha_endo(&f, &r)?, &r)?;
                rec.check("β∘α = id", back.coarsen(level).as_ref() == Ok(&f), || format!("p={p} r={r}"));
                if unit {
                    let fwd = alpha_endo(&beta_endo(&f, &r)?, &r)?;
                    rec.check("α∘β = id for units", fwd == f, || format!("p={p} r={r}"));
                }
                let x = rng.gen_range(0..p.pow(level + r.valuation(p)? + 1)?) as i128;
                let af = alpha_endo(&f, &r)?;
                let rr = r.residue(p, af.level() + 1)? as i128;
                rec.check("(α f)(r x) = f(x)", af.eval_int(rr * x) == f.eval_int(x), || format!("p={p} r={r} x={x}"));
            }
        }
    }
    Ok(())
}

fn reps(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let k = cfg.window;
    for p in primes(cfg) {
        let q = p.get();
        for r in multiplier_pool(p).into_iter().filter(|r| r.valuation(p).ok() == Some(0)) {
            let case = classify(p, &r, 1)?.case;
            for _ in 0..cfg.samples {
                let level = rng.gen_range(0..=2);
                let f = random_function(&mut rng, p, level)?;
                let af = alpha_endo(&f, &r)?;
                let x = rng.gen_range(1..p.pow(3)?) as i128;
                let (v, m) = build_orbit_rep(p, &r, x, &f, k)?;
                let (_, ma) = build_orbit_rep(p, &r, x, &af, k)?;
                let inner = covariance_interior(&v)?;
                rec.check("orbit covariance", check_covariance(&v, &m, &ma, &inner)?, || format!("p={q} r={r} x={x}"));
                if let Case::RootOfUnity { .. } = case {
                    let (v, m) = build_cyclic_rep(p, &r, x, &f)?;
                    let (_, ma) = build_cyclic_rep(p, &r, x, &af)?;
                    rec.check("cyclic covariance", check_covariance(&v, &m, &ma, v.codomain())?, || {
                        format!("p={q} r={r} x={x}")
                    });
                }
                let d = orbit_decompose(p, &r, x, 3)?;
                let modulus = p.pow(d.l + 3)?;
                rec.check(
                    "decomposition recomposes",
                    d.recompose(p, &r)? == x.rem_euclid(modulus as i128) as u64,
                    || format!("p={q} r={r} x={x}"),
                );
            }
            let one = LocallyConstantFn::constant(p, ExactScalar::one());
            let (v, _) = build_orbit_rep(p, &r, 1, &one, k)?;
            let inner: Vec<_> = v.domain()[1..v.domain().len() - 1].to_vec();
            let unitary =
                v.compose(&v.adjoint())?.is_identity_on(&inner)? && v.adjoint().compose(&v)?.is_identity_on(&inner)?;
            rec.check("window shift is unitary inside", unitary, || format!("p={q} r={r}"));
            match case {
                Case::RootOfUnity { order } => {
                    let rep = check_matrix_units(p, &r, k.max(2 * order + 1))?;
                    rec.check("matrix-unit identity", rep.identity_holds && rep.u_commutes, || format!("p={q} r={r}"));
                }
                Case::NonTorsionUnit { .. } => {
                    let rr = r.as_integer().expect("pool units are integers");
                    for n in 1..=cfg.max_n.min(3) {
                        let f = LocallyConstantFn::from_fn(p, n, |j| ExactScalar::from_int(j as i64))?;
                        let period = subgroup(p, n, rr)?.order;
                        let (_, m) = build_orbit_rep(p, &r, 1, &f, period + 1)?;
                        rec.check(
                            "orbit diagonal period is |G_(r,N)|",
                            minimal_period(&diagonal_of(&m)) as u64 == period,
                            || format!("p={q} r={r} N={n}"),
                        );
                    }
                }
                Case::NonUnit { .. } => {}
            }
        }
        for _ in 0..cfg.samples {
            let level = rng.gen_range(0..=2);
            let n = rng.gen_range(1..=2);
            let f = random_function(&mut rng, p, level)?;
            let af = alpha_endo(&f, &MultiplierSpec::ExactInt(p.pow(n)? as i64))?;
            let cutoff = 40 / p.pow(n)? + 1;
            let (v, mu) = build_hs_rep(p, n, &f, cutoff)?;
            let ma = nonneg_diagonal(p.pow(n)? * cutoff, &af)?;
            rec.check("HS covariance", check_covariance(&v, &mu, &ma, v.codomain())?, || format!("p={q} N={n}"));
        }
        for r in multiplier_pool(p) {
            for _ in 0..cfg.samples.min(10) {
                let x = random_terms(&mut rng, p)?;
                let y = random_terms(&mut rng, p)?;
                let xy = presented_product(p, &r, &x, &y)?;
                let lhs = laurent(&pi0_symbol(&xy));
                let rhs = laurent_product(&laurent(&pi0_symbol(&x)), &laurent(&pi0_symbol(&y)));
                rec.check("π_0 is multiplicative", lhs == rhs, || format!("p={q} r={r}"));
            }
        }
    }
    Ok(())
}

/// Up to three terms with distinct shift exponents in `-2..=2`.
pub fn random_terms(rng: &mut impl Rng, p: Prime) -> Result<Vec<Term>> {
    let mut exps: Vec<i64> = (-2..=2).collect();
    let count = rng.gen_range(1..=3);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n = exps.swap_remove(rng.gen_range(0..exps.len()));
        let level = rng.gen_range(0..=1);
        out.push((n, random_function(rng, p, level)?));
    }
    Ok(out)
}

fn digits(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    let systems = match &cfg.digits {
        Some((p, r)) => vec![DigitSystem::new(*p, r)?],
        None => vec![
            DigitSystem::new(Prime::new(3)?, &MultiplierSpec::ExactInt(6))?,
            DigitSystem::new(Prime::new(5)?, &MultiplierSpec::ExactInt(10))?,
        ],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd161);
    for sys in systems {
        let tag = || format!("p={} r={}", sys.p, sys.r);
        // Keep the word count within reach of the dense checks.
        let max_len = (1..=cfg.max_len).take_while(|&l| sys.count(l + 1).is_ok_and(|c| c <= 5000)).last().unwrap_or(1);
        for len in 1..=max_len {
            let total = sys.count(len)?;
            rec.check("digit sums biject onto Z/s^n", sys.is_bijective_at(len)?, || {
                format!("{} n={len} (|Z/s^n| = {total})", tag())
            });
        }
        for w in sys.words(max_len)? {
            let x = sys.value(&w)?;
            let e = sys.expand(x, max_len + 1)?;
            rec.check("expansion inverts the value map", e.terminated && e.word == w, || format!("{} x={x}", tag()));
            if !w.is_zero() {
                rec.check("κ(rx) = κ(x) + 1", crate::reps::kappa(&w.shifted()) == crate::reps::kappa(&w) + 1, tag);
            }
        }
        for _ in 0..cfg.samples.min(10) {
            let level = rng.gen_range(0..=2);
            let f = random_function(&mut rng, sys.p, level)?;
            let rep = check_equivalence(&sys, &f, max_len)?;
            rec.check("U intertwines the digit and HS representations", rep.holds(), || format!("{} {rep:?}", tag()));
            let af = alpha_endo(&f, &MultiplierSpec::ExactInt(sys.r))?;
            let (v, m) = build_digit_rep(&sys, &f, max_len)?;
            let ma = word_diagonal(&sys, v.codomain().to_vec(), &af)?;
            rec.check("digit covariance", check_covariance(&v, &m, &ma, v.codomain())?, tag);
        }
    }
    Ok(())
}

fn ktheory(cfg: &VerifyConfig, rec: &mut Recorder) -> Result<()> {
    for p in primes(cfg) {
        for r in multiplier_pool(p) {
            let c = classify(p, &r, 2)?;
            let a = algebra_k_groups(&c)?;
            let tag = || format!("p={p} r={r}");
            match &c.case {
                Case::NonTorsionUnit { .. } => {
                    let i = ideal_k_groups(&c, false)?;
                    rec.check(
                        "K_i(A) = K_i(I) ⊕ Z",
                        a.k0 == i.k0.with(KAtom::Free(1)) && a.k1 == i.k1.with(KAtom::Free(1)),
                        tag,
                    );
                    let s = c.supernatural_order().expect("Case I");
                    let expected = format!("c0(Z>=0, H({s})) (+) Z");
                    rec.check(
                        "Case I strings",
                        a.k0.to_string() == expected && a.k1.to_string() == "Z (+) c0(Z>=0, Z)",
                        tag,
                    );
                }
                Case::RootOfUnity { order } => {
                    let i = ideal_k_groups(&c, false)?;
                    rec.check(
                        "K_i(A) = K_i(I) ⊕ Z",
                        a.k0 == i.k0.with(KAtom::Free(1)) && a.k1 == i.k1.with(KAtom::Free(1)),
                        tag,
                    );
                    let ap = primed_algebra_k_groups(&c)?;
                    let ip = ideal_k_groups(&c, true)?;
                    rec.check(
                        "K_0(A') = K_0(I') ⊕ Z^n",
                        ap.k0 == ip.k0.with(KAtom::Free(*order)) && ap.k1.is_zero(),
                        tag,
                    );
                    let expected = format!("c0(Z>=0 x Z_{p}, Z) (+) {}", KAtom::Free(*order));
                    rec.check("Case II strings", ap.k0.to_string() == expected, tag);
                }
                Case::NonUnit { valuation, .. } => {
                    let s = p.pow(*valuation)?;
                    rec.check("Case III strings", a.k0.to_string() == format!("C(Z_{s}^x, Z)") && a.k1.is_zero(), tag);
                }
            }
        }
        // H_S membership against direct denominators for S = d p^∞.
        for r in unit_pool(p).take(6) {
            let spec = MultiplierSpec::ExactInt(r as i64);
            let c = classify(p, &spec, 1)?;
            let Some(s) = c.supernatural_order() else { continue };
            let Case::NonTorsionUnit { order, .. } = c.case else { continue };
            let h = crate::classify::HSubgroup::new(s);
            for den in 1..=60u64 {
                let mut d = den;
                while d % p.get() == 0 {
                    d /= p.get();
                }
                let oracle = order % d == 0;
                let q = num_rational::BigRational::new(1.into(), (den as i64).into());
                rec.check("H_S membership", h.contains(&q) == oracle, || format!("p={p} r={r} 1/{den}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { max_p: 5, max_n: 3, max_len: 2, window: 6, samples: 3, ..VerifyConfig::default() }
    }

    #[test]
    fn suite_names_roundtrip() {
        for s in std::iter::once(Suite::All).chain(Suite::EACH) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        let report = run(Suite::All, &small()).unwrap();
        assert!(report.ok(), "{report}");
        let suites: std::collections::BTreeSet<_> = report.properties.iter().map(|p| p.suite.name()).collect();
        assert_eq!(suites.len(), 8);
    }

    #[test]
    fn fault_injection_fails() {
        let cfg = VerifyConfig { inject_fault: true, ..small() };
        let report = run(Suite::Teich, &cfg).unwrap();
        assert!(!report.ok());
        assert!(report.to_string().contains("(injected)"));
    }

    #[test]
    fn deterministic() {
        let a = run(Suite::Endos, &small()).unwrap();
        let b = run(Suite::Endos, &small()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn naive_orders() {
        assert_eq!(naive_order(2, 27), 18);
        assert_eq!(naive_order(7, 125), 20);
        assert_eq!(naive_order(1, 9), 1);
    }
}
