//! Finite sums `Σ V^n M_(f_n)`, their products, and the symbol map `π_0`
//! whose kernel is the ideal `I_r`.
//!
//! A term `(n, f)` with `n < 0` stands for `(V*)^(-n) M_f`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::function::{alpha_endo, beta_endo, LocallyConstantFn};
use crate::padic::{MultiplierSpec, Prime};
use crate::scalar::ExactScalar;

pub type Term = (i64, LocallyConstantFn);

/// `(n, f_n(0))` for each term, in the given order.
pub fn pi0_symbol(terms: &[Term]) -> Vec<(i64, ExactScalar)> {
    terms.iter().map(|(n, f)| (*n, f.eval_int(0).clone())).collect()
}

/// Collect like powers of `z`; zero coefficients are dropped.
pub fn laurent(symbol: &[(i64, ExactScalar)]) -> BTreeMap<i64, ExactScalar> {
    let mut out: BTreeMap<i64, ExactScalar> = BTreeMap::new();
    for (n, c) in symbol {
        let slot = out.entry(*n).or_default();
        *slot = &*slot + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The same collection with exponents taken mod `order`: the image under `π'_0`.
pub fn laurent_mod(symbol: &[(i64, ExactScalar)], order: u64) -> BTreeMap<u64, ExactScalar> {
    let mut out: BTreeMap<u64, ExactScalar> = BTreeMap::new();
    for (n, c) in symbol {
        let slot = out.entry(n.rem_euclid(order as i64) as u64).or_default();
        *slot = &*slot + c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn laurent_product(a: &BTreeMap<i64, ExactScalar>, b: &BTreeMap<i64, ExactScalar>) -> BTreeMap<i64, ExactScalar> {
    let mut out: BTreeMap<i64, ExactScalar> = BTreeMap::new();
    for (m, x) in a {
        for (n, y) in b {
            let slot = out.entry(m + n).or_default();
            *slot = &*slot + &(x * y);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Membership in `I_r = ker π_0`.
pub fn in_ideal(terms: &[Term]) -> bool {
    laurent(&pi0_symbol(terms)).is_empty()
}

/// Membership in `I'_r = ker π'_0` for a root of unity of the given order.
pub fn in_primed_ideal(terms: &[Term], order: u64) -> bool {
    laurent_mod(&pi0_symbol(terms), order).is_empty()
}

fn iterate(
    f: &LocallyConstantFn,
    times: u64,
    r: &MultiplierSpec,
    endo: fn(&LocallyConstantFn, &MultiplierSpec) -> Result<LocallyConstantFn>,
) -> Result<LocallyConstantFn> {
    let mut g = f.clone();
    for _ in 0..times {
        g = endo(&g, r)?;
    }
    Ok(g)
}

/// `V^a V^b` (signed exponents) as `V^n M_h`. Only `V^a (V*)^c` with
/// `a, c > 0` needs work: `V V* = M_(α(1))`.
fn shift_product(p: Prime, r: &MultiplierSpec, a: i64, b: i64) -> Result<Term> {
    if a <= 0 || b >= 0 {
        return Ok((a + b, LocallyConstantFn::constant(p, ExactScalar::one())));
    }
    // V^a V*^c = V^(a-1) M_e V*^(c-1) = V^(a-1) V*^(c-1) M_(α^(c-1) e)
    let c = b.unsigned_abs();
    let e = alpha_endo(&LocallyConstantFn::constant(p, ExactScalar::one()), r)?;
    let (n, h) = shift_product(p, r, a - 1, b + 1)?;
    Ok((n, h.mul(&iterate(&e, c - 1, r, alpha_endo)?)?))
}

/// `(V^a M_f)(V^b M_g)` rewritten with `M_f V = V M_(βf)` and
/// `M_f V* = V* M_(αf)`.
pub fn term_product(p: Prime, r: &MultiplierSpec, (a, f): &Term, (b, g): &Term) -> Result<Term> {
    let moved = if *b >= 0 {
        iterate(f, b.unsigned_abs(), r, beta_endo)?
    } else {
        iterate(f, b.unsigned_abs(), r, alpha_endo)?
    };
    let (n, h) = shift_product(p, r, *a, *b)?;
    Ok((n, h.mul(&moved)?.mul(g)?))
}

/// Product of two presented elements, as a list of terms (unsimplified).
pub fn presented_product(p: Prime, r: &MultiplierSpec, x: &[Term], y: &[Term]) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for s in x {
        for t in y {
            out.push(term_product(p, r, s, t)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn fun(vals: &[i64]) -> LocallyConstantFn {
        LocallyConstantFn::new(p3(), 1, vals.iter().map(|&v| ExactScalar::from_int(v)).collect()).unwrap()
    }

    #[test]
    fn symbol_examples() {
        assert!(in_ideal(&[(1, fun(&[0, 5, 6]))]));
        let one = LocallyConstantFn::constant(p3(), ExactScalar::one());
        assert_eq!(pi0_symbol(&[(0, one.clone())]), vec![(0, ExactScalar::one())]);
        assert!(!in_ideal(&[(0, one)]));
        let sym = pi0_symbol(&[(2, fun(&[3, 1, 1])), (0, fun(&[0, 2, 2]))]);
        assert_eq!(sym, vec![(2, ExactScalar::from_int(3)), (0, ExactScalar::zero())]);
    }

    #[test]
    fn primed_symbol_wraps() {
        let terms = [(1, fun(&[1, 0, 0])), (3, fun(&[-1, 0, 0]))];
        assert!(!in_ideal(&terms));
        assert!(in_primed_ideal(&terms, 2));
    }

    #[test]
    fn products_respect_symbols() {
        let x = vec![(1, fun(&[2, 1, 0])), (-2, fun(&[1, 1, 4]))];
        let y = vec![(0, fun(&[5, 0, 1])), (3, fun(&[-1, 2, 2])), (-1, fun(&[3, 3, 3]))];
        for r in ["2", "6", "-1", "9"] {
            let r: MultiplierSpec = r.parse().unwrap();
            let xy = presented_product(p3(), &r, &x, &y).unwrap();
            let lhs = laurent(&pi0_symbol(&xy));
            let rhs = laurent_product(&laurent(&pi0_symbol(&x)), &laurent(&pi0_symbol(&y)));
            assert_eq!(lhs, rhs, "r = {r}");
        }
    }

    #[test]
    fn isometry_relations() {
        let one = LocallyConstantFn::constant(p3(), ExactScalar::one());
        let six = MultiplierSpec::ExactInt(6);
        // V* V = 1
        let (n, h) = term_product(p3(), &six, &(-1, one.clone()), &(1, one.clone())).unwrap();
        assert_eq!(n, 0);
        assert!(h.same_function(&one));
        // V V* = M_(1_(6 Z_3)), which is not 1 for a non-unit.
        let (n, h) = term_product(p3(), &six, &(1, one.clone()), &(-1, one.clone())).unwrap();
        assert_eq!(n, 0);
        assert_eq!(h.values(), fun(&[1, 0, 0]).values());
        let (n, h) = term_product(p3(), &MultiplierSpec::ExactInt(2), &(1, one.clone()), &(-1, one.clone())).unwrap();
        assert_eq!(n, 0);
        assert!(h.same_function(&one));
    }
}
