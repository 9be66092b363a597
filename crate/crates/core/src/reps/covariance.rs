//! The covariance relation `V M_f V* = M_(α(f))` on truncations.

use crate::error::Result;
use crate::operator::{BasisIndex, TruncatedOp};

/// Codomain indices on which the truncation is faithful to the shift.
///
/// On a window of `ℓ²(Z)` the bottom edge has no preimage, so `v v*` fails
/// to be the identity there; those indices are excluded. The other
/// families are isometries whose truncated codomain already contains
/// every image, so the whole codomain is interior.
pub fn covariance_interior(v: &TruncatedOp) -> Result<Vec<BasisIndex>> {
    if !v.codomain().iter().all(|b| matches!(b, BasisIndex::Win(_))) {
        return Ok(v.codomain().to_vec());
    }
    let proj = v.compose(&v.adjoint())?;
    let mut out = Vec::new();
    for b in v.codomain() {
        if proj.is_identity_on(std::slice::from_ref(b))? {
            out.push(b.clone());
        }
    }
    Ok(out)
}

/// `(v m_f v*) E_i == m_alpha_f E_i` for every `i` in `interior`.
pub fn check_covariance(
    v: &TruncatedOp,
    m_f: &TruncatedOp,
    m_alpha_f: &TruncatedOp,
    interior: &[BasisIndex],
) -> Result<bool> {
    let lhs = v.compose(m_f)?.compose(&v.adjoint())?;
    lhs.agrees_on(m_alpha_f, interior)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{alpha_endo, LocallyConstantFn};
    use crate::padic::{MultiplierSpec, Prime};
    use crate::reps::digits::{build_digit_rep, build_hs_rep, nonneg_diagonal, word_diagonal, DigitSystem};
    use crate::reps::orbit::{build_cyclic_rep, build_orbit_rep};
    use crate::scalar::ExactScalar;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn fun(q: u64, vals: &[i64]) -> LocallyConstantFn {
        LocallyConstantFn::new(p(q), 1, vals.iter().map(|&v| ExactScalar::from_int(v)).collect()).unwrap()
    }

    #[test]
    fn orbit_family() {
        let r = MultiplierSpec::ExactInt(2);
        let f = fun(3, &[10, 11, 12]);
        let af = alpha_endo(&f, &r).unwrap();
        let (v, m) = build_orbit_rep(p(3), &r, 1, &f, 4).unwrap();
        let (_, ma) = build_orbit_rep(p(3), &r, 1, &af, 4).unwrap();
        let inner = covariance_interior(&v).unwrap();
        assert_eq!(inner, (-3..=4).map(BasisIndex::Win).collect::<Vec<_>>());
        assert!(check_covariance(&v, &m, &ma, &inner).unwrap());
        // With a constant function the relation fails exactly off the interior.
        let c = LocallyConstantFn::constant(p(3), ExactScalar::from_int(5));
        let (_, mc) = build_orbit_rep(p(3), &r, 1, &c, 4).unwrap();
        assert!(check_covariance(&v, &mc, &mc, &inner).unwrap());
        assert!(!check_covariance(&v, &mc, &mc, &[BasisIndex::Win(-4)]).unwrap());
    }

    #[test]
    fn cyclic_family() {
        let r: MultiplierSpec = "teich(2)".parse().unwrap();
        let f = fun(5, &[1, 2, 3, 4, 5]);
        let af = alpha_endo(&f, &r).unwrap();
        let (v, m) = build_cyclic_rep(p(5), &r, 3, &f).unwrap();
        let (_, ma) = build_cyclic_rep(p(5), &r, 3, &af).unwrap();
        assert!(check_covariance(&v, &m, &ma, v.codomain()).unwrap());
    }

    #[test]
    fn digit_family() {
        let r = MultiplierSpec::ExactInt(6);
        let sys = DigitSystem::new(p(3), &r).unwrap();
        let f = fun(3, &[10, 11, 12]);
        let af = alpha_endo(&f, &r).unwrap();
        assert_eq!(af.level(), 2);
        let (v, m) = build_digit_rep(&sys, &f, 2).unwrap();
        let ma = word_diagonal(&sys, v.codomain().to_vec(), &af).unwrap();
        let inner = covariance_interior(&v).unwrap();
        assert_eq!(inner.len(), 27);
        assert!(check_covariance(&v, &m, &ma, &inner).unwrap());
    }

    #[test]
    fn hs_family() {
        let f = fun(3, &[10, 11, 12]);
        let af = alpha_endo(&f, &MultiplierSpec::ExactInt(3)).unwrap();
        let (v, mu) = build_hs_rep(p(3), 1, &f, 10).unwrap();
        let ma = nonneg_diagonal(30, &af).unwrap();
        assert!(check_covariance(&v, &mu, &ma, v.codomain()).unwrap());
        assert!(check_covariance(&v, &ma, &ma, v.codomain()).is_err());
    }
}
