//! Case trichotomy for a multiplier, supernatural orders and the groups `H_S`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{factorize, pow_mod};
use crate::error::{Error, Result};
use crate::padic::{valuation, MultiplierSpec, PadicApprox, Prime};
use crate::units::{find_nr, unit_order, DEFAULT_NR_CAP};

/// Which of the three regimes `r` falls into, with the data each one needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Case {
    /// Case I: `|r|_p = 1` and `r` is not a root of unity.
    NonTorsionUnit { nr: u32, order: u64 },
    /// Case II: `r` is a root of unity of the given order.
    RootOfUnity { order: u64 },
    /// Case III: `r = r' p^N` with `N >= 1` and `r'` a unit.
    NonUnit { valuation: u32, unit_part: PadicApprox },
}

impl Case {
    pub fn number(&self) -> u8 {
        match self {
            Case::NonTorsionUnit { .. } => 1,
            Case::RootOfUnity { .. } => 2,
            Case::NonUnit { .. } => 3,
        }
    }

    pub fn roman(&self) -> &'static str {
        ["I", "II", "III"][self.number() as usize - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub p: Prime,
    pub multiplier: MultiplierSpec,
    pub case: Case,
    /// `false` for Digits inputs: the verdict is only consistent up to precision.
    pub exact: bool,
}

impl Classification {
    /// `ord_{Z_p^×}(r)` for Case I.
    pub fn supernatural_order(&self) -> Option<SupernaturalNumber> {
        match self.case {
            Case::NonTorsionUnit { order, .. } => Some(SupernaturalNumber::from_order(self.p, order)),
            _ => None,
        }
    }

    pub fn root_order(&self) -> Option<u64> {
        match self.case {
            Case::RootOfUnity { order } => Some(order),
            _ => None,
        }
    }
}

pub fn classify(p: Prime, r: &MultiplierSpec, precision: u32) -> Result<Classification> {
    classify_with_cap(p, r, precision, DEFAULT_NR_CAP)
}

/// Classify `r`. `precision` sets how many digits of `r'` are reported in
/// Case III for exact inputs; Digits inputs always use their own length.
pub fn classify_with_cap(p: Prime, r: &MultiplierSpec, precision: u32, cap: u32) -> Result<Classification> {
    r.validate(p)?;
    let precision = precision.max(1);
    let case = match r {
        MultiplierSpec::ExactInt(n) => {
            let (v, unit) = valuation(p, *n as i128)?;
            if v > 0 {
                Case::NonUnit { valuation: v, unit_part: PadicApprox::new(p, precision, unit)? }
            } else if *n == -1 {
                // ±1 are the only rational integers that are roots of unity in Z_p.
                Case::RootOfUnity { order: 2 }
            } else {
                let nr = find_nr(p, r, cap)?;
                Case::NonTorsionUnit { nr, order: unit_order(p, nr, r.residue(p, nr)? as i64)? }
            }
        }
        MultiplierSpec::TeichProduct { index, negated } => {
            // Roots of unity are determined by their residue mod p.
            let rho = if *negated { p.get() - index } else { *index };
            Case::RootOfUnity { order: unit_order(p, 1, rho as i64)? }
        }
        MultiplierSpec::Digits(d) => {
            let len = d.len() as u32;
            let x = r.approx(p, len)?;
            let v = x.valuation().ok_or_else(|| Error::ExcludedMultiplier("r = 0 up to precision".into()))?;
            if v > 0 {
                let unit = PadicApprox::new(p, len - v, (x.residue() / p.pow(v)?) as i128)?;
                Case::NonUnit { valuation: v, unit_part: unit }
            } else if x.residue() == 1 {
                return Err(Error::ExcludedMultiplier("r = 1 up to precision".into()));
            } else if pow_mod(x.residue(), p.get() - 1, x.modulus()) == 1 {
                Case::RootOfUnity { order: unit_order(p, len, x.residue() as i64)? }
            } else {
                let nr = find_nr(p, r, cap.min(len))?;
                Case::NonTorsionUnit { nr, order: unit_order(p, nr, r.residue(p, nr)? as i64)? }
            }
        }
    };
    Ok(Classification { p, multiplier: r.clone(), case, exact: r.is_exact() })
}

/// `ord_{Z_p^×}(r)` for a Case I multiplier: `d_{N_r} p^∞`.
pub fn supernatural_order(p: Prime, r: &MultiplierSpec, cap: u32) -> Result<SupernaturalNumber> {
    let c = classify_with_cap(p, r, 1, cap)?;
    c.supernatural_order().ok_or_else(|| {
        Error::WrongCase(format!("supernatural order needs a Case I multiplier, got Case {}", c.case.roman()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

/// A formal product of prime powers with exponents in `N ∪ {∞}`.
/// Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SupernaturalNumber {
    exponents: BTreeMap<u64, Exponent>,
}

impl SupernaturalNumber {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_integer(n: u64) -> Self {
        let mut s = Self::default();
        for (q, e) in factorize(n) {
            s.set(q, Exponent::Finite(e));
        }
        s
    }

    /// `order` with the `p`-part replaced by `p^∞`.
    pub fn from_order(p: Prime, order: u64) -> Self {
        let mut s = Self::from_integer(order);
        s.set(p.get(), Exponent::Infinite);
        s
    }

    pub fn set(&mut self, q: u64, e: Exponent) {
        if e == Exponent::Finite(0) {
            self.exponents.remove(&q);
        } else {
            self.exponents.insert(q, e);
        }
    }

    pub fn exponent(&self, q: u64) -> Exponent {
        self.exponents.get(&q).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, Exponent)> + '_ {
        self.exponents.iter().map(|(&q, &e)| (q, e))
    }

    /// Whether the positive integer `l` divides this supernatural number.
    pub fn is_divided_by(&self, l: &BigInt) -> bool {
        if !l.is_positive() {
            return false;
        }
        let mut rest = l.clone();
        for (&q, &e) in &self.exponents {
            let bq = BigInt::from(q);
            let mut taken = 0u32;
            while (&rest % &bq).is_zero() {
                if let Exponent::Finite(limit) = e {
                    if taken == limit {
                        return false;
                    }
                }
                rest /= &bq;
                taken += 1;
            }
        }
        rest.is_one()
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(q, e)| match e {
                Exponent::Finite(1) => q.to_string(),
                Exponent::Finite(k) => format!("{q}^{k}"),
                Exponent::Infinite => format!("{q}^inf"),
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

impl Serialize for SupernaturalNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `H_S = { k/l : l | S }`, an additive subgroup of Q containing Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSubgroup {
    pub s: SupernaturalNumber,
}

impl HSubgroup {
    pub fn new(s: SupernaturalNumber) -> Self {
        HSubgroup { s }
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        // BigRational is always reduced with a positive denominator.
        self.s.is_divided_by(q.denom())
    }
}

pub fn h_contains(h: &HSubgroup, q: &BigRational) -> bool {
    h.contains(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mul_mod;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn classify_examples() {
        let c = classify(p(3), &MultiplierSpec::ExactInt(2), 4).unwrap();
        assert_eq!(c.case, Case::NonTorsionUnit { nr: 2, order: 6 });
        let c = classify(p(5), &MultiplierSpec::TeichProduct { index: 2, negated: false }, 4).unwrap();
        assert_eq!(c.case, Case::RootOfUnity { order: 4 });
        let c = classify(p(3), &MultiplierSpec::ExactInt(6), 1).unwrap();
        assert_eq!(c.case, Case::NonUnit { valuation: 1, unit_part: PadicApprox::new(p(3), 1, 2).unwrap() });
        let c = classify(p(5), &MultiplierSpec::ExactInt(-1), 4).unwrap();
        assert_eq!(c.case, Case::RootOfUnity { order: 2 });
        assert!(c.exact);
    }

    #[test]
    fn excluded_inputs() {
        assert!(matches!(classify(p(3), &MultiplierSpec::ExactInt(1), 2), Err(Error::ExcludedMultiplier(_))));
        assert!(matches!(classify(p(3), &MultiplierSpec::ExactInt(0), 2), Err(Error::ExcludedMultiplier(_))));
        assert!(matches!(classify(p(5), &MultiplierSpec::Digits(vec![1, 0, 0]), 2), Err(Error::ExcludedMultiplier(_))));
        assert!(matches!(classify(p(5), &MultiplierSpec::Digits(vec![0, 0]), 2), Err(Error::ExcludedMultiplier(_))));
    }

    #[test]
    fn negated_teichmuller_order() {
        // -ω_2 over p = 5 is ω_3, and 3 has order 4 mod 5.
        let c = classify(p(5), &MultiplierSpec::TeichProduct { index: 2, negated: true }, 3).unwrap();
        assert_eq!(c.root_order(), Some(4));
        // -ω_4 = -(-1) = 1 is excluded, -ω_2 over p = 7: -2 = 5 has order 6.
        let c = classify(p(7), &MultiplierSpec::TeichProduct { index: 2, negated: true }, 3).unwrap();
        assert_eq!(c.root_order(), Some(6));
    }

    #[test]
    fn digits_verdicts_are_flagged() {
        // digits of ω_2 mod 5^3
        let w = crate::padic::teichmuller(p(5), 2, 3).unwrap();
        let d = PadicApprox::new(p(5), 3, w as i128).unwrap().digits();
        let c = classify(p(5), &MultiplierSpec::Digits(d), 1).unwrap();
        assert_eq!(c.case, Case::RootOfUnity { order: 4 });
        assert!(!c.exact);
        let c = classify(p(5), &MultiplierSpec::Digits(vec![2, 1, 0]), 1).unwrap();
        assert_eq!(c.case, Case::NonTorsionUnit { nr: 3, order: 20 });
        let c = classify(p(5), &MultiplierSpec::Digits(vec![0, 3, 1]), 1).unwrap();
        assert!(matches!(c.case, Case::NonUnit { valuation: 1, .. }));
    }

    #[test]
    fn root_of_unity_orders_are_exact() {
        for q in [3u64, 5, 7, 11] {
            for i in 2..q {
                for negated in [false, true] {
                    let spec = MultiplierSpec::TeichProduct { index: i, negated };
                    let Ok(c) = classify(p(q), &spec, 1) else { continue };
                    let ord = c.root_order().unwrap();
                    assert_eq!((q - 1) % ord, 0);
                    for level in 1..=4 {
                        let m = q.pow(level);
                        let rr = spec.residue(p(q), level).unwrap();
                        let mut acc = 1u64;
                        for j in 1..=ord {
                            acc = mul_mod(acc, rr, m);
                            assert_eq!(acc == 1, j == ord, "p={q} i={i} j={j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn supernatural_examples() {
        let s = supernatural_order(p(3), &MultiplierSpec::ExactInt(2), 64).unwrap();
        assert_eq!(s.to_string(), "2*3^inf");
        let s = supernatural_order(p(5), &MultiplierSpec::ExactInt(7), 64).unwrap();
        assert_eq!(s.to_string(), "2^2*5^inf");
        assert_eq!(s.exponent(2), Exponent::Finite(2));
        assert_eq!(s.exponent(5), Exponent::Infinite);
        let s = supernatural_order(p(5), &MultiplierSpec::ExactInt(2), 64).unwrap();
        assert_eq!(s.to_string(), "2^2*5^inf");
        assert!(matches!(supernatural_order(p(3), &MultiplierSpec::ExactInt(6), 64), Err(Error::WrongCase(_))));
    }

    #[test]
    fn h_membership_examples() {
        let h = HSubgroup::new(SupernaturalNumber::from_order(p(3), 6));
        assert!(h_contains(&h, &ratio(1, 9)));
        assert!(!h_contains(&h, &ratio(1, 4)));
        assert!(h_contains(&h, &ratio(5, 1)));
        assert!(h_contains(&h, &ratio(7, 2 * 3i64.pow(20))));
        assert!(!h_contains(&h, &ratio(1, 5)));
        assert!(HSubgroup::new(SupernaturalNumber::one()).contains(&ratio(-3, 1)));
    }

    proptest! {
        #[test]
        fn h_closed_under_sum_and_difference(
            a in -200i64..200, b in 1u32..6, c in -200i64..200, d in 1u32..6,
            e2 in 0u32..3, e3 in 0u32..3,
        ) {
            let mut s = SupernaturalNumber::from_integer(2u64.pow(e2) * 3u64.pow(e3));
            s.set(5, Exponent::Infinite);
            let h = HSubgroup::new(s);
            let x = ratio(a, 2i64.pow(b % 3) * 5i64.pow(b));
            let y = ratio(c, 3i64.pow(d % 3) * 5i64.pow(d));
            if h.contains(&x) && h.contains(&y) {
                prop_assert!(h.contains(&(&x + &y)));
                prop_assert!(h.contains(&(&x - &y)));
                prop_assert!(h.contains(&-x.clone()));
            }
        }
    }
}
