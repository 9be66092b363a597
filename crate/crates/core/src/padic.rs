//! Fixed-precision p-adic integers, multipliers and Teichmüller lifts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{checked_power, inv_mod, is_prime, mul_mod, normalize, pow_mod};
use crate::error::{Error, Result};

/// An odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^level`, failing when it leaves the 63-bit range.
    pub fn pow(self, level: u32) -> Result<u64> {
        checked_power(self.0, level)
    }

    /// Odd primes up to and including `bound`.
    pub fn up_to(bound: u64) -> Vec<Prime> {
        (3..=bound).filter_map(|p| Prime::new(p).ok()).collect()
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A p-adic integer known modulo `p^precision`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    p: Prime,
    precision: u32,
    residue: u64,
}

impl PadicApprox {
    pub fn new(p: Prime, precision: u32, value: i128) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        let m = p.pow(precision)?;
        Ok(PadicApprox { p, precision, residue: normalize(value, m) })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        // Checked at construction.
        self.p.0.pow(self.precision)
    }

    /// The image under reduction `Z/p^N -> Z/p^M` for `M <= N`.
    pub fn reduce(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::InsufficientPrecision { needed: precision, available: self.precision });
        }
        PadicApprox::new(self.p, precision, self.residue as i128)
    }

    pub fn mul(&self, other: &PadicApprox) -> Result<Self> {
        let prec = self.precision.min(other.precision);
        let a = self.reduce(prec)?;
        let b = other.reduce(prec)?;
        Ok(PadicApprox { residue: mul_mod(a.residue, b.residue, a.modulus()), ..a })
    }

    pub fn is_unit(&self) -> bool {
        !self.residue.is_multiple_of(self.p.0)
    }

    /// `None` when the value is zero at this precision.
    pub fn valuation(&self) -> Option<u32> {
        if self.residue == 0 {
            return None;
        }
        let mut v = 0;
        let mut r = self.residue;
        while r.is_multiple_of(self.p.0) {
            r /= self.p.0;
            v += 1;
        }
        Some(v)
    }

    /// Base-p digits, least significant first, `precision` of them.
    pub fn digits(&self) -> Vec<u64> {
        let mut r = self.residue;
        (0..self.precision)
            .map(|_| {
                let d = r % self.p.0;
                r /= self.p.0;
                d
            })
            .collect()
    }
}

/// The multiplier `r` of the endomorphism, in one of three input forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MultiplierSpec {
    /// A rational integer other than 0 and 1.
    ExactInt(i64),
    /// `±ω_index`, a root of unity.
    TeichProduct { index: u64, negated: bool },
    /// Base-p digits, least significant first. Carries no exactness claim.
    Digits(Vec<u64>),
}

impl MultiplierSpec {
    pub fn exact(n: i64) -> Result<Self> {
        if n == 0 || n == 1 {
            return Err(Error::ExcludedMultiplier(format!("r = {n}")));
        }
        Ok(MultiplierSpec::ExactInt(n))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, MultiplierSpec::Digits(_))
    }

    /// Precision available for this multiplier (`None` means unbounded).
    pub fn precision(&self) -> Option<u32> {
        match self {
            MultiplierSpec::Digits(d) => Some(d.len() as u32),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            MultiplierSpec::ExactInt(n) => Some(*n),
            _ => None,
        }
    }

    /// Check the form against `p`.
    pub fn validate(&self, p: Prime) -> Result<()> {
        match self {
            MultiplierSpec::ExactInt(n) if *n == 0 || *n == 1 => Err(Error::ExcludedMultiplier(format!("r = {n}"))),
            MultiplierSpec::ExactInt(_) => Ok(()),
            MultiplierSpec::TeichProduct { index, negated } => {
                if *index < 2 || *index >= p.get() {
                    return Err(Error::InvalidArgument(format!(
                        "teichmuller index must lie in [2, {}], got {index}",
                        p.get() - 1
                    )));
                }
                if *negated && *index == p.get() - 1 {
                    return Err(Error::ExcludedMultiplier("-teich(p-1) = 1".into()));
                }
                Ok(())
            }
            MultiplierSpec::Digits(d) => {
                if d.is_empty() {
                    return Err(Error::InvalidArgument("empty digit list".into()));
                }
                if let Some(bad) = d.iter().find(|&&x| x >= p.get()) {
                    return Err(Error::InvalidArgument(format!("digit {bad} is not below p")));
                }
                Ok(())
            }
        }
    }

    /// The residue of `r` modulo `p^level`.
    pub fn residue(&self, p: Prime, level: u32) -> Result<u64> {
        self.validate(p)?;
        let m = p.pow(level)?;
        if level == 0 {
            return Ok(0);
        }
        match self {
            MultiplierSpec::ExactInt(n) => Ok(normalize(*n as i128, m)),
            MultiplierSpec::TeichProduct { index, negated } => {
                let w = teichmuller(p, *index, level)?;
                Ok(if *negated { normalize(-(w as i128), m) } else { w })
            }
            MultiplierSpec::Digits(d) => {
                if level as usize > d.len() {
                    return Err(Error::InsufficientPrecision { needed: level, available: d.len() as u32 });
                }
                let mut acc = 0u64;
                for &digit in d[..level as usize].iter().rev() {
                    acc = acc * p.get() + digit;
                }
                Ok(acc)
            }
        }
    }

    pub fn approx(&self, p: Prime, level: u32) -> Result<PadicApprox> {
        PadicApprox::new(p, level, self.residue(p, level)? as i128)
    }

    /// `v_p(r)`. Errors for a Digits input that is zero at its precision.
    pub fn valuation(&self, p: Prime) -> Result<u32> {
        self.validate(p)?;
        match self {
            MultiplierSpec::ExactInt(n) => Ok(valuation(p, *n as i128)?.0),
            MultiplierSpec::TeichProduct { .. } => Ok(0),
            MultiplierSpec::Digits(d) => d
                .iter()
                .position(|&x| x != 0)
                .map(|i| i as u32)
                .ok_or_else(|| Error::ExcludedMultiplier("r = 0 up to precision".into())),
        }
    }
}

impl fmt::Display for MultiplierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplierSpec::ExactInt(n) => write!(f, "{n}"),
            MultiplierSpec::TeichProduct { index, negated } => {
                write!(f, "{}teich({index})", if *negated { "-" } else { "" })
            }
            MultiplierSpec::Digits(d) => {
                let parts: Vec<String> = d.iter().map(u64::to_string).collect();
                write!(f, "digits:[{}]", parts.join(","))
            }
        }
    }
}

impl FromStr for MultiplierSpec {
    type Err = Error;

    /// Grammar: a signed integer, `teich(i)`, `-teich(i)`, or `digits:[d0,d1,...]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad multiplier {s:?}"));
        if let Some(list) = s.strip_prefix("digits:") {
            let inner = list.trim().strip_prefix('[').and_then(|l| l.strip_suffix(']')).ok_or_else(bad)?;
            let digits =
                inner.split(',').map(|d| d.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
            return Ok(MultiplierSpec::Digits(digits));
        }
        let (negated, rest) = match s.strip_prefix('-') {
            Some(rest) if rest.starts_with("teich") => (true, rest),
            _ => (false, s),
        };
        if let Some(arg) = rest.strip_prefix("teich(").and_then(|a| a.strip_suffix(')')) {
            let index = arg.trim().parse::<u64>().map_err(|_| bad())?;
            return Ok(MultiplierSpec::TeichProduct { index, negated });
        }
        let n = s.parse::<i64>().map_err(|_| bad())?;
        MultiplierSpec::exact(n)
    }
}

/// Split `x = p^L * unit` with `p` not dividing `unit`.
pub fn valuation(p: Prime, x: i128) -> Result<(u32, i128)> {
    if x == 0 {
        return Err(Error::InfiniteValuation);
    }
    let p = p.get() as i128;
    let (mut l, mut u) = (0u32, x);
    while u % p == 0 {
        u /= p;
        l += 1;
    }
    Ok((l, u))
}

/// The Teichmüller representative `ω_i mod p^level`: the unique residue with
/// `ω^(p-1) = 1` and `ω ≡ i (mod p)`.
///
/// Computed as `i^(p^(level-1))`, i.e. `level - 1` applications of `a -> a^p`.
pub fn teichmuller(p: Prime, i: u64, level: u32) -> Result<u64> {
    if level == 0 {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    if i.is_multiple_of(p.get()) {
        return Err(Error::NotAUnit(i as i128));
    }
    let m = p.pow(level)?;
    let mut a = i % p.get();
    for _ in 1..level {
        a = pow_mod(a, p.get(), m);
    }
    Ok(a)
}

/// `x mod m` for a rational whose denominator is prime to `p`.
pub fn rational_residue(p: Prime, x: &BigRational, m: u64) -> Result<u64> {
    let bm = BigInt::from(m);
    let num = x.numer().mod_floor(&bm).to_u64().unwrap_or(0);
    let den = x.denom().mod_floor(&bm).to_u64().unwrap_or(0);
    if (x.denom() % BigInt::from(p.get())).is_zero() {
        return Err(Error::InvalidArgument(format!("{x} is not a p-adic integer")));
    }
    let inv = inv_mod(den, m).ok_or_else(|| Error::InvalidArgument(format!("{x} is not a p-adic integer")))?;
    Ok(mul_mod(num, inv, m))
}

/// One step of the division algorithm `x = q*r + c` with `0 <= c < p^N`,
/// where `v_p(r) = N`. `x` may be any rational without `p` in its
/// denominator; `q` is then again such a rational.
pub fn divide_step(p: Prime, n: u32, r: &BigInt, x: &BigRational) -> Result<(BigRational, u64)> {
    if r.is_zero() {
        return Err(Error::ExcludedMultiplier("r = 0".into()));
    }
    let found = {
        let bp = BigInt::from(p.get());
        let mut v = 0u32;
        let mut rr = r.clone();
        while (&rr % &bp).is_zero() {
            rr /= &bp;
            v += 1;
        }
        v
    };
    if found != n || n == 0 {
        return Err(Error::MultiplierValuationMismatch { expected: n, found });
    }
    let c = rational_residue(p, x, p.pow(n)?)?;
    let q = (x - BigRational::from_integer(BigInt::from(c))) / BigRational::from_integer(r.clone());
    Ok((q, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(1).is_err());
        assert_eq!(Prime::up_to(7).iter().map(|q| q.get()).collect::<Vec<_>>(), vec![3, 5, 7]);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(p(5), 50).unwrap(), (2, 2));
        assert_eq!(valuation(p(3), 7).unwrap(), (0, 7));
        assert_eq!(valuation(p(5), 1715).unwrap(), (1, 343));
        assert_eq!(valuation(p(3), -18).unwrap(), (2, -2));
        assert_eq!(valuation(p(3), 0), Err(Error::InfiniteValuation));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(teichmuller(p(5), 1, 4).unwrap(), 1);
        assert_eq!(teichmuller(p(5), 4, 2).unwrap(), 24);
        assert_eq!(teichmuller(p(5), 2, 2).unwrap(), 7);
        assert!(matches!(teichmuller(p(5), 5, 2), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn divide_step_examples() {
        let six = BigInt::from(6);
        assert_eq!(divide_step(p(3), 1, &six, &int(7)).unwrap(), (int(1), 1));
        assert_eq!(divide_step(p(3), 1, &six, &int(0)).unwrap(), (int(0), 0));
        assert_eq!(divide_step(p(3), 1, &six, &int(25)).unwrap(), (int(4), 1));
        // 5 = (1/2)*6 + 2 in Z_3
        assert_eq!(divide_step(p(3), 1, &six, &int(5)).unwrap(), (BigRational::new(1.into(), 2.into()), 2));
        assert!(matches!(
            divide_step(p(3), 2, &six, &int(5)),
            Err(Error::MultiplierValuationMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn reduction_is_compatible() {
        let x = PadicApprox::new(p(3), 6, 1234).unwrap();
        let direct = x.reduce(2).unwrap();
        let staged = x.reduce(4).unwrap().reduce(2).unwrap();
        assert_eq!(direct, staged);
        assert_eq!(direct.residue(), 1234 % 9);
        assert!(x.reduce(7).is_err());
    }

    #[test]
    fn negative_inputs_normalize() {
        let m1 = PadicApprox::new(p(5), 3, -1).unwrap();
        assert_eq!(m1.residue(), 124);
        assert_eq!(m1.digits(), vec![4, 4, 4]);
    }

    #[test]
    fn multiplier_grammar() {
        assert_eq!("2".parse::<MultiplierSpec>().unwrap(), MultiplierSpec::ExactInt(2));
        assert_eq!("-1".parse::<MultiplierSpec>().unwrap(), MultiplierSpec::ExactInt(-1));
        assert_eq!(
            "-teich(3)".parse::<MultiplierSpec>().unwrap(),
            MultiplierSpec::TeichProduct { index: 3, negated: true }
        );
        assert_eq!("digits:[1, 2,0]".parse::<MultiplierSpec>().unwrap(), MultiplierSpec::Digits(vec![1, 2, 0]));
        assert!("1".parse::<MultiplierSpec>().is_err());
        assert!("0".parse::<MultiplierSpec>().is_err());
        assert!("teich(x)".parse::<MultiplierSpec>().is_err());
        for s in ["7", "teich(2)", "-teich(4)", "digits:[3,0,1]"] {
            assert_eq!(s.parse::<MultiplierSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn multiplier_residues() {
        let t = MultiplierSpec::TeichProduct { index: 2, negated: true };
        assert_eq!(t.residue(p(5), 2).unwrap(), 25 - 7);
        let d = MultiplierSpec::Digits(vec![2, 1]);
        assert_eq!(d.residue(p(5), 2).unwrap(), 7);
        assert!(matches!(d.residue(p(5), 3), Err(Error::InsufficientPrecision { .. })));
        assert!(MultiplierSpec::Digits(vec![5]).residue(p(5), 1).is_err());
        assert!(MultiplierSpec::TeichProduct { index: 4, negated: true }.validate(p(5)).is_err());
        assert_eq!(MultiplierSpec::Digits(vec![0, 0, 3]).valuation(p(5)).unwrap(), 2);
    }
}
