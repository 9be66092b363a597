//! r-adic digit expansions for a non-unit `r` and the representations on
//! `ℓ²(D_r^(N))` and `ℓ²(Z≥0)` that they intertwine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::LocallyConstantFn;
use crate::operator::{BasisIndex, TruncatedOp, Word};
use crate::padic::{divide_step, MultiplierSpec, Prime};
use crate::scalar::ExactScalar;

/// Digits `0..p^N` against an exact integer `r` with `v_p(r) = N >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DigitSystem {
    pub p: Prime,
    pub n: u32,
    pub r: i64,
    /// `s = p^N`, the digit base.
    pub s: u64,
}

/// A (possibly truncated) expansion `x = Σ x_i r^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub word: Word,
    /// Whether the remainder reached zero within the length bound.
    pub terminated: bool,
}

impl DigitSystem {
    pub fn new(p: Prime, r: &MultiplierSpec) -> Result<Self> {
        let n = r.valuation(p)?;
        if n == 0 {
            return Err(Error::WrongCase("digit systems need a non-unit multiplier".into()));
        }
        let r = r
            .as_integer()
            .ok_or_else(|| Error::InvalidArgument("digit systems need an exact integer multiplier".into()))?;
        Ok(DigitSystem { p, n, r, s: p.pow(n)? })
    }

    /// Number of words of length at most `max_len`, i.e. `s^max_len`.
    pub fn count(&self, max_len: u32) -> Result<u64> {
        self.s
            .checked_pow(max_len)
            .filter(|&c| c <= 1 << 24)
            .ok_or_else(|| Error::InvalidArgument(format!("too many words of length {max_len}")))
    }

    /// The word with base-`s` digits of `k`, i.e. the inverse of [`Self::hs_index`].
    pub fn word_of_index(&self, mut k: u64) -> Word {
        let mut digits = Vec::new();
        while k > 0 {
            digits.push(k % self.s);
            k /= self.s;
        }
        Word::new(digits)
    }

    /// All canonical words of length at most `max_len`, ordered by `k(x)`.
    pub fn words(&self, max_len: u32) -> Result<Vec<Word>> {
        Ok((0..self.count(max_len)?).map(|k| self.word_of_index(k)).collect())
    }

    /// `Σ x_i r^i`.
    pub fn value(&self, w: &Word) -> Result<i128> {
        let overflow = || Error::InvalidArgument("word value overflows".into());
        let mut acc: i128 = 0;
        for &d in w.digits().iter().rev() {
            acc = acc.checked_mul(self.r as i128).and_then(|a| a.checked_add(d as i128)).ok_or_else(overflow)?;
        }
        Ok(acc)
    }

    /// `k(x) = Σ x_i s^i`.
    pub fn hs_index(&self, w: &Word) -> u64 {
        w.digits().iter().rev().fold(0, |acc, &d| acc * self.s + d)
    }

    /// Expand `x` by repeated division `x = q r + c`.
    pub fn expand(&self, x: i128, max_len: u32) -> Result<Expansion> {
        let r = BigInt::from(self.r);
        let mut q = BigRational::from_integer(BigInt::from(x));
        let mut digits = Vec::new();
        while !q.is_zero() && (digits.len() as u32) < max_len {
            let (next, c) = divide_step(self.p, self.n, &r, &q)?;
            digits.push(c);
            q = next;
        }
        Ok(Expansion { word: Word::new(digits), terminated: q.is_zero() })
    }

    /// Whether `(x_0..x_(n-1)) -> Σ x_i r^i mod s^n` is a bijection onto `Z/s^n`.
    pub fn is_bijective_at(&self, len: u32) -> Result<bool> {
        let total = self.count(len)?;
        let mut hit = vec![false; total as usize];
        for w in self.words(len)? {
            let y = self.value(&w)?.rem_euclid(total as i128) as usize;
            if std::mem::replace(&mut hit[y], true) {
                return Ok(false);
            }
        }
        Ok(hit.into_iter().all(|b| b))
    }
}

/// Position of the highest nonzero digit; 0 for the zero word.
pub fn kappa(w: &Word) -> u64 {
    w.len() as u64 - 1
}

fn word_basis(words: Vec<Word>) -> Vec<BasisIndex> {
    words.into_iter().map(BasisIndex::Word).collect()
}

/// `v_r E_x = E_(rx)` from words of length `<= max_len` into words of length
/// `<= max_len + 1`, and `m E_x = f(x) E_x`.
pub fn build_digit_rep(sys: &DigitSystem, f: &LocallyConstantFn, max_len: u32) -> Result<(TruncatedOp, TruncatedOp)> {
    let domain = word_basis(sys.words(max_len)?);
    let codomain = word_basis(sys.words(max_len + 1)?);
    let v = TruncatedOp::from_images(domain.clone(), codomain, |b| match b {
        BasisIndex::Word(w) => Some(BasisIndex::Word(w.shifted())),
        _ => None,
    })?;
    let m = word_diagonal(sys, domain, f)?;
    Ok((v, m))
}

/// Diagonal `E_x -> f(x) E_x` over a word basis.
pub fn word_diagonal(sys: &DigitSystem, basis: Vec<BasisIndex>, f: &LocallyConstantFn) -> Result<TruncatedOp> {
    let mut values = Vec::with_capacity(basis.len());
    for b in &basis {
        let BasisIndex::Word(w) = b else {
            return Err(Error::BasisMismatch(format!("{b} is not a word")));
        };
        values.push(f.eval_int(sys.value(w)?).clone());
    }
    let mut it = values.into_iter();
    TruncatedOp::diagonal(basis, |_| it.next().expect("one value per index"))
}

/// Diagonal `E_l -> f(l) E_l` over `NonNeg(0..=last)`.
pub fn nonneg_diagonal(last: u64, f: &LocallyConstantFn) -> Result<TruncatedOp> {
    TruncatedOp::diagonal((0..=last).map(BasisIndex::NonNeg).collect(), |b| match b {
        BasisIndex::NonNeg(l) => f.eval_int(*l as i128).clone(),
        _ => ExactScalar::zero(),
    })
}

/// `V E_l = E_(sl)` with `s = p^N` from `NonNeg(0..=L)` into `NonNeg(0..=sL)`,
/// and `μ_f E_l = f(l) E_l`.
pub fn build_hs_rep(p: Prime, n: u32, f: &LocallyConstantFn, cutoff: u64) -> Result<(TruncatedOp, TruncatedOp)> {
    if f.prime() != p {
        return Err(Error::InvalidArgument("prime mismatch".into()));
    }
    let s = p.pow(n)?;
    let top = s
        .checked_mul(cutoff)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| Error::InvalidArgument("cutoff too large".into()))?;
    let domain: Vec<BasisIndex> = (0..=cutoff).map(BasisIndex::NonNeg).collect();
    let codomain: Vec<BasisIndex> = (0..=top).map(BasisIndex::NonNeg).collect();
    let v = TruncatedOp::from_images(domain, codomain, |b| match b {
        BasisIndex::NonNeg(l) => Some(BasisIndex::NonNeg(s * l)),
        _ => None,
    })?;
    Ok((v, nonneg_diagonal(cutoff, f)?))
}

/// `U E_(k(x)) = E_x` from `NonNeg(0..s^max_len)` onto words of length `<= max_len`.
pub fn intertwiner(sys: &DigitSystem, max_len: u32) -> Result<TruncatedOp> {
    let count = sys.count(max_len)?;
    let domain: Vec<BasisIndex> = (0..count).map(BasisIndex::NonNeg).collect();
    let codomain = word_basis(sys.words(max_len)?);
    TruncatedOp::from_images(domain, codomain, |b| match b {
        BasisIndex::NonNeg(k) => Some(BasisIndex::Word(sys.word_of_index(*k))),
        _ => None,
    })
}

/// Outcome of comparing the digit representation with `HS(s)` through `U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub words: usize,
    pub bijective: bool,
    pub kappa_grading: bool,
    pub intertwines_shift: bool,
    pub conjugates_diagonal: bool,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.kappa_grading && self.intertwines_shift && self.conjugates_diagonal
    }
}

/// Check `U V = v_r U`, `U μ_f U* = M_(f∘k)`, the κ-grading and the digit
/// bijection at every length up to `max_len`.
pub fn check_equivalence(sys: &DigitSystem, f: &LocallyConstantFn, max_len: u32) -> Result<EquivalenceReport> {
    let mut bijective = true;
    for len in 1..=max_len {
        bijective &= sys.is_bijective_at(len)?;
    }
    let words = sys.words(max_len)?;
    let kappa_grading = words.iter().filter(|w| !w.is_zero()).all(|w| kappa(&w.shifted()) == kappa(w) + 1);

    let last = sys.count(max_len)? - 1;
    let (big_v, mu) = build_hs_rep(sys.p, sys.n, f, last)?;
    let (v_r, _) = build_digit_rep(sys, f, max_len)?;
    let u = intertwiner(sys, max_len)?;
    let u_big = intertwiner(sys, max_len + 1)?.restrict_domain(big_v.codomain().to_vec())?;
    let lhs = u_big.compose(&big_v)?;
    let rhs = v_r.compose(&u)?;
    let intertwines_shift = lhs == rhs.reindex(lhs.domain().to_vec(), lhs.codomain().to_vec())?;

    let conj = u.compose(&mu)?.compose(&u.adjoint())?;
    let expected = TruncatedOp::diagonal(word_basis(words), |b| match b {
        BasisIndex::Word(w) => f.eval_int(sys.hs_index(w) as i128).clone(),
        _ => ExactScalar::zero(),
    })?;
    let conjugates_diagonal = conj == expected;
    Ok(EquivalenceReport { words: u.domain().len(), bijective, kappa_grading, intertwines_shift, conjugates_diagonal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn sys(q: u64, r: i64) -> DigitSystem {
        DigitSystem::new(p(q), &MultiplierSpec::ExactInt(r)).unwrap()
    }

    fn w(d: &[u64]) -> Word {
        Word::new(d.to_vec())
    }

    fn ints(vals: &[i64]) -> Vec<ExactScalar> {
        vals.iter().map(|&v| ExactScalar::from_int(v)).collect()
    }

    #[test]
    fn expansions() {
        let s = sys(3, 6);
        assert_eq!(s.expand(7, 5).unwrap(), Expansion { word: w(&[1, 1]), terminated: true });
        assert_eq!(s.expand(0, 5).unwrap(), Expansion { word: Word::zero(), terminated: true });
        assert_eq!(s.expand(13, 5).unwrap(), Expansion { word: w(&[1, 2]), terminated: true });
        let neg = s.expand(-1, 4).unwrap();
        assert!(!neg.terminated);
        assert_eq!(neg.word.digits(), &[2, 1, 2]);
        // Partial sums agree with x modulo s^n even when truncated.
        assert_eq!(s.value(&neg.word).unwrap().rem_euclid(81), 80);
        let s9 = sys(3, 18);
        assert_eq!(s9.s, 9);
        let e = s9.expand(1063, 4).unwrap();
        assert!(e.terminated);
        assert_eq!(e.word.digits(), &[1, 5, 3]);
        assert!(!s9.expand(100, 4).unwrap().terminated);
    }

    #[test]
    fn rejects_units_and_inexact() {
        assert!(matches!(DigitSystem::new(p(3), &MultiplierSpec::ExactInt(2)), Err(Error::WrongCase(_))));
        assert!(DigitSystem::new(p(3), &MultiplierSpec::Digits(vec![0, 2])).is_err());
    }

    #[test]
    fn words_and_indices() {
        let s = sys(3, 6);
        let words = s.words(2).unwrap();
        assert_eq!(words.len(), 9);
        assert_eq!(words[0], Word::zero());
        assert_eq!(s.hs_index(&w(&[1, 2])), 7);
        assert_eq!(s.hs_index(&w(&[1, 1])), 4);
        assert_eq!(s.hs_index(&Word::zero()), 0);
        assert_eq!(s.word_of_index(7), w(&[1, 2]));
        assert_eq!(s.value(&w(&[0, 1, 1])).unwrap(), 42);
        for len in 1..=3 {
            assert!(s.is_bijective_at(len).unwrap());
        }
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&w(&[1, 2])), 1);
        assert_eq!(kappa(&Word::zero()), 0);
        assert_eq!(kappa(&w(&[1, 2]).shifted()), 2);
    }

    #[test]
    fn digit_rep_examples() {
        let s = sys(3, 6);
        let f = LocallyConstantFn::new(p(3), 1, ints(&[10, 11, 12])).unwrap();
        let (v, m) = build_digit_rep(&s, &f, 2).unwrap();
        let e = |d: &[u64]| BasisIndex::Word(w(d));
        assert_eq!(v.column(&e(&[1, 1])).unwrap(), vec![(e(&[0, 1, 1]), ExactScalar::one())]);
        assert!(v.adjoint().compose(&v).unwrap().is_identity_on(v.domain()).unwrap());
        assert_eq!(m.get(&e(&[1, 2]), &e(&[1, 2])), ExactScalar::from_int(11));
        assert_eq!(v.codomain().len(), 27);
    }

    #[test]
    fn hs_rep_examples() {
        let f = LocallyConstantFn::constant(p(3), ExactScalar::one());
        let (v, mu) = build_hs_rep(p(3), 1, &f, 4).unwrap();
        let e = BasisIndex::NonNeg;
        assert_eq!(v.column(&e(1)).unwrap(), vec![(e(3), ExactScalar::one())]);
        assert_eq!(v.column(&e(2)).unwrap(), vec![(e(6), ExactScalar::one())]);
        assert!(v.adjoint().column(&e(2)).unwrap().is_empty());
        assert!(v.adjoint().compose(&v).unwrap().is_identity_on(v.domain()).unwrap());
        assert_eq!(mu, TruncatedOp::identity(v.domain().to_vec()).unwrap());
    }

    #[test]
    fn intertwiner_pairs() {
        let s = sys(3, 6);
        let u = intertwiner(&s, 2).unwrap();
        let pair = |k: u64, d: &[u64]| u.get(&BasisIndex::Word(w(d)), &BasisIndex::NonNeg(k)) == ExactScalar::one();
        assert!(pair(7, &[1, 2]) && pair(0, &[0]) && pair(4, &[1, 1]));
        assert_eq!(u.nnz(), 9);
    }

    #[test]
    fn equivalence() {
        for (q, r) in [(3, 6), (5, 10), (3, -3)] {
            let s = sys(q, r);
            let f = LocallyConstantFn::from_fn(p(q), 2, |j| ExactScalar::from_int(j as i64 * 7 - 3)).unwrap();
            let rep = check_equivalence(&s, &f, 2).unwrap();
            assert!(rep.holds(), "{q} {r}: {rep:?}");
        }
    }
}
