//! Finite sections of operators between labelled bases, with exact entries.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// A base-`p^N` word `(x_0, x_1, ...)`, least significant first, with no
/// trailing zero digits except the single-digit zero word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(Vec<u64>);

impl Word {
    pub fn new(mut digits: Vec<u64>) -> Self {
        while digits.len() > 1 && digits.last() == Some(&0) {
            digits.pop();
        }
        if digits.is_empty() {
            digits.push(0);
        }
        Word(digits)
    }

    pub fn zero() -> Self {
        Word(vec![0])
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0]
    }

    /// Multiplication by the base: prepend a zero digit.
    pub fn shifted(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut d = Vec::with_capacity(self.0.len() + 1);
        d.push(0);
        d.extend_from_slice(&self.0);
        Word(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    /// `E_k` in a window of `ℓ²(Z)`.
    Win(i64),
    /// `E_k` in `ℓ²(Z/nZ)`.
    Cyc { k: u64, n: u64 },
    /// `E_l` in `ℓ²(Z≥0)`.
    NonNeg(u64),
    /// `E_x` for `x = Σ x_i r^i`.
    Word(Word),
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Win(k) => write!(f, "W:{k}"),
            BasisIndex::Cyc { k, n } => write!(f, "C:{k}/{n}"),
            BasisIndex::NonNeg(l) => write!(f, "N:{l}"),
            BasisIndex::Word(w) => {
                let parts: Vec<String> = w.digits().iter().map(u64::to_string).collect();
                write!(f, "D:{}", parts.join("."))
            }
        }
    }
}

impl FromStr for BasisIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad basis label {s:?}"));
        let (tag, body) = s.split_once(':').ok_or_else(bad)?;
        match tag {
            "W" => body.parse().map(BasisIndex::Win).map_err(|_| bad()),
            "N" => body.parse().map(BasisIndex::NonNeg).map_err(|_| bad()),
            "C" => {
                let (k, n) = body.split_once('/').ok_or_else(bad)?;
                let k: u64 = k.parse().map_err(|_| bad())?;
                let n: u64 = n.parse().map_err(|_| bad())?;
                if k >= n {
                    return Err(bad());
                }
                Ok(BasisIndex::Cyc { k, n })
            }
            "D" => {
                let digits =
                    body.split('.').map(|d| d.parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
                let w = Word::new(digits.clone());
                if w.digits() != digits.as_slice() {
                    return Err(Error::Parse(format!("non-canonical word {s:?}")));
                }
                Ok(BasisIndex::Word(w))
            }
            _ => Err(bad()),
        }
    }
}

/// A rectangular matrix from `span(domain)` to `span(codomain)`.
#[derive(Debug, Clone)]
pub struct TruncatedOp {
    domain: Vec<BasisIndex>,
    codomain: Vec<BasisIndex>,
    dom_pos: HashMap<BasisIndex, usize>,
    cod_pos: HashMap<BasisIndex, usize>,
    /// `(row, col)` positions into `codomain`/`domain`; zeros are never stored.
    entries: BTreeMap<(usize, usize), ExactScalar>,
}

fn positions(basis: &[BasisIndex]) -> Result<HashMap<BasisIndex, usize>> {
    let mut map = HashMap::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        if map.insert(b.clone(), i).is_some() {
            return Err(Error::BasisMismatch(format!("duplicate basis index {b}")));
        }
    }
    Ok(map)
}

impl TruncatedOp {
    pub fn zero(domain: Vec<BasisIndex>, codomain: Vec<BasisIndex>) -> Result<Self> {
        Ok(TruncatedOp {
            dom_pos: positions(&domain)?,
            cod_pos: positions(&codomain)?,
            domain,
            codomain,
            entries: BTreeMap::new(),
        })
    }

    pub fn identity(basis: Vec<BasisIndex>) -> Result<Self> {
        Self::diagonal(basis, |_| ExactScalar::one())
    }

    pub fn diagonal(basis: Vec<BasisIndex>, mut value: impl FnMut(&BasisIndex) -> ExactScalar) -> Result<Self> {
        let mut op = Self::zero(basis.clone(), basis)?;
        for i in 0..op.domain.len() {
            let v = value(&op.domain[i]);
            op.put(i, i, v);
        }
        Ok(op)
    }

    /// Partial permutation `E_b -> E_image(b)`; images outside the codomain
    /// are dropped (that is the truncation).
    pub fn from_images(
        domain: Vec<BasisIndex>,
        codomain: Vec<BasisIndex>,
        mut image: impl FnMut(&BasisIndex) -> Option<BasisIndex>,
    ) -> Result<Self> {
        let mut op = Self::zero(domain, codomain)?;
        for j in 0..op.domain.len() {
            if let Some(target) = image(&op.domain[j]) {
                if let Some(&i) = op.cod_pos.get(&target) {
                    op.put(i, j, ExactScalar::one());
                }
            }
        }
        Ok(op)
    }

    fn put(&mut self, i: usize, j: usize, v: ExactScalar) {
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn set(&mut self, row: &BasisIndex, col: &BasisIndex, v: ExactScalar) -> Result<()> {
        let i = *self.cod_pos.get(row).ok_or_else(|| Error::BasisMismatch(format!("row {row} not in codomain")))?;
        let j = *self.dom_pos.get(col).ok_or_else(|| Error::BasisMismatch(format!("column {col} not in domain")))?;
        self.put(i, j, v);
        Ok(())
    }

    pub fn get(&self, row: &BasisIndex, col: &BasisIndex) -> ExactScalar {
        match (self.cod_pos.get(row), self.dom_pos.get(col)) {
            (Some(&i), Some(&j)) => self.entries.get(&(i, j)).cloned().unwrap_or_default(),
            _ => ExactScalar::zero(),
        }
    }

    pub fn domain(&self) -> &[BasisIndex] {
        &self.domain
    }

    pub fn codomain(&self) -> &[BasisIndex] {
        &self.codomain
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (&BasisIndex, &BasisIndex, &ExactScalar)> {
        self.entries.iter().map(|(&(i, j), v)| (&self.codomain[i], &self.domain[j], v))
    }

    pub fn is_square(&self) -> bool {
        self.domain == self.codomain
    }

    fn same_set(a: &[BasisIndex], b_pos: &HashMap<BasisIndex, usize>) -> bool {
        a.len() == b_pos.len() && a.iter().all(|x| b_pos.contains_key(x))
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &TruncatedOp) -> Result<TruncatedOp> {
        if !Self::same_set(&rhs.codomain, &self.dom_pos) {
            return Err(Error::BasisMismatch("composition needs rhs codomain = lhs domain".into()));
        }
        let mut by_col: HashMap<usize, Vec<(usize, &ExactScalar)>> = HashMap::new();
        for (&(i, k), v) in &self.entries {
            by_col.entry(k).or_default().push((i, v));
        }
        let mut acc: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        for (&(k_rhs, j), b) in &rhs.entries {
            let k = self.dom_pos[&rhs.codomain[k_rhs]];
            if let Some(col) = by_col.get(&k) {
                for &(i, a) in col {
                    let slot = acc.entry((i, j)).or_default();
                    *slot = &*slot + &(a * b);
                }
            }
        }
        let mut out = Self::zero(rhs.domain.clone(), self.codomain.clone())?;
        for ((i, j), v) in acc {
            out.put(i, j, v);
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> TruncatedOp {
        let entries = self.entries.iter().map(|(&(i, j), v)| ((j, i), v.conj())).collect();
        TruncatedOp {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            dom_pos: self.cod_pos.clone(),
            cod_pos: self.dom_pos.clone(),
            entries,
        }
    }

    fn combine(&self, other: &TruncatedOp, sign: bool) -> Result<TruncatedOp> {
        let other = other.reindex(self.domain.clone(), self.codomain.clone())?;
        if !Self::same_set(&other.domain, &self.dom_pos) || !Self::same_set(&other.codomain, &self.cod_pos) {
            return Err(Error::BasisMismatch("sum needs identical bases".into()));
        }
        let mut out = self.clone();
        for (&(i, j), v) in &other.entries {
            let cur = out.entries.get(&(i, j)).cloned().unwrap_or_default();
            out.put(i, j, if sign { &cur + v } else { &cur - v });
        }
        Ok(out)
    }

    pub fn add(&self, other: &TruncatedOp) -> Result<TruncatedOp> {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &TruncatedOp) -> Result<TruncatedOp> {
        self.combine(other, false)
    }

    pub fn scale(&self, c: &ExactScalar) -> TruncatedOp {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(|(&k, v)| (k, c * v)).filter(|(_, v)| !v.is_zero()).collect();
        out
    }

    /// `self^n` for a square operator.
    pub fn pow(&self, n: u32) -> Result<TruncatedOp> {
        if !Self::same_set(&self.domain, &self.cod_pos) {
            return Err(Error::BasisMismatch("power of a non-square operator".into()));
        }
        let mut acc = Self::identity(self.domain.clone())?;
        for _ in 0..n {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// The same operator over new bases. Every nonzero entry must survive.
    pub fn reindex(&self, domain: Vec<BasisIndex>, codomain: Vec<BasisIndex>) -> Result<TruncatedOp> {
        let mut out = Self::zero(domain, codomain)?;
        for (&(i, j), v) in &self.entries {
            let row = &self.codomain[i];
            let col = &self.domain[j];
            let (Some(&ni), Some(&nj)) = (out.cod_pos.get(row), out.dom_pos.get(col)) else {
                return Err(Error::BasisMismatch(format!("entry ({row}, {col}) has no place in the new bases")));
            };
            out.put(ni, nj, v.clone());
        }
        Ok(out)
    }

    /// Keep only the listed columns, in the listed order.
    pub fn restrict_domain(&self, domain: Vec<BasisIndex>) -> Result<TruncatedOp> {
        let mut out = Self::zero(domain, self.codomain.clone())?;
        for (&(i, j), v) in &self.entries {
            if let Some(&nj) = out.dom_pos.get(&self.domain[j]) {
                out.put(i, nj, v.clone());
            }
        }
        Ok(out)
    }

    /// `T E_col` as a sparse vector over the codomain, rows in codomain order.
    pub fn column(&self, col: &BasisIndex) -> Result<Vec<(BasisIndex, ExactScalar)>> {
        let j = *self.dom_pos.get(col).ok_or_else(|| Error::BasisMismatch(format!("column {col} not in domain")))?;
        Ok(self
            .entries
            .iter()
            .filter(|(&(_, jj), _)| jj == j)
            .map(|(&(i, _), v)| (self.codomain[i].clone(), v.clone()))
            .collect())
    }

    /// Whether `self E_c == other E_c` for every listed column.
    pub fn agrees_on(&self, other: &TruncatedOp, cols: &[BasisIndex]) -> Result<bool> {
        for c in cols {
            let mut a = self.column(c)?;
            let mut b = other.column(c)?;
            a.sort_by(|x, y| x.0.cmp(&y.0));
            b.sort_by(|x, y| x.0.cmp(&y.0));
            if a != b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self E_c == E_c` for every listed column.
    pub fn is_identity_on(&self, cols: &[BasisIndex]) -> Result<bool> {
        for c in cols {
            if self.column(c)? != vec![(c.clone(), ExactScalar::one())] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_document(&self) -> OperatorDocument {
        OperatorDocument {
            domain: self.domain.iter().map(ToString::to_string).collect(),
            codomain: self.codomain.iter().map(ToString::to_string).collect(),
            entries: self.entries().map(|(r, c, v)| (r.to_string(), c.to_string(), v.to_string())).collect(),
        }
    }

    pub fn from_document(doc: &OperatorDocument) -> Result<Self> {
        let parse = |v: &[String]| v.iter().map(|s| s.parse()).collect::<Result<Vec<BasisIndex>>>();
        let mut op = Self::zero(parse(&doc.domain)?, parse(&doc.codomain)?)?;
        for (r, c, v) in &doc.entries {
            op.set(&r.parse()?, &c.parse()?, v.parse()?)?;
        }
        Ok(op)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: OperatorDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// Equal as linear maps between the same labelled bases, regardless of the
/// order in which the bases are listed.
impl PartialEq for TruncatedOp {
    fn eq(&self, other: &Self) -> bool {
        match other.reindex(self.domain.clone(), self.codomain.clone()) {
            Ok(o) => {
                Self::same_set(&other.domain, &self.dom_pos)
                    && Self::same_set(&other.codomain, &self.cod_pos)
                    && o.entries == self.entries
            }
            Err(_) => false,
        }
    }
}

/// On-disk shape of a truncated operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    /// `(row label, column label, scalar)` triplets.
    pub entries: Vec<(String, String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(k: i64) -> Vec<BasisIndex> {
        (-k..=k).map(BasisIndex::Win).collect()
    }

    fn shift(k: i64) -> TruncatedOp {
        TruncatedOp::from_images(window(k), window(k), |b| match b {
            BasisIndex::Win(i) => Some(BasisIndex::Win(i + 1)),
            _ => None,
        })
        .unwrap()
    }

    #[test]
    fn labels() {
        for s in ["W:-3", "C:2/5", "N:17", "D:1.0.2", "D:0"] {
            assert_eq!(s.parse::<BasisIndex>().unwrap().to_string(), s);
        }
        for s in ["D:1.0", "C:5/5", "X:1", "W:", "N:-1"] {
            assert!(s.parse::<BasisIndex>().is_err(), "{s}");
        }
    }

    #[test]
    fn words_are_canonical() {
        assert_eq!(Word::new(vec![1, 2, 0, 0]).digits(), &[1, 2]);
        assert_eq!(Word::new(vec![]), Word::zero());
        assert_eq!(Word::new(vec![1, 2]).shifted().digits(), &[0, 1, 2]);
        assert_eq!(Word::zero().shifted(), Word::zero());
    }

    #[test]
    fn window_shift_edges() {
        let v = shift(2);
        let vv = v.compose(&v.adjoint()).unwrap();
        let inner: Vec<_> = (-1..=2).map(BasisIndex::Win).collect();
        assert!(vv.is_identity_on(&inner).unwrap());
        assert!(!vv.is_identity_on(&[BasisIndex::Win(-2)]).unwrap());
        let v5 = v.pow(5).unwrap();
        assert_eq!(v5.nnz(), 0);
        assert_eq!(v.pow(0).unwrap(), TruncatedOp::identity(window(2)).unwrap());
    }

    #[test]
    fn compose_checks_bases() {
        let v = shift(1);
        let w = shift(2);
        assert!(matches!(v.compose(&w), Err(Error::BasisMismatch(_))));
        assert!(v.add(&w).is_err());
    }

    #[test]
    fn arithmetic() {
        let v = shift(2);
        let two = ExactScalar::from_int(2);
        let d = v.add(&v).unwrap();
        assert_eq!(d, v.scale(&two));
        assert_eq!(d.sub(&v).unwrap(), v);
        assert_eq!(v.sub(&v).unwrap().nnz(), 0);
        let mut m = TruncatedOp::zero(window(1), window(1)).unwrap();
        m.set(&BasisIndex::Win(0), &BasisIndex::Win(1), ExactScalar::i()).unwrap();
        assert_eq!(m.adjoint().get(&BasisIndex::Win(1), &BasisIndex::Win(0)), -ExactScalar::i());
        assert!(m.set(&BasisIndex::Win(9), &BasisIndex::Win(0), two).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let mut m = shift(2);
        m.set(&BasisIndex::Win(0), &BasisIndex::Win(0), "1/2+-1/3 i".parse().unwrap()).unwrap();
        let text = m.to_json();
        let back = TruncatedOp::from_json(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn reindex_embeds_and_refuses_loss() {
        let v = shift(1);
        let big = v.reindex(window(1), window(2)).unwrap();
        assert_eq!(big.nnz(), v.nnz());
        assert!(big.reindex(window(1), vec![BasisIndex::Win(0)]).is_err());
    }
}
