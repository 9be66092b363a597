//! Locally constant functions on Z_p and the endomorphisms `α_r`, `β_r`.

use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, mul_mod, normalize};
use crate::error::{Error, Result};
use crate::padic::{MultiplierSpec, PadicApprox, Prime};
use crate::scalar::ExactScalar;

/// A function on Z_p that factors through `Z/p^level`. Entry `j` is the
/// value on the ball `j + p^level Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocallyConstantFn {
    p: Prime,
    level: u32,
    values: Vec<ExactScalar>,
}

impl LocallyConstantFn {
    pub fn new(p: Prime, level: u32, values: Vec<ExactScalar>) -> Result<Self> {
        let expected = p.pow(level)?;
        if values.len() as u64 != expected {
            return Err(Error::InvalidArgument(format!(
                "level {level} over p = {p} needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(LocallyConstantFn { p, level, values })
    }

    pub fn constant(p: Prime, c: ExactScalar) -> Self {
        LocallyConstantFn { p, level: 0, values: vec![c] }
    }

    /// Tabulate `g(j)` for `j` in `0..p^level`.
    pub fn from_fn(p: Prime, level: u32, g: impl FnMut(u64) -> ExactScalar) -> Result<Self> {
        let m = p.pow(level)?;
        Self::new(p, level, (0..m).map(g).collect())
    }

    /// Indicator of the ball `residue + p^level Z_p`.
    pub fn indicator(p: Prime, level: u32, residue: u64) -> Result<Self> {
        Self::from_fn(p, level, |j| if j == residue { ExactScalar::one() } else { ExactScalar::zero() })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    fn modulus(&self) -> u64 {
        self.values.len() as u64
    }

    /// Value at a p-adic integer known to enough precision.
    pub fn eval(&self, x: &PadicApprox) -> Result<&ExactScalar> {
        if x.prime() != self.p {
            return Err(Error::InvalidArgument("prime mismatch".into()));
        }
        if x.precision() < self.level {
            return Err(Error::InsufficientPrecision { needed: self.level, available: x.precision() });
        }
        Ok(&self.values[(x.residue() % self.modulus()) as usize])
    }

    /// Value at a rational integer.
    pub fn eval_int(&self, x: i128) -> &ExactScalar {
        &self.values[normalize(x, self.modulus()) as usize]
    }

    /// The same function tabulated at a finer level.
    pub fn lift(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::InvalidArgument(format!("cannot lower level {} to {level}", self.level)));
        }
        let m = self.modulus();
        Self::from_fn(self.p, level, |j| self.values[(j % m) as usize].clone())
    }

    /// The same function tabulated at a coarser level, if it really is
    /// constant on the coarser balls.
    pub fn coarsen(&self, level: u32) -> Result<Self> {
        if level > self.level {
            return self.lift(level);
        }
        let m = self.p.pow(level)?;
        let coarse = Self::from_fn(self.p, level, |j| self.values[j as usize].clone())?;
        if self.values.iter().enumerate().all(|(j, v)| *v == coarse.values[(j as u64 % m) as usize]) {
            Ok(coarse)
        } else {
            Err(Error::InvalidArgument(format!("function is not constant mod p^{level}")))
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::InvalidArgument("prime mismatch".into()));
        }
        let level = self.level.max(other.level);
        let (a, b) = (self.lift(level)?, other.lift(level)?);
        let values = a.values.iter().zip(&b.values).map(|(x, y)| op(x, y)).collect();
        Self::new(self.p, level, values)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x * y)
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    /// Equality as functions on Z_p, regardless of the tabulation level.
    pub fn same_function(&self, other: &Self) -> bool {
        let level = self.level.max(other.level);
        match (self.lift(level), other.lift(level)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn to_document(&self) -> FunctionDocument {
        FunctionDocument {
            p: self.p.get(),
            level: self.level,
            values: self.values.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_document(doc: &FunctionDocument) -> Result<Self> {
        let p = Prime::new(doc.p)?;
        let values = doc.values.iter().map(|s| s.parse()).collect::<Result<Vec<ExactScalar>>>()?;
        Self::new(p, doc.level, values)
    }

    /// Canonical JSON text of the function file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FunctionDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// On-disk shape of a locally constant function.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDocument {
    pub p: u64,
    pub level: u32,
    pub values: Vec<String>,
}

/// `(β_r f)(x) = f(rx)`. Same level as `f`.
pub fn beta_endo(f: &LocallyConstantFn, r: &MultiplierSpec) -> Result<LocallyConstantFn> {
    let m = f.modulus();
    let rr = r.residue(f.p, f.level)?;
    LocallyConstantFn::from_fn(f.p, f.level, |j| f.values[mul_mod(rr, j, m) as usize].clone())
}

/// `(α_r f)(x) = f(x/r)` when `r | x`, else 0.
///
/// For a unit `r` the level is unchanged. For `r = r' p^N` with `N >= 1` the
/// result lives at level `level + N`.
pub fn alpha_endo(f: &LocallyConstantFn, r: &MultiplierSpec) -> Result<LocallyConstantFn> {
    let n = r.valuation(f.p)?;
    let m = f.modulus();
    let rr = r.residue(f.p, f.level + n)?;
    let pn = f.p.pow(n)?;
    let unit = (rr / pn) % m;
    let inv = inv_mod(unit, m).ok_or(Error::NotAUnit(unit as i128))?;
    LocallyConstantFn::from_fn(f.p, f.level + n, |y| {
        if y % pn == 0 {
            f.values[mul_mod(y / pn, inv, m) as usize].clone()
        } else {
            ExactScalar::zero()
        }
    })
}
