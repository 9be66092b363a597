//! Orbit decompositions of `Z_p \ {0}` under multiplication by a unit `r`,
//! and the window truncations of the orbit representations.

use serde::Serialize;

use crate::arith::{inv_mod, mul_mod, normalize, pow_mod};
use crate::classify::{classify, Case};
use crate::error::{Error, Result};
use crate::function::LocallyConstantFn;
use crate::operator::{BasisIndex, TruncatedOp};
use crate::padic::{teichmuller, valuation, MultiplierSpec, Prime};
use crate::scalar::ExactScalar;
use crate::units::{quotient_group, DEFAULT_NR_CAP};

/// `x = r^k · p^L · γ(coset) · tail`, with `k` present only for roots of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    pub l: u32,
    pub coset_index: usize,
    /// `γ(coset)` modulo `p^precision`.
    pub section: u64,
    pub k: Option<u64>,
    pub tail: u64,
    pub precision: u32,
}

impl OrbitDecomposition {
    /// `r^k p^L γ tail mod p^(L + precision)`.
    pub fn recompose(&self, p: Prime, r: &MultiplierSpec) -> Result<u64> {
        let m = p.pow(self.l + self.precision)?;
        let mut acc = mul_mod(p.pow(self.l)?, mul_mod(self.section, self.tail, m), m);
        if let Some(k) = self.k {
            acc = mul_mod(acc, pow_mod(r.residue(p, self.precision)?, k, m), m);
        }
        Ok(acc)
    }
}

/// Cosets of `<ρ>` in `(Z/p)^×`, each represented by its smallest residue.
/// The identity coset comes first.
pub fn root_cosets(p: Prime, rho: u64) -> Vec<u64> {
    let q = p.get();
    let mut seen = vec![false; q as usize];
    let mut reps = Vec::new();
    for c in 1..q {
        if seen[c as usize] {
            continue;
        }
        reps.push(c);
        let mut y = c;
        loop {
            seen[y as usize] = true;
            y = mul_mod(y, rho, q);
            if y == c {
                break;
            }
        }
    }
    reps
}

pub fn orbit_decompose(p: Prime, r: &MultiplierSpec, x: i128, precision: u32) -> Result<OrbitDecomposition> {
    if precision == 0 {
        return Err(Error::InvalidArgument("precision must be positive".into()));
    }
    let c = classify(p, r, precision)?;
    let (l, unit) = valuation(p, x)?;
    let m = p.pow(precision)?;
    let u = normalize(unit, m);
    match c.case {
        Case::NonTorsionUnit { .. } => {
            let q = quotient_group(p, r, r.precision().unwrap_or(DEFAULT_NR_CAP))?;
            let coset_index = q.coset_index(normalize(unit, q.subgroup.modulus()) as i64)?;
            let section = q.section(coset_index) % m;
            let inv = inv_mod(section, m).expect("sections are units");
            Ok(OrbitDecomposition { l, coset_index, section, k: None, tail: mul_mod(u, inv, m), precision })
        }
        Case::RootOfUnity { order } => {
            let rho = r.residue(p, 1)?;
            let cosets = root_cosets(p, rho);
            let u1 = u % p.get();
            let (coset_index, k) = cosets
                .iter()
                .enumerate()
                .find_map(|(i, &c)| {
                    (0..order).find(|&k| mul_mod(pow_mod(rho, k, p.get()), c, p.get()) == u1).map(|k| (i, k))
                })
                .expect("the cosets cover (Z/p)^×");
            let section = teichmuller(p, cosets[coset_index], precision)?;
            let rk = pow_mod(r.residue(p, precision)?, k, m);
            let inv = inv_mod(mul_mod(rk, section, m), m).expect("roots of unity are units");
            Ok(OrbitDecomposition { l, coset_index, section, k: Some(k), tail: mul_mod(u, inv, m), precision })
        }
        Case::NonUnit { .. } => Err(Error::WrongCase("orbit decomposition needs a unit multiplier".into())),
    }
}

/// The window `{-K, ..., K}` of `ℓ²(Z)`.
pub fn window(k: u64) -> Vec<BasisIndex> {
    let k = k as i64;
    (-k..=k).map(BasisIndex::Win).collect()
}

/// `r^k x mod p^level`, with negative `k` through the inverse of `r`.
fn orbit_point(p: Prime, r: &MultiplierSpec, x: i128, k: i64, level: u32) -> Result<u64> {
    if level == 0 {
        return Ok(0);
    }
    let m = p.pow(level)?;
    let rr = r.residue(p, level)?;
    let base = if k < 0 { inv_mod(rr, m).ok_or(Error::NotAUnit(rr as i128))? } else { rr };
    Ok(mul_mod(pow_mod(base, k.unsigned_abs(), m), normalize(x, m), m))
}

fn require_unit(p: Prime, r: &MultiplierSpec, x: i128) -> Result<()> {
    if x == 0 {
        return Err(Error::InfiniteValuation);
    }
    if r.valuation(p)? > 0 {
        return Err(Error::NotAUnit(r.residue(p, 1)? as i128));
    }
    Ok(())
}

/// The shift `v E_k = E_(k+1)` on a window (the top edge falls off) and
/// `m E_k = f(r^k x) E_k`.
pub fn build_orbit_rep(
    p: Prime,
    r: &MultiplierSpec,
    x: i128,
    f: &LocallyConstantFn,
    radius: u64,
) -> Result<(TruncatedOp, TruncatedOp)> {
    require_unit(p, r, x)?;
    let basis = window(radius);
    let v = TruncatedOp::from_images(basis.clone(), basis.clone(), |b| match b {
        BasisIndex::Win(k) => Some(BasisIndex::Win(k + 1)),
        _ => None,
    })?;
    let mut values = Vec::with_capacity(basis.len());
    for b in &basis {
        let BasisIndex::Win(k) = b else { unreachable!() };
        values.push(f.eval_int(orbit_point(p, r, x, *k, f.level())? as i128).clone());
    }
    let mut it = values.into_iter();
    let m = TruncatedOp::diagonal(basis, |_| it.next().expect("one value per index"))?;
    Ok((v, m))
}

/// The cyclic representation on `ℓ²(Z/nZ)`, `n = ord(r)`.
pub fn build_cyclic_rep(
    p: Prime,
    r: &MultiplierSpec,
    x: i128,
    f: &LocallyConstantFn,
) -> Result<(TruncatedOp, TruncatedOp)> {
    require_unit(p, r, x)?;
    let n = match classify(p, r, 1)?.case {
        Case::RootOfUnity { order } => order,
        other => {
            return Err(Error::WrongCase(format!("cyclic representation needs Case II, got Case {}", other.roman())))
        }
    };
    let basis: Vec<BasisIndex> = (0..n).map(|k| BasisIndex::Cyc { k, n }).collect();
    let v = TruncatedOp::from_images(basis.clone(), basis.clone(), |b| match b {
        BasisIndex::Cyc { k, n } => Some(BasisIndex::Cyc { k: (k + 1) % n, n: *n }),
        _ => None,
    })?;
    let mut values = Vec::with_capacity(n as usize);
    for k in 0..n {
        values.push(f.eval_int(orbit_point(p, r, x, k as i64, f.level())? as i128).clone());
    }
    let mut it = values.into_iter();
    let m = TruncatedOp::diagonal(basis, |_| it.next().expect("one value per index"))?;
    Ok((v, m))
}

/// One block of the Case I faithful representation.
#[derive(Debug, Clone)]
pub struct OrbitBlock {
    pub l: u32,
    pub coset_index: usize,
    pub x: i128,
    pub v: TruncatedOp,
    pub m: TruncatedOp,
}

/// Blocks at `(L, j)` for `L <= l_max` and every coset `j` of `Z_p^×/G_r`,
/// each built on `x = p^L γ(j)`.
pub fn case_one_blocks(
    p: Prime,
    r: &MultiplierSpec,
    f: &LocallyConstantFn,
    radius: u64,
    l_max: u32,
) -> Result<Vec<OrbitBlock>> {
    let q = quotient_group(p, r, r.precision().unwrap_or(DEFAULT_NR_CAP))?;
    let mut blocks = Vec::new();
    for l in 0..=l_max {
        for j in 0..q.order() {
            let x = p.pow(l)? as i128 * q.section(j) as i128;
            let (v, m) = build_orbit_rep(p, r, x, f, radius)?;
            blocks.push(OrbitBlock { l, coset_index: j, x, v, m });
        }
    }
    Ok(blocks)
}

/// Diagonal of an operator, in domain order.
pub fn diagonal_of(op: &TruncatedOp) -> Vec<ExactScalar> {
    op.domain().iter().map(|b| op.get(b, b)).collect()
}

/// Smallest `t >= 1` with `seq[i] == seq[i + t]` throughout.
pub fn minimal_period<T: PartialEq>(seq: &[T]) -> usize {
    (1..seq.len()).find(|&t| seq.iter().zip(&seq[t..]).all(|(a, b)| a == b)).unwrap_or(seq.len())
}

/// Outcome of the matrix-unit check for a root of unity of order `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixUnitReport {
    pub order: u64,
    pub identity_holds: bool,
    pub u_commutes: bool,
}

/// With `P_0` the projection onto `n Z`, `u = v^n` and
/// `P_(i,j) = v^i P_0 v^(-j)`: check `v = Σ P_(i+1,i) + u P_(0,n-1)` on
/// `{-K+n, ..., K-n}` and `u P_(i,j) = P_(i,j) u` on `{-K+2n, ..., K-2n}`.
pub fn check_matrix_units(p: Prime, r: &MultiplierSpec, radius: u64) -> Result<MatrixUnitReport> {
    let n = match classify(p, r, 1)?.case {
        Case::RootOfUnity { order } => order,
        other => return Err(Error::WrongCase(format!("matrix units need Case II, got Case {}", other.roman()))),
    };
    if radius < 2 * n {
        return Err(Error::InvalidArgument(format!("window radius must be at least {}", 2 * n)));
    }
    let one = LocallyConstantFn::constant(p, ExactScalar::one());
    let (v, _) = build_orbit_rep(p, r, 1, &one, radius)?;
    let basis = window(radius);
    let p0 = TruncatedOp::diagonal(basis.clone(), |b| match b {
        BasisIndex::Win(k) if k.rem_euclid(n as i64) == 0 => ExactScalar::one(),
        _ => ExactScalar::zero(),
    })?;
    let vs = v.adjoint();
    let u = v.pow(n as u32)?;
    let unit = |i: u32, j: u32| -> Result<TruncatedOp> { v.pow(i)?.compose(&p0)?.compose(&vs.pow(j)?) };

    let mut sum = u.compose(&unit(0, n as u32 - 1)?)?;
    for i in 0..n as u32 - 1 {
        sum = sum.add(&unit(i + 1, i)?)?;
    }
    let (rad, n_i) = (radius as i64, n as i64);
    let inner: Vec<BasisIndex> = (-rad + n_i..=rad - n_i).map(BasisIndex::Win).collect();
    let identity_holds = sum.agrees_on(&v, &inner)?;

    let core: Vec<BasisIndex> = (-rad + 2 * n_i..=rad - 2 * n_i).map(BasisIndex::Win).collect();
    let mut u_commutes = true;
    for i in 0..n as u32 {
        for j in 0..n as u32 {
            let pij = unit(i, j)?;
            if !u.compose(&pij)?.agrees_on(&pij.compose(&u)?, &core)? {
                u_commutes = false;
            }
        }
    }
    Ok(MatrixUnitReport { order: n, identity_holds, u_commutes })
}
