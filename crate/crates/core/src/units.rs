//! The unit groups `U_N = (Z/p^N)^×`, cyclic subgroups generated by a
//! multiplier, the threshold `N_r`, and the finite quotient `Z_p^×/G_r`.

use serde::Serialize;

use crate::arith::{factorize, gcd, inv_mod, mul_mod, normalize, pow_mod};
use crate::error::{Error, Result};
use crate::padic::{MultiplierSpec, Prime};

/// Default search cap for [`find_nr`].
pub const DEFAULT_NR_CAP: u32 = 64;

/// `|U_N| = p^(N-1) (p-1)`.
pub fn group_order(p: Prime, level: u32) -> Result<u64> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    Ok(p.pow(level - 1)? * (p.get() - 1))
}

fn unit_residue(p: Prime, level: u32, r: i64) -> Result<(u64, u64)> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let m = p.pow(level)?;
    let rr = normalize(r as i128, m);
    if rr.is_multiple_of(p.get()) {
        return Err(Error::NotAUnit(r as i128));
    }
    Ok((rr, m))
}

/// Order of `r` in `U_level`, found by stripping prime factors off `|U_N|`.
pub fn unit_order(p: Prime, level: u32, r: i64) -> Result<u64> {
    let (rr, m) = unit_residue(p, level, r)?;
    let mut d = group_order(p, level)?;
    for (q, _) in factorize(p.get() - 1).into_iter().chain([(p.get(), 1)]) {
        while d % q == 0 && pow_mod(rr, d / q, m) == 1 {
            d /= q;
        }
    }
    Ok(d)
}

/// Smallest positive generator of `U_level`.
pub fn find_primitive_root(p: Prime, level: u32) -> Result<u64> {
    let m = p.pow(level)?;
    let order = group_order(p, level)?;
    let mut primes: Vec<u64> = factorize(p.get() - 1).into_iter().map(|(q, _)| q).collect();
    if level > 1 {
        primes.push(p.get());
    }
    (1..m)
        .filter(|a| a % p.get() != 0)
        .find(|&a| primes.iter().all(|&q| pow_mod(a, order / q, m) != 1))
        .ok_or_else(|| Error::InvalidArgument(format!("no primitive root mod {m}")))
}

/// Exact inputs whose root-of-unity status is known without computation.
fn known_root_of_unity(r: &MultiplierSpec) -> bool {
    match r {
        MultiplierSpec::ExactInt(n) => *n == -1,
        MultiplierSpec::TeichProduct { .. } => true,
        MultiplierSpec::Digits(_) => false,
    }
}

/// The threshold `N_r`: the smallest level `M` with `p | ord_{U_M}(r)`.
pub fn find_nr(p: Prime, r: &MultiplierSpec, cap: u32) -> Result<u32> {
    if r.valuation(p)? > 0 {
        return Err(Error::NotAUnit(r.residue(p, 1)? as i128));
    }
    if known_root_of_unity(r) {
        return Err(Error::NoThreshold);
    }
    for level in 1..=cap {
        let rr = match r.residue(p, level) {
            Ok(v) => v,
            Err(Error::LevelOutOfRange { .. }) => return Err(Error::ThresholdNotFound(level - 1)),
            Err(e) => return Err(e),
        };
        if unit_order(p, level, rr as i64)? % p.get() == 0 {
            return Ok(level);
        }
    }
    Err(Error::ThresholdNotFound(cap))
}

/// `G_{r,N}`, the subgroup of `U_N` generated by `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicSubgroup {
    pub p: Prime,
    pub level: u32,
    pub generator: u64,
    /// Sorted ascending.
    pub elements: Vec<u64>,
    pub order: u64,
}

impl CyclicSubgroup {
    pub fn contains(&self, k: u64) -> bool {
        self.elements.binary_search(&k).is_ok()
    }

    pub fn modulus(&self) -> u64 {
        self.p.get().pow(self.level)
    }
}

/// Enumerate `G_{r,N}` by repeated multiplication until 1 recurs.
pub fn subgroup(p: Prime, level: u32, r: i64) -> Result<CyclicSubgroup> {
    let (rr, m) = unit_residue(p, level, r)?;
    let mut elements = vec![1u64];
    let mut acc = rr;
    while acc != 1 {
        elements.push(acc);
        acc = mul_mod(acc, rr, m);
    }
    elements.sort_unstable();
    let order = elements.len() as u64;
    Ok(CyclicSubgroup { p, level, generator: rr, elements, order })
}

/// Membership `k mod p^N ∈ G_{r,N}`.
pub fn is_in_subgroup(p: Prime, level: u32, r: i64, k: i64) -> Result<bool> {
    let (kk, _) = unit_residue(p, level, k)?;
    Ok(subgroup(p, level, r)?.contains(kk))
}

/// `U_N / G_{r,N}` with the section `γ` given by the smallest positive
/// residue in each coset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientGroup {
    pub p: Prime,
    pub level: u32,
    pub subgroup: CyclicSubgroup,
    /// `coset_reps[0] == 1`; ascending otherwise.
    pub coset_reps: Vec<u64>,
    /// `table[a][b]` is the coset index of `coset_reps[a] * coset_reps[b]`.
    pub table: Vec<Vec<usize>>,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.coset_reps.len()
    }

    /// Index of the coset containing the unit `k`.
    pub fn coset_index(&self, k: i64) -> Result<usize> {
        let m = self.subgroup.modulus();
        let kk = normalize(k as i128, m);
        if kk.is_multiple_of(self.p.get()) {
            return Err(Error::NotAUnit(k as i128));
        }
        self.coset_reps
            .iter()
            .position(|&rep| {
                let inv = inv_mod(rep, m).expect("coset representatives are units");
                self.subgroup.contains(mul_mod(kk, inv, m))
            })
            .ok_or_else(|| Error::InvalidArgument(format!("{k} lies in no coset")))
    }

    /// `γ(coset)`.
    pub fn section(&self, index: usize) -> u64 {
        self.coset_reps[index]
    }
}

/// Largest `|U_N|` that [`quotient_at_level`] will enumerate.
pub const MAX_ENUMERATION: u64 = 1 << 24;

/// `U_N / G_{r,N}` at an explicit level.
pub fn quotient_at_level(p: Prime, level: u32, r: i64) -> Result<QuotientGroup> {
    let sub = subgroup(p, level, r)?;
    let m = sub.modulus();
    if group_order(p, level)? > MAX_ENUMERATION {
        return Err(Error::InvalidArgument(format!("U_{level} is too large to enumerate")));
    }
    let mut seen = vec![false; m as usize];
    let mut coset_reps = Vec::new();
    for k in 1..m {
        if k % p.get() == 0 || seen[k as usize] {
            continue;
        }
        coset_reps.push(k);
        for &g in &sub.elements {
            seen[mul_mod(k, g, m) as usize] = true;
        }
    }
    let mut q = QuotientGroup { p, level, subgroup: sub, coset_reps, table: Vec::new() };
    let mut table = Vec::with_capacity(q.order());
    for &a in &q.coset_reps {
        let row = q.coset_reps.iter().map(|&b| q.coset_index(mul_mod(a, b, m) as i64)).collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    q.table = table;
    Ok(q)
}

/// `Z_p^× / G_r ≅ U_{N_r} / G_{r,N_r}` for a unit `r` that is not a root of unity.
pub fn quotient_group(p: Prime, r: &MultiplierSpec, cap: u32) -> Result<QuotientGroup> {
    let nr = find_nr(p, r, cap)?;
    quotient_at_level(p, nr, r.residue(p, nr)? as i64)
}

/// Whether a Cayley table is a group with identity at index 0.
pub fn is_group_table(table: &[Vec<usize>]) -> bool {
    let n = table.len();
    if table.iter().any(|row| row.len() != n) {
        return false;
    }
    let is_perm = |xs: Vec<usize>| {
        let mut seen = vec![false; n];
        xs.into_iter().all(|x| x < n && !std::mem::replace(&mut seen[x], true))
    };
    let identity = (0..n).all(|a| table[0][a] == a && table[a][0] == a);
    let latin = (0..n).all(|a| is_perm(table[a].clone()) && is_perm((0..n).map(|b| table[b][a]).collect()));
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| table[table[a][b]][c] == table[a][table[b][c]])));
    identity && latin && assoc
}

/// `gcd(r, p) == 1` helper for residues.
pub fn is_unit_residue(p: Prime, k: u64) -> bool {
    gcd(k, p.get()) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn naive_order(m: u64, r: u64) -> u64 {
        let mut acc = r % m;
        let mut d = 1;
        while acc != 1 {
            acc = mul_mod(acc, r, m);
            d += 1;
        }
        d
    }

    #[test]
    fn order_examples() {
        assert_eq!(unit_order(p(3), 1, 2).unwrap(), 2);
        assert_eq!(unit_order(p(3), 2, 2).unwrap(), 6);
        assert_eq!(unit_order(p(7), 4, 1).unwrap(), 1);
        assert_eq!(unit_order(p(5), 3, 7).unwrap(), 20);
        assert!(matches!(unit_order(p(5), 3, 10), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn order_agrees_with_iteration() {
        for q in [3u64, 5, 7, 11] {
            for level in 1..=3 {
                let m = q.pow(level);
                for r in (1..m).filter(|r| r % q != 0) {
                    assert_eq!(unit_order(p(q), level, r as i64).unwrap(), naive_order(m, r), "p={q} N={level} r={r}");
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(find_primitive_root(p(3), 1).unwrap(), 2);
        assert_eq!(find_primitive_root(p(3), 2).unwrap(), 2);
        assert_eq!(find_primitive_root(p(5), 1).unwrap(), 2);
        for q in [3u64, 5, 7, 11, 13] {
            for level in 1..=3 {
                let a = find_primitive_root(p(q), level).unwrap();
                assert_eq!(unit_order(p(q), level, a as i64).unwrap(), group_order(p(q), level).unwrap());
            }
        }
    }

    #[test]
    fn nr_examples() {
        assert_eq!(find_nr(p(3), &MultiplierSpec::ExactInt(2), 64).unwrap(), 2);
        assert_eq!(find_nr(p(5), &MultiplierSpec::ExactInt(7), 64).unwrap(), 3);
        assert_eq!(find_nr(p(5), &MultiplierSpec::ExactInt(2), 64).unwrap(), 2);
        assert_eq!(find_nr(p(5), &MultiplierSpec::ExactInt(-1), 64), Err(Error::NoThreshold));
        let t = MultiplierSpec::TeichProduct { index: 2, negated: false };
        assert_eq!(find_nr(p(5), &t, 64), Err(Error::NoThreshold));
        // 1 + 5^4 needs level 5, which a cap of 3 cannot reach.
        assert_eq!(find_nr(p(5), &MultiplierSpec::ExactInt(626), 3), Err(Error::ThresholdNotFound(3)));
        assert_eq!(find_nr(p(5), &MultiplierSpec::ExactInt(626), 64).unwrap(), 5);
        assert!(matches!(find_nr(p(5), &MultiplierSpec::ExactInt(10), 64), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn nr_for_digits_respects_precision() {
        // 7 = [2, 1] in base 5; N_7 = 3 needs three digits.
        let short = MultiplierSpec::Digits(vec![2, 1]);
        assert!(matches!(find_nr(p(5), &short, 64), Err(Error::InsufficientPrecision { .. })));
        let long = MultiplierSpec::Digits(vec![2, 1, 0, 0]);
        assert_eq!(find_nr(p(5), &long, 64).unwrap(), 3);
    }

    #[test]
    fn nr_cap_overflow_is_reported() {
        // 1 + 3^38 fits in an i64 but N_r = 39 sits at the edge of the 63-bit range.
        let r = 1 + 3i64.pow(38);
        assert_eq!(find_nr(p(3), &MultiplierSpec::ExactInt(r), 64).unwrap(), 39);
        let r = 1 + 3i64.pow(39);
        assert!(matches!(find_nr(p(3), &MultiplierSpec::ExactInt(r), 64), Err(Error::ThresholdNotFound(_))));
    }

    #[test]
    fn subgroup_examples() {
        let g = subgroup(p(5), 2, 7).unwrap();
        assert_eq!(g.elements, vec![1, 7, 18, 24]);
        assert_eq!(g.order, 4);
        assert_eq!(subgroup(p(3), 2, 2).unwrap().elements, vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(subgroup(p(7), 3, 1).unwrap().elements, vec![1]);
        assert!(subgroup(p(3), 2, 3).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(is_in_subgroup(p(5), 2, 7, 18).unwrap());
        assert!(!is_in_subgroup(p(5), 2, 7, 2).unwrap());
        assert!(is_in_subgroup(p(5), 2, 7, 1).unwrap());
        assert!(is_in_subgroup(p(5), 2, 7, 5).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_group(p(3), &MultiplierSpec::ExactInt(2), 64).unwrap();
        assert_eq!(q.order(), 1);
        let q = quotient_group(p(5), &MultiplierSpec::ExactInt(7), 64).unwrap();
        assert_eq!(q.level, 3);
        assert_eq!(q.order(), 5);
        assert_eq!(q.coset_reps[0], 1);
        assert!(is_group_table(&q.table));
        assert_eq!(q.order() as u64 * q.subgroup.order, 100);
        let q = quotient_group(p(5), &MultiplierSpec::ExactInt(2), 64).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn cosets_partition_units() {
        let q = quotient_at_level(p(7), 3, 19).unwrap();
        let m = 343u64;
        let mut counts = vec![0u64; q.order()];
        for k in (1..m).filter(|k| k % 7 != 0) {
            counts[q.coset_index(k as i64).unwrap()] += 1;
        }
        assert!(counts.iter().all(|&c| c == q.subgroup.order));
        assert!(is_group_table(&q.table));
    }

    #[test]
    fn table_checker_rejects_non_groups() {
        assert!(is_group_table(&[vec![0, 1], vec![1, 0]]));
        assert!(!is_group_table(&[vec![0, 1], vec![1, 1]]));
        assert!(!is_group_table(&[vec![1, 0], vec![0, 1]]));
    }
}
