//! Symbolic K-group descriptors for the crossed products, their ideals and
//! the Hensel-Steinitz algebras.
//!
//! Descriptors are isomorphism-class labels, not group objects: they can be
//! built, canonicalized, compared and printed, nothing else.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Serialize, Serializer};

use crate::classify::{Case, Classification, SupernaturalNumber};
use crate::error::{Error, Result};
use crate::padic::Prime;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KAtom {
    /// `Z^n`, `n >= 1`.
    Free(u64),
    /// `c0(Z>=0, Z)`: eventually-zero integer sequences.
    C0SeqZ,
    /// `c0(Z>=0, H_S)`.
    C0SeqH(SupernaturalNumber),
    /// `c0(Z>=0 x Z_p, Z)`.
    C0SeqZpZ(Prime),
    /// `C(Z_s^×, Z)`.
    CFunUnits(u64),
}

impl fmt::Display for KAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KAtom::Free(1) => f.write_str("Z"),
            KAtom::Free(n) => write!(f, "Z^{n}"),
            KAtom::C0SeqZ => f.write_str("c0(Z>=0, Z)"),
            KAtom::C0SeqH(s) => write!(f, "c0(Z>=0, H({s}))"),
            KAtom::C0SeqZpZ(p) => write!(f, "c0(Z>=0 x Z_{p}, Z)"),
            KAtom::CFunUnits(s) => write!(f, "C(Z_{s}^x, Z)"),
        }
    }
}

/// A direct sum of atoms. The empty sum is the zero group.
///
/// Atoms keep their written order for printing; equality ignores order.
#[derive(Debug, Clone, Eq, Default)]
pub struct KGroupDescriptor {
    atoms: Vec<KAtom>,
}

impl KGroupDescriptor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: KAtom) -> Self {
        Self::from_atoms(vec![a])
    }

    pub fn from_atoms(atoms: Vec<KAtom>) -> Self {
        KGroupDescriptor { atoms }.canonical()
    }

    /// `self ⊕ other`.
    pub fn sum(&self, other: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Self::from_atoms(atoms)
    }

    pub fn with(&self, a: KAtom) -> Self {
        self.sum(&Self::atom(a))
    }

    pub fn atoms(&self) -> &[KAtom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Drops `Z^0` and merges free summands into the first one.
    pub fn canonical(&self) -> Self {
        let mut atoms: Vec<KAtom> = Vec::with_capacity(self.atoms.len());
        let mut free_slot: Option<usize> = None;
        for a in &self.atoms {
            match a {
                KAtom::Free(0) => {}
                KAtom::Free(n) => match free_slot {
                    Some(i) => {
                        if let KAtom::Free(m) = &mut atoms[i] {
                            *m += n;
                        }
                    }
                    None => {
                        free_slot = Some(atoms.len());
                        atoms.push(a.clone());
                    }
                },
                other => atoms.push(other.clone()),
            }
        }
        KGroupDescriptor { atoms }
    }

    fn sorted(&self) -> Vec<KAtom> {
        let mut v = self.atoms.clone();
        v.sort();
        v
    }
}

impl PartialEq for KGroupDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.sorted() == other.sorted()
    }
}

impl Hash for KGroupDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sorted().hash(state);
    }
}

impl fmt::Display for KGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.atoms.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" (+) "))
    }
}

impl Serialize for KGroupDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KGroups {
    pub k0: KGroupDescriptor,
    pub k1: KGroupDescriptor,
}

fn supernatural(c: &Classification) -> SupernaturalNumber {
    c.supernatural_order().expect("Case I carries its order")
}

/// K-theory of `HS(s)`: `K0 = C(Z_s^×, Z)`, `K1 = 0`.
pub fn hs_k_groups(s: u64) -> KGroups {
    KGroups { k0: KGroupDescriptor::atom(KAtom::CFunUnits(s)), k1: KGroupDescriptor::zero() }
}

/// K-theory of the crossed product `A_r`.
pub fn algebra_k_groups(c: &Classification) -> Result<KGroups> {
    Ok(match &c.case {
        Case::NonTorsionUnit { .. } => KGroups {
            k0: KGroupDescriptor::from_atoms(vec![KAtom::C0SeqH(supernatural(c)), KAtom::Free(1)]),
            k1: KGroupDescriptor::from_atoms(vec![KAtom::Free(1), KAtom::C0SeqZ]),
        },
        Case::RootOfUnity { .. } => {
            let g = KGroupDescriptor::from_atoms(vec![KAtom::C0SeqZpZ(c.p), KAtom::Free(1)]);
            KGroups { k0: g.clone(), k1: g }
        }
        Case::NonUnit { valuation, .. } => hs_k_groups(c.p.pow(*valuation)?),
    })
}

/// K-theory of `A'_r`, defined only for roots of unity.
pub fn primed_algebra_k_groups(c: &Classification) -> Result<KGroups> {
    match c.case {
        Case::RootOfUnity { order } if order >= 2 => Ok(KGroups {
            k0: KGroupDescriptor::from_atoms(vec![KAtom::C0SeqZpZ(c.p), KAtom::Free(order)]),
            k1: KGroupDescriptor::zero(),
        }),
        Case::RootOfUnity { .. } => Err(Error::ExcludedMultiplier("ord(r) = 1 means r = 1".into())),
        _ => Err(Error::WrongCase("A'_r undefined: r is not a root of unity".into())),
    }
}

/// K-theory of the ideal `I_r` (or `I'_r` when `primed`).
pub fn ideal_k_groups(c: &Classification, primed: bool) -> Result<KGroups> {
    match (&c.case, primed) {
        (Case::NonTorsionUnit { .. }, false) => Ok(KGroups {
            k0: KGroupDescriptor::atom(KAtom::C0SeqH(supernatural(c))),
            k1: KGroupDescriptor::atom(KAtom::C0SeqZ),
        }),
        (Case::NonTorsionUnit { .. }, true) => Err(Error::WrongCase("I'_r undefined: r is not a root of unity".into())),
        (Case::RootOfUnity { .. }, true) => {
            Ok(KGroups { k0: KGroupDescriptor::atom(KAtom::C0SeqZpZ(c.p)), k1: KGroupDescriptor::zero() })
        }
        (Case::RootOfUnity { .. }, false) => {
            let g = KGroupDescriptor::atom(KAtom::C0SeqZpZ(c.p));
            Ok(KGroups { k0: g.clone(), k1: g })
        }
        (Case::NonUnit { .. }, _) => Err(Error::WrongCase("ideal descriptors for HS(s) handled by hs_k_groups".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::padic::MultiplierSpec;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn cls(q: u64, r: &str) -> Classification {
        classify(p(q), &r.parse().unwrap(), 2).unwrap()
    }

    #[test]
    fn case_one_strings() {
        let k = algebra_k_groups(&cls(3, "2")).unwrap();
        assert_eq!(k.k0.to_string(), "c0(Z>=0, H(2*3^inf)) (+) Z");
        assert_eq!(k.k1.to_string(), "Z (+) c0(Z>=0, Z)");
        let i = ideal_k_groups(&cls(3, "2"), false).unwrap();
        assert_eq!(i.k0.to_string(), "c0(Z>=0, H(2*3^inf))");
        assert_eq!(i.k1.to_string(), "c0(Z>=0, Z)");
    }

    #[test]
    fn case_two_strings() {
        let c = cls(5, "teich(2)");
        let a = algebra_k_groups(&c).unwrap();
        assert_eq!(a.k0.to_string(), "c0(Z>=0 x Z_5, Z) (+) Z");
        assert_eq!(a.k1, a.k0);
        let primed = primed_algebra_k_groups(&c).unwrap();
        assert_eq!(primed.k0.to_string(), "c0(Z>=0 x Z_5, Z) (+) Z^4");
        assert_eq!(primed.k1.to_string(), "0");
        let minus_one = primed_algebra_k_groups(&cls(3, "-1")).unwrap();
        assert_eq!(minus_one.k0.to_string(), "c0(Z>=0 x Z_3, Z) (+) Z^2");
        let ip = ideal_k_groups(&c, true).unwrap();
        assert_eq!((ip.k0.to_string(), ip.k1.to_string()), ("c0(Z>=0 x Z_5, Z)".into(), "0".into()));
        let iu = ideal_k_groups(&c, false).unwrap();
        assert_eq!(iu.k0, iu.k1);
    }

    #[test]
    fn case_three_strings() {
        let k = algebra_k_groups(&cls(3, "6")).unwrap();
        assert_eq!((k.k0.to_string(), k.k1.to_string()), ("C(Z_3^x, Z)".into(), "0".into()));
        assert_eq!(algebra_k_groups(&cls(3, "18")).unwrap(), hs_k_groups(9));
        assert!(matches!(ideal_k_groups(&cls(3, "6"), false), Err(Error::WrongCase(_))));
        assert!(matches!(primed_algebra_k_groups(&cls(3, "6")), Err(Error::WrongCase(_))));
    }

    #[test]
    fn order_one_root_is_rejected() {
        let fake = Classification {
            p: p(5),
            multiplier: MultiplierSpec::ExactInt(-1),
            case: Case::RootOfUnity { order: 1 },
            exact: true,
        };
        assert!(matches!(primed_algebra_k_groups(&fake), Err(Error::ExcludedMultiplier(_))));
    }

    #[test]
    fn canonicalization() {
        let g = KGroupDescriptor::from_atoms(vec![KAtom::Free(2), KAtom::C0SeqZ, KAtom::Free(0), KAtom::Free(3)]);
        assert_eq!(g.to_string(), "Z^5 (+) c0(Z>=0, Z)");
        assert_eq!(g.canonical(), g);
        assert_eq!(g.canonical().to_string(), g.to_string());
        let h = KGroupDescriptor::from_atoms(vec![KAtom::C0SeqZ, KAtom::Free(5)]);
        assert_eq!(g, h);
        assert_eq!(KGroupDescriptor::from_atoms(vec![KAtom::Free(0)]).to_string(), "0");
        assert_ne!(g, KGroupDescriptor::zero());
    }

    #[test]
    fn split_consistency() {
        for c in [cls(3, "2"), cls(5, "7"), cls(5, "teich(2)"), cls(7, "-1")] {
            let a = algebra_k_groups(&c).unwrap();
            let i = ideal_k_groups(&c, false).unwrap();
            assert_eq!(a.k0, i.k0.with(KAtom::Free(1)));
            assert_eq!(a.k1, i.k1.with(KAtom::Free(1)));
        }
        let c = cls(7, "teich(3)");
        let a = primed_algebra_k_groups(&c).unwrap();
        let i = ideal_k_groups(&c, true).unwrap();
        assert_eq!(a.k0, i.k0.with(KAtom::Free(6)));
        assert!(a.k1.is_zero() && i.k1.is_zero());
    }
}
