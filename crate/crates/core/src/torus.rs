//! The torus algebra: idempotents, Reeb elements and their products.
//!
//! Convention: `rho1`, `rho3`, `rho123` run from `i0` to `i1`, `rho2` from
//! `i1` to `i0`, `rho12` sits in `i0 A i0` and `rho23` in `i1 A i1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Idem {
    #[serde(rename = "i0")]
    I0,
    #[serde(rename = "i1")]
    I1,
}

impl Idem {
    pub fn unit(self) -> AlgBasis {
        match self {
            Idem::I0 => AlgBasis::I0,
            Idem::I1 => AlgBasis::I1,
        }
    }
}

impl fmt::Display for Idem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Idem::I0 => "i0",
            Idem::I1 => "i1",
        })
    }
}

impl FromStr for Idem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "i0" => Ok(Idem::I0),
            "i1" => Ok(Idem::I1),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgBasis {
    #[serde(rename = "i0")]
    I0,
    #[serde(rename = "i1")]
    I1,
    #[serde(rename = "r1")]
    R1,
    #[serde(rename = "r2")]
    R2,
    #[serde(rename = "r3")]
    R3,
    #[serde(rename = "r12")]
    R12,
    #[serde(rename = "r23")]
    R23,
    #[serde(rename = "r123")]
    R123,
}

use AlgBasis::*;

impl AlgBasis {
    pub const ALL: [AlgBasis; 8] = [I0, I1, R1, R2, R3, R12, R23, R123];
    pub const REEB: [AlgBasis; 6] = [R1, R2, R3, R12, R23, R123];

    pub fn left(self) -> Idem {
        match self {
            I1 | R2 | R23 => Idem::I1,
            I0 | R1 | R3 | R12 | R123 => Idem::I0,
        }
    }

    pub fn right(self) -> Idem {
        match self {
            I0 | R2 | R12 => Idem::I0,
            I1 | R1 | R3 | R23 | R123 => Idem::I1,
        }
    }

    pub fn is_idempotent(self) -> bool {
        matches!(self, I0 | I1)
    }

    /// Product of two basis elements, `None` when it vanishes.
    pub fn mul(self, other: AlgBasis) -> Option<AlgBasis> {
        if self.right() != other.left() {
            return None;
        }
        if self.is_idempotent() {
            return Some(other);
        }
        if other.is_idempotent() {
            return Some(self);
        }
        match (self, other) {
            (R1, R2) => Some(R12),
            (R2, R3) => Some(R23),
            (R1, R23) | (R12, R3) => Some(R123),
            _ => None,
        }
    }

    /// Ways of writing `self` as a product of two Reeb elements.
    pub fn factorizations(self) -> &'static [(AlgBasis, AlgBasis)] {
        match self {
            R12 => &[(R1, R2)],
            R23 => &[(R2, R3)],
            R123 => &[(R1, R23), (R12, R3)],
            _ => &[],
        }
    }
}

impl fmt::Display for AlgBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            I0 => "i0",
            I1 => "i1",
            R1 => "r1",
            R2 => "r2",
            R3 => "r3",
            R12 => "r12",
            R23 => "r23",
            R123 => "r123",
        })
    }
}

impl FromStr for AlgBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        AlgBasis::ALL
            .iter()
            .copied()
            .find(|a| a.to_string() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// An F2-linear combination of basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AlgElement {
    terms: BTreeSet<AlgBasis>,
}

impl AlgElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(a: AlgBasis) -> Self {
        let mut e = Self::zero();
        e.add_basis(a);
        e
    }

    pub fn add_basis(&mut self, a: AlgBasis) {
        if !self.terms.remove(&a) {
            self.terms.insert(a);
        }
    }

    pub fn add(&self, other: &AlgElement) -> AlgElement {
        let mut r = self.clone();
        for &a in &other.terms {
            r.add_basis(a);
        }
        r
    }

    pub fn mul(&self, other: &AlgElement) -> AlgElement {
        let mut r = AlgElement::zero();
        for &a in &self.terms {
            for &b in &other.terms {
                if let Some(c) = a.mul(b) {
                    r.add_basis(c);
                }
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = AlgBasis> + '_ {
        self.terms.iter().copied()
    }
}

/// Whether a sequence of Reeb elements chains from `left` to `right`.
pub fn composable(seq: &[AlgBasis], left: Idem, right: Idem) -> bool {
    let mut cur = left;
    for a in seq {
        if a.left() != cur {
            return false;
        }
        cur = a.right();
    }
    cur == right
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotents_act_on_matching_side() {
        assert_eq!(I0.mul(R1), Some(R1));
        assert_eq!(R1.mul(I0), None);
        assert_eq!(R1.mul(I1), Some(R1));
    }

    #[test]
    fn reeb_products() {
        assert_eq!(R1.mul(R2), Some(R12));
        assert_eq!(R3.mul(R2), None);
        assert_eq!(R12.mul(R3), Some(R123));
        assert_eq!(R1.mul(R23), Some(R123));
        assert_eq!(R2.mul(R1), None);
        assert_eq!(R12.mul(R12), None);
    }

    #[test]
    fn associativity_on_all_triples() {
        let as_elt = |o: Option<AlgBasis>| o.map(AlgElement::basis).unwrap_or_default();
        for a in AlgBasis::ALL {
            for b in AlgBasis::ALL {
                for c in AlgBasis::ALL {
                    let ab = as_elt(a.mul(b)).mul(&AlgElement::basis(c));
                    let bc = AlgElement::basis(a).mul(&as_elt(b.mul(c)));
                    assert_eq!(ab, bc, "({a} {b}) {c}");
                }
            }
        }
    }

    #[test]
    fn factorizations_multiply_back() {
        for a in AlgBasis::REEB {
            for &(x, y) in a.factorizations() {
                assert_eq!(x.mul(y), Some(a));
            }
        }
    }

    #[test]
    fn composable_sequences() {
        assert!(composable(&[R3, R23, R2], Idem::I0, Idem::I0));
        assert!(!composable(&[R1, R1], Idem::I0, Idem::I1));
        assert!(!composable(&[R1, R1], Idem::I1, Idem::I1));
        assert!(composable(&[], Idem::I0, Idem::I0));
    }

    #[test]
    fn names_round_trip() {
        for a in AlgBasis::ALL {
            assert_eq!(a.to_string().parse::<AlgBasis>().unwrap(), a);
        }
        assert!("r13".parse::<AlgBasis>().is_err());
    }
}
