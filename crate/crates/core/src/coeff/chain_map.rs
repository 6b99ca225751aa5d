use std::collections::BTreeMap;

use super::complex::{Chain, Entry, FreeComplex, Generator, Ring};
use super::homology::Homology;
use super::poly::{UPoly, UVMonomial};
use crate::error::{Error, Result};

/// An `F2[U]`-linear map given by the images of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    images: Vec<Chain>,
}

impl ChainMap {
    pub fn zero(source: &FreeComplex) -> Self {
        ChainMap {
            images: vec![Chain::zero(); source.len()],
        }
    }

    pub fn identity(source: &FreeComplex) -> Self {
        ChainMap {
            images: (0..source.len()).map(Chain::generator).collect(),
        }
    }

    pub fn from_images(images: Vec<Chain>) -> Self {
        ChainMap { images }
    }

    /// Builds a map from `(from id, to id, U-exponent)` triples; repeated
    /// triples cancel.
    pub fn from_entries(source: &FreeComplex, target: &FreeComplex, entries: &[(&str, &str, u32)]) -> Result<Self> {
        let mut m = Self::zero(source);
        for &(f, t, u) in entries {
            let i = source.index_of(f)?;
            m.images[i].add_term(target.index_of(t)?, &UPoly::monomial(u));
        }
        Ok(m)
    }

    pub fn image(&self, i: usize) -> &Chain {
        &self.images[i]
    }

    pub fn images(&self) -> &[Chain] {
        &self.images
    }

    pub fn apply(&self, c: &Chain) -> Chain {
        let mut r = Chain::zero();
        for (i, coeff) in c.iter() {
            for (j, d) in self.images[i].iter() {
                r.add_term(j, &(coeff * d));
            }
        }
        r
    }

    pub fn sum(&self, other: &ChainMap) -> ChainMap {
        ChainMap {
            images: self.images.iter().zip(&other.images).map(|(a, b)| a.sum(b)).collect(),
        }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &ChainMap) -> ChainMap {
        ChainMap {
            images: first.images.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Checks `d f = f d`.
    pub fn is_chain_map(&self, source: &FreeComplex, target: &FreeComplex) -> Result<bool> {
        if self.images.len() != source.len() {
            return Ok(false);
        }
        for i in 0..source.len() {
            let lhs = target.boundary(&self.images[i])?;
            let rhs = self.apply(&source.boundary(&Chain::generator(i))?);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every term preserves the Maslov grading.
    pub fn preserves_grading(&self, source: &FreeComplex, target: &FreeComplex) -> bool {
        self.images.iter().enumerate().all(|(i, c)| {
            c.iter().all(|(j, coeff)| {
                coeff
                    .exponents()
                    .iter()
                    .all(|&u| target.grading(j) - 2 * u as i64 == source.grading(i))
            })
        })
    }

    /// Moves the map onto another target complex with the same generator
    /// ids (e.g. from a box tensor product onto a printed presentation).
    pub fn retarget(&self, from: &FreeComplex, to: &FreeComplex) -> Result<ChainMap> {
        let mut images = Vec::with_capacity(self.images.len());
        for c in &self.images {
            let mut r = Chain::zero();
            for (j, coeff) in c.iter() {
                r.add_term(to.index_of(from.id(j))?, coeff);
            }
            images.push(r);
        }
        Ok(ChainMap { images })
    }
}

/// The complex `Hom(C, D)` with basis `x* (x) y`, graded by
/// `gr(y) - gr(x)`, with `d(x* (x) y) = x* (x) dy + (d* x*) (x) y`.
pub fn hom_complex(c: &FreeComplex, d: &FreeComplex) -> Result<FreeComplex> {
    if c.ring() != d.ring() || c.ring() == Ring::FUV {
        return Err(Error::UnsupportedRing(format!("{} -> {}", c.ring(), d.ring())));
    }
    let graded = c.is_graded() && d.is_graded();
    let nd = d.len();
    let mut generators = Vec::with_capacity(c.len() * nd);
    for x in c.generators() {
        for y in d.generators() {
            generators.push(Generator {
                id: format!("{}*>{}", x.id, y.id),
                gr_u: if graded { y.gr_u - x.gr_u } else { 0 },
                gr_v: None,
            });
        }
    }
    let mut raw = Vec::new();
    for x in 0..c.len() {
        for e in d.entries() {
            raw.push(Entry {
                from: x * nd + e.from,
                to: x * nd + e.to,
                coeff: e.coeff,
            });
        }
    }
    for e in c.entries() {
        // d(e.to* (x) y) contains e.from* (x) y.
        for y in 0..nd {
            raw.push(Entry {
                from: e.to * nd + y,
                to: e.from * nd + y,
                coeff: UVMonomial::new(e.coeff.u_exp, 0),
            });
        }
    }
    Ok(FreeComplex::from_parts(c.ring(), graded, generators, raw))
}

/// Decides whether `f` and `g` are chain homotopic by testing whether
/// `f + g` is a boundary in `Hom(C, D)`, one homogeneous piece at a time.
pub fn are_chain_homotopic(f: &ChainMap, g: &ChainMap, c: &FreeComplex, d: &FreeComplex) -> Result<bool> {
    for (name, m) in [("first", f), ("second", g)] {
        if !m.is_chain_map(c, d)? {
            return Err(Error::NotAChainMap(format!("{name} argument")));
        }
    }
    let h = f.sum(g);
    let hom = hom_complex(c, d)?;
    let nd = d.len();
    let mut pieces: BTreeMap<i64, Chain> = BTreeMap::new();
    for (x, img) in h.images.iter().enumerate() {
        for (y, coeff) in img.iter() {
            for &u in coeff.exponents() {
                let deg = if hom.is_graded() {
                    hom.grading(x * nd + y) - 2 * u as i64
                } else {
                    0
                };
                pieces.entry(deg).or_default().add_term(x * nd + y, &UPoly::monomial(u));
            }
        }
    }
    if pieces.is_empty() {
        return Ok(true);
    }
    let homology = Homology::compute(&hom)?;
    for piece in pieces.values() {
        if !homology.is_boundary(piece)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow_complex() -> FreeComplex {
        let mut b = FreeComplex::builder(Ring::FU);
        b.generator("a", 1, None).unwrap();
        b.generator("b", 0, None).unwrap();
        b.arrow("a", "b", 0, 0).unwrap();
        b.build()
    }

    #[test]
    fn identity_on_acyclic_is_null_homotopic() {
        let c = arrow_complex();
        let id = ChainMap::identity(&c);
        let zero = ChainMap::zero(&c);
        assert!(are_chain_homotopic(&id, &zero, &c, &c).unwrap());
        assert!(are_chain_homotopic(&id, &id, &c, &c).unwrap());
    }

    #[test]
    fn identity_on_point_is_not_null_homotopic() {
        let mut b = FreeComplex::builder(Ring::FU);
        b.generator("x", 0, None).unwrap();
        let c = b.build();
        let id = ChainMap::identity(&c);
        assert!(!are_chain_homotopic(&id, &ChainMap::zero(&c), &c, &c).unwrap());
    }

    #[test]
    fn non_chain_maps_are_rejected() {
        let c = arrow_complex();
        let f = ChainMap::from_entries(&c, &c, &[("a", "a", 0)]).unwrap();
        assert!(matches!(
            are_chain_homotopic(&f, &f, &c, &c),
            Err(Error::NotAChainMap(_))
        ));
    }

    #[test]
    fn hom_complex_squares_to_zero() {
        let c = arrow_complex();
        assert!(hom_complex(&c, &c).unwrap().validate().is_ok());
    }
}
