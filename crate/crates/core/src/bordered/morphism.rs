use std::collections::{BTreeSet, HashMap};

use super::type_d::TypeDStructure;
use crate::coeff::{Chain, FreeComplex, Homology, HomologyClass, Ring};
use crate::error::{Error, Result};
use crate::torus::AlgBasis;

/// A morphism of type-D structures, as a set of single entries
/// `from -> alg (x) to` over F2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DMorphism {
    entries: BTreeSet<(String, AlgBasis, String)>,
}

impl DMorphism {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn entry(from: &str, alg: AlgBasis, to: &str) -> Self {
        let mut m = Self::zero();
        m.toggle(from, alg, to);
        m
    }

    pub fn toggle(&mut self, from: &str, alg: AlgBasis, to: &str) {
        let key = (from.to_string(), alg, to.to_string());
        if !self.entries.remove(&key) {
            self.entries.insert(key);
        }
    }

    pub fn with(mut self, from: &str, alg: AlgBasis, to: &str) -> Self {
        self.toggle(from, alg, to);
        self
    }

    pub fn sum(&self, other: &DMorphism) -> DMorphism {
        let mut r = self.clone();
        for (f, a, t) in &other.entries {
            r.toggle(f, *a, t);
        }
        r
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, AlgBasis, &str)> + '_ {
        self.entries.iter().map(|(f, a, t)| (f.as_str(), *a, t.as_str()))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks that every entry is typed between the given structures.
    pub fn check_typing(&self, source: &TypeDStructure, target: &TypeDStructure) -> Result<()> {
        for (f, a, t) in self.entries() {
            let i = source.index_of(f)?;
            let j = target.index_of(t)?;
            if a.left() != source.idem(i) || a.right() != target.idem(j) {
                return Err(Error::IllTyped(format!("{f} -{a}-> {t}")));
            }
        }
        Ok(())
    }
}

/// The morphism complex `Mor(N1, N2)` over F2, with one basis element per
/// typed entry `(x, a, y)`.
#[derive(Clone, Debug)]
pub struct MorComplex {
    complex: FreeComplex,
    labels: Vec<(usize, AlgBasis, usize)>,
    lookup: HashMap<(usize, AlgBasis, usize), usize>,
    source: TypeDStructure,
    target: TypeDStructure,
}

impl MorComplex {
    /// `d(f) = delta2 . f + f . delta1`.
    pub fn new(n1: &TypeDStructure, n2: &TypeDStructure) -> Result<MorComplex> {
        n1.check_well_typed()?;
        n2.check_well_typed()?;
        let mut labels = Vec::new();
        let mut lookup = HashMap::new();
        for x in 0..n1.len() {
            for y in 0..n2.len() {
                for a in AlgBasis::ALL {
                    if a.left() == n1.idem(x) && a.right() == n2.idem(y) {
                        lookup.insert((x, a, y), labels.len());
                        labels.push((x, a, y));
                    }
                }
            }
        }
        let mut b = FreeComplex::builder(Ring::F2).ungraded();
        for &(x, a, y) in &labels {
            b.generator(&format!("{}-{}->{}", n1.id(x), a, n2.id(y)), 0, None)?;
        }
        for (k, &(x, a, y)) in labels.iter().enumerate() {
            for arr in n2.out_arrows(y) {
                if let Some(p) = a.mul(arr.rho) {
                    b.arrow_idx(k, lookup[&(x, p, arr.to)], 0, 0)?;
                }
            }
        }
        for arr in n1.arrows() {
            // (x, a, y) with x = arr.to receives into (arr.from, rho a, y).
            for y in 0..n2.len() {
                for a in AlgBasis::ALL {
                    if let Some(&k) = lookup.get(&(arr.to, a, y)) {
                        if let Some(p) = arr.rho.mul(a) {
                            b.arrow_idx(k, lookup[&(arr.from, p, y)], 0, 0)?;
                        }
                    }
                }
            }
        }
        Ok(MorComplex {
            complex: b.build(),
            labels,
            lookup,
            source: n1.clone(),
            target: n2.clone(),
        })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, k: usize) -> (&str, AlgBasis, &str) {
        let (x, a, y) = self.labels[k];
        (self.source.id(x), a, self.target.id(y))
    }

    pub fn chain_of(&self, f: &DMorphism) -> Result<Chain> {
        f.check_typing(&self.source, &self.target)?;
        let mut c = Chain::zero();
        for (from, a, to) in f.entries() {
            let key = (self.source.index_of(from)?, a, self.target.index_of(to)?);
            c.add_term(self.lookup[&key], &crate::coeff::UPoly::one());
        }
        Ok(c)
    }

    pub fn morphism_of(&self, c: &Chain) -> DMorphism {
        let mut m = DMorphism::zero();
        for (k, _) in c.iter() {
            let (x, a, y) = self.label(k);
            m.toggle(x, a, y);
        }
        m
    }

    pub fn differential(&self, f: &DMorphism) -> Result<DMorphism> {
        let d = self.complex.boundary(&self.chain_of(f)?)?;
        Ok(self.morphism_of(&d))
    }

    pub fn is_cycle(&self, f: &DMorphism) -> Result<bool> {
        Ok(self.differential(f)?.is_zero())
    }

    pub fn homology(&self) -> Result<Homology> {
        Homology::compute(&self.complex)
    }

    pub fn class_of(&self, h: &Homology, f: &DMorphism) -> Result<HomologyClass> {
        h.class_of(&self.chain_of(f)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::Idem;
    use AlgBasis::*;

    fn unknot() -> TypeDStructure {
        let mut b = TypeDStructure::builder();
        b.generator("v", Idem::I0).unwrap();
        b.arrow("v", R12, "v").unwrap();
        b.build()
    }

    #[test]
    fn endomorphisms_of_the_loop() {
        let n = unknot();
        let mor = MorComplex::new(&n, &n).unwrap();
        assert_eq!(mor.dim(), 2);
        assert!(mor.complex().entries().is_empty());
        assert_eq!(mor.homology().unwrap().rank(), 2);
    }

    #[test]
    fn ill_typed_morphism_is_rejected() {
        let n = unknot();
        let mor = MorComplex::new(&n, &n).unwrap();
        assert!(mor.chain_of(&DMorphism::entry("v", R1, "v")).is_err());
    }
}
