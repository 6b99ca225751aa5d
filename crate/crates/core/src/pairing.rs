//! Box tensor products `M [x] N` and the maps `I_M [x] f` induced by
//! morphisms of type-D structures.
//!
//! Paths of `delta^1` arrows are enumerated by depth-first search, pruned
//! against the trie of operation keys of `M`, so the depth is bounded by
//! the longest key even when `N` has loops.

use std::collections::{BTreeMap, HashMap};

use crate::bordered::{DMorphism, Flavor, MorComplex, TypeAModule, TypeDStructure};
use crate::coeff::{Chain, ChainMap, FreeComplex, Ring, UPoly};
use crate::error::{Error, Result};
use crate::torus::AlgBasis;

#[derive(Clone, Debug)]
pub struct BoxComplex {
    pub complex: FreeComplex,
    /// `(module generator, structure generator)` of each box generator.
    pub pairs: Vec<(usize, usize)>,
    /// True when the module omits some input operations, in which case
    /// rows out of the affected generators are incomplete.
    pub partial: bool,
    /// Longest operation key that contributed a term.
    pub deepest_match: usize,
}

impl BoxComplex {
    pub fn id(m: &TypeAModule, n: &TypeDStructure, a: usize, d: usize) -> String {
        format!("{}|{}", m.id(a), n.id(d))
    }
}

struct Pairing<'a> {
    m: &'a TypeAModule,
    n: &'a TypeDStructure,
    lookup: HashMap<(usize, usize), usize>,
    pairs: Vec<(usize, usize)>,
}

impl<'a> Pairing<'a> {
    fn new(m: &'a TypeAModule, n: &'a TypeDStructure) -> Self {
        let mut lookup = HashMap::new();
        let mut pairs = Vec::new();
        for a in 0..m.len() {
            for d in 0..n.len() {
                if m.idem(a) == n.idem(d) {
                    lookup.insert((a, d), pairs.len());
                    pairs.push((a, d));
                }
            }
        }
        Pairing { m, n, lookup, pairs }
    }

    fn generator_ids(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|&(a, d)| BoxComplex::id(self.m, self.n, a, d))
            .collect()
    }

    /// Follows `delta^1` paths from `d`, starting at trie node `node` at
    /// depth `depth`, and reports `(output, U-power, end generator, depth)`
    /// for every key met.
    fn walk(&self, node: usize, d: usize, depth: usize, emit: &mut impl FnMut(usize, u32, usize, usize)) {
        for &(out, u) in self.m.node_outputs(node) {
            emit(out, u, d, depth);
        }
        for arr in self.n.out_arrows(d) {
            if let Some(c) = self.m.child(node, arr.rho) {
                self.walk(c, arr.to, depth + 1, emit);
            }
        }
    }
}

fn ring_of(m: &TypeAModule) -> Ring {
    match m.flavor() {
        Flavor::Minus => Ring::FU,
        Flavor::Hat => Ring::F2,
    }
}

fn assemble(ring: Ring, ids: &[String], arrows: &BTreeMap<(usize, usize, u32), bool>) -> Result<FreeComplex> {
    let mut b = FreeComplex::builder(ring);
    if ring == Ring::F2 {
        b = b.ungraded();
    }
    for id in ids {
        b.generator(id, 0, None)?;
    }
    for (&(f, t, u), &odd) in arrows {
        if odd {
            b.arrow_idx(f, t, u, 0)?;
        }
    }
    match ring {
        Ring::FU => b.build_inferring_gradings(),
        _ => Ok(b.build()),
    }
}

/// The box tensor product. Over the minus flavor the result is an
/// `F2[U]`-complex whose gradings are inferred from homogeneity, anchored
/// at the first generator of each connected component.
pub fn box_tensor(m: &TypeAModule, n: &TypeDStructure) -> Result<BoxComplex> {
    n.check_well_typed()?;
    let p = Pairing::new(m, n);
    let mut arrows: BTreeMap<(usize, usize, u32), bool> = BTreeMap::new();
    let mut deepest = 0;
    for (k, &(a, d)) in p.pairs.iter().enumerate() {
        p.walk(m.root(a), d, 0, &mut |out, u, end, depth| {
            if let Some(&t) = p.lookup.get(&(out, end)) {
                let e = arrows.entry((k, t, u)).or_default();
                *e = !*e;
                deepest = deepest.max(depth);
            }
        });
    }
    let complex = assemble(ring_of(m), &p.generator_ids(), &arrows)?;
    Ok(BoxComplex {
        complex,
        pairs: p.pairs,
        partial: m.is_partial(),
        deepest_match: deepest,
    })
}

/// The map `I_M [x] f` together with its source and target complexes.
#[derive(Clone, Debug)]
pub struct BoxMorphism {
    pub source: BoxComplex,
    pub target: BoxComplex,
    pub map: ChainMap,
}

impl BoxMorphism {
    /// Image of the source generator with the given id.
    pub fn image_of(&self, id: &str) -> Result<Chain> {
        let i = self.source.complex.index_of(id)?;
        Ok(self.map.image(i).clone())
    }
}

/// `x (x) y` maps to the sum over paths `y -> ... -> y_j` in the source,
/// one entry `y_j -> b (x) z` of `f`, then a path `z -> ... -> z_l` in the
/// target, of `m(x, rho.., b, rho'..) (x) z_l`. Unit entries of `f` only
/// contribute with no other inputs.
pub fn box_morphism(m: &TypeAModule, f: &DMorphism, n1: &TypeDStructure, n2: &TypeDStructure) -> Result<BoxMorphism> {
    let mor = MorComplex::new(n1, n2)?;
    if !mor.is_cycle(f)? {
        return Err(Error::MorphismNotACycle);
    }
    let source = box_tensor(m, n1)?;
    let target = box_tensor(m, n2)?;
    let ps = Pairing::new(m, n1);
    let pt = Pairing::new(m, n2);
    let mut by_source: Vec<Vec<(AlgBasis, usize)>> = vec![Vec::new(); n1.len()];
    for (from, a, to) in f.entries() {
        by_source[n1.index_of(from)?].push((a, n2.index_of(to)?));
    }
    let mut images = Vec::with_capacity(ps.pairs.len());
    for &(a, d) in &ps.pairs {
        let mut acc: BTreeMap<(usize, u32), bool> = BTreeMap::new();
        let mut toggle = |t: usize, u: u32| {
            let e = acc.entry((t, u)).or_default();
            *e = !*e;
        };
        let root = m.root(a);
        let mut stack = vec![(root, d)];
        while let Some((node, cur)) = stack.pop() {
            for &(b, z) in &by_source[cur] {
                if b.is_idempotent() {
                    if node == root {
                        toggle(pt.lookup[&(a, z)], 0);
                    }
                } else if let Some(c) = m.child(node, b) {
                    pt.walk(c, z, 0, &mut |out, u, end, _| {
                        if let Some(&t) = pt.lookup.get(&(out, end)) {
                            toggle(t, u);
                        }
                    });
                }
            }
            for arr in n1.out_arrows(cur) {
                if let Some(c) = m.child(node, arr.rho) {
                    stack.push((c, arr.to));
                }
            }
        }
        let mut chain = Chain::zero();
        for ((t, u), odd) in acc {
            if odd {
                chain.add_term(t, &UPoly::monomial(u));
            }
        }
        images.push(chain);
    }
    let map = ChainMap::from_images(images);
    if !map.is_chain_map(&source.complex, &target.complex)? {
        return Err(Error::NotAChainMap("induced map on box tensor products".into()));
    }
    Ok(BoxMorphism { source, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::coeff::Homology;

    fn cfg() -> Config {
        Config { jmax: 8 }
    }

    #[test]
    fn longitude_with_unknot_is_a_point() {
        let b = box_tensor(&cfa_longitude(&cfg()), &cfd_unknot()).unwrap();
        assert_eq!(b.complex.len(), 1);
        assert!(b.complex.entries().is_empty());
    }

    #[test]
    fn longitude_with_j_recovers_v_zero_complex() {
        let b = box_tensor(&cfa_longitude(&cfg()), &cfd_j()).unwrap();
        assert_eq!(b.complex.len(), 17);
        assert!(b.complex.validate().is_ok());
        let expected = cfk_j().set_v_zero().unwrap();
        let h1 = Homology::compute(&b.complex).unwrap();
        let h2 = Homology::compute(&expected).unwrap();
        let orders = |h: &Homology| {
            let mut v: Vec<_> = h.summands().iter().map(|s| s.order).collect();
            v.sort();
            v
        };
        assert_eq!(orders(&h1), orders(&h2));
        let a = b.complex.index_of("alpha|a1").unwrap();
        let out: Vec<_> = b.complex.out_entries(a).map(|e| (b.complex.id(e.to), e.coeff.u_exp)).collect();
        assert_eq!(out, vec![("alpha|b1", 1)]);
    }

    #[test]
    fn framed_surgery_dimensions() {
        for n in 1..=4 {
            let m = cfa_framed_solid_torus_hat(n).unwrap();
            let hj = Homology::compute(&box_tensor(&m, &cfd_j()).unwrap().complex).unwrap();
            assert_eq!(hj.rank(), n + 8);
            let hu = box_tensor(&m, &cfd_unknot()).unwrap();
            assert_eq!(hu.complex.len(), n);
            assert!(hu.complex.entries().is_empty());
        }
    }

    #[test]
    fn longitude_images_of_basis_maps() {
        let m = cfa_longitude(&cfg());
        let (u, j) = (cfd_unknot(), cfd_j());
        let image = |name: &str| {
            let bm = box_morphism(&m, &basis_morphism(name).unwrap(), &u, &j).unwrap();
            bm.target.complex.chain_terms(&bm.image_of("alpha|v").unwrap())
        };
        assert_eq!(image("phi"), vec![("alpha|x".to_string(), 0)]);
        assert_eq!(image("g1"), vec![("alpha|e1".to_string(), 0)]);
        assert!(image("psi").is_empty());
        assert!(image("h1").is_empty());
    }

    #[test]
    fn non_cycle_is_rejected() {
        let f = DMorphism::entry("v", AlgBasis::I0, "e1");
        let r = box_morphism(&cfa_longitude(&cfg()), &f, &cfd_unknot(), &cfd_j());
        assert!(matches!(r, Err(Error::MorphismNotACycle)));
    }
}
