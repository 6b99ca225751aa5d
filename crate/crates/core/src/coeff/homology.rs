//! Homology of free complexes over `F2` and `F2[U]`.
//!
//! Over `F2[U]` the differential of a homogeneous complex has monomial
//! entries, so a pivot of globally minimal `U`-exponent divides everything
//! in its row and column. Each pivot `x -> U^k y` is split off by
//! elementary basis changes `e_c' = e_c + U^l e_d`, all of which are
//! recorded; replaying them turns original coordinates into summand
//! coordinates. Over `F2` a dense elimination is used instead.

use std::collections::{BTreeMap, BTreeSet};

use super::complex::{Chain, FreeComplex, Ring};
use super::f2::{kernel, BitVec, Echelon};
use super::poly::UPoly;
use crate::error::{Error, Result};

/// A cyclic summand: `F2[U]` (order `None`) or `F2[U]/U^k`. Over `F2`
/// every summand is a copy of `F2` and has order `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub chain: Chain,
    pub grading: i64,
    pub order: Option<u32>,
}

/// Coordinates of a homology class, one polynomial per summand. Torsion
/// coordinates are reduced modulo the order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    pub coords: Vec<UPoly>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(UPoly::is_zero)
    }
}

#[derive(Clone, Debug)]
enum Role {
    Summand(usize),
    Killed,
    Source,
}

#[derive(Clone, Debug)]
enum Engine {
    Reduced {
        transcript: Vec<(usize, usize, u32)>,
        role: Vec<Role>,
    },
    Dense {
        echelon: Echelon,
        tag_len: usize,
        classes: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Homology {
    complex: FreeComplex,
    summands: Vec<Summand>,
    engine: Engine,
}

impl Homology {
    /// Computes the decomposition. The complex must validate.
    pub fn compute(c: &FreeComplex) -> Result<Homology> {
        match c.ring() {
            Ring::FUV => Err(Error::UnsupportedRing("FUV".into())),
            Ring::F2 => {
                check_valid(c)?;
                Ok(dense(c))
            }
            Ring::FU => {
                if !c.is_graded() {
                    return Err(Error::NonHomogeneous("FU homology needs a graded complex".into()));
                }
                check_valid(c)?;
                reduce(c)
            }
        }
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn ring(&self) -> Ring {
        self.complex.ring()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Total dimension over `F2`; for `F2[U]` this is only finite when
    /// there are no towers, so it counts summands instead.
    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn towers(&self) -> impl Iterator<Item = &Summand> + '_ {
        self.summands.iter().filter(|s| s.order.is_none())
    }

    pub fn tower_rank(&self) -> usize {
        self.towers().count()
    }

    /// Sorted `(grading, order)` multiset, independent of generator order.
    pub fn signature(&self) -> Vec<(i64, Option<u32>)> {
        let mut v: Vec<_> = self.summands.iter().map(|s| (s.grading, s.order)).collect();
        v.sort();
        v
    }

    /// `F2`-dimension of the degree `r` part (over `F2[U]`, counting
    /// `U^m s` for every summand `s`).
    pub fn dim_in_grading(&self, r: i64) -> usize {
        self.summands
            .iter()
            .filter(|s| match self.ring() {
                Ring::F2 => s.grading == r,
                _ => {
                    let d = s.grading - r;
                    d >= 0 && d % 2 == 0 && s.order.is_none_or(|k| d / 2 < k as i64)
                }
            })
            .count()
    }

    /// Homology class of a cycle, in summand coordinates.
    pub fn class_of(&self, chain: &Chain) -> Result<HomologyClass> {
        if !self.complex.boundary(chain)?.is_zero() {
            return Err(Error::NotACycle);
        }
        match &self.engine {
            Engine::Dense {
                echelon,
                tag_len,
                classes,
            } => {
                let n = self.complex.len();
                let mut v = BitVec::zeros(n);
                for (i, c) in chain.iter() {
                    if c.exponents().contains(&0) {
                        v.set(i, true);
                    }
                }
                let (rem, tag) = echelon.reduce(v, BitVec::zeros(*tag_len));
                if !rem.is_zero() {
                    return Err(Error::Internal("cycle outside cycle space".into()));
                }
                let coords = (0..*classes)
                    .map(|h| if tag.get(h) { UPoly::one() } else { UPoly::zero() })
                    .collect();
                Ok(HomologyClass { coords })
            }
            Engine::Reduced { transcript, role } => {
                let mut v: Vec<UPoly> = vec![UPoly::zero(); self.complex.len()];
                for (i, c) in chain.iter() {
                    v[i] = c.clone();
                }
                for &(c, x, l) in transcript {
                    if !v[c].is_zero() {
                        let add = v[c].shifted(l);
                        v[x] += &add;
                    }
                }
                let mut coords = vec![UPoly::zero(); self.summands.len()];
                for (i, r) in role.iter().enumerate() {
                    match r {
                        Role::Summand(s) => {
                            coords[*s] = match self.summands[*s].order {
                                Some(k) => v[i].truncated(k),
                                None => v[i].clone(),
                            }
                        }
                        Role::Source if !v[i].is_zero() => {
                            return Err(Error::Internal("cycle has a component on a source".into()))
                        }
                        _ => {}
                    }
                }
                Ok(HomologyClass { coords })
            }
        }
    }

    /// `U^k` times a class.
    pub fn u_multiply(&self, class: &HomologyClass, k: u32) -> HomologyClass {
        if self.ring() == Ring::F2 {
            return if k == 0 {
                class.clone()
            } else {
                HomologyClass {
                    coords: vec![UPoly::zero(); class.coords.len()],
                }
            };
        }
        let coords = class
            .coords
            .iter()
            .zip(&self.summands)
            .map(|(c, s)| match s.order {
                Some(ord) => c.shifted(k).truncated(ord),
                None => c.shifted(k),
            })
            .collect();
        HomologyClass { coords }
    }

    pub fn is_boundary(&self, chain: &Chain) -> Result<bool> {
        Ok(self.class_of(chain)?.is_zero())
    }
}

fn check_valid(c: &FreeComplex) -> Result<()> {
    let report = c.validate();
    match report.violations.first() {
        None => Ok(()),
        Some(v @ super::complex::Violation::NonZeroSquare { .. }) => Err(Error::NonZeroSquare(v.to_string())),
        Some(v) => Err(Error::NonHomogeneous(v.to_string())),
    }
}

fn dense(c: &FreeComplex) -> Homology {
    let n = c.len();
    let images: Vec<BitVec> = (0..n)
        .map(|i| {
            let mut v = BitVec::zeros(n);
            for e in c.out_entries(i) {
                v.flip(e.to);
            }
            v
        })
        .collect();
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = if c.is_graded() { c.grading(i) } else { 0 };
        groups.entry(r).or_default().push(i);
    }
    let mut cycles: Vec<(i64, BitVec)> = Vec::new();
    for (&r, members) in &groups {
        let local: Vec<BitVec> = members.iter().map(|&i| images[i].clone()).collect();
        for k in kernel(&local) {
            let mut z = BitVec::zeros(n);
            for j in k.ones() {
                z.set(members[j], true);
            }
            cycles.push((r, z));
        }
    }
    let classes = cycles.len();
    let mut echelon = Echelon::new();
    for img in &images {
        echelon.insert(img.clone(), BitVec::zeros(classes));
    }
    let mut summands = Vec::new();
    for (r, z) in cycles {
        let tag = BitVec::unit(classes, summands.len());
        if echelon.insert(z.clone(), tag).is_none() {
            let mut chain = Chain::zero();
            for i in z.ones() {
                chain.add_term(i, &UPoly::one());
            }
            summands.push(Summand {
                chain,
                grading: r,
                order: None,
            });
        }
    }
    Homology {
        complex: c.clone(),
        engine: Engine::Dense {
            echelon,
            tag_len: classes,
            classes: summands.len(),
        },
        summands,
    }
}

struct Work {
    cols: Vec<BTreeMap<usize, u32>>,
    rows: Vec<BTreeSet<usize>>,
    queue: BTreeSet<(u32, usize, usize)>,
    basis: Vec<Chain>,
    transcript: Vec<(usize, usize, u32)>,
}

impl Work {
    fn toggle(&mut self, s: usize, t: usize, e: u32) -> Result<()> {
        match self.cols[s].get(&t).copied() {
            Some(old) if old == e => {
                self.cols[s].remove(&t);
                self.rows[t].remove(&s);
                self.queue.remove(&(e, s, t));
            }
            Some(_) => {
                return Err(Error::NonHomogeneous(
                    "two exponents met during reduction".into(),
                ))
            }
            None => {
                self.cols[s].insert(t, e);
                self.rows[t].insert(s);
                self.queue.insert((e, s, t));
            }
        }
        Ok(())
    }

    /// `e_c' = e_c + U^l e_d`: column `c` gains `U^l` column `d`, row `d`
    /// gains `U^l` row `c`.
    fn change(&mut self, c: usize, d: usize, l: u32) -> Result<()> {
        let col: Vec<(usize, u32)> = self.cols[d].iter().map(|(&t, &e)| (t, e)).collect();
        for (t, e) in col {
            self.toggle(c, t, e + l)?;
        }
        let row: Vec<usize> = self.rows[c].iter().copied().collect();
        for s in row {
            let e = self.cols[s][&c];
            self.toggle(s, d, e + l)?;
        }
        let add = self.basis[d].shifted(l);
        self.basis[c].add_chain(&add);
        self.transcript.push((c, d, l));
        Ok(())
    }
}

fn reduce(c: &FreeComplex) -> Result<Homology> {
    let n = c.len();
    let mut w = Work {
        cols: vec![BTreeMap::new(); n],
        rows: vec![BTreeSet::new(); n],
        queue: BTreeSet::new(),
        basis: (0..n).map(Chain::generator).collect(),
        transcript: Vec::new(),
    };
    for e in c.entries() {
        w.toggle(e.from, e.to, e.coeff.u_exp)?;
    }
    let mut role: Vec<Option<Role>> = vec![None; n];
    let mut torsion: Vec<(usize, u32)> = Vec::new();
    while let Some(&(k, x, y)) = w.queue.iter().next() {
        let others: Vec<(usize, u32)> = w.cols[x]
            .iter()
            .filter(|(&t, _)| t != y)
            .map(|(&t, &e)| (t, e))
            .collect();
        for (z, m) in others {
            w.change(y, z, m - k)?;
        }
        let sources: Vec<(usize, u32)> = w.rows[y]
            .iter()
            .filter(|&&s| s != x)
            .map(|&s| (s, w.cols[s][&y]))
            .collect();
        for (s, m) in sources {
            w.change(s, x, m - k)?;
        }
        if w.cols[x].len() != 1 || w.rows[y].len() != 1 || !w.cols[y].is_empty() || !w.rows[x].is_empty() {
            return Err(Error::Internal("pivot did not split off".into()));
        }
        w.toggle(x, y, k)?;
        role[x] = Some(Role::Source);
        if k == 0 {
            role[y] = Some(Role::Killed);
        } else {
            torsion.push((y, k));
        }
    }
    let mut summands = Vec::new();
    for i in 0..n {
        if role[i].is_none() && !torsion.iter().any(|&(y, _)| y == i) {
            role[i] = Some(Role::Summand(summands.len()));
            summands.push(Summand {
                chain: w.basis[i].clone(),
                grading: c.grading(i),
                order: None,
            });
        }
    }
    torsion.sort_by_key(|&(y, _)| y);
    for (y, k) in torsion {
        role[y] = Some(Role::Summand(summands.len()));
        summands.push(Summand {
            chain: w.basis[y].clone(),
            grading: c.grading(y),
            order: Some(k),
        });
    }
    Ok(Homology {
        complex: c.clone(),
        summands,
        engine: Engine::Reduced {
            transcript: w.transcript,
            role: role.into_iter().map(|r| r.unwrap()).collect(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fu(gens: &[(&str, i64)], arrows: &[(&str, &str, u32)]) -> FreeComplex {
        let mut b = FreeComplex::builder(Ring::FU);
        for &(id, g) in gens {
            b.generator(id, g, None).unwrap();
        }
        for &(f, t, u) in arrows {
            b.arrow(f, t, u, 0).unwrap();
        }
        b.build()
    }

    #[test]
    fn single_generator_is_a_tower() {
        let h = Homology::compute(&fu(&[("x", 0)], &[])).unwrap();
        assert_eq!(h.signature(), vec![(0, None)]);
    }

    #[test]
    fn torsion_order_from_pivot() {
        let c = fu(&[("a", 0), ("b", 3)], &[("a", "b", 2)]);
        let h = Homology::compute(&c).unwrap();
        assert_eq!(h.signature(), vec![(3, Some(2))]);
        let b = c.chain(&[("b", 0)]).unwrap();
        let class = h.class_of(&b).unwrap();
        assert!(!class.is_zero());
        assert!(!h.u_multiply(&class, 1).is_zero());
        assert!(h.u_multiply(&class, 2).is_zero());
        assert!(h.is_boundary(&c.chain(&[("b", 2)]).unwrap()).unwrap());
    }

    #[test]
    fn non_cycle_is_rejected() {
        let c = fu(&[("a", 0), ("b", 3)], &[("a", "b", 2)]);
        let h = Homology::compute(&c).unwrap();
        assert!(matches!(h.class_of(&c.chain(&[("a", 0)]).unwrap()), Err(Error::NotACycle)));
    }

    #[test]
    fn a0_box_summand() {
        // a -> Ub + Vc, Ub -> U e, Vc -> U e after renaming UV to U.
        let c = fu(
            &[("a", 0), ("Ub", -1), ("Vc", -1), ("e", 0)],
            &[("a", "Ub", 0), ("a", "Vc", 0), ("Ub", "e", 1), ("Vc", "e", 1)],
        );
        let h = Homology::compute(&c).unwrap();
        assert_eq!(h.signature(), vec![(0, Some(1))]);
        let z = c.chain(&[("Ub", 0), ("Vc", 0)]).unwrap();
        assert!(h.is_boundary(&z).unwrap());
        let e = c.chain(&[("e", 0)]).unwrap();
        assert!(!h.is_boundary(&e).unwrap());
        assert!(h.is_boundary(&e.shifted(1)).unwrap());
    }

    #[test]
    fn dense_engine_over_f2() {
        let mut b = FreeComplex::builder(Ring::F2).ungraded();
        for id in ["a", "b", "c"] {
            b.generator(id, 0, None).unwrap();
        }
        b.arrow("a", "b", 0, 0).unwrap();
        let c = b.build();
        let h = Homology::compute(&c).unwrap();
        assert_eq!(h.rank(), 1);
        assert!(h.is_boundary(&c.chain(&[("b", 0)]).unwrap()).unwrap());
        assert!(!h.is_boundary(&c.chain(&[("c", 0)]).unwrap()).unwrap());
    }
}
