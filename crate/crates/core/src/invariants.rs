//! Numerical invariants: torsion order, `tau`, `d`, the involutive
//! correction terms and `V0`, and the disk-map constraint solver.

use std::collections::BTreeMap;
use std::fmt;

use crate::bordered::DMorphism;
use crate::catalog::{self, Config};
use crate::coeff::f2::{kernel, BitVec, Echelon};
use crate::coeff::{are_chain_homotopic, Chain, ChainMap, ComplexBuilder, FreeComplex, Homology, HomologyClass, Ring};
use crate::error::{Error, Result};
use crate::pairing::box_morphism;

/// Largest finite summand order, 0 when the homology is free.
pub fn torsion_order(h: &Homology) -> u32 {
    h.summands().iter().filter_map(|s| s.order).max().unwrap_or(0)
}

/// `tau` of a difference class together with the classes certifying it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    pub value: u32,
    /// `U^{value-1}` times the class, nonzero (absent when `value = 0`).
    pub last_nonzero: Option<HomologyClass>,
    /// `U^value` times the class, which is zero.
    pub first_zero: HomologyClass,
}

/// The least `n` with `U^n [c] = 0`.
pub fn tau_distance(h: &Homology, diff: &Chain) -> Result<Tau> {
    let class = h.class_of(diff)?;
    let towers = h.summands().iter().zip(&class.coords).any(|(s, c)| s.order.is_none() && !c.is_zero());
    if towers {
        return Err(Error::NotTorsion);
    }
    let mut n = 0;
    let mut prev = None;
    loop {
        let cur = h.u_multiply(&class, n);
        if cur.is_zero() {
            return Ok(Tau {
                value: n,
                last_nonzero: prev,
                first_zero: cur,
            });
        }
        prev = Some(cur);
        n += 1;
    }
}

/// Grading of the generator of the unique tower.
pub fn d_invariant(c: &FreeComplex) -> Result<i64> {
    let h = Homology::compute(c)?;
    d_of(&h)
}

fn d_of(h: &Homology) -> Result<i64> {
    let towers: Vec<_> = h.towers().collect();
    match towers.as_slice() {
        [t] => Ok(t.grading),
        _ => Err(Error::TowerRank(towers.len())),
    }
}

/// An `F2[U]`-complex with a grading-preserving involution up to homotopy.
#[derive(Clone, Debug)]
pub struct IotaComplex {
    complex: FreeComplex,
    involution: ChainMap,
}

impl IotaComplex {
    pub fn new(complex: FreeComplex, involution: ChainMap) -> Result<IotaComplex> {
        if complex.ring() != Ring::FU || !complex.is_graded() {
            return Err(Error::UnsupportedRing("iota-complexes live over graded F2[U]".into()));
        }
        if !involution.is_chain_map(&complex, &complex)? {
            return Err(Error::NotAChainMap("involution".into()));
        }
        if !involution.preserves_grading(&complex, &complex) {
            return Err(Error::NonHomogeneous("involution does not preserve gradings".into()));
        }
        let square = involution.compose(&involution);
        if !are_chain_homotopic(&square, &ChainMap::identity(&complex), &complex, &complex)? {
            return Err(Error::InvalidParameter("involution does not square to the identity up to homotopy".into()));
        }
        Ok(IotaComplex { complex, involution })
    }

    /// The trivial complex `F2[U]` at grading 0 with the identity.
    pub fn trivial() -> IotaComplex {
        let mut b = ComplexBuilder::new(Ring::FU);
        b.generator("pt", 0, None).expect("fresh id");
        let c = b.build();
        let id = ChainMap::identity(&c);
        IotaComplex::new(c, id).expect("identity is an involution")
    }

    /// `A_0^-(J)` summand with one of the four named involutions.
    pub fn a0_j(name: &str) -> Result<IotaComplex> {
        IotaComplex::new(catalog::a0_j_summand(), catalog::a0_j_involution(name)?)
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn involution(&self) -> &ChainMap {
        &self.involution
    }
}

/// `Cone(C -> Q.C)` for the map `Q(1 + iota)`. The copy of `C` sits one
/// grading above `C`, the `Q` copy at the gradings of `C`; this is the
/// shift for which the trivial complex has both correction terms 0.
#[derive(Clone, Debug)]
pub struct QCone {
    pub complex: FreeComplex,
    /// Index in `complex` of the `Q` copy of each generator of `C`.
    pub q_index: Vec<usize>,
}

pub fn iota_cone(ic: &IotaComplex) -> Result<QCone> {
    let c = &ic.complex;
    let n = c.len();
    let mut b = ComplexBuilder::new(Ring::FU);
    for g in c.generators() {
        b.generator(&g.id, g.gr_u + 1, None)?;
    }
    for g in c.generators() {
        b.generator(&format!("Q{}", g.id), g.gr_u, None)?;
    }
    for e in c.entries() {
        b.arrow_idx(e.from, e.to, e.coeff.u_exp, 0)?;
        b.arrow_idx(n + e.from, n + e.to, e.coeff.u_exp, 0)?;
    }
    for i in 0..n {
        let mut conn = Chain::generator(i);
        conn.add_chain(ic.involution.image(i));
        for (j, coeff) in conn.iter() {
            for &u in coeff.exponents() {
                b.arrow_idx(i, n + j, u, 0)?;
            }
        }
    }
    Ok(QCone {
        complex: b.build(),
        q_index: (n..2 * n).collect(),
    })
}

/// Both correction terms, labelled by formula:
/// `d_lower = max{r : exists x in H_r with U^n x not in im Q for all n} - 1`,
/// `d_upper = max{r : exists x in H_r, non-torsion, with U^m x in im Q for some m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorrectionTerms {
    pub d_lower: i64,
    pub d_upper: i64,
}

/// Degree-`r` part of `H_*` of the cone with basis `U^m s` for summands `s`.
struct Graded<'a> {
    h: &'a Homology,
    q_images: Vec<HomologyClass>,
}

impl<'a> Graded<'a> {
    fn basis(&self, r: i64) -> Vec<(usize, u32)> {
        let mut v = Vec::new();
        for (s, sm) in self.h.summands().iter().enumerate() {
            let d = sm.grading - r;
            if d >= 0 && d % 2 == 0 {
                let m = (d / 2) as u32;
                if sm.order.is_none_or(|k| m < k) {
                    v.push((s, m));
                }
            }
        }
        v
    }

    fn to_bits(&self, class: &HomologyClass, basis: &[(usize, u32)]) -> BitVec {
        let mut v = BitVec::zeros(basis.len());
        for (k, &(s, m)) in basis.iter().enumerate() {
            if class.coords[s].exponents().contains(&m) {
                v.set(k, true);
            }
        }
        v
    }

    fn class(&self, s: usize, m: u32) -> HomologyClass {
        let mut coords = vec![crate::coeff::UPoly::zero(); self.h.summands().len()];
        coords[s] = crate::coeff::UPoly::monomial(m);
        self.h.u_multiply(&HomologyClass { coords }, 0)
    }

    /// `U^n` on the degree-`r` basis, as bit vectors over degree `r - 2n`.
    fn u_power(&self, r: i64, n: u32) -> Vec<BitVec> {
        let target = self.basis(r - 2 * n as i64);
        self.basis(r)
            .into_iter()
            .map(|(s, m)| self.to_bits(&self.h.u_multiply(&self.class(s, m), n), &target))
            .collect()
    }

    /// `im Q` in degree `r`, i.e. `Q_*` of degree `r + 1`.
    fn image_of_q(&self, r: i64) -> Echelon {
        let target = self.basis(r);
        let mut e = Echelon::new();
        for (s, m) in self.basis(r + 1) {
            let img = self.h.u_multiply(&self.q_images[s], m);
            e.insert(self.to_bits(&img, &target), BitVec::zeros(0));
        }
        e
    }

    fn is_tower(&self, s: usize) -> bool {
        self.h.summands()[s].order.is_none()
    }
}

pub fn correction_terms(ic: &IotaComplex) -> Result<CorrectionTerms> {
    let base = Homology::compute(&ic.complex)?;
    if base.tower_rank() != 1 {
        return Err(Error::TowerRank(base.tower_rank()));
    }
    let cone = iota_cone(ic)?;
    let h = Homology::compute(&cone.complex)?;
    let n_gen = ic.complex.len();
    let q_images = h
        .summands()
        .iter()
        .map(|s| {
            let mut q = Chain::zero();
            for (i, coeff) in s.chain.iter() {
                if i < n_gen {
                    q.add_term(cone.q_index[i], coeff);
                }
            }
            h.class_of(&q)
        })
        .collect::<Result<Vec<_>>>()?;
    let g = Graded { h: &h, q_images };
    let big_n = (cone.complex.len() as u32) + torsion_order(&h);
    let top = h.summands().iter().map(|s| s.grading).max().unwrap_or(0);
    let bottom = h.summands().iter().map(|s| s.grading).min().unwrap_or(0) - 2 * big_n as i64 - 2;

    let mut d_lower = None;
    let mut d_upper = None;
    let mut r = top;
    while r >= bottom && (d_lower.is_none() || d_upper.is_none()) {
        let basis = g.basis(r);
        if !basis.is_empty() {
            let im = g.image_of_q(r - 2 * big_n as i64);
            let powers = g.u_power(r, big_n);
            // U^N w modulo im Q, for each basis vector w.
            let residues: Vec<BitVec> = powers.into_iter().map(|v| im.normal_form(v)).collect();
            if d_lower.is_none() && residues.iter().any(|v| !v.is_zero()) {
                d_lower = Some(r - 1);
            }
            if d_upper.is_none() {
                let w = kernel(&residues);
                let tower_hit = w.iter().any(|v| v.ones().any(|k| g.is_tower(basis[k].0)));
                if tower_hit {
                    d_upper = Some(r);
                }
            }
        }
        r -= 1;
    }
    match (d_lower, d_upper) {
        (Some(d_lower), Some(d_upper)) => Ok(CorrectionTerms { d_lower, d_upper }),
        _ => Err(Error::Internal("correction terms not reached within the stable range".into())),
    }
}

/// A half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn from_int(n: i64) -> HalfInt {
        HalfInt(2 * n)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `-d_lower / 2`.
pub fn v0_bar(ic: &IotaComplex) -> Result<HalfInt> {
    Ok(HalfInt(-correction_terms(ic)?.d_lower))
}

/// Candidate values `x + eps1 e1 + eps2 e2` of a pair of disk maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskMapSolutions {
    pub involution: String,
    pub pairs: Vec<(Chain, Chain)>,
}

fn disk_candidates(c: &FreeComplex) -> Result<Vec<Chain>> {
    let mut out = Vec::new();
    for (e1, e2) in [(false, false), (true, false), (false, true), (true, true)] {
        let mut terms = vec![("x", 0)];
        if e1 {
            terms.push(("e1", 0));
        }
        if e2 {
            terms.push(("e2", 0));
        }
        out.push(c.chain(&terms)?);
    }
    Ok(out)
}

/// For the involution with `V0 = 1` and its composite with `iota`, all
/// unordered pairs of distinct candidates exchanged by the involution in
/// homology.
pub fn solve_disk_map_constraints() -> Result<Vec<DiskMapSolutions>> {
    let c = catalog::a0_j_summand();
    let h = Homology::compute(&c)?;
    let maps: Vec<(&str, ChainMap)> = catalog::INVOLUTION_NAMES
        .iter()
        .map(|&n| Ok((n, catalog::a0_j_involution(n)?)))
        .collect::<Result<_>>()?;
    let mut nontrivial = Vec::new();
    for (_, f) in &maps {
        if v0_bar(&IotaComplex::new(c.clone(), f.clone())?)? == HalfInt::from_int(1) {
            nontrivial.push(f.clone());
        }
    }
    let [f] = nontrivial.as_slice() else {
        return Err(Error::Internal(format!("expected one involution with V0 = 1, found {}", nontrivial.len())));
    };
    let iota = &maps.iter().find(|(n, _)| *n == "iota").expect("named").1;
    let admissible = [f.clone(), iota.compose(f)];
    let candidates = disk_candidates(&c)?;
    let mut out = Vec::new();
    for g in admissible {
        let name = maps
            .iter()
            .find(|(_, m)| are_chain_homotopic(m, &g, &c, &c).unwrap_or(false))
            .map(|(n, _)| n.to_string())
            .ok_or_else(|| Error::Internal("admissible involution is not one of the four".into()))?;
        let mut pairs = Vec::new();
        for (i, a) in candidates.iter().enumerate() {
            for b in &candidates[i + 1..] {
                if h.class_of(&g.apply(a))? == h.class_of(b)? && h.class_of(a)? != h.class_of(b)? {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
        out.push(DiskMapSolutions { involution: name, pairs });
    }
    out.sort_by(|a, b| a.involution.cmp(&b.involution));
    Ok(out)
}

/// Whether `(I [x] f)(alpha_k (x) v)` is nonzero in `HF^(S^3_n(J))`, for
/// `k = 1..n`, where `f` is the candidate map sum.
pub fn surgery_map_classes(n: usize, eps1: bool, eps2: bool) -> Result<Vec<(String, bool)>> {
    let m = catalog::cfa_framed_solid_torus_hat(n)?;
    let f: DMorphism = catalog::candidate_map_sum(eps1, eps2);
    let bm = box_morphism(&m, &f, &catalog::cfd_unknot(), &catalog::cfd_j())?;
    let h = Homology::compute(&bm.target.complex)?;
    let mut out = Vec::new();
    for k in 1..=n {
        let id = format!("{}|v", catalog::alpha_id(k));
        let img = bm.image_of(&id)?;
        out.push((id, !h.class_of(&img)?.is_zero()));
    }
    Ok(out)
}

/// `(I [x] f)(alpha|v)` on the cable complex, moved onto `cfk_cable_j(p)`.
pub fn cable_candidate_image(p: usize, eps1: bool, eps2: bool, cfg: &Config) -> Result<(FreeComplex, Chain)> {
    let m = catalog::cfa_cable(p, cfg)?;
    let f = catalog::candidate_map_sum(eps1, eps2);
    let bm = box_morphism(&m, &f, &catalog::cfd_unknot(), &catalog::cfd_j())?;
    let target = catalog::cfk_cable_j(p)?;
    let moved = bm.map.retarget(&bm.target.complex, &target)?;
    let src = bm.source.complex.index_of("alpha|v")?;
    let image = moved.image(src).clone();
    Ok((target, image))
}

/// `v0_bar` for each of the four named involutions on `A_0^-(J)`.
pub fn v0_sweep() -> Result<BTreeMap<String, HalfInt>> {
    catalog::INVOLUTION_NAMES
        .iter()
        .map(|&n| Ok((n.to_string(), v0_bar(&IotaComplex::a0_j(n)?)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_complex_calibrates_to_zero() {
        let ct = correction_terms(&IotaComplex::trivial()).unwrap();
        assert_eq!(ct, CorrectionTerms { d_lower: 0, d_upper: 0 });
    }

    #[test]
    fn four_involutions() {
        let v = v0_sweep().unwrap();
        assert_eq!(v["id"], HalfInt(0));
        assert_eq!(v["iota"], HalfInt(0));
        assert_eq!(v["sigma"], HalfInt(0));
        assert_eq!(v["iota_sigma"], HalfInt::from_int(1));
        for n in catalog::INVOLUTION_NAMES {
            let ic = IotaComplex::a0_j(n).unwrap();
            let ct = correction_terms(&ic).unwrap();
            let d = d_invariant(ic.complex()).unwrap();
            assert!(ct.d_lower <= d && d <= ct.d_upper, "{n}: {ct:?} d = {d}");
        }
    }

    #[test]
    fn disk_map_pairs() {
        let sols = solve_disk_map_constraints().unwrap();
        let c = catalog::a0_j_summand();
        let e = c.chain(&[("e1", 0), ("e2", 0)]).unwrap();
        let counts: Vec<(String, usize)> = sols.iter().map(|s| (s.involution.clone(), s.pairs.len())).collect();
        assert_eq!(counts, vec![("iota_sigma".to_string(), 2), ("sigma".to_string(), 1)]);
        for s in &sols {
            for (a, b) in &s.pairs {
                assert_eq!(a.sum(b), e);
            }
        }
    }

    #[test]
    fn tau_of_e1_plus_e2_in_j() {
        let c = catalog::cfk_j().set_v_zero().unwrap();
        let h = Homology::compute(&c).unwrap();
        let t = tau_distance(&h, &c.chain(&[("e1", 0), ("e2", 0)]).unwrap()).unwrap();
        assert_eq!(t.value, 1);
        assert_eq!(tau_distance(&h, &Chain::zero()).unwrap().value, 0);
    }

    #[test]
    fn cable_tau_equals_p() {
        let cfg = Config { jmax: 16 };
        for p in [2, 3, 5] {
            for eps2 in [false, true] {
                let (c, img) = cable_candidate_image(p, false, eps2, &cfg).unwrap();
                let h = Homology::compute(&c).unwrap();
                assert_eq!(torsion_order(&h), p as u32);
                assert_eq!(tau_distance(&h, &img).unwrap().value, p as u32);
            }
        }
    }

    #[test]
    fn surgery_map_sum_hits_alpha_one_only() {
        for n in 1..=4 {
            for eps2 in [false, true] {
                let v = surgery_map_classes(n, false, eps2).unwrap();
                assert!(v[0].1);
                assert!(v[1..].iter().all(|(_, nz)| !nz));
            }
        }
    }
}
