use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{UPoly, UVMonomial};
use crate::error::{Error, Result};

/// Ground ring of a free complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    F2,
    FU,
    FUV,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Ring::F2 => "F2",
            Ring::FU => "FU",
            Ring::FUV => "FUV",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    /// Maslov grading for singly graded complexes, `gr_U` for bigraded ones.
    pub gr_u: i64,
    pub gr_v: Option<i64>,
}

/// One differential entry `from -> coeff * to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Entry {
    pub from: usize,
    pub to: usize,
    pub coeff: UVMonomial,
}

/// A formal sum of generators with `F2[U]` coefficients. Over `F2` every
/// coefficient is the constant polynomial.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Chain {
    terms: BTreeMap<usize, UPoly>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn generator(i: usize) -> Self {
        Self::term(i, UPoly::one())
    }

    pub fn term(i: usize, coeff: UPoly) -> Self {
        let mut c = Chain::zero();
        c.add_term(i, &coeff);
        c
    }

    pub fn add_term(&mut self, i: usize, coeff: &UPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_chain(&mut self, other: &Chain) {
        for (&i, c) in &other.terms {
            self.add_term(i, c);
        }
    }

    pub fn sum(&self, other: &Chain) -> Chain {
        let mut r = self.clone();
        r.add_chain(other);
        r
    }

    /// Multiplication by `U^k`.
    pub fn shifted(&self, k: u32) -> Chain {
        Chain {
            terms: self.terms.iter().map(|(&i, c)| (i, c.shifted(k))).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Option<&UPoly> {
        self.terms.get(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &UPoly)> + '_ {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reindexes the support, e.g. to move a chain into another complex.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Chain {
        let mut r = Chain::zero();
        for (&i, c) in &self.terms {
            r.add_term(f(i), c);
        }
        r
    }
}

/// A single problem found by [`FreeComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonZeroSquare {
        from: String,
        to: String,
        terms: Vec<UVMonomial>,
    },
    NonHomogeneous {
        from: String,
        to: String,
        coeff: UVMonomial,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonZeroSquare { from, to, terms } => {
                write!(f, "d^2({from}) has nonzero coefficient on {to} (")?;
                for (n, t) in terms.iter().enumerate() {
                    if n > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "U^{}V^{}", t.u_exp, t.v_exp)?;
                }
                write!(f, ")")
            }
            Violation::NonHomogeneous { from, to, coeff } => write!(
                f,
                "entry {from} -> U^{}V^{} {to} is not homogeneous",
                coeff.u_exp, coeff.v_exp
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Finitely generated free chain complex with a sparse monomial
/// differential.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Ring,
    graded: bool,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    entries: Vec<Entry>,
    out: Vec<Vec<usize>>,
}

impl PartialEq for FreeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.graded == other.graded
            && self.generators == other.generators
            && self.entries == other.entries
    }
}

impl Eq for FreeComplex {}

pub struct ComplexBuilder {
    ring: Ring,
    graded: bool,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    raw: Vec<Entry>,
}

impl ComplexBuilder {
    pub fn new(ring: Ring) -> Self {
        ComplexBuilder {
            ring,
            graded: true,
            generators: Vec::new(),
            index: HashMap::new(),
            raw: Vec::new(),
        }
    }

    /// Marks the complex as ungraded; gradings are then ignored.
    pub fn ungraded(mut self) -> Self {
        self.graded = false;
        self
    }

    pub fn generator(&mut self, id: &str, gr_u: i64, gr_v: Option<i64>) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::DuplicateGenerator(id.to_string()));
        }
        let gr_v = if self.ring == Ring::FUV {
            Some(gr_v.ok_or_else(|| Error::RingMismatch {
                from: id.to_string(),
                to: id.to_string(),
                ring: self.ring.to_string(),
                detail: "bigraded ring needs gr_v".into(),
            })?)
        } else {
            None
        };
        let i = self.generators.len();
        self.generators.push(Generator {
            id: id.to_string(),
            gr_u,
            gr_v,
        });
        self.index.insert(id.to_string(), i);
        Ok(i)
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    pub fn arrow(&mut self, from: &str, to: &str, u_exp: u32, v_exp: u32) -> Result<()> {
        let f = self.index_of(from)?;
        let t = self.index_of(to)?;
        self.arrow_idx(f, t, u_exp, v_exp)
    }

    pub fn arrow_idx(&mut self, from: usize, to: usize, u_exp: u32, v_exp: u32) -> Result<()> {
        let bad = |detail: &str| Error::RingMismatch {
            from: self.generators[from].id.clone(),
            to: self.generators[to].id.clone(),
            ring: self.ring.to_string(),
            detail: detail.to_string(),
        };
        match self.ring {
            Ring::F2 if u_exp != 0 || v_exp != 0 => return Err(bad("F2 entries carry no U or V")),
            Ring::FU if v_exp != 0 => return Err(bad("FU entries carry no V")),
            _ => {}
        }
        self.raw.push(Entry {
            from,
            to,
            coeff: UVMonomial::new(u_exp, v_exp),
        });
        Ok(())
    }

    pub fn build(self) -> FreeComplex {
        FreeComplex::assemble(self.ring, self.graded, self.generators, self.raw)
    }

    /// Builds the complex after assigning Maslov gradings from homogeneity.
    /// Each connected component is anchored at its first generator, which
    /// gets grading 0.
    pub fn build_inferring_gradings(mut self) -> Result<FreeComplex> {
        if self.ring == Ring::FUV {
            return Err(Error::UnsupportedRing(self.ring.to_string()));
        }
        let n = self.generators.len();
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
        for e in &self.raw {
            let shift = -1 + 2 * e.coeff.u_exp as i64;
            adj[e.from].push((e.to, shift));
            adj[e.to].push((e.from, -shift));
        }
        let mut gr: Vec<Option<i64>> = vec![None; n];
        for start in 0..n {
            if gr[start].is_some() {
                continue;
            }
            gr[start] = Some(0);
            let mut queue = VecDeque::from([start]);
            while let Some(s) = queue.pop_front() {
                let g = gr[s].unwrap();
                for &(t, shift) in &adj[s] {
                    match gr[t] {
                        None => {
                            gr[t] = Some(g + shift);
                            queue.push_back(t);
                        }
                        Some(h) if h != g + shift => {
                            return Err(Error::NonHomogeneous(format!(
                                "grading conflict at `{}`",
                                self.generators[t].id
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        for (g, v) in self.generators.iter_mut().zip(gr) {
            g.gr_u = v.unwrap();
        }
        self.graded = true;
        Ok(self.build())
    }
}

impl FreeComplex {
    pub fn builder(ring: Ring) -> ComplexBuilder {
        ComplexBuilder::new(ring)
    }

    fn assemble(ring: Ring, graded: bool, generators: Vec<Generator>, mut raw: Vec<Entry>) -> Self {
        raw.sort();
        let mut entries: Vec<Entry> = Vec::with_capacity(raw.len());
        for e in raw {
            if entries.last() == Some(&e) {
                entries.pop();
            } else {
                entries.push(e);
            }
        }
        let mut out = vec![Vec::new(); generators.len()];
        for (k, e) in entries.iter().enumerate() {
            out[e.from].push(k);
        }
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.id.clone(), i))
            .collect();
        FreeComplex {
            ring,
            graded,
            generators,
            index,
            entries,
            out,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn id(&self, i: usize) -> &str {
        &self.generators[i].id
    }

    pub fn grading(&self, i: usize) -> i64 {
        self.generators[i].gr_u
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn out_entries(&self, i: usize) -> impl Iterator<Item = &Entry> + '_ {
        self.out[i].iter().map(move |&k| &self.entries[k])
    }

    /// Checks `d^2 = 0` and homogeneity, reporting every offending pair.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for x in 0..self.len() {
            let mut acc: BTreeMap<(usize, UVMonomial), bool> = BTreeMap::new();
            for e1 in self.out_entries(x) {
                for e2 in self.out_entries(e1.to) {
                    let slot = acc.entry((e2.to, e1.coeff.times(&e2.coeff))).or_default();
                    *slot = !*slot;
                }
            }
            let mut by_target: BTreeMap<usize, Vec<UVMonomial>> = BTreeMap::new();
            for ((z, m), odd) in acc {
                if odd {
                    by_target.entry(z).or_default().push(m);
                }
            }
            for (z, terms) in by_target {
                violations.push(Violation::NonZeroSquare {
                    from: self.id(x).to_string(),
                    to: self.id(z).to_string(),
                    terms,
                });
            }
        }
        if self.graded {
            for e in &self.entries {
                if !self.entry_is_homogeneous(e) {
                    violations.push(Violation::NonHomogeneous {
                        from: self.id(e.from).to_string(),
                        to: self.id(e.to).to_string(),
                        coeff: e.coeff,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    fn entry_is_homogeneous(&self, e: &Entry) -> bool {
        let s = &self.generators[e.from];
        let t = &self.generators[e.to];
        let u_ok = t.gr_u - 2 * e.coeff.u_exp as i64 == s.gr_u - 1;
        match self.ring {
            Ring::FUV => {
                let (sv, tv) = (s.gr_v.unwrap_or(0), t.gr_v.unwrap_or(0));
                u_ok && tv - 2 * e.coeff.v_exp as i64 == sv - 1
            }
            _ => u_ok,
        }
    }

    fn require_single_variable(&self) -> Result<()> {
        if self.ring == Ring::FUV {
            Err(Error::UnsupportedRing(self.ring.to_string()))
        } else {
            Ok(())
        }
    }

    /// Differential of a chain over `F2` or `F2[U]`.
    pub fn boundary(&self, c: &Chain) -> Result<Chain> {
        self.require_single_variable()?;
        let mut r = Chain::zero();
        for (i, coeff) in c.iter() {
            for e in self.out_entries(i) {
                r.add_term(e.to, &coeff.shifted(e.coeff.u_exp));
            }
        }
        Ok(r)
    }

    pub fn chain(&self, terms: &[(&str, u32)]) -> Result<Chain> {
        let mut c = Chain::zero();
        for &(id, k) in terms {
            c.add_term(self.index_of(id)?, &UPoly::monomial(k));
        }
        Ok(c)
    }

    pub fn format_chain(&self, c: &Chain) -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, coeff) in c.iter() {
            for &e in coeff.exponents() {
                parts.push(match e {
                    0 => self.id(i).to_string(),
                    1 => format!("U*{}", self.id(i)),
                    _ => format!("U^{e}*{}", self.id(i)),
                });
            }
        }
        parts.join(" + ")
    }

    /// Terms of a chain as `(generator id, U-exponent)` pairs, sorted.
    pub fn chain_terms(&self, c: &Chain) -> Vec<(String, u32)> {
        let mut v: Vec<(String, u32)> = c
            .iter()
            .flat_map(|(i, coeff)| coeff.exponents().iter().map(move |&e| (self.id(i).to_string(), e)))
            .collect();
        v.sort();
        v
    }

    /// Setting `V = 0`: keeps the entries without a `V` and grades by `gr_U`.
    pub fn set_v_zero(&self) -> Result<FreeComplex> {
        if self.ring != Ring::FUV {
            return Err(Error::UnsupportedRing(self.ring.to_string()));
        }
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                id: g.id.clone(),
                gr_u: g.gr_u,
                gr_v: None,
            })
            .collect();
        let raw = self
            .entries
            .iter()
            .filter(|e| e.coeff.v_exp == 0)
            .copied()
            .collect();
        Ok(FreeComplex::assemble(Ring::FU, self.graded, generators, raw))
    }

    /// Alexander grading `(gr_U - gr_V) / 2`.
    pub fn alexander(&self, i: usize) -> Result<i64> {
        let g = &self.generators[i];
        let diff = g.gr_u - g.gr_v.ok_or(Error::UnsupportedRing(self.ring.to_string()))?;
        if diff % 2 != 0 {
            return Err(Error::OddAlexander(g.id.clone()));
        }
        Ok(diff / 2)
    }

    /// The Alexander-grading-zero subcomplex, as a complex over `F2[UV]`
    /// with `UV` renamed `U`. Generator `x` is replaced by `U^A x` or
    /// `V^-A x`; ids get a `U`/`V` prefix (with exponent when above one).
    pub fn a0_minus(&self) -> Result<FreeComplex> {
        if self.ring != Ring::FUV {
            return Err(Error::UnsupportedRing(self.ring.to_string()));
        }
        let mut lift = Vec::with_capacity(self.len());
        let mut generators = Vec::with_capacity(self.len());
        for (i, g) in self.generators.iter().enumerate() {
            let a = self.alexander(i)?;
            let (pu, pv) = (a.max(0) as u32, (-a).max(0) as u32);
            let prefix = match (pu, pv) {
                (0, 0) => String::new(),
                (1, 0) => "U".to_string(),
                (k, 0) => format!("U^{k}"),
                (0, 1) => "V".to_string(),
                (0, k) => format!("V^{k}"),
                _ => unreachable!(),
            };
            lift.push((pu, pv));
            generators.push(Generator {
                id: format!("{prefix}{}", g.id),
                gr_u: g.gr_u - 2 * pu as i64,
                gr_v: None,
            });
        }
        let mut raw = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let (ax, bx) = lift[e.from];
            let (ay, by) = lift[e.to];
            let alpha = (e.coeff.u_exp + ax) as i64 - ay as i64;
            let beta = (e.coeff.v_exp + bx) as i64 - by as i64;
            if alpha != beta || alpha < 0 {
                return Err(Error::NonHomogeneous(format!(
                    "entry {} -> {} is not Alexander homogeneous",
                    self.id(e.from),
                    self.id(e.to)
                )));
            }
            raw.push(Entry {
                from: e.from,
                to: e.to,
                coeff: UVMonomial::new(alpha as u32, 0),
            });
        }
        Ok(FreeComplex::assemble(Ring::FU, self.graded, generators, raw))
    }

    /// Restriction to a set of generators closed under the differential.
    pub fn subcomplex(&self, ids: &[&str]) -> Result<FreeComplex> {
        let keep: Vec<usize> = ids.iter().map(|id| self.index_of(id)).collect::<Result<_>>()?;
        let mut new_index = HashMap::new();
        for (n, &i) in keep.iter().enumerate() {
            new_index.insert(i, n);
        }
        let generators = keep.iter().map(|&i| self.generators[i].clone()).collect();
        let mut raw = Vec::new();
        for &i in &keep {
            for e in self.out_entries(i) {
                let to = *new_index.get(&e.to).ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "`{}` maps outside the requested subcomplex",
                        self.id(i)
                    ))
                })?;
                raw.push(Entry {
                    from: new_index[&i],
                    to,
                    coeff: e.coeff,
                });
            }
        }
        Ok(FreeComplex::assemble(self.ring, self.graded, generators, raw))
    }

    /// Same complex with generators listed in the order `perm`
    /// (`perm[n]` is the old index of the new generator `n`).
    pub fn permuted(&self, perm: &[usize]) -> FreeComplex {
        let mut inv = vec![0; perm.len()];
        for (n, &o) in perm.iter().enumerate() {
            inv[o] = n;
        }
        let generators = perm.iter().map(|&o| self.generators[o].clone()).collect();
        let raw = self
            .entries
            .iter()
            .map(|e| Entry {
                from: inv[e.from],
                to: inv[e.to],
                coeff: e.coeff,
            })
            .collect();
        FreeComplex::assemble(self.ring, self.graded, generators, raw)
    }

    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> FreeComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                id: f(&g.id),
                ..g.clone()
            })
            .collect();
        FreeComplex::assemble(self.ring, self.graded, generators, self.entries.clone())
    }

    /// Adds `k` to every Maslov grading.
    pub fn grading_shifted(&self, k: i64) -> FreeComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                gr_u: g.gr_u + k,
                ..g.clone()
            })
            .collect();
        FreeComplex::assemble(self.ring, self.graded, generators, self.entries.clone())
    }

    pub(crate) fn from_parts(ring: Ring, graded: bool, generators: Vec<Generator>, raw: Vec<Entry>) -> Self {
        FreeComplex::assemble(ring, graded, generators, raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn box_uv() -> FreeComplex {
        let mut b = FreeComplex::builder(Ring::FUV);
        b.generator("a", 0, Some(0)).unwrap();
        b.generator("b", 1, Some(-1)).unwrap();
        b.generator("c", -1, Some(1)).unwrap();
        b.generator("e", 0, Some(0)).unwrap();
        b.arrow("a", "b", 1, 0).unwrap();
        b.arrow("a", "c", 0, 1).unwrap();
        b.arrow("b", "e", 0, 1).unwrap();
        b.arrow("c", "e", 1, 0).unwrap();
        b.build()
    }

    #[test]
    fn empty_complex_is_valid() {
        assert!(FreeComplex::builder(Ring::FU).build().validate().is_ok());
    }

    #[test]
    fn unit_box_is_valid() {
        assert!(box_uv().validate().is_ok());
    }

    #[test]
    fn deleting_an_arrow_breaks_the_square() {
        let mut b = FreeComplex::builder(Ring::FUV);
        for (id, u, v) in [("a", 0, 0), ("b", 1, -1), ("c", -1, 1), ("e", 0, 0)] {
            b.generator(id, u, Some(v)).unwrap();
        }
        b.arrow("a", "b", 1, 0).unwrap();
        b.arrow("a", "c", 0, 1).unwrap();
        b.arrow("c", "e", 1, 0).unwrap();
        let report = b.build().validate();
        assert_eq!(
            report.violations,
            vec![Violation::NonZeroSquare {
                from: "a".into(),
                to: "e".into(),
                terms: vec![UVMonomial::new(1, 1)],
            }]
        );
    }

    #[test]
    fn v_zero_keeps_u_entries() {
        let c = box_uv().set_v_zero().unwrap();
        let pairs: Vec<_> = c
            .entries()
            .iter()
            .map(|e| (c.id(e.from), c.id(e.to), e.coeff.u_exp))
            .collect();
        assert_eq!(pairs, vec![("a", "b", 1), ("c", "e", 1)]);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn a0_of_unit_box() {
        let c = box_uv().a0_minus().unwrap();
        let ids: Vec<_> = c.generators().iter().map(|g| g.id.as_str()).collect();
        assert_eq!(ids, vec!["a", "Ub", "Vc", "e"]);
        let pairs: Vec<_> = c
            .entries()
            .iter()
            .map(|e| (c.id(e.from), c.id(e.to), e.coeff.u_exp))
            .collect();
        assert_eq!(pairs, vec![("a", "Ub", 0), ("a", "Vc", 0), ("Ub", "e", 1), ("Vc", "e", 1)]);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn odd_alexander_is_rejected() {
        let mut b = FreeComplex::builder(Ring::FUV);
        b.generator("x", 1, Some(0)).unwrap();
        assert!(matches!(b.build().a0_minus(), Err(Error::OddAlexander(_))));
    }

    #[test]
    fn inferred_gradings_follow_homogeneity() {
        let mut b = FreeComplex::builder(Ring::FU);
        b.generator("a", 0, None).unwrap();
        b.generator("b", 0, None).unwrap();
        b.generator("c", 0, None).unwrap();
        b.arrow("a", "b", 2, 0).unwrap();
        b.arrow("c", "b", 0, 0).unwrap();
        let c = b.build_inferring_gradings().unwrap();
        assert_eq!((c.grading(0), c.grading(1), c.grading(2)), (0, 3, 4));
    }

    #[test]
    fn duplicate_entries_cancel() {
        let mut b = FreeComplex::builder(Ring::F2).ungraded();
        b.generator("a", 0, None).unwrap();
        b.generator("b", 0, None).unwrap();
        b.arrow("a", "b", 0, 0).unwrap();
        b.arrow("a", "b", 0, 0).unwrap();
        assert!(b.build().entries().is_empty());
    }
}
