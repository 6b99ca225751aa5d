use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::{composable, AlgBasis, Idem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Minus,
    Hat,
}

/// One table entry `m(gen, rhos) = sum U^u out`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    pub gen: usize,
    pub rhos: Vec<AlgBasis>,
    pub out: Vec<(usize, u32)>,
}

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node {
    children: [u32; 6],
    outputs: Vec<(usize, u32)>,
}

impl Node {
    fn new() -> Self {
        Node {
            children: [NONE; 6],
            outputs: Vec::new(),
        }
    }
}

fn slot(a: AlgBasis) -> usize {
    AlgBasis::REEB
        .iter()
        .position(|&r| r == a)
        .expect("idempotents never index the key trie")
}

/// A right A-infinity module over the torus algebra with a finite
/// operation table, indexed by a trie of input sequences per generator.
#[derive(Clone, Debug)]
pub struct TypeAModule {
    flavor: Flavor,
    generators: Vec<(String, Idem)>,
    index: HashMap<String, usize>,
    ops: Vec<Operation>,
    by_gen: Vec<Vec<usize>>,
    partial: BTreeSet<usize>,
    truncation: Option<usize>,
    nodes: Vec<Node>,
    roots: Vec<usize>,
}

impl PartialEq for TypeAModule {
    fn eq(&self, other: &Self) -> bool {
        self.flavor == other.flavor
            && self.generators == other.generators
            && self.ops == other.ops
            && self.partial == other.partial
            && self.truncation == other.truncation
    }
}

impl Eq for TypeAModule {}

pub struct TypeABuilder {
    flavor: Flavor,
    generators: Vec<(String, Idem)>,
    index: HashMap<String, usize>,
    table: BTreeMap<(usize, Vec<AlgBasis>), BTreeSet<(usize, u32)>>,
    partial: BTreeSet<usize>,
    truncation: Option<usize>,
}

impl TypeABuilder {
    pub fn new(flavor: Flavor) -> Self {
        TypeABuilder {
            flavor,
            generators: Vec::new(),
            index: HashMap::new(),
            table: BTreeMap::new(),
            partial: BTreeSet::new(),
            truncation: None,
        }
    }

    pub fn generator(&mut self, id: &str, idem: Idem) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::DuplicateGenerator(id.to_string()));
        }
        let i = self.generators.len();
        self.generators.push((id.to_string(), idem));
        self.index.insert(id.to_string(), i);
        Ok(i)
    }

    fn idx(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    /// Adds `U^u out` to `m(gen, rhos)`; repeated outputs cancel.
    pub fn op(&mut self, gen: &str, rhos: &[AlgBasis], out: &str, u_exp: u32) -> Result<()> {
        let g = self.idx(gen)?;
        let o = self.idx(out)?;
        self.op_idx(g, rhos, o, u_exp)
    }

    pub fn op_idx(&mut self, gen: usize, rhos: &[AlgBasis], out: usize, u_exp: u32) -> Result<()> {
        if self.flavor == Flavor::Hat && u_exp != 0 {
            return Err(Error::InvalidParameter("hat modules carry no U-powers".into()));
        }
        if let Some(a) = rhos.iter().find(|a| a.is_idempotent()) {
            return Err(Error::IllTyped(format!(
                "idempotent {a} as an input of {}",
                self.generators[gen].0
            )));
        }
        let outs = self.table.entry((gen, rhos.to_vec())).or_default();
        if !outs.remove(&(out, u_exp)) {
            outs.insert((out, u_exp));
        }
        Ok(())
    }

    /// Marks a generator whose own operations are deliberately absent
    /// from the table.
    pub fn omit_inputs_of(&mut self, gen: &str) -> Result<()> {
        let g = self.idx(gen)?;
        self.partial.insert(g);
        Ok(())
    }

    /// Records that infinite families were cut off at `j < jmax`.
    pub fn truncated_at(&mut self, jmax: usize) {
        self.truncation = Some(jmax);
    }

    pub fn build(self) -> TypeAModule {
        let ops = self
            .table
            .into_iter()
            .filter(|(_, outs)| !outs.is_empty())
            .map(|((gen, rhos), outs)| Operation {
                gen,
                rhos,
                out: outs.into_iter().collect(),
            })
            .collect();
        TypeAModule::assemble(self.flavor, self.generators, ops, self.partial, self.truncation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeAViolation {
    IllTyped {
        gen: String,
        rhos: Vec<AlgBasis>,
        out: String,
    },
    Relation {
        gen: String,
        rhos: Vec<AlgBasis>,
        residue: Vec<(String, u32)>,
    },
}

fn seq_str(s: &[AlgBasis]) -> String {
    s.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for TypeAViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeAViolation::IllTyped { gen, rhos, out } => {
                write!(f, "entry m({gen}; {}) -> {out} is ill-typed", seq_str(rhos))
            }
            TypeAViolation::Relation { gen, rhos, residue } => {
                let r: Vec<String> = residue.iter().map(|(g, u)| format!("U^{u} {g}")).collect();
                write!(f, "A-infinity relation on ({gen}; {}) leaves {}", seq_str(rhos), r.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeAReport {
    pub violations: Vec<TypeAViolation>,
    /// Relations evaluated.
    pub checked: usize,
    /// Relations that would need operations of generators whose inputs are
    /// omitted from the table.
    pub skipped: usize,
    /// Sequence length bound used.
    pub bound: usize,
}

impl TypeAReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

enum Eval {
    Residue(BTreeMap<(usize, u32), bool>),
    Skipped,
}

impl TypeAModule {
    pub fn builder(flavor: Flavor) -> TypeABuilder {
        TypeABuilder::new(flavor)
    }

    pub(crate) fn assemble(
        flavor: Flavor,
        generators: Vec<(String, Idem)>,
        ops: Vec<Operation>,
        partial: BTreeSet<usize>,
        truncation: Option<usize>,
    ) -> Self {
        let n = generators.len();
        let mut nodes = Vec::new();
        let mut roots = Vec::with_capacity(n);
        for _ in 0..n {
            roots.push(nodes.len());
            nodes.push(Node::new());
        }
        let mut by_gen = vec![Vec::new(); n];
        for (k, op) in ops.iter().enumerate() {
            by_gen[op.gen].push(k);
            let mut cur = roots[op.gen];
            for &a in &op.rhos {
                let s = slot(a);
                if nodes[cur].children[s] == NONE {
                    nodes[cur].children[s] = nodes.len() as u32;
                    nodes.push(Node::new());
                }
                cur = nodes[cur].children[s] as usize;
            }
            nodes[cur].outputs = op.out.clone();
        }
        let index = generators.iter().enumerate().map(|(i, (id, _))| (id.clone(), i)).collect();
        TypeAModule {
            flavor,
            generators,
            index,
            ops,
            by_gen,
            partial,
            truncation,
            nodes,
            roots,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[(String, Idem)] {
        &self.generators
    }

    pub fn id(&self, i: usize) -> &str {
        &self.generators[i].0
    }

    pub fn idem(&self, i: usize) -> Idem {
        self.generators[i].1
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownGenerator(id.to_string()))
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn partial_generators(&self) -> &BTreeSet<usize> {
        &self.partial
    }

    pub fn is_partial(&self) -> bool {
        !self.partial.is_empty()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn max_key_len(&self) -> usize {
        self.ops.iter().map(|o| o.rhos.len()).max().unwrap_or(0)
    }

    pub(crate) fn root(&self, gen: usize) -> usize {
        self.roots[gen]
    }

    pub(crate) fn child(&self, node: usize, a: AlgBasis) -> Option<usize> {
        if a.is_idempotent() {
            return None;
        }
        match self.nodes[node].children[slot(a)] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    pub(crate) fn node_outputs(&self, node: usize) -> &[(usize, u32)] {
        &self.nodes[node].outputs
    }

    fn walk(&self, start: usize, seq: impl IntoIterator<Item = AlgBasis>) -> Option<usize> {
        let mut cur = start;
        for a in seq {
            cur = self.child(cur, a)?;
        }
        Some(cur)
    }

    /// Outputs of `m(gen, rhos)`.
    pub fn lookup(&self, gen: usize, rhos: &[AlgBasis]) -> &[(usize, u32)] {
        match self.walk(self.roots[gen], rhos.iter().copied()) {
            Some(n) => &self.nodes[n].outputs,
            None => &[],
        }
    }

    /// Length bound used when none is given: one more than the longest
    /// key, capped at `jmax + 2` for truncated families: two keys
    /// `(rho3, rho23^j, rho2)` concatenate to a sequence whose contraction
    /// has `j1 + j2 + 1` copies of `rho23`, which stays below the cut-off
    /// exactly up to that length.
    pub fn default_bound(&self) -> usize {
        let b = self.max_key_len() + 1;
        match self.truncation {
            Some(j) => b.min(j + 2),
            None => b,
        }
    }

    /// Checks entry typing and the A-infinity relations on every sequence
    /// of length at most `up_to_len` on which some term can be nonzero.
    pub fn validate(&self, up_to_len: Option<usize>) -> TypeAReport {
        let bound = up_to_len.unwrap_or_else(|| self.default_bound());
        let mut report = TypeAReport {
            bound,
            ..Default::default()
        };
        for op in &self.ops {
            for &(o, _) in &op.out {
                if !composable(&op.rhos, self.idem(op.gen), self.idem(o)) {
                    report.violations.push(TypeAViolation::IllTyped {
                        gen: self.id(op.gen).to_string(),
                        rhos: op.rhos.clone(),
                        out: self.id(o).to_string(),
                    });
                }
            }
        }
        for x in 0..self.len() {
            let mut seen: HashSet<Vec<AlgBasis>> = HashSet::new();
            let mut cands: Vec<Vec<AlgBasis>> = Vec::new();
            let mut push = |s: Vec<AlgBasis>, seen: &mut HashSet<Vec<AlgBasis>>| {
                if s.len() <= bound && seen.insert(s.clone()) {
                    cands.push(s);
                }
            };
            for &k in &self.by_gen[x] {
                let key = &self.ops[k].rhos;
                for &(y, _) in &self.ops[k].out {
                    for &k2 in &self.by_gen[y] {
                        let key2 = &self.ops[k2].rhos;
                        if key.len() + key2.len() <= bound {
                            let mut s = key.clone();
                            s.extend_from_slice(key2);
                            push(s, &mut seen);
                        }
                    }
                }
                for (pos, a) in key.iter().enumerate() {
                    for &(l, r) in a.factorizations() {
                        let mut s = Vec::with_capacity(key.len() + 1);
                        s.extend_from_slice(&key[..pos]);
                        s.push(l);
                        s.push(r);
                        s.extend_from_slice(&key[pos + 1..]);
                        push(s, &mut seen);
                    }
                }
            }
            cands.sort();
            for s in cands {
                if !self.sequence_typed(x, &s) {
                    continue;
                }
                match self.relation(x, &s) {
                    Eval::Skipped => report.skipped += 1,
                    Eval::Residue(res) => {
                        report.checked += 1;
                        let residue: Vec<(String, u32)> = res
                            .into_iter()
                            .filter(|&(_, odd)| odd)
                            .map(|((g, u), _)| (self.id(g).to_string(), u))
                            .collect();
                        if !residue.is_empty() {
                            report.violations.push(TypeAViolation::Relation {
                                gen: self.id(x).to_string(),
                                rhos: s,
                                residue,
                            });
                        }
                    }
                }
            }
        }
        report
    }

    fn sequence_typed(&self, x: usize, s: &[AlgBasis]) -> bool {
        let mut cur = self.idem(x);
        for a in s {
            if a.left() != cur {
                return false;
            }
            cur = a.right();
        }
        true
    }

    fn relation(&self, x: usize, s: &[AlgBasis]) -> Eval {
        if self.partial.contains(&x) {
            return Eval::Skipped;
        }
        let mut acc: BTreeMap<(usize, u32), bool> = BTreeMap::new();
        let toggle = |acc: &mut BTreeMap<(usize, u32), bool>, g: usize, u: u32| {
            let e = acc.entry((g, u)).or_default();
            *e = !*e;
        };
        let mut node = Some(self.roots[x]);
        for i in 0..=s.len() {
            let Some(n) = node else { break };
            for &(y, u1) in &self.nodes[n].outputs {
                if self.partial.contains(&y) {
                    return Eval::Skipped;
                }
                if let Some(m) = self.walk(self.roots[y], s[i..].iter().copied()) {
                    for &(z, u2) in &self.nodes[m].outputs {
                        toggle(&mut acc, z, u1 + u2);
                    }
                }
            }
            node = s.get(i).and_then(|&a| self.child(n, a));
        }
        for j in 0..s.len().saturating_sub(1) {
            if let Some(c) = s[j].mul(s[j + 1]) {
                let seq = s[..j].iter().copied().chain([c]).chain(s[j + 2..].iter().copied());
                if let Some(m) = self.walk(self.roots[x], seq) {
                    for &(z, u) in &self.nodes[m].outputs {
                        toggle(&mut acc, z, u);
                    }
                }
            }
        }
        Eval::Residue(acc)
    }

    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> TypeAModule {
        let generators = self.generators.iter().map(|(id, e)| (f(id), *e)).collect();
        Self::assemble(self.flavor, generators, self.ops.clone(), self.partial.clone(), self.truncation)
    }

    /// Same module with the table entry `m(gen, rhos)` removed.
    pub fn without_op(&self, gen: &str, rhos: &[AlgBasis]) -> Result<TypeAModule> {
        let g = self.index_of(gen)?;
        let ops = self
            .ops
            .iter()
            .filter(|o| !(o.gen == g && o.rhos == rhos))
            .cloned()
            .collect();
        Ok(Self::assemble(
            self.flavor,
            self.generators.clone(),
            ops,
            self.partial.clone(),
            self.truncation,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgBasis::*;

    #[test]
    fn lookup_through_trie() {
        let mut b = TypeAModule::builder(Flavor::Minus);
        b.generator("a", Idem::I0).unwrap();
        b.op("a", &[R3, R2], "a", 1).unwrap();
        let m = b.build();
        assert_eq!(m.lookup(0, &[R3, R2]), &[(0, 1)]);
        assert!(m.lookup(0, &[R3]).is_empty());
        assert!(m.lookup(0, &[R1]).is_empty());
    }

    #[test]
    fn idempotent_inputs_are_rejected() {
        let mut b = TypeAModule::builder(Flavor::Minus);
        b.generator("a", Idem::I0).unwrap();
        assert!(b.op("a", &[I0], "a", 0).is_err());
    }

    #[test]
    fn missing_product_term_is_a_violation() {
        // m(a, r3, r2) = U a alone fails on (r3, r2, r3, r2), whose
        // product term needs m(a, r3, r23, r2).
        let mut b = TypeAModule::builder(Flavor::Minus);
        b.generator("a", Idem::I0).unwrap();
        b.op("a", &[R3, R2], "a", 1).unwrap();
        let report = b.build().validate(Some(4));
        assert_eq!(
            report.violations,
            vec![TypeAViolation::Relation {
                gen: "a".into(),
                rhos: vec![R3, R2, R3, R2],
                residue: vec![("a".into(), 2)],
            }]
        );
    }

    #[test]
    fn ill_typed_entries_are_reported() {
        let mut b = TypeAModule::builder(Flavor::Hat);
        b.generator("a", Idem::I0).unwrap();
        b.op("a", &[R2], "a", 0).unwrap();
        assert!(matches!(
            b.build().validate(None).violations[0],
            TypeAViolation::IllTyped { .. }
        ));
    }
}
