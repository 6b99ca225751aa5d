use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::torus::{AlgBasis, AlgElement, Idem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub from: usize,
    pub rho: AlgBasis,
    pub to: usize,
}

/// A type-D structure over the torus algebra with `delta^1` given by
/// arrows `from -> rho (x) to`.
#[derive(Clone, Debug)]
pub struct TypeDStructure {
    generators: Vec<(String, Idem)>,
    index: HashMap<String, usize>,
    arrows: Vec<Arrow>,
    out: Vec<Vec<usize>>,
}

impl PartialEq for TypeDStructure {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.arrows == other.arrows
    }
}

impl Eq for TypeDStructure {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeDViolation {
    IllTyped { from: String, rho: AlgBasis, to: String },
    Unreduced { from: String, rho: AlgBasis, to: String },
    StructureEquation { from: String, to: String, value: Vec<AlgBasis> },
}

impl fmt::Display for TypeDViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeDViolation::IllTyped { from, rho, to } => {
                write!(f, "arrow {from} -{rho}-> {to} is ill-typed")
            }
            TypeDViolation::Unreduced { from, rho, to } => {
                write!(f, "arrow {from} -{rho}-> {to} is labelled by an idempotent")
            }
            TypeDViolation::StructureEquation { from, to, value } => {
                let v: Vec<String> = value.iter().map(|a| a.to_string()).collect();
                write!(f, "structure equation fails from {from} to {to}: {}", v.join(" + "))
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TypeDReport {
    pub violations: Vec<TypeDViolation>,
}

impl TypeDReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Default)]
pub struct TypeDBuilder {
    generators: Vec<(String, Idem)>,
    index: HashMap<String, usize>,
    arrows: Vec<Arrow>,
}

impl TypeDBuilder {
    pub fn generator(&mut self, id: &str, idem: Idem) -> Result<usize> {
        if self.index.contains_key(id) {
            return Err(Error::DuplicateGenerator(id.to_string()));
        }
        let i = self.generators.len();
        self.generators.push((id.to_string(), idem));
        self.index.insert(id.to_string(), i);
        Ok(i)
    }

    pub fn arrow(&mut self, from: &str, rho: AlgBasis, to: &str) -> Result<()> {
        let f = *self.index.get(from).ok_or_else(|| Error::UnknownGenerator(from.into()))?;
        let t = *self.index.get(to).ok_or_else(|| Error::UnknownGenerator(to.into()))?;
        self.arrows.push(Arrow { from: f, rho, to: t });
        Ok(())
    }

    pub fn build(self) -> TypeDStructure {
        TypeDStructure::assemble(self.generators, self.arrows)
    }
}

impl TypeDStructure {
    pub fn builder() -> TypeDBuilder {
        TypeDBuilder::default()
    }

    fn assemble(generators: Vec<(String, Idem)>, mut raw: Vec<Arrow>) -> Self {
        raw.sort();
        let mut arrows: Vec<Arrow> = Vec::with_capacity(raw.len());
        for a in raw {
            if arrows.last() == Some(&a) {
                arrows.pop();
            } else {
                arrows.push(a);
            }
        }
        let mut out = vec![Vec::new(); generators.len()];
        for (k, a) in arrows.iter().enumerate() {
            out[a.from].push(k);
        }
        let index = generators.iter().enumerate().map(|(i, (id, _))| (id.clone(), i)).collect();
        TypeDStructure {
            generators,
            index,
            arrows,
            out,
        }
    }

    /// Rebuilds from parts; used for mutations and imports.
    pub fn from_parts(generators: Vec<(String, Idem)>, arrows: Vec<Arrow>) -> Self {
        Self::assemble(generators, arrows)
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

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn out_arrows(&self, i: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.out[i].iter().map(move |&k| &self.arrows[k])
    }

    pub fn idempotent_census(&self) -> (usize, usize) {
        let i0 = self.generators.iter().filter(|g| g.1 == Idem::I0).count();
        (i0, self.len() - i0)
    }

    /// Checks arrow typing, reducedness and the structure equation.
    pub fn validate(&self) -> TypeDReport {
        let mut violations = Vec::new();
        for a in &self.arrows {
            let (from, to) = (self.id(a.from).to_string(), self.id(a.to).to_string());
            if a.rho.is_idempotent() {
                violations.push(TypeDViolation::Unreduced { from, rho: a.rho, to });
            } else if a.rho.left() != self.idem(a.from) || a.rho.right() != self.idem(a.to) {
                violations.push(TypeDViolation::IllTyped { from, rho: a.rho, to });
            }
        }
        for x in 0..self.len() {
            let mut acc: BTreeMap<usize, AlgElement> = BTreeMap::new();
            for a in self.out_arrows(x) {
                for b in self.out_arrows(a.to) {
                    if let Some(p) = a.rho.mul(b.rho) {
                        acc.entry(b.to).or_default().add_basis(p);
                    }
                }
            }
            for (z, value) in acc {
                if !value.is_zero() {
                    violations.push(TypeDViolation::StructureEquation {
                        from: self.id(x).to_string(),
                        to: self.id(z).to_string(),
                        value: value.terms().collect(),
                    });
                }
            }
        }
        TypeDReport { violations }
    }

    /// Typing and reducedness only, as required before pairing.
    pub(crate) fn check_well_typed(&self) -> Result<()> {
        for a in &self.arrows {
            let label = format!("{} -{}-> {}", self.id(a.from), a.rho, self.id(a.to));
            if a.rho.is_idempotent() {
                return Err(Error::Unreduced(label));
            }
            if a.rho.left() != self.idem(a.from) || a.rho.right() != self.idem(a.to) {
                return Err(Error::IllTyped(label));
            }
        }
        Ok(())
    }

    /// The substructure on the given generators, which must be closed
    /// under `delta^1`.
    pub fn substructure(&self, ids: &[&str]) -> Result<TypeDStructure> {
        let keep: Vec<usize> = ids.iter().map(|id| self.index_of(id)).collect::<Result<_>>()?;
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &i)| (i, n)).collect();
        let generators = keep.iter().map(|&i| self.generators[i].clone()).collect();
        let mut arrows = Vec::new();
        for &i in &keep {
            for a in self.out_arrows(i) {
                let to = *pos.get(&a.to).ok_or_else(|| {
                    Error::InvalidParameter(format!("`{}` leaves the requested substructure", self.id(i)))
                })?;
                arrows.push(Arrow {
                    from: pos[&i],
                    rho: a.rho,
                    to,
                });
            }
        }
        Ok(Self::assemble(generators, arrows))
    }

    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> TypeDStructure {
        let generators = self.generators.iter().map(|(id, e)| (f(id), *e)).collect();
        Self::assemble(generators, self.arrows.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgBasis::*;

    fn unknot() -> TypeDStructure {
        let mut b = TypeDStructure::builder();
        b.generator("v", Idem::I0).unwrap();
        b.arrow("v", R12, "v").unwrap();
        b.build()
    }

    #[test]
    fn loop_structure_is_valid() {
        assert!(unknot().validate().is_ok());
    }

    #[test]
    fn composable_path_violates_structure_equation() {
        let mut b = TypeDStructure::builder();
        b.generator("a", Idem::I0).unwrap();
        b.generator("y", Idem::I1).unwrap();
        b.generator("b", Idem::I0).unwrap();
        b.arrow("a", R1, "y").unwrap();
        b.arrow("y", R2, "b").unwrap();
        let report = b.build().validate();
        assert_eq!(
            report.violations,
            vec![TypeDViolation::StructureEquation {
                from: "a".into(),
                to: "b".into(),
                value: vec![R12],
            }]
        );
    }

    #[test]
    fn typing_and_units_are_reported() {
        let mut b = TypeDStructure::builder();
        b.generator("a", Idem::I0).unwrap();
        b.generator("y", Idem::I1).unwrap();
        b.arrow("a", R2, "y").unwrap();
        b.arrow("a", I0, "a").unwrap();
        let report = b.build().validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, TypeDViolation::IllTyped { rho: R2, .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, TypeDViolation::Unreduced { rho: I0, .. })));
    }
}
