//! Named objects and computations, selected at runtime by string.
//!
//! Object names take an optional argument after a colon, as in
//! `cfa-cable:3`. A [`Context`] can shadow any name with an imported
//! object, which is how a mutated structure is fed to the checks.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bordered::{MorComplex, TypeAModule, TypeDStructure};
use crate::catalog::{self, Config};
use crate::coeff::{FreeComplex, Homology, Ring};
use crate::error::{Error, Result};
use crate::invariants::{self, IotaComplex};
use crate::json::Object;
use crate::pairing::box_tensor;

pub trait ObjectFactory: Send + Sync {
    fn name(&self) -> &'static str;
    /// Name of the argument after the colon, if any.
    fn arg(&self) -> Option<&'static str>;
    fn summary(&self) -> &'static str;
    fn build(&self, arg: Option<&str>, cfg: &Config) -> Result<Object>;
}

fn int_arg(name: &str, arg: Option<&str>) -> Result<usize> {
    let a = arg.ok_or_else(|| Error::InvalidParameter(format!("`{name}` needs an argument, as in `{name}:3`")))?;
    a.parse()
        .map_err(|_| Error::InvalidParameter(format!("`{a}` is not a nonnegative integer")))
}

macro_rules! factory {
    ($ty:ident, $name:literal, $arg:expr, $summary:literal, |$a:ident, $cfg:ident| $body:expr) => {
        struct $ty;
        impl ObjectFactory for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn arg(&self) -> Option<&'static str> {
                $arg
            }
            fn summary(&self) -> &'static str {
                $summary
            }
            fn build(&self, $a: Option<&str>, $cfg: &Config) -> Result<Object> {
                $body
            }
        }
    };
}

factory!(CfkU, "cfk-U", None, "knot complex of the unknot over F2[U,V]", |_a, _c| Ok(
    Object::Complex(catalog::cfk_unknot())
));
factory!(CfkJ, "cfk-J", None, "knot complex of J over F2[U,V]", |_a, _c| Ok(Object::Complex(
    catalog::cfk_j()
)));
factory!(A0J, "a0-J", None, "summand of A0-(J) on x and the two y boxes", |_a, _c| Ok(
    Object::Complex(catalog::a0_j_summand())
));
factory!(CfdU, "cfd-U", None, "type-D structure of the unknot complement", |_a, _c| Ok(
    Object::TypeD(catalog::cfd_unknot())
));
factory!(CfdJ, "cfd-J", None, "type-D structure of the complement of J", |_a, _c| Ok(
    Object::TypeD(catalog::cfd_j())
));
factory!(CfaLongitude, "cfa-longitude", None, "minus type-A module of the longitude pattern", |_a, c| Ok(
    Object::TypeA(catalog::cfa_longitude(c))
));
factory!(CfaCable, "cfa-cable", Some("p"), "minus type-A module of the (p,1) cable pattern", |a, c| {
    Ok(Object::TypeA(catalog::cfa_cable(int_arg("cfa-cable", a)?, c)?))
});
factory!(CfaFramed, "cfa-framed", Some("n"), "hat type-A module of the n-framed solid torus", |a, _c| {
    Ok(Object::TypeA(catalog::cfa_framed_solid_torus_hat(int_arg("cfa-framed", a)?)?))
});
factory!(CfkCableJ, "cfk-cable-J", Some("p"), "V = 0 complex of the (p,1) cable of J", |a, _c| {
    Ok(Object::Complex(catalog::cfk_cable_j(int_arg("cfk-cable-J", a)?)?))
});
factory!(BasisMap, "basis-map", Some("name"), "basis cycle phi, psi, g1..g4 or h1..h4 of Mor(cfd-U, cfd-J)", |a, _c| {
    let name = a.ok_or_else(|| Error::InvalidParameter("`basis-map` needs a name, as in `basis-map:g1`".into()))?;
    Ok(Object::Morphism(catalog::basis_morphism(name)?))
});

pub fn object_factories() -> Vec<Box<dyn ObjectFactory>> {
    vec![
        Box::new(CfkU),
        Box::new(CfkJ),
        Box::new(A0J),
        Box::new(CfdU),
        Box::new(CfdJ),
        Box::new(CfaLongitude),
        Box::new(CfaCable),
        Box::new(CfaFramed),
        Box::new(CfkCableJ),
        Box::new(BasisMap),
    ]
}

/// Objects by name, with optional overrides.
#[derive(Default)]
pub struct Context {
    pub cfg: Config,
    overrides: BTreeMap<String, Object>,
}

impl Context {
    pub fn new(cfg: Config) -> Context {
        Context {
            cfg,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, name: &str, obj: Object) -> Context {
        self.overrides.insert(name.to_string(), obj);
        self
    }

    pub fn overridden(&self) -> impl Iterator<Item = &str> + '_ {
        self.overrides.keys().map(String::as_str)
    }

    pub fn object(&self, name: &str) -> Result<Object> {
        if let Some(o) = self.overrides.get(name) {
            return Ok(o.clone());
        }
        let (base, arg) = match name.split_once(':') {
            Some((b, a)) => (b, Some(a)),
            None => (name, None),
        };
        let f = object_factories()
            .into_iter()
            .find(|f| f.name() == base)
            .ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if f.arg().is_none() && arg.is_some() {
            return Err(Error::InvalidParameter(format!("`{base}` takes no argument")));
        }
        f.build(arg, &self.cfg)
    }

    pub fn complex(&self, name: &str) -> Result<FreeComplex> {
        match self.object(name)? {
            Object::Complex(c) => Ok(c),
            o => Err(wrong_kind(name, "complex", &o)),
        }
    }

    pub fn type_d(&self, name: &str) -> Result<TypeDStructure> {
        match self.object(name)? {
            Object::TypeD(d) => Ok(d),
            o => Err(wrong_kind(name, "type_d", &o)),
        }
    }

    pub fn type_a(&self, name: &str) -> Result<TypeAModule> {
        match self.object(name)? {
            Object::TypeA(a) => Ok(a),
            o => Err(wrong_kind(name, "type_a", &o)),
        }
    }
}

fn wrong_kind(name: &str, want: &str, got: &Object) -> Error {
    Error::InvalidParameter(format!("`{name}` is a {}, expected a {want}", got.kind()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub p: Option<usize>,
    pub n: Option<usize>,
    pub eps1: bool,
    pub eps2: bool,
}

impl Params {
    fn p(&self) -> Result<usize> {
        self.p.ok_or_else(|| Error::InvalidParameter("--p is required".into()))
    }

    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::InvalidParameter("--n is required".into()))
    }
}

/// `{"invariant", "params", "value", "witness"}` plus human-readable lines.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InvariantResult {
    pub invariant: String,
    pub params: BTreeMap<String, Value>,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(String, u32)>>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl InvariantResult {
    fn new(invariant: &str, value: Value) -> Self {
        InvariantResult {
            invariant: invariant.into(),
            params: BTreeMap::new(),
            value,
            witness: None,
            lines: Vec::new(),
        }
    }

    fn param(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.params.insert(k.into(), v.into());
        self
    }

    fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }
}

pub trait Computation: Send + Sync {
    fn name(&self) -> &'static str;
    /// Positional operands, for usage text.
    fn operands(&self) -> &'static [&'static str];
    fn summary(&self) -> &'static str;
    fn run(&self, ctx: &Context, args: &[String], params: &Params) -> Result<InvariantResult>;
}

fn operands<'a, const N: usize>(name: &str, args: &'a [String]) -> Result<[&'a str; N]> {
    let v: Vec<&str> = args.iter().map(String::as_str).collect();
    v.try_into()
        .map_err(|_| Error::InvalidParameter(format!("`{name}` takes {N} operand(s), got {}", args.len())))
}

fn homology_lines(h: &Homology) -> Vec<String> {
    h.summands()
        .iter()
        .map(|s| match (h.ring(), s.order) {
            (Ring::F2, _) => format!("F2 in grading {}", s.grading),
            (_, None) => format!("F2[U] in grading {}", s.grading),
            (_, Some(k)) => format!("F2[U]/U^{k} in grading {}", s.grading),
        })
        .collect()
}

/// Complexes over `F2[U,V]` are read with `V = 0`.
fn over_u(c: FreeComplex) -> Result<FreeComplex> {
    if c.ring() == Ring::FUV {
        c.set_v_zero()
    } else {
        Ok(c)
    }
}

struct MorHomology;
impl Computation for MorHomology {
    fn name(&self) -> &'static str {
        "mor-homology"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["TYPE_D", "TYPE_D"]
    }
    fn summary(&self) -> &'static str {
        "dimension of the homology of the morphism complex"
    }
    fn run(&self, ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [a, b] = operands(self.name(), args)?;
        let mor = MorComplex::new(&ctx.type_d(a)?, &ctx.type_d(b)?)?;
        let h = mor.homology()?;
        Ok(InvariantResult::new(self.name(), json!(h.rank()))
            .param("source", a)
            .param("target", b)
            .line(format!("chain-level dimension {}", mor.dim())))
    }
}

struct BoxHomology;
impl Computation for BoxHomology {
    fn name(&self) -> &'static str {
        "box-homology"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["TYPE_A", "TYPE_D"]
    }
    fn summary(&self) -> &'static str {
        "rank of the homology of a box tensor product"
    }
    fn run(&self, ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [a, d] = operands(self.name(), args)?;
        let b = box_tensor(&ctx.type_a(a)?, &ctx.type_d(d)?)?;
        if b.partial {
            return Err(Error::InvalidParameter(format!(
                "`{a}` omits operations of some generators, so the product is incomplete"
            )));
        }
        let h = Homology::compute(&b.complex)?;
        let mut r = InvariantResult::new(self.name(), json!(h.rank()))
            .param("module", a)
            .param("structure", d)
            .line(format!("{} generators", b.complex.len()));
        r.lines.extend(homology_lines(&h));
        Ok(r)
    }
}

struct HomologyOf;
impl Computation for HomologyOf {
    fn name(&self) -> &'static str {
        "homology"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["COMPLEX"]
    }
    fn summary(&self) -> &'static str {
        "summands of the homology (V = 0 for F2[U,V] complexes)"
    }
    fn run(&self, ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [c] = operands(self.name(), args)?;
        let h = Homology::compute(&over_u(ctx.complex(c)?)?)?;
        let mut r = InvariantResult::new(self.name(), json!(h.rank())).param("complex", c);
        r.lines.extend(homology_lines(&h));
        Ok(r)
    }
}

struct TorsionOrder;
impl Computation for TorsionOrder {
    fn name(&self) -> &'static str {
        "torsion-order"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["COMPLEX"]
    }
    fn summary(&self) -> &'static str {
        "largest U-torsion order of the homology"
    }
    fn run(&self, ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [c] = operands(self.name(), args)?;
        let h = Homology::compute(&over_u(ctx.complex(c)?)?)?;
        Ok(InvariantResult::new(self.name(), json!(invariants::torsion_order(&h))).param("complex", c))
    }
}

struct DInvariant;
impl Computation for DInvariant {
    fn name(&self) -> &'static str {
        "d-invariant"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["COMPLEX"]
    }
    fn summary(&self) -> &'static str {
        "grading of the tower generator"
    }
    fn run(&self, ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [c] = operands(self.name(), args)?;
        let d = invariants::d_invariant(&over_u(ctx.complex(c)?)?)?;
        Ok(InvariantResult::new(self.name(), json!(d)).param("complex", c))
    }
}

struct CableTau;
impl Computation for CableTau {
    fn name(&self) -> &'static str {
        "cable-tau"
    }
    fn operands(&self) -> &'static [&'static str] {
        &[]
    }
    fn summary(&self) -> &'static str {
        "tau of the candidate-map image on the (p,1) cable of J (--p, --eps1, --eps2)"
    }
    fn run(&self, ctx: &Context, args: &[String], p: &Params) -> Result<InvariantResult> {
        let [] = operands(self.name(), args)?;
        let pp = p.p()?;
        let (c, img) = invariants::cable_candidate_image(pp, p.eps1, p.eps2, &ctx.cfg)?;
        let h = Homology::compute(&c)?;
        let tau = invariants::tau_distance(&h, &img)?;
        let mut r = InvariantResult::new(self.name(), json!(tau.value))
            .param("p", pp)
            .param("eps1", p.eps1 as u8)
            .param("eps2", p.eps2 as u8)
            .line(format!("torsion order {}", invariants::torsion_order(&h)));
        if tau.last_nonzero.is_some() {
            r = r.line(format!("U^{} times the class is nonzero", tau.value - 1));
        }
        r = r.line(format!("U^{} times the class is zero", tau.value));
        r.witness = Some(c.chain_terms(&img));
        Ok(r)
    }
}

struct SurgeryHat;
impl Computation for SurgeryHat {
    fn name(&self) -> &'static str {
        "surgery-hat"
    }
    fn operands(&self) -> &'static [&'static str] {
        &[]
    }
    fn summary(&self) -> &'static str {
        "dimension of HF-hat of n-surgery on J and the classes hit by the map sum (--n)"
    }
    fn run(&self, _ctx: &Context, args: &[String], p: &Params) -> Result<InvariantResult> {
        let [] = operands(self.name(), args)?;
        let n = p.n()?;
        let m = catalog::cfa_framed_solid_torus_hat(n)?;
        let h = Homology::compute(&box_tensor(&m, &catalog::cfd_j())?.complex)?;
        let mut r = InvariantResult::new(self.name(), json!(h.rank()))
            .param("n", n)
            .param("eps1", p.eps1 as u8)
            .param("eps2", p.eps2 as u8);
        for (id, nonzero) in invariants::surgery_map_classes(n, p.eps1, p.eps2)? {
            r = r.line(format!("{id} maps to {}", if nonzero { "a nonzero class" } else { "0" }));
        }
        Ok(r)
    }
}

struct V0;
impl Computation for V0 {
    fn name(&self) -> &'static str {
        "v0"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["INVOLUTION"]
    }
    fn summary(&self) -> &'static str {
        "V0-bar of A0-(J) under id, iota, sigma or iota_sigma, with both correction terms"
    }
    fn run(&self, _ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [name] = operands(self.name(), args)?;
        let ic = IotaComplex::a0_j(name)?;
        let ct = invariants::correction_terms(&ic)?;
        let v = invariants::v0_bar(&ic)?;
        Ok(InvariantResult::new(self.name(), json!(v.as_f64()))
            .param("involution", name)
            .line(format!("d_lower = {}", ct.d_lower))
            .line(format!("d_upper = {}", ct.d_upper))
            .line(format!("V0 = {v}")))
    }
}

struct DiskMaps;
impl Computation for DiskMaps {
    fn name(&self) -> &'static str {
        "disk-maps"
    }
    fn operands(&self) -> &'static [&'static str] {
        &[]
    }
    fn summary(&self) -> &'static str {
        "pairs of disk-map values allowed by the involution constraints"
    }
    fn run(&self, _ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [] = operands(self.name(), args)?;
        let c = catalog::a0_j_summand();
        let sols = invariants::solve_disk_map_constraints()?;
        let total: usize = sols.iter().map(|s| s.pairs.len()).sum();
        let mut r = InvariantResult::new(self.name(), json!(total));
        for s in &sols {
            for (a, b) in &s.pairs {
                r = r.line(format!("{}: {{{}, {}}}", s.involution, c.format_chain(a), c.format_chain(b)));
            }
        }
        Ok(r)
    }
}

struct Validate;
impl Computation for Validate {
    fn name(&self) -> &'static str {
        "validate"
    }
    fn operands(&self) -> &'static [&'static str] {
        &["OBJECT"]
    }
    fn summary(&self) -> &'static str {
        "run the structural validator of an object (1 when valid)"
    }
    fn run(&self, ctx: &Context, args: &[String], _p: &Params) -> Result<InvariantResult> {
        let [name] = operands(self.name(), args)?;
        let problems = validation_problems(&ctx.object(name)?);
        let mut r = InvariantResult::new(self.name(), json!(problems.is_empty() as u8)).param("object", name);
        r.lines = problems;
        Ok(r)
    }
}

/// Violations reported by the validator matching the object kind.
pub fn validation_problems(o: &Object) -> Vec<String> {
    match o {
        Object::Complex(c) => c.validate().violations.iter().map(|v| v.to_string()).collect(),
        Object::TypeD(d) => d.validate().violations.iter().map(|v| v.to_string()).collect(),
        Object::TypeA(a) => a.validate(None).violations.iter().map(|v| v.to_string()).collect(),
        Object::Morphism(_) => Vec::new(),
    }
}

pub fn computations() -> Vec<Box<dyn Computation>> {
    vec![
        Box::new(MorHomology),
        Box::new(BoxHomology),
        Box::new(HomologyOf),
        Box::new(TorsionOrder),
        Box::new(DInvariant),
        Box::new(CableTau),
        Box::new(SurgeryHat),
        Box::new(V0),
        Box::new(DiskMaps),
        Box::new(Validate),
    ]
}

pub fn computation(name: &str) -> Result<Box<dyn Computation>> {
    computations()
        .into_iter()
        .find(|c| c.name() == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: &str, args: &[&str], p: Params) -> InvariantResult {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        computation(name).unwrap().run(&Context::default(), &args, &p).unwrap()
    }

    #[test]
    fn names_are_unique() {
        let mut o: Vec<_> = object_factories().iter().map(|f| f.name()).collect();
        let mut c: Vec<_> = computations().iter().map(|f| f.name()).collect();
        let (lo, lc) = (o.len(), c.len());
        o.dedup();
        c.dedup();
        assert_eq!((o.len(), c.len()), (lo, lc));
    }

    #[test]
    fn headline_numbers() {
        assert_eq!(run("mor-homology", &["cfd-U", "cfd-J"], Params::default()).value, json!(10));
        let p3 = Params {
            p: Some(3),
            eps2: true,
            ..Params::default()
        };
        assert_eq!(run("cable-tau", &[], p3).value, json!(3));
        let n4 = Params {
            n: Some(4),
            ..Params::default()
        };
        assert_eq!(run("surgery-hat", &[], n4).value, json!(12));
        assert_eq!(run("v0", &["iota_sigma"], Params::default()).value, json!(1.0));
    }

    #[test]
    fn object_names() {
        let ctx = Context::default();
        assert!(matches!(ctx.object("cfa-cable:2"), Ok(Object::TypeA(_))));
        assert!(matches!(ctx.object("cfa-cable"), Err(Error::InvalidParameter(_))));
        assert!(matches!(ctx.object("cfd-J:2"), Err(Error::InvalidParameter(_))));
        assert!(matches!(ctx.object("nope"), Err(Error::UnknownName(_))));
        let ctx = ctx.with_override("cfd-J", Object::TypeD(catalog::cfd_unknot()));
        assert_eq!(ctx.type_d("cfd-J").unwrap().len(), 1);
    }
}
