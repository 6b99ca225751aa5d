//! The verification suite: one check per acceptance criterion (some
//! criteria have several), each comparing an expected value with a
//! computed one.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::bordered::{Arrow, DMorphism, MorComplex, TypeAModule, TypeDStructure};
use crate::catalog::{self, boxes, CableCensus, Config};
use crate::coeff::f2::{self, BitVec};
use crate::coeff::{are_chain_homotopic, Chain, ComplexBuilder, FreeComplex, Homology, Ring};
use crate::error::{Error, Result};
use crate::invariants::{self, correction_terms, tau_distance, torsion_order, CorrectionTerms, IotaComplex};
use crate::json::Object;
use crate::pairing::{box_morphism, box_tensor};
use crate::registry::{validation_problems, Context};
use crate::torus::AlgBasis;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// A value stated in the literature.
    Literature,
    /// A value produced by a second, independent computation.
    IndependentOracle,
    /// A value forced by definitions alone.
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub criterion: u8,
    pub status: Status,
    pub basis: Basis,
    pub expected: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub struct Verdict {
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Verdict {
    fn exact(expected: impl Into<String>, computed: impl Into<String>) -> Verdict {
        let (expected, computed) = (expected.into(), computed.into());
        Verdict {
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

pub trait Check: Send + Sync {
    fn id(&self) -> &'static str;
    fn criterion(&self) -> u8;
    fn basis(&self) -> Basis;
    fn summary(&self) -> &'static str;
    fn run(&self, ctx: &Context) -> Result<Verdict>;
}

/// Runs the checks concurrently; results come back in the given order.
pub fn run_checks(checks: &[Box<dyn Check>], ctx: &Context, timed: bool) -> Vec<CheckResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let t = Instant::now();
                    let v = c.run(ctx).unwrap_or_else(|e| Verdict {
                        expected: String::new(),
                        computed: format!("error: {e}"),
                        pass: false,
                    });
                    CheckResult {
                        id: c.id().into(),
                        criterion: c.criterion(),
                        status: if v.pass { Status::Pass } else { Status::Fail },
                        basis: c.basis(),
                        expected: v.expected,
                        computed: v.computed,
                        millis: timed.then(|| t.elapsed().as_millis()),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("check panicked")).collect()
    })
}

pub fn check(id: &str) -> Result<Box<dyn Check>> {
    checks()
        .into_iter()
        .find(|c| c.id() == id)
        .ok_or_else(|| Error::UnknownName(id.to_string()))
}

pub fn checks() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(MorDim),
        Box::new(MorBasis),
        Box::new(LongitudePairing),
        Box::new(CablePairing),
        Box::new(CandidateImage),
        Box::new(CableTau),
        Box::new(SurgeryHat),
        Box::new(CorrectionTermsCheck),
        Box::new(Calibration),
        Box::new(DiskMaps),
        Box::new(Validators),
        Box::new(MutationFuzz),
        Box::new(AlphaRows),
        Box::new(CableDegeneration),
        Box::new(HomotopyInvariance),
    ]
}

/// Terms of a chain as `U^k id` joined by ` + `, sorted, or `0`.
pub fn format_terms(mut terms: Vec<(String, u32)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort();
    terms
        .into_iter()
        .map(|(id, u)| match u {
            0 => id,
            1 => format!("U {id}"),
            k => format!("U^{k} {id}"),
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn ids(v: impl IntoIterator<Item = String>) -> String {
    format_terms(v.into_iter().map(|s| (s, 0)).collect())
}

fn image_at_v(m: &TypeAModule, f: &DMorphism, n1: &TypeDStructure, n2: &TypeDStructure) -> Result<String> {
    let bm = box_morphism(m, f, n1, n2)?;
    let img = bm.image_of("alpha|v")?;
    Ok(format_terms(bm.target.complex.chain_terms(&img)))
}

/// `beta_{2p-i-2}` for `i = 0..=p-2`.
fn cable_betas(p: usize) -> impl Iterator<Item = String> {
    (0..p.saturating_sub(1)).map(move |i| catalog::beta_id(2 * p - i - 2))
}

struct MorDim;
impl Check for MorDim {
    fn id(&self) -> &'static str {
        "mor-dim"
    }
    fn criterion(&self) -> u8 {
        1
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "homology of Mor(cfd-U, cfd-J) is 10-dimensional"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let mor = MorComplex::new(&ctx.type_d("cfd-U")?, &ctx.type_d("cfd-J")?)?;
        Ok(Verdict::exact("10", mor.homology()?.rank().to_string()))
    }
}

struct MorBasis;
impl Check for MorBasis {
    fn id(&self) -> &'static str {
        "mor-basis"
    }
    fn criterion(&self) -> u8 {
        1
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "phi, psi, g1..g4, h1..h4 are cycles whose classes form a basis"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let mor = MorComplex::new(&ctx.type_d("cfd-U")?, &ctx.type_d("cfd-J")?)?;
        let h = mor.homology()?;
        let mut cycles = 0;
        let mut vecs = Vec::new();
        for (_, f) in catalog::basis_morphisms() {
            if !mor.is_cycle(&f)? {
                continue;
            }
            cycles += 1;
            let class = mor.class_of(&h, &f)?;
            let mut v = BitVec::zeros(h.rank());
            for (i, c) in class.coords.iter().enumerate() {
                v.set(i, !c.is_zero());
            }
            vecs.push(v);
        }
        Ok(Verdict::exact(
            "10 cycles, rank 10, dim 10",
            format!("{cycles} cycles, rank {}, dim {}", f2::rank(&vecs), h.rank()),
        ))
    }
}

struct LongitudePairing;
impl Check for LongitudePairing {
    fn id(&self) -> &'static str {
        "longitude-pairing"
    }
    fn criterion(&self) -> u8 {
        2
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "I [x] f on the longitude for the ten basis maps"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let m = ctx.type_a("cfa-longitude")?;
        let (u, j) = (ctx.type_d("cfd-U")?, ctx.type_d("cfd-J")?);
        let mut expected = vec!["phi: alpha|x".to_string(), "psi: 0".into()];
        for (n, (names, k)) in boxes().into_iter().enumerate() {
            expected.push(format!("g{}: alpha|{}", n + 1, names.corner(3, k)));
        }
        expected.extend((1..=4).map(|n| format!("h{n}: 0")));
        let mut computed = Vec::new();
        for (name, f) in catalog::basis_morphisms() {
            computed.push(format!("{name}: {}", image_at_v(&m, &f, &u, &j)?));
        }
        Ok(Verdict::exact(expected.join("; "), computed.join("; ")))
    }
}

fn cable_expected(p: usize, name: &str) -> String {
    let bs = boxes();
    let (kind, n) = name.split_at(1);
    match (kind, n.parse::<usize>()) {
        ("g", Ok(n)) => {
            let (names, k) = bs[n - 1];
            let mut v = vec![format!("alpha|{}", names.corner(3, k))];
            v.extend(cable_betas(p).map(|b| format!("{b}|{}", names.edge(3, k))));
            ids(v)
        }
        ("h", Ok(n)) => {
            let (names, k) = bs[n - 1];
            ids(cable_betas(p).map(|b| format!("{b}|{}", names.edge(4, k))))
        }
        _ if name == "phi" => "alpha|x".into(),
        _ => "0".into(),
    }
}

struct CablePairing;
impl Check for CablePairing {
    fn id(&self) -> &'static str {
        "cable-pairing"
    }
    fn criterion(&self) -> u8 {
        3
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "I [x] f on the (p,1) cable for p = 2, 3, 5, 10"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let (u, j) = (ctx.type_d("cfd-U")?, ctx.type_d("cfd-J")?);
        let (mut expected, mut computed) = (Vec::new(), Vec::new());
        for p in [2, 3, 5, 10] {
            let m = catalog::cfa_cable(p, &ctx.cfg)?;
            for (name, f) in catalog::basis_morphisms() {
                expected.push(format!("p={p} {name}: {}", cable_expected(p, &name)));
                computed.push(format!("p={p} {name}: {}", image_at_v(&m, &f, &u, &j)?));
            }
        }
        Ok(Verdict::exact(expected.join("; "), computed.join("; ")))
    }
}

struct CandidateImage;
impl Check for CandidateImage {
    fn id(&self) -> &'static str {
        "candidate-image"
    }
    fn criterion(&self) -> u8 {
        4
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "image of alpha|v under the candidate map sum on the cable, all four eps"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let (u, j) = (ctx.type_d("cfd-U")?, ctx.type_d("cfd-J")?);
        let (mut expected, mut computed) = (Vec::new(), Vec::new());
        for p in [2, 3, 5, 10] {
            let m = catalog::cfa_cable(p, &ctx.cfg)?;
            for (e1, e2) in [(false, false), (true, false), (false, true), (true, true)] {
                let mut v = vec!["alpha|e1".to_string(), "alpha|e2".into()];
                for k in 1..=2 {
                    for b in cable_betas(p) {
                        v.push(format!("{b}|y3_{k}"));
                        if e2 {
                            v.push(format!("{b}|y4_{k}"));
                            v.push(format!("{b}|z4_{k}"));
                        }
                    }
                }
                let tag = format!("p={p} eps=({},{})", e1 as u8, e2 as u8);
                expected.push(format!("{tag}: {}", ids(v)));
                let f = catalog::candidate_map_sum(e1, e2);
                computed.push(format!("{tag}: {}", image_at_v(&m, &f, &u, &j)?));
            }
        }
        Ok(Verdict::exact(expected.join("; "), computed.join("; ")))
    }
}

struct CableTau;
impl Check for CableTau {
    fn id(&self) -> &'static str {
        "cable-tau"
    }
    fn criterion(&self) -> u8 {
        5
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "torsion order and tau equal p on the cable complex, with witnesses"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let (mut expected, mut computed) = (Vec::new(), Vec::new());
        let half = ctx.cfg.jmax / 2;
        for p in [2usize, 3, 5, 10, 25] {
            let depth = box_tensor(&catalog::cfa_cable(p, &ctx.cfg)?, &catalog::cfd_j())?.deepest_match;
            for e2 in [false, true] {
                let (c, img) = invariants::cable_candidate_image(p, false, e2, &ctx.cfg)?;
                let h = Homology::compute(&c)?;
                let tau = tau_distance(&h, &img)?;
                let witness_ok = tau.value >= 1
                    && tau.last_nonzero.as_ref().is_some_and(|c| !c.is_zero())
                    && tau.first_zero.is_zero()
                    && !h.u_multiply(&h.class_of(&img)?, tau.value - 1).is_zero();
                let tag = format!("p={p} eps2={}", e2 as u8);
                expected.push(format!(
                    "{tag}: {} gens, order {p}, tau {p}, U^{} c != 0, U^{p} c = 0, depth <= {half}",
                    CableCensus::of(p).total(),
                    p - 1
                ));
                let depth_s = if depth <= half {
                    format!("depth <= {half}")
                } else {
                    format!("depth {depth}")
                };
                let w = if witness_ok {
                    format!("U^{} c != 0, U^{} c = 0", tau.value.saturating_sub(1), tau.value)
                } else {
                    "witness missing".into()
                };
                computed.push(format!(
                    "{tag}: {} gens, order {}, tau {}, {w}, {depth_s}",
                    c.len(),
                    torsion_order(&h),
                    tau.value
                ));
            }
        }
        Ok(Verdict::exact(expected.join("; "), computed.join("; ")))
    }
}

struct SurgeryHat;
impl Check for SurgeryHat {
    fn id(&self) -> &'static str {
        "surgery-hat"
    }
    fn criterion(&self) -> u8 {
        6
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "dimensions n + 8 and n, and the map sum hits only alpha1, for n = 1..6"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let (u, j) = (ctx.type_d("cfd-U")?, ctx.type_d("cfd-J")?);
        let (mut expected, mut computed) = (Vec::new(), Vec::new());
        for n in 1..=6 {
            let m = catalog::cfa_framed_solid_torus_hat(n)?;
            let dj = Homology::compute(&box_tensor(&m, &j)?.complex)?.rank();
            let du = Homology::compute(&box_tensor(&m, &u)?.complex)?.rank();
            let mut hits = BTreeSet::new();
            for (e1, e2) in [(false, false), (true, false), (false, true), (true, true)] {
                let nonzero: Vec<String> = invariants::surgery_map_classes(n, e1, e2)?
                    .into_iter()
                    .filter(|(_, nz)| *nz)
                    .map(|(id, _)| id)
                    .collect();
                hits.insert(nonzero.join(","));
            }
            let hits: Vec<_> = hits.into_iter().collect();
            expected.push(format!("n={n}: J {}, U {n}, nonzero {}", n + 8, "alpha1|v"));
            computed.push(format!("n={n}: J {dj}, U {du}, nonzero {}", hits.join(" | ")));
        }
        Ok(Verdict::exact(expected.join("; "), computed.join("; ")))
    }
}

struct CorrectionTermsCheck;
impl Check for CorrectionTermsCheck {
    fn id(&self) -> &'static str {
        "correction-terms"
    }
    fn criterion(&self) -> u8 {
        7
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "V0-bar over id, iota, sigma, iota_sigma is 0, 0, 0, 1"
    }
    fn run(&self, _ctx: &Context) -> Result<Verdict> {
        let sweep = invariants::v0_sweep()?;
        let computed: Vec<String> = catalog::INVOLUTION_NAMES
            .iter()
            .map(|n| format!("{n} {}", sweep[*n]))
            .collect();
        Ok(Verdict::exact("id 0, iota 0, sigma 0, iota_sigma 1", computed.join(", ")))
    }
}

struct Calibration;
impl Check for Calibration {
    fn id(&self) -> &'static str {
        "calibration"
    }
    fn criterion(&self) -> u8 {
        7
    }
    fn basis(&self) -> Basis {
        Basis::Identity
    }
    fn summary(&self) -> &'static str {
        "both correction terms vanish on the trivial iota-complex"
    }
    fn run(&self, _ctx: &Context) -> Result<Verdict> {
        let CorrectionTerms { d_lower, d_upper } = correction_terms(&IotaComplex::trivial())?;
        Ok(Verdict::exact("d_lower 0, d_upper 0", format!("d_lower {d_lower}, d_upper {d_upper}")))
    }
}

struct DiskMaps;
impl Check for DiskMaps {
    fn id(&self) -> &'static str {
        "disk-maps"
    }
    fn criterion(&self) -> u8 {
        8
    }
    fn basis(&self) -> Basis {
        Basis::Literature
    }
    fn summary(&self) -> &'static str {
        "every admissible pair of disk maps differs by e1 + e2, and tau(e1 + e2) = 1"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let c = catalog::a0_j_summand();
        let mut sums = BTreeSet::new();
        for s in invariants::solve_disk_map_constraints()? {
            for (a, b) in &s.pairs {
                sums.insert(format_terms(c.chain_terms(&a.sum(b))));
            }
        }
        let k = ctx.complex("cfk-J")?.set_v_zero()?;
        let h = Homology::compute(&k)?;
        let tau = tau_distance(&h, &k.chain(&[("e1", 0), ("e2", 0)])?)?;
        let sums: Vec<_> = sums.into_iter().collect();
        Ok(Verdict::exact(
            "pair sums {e1 + e2}, tau 1",
            format!("pair sums {{{}}}, tau {}", sums.join(", "), tau.value),
        ))
    }
}

/// Every built-in name checked by the `validators` check.
pub fn builtin_names() -> Vec<String> {
    let mut v: Vec<String> = ["cfk-U", "cfk-J", "a0-J", "cfd-U", "cfd-J", "cfa-longitude"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    v.extend((1..=25).map(|p| format!("cfa-cable:{p}")));
    v.extend((1..=12).map(|n| format!("cfa-framed:{n}")));
    v.extend((1..=25).map(|p| format!("cfk-cable-J:{p}")));
    v
}

struct Validators;
impl Check for Validators {
    fn id(&self) -> &'static str {
        "validators"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn basis(&self) -> Basis {
        Basis::Identity
    }
    fn summary(&self) -> &'static str {
        "structural validators pass on every built-in, p <= 25, n <= 12"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let mut names = builtin_names();
        for n in ctx.overridden() {
            if !names.iter().any(|b| b == n) {
                names.push(n.to_string());
            }
        }
        let reports: Vec<Result<Vec<String>>> = std::thread::scope(|s| {
            let hs: Vec<_> = names
                .iter()
                .map(|n| s.spawn(move || ctx.object(n).map(|o| validation_problems(&o))))
                .collect();
            hs.into_iter().map(|h| h.join().expect("validator panicked")).collect()
        });
        let mut failures = Vec::new();
        for (name, r) in names.iter().zip(reports) {
            match r {
                Ok(p) if p.is_empty() => {}
                Ok(p) => failures.push(format!("{name}: {} ({} violations)", p[0], p.len())),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
        for n in catalog::INVOLUTION_NAMES {
            if let Err(e) = IotaComplex::a0_j(n) {
                failures.push(format!("involution {n}: {e}"));
            }
        }
        let total = names.len() + catalog::INVOLUTION_NAMES.len();
        let computed = if failures.is_empty() {
            format!("{total} valid")
        } else {
            failures.join("; ")
        };
        Ok(Verdict::exact(format!("{total} valid"), computed))
    }
}

/// Enough quotient levels to see every torsion order of `c`: one more
/// than the sum of the exponents in the differential.
pub fn quotient_depth(c: &FreeComplex) -> usize {
    c.entries().iter().map(|e| e.coeff.u_exp as usize).sum::<usize>() + 2
}

/// [`quotient_dims_to`] at [`quotient_depth`].
pub fn quotient_dims(c: &FreeComplex) -> Result<Vec<usize>> {
    quotient_dims_to(c, quotient_depth(c))
}

/// Whether two complexes have the same quotient dimensions at a common
/// depth, which for complexes over `F2[U]` means isomorphic homology.
pub fn same_quotient_dims(a: &FreeComplex, b: &FreeComplex) -> Result<bool> {
    let k = quotient_depth(a).max(quotient_depth(b));
    Ok(quotient_dims_to(a, k)? == quotient_dims_to(b, k)?)
}

/// Dimensions of `H(C (x) F2[U]/U^k)` for `k = 1..=big_k`, computed by
/// dense elimination over `F2` and independent of the `F2[U]` homology
/// engine. For a complex over `F2` this is the single number `dim H`.
/// Complexes over `F2[U,V]` are read with `V = 0`.
pub fn quotient_dims_to(c: &FreeComplex, big_k: usize) -> Result<Vec<usize>> {
    let c = if c.ring() == Ring::FUV { c.set_v_zero()? } else { c.clone() };
    let n = c.len();
    if c.ring() == Ring::F2 {
        let cols: Vec<BitVec> = (0..n)
            .map(|i| {
                let mut v = BitVec::zeros(n);
                for e in c.out_entries(i) {
                    v.flip(e.to);
                }
                v
            })
            .collect();
        return Ok(vec![n - 2 * f2::rank(&cols)]);
    }
    let mut out = Vec::new();
    for k in 1..=big_k {
        let dim = n * k;
        let mut cols = Vec::with_capacity(dim);
        for i in 0..k {
            for g in 0..n {
                let mut v = BitVec::zeros(dim);
                for e in c.out_entries(g) {
                    let p = i + e.coeff.u_exp as usize;
                    if p < k {
                        v.flip(p * n + e.to);
                    }
                }
                cols.push(v);
            }
        }
        out.push(dim - 2 * f2::rank(&cols));
    }
    Ok(out)
}

fn orders(c: &FreeComplex) -> Result<Vec<Option<u32>>> {
    let mut v: Vec<_> = Homology::compute(c)?.summands().iter().map(|s| s.order).collect();
    v.sort();
    Ok(v)
}

#[derive(Clone, Debug, Default)]
pub struct FuzzReport {
    pub mutants: usize,
    /// Mutants that break a structure equation or change a homology,
    /// judged by the validators and the quotient-rank oracle.
    pub relevant: usize,
    /// Relevant mutants caught by a validator or a golden value.
    pub detected: usize,
    pub missed: Vec<String>,
}

impl FuzzReport {
    fn record(&mut self, label: String, relevant: bool, detected: bool) {
        self.mutants += 1;
        if relevant {
            self.relevant += 1;
            if detected {
                self.detected += 1;
            } else {
                self.missed.push(label);
            }
        }
    }
}

/// Toggles one `delta^1` arrow of `d`: every removal and a spread of
/// well-typed additions, about `additions` of them.
pub fn type_d_mutants(d: &TypeDStructure, additions: usize) -> Vec<(String, TypeDStructure)> {
    let mut out = Vec::new();
    let gens = d.generators().to_vec();
    let label = |a: &Arrow, verb: &str| format!("{verb} {} -{}-> {}", d.id(a.from), a.rho, d.id(a.to));
    for (k, a) in d.arrows().iter().enumerate() {
        let mut arrows = d.arrows().to_vec();
        arrows.remove(k);
        out.push((label(a, "remove"), TypeDStructure::from_parts(gens.clone(), arrows)));
    }
    let present: BTreeSet<Arrow> = d.arrows().iter().copied().collect();
    let mut candidates = Vec::new();
    for from in 0..d.len() {
        for rho in AlgBasis::REEB {
            if rho.left() != d.idem(from) {
                continue;
            }
            for to in 0..d.len() {
                let a = Arrow { from, rho, to };
                if rho.right() == d.idem(to) && !present.contains(&a) {
                    candidates.push(a);
                }
            }
        }
    }
    let stride = (candidates.len() / additions.max(1)).max(1);
    for a in candidates.into_iter().step_by(stride) {
        let mut arrows = d.arrows().to_vec();
        arrows.push(a);
        out.push((label(&a, "add"), TypeDStructure::from_parts(gens.clone(), arrows)));
    }
    out
}

/// Toggles one differential entry of `c`, using the homogeneous monomial
/// for the pair when there is one and the constant otherwise.
pub fn complex_mutants(c: &FreeComplex) -> Result<Vec<(String, FreeComplex)>> {
    let mut out = Vec::new();
    let bigraded = c.ring() == Ring::FUV;
    for i in 0..c.len() {
        for j in 0..c.len() {
            if i == j {
                continue;
            }
            let (gi, gj) = (c.generator(i), c.generator(j));
            let exp = |a: i64, b: Option<i64>| -> Option<u32> {
                let d = b? - (a - 1);
                (d >= 0 && d % 2 == 0).then_some((d / 2) as u32)
            };
            let u = exp(gi.gr_u, Some(gj.gr_u)).unwrap_or(0);
            let v = if bigraded { exp(gi.gr_v.unwrap_or(0), gj.gr_v).unwrap_or(0) } else { 0 };
            let mut b = ComplexBuilder::new(c.ring());
            if !c.is_graded() {
                b = b.ungraded();
            }
            for g in c.generators() {
                b.generator(&g.id, g.gr_u, g.gr_v)?;
            }
            for e in c.entries() {
                b.arrow_idx(e.from, e.to, e.coeff.u_exp, e.coeff.v_exp)?;
            }
            b.arrow_idx(i, j, u, v)?;
            out.push((format!("toggle {} -> U^{u} V^{v} {}", gi.id, gj.id), b.build()));
        }
    }
    Ok(out)
}

/// Removes one operation of `m` at a time.
pub fn type_a_mutants(m: &TypeAModule) -> Result<Vec<(String, TypeAModule)>> {
    m.ops()
        .iter()
        .map(|op| {
            let label = format!(
                "drop m({}, {})",
                m.id(op.gen),
                op.rhos.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
            );
            Ok((label, m.without_op(m.id(op.gen), &op.rhos)?))
        })
        .collect()
}

/// Single-entry mutations of `cfd-J`, `cfk-J` and a truncated longitude
/// module. Detection uses the validators and golden values computed by
/// the main engines; relevance uses the validators and
/// [`same_quotient_dims`].
pub fn mutation_fuzz() -> Result<FuzzReport> {
    let mut r = FuzzReport::default();
    let u = catalog::cfd_unknot();
    let j = catalog::cfd_j();
    let lon = catalog::cfa_longitude(&Config { jmax: 8 });
    let golden_j = orders(&catalog::cfk_j().set_v_zero()?)?;
    let base_lon = box_tensor(&lon, &j)?.complex;
    let base_mor = MorComplex::new(&u, &j)?.complex().clone();

    for (label, d) in type_d_mutants(&j, 160) {
        let broken = !d.validate().is_ok();
        // A pairing with no consistent grading fails the golden check
        // outright and has no homology to compare.
        let (relevant, detected) = match (broken, box_tensor(&lon, &d)) {
            (true, _) | (false, Err(_)) => (true, true),
            (false, Ok(paired)) => {
                let mor = MorComplex::new(&u, &d)?;
                let paired = paired.complex;
                let relevant =
                    !same_quotient_dims(mor.complex(), &base_mor)? || !same_quotient_dims(&paired, &base_lon)?;
                let detected = mor.homology()?.rank() != 10 || orders(&paired)? != golden_j;
                (relevant, detected)
            }
        };
        r.record(format!("cfd-J: {label}"), relevant, detected);
    }

    let k = catalog::cfk_j();
    let base_k = k.set_v_zero()?;
    for (label, c) in complex_mutants(&k)? {
        let broken = !c.validate().is_ok();
        let (relevant, detected) = if broken {
            (true, true)
        } else {
            let v0 = c.set_v_zero()?;
            let relevant = !same_quotient_dims(&v0, &base_k)?;
            let detected = orders(&v0)? != golden_j || invariants::d_invariant(&v0).map_or(true, |d| d != 0);
            (relevant, detected)
        };
        r.record(format!("cfk-J: {label}"), relevant, detected);
    }

    for (label, m) in type_a_mutants(&lon)? {
        let broken = !m.validate(None).is_ok();
        let (relevant, detected) = match (broken, box_tensor(&m, &j)) {
            (true, _) | (false, Err(_)) => (true, true),
            (false, Ok(paired)) => (
                !same_quotient_dims(&paired.complex, &base_lon)?,
                orders(&paired.complex)? != golden_j,
            ),
        };
        r.record(format!("cfa-longitude: {label}"), relevant, detected);
    }
    Ok(r)
}

struct MutationFuzz;
impl Check for MutationFuzz {
    fn id(&self) -> &'static str {
        "mutation-fuzz"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn basis(&self) -> Basis {
        Basis::IndependentOracle
    }
    fn summary(&self) -> &'static str {
        "single-entry mutants are caught by a validator or a golden value"
    }
    fn run(&self, _ctx: &Context) -> Result<Verdict> {
        let r = mutation_fuzz()?;
        let pass = r.mutants >= 200 && r.detected * 100 >= r.relevant * 99;
        let mut computed = format!("{} mutants, {}/{} relevant detected", r.mutants, r.detected, r.relevant);
        if !r.missed.is_empty() {
            let _ = write!(computed, "; missed: {}", r.missed.join(", "));
        }
        Ok(Verdict {
            expected: ">= 200 mutants, >= 99% of relevant detected".into(),
            computed,
            pass,
        })
    }
}

/// Differential entries out of `alpha|*` generators, as sorted strings.
fn alpha_rows(c: &FreeComplex) -> Vec<String> {
    let mut v: Vec<String> = c
        .entries()
        .iter()
        .filter(|e| c.id(e.from).starts_with("alpha|"))
        .map(|e| format!("{} -> U^{} {}", c.id(e.from), e.coeff.u_exp, c.id(e.to)))
        .collect();
    v.sort();
    v
}

struct AlphaRows;
impl Check for AlphaRows {
    fn id(&self) -> &'static str {
        "alpha-rows"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn basis(&self) -> Basis {
        Basis::IndependentOracle
    }
    fn summary(&self) -> &'static str {
        "alpha rows of the cable pairing agree with the cable presentation, p = 2, 3, 5"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let (mut expected, mut computed) = (Vec::new(), Vec::new());
        for p in [2, 3, 5] {
            let paired = box_tensor(&catalog::cfa_cable(p, &ctx.cfg)?, &ctx.type_d("cfd-J")?)?.complex;
            let pres = catalog::cfk_cable_j(p)?;
            expected.push(format!("p={p}: {}", alpha_rows(&pres).join(", ")));
            computed.push(format!("p={p}: {}", alpha_rows(&paired).join(", ")));
        }
        Ok(Verdict::exact(expected.join("; "), computed.join("; ")))
    }
}

struct CableDegeneration;
impl Check for CableDegeneration {
    fn id(&self) -> &'static str {
        "cable-degeneration"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn basis(&self) -> Basis {
        Basis::Identity
    }
    fn summary(&self) -> &'static str {
        "the (1,1) cable module equals the longitude module"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let a = Object::TypeA(catalog::cfa_cable(1, &ctx.cfg)?).to_json();
        let b = Object::TypeA(ctx.type_a("cfa-longitude")?).to_json();
        Ok(Verdict::exact("equal", if a == b { "equal" } else { "different" }))
    }
}

struct HomotopyInvariance;
impl Check for HomotopyInvariance {
    fn id(&self) -> &'static str {
        "homotopy-invariance"
    }
    fn criterion(&self) -> u8 {
        9
    }
    fn basis(&self) -> Basis {
        Basis::IndependentOracle
    }
    fn summary(&self) -> &'static str {
        "homotopic Mor cycles f and f + dh induce chain homotopic maps"
    }
    fn run(&self, ctx: &Context) -> Result<Verdict> {
        let (u, j) = (ctx.type_d("cfd-U")?, ctx.type_d("cfd-J")?);
        let mor = MorComplex::new(&u, &j)?;
        let modules = [ctx.type_a("cfa-longitude")?, catalog::cfa_cable(2, &ctx.cfg)?];
        let (mut pairs, mut bad) = (0, Vec::new());
        for (name, f) in catalog::basis_morphisms() {
            for k in (0..mor.dim()).step_by(5) {
                let dh = mor.differential(&mor.morphism_of(&Chain::generator(k)))?;
                if dh.is_zero() {
                    continue;
                }
                let g = f.sum(&dh);
                for m in &modules {
                    let bf = box_morphism(m, &f, &u, &j)?;
                    let bg = box_morphism(m, &g, &u, &j)?;
                    pairs += 1;
                    if !are_chain_homotopic(&bf.map, &bg.map, &bf.source.complex, &bf.target.complex)? {
                        bad.push(format!("{name} + d({})", mor.label(k).0));
                    }
                }
            }
        }
        let computed = if bad.is_empty() {
            format!("{pairs} pairs homotopic")
        } else {
            format!("not homotopic: {}", bad.join(", "))
        };
        Ok(Verdict::exact(format!("{pairs} pairs homotopic"), computed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_dims_of_a_torsion_summand() {
        let mut b = ComplexBuilder::new(Ring::FU);
        b.generator("a", 1, None).unwrap();
        b.generator("b", 4, None).unwrap();
        b.arrow("a", "b", 2, 0).unwrap();
        // F2[U]/U^2 contributes 2 min(k, 2).
        assert_eq!(quotient_dims(&b.build()).unwrap(), vec![2, 4, 4, 4]);
    }

    #[test]
    fn expected_cable_strings() {
        assert_eq!(cable_expected(3, "h1"), "beta3|y4_1 + beta4|y4_1");
        assert_eq!(cable_expected(2, "g3"), "alpha|j1 + beta2|z3_1");
        assert_eq!(cable_expected(2, "psi"), "0");
    }
}
