//! Concrete complexes, bordered structures, morphisms and involutions for
//! the knot `J`, its `(p,1)`-cables and the `n`-framed solid torus.
//!
//! Id conventions: `cfk_j` uses `x`, `a1`, ..., `j2`; `cfd_j` adds the
//! type-D generators `y{m}_{k}` and `z{m}_{k}`; box tensor products join
//! ids with `|`.

use std::env;

use crate::bordered::{DMorphism, Flavor, TypeAModule, TypeDStructure};
use crate::coeff::{ChainMap, ComplexBuilder, FreeComplex, Ring};
use crate::error::{Error, Result};
use crate::torus::{AlgBasis, Idem};
use AlgBasis::*;

pub const DEFAULT_JMAX: usize = 64;

/// Runtime configuration shared by the constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Infinite operation families are kept for `j < jmax`.
    pub jmax: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { jmax: DEFAULT_JMAX }
    }
}

impl Config {
    /// Reads `BFH_JMAX`, falling back to the default.
    pub fn from_env() -> Result<Config> {
        match env::var("BFH_JMAX") {
            Err(_) => Ok(Config::default()),
            Ok(s) => {
                let jmax: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("BFH_JMAX={s} is not a count")))?;
                if jmax < 2 {
                    return Err(Error::InvalidParameter("BFH_JMAX must be at least 2".into()));
                }
                Ok(Config { jmax })
            }
        }
    }
}

/// The two box families of `J`: `(a, b, c, e)` boxes with `y` generators
/// and `(f, g, h, j)` boxes with `z` generators, each for `k = 1, 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxNames {
    pub corners: [&'static str; 4],
    pub edge: &'static str,
}

pub const Y_BOX: BoxNames = BoxNames {
    corners: ["a", "b", "c", "e"],
    edge: "y",
};

pub const Z_BOX: BoxNames = BoxNames {
    corners: ["f", "g", "h", "j"],
    edge: "z",
};

/// The four boxes in order `y1, y2, z1, z2`.
pub fn boxes() -> [(BoxNames, usize); 4] {
    [(Y_BOX, 1), (Y_BOX, 2), (Z_BOX, 1), (Z_BOX, 2)]
}

impl BoxNames {
    pub fn corner(&self, i: usize, k: usize) -> String {
        format!("{}{k}", self.corners[i])
    }

    pub fn edge(&self, m: usize, k: usize) -> String {
        format!("{}{m}_{k}", self.edge)
    }
}

pub fn cfk_unknot() -> FreeComplex {
    let mut b = ComplexBuilder::new(Ring::FUV);
    b.generator("v", 0, Some(0)).expect("fresh id");
    b.build()
}

/// `CFK^-(J)` over `F2[U,V]`: the generator `x` and four unit boxes.
pub fn cfk_j() -> FreeComplex {
    let mut b = ComplexBuilder::new(Ring::FUV);
    b.generator("x", 0, Some(0)).expect("fresh id");
    let y_gr = [(0, 0), (1, -1), (-1, 1), (0, 0)];
    let z_gr = [(-1, -1), (0, -2), (-2, 0), (-1, -1)];
    for (names, grs) in [(Y_BOX, y_gr), (Z_BOX, z_gr)] {
        for k in 1..=2 {
            for (i, &(u, v)) in grs.iter().enumerate() {
                b.generator(&names.corner(i, k), u, Some(v)).expect("fresh id");
            }
            let [a, bb, c, e] = [0, 1, 2, 3].map(|i| names.corner(i, k));
            b.arrow(&a, &bb, 1, 0).expect("known ids");
            b.arrow(&a, &c, 0, 1).expect("known ids");
            b.arrow(&bb, &e, 0, 1).expect("known ids");
            b.arrow(&c, &e, 1, 0).expect("known ids");
        }
    }
    b.build()
}

pub fn cfd_unknot() -> TypeDStructure {
    let mut b = TypeDStructure::builder();
    b.generator("v", Idem::I0).expect("fresh id");
    b.arrow("v", R12, "v").expect("known id");
    b.build()
}

fn add_cfd_box(b: &mut crate::bordered::TypeDBuilder, names: BoxNames, k: usize) -> Result<()> {
    let [a, bb, c, e] = [0, 1, 2, 3].map(|i| names.corner(i, k));
    let [y1, y2, y3, y4] = [1, 2, 3, 4].map(|m| names.edge(m, k));
    for id in [&a, &bb, &c, &e] {
        b.generator(id, Idem::I0)?;
    }
    for id in [&y1, &y2, &y3, &y4] {
        b.generator(id, Idem::I1)?;
    }
    b.arrow(&bb, R1, &y2)?;
    b.arrow(&y1, R2, &bb)?;
    b.arrow(&a, R3, &y1)?;
    b.arrow(&a, R1, &y4)?;
    b.arrow(&e, R123, &y2)?;
    b.arrow(&y3, R2, &e)?;
    b.arrow(&c, R3, &y3)?;
    b.arrow(&c, R123, &y4)?;
    Ok(())
}

/// `CFD^(S^3 - J)`: the loop at `x` and one eight-generator box per unit
/// box of `CFK^-(J)`, 33 generators in all.
pub fn cfd_j() -> TypeDStructure {
    let mut b = TypeDStructure::builder();
    b.generator("x", Idem::I0).expect("fresh id");
    b.arrow("x", R12, "x").expect("known id");
    for (names, k) in boxes() {
        add_cfd_box(&mut b, names, k).expect("fresh ids");
    }
    b.build()
}

/// The summand of `cfd_j` on `x` and the two `y` boxes.
pub fn cfd_j_y_part() -> TypeDStructure {
    let ids = y_part_ids();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    cfd_j().substructure(&refs).expect("y boxes are a summand")
}

fn y_part_ids() -> Vec<String> {
    let mut ids = vec!["x".to_string()];
    for k in 1..=2 {
        ids.extend((0..4).map(|i| Y_BOX.corner(i, k)));
        ids.extend((1..=4).map(|m| Y_BOX.edge(m, k)));
    }
    ids
}

fn repeat(seq: &mut Vec<AlgBasis>, a: AlgBasis, n: usize) {
    seq.extend(std::iter::repeat_n(a, n));
}

/// `(rho3, rho23^j, rho2)`.
fn longitude_key(j: usize) -> Vec<AlgBasis> {
    let mut s = vec![R3];
    repeat(&mut s, R23, j);
    s.push(R2);
    s
}

/// `CFA^-` of the solid torus with the longitude as knot:
/// `m(alpha, rho3, rho23^j, rho2) = U^{j+1} alpha` for `j < jmax`.
pub fn cfa_longitude(cfg: &Config) -> TypeAModule {
    let mut b = TypeAModule::builder(Flavor::Minus);
    b.generator("alpha", Idem::I0).expect("fresh id");
    for j in 0..cfg.jmax {
        b.op("alpha", &longitude_key(j), "alpha", j as u32 + 1).expect("typed");
    }
    b.truncated_at(cfg.jmax);
    b.build()
}

pub fn beta_id(j: usize) -> String {
    format!("beta{j}")
}

/// `CFA^-` of the `(p,1)`-cable pattern, restricted to operations with
/// input `alpha`. The `beta` generators are marked as having omitted
/// inputs.
pub fn cfa_cable(p: usize, cfg: &Config) -> Result<TypeAModule> {
    if p < 1 {
        return Err(Error::InvalidParameter("cable parameter p must be at least 1".into()));
    }
    let mut b = TypeAModule::builder(Flavor::Minus);
    b.generator("alpha", Idem::I0)?;
    for j in 1..=2 * p - 2 {
        b.generator(&beta_id(j), Idem::I1)?;
        b.omit_inputs_of(&beta_id(j))?;
    }
    for i in 0..p.saturating_sub(1) {
        let mut key = Vec::new();
        repeat(&mut key, R12, i);
        key.push(R1);
        b.op("alpha", &key, &beta_id(2 * p - i - 2), 0)?;
    }
    for j in 0..cfg.jmax {
        for i in 0..p.saturating_sub(1) {
            let mut key = longitude_key(j);
            repeat(&mut key, R12, i);
            key.push(R1);
            b.op("alpha", &key, &beta_id(i + 1), (p * j + i + 1) as u32)?;
        }
        b.op("alpha", &longitude_key(j), "alpha", (p * (j + 1)) as u32)?;
    }
    b.truncated_at(cfg.jmax);
    Ok(b.build())
}

pub fn alpha_id(i: usize) -> String {
    format!("alpha{i}")
}

fn framed_generators(n: usize) -> Result<crate::bordered::TypeABuilder> {
    if n < 1 {
        return Err(Error::InvalidParameter("framing n must be at least 1".into()));
    }
    let mut b = TypeAModule::builder(Flavor::Hat);
    for i in 1..=n {
        b.generator(&alpha_id(i), Idem::I0)?;
    }
    b.generator("beta", Idem::I1)?;
    b.op(&alpha_id(1), &[R1], "beta", 0)?;
    Ok(b)
}

/// `CFA^` of the `n`-framed solid torus, completed by the `rho23` chains
/// that the A-infinity relations force on top of the three displayed
/// families:
/// `m(alpha_i, rho3, rho23^j, rho2) = alpha_{i+j+1}` for `i + j < n` and
/// `m(alpha_i, rho3, rho23^j) = beta` for `i + j = n`.
pub fn cfa_framed_solid_torus_hat(n: usize) -> Result<TypeAModule> {
    let mut b = framed_generators(n)?;
    for i in 1..=n {
        for j in 0..=n - i {
            let mut key = vec![R3];
            repeat(&mut key, R23, j);
            if i + j < n {
                let mut full = key.clone();
                full.push(R2);
                b.op(&alpha_id(i), &full, &alpha_id(i + j + 1), 0)?;
            } else {
                b.op(&alpha_id(i), &key, "beta", 0)?;
            }
        }
    }
    Ok(b.build())
}

/// Only the three displayed families, without the `rho23` chains.
pub fn cfa_framed_solid_torus_hat_printed(n: usize) -> Result<TypeAModule> {
    let mut b = framed_generators(n)?;
    for i in 1..n {
        b.op(&alpha_id(i), &[R3, R2], &alpha_id(i + 1), 0)?;
    }
    b.op(&alpha_id(n), &[R3], "beta", 0)?;
    Ok(b.build())
}

/// Generator counts of `cfk_cable_j(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CableCensus {
    pub tower: usize,
    pub alpha_box: usize,
    pub beta: usize,
}

impl CableCensus {
    pub fn of(p: usize) -> CableCensus {
        CableCensus {
            tower: 1,
            alpha_box: 16,
            beta: 16 * (2 * p - 2),
        }
    }

    pub fn total(&self) -> usize {
        self.tower + self.alpha_box + self.beta
    }
}

pub fn cable_id(a: &str, d: &str) -> String {
    format!("{a}|{d}")
}

/// Generator ids of `cfk_cable_j(p)` in box tensor order.
fn cable_generator_ids(p: usize) -> Vec<String> {
    let d = cfd_j();
    let mut ids = Vec::new();
    let mut a_gens = vec![("alpha".to_string(), Idem::I0)];
    a_gens.extend((1..=2 * p - 2).map(|j| (beta_id(j), Idem::I1)));
    for (a, ia) in &a_gens {
        for (g, ig) in d.generators() {
            if ia == ig {
                ids.push(cable_id(a, g));
            }
        }
    }
    ids
}

type Row = (String, String, u32);

fn row(a: &str, d: &str, a2: &str, d2: &str, u: usize) -> Row {
    (cable_id(a, d), cable_id(a2, d2), u as u32)
}

/// Rows of one box of the cable complex.
fn cable_box_rows(p: usize, names: BoxNames, k: usize) -> Vec<Row> {
    let [a, b, c, e] = [0, 1, 2, 3].map(|i| names.corner(i, k));
    let y = |m: usize| names.edge(m, k);
    let beta = beta_id;
    let mut rows = vec![
        row("alpha", &a, "alpha", &b, p),
        row("alpha", &c, "alpha", &e, p),
    ];
    if p >= 2 {
        rows.push(row("alpha", &a, &beta(1), &y(2), 1));
        rows.push(row("alpha", &a, &beta(2 * p - 2), &y(4), 0));
        rows.push(row("alpha", &b, &beta(2 * p - 2), &y(2), 0));
    }
    for j in 1..p {
        for m in 1..=4 {
            rows.push(row(&beta(j), &y(m), &beta(2 * p - j - 1), &y(m), p - j));
        }
    }
    for i in 1..p.saturating_sub(1) {
        rows.push(row(&beta(i), &y(1), &beta(i + 1), &y(2), 1));
        rows.push(row(&beta(2 * p - i - 1), &y(1), &beta(2 * p - i - 2), &y(2), 0));
    }
    rows
}

/// The displayed rows, with the displayed index ranges.
fn cable_box_rows_printed(p: usize, names: BoxNames, k: usize) -> Vec<Row> {
    let [a, b, c, e] = [0, 1, 2, 3].map(|i| names.corner(i, k));
    let y = |m: usize| names.edge(m, k);
    let beta = beta_id;
    let mut rows = vec![
        row("alpha", &c, "alpha", &e, p),
        row("alpha", &a, "alpha", &b, p),
        row("alpha", &a, &beta(1), &y(2), 1),
        row("alpha", &a, &beta(2 * p - 2), &y(4), 0),
        row("alpha", &b, &beta(2 * p - 2), &y(2), 0),
        row(&beta(1), &y(4), &beta(2 * p - 2), &y(4), p - 1),
        row(&beta(1), &y(2), &beta(2 * p - 2), &y(2), p - 1),
        row(&beta(p - 1), &y(1), &beta(p), &y(1), 1),
        row(&beta(p - 1), &y(3), &beta(p), &y(3), 1),
    ];
    for i in 1..=p.saturating_sub(2) {
        rows.push(row(&beta(i), &y(3), &beta(2 * p - i - 1), &y(3), p - i));
        rows.push(row(&beta(i), &y(1), &beta(2 * p - i - 1), &y(1), p - i));
        rows.push(row(&beta(i), &y(1), &beta(i + 1), &y(2), 1));
        rows.push(row(&beta(i + 1), &y(2), &beta(2 * p - i - 2), &y(2), p - i - 1));
        rows.push(row(&beta(2 * p - i - 1), &y(1), &beta(2 * p - i - 1), &y(2), 0));
    }
    for j in 2..=p.saturating_sub(2) {
        rows.push(row(&beta(j), &y(4), &beta(2 * p - j - 1), &y(4), p - j));
    }
    rows
}

fn cable_complex(p: usize, rows: impl Fn(usize, BoxNames, usize) -> Vec<Row>) -> Result<ComplexBuilder> {
    let mut b = ComplexBuilder::new(Ring::FU);
    for id in cable_generator_ids(p) {
        b.generator(&id, 0, None)?;
    }
    for (names, k) in boxes() {
        for (f, t, u) in rows(p, names, k) {
            b.arrow(&f, &t, u, 0)?;
        }
    }
    Ok(b)
}

/// `CFK^-(J_{(p,1)})` with `V = 0`, as a box tensor product presentation:
/// the tower `alpha|x` and, per box, the `alpha` rows together with the
/// rows among `beta_j` generators forced by the A-infinity relations.
/// Gradings are inferred, anchoring each component at its first
/// generator.
pub fn cfk_cable_j(p: usize) -> Result<FreeComplex> {
    if p < 1 {
        return Err(Error::InvalidParameter("cable parameter p must be at least 1".into()));
    }
    cable_complex(p, cable_box_rows)?.build_inferring_gradings()
}

/// The rows exactly as displayed, for `p >= 2`, with the gradings of
/// `cfk_cable_j(p)`. For `p >= 3` this is not a chain complex; see the
/// tests.
pub fn cfk_cable_j_printed(p: usize) -> Result<FreeComplex> {
    if p < 2 {
        return Err(Error::InvalidParameter("the displayed rows need p >= 2".into()));
    }
    let reference = cfk_cable_j(p)?;
    let mut b = ComplexBuilder::new(Ring::FU);
    for g in reference.generators() {
        b.generator(&g.id, g.gr_u, None)?;
    }
    for (names, k) in boxes() {
        for (f, t, u) in cable_box_rows_printed(p, names, k) {
            b.arrow(&f, &t, u, 0)?;
        }
    }
    Ok(b.build())
}

/// Named cycles `phi, psi, g1..g4, h1..h4` in `Mor(cfd_unknot, cfd_j)`.
pub fn basis_morphisms() -> Vec<(String, DMorphism)> {
    let mut out = vec![
        ("phi".to_string(), DMorphism::entry("v", I0, "x")),
        ("psi".to_string(), DMorphism::entry("v", R12, "x")),
    ];
    for (n, (names, k)) in boxes().into_iter().enumerate() {
        let g = DMorphism::entry("v", I0, &names.corner(3, k))
            .with("v", R3, &names.edge(2, k))
            .with("v", R1, &names.edge(3, k));
        out.push((format!("g{}", n + 1), g));
    }
    for (n, (names, k)) in boxes().into_iter().enumerate() {
        out.push((format!("h{}", n + 1), DMorphism::entry("v", R1, &names.edge(4, k))));
    }
    out
}

pub fn basis_morphism(name: &str) -> Result<DMorphism> {
    basis_morphisms()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, f)| f)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// `g1 + g2 + eps1 psi + eps2 (h1 + h2 + h3 + h4)`.
pub fn candidate_map_sum(eps1: bool, eps2: bool) -> DMorphism {
    let get = |n: &str| basis_morphism(n).expect("basis name");
    let mut f = get("g1").sum(&get("g2"));
    if eps1 {
        f = f.sum(&get("psi"));
    }
    if eps2 {
        for h in ["h1", "h2", "h3", "h4"] {
            f = f.sum(&get(h));
        }
    }
    f
}

pub const A0_SUMMAND_IDS: [&str; 9] = ["x", "a1", "Ub1", "Vc1", "e1", "a2", "Ub2", "Vc2", "e2"];

/// The summand of `A_0^-(J)` on `x` and the two `y` boxes.
pub fn a0_j_summand() -> FreeComplex {
    cfk_j()
        .a0_minus()
        .and_then(|c| c.subcomplex(&A0_SUMMAND_IDS))
        .expect("the y boxes form a summand")
}

pub const INVOLUTION_NAMES: [&str; 4] = ["id", "iota", "sigma", "iota_sigma"];

/// Chain-level involutions on `a0_j_summand()`. `iota` exchanges the two
/// boxes; `sigma` also sends `x` to `x + e1 + e2`; `iota_sigma` keeps the
/// boxes and sends `x` to `x + e1 + e2`.
pub fn a0_j_involution(name: &str) -> Result<ChainMap> {
    let c = a0_j_summand();
    let (swap, shear) = match name {
        "id" => (false, false),
        "iota" => (true, false),
        "sigma" => (true, true),
        "iota_sigma" => (false, true),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let mut entries: Vec<(String, String)> = vec![("x".into(), "x".into())];
    for base in ["a", "Ub", "Vc", "e"] {
        for k in [1, 2] {
            let to = if swap { 3 - k } else { k };
            entries.push((format!("{base}{k}"), format!("{base}{to}")));
        }
    }
    if shear {
        entries.push(("x".into(), "e1".into()));
        entries.push(("x".into(), "e2".into()));
    }
    let refs: Vec<(&str, &str, u32)> = entries.iter().map(|(f, t)| (f.as_str(), t.as_str(), 0)).collect();
    ChainMap::from_entries(&c, &c, &refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Homology;

    #[test]
    fn cfk_j_is_a_complex_with_the_listed_gradings() {
        let c = cfk_j();
        assert!(c.validate().is_ok());
        assert_eq!(c.len(), 17);
        let b1 = c.generator(c.index_of("b1").unwrap());
        assert_eq!((b1.gr_u, b1.gr_v), (1, Some(-1)));
    }

    #[test]
    fn cfd_structures_validate() {
        assert!(cfd_unknot().validate().is_ok());
        let d = cfd_j();
        assert!(d.validate().is_ok());
        assert_eq!(d.len(), 33);
        assert_eq!(d.idempotent_census(), (17, 16));
        assert_eq!(cfd_j_y_part().idempotent_census(), (9, 8));
    }

    #[test]
    fn modules_validate() {
        let cfg = Config { jmax: 8 };
        assert!(cfa_longitude(&cfg).validate(Some(6)).is_ok());
        for p in 1..=4 {
            let r = cfa_cable(p, &cfg).unwrap().validate(None);
            assert!(r.is_ok(), "p = {p}: {:?}", r.violations.first());
        }
        for n in 1..=5 {
            let r = cfa_framed_solid_torus_hat(n).unwrap().validate(None);
            assert!(r.is_ok(), "n = {n}: {:?}", r.violations.first());
        }
    }

    #[test]
    fn cable_one_has_the_longitude_table() {
        let cfg = Config { jmax: 6 };
        assert_eq!(cfa_cable(1, &cfg).unwrap().ops(), cfa_longitude(&cfg).ops());
    }

    #[test]
    fn cable_complex_census_and_towers() {
        for p in 1..=6 {
            let c = cfk_cable_j(p).unwrap();
            assert_eq!(c.len(), CableCensus::of(p).total());
            assert!(c.validate().is_ok());
            let h = Homology::compute(&c).unwrap();
            assert_eq!(h.tower_rank(), 1);
        }
    }

    #[test]
    fn printed_cable_rows_break_for_p_at_least_three() {
        assert_eq!(cfk_cable_j_printed(2).unwrap(), cfk_cable_j(2).unwrap());
        for p in 3..=5 {
            assert!(!cfk_cable_j_printed(p).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn involutions_are_chain_involutions() {
        let c = a0_j_summand();
        assert!(c.validate().is_ok());
        for name in INVOLUTION_NAMES {
            let f = a0_j_involution(name).unwrap();
            assert!(f.is_chain_map(&c, &c).unwrap(), "{name}");
            assert!(f.preserves_grading(&c, &c), "{name}");
            assert_eq!(f.compose(&f), ChainMap::identity(&c), "{name}");
        }
        assert!(a0_j_involution("tau").is_err());
    }
}
