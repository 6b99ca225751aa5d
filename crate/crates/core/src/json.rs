//! Versioned JSON forms of complexes, type-D structures, type-A modules
//! and D-morphisms. Every document carries `"format": 1` and a `"kind"`.

use serde::{Deserialize, Serialize};

use crate::bordered::{DMorphism, Flavor, TypeAModule, TypeDStructure};
use crate::coeff::{ComplexBuilder, FreeComplex, Ring};
use crate::error::{Error, Result};
use crate::torus::{AlgBasis, Idem};

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub id: String,
    pub gr_u: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gr_v: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub from: String,
    pub to: String,
    pub u_exp: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_exp: Option<u32>,
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub ring: Ring,
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub graded: bool,
    pub generators: Vec<GeneratorJson>,
    pub differential: Vec<EntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IdemGenJson {
    pub id: String,
    pub idem: Idem,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub from: String,
    pub rho: AlgBasis,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TypeDJson {
    pub generators: Vec<IdemGenJson>,
    pub delta: Vec<ArrowJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OutJson {
    pub gen: String,
    pub u_exp: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct OpJson {
    pub gen: String,
    pub rhos: Vec<AlgBasis>,
    pub out: Vec<OutJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TypeAJson {
    pub flavor: Flavor,
    pub generators: Vec<IdemGenJson>,
    pub ops: Vec<OpJson>,
    /// Generators whose own operations are omitted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub partial: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntryJson {
    pub from: String,
    pub alg: AlgBasis,
    pub to: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub entries: Vec<MorphismEntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Body {
    Complex(ComplexJson),
    TypeD(TypeDJson),
    TypeA(TypeAJson),
    Morphism(MorphismJson),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Document {
    pub format: u32,
    #[serde(flatten)]
    pub body: Body,
}

/// Any object that can be exported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Complex(FreeComplex),
    TypeD(TypeDStructure),
    TypeA(TypeAModule),
    Morphism(DMorphism),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Complex(_) => "complex",
            Object::TypeD(_) => "type_d",
            Object::TypeA(_) => "type_a",
            Object::Morphism(_) => "morphism",
        }
    }

    pub fn to_document(&self) -> Document {
        let body = match self {
            Object::Complex(c) => Body::Complex(complex_json(c)),
            Object::TypeD(d) => Body::TypeD(type_d_json(d)),
            Object::TypeA(a) => Body::TypeA(type_a_json(a)),
            Object::Morphism(m) => Body::Morphism(MorphismJson {
                entries: m
                    .entries()
                    .map(|(f, a, t)| MorphismEntryJson {
                        from: f.into(),
                        alg: a,
                        to: t.into(),
                    })
                    .collect(),
            }),
        };
        Document { format: FORMAT, body }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Object> {
        let schema = |path: &str, message: String| Error::Schema {
            path: path.into(),
            message,
        };
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| schema("", e.to_string()))?;
        let map = value
            .as_object_mut()
            .ok_or_else(|| schema("", "expected a JSON object".into()))?;
        let format = map
            .remove("format")
            .and_then(|f| f.as_u64())
            .ok_or_else(|| schema("format", "missing or not an integer".into()))?;
        let kind = match map.remove("kind") {
            Some(serde_json::Value::String(k)) => k,
            _ => return Err(schema("kind", "missing or not a string".into())),
        };
        fn body<T: serde::de::DeserializeOwned>(v: serde_json::Value) -> Result<T> {
            serde_path_to_error::deserialize(v).map_err(|e| Error::Schema {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })
        }
        let body = match kind.as_str() {
            "complex" => Body::Complex(body(value)?),
            "type_d" => Body::TypeD(body(value)?),
            "type_a" => Body::TypeA(body(value)?),
            "morphism" => Body::Morphism(body(value)?),
            other => return Err(schema("kind", format!("unknown kind {other:?}"))),
        };
        let format = u32::try_from(format).map_err(|_| schema("format", format!("unsupported format {format}")))?;
        Object::from_document(Document { format, body })
    }

    pub fn from_document(doc: Document) -> Result<Object> {
        if doc.format != FORMAT {
            return Err(Error::Schema {
                path: "format".into(),
                message: format!("unsupported format {}", doc.format),
            });
        }
        match doc.body {
            Body::Complex(c) => Ok(Object::Complex(complex_from(c)?)),
            Body::TypeD(d) => Ok(Object::TypeD(type_d_from(d)?)),
            Body::TypeA(a) => Ok(Object::TypeA(type_a_from(a)?)),
            Body::Morphism(m) => {
                let mut f = DMorphism::zero();
                for e in m.entries {
                    f.toggle(&e.from, e.alg, &e.to);
                }
                Ok(Object::Morphism(f))
            }
        }
    }
}

fn complex_json(c: &FreeComplex) -> ComplexJson {
    let bigraded = c.ring() == Ring::FUV;
    ComplexJson {
        ring: c.ring(),
        graded: c.is_graded(),
        generators: c
            .generators()
            .iter()
            .map(|g| GeneratorJson {
                id: g.id.clone(),
                gr_u: g.gr_u,
                gr_v: g.gr_v,
            })
            .collect(),
        differential: c
            .entries()
            .iter()
            .map(|e| EntryJson {
                from: c.id(e.from).into(),
                to: c.id(e.to).into(),
                u_exp: e.coeff.u_exp,
                v_exp: bigraded.then_some(e.coeff.v_exp),
            })
            .collect(),
    }
}

fn complex_from(j: ComplexJson) -> Result<FreeComplex> {
    let mut b = ComplexBuilder::new(j.ring);
    if !j.graded {
        b = b.ungraded();
    }
    for g in &j.generators {
        b.generator(&g.id, g.gr_u, g.gr_v)?;
    }
    for e in &j.differential {
        if e.v_exp.is_some() && j.ring != Ring::FUV {
            return Err(Error::Schema {
                path: "differential".into(),
                message: format!("v_exp on {} -> {} in a complex over {}", e.from, e.to, j.ring),
            });
        }
        b.arrow(&e.from, &e.to, e.u_exp, e.v_exp.unwrap_or(0))?;
    }
    Ok(b.build())
}

fn idem_gens(gens: &[(String, Idem)]) -> Vec<IdemGenJson> {
    gens.iter()
        .map(|(id, idem)| IdemGenJson {
            id: id.clone(),
            idem: *idem,
        })
        .collect()
}

fn type_d_json(d: &TypeDStructure) -> TypeDJson {
    TypeDJson {
        generators: idem_gens(d.generators()),
        delta: d
            .arrows()
            .iter()
            .map(|a| ArrowJson {
                from: d.id(a.from).into(),
                rho: a.rho,
                to: d.id(a.to).into(),
            })
            .collect(),
    }
}

fn type_d_from(j: TypeDJson) -> Result<TypeDStructure> {
    let mut b = TypeDStructure::builder();
    for g in &j.generators {
        b.generator(&g.id, g.idem)?;
    }
    for a in &j.delta {
        b.arrow(&a.from, a.rho, &a.to)?;
    }
    Ok(b.build())
}

fn type_a_json(m: &TypeAModule) -> TypeAJson {
    TypeAJson {
        flavor: m.flavor(),
        generators: idem_gens(m.generators()),
        ops: m
            .ops()
            .iter()
            .map(|op| OpJson {
                gen: m.id(op.gen).into(),
                rhos: op.rhos.clone(),
                out: op
                    .out
                    .iter()
                    .map(|&(g, u)| OutJson {
                        gen: m.id(g).into(),
                        u_exp: u,
                    })
                    .collect(),
            })
            .collect(),
        partial: m.partial_generators().iter().map(|&g| m.id(g).to_string()).collect(),
        truncation: m.truncation(),
    }
}

fn type_a_from(j: TypeAJson) -> Result<TypeAModule> {
    let mut b = TypeAModule::builder(j.flavor);
    for g in &j.generators {
        b.generator(&g.id, g.idem)?;
    }
    for op in &j.ops {
        for o in &op.out {
            b.op(&op.gen, &op.rhos, &o.gen, o.u_exp)?;
        }
    }
    for g in &j.partial {
        b.omit_inputs_of(g)?;
    }
    if let Some(t) = j.truncation {
        b.truncated_at(t);
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    fn round_trip(o: Object) {
        let back = Object::from_json(&o.to_json()).unwrap();
        assert_eq!(back, o);
    }

    #[test]
    fn built_ins_round_trip() {
        let cfg = Config { jmax: 6 };
        round_trip(Object::Complex(cfk_j()));
        round_trip(Object::Complex(cfk_cable_j(3).unwrap()));
        round_trip(Object::TypeD(cfd_j()));
        round_trip(Object::TypeA(cfa_cable(3, &cfg).unwrap()));
        round_trip(Object::TypeA(cfa_framed_solid_torus_hat(3).unwrap()));
        round_trip(Object::Morphism(candidate_map_sum(true, true)));
    }

    #[test]
    fn unknown_rho_reports_its_path() {
        let text = r#"{"format":1,"kind":"type_d","generators":[{"id":"v","idem":"i0"}],
            "delta":[{"from":"v","rho":"r13","to":"v"}]}"#;
        match Object::from_json(text) {
            Err(Error::Schema { path, .. }) => assert!(path.contains("delta"), "{path}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_format_is_rejected() {
        let text = r#"{"format":2,"kind":"morphism","entries":[]}"#;
        assert!(matches!(Object::from_json(text), Err(Error::Schema { .. })));
    }
}
