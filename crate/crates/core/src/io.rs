//! JSON file formats for groups and modules.
//!
//! Group: `{"degree": n, "generators": [[images...], ...], "name": "..."}`
//! or `{"generators_cycles": ["(0 1 2)", "(0 1)"]}`.
//!
//! Module: `{"field": {"p": p, "k": k}, "dim": d, "generator_matrices": [...]}`
//! with one matrix per group generator; entries are integers, or length-`k`
//! coefficient vectors when `k > 1`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gf::GaloisField;
use crate::matrix::Matrix;
use crate::module::Representation;
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators_cycles: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Coeffs(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub field: FieldSpec,
    pub dim: usize,
    pub generator_matrices: Vec<Vec<Vec<Entry>>>,
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "group file")
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        let gens: Vec<Permutation> = match (&self.generators, &self.generators_cycles) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "group file: give either `generators` or `generators_cycles`, not both".into(),
                ))
            }
            (Some(images), None) => images
                .iter()
                .map(|img| Permutation::new(img.clone()))
                .collect::<Result<_>>()?,
            (None, Some(cycles)) => {
                let degree = match self.degree {
                    Some(d) => d,
                    None => cycles
                        .iter()
                        .map(|c| Permutation::cycles_min_degree(c))
                        .collect::<Result<Vec<_>>>()?
                        .into_iter()
                        .max()
                        .unwrap_or(1),
                };
                cycles
                    .iter()
                    .map(|c| Permutation::from_cycles(c, degree))
                    .collect::<Result<_>>()?
            }
            (None, None) => return Err(Error::Parse("group file: no generators".into())),
        };
        let degree = match (self.degree, gens.first()) {
            (Some(d), _) => d,
            (None, Some(g)) => g.degree(),
            (None, None) => 1,
        };
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        PermGroup::new(degree, gens)
    }

    pub fn from_group(g: &PermGroup, name: Option<&str>) -> Self {
        GroupFile {
            degree: Some(g.degree()),
            generators: Some(g.generators().iter().map(Permutation::images).collect()),
            generators_cycles: None,
            name: name.map(str::to_string),
        }
    }
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self> {
        parse_json(text, "module file")
    }

    pub fn to_rep(&self, group: &PermGroup) -> Result<Representation> {
        let field = GaloisField::new(self.field.p, self.field.k)?;
        let mut images = Vec::with_capacity(self.generator_matrices.len());
        for (gi, rows) in self.generator_matrices.iter().enumerate() {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::Shape(format!(
                    "generator matrix {gi} is not {0}x{0}",
                    self.dim
                )));
            }
            let mut data = Vec::with_capacity(self.dim * self.dim);
            for row in rows {
                for e in row {
                    data.push(match e {
                        Entry::Int(n) if field.k() == 1 => field.from_int(*n),
                        Entry::Int(_) => {
                            return Err(Error::Parse(format!(
                                "module file: matrix {gi} needs coefficient vectors over {field:?}"
                            )))
                        }
                        Entry::Coeffs(c) => {
                            let p = field.p() as i64;
                            let cs: Vec<u32> = c.iter().map(|x| x.rem_euclid(p) as u32).collect();
                            field.from_coeffs(&cs)?
                        }
                    });
                }
            }
            images.push(Matrix::from_codes(&field, self.dim, self.dim, data)?);
        }
        Representation::with_dim(group.clone(), field, self.dim, images)
    }

    pub fn from_rep(rep: &Representation) -> Self {
        let field = rep.field();
        let entry = |c: u32| {
            if field.k() == 1 {
                Entry::Int(c as i64)
            } else {
                Entry::Coeffs(field.coeffs(c).into_iter().map(i64::from).collect())
            }
        };
        ModuleFile {
            field: FieldSpec {
                p: field.p() as u64,
                k: field.k(),
            },
            dim: rep.dim(),
            generator_matrices: rep
                .gen_images()
                .iter()
                .map(|m| m.to_rows().into_iter().map(|r| r.into_iter().map(entry).collect()).collect())
                .collect(),
        }
    }
}

pub fn load_group(text: &str) -> Result<PermGroup> {
    GroupFile::parse(text)?.to_group()
}

pub fn load_module(text: &str, group: &PermGroup) -> Result<Representation> {
    ModuleFile::parse(text)?.to_rep(group)
}

/// `{"group": ..., "module": ...}` for a catalog export.
pub fn export_json(name: &str, group: &PermGroup, rep: Option<&Representation>) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("group".into(), serde_json::to_value(GroupFile::from_group(group, Some(name))).expect("serializable"));
    if let Some(rep) = rep {
        obj.insert("module".into(), serde_json::to_value(ModuleFile::from_rep(rep)).expect("serializable"));
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_formats_agree() {
        let a = load_group(r#"{"degree": 3, "generators": [[1,2,0],[1,0,2]], "name": "S3"}"#).unwrap();
        let b = load_group(r#"{"generators_cycles": ["(0 1 2)", "(0 1)"]}"#).unwrap();
        assert_eq!(a.order(), 6);
        assert!(a.same_group(&b));
        let padded = load_group(r#"{"degree": 5, "generators_cycles": ["(0 1 2)"]}"#).unwrap();
        assert_eq!(padded.degree(), 5);
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = load_group("{\"degree\": 3,\n \"generators\": [[1,2,0],]}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line 2"), "{msg}"),
            e => panic!("{e:?}"),
        }
        assert!(load_group(r#"{"degree": 3, "generators": [[1,1,0]]}"#).is_err());
        assert!(load_group(r#"{"degree": 4, "generators": [[1,2,0]]}"#).is_err());
        assert!(load_group(r#"{"generatorz": []}"#).is_err());
    }

    #[test]
    fn module_round_trip() {
        let g = load_group(r#"{"generators_cycles": ["(0 1 2)", "(0 1)"]}"#).unwrap();
        let text = r#"{"field": {"p": 7, "k": 1}, "dim": 2,
            "generator_matrices": [[[-1, 1], [-1, 0]], [[0, 1], [1, 0]]]}"#;
        let rep = load_module(text, &g).unwrap();
        assert_eq!(rep.dim(), 2);
        let file = ModuleFile::from_rep(&rep);
        assert_eq!(file.generator_matrices[0][0], vec![Entry::Int(6), Entry::Int(1)]);
        let again = file.to_rep(&g).unwrap();
        assert_eq!(again.gen_images(), rep.gen_images());
    }

    #[test]
    fn extension_field_entries() {
        let g = load_group(r#"{"generators_cycles": ["(0 1 2)"]}"#).unwrap();
        // x is a primitive cube root of unity in GF(4).
        let text = r#"{"field": {"p": 2, "k": 2}, "dim": 1, "generator_matrices": [[[[0, 1]]]]}"#;
        let rep = load_module(text, &g).unwrap();
        let file = ModuleFile::from_rep(&rep);
        assert_eq!(file.generator_matrices[0][0][0], Entry::Coeffs(vec![0, 1]));
        let bad = r#"{"field": {"p": 2, "k": 2}, "dim": 1, "generator_matrices": [[[1]]]}"#;
        assert!(load_module(bad, &g).is_err());
        let not_hom = r#"{"field": {"p": 7, "k": 1}, "dim": 1, "generator_matrices": [[[3]]]}"#;
        assert!(matches!(load_module(not_hom, &g), Err(Error::NotHomomorphism(_))));
    }
}
