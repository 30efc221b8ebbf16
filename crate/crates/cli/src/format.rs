//! The structure-description format. A document is TOML with a top-level
//! `shape`: `"finite"` carries tables written with element names,
//! `"builder"` names a registered construction and its `params`.
//! Rationals are always written as `"p/q"` strings.

use std::collections::BTreeMap;
use std::path::Path;

use conj_core::algebra::{FiniteTable, Kind, StructureError};
use conj_core::carriers::{ke_structure, KeVariant};
use conj_core::catalog::{
    cyclic, free_semigroup, gaussian_ball, hurwitz_group, klein, max_chain, naturals, quaternion_ball,
    quaternion_group, quaternion_group_identity_conj, rational_ball, rational_interval, scaled_unit_gaussians,
    scaled_unit_quaternions, symmetric3, trivial, unit_circle, unit_quaternions, NatConj, NatOp,
};
use conj_core::{ConjStructure, Hom};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed description: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown builder `{0}`")]
    UnknownBuilder(String),
    #[error("builder `{builder}`: {problem}")]
    BadParam { builder: String, problem: String },
    #[error("unknown structure `{0}`")]
    UnknownStructure(String),
    #[error("`{structure}` has no element named `{name}`")]
    UnknownElement { structure: String, name: String },
    #[error("map `{0}` is required")]
    MissingMap(String),
    #[error("map `{map}` gives no image for `{missing}`")]
    MapIncomplete { map: String, missing: String },
    #[error("map `{map}` needs a finite source, `{source_name}` is infinite")]
    InfiniteSource { map: String, source_name: String },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A single structure.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case", deny_unknown_fields)]
pub enum StructureDoc {
    Finite {
        name: String,
        elements: Vec<String>,
        /// `table[i][j]` names `elements[i] + elements[j]`.
        table: Vec<Vec<String>>,
        conj: Vec<String>,
        identity: Option<String>,
        /// Defaults to whether an identity is given.
        monoid: Option<bool>,
    },
    Builder {
        builder: String,
        #[serde(default)]
        params: toml::Table,
    },
}

/// A map between two named structures of a system, given by images of
/// element names.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub from: String,
    pub to: String,
    pub images: BTreeMap<String, String>,
}

/// Several named structures and maps between them: an extension, crossed
/// data or an admissibility diagram.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SystemDoc {
    Finite {
        structures: BTreeMap<String, StructureDoc>,
        #[serde(default)]
        maps: BTreeMap<String, MapDoc>,
    },
    Builder {
        builder: String,
        #[serde(default)]
        params: toml::Table,
    },
}

pub fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn parse_structure(text: &str) -> Result<StructureDoc, FormatError> {
    Ok(toml::from_str(text)?)
}

pub fn parse_system(text: &str) -> Result<SystemDoc, FormatError> {
    Ok(toml::from_str(text)?)
}

fn bad(builder: &str, problem: impl Into<String>) -> FormatError {
    FormatError::BadParam { builder: builder.into(), problem: problem.into() }
}

pub fn param_usize(builder: &str, params: &toml::Table, key: &str) -> Result<usize, FormatError> {
    match params.get(key) {
        Some(toml::Value::Integer(n)) if *n > 0 => Ok(*n as usize),
        Some(other) => Err(bad(builder, format!("`{key}` must be a positive integer, got {other}"))),
        None => Err(bad(builder, format!("missing parameter `{key}`"))),
    }
}

pub fn param_str<'a>(builder: &str, params: &'a toml::Table, key: &str) -> Result<&'a str, FormatError> {
    match params.get(key) {
        Some(toml::Value::String(s)) => Ok(s),
        Some(other) => Err(bad(builder, format!("`{key}` must be a string, got {other}"))),
        None => Err(bad(builder, format!("missing parameter `{key}`"))),
    }
}

/// Names accepted by [`build_structure`].
pub const STRUCTURE_BUILDERS: &[&str] = &[
    "trivial",
    "cyclic",
    "klein",
    "symmetric3",
    "quaternion-group",
    "quaternion-group-identity-conj",
    "hurwitz-units",
    "max-chain",
    "naturals",
    "free-semigroup",
    "rational-ball",
    "rational-interval",
    "gaussian-ball",
    "quaternion-ball",
    "unit-circle",
    "unit-quaternions",
    "scaled-unit-gaussians",
    "scaled-unit-quaternions",
    "ke",
];

pub fn build_structure(builder: &str, params: &toml::Table) -> Result<ConjStructure, FormatError> {
    Ok(match builder {
        "trivial" => trivial(),
        "cyclic" => cyclic(param_usize(builder, params, "n")?),
        "klein" => klein(),
        "symmetric3" => symmetric3(),
        "quaternion-group" => quaternion_group(),
        "quaternion-group-identity-conj" => quaternion_group_identity_conj(),
        "hurwitz-units" => hurwitz_group(),
        "max-chain" => max_chain(param_usize(builder, params, "n")?),
        "naturals" => {
            let op = match params.get("op").and_then(|v| v.as_str()).unwrap_or("add") {
                "add" => NatOp::Add,
                "max" => NatOp::Max,
                other => return Err(bad(builder, format!("op `{other}` (expected add or max)"))),
            };
            let conj = match params.get("conj").and_then(|v| v.as_str()).unwrap_or("identity") {
                "zero" => NatConj::Zero,
                "identity" => NatConj::Identity,
                "successor" => NatConj::Successor,
                other => return Err(bad(builder, format!("conj `{other}` (expected zero, identity or successor)"))),
            };
            naturals(op, conj)
        }
        "free-semigroup" => free_semigroup(param_str(builder, params, "alphabet")?),
        "rational-ball" => rational_ball(),
        "rational-interval" => rational_interval(),
        "gaussian-ball" => gaussian_ball(),
        "quaternion-ball" => quaternion_ball(),
        "unit-circle" => unit_circle(),
        "unit-quaternions" => unit_quaternions(),
        "scaled-unit-gaussians" => scaled_unit_gaussians(),
        "scaled-unit-quaternions" => scaled_unit_quaternions(),
        "ke" => {
            let dim = params.get("dim").and_then(|v| v.as_integer()).ok_or_else(|| bad(builder, "missing parameter `dim`"))?;
            let variant = match params.get("variant").and_then(|v| v.as_str()).unwrap_or("semigroup") {
                "semigroup" => KeVariant::Semigroup,
                "monoid" => KeVariant::Monoid,
                other => return Err(bad(builder, format!("variant `{other}` (expected semigroup or monoid)"))),
            };
            let dim = usize::try_from(dim).map_err(|_| bad(builder, "`dim` must be 0, 1 or 3"))?;
            ke_structure(dim, variant).map_err(|e| bad(builder, e.to_string()))?
        }
        other => return Err(FormatError::UnknownBuilder(other.to_string())),
    })
}

fn lookup(structure: &str, elements: &[String], name: &str) -> Result<usize, FormatError> {
    elements
        .iter()
        .position(|e| e == name)
        .ok_or_else(|| FormatError::UnknownElement { structure: structure.into(), name: name.into() })
}

pub fn structure_from_doc(doc: &StructureDoc) -> Result<ConjStructure, FormatError> {
    match doc {
        StructureDoc::Builder { builder, params } => build_structure(builder, params),
        StructureDoc::Finite { name, elements, table, conj, identity, monoid } => {
            let idx = |e: &String| lookup(name, elements, e);
            let rows = table.iter().map(|row| row.iter().map(idx).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
            let conj = conj.iter().map(idx).collect::<Result<Vec<_>, _>>()?;
            let identity = identity.as_ref().map(idx).transpose()?;
            let kind = if monoid.unwrap_or(identity.is_some()) { Kind::Monoid } else { Kind::Semigroup };
            let table = FiniteTable::new(elements.clone(), rows, conj, identity)?;
            Ok(ConjStructure::from_table(name.clone(), kind, table)?)
        }
    }
}

/// The structures and maps of a finite system, resolved.
pub struct System {
    pub structures: BTreeMap<String, ConjStructure>,
    pub maps: BTreeMap<String, Hom>,
}

impl System {
    pub fn from_docs(
        structures: &BTreeMap<String, StructureDoc>,
        maps: &BTreeMap<String, MapDoc>,
    ) -> Result<Self, FormatError> {
        let mut built = BTreeMap::new();
        for (key, doc) in structures {
            built.insert(key.clone(), structure_from_doc(doc)?);
        }
        let mut homs = BTreeMap::new();
        for (key, m) in maps {
            let get = |k: &str| built.get(k).cloned().ok_or_else(|| FormatError::UnknownStructure(k.into()));
            let (src, tgt) = (get(&m.from)?, get(&m.to)?);
            let els = src
                .elements()
                .ok_or_else(|| FormatError::InfiniteSource { map: key.clone(), source_name: src.name().into() })?;
            for named in m.images.keys() {
                if src.parse(named).is_none() {
                    return Err(FormatError::UnknownElement { structure: src.name().into(), name: named.clone() });
                }
            }
            let mut images = Vec::with_capacity(els.len());
            for x in els.iter() {
                let shown = src.show(x);
                let img = m
                    .images
                    .get(&shown)
                    .ok_or_else(|| FormatError::MapIncomplete { map: key.clone(), missing: shown.clone() })?;
                let y = tgt
                    .parse(img)
                    .ok_or_else(|| FormatError::UnknownElement { structure: tgt.name().into(), name: img.clone() })?;
                images.push(y);
            }
            let hom = Hom::from_table(key.clone(), &src, &tgt, images).map_err(|e| FormatError::Shape(e.to_string()))?;
            homs.insert(key.clone(), hom);
        }
        Ok(System { structures: built, maps: homs })
    }

    pub fn map(&self, name: &str) -> Result<&Hom, FormatError> {
        self.maps.get(name).ok_or_else(|| FormatError::MissingMap(name.into()))
    }
}
