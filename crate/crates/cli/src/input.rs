//! JSON input files. Unknown fields are rejected and parse errors carry the offending path.

use std::path::Path;

use framecraft::almostinv::{DualMeasure, MeasureSpec};
use framecraft::frames::VectorSystem;
use framecraft::groups::{build_group_seeded, FiniteGroup, GroupSpec};
use framecraft::linalg::{c, CVector};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::Failure;

/// Raw bytes of an input file, kept for the report digest.
pub struct Input {
    pub label: String,
    pub bytes: Vec<u8>,
}

pub fn read(path: &Path) -> Result<Input, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(Input {
        label: path.display().to_string(),
        bytes,
    })
}

fn located(label: &str, prefix: &str, path: &str, msg: impl std::fmt::Display) -> Failure {
    let full = match (prefix, path) {
        ("", "." | "?") => String::new(),
        (pre, "." | "?") => pre.to_string(),
        (pre, p) => format!("{pre}.{p}").trim_start_matches('.').to_string(),
    };
    if full.is_empty() {
        Failure::Validation(format!("{label}: malformed input: {msg}"))
    } else {
        Failure::Validation(format!("{label}: malformed input at `{full}`: {msg}"))
    }
}

pub fn parse<T: DeserializeOwned>(input: &Input) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_slice(&input.bytes);
    serde_path_to_error::deserialize(de).map_err(|e| located(&input.label, "", &e.path().to_string(), e.inner()))
}

fn from_value<T: DeserializeOwned>(label: &str, prefix: &str, value: Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(value).map_err(|e| located(label, prefix, &e.path().to_string(), e.inner()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderArgs {
    n: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableArgs {
    #[serde(default)]
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductArgs {
    factors: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SemidirectArgs {
    acting: Value,
    normal: Value,
    action: Vec<Vec<usize>>,
}

// Internally tagged enums buffer their content and lose error paths, so the tag is
// dispatched by hand and each variant body is decoded on its own.
fn group_spec(label: &str, prefix: &str, value: Value) -> Result<GroupSpec, Failure> {
    let Value::Object(mut map) = value else {
        return Err(located(label, prefix, ".", "expected a group object"));
    };
    let kind = match map.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => return Err(located(label, prefix, "kind", "expected a string")),
        None => return Err(located(label, prefix, ".", "missing field `kind`")),
    };
    let body = Value::Object(map);
    let nested = |field: &str| {
        if prefix.is_empty() {
            field.to_string()
        } else {
            format!("{prefix}.{field}")
        }
    };
    Ok(match kind.as_str() {
        "cyclic" => GroupSpec::Cyclic {
            n: from_value::<OrderArgs>(label, prefix, body)?.n,
        },
        "dihedral" => GroupSpec::Dihedral {
            n: from_value::<OrderArgs>(label, prefix, body)?.n,
        },
        "symmetric" => GroupSpec::Symmetric {
            n: from_value::<OrderArgs>(label, prefix, body)?.n,
        },
        "table" => {
            let args: TableArgs = from_value(label, prefix, body)?;
            GroupSpec::Table {
                labels: args.labels,
                table: args.table,
            }
        }
        "product" => {
            let args: ProductArgs = from_value(label, prefix, body)?;
            let factors = args
                .factors
                .into_iter()
                .enumerate()
                .map(|(i, f)| group_spec(label, &nested(&format!("factors[{i}]")), f))
                .collect::<Result<_, _>>()?;
            GroupSpec::Product { factors }
        }
        "semidirect" => {
            let args: SemidirectArgs = from_value(label, prefix, body)?;
            GroupSpec::Semidirect {
                acting: Box::new(group_spec(label, &nested("acting"), args.acting)?),
                normal: Box::new(group_spec(label, &nested("normal"), args.normal)?),
                action: args.action,
            }
        }
        other => {
            return Err(located(
                label,
                prefix,
                "kind",
                format!(
                    "unknown group kind {other:?}, expected cyclic, dihedral, symmetric, table, product or semidirect"
                ),
            ))
        }
    })
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn value(&self) -> framecraft::linalg::C64 {
        match *self {
            Entry::Real(x) => c(x, 0.0),
            Entry::Complex([re, im]) => c(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub dim: usize,
    pub vectors: Vec<Vec<Entry>>,
}

pub fn system(input: &Input) -> Result<VectorSystem, Failure> {
    let spec: SystemSpec = parse(input)?;
    let vectors = spec
        .vectors
        .iter()
        .map(|v| CVector::from_iterator(v.len(), v.iter().map(Entry::value)))
        .collect();
    Ok(VectorSystem::new(spec.dim, vectors)?)
}

pub fn group(input: &Input, seed: u64) -> Result<FiniteGroup, Failure> {
    let value: Value = parse(input)?;
    let spec = group_spec(&input.label, "", value)?;
    Ok(build_group_seeded(&spec, seed)?)
}

pub fn measure(input: &Input) -> Result<DualMeasure, Failure> {
    let spec: MeasureSpec = parse(input)?;
    Ok(DualMeasure::from_spec(&spec)?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub generators: Vec<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    /// `table[x][g]` as subgroup element indices.
    pub table: Vec<Vec<usize>>,
}

/// Comma-separated vector entries, each `re` or `re:im`.
pub fn vector_arg(text: &str) -> Result<CVector, Failure> {
    let entries = text
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (re, im) = tok.split_once(':').unwrap_or((tok, "0"));
            match (re.parse::<f64>(), im.parse::<f64>()) {
                (Ok(re), Ok(im)) if re.is_finite() && im.is_finite() => Ok(c(re, im)),
                _ => Err(Failure::Validation(format!("bad vector entry {tok:?}"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CVector::from_vec(entries))
}

/// Comma-separated nonnegative integers.
pub fn index_list(text: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Validation(format!("bad index {tok:?}")))
        })
        .collect()
}
