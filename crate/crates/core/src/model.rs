//! The interchange model: a labelled set of indecomposables with integer
//! index vectors, distinguished maximal rigid sets, and optional hom table,
//! syzygy-shift permutation, and exchange-triangle data. JSON is the single
//! storage format; loading validates shape and invariants with JSON-pointer
//! error paths before anything computes.

use crate::exact::Int;
use crate::fan::{ChamberDecomposition, FanError, SimplicialCone};
use num::{One, Zero};
use serde_json::{Map, Value};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

pub const SCHEMA: &str = "fanmodel/1";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invariant violation at {pointer}: {message}")]
    Invariant { pointer: String, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Fan(#[from] FanError),
}

fn schema_err<T>(pointer: impl Into<String>, message: impl Into<String>) -> Result<T, ModelError> {
    Err(ModelError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    })
}

fn invariant_err<T>(
    pointer: impl Into<String>,
    message: impl Into<String>,
) -> Result<T, ModelError> {
    Err(ModelError::Invariant {
        pointer: pointer.into(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indecomposable {
    pub label: String,
    pub index: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalRigid {
    pub label: String,
    pub summands: Vec<String>,
}

/// One mutation edge: `from` and `to` differ exactly in `replaced`, and the
/// two middle terms of the exchange triangles are recorded as summand lists
/// (either may be empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeTriangle {
    pub from: String,
    pub to: String,
    pub replaced: String,
    pub b_plus: Vec<String>,
    pub b_minus: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanModel {
    pub dim: usize,
    pub reference: String,
    pub indecomposables: Vec<Indecomposable>,
    pub maximal_rigid: Vec<MaximalRigid>,
    pub hom_dims: Option<BTreeMap<String, BTreeMap<String, u64>>>,
    pub sigma: Option<BTreeMap<String, String>>,
    pub exchange: Option<Vec<ExchangeTriangle>>,
}

impl FanModel {
    pub fn indecomposable(&self, label: &str) -> Option<&Indecomposable> {
        self.indecomposables.iter().find(|i| i.label == label)
    }

    pub fn rigid_set(&self, label: &str) -> Option<&MaximalRigid> {
        self.maximal_rigid.iter().find(|m| m.label == label)
    }

    pub fn index_of(&self, label: &str) -> Option<&Vec<Int>> {
        self.indecomposable(label).map(|i| &i.index)
    }

    pub fn hom_dim(&self, a: &str, b: &str) -> Option<u64> {
        self.hom_dims
            .as_ref()
            .and_then(|t| t.get(a))
            .and_then(|row| row.get(b))
            .copied()
    }

    pub fn sigma_of(&self, label: &str) -> Option<&str> {
        self.sigma
            .as_ref()
            .and_then(|s| s.get(label))
            .map(|s| s.as_str())
    }

    pub fn sigma_inverse_of(&self, label: &str) -> Option<&str> {
        self.sigma.as_ref().and_then(|s| {
            s.iter()
                .find(|(_, v)| v.as_str() == label)
                .map(|(k, _)| k.as_str())
        })
    }

    /// The exchange edge replacing one summand of a given set, if recorded.
    pub fn exchange_from(&self, from: &str, replaced: &str) -> Option<&ExchangeTriangle> {
        self.exchange
            .as_ref()
            .and_then(|e| e.iter().find(|t| t.from == from && t.replaced == replaced))
    }

    pub fn exchange_between(&self, from: &str, to: &str) -> Option<&ExchangeTriangle> {
        self.exchange
            .as_ref()
            .and_then(|e| e.iter().find(|t| t.from == from && t.to == to))
    }

    /// The labelled cone decomposition spanned by the index vectors of each
    /// maximal rigid set.
    pub fn decomposition(&self) -> Result<ChamberDecomposition, ModelError> {
        let mut chambers = Vec::new();
        for m in &self.maximal_rigid {
            let rays: Vec<Vec<Int>> = m
                .summands
                .iter()
                .map(|s| {
                    self.index_of(s)
                        .cloned()
                        .expect("summands resolve after validation")
                })
                .collect();
            chambers.push((m.label.clone(), SimplicialCone::new(self.dim, rays)?));
        }
        Ok(ChamberDecomposition::new(self.dim, chambers)?)
    }

    pub fn from_json(v: &Value) -> Result<FanModel, ModelError> {
        let root = as_object(v, "")?;
        let allowed = [
            "schema",
            "dim",
            "reference",
            "indecomposables",
            "maximal_rigid",
            "hom_dims",
            "sigma",
            "exchange",
        ];
        for key in root.keys() {
            if !allowed.contains(&key.as_str()) {
                return schema_err(format!("/{}", key), "unknown field");
            }
        }
        let schema = as_string(require(root, "schema", "")?, "/schema")?;
        if schema != SCHEMA {
            return schema_err("/schema", format!("expected \"{}\"", SCHEMA));
        }
        let dim_v = require(root, "dim", "")?;
        let dim = dim_v
            .as_u64()
            .filter(|&d| d >= 1)
            .ok_or(ModelError::Schema {
                pointer: "/dim".into(),
                message: "expected a positive integer".into(),
            })? as usize;
        let reference = as_string(require(root, "reference", "")?, "/reference")?.to_string();

        let indec_v = as_array(require(root, "indecomposables", "")?, "/indecomposables")?;
        let mut indecomposables = Vec::new();
        let mut indec_labels = BTreeSet::new();
        for (i, entry) in indec_v.iter().enumerate() {
            let ptr = format!("/indecomposables/{}", i);
            let obj = as_object(entry, &ptr)?;
            check_keys(obj, &["label", "index"], &ptr)?;
            let label = as_string(require(obj, "label", &ptr)?, &format!("{}/label", ptr))?;
            if label.is_empty() {
                return schema_err(format!("{}/label", ptr), "label must be nonempty");
            }
            if !indec_labels.insert(label.to_string()) {
                return invariant_err(format!("{}/label", ptr), "duplicate indecomposable label");
            }
            let idx_ptr = format!("{}/index", ptr);
            let idx_v = as_array(require(obj, "index", &ptr)?, &idx_ptr)?;
            if idx_v.len() != dim {
                return schema_err(idx_ptr, format!("expected {} entries", dim));
            }
            let mut index = Vec::new();
            for (j, x) in idx_v.iter().enumerate() {
                let n = x.as_i64().ok_or(ModelError::Schema {
                    pointer: format!("{}/{}", idx_ptr, j),
                    message: "expected an integer".into(),
                })?;
                index.push(Int::from(n));
            }
            if index.iter().all(|x| x.is_zero()) {
                return invariant_err(idx_ptr, "index vector must be nonzero");
            }
            indecomposables.push(Indecomposable {
                label: label.to_string(),
                index,
            });
        }
        let mut seen_indices = BTreeSet::new();
        for (i, ind) in indecomposables.iter().enumerate() {
            if !seen_indices.insert(ind.index.clone()) {
                return invariant_err(
                    format!("/indecomposables/{}/index", i),
                    "duplicate index vector",
                );
            }
        }

        let mrig_v = as_array(require(root, "maximal_rigid", "")?, "/maximal_rigid")?;
        let mut maximal_rigid = Vec::new();
        let mut mrig_labels = BTreeSet::new();
        for (i, entry) in mrig_v.iter().enumerate() {
            let ptr = format!("/maximal_rigid/{}", i);
            let obj = as_object(entry, &ptr)?;
            check_keys(obj, &["label", "summands"], &ptr)?;
            let label = as_string(require(obj, "label", &ptr)?, &format!("{}/label", ptr))?;
            if !mrig_labels.insert(label.to_string()) {
                return invariant_err(format!("{}/label", ptr), "duplicate maximal rigid label");
            }
            let s_ptr = format!("{}/summands", ptr);
            let s_v = as_array(require(obj, "summands", &ptr)?, &s_ptr)?;
            if s_v.len() != dim {
                return invariant_err(s_ptr, format!("expected exactly {} summands", dim));
            }
            let mut summands = Vec::new();
            for (j, s) in s_v.iter().enumerate() {
                let sp = format!("{}/{}", s_ptr, j);
                let s = as_string(s, &sp)?;
                if !indec_labels.contains(s) {
                    return invariant_err(sp, format!("unknown summand label \"{}\"", s));
                }
                if summands.contains(&s.to_string()) {
                    return invariant_err(sp, "repeated summand");
                }
                summands.push(s.to_string());
            }
            maximal_rigid.push(MaximalRigid {
                label: label.to_string(),
                summands,
            });
        }

        let ref_pos = maximal_rigid.iter().position(|m| m.label == reference);
        let Some(ref_pos) = ref_pos else {
            return invariant_err("/reference", "reference is not a maximal rigid label");
        };
        for (k, s) in maximal_rigid[ref_pos].summands.iter().enumerate() {
            let idx = indecomposables
                .iter()
                .find(|i| &i.label == s)
                .map(|i| &i.index)
                .expect("validated summand");
            let is_basis_k = idx.iter().enumerate().all(|(j, x)| {
                if j == k {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            });
            if !is_basis_k {
                return invariant_err(
                    format!("/maximal_rigid/{}/summands/{}", ref_pos, k),
                    "reference summand indices must be the standard basis in listed order",
                );
            }
        }

        let hom_dims = match root.get("hom_dims") {
            None => None,
            Some(h) => {
                let table = as_object(h, "/hom_dims")?;
                let mut out: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
                for label in table.keys() {
                    if !indec_labels.contains(label) {
                        return schema_err(
                            format!("/hom_dims/{}", label),
                            "unknown indecomposable label",
                        );
                    }
                }
                for label in &indec_labels {
                    let ptr = format!("/hom_dims/{}", label);
                    let row_v = table.get(label).ok_or(ModelError::Schema {
                        pointer: ptr.clone(),
                        message: "missing row".into(),
                    })?;
                    let row = as_object(row_v, &ptr)?;
                    for col in row.keys() {
                        if !indec_labels.contains(col) {
                            return schema_err(
                                format!("{}/{}", ptr, col),
                                "unknown indecomposable label",
                            );
                        }
                    }
                    let mut out_row = BTreeMap::new();
                    for col in &indec_labels {
                        let cptr = format!("{}/{}", ptr, col);
                        let cell = row.get(col).ok_or(ModelError::Schema {
                            pointer: cptr.clone(),
                            message: "missing entry".into(),
                        })?;
                        let n = cell.as_u64().ok_or(ModelError::Schema {
                            pointer: cptr,
                            message: "expected a nonnegative integer".into(),
                        })?;
                        out_row.insert(col.clone(), n);
                    }
                    out.insert(label.clone(), out_row);
                }
                Some(out)
            }
        };

        let sigma = match root.get("sigma") {
            None => None,
            Some(s) => {
                let map = as_object(s, "/sigma")?;
                for label in map.keys() {
                    if !indec_labels.contains(label) {
                        return schema_err(
                            format!("/sigma/{}", label),
                            "unknown indecomposable label",
                        );
                    }
                }
                let mut out = BTreeMap::new();
                let mut image = BTreeSet::new();
                for label in &indec_labels {
                    let ptr = format!("/sigma/{}", label);
                    let v = map.get(label).ok_or(ModelError::Schema {
                        pointer: ptr.clone(),
                        message: "missing entry".into(),
                    })?;
                    let target = as_string(v, &ptr)?;
                    if !indec_labels.contains(target) {
                        return invariant_err(ptr, format!("unknown label \"{}\"", target));
                    }
                    if !image.insert(target.to_string()) {
                        return invariant_err(ptr, "sigma is not a permutation");
                    }
                    out.insert(label.clone(), target.to_string());
                }
                Some(out)
            }
        };

        let exchange = match root.get("exchange") {
            None => None,
            Some(e) => {
                let arr = as_array(e, "/exchange")?;
                let mut out = Vec::new();
                for (i, entry) in arr.iter().enumerate() {
                    let ptr = format!("/exchange/{}", i);
                    let obj = as_object(entry, &ptr)?;
                    check_keys(obj, &["from", "to", "replaced", "b_plus", "b_minus"], &ptr)?;
                    let from =
                        as_string(require(obj, "from", &ptr)?, &format!("{}/from", ptr))?;
                    let to = as_string(require(obj, "to", &ptr)?, &format!("{}/to", ptr))?;
                    let replaced = as_string(
                        require(obj, "replaced", &ptr)?,
                        &format!("{}/replaced", ptr),
                    )?;
                    for (field, label) in [("from", from), ("to", to)] {
                        if !mrig_labels.contains(label) {
                            return invariant_err(
                                format!("{}/{}", ptr, field),
                                format!("unknown maximal rigid label \"{}\"", label),
                            );
                        }
                    }
                    if !indec_labels.contains(replaced) {
                        return invariant_err(
                            format!("{}/replaced", ptr),
                            format!("unknown indecomposable label \"{}\"", replaced),
                        );
                    }
                    let from_set: BTreeSet<&String> = maximal_rigid
                        .iter()
                        .find(|m| m.label == from)
                        .map(|m| m.summands.iter().collect())
                        .expect("validated");
                    let to_set: BTreeSet<&String> = maximal_rigid
                        .iter()
                        .find(|m| m.label == to)
                        .map(|m| m.summands.iter().collect())
                        .expect("validated");
                    let replaced_string = replaced.to_string();
                    if !from_set.contains(&replaced_string) || to_set.contains(&replaced_string) {
                        return invariant_err(
                            format!("{}/replaced", ptr),
                            "replaced summand must belong to \"from\" and not to \"to\"",
                        );
                    }
                    if from_set.difference(&to_set).count() != 1
                        || to_set.difference(&from_set).count() != 1
                    {
                        return invariant_err(
                            ptr,
                            "\"from\" and \"to\" must differ in exactly one summand",
                        );
                    }
                    let mut middles = [Vec::new(), Vec::new()];
                    for (slot, field) in ["b_plus", "b_minus"].iter().enumerate() {
                        let fp = format!("{}/{}", ptr, field);
                        let list = as_array(require(obj, field, &ptr)?, &fp)?;
                        for (j, s) in list.iter().enumerate() {
                            let sp = format!("{}/{}", fp, j);
                            let s = as_string(s, &sp)?;
                            if !indec_labels.contains(s) {
                                return invariant_err(
                                    sp,
                                    format!("unknown indecomposable label \"{}\"", s),
                                );
                            }
                            middles[slot].push(s.to_string());
                        }
                    }
                    let [b_plus, b_minus] = middles;
                    out.push(ExchangeTriangle {
                        from: from.to_string(),
                        to: to.to_string(),
                        replaced: replaced.to_string(),
                        b_plus,
                        b_minus,
                    });
                }
                Some(out)
            }
        };

        Ok(FanModel {
            dim,
            reference,
            indecomposables,
            maximal_rigid,
            hom_dims,
            sigma,
            exchange,
        })
    }

    pub fn to_json(&self) -> Result<Value, ModelError> {
        let mut root = Map::new();
        root.insert("schema".into(), Value::String(SCHEMA.into()));
        root.insert("dim".into(), Value::from(self.dim as u64));
        root.insert("reference".into(), Value::String(self.reference.clone()));
        let indec: Vec<Value> = self
            .indecomposables
            .iter()
            .map(|i| {
                let mut o = Map::new();
                o.insert("label".into(), Value::String(i.label.clone()));
                let idx: Result<Vec<Value>, ModelError> = i
                    .index
                    .iter()
                    .map(|x| {
                        int_to_i64(x)
                            .map(Value::from)
                            .ok_or(ModelError::Invariant {
                                pointer: format!("/indecomposables/{}/index", i.label),
                                message: "index entry does not fit in 64 bits".into(),
                            })
                    })
                    .collect();
                idx.map(|idx| {
                    o.insert("index".into(), Value::Array(idx));
                    Value::Object(o)
                })
            })
            .collect::<Result<_, _>>()?;
        root.insert("indecomposables".into(), Value::Array(indec));
        let mrig: Vec<Value> = self
            .maximal_rigid
            .iter()
            .map(|m| {
                let mut o = Map::new();
                o.insert("label".into(), Value::String(m.label.clone()));
                o.insert(
                    "summands".into(),
                    Value::Array(
                        m.summands
                            .iter()
                            .map(|s| Value::String(s.clone()))
                            .collect(),
                    ),
                );
                Value::Object(o)
            })
            .collect();
        root.insert("maximal_rigid".into(), Value::Array(mrig));
        if let Some(h) = &self.hom_dims {
            let mut table = Map::new();
            for (row_label, row) in h {
                let mut row_map = Map::new();
                for (col_label, v) in row {
                    row_map.insert(col_label.clone(), Value::from(*v));
                }
                table.insert(row_label.clone(), Value::Object(row_map));
            }
            root.insert("hom_dims".into(), Value::Object(table));
        }
        if let Some(s) = &self.sigma {
            let mut map = Map::new();
            for (k, v) in s {
                map.insert(k.clone(), Value::String(v.clone()));
            }
            root.insert("sigma".into(), Value::Object(map));
        }
        if let Some(e) = &self.exchange {
            let arr: Vec<Value> = e
                .iter()
                .map(|t| {
                    let mut o = Map::new();
                    o.insert("from".into(), Value::String(t.from.clone()));
                    o.insert("to".into(), Value::String(t.to.clone()));
                    o.insert("replaced".into(), Value::String(t.replaced.clone()));
                    o.insert(
                        "b_plus".into(),
                        Value::Array(t.b_plus.iter().map(|s| Value::String(s.clone())).collect()),
                    );
                    o.insert(
                        "b_minus".into(),
                        Value::Array(
                            t.b_minus.iter().map(|s| Value::String(s.clone())).collect(),
                        ),
                    );
                    Value::Object(o)
                })
                .collect();
            root.insert("exchange".into(), Value::Array(arr));
        }
        Ok(Value::Object(root))
    }

    /// Canonical byte representation: pretty JSON with sorted keys and a
    /// trailing newline. Saving and reloading reproduces it bit for bit.
    pub fn to_canonical_string(&self) -> Result<String, ModelError> {
        let v = self.to_json()?;
        let mut s = serde_json::to_string_pretty(&v).expect("valid json value");
        s.push('\n');
        Ok(s)
    }
}

fn int_to_i64(x: &Int) -> Option<i64> {
    i64::try_from(x.clone()).ok()
}

fn as_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>, ModelError> {
    v.as_object().ok_or(ModelError::Schema {
        pointer: ptr.to_string(),
        message: "expected an object".into(),
    })
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, ModelError> {
    v.as_array().ok_or(ModelError::Schema {
        pointer: ptr.to_string(),
        message: "expected an array".into(),
    })
}

fn as_string<'a>(v: &'a Value, ptr: &str) -> Result<&'a str, ModelError> {
    v.as_str().ok_or(ModelError::Schema {
        pointer: ptr.to_string(),
        message: "expected a string".into(),
    })
}

fn require<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    ptr: &str,
) -> Result<&'a Value, ModelError> {
    obj.get(key).ok_or(ModelError::Schema {
        pointer: format!("{}/{}", ptr, key),
        message: "missing field".into(),
    })
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], ptr: &str) -> Result<(), ModelError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return schema_err(format!("{}/{}", ptr, key), "unknown field");
        }
    }
    Ok(())
}

pub fn load_model_str(text: &str) -> Result<FanModel, ModelError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ModelError::Schema {
        pointer: "".into(),
        message: format!("invalid JSON: {}", e),
    })?;
    FanModel::from_json(&v)
}

pub fn load_model(path: &std::path::Path) -> Result<FanModel, ModelError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| ModelError::Io(format!("{}: {}", path.display(), e)))?;
    load_model_str(&text)
}

pub fn save_model(model: &FanModel, path: &std::path::Path) -> Result<(), ModelError> {
    let text = model.to_canonical_string()?;
    std::fs::write(path, text).map_err(|e| ModelError::Io(format!("{}: {}", path.display(), e)))
}

/// The fan of m lines through the origin, with unimodular integer directions
/// chosen so that consecutive rays form unimodular pairs and the reference
/// chamber is spanned by the standard basis. Chambers run counterclockwise.
/// m = 1 degenerates to the rank-one model on a line, since a single line in
/// the plane has half-plane chambers, which are not simplicial.
pub fn generate_dihedral(m: usize) -> Result<FanModel, ModelError> {
    if m == 0 {
        return Err(ModelError::InvalidParam(
            "dihedral parameter m must be at least 1".into(),
        ));
    }
    if m == 1 {
        return Ok(FanModel {
            dim: 1,
            reference: "C0".into(),
            indecomposables: vec![
                Indecomposable {
                    label: "R0".into(),
                    index: vec![Int::one()],
                },
                Indecomposable {
                    label: "R1".into(),
                    index: vec![-Int::one()],
                },
            ],
            maximal_rigid: vec![
                MaximalRigid {
                    label: "C0".into(),
                    summands: vec!["R0".into()],
                },
                MaximalRigid {
                    label: "C1".into(),
                    summands: vec!["R1".into()],
                },
            ],
            hom_dims: None,
            sigma: None,
            exchange: None,
        });
    }
    // Directions (1,0) and (1-k, 1) for k = 1..m-1 have unimodular
    // consecutive pairs, including the wrap onto the negated first ray.
    let mut half: Vec<Vec<Int>> = vec![vec![Int::one(), Int::zero()]];
    for k in 1..m {
        half.push(vec![Int::from(1 - (k as i64)), Int::one()]);
    }
    let mut rays = half.clone();
    rays.extend(half.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<Int>>()));
    let indecomposables: Vec<Indecomposable> = rays
        .iter()
        .enumerate()
        .map(|(i, r)| Indecomposable {
            label: format!("R{}", i),
            index: r.clone(),
        })
        .collect();
    let n = rays.len();
    let maximal_rigid: Vec<MaximalRigid> = (0..n)
        .map(|i| MaximalRigid {
            label: format!("C{}", i),
            summands: vec![format!("R{}", i), format!("R{}", (i + 1) % n)],
        })
        .collect();
    Ok(FanModel {
        dim: 2,
        reference: "C0".into(),
        indecomposables,
        maximal_rigid,
        hom_dims: None,
        sigma: None,
        exchange: None,
    })
}

/// The one-dimensional model with two indecomposables swapped by the shift,
/// endomorphism dimension c, and exchange triangles with zero middle terms.
pub fn generate_sigma_swap(c: u64) -> Result<FanModel, ModelError> {
    if c == 0 {
        return Err(ModelError::InvalidParam(
            "sigma_swap parameter c must be at least 1".into(),
        ));
    }
    let mut hom_dims = BTreeMap::new();
    hom_dims.insert(
        "x".to_string(),
        BTreeMap::from([("x".to_string(), c), ("sx".to_string(), 0)]),
    );
    hom_dims.insert(
        "sx".to_string(),
        BTreeMap::from([("x".to_string(), 0), ("sx".to_string(), c)]),
    );
    Ok(FanModel {
        dim: 1,
        reference: "x".into(),
        indecomposables: vec![
            Indecomposable {
                label: "x".into(),
                index: vec![Int::one()],
            },
            Indecomposable {
                label: "sx".into(),
                index: vec![-Int::one()],
            },
        ],
        maximal_rigid: vec![
            MaximalRigid {
                label: "x".into(),
                summands: vec!["x".into()],
            },
            MaximalRigid {
                label: "sx".into(),
                summands: vec!["sx".into()],
            },
        ],
        hom_dims: Some(hom_dims),
        sigma: Some(BTreeMap::from([
            ("x".to_string(), "sx".to_string()),
            ("sx".to_string(), "x".to_string()),
        ])),
        exchange: Some(vec![
            ExchangeTriangle {
                from: "x".into(),
                to: "sx".into(),
                replaced: "x".into(),
                b_plus: vec![],
                b_minus: vec![],
            },
            ExchangeTriangle {
                from: "sx".into(),
                to: "x".into(),
                replaced: "sx".into(),
                b_plus: vec![],
                b_minus: vec![],
            },
        ]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::recognize_arrangement;

    #[test]
    fn dihedral_two_is_the_coordinate_cross() {
        let m = generate_dihedral(2).unwrap();
        assert_eq!(m.dim, 2);
        assert_eq!(m.indecomposables.len(), 4);
        let rays: Vec<Vec<i64>> = m
            .indecomposables
            .iter()
            .map(|i| i.index.iter().map(|x| int_to_i64(x).unwrap()).collect())
            .collect();
        assert_eq!(
            rays,
            vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]]
        );
        let fan = m.decomposition().unwrap();
        assert!(fan.verify().ok());
        let rec = recognize_arrangement(&fan).unwrap();
        assert!(rec.is_arrangement);
        assert_eq!(rec.arrangement.unwrap().hyperplanes.len(), 2);
    }

    #[test]
    fn dihedral_three_has_six_chambers_and_three_lines() {
        let m = generate_dihedral(3).unwrap();
        let fan = m.decomposition().unwrap();
        assert_eq!(fan.chambers().len(), 6);
        assert!(fan.verify().ok());
        let rec = recognize_arrangement(&fan).unwrap();
        assert!(rec.is_arrangement);
        assert_eq!(rec.arrangement.unwrap().hyperplanes.len(), 3);
    }

    #[test]
    fn dihedral_one_degenerates_to_the_line() {
        let m = generate_dihedral(1).unwrap();
        assert_eq!(m.dim, 1);
        assert!(m.decomposition().unwrap().verify().ok());
        assert!(generate_dihedral(0).is_err());
    }

    #[test]
    fn sigma_swap_loads_and_verifies() {
        let m = generate_sigma_swap(1).unwrap();
        assert!(m.decomposition().unwrap().verify().ok());
        assert_eq!(m.hom_dim("x", "x"), Some(1));
        assert_eq!(m.hom_dim("x", "sx"), Some(0));
        assert_eq!(m.sigma_of("x"), Some("sx"));
        assert_eq!(m.sigma_inverse_of("x"), Some("sx"));
        let t = m.exchange_from("x", "x").unwrap();
        assert_eq!(t.to, "sx");
        assert!(t.b_plus.is_empty() && t.b_minus.is_empty());
        assert!(generate_sigma_swap(0).is_err());
    }

    #[test]
    fn canonical_round_trip() {
        for model in [
            generate_dihedral(3).unwrap(),
            generate_sigma_swap(2).unwrap(),
        ] {
            let text = model.to_canonical_string().unwrap();
            let back = load_model_str(&text).unwrap();
            assert_eq!(back, model);
            assert_eq!(back.to_canonical_string().unwrap(), text);
        }
    }

    #[test]
    fn schema_errors_carry_pointers() {
        let missing_dim = r#"{"schema": "fanmodel/1", "reference": "C0",
            "indecomposables": [], "maximal_rigid": []}"#;
        match load_model_str(missing_dim) {
            Err(ModelError::Schema { pointer, .. }) => assert_eq!(pointer, "/dim"),
            other => panic!("expected schema error, got {:?}", other),
        }
        let bad_index = r#"{"schema": "fanmodel/1", "dim": 1, "reference": "B",
            "indecomposables": [{"label": "x", "index": [1.5]}],
            "maximal_rigid": [{"label": "B", "summands": ["x"]}]}"#;
        match load_model_str(bad_index) {
            Err(ModelError::Schema { pointer, .. }) => {
                assert_eq!(pointer, "/indecomposables/0/index/0")
            }
            other => panic!("expected schema error, got {:?}", other),
        }
        let unknown_key = r#"{"schema": "fanmodel/1", "dim": 1, "reference": "B",
            "indecomposables": [{"label": "x", "index": [1]}],
            "maximal_rigid": [{"label": "B", "summands": ["x"]}], "extra": 1}"#;
        match load_model_str(unknown_key) {
            Err(ModelError::Schema { pointer, .. }) => assert_eq!(pointer, "/extra"),
            other => panic!("expected schema error, got {:?}", other),
        }
    }

    #[test]
    fn invariant_errors_carry_pointers() {
        // Reference summand index is not the standard basis.
        let bad_ref = r#"{"schema": "fanmodel/1", "dim": 1, "reference": "B",
            "indecomposables": [{"label": "x", "index": [-1]}],
            "maximal_rigid": [{"label": "B", "summands": ["x"]}]}"#;
        match load_model_str(bad_ref) {
            Err(ModelError::Invariant { pointer, .. }) => {
                assert_eq!(pointer, "/maximal_rigid/0/summands/0")
            }
            other => panic!("expected invariant error, got {:?}", other),
        }
        // Wrong summand count.
        let wrong_count = r#"{"schema": "fanmodel/1", "dim": 2, "reference": "B",
            "indecomposables": [{"label": "x", "index": [1, 0]}],
            "maximal_rigid": [{"label": "B", "summands": ["x"]}]}"#;
        match load_model_str(wrong_count) {
            Err(ModelError::Invariant { pointer, .. }) => {
                assert_eq!(pointer, "/maximal_rigid/0/summands")
            }
            other => panic!("expected invariant error, got {:?}", other),
        }
        // Unresolvable summand.
        let unknown = r#"{"schema": "fanmodel/1", "dim": 1, "reference": "B",
            "indecomposables": [{"label": "x", "index": [1]}],
            "maximal_rigid": [{"label": "B", "summands": ["y"]}]}"#;
        match load_model_str(unknown) {
            Err(ModelError::Invariant { pointer, .. }) => {
                assert_eq!(pointer, "/maximal_rigid/0/summands/0")
            }
            other => panic!("expected invariant error, got {:?}", other),
        }
    }

    #[test]
    fn sigma_must_be_a_permutation() {
        let bad = r#"{"schema": "fanmodel/1", "dim": 1, "reference": "B",
            "indecomposables": [{"label": "x", "index": [1]}, {"label": "y", "index": [-1]}],
            "maximal_rigid": [{"label": "B", "summands": ["x"]}, {"label": "B2", "summands": ["y"]}],
            "sigma": {"x": "y", "y": "y"}}"#;
        match load_model_str(bad) {
            Err(ModelError::Invariant { pointer, .. }) => assert_eq!(pointer, "/sigma/y"),
            other => panic!("expected invariant error, got {:?}", other),
        }
    }
}
