//! JSON files for algebras, representations, actions, operators and
//! cochains. Indices in files are 1-based and scalars are strings.
//!
//! Nested objects (`"algebra"`, `"target"`, `"action"`) may be given inline
//! or as a path, resolved against the directory of the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cochain::{wedge_dim, Cochain};
use crate::error::{Error, Result};
use crate::linalg::{zero_vector, LinearMap, Matrix, Vector};
use crate::lts::LieTripleSystem;
use crate::rbo::RelativeRbo;
use crate::rep::{Action, Representation};
use crate::scalar::Scalar;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    args: [usize; 3],
    value: BTreeMap<String, Scalar>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaEntry {
    args: [usize; 2],
    matrix: Vec<Vec<Scalar>>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn index(what: &str, i: usize, dim: usize) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(Error::Parse(format!(
            "{what} index {i} out of range 1..={dim}"
        )));
    }
    Ok(i - 1)
}

/// Reads a file; errors carry the path.
pub fn read_json(path: &Path) -> Result<Value> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// An inline object, or a string path to a file holding one.
fn resolve(value: &Value, dir: &Path) -> Result<(Value, PathBuf)> {
    match value {
        Value::String(p) => {
            let path = dir.join(p);
            Ok((read_json(&path)?, base_dir(&path)))
        }
        Value::Object(_) => Ok((value.clone(), dir.to_path_buf())),
        _ => Err(Error::Parse("expected an object or a file path".into())),
    }
}

fn field<'a>(value: &'a Value, name: &str) -> Result<&'a Value> {
    value
        .get(name)
        .ok_or_else(|| Error::Parse(format!("missing field \"{name}\"")))
}

// ---------------------------------------------------------------- algebras

/// Builds a system from a file value. Each listed bracket `[e_i,e_j,e_k]`
/// with `i ≠ j` also sets `[e_j,e_i,e_k]` to its negative unless that entry
/// is listed too, in which case the two must agree. Entries with `i = j`
/// are stored as given so that verification can report them.
pub fn algebra_from_value(value: &Value) -> Result<LieTripleSystem> {
    let file: AlgebraFile = serde_json::from_value(value.clone()).map_err(parse_err)?;
    let d = file.dim;
    let names = match file.basis {
        Some(b) if b.len() != d => {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} names but dim is {d}",
                b.len()
            )))
        }
        Some(b) => b,
        None => crate::lts::default_basis_names(d),
    };
    let mut given: BTreeMap<(usize, usize, usize), Vector> = BTreeMap::new();
    for e in &file.brackets {
        let [i, j, k] = e.args;
        let key = (
            index("bracket", i, d)?,
            index("bracket", j, d)?,
            index("bracket", k, d)?,
        );
        let mut v = zero_vector(d);
        for (l, x) in &e.value {
            let l: usize = l
                .parse()
                .map_err(|_| Error::Parse(format!("bad value key \"{l}\"")))?;
            v[index("value", l, d)?] = x.clone();
        }
        if given.insert(key, v).is_some() {
            return Err(Error::Parse(format!("bracket {:?} listed twice", e.args)));
        }
    }
    let mut l = LieTripleSystem::abelian(d).with_basis_names(names)?;
    for (&(i, j, k), v) in &given {
        if i != j {
            let partner: Vector = v.iter().map(|x| -x).collect();
            if let Some(p) = given.get(&(j, i, k)) {
                if p != &partner {
                    return Err(Error::Parse(format!(
                        "contradictory brackets [{},{},{}] and [{},{},{}]",
                        i + 1,
                        j + 1,
                        k + 1,
                        j + 1,
                        i + 1,
                        k + 1
                    )));
                }
            }
            l.set_basis_bracket(j, i, k, partner)?;
        }
        l.set_basis_bracket(i, j, k, v.clone())?;
    }
    Ok(l)
}

fn value_map(v: &[Scalar]) -> BTreeMap<String, Scalar> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(l, x)| ((l + 1).to_string(), x.clone()))
        .collect()
}

/// The sparse form: brackets with `i < j` and any nonzero `i = j` entries.
/// Fails for tensors that are not skew in the first two arguments, which
/// the sparse form cannot express.
pub fn algebra_to_value(l: &LieTripleSystem) -> Result<Value> {
    let d = l.dim();
    let mut brackets = Vec::new();
    for i in 0..d {
        for j in i..d {
            for k in 0..d {
                let v = l.basis_bracket(i, j, k);
                if i < j {
                    let partner: Vector = v.iter().map(|x| -x).collect();
                    if l.basis_bracket(j, i, k) != &partner {
                        return Err(Error::Shape(format!(
                            "bracket is not skew at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
                if v.iter().any(|x| !x.is_zero()) {
                    brackets.push(BracketEntry {
                        args: [i + 1, j + 1, k + 1],
                        value: value_map(v),
                    });
                }
            }
        }
    }
    let file = AlgebraFile {
        dim: d,
        basis: Some(l.basis_names().to_vec()),
        brackets,
    };
    serde_json::to_value(file).map_err(parse_err)
}

pub fn load_algebra(path: &Path) -> Result<LieTripleSystem> {
    algebra_from_value(&read_json(path)?)
}

// ---------------------------------------------------------- representations

fn matrix_from_rows(rows: &[Vec<Scalar>], r: usize, c: usize) -> Result<Matrix> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {r}x{c} matrix"
        )));
    }
    if r == 0 {
        return Ok(Matrix::zeros(0, c));
    }
    Matrix::from_rows(rows.to_vec())
}

fn matrix_to_value(m: &Matrix) -> Value {
    serde_json::to_value(m.to_rows()).expect("serializable")
}

fn representation_from_value_in(value: &Value, dir: &Path) -> Result<Representation> {
    let (alg, _) = resolve(field(value, "algebra")?, dir)?;
    let algebra = algebra_from_value(&alg)?;
    let m: usize = serde_json::from_value(field(value, "space_dim")?.clone()).map_err(parse_err)?;
    let entries: Vec<ThetaEntry> = match value.get("theta") {
        Some(t) => serde_json::from_value(t.clone()).map_err(parse_err)?,
        None => Vec::new(),
    };
    let d = algebra.dim();
    let mut theta = vec![Matrix::zeros(m, m); d * d];
    let mut seen = vec![false; d * d];
    for e in entries {
        let (i, j) = (index("theta", e.args[0], d)?, index("theta", e.args[1], d)?);
        if std::mem::replace(&mut seen[i * d + j], true) {
            return Err(Error::Parse(format!("theta {:?} listed twice", e.args)));
        }
        theta[i * d + j] = matrix_from_rows(&e.matrix, m, m)?;
    }
    Representation::new(algebra, m, theta)
}

pub fn representation_from_value(value: &Value) -> Result<Representation> {
    representation_from_value_in(value, Path::new(""))
}

pub fn representation_to_value(r: &Representation) -> Result<Value> {
    let d = r.algebra().dim();
    let mut theta = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let m = r.theta_basis(i, j);
            if !m.is_zero() {
                theta.push(serde_json::json!({
                    "args": [i + 1, j + 1],
                    "matrix": matrix_to_value(m),
                }));
            }
        }
    }
    Ok(serde_json::json!({
        "algebra": algebra_to_value(r.algebra())?,
        "space_dim": r.space_dim(),
        "theta": theta,
    }))
}

pub fn load_representation(path: &Path) -> Result<Representation> {
    representation_from_value_in(&read_json(path)?, &base_dir(path))
}

fn action_from_value_in(value: &Value, dir: &Path) -> Result<Action> {
    let rep = representation_from_value_in(value, dir)?;
    let (target, _) = resolve(field(value, "target")?, dir)?;
    Action::new(rep, algebra_from_value(&target)?)
}

pub fn action_from_value(value: &Value) -> Result<Action> {
    action_from_value_in(value, Path::new(""))
}

pub fn action_to_value(a: &Action) -> Result<Value> {
    let mut v = representation_to_value(a.rep())?;
    v["target"] = algebra_to_value(a.target())?;
    Ok(v)
}

pub fn load_action(path: &Path) -> Result<Action> {
    action_from_value_in(&read_json(path)?, &base_dir(path))
}

// --------------------------------------------------------------- operators

fn rbo_from_value_in(value: &Value, dir: &Path) -> Result<RelativeRbo> {
    let (action, adir) = resolve(field(value, "action")?, dir)?;
    let action = action_from_value_in(&action, &adir)?;
    let weight: Scalar = match value.get("weight") {
        Some(w) => serde_json::from_value(w.clone()).map_err(parse_err)?,
        None => Scalar::zero(),
    };
    let rows: Vec<Vec<Scalar>> =
        serde_json::from_value(field(value, "T")?.clone()).map_err(parse_err)?;
    let t = matrix_from_rows(&rows, action.algebra().dim(), action.target().dim())?;
    RelativeRbo::new(action, weight, LinearMap::new(t))
}

pub fn rbo_from_value(value: &Value) -> Result<RelativeRbo> {
    rbo_from_value_in(value, Path::new(""))
}

pub fn rbo_to_value(r: &RelativeRbo) -> Result<Value> {
    Ok(serde_json::json!({
        "action": action_to_value(r.action())?,
        "weight": r.weight(),
        "T": matrix_to_value(r.t().matrix()),
    }))
}

pub fn load_rbo(path: &Path) -> Result<RelativeRbo> {
    rbo_from_value_in(&read_json(path)?, &base_dir(path))
}

/// A square matrix file: a bare array of rows.
pub fn load_linear_map(path: &Path, rows: usize, cols: usize) -> Result<LinearMap> {
    let v: Vec<Vec<Scalar>> = serde_json::from_value(read_json(path)?).map_err(parse_err)?;
    Ok(LinearMap::new(matrix_from_rows(&v, rows, cols)?))
}

// ----------------------------------------------------------------- cochains

fn nest(coeffs: &[Scalar], depth: usize, s: usize) -> Value {
    if depth == 0 {
        return serde_json::to_value(coeffs).expect("serializable");
    }
    let chunk = coeffs.len() / s.max(1);
    Value::Array(
        (0..s)
            .map(|i| nest(&coeffs[i * chunk..(i + 1) * chunk], depth - 1, s))
            .collect(),
    )
}

pub fn cochain_to_value(f: &Cochain) -> Value {
    let coeffs = if f.degree() == -1 {
        serde_json::to_value(f.coeffs()).expect("serializable")
    } else {
        nest(f.coeffs(), f.degree() as usize, f.source_dim())
    };
    serde_json::json!({ "degree": f.degree(), "coeffs": coeffs })
}

fn flatten(
    v: &Value,
    depth: usize,
    shape: &mut Vec<usize>,
    level: usize,
    out: &mut Vector,
) -> Result<()> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("coeffs must be nested arrays".into()))?;
    if shape.len() == level {
        shape.push(arr.len());
    } else if shape[level] != arr.len() {
        return Err(Error::DimensionMismatch("ragged coefficient array".into()));
    }
    if level == depth {
        for x in arr {
            out.push(serde_json::from_value(x.clone()).map_err(parse_err)?);
        }
        return Ok(());
    }
    for x in arr {
        flatten(x, depth, shape, level + 1, out)?;
    }
    Ok(())
}

/// Reads a cochain. Degree `-1` coefficients are a flat list of wedge
/// coordinates; the dimension is recovered from its length.
pub fn cochain_from_value(value: &Value) -> Result<Cochain> {
    let degree: i32 = serde_json::from_value(field(value, "degree")?.clone()).map_err(parse_err)?;
    let coeffs = field(value, "coeffs")?;
    if degree == -1 {
        let c: Vector = serde_json::from_value(coeffs.clone()).map_err(parse_err)?;
        let d = (0..=64).find(|&d| wedge_dim(d) == c.len()).ok_or_else(|| {
            Error::DimensionMismatch(format!("{} is not a wedge dimension", c.len()))
        })?;
        return Cochain::wedge(d, d, c);
    }
    if degree < 1 || degree % 2 == 0 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut shape = Vec::new();
    let mut out = Vec::new();
    flatten(coeffs, degree as usize, &mut shape, 0, &mut out)?;
    let s = shape[0];
    if shape[..degree as usize].iter().any(|&x| x != s) {
        return Err(Error::DimensionMismatch(
            "argument dimensions differ".into(),
        ));
    }
    Cochain::new(degree, s, shape[degree as usize], out)
}

pub fn load_cochain(path: &Path) -> Result<Cochain> {
    cochain_from_value(&read_json(path)?)
}
