//! `.build.json` files: a JSON tree of constructor nodes.
//!
//! ```json
//! {"blowup": {"Y": {"P": 5}, "Z": {"catalog": "CxP1-even"},
//!             "pullback_degree1": ["a + 3*b"],
//!             "chern_N": ["4*a + 18*b", "54*ab", "0"]}}
//! ```
//!
//! Node kinds: `P` (a count, or `{"n": …, "var": …}`), `Gr` (`[k, n]`),
//! `product` (two or more nodes), `proj_bundle` (`base`, `chern` = c_0..c_s),
//! `blowup` (`Y`, `Z`, either `pullback` matrices per degree or
//! `pullback_degree1` images, `chern_N` = c_1..c_r, optional `sign`),
//! `free` (inline algebra data) and `catalog` (a built-in name). Any node may
//! carry a `name`. Classes are label expressions; rationals are strings
//! `"p/q"` or JSON integers.

use lefschetz_core::catalog::{lookup, CatalogError};
use lefschetz_core::constructors::{
    blowup, projective_bundle, projective_space_with_var, BlowupInput, ConstructionError, ExceptionalSign,
};
use lefschetz_core::expr::ExprError;
use lefschetz_core::ring_map::RingMapError;
use lefschetz_core::scalar::parse_scalar;
use lefschetz_core::schubert::grassmannian;
use lefschetz_core::tensor::tensor_product;
use lefschetz_core::{Element, GradedAlgebra, Matrix, RingMap, Scalar};
use serde_json::Value;
use thiserror::Error;

use crate::store::{AlgebraData, StoreError};

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("type error at {path}: {message}")]
    Type { path: String, message: String },
    #[error("construction failed at {path}: {source}")]
    Construction { path: String, source: ConstructionError },
}

impl BuildError {
    fn ty(path: &str, message: impl Into<String>) -> Self {
        BuildError::Type {
            path: path.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Pullback {
    Matrices(Vec<Matrix>),
    DegreeOne(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Projective { n: usize, var: String },
    Grassmannian { k: usize, n: usize },
    Product(Vec<BuildExpr>),
    ProjBundle { base: Box<BuildExpr>, chern: Vec<String> },
    Blowup {
        ambient: Box<BuildExpr>,
        center: Box<BuildExpr>,
        pullback: Pullback,
        normal_chern: Vec<String>,
        sign: ExceptionalSign,
    },
    Free(AlgebraData),
    Catalog(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuildExpr {
    pub kind: NodeKind,
    pub name: Option<String>,
    /// JSON path of the node, for diagnostics.
    pub path: String,
}

pub fn parse_build_file(text: &str) -> Result<BuildExpr, BuildError> {
    let value: Value = serde_json::from_str(text).map_err(|e| BuildError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_node(&value, "$")
}

const KINDS: [&str; 7] = ["P", "Gr", "product", "proj_bundle", "blowup", "free", "catalog"];

fn parse_node(v: &Value, path: &str) -> Result<BuildExpr, BuildError> {
    let obj = v
        .as_object()
        .ok_or_else(|| BuildError::ty(path, "expected an object with one constructor key"))?;
    let name = match obj.get("name") {
        None => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(BuildError::ty(&format!("{path}.name"), "expected a string")),
    };
    let keys: Vec<&String> = obj.keys().filter(|k| *k != "name").collect();
    let [key] = keys.as_slice() else {
        return Err(BuildError::ty(
            path,
            format!("expected exactly one of {}, found {} keys", KINDS.join(", "), keys.len()),
        ));
    };
    let body = &obj[key.as_str()];
    let here = format!("{path}.{key}");
    let kind = match key.as_str() {
        "P" => match body {
            Value::Object(o) => {
                check_fields(o, &["n", "var"], &here)?;
                let n = count(field(o, "n", &here)?, &format!("{here}.n"))?;
                let var = match o.get("var") {
                    None => "h".to_string(),
                    Some(Value::String(s)) if !s.is_empty() => s.clone(),
                    Some(_) => return Err(BuildError::ty(&format!("{here}.var"), "expected a nonempty string")),
                };
                NodeKind::Projective { n, var }
            }
            _ => NodeKind::Projective {
                n: count(body, &here)?,
                var: "h".to_string(),
            },
        },
        "Gr" => {
            let items = array(body, &here)?;
            if items.len() != 2 {
                return Err(BuildError::ty(&here, "expected [k, n]"));
            }
            let k = count(&items[0], &format!("{here}[0]"))?;
            let n = count(&items[1], &format!("{here}[1]"))?;
            if k == 0 || k >= n {
                return Err(BuildError::ty(&here, format!("need 0 < k < n, got k={k}, n={n}")));
            }
            NodeKind::Grassmannian { k, n }
        }
        "product" => {
            let items = array(body, &here)?;
            if items.len() < 2 {
                return Err(BuildError::ty(&here, "expected at least two factors"));
            }
            let factors = items
                .iter()
                .enumerate()
                .map(|(i, f)| parse_node(f, &format!("{here}[{i}]")))
                .collect::<Result<_, _>>()?;
            NodeKind::Product(factors)
        }
        "proj_bundle" => {
            let o = object(body, &here)?;
            check_fields(o, &["base", "chern"], &here)?;
            let base = parse_node(field(o, "base", &here)?, &format!("{here}.base"))?;
            let chern = strings(field(o, "chern", &here)?, &format!("{here}.chern"))?;
            if chern.len() < 2 {
                return Err(BuildError::ty(&format!("{here}.chern"), "expected [c_0, c_1, …, c_s] with s >= 1"));
            }
            NodeKind::ProjBundle {
                base: Box::new(base),
                chern,
            }
        }
        "blowup" => {
            let o = object(body, &here)?;
            check_fields(o, &["Y", "Z", "pullback", "pullback_degree1", "chern_N", "sign"], &here)?;
            let ambient = parse_node(field(o, "Y", &here)?, &format!("{here}.Y"))?;
            let center = parse_node(field(o, "Z", &here)?, &format!("{here}.Z"))?;
            let pullback = match (o.get("pullback"), o.get("pullback_degree1")) {
                (Some(m), None) => Pullback::Matrices(matrices(m, &format!("{here}.pullback"))?),
                (None, Some(imgs)) => Pullback::DegreeOne(strings(imgs, &format!("{here}.pullback_degree1"))?),
                _ => return Err(BuildError::ty(&here, "give exactly one of `pullback` or `pullback_degree1`")),
            };
            let normal_chern = strings(field(o, "chern_N", &here)?, &format!("{here}.chern_N"))?;
            let sign = match o.get("sign") {
                None => ExceptionalSign::Standard,
                Some(Value::String(s)) if s == "standard" => ExceptionalSign::Standard,
                Some(Value::String(s)) if s == "flipped" => ExceptionalSign::Flipped,
                Some(_) => return Err(BuildError::ty(&format!("{here}.sign"), "expected \"standard\" or \"flipped\"")),
            };
            NodeKind::Blowup {
                ambient: Box::new(ambient),
                center: Box::new(center),
                pullback,
                normal_chern,
                sign,
            }
        }
        "free" => {
            let data: AlgebraData =
                serde_json::from_value(body.clone()).map_err(|e| BuildError::ty(&here, e.to_string()))?;
            NodeKind::Free(data)
        }
        "catalog" => match body {
            Value::String(s) => NodeKind::Catalog(s.clone()),
            _ => return Err(BuildError::ty(&here, "expected a catalog name")),
        },
        other => {
            return Err(BuildError::ty(
                path,
                format!("unknown node `{other}`, expected one of {}", KINDS.join(", ")),
            ))
        }
    };
    Ok(BuildExpr {
        kind,
        name,
        path: path.to_string(),
    })
}

fn object<'v>(v: &'v Value, path: &str) -> Result<&'v serde_json::Map<String, Value>, BuildError> {
    v.as_object().ok_or_else(|| BuildError::ty(path, "expected an object"))
}

fn array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, BuildError> {
    v.as_array().ok_or_else(|| BuildError::ty(path, "expected an array"))
}

fn field<'v>(o: &'v serde_json::Map<String, Value>, key: &str, path: &str) -> Result<&'v Value, BuildError> {
    o.get(key).ok_or_else(|| BuildError::ty(path, format!("missing field `{key}`")))
}

fn check_fields(o: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), BuildError> {
    match o.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(BuildError::ty(path, format!("unexpected field `{k}`"))),
        None => Ok(()),
    }
}

fn count(v: &Value, path: &str) -> Result<usize, BuildError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| BuildError::ty(path, format!("expected a non-negative integer, found {v}")))
}

fn strings(v: &Value, path: &str) -> Result<Vec<String>, BuildError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() => Ok(n.to_string()),
            _ => Err(BuildError::ty(&format!("{path}[{i}]"), "expected a class expression")),
        })
        .collect()
}

fn rational(v: &Value, path: &str) -> Result<Scalar, BuildError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(BuildError::ty(path, format!("expected an integer or a \"p/q\" string, found {v}"))),
    };
    parse_scalar(&text).map_err(|e| BuildError::ty(path, format!("bad rational `{text}`: {e}")))
}

// Per degree: a list of rows (target dimension) of source-dimension length.
fn matrices(v: &Value, path: &str) -> Result<Vec<Matrix>, BuildError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, m)| {
            let here = format!("{path}[{k}]");
            let rows = array(m, &here)?
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let row_path = format!("{here}[{r}]");
                    array(row, &row_path)?
                        .iter()
                        .enumerate()
                        .map(|(c, x)| rational(x, &format!("{row_path}[{c}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cols = rows.first().map_or(0, Vec::len);
            Matrix::from_rows(cols, &rows).map_err(|e| BuildError::ty(&here, e.to_string()))
        })
        .collect()
}

/// Evaluates a parsed tree into an algebra.
pub fn evaluate(expr: &BuildExpr) -> Result<GradedAlgebra, BuildError> {
    let path = expr.path.as_str();
    let built = match &expr.kind {
        NodeKind::Projective { n, var } => projective_space_with_var(*n, var),
        NodeKind::Grassmannian { k, n } => grassmannian(*k, *n).map_err(|e| BuildError::ty(path, e.to_string()))?,
        NodeKind::Product(factors) => {
            let mut acc = evaluate(&factors[0])?;
            for f in &factors[1..] {
                acc = tensor_product(&acc, &evaluate(f)?);
            }
            acc
        }
        NodeKind::ProjBundle { base, chern } => {
            let base = evaluate(base)?;
            let here = format!("{path}.proj_bundle.chern");
            let classes = chern
                .iter()
                .enumerate()
                .map(|(i, c)| class_in_degree(&base, c, i, &format!("{here}[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            projective_bundle(&base, &classes).map_err(|source| construction(path, source))?
        }
        NodeKind::Blowup {
            ambient,
            center,
            pullback,
            normal_chern,
            sign,
        } => {
            let y = evaluate(ambient)?;
            let z = evaluate(center)?;
            let here = format!("{path}.blowup");
            if z.top_degree() > y.top_degree() {
                return Err(BuildError::ty(
                    &here,
                    format!(
                        "centre has top degree {} above the ambient's {}",
                        z.top_degree(),
                        y.top_degree()
                    ),
                ));
            }
            let codim = y.top_degree() - z.top_degree();
            let map = match pullback {
                Pullback::Matrices(ms) => {
                    // rows = 0 carries no column count in JSON
                    let ms = ms
                        .iter()
                        .enumerate()
                        .map(|(k, m)| if m.rows() == 0 { Matrix::zeros(0, y.dim(k)) } else { m.clone() })
                        .collect();
                    RingMap::new(&y, &z, ms)
                }
                Pullback::DegreeOne(images) => {
                    let images = images
                        .iter()
                        .enumerate()
                        .map(|(i, s)| class_in_degree(&z, s, 1, &format!("{here}.pullback_degree1[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    RingMap::from_degree_one_images(&y, &z, &images)
                }
            }
            .map_err(|e: RingMapError| BuildError::ty(&format!("{here}.pullback"), e.to_string()))?;
            if normal_chern.len() != codim {
                return Err(BuildError::ty(
                    &format!("{here}.chern_N"),
                    format!("codimension is {codim}, so expected {codim} classes, found {}", normal_chern.len()),
                ));
            }
            let classes = normal_chern
                .iter()
                .enumerate()
                .map(|(i, c)| class_in_degree(&z, c, i + 1, &format!("{here}.chern_N[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let input = BlowupInput::new(map, codim, classes).with_sign(*sign);
            blowup(&input).map_err(|source| construction(path, source))?
        }
        NodeKind::Free(data) => data.to_algebra().map_err(|e: StoreError| BuildError::ty(path, e.to_string()))?,
        NodeKind::Catalog(name) => lookup(name)
            .map_err(|e: CatalogError| BuildError::ty(&format!("{path}.catalog"), e.to_string()))?
            .algebra,
    };
    Ok(match &expr.name {
        Some(n) => built.with_name(n.clone()),
        None => built,
    })
}

// A class expression that must sit in `degree`; a bare `0` stands for the
// zero class of any degree, including degrees above the top.
fn class_in_degree<'a>(a: &'a GradedAlgebra, text: &str, degree: usize, path: &str) -> Result<Element<'a>, BuildError> {
    if parse_scalar(text.trim()).is_ok_and(|s| s == Scalar::from_integer(0.into())) {
        return Ok(Element::zero(a, degree));
    }
    if degree > a.top_degree() {
        return Err(BuildError::ty(
            path,
            format!("degree {degree} lies above the top degree {}; only `0` is allowed", a.top_degree()),
        ));
    }
    let e = a
        .parse_element(text)
        .map_err(|e: ExprError| BuildError::ty(path, e.to_string()))?;
    if e.degree() != degree {
        return Err(BuildError::ty(
            path,
            format!("`{text}` has degree {}, expected {degree}", e.degree()),
        ));
    }
    Ok(e)
}

fn construction(path: &str, source: ConstructionError) -> BuildError {
    // shape problems in user data are type errors; the rest are reported as-is
    match source {
        ConstructionError::ChernCount { .. }
        | ConstructionError::ChernDegree { .. }
        | ConstructionError::ChernAlgebra(_)
        | ConstructionError::DimensionMismatch { .. }
        | ConstructionError::BundleRank
        | ConstructionError::CodimensionTooSmall(_) => BuildError::ty(path, source.to_string()),
        other => BuildError::Construction {
            path: path.to_string(),
            source: other,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = r#"{"blowup": {"Y": {"P": {"n": 5, "var": "c"}}, "Z": {"catalog": "CxP1-even"},
        "pullback_degree1": ["a + 3*b"], "chern_N": ["4*a + 18*b", "54*ab", "0"]}, "name": "example1"}"#;

    #[test]
    fn example1_tree_matches_catalog() {
        let expr = parse_build_file(EXAMPLE1).unwrap();
        assert!(matches!(expr.kind, NodeKind::Blowup { .. }));
        let built = evaluate(&expr).unwrap();
        assert_eq!(built, lookup("example1").unwrap().algebra);
    }

    #[test]
    fn explicit_pullback_matrices() {
        let text = r#"{"blowup": {"Y": {"P": 2}, "Z": {"P": 0},
            "pullback": [[["1"]], [], []], "chern_N": ["0", "0"]}}"#;
        let x = evaluate(&parse_build_file(text).unwrap()).unwrap();
        assert_eq!(x.dims(), vec![1, 2, 1]);
    }

    #[test]
    fn grassmannian_and_products() {
        let g = parse_build_file(r#"{"Gr": [2, 5]}"#).unwrap();
        assert_eq!(g.kind, NodeKind::Grassmannian { k: 2, n: 5 });
        let p = parse_build_file(r#"{"product": [{"P": 1}, {"P": {"n": 2, "var": "g"}}]}"#).unwrap();
        assert_eq!(evaluate(&p).unwrap().dims(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn bundle_node() {
        let text = r#"{"proj_bundle": {"base": {"Gr": [2, 5]}, "chern": ["1", "s[1]", "s[2]", "s[3]"]}}"#;
        let x = evaluate(&parse_build_file(text).unwrap()).unwrap();
        assert_eq!(x.dims(), vec![1, 2, 4, 5, 6, 5, 4, 2, 1]);
    }

    #[test]
    fn syntax_and_type_errors_differ() {
        assert!(matches!(parse_build_file(r#"{"P": -1}"#), Err(BuildError::Type { .. })));
        match parse_build_file("{\"P\":\n 3,,}") {
            Err(BuildError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_build_file(r#"{"Q": 1}"#), Err(BuildError::Type { .. })));
        assert!(matches!(parse_build_file(r#"{"Gr": [3, 2]}"#), Err(BuildError::Type { .. })));
        assert!(matches!(parse_build_file(r#"{"P": 1, "Gr": [1, 2]}"#), Err(BuildError::Type { .. })));
    }

    #[test]
    fn chern_degree_mismatch_is_a_type_error() {
        let text = EXAMPLE1.replace("\"54*ab\"", "\"a\"");
        match evaluate(&parse_build_file(&text).unwrap()) {
            Err(BuildError::Type { path, message }) => {
                assert!(path.ends_with("chern_N[1]"), "{path}");
                assert!(message.contains("degree 1, expected 2"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        let wrong = EXAMPLE1.replace("\"54*ab\"", "\"53*ab\"");
        assert!(evaluate(&parse_build_file(&wrong).unwrap()).is_ok());
    }

    #[test]
    fn self_intersection_failure_is_a_construction_error() {
        let text = r#"{"blowup": {"Y": {"P": 4}, "Z": {"P": 2},
            "pullback_degree1": ["h"], "chern_N": ["2*h", "2*h^2"]}}"#;
        assert!(matches!(
            evaluate(&parse_build_file(text).unwrap()),
            Err(BuildError::Construction { .. })
        ));
    }
}
