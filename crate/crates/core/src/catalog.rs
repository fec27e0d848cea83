//! Built-in algebras: projective spaces, Grassmannians, products of
//! projective spaces and the three counterexamples (two blowups and a
//! projective bundle over `Gr(2,5)`).
//!
//! Every entry carries a designated degree-one class used as `ω`.

use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::constructors::{
    blowup, chern_series_inverse, projective_bundle, projective_space_with_var, series_multiply,
    total_chern_of_line_bundles, BlowupInput, ConstructionError, ExceptionalSign,
};
use crate::element::Element;
use crate::ring_map::RingMap;
use crate::scalar::{one, zero};
use crate::schubert::{grassmannian, quotient_chern_classes};
use crate::tensor::tensor_product;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}` (run `catalog` for the list)")]
    Unknown(String),
    #[error("bad parameters in `{0}`")]
    Parameters(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// A catalog algebra with its designated `ω`, written in basis labels.
#[derive(Debug, Clone)]
pub struct CatalogAlgebra {
    pub algebra: GradedAlgebra,
    pub omega: String,
}

/// Entries listed by `catalog`; `P-n` and `Gr-k-n` are families.
pub const ENTRIES: &[(&str, &str)] = &[
    ("P-n", "projective space P^n, omega = h"),
    ("Gr-k-n", "Grassmannian of k-planes in C^n, omega = s[1]"),
    ("P1xP1", "product of projective spaces (any PaxPbx...), omega = sum of hyperplanes"),
    ("P1xP2", "product of projective spaces"),
    ("P3xP3", "product of projective spaces"),
    ("P1xP1xP1", "product of projective spaces"),
    ("CxP1-even", "Q[a,b]/(a^2,b^2), even cohomology of an elliptic curve times P^1"),
    ("example1", "P^5 blown up along C x P^1 embedded by Segre, omega = 10*c - e"),
    ("example2", "P^3 x P^3 blown up along (P^1)^3, omega = 10*y1 + 10*y2 - e"),
    ("example3", "P(Q) for the universal quotient bundle Q on Gr(2,5), omega = s[1] + z"),
];

/// Builds a catalog entry by name.
pub fn lookup(name: &str) -> Result<CatalogAlgebra, CatalogError> {
    let entry = |algebra: GradedAlgebra, omega: &str| CatalogAlgebra {
        algebra,
        omega: omega.to_string(),
    };
    match name {
        "CxP1-even" => Ok(entry(elliptic_times_line(), "a + 3*b")),
        "example1" => Ok(entry(example1(ExceptionalSign::Standard)?, "10*c - e")),
        "example2" => Ok(entry(example2(ExceptionalSign::Standard)?, "10*y1 + 10*y2 - e")),
        "example3" => Ok(entry(example3()?, "s[1] + z")),
        _ => {
            if let Some(rest) = name.strip_prefix("P-") {
                let n = parse_count(rest, name)?;
                return Ok(entry(projective_space_with_var(n, "h").with_name(name), "h"));
            }
            if let Some(rest) = name.strip_prefix("Gr-") {
                let (k, n) = rest.split_once('-').ok_or_else(|| CatalogError::Parameters(name.into()))?;
                let (k, n) = (parse_count(k, name)?, parse_count(n, name)?);
                let g = grassmannian(k, n).map_err(|_| CatalogError::Parameters(name.into()))?;
                return Ok(entry(g.with_name(name), "s[1]"));
            }
            if let Some(factors) = product_factors(name) {
                return Ok(product_of_projective_spaces(name, &factors));
            }
            Err(CatalogError::Unknown(name.to_string()))
        }
    }
}

fn parse_count(text: &str, name: &str) -> Result<usize, CatalogError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CatalogError::Parameters(name.to_string()));
    }
    text.parse().map_err(|_| CatalogError::Parameters(name.to_string()))
}

// "P1xP2" -> [1, 2]; needs at least two factors.
fn product_factors(name: &str) -> Option<Vec<usize>> {
    let factors: Option<Vec<usize>> = name
        .split('x')
        .map(|f| {
            let n = f.strip_prefix('P')?;
            (!n.is_empty() && n.bytes().all(|b| b.is_ascii_digit())).then(|| n.parse().ok())?
        })
        .collect();
    factors.filter(|f| f.len() >= 2)
}

fn product_of_projective_spaces(name: &str, factors: &[usize]) -> CatalogAlgebra {
    let vars: Vec<String> = (1..=factors.len()).map(|i| format!("h{i}")).collect();
    let algebra = product_with_vars(factors, &vars).with_name(name);
    let omega = vars
        .iter()
        .zip(factors)
        .filter(|(_, &n)| n > 0)
        .map(|(v, _)| v.as_str())
        .collect::<Vec<_>>()
        .join(" + ");
    CatalogAlgebra { algebra, omega }
}

fn product_with_vars(factors: &[usize], vars: &[String]) -> GradedAlgebra {
    let mut acc = projective_space_with_var(factors[0], &vars[0]);
    for (n, v) in factors.iter().zip(vars).skip(1) {
        acc = tensor_product(&acc, &projective_space_with_var(*n, v));
    }
    acc
}

/// `ℚ[a,b]/(a², b²)` with `∫ ab = 1`, basis `1 | a, b | ab`.
pub fn elliptic_times_line() -> GradedAlgebra {
    let basis = vec![
        vec!["1".to_string()],
        vec!["a".to_string(), "b".to_string()],
        vec!["ab".to_string()],
    ];
    let mut entries = vec![
        (0, 0, 0, 0, vec![one()]),
        (0, 0, 1, 0, vec![one(), zero()]),
        (0, 0, 1, 1, vec![zero(), one()]),
        (1, 0, 0, 0, vec![one(), zero()]),
        (1, 1, 0, 0, vec![zero(), one()]),
        (0, 0, 2, 0, vec![one()]),
        (2, 0, 0, 0, vec![one()]),
    ];
    entries.extend([
        (1, 0, 1, 0, vec![zero()]),
        (1, 0, 1, 1, vec![one()]),
        (1, 1, 1, 0, vec![one()]),
        (1, 1, 1, 1, vec![zero()]),
    ]);
    GradedAlgebra::from_parts("CxP1-even", basis, vec![one()], entries).expect("fixed table is well-formed")
}

/// `P^5` (class `c`) blown up along the Segre image of `C × P^1`, with
/// `ι*c = a + 3b` and `c(N) = 1 + (4a + 18b) + 54ab`.
pub fn example1(sign: ExceptionalSign) -> Result<GradedAlgebra, ConstructionError> {
    let y = projective_space_with_var(5, "c");
    let z = elliptic_times_line();
    let image = z.parse_element("a + 3*b").expect("labels exist");
    let pullback = RingMap::from_degree_one_images(&y, &z, &[image])?;
    let chern = example1_normal_chern(&z);
    let input = BlowupInput::new(pullback, 3, chern).with_sign(sign);
    Ok(blowup(&input)?.with_name("example1"))
}

/// `[c_1(N), c_2(N), c_3(N)]` for the first example, obtained as
/// `ι*c(T_{P^5}) / c(T_Z)` with `ι*c(T_{P^5}) = (1 + a + 3b)^6` and
/// `c(T_Z) = 1 + 2a` (the tangent bundle of the elliptic curve is trivial).
pub fn example1_normal_chern(z: &GradedAlgebra) -> Vec<Element<'_>> {
    let restricted = z.parse_element("a + 3*b").expect("labels exist");
    let tangent_y = total_chern_of_line_bundles(z, &vec![restricted; 6]).expect("degree-one roots");
    let tangent_z = vec![z.unit(), z.parse_element("2*a").expect("labels exist")];
    normal_chern(z, &tangent_y, &tangent_z, 3)
}

fn normal_chern<'a>(
    z: &'a GradedAlgebra,
    tangent_y: &[Element<'a>],
    tangent_z: &[Element<'a>],
    codim: usize,
) -> Vec<Element<'a>> {
    let inverse = chern_series_inverse(z, tangent_z).expect("constant term is 1");
    let total = series_multiply(z, tangent_y, &inverse).expect("well-formed series");
    (1..=codim)
        .map(|i| total.get(i).cloned().unwrap_or_else(|| Element::zero(z, i)))
        .collect()
}

/// `P^3 × P^3` (classes `y1`, `y2`) blown up along `(P^1)^3` (classes
/// `z1, z2, z3`) with `ι*y1 = z1 + z2`, `ι*y2 = z2 + z3` and
/// `c(N) = (1+z1+z2)^4 (1+z2+z3)^4 / ((1+2z1)(1+2z2)(1+2z3))`.
pub fn example2(sign: ExceptionalSign) -> Result<GradedAlgebra, ConstructionError> {
    let y = product_with_vars(&[3, 3], &["y1".into(), "y2".into()]);
    let z = product_with_vars(&[1, 1, 1], &["z1".into(), "z2".into(), "z3".into()]);
    let images = [
        z.parse_element("z1 + z2").expect("labels exist"),
        z.parse_element("z2 + z3").expect("labels exist"),
    ];
    let pullback = RingMap::from_degree_one_images(&y, &z, &images)?;
    let chern = example2_normal_chern(&z);
    let input = BlowupInput::new(pullback, 3, chern).with_sign(sign);
    Ok(blowup(&input)?.with_name("example2"))
}

pub fn example2_normal_chern(z: &GradedAlgebra) -> Vec<Element<'_>> {
    let p = |s: &str| z.parse_element(s).expect("labels exist");
    let mut roots = vec![p("z1 + z2"); 4];
    roots.extend(vec![p("z2 + z3"); 4]);
    let tangent_y = total_chern_of_line_bundles(z, &roots).expect("degree-one roots");
    let tangent_z = total_chern_of_line_bundles(z, &[p("2*z1"), p("2*z2"), p("2*z3")]).expect("degree-one roots");
    normal_chern(z, &tangent_y, &tangent_z, 3)
}

/// Projectivization of the universal quotient bundle on `Gr(2,5)`:
/// `ζ^3 + σ1 ζ^2 + σ2 ζ + σ3 = 0`.
pub fn example3() -> Result<GradedAlgebra, ConstructionError> {
    let g = grassmannian(2, 5).expect("valid Grassmannian");
    let chern = quotient_chern_classes(&g, 2, 5).expect("valid Grassmannian");
    Ok(projective_bundle(&g, &chern)?.with_name("example3"))
}

/// Concrete names exercised by tests and the acceptance suite.
pub fn concrete_names() -> Vec<String> {
    let mut names: Vec<String> = (0..=6).map(|n| format!("P-{n}")).collect();
    names.extend(["Gr-2-4", "Gr-2-5", "Gr-3-6"].map(String::from));
    names.extend(
        ["P1xP1", "P1xP2", "P3xP3", "P1xP1xP1", "CxP1-even", "example1", "example2", "example3"].map(String::from),
    );
    names
}
