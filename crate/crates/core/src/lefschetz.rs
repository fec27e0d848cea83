//! The Lefschetz subalgebra `L*` generated in degree one, and the three
//! predicates on it: hard Lefschetz for a chosen class `ω`, Poincaré duality
//! of the restricted pairing, and symmetry of the dimensions.
//!
//! All bases are kept in reduced row echelon form so that dimensions,
//! witnesses and reports are reproducible.

use std::fmt;

use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::element::Element;
use crate::linalg::{kernel, row_space_rank, Matrix};
use crate::scalar::{format_combination, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("generator {index} has degree {degree}, expected 1")]
    GeneratorDegree { index: usize, degree: usize },
    #[error("class has degree {0}, expected 1")]
    OmegaDegree(usize),
    #[error("class `{0}` does not lie in L^1")]
    OmegaOutsideL1(String),
    #[error("class belongs to a different algebra")]
    ForeignElement,
}

/// Per-degree bases and dimensions of `L*`.
#[derive(Debug, Clone)]
pub struct LefschetzData<'a> {
    ambient: &'a GradedAlgebra,
    generators: Vec<Vec<Scalar>>,
    // rows: echelon basis of L^k in ambient degree-k coordinates
    bases: Vec<Matrix>,
}

impl<'a> LefschetzData<'a> {
    pub fn ambient(&self) -> &'a GradedAlgebra {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<Scalar>] {
        &self.generators
    }

    pub fn top_degree(&self) -> usize {
        self.ambient.top_degree()
    }

    pub fn basis(&self, k: usize) -> &Matrix {
        &self.bases[k]
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases[k].rows()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Matrix::rows).collect()
    }

    pub fn basis_elements(&self, k: usize) -> Vec<Element<'a>> {
        self.bases[k]
            .row_vectors()
            .into_iter()
            .map(|v| self.ambient.element(k, v).expect("basis rows match the ambient degree"))
            .collect()
    }

    /// Whether a degree-`k` coordinate vector lies in `L^k`.
    pub fn contains(&self, k: usize, v: &[Scalar]) -> bool {
        let mut rows = self.bases[k].row_vectors();
        let before = rows.len();
        rows.push(v.to_vec());
        row_space_rank(&rows).expect("uniform lengths") == before
    }

    fn check_omega(&self, omega: &Element<'_>) -> Result<(), LefschetzError> {
        if !std::ptr::eq(omega.algebra(), self.ambient) && omega.algebra() != self.ambient {
            return Err(LefschetzError::ForeignElement);
        }
        if omega.degree() != 1 {
            return Err(LefschetzError::OmegaDegree(omega.degree()));
        }
        if !self.contains(1, omega.coords()) {
            return Err(LefschetzError::OmegaOutsideL1(omega.to_string()));
        }
        Ok(())
    }

    fn render(&self, k: usize, coords: &[Scalar]) -> String {
        format_combination(coords.iter().zip(self.ambient.basis(k).iter().map(String::as_str)))
    }
}

/// Computes `L^0 = ℚ·1`, `L^1 = span(generators)` and `L^{k+1} = L^1 · L^k`.
/// Without explicit generators the whole degree-one component is used.
pub fn lefschetz_subalgebra<'a>(
    a: &'a GradedAlgebra,
    generators: Option<&[Element<'_>]>,
) -> Result<LefschetzData<'a>, LefschetzError> {
    let top = a.top_degree();
    let generators: Vec<Vec<Scalar>> = match generators {
        Some(gens) => {
            for (index, g) in gens.iter().enumerate() {
                if !std::ptr::eq(g.algebra(), a) && g.algebra() != a {
                    return Err(LefschetzError::ForeignElement);
                }
                if g.degree() != 1 {
                    return Err(LefschetzError::GeneratorDegree {
                        index,
                        degree: g.degree(),
                    });
                }
            }
            gens.iter().map(|g| g.coords().to_vec()).collect()
        }
        None => (0..a.dim(1))
            .map(|i| a.basis_element(1, i).expect("in range").into_coords())
            .collect(),
    };

    let mut bases = vec![Matrix::identity(1)];
    if top >= 1 {
        bases.push(Matrix::from_rows(a.dim(1), &generators).expect("degree-one lengths").row_space_basis());
    }
    for k in 2..=top {
        let prev = bases[k - 1].row_vectors();
        let mut products = Vec::with_capacity(prev.len() * generators.len());
        for g in &generators {
            for x in &prev {
                products.push(a.mul_coords(1, g, k - 1, x).expect("k <= top"));
            }
        }
        bases.push(Matrix::from_rows(a.dim(k), &products).expect("uniform lengths").row_space_basis());
    }
    Ok(LefschetzData {
        ambient: a,
        generators,
        bases,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    Symmetry,
    PoincareDuality,
    HardLefschetz,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Symmetry => "symmetry",
            Predicate::PoincareDuality => "poincare-duality",
            Predicate::HardLefschetz => "hard-lefschetz",
        })
    }
}

/// Why a predicate fails in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `dim L^k` differs from `dim L^{d-k}`.
    DimensionMismatch { low: usize, high: usize },
    /// A nonzero class of `L^k` killed by the map or the pairing, rendered
    /// in ambient basis labels.
    Kernel { class: String, coords: Vec<Scalar> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DimensionMismatch { low, high } => write!(f, "{low} vs {high}"),
            Witness::Kernel { class, .. } => write!(f, "kernel contains {class}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeVerdict {
    pub k: usize,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl fmt::Display for DegreeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => write!(f, "k={}: pass", self.k),
            Some(w) => write!(f, "k={}: {}", self.k, w),
        }
    }
}

/// One verdict per degree `k ≤ d/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateVerdict {
    pub predicate: Predicate,
    pub degrees: Vec<DegreeVerdict>,
}

impl PredicateVerdict {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.passed)
    }

    pub fn first_failure(&self) -> Option<&DegreeVerdict> {
        self.degrees.iter().find(|d| !d.passed)
    }
}

fn verdict(k: usize, witness: Option<Witness>) -> DegreeVerdict {
    DegreeVerdict {
        k,
        passed: witness.is_none(),
        witness,
    }
}

/// Passes at `k` iff `dim L^k = dim L^{d−k}`.
pub fn check_symmetry(l: &LefschetzData<'_>) -> PredicateVerdict {
    let d = l.top_degree();
    let degrees = (0..=d / 2)
        .map(|k| {
            let (low, high) = (l.dim(k), l.dim(d - k));
            verdict(k, (low != high).then_some(Witness::DimensionMismatch { low, high }))
        })
        .collect();
    PredicateVerdict {
        predicate: Predicate::Symmetry,
        degrees,
    }
}

// Images of the L^k basis under multiplication by ω^power, as ambient
// coordinates of degree k + power.
fn omega_images(l: &LefschetzData<'_>, omega: &Element<'_>, k: usize, power: usize) -> Vec<Vec<Scalar>> {
    let a = l.ambient();
    let omega_power = omega.pow(power as u32);
    l.bases[k]
        .row_vectors()
        .into_iter()
        .map(|v| {
            if omega_power.is_above_top() {
                return Vec::new();
            }
            a.mul_coords(k, &v, power, omega_power.coords()).unwrap_or_default()
        })
        .collect()
}

// Combination Σ c_i b_i of the L^k basis rows.
fn combine(l: &LefschetzData<'_>, k: usize, coeffs: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::from_integer(0.into()); l.ambient().dim(k)];
    for (c, row) in coeffs.iter().zip(l.bases[k].row_vectors()) {
        crate::linalg::axpy(&mut out, c, &row);
    }
    out
}

fn kernel_witness(l: &LefschetzData<'_>, k: usize, images: &[Vec<Scalar>], target_dim: usize) -> Option<Witness> {
    let map = Matrix::from_columns(target_dim, images).expect("uniform lengths");
    let ker = kernel(&map);
    ker.first().map(|coeffs| {
        let coords = combine(l, k, coeffs);
        Witness::Kernel {
            class: l.render(k, &coords),
            coords,
        }
    })
}

/// For each `k ≤ d/2`, checks that `x ↦ ω^{d−2k}·x` maps `L^k` bijectively
/// onto `L^{d−k}`. `ω` must be a degree-one class in `L^1`.
pub fn check_hard_lefschetz(l: &LefschetzData<'_>, omega: &Element<'_>) -> Result<PredicateVerdict, LefschetzError> {
    l.check_omega(omega)?;
    let d = l.top_degree();
    let degrees = (0..=d / 2)
        .map(|k| {
            let images = omega_images(l, omega, k, d - 2 * k);
            let witness = kernel_witness(l, k, &images, l.ambient().dim(d - k)).or_else(|| {
                let (low, high) = (l.dim(k), l.dim(d - k));
                (low != high).then_some(Witness::DimensionMismatch { low, high })
            });
            verdict(k, witness)
        })
        .collect();
    Ok(PredicateVerdict {
        predicate: Predicate::HardLefschetz,
        degrees,
    })
}

/// For each `k ≤ d/2`, checks that the Gram matrix `∫ u_i v_j` between
/// bases of `L^k` and `L^{d−k}` is square and invertible.
pub fn check_poincare_duality(l: &LefschetzData<'_>) -> PredicateVerdict {
    let a = l.ambient();
    let d = l.top_degree();
    let degrees = (0..=d / 2)
        .map(|k| {
            let low = l.bases[k].row_vectors();
            let high = l.bases[d - k].row_vectors();
            let gram = Matrix::from_fn(low.len(), high.len(), |i, j| {
                let prod = a.mul_coords(k, &low[i], d - k, &high[j]).expect("degrees sum to d");
                a.integrate_coords(&prod)
            });
            // left kernel: classes of L^k pairing to zero with all of L^{d-k}
            let left = kernel(&gram.transpose());
            let witness = match left.first() {
                Some(coeffs) => {
                    let coords = combine(l, k, coeffs);
                    Some(Witness::Kernel {
                        class: l.render(k, &coords),
                        coords,
                    })
                }
                None if low.len() != high.len() => Some(Witness::DimensionMismatch {
                    low: low.len(),
                    high: high.len(),
                }),
                None => None,
            };
            verdict(k, witness)
        })
        .collect();
    PredicateVerdict {
        predicate: Predicate::PoincareDuality,
        degrees,
    }
}

/// Dimensions of the primitive pieces `PL^i = ker(ω^{d−2i+1}: L^i → L^{d−i+1})`
/// for `i ≤ d/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDims {
    pub dims: Vec<usize>,
    /// Set iff hard Lefschetz holds for `ω`; then `Σ_{i≤k} dim PL^i = dim L^k`.
    pub valid: bool,
}

pub fn primitive_dims(l: &LefschetzData<'_>, omega: &Element<'_>) -> Result<PrimitiveDims, LefschetzError> {
    let hl = check_hard_lefschetz(l, omega)?;
    let d = l.top_degree();
    let dims: Vec<usize> = (0..=d / 2)
        .map(|i| {
            let power = d - 2 * i + 1;
            if i + power > d {
                // ω^{d-2i+1} lands above the top degree: everything is primitive
                return l.dim(i);
            }
            let images = omega_images(l, omega, i, power);
            let map = Matrix::from_columns(l.ambient().dim(i + power), &images).expect("uniform lengths");
            kernel(&map).len()
        })
        .collect();
    let valid = hl.passed();
    if valid {
        let mut running = 0;
        for (k, pk) in dims.iter().enumerate() {
            running += pk;
            assert_eq!(running, l.dim(k), "Lefschetz decomposition must exhaust L^{k}");
        }
    }
    Ok(PrimitiveDims { dims, valid })
}
