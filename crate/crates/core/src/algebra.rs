//! Finite graded-commutative ℚ-algebras given by structure constants.
//!
//! Only even cohomology is modelled, so the grading is by complex degree
//! `k` (cohomological degree `2k`) and multiplication is strictly
//! commutative. Degree `0` holds the unit, degree `d` is the top degree
//! carrying the integration functional, and every product landing above
//! `d` vanishes.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::element::Element;
use crate::linalg::{axpy, is_zero_vector, LinalgError, Matrix};
use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree 0 must have exactly one basis element (the unit), found {0}")]
    UnitDegree(usize),
    #[error("integration functional has length {found}, top degree has dimension {expected}")]
    IntegrationLength { expected: usize, found: usize },
    #[error("product ({k1},{i})*({k2},{j}) has length {found}, expected {expected}")]
    ProductShape {
        k1: usize,
        i: usize,
        k2: usize,
        j: usize,
        expected: usize,
        found: usize,
    },
    #[error("basis reference ({degree},{index}) is out of range")]
    IndexOutOfRange { degree: usize, index: usize },
    #[error("product ({k1},{i})*({k2},{j}) given twice")]
    DuplicateProduct { k1: usize, i: usize, k2: usize, j: usize },
    #[error("degree {degree} exceeds the top degree {top}")]
    AboveTop { degree: usize, top: usize },
    #[error("expected a class of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("coordinate vector has length {found}, degree {degree} has dimension {expected}")]
    CoordinateLength {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("operands belong to different algebras (`{0}` and `{1}`)")]
    MixedAlgebras(String, String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A basis element, identified by degree and position, with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisRef {
    pub degree: usize,
    pub index: usize,
    pub label: String,
}

impl fmt::Display for BasisRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnitLaw { element: BasisRef },
    Commutativity { left: BasisRef, right: BasisRef },
    Associativity { a: BasisRef, b: BasisRef, c: BasisRef },
    DegeneratePairing { degree: usize, rank: usize, rows: usize, cols: usize },
    ZeroIntegration,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnitLaw { element } => write!(f, "unit law fails on {element}"),
            Violation::Commutativity { left, right } => {
                write!(f, "{left}*{right} != {right}*{left}")
            }
            Violation::Associativity { a, b, c } => {
                write!(f, "({a}*{b})*{c} != {a}*({b}*{c})")
            }
            Violation::DegeneratePairing {
                degree,
                rank,
                rows,
                cols,
            } => write!(
                f,
                "pairing in degree {degree} is degenerate: rank {rank} on a {rows}x{cols} matrix"
            ),
            Violation::ZeroIntegration => write!(f, "integration functional is identically zero"),
        }
    }
}

/// Result of [`GradedAlgebra::verify`]; an empty violation list means pass.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Structure-constant entry `(k1, i, k2, j, coordinates in degree k1+k2)`.
pub type ProductEntry = (usize, usize, usize, usize, Vec<Scalar>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    name: String,
    basis: Vec<Vec<String>>,
    // products[k1][k2][i * dim(k2) + j], stored for k1 + k2 <= d
    products: Vec<Vec<Vec<Vec<Scalar>>>>,
    integration: Vec<Scalar>,
}

impl GradedAlgebra {
    /// Builds an algebra by evaluating `rule(k1, i, k2, j)` on every pair of
    /// basis elements whose degrees sum to at most the top degree.
    pub fn from_rule(
        name: impl Into<String>,
        basis: Vec<Vec<String>>,
        integration: Vec<Scalar>,
        mut rule: impl FnMut(usize, usize, usize, usize) -> Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        check_shape(&basis, &integration)?;
        let top = basis.len() - 1;
        let mut products = Vec::with_capacity(top + 1);
        for k1 in 0..=top {
            let mut row = Vec::with_capacity(top + 1 - k1);
            for k2 in 0..=top - k1 {
                let target = basis[k1 + k2].len();
                let mut table = Vec::with_capacity(basis[k1].len() * basis[k2].len());
                for i in 0..basis[k1].len() {
                    for j in 0..basis[k2].len() {
                        let v = rule(k1, i, k2, j);
                        if v.len() != target {
                            return Err(AlgebraError::ProductShape {
                                k1,
                                i,
                                k2,
                                j,
                                expected: target,
                                found: v.len(),
                            });
                        }
                        table.push(v);
                    }
                }
                row.push(table);
            }
            products.push(row);
        }
        Ok(GradedAlgebra {
            name: name.into(),
            basis,
            products,
            integration,
        })
    }

    /// Builds an algebra from explicit structure constants. Products not
    /// listed are zero. Only shapes are checked; ring axioms are left to
    /// [`verify`](Self::verify).
    pub fn from_parts(
        name: impl Into<String>,
        basis: Vec<Vec<String>>,
        integration: Vec<Scalar>,
        entries: impl IntoIterator<Item = ProductEntry>,
    ) -> Result<Self, AlgebraError> {
        check_shape(&basis, &integration)?;
        let top = basis.len() - 1;
        let mut products: Vec<Vec<Vec<Option<Vec<Scalar>>>>> = (0..=top)
            .map(|k1| {
                (0..=top - k1)
                    .map(|k2| vec![None; basis[k1].len() * basis[k2].len()])
                    .collect()
            })
            .collect();
        for (k1, i, k2, j, coords) in entries {
            if k1 + k2 > top {
                return Err(AlgebraError::AboveTop {
                    degree: k1 + k2,
                    top,
                });
            }
            if i >= basis[k1].len() {
                return Err(AlgebraError::IndexOutOfRange { degree: k1, index: i });
            }
            if j >= basis[k2].len() {
                return Err(AlgebraError::IndexOutOfRange { degree: k2, index: j });
            }
            let expected = basis[k1 + k2].len();
            if coords.len() != expected {
                return Err(AlgebraError::ProductShape {
                    k1,
                    i,
                    k2,
                    j,
                    expected,
                    found: coords.len(),
                });
            }
            let slot = &mut products[k1][k2][i * basis[k2].len() + j];
            if slot.is_some() {
                return Err(AlgebraError::DuplicateProduct { k1, i, k2, j });
            }
            *slot = Some(coords);
        }
        let products = products
            .into_iter()
            .enumerate()
            .map(|(k1, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(k2, table)| {
                        let zero = vec![Scalar::zero(); basis[k1 + k2].len()];
                        table.into_iter().map(|v| v.unwrap_or_else(|| zero.clone())).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(GradedAlgebra {
            name: name.into(),
            basis,
            products,
            integration,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Dimension of degree `k`; zero above the top degree.
    pub fn dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(Vec::len).sum()
    }

    /// Basis labels of degree `k` (empty above the top degree).
    pub fn basis(&self, k: usize) -> &[String] {
        self.basis.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn bases(&self) -> &[Vec<String>] {
        &self.basis
    }

    pub fn integration(&self) -> &[Scalar] {
        &self.integration
    }

    /// First basis element carrying `label`.
    pub fn find_label(&self, label: &str) -> Option<(usize, usize)> {
        self.basis.iter().enumerate().find_map(|(k, labels)| {
            labels.iter().position(|l| l == label).map(|i| (k, i))
        })
    }

    fn basis_ref(&self, degree: usize, index: usize) -> BasisRef {
        BasisRef {
            degree,
            index,
            label: self.basis[degree][index].clone(),
        }
    }

    /// Coordinates of `b_(k1,i) * b_(k2,j)`, or `None` when `k1 + k2` exceeds
    /// the top degree.
    pub fn structure_constants(&self, k1: usize, i: usize, k2: usize, j: usize) -> Option<&[Scalar]> {
        let table = self.products.get(k1)?.get(k2)?;
        Some(&table[i * self.dim(k2) + j])
    }

    /// Every nonzero structure-constant vector, in `(k1, i, k2, j)` order.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, usize, usize, &[Scalar])> + '_ {
        self.products.iter().enumerate().flat_map(move |(k1, row)| {
            row.iter().enumerate().flat_map(move |(k2, table)| {
                let width = self.dim(k2);
                table
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !is_zero_vector(v))
                    .map(move |(idx, v)| (k1, idx / width, k2, idx % width, v.as_slice()))
            })
        })
    }

    /// Multiplies coordinate vectors of degrees `k1` and `k2`. Returns
    /// `None` when the product lies above the top degree (and so vanishes).
    ///
    /// # Panics
    /// If a coordinate vector does not match its degree's dimension.
    pub fn mul_coords(&self, k1: usize, x: &[Scalar], k2: usize, y: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(x.len(), self.dim(k1), "coordinate length mismatch in degree {k1}");
        assert_eq!(y.len(), self.dim(k2), "coordinate length mismatch in degree {k2}");
        let table = self.products.get(k1)?.get(k2)?;
        let width = self.dim(k2);
        let mut out = vec![Scalar::zero(); self.dim(k1 + k2)];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), &table[i * width + j]);
            }
        }
        Some(out)
    }

    /// Applies the integration functional to top-degree coordinates.
    pub fn integrate_coords(&self, top: &[Scalar]) -> Scalar {
        crate::linalg::dot(&self.integration, top)
    }

    pub fn unit(&self) -> Element<'_> {
        Element::basis(self, 0, 0).expect("degree 0 always holds the unit")
    }

    pub fn element(&self, degree: usize, coords: Vec<Scalar>) -> Result<Element<'_>, AlgebraError> {
        Element::new(self, degree, coords)
    }

    pub fn basis_element(&self, degree: usize, index: usize) -> Result<Element<'_>, AlgebraError> {
        Element::basis(self, degree, index)
    }

    /// Matrix of `(b_i, c_j) -> ∫ b_i c_j` with `b_i` running over degree
    /// `k` and `c_j` over degree `d - k`.
    pub fn pairing_matrix(&self, k: usize) -> Result<Matrix, AlgebraError> {
        let top = self.top_degree();
        if k > top {
            return Err(AlgebraError::AboveTop { degree: k, top });
        }
        let (rows, cols) = (self.dim(k), self.dim(top - k));
        let table = &self.products[k][top - k];
        Ok(Matrix::from_fn(rows, cols, |i, j| {
            self.integrate_coords(&table[i * cols + j])
        }))
    }

    /// Checks the unit law, commutativity, associativity on every basis
    /// triple with degree sum at most `d`, a nonzero integration functional
    /// and full rank of the pairing in every degree.
    pub fn verify(&self) -> VerificationReport {
        let top = self.top_degree();
        let mut violations = Vec::new();

        for k in 0..=top {
            for i in 0..self.dim(k) {
                let unit_times = &self.products[0][k][i];
                if !is_basis_vector(unit_times, i) {
                    violations.push(Violation::UnitLaw {
                        element: self.basis_ref(k, i),
                    });
                }
            }
        }

        for k1 in 0..=top {
            for k2 in k1..=top - k1 {
                for i in 0..self.dim(k1) {
                    let j_start = if k1 == k2 { i + 1 } else { 0 };
                    for j in j_start..self.dim(k2) {
                        let ab = &self.products[k1][k2][i * self.dim(k2) + j];
                        let ba = &self.products[k2][k1][j * self.dim(k1) + i];
                        if ab != ba {
                            violations.push(Violation::Commutativity {
                                left: self.basis_ref(k1, i),
                                right: self.basis_ref(k2, j),
                            });
                        }
                    }
                }
            }
        }

        for k1 in 0..=top {
            for k2 in 0..=top - k1 {
                for k3 in 0..=top - k1 - k2 {
                    for i in 0..self.dim(k1) {
                        for j in 0..self.dim(k2) {
                            let ab = &self.products[k1][k2][i * self.dim(k2) + j];
                            for l in 0..self.dim(k3) {
                                let bc = &self.products[k2][k3][j * self.dim(k3) + l];
                                let left = self.mul_basis_right(k1 + k2, ab, k3, l);
                                let right = self.mul_basis_left(k1, i, k2 + k3, bc);
                                if left != right {
                                    violations.push(Violation::Associativity {
                                        a: self.basis_ref(k1, i),
                                        b: self.basis_ref(k2, j),
                                        c: self.basis_ref(k3, l),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        if self.dim(top) > 0 && is_zero_vector(&self.integration) {
            violations.push(Violation::ZeroIntegration);
        }

        for k in 0..=top {
            let pairing = self.pairing_matrix(k).expect("k is within range");
            let rank = pairing.rank();
            if pairing.rows() != pairing.cols() || rank != pairing.rows() {
                violations.push(Violation::DegeneratePairing {
                    degree: k,
                    rank,
                    rows: pairing.rows(),
                    cols: pairing.cols(),
                });
            }
        }

        VerificationReport { violations }
    }

    // x * b_(k2,l) for x in degree k1
    fn mul_basis_right(&self, k1: usize, x: &[Scalar], k2: usize, l: usize) -> Vec<Scalar> {
        let width = self.dim(k2);
        let mut out = vec![Scalar::zero(); self.dim(k1 + k2)];
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, &self.products[k1][k2][i * width + l]);
        }
        out
    }

    // b_(k1,i) * y for y in degree k2
    fn mul_basis_left(&self, k1: usize, i: usize, k2: usize, y: &[Scalar]) -> Vec<Scalar> {
        let width = self.dim(k2);
        let mut out = vec![Scalar::zero(); self.dim(k1 + k2)];
        for (j, yj) in y.iter().enumerate() {
            axpy(&mut out, yj, &self.products[k1][k2][i * width + j]);
        }
        out
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (top degree {})", self.name, self.top_degree())?;
        for (k, labels) in self.basis.iter().enumerate() {
            writeln!(f, "  H^{}: {}", 2 * k, labels.join(", "))?;
        }
        let integral: Vec<String> = self.integration.iter().map(format_scalar).collect();
        write!(f, "  integration: [{}]", integral.join(", "))
    }
}

fn is_basis_vector(v: &[Scalar], index: usize) -> bool {
    v.iter().enumerate().all(|(i, x)| {
        if i == index {
            num_traits::One::is_one(x)
        } else {
            x.is_zero()
        }
    })
}

fn check_shape(basis: &[Vec<String>], integration: &[Scalar]) -> Result<(), AlgebraError> {
    let unit = basis.first().map_or(0, Vec::len);
    if unit != 1 {
        return Err(AlgebraError::UnitDegree(unit));
    }
    let top = basis.last().map_or(0, Vec::len);
    if integration.len() != top {
        return Err(AlgebraError::IntegrationLength {
            expected: top,
            found: integration.len(),
        });
    }
    Ok(())
}
