//! Degree-preserving algebra homomorphisms between graded algebras.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{AlgebraError, BasisRef, GradedAlgebra};
use crate::element::Element;
use crate::linalg::{solve, LinalgError, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingMapError {
    #[error("expected {expected} degree matrices, found {found}")]
    DegreeCount { expected: usize, found: usize },
    #[error("matrix for degree {degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MatrixShape {
        degree: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("source algebra is not generated in degree one (degree {degree} spans {rank} of {dim})")]
    NotGeneratedInDegreeOne { degree: usize, rank: usize, dim: usize },
    #[error("element does not belong to the source algebra `{0}`")]
    ForeignElement(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingMapViolation {
    UnitNotPreserved,
    NotMultiplicative { left: BasisRef, right: BasisRef },
}

impl fmt::Display for RingMapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingMapViolation::UnitNotPreserved => write!(f, "unit is not mapped to the unit"),
            RingMapViolation::NotMultiplicative { left, right } => {
                write!(f, "f({left}*{right}) != f({left})*f({right})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RingMapReport {
    pub violations: Vec<RingMapViolation>,
}

impl RingMapReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A linear map given by one matrix per source degree `k = 0..=d_source`;
/// the degree-`k` matrix has `target.dim(k)` rows and `source.dim(k)`
/// columns (zero rows above the target's top degree).
#[derive(Debug, Clone)]
pub struct RingMap<'a> {
    source: &'a GradedAlgebra,
    target: &'a GradedAlgebra,
    matrices: Vec<Matrix>,
}

impl<'a> RingMap<'a> {
    pub fn new(
        source: &'a GradedAlgebra,
        target: &'a GradedAlgebra,
        matrices: Vec<Matrix>,
    ) -> Result<Self, RingMapError> {
        let expected = source.top_degree() + 1;
        if matrices.len() != expected {
            return Err(RingMapError::DegreeCount {
                expected,
                found: matrices.len(),
            });
        }
        for (k, m) in matrices.iter().enumerate() {
            let (er, ec) = (target.dim(k), source.dim(k));
            if m.rows() != er || m.cols() != ec {
                return Err(RingMapError::MatrixShape {
                    degree: k,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: er,
                    expected_cols: ec,
                });
            }
        }
        Ok(RingMap {
            source,
            target,
            matrices,
        })
    }

    pub fn identity(a: &'a GradedAlgebra) -> Self {
        let matrices = (0..=a.top_degree()).map(|k| Matrix::identity(a.dim(k))).collect();
        RingMap {
            source: a,
            target: a,
            matrices,
        }
    }

    /// Builds the unique multiplicative extension of prescribed images of
    /// the degree-one basis. The source must be generated in degree one;
    /// whether the prescription is actually a ring map is left to
    /// [`verify`](Self::verify).
    pub fn from_degree_one_images(
        source: &'a GradedAlgebra,
        target: &'a GradedAlgebra,
        images: &[Element<'a>],
    ) -> Result<Self, RingMapError> {
        if images.len() != source.dim(1) {
            return Err(RingMapError::DegreeCount {
                expected: source.dim(1),
                found: images.len(),
            });
        }
        for img in images {
            if img.degree() != 1 {
                return Err(AlgebraError::WrongDegree {
                    expected: 1,
                    found: img.degree(),
                }
                .into());
            }
            if !std::ptr::eq(img.algebra(), target) && img.algebra() != target {
                return Err(RingMapError::ForeignElement(target.name().to_string()));
            }
        }

        let mut matrices = vec![Matrix::identity(1)];
        let unit_image = target.unit();
        // (source coords, target image) pairs whose source parts form a basis
        let mut previous: Vec<(Element<'a>, Element<'a>)> = vec![(source.unit(), unit_image)];
        for k in 1..=source.top_degree() {
            let mut chosen: Vec<(Element<'a>, Element<'a>)> = Vec::new();
            let mut span: Vec<Vec<crate::scalar::Scalar>> = Vec::new();
            'outer: for (s, t) in &previous {
                for (g, img) in images.iter().enumerate() {
                    let gen = source.basis_element(1, g)?;
                    let s2 = s.multiply(&gen)?;
                    let mut trial = span.clone();
                    trial.push(s2.coords().to_vec());
                    if crate::linalg::row_space_rank(&trial)? > span.len() {
                        span = trial;
                        chosen.push((s2, t.multiply(img)?));
                        if span.len() == source.dim(k) {
                            break 'outer;
                        }
                    }
                }
            }
            if span.len() != source.dim(k) {
                return Err(RingMapError::NotGeneratedInDegreeOne {
                    degree: k,
                    rank: span.len(),
                    dim: source.dim(k),
                });
            }
            // M * S = T  with S, T holding the chosen pairs as columns
            let s_cols: Vec<_> = chosen.iter().map(|(s, _)| s.coords().to_vec()).collect();
            let s_t = Matrix::from_rows(source.dim(k), &s_cols)?;
            let target_dim = target.dim(k);
            let mut rows = Vec::with_capacity(target_dim);
            for r in 0..target_dim {
                let rhs: Vec<_> = chosen
                    .iter()
                    .map(|(_, t)| if t.is_above_top() { Zero::zero() } else { t.coords()[r].clone() })
                    .collect();
                let row = solve(&s_t, &rhs)?.expect("chosen source vectors are a basis");
                rows.push(row);
            }
            matrices.push(Matrix::from_rows(source.dim(k), &rows)?);
            previous = chosen;
        }
        Self::new(source, target, matrices)
    }

    pub fn source(&self) -> &'a GradedAlgebra {
        self.source
    }

    pub fn target(&self) -> &'a GradedAlgebra {
        self.target
    }

    pub fn matrix(&self, degree: usize) -> &Matrix {
        &self.matrices[degree]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// Image of a coordinate vector of degree `k`; `None` above the
    /// target's top degree.
    pub fn apply_coords(&self, k: usize, x: &[crate::scalar::Scalar]) -> Option<Vec<crate::scalar::Scalar>> {
        if k > self.target.top_degree() {
            return None;
        }
        Some(self.matrices[k].mul_vec(x).expect("coordinate length matches source"))
    }

    pub fn apply(&self, x: &Element<'_>) -> Result<Element<'a>, RingMapError> {
        if !std::ptr::eq(x.algebra(), self.source) && x.algebra() != self.source {
            return Err(RingMapError::ForeignElement(self.source.name().to_string()));
        }
        if x.is_above_top() {
            return Ok(Element::zero(self.target, x.degree()));
        }
        match self.apply_coords(x.degree(), x.coords()) {
            Some(coords) => Ok(Element::new(self.target, x.degree(), coords)?),
            None => Ok(Element::zero(self.target, x.degree())),
        }
    }

    /// Checks unit preservation and `f(b_i b_j) = f(b_i) f(b_j)` on every
    /// pair of basis elements whose image product can be nonzero.
    pub fn verify(&self) -> RingMapReport {
        let mut violations = Vec::new();
        let unit = self.apply(&self.source.unit()).expect("unit is in the source");
        if unit != self.target.unit() {
            violations.push(RingMapViolation::UnitNotPreserved);
        }
        let (ds, dt) = (self.source.top_degree(), self.target.top_degree());
        let images: Vec<Vec<Element<'a>>> = (0..=ds)
            .map(|k| {
                (0..self.source.dim(k))
                    .map(|i| self.apply(&self.source.basis_element(k, i).unwrap()).unwrap())
                    .collect()
            })
            .collect();
        for k1 in 0..=ds.min(dt) {
            for k2 in k1..=ds.min(dt) {
                if k1 + k2 > dt {
                    break;
                }
                for i in 0..self.source.dim(k1) {
                    let j_start = if k1 == k2 { i } else { 0 };
                    for j in j_start..self.source.dim(k2) {
                        let product_of_images = images[k1][i].multiply(&images[k2][j]).unwrap();
                        let image_of_product = match self.source.structure_constants(k1, i, k2, j) {
                            Some(c) => self.apply_coords(k1 + k2, c),
                            None => None,
                        };
                        let ok = match image_of_product {
                            Some(v) => v.as_slice() == product_of_images.coords(),
                            None => product_of_images.is_zero(),
                        };
                        if !ok {
                            violations.push(RingMapViolation::NotMultiplicative {
                                left: basis_ref(self.source, k1, i),
                                right: basis_ref(self.source, k2, j),
                            });
                        }
                    }
                }
            }
        }
        RingMapReport { violations }
    }
}

fn basis_ref(a: &GradedAlgebra, degree: usize, index: usize) -> BasisRef {
    BasisRef {
        degree,
        index,
        label: a.basis(degree)[index].clone(),
    }
}
