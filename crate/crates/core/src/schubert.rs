//! Partitions and Schubert calculus on Grassmannians.
//!
//! `H*(Gr(k,n))` has the Schubert basis `σ_λ`, `λ` ranging over partitions
//! inside the `k × (n−k)` box. Products are computed with
//! Littlewood–Richardson coefficients, dropping partitions that leave the box.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::GradedAlgebra;
use crate::element::Element;
use crate::scalar::{one, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("partition {0} does not fit in the {1} box")]
    NotInBox(Partition, BoxShape),
    #[error("invalid Grassmannian Gr({0},{1}): need 1 <= k < n")]
    InvalidGrassmannian(usize, usize),
    #[error("invalid box {0}x{1}: both sides must be positive")]
    InvalidBox(usize, usize),
    #[error("Pieri rule needs p >= 1")]
    ZeroPieri,
    #[error("malformed partition `{0}`")]
    Malformed(String),
}

/// A weakly decreasing sequence of positive parts. The empty partition
/// indexes the unit class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, SchubertError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(SchubertError::Malformed(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn row(p: usize) -> Self {
        if p == 0 {
            Self::empty()
        } else {
            Partition(vec![p])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Part `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.0[i] <= self.0[i])
    }

    pub fn fits_in(&self, shape: BoxShape) -> bool {
        self.len() <= shape.rows && self.part(0) <= shape.cols
    }

    /// The complementary partition in `shape`, rotated by 180 degrees.
    pub fn complement(&self, shape: BoxShape) -> Partition {
        let parts = (0..shape.rows).rev().map(|i| shape.cols - self.part(i)).collect();
        Partition::new(parts).expect("complement of a partition is a partition")
    }

    /// Basis label: `1` for the empty partition, otherwise `s[3,1]`.
    pub fn schubert_label(&self) -> String {
        if self.is_empty() {
            "1".to_string()
        } else {
            format!("s{self}")
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = SchubertError;

    /// Accepts `[3,1]`, `[]`, and with spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SchubertError::Malformed(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if parts.contains(&0) {
            return Err(bad());
        }
        Partition::new(parts).map_err(|_| bad())
    }
}

/// A `rows × cols` rectangle; `Gr(k,n)` uses `k × (n−k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxShape {
    pub rows: usize,
    pub cols: usize,
}

impl BoxShape {
    pub fn new(rows: usize, cols: usize) -> Result<Self, SchubertError> {
        if rows == 0 || cols == 0 {
            return Err(SchubertError::InvalidBox(rows, cols));
        }
        Ok(BoxShape { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows * self.cols
    }

    pub fn full(&self) -> Partition {
        Partition(vec![self.cols; self.rows])
    }
}

impl fmt::Display for BoxShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Partitions of `m` inside `shape`, in decreasing lexicographic order.
pub fn partitions_in_box(m: usize, shape: BoxShape) -> Vec<Partition> {
    fn go(remaining: usize, max_part: usize, rows_left: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            current.push(p);
            go(remaining - p, p, rows_left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(m, shape.cols, shape.rows, &mut Vec::new(), &mut out);
    out
}

/// Pieri rule: all `μ ⊆ shape` obtained from `λ` by adding a horizontal
/// strip of `p` boxes, in decreasing lexicographic order.
pub fn pieri(lambda: &Partition, p: usize, shape: BoxShape) -> Result<Vec<Partition>, SchubertError> {
    if !lambda.fits_in(shape) {
        return Err(SchubertError::NotInBox(lambda.clone(), shape));
    }
    if p == 0 {
        return Err(SchubertError::ZeroPieri);
    }
    // μ_1 ∈ [λ_1, cols], μ_i ∈ [λ_i, λ_{i-1}] for i >= 2
    fn go(
        row: usize,
        remaining: usize,
        lambda: &Partition,
        shape: BoxShape,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if row == shape.rows {
            if remaining == 0 {
                out.push(Partition::new(current.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let lo = lambda.part(row);
        let hi = if row == 0 { shape.cols } else { lambda.part(row - 1) };
        for mu in (lo..=hi).rev() {
            let added = mu - lo;
            if added > remaining {
                continue;
            }
            current.push(mu);
            go(row + 1, remaining - added, lambda, shape, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(0, p, lambda, shape, &mut Vec::new(), &mut out);
    Ok(out)
}

/// Littlewood–Richardson coefficient `c^ν_{λμ}`: the number of semistandard
/// fillings of `ν/λ` with content `μ` whose reverse row reading word is a
/// lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    // cells of ν/λ in reading order: rows top to bottom, right to left
    let cells: Vec<(usize, usize)> = (0..nu.len())
        .flat_map(|r| (lambda.part(r)..nu.part(r)).rev().map(move |c| (r, c)))
        .collect();
    let mut filling = vec![vec![0usize; nu.part(0)]; nu.len()];
    let mut counts = vec![0usize; mu.len() + 1];
    let mut total = 0u64;
    lr_fill(0, &cells, lambda, mu, &mut filling, &mut counts, &mut total);
    total
}

fn lr_fill(
    idx: usize,
    cells: &[(usize, usize)],
    lambda: &Partition,
    mu: &Partition,
    filling: &mut [Vec<usize>],
    counts: &mut [usize],
    total: &mut u64,
) {
    let Some(&(r, c)) = cells.get(idx) else {
        *total += 1;
        return;
    };
    // rows weakly increase left to right: value <= right neighbour in the skew row
    let row_cap = if c + 1 < filling[r].len() && filling[r][c + 1] != 0 {
        filling[r][c + 1]
    } else {
        mu.len()
    };
    // columns strictly increase downwards
    let col_floor = if r > 0 && c >= lambda.part(r - 1) { filling[r - 1][c] + 1 } else { 1 };
    for v in col_floor..=row_cap {
        if counts[v] >= mu.part(v - 1) {
            continue;
        }
        if v > 1 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        filling[r][c] = v;
        lr_fill(idx + 1, cells, lambda, mu, filling, counts, total);
        filling[r][c] = 0;
        counts[v] -= 1;
    }
}

/// `H*(Gr(k,n))` in the Schubert basis: degree `m` holds the partitions of
/// `m` in the `k × (n−k)` box and `∫` picks the coefficient of the full box.
pub fn grassmannian(k: usize, n: usize) -> Result<GradedAlgebra, SchubertError> {
    if k == 0 || k >= n {
        return Err(SchubertError::InvalidGrassmannian(k, n));
    }
    let shape = BoxShape::new(k, n - k)?;
    let top = shape.size();
    let parts: Vec<Vec<Partition>> = (0..=top).map(|m| partitions_in_box(m, shape)).collect();
    let basis = parts
        .iter()
        .map(|ps| ps.iter().map(Partition::schubert_label).collect())
        .collect();
    let integration = vec![one()];
    let alg = GradedAlgebra::from_rule(format!("Gr({k},{n})"), basis, integration, |k1, i, k2, j| {
        let (lambda, mu) = (&parts[k1][i], &parts[k2][j]);
        parts[k1 + k2]
            .iter()
            .map(|nu| Scalar::from_integer(lr_coefficient(lambda, mu, nu).into()))
            .collect()
    })
    .expect("Schubert structure constants have the right shape");
    Ok(alg)
}

/// Index of `λ` in the degree-`|λ|` Schubert basis of `Gr(k,n)`.
pub fn schubert_index(lambda: &Partition, k: usize, n: usize) -> Result<usize, SchubertError> {
    let shape = BoxShape::new(k, n.saturating_sub(k))?;
    partitions_in_box(lambda.size(), shape)
        .iter()
        .position(|p| p == lambda)
        .ok_or_else(|| SchubertError::NotInBox(lambda.clone(), shape))
}

/// Chern classes `[c_0, …, c_{n−k}]` of the universal quotient bundle on
/// `Gr(k,n)`: `c_i = σ_(i)`. `grassmannian` must be `grassmannian(k, n)`.
pub fn quotient_chern_classes<'a>(
    grassmannian: &'a GradedAlgebra,
    k: usize,
    n: usize,
) -> Result<Vec<Element<'a>>, SchubertError> {
    if k == 0 || k >= n {
        return Err(SchubertError::InvalidGrassmannian(k, n));
    }
    (0..=n - k)
        .map(|i| {
            let idx = schubert_index(&Partition::row(i), k, n)?;
            Ok(grassmannian.basis_element(i, idx).expect("special classes lie in the box"))
        })
        .collect()
}

/// Coordinates of `σ_λ` as a vector in its degree.
pub fn schubert_coords(lambda: &Partition, k: usize, n: usize) -> Result<Vec<Scalar>, SchubertError> {
    let shape = BoxShape::new(k, n.saturating_sub(k))?;
    let basis = partitions_in_box(lambda.size(), shape);
    let idx = basis
        .iter()
        .position(|p| p == lambda)
        .ok_or_else(|| SchubertError::NotInBox(lambda.clone(), shape))?;
    let mut v = vec![Scalar::zero(); basis.len()];
    v[idx] = one();
    Ok(v)
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn small_partition(rows: usize, cols: usize) -> impl Strategy<Value = Partition> {
        prop::collection::vec(0..=cols, rows).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn lr_is_symmetric(lambda in small_partition(3, 3), mu in small_partition(3, 3)) {
            let shape = BoxShape::new(6, 6).unwrap();
            for nu in partitions_in_box(lambda.size() + mu.size(), shape) {
                prop_assert_eq!(lr_coefficient(&lambda, &mu, &nu), lr_coefficient(&mu, &lambda, &nu));
            }
        }

        #[test]
        fn pieri_matches_lr(lambda in small_partition(3, 4), p in 1usize..=4) {
            let shape = BoxShape::new(3, 4).unwrap();
            let strips = pieri(&lambda, p, shape).unwrap();
            let mut from_lr = Vec::new();
            for nu in partitions_in_box(lambda.size() + p, shape) {
                let c = lr_coefficient(&lambda, &Partition::row(p), &nu);
                prop_assert!(c <= 1);
                if c == 1 {
                    from_lr.push(nu);
                }
            }
            prop_assert_eq!(strips, from_lr);
        }
    }
}
