//! Künneth products of graded algebras.

use num_traits::Zero;

use crate::algebra::GradedAlgebra;
use crate::scalar::Scalar;

/// Joins two basis labels into a product label, dropping unit factors.
pub fn join_labels(a: &str, b: &str) -> String {
    match (a, b) {
        ("1", _) => b.to_string(),
        (_, "1") => a.to_string(),
        _ => format!("{a}*{b}"),
    }
}

// Degree-k basis of a⊗b as (degree in a, index in a, index in b), ordered by
// decreasing degree in a and then lexicographically.
fn tensor_basis(a: &GradedAlgebra, b: &GradedAlgebra, k: usize) -> Vec<(usize, usize, usize)> {
    let (da, db) = (a.top_degree(), b.top_degree());
    let lo = k.saturating_sub(db);
    let hi = k.min(da);
    let mut out = Vec::new();
    for i in (lo..=hi).rev() {
        for p in 0..a.dim(i) {
            for q in 0..b.dim(k - i) {
                out.push((i, p, q));
            }
        }
    }
    out
}

/// The tensor product `a ⊗ b` with componentwise multiplication, top
/// degree `d_a + d_b` and integration `∫ p⊗q = ∫p · ∫q`.
pub fn tensor_product(a: &GradedAlgebra, b: &GradedAlgebra) -> GradedAlgebra {
    let top = a.top_degree() + b.top_degree();
    let layout: Vec<Vec<(usize, usize, usize)>> = (0..=top).map(|k| tensor_basis(a, b, k)).collect();
    let basis: Vec<Vec<String>> = layout
        .iter()
        .enumerate()
        .map(|(k, cells)| {
            cells
                .iter()
                .map(|&(i, p, q)| join_labels(&a.basis(i)[p], &b.basis(k - i)[q]))
                .collect()
        })
        .collect();
    let integration: Vec<Scalar> = layout[top]
        .iter()
        .map(|&(_, p, q)| &a.integration()[p] * &b.integration()[q])
        .collect();

    // position of (i, p, q) inside its degree's layout
    let position = |k: usize, i: usize, p: usize, q: usize| -> usize {
        let hi = k.min(a.top_degree());
        let offset: usize = (i + 1..=hi).map(|t| a.dim(t) * b.dim(k - t)).sum();
        offset + p * b.dim(k - i) + q
    };

    GradedAlgebra::from_rule(
        format!("{} x {}", a.name(), b.name()),
        basis,
        integration,
        |k1, x, k2, y| {
            let (i1, p1, q1) = layout[k1][x];
            let (i2, p2, q2) = layout[k2][y];
            let k = k1 + k2;
            let mut out = vec![Scalar::zero(); layout[k].len()];
            let (ia, ib) = (i1 + i2, (k1 - i1) + (k2 - i2));
            let (Some(pa), Some(pb)) = (
                a.structure_constants(i1, p1, i2, p2),
                b.structure_constants(k1 - i1, q1, k2 - i2, q2),
            ) else {
                return out;
            };
            for (p, cp) in pa.iter().enumerate() {
                if cp.is_zero() {
                    continue;
                }
                for (q, cq) in pb.iter().enumerate() {
                    if !cq.is_zero() {
                        out[position(k, ia, p, q)] += cp * cq;
                    }
                }
            }
            debug_assert_eq!(ia + ib, k);
            out
        },
    )
    .expect("tensor product of well-formed algebras is well-formed")
}
