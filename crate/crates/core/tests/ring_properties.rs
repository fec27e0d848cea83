use lefschetz_core::catalog::lookup;
use lefschetz_core::tensor::tensor_product;
use lefschetz_core::{GradedAlgebra, Scalar};
use proptest::prelude::*;

const SMALL: [&str; 7] = ["P-0", "P-1", "P-2", "Gr-2-4", "P1xP1", "CxP1-even", "example1"];

fn algebra(i: usize) -> GradedAlgebra {
    lookup(SMALL[i]).unwrap().algebra
}

fn coords(len: usize, seed: &[i64]) -> Vec<Scalar> {
    (0..len).map(|i| Scalar::new(seed[i % seed.len()].into(), (1 + i as i64 % 3).into())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tensor_dimension_law(i in 0usize..SMALL.len(), j in 0usize..SMALL.len()) {
        let (a, b) = (algebra(i), algebra(j));
        let t = tensor_product(&a, &b);
        for k in 0..=t.top_degree() {
            let conv: usize = (0..=k).map(|m| a.dim(m) * b.dim(k - m)).sum();
            prop_assert_eq!(t.dim(k), conv);
        }
    }

    #[test]
    fn pairing_is_symmetric(i in 0usize..SMALL.len(), k in 0usize..4, seed in prop::collection::vec(-5i64..=5, 1..6)) {
        let a = algebra(i);
        let d = a.top_degree();
        prop_assume!(k <= d);
        let x = a.element(k, coords(a.dim(k), &seed)).unwrap();
        let rev: Vec<i64> = seed.iter().rev().map(|v| v + 1).collect();
        let y = a.element(d - k, coords(a.dim(d - k), &rev)).unwrap();
        let xy = x.multiply(&y).unwrap().integrate().unwrap();
        let yx = y.multiply(&x).unwrap().integrate().unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn product_is_associative_on_random_classes(seed in prop::collection::vec(-4i64..=4, 1..8)) {
        let a = algebra(6);
        let x = a.element(1, coords(a.dim(1), &seed)).unwrap();
        let y = a.element(2, coords(a.dim(2), &seed[1..].iter().chain([&1]).copied().collect::<Vec<_>>())).unwrap();
        let z = a.element(1, coords(a.dim(1), &[seed[0] - 1, 2])).unwrap();
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
