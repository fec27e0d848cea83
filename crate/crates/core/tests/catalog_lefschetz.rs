use lefschetz_core::catalog::{concrete_names, example1, example2, lookup};
use lefschetz_core::constructors::ExceptionalSign;
use lefschetz_core::lefschetz::{
    check_hard_lefschetz, check_poincare_duality, check_symmetry, lefschetz_subalgebra, primitive_dims,
};
use lefschetz_core::linalg::row_space_rank;
use lefschetz_core::tensor::tensor_product;
use lefschetz_core::{GradedAlgebra, Scalar};
use proptest::prelude::*;

// Span of all degree-k monomials in the degree-one basis, by enumeration of
// multisets of generators.
fn monomial_span_dims(a: &GradedAlgebra) -> Vec<usize> {
    let n = a.dim(1);
    let gens: Vec<Vec<Scalar>> = (0..n).map(|i| a.basis_element(1, i).unwrap().into_coords()).collect();
    let mut dims = vec![1];
    // monomials of degree k as (last generator index, coords)
    let mut layer: Vec<(usize, Vec<Scalar>)> = vec![(0, a.unit().into_coords())];
    for k in 1..=a.top_degree() {
        let mut next = Vec::new();
        for (last, m) in &layer {
            for (g, gv) in gens.iter().enumerate().skip(*last) {
                next.push((g, a.mul_coords(k - 1, m, 1, gv).unwrap()));
            }
        }
        let rows: Vec<Vec<Scalar>> = next.iter().map(|(_, v)| v.clone()).collect();
        dims.push(if rows.is_empty() { 0 } else { row_space_rank(&rows).unwrap() });
        layer = next;
    }
    dims
}

fn lef_dims(a: &GradedAlgebra) -> Vec<usize> {
    lefschetz_subalgebra(a, None).unwrap().dims()
}

#[test]
fn counterexample_dimensions() {
    let x1 = lookup("example1").unwrap().algebra;
    assert_eq!(x1.dims(), vec![1, 2, 4, 4, 2, 1]);
    assert_eq!(lef_dims(&x1), vec![1, 2, 3, 4, 2, 1]);

    let x2 = lookup("example2").unwrap().algebra;
    let l2 = lef_dims(&x2);
    assert_eq!((l2[2], l2[4]), (6, 7));
    assert_eq!((x2.dim(2), x2.dim(4)), (7, 7));

    let x3 = lookup("example3").unwrap().algebra;
    let l3 = lef_dims(&x3);
    assert_eq!((l3[2], l3[6]), (3, 4));
    assert_eq!((x3.dim(2), x3.dim(6)), (4, 4));
}

#[test]
fn generation_matches_monomial_enumeration() {
    for name in concrete_names() {
        let a = lookup(&name).unwrap().algebra;
        assert_eq!(lef_dims(&a), monomial_span_dims(&a), "{name}");
    }
}

#[test]
fn extreme_degrees_are_symmetric() {
    for name in concrete_names() {
        let a = lookup(&name).unwrap().algebra;
        let l = lef_dims(&a);
        let d = a.top_degree();
        assert_eq!((l[0], l[d]), (1, 1), "{name}");
        if d >= 1 {
            assert_eq!(l[1], l[d - 1], "{name}");
        }
    }
}

#[test]
fn predicates_agree_on_catalog() {
    for name in concrete_names() {
        let entry = lookup(&name).unwrap();
        let a = &entry.algebra;
        if a.top_degree() == 0 {
            continue;
        }
        let l = lefschetz_subalgebra(a, None).unwrap();
        let omega = a.parse_element(&entry.omega).unwrap();
        let hl = check_hard_lefschetz(&l, &omega).unwrap().passed();
        let pd = check_poincare_duality(&l).passed();
        let sym = check_symmetry(&l).passed();
        assert!(hl == pd && pd == sym, "{name}: hl={hl} pd={pd} sym={sym}");
        let expect_fail = name.starts_with("example");
        assert_eq!(sym, !expect_fail, "{name}");
        let prim = primitive_dims(&l, &omega).unwrap();
        assert_eq!(prim.valid, hl);
    }
}

#[test]
fn counterexample_witnesses() {
    let x1 = lookup("example1").unwrap().algebra;
    let l = lefschetz_subalgebra(&x1, None).unwrap();
    assert_eq!(check_symmetry(&l).first_failure().unwrap().to_string(), "k=2: 3 vs 4");
    let omega = x1.parse_element("10*c - e").unwrap();
    assert_eq!(check_hard_lefschetz(&l, &omega).unwrap().first_failure().unwrap().k, 2);

    let x2 = lookup("example2").unwrap().algebra;
    let l = lefschetz_subalgebra(&x2, None).unwrap();
    let pd = check_poincare_duality(&l);
    assert_eq!(pd.first_failure().unwrap().k, 2);
}

#[test]
fn example3_top_lefschetz_piece_is_everything() {
    let x3 = lookup("example3").unwrap().algebra;
    let l = lefschetz_subalgebra(&x3, None).unwrap();
    assert_eq!(l.dim(6), x3.dim(6));
}

#[test]
fn kunneth_on_products() {
    let names = ["P-1", "P-2", "Gr-2-4", "CxP1-even", "example1"];
    for a in &names[..4] {
        for b in &names {
            let (fa, fb) = (lookup(a).unwrap().algebra, lookup(b).unwrap().algebra);
            let (la, lb) = (lef_dims(&fa), lef_dims(&fb));
            let prod = tensor_product(&fa, &fb);
            let lp = lef_dims(&prod);
            for (k, dim) in lp.iter().enumerate() {
                let conv: usize = (0..=k)
                    .filter(|&i| i < la.len() && k - i < lb.len())
                    .map(|i| la[i] * lb[k - i])
                    .sum();
                assert_eq!(*dim, conv, "{a} x {b}, k={k}");
            }
        }
    }
}

#[test]
fn sign_flip_preserves_lefschetz_dims() {
    for build in [example1, example2] {
        let (x, xf) = (build(ExceptionalSign::Standard).unwrap(), build(ExceptionalSign::Flipped).unwrap());
        assert_eq!(lef_dims(&x), lef_dims(&xf));
        assert_eq!(x.dims(), xf.dims());
    }
}

#[test]
fn catalog_algebras_verify() {
    for name in concrete_names() {
        let a = lookup(&name).unwrap().algebra;
        let report = a.verify();
        assert!(report.passed(), "{name}: {:?}", report.violations);
        let dims = a.dims();
        let mut rev = dims.clone();
        rev.reverse();
        assert_eq!(dims, rev, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Any invertible recombination of the degree-one generators spans the same L*.
    #[test]
    fn generator_recombination(entries in prop::collection::vec(-3i64..=3, 4), which in 0usize..3) {
        let name = ["P1xP1", "example1", "P1xP2"][which];
        let a = lookup(name).unwrap().algebra;
        let m = [[entries[0], entries[1]], [entries[2], entries[3]]];
        prop_assume!(m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0);
        let g = |i: usize| a.basis_element(1, i).unwrap();
        let gens: Vec<_> = (0..2)
            .map(|r| g(0).scale(&Scalar::from_integer(m[r][0].into())).add(&g(1).scale(&Scalar::from_integer(m[r][1].into()))).unwrap())
            .collect();
        let base = lefschetz_subalgebra(&a, None).unwrap();
        let mixed = lefschetz_subalgebra(&a, Some(&gens)).unwrap();
        for k in 0..=a.top_degree() {
            prop_assert_eq!(base.basis(k), mixed.basis(k));
        }
    }
}
