//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::collections::BTreeMap;

use lefschetz_cli::run;
use lefschetz_core::catalog::{concrete_names, example1, example2, lookup};
use lefschetz_core::constructors::ExceptionalSign;
use lefschetz_core::lefschetz::lefschetz_subalgebra;
use lefschetz_core::linalg::row_space_rank;
use lefschetz_core::schubert::{grassmannian, partitions_in_box, pieri, BoxShape, Partition};
use lefschetz_core::tensor::tensor_product;
use lefschetz_core::{GradedAlgebra, Scalar};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("lefschetz").chain(args.iter().copied()), &mut out, &mut err);
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counts(text: &str) -> Vec<usize> {
    text.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

fn lef_dims(a: &GradedAlgebra) -> Vec<usize> {
    lefschetz_subalgebra(a, None).unwrap().dims()
}

// Rank of all degree-k monomials in the degree-one basis.
fn monomial_span_dims(a: &GradedAlgebra) -> Vec<usize> {
    let gens: Vec<Vec<Scalar>> = (0..a.dim(1)).map(|i| a.basis_element(1, i).unwrap().into_coords()).collect();
    let mut dims = vec![1];
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

fn criterion_1() -> Outcome {
    let (code, out) = cli(&["lef-dims", "example1"]);
    ensure(code == 0, || format!("exit {code}: {out}"))?;
    let l = counts(&out);
    ensure(l == [1, 2, 3, 4, 2, 1], || format!("L dims {l:?}"))?;
    let (_, out) = cli(&["dims", "example1"]);
    let h = counts(&out);
    ensure(h == [1, 2, 4, 4, 2, 1], || format!("ambient dims {h:?}"))?;
    let brute = monomial_span_dims(&lookup("example1").unwrap().algebra);
    ensure(brute == l, || format!("monomial span {brute:?}"))
}

fn criterion_2() -> Outcome {
    let (_, out) = cli(&["lef-dims", "example2"]);
    let l = counts(&out);
    ensure(l[2] == 6 && l[4] == 7, || format!("L dims {l:?}"))?;
    let (_, out) = cli(&["dims", "example2"]);
    let h = counts(&out);
    ensure(h[2] == 7 && h[4] == 7, || format!("ambient dims {h:?}"))
}

fn criterion_3() -> Outcome {
    let (_, out) = cli(&["lef-dims", "example3"]);
    let l = counts(&out);
    ensure(l[2] == 3 && l[6] == 4, || format!("L dims {l:?}"))?;
    let (_, out) = cli(&["dims", "example3"]);
    let h = counts(&out);
    ensure(h[2] == 4 && h[6] == 4, || format!("ambient dims {h:?}"))?;
    ensure(l[6] == h[6], || "L^6 is a proper subspace".into())
}

fn criterion_4() -> Outcome {
    let x = lookup("example3").unwrap().algebra;
    let p = |s: &str| x.parse_element(s).unwrap();
    let zeta4 = p("z").pow(4);
    ensure(zeta4 == p("s[3,1] + z*s[2,1] + z^2*s[1,1]"), || format!("z^4 = {zeta4}"))?;
    let lhs = p("s[1]").pow(2).multiply(&zeta4).unwrap();
    let rhs = p("s[3,3] + 2*z*s[3,2] + z^2*s[2,2] + z^2*s[3,1]");
    ensure(lhs == rhs, || format!("s[1]^2 z^4 = {lhs}"))?;
    let (_, out) = cli(&["mul", "example3", "z^2", "z^2"]);
    ensure(out.trim() == "s[3,1] + z*s[2,1] + z^2*s[1,1]", || format!("cli mul: {out}"))
}

fn criterion_5() -> Outcome {
    let x = lookup("example1").unwrap().algebra;
    let p = |s: &str| x.parse_element(s).unwrap();
    let e3 = p("e").pow(3);
    let expected = p("-6*c^3 - 54*e*ab + 4*e^2*a + 18*e^2*b");
    ensure(e3 == expected, || format!("e^3 = {e3}"))?;
    let span = [p("c^3"), p("c^2").multiply(&p("e")).unwrap(), p("c").multiply(&p("e^2")).unwrap()];
    let mut rows: Vec<Vec<Scalar>> = span.iter().map(|v| v.coords().to_vec()).collect();
    let base = row_space_rank(&rows).unwrap();
    rows.push(e3.coords().to_vec());
    let with = row_space_rank(&rows).unwrap();
    ensure(with == base + 1, || format!("e^3 lies in span (rank {base} -> {with})"))
}

fn criterion_6() -> Outcome {
    let mut problems = Vec::new();
    let failing = ["example1", "example2", "example3"];
    let passing = ["P-1", "P-2", "P-3", "P-4", "P-5", "P-6", "Gr-2-5", "Gr-2-4", "P3xP3", "P1xP2"];
    for (names, want) in [(&failing[..], 1), (&passing[..], 0)] {
        for name in names {
            for flag in ["--sym", "--pd", "--hl"] {
                let (code, out) = cli(&["check", name, flag]);
                if code != want {
                    problems.push(format!("{name} {flag}: exit {code}\n{out}"));
                }
            }
        }
    }
    let (_, out) = cli(&["check", "example1", "--sym"]);
    if !out.contains("k=2: 3 vs 4") {
        problems.push(format!("example1 witness: {out}"));
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn criterion_7() -> Outcome {
    for name in concrete_names() {
        let a = lookup(&name).unwrap().algebra;
        let l = lef_dims(&a);
        let d = a.top_degree();
        ensure(l[0] == 1 && l[d] == 1, || format!("{name}: {l:?}"))?;
        if d >= 1 {
            ensure(l[1] == l[d - 1], || format!("{name}: {l:?}"))?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let products: [(&str, &[&str]); 4] = [
        ("P1xP1", &["P-1", "P-1"]),
        ("P1xP2", &["P-1", "P-2"]),
        ("P3xP3", &["P-3", "P-3"]),
        ("P1xP1xP1", &["P-1", "P-1", "P-1"]),
    ];
    let convolve = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    };
    for (name, factors) in products {
        let got = lef_dims(&lookup(name).unwrap().algebra);
        let mut want = vec![1];
        for f in factors {
            want = convolve(&want, &lef_dims(&lookup(f).unwrap().algebra));
        }
        ensure(got == want, || format!("{name}: {got:?} vs {want:?}"))?;
    }
    // products involving the counterexamples, built by the tensor product
    for (a, b) in [("example1", "P-1"), ("CxP1-even", "example3"), ("Gr-2-4", "CxP1-even")] {
        let (fa, fb) = (lookup(a).unwrap().algebra, lookup(b).unwrap().algebra);
        let got = lef_dims(&tensor_product(&fa, &fb));
        let want = convolve(&lef_dims(&fa), &lef_dims(&fb));
        ensure(got == want, || format!("{a} x {b}: {got:?} vs {want:?}"))?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    for name in concrete_names() {
        let (code, out) = cli(&["verify", &name]);
        ensure(code == 0, || format!("{name}: {out}"))?;
        let dims = lookup(&name).unwrap().algebra.dims();
        let mut rev = dims.clone();
        rev.reverse();
        ensure(dims == rev, || format!("{name}: {dims:?} not palindromic"))?;
    }
    Ok(())
}

// σ_λ·σ_μ through Jacobi–Trudi and Pieri:
// σ_(μ1,μ2) = σ_μ1 σ_μ2 − σ_(μ1+1) σ_(μ2−1).
fn pieri_product(lambda: &Partition, mu: &Partition, shape: BoxShape) -> BTreeMap<Partition, i64> {
    fn times_special(terms: &BTreeMap<Partition, i64>, p: usize, shape: BoxShape) -> BTreeMap<Partition, i64> {
        if p == 0 {
            return terms.clone();
        }
        let mut out = BTreeMap::new();
        for (nu, c) in terms {
            for rho in pieri(nu, p, shape).unwrap() {
                *out.entry(rho).or_insert(0) += c;
            }
        }
        out
    }
    let start: BTreeMap<Partition, i64> = [(lambda.clone(), 1)].into();
    let (m1, m2) = (mu.part(0), mu.part(1));
    let mut total = times_special(&times_special(&start, m1, shape), m2, shape);
    if m2 > 0 {
        for (nu, c) in times_special(&times_special(&start, m1 + 1, shape), m2 - 1, shape) {
            *total.entry(nu).or_insert(0) -= c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

fn criterion_10() -> Outcome {
    let g = grassmannian(2, 5).unwrap();
    let shape = BoxShape::new(2, 3).unwrap();
    let all: Vec<Partition> = (0..=6).flat_map(|m| partitions_in_box(m, shape)).collect();
    let mut pairs = 0;
    for (li, lambda) in all.iter().enumerate() {
        for (mi, mu) in all.iter().enumerate() {
            pairs += 1;
            let oracle = pieri_product(lambda, mu, shape);
            let (kl, km) = (lambda.size(), mu.size());
            let il = partitions_in_box(kl, shape).iter().position(|p| p == lambda).unwrap();
            let im = partitions_in_box(km, shape).iter().position(|p| p == mu).unwrap();
            let product = g.basis_element(kl, il).unwrap().multiply(&g.basis_element(km, im).unwrap()).unwrap();
            let mut got = BTreeMap::new();
            if !product.is_above_top() {
                for (nu, c) in partitions_in_box(kl + km, shape).into_iter().zip(product.coords()) {
                    let c: i64 = c.to_integer().try_into().unwrap();
                    if c != 0 {
                        got.insert(nu, c);
                    }
                }
            }
            ensure(got == oracle, || format!("pair #{li},{mi} {lambda} * {mu}: {got:?} vs {oracle:?}"))?;
        }
    }
    ensure(pairs == 100, || format!("{pairs} pairs"))?;
    for name in concrete_names() {
        let a = lookup(&name).unwrap().algebra;
        ensure(lef_dims(&a) == monomial_span_dims(&a), || format!("{name}: generation vs monomials"))?;
    }
    for build in [example1, example2] {
        let (x, xf) = (build(ExceptionalSign::Standard).unwrap(), build(ExceptionalSign::Flipped).unwrap());
        ensure(lef_dims(&x) == lef_dims(&xf), || format!("{}: sign flip changes dims", x.name()))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("blowup of P^5: L dims 1 2 3 4 2 1, ambient 1 2 4 4 2 1", criterion_1),
        ("blowup of P^3 x P^3: dim L^2 = 6, dim L^4 = 7, ambient 7 and 7", criterion_2),
        ("bundle over Gr(2,5): dim L^2 = 3, dim L^6 = 4 fills degree 6", criterion_3),
        ("bundle identities for z^4 and s[1]^2 z^4", criterion_4),
        ("e^3 relation and e^3 outside span(c^3, c^2 e, c e^2)", criterion_5),
        ("predicate coherence across the catalog (exit codes)", criterion_6),
        ("dim L^0 = dim L^d = 1 and dim L^1 = dim L^(d-1)", criterion_7),
        ("Kunneth convolution of Lefschetz dims", criterion_8),
        ("ring axioms, pairing and palindromic dims", criterion_9),
        ("LR vs Pieri on Gr(2,5), generation vs monomials, sign flip", criterion_10),
    ];
    let mut failed = 0;
    for (i, (what, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {what}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {what}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
