use std::collections::BTreeMap;

use proptest::prelude::*;
use skewcat::algebra::{
    center, corner_algebra, enveloping_rank_oracle, estonia_check, ideal_generated, intersect_with_components,
    is_ideal, is_nilpotent, is_simple_over_c, maximal_commutativity, radical,
};
use skewcat::builtins::{self, pair_morphism};
use skewcat::linalg::rational::from_int;
use skewcat::linalg::{kernel, Matrix};
use skewcat::verifier::{GenBounds, Generator};
use skewcat::{Algebra, Congruence, DynSys, Element, Rational, Subspace};

fn algebra(name: &str) -> Algebra {
    Algebra::new(builtins::by_name(name).unwrap())
}

fn corpus() -> Vec<Algebra> {
    let mut out: Vec<Algebra> = builtins::NAMES.iter().map(|n| algebra(n)).collect();
    let bounds = GenBounds {
        max_dim: 36,
        ..GenBounds::default()
    };
    for seed in 0..12 {
        out.push(Algebra::new(Generator::Groupoid.generate(seed, &bounds).unwrap().system));
        out.push(Algebra::new(Generator::Partial.generate(seed, &bounds).unwrap().system));
    }
    out
}

fn mor(a: &Algebra, name: &str) -> skewcat::MorId {
    a.system().category().morphism(name).unwrap()
}

// ---- matrix units -------------------------------------------------------

#[test]
fn pair_groupoids_are_matrix_algebras() {
    for n in 2..=6 {
        let a = Algebra::new(builtins::pair(n));
        assert_eq!(a.dim(), n * n);
        let idx = |i: usize, j: usize| a.index(mor(&a, &pair_morphism(n, i, j)), 0);
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let expected = (j == k).then(|| idx(i, l));
                        assert_eq!(a.product(idx(i, j), idx(k, l)), expected);
                    }
                }
            }
        }
        let v = is_simple_over_c(&a);
        assert!(v.simple);
        assert_eq!((v.radical_dim, v.center_dim), (0, 1));
    }
}

#[test]
fn pair2_products() {
    let a = algebra("pair2");
    let u = |s: &str| a.u(mor(&a, s));
    assert_eq!(a.multiply(&u("u12"), &u("u21")), u("u11"));
    assert!(a.multiply(&u("u12"), &u("u12")).is_zero());
}

fn to_matrix_units(a: &Algebra, n: usize, m: &[Vec<i64>]) -> Element {
    let mut e = Element::zero();
    for i in 1..=n {
        for j in 1..=n {
            e.add_term(a.index(mor(a, &pair_morphism(n, i, j)), 0), &from_int(m[i - 1][j - 1]));
        }
    }
    e
}

proptest! {
    #[test]
    fn pair3_multiplies_like_matrices(
        x in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3),
        y in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3),
    ) {
        let a = Algebra::new(builtins::pair(3));
        let xy: Vec<Vec<i64>> = (0..3)
            .map(|i| (0..3).map(|k| (0..3).map(|j| x[i][j] * y[j][k]).sum()).collect())
            .collect();
        prop_assert_eq!(
            a.multiply(&to_matrix_units(&a, 3, &x), &to_matrix_units(&a, 3, &y)),
            to_matrix_units(&a, 3, &xy)
        );
    }
}

// ---- the displayed product in the abs example ------------------------------

type Function = BTreeMap<i64, Rational>;

fn abs_fn(x: i64) -> i64 {
    x.abs()
}

fn sqr_fn(x: i64) -> i64 {
    x * x
}

fn sqrt_fn(y: i64) -> i64 {
    // on {0, 1} the square root is the identity
    y
}

fn after(f: &Function, g: fn(i64) -> i64, domain: &[i64]) -> Function {
    domain.iter().map(|&x| (x, f[&g(x)].clone())).collect()
}

fn times(f: &Function, g: &Function) -> Function {
    f.iter().map(|(x, v)| (*x, v * &g[x])).collect()
}

fn plus(fs: &[Function]) -> Function {
    let mut out = fs[0].clone();
    for f in &fs[1..] {
        for (x, v) in f {
            *out.get_mut(x).unwrap() += v;
        }
    }
    out
}

const X: [i64; 3] = [-1, 0, 1];
const Y: [i64; 2] = [0, 1];

/// `f u_n` with `f` a function on the space at the codomain of `n`.
fn term(a: &Algebra, n: &str, f: &Function) -> Element {
    let sys = a.system();
    let m = mor(a, n);
    let e = sys.category().cod(m);
    let mut out = Element::zero();
    for (x, v) in f {
        let p = sys.point_index(e, &x.to_string()).unwrap();
        out.add_term(a.index(m, p), v);
    }
    out
}

fn function(domain: &[i64]) -> impl Strategy<Value = Function> {
    let domain = domain.to_vec();
    prop::collection::vec((-4i64..=4, 1i64..=3), domain.len()).prop_map(move |vs| {
        domain
            .iter()
            .zip(vs)
            .map(|(&x, (p, q))| (x, Rational::new(p.into(), q.into())))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abs_product_expansion(
        fx in function(&X), gx in function(&X), hx in function(&X), fy in function(&Y), gy in function(&Y),
        fx2 in function(&X), gx2 in function(&X), hx2 in function(&X), fy2 in function(&Y), gy2 in function(&Y),
    ) {
        let a = Algebra::new(builtins::abs());
        let b = |f: &Function, g: &Function, h: &Function, f2: &Function, g2: &Function| {
            [term(&a, "id_X", f), term(&a, "abs", g), term(&a, "sqr", h), term(&a, "id_Y", f2), term(&a, "sqrt", g2)]
                .iter()
                .fold(Element::zero(), |acc, t| acc.add(t))
        };
        let b1 = b(&fx, &gx, &hx, &fy, &gy);
        let b2 = b(&fx2, &gx2, &hx2, &fy2, &gy2);
        let expected = [
            term(&a, "id_X", &times(&fx, &fx2)),
            term(&a, "abs", &plus(&[
                times(&fx, &gx2),
                times(&gx, &after(&fx2, abs_fn, &X)),
                times(&gx, &after(&gx2, abs_fn, &X)),
                times(&hx, &after(&gy2, sqr_fn, &X)),
            ])),
            term(&a, "sqr", &plus(&[
                times(&fx, &hx2),
                times(&hx, &after(&fy2, sqr_fn, &X)),
                times(&gx, &after(&hx2, abs_fn, &X)),
            ])),
            term(&a, "id_Y", &plus(&[times(&fy, &fy2), times(&gy, &after(&hx2, sqrt_fn, &Y))])),
            term(&a, "sqrt", &plus(&[
                times(&fy, &gy2),
                times(&gy, &after(&fx2, sqrt_fn, &Y)),
                times(&gy, &after(&gx2, sqrt_fn, &Y)),
            ])),
        ]
        .iter()
        .fold(Element::zero(), |acc, t| acc.add(t));
        prop_assert_eq!(a.multiply(&b1, &b2), expected);
    }
}

// ---- structure against direct recomputation ------------------------------

fn trace_of_left_multiplication(a: &Algebra, k: usize) -> i64 {
    (0..a.dim()).filter(|&l| a.product(k, l) == Some(l)).count() as i64
}

/// Kernel of the Gram matrix of `(x, y) ↦ tr(L_{xy})`.
fn radical_by_trace_form(a: &Algebra) -> Subspace {
    let n = a.dim();
    let traces: Vec<i64> = (0..n).map(|k| trace_of_left_multiplication(a, k)).collect();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| a.product(i, j).map_or(0, |k| traces[k])).collect())
        .collect();
    kernel(&Matrix::from_i64(n, &rows).unwrap())
}

/// `{z : z b_j = b_j z for all j}` as one dense linear system.
#[allow(clippy::needless_range_loop)]
fn center_by_commutators(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        let mut block = vec![vec![0i64; n]; n];
        for i in 0..n {
            if let Some(k) = a.product(i, j) {
                block[k][i] += 1;
            }
            if let Some(k) = a.product(j, i) {
                block[k][i] -= 1;
            }
        }
        rows.extend(block.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    kernel(&Matrix::from_i64(n, &rows).unwrap())
}

fn enveloping_rank_dense(a: &Algebra) -> usize {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut op = vec![0i64; n * n];
            for x in 0..n {
                if let Some(y) = a.product(i, x).and_then(|t| a.product(t, j)) {
                    op[x * n + y] = 1;
                }
            }
            rows.push(op);
        }
    }
    skewcat::linalg::rref(&Matrix::from_i64(n * n, &rows).unwrap()).1
}

#[test]
fn radical_and_center_match_recomputation() {
    for a in corpus() {
        let r = radical(&a);
        assert_eq!(r, radical_by_trace_form(&a));
        assert!(is_ideal(&a, &r));
        assert!(is_nilpotent(&a, &r));
        assert_eq!(center(&a), center_by_commutators(&a));
        let v = is_simple_over_c(&a);
        assert_eq!(v.simple, r.is_zero() && center(&a).dim() == 1);
    }
}

#[test]
fn enveloping_rank_matches_dense_elimination() {
    for a in corpus().into_iter().filter(|a| a.dim() <= 16) {
        let fast = enveloping_rank_oracle(&a).unwrap();
        let dense = enveloping_rank_dense(&a);
        assert_eq!(fast.full, dense == a.dim() * a.dim());
        if !fast.full {
            assert_eq!(fast.rank, dense);
        }
        assert_eq!(fast.full, is_simple_over_c(&a).simple);
    }
}

#[test]
fn oracle_examples() {
    let r = enveloping_rank_oracle(&algebra("pair2")).unwrap();
    assert!(r.full);
    assert_eq!(r.rank, 16);
    let r = enveloping_rank_oracle(&algebra("triv2")).unwrap();
    assert_eq!((r.full, r.rank), (false, 2));
    assert!(!enveloping_rank_oracle(&algebra("abs")).unwrap().full);
    assert!(enveloping_rank_oracle(&algebra("pair6")).unwrap().full);
    assert!(enveloping_rank_oracle(&Algebra::new(builtins::pair(7))).is_err());
}

#[test]
fn simplicity_examples() {
    assert!(is_simple_over_c(&algebra("pair3")).simple);
    assert!(!is_simple_over_c(&algebra("abs")).simple);
    let swap = is_simple_over_c(&algebra("swap"));
    assert!(swap.simple);
    assert_eq!((swap.radical_dim, swap.center_dim), (0, 1));
    let triv2 = is_simple_over_c(&algebra("triv2"));
    assert_eq!((triv2.radical_dim, triv2.center_dim), (0, 2));
    let arrow = algebra("arrow");
    assert_eq!(radical(&arrow), Subspace::coordinate(arrow.dim(), a_range(&arrow, "a")));
}

fn a_range(a: &Algebra, name: &str) -> Vec<usize> {
    a.component(mor(a, name)).collect()
}

#[test]
fn commutants_and_maximal_commutativity() {
    for a in corpus() {
        let full = Subspace::full(a.dim());
        assert_eq!(skewcat::algebra::commutant(&a, &full), center(&a));
        if a.system().category().is_groupoid() {
            assert_eq!(maximal_commutativity(&a).maximal, a.system().is_topologically_free());
        }
    }
    assert!(maximal_commutativity(&algebra("swap")).maximal);
    let t = maximal_commutativity(&algebra("triv2"));
    assert!(!t.maximal);
    assert!(t.witness.is_some());
}

#[test]
fn corner_examples() {
    let pair3 = algebra("pair3");
    for e in pair3.system().category().object_ids() {
        assert_eq!(corner_algebra(&pair3, e).unwrap().algebra.dim(), 1);
    }
    let abs = algebra("abs");
    let x = abs.system().category().object("X").unwrap();
    let c = corner_algebra(&abs, x).unwrap();
    assert_eq!(c.algebra.dim(), 6);
    let mut expected = a_range(&abs, "id_X");
    expected.extend(a_range(&abs, "abs"));
    expected.sort_unstable();
    let mut got = c.embedding.clone();
    got.sort_unstable();
    assert_eq!(got, expected);
    let swap = algebra("swap");
    let o = swap.system().category().object("o").unwrap();
    assert_eq!(corner_algebra(&swap, o).unwrap().algebra.dim(), 4);
}

#[test]
fn corner_embedding_is_multiplicative() {
    for a in corpus() {
        for e in a.system().category().object_ids() {
            let c = corner_algebra(&a, e).unwrap();
            for i in 0..c.algebra.dim() {
                for j in 0..c.algebra.dim() {
                    let inside = c.algebra.product(i, j).map(|k| c.embedding[k]);
                    assert_eq!(inside, a.product(c.embedding[i], c.embedding[j]));
                }
            }
        }
    }
}

#[test]
fn simple_algebras_have_field_corners() {
    for a in corpus() {
        if is_simple_over_c(&a).simple {
            for e in a.system().category().object_ids() {
                assert_eq!(center(&corner_algebra(&a, e).unwrap().algebra).dim(), 1);
            }
        }
    }
}

// ---- ideals --------------------------------------------------------------

/// In a unital algebra the ideal generated by `z` is spanned by `b_i z b_j`.
fn ideal_by_sandwiches(a: &Algebra, z: &Element) -> Subspace {
    let n = a.dim();
    let vs: Vec<Vec<Rational>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| a.right_mul_basis(&a.left_mul_basis(i, z), j).to_dense(n))
        .collect();
    Subspace::span(n, &vs)
}

fn random_element(dim: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..dim, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ideal_closure_matches_sandwiches(which in 0usize..35, terms in random_element(1 << 16)) {
        let all = corpus();
        let a = &all[which % all.len()];
        let z = Element::from_terms(terms.into_iter().map(|(i, c)| (i % a.dim(), from_int(c))));
        let ideal = ideal_generated(a, std::slice::from_ref(&z));
        prop_assert_eq!(&ideal, &ideal_by_sandwiches(a, &z));
        prop_assert!(ideal.contains(&z.to_dense(a.dim())).unwrap());
        prop_assert!(is_ideal(a, &ideal));
        let again: Vec<Element> = ideal.basis().iter().map(|v| Element::from_dense(v)).collect();
        prop_assert_eq!(ideal_generated(a, &again), ideal.clone());
        let parts = intersect_with_components(a, &ideal);
        let full_everywhere = parts.iter().all(|(&e, s)| s.dim() == a.object_component(e).len());
        prop_assert_eq!(ideal.is_full(), full_everywhere);
    }

    #[test]
    fn ring_laws_on_random_elements(
        which in 0usize..35,
        x in random_element(1 << 16),
        y in random_element(1 << 16),
        z in random_element(1 << 16),
    ) {
        let all = corpus();
        let a = &all[which % all.len()];
        let el = |t: &Vec<(usize, i64)>| Element::from_terms(t.iter().map(|&(i, c)| (i % a.dim(), from_int(c))));
        let (x, y, z) = (el(&x), el(&y), el(&z));
        prop_assert_eq!(a.multiply(&a.multiply(&x, &y), &z), a.multiply(&x, &a.multiply(&y, &z)));
        prop_assert_eq!(a.multiply(&x, &y.add(&z)), a.multiply(&x, &y).add(&a.multiply(&x, &z)));
        prop_assert_eq!(a.multiply(&a.unit(), &x), x.clone());
        prop_assert_eq!(a.multiply(&x, &a.unit()), x);
    }
}

#[test]
fn unit_generates_everything() {
    for a in corpus() {
        let ideal = ideal_generated(&a, &[a.unit()]);
        assert!(ideal.is_full());
        for (e, s) in intersect_with_components(&a, &ideal) {
            assert_eq!(s.dim(), a.object_component(e).len());
        }
    }
}

#[test]
fn strong_grading_by_index_sets() {
    for a in &corpus() {
        let g = a.system().category();
        for m in g.morphism_ids() {
            for n in g.morphism_ids() {
                let mut products: Vec<usize> = a
                    .component(m)
                    .flat_map(|i| a.component(n).filter_map(move |j| a.product(i, j)))
                    .collect();
                products.sort_unstable();
                products.dedup();
                match g.compose(m, n) {
                    Some(mn) => assert_eq!(products, a.component(mn).collect::<Vec<_>>()),
                    None => assert!(products.is_empty()),
                }
            }
        }
    }
}

#[test]
fn ideal_intersection_examples() {
    let pair2 = algebra("pair2");
    let g = pair2.system().category();
    let ideal = ideal_generated(&pair2, &[pair2.u(g.identity(g.object("1").unwrap()))]);
    assert!(ideal.is_full());
    for (e, s) in intersect_with_components(&pair2, &ideal) {
        assert_eq!(s.dim(), pair2.object_component(e).len());
    }
}

// ---- estonia -------------------------------------------------------------

#[test]
fn estonia_examples() {
    let triv2 = algebra("triv2");
    let eq = Congruence::equality(triv2.system().category());
    let o = estonia_check(&triv2, &eq).unwrap();
    assert!(o.generators.is_empty() && o.meets_trivially());

    let k = triv2.system().sigma_kernel();
    let o = estonia_check(&triv2, &k).unwrap();
    let expected = triv2.u(mor(&triv2, "e")).sub(&triv2.u(mor(&triv2, "g")));
    assert_eq!(o.generators, vec![expected.clone()]);
    assert_eq!(o.ideal, Subspace::span(triv2.dim(), &[expected.to_dense(triv2.dim())]));
    assert!(o.meets_trivially());

    let prod = algebra("prod");
    let k = prod.system().sigma_kernel();
    assert!(k.related(mor(&prod, "(g,e)"), mor(&prod, "(g,h)")));
    assert!(k.related(mor(&prod, "(e,e)"), mor(&prod, "(e,h)")));
    let o = estonia_check(&prod, &k).unwrap();
    assert!(!o.ideal.is_full() && !o.ideal.is_zero());
    assert!(o.meets_trivially());
    let gen = prod.u(mor(&prod, "(e,e)")).sub(&prod.u(mor(&prod, "(e,h)")));
    assert!(o.ideal.contains(&gen.to_dense(prod.dim())).unwrap());
}

#[test]
fn estonia_holds_on_kernel_subcongruences() {
    let bounds = GenBounds::default();
    let mut nontrivial = 0;
    for seed in 0..60 {
        let sys: DynSys = Generator::Groupoid.generate(seed, &bounds).unwrap().system;
        let a = Algebra::new(sys);
        let g = a.system().category();
        let k = a.system().sigma_kernel();
        for m in g.morphism_ids() {
            for n in k.class_of(m) {
                if m < n {
                    let r = Congruence::generated_by(g, &[(m, n)]);
                    assert!(r.is_contained_in(&k));
                    let o = estonia_check(&a, &r).unwrap();
                    assert!(o.meets_trivially());
                    nontrivial += usize::from(!o.generators.is_empty());
                }
            }
        }
    }
    assert!(nontrivial > 10);
}

#[test]
fn triv2_is_a_quotient_of_a_polynomial_ring() {
    let a = algebra("triv2");
    let t = a.u(mor(&a, "g"));
    assert_eq!(a.multiply(&t, &t), a.unit());
    assert_eq!(center(&a).dim(), 2);
}
