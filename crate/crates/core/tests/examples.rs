//! Worked examples through the public API, one test per operation.

use ratcrit::criterion::{check_criterion, classify, family, hankel_rank_profile, FiniteStream, Quadruple, Verdict};
use ratcrit::fredholm::{apply_p, apply_p_inv, defect_matrix, defect_matrix_inv, f_defect, Label};
use ratcrit::freegroup::{
    cancellation_length, equivariance_failure_set, invert, multiply, pi, pi_inverse, reduce, Edge,
};
use ratcrit::rational::{expand_exact, expand_numeric, parse, quadruple_from_expression, ExpandError};
use ratcrit::scalar::{gaussian, gaussian_int, gaussian_ratio, lift, rational};
use ratcrit::{Complex64, EdgeOrStar, Element, GeneratorSet, ReducedWord, StarConvention};
use ratcrit::{EVector, GVector};

const X: i32 = 1;
const Y: i32 = 2;

fn w(l: &[i32]) -> ReducedWord {
    reduce(l)
}

fn el(l: &[i32]) -> Element {
    Element::word(w(l))
}

fn edge(base: &[i32], gen: u32) -> EdgeOrStar {
    EdgeOrStar::Edge(Edge::new(w(base), gen))
}

fn expr_element(text: &str) -> Element {
    ratcrit::rational::to_element(&parse(text, &GeneratorSet::standard(2)).unwrap()).unwrap()
}

#[test]
fn words() {
    assert!(w(&[]).is_identity());
    assert!(w(&[X, -X]).is_identity());
    assert_eq!(w(&[X, Y, -Y, X]), w(&[X, X]));
    assert_eq!(multiply(&w(&[X, Y]), &w(&[-Y, X])), w(&[X, X]));
    assert_eq!(invert(&w(&[X, Y])), w(&[-Y, -X]));
    assert_eq!(cancellation_length(&w(&[X]), &w(&[Y])), 0);
    assert_eq!(cancellation_length(&w(&[X, Y]), &w(&[-Y, -X])), 2);
    assert_eq!(cancellation_length(&w(&[X, Y]), &w(&[-Y, X])), 1);
    assert_eq!(equivariance_failure_set(&w(&[X, Y])), [w(&[]), w(&[-Y]), w(&[-Y, -X])].into_iter().collect());
}

#[test]
fn edge_bijection() {
    assert_eq!(pi(&w(&[])), EdgeOrStar::Star);
    assert_eq!(pi(&w(&[X])), edge(&[], 1));
    assert_eq!(pi(&w(&[-X])), edge(&[-X], 1));
    assert_eq!(pi_inverse(&edge(&[], 1)), w(&[X]));
    for g in GeneratorSet::standard(2).ball(5) {
        assert_eq!(pi_inverse(&pi(&g)), g);
    }
}

#[test]
fn algebra() {
    let one_plus_x = &Element::one() + &el(&[X]);
    let one_minus_x = &Element::one() - &el(&[X]);
    assert_eq!(&one_plus_x + &one_minus_x, Element::scalar(gaussian_int(2)));
    assert_eq!(&one_plus_x * &one_minus_x, &Element::one() - &el(&[X, X]));
    assert_eq!(&(&el(&[X]) + &el(&[Y])) * &el(&[-X]), &Element::one() + &el(&[Y, -X]));
    let ix = Element::monomial(gaussian(rational(0, 1), rational(1, 1)), w(&[X]));
    assert_eq!(ix.adjoint(), Element::monomial(gaussian(rational(0, 1), rational(-1, 1)), w(&[-X])));
    assert_eq!(expr_element("2 + 3*x + 5*y^-1").trace(), gaussian_int(2));
    assert_eq!(el(&[X, Y, -X, -Y]).trace(), gaussian_int(0));
    let v = GVector::basis(w(&[Y]));
    assert_eq!(one_plus_x.act_on_g(&v), &v + &GVector::basis(w(&[X, Y])));
    let star = EVector::basis(EdgeOrStar::Star);
    assert!(el(&[X]).act_on_e(&star, StarConvention::Zero).is_empty());
    assert!(Element::one().act_on_e(&star, StarConvention::Strict).is_empty());
    assert_eq!(el(&[X]).act_on_e(&EVector::basis(edge(&[], 2)), StarConvention::Zero), EVector::basis(edge(&[X], 2)));
}

#[test]
fn operator_p() {
    assert_eq!(apply_p(&GVector::basis(w(&[]))), EVector::basis(EdgeOrStar::Star));
    assert_eq!(apply_p(&GVector::basis(w(&[X]))), EVector::basis(edge(&[], 1)));
    assert_eq!(apply_p_inv(&EVector::basis(edge(&[], 1))), GVector::basis(w(&[X])));
}

#[test]
fn defect_matrices() {
    let gens = GeneratorSet::standard(2);
    let one = Element::one();
    let z = StarConvention::Zero;
    assert!(defect_matrix(&gens, &one, &one, &one, &one, z).unwrap().is_zero());
    assert!(defect_matrix_inv(&gens, &one, &one, &one, &one, z).unwrap().is_zero());

    let x = el(&[X]);
    let d = defect_matrix(&gens, &x, &x, &one, &one, z).unwrap();
    assert_eq!(d.cols, vec![Label::Word(w(&[])), Label::Word(w(&[-X]))]);
    let op = d.to_operator();
    let col = |g: &[i32]| op.columns()[&Label::Word(w(g))].clone();
    let e = |l: EdgeOrStar| ratcrit::algebra::SparseVec::basis(Label::Edge(l));
    assert_eq!(col(&[]), e(edge(&[], 1)));
    assert_eq!(col(&[-X]), &e(EdgeOrStar::Star) - &e(edge(&[], 1)));
    assert_eq!(d.rank(), 2);
    assert_eq!(defect_matrix_inv(&gens, &x, &x, &one, &one, z).unwrap().rank(), 2);
    assert_eq!(f_defect(&gens, &x, &x, &one, &one, z).unwrap().rank(), 4);
    let xy = el(&[X, Y]);
    assert_eq!(defect_matrix(&gens, &xy, &xy, &one, &one, z).unwrap().rank(), 3);
}

#[test]
fn quadruples() {
    let gens = GeneratorSet::standard(2);
    let one = Element::one();
    let s = expr_element("1 - 1/2*x");
    let r = check_criterion(
        &gens,
        &Quadruple::new(one.clone(), one.clone(), one.clone(), one.clone()).unwrap(),
        StarConvention::Zero,
    )
    .unwrap();
    assert_eq!((r.rank_p, r.rank_p_inv, r.rank_f), (0, 0, 0));
    let q = Quadruple::new(one.clone(), one.clone(), s.clone(), s.clone()).unwrap();
    assert_eq!(check_criterion(&gens, &q, StarConvention::Zero).unwrap().rank_p, 2);
    match Quadruple::new(el(&[X]), one.clone(), one.clone(), el(&[Y])) {
        Err(ratcrit::criterion::QuadrupleError::IdentityViolation(res)) => assert_eq!(res, &el(&[X, Y]) - &one),
        other => panic!("expected a violation, got {other:?}"),
    }
}

#[test]
fn hankel_oracle() {
    let impulse = [gaussian_int(1)].into_iter().chain(std::iter::repeat_n(gaussian_int(0), 10)).collect::<Vec<_>>();
    assert_eq!(hankel_rank_profile(&impulse, 6).unwrap(), vec![1; 6]);
    let geo: Vec<_> = (0..11).map(|n| gaussian_ratio(1, 1 << n)).collect();
    assert_eq!(hankel_rank_profile(&geo, 6).unwrap(), vec![1; 6]);
    let fact: Vec<_> = (0..11u32).map(|n| gaussian_ratio(1, (1..=n as i64).product())).collect();
    assert_eq!(hankel_rank_profile(&fact, 6).unwrap(), vec![1, 2, 3, 4, 5, 6]);
}

#[test]
fn classification() {
    let gens = GeneratorSet::standard(1);
    let z = StarConvention::Zero;
    let u = FiniteStream(expr_element("1 + 2*x - x*x*x").clone());
    let c = classify(&gens, &u, 8, 4, z).unwrap();
    let direct =
        check_criterion(&gens, &Quadruple::new(u.0.clone(), u.0.clone(), Element::one(), Element::one()).unwrap(), z)
            .unwrap();
    assert_eq!(c.verdict, Verdict::Stabilized { rank: direct.rank_p });
    assert_eq!(
        classify(&gens, &family("geometric:1/2", 1).unwrap(), 10, 4, z).unwrap().verdict,
        Verdict::Stabilized { rank: 2 }
    );
    assert!(!classify(&gens, &family("factorial", 1).unwrap(), 10, 4, z).unwrap().verdict.is_stabilized());
    let e = parse("(1 - 1/2*x)^-1", &gens).unwrap();
    let from_expr = expand_exact(&e, 16).unwrap().to_stream();
    assert_eq!(classify(&gens, &from_expr, 8, 4, z).unwrap().verdict, Verdict::Stabilized { rank: 2 });
}

#[test]
fn expansions() {
    let gens = GeneratorSet::standard(2);
    let geo = expand_exact(&parse("(1 - 1/2*x)^-1", &gens).unwrap(), 4).unwrap().coefficients;
    assert_eq!(geo, Element::from_terms((0..=4).map(|n| (ReducedWord::power(1, n), gaussian_ratio(1, 1 << n)))));
    let p = parse("1 + x", &gens).unwrap();
    assert_eq!(expand_exact(&p, 2).unwrap().coefficients, expr_element("1 + x"));

    let numeric = |text: &str, tol| {
        let e = parse(text, &gens).unwrap().map_scalars(&|c| lift::<Complex64>(c).unwrap());
        expand_numeric(&e, tol)
    };
    let t = numeric("(1 - 1/4*(x + x^-1))^-1", 1e-6).unwrap();
    assert!((t.coefficients.constant_term().re - 2.0 / 3f64.sqrt()).abs() < 1e-6);
    assert!(matches!(numeric("(1 - x)^-1", 1e-6), Err(ExpandError::DominanceFailure { ratio, .. }) if ratio == 1.0));
    let half = numeric("(2)^-1", 1e-6).unwrap();
    assert_eq!(half.coefficients, ratcrit::Element64::scalar(Complex64::new(0.5, 0.0)));
}

#[test]
fn laurent_quadruples() {
    let gens = GeneratorSet::standard(1);
    let q = |text: &str| quadruple_from_expression(&gens, &parse(text, &gens).unwrap()).unwrap().into_parts();
    let one = Element::one();
    let s = ratcrit::rational::to_element(&parse("1 - 1/2*x", &gens).unwrap()).unwrap();
    assert_eq!(q("(1 - 1/2*x)^-1"), [one.clone(), one.clone(), s.clone(), s]);
    assert_eq!(q("x^-1"), [one.clone(), one, el(&[X]), el(&[X])]);
    let two = Element::scalar(gaussian_int(2));
    let d = &Element::one() - &el(&[X]);
    assert_eq!(q("(1-x)^-1 + (1-x)^-1"), [two.clone(), two, d.clone(), d]);
}
