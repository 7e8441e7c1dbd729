#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use ratcrit::algebra::GroupAlgebraElement;
use ratcrit::criterion::Quadruple;
use ratcrit::freegroup::{reduce, ReducedWord};
use ratcrit::rational::RationalExpression;
use ratcrit::scalar::{gaussian, rational};
use ratcrit::{Element, ExactComplex};

pub fn word(rng: &mut StdRng, rank: usize, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=rank as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    reduce(&letters)
}

/// A reduced word of exactly the given length.
pub fn word_of_length(rng: &mut StdRng, rank: usize, len: usize) -> ReducedWord {
    let mut letters: Vec<i32> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = rng.gen_range(1..=rank as i32);
        let l = if rng.gen_bool(0.5) { g } else { -g };
        if letters.last() != Some(&-l) {
            letters.push(l);
        }
    }
    reduce(&letters)
}

pub fn positive_word(rng: &mut StdRng, rank: usize, min_len: usize, max_len: usize) -> ReducedWord {
    let len = rng.gen_range(min_len..=max_len);
    reduce(&(0..len).map(|_| rng.gen_range(1..=rank as i32)).collect::<Vec<_>>())
}

/// A small nonzero Gaussian rational, real with probability 3/4.
pub fn scalar(rng: &mut StdRng) -> ExactComplex {
    let part = |rng: &mut StdRng| {
        let n = loop {
            let n = rng.gen_range(-4i64..=4);
            if n != 0 {
                break n;
            }
        };
        rational(n, rng.gen_range(1i64..=4))
    };
    let re = part(rng);
    let im = if rng.gen_bool(0.25) { part(rng) } else { rational(0, 1) };
    gaussian(re, im)
}

pub fn element(rng: &mut StdRng, rank: usize, radius: usize, terms: usize) -> Element {
    let n = rng.gen_range(1..=terms);
    GroupAlgebraElement::from_terms((0..n).map(|_| (word(rng, rank, radius), scalar(rng))))
}

pub fn nonzero_element(rng: &mut StdRng, rank: usize, radius: usize, terms: usize) -> Element {
    loop {
        let e = element(rng, rank, radius, terms);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn positive_element(rng: &mut StdRng, rank: usize, max_len: usize, terms: usize) -> Element {
    let n = rng.gen_range(1..=terms);
    GroupAlgebraElement::from_terms((0..n).map(|_| (positive_word(rng, rank, 1, max_len), scalar(rng))))
}

/// `(s·m, m·t, s, t)`, valid for arbitrary `s, m, t`; with radius-1
/// inputs every entry has support radius at most 2.
pub fn factored_quadruple(rng: &mut StdRng, rank: usize) -> Quadruple<ExactComplex> {
    let s = nonzero_element(rng, rank, 1, 3);
    let t = nonzero_element(rng, rank, 1, 3);
    let m = element(rng, rank, 1, 3);
    Quadruple::new(&s * &m, &m * &t, s, t).expect("s·m·t = s·m·t")
}

/// `(α, α, 1, 1)`, the commutator with `α`.
pub fn commutator_quadruple(rng: &mut StdRng, rank: usize) -> Quadruple<ExactComplex> {
    let a = element(rng, rank, 2, 4);
    Quadruple::new(a.clone(), a, Element::one(), Element::one()).unwrap()
}

pub fn quadruple(rng: &mut StdRng, rank: usize) -> Quadruple<ExactComplex> {
    if rng.gen_bool(0.7) {
        factored_quadruple(rng, rank)
    } else {
        commutator_quadruple(rng, rank)
    }
}

type Ex = RationalExpression<ExactComplex>;

/// A random expression in the graded fragment: leaves are supported on
/// positive words and every inverse is of a nonzero constant plus a
/// positive part.
pub fn expandable_expression(rng: &mut StdRng, rank: usize, depth: usize) -> Ex {
    use RationalExpression as E;
    let leaf = |rng: &mut StdRng| {
        let mut a = positive_element(rng, rank, 2, 3);
        if rng.gen_bool(0.5) {
            a = &a + &Element::scalar(scalar(rng));
        }
        E::Leaf(a)
    };
    if depth == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut StdRng| Box::new(expandable_expression(rng, rank, depth - 1));
    match rng.gen_range(0..6) {
        0 => E::Add(sub(rng), sub(rng)),
        1 => E::Mul(sub(rng), sub(rng)),
        2 => E::Neg(sub(rng)),
        3 => E::ScalarMul(scalar(rng), sub(rng)),
        4 => {
            let c = E::Leaf(Element::scalar(scalar(rng)));
            let body = expandable_expression(rng, rank, depth - 1);
            // strip the constant so the inverse's constant term is c
            let positive = E::Add(Box::new(body.clone()), Box::new(E::Neg(Box::new(constant_of(&body)))));
            E::Inv(Box::new(E::Add(Box::new(c), Box::new(positive))))
        }
        _ => leaf(rng),
    }
}

/// The constant term of an expandable expression, as a leaf.
fn constant_of(e: &Ex) -> Ex {
    let c = ratcrit::rational::expand_exact(e, 0).expect("expandable").coefficients.constant_term();
    RationalExpression::Leaf(Element::scalar(c))
}
