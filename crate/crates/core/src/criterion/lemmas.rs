//! Exact checks of the algebraic identities between defect operators of
//! related quadruples. Operators are compared as sparse column maps, so a
//! check holds only when the identity is true entry by entry.

use thiserror::Error;

use super::quadruple::{Quadruple, QuadrupleError};
use crate::fredholm::{defect_matrix, defect_matrix_inv, SparseOperator};
use crate::freegroup::{GeneratorSet, GroupError, StarConvention};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("quadruples do not share compatible denominators")]
    DenominatorMismatch,
    #[error("a and b must be nonzero to swap numerators and denominators")]
    ZeroNumerator,
    #[error("defect support could not be certified")]
    Uncertified,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The `P` and `P⁻¹` defect operators of a quadruple.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectPair<S> {
    pub p: SparseOperator<S>,
    pub p_inv: SparseOperator<S>,
}

impl<S: Scalar> DefectPair<S> {
    pub fn of(gens: &GeneratorSet, q: &Quadruple<S>, convention: StarConvention) -> Result<Self, LemmaError> {
        let p = defect_matrix(gens, q.a(), q.b(), q.s(), q.t(), convention)?;
        let p_inv = defect_matrix_inv(gens, q.a(), q.b(), q.s(), q.t(), convention)?;
        if !(p.certified && p_inv.certified) {
            return Err(LemmaError::Uncertified);
        }
        Ok(DefectPair { p: p.to_operator(), p_inv: p_inv.to_operator() })
    }

    fn add(&self, other: &Self) -> Self {
        DefectPair { p: self.p.add(&other.p), p_inv: self.p_inv.add(&other.p_inv) }
    }

    fn sub(&self, other: &Self) -> Self {
        DefectPair { p: self.p.add(&other.p.neg()), p_inv: self.p_inv.add(&other.p_inv.neg()) }
    }

    fn neg(&self) -> Self {
        DefectPair { p: self.p.neg(), p_inv: self.p_inv.neg() }
    }
}

fn unwrap_valid<S: Scalar>(r: Result<Quadruple<S>, QuadrupleError<S>>) -> Quadruple<S> {
    r.expect("derived quadruple satisfies a·t = s·b by construction")
}

/// `(a₁+a₂, b₁+b₂, s, t)` for two quadruples with common `s` and `t`.
pub fn sum_quadruple<S: Scalar>(q1: &Quadruple<S>, q2: &Quadruple<S>) -> Result<Quadruple<S>, LemmaError> {
    if q1.s() != q2.s() || q1.t() != q2.t() {
        return Err(LemmaError::DenominatorMismatch);
    }
    Ok(unwrap_valid(Quadruple::new(q1.a() + q2.a(), q1.b() + q2.b(), q1.s().clone(), q1.t().clone())))
}

/// `(a₂, b₁, s₁, t₂)` for a chain with `s₂ = a₁` and `b₂ = t₁`.
pub fn chain_quadruple<S: Scalar>(q1: &Quadruple<S>, q2: &Quadruple<S>) -> Result<Quadruple<S>, LemmaError> {
    if q2.s() != q1.a() || q2.b() != q1.t() {
        return Err(LemmaError::DenominatorMismatch);
    }
    Quadruple::new(q2.a().clone(), q1.b().clone(), q1.s().clone(), q2.t().clone()).map_err(|e| match e {
        QuadrupleError::Group(g) => LemmaError::Group(g),
        _ => LemmaError::DenominatorMismatch,
    })
}

/// `(s, t, a, b)`.
pub fn swapped_quadruple<S: Scalar>(q: &Quadruple<S>) -> Result<Quadruple<S>, LemmaError> {
    if q.a().is_zero() || q.b().is_zero() {
        return Err(LemmaError::ZeroNumerator);
    }
    Ok(unwrap_valid(Quadruple::new(q.s().clone(), q.t().clone(), q.a().clone(), q.b().clone())))
}

/// `(b*, a*, t*, s*)`.
pub fn adjoint_quadruple<S: Scalar>(q: &Quadruple<S>) -> Quadruple<S> {
    unwrap_valid(Quadruple::new(q.b().adjoint(), q.a().adjoint(), q.t().adjoint(), q.s().adjoint()))
}

/// Defect of the sum equals the sum of the defects.
pub fn check_additivity<S: Scalar>(
    gens: &GeneratorSet,
    q1: &Quadruple<S>,
    q2: &Quadruple<S>,
    convention: StarConvention,
) -> Result<bool, LemmaError> {
    let sum = sum_quadruple(q1, q2)?;
    let lhs = DefectPair::of(gens, &sum, convention)?;
    let rhs = DefectPair::of(gens, q1, convention)?.add(&DefectPair::of(gens, q2, convention)?);
    Ok(lhs == rhs)
}

/// Defect of the chained quadruple equals the sum of the two defects.
pub fn check_chain<S: Scalar>(
    gens: &GeneratorSet,
    q1: &Quadruple<S>,
    q2: &Quadruple<S>,
    convention: StarConvention,
) -> Result<bool, LemmaError> {
    let prod = chain_quadruple(q1, q2)?;
    let lhs = DefectPair::of(gens, &prod, convention)?;
    let rhs = DefectPair::of(gens, q1, convention)?.add(&DefectPair::of(gens, q2, convention)?);
    Ok(lhs == rhs)
}

/// The same chain compared against the difference of the two defects,
/// which fails whenever the second defect is nonzero.
pub fn check_chain_difference<S: Scalar>(
    gens: &GeneratorSet,
    q1: &Quadruple<S>,
    q2: &Quadruple<S>,
    convention: StarConvention,
) -> Result<bool, LemmaError> {
    let prod = chain_quadruple(q1, q2)?;
    let lhs = DefectPair::of(gens, &prod, convention)?;
    let rhs = DefectPair::of(gens, q1, convention)?.sub(&DefectPair::of(gens, q2, convention)?);
    Ok(lhs == rhs)
}

/// Swapping numerators and denominators negates both defects.
pub fn check_swap<S: Scalar>(
    gens: &GeneratorSet,
    q: &Quadruple<S>,
    convention: StarConvention,
) -> Result<bool, LemmaError> {
    let swapped = swapped_quadruple(q)?;
    Ok(DefectPair::of(gens, &swapped, convention)? == DefectPair::of(gens, q, convention)?.neg())
}

/// The conjugate transpose of each defect is the negated opposite defect
/// of the adjoint quadruple.
pub fn check_adjoint<S: Scalar>(
    gens: &GeneratorSet,
    q: &Quadruple<S>,
    convention: StarConvention,
) -> Result<bool, LemmaError> {
    let d = DefectPair::of(gens, q, convention)?;
    let adj = DefectPair::of(gens, &adjoint_quadruple(q), convention)?;
    Ok(d.p.conj_transpose() == adj.p_inv.neg() && d.p_inv.conj_transpose() == adj.p.neg())
}

/// Outcome of every identity applicable to a pair of quadruples; `None`
/// marks identities whose hypotheses do not hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub additivity: Option<bool>,
    pub chain: Option<bool>,
    pub swap: [Option<bool>; 2],
    pub adjoint: [bool; 2],
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.additivity != Some(false)
            && self.chain != Some(false)
            && self.swap.iter().all(|s| *s != Some(false))
            && self.adjoint.iter().all(|&a| a)
    }
}

fn applicable(r: Result<bool, LemmaError>) -> Result<Option<bool>, LemmaError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(LemmaError::DenominatorMismatch | LemmaError::ZeroNumerator) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Runs every identity. Fails with `DenominatorMismatch` when the pair
/// admits neither the sum nor the chain.
pub fn lemma_identity_suite<S: Scalar>(
    gens: &GeneratorSet,
    q1: &Quadruple<S>,
    q2: &Quadruple<S>,
    convention: StarConvention,
) -> Result<LemmaReport, LemmaError> {
    let additivity = applicable(check_additivity(gens, q1, q2, convention))?;
    let chain = applicable(check_chain(gens, q1, q2, convention))?;
    if additivity.is_none() && chain.is_none() {
        return Err(LemmaError::DenominatorMismatch);
    }
    Ok(LemmaReport {
        additivity,
        chain,
        swap: [applicable(check_swap(gens, q1, convention))?, applicable(check_swap(gens, q2, convention))?],
        adjoint: [check_adjoint(gens, q1, convention)?, check_adjoint(gens, q2, convention)?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupAlgebraElement;
    use crate::freegroup::reduce;
    use crate::scalar::{gaussian_ratio, GaussianRational};

    type El = GroupAlgebraElement<GaussianRational>;

    fn g(letters: &[i32]) -> El {
        El::word(reduce(letters))
    }

    fn quad(a: El, b: El, s: El, t: El) -> Quadruple<GaussianRational> {
        Quadruple::new(a, b, s, t).unwrap()
    }

    #[test]
    fn additivity_of_commutators() {
        let gens = GeneratorSet::standard(2);
        let one = El::one();
        let q1 = quad(g(&[1]), g(&[1]), one.clone(), one.clone());
        let q2 = quad(g(&[2, 1]), g(&[2, 1]), one.clone(), one);
        assert!(check_additivity(&gens, &q1, &q2, StarConvention::Zero).unwrap());
    }

    #[test]
    fn chain_holds_with_plus_and_not_minus() {
        let gens = GeneratorSet::standard(2);
        // p = x, w = y, v = x⁻¹, z = y
        let (p, w, v, z) = (g(&[1]), g(&[2]), g(&[-1]), g(&[2]));
        let q = &p * &w;
        let y = &v * &z;
        let x = &(&w * &v) * &z;
        let r = &(&p * &w) * &v;
        let q1 = quad(q.clone(), x, p, y.clone());
        let q2 = quad(r, y, q, z);
        assert!(check_chain(&gens, &q1, &q2, StarConvention::Zero).unwrap());
        assert!(!check_chain_difference(&gens, &q1, &q2, StarConvention::Zero).unwrap());
    }

    #[test]
    fn swap_and_adjoint() {
        let gens = GeneratorSet::standard(2);
        let s = &El::one() - &El::monomial(gaussian_ratio(1, 3), reduce(&[1, 1]));
        let commuting = quad(g(&[1]), g(&[1]), s.clone(), s.clone());
        // a = s·y·x⁻¹, b = y, t = x
        let skew = quad(&(&s * &g(&[2])) * &g(&[-1]), g(&[2]), s, g(&[1]));
        for q in [commuting, skew] {
            for conv in [StarConvention::Zero, StarConvention::Strict, StarConvention::Unital] {
                assert!(check_swap(&gens, &q, conv).unwrap());
                assert!(check_adjoint(&gens, &q, conv).unwrap());
            }
        }
    }

    #[test]
    fn mismatched_pairs_are_rejected() {
        let gens = GeneratorSet::standard(2);
        let q1 = quad(g(&[1]), g(&[1]), El::one(), El::one());
        let q2 = quad(g(&[2]), g(&[2]), g(&[2]), g(&[2]));
        assert_eq!(lemma_identity_suite(&gens, &q1, &q2, StarConvention::Zero), Err(LemmaError::DenominatorMismatch));
        let zero = quad(El::zero(), El::zero(), El::one(), El::one());
        assert_eq!(swapped_quadruple(&zero), Err(LemmaError::ZeroNumerator));
    }
}
