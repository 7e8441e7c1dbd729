use thiserror::Error;

use crate::algebra::GroupAlgebraElement;
use crate::fredholm::{f_defect, FBlockMatrix, Label};
use crate::freegroup::{GeneratorSet, GroupError, StarConvention};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadrupleError<S> {
    /// `a·t - s·b`, which must vanish.
    #[error("a·t ≠ s·b")]
    IdentityViolation(GroupAlgebraElement<S>),
    #[error("denominators s and t must be nonzero")]
    ZeroDenominator,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Data `(a, b, s, t)` with `a·t = s·b`, presenting `u = s⁻¹a = b·t⁻¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadruple<S> {
    a: GroupAlgebraElement<S>,
    b: GroupAlgebraElement<S>,
    s: GroupAlgebraElement<S>,
    t: GroupAlgebraElement<S>,
}

impl<S: Scalar> Quadruple<S> {
    pub fn new(
        a: GroupAlgebraElement<S>,
        b: GroupAlgebraElement<S>,
        s: GroupAlgebraElement<S>,
        t: GroupAlgebraElement<S>,
    ) -> Result<Self, QuadrupleError<S>> {
        if s.is_zero() || t.is_zero() {
            return Err(QuadrupleError::ZeroDenominator);
        }
        let residual = &(&a * &t) - &(&s * &b);
        if !residual.is_zero() {
            return Err(QuadrupleError::IdentityViolation(residual));
        }
        Ok(Quadruple { a, b, s, t })
    }

    /// Like [`Quadruple::new`], also checking that every element lives in
    /// the group generated by `gens`.
    pub fn in_group(
        gens: &GeneratorSet,
        a: GroupAlgebraElement<S>,
        b: GroupAlgebraElement<S>,
        s: GroupAlgebraElement<S>,
        t: GroupAlgebraElement<S>,
    ) -> Result<Self, QuadrupleError<S>> {
        for x in [&a, &b, &s, &t] {
            x.check_generators(gens)?;
        }
        Self::new(a, b, s, t)
    }

    pub fn a(&self) -> &GroupAlgebraElement<S> {
        &self.a
    }

    pub fn b(&self) -> &GroupAlgebraElement<S> {
        &self.b
    }

    pub fn s(&self) -> &GroupAlgebraElement<S> {
        &self.s
    }

    pub fn t(&self) -> &GroupAlgebraElement<S> {
        &self.t
    }

    pub fn into_parts(self) -> [GroupAlgebraElement<S>; 4] {
        [self.a, self.b, self.s, self.t]
    }
}

/// Shorthand for [`Quadruple::new`].
pub fn make_quadruple<S: Scalar>(
    a: GroupAlgebraElement<S>,
    b: GroupAlgebraElement<S>,
    s: GroupAlgebraElement<S>,
    t: GroupAlgebraElement<S>,
) -> Result<Quadruple<S>, QuadrupleError<S>> {
    Quadruple::new(a, b, s, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport<S> {
    pub identity_holds: bool,
    pub convention: StarConvention,
    pub rank_p: usize,
    pub rank_p_inv: usize,
    /// Rank of the assembled `sFb - aFt`, computed independently of the
    /// block ranks.
    pub rank_f: usize,
    /// Both defect matrices had vanishing boundary columns.
    pub certified: bool,
    pub witnesses_p: Vec<Label>,
    pub witnesses_p_inv: Vec<Label>,
    pub defects: FBlockMatrix<S>,
}

/// Assembles both defect matrices of `q` and reports their exact ranks.
pub fn check_criterion<S: Scalar>(
    gens: &GeneratorSet,
    q: &Quadruple<S>,
    convention: StarConvention,
) -> Result<CriterionReport<S>, GroupError> {
    let defects = f_defect(gens, &q.a, &q.b, &q.s, &q.t, convention)?;
    let p_info = defects.p_block.rank_info();
    let p_inv_info = defects.p_inv_block.rank_info();
    let rank_f = defects.rank();
    Ok(CriterionReport {
        identity_holds: true,
        convention,
        rank_p: p_info.rank,
        rank_p_inv: p_inv_info.rank,
        rank_f,
        certified: defects.p_block.certified && defects.p_inv_block.certified,
        witnesses_p: p_info.pivot_cols.iter().map(|&j| defects.p_block.cols[j].clone()).collect(),
        witnesses_p_inv: p_inv_info.pivot_cols.iter().map(|&j| defects.p_inv_block.cols[j].clone()).collect(),
        defects,
    })
}
