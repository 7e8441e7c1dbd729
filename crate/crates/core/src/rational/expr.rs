use crate::algebra::GroupAlgebraElement;
use crate::freegroup::{GeneratorSet, GroupError};
use crate::scalar::Scalar;

/// A noncommutative rational expression over the group algebra.
#[derive(Debug, Clone, PartialEq)]
pub enum RationalExpression<S> {
    Leaf(GroupAlgebraElement<S>),
    Add(Box<Self>, Box<Self>),
    Neg(Box<Self>),
    Mul(Box<Self>, Box<Self>),
    Inv(Box<Self>),
    Adjoint(Box<Self>),
    ScalarMul(S, Box<Self>),
}

use RationalExpression as E;

impl<S: Scalar> RationalExpression<S> {
    pub fn leaf(a: GroupAlgebraElement<S>) -> Self {
        E::Leaf(a)
    }

    pub fn children(&self) -> Vec<&Self> {
        match self {
            E::Leaf(_) => vec![],
            E::Add(a, b) | E::Mul(a, b) => vec![a, b],
            E::Neg(a) | E::Inv(a) | E::Adjoint(a) | E::ScalarMul(_, a) => vec![a],
        }
    }

    /// The node reached by following child indices from the root.
    pub fn subexpression(&self, path: &[usize]) -> Option<&Self> {
        path.iter().try_fold(self, |node, &i| node.children().get(i).copied())
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(|c| c.node_count()).sum::<usize>()
    }

    pub fn check_generators(&self, gens: &GeneratorSet) -> Result<(), GroupError> {
        if let E::Leaf(a) = self {
            a.check_generators(gens)?;
        }
        self.children().iter().try_for_each(|c| c.check_generators(gens))
    }

    /// The same tree with every scalar passed through `f`.
    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> RationalExpression<T> {
        let b = |e: &Self| Box::new(e.map_scalars(f));
        match self {
            E::Leaf(a) => E::Leaf(a.map_scalars(f)),
            E::Add(x, y) => E::Add(b(x), b(y)),
            E::Neg(x) => E::Neg(b(x)),
            E::Mul(x, y) => E::Mul(b(x), b(y)),
            E::Inv(x) => E::Inv(b(x)),
            E::Adjoint(x) => E::Adjoint(b(x)),
            E::ScalarMul(c, x) => E::ScalarMul(f(c), b(x)),
        }
    }
}

pub fn expr_add<S: Scalar>(e1: RationalExpression<S>, e2: RationalExpression<S>) -> RationalExpression<S> {
    E::Add(Box::new(e1), Box::new(e2))
}

pub fn expr_neg<S: Scalar>(e: RationalExpression<S>) -> RationalExpression<S> {
    match e {
        E::Neg(inner) => *inner,
        other => E::Neg(Box::new(other)),
    }
}

pub fn expr_mul<S: Scalar>(e1: RationalExpression<S>, e2: RationalExpression<S>) -> RationalExpression<S> {
    E::Mul(Box::new(e1), Box::new(e2))
}

pub fn expr_scale<S: Scalar>(c: S, e: RationalExpression<S>) -> RationalExpression<S> {
    E::ScalarMul(c, Box::new(e))
}

/// Inverse; a double inverse cancels.
pub fn expr_inv<S: Scalar>(e: RationalExpression<S>) -> RationalExpression<S> {
    match e {
        E::Inv(inner) => *inner,
        other => E::Inv(Box::new(other)),
    }
}

/// Adjoint, pushed down to the leaves: involutive and antimultiplicative.
pub fn expr_adjoint<S: Scalar>(e: RationalExpression<S>) -> RationalExpression<S> {
    match e {
        E::Leaf(a) => E::Leaf(a.adjoint()),
        E::Add(x, y) => expr_add(expr_adjoint(*x), expr_adjoint(*y)),
        E::Neg(x) => E::Neg(Box::new(expr_adjoint(*x))),
        E::Mul(x, y) => expr_mul(expr_adjoint(*y), expr_adjoint(*x)),
        E::Inv(x) => E::Inv(Box::new(expr_adjoint(*x))),
        E::Adjoint(x) => *x,
        E::ScalarMul(c, x) => E::ScalarMul(c.conj(), Box::new(expr_adjoint(*x))),
    }
}
