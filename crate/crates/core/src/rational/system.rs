use super::expr::RationalExpression;
use super::ExpandError;
use crate::algebra::GroupAlgebraElement;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

type El<S> = GroupAlgebraElement<S>;

/// A square matrix over the group algebra whose inverse carries the
/// represented element at `(out_row, in_col)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<S> {
    pub n: usize,
    pub m: Vec<Vec<El<S>>>,
    pub out_row: usize,
    pub in_col: usize,
}

impl<S: Scalar> LinearSystem<S> {
    fn zeros(n: usize, out_row: usize, in_col: usize) -> Self {
        LinearSystem { n, m: vec![vec![El::zero(); n]; n], out_row, in_col }
    }

    fn leaf(a: &El<S>) -> Self {
        let mut sys = Self::zeros(2, 0, 1);
        sys.m[0][0] = El::one();
        sys.m[1][1] = El::one();
        sys.m[0][1] = -a;
        sys
    }

    /// Block upper-triangular `[[A, Y], [0, B]]` with `Y` left empty.
    fn stack(a: &Self, b: &Self) -> Self {
        let n = a.n + b.n;
        let mut sys = Self::zeros(n, a.out_row, a.n + b.in_col);
        for i in 0..a.n {
            sys.m[i][..a.n].clone_from_slice(&a.m[i]);
        }
        for i in 0..b.n {
            sys.m[a.n + i][a.n..].clone_from_slice(&b.m[i]);
        }
        sys
    }

    fn scale_out_column(mut self, c: &S) -> Self {
        let o = self.out_row;
        for row in self.m.iter_mut() {
            row[o] = row[o].scale(c);
        }
        self
    }

    /// The constant and nonconstant parts of the matrix.
    fn split(&self) -> (Matrix<S>, Vec<Vec<El<S>>>) {
        let m0 = Matrix::from_rows(self.m.iter().map(|r| r.iter().map(El::constant_term).collect()).collect());
        let rest = self
            .m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|a| {
                        El::from_terms(a.iter().filter(|(w, _)| !w.is_identity()).map(|(w, c)| (w.clone(), c.clone())))
                    })
                    .collect()
            })
            .collect();
        (m0, rest)
    }
}

/// Builds a linear system by structural recursion. `Add` and `Mul` stack
/// the two systems block-triangularly, `Inv` borders the operand's system.
pub fn compile<S: Scalar>(e: &RationalExpression<S>) -> LinearSystem<S> {
    use RationalExpression as E;
    match e {
        E::Leaf(a) => LinearSystem::leaf(a),
        E::Mul(x, y) => {
            let (a, b) = (compile(x), compile(y));
            let mut sys = LinearSystem::stack(&a, &b);
            sys.m[a.in_col][a.n + b.out_row] = -El::one();
            sys
        }
        E::Add(x, y) => {
            let (a, b) = (compile(x), compile(y));
            let mut sys = LinearSystem::stack(&a, &b);
            // Y = -A e_o1 e_o2ᵀ - e_c1 e_c2ᵀ B
            for i in 0..a.n {
                let cell = &mut sys.m[i][a.n + b.out_row];
                *cell = &*cell - &a.m[i][a.out_row];
            }
            for j in 0..b.n {
                let cell = &mut sys.m[a.in_col][a.n + j];
                *cell = &*cell - &b.m[b.in_col][j];
            }
            sys
        }
        E::Neg(x) => compile(x).scale_out_column(&-S::one()),
        E::ScalarMul(c, x) if c.is_zero() => LinearSystem::leaf(&El::zero()),
        E::ScalarMul(c, x) => compile(x).scale_out_column(&(S::one() / c.clone())),
        E::Inv(x) => {
            let a = compile(x);
            let n = a.n + 1;
            let mut sys = LinearSystem::zeros(n, a.n, a.n);
            for i in 0..a.n {
                sys.m[i][..a.n].clone_from_slice(&a.m[i]);
            }
            sys.m[a.in_col][a.n] = El::one();
            sys.m[a.n][a.out_row] = -El::one();
            sys
        }
        E::Adjoint(x) => {
            let a = compile(x);
            let mut sys = LinearSystem::zeros(a.n, a.in_col, a.out_row);
            for i in 0..a.n {
                for j in 0..a.n {
                    sys.m[j][i] = a.m[i][j].adjoint();
                }
            }
            sys
        }
    }
}

/// Coefficients up to length `radius` of the represented element, by the
/// graded iteration `Z ← M₀⁻¹(e_c - M₊Z)`. Requires the nonconstant part
/// `M₊` to live on positive words.
pub fn solve_truncated<S: Scalar>(sys: &LinearSystem<S>, radius: usize) -> Result<El<S>, ExpandError> {
    let (m0, rest) = sys.split();
    if rest.iter().flatten().any(|a| a.support().any(|w| !w.is_positive())) {
        return Err(ExpandError::NotExpandable {
            path: vec![],
            reason: "system has entries outside the positive monoid".into(),
        });
    }
    let m0_inv = m0.inverse().ok_or(ExpandError::SingularConstantTerm { path: vec![] })?;
    let mut z: Vec<El<S>> = vec![El::zero(); sys.n];
    for _ in 0..=radius {
        let rhs: Vec<El<S>> = (0..sys.n)
            .map(|i| {
                let mut acc = if i == sys.in_col { El::one() } else { El::zero() };
                for (a, zj) in rest[i].iter().zip(&z) {
                    if !a.is_zero() && !zj.is_zero() {
                        acc = &acc - &a.mul_truncated(zj, radius);
                    }
                }
                acc
            })
            .collect();
        z = (0..sys.n)
            .map(|i| {
                let mut acc = El::zero();
                for (j, r) in rhs.iter().enumerate() {
                    let c = m0_inv.get(i, j);
                    if !c.is_zero() && !r.is_zero() {
                        acc = &acc + &r.scale(c);
                    }
                }
                acc
            })
            .collect();
    }
    Ok(z[sys.out_row].truncate(radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{reduce, GeneratorSet};
    use crate::rational::parse::parse;
    use crate::scalar::{gaussian_int, gaussian_ratio, GaussianRational};

    type Ex = RationalExpression<GaussianRational>;

    fn ex(text: &str) -> Ex {
        parse(text, &GeneratorSet::standard(2)).unwrap()
    }

    #[test]
    fn sizes_add() {
        assert_eq!(compile(&ex("x")).n, 2);
        assert_eq!(compile(&ex("x*y")).n, 4);
        assert_eq!(compile(&ex("x + y")).n, 4);
        assert_eq!(compile(&ex("(1 - x)^-1")).n, 5);
    }

    #[test]
    fn leaf_is_recovered() {
        let sys = compile(&ex("3"));
        assert_eq!(solve_truncated(&sys, 2).unwrap(), El::scalar(gaussian_int(3)));
        let sys = compile(&ex("2*x*y + y"));
        let expected = El::from_terms([(reduce(&[1, 2]), gaussian_int(2)), (reduce(&[2]), gaussian_int(1))]);
        assert_eq!(solve_truncated(&sys, 3).unwrap(), expected);
    }

    #[test]
    fn geometric_system() {
        let sys = compile(&ex("(1 - 1/2*x)^-1"));
        let expected = El::from_terms((0..=8).map(|n| (ReducedWord::power(1, n), gaussian_ratio(1, 1 << n))));
        assert_eq!(solve_truncated(&sys, 8).unwrap(), expected);
    }

    #[test]
    fn negative_letters_are_refused() {
        let sys = compile(&ex("(1 - x^-1)^-1"));
        assert!(matches!(solve_truncated(&sys, 2), Err(ExpandError::NotExpandable { .. })));
        let sys = compile(&ex("(x)^-1"));
        assert!(matches!(solve_truncated(&sys, 2), Err(ExpandError::SingularConstantTerm { .. })));
    }

    use crate::freegroup::ReducedWord;
}
