//! Truncated expansion of rational expressions into coefficient tables.
//!
//! Exact mode works on the graded fragment: every inverted element must be
//! a constant plus a part supported on positive words, or a monomial `c·g`.
//! Products of infinite series are only formed when both factors have a
//! bounded number of inverse letters per support word, which bounds the
//! cancellation between them.
//!
//! Numeric mode carries each value as a finite part plus an ℓ¹ bound on the
//! remainder and inverts by Neumann series under ℓ¹ dominance.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::expr::RationalExpression;
use super::ExpandError;
use crate::algebra::GroupAlgebraElement;
use crate::criterion::stream::{CoefficientJson, TruncatedStream};
use crate::freegroup::GeneratorSet;
use crate::scalar::{GaussianRational, Scalar};

type El<S> = GroupAlgebraElement<S>;
use RationalExpression as E;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionMode {
    Exact,
    Numeric { tail_bound: f64 },
}

/// Coefficients of an expression on the ball of the given radius. In
/// numeric mode the remainder of the element has ℓ¹ norm at most
/// `tail_bound`, and the coefficients are not confined to the ball.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTruncation<S> {
    pub radius: usize,
    pub coefficients: El<S>,
    pub mode: ExpansionMode,
}

impl SeriesTruncation<GaussianRational> {
    pub fn to_stream(&self) -> TruncatedStream<GaussianRational> {
        TruncatedStream { coeffs: self.coefficients.clone(), radius: self.radius }
    }
}

/// `{"coeffs": [...], "radius": N, "mode": "exact" | "numeric", "tail_bound"?}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTruncationJson {
    pub coeffs: Vec<CoefficientJson>,
    pub radius: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail_bound: Option<f64>,
}

impl<S: Scalar> SeriesTruncation<S> {
    pub fn to_json(&self, gens: &GeneratorSet) -> SeriesTruncationJson {
        let coeffs = self
            .coefficients
            .iter()
            .map(|(w, c)| {
                let (re, im) = c.to_parts_string();
                CoefficientJson { word: gens.format_word(w), re, im }
            })
            .collect();
        let (mode, tail_bound) = match self.mode {
            ExpansionMode::Exact => ("exact", None),
            ExpansionMode::Numeric { tail_bound } => ("numeric", Some(tail_bound)),
        };
        SeriesTruncationJson { coeffs, radius: self.radius, mode: mode.to_string(), tail_bound }
    }
}

/// What is known about a node before any radius is chosen.
#[derive(Debug, Clone)]
enum Shape<S> {
    /// An exactly known element of the group algebra.
    Poly(El<S>),
    /// An infinite series; `depth` bounds the inverse letters per support
    /// word when such a bound is known.
    Series { depth: Option<usize> },
}

#[derive(Debug, Clone)]
struct Plan<S> {
    shape: Shape<S>,
    children: Vec<Plan<S>>,
}

fn not_expandable(path: &[usize], reason: &str) -> ExpandError {
    ExpandError::NotExpandable { path: path.to_vec(), reason: reason.to_string() }
}

fn child_path(path: &[usize], i: usize) -> Vec<usize> {
    let mut p = path.to_vec();
    p.push(i);
    p
}

fn plan<S: Scalar>(e: &RationalExpression<S>, path: &[usize]) -> Result<Plan<S>, ExpandError> {
    let children: Vec<Plan<S>> =
        e.children().iter().enumerate().map(|(i, c)| plan(c, &child_path(path, i))).collect::<Result<_, _>>()?;
    let depth_of = |p: &Plan<S>| match &p.shape {
        Shape::Poly(a) => Some(a.negative_depth()),
        Shape::Series { depth } => *depth,
    };
    let shape = match (e, children.as_slice()) {
        (E::Leaf(a), _) => Shape::Poly(a.clone()),
        (E::Add(..), [a, b]) => match (&a.shape, &b.shape) {
            (Shape::Poly(x), Shape::Poly(y)) => Shape::Poly(x + y),
            _ => Shape::Series { depth: depth_of(a).zip(depth_of(b)).map(|(x, y)| x.max(y)) },
        },
        (E::Mul(..), [a, b]) => match (&a.shape, &b.shape) {
            (Shape::Poly(x), Shape::Poly(y)) => Shape::Poly(x * y),
            _ => Shape::Series { depth: depth_of(a).zip(depth_of(b)).map(|(x, y)| x + y) },
        },
        (E::Neg(_), [a]) => match &a.shape {
            Shape::Poly(x) => Shape::Poly(-x),
            s => s.clone(),
        },
        (E::ScalarMul(c, _), [a]) => match &a.shape {
            Shape::Poly(x) => Shape::Poly(x.scale(c)),
            s => s.clone(),
        },
        (E::Adjoint(_), [a]) => match &a.shape {
            Shape::Poly(x) => Shape::Poly(x.adjoint()),
            Shape::Series { .. } => Shape::Series { depth: None },
        },
        (E::Inv(_), [a]) => match &a.shape {
            Shape::Poly(x) => {
                if let Some((c, w)) = x.as_monomial() {
                    if c.is_zero() {
                        return Err(ExpandError::SingularConstantTerm { path: path.to_vec() });
                    }
                    Shape::Poly(El::monomial(S::one() / c.clone(), crate::freegroup::invert(w)))
                } else if x.is_zero() {
                    return Err(ExpandError::SingularConstantTerm { path: path.to_vec() });
                } else if !x.support().all(|w| w.is_identity() || w.is_positive()) {
                    return Err(not_expandable(path, "inverted element has inverse letters outside its constant term"));
                } else if x.constant_term().is_zero() {
                    return Err(ExpandError::SingularConstantTerm { path: path.to_vec() });
                } else {
                    Shape::Series { depth: Some(0) }
                }
            }
            Shape::Series { depth: Some(0) } => Shape::Series { depth: Some(0) },
            Shape::Series { .. } => {
                return Err(not_expandable(path, "inverted series is not supported on positive words"))
            }
        },
        _ => unreachable!("children match node arity"),
    };
    Ok(Plan { shape, children })
}

/// Exact coefficients of the node for all words of length ≤ `r`.
fn eval<S: Scalar>(e: &RationalExpression<S>, p: &Plan<S>, r: usize, path: &[usize]) -> Result<El<S>, ExpandError> {
    if let Shape::Poly(a) = &p.shape {
        return Ok(a.truncate(r));
    }
    let ch = e.children();
    let sub = |i: usize, radius: usize| eval(ch[i], &p.children[i], radius, &child_path(path, i));
    Ok(match e {
        E::Leaf(_) => unreachable!("leaves are polynomials"),
        E::Add(..) => &sub(0, r)? + &sub(1, r)?,
        E::Neg(_) => -sub(0, r)?,
        E::ScalarMul(c, _) => sub(0, r)?.scale(c),
        E::Adjoint(_) => sub(0, r)?.adjoint(),
        E::Mul(..) => {
            let (pa, pb) = (&p.children[0], &p.children[1]);
            let (ra, rb) = match (&pa.shape, &pb.shape) {
                (Shape::Poly(a), Shape::Series { .. }) => (r, r + a.support_radius()),
                (Shape::Series { .. }, Shape::Poly(b)) => (r + b.support_radius(), r),
                (Shape::Series { depth: Some(da) }, Shape::Series { depth: Some(db) }) => {
                    let extra = 2 * (da + db);
                    (r + extra, r + extra)
                }
                _ => return Err(not_expandable(path, "product of series with unbounded cancellation")),
            };
            sub(0, ra)?.mul_truncated(&sub(1, rb)?, r)
        }
        E::Inv(_) => {
            let a = sub(0, r)?;
            let c0 = a.constant_term();
            if c0.is_zero() {
                return Err(ExpandError::SingularConstantTerm { path: path.to_vec() });
            }
            let c_inv = S::one() / c0.clone();
            // u⁻¹ = c⁻¹ Σ (-c⁻¹R)ᵏ with R supported on positive words
            let step = (&a - &El::scalar(c0)).scale(&-c_inv.clone());
            let mut power = El::one();
            let mut sum = El::one();
            for _ in 0..r {
                power = power.mul_truncated(&step, r);
                if power.is_zero() {
                    break;
                }
                sum = &sum + &power;
            }
            sum.scale(&c_inv)
        }
    })
}

/// Exact coefficients on the ball of the given radius.
pub fn expand_exact<S: Scalar>(e: &RationalExpression<S>, radius: usize) -> Result<SeriesTruncation<S>, ExpandError> {
    let p = plan(e, &[])?;
    Ok(SeriesTruncation { radius, coefficients: eval(e, &p, radius, &[])?, mode: ExpansionMode::Exact })
}

/// The element itself, when the expression denotes a finitely supported
/// element (no inverses other than of monomials).
pub fn to_element<S: Scalar>(e: &RationalExpression<S>) -> Result<El<S>, ExpandError> {
    match plan(e, &[])?.shape {
        Shape::Poly(a) => Ok(a),
        Shape::Series { .. } => Err(ExpandError::NotPolynomial),
    }
}

type C = Complex64;

#[derive(Debug, Clone)]
struct Approx {
    part: El<C>,
    tail: f64,
}

fn l1(a: &El<C>) -> f64 {
    a.iter().map(|(_, c)| c.norm()).sum()
}

struct Budget {
    /// Neumann terms kept per inverse.
    terms: usize,
    /// Coefficients smaller than this move into the tail.
    prune: f64,
}

fn pruned(a: El<C>, tail: f64, threshold: f64) -> Approx {
    let mut dropped = 0.0;
    let part = El::from_terms(a.iter().filter_map(|(w, c)| {
        if c.norm() < threshold {
            dropped += c.norm();
            None
        } else {
            Some((w.clone(), *c))
        }
    }));
    Approx { part, tail: tail + dropped }
}

fn approx(e: &RationalExpression<C>, budget: &Budget, path: &[usize]) -> Result<Approx, ExpandError> {
    let ch = e.children();
    let sub = |i: usize| approx(ch[i], budget, &child_path(path, i));
    Ok(match e {
        E::Leaf(a) => Approx { part: a.clone(), tail: 0.0 },
        E::Add(..) => {
            let (a, b) = (sub(0)?, sub(1)?);
            Approx { part: &a.part + &b.part, tail: a.tail + b.tail }
        }
        E::Neg(_) => {
            let a = sub(0)?;
            Approx { part: -a.part, tail: a.tail }
        }
        E::ScalarMul(c, _) => {
            let a = sub(0)?;
            Approx { part: a.part.scale(c), tail: a.tail * c.norm() }
        }
        E::Adjoint(_) => {
            let a = sub(0)?;
            Approx { part: a.part.adjoint(), tail: a.tail }
        }
        E::Mul(..) => {
            let (a, b) = (sub(0)?, sub(1)?);
            let tail = l1(&a.part) * b.tail + a.tail * l1(&b.part) + a.tail * b.tail;
            pruned(&a.part * &b.part, tail, budget.prune)
        }
        E::Inv(_) => {
            let a = sub(0)?;
            let c0 = a.part.constant_term();
            let rest = &a.part - &El::scalar(c0);
            let norm_c = c0.norm();
            let rho_r = if norm_c > 0.0 { l1(&rest) / norm_c } else { f64::INFINITY };
            let rho = if norm_c > 0.0 { (l1(&rest) + a.tail) / norm_c } else { f64::INFINITY };
            if rho.is_nan() || rho >= 1.0 {
                return Err(ExpandError::DominanceFailure { path: path.to_vec(), ratio: rho });
            }
            let c_inv = C::new(1.0, 0.0) / c0;
            let step = rest.scale(&-c_inv);
            let mut power = El::one();
            let mut sum = El::one();
            let mut dropped = 0.0;
            let mut kept = 0;
            for _ in 0..budget.terms {
                let p = pruned(power.mul_truncated(&step, usize::MAX), 0.0, budget.prune);
                if p.part.is_zero() {
                    break;
                }
                dropped += p.tail;
                power = p.part;
                sum = &sum + &power;
                kept += 1;
            }
            // pruning inside the loop perturbs each later power by at most
            // the dropped mass times a geometric factor
            let neumann = (1.0 / (1.0 - rho) - (1.0 - rho_r.powi(kept + 1)) / (1.0 - rho_r)) / norm_c;
            let prune_err = dropped / (1.0 - rho_r) / norm_c;
            pruned(sum.scale(&c_inv), neumann.max(0.0) + prune_err, budget.prune)
        }
    })
}

/// Floating coefficients whose remainder has ℓ¹ norm at most `tol`.
pub fn expand_numeric(e: &RationalExpression<C>, tol: f64) -> Result<SeriesTruncation<C>, ExpandError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(ExpandError::BadTolerance(tol));
    }
    let mut budget = Budget { terms: 32, prune: tol * 1e-4 };
    let mut best = f64::INFINITY;
    for _ in 0..8 {
        let a = approx(e, &budget, &[])?;
        if a.tail <= tol {
            let radius = a.part.support_radius();
            return Ok(SeriesTruncation {
                radius,
                coefficients: a.part,
                mode: ExpansionMode::Numeric { tail_bound: a.tail },
            });
        }
        best = best.min(a.tail);
        budget.terms *= 2;
        budget.prune /= 100.0;
    }
    Err(ExpandError::ToleranceNotReached { tol, achieved: best })
}
