//! Rational functions in one variable, for the infinite cyclic group where
//! every expression has a common denominator.

use num_traits::{One, Zero};

use super::expr::RationalExpression;
use super::ExpandError;
use crate::algebra::GroupAlgebraElement;
use crate::criterion::quadruple::Quadruple;
use crate::freegroup::{GeneratorSet, ReducedWord};
use crate::scalar::GaussianRational;

type Q = GaussianRational;

/// Dense coefficients `c_0 + c_1 x + ...` without trailing zeros.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial(Vec<Q>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `xᵏ`.
    pub fn monomial(k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = Q::one();
        Polynomial(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of the lowest power present.
    pub fn lowest(&self) -> Option<&Q> {
        self.0.iter().find(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let get = |p: &Self, i: usize| p.0.get(i).cloned().unwrap_or_else(Q::zero);
        Self::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.0.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.0.clone();
        let dl = d.lead();
        let dn = d.0.len();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dn) + 1];
        while rem.len() >= dn && !rem.is_empty() {
            let shift = rem.len() - dn;
            let f = rem.last().unwrap().clone() / dl.clone();
            for (i, c) in d.0.iter().enumerate() {
                rem[shift + i] = rem[shift + i].clone() - f.clone() * c.clone();
            }
            quot[shift] = f;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead();
        a.scale(&(Q::one() / l))
    }

    /// `p̄(x⁻¹)·x^deg`, the reversed conjugate.
    fn conj_reversed(&self) -> Self {
        Self::new(self.0.iter().rev().map(|c| c.conj()).collect())
    }

    pub fn to_element(&self, generator: u32) -> GroupAlgebraElement<Q> {
        GroupAlgebraElement::from_terms(
            self.0.iter().enumerate().map(|(k, c)| (ReducedWord::power(generator, k as i64), c.clone())),
        )
    }
}

/// `num / den` in lowest terms, with the lowest-order coefficient of the
/// denominator equal to one.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExpandError> {
        if den.is_zero() {
            return Err(ExpandError::DivisionByZeroPolynomial);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        if num.is_zero() {
            den = Polynomial::constant(Q::one());
        }
        let low = den.lowest().cloned().expect("nonzero denominator");
        let f = Q::one() / low;
        num = num.scale(&f);
        den = den.scale(&f);
        Ok(RationalFunction { num, den })
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// A Laurent polynomial `Σ c_n xⁿ`, given as a group algebra element on
    /// the generator with index 1.
    pub fn from_laurent(a: &GroupAlgebraElement<Q>) -> Result<Self, ExpandError> {
        let mut terms = Vec::new();
        for (w, c) in a.iter() {
            let n = match w.as_power() {
                None => 0,
                Some((1, n)) => n,
                Some(_) => return Err(ExpandError::RankUnsupported { rank: w.max_generator() as usize }),
            };
            terms.push((n, c.clone()));
        }
        let low = terms.iter().map(|(n, _)| *n).min().unwrap_or(0).min(0);
        let mut coeffs = vec![Q::zero(); terms.iter().map(|(n, _)| (n - low) as usize + 1).max().unwrap_or(0)];
        for (n, c) in terms {
            coeffs[(n - low) as usize] = c;
        }
        Self::new(Polynomial::new(coeffs), Polynomial::monomial((-low) as usize))
    }

    pub fn add(&self, o: &Self) -> Result<Self, ExpandError> {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ExpandError> {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &Q) -> Result<Self, ExpandError> {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self, ExpandError> {
        if self.num.is_zero() {
            return Err(ExpandError::DivisionByZeroPolynomial);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `f*(x) = conj(f)(x⁻¹)`.
    pub fn adjoint(&self) -> Result<Self, ExpandError> {
        let (dn, dd) = (self.num.degree(), self.den.degree());
        let (mut num, mut den) = (self.num.conj_reversed(), self.den.conj_reversed());
        // conj(n)(1/x) / conj(d)(1/x) = x^(dd - dn) · rev(n̄) / rev(d̄)
        if dd >= dn {
            num = num.mul(&Polynomial::monomial(dd - dn));
        } else {
            den = den.mul(&Polynomial::monomial(dn - dd));
        }
        Self::new(num, den)
    }

    pub fn from_expression(e: &RationalExpression<Q>) -> Result<Self, ExpandError> {
        use RationalExpression as E;
        match e {
            E::Leaf(a) => Self::from_laurent(a),
            E::Add(x, y) => Self::from_expression(x)?.add(&Self::from_expression(y)?),
            E::Mul(x, y) => Self::from_expression(x)?.mul(&Self::from_expression(y)?),
            E::Neg(x) => Self::from_expression(x)?.scale(&-Q::one()),
            E::ScalarMul(c, x) => Self::from_expression(x)?.scale(c),
            E::Inv(x) => Self::from_expression(x)?.inv(),
            E::Adjoint(x) => Self::from_expression(x)?.adjoint(),
        }
    }
}

/// `(num, num, den, den)` for the reduced fraction of `e`, so that
/// `e = s⁻¹a = b·t⁻¹`. Only the rank-1 group is supported.
pub fn quadruple_from_expression(gens: &GeneratorSet, e: &RationalExpression<Q>) -> Result<Quadruple<Q>, ExpandError> {
    if gens.rank() != 1 {
        return Err(ExpandError::RankUnsupported { rank: gens.rank() });
    }
    e.check_generators(gens).map_err(|_| ExpandError::RankUnsupported { rank: gens.rank() })?;
    let f = RationalFunction::from_expression(e)?;
    let (a, s) = (f.num.to_element(1), f.den.to_element(1));
    Ok(Quadruple::new(a.clone(), a, s.clone(), s).expect("commuting numerator and denominator"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse::parse;
    use crate::scalar::{gaussian_int, gaussian_ratio};

    fn quad(text: &str) -> [GroupAlgebraElement<Q>; 4] {
        let gens = GeneratorSet::standard(1);
        quadruple_from_expression(&gens, &parse(text, &gens).unwrap()).unwrap().into_parts()
    }

    fn poly(c: &[i64]) -> GroupAlgebraElement<Q> {
        Polynomial::new(c.iter().map(|&n| gaussian_int(n)).collect()).to_element(1)
    }

    #[test]
    fn examples() {
        let s = Polynomial::new(vec![gaussian_int(1), gaussian_ratio(-1, 2)]).to_element(1);
        assert_eq!(quad("(1 - 1/2*x)^-1"), [poly(&[1]), poly(&[1]), s.clone(), s]);
        assert_eq!(quad("x^-1"), [poly(&[1]), poly(&[1]), poly(&[0, 1]), poly(&[0, 1])]);
        assert_eq!(quad("(1-x)^-1 + (1-x)^-1"), [poly(&[2]), poly(&[2]), poly(&[1, -1]), poly(&[1, -1])]);
        assert_eq!(quad("(1 - x*x)*(1 - x)^-1"), [poly(&[1, 1]), poly(&[1, 1]), poly(&[1]), poly(&[1])]);
    }

    #[test]
    fn adjoint_inverts_the_variable() {
        assert_eq!(quad("(x)^*"), quad("x^-1"));
        assert_eq!(quad("((1 - 1/2*x)^-1)^*"), quad("(1 - 1/2*x^-1)^-1"));
    }

    #[test]
    fn errors() {
        let gens = GeneratorSet::standard(1);
        assert_eq!(
            quadruple_from_expression(&gens, &parse("(x - x)^-1", &gens).unwrap()),
            Err(ExpandError::DivisionByZeroPolynomial)
        );
        let gens2 = GeneratorSet::standard(2);
        assert_eq!(
            quadruple_from_expression(&gens2, &parse("x", &gens2).unwrap()),
            Err(ExpandError::RankUnsupported { rank: 2 })
        );
    }
}
