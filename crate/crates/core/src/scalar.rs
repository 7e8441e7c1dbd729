//! Scalar fields the algebra is generic over.
//!
//! Everything above this module is written against [`Scalar`]. The exact
//! instances (`BigRational`, Gaussian rationals) are what rank verdicts are
//! computed with; the floating instances exist for the numeric expansion
//! mode and for quick experiments.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact complex numbers with rational real and imaginary parts.
pub type GaussianRational = Complex<BigRational>;

/// A field with an involutive conjugation.
pub trait Scalar: Num + std::ops::Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    fn conj(&self) -> Self;

    /// Builds the scalar `re + im·i`; `None` when the field cannot hold it
    /// (a nonzero imaginary part in a real field).
    fn from_gaussian(re: &BigRational, im: &BigRational) -> Option<Self>;

    /// Zero test used by elimination. Exact fields use `is_zero`.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Rescales a row of a matrix by a nonzero factor so that fraction-free
    /// elimination stays in a small subring. A no-op unless overridden.
    fn normalize_row(_row: &mut [Self]) {}

    /// `(re, im)` rendered as text; exact scalars use `p/q`.
    fn to_parts_string(&self) -> (String, String);

    /// True when the scalar is exact, so elimination verdicts are certified.
    const EXACT: bool;
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl Scalar for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Option<Self> {
        im.is_zero().then(|| re.clone())
    }

    fn normalize_row(row: &mut [Self]) {
        let lcm = row.iter().filter(|v| !v.is_zero()).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        if !lcm.is_one() {
            let factor = BigRational::from_integer(lcm);
            for v in row.iter_mut() {
                *v = &*v * &factor;
            }
        }
    }

    fn to_parts_string(&self) -> (String, String) {
        (format_rational(self), "0".to_string())
    }

    const EXACT: bool = true;
}

impl Scalar for GaussianRational {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Option<Self> {
        Some(Complex::new(re.clone(), im.clone()))
    }

    fn normalize_row(row: &mut [Self]) {
        let lcm = row
            .iter()
            .flat_map(|v| [&v.re, &v.im])
            .filter(|v| !v.is_zero())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        if !lcm.is_one() {
            let factor = BigRational::from_integer(lcm);
            for v in row.iter_mut() {
                *v = v.scale(factor.clone());
            }
        }
    }

    fn to_parts_string(&self) -> (String, String) {
        (format_rational(&self.re), format_rational(&self.im))
    }

    const EXACT: bool = true;
}

const FLOAT_EPS: f64 = 1e-10;

impl Scalar for f64 {
    fn conj(&self) -> Self {
        *self
    }

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Option<Self> {
        im.is_zero().then(|| re.to_f64()).flatten()
    }

    fn is_negligible(&self) -> bool {
        self.abs() < FLOAT_EPS
    }

    fn to_parts_string(&self) -> (String, String) {
        (self.to_string(), "0".to_string())
    }

    const EXACT: bool = false;
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Option<Self> {
        Some(Complex64::new(re.to_f64()?, im.to_f64()?))
    }

    fn is_negligible(&self) -> bool {
        self.norm() < FLOAT_EPS
    }

    fn to_parts_string(&self) -> (String, String) {
        (self.re.to_string(), self.im.to_string())
    }

    const EXACT: bool = false;
}

/// Converts an exact Gaussian rational into any scalar field.
pub fn lift<S: Scalar>(c: &GaussianRational) -> Option<S> {
    S::from_gaussian(&c.re, &c.im)
}

pub fn gaussian(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gaussian_int(n: i64) -> GaussianRational {
    Complex::new(rational(n, 1), BigRational::zero())
}

pub fn gaussian_ratio(n: i64, d: i64) -> GaussianRational {
    Complex::new(rational(n, d), BigRational::zero())
}

/// True if `c` is a nonnegative real, used when checking positivity laws.
pub fn is_nonnegative_real(c: &GaussianRational) -> bool {
    c.im.is_zero() && !c.re.is_negative()
}

/// Renders a Gaussian rational in the scalar syntax of the expression
/// grammar, e.g. `3/2`, `-1/3*i`, `1/2+1/3*i`.
pub fn format_gaussian(c: &GaussianRational) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => format_rational(&c.re),
        (true, false) => format_imaginary(&c.im),
        (false, false) => {
            let im = format_imaginary(&c.im.abs());
            let sign = if c.im.is_negative() { '-' } else { '+' };
            format!("{}{}{}", format_rational(&c.re), sign, im)
        }
    }
}

fn format_imaginary(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if *im == -BigRational::one() {
        "-i".to_string()
    } else {
        format!("{}*i", format_rational(im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for text in ["3/2", "-7", "0", "-1/3"] {
            let q = parse_rational(text).unwrap();
            assert_eq!(format_rational(&q), text);
        }
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn gaussian_formatting() {
        assert_eq!(format_gaussian(&gaussian(rational(0, 1), rational(1, 1))), "i");
        assert_eq!(format_gaussian(&gaussian(rational(0, 1), rational(-1, 3))), "-1/3*i");
        assert_eq!(format_gaussian(&gaussian(rational(1, 2), rational(-1, 1))), "1/2-i");
    }

    #[test]
    fn row_normalization_clears_denominators() {
        let mut row = vec![gaussian(rational(1, 2), rational(1, 3)), gaussian_ratio(3, 4)];
        GaussianRational::normalize_row(&mut row);
        assert!(row.iter().all(|v| v.re.is_integer() && v.im.is_integer()));
        assert_eq!(row[1], gaussian_int(9));
    }

    #[test]
    fn real_fields_reject_imaginary_parts() {
        assert!(lift::<f64>(&gaussian(rational(1, 1), rational(1, 1))).is_none());
        assert_eq!(lift::<f64>(&gaussian_ratio(1, 4)), Some(0.25));
    }
}
