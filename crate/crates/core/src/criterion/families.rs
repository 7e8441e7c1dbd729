//! Built-in one-variable coefficient families `Σ c_n xⁿ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::stream::PowerSeriesStream;
use crate::scalar::{parse_rational, GaussianRational};

/// Family specifications understood by [`family`].
pub const FAMILY_SYNTAX: &[&str] = &[
    "geometric:<q>",
    "poly-geometric:<q>",
    "factorial",
    "harmonic",
    "catalan-recip",
    "prime",
    "fibonacci:<q>",
    "periodic:<c0>,<c1>,...",
    "polynomial:<c0>,<c1>,...",
    "alternating",
];

/// The ten-family corpus used to compare the windowed profile with the
/// Hankel oracle.
pub const CORPUS: &[&str] = &[
    "geometric:1/2",
    "poly-geometric:1/2",
    "polynomial:1,2,0,3",
    "factorial",
    "prime",
    "catalan-recip",
    "fibonacci:1/3",
    "periodic:1,0,-1",
    "harmonic",
    "alternating",
];

fn real(q: BigRational) -> GaussianRational {
    GaussianRational::new(q, BigRational::zero())
}

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn fibonacci(n: u64) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

fn catalan(n: u64) -> BigInt {
    factorial(2 * n) / (factorial(n) * factorial(n + 1))
}

fn parse_list(text: &str) -> Option<Vec<BigRational>> {
    let items: Option<Vec<_>> = text.split(',').map(parse_rational).collect();
    items.filter(|v| !v.is_empty())
}

/// Stream on the generator with index `generator` for a family spec, or
/// `None` if the spec is not recognised.
pub fn family(spec: &str, generator: u32) -> Option<PowerSeriesStream<GaussianRational>> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    };
    let stream = match (name, arg) {
        ("geometric", Some(q)) => {
            let q = parse_rational(q)?;
            PowerSeriesStream::new(generator, move |n| real(num_traits::pow(q.clone(), n as usize)))
        }
        ("poly-geometric", Some(q)) => {
            let q = parse_rational(q)?;
            PowerSeriesStream::new(generator, move |n| {
                real(int(BigInt::from(n + 1)) * num_traits::pow(q.clone(), n as usize))
            })
        }
        ("fibonacci", Some(q)) => {
            let q = parse_rational(q)?;
            PowerSeriesStream::new(generator, move |n| {
                real(int(fibonacci(n + 1)) * num_traits::pow(q.clone(), n as usize))
            })
        }
        ("periodic", Some(list)) => {
            let values = parse_list(list)?;
            PowerSeriesStream::new(generator, move |n| real(values[(n % values.len() as u64) as usize].clone()))
        }
        ("polynomial", Some(list)) => {
            let values = parse_list(list)?;
            PowerSeriesStream::new(generator, move |n| {
                real(values.get(n as usize).cloned().unwrap_or_else(BigRational::zero))
            })
        }
        ("factorial", None) => PowerSeriesStream::new(generator, |n| real(int(factorial(n)).recip())),
        ("harmonic", None) => PowerSeriesStream::new(generator, |n| real(int(BigInt::from(n + 1)).recip())),
        ("catalan-recip", None) => PowerSeriesStream::new(generator, |n| real(int(catalan(n)).recip())),
        ("prime", None) => PowerSeriesStream::new(generator, |n| {
            real(if is_prime(n) { BigRational::one() } else { BigRational::zero() })
        }),
        ("alternating", None) => family("geometric:-1/3", generator)?,
        _ => return None,
    };
    Some(stream)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gaussian_int, gaussian_ratio};

    fn first(spec: &str, n: u64) -> Vec<GaussianRational> {
        let s = family(spec, 1).unwrap();
        (0..n).map(|k| s.term(k)).collect()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(first("geometric:1/2", 3), vec![gaussian_int(1), gaussian_ratio(1, 2), gaussian_ratio(1, 4)]);
        assert_eq!(first("poly-geometric:1/2", 3), vec![gaussian_int(1), gaussian_int(1), gaussian_ratio(3, 4)]);
        assert_eq!(first("factorial", 4)[3], gaussian_ratio(1, 6));
        assert_eq!(first("catalan-recip", 5)[4], gaussian_ratio(1, 14));
        assert_eq!(first("fibonacci:1", 6), [1, 1, 2, 3, 5, 8].map(gaussian_int).to_vec());
        assert_eq!(first("prime", 8), [0, 0, 1, 1, 0, 1, 0, 1].map(gaussian_int).to_vec());
        assert_eq!(first("periodic:1,0,-1", 4), [1, 0, -1, 1].map(gaussian_int).to_vec());
        assert_eq!(first("polynomial:1,2,0,3", 5), [1, 2, 0, 3, 0].map(gaussian_int).to_vec());
        assert_eq!(first("alternating", 2)[1], gaussian_ratio(-1, 3));
    }

    #[test]
    fn unknown_specs() {
        assert!(family("geometric", 1).is_none());
        assert!(family("factorial:2", 1).is_none());
        assert!(family("periodic:", 1).is_none());
        assert!(family("nope", 1).is_none());
        for spec in CORPUS {
            assert!(family(spec, 1).is_some(), "{spec}");
        }
    }
}
