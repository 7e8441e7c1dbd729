//! Coefficient streams `g ↦ c_g` of formal series over the free group.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GroupAlgebraElement;
use crate::freegroup::{GeneratorSet, GroupError, ReducedWord};
use crate::scalar::{format_rational, parse_rational, GaussianRational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StreamError {
    #[error("coefficient of a word of length {needed} requested, stream is known up to radius {available}")]
    Truncated { needed: usize, available: usize },
    #[error("the unital convention needs the augmentation, which this stream cannot provide")]
    NoAugmentation,
    #[error("bad stream data: {0}")]
    BadData(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub trait SeriesStream<S>: Send + Sync {
    fn coefficient(&self, w: &ReducedWord) -> Result<S, StreamError>;

    /// Radius up to which coefficients are known; `None` when unbounded.
    fn radius(&self) -> Option<usize> {
        None
    }

    /// A superset of the support inside the ball of the given radius, when
    /// one smaller than the ball is known.
    fn support_hint(&self, _radius: usize) -> Option<BTreeSet<ReducedWord>> {
        None
    }

    /// Sum of all coefficients, available for finitely supported streams.
    fn augmentation(&self) -> Option<S> {
        None
    }
}

/// A finitely supported series.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteStream<S>(pub GroupAlgebraElement<S>);

impl<S: Scalar> SeriesStream<S> for FiniteStream<S> {
    fn coefficient(&self, w: &ReducedWord) -> Result<S, StreamError> {
        Ok(self.0.coefficient(w))
    }

    fn support_hint(&self, radius: usize) -> Option<BTreeSet<ReducedWord>> {
        Some(self.0.support().filter(|w| w.len() <= radius).cloned().collect())
    }

    fn augmentation(&self) -> Option<S> {
        Some(self.0.augmentation())
    }
}

/// `Σ c_n xⁿ` for a single generator `x` and a closed-form sequence.
#[derive(Clone)]
pub struct PowerSeriesStream<S> {
    generator: u32,
    seq: Arc<dyn Fn(u64) -> S + Send + Sync>,
}

impl<S> PowerSeriesStream<S> {
    pub fn new(generator: u32, seq: impl Fn(u64) -> S + Send + Sync + 'static) -> Self {
        PowerSeriesStream { generator, seq: Arc::new(seq) }
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn term(&self, n: u64) -> S {
        (self.seq)(n)
    }
}

impl<S> std::fmt::Debug for PowerSeriesStream<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PowerSeriesStream").field("generator", &self.generator).finish_non_exhaustive()
    }
}

impl<S: Scalar> SeriesStream<S> for PowerSeriesStream<S> {
    fn coefficient(&self, w: &ReducedWord) -> Result<S, StreamError> {
        Ok(match w.as_power() {
            _ if w.is_identity() => self.term(0),
            Some((g, n)) if g == self.generator && n > 0 => self.term(n as u64),
            _ => S::zero(),
        })
    }

    fn support_hint(&self, radius: usize) -> Option<BTreeSet<ReducedWord>> {
        Some((0..=radius as i64).map(|n| ReducedWord::power(self.generator, n)).collect())
    }
}

/// Coefficients known exactly inside a ball, such as a truncated expansion
/// or a stream read from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedStream<S> {
    pub coeffs: GroupAlgebraElement<S>,
    pub radius: usize,
}

impl<S: Scalar> SeriesStream<S> for TruncatedStream<S> {
    fn coefficient(&self, w: &ReducedWord) -> Result<S, StreamError> {
        if w.len() > self.radius {
            return Err(StreamError::Truncated { needed: w.len(), available: self.radius });
        }
        Ok(self.coeffs.coefficient(w))
    }

    fn radius(&self) -> Option<usize> {
        Some(self.radius)
    }

    fn support_hint(&self, radius: usize) -> Option<BTreeSet<ReducedWord>> {
        Some(self.coeffs.support().filter(|w| w.len() <= radius).cloned().collect())
    }
}

/// One coefficient in the on-disk format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientJson {
    pub word: String,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".to_string()
}

/// `{"coeffs": [{"word", "re", "im"}], "radius": N}`; rationals are
/// written as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamJson {
    pub coeffs: Vec<CoefficientJson>,
    pub radius: usize,
}

impl StreamJson {
    pub fn from_element(gens: &GeneratorSet, coeffs: &GroupAlgebraElement<GaussianRational>, radius: usize) -> Self {
        StreamJson {
            coeffs: coeffs
                .iter()
                .map(|(w, c)| CoefficientJson {
                    word: gens.format_word(w),
                    re: format_rational(&c.re),
                    im: format_rational(&c.im),
                })
                .collect(),
            radius,
        }
    }

    pub fn to_stream(&self, gens: &GeneratorSet) -> Result<TruncatedStream<GaussianRational>, StreamError> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let w = gens.parse_word(&c.word)?;
            if w.len() > self.radius {
                return Err(StreamError::BadData(format!("word {} lies outside radius {}", c.word, self.radius)));
            }
            let re = parse_rational(&c.re).ok_or_else(|| StreamError::BadData(format!("bad number {:?}", c.re)))?;
            let im = parse_rational(&c.im).ok_or_else(|| StreamError::BadData(format!("bad number {:?}", c.im)))?;
            terms.push((w, GaussianRational::new(re, im)));
        }
        Ok(TruncatedStream { coeffs: GroupAlgebraElement::from_terms(terms), radius: self.radius })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::reduce;
    use crate::scalar::{gaussian_int, gaussian_ratio};

    #[test]
    fn power_series_lives_on_positive_powers() {
        let s = PowerSeriesStream::new(1, |n| gaussian_int(n as i64 + 1));
        assert_eq!(s.coefficient(&ReducedWord::identity()).unwrap(), gaussian_int(1));
        assert_eq!(s.coefficient(&reduce(&[1, 1])).unwrap(), gaussian_int(3));
        assert_eq!(s.coefficient(&reduce(&[-1])).unwrap(), gaussian_int(0));
        assert_eq!(s.coefficient(&reduce(&[2])).unwrap(), gaussian_int(0));
    }

    #[test]
    fn truncated_stream_reports_its_radius() {
        let gens = GeneratorSet::standard(2);
        let e = GroupAlgebraElement::from_terms([(reduce(&[1]), gaussian_ratio(1, 2))]);
        let s = TruncatedStream { coeffs: e, radius: 2 };
        assert_eq!(s.coefficient(&reduce(&[1])).unwrap(), gaussian_ratio(1, 2));
        assert_eq!(s.coefficient(&reduce(&[1, 2, 2])), Err(StreamError::Truncated { needed: 3, available: 2 }));
        let json = StreamJson::from_element(&gens, &s.coeffs, 2);
        let text = serde_json::to_string(&json).unwrap();
        let back: StreamJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_stream(&gens).unwrap(), s);
    }
}
