//! Windowed commutation defect `Pu - uP` of a series `u`, and the Hankel
//! rank oracle for one-variable coefficient sequences.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::stream::{SeriesStream, StreamError};
use crate::freegroup::{invert, multiply, pi, pi_inverse, EdgeOrStar, GeneratorSet, ReducedWord, StarConvention};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("window {window} is too small for a plateau of {plateau}; need window ≥ plateau + 2")]
    Window { window: usize, plateau: usize },
    #[error("plateau length must be at least 1")]
    Plateau,
    #[error(transparent)]
    Stream(#[from] StreamError),
}

/// `table[j][k]` is the rank of the defect block with columns in the
/// radius-`j` ball of `G` and rows in the radius-`k` ball of `E ∪ {*}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub jmax: usize,
    pub kmax: usize,
    pub table: Vec<Vec<usize>>,
}

impl RankProfile {
    pub fn get(&self, j: usize, k: usize) -> usize {
        self.table[j][k]
    }

    pub fn diagonal(&self) -> Vec<usize> {
        (0..=self.jmax.min(self.kmax)).map(|j| self.table[j][j]).collect()
    }

    pub fn is_monotone(&self) -> bool {
        (0..=self.jmax).all(|j| {
            (0..=self.kmax).all(|k| {
                (j == 0 || self.table[j - 1][k] <= self.table[j][k])
                    && (k == 0 || self.table[j][k - 1] <= self.table[j][k])
            })
        })
    }
}

/// The defect matrix on the radius-`jmax` column ball and radius-`kmax`
/// row ball. Both label lists are sorted by length, so every smaller
/// window is a leading submatrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectWindow<S> {
    pub cols: Vec<ReducedWord>,
    pub rows: Vec<EdgeOrStar>,
    pub entries: Matrix<S>,
}

fn up_entry<S: Scalar, T: SeriesStream<S> + ?Sized>(
    u: &T,
    e: &EdgeOrStar,
    image: &EdgeOrStar,
    convention: StarConvention,
) -> Result<S, StreamError> {
    match (image, e) {
        (EdgeOrStar::Star, EdgeOrStar::Star) => match convention {
            StarConvention::Zero => u.coefficient(&ReducedWord::identity()),
            StarConvention::Strict => Ok(S::zero()),
            StarConvention::Unital => u.augmentation().ok_or(StreamError::NoAugmentation),
        },
        (EdgeOrStar::Edge(from), EdgeOrStar::Edge(to)) if from.gen == to.gen => {
            u.coefficient(&multiply(&to.base, &invert(&from.base)))
        }
        _ => Ok(S::zero()),
    }
}

pub fn defect_window<S: Scalar, T: SeriesStream<S> + ?Sized>(
    gens: &GeneratorSet,
    u: &T,
    jmax: usize,
    kmax: usize,
    convention: StarConvention,
) -> Result<DefectWindow<S>, StreamError> {
    let cols = gens.ball(jmax);
    let rows: Vec<EdgeOrStar> = gens.ball(kmax).iter().map(pi).collect();
    let row_words: Vec<ReducedWord> = rows.iter().map(pi_inverse).collect();
    let columns: Vec<Vec<S>> = cols
        .par_iter()
        .map(|g| {
            let g_inv = invert(g);
            let image = pi(g);
            rows.iter()
                .zip(&row_words)
                .map(|(e, w)| Ok(u.coefficient(&multiply(w, &g_inv))? - up_entry(u, e, &image, convention)?))
                .collect::<Result<Vec<S>, StreamError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut entries = Matrix::zeros(rows.len(), cols.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, v) in col.into_iter().enumerate() {
            entries.set(i, j, v);
        }
    }
    Ok(DefectWindow { cols, rows, entries })
}

fn ball_sizes(rank: usize, radius: usize) -> Vec<usize> {
    // |B_r| = 1 + 2n((2n-1)^r - 1)/(2n-2), or 2r + 1 when n = 1
    let mut sizes = vec![1usize];
    let mut sphere = 2 * rank;
    for _ in 0..radius {
        let last = *sizes.last().unwrap();
        sizes.push(last + if rank == 0 { 0 } else { sphere });
        sphere *= (2 * rank).saturating_sub(1).max(1);
    }
    sizes
}

pub fn windowed_profile<S: Scalar, T: SeriesStream<S> + ?Sized>(
    gens: &GeneratorSet,
    u: &T,
    jmax: usize,
    kmax: usize,
    convention: StarConvention,
) -> Result<RankProfile, StreamError> {
    let window = defect_window(gens, u, jmax, kmax, convention)?;
    let ncols = ball_sizes(gens.rank(), jmax);
    let nrows = ball_sizes(gens.rank(), kmax);
    let cells: Vec<(usize, usize)> = (0..=jmax).flat_map(|j| (0..=kmax).map(move |k| (j, k))).collect();
    let ranks: Vec<usize> = cells
        .par_iter()
        .map(|&(j, k)| {
            let rows: Vec<usize> = (0..nrows[k]).collect();
            let cols: Vec<usize> = (0..ncols[j]).collect();
            window.entries.select(&rows, &cols).rank()
        })
        .collect();
    let table = ranks.chunks(kmax + 1).map(<[usize]>::to_vec).collect();
    Ok(RankProfile { jmax, kmax, table })
}

/// `ρ(j, j)` for `j = 0..=window`.
pub fn diagonal_profile<S: Scalar, T: SeriesStream<S> + ?Sized>(
    gens: &GeneratorSet,
    u: &T,
    window: usize,
    convention: StarConvention,
) -> Result<Vec<usize>, StreamError> {
    let defect = defect_window(gens, u, window, window, convention)?;
    let sizes = ball_sizes(gens.rank(), window);
    Ok((0..=window)
        .into_par_iter()
        .map(|j| {
            let idx: Vec<usize> = (0..sizes[j]).collect();
            defect.entries.select(&idx, &idx).rank()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Stabilized { rank: usize },
    Growing { increments: Vec<usize> },
}

impl Verdict {
    pub fn is_stabilized(&self) -> bool {
        matches!(self, Verdict::Stabilized { .. })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Stabilized { rank } => write!(f, "STABILIZED({rank})"),
            Verdict::Growing { increments } => {
                let inc: Vec<String> = increments.iter().map(usize::to_string).collect();
                write!(f, "GROWING(increments {})", inc.join(","))
            }
        }
    }
}

/// Stabilized when the last `plateau` increments of a nondecreasing rank
/// sequence all vanish. Growing verdicts carry those increments.
pub fn plateau_verdict(ranks: &[usize], plateau: usize) -> Verdict {
    let increments: Vec<usize> = ranks.windows(2).map(|w| w[1].saturating_sub(w[0])).collect();
    let tail = &increments[increments.len().saturating_sub(plateau)..];
    if tail.len() == plateau && tail.iter().all(|&d| d == 0) {
        Verdict::Stabilized { rank: *ranks.last().unwrap() }
    } else {
        Verdict::Growing { increments: tail.to_vec() }
    }
}

/// A semi-decision: the verdict only describes the window examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub window: usize,
    pub plateau: usize,
    pub diagonal: Vec<usize>,
}

pub fn classify<S: Scalar, T: SeriesStream<S> + ?Sized>(
    gens: &GeneratorSet,
    u: &T,
    window: usize,
    plateau: usize,
    convention: StarConvention,
) -> Result<Classification, ProfileError> {
    if plateau == 0 {
        return Err(ProfileError::Plateau);
    }
    if window < plateau + 2 {
        return Err(ProfileError::Window { window, plateau });
    }
    let diagonal = diagonal_profile(gens, u, window, convention)?;
    Ok(Classification { verdict: plateau_verdict(&diagonal, plateau), window, plateau, diagonal })
}

/// Ranks of the `m × m` Hankel matrices `(c_{i+j})` for `m = 1..=order`.
pub fn hankel_rank_profile<S: Scalar>(coeffs: &[S], order: usize) -> Result<Vec<usize>, StreamError> {
    let needed = (2 * order).saturating_sub(1);
    if coeffs.len() < needed {
        return Err(StreamError::Truncated { needed, available: coeffs.len() });
    }
    Ok((1..=order)
        .into_par_iter()
        .map(|m| Matrix::from_rows((0..m).map(|i| coeffs[i..i + m].to_vec()).collect()).rank())
        .collect())
}

/// `c_n` = coefficient of `xⁿ` for `n < len`, where `x` is the generator
/// with the given index.
pub fn power_coefficients<S: Scalar, T: SeriesStream<S> + ?Sized>(
    u: &T,
    generator: u32,
    len: usize,
) -> Result<Vec<S>, StreamError> {
    (0..len).map(|n| u.coefficient(&ReducedWord::power(generator, n as i64))).collect()
}
