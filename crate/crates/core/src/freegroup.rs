//! Free groups on finitely many generators, the edge set of their Cayley
//! tree, and the geodesic bijection `pi: G -> E ∪ {*}`.
//!
//! Letters are signed generator indices starting at 1: `k` is the k-th
//! generator and `-k` its inverse. Words are kept freely reduced at all
//! times and ordered length-lexicographically (`x < x^-1 < y < y^-1`).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator index {index} is invalid for a group of rank {rank}")]
    InvalidGenerator { index: Letter, rank: usize },
    #[error("a generating set needs at least one generator")]
    EmptyGeneratorSet,
    #[error("generator name `{0}` is repeated")]
    DuplicateGenerator(String),
    #[error("`{0}` is not a valid generator name")]
    BadGeneratorName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed group description `{0}`, expected e.g. F(x,y)")]
    BadGroup(String),
    #[error("malformed word `{0}`")]
    BadWord(String),
    #[error("element uses generators outside a group of rank {rank}")]
    GeneratorMismatch { rank: usize },
}

/// How group elements act on the extra one-dimensional summand `*`.
///
/// `Zero`: `g* = 0` for every `g ≠ 1` while the identity fixes `*`, so an
/// element `α` acts on `*` through its trace. This is the convention under
/// which the unit of the group algebra is the identity operator.
/// `Strict`: `g* = 0` for every `g`, the identity included.
/// `Unital`: the trivial representation `g* = *`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StarConvention {
    #[default]
    Zero,
    Strict,
    Unital,
}

impl StarConvention {
    pub fn name(self) -> &'static str {
        match self {
            StarConvention::Zero => "zero",
            StarConvention::Strict => "strict",
            StarConvention::Unital => "unital",
        }
    }
}

impl std::str::FromStr for StarConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(StarConvention::Zero),
            "strict" => Ok(StarConvention::Strict),
            "unital" => Ok(StarConvention::Unital),
            other => Err(format!("unknown star convention `{other}` (expected zero|strict|unital)")),
        }
    }
}

/// Names of the free generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<I, T>(names: I) -> Result<Self, GroupError>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(GroupError::EmptyGeneratorSet);
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !is_identifier(name) || name == "i" {
                return Err(GroupError::BadGeneratorName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(GroupError::DuplicateGenerator(name.clone()));
            }
        }
        Ok(GeneratorSet { names })
    }

    /// Generators `x`, `y`, `z`, ... for small ranks, `x1..xn` otherwise.
    pub fn standard(rank: usize) -> Self {
        let names: Vec<String> = if (1..=3).contains(&rank) {
            ["x", "y", "z"][..rank].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=rank.max(1)).map(|k| format!("x{k}")).collect()
        };
        GeneratorSet { names }
    }

    /// Parses `F(x,y)` (the `F` is optional: `x,y` also works).
    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let t = text.trim();
        let inner = match t.strip_prefix('F') {
            Some(rest) => rest
                .trim()
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| GroupError::BadGroup(text.to_string()))?,
            None => t,
        };
        GeneratorSet::new(inner.split(',').map(|s| s.trim().to_string()))
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|p| p as Letter + 1)
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        let name = &self.names[(letter.unsigned_abs() - 1) as usize];
        if letter > 0 {
            name.clone()
        } else {
            format!("{name}^-1")
        }
    }

    pub fn check_letter(&self, letter: Letter) -> Result<(), GroupError> {
        if letter == 0 || letter.unsigned_abs() as usize > self.rank() {
            Err(GroupError::InvalidGenerator { index: letter, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    /// Free reduction with generator validation.
    pub fn reduce(&self, letters: &[Letter]) -> Result<ReducedWord, GroupError> {
        for &l in letters {
            self.check_letter(l)?;
        }
        Ok(reduce(letters))
    }

    pub fn contains_word(&self, w: &ReducedWord) -> bool {
        w.letters().iter().all(|&l| self.check_letter(l).is_ok())
    }

    pub fn generator(&self, index: usize) -> ReducedWord {
        ReducedWord(vec![index as Letter])
    }

    pub fn format_word(&self, w: &ReducedWord) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.0.iter().map(|&l| self.letter_name(l)).collect::<Vec<_>>().join("*")
    }

    pub fn format_edge(&self, e: &EdgeOrStar) -> String {
        match e {
            EdgeOrStar::Star => "*".to_string(),
            EdgeOrStar::Edge(edge) => {
                format!("edge({},{})", self.format_word(&edge.base), self.names[edge.gen as usize - 1])
            }
        }
    }

    /// Parses `x*y^-1*x`; `1` is the identity.
    pub fn parse_word(&self, text: &str) -> Result<ReducedWord, GroupError> {
        let t = text.trim();
        if t == "1" {
            return Ok(ReducedWord::identity());
        }
        let mut letters = Vec::new();
        for part in t.split('*') {
            let part = part.trim();
            let (name, inverse) = match part.strip_suffix("^-1") {
                Some(n) => (n.trim(), true),
                None => (part, false),
            };
            if name == "1" && !inverse {
                continue;
            }
            let idx = self.index_of(name).ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
            letters.push(if inverse { -idx } else { idx });
        }
        if letters.is_empty() {
            return Err(GroupError::BadWord(text.to_string()));
        }
        Ok(reduce(&letters))
    }

    /// Parses an edge label as printed by [`GeneratorSet::format_edge`].
    pub fn parse_edge(&self, text: &str) -> Result<EdgeOrStar, GroupError> {
        let t = text.trim();
        if t == "*" {
            return Ok(EdgeOrStar::Star);
        }
        let inner = t
            .strip_prefix("edge(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| GroupError::BadWord(text.to_string()))?;
        let (base, gen) = inner.rsplit_once(',').ok_or_else(|| GroupError::BadWord(text.to_string()))?;
        let gen = self.index_of(gen.trim()).ok_or_else(|| GroupError::UnknownGenerator(gen.trim().to_string()))?;
        Ok(EdgeOrStar::Edge(Edge::new(self.parse_word(base)?, gen as u32)))
    }

    /// All reduced words of length at most `radius`, length-lex ordered.
    pub fn ball(&self, radius: usize) -> Vec<ReducedWord> {
        ball(self.rank(), radius)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord(Vec<Letter>);

fn letter_key(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().map(|&l| letter_key(l)).cmp(other.0.iter().map(|&l| letter_key(l))))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        assert!(l != 0, "letter 0 does not name a generator");
        ReducedWord(vec![l])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// True when every letter is a positive generator (the word lies in the
    /// free monoid on the generators).
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&l| l > 0)
    }

    pub fn negative_letters(&self) -> usize {
        self.0.iter().filter(|&&l| l < 0).count()
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// `x^n` for the generator with the given index (`n` may be negative).
    pub fn power(index: u32, n: i64) -> Self {
        let l = index as Letter;
        let letter = if n >= 0 { l } else { -l };
        ReducedWord(vec![letter; n.unsigned_abs() as usize])
    }

    /// Exponent of `w` when it is a power of a single generator.
    pub fn as_power(&self) -> Option<(u32, i64)> {
        let first = *self.0.first()?;
        self.0.iter().all(|&l| l == first).then(|| (first.unsigned_abs(), first.signum() as i64 * self.0.len() as i64))
    }
}

/// Free reduction by a single stack pass; the result does not depend on the
/// order in which adjacent cancellations are performed.
pub fn reduce(letters: &[Letter]) -> ReducedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    ReducedWord(out)
}

pub fn multiply(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    let c = cancellation_length(u, v);
    let mut out = Vec::with_capacity(u.len() + v.len() - 2 * c);
    out.extend_from_slice(&u.0[..u.len() - c]);
    out.extend_from_slice(&v.0[c..]);
    ReducedWord(out)
}

pub fn invert(g: &ReducedWord) -> ReducedWord {
    ReducedWord(g.0.iter().rev().map(|&l| -l).collect())
}

/// Length of the longest `t` with `u` ending in `t` and `v` starting with
/// `t^-1`; `|uv| = |u| + |v| - 2c`.
pub fn cancellation_length(u: &ReducedWord, v: &ReducedWord) -> usize {
    u.0.iter().rev().zip(v.0.iter()).take_while(|(a, b)| **a == -**b).count()
}

/// Words `b` for which `pi(g b) != g·pi(b)`: the inverses of the suffixes of
/// `g`, the empty suffix included. Always `|g| + 1` elements.
pub fn equivariance_failure_set(g: &ReducedWord) -> BTreeSet<ReducedWord> {
    (0..=g.len()).map(|k| invert(&ReducedWord(g.0[k..].to_vec()))).collect()
}

/// A Cayley-tree edge `{base, base·x}` with `x` a positive generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub base: ReducedWord,
    pub gen: u32,
}

impl Edge {
    pub fn new(base: ReducedWord, gen: u32) -> Self {
        assert!(gen >= 1, "edge generators are positive");
        Edge { base, gen }
    }
}

/// An element of `E ∪ {*}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EdgeOrStar {
    Star,
    Edge(Edge),
}

impl EdgeOrStar {
    /// Distance label used for balls in `E ∪ {*}`: the length of the
    /// preimage under `pi`.
    pub fn radius(&self) -> usize {
        pi_inverse(self).len()
    }
}

impl Ord for EdgeOrStar {
    fn cmp(&self, other: &Self) -> Ordering {
        pi_inverse(self).cmp(&pi_inverse(other))
    }
}

impl PartialOrd for EdgeOrStar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The terminal edge of the geodesic from the identity to `g`.
pub fn pi(g: &ReducedWord) -> EdgeOrStar {
    match g.last_letter() {
        None => EdgeOrStar::Star,
        Some(l) if l > 0 => {
            let base = ReducedWord(g.0[..g.len() - 1].to_vec());
            EdgeOrStar::Edge(Edge::new(base, l as u32))
        }
        Some(l) => EdgeOrStar::Edge(Edge::new(g.clone(), l.unsigned_abs())),
    }
}

/// The endpoint of the edge farther from the identity.
pub fn pi_inverse(e: &EdgeOrStar) -> ReducedWord {
    match e {
        EdgeOrStar::Star => ReducedWord::identity(),
        EdgeOrStar::Edge(Edge { base, gen }) => {
            let x = *gen as Letter;
            if base.last_letter() == Some(-x) {
                base.clone()
            } else {
                let mut w = base.0.clone();
                w.push(x);
                ReducedWord(w)
            }
        }
    }
}

/// Left action on `E ∪ {*}`. `None` is the zero vector.
pub fn act_edge_with(g: &ReducedWord, e: &EdgeOrStar, convention: StarConvention) -> Option<EdgeOrStar> {
    match e {
        EdgeOrStar::Star => match convention {
            StarConvention::Zero if g.is_identity() => Some(EdgeOrStar::Star),
            StarConvention::Zero | StarConvention::Strict => None,
            StarConvention::Unital => Some(EdgeOrStar::Star),
        },
        EdgeOrStar::Edge(edge) => Some(EdgeOrStar::Edge(Edge::new(multiply(g, &edge.base), edge.gen))),
    }
}

/// Left action under [`StarConvention::Zero`].
pub fn act_edge(g: &ReducedWord, e: &EdgeOrStar) -> Option<EdgeOrStar> {
    act_edge_with(g, e, StarConvention::Zero)
}

/// All reduced words over `rank` generators of length at most `radius`.
pub fn ball(rank: usize, radius: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::identity()];
    let mut frontier = vec![ReducedWord::identity()];
    let letters: Vec<Letter> = (1..=rank as Letter).flat_map(|k| [k, -k]).collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.last_letter() != Some(-l) {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(ReducedWord(v));
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Words at Cayley-graph distance one from `w`.
pub fn neighbors(rank: usize, w: &ReducedWord) -> Vec<ReducedWord> {
    (1..=rank as Letter).flat_map(|k| [k, -k]).map(|l| multiply(w, &ReducedWord::letter(l))).collect()
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&GeneratorSet::standard(self.max_generator() as usize).format_word(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[Letter]) -> ReducedWord {
        reduce(letters)
    }

    const X: Letter = 1;
    const Y: Letter = 2;

    #[test]
    fn reduction_examples() {
        assert_eq!(w(&[]), ReducedWord::identity());
        assert_eq!(w(&[X, -X]), ReducedWord::identity());
        assert_eq!(w(&[X, Y, -Y, X]), ReducedWord(vec![X, X]));
        let gens = GeneratorSet::standard(2);
        assert_eq!(gens.reduce(&[X, 3]), Err(GroupError::InvalidGenerator { index: 3, rank: 2 }));
        assert!(gens.reduce(&[0]).is_err());
    }

    #[test]
    fn multiplication_examples() {
        assert!(multiply(&w(&[X]), &w(&[-X])).is_identity());
        assert_eq!(multiply(&w(&[X, Y]), &w(&[-Y, X])), w(&[X, X]));
        let g = w(&[X, -Y, X]);
        assert_eq!(multiply(&g, &ReducedWord::identity()), g);
    }

    #[test]
    fn inversion_examples() {
        assert!(invert(&ReducedWord::identity()).is_identity());
        assert_eq!(invert(&w(&[X, Y])), w(&[-Y, -X]));
        let g = w(&[X, -Y, Y, Y, -X]);
        assert_eq!(invert(&invert(&g)), g);
    }

    #[test]
    fn cancellation_examples() {
        assert_eq!(cancellation_length(&w(&[X]), &w(&[Y])), 0);
        assert_eq!(cancellation_length(&w(&[X, Y]), &w(&[-Y, -X])), 2);
        assert_eq!(cancellation_length(&w(&[X, Y]), &w(&[-Y, X])), 1);
    }

    #[test]
    fn failure_set_examples() {
        let id: BTreeSet<_> = [ReducedWord::identity()].into();
        assert_eq!(equivariance_failure_set(&ReducedWord::identity()), id);
        let fx: BTreeSet<_> = [ReducedWord::identity(), w(&[-X])].into();
        assert_eq!(equivariance_failure_set(&w(&[X])), fx);
        let fxy: BTreeSet<_> = [ReducedWord::identity(), w(&[-Y]), w(&[-Y, -X])].into();
        assert_eq!(equivariance_failure_set(&w(&[X, Y])), fxy);
    }

    #[test]
    fn pi_examples() {
        assert_eq!(pi(&ReducedWord::identity()), EdgeOrStar::Star);
        assert_eq!(pi(&w(&[X])), EdgeOrStar::Edge(Edge::new(ReducedWord::identity(), 1)));
        assert_eq!(pi(&w(&[-X])), EdgeOrStar::Edge(Edge::new(w(&[-X]), 1)));
        assert!(pi_inverse(&EdgeOrStar::Star).is_identity());
        assert_eq!(pi_inverse(&EdgeOrStar::Edge(Edge::new(ReducedWord::identity(), 1))), w(&[X]));
    }

    #[test]
    fn action_examples() {
        let e = EdgeOrStar::Edge(Edge::new(w(&[Y, -X]), 2));
        assert_eq!(act_edge(&ReducedWord::identity(), &e), Some(e.clone()));
        let e = EdgeOrStar::Edge(Edge::new(w(&[-X]), 1));
        assert_eq!(act_edge(&w(&[X]), &e), Some(EdgeOrStar::Edge(Edge::new(ReducedWord::identity(), 1))));
        assert_eq!(act_edge(&w(&[X]), &EdgeOrStar::Star), None);
        assert_eq!(act_edge(&ReducedWord::identity(), &EdgeOrStar::Star), Some(EdgeOrStar::Star));
        assert_eq!(act_edge_with(&ReducedWord::identity(), &EdgeOrStar::Star, StarConvention::Strict), None);
        assert_eq!(act_edge_with(&w(&[X]), &EdgeOrStar::Star, StarConvention::Unital), Some(EdgeOrStar::Star));
    }

    #[test]
    fn ball_sizes_and_order() {
        // 1 + 2r(2r-1)^{k-1} summed
        assert_eq!(ball(2, 0).len(), 1);
        assert_eq!(ball(2, 1).len(), 5);
        assert_eq!(ball(2, 2).len(), 17);
        assert_eq!(ball(1, 5).len(), 11);
        let b = ball(2, 3);
        assert!(b.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn pi_maps_balls_onto_inner_edges() {
        let b = ball(2, 4);
        let images: BTreeSet<EdgeOrStar> = b.iter().map(pi).collect();
        assert_eq!(images.len(), b.len());
        let in_ball: BTreeSet<&ReducedWord> = b.iter().collect();
        // every edge with both endpoints in the ball is hit
        for h in &b {
            for k in 1..=2u32 {
                let far = multiply(h, &ReducedWord::letter(k as Letter));
                if in_ball.contains(&far) {
                    assert!(images.contains(&EdgeOrStar::Edge(Edge::new(h.clone(), k))));
                }
            }
        }
    }

    #[test]
    fn word_text_round_trip() {
        let gens = GeneratorSet::parse("F(x,y)").unwrap();
        let g = gens.parse_word("x*y^-1*x").unwrap();
        assert_eq!(g, w(&[X, -Y, X]));
        assert_eq!(gens.format_word(&g), "x*y^-1*x");
        assert!(gens.parse_word("1").unwrap().is_identity());
        assert!(matches!(gens.parse_word("z"), Err(GroupError::UnknownGenerator(_))));
        let e = pi(&g);
        assert_eq!(gens.parse_edge(&gens.format_edge(&e)).unwrap(), e);
    }

    #[test]
    fn generator_set_validation() {
        assert!(GeneratorSet::parse("F()").is_err());
        assert!(GeneratorSet::parse("F(x,x)").is_err());
        assert!(GeneratorSet::parse("F(i)").is_err());
        assert_eq!(GeneratorSet::parse("F(a, b, c)").unwrap().rank(), 3);
    }
}
