//! Finitely supported vectors, the group algebra, and its actions on
//! `L²(G)` and `L²(E) ⊕ ℂ`.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::freegroup::{
    act_edge_with, invert, multiply, EdgeOrStar, GeneratorSet, GroupError, ReducedWord, StarConvention,
};
use crate::scalar::{format_gaussian, GaussianRational, Scalar};

/// A finitely supported map `K -> S` with no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVec<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

/// Finitely supported element of `L²(G)`.
pub type GVector<S> = SparseVec<ReducedWord, S>;
/// Finitely supported element of `L²(E) ⊕ ℂ`.
pub type EVector<S> = SparseVec<EdgeOrStar, S>;

impl<K: Ord, S> Default for SparseVec<K, S> {
    fn default() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> SparseVec<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        let mut v = Self::new();
        v.add_term(k, S::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (K, S)>>(terms: I) -> Self {
        let mut v = Self::new();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    /// Adds `c` to the coefficient of `k`, dropping the entry if it cancels.
    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn get(&self, k: &K) -> Option<&S> {
        self.terms.get(k)
    }

    pub fn coefficient(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.iter().map(|(k, v)| (k.clone(), c.clone() * v.clone())))
    }

    /// `⟨v, w⟩ = Σ v_k · conj(w_k)`.
    pub fn inner(&self, other: &Self) -> S {
        self.iter().filter_map(|(k, v)| other.get(k).map(|w| v.clone() * w.conj())).fold(S::zero(), |acc, t| acc + t)
    }

    /// Maps keys through `f`; keys sent to `None` are dropped.
    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> Option<L>>(&self, mut f: F) -> SparseVec<L, S> {
        let mut out = SparseVec::new();
        for (k, c) in self.iter() {
            if let Some(l) = f(k) {
                out.add_term(l, c.clone());
            }
        }
        out
    }

    /// Entries where `keep` holds.
    pub fn filter_keys<F: FnMut(&K) -> bool>(&self, mut keep: F) -> Self {
        SparseVec { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }
}

impl<K: Ord + Clone, S: Scalar> Add for &SparseVec<K, S> {
    type Output = SparseVec<K, S>;

    fn add(self, rhs: Self) -> SparseVec<K, S> {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<K: Ord + Clone, S: Scalar> Neg for &SparseVec<K, S> {
    type Output = SparseVec<K, S>;

    fn neg(self) -> SparseVec<K, S> {
        SparseVec { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect() }
    }
}

impl<K: Ord + Clone, S: Scalar> Sub for &SparseVec<K, S> {
    type Output = SparseVec<K, S>;

    fn sub(self, rhs: Self) -> SparseVec<K, S> {
        self + &(-rhs)
    }
}

/// An element `Σ a_g g` of the group algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupAlgebraElement<S> {
    terms: SparseVec<ReducedWord, S>,
}

impl<S: Scalar> Default for GroupAlgebraElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GroupAlgebraElement<S> {
    pub fn zero() -> Self {
        GroupAlgebraElement { terms: SparseVec::new() }
    }

    pub fn one() -> Self {
        Self::word(ReducedWord::identity())
    }

    pub fn scalar(c: S) -> Self {
        Self::monomial(c, ReducedWord::identity())
    }

    pub fn word(w: ReducedWord) -> Self {
        Self::monomial(S::one(), w)
    }

    pub fn monomial(c: S, w: ReducedWord) -> Self {
        GroupAlgebraElement { terms: SparseVec::from_terms([(w, c)]) }
    }

    pub fn from_terms<I: IntoIterator<Item = (ReducedWord, S)>>(terms: I) -> Self {
        GroupAlgebraElement { terms: SparseVec::from_terms(terms) }
    }

    pub fn terms(&self) -> &SparseVec<ReducedWord, S> {
        &self.terms
    }

    pub fn iter(&self) -> btree_map::Iter<'_, ReducedWord, S> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ReducedWord> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &ReducedWord) -> S {
        self.terms.coefficient(w)
    }

    pub fn constant_term(&self) -> S {
        self.coefficient(&ReducedWord::identity())
    }

    /// Largest word length in the support; zero for the zero element.
    pub fn support_radius(&self) -> usize {
        self.support().map(ReducedWord::len).max().unwrap_or(0)
    }

    /// Largest number of inverse letters in a support word.
    pub fn negative_depth(&self) -> usize {
        self.support().map(ReducedWord::negative_letters).max().unwrap_or(0)
    }

    /// `Some((c, g))` when the element is `c·g`.
    pub fn as_monomial(&self) -> Option<(&S, &ReducedWord)> {
        let mut it = self.iter();
        match (it.next(), it.next()) {
            (Some((w, c)), None) => Some((c, w)),
            _ => None,
        }
    }

    pub fn uses_only(&self, gens: &GeneratorSet) -> bool {
        self.support().all(|w| gens.contains_word(w))
    }

    pub fn check_generators(&self, gens: &GeneratorSet) -> Result<(), GroupError> {
        if self.uses_only(gens) {
            Ok(())
        } else {
            Err(GroupError::GeneratorMismatch { rank: gens.rank() })
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        GroupAlgebraElement { terms: self.terms.scale(c) }
    }

    /// Terms with word length at most `radius`.
    pub fn truncate(&self, radius: usize) -> Self {
        GroupAlgebraElement { terms: self.terms.filter_keys(|w| w.len() <= radius) }
    }

    /// Convolution product, truncated to words of length at most `radius`.
    pub fn mul_truncated(&self, other: &Self, radius: usize) -> Self {
        let mut out = SparseVec::new();
        for (g, a) in self.iter() {
            for (h, b) in other.iter() {
                let gh = multiply(g, h);
                if gh.len() <= radius {
                    out.add_term(gh, a.clone() * b.clone());
                }
            }
        }
        GroupAlgebraElement { terms: out }
    }

    /// `(Σ a_g g)* = Σ conj(a_g) g^-1`.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.iter().map(|(g, a)| (invert(g), a.conj())))
    }

    /// Coefficient of the identity.
    pub fn trace(&self) -> S {
        self.constant_term()
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> S {
        self.iter().fold(S::zero(), |acc, (_, c)| acc + c.clone())
    }

    pub fn map_scalars<T: Scalar, F: FnMut(&S) -> T>(&self, mut f: F) -> GroupAlgebraElement<T> {
        GroupAlgebraElement::from_terms(self.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Left multiplication on `L²(G)`.
    pub fn act_on_g(&self, v: &GVector<S>) -> GVector<S> {
        let mut out = SparseVec::new();
        for (g, a) in self.iter() {
            for (h, b) in v.iter() {
                out.add_term(multiply(g, h), a.clone() * b.clone());
            }
        }
        out
    }

    /// Left action on `L²(E) ⊕ ℂ`: free on edges, `*` per the convention.
    pub fn act_on_e(&self, w: &EVector<S>, convention: StarConvention) -> EVector<S> {
        let mut out = SparseVec::new();
        for (g, a) in self.iter() {
            for (e, b) in w.iter() {
                if let Some(ge) = act_edge_with(g, e, convention) {
                    out.add_term(ge, a.clone() * b.clone());
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn add(self, rhs: Self) -> GroupAlgebraElement<S> {
        GroupAlgebraElement { terms: &self.terms + &rhs.terms }
    }
}

impl<S: Scalar> Sub for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn sub(self, rhs: Self) -> GroupAlgebraElement<S> {
        GroupAlgebraElement { terms: &self.terms - &rhs.terms }
    }
}

impl<S: Scalar> Neg for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn neg(self) -> GroupAlgebraElement<S> {
        GroupAlgebraElement { terms: -&self.terms }
    }
}

impl<S: Scalar> Mul for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn mul(self, rhs: Self) -> GroupAlgebraElement<S> {
        GroupAlgebraElement { terms: self.act_on_g(&rhs.terms) }
    }
}

impl<S: Scalar> Add for GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;

    fn neg(self) -> Self {
        -&self
    }
}

impl GroupAlgebraElement<GaussianRational> {
    /// Text form in the expression syntax, e.g. `1 - 1/2*x + i*y^-1*x`.
    pub fn format(&self, gens: &GeneratorSet) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.iter().enumerate() {
            let negative_real = c.im.is_zero() && c.re < Zero::zero();
            let negative_imaginary = c.re.is_zero() && c.im < Zero::zero();
            let (negative, magnitude) =
                if negative_real || negative_imaginary { (true, -c.clone()) } else { (false, c.clone()) };
            let coeff = if magnitude.re.is_zero() || magnitude.im.is_zero() {
                format_gaussian(&magnitude)
            } else {
                format!("({})", format_gaussian(&magnitude))
            };
            let body = match (w.is_identity(), magnitude.is_one()) {
                (true, _) => coeff,
                (false, true) => gens.format_word(w),
                (false, false) => format!("{}*{}", coeff, gens.format_word(w)),
            };
            match (k, negative) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}
