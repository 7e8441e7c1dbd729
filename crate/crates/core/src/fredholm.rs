//! The unitary `P: L²(G) -> L²(E) ⊕ ℂ` induced by `pi`, and exact finite
//! matrices of the defect operators `sPb - aPt`, `sP⁻¹b - aP⁻¹t` and
//! `sFb - aFt` with `F = [[0, P⁻¹], [P, 0]]`.
//!
//! Column supports are not guessed. For `h` in the supports of `b` and `t`,
//! `P(h·e_g) = h·P(e_g)` for every `g` outside the failure set `F_h`, so when
//! `a·t = s·b` every column outside `U = ⋃ F_h` vanishes. The matrices are
//! assembled on `U`, and the one-ring boundary of `U` is evaluated and
//! checked to be zero; `certified` records the outcome.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{EVector, GVector, GroupAlgebraElement, SparseVec};
use crate::freegroup::{
    equivariance_failure_set, neighbors, pi, pi_inverse, EdgeOrStar, GeneratorSet, GroupError, ReducedWord,
    StarConvention,
};
use crate::linalg::{Matrix, RankInfo};
use crate::scalar::{parse_rational, GaussianRational, Scalar};

/// Row or column label of a defect matrix. Words index `L²(G)`, edges
/// index `L²(E) ⊕ ℂ`; words sort first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Word(ReducedWord),
    Edge(EdgeOrStar),
}

impl Label {
    pub fn format(&self, gens: &GeneratorSet) -> String {
        match self {
            Label::Word(w) => gens.format_word(w),
            Label::Edge(e) => gens.format_edge(e),
        }
    }

    /// Inverse of [`Label::format`]; edge labels are `*` or `edge(..)`.
    pub fn parse(gens: &GeneratorSet, text: &str) -> Result<Self, GroupError> {
        let t = text.trim();
        if t == "*" || t.starts_with("edge(") {
            gens.parse_edge(t).map(Label::Edge)
        } else {
            gens.parse_word(t).map(Label::Word)
        }
    }
}

pub fn apply_p<S: Scalar>(v: &GVector<S>) -> EVector<S> {
    v.map_keys(|g| Some(pi(g)))
}

pub fn apply_p_inv<S: Scalar>(w: &EVector<S>) -> GVector<S> {
    w.map_keys(|e| Some(pi_inverse(e)))
}

/// A linear map given column by column, without zero columns or entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator<S> {
    columns: BTreeMap<Label, SparseVec<Label, S>>,
}

impl<S: Scalar> SparseOperator<S> {
    pub fn from_columns<I: IntoIterator<Item = (Label, SparseVec<Label, S>)>>(cols: I) -> Self {
        SparseOperator { columns: cols.into_iter().filter(|(_, v)| !v.is_empty()).collect() }
    }

    pub fn columns(&self) -> &BTreeMap<Label, SparseVec<Label, S>> {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut cols = self.columns.clone();
        for (k, v) in &other.columns {
            let sum = match cols.get(k) {
                Some(existing) => existing + v,
                None => v.clone(),
            };
            cols.insert(k.clone(), sum);
        }
        Self::from_columns(cols)
    }

    pub fn neg(&self) -> Self {
        Self::from_columns(self.columns.iter().map(|(k, v)| (k.clone(), -v)))
    }

    pub fn conj_transpose(&self) -> Self {
        let mut cols: BTreeMap<Label, SparseVec<Label, S>> = BTreeMap::new();
        for (c, v) in &self.columns {
            for (r, x) in v.iter() {
                cols.entry(r.clone()).or_default().add_term(c.clone(), x.conj());
            }
        }
        Self::from_columns(cols)
    }
}

/// Exact matrix of a defect operator with labelled rows and columns.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectMatrix<S> {
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub entries: Matrix<S>,
    /// Labels of the one-ring boundary around the column support.
    pub boundary: Vec<Label>,
    /// True when every boundary column evaluated to zero.
    pub certified: bool,
}

impl<S: Scalar> DefectMatrix<S> {
    fn assemble(columns: Vec<(Label, SparseVec<Label, S>)>, boundary: Vec<Label>, certified: bool) -> Self {
        let rows: Vec<Label> =
            columns.iter().flat_map(|(_, v)| v.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let row_index: BTreeMap<&Label, usize> = rows.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut entries = Matrix::zeros(rows.len(), columns.len());
        for (j, (_, v)) in columns.iter().enumerate() {
            for (r, x) in v.iter() {
                entries.set(row_index[r], j, x.clone());
            }
        }
        let cols = columns.into_iter().map(|(l, _)| l).collect();
        DefectMatrix { rows, cols, entries, boundary, certified }
    }

    pub fn rank(&self) -> usize {
        self.entries.rank()
    }

    pub fn rank_info(&self) -> RankInfo {
        self.entries.rank_info()
    }

    /// Column labels of a maximal independent set of columns.
    pub fn witness_columns(&self) -> Vec<Label> {
        self.rank_info().pivot_cols.into_iter().map(|j| self.cols[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_zero()
    }

    pub fn to_operator(&self) -> SparseOperator<S> {
        SparseOperator::from_columns(self.cols.iter().enumerate().map(|(j, c)| {
            let col = SparseVec::from_terms(
                self.rows.iter().enumerate().map(|(i, r)| (r.clone(), self.entries.get(i, j).clone())),
            );
            (c.clone(), col)
        }))
    }

    pub fn conj_transpose(&self) -> Self {
        DefectMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: self.entries.conj_transpose(),
            boundary: Vec::new(),
            certified: self.certified,
        }
    }

    pub fn to_json(&self, gens: &GeneratorSet) -> DefectMatrixJson {
        DefectMatrixJson {
            rows: self.rows.iter().map(|l| l.format(gens)).collect(),
            cols: self.cols.iter().map(|l| l.format(gens)).collect(),
            entries: (0..self.entries.nrows())
                .map(|i| {
                    self.entries
                        .row(i)
                        .iter()
                        .map(|v| {
                            let (re, im) = v.to_parts_string();
                            [re, im]
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Wire form: `{rows: [labels], cols: [labels], entries: [[[re, im], ..], ..]}`
/// with entries row-major and rationals as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectMatrixJson {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<[String; 2]>>,
}

impl DefectMatrixJson {
    /// Reads an exact matrix back. Boundary data is not part of the wire
    /// form, so the result is marked uncertified.
    pub fn to_matrix(&self, gens: &GeneratorSet) -> Result<DefectMatrix<GaussianRational>, String> {
        let rows =
            self.rows.iter().map(|t| Label::parse(gens, t).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        let cols: Vec<Label> =
            self.cols.iter().map(|t| Label::parse(gens, t).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        let data = self
            .entries
            .iter()
            .map(|row| {
                if row.len() != cols.len() {
                    return Err("row length does not match the column labels".to_string());
                }
                row.iter()
                    .map(|[re, im]| {
                        let re = parse_rational(re).ok_or_else(|| format!("bad rational `{re}`"))?;
                        let im = parse_rational(im).ok_or_else(|| format!("bad rational `{im}`"))?;
                        Ok(GaussianRational::new(re, im))
                    })
                    .collect::<Result<Vec<_>, String>>()
            })
            .collect::<Result<Vec<_>, String>>()?;
        if data.len() != self.rows.len() {
            return Err("entry rows do not match the row labels".to_string());
        }
        let entries = if data.is_empty() { Matrix::zeros(0, cols.len()) } else { Matrix::from_rows(data) };
        Ok(DefectMatrix { rows, cols, entries, boundary: Vec::new(), certified: false })
    }
}

/// The four elements of a defect `s·X·b - a·X·t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectInputs<'a, S> {
    pub a: &'a GroupAlgebraElement<S>,
    pub b: &'a GroupAlgebraElement<S>,
    pub s: &'a GroupAlgebraElement<S>,
    pub t: &'a GroupAlgebraElement<S>,
}

impl<'a, S: Scalar> DefectInputs<'a, S> {
    pub fn new(
        a: &'a GroupAlgebraElement<S>,
        b: &'a GroupAlgebraElement<S>,
        s: &'a GroupAlgebraElement<S>,
        t: &'a GroupAlgebraElement<S>,
    ) -> Self {
        DefectInputs { a, b, s, t }
    }

    fn check(&self, gens: &GeneratorSet) -> Result<(), GroupError> {
        for x in [self.a, self.b, self.s, self.t] {
            x.check_generators(gens)?;
        }
        Ok(())
    }

    /// `⋃ F_h` over `h` in the supports of `b` and `t`.
    fn failure_union(&self) -> BTreeSet<ReducedWord> {
        let mut u = BTreeSet::new();
        for h in self.b.support().chain(self.t.support()) {
            u.extend(equivariance_failure_set(h));
        }
        // the identity column carries the `*` behaviour even when b = t = 0
        u.insert(ReducedWord::identity());
        u
    }

    fn p_column(&self, g: &ReducedWord, convention: StarConvention) -> EVector<S> {
        let e = GVector::basis(g.clone());
        let left = self.s.act_on_e(&apply_p(&self.b.act_on_g(&e)), convention);
        let right = self.a.act_on_e(&apply_p(&self.t.act_on_g(&e)), convention);
        &left - &right
    }

    fn p_inv_column(&self, e: &EdgeOrStar, convention: StarConvention) -> GVector<S> {
        let v = EVector::basis(e.clone());
        let left = self.s.act_on_g(&apply_p_inv(&self.b.act_on_e(&v, convention)));
        let right = self.a.act_on_g(&apply_p_inv(&self.t.act_on_e(&v, convention)));
        &left - &right
    }
}

fn ring_boundary(rank: usize, support: &BTreeSet<ReducedWord>) -> BTreeSet<ReducedWord> {
    support.iter().flat_map(|w| neighbors(rank, w)).filter(|w| !support.contains(w)).collect()
}

fn relabel<K: Ord + Clone, S: Scalar>(v: &SparseVec<K, S>, f: impl Fn(&K) -> Label) -> SparseVec<Label, S> {
    v.map_keys(|k| Some(f(k)))
}

/// Matrix of `v ↦ s·P(b·v) - a·P(t·v)` on its certified column support.
pub fn defect_matrix<S: Scalar>(
    gens: &GeneratorSet,
    a: &GroupAlgebraElement<S>,
    b: &GroupAlgebraElement<S>,
    s: &GroupAlgebraElement<S>,
    t: &GroupAlgebraElement<S>,
    convention: StarConvention,
) -> Result<DefectMatrix<S>, GroupError> {
    let q = DefectInputs::new(a, b, s, t);
    q.check(gens)?;
    let support = q.failure_union();
    let boundary = ring_boundary(gens.rank(), &support);
    let columns: Vec<(Label, SparseVec<Label, S>)> = support
        .par_iter()
        .map(|g| (Label::Word(g.clone()), relabel(&q.p_column(g, convention), |e| Label::Edge(e.clone()))))
        .collect();
    let certified = boundary.par_iter().all(|g| q.p_column(g, convention).is_empty());
    Ok(DefectMatrix::assemble(columns, boundary.into_iter().map(Label::Word).collect(), certified))
}

/// Matrix of `w ↦ s·P⁻¹(b·w) - a·P⁻¹(t·w)`; columns are indexed by
/// `pi(U)`, the image of the same failure union.
pub fn defect_matrix_inv<S: Scalar>(
    gens: &GeneratorSet,
    a: &GroupAlgebraElement<S>,
    b: &GroupAlgebraElement<S>,
    s: &GroupAlgebraElement<S>,
    t: &GroupAlgebraElement<S>,
    convention: StarConvention,
) -> Result<DefectMatrix<S>, GroupError> {
    let q = DefectInputs::new(a, b, s, t);
    q.check(gens)?;
    let support = q.failure_union();
    let edges: BTreeSet<EdgeOrStar> = support.iter().map(pi).collect();
    let boundary: BTreeSet<EdgeOrStar> = ring_boundary(gens.rank(), &support).iter().map(pi).collect();
    let columns: Vec<(Label, SparseVec<Label, S>)> = edges
        .par_iter()
        .map(|e| (Label::Edge(e.clone()), relabel(&q.p_inv_column(e, convention), |g| Label::Word(g.clone()))))
        .collect();
    let certified = boundary.par_iter().all(|e| q.p_inv_column(e, convention).is_empty());
    Ok(DefectMatrix::assemble(columns, boundary.into_iter().map(Label::Edge).collect(), certified))
}

/// `sFb - aFt` as its two anti-diagonal blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct FBlockMatrix<S> {
    /// `sPb - aPt`, the block mapping `L²(G)` into `L²(E) ⊕ ℂ`.
    pub p_block: DefectMatrix<S>,
    /// `sP⁻¹b - aP⁻¹t`, the block mapping `L²(E) ⊕ ℂ` into `L²(G)`.
    pub p_inv_block: DefectMatrix<S>,
}

impl<S: Scalar> FBlockMatrix<S> {
    /// The full matrix on `L²(G) ⊕ L²(E) ⊕ ℂ`. Rows list the `G` labels
    /// (from the `P⁻¹` block) first; columns list the `G` labels first.
    pub fn assembled(&self) -> DefectMatrix<S> {
        let (p, q) = (&self.p_block, &self.p_inv_block);
        let rows: Vec<Label> = q.rows.iter().chain(p.rows.iter()).cloned().collect();
        let cols: Vec<Label> = p.cols.iter().chain(q.cols.iter()).cloned().collect();
        let mut entries = Matrix::zeros(rows.len(), cols.len());
        for i in 0..q.rows.len() {
            for j in 0..q.cols.len() {
                entries.set(i, p.cols.len() + j, q.entries.get(i, j).clone());
            }
        }
        for i in 0..p.rows.len() {
            for j in 0..p.cols.len() {
                entries.set(q.rows.len() + i, j, p.entries.get(i, j).clone());
            }
        }
        let boundary = p.boundary.iter().chain(q.boundary.iter()).cloned().collect();
        DefectMatrix { rows, cols, entries, boundary, certified: p.certified && q.certified }
    }

    pub fn rank(&self) -> usize {
        self.assembled().rank()
    }
}

pub fn f_defect<S: Scalar>(
    gens: &GeneratorSet,
    a: &GroupAlgebraElement<S>,
    b: &GroupAlgebraElement<S>,
    s: &GroupAlgebraElement<S>,
    t: &GroupAlgebraElement<S>,
    convention: StarConvention,
) -> Result<FBlockMatrix<S>, GroupError> {
    Ok(FBlockMatrix {
        p_block: defect_matrix(gens, a, b, s, t, convention)?,
        p_inv_block: defect_matrix_inv(gens, a, b, s, t, convention)?,
    })
}
