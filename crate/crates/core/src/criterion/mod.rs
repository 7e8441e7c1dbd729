//! Quadruples `(a, b, s, t)` with `a·t = s·b` and the exact rank of their
//! defect operators, identities between defects, and the windowed
//! commutation profile of series given as coefficient streams.

pub mod families;
pub mod lemmas;
pub mod profile;
pub mod quadruple;
pub mod stream;

pub use families::{family, CORPUS};
pub use lemmas::{lemma_identity_suite, LemmaError, LemmaReport};
pub use profile::{
    classify, diagonal_profile, hankel_rank_profile, plateau_verdict, windowed_profile, Classification, ProfileError,
    RankProfile, Verdict,
};
pub use quadruple::{check_criterion, make_quadruple, CriterionReport, Quadruple, QuadrupleError};
pub use stream::{FiniteStream, PowerSeriesStream, SeriesStream, StreamError, StreamJson, TruncatedStream};
