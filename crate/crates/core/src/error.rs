use thiserror::Error;

use crate::category::{ArrowId, ObjectId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size guard: {what} is {count}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        count: usize,
        limit: usize,
    },

    #[error("category has no objects")]
    EmptyCategory,

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("arrows `{g}` and `{f}` are composable but no composite is given")]
    MissingComposite { g: String, f: String },

    #[error("`{g}` and `{f}` are not composable (target of `{f}` is not the source of `{g}`)")]
    NotComposable { g: String, f: String },

    #[error("composite {g} . {f} = {h} has the wrong source or target")]
    CompositeTyping { g: String, f: String, h: String },

    #[error("composite {g} . {f} is given twice with different results")]
    ConflictingComposite { g: String, f: String },

    #[error("associativity fails for ({h} . {g}) . {f}")]
    AssociativityViolation { h: String, g: String, f: String },

    #[error("identity law fails for `{arrow}`")]
    IdentityViolation { arrow: String },

    #[error("arrow {arrow:?} does not have codomain {base:?}")]
    WrongCodomain { arrow: ArrowId, base: ObjectId },

    #[error("arrow set on {base:?} is not closed under precomposition (missing {missing:?})")]
    NotASieve { base: ObjectId, missing: ArrowId },

    #[error("sieve based at {found:?}, expected {expected:?}")]
    BaseMismatch { expected: ObjectId, found: ObjectId },

    #[error("values belong to different categories")]
    CategoryMismatch,

    #[error("category is not right Ore: cospan ({f:?}, {g:?}) has no completion")]
    NotRightOre { f: ArrowId, g: ArrowId },

    #[error("presheaf is not a sheaf: {0}")]
    NotASheaf(String),

    #[error("malformed set-valued data: {0}")]
    Malformed(String),

    #[error("class `{class}` failed its amalgamation/joint-embedding check at size {bound}")]
    ClassPropertyUnverified { class: String, bound: usize },

    #[error("chains are from different classes (`{0}` vs `{1}`)")]
    ClassMismatch(String, String),

    #[error("horizon too short: {0}")]
    HorizonTooShort(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable snake_case tag for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SizeGuard { .. } => "size_guard",
            Error::EmptyCategory => "empty_category",
            Error::DuplicateName(_) => "duplicate_name",
            Error::UnknownName { .. } => "unknown_name",
            Error::MissingComposite { .. } => "missing_composite",
            Error::NotComposable { .. } => "not_composable",
            Error::CompositeTyping { .. } => "composite_typing",
            Error::ConflictingComposite { .. } => "conflicting_composite",
            Error::AssociativityViolation { .. } => "associativity_violation",
            Error::IdentityViolation { .. } => "identity_violation",
            Error::WrongCodomain { .. } => "wrong_codomain",
            Error::NotASieve { .. } => "not_a_sieve",
            Error::BaseMismatch { .. } => "base_mismatch",
            Error::CategoryMismatch => "category_mismatch",
            Error::NotRightOre { .. } => "not_right_ore",
            Error::NotASheaf(_) => "not_a_sheaf",
            Error::Malformed(_) => "malformed",
            Error::ClassPropertyUnverified { .. } => "class_property_unverified",
            Error::ClassMismatch(..) => "class_mismatch",
            Error::HorizonTooShort(_) => "horizon_too_short",
        }
    }
}
