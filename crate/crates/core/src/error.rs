use thiserror::Error;

/// Errors raised by constructions and decision procedures.
///
/// Negative verdicts (a functor that is not a local right adjoint, a family
/// that is absent) are values, not errors; this type is reserved for malformed
/// input, violated preconditions and exceeded size guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("dangling reference to {kind} `{name}` in {context}")]
    DanglingRef {
        kind: &'static str,
        name: String,
        context: String,
    },
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("empty identifier")]
    EmptyName,
    #[error("missing composite {g} . {f}")]
    MissingComposite { g: String, f: String },
    #[error("{g} . {f} is not composable")]
    NotComposable { g: String, f: String },
    #[error("conflicting entries for {g} . {f}")]
    ConflictingComposite { g: String, f: String },
    #[error("{law} fails at ({})", witness.join(", "))]
    LawViolation { law: String, witness: Vec<String> },
    #[error("not a functor: {reason} ({})", witness.join(", "))]
    NotFunctorial {
        reason: String,
        witness: Vec<String>,
    },
    #[error("not natural: {reason} ({})", witness.join(", "))]
    NotNatural {
        reason: String,
        witness: Vec<String>,
    },
    #[error("{what} would exceed the size cap ({size} > {cap})")]
    SizeCap {
        what: String,
        size: usize,
        cap: usize,
    },
    #[error("the given arrows do not form a commuting square")]
    NotASquare,
    #[error("categories differ: {0}")]
    AmbientMismatch(String),
    #[error("codomain of `{arrow}` is not U({apex})")]
    ApexMismatch { arrow: String, apex: String },
    #[error("functor is not a local right adjoint: {0}")]
    NotLocalRightAdjoint(String),
    #[error("functor is not a right multi-adjoint: {0}")]
    NotMultiAdjoint(String),
    #[error("functor is not stable: {0}")]
    NotStable(String),
    #[error("not a factorization system: {0}")]
    NotAFactorizationSystem(String),
    #[error("gliding fails along `{0}`")]
    GlidingViolation(String),
    #[error("functor is not full: {0}")]
    NotFull(String),
    #[error("functor is not faithful: {0}")]
    NotFaithful(String),
    #[error("the target has no colimit of the image diagram")]
    NoTargetColimit,
    #[error("the target has no limit of the image diagram")]
    NoTargetLimit,
    #[error("the diagram shape is not connected")]
    ShapeNotConnected,
    #[error("no terminal object")]
    NoTerminal,
    #[error("class is not contained in its ambient class: `{0}`")]
    NotASubclass(String),
    #[error("right cancellation fails: {0}")]
    CancellationFails(String),
    #[error("multi-(co)limit absent: component {0:?} has no universal member")]
    Absent(Vec<String>),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, CatError>;
