use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument name {0:?}: expected a nonempty token over [a-zA-Z0-9_]")]
    InvalidName(String),

    #[error("duplicate name {0:?}")]
    DuplicateName(String),

    #[error("a framework needs at least one argument")]
    EmptyFramework,

    #[error("undeclared argument {0:?}")]
    UndeclaredArgument(String),

    #[error("labelling is not total: no label for {0:?}")]
    PartialLabelling(String),

    #[error("labelling mentions {0:?}, which is not an argument of the framework")]
    ForeignLabel(String),

    #[error("restriction subset must be nonempty")]
    EmptyRestriction,

    #[error("classification needs at least one complete labelling")]
    NoLabellings,

    #[error("grounded labelling is not unique ({0} minimal candidates)")]
    GroundedNotUnique(usize),

    #[error("no value for atom {0:?}")]
    UnassignedAtom(String),

    #[error("unbound variable {0:?}")]
    UnboundVariable(String),

    #[error("unknown domain element {0:?}")]
    UnknownElement(String),

    #[error("formula is not closed: free variable {0:?}")]
    OpenFormula(String),

    #[error("the domain needs at least one element")]
    EmptyDomain,

    #[error("relation is decided but ({0}, {1}) is valued (f,t)")]
    UndecidedPair(String, String),

    #[error("substitution for {target:?} mentions atom {atom:?}, which is an argument name")]
    SubstitutionCollision { target: String, atom: String },

    #[error("{0} is not allowed in a classical constraint (only R and = may appear)")]
    NotClassical(&'static str),

    #[error("unit {0:?} is not declared in the network")]
    UndeclaredUnit(String),

    #[error("wff unit {0:?} is not a closed formula")]
    OpenWff(String),

    #[error("search space has {unknowns} three-valued unknowns, above the limit of {limit}")]
    GuardExceeded { unknowns: usize, limit: usize },

    #[error("empty attack group in {0}")]
    EmptyGroup(String),

    #[error("acceptance vector for {arg:?} has {got} entries, expected {expected}")]
    VectorSize {
        arg: String,
        expected: usize,
        got: usize,
    },

    #[error("acceptance condition for {0:?} is not in disjunctive normal form")]
    NotDnf(String),

    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
