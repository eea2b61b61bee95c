use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the base set is empty")]
    EmptyBase,
    #[error("empty token")]
    EmptyToken,
    #[error("token {0:?} is reserved")]
    ReservedToken(String),
    #[error("arrow {0} -> {1} references an unknown element")]
    DanglingArrow(String, String),
    #[error("element {0} lacks its reflexive arrow")]
    MissingReflexive(String),
    #[error("{0} is not a subset of the base")]
    NotSubset(String),
    #[error("more than {0} chains exist")]
    LimitExceeded(usize),
    #[error("the given set is not a chain")]
    NotAChain,
    #[error("the oriented set is not chain oriented")]
    NotChainOriented,
    #[error("the oriented set is not cyclic")]
    NotCyclic,
    #[error("element {0} does not belong to the oriented set")]
    ForeignElement(String),
    #[error("duplicate moment {0} in the scale")]
    DuplicateTime(String),
    #[error("unknown moment {0}")]
    UnknownTime(String),
    #[error("not a time: {0}")]
    NotATime(String),
    #[error("a trivial time needs at least two moments, got {0}")]
    BadSize(usize),
    #[error("the sub-structure is not embedded in the oriented set")]
    NotEmbedded,
    #[error("trimming would drop moment {0} whose image is nonempty")]
    TrimDropsNonEmpty(String),
    #[error("the target scale does not contain the scale as an ordered subsequence")]
    NotAnEmbedding,
    #[error("not a simultaneity: {0}")]
    NotASimultaneity(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("the sequentiality closure is not a strict linear order")]
    NotLinear,
    #[error("the process is not defined on the scale of the time")]
    DomainMismatch,
    #[error("search space exceeds the bound {0}")]
    SearchSpaceTooLarge(u128),
    #[error("coverage violation: {0}")]
    CoverageViolation(String),
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),
    #[error("invalid base of elementary processes: {0}")]
    InvalidBase(String),
    #[error("unknown elementary-time state ({0}, {1})")]
    UnknownState(String, String),
    #[error("trajectory {0} is not in the system")]
    NotInSystem(String),
    #[error("state ({0}, {1}) is not an elementary-time state of the structure")]
    ForeignState(String, String),
    #[error("not a process: {0}")]
    NotAProcess(String),
    #[error("image moment {0} lies outside the scale")]
    TimeOutOfScale(String),
    #[error("transforming map is undefined on ({0}, {1})")]
    NotTotal(String, String),
    #[error("unknown frame {0}")]
    UnknownFrame(String),
    #[error("missing unification map {0} -> {1}")]
    MissingUni(String, String),
    #[error("subset contains states outside frame {0}")]
    ForeignStates(String),
    #[error("extensional table has no entry for subset {0}")]
    TableMiss(String),
    #[error("frame {0} has {1} states, above the exhaustive limit {2}")]
    SizeLimitExceeded(String, usize, usize),
    #[error("frames {0} and {1} are not equipotent")]
    NotEquipotent(String, String),
    #[error("pseudo-group violation at ({0}, {1}, {2}) on state {3}")]
    PseudoGroupViolation(String, String, String, String),
    #[error("map is not a bijection: {0}")]
    NotBijective(String),
    #[error("image construction failed: {0}")]
    ImageError(String),
    #[error("the frame family is empty")]
    EmptyFamily,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("system of {0} states exceeds the partition limit {1}")]
    PartitionLimitExceeded(usize, usize),
    #[error("image of the state has {0} elements, not one")]
    NotSingletonImage(usize),
    #[error("the changeable set is not precisely visible")]
    NotPreciselyVisible,
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("schema violation at {0}: {1}")]
    SchemaViolation(String, String),
    #[error("unsupported document version {0}")]
    UnsupportedVersion(String),
    #[error("bad bounds: {0}")]
    BadBounds(String),
}

pub type Result<T> = std::result::Result<T, Error>;
