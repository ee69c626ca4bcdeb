use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("point index {point} out of range for {theta} points (block {block})")]
    PointOutOfRange {
        block: usize,
        point: usize,
        theta: usize,
    },
    #[error("point {point} appears more than once in block {block}")]
    DuplicatePoint { block: usize, point: usize },
    #[error("incidence structure needs at least one point and one block")]
    Empty,
    #[error("{what} = {value} exceeds the supported maximum of {max}")]
    TooLarge {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("ragged incidence matrix: row {row} has {len} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("incidence matrix entry ({row}, {col}) is {value}, expected 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: u8 },
    #[error("block sizes are not constant: block 0 has {expected} points, block {block} has {found}")]
    NonConstantBlockSize {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("point degrees are not constant: point 0 lies in {expected} blocks, point {point} in {found}")]
    NonConstantPointDegree {
        point: usize,
        expected: usize,
        found: usize,
    },
    #[error("point {point} lies in no block")]
    UncoveredPoint { point: usize },
    #[error("invalid code parameters ({n}, {alpha}, {theta}, {rho}): {reason}")]
    InvalidParams {
        n: usize,
        alpha: usize,
        theta: usize,
        rho: usize,
        reason: &'static str,
    },
    #[error("{what} = {value} is outside {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        lo: usize,
        hi: usize,
    },
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("subset enumeration exceeded the cap of {cap} search states")]
    EnumerationCap { cap: u64 },
    #[error("design parameters: {0}")]
    Design(String),
    #[error("storage ratio mismatch: {alpha1}/{theta1} != {alpha2}/{theta2}")]
    RatioMismatch {
        alpha1: usize,
        theta1: usize,
        alpha2: usize,
        theta2: usize,
    },
    #[error("node {node} cannot be repaired: point {point} is stored nowhere else")]
    Unrepairable { node: usize, point: usize },
    #[error("reconstruction needs {need} distinct symbols, the chosen nodes hold {have} (deficit {deficit})")]
    InsufficientSymbols {
        need: usize,
        have: usize,
        deficit: usize,
    },
    #[error("{0}")]
    Mds(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}
