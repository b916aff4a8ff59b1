//! Tabulation of noncrossing digraph families.
//!
//! Vertices `1..=n` sit on a line. An arc pair crosses when the two spans
//! properly interleave, and the graphs that avoid this pattern form several
//! natural families: acyclic, weakly connected acyclic, unrestricted digraphs,
//! plus two undirected variants. All of them decompose uniquely under a small
//! set of concatenation and covering rules, which turns membership into chart
//! parsing: one pass over all spans answers counting, enumeration, and
//! best-scoring-graph queries, depending only on the semiring the chart is
//! filled with.
//!
//! The crate is organized around that pipeline:
//!
//! - [`digraph`]: the graph type, structural predicates, and the seven-way
//!   classification that the rule tables are built on.
//! - [`families`]: the rule tables for the five supported families.
//! - [`semiring`]: weight types (exact counts, max-plus, boolean).
//! - [`engine`]: the chart filler, Viterbi backtrace, and derivation
//!   enumeration.
//! - [`analyses`]: counting and decoding entry points.
//! - [`oracle`]: brute-force enumeration used as ground truth in tests and
//!   by `verify`.
//! - [`cli`]: the `noncross` command-line tool.

#![forbid(unsafe_code)]

pub mod analyses;
pub mod cli;
pub mod digraph;
pub mod engine;
pub mod families;
pub mod oracle;
pub mod semiring;

pub use analyses::{count, count_by_class, decode, DecodeResult, ScoreTable};
pub use digraph::{classify, is_acyclic, is_noncrossing, is_weakly_connected, Digraph, GraphClass};
pub use engine::{backtrace, derivations, fill_chart, goal_value, realize, Chart, Derivation};
pub use families::{family, validate_family, Direction, Family, FamilyName, ItemKind};
pub use oracle::{
    is_member, oracle_best, oracle_best_among, oracle_count, oracle_enumerate, OracleConfig,
};
pub use semiring::{BoolWeight, CountWeight, LexMaxPlusWeight, MaxPlusWeight, Semiring};

/// Errors reported by graph construction, the engine, and the analyses.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A vertex count below the minimum an operation supports.
    #[error("vertex count must be at least {min}, got {got}")]
    VertexCount { min: usize, got: usize },

    /// An arc endpoint outside `1..=n`, or a self-loop.
    #[error("invalid arc ({src}, {dst}) for vertex count {n}")]
    InvalidArc { src: usize, dst: usize, n: usize },

    /// Classification needs both extremal vertices.
    #[error("classification requires at least 2 vertices")]
    ClassifyTooSmall,

    /// Both extremal arcs present: a 2-cycle, so the graph is not acyclic.
    #[error("graph has both extremal arcs (1, n) and (n, 1) and is not acyclic")]
    ExtremalCycle,

    /// Derivation enumeration asked for a span beyond the configured cap.
    #[error("derivation enumeration is capped at n = {cap}, got n = {got}")]
    EnumerationCap { cap: usize, got: usize },

    /// Oracle enumeration asked for a vertex count beyond its cap.
    #[error("oracle for family `{family}` is capped at n = {cap}, got n = {got}")]
    OracleCap {
        family: families::FamilyName,
        cap: usize,
        got: usize,
    },

    /// No goal item is derivable, so the family has no member for the input.
    #[error("no goal item is derivable; the family has no member for this input")]
    NoMember,

    /// A score table that violates its construction rules.
    #[error("invalid score table: {0}")]
    InvalidScoreTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
