use thiserror::Error;

use crate::rootsys::{Family, Root};

/// Errors produced anywhere in the pipeline.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagram type {family}{rank}: {reason}")]
    InvalidType {
        family: Family,
        rank: usize,
        reason: &'static str,
    },
    #[error("empty diagram type")]
    EmptyType,
    #[error("{0} is not a root of this system")]
    NotARoot(Root),
    #[error("decoration has length {got}, expected {expected}")]
    DecorationLength { expected: usize, got: usize },
    #[error("component {component} ({label}) has no crossed node; pass the point-factor option to drop it")]
    MissingCross { component: usize, label: String },
    #[error("no component carries a crossed node")]
    NothingCrossed,
    #[error("matrix is not a Cartan matrix: {0}")]
    BadCartan(String),
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("{family}{rank} with node {node} crossed is not cominuscule")]
    NotCominuscule { family: Family, rank: usize, node: usize },
    #[error("component {component} has {crosses} crossed nodes, expected exactly one")]
    CrossCount { component: usize, crosses: usize },
    #[error("parse error at column {column}: {message}\n  {input}\n  {caret:>width$}", caret = "^", width = column)]
    Parse {
        input: String,
        column: usize,
        message: String,
    },
    #[error("unknown format {0:?}, expected one of dot, json, text")]
    UnknownFormat(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
