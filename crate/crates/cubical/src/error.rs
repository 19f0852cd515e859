//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while building or querying cube complexes.
#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("facet (cube {cube}, coord {coord}, side {side}) has no gluing")]
    MissingGluing { cube: String, coord: usize, side: u8 },

    #[error("facet (cube {cube}, coord {coord}, side {side}) is glued more than once")]
    DuplicateGluing { cube: String, coord: usize, side: u8 },

    #[error("gluing of cube {cube} (dim {dim}) targets {target} of dim {target_dim}; expected dim {}", dim - 1)]
    DimensionMismatch {
        cube: String,
        dim: usize,
        target: String,
        target_dim: usize,
    },

    #[error("cubical identity fails on cube {cube} at coordinates {i},{j} (sides {side_i},{side_j})")]
    InconsistentCorners {
        cube: String,
        i: usize,
        j: usize,
        side_i: u8,
        side_j: u8,
    },

    #[error("dimension {dim} exceeds configured cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("unknown cube id {0}")]
    UnknownCube(String),

    #[error("unknown cell {0}")]
    UnknownCell(String),

    #[error("not a valid signed permutation of size {size}")]
    BadPermutation { size: usize },

    #[error("no closed surface of this kind has genus {0}")]
    UnsupportedGenus(usize),

    #[error("{0}")]
    Malformed(String),
}

/// Errors from cover construction.
#[derive(Debug, Error)]
pub enum CoverError {
    #[error("base complex has {0} vertices; covers are only built over one-vertex complexes")]
    NotOneVertex(usize),

    #[error("square {square} has boundary permutation product != identity")]
    SquareRelationViolated { square: String },

    #[error("permutation assignment misses edge {0}")]
    MissingEdge(String),

    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Errors from cubical-map validation and checks.
#[derive(Debug, Error)]
pub enum MapError {
    #[error("assignment refers to unknown cell {0}")]
    DanglingCell(String),

    #[error("map is missing an assignment for cell {0}")]
    MissingAssignment(String),

    #[error("assignment for {cell} changes dimension ({from} -> {to})")]
    DimensionChanged { cell: String, from: usize, to: usize },
}

/// Errors from metric queries.
#[derive(Debug, Error)]
pub enum MetricError {
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(String, String),

    #[error("cell {0} is not a cell of the ambient complex")]
    UnknownCell(String),

    #[error("the given cell set is not a subcomplex: {0} has a face outside the set")]
    NotSubcomplex(String),

    #[error("invalid edge path: {0}")]
    BadPath(String),
}

/// Errors from wall spaces and Sageev duals.
#[derive(Debug, Error)]
pub enum WallError {
    #[error("unknown point {0}")]
    UnknownPoint(String),

    #[error("wall index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("wall space has {walls} walls, exceeding cap {cap}")]
    WallCapExceeded { walls: usize, cap: usize },

    #[error("wall {0} is invalid: {1}")]
    InvalidWall(usize, String),

    #[error("permutation does not map wall {0} to a wall")]
    NotWallPreserving(usize),

    #[error("{0}")]
    Malformed(String),
}

/// Errors from presentations, normal forms, and Cayley balls.
#[derive(Debug, Error)]
pub enum GroupError {
    #[error("relator {0} reduces to the empty word")]
    EmptyRelator(usize),

    #[error("unknown generator {0}")]
    UnknownGenerator(String),

    #[error("word length exceeds cap {0}")]
    LengthCapExceeded(usize),

    #[error("radius {radius} exceeds cap {cap}")]
    RadiusCapExceeded { radius: usize, cap: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{0}")]
    Malformed(String),
}
