//! RC-graphs (pipe dreams) of permutations and the ladder-move calculus.
//!
//! An RC-graph of a permutation `w` is a finite set of `+` crossings placed in
//! the staircase grid so that reading the crossings row by row (top to bottom,
//! right to left within a row) spells a reduced word for `w`.  The number of
//! RC-graphs of `w` equals the principal specialization of the Schubert
//! polynomial of `w` at all variables equal to 1.
//!
//! The crate provides:
//!
//! * [`perm`] — permutation windows, Lehmer codes, Rothe diagrams, and exact
//!   pattern-containment counting;
//! * [`rcgraph`] — RC-graphs as bitset crossing grids, the ladder-move engine,
//!   breadth-first enumeration, strand typing, diagonal labels, and the
//!   simple-move connectivity machinery;
//! * [`schubert`] — principal specializations, Schubert monomial weights, and
//!   the recursively defined pattern-coefficient table with its nonnegativity
//!   checker;
//! * [`witness`] — the constructive lower-bound engine that manufactures, for
//!   every marked box of the Rothe diagram, a family of label-distinct
//!   RC-graphs and recovers the box from each witness;
//! * [`verify`] — an exhaustive, shardable verification harness over whole
//!   symmetric groups with machine-readable reports and checkpoints;
//! * [`render`] — ASCII, TikZ, SVG, and JSON renderers for RC-graphs.

pub mod perm;
pub mod rcgraph;
pub mod render;
pub mod schubert;
pub mod verify;
pub mod witness;

use serde::{Deserialize, Serialize};

/// Errors reported by the library.
///
/// Callers that map errors to process exit codes should treat
/// [`Error::BudgetExceeded`] as a resource-budget failure (exit 3) and parse
/// errors as usage failures (exit 2).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Input text for a permutation was empty.
    #[error("empty permutation input")]
    EmptyInput,
    /// A token in permutation input did not parse as a positive integer.
    #[error("invalid permutation token {0:?}")]
    BadToken(String),
    /// A window was not a bijection on 1..=n.
    #[error("window {0:?} is not a permutation of 1..={1}")]
    NotABijection(Vec<usize>, usize),
    /// A crossing set has the wrong number of crossings for its permutation.
    #[error("crossing set has {found} crossings but the permutation has length {expected}")]
    WrongCrossingCount { found: usize, expected: usize },
    /// A crossing lies outside the staircase region of the permutation.
    #[error("crossing ({0}, {1}) lies outside the staircase (row + col must be at most n)")]
    OutsideStaircase(usize, usize),
    /// The reading word of a crossing set evaluates to the wrong permutation.
    #[error("reading word evaluates to {got:?}, not to {want:?}")]
    WrongEvaluation { got: Vec<usize>, want: Vec<usize> },
    /// A ladder move was applied to a graph it does not apply to.
    #[error("ladder move of order {order} at ({row}, {col}) is not applicable")]
    MoveNotApplicable { row: usize, col: usize, order: usize },
    /// An enumeration produced more objects than the configured budget.
    #[error("enumeration budget of {limit} objects exceeded")]
    BudgetExceeded { limit: usize },
    /// Permutations larger than the fixed grid bound are not supported.
    #[error("permutations of size {0} exceed the supported maximum {max}", max = MAX_N)]
    TooLarge(usize),
    /// A pattern argument ends in a fixed point, so its occurrence count is
    /// not well defined for permutations of arbitrarily large support.
    #[error("pattern {0:?} ends in a fixed point; only patterns with a non-fixed last entry are countable")]
    NonCanonicalPattern(Vec<usize>),
    /// A checked integer computation overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// A box was passed to the witness engine without any column witnesses.
    #[error("box ({0}, {1}) has no column set; nothing to build")]
    EmptyColumnSet(usize, usize),
    /// A cell is not a box of the Rothe diagram.
    #[error("cell ({0}, {1}) is not in the Rothe diagram")]
    NotADiagramBox(usize, usize),
    /// A graph handed to box recovery carries no label change.
    #[error("graph has the same crossing diagonals as the bottom graph; no box to recover")]
    NotAWitness,
    /// A requested enumeration index was out of range.
    #[error("index {index} out of range; only {count} graphs exist")]
    IndexOutOfRange { index: usize, count: usize },
    /// Malformed JSON input.
    #[error("malformed JSON: {0}")]
    BadJson(String),
    /// A checkpoint file could not be read or written.
    #[error("checkpoint I/O failed: {0}")]
    CheckpointIo(String),
    /// Shard configuration was inconsistent.
    #[error("shard id {shard_id} is not below shard count {shards}")]
    BadShard { shards: usize, shard_id: usize },
}

/// Largest supported permutation size.
///
/// Crossings of a permutation of size `n` live in the staircase
/// `{(i, j) : i + j <= n}`, which for `n = 16` has 120 cells — the largest
/// staircase that fits in the 128-bit crossing mask used by
/// [`rcgraph::RCGraph`].
pub const MAX_N: usize = 16;

/// Convenient result alias for library operations.
pub type Result<T> = std::result::Result<T, Error>;

/// One cell of the positive quadrant, `(row, col)`, both 1-based.
pub type Cell = (usize, usize);

/// Diagonal number of a cell: `row + col - 1`.
///
/// Crossings on diagonal `d` contribute the letter `d` to the reading word.
pub fn diag(cell: Cell) -> usize {
    cell.0 + cell.1 - 1
}

/// A finite set of cells in the positive quadrant.
///
/// Used for Rothe diagrams and for raw crossing sets before validation.
/// Iteration order is row-major (top to bottom, left to right).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    cells: std::collections::BTreeSet<Cell>,
}

impl Diagram {
    /// The empty diagram.
    pub fn new() -> Self {
        Diagram::default()
    }

    /// Builds a diagram from any cell collection; duplicates collapse.
    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        Diagram { cells: cells.into_iter().collect() }
    }

    /// Inserts a cell; returns whether it was new.
    pub fn insert(&mut self, cell: Cell) -> bool {
        self.cells.insert(cell)
    }

    /// Removes a cell; returns whether it was present.
    pub fn remove(&mut self, cell: Cell) -> bool {
        self.cells.remove(&cell)
    }

    /// Membership test.
    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    /// Number of cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// Whether the diagram has no cells.
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    /// Number of cells in the given row.
    pub fn row_count(&self, row: usize) -> usize {
        self.cells.iter().filter(|&&(i, _)| i == row).count()
    }

    /// Number of cells in the given column.
    pub fn col_count(&self, col: usize) -> usize {
        self.cells.iter().filter(|&&(_, j)| j == col).count()
    }
}

impl FromIterator<Cell> for Diagram {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        Diagram::from_cells(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_deduplicates_and_orders_row_major() {
        let d = Diagram::from_cells([(2, 1), (1, 2), (2, 1), (1, 1)]);
        assert_eq!(d.len(), 3);
        let cells: Vec<Cell> = d.iter().collect();
        assert_eq!(cells, vec![(1, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn diagram_row_and_col_counts() {
        let d = Diagram::from_cells([(1, 1), (1, 3), (2, 1)]);
        assert_eq!(d.row_count(1), 2);
        assert_eq!(d.row_count(2), 1);
        assert_eq!(d.col_count(1), 2);
        assert_eq!(d.col_count(2), 0);
    }

    #[test]
    fn diag_is_row_plus_col_minus_one() {
        assert_eq!(diag((1, 1)), 1);
        assert_eq!(diag((3, 2)), 4);
    }
}
