//! RC-graphs as bitset crossing grids and the ladder-move calculus.
//!
//! An RC-graph of `w ∈ S_n` is a set of crossings inside the staircase
//! `{(i, j) : i + j <= n}` whose reading word — rows top to bottom, right to
//! left within a row, the crossing at `(i, j)` contributing the letter
//! `i + j - 1` — is a reduced word for `w`.
//!
//! A ladder move of order `k` takes a crossing at `(i, j)` to
//! `(i - k - 1, j + 1)` provided `(i, j+1)`, `(i-k-1, j)` and `(i-k-1, j+1)`
//! are empty while the `k` rows strictly between hold crossings in both
//! columns `j` and `j+1`.  Order-0 moves are called *simple*; they preserve
//! the diagonal label of the graph, while higher-order moves increase it
//! lexicographically.  Every RC-graph of `w` is reachable from the bottom
//! graph `B_w` by ladder moves, which is what the breadth-first enumeration
//! here exploits.

use crate::perm::Permutation;
use crate::{diag, Cell, Diagram, Error, Result, MAX_N};
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

/// The two strand labels `(a, b)`, `a < b`, meeting at a crossing.
///
/// Strand `k` enters at the left of row `k` and exits at the top of column
/// `w(k)`; across one RC-graph the crossing types are exactly the inversions
/// of the owner, each appearing once.
pub type StrandType = (usize, usize);

/// One ladder move: the crossing at `source` relocates to `target`,
/// `order` rows higher plus one, one column to the right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderMove {
    /// The occupied cell `(i, j)` the move removes.
    pub source: Cell,
    /// The move order `k >= 0`; 0 is a simple move.
    pub order: usize,
    /// The cell `(i - k - 1, j + 1)` the move fills.
    pub target: Cell,
}

impl LadderMove {
    fn new(source: Cell, order: usize) -> LadderMove {
        LadderMove { source, order, target: (source.0 - order - 1, source.1 + 1) }
    }

    /// Whether this is a simple (order-0) move.
    pub fn is_simple(&self) -> bool {
        self.order == 0
    }
}

/// Row offsets of the universal 16-row staircase bit layout.
///
/// Cell `(i, j)` with `i + j <= 16` maps to bit `OFFSET[i-1] + j - 1`; the
/// layout is independent of the owner's size so equal crossing sets have
/// equal masks.
const fn row_offset(i: usize) -> usize {
    (i - 1) * MAX_N - (i - 1) * i / 2
}

/// Crossing set of one permutation as a 128-bit mask, with the owner's size
/// carried along for staircase bounds.  This is the engine's working
/// representation; [`RCGraph`] wraps it with the owner and caches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Grid {
    pub(crate) n: usize,
    pub(crate) bits: u128,
}

impl Grid {
    pub(crate) fn empty(n: usize) -> Grid {
        Grid { n, bits: 0 }
    }

    fn bit(cell: Cell) -> u128 {
        debug_assert!(cell.0 >= 1 && cell.1 >= 1 && cell.0 + cell.1 <= MAX_N);
        1u128 << (row_offset(cell.0) + cell.1 - 1)
    }

    pub(crate) fn contains(&self, cell: Cell) -> bool {
        if cell.0 < 1 || cell.1 < 1 || cell.0 + cell.1 > MAX_N {
            return false;
        }
        self.bits & Grid::bit(cell) != 0
    }

    pub(crate) fn insert(&mut self, cell: Cell) {
        self.bits |= Grid::bit(cell);
    }

    pub(crate) fn remove(&mut self, cell: Cell) {
        self.bits &= !Grid::bit(cell);
    }

    pub(crate) fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Cells in row-major order (top to bottom, left to right).
    pub(crate) fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len());
        for i in 1..self.n {
            for j in 1..=(self.n - i) {
                if self.contains((i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The reading word: rows top to bottom, right to left within a row.
    pub(crate) fn reading_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.len());
        for i in 1..self.n {
            for j in (1..=(self.n - i)).rev() {
                if self.contains((i, j)) {
                    word.push(i + j - 1);
                }
            }
        }
        word
    }

    /// The ladder move rooted at `source`, if any.
    ///
    /// At most one order can apply per crossing: walking upward from the row
    /// above `source`, paired occupied rows extend the ladder, the first row
    /// empty in both columns ends it with a move, and a half-filled row kills
    /// it.
    pub(crate) fn move_at(&self, source: Cell, max_order: Option<usize>) -> Option<LadderMove> {
        let (i, j) = source;
        if !self.contains(source) || self.contains((i, j + 1)) {
            return None;
        }
        for t in (1..i).rev() {
            let order = i - 1 - t;
            if max_order.is_some_and(|cap| order > cap) {
                return None;
            }
            match (self.contains((t, j)), self.contains((t, j + 1))) {
                (false, false) => return Some(LadderMove::new(source, order)),
                (true, true) => continue,
                _ => return None,
            }
        }
        None
    }

    /// All applicable ladder moves, sources in row-major order.
    pub(crate) fn moves(&self, max_order: Option<usize>) -> Vec<LadderMove> {
        let mut out = Vec::new();
        for i in 1..self.n {
            for j in 1..=(self.n - i) {
                if let Some(m) = self.move_at((i, j), max_order) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Applies a move without re-checking its conditions.
    pub(crate) fn apply(&self, m: &LadderMove) -> Grid {
        let mut next = *self;
        next.remove(m.source);
        next.insert(m.target);
        next
    }

    /// Grids one *inverse* simple move away: some crossing `(a, b)` slides
    /// back down-left to `(a+1, b-1)`, so that a forward simple move on the
    /// result restores `self`.
    pub(crate) fn inverse_simple_neighbors(&self) -> Vec<Grid> {
        let mut out = Vec::new();
        for (a, b) in self.cells() {
            if b >= 2
                && !self.contains((a + 1, b - 1))
                && !self.contains((a + 1, b))
                && !self.contains((a, b - 1))
            {
                let mut g = *self;
                g.remove((a, b));
                g.insert((a + 1, b - 1));
                out.push(g);
            }
        }
        out
    }

    /// Per-diagonal crossing counts, diagonals `1..=n-1`.
    pub(crate) fn label(&self) -> Vec<usize> {
        let mut label = vec![0usize; self.n.saturating_sub(1)];
        for cell in self.cells() {
            label[diag(cell) - 1] += 1;
        }
        label
    }

    /// Per-row crossing counts, rows `1..=n`.
    pub(crate) fn row_weights(&self) -> Vec<usize> {
        let mut rows = vec![0usize; self.n];
        for (i, _) in self.cells() {
            rows[i - 1] += 1;
        }
        rows
    }
}

/// Applies the word of adjacent transpositions to the identity window of
/// size `n`, left to right; the letter `k` swaps positions `k` and `k+1`.
fn evaluate_word(word: &[usize], n: usize) -> Vec<usize> {
    let mut window: Vec<usize> = (1..=n).collect();
    for &k in word {
        debug_assert!(k < n);
        window.swap(k - 1, k);
    }
    window
}

/// An RC-graph: a validated crossing set together with its owner.
///
/// Equality, ordering, and hashing consider the owner and the crossing set;
/// the diagonal label is cached at construction and strand types are traced
/// on first use.
#[derive(Clone)]
pub struct RCGraph {
    owner: Permutation,
    grid: Grid,
    label: Vec<usize>,
    strands: OnceLock<BTreeMap<Cell, StrandType>>,
}

impl PartialEq for RCGraph {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner && self.grid.bits == other.grid.bits
    }
}

impl Eq for RCGraph {}

impl std::hash::Hash for RCGraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.owner.hash(state);
        self.grid.bits.hash(state);
    }
}

impl PartialOrd for RCGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RCGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.owner, self.grid.bits).cmp(&(&other.owner, other.grid.bits))
    }
}

impl fmt::Debug for RCGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RCGraph(w = {}, crossings = {:?})", self.owner, self.grid.cells())
    }
}

impl RCGraph {
    fn from_grid(owner: Permutation, grid: Grid) -> RCGraph {
        debug_assert_eq!(
            evaluate_word(&grid.reading_word(), grid.n),
            (1..=grid.n).map(|i| owner.apply(i)).collect::<Vec<_>>(),
            "internal constructor got a non-reduced crossing set"
        );
        let label = grid.label();
        RCGraph { owner, grid, label, strands: OnceLock::new() }
    }

    /// The owner permutation.
    pub fn owner(&self) -> &Permutation {
        &self.owner
    }

    /// Size of the staircase (the owner's `n`).
    pub fn size(&self) -> usize {
        self.grid.n
    }

    /// Number of crossings (the owner's Coxeter length).
    pub fn crossing_count(&self) -> usize {
        self.grid.len()
    }

    /// Whether `cell` is a crossing.
    pub fn contains(&self, cell: Cell) -> bool {
        self.grid.contains(cell)
    }

    /// Crossing cells in row-major order.
    pub fn crossings(&self) -> Vec<Cell> {
        self.grid.cells()
    }

    /// Crossing set as a [`Diagram`].
    pub fn diagram(&self) -> Diagram {
        Diagram::from_cells(self.grid.cells())
    }

    /// The reading word: rows top to bottom, right to left within a row;
    /// the crossing at `(i, j)` contributes the letter `i + j - 1`.
    pub fn reading_word(&self) -> Vec<usize> {
        self.grid.reading_word()
    }

    /// The diagonal label: entry `k-1` counts crossings on diagonal `k`,
    /// for `k = 1..=n-1`.
    pub fn label(&self) -> &[usize] {
        &self.label
    }

    /// Per-row crossing counts (the exponent vector of the graph's monomial).
    pub fn row_weights(&self) -> Vec<usize> {
        self.grid.row_weights()
    }

    #[cfg(test)]
    pub(crate) fn grid(&self) -> Grid {
        self.grid
    }

    /// Strand types of all crossings: the map sends each crossing to the
    /// pair of strand labels `(a, b)`, `a < b`, that meet there.
    ///
    /// Traced once per graph by walking every strand from its row entry:
    /// at a crossing a strand keeps direction, at an elbow it turns.
    pub fn strand_types(&self) -> &BTreeMap<Cell, StrandType> {
        self.strands.get_or_init(|| {
            let mut horizontal: BTreeMap<Cell, usize> = BTreeMap::new();
            let mut vertical: BTreeMap<Cell, usize> = BTreeMap::new();
            for k in 1..=self.grid.n {
                // Strand k enters at the left of row k heading east.  At a
                // crossing it keeps its direction; at an elbow it turns
                // (west→north, south→east).  It exits upward past row 1 at
                // the top of column w(k).
                let (mut row, mut col) = (k, 1);
                let mut heading_east = true;
                while row >= 1 {
                    let cell = (row, col);
                    if self.grid.contains(cell) {
                        if heading_east {
                            horizontal.insert(cell, k);
                            col += 1;
                        } else {
                            vertical.insert(cell, k);
                            row -= 1;
                        }
                    } else if heading_east {
                        heading_east = false;
                        row -= 1;
                    } else {
                        heading_east = true;
                        col += 1;
                    }
                }
                debug_assert_eq!(col, self.owner.apply(k), "strand {k} exits at column w({k})");
            }
            let mut types = BTreeMap::new();
            for (cell, &h) in &horizontal {
                let v = vertical[cell];
                types.insert(*cell, (h.min(v), h.max(v)));
            }
            types
        })
    }

    /// All applicable ladder moves, sources in row-major order; `max_order`
    /// caps the order when given (0 restricts to simple moves).
    pub fn applicable_moves(&self, max_order: Option<usize>) -> Vec<LadderMove> {
        self.grid.moves(max_order)
    }

    /// Applies one ladder move, re-checking that it is applicable.
    pub fn apply_move(&self, m: &LadderMove) -> Result<RCGraph> {
        match self.grid.move_at(m.source, None) {
            Some(found) if found == *m => {
                Ok(RCGraph::from_grid(self.owner.clone(), self.grid.apply(m)))
            }
            _ => Err(Error::MoveNotApplicable {
                row: m.source.0,
                col: m.source.1,
                order: m.order,
            }),
        }
    }
}

/// The bottom RC-graph `B_w`: row `i` holds `code(w)_i` left-justified
/// crossings.
pub fn bottom(w: &Permutation) -> Result<RCGraph> {
    let n = w.size();
    if n > MAX_N {
        return Err(Error::TooLarge(n));
    }
    let mut grid = Grid::empty(n);
    for (i, &c) in w.lehmer_code().iter().enumerate() {
        for j in 1..=c {
            grid.insert((i + 1, j));
        }
    }
    Ok(RCGraph::from_grid(w.clone(), grid))
}

/// The top RC-graph `T_w`: column `j` holds `code(w⁻¹)_j` top-justified
/// crossings.
pub fn top(w: &Permutation) -> Result<RCGraph> {
    let n = w.size();
    if n > MAX_N {
        return Err(Error::TooLarge(n));
    }
    let mut grid = Grid::empty(n);
    for (j, &c) in w.inverse().lehmer_code().iter().enumerate() {
        for i in 1..=c {
            grid.insert((i, j + 1));
        }
    }
    Ok(RCGraph::from_grid(w.clone(), grid))
}

/// Validates a crossing set against a permutation: the set must lie in the
/// staircase, have exactly `length(w)` crossings, and its reading word must
/// evaluate to `w` — which together force the word to be reduced.
pub fn validate(crossings: &Diagram, w: &Permutation) -> Result<RCGraph> {
    let n = w.size();
    if n > MAX_N {
        return Err(Error::TooLarge(n));
    }
    let mut grid = Grid::empty(n);
    for (i, j) in crossings.iter() {
        if i + j > n {
            return Err(Error::OutsideStaircase(i, j));
        }
        grid.insert((i, j));
    }
    if grid.len() != w.length() {
        return Err(Error::WrongCrossingCount { found: grid.len(), expected: w.length() });
    }
    let got = evaluate_word(&grid.reading_word(), n);
    let want: Vec<usize> = (1..=n).map(|i| w.apply(i)).collect();
    if got != want {
        return Err(Error::WrongEvaluation { got, want });
    }
    let label = grid.label();
    Ok(RCGraph { owner: w.clone(), grid, label, strands: OnceLock::new() })
}

/// Default per-permutation enumeration budget: `PIPEDREAM_BUDGET` from the
/// environment when set, otherwise ten million graphs.
pub fn default_budget() -> usize {
    std::env::var("PIPEDREAM_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000)
}

/// Breadth-first closure of `{B_w}` under ladder moves of order at most
/// `max_order` (all orders when `None`), as raw grids in discovery order.
pub(crate) fn closure_grids(
    w: &Permutation,
    max_order: Option<usize>,
    budget: usize,
) -> Result<Vec<Grid>> {
    let start = bottom(w)?.grid;
    let mut seen: HashSet<u128> = HashSet::new();
    let mut order: Vec<Grid> = Vec::new();
    let mut queue: VecDeque<Grid> = VecDeque::new();
    seen.insert(start.bits);
    order.push(start);
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        for m in g.moves(max_order) {
            let next = g.apply(&m);
            if seen.insert(next.bits) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded { limit: budget });
                }
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

/// All RC-graphs of `w`, in breadth-first discovery order from `B_w` under
/// the default budget.  The first entry is always `B_w`.
pub fn enumerate_all(w: &Permutation) -> Result<Vec<RCGraph>> {
    enumerate_with_budget(w, default_budget())
}

/// [`enumerate_all`] with an explicit budget.
pub fn enumerate_with_budget(w: &Permutation, budget: usize) -> Result<Vec<RCGraph>> {
    Ok(closure_grids(w, None, budget)?
        .into_iter()
        .map(|g| RCGraph::from_grid(w.clone(), g))
        .collect())
}

/// Breadth-first closure of `{B_w}` under ladder moves of order at most
/// `max_order`, as graphs in discovery order.
pub fn enumerate_up_to_order(
    w: &Permutation,
    max_order: usize,
    budget: usize,
) -> Result<Vec<RCGraph>> {
    Ok(closure_grids(w, Some(max_order), budget)?
        .into_iter()
        .map(|g| RCGraph::from_grid(w.clone(), g))
        .collect())
}

/// Number of RC-graphs of `w` without materializing them.
pub fn count_all(w: &Permutation, budget: usize) -> Result<u64> {
    Ok(closure_grids(w, None, budget)?.len() as u64)
}

/// Connected component of `start` in the undirected graph whose edges are
/// simple ladder moves, in breadth-first discovery order.
pub fn simple_component(start: &RCGraph) -> Result<Vec<RCGraph>> {
    let grids = simple_component_grids(start.grid, default_budget())?;
    Ok(grids.into_iter().map(|g| RCGraph::from_grid(start.owner.clone(), g)).collect())
}

pub(crate) fn simple_component_grids(start: Grid, budget: usize) -> Result<Vec<Grid>> {
    let mut seen: HashSet<u128> = HashSet::new();
    let mut order: Vec<Grid> = Vec::new();
    let mut queue: VecDeque<Grid> = VecDeque::new();
    seen.insert(start.bits);
    order.push(start);
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        let mut neighbors: Vec<Grid> =
            g.moves(Some(0)).iter().map(|m| g.apply(m)).collect();
        neighbors.extend(g.inverse_simple_neighbors());
        for next in neighbors {
            if seen.insert(next.bits) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded { limit: budget });
                }
                order.push(next);
                queue.push_back(next);
            }
        }
    }
    Ok(order)
}

/// Greedily applies simple moves (first applicable in row-major order) until
/// none remain; returns the terminal graph and the number of steps taken.
///
/// Simple moves are confluent, so from `B_w` every maximal run ends at `T_w`
/// after the same number of steps.
pub fn simple_sink(start: &RCGraph) -> (RCGraph, usize) {
    let mut g = start.grid;
    let mut steps = 0;
    while let Some(m) = g.moves(Some(0)).first() {
        g = g.apply(m);
        steps += 1;
    }
    (RCGraph::from_grid(start.owner.clone(), g), steps)
}

/// Whether all RC-graphs of `w` form a single simple-move component.
pub fn is_simply_connected(w: &Permutation) -> Result<bool> {
    is_simply_connected_with_budget(w, default_budget())
}

/// [`is_simply_connected`] with an explicit budget.
pub fn is_simply_connected_with_budget(w: &Permutation, budget: usize) -> Result<bool> {
    let all = closure_grids(w, None, budget)?.len();
    let component = simple_component_grids(bottom(w)?.grid, budget)?.len();
    debug_assert!(component <= all);
    Ok(component == all)
}
