//! Constructive lower-bound engine: for every Rothe-diagram box with
//! nonempty row set `A` and column set `C`, manufactures `#A · #C` RC-graphs
//! whose labels differ from the bottom graph's, and recovers the box from
//! each of them.
//!
//! For a box `(i, j)` of `RD(w)`, let `A = {a < i | w(a) < j}` and
//! `C = {i < c < w⁻¹(j) | j < w(c) < w(i)}`; summing `#A · #C` over all boxes
//! counts the occurrences of the pattern 1432 in `w`.  The construction runs
//! in three stages, all executed as literal ladder-move sequences so that the
//! move engine validates every intermediate graph:
//!
//! 1. simple moves below row `i` compact the boxes between `(i, j)` and
//!    `(c_1, w(c_1))` into a rectangle missing its bottom-right corner;
//! 2. simple moves above row `i` clear the rows `A` needs;
//! 3. for each `0 <= a' < #A` and `0 <= c' < #C`, order-`r` moves lift the
//!    rectangle's bottom row, `c'` simple moves lift trailing row-`i`
//!    crossings, and `a'` rounds of simple moves raise everything further.
//!
//! Only the order-`r` moves change crossing diagonals, which is what makes
//! the source box recoverable from the result.

use crate::perm::{self, Permutation};
use crate::rcgraph::{self, LadderMove, RCGraph};
use crate::{diag, Cell, Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// The left-justification bijection `RD(w) → B_w`, sending `(i, j)` to
/// `(i, j − #A_{(i,j)})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaMap {
    forward: BTreeMap<Cell, Cell>,
}

impl BetaMap {
    /// Image of a Rothe-diagram cell, if it is one.
    pub fn image(&self, cell: Cell) -> Option<Cell> {
        self.forward.get(&cell).copied()
    }

    /// The unique Rothe-diagram cell mapping to a bottom-graph cell, if any.
    pub fn preimage(&self, cell: Cell) -> Option<Cell> {
        self.forward.iter().find(|&(_, &img)| img == cell).map(|(&src, _)| src)
    }

    /// All (diagram cell, bottom cell) pairs in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.forward.iter().map(|(&a, &b)| (a, b))
    }

    /// Number of cells mapped.
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    /// Whether the map is empty.
    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }
}

/// Number of rows above `i` whose image under `w` lies left of column `j`.
fn a_count(w: &Permutation, i: usize, j: usize) -> usize {
    (1..i).filter(|&a| w.apply(a) < j).count()
}

/// The image of one Rothe-diagram cell under left-justification.
fn beta_cell(w: &Permutation, cell: Cell) -> Cell {
    (cell.0, cell.1 - a_count(w, cell.0, cell.1))
}

/// The left-justification map of `w` as an explicit bijection.
pub fn beta(w: &Permutation) -> BetaMap {
    let forward: BTreeMap<Cell, Cell> =
        w.rothe_diagram().iter().map(|cell| (cell, beta_cell(w, cell))).collect();
    BetaMap { forward }
}

/// Checks that for every pair of Rothe-diagram cells `(i, j)`, `(i', j')`
/// with `i < i'` and `j < j'`, the diagonals of their left-justified images
/// differ by at least 2.  Expected to hold for every permutation; a `false`
/// return signals a broken invariant.
pub fn check_diag_gap(w: &Permutation) -> bool {
    let map = beta(w);
    let cells: Vec<(Cell, Cell)> = map.iter().collect();
    for &((i, j), img) in &cells {
        for &((i2, j2), img2) in &cells {
            if i < i2 && j < j2 && diag(img2) as isize - (diag(img) as isize) < 2 {
                return false;
            }
        }
    }
    true
}

/// Everything the staged construction needs to know about one box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxContext {
    /// The box `(i, j) ∈ RD(w)`.
    pub cell: Cell,
    /// `A = {a < i | w(a) < j}`, ascending.
    pub a_rows: Vec<usize>,
    /// `C = {i < c < w⁻¹(j) | j < w(c) < w(i)}`, ordered so that
    /// `w(c_1) < w(c_2) < …`.
    pub c_rows: Vec<usize>,
    /// `I = {i <= i' <= c_1 | (i', j) ∈ RD(w)}`, ascending; starts at `i`,
    /// ends at `c_1`.
    pub rows: Vec<usize>,
    /// `J = {j <= j' <= w(c_1) | (i, j') ∈ RD(w)}`, ascending; starts at
    /// `j`, ends at `w(c_1)`.
    pub cols: Vec<usize>,
    /// Column of the left-justified image of the box: `l = j − #A`.
    pub left_col: usize,
}

impl BoxContext {
    /// `r = #I − 1`: the order of the label-changing moves.
    pub fn r(&self) -> usize {
        self.rows.len() - 1
    }

    /// `m = #J − 1`: one less than the rectangle's width.
    pub fn m(&self) -> usize {
        self.cols.len() - 1
    }

    /// The first column witness `c_1` (row index with smallest `w` value
    /// above `j`).
    pub fn c1(&self) -> usize {
        self.c_rows[0]
    }
}

/// Builds the [`BoxContext`] for a Rothe-diagram box; errors when the cell
/// is not a box or when its column set `C` is empty (nothing to build).
pub fn build_context(w: &Permutation, cell: Cell) -> Result<BoxContext> {
    let rd = w.rothe_diagram();
    if !rd.contains(cell) {
        return Err(Error::NotADiagramBox(cell.0, cell.1));
    }
    let (i, j) = cell;
    let (a_rows, c_rows) = perm::box_rows(w, cell);
    if c_rows.is_empty() {
        return Err(Error::EmptyColumnSet(i, j));
    }
    let c1 = c_rows[0];
    let rows: Vec<usize> = (i..=c1).filter(|&r| rd.contains((r, j))).collect();
    let cols: Vec<usize> = (j..=w.apply(c1)).filter(|&c| rd.contains((i, c))).collect();
    debug_assert!(rows.len() >= 2 && *rows.last().unwrap() == c1);
    debug_assert!(cols.len() >= 2 && *cols.last().unwrap() == w.apply(c1));
    // Inside the rectangle spanned by (i, j) and (c_1, w(c_1)) the diagram
    // cells are exactly I × J minus the bottom-right corner.
    #[cfg(debug_assertions)]
    for r in i..=c1 {
        for c in j..=w.apply(c1) {
            let expected =
                rows.contains(&r) && cols.contains(&c) && (r, c) != (c1, w.apply(c1));
            debug_assert_eq!(rd.contains((r, c)), expected, "rectangle mismatch at ({r},{c})");
        }
    }
    let left_col = j - a_rows.len();
    Ok(BoxContext { cell, a_rows, c_rows, rows, cols, left_col })
}

/// Applies `times` simple moves to the crossing currently at `cell`,
/// following it up-right; returns the resulting graph.
fn lift(mut d: RCGraph, mut cell: Cell, times: usize) -> Result<RCGraph> {
    for _ in 0..times {
        let mv = LadderMove { source: cell, order: 0, target: (cell.0 - 1, cell.1 + 1) };
        d = d.apply_move(&mv)?;
        cell = mv.target;
    }
    Ok(d)
}

/// Diagram cells of row `row` with column at least `min_col`, descending.
fn row_cells_from(w: &Permutation, row: usize, min_col: usize) -> Vec<usize> {
    let mut cols: Vec<usize> = w
        .rothe_diagram()
        .iter()
        .filter(|&(r, c)| r == row && c >= min_col)
        .map(|(_, c)| c)
        .collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    cols
}

/// Runs the two simple-move stages from the bottom graph.
///
/// Stage one compacts the rows of `I` so that `I × J` minus its corner forms
/// the consecutive rectangle `{i..i+r} × {l..l+m} ∖ {(i+r, l+m)}`; for the
/// `k`-th row of `I` each crossing `β(i_k, j')` with `(i_k, j') ∈ RD(w)`,
/// `j' >= j`, rises `i_k − i − k` rows, rightmost first.  Stage two clears
/// space above row `i`: for each `i' < i` ascending and each `(i', j') ∈
/// RD(w)` with `j' >= j`, rightmost first, `β(i', j')` rises
/// `#{a < i' | w(a) < j}` rows.  Both stages use only simple moves, so both
/// results keep the bottom graph's label.
pub fn build_staged(w: &Permutation, ctx: &BoxContext) -> Result<(RCGraph, RCGraph)> {
    let (i, j) = ctx.cell;
    let mut d = rcgraph::bottom(w)?;
    for (k, &ik) in ctx.rows.iter().enumerate() {
        let times = ik - i - k;
        for col in row_cells_from(w, ik, j) {
            d = lift(d, beta_cell(w, (ik, col)), times)?;
        }
    }
    let d0 = d.clone();
    for row in 1..i {
        let times = a_count(w, row, j);
        for col in row_cells_from(w, row, j) {
            d = lift(d, beta_cell(w, (row, col)), times)?;
        }
    }
    debug_assert_eq!(d0.label(), rcgraph::bottom(w)?.label());
    debug_assert_eq!(d.label(), rcgraph::bottom(w)?.label());
    Ok((d0, d))
}

/// Length of the crossing run `(i, l+m+1), (i, l+m+2), …` in the staged
/// graph; at least `#C − 1` by construction.
fn trailing_run(staged: &RCGraph, i: usize, after_col: usize) -> usize {
    let mut q0 = 0;
    while staged.contains((i, after_col + q0 + 1)) {
        q0 += 1;
    }
    q0
}

/// Builds the full witness family of one box: one graph per pair
/// `(a', c')` with `0 <= a' < #A` and `0 <= c' < #C`, each reached from the
/// staged graph by `m` order-`r` moves, `c'` simple moves, and `a'` rounds
/// of simple moves over the freshly moved crossings (right to left).
///
/// Every witness is validated by the move engine, has a label different
/// from the bottom graph's, and maps back to the box under [`recover_box`].
pub fn build_witnesses(w: &Permutation, ctx: &BoxContext) -> Result<Vec<RCGraph>> {
    let (i, _) = ctx.cell;
    let (r, m, l) = (ctx.r(), ctx.m(), ctx.left_col);
    let (_, staged) = build_staged(w, ctx)?;
    let q0 = trailing_run(&staged, i, l + m);
    debug_assert!(q0 + 1 >= ctx.c_rows.len());
    let mut family = Vec::with_capacity(ctx.a_rows.len() * ctx.c_rows.len());
    for a_steps in 0..ctx.a_rows.len() {
        for c_steps in 0..ctx.c_rows.len() {
            let mut d = staged.clone();
            let mut moved: Vec<Cell> = Vec::with_capacity(m + c_steps);
            // Order-r moves lift the rectangle's bottom row into row i−1.
            for col in (l..=(l + m - 1)).rev() {
                let mv = LadderMove {
                    source: (i + r, col),
                    order: r,
                    target: (i - 1, col + 1),
                };
                d = d.apply_move(&mv)?;
                moved.push(mv.target);
            }
            // c' simple moves lift the tail of row i, rightmost first.
            for col in ((l + m + q0 - c_steps + 1)..=(l + m + q0)).rev() {
                let mv = LadderMove { source: (i, col), order: 0, target: (i - 1, col + 1) };
                d = d.apply_move(&mv)?;
                moved.push(mv.target);
            }
            // a' rounds of simple moves over everything just moved,
            // right to left within each round.
            for _ in 0..a_steps {
                moved.sort_unstable_by_key(|cell| std::cmp::Reverse(cell.1));
                for cell in moved.iter_mut() {
                    let mv =
                        LadderMove { source: *cell, order: 0, target: (cell.0 - 1, cell.1 + 1) };
                    d = d.apply_move(&mv)?;
                    *cell = mv.target;
                }
            }
            family.push(d);
        }
    }
    Ok(family)
}

/// Per-diagonal crossing counts of a graph.
fn diagonal_histogram(g: &RCGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for cell in g.crossings() {
        *hist.entry(diag(cell)).or_insert(0) += 1;
    }
    hist
}

/// Recovers the source box of a witness.
///
/// Simple moves slide each crossing along its own diagonal, so the
/// per-diagonal crossing counts of every graph in the bottom graph's simple
/// component agree with the bottom graph's; only the order-`r` moves of the
/// witness construction carry crossings across diagonals.  The lowest
/// diagonal where `D` holds more crossings than the bottom graph is
/// therefore the diagonal of the moved block's leftmost crossing — and of
/// the bottom-graph cell `β(i, j)` of the source box, which sits on the
/// same diagonal just below the block.  Each crossing of `D` on that
/// diagonal is tried as the block's leftmost cell: walk down the diagonal
/// to the next crossing of `D`, pull that cell back through the
/// left-justification map, and accept the box whose witness family
/// contains `D`.
pub fn recover_box(w: &Permutation, d: &RCGraph) -> Result<Cell> {
    let base = diagonal_histogram(&rcgraph::bottom(w)?);
    let hist = diagonal_histogram(d);
    let Some(delta) = hist
        .iter()
        .filter(|&(dg, &count)| count > base.get(dg).copied().unwrap_or(0))
        .map(|(&dg, _)| dg)
        .min()
    else {
        return Err(Error::NotAWitness);
    };
    let map = beta(w);
    let mut found = None;
    for (row, col) in d.crossings() {
        if row + col - 1 != delta {
            continue;
        }
        // First crossing of D strictly below (row, col) on the diagonal.
        let Some(anchor) =
            ((row + 1)..=delta).map(|t| (t, delta + 1 - t)).find(|&cell| d.contains(cell))
        else {
            continue;
        };
        let Some(source) = map.preimage(anchor) else {
            continue;
        };
        let Ok(ctx) = build_context(w, source) else {
            continue;
        };
        if build_witnesses(w, &ctx)?.iter().any(|g| g == d) {
            assert!(
                found.is_none() || found == Some(source),
                "witness of {w} recovered from two boxes"
            );
            found = Some(source);
        }
    }
    found.ok_or(Error::NotAWitness)
}

/// Per-box and total witness data for one permutation.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub w: Permutation,
    pub boxes: Vec<BoxReport>,
    /// `Σ #A·#C` over all boxes — the 1432-occurrence count of `w`.
    pub total: u64,
}

/// Witness data of a single Rothe-diagram box.
#[derive(Debug, Clone, Serialize)]
pub struct BoxReport {
    pub cell: Cell,
    pub a_count: usize,
    pub c_count: usize,
    /// Crossing sets of the witnesses, in `(a', c')` order.
    pub witnesses: Vec<Vec<Cell>>,
    /// The box recovered from each witness (should repeat `cell`).
    pub recovered: Vec<Cell>,
}

/// Builds every witness family of `w` and the recovery round-trip data.
pub fn witness_report(w: &Permutation) -> Result<WitnessReport> {
    let mut boxes = Vec::new();
    let mut total = 0u64;
    for cell in w.rothe_diagram().iter() {
        let (a_rows, c_rows) = perm::box_rows(w, cell);
        if a_rows.is_empty() || c_rows.is_empty() {
            continue;
        }
        let ctx = build_context(w, cell)?;
        let family = build_witnesses(w, &ctx)?;
        total += (a_rows.len() * c_rows.len()) as u64;
        let recovered: Vec<Cell> =
            family.iter().map(|d| recover_box(w, d)).collect::<Result<_>>()?;
        boxes.push(BoxReport {
            cell,
            a_count: a_rows.len(),
            c_count: c_rows.len(),
            witnesses: family.iter().map(|d| d.crossings()).collect(),
            recovered,
        });
    }
    Ok(WitnessReport { w: w.clone(), boxes, total })
}

/// Number of witnesses over all boxes, checking that they are pairwise
/// distinct across the whole permutation; equals the 1432 count of `w`.
pub fn total_witness_count(w: &Permutation) -> Result<u64> {
    let report = witness_report(w)?;
    let mut seen: BTreeSet<Vec<Cell>> = BTreeSet::new();
    let mut count = 0u64;
    for b in &report.boxes {
        for crossings in &b.witnesses {
            assert!(seen.insert(crossings.clone()), "witness families overlap for {w}");
            count += 1;
        }
    }
    debug_assert_eq!(count, report.total);
    Ok(count)
}
