//! Exhaustive verification harness: sweeps whole symmetric groups,
//! re-checking every structural claim the library rests on, and produces
//! mergeable, machine-readable reports.
//!
//! Per-permutation checks iterate `S_n` in lexicographic one-line order, so
//! failure witnesses are canonical and a long run can be sharded by rank
//! (`rank % shards == shard_id`) and resumed from a plain-text checkpoint.
//! Fixture checks (`check_low_order_closure`, `check_catalan`) verify a
//! fixed list instead of a group and run on shard 0 only.

use crate::perm::{self, Permutation};
use crate::rcgraph::{self, RCGraph};
use crate::witness;
use crate::{schubert, Diagram, Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Permutations are processed (and checkpoints flushed) in chunks this big.
const CHUNK: usize = 10_000;

/// One failing permutation with a human-readable reason.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub window: Vec<usize>,
    pub detail: String,
}

/// Outcome of one check over one symmetric group or fixture list.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    /// Permutations (or fixtures) examined by this run.
    pub tested: u64,
    pub failures: Vec<Failure>,
    /// Wall-clock milliseconds; informational only, ignored by
    /// [`CheckReport::same_outcome`].
    pub wall_ms: u128,
    /// Shard ids that contributed to this report.
    pub shard_ids: Vec<usize>,
    /// Total shard count the contributing runs were configured with.
    pub shards: usize,
}

impl CheckReport {
    fn new(check: &str, n: usize, opts: &SuiteOptions) -> CheckReport {
        CheckReport {
            check: check.to_string(),
            n,
            tested: 0,
            failures: Vec::new(),
            wall_ms: 0,
            shard_ids: vec![opts.shard_id],
            shards: opts.shards,
        }
    }

    /// A report passes when no failures were recorded.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Folds a sibling shard's report into this one.  Panics when the two
    /// reports describe different checks — that is a caller bug, not data.
    pub fn merge(&mut self, other: CheckReport) {
        assert_eq!(
            (&self.check, self.n, self.shards),
            (&other.check, other.n, other.shards),
            "cannot merge reports of different checks"
        );
        self.tested += other.tested;
        self.failures.extend(other.failures);
        self.failures.sort();
        self.failures.dedup();
        self.wall_ms += other.wall_ms;
        self.shard_ids.extend(other.shard_ids);
        self.shard_ids.sort_unstable();
        self.shard_ids.dedup();
    }

    /// Same verdict and witnesses, ignoring timing and shard bookkeeping.
    pub fn same_outcome(&self, other: &CheckReport) -> bool {
        self.check == other.check
            && self.n == other.n
            && self.tested == other.tested
            && self.failures == other.failures
    }
}

/// Merges reports of the same check across shards; reports of different
/// checks pass through, ordered by first appearance.
pub fn merge_all(reports: Vec<CheckReport>) -> Vec<CheckReport> {
    let mut merged: Vec<CheckReport> = Vec::new();
    for report in reports {
        match merged.iter_mut().find(|r| r.check == report.check && r.n == report.n) {
            Some(existing) => existing.merge(report),
            None => merged.push(report),
        }
    }
    merged
}

/// Sharding, checkpointing, and resume configuration for a suite run.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub shards: usize,
    pub shard_id: usize,
    /// Directory for checkpoint files; `None` disables checkpointing.
    pub checkpoint_dir: Option<PathBuf>,
    /// Skip ranks at or below the stored checkpoint.
    pub resume: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { shards: 1, shard_id: 0, checkpoint_dir: None, resume: false }
    }
}

fn validate_shards(opts: &SuiteOptions) -> Result<()> {
    if opts.shards == 0 || opts.shard_id >= opts.shards {
        return Err(Error::BadShard { shards: opts.shards, shard_id: opts.shard_id });
    }
    Ok(())
}

fn checkpoint_path(dir: &Path, check: &str, n: usize, opts: &SuiteOptions) -> PathBuf {
    dir.join(format!("{check}-n{n}-s{}of{}.ckpt", opts.shard_id, opts.shards))
}

/// Reads a checkpoint file of the form `check,n,rank`; absent file means a
/// fresh start.
fn read_checkpoint(path: &Path, check: &str, n: usize) -> Result<Option<u64>> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) if err.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(err) => return Err(Error::CheckpointIo(err.to_string())),
    };
    let parts: Vec<&str> = text.trim().split(',').collect();
    let bad = || Error::CheckpointIo(format!("malformed checkpoint {}", path.display()));
    if parts.len() != 3 || parts[0] != check || parts[1] != n.to_string() {
        return Err(bad());
    }
    let rank: u64 = parts[2].parse().map_err(|_| bad())?;
    Ok(Some(rank))
}

fn write_checkpoint(path: &Path, check: &str, n: usize, rank: u64) -> Result<()> {
    fs::write(path, format!("{check},{n},{rank}\n"))
        .map_err(|err| Error::CheckpointIo(err.to_string()))
}

/// Runs one per-permutation test over this shard's slice of `S_n`.
///
/// The test returns `Ok(None)` on pass, `Ok(Some(detail))` on failure, and
/// `Err` only for engine problems (budget, overflow), which abort the whole
/// sweep.  Chunks of [`CHUNK`] ranks run in parallel; the checkpoint is
/// flushed after each chunk.
fn sweep<F>(check: &str, n: usize, opts: &SuiteOptions, test: F) -> Result<CheckReport>
where
    F: Fn(&Permutation) -> Result<Option<String>> + Sync,
{
    validate_shards(opts)?;
    let started = Instant::now();
    let mut report = CheckReport::new(check, n, opts);
    let ckpt = opts
        .checkpoint_dir
        .as_deref()
        .map(|dir| checkpoint_path(dir, check, n, opts));
    let mut done_through: Option<u64> = None;
    if opts.resume {
        if let Some(path) = &ckpt {
            done_through = read_checkpoint(path, check, n)?;
        }
    }

    let mut pending: Vec<Vec<usize>> = Vec::with_capacity(CHUNK);
    let run_chunk = |pending: &mut Vec<Vec<usize>>,
                     report: &mut CheckReport|
     -> Result<()> {
        let found: Vec<Option<Failure>> = pending
            .par_iter()
            .map(|window| -> Result<Option<Failure>> {
                let w = Permutation::from_window(window.clone())?;
                Ok(test(&w)?
                    .map(|detail| Failure { window: window.clone(), detail }))
            })
            .collect::<Result<_>>()?;
        report.tested += pending.len() as u64;
        report.failures.extend(found.into_iter().flatten());
        pending.clear();
        Ok(())
    };

    let mut last_rank = None;
    for (rank, window) in perm::windows(n).enumerate() {
        let rank = rank as u64;
        last_rank = Some(rank);
        if rank % opts.shards as u64 != opts.shard_id as u64 {
            continue;
        }
        if done_through.is_some_and(|done| rank <= done) {
            continue;
        }
        pending.push(window);
        if pending.len() == CHUNK {
            run_chunk(&mut pending, &mut report)?;
            if let Some(path) = &ckpt {
                write_checkpoint(path, check, n, rank)?;
            }
        }
    }
    run_chunk(&mut pending, &mut report)?;
    if let (Some(path), Some(rank)) = (&ckpt, last_rank) {
        write_checkpoint(path, check, n, rank)?;
    }
    report.failures.sort();
    report.wall_ms = started.elapsed().as_millis();
    Ok(report)
}

/// `ν(w) ≥ 1 + p_132(w) + p_1432(w)` for every `w ∈ S_n`.
pub fn check_lower_bound(n: usize) -> Result<CheckReport> {
    check_lower_bound_sharded(n, &SuiteOptions::default())
}

/// Sharded form of [`check_lower_bound`].
pub fn check_lower_bound_sharded(n: usize, opts: &SuiteOptions) -> Result<CheckReport> {
    let u132 = Permutation::parse("132")?;
    let u1432 = Permutation::parse("1432")?;
    sweep("lower-bound", n, opts, move |w| {
        let nu = schubert::nu(w)?;
        let p132 = perm::count_pattern(&u132, w)?;
        let p1432 = perm::count_pattern(&u1432, w)?;
        Ok((nu < 1 + p132 + p1432)
            .then(|| format!("nu = {nu} < 1 + {p132} + {p1432}")))
    })
}

/// The greedy simple-move chain from the bottom graph reaches the top graph
/// in exactly `p_132(w)` steps, for every `w ∈ S_n`.
pub fn check_chain_count(n: usize) -> Result<CheckReport> {
    check_chain_count_sharded(n, &SuiteOptions::default())
}

/// Sharded form of [`check_chain_count`].
pub fn check_chain_count_sharded(n: usize, opts: &SuiteOptions) -> Result<CheckReport> {
    let u132 = Permutation::parse("132")?;
    sweep("chain-count", n, opts, move |w| {
        let (sink, steps) = rcgraph::simple_sink(&rcgraph::bottom(w)?);
        if sink != rcgraph::top(w)? {
            return Ok(Some(format!("chain sink is not the top graph: {:?}", sink.crossings())));
        }
        let expected = perm::count_pattern(&u132, w)?;
        Ok((steps as u64 != expected)
            .then(|| format!("chain length {steps} differs from p_132 = {expected}")))
    })
}

/// Simple moves connect all RC-graphs of `w` exactly when `w` avoids 1432,
/// for every `w ∈ S_n`.
pub fn check_connectivity(n: usize) -> Result<CheckReport> {
    check_connectivity_sharded(n, &SuiteOptions::default())
}

/// Sharded form of [`check_connectivity`].
pub fn check_connectivity_sharded(n: usize, opts: &SuiteOptions) -> Result<CheckReport> {
    let u1432 = Permutation::parse("1432")?;
    sweep("connectivity", n, opts, move |w| {
        let connected = rcgraph::is_simply_connected(w)?;
        let avoids = perm::avoids(&u1432, w)?;
        Ok((connected != avoids)
            .then(|| format!("simply connected = {connected} but avoids 1432 = {avoids}")))
    })
}

/// The simple-move digraph from the bottom graph of one permutation is
/// confluent: forward search covers the whole undirected component, every
/// move advances exactly one breadth-first layer, local diamonds commute,
/// and the unique sink is the top graph at layer `p_132(w)`.
fn confluence_detail(w: &Permutation) -> Result<Option<String>> {
    let b = rcgraph::bottom(w)?;
    let component = rcgraph::simple_component(&b)?;
    // RCGraph's interior mutability is a strand-type memo that takes no
    // part in Hash or Eq, so graphs are sound map keys.
    #[allow(clippy::mutable_key_type)]
    let mut layer: HashMap<RCGraph, usize> = HashMap::new();
    layer.insert(b.clone(), 0);
    let mut frontier = vec![b];
    let mut sinks: Vec<RCGraph> = Vec::new();
    let mut depth = 0usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for d in &frontier {
            let moves = d.applicable_moves(Some(0));
            if moves.is_empty() {
                sinks.push(d.clone());
            }
            for (k, first) in moves.iter().enumerate() {
                let d1 = d.apply_move(first)?;
                for second in moves.iter().skip(k + 1) {
                    let d2 = d.apply_move(second)?;
                    match (d1.apply_move(second), d2.apply_move(first)) {
                        (Ok(x), Ok(y)) if x == y => {}
                        _ => {
                            return Ok(Some(format!(
                                "diamond fails at {:?} for moves {first:?}, {second:?}",
                                d.crossings()
                            )))
                        }
                    }
                }
                match layer.get(&d1) {
                    None => {
                        layer.insert(d1.clone(), depth + 1);
                        next.push(d1);
                    }
                    Some(&found) if found == depth + 1 => {}
                    Some(&found) => {
                        return Ok(Some(format!(
                            "move from layer {depth} lands on layer {found}"
                        )))
                    }
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    if layer.len() != component.len() {
        return Ok(Some(format!(
            "forward search reaches {} of {} component graphs",
            layer.len(),
            component.len()
        )));
    }
    if sinks.len() != 1 {
        return Ok(Some(format!("{} sinks instead of one", sinks.len())));
    }
    if sinks[0] != rcgraph::top(w)? {
        return Ok(Some("sink differs from the top graph".to_string()));
    }
    let u132 = Permutation::parse("132")?;
    let expected = perm::count_pattern(&u132, w)?;
    let sink_layer = layer[&sinks[0]] as u64;
    Ok((sink_layer != expected)
        .then(|| format!("sink sits on layer {sink_layer}, expected p_132 = {expected}")))
}

/// Confluence of the simple-move digraph for every `w ∈ S_n`.
pub fn check_confluence(n: usize) -> Result<CheckReport> {
    check_confluence_sharded(n, &SuiteOptions::default())
}

/// Sharded form of [`check_confluence`].
pub fn check_confluence_sharded(n: usize, opts: &SuiteOptions) -> Result<CheckReport> {
    sweep("confluence", n, opts, confluence_detail)
}

/// The complete witness data of one permutation is consistent: the family
/// sizes sum to `p_1432(w)`, every witness is a valid RC-graph with a label
/// different from the bottom graph's, witnesses are pairwise distinct
/// across boxes, recovery returns each witness's source box, and the
/// combined bound `1 + p_132 + p_1432 ≤ ν` holds with room for the chain.
fn witness_detail(w: &Permutation) -> Result<Option<String>> {
    let u132 = Permutation::parse("132")?;
    let u1432 = Permutation::parse("1432")?;
    let report = witness::witness_report(w)?;
    let p1432 = perm::count_pattern(&u1432, w)?;
    if report.total != p1432 {
        return Ok(Some(format!("witness total {} differs from p_1432 = {p1432}", report.total)));
    }
    let b = rcgraph::bottom(w)?;
    let mut seen: HashSet<Vec<crate::Cell>> = HashSet::new();
    for boxr in &report.boxes {
        if boxr.witnesses.len() != boxr.a_count * boxr.c_count {
            return Ok(Some(format!(
                "box {:?} yields {} witnesses, expected {}",
                boxr.cell,
                boxr.witnesses.len(),
                boxr.a_count * boxr.c_count
            )));
        }
        for (crossings, recovered) in boxr.witnesses.iter().zip(&boxr.recovered) {
            if recovered != &boxr.cell {
                return Ok(Some(format!(
                    "witness of box {:?} recovered as {:?}",
                    boxr.cell, recovered
                )));
            }
            let d = rcgraph::validate(&Diagram::from_cells(crossings.iter().copied()), w)?;
            if d.label() == b.label() {
                return Ok(Some(format!("witness of box {:?} keeps the bottom label", boxr.cell)));
            }
            if !seen.insert(crossings.clone()) {
                return Ok(Some(format!("duplicate witness across boxes at {:?}", boxr.cell)));
            }
        }
    }
    let nu = schubert::nu(w)?;
    let p132 = perm::count_pattern(&u132, w)?;
    Ok((nu < 1 + p132 + report.total)
        .then(|| format!("nu = {nu} < 1 + {p132} + {}", report.total)))
}

/// Witness-family consistency (counts, validity, labels, distinctness,
/// recovery) for every `w ∈ S_n`.
pub fn check_witnesses(n: usize) -> Result<CheckReport> {
    check_witnesses_sharded(n, &SuiteOptions::default())
}

/// Sharded form of [`check_witnesses`].
pub fn check_witnesses_sharded(n: usize, opts: &SuiteOptions) -> Result<CheckReport> {
    sweep("witnesses", n, opts, witness_detail)
}

/// No coefficient of size at most `n` is negative.  Sizes below `n` come
/// from a full table build; size-`n` windows are then swept one at a time
/// (shardable and resumable, which is what makes the big groups feasible).
pub fn check_nonnegative(n: usize) -> Result<CheckReport> {
    check_nonnegative_sharded(n, &SuiteOptions::default())
}

/// Sharded form of [`check_nonnegative`].
pub fn check_nonnegative_sharded(n: usize, opts: &SuiteOptions) -> Result<CheckReport> {
    validate_shards(opts)?;
    let table = schubert::build_coefficients(n.saturating_sub(1).max(1))?;
    let known = table.violations();
    if let Some((u, c)) = known.first() {
        let mut report = CheckReport::new("nonnegativity", n, opts);
        report.tested = 1;
        report.failures.push(Failure {
            window: u.window().to_vec(),
            detail: format!("c = {c}"),
        });
        return Ok(report);
    }
    sweep("nonnegativity", n, opts, move |w| {
        if w.size() < n {
            // Trailing fixed points: the coefficient is identically zero.
            return Ok(None);
        }
        let c = table.coefficient_of(w.window())?;
        Ok((c < 0).then(|| format!("c = {c}")))
    })
}

/// Closures under moves of order at most 1 match the frozen fixtures:
/// 14532 yields exactly one label-distinct graph (the tail-block lift),
/// 1432 reaches its single isolated witness, and 132 stays label-constant.
pub fn check_low_order_closure() -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("low-order-closure", 5, &SuiteOptions::default());
    let budget = rcgraph::default_budget();
    let mut run = |text: &str, expect: &dyn Fn(&RCGraph, &[RCGraph]) -> Option<String>|
     -> Result<()> {
        let w = Permutation::parse(text)?;
        let b = rcgraph::bottom(&w)?;
        let closure = rcgraph::enumerate_up_to_order(&w, 1, budget)?;
        report.tested += 1;
        if let Some(detail) = expect(&b, &closure) {
            report.failures.push(Failure { window: w.window().to_vec(), detail });
        }
        Ok(())
    };
    run("14532", &|b, closure| {
        let distinct: Vec<&RCGraph> =
            closure.iter().filter(|d| d.label() != b.label()).collect();
        let expected = vec![(1, 2), (1, 3), (2, 2), (3, 1), (3, 2)];
        if distinct.len() != 1 {
            Some(format!("{} label-distinct graphs instead of 1", distinct.len()))
        } else if distinct[0].crossings() != expected {
            Some(format!("unexpected label-distinct graph {:?}", distinct[0].crossings()))
        } else {
            None
        }
    })?;
    run("1432", &|_, closure| {
        let isolated = vec![(1, 2), (2, 1), (2, 2)];
        if closure.len() != 5 {
            Some(format!("{} graphs instead of 5", closure.len()))
        } else if !closure.iter().any(|d| d.crossings() == isolated) {
            Some("order-1 closure misses the isolated graph".to_string())
        } else {
            None
        }
    })?;
    run("132", &|b, closure| {
        let distinct = closure.iter().filter(|d| d.label() != b.label()).count();
        (distinct != 0).then(|| format!("{distinct} label-distinct graphs instead of 0"))
    })?;
    report.wall_ms = started.elapsed().as_millis();
    Ok(report)
}

/// `ν(1, n, n−1, …, 2)` equals the Catalan number `C_{n−1}` for every
/// `2 ≤ n ≤ max_n`.
pub fn check_catalan(max_n: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("catalan", max_n, &SuiteOptions::default());
    for k in 2..=max_n {
        let w = schubert::catalan_permutation(k);
        let got = schubert::nu(&w)?;
        let want = schubert::catalan(k - 1);
        report.tested += 1;
        if got != want {
            report.failures.push(Failure {
                window: w.window().to_vec(),
                detail: format!("nu = {got}, Catalan number is {want}"),
            });
        }
    }
    report.wall_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Runs every check at level `n`.  Per-permutation checks honor the shard
/// configuration; fixture checks run on shard 0 only, so the concatenation
/// of all shards' reports merges into exactly one report per check.
pub fn run_all(n: usize, opts: &SuiteOptions) -> Result<Vec<CheckReport>> {
    validate_shards(opts)?;
    let mut reports = vec![
        check_lower_bound_sharded(n, opts)?,
        check_chain_count_sharded(n, opts)?,
        check_connectivity_sharded(n, opts)?,
        check_confluence_sharded(n, opts)?,
        check_witnesses_sharded(n, opts)?,
        check_nonnegative_sharded(n, opts)?,
    ];
    if opts.shard_id == 0 {
        reports.push(check_low_order_closure()?);
        reports.push(check_catalan(n.max(2))?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_clean(report: &CheckReport, tested: u64) {
        assert!(report.passed(), "{}: {:?}", report.check, report.failures);
        assert_eq!(report.tested, tested, "{}", report.check);
    }

    #[test]
    fn lower_bound_holds_up_to_s5() {
        assert_clean(&check_lower_bound(4).unwrap(), 24);
        assert_clean(&check_lower_bound(5).unwrap(), 120);
    }

    #[test]
    fn chain_counts_hold_up_to_s5() {
        assert_clean(&check_chain_count(5).unwrap(), 120);
    }

    #[test]
    fn connectivity_matches_avoidance_up_to_s5() {
        assert_clean(&check_connectivity(5).unwrap(), 120);
    }

    #[test]
    fn connectivity_example_of_a_larger_avoider() {
        // A size-7 permutation that avoids 1432: its graphs form a single
        // simple-move component, consistently with the sweep's criterion.
        let w = Permutation::parse("4367152").unwrap();
        assert!(rcgraph::is_simply_connected(&w).unwrap());
        assert!(perm::avoids(&Permutation::parse("1432").unwrap(), &w).unwrap());
    }

    #[test]
    fn confluence_holds_up_to_s5() {
        assert_clean(&check_confluence(4).unwrap(), 24);
        assert_clean(&check_confluence(5).unwrap(), 120);
    }

    #[test]
    fn witness_consistency_holds_up_to_s5() {
        assert_clean(&check_witnesses(5).unwrap(), 120);
    }

    #[test]
    fn coefficients_nonnegative_up_to_s5() {
        assert_clean(&check_nonnegative(5).unwrap(), 120);
    }

    #[test]
    fn low_order_closure_fixtures_pass() {
        assert_clean(&check_low_order_closure().unwrap(), 3);
    }

    #[test]
    fn catalan_values_match() {
        assert_clean(&check_catalan(7).unwrap(), 6);
    }

    #[test]
    fn sharded_runs_merge_to_the_unsharded_outcome() {
        let whole = check_lower_bound(4).unwrap();
        let mut parts: Vec<CheckReport> = Vec::new();
        for shard_id in 0..3 {
            let opts = SuiteOptions { shards: 3, shard_id, ..SuiteOptions::default() };
            parts.push(check_lower_bound_sharded(4, &opts).unwrap());
        }
        assert_eq!(parts.iter().map(|r| r.tested).collect::<Vec<_>>(), vec![8, 8, 8]);
        let merged = merge_all(parts);
        assert_eq!(merged.len(), 1);
        // Shard bookkeeping differs, so compare outcomes, not structs.
        assert_ne!(merged[0].shards, whole.shards);
        assert!(merged[0].same_outcome(&whole));
        assert_eq!(merged[0].shard_ids, vec![0, 1, 2]);
    }

    #[test]
    fn run_all_passes_for_s4() {
        let reports = run_all(4, &SuiteOptions::default()).unwrap();
        assert_eq!(reports.len(), 8);
        for report in &reports {
            assert!(report.passed(), "{}: {:?}", report.check, report.failures);
        }
    }

    #[test]
    fn run_all_outcome_is_shard_invariant_at_s5() {
        let whole = run_all(5, &SuiteOptions::default()).unwrap();
        let mut parts: Vec<CheckReport> = Vec::new();
        for shard_id in 0..4 {
            let opts = SuiteOptions { shards: 4, shard_id, ..SuiteOptions::default() };
            parts.extend(run_all(5, &opts).unwrap());
        }
        let merged = merge_all(parts);
        assert_eq!(merged.len(), whole.len());
        for (m, w) in merged.iter().zip(&whole) {
            assert!(m.same_outcome(w), "{} diverges across shardings", m.check);
        }
    }

    #[test]
    fn shard_configuration_is_validated() {
        let bad = SuiteOptions { shards: 0, shard_id: 0, ..SuiteOptions::default() };
        assert!(matches!(
            check_lower_bound_sharded(3, &bad).unwrap_err(),
            Error::BadShard { shards: 0, shard_id: 0 }
        ));
        let bad = SuiteOptions { shards: 2, shard_id: 2, ..SuiteOptions::default() };
        assert!(matches!(
            check_lower_bound_sharded(3, &bad).unwrap_err(),
            Error::BadShard { shards: 2, shard_id: 2 }
        ));
    }

    #[test]
    fn checkpoints_resume_where_a_run_stopped() {
        let dir = tempfile::tempdir().unwrap();
        let opts = SuiteOptions {
            checkpoint_dir: Some(dir.path().to_path_buf()),
            resume: true,
            ..SuiteOptions::default()
        };
        // Simulate an interrupted run that completed ranks 0..=11 of S_4.
        let path = checkpoint_path(dir.path(), "lower-bound", 4, &opts);
        write_checkpoint(&path, "lower-bound", 4, 11).unwrap();
        let partial = check_lower_bound_sharded(4, &opts).unwrap();
        assert!(partial.passed());
        assert_eq!(partial.tested, 12);
        // The finished run leaves a checkpoint at the last rank; resuming
        // again finds nothing left to do.
        assert_eq!(read_checkpoint(&path, "lower-bound", 4).unwrap(), Some(23));
        let nothing_left = check_lower_bound_sharded(4, &opts).unwrap();
        assert_eq!(nothing_left.tested, 0);
    }

    #[test]
    fn checkpoint_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stale.ckpt");
        fs::write(&path, "connectivity,5,7\n").unwrap();
        assert!(matches!(
            read_checkpoint(&path, "lower-bound", 4).unwrap_err(),
            Error::CheckpointIo(_)
        ));
    }
}
