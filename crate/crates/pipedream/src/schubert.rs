//! Principal specializations of Schubert polynomials and the recursive
//! pattern-coefficient table.
//!
//! The principal specialization `ν_w` — the Schubert polynomial of `w` with
//! every variable set to 1 — equals the number of RC-graphs of `w`.  Writing
//! `ν_w = 1 + Σ_u c_u · p_u(w)` over patterns `u` with a non-fixed last
//! entry, where `p_u(w)` counts occurrences of `u` in `w`, pins down integer
//! coefficients `c_u` by induction on the pattern size:
//!
//! ```text
//! c_w = ν_w − 1 − Σ_{|u| < |w|} c_u · p_u(w)
//! ```
//!
//! Patterns whose last entry is a fixed point have coefficient zero, which is
//! why the table only stores canonical windows.  The coefficients are
//! conjectured to be nonnegative; [`CoefficientTable::violations`] reports
//! any counterexample instead of assuming there is none.

use crate::perm::{self, Permutation};
use crate::rcgraph;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Number of RC-graphs of `w` (the principal specialization `ν_w`), under
/// the default enumeration budget.
pub fn nu(w: &Permutation) -> Result<u64> {
    rcgraph::count_all(w, rcgraph::default_budget())
}

/// [`nu`] with an explicit budget.
pub fn nu_with_budget(w: &Permutation, budget: usize) -> Result<u64> {
    rcgraph::count_all(w, budget)
}

/// Independent count of RC-graphs that never runs a ladder move: over all
/// reduced words `(a_1, …, a_ℓ)` of `w`, sum the products `a_1 ⋯ a_ℓ` and
/// divide by `ℓ!`.
///
/// The sum recurses over last letters — `f(w) = Σ_k k · f(w·s_k)` over the
/// descents `k` of `w`, `f(id) = 1` — memoized on the weak-order interval
/// below `w`.  The interval size is capped by the default enumeration budget.
pub fn nu_macdonald_oracle(w: &Permutation) -> Result<u64> {
    fn word_product_sum(
        w: &Permutation,
        memo: &mut HashMap<Vec<usize>, u128>,
        budget: usize,
    ) -> Result<u128> {
        if w.is_identity() {
            return Ok(1);
        }
        if let Some(&v) = memo.get(w.window()) {
            return Ok(v);
        }
        let mut total: u128 = 0;
        for k in w.descents() {
            let shorter = w.swap_positions(k);
            let sub = word_product_sum(&shorter, memo, budget)?;
            total = (k as u128)
                .checked_mul(sub)
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::Overflow("reduced-word product sum"))?;
        }
        if memo.len() >= budget {
            return Err(Error::BudgetExceeded { limit: budget });
        }
        memo.insert(w.window().to_vec(), total);
        Ok(total)
    }

    let mut memo = HashMap::new();
    let total = word_product_sum(w, &mut memo, rcgraph::default_budget())?;
    let mut factorial: u128 = 1;
    for k in 1..=(w.length() as u128) {
        factorial = factorial.checked_mul(k).ok_or(Error::Overflow("length factorial"))?;
    }
    assert_eq!(total % factorial, 0, "word-product sum must be divisible by ℓ(w)!");
    u64::try_from(total / factorial).map_err(|_| Error::Overflow("specialization value"))
}

/// The Schubert polynomial of `w` as a multiset of monomials: each RC-graph
/// contributes the exponent vector of its per-row crossing counts (rows
/// `1..=n-1`; row `n` of the staircase is always empty).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialMultiset {
    counts: BTreeMap<Vec<usize>, u64>,
}

impl MonomialMultiset {
    /// Multiplicity of one exponent vector.
    pub fn multiplicity(&self, exponents: &[usize]) -> u64 {
        self.counts.get(exponents).copied().unwrap_or(0)
    }

    /// All (exponent vector, multiplicity) pairs, lexicographically ordered.
    pub fn iter(&self) -> impl Iterator<Item = (&[usize], u64)> {
        self.counts.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Number of distinct monomials.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Total multiplicity: the value of the polynomial at all variables 1.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }
}

/// Collects the monomials of the Schubert polynomial of `w` by enumeration.
pub fn monomials(w: &Permutation) -> Result<MonomialMultiset> {
    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for graph in rcgraph::enumerate_all(w)? {
        let mut rows = graph.row_weights();
        rows.pop(); // row n is always empty
        *counts.entry(rows).or_insert(0) += 1;
    }
    Ok(MonomialMultiset { counts })
}

/// The table of coefficients `c_u`, built size by size up to `max_size`.
///
/// Only nonzero entries are stored; queries for anything else answer zero.
/// Keys are canonical windows (last entry not fixed), because a pattern
/// ending in a fixed point always has coefficient zero.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    entries: HashMap<Vec<usize>, i64>,
    max_size: usize,
}

/// The two readings of "which permutations maximize `c` at size `n`":
/// over canonical patterns of exact size `n`, and over all of `S_n` scoring
/// each window by the coefficient of its trimmed pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxReport {
    pub n: usize,
    /// Maximum of `c_u` over canonical patterns `u` of size exactly `n`.
    pub max_exact: i64,
    /// The canonical size-`n` patterns attaining `max_exact`, sorted.
    pub argmax_exact: Vec<Permutation>,
    /// Maximum of `c_{trim(w)}` over all windows `w ∈ S_n`.
    pub max_over_group: i64,
    /// The `S_n` windows attaining `max_over_group`, sorted; windows with
    /// trailing fixed points are kept verbatim.
    pub argmax_over_group: Vec<Vec<usize>>,
    /// Whether the two argmax lists coincide.
    pub lists_agree: bool,
}

impl CoefficientTable {
    /// The size up to which the table is complete.
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// The coefficient of a pattern; zero unless stored.
    pub fn get(&self, u: &Permutation) -> i64 {
        self.entries.get(u.window()).copied().unwrap_or(0)
    }

    /// All nonzero entries, sorted by (size, window).
    pub fn nonzero(&self) -> Vec<(Permutation, i64)> {
        let mut out: Vec<(Permutation, i64)> = self
            .entries
            .iter()
            .map(|(window, &c)| {
                (Permutation::from_window(window.clone()).expect("stored keys are windows"), c)
            })
            .collect();
        out.sort_by(|a, b| {
            (a.0.window().len(), a.0.window()).cmp(&(b.0.window().len(), b.0.window()))
        });
        out
    }

    /// Nonzero entries of one exact size, sorted by window.
    pub fn nonzero_of_size(&self, n: usize) -> Vec<(Permutation, i64)> {
        self.nonzero().into_iter().filter(|(u, _)| u.window().len() == n).collect()
    }

    /// Entries with negative coefficients — counterexamples to the
    /// nonnegativity conjecture — sorted by (size, window).
    pub fn violations(&self) -> Vec<(Permutation, i64)> {
        self.nonzero().into_iter().filter(|&(_, c)| c < 0).collect()
    }

    /// Sum of `c_{std(S)}` over all subsets `S` of the window's positions
    /// with `3 <= |S| <= cap`, skipping subsets whose standardization ends
    /// in a fixed point (their coefficient is identically zero).
    fn pattern_sum(&self, window: &[usize], cap: usize) -> Result<i64> {
        let m = window.len();
        let mut sum: i64 = 0;
        let mut sub = Vec::with_capacity(m);
        for mask in 1u32..(1 << m) {
            let size = mask.count_ones() as usize;
            if size < 3 || size > cap {
                continue;
            }
            sub.clear();
            for (k, &v) in window.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    sub.push(v);
                }
            }
            let std = perm::standardize(&sub);
            if *std.last().expect("subsets are nonempty") == std.len() {
                continue;
            }
            if let Some(&c) = self.entries.get(&std) {
                sum = sum.checked_add(c).ok_or(Error::Overflow("pattern sum"))?;
            }
        }
        Ok(sum)
    }

    /// Reconstructs `ν` for an arbitrary (possibly untrimmed) window from
    /// the table alone: `1 + Σ_u c_u p_u(window)` over patterns up to the
    /// window's size.  Requires the table to cover that size.
    pub fn reconstruct_nu(&self, window: &[usize]) -> Result<i64> {
        if window.len() > self.max_size {
            return Err(Error::TooLarge(window.len()));
        }
        Ok(1 + self.pattern_sum(window, window.len())?)
    }

    /// The recursion value of one window against this table's smaller
    /// patterns: `ν(w) − 1 − Σ_{|u| < |w|} c_u p_u(w)`.  Agrees with
    /// [`CoefficientTable::get`] for canonical windows the table covers,
    /// and extends it one size past `max_size`, so a caller can sweep size
    /// `max_size + 1` permutation by permutation without building the next
    /// stage in memory.
    pub fn coefficient_of(&self, window: &[usize]) -> Result<i64> {
        if window.len() > self.max_size + 1 {
            return Err(Error::TooLarge(window.len()));
        }
        let w = Permutation::from_window(window.to_vec())?;
        let nu = i64::try_from(nu(&w)?).map_err(|_| Error::Overflow("nu"))?;
        Ok(nu - 1 - self.pattern_sum(window, window.len().saturating_sub(1))?)
    }

    /// Both maximizer readings at size `n` (see [`MaxReport`]).
    pub fn max_report(&self, n: usize) -> MaxReport {
        let mut max_exact = 0i64;
        let mut argmax_exact: Vec<Permutation> = Vec::new();
        for (u, c) in self.nonzero_of_size(n) {
            if c > max_exact {
                max_exact = c;
                argmax_exact = vec![u];
            } else if c == max_exact {
                argmax_exact.push(u);
            }
        }
        let mut max_over_group = i64::MIN;
        let mut argmax_over_group: Vec<Vec<usize>> = Vec::new();
        for window in perm::windows(n) {
            let trimmed = Permutation::from_window(window.clone()).expect("window is a bijection");
            let c = self.get(&trimmed);
            if c > max_over_group {
                max_over_group = c;
                argmax_over_group = vec![window];
            } else if c == max_over_group {
                argmax_over_group.push(window);
            }
        }
        let exact_windows: Vec<Vec<usize>> =
            argmax_exact.iter().map(|u| u.window().to_vec()).collect();
        let lists_agree = max_exact == max_over_group && exact_windows == argmax_over_group;
        MaxReport { n, max_exact, argmax_exact, max_over_group, argmax_over_group, lists_agree }
    }

    /// CSV rows `n,max_c,argmax list` for sizes `3..=max_size`, using the
    /// exact-size reading; the argmax list is space-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,max_c,argmax\n");
        for n in 3..=self.max_size {
            let report = self.max_report(n);
            let argmax: Vec<String> =
                report.argmax_exact.iter().map(|u| u.to_string()).collect();
            out.push_str(&format!("{},{},{}\n", n, report.max_exact, argmax.join(" ")));
        }
        out
    }

    /// JSON object mapping each nonzero pattern (one-line notation) to its
    /// coefficient.
    pub fn nonzero_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (u, c) in self.nonzero() {
            map.insert(u.to_string(), serde_json::Value::from(c));
        }
        serde_json::Value::Object(map)
    }
}

/// Builds the coefficient table for all canonical patterns of size at most
/// `n`, one size at a time; within a size, permutations are processed in
/// parallel against the already-committed smaller sizes.
pub fn build_coefficients(n: usize) -> Result<CoefficientTable> {
    build_coefficients_with_budget(n, rcgraph::default_budget())
}

/// [`build_coefficients`] with an explicit enumeration budget.
pub fn build_coefficients_with_budget(n: usize, budget: usize) -> Result<CoefficientTable> {
    let mut table = CoefficientTable { entries: HashMap::new(), max_size: 0 };
    for m in 2..=n {
        let canonical: Vec<Vec<usize>> =
            perm::windows(m).filter(|window| window[m - 1] != m).collect();
        let stage: Vec<(Vec<usize>, i64)> = canonical
            .into_par_iter()
            .map(|window| -> Result<(Vec<usize>, i64)> {
                let w = Permutation::from_window(window.clone()).expect("window is a bijection");
                let nu_w = nu_with_budget(&w, budget)? as i64;
                let c = nu_w
                    .checked_sub(1)
                    .and_then(|v| v.checked_sub(table.pattern_sum(&window, m - 1).ok()?))
                    .ok_or(Error::Overflow("coefficient recursion"))?;
                Ok((window, c))
            })
            .collect::<Result<_>>()?;
        for (window, c) in stage {
            if c != 0 {
                table.entries.insert(window, c);
            }
        }
    }
    table.max_size = n.max(1);
    Ok(table)
}

/// The `k`-th Catalan number, from the convolution recurrence.
pub fn catalan(k: usize) -> u64 {
    let mut c = vec![0u64; k + 1];
    c[0] = 1;
    for i in 1..=k {
        for j in 0..i {
            c[i] += c[j] * c[i - 1 - j];
        }
    }
    c[k]
}

/// The permutation `1, n, n−1, …, 2`, whose RC-graphs are counted by the
/// Catalan number `C_{n−1}`.
pub fn catalan_permutation(n: usize) -> Permutation {
    let mut window = vec![1];
    window.extend((2..=n).rev());
    Permutation::from_window(window).expect("window is a bijection")
}

/// Reference values of `c` on the family `1, m, m−1, …, 2` for
/// `m = 3..=n`, derived without the coefficient table.
///
/// Any pattern of `1, n, n−1, …, 2` either contains the leading 1 — giving a
/// smaller member of the family, chosen in `C(n−1, m−1)` ways — or is
/// decreasing, with coefficient zero.  So the reconstruction identity
/// collapses to `C_{n−1} = 1 + Σ_m c_m · C(n−1, m−1)`, which determines the
/// `c_m` from Catalan and binomial numbers alone.
pub fn riordan_reference(n: usize) -> Vec<i64> {
    fn binomial(n: usize, k: usize) -> i64 {
        if k > n {
            return 0;
        }
        let mut value = 1i64;
        for i in 0..k {
            value = value * (n - i) as i64 / (i + 1) as i64;
        }
        value
    }
    let mut out: Vec<i64> = Vec::new();
    for m in 3..=n {
        let mut c = catalan(m - 1) as i64 - 1;
        for (idx, &prev) in out.iter().enumerate() {
            let k = idx + 3;
            c -= prev * binomial(m - 1, k - 1);
        }
        out.push(c);
    }
    out
}

/// Whether the table's values on the family `1, m, m−1, …, 2` match the
/// independent [`riordan_reference`] recursion, for all sizes the table
/// covers (at least size 3 must be covered).
pub fn riordan_check(table: &CoefficientTable) -> bool {
    let n = table.max_size();
    if n < 3 {
        return false;
    }
    let reference = riordan_reference(n);
    (3..=n).all(|m| table.get(&catalan_permutation(m)) == reference[m - 3])
}
