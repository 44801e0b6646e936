//! Exhaustive enumeration and classification of knot classes.
//!
//! [`tabulate`] runs three stages: every canonical drawable code with at
//! most `n` crossings is generated ([`enumerate`]), codes joined by moves
//! that do not add crossings are identified ([`merge`]), and the surviving
//! classes are told apart by invariants ([`classify`]).
//!
//! ```
//! use knottab::tabulator::tabulate;
//!
//! let table = tabulate(4, 1);
//! assert_eq!(table.histogram(), vec![1, 0, 0, 1, 1]);
//! ```

pub mod classify;
pub mod enumerate;
pub mod merge;

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{Certificate, Verdict};
pub use enumerate::{enumerate_codes, enumerate_projections, pack_set, unpack, EnumerationCursor, ShadowFilter};
pub use merge::{merge_equivalences, MergeRecord, UnionFind};

use crate::dowker::{is_composite_tables, DowkerSet};

/// Work limits for one call. Steps count permutations during enumeration
/// and shadow groups during merging.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub seconds: Option<f64>,
    pub max_steps: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabulateConfig {
    pub n: usize,
    pub m: u32,
    pub filter: ShadowFilter,
    pub budget: Budget,
}

impl TabulateConfig {
    pub fn new(n: usize, m: u32) -> Self {
        TabulateConfig { n, m, filter: ShadowFilter::All, budget: Budget::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Enumerate,
    Merge,
}

/// Everything needed to continue an interrupted run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: usize,
    pub m: u32,
    pub filter: ShadowFilter,
    pub stage: Stage,
    pub cursor: EnumerationCursor,
    /// Packed codes as hex strings.
    pub pool: Vec<String>,
    pub next_group: usize,
    pub union_find: Option<UnionFind>,
    pub merges: Vec<MergeRecord>,
}

impl Checkpoint {
    fn fresh(cfg: &TabulateConfig) -> Self {
        Checkpoint {
            n: cfg.n,
            m: cfg.m,
            filter: cfg.filter,
            stage: Stage::Enumerate,
            cursor: EnumerationCursor::start(),
            pool: Vec::new(),
            next_group: 0,
            union_find: None,
            merges: Vec::new(),
        }
    }
}

#[derive(Debug, Error)]
pub enum TabulateError {
    #[error("resource budget exceeded; progress saved in the checkpoint")]
    BudgetExceeded(Box<Checkpoint>),
    #[error("checkpoint was written for n={n}, m={m}")]
    CheckpointMismatch { n: usize, m: u32 },
}

/// One class of the final table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotClass {
    /// Least canonical code in the class.
    pub representative: DowkerSet,
    pub crossings: usize,
    /// Number of pool codes in the class.
    pub size: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotTable {
    pub n: usize,
    pub m: u32,
    pub pool_size: usize,
    /// Classes whose minimal members are all split shadows, left out of the
    /// table.
    pub composite_classes: usize,
    pub classes: Vec<KnotClass>,
    pub merges: Vec<MergeRecord>,
}

impl KnotTable {
    /// Class count per minimal crossing number `0..=n`.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.n + 1];
        for c in &self.classes {
            h[c.crossings] += 1;
        }
        h
    }

    /// `crossings,classes` rows.
    pub fn table_csv(&self) -> String {
        self.histogram().iter().enumerate().map(|(c, k)| format!("{c},{k}\n")).collect()
    }

    pub fn table_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .histogram()
            .iter()
            .enumerate()
            .map(|(c, k)| serde_json::json!({ "crossings": c, "classes": k }))
            .collect();
        serde_json::to_string_pretty(&rows).expect("plain values serialize") + "\n"
    }

    /// One certificate record per class.
    pub fn knots_txt(&self) -> String {
        let mut out = String::new();
        for c in &self.classes {
            let verdict = match &c.certificate.verdict {
                Verdict::Distinct => "distinct".to_string(),
                Verdict::Unresolved(others) => format!("UNRESOLVED with {}", others.join(" / ")),
            };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                c.crossings,
                c.representative.to_text(),
                c.certificate.to_text(),
                verdict
            ));
        }
        out
    }

    /// One line per move that joined two classes.
    pub fn merges_log(&self) -> String {
        self.merges.iter().map(|r| format!("{} -> {} : {}\n", r.from, r.to, r.step)).collect()
    }

    pub fn unresolved(&self) -> usize {
        self.classes.iter().filter(|c| c.certificate.verdict != Verdict::Distinct).count()
    }
}

/// Runs all stages without limits over the full pool of drawable shadows.
pub fn tabulate(n: usize, m: u32) -> KnotTable {
    match tabulate_with(&TabulateConfig::new(n, m), None) {
        Ok(t) => t,
        Err(e) => unreachable!("unbounded run stopped: {e}"),
    }
}

const PERM_CHUNK: u64 = 4096;
const GROUP_CHUNK: usize = 1024;

/// Runs or resumes a tabulation under the configured budget.
pub fn tabulate_with(cfg: &TabulateConfig, resume: Option<Checkpoint>) -> Result<KnotTable, TabulateError> {
    let mut cp = match resume {
        Some(cp) => {
            if cp.n != cfg.n || cp.m != cfg.m || cp.filter != cfg.filter {
                return Err(TabulateError::CheckpointMismatch { n: cp.n, m: cp.m });
            }
            cp
        }
        None => Checkpoint::fresh(cfg),
    };
    let started = Instant::now();
    let mut steps = 0u64;
    let over_budget = |steps: u64| {
        cfg.budget.max_steps.is_some_and(|s| steps >= s)
            || cfg.budget.seconds.is_some_and(|s| started.elapsed().as_secs_f64() >= s)
    };

    let mut pool: Vec<u128> = cp.pool.iter().map(|h| u128::from_str_radix(h, 16).expect("checkpoint keys are hex")).collect();

    if cp.stage == Stage::Enumerate {
        use rayon::prelude::*;
        while !cp.cursor.is_done(cfg.n) {
            if over_budget(steps) {
                cp.pool = pool.iter().map(|k| format!("{k:x}")).collect();
                return Err(TabulateError::BudgetExceeded(Box::new(cp)));
            }
            let k = cp.cursor.k;
            let total = enumerate::factorial(k);
            let start = cp.cursor.perm_index;
            let end = (start + PERM_CHUNK * rayon::current_num_threads() as u64).min(total);
            let sub: Vec<(u64, u64)> =
                (start..end).step_by(PERM_CHUNK as usize).map(|a| (a, (a + PERM_CHUNK).min(end))).collect();
            let found: Vec<Vec<u128>> =
                sub.par_iter().map(|&(a, b)| enumerate::codes_for_range(k, a, b, cfg.filter)).collect();
            pool.extend(found.into_iter().flatten());
            cp.cursor.advance(end - start);
            steps += end - start;
        }
        pool.sort_unstable();
        pool.dedup();
        cp.stage = Stage::Merge;
        cp.union_find = Some(UnionFind::new(pool.len()));
        cp.next_group = 0;
    }

    let groups = merge::shadow_groups(&pool);
    let mut uf = cp.union_find.take().expect("merge stage has a union-find");
    while cp.next_group < groups.len() {
        if over_budget(steps) {
            cp.pool = pool.iter().map(|k| format!("{k:x}")).collect();
            cp.union_find = Some(uf);
            return Err(TabulateError::BudgetExceeded(Box::new(cp)));
        }
        let end = (cp.next_group + GROUP_CHUNK).min(groups.len());
        merge::merge_groups(&pool, &groups[cp.next_group..end], &mut uf, &mut cp.merges);
        steps += (end - cp.next_group) as u64;
        cp.next_group = end;
    }

    Ok(finish(cfg, &pool, &mut uf, cp.merges))
}

fn finish(cfg: &TabulateConfig, pool: &[u128], uf: &mut UnionFind, merges: Vec<MergeRecord>) -> KnotTable {
    let roots = uf.roots();
    let mut size = vec![0usize; pool.len()];
    // a class counts unless every member at its least crossing number is split
    let mut prime_min = vec![false; pool.len()];
    for (i, &r) in roots.iter().enumerate() {
        size[r] += 1;
        let s = unpack(pool[i]);
        if s.crossings() == unpack(pool[r]).crossings() && !is_composite_tables(&s.partner_table()) {
            prime_min[r] = true;
        }
    }
    let class_roots: Vec<usize> = (0..pool.len()).filter(|&i| roots[i] == i).collect();
    let kept: Vec<usize> = class_roots.iter().copied().filter(|&r| prime_min[r]).collect();
    let reps: Vec<DowkerSet> = kept.iter().map(|&r| unpack(pool[r])).collect();
    let certs = classify::classify(&reps, cfg.m);
    let classes = kept
        .iter()
        .zip(reps)
        .zip(certs)
        .map(|((&r, rep), certificate)| KnotClass { crossings: rep.crossings(), representative: rep, size: size[r], certificate })
        .collect();
    KnotTable {
        n: cfg.n,
        m: cfg.m,
        pool_size: pool.len(),
        composite_classes: class_roots.len() - kept.len(),
        classes,
        merges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_tables() {
        assert_eq!(tabulate(0, 1).table_csv(), "0,1\n");
        assert_eq!(tabulate(3, 1).histogram(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn interrupted_runs_resume_to_the_same_table() {
        let full = tabulate(5, 2);
        let mut cfg = TabulateConfig::new(5, 2);
        cfg.budget.max_steps = Some(1);
        let mut cp = None;
        let table = loop {
            match tabulate_with(&cfg, cp.take()) {
                Ok(t) => break t,
                Err(TabulateError::BudgetExceeded(c)) => {
                    let text = serde_json::to_string(&c).unwrap();
                    cp = Some(serde_json::from_str(&text).unwrap());
                }
                Err(e) => panic!("{e}"),
            }
        };
        assert_eq!(table.knots_txt(), full.knots_txt());
        assert_eq!(table.table_csv(), full.table_csv());
    }
}
