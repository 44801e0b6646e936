//! Identification of pool codes connected by Reidemeister moves.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{pack_set, unpack};
use crate::drawability::{realize, Embedding};
use crate::moves::{apply_with, move_sites, Move};

/// Union-find over pool indices. The root of a set is always its least
/// index, so the final forest does not depend on the order of unions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut y = x;
        while self.parent[y] as usize != r {
            let next = self.parent[y] as usize;
            self.parent[y] = r as u32;
            y = next;
        }
        r
    }

    /// Joins the sets of `a` and `b`; false when they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    /// Root of every element.
    pub fn roots(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// A move from one pool code to another, replayable on the unpacked
/// canonical form of `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeRecord {
    pub from: String,
    pub step: Move,
    pub to: String,
}

/// Moves that do not add crossings, applied to every code of one shadow
/// group. Returns `(from, to, move)` index triples into `pool`.
fn group_edges(pool: &[u128], group: std::ops::Range<usize>) -> Vec<(usize, usize, Move)> {
    let mut out = Vec::new();
    let mut base: Option<Embedding> = None;
    for i in group {
        let s = unpack(pool[i]);
        let e = match &base {
            Some(b) => b.with_set(s.clone()).expect("same shadow"),
            None => {
                let e = realize(&s).embedding().expect("pool codes are drawable");
                base = Some(e.clone());
                e
            }
        };
        let n = s.crossings();
        for d in move_sites(&s, &e, n) {
            let Ok(t) = apply_with(&s, &e, d) else { continue };
            let c = t.canonicalize().set;
            let Some(key) = pack_set(&c) else { continue };
            if let Ok(j) = pool.binary_search(&key) {
                if j != i {
                    out.push((i, j, d));
                }
            }
        }
    }
    out
}

/// Ranges of consecutive pool indices sharing a shadow.
pub fn shadow_groups(pool: &[u128]) -> Vec<std::ops::Range<usize>> {
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=pool.len() {
        if i == pool.len() || pool[i] >> super::enumerate::OVER_BITS != pool[start] >> super::enumerate::OVER_BITS {
            if start < i {
                groups.push(start..i);
            }
            start = i;
        }
    }
    groups
}

/// Processes shadow groups `from..to`, joining `uf` along every move found
/// and logging the moves that joined two different sets.
pub fn merge_groups(
    pool: &[u128],
    groups: &[std::ops::Range<usize>],
    uf: &mut UnionFind,
    log: &mut Vec<MergeRecord>,
) {
    let edges: Vec<Vec<(usize, usize, Move)>> = groups.par_iter().map(|g| group_edges(pool, g.clone())).collect();
    for (i, j, d) in edges.into_iter().flatten() {
        if uf.union(i, j) {
            log.push(MergeRecord { from: unpack(pool[i]).to_text(), step: d, to: unpack(pool[j]).to_text() });
        }
    }
}

/// Partition of the whole pool.
pub fn merge_equivalences(pool: &[u128]) -> (UnionFind, Vec<MergeRecord>) {
    let mut uf = UnionFind::new(pool.len());
    let mut log = Vec::new();
    merge_groups(pool, &shadow_groups(pool), &mut uf, &mut log);
    (uf, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_find_roots_are_minimal() {
        let mut a = UnionFind::new(6);
        a.union(4, 5);
        a.union(5, 2);
        a.union(0, 1);
        let mut b = UnionFind::new(6);
        b.union(0, 1);
        b.union(2, 5);
        b.union(4, 2);
        assert_eq!(a.roots(), b.roots());
        assert_eq!(a.roots(), vec![0, 0, 2, 3, 2, 2]);
        assert!(!a.union(4, 2));
    }
}
