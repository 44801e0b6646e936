//! Dowker pair-set codes.
//!
//! A knot projection with `n` crossings is walked once from a base point and
//! every pass through a crossing receives the next label in `1..=2n`. Each
//! crossing then owns two labels and is stored as the ordered pair
//! `(over_label, under_label)`.
//!
//! Codes related by moving the base point, reversing the orientation or
//! swapping every pair (mirror image) describe the same unoriented,
//! achiral projection. [`DowkerSet::canonicalize`] picks one representative
//! from each such orbit.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CodeError;

/// Largest crossing count supported by the packed representations used by
/// the tabulator.
pub const MAX_CROSSINGS: usize = 14;

/// A validated Dowker code: `n` ordered pairs partitioning `1..=2n`.
///
/// Pairs are kept sorted by over label so that two codes describing the same
/// set compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DowkerSet {
    pairs: Vec<(u32, u32)>,
}

/// The element of the identification group that produced a canonical code:
/// `label -> (shift + sign * label) mod 2n`, followed by an optional mirror.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Transform {
    pub shift: u32,
    pub reversed: bool,
    pub mirrored: bool,
}

/// A code in canonical form together with the transform that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalCode {
    pub set: DowkerSet,
    pub provenance: Transform,
}

/// A label `k` at which the code separates into the pairs below `k` and the
/// pairs at or above `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitPoint {
    pub k: u32,
}

impl DowkerSet {
    /// The crossingless diagram.
    pub fn unknot() -> Self {
        DowkerSet { pairs: Vec::new() }
    }

    /// Checks that `raw` partitions `1..=2n` and builds the code.
    pub fn new(raw: &[(u32, u32)]) -> Result<Self, CodeError> {
        let n = raw.len();
        if n > 127 {
            return Err(CodeError::TooLarge(n));
        }
        let max = 2 * n as u32;
        let mut seen = vec![false; 2 * n + 1];
        for &(a, b) in raw {
            for l in [a, b] {
                if l == 0 || l > max {
                    return Err(CodeError::LabelOutOfRange { label: l, max });
                }
                if seen[l as usize] {
                    return Err(CodeError::DuplicateLabel(l));
                }
                seen[l as usize] = true;
            }
        }
        let mut pairs = raw.to_vec();
        pairs.sort_unstable();
        Ok(DowkerSet { pairs })
    }

    /// Builds a code from already-checked pairs.
    pub(crate) fn from_pairs_unchecked(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.sort_unstable();
        DowkerSet { pairs }
    }

    /// Builds a code from a partner table and over flags, both indexed by
    /// `label - 1`.
    pub(crate) fn from_tables(partner: &[u8], over: &[bool]) -> Self {
        let pairs = (0..partner.len())
            .filter(|&x| over[x])
            .map(|x| (x as u32 + 1, partner[x] as u32 + 1))
            .collect();
        Self::from_pairs_unchecked(pairs)
    }

    pub fn crossings(&self) -> usize {
        self.pairs.len()
    }

    pub fn label_count(&self) -> u32 {
        2 * self.pairs.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs sorted by over label. The index of a pair is its crossing id.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// `partner[l - 1]` is the other label of the crossing containing `l`,
    /// zero-based.
    pub fn partner_table(&self) -> Vec<u8> {
        let mut p = vec![0u8; 2 * self.pairs.len()];
        for &(a, b) in &self.pairs {
            p[a as usize - 1] = (b - 1) as u8;
            p[b as usize - 1] = (a - 1) as u8;
        }
        p
    }

    /// `over[l - 1]` is true when label `l` is the over pass of its crossing.
    pub fn over_table(&self) -> Vec<bool> {
        let mut o = vec![false; 2 * self.pairs.len()];
        for &(a, _) in &self.pairs {
            o[a as usize - 1] = true;
        }
        o
    }

    /// Removes the given crossings and renumbers the surviving labels by
    /// rank, keeping their cyclic order and over/under roles.
    pub fn delete_crossings(&self, ids: &[usize]) -> DowkerSet {
        let m = self.label_count() as usize;
        let mut gone = vec![false; m + 1];
        for &id in ids {
            let (a, b) = self.pairs[id];
            gone[a as usize] = true;
            gone[b as usize] = true;
        }
        let mut rank = vec![0u32; m + 1];
        let mut next = 0;
        for l in 1..=m {
            if !gone[l] {
                next += 1;
                rank[l] = next;
            }
        }
        Self::from_pairs_unchecked(
            self.pairs
                .iter()
                .filter(|&&(a, _)| !gone[a as usize])
                .map(|&(a, b)| (rank[a as usize], rank[b as usize]))
                .collect(),
        )
    }

    /// Crossing id for every label, indexed by `label - 1`.
    pub fn crossing_of_label(&self) -> Vec<usize> {
        let mut c = vec![0usize; 2 * self.pairs.len()];
        for (id, &(a, b)) in self.pairs.iter().enumerate() {
            c[a as usize - 1] = id;
            c[b as usize - 1] = id;
        }
        c
    }

    /// True when every pair joins an odd label to an even one.
    pub fn has_odd_even_pairing(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| (a + b) % 2 == 1)
    }

    /// Moves the origin by `shift` and, for `sign = -1`, reverses the
    /// orientation: label `l` becomes `(shift + sign * l) mod 2n`, taken in
    /// `1..=2n`.
    pub fn relabel(&self, shift: i64, sign: i8) -> DowkerSet {
        let m = self.label_count() as i64;
        if m == 0 {
            return self.clone();
        }
        let f = |l: u32| -> u32 {
            let v = (shift + sign as i64 * l as i64 - 1).rem_euclid(m);
            v as u32 + 1
        };
        Self::from_pairs_unchecked(self.pairs.iter().map(|&(a, b)| (f(a), f(b))).collect())
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> DowkerSet {
        Self::from_pairs_unchecked(self.pairs.iter().map(|&(a, b)| (b, a)).collect())
    }

    pub fn apply(&self, t: Transform) -> DowkerSet {
        let s = self.relabel(t.shift as i64, if t.reversed { -1 } else { 1 });
        if t.mirrored {
            s.mirror()
        } else {
            s
        }
    }

    /// The least code in the orbit under origin shifts, orientation reversal
    /// and mirroring.
    pub fn canonicalize(&self) -> CanonicalCode {
        let partner = self.partner_table();
        let over = self.over_table();
        let (t, p, o) = canonical_tables(&partner, &over);
        CanonicalCode {
            set: DowkerSet::from_tables(&p, &o),
            provenance: t,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonicalize().set == *self
    }

    /// Ordering key: partners of the odd labels, then of the even labels;
    /// ties are broken by the over flags in the same label order.
    pub fn order_key(&self) -> (Vec<u32>, Vec<bool>) {
        let partner = self.partner_table();
        let over = self.over_table();
        let order = key_positions(partner.len());
        (
            order.iter().map(|&y| partner[y] as u32 + 1).collect(),
            order.iter().map(|&y| over[y]).collect(),
        )
    }

    /// DT-style sequence: the partner of each odd label `1, 3, ..., 2n-1`,
    /// negated when the partner is the over pass. `None` when some pair does
    /// not join an odd label to an even one.
    pub fn dt_sequence(&self) -> Option<Vec<i32>> {
        if !self.has_odd_even_pairing() {
            return None;
        }
        let partner = self.partner_table();
        let over = self.over_table();
        Some(
            (0..self.crossings())
                .map(|i| {
                    let odd = 2 * i;
                    let even = partner[odd] as usize;
                    let v = even as i32 + 1;
                    if over[even] {
                        -v
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }

    /// Every `k` in `2..=2n` with no pair straddling it, i.e. each pair lies
    /// entirely below `k` or entirely at or above `k`.
    pub fn detect_connected_sum(&self) -> Vec<SplitPoint> {
        let m = self.label_count();
        (2..=m)
            .filter(|&k| self.pairs.iter().all(|&(i, j)| (i < k) == (j < k)))
            .map(|k| SplitPoint { k })
            .collect()
    }

    /// Splits at `k` into the pairs below `k` and the pairs at or above `k`,
    /// each relabeled onto `1..=2m`. Returns `None` if some pair straddles `k`.
    pub fn split_at(&self, k: SplitPoint) -> Option<(DowkerSet, DowkerSet)> {
        let k = k.k;
        if self.pairs.iter().any(|&(i, j)| (i < k) != (j < k)) {
            return None;
        }
        let (low, high): (Vec<_>, Vec<_>) = self.pairs.iter().partition(|&&(i, _)| i < k);
        let high = high.into_iter().map(|(i, j)| (i - (k - 1), j - (k - 1))).collect();
        Some((Self::from_pairs_unchecked(low), Self::from_pairs_unchecked(high)))
    }

    /// Joins two codes end to end: the labels of `other` follow those of `self`.
    pub fn concat(&self, other: &DowkerSet) -> DowkerSet {
        let off = self.label_count();
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().map(|&(a, b)| (a + off, b + off)));
        Self::from_pairs_unchecked(pairs)
    }

    /// True when some proper, nonempty cyclic run of labels is closed under
    /// pairing, i.e. the code splits after some change of origin. Kinks
    /// `(i, i+1)` count once `n >= 2`.
    pub fn is_composite(&self) -> bool {
        is_composite_tables(&self.partner_table())
    }

    /// Text form `n ; o1,u1 o2,u2 ...` with pairs sorted by over label.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} ;", self.crossings());
        for &(a, b) in &self.pairs {
            s.push_str(&format!(" {a},{b}"));
        }
        s
    }

    /// Parses either the full text form or a bare pair list such as
    /// `"1,4 3,6 5,2"`. Parentheses and brackets are ignored.
    pub fn parse(text: &str) -> Result<Self, CodeError> {
        let (declared, body) = match text.split_once(';') {
            Some((head, body)) => {
                let n = head
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| CodeError::Parse(format!("bad crossing count {:?}", head.trim())))?;
                (Some(n), body)
            }
            None => (None, text),
        };
        let cleaned: String = body
            .chars()
            .map(|c| if matches!(c, '(' | ')' | '[' | ']' | '{' | '}') { ' ' } else { c })
            .collect();
        let mut pairs = Vec::new();
        for tok in cleaned.split_whitespace() {
            let tok = tok.trim_matches(',');
            if tok.is_empty() {
                continue;
            }
            let (a, b) = tok
                .split_once(',')
                .ok_or_else(|| CodeError::Parse(format!("expected o,u but found {tok:?}")))?;
            let a = a.trim().parse::<u32>().map_err(|_| CodeError::Parse(format!("bad label {a:?}")))?;
            let b = b.trim().parse::<u32>().map_err(|_| CodeError::Parse(format!("bad label {b:?}")))?;
            pairs.push((a, b));
        }
        if let Some(n) = declared {
            if n != pairs.len() {
                return Err(CodeError::Parse(format!("declared {n} crossings, found {}", pairs.len())));
            }
        }
        Self::new(&pairs)
    }
}

impl fmt::Display for DowkerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for DowkerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DowkerSet({})", self.to_text())
    }
}

impl Ord for DowkerSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.crossings()
            .cmp(&other.crossings())
            .then_with(|| self.order_key().cmp(&other.order_key()))
    }
}

impl PartialOrd for DowkerSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Zero-based label positions in key order: odd labels, then even labels.
pub(crate) fn key_positions(m: usize) -> Vec<usize> {
    (0..m).step_by(2).chain((1..m).step_by(2)).collect()
}

/// Old zero-based label mapped to new zero-based label under the
/// relabeling with the given shift and orientation.
#[inline]
pub(crate) fn forward(x: usize, shift: usize, reversed: bool, m: usize) -> usize {
    if reversed {
        (shift + 2 * m - x - 2) % m
    } else {
        (shift + x) % m
    }
}

#[inline]
fn backward(y: usize, shift: usize, reversed: bool, m: usize) -> usize {
    if reversed {
        (shift + 2 * m - y - 2) % m
    } else {
        (y + m - shift) % m
    }
}

/// Canonical form on zero-based tables. Returns the minimizing transform and
/// the transformed tables.
pub(crate) fn canonical_tables(partner: &[u8], over: &[bool]) -> (Transform, Vec<u8>, Vec<bool>) {
    let m = partner.len();
    if m == 0 {
        return (Transform::default(), Vec::new(), Vec::new());
    }
    let order = key_positions(m);
    // Minimal shadow over the dihedral group.
    let mut best: Vec<u8> = Vec::new();
    let mut ties: Vec<(usize, bool)> = Vec::new();
    let mut cand = vec![0u8; m];
    for reversed in [false, true] {
        for shift in 0..m {
            let mut state = if best.is_empty() { Ordering::Less } else { Ordering::Equal };
            for (pos, &y) in order.iter().enumerate() {
                let x = backward(y, shift, reversed, m);
                let v = forward(partner[x] as usize, shift, reversed, m) as u8;
                cand[pos] = v;
                if state == Ordering::Equal {
                    state = v.cmp(&best[pos]);
                    if state == Ordering::Greater {
                        break;
                    }
                }
            }
            match state {
                Ordering::Less => {
                    best.clear();
                    best.extend_from_slice(&cand);
                    ties.clear();
                    ties.push((shift, reversed));
                }
                Ordering::Equal => ties.push((shift, reversed)),
                Ordering::Greater => {}
            }
        }
    }
    // Over flags among the tied transforms, with and without mirroring.
    let mut best_bits: Option<(Vec<bool>, Transform)> = None;
    for &(shift, reversed) in &ties {
        let bits: Vec<bool> = order
            .iter()
            .map(|&y| over[backward(y, shift, reversed, m)])
            .collect();
        for mirrored in [false, true] {
            let b: Vec<bool> = if mirrored { bits.iter().map(|v| !v).collect() } else { bits.clone() };
            let better = match &best_bits {
                None => true,
                Some((cur, _)) => b < *cur,
            };
            if better {
                best_bits = Some((b, Transform { shift: shift as u32, reversed, mirrored }));
            }
        }
    }
    let (bits, t) = best_bits.expect("at least one transform");
    let mut p = vec![0u8; m];
    let mut o = vec![false; m];
    for (pos, &y) in order.iter().enumerate() {
        p[y] = best[pos];
        o[y] = bits[pos];
    }
    (t, p, o)
}

pub(crate) fn is_composite_tables(partner: &[u8]) -> bool {
    let m = partner.len();
    if m < 4 {
        return false;
    }
    let mut inside = vec![false; m];
    for start in 0..m {
        inside.iter_mut().for_each(|v| *v = false);
        let mut matched = 0usize;
        for len in 1..m - 1 {
            let x = (start + len - 1) % m;
            inside[x] = true;
            if inside[partner[x] as usize] {
                matched += 2;
            }
            if matched == len {
                return true;
            }
        }
    }
    false
}
