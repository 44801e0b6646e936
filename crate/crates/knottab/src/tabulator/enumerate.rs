//! Generation of canonical drawable codes.
//!
//! Crossing count `k`, permutation `p` of `1..=k` and binary word `b` give
//! the code with pair `(2i-1, 2p_i)` when `b_i = 0` and `(2p_i, 2i-1)` when
//! `b_i = 1`. Permutations are visited in lexicographic order; a permutation
//! is kept only when its shadow is the canonical one of its orbit and
//! drawable, and then all `2^k` words are canonicalized.

use serde::{Deserialize, Serialize};

use crate::dowker::{canonical_tables, is_composite_tables, DowkerSet, MAX_CROSSINGS};
use crate::drawability::realize;

/// Position in the enumeration: crossing count, permutation rank and word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EnumerationCursor {
    pub k: usize,
    pub perm_index: u64,
    pub word_index: u64,
}

impl EnumerationCursor {
    pub fn start() -> Self {
        EnumerationCursor::default()
    }

    pub fn is_done(&self, n: usize) -> bool {
        self.k > n
    }

    /// Moves past `count` permutations, rolling over to the next `k`.
    pub fn advance(&mut self, count: u64) {
        self.perm_index += count;
        self.word_index = 0;
        if self.perm_index >= factorial(self.k) {
            self.k += 1;
            self.perm_index = 0;
        }
    }
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// The permutation of `0..k` with lexicographic rank `index`.
pub fn unrank_permutation(k: usize, mut index: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..k).collect();
    let mut out = Vec::with_capacity(k);
    for i in (0..k).rev() {
        let f = factorial(i);
        let d = (index / f) as usize;
        index %= f;
        out.push(pool.remove(d));
    }
    out
}

/// Shadow (partner table) of a permutation: label `2i` pairs with `2p_i + 1`,
/// zero-based.
pub fn shadow_of(perm: &[usize]) -> Vec<u8> {
    let m = 2 * perm.len();
    let mut partner = vec![0u8; m];
    for (i, &j) in perm.iter().enumerate() {
        partner[2 * i] = (2 * j + 1) as u8;
        partner[2 * j + 1] = (2 * i) as u8;
    }
    partner
}

/// Which shadows enter the pool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShadowFilter {
    /// Every drawable shadow, kinks and split shadows included.
    All,
    /// Only shadows with no closed proper run of labels.
    Prime,
}

/// Canonical codes of every drawable shadow among permutations
/// `start..end` of `k`, in ascending key order per shadow.
pub fn codes_for_range(k: usize, start: u64, end: u64, filter: ShadowFilter) -> Vec<u128> {
    let mut out = Vec::new();
    for idx in start..end {
        let perm = unrank_permutation(k, idx);
        out.extend(codes_for_shadow(&perm, filter));
    }
    out
}

/// Canonical keys of all over/under choices on one permutation's shadow, or
/// nothing if the shadow is not canonical, not drawable or filtered out.
pub fn codes_for_shadow(perm: &[usize], filter: ShadowFilter) -> Vec<u128> {
    let k = perm.len();
    let partner = shadow_of(perm);
    let m = 2 * k;
    let flat = vec![false; m];
    let (_, canon, _) = canonical_tables(&partner, &flat);
    if canon != partner {
        return Vec::new();
    }
    if filter == ShadowFilter::Prime && is_composite_tables(&partner) {
        return Vec::new();
    }
    let base = DowkerSet::from_tables(&partner, &(0..m).map(|x| x % 2 == 0).collect::<Vec<_>>());
    if !realize(&base).is_drawable() {
        return Vec::new();
    }
    let mut keys = Vec::with_capacity(1 << k);
    let mut over = vec![false; m];
    for word in 0u64..(1u64 << k) {
        for i in 0..k {
            let odd_over = word >> (k - 1 - i) & 1 == 0;
            over[2 * i] = odd_over;
            over[partner[2 * i] as usize] = !odd_over;
        }
        let (_, p, o) = canonical_tables(&partner, &over);
        keys.push(pack(&p, &o));
    }
    keys.sort_unstable();
    keys.dedup();
    keys
}

const SLOT: u32 = 5;

/// Low bits of a packed key holding the over flags; the rest is the shadow.
pub const OVER_BITS: u32 = MAX_CROSSINGS as u32;

/// Packs a code whose pairs join odd and even labels into an integer whose
/// numeric order matches the order of [`DowkerSet`].
pub fn pack(partner: &[u8], over: &[bool]) -> u128 {
    let k = partner.len() / 2;
    debug_assert!(k <= MAX_CROSSINGS);
    let mut key = k as u128;
    for i in 0..MAX_CROSSINGS {
        key <<= SLOT;
        if i < k {
            key |= partner[2 * i] as u128 + 1;
        }
    }
    for i in 0..MAX_CROSSINGS {
        key <<= 1;
        if i < k && over[2 * i] {
            key |= 1;
        }
    }
    key
}

pub fn pack_set(s: &DowkerSet) -> Option<u128> {
    if !s.has_odd_even_pairing() {
        return None;
    }
    Some(pack(&s.partner_table(), &s.over_table()))
}

pub fn unpack(key: u128) -> DowkerSet {
    let k = (key >> (MAX_CROSSINGS as u32 * (SLOT + 1))) as usize;
    let m = 2 * k;
    let mut partner = vec![0u8; m];
    let mut over = vec![false; m];
    for i in 0..k {
        let shift = MAX_CROSSINGS as u32 + SLOT * (MAX_CROSSINGS - 1 - i) as u32;
        let j = ((key >> shift) & ((1 << SLOT) - 1)) as u8 - 1;
        partner[2 * i] = j;
        partner[j as usize] = (2 * i) as u8;
        let o = (key >> (MAX_CROSSINGS - 1 - i)) & 1 == 1;
        over[2 * i] = o;
        over[j as usize] = !o;
    }
    DowkerSet::from_tables(&partner, &over)
}

/// One representative per canonical orbit of drawable codes with at most
/// `n` crossings, in ascending order.
pub fn enumerate_codes(n: usize, filter: ShadowFilter) -> Vec<u128> {
    let mut keys = Vec::new();
    for k in 0..=n {
        keys.extend(codes_for_range(k, 0, factorial(k), filter));
    }
    keys.sort_unstable();
    keys.dedup();
    keys
}

/// Canonical drawable codes on prime shadows with at most `n` crossings.
pub fn enumerate_projections(n: usize) -> Vec<DowkerSet> {
    enumerate_codes(n, ShadowFilter::Prime).into_iter().map(unpack).collect()
}
