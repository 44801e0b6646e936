//! Reidemeister moves as rewrites of Dowker codes.
//!
//! Edge positions follow [`crate::drawability`]: position `p` joins label `p`
//! to label `p + 1`, and position `0` joins label `2n` to label `1`.
//! Removals delete crossings and renumber the surviving labels by rank, which
//! is the cyclic form of the "replace j by j - 2" bookkeeping. Additions are
//! the inverse shifts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dowker::DowkerSet;
use crate::drawability::{realize, Embedding};
use crate::error::MoveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    /// Insert a kink on the edge at `position`; its first pass is over when
    /// `over_first` is set.
    R1Add { position: u32, over_first: bool },
    /// Remove the kink made of labels `label` and `label + 1` (cyclically).
    R1Remove { label: u32 },
    /// Push the edge at `positions.0` across the edge at `positions.1`
    /// (`positions.0 <= positions.1`). `first_over` puts the first strand on
    /// top; `antiparallel` records how the strands meet across their common
    /// face.
    R2Add { positions: (u32, u32), first_over: bool, antiparallel: bool },
    /// Remove the bigon bounded by the edge at `over_edge`, which passes over
    /// both crossings, and the edge at `under_edge`.
    R2Remove { over_edge: u32, under_edge: u32 },
    /// Slide a strand across the triangle bounded by the three edges.
    R3 { edges: [u32; 3] },
}

impl Move {
    pub fn crossing_change(&self) -> i32 {
        match self {
            Move::R1Add { .. } => 1,
            Move::R1Remove { .. } => -1,
            Move::R2Add { .. } => 2,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
        }
    }
}

impl std::fmt::Display for Move {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Move::R1Add { position, over_first } => write!(f, "R1+ at {position} {}", if *over_first { "over" } else { "under" }),
            Move::R1Remove { label } => write!(f, "R1- at {label}"),
            Move::R2Add { positions: (p, q), first_over, antiparallel } => write!(
                f,
                "R2+ at {p},{q} {} {}",
                if *first_over { "first-over" } else { "second-over" },
                if *antiparallel { "anti" } else { "para" }
            ),
            Move::R2Remove { over_edge, under_edge } => write!(f, "R2- at {over_edge},{under_edge}"),
            Move::R3 { edges: [a, b, c] } => write!(f, "R3 at {a},{b},{c}"),
        }
    }
}

/// Zero-based end labels of the edge at `position`.
#[inline]
fn ends(position: usize, m: usize) -> (usize, usize) {
    ((position + m - 1) % m, position % m)
}

/// Both edge positions touching zero-based label `x`: the one arriving and
/// the one leaving.
#[inline]
fn edges_at(x: usize, m: usize) -> [usize; 2] {
    [x, (x + 1) % m]
}

/// Edge triples whose six end labels form three crossings, one for each pair
/// of edges. Over/under data and faces are ignored.
pub fn shadow_triangles(s: &DowkerSet) -> Vec<[u32; 3]> {
    let m = s.label_count() as usize;
    if m < 6 {
        return Vec::new();
    }
    let partner = s.partner_table();
    let mut out = BTreeSet::new();
    for a in 0..m {
        let (a0, a1) = ends(a, m);
        for b in edges_at(partner[a0] as usize, m) {
            for c in edges_at(partner[a1] as usize, m) {
                if let Some(t) = check_triangle(&partner, [a, b, c], m) {
                    out.insert(t);
                }
            }
        }
    }
    out.into_iter().collect()
}

fn check_triangle(partner: &[u8], edges: [usize; 3], m: usize) -> Option<[u32; 3]> {
    let [a, b, c] = edges;
    if a == b || b == c || a == c {
        return None;
    }
    let mut labels = Vec::with_capacity(6);
    for &e in &edges {
        let (x, y) = ends(e, m);
        labels.push((x, e));
        labels.push((y, e));
    }
    let mut uniq: Vec<usize> = labels.iter().map(|l| l.0).collect();
    uniq.sort_unstable();
    if uniq.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    for &(x, e) in &labels {
        let p = partner[x] as usize;
        match labels.iter().find(|l| l.0 == p) {
            Some(&(_, f)) if f != e => {}
            _ => return None,
        }
    }
    let mut t = [a as u32, b as u32, c as u32];
    t.sort_unstable();
    Some(t)
}

/// True when every triangle edge runs from an over pass to an under pass or
/// back, so no strand lies above both others.
pub(crate) fn cyclic_pattern(over: &[bool], t: [u32; 3]) -> bool {
    let m = over.len();
    t.iter().all(|&x| {
        let (a, b) = ends(x as usize, m);
        over[a] != over[b]
    })
}

/// Exchanges, for each pair of triangle edges, the crossing at their near
/// ends for one at their far ends. Roles (over/under) follow the strands.
pub fn triangle_rewrite(s: &DowkerSet, edges: [u32; 3]) -> DowkerSet {
    let m = s.label_count() as usize;
    let mut other = vec![usize::MAX; m];
    for &e in &edges {
        let (x, y) = ends(e as usize, m);
        other[x] = y;
        other[y] = x;
    }
    let pairs = s
        .pairs()
        .iter()
        .map(|&(o, u)| {
            let (o0, u0) = (o as usize - 1, u as usize - 1);
            if other[o0] != usize::MAX {
                (other[o0] as u32 + 1, other[u0] as u32 + 1)
            } else {
                (o, u)
            }
        })
        .collect();
    DowkerSet::from_pairs_unchecked(pairs)
}

fn is_triangle_face(e: &Embedding, edges: [u32; 3]) -> bool {
    e.faces().iter().any(|f| {
        if f.darts.len() != 3 {
            return false;
        }
        let mut fe: Vec<u32> = f.darts.iter().map(|d| d.edge).collect();
        fe.sort_unstable();
        fe == edges
    })
}

fn is_bigon_face(e: &Embedding, a: u32, b: u32) -> bool {
    e.faces().iter().any(|f| {
        f.darts.len() == 2 && {
            let (x, y) = (f.darts[0].edge, f.darts[1].edge);
            (x, y) == (a, b) || (x, y) == (b, a)
        }
    })
}

/// Bigon removal checked against the embedding: the two edges must bound a
/// face, not merely join the same two crossings. Split shadows have several
/// embeddings, so for them the numeric match is accepted.
fn r2_remove_face(s: &DowkerSet, e: &Embedding, over_edge: u32, under_edge: u32) -> Result<DowkerSet, MoveError> {
    let out = r2_remove(s, over_edge, under_edge)?;
    if !s.is_composite() && !is_bigon_face(e, over_edge, under_edge) {
        return Err(MoveError::SiteNotPresent);
    }
    Ok(out)
}

fn r1_add(s: &DowkerSet, position: u32, over_first: bool) -> Result<DowkerSet, MoveError> {
    let p = position;
    if p > s.label_count() {
        return Err(MoveError::SiteNotPresent);
    }
    let shift = |l: u32| if l > p { l + 2 } else { l };
    let mut pairs: Vec<(u32, u32)> = s.pairs().iter().map(|&(a, b)| (shift(a), shift(b))).collect();
    pairs.push(if over_first { (p + 1, p + 2) } else { (p + 2, p + 1) });
    Ok(DowkerSet::from_pairs_unchecked(pairs))
}

fn r1_remove(s: &DowkerSet, label: u32) -> Result<DowkerSet, MoveError> {
    let m = s.label_count();
    if label == 0 || label > m {
        return Err(MoveError::SiteNotPresent);
    }
    let next = label % m + 1;
    let id = s
        .pairs()
        .iter()
        .position(|&(a, b)| (a == label && b == next) || (a == next && b == label))
        .ok_or(MoveError::SiteNotPresent)?;
    Ok(s.delete_crossings(&[id]))
}

fn r2_remove(s: &DowkerSet, over_edge: u32, under_edge: u32) -> Result<DowkerSet, MoveError> {
    let m = s.label_count() as usize;
    if m < 4 || over_edge as usize >= m || under_edge as usize >= m || over_edge == under_edge {
        return Err(MoveError::SiteNotPresent);
    }
    let partner = s.partner_table();
    let over = s.over_table();
    let (a0, a1) = ends(over_edge as usize, m);
    let (b0, b1) = ends(under_edge as usize, m);
    let mut l = [a0, a1, b0, b1];
    l.sort_unstable();
    if l.windows(2).any(|w| w[0] == w[1]) {
        return Err(MoveError::SiteNotPresent);
    }
    let p0 = partner[a0] as usize;
    let p1 = partner[a1] as usize;
    let matched = (p0 == b0 && p1 == b1) || (p0 == b1 && p1 == b0);
    if !matched || !over[a0] || !over[a1] {
        return Err(MoveError::SiteNotPresent);
    }
    let cross = s.crossing_of_label();
    Ok(s.delete_crossings(&[cross[a0], cross[a1]]))
}

/// Strands meet antiparallel across a face where both are traversed in the
/// same sense; parallel where the senses differ.
fn r2_orientations(e: &Embedding, p: u32, q: u32) -> BTreeSet<bool> {
    let mut out = BTreeSet::new();
    for f in e.faces() {
        if p == q {
            if f.darts.iter().any(|d| d.edge == p) {
                out.insert(true);
            }
            continue;
        }
        for dp in f.darts.iter().filter(|d| d.edge == p) {
            for dq in f.darts.iter().filter(|d| d.edge == q) {
                out.insert(dp.forward == dq.forward);
            }
        }
    }
    out
}

fn r2_add_unchecked(s: &DowkerSet, p: u32, q: u32, first_over: bool, antiparallel: bool) -> DowkerSet {
    let shift = |l: u32| {
        if l <= p {
            l
        } else if l <= q {
            l + 2
        } else {
            l + 4
        }
    };
    let mut pairs: Vec<(u32, u32)> = s.pairs().iter().map(|&(a, b)| (shift(a), shift(b))).collect();
    let (x1, x2) = (p + 1, p + 2);
    let (y1, y2) = (q + 3, q + 4);
    let (cx, cy) = if antiparallel { ((x1, y2), (x2, y1)) } else { ((x1, y1), (x2, y2)) };
    let orient = |(a, b): (u32, u32)| if first_over { (a, b) } else { (b, a) };
    pairs.push(orient(cx));
    pairs.push(orient(cy));
    DowkerSet::from_pairs_unchecked(pairs)
}

fn r3_apply(s: &DowkerSet, e: &Embedding, edges: [u32; 3]) -> Result<DowkerSet, MoveError> {
    let m = s.label_count() as usize;
    if m < 6 || edges.iter().any(|&x| x as usize >= m) {
        return Err(MoveError::SiteNotPresent);
    }
    let mut sorted = edges;
    sorted.sort_unstable();
    let partner = s.partner_table();
    let Some(t) = check_triangle(&partner, sorted.map(|x| x as usize), m) else {
        return Err(MoveError::SiteNotPresent);
    };
    // one strand must lie under both of its crossings (equivalently one over both)
    let over = s.over_table();
    if cyclic_pattern(&over, t) {
        return Err(MoveError::SiteNotPresent);
    }
    if !is_triangle_face(e, t) {
        return Err(MoveError::IncoherentTriangle);
    }
    Ok(triangle_rewrite(s, t))
}

fn embed(s: &DowkerSet) -> Result<Embedding, MoveError> {
    realize(s).embedding().ok_or(MoveError::Undrawable)
}

/// Kink moves.
pub fn r1(s: &DowkerSet, d: Move) -> Result<DowkerSet, MoveError> {
    match d {
        Move::R1Add { position, over_first } => r1_add(s, position, over_first),
        Move::R1Remove { label } => r1_remove(s, label),
        _ => Err(MoveError::SiteNotPresent),
    }
}

/// Bigon moves. Additions need the embedding to find a common face.
pub fn r2(s: &DowkerSet, d: Move) -> Result<DowkerSet, MoveError> {
    match d {
        Move::R2Remove { .. } | Move::R2Add { .. } => apply_with(s, &embed(s)?, d),
        _ => Err(MoveError::SiteNotPresent),
    }
}

/// Triangle move, checked against the realized embedding.
pub fn r3(s: &DowkerSet, d: Move) -> Result<DowkerSet, MoveError> {
    match d {
        Move::R3 { edges } => r3_apply(s, &embed(s)?, edges),
        _ => Err(MoveError::SiteNotPresent),
    }
}

/// Applies any move.
pub fn apply(s: &DowkerSet, d: Move) -> Result<DowkerSet, MoveError> {
    match d {
        Move::R1Add { .. } | Move::R1Remove { .. } => r1(s, d),
        Move::R2Remove { .. } | Move::R2Add { .. } | Move::R3 { .. } => apply_with(s, &embed(s)?, d),
    }
}

/// Applies a move using an embedding already computed for `s` (or for any
/// code with the same shadow).
pub fn apply_with(s: &DowkerSet, e: &Embedding, d: Move) -> Result<DowkerSet, MoveError> {
    match d {
        Move::R1Add { .. } | Move::R1Remove { .. } => r1(s, d),
        Move::R2Remove { over_edge, under_edge } => r2_remove_face(s, e, over_edge, under_edge),
        Move::R2Add { positions: (p, q), first_over, antiparallel } => {
            let m = s.label_count();
            if p > q || q >= m.max(1) {
                return Err(MoveError::SiteNotPresent);
            }
            if !r2_orientations(e, p, q).contains(&antiparallel) {
                return Err(MoveError::SiteNotPresent);
            }
            Ok(r2_add_unchecked(s, p, q, first_over, antiparallel))
        }
        Move::R3 { edges } => r3_apply(s, e, edges),
    }
}

/// The move undoing `d` on `s`, expressed on the result of `d`.
pub fn inverse(s: &DowkerSet, d: Move) -> Option<Move> {
    let m = s.label_count();
    match d {
        Move::R1Add { position, .. } => Some(Move::R1Remove { label: if m == 0 { 1 } else { position % m + 1 } }),
        Move::R1Remove { label } => {
            let over = s.over_table();
            let over_first = over[label as usize - 1];
            let position = if label == m { m - 2 } else { label - 1 };
            Some(Move::R1Add { position, over_first })
        }
        Move::R2Add { positions: (p, q), first_over, .. } => {
            let (a, b) = (p + 1, q + 3);
            Some(if first_over { Move::R2Remove { over_edge: a, under_edge: b } } else { Move::R2Remove { over_edge: b, under_edge: a } })
        }
        Move::R2Remove { over_edge, under_edge } => {
            let mm = m as usize;
            let rest = mm.checked_sub(4)?;
            let (a0, a1) = ends(over_edge as usize, mm);
            let (b0, b1) = ends(under_edge as usize, mm);
            let gone = [a0, a1, b0, b1];
            // (gap, order) of a removed label among the survivors; the gap
            // after the last survivor is the same edge as the gap before the first
            let place = |x: usize| -> (u32, i64) {
                let g = (0..x).filter(|y| !gone.contains(y)).count();
                if rest > 0 && g == rest {
                    (0, x as i64 - mm as i64)
                } else {
                    (g as u32, x as i64)
                }
            };
            let (pa, pb) = (place(a0), place(b0));
            let antiparallel = s.partner_table()[a0] as usize == b1;
            let first_over = pa < pb;
            let (p, q) = if first_over { (pa.0, pb.0) } else { (pb.0, pa.0) };
            Some(Move::R2Add { positions: (p, q), first_over, antiparallel })
        }
        Move::R3 { edges } => Some(Move::R3 { edges }),
    }
}

/// Every applicable single move on `s` that leaves at most `max_n` crossings.
pub fn move_sites(s: &DowkerSet, e: &Embedding, max_n: usize) -> Vec<Move> {
    let n = s.crossings();
    let m = s.label_count();
    let mm = m as usize;
    let mut out = Vec::new();
    // removals
    if n >= 1 && n - 1 <= max_n {
        let partner = s.partner_table();
        for label in 1..=m {
            if m == 2 && label == 2 {
                continue;
            }
            if partner[label as usize - 1] as u32 + 1 == label % m + 1 {
                out.push(Move::R1Remove { label });
            }
        }
    }
    if n >= 2 && n - 2 <= max_n {
        let over = s.over_table();
        for a in 0..m {
            let (a0, a1) = ends(a as usize, mm);
            if !(over[a0] && over[a1]) {
                continue;
            }
            let partner = s.partner_table();
            let p0 = partner[a0] as usize;
            for b in edges_at(p0, mm) {
                let d = Move::R2Remove { over_edge: a, under_edge: b as u32 };
                if r2_remove_face(s, e, a, b as u32).is_ok() {
                    out.push(d);
                }
            }
        }
    }
    if n <= max_n {
        let over = s.over_table();
        for t in shadow_triangles(s) {
            if !cyclic_pattern(&over, t) && is_triangle_face(e, t) {
                out.push(Move::R3 { edges: t });
            }
        }
    }
    // additions
    if n < max_n {
        for position in 0..m.max(1) {
            for over_first in [true, false] {
                out.push(Move::R1Add { position, over_first });
            }
        }
    }
    if n + 2 <= max_n {
        for p in 0..m.max(1) {
            for q in p..m.max(1) {
                for antiparallel in r2_orientations(e, p, q) {
                    for first_over in [true, false] {
                        out.push(Move::R2Add { positions: (p, q), first_over, antiparallel });
                    }
                }
            }
        }
    }
    out
}

/// Canonical codes reachable from `s` by one move, each drawable and with at
/// most `max_n` crossings; `s` itself is excluded.
pub fn neighbors(s: &DowkerSet, max_n: usize) -> BTreeSet<DowkerSet> {
    let Some(e) = realize(s).embedding() else {
        return BTreeSet::new();
    };
    let own = s.canonicalize().set;
    move_sites(s, &e, max_n)
        .into_iter()
        .filter_map(|d| apply_with(s, &e, d).ok())
        .map(|t| t.canonicalize().set)
        .filter(|t| *t != own && realize(t).is_drawable())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(p: &[(u32, u32)]) -> DowkerSet {
        DowkerSet::new(p).unwrap()
    }

    fn trefoil() -> DowkerSet {
        code(&[(1, 4), (3, 6), (5, 2)])
    }

    #[test]
    fn kink_moves() {
        let kink = code(&[(1, 2)]);
        assert_eq!(r1(&kink, Move::R1Remove { label: 1 }), Ok(DowkerSet::unknot()));
        assert_eq!(r1(&DowkerSet::unknot(), Move::R1Add { position: 0, over_first: true }), Ok(kink));
        for label in 1..=6 {
            assert_eq!(r1(&trefoil(), Move::R1Remove { label }), Err(MoveError::SiteNotPresent));
        }
        // wrap-around kink (2n, 1)
        let w = code(&[(1, 4), (3, 6), (5, 2), (8, 7)]).relabel(1, 1);
        assert_eq!(w.pairs().iter().filter(|p| **p == (1, 8)).count(), 1);
        let r = r1(&w, Move::R1Remove { label: 8 }).unwrap();
        assert_eq!(r.canonicalize().set, trefoil().canonicalize().set);
    }

    #[test]
    fn bigon_moves() {
        let two = code(&[(1, 4), (2, 3)]);
        assert_eq!(r2(&two, Move::R2Remove { over_edge: 2, under_edge: 0 }).map(|_| ()), Err(MoveError::SiteNotPresent));
        assert_eq!(r2(&two, Move::R2Remove { over_edge: 1, under_edge: 3 }), Ok(DowkerSet::unknot()));
        let added = r2(&DowkerSet::unknot(), Move::R2Add { positions: (0, 0), first_over: true, antiparallel: true }).unwrap();
        assert_eq!(added, two);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(r2(&trefoil(), Move::R2Remove { over_edge: a, under_edge: b }), Err(MoveError::SiteNotPresent));
            }
        }
    }

    #[test]
    fn trefoil_has_no_r3_site() {
        let t = trefoil();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    assert!(r3(&t, Move::R3 { edges: [a, b, c] }).is_err());
                }
            }
        }
    }

    #[test]
    fn unknot_and_kink_neighbors() {
        let kink = code(&[(1, 2)]).canonicalize().set;
        assert!(neighbors(&DowkerSet::unknot(), 1).contains(&kink));
        assert!(neighbors(&kink, 2).contains(&DowkerSet::unknot()));
        assert!(neighbors(&trefoil(), 3).iter().all(|c| c.crossings() >= 3));
    }
}
