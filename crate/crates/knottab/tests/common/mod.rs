//! Slow, independent oracles shared by the integration tests.

#![allow(dead_code)]

use knottab::invariants::ColoringMatrix;
use knottab::DowkerSet;

/// Every code on `n` crossings: all matchings of `1..=2n` into pairs, with
/// both over/under orders for each pair.
pub fn all_codes(n: usize) -> Vec<DowkerSet> {
    fn matchings(free: &mut Vec<u32>, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            acc.push((a, b));
            matchings(free, acc, out);
            acc.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut ms = Vec::new();
    matchings(&mut (1..=2 * n as u32).collect(), &mut Vec::new(), &mut ms);
    let mut out = Vec::new();
    for m in ms {
        for flips in 0u32..(1 << n) {
            let pairs: Vec<(u32, u32)> = m
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if flips >> i & 1 == 1 { (b, a) } else { (a, b) })
                .collect();
            out.push(DowkerSet::new(&pairs).unwrap());
        }
    }
    out
}

/// Half-edge at a crossing: the edge index and whether the edge ends there.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct HalfEdge {
    edge: usize,
    head: bool,
}

/// A planar rotation system found by trying both transversal cyclic orders
/// at every crossing. Returns the per-crossing signs (in the order of
/// `s.pairs()`) of the first planar system, or None.
pub fn planar_signs(s: &DowkerSet) -> Option<Vec<i8>> {
    let n = s.crossings();
    if n == 0 {
        return Some(Vec::new());
    }
    let m = 2 * n;
    // edge e runs from label e+1 to label e+2 (1-based, cyclic)
    let arriving = |label: u32| HalfEdge { edge: (label as usize + m - 2) % m, head: true };
    let leaving = |label: u32| HalfEdge { edge: label as usize - 1, head: false };
    let pairs = s.pairs();
    for choice in 0u32..(1 << n) {
        let rotations: Vec<[HalfEdge; 4]> = pairs
            .iter()
            .enumerate()
            .map(|(c, &(o, u))| {
                if choice >> c & 1 == 0 {
                    [arriving(o), arriving(u), leaving(o), leaving(u)]
                } else {
                    [arriving(o), leaving(u), leaving(o), arriving(u)]
                }
            })
            .collect();
        let successor = |h: HalfEdge| -> HalfEdge {
            for r in &rotations {
                if let Some(i) = r.iter().position(|&x| x == h) {
                    return r[(i + 1) % 4];
                }
            }
            unreachable!()
        };
        let all: Vec<HalfEdge> =
            (0..m).flat_map(|e| [HalfEdge { edge: e, head: false }, HalfEdge { edge: e, head: true }]).collect();
        let mut seen = vec![false; all.len()];
        let mut faces = 0;
        for start in 0..all.len() {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut h = all[start];
            loop {
                let idx = 2 * h.edge + h.head as usize;
                if seen[idx] {
                    break;
                }
                seen[idx] = true;
                h = successor(HalfEdge { edge: h.edge, head: !h.head });
            }
        }
        // V - E + F = n - 2n + F = 2
        if faces == n + 2 {
            return Some((0..n).map(|c| if choice >> c & 1 == 0 { 1 } else { -1 }).collect());
        }
    }
    None
}

/// Arc colorings by direct enumeration of all `k^arcs` assignments.
pub fn brute_colorings(s: &DowkerSet, signs: &[i8], mat: &ColoringMatrix) -> u64 {
    let n = s.crossings();
    let k = mat.k();
    if n == 0 {
        return k as u64;
    }
    let m = 2 * n;
    let over = s.over_table();
    // edge e leaves label e+1; arcs change after each under label
    let mut under_seen = 0;
    let arc: Vec<usize> = (0..m)
        .map(|e| {
            if !over[e] {
                under_seen += 1;
            }
            under_seen % n
        })
        .collect();
    let arcs = n;
    let arc_of_edge = |e: usize| arc[e];
    let mut total = 0;
    let mut colors = vec![0usize; arcs];
    'outer: loop {
        let ok = s.pairs().iter().zip(signs).all(|(&(o, u), &sign)| {
            let into = colors[arc_of_edge((u as usize + m - 2) % m)];
            let out = colors[arc_of_edge(u as usize - 1)];
            let ov = colors[arc_of_edge(o as usize - 1)];
            if sign > 0 {
                out == mat.get(into, ov)
            } else {
                into == mat.get(out, ov)
            }
        });
        total += ok as u64;
        for c in colors.iter_mut() {
            *c += 1;
            if *c < k {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    total
}

use knottab::drawability::realize;
use knottab::invariants::{affine_matrix, alexander_poly, conjugation_matrix, conway, count_colorings, nontrivial_classes};
use knottab::moves::{apply_with, move_sites, Move};
use knottab::tabulator::{enumerate_codes, unpack, ShadowFilter};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Affine matrices for q in {3, 5, 7} and every conjugation class of
/// degree 3..=5 with more than one element.
pub fn invariance_matrices() -> Vec<ColoringMatrix> {
    let mut mats: Vec<ColoringMatrix> =
        [(3, 2), (5, 2), (5, 3), (7, 3), (7, 6)].iter().map(|&(q, t)| affine_matrix(q, t).unwrap()).collect();
    for p in 3..=5 {
        for c in nontrivial_classes(p) {
            let m = conjugation_matrix(p, &c).unwrap();
            if m.k() > 1 {
                mats.push(m);
            }
        }
    }
    mats
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fingerprint {
    alexander: Vec<i64>,
    colorings: Vec<u64>,
    conway: Vec<i64>,
}

pub fn fingerprint(s: &DowkerSet, mats: &[ColoringMatrix]) -> Fingerprint {
    Fingerprint {
        alexander: alexander_poly(s).unwrap().coefficients(),
        colorings: mats.iter().map(|m| count_colorings(s, m).unwrap()).collect(),
        conway: conway(s).unwrap().coefficients(),
    }
}

/// Summary of a randomized move run.
#[derive(Debug, Default)]
pub struct MoveRun {
    pub applied: usize,
    pub by_kind: [usize; 5],
    pub failures: Vec<String>,
}

fn kind(m: &Move) -> usize {
    match m {
        Move::R1Add { .. } => 0,
        Move::R1Remove { .. } => 1,
        Move::R2Add { .. } => 2,
        Move::R2Remove { .. } => 3,
        Move::R3 { .. } => 4,
    }
}

/// Random walks of single moves from small drawable codes, keeping at most
/// `max_n` crossings. Each move kind present at a code is equally likely.
pub fn random_moves(trials: usize, max_n: usize, seed: u64) -> MoveRun {
    let mats = invariance_matrices();
    let starts: Vec<DowkerSet> = enumerate_codes(5, ShadowFilter::All).into_iter().map(unpack).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = MoveRun::default();
    let mut cur = starts.choose(&mut rng).unwrap().clone();
    let mut fp = fingerprint(&cur, &mats);
    while run.applied < trials {
        if rng.gen_ratio(1, 12) {
            cur = starts.choose(&mut rng).unwrap().clone();
            fp = fingerprint(&cur, &mats);
        }
        let e = realize(&cur).embedding().expect("walk stays drawable");
        let sites = move_sites(&cur, &e, max_n);
        let kinds: Vec<usize> = {
            let mut k: Vec<usize> = sites.iter().map(kind).collect();
            k.sort_unstable();
            k.dedup();
            k
        };
        let Some(&pick) = kinds.choose(&mut rng) else {
            cur = starts.choose(&mut rng).unwrap().clone();
            fp = fingerprint(&cur, &mats);
            continue;
        };
        let of_kind: Vec<&Move> = sites.iter().filter(|m| kind(m) == pick).collect();
        let mv = **of_kind.choose(&mut rng).unwrap();
        let next = match apply_with(&cur, &e, mv) {
            Ok(n) => n,
            Err(err) => {
                run.failures.push(format!("{cur} {mv:?}: listed move failed: {err}"));
                run.applied += 1;
                continue;
            }
        };
        run.applied += 1;
        run.by_kind[pick] += 1;
        if !realize(&next).is_drawable() {
            run.failures.push(format!("{cur} {mv:?} -> {next}: undrawable"));
            continue;
        }
        let nfp = fingerprint(&next, &mats);
        if nfp != fp {
            run.failures.push(format!("{cur} {mv:?} -> {next}: {fp:?} vs {nfp:?}"));
            continue;
        }
        cur = next;
    }
    run
}
