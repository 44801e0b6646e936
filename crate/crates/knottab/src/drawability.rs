//! Planar realizability of Dowker codes.
//!
//! A code is drawable when some closed curve in the plane (equivalently, on
//! the sphere) meets itself exactly at the listed crossings in the listed
//! order. [`realize`] decides this by searching over the two transversal
//! rotations available at each crossing for one whose faces satisfy Euler's
//! formula, and returns that rotation system as a witness.
//!
//! Edges are addressed by *position*: position `p` is the stretch of curve
//! between label `p` and label `p + 1`, with position `0` closing the loop
//! from label `2n` back to label `1`.

use crate::dowker::DowkerSet;

/// A directed traversal of one edge along a face boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: u32,
    /// True when the face boundary follows the curve orientation here.
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

/// A rotation system realizing a code on the sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    set: DowkerSet,
    /// Per crossing id: +1 when the later pass crosses the earlier one from
    /// right to left.
    chirality: Vec<i8>,
    faces: Vec<Face>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingSign {
    pub crossing: usize,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    Drawable(Embedding),
    Undrawable,
}

impl Realization {
    pub fn is_drawable(&self) -> bool {
        matches!(self, Realization::Drawable(_))
    }

    pub fn embedding(self) -> Option<Embedding> {
        match self {
            Realization::Drawable(e) => Some(e),
            Realization::Undrawable => None,
        }
    }
}

impl Embedding {
    pub fn set(&self) -> &DowkerSet {
        &self.set
    }

    pub fn chirality(&self) -> &[i8] {
        &self.chirality
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Vertices, edges and faces, in that order.
    pub fn euler_counts(&self) -> (usize, usize, usize) {
        let n = self.set.crossings();
        if n == 0 {
            // one closed curve, no vertices
            return (0, 0, 2);
        }
        (n, 2 * n, self.faces.len())
    }

    /// Crossing sign per crossing id. A crossing is positive when the under
    /// strand passes right to left as seen along the over strand.
    pub fn crossing_signs(&self) -> Vec<CrossingSign> {
        self.set
            .pairs()
            .iter()
            .enumerate()
            .map(|(id, &(o, u))| {
                let chi = self.chirality[id];
                let sign = if o < u { chi } else { -chi };
                CrossingSign { crossing: id, sign }
            })
            .collect()
    }

    /// Reuses this rotation system for a code with the same underlying
    /// shadow (same pairing, any over/under choice).
    pub fn with_set(&self, set: DowkerSet) -> Option<Embedding> {
        if set.partner_table() != self.set.partner_table() {
            return None;
        }
        // crossing ids follow over labels, so chirality must be re-indexed
        let old = self.set.crossing_of_label();
        let mut chirality = vec![0i8; set.crossings()];
        for (id, &(a, b)) in set.pairs().iter().enumerate() {
            let l = a.min(b) as usize - 1;
            chirality[id] = self.chirality[old[l]];
        }
        Some(Embedding { set, chirality, faces: self.faces.clone() })
    }

    /// Crossing id reached at each end of the edge at `position`.
    pub fn edge_ends(&self, position: u32) -> (usize, usize) {
        let m = self.set.label_count();
        let cross = self.set.crossing_of_label();
        let start = if position == 0 { m } else { position };
        let end = position % m + 1;
        (cross[start as usize - 1], cross[end as usize - 1])
    }
}

/// Convenience form of [`Embedding::crossing_signs`].
pub fn crossing_signs(e: &Embedding) -> Vec<CrossingSign> {
    e.crossing_signs()
}

/// Necessary condition: every crossing joins an odd label to an even one.
pub fn parity_filter(s: &DowkerSet) -> bool {
    s.has_odd_even_pairing()
}

/// Half-edge ids: `2x` enters label `x + 1`, `2x + 1` leaves it.
#[inline]
fn twin(h: usize, m: usize) -> usize {
    let x = h / 2;
    if h % 2 == 1 {
        2 * ((x + 1) % m)
    } else {
        2 * ((x + m - 1) % m) + 1
    }
}

/// Counterclockwise successor of half-edge `h` around its crossing.
#[inline]
fn rot_next(h: usize, partner: &[u8], chi_of_label: &[i8]) -> usize {
    let x = h / 2;
    let y = partner[x] as usize;
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    let chi = chi_of_label[a];
    // ccw cycle: chi = +1 -> [in a, in b, out a, out b], chi = -1 -> [in a, out b, out a, in b]
    let cycle = if chi > 0 {
        [2 * a, 2 * b, 2 * a + 1, 2 * b + 1]
    } else {
        [2 * a, 2 * b + 1, 2 * a + 1, 2 * b]
    };
    let i = cycle.iter().position(|&c| c == h).expect("half-edge at its crossing");
    cycle[(i + 1) % 4]
}

fn trace_faces(partner: &[u8], chi_of_label: &[i8], keep: bool) -> (usize, Vec<Face>) {
    let m = partner.len();
    let mut seen = vec![false; 2 * m];
    let mut count = 0;
    let mut faces = Vec::new();
    for start in 0..2 * m {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut darts = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            if keep {
                let x = h / 2;
                let dart = if h % 2 == 1 {
                    Dart { edge: ((x + 1) % m) as u32, forward: true }
                } else {
                    Dart { edge: x as u32, forward: false }
                };
                darts.push(dart);
            }
            h = rot_next(twin(h, m), partner, chi_of_label);
        }
        if keep {
            faces.push(Face { darts });
        }
    }
    (count, faces)
}

/// Decides drawability. The first transversal rotation system (in a fixed
/// search order) with `n + 2` faces is returned; the crossing through label
/// 1 is pinned to chirality +1.
pub fn realize(s: &DowkerSet) -> Realization {
    let n = s.crossings();
    if n == 0 {
        return Realization::Drawable(Embedding {
            set: s.clone(),
            chirality: Vec::new(),
            faces: vec![
                Face { darts: vec![Dart { edge: 0, forward: true }] },
                Face { darts: vec![Dart { edge: 0, forward: false }] },
            ],
        });
    }
    if !parity_filter(s) {
        return Realization::Undrawable;
    }
    let partner = s.partner_table();
    let cross = s.crossing_of_label();
    let pinned = cross[0];
    let free: Vec<usize> = (0..n).filter(|&c| c != pinned).collect();
    let pairs = s.pairs();
    let mut chi = vec![1i8; n];
    let mut chi_of_label = vec![1i8; 2 * n];
    for mask in 0u64..(1u64 << free.len()) {
        for (bit, &c) in free.iter().enumerate() {
            chi[c] = if mask >> bit & 1 == 1 { -1 } else { 1 };
        }
        for (c, &(a, b)) in pairs.iter().enumerate() {
            let low = a.min(b) as usize - 1;
            chi_of_label[low] = chi[c];
        }
        let (f, _) = trace_faces(&partner, &chi_of_label, false);
        if f == n + 2 {
            let (_, faces) = trace_faces(&partner, &chi_of_label, true);
            return Realization::Drawable(Embedding { set: s.clone(), chirality: chi, faces });
        }
    }
    Realization::Undrawable
}

pub fn is_drawable(s: &DowkerSet) -> bool {
    realize(s).is_drawable()
}

/// The arc of the curve running forward from label `from` to label `to`,
/// closed up at their common crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalLoop {
    pub from: u32,
    pub to: u32,
}

impl IntervalLoop {
    /// Labels visited, endpoints included, e.g. `1-2-3`.
    pub fn labels(&self, m: u32) -> Vec<u32> {
        let mut v = vec![self.from];
        let mut l = self.from;
        while l != self.to {
            l = l % m + 1;
            v.push(l);
        }
        v
    }

    fn interior(&self, m: u32) -> Vec<bool> {
        let mut inside = vec![false; m as usize + 1];
        let mut l = self.from % m + 1;
        while l != self.to {
            inside[l as usize] = true;
            l = l % m + 1;
        }
        inside
    }

    /// Edge positions covered by the arc.
    fn edges(&self, m: u32) -> Vec<bool> {
        let mut covered = vec![false; m as usize];
        let mut l = self.from;
        while l != self.to {
            covered[(l % m) as usize] = true;
            l = l % m + 1;
        }
        covered
    }
}

/// Two interval loops sharing no edge and meeting at an odd number of
/// crossings other than their own base crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopWitness {
    pub first: IntervalLoop,
    pub second: IntervalLoop,
    pub intersections: Vec<(u32, u32)>,
}

/// Scans pairs of interval loops for a violation of the even-intersection
/// condition. A witness proves the code undrawable; its absence proves
/// nothing.
pub fn interval_loop_witness(s: &DowkerSet) -> Option<LoopWitness> {
    let m = s.label_count();
    let pairs = s.pairs();
    let loops: Vec<(usize, IntervalLoop)> = pairs
        .iter()
        .enumerate()
        .flat_map(|(id, &(a, b))| {
            [(id, IntervalLoop { from: a.min(b), to: a.max(b) }), (id, IntervalLoop { from: a.max(b), to: a.min(b) })]
        })
        .collect();
    let data: Vec<(Vec<bool>, Vec<bool>)> = loops.iter().map(|(_, l)| (l.interior(m), l.edges(m))).collect();
    for i in 0..loops.len() {
        for j in i + 1..loops.len() {
            let (ci, li) = loops[i];
            let (cj, lj) = loops[j];
            let (int_i, edges_i) = &data[i];
            let (int_j, edges_j) = &data[j];
            if edges_i.iter().zip(edges_j).any(|(a, b)| *a && *b) {
                continue;
            }
            let hits: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|&(id, _)| id != ci && id != cj)
                .filter(|&(_, &(a, b))| {
                    (int_i[a as usize] && int_j[b as usize]) || (int_i[b as usize] && int_j[a as usize])
                })
                .map(|(_, &p)| p)
                .collect();
            if hits.len() % 2 == 1 {
                return Some(LoopWitness { first: li, second: lj, intersections: hits });
            }
        }
    }
    None
}

/// Pairs `(i, i+1)` taken cyclically: the smallest such `i`.
fn find_kink(partner: &[u8]) -> Option<usize> {
    let m = partner.len();
    (0..m).find(|&x| partner[x] as usize == (x + 1) % m && m > 0)
}

/// Three consecutive crossings between the same two strands with the same
/// strand on top: `(i, j), (i+1, j+e), (i+2, j+2e)`. Returns the crossing ids of the first two.
fn find_twist(s: &DowkerSet, partner: &[u8]) -> Option<[usize; 2]> {
    let m = partner.len();
    if m < 6 {
        return None;
    }
    let cross = s.crossing_of_label();
    let over = s.over_table();
    for i in 0..m {
        let j = partner[i] as usize;
        for e in [1usize, m - 1] {
            let labels = [i, (i + 1) % m, (i + 2) % m, j, (j + e) % m, (j + 2 * e) % m];
            let mut sorted = labels;
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            // pairs are ordered: the same strand must be over at all three
            if partner[labels[1]] as usize == labels[4]
                && partner[labels[2]] as usize == labels[5]
                && over[labels[0]] == over[labels[1]]
                && over[labels[1]] == over[labels[2]]
            {
                return Some([cross[labels[0]], cross[labels[1]]]);
            }
        }
    }
    None
}

/// Equal-drawability reduction: removes kinks and collapses triple twists
/// greedily, smallest site first, and uses a triangle substitution (with a
/// non-cyclic over pattern) when it exposes a new kink or twist. The result is drawable exactly when `s` is.
pub fn reduce_class(s: &DowkerSet) -> DowkerSet {
    let mut cur = s.clone();
    'outer: loop {
        if let Some(step) = reduce_class_step(&cur) {
            cur = step;
            continue;
        }
        let over = cur.over_table();
        for t in crate::moves::shadow_triangles(&cur) {
            if crate::moves::cyclic_pattern(&over, t) {
                continue;
            }
            let swapped = crate::moves::triangle_rewrite(&cur, t);
            if let Some(step) = reduce_class_step(&swapped) {
                cur = step;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// One kink removal or twist collapse at the smallest site, if any applies.
pub fn reduce_class_step(s: &DowkerSet) -> Option<DowkerSet> {
    let partner = s.partner_table();
    if let Some(x) = find_kink(&partner) {
        let id = s.crossing_of_label()[x];
        return Some(s.delete_crossings(&[id]));
    }
    find_twist(s, &partner).map(|ids| s.delete_crossings(&ids))
}
