//! Coloring matrices and strand-coloring counts.

use std::fmt;

use crate::drawability::Embedding;
use crate::error::MatrixError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Affine { q: u32, t: u32 },
    /// Cycle lengths of the class, descending, fixed points omitted.
    Conjugation { degree: u32, class: Vec<u32> },
    Explicit,
}

/// A `k x k` table obeying the three coloring axioms. Entries are 0-based;
/// `get(s, r)` is the color leaving a crossing whose under strand arrives
/// with color `s` beneath an over strand of color `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringMatrix {
    k: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    family: Family,
}

impl ColoringMatrix {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn get(&self, s: usize, r: usize) -> usize {
        self.table[s * self.k + r] as usize
    }

    /// The unique `s` with `get(s, r) == x`.
    pub fn solve(&self, x: usize, r: usize) -> usize {
        self.inverse[x * self.k + r] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.k).map(|s| (0..self.k).map(|r| self.get(s, r)).collect()).collect()
    }

    /// Stable identifier used in certificates.
    pub fn id(&self) -> String {
        match &self.family {
            Family::Affine { q, t } => format!("affine {q},{t}"),
            Family::Conjugation { degree, class } => {
                let c: Vec<String> = class.iter().map(|x| x.to_string()).collect();
                format!("conj S{degree} {}", if c.is_empty() { "1".to_string() } else { c.join(",") })
            }
            Family::Explicit => format!("explicit {}", self.k),
        }
    }

    fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }
}

impl fmt::Display for ColoringMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in 0..self.k {
            let row: Vec<String> = (0..self.k).map(|r| (self.get(s, r) + 1).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Checks the three axioms on a 0-based table:
///
/// 1. `M[r][r] = r`;
/// 2. `s -> M[s][r]` is injective for each `r`;
/// 3. `M[M[a][b]][c] = M[M[a][c]][M[b][c]]`.
pub fn verify_coloring_matrix(rows: &[Vec<usize>]) -> Result<ColoringMatrix, MatrixError> {
    let k = rows.len();
    if k == 0 || rows.iter().any(|r| r.len() != k) {
        return Err(MatrixError::NotSquare);
    }
    for (row, r) in rows.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= k {
                return Err(MatrixError::EntryOutOfRange { row, col, value, k });
            }
        }
    }
    let m = |s: usize, r: usize| rows[s][r];
    for r in 0..k {
        if m(r, r) != r {
            return Err(MatrixError::AxiomViolation { axiom: 1, witness: vec![r] });
        }
    }
    let mut inverse = vec![u16::MAX; k * k];
    for r in 0..k {
        for s in 0..k {
            let x = m(s, r);
            if inverse[x * k + r] != u16::MAX {
                return Err(MatrixError::AxiomViolation { axiom: 2, witness: vec![inverse[x * k + r] as usize, s, r] });
            }
            inverse[x * k + r] = s as u16;
        }
    }
    for a in 0..k {
        for b in 0..k {
            let ab = m(a, b);
            for c in 0..k {
                if m(ab, c) != m(m(a, c), m(b, c)) {
                    return Err(MatrixError::AxiomViolation { axiom: 3, witness: vec![a, b, c] });
                }
            }
        }
    }
    let table = rows.iter().flatten().map(|&x| x as u16).collect();
    Ok(ColoringMatrix { k, table, inverse, family: Family::Explicit })
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `M[a][b] = t a + (1 - t) b mod q`.
pub fn affine_matrix(q: u32, t: u32) -> Result<ColoringMatrix, MatrixError> {
    if !(2..=4096).contains(&q) {
        return Err(MatrixError::BadParameters(format!("modulus {q} out of range")));
    }
    let t = t % q;
    if gcd(q, t) != 1 || gcd(q, (t + q - 1) % q) != 1 {
        return Err(MatrixError::BadParameters(format!("q={q} is not coprime to t={t} and t-1")));
    }
    let (q64, t64) = (q as u64, t as u64);
    let rows: Vec<Vec<usize>> = (0..q64)
        .map(|a| (0..q64).map(|b| ((t64 * a + (q64 + 1 - t64) * b) % q64) as usize).collect())
        .collect();
    Ok(verify_coloring_matrix(&rows)?.with_family(Family::Affine { q, t }))
}

/// Cycle lengths of a permutation, descending, without fixed points.
pub fn cycle_type(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 1 {
            lens.push(len);
        }
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

fn normalize_class(class: &[u32]) -> Vec<u32> {
    let mut c: Vec<u32> = class.iter().copied().filter(|&x| x != 1).collect();
    c.sort_unstable_by(|a, b| b.cmp(a));
    c
}

/// Permutations of `0..p` in lexicographic order of their one-line form.
fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..p).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..p).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Colors are the elements of a conjugacy class of the symmetric group on
/// `p` letters; `M[a][b] = b a b^-1`. Lengths of 1 in `class` are ignored.
pub fn conjugation_matrix(p: u32, class: &[u32]) -> Result<ColoringMatrix, MatrixError> {
    if p > 7 {
        return Err(MatrixError::BadParameters(format!("degree {p} is too large")));
    }
    let class = normalize_class(class);
    if class.contains(&0) || class.iter().sum::<u32>() > p {
        return Err(MatrixError::EmptyClass);
    }
    let elems: Vec<Vec<usize>> =
        permutations(p as usize).into_iter().filter(|g| cycle_type(g) == class).collect();
    if elems.is_empty() {
        return Err(MatrixError::EmptyClass);
    }
    let index = |g: &[usize]| elems.iter().position(|e| e == g).expect("class is closed under conjugation");
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| {
                    let mut binv = vec![0; b.len()];
                    for (i, &x) in b.iter().enumerate() {
                        binv[x] = i;
                    }
                    let c: Vec<usize> = (0..b.len()).map(|x| b[a[binv[x]]]).collect();
                    index(&c)
                })
                .collect()
        })
        .collect();
    Ok(verify_coloring_matrix(&rows)?.with_family(Family::Conjugation { degree: p, class }))
}

/// Non-identity cycle types of the symmetric group of degree `p`.
pub fn nontrivial_classes(p: u32) -> Vec<Vec<u32>> {
    fn parts(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(normalize_class(cur));
            return;
        }
        for x in (1..=max.min(rest)).rev() {
            cur.push(x);
            parts(rest - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    parts(p, p, &mut Vec::new(), &mut out);
    out.retain(|c| !c.is_empty());
    out
}

/// One crossing relation between strands: the under strand changes from
/// `incoming` to `outgoing` beneath `over`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Relation {
    pub incoming: usize,
    pub outgoing: usize,
    pub over: usize,
    pub sign: i8,
}

/// Strand count and the relation at each under pass. Strand `r` runs from
/// the `r`-th under pass to the next, so relation `r` has incoming strand
/// `r` and outgoing strand `r + 1` (cyclically).
pub(crate) fn strand_relations(e: &Embedding) -> (usize, Vec<Relation>) {
    let s = e.set();
    let n = s.crossings();
    if n == 0 {
        return (1, Vec::new());
    }
    let m = s.label_count() as usize;
    let over = s.over_table();
    let partner = s.partner_table();
    let cross = s.crossing_of_label();
    let signs = e.crossing_signs();
    // strand index of every label: unders strictly before it, minus one
    let mut strand = vec![0usize; m];
    let mut unders = 0usize;
    let mut under_labels = Vec::with_capacity(n);
    for l in 0..m {
        strand[l] = (unders + n - 1) % n;
        if !over[l] {
            unders += 1;
            under_labels.push(l);
        }
    }
    let rels = (0..n)
        .map(|r| {
            let u = under_labels[(r + 1) % n];
            Relation {
                incoming: r,
                outgoing: (r + 1) % n,
                over: strand[partner[u] as usize],
                sign: signs[cross[u]].sign,
            }
        })
        .collect();
    (n, rels)
}

/// Number of strand colorings satisfying `out = M[in][over]` at positive
/// crossings and `in = M[out][over]` at negative ones.
pub fn count_colorings_embedded(e: &Embedding, m: &ColoringMatrix) -> u64 {
    let (n, rels) = strand_relations(e);
    if let Family::Affine { q, t } = m.family() {
        if is_prime(*q) {
            return affine_count(n, &rels, *q as i64, *t as i64);
        }
    }
    let mut colors = vec![usize::MAX; n];
    let mut total = 0u64;
    for c0 in 0..m.k() {
        colors[0] = c0;
        total += extend(0, &rels, m, &mut colors);
    }
    total
}

fn extend(r: usize, rels: &[Relation], m: &ColoringMatrix, colors: &mut [usize]) -> u64 {
    if r == rels.len() {
        return 1;
    }
    let rel = rels[r];
    if colors[rel.over] == usize::MAX {
        let mut total = 0;
        for c in 0..m.k() {
            colors[rel.over] = c;
            total += step(r, rels, m, colors);
        }
        colors[rel.over] = usize::MAX;
        total
    } else {
        step(r, rels, m, colors)
    }
}

fn step(r: usize, rels: &[Relation], m: &ColoringMatrix, colors: &mut [usize]) -> u64 {
    let rel = rels[r];
    let y = colors[rel.over];
    let next = if rel.sign > 0 { m.get(colors[rel.incoming], y) } else { m.solve(colors[rel.incoming], y) };
    let cur = colors[rel.outgoing];
    if cur == usize::MAX {
        colors[rel.outgoing] = next;
        let v = extend(r + 1, rels, m, colors);
        colors[rel.outgoing] = usize::MAX;
        v
    } else if cur == next {
        extend(r + 1, rels, m, colors)
    } else {
        0
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Solution count of the affine system over the prime field of order `q`.
fn affine_count(n: usize, rels: &[Relation], q: i64, t: i64) -> u64 {
    let mut rows: Vec<Vec<i64>> = rels
        .iter()
        .map(|rel| {
            let mut row = vec![0i64; n];
            let (from, to) = if rel.sign > 0 { (rel.incoming, rel.outgoing) } else { (rel.outgoing, rel.incoming) };
            // to = t from + (1 - t) over
            row[from] += t;
            row[rel.over] += 1 - t;
            row[to] -= 1;
            row.iter_mut().for_each(|x| *x = x.rem_euclid(q));
            row
        })
        .collect();
    let rank = rank_mod(&mut rows, n, q);
    (q as u64).pow((n - rank) as u32)
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn rank_mod(rows: &mut [Vec<i64>], cols: usize, q: i64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = super::poly::mod_inverse(rows[rank][c], q).expect("prime modulus");
        for x in rows[rank].iter_mut() {
            *x = *x * inv % q;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] - f * rows[rank][j]).rem_euclid(q);
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_examples() {
        let trivial: Vec<Vec<usize>> = (0..4).map(|s| vec![s; 4]).collect();
        assert!(verify_coloring_matrix(&trivial).is_ok());
        let mut bad = trivial.clone();
        bad[0][0] = 1;
        assert!(matches!(verify_coloring_matrix(&bad), Err(MatrixError::AxiomViolation { axiom: 1, .. })));
        let mut bad2 = trivial;
        bad2[1][0] = 0;
        bad2[0][0] = 0;
        assert!(matches!(verify_coloring_matrix(&bad2), Err(MatrixError::AxiomViolation { axiom: 2, .. })));
    }

    #[test]
    fn affine_parameters() {
        assert!(affine_matrix(3, 2).is_ok());
        assert!(affine_matrix(5, 2).is_ok());
        assert!(matches!(affine_matrix(4, 2), Err(MatrixError::BadParameters(_))));
        assert!(matches!(affine_matrix(5, 1), Err(MatrixError::BadParameters(_))));
        let m = affine_matrix(3, 2).unwrap();
        assert_eq!(m.rows(), vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]);
        assert_eq!(m.id(), "affine 3,2");
    }

    #[test]
    fn conjugation_sizes() {
        assert_eq!(conjugation_matrix(2, &[2]).unwrap().k(), 1);
        assert_eq!(conjugation_matrix(3, &[2]).unwrap().k(), 3);
        assert_eq!(conjugation_matrix(4, &[4]).unwrap().k(), 6);
        assert_eq!(conjugation_matrix(5, &[3, 2]).unwrap().k(), 20);
        assert_eq!(conjugation_matrix(3, &[]).unwrap().k(), 1);
        assert_eq!(conjugation_matrix(3, &[4]), Err(MatrixError::EmptyClass));
        assert_eq!(conjugation_matrix(4, &[2, 2]).unwrap().id(), "conj S4 2,2");
    }

    #[test]
    fn transpositions_of_s3_match_tricoloring() {
        let a = affine_matrix(3, 2).unwrap();
        let c = conjugation_matrix(3, &[2]).unwrap();
        // look for a color bijection carrying one table onto the other
        let found = permutations(3).into_iter().any(|f| {
            (0..3).all(|x| (0..3).all(|y| f[c.get(x, y)] == a.get(f[x], f[y])))
        });
        assert!(found);
    }

    #[test]
    fn class_listing() {
        assert_eq!(nontrivial_classes(3), vec![vec![3], vec![2]]);
        assert_eq!(nontrivial_classes(4).len(), 4);
        assert_eq!(nontrivial_classes(5).len(), 6);
    }
}
