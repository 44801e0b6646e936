//! Knot invariants on drawable codes: the Alexander polynomial, skein
//! evaluations and strand-coloring counts.

pub mod coloring;
pub mod poly;
pub mod skein;

pub use coloring::{
    affine_matrix, conjugation_matrix, count_colorings_embedded, nontrivial_classes, verify_coloring_matrix,
    ColoringMatrix, Family,
};
pub use poly::{LaurentFraction, LaurentPoly};
pub use skein::{conway_poly, conway_to_alexander, skein_eval, CrossingState, GeneralizedDiagram, SkeinCoeffs};

use crate::dowker::DowkerSet;
use crate::drawability::{realize, Embedding};
use crate::error::Undrawable;

fn embed(s: &DowkerSet) -> Result<Embedding, Undrawable> {
    realize(s).embedding().ok_or(Undrawable)
}

/// Strand colorings of a drawable code by `m`.
pub fn count_colorings(s: &DowkerSet, m: &ColoringMatrix) -> Result<u64, Undrawable> {
    Ok(count_colorings_embedded(&embed(s)?, m))
}

/// Normalized Alexander polynomial of a drawable code.
pub fn alexander_poly(s: &DowkerSet) -> Result<LaurentPoly, Undrawable> {
    Ok(alexander_embedded(&embed(s)?))
}

/// Determinant of the crossing system with the last relation and the last
/// strand dropped, where each relation reads `out = t in + (1 - t) over`.
pub fn alexander_embedded(e: &Embedding) -> LaurentPoly {
    let (n, rels) = coloring::strand_relations(e);
    if n <= 1 {
        return LaurentPoly::one();
    }
    let t = LaurentPoly::var();
    let one_minus_t = &LaurentPoly::one() - &t;
    let minus_one = LaurentPoly::constant(-1);
    let mut a = vec![vec![LaurentPoly::zero(); n]; n];
    for (r, rel) in rels.iter().enumerate() {
        let (from, to) = if rel.sign > 0 { (rel.incoming, rel.outgoing) } else { (rel.outgoing, rel.incoming) };
        a[r][from] = &a[r][from] + &t;
        a[r][rel.over] = &a[r][rel.over] + &one_minus_t;
        a[r][to] = &a[r][to] + &minus_one;
    }
    a.pop();
    for row in a.iter_mut() {
        row.pop();
    }
    determinant(a).normalized()
}

/// Fraction-free Gaussian elimination.
pub fn determinant(mut a: Vec<Vec<LaurentPoly>>) -> LaurentPoly {
    let n = a.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return LaurentPoly::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss quotients are exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Conway polynomial of a drawable code.
pub fn conway(s: &DowkerSet) -> Result<LaurentPoly, Undrawable> {
    Ok(conway_poly(&embed(s)?))
}
