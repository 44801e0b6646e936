//! Invariant certificates for merged classes.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dowker::DowkerSet;
use crate::drawability::realize;
use crate::invariants::{alexander_embedded, conjugation_matrix, count_colorings_embedded, nontrivial_classes};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Every other class differs in some recorded invariant.
    Distinct,
    /// Classes with the same recorded invariants, by representative.
    Unresolved(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub alexander: Vec<i64>,
    /// `(matrix id, coloring count)`; filled only where the Alexander
    /// polynomial is shared with another class.
    pub colorings: Vec<(String, u64)>,
    pub verdict: Verdict,
}

impl Certificate {
    /// `alexander: 1 -1 1 ; colorings(conj S3 2): 9 ; ...`
    pub fn to_text(&self) -> String {
        let alex: Vec<String> = self.alexander.iter().map(|c| c.to_string()).collect();
        let mut s = format!("alexander: {}", alex.join(" "));
        for (id, count) in &self.colorings {
            s.push_str(&format!(" ; colorings({id}): {count}"));
        }
        s
    }
}

/// Coloring matrices used to split ties: conjugation classes of the
/// symmetric groups of degree `2..=m` with more than one element.
pub fn tie_breakers(m: u32) -> Vec<crate::invariants::ColoringMatrix> {
    (2..=m)
        .flat_map(|p| nontrivial_classes(p).into_iter().map(move |c| (p, c)))
        .filter_map(|(p, c)| conjugation_matrix(p, &c).ok())
        .filter(|mat| mat.k() > 1)
        .collect()
}

/// Certificates for the given representatives, in the same order.
pub fn classify(reps: &[DowkerSet], m: u32) -> Vec<Certificate> {
    let alex: Vec<Vec<i64>> = reps
        .par_iter()
        .map(|s| alexander_embedded(&realize(s).embedding().expect("representatives are drawable")).coefficients())
        .collect();
    let mut by_alex: BTreeMap<&Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (i, a) in alex.iter().enumerate() {
        by_alex.entry(a).or_default().push(i);
    }
    let tied: Vec<usize> = by_alex.values().filter(|v| v.len() > 1).flatten().copied().collect();
    let matrices = tie_breakers(m);
    let counts: Vec<(usize, Vec<(String, u64)>)> = tied
        .par_iter()
        .map(|&i| {
            let e = realize(&reps[i]).embedding().expect("representatives are drawable");
            (i, matrices.iter().map(|mat| (mat.id(), count_colorings_embedded(&e, mat))).collect())
        })
        .collect();
    let mut colorings = vec![Vec::new(); reps.len()];
    for (i, c) in counts {
        colorings[i] = c;
    }
    type Signature<'a> = (&'a Vec<i64>, &'a Vec<(String, u64)>);
    let mut by_signature: BTreeMap<Signature, Vec<usize>> = BTreeMap::new();
    for i in 0..reps.len() {
        by_signature.entry((&alex[i], &colorings[i])).or_default().push(i);
    }
    let mut verdicts = vec![Verdict::Distinct; reps.len()];
    for group in by_signature.values().filter(|g| g.len() > 1) {
        for &i in group {
            let others = group.iter().filter(|&&j| j != i).map(|&j| reps[j].to_text()).collect();
            verdicts[i] = Verdict::Unresolved(others);
        }
    }
    (0..reps.len())
        .map(|i| Certificate { alexander: alex[i].clone(), colorings: colorings[i].clone(), verdict: verdicts[i].clone() })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_class_is_not_separated_from_itself() {
        let t = DowkerSet::parse("1,4 3,6 5,2").unwrap();
        let c = classify(&[t.clone(), t.clone()], 3);
        assert!(matches!(c[0].verdict, Verdict::Unresolved(_)));
        assert_eq!(c[0].colorings, c[1].colorings);
        assert_eq!(c[0].to_text(), "alexander: 1 -1 1 ; colorings(conj S3 3): 2 ; colorings(conj S3 2): 9");
    }

    #[test]
    fn alexander_separates_small_knots() {
        let reps = [DowkerSet::unknot(), DowkerSet::parse("1,4 3,6 5,2").unwrap(), DowkerSet::parse("1,4 3,6 5,8 7,2").unwrap()];
        assert!(classify(&reps, 1).iter().all(|c| c.verdict == Verdict::Distinct && c.colorings.is_empty()));
    }
}
