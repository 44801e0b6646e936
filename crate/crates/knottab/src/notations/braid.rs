//! Braid words: `a_0 = n` strands followed by signed generator indices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::NotationError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rewrite {
    /// Remove `s_i^e s_i^-e`.
    FreeCancel,
    /// Insert `s_i s_i^-1` for the given signed letter.
    FreeInsert(i32),
    /// `s_i s_j -> s_j s_i` for `|i - j| > 1`.
    FarCommute,
    /// `s_i s_j s_i -> s_j s_i s_j` for `|i - j| = 1`, same exponent.
    BraidRelation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Markov {
    Conjugate(BraidWord),
    /// Append the new top generator with this sign and add a strand.
    Stabilize(i8),
    Destabilize,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<Self, NotationError> {
        let max = strands.saturating_sub(1);
        if let Some(&bad) = letters.iter().find(|&&a| a == 0 || a.unsigned_abs() > max) {
            return Err(NotationError::LetterOutOfRange { letter: bad, max });
        }
        Ok(BraidWord { strands: strands.max(1), letters })
    }

    /// Parses `n a_1 a_2 ...`.
    pub fn parse(text: &str) -> Result<Self, NotationError> {
        let nums: Vec<i64> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| NotationError::Parse(t.to_string())))
            .collect::<Result<_, _>>()?;
        let (&n, rest) = nums.split_first().ok_or_else(|| NotationError::Parse("missing strand count".into()))?;
        if !(1..=64).contains(&n) {
            return Err(NotationError::Parse(format!("strand count {n}")));
        }
        let letters = rest
            .iter()
            .map(|&a| i32::try_from(a).map_err(|_| NotationError::Parse(a.to_string())))
            .collect::<Result<_, _>>()?;
        Self::new(n as u32, letters)
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|a| -a).collect() }
    }

    /// Cancels adjacent inverse letters until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &a in &self.letters {
            if out.last() == Some(&-a) {
                out.pop();
            } else {
                out.push(a);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Product of the transpositions `(i, i+1)`, applied left to right:
    /// strand starting at position `x` ends at `perm[x]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands as usize).collect();
        // at[p] = strand currently at position p
        for &a in &self.letters {
            let i = a.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; at.len()];
        for (p, &s) in at.iter().enumerate() {
            perm[s] = p;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.strands)?;
        for a in &self.letters {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

/// Components of the closure: cycles of the underlying permutation, fixed
/// points included.
pub fn braid_components(w: &BraidWord) -> usize {
    let perm = w.permutation();
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for i in 0..perm.len() {
        if !seen[i] {
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = perm[j];
            }
        }
    }
    cycles
}

/// Applies one braid-group relation at `pos` (0-based letter index).
pub fn braid_rewrite(w: &BraidWord, rule: Rewrite, pos: usize) -> Result<BraidWord, NotationError> {
    let a = &w.letters;
    let mut out = a.clone();
    let miss = NotationError::PatternMismatch(pos);
    match rule {
        Rewrite::FreeCancel => {
            if pos + 1 >= a.len() || a[pos] != -a[pos + 1] {
                return Err(miss);
            }
            out.drain(pos..pos + 2);
        }
        Rewrite::FreeInsert(x) => {
            if pos > a.len() || x == 0 || x.unsigned_abs() >= w.strands {
                return Err(miss);
            }
            out.splice(pos..pos, [x, -x]);
        }
        Rewrite::FarCommute => {
            if pos + 1 >= a.len() || (a[pos].abs() - a[pos + 1].abs()).abs() <= 1 {
                return Err(miss);
            }
            out.swap(pos, pos + 1);
        }
        Rewrite::BraidRelation => {
            if pos + 2 >= a.len() {
                return Err(miss);
            }
            let (x, y, z) = (a[pos], a[pos + 1], a[pos + 2]);
            let same_sign = x.signum() == y.signum();
            if x != z || !same_sign || (x.abs() - y.abs()).abs() != 1 {
                return Err(miss);
            }
            out[pos] = y;
            out[pos + 1] = x;
            out[pos + 2] = y;
        }
    }
    Ok(BraidWord { strands: w.strands, letters: out })
}

pub fn markov_move(w: &BraidWord, kind: &Markov) -> Result<BraidWord, NotationError> {
    match kind {
        Markov::Conjugate(b) => {
            if b.strands != w.strands {
                return Err(NotationError::StrandMismatch);
            }
            let mut letters = b.letters.clone();
            letters.extend_from_slice(&w.letters);
            letters.extend_from_slice(&b.inverse().letters);
            Ok(BraidWord { strands: w.strands, letters })
        }
        Markov::Stabilize(sign) => {
            let mut letters = w.letters.clone();
            let top = w.strands as i32;
            letters.push(if *sign < 0 { -top } else { top });
            Ok(BraidWord { strands: w.strands + 1, letters })
        }
        Markov::Destabilize => {
            let top = w.strands as i32 - 1;
            let last = *w.letters.last().ok_or(NotationError::CannotDestabilize)?;
            let count = w.letters.iter().filter(|a| a.abs() == top).count();
            if top < 1 || last.abs() != top || count != 1 {
                return Err(NotationError::CannotDestabilize);
            }
            Ok(BraidWord { strands: w.strands - 1, letters: w.letters[..w.letters.len() - 1].to_vec() })
        }
    }
}

/// Least generator index occurring exactly once, counting both signs.
pub fn braid_is_connected_sum_candidate(w: &BraidWord) -> Option<u32> {
    (1..w.strands).find(|&i| w.letters.iter().filter(|a| a.unsigned_abs() == i).count() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u32, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(braid_components(&b(2, &[1])), 1);
        assert_eq!(braid_components(&b(2, &[1, 1])), 2);
        assert_eq!(braid_components(&b(1, &[])), 1);
        assert_eq!(braid_components(&b(2, &[1, 1, 1])), 1);
        assert_eq!(braid_components(&b(3, &[1, -2, 1, -2])), 1);
        assert!(BraidWord::new(2, vec![2]).is_err());
    }

    #[test]
    fn rewrites() {
        assert_eq!(braid_rewrite(&b(2, &[1, -1]), Rewrite::FreeCancel, 0).unwrap(), b(2, &[]));
        assert_eq!(braid_rewrite(&b(4, &[1, 3]), Rewrite::FarCommute, 0).unwrap(), b(4, &[3, 1]));
        assert_eq!(braid_rewrite(&b(3, &[1, 2, 1]), Rewrite::BraidRelation, 0).unwrap(), b(3, &[2, 1, 2]));
        assert_eq!(braid_rewrite(&b(3, &[-1, -2, -1]), Rewrite::BraidRelation, 0).unwrap(), b(3, &[-2, -1, -2]));
        assert!(braid_rewrite(&b(3, &[1, 2]), Rewrite::FarCommute, 0).is_err());
        assert!(braid_rewrite(&b(3, &[1, -2, 1]), Rewrite::BraidRelation, 0).is_err());
    }

    #[test]
    fn markov() {
        assert_eq!(markov_move(&b(2, &[1]), &Markov::Stabilize(1)).unwrap(), b(3, &[1, 2]));
        let c = markov_move(&b(2, &[1, 1, 1]), &Markov::Conjugate(b(2, &[1]))).unwrap();
        assert_eq!(c, b(2, &[1, 1, 1, 1, -1]));
        assert_eq!(c.free_reduce(), b(2, &[1, 1, 1]));
        assert_eq!(markov_move(&b(2, &[1]), &Markov::Destabilize).unwrap(), b(1, &[]));
        assert!(markov_move(&b(2, &[1, 1]), &Markov::Destabilize).is_err());
    }

    #[test]
    fn sum_candidates() {
        assert_eq!(braid_is_connected_sum_candidate(&b(4, &[1, 1, 1, 2, 3, 3, 3])), Some(2));
        assert_eq!(braid_is_connected_sum_candidate(&b(2, &[1, 1, 1])), None);
        assert_eq!(braid_is_connected_sum_candidate(&b(1, &[])), None);
    }

    #[test]
    fn parse_and_print() {
        let w = BraidWord::parse("3 1 -2 1").unwrap();
        assert_eq!(w, b(3, &[1, -2, 1]));
        assert_eq!(w.to_string(), "3 1 -2 1");
        assert!(BraidWord::parse("").is_err());
        assert!(BraidWord::parse("2 3").is_err());
    }
}
