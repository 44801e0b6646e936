//! Closed self-avoiding walks on the cubic lattice, written as steps in
//! `{±1, ±2, ±3}` for `±x, ±y, ±z`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::NotationError;

pub type Point = [i32; 3];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeWalk {
    pub steps: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SawMove {
    /// Exchange steps `i` and `i+1` (1-based).
    Transpose(usize),
    /// Drop steps `i` and `i+2` (1-based) when `a_{i+2} = -a_i`.
    Excise(usize),
    /// Replace step `i` (1-based) by `d, a_i, -d`.
    Insert(usize, i8),
}

pub fn unit(step: i8) -> Point {
    let mut v = [0; 3];
    v[step.unsigned_abs() as usize - 1] = step.signum() as i32;
    v
}

impl LatticeWalk {
    pub fn new(steps: Vec<i8>) -> Result<Self, NotationError> {
        if let Some(&bad) = steps.iter().find(|&&s| s == 0 || s.abs() > 3) {
            return Err(NotationError::Parse(format!("step {bad}")));
        }
        Ok(LatticeWalk { steps })
    }

    pub fn parse(text: &str) -> Result<Self, NotationError> {
        let steps = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i8>().map_err(|_| NotationError::Parse(t.to_string())))
            .collect::<Result<_, _>>()?;
        Self::new(steps)
    }

    /// Visited points `r_0 .. r_n`, starting at the origin.
    pub fn points(&self) -> Vec<Point> {
        let mut p = [0; 3];
        let mut out = vec![p];
        for &s in &self.steps {
            let u = unit(s);
            for k in 0..3 {
                p[k] += u[k];
            }
            out.push(p);
        }
        out
    }

    /// Moves the starting point forward by `c` steps.
    pub fn rotate(&self, c: usize) -> LatticeWalk {
        let mut steps = self.steps.clone();
        if !steps.is_empty() {
            let c = c % steps.len();
            steps.rotate_left(c);
        }
        LatticeWalk { steps }
    }
}

/// Closed, with every point distinct except `r_0 = r_n`, and at least four
/// steps.
pub fn saw_validate(w: &LatticeWalk) -> bool {
    let pts = w.points();
    let n = w.steps.len();
    if n < 4 || pts[n] != pts[0] {
        return false;
    }
    let distinct: HashSet<Point> = pts[..n].iter().copied().collect();
    distinct.len() == n
}

/// Applies a local move; new lattice points must be unoccupied and the
/// result must be a closed self-avoiding walk.
pub fn saw_move(w: &LatticeWalk, kind: SawMove) -> Result<LatticeWalk, NotationError> {
    let a = &w.steps;
    let n = a.len();
    let pts = w.points();
    let occupied: HashSet<Point> = pts.iter().copied().collect();
    let blocked = Err(NotationError::MoveBlocked);
    let out = match kind {
        SawMove::Transpose(i) => {
            if i == 0 || i >= n {
                return blocked;
            }
            let (x, y) = (i - 1, i);
            if a[x] != a[y] {
                // the corner r_{i} moves to r_{i-1} + a_{i+1}
                let u = unit(a[y]);
                let p = pts[x];
                let corner = [p[0] + u[0], p[1] + u[1], p[2] + u[2]];
                if occupied.contains(&corner) {
                    return blocked;
                }
            }
            let mut b = a.clone();
            b.swap(x, y);
            b
        }
        SawMove::Excise(i) => {
            if i == 0 || i + 2 > n || a[i + 1] != -a[i - 1] {
                return blocked;
            }
            let mut b = a[..i - 1].to_vec();
            b.push(a[i]);
            b.extend_from_slice(&a[i + 2..]);
            b
        }
        SawMove::Insert(i, d) => {
            if i == 0 || i > n || d == 0 || d.abs() > 3 || d.abs() == a[i - 1].abs() {
                return blocked;
            }
            let p = pts[i - 1];
            let u = unit(d);
            let v = unit(a[i - 1]);
            let c1 = [p[0] + u[0], p[1] + u[1], p[2] + u[2]];
            let c2 = [c1[0] + v[0], c1[1] + v[1], c1[2] + v[2]];
            if occupied.contains(&c1) || occupied.contains(&c2) {
                return blocked;
            }
            let mut b = a[..i - 1].to_vec();
            b.extend_from_slice(&[d, a[i - 1], -d]);
            b.extend_from_slice(&a[i..]);
            b
        }
    };
    let out = LatticeWalk { steps: out };
    if saw_validate(&out) {
        Ok(out)
    } else {
        blocked
    }
}
