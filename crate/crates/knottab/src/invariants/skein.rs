//! Skein recursion on diagrams.
//!
//! A [`GeneralizedDiagram`] is the base embedding with every crossing either
//! left alone, switched, or smoothed. Smoothing a crossing `(i, j)` glues the
//! curve into the unordered pair `{i, j}`, so the state may describe a link.
//! Evaluation walks each component from its lowest label, switches the first
//! crossing met from below, and recurses on the two resulting states until
//! the diagram is descending, hence an unlink.

use std::collections::HashMap;
use std::fmt;

use super::poly::{LaurentFraction, LaurentPoly};
use crate::drawability::Embedding;
use crate::error::SkeinError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingState {
    Intact,
    Switched,
    Smoothed,
}

#[derive(Clone, Debug)]
pub struct GeneralizedDiagram {
    partner: Vec<u8>,
    over: Vec<bool>,
    cross: Vec<usize>,
    pairs: Vec<(u32, u32)>,
    signs: Vec<i8>,
    states: Vec<CrossingState>,
}

impl GeneralizedDiagram {
    pub fn new(e: &Embedding) -> Self {
        let s = e.set();
        GeneralizedDiagram {
            partner: s.partner_table(),
            over: s.over_table(),
            cross: s.crossing_of_label(),
            pairs: s.pairs().to_vec(),
            signs: e.crossing_signs().iter().map(|c| c.sign).collect(),
            states: vec![CrossingState::Intact; s.crossings()],
        }
    }

    pub fn states(&self) -> &[CrossingState] {
        &self.states
    }

    pub fn switch(&mut self, id: usize) {
        self.states[id] = match self.states[id] {
            CrossingState::Intact => CrossingState::Switched,
            CrossingState::Switched => CrossingState::Intact,
            CrossingState::Smoothed => CrossingState::Smoothed,
        };
    }

    pub fn smooth(&mut self, id: usize) {
        self.states[id] = CrossingState::Smoothed;
    }

    /// Sign of a crossing in the current state; smoothed crossings have none.
    pub fn sign(&self, id: usize) -> i8 {
        match self.states[id] {
            CrossingState::Intact => self.signs[id],
            CrossingState::Switched => -self.signs[id],
            CrossingState::Smoothed => 0,
        }
    }

    fn is_over(&self, label0: usize) -> bool {
        let o = self.over[label0];
        match self.states[self.cross[label0]] {
            CrossingState::Switched => !o,
            _ => o,
        }
    }

    /// Label (0-based) reached after leaving pass `x`.
    fn next(&self, x: usize) -> usize {
        let m = self.partner.len();
        match self.states[self.cross[x]] {
            CrossingState::Smoothed => (self.partner[x] as usize + 1) % m,
            _ => (x + 1) % m,
        }
    }

    /// Components, each as its passes in traversal order starting from the
    /// lowest label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let m = self.partner.len();
        if m == 0 {
            return vec![Vec::new()];
        }
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                comp.push(x);
                x = self.next(x);
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// First crossing met from below when each component is walked in order,
    /// or `None` when the diagram is descending.
    pub fn first_ascending(&self) -> Option<usize> {
        let mut met = vec![false; self.states.len()];
        for comp in self.components() {
            for x in comp {
                let id = self.cross[x];
                if self.states[id] == CrossingState::Smoothed || met[id] {
                    continue;
                }
                met[id] = true;
                if !self.is_over(x) {
                    return Some(id);
                }
            }
        }
        None
    }

    /// Pairs in the current state; smoothed crossings print as `{i,j}`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .enumerate()
            .map(|(id, &(a, b))| match self.states[id] {
                CrossingState::Intact => format!("{a},{b}"),
                CrossingState::Switched => format!("{b},{a}"),
                CrossingState::Smoothed => format!("{{{},{}}}", a.min(b), a.max(b)),
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for GeneralizedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Skein coefficients for `A f(L+) + B f(L-) = C f(L0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinCoeffs {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
}

impl SkeinCoeffs {
    /// `A = 1, B = -1, C = z`: the Conway polynomial in `z`.
    pub fn conway() -> Self {
        SkeinCoeffs { a: LaurentPoly::one(), b: LaurentPoly::constant(-1), c: LaurentPoly::var() }
    }
}

/// `num * A^-a * B^-b * C^-c`, kept with monomial denominators so sums need
/// no polynomial gcd.
#[derive(Clone, Debug)]
struct Partial {
    num: LaurentPoly,
    a: i32,
    b: i32,
    c: i32,
}

struct Evaluator<'a> {
    k: &'a SkeinCoeffs,
    memo: HashMap<Vec<CrossingState>, Partial>,
}

impl Evaluator<'_> {
    fn lift(&self, p: &Partial, a: i32, b: i32, c: i32) -> LaurentPoly {
        let f = &(&self.k.a.pow((a - p.a) as u32) * &self.k.b.pow((b - p.b) as u32)) * &self.k.c.pow((c - p.c) as u32);
        &p.num * &f
    }

    /// `(x C^cx - y K) / D` where the powers are tracked symbolically:
    /// `cx` lowers the `C` exponent of `x`, `y` is multiplied by the
    /// coefficient `K` (`A` or `B`), and the result is divided by `D`.
    fn combine(&self, x: &Partial, y: &Partial, y_by_a: bool) -> Partial {
        // C * x
        let x = Partial { num: x.num.clone(), a: x.a, b: x.b, c: x.c - 1 };
        // K * y
        let y = if y_by_a {
            Partial { num: y.num.clone(), a: y.a - 1, b: y.b, c: y.c }
        } else {
            Partial { num: y.num.clone(), a: y.a, b: y.b - 1, c: y.c }
        };
        let a = x.a.max(y.a);
        let b = x.b.max(y.b);
        let c = x.c.max(y.c);
        let num = &self.lift(&x, a, b, c) - &self.lift(&y, a, b, c);
        // divide by the coefficient of the crossing being resolved
        if y_by_a {
            Partial { num, a, b: b + 1, c }
        } else {
            Partial { num, a: a + 1, b, c }
        }
    }

    fn eval(&mut self, d: &GeneralizedDiagram) -> Partial {
        if let Some(v) = self.memo.get(&d.states) {
            return v.clone();
        }
        let v = match d.first_ascending() {
            None => {
                // unlink: ((A + B) / C)^(components - 1)
                let r = d.component_count() as u32 - 1;
                Partial { num: (&self.k.a + &self.k.b).pow(r), a: 0, b: 0, c: r as i32 }
            }
            Some(id) => {
                let mut switched = d.clone();
                switched.switch(id);
                let mut smoothed = d.clone();
                smoothed.smooth(id);
                let f0 = self.eval(&smoothed);
                let fs = self.eval(&switched);
                if d.sign(id) > 0 {
                    // f(L+) = (C f(L0) - B f(L-)) / A
                    self.combine(&f0, &fs, false)
                } else {
                    // f(L-) = (C f(L0) - A f(L+)) / B
                    self.combine(&f0, &fs, true)
                }
            }
        };
        self.memo.insert(d.states.clone(), v.clone());
        v
    }
}

/// Evaluates the skein invariant with unknot value 1.
pub fn skein_eval(e: &Embedding, k: &SkeinCoeffs) -> Result<LaurentFraction, SkeinError> {
    if k.c.is_zero() {
        return Err(SkeinError::DivisionByZero);
    }
    let d = GeneralizedDiagram::new(e);
    skein_eval_diagram(&d, k)
}

/// Evaluates a generalized diagram, which may have several components.
pub fn skein_eval_diagram(d: &GeneralizedDiagram, k: &SkeinCoeffs) -> Result<LaurentFraction, SkeinError> {
    if k.c.is_zero() {
        return Err(SkeinError::DivisionByZero);
    }
    let mut ev = Evaluator { k, memo: HashMap::new() };
    let p = ev.eval(d);
    let mut num = p.num;
    let mut den = LaurentPoly::one();
    for (e, coeff) in [(p.a, &k.a), (p.b, &k.b), (p.c, &k.c)] {
        if e > 0 {
            if coeff.is_zero() {
                return Err(SkeinError::DivisionByZero);
            }
            // cancel what divides exactly, keep the rest in the denominator
            let mut left = e;
            while left > 0 {
                match num.div_exact(coeff) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            den = &den * &coeff.pow(left as u32);
        } else if e < 0 {
            num = &num * &coeff.pow((-e) as u32);
        }
    }
    Ok(LaurentFraction::new(num, den))
}

/// Conway polynomial in `z`.
pub fn conway_poly(e: &Embedding) -> LaurentPoly {
    skein_eval(e, &SkeinCoeffs::conway())
        .expect("C = z is nonzero")
        .as_poly()
        .expect("Conway values of knots are polynomials")
}

/// Alexander polynomial obtained from a Conway polynomial by
/// `z = t^(1/2) - t^(-1/2)`, normalized.
pub fn conway_to_alexander(conway: &LaurentPoly) -> LaurentPoly {
    let z = LaurentPoly::new(-1, vec![-1, 0, 1]);
    conway
        .compose(&z)
        .and_then(|p| p.halve_exponents())
        .expect("knot Conway polynomials have only even powers")
        .normalized()
}
