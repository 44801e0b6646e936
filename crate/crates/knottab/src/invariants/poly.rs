use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in one variable.
///
/// Stored as the exponent of the first coefficient plus a dense coefficient
/// vector with no leading or trailing zeros. The zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::new(0, vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        Self::new(exp, vec![coeff])
    }

    /// Coefficients of `t^low, t^(low+1), ...`.
    pub fn new(low: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> i32 {
        self.low
    }

    pub fn high_exp(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let i = exp - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// Coefficients from the lowest exponent upward.
    pub fn coefficients(&self) -> Vec<i64> {
        self.coeffs.clone()
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|&x| x.checked_mul(c).expect("coefficient overflow")).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Divides out the unit `±t^k` so that the lowest exponent is 0 and the
    /// leading coefficient is positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let p = self.shift(-self.low);
        if p.leading() < 0 {
            -&p
        } else {
            p
        }
    }

    /// Exact quotient, if `d` divides `self` in the Laurent ring over the
    /// integers.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dl = d.leading();
        let dh = d.high_exp();
        let dlow = d.low;
        let mut rem = self.clone();
        let mut q: Vec<(i32, i64)> = Vec::new();
        // long division from the top; the remainder must vanish
        while !rem.is_zero() {
            let rl = rem.leading();
            if rl % dl != 0 {
                return None;
            }
            let e = rem.high_exp() - dh;
            if rem.high_exp() - rem.low < dh - dlow {
                return None;
            }
            let c = rl / dl;
            q.push((e, c));
            rem = &rem - &(d * &LaurentPoly::monomial(c, e));
        }
        let low = q.iter().map(|x| x.0).min().unwrap_or(0);
        let high = q.iter().map(|x| x.0).max().unwrap_or(0);
        let mut coeffs = vec![0i64; (high - low + 1) as usize];
        for (e, c) in q {
            coeffs[(e - low) as usize] += c;
        }
        Some(Self::new(low, coeffs))
    }

    /// Substitutes `t -> t^(1/2)` when every exponent is even.
    pub fn halve_exponents(&self) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.low % 2 != 0 {
            return None;
        }
        let mut coeffs = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % 2 == 1 {
                if c != 0 {
                    return None;
                }
            } else {
                coeffs.push(c);
            }
        }
        Some(Self::new(self.low / 2, coeffs))
    }

    /// Replaces the variable by the Laurent polynomial `x`. Negative powers
    /// require `x` to be a monomial.
    pub fn compose(&self, x: &LaurentPoly) -> Option<LaurentPoly> {
        let mut acc = Self::zero();
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i32;
            let term = if e >= 0 {
                x.pow(e as u32)
            } else {
                if x.coeffs.len() != 1 || x.coeffs[0].abs() != 1 {
                    return None;
                }
                let inv = LaurentPoly::monomial(x.coeffs[0], -x.low);
                inv.pow((-e) as u32)
            };
            acc = &acc + &term.scale(c);
        }
        Some(acc)
    }

    /// Value at an integer point, reduced modulo `q`. Negative exponents
    /// use the modular inverse of `t`, which must exist.
    pub fn eval_mod(&self, t: i64, q: i64) -> i64 {
        let tm = t.rem_euclid(q);
        let inv = mod_inverse(tm, q).unwrap_or(0);
        let mut acc = 0i64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let e = self.low + i as i32;
            let base = if e >= 0 { tm } else { inv };
            let mut p = 1i64;
            for _ in 0..e.unsigned_abs() {
                p = p * base % q;
            }
            acc = (acc + c.rem_euclid(q) * p) % q;
        }
        acc
    }
}

pub(crate) fn mod_inverse(a: i64, q: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(q), q);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let k = old_r / r;
        (old_r, r) = (r, old_r - k * r);
        (old_s, s) = (s, old_s - k * s);
    }
    if old_r == 1 {
        Some(old_s.rem_euclid(q))
    } else {
        None
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().max(rhs.high_exp());
        let coeffs = (low..=high)
            .map(|e| self.coeff(e).checked_add(rhs.coeff(e)).expect("coefficient overflow"))
            .collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let v = a.checked_mul(b).expect("coefficient overflow");
                coeffs[i + j] = coeffs[i + j].checked_add(v).expect("coefficient overflow");
            }
        }
        LaurentPoly::new(self.low + rhs.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let e = self.low + i as i32;
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// A quotient of Laurent polynomials. Equality is by cross multiplication.
#[derive(Clone, Debug)]
pub struct LaurentFraction {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl LaurentFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        LaurentFraction { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        LaurentFraction { num: p, den: LaurentPoly::one() }
    }

    /// The quotient as a Laurent polynomial, when the division is exact.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }
}

impl PartialEq for LaurentFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for LaurentFraction {}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.den),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(low: i32, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(low, c.to_vec())
    }

    #[test]
    fn normalization_and_display() {
        let a = p(-1, &[-1, 3, -1]);
        assert_eq!(a.normalized(), p(0, &[1, -3, 1]));
        assert_eq!(a.normalized().to_string(), "t^2 - 3t + 1");
        assert_eq!(p(0, &[0, 0]), LaurentPoly::zero());
        assert_eq!(p(-2, &[0, 0, 5, 0]), LaurentPoly::monomial(5, 0));
    }

    #[test]
    fn exact_division() {
        let a = p(0, &[1, -1, 1]);
        let b = p(0, &[1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(prod.div_exact(&a), Some(b));
        assert_eq!(a.div_exact(&p(0, &[2])), None);
        assert_eq!(a.div_exact(&p(0, &[1, 1])), None);
    }

    #[test]
    fn halving_and_composition() {
        let z = p(-1, &[-1, 0, 1]); // s - 1/s
        let conway = p(0, &[1, 0, 1]); // 1 + z^2
        let sub = conway.compose(&z).unwrap();
        assert_eq!(sub, p(-2, &[1, 0, -1, 0, 1]));
        assert_eq!(sub.halve_exponents().unwrap().normalized(), p(0, &[1, -1, 1]));
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i32..3, prop::collection::vec(-5i64..5, 0..5)).prop_map(|(l, c)| LaurentPoly::new(l, c))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &a), &LaurentPoly::zero());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
            }
        }
    }
}
