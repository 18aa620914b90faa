use std::ops::{Add, Mul, Neg};

use super::oracle::{NormalForm, WordOracle};
use crate::automaton::Alphabet;

/// An integer Laurent polynomial in `t`, `Σ cᵢ t^(low+i)`, kept without
/// leading or trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, exponent: i32) -> Self {
        Self::normalized(exponent, vec![c])
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    fn normalized(mut low: i32, mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|&&c| c == 0).count();
        coeffs.drain(..lead);
        low += lead as i32;
        if coeffs.is_empty() {
            low = 0;
        }
        LaurentPoly { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^e`.
    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.low;
        if i < 0 {
            0
        } else {
            self.coeffs.get(i as usize).copied().unwrap_or(0)
        }
    }

    fn encode(&self, out: &mut Vec<i64>) {
        out.push(self.low as i64);
        out.push(self.coeffs.len() as i64);
        out.extend_from_slice(&self.coeffs);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i32).max(other.low + other.coeffs.len() as i32);
        let coeffs = (low..high).map(|e| self.coeff(e) + other.coeff(e)).collect();
        LaurentPoly::normalized(low, coeffs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        LaurentPoly::normalized(self.low + other.low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

type Mat = [LaurentPoly; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let e = |i: usize, j: usize| &(&x[2 * i] * &y[j]) + &(&x[2 * i + 1] * &y[2 + j]);
    [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
}

/// The braid group on three strands, generated by `a = σ₁` and `b = σ₂`
/// (alphabet `a A b B`), with equality decided by the reduced Burau
/// representation, which is faithful for three strands.
#[derive(Clone, Debug)]
pub struct Braid3 {
    alphabet: Alphabet,
    images: Vec<Mat>,
}

impl Default for Braid3 {
    fn default() -> Self {
        Self::new()
    }
}

impl Braid3 {
    pub fn new() -> Self {
        let m = LaurentPoly::monomial;
        let (zero, one) = (LaurentPoly::zero(), LaurentPoly::constant(1));
        let images = vec![
            [m(-1, 1), one.clone(), zero.clone(), one.clone()],
            [m(-1, -1), m(1, -1), zero.clone(), one.clone()],
            [one.clone(), zero.clone(), m(1, 1), m(-1, 1)],
            [one.clone(), zero, one, m(-1, -1)],
        ];
        Braid3 {
            alphabet: Alphabet::group(&["a", "b"]).unwrap(),
            images,
        }
    }

    pub fn matrix(&self, word: &[usize]) -> [LaurentPoly; 4] {
        let identity = [
            LaurentPoly::constant(1),
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            LaurentPoly::constant(1),
        ];
        word.iter()
            .fold(identity, |m, &a| mat_mul(&m, &self.images[a]))
    }
}

impl WordOracle for Braid3 {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn normal_form(&self, word: &[usize]) -> NormalForm {
        let mut key = Vec::new();
        for p in self.matrix(word).iter() {
            p.encode(&mut key);
        }
        NormalForm(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic() {
        let t = LaurentPoly::monomial(1, 1);
        let ti = LaurentPoly::monomial(1, -1);
        assert_eq!(&t * &ti, LaurentPoly::constant(1));
        let s = &t + &(-&t);
        assert!(s.is_zero());
        let p = &(&t + &ti) * &(&t + &ti);
        assert_eq!((p.coeff(2), p.coeff(0), p.coeff(-2)), (1, 2, 1));
    }

    #[test]
    fn braid_relation_holds() {
        let g = Braid3::new();
        let al = g.alphabet().clone();
        let w = |s: &str| al.parse_word(s).unwrap();
        assert!(g.equal(&w("aba"), &w("bab")));
        assert!(g.is_identity(&w("aA")) && g.is_identity(&w("Bb")));
        assert!(!g.equal(&w("ab"), &w("ba")));
        // the full twist is central
        assert!(g.equal(&w("abaabaa"), &w("aabaaba")));
    }
}
