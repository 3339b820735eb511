//! Integer Laurent polynomials in one variable, used for Kazhdan-Lusztig
//! polynomials (variable `q`) and canonical-basis structure constants
//! (variable `v`, with `v^2 = q`).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// A finitely supported integer Laurent polynomial.
///
/// Stored densely as `coeffs[i]` = coefficient of `x^(val + i)`, with both
/// ends trimmed so that `coeffs` is empty exactly for the zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct LaurentPoly {
    val: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { val: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// `c * x^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly { val: e, coeffs: vec![c] }
    }

    pub fn from_coeffs(val: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { val, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.val += lead_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.coeffs == [1]
    }

    /// Largest exponent with nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val + self.coeffs.len() as i32 - 1)
        }
    }

    /// Smallest exponent with nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn coeff(&self, e: i32) -> i64 {
        if self.is_zero() || e < self.val {
            return 0;
        }
        let i = (e - self.val) as usize;
        if i < self.coeffs.len() {
            self.coeffs[i]
        } else {
            0
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.val + i as i32, c))
    }

    /// Multiply by `c * x^e`.
    pub fn shift_scale(&self, e: i32, c: i64) -> Self {
        if c == 0 || self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            val: self.val + e,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &LaurentPoly, e: i32, c: i64) {
        if c == 0 || other.is_zero() {
            return;
        }
        let o_val = other.val + e;
        let o_deg = o_val + other.coeffs.len() as i32 - 1;
        if self.is_zero() {
            self.val = o_val;
            self.coeffs = other.coeffs.iter().map(|&a| a * c).collect();
            self.normalize();
            return;
        }
        let s_deg = self.val + self.coeffs.len() as i32 - 1;
        let new_val = self.val.min(o_val);
        let new_deg = s_deg.max(o_deg);
        let mut coeffs = vec![0i64; (new_deg - new_val + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            coeffs[(self.val - new_val) as usize + i] = a;
        }
        for (i, &a) in other.coeffs.iter().enumerate() {
            coeffs[(o_val - new_val) as usize + i] += a * c;
        }
        *self = LaurentPoly::from_coeffs(new_val, coeffs);
    }

    /// Substitute `x -> x^-1`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let deg = self.degree().unwrap();
        let mut coeffs: Vec<i64> = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly::from_coeffs(-deg, coeffs)
    }

    /// True when invariant under `x -> x^-1`.
    pub fn is_bar_symmetric(&self) -> bool {
        *self == self.bar()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Substitute `x -> x^k` (k > 0), e.g. to view a polynomial in `q` as one in `v`.
    pub fn stretch(&self, k: i32) -> Self {
        assert!(k > 0);
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i64; (self.coeffs.len() - 1) * k as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c;
        }
        LaurentPoly::from_coeffs(self.val * k, coeffs)
    }

    /// Render with the given variable name, exponents as `^k`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.iter() {
            let first = out.is_empty();
            if c < 0 {
                out.push_str(if first { "-" } else { " - " });
            } else if !first {
                out.push_str(" + ");
            }
            let a = c.abs();
            let term = match e {
                0 => format!("{a}"),
                1 if a == 1 => var.to_string(),
                1 => format!("{a}{var}"),
                _ if a == 1 => format!("{var}^{e}"),
                _ => format!("{a}{var}^{e}"),
            };
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_assign_scaled(rhs, 0, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_assign_scaled(rhs, 0, -1);
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.shift_scale(0, -1)
    }
}

impl Mul for &LaurentPoly {
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
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.val + rhs.val, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_normalization() {
        let p = LaurentPoly::from_coeffs(-1, vec![1, 0, 1]); // v^-1 + v
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.valuation(), Some(-1));
        assert!(p.is_bar_symmetric());

        let q = &p * &p; // v^-2 + 2 + v^2
        assert_eq!(q.coeff(0), 2);
        assert_eq!(q.coeff(-2), 1);
        assert_eq!(q.coeff(2), 1);

        let z = &q - &q;
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn stretch_views_q_in_v() {
        // 1 + q  ->  1 + v^2
        let p = LaurentPoly::from_coeffs(0, vec![1, 1]);
        let s = p.stretch(2);
        assert_eq!(s.coeff(0), 1);
        assert_eq!(s.coeff(1), 0);
        assert_eq!(s.coeff(2), 1);
    }

    #[test]
    fn display_forms() {
        let p = LaurentPoly::from_coeffs(-1, vec![1, 0, 1]);
        assert_eq!(p.display("v"), "v^-1 + v");
        assert_eq!(LaurentPoly::zero().display("q"), "0");
        assert_eq!(LaurentPoly::one().display("q"), "1");
    }
}
