use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

use crate::lattice::LatticeVector;

/// Formal parameters. `S` is the additive-group coordinate; `SPrime` is a
/// second, independent copy used to state the action law.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    S,
    SPrime,
}

impl Param {
    fn slot(self) -> usize {
        match self {
            Param::S => 0,
            Param::SPrime => 1,
        }
    }
}

/// Monomial `s^a s′^b χ^m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub s: [u32; 2],
    pub m: LatticeVector,
}

/// Finite integer combination of monomials `s^a s′^b χ^m`, with
/// `χ^m · χ^{m′} = χ^{m+m′}`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedLaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl GradedLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `χ^0` in rank `rank`.
    pub fn one(rank: usize) -> Self {
        Self::character(LatticeVector::zero(rank))
    }

    pub fn character(m: LatticeVector) -> Self {
        Self::monomial(BigInt::one(), [0, 0], m)
    }

    pub fn monomial(coeff: BigInt, s: [u32; 2], m: LatticeVector) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial { s, m }, coeff);
        p
    }

    /// `param · χ^0`.
    pub fn parameter(param: Param, rank: usize) -> Self {
        let mut s = [0, 0];
        s[param.slot()] = 1;
        Self::monomial(BigInt::one(), s, LatticeVector::zero(rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: [u32; 2], m: &LatticeVector) -> BigInt {
        self.terms
            .get(&Monomial { s, m: m.clone() })
            .cloned()
            .unwrap_or_default()
    }

    fn add_term(&mut self, key: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            out.add_term(key.clone(), c * k);
        }
        out
    }

    /// Coefficient of `param^k`, as a polynomial in the remaining variables.
    pub fn param_coefficient(&self, param: Param, k: u32) -> Self {
        let slot = param.slot();
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            if key.s[slot] == k {
                let mut s = key.s;
                s[slot] = 0;
                out.add_term(Monomial { s, m: key.m.clone() }, c.clone());
            }
        }
        out
    }

    /// Replace every character `χ^m` by `f(m)`, keeping parameter powers
    /// and coefficients as multipliers.
    pub fn substitute_characters<F, E>(&self, mut f: F) -> Result<Self, E>
    where
        F: FnMut(&LatticeVector) -> Result<Self, E>,
    {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            let image = f(&key.m)?;
            for (k2, c2) in image.terms {
                let s = [key.s[0] + k2.s[0], key.s[1] + k2.s[1]];
                out.add_term(Monomial { s, m: k2.m }, c * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32, rank: usize) -> Self {
        let mut acc = Self::one(rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Characters appearing with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &LatticeVector> {
        self.terms.keys().map(|k| &k.m)
    }
}

impl Add for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn add(self, rhs: &GradedLaurentPoly) -> GradedLaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn sub(self, rhs: &GradedLaurentPoly) -> GradedLaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }
}

impl Neg for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn neg(self) -> GradedLaurentPoly {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &GradedLaurentPoly {
    type Output = GradedLaurentPoly;
    fn mul(self, rhs: &GradedLaurentPoly) -> GradedLaurentPoly {
        let mut out = GradedLaurentPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key = Monomial {
                    s: [ka.s[0] + kb.s[0], ka.s[1] + kb.s[1]],
                    m: &ka.m + &kb.m,
                };
                out.add_term(key, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for GradedLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}·")?;
            }
            for (name, e) in [("s", key.s[0]), ("s'", key.s[1])] {
                match e {
                    0 => {}
                    1 => write!(f, "{name}·")?,
                    _ => write!(f, "{name}^{e}·")?,
                }
            }
            write!(f, "χ^{}", key.m)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(c: &[i64]) -> GradedLaurentPoly {
        GradedLaurentPoly::character(LatticeVector::from_i64s(c))
    }

    #[test]
    fn characters_multiply_by_adding_exponents() {
        let p = &chi(&[1, 0]) * &chi(&[-1, 2]);
        assert_eq!(p, chi(&[0, 2]));
        assert_eq!(&chi(&[3, 4]) * &GradedLaurentPoly::one(2), chi(&[3, 4]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = &chi(&[1]) - &chi(&[1]);
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn binomial_square() {
        let s = GradedLaurentPoly::parameter(Param::S, 1);
        let base = &GradedLaurentPoly::one(1) + &(&s * &chi(&[-1]));
        let sq = base.pow(2, 1);
        assert_eq!(sq.coefficient([0, 0], &LatticeVector::from([0])), BigInt::from(1));
        assert_eq!(sq.coefficient([1, 0], &LatticeVector::from([-1])), BigInt::from(2));
        assert_eq!(sq.coefficient([2, 0], &LatticeVector::from([-2])), BigInt::from(1));
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.param_coefficient(Param::S, 1), chi(&[-1]).scale(&BigInt::from(2)));
    }

    #[test]
    fn display() {
        let s = GradedLaurentPoly::parameter(Param::S, 1);
        let p = &(&s * &chi(&[0])).scale(&BigInt::from(2)) + &chi(&[2]);
        assert_eq!(p.to_string(), "χ^(2) + 2·s·χ^(0)");
    }
}
