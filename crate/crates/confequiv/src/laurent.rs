//! Sparse integer Laurent polynomials.
//!
//! Elements of ℤ[t,t⁻¹] stored as degree → coefficient maps. Zero
//! coefficients are never stored, so structural equality is ring equality
//! and the zero polynomial is the empty map. Coefficients are
//! arbitrary-precision: nothing here overflows, only grows.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::power_of_t(0)
    }

    /// t^deg
    pub fn power_of_t(deg: i64) -> Self {
        Self::monomial(deg, 1)
    }

    pub fn monomial(deg: i64, coeff: impl Into<BigInt>) -> Self {
        let c: BigInt = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (d, c) in iter {
            p.add_term(d, &c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// Coefficient of t^deg (zero when absent).
    pub fn coeff(&self, deg: i64) -> BigInt {
        self.terms.get(&deg).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, deg: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(deg).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&deg);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(d, c)| (*d, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            let neg = -c;
            out.add_term(*d, &neg);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(d1 + d2, &(c1 * c2));
            }
        }
        out
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect() }
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k: BigInt = k.into();
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(d, c)| (*d, c * &k)).collect() }
    }

    /// Keeps only terms with degree < cutoff.
    pub fn drop_degrees_at_least(&self, cutoff: i64) -> Self {
        LaurentPoly {
            terms: self.terms.range(..cutoff).map(|(d, c)| (*d, c.clone())).collect(),
        }
    }

    /// Keeps only terms with degree >= cutoff.
    pub fn drop_degrees_below(&self, cutoff: i64) -> Self {
        LaurentPoly {
            terms: self.terms.range(cutoff..).map(|(d, c)| (*d, c.clone())).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest degree first, matching how people write polynomials
        for (d, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit_coeff = mag.is_one();
            match (*d, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{d}")?,
                (_, false) => write!(f, "{mag}*t^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Wire form: {"<degree>": "<coefficient>"} with decimal-string coefficients,
// so readers never need big-integer JSON numbers.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> =
            self.terms.iter().map(|(d, c)| (d.to_string(), c.to_string())).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (deg, coeff) in map {
            let deg: i64 = deg.parse().map_err(|_| D::Error::custom("bad degree"))?;
            let coeff: BigInt = coeff.parse().map_err(|_| D::Error::custom("bad coefficient"))?;
            p.add_term(deg, &coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().copied())
    }

    #[test]
    fn zero_is_empty_and_absorbing() {
        assert!(LaurentPoly::zero().is_zero());
        assert!(p(&[(3, 1), (3, -1)]).is_zero());
        assert_eq!(p(&[(2, 5)]).mul(&LaurentPoly::zero()), LaurentPoly::zero());
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        // (t + 1)(t - 1) = t^2 - 1
        let a = p(&[(1, 1), (0, 1)]);
        let b = p(&[(1, 1), (0, -1)]);
        assert_eq!(a.mul(&b), p(&[(2, 1), (0, -1)]));
        // (t^-1 + 2)(t - 1) = 1 - t^-1 + 2t - 2 = 2t - 1 - t^-1
        let c = p(&[(-1, 1), (0, 2)]);
        let d = p(&[(1, 1), (0, -1)]);
        assert_eq!(c.mul(&d), p(&[(1, 2), (0, -1), (-1, -1)]));
    }

    #[test]
    fn shift_is_monomial_multiplication() {
        let a = p(&[(-2, 3), (5, -1)]);
        assert_eq!(a.shift(4), a.mul(&LaurentPoly::power_of_t(4)));
        assert_eq!(a.shift(0), a);
    }

    #[test]
    fn truncations_split_the_polynomial() {
        let a = p(&[(-2, 1), (-1, 2), (0, 3), (1, 4)]);
        assert_eq!(a.drop_degrees_at_least(0), p(&[(-2, 1), (-1, 2)]));
        assert_eq!(a.drop_degrees_below(0), p(&[(0, 3), (1, 4)]));
        assert_eq!(a.drop_degrees_at_least(0).add(&a.drop_degrees_below(0)), a);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[]).to_string(), "0");
        assert_eq!(p(&[(0, 1)]).to_string(), "1");
        assert_eq!(p(&[(1, 1)]).to_string(), "t");
        assert_eq!(p(&[(-1, -2), (2, 1)]).to_string(), "t^2-2*t^-1");
    }

    #[test]
    fn serde_round_trip() {
        let a = p(&[(-3, 7), (0, -1), (9, 123456789)]);
        let json = serde_json::to_string(&a).unwrap();
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(a, back);
    }
}
