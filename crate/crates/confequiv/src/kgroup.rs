//! A finitely generated group of upper unitriangular matrices over ℤ[t,t⁻¹],
//! together with two central quotients that differ in torsion.
//!
//! Elements are matrices
//!
//! ```text
//!         [ 1  B  D ]
//!   x  =  [ 0  A  C ]      A = t^a,   B, C, D ∈ ℤ[t,t⁻¹]
//!         [ 0  0  1 ]
//! ```
//!
//! recorded as quadruples (A, B, C, D). Matrix multiplication gives the
//! product law
//!
//! ```text
//!   (A,B,C,D)·(X,Y,Z,W) = (A·X,  B·X + Y,  A·Z + C,  B·Z + D + W)
//! ```
//!
//! The center is exactly {(1,0,0,D)}, so any additive subgroup of the D
//! coordinate that is stable under the relevant shifts yields a central
//! quotient. Writing N_m = t^m·ℤ[t], the two quotients of interest are
//!
//! * mod N₀: D keeps only its negative-degree part (torsion-free), and
//! * mod 2ℤ ⊕ N₁: D keeps its negative-degree part plus the constant term
//!   reduced mod 2 (introduces an element of order 2).
//!
//! Elements under a quotient mode are kept in reduced normal form at all
//! times: every operation reduces eagerly, so structural equality is group
//! equality in the quotient.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuotientMode {
    /// The full matrix group; no reduction.
    None,
    /// Quotient by the central subgroup {(1,0,0,d) : d ∈ N₀ = ℤ[t]}.
    ModN0,
    /// Quotient by the central subgroup {(1,0,0,d) : d ∈ 2ℤ ⊕ N₁}.
    Mod2ZN1,
}

impl QuotientMode {
    pub fn is_quotient(self) -> bool {
        self != QuotientMode::None
    }
}

/// Quadruple (A, B, C, D) with A = t^a stored by its exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KElement {
    pub a: i64,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
}

impl KElement {
    pub fn new(a: i64, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        KElement { a, b, c, d }
    }

    pub fn identity() -> Self {
        KElement::new(0, LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// k1 = (t, 0, 0, 0)
    pub fn k1() -> Self {
        KElement::new(1, LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero())
    }

    /// k2 = (1, 1, 0, 0)
    pub fn k2() -> Self {
        KElement::new(0, LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero())
    }

    /// k3 = (1, 0, 1, 0)
    pub fn k3() -> Self {
        KElement::new(0, LaurentPoly::zero(), LaurentPoly::one(), LaurentPoly::zero())
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.a {
            0 => "1".to_string(),
            1 => "t".to_string(),
            e => format!("t^{e}"),
        };
        write!(f, "({a},{},{},{})", self.b, self.c, self.d)
    }
}

impl fmt::Debug for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Normal form of the central coordinate under the given mode.
pub fn reduce(x: &KElement, mode: QuotientMode) -> KElement {
    let d = match mode {
        QuotientMode::None => x.d.clone(),
        QuotientMode::ModN0 => x.d.drop_degrees_at_least(0),
        QuotientMode::Mod2ZN1 => {
            use num_traits::Zero;
            let neg = x.d.drop_degrees_at_least(0);
            let odd = !(x.d.coeff(0) % num_bigint::BigInt::from(2)).is_zero();
            if odd {
                neg.add(&LaurentPoly::one())
            } else {
                neg
            }
        }
    };
    KElement::new(x.a, x.b.clone(), x.c.clone(), d)
}

/// Product of x and y, reduced under `mode`.
pub fn mul(x: &KElement, y: &KElement, mode: QuotientMode) -> KElement {
    let a = x.a + y.a;
    // X and A are powers of t, so B·X and A·Z are shifts
    let b = x.b.shift(y.a).add(&y.b);
    let c = y.c.shift(x.a).add(&x.c);
    let d = x.b.mul(&y.c).add(&x.d).add(&y.d);
    reduce(&KElement::new(a, b, c, d), mode)
}

/// Inverse of x, reduced under `mode`.
pub fn inv(x: &KElement, mode: QuotientMode) -> KElement {
    let a = -x.a;
    let b = x.b.shift(-x.a).neg();
    let c = x.c.shift(-x.a).neg();
    let d = x.b.mul(&x.c).shift(-x.a).sub(&x.d);
    reduce(&KElement::new(a, b, c, d), mode)
}

/// The automorphism (A,B,C,D) ↦ (A,B,tC,tD).
///
/// Only defined on the full group: it does not descend to either quotient
/// (it moves the constant term of D into degree one).
pub fn phi(x: &KElement, mode: QuotientMode) -> Result<KElement> {
    if mode.is_quotient() {
        return Err(Error::UnsupportedOnQuotient(
            "the shift automorphism does not descend to the central quotients".into(),
        ));
    }
    Ok(KElement::new(x.a, x.b.clone(), x.c.shift(1), x.d.shift(1)))
}

/// Centrality test: x commutes with everything iff A = 1 and B = C = 0.
/// Meaningful in every mode (the quotients are by central subgroups).
pub fn is_central(x: &KElement) -> bool {
    x.a == 0 && x.b.is_zero() && x.c.is_zero()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum OrderBound {
    Finite(u64),
    ExceedsBound,
}

/// Least k with 1 <= k <= bound and x^k = e under `mode`, if any.
///
/// When the exponent a is nonzero, x^k has exponent k·a ≠ 0 for every k >= 1,
/// so the element has infinite order and the scan is skipped.
pub fn order_bounded(x: &KElement, mode: QuotientMode, bound: u64) -> OrderBound {
    let x = reduce(x, mode);
    if x.is_identity() {
        return OrderBound::Finite(1);
    }
    if x.a != 0 {
        return OrderBound::ExceedsBound;
    }
    let mut acc = x.clone();
    for k in 2..=bound {
        acc = mul(&acc, &x, mode);
        if acc.is_identity() {
            return OrderBound::Finite(k);
        }
    }
    OrderBound::ExceedsBound
}
