//! The configuration weighting system and its exact feasibility solver.
//!
//! A one-sided configuration set with tuples C = (c₀,…,c_n) induces the
//! linear system over one unknown x_C per tuple:
//!
//! * x_C ≥ 0 for every C,
//! * Σ_C x_C = 1,
//! * for every generator index i and color j:
//!   Σ_{C: c₀ = j} x_C = Σ_{C: c_i = j} x_C.
//!
//! Feasibility of this system is the amenability criterion the configuration
//! construction was introduced for. Solutions and refutations are exact: the
//! solver runs a phase-1 simplex over arbitrary-precision rationals and
//! re-verifies the witness (a feasible weighting) or the certificate (a
//! separating functional y with yᵀA ≥ 0 and yᵀb < 0) by substitution before
//! returning it.

use crate::configuration::{ConfigurationSet, SetKind};
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// One balance equation: the variables whose c₀ is j against the variables
/// whose c_i is j (variables indexed into the configuration list).
#[derive(Clone, Debug, Serialize)]
pub struct BalanceRow {
    /// Generator index i, 1-based.
    pub i: usize,
    /// Color j, 1-based.
    pub j: usize,
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
}

/// The weighting system of a one-sided configuration set. Variable order is
/// the (sorted) tuple order of the set; row order is the normalization row
/// followed by balance rows for i = 1..n, j = 1..m.
#[derive(Clone, Debug, Serialize)]
pub struct AmenabilitySystem {
    pub n: usize,
    pub m: usize,
    pub variables: Vec<Vec<u8>>,
    pub balance: Vec<BalanceRow>,
}

pub fn build_system(cs: &ConfigurationSet) -> Result<AmenabilitySystem> {
    if cs.kind != SetKind::OneSided {
        return Err(Error::UnsupportedKind(
            "the weighting system is defined for one-sided configuration sets".into(),
        ));
    }
    let mut balance = Vec::with_capacity(cs.n * cs.m);
    for i in 1..=cs.n {
        for j in 1..=cs.m as u8 {
            let lhs: Vec<usize> = cs
                .tuples
                .iter()
                .enumerate()
                .filter(|(_, t)| t[0] == j)
                .map(|(k, _)| k)
                .collect();
            let rhs: Vec<usize> = cs
                .tuples
                .iter()
                .enumerate()
                .filter(|(_, t)| t[i] == j)
                .map(|(k, _)| k)
                .collect();
            balance.push(BalanceRow { i, j: j as usize, lhs, rhs });
        }
    }
    Ok(AmenabilitySystem { n: cs.n, m: cs.m, variables: cs.tuples.clone(), balance })
}

impl AmenabilitySystem {
    /// Equality rows in matrix form: normalization first, then balance rows
    /// (coefficients in {−1,0,1}), with right-hand sides (1,0,…,0).
    fn rows(&self) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let nv = self.variables.len();
        let mut rows = Vec::with_capacity(1 + self.balance.len());
        let mut rhs = Vec::with_capacity(1 + self.balance.len());
        rows.push(vec![BigRational::one(); nv]);
        rhs.push(BigRational::one());
        for row in &self.balance {
            let mut r = vec![BigRational::zero(); nv];
            for &k in &row.lhs {
                r[k] += BigRational::one();
            }
            for &k in &row.rhs {
                r[k] -= BigRational::one();
            }
            rows.push(r);
            rhs.push(BigRational::zero());
        }
        (rows, rhs)
    }

    pub fn verify_witness(&self, w: &[BigRational]) -> bool {
        if w.len() != self.variables.len() {
            return false;
        }
        if w.iter().any(|x| x.is_negative()) {
            return false;
        }
        let (rows, rhs) = self.rows();
        rows.iter().zip(&rhs).all(|(row, b)| {
            let dot: BigRational = row.iter().zip(w).map(|(a, x)| a * x).sum();
            dot == *b
        })
    }

    /// Checks the separating functional: yᵀA ≥ 0 componentwise and yᵀb < 0,
    /// which refutes every nonnegative solution of Ax = b.
    pub fn verify_certificate(&self, y: &[BigRational]) -> bool {
        let (rows, rhs) = self.rows();
        if y.len() != rows.len() {
            return false;
        }
        let nv = self.variables.len();
        for k in 0..nv {
            let col: BigRational = rows.iter().zip(y).map(|(row, yi)| &row[k] * yi).sum();
            if col.is_negative() {
                return false;
            }
        }
        let yb: BigRational = rhs.iter().zip(y).map(|(b, yi)| b * yi).sum();
        yb.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityVerdict {
    Feasible { witness: Vec<BigRational> },
    Infeasible { certificate: Vec<BigRational> },
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }
}

fn rational_field<S: Serializer>(
    vs: &[BigRational],
    name: &'static str,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Rat {
        num: String,
        den: String,
    }
    let list: Vec<Rat> = vs
        .iter()
        .map(|v| Rat { num: v.numer().to_string(), den: v.denom().to_string() })
        .collect();
    let mut st = s.serialize_struct("FeasibilityVerdict", 2)?;
    st.serialize_field("status", if name == "witness" { "feasible" } else { "infeasible" })?;
    st.serialize_field(name, &list)?;
    st.end()
}

impl Serialize for FeasibilityVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FeasibilityVerdict::Feasible { witness } => rational_field(witness, "witness", s),
            FeasibilityVerdict::Infeasible { certificate } => {
                rational_field(certificate, "certificate", s)
            }
        }
    }
}

/// Decides feasibility exactly. The returned witness or certificate has been
/// re-verified by substitution; a verification failure would be a solver
/// defect and panics.
pub fn solve(system: &AmenabilitySystem) -> FeasibilityVerdict {
    let (rows, rhs) = system.rows();
    let verdict = phase_one(&rows, &rhs, system.variables.len());
    match &verdict {
        FeasibilityVerdict::Feasible { witness } => {
            assert!(system.verify_witness(witness), "witness failed re-verification");
        }
        FeasibilityVerdict::Infeasible { certificate } => {
            assert!(system.verify_certificate(certificate), "certificate failed re-verification");
        }
    }
    verdict
}

/// Phase-1 simplex with Bland's rule on min Σ artificials s.t. Ax + a = b,
/// x, a ≥ 0 (b ≥ 0 by construction here). Zero optimum yields a feasible x;
/// positive optimum yields the dual functional, negated into a certificate.
fn phase_one(
    rows: &[Vec<BigRational>],
    rhs: &[BigRational],
    nv: usize,
) -> FeasibilityVerdict {
    let nr = rows.len();
    let cols = nv + nr; // structural + artificial
    // tableau rows: [structural | artificial | rhs]
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(nr);
    for (r, row) in rows.iter().enumerate() {
        let mut tr = Vec::with_capacity(cols + 1);
        tr.extend(row.iter().cloned());
        for k in 0..nr {
            tr.push(if k == r { BigRational::one() } else { BigRational::zero() });
        }
        tr.push(rhs[r].clone());
        // rhs must be nonnegative for the artificial start basis
        debug_assert!(!rhs[r].is_negative());
        t.push(tr);
    }
    let mut basis: Vec<usize> = (nv..nv + nr).collect();
    // phase-1 cost row: artificials cost 1; subtract each constraint row to
    // price out the starting basis
    let mut cost = vec![BigRational::zero(); cols + 1];
    for c in cost.iter_mut().take(nv + nr).skip(nv) {
        *c = BigRational::one();
    }
    for row in &t {
        for (c, v) in cost.iter_mut().zip(row) {
            *c -= v;
        }
    }
    loop {
        // Bland: least-index column with negative reduced cost
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else {
            break;
        };
        // ratio test, ties by least basis index (Bland)
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for r in 0..nr {
            if t[r][enter].is_positive() {
                let ratio = &t[r][cols] / &t[r][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let r = leave.expect("phase-1 objective is bounded below; a pivot row must exist");
        // pivot
        let piv = t[r][enter].clone();
        for v in t[r].iter_mut() {
            *v /= &piv;
        }
        for rr in 0..nr {
            if rr != r && !t[rr][enter].is_zero() {
                let f = t[rr][enter].clone();
                for k in 0..=cols {
                    let delta = &f * &t[r][k];
                    t[rr][k] -= delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for k in 0..=cols {
                let delta = &f * &t[r][k];
                cost[k] -= delta;
            }
        }
        basis[r] = enter;
    }
    // optimum of the phase-1 objective: cost[rhs] = -w*
    let w = -cost[cols].clone();
    if w.is_zero() {
        let mut x = vec![BigRational::zero(); nv];
        for (r, &b) in basis.iter().enumerate() {
            if b < nv {
                x[b] = t[r][cols].clone();
            }
        }
        FeasibilityVerdict::Feasible { witness: x }
    } else {
        // dual from reduced costs of artificial columns: y_r = 1 - cost[a_r];
        // y satisfies yᵀA ≤ 0, yᵀb = w > 0, so -y is the certificate
        let y: Vec<BigRational> =
            (0..nr).map(|r| -(BigRational::one() - &cost[nv + r])).collect();
        FeasibilityVerdict::Infeasible { certificate: y }
    }
}

/// Convenience: solve the system of a configuration set directly.
pub fn feasibility(cs: &ConfigurationSet) -> Result<FeasibilityVerdict> {
    Ok(solve(&build_system(cs)?))
}
