//! Verifier for claimed paradoxical decompositions.
//!
//! A claim consists of several piece groups; group i carries pieces
//! (P_{i,1},…,P_{i,k(i)}) with translator words (x_{i,1},…,x_{i,k(i)}).
//! The claim is valid on a scope when all pieces across all groups are
//! pairwise disjoint and, for every group i, the translates x_{i,j}·P_{i,j}
//! cover the scope. On finite groups the scope is the whole group; on
//! ball-enumerable groups it is a radius-R ball, with covering checked on
//! the ball shrunk by the longest translator so that every membership test
//! is exact.

use crate::error::{Error, Result};
use crate::group::{ball, eval_word, free, Element, Group, RepresentativePair};
use std::collections::BTreeSet;

/// A piece of the group: an explicit finite element set, or the set of all
/// reduced words starting with one of the given prefixes (free views only).
#[derive(Clone, Debug)]
pub enum SetDescription {
    Explicit(BTreeSet<Element>),
    Prefix(Vec<Vec<free::Letter>>),
}

#[derive(Clone, Debug)]
pub struct Piece {
    pub translator: RepresentativePair,
    pub set: SetDescription,
}

#[derive(Clone, Debug)]
pub struct PieceGroup {
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug)]
pub struct DecompositionClaim {
    pub groups: Vec<PieceGroup>,
}

/// Scope of verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyScope {
    WholeGroup,
    Ball { radius: u32 },
}

/// Which requirement failed, with 1-based piece coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Overlap { first: (usize, usize), second: (usize, usize) },
    Uncovered { group: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid { witness: Element, violation: Violation },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Total piece count Σ k(i); for a valid two-group claim this bounds the
/// minimal piece count of any paradoxical decomposition from above.
pub fn pieces_bound(claim: &DecompositionClaim) -> usize {
    claim.groups.iter().map(|g| g.pieces.len()).sum()
}

fn membership(desc: &SetDescription, x: &Element) -> bool {
    match desc {
        SetDescription::Explicit(set) => set.contains(x),
        SetDescription::Prefix(prefixes) => match x {
            Element::Word(w) => prefixes.iter().any(|p| w.starts_with(p)),
            _ => false,
        },
    }
}

fn validate_claim(group: &Group, claim: &DecompositionClaim) -> Result<()> {
    if claim.groups.is_empty() {
        return Err(Error::ShapeMismatch("a claim needs at least one piece group".into()));
    }
    let rank = group.free_rank();
    for pg in &claim.groups {
        if pg.pieces.is_empty() {
            return Err(Error::ShapeMismatch("every piece group needs at least one piece".into()));
        }
        for piece in &pg.pieces {
            match &piece.set {
                SetDescription::Explicit(set) => {
                    for e in set {
                        group.validate_element(e)?;
                    }
                }
                SetDescription::Prefix(prefixes) => {
                    let Some(rank) = rank else {
                        return Err(Error::UnsupportedDescription(
                            "prefix sets are only defined on free-group views".into(),
                        ));
                    };
                    for p in prefixes {
                        if p.is_empty()
                            || !free::is_reduced(p)
                            || p.iter().any(|l| l.unsigned_abs() as usize > rank)
                        {
                            return Err(Error::UnsupportedDescription(
                                "prefixes must be nonempty reduced words within the rank".into(),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn verify_decomposition(
    group: &Group,
    gens: &[Element],
    claim: &DecompositionClaim,
    scope: VerifyScope,
) -> Result<Verdict> {
    validate_claim(group, claim)?;
    let max_len = claim
        .groups
        .iter()
        .flat_map(|g| g.pieces.iter())
        .map(|p| p.translator.len() as u32)
        .max()
        .unwrap_or(0);
    let (disjoint_scope, cover_scope): (Vec<Element>, Vec<Element>) = match scope {
        VerifyScope::WholeGroup => {
            let els = group.elements()?;
            (els.clone(), els)
        }
        VerifyScope::Ball { radius } => {
            let b = ball(group, gens, radius)?;
            let all: Vec<Element> = b.elements().cloned().collect();
            let inner = all[..b.count_within(radius.saturating_sub(max_len))].to_vec();
            (all, inner)
        }
    };
    // evaluate translators once
    let translated: Vec<Vec<(Element, &SetDescription)>> = claim
        .groups
        .iter()
        .map(|pg| {
            pg.pieces
                .iter()
                .map(|p| Ok((eval_word(group, gens, &p.translator)?, &p.set)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // (a) pairwise disjointness of all pieces, witnessed by the least element
    let mut overlap: Option<(Element, Violation)> = None;
    for x in &disjoint_scope {
        let mut hits = Vec::new();
        for (gi, pg) in claim.groups.iter().enumerate() {
            for (pi, piece) in pg.pieces.iter().enumerate() {
                if membership(&piece.set, x) {
                    hits.push((gi + 1, pi + 1));
                }
            }
        }
        if hits.len() >= 2 && overlap.as_ref().is_none_or(|(w, _)| x < w) {
            overlap = Some((
                x.clone(),
                Violation::Overlap { first: hits[0], second: hits[1] },
            ));
        }
    }
    if let Some((witness, violation)) = overlap {
        return Ok(Verdict::Invalid { witness, violation });
    }
    // (b) every group's translates cover the scope
    for (gi, pieces) in translated.iter().enumerate() {
        let mut uncovered: Option<Element> = None;
        for y in &cover_scope {
            let covered = pieces.iter().any(|(x, desc)| {
                let shifted = group.mul(&group.inv(x), y);
                membership(desc, &shifted)
            });
            if !covered && uncovered.as_ref().is_none_or(|w| y < w) {
                uncovered = Some(y.clone());
            }
        }
        if let Some(witness) = uncovered {
            return Ok(Verdict::Invalid {
                witness,
                violation: Violation::Uncovered { group: gi + 1 },
            });
        }
    }
    Ok(Verdict::Valid)
}

/// The classical four-piece claim over a rank-2 free group: S(a) translated
/// by e with S(a⁻¹) translated by a covers everything, and likewise for b.
pub fn classical_free_claim() -> DecompositionClaim {
    let prefix = |l: i8| SetDescription::Prefix(vec![vec![l]]);
    let word = |letters: Vec<(usize, i8)>| RepresentativePair::from_letters(letters).unwrap();
    DecompositionClaim {
        groups: vec![
            PieceGroup {
                pieces: vec![
                    Piece { translator: RepresentativePair::identity(), set: prefix(1) },
                    Piece { translator: word(vec![(1, 1)]), set: prefix(-1) },
                ],
            },
            PieceGroup {
                pieces: vec![
                    Piece { translator: RepresentativePair::identity(), set: prefix(2) },
                    Piece { translator: word(vec![(2, 1)]), set: prefix(-2) },
                ],
            },
        ],
    }
}
