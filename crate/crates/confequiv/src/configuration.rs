//! Configuration sets of a (generating tuple, partition) pair.
//!
//! Fix a group with an ordered tuple 𝔤 = (g₁,…,g_n) and an m-block partition.
//! The configuration realized by x is the color tuple (c₀,…,c_n) with x in
//! block c₀ and g_i·x in block c_i; the two-sided configuration additionally
//! records c_{n+i} = color of x·g_i, giving a (2n+1)-tuple. The configuration
//! set collects the tuples realized by every x — exactly on finite groups,
//! and observed on word balls (with a stabilization heuristic) on infinite
//! ones.

use crate::error::{Error, Result};
use crate::group::{ball, Element, Group};
use crate::partition::Partition;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SetKind {
    #[serde(rename = "one-sided")]
    OneSided,
    #[serde(rename = "two-sided")]
    TwoSided,
}

/// Whether a configuration set is the true set or a ball-limited observation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    /// Observed on the ball of the given radius; the same set was seen for
    /// `stable_for` consecutive radii ending there, and `stable` records
    /// whether that met the requested span.
    Observed { radius: u32, stable_for: u32, stable: bool },
}

/// A sorted, duplicate-free set of realized color tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationSet {
    pub kind: SetKind,
    /// Tuple size n (colors per configuration: n+1 one-sided, 2n+1 two-sided).
    pub n: usize,
    /// Number of colors.
    pub m: usize,
    pub exactness: Exactness,
    pub tuples: Vec<Vec<u8>>,
}

impl ConfigurationSet {
    fn from_tuples(
        kind: SetKind,
        n: usize,
        m: usize,
        exactness: Exactness,
        set: BTreeSet<Vec<u8>>,
    ) -> Self {
        ConfigurationSet { kind, n, m, exactness, tuples: set.into_iter().collect() }
    }

    pub fn contains(&self, tuple: &[u8]) -> bool {
        self.tuples.binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Applies a color permutation (1-based, length m) to every tuple.
    pub fn recolor(&self, sigma: &[u8]) -> Result<ConfigurationSet> {
        if sigma.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "permutation of length {} for {} colors",
                sigma.len(),
                self.m
            )));
        }
        let set: BTreeSet<Vec<u8>> = self
            .tuples
            .iter()
            .map(|t| t.iter().map(|&c| sigma[c as usize - 1]).collect())
            .collect();
        Ok(ConfigurationSet::from_tuples(self.kind, self.n, self.m, self.exactness, set))
    }
}

/// Color tuple realized by a single element.
pub fn configuration_of(
    group: &Group,
    gens: &[Element],
    p: &Partition,
    x: &Element,
    kind: SetKind,
) -> Result<Vec<u8>> {
    let mut colors = Vec::with_capacity(match kind {
        SetKind::OneSided => gens.len() + 1,
        SetKind::TwoSided => 2 * gens.len() + 1,
    });
    colors.push(p.color_of(x)?);
    for g in gens {
        colors.push(p.color_of(&group.mul(g, x))?);
    }
    if kind == SetKind::TwoSided {
        for g in gens {
            colors.push(p.color_of(&group.mul(x, g))?);
        }
    }
    Ok(colors)
}

fn configurations_over(
    group: &Group,
    gens: &[Element],
    p: &Partition,
    scope: &[Element],
    kind: SetKind,
    exactness: Exactness,
) -> Result<ConfigurationSet> {
    let mut set = BTreeSet::new();
    for x in scope {
        set.insert(configuration_of(group, gens, p, x, kind)?);
    }
    Ok(ConfigurationSet::from_tuples(kind, gens.len(), p.m(), exactness, set))
}

/// Exact one-sided configuration set of a finite group.
pub fn configurations(group: &Group, gens: &[Element], p: &Partition) -> Result<ConfigurationSet> {
    configurations_over(group, gens, p, &group.elements()?, SetKind::OneSided, Exactness::Exact)
}

/// Exact two-sided configuration set of a finite group.
pub fn two_sided_configurations(
    group: &Group,
    gens: &[Element],
    p: &Partition,
) -> Result<ConfigurationSet> {
    configurations_over(group, gens, p, &group.elements()?, SetKind::TwoSided, Exactness::Exact)
}

/// Observed configuration set at ball radius R: base points range over
/// ball(R−1) so that every g_i·x and x·g_i stays within ball(R).
pub fn configurations_on_ball(
    group: &Group,
    gens: &[Element],
    p: &Partition,
    radius: u32,
    kind: SetKind,
) -> Result<ConfigurationSet> {
    if radius == 0 {
        return Err(Error::ShapeMismatch("ball scope needs radius >= 1".into()));
    }
    let b = ball(group, gens, radius - 1)?;
    let scope: Vec<Element> = b.elements().cloned().collect();
    configurations_over(
        group,
        gens,
        p,
        &scope,
        kind,
        Exactness::Observed { radius, stable_for: 1, stable: false },
    )
}

/// Computes observed sets at radii 1..=r_max and returns the first one that
/// repeats for `span` consecutive radii (tagged stable); if none does, the
/// r_max set is returned with its trailing repeat count and stable = false.
pub fn stabilized_configurations(
    group: &Group,
    gens: &[Element],
    p: &Partition,
    r_max: u32,
    span: u32,
    kind: SetKind,
) -> Result<ConfigurationSet> {
    if span < 2 {
        return Err(Error::ShapeMismatch("stability span must be at least 2".into()));
    }
    if r_max == 0 {
        return Err(Error::ShapeMismatch("ball scope needs radius >= 1".into()));
    }
    // one ball suffices: the radius-(R-1) ball is a prefix of the BFS order
    let b = ball(group, gens, r_max.saturating_sub(1))?;
    let all: Vec<Element> = b.elements().cloned().collect();
    let mut per_radius: Vec<BTreeSet<Vec<u8>>> = Vec::new();
    for r in 1..=r_max {
        let scope = &all[..b.count_within(r - 1)];
        let mut set = BTreeSet::new();
        for x in scope {
            set.insert(configuration_of(group, gens, p, x, kind)?);
        }
        per_radius.push(set);
    }
    // first radius whose set persists for `span` consecutive radii
    for start in 0..per_radius.len() {
        let end = start + span as usize;
        if end > per_radius.len() {
            break;
        }
        if per_radius[start..end].iter().all(|s| *s == per_radius[start]) {
            return Ok(ConfigurationSet::from_tuples(
                kind,
                gens.len(),
                p.m(),
                Exactness::Observed { radius: start as u32 + 1, stable_for: span, stable: true },
                per_radius.swap_remove(start),
            ));
        }
    }
    let last = per_radius.len() - 1;
    let mut run = 1;
    while run <= last && per_radius[last - run] == per_radius[last] {
        run += 1;
    }
    Ok(ConfigurationSet::from_tuples(
        kind,
        gens.len(),
        p.m(),
        Exactness::Observed { radius: r_max, stable_for: run as u32, stable: false },
        per_radius.swap_remove(last),
    ))
}
