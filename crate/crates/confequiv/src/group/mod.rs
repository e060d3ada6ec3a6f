//! Group views: a uniform facade over explicit multiplication tables,
//! permutation groups, direct products, free groups, and the Laurent matrix
//! group with its central quotients.
//!
//! Every element is carried in a canonical form (table index, image vector,
//! component tuple, reduced word, or reduced matrix quadruple), so structural
//! equality of [`Element`] values is group-element equality and elements can
//! key hash maps and ordered sets. Finite views expose full enumeration in a
//! fixed canonical order; infinite views expose word balls instead.

pub mod free;
mod named;

use crate::error::{Error, Result};
use crate::kgroup::{self, KElement, QuotientMode};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// A group element in canonical form. Which variant is meaningful depends on
/// the owning [`Group`]; elements never mix across views.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Index into an explicit multiplication table.
    Index(u32),
    /// Permutation as the image vector of 0..degree.
    Perm(Vec<u8>),
    /// Component-wise element of a direct product.
    Tuple(Vec<Element>),
    /// Reduced word in a free group.
    Word(Vec<free::Letter>),
    /// Reduced quadruple in the Laurent matrix group or a quotient of it.
    Matrix(Box<KElement>),
}

/// Ingested description of a group. The JSON wire format tags the variant
/// with a "kind" field; see the CLI documentation for examples.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum GroupDefinition {
    #[serde(rename = "cyclic")]
    Cyclic { order: u32 },
    /// Dihedral group with k rotations (order 2k).
    #[serde(rename = "dihedral")]
    Dihedral { k: u32 },
    #[serde(rename = "quaternion")]
    Quaternion,
    #[serde(rename = "symmetric")]
    Symmetric { n: u8 },
    #[serde(rename = "product")]
    Product { factors: Vec<GroupDefinition> },
    /// Explicit multiplication table over element indices. Optional names
    /// default to the decimal indices.
    #[serde(rename = "table")]
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        table: Vec<Vec<u32>>,
    },
    /// Subgroup of the symmetric group on `degree` points generated by the
    /// given image vectors.
    #[serde(rename = "permutation")]
    Permutation { degree: u8, generators: Vec<Vec<u8>> },
    #[serde(rename = "free")]
    Free { rank: u8 },
    /// The full group of matrices [[1,B,D],[0,A,C],[0,0,1]] over ℤ[t,t⁻¹].
    #[serde(rename = "paper-K")]
    LaurentFull,
    /// The torsion-free central quotient (D mod ℤ[t]).
    #[serde(rename = "paper-G")]
    LaurentModN0,
    /// The central quotient with 2-torsion (D mod 2ℤ ⊕ tℤ[t]).
    #[serde(rename = "paper-H")]
    LaurentMod2ZN1,
}

#[derive(Clone)]
enum Kind {
    Table {
        names: Vec<String>,
        table: Vec<Vec<u32>>,
        inverses: Vec<u32>,
        identity: u32,
        by_name: HashMap<String, u32>,
        aliases: HashMap<String, u32>,
    },
    Perm {
        degree: u8,
        elements: Vec<Vec<u8>>,
        index: HashMap<Vec<u8>, u32>,
    },
    Product(Vec<Group>),
    Free {
        rank: usize,
    },
    Matrix {
        mode: QuotientMode,
    },
}

/// A group under one of the supported representations.
#[derive(Clone)]
pub struct Group {
    kind: Kind,
    order: Option<u64>,
}

const PERM_CLOSURE_GUARD: usize = 200_000;
const TABLE_GUARD: usize = 512;
const SYMMETRIC_GUARD: u8 = 8;
const FREE_RANK_GUARD: u8 = 26;
const BALL_GUARD: usize = 5_000_000;

impl Group {
    pub fn build(def: &GroupDefinition) -> Result<Group> {
        match def {
            GroupDefinition::Cyclic { order } => {
                if *order == 0 {
                    return Err(Error::InvalidGroupSpec("cyclic group needs order >= 1".into()));
                }
                let (names, table) = named::cyclic(*order);
                let mut g = Group::from_table(names, table)?;
                if let Kind::Table { aliases, .. } = &mut g.kind {
                    aliases.insert("e".into(), 0);
                    if *order > 1 {
                        aliases.insert("a".into(), 1);
                    }
                }
                Ok(g)
            }
            GroupDefinition::Dihedral { k } => {
                if *k == 0 {
                    return Err(Error::InvalidGroupSpec("dihedral group needs k >= 1".into()));
                }
                let (names, table) = named::dihedral(*k);
                Group::from_table(names, table)
            }
            GroupDefinition::Quaternion => {
                let (names, table) = named::quaternion();
                Group::from_table(names, table)
            }
            GroupDefinition::Symmetric { n } => {
                if *n == 0 || *n > SYMMETRIC_GUARD {
                    return Err(Error::TooLarge(format!(
                        "symmetric group degree must be in 1..={SYMMETRIC_GUARD}"
                    )));
                }
                let elements = named::all_permutations(*n);
                Group::from_permutations(*n, elements)
            }
            GroupDefinition::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::InvalidGroupSpec("product needs at least one factor".into()));
                }
                let groups: Vec<Group> =
                    factors.iter().map(Group::build).collect::<Result<_>>()?;
                let mut order: u64 = 1;
                for g in &groups {
                    let o = g.order().ok_or_else(|| {
                        Error::InvalidGroupSpec("product factors must be finite".into())
                    })?;
                    order = order
                        .checked_mul(o)
                        .ok_or_else(|| Error::TooLarge("product order overflows".into()))?;
                }
                Ok(Group { kind: Kind::Product(groups), order: Some(order) })
            }
            GroupDefinition::Table { names, table } => {
                let n = table.len();
                let names = match names {
                    Some(ns) => ns.clone(),
                    None => (0..n).map(|i| i.to_string()).collect(),
                };
                Group::from_table(names, table.clone())
            }
            GroupDefinition::Permutation { degree, generators } => {
                for g in generators {
                    validate_permutation(g, *degree)?;
                }
                let identity: Vec<u8> = (0..*degree).collect();
                let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
                seen.insert(identity.clone());
                let mut queue: VecDeque<Vec<u8>> = VecDeque::new();
                queue.push_back(identity);
                while let Some(p) = queue.pop_front() {
                    for g in generators {
                        let q = compose_perms(g, &p);
                        if seen.insert(q.clone()) {
                            if seen.len() > PERM_CLOSURE_GUARD {
                                return Err(Error::TooLarge(format!(
                                    "permutation group exceeds {PERM_CLOSURE_GUARD} elements"
                                )));
                            }
                            queue.push_back(q);
                        }
                    }
                }
                Group::from_permutations(*degree, seen.into_iter().collect())
            }
            GroupDefinition::Free { rank } => {
                if *rank == 0 || *rank > FREE_RANK_GUARD {
                    return Err(Error::InvalidGroupSpec(format!(
                        "free rank must be in 1..={FREE_RANK_GUARD}"
                    )));
                }
                Ok(Group { kind: Kind::Free { rank: *rank as usize }, order: None })
            }
            GroupDefinition::LaurentFull => Ok(Group::matrix(QuotientMode::None)),
            GroupDefinition::LaurentModN0 => Ok(Group::matrix(QuotientMode::ModN0)),
            GroupDefinition::LaurentMod2ZN1 => Ok(Group::matrix(QuotientMode::Mod2ZN1)),
        }
    }

    fn matrix(mode: QuotientMode) -> Group {
        Group { kind: Kind::Matrix { mode }, order: None }
    }

    fn from_table(names: Vec<String>, table: Vec<Vec<u32>>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroupSpec("empty multiplication table".into()));
        }
        if n > TABLE_GUARD {
            return Err(Error::TooLarge(format!("table order exceeds {TABLE_GUARD}")));
        }
        if names.len() != n {
            return Err(Error::InvalidGroupSpec("name list length differs from table order".into()));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidGroupSpec("multiplication table is not square".into()));
            }
            if row.iter().any(|&x| x as usize >= n) {
                return Err(Error::InvalidGroupSpec("table entry out of range".into()));
            }
        }
        // Latin square: every row and column is a permutation
        let full: BTreeSet<u32> = (0..n as u32).collect();
        for i in 0..n {
            let row: BTreeSet<u32> = table[i].iter().copied().collect();
            let col: BTreeSet<u32> = (0..n).map(|j| table[j][i]).collect();
            if row != full || col != full {
                return Err(Error::InvalidGroupSpec(format!(
                    "table is not a Latin square (row/column {i})"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab_c = table[table[a][b] as usize][c];
                    let a_bc = table[a][table[b][c] as usize];
                    if ab_c != a_bc {
                        return Err(Error::InvalidGroupSpec(format!(
                            "table is not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n as u32)
            .find(|&e| (0..n).all(|j| table[e as usize][j] == j as u32))
            .ok_or_else(|| Error::InvalidGroupSpec("table has no identity".into()))?;
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n as u32)
                .find(|&b| table[a][b as usize] == identity)
                .ok_or_else(|| Error::InvalidGroupSpec(format!("element {a} has no inverse")))?;
            inverses[a] = inv;
        }
        let mut by_name = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || by_name.insert(name.clone(), i as u32).is_some() {
                return Err(Error::InvalidGroupSpec(format!("bad or duplicate name {name:?}")));
            }
        }
        Ok(Group {
            kind: Kind::Table { names, table, inverses, identity, by_name, aliases: HashMap::new() },
            order: Some(n as u64),
        })
    }

    fn from_permutations(degree: u8, elements: Vec<Vec<u8>>) -> Result<Group> {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let index: HashMap<Vec<u8>, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let order = elements.len() as u64;
        Ok(Group { kind: Kind::Perm { degree, elements, index }, order: Some(order) })
    }

    pub fn order(&self) -> Option<u64> {
        self.order
    }

    pub fn is_finite(&self) -> bool {
        self.order.is_some()
    }

    /// Quotient mode of a Laurent matrix view; None for every other kind.
    pub fn quotient_mode(&self) -> Option<QuotientMode> {
        match &self.kind {
            Kind::Matrix { mode } => Some(*mode),
            _ => None,
        }
    }

    pub fn free_rank(&self) -> Option<usize> {
        match &self.kind {
            Kind::Free { rank } => Some(*rank),
            _ => None,
        }
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            Kind::Table { identity, .. } => Element::Index(*identity),
            Kind::Perm { degree, .. } => Element::Perm((0..*degree).collect()),
            Kind::Product(fs) => Element::Tuple(fs.iter().map(|f| f.identity()).collect()),
            Kind::Free { .. } => Element::Word(Vec::new()),
            Kind::Matrix { .. } => Element::Matrix(Box::new(KElement::identity())),
        }
    }

    pub fn is_identity(&self, e: &Element) -> bool {
        *e == self.identity()
    }

    /// Product. Panics if either element does not belong to this view;
    /// external inputs must pass [`Group::validate_element`] first.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.kind, a, b) {
            (Kind::Table { table, .. }, Element::Index(i), Element::Index(j)) => {
                Element::Index(table[*i as usize][*j as usize])
            }
            (Kind::Perm { .. }, Element::Perm(p), Element::Perm(q)) => {
                Element::Perm(compose_perms(p, q))
            }
            (Kind::Product(fs), Element::Tuple(xs), Element::Tuple(ys))
                if fs.len() == xs.len() && fs.len() == ys.len() =>
            {
                Element::Tuple(
                    fs.iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(f, (x, y))| f.mul(x, y))
                        .collect(),
                )
            }
            (Kind::Free { .. }, Element::Word(u), Element::Word(v)) => {
                Element::Word(free::mul(u, v))
            }
            (Kind::Matrix { mode }, Element::Matrix(x), Element::Matrix(y)) => {
                Element::Matrix(Box::new(kgroup::mul(x, y, *mode)))
            }
            _ => panic!("element does not belong to this group view"),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        match (&self.kind, a) {
            (Kind::Table { inverses, .. }, Element::Index(i)) => {
                Element::Index(inverses[*i as usize])
            }
            (Kind::Perm { .. }, Element::Perm(p)) => {
                let mut q = vec![0u8; p.len()];
                for (x, &px) in p.iter().enumerate() {
                    q[px as usize] = x as u8;
                }
                Element::Perm(q)
            }
            (Kind::Product(fs), Element::Tuple(xs)) if fs.len() == xs.len() => {
                Element::Tuple(fs.iter().zip(xs).map(|(f, x)| f.inv(x)).collect())
            }
            (Kind::Free { .. }, Element::Word(u)) => Element::Word(free::inv(u)),
            (Kind::Matrix { mode }, Element::Matrix(x)) => {
                Element::Matrix(Box::new(kgroup::inv(x, *mode)))
            }
            _ => panic!("element does not belong to this group view"),
        }
    }

    /// Conjugate g·x·g⁻¹.
    pub fn conj(&self, g: &Element, x: &Element) -> Element {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    /// Full element enumeration in canonical order (finite views only).
    pub fn elements(&self) -> Result<Vec<Element>> {
        match &self.kind {
            Kind::Table { table, .. } => {
                Ok((0..table.len() as u32).map(Element::Index).collect())
            }
            Kind::Perm { elements, .. } => {
                Ok(elements.iter().cloned().map(Element::Perm).collect())
            }
            Kind::Product(fs) => {
                let mut acc: Vec<Vec<Element>> = vec![Vec::new()];
                for f in fs {
                    let els = f.elements()?;
                    let mut next = Vec::with_capacity(acc.len() * els.len());
                    for prefix in &acc {
                        for e in &els {
                            let mut p = prefix.clone();
                            p.push(e.clone());
                            next.push(p);
                        }
                    }
                    acc = next;
                }
                Ok(acc.into_iter().map(Element::Tuple).collect())
            }
            Kind::Free { .. } | Kind::Matrix { .. } => Err(Error::UnsupportedOnInfinite(
                "element enumeration".into(),
            )),
        }
    }

    /// Position of an element in the canonical enumeration (finite views).
    pub fn element_index(&self, e: &Element) -> Option<usize> {
        match (&self.kind, e) {
            (Kind::Table { table, .. }, Element::Index(i)) => {
                ((*i as usize) < table.len()).then_some(*i as usize)
            }
            (Kind::Perm { index, .. }, Element::Perm(p)) => index.get(p).map(|&i| i as usize),
            (Kind::Product(fs), Element::Tuple(xs)) if fs.len() == xs.len() => {
                let mut idx = 0usize;
                for (f, x) in fs.iter().zip(xs) {
                    let o = f.order()? as usize;
                    idx = idx * o + f.element_index(x)?;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    /// Checks that an element is a well-formed canonical member of this view.
    pub fn validate_element(&self, e: &Element) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidGroupSpec(msg.into()));
        match (&self.kind, e) {
            (Kind::Table { table, .. }, Element::Index(i)) => {
                if (*i as usize) < table.len() {
                    Ok(())
                } else {
                    bad("table index out of range")
                }
            }
            (Kind::Perm { index, .. }, Element::Perm(p)) => {
                if index.contains_key(p) {
                    Ok(())
                } else {
                    bad("permutation is not in this group")
                }
            }
            (Kind::Product(fs), Element::Tuple(xs)) => {
                if fs.len() != xs.len() {
                    return bad("tuple arity differs from product arity");
                }
                for (f, x) in fs.iter().zip(xs) {
                    f.validate_element(x)?;
                }
                Ok(())
            }
            (Kind::Free { rank }, Element::Word(w)) => {
                if !free::is_reduced(w) {
                    return bad("word is not reduced");
                }
                if w.iter().any(|l| (l.unsigned_abs() as usize) > *rank) {
                    return bad("word uses a letter outside the rank");
                }
                Ok(())
            }
            (Kind::Matrix { mode }, Element::Matrix(x)) => {
                if kgroup::reduce(x, *mode) == **x {
                    Ok(())
                } else {
                    bad("matrix element is not in reduced normal form")
                }
            }
            _ => bad("element variant does not match the group kind"),
        }
    }

    pub fn name_of(&self, e: &Element) -> String {
        match (&self.kind, e) {
            (Kind::Table { names, .. }, Element::Index(i)) => names[*i as usize].clone(),
            (Kind::Perm { degree, .. }, Element::Perm(p)) => {
                if *degree <= 10 {
                    p.iter().map(|x| char::from(b'0' + x)).collect()
                } else {
                    format!("[{}]", p.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
                }
            }
            (Kind::Product(fs), Element::Tuple(xs)) => {
                let parts: Vec<String> =
                    fs.iter().zip(xs).map(|(f, x)| f.name_of(x)).collect();
                format!("({})", parts.join(","))
            }
            (Kind::Free { .. }, Element::Word(w)) => free::name(w),
            (Kind::Matrix { .. }, Element::Matrix(x)) => x.to_string(),
            _ => panic!("element does not belong to this group view"),
        }
    }

    pub fn element_by_name(&self, name: &str) -> Result<Element> {
        let name = name.trim();
        let unknown = || Error::InvalidGroupSpec(format!("unknown element name {name:?}"));
        match &self.kind {
            Kind::Table { by_name, aliases, .. } => by_name
                .get(name)
                .or_else(|| aliases.get(name))
                .map(|&i| Element::Index(i))
                .ok_or_else(unknown),
            Kind::Perm { degree, index, .. } => {
                if name == "e" {
                    return Ok(self.identity());
                }
                let images: Vec<u8> = if name.starts_with('[') && name.ends_with(']') {
                    name[1..name.len() - 1]
                        .split(',')
                        .map(|t| t.trim().parse::<u8>().map_err(|_| unknown()))
                        .collect::<Result<_>>()?
                } else if name.chars().all(|c| c.is_ascii_digit()) && *degree <= 10 {
                    name.chars().map(|c| c as u8 - b'0').collect()
                } else {
                    return Err(unknown());
                };
                if index.contains_key(&images) {
                    Ok(Element::Perm(images))
                } else {
                    Err(Error::InvalidGroupSpec(format!(
                        "permutation {name:?} is not in this group"
                    )))
                }
            }
            Kind::Product(fs) => {
                if name == "e" {
                    return Ok(self.identity());
                }
                let inner = name
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(unknown)?;
                let parts = split_top_level(inner);
                if parts.len() != fs.len() {
                    return Err(unknown());
                }
                Ok(Element::Tuple(
                    fs.iter()
                        .zip(parts)
                        .map(|(f, p)| f.element_by_name(p))
                        .collect::<Result<_>>()?,
                ))
            }
            Kind::Free { rank } => Ok(Element::Word(free::parse(name, *rank)?)),
            Kind::Matrix { mode } => {
                let gens = [KElement::k1(), KElement::k2(), KElement::k3()];
                let mut acc = KElement::identity();
                if name == "e" || name == "1" {
                    return Ok(Element::Matrix(Box::new(kgroup::reduce(&acc, *mode))));
                }
                for token in name.split([' ', '*']).filter(|t| !t.is_empty()) {
                    let (base, exp) = match token.split_once('^') {
                        Some((b, e)) => (
                            b,
                            e.parse::<i64>().map_err(|_| {
                                Error::InvalidGroupSpec(format!("bad exponent in {token:?}"))
                            })?,
                        ),
                        None => (token, 1),
                    };
                    let g = match base {
                        "k1" => &gens[0],
                        "k2" => &gens[1],
                        "k3" => &gens[2],
                        "e" | "1" => continue,
                        _ => return Err(unknown()),
                    };
                    let step =
                        if exp >= 0 { g.clone() } else { kgroup::inv(g, QuotientMode::None) };
                    for _ in 0..exp.unsigned_abs() {
                        acc = kgroup::mul(&acc, &step, QuotientMode::None);
                    }
                }
                Ok(Element::Matrix(Box::new(kgroup::reduce(&acc, *mode))))
            }
        }
    }

    /// Canonical generators for views that have them (free: a, b, ...;
    /// matrix: k1, k2, k3). Finite views have no distinguished tuple.
    pub fn default_generators(&self) -> Option<Vec<Element>> {
        match &self.kind {
            Kind::Free { rank } => {
                Some((1..=*rank as i8).map(|l| Element::Word(vec![l])).collect())
            }
            Kind::Matrix { mode } => Some(
                [KElement::k1(), KElement::k2(), KElement::k3()]
                    .into_iter()
                    .map(|k| Element::Matrix(Box::new(kgroup::reduce(&k, *mode))))
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Subgroup generated by the seed elements (finite views only).
    pub fn closure(&self, seed: &[Element]) -> Result<BTreeSet<Element>> {
        if !self.is_finite() {
            return Err(Error::UnsupportedOnInfinite("subgroup closure".into()));
        }
        for e in seed {
            self.validate_element(e)?;
        }
        let mut set: BTreeSet<Element> = BTreeSet::new();
        set.insert(self.identity());
        set.extend(seed.iter().cloned());
        let mut frontier: Vec<Element> = set.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in seed {
                    let y = self.mul(x, g);
                    if set.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(set)
    }
}

fn validate_permutation(p: &[u8], degree: u8) -> Result<()> {
    if p.len() != degree as usize {
        return Err(Error::InvalidGroupSpec(format!(
            "permutation length {} differs from degree {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree as usize];
    for &x in p {
        if x as usize >= degree as usize || seen[x as usize] {
            return Err(Error::InvalidGroupSpec("image vector is not a permutation".into()));
        }
        seen[x as usize] = true;
    }
    Ok(())
}

/// (p·q)(x) = p(q(x))
fn compose_perms(p: &[u8], q: &[u8]) -> Vec<u8> {
    q.iter().map(|&x| p[x as usize]).collect()
}

/// Splits "a,(b,c),d" into ["a", "(b,c)", "d"].
fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(s[start..].trim());
    parts
}

/// An ordered tuple of distinct elements that generates the group.
/// Generation is verified by closure on finite views; infinite views accept
/// the tuple as declared and mark it unverified.
#[derive(Clone, Debug)]
pub struct GeneratingTuple {
    entries: Vec<Element>,
    verified: bool,
}

impl GeneratingTuple {
    pub fn new(group: &Group, entries: Vec<Element>) -> Result<Self> {
        Self::with_strictness(group, entries, false)
    }

    /// Additionally rejects the identity as an entry.
    pub fn strict(group: &Group, entries: Vec<Element>) -> Result<Self> {
        Self::with_strictness(group, entries, true)
    }

    fn with_strictness(group: &Group, entries: Vec<Element>, strict: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::NotGenerating("empty tuple".into()));
        }
        for e in &entries {
            group.validate_element(e)?;
        }
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].contains(e) {
                return Err(Error::NotGenerating(format!(
                    "duplicate entry {:?}",
                    group.name_of(e)
                )));
            }
        }
        if strict && entries.iter().any(|e| group.is_identity(e)) {
            return Err(Error::NotGenerating("identity entry rejected in strict mode".into()));
        }
        if group.is_finite() {
            let order = group.order().unwrap_or(0);
            let closure = group.closure(&entries)?;
            if closure.len() as u64 != order {
                return Err(Error::NotGenerating(format!(
                    "tuple generates a subgroup of order {} < {order}",
                    closure.len()
                )));
            }
            Ok(GeneratingTuple { entries, verified: true })
        } else {
            Ok(GeneratingTuple { entries, verified: false })
        }
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// False when generation was declared rather than checked (infinite views).
    pub fn is_verified(&self) -> bool {
        self.verified
    }
}

/// A word over a generating tuple: generator indices (1-based) with signs.
/// The empty word is allowed and denotes the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepresentativePair {
    j: Vec<usize>,
    rho: Vec<i8>,
}

impl RepresentativePair {
    pub fn new(j: Vec<usize>, rho: Vec<i8>) -> Result<Self> {
        if j.len() != rho.len() {
            return Err(Error::BadRepresentativePair(format!(
                "index sequence has length {} but sign sequence has length {}",
                j.len(),
                rho.len()
            )));
        }
        if j.iter().any(|&i| i == 0) {
            return Err(Error::BadRepresentativePair("indices are 1-based".into()));
        }
        if rho.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::BadRepresentativePair("signs must be +1 or -1".into()));
        }
        Ok(RepresentativePair { j, rho })
    }

    pub fn identity() -> Self {
        RepresentativePair { j: Vec::new(), rho: Vec::new() }
    }

    pub fn from_letters<I: IntoIterator<Item = (usize, i8)>>(letters: I) -> Result<Self> {
        let (j, rho): (Vec<usize>, Vec<i8>) = letters.into_iter().unzip();
        Self::new(j, rho)
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.j.iter().copied().zip(self.rho.iter().copied())
    }

    pub fn indices(&self) -> &[usize] {
        &self.j
    }

    pub fn signs(&self) -> &[i8] {
        &self.rho
    }
}

/// Evaluates ∏ gens[j_i]^{rho_i} left to right.
pub fn eval_word(group: &Group, gens: &[Element], word: &RepresentativePair) -> Result<Element> {
    let mut acc = group.identity();
    for (j, rho) in word.letters() {
        if j > gens.len() {
            return Err(Error::BadRepresentativePair(format!(
                "index {j} exceeds tuple length {}",
                gens.len()
            )));
        }
        let g = &gens[j - 1];
        let step = if rho > 0 { g.clone() } else { group.inv(g) };
        acc = group.mul(&acc, &step);
    }
    Ok(acc)
}

/// One element of a word ball, with its distance from the identity and one
/// shortest witness word.
pub struct BallItem {
    pub element: Element,
    pub distance: u32,
    pub witness: RepresentativePair,
}

/// Word ball of a tuple: all products of at most `radius` signed generators,
/// enumerated breadth-first with ties broken by generator index then sign.
pub struct Ball {
    radius: u32,
    items: Vec<BallItem>,
    index: HashMap<Element, usize>,
    cumulative: Vec<usize>,
}

impl Ball {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[BallItem] {
        &self.items
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.items.iter().map(|it| &it.element)
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    pub fn distance_of(&self, e: &Element) -> Option<u32> {
        self.index.get(e).map(|&i| self.items[i].distance)
    }

    /// Number of elements at distance <= r.
    pub fn count_within(&self, r: u32) -> usize {
        self.cumulative[r.min(self.radius) as usize]
    }

    /// True when the last growth step added nothing: the ball already covers
    /// the whole subgroup generated by the tuple.
    pub fn saturated(&self) -> bool {
        let n = self.cumulative.len();
        n >= 2 && self.cumulative[n - 1] == self.cumulative[n - 2]
    }
}

pub fn ball(group: &Group, gens: &[Element], radius: u32) -> Result<Ball> {
    for g in gens {
        group.validate_element(g)?;
    }
    let signed: Vec<(usize, i8, Element)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [(i + 1, 1i8, g.clone()), (i + 1, -1i8, group.inv(g))]
        })
        .collect();
    let mut items: Vec<BallItem> = vec![BallItem {
        element: group.identity(),
        distance: 0,
        witness: RepresentativePair::identity(),
    }];
    let mut index: HashMap<Element, usize> = HashMap::new();
    index.insert(group.identity(), 0);
    let mut cumulative = vec![1usize];
    let mut level_start = 0usize;
    for _r in 1..=radius {
        let level_end = items.len();
        for pos in level_start..level_end {
            let (base, base_witness) =
                (items[pos].element.clone(), items[pos].witness.clone());
            for (j, s, g) in &signed {
                let y = group.mul(g, &base);
                if !index.contains_key(&y) {
                    if items.len() >= BALL_GUARD {
                        return Err(Error::TooLarge(format!(
                            "ball exceeds {BALL_GUARD} elements"
                        )));
                    }
                    let witness = RepresentativePair::from_letters(
                        std::iter::once((*j, *s)).chain(base_witness.letters()),
                    )
                    .expect("witness letters are well-formed");
                    index.insert(y.clone(), items.len());
                    items.push(BallItem { element: y, distance: items[pos].distance + 1, witness });
                }
            }
        }
        cumulative.push(items.len());
        level_start = level_end;
    }
    Ok(Ball { radius, items, index, cumulative })
}
