//! Finite partitions of a group (or of a ball inside one), the atom
//! construction for generated sigma algebras, common refinements, the
//! similarity relation between refinement pairs, and pullbacks along
//! quotient maps.
//!
//! Block order is semantically meaningful: block j carries color j (1-based).
//! Partitions over finite scopes are explicit block lists; partitions over
//! infinite groups are membership oracles (first-letter blocks of a free
//! group, finite blocks plus a complement, or pullbacks of either along a
//! quotient map), whose disjointness and coverage are checked only on the
//! working scope.

use crate::error::{Error, Result};
use crate::group::{Element, GeneratingTuple, Group};
use crate::kgroup::{self, QuotientMode};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A quotient map q: source → target, either an explicit image table between
/// finite views or the central reduction between Laurent matrix views.
#[derive(Clone)]
pub enum QuotientMap {
    Finite(FiniteQuotient),
    /// Reduction from the matrix view with `source` mode onto the one with
    /// `target` mode; valid only when the target collapses at least as much.
    LaurentReduction { source: QuotientMode, target: QuotientMode },
}

/// A surjective homomorphism between finite views, stored as the image of
/// every source element in enumeration order.
#[derive(Clone)]
pub struct FiniteQuotient {
    source: Group,
    target: Group,
    images: Vec<Element>,
}

impl FiniteQuotient {
    pub fn new(source: Group, target: Group, images: Vec<Element>) -> Result<Self> {
        let src_elements = source
            .elements()
            .map_err(|_| Error::NotEpimorphism("source must be finite".into()))?;
        let tgt_elements = target
            .elements()
            .map_err(|_| Error::NotEpimorphism("target must be finite".into()))?;
        if images.len() != src_elements.len() {
            return Err(Error::NotEpimorphism(format!(
                "image table has {} entries for a source of order {}",
                images.len(),
                src_elements.len()
            )));
        }
        for im in &images {
            target
                .validate_element(im)
                .map_err(|e| Error::NotEpimorphism(format!("bad image element: {e}")))?;
        }
        let q = |x: &Element| -> &Element { &images[source.element_index(x).unwrap()] };
        for x in &src_elements {
            for y in &src_elements {
                let lhs = q(&source.mul(x, y)).clone();
                let rhs = target.mul(q(x), q(y));
                if lhs != rhs {
                    return Err(Error::NotEpimorphism(format!(
                        "map is not a homomorphism at ({}, {})",
                        source.name_of(x),
                        source.name_of(y)
                    )));
                }
            }
        }
        let image_set: BTreeSet<&Element> = images.iter().collect();
        if image_set.len() != tgt_elements.len() {
            return Err(Error::NotEpimorphism(format!(
                "map reaches {} of {} target elements",
                image_set.len(),
                tgt_elements.len()
            )));
        }
        Ok(FiniteQuotient { source, target, images })
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        let idx = self
            .source
            .element_index(x)
            .ok_or_else(|| Error::ScopeViolation("element outside the source group".into()))?;
        Ok(self.images[idx].clone())
    }

    /// Images of a tuple of source elements.
    pub fn apply_tuple(&self, xs: &[Element]) -> Result<Vec<Element>> {
        xs.iter().map(|x| self.apply(x)).collect()
    }
}

impl QuotientMap {
    pub fn laurent(source: QuotientMode, target: QuotientMode) -> Result<Self> {
        // the kernel must grow: identity maps and K→G, K→H, H→G are the
        // collapses compatible with the central subgroup inclusions
        let ok = source == target
            || source == QuotientMode::None
            || (source == QuotientMode::Mod2ZN1 && target == QuotientMode::ModN0);
        if ok {
            Ok(QuotientMap::LaurentReduction { source, target })
        } else {
            Err(Error::NotEpimorphism(
                "no reduction collapses the source view onto the target view".into(),
            ))
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        match self {
            QuotientMap::Finite(q) => q.apply(x),
            QuotientMap::LaurentReduction { target, .. } => match x {
                Element::Matrix(k) => Ok(Element::Matrix(Box::new(kgroup::reduce(k, *target)))),
                _ => Err(Error::ScopeViolation("element outside the source group".into())),
            },
        }
    }
}

#[derive(Clone)]
enum Repr {
    /// Finite scope: blocks in color order, each sorted; constant-time color lookup.
    Explicit { blocks: Vec<Vec<Element>>, color: HashMap<Element, u8> },
    /// Free group of the given rank: {identity}, then one block per signed
    /// letter (a, a⁻¹, b, b⁻¹, …) keyed by the first letter of the word.
    FirstLetter { rank: usize },
    /// Listed finite blocks plus an implicit complement block (last color);
    /// usable on infinite views.
    Cofinite { listed: Vec<Vec<Element>>, color: HashMap<Element, u8> },
    /// Membership via a quotient map into a partitioned target.
    Pullback { q: Box<QuotientMap>, target: Box<Partition> },
}

/// An ordered partition: block j is the set of elements with color j.
#[derive(Clone)]
pub struct Partition {
    repr: Repr,
    m: usize,
}

fn sorted_unique(block: &[Element]) -> Vec<Element> {
    let mut v = block.to_vec();
    v.sort();
    v.dedup();
    v
}

impl Partition {
    /// Explicit partition with user-supplied block order. Blocks must be
    /// nonempty, pairwise disjoint, and cover the universe exactly.
    pub fn explicit(universe: &[Element], blocks: Vec<Vec<Element>>) -> Result<Partition> {
        if blocks.is_empty() {
            return Err(Error::ShapeMismatch("a partition needs at least one block".into()));
        }
        let scope: BTreeSet<&Element> = universe.iter().collect();
        let mut color: HashMap<Element, u8> = HashMap::new();
        let mut stored = Vec::with_capacity(blocks.len());
        if blocks.len() > u8::MAX as usize {
            return Err(Error::TooLarge("more than 255 blocks".into()));
        }
        for (j, block) in blocks.iter().enumerate() {
            let block = sorted_unique(block);
            if block.len() != blocks[j].len() {
                return Err(Error::ShapeMismatch(format!("block {} repeats an element", j + 1)));
            }
            if block.is_empty() {
                return Err(Error::ShapeMismatch(format!("block {} is empty", j + 1)));
            }
            for e in &block {
                if !scope.contains(e) {
                    return Err(Error::ScopeViolation(
                        "block element outside the universe".into(),
                    ));
                }
                if color.insert(e.clone(), (j + 1) as u8).is_some() {
                    return Err(Error::ShapeMismatch(
                        "blocks overlap: an element has two colors".into(),
                    ));
                }
            }
            stored.push(block);
        }
        if color.len() != scope.len() {
            return Err(Error::ShapeMismatch("blocks do not cover the universe".into()));
        }
        let m = stored.len();
        Ok(Partition { repr: Repr::Explicit { blocks: stored, color }, m })
    }

    /// One singleton block per element, in universe order.
    pub fn singletons(universe: &[Element]) -> Result<Partition> {
        Self::explicit(universe, universe.iter().map(|e| vec![e.clone()]).collect())
    }

    /// The one-block partition of the universe.
    pub fn one_block(universe: &[Element]) -> Result<Partition> {
        Self::explicit(universe, vec![universe.to_vec()])
    }

    /// First-letter partition of a free group of the given rank: m = 2·rank+1.
    pub fn first_letter(rank: usize) -> Partition {
        Partition { repr: Repr::FirstLetter { rank }, m: 2 * rank + 1 }
    }

    /// Listed blocks plus an implicit complement block (the last color).
    /// Valid on any view; the complement's nonemptiness is only observable
    /// on a concrete scope.
    pub fn cofinite(listed: Vec<Vec<Element>>) -> Result<Partition> {
        if listed.len() + 1 > u8::MAX as usize {
            return Err(Error::TooLarge("more than 255 blocks".into()));
        }
        let mut color = HashMap::new();
        let mut stored = Vec::with_capacity(listed.len());
        for (j, block) in listed.iter().enumerate() {
            let block = sorted_unique(block);
            if block.is_empty() {
                return Err(Error::ShapeMismatch(format!("block {} is empty", j + 1)));
            }
            for e in &block {
                if color.insert(e.clone(), (j + 1) as u8).is_some() {
                    return Err(Error::ShapeMismatch(
                        "blocks overlap: an element has two colors".into(),
                    ));
                }
            }
            stored.push(block);
        }
        let m = stored.len() + 1;
        Ok(Partition { repr: Repr::Cofinite { listed: stored, color }, m })
    }

    /// Number of blocks (colors).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Explicit block lists, when this partition has them.
    pub fn blocks(&self) -> Option<&[Vec<Element>]> {
        match &self.repr {
            Repr::Explicit { blocks, .. } => Some(blocks),
            _ => None,
        }
    }

    /// The listed (non-complement) blocks of a cofinite partition.
    pub fn cofinite_blocks(&self) -> Option<&[Vec<Element>]> {
        match &self.repr {
            Repr::Cofinite { listed, .. } => Some(listed),
            _ => None,
        }
    }

    /// 1-based color of an element.
    pub fn color_of(&self, x: &Element) -> Result<u8> {
        match &self.repr {
            Repr::Explicit { color, .. } => color
                .get(x)
                .copied()
                .ok_or_else(|| Error::ScopeViolation("element outside the partition scope".into())),
            Repr::FirstLetter { rank } => match x {
                Element::Word(w) => match w.first() {
                    None => Ok(1),
                    Some(&l) => {
                        if l.unsigned_abs() as usize > *rank {
                            return Err(Error::ScopeViolation(
                                "word uses a letter outside the rank".into(),
                            ));
                        }
                        let base = 2 * (l.unsigned_abs() as usize - 1);
                        Ok((base + if l > 0 { 2 } else { 3 }) as u8)
                    }
                },
                _ => Err(Error::ScopeViolation("first-letter coloring needs a word".into())),
            },
            Repr::Cofinite { color, .. } => {
                Ok(color.get(x).copied().unwrap_or(self.m as u8))
            }
            Repr::Pullback { q, target } => target.color_of(&q.apply(x)?),
        }
    }

    /// Colors of a whole slice, in order.
    pub fn colors_on(&self, universe: &[Element]) -> Result<Vec<u8>> {
        universe.iter().map(|e| self.color_of(e)).collect()
    }

    /// Materializes the partition as explicit blocks over a concrete scope,
    /// dropping colors that do not occur there. Returns the blocks in color
    /// order together with the original colors they carry.
    pub fn observe(&self, scope: &[Element]) -> Result<(Vec<Vec<Element>>, Vec<u8>)> {
        let mut by_color: BTreeMap<u8, Vec<Element>> = BTreeMap::new();
        for e in scope {
            by_color.entry(self.color_of(e)?).or_default().push(e.clone());
        }
        let mut blocks = Vec::new();
        let mut colors = Vec::new();
        for (c, mut b) in by_color {
            b.sort();
            blocks.push(b);
            colors.push(c);
        }
        Ok((blocks, colors))
    }
}

/// A finitely generated sigma algebra over a finite scope: the generator
/// sets together with their atom partition. Every generator set is a union
/// of atoms.
pub struct SigmaAlgebra {
    pub generators: Vec<Vec<Element>>,
    pub atoms: Partition,
}

impl SigmaAlgebra {
    pub fn generated(universe: &[Element], sets: &[Vec<Element>]) -> Result<SigmaAlgebra> {
        Ok(SigmaAlgebra {
            generators: sets.iter().map(|s| sorted_unique(s)).collect(),
            atoms: atoms(universe, sets)?,
        })
    }
}

/// Atom partition of the sigma algebra generated by `sets` over `universe`:
/// elements are grouped by their membership signature, empty classes are
/// omitted, and blocks are ordered by descending lexicographic signature, so
/// the all-zero signature (the complement of the union) comes last.
pub fn atoms(universe: &[Element], sets: &[Vec<Element>]) -> Result<Partition> {
    let scope: BTreeSet<&Element> = universe.iter().collect();
    let as_sets: Vec<BTreeSet<&Element>> = sets
        .iter()
        .map(|s| {
            let set: BTreeSet<&Element> = s.iter().collect();
            for e in &set {
                if !scope.contains(*e) {
                    return Err(Error::ScopeViolation(
                        "generator set outside the universe".into(),
                    ));
                }
            }
            Ok(set)
        })
        .collect::<Result<_>>()?;
    let mut classes: BTreeMap<Reverse<Vec<bool>>, Vec<Element>> = BTreeMap::new();
    for e in universe {
        let sig: Vec<bool> = as_sets.iter().map(|s| s.contains(e)).collect();
        classes.entry(Reverse(sig)).or_default().push(e.clone());
    }
    Partition::explicit(universe, classes.into_values().collect())
}

/// Common refinement of two partitions over the same scope: the atoms of the
/// sigma algebra generated by all blocks of both. Block order follows the
/// signature order (P-color ascending, then Q-color ascending).
pub fn meet(universe: &[Element], p: &Partition, q: &Partition) -> Result<Partition> {
    let mut classes: BTreeMap<(u8, u8), Vec<Element>> = BTreeMap::new();
    for e in universe {
        classes.entry((p.color_of(e)?, q.color_of(e)?)).or_default().push(e.clone());
    }
    Partition::explicit(universe, classes.into_values().collect())
}

/// True iff every block of `fine` lies inside a single block of `coarse`.
pub fn is_refinement(universe: &[Element], fine: &Partition, coarse: &Partition) -> Result<bool> {
    let mut seen: HashMap<u8, u8> = HashMap::new();
    for e in universe {
        let f = fine.color_of(e)?;
        let c = coarse.color_of(e)?;
        if *seen.entry(f).or_insert(c) != c {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Incidence data of two refinement pairs colored alike: for each fine color
/// j, the set of coarse colors its block meets, on each side.
pub struct SimilarityWitness {
    pub matches: bool,
    pub incidence_a: Vec<BTreeSet<u8>>,
    pub incidence_b: Vec<BTreeSet<u8>>,
}

fn incidence(universe: &[Element], fine: &Partition, coarse: &Partition) -> Result<Vec<BTreeSet<u8>>> {
    let mut inc: Vec<BTreeSet<u8>> = vec![BTreeSet::new(); fine.m()];
    for e in universe {
        let f = fine.color_of(e)? as usize;
        inc[f - 1].insert(coarse.color_of(e)?);
    }
    Ok(inc)
}

/// Compares two (fine, coarse) refinement pairs over possibly different
/// groups: they are similar when the incidence sets agree color-by-color.
pub fn similar(
    universe_a: &[Element],
    fine_a: &Partition,
    coarse_a: &Partition,
    universe_b: &[Element],
    fine_b: &Partition,
    coarse_b: &Partition,
) -> Result<SimilarityWitness> {
    if fine_a.m() != fine_b.m() || coarse_a.m() != coarse_b.m() {
        return Err(Error::ShapeMismatch(format!(
            "block counts differ: fine {} vs {}, coarse {} vs {}",
            fine_a.m(),
            fine_b.m(),
            coarse_a.m(),
            coarse_b.m()
        )));
    }
    if !is_refinement(universe_a, fine_a, coarse_a)? {
        return Err(Error::ShapeMismatch("first pair is not a refinement pair".into()));
    }
    if !is_refinement(universe_b, fine_b, coarse_b)? {
        return Err(Error::ShapeMismatch("second pair is not a refinement pair".into()));
    }
    let incidence_a = incidence(universe_a, fine_a, coarse_a)?;
    let incidence_b = incidence(universe_b, fine_b, coarse_b)?;
    let matches = incidence_a == incidence_b;
    Ok(SimilarityWitness { matches, incidence_a, incidence_b })
}

/// Pullback of a partition of the target along a quotient map: block j of
/// the result is the preimage of block j. Finite maps materialize explicit
/// blocks; matrix reductions stay lazy membership oracles.
pub fn pullback_partition(q: &QuotientMap, f: &Partition) -> Result<Partition> {
    match q {
        QuotientMap::Finite(fq) => {
            let src = fq.source().elements()?;
            let mut blocks: Vec<Vec<Element>> = vec![Vec::new(); f.m()];
            for x in &src {
                let c = f.color_of(&fq.apply(x)?)?;
                blocks[c as usize - 1].push(x.clone());
            }
            Partition::explicit(&src, blocks)
        }
        QuotientMap::LaurentReduction { .. } => Ok(Partition {
            m: f.m(),
            repr: Repr::Pullback { q: Box::new(q.clone()), target: Box::new(f.clone()) },
        }),
    }
}

/// Extends a tuple whose image generates G/N to a generating tuple of G by
/// appending a greedily-minimal generating tuple of the normal subgroup N.
pub fn n_extension(
    group: &Group,
    n_set: &BTreeSet<Element>,
    g_mod: &[Element],
) -> Result<GeneratingTuple> {
    if !group.is_finite() {
        return Err(Error::UnsupportedOnInfinite("subgroup extension".into()));
    }
    for e in n_set {
        group.validate_element(e)?;
    }
    if !n_set.contains(&group.identity()) {
        return Err(Error::NotNormal("the set is not a subgroup (missing identity)".into()));
    }
    for x in n_set {
        if !n_set.contains(&group.inv(x)) {
            return Err(Error::NotNormal("the set is not a subgroup (not inverse-closed)".into()));
        }
        for y in n_set {
            if !n_set.contains(&group.mul(x, y)) {
                return Err(Error::NotNormal(
                    "the set is not a subgroup (not product-closed)".into(),
                ));
            }
        }
    }
    for g in group.elements()? {
        for x in n_set {
            if !n_set.contains(&group.conj(&g, x)) {
                return Err(Error::NotNormal(format!(
                    "conjugation by {} leaves the subgroup",
                    group.name_of(&g)
                )));
            }
        }
    }
    let order = group.order().unwrap();
    let mut seeds: Vec<Element> = g_mod.to_vec();
    seeds.extend(n_set.iter().cloned());
    if group.closure(&seeds)?.len() as u64 != order {
        return Err(Error::NotGenerating(
            "the tuple does not generate the quotient by the subgroup".into(),
        ));
    }
    // greedy generators for N, seeded with whatever of the tuple already lies in N
    let inside: Vec<Element> =
        g_mod.iter().filter(|e| n_set.contains(*e)).cloned().collect();
    let mut chosen: Vec<Element> = Vec::new();
    let mut span = group.closure(&inside)?;
    for x in n_set {
        if span.len() == n_set.len() {
            break;
        }
        if !span.contains(x) {
            chosen.push(x.clone());
            let mut seeds = inside.clone();
            seeds.extend(chosen.iter().cloned());
            span = group.closure(&seeds)?;
        }
    }
    debug_assert_eq!(span.len(), n_set.len());
    let mut entries = g_mod.to_vec();
    entries.extend(chosen);
    GeneratingTuple::new(group, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDefinition;

    fn z4() -> (Group, Vec<Element>) {
        let g = Group::build(&GroupDefinition::Cyclic { order: 4 }).unwrap();
        let els = g.elements().unwrap();
        (g, els)
    }

    fn by_names(g: &Group, names: &[&str]) -> Vec<Element> {
        names.iter().map(|n| g.element_by_name(n).unwrap()).collect()
    }

    #[test]
    fn atoms_of_set_and_complement() {
        let (g, els) = z4();
        let p = atoms(&els, &[by_names(&g, &["0", "2"])]).unwrap();
        assert_eq!(
            p.blocks().unwrap(),
            &[by_names(&g, &["0", "2"]), by_names(&g, &["1", "3"])]
        );
    }

    #[test]
    fn atoms_signature_classes_and_order() {
        let (g, els) = z4();
        let p = atoms(&els, &[by_names(&g, &["0", "1"]), by_names(&g, &["1", "2"])]).unwrap();
        // signatures: 1↦(1,1), 0↦(1,0), 2↦(0,1), 3↦(0,0); descending lex
        assert_eq!(
            p.blocks().unwrap(),
            &[
                by_names(&g, &["1"]),
                by_names(&g, &["0"]),
                by_names(&g, &["2"]),
                by_names(&g, &["3"]),
            ]
        );
    }

    #[test]
    fn atoms_of_nothing_is_one_block() {
        let (_, els) = z4();
        let p = atoms(&els, &[]).unwrap();
        assert_eq!(p.m(), 1);
        assert_eq!(p.blocks().unwrap()[0], els);
    }

    #[test]
    fn atoms_rejects_sets_outside_the_universe() {
        let (g, els) = z4();
        let outside = vec![Element::Index(7)];
        assert!(matches!(atoms(&els, &[outside]), Err(Error::ScopeViolation(_))));
        let partial: Vec<Element> = els[..2].to_vec();
        assert!(matches!(
            atoms(&partial, &[by_names(&g, &["0", "2"])]),
            Err(Error::ScopeViolation(_))
        ));
    }

    #[test]
    fn explicit_partition_validation() {
        let (g, els) = z4();
        let empty_block = Partition::explicit(&els, vec![els.clone(), vec![]]);
        assert!(matches!(empty_block, Err(Error::ShapeMismatch(_))));
        let overlap = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "1"]), by_names(&g, &["1", "2", "3"])],
        );
        assert!(matches!(overlap, Err(Error::ShapeMismatch(_))));
        let gap = Partition::explicit(&els, vec![by_names(&g, &["0", "1"])]);
        assert!(matches!(gap, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn meet_examples() {
        let (g, els) = z4();
        let p = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "1"]), by_names(&g, &["2", "3"])],
        )
        .unwrap();
        let q = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "2"]), by_names(&g, &["1", "3"])],
        )
        .unwrap();
        let r = meet(&els, &p, &q).unwrap();
        assert_eq!(r.m(), 4);
        assert!(r.blocks().unwrap().iter().all(|b| b.len() == 1));
        // meet with the one-block partition returns P's blocks
        let one = Partition::one_block(&els).unwrap();
        let back = meet(&els, &p, &one).unwrap();
        assert_eq!(back.blocks().unwrap(), p.blocks().unwrap());
        // idempotence
        let pp = meet(&els, &p, &p).unwrap();
        assert_eq!(pp.blocks().unwrap(), p.blocks().unwrap());
    }

    #[test]
    fn meet_agrees_with_atoms_of_combined_blocks() {
        let (g, els) = z4();
        let p = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "1"]), by_names(&g, &["2", "3"])],
        )
        .unwrap();
        let q = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "2"]), by_names(&g, &["1", "3"])],
        )
        .unwrap();
        let via_meet = meet(&els, &p, &q).unwrap();
        let mut combined: Vec<Vec<Element>> = p.blocks().unwrap().to_vec();
        combined.extend(q.blocks().unwrap().to_vec());
        let via_atoms = atoms(&els, &combined).unwrap();
        let a: BTreeSet<_> = via_meet.blocks().unwrap().iter().cloned().collect();
        let b: BTreeSet<_> = via_atoms.blocks().unwrap().iter().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn refinement_examples() {
        let (g, els) = z4();
        let singles = Partition::singletons(&els).unwrap();
        let p = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "1"]), by_names(&g, &["2", "3"])],
        )
        .unwrap();
        let q = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "2"]), by_names(&g, &["1", "3"])],
        )
        .unwrap();
        assert!(is_refinement(&els, &singles, &p).unwrap());
        assert!(is_refinement(&els, &singles, &q).unwrap());
        assert!(!is_refinement(&els, &p, &q).unwrap());
        assert!(is_refinement(&els, &p, &p).unwrap());
    }

    #[test]
    fn similarity_across_groups() {
        let (g, els) = z4();
        let v = Group::build(&GroupDefinition::Product {
            factors: vec![
                GroupDefinition::Cyclic { order: 2 },
                GroupDefinition::Cyclic { order: 2 },
            ],
        })
        .unwrap();
        let vels = v.elements().unwrap();
        let fine_a = Partition::singletons(&els).unwrap();
        let coarse_a = Partition::explicit(
            &els,
            vec![by_names(&g, &["0", "2"]), by_names(&g, &["1", "3"])],
        )
        .unwrap();
        let fine_b = Partition::singletons(&vels).unwrap();
        // enumeration order (0,0),(0,1),(1,0),(1,1): colors 1,2,1,2 need
        // blocks {(0,0),(1,0)} and {(0,1),(1,1)}
        let coarse_b = Partition::explicit(
            &vels,
            vec![by_names(&v, &["(0,0)", "(1,0)"]), by_names(&v, &["(0,1)", "(1,1)"])],
        )
        .unwrap();
        let w = similar(&els, &fine_a, &coarse_a, &vels, &fine_b, &coarse_b).unwrap();
        assert!(w.matches);
        assert_eq!(w.incidence_a, w.incidence_b);
        // reorder the second coarse partition: incidence flips to 2,1,2,1
        let coarse_b_flipped = Partition::explicit(
            &vels,
            vec![by_names(&v, &["(0,1)", "(1,1)"]), by_names(&v, &["(0,0)", "(1,0)"])],
        )
        .unwrap();
        let w2 = similar(&els, &fine_a, &coarse_a, &vels, &fine_b, &coarse_b_flipped).unwrap();
        assert!(!w2.matches);
        // mismatched block counts
        let coarse_a3 = Partition::explicit(
            &els,
            vec![by_names(&g, &["0"]), by_names(&g, &["2"]), by_names(&g, &["1", "3"])],
        )
        .unwrap();
        assert!(matches!(
            similar(&els, &fine_a, &coarse_a3, &vels, &fine_b, &coarse_b),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn pullback_examples() {
        let (g, _) = z4();
        let z2 = Group::build(&GroupDefinition::Cyclic { order: 2 }).unwrap();
        let z2els = z2.elements().unwrap();
        let images = by_names(&z2, &["0", "1", "0", "1"]);
        let q = FiniteQuotient::new(g.clone(), z2.clone(), images).unwrap();
        let q = QuotientMap::Finite(q);
        let f = Partition::singletons(&z2els).unwrap();
        let p = pullback_partition(&q, &f).unwrap();
        let (g, _) = z4();
        assert_eq!(
            p.blocks().unwrap(),
            &[by_names(&g, &["0", "2"]), by_names(&g, &["1", "3"])]
        );
        // one target block pulls back to the whole group
        let one = Partition::one_block(&z2els).unwrap();
        let whole = pullback_partition(&q, &one).unwrap();
        assert_eq!(whole.m(), 1);
        assert_eq!(whole.blocks().unwrap()[0].len(), 4);
    }

    #[test]
    fn pullback_of_sign_map_splits_by_parity() {
        let s3 = Group::build(&GroupDefinition::Symmetric { n: 3 }).unwrap();
        let z2 = Group::build(&GroupDefinition::Cyclic { order: 2 }).unwrap();
        let els = s3.elements().unwrap();
        let images: Vec<Element> = els
            .iter()
            .map(|e| {
                let Element::Perm(p) = e else { unreachable!() };
                let mut inversions = 0;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] > p[j] {
                            inversions += 1;
                        }
                    }
                }
                Element::Index(inversions % 2)
            })
            .collect();
        let q = QuotientMap::Finite(FiniteQuotient::new(s3.clone(), z2.clone(), images).unwrap());
        let f = Partition::singletons(&z2.elements().unwrap()).unwrap();
        let p = pullback_partition(&q, &f).unwrap();
        let blocks = p.blocks().unwrap();
        // even block: identity and the two 3-cycles; odd block: transpositions
        assert_eq!(blocks[0], by_names(&s3, &["012", "120", "201"]));
        assert_eq!(blocks[1], by_names(&s3, &["021", "102", "210"]));
    }

    #[test]
    fn quotient_map_validation() {
        let (g, _) = z4();
        let z2 = Group::build(&GroupDefinition::Cyclic { order: 2 }).unwrap();
        // x ↦ x mod 2 as indices 0,1,0,1 is a homomorphism; 0,1,1,0 is not
        let bad = FiniteQuotient::new(
            g.clone(),
            z2.clone(),
            by_names(&z2, &["0", "1", "1", "0"]),
        );
        assert!(matches!(bad, Err(Error::NotEpimorphism(_))));
        let constant =
            FiniteQuotient::new(g.clone(), z2.clone(), by_names(&z2, &["0", "0", "0", "0"]));
        assert!(matches!(constant, Err(Error::NotEpimorphism(_))));
        // matrix reductions: collapsing direction is valid, expanding is not
        assert!(QuotientMap::laurent(QuotientMode::None, QuotientMode::ModN0).is_ok());
        assert!(QuotientMap::laurent(QuotientMode::Mod2ZN1, QuotientMode::ModN0).is_ok());
        assert!(matches!(
            QuotientMap::laurent(QuotientMode::ModN0, QuotientMode::Mod2ZN1),
            Err(Error::NotEpimorphism(_))
        ));
    }

    #[test]
    fn first_letter_colors() {
        let p = Partition::first_letter(2);
        assert_eq!(p.m(), 5);
        let color = |w: Vec<i8>| p.color_of(&Element::Word(w)).unwrap();
        assert_eq!(color(vec![]), 1);
        assert_eq!(color(vec![1, 2]), 2);
        assert_eq!(color(vec![-1]), 3);
        assert_eq!(color(vec![2, -1]), 4);
        assert_eq!(color(vec![-2, 1, 1]), 5);
    }

    #[test]
    fn cofinite_partition_colors() {
        let f = Group::build(&GroupDefinition::Free { rank: 2 }).unwrap();
        let a = f.element_by_name("a").unwrap();
        let p = Partition::cofinite(vec![vec![f.identity()], vec![a.clone()]]).unwrap();
        assert_eq!(p.m(), 3);
        assert_eq!(p.color_of(&f.identity()).unwrap(), 1);
        assert_eq!(p.color_of(&a).unwrap(), 2);
        assert_eq!(p.color_of(&f.element_by_name("ba").unwrap()).unwrap(), 3);
    }

    #[test]
    fn n_extension_examples() {
        let (g, _) = z4();
        let n: BTreeSet<Element> = by_names(&g, &["0", "2"]).into_iter().collect();
        let ext = n_extension(&g, &n, &by_names(&g, &["1"])).unwrap();
        assert_eq!(ext.entries(), by_names(&g, &["1", "2"]).as_slice());
        // trivial subgroup leaves the tuple unchanged
        let trivial: BTreeSet<Element> = [g.identity()].into_iter().collect();
        let same = n_extension(&g, &trivial, &by_names(&g, &["1"])).unwrap();
        assert_eq!(same.entries(), by_names(&g, &["1"]).as_slice());
        // dihedral: central rotation subgroup
        let d4 = Group::build(&GroupDefinition::Dihedral { k: 4 }).unwrap();
        let nd: BTreeSet<Element> = by_names(&d4, &["e", "r2"]).into_iter().collect();
        let ext = n_extension(&d4, &nd, &by_names(&d4, &["r", "s"])).unwrap();
        assert_eq!(ext.entries(), by_names(&d4, &["r", "s", "r2"]).as_slice());
    }

    #[test]
    fn n_extension_error_cases() {
        let d4 = Group::build(&GroupDefinition::Dihedral { k: 4 }).unwrap();
        // reflections are not a normal subgroup (not even a subgroup)
        let not_sub: BTreeSet<Element> =
            [d4.element_by_name("s").unwrap()].into_iter().collect();
        assert!(matches!(
            n_extension(&d4, &not_sub, &[d4.element_by_name("r").unwrap()]),
            Err(Error::NotNormal(_))
        ));
        // ⟨s⟩ is a subgroup but not normal in D4
        let s_span: BTreeSet<Element> =
            by_names(&d4, &["e", "s"]).into_iter().collect();
        assert!(matches!(
            n_extension(&d4, &s_span, &[d4.element_by_name("r").unwrap()]),
            Err(Error::NotNormal(_))
        ));
        // image fails to generate the quotient
        let (g, _) = z4();
        let trivial: BTreeSet<Element> = [g.identity()].into_iter().collect();
        assert!(matches!(
            n_extension(&g, &trivial, &[g.element_by_name("2").unwrap()]),
            Err(Error::NotGenerating(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition(order: usize) -> impl Strategy<Value = Vec<u8>> {
            proptest::collection::vec(0..4u8, order)
        }

        fn from_colors(els: &[Element], colors: &[u8]) -> Partition {
            let mut blocks: BTreeMap<u8, Vec<Element>> = BTreeMap::new();
            for (e, c) in els.iter().zip(colors) {
                blocks.entry(*c).or_default().push(e.clone());
            }
            Partition::explicit(els, blocks.into_values().collect()).unwrap()
        }

        proptest! {
            #[test]
            fn atoms_is_idempotent(colors in arb_partition(8)) {
                let g = Group::build(&GroupDefinition::Dihedral { k: 4 }).unwrap();
                let els = g.elements().unwrap();
                let p = from_colors(&els, &colors);
                let once = atoms(&els, p.blocks().unwrap()).unwrap();
                let twice = atoms(&els, once.blocks().unwrap()).unwrap();
                prop_assert_eq!(once.blocks().unwrap(), twice.blocks().unwrap());
            }

            #[test]
            fn meet_laws(ca in arb_partition(6), cb in arb_partition(6), cc in arb_partition(6)) {
                let g = Group::build(&GroupDefinition::Cyclic { order: 6 }).unwrap();
                let els = g.elements().unwrap();
                let p = from_colors(&els, &ca);
                let q = from_colors(&els, &cb);
                let r = from_colors(&els, &cc);
                // commutative and associative up to block order
                let block_set = |x: &Partition| -> BTreeSet<Vec<Element>> {
                    x.blocks().unwrap().iter().cloned().collect()
                };
                let pq = meet(&els, &p, &q).unwrap();
                let qp = meet(&els, &q, &p).unwrap();
                prop_assert_eq!(block_set(&pq), block_set(&qp));
                let pq_r = meet(&els, &pq, &r).unwrap();
                let qr = meet(&els, &q, &r).unwrap();
                let p_qr = meet(&els, &p, &qr).unwrap();
                prop_assert_eq!(block_set(&pq_r), block_set(&p_qr));
                // idempotent, and the meet refines both arguments
                let pp = meet(&els, &p, &p).unwrap();
                prop_assert_eq!(pp.blocks().unwrap(), p.blocks().unwrap());
                prop_assert!(is_refinement(&els, &pq, &p).unwrap());
                prop_assert!(is_refinement(&els, &pq, &q).unwrap());
            }
        }
    }
}
