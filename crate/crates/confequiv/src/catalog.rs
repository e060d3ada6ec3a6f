//! Canonical configuration catalogs over small finite groups.
//!
//! A catalog at bounds (max_n, max_m) collects, for every generating tuple
//! of size ≤ max_n and every partition into ≤ max_m blocks, the
//! configuration set canonicalized under color permutations. Catalogs are
//! compared as plain sets; any inequality within bounds is conclusive for
//! non-equivalence, while equality is only evidence (hence every verdict is
//! stamped with its bounds). The module also computes conjugacy-class data,
//! which agrees between groups with equal two-sided catalogs at full bounds.

use crate::configuration::{configurations, two_sided_configurations, ConfigurationSet, SetKind};
use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::partition::Partition;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

/// Desk-scale guards; both can be raised explicitly by callers that accept
/// the Bell-number blowup.
#[derive(Clone, Copy, Debug)]
pub struct CatalogLimits {
    pub max_order: u64,
    pub max_m: usize,
}

impl Default for CatalogLimits {
    fn default() -> Self {
        CatalogLimits { max_order: 12, max_m: 5 }
    }
}

/// The lexicographically least recoloring of a configuration set: the
/// canonical representative of its color-permutation orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalSet {
    pub kind: SetKind,
    pub n: usize,
    pub m: usize,
    pub tuples: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Catalog {
    /// Hash of the group's multiplication table; presentation-independent
    /// only up to element order, so isomorphic groups may differ here.
    pub group_id: String,
    pub max_n: usize,
    pub max_m: usize,
    pub kind: SetKind,
    /// Sorted and duplicate-free.
    pub sets: Vec<CanonicalSet>,
}

pub fn canonicalize(cs: &ConfigurationSet) -> CanonicalSet {
    let m = cs.m as u8;
    let mut best: Option<Vec<Vec<u8>>> = None;
    let mut sigma: Vec<u8> = (1..=m).collect();
    loop {
        let recolored = cs
            .recolor(&sigma)
            .expect("identity-shaped permutations are always valid recolorings");
        if best.as_ref().is_none_or(|b| recolored.tuples < *b) {
            best = Some(recolored.tuples);
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    CanonicalSet { kind: cs.kind, n: cs.n, m: cs.m, tuples: best.unwrap() }
}

/// Advance to the next permutation in lexicographic order; false after the
/// last one.
fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All ordered tuples of distinct elements of size 1..=max_n whose closure
/// is the whole group, in (size, element-index) lexicographic order. The
/// identity may appear inside a tuple as long as the tuple generates.
pub fn enumerate_generating_tuples(group: &Group, max_n: usize) -> Result<Vec<Vec<Element>>> {
    let order = group
        .order()
        .ok_or_else(|| Error::UnsupportedOnInfinite("tuple enumeration needs a finite view".into()))?;
    let els = group.elements()?;
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn extend(
        group: &Group,
        els: &[Element],
        order: u64,
        size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<Element>>,
    ) -> Result<()> {
        if current.len() == size {
            let tuple: Vec<Element> = current.iter().map(|&i| els[i].clone()).collect();
            if group.closure(&tuple)?.len() as u64 == order {
                out.push(tuple);
            }
            return Ok(());
        }
        for i in 0..els.len() {
            if !current.contains(&i) {
                current.push(i);
                extend(group, els, order, size, current, out)?;
                current.pop();
            }
        }
        Ok(())
    }
    for size in 1..=max_n.min(els.len()) {
        extend(group, &els, order, size, &mut current, &mut out)?;
    }
    Ok(out)
}

/// All set partitions of the element list into 1..=max_m nonempty blocks,
/// each once, blocks ordered by least element. Enumerated via restricted
/// growth strings, so the order is deterministic.
pub fn enumerate_partitions(
    group: &Group,
    max_m: usize,
    limits: &CatalogLimits,
) -> Result<Vec<Partition>> {
    let order = group
        .order()
        .ok_or_else(|| Error::UnsupportedOnInfinite("partition enumeration needs a finite view".into()))?;
    if order > limits.max_order {
        return Err(Error::TooLarge(format!(
            "order {order} exceeds the enumeration guard {}; raise the limit explicitly to proceed",
            limits.max_order
        )));
    }
    let els = group.elements()?;
    let k = els.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; k];
    loop {
        let blocks_used = rgs.iter().copied().max().unwrap_or(0) + 1;
        if blocks_used <= max_m {
            let mut blocks: Vec<Vec<Element>> = vec![Vec::new(); blocks_used];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(els[i].clone());
            }
            out.push(Partition::explicit(&els, blocks)?);
        }
        // advance the restricted growth string
        let mut pos = k;
        loop {
            if pos <= 1 {
                return Ok(out);
            }
            pos -= 1;
            let cap = rgs[..pos].iter().copied().max().unwrap_or(0) + 1;
            if rgs[pos] < cap {
                rgs[pos] += 1;
                for v in &mut rgs[pos + 1..] {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// A presentation-sensitive identity for the multiplication table: order
/// plus the row-major index table, hashed.
pub fn group_hash(group: &Group) -> Result<String> {
    let els = group.elements()?;
    let mut hasher = Sha256::new();
    hasher.update(b"confequiv-group-v1");
    hasher.update((els.len() as u64).to_le_bytes());
    for x in &els {
        for y in &els {
            let product = group.mul(x, y);
            let idx = group
                .element_index(&product)
                .expect("products of listed elements are listed") as u32;
            hasher.update(idx.to_le_bytes());
        }
    }
    let digest = hasher.finalize();
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

/// Build the full catalog at the given bounds. Parallel over generating
/// tuples; the merged set is independent of thread count.
pub fn compute_catalog(
    group: &Group,
    max_n: usize,
    max_m: usize,
    kind: SetKind,
    limits: &CatalogLimits,
) -> Result<Catalog> {
    let order = group
        .order()
        .ok_or_else(|| Error::UnsupportedOnInfinite("catalogs need a finite view".into()))?;
    if order > limits.max_order {
        return Err(Error::TooLarge(format!(
            "order {order} exceeds the catalog guard {}; raise the limit explicitly to proceed",
            limits.max_order
        )));
    }
    if max_m > limits.max_m {
        return Err(Error::TooLarge(format!(
            "max_m {max_m} exceeds the partition guard {}; raise the limit explicitly to proceed",
            limits.max_m
        )));
    }
    let tuples = enumerate_generating_tuples(group, max_n)?;
    let partitions = enumerate_partitions(group, max_m, limits)?;
    let sets = tuples
        .par_iter()
        .map(|gens| -> Result<BTreeSet<CanonicalSet>> {
            let mut local = BTreeSet::new();
            for p in &partitions {
                let cs = match kind {
                    SetKind::OneSided => configurations(group, gens, p)?,
                    SetKind::TwoSided => two_sided_configurations(group, gens, p)?,
                };
                local.insert(canonicalize(&cs));
            }
            Ok(local)
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    Ok(Catalog {
        group_id: group_hash(group)?,
        max_n,
        max_m,
        kind,
        sets: sets.into_iter().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareVerdict {
    Equal,
    /// Left catalog is a strict subset of the right one.
    StrictlyContained,
    /// Left catalog strictly contains the right one.
    Contains,
    Incomparable,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub verdict: CompareVerdict,
    pub max_n: usize,
    pub max_m: usize,
    pub kind: SetKind,
    /// Sets in the left catalog only, sorted; first entry is the least
    /// witness.
    pub only_left: Vec<CanonicalSet>,
    pub only_right: Vec<CanonicalSet>,
}

impl CompareReport {
    /// Human-readable scope stamp; bounded equality is not unbounded
    /// equivalence.
    pub fn scope(&self) -> String {
        format!("within bounds (max_n={}, max_m={})", self.max_n, self.max_m)
    }
}

pub fn compare_catalogs(left: &Catalog, right: &Catalog) -> Result<CompareReport> {
    if left.max_n != right.max_n || left.max_m != right.max_m || left.kind != right.kind {
        return Err(Error::ShapeMismatch(
            "catalogs must share bounds and kind to be comparable".into(),
        ));
    }
    let l: BTreeSet<&CanonicalSet> = left.sets.iter().collect();
    let r: BTreeSet<&CanonicalSet> = right.sets.iter().collect();
    let only_left: Vec<CanonicalSet> = l.difference(&r).map(|s| (*s).clone()).collect();
    let only_right: Vec<CanonicalSet> = r.difference(&l).map(|s| (*s).clone()).collect();
    let verdict = match (only_left.is_empty(), only_right.is_empty()) {
        (true, true) => CompareVerdict::Equal,
        (true, false) => CompareVerdict::StrictlyContained,
        (false, true) => CompareVerdict::Contains,
        (false, false) => CompareVerdict::Incomparable,
    };
    Ok(CompareReport {
        verdict,
        max_n: left.max_n,
        max_m: left.max_m,
        kind: left.kind,
        only_left,
        only_right,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassData {
    /// Conjugacy classes in first-appearance order; elements within a class
    /// follow the group's element order.
    pub classes: Vec<Vec<Element>>,
    pub class_number: usize,
    /// Union of the singleton classes.
    pub center: Vec<Element>,
}

pub fn class_data(group: &Group) -> Result<ClassData> {
    let els = group.elements()?;
    let mut assigned = vec![false; els.len()];
    let mut classes = Vec::new();
    for (i, x) in els.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members = BTreeSet::new();
        for g in &els {
            let idx = group
                .element_index(&group.conj(g, x))
                .expect("conjugates of listed elements are listed");
            members.insert(idx);
        }
        let class: Vec<Element> = members
            .iter()
            .map(|&idx| {
                assigned[idx] = true;
                els[idx].clone()
            })
            .collect();
        classes.push(class);
    }
    let mut center: Vec<Element> = Vec::new();
    for c in &classes {
        if c.len() == 1 {
            center.push(c[0].clone());
        }
    }
    center.sort();
    let class_number = classes.len();
    Ok(ClassData { classes, class_number, center })
}

/// True iff the set is closed under conjugation, i.e. a union of conjugacy
/// classes.
pub fn is_normal_set(group: &Group, set: &BTreeSet<Element>) -> Result<bool> {
    let els = group.elements()?;
    for s in set {
        group.validate_element(s)?;
        for g in &els {
            if !set.contains(&group.conj(g, s)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const CACHE_FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    max_n: usize,
    max_m: usize,
    kind: SetKind,
    sets: Vec<CanonicalSet>,
}

/// Computes catalogs, reading and writing a JSON disk cache when a
/// directory is configured. Cache hits reproduce recomputation exactly.
#[derive(Clone, Debug, Default)]
pub struct CatalogStore {
    dir: Option<PathBuf>,
    limits: CatalogLimits,
}

impl CatalogStore {
    pub fn new(dir: Option<PathBuf>) -> Self {
        CatalogStore { dir, limits: CatalogLimits::default() }
    }

    pub fn with_limits(dir: Option<PathBuf>, limits: CatalogLimits) -> Self {
        CatalogStore { dir, limits }
    }

    pub fn limits(&self) -> &CatalogLimits {
        &self.limits
    }

    fn cache_path(&self, group_id: &str, max_n: usize, max_m: usize, kind: SetKind) -> Option<PathBuf> {
        let kind_tag = match kind {
            SetKind::OneSided => "one-sided",
            SetKind::TwoSided => "two-sided",
        };
        self.dir
            .as_ref()
            .map(|d| d.join(format!("{group_id}-n{max_n}-m{max_m}-{kind_tag}.json")))
    }

    pub fn catalog(
        &self,
        group: &Group,
        max_n: usize,
        max_m: usize,
        kind: SetKind,
    ) -> Result<Catalog> {
        let group_id = group_hash(group)?;
        let path = self.cache_path(&group_id, max_n, max_m, kind);
        if let Some(path) = &path {
            if let Some(sets) = load_cache(path, max_n, max_m, kind) {
                return Ok(Catalog { group_id, max_n, max_m, kind, sets });
            }
        }
        let catalog = compute_catalog(group, max_n, max_m, kind, &self.limits)?;
        if let Some(path) = &path {
            store_cache(path, &catalog)?;
        }
        Ok(catalog)
    }
}

/// A malformed or mismatched cache file is treated as a miss and
/// overwritten by the fresh computation.
fn load_cache(path: &Path, max_n: usize, max_m: usize, kind: SetKind) -> Option<Vec<CanonicalSet>> {
    let text = fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.format_version != CACHE_FORMAT_VERSION
        || file.max_n != max_n
        || file.max_m != max_m
        || file.kind != kind
    {
        return None;
    }
    Some(file.sets)
}

fn store_cache(path: &Path, catalog: &Catalog) -> Result<()> {
    let file = CacheFile {
        format_version: CACHE_FORMAT_VERSION,
        max_n: catalog.max_n,
        max_m: catalog.max_m,
        kind: catalog.kind,
        sets: catalog.sets.clone(),
    };
    let text = serde_json::to_string_pretty(&file)
        .expect("catalog serialization is infallible") + "\n";
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| Error::TooLarge(format!("cannot create cache directory: {e}")))?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text).map_err(|e| Error::TooLarge(format!("cannot write cache file: {e}")))?;
    fs::rename(&tmp, path).map_err(|e| Error::TooLarge(format!("cannot move cache file: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDefinition;

    fn build(def: &GroupDefinition) -> Group {
        Group::build(def).unwrap()
    }

    fn z(k: u32) -> Group {
        build(&GroupDefinition::Cyclic { order: k })
    }

    fn v4() -> Group {
        build(&GroupDefinition::Product {
            factors: vec![GroupDefinition::Cyclic { order: 2 }, GroupDefinition::Cyclic { order: 2 }],
        })
    }

    fn s3() -> Group {
        build(&GroupDefinition::Symmetric { n: 3 })
    }

    #[test]
    fn generating_tuple_enumeration() {
        let z2 = z(2);
        let tuples = enumerate_generating_tuples(&z2, 1).unwrap();
        assert_eq!(tuples.len(), 1);
        assert!(!z2.is_identity(&tuples[0][0]));

        let z4 = z(4);
        let singles = enumerate_generating_tuples(&z4, 1).unwrap();
        let names: Vec<String> = singles.iter().map(|t| z4.name_of(&t[0])).collect();
        assert_eq!(names, vec!["1", "3"]);
        // pairs: every ordered distinct pair containing 1 or 3 generates
        let up_to_two = enumerate_generating_tuples(&z4, 2).unwrap();
        assert_eq!(up_to_two.len(), 2 + 10);

        assert!(enumerate_generating_tuples(&v4(), 1).unwrap().is_empty());

        // the trivial group is generated by its identity
        let t = z(1);
        let trivial = enumerate_generating_tuples(&t, 3).unwrap();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].len(), 1);
    }

    #[test]
    fn partition_enumeration_counts_are_bell_and_stirling() {
        let z4 = z(4);
        let limits = CatalogLimits::default();
        assert_eq!(enumerate_partitions(&z4, 4, &limits).unwrap().len(), 15);
        assert_eq!(enumerate_partitions(&z4, 2, &limits).unwrap().len(), 8);
        assert_eq!(enumerate_partitions(&z(1), 5, &limits).unwrap().len(), 1);
        for p in enumerate_partitions(&z4, 3, &limits).unwrap() {
            assert!(p.m() <= 3);
        }
    }

    #[test]
    fn enumeration_guard_rejects_large_groups() {
        let big = build(&GroupDefinition::Cyclic { order: 13 });
        let limits = CatalogLimits::default();
        assert!(matches!(
            enumerate_partitions(&big, 3, &limits),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            compute_catalog(&big, 1, 3, SetKind::OneSided, &limits),
            Err(Error::TooLarge(_))
        ));
        assert!(matches!(
            compute_catalog(&z(4), 1, 6, SetKind::OneSided, &limits),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn canonicalization_is_idempotent_and_recoloring_sound() {
        let z4 = z(4);
        let gens = vec![z4.element_by_name("1").unwrap()];
        let els = z4.elements().unwrap();
        let p = Partition::explicit(
            &els,
            vec![
                vec![els[0].clone()],
                vec![els[1].clone()],
                vec![els[2].clone()],
                vec![els[3].clone()],
            ],
        )
        .unwrap();
        let cs = configurations(&z4, &gens, &p).unwrap();
        let canon = canonicalize(&cs);
        // canonical form of the shift set
        assert_eq!(canon.tuples, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]);
        // idempotent: re-canonicalizing the canonical set is a fixed point
        let as_set = ConfigurationSet {
            kind: cs.kind,
            n: canon.n,
            m: canon.m,
            exactness: cs.exactness,
            tuples: canon.tuples.clone(),
        };
        assert_eq!(canonicalize(&as_set).tuples, canon.tuples);
        // recoloring soundness: any recoloring canonicalizes identically
        let recolored = cs.recolor(&[3, 1, 4, 2]).unwrap();
        assert_eq!(canonicalize(&recolored), canon);
    }

    #[test]
    fn catalog_edge_cases() {
        let limits = CatalogLimits::default();
        // trivial group: the identity tuple realizes the all-ones set
        let t = compute_catalog(&z(1), 2, 3, SetKind::OneSided, &limits).unwrap();
        assert_eq!(t.sets.len(), 1);
        assert_eq!(t.sets[0].tuples, vec![vec![1, 1]]);
        // no single element generates the Klein four-group
        let empty = compute_catalog(&v4(), 1, 4, SetKind::OneSided, &limits).unwrap();
        assert!(empty.sets.is_empty());
        // the shift set shows up for Z4
        let z4cat = compute_catalog(&z(4), 1, 4, SetKind::OneSided, &limits).unwrap();
        let shift = CanonicalSet {
            kind: SetKind::OneSided,
            n: 1,
            m: 4,
            tuples: vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]],
        };
        assert!(z4cat.sets.contains(&shift));
    }

    #[test]
    fn catalog_sizes_match_independent_enumeration() {
        // frozen by a brute-force enumeration in a separate implementation
        let limits = CatalogLimits::default();
        let cases: Vec<(Group, usize, usize)> = vec![
            (z(4), 34, 34),
            (v4(), 9, 9),
            (s3(), 119, 523),
        ];
        for (g, one, two) in cases {
            let c1 = compute_catalog(&g, 2, 4, SetKind::OneSided, &limits).unwrap();
            assert_eq!(c1.sets.len(), one);
            let c2 = compute_catalog(&g, 2, 4, SetKind::TwoSided, &limits).unwrap();
            assert_eq!(c2.sets.len(), two);
        }
    }

    #[test]
    fn comparison_verdicts_and_mirror_consistency() {
        let limits = CatalogLimits::default();
        let a = compute_catalog(&z(4), 1, 4, SetKind::OneSided, &limits).unwrap();
        let b = compute_catalog(&v4(), 1, 4, SetKind::OneSided, &limits).unwrap();
        let same = compare_catalogs(&a, &a).unwrap();
        assert_eq!(same.verdict, CompareVerdict::Equal);
        assert!(same.only_left.is_empty() && same.only_right.is_empty());

        let ab = compare_catalogs(&a, &b).unwrap();
        assert_eq!(ab.verdict, CompareVerdict::Contains);
        assert!(!ab.only_left.is_empty() && ab.only_right.is_empty());
        let ba = compare_catalogs(&b, &a).unwrap();
        assert_eq!(ba.verdict, CompareVerdict::StrictlyContained);
        assert_eq!(ab.only_left, ba.only_right);
        assert!(ab.scope().contains("max_n=1"));

        let mismatched = compute_catalog(&z(4), 2, 4, SetKind::OneSided, &limits).unwrap();
        assert!(matches!(
            compare_catalogs(&a, &mismatched),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn isomorphic_presentations_have_equal_catalogs() {
        let limits = CatalogLimits::default();
        let cyclic = z(6);
        let product = build(&GroupDefinition::Product {
            factors: vec![GroupDefinition::Cyclic { order: 2 }, GroupDefinition::Cyclic { order: 3 }],
        });
        for kind in [SetKind::OneSided, SetKind::TwoSided] {
            let a = compute_catalog(&cyclic, 1, 3, kind, &limits).unwrap();
            let b = compute_catalog(&product, 1, 3, kind, &limits).unwrap();
            assert_eq!(compare_catalogs(&a, &b).unwrap().verdict, CompareVerdict::Equal);
        }
    }

    #[test]
    fn class_data_matches_hand_counts() {
        let d = class_data(&z(6)).unwrap();
        assert_eq!(d.class_number, 6);
        assert_eq!(d.center.len(), 6);

        let d = class_data(&s3()).unwrap();
        assert_eq!(d.class_number, 3);
        let mut sizes: Vec<usize> = d.classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(d.center.len(), 1);

        let d4 = build(&GroupDefinition::Dihedral { k: 4 });
        assert_eq!(class_data(&d4).unwrap().class_number, 5);
        assert_eq!(class_data(&d4).unwrap().center.len(), 2);

        let q8 = build(&GroupDefinition::Quaternion);
        assert_eq!(class_data(&q8).unwrap().class_number, 5);
        assert_eq!(class_data(&q8).unwrap().center.len(), 2);
    }

    #[test]
    fn normal_sets_are_unions_of_classes() {
        let s3 = s3();
        let data = class_data(&s3).unwrap();
        let center: BTreeSet<Element> = data.center.iter().cloned().collect();
        assert!(is_normal_set(&s3, &center).unwrap());
        // a single transposition moves under conjugation
        let t = s3.element_by_name("102").unwrap();
        let single: BTreeSet<Element> = [t].into_iter().collect();
        assert!(!is_normal_set(&s3, &single).unwrap());
        // the rotation subgroup is a union of classes
        let a3: BTreeSet<Element> = ["012", "120", "201"]
            .iter()
            .map(|n| s3.element_by_name(n).unwrap())
            .collect();
        assert!(is_normal_set(&s3, &a3).unwrap());
    }

    #[test]
    fn full_bound_catalog_equality_forces_equal_class_numbers() {
        // exhaustive over groups of order ≤ 4 at full bounds (|G|, |G|)
        let limits = CatalogLimits::default();
        let groups = vec![z(1), z(2), z(3), z(4), v4()];
        let bound = 4;
        let catalogs: Vec<Catalog> = groups
            .iter()
            .map(|g| compute_catalog(g, bound, bound, SetKind::TwoSided, &limits).unwrap())
            .collect();
        let mut nonvacuous = 0;
        for i in 0..groups.len() {
            for j in (i + 1)..groups.len() {
                let report = compare_catalogs(&catalogs[i], &catalogs[j]).unwrap();
                if report.verdict == CompareVerdict::Equal {
                    nonvacuous += 1;
                    assert_eq!(
                        class_data(&groups[i]).unwrap().class_number,
                        class_data(&groups[j]).unwrap().class_number
                    );
                }
            }
        }
        // non-isomorphic groups of order ≤ 4 all separate at full bounds
        assert_eq!(nonvacuous, 0);
        let z4_vs_v4 = compare_catalogs(&catalogs[3], &catalogs[4]).unwrap();
        assert_ne!(z4_vs_v4.verdict, CompareVerdict::Equal);
    }

    #[test]
    fn cache_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let store = CatalogStore::new(Some(dir.path().to_path_buf()));
        let z4 = z(4);
        let first = store.catalog(&z4, 2, 3, SetKind::OneSided).unwrap();
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
        let bytes_before = fs::read(files[0].as_ref().unwrap().path()).unwrap();
        let second = store.catalog(&z4, 2, 3, SetKind::OneSided).unwrap();
        assert_eq!(first, second);
        let bytes_after = fs::read(files[0].as_ref().unwrap().path()).unwrap();
        assert_eq!(bytes_before, bytes_after);
        // uncached store computes the same catalog
        let fresh = CatalogStore::new(None).catalog(&z4, 2, 3, SetKind::OneSided).unwrap();
        assert_eq!(fresh, first);
    }

    #[test]
    fn corrupt_cache_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let store = CatalogStore::new(Some(dir.path().to_path_buf()));
        let z4 = z(4);
        let first = store.catalog(&z4, 1, 3, SetKind::TwoSided).unwrap();
        let path = fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
        fs::write(&path, b"{not json").unwrap();
        let second = store.catalog(&z4, 1, 3, SetKind::TwoSided).unwrap();
        assert_eq!(first, second);
        // the bad file was replaced by a well-formed one
        let reloaded: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(reloaded["format_version"], 1);
    }

    #[test]
    fn group_hash_tracks_the_table_not_the_name() {
        let a = group_hash(&z(4)).unwrap();
        let b = group_hash(&z(4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, group_hash(&v4()).unwrap());
        assert_eq!(a.len(), 64);
    }
}
