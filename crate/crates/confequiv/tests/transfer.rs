//! Behavior of configuration sets under quotient maps: pulling a partition
//! back along an epimorphism preserves the configuration set of any
//! generating tuple, block translations correspond across the map, and
//! coarsening both sides by the same color merge keeps the sets equal.

use std::collections::BTreeSet;

use confequiv::catalog::{enumerate_generating_tuples, enumerate_partitions, CatalogLimits};
use confequiv::configuration::{configurations, two_sided_configurations};
use confequiv::group::Element;
use confequiv::partition::{
    pullback_partition, similar, FiniteQuotient, Partition, QuotientMap,
};
use confequiv::schema::parse_quotient_spec;

const QUOTIENTS: [&str; 4] = ["Z4/Z2", "V4/Z2", "S3/Z2", "D4/V4"];

struct Fixture {
    q: FiniteQuotient,
    tuples: Vec<Vec<Element>>,
    target_partitions: Vec<Partition>,
}

fn fixture(spec: &str) -> Fixture {
    let q = parse_quotient_spec(spec).unwrap();
    let tuples = enumerate_generating_tuples(q.source(), 2).unwrap();
    let max_m = q.target().order().unwrap() as usize;
    let target_partitions =
        enumerate_partitions(q.target(), max_m, &CatalogLimits::default()).unwrap();
    assert!(!tuples.is_empty(), "{spec}: no generating tuples of size <= 2");
    Fixture { q, tuples, target_partitions }
}

/// All set partitions of {0,..,k-1} as color->part assignments, via
/// restricted growth strings.
fn color_merges(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut assignment = vec![0usize; k];
    fn extend(assignment: &mut Vec<usize>, pos: usize, max_used: usize, out: &mut Vec<Vec<usize>>) {
        if pos == assignment.len() {
            out.push(assignment.clone());
            return;
        }
        for part in 0..=max_used + 1 {
            assignment[pos] = part;
            extend(assignment, pos + 1, max_used.max(part), out);
        }
    }
    if k == 0 {
        return vec![Vec::new()];
    }
    assignment[0] = 0;
    extend(&mut assignment, 1, 0, &mut out);
    out
}

/// Merge the blocks of `p` according to a color->part assignment.
fn merged(universe: &[Element], p: &Partition, assignment: &[usize]) -> Partition {
    let blocks = p.blocks().expect("explicit blocks");
    let parts = assignment.iter().copied().max().map_or(1, |top| top + 1);
    let mut merged_blocks: Vec<Vec<Element>> = vec![Vec::new(); parts];
    for (color, block) in blocks.iter().enumerate() {
        merged_blocks[assignment[color]].extend(block.iter().cloned());
    }
    Partition::explicit(universe, merged_blocks).unwrap()
}

#[test]
fn pullback_preserves_configuration_sets() {
    let mut cases = 0usize;
    for spec in QUOTIENTS {
        let fx = fixture(spec);
        let map = QuotientMap::Finite(fx.q.clone());
        for gens in &fx.tuples {
            let image = fx.q.apply_tuple(gens).unwrap();
            for f in &fx.target_partitions {
                let pulled = pullback_partition(&map, f).unwrap();
                let up = configurations(fx.q.source(), gens, &pulled).unwrap();
                let down = configurations(fx.q.target(), &image, f).unwrap();
                assert_eq!(up.tuples, down.tuples, "{spec}: one-sided sets differ");
                assert_eq!((up.n, up.m), (down.n, down.m));
                let up2 = two_sided_configurations(fx.q.source(), gens, &pulled).unwrap();
                let down2 = two_sided_configurations(fx.q.target(), &image, f).unwrap();
                assert_eq!(up2.tuples, down2.tuples, "{spec}: two-sided sets differ");
                cases += 1;
            }
        }
    }
    assert!(cases >= 100, "expected a substantial fixture sweep, got {cases}");
}

#[test]
fn block_translations_correspond_across_the_map() {
    for spec in QUOTIENTS {
        let fx = fixture(spec);
        let source = fx.q.source();
        let target = fx.q.target();
        let map = QuotientMap::Finite(fx.q.clone());
        let source_elements = source.elements().unwrap();
        for f in &fx.target_partitions {
            let pulled = pullback_partition(&map, f).unwrap();
            let up_blocks = pulled.blocks().unwrap();
            let down_blocks = f.blocks().unwrap();
            for g in &source_elements {
                let h = fx.q.apply(g).unwrap();
                for a in 0..pulled.m() {
                    let translated_up: BTreeSet<Element> =
                        up_blocks[a].iter().map(|x| source.mul(g, x)).collect();
                    let translated_down: BTreeSet<Element> =
                        down_blocks[a].iter().map(|y| target.mul(&h, y)).collect();
                    for b in 0..pulled.m() {
                        let up_set: BTreeSet<Element> = up_blocks[b].iter().cloned().collect();
                        let down_set: BTreeSet<Element> =
                            down_blocks[b].iter().cloned().collect();
                        assert_eq!(
                            translated_up.is_subset(&up_set),
                            translated_down.is_subset(&down_set),
                            "{spec}: translation containment disagrees",
                        );
                        assert_eq!(
                            translated_up == up_set,
                            translated_down == down_set,
                            "{spec}: translation equality disagrees",
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn index_paired_coarsenings_are_similar() {
    for spec in QUOTIENTS {
        let fx = fixture(spec);
        let map = QuotientMap::Finite(fx.q.clone());
        let source_elements = fx.q.source().elements().unwrap();
        let target_elements = fx.q.target().elements().unwrap();
        for f in &fx.target_partitions {
            let pulled = pullback_partition(&map, f).unwrap();
            for assignment in color_merges(f.m()) {
                let f_coarse = merged(&target_elements, f, &assignment);
                let p_coarse = merged(&source_elements, &pulled, &assignment);
                let witness = similar(
                    &source_elements,
                    &pulled,
                    &p_coarse,
                    &target_elements,
                    f,
                    &f_coarse,
                )
                .unwrap();
                assert!(witness.matches, "{spec}: index-paired coarsenings must be similar");
            }
        }
    }
}

#[test]
fn coarsening_both_sides_preserves_equality() {
    for spec in QUOTIENTS {
        let fx = fixture(spec);
        let map = QuotientMap::Finite(fx.q.clone());
        let source_elements = fx.q.source().elements().unwrap();
        let target_elements = fx.q.target().elements().unwrap();
        // Finest partition of the target: its merges sweep every coarsening.
        let finest = Partition::singletons(&target_elements).unwrap();
        let pulled = pullback_partition(&map, &finest).unwrap();
        for gens in fx.tuples.iter().take(3) {
            let image = fx.q.apply_tuple(gens).unwrap();
            for assignment in color_merges(finest.m()) {
                let f_coarse = merged(&target_elements, &finest, &assignment);
                let p_coarse = merged(&source_elements, &pulled, &assignment);
                let up = configurations(fx.q.source(), gens, &p_coarse).unwrap();
                let down = configurations(fx.q.target(), &image, &f_coarse).unwrap();
                assert_eq!(up.tuples, down.tuples, "{spec}: coarsened one-sided sets differ");
                let up2 = two_sided_configurations(fx.q.source(), gens, &p_coarse).unwrap();
                let down2 = two_sided_configurations(fx.q.target(), &image, &f_coarse).unwrap();
                assert_eq!(up2.tuples, down2.tuples, "{spec}: coarsened two-sided sets differ");
            }
        }
    }
}
