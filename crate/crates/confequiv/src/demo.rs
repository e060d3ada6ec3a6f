//! Demonstration battery for the matrix-group construction: the four
//! generator identities checked against a literal 3×3 matrix oracle,
//! automorphism and inversion checks on random samples, and the
//! torsion/order distinction between the two quotient views.

use confequiv::kgroup::{self, KElement, OrderBound, QuotientMode};
use confequiv::laurent::LaurentPoly;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeSet;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub struct DemoOutcome {
    pub checks: Vec<Check>,
}

impl DemoOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_value(&self) -> Value {
        json!({
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "all_passed": self.all_passed(),
        })
    }
}

#[derive(Clone, Copy)]
pub struct Selection {
    pub identities: bool,
    pub phi: bool,
    pub orders: bool,
}

pub struct Settings {
    pub seed: u64,
    pub samples: usize,
    pub m_lo: i64,
    pub m_hi: i64,
    pub max_word_len: usize,
    pub order_bound: u64,
    pub select: Selection,
}

type Mat = [[LaurentPoly; 3]; 3];

/// The defining matrix: rows [1 B D; 0 A C; 0 0 1] with A = t^a.
fn to_matrix(x: &KElement) -> Mat {
    let z = LaurentPoly::zero;
    [
        [LaurentPoly::one(), x.b.clone(), x.d.clone()],
        [z(), LaurentPoly::monomial(x.a, 1), x.c.clone()],
        [z(), z(), LaurentPoly::one()],
    ]
}

fn mat_mul(p: &Mat, q: &Mat) -> Mat {
    let mut out: Mat =
        std::array::from_fn(|_| std::array::from_fn(|_| LaurentPoly::zero()));
    for (i, row) in p.iter().enumerate() {
        for j in 0..3 {
            let mut acc = LaurentPoly::zero();
            for (k, entry) in row.iter().enumerate() {
                acc = acc.add(&entry.mul(&q[k][j]));
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Reads a product matrix back into coordinates, checking the
/// unitriangular shape and that the middle entry stays a monic monomial.
fn from_matrix(m: &Mat) -> Option<KElement> {
    let one = LaurentPoly::one();
    if m[0][0] != one || m[2][2] != one {
        return None;
    }
    if !m[1][0].is_zero() || !m[2][0].is_zero() || !m[2][1].is_zero() {
        return None;
    }
    let a_entry = &m[1][1];
    let deg = a_entry.min_degree()?;
    if a_entry.max_degree() != Some(deg) || a_entry.coeff(deg) != 1.into() {
        return None;
    }
    Some(KElement::new(deg, m[0][1].clone(), m[1][2].clone(), m[0][2].clone()))
}

fn oracle_mul(x: &KElement, y: &KElement) -> Option<KElement> {
    from_matrix(&mat_mul(&to_matrix(x), &to_matrix(y)))
}

fn pow(x: &KElement, m: i64, mode: QuotientMode) -> KElement {
    let base = if m >= 0 { x.clone() } else { kgroup::inv(x, mode) };
    let mut acc = KElement::identity();
    for _ in 0..m.unsigned_abs() {
        acc = kgroup::mul(&acc, &base, mode);
    }
    acc
}

/// Product of a word both ways: through the group law and through literal
/// matrix multiplication. Returns (group result, oracle agreement).
fn both_ways(word: &[KElement]) -> (KElement, bool) {
    let mut acc = KElement::identity();
    for w in word {
        acc = kgroup::mul(&acc, w, QuotientMode::None);
    }
    let mut mat = to_matrix(&KElement::identity());
    for w in word {
        mat = mat_mul(&mat, &to_matrix(w));
    }
    let agrees = from_matrix(&mat).as_ref() == Some(&acc);
    (acc, agrees)
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let terms = rng.gen_range(0..=3usize);
    LaurentPoly::from_terms(
        (0..terms).map(|_| (rng.gen_range(-4..=4i64), rng.gen_range(-5..=5i64))),
    )
}

fn random_element(rng: &mut ChaCha8Rng) -> KElement {
    KElement::new(
        rng.gen_range(-3..=3i64),
        random_poly(rng),
        random_poly(rng),
        random_poly(rng),
    )
}

fn identity_checks(checks: &mut Vec<Check>, m_lo: i64, m_hi: i64) {
    let k1 = KElement::k1();
    let k2 = KElement::k2();
    let k3 = KElement::k3();
    let mono = |m: i64| LaurentPoly::monomial(m, 1);
    let z = LaurentPoly::zero;
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0usize;
    for m in m_lo..=m_hi {
        checked += 1;
        let mut word_pow: Vec<KElement> = Vec::new();
        let letter = if m >= 0 { k1.clone() } else { kgroup::inv(&k1, QuotientMode::None) };
        for _ in 0..m.unsigned_abs() {
            word_pow.push(letter.clone());
        }
        // k1^m = (t^m, 0, 0, 0)
        let (p, ok) = both_ways(&word_pow);
        if !ok || p != KElement::new(m, z(), z(), z()) {
            failures.push(format!("k1^{m}"));
        }
        // k1^-m · k2 · k1^m = (1, t^m, 0, 0)
        let u_word: Vec<KElement> = [pow(&k1, -m, QuotientMode::None), k2.clone(), pow(&k1, m, QuotientMode::None)].to_vec();
        let (u, ok) = both_ways(&u_word);
        if !ok || u != KElement::new(0, mono(m), z(), z()) {
            failures.push(format!("k1^-{m}·k2·k1^{m}"));
        }
        // k1^m · k3 · k1^-m = (1, 0, t^m, 0)
        let (v, ok) = both_ways(&[
            pow(&k1, m, QuotientMode::None),
            k3.clone(),
            pow(&k1, -m, QuotientMode::None),
        ]);
        if !ok || v != KElement::new(0, z(), mono(m), z()) {
            failures.push(format!("k1^{m}·k3·k1^-{m}"));
        }
        // the commutator of k3 and u is central with D = ±t^m
        let (w, ok) = both_ways(&[
            k3.clone(),
            u.clone(),
            kgroup::inv(&k3, QuotientMode::None),
            kgroup::inv(&u, QuotientMode::None),
        ]);
        let central_tm = kgroup::is_central(&w)
            && (w.d == mono(m) || w.d == LaurentPoly::monomial(m, -1));
        if !ok || !central_tm {
            failures.push(format!("[k3, k1^-{m}·k2·k1^{m}]"));
        }
    }
    checks.push(Check {
        name: "generator-identities",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("4 identity families × {checked} exponents agree with the matrix oracle")
        } else {
            format!("failed: {}", failures.join(", "))
        },
    });
}

fn mul_agreement_check(checks: &mut Vec<Check>, rng: &mut ChaCha8Rng, samples: usize) {
    let mut disagreements = 0usize;
    for _ in 0..samples {
        let x = random_element(rng);
        let y = random_element(rng);
        let product = kgroup::mul(&x, &y, QuotientMode::None);
        if oracle_mul(&x, &y).as_ref() != Some(&product) {
            disagreements += 1;
        }
    }
    checks.push(Check {
        name: "product-matrix-oracle",
        passed: disagreements == 0,
        detail: format!("{samples} random products, {disagreements} disagreements"),
    });
}

fn phi_checks(checks: &mut Vec<Check>, rng: &mut ChaCha8Rng, samples: usize) {
    let mut not_multiplicative = 0usize;
    let mut not_inverted = 0usize;
    for _ in 0..samples {
        let x = random_element(rng);
        let y = random_element(rng);
        let lhs = kgroup::phi(&kgroup::mul(&x, &y, QuotientMode::None), QuotientMode::None)
            .expect("the automorphism is defined on the full view");
        let px = kgroup::phi(&x, QuotientMode::None).unwrap();
        let py = kgroup::phi(&y, QuotientMode::None).unwrap();
        if lhs != kgroup::mul(&px, &py, QuotientMode::None) {
            not_multiplicative += 1;
        }
        // the explicit inverse (A, B, t⁻¹C, t⁻¹D)
        let back = KElement::new(px.a, px.b.clone(), px.c.shift(-1), px.d.shift(-1));
        if back != x {
            not_inverted += 1;
        }
    }
    checks.push(Check {
        name: "automorphism-multiplicative",
        passed: not_multiplicative == 0,
        detail: format!("{samples} random pairs, {not_multiplicative} failures"),
    });
    checks.push(Check {
        name: "automorphism-invertible",
        passed: not_inverted == 0,
        detail: format!("{samples} random elements, {not_inverted} failures"),
    });
}

fn order_checks(checks: &mut Vec<Check>, max_word_len: usize, order_bound: u64) {
    let u = KElement::new(0, LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one());
    let in_h = kgroup::order_bounded(&u, QuotientMode::Mod2ZN1, order_bound);
    checks.push(Check {
        name: "torsion-element-in-h",
        passed: in_h == OrderBound::Finite(2),
        detail: format!("(1,0,0,1) has order {in_h:?} in the parity quotient"),
    });
    // the same D-coordinate lies inside the subgroup the other quotient
    // kills, so its image there is trivial; the central witness with a
    // negative-degree D-part is the one with unbounded order
    let g_image_trivial = kgroup::reduce(&u, QuotientMode::ModN0).is_identity();
    let witness = KElement::new(
        0,
        LaurentPoly::zero(),
        LaurentPoly::zero(),
        LaurentPoly::monomial(-1, 1),
    );
    let in_g = kgroup::order_bounded(&witness, QuotientMode::ModN0, order_bound);
    checks.push(Check {
        name: "unbounded-order-in-g",
        passed: g_image_trivial && in_g == OrderBound::ExceedsBound,
        detail: format!(
            "(1,0,0,1) reduces to the identity there; (1,0,0,t^-1) exceeds order bound {order_bound}"
        ),
    });
    // bounded torsion search: no nonidentity element reachable by words of
    // length ≤ max_word_len over the generator images has finite order
    let gens: Vec<KElement> = {
        let base = [KElement::k1(), KElement::k2(), KElement::k3()];
        let mut g: Vec<KElement> = base
            .iter()
            .map(|k| kgroup::reduce(k, QuotientMode::ModN0))
            .collect();
        let invs: Vec<KElement> =
            g.iter().map(|k| kgroup::inv(k, QuotientMode::ModN0)).collect();
        g.extend(invs);
        g
    };
    let mut seen: BTreeSet<KElement> = BTreeSet::new();
    seen.insert(KElement::identity());
    let mut frontier = vec![KElement::identity()];
    for _ in 0..max_word_len {
        let mut next = Vec::new();
        for x in &frontier {
            for g in &gens {
                let y = kgroup::mul(x, g, QuotientMode::ModN0);
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let mut torsion: Option<(KElement, u64)> = None;
    let mut checked = 0usize;
    for x in &seen {
        if x.is_identity() {
            continue;
        }
        checked += 1;
        if let OrderBound::Finite(k) = kgroup::order_bounded(x, QuotientMode::ModN0, order_bound) {
            torsion = Some((x.clone(), k));
            break;
        }
    }
    checks.push(Check {
        name: "torsion-search-in-g",
        passed: torsion.is_none(),
        detail: match &torsion {
            None => format!(
                "{checked} distinct nonidentity elements from words of length ≤ {max_word_len}, \
                 none with order ≤ {order_bound}"
            ),
            Some((x, k)) => format!("found torsion: {x} has order {k}"),
        },
    });
}

pub fn run(settings: &Settings) -> DemoOutcome {
    let all = !(settings.select.identities || settings.select.phi || settings.select.orders);
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    if all || settings.select.identities {
        identity_checks(&mut checks, settings.m_lo, settings.m_hi);
        mul_agreement_check(&mut checks, &mut rng, settings.samples);
    }
    if all || settings.select.phi {
        phi_checks(&mut checks, &mut rng, settings.samples);
    }
    if all || settings.select.orders {
        order_checks(&mut checks, settings.max_word_len, settings.order_bound);
    }
    DemoOutcome { checks }
}
