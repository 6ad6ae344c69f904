//! The verification suite: every acceptance criterion of the toolkit as an
//! executable check with exact assertions. `verify-all` and the dedicated
//! integration test target both run these and print one line per criterion.

use std::collections::BTreeMap;

use twistlab_core::arith::SplitMix64;
use twistlab_core::curve::Curve;
use twistlab_core::family::{
    self, Bound, FamilySpec,
};
use twistlab_core::gf::{make_field, Field};
use twistlab_core::localred::{
    big_monodromy_threshold, reduce_at_infinity, selmer_size_bound, tate_at_place, PlaceData,
    Reduction,
};
use twistlab_core::ortho::{five_dim_commutator_check, BlockLabel, Certainty, FormSpace};
use twistlab_core::polyring::Poly;

use crate::commands::random_gram;

pub struct CriterionOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, result: Result<String, String>) -> CriterionOutcome {
    match result {
        Ok(detail) => CriterionOutcome {
            name,
            passed: true,
            detail,
        },
        Err(detail) => CriterionOutcome {
            name,
            passed: false,
            detail,
        },
    }
}

/// Run every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        orbit_counts_full_group(),
        orbit_counts_commutator(),
        explicit_commutator_matrices(),
        twist_discriminant_identity(),
        reduction_behavior_laws(),
        builtin_family_certification(),
        configuration_space_counting(),
        height_bounded_completeness(),
        thresholds_and_bounds(),
    ]
}

/// Norm tally over all of `F_p^d`, computed directly from the gram matrix;
/// the independent reference the orbit blocks are compared against.
fn norm_tally(space: &FormSpace) -> BTreeMap<u64, u64> {
    let p = space.p();
    let d = space.dim();
    let total = (p as u128).pow(d as u32) as usize;
    let mut tally = BTreeMap::new();
    let mut v = vec![0u64; d];
    for mut idx in 0..total {
        for slot in v.iter_mut() {
            *slot = (idx % p as usize) as u64;
            idx /= p as usize;
        }
        *tally.entry(space.norm(&v)).or_insert(0u64) += 1;
    }
    tally
}

fn check_blocks_are_level_sets(space: &FormSpace, part: &twistlab_core::ortho::OrbitPartition) -> Result<(), String> {
    let tally = norm_tally(space);
    let p = space.p();
    if part.orbit_count() as u64 != p + 1 {
        return Err(format!(
            "expected {} blocks, found {}",
            p + 1,
            part.orbit_count()
        ));
    }
    let mut seen_zero = false;
    let mut seen_iso = false;
    let mut seen_norms = Vec::new();
    for block in &part.blocks {
        match block.label {
            BlockLabel::Zero => {
                if block.size != 1 {
                    return Err("zero block is not a singleton".to_string());
                }
                seen_zero = true;
            }
            BlockLabel::Isotropic => {
                let expect = tally.get(&0).copied().unwrap_or(0) - 1;
                if block.size != expect {
                    return Err(format!(
                        "isotropic block has size {} but the level set has {}",
                        block.size, expect
                    ));
                }
                seen_iso = true;
            }
            BlockLabel::Norm(nv) => {
                let expect = tally.get(&nv).copied().unwrap_or(0);
                if block.size != expect {
                    return Err(format!(
                        "norm-{} block has size {} but the level set has {}",
                        nv, block.size, expect
                    ));
                }
                seen_norms.push(nv);
            }
        }
    }
    seen_norms.sort_unstable();
    seen_norms.dedup();
    if !seen_zero || !seen_iso || seen_norms.len() as u64 != p - 1 {
        return Err("blocks do not cover {0}, isotropic, and every nonzero norm".to_string());
    }
    Ok(())
}

/// Orbit count of the full orthogonal group: p + 1 blocks coinciding with
/// the norm level sets, for every (p, d) in {3,5,7} x {3,4,5,6} with 20
/// seeded random nondegenerate grams each.
pub fn orbit_counts_full_group() -> CriterionOutcome {
    outcome("orbit-count-full-group", (|| {
        let mut instances = 0u64;
        for &p in &[3u64, 5, 7] {
            for &d in &[3usize, 4, 5, 6] {
                let mut rng = SplitMix64::new(0xacce_0001 ^ (p << 8) ^ d as u64);
                for _ in 0..20 {
                    let gram = random_gram(p, d, &mut rng);
                    let space = FormSpace::new(p, d, &gram)
                        .map_err(|e| format!("(p={p}, d={d}): {e}"))?;
                    let part = space
                        .orbit_partition_o()
                        .map_err(|e| format!("(p={p}, d={d}): {e}"))?;
                    check_blocks_are_level_sets(&space, &part)
                        .map_err(|e| format!("(p={p}, d={d}): {e}"))?;
                    instances += 1;
                }
            }
        }
        Ok(format!(
            "p + 1 blocks = norm level sets on {instances} random nondegenerate forms"
        ))
    })())
}

/// Commutator-subgroup orbit count reaches p + 1 with certainty "proved"
/// for (p, d) in {(3,5), (5,5), (3,6)}.
pub fn orbit_counts_commutator() -> CriterionOutcome {
    outcome("orbit-count-commutator", (|| {
        for &(p, d) in &[(3u64, 5usize), (5, 5), (3, 6)] {
            let space =
                FormSpace::identity_form(p, d).map_err(|e| format!("(p={p}, d={d}): {e}"))?;
            let (part, certainty) = space
                .orbit_partition_commutator(64)
                .map_err(|e| format!("(p={p}, d={d}): {e}"))?;
            if certainty != Certainty::Proved {
                return Err(format!("(p={p}, d={d}): certainty {certainty} not proved"));
            }
            if part.orbit_count() as u64 != p + 1 {
                return Err(format!(
                    "(p={p}, d={d}): {} blocks instead of {}",
                    part.orbit_count(),
                    p + 1
                ));
            }
            check_blocks_are_level_sets(&space, &part)
                .map_err(|e| format!("(p={p}, d={d}): {e}"))?;
        }
        Ok("p + 1 blocks proved for (3,5), (5,5), (3,6)".to_string())
    })())
}

/// The explicit 5x5 involutions and their commutator, bit-exact over F_5
/// and F_17.
pub fn explicit_commutator_matrices() -> CriterionOutcome {
    outcome("explicit-commutator-matrices", (|| {
        for &p in &[5u64, 17] {
            let check = five_dim_commutator_check(p).map_err(|e| format!("p={p}: {e}"))?;
            if !check.involutions_ok {
                return Err(format!("p={p}: psi or phi is not an involution"));
            }
            if !check.gram_preserved {
                return Err(format!("p={p}: form not preserved"));
            }
            if !check.matches_expected {
                return Err(format!("p={p}: commutator differs from the expected matrix"));
            }
            if !check.maps_v_to_w {
                return Err(format!("p={p}: commutator does not carry v to w"));
            }
        }
        Ok("involutions, form preservation, exact commutator matrix, v -> w".to_string())
    })())
}

fn random_poly(field: &Field, max_deg: usize, rng: &mut SplitMix64) -> Poly {
    let deg = (rng.below(max_deg as u64 + 1)) as usize;
    let q = field.order();
    let coeffs: Vec<_> = (0..=deg).map(|_| field.element_at(rng.below_u128(q))).collect();
    Poly::from_elems(field, coeffs)
}

fn random_squarefree(field: &Field, max_deg: usize, rng: &mut SplitMix64) -> Poly {
    loop {
        let f = random_poly(field, max_deg, rng);
        if f.is_zero() {
            continue;
        }
        if f.is_squarefree().unwrap() {
            return f;
        }
    }
}

fn random_curve(field: &Field, max_deg: usize, rng: &mut SplitMix64) -> Curve {
    loop {
        let a = random_poly(field, max_deg, rng);
        let b = random_poly(field, max_deg, rng);
        if let Ok(curve) = Curve::new(a, b) {
            return curve;
        }
    }
}

/// Exact identity disc(naive twist) = f^6 * disc(E) on 500 random pairs
/// over F_5 and F_7.
pub fn twist_discriminant_identity() -> CriterionOutcome {
    outcome("twist-discriminant-identity", (|| {
        let mut checked = 0u64;
        for &p in &[5u64, 7] {
            let field = make_field(p, 1, None).unwrap();
            let mut rng = SplitMix64::new(0xd15c ^ p);
            for _ in 0..250 {
                let curve = random_curve(&field, 3, &mut rng);
                let f = random_squarefree(&field, 3, &mut rng);
                let record = curve.quadratic_twist(&f).map_err(|e| format!("{e}"))?;
                let naive_a = curve.a().mul(&f.pow(2));
                let naive_b = curve.b().mul(&f.pow(3));
                if record.naive_model() != (naive_a.clone(), naive_b.clone()) {
                    return Err(format!(
                        "naive model mismatch for f = {f} on {curve}"
                    ));
                }
                let naive_disc = {
                    let four_a3 = naive_a.pow(3).mul_elem(&field.from_u64(4));
                    let t27_b2 = naive_b.pow(2).mul_elem(&field.from_u64(27));
                    four_a3.add(&t27_b2).mul_elem(&field.from_i64(-16))
                };
                if naive_disc != f.pow(6).mul(&curve.discriminant()) {
                    return Err(format!(
                        "discriminant identity failed for f = {f} on {curve}"
                    ));
                }
                checked += 1;
            }
        }
        Ok(format!("disc(naive twist) = f^6 * disc(E) on {checked} random pairs"))
    })())
}

enum FixturePlace {
    Finite(&'static [i64]),
    Infinity,
}

struct TateFixture {
    p: u64,
    a: &'static [i64],
    b: &'static [i64],
    place: FixturePlace,
    kind: &'static str,
    kodaira: Option<&'static str>,
    split: Option<bool>,
    tamagawa: u64,
    v_delta: u32,
}

/// Local reduction data at 35 places, frozen from an independent
/// brute-force oracle (pure-Python quotient-ring arithmetic, exhaustive
/// residue-field squareness tests and root counts, cross-checked against
/// the closed-form classification by discriminant and c4 valuations).
const TATE_FIXTURES: &[TateFixture] = &[
    TateFixture { p: 5, a: &[0, 1], b: &[0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("II"), split: None, tamagawa: 1, v_delta: 2 },
    TateFixture { p: 5, a: &[0, 1], b: &[0, 1], place: FixturePlace::Finite(&[3, 1]), kind: "multiplicative", kodaira: Some("I1"), split: Some(false), tamagawa: 1, v_delta: 1 },
    TateFixture { p: 5, a: &[0, 1], b: &[0, 1], place: FixturePlace::Infinity, kind: "additive", kodaira: Some("III*"), split: None, tamagawa: 2, v_delta: 9 },
    TateFixture { p: 5, a: &[1], b: &[0, 1], place: FixturePlace::Infinity, kind: "additive", kodaira: Some("II*"), split: None, tamagawa: 1, v_delta: 10 },
    TateFixture { p: 5, a: &[1], b: &[0, 1], place: FixturePlace::Finite(&[2, 0, 1]), kind: "multiplicative", kodaira: Some("I1"), split: Some(false), tamagawa: 1, v_delta: 1 },
    TateFixture { p: 5, a: &[0], b: &[0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("II"), split: None, tamagawa: 1, v_delta: 2 },
    TateFixture { p: 5, a: &[0], b: &[0, 1], place: FixturePlace::Infinity, kind: "additive", kodaira: Some("II*"), split: None, tamagawa: 1, v_delta: 10 },
    TateFixture { p: 5, a: &[0, 0, 1], b: &[0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I0*"), split: None, tamagawa: 1, v_delta: 6 },
    TateFixture { p: 5, a: &[0, 0, 1], b: &[0, 0, 0, 1], place: FixturePlace::Infinity, kind: "additive", kodaira: Some("I0*"), split: None, tamagawa: 1, v_delta: 6 },
    TateFixture { p: 5, a: &[0, 0, 3], b: &[0, 0, 0, 1, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I1*"), split: None, tamagawa: 4, v_delta: 7 },
    TateFixture { p: 5, a: &[0, 0, 2], b: &[0, 0, 0, 2, 2], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I1*"), split: None, tamagawa: 2, v_delta: 7 },
    TateFixture { p: 5, a: &[0, 0, 2], b: &[0, 0, 0, 2, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I2*"), split: None, tamagawa: 2, v_delta: 8 },
    TateFixture { p: 5, a: &[0, 0, 2], b: &[0, 0, 0, 2, 0, 2], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I2*"), split: None, tamagawa: 4, v_delta: 8 },
    TateFixture { p: 5, a: &[0, 0, 1], b: &[0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("IV"), split: None, tamagawa: 3, v_delta: 4 },
    TateFixture { p: 5, a: &[0, 0, 1], b: &[0, 0, 2], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("IV"), split: None, tamagawa: 1, v_delta: 4 },
    TateFixture { p: 5, a: &[0, 0, 0, 1], b: &[0, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("IV*"), split: None, tamagawa: 3, v_delta: 8 },
    TateFixture { p: 5, a: &[0, 0, 0, 1], b: &[0, 0, 0, 0, 3], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("IV*"), split: None, tamagawa: 1, v_delta: 8 },
    TateFixture { p: 5, a: &[0, 1], b: &[0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("III"), split: None, tamagawa: 2, v_delta: 3 },
    TateFixture { p: 5, a: &[0, 0, 0, 1], b: &[0, 0, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("III*"), split: None, tamagawa: 2, v_delta: 9 },
    TateFixture { p: 5, a: &[0, 0, 0, 0, 1], b: &[0, 0, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("II*"), split: None, tamagawa: 1, v_delta: 10 },
    TateFixture { p: 5, a: &[0, 0, 2], b: &[0, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I0*"), split: None, tamagawa: 2, v_delta: 6 },
    TateFixture { p: 5, a: &[0, 0, 1], b: &[0, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("I0*"), split: None, tamagawa: 4, v_delta: 6 },
    TateFixture { p: 5, a: &[2], b: &[2, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "multiplicative", kodaira: Some("I2"), split: Some(false), tamagawa: 2, v_delta: 2 },
    TateFixture { p: 5, a: &[3], b: &[1, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "multiplicative", kodaira: Some("I2"), split: Some(true), tamagawa: 2, v_delta: 2 },
    TateFixture { p: 5, a: &[3], b: &[1, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "multiplicative", kodaira: Some("I3"), split: Some(true), tamagawa: 3, v_delta: 3 },
    TateFixture { p: 5, a: &[2], b: &[2, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "multiplicative", kodaira: Some("I3"), split: Some(false), tamagawa: 1, v_delta: 3 },
    TateFixture { p: 5, a: &[3], b: &[1, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "multiplicative", kodaira: Some("I4"), split: Some(true), tamagawa: 4, v_delta: 4 },
    TateFixture { p: 5, a: &[2], b: &[2, 0, 0, 0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "multiplicative", kodaira: Some("I4"), split: Some(false), tamagawa: 2, v_delta: 4 },
    TateFixture { p: 5, a: &[0, 1], b: &[1], place: FixturePlace::Finite(&[0, 1]), kind: "good", kodaira: None, split: None, tamagawa: 1, v_delta: 0 },
    TateFixture { p: 7, a: &[0, 1], b: &[0, 1], place: FixturePlace::Finite(&[0, 1]), kind: "additive", kodaira: Some("II"), split: None, tamagawa: 1, v_delta: 2 },
    TateFixture { p: 7, a: &[0, 1], b: &[0, 1], place: FixturePlace::Finite(&[5, 1]), kind: "multiplicative", kodaira: Some("I1"), split: Some(false), tamagawa: 1, v_delta: 1 },
    TateFixture { p: 7, a: &[0, 1], b: &[0, 1], place: FixturePlace::Infinity, kind: "additive", kodaira: Some("III*"), split: None, tamagawa: 2, v_delta: 9 },
    TateFixture { p: 7, a: &[1], b: &[0, 1], place: FixturePlace::Finite(&[5, 1]), kind: "multiplicative", kodaira: Some("I1"), split: Some(false), tamagawa: 1, v_delta: 1 },
    TateFixture { p: 7, a: &[1], b: &[0, 1], place: FixturePlace::Infinity, kind: "additive", kodaira: Some("II*"), split: None, tamagawa: 1, v_delta: 10 },
    TateFixture { p: 11, a: &[0, 1], b: &[0, 1], place: FixturePlace::Finite(&[4, 1]), kind: "multiplicative", kodaira: Some("I1"), split: Some(true), tamagawa: 1, v_delta: 1 },
];

fn compare_place_data(data: &PlaceData, fixture: &TateFixture) -> Result<(), String> {
    let (kind, kodaira, split) = match &data.reduction {
        Reduction::Good => ("good", None, None),
        Reduction::Multiplicative { split, n } => {
            ("multiplicative", Some(format!("I{n}")), Some(*split))
        }
        Reduction::Additive { kodaira } => ("additive", Some(format!("{kodaira}")), None),
    };
    if kind != fixture.kind
        || kodaira.as_deref() != fixture.kodaira
        || split != fixture.split
        || data.tamagawa != fixture.tamagawa
        || data.v_delta_min != fixture.v_delta
    {
        return Err(format!(
            "got ({kind}, {kodaira:?}, split {split:?}, c = {}, v = {}), expected ({}, {:?}, split {:?}, c = {}, v = {})",
            data.tamagawa,
            data.v_delta_min,
            fixture.kind,
            fixture.kodaira,
            fixture.split,
            fixture.tamagawa,
            fixture.v_delta
        ));
    }
    Ok(())
}

/// The reduction-behavior laws under twisting on 200 twists of a fixed
/// curve with a multiplicative place, after validating the local data
/// against the oracle fixture table.
pub fn reduction_behavior_laws() -> CriterionOutcome {
    outcome("reduction-behavior-laws", (|| {
        // Oracle cross-validation first.
        for (i, fixture) in TATE_FIXTURES.iter().enumerate() {
            let field = make_field(fixture.p, 1, None).unwrap();
            let curve = Curve::new(
                Poly::from_ints(&field, fixture.a),
                Poly::from_ints(&field, fixture.b),
            )
            .map_err(|e| format!("fixture {i}: {e}"))?;
            let data = match fixture.place {
                FixturePlace::Finite(coeffs) => {
                    let pi = Poly::from_ints(&field, coeffs);
                    tate_at_place(&curve, &pi).map_err(|e| format!("fixture {i}: {e}"))?
                }
                FixturePlace::Infinity => reduce_at_infinity(&curve),
            };
            compare_place_data(&data, fixture).map_err(|e| format!("fixture {i}: {e}"))?;
        }

        // Laws (a)-(d) on twists of (t, t) over F_5: multiplicative at
        // t + 3, additive at t.
        let field = make_field(5, 1, None).unwrap();
        let base = Curve::new(
            Poly::from_ints(&field, &[0, 1]),
            Poly::from_ints(&field, &[0, 1]),
        )
        .unwrap();
        let mult_place = Poly::from_ints(&field, &[3, 1]);
        let add_place = Poly::gen(&field);
        let bad = mult_place.mul(&add_place);
        let base_at: BTreeMap<String, PlaceData> = [
            ("t".to_string(), tate_at_place(&base, &add_place).unwrap()),
            ("t+3".to_string(), tate_at_place(&base, &mult_place).unwrap()),
        ]
        .into();

        let mut rng = SplitMix64::new(0x1a35);
        let mut counts = [0u64; 4];
        for i in 0..200u64 {
            // Force coverage of all divisibility patterns.
            let with_mult = i % 4 == 1 || i % 4 == 3;
            let with_add = i % 4 == 2 || i % 4 == 3;
            let g = loop {
                let cand = random_squarefree(&field, 3, &mut rng);
                if cand.gcd(&bad).is_constant() {
                    break cand;
                }
            };
            let mut f = g.clone();
            if with_mult {
                f = f.mul(&mult_place);
            }
            if with_add {
                f = f.mul(&add_place);
            }
            let twisted = base.quadratic_twist(&f).unwrap().normalized_model;

            for pi in f.factor().unwrap().distinct() {
                let data = tate_at_place(&twisted, &pi).unwrap();
                if pi == mult_place {
                    // (a) multiplicative places dividing f become additive.
                    if !data.reduction.is_additive() {
                        return Err(format!("law (a) failed at {pi} for f = {f}"));
                    }
                    counts[0] += 1;
                } else if pi == add_place {
                    // (b) additive places dividing f stay additive.
                    if !data.reduction.is_additive() {
                        return Err(format!("law (b) failed at {pi} for f = {f}"));
                    }
                    counts[1] += 1;
                } else {
                    // (c) places dividing the coprime part: additive with
                    // Tamagawa factor at most 4.
                    if !data.reduction.is_additive() || data.tamagawa > 4 {
                        return Err(format!(
                            "law (c) failed at {pi} for f = {f}: c = {}",
                            data.tamagawa
                        ));
                    }
                    counts[2] += 1;
                }
            }
            // (d) bad places of the base not dividing f: reduction type
            // unchanged, Tamagawa equal or in {1, 2, 3}.
            for (name, rho) in [("t", &add_place), ("t+3", &mult_place)] {
                if rho.divides(&f) {
                    continue;
                }
                let before = &base_at[name];
                let after = tate_at_place(&twisted, rho).unwrap();
                let same_type = match (&before.reduction, &after.reduction) {
                    (Reduction::Good, Reduction::Good) => true,
                    (
                        Reduction::Multiplicative { n: n1, .. },
                        Reduction::Multiplicative { n: n2, .. },
                    ) => n1 == n2,
                    (
                        Reduction::Additive { kodaira: k1 },
                        Reduction::Additive { kodaira: k2 },
                    ) => k1 == k2,
                    _ => false,
                };
                if !same_type {
                    return Err(format!("law (d) type changed at {rho} for f = {f}"));
                }
                let c_ok = after.tamagawa == before.tamagawa
                    || matches!(after.tamagawa, 1..=3);
                if !c_ok {
                    return Err(format!(
                        "law (d) Tamagawa changed at {rho} for f = {f}: {} -> {}",
                        before.tamagawa, after.tamagawa
                    ));
                }
                counts[3] += 1;
            }
        }
        Ok(format!(
            "{} oracle fixtures exact; laws (a)-(d) held on 200 twists (hits: a={}, b={}, c={}, d={})",
            TATE_FIXTURES.len(),
            counts[0],
            counts[1],
            counts[2],
            counts[3]
        ))
    })())
}

/// The built-in family with no multiplicative reduction away from infinity:
/// certified over F_5, F_7, F_11, and stable under every square-free twist
/// of degree at most 2.
pub fn builtin_family_certification() -> CriterionOutcome {
    outcome("no-multiplicative-family", (|| {
        let mut twists_checked = 0u64;
        for &p in &[5u64, 7, 11] {
            let field = make_field(p, 1, None).unwrap();
            let fam = family::no_multiplicative_family(&field)
                .map_err(|e| format!("F_{p}: {e}"))?;
            let one = Poly::one(&field);
            for (_, f) in family::enumerate_f_up_to(&field, 2, &one) {
                let twisted = fam
                    .curve
                    .quadratic_twist(&f)
                    .map_err(|e| format!("F_{p}, f = {f}: {e}"))?
                    .normalized_model;
                if twistlab_core::localred::has_multiplicative_away_from_infinity(&twisted) {
                    return Err(format!(
                        "F_{p}: twist by {f} acquired a finite multiplicative place"
                    ));
                }
                twists_checked += 1;
            }
        }
        Ok(format!(
            "certified over F_5, F_7, F_11; no finite multiplicative place on {twists_checked} twists"
        ))
    })())
}

/// Counting: the sieve identity matches exhaustive enumeration everywhere
/// both run, and the density ratio increases toward 1 in q at fixed n.
pub fn configuration_space_counting() -> CriterionOutcome {
    outcome("configuration-space-counting", (|| {
        let mut agreements = 0u64;
        for &(p, k) in &[(5u64, 1u32), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2)] {
            let field = make_field(p, k, None).unwrap();
            let q = field.order();
            let t = Poly::gen(&field);
            let deltas = [
                Poly::one(&field),
                t.clone(),
                Poly::from_ints(&field, &[1, 0, 1]),
                t.mul(&Poly::from_ints(&field, &[1, 1])),
            ];
            let mut n = 0u64;
            loop {
                let candidates = match q.checked_pow(n as u32 + 1) {
                    Some(c) => c,
                    None => break,
                };
                if candidates > 100_000 {
                    break;
                }
                for delta in &deltas {
                    let by_enum = family::count_fn_enumerated(&field, n, delta);
                    let by_sieve = family::count_fn_sieve(&field, n, delta)
                        .map_err(|e| format!("q={q}, n={n}: {e}"))?;
                    let combined = family::count_fn(&field, n, delta)
                        .map_err(|e| format!("q={q}, n={n}: {e}"))?;
                    if by_enum != by_sieve || combined.exact != by_enum {
                        return Err(format!(
                            "q={q}, n={n}, delta={delta}: enumeration {by_enum} vs sieve {by_sieve}"
                        ));
                    }
                    if combined.leading_term != q.pow(n as u32 + 1) {
                        return Err(format!("q={q}, n={n}: wrong leading term"));
                    }
                    agreements += 1;
                }
                n += 1;
            }
        }
        // Density trend at fixed n = 2 across q in {5, 7, 11, 13}: the
        // ratio exact / q^3 increases toward 1 (compared exactly as
        // fractions).
        for delta_of in [
            |f: &Field| Poly::one(f),
            |f: &Field| Poly::gen(f),
        ] {
            let mut prev: Option<(u128, u128)> = None;
            for &p in &[5u64, 7, 11, 13] {
                let field = make_field(p, 1, None).unwrap();
                let delta = delta_of(&field);
                let count = family::count_fn(&field, 2, &delta).unwrap();
                if let Some((pe, pl)) = prev {
                    if count.exact * pl <= pe * count.leading_term {
                        return Err(format!(
                            "density ratio not increasing at q = {p} (delta = {delta})"
                        ));
                    }
                }
                prev = Some((count.exact, count.leading_term));
            }
        }
        Ok(format!(
            "sieve = enumeration on {agreements} (q, n, delta) instances; density ratio increasing at n = 2"
        ))
    })())
}

/// Height-bounded enumeration equals brute force for every bound up to 12
/// on a fixed curve over F_5, and the degree bound on the coprime part is
/// equivalent to the height bound in both directions.
pub fn height_bounded_completeness() -> CriterionOutcome {
    outcome("height-bounded-completeness", (|| {
        let field = make_field(5, 1, None).unwrap();
        let base = Curve::new(
            Poly::from_ints(&field, &[0, 1]),
            Poly::from_ints(&field, &[0, 1]),
        )
        .unwrap();
        let one = Poly::one(&field);
        // Brute force over every square-free f of degree <= 3.
        let mut brute: Vec<(Poly, u64)> = Vec::new();
        for (_, f) in family::enumerate_f_up_to(&field, 3, &one) {
            let h = base.quadratic_twist(&f).unwrap().normalized_model.height();
            brute.push((f, h));
        }
        let mut members_checked = 0u64;
        for n in 0..=12u64 {
            let spec = FamilySpec::new(base.clone(), Bound::Height(n)).unwrap();
            let enumeration = family::enumerate_height_bounded(&spec)
                .map_err(|e| format!("n={n}: {e}"))?;
            let mut expected: Vec<String> = brute
                .iter()
                .filter(|(_, h)| *h <= n)
                .map(|(f, _)| format!("{f}"))
                .collect();
            expected.sort();
            let mut got: Vec<String> = enumeration
                .members
                .iter()
                .map(|m| format!("{}", m.f))
                .collect();
            got.sort();
            if got != expected {
                return Err(format!(
                    "n={n}: enumerated {} members, brute force found {}",
                    got.len(),
                    expected.len()
                ));
            }
            // Case-1 equivalence in both directions on every brute-force f
            // with a = 0: h(E_f) <= n iff deg g <= (n - M_J)/6.
            for (f, h) in &brute {
                let d = family::decompose_twist(f, &spec).unwrap();
                if d.a != 0 {
                    continue;
                }
                let g_deg = d.g.degree().unwrap_or(0) as u64;
                let degree_side = n >= d.m_j && g_deg <= (n - d.m_j) / 6;
                if (*h <= n) != degree_side {
                    return Err(format!(
                        "n={n}, f={f}: height side {} but degree side {}",
                        *h <= n,
                        degree_side
                    ));
                }
            }
            // Members with a = 0 keep the multiplicative place.
            let pi0 = spec.pi0().unwrap().clone();
            for m in &enumeration.members {
                members_checked += 1;
                if m.decomposition.a == 0 {
                    let data = tate_at_place(&m.twist.normalized_model, &pi0).unwrap();
                    if !data.reduction.is_multiplicative() {
                        return Err(format!(
                            "n={n}, f={}: multiplicative place lost",
                            m.f
                        ));
                    }
                }
            }
        }
        Ok(format!(
            "set equality with brute force for n = 0..12 ({} memberships); degree/height equivalence two-sided",
            members_checked
        ))
    })())
}

/// The genus-0 big-monodromy threshold is 15, and every family member's
/// dimension obeys the exponent bound 2n + 4.
pub fn thresholds_and_bounds() -> CriterionOutcome {
    outcome("thresholds-and-bounds", (|| {
        if big_monodromy_threshold(0) != 15 {
            return Err(format!(
                "genus-0 threshold is {}",
                big_monodromy_threshold(0)
            ));
        }
        let field = make_field(5, 1, None).unwrap();
        let base = Curve::new(
            Poly::from_ints(&field, &[0, 1]),
            Poly::from_ints(&field, &[0, 1]),
        )
        .unwrap();
        let n = 12u64;
        let spec = FamilySpec::new(base.clone(), Bound::Height(n)).unwrap();
        let stats = family::family_selmer_stats(&spec, 17).map_err(|e| format!("{e}"))?;
        let bound = 2 * n + 4;
        for row in &stats.rows {
            if row.selmer_dim > bound {
                return Err(format!(
                    "f = {}: dimension {} exceeds 2n + 4 = {bound}",
                    row.f, row.selmer_dim
                ));
            }
        }
        if stats.reference_average != 18 {
            return Err("reference average is not p + 1".to_string());
        }
        // Size-bound exponent agrees with min(dim, 2n + 4).
        let dim = twistlab_core::localred::selmer_dimension(&base, 17)
            .map_err(|e| format!("{e}"))?
            .dimension;
        for probe_n in [0u64, 1, 2, 5, 100] {
            let expect = dim.min(2 * probe_n + 4);
            let got = selmer_size_bound(&base, 17, probe_n).map_err(|e| format!("{e}"))?;
            if got != expect {
                return Err(format!("size bound at n = {probe_n}: {got} != {expect}"));
            }
        }
        Ok(format!(
            "threshold(0) = 15; every dimension <= {bound} across {} members; reference p + 1 = 18",
            stats.family_size
        ))
    })())
}

