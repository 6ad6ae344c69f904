//! Property tests for the orthogonal-group machinery: form preservation,
//! orbit structure across a grid of parameters, and the commutator
//! certification.

use twistlab_core::arith::SplitMix64;
use twistlab_core::ortho::{BlockLabel, Certainty, FormSpace};

fn random_gram(p: u64, d: usize, rng: &mut SplitMix64) -> Vec<Vec<u64>> {
    loop {
        let mut rows = vec![vec![0u64; d]; d];
        for i in 0..d {
            for j in i..d {
                let v = rng.below(p);
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        if FormSpace::new(p, d, &rows).is_ok() {
            return rows;
        }
    }
}

#[test]
fn every_returned_isometry_preserves_the_form() {
    let mut rng = SplitMix64::new(101);
    for &(p, d) in &[(3u64, 3usize), (5, 4), (7, 3)] {
        let gram = random_gram(p, d, &mut rng);
        let space = FormSpace::new(p, d, &gram).unwrap();
        for _ in 0..50 {
            let v: Vec<u64> = (0..d).map(|_| rng.below(p)).collect();
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            if space.norm(&v) != 0 {
                let r = space.reflection(&v).unwrap();
                assert!(space.preserves_form(&r));
                assert!(r.compose(&r).is_identity());
            }
            let w: Vec<u64> = (0..d).map(|_| rng.below(p)).collect();
            if w.iter().all(|&c| c == 0) || space.norm(&v) != space.norm(&w) {
                continue;
            }
            if space.norm(&v) == 0 && d < 3 {
                continue;
            }
            let iso = space.witt_extend(&v, &w).unwrap();
            assert!(space.preserves_form(&iso));
            assert_eq!(iso.apply(&v), w);
        }
    }
}

#[test]
fn orbit_counts_across_grid_with_random_grams() {
    // p + 1 orbits for identity and random nondegenerate grams at small
    // parameters; blocks stay unions of norm level sets by construction,
    // and here they are exactly the level sets.
    let mut rng = SplitMix64::new(0x9a9a);
    for &p in &[3u64, 5] {
        for &d in &[3usize, 4] {
            for use_random in [false, true] {
                let gram = if use_random {
                    random_gram(p, d, &mut rng)
                } else {
                    (0..d)
                        .map(|i| (0..d).map(|j| u64::from(i == j)).collect())
                        .collect()
                };
                let space = FormSpace::new(p, d, &gram).unwrap();
                let part = space.orbit_partition_o().unwrap();
                assert_eq!(part.orbit_count() as u64, p + 1, "(p, d) = ({p}, {d})");
                // Level-set sizes from a direct norm tally.
                let total = (p as usize).pow(d as u32);
                let mut tally = std::collections::BTreeMap::new();
                let mut v = vec![0u64; d];
                for mut idx in 0..total {
                    for slot in v.iter_mut() {
                        *slot = (idx % p as usize) as u64;
                        idx /= p as usize;
                    }
                    *tally.entry(space.norm(&v)).or_insert(0u64) += 1;
                }
                for block in &part.blocks {
                    let expect = match block.label {
                        BlockLabel::Zero => 1,
                        BlockLabel::Isotropic => tally[&0] - 1,
                        BlockLabel::Norm(nv) => tally[&nv],
                    };
                    assert_eq!(block.size, expect);
                }
            }
        }
    }
}

#[test]
fn commutator_partition_is_proved_at_small_parameters() {
    let space = FormSpace::identity_form(5, 5).unwrap();
    let (part, certainty) = space.orbit_partition_commutator(64).unwrap();
    assert_eq!(certainty, Certainty::Proved);
    assert_eq!(part.orbit_count(), 6);
}

#[test]
fn starved_commutator_budget_is_inconclusive() {
    // With a budget of zero generators nothing merges: the partition is the
    // discrete one and the certainty flag says so.
    let space = FormSpace::identity_form(3, 5).unwrap();
    let (part, certainty) = space.orbit_partition_commutator(0).unwrap();
    assert_eq!(certainty, Certainty::InconclusiveUpperRefinement);
    assert_eq!(part.orbit_count(), 243);
}

#[test]
fn witt_round_trip_fixes_the_source_vector() {
    let space = FormSpace::identity_form(7, 4).unwrap();
    let mut rng = SplitMix64::new(3456);
    let mut done = 0;
    while done < 60 {
        let v: Vec<u64> = (0..4).map(|_| rng.below(7)).collect();
        let w: Vec<u64> = (0..4).map(|_| rng.below(7)).collect();
        if v.iter().all(|&c| c == 0) || w.iter().all(|&c| c == 0) {
            continue;
        }
        if space.norm(&v) != space.norm(&w) {
            continue;
        }
        let forward = space.witt_extend(&v, &w).unwrap();
        let back = space.witt_extend(&w, &v).unwrap();
        let round = back.compose(&forward);
        assert_eq!(round.apply(&v), v);
        assert!(space.preserves_form(&round));
        done += 1;
    }
}
