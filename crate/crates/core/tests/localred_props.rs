//! Property tests for local reduction data: valuation bookkeeping,
//! conservation across places, and the behavior of reduction types under
//! twisting.

use twistlab_core::arith::SplitMix64;
use twistlab_core::curve::Curve;
use twistlab_core::family::{enumerate_f_up_to, no_multiplicative_family};
use twistlab_core::gf::{make_field, Field};
use twistlab_core::localred::{
    has_multiplicative_away_from_infinity, reduction_divisors, tate_at_place, Place,
};
use twistlab_core::polyring::Poly;

fn random_curve(field: &Field, max_deg: usize, rng: &mut SplitMix64) -> Curve {
    loop {
        let deg_a = rng.below(max_deg as u64 + 1) as usize;
        let deg_b = rng.below(max_deg as u64 + 1) as usize;
        let a = Poly::from_elems(
            field,
            (0..=deg_a).map(|_| field.element_at(rng.below_u128(field.order()))).collect(),
        );
        let b = Poly::from_elems(
            field,
            (0..=deg_b).map(|_| field.element_at(rng.below_u128(field.order()))).collect(),
        );
        if let Ok(curve) = Curve::new(a, b) {
            return curve;
        }
    }
}

#[test]
fn valuations_conserve_discriminant_degree() {
    // Finite minimal-discriminant valuations sum (weighted by residue
    // degree) to deg(disc); the infinity contribution tops the total up to
    // the 12 e of the clearing scale.
    for &p in &[5u64, 7] {
        let field = make_field(p, 1, None).unwrap();
        let mut rng = SplitMix64::new(0xc0de ^ p);
        for _ in 0..40 {
            let curve = random_curve(&field, 3, &mut rng);
            let div = reduction_divisors(&curve);
            let disc_deg = curve.discriminant().degree().unwrap() as u64;
            let mut finite = 0u64;
            let mut inf = 0u64;
            for data in &div.places {
                match &data.place {
                    Place::Finite(pi) => {
                        finite += data.v_delta_min as u64 * pi.degree().unwrap() as u64;
                    }
                    Place::Infinity => inf = data.v_delta_min as u64,
                }
            }
            assert_eq!(finite, disc_deg, "finite valuations vs degree for {curve}");
            assert_eq!((finite + inf) % 12, 0, "total valuation for {curve}");
        }
    }
}

#[test]
fn v_delta_equals_place_valuation_of_reduced_discriminant() {
    let field = make_field(5, 1, None).unwrap();
    let mut rng = SplitMix64::new(88);
    for _ in 0..40 {
        let curve = random_curve(&field, 3, &mut rng);
        let disc = curve.discriminant();
        for pi in disc.factor().unwrap().distinct() {
            let data = tate_at_place(&curve, &pi).unwrap();
            assert_eq!(data.v_delta_min, disc.valuation(&pi).unwrap());
        }
    }
}

#[test]
fn multiplicative_places_go_additive_under_divisible_twists() {
    // At every place dividing the twister, the twist has additive
    // reduction, whatever the base had there.
    let field = make_field(5, 1, None).unwrap();
    let base = Curve::new(Poly::from_ints(&field, &[0, 1]), Poly::from_ints(&field, &[0, 1]))
        .unwrap();
    let mut rng = SplitMix64::new(0xfade);
    for _ in 0..60 {
        let f = loop {
            let deg = rng.below(4) as usize;
            let cand = Poly::from_elems(
                &field,
                (0..=deg).map(|_| field.element_at(rng.below_u128(5))).collect(),
            );
            if !cand.is_zero() && cand.is_squarefree().unwrap() && !cand.is_constant() {
                break cand;
            }
        };
        let twisted = base.quadratic_twist(&f).unwrap().normalized_model;
        for pi in f.factor().unwrap().distinct() {
            let data = tate_at_place(&twisted, &pi).unwrap();
            assert!(
                data.reduction.is_additive(),
                "reduction at {pi} | {f} should be additive"
            );
            assert!(data.tamagawa <= 4);
        }
    }
}

#[test]
fn no_multiplicative_base_stays_no_multiplicative() {
    // A curve satisfying the reduced-coefficient hypothesis with no finite
    // multiplicative place keeps that property across every square-free
    // twist of degree <= 2.
    let field = make_field(5, 1, None).unwrap();
    let fam = no_multiplicative_family(&field).unwrap();
    assert!(!has_multiplicative_away_from_infinity(&fam.curve));
    let one = Poly::one(&field);
    for (_, f) in enumerate_f_up_to(&field, 2, &one) {
        let twisted = fam.curve.quadratic_twist(&f).unwrap().normalized_model;
        assert!(
            !has_multiplicative_away_from_infinity(&twisted),
            "twist by {f} acquired a multiplicative place"
        );
    }
}

#[test]
fn tate_rejects_reducible_places() {
    let field = make_field(5, 1, None).unwrap();
    let curve = Curve::new(Poly::from_ints(&field, &[0, 1]), Poly::from_ints(&field, &[0, 1]))
        .unwrap();
    let reducible = Poly::from_ints(&field, &[0, 0, 1]);
    assert!(tate_at_place(&curve, &reducible).is_err());
    let non_monic = Poly::from_ints(&field, &[1, 2]);
    assert!(tate_at_place(&curve, &non_monic).is_err());
}

#[test]
fn extension_base_field_reduction() {
    // The algorithm runs unchanged over F_25, including at places whose
    // residue fields are proper extensions.
    let f25 = make_field(5, 2, None).unwrap();
    let curve = Curve::new(Poly::from_ints(&f25, &[0, 1]), Poly::from_ints(&f25, &[0, 1]))
        .unwrap();
    let div = reduction_divisors(&curve);
    // Same shape as over F_5: additive at t, multiplicative at the linear
    // place of 4t + 27, additive at infinity.
    assert_eq!(div.deg_m, 1);
    assert_eq!(div.deg_a, 2);
}
