//! Property tests for curves and twists: involution, idempotence, and the
//! least-height characterization, exhaustively at small scale.

use twistlab_core::arith::SplitMix64;
use twistlab_core::curve::{normalize, Curve};
use twistlab_core::family::enumerate_f_up_to;
use twistlab_core::gf::{make_field, Field};
use twistlab_core::polyring::Poly;

fn f5() -> Field {
    make_field(5, 1, None).unwrap()
}

fn tt_curve(field: &Field) -> Curve {
    Curve::new(Poly::from_ints(field, &[0, 1]), Poly::from_ints(field, &[0, 1])).unwrap()
}

#[test]
fn twist_involution_exhaustive() {
    // Twisting twice by the same square-free f returns to the base curve
    // up to the constant-scaling ambiguity of the reduced model: exactly
    // (lc^4 A, lc^6 B), which is the base itself whenever lc(f)^2 = 1.
    // Checked for every square-free f of degree <= 2 over F_5.
    let field = f5();
    let base = tt_curve(&field);
    let one = Poly::one(&field);
    let mut checked = 0;
    let mut exact_returns = 0;
    for (_, f) in enumerate_f_up_to(&field, 2, &one) {
        let lc = f.leading_coeff().unwrap().clone();
        let once = base.quadratic_twist(&f).unwrap();
        let twice = once.normalized_model.quadratic_twist(&f).unwrap();
        let expected = Curve::new(
            base.a().mul_elem(&lc.pow(4)),
            base.b().mul_elem(&lc.pow(6)),
        )
        .unwrap();
        assert_eq!(twice.normalized_model, expected, "involution failed for f = {f}");
        if lc.square().is_one() {
            assert_eq!(twice.normalized_model, base, "exact return failed for f = {f}");
            exact_returns += 1;
        }
        checked += 1;
    }
    assert_eq!(checked, 104); // 4 constants + 20 linear + 80 quadratic
    assert_eq!(exact_returns, 52); // leading coefficient 1 or -1
}

#[test]
fn normalize_idempotent_randomized() {
    let field = f5();
    let mut rng = SplitMix64::new(2024);
    for _ in 0..200 {
        let a = random_poly(&field, 8, &mut rng);
        let b = random_poly(&field, 10, &mut rng);
        let Ok(n) = normalize(a, b) else { continue };
        let again = normalize(n.curve.a().clone(), n.curve.b().clone()).unwrap();
        assert_eq!(again.curve, n.curve);
        assert!(again.scaling.is_one());
    }
}

#[test]
fn minimal_twist_has_least_height_exhaustively() {
    // The least-height criterion: no square-free twist of degree <= 2 goes
    // below the minimal twist's height, checked on both a least-height base
    // and a reducible one.
    let field = f5();
    let t = Poly::gen(&field);
    let t1 = Poly::from_ints(&field, &[1, 1]);
    let bases = [
        tt_curve(&field),
        Curve::new(t.pow(2), t.pow(3)).unwrap(),
        Curve::new(t.pow(2).mul(&t1.pow(2)), t.pow(3).mul(&t1.pow(3))).unwrap(),
    ];
    let one = Poly::one(&field);
    for base in bases {
        let min = base.minimal_twist();
        let min_height = min.normalized_model.height();
        assert!(min.normalized_model.is_minimal_twist());
        for (_, g) in enumerate_f_up_to(&field, 2, &one) {
            let h = base.quadratic_twist(&g).unwrap().normalized_model.height();
            assert!(
                min_height <= h,
                "twist by {g} of {base} has height {h} below the minimal {min_height}"
            );
        }
    }
}

#[test]
fn twist_height_formula_on_least_height_base() {
    // For a least-height base the naive twisted model stays reduced, so
    // h(E_f) = M + 6 deg f for every square-free f.
    let field = f5();
    let base = tt_curve(&field);
    let m = base.height();
    let one = Poly::one(&field);
    for (d, f) in enumerate_f_up_to(&field, 2, &one) {
        let rec = base.quadratic_twist(&f).unwrap();
        assert!(rec.scaling_witness.is_one());
        assert_eq!(rec.normalized_model.height(), m + 6 * d);
    }
}

#[test]
fn scaling_witness_reconstructs_naive_model() {
    let field = f5();
    let mut rng = SplitMix64::new(55);
    for _ in 0..100 {
        let a = random_poly(&field, 4, &mut rng);
        let b = random_poly(&field, 4, &mut rng);
        let Ok(base) = Curve::new(a, b) else { continue };
        let f = loop {
            let cand = random_poly(&field, 3, &mut rng);
            if !cand.is_zero() && cand.is_squarefree().unwrap() {
                break cand;
            }
        };
        let rec = base.quadratic_twist(&f).unwrap();
        let (na, nb) = rec.naive_model();
        assert_eq!(na, base.a().mul(&f.pow(2)));
        assert_eq!(nb, base.b().mul(&f.pow(3)));
    }
}

fn random_poly(field: &Field, max_deg: usize, rng: &mut SplitMix64) -> Poly {
    let deg = rng.below(max_deg as u64 + 1) as usize;
    let coeffs: Vec<_> = (0..=deg)
        .map(|_| field.element_at(rng.below_u128(field.order())))
        .collect();
    Poly::from_elems(field, coeffs)
}
