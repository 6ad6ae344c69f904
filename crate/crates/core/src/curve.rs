//! Elliptic curves over `F_q(t)` in short Weierstrass form
//! `y^2 = x^3 + A(t)x + B(t)`.
//!
//! Stored models are always reduced: no irreducible `p` divides `A` to order
//! 4 and `B` to order 6 simultaneously. That pins the unique reduced integral
//! model, makes the naive height `max(3 deg A, 2 deg B)` exact, and keeps
//! quadratic twists of a least-height curve in reduced form automatically.

use alloc::vec::Vec;
use core::fmt;

use crate::gf::Field;
use crate::polyring::{Poly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// `-16(4A^3 + 27B^2) = 0`.
    Singular,
    /// Coefficients over different fields.
    MismatchedFields,
    /// Twisting polynomial must be nonzero and square-free.
    TwisterNotSquarefree,
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::Singular => write!(f, "singular model: discriminant vanishes"),
            CurveError::MismatchedFields => write!(f, "coefficients over different fields"),
            CurveError::TwisterNotSquarefree => {
                write!(f, "twisting polynomial must be square-free and nonzero")
            }
        }
    }
}

/// A nonsingular short Weierstrass model in reduced form.
#[derive(Clone, PartialEq, Eq)]
pub struct Curve {
    a: Poly,
    b: Poly,
}

/// Result of reducing a raw coefficient pair: the curve plus the total
/// scaling `u` with `A_in = u^4 A_red`, `B_in = u^6 B_red`.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub curve: Curve,
    pub scaling: Poly,
}

/// A quadratic twist: base curve, square-free twisting polynomial, the
/// reduced model of the twist, and the scaling witness `u` relating it to
/// the naive model `(f^2 A, f^3 B)`.
#[derive(Clone, Debug)]
pub struct TwistRecord {
    pub base: Curve,
    pub twister: Poly,
    pub normalized_model: Curve,
    pub scaling_witness: Poly,
}

impl TwistRecord {
    /// The naive twisted model `(f^2 A, f^3 B)`, reconstructed from the
    /// reduced model and the scaling witness.
    pub fn naive_model(&self) -> (Poly, Poly) {
        let u4 = self.scaling_witness.pow(4);
        let u6 = self.scaling_witness.pow(6);
        (
            self.normalized_model.a().mul(&u4),
            self.normalized_model.b().mul(&u6),
        )
    }
}

impl Curve {
    /// Build a curve from raw coefficients, reducing the model.
    pub fn new(a: Poly, b: Poly) -> Result<Curve, CurveError> {
        Ok(normalize(a, b)?.curve)
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    /// `-16(4A^3 + 27B^2)`, nonzero by construction.
    pub fn discriminant(&self) -> Poly {
        let field = self.field();
        let four_a3 = self.a.pow(3).mul_elem(&field.from_u64(4));
        let t27_b2 = self.b.pow(2).mul_elem(&field.from_u64(27));
        four_a3.add(&t27_b2).mul_elem(&field.from_i64(-16))
    }

    /// `j = 1728 * 4A^3 / (4A^3 + 27B^2)` with the monic gcd cancelled;
    /// numerator and denominator are returned as polynomials.
    pub fn j_invariant(&self) -> (Poly, Poly) {
        let field = self.field();
        let four_a3 = self.a.pow(3).mul_elem(&field.from_u64(4));
        let num = four_a3.mul_elem(&field.from_u64(1728));
        let den = four_a3.add(&self.b.pow(2).mul_elem(&field.from_u64(27)));
        let g = num.gcd(&den);
        if g.is_zero() || g.is_constant() {
            return (num, den);
        }
        (num.div_exact(&g), den.div_exact(&g))
    }

    /// True iff `j` is a nonconstant rational function.
    pub fn is_nonisotrivial(&self) -> bool {
        let (num, den) = self.j_invariant();
        !(num.is_constant() && den.is_constant())
    }

    /// Naive height `max(3 deg A, 2 deg B)` of the reduced model; an absent
    /// (zero) coefficient contributes nothing.
    pub fn height(&self) -> u64 {
        let ha = self.a.degree().map(|d| 3 * d as u64);
        let hb = self.b.degree().map(|d| 2 * d as u64);
        match (ha, hb) {
            (Some(x), Some(y)) => x.max(y),
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (None, None) => unreachable!("both coefficients zero is singular"),
        }
    }

    /// Twist by a square-free polynomial: naive model `(f^2 A, f^3 B)`,
    /// returned in reduced form with the scaling witness. The discriminant
    /// of the naive model is exactly `f^6` times the base discriminant.
    pub fn quadratic_twist(&self, f: &Poly) -> Result<TwistRecord, CurveError> {
        if f.field() != self.field() {
            return Err(CurveError::MismatchedFields);
        }
        match f.is_squarefree() {
            Ok(true) => {}
            Ok(false) | Err(PolyError::ZeroPolynomial) => {
                return Err(CurveError::TwisterNotSquarefree)
            }
            Err(_) => return Err(CurveError::TwisterNotSquarefree),
        }
        let naive_a = self.a.mul(&f.pow(2));
        let naive_b = self.b.mul(&f.pow(3));
        debug_assert!({
            let four_a3 = naive_a.pow(3).mul_elem(&self.field().from_u64(4));
            let t27_b2 = naive_b.pow(2).mul_elem(&self.field().from_u64(27));
            let naive_disc = four_a3.add(&t27_b2).mul_elem(&self.field().from_i64(-16));
            naive_disc == f.pow(6).mul(&self.discriminant())
        });
        let norm = normalize(naive_a, naive_b)?;
        Ok(TwistRecord {
            base: self.clone(),
            twister: f.clone(),
            normalized_model: norm.curve,
            scaling_witness: norm.scaling,
        })
    }

    /// The least-height member of the quadratic twist family, reached by
    /// twisting down at every irreducible `p` with `p^2 | A` and `p^3 | B`.
    /// The composite twister is square-free and recorded in the result.
    pub fn minimal_twist(&self) -> TwistRecord {
        let field = self.field();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut twister = Poly::one(field);
        while let Some(p) = find_divider(&a, &b, 2, 3) {
            a = a.div_exact(&p.pow(2));
            b = b.div_exact(&p.pow(3));
            twister = twister.mul(&p);
        }
        if twister.is_one() {
            return TwistRecord {
                base: self.clone(),
                twister,
                normalized_model: self.clone(),
                scaling_witness: Poly::one(field),
            };
        }
        let record = self
            .quadratic_twist(&twister)
            .expect("accumulated twister is square-free");
        debug_assert!(record.normalized_model.a == a && record.normalized_model.b == b);
        record
    }

    /// True iff the least-height criterion holds: no irreducible `p` with
    /// `p^2 | A` and `p^3 | B`.
    pub fn is_minimal_twist(&self) -> bool {
        find_divider(&self.a, &self.b, 2, 3).is_none()
    }
}

/// Candidate irreducibles at which `(A, B)` might reduce: factors of the
/// gcd support (or of the lone nonzero coefficient when the other vanishes).
/// Avoids factoring `A` and `B` fully.
fn divider_candidates(a: &Poly, b: &Poly) -> Vec<Poly> {
    let support = if a.is_zero() {
        b.clone()
    } else if b.is_zero() {
        a.clone()
    } else {
        a.gcd(b)
    };
    if support.is_zero() || support.is_constant() {
        return Vec::new();
    }
    support.factor().expect("support is nonzero").distinct()
}

/// First irreducible `p` (canonical order) with `p^ea | A` and `p^eb | B`,
/// the zero polynomial counting as divisible by everything.
fn find_divider(a: &Poly, b: &Poly, ea: u32, eb: u32) -> Option<Poly> {
    for p in divider_candidates(a, b) {
        let ok_a = a.is_zero() || a.valuation(&p).expect("candidates are places") >= ea;
        let ok_b = b.is_zero() || b.valuation(&p).expect("candidates are places") >= eb;
        if ok_a && ok_b {
            return Some(p);
        }
    }
    None
}

/// Reduce a raw coefficient pair: repeatedly divide `(A, B)` by `(p^4, p^6)`
/// for every irreducible `p` dividing both to those orders. The result is
/// the unique reduced model; the total scaling is recorded.
pub fn normalize(a: Poly, b: Poly) -> Result<Normalization, CurveError> {
    if a.field() != b.field() {
        return Err(CurveError::MismatchedFields);
    }
    let field = a.field().clone();
    let disc_zero = {
        let four_a3 = a.pow(3).mul_elem(&field.from_u64(4));
        let t27_b2 = b.pow(2).mul_elem(&field.from_u64(27));
        four_a3.add(&t27_b2).is_zero()
    };
    if disc_zero {
        return Err(CurveError::Singular);
    }
    let mut a = a;
    let mut b = b;
    let mut scaling = Poly::one(&field);
    while let Some(p) = find_divider(&a, &b, 4, 6) {
        a = a.div_exact(&p.pow(4));
        b = b.div_exact(&p.pow(6));
        scaling = scaling.mul(&p);
    }
    Ok(Normalization {
        curve: Curve { a, b },
        scaling,
    })
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", self.a, self.b)
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use alloc::format;

    fn f5() -> Field {
        make_field(5, 1, None).unwrap()
    }

    fn curve(a: &[i64], b: &[i64]) -> Curve {
        let f = f5();
        Curve::new(Poly::from_ints(&f, a), Poly::from_ints(&f, b)).unwrap()
    }

    #[test]
    fn discriminant_direct_substitution() {
        let f = f5();
        assert_eq!(curve(&[0], &[1]).discriminant(), Poly::from_ints(&f, &[-432]));
        assert_eq!(
            curve(&[0, 1], &[0]).discriminant(),
            Poly::from_ints(&f, &[0, 0, 0, -64])
        );
        // A = B = t: -16 t^2 (4t + 27).
        let d = curve(&[0, 1], &[0, 1]).discriminant();
        let expect = Poly::from_ints(&f, &[0, 0, -16 * 27, -64]);
        assert_eq!(d, expect);
    }

    #[test]
    fn singular_pairs_rejected() {
        let f = f5();
        // 4A^3 + 27B^2 = 0 for (A, B) = (-3c^2, 2c^3); c = 1.
        let a = Poly::from_ints(&f, &[-3]);
        let b = Poly::from_ints(&f, &[2]);
        assert_eq!(Curve::new(a, b), Err(CurveError::Singular));
    }

    #[test]
    fn j_invariant_and_isotriviality() {
        let f = f5();
        let e = curve(&[0], &[1]);
        let (num, _) = e.j_invariant();
        assert!(num.is_zero());
        assert!(!e.is_nonisotrivial());

        let e = curve(&[0, 1], &[0]);
        let (num, den) = e.j_invariant();
        // j = 1728 identically.
        assert_eq!(num, den.mul_elem(&f.from_u64(1728)));
        assert!(!e.is_nonisotrivial());

        let e = curve(&[0, 1], &[1]);
        let (num, den) = e.j_invariant();
        assert_eq!(num, Poly::from_ints(&f, &[0, 0, 0, 6912]));
        assert_eq!(den, Poly::from_ints(&f, &[27, 0, 0, 4]));
        // Coprime by resultant.
        assert!(!num.resultant(&den).unwrap().is_zero());
        assert!(e.is_nonisotrivial());
    }

    #[test]
    fn normalize_examples() {
        let f = f5();
        let t = Poly::gen(&f);
        let n = normalize(t.pow(4), t.pow(6)).unwrap();
        assert_eq!(n.curve, curve(&[1], &[1]));
        assert_eq!(n.scaling, t);

        let n = normalize(t.clone(), Poly::one(&f)).unwrap();
        assert_eq!(n.curve, curve(&[0, 1], &[1]));
        assert!(n.scaling.is_one());

        // (t^8 (t+1)^4, t^12 (t+1)^6): two steps at t, one at t+1.
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let a = t.pow(8).mul(&t1.pow(4));
        let b = t.pow(12).mul(&t1.pow(6));
        let n = normalize(a, b).unwrap();
        assert_eq!(n.curve, curve(&[1], &[1]));
        assert_eq!(n.scaling, t.pow(2).mul(&t1));
    }

    #[test]
    fn normalize_is_idempotent() {
        let t = Poly::gen(&f5());
        let n = normalize(t.pow(5), t.pow(7)).unwrap();
        let again = normalize(n.curve.a().clone(), n.curve.b().clone()).unwrap();
        assert_eq!(again.curve, n.curve);
        assert!(again.scaling.is_one());
    }

    #[test]
    fn heights() {
        assert_eq!(curve(&[0, 1], &[1]).height(), 3);
        assert_eq!(curve(&[0], &[0, 1]).height(), 2);
        // (t^2, t^3) is already reduced (t^4 does not divide A), height 6.
        assert_eq!(curve(&[0, 0, 1], &[0, 0, 0, 1]).height(), 6);
        // (t^4, t^6) reduces to (1, 1).
        assert_eq!(curve(&[0, 0, 0, 0, 1], &[0, 0, 0, 0, 0, 0, 1]).height(), 0);
    }

    #[test]
    fn twist_by_one_is_identity() {
        let e = curve(&[0, 1], &[0, 1]);
        let f = f5();
        let rec = e.quadratic_twist(&Poly::one(&f)).unwrap();
        assert_eq!(rec.normalized_model, e);
        assert!(rec.scaling_witness.is_one());
    }

    #[test]
    fn twist_of_unit_curve_by_t() {
        // (1,1) twisted by t: naive (t^2, t^3) is already reduced; it is a
        // genuinely different curve of height 6, not isomorphic to (1,1).
        let e = curve(&[1], &[1]);
        let f = f5();
        let rec = e.quadratic_twist(&Poly::gen(&f)).unwrap();
        assert_eq!(rec.normalized_model, curve(&[0, 0, 1], &[0, 0, 0, 1]));
        assert!(rec.scaling_witness.is_one());
        assert_eq!(rec.normalized_model.height(), 6);

        // Twisting back by t: naive (t^4, t^6) reduces to (1,1), witness t.
        let back = rec.normalized_model.quadratic_twist(&Poly::gen(&f)).unwrap();
        assert_eq!(back.normalized_model, e);
        assert_eq!(back.scaling_witness, Poly::gen(&f));
        assert_eq!(
            back.naive_model(),
            (
                Poly::from_ints(&f, &[0, 0, 0, 0, 1]),
                Poly::from_ints(&f, &[0, 0, 0, 0, 0, 0, 1])
            )
        );
    }

    #[test]
    fn twist_discriminant_identity() {
        let e = curve(&[0, 1], &[0, 1]);
        let f = f5();
        for raw in [
            Poly::from_ints(&f, &[0, 1]),
            Poly::from_ints(&f, &[1, 1]),
            Poly::from_ints(&f, &[2, 3, 1]),
            Poly::from_ints(&f, &[3]),
        ] {
            if !raw.is_squarefree().unwrap() {
                continue;
            }
            let rec = e.quadratic_twist(&raw).unwrap();
            let (na, nb) = rec.naive_model();
            let naive_disc = {
                let four_a3 = na.pow(3).mul_elem(&f.from_u64(4));
                let t27_b2 = nb.pow(2).mul_elem(&f.from_u64(27));
                four_a3.add(&t27_b2).mul_elem(&f.from_i64(-16))
            };
            assert_eq!(naive_disc, raw.pow(6).mul(&e.discriminant()));
        }
    }

    #[test]
    fn non_squarefree_twister_rejected() {
        let e = curve(&[0, 1], &[0, 1]);
        let f = f5();
        let t2 = Poly::gen(&f).pow(2);
        assert!(matches!(
            e.quadratic_twist(&t2),
            Err(CurveError::TwisterNotSquarefree)
        ));
        assert!(matches!(
            e.quadratic_twist(&Poly::zero(&f)),
            Err(CurveError::TwisterNotSquarefree)
        ));
    }

    #[test]
    fn minimal_twist_examples() {
        let f = f5();
        // (t^2, t^3): one step at t down to (1, 1).
        let e = curve(&[0, 0, 1], &[0, 0, 0, 1]);
        let rec = e.minimal_twist();
        assert_eq!(rec.twister, Poly::gen(&f));
        assert_eq!(rec.normalized_model, curve(&[1], &[1]));
        assert_eq!(rec.scaling_witness, Poly::gen(&f));
        assert!(!e.is_minimal_twist());

        // (t, t): criterion already holds.
        let e = curve(&[0, 1], &[0, 1]);
        let rec = e.minimal_twist();
        assert!(rec.twister.is_one());
        assert_eq!(rec.normalized_model, e);
        assert!(e.is_minimal_twist());

        // (t^2 (t+1)^2, t^3 (t+1)^3): two steps, twister t(t+1).
        let t = Poly::gen(&f);
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let e = Curve::new(t.pow(2).mul(&t1.pow(2)), t.pow(3).mul(&t1.pow(3))).unwrap();
        let rec = e.minimal_twist();
        assert_eq!(rec.twister, t.mul(&t1));
        assert_eq!(rec.normalized_model, curve(&[1], &[1]));
    }

    #[test]
    fn display_format() {
        let e = curve(&[0, 1], &[0, 1]);
        assert_eq!(format!("{e}"), "y^2 = x^3 + (t)x + (t)");
    }
}
