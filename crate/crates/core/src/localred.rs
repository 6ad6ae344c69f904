//! Local reduction data of a curve at every place of `P^1`: Kodaira type,
//! Tamagawa number and minimal-discriminant valuation, computed by running
//! Tate's algorithm over the localization of `F_q[t]` at each place.
//!
//! Residue characteristic at least 5 keeps the model in the form
//! `y^2 = x^3 + a2 x^2 + a4 x + a6` throughout: the wild branches of the
//! algorithm never trigger, and completing the square disposes of `a1`, `a3`
//! for good. Translations are exact polynomial operations; every residue
//! test happens in the residue field of the place, so non-linear places and
//! extension base fields work uniformly.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::is_prime_u64;
use crate::curve::Curve;
use crate::gf::FieldElement;
use crate::polyring::{residue_field, Poly, PolyError, ResidueField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalRedError {
    /// The place is not monic irreducible, or its residue field is too big.
    BadPlace(PolyError),
    /// An argument required to be prime is not.
    NotPrime(u64),
    /// The model failed an internal invariant of the step algorithm. This
    /// cannot happen for reduced curve models; it indicates a bug.
    InternalInvariant(&'static str),
}

impl fmt::Display for LocalRedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalRedError::BadPlace(e) => write!(f, "bad place: {e}"),
            LocalRedError::NotPrime(p) => write!(f, "{p} is not prime"),
            LocalRedError::InternalInvariant(what) => {
                write!(f, "internal invariant violated: {what}")
            }
        }
    }
}

impl From<PolyError> for LocalRedError {
    fn from(e: PolyError) -> Self {
        LocalRedError::BadPlace(e)
    }
}

/// A place of `P^1` over `F_q`: a monic irreducible polynomial or infinity.
#[derive(Clone, PartialEq, Eq)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> u64 {
        match self {
            Place::Finite(p) => p.degree().expect("places are nonconstant") as u64,
            Place::Infinity => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Kodaira symbol of an additive fiber. `IStar(n)` covers `I_0*` and `I_n*`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kodaira {
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reduction {
    Good,
    Multiplicative { split: bool, n: u32 },
    Additive { kodaira: Kodaira },
}

impl Reduction {
    pub fn is_good(&self) -> bool {
        matches!(self, Reduction::Good)
    }

    pub fn is_multiplicative(&self) -> bool {
        matches!(self, Reduction::Multiplicative { .. })
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, Reduction::Additive { .. })
    }
}

/// Reduction data at one place.
#[derive(Clone, Debug)]
pub struct PlaceData {
    pub place: Place,
    pub reduction: Reduction,
    pub tamagawa: u64,
    /// Valuation of the minimal discriminant at the place.
    pub v_delta_min: u32,
}

/// Divisors of multiplicative and additive reduction over all of `P^1`
/// (infinity included, counted with degree 1).
#[derive(Clone, Debug)]
pub struct ReductionDivisors {
    /// Data at every bad finite place (canonical order) and at infinity
    /// (always present, last, even when good).
    pub places: Vec<PlaceData>,
    pub deg_m: u64,
    pub deg_a: u64,
}

impl ReductionDivisors {
    pub fn multiplicative(&self) -> impl Iterator<Item = &PlaceData> {
        self.places.iter().filter(|p| p.reduction.is_multiplicative())
    }

    pub fn additive(&self) -> impl Iterator<Item = &PlaceData> {
        self.places.iter().filter(|p| p.reduction.is_additive())
    }
}

/// Local data of `E` at a finite place (monic irreducible `pi`).
pub fn tate_at_place(e: &Curve, pi: &Poly) -> Result<PlaceData, LocalRedError> {
    let (reduction, tamagawa, v) = tate_raw(e.a(), e.b(), pi)?;
    Ok(PlaceData {
        place: Place::Finite(pi.clone()),
        reduction,
        tamagawa,
        v_delta_min: v,
    })
}

/// Local data of `E` at infinity: substitute `t = 1/s`, clear denominators
/// with the least scaling `(s^{2e}, s^{3e})` making the coefficients
/// polynomial, and run the algorithm at `s = 0`. Minimality of `e` makes the
/// resulting model minimal there.
pub fn reduce_at_infinity(e: &Curve) -> PlaceData {
    let field = e.field();
    let deg_a = e.a().degree();
    let deg_b = e.b().degree();
    let ea = deg_a.map(|d| d.div_ceil(4)).unwrap_or(0);
    let eb = deg_b.map(|d| d.div_ceil(6)).unwrap_or(0);
    let scale = ea.max(eb);
    let reverse = |p: &Poly, target: usize| -> Poly {
        let mut coeffs = alloc::vec![field.zero(); target + 1];
        for (i, c) in p.coeffs().iter().enumerate() {
            coeffs[target - i] = c.clone();
        }
        Poly::from_elems(field, coeffs)
    };
    let a_s = if e.a().is_zero() {
        Poly::zero(field)
    } else {
        reverse(e.a(), 4 * scale)
    };
    let b_s = if e.b().is_zero() {
        Poly::zero(field)
    } else {
        reverse(e.b(), 6 * scale)
    };
    let s = Poly::gen(field);
    let (reduction, tamagawa, v) =
        tate_raw(&a_s, &b_s, &s).expect("the place s is monic linear");
    PlaceData {
        place: Place::Infinity,
        reduction,
        tamagawa,
        v_delta_min: v,
    }
}

/// Local model state `y^2 = x^3 + a2 x^2 + a4 x + a6` during the algorithm.
struct Model {
    a2: Poly,
    a4: Poly,
    a6: Poly,
}

impl Model {
    /// Translate `x -> x + r`.
    fn translate(&mut self, r: &Poly) {
        if r.is_zero() {
            return;
        }
        let field = r.field();
        let three = Poly::constant(field.from_u64(3));
        let two = Poly::constant(field.from_u64(2));
        // a6 += r^3 + a2 r^2 + a4 r, a4 += 2 a2 r + 3 r^2, a2 += 3 r.
        let r2 = r.mul(r);
        let r3 = r2.mul(r);
        self.a6 = self
            .a6
            .add(&r3)
            .add(&self.a2.mul(&r2))
            .add(&self.a4.mul(r));
        self.a4 = self
            .a4
            .add(&two.mul(&self.a2).mul(r))
            .add(&three.mul(&r2));
        self.a2 = self.a2.add(&three.mul(r));
    }
}

fn val(p: &Poly, pi: &Poly) -> u32 {
    if p.is_zero() {
        u32::MAX
    } else {
        let mut e = 0u32;
        let mut rest = p.clone();
        loop {
            let (q, r) = rest.div_rem(pi);
            if !r.is_zero() {
                return e;
            }
            e += 1;
            rest = q;
        }
    }
}

/// Residue of `p / pi^k` at the place (the division must be exact).
fn reduce_shifted(rf: &ResidueField, p: &Poly, pi: &Poly, k: u32) -> FieldElement {
    if p.is_zero() {
        return rf.field().zero();
    }
    let mut q = p.clone();
    for _ in 0..k {
        q = q.div_exact(pi);
    }
    rf.reduce(&q)
}

/// Number of distinct roots in the residue field of a square-free polynomial.
fn rational_root_count(p: &Poly) -> usize {
    let field = p.field();
    let x = Poly::gen(field);
    let frob = x.powmod(field.order(), p);
    frob.sub(&x).gcd(p).degree().unwrap_or(0)
}

/// Expected discriminant valuation per type; used as an internal consistency
/// check between the step algorithm and the valuation bookkeeping.
fn expected_v(red: &Reduction) -> Option<u32> {
    match red {
        Reduction::Good => Some(0),
        Reduction::Multiplicative { n, .. } => Some(*n),
        Reduction::Additive { kodaira } => match kodaira {
            Kodaira::II => Some(2),
            Kodaira::III => Some(3),
            Kodaira::IV => Some(4),
            Kodaira::IStar(n) => Some(6 + n),
            Kodaira::IVStar => Some(8),
            Kodaira::IIIStar => Some(9),
            Kodaira::IIStar => Some(10),
        },
    }
}

/// Tate's algorithm at the place `pi` for the model `y^2 = x^3 + Ax + B`,
/// assumed minimal at `pi` (no simultaneous `pi^4 | A`, `pi^6 | B`).
fn tate_raw(a: &Poly, b: &Poly, pi: &Poly) -> Result<(Reduction, u64, u32), LocalRedError> {
    let field = a.field();
    debug_assert!(
        !(val(a, pi) >= 4 && val(b, pi) >= 6),
        "model not minimal at the place"
    );
    let rf = residue_field(pi)?;
    let k = rf.field().clone();
    let delta = {
        let four_a3 = a.pow(3).mul_elem(&field.from_u64(4));
        let t27_b2 = b.pow(2).mul_elem(&field.from_u64(27));
        four_a3.add(&t27_b2).mul_elem(&field.from_i64(-16))
    };
    assert!(!delta.is_zero(), "singular model");
    let d = val(&delta, pi);
    if d == 0 {
        return Ok((Reduction::Good, 1, 0));
    }

    let mut m = Model {
        a2: Poly::zero(field),
        a4: a.clone(),
        a6: b.clone(),
    };

    // Step 2: move the singular point of the reduction to the origin. For a
    // node of x^3 + Ax + B the repeated root is -3B/(2A); a cusp sits at 0.
    let abar = rf.reduce(&m.a4);
    let bbar = rf.reduce(&m.a6);
    let x0 = if !abar.is_zero() {
        let num = bbar.mul(&k.from_i64(-3));
        let den = abar.mul(&k.from_u64(2));
        num.div(&den).expect("abar is nonzero")
    } else {
        k.zero()
    };
    m.translate(&rf.lift(&x0));
    debug_assert!(val(&m.a4, pi) >= 1 && val(&m.a6, pi) >= 1);

    let a2bar = rf.reduce(&m.a2);
    if !a2bar.is_zero() {
        // Nodal reduction: type I_n with n = v(delta). Split iff the tangent
        // slopes at the node are rational, i.e. a2bar is a square.
        let split = a2bar.is_square();
        let n = d;
        let c = if split {
            n as u64
        } else if n % 2 == 0 {
            2
        } else {
            1
        };
        return Ok((
            Reduction::Multiplicative { split, n },
            c,
            finish_check(Reduction::Multiplicative { split, n }, d)?,
        ));
    }

    // Additive reduction from here on.
    let finish = |kodaira: Kodaira, c: u64| -> Result<(Reduction, u64, u32), LocalRedError> {
        let red = Reduction::Additive { kodaira };
        Ok((red, c, finish_check(red, d)?))
    };

    if val(&m.a6, pi) < 2 {
        return finish(Kodaira::II, 1);
    }
    let b8 = {
        let four = Poly::constant(field.from_u64(4));
        four.mul(&m.a2).mul(&m.a6).sub(&m.a4.mul(&m.a4))
    };
    if val(&b8, pi) < 3 {
        return finish(Kodaira::III, 2);
    }
    if val(&m.a6, pi) < 3 {
        // Type IV; the component count depends on whether y^2 = a6/pi^2 has
        // rational solutions.
        let u = reduce_shifted(&rf, &m.a6, pi, 2);
        let c = if u.is_square() { 3 } else { 1 };
        return finish(Kodaira::IV, c);
    }

    debug_assert!(val(&m.a2, pi) >= 1 && val(&m.a4, pi) >= 2 && val(&m.a6, pi) >= 3);
    // Step 6: the cubic T^3 + a_{2,1} T^2 + a_{4,2} T + a_{6,3} over the
    // residue field decides between I_0* and the rest.
    let p_cubic = Poly::from_elems(
        &k,
        alloc::vec![
            reduce_shifted(&rf, &m.a6, pi, 3),
            reduce_shifted(&rf, &m.a4, pi, 2),
            reduce_shifted(&rf, &m.a2, pi, 1),
            k.one(),
        ],
    );
    let gcd = p_cubic.gcd(&p_cubic.derivative());
    match gcd.degree() {
        Some(0) => {
            // Distinct roots: I_0*, c = 1 + #rational roots.
            let c = 1 + rational_root_count(&p_cubic) as u64;
            finish(Kodaira::IStar(0), c)
        }
        Some(1) => {
            // Double root: I_n* chain. Move the double root to 0 first.
            let t0 = gcd.coeff(0).neg().div(&gcd.coeff(1)).expect("monic gcd");
            m.translate(&pi.mul(&rf.lift(&t0)));
            debug_assert!(
                val(&m.a2, pi) == 1 && val(&m.a4, pi) >= 3 && val(&m.a6, pi) >= 4
            );
            let a21 = reduce_shifted(&rf, &m.a2, pi, 1);
            let mut qidx: u32 = 2;
            loop {
                if qidx > d + 2 {
                    return Err(LocalRedError::InternalInvariant("I_n* chain overran"));
                }
                // Y-quadratic Y^2 - a_{6,2q}: distinct roots iff the residue
                // is nonzero; rational iff it is a square.
                if val(&m.a6, pi) == 2 * qidx {
                    let u = reduce_shifted(&rf, &m.a6, pi, 2 * qidx);
                    let c = if u.is_square() { 4 } else { 2 };
                    return finish(Kodaira::IStar(2 * qidx - 3), c);
                }
                // X-quadratic a_{2,1} X^2 + a_{4,q+1} X + a_{6,2q+1}.
                let a4q = reduce_shifted(&rf, &m.a4, pi, qidx + 1);
                let a6q = reduce_shifted(&rf, &m.a6, pi, 2 * qidx + 1);
                let disc2 = a4q.square().sub(&k.from_u64(4).mul(&a21).mul(&a6q));
                if !disc2.is_zero() {
                    let c = if disc2.is_square() { 4 } else { 2 };
                    return finish(Kodaira::IStar(2 * qidx - 2), c);
                }
                // Double root of the X-quadratic; translate it to 0.
                let x0 = a4q
                    .neg()
                    .div(&k.from_u64(2).mul(&a21))
                    .expect("a21 is a unit");
                m.translate(&pi.pow(qidx).mul(&rf.lift(&x0)));
                debug_assert!(
                    val(&m.a4, pi) >= qidx + 2 && val(&m.a6, pi) >= 2 * qidx + 2
                );
                qidx += 1;
            }
        }
        Some(2) => {
            // Triple root at -a_{2,1}/3 (exact in characteristic >= 5).
            let a21 = reduce_shifted(&rf, &m.a2, pi, 1);
            let t0 = a21.neg().div(&k.from_u64(3)).expect("3 is a unit");
            m.translate(&pi.mul(&rf.lift(&t0)));
            debug_assert!(
                val(&m.a2, pi) >= 2 && val(&m.a4, pi) >= 3 && val(&m.a6, pi) >= 4
            );
            if val(&m.a6, pi) == 4 {
                let u = reduce_shifted(&rf, &m.a6, pi, 4);
                let c = if u.is_square() { 3 } else { 1 };
                return finish(Kodaira::IVStar, c);
            }
            if val(&m.a4, pi) == 3 {
                return finish(Kodaira::IIIStar, 2);
            }
            if val(&m.a6, pi) == 5 {
                return finish(Kodaira::IIStar, 1);
            }
            Err(LocalRedError::InternalInvariant(
                "reached the non-minimal step on a reduced model",
            ))
        }
        _ => Err(LocalRedError::InternalInvariant("cubic gcd out of range")),
    }
}

fn finish_check(red: Reduction, d: u32) -> Result<u32, LocalRedError> {
    match expected_v(&red) {
        Some(v) if v == d => Ok(d),
        _ => Err(LocalRedError::InternalInvariant(
            "type/valuation mismatch in the step algorithm",
        )),
    }
}

/// Run the algorithm at every bad place of `E` (finite ones come from the
/// factored discriminant) plus infinity, and split the outcome into the
/// divisors of multiplicative and additive reduction. Degrees are residue
/// degrees; infinity counts 1.
pub fn reduction_divisors(e: &Curve) -> ReductionDivisors {
    let disc = e.discriminant();
    let mut places = Vec::new();
    let factors = disc.factor().expect("discriminant is nonzero");
    for pi in factors.distinct() {
        let data = tate_at_place(e, &pi).expect("factors are monic irreducible");
        debug_assert!(data.v_delta_min > 0);
        places.push(data);
    }
    places.push(reduce_at_infinity(e));
    let deg_m = places
        .iter()
        .filter(|p| p.reduction.is_multiplicative())
        .map(|p| p.place.degree())
        .sum();
    let deg_a = places
        .iter()
        .filter(|p| p.reduction.is_additive())
        .map(|p| p.place.degree())
        .sum();
    ReductionDivisors {
        places,
        deg_m,
        deg_a,
    }
}

/// True iff some finite place has multiplicative reduction.
pub fn has_multiplicative_away_from_infinity(e: &Curve) -> bool {
    reduction_divisors(e)
        .multiplicative()
        .any(|p| matches!(p.place, Place::Finite(_)))
}

/// Dimension bookkeeping for the twist-family statistics: the genus-0
/// specialization `deg M + 2 deg A + 4`, flagged rigorous only when the
/// prime passes the admissibility checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelmerDimension {
    pub dimension: u64,
    pub rigorous: bool,
}

pub fn selmer_dimension(e: &Curve, p: u64) -> Result<SelmerDimension, LocalRedError> {
    if !is_prime_u64(p) {
        return Err(LocalRedError::NotPrime(p));
    }
    let div = reduction_divisors(e);
    let adm = admissible_with(e, p, &div);
    Ok(SelmerDimension {
        dimension: div.deg_m + 2 * div.deg_a + 4,
        rigorous: adm.admissible,
    })
}

/// Exponent `min(deg M + 2 deg A + 4, 2n + 4)`: the log_p upper bound for
/// the group size at height bound `n`.
pub fn selmer_size_bound(e: &Curve, p: u64, n: u64) -> Result<u64, LocalRedError> {
    let dim = selmer_dimension(e, p)?;
    Ok(dim.dimension.min(2 * n + 4))
}

/// Big-monodromy threshold `c(genus) = 2 + max { l prime :
/// (l - (6 + 3 e2 + 4 e3)) / 12 <= genus }` with `e2 = ±1` by `l mod 4` and
/// `e3 = ±1` by `l mod 3`. Genus 0 gives 15.
pub fn big_monodromy_threshold(genus: u64) -> u64 {
    let mut best = 0u64;
    // l <= 12 genus + 13 bounds every admissible prime.
    for l in 2..=(12 * genus + 13) {
        if !is_prime_u64(l) {
            continue;
        }
        let e2: i64 = if l % 4 == 1 { 1 } else { -1 };
        let e3: i64 = if l % 3 == 1 { 1 } else { -1 };
        if (l as i64) <= 12 * genus as i64 + 6 + 3 * e2 + 4 * e3 {
            best = best.max(l);
        }
    }
    2 + best
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    NotPrime,
    BelowThreshold { threshold: u64 },
    DividesFieldOrder,
    DividesTamagawa { place: String, tamagawa: u64 },
}

impl fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibilityFailure::NotPrime => write!(f, "not prime"),
            AdmissibilityFailure::BelowThreshold { threshold } => {
                write!(f, "below big-monodromy threshold {threshold}")
            }
            AdmissibilityFailure::DividesFieldOrder => write!(f, "divides the field order"),
            AdmissibilityFailure::DividesTamagawa { place, tamagawa } => {
                write!(f, "divides Tamagawa factor {tamagawa} at place {place}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Admissibility {
    pub admissible: bool,
    pub reasons: Vec<AdmissibilityFailure>,
}

/// Checks whether `p` is usable for the family statistics on `E`: at least
/// the genus-0 threshold, coprime to the field order, and dividing no local
/// Tamagawa factor anywhere (infinity included).
pub fn admissible_prime(e: &Curve, p: u64) -> Admissibility {
    let div = reduction_divisors(e);
    admissible_with(e, p, &div)
}

fn admissible_with(e: &Curve, p: u64, div: &ReductionDivisors) -> Admissibility {
    let mut reasons = Vec::new();
    if !is_prime_u64(p) {
        reasons.push(AdmissibilityFailure::NotPrime);
    }
    let threshold = big_monodromy_threshold(0);
    if p < threshold {
        reasons.push(AdmissibilityFailure::BelowThreshold { threshold });
    }
    if e.field().characteristic() == p {
        reasons.push(AdmissibilityFailure::DividesFieldOrder);
    }
    for data in &div.places {
        if data.tamagawa % p == 0 {
            reasons.push(AdmissibilityFailure::DividesTamagawa {
                place: alloc::format!("{}", data.place),
                tamagawa: data.tamagawa,
            });
        }
    }
    Admissibility {
        admissible: reasons.is_empty(),
        reasons,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{make_field, Field};

    fn f5() -> Field {
        make_field(5, 1, None).unwrap()
    }

    fn curve5(a: &[i64], b: &[i64]) -> Curve {
        let f = f5();
        Curve::new(Poly::from_ints(&f, a), Poly::from_ints(&f, b)).unwrap()
    }

    #[test]
    fn good_reduction_when_delta_is_a_unit() {
        // (t, 1) at t: delta(0) = -432 != 0 mod 5.
        let e = curve5(&[0, 1], &[1]);
        let data = tate_at_place(&e, &Poly::gen(&f5())).unwrap();
        assert_eq!(data.reduction, Reduction::Good);
        assert_eq!(data.tamagawa, 1);
        assert_eq!(data.v_delta_min, 0);
    }

    #[test]
    fn multiplicative_fiber_at_linear_place() {
        // (t, t) over F_5: delta = -16 t^2 (4t + 2); the place 4t + 2 is
        // monic t + 3, where v(delta) = 1 and v(c4) = 0: type I_1.
        let f = f5();
        let e = curve5(&[0, 1], &[0, 1]);
        let pi = Poly::from_ints(&f, &[3, 1]);
        let data = tate_at_place(&e, &pi).unwrap();
        assert!(matches!(
            data.reduction,
            Reduction::Multiplicative { n: 1, .. }
        ));
        assert_eq!(data.tamagawa, 1);
        assert_eq!(data.v_delta_min, 1);
    }

    #[test]
    fn additive_fiber_type_ii_at_t() {
        // (t, t) at t: v(A) = v(B) = 1, v(delta) = 2. The step algorithm
        // lands on type II with Tamagawa 1 (cross-checked against the
        // closed-form classification: v(c4) = 1, v(delta) = 2).
        let e = curve5(&[0, 1], &[0, 1]);
        let data = tate_at_place(&e, &Poly::gen(&f5())).unwrap();
        assert_eq!(
            data.reduction,
            Reduction::Additive {
                kodaira: Kodaira::II
            }
        );
        assert_eq!(data.tamagawa, 1);
        assert_eq!(data.v_delta_min, 2);
    }

    #[test]
    fn infinity_examples() {
        // Constant curve: good at infinity.
        let e = curve5(&[0], &[1]);
        let data = reduce_at_infinity(&e);
        assert_eq!(data.reduction, Reduction::Good);

        // (1, t): s-model (s^4, s^5), type II* at s = 0.
        let e = curve5(&[1], &[0, 1]);
        let data = reduce_at_infinity(&e);
        assert_eq!(
            data.reduction,
            Reduction::Additive {
                kodaira: Kodaira::IIStar
            }
        );
        assert_eq!(data.tamagawa, 1);
        assert_eq!(data.v_delta_min, 10);

        // (t, t): s-model (s^3, s^5), type III* at s = 0.
        let e = curve5(&[0, 1], &[0, 1]);
        let data = reduce_at_infinity(&e);
        assert_eq!(
            data.reduction,
            Reduction::Additive {
                kodaira: Kodaira::IIIStar
            }
        );
        assert_eq!(data.tamagawa, 2);
        assert_eq!(data.v_delta_min, 9);
    }

    #[test]
    fn reduction_divisors_of_tt() {
        // Additive at t and at infinity, multiplicative at t + 3.
        let e = curve5(&[0, 1], &[0, 1]);
        let div = reduction_divisors(&e);
        assert_eq!(div.deg_m, 1);
        assert_eq!(div.deg_a, 2);
        assert_eq!(div.places.len(), 3);
        assert!(has_multiplicative_away_from_infinity(&e));
        let mult: Vec<_> = div.multiplicative().collect();
        assert_eq!(mult.len(), 1);
        assert_eq!(
            mult[0].place,
            Place::Finite(Poly::from_ints(&f5(), &[3, 1]))
        );
    }

    #[test]
    fn constant_discriminant_has_no_finite_bad_place() {
        let e = curve5(&[0], &[1]);
        let div = reduction_divisors(&e);
        assert_eq!(div.places.len(), 1);
        assert!(matches!(div.places[0].place, Place::Infinity));
        assert!(!has_multiplicative_away_from_infinity(&e));
    }

    #[test]
    fn star_fiber_with_all_components_rational() {
        // (3t^2, t^3 + t^4) at t: the cubic T^3 + 3T + 1 has a double root
        // over F_5; the chain stops at I_1* with residue 1 (a square), so
        // the Tamagawa number is 4. Hand-derived; see the verification
        // fixtures for the full table.
        let e = curve5(&[0, 0, 3], &[0, 0, 0, 1, 1]);
        let data = tate_at_place(&e, &Poly::gen(&f5())).unwrap();
        assert_eq!(
            data.reduction,
            Reduction::Additive {
                kodaira: Kodaira::IStar(1)
            }
        );
        assert_eq!(data.tamagawa, 4);
        assert_eq!(data.v_delta_min, 7);
    }

    #[test]
    fn selmer_dimension_formula() {
        // deg M = 1, deg A = 2 for (t, t): dimension 1 + 4 + 4 = 9.
        let e = curve5(&[0, 1], &[0, 1]);
        let dim = selmer_dimension(&e, 17).unwrap();
        assert_eq!(dim.dimension, 9);
        assert!(dim.rigorous);
        assert_eq!(selmer_dimension(&e, 15).unwrap_err(), LocalRedError::NotPrime(15));
        // Bound exponent: min(9, 2n + 4).
        assert_eq!(selmer_size_bound(&e, 17, 1).unwrap(), 6);
        assert_eq!(selmer_size_bound(&e, 17, 100).unwrap(), 9);
    }

    #[test]
    fn threshold_values() {
        assert_eq!(big_monodromy_threshold(0), 15);
        // Independent scan for genus 1: the largest prime l with
        // l <= 18 + 3 e2 + 4 e3 is 19 (e2 = -1, e3 = 1), so c = 21.
        let mut best = 0u64;
        for l in [2u64, 3, 5, 7, 11, 13, 17, 19, 23] {
            let e2: i64 = if l % 4 == 1 { 1 } else { -1 };
            let e3: i64 = if l % 3 == 1 { 1 } else { -1 };
            if (l as i64) <= 18 + 3 * e2 + 4 * e3 {
                best = best.max(l);
            }
        }
        assert_eq!(big_monodromy_threshold(1), 2 + best);
        assert_eq!(best, 19);
        // e2, e3 at l = 13.
        assert_eq!((13 % 4, 13 % 3), (1, 1));
    }

    #[test]
    fn admissibility_reasons() {
        let e = curve5(&[0, 1], &[0, 1]);
        let adm = admissible_prime(&e, 13);
        assert!(!adm.admissible);
        assert!(adm
            .reasons
            .contains(&AdmissibilityFailure::BelowThreshold { threshold: 15 }));
        let adm = admissible_prime(&e, 5);
        assert!(adm.reasons.contains(&AdmissibilityFailure::DividesFieldOrder));
        // All Tamagawa factors of (t, t) are at most 2, so 17 passes.
        let adm = admissible_prime(&e, 17);
        assert!(adm.admissible);
    }
}
