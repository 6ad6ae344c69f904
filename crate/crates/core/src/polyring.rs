//! Exact arithmetic and factorization in `F_q[t]`.
//!
//! Polynomials are dense little-endian coefficient vectors in canonical form
//! (no trailing zeros; the zero polynomial is the empty vector). Everything
//! here is deterministic: factorization uses distinct-degree splitting
//! followed by equal-degree splitting driven by a fixed-seed candidate
//! stream, and the seed is recorded in the output.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith::{checked_pow_u128, SplitMix64};
use crate::gf::{Field, FieldElement, GfError};

/// Seed for the equal-degree splitting candidate stream.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Operation rejects the zero polynomial.
    ZeroPolynomial,
    /// Both xgcd arguments are zero.
    BothZero,
    /// Arguments live over different fields.
    MismatchedFields,
    /// The place must be monic.
    PlaceNotMonic,
    /// The place must be irreducible.
    PlaceNotIrreducible,
    /// Derived field or exponent exceeds the exact-arithmetic budget.
    InstanceTooLarge,
    /// Discriminant of a polynomial with vanishing derivative.
    VanishingDerivative,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ZeroPolynomial => write!(f, "zero polynomial not allowed here"),
            PolyError::BothZero => write!(f, "both polynomials are zero"),
            PolyError::MismatchedFields => write!(f, "polynomials over different fields"),
            PolyError::PlaceNotMonic => write!(f, "place must be monic"),
            PolyError::PlaceNotIrreducible => write!(f, "place must be irreducible"),
            PolyError::InstanceTooLarge => {
                write!(f, "instance exceeds the exact-arithmetic budget")
            }
            PolyError::VanishingDerivative => {
                write!(f, "formal derivative vanishes; discriminant undefined")
            }
        }
    }
}

impl From<GfError> for PolyError {
    fn from(e: GfError) -> Self {
        match e {
            GfError::FieldTooLarge => PolyError::InstanceTooLarge,
            _ => PolyError::InstanceTooLarge,
        }
    }
}

/// Dense univariate polynomial over a [`Field`], lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        let coeffs = if c.is_zero() { Vec::new() } else { alloc::vec![c] };
        Poly { field, coeffs }
    }

    /// The generator `t`.
    pub fn gen(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: alloc::vec![field.zero(), field.one()],
        }
    }

    pub fn monomial(c: FieldElement, deg: usize) -> Poly {
        let field = c.field().clone();
        if c.is_zero() {
            return Poly::zero(&field);
        }
        let mut coeffs = alloc::vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Poly { field, coeffs }
    }

    pub fn from_elems(field: &Field, coeffs: Vec<FieldElement>) -> Poly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// Convenience constructor from integer coefficients, lowest first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_elems(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `(f / lc, lc)`; requires a nonzero polynomial.
    pub fn monic(&self) -> (Poly, FieldElement) {
        let lc = self.leading_coeff().expect("monic of zero polynomial").clone();
        if lc.is_one() {
            return (self.clone(), lc);
        }
        let inv = lc.inv().expect("leading coefficient is nonzero");
        (self.mul_elem(&inv), lc)
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "mixed-field polynomial addition");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &rhs.coeff(i));
        }
        Poly::from_elems(&self.field, out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert!(self.field == rhs.field, "mixed-field polynomial multiplication");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = alloc::vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_elems(&self.field, out)
    }

    pub fn mul_elem(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        Poly::from_elems(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = alloc::vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        assert!(self.field == divisor.field, "mixed-field division");
        let dd = divisor.degree().unwrap();
        if self.degree().map(|d| d < dd).unwrap_or(true) {
            return (Poly::zero(&self.field), self.clone());
        }
        let lc_inv = divisor.leading_coeff().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = alloc::vec![self.field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lc_inv;
            for j in 0..dd {
                rem[i - dd + j] = &rem[i - dd + j] - &(&q * &divisor.coeffs[j]);
            }
            rem[i] = self.field.zero();
            quot[i - dd] = q;
        }
        (
            Poly::from_elems(&self.field, quot),
            Poly::from_elems(&self.field, rem),
        )
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(self.field == *x.field(), "evaluation point in a different field");
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &self.field.from_u64(i as u64) * c)
            .collect();
        Poly::from_elems(&self.field, out)
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)` and `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field, "mixed-field gcd");
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().0
        }
    }

    /// Extended gcd with canonical minimal-degree cofactors:
    /// `u*f + v*g = d` with `d` monic; when neither input divides the other,
    /// `deg u < deg g - deg d` and `deg v < deg f - deg d`. When `g | f` the
    /// convention is `u = 0`, `v = lc(g)^{-1} * (d / monic(g))`.
    pub fn xgcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
        if self.field != other.field {
            return Err(PolyError::MismatchedFields);
        }
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::BothZero);
        }
        let field = &self.field;
        if self.is_zero() {
            let (d, lc) = other.monic();
            return Ok((d, Poly::zero(field), Poly::constant(lc.inv().unwrap())));
        }
        if other.is_zero() {
            let (d, lc) = self.monic();
            return Ok((d, Poly::constant(lc.inv().unwrap()), Poly::zero(field)));
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
        let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let lc = r0.leading_coeff().unwrap().clone();
        let lc_inv = lc.inv().unwrap();
        let d = r0.mul_elem(&lc_inv);
        let mut u = s0.mul_elem(&lc_inv);
        let v;
        let g_over_d = other.div_exact(&d);
        if g_over_d.is_constant() {
            // other divides self; fixed convention.
            u = Poly::zero(field);
            v = d.div_exact(other);
        } else {
            u = u.rem(&g_over_d);
            v = d.sub(&u.mul(self)).div_exact(other);
        }
        debug_assert!(u.mul(self).add(&v.mul(other)) == d);
        Ok((d, u, v))
    }

    /// True iff `f` has no repeated irreducible factor. Constants are
    /// square-free; a vanishing derivative on a nonconstant polynomial means
    /// a p-th power.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            return Ok(false);
        }
        Ok(self.gcd(&d).is_constant())
    }

    /// Polynomial `g` with `g(t)^p = f(t)`; requires every exponent to be a
    /// multiple of `p` (i.e. vanishing derivative).
    fn pth_root_poly(&self) -> Poly {
        let p = self.field.characteristic() as usize;
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(c.pth_root());
            } else {
                debug_assert!(c.is_zero(), "pth root of a non-pth-power");
            }
        }
        Poly::from_elems(&self.field, out)
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn powmod(&self, mut exp: u128, modulus: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Irreducibility over the coefficient field. Constants and zero are not
    /// irreducible; degree 1 always is.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let q = self.field.order();
        let x = Poly::gen(&self.field);
        // x^{q^d} = x mod f, via iterated Frobenius.
        let mut w = x.rem(self);
        for _ in 0..d {
            w = w.powmod(q, self);
        }
        if w != x.rem(self) {
            return false;
        }
        for ell in prime_divisors(d) {
            let mut w = x.rem(self);
            for _ in 0..(d / ell) {
                w = w.powmod(q, self);
            }
            if !w.sub(&x).gcd(self).is_constant() {
                return false;
            }
        }
        true
    }

    /// Canonical full factorization: square-free decomposition, then
    /// distinct-degree and seeded equal-degree splitting.
    pub fn factor(&self) -> Result<Factorization, PolyError> {
        self.factor_seeded(DEFAULT_FACTOR_SEED)
    }

    pub fn factor_seeded(&self, seed: u64) -> Result<Factorization, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let unit = self.leading_coeff().unwrap().clone();
        let mut rng = SplitMix64::new(seed);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        if !self.is_constant() {
            let monic = self.monic().0;
            for (part, mult) in squarefree_decomposition(&monic) {
                for (h, d) in distinct_degree_parts(&part)? {
                    for irr in equal_degree_split(&h, d, &mut rng)? {
                        factors.push((irr, mult));
                    }
                }
            }
        }
        factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        let fact = Factorization {
            unit,
            factors,
            seed,
        };
        debug_assert!(fact.product() == *self);
        Ok(fact)
    }

    /// Resultant via the Euclidean remainder sequence (exact over a field).
    pub fn resultant(&self, other: &Poly) -> Result<FieldElement, PolyError> {
        if self.field != other.field {
            return Err(PolyError::MismatchedFields);
        }
        if self.is_zero() || other.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let field = &self.field;
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = field.one();
        loop {
            let db = b.degree().unwrap();
            if db == 0 {
                let da = a.degree().unwrap() as u128;
                return Ok(&acc * &b.coeff(0).pow(da));
            }
            let da = a.degree().unwrap();
            let r = a.rem(&b);
            if r.is_zero() {
                return Ok(field.zero());
            }
            let dr = r.degree().unwrap();
            let mut step = b.leading_coeff().unwrap().pow((da - dr) as u128);
            if (da * db) % 2 == 1 {
                step = step.neg();
            }
            acc = &acc * &step;
            a = b;
            b = r;
        }
    }

    /// `disc(f) = (-1)^{d(d-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<FieldElement, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let d = self.degree().unwrap();
        let fd = self.derivative();
        if fd.is_zero() {
            return Err(PolyError::VanishingDerivative);
        }
        let res = self.resultant(&fd)?;
        let lc_inv = self.leading_coeff().unwrap().inv().unwrap();
        let mut out = &res * &lc_inv;
        if (d * (d - 1) / 2) % 2 == 1 {
            out = out.neg();
        }
        Ok(out)
    }

    /// Largest `e` with `pi^e | f`; `pi` must be monic irreducible.
    pub fn valuation(&self, pi: &Poly) -> Result<u32, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        check_place(pi)?;
        let mut e = 0u32;
        let mut rest = self.clone();
        loop {
            let (q, r) = rest.div_rem(pi);
            if !r.is_zero() {
                return Ok(e);
            }
            e += 1;
            rest = q;
        }
    }

    /// Order everything the same way: by degree, then by the little-endian
    /// coefficient vector compared coordinate-wise in the canonical element
    /// order. The zero polynomial sorts first.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        match (self.degree(), other.degree()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(da), Some(db)) => da.cmp(&db).then_with(|| {
                for i in 0..=da {
                    let c = self.coeffs[i].canonical_cmp(&other.coeffs[i]);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Square-free decomposition in characteristic p, p-th-power branch included.
fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    debug_assert!(f.is_monic());
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let fd = f.derivative();
    if fd.is_zero() {
        for (h, m) in squarefree_decomposition(&f.pth_root_poly()) {
            out.push((h, m * f.field().characteristic() as u32));
        }
        return out;
    }
    let mut c = f.gcd(&fd);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_constant() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_constant() {
        for (h, m) in squarefree_decomposition(&c.pth_root_poly()) {
            out.push((h, m * f.field().characteristic() as u32));
        }
    }
    out
}

/// Split a monic square-free polynomial into products of irreducibles of a
/// common degree.
fn distinct_degree_parts(f: &Poly) -> Result<Vec<(Poly, usize)>, PolyError> {
    let field = f.field();
    let q = field.order();
    let x = Poly::gen(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut w = x.rem(&rest);
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 1 {
        d += 1;
        if rest.degree().unwrap() < 2 * d {
            // What remains is a single irreducible.
            out.push((rest.clone(), rest.degree().unwrap()));
            break;
        }
        w = w.powmod(q, &rest);
        let g = w.sub(&x).gcd(&rest);
        if !g.is_constant() {
            out.push((g.clone(), d));
            rest = rest.div_exact(&g);
            w = w.rem(&rest);
        }
    }
    Ok(out)
}

/// Seeded Cantor-Zassenhaus equal-degree splitting (odd q).
fn equal_degree_split(
    h: &Poly,
    d: usize,
    rng: &mut SplitMix64,
) -> Result<Vec<Poly>, PolyError> {
    let deg = h.degree().unwrap();
    if deg == d {
        return Ok(alloc::vec![h.clone()]);
    }
    let field = h.field();
    let q = field.order();
    let qd = checked_pow_u128(q, d as u32).ok_or(PolyError::InstanceTooLarge)?;
    let exponent = (qd - 1) / 2;
    loop {
        let mut coeffs = Vec::with_capacity(deg);
        for _ in 0..deg {
            coeffs.push(field.element_at(rng.below_u128(q)));
        }
        let a = Poly::from_elems(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let s = a.powmod(exponent, h);
        let g = s.sub(&Poly::one(field)).gcd(h);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < deg {
                let mut left = equal_degree_split(&g, d, rng)?;
                let right = equal_degree_split(&h.div_exact(&g), d, rng)?;
                left.extend(right);
                return Ok(left);
            }
        }
    }
}

fn check_place(pi: &Poly) -> Result<(), PolyError> {
    if !pi.is_monic() {
        return Err(PolyError::PlaceNotMonic);
    }
    if !pi.is_irreducible() {
        return Err(PolyError::PlaceNotIrreducible);
    }
    Ok(())
}

/// Canonical factorization: `unit * prod(factors^mult)` reproduces the input
/// exactly; factors are monic irreducible, pairwise distinct, sorted by
/// (degree, coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
    pub seed: u64,
}

impl Factorization {
    pub fn product(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }

    /// Distinct monic irreducible factors in canonical order.
    pub fn distinct(&self) -> Vec<Poly> {
        self.factors.iter().map(|(f, _)| f.clone()).collect()
    }
}

/// The residue field `F_q[t]/(pi)` at a monic irreducible place, together
/// with the reduction and lift maps. For a linear place the residue field is
/// the coefficient field itself and reduction is evaluation at the root.
#[derive(Clone)]
pub struct ResidueField {
    field: Field,
    place: Poly,
    root: Option<FieldElement>,
}

impl ResidueField {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn place(&self) -> &Poly {
        &self.place
    }

    /// Reduction map `F_q[t] -> F_q[t]/(pi)`.
    pub fn reduce(&self, f: &Poly) -> FieldElement {
        match &self.root {
            Some(r) => f.eval(r),
            None => {
                let e = self.place.degree().unwrap();
                let r = f.rem(&self.place);
                let mut coords = Vec::with_capacity(e);
                for i in 0..e {
                    coords.push(r.coeff(i));
                }
                self.field.element_from_coords(coords).expect("residue coords are valid")
            }
        }
    }

    /// Canonical lift: the representative of degree less than `deg pi`.
    pub fn lift(&self, x: &FieldElement) -> Poly {
        assert!(x.field() == &self.field, "element of a different residue field");
        match &self.root {
            Some(_) => Poly::constant(x.clone()),
            None => {
                let base = self.place.field();
                Poly::from_elems(base, x.coords().expect("extension element").to_vec())
            }
        }
    }
}

/// Construct the residue field at `pi` (monic irreducible).
pub fn residue_field(pi: &Poly) -> Result<ResidueField, PolyError> {
    check_place(pi)?;
    let base = pi.field();
    let e = pi.degree().unwrap();
    if e == 1 {
        let root = pi.coeff(0).neg();
        return Ok(ResidueField {
            field: base.clone(),
            place: pi.clone(),
            root: Some(root),
        });
    }
    let field = Field::extension(base.clone(), pi.coeffs().to_vec())
        .map_err(|_| PolyError::InstanceTooLarge)?;
    Ok(ResidueField {
        field,
        place: pi.clone(),
        root: None,
    })
}

/// Irreducibility of a raw coefficient vector; used by field construction.
pub(crate) fn raw_is_irreducible(field: &Field, coeffs: &[FieldElement]) -> bool {
    Poly::from_elems(field, coeffs.to_vec()).is_irreducible()
}

impl fmt::Display for Poly {
    /// Canonical text form, e.g. `3*t^2+4*t+1`; extension coefficients print
    /// bracketed, e.g. `[1,2]*t+[0,3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let unit_coeff = c.is_one();
            match (i, unit_coeff) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{c}*t")?,
                (_, true) => write!(f, "t^{i}")?,
                (_, false) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl core::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl core::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl core::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl core::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use alloc::format;
    use alloc::vec;

    fn f5() -> Field {
        make_field(5, 1, None).unwrap()
    }

    fn f7() -> Field {
        make_field(7, 1, None).unwrap()
    }

    #[test]
    fn display_round_values() {
        let f = f5();
        let p = Poly::from_ints(&f, &[1, 0, 3]);
        assert_eq!(format!("{p}"), "3*t^2+1");
        assert_eq!(format!("{}", Poly::zero(&f)), "0");
        assert_eq!(format!("{}", Poly::from_ints(&f, &[0, 1])), "t");
        assert_eq!(format!("{}", Poly::from_ints(&f, &[2, 1, 1])), "t^2+t+2");
    }

    #[test]
    fn xgcd_coprime_linears() {
        let f = f5();
        let t = Poly::gen(&f);
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let (d, u, v) = t.xgcd(&t1).unwrap();
        assert!(d.is_one());
        assert_eq!(u.mul(&t).add(&v.mul(&t1)), d);
    }

    #[test]
    fn xgcd_bezout_for_cube_and_square() {
        // The pair behind the built-in no-multiplicative-reduction family:
        // u*t^3 + v*(t+1)^2 = 1 with deg u <= 1, deg v <= 2.
        let f = f5();
        let t3 = Poly::gen(&f).pow(3);
        let sq = Poly::from_ints(&f, &[1, 1]).pow(2);
        let (d, u, v) = t3.xgcd(&sq).unwrap();
        assert!(d.is_one());
        assert!(u.degree().unwrap() <= 1);
        assert!(v.degree().unwrap() <= 2);
        assert_eq!(u.mul(&t3).add(&v.mul(&sq)), d);
        // Independently derived over the integers: u = -(3t+4), v = 3t^2-2t+1.
        assert_eq!(u, Poly::from_ints(&f, &[-4, -3]));
        assert_eq!(v, Poly::from_ints(&f, &[1, -2, 3]));
    }

    #[test]
    fn xgcd_self_convention() {
        let f = f5();
        let p = Poly::from_ints(&f, &[1, 2, 3]);
        let (d, u, v) = p.xgcd(&p).unwrap();
        assert_eq!(d, p.monic().0);
        assert!(u.is_zero());
        assert_eq!(v, Poly::constant(p.leading_coeff().unwrap().inv().unwrap()));
    }

    #[test]
    fn xgcd_rejections() {
        let f = f5();
        let z = Poly::zero(&f);
        assert_eq!(z.xgcd(&z), Err(PolyError::BothZero));
        let g = f7();
        let a = Poly::gen(&f);
        let b = Poly::gen(&g);
        assert_eq!(a.xgcd(&b), Err(PolyError::MismatchedFields));
    }

    #[test]
    fn squarefree_detection() {
        let f = f5();
        let t = Poly::gen(&f);
        let t1 = Poly::from_ints(&f, &[1, 1]);
        assert!(t.mul(&t1).is_squarefree().unwrap());
        assert!(!t.pow(2).is_squarefree().unwrap());
        // t^5 over F_5: derivative vanishes, p-th power branch.
        assert!(!t.pow(5).is_squarefree().unwrap());
        assert!(Poly::from_ints(&f, &[3]).is_squarefree().unwrap());
        assert_eq!(Poly::zero(&f).is_squarefree(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn factor_by_inspection() {
        let f = f5();
        let p = Poly::from_ints(&f, &[0, 1, 1]); // t^2 + t
        let fac = p.factor().unwrap();
        assert!(fac.unit.is_one());
        assert_eq!(
            fac.factors,
            vec![
                (Poly::gen(&f), 1),
                (Poly::from_ints(&f, &[1, 1]), 1),
            ]
        );
        assert_eq!(fac.product(), p);
    }

    #[test]
    fn factor_splits_or_stays_irreducible() {
        // t^2 + 1 splits over F_5 (2^2 = -1) and is irreducible over F_7.
        let f = f5();
        let p = Poly::from_ints(&f, &[1, 0, 1]);
        let fac = p.factor().unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (Poly::from_ints(&f, &[2, 1]), 1),
                (Poly::from_ints(&f, &[3, 1]), 1),
            ]
        );
        let g = f7();
        let p7 = Poly::from_ints(&g, &[1, 0, 1]);
        let fac7 = p7.factor().unwrap();
        assert_eq!(fac7.factors, vec![(p7.clone(), 1)]);
        assert!(p7.is_irreducible());
    }

    #[test]
    fn factor_with_multiplicities_and_unit() {
        let f = f5();
        let t = Poly::gen(&f);
        let t2 = Poly::from_ints(&f, &[2, 1]);
        let input = t.pow(3).mul(&t2.pow(2)).mul_elem(&f.from_u64(3));
        let fac = input.factor().unwrap();
        assert_eq!(fac.unit, f.from_u64(3));
        assert_eq!(fac.factors, vec![(t.clone(), 3), (t2.clone(), 2)]);
        assert_eq!(fac.product(), input);
        // Fifth powers exercise the vanishing-derivative branch.
        let p5 = t2.pow(5);
        let fac5 = p5.factor().unwrap();
        assert_eq!(fac5.factors, vec![(t2, 5)]);
    }

    #[test]
    fn factor_deterministic_across_calls() {
        let f = f7();
        // (t^2+1)(t^2+t+3)(t+2), shuffled by multiplication.
        let p = Poly::from_ints(&f, &[1, 0, 1])
            .mul(&Poly::from_ints(&f, &[3, 1, 1]))
            .mul(&Poly::from_ints(&f, &[2, 1]));
        let a = p.factor().unwrap();
        let b = p.factor().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, DEFAULT_FACTOR_SEED);
        assert_eq!(a.product(), p);
    }

    #[test]
    fn resultant_and_discriminant_examples() {
        let f = f5();
        let t = Poly::gen(&f);
        let t1 = Poly::from_ints(&f, &[1, 1]);
        assert!(t.resultant(&t1).unwrap().is_one());
        // disc(t^2 + bt + c) = b^2 - 4c, checked for every (b, c).
        for b in 0..5i64 {
            for c in 0..5i64 {
                let p = Poly::from_ints(&f, &[c, b, 1]);
                let expect = f.from_i64(b * b - 4 * c);
                assert_eq!(p.discriminant().unwrap(), expect);
            }
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor() {
        // Exhaustive cross-check over all pairs of monic quadratics over F_5.
        let f = f5();
        for a0 in 0..5i64 {
            for a1 in 0..5i64 {
                let p = Poly::from_ints(&f, &[a0, a1, 1]);
                for b0 in 0..5i64 {
                    for b1 in 0..5i64 {
                        let q = Poly::from_ints(&f, &[b0, b1, 1]);
                        let res = p.resultant(&q).unwrap();
                        let share = !p.gcd(&q).is_constant();
                        assert_eq!(res.is_zero(), share, "res/gcd mismatch at {p} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn valuations() {
        let f = f5();
        let t = Poly::gen(&f);
        let t1 = Poly::from_ints(&f, &[1, 1]);
        let p = t.pow(3).mul(&t1);
        assert_eq!(p.valuation(&t).unwrap(), 3);
        assert_eq!(t.pow(3).valuation(&t1).unwrap(), 0);
        assert_eq!(p.valuation(&Poly::from_ints(&f, &[0, 2])), Err(PolyError::PlaceNotMonic));
        assert_eq!(
            p.valuation(&Poly::from_ints(&f, &[0, 0, 1])),
            Err(PolyError::PlaceNotIrreducible)
        );
    }

    #[test]
    fn residue_field_of_quadratic_place() {
        // F_7[t]/(t^2+1) is a field with 49 elements where t maps to a
        // square root of -1.
        let f = f7();
        let pi = Poly::from_ints(&f, &[1, 0, 1]);
        let rf = residue_field(&pi).unwrap();
        assert_eq!(rf.field().order(), 49);
        let t_image = rf.reduce(&Poly::gen(&f));
        assert_eq!(t_image.square(), rf.field().from_i64(-1));
        // Reduce-lift round trip.
        let sample = Poly::from_ints(&f, &[3, 4, 1, 2]);
        let red = rf.reduce(&sample);
        assert_eq!(rf.reduce(&rf.lift(&red)), red);
    }

    #[test]
    fn residue_field_of_linear_place_is_base() {
        let f = f5();
        let pi = Poly::from_ints(&f, &[3, 1]); // t + 3, root 2
        let rf = residue_field(&pi).unwrap();
        assert!(rf.field() == &f);
        let p = Poly::from_ints(&f, &[1, 1]); // t + 1 -> 3 at t = 2
        assert_eq!(rf.reduce(&p), f.from_u64(3));
    }

    #[test]
    fn residue_field_over_extension_base() {
        // Tower: quadratic place over F_25 gives a field of order 625.
        let f25 = make_field(5, 2, None).unwrap();
        let p = Poly::from_ints(&f25, &[3, 0, 1]); // t^2 + 3
        if p.is_irreducible() {
            let rf = residue_field(&p).unwrap();
            assert_eq!(rf.field().order(), 625);
            let im = rf.reduce(&Poly::gen(&f25));
            assert_eq!(im.square(), rf.field().from_i64(-3));
        } else {
            // If t^2+3 splits over F_25, pick a scanned irreducible instead.
            let pi = (0..25u64)
                .map(|c| {
                    Poly::from_elems(&f25, vec![f25.element_at(c as u128), f25.zero(), f25.one()])
                })
                .find(|p| p.is_irreducible())
                .unwrap();
            let rf = residue_field(&pi).unwrap();
            assert_eq!(rf.field().order(), 625);
        }
    }

    #[test]
    fn canonical_ordering() {
        let f = f5();
        let a = Poly::from_ints(&f, &[2, 1]);
        let b = Poly::from_ints(&f, &[3, 1]);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(Poly::zero(&f).canonical_cmp(&a), Ordering::Less);
        assert_eq!(a.canonical_cmp(&Poly::from_ints(&f, &[0, 0, 1])), Ordering::Less);
    }
}
