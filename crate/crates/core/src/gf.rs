//! Exact arithmetic in finite fields `F_q`, `q = p^k` with `p >= 5`.
//!
//! A [`Field`] is either a prime field `F_p` or a quotient `L[x]/(m)` of a
//! smaller field by a monic irreducible modulus. Extensions built by
//! [`make_field`] sit directly over `F_p`; residue fields of places construct
//! further quotients over extension bases, so towers work uniformly.
//!
//! Elements are canonical residue vectors. The canonical ordering used for
//! tie-breaks and deterministic scans compares the little-endian residue
//! vector lexicographically, constant coordinate first; this is also the
//! order in which [`Field::elements`] enumerates.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::arith::{checked_pow_u128, is_prime_u64};

/// Largest field order for which square roots are found by exhaustive scan;
/// above it a deterministic Tonelli ladder is used.
const SQRT_SCAN_LIMIT: u128 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    /// The requested characteristic is not prime.
    NotPrime(u64),
    /// Characteristics 2 and 3 are out of scope.
    CharacteristicBelowFive(u64),
    /// Extension degree must be at least 1.
    InvalidDegree,
    /// A modulus was supplied for a prime field.
    ModulusForPrimeField,
    /// Modulus degree does not match the requested extension degree.
    ModulusDegreeMismatch { expected: u32, got: u32 },
    /// Modulus must be monic.
    ModulusNotMonic,
    /// Modulus factors over the base field.
    ReducibleModulus,
    /// The element count does not fit the exact-arithmetic budget (u128).
    FieldTooLarge,
    /// Division by zero or inverting zero.
    DivisionByZero,
    /// Square root of a non-square requested.
    NonSquare,
    /// Residue supplied is outside the field (wrong length or base).
    MalformedElement,
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NotPrime(p) => write!(f, "{p} is not prime"),
            GfError::CharacteristicBelowFive(p) => {
                write!(f, "characteristic below 5: {p}")
            }
            GfError::InvalidDegree => write!(f, "extension degree must be positive"),
            GfError::ModulusForPrimeField => {
                write!(f, "modulus supplied for a prime field (k = 1)")
            }
            GfError::ModulusDegreeMismatch { expected, got } => {
                write!(f, "modulus degree {got} does not match extension degree {expected}")
            }
            GfError::ModulusNotMonic => write!(f, "modulus must be monic"),
            GfError::ReducibleModulus => write!(f, "modulus is reducible"),
            GfError::FieldTooLarge => write!(f, "field order exceeds the exact-arithmetic budget"),
            GfError::DivisionByZero => write!(f, "division by zero"),
            GfError::NonSquare => write!(f, "element is not a square"),
            GfError::MalformedElement => write!(f, "residue vector does not describe an element"),
        }
    }
}

enum FieldKind {
    Prime,
    Ext {
        base: Field,
        /// Monic modulus over the base, length `e + 1`, leading coefficient 1.
        modulus: Vec<FieldElement>,
    },
}

struct FieldRepr {
    kind: FieldKind,
    characteristic: u64,
    order: u128,
    /// Total degree over the prime field.
    total_degree: u32,
}

/// Handle to a finite field; cheap to clone, immutable, thread-safe.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.characteristic() != other.characteristic() || self.order() != other.order() {
            return false;
        }
        match (&self.0.kind, &other.0.kind) {
            (FieldKind::Prime, FieldKind::Prime) => true,
            (
                FieldKind::Ext { base: b1, modulus: m1 },
                FieldKind::Ext { base: b2, modulus: m2 },
            ) => b1 == b2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for Field {}

/// Construct `F_{p^k}`, `p` prime and at least 5.
///
/// For `k > 1` the modulus may be supplied as the little-endian coefficient
/// vector of a monic irreducible of degree `k` over `F_p`; when absent, the
/// canonically least monic irreducible is found by exhaustive scan, so the
/// construction is reproducible across runs and machines.
pub fn make_field(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Field, GfError> {
    if p < 5 {
        if is_prime_u64(p) {
            return Err(GfError::CharacteristicBelowFive(p));
        }
        return Err(GfError::NotPrime(p));
    }
    if !is_prime_u64(p) {
        return Err(GfError::NotPrime(p));
    }
    if k == 0 {
        return Err(GfError::InvalidDegree);
    }
    let prime = Field(Arc::new(FieldRepr {
        kind: FieldKind::Prime,
        characteristic: p,
        order: p as u128,
        total_degree: 1,
    }));
    if k == 1 {
        return match modulus {
            None => Ok(prime),
            Some(_) => Err(GfError::ModulusForPrimeField),
        };
    }
    checked_pow_u128(p as u128, k).ok_or(GfError::FieldTooLarge)?;
    let coeffs: Vec<FieldElement> = match modulus {
        Some(raw) => {
            if raw.len() != k as usize + 1 {
                return Err(GfError::ModulusDegreeMismatch {
                    expected: k,
                    got: raw.len().saturating_sub(1) as u32,
                });
            }
            if raw[k as usize] % p != 1 {
                return Err(GfError::ModulusNotMonic);
            }
            let elems: Vec<FieldElement> = raw.iter().map(|&c| prime.from_u64(c)).collect();
            if !crate::polyring::raw_is_irreducible(&prime, &elems) {
                return Err(GfError::ReducibleModulus);
            }
            elems
        }
        None => scan_irreducible(&prime, k),
    };
    Field::extension(prime, coeffs)
}

/// Least monic irreducible of degree `k` over the prime field, comparing
/// non-leading coefficient vectors `(c_0, .., c_{k-1})` lexicographically.
fn scan_irreducible(prime: &Field, k: u32) -> Vec<FieldElement> {
    let p = prime.characteristic();
    let total = checked_pow_u128(p as u128, k).expect("order checked by caller");
    let mut idx: u128 = 0;
    while idx < total {
        let mut coeffs: Vec<FieldElement> = Vec::with_capacity(k as usize + 1);
        let mut rem = idx;
        let mut digits = Vec::with_capacity(k as usize);
        for i in 0..k {
            let div = checked_pow_u128(p as u128, k - 1 - i).unwrap();
            digits.push((rem / div) as u64);
            rem %= div;
        }
        for &d in &digits {
            coeffs.push(prime.from_u64(d));
        }
        coeffs.push(prime.one());
        if crate::polyring::raw_is_irreducible(prime, &coeffs) {
            return coeffs;
        }
        idx += 1;
    }
    unreachable!("irreducibles of every degree exist over a finite field")
}

impl Field {
    /// Quotient of `base` by a monic modulus of degree >= 2. Irreducibility
    /// is the caller's responsibility ([`make_field`] and
    /// `polyring::residue_field` both validate before calling).
    pub(crate) fn extension(base: Field, modulus: Vec<FieldElement>) -> Result<Field, GfError> {
        let e = modulus.len().saturating_sub(1);
        debug_assert!(e >= 2, "degree-1 quotients are the base field itself");
        debug_assert!(modulus.last().map(|c| c.is_one()).unwrap_or(false));
        debug_assert!(modulus.iter().all(|c| c.field() == &base));
        let order = (0..e)
            .try_fold(1u128, |acc, _| acc.checked_mul(base.order()))
            .ok_or(GfError::FieldTooLarge)?;
        let characteristic = base.characteristic();
        let total_degree = base
            .total_degree()
            .checked_mul(e as u32)
            .ok_or(GfError::FieldTooLarge)?;
        Ok(Field(Arc::new(FieldRepr {
            kind: FieldKind::Ext { base, modulus },
            characteristic,
            order,
            total_degree,
        })))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    pub fn order(&self) -> u128 {
        self.0.order
    }

    /// Degree over the prime field.
    pub fn total_degree(&self) -> u32 {
        self.0.total_degree
    }

    /// Degree over the immediate base field (1 for prime fields).
    pub fn extension_degree(&self) -> u32 {
        match &self.0.kind {
            FieldKind::Prime => 1,
            FieldKind::Ext { modulus, .. } => (modulus.len() - 1) as u32,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0.kind, FieldKind::Prime)
    }

    /// Immediate base field of an extension.
    pub fn base_field(&self) -> Option<&Field> {
        match &self.0.kind {
            FieldKind::Prime => None,
            FieldKind::Ext { base, .. } => Some(base),
        }
    }

    /// Monic modulus over the immediate base, little-endian, length `e + 1`.
    pub fn modulus(&self) -> Option<&[FieldElement]> {
        match &self.0.kind {
            FieldKind::Prime => None,
            FieldKind::Ext { modulus, .. } => Some(modulus),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match &self.0.kind {
            FieldKind::Prime => FieldElement {
                field: self.clone(),
                rep: Rep::Prime(0),
            },
            FieldKind::Ext { base, modulus } => FieldElement {
                field: self.clone(),
                rep: Rep::Ext(alloc::vec![base.zero(); modulus.len() - 1]),
            },
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// Image of an integer under the canonical map `Z -> F_q`.
    pub fn from_u64(&self, v: u64) -> FieldElement {
        match &self.0.kind {
            FieldKind::Prime => FieldElement {
                field: self.clone(),
                rep: Rep::Prime(v % self.characteristic()),
            },
            FieldKind::Ext { base, .. } => self.embed(base.from_u64(v)),
        }
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.characteristic() as i128;
        let r = ((v as i128 % p) + p) % p;
        self.from_u64(r as u64)
    }

    /// Lift an element of the immediate base field into this extension.
    pub fn embed(&self, elt: FieldElement) -> FieldElement {
        match &self.0.kind {
            FieldKind::Prime => {
                assert!(elt.field() == self, "embed into a prime field");
                elt
            }
            FieldKind::Ext { base, modulus } => {
                assert!(elt.field() == base, "element does not live in the base field");
                let e = modulus.len() - 1;
                let mut rep = Vec::with_capacity(e);
                rep.push(elt);
                for _ in 1..e {
                    rep.push(base.zero());
                }
                FieldElement {
                    field: self.clone(),
                    rep: Rep::Ext(rep),
                }
            }
        }
    }

    /// Element from its coordinate vector over the immediate base
    /// (little-endian in the modulus basis, length = extension degree).
    pub fn element_from_coords(&self, coords: Vec<FieldElement>) -> Result<FieldElement, GfError> {
        match &self.0.kind {
            FieldKind::Prime => Err(GfError::MalformedElement),
            FieldKind::Ext { base, modulus } => {
                if coords.len() != modulus.len() - 1 || coords.iter().any(|c| c.field() != base) {
                    return Err(GfError::MalformedElement);
                }
                Ok(FieldElement {
                    field: self.clone(),
                    rep: Rep::Ext(coords),
                })
            }
        }
    }

    /// Element from flattened prime-field residues, little-endian, length =
    /// total degree. This is the CLI wire format for extension elements.
    pub fn element_from_residues(&self, residues: &[u64]) -> Result<FieldElement, GfError> {
        if residues.len() != self.total_degree() as usize {
            return Err(GfError::MalformedElement);
        }
        Ok(self.element_from_residues_inner(residues))
    }

    fn element_from_residues_inner(&self, residues: &[u64]) -> FieldElement {
        match &self.0.kind {
            FieldKind::Prime => self.from_u64(residues[0]),
            FieldKind::Ext { base, modulus } => {
                let e = modulus.len() - 1;
                let chunk = base.total_degree() as usize;
                let coords = (0..e)
                    .map(|i| base.element_from_residues_inner(&residues[i * chunk..(i + 1) * chunk]))
                    .collect();
                FieldElement {
                    field: self.clone(),
                    rep: Rep::Ext(coords),
                }
            }
        }
    }

    /// The element at position `idx` in canonical order; `idx < order`.
    pub fn element_at(&self, idx: u128) -> FieldElement {
        debug_assert!(idx < self.order());
        match &self.0.kind {
            FieldKind::Prime => self.from_u64(idx as u64),
            FieldKind::Ext { base, modulus } => {
                let e = modulus.len() - 1;
                let b = base.order();
                let mut rem = idx;
                let mut coords = Vec::with_capacity(e);
                for i in 0..e {
                    let div = checked_pow_u128(b, (e - 1 - i) as u32).expect("order bounded");
                    coords.push(base.element_at(rem / div));
                    rem %= div;
                }
                FieldElement {
                    field: self.clone(),
                    rep: Rep::Ext(coords),
                }
            }
        }
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Elements {
        Elements {
            field: self.clone(),
            next: 0,
        }
    }
}

/// Iterator over a field's elements in canonical order.
pub struct Elements {
    field: Field,
    next: u128,
}

impl Iterator for Elements {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.field.order() {
            return None;
        }
        let e = self.field.element_at(self.next);
        self.next += 1;
        Some(e)
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Rep {
    Prime(u64),
    Ext(Vec<FieldElement>),
}

/// Element of a [`Field`]; immutable value with representation equality.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    rep: Rep,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.rep {
            Rep::Prime(v) => *v == 0,
            Rep::Ext(c) => c.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.rep {
            Rep::Prime(v) => *v == 1,
            Rep::Ext(c) => c[0].is_one() && c[1..].iter().all(|x| x.is_zero()),
        }
    }

    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match &self.rep {
            Rep::Prime(v) => Some(*v),
            Rep::Ext(_) => None,
        }
    }

    /// Coordinates over the immediate base field.
    pub fn coords(&self) -> Option<&[FieldElement]> {
        match &self.rep {
            Rep::Prime(_) => None,
            Rep::Ext(c) => Some(c),
        }
    }

    /// Flattened prime-field residues, little-endian; length = total degree.
    pub fn flatten(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.field.total_degree() as usize);
        self.flatten_into(&mut out);
        out
    }

    fn flatten_into(&self, out: &mut Vec<u64>) {
        match &self.rep {
            Rep::Prime(v) => out.push(*v),
            Rep::Ext(c) => {
                for x in c {
                    x.flatten_into(out);
                }
            }
        }
    }

    /// Position in the canonical element order.
    pub fn canonical_index(&self) -> u128 {
        match &self.rep {
            Rep::Prime(v) => *v as u128,
            Rep::Ext(c) => {
                let base = self.field.base_field().expect("ext element");
                let b = base.order();
                c.iter().fold(0u128, |acc, x| acc * b + x.canonical_index())
            }
        }
    }

    /// Total order used everywhere a deterministic choice is needed:
    /// lexicographic on the flattened little-endian residue vector.
    pub fn canonical_cmp(&self, other: &FieldElement) -> Ordering {
        assert!(self.field == other.field, "comparing elements of different fields");
        self.canonical_index().cmp(&other.canonical_index())
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "mixed-field addition");
        match (&self.rep, &rhs.rep) {
            (Rep::Prime(a), Rep::Prime(b)) => {
                let p = self.field.characteristic();
                FieldElement {
                    field: self.field.clone(),
                    rep: Rep::Prime((a + b) % p),
                }
            }
            (Rep::Ext(a), Rep::Ext(b)) => FieldElement {
                field: self.field.clone(),
                rep: Rep::Ext(a.iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            },
            _ => unreachable!("equal fields share representation"),
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match &self.rep {
            Rep::Prime(a) => {
                let p = self.field.characteristic();
                FieldElement {
                    field: self.field.clone(),
                    rep: Rep::Prime(if *a == 0 { 0 } else { p - a }),
                }
            }
            Rep::Ext(c) => FieldElement {
                field: self.field.clone(),
                rep: Rep::Ext(c.iter().map(|x| x.neg()).collect()),
            },
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        assert!(self.field == rhs.field, "mixed-field multiplication");
        match (&self.rep, &rhs.rep) {
            (Rep::Prime(a), Rep::Prime(b)) => {
                let p = self.field.characteristic();
                FieldElement {
                    field: self.field.clone(),
                    rep: Rep::Prime(crate::arith::mul_mod_u64(*a, *b, p)),
                }
            }
            (Rep::Ext(a), Rep::Ext(b)) => {
                let base = self.field.base_field().expect("ext element");
                let modulus = self.field.modulus().expect("ext element");
                let e = a.len();
                let mut prod = alloc::vec![base.zero(); 2 * e - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        prod[i + j] = prod[i + j].add(&x.mul(y));
                    }
                }
                // Fold down by the monic modulus.
                for i in (e..2 * e - 1).rev() {
                    if prod[i].is_zero() {
                        continue;
                    }
                    let c = prod[i].clone();
                    for j in 0..e {
                        if !modulus[j].is_zero() {
                            prod[i - e + j] = prod[i - e + j].sub(&c.mul(&modulus[j]));
                        }
                    }
                    prod[i] = base.zero();
                }
                prod.truncate(e);
                FieldElement {
                    field: self.field.clone(),
                    rep: Rep::Ext(prod),
                }
            }
            _ => unreachable!("equal fields share representation"),
        }
    }

    pub fn square(&self) -> FieldElement {
        self.mul(self)
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat: `x^(q-2)`.
    pub fn inv(&self) -> Result<FieldElement, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Inverse image under Frobenius: the unique `y` with `y^p = x`.
    pub fn pth_root(&self) -> FieldElement {
        let p = self.field.characteristic() as u128;
        let mut acc = self.clone();
        // Frobenius has order total_degree; apply it total_degree - 1 times.
        for _ in 1..self.field.total_degree() {
            acc = acc.pow(p);
        }
        acc
    }

    /// Euler criterion; zero counts as a square.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.pow((self.field.order() - 1) / 2).is_one()
    }

    /// Deterministic square root: the representative whose canonical
    /// encoding is least. Errors on non-squares.
    pub fn sqrt(&self) -> Result<FieldElement, GfError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if !self.is_square() {
            return Err(GfError::NonSquare);
        }
        let q = self.field.order();
        if q <= SQRT_SCAN_LIMIT {
            for y in self.field.elements() {
                if y.square() == *self {
                    return Ok(y);
                }
            }
            unreachable!("Euler criterion certified a root exists");
        }
        let y = if q % 4 == 3 {
            self.pow((q + 1) / 4)
        } else {
            self.tonelli()
        };
        let neg = y.neg();
        Ok(if neg.canonical_cmp(&y) == Ordering::Less { neg } else { y })
    }

    /// Tonelli-Shanks with the non-residue chosen by deterministic scan.
    fn tonelli(&self) -> FieldElement {
        let q = self.field.order();
        let mut m = q - 1;
        let mut s = 0u32;
        while m % 2 == 0 {
            m /= 2;
            s += 1;
        }
        let z = self
            .field
            .elements()
            .find(|e| !e.is_zero() && !e.is_square())
            .expect("finite fields of odd order have non-squares");
        let mut c = z.pow(m);
        let mut y = self.pow((m + 1) / 2);
        let mut t = self.pow(m);
        let mut level = s;
        while !t.is_one() {
            let mut i = 0u32;
            let mut probe = t.clone();
            while !probe.is_one() {
                probe = probe.square();
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(level - i - 1) {
                b = b.square();
            }
            y = y.mul(&b);
            c = b.square();
            t = t.mul(&c);
            level = i;
        }
        y
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rep {
            Rep::Prime(v) => write!(f, "{v}"),
            Rep::Ext(c) => {
                write!(f, "[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl core::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl core::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl core::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl core::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}
