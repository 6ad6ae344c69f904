//! Enumeration and counting of quadratic twist families.
//!
//! The configuration spaces here are sets of square-free polynomials: `F_n`
//! (degree exactly `n`, coprime to a fixed discriminant), their union
//! `F(n)` over degrees up to `n`, and the height-ordered family of all
//! square-free `f` with `h(E_f) <= n`. The latter is enumerated through the
//! decomposition `f = pi0^a * prod_J pi * g` with `g` coprime to the
//! discriminant, which turns the height bound into a degree bound on `g`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::curve::{Curve, CurveError, TwistRecord};
use crate::gf::{Field, FieldElement};
use crate::localred::{
    admissible_prime, reduction_divisors, Admissibility, LocalRedError, Place,
};
use crate::polyring::{Factorization, Poly, PolyError};

/// Upper bound on materialized family members and enumerated candidates.
const ENUMERATION_BUDGET: u128 = 10_000_000;

/// Exhaustive counting is used up to this many candidate tuples; the sieve
/// formula takes over beyond it.
const COUNT_ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// The base curve must have least height among its quadratic twists.
    BaseNotMinimalTwist,
    /// The polynomial being decomposed must be square-free.
    NotSquarefree,
    /// Enumeration or counting exceeds the configured budget.
    InstanceTooLarge,
    /// Too many distinct bad primes for subset enumeration.
    TooManyBadPrimes,
    /// A certified identity of the built-in family failed to hold.
    CertificationFailed(&'static str),
    Curve(CurveError),
    Poly(PolyError),
    LocalRed(LocalRedError),
}

impl fmt::Display for FamilyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyError::BaseNotMinimalTwist => {
                write!(f, "base curve must have least height in its twist family")
            }
            FamilyError::NotSquarefree => write!(f, "polynomial is not square-free"),
            FamilyError::InstanceTooLarge => {
                write!(f, "enumeration exceeds the configured budget")
            }
            FamilyError::TooManyBadPrimes => {
                write!(f, "too many distinct bad primes for subset enumeration")
            }
            FamilyError::CertificationFailed(what) => {
                write!(f, "family certification failed: {what}")
            }
            FamilyError::Curve(e) => write!(f, "{e}"),
            FamilyError::Poly(e) => write!(f, "{e}"),
            FamilyError::LocalRed(e) => write!(f, "{e}"),
        }
    }
}

impl From<CurveError> for FamilyError {
    fn from(e: CurveError) -> Self {
        FamilyError::Curve(e)
    }
}

impl From<PolyError> for FamilyError {
    fn from(e: PolyError) -> Self {
        FamilyError::Poly(e)
    }
}

impl From<LocalRedError> for FamilyError {
    fn from(e: LocalRedError) -> Self {
        FamilyError::LocalRed(e)
    }
}

/// Stream of square-free degree-`n` polynomials coprime to `delta`, every
/// nonzero leading coefficient, in lexicographic coefficient order (constant
/// coordinate most significant).
pub struct FnIter {
    field: Field,
    delta: Poly,
    digits: Vec<u128>,
    exhausted: bool,
}

/// All `f` with `deg f = n` exactly, square-free, `gcd(f, delta) = 1`.
pub fn enumerate_fn(field: &Field, n: u64, delta: &Poly) -> FnIter {
    let mut digits = alloc::vec![0u128; n as usize + 1];
    let last = digits.len() - 1;
    digits[last] = 1;
    FnIter {
        field: field.clone(),
        delta: delta.clone(),
        digits,
        exhausted: false,
    }
}

impl FnIter {
    fn advance(&mut self) {
        let q = self.field.order();
        let last = self.digits.len() - 1;
        let mut pos = last;
        loop {
            self.digits[pos] += 1;
            if self.digits[pos] < q {
                return;
            }
            // Carry; the leading digit restarts at 1, the rest at 0.
            self.digits[pos] = if pos == last { 1 } else { 0 };
            if pos == 0 {
                self.exhausted = true;
                return;
            }
            pos -= 1;
        }
    }

    fn current(&self) -> Poly {
        let coeffs = self
            .digits
            .iter()
            .map(|&d| self.field.element_at(d))
            .collect();
        Poly::from_elems(&self.field, coeffs)
    }
}

impl Iterator for FnIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        while !self.exhausted {
            let f = self.current();
            self.advance();
            if !f.is_squarefree().expect("leading digit is nonzero") {
                continue;
            }
            if !f.gcd(&self.delta).is_constant() {
                continue;
            }
            return Some(f);
        }
        None
    }
}

/// The union space: degrees 0 through `n`, tagged by degree.
pub fn enumerate_f_up_to<'a>(
    field: &'a Field,
    n: u64,
    delta: &'a Poly,
) -> impl Iterator<Item = (u64, Poly)> + 'a {
    (0..=n).flat_map(move |d| enumerate_fn(field, d, delta).map(move |f| (d, f)))
}

/// Exact count of `F_n` together with its leading term `q^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnCount {
    pub exact: u128,
    pub leading_term: u128,
}

/// Count `F_n` exactly: by enumeration while `q^{n+1}` stays below the
/// budget, and by a multiplicative sieve identity beyond it. The two routes
/// agree on the overlap (see the verification suite).
pub fn count_fn(field: &Field, n: u64, delta: &Poly) -> Result<FnCount, FamilyError> {
    let q = field.order();
    let leading_term = crate::arith::checked_pow_u128(q, n as u32 + 1)
        .ok_or(FamilyError::InstanceTooLarge)?;
    let exact = if leading_term <= COUNT_ENUMERATION_LIMIT {
        count_fn_enumerated(field, n, delta)
    } else {
        count_fn_sieve(field, n, delta)?
    };
    Ok(FnCount {
        exact,
        leading_term,
    })
}

/// Brute-force count by full enumeration.
pub fn count_fn_enumerated(field: &Field, n: u64, delta: &Poly) -> u128 {
    enumerate_fn(field, n, delta).count() as u128
}

/// Sieve count: `(q - 1)` times the coefficient of `u^n` in
/// `(1 - q u^2) / (1 - q u) * prod_{pi | delta} (1 + u^{deg pi})^{-1}`,
/// the generating identity for monic square-free polynomials coprime to
/// `delta`.
pub fn count_fn_sieve(field: &Field, n: u64, delta: &Poly) -> Result<u128, FamilyError> {
    let q = field.order();
    if delta.is_zero() {
        return Ok(if n == 0 { q - 1 } else { 0 });
    }
    let n = n as usize;
    let qi = i128::try_from(q).map_err(|_| FamilyError::InstanceTooLarge)?;
    // series[i] = coefficient of u^i, truncated at degree n.
    let mut series = alloc::vec![0i128; n + 1];
    series[0] = 1;
    if !delta.is_constant() {
        for pi in delta.factor()?.distinct() {
            let d = pi.degree().unwrap();
            // Multiply by 1/(1 + u^d) = sum_j (-1)^j u^{jd}.
            let mut next = alloc::vec![0i128; n + 1];
            for (i, &c) in series.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut j = 0usize;
                let mut sign = 1i128;
                while i + j * d <= n {
                    let slot = &mut next[i + j * d];
                    *slot = slot.checked_add(sign * c).ok_or(FamilyError::InstanceTooLarge)?;
                    j += 1;
                    sign = -sign;
                }
            }
            series = next;
        }
    }
    // Multiply by (1 - q u^2).
    let mut shaped = series.clone();
    for i in 2..=n {
        shaped[i] = shaped[i]
            .checked_sub(series[i - 2].checked_mul(qi).ok_or(FamilyError::InstanceTooLarge)?)
            .ok_or(FamilyError::InstanceTooLarge)?;
    }
    // Multiply by 1/(1 - q u) = sum_m q^m u^m and take the u^n coefficient.
    let mut coeff: i128 = 0;
    let mut qpow: i128 = 1;
    for i in (0..=n).rev() {
        coeff = coeff
            .checked_add(shaped[i].checked_mul(qpow).ok_or(FamilyError::InstanceTooLarge)?)
            .ok_or(FamilyError::InstanceTooLarge)?;
        if i > 0 {
            qpow = qpow.checked_mul(qi).ok_or(FamilyError::InstanceTooLarge)?;
        }
    }
    if coeff < 0 {
        return Err(FamilyError::InstanceTooLarge);
    }
    let monic = coeff as u128;
    monic
        .checked_mul(q - 1)
        .ok_or(FamilyError::InstanceTooLarge)
}

/// How a height-bounded family is ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    /// All square-free `f` with `h(E_f) <= n`.
    Height(u64),
    /// All square-free `f` with `deg f <= d` (no height or coprimality cut).
    Degree(u64),
}

/// A twist family anchored at a least-height base curve.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    base: Curve,
    delta_factors: Factorization,
    /// Distinct bad primes other than the distinguished one.
    other_bad_primes: Vec<Poly>,
    /// Least finite multiplicative place, when one exists.
    pi0: Option<Poly>,
    bound: Bound,
}

impl FamilySpec {
    pub fn new(base: Curve, bound: Bound) -> Result<FamilySpec, FamilyError> {
        if !base.is_minimal_twist() {
            return Err(FamilyError::BaseNotMinimalTwist);
        }
        let delta = base.discriminant();
        let delta_factors = delta.factor()?;
        let divisors = reduction_divisors(&base);
        let pi0 = divisors
            .multiplicative()
            .filter_map(|d| match &d.place {
                Place::Finite(p) => Some(p.clone()),
                Place::Infinity => None,
            })
            .min_by(|a, b| a.canonical_cmp(b));
        let other_bad_primes = delta_factors
            .distinct()
            .into_iter()
            .filter(|p| Some(p) != pi0.as_ref())
            .collect();
        Ok(FamilySpec {
            base,
            delta_factors,
            other_bad_primes,
            pi0,
            bound,
        })
    }

    pub fn base(&self) -> &Curve {
        &self.base
    }

    pub fn bound(&self) -> &Bound {
        &self.bound
    }

    pub fn delta_factors(&self) -> &Factorization {
        &self.delta_factors
    }

    pub fn pi0(&self) -> Option<&Poly> {
        self.pi0.as_ref()
    }

    /// `M = max(3 deg A, 2 deg B)`: the base height.
    pub fn base_height(&self) -> u64 {
        self.base.height()
    }
}

/// The decomposition `f = pi0^a * prod_J pi * g`, `g` coprime to the
/// discriminant, with the shifted height offset `M_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistDecomposition {
    pub a: u8,
    pub j: Vec<Poly>,
    pub g: Poly,
    /// `M + 6 deg(prod_J pi)`, degree-weighted.
    pub m_j: u64,
}

/// Decompose a square-free `f` against the family's bad primes.
pub fn decompose_twist(f: &Poly, spec: &FamilySpec) -> Result<TwistDecomposition, FamilyError> {
    if !f.is_squarefree().map_err(FamilyError::Poly)? {
        return Err(FamilyError::NotSquarefree);
    }
    let mut g = f.clone();
    let mut a = 0u8;
    if let Some(pi0) = &spec.pi0 {
        if pi0.divides(&g) {
            a = 1;
            g = g.div_exact(pi0);
        }
    }
    let mut j = Vec::new();
    let mut j_degree = 0u64;
    for pi in &spec.other_bad_primes {
        if pi.divides(&g) {
            g = g.div_exact(pi);
            j_degree += pi.degree().unwrap() as u64;
            j.push(pi.clone());
        }
    }
    debug_assert!(g
        .gcd(&spec.delta_factors.product())
        .is_constant());
    Ok(TwistDecomposition {
        a,
        j,
        g,
        m_j: spec.base_height() + 6 * j_degree,
    })
}

/// One member of an enumerated family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub f: Poly,
    pub decomposition: TwistDecomposition,
    pub twist: TwistRecord,
    pub height: u64,
}

/// How the members were produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Through the `(a, J, g)` decomposition anchored at the distinguished
    /// multiplicative place.
    Decomposed,
    /// No finite multiplicative place exists: direct square-free
    /// enumeration with a per-member height filter.
    DirectFilter,
    /// Ordered by twister degree instead of height.
    DegreeOrdered,
}

#[derive(Clone, Debug)]
pub struct FamilyEnumeration {
    pub mode: EnumerationMode,
    pub members: Vec<FamilyMember>,
}

/// Materialize the bounded family: every square-free `f` (all leading
/// coefficients) with `h(E_f) <= n` under a height bound, or `deg f <= d`
/// under a degree bound. Members carry the reduced twisted model and its
/// height and come out sorted canonically by twister.
pub fn enumerate_height_bounded(spec: &FamilySpec) -> Result<FamilyEnumeration, FamilyError> {
    let field = spec.base.field().clone();
    let one = Poly::one(&field);
    let mut members = Vec::new();
    let push = |f: Poly, members: &mut Vec<FamilyMember>| -> Result<(), FamilyError> {
        if members.len() as u128 >= ENUMERATION_BUDGET {
            return Err(FamilyError::InstanceTooLarge);
        }
        let decomposition = decompose_twist(&f, spec)?;
        let twist = spec.base.quadratic_twist(&f)?;
        let height = twist.normalized_model.height();
        members.push(FamilyMember {
            f,
            decomposition,
            twist,
            height,
        });
        Ok(())
    };

    let mode = match &spec.bound {
        Bound::Degree(dmax) => {
            for (_, f) in enumerate_f_up_to(&field, *dmax, &one) {
                push(f, &mut members)?;
            }
            EnumerationMode::DegreeOrdered
        }
        Bound::Height(n) => {
            let n = *n;
            let m = spec.base_height();
            match &spec.pi0 {
                Some(pi0) => {
                    if spec.other_bad_primes.len() > 20 {
                        return Err(FamilyError::TooManyBadPrimes);
                    }
                    let deg_pi0 = pi0.degree().unwrap() as u64;
                    let delta = spec.delta_factors.product();
                    for a in 0..=1u64 {
                        for mask in 0u32..(1 << spec.other_bad_primes.len()) {
                            let mut prefix = if a == 1 { pi0.clone() } else { one.clone() };
                            let mut j_degree = 0u64;
                            for (i, pi) in spec.other_bad_primes.iter().enumerate() {
                                if mask & (1 << i) != 0 {
                                    prefix = prefix.mul(pi);
                                    j_degree += pi.degree().unwrap() as u64;
                                }
                            }
                            let used = m + 6 * j_degree + 6 * a * deg_pi0;
                            if used > n {
                                continue;
                            }
                            let gmax = (n - used) / 6;
                            for (_, g) in enumerate_f_up_to(&field, gmax, &delta) {
                                push(prefix.mul(&g), &mut members)?;
                            }
                        }
                    }
                    EnumerationMode::Decomposed
                }
                None => {
                    // No multiplicative anchor: enumerate square-free f of
                    // degree up to (n - M)/6 directly and keep h(E_f) <= n.
                    if n >= m {
                        let dmax = (n - m) / 6;
                        for (_, f) in enumerate_f_up_to(&field, dmax, &one) {
                            let twist = spec.base.quadratic_twist(&f)?;
                            if twist.normalized_model.height() <= n {
                                push(f, &mut members)?;
                            }
                        }
                    }
                    EnumerationMode::DirectFilter
                }
            }
        }
    };
    members.sort_by(|x, y| x.f.canonical_cmp(&y.f));
    debug_assert!({
        let mut ok = true;
        if let Bound::Height(n) = spec.bound {
            ok = members.iter().all(|mem| mem.height <= n);
        }
        ok
    });
    Ok(FamilyEnumeration { mode, members })
}

/// One row of the family statistics table.
#[derive(Clone, Debug)]
pub struct StatsRow {
    pub f: Poly,
    pub degree: u64,
    pub a: u8,
    pub j: Vec<Poly>,
    pub g_degree: u64,
    pub height: u64,
    pub deg_m: u64,
    pub deg_a: u64,
    pub selmer_dim: u64,
}

#[derive(Clone, Debug)]
pub struct FamilyStats {
    pub p: u64,
    pub mode: EnumerationMode,
    pub admissibility: Admissibility,
    pub rows: Vec<StatsRow>,
    pub histogram: BTreeMap<u64, u64>,
    pub family_size: u64,
    /// The limiting average the statistics are compared against. This is an
    /// asymptotic prediction, not a computed value.
    pub reference_average: u64,
    pub bound_exponent: Option<u64>,
}

pub const REFERENCE_LABEL: &str = "asymptotic prediction, not computed";

/// The statistics row of a single member: reduction divisors of the reduced
/// twisted model and the dimension `deg M + 2 deg A + 4`. Members are
/// independent, so callers may fan this out across threads and merge.
pub fn stats_row(member: &FamilyMember) -> StatsRow {
    let div = reduction_divisors(&member.twist.normalized_model);
    let dim = div.deg_m + 2 * div.deg_a + 4;
    StatsRow {
        f: member.f.clone(),
        degree: member.f.degree().unwrap_or(0) as u64,
        a: member.decomposition.a,
        j: member.decomposition.j.clone(),
        g_degree: member.decomposition.g.degree().unwrap_or(0) as u64,
        height: member.height,
        deg_m: div.deg_m,
        deg_a: div.deg_a,
        selmer_dim: dim,
    }
}

/// Assemble the full statistics from precomputed rows (histogram is a
/// commutative merge, so row order only affects presentation).
pub fn stats_from_rows(
    spec: &FamilySpec,
    p: u64,
    mode: EnumerationMode,
    rows: Vec<StatsRow>,
) -> FamilyStats {
    let admissibility = admissible_prime(&spec.base, p);
    let bound_exponent = match spec.bound {
        Bound::Height(n) => Some(2 * n + 4),
        Bound::Degree(_) => None,
    };
    let mut histogram = BTreeMap::new();
    for row in &rows {
        if let Some(bound) = bound_exponent {
            debug_assert!(row.selmer_dim <= bound, "dimension exceeds the exponent bound");
        }
        *histogram.entry(row.selmer_dim).or_insert(0) += 1;
    }
    FamilyStats {
        p,
        mode,
        admissibility,
        family_size: rows.len() as u64,
        rows,
        histogram,
        reference_average: p + 1,
        bound_exponent,
    }
}

/// Per-member dimension bookkeeping over the bounded family, with the
/// histogram and the `p + 1` reference value. An inadmissible `p` still
/// produces the report, flagged through `admissibility`.
pub fn family_selmer_stats(spec: &FamilySpec, p: u64) -> Result<FamilyStats, FamilyError> {
    if !crate::arith::is_prime_u64(p) {
        return Err(FamilyError::LocalRed(LocalRedError::NotPrime(p)));
    }
    let enumeration = enumerate_height_bounded(spec)?;
    let rows = enumeration.members.iter().map(stats_row).collect();
    Ok(stats_from_rows(spec, p, enumeration.mode, rows))
}

/// The built-in family with no multiplicative reduction anywhere away from
/// infinity, certified on construction.
#[derive(Clone, Debug)]
pub struct NoMultiplicativeFamily {
    pub curve: Curve,
    pub pi1: Poly,
    pub pi2: Poly,
}

/// Construct `E: y^2 = x^3 + pi1 pi2 t x + pi1 pi2^2 (t+1)` from the Bezout
/// identity `4 pi1 t^3 + 27 pi2 (t+1)^2 = 1`, and certify that its
/// discriminant is a unit times `pi1^2 pi2^3`, that no finite place is
/// multiplicative, and that the curve is its own minimal twist.
pub fn no_multiplicative_family(field: &Field) -> Result<NoMultiplicativeFamily, FamilyError> {
    let t = Poly::gen(field);
    let t1 = Poly::from_ints(field, &[1, 1]);
    let (d, u, v) = t.pow(3).xgcd(&t1.pow(2))?;
    if !d.is_one() {
        return Err(FamilyError::CertificationFailed("Bezout gcd is not 1"));
    }
    let pi1 = u.mul_elem(&field.from_u64(4).inv().expect("4 is a unit"));
    let pi2 = v.mul_elem(&field.from_u64(27).inv().expect("27 is a unit"));
    if pi1.degree() != Some(1) || pi2.degree() != Some(2) {
        return Err(FamilyError::CertificationFailed("cofactor degrees"));
    }
    let a = pi1.mul(&pi2).mul(&t);
    let b = pi1.mul(&pi2.pow(2)).mul(&t1);
    let curve = Curve::new(a.clone(), b.clone())?;
    if curve.a() != &a || curve.b() != &b {
        return Err(FamilyError::CertificationFailed("model not reduced as built"));
    }
    let expected_disc = pi1
        .pow(2)
        .mul(&pi2.pow(3))
        .mul_elem(&field.from_i64(-16));
    if curve.discriminant() != expected_disc {
        return Err(FamilyError::CertificationFailed("discriminant identity"));
    }
    if crate::localred::has_multiplicative_away_from_infinity(&curve) {
        return Err(FamilyError::CertificationFailed(
            "unexpected finite multiplicative place",
        ));
    }
    if !curve.is_minimal_twist() {
        return Err(FamilyError::CertificationFailed("not its own minimal twist"));
    }
    Ok(NoMultiplicativeFamily { curve, pi1, pi2 })
}

/// Least non-square of the field in canonical order; used to pick square
/// class representatives when deduplicating twists `f ~ c^2 f`.
pub fn least_nonsquare(field: &Field) -> FieldElement {
    field
        .elements()
        .find(|e| !e.is_zero() && !e.is_square())
        .expect("finite fields of odd order have non-squares")
}
