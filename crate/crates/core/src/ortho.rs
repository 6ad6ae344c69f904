//! Nondegenerate symmetric bilinear forms over `F_p` (p odd), reflections,
//! constructive Witt extension, and brute-force orbit counting for the
//! orthogonal group and for subgroups generated by commutators of
//! reflections.
//!
//! Orbit computations sweep a union-find structure over all of `F_p^d`:
//! every generator contributes the edges `x ~ g(x)`, so the components are
//! exactly the orbits of the generated subgroup. Since isometries preserve
//! norms, blocks always refine the norm level sets, and the level sets
//! themselves (zero vector, nonzero isotropic vectors, one set per nonzero
//! norm) number `p + 1` when the dimension is at least 3. Reaching `p + 1`
//! blocks therefore *proves* the partition equals the level sets — for the
//! full orthogonal group and for any subgroup sandwiched above the sampled
//! generators.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::{is_prime_u64, SplitMix64};

/// Vector-count budget for orbit computations.
pub const DEFAULT_VECTOR_BUDGET: usize = 1_000_000;

/// Seed for sampled reflections.
pub const DEFAULT_ORBIT_SEED: u64 = 0x5eed_0b17;

const EXTRA_GENERATOR_BATCHES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrthoError {
    /// The modulus must be an odd prime.
    NotOddPrime(u64),
    /// Gram matrix malformed: wrong shape or not symmetric.
    GramNotSymmetric,
    /// Gram matrix is degenerate.
    Degenerate,
    /// Dimension below the operation's requirement.
    DimensionTooSmall { required: usize },
    /// `p^d` exceeds the vector budget.
    InstanceTooLarge,
    /// Reflections need an anisotropic vector.
    IsotropicVector,
    /// Witt extension needs equal norms.
    NormMismatch,
    /// Vectors must be nonzero.
    ZeroVector,
    /// Isotropic Witt extension is not supported below dimension 3.
    IsotropicUnsupported,
    /// The sampled generators failed to close up to the expected structure.
    ClosureIncomplete,
}

impl fmt::Display for OrthoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrthoError::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            OrthoError::GramNotSymmetric => write!(f, "gram matrix is not symmetric"),
            OrthoError::Degenerate => write!(f, "bilinear form is degenerate"),
            OrthoError::DimensionTooSmall { required } => {
                write!(f, "dimension must be at least {required}")
            }
            OrthoError::InstanceTooLarge => write!(f, "instance too large"),
            OrthoError::IsotropicVector => write!(f, "reflection at an isotropic vector"),
            OrthoError::NormMismatch => write!(f, "vectors have different norms"),
            OrthoError::ZeroVector => write!(f, "vector must be nonzero"),
            OrthoError::IsotropicUnsupported => {
                write!(f, "isotropic extension not supported below dimension 3")
            }
            OrthoError::ClosureIncomplete => {
                write!(f, "orbit closure did not reach the expected structure")
            }
        }
    }
}

/// Square matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
struct Mat {
    p: u64,
    n: usize,
    a: Vec<u64>,
}

impl Mat {
    fn zero(p: u64, n: usize) -> Mat {
        Mat {
            p,
            n,
            a: alloc::vec![0; n * n],
        }
    }

    fn identity(p: u64, n: usize) -> Mat {
        let mut m = Mat::zero(p, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    fn from_rows(p: u64, rows: &[Vec<u64>]) -> Mat {
        let n = rows.len();
        let mut m = Mat::zero(p, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.a[i * n + j] = v % p;
            }
        }
        m
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    fn mul(&self, rhs: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(self.p, n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    out.a[i * n + j] =
                        (out.a[i * n + j] + aik * rhs.at(k, j)) % self.p;
                }
            }
        }
        out
    }

    fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut out = alloc::vec![0u64; n];
        for i in 0..n {
            let mut acc = 0u64;
            for j in 0..n {
                acc = (acc + self.at(i, j) * v[j]) % self.p;
            }
            out[i] = acc;
        }
        out
    }

    fn transpose(&self) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(self.p, n);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.at(i, j);
            }
        }
        out
    }

    fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    /// Determinant by Gaussian elimination mod p.
    fn det(&self) -> u64 {
        let p = self.p;
        let n = self.n;
        let mut m = self.a.clone();
        let mut det: u64 = 1;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != 0);
            let pivot = match pivot {
                Some(r) => r,
                None => return 0,
            };
            if pivot != col {
                for j in 0..n {
                    m.swap(pivot * n + j, col * n + j);
                }
                det = (p - det) % p;
            }
            let pv = m[col * n + col];
            det = det * pv % p;
            let inv = inv_mod(pv, p);
            for r in (col + 1)..n {
                let factor = m[r * n + col] * inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = factor * m[col * n + j] % p;
                    m[r * n + j] = (m[r * n + j] + p - sub) % p;
                }
            }
        }
        det
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::arith::pow_mod_u64(a, p - 2, p)
}

/// A form-preserving linear map; the matrix satisfies `M^T G M = G`.
#[derive(Clone, PartialEq, Eq)]
pub struct Isometry {
    mat: Mat,
}

impl Isometry {
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.mat.mul_vec(v)
    }

    pub fn compose(&self, inner: &Isometry) -> Isometry {
        Isometry {
            mat: self.mat.mul(&inner.mat),
        }
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.mat.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.mat == Mat::identity(self.mat.p, self.mat.n)
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry{:?}", self.mat.rows())
    }
}

/// `F_p^d` with a nondegenerate symmetric bilinear form.
#[derive(Clone)]
pub struct FormSpace {
    p: u64,
    dim: usize,
    gram: Mat,
}

impl FormSpace {
    pub fn new(p: u64, dim: usize, gram_rows: &[Vec<u64>]) -> Result<FormSpace, OrthoError> {
        if p == 2 || !is_prime_u64(p) {
            return Err(OrthoError::NotOddPrime(p));
        }
        if dim == 0 || gram_rows.len() != dim || gram_rows.iter().any(|r| r.len() != dim) {
            return Err(OrthoError::GramNotSymmetric);
        }
        let gram = Mat::from_rows(p, gram_rows);
        for i in 0..dim {
            for j in 0..dim {
                if gram.at(i, j) != gram.at(j, i) {
                    return Err(OrthoError::GramNotSymmetric);
                }
            }
        }
        if gram.det() == 0 {
            return Err(OrthoError::Degenerate);
        }
        Ok(FormSpace { p, dim, gram })
    }

    /// The standard dot product.
    pub fn identity_form(p: u64, dim: usize) -> Result<FormSpace, OrthoError> {
        let rows: Vec<Vec<u64>> = (0..dim)
            .map(|i| (0..dim).map(|j| u64::from(i == j)).collect())
            .collect();
        FormSpace::new(p, dim, &rows)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram_rows(&self) -> Vec<Vec<u64>> {
        self.gram.rows()
    }

    pub fn inner(&self, u: &[u64], v: &[u64]) -> u64 {
        let gv = self.gram.mul_vec(v);
        let mut acc = 0u64;
        for i in 0..self.dim {
            acc = (acc + u[i] % self.p * gv[i]) % self.p;
        }
        acc
    }

    /// `mu(v, v)`.
    pub fn norm(&self, v: &[u64]) -> u64 {
        self.inner(v, v)
    }

    /// Reflection in the hyperplane orthogonal to an anisotropic vector:
    /// `x -> x - 2 mu(x, v)/mu(v, v) * v`. An involution of determinant -1.
    pub fn reflection(&self, v: &[u64]) -> Result<Isometry, OrthoError> {
        if v.iter().all(|&c| c % self.p == 0) {
            return Err(OrthoError::ZeroVector);
        }
        let q = self.norm(v);
        if q == 0 {
            return Err(OrthoError::IsotropicVector);
        }
        let p = self.p;
        let gv = self.gram.mul_vec(v);
        let scale = 2 * inv_mod(q, p) % p;
        let mut mat = Mat::identity(p, self.dim);
        for i in 0..self.dim {
            let vi = v[i] % p;
            if vi == 0 {
                continue;
            }
            for j in 0..self.dim {
                let sub = vi * gv[j] % p * scale % p;
                let idx = i * self.dim + j;
                mat.a[idx] = (mat.a[idx] + p - sub) % p;
            }
        }
        let iso = Isometry { mat };
        debug_assert!(self.preserves_form(&iso));
        Ok(iso)
    }

    pub fn preserves_form(&self, iso: &Isometry) -> bool {
        iso.mat.transpose().mul(&self.gram).mul(&iso.mat) == self.gram
    }

    pub fn identity_isometry(&self) -> Isometry {
        Isometry {
            mat: Mat::identity(self.p, self.dim),
        }
    }

    /// Constructive Witt extension: an isometry taking `v` to `w`, for
    /// nonzero vectors of equal norm. One or two reflections when the norm
    /// is nonzero; for isotropic vectors (dimension at least 3) the map is
    /// built through an auxiliary isotropic vector pairing nontrivially
    /// with both.
    pub fn witt_extend(&self, v: &[u64], w: &[u64]) -> Result<Isometry, OrthoError> {
        let p = self.p;
        let vr: Vec<u64> = v.iter().map(|&c| c % p).collect();
        let wr: Vec<u64> = w.iter().map(|&c| c % p).collect();
        if vr.iter().all(|&c| c == 0) || wr.iter().all(|&c| c == 0) {
            return Err(OrthoError::ZeroVector);
        }
        let qv = self.norm(&vr);
        if qv != self.norm(&wr) {
            return Err(OrthoError::NormMismatch);
        }
        if vr == wr {
            return Ok(self.identity_isometry());
        }
        let diff = sub_vec(&vr, &wr, p);
        if self.norm(&diff) != 0 {
            // Same norm and anisotropic difference: one reflection suffices.
            let iso = self.reflection(&diff)?;
            debug_assert!(iso.apply(&vr) == wr);
            return Ok(iso);
        }
        if qv != 0 {
            // norm(v + w) = 4 qv != 0: reflect to -w, then in w.
            let sum = add_vec(&vr, &wr, p);
            let first = self.reflection(&sum)?;
            let second = self.reflection(&wr)?;
            let iso = second.compose(&first);
            debug_assert!(iso.apply(&vr) == wr);
            return Ok(iso);
        }
        // Both isotropic and mu(v, w) = 0.
        if self.dim < 3 {
            return Err(OrthoError::IsotropicUnsupported);
        }
        let u = self.pairing_witness(&vr, &wr);
        let a = self.inner(&vr, &u);
        // z = u - norm(u)/(2a) * v is isotropic and pairs with both v and w.
        let shift = self.norm(&u) % p * inv_mod(2 * a % p, p) % p;
        let z: Vec<u64> = (0..self.dim)
            .map(|i| (u[i] + (p - shift) * vr[i]) % p)
            .collect();
        debug_assert!(self.norm(&z) == 0);
        debug_assert!(self.inner(&vr, &z) != 0 && self.inner(&wr, &z) != 0);
        let first = self.reflection(&sub_vec(&z, &vr, p))?;
        let second = self.reflection(&sub_vec(&wr, &z, p))?;
        let iso = second.compose(&first);
        debug_assert!(iso.apply(&vr) == wr);
        Ok(iso)
    }

    /// A vector pairing nontrivially with both arguments (which pair to 0
    /// with each other); exists by nondegeneracy.
    fn pairing_witness(&self, v: &[u64], w: &[u64]) -> Vec<u64> {
        let mut iv = None;
        let mut iw = None;
        for i in 0..self.dim {
            let mut e = alloc::vec![0u64; self.dim];
            e[i] = 1;
            let a = self.inner(v, &e);
            let b = self.inner(w, &e);
            if a != 0 && b != 0 {
                return e;
            }
            if a != 0 && iv.is_none() {
                iv = Some(i);
            }
            if b != 0 && iw.is_none() {
                iw = Some(i);
            }
        }
        let (i, j) = (
            iv.expect("nondegenerate form pairs v with some basis vector"),
            iw.expect("nondegenerate form pairs w with some basis vector"),
        );
        let mut e = alloc::vec![0u64; self.dim];
        e[i] = 1;
        e[j] = (e[j] + 1) % self.p;
        e
    }

    /// An orthogonal basis of anisotropic vectors, found deterministically;
    /// exists in odd characteristic for every nondegenerate form.
    fn anisotropic_orthogonal_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let n = self.dim;
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut e = alloc::vec![0u64; n];
                e[i] = 1;
                e
            })
            .collect();
        for step in 0..n {
            let found = (step..n).find(|&i| self.norm(&rows[i]) != 0);
            let idx = match found {
                Some(i) => i,
                None => {
                    // All remaining rows isotropic; some pair must couple.
                    let mut pair = None;
                    'outer: for i in step..n {
                        for j in (i + 1)..n {
                            if self.inner(&rows[i], &rows[j]) != 0 {
                                pair = Some((i, j));
                                break 'outer;
                            }
                        }
                    }
                    let (i, j) = pair.expect("nondegenerate on the complement");
                    let merged = add_vec(&rows[i], &rows[j], p);
                    rows[i] = merged;
                    i
                }
            };
            rows.swap(step, idx);
            let q = self.norm(&rows[step]);
            let qinv = inv_mod(q, p);
            for i in (step + 1)..n {
                let c = self.inner(&rows[i], &rows[step]) % p * qinv % p;
                if c == 0 {
                    continue;
                }
                let adjusted: Vec<u64> = (0..n)
                    .map(|k| (rows[i][k] + (p - c) * rows[step][k]) % p)
                    .collect();
                rows[i] = adjusted;
            }
        }
        debug_assert!(rows.iter().all(|r| self.norm(r) != 0));
        rows
    }

    fn total_vectors(&self) -> Result<usize, OrthoError> {
        let total = crate::arith::checked_pow_u128(self.p as u128, self.dim as u32)
            .ok_or(OrthoError::InstanceTooLarge)?;
        if total > DEFAULT_VECTOR_BUDGET as u128 {
            return Err(OrthoError::InstanceTooLarge);
        }
        Ok(total as usize)
    }

    fn decode(&self, mut idx: usize, out: &mut [u64]) {
        for slot in out.iter_mut() {
            *slot = (idx % self.p as usize) as u64;
            idx /= self.p as usize;
        }
    }

    fn encode(&self, v: &[u64]) -> usize {
        let mut idx = 0usize;
        for &c in v.iter().rev() {
            idx = idx * self.p as usize + (c % self.p) as usize;
        }
        idx
    }

    fn random_reflection(&self, rng: &mut SplitMix64) -> Isometry {
        loop {
            let v: Vec<u64> = (0..self.dim).map(|_| rng.below(self.p)).collect();
            if v.iter().all(|&c| c == 0) || self.norm(&v) == 0 {
                continue;
            }
            return self.reflection(&v).expect("anisotropic by construction");
        }
    }

    /// Orbit partition of `F_p^d` under the full orthogonal group, by
    /// union-find closure under reflections at an orthogonal anisotropic
    /// basis plus sampled extra reflections until the level-set structure
    /// (`p + 1` blocks) is reached. Requires dimension at least 3.
    pub fn orbit_partition_o(&self) -> Result<OrbitPartition, OrthoError> {
        self.orbit_partition_o_seeded(DEFAULT_ORBIT_SEED)
    }

    pub fn orbit_partition_o_seeded(&self, seed: u64) -> Result<OrbitPartition, OrthoError> {
        if self.dim < 3 {
            return Err(OrthoError::DimensionTooSmall { required: 3 });
        }
        let total = self.total_vectors()?;
        let mut rng = SplitMix64::new(seed);
        let mut uf = UnionFind::new(total);
        for basis_vec in self.anisotropic_orthogonal_basis() {
            let refl = self.reflection(&basis_vec).expect("basis is anisotropic");
            self.sweep(&refl, &mut uf, total);
        }
        let target = self.p as usize + 1;
        for _ in 0..EXTRA_GENERATOR_BATCHES {
            if uf.set_count() == target {
                break;
            }
            for _ in 0..(2 * self.dim) {
                let refl = self.random_reflection(&mut rng);
                self.sweep(&refl, &mut uf, total);
            }
        }
        if uf.set_count() != target {
            return Err(OrthoError::ClosureIncomplete);
        }
        Ok(self.build_partition(&mut uf, total))
    }

    /// Orbit partition under commutators `[r1, r2]` of sampled reflections:
    /// a subgroup of the commutator subgroup of `O(V)`. Requires dimension
    /// at least 5. Reaching `p + 1` blocks proves the commutator-subgroup
    /// orbit count is exactly `p + 1` (the partition is squeezed between the
    /// sampled subgroup's and the norm level sets); otherwise the partition
    /// is only an upper refinement and is flagged inconclusive.
    pub fn orbit_partition_commutator(
        &self,
        generator_budget: usize,
    ) -> Result<(OrbitPartition, Certainty), OrthoError> {
        self.orbit_partition_commutator_seeded(generator_budget, DEFAULT_ORBIT_SEED)
    }

    pub fn orbit_partition_commutator_seeded(
        &self,
        generator_budget: usize,
        seed: u64,
    ) -> Result<(OrbitPartition, Certainty), OrthoError> {
        if self.dim < 5 {
            return Err(OrthoError::DimensionTooSmall { required: 5 });
        }
        let total = self.total_vectors()?;
        let mut rng = SplitMix64::new(seed);
        let mut uf = UnionFind::new(total);
        let target = self.p as usize + 1;
        let mut used = 0usize;
        while used < generator_budget && uf.set_count() != target {
            let r1 = self.random_reflection(&mut rng);
            let r2 = self.random_reflection(&mut rng);
            // Reflections are involutions, so [r1, r2] = r1 r2 r1 r2.
            let commutator = r1.compose(&r2).compose(&r1).compose(&r2);
            self.sweep(&commutator, &mut uf, total);
            used += 1;
        }
        let certainty = if uf.set_count() == target {
            Certainty::Proved
        } else {
            Certainty::InconclusiveUpperRefinement
        };
        Ok((self.build_partition(&mut uf, total), certainty))
    }

    fn sweep(&self, iso: &Isometry, uf: &mut UnionFind, total: usize) {
        let mut v = alloc::vec![0u64; self.dim];
        for idx in 0..total {
            self.decode(idx, &mut v);
            let image = iso.apply(&v);
            uf.union(idx, self.encode(&image));
        }
    }

    fn build_partition(&self, uf: &mut UnionFind, total: usize) -> OrbitPartition {
        let mut block_of_root: alloc::collections::BTreeMap<usize, u32> =
            alloc::collections::BTreeMap::new();
        let mut blocks: Vec<OrbitBlock> = Vec::new();
        let mut assignment = alloc::vec![0u32; total];
        let mut v = alloc::vec![0u64; self.dim];
        for idx in 0..total {
            let root = uf.find(idx);
            let next_id = blocks.len() as u32;
            let id = *block_of_root.entry(root).or_insert_with(|| {
                self.decode(idx, &mut v);
                let norm = self.norm(&v);
                let label = if idx == 0 {
                    BlockLabel::Zero
                } else if norm == 0 {
                    BlockLabel::Isotropic
                } else {
                    BlockLabel::Norm(norm)
                };
                blocks.push(OrbitBlock {
                    label,
                    size: 0,
                    representative: v.clone(),
                });
                next_id
            });
            blocks[id as usize].size += 1;
            assignment[idx] = id;
            debug_assert!({
                self.decode(idx, &mut v);
                let n = self.norm(&v);
                match blocks[id as usize].label {
                    BlockLabel::Zero => idx == 0,
                    BlockLabel::Isotropic => n == 0,
                    BlockLabel::Norm(b) => n == b,
                }
            });
        }
        OrbitPartition { blocks, assignment }
    }
}

fn add_vec(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

fn sub_vec(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y % p) % p).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certainty {
    Proved,
    InconclusiveUpperRefinement,
}

impl fmt::Display for Certainty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certainty::Proved => write!(f, "proved"),
            Certainty::InconclusiveUpperRefinement => {
                write!(f, "inconclusive-upper-refinement")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockLabel {
    Zero,
    Isotropic,
    Norm(u64),
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLabel::Zero => write!(f, "zero vector"),
            BlockLabel::Isotropic => write!(f, "isotropic"),
            BlockLabel::Norm(n) => write!(f, "norm {n}"),
        }
    }
}

/// One orbit: its label, size, and minimal member (blocks are ordered by
/// minimal member, so the zero block comes first).
#[derive(Clone, Debug)]
pub struct OrbitBlock {
    pub label: BlockLabel,
    pub size: u64,
    pub representative: Vec<u64>,
}

/// A partition of `F_p^d` into orbit blocks.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub blocks: Vec<OrbitBlock>,
    assignment: Vec<u32>,
}

impl OrbitPartition {
    pub fn orbit_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    /// Index of the block containing the encoded vector index.
    pub fn block_index(&self, encoded: usize) -> u32 {
        self.assignment[encoded]
    }
}

/// Union-find with path halving and union by size.
struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    fn set_count(&self) -> usize {
        self.sets
    }
}

/// Outcome of checking the explicit 5x5 commutator construction: the two
/// basis-swap involutions, their products with the diagonal form, and the
/// displayed commutator matrix. Acting on coordinate rows, the commutator
/// carries the first basis vector `v` to the last one `w`.
#[derive(Clone, Debug)]
pub struct CommutatorCheck {
    pub p: u64,
    pub psi: Vec<Vec<u64>>,
    pub phi: Vec<Vec<u64>>,
    pub commutator: Vec<Vec<u64>>,
    pub involutions_ok: bool,
    pub gram_preserved: bool,
    pub matches_expected: bool,
    pub maps_v_to_w: bool,
}

impl CommutatorCheck {
    pub fn all_ok(&self) -> bool {
        self.involutions_ok && self.gram_preserved && self.matches_expected && self.maps_v_to_w
    }
}

/// Instantiate the explicit commutator witness on an orthogonal basis
/// `{v, u1, u2, u3, w}` of equal norms over `F_p` and verify its algebra:
/// `psi` swaps `(v u1)(u2 u3)`, `phi` swaps `(u1 u2)(u3 w)`, both are
/// involutive isometries of the diagonal form, and `psi phi psi^-1 phi^-1`
/// equals the expected permutation matrix, whose first row is the
/// `w`-indicator (it moves `v` to `w` on coordinate rows).
pub fn five_dim_commutator_check(p: u64) -> Result<CommutatorCheck, OrthoError> {
    if p == 2 || !is_prime_u64(p) {
        return Err(OrthoError::NotOddPrime(p));
    }
    let space = FormSpace::identity_form(p, 5)?;
    let psi = Mat::from_rows(
        p,
        &[
            alloc::vec![0, 1, 0, 0, 0],
            alloc::vec![1, 0, 0, 0, 0],
            alloc::vec![0, 0, 0, 1, 0],
            alloc::vec![0, 0, 1, 0, 0],
            alloc::vec![0, 0, 0, 0, 1],
        ],
    );
    let phi = Mat::from_rows(
        p,
        &[
            alloc::vec![1, 0, 0, 0, 0],
            alloc::vec![0, 0, 1, 0, 0],
            alloc::vec![0, 1, 0, 0, 0],
            alloc::vec![0, 0, 0, 0, 1],
            alloc::vec![0, 0, 0, 1, 0],
        ],
    );
    let expected = Mat::from_rows(
        p,
        &[
            alloc::vec![0, 0, 0, 0, 1],
            alloc::vec![0, 0, 1, 0, 0],
            alloc::vec![0, 0, 0, 1, 0],
            alloc::vec![1, 0, 0, 0, 0],
            alloc::vec![0, 1, 0, 0, 0],
        ],
    );
    let ident = Mat::identity(p, 5);
    let involutions_ok = psi.mul(&psi) == ident && phi.mul(&phi) == ident;
    let psi_iso = Isometry { mat: psi.clone() };
    let phi_iso = Isometry { mat: phi.clone() };
    let gram_preserved = space.preserves_form(&psi_iso) && space.preserves_form(&phi_iso);
    // psi^-1 = psi and phi^-1 = phi, so the commutator is psi phi psi phi.
    let commutator = psi.mul(&phi).mul(&psi).mul(&phi);
    let matches_expected = commutator == expected;
    let first_row = &commutator.rows()[0];
    let maps_v_to_w = first_row == &alloc::vec![0, 0, 0, 0, 1];
    Ok(CommutatorCheck {
        p,
        psi: psi.rows(),
        phi: phi.rows(),
        commutator: commutator.rows(),
        involutions_ok,
        gram_preserved,
        matches_expected,
        maps_v_to_w,
    })
}
