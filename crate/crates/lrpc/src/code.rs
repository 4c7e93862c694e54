//! LRPC codes, rank errors and syndromes.
//!
//! An [n, k] LRPC code of dual rank weight d is given by a parity-check
//! matrix H of rank n-k whose entries all lie in a d-dimensional
//! F_q-subspace A of F_{q^m}. An error vector of rank weight r factors as
//! e = beta * C where beta is a basis of its r-dimensional support and C
//! is an r x n coordinate matrix of rank r over F_q.
//!
//! Support recovery lives in [`crate::decoders`]; this module provides
//! instance generation, syndrome computation and the final coordinate
//! solve that turns a recovered support back into the full error vector.

use crate::error::{Error, Result};
use crate::fq;
use crate::gf::{Field, FieldElement};
use crate::rng::Rng;
use crate::subspace::Subspace;

/// Attempts at sampling a full-rank H before giving up.
const MAX_RANK_RESAMPLES: u32 = 100;

/// Attempts at sampling a rank-r coordinate matrix before giving up.
const MAX_COORD_RESAMPLES: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrpcCode {
    n: usize,
    k: usize,
    d: usize,
    support: Subspace,
    /// (n-k) x n parity-check matrix with every entry in `support`.
    h: Vec<Vec<FieldElement>>,
}

impl LrpcCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// The parity-check support A.
    pub fn support(&self) -> &Subspace {
        &self.support
    }

    pub fn parity_check(&self) -> &[Vec<FieldElement>] {
        &self.h
    }

    /// Assembles a code from parts, revalidating every invariant: H has
    /// shape (n-k) x n, full rank over F_{q^m}, entries inside the
    /// d-dimensional support.
    pub fn from_parts(
        field: &Field,
        n: usize,
        k: usize,
        support: Subspace,
        h: Vec<Vec<FieldElement>>,
    ) -> Result<LrpcCode> {
        if k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "need 0 < k < n, got n={n} k={k}"
            )));
        }
        if h.len() != n - k || h.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParameters(
                "parity-check shape mismatch".into(),
            ));
        }
        for row in &h {
            for entry in row {
                field.check(entry)?;
                if !support.contains(entry) {
                    return Err(Error::InvalidParameters(
                        "parity-check entry outside the support".into(),
                    ));
                }
            }
        }
        if rank_over_extension(field, &h)? != n - k {
            return Err(Error::InvalidParameters(
                "parity-check matrix is rank deficient".into(),
            ));
        }
        Ok(LrpcCode {
            n,
            k,
            d: support.dim(),
            support,
            h,
        })
    }
}

/// A rank-weight error: support, ordered basis, coordinate matrix, vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankError {
    support: Subspace,
    basis: Vec<FieldElement>,
    /// r x n coordinates with e = basis * coords.
    coords: Vec<Vec<u16>>,
    vector: Vec<FieldElement>,
}

impl RankError {
    pub fn support(&self) -> &Subspace {
        &self.support
    }

    pub fn rank(&self) -> usize {
        self.support.dim()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn coordinates(&self) -> &[Vec<u16>] {
        &self.coords
    }

    pub fn vector(&self) -> &[FieldElement] {
        &self.vector
    }

    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector.is_empty()
    }

    /// Canonical decomposition of an arbitrary vector: the support is the
    /// span of its components, the basis is the support's canonical basis,
    /// and the coordinate matrix is read off by reduction. The coordinate
    /// matrix always has full rank equal to the rank weight.
    pub fn from_vector(field: &Field, vector: Vec<FieldElement>) -> Result<RankError> {
        for v in &vector {
            field.check(v)?;
        }
        let support = Subspace::span(field, &vector)?;
        let basis = support.basis_elements();
        let r = support.dim();
        let mut coords = vec![vec![0u16; vector.len()]; r];
        for (j, v) in vector.iter().enumerate() {
            let col = support
                .coordinates_of(v)
                .expect("component must lie in the span of the vector");
            for (l, &c) in col.iter().enumerate() {
                coords[l][j] = c;
            }
        }
        Ok(RankError {
            support,
            basis,
            coords,
            vector,
        })
    }
}

/// A syndrome vector together with the span of its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syndrome {
    vector: Vec<FieldElement>,
    support: Subspace,
}

impl Syndrome {
    /// Builds a syndrome from raw components, attaching their span.
    pub fn from_vector(field: &Field, vector: Vec<FieldElement>) -> Result<Syndrome> {
        for v in &vector {
            field.check(v)?;
        }
        let support = Subspace::span(field, &vector)?;
        Ok(Syndrome { vector, support })
    }

    pub fn vector(&self) -> &[FieldElement] {
        &self.vector
    }

    /// The syndrome support S, always contained in the product space of
    /// the parity-check support and the error support.
    pub fn support(&self) -> &Subspace {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.vector.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vector.is_empty()
    }
}

/// Samples an LRPC code: a uniform d-dimensional support A, then parity
/// checks drawn uniformly from A until H reaches rank n-k over F_{q^m}.
/// The whole matrix is redrawn on a rank deficiency so the accepted
/// distribution stays uniform-conditioned-on-full-rank.
pub fn gen_code(field: &Field, n: usize, k: usize, d: usize, rng: &mut Rng) -> Result<LrpcCode> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 < k < n, got n={n} k={k}"
        )));
    }
    if d == 0 || d > field.m() {
        return Err(Error::DimensionTooLarge {
            requested: d,
            ambient: field.m(),
        });
    }
    let support = Subspace::random(field, d, rng)?;
    let basis = support.basis_elements();
    for _ in 0..MAX_RANK_RESAMPLES {
        let h: Result<Vec<Vec<FieldElement>>> = (0..n - k)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        // Uniform element of A: a uniform F_q-combination
                        // of its basis.
                        let mut acc = field.zero();
                        for b in &basis {
                            let digit = rng.coeff(field.q());
                            if digit != 0 {
                                acc = field.add(&acc, &field.scalar_mul(b, digit)?)?;
                            }
                        }
                        Ok(acc)
                    })
                    .collect()
            })
            .collect();
        let h = h?;
        if rank_over_extension(field, &h)? == n - k {
            return Ok(LrpcCode {
                n,
                k,
                d,
                support,
                h,
            });
        }
    }
    Err(Error::RankSampling(MAX_RANK_RESAMPLES))
}

/// Samples a rank-r error of length n: a uniform r-dimensional support and
/// a uniform rank-r coordinate matrix (rejection on the rank).
pub fn gen_error(field: &Field, n: usize, r: usize, rng: &mut Rng) -> Result<RankError> {
    if r > n {
        return Err(Error::InvalidParameters(format!(
            "error rank {r} exceeds code length {n}"
        )));
    }
    if r > field.m() {
        return Err(Error::DimensionTooLarge {
            requested: r,
            ambient: field.m(),
        });
    }
    let support = Subspace::random(field, r, rng)?;
    let basis = support.basis_elements();
    let coords = if r == 0 {
        Vec::new()
    } else {
        let mut attempt = 0;
        loop {
            let candidate: Vec<Vec<u16>> = (0..r)
                .map(|_| (0..n).map(|_| rng.coeff(field.q())).collect())
                .collect();
            if fq::rank(field.q(), candidate.clone()) == r {
                break candidate;
            }
            attempt += 1;
            if attempt >= MAX_COORD_RESAMPLES {
                return Err(Error::RankSampling(MAX_COORD_RESAMPLES));
            }
        }
    };
    let vector = assemble_vector(field, &basis, &coords, n)?;
    debug_assert_eq!(Subspace::span(field, &vector)?, support);
    Ok(RankError {
        support,
        basis,
        coords,
        vector,
    })
}

/// The vector basis * coords, accumulated row by row.
pub(crate) fn assemble_vector(
    field: &Field,
    basis: &[FieldElement],
    coords: &[Vec<u16>],
    n: usize,
) -> Result<Vec<FieldElement>> {
    let mut vector = vec![field.zero(); n];
    for (row, b) in coords.iter().zip(basis) {
        for (v, &digit) in vector.iter_mut().zip(row) {
            if digit != 0 {
                *v = field.add(v, &field.scalar_mul(b, digit)?)?;
            }
        }
    }
    Ok(vector)
}

/// s = e * H^T, with the span of the components attached.
pub fn syndrome(field: &Field, code: &LrpcCode, e: &[FieldElement]) -> Result<Syndrome> {
    if e.len() != code.n {
        return Err(Error::LengthMismatch {
            got: e.len(),
            want: code.n,
        });
    }
    for v in e {
        field.check(v)?;
    }
    let mut vector = Vec::with_capacity(code.n - code.k);
    for row in &code.h {
        let mut acc = field.zero();
        for (hij, ej) in row.iter().zip(e) {
            acc = field.add(&acc, &field.mul(ej, hij)?)?;
        }
        vector.push(acc);
    }
    let support = Subspace::span(field, &vector)?;
    Ok(Syndrome { vector, support })
}

/// Outcome of the coordinate solve for a candidate support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordinateRecovery {
    /// The linear system has exactly one solution.
    Unique(RankError),
    NoSolution,
    /// The solution space has positive dimension.
    Ambiguous {
        freedom: usize,
    },
}

/// Recovers the error coordinates given a candidate support E of dimension
/// r: each syndrome equation is expanded over the polynomial basis of
/// F_{q^m} into m scalar equations, yielding an (n-k)m x nr system over
/// F_q in the entries of the coordinate matrix.
pub fn recover_coordinates(
    field: &Field,
    code: &LrpcCode,
    syn: &Syndrome,
    support: &Subspace,
) -> Result<CoordinateRecovery> {
    if syn.len() != code.n - code.k {
        return Err(Error::LengthMismatch {
            got: syn.len(),
            want: code.n - code.k,
        });
    }
    let r = support.dim();
    let n = code.n;
    let m = field.m();
    let basis = support.basis_elements();

    // Column (l, j) of the system is the coefficient vector of
    // basis[l] * h[i][j]; the right-hand side stacks the syndrome
    // coefficients block by block.
    let mut matrix: Vec<Vec<u16>> = Vec::with_capacity((code.n - code.k) * m);
    let mut rhs: Vec<u16> = Vec::with_capacity((code.n - code.k) * m);
    for (row, s_i) in code.h.iter().zip(syn.vector()) {
        let mut products = Vec::with_capacity(r * n);
        for h_ij in row {
            for b in &basis {
                products.push(field.mul(b, h_ij)?);
            }
        }
        for u in 0..m {
            let mut eq = Vec::with_capacity(r * n);
            for p in &products {
                eq.push(p.coeffs()[u]);
            }
            matrix.push(eq);
            rhs.push(s_i.coeffs()[u]);
        }
    }

    match fq::solve(field.q(), &matrix, &rhs) {
        fq::Solution::Inconsistent => Ok(CoordinateRecovery::NoSolution),
        fq::Solution::Underdetermined { free } => {
            Ok(CoordinateRecovery::Ambiguous { freedom: free })
        }
        fq::Solution::Unique(x) => {
            // Unknown (l, j) sits at index j * r + l.
            let mut coords = vec![vec![0u16; n]; r];
            for (j, chunk) in x.chunks_exact(r.max(1)).enumerate().take(n) {
                for (l, &value) in chunk.iter().enumerate() {
                    coords[l][j] = value;
                }
            }
            let vector = assemble_vector(field, &basis, &coords, n)?;
            debug_assert_eq!(syndrome(field, code, &vector)?.vector(), syn.vector());
            Ok(CoordinateRecovery::Unique(RankError::from_vector(
                field, vector,
            )?))
        }
    }
}

/// Rank of a matrix over F_{q^m} by Gaussian elimination with field
/// arithmetic.
pub fn rank_over_extension(field: &Field, rows: &[Vec<FieldElement>]) -> Result<usize> {
    let mut work: Vec<Vec<FieldElement>> = rows.to_vec();
    let cols = work.first().map_or(0, Vec::len);
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(found) = (rank..work.len()).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(rank, found);
        let inv = field.inv(&work[rank][col])?;
        for v in work[rank].iter_mut() {
            *v = field.mul(v, &inv)?;
        }
        for i in 0..work.len() {
            if i == rank || work[i][col].is_zero() {
                continue;
            }
            let factor = work[i][col].clone();
            let (head, tail) = work.split_at_mut(rank.max(i));
            let (pivot_row, target): (&[FieldElement], &mut [FieldElement]) = if i > rank {
                (&head[rank], &mut tail[0])
            } else {
                (&tail[0], &mut head[i])
            };
            for (t, p) in target.iter_mut().zip(pivot_row).skip(col) {
                let sub = field.mul(p, &factor)?;
                *t = field.sub(t, &sub)?;
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    Ok(rank)
}
