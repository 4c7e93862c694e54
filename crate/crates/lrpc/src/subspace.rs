//! F_q-linear subspaces of F_{q^m} and the calculus the decoders need:
//! span, sum, intersection, multiplicative scaling, product space,
//! membership, enumeration and random sampling.
//!
//! A subspace is stored as the reduced row echelon form of its basis
//! coordinate matrix, with zero rows dropped. RREF is the unique canonical
//! representative of a row space, so two `Subspace` values are equal as
//! Rust values iff they are the same subspace; the experiment harness
//! relies on this for success checking.

use crate::error::{Error, Result};
use crate::fq;
use crate::gf::{Field, FieldElement};
use crate::rng::Rng;

/// Default bound on the number of elements an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    q: u16,
    m: usize,
    /// Canonical RREF basis; each row is a coordinate vector of length m.
    rows: Vec<Vec<u16>>,
}

impl Subspace {
    /// The zero subspace of F_{q^m}.
    pub fn zero(field: &Field) -> Subspace {
        Subspace {
            q: field.q(),
            m: field.m(),
            rows: Vec::new(),
        }
    }

    /// The zero subspace of the same ambient space as `self`.
    pub fn zero_like(&self) -> Subspace {
        Subspace {
            q: self.q,
            m: self.m,
            rows: Vec::new(),
        }
    }

    /// The whole field, seen as the ambient m-dimensional space.
    pub fn ambient(field: &Field) -> Subspace {
        let rows = (0..field.m())
            .map(|i| {
                let mut row = vec![0u16; field.m()];
                row[i] = 1;
                row
            })
            .collect();
        Subspace {
            q: field.q(),
            m: field.m(),
            rows,
        }
    }

    /// Span of a list of elements; the empty list spans the zero subspace.
    pub fn span(field: &Field, generators: &[FieldElement]) -> Result<Subspace> {
        let raw: Result<Vec<Vec<u16>>> = generators
            .iter()
            .map(|g| {
                field.check(g)?;
                Ok(g.coeffs().to_vec())
            })
            .collect();
        Ok(Subspace::from_rows(field.q(), field.m(), raw?))
    }

    fn from_rows(q: u16, m: usize, rows: Vec<Vec<u16>>) -> Subspace {
        let ech = fq::rref(q, rows);
        Subspace {
            q,
            m,
            rows: ech.rows,
        }
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of elements q^dim, if it fits a u128.
    pub fn size(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.dim() as u32)
    }

    /// The canonical basis, row by row, as field elements.
    pub fn basis_elements(&self) -> Vec<FieldElement> {
        self.rows
            .iter()
            .map(|r| element_from_row(self.q, r))
            .collect()
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.q != other.q || self.m != other.m {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn field_compatible(&self, field: &Field) -> Result<()> {
        if self.q != field.q() || self.m != field.m() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Smallest subspace containing both operands.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Subspace::from_rows(self.q, self.m, rows))
    }

    /// Intersection by the Zassenhaus block construction: echelonizing
    /// rows [u | u] for u in U and [v | 0] for v in V leaves the rows with
    /// zero left half carrying a basis of U ∩ V in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let m = self.m;
        let mut block: Vec<Vec<u16>> = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.rows {
            let mut row = Vec::with_capacity(2 * m);
            row.extend_from_slice(u);
            row.extend_from_slice(u);
            block.push(row);
        }
        for v in &other.rows {
            let mut row = vec![0u16; 2 * m];
            row[..m].copy_from_slice(v);
            block.push(row);
        }
        let ech = fq::rref(self.q, block);
        let rows: Vec<Vec<u16>> = ech
            .rows
            .into_iter()
            .filter(|row| row[..m].iter().all(|&v| v == 0))
            .map(|row| row[m..].to_vec())
            .collect();
        // The extracted rows are independent but re-echelonize for the
        // canonical representative.
        Ok(Subspace::from_rows(self.q, self.m, rows))
    }

    /// The scaled subspace {b * a : b in self}; `a` must be nonzero so the
    /// dimension is preserved.
    pub fn scale(&self, field: &Field, a: &FieldElement) -> Result<Subspace> {
        self.field_compatible(field)?;
        if a.is_zero() {
            return Err(Error::ZeroScalar);
        }
        let rows: Result<Vec<Vec<u16>>> = self
            .rows
            .iter()
            .map(|r| {
                let el = element_from_row(self.q, r);
                Ok(field.mul(&el, a)?.coeffs().to_vec())
            })
            .collect();
        Ok(Subspace::from_rows(self.q, self.m, rows?))
    }

    /// The product space: the span of all pairwise products of basis
    /// elements, of dimension at most min(dim(self) * dim(other), m).
    pub fn product(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.field_compatible(field)?;
        self.compatible(other)?;
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for u in &self.rows {
            let eu = element_from_row(self.q, u);
            for v in &other.rows {
                let ev = element_from_row(self.q, v);
                rows.push(field.mul(&eu, &ev)?.coeffs().to_vec());
            }
        }
        let out = Subspace::from_rows(self.q, self.m, rows);
        debug_assert!(out.dim() <= (self.dim() * other.dim()).min(self.m));
        Ok(out)
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, x: &FieldElement) -> bool {
        self.reduce_coords(x)
            .is_some_and(|rem| rem.iter().all(|&v| v == 0))
    }

    /// Coordinates of `x` over the canonical basis, or None if `x` is not a
    /// member (or belongs to a different field).
    pub fn coordinates_of(&self, x: &FieldElement) -> Option<Vec<u16>> {
        let mut work = x.coeffs().to_vec();
        if x.coeffs().len() != self.m {
            return None;
        }
        let mut coords = Vec::with_capacity(self.dim());
        for row in &self.rows {
            let pivot = row.iter().position(|&v| v == 1)?;
            let c = work[pivot];
            coords.push(c);
            if c != 0 {
                for (w, &r) in work.iter_mut().zip(row) {
                    let sub = (c as u32 * r as u32) % self.q as u32;
                    *w = ((*w as u32 + self.q as u32 - sub) % self.q as u32) as u16;
                }
            }
        }
        work.iter().all(|&v| v == 0).then_some(coords)
    }

    fn reduce_coords(&self, x: &FieldElement) -> Option<Vec<u16>> {
        if x.coeffs().len() != self.m {
            return None;
        }
        let mut work = x.coeffs().to_vec();
        for row in &self.rows {
            let pivot = row.iter().position(|&v| v == 1)?;
            let c = work[pivot];
            if c != 0 {
                for (w, &r) in work.iter_mut().zip(row) {
                    let sub = (c as u32 * r as u32) % self.q as u32;
                    *w = ((*w as u32 + self.q as u32 - sub) % self.q as u32) as u16;
                }
            }
        }
        Some(work)
    }

    /// True if every element of `other` lies in `self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_elements().iter().all(|b| self.contains(b))
    }

    /// The element whose coordinates over the canonical basis are the
    /// base-q digits of `index` (basis row 0 is the least significant
    /// digit). Indexes run through 0..q^dim.
    pub fn element_at(&self, mut index: u128) -> FieldElement {
        let mut acc = vec![0u16; self.m];
        for row in &self.rows {
            let digit = (index % self.q as u128) as u32;
            index /= self.q as u128;
            if digit != 0 {
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a = ((*a as u32 + digit * r as u32) % self.q as u32) as u16;
                }
            }
        }
        debug_assert_eq!(index, 0, "element index out of range");
        element_from_row(self.q, &acc)
    }

    /// Iterator over all q^dim elements in base-q counting order, guarded
    /// by the default enumeration cap.
    pub fn elements(&self) -> Result<Elements<'_>> {
        self.elements_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn elements_capped(&self, cap: u64) -> Result<Elements<'_>> {
        let size = self.size().ok_or(Error::EnumerationTooLarge {
            size: u128::MAX,
            cap,
        })?;
        if size > cap as u128 {
            return Err(Error::EnumerationTooLarge { size, cap });
        }
        Ok(Elements {
            space: self,
            next: 0,
            total: size,
        })
    }

    /// Uniformly random subspace of the stated dimension, sampled by
    /// drawing uniform vectors and keeping the independent ones.
    pub fn random(field: &Field, dim: usize, rng: &mut Rng) -> Result<Subspace> {
        if dim > field.m() {
            return Err(Error::DimensionTooLarge {
                requested: dim,
                ambient: field.m(),
            });
        }
        let mut picked: Vec<FieldElement> = Vec::with_capacity(dim);
        let mut span = Subspace::zero(field);
        while span.dim() < dim {
            let candidate = field.random_element(rng);
            if !span.contains(&candidate) {
                picked.push(candidate);
                span = Subspace::span(field, &picked)?;
            }
        }
        Ok(span)
    }

    /// Uniformly random subspace of `self` of the stated dimension.
    pub fn random_subspace_of(&self, dim: usize, rng: &mut Rng) -> Result<Subspace> {
        if dim > self.dim() {
            return Err(Error::DimensionTooLarge {
                requested: dim,
                ambient: self.dim(),
            });
        }
        let size = self.size().unwrap_or(u128::MAX);
        let mut rows: Vec<Vec<u16>> = Vec::with_capacity(dim);
        let mut span = Subspace {
            q: self.q,
            m: self.m,
            rows: Vec::new(),
        };
        while span.dim() < dim {
            let candidate = if size <= u64::MAX as u128 {
                self.element_at(rng.below(size as u64) as u128)
            } else {
                // Random combination of the basis for very large spaces.
                let mut acc = vec![0u16; self.m];
                for row in &self.rows {
                    let digit = rng.coeff(self.q) as u32;
                    for (a, &r) in acc.iter_mut().zip(row) {
                        *a = ((*a as u32 + digit * r as u32) % self.q as u32) as u16;
                    }
                }
                element_from_row(self.q, &acc)
            };
            if !span.contains(&candidate) {
                rows.push(candidate.coeffs().to_vec());
                span = Subspace::from_rows(self.q, self.m, rows.clone());
            }
        }
        Ok(span)
    }
}

fn element_from_row(q: u16, row: &[u16]) -> FieldElement {
    // Rows always hold validated coefficients; rebuild without rechecking.
    FieldElement::from_raw(q, row.to_vec())
}

/// Enumeration of a subspace in deterministic base-q counting order.
#[derive(Debug)]
pub struct Elements<'a> {
    space: &'a Subspace,
    next: u128,
    total: u128,
}

impl Iterator for Elements<'_> {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.total {
            return None;
        }
        let el = self.space.element_at(self.next);
        self.next += 1;
        Some(el)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}
