//! Row operations over the prime field F_q.
//!
//! Rows are coefficient vectors with entries in `[0, q)`. Everything here
//! reduces to one routine: in-place conversion to reduced row echelon form.
//! For q = 2 the rows are packed into 64-bit limbs first; elimination is
//! then a handful of XORs per row, which is what makes the Monte-Carlo
//! suites cheap. The unpacked path handles every other prime.

/// Multiplicative inverse of `a` modulo the prime `q`.
pub(crate) fn inv_mod(a: u16, q: u16) -> u16 {
    debug_assert!(a != 0 && a < q);
    // Extended Euclid on (q, a); coefficients fit i32 for q < 2^16.
    let (mut r0, mut r1) = (q as i32, a as i32);
    let (mut t0, mut t1) = (0i32, 1i32);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(q as i32) as u16
}

/// Reduced row echelon form. Zero rows are dropped, surviving rows are
/// ordered by pivot column, pivots are 1 and alone in their column, so the
/// output is the canonical representative of the row space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Echelon {
    pub rows: Vec<Vec<u16>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn rref(q: u16, rows: Vec<Vec<u16>>) -> Echelon {
    if q == 2 {
        rref_gf2(rows)
    } else {
        rref_generic(q, rows)
    }
}

pub(crate) fn rank(q: u16, rows: Vec<Vec<u16>>) -> usize {
    rref(q, rows).rows.len()
}

fn rref_generic(q: u16, mut rows: Vec<Vec<u16>>) -> Echelon {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(next, found);
        let inv = inv_mod(rows[next][col], q);
        if inv != 1 {
            for v in rows[next].iter_mut() {
                *v = ((*v as u32 * inv as u32) % q as u32) as u16;
            }
        }
        for i in 0..rows.len() {
            if i == next || rows[i][col] == 0 {
                continue;
            }
            let factor = rows[i][col] as u32;
            let (head, tail) = rows.split_at_mut(next.max(i));
            let (pivot_row, target): (&[u16], &mut [u16]) = if i > next {
                (&head[next], &mut tail[0])
            } else {
                (&tail[0], &mut head[i])
            };
            for (t, &p) in target.iter_mut().zip(pivot_row) {
                let sub = (factor * p as u32) % q as u32;
                *t = ((*t as u32 + q as u32 - sub) % q as u32) as u16;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Echelon { rows, pivots }
}

#[inline]
fn limb_count(cols: usize) -> usize {
    cols.div_ceil(64)
}

#[inline]
fn get_bit(limbs: &[u64], col: usize) -> bool {
    limbs[col / 64] >> (col % 64) & 1 != 0
}

fn pack_gf2(row: &[u16]) -> Vec<u64> {
    let mut limbs = vec![0u64; limb_count(row.len())];
    for (col, &v) in row.iter().enumerate() {
        if v != 0 {
            limbs[col / 64] |= 1 << (col % 64);
        }
    }
    limbs
}

fn unpack_gf2(limbs: &[u64], cols: usize) -> Vec<u16> {
    (0..cols).map(|c| get_bit(limbs, c) as u16).collect()
}

fn rref_gf2(rows: Vec<Vec<u16>>) -> Echelon {
    let cols = rows.first().map_or(0, Vec::len);
    let mut packed: Vec<Vec<u64>> = rows.iter().map(|r| pack_gf2(r)).collect();
    let pivots = rref_gf2_packed(&mut packed, cols);
    let rows = packed[..pivots.len()]
        .iter()
        .map(|r| unpack_gf2(r, cols))
        .collect();
    Echelon { rows, pivots }
}

/// Eliminates in place; returns the pivot columns. Rows `0..pivots.len()`
/// hold the echelon basis afterwards, the rest are zero.
fn rref_gf2_packed(rows: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&i| get_bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(next, found);
        for i in 0..rows.len() {
            if i != next && get_bit(&rows[i], col) {
                let (a, b) = if i < next {
                    let (head, tail) = rows.split_at_mut(next);
                    (&mut head[i], &tail[0])
                } else {
                    let (head, tail) = rows.split_at_mut(i);
                    (&mut tail[0], &head[next])
                };
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    pivots
}

/// Outcome of solving `M x = b` over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Solution {
    Unique(Vec<u16>),
    Inconsistent,
    /// Consistent with `free` free variables.
    Underdetermined {
        free: usize,
    },
}

/// Gaussian elimination on the augmented matrix `[M | b]`.
pub(crate) fn solve(q: u16, matrix: &[Vec<u16>], rhs: &[u16]) -> Solution {
    assert_eq!(matrix.len(), rhs.len());
    let cols = matrix.first().map_or(0, Vec::len);
    if cols == 0 {
        // No unknowns: solvable iff the rhs is zero.
        return if rhs.iter().all(|&v| v == 0) {
            Solution::Unique(Vec::new())
        } else {
            Solution::Inconsistent
        };
    }
    let augmented: Vec<Vec<u16>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = Vec::with_capacity(cols + 1);
            r.extend_from_slice(row);
            r.push(b);
            r
        })
        .collect();
    let ech = rref(q, augmented);
    if ech.pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let free = cols - ech.pivots.len();
    if free > 0 {
        return Solution::Underdetermined { free };
    }
    // Full column rank: pivot row i solves unknown pivots[i] directly.
    let mut x = vec![0u16; cols];
    for (row, &col) in ech.rows.iter().zip(&ech.pivots) {
        x[col] = row[cols];
    }
    Solution::Unique(x)
}
