//! Arithmetic in F_q (q prime) and in the extension F_{q^m} = F_q[X]/(f).
//!
//! Elements are length-m coefficient vectors over F_q, little-endian:
//! `coeffs[0]` is the constant term. The modulus f is chosen
//! deterministically for every (q, m), so two runs (or two
//! implementations) constructing the same field agree on every bit of
//! every element.
//!
//! For q = 2 with m <= 64 the coefficient vectors fit one machine word and
//! multiplication/inversion run on packed words; the representation seen
//! by callers is unchanged.

use crate::error::{Error, Result};
use crate::fq;
use crate::rng::Rng;
use std::fmt;

/// Largest supported extension degree; far beyond anything the decoders use.
pub const MAX_DEGREE: usize = 1024;

/// An element of F_{q^m}: `m` coefficients in `[0, q)`.
///
/// Equality is coefficient-wise, so elements are canonical. The ordering
/// compares coefficient vectors as base-q integers (most significant
/// coefficient last), which gives the deterministic "canonical encoding
/// ascending" order used by the candidate filtering in the decoders.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    q: u16,
    coeffs: Vec<u16>,
}

impl FieldElement {
    /// Crate-internal constructor for coefficients already known valid.
    pub(crate) fn from_raw(q: u16, coeffs: Vec<u16>) -> FieldElement {
        FieldElement { q, coeffs }
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The base-q integer `sum coeffs[i] * q^i`, if it fits in a `u128`.
    pub fn index(&self) -> Option<u128> {
        let mut acc: u128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(self.q as u128)?.checked_add(c as u128)?;
        }
        Some(acc)
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Base-q integer order: compare from the most significant end.
        // Elements of different fields order by (length, q) first so the
        // ordering stays consistent with equality.
        (self.coeffs.len(), self.q)
            .cmp(&(other.coeffs.len(), other.q))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The field F_{q^m} with its fixed irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: u16,
    m: usize,
    /// Monic modulus, length m + 1, little-endian.
    modulus: Vec<u16>,
    /// Low m coefficient bits of the modulus when q = 2 and m <= 64.
    packed_modulus: Option<u64>,
}

impl Field {
    /// Builds F_{q^m} with the lexicographically smallest monic irreducible
    /// modulus of degree m (coefficient vectors compared low-degree-first
    /// as base-q integers).
    pub fn new(q: u16, m: usize) -> Result<Field> {
        check_params(q, m)?;
        let modulus = smallest_irreducible(q, m);
        Ok(Field::assemble(q, m, modulus))
    }

    /// Builds F_{q^m} from an explicit modulus, validating monicity, degree
    /// and irreducibility. Used when reading self-describing fixtures.
    pub fn with_modulus(q: u16, m: usize, modulus: Vec<u16>) -> Result<Field> {
        check_params(q, m)?;
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(Error::InvalidParameters(format!(
                "modulus must be monic of degree exactly {m}"
            )));
        }
        if modulus.iter().any(|&c| c >= q) {
            return Err(Error::InvalidParameters(
                "modulus coefficients must lie in [0, q)".into(),
            ));
        }
        if !is_irreducible(q, &modulus) {
            return Err(Error::InvalidParameters("modulus is reducible".into()));
        }
        Ok(Field::assemble(q, m, modulus))
    }

    fn assemble(q: u16, m: usize, modulus: Vec<u16>) -> Field {
        let packed_modulus = (q == 2 && m <= 64).then(|| pack_poly(&modulus[..m]));
        Field {
            q,
            m,
            modulus,
            packed_modulus,
        }
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    /// Number of field elements, if it fits a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            q: self.q,
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.monomial(0)
    }

    /// X^i for i < m.
    pub fn monomial(&self, i: usize) -> FieldElement {
        assert!(i < self.m, "monomial degree {i} out of range");
        let mut coeffs = vec![0; self.m];
        coeffs[i] = 1;
        FieldElement { q: self.q, coeffs }
    }

    /// Wraps raw coefficients, validating length and range.
    pub fn element(&self, coeffs: Vec<u16>) -> Result<FieldElement> {
        if coeffs.len() != self.m {
            return Err(Error::LengthMismatch {
                got: coeffs.len(),
                want: self.m,
            });
        }
        if coeffs.iter().any(|&c| c >= self.q) {
            return Err(Error::InvalidParameters(
                "coefficient out of range for base field".into(),
            ));
        }
        Ok(FieldElement { q: self.q, coeffs })
    }

    /// Element whose coefficients are the base-q digits of `index`.
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        let mut coeffs = vec![0u16; self.m];
        for c in coeffs.iter_mut() {
            *c = (index % self.q as u128) as u16;
            index /= self.q as u128;
        }
        debug_assert_eq!(index, 0, "index exceeds field order");
        FieldElement { q: self.q, coeffs }
    }

    pub(crate) fn check(&self, el: &FieldElement) -> Result<()> {
        if el.q != self.q || el.coeffs.len() != self.m {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x as u32 + y as u32;
                (if s >= self.q as u32 {
                    s - self.q as u32
                } else {
                    s
                }) as u16
            })
            .collect();
        Ok(FieldElement { q: self.q, coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.q - x })
            .collect();
        Ok(FieldElement { q: self.q, coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Product with a base-field scalar, coefficient-wise.
    pub fn scalar_mul(&self, a: &FieldElement, c: u16) -> Result<FieldElement> {
        self.check(a)?;
        if c >= self.q {
            return Err(Error::InvalidParameters(
                "scalar out of range for base field".into(),
            ));
        }
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| ((x as u32 * c as u32) % self.q as u32) as u16)
            .collect();
        Ok(FieldElement { q: self.q, coeffs })
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        if let Some(f_low) = self.packed_modulus {
            let prod = clmul(pack_poly(&a.coeffs), pack_poly(&b.coeffs));
            let reduced = reduce_packed(prod, f_low, self.m);
            return Ok(FieldElement {
                q: 2,
                coeffs: unpack_poly(reduced, self.m),
            });
        }
        // Schoolbook product, then reduction by the monic modulus.
        let q = self.q as u64;
        let mut prod = vec![0u64; 2 * self.m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        for v in prod.iter_mut() {
            *v %= q;
        }
        for deg in (self.m..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            let shift = deg - self.m;
            for (k, &fc) in self.modulus[..self.m].iter().enumerate() {
                let idx = shift + k;
                let sub = (c * fc as u64) % q;
                prod[idx] = (prod[idx] + q - sub) % q;
            }
        }
        let coeffs = prod[..self.m].iter().map(|&v| v as u16).collect();
        Ok(FieldElement { q: self.q, coeffs })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// polynomials; errors on zero.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut r0 = self.modulus.clone();
        let mut r1 = trim(a.coeffs.clone());
        let mut t0: Vec<u16> = vec![];
        let mut t1: Vec<u16> = vec![1];
        while !r1.is_empty() {
            let (quot, rem) = poly_divmod(self.q, &r0, &r1);
            let t2 = poly_sub(self.q, &t0, &poly_mul(self.q, &quot, &t1));
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a nonzero constant gcd; scale t0 by its inverse.
        debug_assert_eq!(r0.len(), 1);
        let scale = fq::inv_mod(r0[0], self.q);
        let mut coeffs = vec![0u16; self.m];
        for (i, &c) in t0.iter().enumerate() {
            coeffs[i] = ((c as u32 * scale as u32) % self.q as u32) as u16;
        }
        Ok(FieldElement { q: self.q, coeffs })
    }

    /// Exponentiation by repeated squaring.
    pub fn pow(&self, a: &FieldElement, mut e: u128) -> Result<FieldElement> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Uniform element of F_{q^m}.
    pub fn random_element(&self, rng: &mut Rng) -> FieldElement {
        let coeffs = (0..self.m).map(|_| rng.coeff(self.q)).collect();
        FieldElement { q: self.q, coeffs }
    }

    /// Uniform element of F_{q^m} \ {0}.
    pub fn random_nonzero(&self, rng: &mut Rng) -> FieldElement {
        loop {
            let el = self.random_element(rng);
            if !el.is_zero() {
                return el;
            }
        }
    }
}

fn check_params(q: u16, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if m > MAX_DEGREE {
        return Err(Error::SizeLimit(format!("degree {m} exceeds {MAX_DEGREE}")));
    }
    if !is_prime(q) {
        return Err(Error::NonPrimeOrder(q));
    }
    Ok(())
}

fn is_prime(q: u16) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= q as u32 {
        if (q as u32).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---- dense polynomial helpers (little-endian, trimmed) ----

fn trim(mut p: Vec<u16>) -> Vec<u16> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(q: u16, a: &[u16], b: &[u16]) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x as u64 * y as u64;
        }
    }
    trim(out.into_iter().map(|v| (v % q as u64) as u16).collect())
}

fn poly_sub(q: u16, a: &[u16], b: &[u16]) -> Vec<u16> {
    let len = a.len().max(b.len());
    let mut out = vec![0u16; len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0) as u32;
        let y = b.get(i).copied().unwrap_or(0) as u32;
        *o = ((x + q as u32 - y) % q as u32) as u16;
    }
    trim(out)
}

/// Division with remainder; `b` must be nonzero.
fn poly_divmod(q: u16, a: &[u16], b: &[u16]) -> (Vec<u16>, Vec<u16>) {
    debug_assert!(!b.is_empty());
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![0u16; rem.len() - b.len() + 1];
    let lead_inv = fq::inv_mod(*b.last().unwrap(), q);
    for deg in (b.len() - 1..rem.len()).rev() {
        let c = rem[deg];
        if c == 0 {
            continue;
        }
        let factor = ((c as u32 * lead_inv as u32) % q as u32) as u16;
        let shift = deg - (b.len() - 1);
        quot[shift] = factor;
        for (k, &bc) in b.iter().enumerate() {
            let sub = (factor as u32 * bc as u32) % q as u32;
            rem[shift + k] = ((rem[shift + k] as u32 + q as u32 - sub) % q as u32) as u16;
        }
    }
    (trim(quot), trim(rem))
}

fn poly_gcd(q: u16, a: &[u16], b: &[u16]) -> Vec<u16> {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    while !r1.is_empty() {
        let (_, rem) = poly_divmod(q, &r0, &r1);
        r0 = r1;
        r1 = rem;
    }
    r0
}

/// a * b mod f, all little-endian dense.
fn poly_mulmod(q: u16, a: &[u16], b: &[u16], f: &[u16]) -> Vec<u16> {
    let (_, rem) = poly_divmod(q, &poly_mul(q, a, b), f);
    rem
}

/// X^{q^i} mod f for successive i, by powering the previous value by q.
fn pow_q(q: u16, base: &[u16], f: &[u16]) -> Vec<u16> {
    let mut acc = vec![1u16];
    let mut sq = base.to_vec();
    let mut e = q;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(q, &acc, &sq, f);
        }
        e >>= 1;
        if e > 0 {
            sq = poly_mulmod(q, &sq, &sq, f);
        }
    }
    acc
}

/// A monic polynomial of degree m is irreducible over F_q iff it shares no
/// root with any extension of degree up to m/2, i.e. gcd(f, X^{q^i} - X)
/// is constant for every 1 <= i <= m/2.
fn is_irreducible(q: u16, f: &[u16]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0u16, 1];
    let mut frob = x.clone();
    for _ in 1..=m / 2 {
        frob = pow_q(q, &frob, f);
        let g = poly_gcd(q, f, &poly_sub(q, &frob, &x));
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree m, where candidates are ordered by
/// their lower coefficients read as a base-q integer (constant term least
/// significant). Degree 1 starts from X itself.
fn smallest_irreducible(q: u16, m: usize) -> Vec<u16> {
    let mut low = vec![0u16; m];
    loop {
        let mut f = low.clone();
        f.push(1);
        if is_irreducible(q, &f) {
            return f;
        }
        // Increment the base-q counter; a degree-m irreducible always
        // exists, so this terminates well before wrapping.
        for digit in low.iter_mut() {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
    }
}

// ---- packed GF(2) helpers ----

fn pack_poly(coeffs: &[u16]) -> u64 {
    coeffs
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &c)| acc | ((c as u64 & 1) << i))
}

fn unpack_poly(bits: u64, m: usize) -> Vec<u16> {
    (0..m).map(|i| (bits >> i & 1) as u16).collect()
}

/// Carry-less 64x64 multiplication.
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    let wide = b as u128;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        acc ^= wide << i;
        rest &= rest - 1;
    }
    acc
}

/// Reduce a carry-less product modulo the modulus X^m + f_low: the top bit
/// at degree deg >= m is traded for f_low shifted up by deg - m.
fn reduce_packed(mut prod: u128, f_low: u64, m: usize) -> u64 {
    while prod >> m != 0 {
        let deg = 127 - prod.leading_zeros() as usize;
        prod ^= 1u128 << deg;
        prod ^= (f_low as u128) << (deg - m);
    }
    prod as u64
}
