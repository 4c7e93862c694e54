//! Versioned, self-describing text fixtures for codes, errors and
//! syndromes.
//!
//! The format is whitespace-tokenized so any implementation can parse it
//! with a scanner:
//!
//! ```text
//! lrpc-fixture 1 code
//! field <q> <m> <m+1 modulus coefficients, constant term first>
//! code <n> <k> <d>
//! support <dim>
//! <dim rows of m coefficients>
//! matrix <rows> <cols>
//! <rows*cols elements, row-major, m coefficients each>
//! end
//! ```
//!
//! `error` fixtures carry the support rows followed by the r x n
//! coordinate matrix; `syndrome` fixtures carry the component elements.
//! Every reader revalidates the invariants of the type it reconstructs.

use crate::code::{LrpcCode, RankError, Syndrome};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::subspace::Subspace;
use std::fmt::Write as _;

const MAGIC: &str = "lrpc-fixture";
const VERSION: u64 = 1;

pub fn write_code(field: &Field, code: &LrpcCode) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION} code");
    write_field(&mut out, field);
    let _ = writeln!(out, "code {} {} {}", code.n(), code.k(), code.d());
    write_subspace(&mut out, "support", code.support());
    let rows = code.parity_check();
    let _ = writeln!(out, "matrix {} {}", rows.len(), code.n());
    for row in rows {
        for el in row {
            write_element(&mut out, el);
        }
    }
    out.push_str("end\n");
    out
}

pub fn read_code(text: &str) -> Result<(Field, LrpcCode)> {
    let mut scan = Scanner::new(text);
    scan.expect_header("code")?;
    let field = read_field(&mut scan)?;
    scan.expect_word("code")?;
    let n = scan.usize()?;
    let k = scan.usize()?;
    let d = scan.usize()?;
    let support = read_subspace(&mut scan, &field, "support")?;
    if support.dim() != d {
        return Err(Error::Parse(format!(
            "support dimension {} does not match header {d}",
            support.dim()
        )));
    }
    scan.expect_word("matrix")?;
    let rows = scan.usize()?;
    let cols = scan.usize()?;
    let mut h = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for _ in 0..cols {
            row.push(read_element(&mut scan, &field)?);
        }
        h.push(row);
    }
    scan.expect_word("end")?;
    let code = LrpcCode::from_parts(&field, n, k, support, h)?;
    Ok((field, code))
}

pub fn write_error(field: &Field, err: &RankError) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION} error");
    write_field(&mut out, field);
    let _ = writeln!(out, "error {} {}", err.rank(), err.len());
    write_subspace(&mut out, "support", err.support());
    let _ = writeln!(out, "coords {} {}", err.rank(), err.len());
    for row in err.coordinates() {
        let mut line = String::new();
        for &v in row {
            let _ = write!(line, "{v} ");
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
    out.push_str("end\n");
    out
}

pub fn read_error(text: &str) -> Result<(Field, RankError)> {
    let mut scan = Scanner::new(text);
    scan.expect_header("error")?;
    let field = read_field(&mut scan)?;
    scan.expect_word("error")?;
    let r = scan.usize()?;
    let n = scan.usize()?;
    let support = read_subspace(&mut scan, &field, "support")?;
    if support.dim() != r {
        return Err(Error::Parse("support dimension does not match rank".into()));
    }
    scan.expect_word("coords")?;
    let rows = scan.usize()?;
    let cols = scan.usize()?;
    if rows != r || cols != n {
        return Err(Error::Parse("coordinate matrix shape mismatch".into()));
    }
    let mut coords = Vec::with_capacity(rows);
    for _ in 0..rows {
        let mut row = Vec::with_capacity(cols);
        for _ in 0..cols {
            row.push(scan.coeff(field.q())?);
        }
        coords.push(row);
    }
    scan.expect_word("end")?;
    // Rebuild the vector from basis * coords and rederive the canonical
    // decomposition, validating rank on the way.
    let basis = support.basis_elements();
    let vector = crate::code::assemble_vector(&field, &basis, &coords, n)?;
    let rebuilt = RankError::from_vector(&field, vector)?;
    if rebuilt.rank() != r {
        return Err(Error::Parse(format!(
            "coordinates have rank {}, expected {r}",
            rebuilt.rank()
        )));
    }
    Ok((field, rebuilt))
}

pub fn write_syndrome(field: &Field, syn: &Syndrome) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} {VERSION} syndrome");
    write_field(&mut out, field);
    let _ = writeln!(out, "syndrome {}", syn.len());
    for el in syn.vector() {
        write_element(&mut out, el);
    }
    out.push_str("end\n");
    out
}

pub fn read_syndrome(text: &str) -> Result<(Field, Syndrome)> {
    let mut scan = Scanner::new(text);
    scan.expect_header("syndrome")?;
    let field = read_field(&mut scan)?;
    scan.expect_word("syndrome")?;
    let len = scan.usize()?;
    let mut vector = Vec::with_capacity(len);
    for _ in 0..len {
        vector.push(read_element(&mut scan, &field)?);
    }
    scan.expect_word("end")?;
    let syn = Syndrome::from_vector(&field, vector)?;
    Ok((field, syn))
}

fn write_field(out: &mut String, field: &Field) {
    let _ = write!(out, "field {} {}", field.q(), field.m());
    for &c in field.modulus() {
        let _ = write!(out, " {c}");
    }
    out.push('\n');
}

fn read_field(scan: &mut Scanner<'_>) -> Result<Field> {
    scan.expect_word("field")?;
    let q = scan.u16()?;
    let m = scan.usize()?;
    let mut modulus = Vec::with_capacity(m + 1);
    for _ in 0..=m {
        modulus.push(scan.u16()?);
    }
    Field::with_modulus(q, m, modulus)
}

fn write_subspace(out: &mut String, label: &str, s: &Subspace) {
    let _ = writeln!(out, "{label} {}", s.dim());
    for el in s.basis_elements() {
        write_element(out, &el);
    }
}

fn read_subspace(scan: &mut Scanner<'_>, field: &Field, label: &str) -> Result<Subspace> {
    scan.expect_word(label)?;
    let dim = scan.usize()?;
    let mut gens = Vec::with_capacity(dim);
    for _ in 0..dim {
        gens.push(read_element(scan, field)?);
    }
    let s = Subspace::span(field, &gens)?;
    if s.dim() != dim {
        return Err(Error::Parse(format!(
            "{label} rows are dependent: dimension {} instead of {dim}",
            s.dim()
        )));
    }
    Ok(s)
}

fn write_element(out: &mut String, el: &FieldElement) {
    let mut line = String::new();
    for &c in el.coeffs() {
        let _ = write!(line, "{c} ");
    }
    let _ = writeln!(out, "{}", line.trim_end());
}

fn read_element(scan: &mut Scanner<'_>, field: &Field) -> Result<FieldElement> {
    let mut coeffs = Vec::with_capacity(field.m());
    for _ in 0..field.m() {
        coeffs.push(scan.coeff(field.q())?);
    }
    field.element(coeffs)
}

struct Scanner<'a> {
    tokens: std::str::SplitWhitespace<'a>,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            tokens: text.split_whitespace(),
        }
    }

    fn token(&mut self) -> Result<&'a str> {
        self.tokens
            .next()
            .ok_or_else(|| Error::Parse("unexpected end of fixture".into()))
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        let tok = self.token()?;
        if tok != word {
            return Err(Error::Parse(format!("expected '{word}', found '{tok}'")));
        }
        Ok(())
    }

    fn expect_header(&mut self, kind: &str) -> Result<()> {
        self.expect_word(MAGIC)?;
        let version = self.u64()?;
        if version != VERSION {
            return Err(Error::Parse(format!(
                "unsupported fixture version {version}"
            )));
        }
        self.expect_word(kind)
    }

    fn u64(&mut self) -> Result<u64> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| Error::Parse(format!("expected an integer, found '{tok}'")))
    }

    fn u16(&mut self) -> Result<u16> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| Error::Parse(format!("expected an integer, found '{tok}'")))
    }

    fn usize(&mut self) -> Result<usize> {
        Ok(self.u64()? as usize)
    }

    fn coeff(&mut self, q: u16) -> Result<u16> {
        let v = self.u16()?;
        if v >= q {
            return Err(Error::Parse(format!(
                "coefficient {v} out of range for q={q}"
            )));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{gen_code, gen_error, syndrome};
    use crate::rng::Rng;

    #[test]
    fn code_round_trip() {
        let field = Field::new(2, 14).unwrap();
        let mut rng = Rng::new(11);
        let code = gen_code(&field, 8, 2, 3, &mut rng).unwrap();
        let text = write_code(&field, &code);
        let (field2, code2) = read_code(&text).unwrap();
        assert_eq!(field2, field);
        assert_eq!(code2, code);
        // The format is stable under a second round trip.
        assert_eq!(write_code(&field2, &code2), text);
    }

    #[test]
    fn error_round_trip() {
        let field = Field::new(3, 7).unwrap();
        let mut rng = Rng::new(23);
        let err = gen_error(&field, 9, 3, &mut rng).unwrap();
        let text = write_error(&field, &err);
        let (_, err2) = read_error(&text).unwrap();
        assert_eq!(err2, err);
    }

    #[test]
    fn syndrome_round_trip() {
        let field = Field::new(2, 18).unwrap();
        let mut rng = Rng::new(31);
        let code = gen_code(&field, 9, 2, 3, &mut rng).unwrap();
        let err = gen_error(&field, 9, 3, &mut rng).unwrap();
        let syn = syndrome(&field, &code, err.vector()).unwrap();
        let text = write_syndrome(&field, &syn);
        let (_, syn2) = read_syndrome(&text).unwrap();
        assert_eq!(syn2, syn);
    }

    #[test]
    fn corrupted_fixtures_are_rejected() {
        let field = Field::new(2, 10).unwrap();
        let mut rng = Rng::new(7);
        let code = gen_code(&field, 6, 2, 2, &mut rng).unwrap();
        let text = write_code(&field, &code);
        assert!(read_code(&text.replace("lrpc-fixture 1", "lrpc-fixture 9")).is_err());
        assert!(read_code(&text.replace("code 6 2 2", "code 6 2 3")).is_err());
        assert!(read_code(text.trim_end_matches("end\n")).is_err());
    }
}
