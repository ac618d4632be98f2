//! Text form of field elements and polynomials.
//!
//! A polynomial is written as its coefficient list with the constant term
//! first: `0123` over GF(5) is `x + 2x^2 + 3x^3`. A coefficient token is a
//! decimal digit (an element of the prime subfield) or, for GF(4), GF(8) and
//! GF(9), `A` optionally followed by `^` and one exponent digit. Printing
//! uses the digit form whenever the element lies in the prime subfield.
//!
//! The parser also tolerates surrounding `[` `]`, embedded whitespace, and a
//! leading `(D)` annotation, all of which are discarded.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::Poly;

fn parse_err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        msg: msg.into(),
    }
}

/// Parses a sequence of element tokens.
pub fn parse_coeffs(text: &str, field: &Field) -> Result<Vec<Elem>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let skip = |i: &mut usize| {
        while *i < bytes.len() && (bytes[*i].is_ascii_whitespace() || bytes[*i] == b'[' || bytes[*i] == b']') {
            *i += 1;
        }
    };
    skip(&mut i);
    if text[i..].starts_with("(D)") {
        i += 3;
    }
    loop {
        skip(&mut i);
        if i >= bytes.len() {
            break;
        }
        let start = i;
        match bytes[i] {
            c @ b'0'..=b'9' => {
                let d = (c - b'0') as u32;
                if d >= field.p() {
                    return Err(parse_err(start, format!("digit {d} is not in GF({})", field.p())));
                }
                out.push(field.from_residue(d));
                i += 1;
            }
            b'A' => {
                if field.is_prime_field() {
                    return Err(parse_err(start, format!("'A' is not used for the prime field GF({})", field.q())));
                }
                i += 1;
                let mut e = 1u64;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    match bytes.get(i) {
                        Some(c @ b'0'..=b'9') => {
                            e = (c - b'0') as u64;
                            i += 1;
                        }
                        _ => return Err(parse_err(i, "expected an exponent digit after '^'")),
                    }
                }
                out.push(field.from_power(e));
            }
            other => {
                return Err(parse_err(start, format!("unexpected character {:?}", other as char)));
            }
        }
    }
    if out.is_empty() {
        return Err(parse_err(0, "empty coefficient string"));
    }
    Ok(out)
}

pub fn parse_elem(text: &str, field: &Field) -> Result<Elem> {
    match parse_coeffs(text, field)?.as_slice() {
        [e] => Ok(*e),
        _ => Err(parse_err(0, format!("expected a single element, got {text:?}"))),
    }
}

pub fn parse_poly(text: &str, field: &Field) -> Result<Poly> {
    Ok(Poly::new(field, parse_coeffs(text, field)?))
}

pub fn print_elem(e: Elem, field: &Field) -> String {
    if let Some(d) = field.residue(e) {
        return d.to_string();
    }
    match field.log(e) {
        Some(1) => "A".to_string(),
        Some(k) => format!("A^{k}"),
        None => unreachable!("zero lies in the prime subfield"),
    }
}

/// Coefficient string of a polynomial; the zero polynomial prints as `0`.
pub fn print_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.coeffs().iter().map(|&c| print_elem(c, p.field())).collect()
}
