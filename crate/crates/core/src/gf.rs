//! Finite fields GF(q) for q in {2, 3, 4, 5, 7, 8, 9}.
//!
//! Every field fixes a primitive element named `A`:
//!
//! | q | modulus over GF(p) | `A`            |
//! |---|--------------------|----------------|
//! | 2 | x + 1              | 1              |
//! | 3 | x + 1              | 2              |
//! | 5 | x + 3              | 2              |
//! | 7 | x + 4              | 3              |
//! | 4 | x^2 + x + 1        | root of modulus|
//! | 8 | x^3 + x + 1        | root of modulus|
//! | 9 | x^2 + 2x + 2       | root of modulus|
//!
//! These are the Conway polynomials, so `A` matches the generator used by
//! common computer algebra systems and the `A^k` strings in published code
//! tables are stable.
//!
//! Elements are stored as the integer `sum c_i p^i` of their coordinates in
//! the basis `1, A, .., A^(m-1)`. For prime fields this is the residue itself.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub const SUPPORTED_FIELDS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

struct Tables {
    q: u32,
    p: u32,
    m: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u8>,
}

/// Immutable, cheaply clonable handle to GF(q).
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q()
    }
}

impl Eq for Field {}

fn conway(q: u32) -> Option<(u32, u32, Vec<u8>)> {
    // (p, m, monic modulus coefficients lowest degree first)
    Some(match q {
        2 => (2, 1, vec![1, 1]),
        3 => (3, 1, vec![1, 1]),
        5 => (5, 1, vec![3, 1]),
        7 => (7, 1, vec![4, 1]),
        4 => (2, 2, vec![1, 1, 1]),
        8 => (2, 3, vec![1, 1, 0, 1]),
        9 => (3, 2, vec![2, 2, 1]),
        _ => return None,
    })
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two coordinate vectors modulo the monic `modulus` over GF(p).
fn mul_coords(a: &[u32], b: &[u32], modulus: &[u8], p: u32) -> Vec<u32> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (m..2 * m).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &mc) in modulus[..m].iter().enumerate() {
            let idx = top - m + i;
            prod[idx] = (prod[idx] + p * p - c * mc as u32 % p) % p;
        }
    }
    prod.truncate(m);
    prod
}

impl Field {
    /// Builds GF(q) with the pinned modulus and primitive element.
    pub fn new(q: u32) -> Result<Field> {
        let (p, m, modulus) = conway(q).ok_or(Error::UnsupportedField(q))?;
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a, p, m);
            for b in 0..q {
                let db = digits(b, p, m);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as u8;
                mul[(a * q + b) as usize] = undigits(&mul_coords(&da, &db, &modulus, p), p) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (0..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }
        // A is the root of the modulus: the constant -modulus[0] when m = 1,
        // the coordinate vector of x otherwise.
        let gen = if m == 1 {
            (p - modulus[0] as u32) % p
        } else {
            p
        } as u8;
        let mut exp = Vec::with_capacity(qs - 1);
        let mut log = vec![0u8; qs];
        let mut x = 1u8;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i as u8;
            x = mul[x as usize * qs + gen as usize];
        }
        debug_assert_eq!(x, 1, "pinned generator must have order q - 1");
        Ok(Field(Arc::new(Tables {
            q,
            p,
            m,
            modulus,
            add,
            mul,
            neg,
            inv,
            exp,
            log,
        })))
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// The characteristic.
    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    /// Defining polynomial over GF(p), lowest degree first; `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u8]> {
        (self.0.m > 1).then_some(self.0.modulus.as_slice())
    }

    pub fn generator_label(&self) -> &'static str {
        "A"
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q() as u8).map(Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.q() as u8).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.add[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.0.mul[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| Elem(self.0.inv[a.0 as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        match self.log(a) {
            None => Elem::ZERO,
            Some(l) => self.from_power(l as u64 * (e % (self.q() as u64 - 1))),
        }
    }

    /// The pinned primitive element `A`.
    pub fn primitive(&self) -> Elem {
        self.from_power(1)
    }

    /// `A^i`, exponent reduced modulo q - 1.
    pub fn from_power(&self, i: u64) -> Elem {
        Elem(self.0.exp[(i % (self.q() as u64 - 1)) as usize])
    }

    /// The exponent `i` in `[0, q-1)` with `A^i = a`, or `None` for zero.
    pub fn log(&self, a: Elem) -> Option<u32> {
        (!a.is_zero()).then(|| self.0.log[a.0 as usize] as u32)
    }

    /// Element of the prime subfield with the given residue.
    pub fn from_residue(&self, d: u32) -> Elem {
        Elem((d % self.p()) as u8)
    }

    /// Residue view when the element lies in the prime subfield.
    pub fn residue(&self, a: Elem) -> Option<u32> {
        ((a.0 as u32) < self.p()).then_some(a.0 as u32)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Result<u32> {
        let l = self.log(a).ok_or(Error::ZeroElement)?;
        let qm1 = self.q() - 1;
        Ok(qm1 / crate::arith::gcd(qm1 as u64, l as u64) as u32)
    }

    /// The unique `b` with `b^pt = a`, where `pt` is a power of the characteristic.
    pub fn pt_root(&self, a: Elem, pt: u64) -> Result<Elem> {
        let l = self.log(a).ok_or(Error::ZeroElement)? as u64;
        let qm1 = self.q() as u64 - 1;
        let inv = crate::arith::inv_mod(pt % qm1, qm1).ok_or(Error::NotCoprime {
            q: pt,
            modulus: qm1,
        })?;
        let b = self.from_power(l * inv);
        debug_assert_eq!(self.pow(b, pt), a);
        debug_assert_eq!(self.element_order(b)?, self.element_order(a)?);
        Ok(b)
    }
}

/// Shorthand for [`Field::new`].
pub fn field_make(q: u32) -> Result<Field> {
    Field::new(q)
}
