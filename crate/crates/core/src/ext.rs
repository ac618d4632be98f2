//! Extension fields GF(q^s) represented over a base [`Field`].
//!
//! Elements are coordinate vectors of length `s` in the basis
//! `1, y, .., y^(s-1)` of `F[y] / (modulus)`. The modulus is the first monic
//! irreducible polynomial of degree `s` when the lower coefficients are
//! enumerated as base-q integers, so the construction is deterministic.
//! No log tables are built: `q^s` can be far too large for them (for example
//! GF(7^52) hosts the 159th roots of unity over GF(7)).

use num_bigint::BigUint;

use crate::arith::prime_factors;
use crate::gf::{Elem, Field};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem(pub Vec<Elem>);

#[derive(Clone, Debug)]
pub struct ExtField {
    base: Field,
    degree: usize,
    /// Monic, lowest degree first, length `degree + 1`.
    modulus: Vec<Elem>,
}

fn base_q_digits(mut c: u64, q: u64, len: usize) -> Vec<Elem> {
    (0..len)
        .map(|_| {
            let d = c % q;
            c /= q;
            Elem(d as u8)
        })
        .collect()
}

impl ExtField {
    /// GF(q^s) as a degree-`s` extension of `base`.
    pub fn new(base: &Field, s: usize) -> ExtField {
        assert!(s >= 1, "extension degree must be positive");
        let q = base.q() as u64;
        let modulus = (0u64..)
            .map(|c| {
                let mut v = base_q_digits(c, q, s);
                v.push(Elem::ONE);
                v
            })
            .find(|v| Poly::new(base, v.clone()).is_irreducible())
            .expect("irreducible polynomials exist in every degree");
        ExtField {
            base: base.clone(),
            degree: s,
            modulus,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> Poly {
        Poly::new(&self.base, self.modulus.clone())
    }

    /// `q^s` as an exact integer.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.base.q()).pow(self.degree as u32)
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(vec![Elem::ZERO; self.degree])
    }

    pub fn one(&self) -> ExtElem {
        self.embed(Elem::ONE)
    }

    /// The image of a base-field element.
    pub fn embed(&self, c: Elem) -> ExtElem {
        let mut v = vec![Elem::ZERO; self.degree];
        v[0] = c;
        ExtElem(v)
    }

    /// The base-field element this equals, if it lies in the base field.
    pub fn to_base(&self, a: &ExtElem) -> Option<Elem> {
        a.0[1..].iter().all(|c| c.is_zero()).then_some(a.0[0])
    }

    /// The element whose coordinates are the base-q digits of `c`.
    pub fn from_index(&self, c: u64) -> ExtElem {
        ExtElem(base_q_digits(c, self.base.q() as u64, self.degree))
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.base.add(x, y)).collect())
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.base.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &ExtElem) -> ExtElem {
        ExtElem(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.base;
        let s = self.degree;
        let mut prod = vec![Elem::ZERO; 2 * s - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        for top in (s..2 * s - 1).rev() {
            let c = prod[top];
            if c.is_zero() {
                continue;
            }
            for (i, &m) in self.modulus[..s].iter().enumerate() {
                let idx = top - s + i;
                prod[idx] = f.sub(prod[idx], f.mul(c, m));
            }
        }
        prod.truncate(s);
        ExtElem(prod)
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, a: &ExtElem, c: Elem) -> ExtElem {
        ExtElem(a.0.iter().map(|&x| self.base.mul(x, c)).collect())
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    pub fn pow_big(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        let e = self.order() - 2u32;
        Some(self.pow_big(a, &e))
    }

    /// Whether `a` has multiplicative order exactly `m`.
    pub fn has_order(&self, a: &ExtElem, m: u64) -> bool {
        let one = self.one();
        !self.is_zero(a)
            && self.pow(a, m) == one
            && prime_factors(m)
                .into_iter()
                .all(|l| self.pow(a, m / l) != one)
    }

    /// The first element (in [`ExtField::from_index`] order) whose
    /// `(q^s - 1)/m`-th power has order exactly `m`; returns that power.
    /// `None` when `m` does not divide `q^s - 1`.
    pub fn element_of_order(&self, m: u64) -> Option<ExtElem> {
        let group = self.order() - 1u32;
        let m_big = BigUint::from(m);
        if &group % &m_big != BigUint::from(0u32) {
            return None;
        }
        let cofactor = group / m_big;
        (1u64..).map(|c| self.pow_big(&self.from_index(c), &cofactor))
            .find(|w| self.has_order(w, m))
    }
}

/// GF(q^s) as an extension of `base`; `s = 1` gives a field isomorphic to `base`.
pub fn extension_field(base: &Field, s: usize) -> ExtField {
    ExtField::new(base, s)
}
