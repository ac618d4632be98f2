//! Dense univariate polynomials over a [`Field`], lowest degree first.

use std::fmt;

use crate::cosets::CcParams;
use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtField};
use crate::gf::{Elem, Field};

/// Polynomial with coefficients in one field. The zero polynomial has an
/// empty coefficient vector; otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}](", self.field)?;
        for c in &self.coeffs {
            write!(f, "{} ", c.0)?;
        }
        write!(f, ")")
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(field: &Field, c: Elem, d: usize) -> Poly {
        let mut v = vec![Elem::ZERO; d + 1];
        v[d] = c;
        Poly::new(field, v)
    }

    /// `x^n - a`.
    pub fn x_n_minus(field: &Field, n: usize, a: Elem) -> Poly {
        let mut v = vec![Elem::ZERO; n + 1];
        v[0] = field.neg(a);
        v[n] = Elem::ONE;
        Poly::new(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    pub fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            })
        }
    }

    fn assert_same(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same(other);
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.field.neg(Elem::ONE))
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let t = f.mul(c, lead_inv);
            quot[top - dd] = t;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(t, dc));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient, or [`Error::NotDivisor`] when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Poly, what: &'static str) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisor(what))
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_ok_and(|r| r.is_zero())
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(c) => self.scale(c),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Reduction modulo `x^n - a` by folding `x^n -> a`.
    pub fn reduce_xn(&self, n: usize, a: Elem) -> Poly {
        let f = &self.field;
        let mut v = self.coeffs.clone();
        for i in (n..v.len()).rev() {
            let c = v[i];
            if !c.is_zero() {
                v[i - n] = f.add(v[i - n], f.mul(c, a));
            }
        }
        v.truncate(n);
        Poly::new(f, v)
    }

    /// `(self * other) mod (x^n - a)`.
    pub fn mul_xn(&self, other: &Poly, n: usize, a: Elem) -> Poly {
        self.mul(other).reduce_xn(n, a)
    }

    /// `self * other mod modulus`.
    pub fn mulmod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(other).rem(modulus)
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(&self.field).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Coefficients in reverse order, padded to `len` (the reciprocal when
    /// `len = deg + 1`).
    pub fn reversed(&self, len: usize) -> Poly {
        let mut v: Vec<Elem> = (0..len).map(|i| self.coeff(i)).collect();
        v.reverse();
        Poly::new(&self.field, v)
    }

    /// Rabin's irreducibility test over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let f = &self.field;
        let q = f.q() as u64;
        let x = Poly::monomial(f, Elem::ONE, 1);
        // x^(q^i) mod self for i = 0..=d
        let mut frob = vec![x.clone()];
        for _ in 0..d {
            let next = frob.last().unwrap().powmod(q, self).expect("nonzero modulus");
            frob.push(next);
        }
        if frob[d] != x.rem(self).unwrap() {
            return false;
        }
        crate::arith::prime_factors(d as u64).into_iter().all(|l| {
            let h = frob[d / l as usize].sub(&x);
            h.gcd(self).map(|g| g.degree() == Some(0)).unwrap_or(false)
        })
    }
}

/// Largest `y` with `(x - rho)^y` dividing `g`, after embedding `g` into the
/// extension that contains `rho`. Returns 0 for the zero polynomial.
pub fn root_multiplicity(g: &Poly, ext: &ExtField, rho: &ExtElem) -> usize {
    if g.is_zero() {
        return 0;
    }
    let mut cur: Vec<ExtElem> = g.coeffs().iter().map(|&c| ext.embed(c)).collect();
    let mut y = 0;
    while cur.len() > 1 {
        // Synthetic division by (x - rho), highest coefficient first.
        let top = cur.len() - 1;
        let mut quot = vec![ext.zero(); top];
        let mut acc = cur[top].clone();
        for i in (0..top).rev() {
            quot[i] = acc.clone();
            acc = ext.add(&cur[i], &ext.mul(&acc, rho));
        }
        if !ext.is_zero(&acc) {
            break;
        }
        cur = quot;
        y += 1;
    }
    y
}

/// The generator `(x^n - a) / h` of the code whose check polynomial is `h`.
pub fn generator_from_check(params: &CcParams, h: &Poly) -> Result<Poly> {
    params.x_n_minus_a().exact_div(h, "check polynomial")
}

/// Binary polynomial operations with field checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
    Gcd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyResult {
    One(Poly),
    Two(Poly, Poly),
}

pub fn poly_arith(op: PolyOp, f: &Poly, g: &Poly) -> Result<PolyResult> {
    f.check_same_field(g)?;
    Ok(match op {
        PolyOp::Add => PolyResult::One(f.add(g)),
        PolyOp::Mul => PolyResult::One(f.mul(g)),
        PolyOp::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyResult::Two(q, r)
        }
        PolyOp::Gcd => PolyResult::One(f.gcd(g)?),
    })
}
