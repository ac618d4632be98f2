//! Cyclotomic-coset machinery for divisors of `x^n - a`.
//!
//! Write `n = n' p^t` with `p` the characteristic and `gcd(n', p) = 1`, let
//! `r` be the multiplicative order of `a`, and let `b` be the unique
//! `p^t`-th root of `a`. Then `x^n - a = (x^{n'} - b)^{p^t}`. With `delta` an
//! element of order `M = n' r` satisfying `delta^{n'} = b`, the roots of
//! `x^{n'} - b` are `delta^z` for the exponents `z = 1 + i r (mod M)`,
//! `0 <= i < n'`. A divisor of `x^n - a` is therefore described by a
//! multiplicity in `[0, p^t]` for every exponent, constant on each orbit of
//! `z -> q z (mod M)`.

use std::sync::OnceLock;

use crate::arith::{gcd, mult_order_mod, strip_prime};
use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtField};
use crate::gf::{Elem, Field};
use crate::poly::{root_multiplicity, Poly};

/// The constacyclic context for length `n` and shift constant `a` over GF(q).
#[derive(Clone, Debug)]
pub struct CcParams {
    pub field: Field,
    pub n: usize,
    pub a: Elem,
    /// Multiplicative order of `a`.
    pub r: u32,
    pub nprime: u32,
    pub t: u32,
    /// `p^t`.
    pub pt: u32,
    /// `M = n' r`, the modulus for exponent arithmetic.
    pub modulus: u32,
    /// The `p^t`-th root of `a`.
    pub b: Elem,
}

impl CcParams {
    pub fn new(field: &Field, n: usize, a: Elem) -> Result<CcParams> {
        if n < 2 {
            return Err(Error::InvalidParams(format!("length {n} must be at least 2")));
        }
        let r = field.element_order(a)?;
        let p = field.p() as u64;
        let (nprime, t) = strip_prime(n as u64, p);
        let pt = p.pow(t) as u32;
        let b = field.pt_root(a, pt as u64)?;
        debug_assert_eq!(field.element_order(b)?, r);
        Ok(CcParams {
            field: field.clone(),
            n,
            a,
            r,
            nprime: nprime as u32,
            t,
            pt,
            modulus: nprime as u32 * r,
            b,
        })
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Exponents `1 + i r (mod M)` for `i` in `0..n'`, in that order.
    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.nprime).map(move |i| (1 + i * self.r) % self.modulus)
    }

    pub fn is_exponent(&self, z: u32) -> bool {
        z < self.modulus && z % self.r == 1 % self.r
    }

    pub fn x_n_minus_a(&self) -> Poly {
        Poly::x_n_minus(&self.field, self.n, self.a)
    }

    /// Degree `s` of the extension hosting the `M`-th roots of unity, the
    /// multiplicative order of `q` modulo `M`.
    pub fn ext_degree(&self) -> usize {
        mult_order_mod(self.q() as u64, self.modulus as u64).expect("gcd(q, M) = 1") as usize
    }
}

/// [`CcParams::new`] from a field size.
pub fn cc_params(q: u32, n: usize, a: Elem) -> Result<CcParams> {
    CcParams::new(&Field::new(q)?, n, a)
}

/// Orbits of the exponent set under `z -> q z (mod M)`, each sorted, listed by
/// smallest member.
pub fn cyclotomic_cosets(params: &CcParams) -> Vec<Vec<u32>> {
    let m = params.modulus;
    let q = params.q() % m.max(1);
    let mut seen = vec![false; m as usize];
    let mut out = Vec::new();
    let mut exps: Vec<u32> = params.exponents().collect();
    exps.sort_unstable();
    for z in exps {
        if seen[z as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut w = z;
        while !seen[w as usize] {
            seen[w as usize] = true;
            coset.push(w);
            w = ((w as u64 * q as u64) % m as u64) as u32;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

/// Multiplicities indexed by exponent `z` in `0..M`; non-exponents are 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetMultiset {
    mult: Vec<u8>,
}

impl CosetMultiset {
    pub fn empty(modulus: u32) -> CosetMultiset {
        CosetMultiset {
            mult: vec![0; modulus as usize],
        }
    }

    pub fn from_vec(mult: Vec<u8>) -> CosetMultiset {
        CosetMultiset { mult }
    }

    pub fn modulus(&self) -> u32 {
        self.mult.len() as u32
    }

    pub fn get(&self, z: u32) -> u8 {
        self.mult[z as usize]
    }

    pub fn set(&mut self, z: u32, m: u8) {
        self.mult[z as usize] = m;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.mult
    }

    /// Sum of multiplicities (the degree of the corresponding divisor).
    pub fn total(&self) -> u32 {
        self.mult.iter().map(|&m| m as u32).sum()
    }

    /// `(z, multiplicity)` for every exponent with nonzero multiplicity, ascending.
    pub fn support(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(z, &m)| (z as u32, m))
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Image under `z -> e z + b (mod M)`.
    pub fn apply(&self, w: LinearMapWitness) -> CosetMultiset {
        let m = self.modulus() as u64;
        let mut out = CosetMultiset::empty(self.modulus());
        for (z, k) in self.support() {
            out.mult[((w.e as u64 * z as u64 + w.b as u64) % m) as usize] = k;
        }
        out
    }
}

/// The affine exponent map `z -> e z + b (mod M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinearMapWitness {
    pub e: u32,
    pub b: u32,
}

impl LinearMapWitness {
    pub const IDENTITY: LinearMapWitness = LinearMapWitness { e: 1, b: 0 };

    /// Whether the map is a bijection of the exponent set `{z : z = 1 mod r}`.
    pub fn preserves_exponents(&self, modulus: u32, r: u32) -> bool {
        gcd(self.e as u64, modulus as u64) == 1 && (self.e + self.b) % r == 1 % r
    }
}

/// Finds the root of unity for the context: order exactly `M` and
/// `delta^{n'} = b`. Among the elements of order `M` produced from the first
/// suitable base element `w` of [`ExtField::element_of_order`], returns
/// `w^u` for the smallest admissible `u`.
pub fn find_delta(params: &CcParams, ext: &ExtField) -> ExtElem {
    let m = params.modulus as u64;
    let w = ext
        .element_of_order(m)
        .expect("extension degree is the order of q modulo M");
    let target = ext.embed(params.b);
    (1..=m)
        .filter(|&u| gcd(u, m) == 1)
        .map(|u| ext.pow(&w, u))
        .find(|d| ext.pow(d, params.nprime as u64) == target)
        .expect("an M-th root of unity over b exists")
}

/// Everything needed to move between divisors of `x^n - a` and multisets.
pub struct CcContext {
    params: CcParams,
    ext: ExtField,
    delta: ExtElem,
    delta_pows: Vec<ExtElem>,
    cosets: Vec<Vec<u32>>,
    coset_of: Vec<Option<u32>>,
    coset_polys: OnceLock<Vec<Poly>>,
}

impl std::fmt::Debug for CcContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CcContext")
            .field("params", &self.params)
            .field("ext_degree", &self.ext.degree())
            .field("cosets", &self.cosets.len())
            .finish()
    }
}

impl CcContext {
    pub fn new(params: CcParams) -> CcContext {
        let ext = ExtField::new(&params.field, params.ext_degree());
        let delta = find_delta(&params, &ext);
        Self::with_delta(params, ext, delta)
    }

    /// Uses `delta^u` in place of the default root, for `gcd(u, M) = 1` and
    /// `u = 1 (mod r)` so that the exponent set is preserved.
    pub fn relabeled(&self, u: u32) -> Result<CcContext> {
        let (m, r) = (self.params.modulus, self.params.r);
        if gcd(u as u64, m as u64) != 1 || u % r != 1 % r {
            return Err(Error::InvalidParams(format!(
                "relabeling exponent {u} must be a unit mod {m} congruent to 1 mod {r}"
            )));
        }
        let delta = self.ext.pow(&self.delta, u as u64);
        Ok(Self::with_delta(self.params.clone(), self.ext.clone(), delta))
    }

    fn with_delta(params: CcParams, ext: ExtField, delta: ExtElem) -> CcContext {
        let m = params.modulus;
        let mut delta_pows = Vec::with_capacity(m as usize);
        let mut x = ext.one();
        for _ in 0..m {
            delta_pows.push(x.clone());
            x = ext.mul(&x, &delta);
        }
        let cosets = cyclotomic_cosets(&params);
        let mut coset_of = vec![None; m as usize];
        for (j, c) in cosets.iter().enumerate() {
            for &z in c {
                coset_of[z as usize] = Some(j as u32);
            }
        }
        CcContext {
            params,
            ext,
            delta,
            delta_pows,
            cosets,
            coset_of,
            coset_polys: OnceLock::new(),
        }
    }

    pub fn params(&self) -> &CcParams {
        &self.params
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn delta(&self) -> &ExtElem {
        &self.delta
    }

    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    pub fn coset_of(&self, z: u32) -> Option<u32> {
        self.coset_of.get(z as usize).copied().flatten()
    }

    /// Number of divisors of `x^n - a`: `(p^t + 1)^{#cosets}`.
    pub fn divisor_count(&self) -> u128 {
        (self.params.pt as u128 + 1).pow(self.cosets.len() as u32)
    }

    /// Minimal polynomial over F of `delta^z` for the smallest `z` of coset `j`.
    pub fn coset_poly(&self, j: usize) -> &Poly {
        &self.coset_polys()[j]
    }

    fn coset_polys(&self) -> &[Poly] {
        self.coset_polys.get_or_init(|| {
            self.cosets
                .iter()
                .map(|c| {
                    self.product_of_roots(c.iter().map(|&z| (z, 1)))
                        .expect("a full cyclotomic coset gives a polynomial over F")
                })
                .collect()
        })
    }

    /// `prod (x - delta^z)^k` over the given pairs, required to land in F.
    fn product_of_roots(&self, roots: impl Iterator<Item = (u32, u8)>) -> Result<Poly> {
        let ext = &self.ext;
        let mut acc = vec![ext.one()];
        for (z, k) in roots {
            let root = &self.delta_pows[z as usize];
            for _ in 0..k {
                // acc * (x - root)
                let mut next = vec![ext.zero(); acc.len() + 1];
                for (i, c) in acc.iter().enumerate() {
                    next[i + 1] = ext.add(&next[i + 1], c);
                    next[i] = ext.sub(&next[i], &ext.mul(c, root));
                }
                acc = next;
            }
        }
        let coeffs = acc
            .iter()
            .map(|c| ext.to_base(c))
            .collect::<Option<Vec<Elem>>>()
            .ok_or_else(|| Error::NotCosetClosed("product has coefficients outside F".into()))?;
        Ok(Poly::new(&self.params.field, coeffs))
    }

    /// Per-exponent root multiplicities of a divisor `g` of `x^n - a`.
    pub fn signature(&self, g: &Poly) -> Result<CosetMultiset> {
        if g.field() != &self.params.field {
            return Err(Error::FieldMismatch {
                left: g.field().q(),
                right: self.params.q(),
            });
        }
        if g.is_zero() || !g.divides(&self.params.x_n_minus_a()) {
            return Err(Error::NotDivisor("generator"));
        }
        let mut ms = CosetMultiset::empty(self.params.modulus);
        for z in self.params.exponents() {
            let y = root_multiplicity(g, &self.ext, &self.delta_pows[z as usize]);
            ms.set(z, y as u8);
        }
        debug_assert_eq!(ms.total() as usize, g.degree().unwrap());
        Ok(ms)
    }

    /// Per-coset multiplicities, or `None` when `ms` is not uniform on some
    /// coset, exceeds `p^t`, or touches a non-exponent.
    pub fn digits(&self, ms: &CosetMultiset) -> Option<Vec<u8>> {
        if ms.modulus() != self.params.modulus {
            return None;
        }
        if ms.support().any(|(z, k)| self.coset_of(z).is_none() || k as u32 > self.params.pt) {
            return None;
        }
        self.cosets
            .iter()
            .map(|c| {
                let k = ms.get(c[0]);
                c.iter().all(|&z| ms.get(z) == k).then_some(k)
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u8]) -> CosetMultiset {
        assert_eq!(digits.len(), self.cosets.len());
        let mut ms = CosetMultiset::empty(self.params.modulus);
        for (c, &k) in self.cosets.iter().zip(digits) {
            for &z in c {
                ms.set(z, k);
            }
        }
        ms
    }

    /// Index of a coset-closed multiset in the base-`(p^t + 1)` enumeration
    /// (coset 0 is the least significant digit).
    pub fn index_of(&self, digits: &[u8]) -> u128 {
        let base = self.params.pt as u128 + 1;
        digits.iter().rev().fold(0, |acc, &d| acc * base + d as u128)
    }

    pub fn digits_of_index(&self, mut index: u128) -> Vec<u8> {
        let base = self.params.pt as u128 + 1;
        (0..self.cosets.len())
            .map(|_| {
                let d = (index % base) as u8;
                index /= base;
                d
            })
            .collect()
    }

    /// `P(ms) = prod (x - delta^z)^{ms[z]}`, monic with coefficients in F.
    pub fn multiset_to_poly(&self, ms: &CosetMultiset) -> Result<Poly> {
        match self.digits(ms) {
            Some(d) => Ok(self.poly_from_digits(&d)),
            None => {
                if ms.modulus() != self.params.modulus
                    || ms.support().any(|(z, k)| !self.params.is_exponent(z) || k as u32 > self.params.pt)
                {
                    return Err(Error::NotCosetClosed("multiset outside the exponent range".into()));
                }
                self.product_of_roots(ms.support())
            }
        }
    }

    pub fn poly_from_digits(&self, digits: &[u8]) -> Poly {
        let f = &self.params.field;
        digits
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .fold(Poly::one(f), |acc, (j, &k)| acc.mul(&self.coset_poly(j).pow(k as u64)))
    }
}
