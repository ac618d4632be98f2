//! Linear codes held in canonical (reduced row echelon) form.

use serde::Serialize;

use crate::cosets::CcParams;
use crate::distance::weight_distribution_either;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matrix::Matrix;
use crate::poly::{generator_from_check, Poly};

/// A linear `[n, k]` code over GF(q). Equality is equality of the RREF
/// generator, i.e. equality of row spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    /// RREF, exactly `k` rows.
    rref: Matrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// The row space of `generator`; dependent rows are dropped.
    pub fn new(generator: &Matrix) -> LinearCode {
        let (rref, pivots) = generator.rref();
        LinearCode {
            n: generator.cols(),
            rref,
            pivots,
        }
    }

    pub fn from_rows(field: &Field, n: usize, rows: &[Vec<Elem>]) -> LinearCode {
        LinearCode::new(&Matrix::from_rows(field, n, rows))
    }

    /// The zero code of length `n`.
    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode::new(&Matrix::zero(field, 0, n))
    }

    /// The `[n, n]` code.
    pub fn full(field: &Field, n: usize) -> LinearCode {
        LinearCode::new(&Matrix::identity(field, n))
    }

    /// `[n, 1, n]` repetition code.
    pub fn repetition(field: &Field, n: usize) -> LinearCode {
        LinearCode::from_rows(field, n, &[vec![Elem::ONE; n]])
    }

    pub fn field(&self) -> &Field {
        self.rref.field()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rref.rows()
    }

    /// Canonical generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.rref
    }

    /// Pivot columns of the canonical generator; an information set.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn encode(&self, msg: &[Elem]) -> Vec<Elem> {
        self.rref.left_mul_vec(msg)
    }

    /// The message `x` with `x · G = v`, if `v` is a codeword.
    pub fn solve(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        if v.len() != self.n {
            return None;
        }
        let x: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        (self.encode(&x) == v).then_some(x)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.solve(v).is_some()
    }

    /// Whether `other` is a subcode of `self`.
    pub fn contains_code(&self, other: &LinearCode) -> bool {
        other.n == self.n
            && other.field() == self.field()
            && (0..other.k()).all(|i| self.contains(other.rref.row(i)))
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(&self.rref.kernel())
    }

    /// Dimension of `C ∩ C⊥` as `k - rank(G Gᵀ)`.
    pub fn hull_dimension(&self) -> usize {
        self.k() - self.rref.gram().rank()
    }

    /// Dimension of `C ∩ C⊥` as `k + (n - k) - rank([G; H])`.
    pub fn hull_dimension_by_intersection(&self) -> usize {
        let h = self.dual();
        self.k() + h.k() - self.rref.stack(h.generator()).rank()
    }

    /// The code with coordinates in reverse order.
    pub fn reversed(&self) -> LinearCode {
        LinearCode::new(&self.rref.reverse_columns())
    }

    /// Constacyclic shift `(c_0, .., c_{n-1}) -> (a c_{n-1}, c_0, .., c_{n-2})`.
    pub fn is_constacyclic(&self, a: Elem) -> bool {
        let f = self.field();
        (0..self.k()).all(|i| {
            let row = self.rref.row(i);
            let mut s = Vec::with_capacity(self.n);
            s.push(f.mul(a, row[self.n - 1]));
            s.extend_from_slice(&row[..self.n - 1]);
            self.contains(&s)
        })
    }
}

/// `⟨g⟩` in `F[x]/(x^n - a)`: rows `x^i g`, `i < n - deg g`.
pub fn cc_code(params: &CcParams, g: &Poly) -> Result<LinearCode> {
    let field = &params.field;
    if g.field() != field {
        return Err(Error::FieldMismatch {
            left: g.field().q(),
            right: field.q(),
        });
    }
    let xn = params.x_n_minus_a();
    if g.is_zero() || !g.divides(&xn) {
        return Err(Error::NotDivisor("generator"));
    }
    let n = params.n;
    let deg = g.degree().expect("nonzero");
    let rows: Vec<Vec<Elem>> = (0..n - deg)
        .map(|i| {
            let mut r = vec![Elem::ZERO; n];
            r[i..=i + deg].copy_from_slice(g.coeffs());
            r
        })
        .collect();
    let code = LinearCode::from_rows(field, n, &rows);
    debug_assert!(code.is_constacyclic(params.a));
    Ok(code)
}

/// `⟨(x^n - a) / h⟩`.
pub fn cc_code_from_check(params: &CcParams, h: &Poly) -> Result<LinearCode> {
    cc_code(params, &generator_from_check(params, h)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertySet {
    pub self_orthogonal: bool,
    pub dual_containing: bool,
    pub lcd: bool,
    pub self_dual: bool,
    pub reversible: bool,
    pub hull_dimension: usize,
    /// `None` when the weight distribution exceeded the cap.
    pub two_weight: Option<bool>,
    /// Distinct nonzero weights, when computed.
    pub weight_values: Option<Vec<usize>>,
}

/// Property battery. `cap` bounds `min(q^k, q^(n-k))` for the weight
/// distribution used by the two-weight test; the other properties are
/// always computed.
pub fn classify(c: &LinearCode, cap: u64) -> PropertySet {
    let hull = c.hull_dimension();
    debug_assert_eq!(hull, c.hull_dimension_by_intersection());
    let k = c.k();
    let self_orthogonal = hull == k;
    let dual_containing = hull == c.n() - k;
    let weight_values: Option<Vec<usize>> = weight_distribution_either(c, cap)
        .ok()
        .map(|wd| wd.keys().copied().filter(|&w| w > 0).collect());
    PropertySet {
        self_orthogonal,
        dual_containing,
        lcd: hull == 0,
        self_dual: self_orthogonal && 2 * k == c.n(),
        reversible: c.reversed() == *c,
        hull_dimension: hull,
        two_weight: weight_values.as_ref().map(|w| k > 0 && w.len() <= 2),
        weight_values,
    }
}
