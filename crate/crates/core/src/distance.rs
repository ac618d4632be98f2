//! Minimum distance and weight distribution.
//!
//! Small codes (`q^k` within the enumeration cap) are enumerated in full with
//! a p-ary Gray code over the additive basis `{A^i g_j}`, one row addition per
//! codeword. Codes whose dual is small are handled by enumerating the dual and
//! applying the MacWilliams identities. Larger codes use
//! Brouwer-Zimmermann enumeration over disjoint information sets: after all
//! messages of weight `<= w` have been expanded in each systematic form, an
//! unseen codeword has weight `> w - (k - r_j)` on every information set `j`
//! of rank `r_j`, which gives the lower bound.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matrix::Matrix;

/// Default cap on `q^k` for full enumeration.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 26;
/// Default cap on codewords expanded by information-set enumeration.
pub const DEFAULT_IS_BUDGET: u64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMethod {
    Exhaustive,
    MacWilliams,
    InformationSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub method: DistanceMethod,
    pub codewords: u64,
}

impl DistanceReport {
    pub fn exact_value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DistanceOptions {
    pub enum_cap: u64,
    pub is_budget: u64,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            enum_cap: DEFAULT_ENUM_CAP,
            is_budget: DEFAULT_IS_BUDGET,
        }
    }
}

/// `q^k`, saturating.
pub fn code_size(c: &LinearCode) -> u64 {
    (c.field().q() as u64).checked_pow(c.k() as u32).unwrap_or(u64::MAX)
}

/// Nonzero entries of `A^i g_j` for `i < m`, `j < k`: a GF(p)-basis of the code.
fn additive_basis(g: &Matrix) -> Vec<Vec<(usize, Elem)>> {
    let f = g.field();
    let mut out = Vec::with_capacity(g.rows() * f.m() as usize);
    for i in 0..g.rows() {
        for e in 0..f.m() as u64 {
            let s = f.from_power(e);
            out.push(
                g.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, &v)| (j, f.mul(s, v)))
                    .collect(),
            );
        }
    }
    out
}

/// Calls `visit(weight)` on every codeword of one chunk: the top GF(p)
/// digits are fixed to `prefix`, the low `low` digits run through a Gray code.
/// Adding a basis row `p` times is the identity, so each digit step is +1 mod p.
fn gray_chunk(field: &Field, rows: &[Vec<(usize, Elem)>], n: usize, low: usize, prefix: u64, mut visit: impl FnMut(usize)) {
    let q = field.p() as u64;
    let mut word = vec![Elem::ZERO; n];
    let mut weight = 0usize;
    let add_row = |word: &mut [Elem], weight: &mut usize, r: &[(usize, Elem)], times: u64| {
        for _ in 0..times {
            for &(j, v) in r {
                let old = word[j];
                let new = field.add(old, v);
                *weight = *weight + (!new.is_zero()) as usize - (!old.is_zero()) as usize;
                word[j] = new;
            }
        }
    };
    let mut p = prefix;
    for r in &rows[low..] {
        add_row(&mut word, &mut weight, r, p % q);
        p /= q;
    }
    visit(weight);
    let steps = q.pow(low as u32);
    for s in 1..steps {
        let mut j = 0;
        let mut t = s;
        while t % q == 0 {
            t /= q;
            j += 1;
        }
        add_row(&mut word, &mut weight, &rows[j], 1);
        visit(weight);
    }
}

/// Splits the message space into `q^top` chunks for parallel enumeration.
fn chunking(q: u64, k: usize) -> usize {
    let mut top = 0;
    while top < k && q.pow(top as u32) < 256 {
        top += 1;
    }
    top
}

fn enumerate<T: Send>(
    c: &LinearCode,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, usize) + Sync,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    let field = c.field();
    let p = field.p() as u64;
    let rows = additive_basis(c.generator());
    let top = chunking(p, rows.len());
    let low = rows.len() - top;
    (0..p.pow(top as u32))
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            gray_chunk(field, &rows, c.n(), low, prefix, |w| visit(&mut acc, w));
            acc
        })
        .reduce(&init, &merge)
}

/// Weight distribution `weight -> count`; fails when `q^k > cap`.
pub fn weight_distribution(c: &LinearCode, cap: u64) -> Result<BTreeMap<usize, u64>> {
    let size = code_size(c);
    if size > cap {
        return Err(Error::CapExceeded {
            required: size as u128,
            cap: cap as u128,
        });
    }
    let n = c.n();
    let hist = enumerate(
        c,
        || vec![0u64; n + 1],
        |h, w| h[w] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(hist.into_iter().enumerate().filter(|&(_, m)| m > 0).collect())
}

/// Krawtchouk evaluations for the MacWilliams identities of one length.
struct MacWilliams {
    n: usize,
    binom: Vec<Vec<BigInt>>,
    qm1: Vec<BigInt>,
    size: BigInt,
}

impl MacWilliams {
    fn new(n: usize, q: u32, dual_k: usize) -> MacWilliams {
        let mut binom = vec![vec![BigInt::from(0); n + 1]; n + 1];
        for i in 0..=n {
            binom[i][0] = BigInt::from(1);
            for j in 1..=i {
                binom[i][j] = &binom[i - 1][j - 1] + &binom[i - 1][j];
            }
        }
        MacWilliams {
            n,
            binom,
            qm1: (0..=n).map(|e| BigInt::from(q - 1).pow(e as u32)).collect(),
            size: BigInt::from(q).pow(dual_k as u32),
        }
    }

    /// `A_j = q^{-dual_k} sum_i B_i K_j(i)`.
    fn count(&self, dual_wd: &BTreeMap<usize, u64>, j: usize) -> BigUint {
        let n = self.n;
        let mut acc = BigInt::from(0);
        for (&i, &b) in dual_wd {
            let mut k = BigInt::from(0);
            for s in 0..=j.min(i) {
                if j - s > n - i {
                    continue;
                }
                let term = &self.qm1[j - s] * &self.binom[i][s] * &self.binom[n - i][j - s];
                if s % 2 == 0 {
                    k += term;
                } else {
                    k -= term;
                }
            }
            acc += k * b;
        }
        assert_eq!(&acc % &self.size, BigInt::from(0), "MacWilliams transform is not integral");
        (acc / &self.size).to_biguint().expect("counts are nonnegative")
    }
}

/// Weight distribution of an `[n, ·]` code over GF(q) from the distribution
/// `dual_wd` of its `dual_k`-dimensional dual, in exact arithmetic.
pub fn macwilliams(dual_wd: &BTreeMap<usize, u64>, n: usize, q: u32, dual_k: usize) -> BTreeMap<usize, BigUint> {
    let mw = MacWilliams::new(n, q, dual_k);
    (0..=n)
        .map(|j| (j, mw.count(dual_wd, j)))
        .filter(|(_, a)| *a != BigUint::from(0u32))
        .collect()
}

/// Weight distribution computed from whichever of the code and its dual is
/// smaller; fails when both exceed `cap`.
pub fn weight_distribution_either(c: &LinearCode, cap: u64) -> Result<BTreeMap<usize, BigUint>> {
    if c.k() <= c.n() - c.k() || code_size(c) <= cap {
        return Ok(weight_distribution(c, cap)?.into_iter().map(|(w, m)| (w, BigUint::from(m))).collect());
    }
    let d = c.dual();
    let dual_wd = weight_distribution(&d, cap)?;
    Ok(macwilliams(&dual_wd, c.n(), c.field().q(), d.k()))
}

/// Exact minimum distance via the dual's weight distribution; fails when
/// `q^(n-k) > cap`.
pub fn dual_distance(c: &LinearCode, cap: u64) -> Result<DistanceReport> {
    assert!(c.k() > 0, "zero code has no minimum distance");
    let d = c.dual();
    let dual_wd = weight_distribution(&d, cap)?;
    let mw = MacWilliams::new(c.n(), c.field().q(), d.k());
    let w = (1..=c.n())
        .find(|&j| mw.count(&dual_wd, j) != BigUint::from(0u32))
        .expect("nonzero code");
    Ok(DistanceReport {
        lower: w,
        upper: w,
        exact: true,
        method: DistanceMethod::MacWilliams,
        codewords: code_size(&d),
    })
}

/// Exact minimum distance by full enumeration.
pub fn exhaustive_distance(c: &LinearCode) -> DistanceReport {
    assert!(c.k() > 0, "zero code has no minimum distance");
    let d = enumerate(
        c,
        || usize::MAX,
        |m, w| {
            if w > 0 && w < *m {
                *m = w
            }
        },
        usize::min,
    );
    DistanceReport {
        lower: d,
        upper: d,
        exact: true,
        method: DistanceMethod::Exhaustive,
        codewords: code_size(c),
    }
}

/// A generator systematic on as many columns of `cols` as possible, and
/// those columns.
fn systematic_on(g: &Matrix, cols: &[usize]) -> (Matrix, Vec<usize>) {
    let n = g.cols();
    let rest: Vec<usize> = (0..n).filter(|j| !cols.contains(j)).collect();
    let order: Vec<usize> = cols.iter().chain(&rest).copied().collect();
    let (r, pivots) = g.select_columns(&order).rref();
    let taken = pivots.iter().filter(|&&p| p < cols.len()).map(|&p| cols[p]).collect();
    let mut back = vec![0; n];
    for (pos, &col) in order.iter().enumerate() {
        back[col] = pos;
    }
    (r.select_columns(&back), taken)
}

/// Disjoint information sets, greedy in column order. Each entry is a
/// generator systematic on the set and the set's rank.
pub fn information_sets(c: &LinearCode) -> Vec<(Matrix, usize)> {
    let mut remaining: Vec<usize> = (0..c.n()).collect();
    let mut out = Vec::new();
    while !remaining.is_empty() {
        let (g, taken) = systematic_on(c.generator(), &remaining);
        if taken.is_empty() {
            break;
        }
        remaining.retain(|j| !taken.contains(j));
        out.push((g, taken.len()));
    }
    out
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Next `w`-subset of `0..k` in lexicographic order.
fn next_combination(comb: &mut [usize], k: usize) -> bool {
    let w = comb.len();
    for i in (0..w).rev() {
        if comb[i] < k - w + i {
            comb[i] += 1;
            for j in i + 1..w {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Minimum codeword weight over messages of weight exactly `w` whose
/// support starts at row `first` with coefficient 1.
fn min_weight_level(field: &Field, g: &Matrix, w: usize, first: usize) -> usize {
    let k = g.rows();
    if w == 0 || first + w > k {
        return usize::MAX;
    }
    let units: Vec<Elem> = field.nonzero().collect();
    let tails = (units.len() as u64).pow(w as u32 - 1);
    let mut best = usize::MAX;
    let mut rest: Vec<usize> = (first + 1..first + w).collect();
    let mut word = vec![Elem::ZERO; g.cols()];
    loop {
        for t in 0..tails {
            word.copy_from_slice(g.row(first));
            let mut code = t;
            for &row in &rest {
                let coef = units[(code % units.len() as u64) as usize];
                code /= units.len() as u64;
                for (x, &v) in word.iter_mut().zip(g.row(row)) {
                    if !v.is_zero() {
                        *x = field.add(*x, field.mul(coef, v));
                    }
                }
            }
            best = best.min(word.iter().filter(|x| !x.is_zero()).count());
        }
        // advance the rows after `first` within first+1..k
        if rest.is_empty() || !next_combination_from(&mut rest, first + 1, k) {
            break;
        }
    }
    best
}

/// Next subset of `lo..k` of the same size, lexicographic.
fn next_combination_from(comb: &mut [usize], lo: usize, k: usize) -> bool {
    comb.iter_mut().for_each(|x| *x -= lo);
    let more = next_combination(comb, k - lo);
    comb.iter_mut().for_each(|x| *x += lo);
    more
}

/// Brouwer-Zimmermann enumeration; stops when the bounds meet or when the
/// next level would exceed `budget` expanded codewords.
pub fn information_set_distance(c: &LinearCode, budget: u64) -> DistanceReport {
    let k = c.k();
    assert!(k > 0, "zero code has no minimum distance");
    let field = c.field();
    let sets = information_sets(c);
    let units = (field.q() - 1) as u64;
    let mut upper = c.n() - k + 1;
    let mut lower = 1;
    let mut spent = 0u64;
    for w in 1..=k {
        let per_set = binomial(k, w).saturating_mul(units.saturating_pow(w as u32 - 1));
        let cost = per_set.saturating_mul(sets.len() as u64);
        if spent.saturating_add(cost) > budget {
            break;
        }
        spent += cost;
        let level_min = sets
            .par_iter()
            .flat_map(|(g, _)| (0..k).into_par_iter().map(move |first| (g, first)))
            .map(|(g, first)| min_weight_level(field, g, w, first))
            .min()
            .unwrap_or(usize::MAX);
        upper = upper.min(level_min);
        // every message of the first (full) set has now been expanded
        let bound: usize = if w == k {
            upper
        } else {
            sets.iter().map(|(_, r)| (w + 1).saturating_sub(k - r)).sum()
        };
        lower = lower.max(bound);
        if lower >= upper {
            lower = upper;
            break;
        }
    }
    DistanceReport {
        lower,
        upper,
        exact: lower == upper,
        method: DistanceMethod::InformationSet,
        codewords: spent,
    }
}

/// Staged minimum distance: full enumeration within `enum_cap`, then dual
/// enumeration with MacWilliams within `enum_cap`, otherwise information-set
/// enumeration within `is_budget`.
pub fn min_distance(c: &LinearCode, opts: &DistanceOptions) -> Result<DistanceReport> {
    if c.k() == 0 {
        return Err(Error::InvalidParams("minimum distance of the zero code".into()));
    }
    let dual_size = (c.field().q() as u64).checked_pow((c.n() - c.k()) as u32).unwrap_or(u64::MAX);
    let report = if code_size(c) <= opts.enum_cap {
        exhaustive_distance(c)
    } else if dual_size <= opts.enum_cap {
        dual_distance(c, opts.enum_cap)?
    } else {
        information_set_distance(c, opts.is_budget)
    };
    debug_assert!(report.upper <= c.n() - c.k() + 1, "Singleton bound");
    Ok(report)
}
