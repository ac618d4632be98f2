//! Coset-based equivalence test for constacyclic codes and the partition of
//! all codes of a given length and shift constant into detected classes.
//!
//! Two divisors `g1`, `g2` of `x^n - a` are declared equivalent when an
//! affine exponent map `z -> e z + b (mod M)` carries the root multiset of
//! `g1` onto that of `g2`. This is a sufficient condition only: a `false`
//! verdict does not prove the codes inequivalent.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::gcd;
use crate::cosets::{CcContext, CcParams, CosetMultiset, LinearMapWitness};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Which affine maps `z -> e z + b` the search tries, in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MapSearch {
    /// Every unit `e` mod `M` and every `b` mod `M` with `e + b = 1 (mod r)`:
    /// all affine bijections of the exponent set.
    #[default]
    Full,
    /// `e` and `b` in `0..n'` with `gcd(e, n) = 1`. Not closed under
    /// composition, so detection depends on enumeration order.
    Bounded,
}

impl MapSearch {
    /// Candidate maps in search order (`e` ascending, then `b` ascending).
    pub fn candidates(self, params: &CcParams) -> Vec<LinearMapWitness> {
        let (m, r, np, n) = (params.modulus, params.r, params.nprime, params.n as u64);
        match self {
            MapSearch::Full => (1..m.max(2))
                .filter(|&e| gcd(e as u64, m as u64) == 1)
                .flat_map(|e| {
                    (0..m)
                        .filter(move |&b| (e + b) % r == 1 % r)
                        .map(move |b| LinearMapWitness { e, b })
                })
                .collect(),
            MapSearch::Bounded => (0..np)
                .filter(|&e| gcd(e as u64, n) == 1)
                .flat_map(|e| (0..np).map(move |b| LinearMapWitness { e, b }))
                .collect(),
        }
    }
}

/// Histogram of multiplicities: `multiplicity -> number of exponents`.
/// Invariant under every bijection of the exponent set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Distribution(pub BTreeMap<u8, u32>);

pub fn distribution(ms: &CosetMultiset) -> Distribution {
    let mut h = BTreeMap::new();
    for (_, k) in ms.support() {
        *h.entry(k).or_insert(0) += 1;
    }
    Distribution(h)
}

fn map_matches(ms1: &CosetMultiset, ms2: &CosetMultiset, w: LinearMapWitness) -> bool {
    let m = ms1.modulus() as u64;
    ms1.support()
        .all(|(z, k)| ms2.get(((w.e as u64 * z as u64 + w.b as u64) % m) as u32) == k)
}

/// First map in `candidates` that carries `ms1` onto `ms2`.
///
/// Callers are expected to have compared totals and distributions; given
/// those, matching on the support of `ms1` is sufficient.
pub fn exists_linear_map(
    ms1: &CosetMultiset,
    ms2: &CosetMultiset,
    candidates: &[LinearMapWitness],
) -> Option<LinearMapWitness> {
    if ms1.modulus() != ms2.modulus() || ms1.total() != ms2.total() {
        return None;
    }
    let Some((z0, k0)) = ms1.support().next() else {
        return ms2.is_empty().then_some(LinearMapWitness::IDENTITY);
    };
    let m = ms1.modulus() as u64;
    candidates.iter().copied().find(|w| {
        // anchor: the image of the lowest exponent must carry its multiplicity
        ms2.get(((w.e as u64 * z0 as u64 + w.b as u64) % m) as u32) == k0 && map_matches(ms1, ms2, *w)
    })
}

/// The stage of the three-stage test that produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    DegreeSum,
    Distribution,
    MapSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub witness: Option<LinearMapWitness>,
    pub stage: Stage,
}

/// Sum, then distribution, then map search.
pub fn compare_multisets(
    ms1: &CosetMultiset,
    ms2: &CosetMultiset,
    candidates: &[LinearMapWitness],
) -> EquivVerdict {
    let negative = |stage| EquivVerdict {
        equivalent: false,
        witness: None,
        stage,
    };
    if ms1.total() != ms2.total() {
        return negative(Stage::DegreeSum);
    }
    if distribution(ms1) != distribution(ms2) {
        return negative(Stage::Distribution);
    }
    let witness = exists_linear_map(ms1, ms2, candidates);
    if let Some(w) = witness {
        debug_assert_eq!(&ms1.apply(w), ms2);
    }
    EquivVerdict {
        equivalent: witness.is_some(),
        witness,
        stage: Stage::MapSearch,
    }
}

/// Decides whether `<g1>` and `<g2>` are detected as equivalent.
pub fn cc_coset_eq(ctx: &CcContext, g1: &Poly, g2: &Poly, search: MapSearch) -> Result<EquivVerdict> {
    let ms1 = ctx.signature(g1)?;
    let ms2 = ctx.signature(g2)?;
    Ok(compare_multisets(&ms1, &ms2, &search.candidates(ctx.params())))
}

#[derive(Clone, Debug)]
pub struct PartitionOptions {
    pub search: MapSearch,
    /// Refuse instances with more nontrivial divisors than this.
    pub max_total: u128,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions {
            search: MapSearch::default(),
            max_total: 1 << 25,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PartitionResult {
    /// Number of nontrivial divisors, `(p^t + 1)^{#cosets} - 2`.
    pub total: u128,
    /// Enumeration indices of the kept representatives.
    pub indices: Vec<u128>,
    /// Monic generator of each representative.
    pub generators: Vec<Poly>,
}

impl PartitionResult {
    pub fn new_count(&self) -> usize {
        self.generators.len()
    }
}

/// Nontrivial divisor count `(p^t + 1)^{#cosets} - 2`.
pub fn total_nontrivial(ctx: &CcContext) -> u128 {
    ctx.divisor_count() - 2
}

/// Enumerates divisors by index `1..=total` (digits in base `p^t + 1`, one
/// per coset) and keeps each one that no earlier representative maps onto.
///
/// Equivalent to testing every candidate against every kept representative:
/// when a representative is admitted, the images of its multiset under all
/// candidate maps are marked, so a later candidate is rejected exactly when
/// some representative's map search would succeed on it. The marking of one
/// representative runs in parallel; admission order is sequential.
pub fn partition(ctx: &CcContext, opts: &PartitionOptions) -> Result<PartitionResult> {
    let total = total_nontrivial(ctx);
    if total > opts.max_total {
        return Err(Error::CapExceeded {
            required: total,
            cap: opts.max_total,
        });
    }
    let candidates = opts.search.candidates(ctx.params());
    let mut marked = vec![false; (total + 2) as usize];
    let mut indices = Vec::new();
    for i in 1..=total {
        if marked[i as usize] {
            continue;
        }
        indices.push(i);
        let ms = ctx.from_digits(&ctx.digits_of_index(i));
        let images: Vec<u128> = candidates
            .par_iter()
            .filter_map(|&w| ctx.digits(&ms.apply(w)).map(|d| ctx.index_of(&d)))
            .collect();
        for j in images {
            marked[j as usize] = true;
        }
    }
    let generators = indices
        .par_iter()
        .map(|&i| ctx.poly_from_digits(&ctx.digits_of_index(i)))
        .collect();
    Ok(PartitionResult {
        total,
        indices,
        generators,
    })
}
