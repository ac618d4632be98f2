//! Fixture loading shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use constacyclic::{cc_code, cc_code_from_check, cc_params, parse_elem, parse_poly, Field, LinearCode, Result};
use serde::Deserialize;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn load<T: for<'de> Deserialize<'de>>(name: &str) -> T {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[derive(Debug, Deserialize)]
pub struct EquivPair {
    pub q: u32,
    pub n: usize,
    pub a: String,
    pub g1: String,
    pub g2: String,
    pub equivalent: bool,
}

#[derive(Debug, Deserialize)]
pub struct EquivPairs {
    pub pairs: Vec<EquivPair>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PartitionRow {
    pub q: u32,
    pub n: usize,
    pub a: String,
    pub total: u128,
    pub new: usize,
    pub check_new: bool,
}

#[derive(Debug, Deserialize)]
pub struct PartitionRows {
    pub rows: Vec<PartitionRow>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PropertyCode {
    pub group: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub a: String,
    pub kind: String,
    pub poly: String,
    pub claims: Vec<String>,
    pub dual: bool,
}

#[derive(Debug, Deserialize)]
pub struct PropertyCodes {
    pub codes: Vec<PropertyCode>,
}

impl PropertyCode {
    /// The listed code: built from `g` or `h`, then dualized when marked.
    pub fn build(&self) -> Result<LinearCode> {
        let f = Field::new(self.q)?;
        let params = cc_params(self.q, self.n, parse_elem(&self.a, &f)?)?;
        let poly = parse_poly(&self.poly, &f)?;
        let c = if self.kind == "h" {
            cc_code_from_check(&params, &poly)?
        } else {
            cc_code(&params, &poly)?
        };
        Ok(if self.dual { c.dual() } else { c })
    }

    pub fn label(&self) -> String {
        format!("[{},{},{}]_{}", self.n, self.k, self.d, self.q)
    }
}

#[derive(Debug, Deserialize)]
pub struct CxInput {
    pub label: String,
    pub g: String,
}

#[derive(Debug, Deserialize)]
pub struct CxParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

#[derive(Debug, Deserialize)]
pub struct ConstructionXFixture {
    pub q: u32,
    pub n: usize,
    pub a: String,
    pub inputs: Vec<CxInput>,
    pub result: CxParams,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ChainEntry {
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

#[derive(Debug, Deserialize)]
pub struct ChainFixture {
    pub q: u32,
    pub n: usize,
    pub a: String,
    pub g: String,
    pub root: String,
    pub derived: Vec<ChainEntry>,
}

/// Drops brackets, whitespace and a leading `(D)`: the normal form printed
/// back by the notation module.
pub fn normalize(s: &str) -> String {
    let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '[' && *c != ']').collect();
    s.strip_prefix("(D)").unwrap_or(&s).to_string()
}

pub mod sweep {
    use std::collections::{BTreeMap, BTreeSet};

    use num_bigint::BigUint;

    use constacyclic::{
        cc_code, cc_params, compare_multisets, min_distance, partition, weight_distribution_either, CcContext,
        DistanceOptions, Field, MapSearch, PartitionOptions,
    };

    #[derive(Debug, Default)]
    pub struct OracleReport {
        pub instances: usize,
        pub codes: usize,
        pub classes: usize,
        pub equivalent_pairs: usize,
        pub relabelings: usize,
        pub violations: Vec<String>,
    }

    /// Every nontrivial constacyclic code of length `2..=n_max` over each
    /// field in `qs`, for every shift constant. Checks that
    /// - every code is declared equivalent to exactly the representative the
    ///   partition assigns it, and such pairs share a weight distribution;
    /// - representatives realize every (k, d) that the whole family does;
    /// - signatures round-trip through their polynomials;
    /// - class counts do not depend on the choice of root of unity.
    pub fn equivalence_oracle(qs: &[u32], n_max: usize) -> OracleReport {
        let mut rep = OracleReport::default();
        let dist_opts = DistanceOptions {
            enum_cap: 1 << 16,
            ..DistanceOptions::default()
        };
        for &q in qs {
            let f = Field::new(q).unwrap();
            for n in 2..=n_max {
                for a in f.nonzero() {
                    let params = cc_params(q, n, a).unwrap();
                    let ctx = CcContext::new(params.clone());
                    rep.instances += 1;
                    let tag = format!("q={q} n={n} a={}", a.0);
                    let part = partition(&ctx, &PartitionOptions::default()).unwrap();
                    let candidates = MapSearch::Full.candidates(&params);
                    let reps: Vec<_> = part.indices.iter().map(|&i| ctx.from_digits(&ctx.digits_of_index(i))).collect();
                    let mut key_of_rep: Vec<Option<(BTreeMap<usize, BigUint>, usize)>> = vec![None; reps.len()];
                    let mut all_kd = BTreeSet::new();
                    let mut rep_kd = BTreeSet::new();
                    for idx in 1..=part.total {
                        let digits = ctx.digits_of_index(idx);
                        let g = ctx.poly_from_digits(&digits);
                        let ms = ctx.signature(&g).unwrap();
                        if ms != ctx.from_digits(&digits) || ctx.multiset_to_poly(&ms).unwrap() != g {
                            rep.violations.push(format!("{tag}: signature round trip fails at index {idx}"));
                        }
                        let code = cc_code(&params, &g).unwrap();
                        let wd = weight_distribution_either(&code, 1 << 16).unwrap();
                        let d = min_distance(&code, &dist_opts).unwrap();
                        let key = (wd, d.upper);
                        rep.codes += 1;
                        all_kd.insert((code.k(), d.upper));
                        let matches: Vec<usize> = reps
                            .iter()
                            .enumerate()
                            .filter(|(_, r)| compare_multisets(r, &ms, &candidates).equivalent)
                            .map(|(j, _)| j)
                            .collect();
                        if matches.len() != 1 {
                            rep.violations.push(format!("{tag}: index {idx} matches {} representatives", matches.len()));
                            continue;
                        }
                        let j = matches[0];
                        if part.indices[j] == idx {
                            rep_kd.insert((code.k(), d.upper));
                        }
                        rep.equivalent_pairs += 1;
                        match &key_of_rep[j] {
                            None => key_of_rep[j] = Some(key),
                            Some(k0) if *k0 != key => {
                                rep.violations.push(format!("{tag}: index {idx} declared equivalent but weights differ"))
                            }
                            _ => {}
                        }
                    }
                    if all_kd != rep_kd {
                        rep.violations.push(format!("{tag}: representatives miss some (k, d)"));
                    }
                    rep.classes += part.new_count();
                    let (m, r) = (params.modulus, params.r);
                    for u in (2..m).filter(|&u| gcd(u, m) == 1 && u % r == 1 % r).take(3) {
                        let other = partition(&ctx.relabeled(u).unwrap(), &PartitionOptions::default()).unwrap();
                        rep.relabelings += 1;
                        if other.new_count() != part.new_count() {
                            rep.violations.push(format!("{tag}: relabeling by {u} changes the class count"));
                        }
                    }
                }
            }
        }
        rep
    }

    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}

pub mod random_codes {
    use constacyclic::{extend, puncture, shorten, Elem, Field, LinearCode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn random_code(rng: &mut impl Rng, q: u32, n: usize, k: usize) -> LinearCode {
        let f = Field::new(q).unwrap();
        let rows: Vec<Vec<Elem>> = (0..k).map(|_| (0..n).map(|_| Elem(rng.gen_range(0..q) as u8)).collect()).collect();
        LinearCode::from_rows(&f, n, &rows)
    }

    /// Extend-then-puncture identity and shorten/puncture duality on `count`
    /// seeded random codes; returns the failures.
    pub fn construction_identities(seed: u64, count: usize) -> Vec<String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        for i in 0..count {
            let q = [2, 3, 4, 5, 7, 8, 9][rng.gen_range(0..7)];
            let n = rng.gen_range(2..12);
            let k = rng.gen_range(0..=n);
            let c = random_code(&mut rng, q, n, k);
            if puncture(&extend(&c), n).unwrap() != c {
                failures.push(format!("#{i}: puncturing the extension does not recover the code"));
            }
            let pos = rng.gen_range(0..n);
            if shorten(&c, pos).unwrap().dual() != puncture(&c.dual(), pos).unwrap() {
                failures.push(format!("#{i}: dual(shorten) != puncture(dual) at {pos}"));
            }
        }
        failures
    }
}
