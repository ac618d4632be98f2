//! Acceptance suite: one PASS/FAIL line per criterion, with details.
//!
//! Criteria whose published values cannot be reproduced are pinned as
//! expected failures (see README, "Known deviations"); the target exits
//! nonzero when any outcome differs from its pinned expectation, or on any
//! FAIL when `ACCEPTANCE_STRICT=1`. `ACCEPTANCE_STRETCH=1` additionally
//! computes the exact distance of the Construction X output.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use common::random_codes::construction_identities;
use common::sweep::equivalence_oracle;
use common::*;
use constacyclic::{
    cc_code, cc_coset_eq, cc_params, classify, construction_x, construction_x_bound, cyclotomic_cosets, dual_distance,
    exhaustive_distance, parse_elem, parse_poly, partition, recursively_modify, replay_lineage, weight_distribution,
    BklcTable, CcContext, CcParams, Elem, Field, LabelOracle, LinearCode, MapSearch, ModifyOptions, PartitionOptions,
    Poly, StepOp,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

struct Report {
    pass: bool,
    details: Vec<String>,
}

impl Report {
    fn new() -> Report {
        Report {
            pass: true,
            details: Vec::new(),
        }
    }

    /// Records one check; `ok = false` fails the criterion.
    fn check(&mut self, ok: bool, msg: impl Into<String>) {
        self.pass &= ok;
        self.details.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, msg.into()));
    }

    fn info(&mut self, msg: impl Into<String>) {
        self.details.push(format!("     {}", msg.into()));
    }
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    expected: Outcome,
    run: fn() -> Report,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: "AC1",
        title: "equivalence verdicts for the five published pairs",
        expected: Outcome::Fail,
        run: equivalence_verdicts,
    },
    Criterion {
        id: "AC2",
        title: "partition totals and class counts",
        expected: Outcome::Fail,
        run: partition_counts,
    },
    Criterion {
        id: "AC3",
        title: "self-dual codes from check polynomials, exact distance",
        expected: Outcome::Pass,
        run: self_dual_codes,
    },
    Criterion {
        id: "AC4",
        title: "property battery on small listed codes",
        expected: Outcome::Pass,
        run: property_battery,
    },
    Criterion {
        id: "AC5",
        title: "Construction X chain over GF(5)",
        expected: Outcome::Pass,
        run: construction_x_chain,
    },
    Criterion {
        id: "AC6",
        title: "recursive modification from the [93,15,58]_7 code",
        expected: Outcome::Fail,
        run: recursive_modification,
    },
    Criterion {
        id: "AC7",
        title: "property suites: coset test vs weight distributions, round trips, relabeling, derived codes",
        expected: Outcome::Pass,
        run: property_suites,
    },
    Criterion {
        id: "AC8",
        title: "divisor count identity from cyclotomic cosets",
        expected: Outcome::Pass,
        run: count_identity,
    },
];

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let mut unexpected = Vec::new();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let report = (c.run)();
        let outcome = if report.pass { Outcome::Pass } else { Outcome::Fail };
        let note = match (outcome, c.expected) {
            (Outcome::Fail, Outcome::Fail) => " (known deviation)",
            (Outcome::Pass, Outcome::Fail) => " (unexpected pass)",
            (Outcome::Fail, Outcome::Pass) => " (regression)",
            _ => "",
        };
        println!(
            "{} {:<4} {} [{:.1}s]{}",
            c.id,
            if report.pass { "PASS" } else { "FAIL" },
            c.title,
            start.elapsed().as_secs_f64(),
            note
        );
        for d in &report.details {
            println!("       {d}");
        }
        if outcome != c.expected {
            unexpected.push(c.id);
        }
        if outcome == Outcome::Fail {
            failed.push(c.id);
        }
    }
    println!(
        "summary: {} passed, {} failed ({}); unexpected outcomes: {}",
        CRITERIA.len() - failed.len(),
        failed.len(),
        failed.join(", "),
        if unexpected.is_empty() { "none".to_string() } else { unexpected.join(", ") }
    );
    if !unexpected.is_empty() || (strict && !failed.is_empty()) {
        std::process::exit(1);
    }
}

fn params_of(q: u32, n: usize, a: &str) -> (Field, CcParams) {
    let f = Field::new(q).unwrap();
    let a = parse_elem(a, &f).unwrap();
    (f.clone(), cc_params(q, n, a).unwrap())
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

/// `c(lambda x^e) mod (x^n - a)`.
fn substitute(c: &Poly, p: &CcParams, lambda: Elem, e: usize) -> Poly {
    let f = &p.field;
    let n = p.n;
    let mut out = vec![Elem::ZERO; n];
    for (i, &ci) in c.coeffs().iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let ei = e * i;
        let coeff = f.mul(ci, f.mul(f.pow(lambda, i as u64), f.pow(p.a, (ei / n) as u64)));
        out[ei % n] = f.add(out[ei % n], coeff);
    }
    Poly::new(f, out)
}

/// Independent equivalence certificate: a ring automorphism
/// `x -> lambda x^e` of F[x]/(x^n - a) (a monomial map on coordinates) that
/// carries `g1` into `<g2>`; with equal dimensions it maps `<g1>` onto `<g2>`.
fn monomial_certificate(p: &CcParams, g1: &Poly, g2: &Poly) -> Option<(usize, Elem)> {
    let f = &p.field;
    let n = p.n;
    (1..n).filter(|&e| gcd(e, n) == 1).find_map(|e| {
        f.nonzero()
            .filter(|&l| f.mul(f.pow(l, n as u64), f.pow(p.a, e as u64)) == p.a)
            .find(|&l| g2.divides(&substitute(g1, p, l, e)))
            .map(|l| (e, l))
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn equivalence_verdicts() -> Report {
    let mut r = Report::new();
    let pairs: EquivPairs = load("equivalence_pairs.json");
    for pair in &pairs.pairs {
        let (f, p) = params_of(pair.q, pair.n, &pair.a);
        let g1 = parse_poly(&pair.g1, &f).unwrap();
        let g2 = parse_poly(&pair.g2, &f).unwrap();
        let start = Instant::now();
        let ctx = CcContext::new(p.clone());
        let v = cc_coset_eq(&ctx, &g1, &g2, MapSearch::Full).unwrap();
        let elapsed = start.elapsed();
        let bounded = cc_coset_eq(&ctx, &g1, &g2, MapSearch::Bounded).unwrap();
        let tag = format!("q={} n={} a={}", pair.q, pair.n, pair.a);
        r.check(elapsed < Duration::from_secs(5), format!("{tag}: decided in {} (< 5s)", secs(elapsed)));
        let witness = v.witness.map_or(String::new(), |w| format!(" witness (e,b)=({},{})", w.e, w.b));
        r.check(
            v.equivalent == pair.equivalent,
            format!(
                "{tag}: published {}, computed {} at stage {:?}{witness}; bounded search: {}",
                pair.equivalent, v.equivalent, v.stage, bounded.equivalent
            ),
        );
        // evidence that does not use cyclotomic cosets
        let c1 = cc_code(&p, &g1).unwrap();
        let c2 = cc_code(&p, &g2).unwrap();
        if let Some((e, l)) = monomial_certificate(&p, &g1, &g2) {
            r.info(format!(
                "{tag}: independent check: x -> {}*x^{e} maps one code onto the other, so they are equivalent",
                l.0
            ));
        } else if code_size_dual(&c1) <= 1 << 20 {
            let w1 = weight_distribution(&c1.dual(), 1 << 20).unwrap();
            let w2 = weight_distribution(&c2.dual(), 1 << 20).unwrap();
            if w1 != w2 {
                r.info(format!(
                    "{tag}: independent check: dual weight distributions differ, so the codes are not equivalent"
                ));
            } else {
                r.info(format!("{tag}: independent check: dual weight distributions agree; no monomial certificate"));
            }
        }
    }
    r
}

fn code_size_dual(c: &LinearCode) -> u64 {
    (c.field().q() as u64).saturating_pow((c.n() - c.k()) as u32)
}

fn partition_counts() -> Report {
    let mut r = Report::new();
    let rows: PartitionRows = load("partition_counts.json");
    for row in &rows.rows {
        let (_, p) = params_of(row.q, row.n, &row.a);
        let ctx = CcContext::new(p);
        let tag = format!("q={} n={} a={}", row.q, row.n, row.a);
        let total = ctx.divisor_count() - 2;
        r.check(total == row.total, format!("{tag}: total {total} (published {})", row.total));
        if !row.check_new {
            continue;
        }
        let start = Instant::now();
        let full = partition(&ctx, &PartitionOptions::default()).unwrap();
        let elapsed = start.elapsed();
        r.check(full.total == row.total, format!("{tag}: partition enumerated {} divisors", full.total));
        r.check(elapsed < Duration::from_secs(600), format!("{tag}: partition in {} (< 600s)", secs(elapsed)));
        let bounded = partition(
            &ctx,
            &PartitionOptions {
                search: MapSearch::Bounded,
                ..PartitionOptions::default()
            },
        )
        .unwrap();
        let dev = (full.new_count() as f64 - row.new as f64).abs() / row.new as f64 * 100.0;
        r.check(
            full.new_count() == row.new,
            format!(
                "{tag}: new {} (published {}, deviation {dev:.1}%); bounded search: {}",
                full.new_count(),
                row.new,
                bounded.new_count()
            ),
        );
    }
    r
}

fn listed(label: &str) -> PropertyCode {
    let codes: PropertyCodes = load("property_codes.json");
    codes.codes.into_iter().find(|c| c.label() == label).unwrap_or_else(|| panic!("{label} not in fixture"))
}

/// Parameters by full enumeration and every claimed property flag.
fn verify_listed(r: &mut Report, c: &PropertyCode) {
    let code = c.build().unwrap();
    let d = exhaustive_distance(&code);
    r.check(
        (code.n(), code.k(), d.upper) == (c.n, c.k, c.d),
        format!("{} (a={}): computed [{},{},{}] from {} codewords", c.label(), c.a, code.n(), code.k(), d.upper, d.codewords),
    );
    let props = classify(&code, 1 << 24);
    for claim in &c.claims {
        let ok = match claim.as_str() {
            "selfOrthogonal" => props.self_orthogonal,
            "dualContaining" => props.dual_containing,
            "lcd" => props.lcd,
            "selfDual" => props.self_dual,
            "reversible" => props.reversible,
            "twoWeight" => props.two_weight == Some(true),
            other => panic!("unknown claim {other}"),
        };
        let extra = if claim == "twoWeight" {
            format!(" weights {:?}", props.weight_values.clone().unwrap_or_default())
        } else {
            String::new()
        };
        r.check(ok, format!("{}: {claim}{extra}", c.label()));
    }
}

fn self_dual_codes() -> Report {
    let mut r = Report::new();
    let start = Instant::now();
    for label in ["[8,4,5]_7", "[28,14,9]_3"] {
        verify_listed(&mut r, &listed(label));
    }
    let elapsed = start.elapsed();
    r.check(elapsed < Duration::from_secs(60), format!("combined time {} (< 60s)", secs(elapsed)));
    r
}

fn property_battery() -> Report {
    let mut r = Report::new();
    let start = Instant::now();
    for label in ["[7,3,4]_4", "[10,4,4]_2", "[12,4,6]_3", "[17,4,12]_4", "[26,4,20]_5", "[7,3,5]_7"] {
        let c = listed(label);
        if c.dual {
            r.info(format!("{label}: listed polynomial marked (D); the listed code is the dual of its ideal"));
        }
        verify_listed(&mut r, &c);
    }
    let elapsed = start.elapsed();
    r.check(elapsed < Duration::from_secs(10), format!("total time {} (< 10s)", secs(elapsed)));
    r
}

fn construction_x_chain() -> Report {
    let mut r = Report::new();
    let fx: ConstructionXFixture = load("construction_x.json");
    let (f, p) = params_of(fx.q, fx.n, &fx.a);
    let mut codes: Vec<(String, String, LinearCode)> = fx
        .inputs
        .iter()
        .map(|i| (i.label.clone(), i.g.clone(), cc_code(&p, &parse_poly(&i.g, &f).unwrap()).unwrap()))
        .collect();
    for (label, g, c) in &codes {
        r.info(format!("g={g} (listed as {label}) generates a [{},{}] code", c.n(), c.k()));
    }
    // roles by dimension: the larger code is the parent
    codes.sort_by_key(|(_, _, c)| std::cmp::Reverse(c.k()));
    let (parent, sub) = (&codes[0].2, &codes[1].2);
    r.check(
        (parent.k(), sub.k()) == (fx.result.k, fx.result.k - 1),
        format!("parent dimension {}, subcode dimension {}", parent.k(), sub.k()),
    );
    r.check(parent.contains_code(sub), "subcode contained in parent");
    let aux = LinearCode::repetition(&f, 2);
    let x = construction_x(parent, sub, &aux).unwrap();
    r.check(
        (x.n(), x.k()) == (fx.result.n, fx.result.k),
        format!("output is [{},{}]", x.n(), x.k()),
    );
    let start = Instant::now();
    let d_par = dual_distance(parent, 1 << 32).unwrap().upper;
    let d_sub = dual_distance(sub, 1 << 32).unwrap().upper;
    r.info(format!(
        "exact distances by dual enumeration and MacWilliams: parent {d_par}, subcode {d_sub} ({})",
        secs(start.elapsed())
    ));
    let bound = construction_x_bound(d_par, d_sub, 2);
    r.check(
        bound == fx.result.d,
        format!("lower bound min(d_sub, d_parent + 2) = min({d_sub}, {}) = {bound}", d_par + 2),
    );
    if std::env::var("ACCEPTANCE_STRETCH").is_ok_and(|v| v == "1") {
        let start = Instant::now();
        let d = dual_distance(&x, 1 << 36).unwrap().upper;
        r.check(d == fx.result.d, format!("exact distance of the output {d} ({})", secs(start.elapsed())));
    } else {
        r.info("exact distance of the output not computed (set ACCEPTANCE_STRETCH=1)");
    }
    r
}

fn recursive_modification() -> Report {
    let mut r = Report::new();
    let fx: ChainFixture = load("recursive_chain.json");
    let (f, p) = params_of(fx.q, fx.n, &fx.a);
    let root = cc_code(&p, &parse_poly(&fx.g, &f).unwrap()).unwrap();
    let root_entry = &fx.derived[0];
    r.check(
        (root.n(), root.k()) == (root_entry.n, root_entry.k),
        format!("{} is [{},{}]", fx.root, root.n(), root.k()),
    );
    let oracle = LabelOracle::new(fx.derived.iter().map(|e| (e.name.clone(), e.d)));
    let by_name: BTreeMap<&str, &ChainEntry> = fx.derived.iter().map(|e| (e.name.as_str(), e)).collect();

    // every listed name replays to its listed (n, k), step by step
    let mut replay_ok = 0;
    for e in &fx.derived[1..] {
        let d = replay_lineage(&root, &fx.root, &e.name, &oracle).unwrap();
        let mut ok = (d.code.n(), d.code.k()) == (e.n, e.k);
        for (i, step) in d.steps.iter().enumerate() {
            let prefix = &e.name[..fx.root.len() + i + 1];
            ok &= Some(step.op) == StepOp::from_suffix(prefix.chars().last().unwrap());
            if let Some(listed) = by_name.get(prefix) {
                ok &= (step.n, step.k) == (listed.n, listed.k);
            }
        }
        if ok {
            replay_ok += 1;
        } else {
            r.check(false, format!("{} replays to [{},{}]", e.name, d.code.n(), d.code.k()));
        }
    }
    r.check(
        replay_ok == fx.derived.len() - 1,
        format!("{replay_ok}/{} listed names replay to their listed (n, k) along their e/p/s lineage", fx.derived.len() - 1),
    );

    // the search itself, against the snapshot table
    let table = BklcTable::load(fixture_path("bklc_q7_chain.csv")).unwrap();
    let start = Instant::now();
    let out = recursively_modify(&root, &fx.root, &table, &oracle, ModifyOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let found: BTreeSet<(String, usize, usize)> = out.iter().map(|d| (d.name.clone(), d.code.n(), d.code.k())).collect();
    let listed: BTreeSet<(String, usize, usize)> = fx.derived[1..].iter().map(|e| (e.name.clone(), e.n, e.k)).collect();
    let first = |a: &BTreeSet<(String, usize, usize)>, b: &BTreeSet<(String, usize, usize)>| {
        a.difference(b).map(|(s, n, k)| format!("{s}[{n},{k}]")).collect::<Vec<_>>().join(" ")
    };
    r.info(format!("search reported {} codes in {}", out.len(), secs(elapsed)));
    let mut keys = BTreeSet::new();
    r.check(
        out.iter().all(|d| keys.insert((d.code.n(), d.code.k()))),
        "no two reported codes share (n, k)",
    );
    r.check(
        out.iter().all(|d| d.d.unwrap() > table.lookup(fx.q, d.code.n(), d.code.k()).unwrap()),
        "every reported code beats the table",
    );
    r.check(
        found == listed,
        format!(
            "search output equals the listed derivations (missing: {}; extra: {})",
            or_none(first(&listed, &found)),
            or_none(first(&found, &listed))
        ),
    );
    r
}

fn or_none(s: String) -> String {
    if s.is_empty() {
        "none".into()
    } else {
        s
    }
}

fn property_suites() -> Report {
    let mut r = Report::new();
    let start = Instant::now();
    let rep = equivalence_oracle(&[2, 3, 5], 12);
    r.info(format!(
        "{} (q, n, a) instances, {} codes, {} classes, {} relabelings checked",
        rep.instances, rep.codes, rep.classes, rep.relabelings
    ));
    for v in rep.violations.iter().take(10) {
        r.check(false, v.clone());
    }
    r.check(
        rep.violations.is_empty(),
        "declared equivalence implies equal weight distributions; representatives cover every (k, d); \
         signatures round-trip; class counts invariant under relabeling",
    );
    let failures = construction_identities(0x5eed, 500);
    r.check(
        failures.is_empty(),
        format!("extend/puncture identity and shorten/puncture duality on 500 seeded codes ({} failures)", failures.len()),
    );
    let elapsed = start.elapsed();
    r.check(elapsed < Duration::from_secs(900), format!("suite time {} (< 900s)", secs(elapsed)));
    r
}

fn count_identity() -> Report {
    let mut r = Report::new();
    let rows: PartitionRows = load("partition_counts.json");
    let start = Instant::now();
    let mut ok = 0;
    for row in &rows.rows {
        let (_, p) = params_of(row.q, row.n, &row.a);
        let cosets = cyclotomic_cosets(&p).len() as u32;
        let total = (p.pt as u128 + 1).pow(cosets) - 2;
        if total == row.total {
            ok += 1;
        } else {
            r.check(false, format!("q={} n={} a={}: ({}+1)^{cosets} - 2 = {total}, published {}", row.q, row.n, row.a, p.pt, row.total));
        }
    }
    r.check(ok == rows.rows.len(), format!("{ok}/{} rows match", rows.rows.len()));
    r.info(format!("in {}", secs(start.elapsed())));
    r
}
