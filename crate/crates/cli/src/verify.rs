//! `verify-tables`: the fixture tables compiled into the binary, checked row
//! by row.

use serde::Deserialize;

use constacyclic::{
    cc_code, cc_code_from_check, cc_coset_eq, cc_params, classify, construction_x, cyclotomic_cosets, dual_distance,
    exhaustive_distance, parse_elem, parse_poly, partition, replay_lineage, CcContext, CcParams, Field, LabelOracle,
    LinearCode, MapSearch, PartitionOptions,
};

use crate::commands::VerifyArgs;

const EQUIVALENCE: &str = include_str!("../../../fixtures/equivalence_pairs.json");
const PARTITION: &str = include_str!("../../../fixtures/partition_counts.json");
const PROPERTIES: &str = include_str!("../../../fixtures/property_codes.json");
const CONSTRUCTION_X: &str = include_str!("../../../fixtures/construction_x.json");
const CHAIN: &str = include_str!("../../../fixtures/recursive_chain.json");

#[derive(Deserialize)]
struct Pair {
    q: u32,
    n: usize,
    a: String,
    g1: String,
    g2: String,
    equivalent: bool,
}

#[derive(Deserialize)]
struct Pairs {
    pairs: Vec<Pair>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct PartitionRow {
    q: u32,
    n: usize,
    a: String,
    total: u128,
    new: usize,
    check_new: bool,
}

#[derive(Deserialize)]
struct PartitionRows {
    rows: Vec<PartitionRow>,
}

#[derive(Deserialize)]
struct Listed {
    group: String,
    q: u32,
    n: usize,
    k: usize,
    d: usize,
    a: String,
    kind: String,
    poly: String,
    claims: Vec<String>,
    dual: bool,
}

#[derive(Deserialize)]
struct ListedCodes {
    codes: Vec<Listed>,
}

#[derive(Deserialize)]
struct CxInput {
    g: String,
}

#[derive(Deserialize)]
struct CxResult {
    n: usize,
    k: usize,
    d: usize,
}

#[derive(Deserialize)]
struct CxFixture {
    q: u32,
    n: usize,
    a: String,
    inputs: Vec<CxInput>,
    result: CxResult,
}

#[derive(Deserialize)]
struct ChainEntry {
    name: String,
    n: usize,
    k: usize,
    d: usize,
}

#[derive(Deserialize)]
struct ChainFixture {
    q: u32,
    n: usize,
    a: String,
    g: String,
    root: String,
    derived: Vec<ChainEntry>,
}

struct Matrix {
    rows: Vec<(String, String, Status, String)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Skip,
}

impl Matrix {
    fn push(&mut self, table: &str, item: String, status: Status, detail: String) {
        self.rows.push((table.to_string(), item, status, detail));
    }

    fn check(&mut self, table: &str, item: String, ok: bool, detail: String) {
        self.push(table, item, if ok { Status::Pass } else { Status::Fail }, detail);
    }
}

fn params(q: u32, n: usize, a: &str) -> constacyclic::Result<(Field, CcParams)> {
    let f = Field::new(q)?;
    let a = parse_elem(a, &f)?;
    Ok((f.clone(), cc_params(q, n, a)?))
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> T {
    serde_json::from_str(text).expect("embedded fixture is valid")
}

pub fn run(args: &VerifyArgs) -> Result<u8, crate::commands::CliError> {
    let mut m = Matrix { rows: Vec::new() };
    equivalence(&mut m)?;
    partitions(&mut m, args.partition)?;
    listed_codes(&mut m, args.cap)?;
    construction(&mut m, args.cap)?;
    chain(&mut m)?;
    let fails = m.rows.iter().filter(|r| r.2 == Status::Fail).count();
    let mut out = String::new();
    for (table, item, status, detail) in &m.rows {
        let s = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        out.push_str(&format!("{table:<28} {item:<34} {s}  {detail}\n"));
    }
    out.push_str(&format!(
        "{} checks: {} passed, {fails} failed, {} skipped\n",
        m.rows.len(),
        m.rows.iter().filter(|r| r.2 == Status::Pass).count(),
        m.rows.iter().filter(|r| r.2 == Status::Skip).count()
    ));
    print!("{out}");
    Ok(if fails == 0 { 0 } else { 1 })
}

fn equivalence(m: &mut Matrix) -> constacyclic::Result<()> {
    let pairs: Pairs = parse(EQUIVALENCE);
    for p in pairs.pairs {
        let (f, cp) = params(p.q, p.n, &p.a)?;
        let ctx = CcContext::new(cp);
        let v = cc_coset_eq(&ctx, &parse_poly(&p.g1, &f)?, &parse_poly(&p.g2, &f)?, MapSearch::Full)?;
        let w = v.witness.map_or(String::new(), |w| format!(" witness ({},{})", w.e, w.b));
        m.check(
            "equivalence",
            format!("q={} n={} a={}", p.q, p.n, p.a),
            v.equivalent == p.equivalent,
            format!("listed {}, computed {}{w}", p.equivalent, v.equivalent),
        );
    }
    Ok(())
}

fn partitions(m: &mut Matrix, run_partition: bool) -> constacyclic::Result<()> {
    let rows: PartitionRows = parse(PARTITION);
    for r in rows.rows {
        let (_, cp) = params(r.q, r.n, &r.a)?;
        let total = (cp.pt as u128 + 1).pow(cyclotomic_cosets(&cp).len() as u32) - 2;
        let item = format!("q={} n={} a={}", r.q, r.n, r.a);
        m.check("partition total", item.clone(), total == r.total, format!("{total} (listed {})", r.total));
        if r.check_new {
            if run_partition {
                let res = partition(&CcContext::new(cp), &PartitionOptions::default())?;
                m.check("partition classes", item, res.new_count() == r.new, format!("{} (listed {})", res.new_count(), r.new));
            } else {
                m.push("partition classes", item, Status::Skip, "pass --partition to compute".into());
            }
        }
    }
    Ok(())
}

fn build(c: &Listed) -> constacyclic::Result<LinearCode> {
    let (f, cp) = params(c.q, c.n, &c.a)?;
    let poly = parse_poly(&c.poly, &f)?;
    let code = if c.kind == "h" {
        cc_code_from_check(&cp, &poly)?
    } else {
        cc_code(&cp, &poly)?
    };
    Ok(if c.dual { code.dual() } else { code })
}

fn listed_codes(m: &mut Matrix, cap: u64) -> constacyclic::Result<()> {
    let codes: ListedCodes = parse(PROPERTIES);
    for c in codes.codes {
        let item = format!("[{},{},{}]_{} a={}", c.n, c.k, c.d, c.q, c.a);
        let code = match build(&c) {
            Ok(code) => code,
            Err(e) => {
                m.check(&c.group, item, false, e.to_string());
                continue;
            }
        };
        let props = classify(&code, cap);
        let mut bad: Vec<&str> = Vec::new();
        for claim in &c.claims {
            let ok = match claim.as_str() {
                "selfOrthogonal" => props.self_orthogonal,
                "dualContaining" => props.dual_containing,
                "lcd" => props.lcd,
                "selfDual" => props.self_dual,
                "reversible" => props.reversible,
                "twoWeight" => props.two_weight != Some(false),
                _ => false,
            };
            if !ok {
                bad.push(claim);
            }
        }
        let q = c.q as u64;
        let small = q.checked_pow(code.k() as u32).is_some_and(|s| s <= cap);
        let small_dual = q.checked_pow((code.n() - code.k()) as u32).is_some_and(|s| s <= cap);
        let d = if small {
            Some(exhaustive_distance(&code).upper)
        } else if small_dual {
            Some(dual_distance(&code, cap)?.upper)
        } else {
            None
        };
        let ok = code.k() == c.k && bad.is_empty() && d.is_none_or(|d| d == c.d);
        let detail = format!(
            "k={}{}{}",
            code.k(),
            d.map_or(" d not computed".to_string(), |d| format!(" d={d}")),
            if bad.is_empty() { String::new() } else { format!(" failing: {}", bad.join(",")) }
        );
        m.check(&c.group, item, ok, detail);
    }
    Ok(())
}

fn construction(m: &mut Matrix, cap: u64) -> constacyclic::Result<()> {
    let fx: CxFixture = parse(CONSTRUCTION_X);
    let (f, cp) = params(fx.q, fx.n, &fx.a)?;
    let mut codes = fx
        .inputs
        .iter()
        .map(|i| cc_code(&cp, &parse_poly(&i.g, &f)?))
        .collect::<constacyclic::Result<Vec<_>>>()?;
    codes.sort_by_key(|c| std::cmp::Reverse(c.k()));
    let (parent, sub) = (&codes[0], &codes[1]);
    m.check("construction X", "containment".into(), parent.contains_code(sub), format!("[{},{}] in [{},{}]", sub.n(), sub.k(), parent.n(), parent.k()));
    let x = construction_x(parent, sub, &LinearCode::repetition(&f, 2))?;
    m.check(
        "construction X",
        "output parameters".into(),
        (x.n(), x.k()) == (fx.result.n, fx.result.k),
        format!("[{},{}]", x.n(), x.k()),
    );
    let dual_size = (fx.q as u64).checked_pow((fx.n - sub.k()) as u32).unwrap_or(u64::MAX);
    if dual_size <= cap {
        let dp = dual_distance(parent, cap)?.upper;
        let ds = dual_distance(sub, cap)?.upper;
        let bound = ds.min(dp + 2);
        m.check("construction X", "distance bound".into(), bound == fx.result.d, format!("min({ds}, {dp} + 2) = {bound}"));
    } else {
        m.push("construction X", "distance bound".into(), Status::Skip, format!("needs --cap {dual_size}"));
    }
    Ok(())
}

fn chain(m: &mut Matrix) -> constacyclic::Result<()> {
    let fx: ChainFixture = parse(CHAIN);
    let (f, cp) = params(fx.q, fx.n, &fx.a)?;
    let root = cc_code(&cp, &parse_poly(&fx.g, &f)?)?;
    let oracle = LabelOracle::new(fx.derived.iter().map(|e| (e.name.clone(), e.d)));
    for e in &fx.derived {
        let d = replay_lineage(&root, &fx.root, &e.name, &oracle)?;
        m.check(
            "derivation chain",
            e.name.clone(),
            (d.code.n(), d.code.k()) == (e.n, e.k),
            format!("[{},{}] (listed [{},{},{}])", d.code.n(), d.code.k(), e.n, e.k, e.d),
        );
    }
    Ok(())
}
