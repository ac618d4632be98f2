use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use constacyclic::{
    cc_code, cc_coset_eq, cc_params, classify, construction_x, construction_x_bound, generator_from_check,
    min_distance, parse_elem, parse_poly, partition, print_elem, print_poly, recursively_modify,
    BklcTable, CcContext, CcParams, ComputedDistance, DistanceOptions, DistanceOracle, DistanceReport, Error, Field,
    LabelOracle, LinearCode, MapSearch, ModifyOptions, PartitionOptions, Poly, PropertySet, StepOp,
};
use constacyclic::notation::parse_coeffs;
use serde::Serialize;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Input(String),
    Cap(String),
    Output(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Input(m) | CliError::Cap(m) | CliError::Output(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            Error::Bklc { .. } => CliError::Input(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "ccw", version, about = "Constacyclic code workbench")]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Test two divisors of x^n - a for detected equivalence.
    Equiv(EquivArgs),
    /// Partition all divisors of x^n - a into detected equivalence classes.
    Partition(PartitionArgs),
    /// Parameters and property flags of a constacyclic code.
    Props(PropsArgs),
    /// Minimum distance report of a constacyclic code.
    Mindist(MindistArgs),
    /// Construction X from a parent code, a subcode and an auxiliary code.
    Cx(CxArgs),
    /// Recursive extend/puncture/shorten search against a BKLC table.
    Modify(ModifyArgs),
    /// Run the embedded fixture tables and print a pass/fail matrix.
    VerifyTables(VerifyArgs),
}

#[derive(Debug, Args)]
struct Ring {
    /// Field size: 2, 3, 4, 5, 7, 8 or 9.
    #[arg(long)]
    q: u32,
    /// Code length.
    #[arg(long)]
    n: usize,
    /// Shift constant, in the element grammar (digit, `A` or `A^k`).
    #[arg(long, allow_hyphen_values = true)]
    a: String,
}

impl Ring {
    fn params(&self) -> CliResult<(Field, CcParams)> {
        let f = Field::new(self.q)?;
        let a = parse_elem(&self.a, &f)?;
        Ok((f.clone(), cc_params(self.q, self.n, a)?))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, Default)]
enum SearchArg {
    #[default]
    Full,
    Bounded,
}

impl From<SearchArg> for MapSearch {
    fn from(s: SearchArg) -> MapSearch {
        match s {
            SearchArg::Full => MapSearch::Full,
            SearchArg::Bounded => MapSearch::Bounded,
        }
    }
}

#[derive(Debug, Args)]
struct EquivArgs {
    #[command(flatten)]
    ring: Ring,
    /// First generator polynomial, highest degree first.
    #[arg(long)]
    g1: String,
    /// Second generator polynomial.
    #[arg(long)]
    g2: String,
    /// Affine maps to try.
    #[arg(long, value_enum, default_value_t)]
    search: SearchArg,
    /// Print the verdict as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    #[command(flatten)]
    ring: Ring,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse instances with more nontrivial divisors than this.
    #[arg(long, default_value_t = 1 << 25)]
    max_total: u128,
    #[arg(long, value_enum, default_value_t)]
    search: SearchArg,
}

/// A code given by its generator or check polynomial. A leading `(D)` on
/// either selects the dual of the ideal.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct PolyChoice {
    /// Generator polynomial.
    #[arg(long)]
    g: Option<String>,
    /// Check polynomial.
    #[arg(long)]
    h: Option<String>,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    /// Largest code (q^k) enumerated in full; also bounds dual enumeration.
    #[arg(long, default_value_t = 1 << 26)]
    cap: u64,
    /// Codeword budget for information-set enumeration.
    #[arg(long, default_value_t = 1 << 30)]
    budget: u64,
}

impl DistanceArgs {
    fn options(&self) -> DistanceOptions {
        DistanceOptions {
            enum_cap: self.cap,
            is_budget: self.budget,
        }
    }
}

#[derive(Debug, Args)]
struct PropsArgs {
    #[command(flatten)]
    ring: Ring,
    #[command(flatten)]
    poly: PolyChoice,
    #[command(flatten)]
    distance: DistanceArgs,
}

#[derive(Debug, Args)]
struct MindistArgs {
    #[command(flatten)]
    ring: Ring,
    #[command(flatten)]
    poly: PolyChoice,
    #[command(flatten)]
    distance: DistanceArgs,
}

#[derive(Debug, Args)]
struct CxArgs {
    #[command(flatten)]
    ring: Ring,
    /// Generator polynomial of the parent code.
    #[arg(long)]
    parent: String,
    /// Generator polynomial of the subcode.
    #[arg(long)]
    sub: String,
    /// Generator matrix of the auxiliary code: rows in the element grammar,
    /// separated by `;` (e.g. `11` for the length-2 repetition code).
    #[arg(long)]
    aux: String,
    #[command(flatten)]
    distance: DistanceArgs,
}

#[derive(Debug, Args)]
struct ModifyArgs {
    #[command(flatten)]
    ring: Ring,
    #[command(flatten)]
    poly: PolyChoice,
    /// BKLC snapshot, CSV with header q,n,k,d.
    #[arg(long)]
    bklc: PathBuf,
    #[arg(long, default_value_t = 16)]
    max_depth: usize,
    /// Reserved; every shortening removes one coordinate.
    #[arg(long, default_value_t = 1)]
    shorten_limit: usize,
    /// Name of the starting code; derived names append e, p or s.
    #[arg(long, default_value = "C")]
    name: String,
    /// Known distances by name (CSV `name,d`) used instead of computing them.
    #[arg(long)]
    labels: Option<PathBuf>,
    #[command(flatten)]
    distance: DistanceArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest code or dual enumerated when checking listed distances.
    #[arg(long, default_value_t = 1 << 22)]
    pub cap: u64,
    /// Also partition the rows whose class counts are checked.
    #[arg(long)]
    pub partition: bool,
}

pub fn run(cli: Cli) -> CliResult<u8> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Equiv(a) => equiv(a),
        Command::Partition(a) => partition_cmd(a),
        Command::Props(a) => props(a),
        Command::Mindist(a) => mindist(a),
        Command::Cx(a) => cx(a),
        Command::Modify(a) => modify(a),
        Command::VerifyTables(a) => crate::verify::run(&a),
    }
}

fn emit<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))
}

fn print_out(text: &str) -> CliResult<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ParamsJson {
    q: u32,
    n: usize,
    a: String,
    r: u32,
    nprime: u32,
    t: u32,
    modulus: u32,
}

impl ParamsJson {
    fn of(p: &CcParams) -> ParamsJson {
        ParamsJson {
            q: p.q(),
            n: p.n,
            a: print_elem(p.a, &p.field),
            r: p.r,
            nprime: p.nprime,
            t: p.t,
            modulus: p.modulus,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct EquivJson {
    params: ParamsJson,
    equivalent: bool,
    stage: String,
    witness: Option<[u32; 2]>,
}

fn equiv(args: EquivArgs) -> CliResult<u8> {
    let (f, p) = args.ring.params()?;
    let g1 = parse_poly(&args.g1, &f)?;
    let g2 = parse_poly(&args.g2, &f)?;
    let ctx = CcContext::new(p.clone());
    let v = cc_coset_eq(&ctx, &g1, &g2, args.search.into())?;
    if args.json {
        print_out(&emit(&EquivJson {
            params: ParamsJson::of(&p),
            equivalent: v.equivalent,
            stage: format!("{:?}", v.stage),
            witness: v.witness.map(|w| [w.e, w.b]),
        })?)?;
    } else if let Some(w) = v.witness {
        print_out(&format!("equivalent: witness z -> {} z + {} (mod {})", w.e, w.b, p.modulus))?;
    } else {
        print_out(&format!("no equivalence detected (decided at stage {:?})", v.stage))?;
    }
    Ok(if v.equivalent { 0 } else { 3 })
}

#[derive(Serialize)]
struct PartitionJson {
    params: ParamsJson,
    total: u128,
    new: usize,
    generators: Vec<String>,
}

fn partition_cmd(args: PartitionArgs) -> CliResult<u8> {
    let (_, p) = args.ring.params()?;
    let ctx = CcContext::new(p.clone());
    let res = partition(
        &ctx,
        &PartitionOptions {
            search: args.search.into(),
            max_total: args.max_total,
        },
    )?;
    let text = emit(&PartitionJson {
        params: ParamsJson::of(&p),
        total: res.total,
        new: res.new_count(),
        generators: res.generators.iter().map(print_poly).collect(),
    })?;
    match args.out {
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?,
        None => print_out(&text)?,
    }
    Ok(0)
}

/// The code named by `--g`/`--h`, dualized when the text starts with `(D)`.
fn build_code(f: &Field, p: &CcParams, choice: &PolyChoice) -> CliResult<(LinearCode, Poly)> {
    let (text, is_check) = match (&choice.g, &choice.h) {
        (Some(g), None) => (g, false),
        (None, Some(h)) => (h, true),
        _ => return Err(CliError::Usage("give exactly one of --g and --h".into())),
    };
    let dual = text.trim_start().starts_with("(D)");
    let poly = parse_poly(text, f)?;
    let g = if is_check { generator_from_check(p, &poly)? } else { poly };
    let code = cc_code(p, &g)?;
    Ok((if dual { code.dual() } else { code }, g))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PropsJson {
    params: [usize; 3],
    exact: bool,
    distance_bounds: [usize; 2],
    generator: String,
    #[serde(flatten)]
    properties: PropertySet,
}

fn props(args: PropsArgs) -> CliResult<u8> {
    let (f, p) = args.ring.params()?;
    let (code, g) = build_code(&f, &p, &args.poly)?;
    let d = distance_of(&code, &args.distance.options())?;
    let properties = classify(&code, args.distance.cap);
    print_out(&emit(&PropsJson {
        params: [code.n(), code.k(), d.lower],
        exact: d.exact,
        distance_bounds: [d.lower, d.upper],
        generator: print_poly(&g),
        properties,
    })?)?;
    Ok(0)
}

fn distance_of(code: &LinearCode, opts: &DistanceOptions) -> CliResult<DistanceReport> {
    if code.k() == 0 {
        return Err(CliError::Data("the zero code has no minimum distance".into()));
    }
    Ok(min_distance(code, opts)?)
}

#[derive(Serialize)]
struct MindistJson {
    n: usize,
    k: usize,
    #[serde(flatten)]
    report: DistanceReport,
}

fn mindist(args: MindistArgs) -> CliResult<u8> {
    let (f, p) = args.ring.params()?;
    let (code, _) = build_code(&f, &p, &args.poly)?;
    let report = distance_of(&code, &args.distance.options())?;
    print_out(&emit(&MindistJson {
        n: code.n(),
        k: code.k(),
        report,
    })?)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CodeSummary {
    n: usize,
    k: usize,
    d: DistanceReport,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CxJson {
    parent: CodeSummary,
    subcode: CodeSummary,
    aux: CodeSummary,
    params: [usize; 2],
    distance_lower_bound: usize,
    generator_matrix: Vec<String>,
}

fn summary(c: &LinearCode, opts: &DistanceOptions) -> CliResult<CodeSummary> {
    Ok(CodeSummary {
        n: c.n(),
        k: c.k(),
        d: distance_of(c, opts)?,
    })
}

fn cx(args: CxArgs) -> CliResult<u8> {
    let (f, p) = args.ring.params()?;
    let parent = cc_code(&p, &parse_poly(&args.parent, &f)?)?;
    let sub = cc_code(&p, &parse_poly(&args.sub, &f)?)?;
    let rows = args.aux.split(';').map(|r| parse_coeffs(r, &f)).collect::<constacyclic::Result<Vec<_>>>()?;
    let width = rows.first().map_or(0, Vec::len);
    if width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Data("--aux rows must be nonempty and of equal length".into()));
    }
    let aux = LinearCode::from_rows(&f, width, &rows);
    let x = construction_x(&parent, &sub, &aux)?;
    let opts = args.distance.options();
    let (ps, ss, a) = (summary(&parent, &opts)?, summary(&sub, &opts)?, summary(&aux, &opts)?);
    let bound = construction_x_bound(ps.d.lower, ss.d.lower, a.d.lower);
    let generator_matrix = (0..x.k()).map(|i| x.generator().row(i).iter().map(|&e| print_elem(e, &f)).collect()).collect();
    print_out(&emit(&CxJson {
        parent: ps,
        subcode: ss,
        aux: a,
        params: [x.n(), x.k()],
        distance_lower_bound: bound,
        generator_matrix,
    })?)?;
    Ok(0)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StepJson {
    op: StepOp,
    position: Option<usize>,
    params: [usize; 2],
    d: Option<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct DerivedJson {
    name: String,
    params: [usize; 2],
    d: Option<usize>,
    table_d: usize,
    steps: Vec<StepJson>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ModifyJson {
    root: String,
    root_params: [usize; 2],
    derived: Vec<DerivedJson>,
}

fn load_labels(path: &PathBuf) -> CliResult<LabelOracle> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (i == 0 && line == "name,d") {
            continue;
        }
        let (name, d) = line
            .split_once(',')
            .and_then(|(n, d)| Some((n.trim().to_string(), d.trim().parse::<usize>().ok()?)))
            .ok_or_else(|| CliError::Input(format!("{} line {}: expected name,d", path.display(), i + 1)))?;
        labels.push((name, d));
    }
    Ok(LabelOracle::new(labels))
}

fn modify(args: ModifyArgs) -> CliResult<u8> {
    let (f, p) = args.ring.params()?;
    let (root, _) = build_code(&f, &p, &args.poly)?;
    let table = BklcTable::load(&args.bklc)?;
    let computed = ComputedDistance {
        opts: args.distance.options(),
    };
    let labels = args.labels.as_ref().map(load_labels).transpose()?;
    let oracle: &dyn DistanceOracle = match &labels {
        Some(l) => l,
        None => &computed,
    };
    let opts = ModifyOptions {
        max_depth: args.max_depth,
        shorten_limit: args.shorten_limit,
    };
    let out = recursively_modify(&root, &args.name, &table, oracle, opts)?;
    let derived = out
        .iter()
        .map(|d| {
            Ok(DerivedJson {
                name: d.name.clone(),
                params: [d.code.n(), d.code.k()],
                d: d.d,
                table_d: table.lookup(f.q(), d.code.n(), d.code.k())?,
                steps: d
                    .steps
                    .iter()
                    .map(|s| StepJson {
                        op: s.op,
                        position: s.position,
                        params: [s.n, s.k],
                        d: s.d,
                    })
                    .collect(),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    print_out(&emit(&ModifyJson {
        root: args.name,
        root_params: [root.n(), root.k()],
        derived,
    })?)?;
    Ok(0)
}
