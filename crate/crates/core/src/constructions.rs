//! Extension, puncturing, shortening, Construction X, and the recursive
//! modification search against a table of best-known distances.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::bklc::BklcTable;
use crate::code::LinearCode;
use crate::distance::{min_distance, DistanceOptions, DistanceReport};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::matrix::Matrix;

/// Appends the coordinate that makes every codeword sum to zero.
pub fn extend(c: &LinearCode) -> LinearCode {
    let f = c.field();
    let g = c.generator();
    let rows: Vec<Vec<Elem>> = (0..c.k())
        .map(|i| {
            let mut r = g.row(i).to_vec();
            let s = r.iter().fold(Elem::ZERO, |acc, &x| f.add(acc, x));
            r.push(f.neg(s));
            r
        })
        .collect();
    LinearCode::from_rows(f, c.n() + 1, &rows)
}

fn check_position(c: &LinearCode, pos: usize) -> Result<()> {
    if c.n() < 2 || pos >= c.n() {
        return Err(Error::PositionOutOfRange { pos, n: c.n() });
    }
    Ok(())
}

/// Deletes coordinate `pos`; the dimension drops only if a codeword was
/// supported on `pos` alone.
pub fn puncture(c: &LinearCode, pos: usize) -> Result<LinearCode> {
    check_position(c, pos)?;
    Ok(LinearCode::new(&c.generator().delete_column(pos)))
}

/// The codewords vanishing at `pos`, with `pos` deleted.
pub fn shorten(c: &LinearCode, pos: usize) -> Result<LinearCode> {
    check_position(c, pos)?;
    let g = c.generator();
    let column = g.select_columns(&[pos]).transpose();
    let messages = column.kernel();
    let sub = messages.mul(g);
    Ok(LinearCode::new(&sub.delete_column(pos)))
}

/// Distance evaluation used to rank derived codes. `name` is the lineage
/// name of `code` (root name followed by `e`/`p`/`s` suffixes).
pub trait DistanceOracle: Sync {
    fn distance(&self, name: &str, code: &LinearCode) -> Option<DistanceReport>;
}

/// Computes the distance (exactly when within budget, otherwise bounds).
#[derive(Clone, Copy, Debug, Default)]
pub struct ComputedDistance {
    pub opts: DistanceOptions,
}

impl DistanceOracle for ComputedDistance {
    fn distance(&self, _name: &str, code: &LinearCode) -> Option<DistanceReport> {
        min_distance(code, &self.opts).ok()
    }
}

/// Distances known by lineage name, for codes whose distance is beyond
/// computation; unnamed codes have no known distance.
#[derive(Clone, Debug, Default)]
pub struct LabelOracle {
    labels: HashMap<String, usize>,
}

impl LabelOracle {
    pub fn new(labels: impl IntoIterator<Item = (String, usize)>) -> LabelOracle {
        LabelOracle {
            labels: labels.into_iter().collect(),
        }
    }
}

impl DistanceOracle for LabelOracle {
    fn distance(&self, name: &str, _code: &LinearCode) -> Option<DistanceReport> {
        self.labels.get(name).map(|&d| DistanceReport {
            lower: d,
            upper: d,
            exact: true,
            method: crate::distance::DistanceMethod::Exhaustive,
            codewords: 0,
        })
    }
}

/// Ranking key: the guaranteed distance, 0 when unknown.
fn score(r: &Option<DistanceReport>) -> usize {
    r.as_ref().map_or(0, |r| r.lower)
}

/// Best result of `op` over all positions: highest guaranteed distance,
/// lowest position on ties.
fn best_position(
    c: &LinearCode,
    name: &str,
    oracle: &dyn DistanceOracle,
    op: fn(&LinearCode, usize) -> Result<LinearCode>,
) -> Result<(LinearCode, usize, Option<DistanceReport>)> {
    check_position(c, 0)?;
    let candidates: Vec<(usize, LinearCode, Option<DistanceReport>)> = (0..c.n())
        .into_par_iter()
        .map(|pos| {
            let code = op(c, pos)?;
            let d = if code.k() > 0 { oracle.distance(name, &code) } else { None };
            Ok((pos, code, d))
        })
        .collect::<Result<_>>()?;
    let (pos, code, d) = candidates
        .into_iter()
        .reduce(|best, cand| if score(&cand.2) > score(&best.2) { cand } else { best })
        .expect("n >= 2");
    Ok((code, pos, d))
}

/// Puncturing at the best position. `name` is the lineage name of the result.
pub fn best_puncture(c: &LinearCode, name: &str, oracle: &dyn DistanceOracle) -> Result<(LinearCode, usize, Option<DistanceReport>)> {
    best_position(c, name, oracle, puncture)
}

/// Shortening at the best position. `name` is the lineage name of the result.
pub fn best_shorten(c: &LinearCode, name: &str, oracle: &dyn DistanceOracle) -> Result<(LinearCode, usize, Option<DistanceReport>)> {
    if c.k() == 0 {
        return Err(Error::Construction("cannot shorten the zero code".into()));
    }
    best_position(c, name, oracle, shorten)
}

/// Construction X: the rows of `sub` padded with zeros, and for each
/// `parent / sub` coset representative the concatenation with one row of
/// `aux`. Length `n + n_aux`, dimension `k_parent`.
pub fn construction_x(parent: &LinearCode, sub: &LinearCode, aux: &LinearCode) -> Result<LinearCode> {
    if parent.n() != sub.n() || !parent.contains_code(sub) {
        return Err(Error::Construction("subcode is not contained in the parent code".into()));
    }
    if parent.k() - sub.k() != aux.k() || aux.field() != parent.field() {
        return Err(Error::Construction(format!(
            "dim(parent) - dim(subcode) = {} but dim(aux) = {}",
            parent.k() - sub.k(),
            aux.k()
        )));
    }
    let f = parent.field();
    let (n, m) = (parent.n(), aux.n());
    let mut basis = sub.generator().clone();
    let mut reps = Vec::new();
    for i in 0..parent.k() {
        let row = Matrix::from_rows(f, n, &[parent.generator().row(i).to_vec()]);
        let grown = basis.stack(&row);
        if grown.rank() > basis.rows() {
            basis = grown;
            reps.push(parent.generator().row(i).to_vec());
        }
    }
    debug_assert_eq!(reps.len(), aux.k());
    let mut rows: Vec<Vec<Elem>> = (0..sub.k())
        .map(|i| {
            let mut r = sub.generator().row(i).to_vec();
            r.resize(n + m, Elem::ZERO);
            r
        })
        .collect();
    for (i, rep) in reps.into_iter().enumerate() {
        let mut r = rep;
        r.extend_from_slice(aux.generator().row(i));
        rows.push(r);
    }
    Ok(LinearCode::from_rows(f, n + m, &rows))
}

/// Guaranteed distance of a Construction X code from (lower bounds on) the
/// input distances.
pub fn construction_x_bound(d_parent: usize, d_sub: usize, d_aux: usize) -> usize {
    d_sub.min(d_parent + d_aux)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum StepOp {
    Extend,
    Puncture,
    Shorten,
    ConstructionX,
}

impl StepOp {
    pub fn suffix(self) -> char {
        match self {
            StepOp::Extend => 'e',
            StepOp::Puncture => 'p',
            StepOp::Shorten => 's',
            StepOp::ConstructionX => 'x',
        }
    }

    pub fn from_suffix(c: char) -> Option<StepOp> {
        match c {
            'e' => Some(StepOp::Extend),
            'p' => Some(StepOp::Puncture),
            's' => Some(StepOp::Shorten),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub op: StepOp,
    pub position: Option<usize>,
    pub n: usize,
    pub k: usize,
    /// Guaranteed distance of the result, when known.
    pub d: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub name: String,
    pub steps: Vec<DerivationStep>,
    pub code: LinearCode,
    pub d: Option<usize>,
}

#[derive(Clone, Copy, Debug)]
pub struct ModifyOptions {
    pub max_depth: usize,
    /// Accepted for interface compatibility and not used: every shortening
    /// step removes exactly one coordinate.
    pub shorten_limit: usize,
}

impl Default for ModifyOptions {
    fn default() -> Self {
        ModifyOptions {
            max_depth: 16,
            shorten_limit: 1,
        }
    }
}

struct Search<'a> {
    table: &'a BklcTable,
    oracle: &'a dyn DistanceOracle,
    opts: ModifyOptions,
    found: HashSet<(usize, usize)>,
    out: Vec<Derivation>,
}

impl Search<'_> {
    fn visit(&mut self, node: &Derivation) -> Result<()> {
        let c = &node.code;
        self.found.insert((c.n(), c.k()));
        if node.steps.len() >= self.opts.max_depth {
            return Ok(());
        }
        let e_name = format!("{}e", node.name);
        let ext = extend(c);
        let d = self.oracle.distance(&e_name, &ext);
        self.check(node, StepOp::Extend, None, ext, d)?;
        if c.n() >= 2 {
            let p_name = format!("{}p", node.name);
            let (p, p_pos, p_d) = best_puncture(c, &p_name, self.oracle)?;
            let s = if c.k() > 0 {
                let s_name = format!("{}s", node.name);
                Some(best_shorten(c, &s_name, self.oracle)?)
            } else {
                None
            };
            self.check(node, StepOp::Puncture, Some(p_pos), p, p_d)?;
            if let Some((s, s_pos, s_d)) = s {
                self.check(node, StepOp::Shorten, Some(s_pos), s, s_d)?;
            }
        }
        Ok(())
    }

    /// Reports and descends into `child` when its parameters are new and its
    /// guaranteed distance beats the table.
    fn check(&mut self, parent: &Derivation, op: StepOp, position: Option<usize>, child: LinearCode, d: Option<DistanceReport>) -> Result<()> {
        if child.k() == 0 || self.found.contains(&(child.n(), child.k())) {
            return Ok(());
        }
        let Some(d) = d.map(|r| r.lower) else {
            return Ok(());
        };
        if d <= self.table.lookup(child.field().q(), child.n(), child.k())? {
            return Ok(());
        }
        let mut steps = parent.steps.clone();
        steps.push(DerivationStep {
            op,
            position,
            n: child.n(),
            k: child.k(),
            d: Some(d),
        });
        let node = Derivation {
            name: format!("{}{}", parent.name, op.suffix()),
            steps,
            code: child,
            d: Some(d),
        };
        self.out.push(node.clone());
        self.visit(&node)
    }
}

/// Depth-first search from `root`: at each node, extend, then the best
/// puncturing, then the best shortening; a child is reported and explored
/// when its (n, k) is new to the search and its guaranteed distance exceeds
/// the table entry. The root is not reported.
pub fn recursively_modify(
    root: &LinearCode,
    root_name: &str,
    table: &BklcTable,
    oracle: &dyn DistanceOracle,
    opts: ModifyOptions,
) -> Result<Vec<Derivation>> {
    let mut search = Search {
        table,
        oracle,
        opts,
        found: HashSet::new(),
        out: Vec::new(),
    };
    let start = Derivation {
        name: root_name.to_string(),
        steps: Vec::new(),
        d: oracle.distance(root_name, root).map(|r| r.lower),
        code: root.clone(),
    };
    search.visit(&start)?;
    Ok(search.out)
}

/// Rebuilds the code named `name` from `root` by applying its `e`/`p`/`s`
/// suffix, choosing positions as the search does.
pub fn replay_lineage(root: &LinearCode, root_name: &str, name: &str, oracle: &dyn DistanceOracle) -> Result<Derivation> {
    let suffix = name
        .strip_prefix(root_name)
        .ok_or_else(|| Error::InvalidParams(format!("{name} does not descend from {root_name}")))?;
    let mut node = Derivation {
        name: root_name.to_string(),
        steps: Vec::new(),
        d: oracle.distance(root_name, root).map(|r| r.lower),
        code: root.clone(),
    };
    for ch in suffix.chars() {
        let op = StepOp::from_suffix(ch).ok_or_else(|| Error::InvalidParams(format!("unknown step '{ch}' in {name}")))?;
        let child_name = format!("{}{}", node.name, ch);
        let (code, position, d) = match op {
            StepOp::Extend => {
                let e = extend(&node.code);
                let d = oracle.distance(&child_name, &e);
                (e, None, d)
            }
            StepOp::Puncture => {
                let (c, p, d) = best_puncture(&node.code, &child_name, oracle)?;
                (c, Some(p), d)
            }
            _ => {
                let (c, p, d) = best_shorten(&node.code, &child_name, oracle)?;
                (c, Some(p), d)
            }
        };
        let d = d.map(|r| r.lower);
        node.steps.push(DerivationStep {
            op,
            position,
            n: code.n(),
            k: code.k(),
            d,
        });
        node = Derivation {
            name: child_name,
            steps: node.steps,
            code,
            d,
        };
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::exhaustive_distance;
    use crate::gf::Field;
    use proptest::prelude::*;

    fn code_from_seed(q: u32, n: usize, k: usize, seed: &[u8]) -> LinearCode {
        let f = Field::new(q).unwrap();
        let rows: Vec<Vec<Elem>> = (0..k)
            .map(|i| (0..n).map(|j| Elem(seed[(i * n + j) % seed.len()] % q as u8)).collect())
            .collect();
        LinearCode::from_rows(&f, n, &rows)
    }

    fn parity(q: u32, n: usize) -> LinearCode {
        LinearCode::repetition(&Field::new(q).unwrap(), n).dual()
    }

    #[test]
    fn parity_code_examples() {
        let par = parity(2, 3);
        let e = extend(&par);
        assert_eq!((e.n(), e.k(), exhaustive_distance(&e).upper), (4, 2, 2));
        let s = shorten(&par, 0).unwrap();
        assert_eq!((s.n(), s.k(), exhaustive_distance(&s).upper), (2, 1, 2));
        let rep = LinearCode::repetition(&Field::new(2).unwrap(), 3);
        let p = puncture(&rep, 0).unwrap();
        assert_eq!((p.n(), p.k(), exhaustive_distance(&p).upper), (2, 1, 2));
    }

    #[test]
    fn zero_sum_code_extends_by_zero_column() {
        let par = parity(5, 6);
        let e = extend(&par);
        assert!((0..e.k()).all(|i| e.generator().get(i, 6).is_zero()));
        assert_eq!(exhaustive_distance(&e).upper, exhaustive_distance(&par).upper);
    }

    #[test]
    fn shorten_at_zero_coordinate_keeps_dimension() {
        let f = Field::new(3).unwrap();
        let c = LinearCode::from_rows(&f, 4, &[vec![Elem(1), Elem(0), Elem(2), Elem(1)], vec![Elem(0), Elem(0), Elem(1), Elem(1)]]);
        let s = shorten(&c, 1).unwrap();
        assert_eq!((s.n(), s.k()), (3, 2));
        assert!(matches!(shorten(&c, 4), Err(Error::PositionOutOfRange { pos: 4, n: 4 })));
    }

    #[test]
    fn construction_x_identity_case() {
        let f = Field::new(3).unwrap();
        let c = parity(3, 5);
        let aux = LinearCode::zero(&f, 0);
        let x = construction_x(&c, &c, &aux).unwrap();
        assert_eq!(x, c);
    }

    #[test]
    fn construction_x_meets_its_bound() {
        // [8,4]_3 parent, shortened-and-padded [8,3] subcode, [3,1,3] aux
        let f = Field::new(3).unwrap();
        let seed = [1u8, 2, 0, 1, 1, 2, 2, 0, 1, 1, 0, 2, 2, 1, 0, 1, 2, 2, 1, 0, 0, 1, 1, 2, 1, 0, 2, 2, 1, 1, 0, 2];
        let parent = code_from_seed(3, 8, 4, &seed);
        assert_eq!(parent.k(), 4);
        let sub = LinearCode::new(&shorten(&parent, 0).unwrap().generator().row_vecs().iter().fold(Matrix::zero(&f, 0, 8), |m, r| {
            let mut v = vec![Elem::ZERO];
            v.extend_from_slice(r);
            m.stack(&Matrix::from_rows(&f, 8, &[v]))
        }));
        assert_eq!(sub.k(), 3);
        assert!(parent.contains_code(&sub));
        let aux = LinearCode::repetition(&f, 3);
        let x = construction_x(&parent, &sub, &aux).unwrap();
        assert_eq!((x.n(), x.k()), (11, 4));
        let bound = construction_x_bound(
            exhaustive_distance(&parent).upper,
            exhaustive_distance(&sub).upper,
            3,
        );
        assert!(exhaustive_distance(&x).upper >= bound);
        let padded: Vec<Vec<Elem>> = sub.generator().row_vecs().into_iter().map(|mut r| {
            r.resize(11, Elem::ZERO);
            r
        }).collect();
        assert!(x.contains_code(&LinearCode::from_rows(&f, 11, &padded)));
        assert!(construction_x(&sub, &parent, &aux).is_err());
        assert!(construction_x(&parent, &sub, &LinearCode::full(&f, 2)).is_err());
    }

    #[test]
    fn recursion_reports_only_improvements() {
        let f = Field::new(2).unwrap();
        let c = LinearCode::repetition(&f, 3);
        let oracle = ComputedDistance::default();
        // [3,1,3] with every derived code at table level: nothing reported
        let at_level = BklcTable::from_reader("q,n,k,d\n2,4,1,4\n2,2,1,2\n".as_bytes()).unwrap();
        assert!(recursively_modify(&c, "R", &at_level, &oracle, ModifyOptions::default()).unwrap().is_empty());
        // a weaker [4,1] entry admits the extension; its own extension
        // [5,1,4] (even weight, zero column) is not an improvement
        let weak = BklcTable::from_reader("q,n,k,d\n2,4,1,3\n2,2,1,2\n2,5,1,5\n".as_bytes()).unwrap();
        let out = recursively_modify(&c, "R", &weak, &oracle, ModifyOptions::default()).unwrap();
        let names: Vec<&str> = out.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["Re"]);
        assert_eq!(out[0].d, Some(4));
        assert_eq!(out[0].steps[0].op, StepOp::Extend);
    }

    #[test]
    fn missing_table_entry_is_an_error() {
        let f = Field::new(2).unwrap();
        let c = LinearCode::repetition(&f, 4);
        let empty = BklcTable::default();
        assert!(matches!(
            recursively_modify(&c, "R", &empty, &ComputedDistance::default(), ModifyOptions::default()),
            Err(Error::BklcMissing { .. })
        ));
    }

    #[test]
    fn replay_follows_suffixes() {
        let c = parity(3, 6);
        let oracle = ComputedDistance::default();
        let d = replay_lineage(&c, "P", "Pesp", &oracle).unwrap();
        assert_eq!(d.steps.iter().map(|s| (s.n, s.k)).collect::<Vec<_>>(), [(7, 5), (6, 4), (5, 4)]);
        assert!(replay_lineage(&c, "P", "Q", &oracle).is_err());
        assert!(replay_lineage(&c, "P", "Px", &oracle).is_err());
    }

    proptest! {
        #[test]
        fn extend_then_puncture_last_is_identity(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 9]),
                                                 n in 1usize..9, k in 0usize..5,
                                                 seed in prop::collection::vec(any::<u8>(), 1..64)) {
            let c = code_from_seed(q, n, k.min(n), &seed);
            prop_assert_eq!(puncture(&extend(&c), n).unwrap(), c);
        }

        #[test]
        fn shorten_is_dual_to_puncture(q in prop::sample::select(vec![2u32, 3, 4, 5, 7]),
                                       n in 2usize..9, k in 0usize..6, pos in 0usize..9,
                                       seed in prop::collection::vec(any::<u8>(), 1..64)) {
            let c = code_from_seed(q, n, k.min(n), &seed);
            let pos = pos % n;
            prop_assert_eq!(shorten(&c, pos).unwrap().dual(), puncture(&c.dual(), pos).unwrap());
        }

        #[test]
        fn puncture_matches_span_oracle(q in prop::sample::select(vec![2u32, 3]),
                                        n in 2usize..7, k in 1usize..4, pos in 0usize..7,
                                        seed in prop::collection::vec(any::<u8>(), 1..64)) {
            // span of all punctured codewords, enumerated directly
            let c = code_from_seed(q, n, k.min(n), &seed);
            let pos = pos % n;
            let p = puncture(&c, pos).unwrap();
            let qq = q as u64;
            let mut words = Vec::new();
            for idx in 0..qq.pow(c.k() as u32) {
                let mut t = idx;
                let msg: Vec<Elem> = (0..c.k()).map(|_| { let d = t % qq; t /= qq; Elem(d as u8) }).collect();
                let mut w = c.encode(&msg);
                w.remove(pos);
                prop_assert!(p.contains(&w));
                words.push(w);
            }
            words.sort();
            words.dedup();
            prop_assert_eq!(words.len() as u64, qq.pow(p.k() as u32));
        }
    }
}
