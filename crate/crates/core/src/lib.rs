//! Constacyclic codes over GF(q), q <= 9: cyclotomic-coset equivalence
//! testing, partition of all codes of a length into detected equivalence
//! classes, and a linear-code engine for distances, duals and properties.

pub mod arith;
pub mod bklc;
pub mod code;
pub mod constructions;
pub mod cosets;
pub mod distance;
pub mod equiv;
pub mod error;
pub mod ext;
pub mod gf;
pub mod matrix;
pub mod notation;
pub mod poly;

pub use bklc::BklcTable;
pub use code::{cc_code, cc_code_from_check, classify, LinearCode, PropertySet};
pub use constructions::{
    best_puncture, best_shorten, construction_x, construction_x_bound, extend, puncture, recursively_modify,
    replay_lineage, shorten, ComputedDistance, Derivation, DerivationStep, DistanceOracle, LabelOracle, ModifyOptions,
    StepOp,
};
pub use cosets::{cc_params, cyclotomic_cosets, CcContext, CcParams, CosetMultiset, LinearMapWitness};
pub use distance::{
    dual_distance, exhaustive_distance, information_set_distance, macwilliams, min_distance, weight_distribution,
    weight_distribution_either, DistanceMethod, DistanceOptions, DistanceReport,
};
pub use equiv::{
    cc_coset_eq, compare_multisets, distribution, exists_linear_map, partition, Distribution, EquivVerdict,
    MapSearch, PartitionOptions, PartitionResult, Stage,
};
pub use error::{Error, Result};
pub use ext::{extension_field, ExtElem, ExtField};
pub use gf::{field_make, Elem, Field};
pub use poly::{generator_from_check, poly_arith, root_multiplicity, Poly, PolyOp, PolyResult};
pub use matrix::Matrix;
pub use notation::{parse_elem, parse_poly, print_elem, print_poly};
