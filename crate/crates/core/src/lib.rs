//! Argumentation networks and their semantics in the two-world Gödel
//! logic G3.

pub mod af;
pub mod encode;
pub mod error;
pub mod g3;
pub mod meta;
pub mod pred;
pub mod prop;
pub mod syntax;
pub mod translate;

pub use af::{
    arg, check_complete, classify, enumerate_complete, enumerate_stable, restrict, ArgumentId,
    Classification, CompletenessCheck, Condition, Framework, Label, Labelling,
};
pub use encode::{
    aaf_extensions, adf_two_valued_models, classical_eval, encode_adf, encode_conjunctive,
    encode_disjunctive, AafModel, AdfNet, AuxId, AxiomaticFrame, ConjunctiveNet, DisjunctiveNet,
    Encoding, Relation,
};
pub use error::{Error, Result};
pub use g3::{ThreeVal, World};
pub use meta::{
    solve_higher, star_theory, GeneralizedModel, HigherNetwork, JointAttacks, RMode, StarOptions,
    Unit, WffSupport,
};
pub use pred::{Domain, PredFormula, PredInterp, Term, Valuation};
pub use prop::{enumerate_models, is_valid, PropAssignment, PropFormula, Validity};
pub use syntax::{parse_pred, parse_prop};
pub use translate::{
    delta_pred, delta_prop, o_a, theta, verify_oa, verify_theta, verify_thm2, verify_thm42,
    CorrespondenceReport, Theory, TheoryKind,
};
