//! Coset-space decomposition on finite permutation groups.
//!
//! Every group is fully enumerated; subgroups are element-id sets. On top of
//! that sit thickenings and thinness tests, the degree invariant, a
//! factorization algorithm for coset spaces, the diagonal correspondence
//! between normal subgroups and overgroups of the diagonal, analysis of
//! primitive coset spaces, and finite tree models.

pub mod corpus;
pub mod cosets;
pub mod diagonal;
pub mod error;
pub mod factorizer;
pub mod families;
pub mod group;
pub mod irreducible;
pub mod lattice;
pub mod maximal;
pub mod perm;
pub mod report;
pub mod subgroup;
pub mod survey;
pub mod thickening;
pub mod tree;

pub use cosets::{coset_partition, CosetKind, CosetPartition};
pub use error::{CoreError, Result};
pub use group::{generate_group, Caps, ElementId, FiniteGroup, GroupElement};
pub use lattice::{core_centralizer_normalizer, subgroup_lattice, SubgroupLattice, SubgroupMode};
pub use maximal::{is_maximal_subgroup, maximal_overgroups, MaximalityVerdict};
pub use perm::Permutation;
pub use subgroup::Subgroup;
pub use thickening::{
    degree, expansivity_analysis, is_thick, is_thin, thickening, thin_criterion_check,
    DegreeResult, ExpansivityReport, ThinVerdict, ThinWitness,
};
pub use factorizer::{
    cdi_factorize, classify_factor, find_irreducible_overgroup, verify_series, FactorTag,
    FactorTypeTag, FactorizationSeries, SeriesVerification,
};
pub use diagonal::{
    chief_series, factor_equivalence_check, theta, verify_theta_order_iso, DiagonalContext,
    ThetaDirection, ThetaReport,
};
pub use irreducible::{
    analyze_irreducible, dichotomy_check, largest_h_invariant, onan_scott_type, sd_construct,
    twisted_wreath_construct, IrreducibleCase, IrreducibleReport, OnanScottTag, OnanScottType,
};
pub use tree::{ball_aut_group, ball_fixator, focal_orbit_census, pk_closure, TreeBall};
pub use survey::{survey, SurveyRow, SurveySummary, SurveyTable};
