//! Exact construction and analysis of finite unitary matrix groups.
//!
//! The crate builds concrete generator matrices for several parametrized
//! families of finite p-groups inside U(p), enumerates the groups they
//! generate, measures fixed subspaces of group elements exactly over
//! cyclotomic fields, and evaluates the homotopy-theoretic bookkeeping
//! (partial flag homology, torsion Euler characteristics, unit groups of
//! Z/q) needed to decide which quotients of unitary groups the actions
//! descend to freely.

pub mod claims;
pub mod cyclo;
pub mod error;
pub mod families;
pub mod group;
pub mod matrix;
pub mod rep;
pub mod report;
pub mod stiefel;

pub use claims::{run_claims, Claim, ClaimOutcome};
pub use cyclo::{CyclotomicNumber, Rational};
pub use error::{Error, Result};
pub use families::{
    InductionRecipe, MonomialSpec, PresentationWord, ProductActionCertificate, Sym,
};
pub use group::{CosetTable, MatrixGroup, RankInventory, SubgroupHandle};
pub use matrix::CycloMatrix;
pub use rep::{CrosscheckRecord, FixityReport, IsotropyTower, Representation};
pub use report::{
    build_analysis, export_representation, import_representation, AnalysisDocument,
    RepInputDocument,
};
pub use stiefel::{
    DegreeSummand, GradedGroup, IntPolynomial, PropagationReport, Tier,
};
