//! Certification engine: interval arithmetic, adaptive bisection over the
//! inequality corpus, grid verification of the minimum, the majorization
//! property run and the proof-chain witness.

pub mod certify;
pub mod chain;
pub mod corpus;
pub mod expr;
pub mod global_min;
pub mod interval;
pub mod lemma3;
pub mod report;

pub use certify::{certify, CertifiedInequality, Claim, EqualitySet, Status};
pub use chain::{proof_chain, ProofChainWitness};
pub use global_min::{verify_global_min, GlobalMinReport};
pub use interval::Interval;
pub use lemma3::{lemma3_property, Lemma3Instance, Lemma3Report, Transform};
pub use report::{run_suite, SuiteOptions, VerificationReport};
