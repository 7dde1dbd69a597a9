//! Causal explanation atoms from causal statements, an IS-A ontology and a
//! clause theory.
//!
//! The engine runs in three stages that can be chained through plain fact
//! files:
//!
//! 1. [`generate`] derives candidate atoms `ecSet(i,j,S)`;
//! 2. [`optimize`] prunes them to quasi-optimal ones, `ecSetRes(i,j,S)`;
//! 3. [`worlds`] enumerates worlds and verifies each atom's conditions per
//!    world, `explVer(w,i,j,S)`, with brave and cautious verdicts across
//!    worlds.
//!
//! [`lift`] expands an object hierarchy into IS-A atoms over structured
//! symbols, and [`oracle`] is a brute-force reference derivation for
//! cross-checking on small theories.

pub mod closure;
pub mod emit;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod lift;
pub mod optimize;
pub mod oracle;
pub mod parse;
pub mod pipeline;
pub mod symbol;
pub mod theory;
pub mod worlds;

pub use closure::{ClosureRelations, Relation};
pub use error::Error;
pub use symbol::{sym, Symbol};
pub use theory::{
    canonicalize, symbol_universe, validate_theory, CausalAtom, Clause, ConditionSet,
    ExplanationAtom, Literal, LiteralAtom, OntAtom, Status, Theory, ValidationReport,
};
