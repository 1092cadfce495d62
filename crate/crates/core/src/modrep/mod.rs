//! Modular representations given by action matrices on a fixed generating
//! set: spinning, a small MeatAxe, hom spaces, and the modules built from
//! the BN-pair.

pub mod gelfand;
pub mod hom;
pub mod lie;
pub mod meataxe;
pub mod module;

pub use gelfand::{gelfand_graev_k, gelfand_graev_module, idempotency_holds, GelfandGraevReport};
pub use hom::{hom_space, is_homomorphism, is_isomorphic, radical_and_head, socle};
pub use lie::{
    hc_induce, hc_restrict, is_cuspidal, levi_borel_module, parabolic_perm_module, socle_of_steinberg,
    theta_identity, BorelModule, SteinbergData,
};
pub use meataxe::{
    composition_factors, composition_series, factor_summary, fingerprint, is_irreducible, multiplicity,
    CompositionFactor, FactorFingerprint, Irreducibility,
};
pub use module::{fixed_points, spin, spin_vector, GModule, Submodule};

use crate::bngroup::GroupError;
use crate::exactfield::ExactError;
use crate::hecke::HeckeError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ModError {
    #[error("modules of dimension 0 are not allowed")]
    ZeroModule,
    #[error("action matrices have the wrong shape")]
    Shape,
    #[error("irreducibility test gave no answer")]
    Inconclusive,
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("modules use different generating sets or fields")]
    GeneratorMismatch,
    #[error("characteristic {0} equals the defining characteristic")]
    SameCharacteristic(u64),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Field(#[from] ExactError),
}
