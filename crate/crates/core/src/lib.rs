//! Finite models of prime spectra and contraction maps.
//!
//! A [`SpectralMap`] is a monotone map from a finite poset `r` into another
//! finite poset `s` extended by a greatest element `TOP`, standing for the
//! contraction `Q -> f⁻¹[Q]` of a ring homomorphism `f: S -> R`. The crate
//! decides lying-over, going-up/down/between and chain-cover properties on
//! such maps, verifies implications between them exhaustively on small
//! instances and searches for minimal witnesses.
//!
//! Concrete rings `Z_n` and their products live in [`ring`]; their spectra
//! are antichains, so everything chain-shaped is tested on posets.

mod dchain;
pub mod poset;
pub mod properties;
pub mod ring;
pub mod spectral;
pub mod sweep;
pub mod theorems;
pub mod verdict;
pub mod witness;

pub use poset::{
    covering_pairs, cuts_of, enumerate_chains, enumerate_posets, enumerate_posets_in, is_chain,
    make_poset, maximal_chains, random_poset, Chain, Cut, Poset, PosetError, PosetFamily,
};
pub use properties::{Property, PropertySummary};
pub use ring::{make_hom, parse_hom, parse_ring, spec, Element, IdealRepr, RingError, RingExpr, RingHom};
pub use spectral::{enumerate_monotone_maps, make_spectral_map, ImageChain, MapError, SpectralMap, Target};
pub use sweep::{exhaustive_verify, exhaustive_verify_all, SweepConfig, SweepError};
pub use theorems::{verify, verify_many, verify_with, TheoremId, VerifyOptions};
pub use verdict::{Counterexample, Statement, Verdict};
pub use witness::{search_witness, shrink, Flag, Goal, SearchOutcome, WitnessSearchSpec};
