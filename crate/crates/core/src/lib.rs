//! Exact classification of cocentral abelian extensions of a cyclic group algebra `kC_p` by `k^G`.

pub mod arith;
pub mod catalog;
pub mod action;
pub mod aut;
pub mod carrier;
pub mod cochain;
pub mod cyclo;
pub mod error;
pub mod forms;
pub mod group;
pub mod hopf;
pub mod linalg;
pub mod module_order;
pub mod oracle;
pub mod orbits;
pub mod report;
pub mod scan;
pub mod section;
pub mod suite;

pub use error::{Error, Result};
pub use group::{AbelianGroup, Character, Endomorphism, GroupElement};
