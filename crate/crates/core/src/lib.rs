//! Finite inverse semigroups with zero, their tight spectra and groupoids of
//! germs, and algebraic criteria for Hausdorffness, essential principality,
//! minimality and local contraction of the tight groupoid.

pub mod action;
pub mod criteria;
pub mod error;
pub mod frontend;
pub mod germs;
pub mod harness;
pub mod semigroup;
pub mod spectrum;
pub mod topology;

pub use action::{standard_action, ActionViolation, FiniteAction};
pub use criteria::{full_report, PropertyReport};
pub use error::{Error, Result};
pub use germs::{build_germ_groupoid, GermGroupoid};
pub use semigroup::{CoverCandidate, Ideal, InverseSemigroup, PartialMap};
pub use spectrum::{Character, Filter, TightSpectrum};
