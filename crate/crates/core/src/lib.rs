//! Fundamental groups of coarse quotients `X/G` of finite groups acting
//! simplicially on finite complexes.
//!
//! The [`ghost`] module computes `π1(X/G)` from the action on `π1(X)`: the
//! coinvariants of the action modulo the loops `γ (gγ)^-1` that run from a
//! fixed basepoint to a fixed point of `g` and back along the image path.
//! The [`oracle`] module computes the same group directly from the quotient
//! complex, and compares the two through [`presentation::Fingerprint`]s.
//!
//! Alongside: graphs of groups ([`gog`]) and completions of finite groups
//! with respect to subgroup-generated topologies ([`prodiscrete`]).

pub mod action;
pub mod complex;
pub mod fixtures;
pub mod ghost;
pub mod gog;
pub mod group;
pub mod oracle;
pub mod presentation;
pub mod prodiscrete;

pub use action::{ActionError, FiniteAction, QuotientData};
pub use complex::{ComplexError, EdgePath, EdgePathGroup, SimplicialComplex, SpanningTree, Vertex};
pub use ghost::{GhostError, GhostOptions, GhostResult};
pub use gog::{GogError, GraphOfGroups};
pub use group::{FiniteGroup, NamedGroup, PermutationGroup};
pub use presentation::{Fingerprint, Presentation, Word};
pub use prodiscrete::{ProdiscreteError, SubgroupFamily, Topology};
