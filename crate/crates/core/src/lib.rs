//! Exact computation with Kleinian singularities and their deformations.
//!
//! The crate builds, over exact cyclotomic arithmetic:
//! invariant rings of finite SL(2,C) subgroups with their ADE relations,
//! universal deformations of single singularities and of normal pairs,
//! McKay Cartan matrices with folded (twisted) root systems and the
//! parameter group H, and degree-truncated CBH algebras with PBW
//! normal forms.

pub mod catalog;
pub mod cbh;
pub mod deform;
pub mod exact;
pub mod fold;
pub mod grp;
pub mod klein;
pub mod par;
pub mod poly;
pub mod report;
pub mod verify;
