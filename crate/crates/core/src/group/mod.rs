//! Finitely generated groups carrying a distinguished degree character, their
//! group rings, and the completed (one-sided series) rings built from them.
//!
//! Every supported group is a semidirect product of a free abelian lattice
//! `Z^m` with an infinite cyclic factor acting by a monomial automorphism;
//! taking that automorphism to be the identity recovers `Z^(m+1)`, and a
//! degenerate variant drops the cyclic factor altogether.  The degree
//! character reads off the cyclic coordinate, and completing the rational
//! group ring in the increasing-degree direction yields the series ring in
//! which orbit counts and boundary operators live.

mod descriptor;
mod element;
mod novikov;
mod ring;

pub use descriptor::GroupDescriptor;
pub use element::GroupElement;
pub use novikov::NovikovElement;
pub use ring::GroupRingElement;
