//! Exact phase-space operator algebra and numerical dynamics for free rigid
//! tops.
//!
//! `rotor` implements two operator calculi for quantum rigid-body rotation on
//! non-canonical phase spaces, together with the exact symbolic machinery
//! needed to verify their algebraic structure and a numerical layer that
//! propagates states and cross-checks them against matrix mechanics:
//!
//! - **[`quat`]** — exact quaternion algebra, rotation kinematics, and the
//!   classical canonical relations between quaternion momenta and body/lab
//!   angular momenta.
//! - **[`opalg`]** ([`ring`], [`diffop`], [`symbol`], [`integrate`]) — exact
//!   differential-operator algebra with rational-function coefficients over
//!   phase-variable quotient rings (relations like S² = ΣL²), plus exact
//!   integration of exponentially weighted polynomial symbols.
//! - **[`euler`]** — the three-variable quantizer on body-frame angular
//!   momenta {L₁,L₂,L₃}: phase-space images of angular-momentum operators,
//!   the free-top evolution generator, eigenprojector symbols, the
//!   matrix ↔ symbol isomorphism, rescalings, and the ⋆-product variant.
//! - **[`complete`]** — the full quantizer on quaternion-derived variables
//!   {Λ, L′}: Schwinger-type ladder operators, body- and lab-frame angular
//!   momentum images, compound ladders, quaternion-component images, basis
//!   and identity symbols, and the symmetric-top evolution generator.
//! - **[`nasyrov`]** — the semidiscrete representation on a half-step action
//!   lattice in (J,K) with Fourier angle modes, where the free symmetric-top
//!   generator is literally classical and propagation is exact advection.
//! - **[`dynamics`]** ([`grid`], [`spectral`]) — finite-difference grid
//!   propagation, classical Euler-top baselines, the matrix-mechanics oracle,
//!   and spectrum/revival analysis.
//!
//! Exact results use arbitrary-precision rational arithmetic ([`scalar`]);
//! everything numerical is double precision with documented tolerances.

pub mod complete;
pub mod diffop;
pub mod error;
pub mod integrate;
pub mod quadrature;
pub mod euler;
pub mod quat;
pub mod ring;
pub mod scalar;
pub mod special;
pub mod symbol;

pub use scalar::{CRat, Rat, ScalarExact};
