//! Exact verification engine for discrete-Fourier-type transforms on small
//! quantum systems (qubits, qutrits, low-dimensional qudits).
//!
//! The library is organised in layers:
//!
//! * [`cyclo`] — exact arithmetic in cyclotomic fields `Q(ζ_L)`, including
//!   Gauss-sum square roots of positive integers. Everything above is built
//!   on these numbers, so equality tests are decidable and exact.
//! * [`phasepoly`] — Laurent polynomials in formal unimodular phase
//!   variables (symbols standing for `e^{iδ}`, `e^{iφ}`, …) with cyclotomic
//!   coefficients. An identity that holds as a polynomial holds for *every*
//!   assignment of phase angles at once.
//! * [`qstates`] — state vectors and gate matrices with phase-polynomial
//!   amplitudes, plus the specific vector families and transforms under
//!   study, and an independent floating-point backend used to cross-check
//!   the exact results.
//! * [`claims`] — the catalogue of identities, constructions and
//!   impossibility statements that the engine verifies or refutes, each
//!   producing a machine-readable [`claims::ClaimResult`].

pub mod claims;
pub mod cyclo;
pub mod phasepoly;
pub mod qstates;
