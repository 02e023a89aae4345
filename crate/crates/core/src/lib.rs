//! Regulator maps from cubical higher Chow chains into two models of the
//! Deligne complex over a point base: the 3-term total complex and the
//! polynomial-path complex.
//!
//! The exact layer builds the kernel elements R^n in both presentations as
//! tensor words with τ-graded polynomial coefficients (τ = 2πi kept formal)
//! and verifies the structural identities relating them. The numeric layer
//! evaluates the resulting regulators and Abel–Jacobi values for parametrized
//! cycles via arc extraction and adaptive quadrature.

pub mod coefficients;
pub mod simplex_forms;
pub mod formal_currents;
pub mod three_term;
pub mod chow_cycles;
pub mod real_arcs;
pub mod regulator_engine;
pub mod abel_jacobi;
