//! Numerical construction of an aperiodic flow plug from a Reeb-orbit trap.
//!
//! The library builds, in coordinates, a compactly supported modification of
//! the vertical flow on a box `D^{2n-2} x [-eps, eps]`:
//!
//! * [`geometry`] evaluates the standard contact and symplectic forms on
//!   `R^{2n-1}` / `R^{2n}` and recovers Reeb / Hamiltonian vector fields from
//!   their defining linear equations, pointwise.
//! * [`trap`] ships a rotationally symmetric profile `H` whose rescaled Reeb
//!   flow traps a set of orbits against an invariant torus.
//! * [`integrator`] is an adaptive embedded Runge-Kutta 5(4) scheme with
//!   dense output, event localization on box faces, and variational flow
//!   Jacobians.
//! * [`plug`] doubles the trap by a mirror reflection into a field that is
//!   vertical near the box boundary, matches entry/exit transverse
//!   coordinates, and has no closed orbits inside.
//! * [`volume`] extends the plug field evenly across an extra coordinate so
//!   that the flow preserves an explicit volume form.
//! * [`host`] inserts the plug into a flow box around a closed orbit of an
//!   ellipsoid Hamiltonian flow and demonstrates that the orbit is opened
//!   while nearby dynamics is undisturbed.
//! * [`config`] / [`report`] / [`verify`] provide the run configuration,
//!   machine-readable verification reports, and the named check suites used
//!   by the command line interface.

pub mod config;
pub mod geometry;
pub mod host;
pub mod integrator;
pub mod plug;
pub mod report;
pub mod sample;
pub mod tolerances;
pub mod trap;
pub mod verify;
pub mod volume;
