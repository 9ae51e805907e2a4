//! Central numerical tolerances.
//!
//! Every threshold that a check or an operation promises is defined here once,
//! with the reasoning, so tests and the verification suites cannot drift
//! apart.  Tolerances are absolute unless the name says otherwise.

/// Residual allowed when a vector field is recovered from its defining linear
/// system (Reeb: `dalpha(R, .) = 0`, `alpha(R) = 1`; Hamiltonian:
/// `omega(X, .) = -dK`).  The systems are dense, tiny (dimension <= 2n) and
/// well conditioned at the scales we evaluate them, so the solve is accurate
/// to a small multiple of machine epsilon; 1e-10 leaves two orders of margin.
pub const FIELD_RESIDUAL: f64 = 1e-10;

/// A solve whose residual exceeds this is treated as a singular system rather
/// than as a noisy success.
pub const SINGULAR_RESIDUAL: f64 = 1e-8;

/// Agreement between an analytically computed gradient and its central
/// finite-difference estimate with step [`FD_GRADIENT_STEP`].  The truncation
/// error is O(step^2) ~ 1e-10 times third derivatives; 1e-6 tolerates desk
/// scale third derivatives up to ~1e4.
pub const FD_GRADIENT_TOL: f64 = 1e-6;

/// Step for central finite-difference gradients used as test oracles.
pub const FD_GRADIENT_STEP: f64 = 1e-5;

/// Step for the finite-difference field Jacobian inside the variational
/// integration (flow Jacobians).
pub const FD_JACOBIAN_STEP: f64 = 1e-6;

/// Default adaptive integration tolerance (absolute and relative).
pub const INTEGRATION_TOL: f64 = 1e-10;

/// Face residual after event localization on the dense output.
pub const EVENT_RESIDUAL: f64 = 1e-10;

/// The vertical speed of the trap Reeb field must reproduce the closed-form
/// expression `H - 1/2 sum (x_j H_x_j + y_j H_y_j)` to this accuracy.  Both
/// routes are exact up to solver residual and quadrature error (~1e-13).
pub const VERTICAL_SPEED_TOL: f64 = 1e-8;

/// `G` may dip below zero on certification grids by at most this much.  The
/// profile is built so that `G >= 0` holds exactly in floating point; the
/// slack only covers rounding in the grid evaluation itself.
pub const G_NONNEGATIVE_SLACK: f64 = 1e-10;

/// Points where `G <= G_SUBLEVEL` must lie within [`TORUS_LOCALIZATION_RADIUS`]
/// of the invariant torus: `G` grows quadratically off the torus with desk
/// scale curvature, so the 1e-6 sublevel set has radius ~1e-3.
pub const G_SUBLEVEL: f64 = 1e-6;
pub const TORUS_LOCALIZATION_RADIUS: f64 = 1e-2;

/// Torus tube radius excluded when certifying a positive vertical speed
/// minimum (aperiodicity certificate).
pub const TORUS_TUBE_RADIUS: f64 = 0.1;

/// Relative mismatch allowed between measured torus rotation frequencies and
/// their design values, and between frequency measurements at different torus
/// points.  Measurement is a least-squares phase slope over an integrated
/// orbit at tight tolerance, accurate to ~1e-9.
pub const FREQUENCY_REL_TOL: f64 = 1e-4;

/// Transverse entry/exit mismatch allowed for a traversal of the full plug at
/// integration tolerance [`INTEGRATION_TOL`]: the mirror construction makes
/// the mismatch zero in exact arithmetic, so only integration and event
/// localization error remain.
pub const MATCHING_TOL: f64 = 1e-6;

/// Pointwise agreement of the mirrored lower/upper plug fields,
/// `v_-(q) = -dPhi(v_+(Phi(q)))`.  The transport is a sign flip of solved
/// components, so only solver noise at mirrored points contributes.
pub const MIRROR_TRANSPORT_TOL: f64 = 1e-12;

/// Agreement between the mirrored field and the independent oracle that
/// solves the Reeb equations of the pulled-back contact form directly.
pub const MIRROR_ORACLE_TOL: f64 = 1e-10;

/// Volume transport identity: |density(flow_T(p)) det(Dflow_T(p)) / density(p) - 1|
/// over T = 1, bounded by variational integration error (~1e-8) plus the
/// finite-difference Jacobian bias.
pub const VOLUME_RATIO_TOL: f64 = 1e-6;

/// Agreement of the vertical Reeb speed of the interpolated contact form with
/// the closed-form interpolation identity, at any interpolation weight.
pub const INTERPOLATION_IDENTITY_TOL: f64 = 1e-8;

/// Pushforward of the trap Reeb field under the graph embedding into the
/// symplectization must agree with the Hamiltonian field of the level-1
/// Hamiltonian there.
pub const GRAPH_CORRESPONDENCE_TOL: f64 = 1e-8;

/// Closed-form checks of the ellipsoid host field and coefficients.
pub const HOST_CLOSED_FORM_TOL: f64 = 1e-12;

/// Pulled-back symplectic form on the flow-box transverse slice at time 0:
/// the construction makes it exactly standard; the tolerance covers the
/// numerical differential of the chart.
pub const CHART_SLICE_FORM_TOL: f64 = 1e-8;

/// Drift of the pulled-back transverse form between slice times 0 and
/// +-eps/2 (the host flow preserves it exactly; integration of the chart
/// differential does not).
pub const CHART_FORM_DRIFT_TOL: f64 = 1e-6;

/// Return distance of a closed host orbit after one period, integrated at
/// [`HOST_ORBIT_TOL`].
pub const HOST_RETURN_TOL: f64 = 1e-8;

/// Integration tolerance for host orbits: tighter than the default because a
/// 5(4) pair run over hundreds of periods loses ~t * tol / h of a quadratic
/// invariant; 1e-12 keeps the period-scale return error under 1e-8.
pub const HOST_ORBIT_TOL: f64 = 1e-12;

/// A blocked orbit must stay at least this far from its start (host demo).
pub const NO_RETURN_DISTANCE: f64 = 1e-3;

/// Exits of non-trapped entries must land on the host orbit through their
/// entry point within this distance (chart inversion + matching + host
/// integration error).
pub const REINSERTION_TOL: f64 = 1e-5;
