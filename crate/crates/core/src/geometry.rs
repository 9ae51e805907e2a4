//! Coordinate geometry: contact and symplectic forms, and the vector fields
//! they define.
//!
//! Conventions (fixed everywhere in this crate):
//!
//! * slice coordinates on `R^{2n-1}` are ordered `(x_1, y_1, ..., x_{n-1},
//!   y_{n-1}, z)`; the vertical coordinate `z` is always last;
//! * ambient coordinates on `R^{2n}` are ordered `(w, z, x_1, y_1, ...,
//!   x_{n-1}, y_{n-1})`;
//! * symplectization coordinates are `(t, x_1, y_1, ..., y_{n-1}, z)`, the
//!   cone coordinate first.
//!
//! The standard contact form is `alpha_st = dz + 1/2 sum_j (x_j dy_j - y_j
//! dx_j)`, the standard symplectic form `omega_st = dw ^ dz + sum_j dx_j ^
//! dy_j`, and a scalar profile `H > 0` rescales the contact form to
//! `alpha_st / H`.
//!
//! Reeb fields (`dalpha(R, .) = 0`, `alpha(R) = 1`) and Hamiltonian fields
//! (`omega(X, .) = -dK`) are recovered by pointwise dense linear solves of
//! the defining equations; closed-form expressions appear only as test
//! oracles.  The Reeb solve is a bordered square system
//!
//! ```text
//! [ dalpha^T  alpha ] [ R  ]   [ 0 ]
//! [ alpha^T     0   ] [ mu ] = [ 1 ]
//! ```
//!
//! whose unique solution has `mu = 0` exactly when `alpha` is contact; the
//! border turns the rank-deficient kernel problem into a nonsingular solve.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::tolerances;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("dimension parameter n must be at least 3, got {0}")]
    DimensionTooSmall(usize),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("defining linear system is singular or ill-conditioned (residual {residual:.3e})")]
    SingularSystem { residual: f64 },
    #[error("point lies off the contact-type hypersurface w = 2 (w = {0})")]
    OffContactSlice(f64),
    #[error("rescale factor must be positive, got {0}")]
    NonPositiveScale(f64),
}

/// The complexity parameter `n >= 3`.  Slices have `2n - 1` coordinates,
/// ambient space `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension {
    n: usize,
}

impl Dimension {
    pub fn new(n: usize) -> Result<Self, GeometryError> {
        if n < 3 {
            return Err(GeometryError::DimensionTooSmall(n));
        }
        Ok(Dimension { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of slice coordinates, `2n - 1`.
    pub fn state_dim(&self) -> usize {
        2 * self.n - 1
    }

    /// Number of ambient coordinates, `2n`.
    pub fn ambient_dim(&self) -> usize {
        2 * self.n
    }

    /// Number of transverse pairs `(x_j, y_j)` in a slice, `n - 1`.
    pub fn pairs(&self) -> usize {
        self.n - 1
    }
}

/// Index of `x_j` (0-based pair index) in slice coordinates.
pub fn x_index(j: usize) -> usize {
    2 * j
}

/// Index of `y_j` (0-based pair index) in slice coordinates.
pub fn y_index(j: usize) -> usize {
    2 * j + 1
}

/// Index of `z` in slice coordinates of dimension `m`.
pub fn z_index(m: usize) -> usize {
    m - 1
}

fn check_coords(expected: usize, coords: &[f64]) -> Result<(), GeometryError> {
    if coords.len() != expected {
        return Err(GeometryError::DimensionMismatch {
            expected,
            got: coords.len(),
        });
    }
    if !coords.iter().all(|c| c.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    Ok(())
}

/// A validated point of a slice `R^{2n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePoint {
    coords: Vec<f64>,
}

impl StatePoint {
    pub fn new(dim: Dimension, coords: Vec<f64>) -> Result<Self, GeometryError> {
        check_coords(dim.state_dim(), &coords)?;
        Ok(StatePoint { coords })
    }

    pub fn origin(dim: Dimension) -> Self {
        StatePoint {
            coords: vec![0.0; dim.state_dim()],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.coords
    }

    pub fn x(&self, j: usize) -> f64 {
        self.coords[x_index(j)]
    }

    pub fn y(&self, j: usize) -> f64 {
        self.coords[y_index(j)]
    }

    pub fn z(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }
}

/// A validated point of the ambient `R^{2n}`, ordered `(w, z, x_1, y_1, ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientPoint {
    coords: Vec<f64>,
}

impl AmbientPoint {
    pub fn new(dim: Dimension, coords: Vec<f64>) -> Result<Self, GeometryError> {
        check_coords(dim.ambient_dim(), &coords)?;
        Ok(AmbientPoint { coords })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.coords
    }

    pub fn w(&self) -> f64 {
        self.coords[0]
    }

    pub fn z(&self) -> f64 {
        self.coords[1]
    }

    pub fn x(&self, j: usize) -> f64 {
        self.coords[2 + 2 * j]
    }

    pub fn y(&self, j: usize) -> f64 {
        self.coords[3 + 2 * j]
    }
}

/// Coefficients of a 1-form in the fixed coordinate order.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector(pub DVector<f64>);

impl Covector {
    pub fn pair(&self, v: &[f64]) -> f64 {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// An antisymmetric bilinear form, `form(e_i, e_j) = mat[(i, j)]`.
///
/// Antisymmetry is enforced by construction: entries are given for `i < j`
/// and mirrored with exact negation, so `mat + mat^T` is exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm {
    mat: DMatrix<f64>,
}

impl TwoForm {
    pub fn from_upper(m: usize, entry: impl Fn(usize, usize) -> f64) -> Self {
        let mut mat = DMatrix::zeros(m, m);
        for i in 0..m {
            for j in (i + 1)..m {
                let v = entry(i, j);
                mat[(i, j)] = v;
                mat[(j, i)] = -v;
            }
        }
        TwoForm { mat }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn apply(&self, u: &[f64], v: &[f64]) -> f64 {
        let m = self.mat.nrows();
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                acc += u[i] * self.mat[(i, j)] * v[j];
            }
        }
        acc
    }
}

/// A positive scalar profile on a slice, with an analytic gradient.
pub trait Profile: Sync {
    fn state_dim(&self) -> usize;

    /// Value at `p`; the gradient is written into `grad`.
    fn value_grad(&self, p: &[f64], grad: &mut [f64]) -> f64;

    fn value(&self, p: &[f64]) -> f64 {
        let mut grad = vec![0.0; self.state_dim()];
        self.value_grad(p, &mut grad)
    }

    /// True when the evaluator short-circuits to exactly `(1, 0)` at `p`.
    fn is_unit_at(&self, _p: &[f64]) -> bool {
        false
    }
}

/// The constant profile `H = 1`: rescaling by it is the identity.
#[derive(Debug, Clone, Copy)]
pub struct UnitProfile {
    pub state_dim: usize,
}

impl Profile for UnitProfile {
    fn state_dim(&self) -> usize {
        self.state_dim
    }

    fn value_grad(&self, _p: &[f64], grad: &mut [f64]) -> f64 {
        grad.fill(0.0);
        1.0
    }

    fn is_unit_at(&self, _p: &[f64]) -> bool {
        true
    }
}

/// A contact form given by pointwise coefficient and exterior-derivative
/// evaluators in the fixed slice coordinates.
pub trait ContactForm: Sync {
    fn state_dim(&self) -> usize;

    /// Coefficients of `alpha` at `p`, written into `out` (length `2n - 1`).
    fn alpha(&self, p: &[f64], out: &mut [f64]);

    /// Matrix of `dalpha` at `p`: `out[(i, j)] = dalpha(e_i, e_j)`.
    fn dalpha(&self, p: &[f64], out: &mut DMatrix<f64>);
}

/// Writes the coefficients of `alpha_st` at `p` into `out`:
/// `dx_j`-coefficient `-y_j/2`, `dy_j`-coefficient `x_j/2`, `dz`-coefficient 1.
pub fn alpha_st_coeffs(p: &[f64], out: &mut [f64]) {
    let m = p.len();
    for j in 0..(m - 1) / 2 {
        out[x_index(j)] = -p[y_index(j)] / 2.0;
        out[y_index(j)] = p[x_index(j)] / 2.0;
    }
    out[m - 1] = 1.0;
}

/// Writes the constant matrix of `dalpha_st = sum_j dx_j ^ dy_j` into `out`.
pub fn dalpha_st_matrix(m: usize, out: &mut DMatrix<f64>) {
    out.fill(0.0);
    for j in 0..(m - 1) / 2 {
        out[(x_index(j), y_index(j))] = 1.0;
        out[(y_index(j), x_index(j))] = -1.0;
    }
}

/// The standard contact form `alpha_st` on a slice.
#[derive(Debug, Clone, Copy)]
pub struct AlphaStandard {
    pub dim: Dimension,
}

impl ContactForm for AlphaStandard {
    fn state_dim(&self) -> usize {
        self.dim.state_dim()
    }

    fn alpha(&self, p: &[f64], out: &mut [f64]) {
        alpha_st_coeffs(p, out);
    }

    fn dalpha(&self, _p: &[f64], out: &mut DMatrix<f64>) {
        dalpha_st_matrix(self.state_dim(), out);
    }
}

/// Public wrapper: validated evaluation of `alpha_st`.
pub fn eval_alpha_st(p: &StatePoint) -> Covector {
    let mut out = vec![0.0; p.as_slice().len()];
    alpha_st_coeffs(p.as_slice(), &mut out);
    Covector(DVector::from_vec(out))
}

/// Public wrapper: validated evaluation of `dalpha_st`.
pub fn eval_dalpha_st(p: &StatePoint) -> TwoForm {
    let m = p.as_slice().len();
    TwoForm::from_upper(m, |i, j| {
        if i % 2 == 0 && i + 1 == j && j < m - 1 {
            1.0
        } else {
            0.0
        }
    })
}

/// The rescaled contact form `alpha_st / H` for a positive profile `H`.
///
/// `d(alpha_st / H) = dalpha_st / H - dH ^ alpha_st / H^2`.
pub struct ScaledContact<P: Profile> {
    pub profile: P,
}

impl<P: Profile> ContactForm for ScaledContact<P> {
    fn state_dim(&self) -> usize {
        self.profile.state_dim()
    }

    fn alpha(&self, p: &[f64], out: &mut [f64]) {
        alpha_st_coeffs(p, out);
        let h = self.profile.value(p);
        for c in out.iter_mut() {
            *c /= h;
        }
    }

    fn dalpha(&self, p: &[f64], out: &mut DMatrix<f64>) {
        let m = self.state_dim();
        let mut a = vec![0.0; m];
        alpha_st_coeffs(p, &mut a);
        let mut g = vec![0.0; m];
        let h = self.profile.value_grad(p, &mut g);
        dalpha_st_matrix(m, out);
        let h2 = h * h;
        for i in 0..m {
            for j in 0..m {
                out[(i, j)] = out[(i, j)] / h - (g[i] * a[j] - g[j] * a[i]) / h2;
            }
        }
    }
}

/// A diagonal-linear map with offset, `q = diag * p + offset`.
///
/// All coordinate changes used by the construction (mirror reflection,
/// anisotropic rescaling, translations and their compositions) have this
/// shape, which keeps pullbacks exact: covectors pull back by componentwise
/// multiplication, bilinear-form matrices by row and column scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    pub diag: Vec<f64>,
    pub offset: Vec<f64>,
}

impl AffineMap {
    pub fn identity(m: usize) -> Self {
        AffineMap {
            diag: vec![1.0; m],
            offset: vec![0.0; m],
        }
    }

    /// The mirror reflection `(x, y, z) -> (x, y, -z)`.
    pub fn mirror(m: usize) -> Self {
        let mut map = AffineMap::identity(m);
        map.diag[m - 1] = -1.0;
        map
    }

    /// The anisotropic rescaling `(x, y, z) -> (lambda x, lambda y, lambda^2 z)`.
    pub fn rescale(m: usize, lambda: f64) -> Result<Self, GeometryError> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(GeometryError::NonPositiveScale(lambda));
        }
        let mut map = AffineMap::identity(m);
        for d in map.diag.iter_mut().take(m - 1) {
            *d = lambda;
        }
        map.diag[m - 1] = lambda * lambda;
        Ok(map)
    }

    pub fn apply(&self, p: &[f64], out: &mut [f64]) {
        for i in 0..p.len() {
            out[i] = self.diag[i] * p[i] + self.offset[i];
        }
    }

    pub fn apply_vec(&self, p: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; p.len()];
        self.apply(p, &mut out);
        out
    }

    pub fn inverse(&self) -> Self {
        let diag: Vec<f64> = self.diag.iter().map(|d| 1.0 / d).collect();
        let offset = self
            .offset
            .iter()
            .zip(&diag)
            .map(|(o, d)| -o * d)
            .collect();
        AffineMap { diag, offset }
    }

    /// Pushforward of a vector: `dphi(v) = diag * v`.
    pub fn push_vector(&self, v: &[f64], out: &mut [f64]) {
        for i in 0..v.len() {
            out[i] = self.diag[i] * v[i];
        }
    }
}

/// Mirror image of a slice point (negated `z`).
pub fn mirror_map(p: &StatePoint) -> StatePoint {
    let mut coords = p.as_slice().to_vec();
    let last = coords.len() - 1;
    coords[last] = -coords[last];
    StatePoint { coords }
}

/// Rescaled slice point `(lambda x, lambda y, lambda^2 z)`.
pub fn rescale_map(lambda: f64, p: &StatePoint) -> Result<StatePoint, GeometryError> {
    let map = AffineMap::rescale(p.as_slice().len(), lambda)?;
    Ok(StatePoint {
        coords: map.apply_vec(p.as_slice()),
    })
}

/// Pullback `phi^* alpha` of a contact form under a diagonal affine map.
pub struct PulledBackContact<'a, F: ContactForm + ?Sized> {
    pub inner: &'a F,
    pub map: AffineMap,
}

impl<F: ContactForm + ?Sized> ContactForm for PulledBackContact<'_, F> {
    fn state_dim(&self) -> usize {
        self.inner.state_dim()
    }

    fn alpha(&self, p: &[f64], out: &mut [f64]) {
        let q = self.map.apply_vec(p);
        self.inner.alpha(&q, out);
        for (c, d) in out.iter_mut().zip(&self.map.diag) {
            *c *= d;
        }
    }

    fn dalpha(&self, p: &[f64], out: &mut DMatrix<f64>) {
        let q = self.map.apply_vec(p);
        self.inner.dalpha(&q, out);
        let m = self.state_dim();
        for i in 0..m {
            for j in 0..m {
                out[(i, j)] *= self.map.diag[i] * self.map.diag[j];
            }
        }
    }
}

fn solve_checked(
    a: DMatrix<f64>,
    rhs: DVector<f64>,
) -> Result<DVector<f64>, GeometryError> {
    let lu = a.clone().lu();
    let sol = lu
        .solve(&rhs)
        .ok_or(GeometryError::SingularSystem { residual: f64::INFINITY })?;
    let resid = &a * &sol - &rhs;
    let scale = 1.0 + sol.amax();
    let residual = resid.amax() / scale;
    if !residual.is_finite() || residual > tolerances::SINGULAR_RESIDUAL {
        return Err(GeometryError::SingularSystem { residual });
    }
    Ok(sol)
}

/// Reeb field of a contact form at `p`, from the bordered defining system.
///
/// Fails with [`GeometryError::SingularSystem`] when the stacked equations do
/// not determine a unique field (the form is not contact at `p`).
pub fn reeb_field(form: &(impl ContactForm + ?Sized), p: &[f64]) -> Result<Vec<f64>, GeometryError> {
    let m = form.state_dim();
    check_coords(m, p)?;
    let mut a = vec![0.0; m];
    form.alpha(p, &mut a);
    let mut dal = DMatrix::zeros(m, m);
    form.dalpha(p, &mut dal);

    let mut sys = DMatrix::zeros(m + 1, m + 1);
    for i in 0..m {
        for j in 0..m {
            // (dalpha^T)[i][j]: coefficient of R_j in the covector entry
            // dalpha(R, e_i).
            sys[(i, j)] = dal[(j, i)];
        }
        sys[(i, m)] = a[i];
        sys[(m, i)] = a[i];
    }
    let mut rhs = DVector::zeros(m + 1);
    rhs[m] = 1.0;

    let sol = solve_checked(sys, rhs)?;
    Ok(sol.as_slice()[..m].to_vec())
}

/// A real-valued function on ambient space with an analytic gradient.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;
    fn value(&self, p: &[f64]) -> f64;
    fn gradient(&self, p: &[f64], out: &mut [f64]);
}

/// A constant-coefficient symplectic form given by its matrix.
pub trait SymplecticForm: Sync {
    fn dim(&self) -> usize;
    fn matrix_at(&self, p: &[f64], out: &mut DMatrix<f64>);
}

/// `omega_st = dw ^ dz + sum_j dx_j ^ dy_j` in ambient coordinates.
#[derive(Debug, Clone, Copy)]
pub struct OmegaStandard {
    pub dim: Dimension,
}

impl OmegaStandard {
    pub fn two_form(&self) -> TwoForm {
        let d = self.dim.ambient_dim();
        TwoForm::from_upper(d, |i, j| if i % 2 == 0 && j == i + 1 { 1.0 } else { 0.0 })
    }
}

impl SymplecticForm for OmegaStandard {
    fn dim(&self) -> usize {
        self.dim.ambient_dim()
    }

    fn matrix_at(&self, _p: &[f64], out: &mut DMatrix<f64>) {
        out.fill(0.0);
        let d = self.dim.ambient_dim();
        let mut i = 0;
        while i + 1 < d {
            out[(i, i + 1)] = 1.0;
            out[(i + 1, i)] = -1.0;
            i += 2;
        }
    }
}

/// The symplectization form `d(e^t alpha)` over a contact slice, in
/// coordinates `(t, slice...)`:
/// `d(e^t alpha) = e^t dt ^ alpha + e^t dalpha`.
pub struct Symplectization<'a, F: ContactForm + ?Sized> {
    pub base: &'a F,
}

impl<F: ContactForm + ?Sized> SymplecticForm for Symplectization<'_, F> {
    fn dim(&self) -> usize {
        self.base.state_dim() + 1
    }

    fn matrix_at(&self, p: &[f64], out: &mut DMatrix<f64>) {
        let m = self.base.state_dim();
        let t = p[0];
        let et = t.exp();
        let mut a = vec![0.0; m];
        self.base.alpha(&p[1..], &mut a);
        let mut dal = DMatrix::zeros(m, m);
        self.base.dalpha(&p[1..], &mut dal);
        out.fill(0.0);
        for i in 0..m {
            out[(0, 1 + i)] = et * a[i];
            out[(1 + i, 0)] = -et * a[i];
            for j in 0..m {
                out[(1 + i, 1 + j)] = et * dal[(i, j)];
            }
        }
    }
}

/// Hamiltonian field of `K` at `p`: the unique solution of
/// `omega(X, .) = -dK`.
pub fn hamiltonian_field(
    omega: &(impl SymplecticForm + ?Sized),
    k: &(impl ScalarField + ?Sized),
    p: &[f64],
) -> Result<Vec<f64>, GeometryError> {
    let d = omega.dim();
    check_coords(d, p)?;
    let mut w = DMatrix::zeros(d, d);
    omega.matrix_at(p, &mut w);
    let mut dk = vec![0.0; d];
    k.gradient(p, &mut dk);
    // omega(X, e_i) = X^T W e_i, so the covector of i_X omega is W^T X.
    let sys = w.transpose();
    let rhs = DVector::from_iterator(d, dk.iter().map(|g| -g));
    let sol = solve_checked(sys, rhs)?;
    Ok(sol.as_slice().to_vec())
}

/// The Liouville field `Y = 1/2 (w d_w + z d_z) + 1/2 sum (x_j d_x_j + y_j d_y_j)`,
/// i.e. `p / 2` in ambient coordinates.  It satisfies `L_Y omega_st = omega_st`.
pub fn liouville_field(p: &AmbientPoint) -> Vec<f64> {
    p.as_slice().iter().map(|c| c / 2.0).collect()
}

/// Restriction of `i_Y omega_st` to the hypersurface `{w = 2}`, expressed in
/// slice coordinates.  At `w = 2` this recovers exactly the coefficients of
/// `alpha_st` at the projected slice point, which is what makes the
/// hypersurface contact type.
pub fn contact_type_restriction(p: &AmbientPoint) -> Result<Covector, GeometryError> {
    if (p.w() - 2.0).abs() > 1e-12 {
        return Err(GeometryError::OffContactSlice(p.w()));
    }
    let d = p.as_slice().len();
    let omega = OmegaStandard {
        dim: Dimension::new(d / 2)?,
    };
    let mut w = DMatrix::zeros(d, d);
    omega.matrix_at(p.as_slice(), &mut w);
    let y = liouville_field(p);
    // (i_Y omega)_i = omega(Y, e_i) = (W^T Y)_i.
    let mut amb = vec![0.0; d];
    for i in 0..d {
        let mut acc = 0.0;
        for j in 0..d {
            acc += w[(j, i)] * y[j];
        }
        amb[i] = acc;
    }
    // Reorder (w, z, x_1, y_1, ...) -> (x_1, y_1, ..., z), dropping dw.
    let m = d - 1;
    let mut out = vec![0.0; m];
    out[m - 1] = amb[1];
    for j in 0..(d - 2) / 2 {
        out[x_index(j)] = amb[2 + 2 * j];
        out[y_index(j)] = amb[3 + 2 * j];
    }
    Ok(Covector(DVector::from_vec(out)))
}

/// Graph embedding of a slice into its symplectization: `p -> (f(p), p)`.
pub fn graph_embed(f: impl Fn(&[f64]) -> f64, p: &StatePoint) -> (f64, StatePoint) {
    (f(p.as_slice()), p.clone())
}

/// Central finite-difference gradient, used as a test oracle against
/// analytic gradients.
pub fn fd_gradient(f: impl Fn(&[f64]) -> f64, p: &[f64], h: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len()];
    let mut q = p.to_vec();
    for i in 0..p.len() {
        q[i] = p[i] + h;
        let up = f(&q);
        q[i] = p[i] - h;
        let dn = f(&q);
        q[i] = p[i];
        out[i] = (up - dn) / (2.0 * h);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const DIM3: Dimension = Dimension { n: 3 };

    /// A smooth positive bump profile with analytic gradient, for solver tests.
    struct GaussLump;

    impl Profile for GaussLump {
        fn state_dim(&self) -> usize {
            5
        }

        fn value_grad(&self, p: &[f64], grad: &mut [f64]) -> f64 {
            let r2: f64 = p.iter().map(|c| c * c).sum();
            let e = 0.3 * (-r2).exp();
            for i in 0..5 {
                grad[i] = -2.0 * p[i] * e;
            }
            1.0 + e
        }
    }

    fn random_points(count: usize, scale: f64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..count)
            .map(|_| sample::in_centered_cube(&mut rng, 5, scale))
            .collect()
    }

    #[test]
    fn reeb_of_alpha_st_is_vertical_exactly() {
        let form = AlphaStandard { dim: DIM3 };
        for p in random_points(200, 1.8) {
            let r = reeb_field(&form, &p).unwrap();
            assert_eq!(&r[..4], &[0.0, 0.0, 0.0, 0.0], "at {p:?}");
            assert_eq!(r[4], 1.0, "at {p:?}");
        }
    }

    #[test]
    fn reeb_defining_residuals_for_rescaled_form() {
        let form = ScaledContact { profile: GaussLump };
        for p in random_points(100, 1.5) {
            let r = reeb_field(&form, &p).unwrap();
            let mut a = vec![0.0; 5];
            form.alpha(&p, &mut a);
            let pairing: f64 = a.iter().zip(&r).map(|(c, v)| c * v).sum();
            assert!((pairing - 1.0).abs() <= tolerances::FIELD_RESIDUAL);
            let mut dal = DMatrix::zeros(5, 5);
            form.dalpha(&p, &mut dal);
            for i in 0..5 {
                let entry: f64 = (0..5).map(|j| dal[(j, i)] * r[j]).sum();
                assert!(entry.abs() <= tolerances::FIELD_RESIDUAL);
            }
        }
    }

    /// Closed-form oracle: for `alpha_st / H` the Reeb field is
    /// `((x_j/2) H_z - H_y_j, (y_j/2) H_z + H_x_j, H - 1/2 sum (x H_x + y H_y))`.
    #[test]
    fn reeb_of_rescaled_form_matches_closed_form() {
        let profile = GaussLump;
        let form = ScaledContact { profile: GaussLump };
        for p in random_points(100, 1.5) {
            let r = reeb_field(&form, &p).unwrap();
            let mut g = vec![0.0; 5];
            let h = profile.value_grad(&p, &mut g);
            let mut radial = 0.0;
            for j in 0..2 {
                radial += p[x_index(j)] * g[x_index(j)] + p[y_index(j)] * g[y_index(j)];
            }
            for j in 0..2 {
                let ex = p[x_index(j)] / 2.0 * g[4] - g[y_index(j)];
                let ey = p[y_index(j)] / 2.0 * g[4] + g[x_index(j)];
                assert_abs_diff_eq!(r[x_index(j)], ex, epsilon = 1e-10);
                assert_abs_diff_eq!(r[y_index(j)], ey, epsilon = 1e-10);
            }
            assert_abs_diff_eq!(r[4], h - radial / 2.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn reeb_rejects_degenerate_form() {
        // A 1-form with dalpha = 0 everywhere is nowhere contact.
        struct Flat;
        impl ContactForm for Flat {
            fn state_dim(&self) -> usize {
                5
            }
            fn alpha(&self, _p: &[f64], out: &mut [f64]) {
                out.fill(0.0);
                out[4] = 1.0;
            }
            fn dalpha(&self, _p: &[f64], out: &mut DMatrix<f64>) {
                out.fill(0.0);
            }
        }
        let err = reeb_field(&Flat, &[0.1, 0.2, 0.3, 0.4, 0.5]).unwrap_err();
        assert!(matches!(err, GeometryError::SingularSystem { .. }));
    }

    #[test]
    fn negative_reeb_of_mirrored_form_is_vertical_exactly() {
        let inner = AlphaStandard { dim: DIM3 };
        let mirrored = PulledBackContact {
            inner: &inner,
            map: AffineMap::mirror(5),
        };
        for p in random_points(100, 1.8) {
            let r = reeb_field(&mirrored, &p).unwrap();
            assert_eq!(&r[..4], &[0.0, 0.0, 0.0, 0.0]);
            assert_eq!(r[4], -1.0);
            let neg: Vec<f64> = r.iter().map(|v| -v).collect();
            assert_eq!(neg[4], 1.0);
        }
    }

    #[test]
    fn hamiltonian_field_of_coordinate_w_is_vertical() {
        struct CoordW;
        impl ScalarField for CoordW {
            fn dim(&self) -> usize {
                6
            }
            fn value(&self, p: &[f64]) -> f64 {
                p[0]
            }
            fn gradient(&self, _p: &[f64], out: &mut [f64]) {
                out.fill(0.0);
                out[0] = 1.0;
            }
        }
        let omega = OmegaStandard { dim: DIM3 };
        let x = hamiltonian_field(&omega, &CoordW, &[2.0, 0.3, 0.1, -0.4, 0.2, 0.5]).unwrap();
        assert_eq!(x, vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn contact_type_restriction_recovers_alpha_st() {
        let ambient = AmbientPoint::new(
            DIM3,
            vec![2.0, 0.7, 0.3, -0.2, 0.9, 0.4],
        )
        .unwrap();
        let restricted = contact_type_restriction(&ambient).unwrap();
        let slice = StatePoint::new(DIM3, vec![0.3, -0.2, 0.9, 0.4, 0.7]).unwrap();
        let expected = eval_alpha_st(&slice);
        for i in 0..5 {
            assert_eq!(restricted.0[i], expected.0[i]);
        }
        let off = AmbientPoint::new(DIM3, vec![1.9, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            contact_type_restriction(&off),
            Err(GeometryError::OffContactSlice(_))
        ));
    }

    /// Finite-difference Lie derivative oracle: the Liouville flow is
    /// `p -> e^{t/2} p` exactly, and `(phi_t^* omega_st - omega_st)/t -> omega_st`.
    #[test]
    fn liouville_field_expands_omega_at_unit_rate() {
        let omega = OmegaStandard { dim: DIM3 }.two_form();
        let h = 1e-3;
        let scale_up = (h / 2.0_f64).exp();
        let scale_dn = (-h / 2.0_f64).exp();
        // (phi_t)^* omega (u, v) = omega(Dphi u, Dphi v) = e^t omega(u, v).
        let m = omega.matrix();
        for i in 0..6 {
            for j in 0..6 {
                let pulled_up = scale_up * scale_up * m[(i, j)];
                let pulled_dn = scale_dn * scale_dn * m[(i, j)];
                let lie = (pulled_up - pulled_dn) / (2.0 * h);
                assert_abs_diff_eq!(lie, m[(i, j)], epsilon = tolerances::FD_GRADIENT_TOL);
            }
        }
    }

    #[test]
    fn rescale_pulls_alpha_st_back_conformally() {
        for lambda in [0.5, 1.0, 2.0, 1.7] {
            let inner = AlphaStandard { dim: DIM3 };
            let pulled = PulledBackContact {
                inner: &inner,
                map: AffineMap::rescale(5, lambda).unwrap(),
            };
            for p in random_points(20, 1.2) {
                let mut got = vec![0.0; 5];
                pulled.alpha(&p, &mut got);
                let mut base = vec![0.0; 5];
                alpha_st_coeffs(&p, &mut base);
                for i in 0..5 {
                    assert_abs_diff_eq!(got[i], lambda * lambda * base[i], epsilon = 1e-12);
                }
            }
        }
        assert!(matches!(
            AffineMap::rescale(5, 0.0),
            Err(GeometryError::NonPositiveScale(_))
        ));
        assert!(matches!(
            AffineMap::rescale(5, -1.0),
            Err(GeometryError::NonPositiveScale(_))
        ));
    }

    #[test]
    fn dimension_validation() {
        assert!(Dimension::new(2).is_err());
        let d = Dimension::new(4).unwrap();
        assert_eq!(d.state_dim(), 7);
        assert_eq!(d.ambient_dim(), 8);
        assert!(StatePoint::new(d, vec![0.0; 6]).is_err());
        assert!(StatePoint::new(d, vec![f64::NAN; 7]).is_err());
    }

    #[test]
    fn two_form_is_antisymmetric_exactly() {
        let form = TwoForm::from_upper(5, |i, j| (i as f64 + 1.3) * (j as f64 - 0.7));
        let m = form.matrix();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(m[(i, j)], -m[(j, i)]);
            }
        }
    }

    proptest! {
        #[test]
        fn mirror_is_an_involution(coords in proptest::collection::vec(-5.0f64..5.0, 5)) {
            let p = StatePoint::new(DIM3, coords).unwrap();
            let twice = mirror_map(&mirror_map(&p));
            prop_assert_eq!(twice.as_slice(), p.as_slice());
        }

        #[test]
        fn rescale_round_trips(coords in proptest::collection::vec(-3.0f64..3.0, 5),
                               lambda in 0.1f64..4.0) {
            let p = StatePoint::new(DIM3, coords).unwrap();
            let there = rescale_map(lambda, &p).unwrap();
            let back = rescale_map(1.0 / lambda, &there).unwrap();
            for i in 0..5 {
                prop_assert!((back.as_slice()[i] - p.as_slice()[i]).abs() <= 1e-12);
            }
        }

        #[test]
        fn reeb_of_alpha_st_vertical_everywhere(coords in proptest::collection::vec(-1.9f64..1.9, 5)) {
            let form = AlphaStandard { dim: DIM3 };
            let r = reeb_field(&form, &coords).unwrap();
            prop_assert_eq!(&r[..4], &[0.0, 0.0, 0.0, 0.0][..]);
            prop_assert_eq!(r[4], 1.0);
        }
    }
}
