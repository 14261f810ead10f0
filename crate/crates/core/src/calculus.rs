//! Slice derivatives, regularity checking and the Cullen operator residual.

use num_complex::Complex64;

use crate::algebra::{ComplexifiedQuaternion, ImaginaryUnit, Quaternion, ZERO};
use crate::error::{Error, Result};
use crate::slice::SliceFunction;
use crate::stem::{components_of, StemBackend, StemFunction};

/// Numerical parameters for finite-difference calculus on callable stems.
#[derive(Clone, Copy, Debug)]
pub struct DerivativeConfig {
    /// Finite-difference step.
    pub fd_step: f64,
    /// Residual threshold for regularity verdicts.
    pub tol: f64,
    /// Per-axis sampling resolution for residual scans.
    pub grid: usize,
}

impl Default for DerivativeConfig {
    fn default() -> Self {
        Self {
            fd_step: 1e-5,
            tol: 1e-6,
            grid: 32,
        }
    }
}

/// Central second-order partial derivatives of the stem at `z`, falling back
/// to one-sided stencils within `2·step` of a region boundary. Stencils never
/// cross the real axis unless the domain meets it, because the two halves of
/// a punctured domain are independent.
fn stem_partials(
    stem: &StemFunction,
    z: Complex64,
    h: f64,
) -> (ComplexifiedQuaternion, ComplexifiedQuaternion) {
    let domain = stem.domain();
    let cross_ok = domain.contains_real();
    let ok = |p: Complex64| -> bool {
        if !domain.contains_z(p) {
            return false;
        }
        cross_ok || p.im * z.im > 0.0 || p.im == z.im
    };
    let diff = |dir: Complex64| -> ComplexifiedQuaternion {
        let (p1, m1) = (z + dir * h, z - dir * h);
        if ok(p1) && ok(m1) {
            (stem.eval_unchecked(p1) - stem.eval_unchecked(m1)) * (0.5 / h)
        } else if ok(p1) && ok(z + dir * (2.0 * h)) {
            // one-sided, second order
            (stem.eval_unchecked(z) * -3.0 + stem.eval_unchecked(p1) * 4.0
                - stem.eval_unchecked(z + dir * (2.0 * h)))
                * (0.5 / h)
        } else if ok(m1) && ok(z - dir * (2.0 * h)) {
            (stem.eval_unchecked(z) * 3.0 - stem.eval_unchecked(m1) * 4.0
                + stem.eval_unchecked(z - dir * (2.0 * h)))
                * (0.5 / h)
        } else if ok(p1) {
            (stem.eval_unchecked(p1) - stem.eval_unchecked(z)) * (1.0 / h)
        } else if ok(m1) {
            (stem.eval_unchecked(z) - stem.eval_unchecked(m1)) * (1.0 / h)
        } else {
            ComplexifiedQuaternion::zero()
        }
    };
    (
        diff(Complex64::new(1.0, 0.0)),
        diff(Complex64::new(0.0, 1.0)),
    )
}

/// Finite-difference `∂F/∂z = ½(∂F/∂α - √-1 ∂F/∂β)`.
pub fn stem_dz_fd(stem: &StemFunction, z: Complex64, cfg: &DerivativeConfig) -> ComplexifiedQuaternion {
    let (da, db) = stem_partials(stem, z, cfg.fd_step);
    (da - db.times_sqrt_minus_one()) * 0.5
}

/// Finite-difference `∂F/∂z̄ = ½(∂F/∂α + √-1 ∂F/∂β)`.
pub fn stem_dzbar_fd(
    stem: &StemFunction,
    z: Complex64,
    cfg: &DerivativeConfig,
) -> ComplexifiedQuaternion {
    let (da, db) = stem_partials(stem, z, cfg.fd_step);
    (da + db.times_sqrt_minus_one()) * 0.5
}

/// Slice derivative `∂f/∂x = I(∂F/∂z)`.
///
/// Exact coefficient shift for polynomial stems, zero for constants, finite
/// differences for callable backends.
pub fn d_dx(f: &SliceFunction, cfg: &DerivativeConfig) -> SliceFunction {
    let stem = f.stem();
    let backend = match stem.backend() {
        StemBackend::Polynomial(coeffs) => StemBackend::Polynomial(
            coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, a)| *a * n as f64)
                .collect(),
        ),
        StemBackend::Constant(_, _) => StemBackend::Constant(ZERO, ZERO),
        StemBackend::Callable(_) => {
            let (inner, cfg) = (stem.clone(), *cfg);
            StemBackend::Callable(std::sync::Arc::new(move |z| stem_dz_fd(&inner, z, &cfg)))
        }
    };
    SliceFunction::induce(StemFunction::new(backend, stem.domain().clone()))
}

/// Conjugate slice derivative `∂f/∂x^c = I(∂F/∂z̄)`; identically zero iff `f`
/// is slice regular.
pub fn d_dxc(f: &SliceFunction, cfg: &DerivativeConfig) -> SliceFunction {
    let stem = f.stem();
    let backend = match stem.backend() {
        // Holomorphic backends have exactly zero conjugate derivative.
        StemBackend::Polynomial(_) | StemBackend::Constant(_, _) => {
            StemBackend::Constant(ZERO, ZERO)
        }
        StemBackend::Callable(_) => {
            let (inner, cfg) = (stem.clone(), *cfg);
            StemBackend::Callable(std::sync::Arc::new(move |z| stem_dzbar_fd(&inner, z, &cfg)))
        }
    };
    SliceFunction::induce(StemFunction::new(backend, stem.domain().clone()))
}

/// Auditable regularity verdict: the maximum conjugate-derivative residual
/// over the sample grid and where it occurred.
#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub max_residual: f64,
    pub worst_point: Option<Complex64>,
    pub pass: bool,
    /// True when the verdict follows from the backend structure rather than
    /// sampling.
    pub structural: bool,
}

/// Checks slice regularity: polynomial and constant stems pass structurally;
/// callable stems are scanned for `|∂F/∂z̄|` and for the discrete
/// Cauchy-Riemann residual of each complex component curve.
pub fn is_slice_regular(f: &SliceFunction, cfg: &DerivativeConfig) -> RegularityReport {
    match f.stem().backend() {
        StemBackend::Polynomial(_) | StemBackend::Constant(_, _) => RegularityReport {
            max_residual: 0.0,
            worst_point: None,
            pass: true,
            structural: true,
        },
        StemBackend::Callable(_) => {
            let stem = f.stem();
            let points = stem.domain().sample_grid_clipped(cfg.grid, 8.0);
            let mut max_residual = 0.0;
            let mut worst_point = None;
            for z in points {
                let (da, db) = stem_partials(stem, z, cfg.fd_step);
                let dzbar = (da + db.times_sqrt_minus_one()) * 0.5;
                // Componentwise Cauchy-Riemann residual of the C⁴ curve; the
                // curve is holomorphic exactly when the stem is.
                let ca = components_of(da);
                let cb = components_of(db);
                let comp_res = (0..4)
                    .map(|k| ((ca[k] + Complex64::i() * cb[k]) * 0.5).norm())
                    .fold(0.0_f64, f64::max);
                let r = dzbar.abs().max(comp_res);
                if r > max_residual {
                    max_residual = r;
                    worst_point = Some(z);
                }
            }
            RegularityReport {
                max_residual,
                worst_point,
                pass: max_residual <= cfg.tol,
                structural: false,
            }
        }
    }
}

/// Finite-difference Cullen operator `½(∂/∂α + I ∂/∂β) f|_I` at `x ∈ D_I`;
/// approximately zero for slice regular `f`.
pub fn cullen_residual(
    f: &SliceFunction,
    unit: ImaginaryUnit,
    x: Quaternion,
    cfg: &DerivativeConfig,
) -> Result<Quaternion> {
    let (alpha, beta, split_unit) = x.split();
    // x must lie on C_I (possibly with the opposite orientation, which is the
    // same complex plane).
    let beta_signed = match split_unit {
        None => 0.0,
        Some(u) => {
            let d = u.dot(unit).abs();
            if (1.0 - d) > 1e-9 {
                return Err(Error::Argument("x does not lie on the plane C_I".into()));
            }
            if u.dot(unit) > 0.0 {
                beta
            } else {
                -beta
            }
        }
    };
    let domain = f.domain();
    let at = |a: f64, b: f64| -> Result<Quaternion> {
        f.eval(Quaternion::real(a) + unit.as_quaternion() * b)
    };
    let cross_ok = domain.contains_real();
    let ok = |a: f64, b: f64| -> bool {
        if !domain.contains_z(Complex64::new(a, b)) {
            return false;
        }
        cross_ok || b * beta_signed > 0.0
    };
    let h = cfg.fd_step;
    let diff = |da: f64, db: f64| -> Result<Quaternion> {
        let (a1, b1) = (alpha + da * h, beta_signed + db * h);
        let (a2, b2) = (alpha - da * h, beta_signed - db * h);
        if ok(a1, b1) && ok(a2, b2) {
            Ok((at(a1, b1)? - at(a2, b2)?) * (0.5 / h))
        } else if ok(a1, b1) && ok(alpha + 2.0 * da * h, beta_signed + 2.0 * db * h) {
            Ok((at(alpha, beta_signed)? * -3.0 + at(a1, b1)? * 4.0
                - at(alpha + 2.0 * da * h, beta_signed + 2.0 * db * h)?)
                * (0.5 / h))
        } else if ok(a2, b2) && ok(alpha - 2.0 * da * h, beta_signed - 2.0 * db * h) {
            Ok((at(alpha, beta_signed)? * 3.0 - at(a2, b2)? * 4.0
                + at(alpha - 2.0 * da * h, beta_signed - 2.0 * db * h)?)
                * (0.5 / h))
        } else {
            Err(Error::OutOfDomain(
                "finite-difference neighborhood exits the semislice".into(),
            ))
        }
    };
    let ga = diff(1.0, 0.0)?;
    let gb = diff(0.0, 1.0)?;
    Ok((ga + unit.as_quaternion() * gb) * 0.5)
}
