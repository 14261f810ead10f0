//! Slice functions `f = I(F)` and the representation formula.

use num_complex::Complex64;

use crate::algebra::{ImaginaryUnit, Quaternion};
use crate::domain::CircularDomain;
use crate::error::{Error, Result};
use crate::stem::{StemBackend, StemFunction};

/// A quaternionic function of one quaternionic variable induced by a stem:
/// `f(α + βJ) = F₁(z) + J F₂(z)` with `z = α + √-1 β`.
#[derive(Clone, Debug)]
pub struct SliceFunction {
    stem: StemFunction,
}

impl SliceFunction {
    /// Wraps a stem function (the inducing map `I`).
    pub fn induce(stem: StemFunction) -> Self {
        Self { stem }
    }

    pub fn stem(&self) -> &StemFunction {
        &self.stem
    }

    pub fn domain(&self) -> &CircularDomain {
        self.stem.domain()
    }

    /// Same function restricted to another circular domain.
    pub fn restricted(&self, domain: CircularDomain) -> Self {
        Self::induce(self.stem.restricted(domain))
    }

    /// Evaluates `f` at a point of `Ω_D`.
    ///
    /// Real points use `F₁` only and require the domain to meet the real
    /// axis; there is no silent extension.
    pub fn eval(&self, x: Quaternion) -> Result<Quaternion> {
        let (alpha, beta, unit) = x.split();
        match unit {
            None => {
                if !self.domain().contains_real() || !self.domain().contains(x) {
                    return Err(Error::OutOfDomain(format!(
                        "real point {} outside domain",
                        alpha
                    )));
                }
                Ok(self.stem.eval_unchecked(Complex64::new(alpha, 0.0)).re)
            }
            Some(unit) => {
                let z = Complex64::new(alpha, beta);
                let v = self.stem.eval(z)?;
                Ok(v.re + unit.as_quaternion() * v.im)
            }
        }
    }

    /// Evaluates on the semislice `C_I⁺` at `z = α + √-1 β`, `β ≥ 0`.
    pub fn eval_slice(&self, unit: ImaginaryUnit, z: Complex64) -> Result<Quaternion> {
        if z.im < 0.0 {
            return Err(Error::Argument("semislice evaluation needs β ≥ 0".into()));
        }
        if z.im == 0.0 {
            return self.eval(Quaternion::real(z.re));
        }
        let v = self.stem.eval(z)?;
        Ok(v.re + unit.as_quaternion() * v.im)
    }

    /// One-complex-variable view `f_J⁺ = f|_{D_J⁺}`.
    pub fn restrict(&self, unit: ImaginaryUnit) -> SemisliceRestriction {
        SemisliceRestriction {
            parent: self.clone(),
            unit,
        }
    }

    /// Spherical derivative `∂_s f(x) = ½ Im(x)^{-1}(f(x) - f(x^c))`,
    /// defined off the real axis. Computed from the stem as `F₂(z)/β`, which
    /// is constant on each sphere.
    pub fn spherical_derivative(&self, x: Quaternion) -> Result<Quaternion> {
        let (alpha, beta, unit) = x.split();
        if unit.is_none() {
            return Err(Error::OutOfDomain(
                "spherical derivative undefined at real points".into(),
            ));
        }
        let v = self.stem.eval(Complex64::new(alpha, beta))?;
        Ok(v.im / beta)
    }

    /// True iff both stem components are real-valued. Exact coefficient test
    /// for polynomial and constant backends, sampled for callable.
    pub fn is_real_slice(&self, tol: f64) -> bool {
        match self.stem.backend() {
            StemBackend::Polynomial(coeffs) => coeffs.iter().all(|c| c.im_abs() <= tol),
            StemBackend::Constant(a, b) => a.im_abs() <= tol && b.im_abs() <= tol,
            StemBackend::Callable(_) => self
                .domain()
                .sample_grid_clipped(24, 8.0)
                .into_iter()
                .all(|z| {
                    let v = self.stem.eval_unchecked(z);
                    v.re.im_abs() <= tol && v.im.im_abs() <= tol
                }),
        }
    }

    /// True iff `∂f/∂x` vanishes identically, i.e. the stem is locally
    /// constant. Exact for polynomial and constant backends; callable
    /// backends are sampled on a grid plus quasi-random interior points.
    pub fn is_slice_constant(&self, tol: f64) -> bool {
        match self.stem.backend() {
            StemBackend::Polynomial(coeffs) => {
                coeffs.iter().skip(1).all(|c| c.abs() <= tol)
            }
            StemBackend::Constant(_, _) => true,
            StemBackend::Callable(_) => {
                let cfg = crate::calculus::DerivativeConfig::default();
                let mut points = self.domain().sample_grid_clipped(32, 8.0);
                // Golden-ratio scatter inside the bounding box, kept when in
                // the domain; deterministic.
                if let Some((a0, a1, b0, b1)) = self
                    .domain()
                    .bounding_box()
                    .ok()
                    .or(Some((-8.0, 8.0, 0.0, 8.0)))
                {
                    let phi = 0.6180339887498949_f64;
                    let mut u = 0.5_f64;
                    let mut v = 0.25_f64;
                    for _ in 0..64 {
                        u = (u + phi).fract();
                        v = (v + phi * phi).fract();
                        let z = Complex64::new(a0 + u * (a1 - a0), b0 + v * (b1 - b0));
                        if self.domain().contains_z(z) && z.im > 0.0 {
                            points.push(z);
                        }
                    }
                }
                points.into_iter().all(|z| {
                    crate::calculus::stem_dz_fd(&self.stem, z, &cfg).abs() <= tol
                })
            }
        }
    }
}

/// The restriction of a slice function to one semislice `D_J⁺`.
#[derive(Clone, Debug)]
pub struct SemisliceRestriction {
    parent: SliceFunction,
    unit: ImaginaryUnit,
}

impl SemisliceRestriction {
    pub fn unit(&self) -> ImaginaryUnit {
        self.unit
    }

    pub fn parent(&self) -> &SliceFunction {
        &self.parent
    }

    /// Value at `α + βJ`, `β ≥ 0`.
    pub fn eval(&self, z: Complex64) -> Result<Quaternion> {
        self.parent.eval_slice(self.unit, z)
    }
}

/// Representation formula: reconstructs `f(α + βI)` from the values
/// `vJ = f(α + βJ)` and `vK = f(α + βK)` on two distinct semislices.
///
/// The quaternion products are taken left-to-right as parenthesized:
/// `(I - K)((J - K)^{-1} vJ) - (I - J)((J - K)^{-1} vK)`. When `K = -J` the
/// specialized form `½(vJ + vK) - (I/2)(J(vJ - vK))` is used; both paths
/// agree.
///
/// The inputs are not validated against any particular slice function;
/// garbage in, garbage out.
pub fn represent(
    v_j: Quaternion,
    v_k: Quaternion,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    i: ImaginaryUnit,
) -> Result<Quaternion> {
    if (j.as_quaternion() - k.as_quaternion()).abs() <= 1e-14 {
        return Err(Error::Argument("representation formula needs J ≠ K".into()));
    }
    if (j.as_quaternion() + k.as_quaternion()).abs() <= 1e-14 {
        return Ok(represent_opposite(v_j, v_k, j, i));
    }
    Ok(represent_general(v_j, v_k, j, k, i))
}

/// The general two-semislice path of the representation formula.
pub fn represent_general(
    v_j: Quaternion,
    v_k: Quaternion,
    j: ImaginaryUnit,
    k: ImaginaryUnit,
    i: ImaginaryUnit,
) -> Quaternion {
    let (iq, jq, kq) = (i.as_quaternion(), j.as_quaternion(), k.as_quaternion());
    let inv = (jq - kq).inverse().expect("J ≠ K checked by caller");
    (iq - kq) * (inv * v_j) - (iq - jq) * (inv * v_k)
}

/// The specialized `K = -J` path: `½(vJ + vK) - (I/2)(J(vJ - vK))`.
pub fn represent_opposite(
    v_j: Quaternion,
    v_minus_j: Quaternion,
    j: ImaginaryUnit,
    i: ImaginaryUnit,
) -> Quaternion {
    let (iq, jq) = (i.as_quaternion(), j.as_quaternion());
    (v_j + v_minus_j) * 0.5 - (iq * 0.5) * (jq * (v_j - v_minus_j))
}
