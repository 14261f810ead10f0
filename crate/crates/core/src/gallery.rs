//! Named fixture functions used by the checkers and the acceptance suite.
//! All of them are assembled from constant and polynomial stems through the
//! stem arithmetic, never from shortcut evaluators.

use crate::algebra::{ImaginaryUnit, Quaternion, ONE, ZERO};
use crate::domain::CircularDomain;
use crate::error::{Error, Result};
use crate::slice::SliceFunction;
use crate::stem::StemFunction;

/// A buildable fixture description, also the JSON-facing shape.
#[derive(Clone, Debug)]
pub enum GallerySpec {
    SliceConstant { j: ImaginaryUnit },
    MaxModulusCex { j: ImaginaryUnit, c: f64, r: f64 },
    OpenMappingCex { j: ImaginaryUnit },
    Monomial { n: usize, domain: CircularDomain },
    BinomialZero { a: Quaternion, domain: CircularDomain },
}

impl GallerySpec {
    pub fn build(&self) -> Result<SliceFunction> {
        match self {
            GallerySpec::SliceConstant { j } => Ok(slice_constant_example(*j)),
            GallerySpec::MaxModulusCex { j, c, r } => max_modulus_counterexample(*j, *c, *r),
            GallerySpec::OpenMappingCex { j } => Ok(open_mapping_counterexample(*j)),
            GallerySpec::Monomial { n, domain } => {
                let mut coeffs = vec![ZERO; n + 1];
                coeffs[*n] = ONE;
                Ok(SliceFunction::induce(StemFunction::polynomial(
                    coeffs,
                    domain.clone(),
                )))
            }
            GallerySpec::BinomialZero { a, domain } => Ok(SliceFunction::induce(
                StemFunction::polynomial(vec![-*a, ONE], domain.clone()),
            )),
        }
    }
}

/// `f(α + βI) = 1 - IJ` on the quaternions without reals. Slice constant,
/// vanishing exactly on the `-J` semislice.
pub fn slice_constant_example(j: ImaginaryUnit) -> SliceFunction {
    SliceFunction::induce(StemFunction::constant(
        ONE,
        -j.as_quaternion(),
        CircularDomain::quaternions_without_reals(),
    ))
}

/// `f(x) = x + c - (x - c) IJ` on the punctured ball of radius `r`,
/// requires `c > r > 0`. The modulus is the constant `2c` on the `-J`
/// semislice and `2|x|` on the `J` one, so a flat single-semislice maximum
/// exists without the function being slice constant.
pub fn max_modulus_counterexample(j: ImaginaryUnit, c: f64, r: f64) -> Result<SliceFunction> {
    if !(c > r && r > 0.0) {
        return Err(Error::Argument(format!(
            "need c > r > 0, got c = {}, r = {}",
            c, r
        )));
    }
    let d = CircularDomain::punctured_ball(r)?;
    let plus = StemFunction::polynomial(vec![Quaternion::real(c), ONE], d.clone());
    let minus = StemFunction::polynomial(vec![Quaternion::real(-c), ONE], d.clone());
    let twist = StemFunction::constant(ZERO, -j.as_quaternion(), d);
    let stem = plus.add(&minus.mul(&twist)?)?;
    Ok(SliceFunction::induce(stem))
}

/// `f(x) = x - xIJ` on the quaternions without reals: identically zero on
/// the `-J` semislice, open away from it and the reals.
pub fn open_mapping_counterexample(j: ImaginaryUnit) -> SliceFunction {
    let d = CircularDomain::quaternions_without_reals();
    let lin = StemFunction::polynomial(vec![ZERO, ONE], d.clone());
    let twist = StemFunction::constant(ZERO, -j.as_quaternion(), d);
    let stem = lin.add(&lin.mul(&twist).expect("same domain")).expect("same domain");
    SliceFunction::induce(stem)
}

/// Closed-form expansion of `x - xIJ` at `x = α + βI`:
/// `α(1 + I·J) + βI + βJ - α (I∧J)`, with the scalar and vector products
/// taken in R³.
pub fn open_mapping_expansion(j: ImaginaryUnit, x: Quaternion) -> Result<Quaternion> {
    let (alpha, beta, unit) = x.split();
    let i = unit
        .ok_or_else(|| Error::OutOfDomain("real points are outside H \\ R".into()))?
        .as_quaternion();
    let jq = j.as_quaternion();
    let dot = i.x1 * jq.x1 + i.x2 * jq.x2 + i.x3 * jq.x3;
    let wedge = Quaternion::new(
        0.0,
        i.x2 * jq.x3 - i.x3 * jq.x2,
        i.x3 * jq.x1 - i.x1 * jq.x3,
        i.x1 * jq.x2 - i.x2 * jq.x1,
    );
    Ok(Quaternion::real(alpha * (1.0 + dot)) + i * beta + jq * beta - wedge * alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{is_slice_regular, DerivativeConfig};
    use crate::slice::represent;
    use num_complex::Complex64;

    #[test]
    fn slice_constant_values() {
        let f = slice_constant_example(ImaginaryUnit::j());
        // At 2i the inducing unit is i: 1 - ij = 1 - k.
        let v = f.eval(Quaternion::new(0.0, 2.0, 0.0, 0.0)).unwrap();
        assert!(v.approx_eq(Quaternion::new(1.0, 0.0, 0.0, -1.0), 1e-14));
        // At -3j the unit is -j: 1 - (-j)j = 0.
        let v = f.eval(Quaternion::new(0.0, 0.0, -3.0, 0.0)).unwrap();
        assert!(v.abs() < 1e-14);
        assert!(f.is_slice_constant(1e-10));
        assert!(f.eval(Quaternion::real(1.0)).is_err());
    }

    #[test]
    fn slice_constant_matches_representation() {
        // Boundary data: 2 on C_j⁺ and 0 on C_{-j}⁺.
        let f = slice_constant_example(ImaginaryUnit::j());
        let j = ImaginaryUnit::j();
        let minus_j = ImaginaryUnit::new(-Quaternion::j()).unwrap();
        for unit in crate::principles::fibonacci_sphere(20) {
            let z = Complex64::new(0.7, 1.3);
            let vj = f.eval_slice(j, z).unwrap();
            let vk = f.eval_slice(minus_j, z).unwrap();
            assert!(vj.approx_eq(Quaternion::real(2.0), 1e-14));
            assert!(vk.abs() < 1e-14);
            let rec = represent(vj, vk, j, minus_j, unit).unwrap();
            assert!(rec.approx_eq(f.eval_slice(unit, z).unwrap(), 1e-12));
        }
    }

    #[test]
    fn max_modulus_cex_values() {
        let c = 10.0;
        let f = max_modulus_counterexample(ImaginaryUnit::j(), c, 1.0).unwrap();
        // On C_{-j}⁺: constant 2c.
        for beta in [0.2, 0.5, 0.9] {
            let x = Quaternion::new(0.1, 0.0, -beta, 0.0);
            let v = f.eval(x).unwrap();
            assert!(v.approx_eq(Quaternion::real(2.0 * c), 1e-12));
        }
        // On C_j⁺: exactly 2x.
        for (a, b) in [(0.1, 0.3), (-0.4, 0.7), (0.0, 0.95)] {
            let x = Quaternion::new(a, 0.0, b, 0.0);
            let v = f.eval(x).unwrap();
            assert!(v.approx_eq(x * 2.0, 1e-12));
        }
        assert!(max_modulus_counterexample(ImaginaryUnit::j(), 1.0, 1.0).is_err());
        assert!(max_modulus_counterexample(ImaginaryUnit::j(), 0.5, 1.0).is_err());
    }

    #[test]
    fn open_mapping_cex_values() {
        let f = open_mapping_counterexample(ImaginaryUnit::j());
        // I = J: f = 2x.
        let x = Quaternion::new(0.5, 0.0, 1.5, 0.0);
        assert!(f.eval(x).unwrap().approx_eq(x * 2.0, 1e-13));
        // I = -J: identically zero.
        let x = Quaternion::new(0.5, 0.0, -1.5, 0.0);
        assert!(f.eval(x).unwrap().abs() < 1e-13);
    }

    #[test]
    fn expansion_matches_stem_pipeline() {
        let j = ImaginaryUnit::j();
        let f = open_mapping_counterexample(j);
        for (k, unit) in crate::principles::fibonacci_sphere(40).into_iter().enumerate() {
            let alpha = -1.5 + 0.07 * k as f64;
            let beta = 0.2 + 0.05 * k as f64;
            let x = Quaternion::real(alpha) + unit.as_quaternion() * beta;
            let direct = f.eval(x).unwrap();
            let closed = open_mapping_expansion(j, x).unwrap();
            assert!(
                direct.approx_eq(closed, 1e-12),
                "mismatch at {:?}: {:?} vs {:?}",
                x,
                direct,
                closed
            );
        }
        assert!(open_mapping_expansion(j, Quaternion::real(1.0)).is_err());
    }

    #[test]
    fn gallery_functions_are_regular() {
        let cfg = DerivativeConfig::default();
        for f in [
            slice_constant_example(ImaginaryUnit::j()),
            max_modulus_counterexample(ImaginaryUnit::j(), 10.0, 1.0).unwrap(),
            open_mapping_counterexample(ImaginaryUnit::j()),
        ] {
            let rep = is_slice_regular(&f, &cfg);
            assert!(rep.pass, "residual {}", rep.max_residual);
        }
    }

    #[test]
    fn open_mapping_image_avoids_reals_off_minus_j() {
        let f = open_mapping_counterexample(ImaginaryUnit::j());
        let mut checked = 0;
        for (k, unit) in crate::principles::fibonacci_sphere(200).into_iter().enumerate() {
            if unit.as_quaternion().approx_eq(-Quaternion::j(), 1e-6) {
                continue;
            }
            let alpha = -2.0 + 0.02 * k as f64;
            let beta = 0.1 + 0.01 * k as f64;
            let x = Quaternion::real(alpha) + unit.as_quaternion() * beta;
            let v = f.eval(x).unwrap();
            assert!(v.im_abs() > 1e-12, "real image value at {:?}", x);
            checked += 1;
        }
        assert!(checked > 150);
    }
}
