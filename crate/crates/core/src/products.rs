//! Slice product, conjugate, normal function, reciprocal and the induced
//! sphere-preserving point transform.

use num_complex::Complex64;

use crate::algebra::{ComplexifiedQuaternion, Quaternion};
use crate::error::{Error, Result};
use crate::slice::SliceFunction;
use crate::stem::StemFunction;
use crate::zeros::{cn_roots_upper, SphereId};

/// Values of the normal below this are treated as singular when evaluating a
/// reciprocal.
pub const NORMAL_FLOOR: f64 = 1e-12;

/// Slice product `f · g`, induced by the pointwise stem product `F G`.
/// Not evaluation-wise: `(f · g)(x) = f(x) g(f(x)^{-1} x f(x))` wherever
/// `f(x) ≠ 0`.
pub fn slice_product(f: &SliceFunction, g: &SliceFunction) -> Result<SliceFunction> {
    Ok(SliceFunction::induce(f.stem().mul(g.stem())?))
}

/// Slice conjugate `f^c`, induced by `F^c`.
pub fn conjugate(f: &SliceFunction) -> SliceFunction {
    SliceFunction::induce(f.stem().conj())
}

/// Normal function `N(f) = f · f^c`, a slice-preserving function.
pub fn normal(f: &SliceFunction) -> Result<SliceFunction> {
    Ok(SliceFunction::induce(f.stem().cn()?))
}

/// The slice reciprocal `f^{-•}`, defined away from the zero spheres of the
/// normal function.
pub struct ReciprocalFunction {
    base: SliceFunction,
    normal: SliceFunction,
    excluded: Vec<SphereId>,
}

impl ReciprocalFunction {
    pub fn function(&self) -> &SliceFunction {
        &self.base
    }

    /// Zero spheres of `N(f)` removed from the domain of definition. Exact
    /// for polynomial backends, empty otherwise; callers on other backends
    /// rely on the evaluation guard alone.
    pub fn excluded_spheres(&self) -> &[SphereId] {
        &self.excluded
    }

    pub fn eval(&self, x: Quaternion) -> Result<Quaternion> {
        let n = self.normal.eval(x)?;
        if n.abs() < NORMAL_FLOOR {
            return Err(Error::Singular(format!(
                "normal function vanishes at {:?}",
                x
            )));
        }
        self.base.eval(x)
    }
}

fn mul_scalar(w: ComplexifiedQuaternion, c: Complex64) -> ComplexifiedQuaternion {
    ComplexifiedQuaternion::new(w.re * c.re - w.im * c.im, w.re * c.im + w.im * c.re)
}

/// Builds `f^{-•}`, the stem being `CN(F)^{-1} F^c`. Fails with a degenerate
/// normal when `CN(F)` vanishes identically (checked structurally for
/// polynomial stems, by sampling otherwise).
pub fn reciprocal(f: &SliceFunction) -> Result<ReciprocalFunction> {
    let stem = f.stem().clone();
    let excluded = if stem.coefficients().is_some() {
        // Also rejects the identically zero polynomial.
        cn_roots_upper(f)?
    } else {
        let samples = f.domain().sample_grid_clipped(16, 8.0);
        let degenerate = !samples.is_empty()
            && samples.iter().all(|&z| {
                let w = stem.eval_unchecked(z);
                (w * w.conj_c()).abs() <= NORMAL_FLOOR
            });
        if degenerate {
            return Err(Error::DegenerateNormal);
        }
        vec![]
    };
    let inner = stem.clone();
    let recip_stem = StemFunction::callable(
        move |z| {
            let w = inner.eval_unchecked(z);
            let n = w.norm_c();
            if n.norm() == 0.0 {
                // Poles are reported through the evaluation guard; the raw
                // stem maps them to NaN rather than panicking.
                return ComplexifiedQuaternion::new(
                    Quaternion::real(f64::NAN),
                    Quaternion::real(f64::NAN),
                );
            }
            mul_scalar(w.conj_c(), 1.0 / n)
        },
        f.domain().clone(),
    );
    Ok(ReciprocalFunction {
        base: SliceFunction::induce(recip_stem),
        normal: normal(f)?,
        excluded,
    })
}

/// The point transform `T_f(x) = f^c(x)^{-1} x f^c(x)`: conjugation by a
/// nonzero quaternion fixes the real part and the imaginary modulus, so each
/// sphere `S_x` maps to itself.
pub fn t_map(f: &SliceFunction, x: Quaternion) -> Result<Quaternion> {
    let v = conjugate(f).eval(x)?;
    let vi = v
        .inverse()
        .map_err(|_| Error::Singular(format!("f^c vanishes at {:?}", x)))?;
    Ok(vi * x * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ONE, ZERO};
    use crate::domain::CircularDomain;

    fn whole() -> CircularDomain {
        CircularDomain::rect(-10.0, 10.0, 0.0, 10.0).unwrap()
    }

    fn poly(coeffs: Vec<Quaternion>) -> SliceFunction {
        SliceFunction::induce(StemFunction::polynomial(coeffs, whole()))
    }

    #[test]
    fn product_composition_identity() {
        // (f·g)(x) = f(x) g(f(x)^{-1} x f(x)) wherever f(x) ≠ 0.
        let f = poly(vec![-Quaternion::i(), ONE]);
        let g = poly(vec![Quaternion::j(), Quaternion::k(), ONE]);
        let fg = slice_product(&f, &g).unwrap();
        for x in [
            Quaternion::new(0.3, 1.0, -0.5, 0.2),
            Quaternion::new(-1.0, 0.0, 2.0, 0.0),
            Quaternion::new(2.0, 0.1, 0.1, 3.0),
        ] {
            let fx = f.eval(x).unwrap();
            let conj_pt = fx.inverse().unwrap() * x * fx;
            let rhs = fx * g.eval(conj_pt).unwrap();
            assert!(fg.eval(x).unwrap().approx_eq(rhs, 1e-10));
        }
    }

    #[test]
    fn conjugate_reverses_products() {
        let f = poly(vec![Quaternion::j(), ONE]);
        let g = poly(vec![-Quaternion::i(), Quaternion::k(), ONE]);
        let lhs = conjugate(&slice_product(&f, &g).unwrap());
        let rhs = slice_product(&conjugate(&g), &conjugate(&f)).unwrap();
        for x in [
            Quaternion::new(0.5, 0.5, -1.0, 0.25),
            Quaternion::new(-2.0, 1.0, 0.0, 0.0),
        ] {
            assert!(lhs.eval(x).unwrap().approx_eq(rhs.eval(x).unwrap(), 1e-10));
        }
    }

    #[test]
    fn normal_is_slice_preserving() {
        let f = poly(vec![-Quaternion::i(), ONE]);
        let n = normal(&f).unwrap();
        assert!(n.is_real_slice(1e-12));
        // N(x - i) = x² + 1 up to the slice structure: values on C_J stay
        // in C_J.
        let x = Quaternion::new(0.7, 0.0, 1.3, 0.0);
        let v = n.eval(x).unwrap();
        let expected = x * x + ONE;
        assert!(v.approx_eq(expected, 1e-12));
    }

    #[test]
    fn reciprocal_identities() {
        let f = poly(vec![-Quaternion::i(), ONE]);
        let r = reciprocal(&f).unwrap();
        let fr = slice_product(&f, r.function()).unwrap();
        let rf = slice_product(r.function(), &f).unwrap();
        for x in [
            Quaternion::new(0.3, 0.4, 0.5, 0.0),
            Quaternion::new(-1.2, 0.0, 0.0, 2.0),
            Quaternion::new(3.0, 1.0, 1.0, 1.0),
        ] {
            assert!(fr.eval(x).unwrap().approx_eq(ONE, 1e-8));
            assert!(rf.eval(x).unwrap().approx_eq(ONE, 1e-8));
        }
        // The zero sphere of N(f) is excluded.
        assert_eq!(r.excluded_spheres().len(), 1);
        assert!((r.excluded_spheres()[0].beta - 1.0).abs() < 1e-8);
        assert!(r.eval(Quaternion::i()).is_err());
        assert!(r.eval(Quaternion::j()).is_err());
        assert!(r.eval(Quaternion::new(0.0, 0.0, 0.0, 5.0)).is_ok());
    }

    #[test]
    fn reciprocal_of_zero_is_degenerate() {
        let f = poly(vec![ZERO]);
        assert!(reciprocal(&f).is_err());
        let z = SliceFunction::induce(StemFunction::constant(ZERO, ZERO, whole()));
        assert!(matches!(reciprocal(&z), Err(Error::DegenerateNormal)));
    }

    #[test]
    fn t_map_moves_within_the_sphere() {
        // T_f for f = x - i sends j to a point of the same sphere; the
        // classical value is i.
        let f = poly(vec![-Quaternion::i(), ONE]);
        let t = t_map(&f, Quaternion::j()).unwrap();
        assert!(t.approx_eq(Quaternion::i(), 1e-12));
        // Sphere data (α, β) is preserved at a generic point.
        let x = Quaternion::new(0.5, 1.0, 2.0, -0.5);
        let y = t_map(&f, x).unwrap();
        assert!((x.re() - y.re()).abs() < 1e-12);
        assert!((x.im_abs() - y.im_abs()).abs() < 1e-12);
    }
}
