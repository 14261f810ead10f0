//! Stem functions: complex-intrinsic maps `D → H ⊗ C`.
//!
//! A stem is stored only on the closed upper half-plane; values in the lower
//! half are always produced by the reflection `F(z̄) = bar(F(z))`. This makes
//! the intrinsic condition unbreakable and lets the two halves of a domain
//! without real points carry independent values, which is what drives the
//! slice-constant counterexamples.

use num_complex::Complex64;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{ComplexifiedQuaternion, Quaternion};
use crate::domain::{CircularDomain, Region};
use crate::error::{Error, Result};

/// Upper-half-plane evaluation backend of a stem function.
#[derive(Clone)]
pub enum StemBackend {
    /// `F(z) = Σ zⁿ aₙ` with quaternion coefficients `a₀..aₙ`.
    Polynomial(Vec<Quaternion>),
    /// `F = a + √-1 b` on the upper half.
    Constant(Quaternion, Quaternion),
    /// Arbitrary map from upper-half points to `H ⊗ C`; smoothness is the
    /// caller's responsibility.
    Callable(Arc<dyn Fn(Complex64) -> ComplexifiedQuaternion + Send + Sync>),
}

impl fmt::Debug for StemBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StemBackend::Polynomial(c) => f.debug_tuple("Polynomial").field(c).finish(),
            StemBackend::Constant(a, b) => f.debug_tuple("Constant").field(a).field(b).finish(),
            StemBackend::Callable(_) => f.write_str("Callable(..)"),
        }
    }
}

/// A stem function together with its circular domain.
#[derive(Clone, Debug)]
pub struct StemFunction {
    backend: StemBackend,
    domain: CircularDomain,
}

/// Outcome of [`StemFunction::check_intrinsic`].
#[derive(Clone, Debug)]
pub struct IntrinsicReport {
    pub checked: usize,
    /// Sample points where the even-odd property failed.
    pub violations: Vec<Complex64>,
    pub passed: bool,
}

impl StemFunction {
    pub fn new(backend: StemBackend, domain: CircularDomain) -> Self {
        Self { backend, domain }
    }

    pub fn polynomial(coeffs: Vec<Quaternion>, domain: CircularDomain) -> Self {
        Self::new(StemBackend::Polynomial(coeffs), domain)
    }

    pub fn constant(a: Quaternion, b: Quaternion, domain: CircularDomain) -> Self {
        Self::new(StemBackend::Constant(a, b), domain)
    }

    pub fn callable<F>(f: F, domain: CircularDomain) -> Self
    where
        F: Fn(Complex64) -> ComplexifiedQuaternion + Send + Sync + 'static,
    {
        Self::new(StemBackend::Callable(Arc::new(f)), domain)
    }

    pub fn backend(&self) -> &StemBackend {
        &self.backend
    }

    pub fn domain(&self) -> &CircularDomain {
        &self.domain
    }

    /// Same stem on a different domain.
    pub fn restricted(&self, domain: CircularDomain) -> Self {
        Self::new(self.backend.clone(), domain)
    }

    pub fn coefficients(&self) -> Option<&[Quaternion]> {
        match &self.backend {
            StemBackend::Polynomial(c) => Some(c),
            _ => None,
        }
    }

    /// Evaluates the stem, reflecting through `F(z̄) = bar(F(z))` for points
    /// below the real axis.
    pub fn eval(&self, z: Complex64) -> Result<ComplexifiedQuaternion> {
        if !self.domain.contains_z(z) {
            return Err(Error::OutOfDomain(format!("z = {} not in D", z)));
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluation without the domain membership test.
    pub fn eval_unchecked(&self, z: Complex64) -> ComplexifiedQuaternion {
        if z.im < 0.0 {
            self.eval_upper(z.conj()).bar()
        } else {
            self.eval_upper(z)
        }
    }

    fn eval_upper(&self, z: Complex64) -> ComplexifiedQuaternion {
        match &self.backend {
            StemBackend::Polynomial(coeffs) => {
                // Horner in H⊗C; z is a central complex scalar.
                let mut acc = ComplexifiedQuaternion::zero();
                for a in coeffs.iter().rev() {
                    acc = ComplexifiedQuaternion::new(
                        acc.re * z.re - acc.im * z.im + *a,
                        acc.re * z.im + acc.im * z.re,
                    );
                }
                acc
            }
            StemBackend::Constant(a, b) => ComplexifiedQuaternion::new(*a, *b),
            StemBackend::Callable(f) => f(z),
        }
    }

    fn require_same_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// Pointwise sum. Backends are promoted to callable when they differ.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_domain(other)?;
        let backend = match (&self.backend, &other.backend) {
            (StemBackend::Polynomial(a), StemBackend::Polynomial(b)) => {
                let n = a.len().max(b.len());
                let mut c = vec![crate::algebra::ZERO; n];
                for (i, q) in a.iter().enumerate() {
                    c[i] = c[i] + *q;
                }
                for (i, q) in b.iter().enumerate() {
                    c[i] = c[i] + *q;
                }
                StemBackend::Polynomial(c)
            }
            (StemBackend::Constant(a1, b1), StemBackend::Constant(a2, b2)) => {
                StemBackend::Constant(*a1 + *a2, *b1 + *b2)
            }
            _ => {
                let (f, g) = (self.clone(), other.clone());
                StemBackend::Callable(Arc::new(move |z| {
                    f.eval_unchecked(z) + g.eval_unchecked(z)
                }))
            }
        };
        Ok(Self::new(backend, self.domain.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    /// Right multiple by a real scalar.
    pub fn scale(&self, s: f64) -> Self {
        let backend = match &self.backend {
            StemBackend::Polynomial(c) => {
                StemBackend::Polynomial(c.iter().map(|q| *q * s).collect())
            }
            StemBackend::Constant(a, b) => StemBackend::Constant(*a * s, *b * s),
            StemBackend::Callable(_) => {
                let f = self.clone();
                StemBackend::Callable(Arc::new(move |z| f.eval_unchecked(z) * s))
            }
        };
        Self::new(backend, self.domain.clone())
    }

    /// Pointwise `H ⊗ C` product. Order matters: quaternion coefficients do
    /// not commute.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same_domain(other)?;
        let backend = match (&self.backend, &other.backend) {
            (StemBackend::Polynomial(a), StemBackend::Polynomial(b)) => {
                if a.is_empty() || b.is_empty() {
                    StemBackend::Polynomial(vec![])
                } else {
                    let mut c = vec![crate::algebra::ZERO; a.len() + b.len() - 1];
                    for (i, ai) in a.iter().enumerate() {
                        for (j, bj) in b.iter().enumerate() {
                            c[i + j] = c[i + j] + *ai * *bj;
                        }
                    }
                    StemBackend::Polynomial(c)
                }
            }
            (StemBackend::Constant(a1, b1), StemBackend::Constant(a2, b2)) => {
                let p = ComplexifiedQuaternion::new(*a1, *b1) * ComplexifiedQuaternion::new(*a2, *b2);
                StemBackend::Constant(p.re, p.im)
            }
            _ => {
                let (f, g) = (self.clone(), other.clone());
                StemBackend::Callable(Arc::new(move |z| {
                    f.eval_unchecked(z) * g.eval_unchecked(z)
                }))
            }
        };
        Ok(Self::new(backend, self.domain.clone()))
    }

    /// `F^c(z) = F₁(z)^c + √-1 F₂(z)^c`.
    pub fn conj(&self) -> Self {
        let backend = match &self.backend {
            StemBackend::Polynomial(c) => {
                StemBackend::Polynomial(c.iter().map(|q| q.conj()).collect())
            }
            StemBackend::Constant(a, b) => StemBackend::Constant(a.conj(), b.conj()),
            StemBackend::Callable(_) => {
                let f = self.clone();
                StemBackend::Callable(Arc::new(move |z| f.eval_unchecked(z).conj_c()))
            }
        };
        Self::new(backend, self.domain.clone())
    }

    /// `CN(F) = F F^c`; both components of the result are real multiples
    /// of 1, so the stem is complex-valued.
    pub fn cn(&self) -> Result<Self> {
        self.mul(&self.conj())
    }

    /// The four complex component curves of the stem in the basis
    /// `{1, i, j, k}`.
    pub fn curve_components(&self) -> IntrinsicCurve {
        IntrinsicCurve { stem: self.clone() }
    }

    /// Samples the even-odd property. Polynomial and constant backends pass
    /// structurally; callable backends are checked at up to `n_samples`
    /// points, plus real-axis points when the domain meets the real axis.
    pub fn check_intrinsic(&self, n_samples: usize) -> IntrinsicReport {
        let raw = match &self.backend {
            StemBackend::Callable(f) => f.clone(),
            _ => {
                return IntrinsicReport {
                    checked: 0,
                    violations: vec![],
                    passed: true,
                }
            }
        };
        let mut checked = 0;
        let mut violations = Vec::new();
        let tol = 1e-8;
        if self.domain.contains_real() {
            // Oddness of F2 forces F2 = 0 on the real axis.
            for a in real_axis_samples(&self.domain, n_samples.max(8) / 2) {
                checked += 1;
                let v = raw(Complex64::new(a, 0.0));
                if v.im.abs() > tol {
                    violations.push(Complex64::new(a, 0.0));
                }
            }
            // With real points the two halves are joined, so any values the
            // callable yields below the axis must agree with reflection.
            if let Ok(grid) = self.domain.sample_grid(grid_res(n_samples)) {
                for z in grid {
                    checked += 1;
                    let below = raw(z.conj());
                    if !below.approx_eq(raw(z).bar(), tol * (1.0 + below.abs())) {
                        violations.push(z);
                    }
                }
            }
        }
        IntrinsicReport {
            checked,
            passed: violations.is_empty(),
            violations,
        }
    }
}

fn grid_res(n_samples: usize) -> usize {
    ((n_samples.max(4) as f64).sqrt().ceil() as usize).max(2)
}

fn real_axis_samples(domain: &CircularDomain, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let mut out = Vec::new();
    for region in domain.regions() {
        let interval = match *region {
            Region::Rect { alpha, beta } if beta.0 == 0.0 => Some(alpha),
            Region::Disk { center, radius } if center.1 < radius => {
                let half = (radius * radius - center.1 * center.1).sqrt();
                Some((center.0 - half, center.0 + half))
            }
            _ => None,
        };
        if let Some((a0, a1)) = interval {
            if a0.is_finite() && a1.is_finite() {
                let d = (a1 - a0) / n as f64;
                for i in 0..n {
                    out.push(a0 + (i as f64 + 0.5) * d);
                }
            }
        }
    }
    out
}

/// The identification of a stem with a complex intrinsic curve in C⁴.
#[derive(Clone, Debug)]
pub struct IntrinsicCurve {
    stem: StemFunction,
}

impl IntrinsicCurve {
    /// The four components `F̃¹..F̃⁴` at `z`, satisfying
    /// `F̃(z̄) = conj(F̃(z))` componentwise.
    pub fn components(&self, z: Complex64) -> Result<[Complex64; 4]> {
        let v = self.stem.eval(z)?;
        Ok(components_of(v))
    }

    pub fn components_unchecked(&self, z: Complex64) -> [Complex64; 4] {
        components_of(self.stem.eval_unchecked(z))
    }
}

/// Basis coordinates of an `H ⊗ C` value as four complex numbers.
pub fn components_of(v: ComplexifiedQuaternion) -> [Complex64; 4] {
    let (x, y) = (v.re, v.im);
    [
        Complex64::new(x.w, y.w),
        Complex64::new(x.x1, y.x1),
        Complex64::new(x.x2, y.x2),
        Complex64::new(x.x3, y.x3),
    ]
}

/// Rebuilds an `H ⊗ C` value from its four complex basis coordinates.
pub fn from_components(c: [Complex64; 4]) -> ComplexifiedQuaternion {
    ComplexifiedQuaternion::new(
        Quaternion::new(c[0].re, c[1].re, c[2].re, c[3].re),
        Quaternion::new(c[0].im, c[1].im, c[2].im, c[3].im),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ONE, ZERO};

    fn whole() -> CircularDomain {
        CircularDomain::rect(-10.0, 10.0, 0.0, 10.0).unwrap()
    }

    fn q(w: f64, x1: f64, x2: f64, x3: f64) -> Quaternion {
        Quaternion::new(w, x1, x2, x3)
    }

    #[test]
    fn polynomial_eval() {
        // F(z) = z² at z = √-1 is -1.
        let f = StemFunction::polynomial(vec![ZERO, ZERO, ONE], whole());
        let v = f.eval(Complex64::new(0.0, 1.0)).unwrap();
        assert!(v.approx_eq(
            ComplexifiedQuaternion::new(Quaternion::real(-1.0), ZERO),
            1e-15
        ));

        // F(z) = z - i at z = √-1: F1 = -i, F2 = 1.
        let f = StemFunction::polynomial(vec![-Quaternion::i(), ONE], whole());
        let v = f.eval(Complex64::new(0.0, 1.0)).unwrap();
        assert!(v.approx_eq(
            ComplexifiedQuaternion::new(-Quaternion::i(), ONE),
            1e-15
        ));
    }

    #[test]
    fn constant_reflects() {
        let d = CircularDomain::new_punctured(vec![Region::Rect {
            alpha: (-10.0, 10.0),
            beta: (0.0, 10.0),
        }])
        .unwrap();
        let f = StemFunction::constant(ONE, -Quaternion::j(), d);
        let v = f.eval(Complex64::new(0.0, -1.0)).unwrap();
        assert_eq!(v, ComplexifiedQuaternion::new(ONE, Quaternion::j()));
    }

    #[test]
    fn out_of_domain_errors() {
        let f = StemFunction::polynomial(vec![ONE], whole());
        assert!(f.eval(Complex64::new(20.0, 1.0)).is_err());
    }

    #[test]
    fn add_and_scale() {
        let z = StemFunction::polynomial(vec![ZERO, ONE], whole());
        let sum = z.add(&z.scale(-1.0)).unwrap();
        let v = sum.eval(Complex64::new(1.0, 2.0)).unwrap();
        assert!(v.is_zero(1e-15));

        let z2 = StemFunction::polynomial(vec![ZERO, ZERO, ONE], whole());
        let scaled = z2.scale(2.0);
        assert_eq!(
            scaled.coefficients().unwrap(),
            &[ZERO, ZERO, Quaternion::real(2.0)]
        );
    }

    #[test]
    fn mixed_add_promotes_to_callable() {
        let z = StemFunction::polynomial(vec![ZERO, ONE], whole());
        let c = StemFunction::constant(Quaternion::i(), ZERO, whole());
        let s = z.add(&c).unwrap();
        assert!(matches!(s.backend(), StemBackend::Callable(_)));
        for n in 0..10 {
            let p = Complex64::new(-3.0 + 0.6 * n as f64, 0.5 + 0.2 * n as f64);
            let expect = z.eval(p).unwrap() + c.eval(p).unwrap();
            assert!(s.eval(p).unwrap().approx_eq(expect, 1e-14));
        }
    }

    #[test]
    fn polynomial_product_is_ordered_convolution() {
        // (z - i)(z - j) = z² - z(i + j) + ij, and ij = k.
        let f = StemFunction::polynomial(vec![-Quaternion::i(), ONE], whole());
        let g = StemFunction::polynomial(vec![-Quaternion::j(), ONE], whole());
        let fg = f.mul(&g).unwrap();
        assert_eq!(
            fg.coefficients().unwrap(),
            &[Quaternion::k(), -(Quaternion::i() + Quaternion::j()), ONE]
        );

        let identity = StemFunction::polynomial(vec![ONE], whole());
        let same = f.mul(&identity).unwrap();
        assert_eq!(same.coefficients().unwrap(), f.coefficients().unwrap());
    }

    #[test]
    fn product_order_matters_pointwise() {
        let ci = StemFunction::constant(Quaternion::i(), ZERO, whole());
        let zj = StemFunction::polynomial(vec![ZERO, Quaternion::j()], whole());
        let lr = ci.mul(&zj).unwrap();
        let rl = zj.mul(&ci).unwrap();
        for n in 0..10 {
            let p = Complex64::new(-2.0 + 0.4 * n as f64, 0.3 + 0.1 * n as f64);
            let a = lr.eval(p).unwrap();
            let b = rl.eval(p).unwrap();
            // ij = -ji, so the two orders differ by a sign here.
            assert!(a.approx_eq(-b, 1e-13));
        }
    }

    #[test]
    fn conjugation() {
        let f = StemFunction::polynomial(vec![-Quaternion::i(), ONE], whole());
        assert_eq!(f.conj().coefficients().unwrap(), &[Quaternion::i(), ONE]);

        let real = StemFunction::polynomial(vec![ONE, Quaternion::real(2.0)], whole());
        assert_eq!(
            real.conj().coefficients().unwrap(),
            real.coefficients().unwrap()
        );

        let g = StemFunction::polynomial(vec![q(0.5, -1.0, 2.0, 0.25), q(0.0, 3.0, -1.0, 1.0)], whole());
        assert_eq!(
            g.conj().conj().coefficients().unwrap(),
            g.coefficients().unwrap()
        );
    }

    #[test]
    fn cn_of_linear() {
        // F = z - i gives CN = z² + 1.
        let f = StemFunction::polynomial(vec![-Quaternion::i(), ONE], whole());
        let cn = f.cn().unwrap();
        assert_eq!(cn.coefficients().unwrap(), &[ONE, ZERO, ONE]);

        let z = StemFunction::polynomial(vec![ZERO, ONE], whole());
        assert_eq!(z.cn().unwrap().coefficients().unwrap(), &[ZERO, ZERO, ONE]);
    }

    #[test]
    fn curve_components_read_off_basis() {
        let zi = StemFunction::polynomial(vec![ZERO, Quaternion::i()], whole());
        let c = zi.curve_components();
        let z = Complex64::new(0.7, 0.9);
        let comps = c.components(z).unwrap();
        assert!((comps[0]).norm() < 1e-15);
        assert!((comps[1] - z).norm() < 1e-15);
        assert!(comps[2].norm() < 1e-15 && comps[3].norm() < 1e-15);

        let k = StemFunction::constant(ONE, -Quaternion::j(), whole());
        let comps = k.curve_components().components(z).unwrap();
        assert_eq!(comps[0], Complex64::new(1.0, 0.0));
        assert_eq!(comps[2], Complex64::new(0.0, -1.0));
    }

    #[test]
    fn component_reconstruction() {
        let f = StemFunction::polynomial(
            vec![q(1.0, -0.5, 2.0, 0.0), q(0.0, 1.0, 0.0, -3.0), q(0.5, 0.5, 0.5, 0.5)],
            whole(),
        );
        let curve = f.curve_components();
        for n in 0..20 {
            let z = Complex64::new(-4.0 + 0.4 * n as f64, 0.1 + 0.3 * n as f64);
            let direct = f.eval(z).unwrap();
            let rebuilt = from_components(curve.components(z).unwrap());
            assert!(direct.approx_eq(rebuilt, 1e-12));
        }
    }

    #[test]
    fn intrinsic_check_flags_bad_callable() {
        let d = CircularDomain::rect(-1.0, 1.0, 0.0, 1.0).unwrap();
        // F2 constant 1 violates oddness on a domain meeting the real axis.
        let bad = StemFunction::callable(
            |_z| ComplexifiedQuaternion::new(ZERO, ONE),
            d.clone(),
        );
        assert!(!bad.check_intrinsic(64).passed);

        // F2 = β j vanishes on the axis and reflects correctly.
        let good = StemFunction::callable(
            |z| ComplexifiedQuaternion::new(ZERO, Quaternion::j() * z.im),
            d.clone(),
        );
        assert!(good.check_intrinsic(64).passed);

        let poly = StemFunction::polynomial(vec![ONE], d);
        assert!(poly.check_intrinsic(64).passed);
    }

    #[test]
    fn reflection_identity_all_backends() {
        let stems = vec![
            StemFunction::polynomial(vec![q(1.0, 2.0, 0.0, -1.0), Quaternion::j()], whole()),
            StemFunction::constant(Quaternion::i(), Quaternion::k(), whole()),
            StemFunction::callable(
                |z| ComplexifiedQuaternion::new(Quaternion::real(z.re), Quaternion::i() * z.im),
                whole(),
            ),
        ];
        for f in stems {
            for n in 0..10 {
                let z = Complex64::new(-3.0 + 0.7 * n as f64, 0.2 + 0.5 * n as f64);
                assert_eq!(f.eval_unchecked(z.conj()), f.eval_unchecked(z).bar());
            }
        }
    }
}
