//! Zero-locus machinery: the per-sphere trichotomy, exact zero finding for
//! polynomial backends and a sampling search for callable ones.

use num_complex::Complex64;

use crate::algebra::{Quaternion, ZERO};
use crate::error::{Error, Result};
use crate::slice::SliceFunction;

/// Default absolute tolerance on `|F|` and `|CN|` for classification.
pub const CLASSIFY_TOL: f64 = 1e-9;
/// Consistency slack factor for cross-checks against the classification.
pub const KAPPA: f64 = 10.0;
/// Roots this close to the real axis are snapped to β = 0, so symmetric root
/// pairs collapse to one sphere.
pub const REAL_SNAP: f64 = 1e-8;

/// The sphere `S_x = α + β S`; `β = 0` denotes a real point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereId {
    pub alpha: f64,
    pub beta: f64,
}

impl SphereId {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta: beta.abs(),
        }
    }

    pub fn center_z(&self) -> Complex64 {
        Complex64::new(self.alpha, self.beta)
    }
}

/// Trichotomy of `S_x ∩ V(f)`: empty, the whole sphere (or a real point), or
/// a single non-real point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroClassification {
    NoZero,
    SphericalOrReal,
    SIsolated(Quaternion),
}

/// A classified zero sphere.
#[derive(Clone, Copy, Debug)]
pub struct ZeroHit {
    pub sphere: SphereId,
    pub class: ZeroClassification,
}

/// Classifies the intersection of `V(f)` with one sphere by evaluating
/// `F(z)` and `CN(F)(z) = F(z) F(z)^c` at `z = α + √-1 β`:
/// `|CN| > tol` means no zero; `|F| ≤ tol` means the sphere (or real point)
/// is contained in `V(f)`; otherwise there is a single zero at
/// `α + βI` with `I = -F₁(z) F₂(z)^{-1}`.
pub fn classify_sphere(
    f: &SliceFunction,
    sphere: SphereId,
    tol: f64,
) -> Result<ZeroClassification> {
    let z = sphere.center_z();
    let w = f.stem().eval(z)?;
    if sphere.beta == 0.0 {
        // A real point is its own sphere: either a real zero or nothing.
        return Ok(if w.re.abs() <= tol {
            ZeroClassification::SphericalOrReal
        } else {
            ZeroClassification::NoZero
        });
    }
    let cn = w * w.conj_c();
    if cn.abs() > tol {
        return Ok(ZeroClassification::NoZero);
    }
    if w.abs() <= tol {
        return Ok(ZeroClassification::SphericalOrReal);
    }
    // S-isolated branch: solve F₁ + I F₂ = 0 for I and validate I ∈ S.
    if f.is_real_slice(tol) {
        return Err(Error::Inconsistency(
            "real slice function produced an S-isolated branch".into(),
        ));
    }
    let f2_inv = w.im.inverse().map_err(|_| {
        Error::Inconsistency("S-isolated branch with F₂ = 0".into())
    })?;
    let i_q = -(w.re * f2_inv);
    let stol = 1e-6 * (1.0 + i_q.abs());
    if i_q.w.abs() > stol || (i_q.im_abs() - 1.0).abs() > stol {
        return Err(Error::Inconsistency(format!(
            "computed unit {:?} does not lie on the imaginary sphere",
            i_q
        )));
    }
    let beta_unit = i_q.im() / i_q.im_abs();
    let point = Quaternion::real(sphere.alpha) + beta_unit * sphere.beta;
    let value = f.eval(point)?;
    if value.abs() > (KAPPA * tol).max(1e-9 * (1.0 + w.abs())) {
        return Err(Error::Inconsistency(format!(
            "predicted zero point has |f| = {}",
            value.abs()
        )));
    }
    Ok(ZeroClassification::SIsolated(point))
}

/// Roots of `CN(F)` in the closed upper half of `D`, for a polynomial stem.
/// Each root is one zero sphere of `f`.
pub fn cn_roots_upper(f: &SliceFunction) -> Result<Vec<SphereId>> {
    let coeffs = f
        .stem()
        .coefficients()
        .ok_or_else(|| Error::Argument("polynomial stem backend required".into()))?;
    let scale = coeffs.iter().map(|c| c.abs()).fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Err(Error::Argument("zero polynomial has no zero structure".into()));
    }
    // CN coefficients c_n = Σ_k a_k a_{n-k}^c are real quaternions.
    let n = coeffs.len();
    let mut cn = vec![ZERO; 2 * n - 1];
    for (i, a) in coeffs.iter().enumerate() {
        for (j, b) in coeffs.iter().enumerate() {
            cn[i + j] = cn[i + j] + *a * b.conj();
        }
    }
    let cn_scale = scale * scale;
    let mut real_coeffs = Vec::with_capacity(cn.len());
    for c in &cn {
        if c.im_abs() > 1e-10 * cn_scale {
            return Err(Error::Inconsistency(
                "CN(F) coefficients are not real".into(),
            ));
        }
        real_coeffs.push(c.w);
    }
    while let Some(&last) = real_coeffs.last() {
        if last.abs() <= 1e-12 * cn_scale && real_coeffs.len() > 1 {
            real_coeffs.pop();
        } else {
            break;
        }
    }
    if real_coeffs.iter().all(|c| c.abs() <= 1e-12 * cn_scale) {
        return Err(Error::DegenerateNormal);
    }
    if real_coeffs.len() == 1 {
        return Ok(vec![]);
    }
    let mut spheres: Vec<SphereId> = Vec::new();
    for root in real_poly_roots(&real_coeffs) {
        let beta = if root.im.abs() < REAL_SNAP {
            0.0
        } else {
            root.im.abs()
        };
        let sphere = SphereId::new(root.re, beta);
        if !f.domain().contains_z(sphere.center_z()) {
            continue;
        }
        if !spheres.iter().any(|s| {
            (s.alpha - sphere.alpha).abs() < 1e-6 && (s.beta - sphere.beta).abs() < 1e-6
        }) {
            spheres.push(sphere);
        }
    }
    spheres.sort_by(|a, b| {
        (a.alpha, a.beta)
            .partial_cmp(&(b.alpha, b.beta))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(spheres)
}

/// Complete zero locus of a polynomial-backed slice function: the roots of
/// `CN(F)` inside the domain, classified per sphere.
pub fn find_zeros_polynomial(f: &SliceFunction) -> Result<Vec<ZeroHit>> {
    let mut hits = Vec::new();
    for sphere in cn_roots_upper(f)? {
        let class = classify_sphere(f, sphere, polynomial_root_tol(f))?;
        // Root residue can leave |CN| marginally above the strict tolerance;
        // the sphere came from a CN root, so NoZero here means the root was
        // spurious noise and is dropped.
        if class != ZeroClassification::NoZero {
            hits.push(ZeroHit { sphere, class });
        }
    }
    Ok(hits)
}

fn polynomial_root_tol(f: &SliceFunction) -> f64 {
    let scale = f
        .stem()
        .coefficients()
        .map(|c| c.iter().map(|q| q.abs()).fold(0.0_f64, f64::max))
        .unwrap_or(1.0);
    // Companion-matrix roots carry O(1e-8) error on clustered roots; the CN
    // value at such a root scales accordingly.
    (1e-6 * (1.0 + scale * scale)).max(CLASSIFY_TOL)
}

/// Grid search for zero spheres of any backend: scans `|CN(F)(z)|` over an
/// `(α, β)` grid, refines local minima by pattern search and classifies the
/// refined spheres with a relaxed tolerance. Returns approximate zeros; an
/// empty list means nothing was found at this resolution.
pub fn sample_zero_locus(f: &SliceFunction, res: usize, tol: f64) -> Vec<ZeroHit> {
    let stem = f.stem();
    let cn_at = |z: Complex64| -> f64 {
        let w = stem.eval_unchecked(z);
        (w * w.conj_c()).abs()
    };
    let points = f.domain().sample_grid_clipped(res.max(4), 8.0);
    if points.is_empty() {
        return vec![];
    }
    // Typical grid pitch, for the refinement step size.
    let pitch = {
        let mut best = f64::INFINITY;
        for w in points.windows(2) {
            let d = (w[1] - w[0]).norm();
            if d > 1e-12 && d < best {
                best = d;
            }
        }
        if best.is_finite() {
            best
        } else {
            0.1
        }
    };
    let relaxed = tol.max(1e-6);
    let mut hits: Vec<ZeroHit> = Vec::new();
    for &z0 in &points {
        let v0 = cn_at(z0);
        // Candidate when the coarse value is within reach of the refinement.
        if v0 > relaxed.max(pitch * pitch * 1e3) {
            continue;
        }
        // Pattern-search refinement of |CN| in (α, β).
        let mut z = z0;
        let mut v = v0;
        let mut step = pitch;
        while step > 1e-12 {
            let mut improved = false;
            for d in [
                Complex64::new(step, 0.0),
                Complex64::new(-step, 0.0),
                Complex64::new(0.0, step),
                Complex64::new(0.0, -step),
            ] {
                let cand = z + d;
                if cand.im < 0.0 || !f.domain().contains_z(cand) {
                    continue;
                }
                let cv = cn_at(cand);
                if cv < v {
                    z = cand;
                    v = cv;
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        if v > relaxed {
            continue;
        }
        let sphere = SphereId::new(z.re, z.im);
        if hits.iter().any(|h| {
            (h.sphere.alpha - sphere.alpha).abs() < 10.0 * pitch.min(1e-3)
                && (h.sphere.beta - sphere.beta).abs() < 10.0 * pitch.min(1e-3)
        }) {
            continue;
        }
        if let Ok(class) = classify_sphere(f, sphere, relaxed) {
            if class != ZeroClassification::NoZero {
                hits.push(ZeroHit { sphere, class });
            } else if let Ok(ZeroClassification::SIsolated(p)) =
                classify_sphere(f, sphere, relaxed.sqrt())
            {
                // Near-zero CN at coarse resolution: accept with the softer
                // band only when the predicted point actually vanishes.
                if f.eval(p).map(|q| q.abs() <= relaxed.sqrt()).unwrap_or(false) {
                    hits.push(ZeroHit {
                        sphere,
                        class: ZeroClassification::SIsolated(p),
                    });
                }
            }
        }
    }
    hits
}

/// True iff the sphere is degenerate for `f`, i.e. `f|_S` is constant,
/// equivalently `∂_s f ≈ 0` there (`F₂(z) ≈ 0`).
pub fn is_degenerate_sphere(f: &SliceFunction, sphere: SphereId, tol: f64) -> Result<bool> {
    if sphere.beta <= 0.0 {
        return Err(Error::Argument(
            "degenerate spheres are defined for β > 0".into(),
        ));
    }
    let w = f.stem().eval(sphere.center_z())?;
    Ok(w.im.abs() <= tol)
}

/// Roots of a real-coefficient polynomial `c₀ + c₁ z + …` by the
/// Aberth-Ehrlich simultaneous iteration. Multiple roots converge linearly
/// instead of cubically, which still lands well inside the downstream
/// tolerances.
pub fn real_poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last() == Some(&0.0) {
        c.pop();
    }
    // Deflate roots at the origin exactly.
    let mut origin = 0;
    while c.len() > 1 && c[0] == 0.0 {
        c.remove(0);
        origin += 1;
    }
    let n = c.len() - 1;
    let mut roots: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); origin];
    if n == 0 {
        return roots;
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|v| v / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    // Cauchy bound on root moduli, with the starting angles offset so no
    // guess sits on the real axis (real roots are reached symmetrically).
    let bound = 1.0 + monic[..n].iter().map(|v| v.abs()).fold(0.0_f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let r = bound * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64);
            let t = std::f64::consts::TAU * k as f64 / n as f64 + 0.45;
            Complex64::new(r * t.cos(), r * t.sin())
        })
        .collect();
    for _ in 0..400 {
        let mut shift = 0.0_f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let w = if dp.norm() > 0.0 {
                p / dp
            } else {
                Complex64::new(1e-8, 1e-8)
            };
            let mut rep = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 1e-300 {
                        rep += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * rep;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            z[k] -= step;
            shift = shift.max(step.norm() / (1.0 + z[k].norm()));
        }
        if shift < 1e-14 {
            break;
        }
    }
    // Conjugate symmetry: real coefficients pair the roots, so snap tiny
    // imaginary parts produced by the complex iteration.
    for r in &mut z {
        if r.im.abs() < 1e-10 * (1.0 + r.norm()) {
            r.im = 0.0;
        }
    }
    roots.extend(z);
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ImaginaryUnit, ONE};
    use crate::domain::CircularDomain;
    use crate::stem::StemFunction;

    fn whole() -> CircularDomain {
        CircularDomain::rect(-10.0, 10.0, 0.0, 10.0).unwrap()
    }

    fn poly(coeffs: Vec<Quaternion>) -> SliceFunction {
        SliceFunction::induce(StemFunction::polynomial(coeffs, whole()))
    }

    #[test]
    fn root_finder_recovers_real_and_complex_roots() {
        // (z² + 1)(z - 2) = -2 + z - 2z² + z³
        let roots = real_poly_roots(&[-2.0, 1.0, -2.0, 1.0]);
        assert_eq!(roots.len(), 3);
        let mut found_real = false;
        let mut found_i = false;
        for r in roots {
            if (r - Complex64::new(2.0, 0.0)).norm() < 1e-8 {
                found_real = true;
            }
            if (r - Complex64::new(0.0, 1.0)).norm() < 1e-8 {
                found_i = true;
            }
        }
        assert!(found_real && found_i);
    }

    #[test]
    fn spherical_zero_classification() {
        let f = poly(vec![ONE, ZERO, ONE]); // x² + 1
        let c = classify_sphere(&f, SphereId::new(0.0, 1.0), CLASSIFY_TOL).unwrap();
        assert_eq!(c, ZeroClassification::SphericalOrReal);
    }

    #[test]
    fn isolated_zero_classification() {
        let f = poly(vec![-Quaternion::i(), ONE]); // x - i
        let c = classify_sphere(&f, SphereId::new(0.0, 1.0), CLASSIFY_TOL).unwrap();
        match c {
            ZeroClassification::SIsolated(p) => {
                assert!(p.approx_eq(Quaternion::i(), 1e-12));
            }
            other => panic!("expected S-isolated, got {:?}", other),
        }
        let c = classify_sphere(&f, SphereId::new(0.0, 2.0), CLASSIFY_TOL).unwrap();
        assert_eq!(c, ZeroClassification::NoZero);
    }

    #[test]
    fn real_zero_classification() {
        let f = poly(vec![Quaternion::real(-2.0), ONE]); // x - 2
        let c = classify_sphere(&f, SphereId::new(2.0, 0.0), CLASSIFY_TOL).unwrap();
        assert_eq!(c, ZeroClassification::SphericalOrReal);
        let c = classify_sphere(&f, SphereId::new(1.0, 0.0), CLASSIFY_TOL).unwrap();
        assert_eq!(c, ZeroClassification::NoZero);
    }

    #[test]
    fn binomial_product_zero_set() {
        // f = (x - i)·(x - j): CN = (z² + 1)², one sphere, S-isolated at i.
        let xi = poly(vec![-Quaternion::i(), ONE]);
        let xj = poly(vec![-Quaternion::j(), ONE]);
        let f = SliceFunction::induce(xi.stem().mul(xj.stem()).unwrap());
        let hits = find_zeros_polynomial(&f).unwrap();
        assert_eq!(hits.len(), 1);
        assert!((hits[0].sphere.alpha).abs() < 1e-6);
        assert!((hits[0].sphere.beta - 1.0).abs() < 1e-6);
        match hits[0].class {
            ZeroClassification::SIsolated(p) => {
                assert!(p.approx_eq(Quaternion::i(), 1e-6));
            }
            other => panic!("expected S-isolated, got {:?}", other),
        }
    }

    #[test]
    fn spherical_polynomial_zero_set() {
        let f = poly(vec![ONE, ZERO, ONE]);
        let hits = find_zeros_polynomial(&f).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].class, ZeroClassification::SphericalOrReal);

        // Same polynomial on a domain missing the unit sphere: empty.
        let far = SliceFunction::induce(StemFunction::polynomial(
            vec![ONE, ZERO, ONE],
            CircularDomain::rect(3.0, 5.0, 3.0, 5.0).unwrap(),
        ));
        assert!(find_zeros_polynomial(&far).unwrap().is_empty());
    }

    #[test]
    fn degenerate_normal_is_an_error() {
        // The zero polynomial has no zero structure at all.
        let f = poly(vec![ZERO, ZERO]);
        assert!(find_zeros_polynomial(&f).is_err());
    }

    #[test]
    fn degenerate_sphere_detection() {
        let sq = poly(vec![ZERO, ZERO, ONE]); // x²: F₂ = 2αβ
        assert!(is_degenerate_sphere(&sq, SphereId::new(0.0, 1.0), 1e-10).unwrap());
        assert!(!is_degenerate_sphere(&sq, SphereId::new(0.5, 1.0), 1e-10).unwrap());

        let id = poly(vec![ZERO, ONE]);
        assert!(!is_degenerate_sphere(&id, SphereId::new(0.0, 1.0), 1e-10).unwrap());
        assert!(is_degenerate_sphere(&id, SphereId::new(0.0, 0.0), 1e-10).is_err());

        // f = 1 - Ij has F₂ = -j ≠ 0 on every sphere.
        let d = CircularDomain::new_punctured(vec![crate::domain::Region::Rect {
            alpha: (-10.0, 10.0),
            beta: (0.0, 10.0),
        }])
        .unwrap();
        let sc = SliceFunction::induce(StemFunction::constant(ONE, -Quaternion::j(), d));
        assert!(!is_degenerate_sphere(&sc, SphereId::new(1.0, 1.0), 1e-10).unwrap());
    }

    #[test]
    fn sampling_search_matches_polynomial_path() {
        let f = poly(vec![-Quaternion::i(), ONE]);
        let wrapped = {
            let stem = f.stem().clone();
            SliceFunction::induce(StemFunction::callable(
                move |z| stem.eval_unchecked(z),
                whole(),
            ))
        };
        let hits = sample_zero_locus(&wrapped, 24, 1e-8);
        assert!(!hits.is_empty());
        let hit = hits
            .iter()
            .min_by(|a, b| {
                let da = (a.sphere.alpha).abs() + (a.sphere.beta - 1.0).abs();
                let db = (b.sphere.alpha).abs() + (b.sphere.beta - 1.0).abs();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        assert!(hit.sphere.alpha.abs() < 1e-3);
        assert!((hit.sphere.beta - 1.0).abs() < 1e-3);
    }

    #[test]
    fn sampling_search_on_slice_constant() {
        let d = CircularDomain::new_punctured(vec![crate::domain::Region::Rect {
            alpha: (-2.0, 2.0),
            beta: (0.5, 2.0),
        }])
        .unwrap();
        let f = SliceFunction::induce(StemFunction::constant(ONE, -Quaternion::j(), d));
        let hits = sample_zero_locus(&f, 8, 1e-9);
        assert!(!hits.is_empty());
        for h in hits {
            match h.class {
                ZeroClassification::SIsolated(p) => {
                    let (_, _, unit) = p.split();
                    assert!(unit
                        .unwrap()
                        .as_quaternion()
                        .approx_eq(-Quaternion::j(), 1e-8));
                }
                other => panic!("expected S-isolated, got {:?}", other),
            }
        }

        let one = SliceFunction::induce(StemFunction::constant(ONE, ZERO, whole()));
        assert!(sample_zero_locus(&one, 8, 1e-9).is_empty());
    }

    #[test]
    fn modulus_on_nondegenerate_sphere_has_two_extrema() {
        // |f|² restricted to a sphere is affine in I, so a great circle
        // through the extremes sees exactly two sign changes of the
        // derivative.
        let f = poly(vec![-Quaternion::i(), ONE]);
        let sphere = SphereId::new(0.3, 1.1);
        // Locate extreme directions by dense sampling.
        let mut best = (f64::INFINITY, ImaginaryUnit::i());
        let mut worst = (f64::NEG_INFINITY, ImaginaryUnit::i());
        for u in crate::principles::fibonacci_sphere(500) {
            let x = Quaternion::real(sphere.alpha) + u.as_quaternion() * sphere.beta;
            let v = f.eval(x).unwrap().abs();
            if v < best.0 {
                best = (v, u);
            }
            if v > worst.0 {
                worst = (v, u);
            }
        }
        // Great circle through the two extreme directions.
        let a = best.1.as_quaternion();
        let mut b = worst.1.as_quaternion();
        let dot = a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
        b = b - a * dot;
        let b = b / b.abs();
        let n = 720;
        let val = |t: f64| -> f64 {
            let u = a * t.cos() + b * t.sin();
            let x = Quaternion::real(sphere.alpha) + u * sphere.beta;
            f.eval(x).unwrap().abs()
        };
        let mut signs = 0;
        let mut prev = val(0.0) - val(-std::f64::consts::TAU / n as f64);
        for k in 1..=n {
            let t = std::f64::consts::TAU * k as f64 / n as f64;
            let d = val(t) - val(t - std::f64::consts::TAU / n as f64);
            if d * prev < 0.0 {
                signs += 1;
            }
            if d != 0.0 {
                prev = d;
            }
        }
        assert_eq!(signs, 2);
    }
}
