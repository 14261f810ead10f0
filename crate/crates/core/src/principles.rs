//! Executable checkers for the structure theorems on circular domains
//! without real points: identity principle, mean value and extremum scans,
//! minimum modulus, the semislice mass operator and an open-mapping probe.

use num_complex::Complex64;

use crate::algebra::{ImaginaryUnit, Quaternion};
use crate::calculus::{d_dx, DerivativeConfig};
use crate::error::{Error, Result};
use crate::slice::SliceFunction;

/// Samples claimed as zeros must satisfy `|f| ≤ ZERO_TOL`.
pub const ZERO_TOL: f64 = 1e-8;
/// Accumulation surrogate: this many samples inside a disk of radius
/// `CLUSTER_RADIUS` with some pairwise distance below `PAIR_DIST`.
pub const CLUSTER_MIN: usize = 12;
pub const CLUSTER_RADIUS: f64 = 1e-2;
pub const PAIR_DIST: f64 = 1e-3;

/// Outcome of a principle checker, with the evidence baked into the variant.
#[derive(Clone, Debug, PartialEq)]
pub enum PrincipleVerdict {
    IdenticallyZero,
    SliceConstant,
    ZeroAtPoint(Quaternion),
    ConstantSemislice(ImaginaryUnit),
    Inconclusive(String),
}

/// Quadrature mass of `|f|` over one semislice.
#[derive(Clone, Copy, Debug)]
pub struct SemisliceMassReport {
    pub unit: ImaginaryUnit,
    pub mass: f64,
    pub quadrature_error_estimate: f64,
}

/// Near-uniform deterministic covering of the imaginary sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<ImaginaryUnit> {
    let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let t = (k as f64 + 0.5) / n as f64;
        let z = 1.0 - 2.0 * t;
        let r = (1.0 - z * z).sqrt();
        let phi = std::f64::consts::TAU * (k as f64 / golden).fract();
        out.push(
            ImaginaryUnit::from_components(r * phi.cos(), r * phi.sin(), z)
                .expect("nonzero direction"),
        );
    }
    out
}

fn has_accumulation(samples: &[Complex64]) -> bool {
    for (i, &c) in samples.iter().enumerate() {
        let cluster: Vec<Complex64> = samples
            .iter()
            .copied()
            .filter(|&p| (p - c).norm() <= CLUSTER_RADIUS)
            .collect();
        if cluster.len() < CLUSTER_MIN {
            continue;
        }
        let mut min_pair = f64::INFINITY;
        let mut distinct = false;
        for (a_idx, &a) in cluster.iter().enumerate() {
            for &b in &cluster[a_idx + 1..] {
                let d = (a - b).norm();
                if d > 0.0 {
                    distinct = true;
                    if d < min_pair {
                        min_pair = d;
                    }
                }
            }
        }
        if distinct && min_pair < PAIR_DIST {
            return true;
        }
        let _ = i;
    }
    false
}

/// Identity principle: zeros accumulating on two distinct semislices force
/// the whole function to vanish. Sample lists are claimed zeros of `f` on
/// `C_J⁺` and `C_K⁺`, given as points `z = α + √-1 β` of the half-plane.
pub fn identity_verdict(
    f: &SliceFunction,
    j_unit: ImaginaryUnit,
    k_unit: ImaginaryUnit,
    zero_samples_j: &[Complex64],
    zero_samples_k: &[Complex64],
) -> Result<PrincipleVerdict> {
    if j_unit.as_quaternion().approx_eq(k_unit.as_quaternion(), 1e-12) {
        return Err(Error::Argument("semislices must be distinct".into()));
    }
    for (unit, samples) in [(j_unit, zero_samples_j), (k_unit, zero_samples_k)] {
        for &z in samples {
            let v = f.eval_slice(unit, z)?;
            if v.abs() > ZERO_TOL {
                return Err(Error::Argument(format!(
                    "claimed zero at z = {} on the {:?} semislice has |f| = {}",
                    z,
                    unit,
                    v.abs()
                )));
            }
        }
    }
    let acc_j = has_accumulation(zero_samples_j);
    let acc_k = has_accumulation(zero_samples_k);
    if !(acc_j && acc_k) {
        return Ok(PrincipleVerdict::Inconclusive(
            "zeros accumulate on at most one semislice".into(),
        ));
    }
    if let Some(coeffs) = f.stem().coefficients() {
        if coeffs.iter().all(|c| c.abs() <= ZERO_TOL) {
            return Ok(PrincipleVerdict::IdenticallyZero);
        }
        return Ok(PrincipleVerdict::Inconclusive(
            "polynomial coefficients do not vanish".into(),
        ));
    }
    // Non-polynomial backend: dense evaluation over the circular domain.
    let grid = f.domain().sample_grid_clipped(24, 8.0);
    for unit in fibonacci_sphere(24) {
        for &z in &grid {
            if f.eval_slice(unit, z)?.abs() > ZERO_TOL {
                return Ok(PrincipleVerdict::Inconclusive(
                    "function does not vanish on a dense grid".into(),
                ));
            }
        }
    }
    Ok(PrincipleVerdict::IdenticallyZero)
}

/// Residual of the circle mean value property on one semislice, by
/// trapezoidal quadrature with 512 nodes.
pub fn mean_value_residual(
    f: &SliceFunction,
    unit: ImaginaryUnit,
    center: Complex64,
    r: f64,
) -> Result<f64> {
    if r <= 0.0 {
        return Err(Error::Argument("radius must be positive".into()));
    }
    const N: usize = 512;
    // Containment of the closed disk, probed on the circle itself.
    let mut acc = Quaternion::real(0.0);
    for k in 0..N {
        let theta = std::f64::consts::TAU * k as f64 / N as f64;
        let z = center + Complex64::new(r * theta.cos(), r * theta.sin());
        if z.im <= 0.0 || !f.domain().contains_z(z) {
            return Err(Error::Argument(format!(
                "disk of radius {} around {} leaves the semislice",
                r, center
            )));
        }
        acc = acc + f.eval_slice(unit, z)?;
    }
    let mean = acc / N as f64;
    Ok((mean - f.eval_slice(unit, center)?).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug)]
pub struct Extremum {
    pub z: Complex64,
    pub point: Quaternion,
    pub kind: ExtremumKind,
    pub value: f64,
    /// Grid boundary extrema are flagged; only interior ones feed the
    /// modulus principles.
    pub interior: bool,
}

/// Local extrema of `|f_I⁺|` on a rectangular grid over the upper half
/// domain, with 8-neighbor comparison and one quadratic refinement step.
/// Flat plateaus are reported as maxima at every plateau point.
pub fn extremum_scan(
    f: &SliceFunction,
    unit: ImaginaryUnit,
    res: usize,
) -> Result<Vec<Extremum>> {
    let (a0, a1, b0, b1) = f.domain().bounding_box()?;
    let b0 = b0.max(0.0);
    let n = res.max(3);
    let da = (a1 - a0) / (n - 1) as f64;
    let db = (b1 - b0) / (n - 1) as f64;
    let mut vals = vec![f64::NAN; n * n];
    let zat = |ia: usize, ib: usize| {
        Complex64::new(a0 + da * ia as f64, b0 + db * ib as f64)
    };
    for ib in 0..n {
        for ia in 0..n {
            let z = zat(ia, ib);
            if z.im > 0.0 && f.domain().contains_z(z) {
                vals[ib * n + ia] = f.eval_slice(unit, z)?.abs();
            }
        }
    }
    let mut out = Vec::new();
    for ib in 0..n {
        for ia in 0..n {
            let v = vals[ib * n + ia];
            if v.is_nan() {
                continue;
            }
            let mut ge_all = true;
            let mut le_all = true;
            let mut strict_hi = false;
            let mut strict_lo = false;
            let mut neighbors = 0;
            for db_i in -1i64..=1 {
                for da_i in -1i64..=1 {
                    if da_i == 0 && db_i == 0 {
                        continue;
                    }
                    let (ja, jb) = (ia as i64 + da_i, ib as i64 + db_i);
                    if ja < 0 || jb < 0 || ja >= n as i64 || jb >= n as i64 {
                        continue;
                    }
                    let w = vals[jb as usize * n + ja as usize];
                    if w.is_nan() {
                        continue;
                    }
                    neighbors += 1;
                    if v < w {
                        ge_all = false;
                        strict_lo = true;
                    }
                    if v > w {
                        le_all = false;
                        strict_hi = true;
                    }
                }
            }
            if neighbors == 0 {
                continue;
            }
            let interior = ia > 0 && ib > 0 && ia + 1 < n && ib + 1 < n && neighbors == 8;
            let kind = if ge_all {
                ExtremumKind::Max
            } else if le_all && strict_lo {
                ExtremumKind::Min
            } else {
                continue;
            };
            // Quadratic refinement along each axis from the three-point
            // parabola; clamped to one grid cell.
            let mut z = zat(ia, ib);
            if interior && (strict_hi || strict_lo) {
                let va = (
                    vals[ib * n + ia - 1],
                    v,
                    vals[ib * n + ia + 1],
                );
                let vb = (
                    vals[(ib - 1) * n + ia],
                    v,
                    vals[(ib + 1) * n + ia],
                );
                let shift = |m: (f64, f64, f64), h: f64| -> f64 {
                    let denom = m.0 - 2.0 * m.1 + m.2;
                    if denom.abs() < 1e-300 {
                        0.0
                    } else {
                        (0.5 * (m.0 - m.2) / denom * h).clamp(-h, h)
                    }
                };
                if !va.0.is_nan() && !va.2.is_nan() {
                    z.re += shift(va, da);
                }
                if !vb.0.is_nan() && !vb.2.is_nan() {
                    z.im += shift(vb, db);
                }
            }
            let value = if f.domain().contains_z(z) {
                f.eval_slice(unit, z)?.abs()
            } else {
                z = zat(ia, ib);
                v
            };
            out.push(Extremum {
                z,
                point: Quaternion::real(z.re) + unit.as_quaternion() * z.im,
                kind,
                value,
                interior,
            });
        }
    }
    Ok(out)
}

/// Quadrature configuration for the mass operator.
#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub res: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { res: 64 }
    }
}

/// Mass `∫_{D⁺} |F₁(z) + I F₂(z)| dμ` by midpoint quadrature. The error
/// estimate compares against the half-resolution rule.
pub fn semislice_mass(
    f: &SliceFunction,
    unit: ImaginaryUnit,
    cfg: QuadConfig,
) -> Result<SemisliceMassReport> {
    let run = |res: usize| -> Result<f64> {
        let mut acc = 0.0;
        for (z, w) in f.domain().quadrature_cells(res)? {
            acc += w * f.eval_slice(unit, z)?.abs();
        }
        Ok(acc)
    };
    let res = cfg.res.max(4);
    let mass = run(res)?;
    let coarse = run(res / 2)?;
    Ok(SemisliceMassReport {
        unit,
        mass,
        quadrature_error_estimate: (mass - coarse).abs(),
    })
}

/// Semislices on which `∂f/∂x` vanishes identically, located by the mass
/// operator: a Fibonacci scan over the sphere plus one algebraic candidate
/// solved from the stem of the derivative. When at least two distinct
/// semislices are found the derivative must vanish everywhere; anything
/// else is reported as an inconsistency.
pub fn kernel_semislices(
    f: &SliceFunction,
    n_directions: usize,
    tol: f64,
) -> Result<Vec<ImaginaryUnit>> {
    let cfg = DerivativeConfig::default();
    let g = d_dx(f, &cfg);
    let quad = QuadConfig { res: 32 };
    let mut found: Vec<ImaginaryUnit> = Vec::new();
    for unit in fibonacci_sphere(n_directions.max(8)) {
        if semislice_mass(&g, unit, quad)?.mass <= tol {
            found.push(unit);
        }
    }
    let all = found.len() == n_directions.max(8);
    if !all {
        // Algebraic candidate: at the grid point where |G₂| is largest,
        // G₁ + I G₂ = 0 has at most one solution on the sphere.
        let grid = g.domain().sample_grid_clipped(16, 8.0);
        let mut best: Option<(f64, Complex64)> = None;
        for &z in &grid {
            let w = g.stem().eval_unchecked(z);
            let m = w.im.abs();
            if best.map(|(b, _)| m > b).unwrap_or(true) {
                best = Some((m, z));
            }
        }
        if let Some((m, z)) = best {
            if m > 1e-12 {
                let w = g.stem().eval_unchecked(z);
                if let Ok(inv) = w.im.inverse() {
                    let cand = -(w.re * inv);
                    if cand.w.abs() <= 1e-6 && (cand.im_abs() - 1.0).abs() <= 1e-6 {
                        if let Ok(unit) =
                            ImaginaryUnit::from_components(cand.x1, cand.x2, cand.x3)
                        {
                            let fresh = !found.iter().any(|u| {
                                u.as_quaternion().approx_eq(unit.as_quaternion(), 1e-6)
                            });
                            if fresh && semislice_mass(&g, unit, quad)?.mass <= tol {
                                found.push(unit);
                            }
                        }
                    }
                }
            }
        }
    }
    if found.len() >= 2 && !all {
        // Two distinct kernel semislices force a vanishing derivative.
        for &z in &g.domain().sample_grid_clipped(12, 8.0) {
            if g.stem().eval_unchecked(z).abs() > 10.0 * tol.max(1e-8) {
                return Err(Error::Inconsistency(
                    "two kernel semislices found but the derivative does not vanish".into(),
                ));
            }
        }
    }
    Ok(found)
}

/// Minimum modulus dichotomy at a local minimum `p` of `|f_I⁺|`: either `f`
/// vanishes there (after a local descent refinement of `p` within its
/// semislice) or some semislice of the domain is constant for `f`.
pub fn min_modulus_verdict(
    f: &SliceFunction,
    p: Quaternion,
    tol: f64,
) -> Result<PrincipleVerdict> {
    if !f.domain().contains(p) {
        return Err(Error::OutOfDomain(format!("{:?}", p)));
    }
    let (alpha, beta, unit) = p.split();
    let unit = unit.ok_or_else(|| {
        Error::Argument("minimum refinement needs a non-real point".into())
    })?;
    // Pattern-search descent of |f| on the semislice; grid minima sit a
    // grid pitch away from the true minimum.
    let mut z = Complex64::new(alpha, beta);
    let mut v = f.eval_slice(unit, z)?.abs();
    let mut step = 0.1;
    while step > 1e-12 {
        let mut improved = false;
        for d in [
            Complex64::new(step, 0.0),
            Complex64::new(-step, 0.0),
            Complex64::new(0.0, step),
            Complex64::new(0.0, -step),
        ] {
            let c = z + d;
            if c.im <= 0.0 || !f.domain().contains_z(c) {
                continue;
            }
            let cv = f.eval_slice(unit, c)?.abs();
            if cv < v {
                z = c;
                v = cv;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    if v <= tol {
        let point = Quaternion::real(z.re) + unit.as_quaternion() * z.im;
        return Ok(PrincipleVerdict::ZeroAtPoint(point));
    }
    let kernel = kernel_semislices(f, 256, 1e-6)?;
    if let Some(u) = kernel.first() {
        return Ok(PrincipleVerdict::ConstantSemislice(*u));
    }
    Ok(PrincipleVerdict::Inconclusive(format!(
        "refined minimum has |f| = {} and no constant semislice was found",
        v
    )))
}

fn halton(index: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut i = index;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}

/// Deterministic low-discrepancy points of the unit ball in R⁴; `seed`
/// offsets the sequence.
pub fn ball_samples(n: usize, seed: usize) -> Vec<Quaternion> {
    let bases = [2, 3, 5, 7];
    let mut out = Vec::with_capacity(n);
    let mut idx = 1 + seed;
    while out.len() < n {
        let u: Vec<f64> = bases.iter().map(|&b| 2.0 * halton(idx, b) - 1.0).collect();
        idx += 1;
        let q = Quaternion::new(u[0], u[1], u[2], u[3]);
        if q.norm_sq() <= 1.0 {
            out.push(q);
        }
    }
    out
}

/// Monte-Carlo openness test at `x`: samples the ball `B(x, r)`, then asks
/// whether some ball `B(f(x), ρ)`, `ρ` from `eps_grid`, is covered by image
/// points in the sense that every cell of a 4-per-axis lattice with center
/// inside `0.8ρ` contains one. A `true` is a certificate only at this
/// resolution.
pub fn openness_probe(
    f: &SliceFunction,
    x: Quaternion,
    r: f64,
    n_samples: usize,
    eps_grid: &[f64],
    seed: usize,
) -> Result<bool> {
    if r <= 0.0 || eps_grid.is_empty() {
        return Err(Error::Argument("need r > 0 and a nonempty eps grid".into()));
    }
    let center = f.eval(x)?;
    let mut images = Vec::with_capacity(n_samples);
    for q in ball_samples(n_samples, seed) {
        let p = x + q * r;
        if !f.domain().contains(p) {
            return Err(Error::OutOfDomain(format!(
                "ball of radius {} around {:?} leaves the domain",
                r, x
            )));
        }
        images.push(f.eval(p)?);
    }
    // Odd lattice size so that cells centered on the coordinate axes exist;
    // those witness failures for maps whose image avoids an axis.
    const M: usize = 5;
    'rho: for &rho in eps_grid {
        if rho <= 0.0 {
            continue;
        }
        let pitch = 2.0 * rho / M as f64;
        let mut occupied = vec![false; M * M * M * M];
        for im in &images {
            let d = *im - center;
            let idx = |c: f64| -> Option<usize> {
                let t = ((c + rho) / pitch).floor();
                if t < 0.0 || t >= M as f64 {
                    None
                } else {
                    Some(t as usize)
                }
            };
            if let (Some(a), Some(b), Some(c), Some(e)) =
                (idx(d.w), idx(d.x1), idx(d.x2), idx(d.x3))
            {
                occupied[((a * M + b) * M + c) * M + e] = true;
            }
        }
        for a in 0..M {
            for b in 0..M {
                for c in 0..M {
                    for e in 0..M {
                        let cell_center = |i: usize| -rho + (i as f64 + 0.5) * pitch;
                        let cc = Quaternion::new(
                            cell_center(a),
                            cell_center(b),
                            cell_center(c),
                            cell_center(e),
                        );
                        if cc.abs() <= 0.8 * rho && !occupied[((a * M + b) * M + c) * M + e] {
                            continue 'rho;
                        }
                    }
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ONE, ZERO};
    use crate::domain::CircularDomain;
    use crate::stem::StemFunction;

    fn upper_rect() -> CircularDomain {
        CircularDomain::rect(-2.0, 2.0, 0.5, 2.5).unwrap()
    }

    fn poly(coeffs: Vec<Quaternion>, d: CircularDomain) -> SliceFunction {
        SliceFunction::induce(StemFunction::polynomial(coeffs, d))
    }

    fn slice_constant(d: CircularDomain) -> SliceFunction {
        SliceFunction::induce(StemFunction::constant(ONE, -Quaternion::j(), d))
    }

    fn cluster(center: Complex64, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|k| center + Complex64::new(1e-4 * k as f64, 5e-5 * (k % 3) as f64))
            .collect()
    }

    #[test]
    fn fibonacci_directions_are_units_and_spread() {
        let dirs = fibonacci_sphere(256);
        assert_eq!(dirs.len(), 256);
        for d in &dirs {
            assert!((d.as_quaternion().abs() - 1.0).abs() < 1e-12);
        }
        let m: f64 = dirs
            .iter()
            .map(|d| d.as_quaternion())
            .fold(ZERO, |a, b| a + b)
            .abs()
            / 256.0;
        assert!(m < 0.02, "mean direction {}", m);
    }

    #[test]
    fn identity_verdict_zero_function() {
        let d = CircularDomain::new_punctured(vec![crate::domain::Region::Rect {
            alpha: (-2.0, 2.0),
            beta: (0.0, 2.5),
        }])
        .unwrap();
        let f = poly(vec![ZERO], d);
        let z = Complex64::new(0.3, 1.0);
        let v = identity_verdict(
            &f,
            ImaginaryUnit::i(),
            ImaginaryUnit::j(),
            &cluster(z, 15),
            &cluster(z, 15),
        )
        .unwrap();
        assert_eq!(v, PrincipleVerdict::IdenticallyZero);
    }

    #[test]
    fn identity_verdict_single_semislice_counterexample() {
        let d = CircularDomain::new_punctured(vec![crate::domain::Region::Rect {
            alpha: (-4.0, 4.0),
            beta: (0.0, 4.0),
        }])
        .unwrap();
        let f = slice_constant(d);
        // Zeros live exactly on the -j semislice.
        let z = Complex64::new(0.1, 1.5);
        let v = identity_verdict(
            &f,
            ImaginaryUnit::new(-Quaternion::j()).unwrap(),
            ImaginaryUnit::i(),
            &cluster(z, 15),
            &[],
        )
        .unwrap();
        assert!(matches!(v, PrincipleVerdict::Inconclusive(_)));
        // Claiming a zero on a semislice where f ≠ 0 is an argument error.
        assert!(identity_verdict(
            &f,
            ImaginaryUnit::i(),
            ImaginaryUnit::j(),
            &cluster(z, 15),
            &[],
        )
        .is_err());
    }

    #[test]
    fn mean_value_linear_and_cubic() {
        let f = poly(vec![ZERO, ONE], upper_rect());
        let r = mean_value_residual(&f, ImaginaryUnit::i(), Complex64::new(0.0, 1.5), 0.5)
            .unwrap();
        assert!(r <= 1e-12);

        // x³ - x j: holomorphic components, mean value to quadrature error.
        let g = poly(
            vec![ZERO, -Quaternion::j(), ZERO, ONE],
            upper_rect(),
        );
        let r = mean_value_residual(&g, ImaginaryUnit::j(), Complex64::new(0.4, 1.2), 0.6)
            .unwrap();
        assert!(r <= 1e-8, "residual {}", r);

        // |x|-style callable: no mean value property.
        let h = SliceFunction::induce(StemFunction::callable(
            |z| {
                crate::algebra::ComplexifiedQuaternion::new(
                    Quaternion::real(z.norm()),
                    ZERO,
                )
            },
            upper_rect(),
        ));
        let r = mean_value_residual(&h, ImaginaryUnit::i(), Complex64::new(0.0, 1.5), 0.7)
            .unwrap();
        assert!(r > 1e-3, "residual {}", r);

        // Disk leaving the semislice is rejected.
        assert!(
            mean_value_residual(&f, ImaginaryUnit::i(), Complex64::new(0.0, 0.6), 0.5)
                .is_err()
        );
    }

    #[test]
    fn extremum_scan_monotone_modulus() {
        let d = CircularDomain::rect(1.0, 2.0, 1.0, 2.0).unwrap();
        let f = poly(vec![ZERO, ONE], d);
        let ext = extremum_scan(&f, ImaginaryUnit::i(), 21).unwrap();
        let max = ext
            .iter()
            .filter(|e| e.kind == ExtremumKind::Max)
            .max_by(|a, b| a.value.partial_cmp(&b.value).unwrap())
            .unwrap();
        // The domain is open, so the top sample sits one grid pitch inside
        // the corner.
        assert!((max.z - Complex64::new(2.0, 2.0)).norm() < 0.11);
        assert!(!max.interior);
        assert!(!ext.iter().any(|e| e.interior && e.kind == ExtremumKind::Max));
    }

    #[test]
    fn extremum_scan_finds_interior_min_at_zero() {
        let f = poly(vec![-Quaternion::i(), ONE], upper_rect()); // zero at i
        let ext = extremum_scan(&f, ImaginaryUnit::i(), 41).unwrap();
        let min = ext
            .iter()
            .filter(|e| e.interior && e.kind == ExtremumKind::Min)
            .min_by(|a, b| a.value.partial_cmp(&b.value).unwrap())
            .expect("interior minimum");
        assert!((min.z - Complex64::new(0.0, 1.0)).norm() < 0.1);
    }

    #[test]
    fn mass_of_slice_constant() {
        let d = CircularDomain::rect(0.0, 1.0, 1.0, 2.0).unwrap();
        let f = slice_constant(d);
        let minus_j = ImaginaryUnit::new(-Quaternion::j()).unwrap();
        let m = semislice_mass(&f, minus_j, QuadConfig::default()).unwrap();
        assert!(m.mass <= 1e-12);
        let m = semislice_mass(&f, ImaginaryUnit::i(), QuadConfig::default()).unwrap();
        assert!((m.mass - 2.0_f64.sqrt()).abs() <= 1e-9, "mass {}", m.mass);
        assert!(m.quadrature_error_estimate <= 1e-9);

        let zero = poly(vec![ZERO], CircularDomain::rect(0.0, 1.0, 1.0, 2.0).unwrap());
        for u in fibonacci_sphere(16) {
            assert_eq!(semislice_mass(&zero, u, QuadConfig::default()).unwrap().mass, 0.0);
        }
    }

    #[test]
    fn mass_requires_bounded_domain() {
        let f = slice_constant(CircularDomain::quaternions_without_reals());
        assert!(semislice_mass(&f, ImaginaryUnit::i(), QuadConfig::default()).is_err());
    }

    #[test]
    fn kernel_semislices_trichotomy() {
        // g = 2x never slice-vanishes: empty.
        let f = poly(vec![ZERO, ZERO, ONE], upper_rect());
        assert!(kernel_semislices(&f, 64, 1e-6).unwrap().is_empty());

        // Derivative 1 - Ij: exactly the -j semislice, found algebraically.
        let d = upper_rect();
        let lin = poly(vec![ZERO, ONE], d.clone());
        let tw = SliceFunction::induce(
            poly(vec![ZERO, ONE], d.clone())
                .stem()
                .mul(&StemFunction::constant(ZERO, -Quaternion::j(), d.clone()))
                .unwrap(),
        );
        let f = SliceFunction::induce(lin.stem().add(tw.stem()).unwrap());
        let ks = kernel_semislices(&f, 64, 1e-6).unwrap();
        assert_eq!(ks.len(), 1);
        assert!(ks[0].as_quaternion().approx_eq(-Quaternion::j(), 1e-8));

        // Slice constant: every direction belongs to the kernel.
        let sc = slice_constant(d);
        let ks = kernel_semislices(&sc, 64, 1e-6).unwrap();
        assert_eq!(ks.len(), 64);
    }

    #[test]
    fn min_modulus_dichotomy() {
        let f = poly(vec![-Quaternion::i(), ONE], upper_rect());
        // Start from a coarse nearby point; refinement must land on i.
        let p = Quaternion::new(0.05, 1.1, 0.0, 0.0);
        match min_modulus_verdict(&f, p, 1e-8).unwrap() {
            PrincipleVerdict::ZeroAtPoint(q) => {
                assert!(q.approx_eq(Quaternion::i(), 1e-6));
            }
            other => panic!("expected zero point, got {:?}", other),
        }

        let d = CircularDomain::new_punctured(vec![crate::domain::Region::Rect {
            alpha: (-2.0, 2.0),
            beta: (0.0, 2.5),
        }])
        .unwrap();
        let sc = slice_constant(d);
        let p = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        match min_modulus_verdict(&sc, p, 1e-8).unwrap() {
            PrincipleVerdict::ConstantSemislice(_) => {}
            other => panic!("expected constant semislice, got {:?}", other),
        }
    }

    #[test]
    fn openness_probe_square() {
        let d = CircularDomain::rect(-4.0, 4.0, 0.25, 4.0).unwrap();
        let f = poly(vec![ZERO, ZERO, ONE], d);
        let x = Quaternion::new(1.0, 1.0, 0.0, 0.0);
        let open = openness_probe(&f, x, 0.1, 40_000, &[0.15, 0.1, 0.05], 0).unwrap();
        assert!(open);
    }

    #[test]
    fn openness_probe_rejects_escaping_ball() {
        let d = CircularDomain::rect(-1.0, 1.0, 0.5, 1.0).unwrap();
        let f = poly(vec![ZERO, ONE], d);
        let x = Quaternion::new(0.0, 0.55, 0.0, 0.0);
        assert!(openness_probe(&f, x, 0.2, 100, &[0.1], 0).is_err());
    }
}
