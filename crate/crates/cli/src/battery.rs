//! The verification battery behind `quatslice verify`. Each criterion is a
//! standalone function with its tolerances pinned here, returning a
//! pass/fail record with a human-readable detail line.

use std::time::Instant;

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quatslice::algebra::{ImaginaryUnit, Quaternion, ONE, ZERO};
use quatslice::calculus::{cullen_residual, is_slice_regular, DerivativeConfig};
use quatslice::domain::CircularDomain;
use quatslice::gallery;
use quatslice::principles::{
    self, extremum_scan, identity_verdict, min_modulus_verdict, openness_probe, ExtremumKind,
    PrincipleVerdict,
};
use quatslice::products::{reciprocal, slice_product, t_map};
use quatslice::slice::{represent, represent_general, represent_opposite, SliceFunction};
use quatslice::stem::StemFunction;
use quatslice::zeros::{classify_sphere, find_zeros_polynomial, SphereId, ZeroClassification};
use quatslice::Complex64;

pub const REPR_TOL: f64 = 1e-10;
pub const REPR_PATH_TOL: f64 = 1e-12;
pub const PRODUCT_TOL: f64 = 1e-8;
pub const PRODUCT_REAL_TOL: f64 = 1e-10;
pub const RECIP_TOL: f64 = 1e-8;
pub const IDENTITY_COEFF_TOL: f64 = 1e-8;
pub const FIXTURE_TOL: f64 = 1e-10;
pub const EXPANSION_TOL: f64 = 1e-10;
pub const CULLEN_TOL: f64 = 1e-6;
pub const MINMOD_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_s: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {} ({:.2}s): {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed_s,
            self.detail
        )
    }
}

fn finish(
    id: usize,
    name: &'static str,
    start: Instant,
    pass: bool,
    detail: String,
) -> CriterionResult {
    CriterionResult {
        id,
        name,
        pass,
        detail,
        elapsed_s: start.elapsed().as_secs_f64(),
    }
}

fn rand_quat(rng: &mut ChaCha8Rng) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

fn rand_unit(rng: &mut ChaCha8Rng) -> ImaginaryUnit {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 {
            return ImaginaryUnit::from_components(v[0], v[1], v[2]).expect("nonzero");
        }
    }
}

fn rand_poly(rng: &mut ChaCha8Rng, deg: usize, d: &CircularDomain) -> SliceFunction {
    let coeffs: Vec<Quaternion> = (0..=deg).map(|_| rand_quat(rng)).collect();
    SliceFunction::induce(StemFunction::polynomial(coeffs, d.clone()))
}

fn wide() -> CircularDomain {
    CircularDomain::rect(-5.0, 5.0, 0.0, 5.0).expect("valid rect")
}

fn off_axis() -> CircularDomain {
    CircularDomain::rect(-2.0, 2.0, 0.5, 2.5).expect("valid rect")
}

/// Criterion 1: the representation formula reconstructs evaluation, and the
/// opposite-unit path matches the general one.
pub fn criterion_1(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x01);
    let d = wide();
    let mut worst_rec = 0.0_f64;
    let mut worst_path = 0.0_f64;
    for _ in 0..100 {
        let deg = rng.gen_range(1..=6);
        let f = rand_poly(&mut rng, deg, &d);
        let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..2.5));
        let (j, k, i) = loop {
            let j = rand_unit(&mut rng);
            let k = rand_unit(&mut rng);
            let i = rand_unit(&mut rng);
            if (j.as_quaternion() - k.as_quaternion()).abs() > 1e-3 {
                break (j, k, i);
            }
        };
        let (vj, vk) = (
            f.eval_slice(j, z).expect("in domain"),
            f.eval_slice(k, z).expect("in domain"),
        );
        let rec = represent(vj, vk, j, k, i).expect("distinct units");
        let direct = f.eval_slice(i, z).expect("in domain");
        worst_rec = worst_rec.max((rec - direct).abs() / (1.0 + direct.abs()));

        let v_neg = f.eval_slice(-j, z).expect("in domain");
        let a = represent_general(vj, v_neg, j, -j, i);
        let b = represent_opposite(vj, v_neg, j, i);
        worst_path = worst_path.max((a - b).abs() / (1.0 + a.abs()));
    }
    let pass = worst_rec <= REPR_TOL && worst_path <= REPR_PATH_TOL;
    finish(
        1,
        "representation formula",
        start,
        pass,
        format!(
            "max relative reconstruction error {:.2e} (tol {:.0e}), path split {:.2e} (tol {:.0e})",
            worst_rec, REPR_TOL, worst_path, REPR_PATH_TOL
        ),
    )
}

/// Criterion 2: slice product composition identity, plus pointwise product
/// when the left factor is real.
pub fn criterion_2(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x02);
    let d = wide();
    let mut worst = 0.0_f64;
    let mut worst_real = 0.0_f64;
    for _ in 0..100 {
        let deg_f = rng.gen_range(1..=4);
        let f = rand_poly(&mut rng, deg_f, &d);
        let deg_g = rng.gen_range(1..=4);
        let g = rand_poly(&mut rng, deg_g, &d);
        let x = loop {
            let u = rand_unit(&mut rng);
            let x = Quaternion::real(rng.gen_range(-2.0..2.0))
                + u.as_quaternion() * rng.gen_range(0.2..2.0);
            if f.eval(x).expect("in domain").abs() > 1e-2 {
                break x;
            }
        };
        let fg = slice_product(&f, &g).expect("same domain");
        let fx = f.eval(x).expect("in domain");
        let conj_pt = fx.inverse().expect("nonzero") * x * fx;
        let rhs = fx * g.eval(conj_pt).expect("in domain");
        let lhs = fg.eval(x).expect("in domain");
        worst = worst.max((lhs - rhs).abs() / (1.0 + rhs.abs()));

        let real_coeffs: Vec<Quaternion> = (0..=3)
            .map(|_| Quaternion::real(rng.gen_range(-1.0..1.0)))
            .collect();
        let fr = SliceFunction::induce(StemFunction::polynomial(real_coeffs, d.clone()));
        let frg = slice_product(&fr, &g).expect("same domain");
        let rhs = fr.eval(x).expect("in domain") * g.eval(x).expect("in domain");
        let lhs = frg.eval(x).expect("in domain");
        worst_real = worst_real.max((lhs - rhs).abs() / (1.0 + rhs.abs()));
    }
    let pass = worst <= PRODUCT_TOL && worst_real <= PRODUCT_REAL_TOL;
    finish(
        2,
        "slice product semantics",
        start,
        pass,
        format!(
            "composition identity {:.2e} (tol {:.0e}), real-factor pointwise {:.2e} (tol {:.0e})",
            worst, PRODUCT_TOL, worst_real, PRODUCT_REAL_TOL
        ),
    )
}

/// Criterion 3: reciprocal identities for zero-free polynomials on a domain
/// away from the reals.
pub fn criterion_3(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x03);
    let d = off_axis();
    let mut worst_unit = 0.0_f64;
    let mut worst_tf = 0.0_f64;
    let mut built = 0;
    'outer: for _ in 0..200 {
        if built >= 50 {
            break;
        }
        let mut coeffs: Vec<Quaternion> =
            (0..=rng.gen_range(1..=4)).map(|_| rand_quat(&mut rng)).collect();
        coeffs[0] = coeffs[0] + Quaternion::real(6.0);
        let f = SliceFunction::induce(StemFunction::polynomial(coeffs, d.clone()));
        match quatslice::zeros::cn_roots_upper(&f) {
            Ok(roots) if roots.is_empty() => {}
            _ => continue 'outer,
        }
        let r = match reciprocal(&f) {
            Ok(r) => r,
            Err(_) => continue 'outer,
        };
        built += 1;
        let fr = slice_product(&f, r.function()).expect("same domain");
        let rf = slice_product(r.function(), &f).expect("same domain");
        for _ in 0..20 {
            let u = rand_unit(&mut rng);
            let x = Quaternion::real(rng.gen_range(-2.0..2.0))
                + u.as_quaternion() * rng.gen_range(0.5..2.5);
            let e1 = (fr.eval(x).expect("in domain") - ONE).abs();
            let e2 = (rf.eval(x).expect("in domain") - ONE).abs();
            worst_unit = worst_unit.max(e1.max(e2));
            // f^{-•}(x) = f(T_f(x))^{-1} off the zero spheres of N(f).
            let tf = t_map(&f, x).expect("f^c nonzero");
            let inv = f.eval(tf).expect("in domain").inverse().expect("nonzero");
            let e3 = (r.eval(x).expect("nonsingular") - inv).abs();
            worst_tf = worst_tf.max(e3);
        }
    }
    let pass = built == 50 && worst_unit <= RECIP_TOL && worst_tf <= RECIP_TOL;
    finish(
        3,
        "reciprocal identities",
        start,
        pass,
        format!(
            "{} zero-free functions, |f·f^-• - 1| max {:.2e}, T_f identity {:.2e} (tol {:.0e})",
            built, worst_unit, worst_tf, RECIP_TOL
        ),
    )
}

enum OracleKind {
    NoZero,
    AllZero,
    Isolated(ImaginaryUnit),
}

/// Brute-force sphere oracle: 10⁴ direction samples, then a tangent-plane
/// descent of |f| from the best one.
fn sphere_oracle(f: &SliceFunction, sphere: SphereId) -> Option<OracleKind> {
    if sphere.beta == 0.0 {
        let v = f.eval(Quaternion::real(sphere.alpha)).ok()?.abs();
        return Some(if v <= 1e-7 {
            OracleKind::AllZero
        } else if v >= 1e-4 {
            OracleKind::NoZero
        } else {
            return None; // gray zone, caller redraws
        });
    }
    let dirs = principles::fibonacci_sphere(10_000);
    let mut min_v = f64::INFINITY;
    let mut max_v = 0.0_f64;
    let mut best = dirs[0];
    for u in dirs {
        let v = f
            .eval(Quaternion::real(sphere.alpha) + u.as_quaternion() * sphere.beta)
            .ok()?
            .abs();
        if v < min_v {
            min_v = v;
            best = u;
        }
        max_v = max_v.max(v);
    }
    let scale = 1.0 + max_v;
    // Descent on the sphere from the best direction.
    let mut u = best.as_quaternion();
    let mut v = min_v;
    let mut step = 0.05;
    while step > 1e-10 {
        let mut improved = false;
        for t in [
            Quaternion::new(0.0, step, 0.0, 0.0),
            Quaternion::new(0.0, -step, 0.0, 0.0),
            Quaternion::new(0.0, 0.0, step, 0.0),
            Quaternion::new(0.0, 0.0, -step, 0.0),
            Quaternion::new(0.0, 0.0, 0.0, step),
            Quaternion::new(0.0, 0.0, 0.0, -step),
        ] {
            let cand = u + t;
            let n = cand.im_abs();
            if n < 1e-6 {
                continue;
            }
            let cand = cand / n;
            let cv = f
                .eval(Quaternion::real(sphere.alpha) + cand * sphere.beta)
                .ok()?
                .abs();
            if cv < v {
                u = cand;
                v = cv;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    if v > 1e-4 * scale {
        return Some(OracleKind::NoZero);
    }
    if v > 1e-8 * scale {
        return None; // gray zone
    }
    if max_v <= 1e-7 * scale {
        return Some(OracleKind::AllZero);
    }
    Some(OracleKind::Isolated(
        ImaginaryUnit::from_components(u.x1, u.x2, u.x3).ok()?,
    ))
}

/// Criterion 4: trichotomy classification against the brute-force oracle,
/// plus the exact two-binomial fixture.
pub fn criterion_4(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x04);
    let d = wide();
    let mut agreed = 0;
    let mut case = 0;
    let mut detail_fail = String::new();
    while agreed < 200 {
        case += 1;
        if case > 2000 {
            detail_fail = "could not draw enough unambiguous cases".into();
            break;
        }
        let mode = case % 3;
        let alpha = rng.gen_range(-2.0..2.0);
        let beta = if mode == 0 && case % 5 == 0 {
            0.0
        } else {
            rng.gen_range(0.3..2.2)
        };
        let sphere = SphereId::new(alpha, beta);
        let f = match mode {
            0 => {
                let deg = rng.gen_range(1..=5);
                rand_poly(&mut rng, deg, &d)
            }
            1 => {
                // Planted S-isolated zero at α + βI₀ (real zero when β = 0).
                let u = rand_unit(&mut rng);
                let p = Quaternion::real(alpha) + u.as_quaternion() * beta;
                let lin = StemFunction::polynomial(vec![-p, ONE], d.clone());
                let mut g: Vec<Quaternion> =
                    (0..=rng.gen_range(0..=3)).map(|_| rand_quat(&mut rng)).collect();
                g[0] = g[0] + Quaternion::real(4.0);
                let g = StemFunction::polynomial(g, d.clone());
                SliceFunction::induce(lin.mul(&g).expect("same domain"))
            }
            _ => {
                // Planted spherical zero: the real quadratic of the sphere.
                let quad = StemFunction::polynomial(
                    vec![
                        Quaternion::real(alpha * alpha + beta * beta),
                        Quaternion::real(-2.0 * alpha),
                        ONE,
                    ],
                    d.clone(),
                );
                let mut g: Vec<Quaternion> =
                    (0..=rng.gen_range(0..=2)).map(|_| rand_quat(&mut rng)).collect();
                g[0] = g[0] + Quaternion::real(4.0);
                let g = StemFunction::polynomial(g, d.clone());
                SliceFunction::induce(quad.mul(&g).expect("same domain"))
            }
        };
        let oracle = match sphere_oracle(&f, sphere) {
            Some(o) => o,
            None => continue, // ambiguous draw
        };
        let ours = match classify_sphere(&f, sphere, 1e-9) {
            Ok(c) => c,
            Err(_) => {
                detail_fail = format!("classification error on case {}", case);
                break;
            }
        };
        let ok = match (&oracle, &ours) {
            (OracleKind::NoZero, ZeroClassification::NoZero) => true,
            (OracleKind::AllZero, ZeroClassification::SphericalOrReal) => true,
            (OracleKind::Isolated(u), ZeroClassification::SIsolated(p)) => {
                let (_, _, pu) = p.split();
                pu.map(|pu| pu.angle_to(*u) < 0.05).unwrap_or(false)
            }
            _ => false,
        };
        if !ok {
            detail_fail = format!(
                "disagreement on case {} (sphere α={:.3}, β={:.3}): ours {:?}",
                case, sphere.alpha, sphere.beta, ours
            );
            break;
        }
        agreed += 1;
    }

    // Exact fixture: (x - i)·(x - j) has the single sphere (0, 1) with the
    // isolated zero at i.
    let xi = StemFunction::polynomial(vec![-Quaternion::i(), ONE], d.clone());
    let xj = StemFunction::polynomial(vec![-Quaternion::j(), ONE], d.clone());
    let fixture = SliceFunction::induce(xi.mul(&xj).expect("same domain"));
    let hits = find_zeros_polynomial(&fixture).unwrap_or_default();
    let fixture_ok = hits.len() == 1
        && hits[0].sphere.alpha.abs() < 1e-8
        && (hits[0].sphere.beta - 1.0).abs() < 1e-8
        && matches!(hits[0].class, ZeroClassification::SIsolated(p) if p.approx_eq(Quaternion::i(), 1e-6));

    let pass = agreed == 200 && fixture_ok;
    finish(
        4,
        "zero trichotomy vs brute oracle",
        start,
        pass,
        if pass {
            format!("200/200 oracle agreements; (x-i)(x-j) -> sphere (0,1), isolated at i")
        } else {
            format!("{}/200 agreements; fixture ok: {}; {}", agreed, fixture_ok, detail_fail)
        },
    )
}

/// Criterion 5: zeros accumulating on two semislices only admit the zero
/// polynomial, while the slice-constant gallery function stays inconclusive.
pub fn criterion_5(_seed: u64) -> CriterionResult {
    let start = Instant::now();
    // 20 zeros clustering at 0.5 + 1.2√-1, imposed on the i and j semislices.
    let zs: Vec<Complex64> = (0..20)
        .map(|k| Complex64::new(0.5 + 2e-4 * k as f64, 1.2 + 1.3e-4 * (k % 7) as f64))
        .collect();
    let units = [ImaginaryUnit::i(), ImaginaryUnit::j()];
    // Constraint matrix: f(α+βI) = Σ_n (Re zⁿ + L_I Im zⁿ) c_n = 0, degree 6.
    // Unknowns: 7 quaternion coefficients = 28 reals.
    let left_mul = |q: Quaternion| -> [[f64; 4]; 4] {
        // Matrix of p ↦ q p in the basis (w, x1, x2, x3).
        [
            [q.w, -q.x1, -q.x2, -q.x3],
            [q.x1, q.w, -q.x3, q.x2],
            [q.x2, q.x3, q.w, -q.x1],
            [q.x3, -q.x2, q.x1, q.w],
        ]
    };
    // Clustered nodes make the raw monomial Vandermonde numerically rank
    // deficient, so the rank certificate is computed in the shifted basis
    // ((z - z₀)/h)ⁿ. The basis change is triangular and invertible, hence
    // full column rank here is full column rank for the monomials too.
    let z0 = zs.iter().sum::<Complex64>() / zs.len() as f64;
    let h = zs
        .iter()
        .map(|z| (z - z0).norm())
        .fold(0.0_f64, f64::max)
        .max(1e-12);
    let rows = zs.len() * units.len() * 4;
    let mut a = DMatrix::<f64>::zeros(rows, 28);
    let mut row = 0;
    for unit in units {
        let li = left_mul(unit.as_quaternion());
        for &z in &zs {
            let zs_scaled = (z - z0) / h;
            let mut zn = Complex64::new(1.0, 0.0);
            for n in 0..7 {
                for r in 0..4 {
                    for c in 0..4 {
                        let idc = if r == c { 1.0 } else { 0.0 };
                        a[(row + r, 4 * n + c)] = zn.re * idc + zn.im * li[r][c];
                    }
                }
                zn *= zs_scaled;
            }
            row += 4;
        }
    }
    let svd = a.clone().svd(false, false);
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
    // Full column rank: the only degree-6 interpolant through these zeros is
    // the zero polynomial, whose coefficients trivially meet the bound.
    let unique = smin > 1e-6 * smax;
    let coeff_bound = if unique { 0.0 } else { f64::INFINITY };

    let d = CircularDomain::new_punctured(vec![quatslice::domain::Region::Rect {
        alpha: (-4.0, 4.0),
        beta: (0.0, 4.0),
    }])
    .expect("valid rect");
    let zero_poly = SliceFunction::induce(StemFunction::polynomial(vec![ZERO], d));
    let v_zero = identity_verdict(&zero_poly, units[0], units[1], &zs, &zs);
    let zero_ok = matches!(v_zero, Ok(PrincipleVerdict::IdenticallyZero));

    // Gallery counterexample: half-plane of zeros on one semislice only.
    let g = gallery::slice_constant_example(ImaginaryUnit::j());
    let minus_j = ImaginaryUnit::new(-Quaternion::j()).expect("unit");
    let v_gallery = identity_verdict(&g, minus_j, ImaginaryUnit::i(), &zs, &[]);
    let gallery_ok = matches!(v_gallery, Ok(PrincipleVerdict::Inconclusive(_)));
    let gallery_nonzero = g
        .eval(Quaternion::new(0.0, 1.0, 0.0, 0.0))
        .map(|v| v.abs() > 0.5)
        .unwrap_or(false);

    let pass = unique && coeff_bound <= IDENTITY_COEFF_TOL && zero_ok && gallery_ok && gallery_nonzero;
    finish(
        5,
        "identity principle",
        start,
        pass,
        format!(
            "interpolation rank margin σ_min/σ_max = {:.2e}, zero polynomial verdict {}, gallery inconclusive {}",
            smin / smax,
            zero_ok,
            gallery_ok && gallery_nonzero
        ),
    )
}

/// Refines a semislice scan minimum to a minimum of |f| over the quaternions
/// by 4D pattern-search descent. Endpoints pinned against the domain
/// boundary are not interior minima and are rejected.
fn quaternionic_min(
    f: &SliceFunction,
    z0: Complex64,
    unit0: ImaginaryUnit,
) -> Option<Quaternion> {
    let mut x = Quaternion::real(z0.re) + unit0.as_quaternion() * z0.im;
    let mut v = f.eval(x).ok()?.abs();
    let dirs = [
        Quaternion::real(1.0),
        Quaternion::i(),
        Quaternion::j(),
        Quaternion::k(),
    ];
    let mut step = 0.05;
    while step > 1e-9 {
        let mut improved = false;
        for d in dirs {
            for s in [step, -step] {
                let c = x + d * s;
                if !f.domain().contains(c) {
                    continue;
                }
                if let Ok(q) = f.eval(c) {
                    let cv = q.abs();
                    if cv < v {
                        x = c;
                        v = cv;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    let (alpha, beta, _) = x.split();
    let margin = 0.02;
    for (da, db) in [(margin, 0.0), (-margin, 0.0), (0.0, margin), (0.0, -margin)] {
        if !f.domain().contains_z(Complex64::new(alpha + da, beta + db)) {
            return None;
        }
    }
    Some(x)
}

/// Criterion 6: modulus fixtures for the single-semislice flat maximum and
/// the minimum modulus dichotomy on random polynomials.
pub fn criterion_6(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x06);
    let c = 10.0;
    let f = gallery::max_modulus_counterexample(ImaginaryUnit::j(), c, 1.0).expect("c > r");
    let mut worst_flat = 0.0_f64;
    let mut worst_2x = 0.0_f64;
    for k in 0..100 {
        let alpha = -0.6 + 1.2 * (k as f64 / 99.0);
        let beta = 0.1 + 0.6 * ((k * 37 % 100) as f64 / 100.0);
        if alpha * alpha + beta * beta >= 1.0 {
            continue;
        }
        let on_minus_j = Quaternion::new(alpha, 0.0, -beta, 0.0);
        worst_flat = worst_flat.max((f.eval(on_minus_j).expect("in ball").abs() - 2.0 * c).abs());
        let on_j = Quaternion::new(alpha, 0.0, beta, 0.0);
        worst_2x =
            worst_2x.max((f.eval(on_j).expect("in ball").abs() - 2.0 * on_j.abs()).abs());
    }

    let d = off_axis();
    let mut inconclusive = 0;
    let mut minima_seen = 0;
    for t in 0..50 {
        let unit = rand_unit(&mut rng);
        let f = if t % 2 == 0 {
            // Plant a zero on this semislice so interior minima exist.
            let p = Quaternion::real(rng.gen_range(-1.5..1.5))
                + unit.as_quaternion() * rng.gen_range(0.8..2.2);
            let lin = StemFunction::polynomial(vec![-p, ONE], d.clone());
            let mut g: Vec<Quaternion> =
                (0..=rng.gen_range(0..=5)).map(|_| rand_quat(&mut rng)).collect();
            g[0] = g[0] + Quaternion::real(3.0);
            SliceFunction::induce(
                lin.mul(&StemFunction::polynomial(g, d.clone())).expect("same domain"),
            )
        } else {
            let deg = rng.gen_range(2..=6);
            rand_poly(&mut rng, deg, &d)
        };
        let ext = extremum_scan(&f, unit, 41).expect("bounded domain");
        for e in ext.iter().filter(|e| e.interior && e.kind == ExtremumKind::Min) {
            // The dichotomy needs a minimum of |f| in the full quaternionic
            // sense, not just along one semislice (counterexample otherwise:
            // f = 1 + (x - a)j near a ∈ C_i⁺). Refine each scan candidate to
            // a verified quaternionic minimum first; candidates that do not
            // stabilize carry no verdict obligation.
            let p = match quaternionic_min(&f, e.z, unit) {
                Some(p) => p,
                None => continue,
            };
            minima_seen += 1;
            match min_modulus_verdict(&f, p, MINMOD_TOL) {
                Ok(PrincipleVerdict::Inconclusive(_)) | Err(_) => inconclusive += 1,
                Ok(_) => {}
            }
        }
    }
    let pass =
        worst_flat <= FIXTURE_TOL && worst_2x <= FIXTURE_TOL && minima_seen > 0 && inconclusive == 0;
    finish(
        6,
        "max/min modulus",
        start,
        pass,
        format!(
            "flat max deviation {:.2e}, |f|=2|x| deviation {:.2e} (tol {:.0e}); {} interior minima, {} inconclusive",
            worst_flat, worst_2x, FIXTURE_TOL, minima_seen, inconclusive
        ),
    )
}

/// Criterion 7: the open mapping probe rejects points of the degenerate
/// semislice and certifies openness away from it.
pub fn criterion_7(_seed: u64) -> CriterionResult {
    let start = Instant::now();
    let f = gallery::open_mapping_counterexample(ImaginaryUnit::j());
    let r = 0.1;
    let mut false_ok = 0;
    for k in 0..10 {
        let alpha = -1.0 + 2.0 * (k as f64 / 9.0);
        let beta = 0.3 + 0.09 * k as f64;
        let x = Quaternion::new(alpha, 0.0, -beta, 0.0);
        match openness_probe(&f, x, r, 8_000, &[0.08, 0.04, 0.02], k) {
            Ok(false) => false_ok += 1,
            _ => {}
        }
    }
    // Image avoids the reals off C_{-j}⁺: 10⁵ ball samples around one of the
    // degenerate-semislice centers.
    let x0 = Quaternion::new(0.2, 0.0, -0.8, 0.0);
    let mut real_hits = 0;
    for q in principles::ball_samples(100_000, 0) {
        let p = x0 + q * r;
        let v = f.eval(p).expect("in domain");
        if v.abs() > 1e-9 && v.im_abs() <= 1e-12 {
            real_hits += 1;
        }
    }

    let mut true_ok = 0;
    for k in 0..10 {
        let alpha = -1.0 + 2.0 * (k as f64 / 9.0);
        let beta = 0.4 + 0.08 * k as f64;
        let x = Quaternion::new(alpha, beta, 0.0, 0.0);
        match openness_probe(&f, x, r, 40_000, &[0.06, 0.04, 0.025, 0.015], k) {
            Ok(true) => true_ok += 1,
            _ => {}
        }
    }
    let pass = false_ok == 10 && true_ok == 10 && real_hits == 0;
    finish(
        7,
        "open mapping probe",
        start,
        pass,
        format!(
            "{}/10 non-open on the degenerate semislice, {}/10 open away from it, {} spurious real image points",
            false_ok, true_ok, real_hits
        ),
    )
}

/// Criterion 8: the closed-form expansion of x - xIJ matches the stem
/// pipeline.
pub fn criterion_8(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x08);
    let j = ImaginaryUnit::j();
    let f = gallery::open_mapping_counterexample(j);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let u = rand_unit(&mut rng);
        let x = Quaternion::real(rng.gen_range(-2.0..2.0))
            + u.as_quaternion() * rng.gen_range(0.05..2.0);
        let direct = f.eval(x).expect("in domain");
        let closed = gallery::open_mapping_expansion(j, x).expect("non-real");
        worst = worst.max((direct - closed).abs());
    }
    let pass = worst <= EXPANSION_TOL;
    finish(
        8,
        "expansion identity",
        start,
        pass,
        format!("max |direct - closed form| = {:.2e} (tol {:.0e})", worst, EXPANSION_TOL),
    )
}

/// Criterion 9: Cullen residual vanishes for regular polynomials and flags
/// the conjugate variable.
pub fn criterion_9(seed: u64) -> CriterionResult {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x09);
    let d = wide();
    let cfg = DerivativeConfig::default();
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let deg = rng.gen_range(1..=5);
        let f = rand_poly(&mut rng, deg, &d);
        for _ in 0..50 {
            let u = rand_unit(&mut rng);
            let x = Quaternion::real(rng.gen_range(-2.0..2.0))
                + u.as_quaternion() * rng.gen_range(0.2..2.0);
            let res = cullen_residual(&f, u, x, &cfg).expect("in domain").abs();
            worst = worst.max(res);
        }
    }
    // f(x) = x^c via the z̄ stem is nowhere slice regular.
    let conj = SliceFunction::induce(StemFunction::callable(
        |z| {
            quatslice::algebra::ComplexifiedQuaternion::new(
                Quaternion::real(z.re),
                Quaternion::real(-z.im),
            )
        },
        d,
    ));
    let rep = is_slice_regular(&conj, &cfg);
    let pass = worst <= CULLEN_TOL && !rep.pass && rep.max_residual >= 0.5;
    finish(
        9,
        "calculus consistency",
        start,
        pass,
        format!(
            "max Cullen residual {:.2e} (tol {:.0e}); x^c residual {:.3} (needs >= 0.5)",
            worst, CULLEN_TOL, rep.max_residual
        ),
    )
}

/// Runs criteria 1 through 9. Criterion 10 is the end-to-end CLI run itself
/// and lives in the acceptance test target.
pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_1(seed),
        criterion_2(seed),
        criterion_3(seed),
        criterion_4(seed),
        criterion_5(seed),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(seed),
        criterion_9(seed),
    ]
}
