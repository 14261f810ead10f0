//! Circular domains described by their upper-half-plane regions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::Quaternion;
use crate::error::{Error, Result};

/// A primitive open region in the closed upper half-plane `{β ≥ 0}`.
///
/// Disks whose center is closer to the real axis than their radius are
/// clipped at `β = 0`; the part below the axis is produced by mirror symmetry
/// of the full domain, never stored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Region {
    Rect {
        /// Open interval of α values.
        alpha: (f64, f64),
        /// Open interval of β values, with `beta.0 ≥ 0`.
        beta: (f64, f64),
    },
    Disk {
        /// Center `(α, β)` with `β ≥ 0`.
        center: (f64, f64),
        radius: f64,
    },
}

impl Region {
    fn validate(&self) -> Result<()> {
        match *self {
            Region::Rect { alpha, beta } => {
                if !(alpha.0 < alpha.1) || !(beta.0 < beta.1) {
                    return Err(Error::Argument("rect region with empty interior".into()));
                }
                if beta.0 < 0.0 {
                    return Err(Error::Argument("rect region extends below β = 0".into()));
                }
            }
            Region::Disk { center, radius } => {
                if !(radius > 0.0) || !radius.is_finite() {
                    return Err(Error::Argument("disk region needs a positive radius".into()));
                }
                if center.1 < 0.0 {
                    return Err(Error::Argument("disk center must have β ≥ 0".into()));
                }
            }
        }
        Ok(())
    }

    /// Membership for a point with `β ≥ 0`.
    fn contains_upper(&self, a: f64, b: f64) -> bool {
        match *self {
            Region::Rect { alpha, beta } => {
                alpha.0 < a && a < alpha.1 && beta.0 < b && b < beta.1
            }
            Region::Disk { center, radius } => {
                let (da, db) = (a - center.0, b - center.1);
                da * da + db * db < radius * radius
            }
        }
    }

    /// True when the region closure meets `β = 0` at `α = a` with interior
    /// contact, i.e. the mirrored union has a neighborhood of `(a, 0)`.
    fn real_contact_at(&self, a: f64) -> bool {
        match *self {
            Region::Rect { alpha, beta } => beta.0 == 0.0 && alpha.0 < a && a < alpha.1,
            Region::Disk { center, radius } => {
                if center.1 >= radius {
                    return false;
                }
                let half = (radius * radius - center.1 * center.1).sqrt();
                (a - center.0).abs() < half
            }
        }
    }

    fn has_real_contact(&self) -> bool {
        match *self {
            Region::Rect { beta, .. } => beta.0 == 0.0,
            Region::Disk { center, radius } => center.1 < radius,
        }
    }

    fn is_bounded(&self) -> bool {
        match *self {
            Region::Rect { alpha, beta } => {
                alpha.0.is_finite() && alpha.1.is_finite() && beta.0.is_finite() && beta.1.is_finite()
            }
            Region::Disk { center, .. } => center.0.is_finite() && center.1.is_finite(),
        }
    }

    /// Bounding box `(a0, a1, b0, b1)` of the part with `β ≥ 0`.
    fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            Region::Rect { alpha, beta } => (alpha.0, alpha.1, beta.0, beta.1),
            Region::Disk { center, radius } => (
                center.0 - radius,
                center.0 + radius,
                (center.1 - radius).max(0.0),
                center.1 + radius,
            ),
        }
    }

    fn closures_overlap(&self, other: &Region) -> bool {
        fn rect_disk(alpha: (f64, f64), beta: (f64, f64), c: (f64, f64), r: f64) -> bool {
            let ca = c.0.clamp(alpha.0, alpha.1);
            let cb = c.1.clamp(beta.0, beta.1);
            let (da, db) = (c.0 - ca, c.1 - cb);
            da * da + db * db <= r * r
        }
        match (*self, *other) {
            (Region::Rect { alpha: a1, beta: b1 }, Region::Rect { alpha: a2, beta: b2 }) => {
                a1.0 <= a2.1 && a2.0 <= a1.1 && b1.0 <= b2.1 && b2.0 <= b1.1
            }
            (Region::Rect { alpha, beta }, Region::Disk { center, radius })
            | (Region::Disk { center, radius }, Region::Rect { alpha, beta }) => {
                rect_disk(alpha, beta, center, radius)
            }
            (
                Region::Disk { center: c1, radius: r1 },
                Region::Disk { center: c2, radius: r2 },
            ) => {
                let (da, db) = (c1.0 - c2.0, c1.1 - c2.1);
                da * da + db * db <= (r1 + r2) * (r1 + r2)
            }
        }
    }
}

/// A symmetric plane domain `D = conj(D)` encoded by its upper-half regions,
/// together with the circular set `Ω_D` it generates.
///
/// When `exclude_real` is set, the real axis is removed even where regions
/// touch it, so domains like `B(0, r) ∖ R` are expressible.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircularDomain {
    regions: Vec<Region>,
    #[serde(default)]
    exclude_real: bool,
}

impl CircularDomain {
    pub fn new(regions: Vec<Region>) -> Result<Self> {
        Self::build(regions, false)
    }

    /// Builds a domain with the real axis removed.
    pub fn new_punctured(regions: Vec<Region>) -> Result<Self> {
        Self::build(regions, true)
    }

    fn build(regions: Vec<Region>, exclude_real: bool) -> Result<Self> {
        if regions.is_empty() {
            return Err(Error::Argument("domain needs at least one region".into()));
        }
        for r in &regions {
            r.validate()?;
        }
        Ok(Self {
            regions,
            exclude_real,
        })
    }

    /// Open rectangle `(a0, a1) × (b0, b1)` in the upper half-plane.
    pub fn rect(a0: f64, a1: f64, b0: f64, b1: f64) -> Result<Self> {
        Self::new(vec![Region::Rect {
            alpha: (a0, a1),
            beta: (b0, b1),
        }])
    }

    /// Open disk with center `(ca, cb)`, `cb ≥ 0`.
    pub fn disk(ca: f64, cb: f64, radius: f64) -> Result<Self> {
        Self::new(vec![Region::Disk {
            center: (ca, cb),
            radius,
        }])
    }

    /// The whole space minus the real axis, `H ∖ R`.
    pub fn quaternions_without_reals() -> Self {
        Self {
            regions: vec![Region::Rect {
                alpha: (f64::NEG_INFINITY, f64::INFINITY),
                beta: (0.0, f64::INFINITY),
            }],
            exclude_real: true,
        }
    }

    /// `(B(0, r) ∩ H) ∖ R`, the punctured ball used by the modulus-principle
    /// counterexample.
    pub fn punctured_ball(radius: f64) -> Result<Self> {
        Self::build(
            vec![Region::Disk {
                center: (0.0, 0.0),
                radius,
            }],
            true,
        )
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn excludes_real(&self) -> bool {
        self.exclude_real
    }

    /// True iff `Ω_D` meets the real axis.
    pub fn contains_real(&self) -> bool {
        !self.exclude_real && self.regions.iter().any(Region::has_real_contact)
    }

    /// Plane membership, tested on the upper-half description; the lower half
    /// is reached by mirror symmetry.
    pub fn contains_z(&self, z: Complex64) -> bool {
        let (a, b) = (z.re, z.im.abs());
        if b == 0.0 {
            return !self.exclude_real && self.regions.iter().any(|r| r.real_contact_at(a));
        }
        self.regions.iter().any(|r| r.contains_upper(a, b))
    }

    /// Membership of a quaternion in `Ω_D`.
    pub fn contains(&self, x: Quaternion) -> bool {
        let (alpha, beta, _) = x.split();
        self.contains_z(Complex64::new(alpha, beta))
    }

    pub fn is_bounded(&self) -> bool {
        self.regions.iter().all(Region::is_bounded)
    }

    /// Number of connected components of the upper-half description, which
    /// equals the number of components of `Ω_D ∖ R`.
    pub fn upper_component_count(&self) -> usize {
        let n = self.regions.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let root = find(parent, parent[i]);
                parent[i] = root;
            }
            parent[i]
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.regions[i].closures_overlap(&self.regions[j]) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn omega_connected(&self) -> bool {
        self.upper_component_count() == 1
    }

    /// Midpoint sample points over each region at the given per-axis
    /// resolution. Rectangles are gridded directly; disks use a polar grid.
    /// All points lie strictly inside the upper-half regions.
    pub fn sample_grid(&self, res: usize) -> Result<Vec<Complex64>> {
        Ok(self.quadrature_cells(res)?.into_iter().map(|(z, _)| z).collect())
    }

    /// Midpoint quadrature cells `(midpoint, weight)` covering the upper-half
    /// regions at the given per-axis resolution. Overlapping regions are
    /// integrated separately; callers that need exact measures should keep
    /// regions disjoint.
    pub fn quadrature_cells(&self, res: usize) -> Result<Vec<(Complex64, f64)>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let res = res.max(1);
        let mut cells = Vec::new();
        for region in &self.regions {
            match *region {
                Region::Rect { alpha, beta } => {
                    let da = (alpha.1 - alpha.0) / res as f64;
                    let db = (beta.1 - beta.0) / res as f64;
                    let w = da * db;
                    for ia in 0..res {
                        let a = alpha.0 + (ia as f64 + 0.5) * da;
                        for ib in 0..res {
                            let b = beta.0 + (ib as f64 + 0.5) * db;
                            cells.push((Complex64::new(a, b), w));
                        }
                    }
                }
                Region::Disk { center, radius } => {
                    // Polar midpoint grid, cells clipped at β = 0 are dropped;
                    // the lost sliver shrinks with resolution.
                    let dr = radius / res as f64;
                    let ntheta = 4 * res;
                    let dtheta = std::f64::consts::TAU / ntheta as f64;
                    for ir in 0..res {
                        let r = (ir as f64 + 0.5) * dr;
                        let w = r * dr * dtheta;
                        for it in 0..ntheta {
                            let t = (it as f64 + 0.5) * dtheta;
                            let a = center.0 + r * t.cos();
                            let b = center.1 + r * t.sin();
                            if b > 0.0 {
                                cells.push((Complex64::new(a, b), w));
                            }
                        }
                    }
                }
            }
        }
        Ok(cells)
    }

    /// Like [`Self::sample_grid`], but unbounded regions are clipped to
    /// `[-clip, clip] × (0, clip]` first, so sampling never fails.
    pub fn sample_grid_clipped(&self, res: usize, clip: f64) -> Vec<Complex64> {
        if self.is_bounded() {
            return self.sample_grid(res).unwrap_or_default();
        }
        let clipped: Vec<Region> = self
            .regions
            .iter()
            .map(|r| match *r {
                Region::Rect { alpha, beta } => Region::Rect {
                    alpha: (alpha.0.max(-clip), alpha.1.min(clip)),
                    beta: (beta.0.max(0.0), beta.1.min(clip)),
                },
                other => other,
            })
            .filter(|r| r.validate().is_ok() && r.is_bounded())
            .collect();
        match CircularDomain::build(clipped, self.exclude_real) {
            Ok(d) => d.sample_grid(res).unwrap_or_default(),
            Err(_) => vec![],
        }
    }

    /// Bounding box of the upper-half description.
    pub fn bounding_box(&self) -> Result<(f64, f64, f64, f64)> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let mut bb = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for r in &self.regions {
            let (a0, a1, b0, b1) = r.bounding_box();
            bb.0 = bb.0.min(a0);
            bb.1 = bb.1.max(a1);
            bb.2 = bb.2.min(b0);
            bb.3 = bb.3.max(b1);
        }
        Ok(bb)
    }
}
