//! Packing radii and hover layouts for k equal disks covering the service disk.
//!
//! The service area is a disk of radius `D_max` centred on the ground station.
//! A swarm of `k` UAVs splits it into `k` equal cells of radius
//! `D_max / γ_k`. The layouts here place the cell centres so that the union of
//! cells covers the whole disk; [`coverage_check`] certifies this on a lattice
//! and [`covering_radius`] computes the exact worst-case distance.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

/// Largest swarm size with a tabulated packing radius.
pub const MAX_SWARM: usize = 10;

/// Default lattice resolution for [`coverage_check`].
pub const DEFAULT_GRID: usize = 512;

/// Smallest lattice accepted by [`coverage_check`].
pub const MIN_GRID: usize = 64;

const GAMMA_SMALL: [f64; 7] = [1.0, 1.0, 1.1547, std::f64::consts::SQRT_2, 1.641, 1.7988, 2.0];

// Minimal-radius five- and six-disk covers of the unit disk (centres on the
// unit scale). Their covering radii sit just under 1/1.641 and 1/1.7988.
const COVER_5: [(f64, f64); 5] = [
    (-0.5808004839299425, 0.0),
    (0.5142911905554055, -0.36801416906580386),
    (0.5142911905554055, 0.36801416906580386),
    (-0.25443819761469233, -0.7509260006459525),
    (-0.25443819761469233, 0.7509260006459525),
];
const COVER_6: [(f64, f64); 6] = [
    (-0.628357632289321, -0.5443026442832093),
    (-0.6120910809162351, 0.2815068658061095),
    (0.5243530727012853, 0.4230349307433747),
    (-0.06942275138505635, 0.5574540535622882),
    (0.742820522879198, -0.37364258175684106),
    (0.06426380390397608, -0.5160366011264406),
];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("swarm size {0} outside 1..={MAX_SWARM}")]
    SwarmSize(usize),
    #[error("coverage radius must be positive and finite, got {0}")]
    Radius(f64),
    #[error("no ring distance covers the disk for k = {0}")]
    NoCoveringRing(usize),
}

/// The circular service region, centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverageArea {
    radius: f64,
}

impl CoverageArea {
    pub fn new(radius: f64) -> Result<Self, GeometryError> {
        if radius > 0.0 && radius.is_finite() {
            Ok(Self { radius })
        } else {
            Err(GeometryError::Radius(radius))
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(r: f64, angle: f64) -> Self {
        Self { x: r * angle.cos(), y: r * angle.sin() }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// Hover centres of a k-UAV swarm and the common cell radius.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SwarmLayout {
    pub k: usize,
    pub cell_radius: f64,
    pub centers: Vec<Point>,
    /// Horizontal distance of each centre from the ground station.
    pub distances: Vec<f64>,
}

impl SwarmLayout {
    fn from_unit(unit: &SwarmLayout, d_max: f64) -> Self {
        let centers: Vec<Point> = unit
            .centers
            .iter()
            .map(|p| Point::new(p.x * d_max, p.y * d_max))
            .collect();
        let distances = unit.distances.iter().map(|d| d * d_max).collect();
        Self { k: unit.k, cell_radius: unit.cell_radius * d_max, centers, distances }
    }

    fn from_centers(k: usize, cell_radius: f64, centers: Vec<Point>) -> Self {
        let distances = centers.iter().map(Point::norm).collect();
        Self { k, cell_radius, centers, distances }
    }
}

fn check_k(k: usize) -> Result<(), GeometryError> {
    if (1..=MAX_SWARM).contains(&k) {
        Ok(())
    } else {
        Err(GeometryError::SwarmSize(k))
    }
}

/// γ_k, the ratio between the service radius and the per-UAV cell radius.
pub fn packing_ratio(k: usize) -> Result<f64, GeometryError> {
    check_k(k)?;
    Ok(if k <= 7 {
        GAMMA_SMALL[k - 1]
    } else {
        1.0 + 2.0 * (2.0 * PI / (k as f64 - 1.0)).cos()
    })
}

/// Cell radius `D(k, D_max) = D_max / γ_k`.
pub fn packing_radius(k: usize, d_max: f64) -> Result<f64, GeometryError> {
    CoverageArea::new(d_max)?;
    Ok(d_max / packing_ratio(k)?)
}

/// Hover layout for `k` UAVs over a disk of radius `d_max`.
///
/// Layouts are solved once on the unit disk and scaled.
pub fn hover_layout(k: usize, d_max: f64) -> Result<SwarmLayout, GeometryError> {
    check_k(k)?;
    CoverageArea::new(d_max)?;
    let unit = unit_layouts()[k - 1].as_ref().map_err(Clone::clone)?;
    Ok(SwarmLayout::from_unit(unit, d_max))
}

fn unit_layouts() -> &'static [Result<SwarmLayout, GeometryError>; MAX_SWARM] {
    static CACHE: OnceLock<[Result<SwarmLayout, GeometryError>; MAX_SWARM]> = OnceLock::new();
    CACHE.get_or_init(|| std::array::from_fn(|i| unit_layout(i + 1)))
}

fn unit_layout(k: usize) -> Result<SwarmLayout, GeometryError> {
    let r = packing_radius(k, 1.0)?;
    let centers = match k {
        1 => vec![Point::ORIGIN],
        // A single cell already spans the disk; both UAVs share the centre.
        2 => vec![Point::ORIGIN, Point::ORIGIN],
        3 | 4 => {
            let upper = (PI / k as f64).cos();
            let rho = min_ring_distance(k, r, upper, false)?;
            ring(k, rho, false)
        }
        5 => COVER_5.iter().map(|&(x, y)| Point::new(x, y)).collect(),
        6 => COVER_6.iter().map(|&(x, y)| Point::new(x, y)).collect(),
        7 => ring(7, 3f64.sqrt() * r, true),
        _ => {
            let m = (k - 1) as f64;
            let upper = 2.0 * r * (PI / m).cos();
            let rho = min_ring_distance(k, r, upper, true)?;
            ring(k, rho, true)
        }
    };
    Ok(SwarmLayout::from_centers(k, r, centers))
}

/// `k` centres: either all on a ring, or `k - 1` on a ring followed by the origin.
fn ring(k: usize, rho: f64, with_center: bool) -> Vec<Point> {
    let m = if with_center { k - 1 } else { k };
    let mut pts: Vec<Point> = (0..m)
        .map(|j| Point::polar(rho, 2.0 * PI * j as f64 / m as f64))
        .collect();
    if with_center {
        pts.push(Point::ORIGIN);
    }
    pts
}

/// Smallest ring distance in `[0, upper]` whose exact covering radius fits
/// within `r`. Coverage is monotone in the ring distance below `upper`, which
/// must itself cover.
fn min_ring_distance(k: usize, r: f64, upper: f64, with_center: bool) -> Result<f64, GeometryError> {
    let passes = |rho: f64| covering_radius(&ring(k, rho, with_center), 1.0) <= r * (1.0 + 1e-12);
    if !passes(upper) {
        return Err(GeometryError::NoCoveringRing(k));
    }
    let (mut lo, mut hi) = (0.0, upper);
    if passes(lo) {
        return Ok(lo);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if passes(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Lattice certificate that the layout's cells cover the disk of radius `d_max`.
///
/// Samples cell midpoints of a `grid_n × grid_n` lattice over the bounding
/// square, keeps those strictly inside the disk, and requires each one to lie
/// within `cell_radius` of some centre. `grid_n` below [`MIN_GRID`] is raised
/// to it.
pub fn coverage_check(layout: &SwarmLayout, d_max: f64, grid_n: usize) -> bool {
    let n = grid_n.max(MIN_GRID);
    let h = 2.0 * d_max / n as f64;
    let rim2 = d_max * d_max;
    // Relative slack absorbs rounding when layouts are scaled.
    let reach2 = layout.cell_radius * layout.cell_radius * (1.0 + 1e-12);
    for i in 0..n {
        let x = -d_max + (i as f64 + 0.5) * h;
        for j in 0..n {
            let y = -d_max + (j as f64 + 0.5) * h;
            if x * x + y * y >= rim2 {
                continue;
            }
            let p = Point::new(x, y);
            if !layout.centers.iter().any(|c| c.dist2(&p) <= reach2) {
                return false;
            }
        }
    }
    true
}

/// Exact covering radius: the largest distance from any point of the disk
/// of radius `d_max` to its nearest centre.
///
/// The maximum sits at a Voronoi vertex inside the disk, where a Voronoi
/// edge meets the rim, or at the rim point antipodal to a centre.
pub fn covering_radius(centers: &[Point], d_max: f64) -> f64 {
    if centers.is_empty() {
        return f64::INFINITY;
    }
    let mut candidates = Vec::new();
    for c in centers {
        let n = c.norm();
        candidates.push(if n > 0.0 {
            Point::new(-c.x / n * d_max, -c.y / n * d_max)
        } else {
            Point::new(d_max, 0.0)
        });
    }
    for (i, a) in centers.iter().enumerate() {
        for b in &centers[i + 1..] {
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            let nn = dx * dx + dy * dy;
            if nn < 1e-24 * d_max * d_max {
                continue;
            }
            // Bisector m + t·n intersected with the rim.
            let (mx, my) = (0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
            let (nx, ny) = (-dy, dx);
            let qa = nn;
            let qb = 2.0 * (mx * nx + my * ny);
            let qc = mx * mx + my * my - d_max * d_max;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc >= 0.0 {
                for s in [1.0, -1.0] {
                    let t = (-qb + s * disc.sqrt()) / (2.0 * qa);
                    candidates.push(Point::new(mx + t * nx, my + t * ny));
                }
            }
        }
    }
    for (i, a) in centers.iter().enumerate() {
        for (j, b) in centers.iter().enumerate().skip(i + 1) {
            for c in &centers[j + 1..] {
                if let Some(p) = circumcenter(a, b, c) {
                    if p.x * p.x + p.y * p.y <= d_max * d_max {
                        candidates.push(p);
                    }
                }
            }
        }
    }
    candidates
        .iter()
        .map(|p| centers.iter().map(|c| c.dist2(p)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
        .sqrt()
}

fn circumcenter(a: &Point, b: &Point, c: &Point) -> Option<Point> {
    let (bx, by) = (b.x - a.x, b.y - a.y);
    let (cx, cy) = (c.x - a.x, c.y - a.y);
    let d = 2.0 * (bx * cy - by * cx);
    if d.abs() < 1e-14 {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    Some(Point::new(a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d))
}
