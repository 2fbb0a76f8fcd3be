//! Convex computational domains: axis-aligned squares, disks and convex
//! polygons, with membership tests and exact ray-to-boundary queries.

use crate::geom::{self, Vec2};
use crate::{MaError, Result};
use serde::{Deserialize, Serialize};

/// A bounded convex domain in the plane.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ConvexDomain {
    /// Axis-aligned square `[cx - w, cx + w] x [cy - w, cy + w]`.
    Square { center: Vec2, half_width: f64 },
    Disk { center: Vec2, radius: f64 },
    /// Convex polygon, counterclockwise vertex list.
    Polygon { vertices: Vec<Vec2> },
}

impl ConvexDomain {
    pub fn square(center: Vec2, half_width: f64) -> Self {
        ConvexDomain::Square { center, half_width }
    }

    /// The square `(-1, 1)^2` used by every benchmark problem on a square.
    pub fn unit_square() -> Self {
        Self::square([0.0, 0.0], 1.0)
    }

    pub fn disk(center: Vec2, radius: f64) -> Self {
        ConvexDomain::Disk { center, radius }
    }

    pub fn unit_disk() -> Self {
        Self::disk([0.0, 0.0], 1.0)
    }

    /// Builds a polygon domain; vertices must be in counterclockwise order
    /// and strictly convex.
    pub fn polygon(vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(MaError::BadConfig("polygon needs at least 3 vertices".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if crate::exact::orient2d(a, b, c) <= 0 {
                return Err(MaError::BadConfig(
                    "polygon vertices must be strictly convex and counterclockwise".into(),
                ));
            }
        }
        Ok(ConvexDomain::Polygon { vertices })
    }

    /// Closed membership `x in closure(domain)`; exact for squares and
    /// disks, half-plane tests with tolerance `1e-12 * diameter` for
    /// polygons.
    pub fn contains(&self, x: Vec2) -> bool {
        match self {
            ConvexDomain::Square { center, half_width } => {
                (x[0] - center[0]).abs() <= *half_width && (x[1] - center[1]).abs() <= *half_width
            }
            ConvexDomain::Disk { center, radius } => {
                let d = geom::sub(x, *center);
                geom::dot(d, d) <= radius * radius
            }
            ConvexDomain::Polygon { vertices } => {
                let tol = 1e-12 * self.diameter();
                let n = vertices.len();
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    geom::cross(geom::sub(b, a), geom::sub(x, a)) >= -tol
                })
            }
        }
    }

    /// Strict (open) membership.
    pub fn contains_interior(&self, x: Vec2) -> bool {
        match self {
            ConvexDomain::Square { center, half_width } => {
                (x[0] - center[0]).abs() < *half_width && (x[1] - center[1]).abs() < *half_width
            }
            ConvexDomain::Disk { center, radius } => {
                let d = geom::sub(x, *center);
                geom::dot(d, d) < radius * radius
            }
            ConvexDomain::Polygon { vertices } => {
                let tol = 1e-12 * self.diameter();
                let n = vertices.len();
                (0..n).all(|i| {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    geom::cross(geom::sub(b, a), geom::sub(x, a)) > tol
                })
            }
        }
    }

    /// Smallest `t > 0` with `x + t w` on the boundary. `x` must be an
    /// interior point and `w` nonzero; `t` is exact (closed form for the
    /// square and disk, half-plane arithmetic for polygons).
    pub fn exit_time(&self, x: Vec2, w: Vec2) -> Result<f64> {
        if !self.contains_interior(x) {
            return Err(MaError::OutOfDomain(x[0], x[1]));
        }
        let t = match self {
            ConvexDomain::Square { center, half_width } => {
                let mut t = f64::INFINITY;
                for k in 0..2 {
                    if w[k] > 0.0 {
                        t = t.min((center[k] + half_width - x[k]) / w[k]);
                    } else if w[k] < 0.0 {
                        t = t.min((center[k] - half_width - x[k]) / w[k]);
                    }
                }
                t
            }
            ConvexDomain::Disk { center, radius } => {
                let d = geom::sub(x, *center);
                let a = geom::dot(w, w);
                let b = geom::dot(d, w);
                let c = geom::dot(d, d) - radius * radius;
                (-b + (b * b - a * c).max(0.0).sqrt()) / a
            }
            ConvexDomain::Polygon { vertices } => {
                let n = vertices.len();
                let mut t = f64::INFINITY;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let e = geom::sub(b, a);
                    let nrm = [e[1], -e[0]]; // outward normal
                    let wn = geom::dot(nrm, w);
                    if wn > 0.0 {
                        t = t.min((geom::dot(nrm, a) - geom::dot(nrm, x)) / wn);
                    }
                }
                t
            }
        };
        Ok(t.max(0.0))
    }

    /// Largest `rho` in `(0, 1]` such that both `x + rho d w` and
    /// `x - rho d w` stay in the closed domain; `w` must be a unit vector.
    pub fn ray_to_boundary(&self, x: Vec2, w: Vec2, delta: f64) -> Result<f64> {
        let tp = self.exit_time(x, w)?;
        let tm = self.exit_time(x, [-w[0], -w[1]])?;
        Ok((tp.min(tm) / delta).min(1.0))
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexDomain::Square { half_width, .. } => 2.0 * std::f64::consts::SQRT_2 * half_width,
            ConvexDomain::Disk { radius, .. } => 2.0 * radius,
            ConvexDomain::Polygon { vertices } => {
                let mut d = 0.0f64;
                for (i, &a) in vertices.iter().enumerate() {
                    for &b in vertices.iter().skip(i + 1) {
                        d = d.max(geom::dist(a, b));
                    }
                }
                d
            }
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            ConvexDomain::Square { half_width, .. } => 4.0 * half_width * half_width,
            ConvexDomain::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
            ConvexDomain::Polygon { vertices } => geom::polygon_area(vertices),
        }
    }

    pub fn centroid(&self) -> Vec2 {
        match self {
            ConvexDomain::Square { center, .. } | ConvexDomain::Disk { center, .. } => *center,
            ConvexDomain::Polygon { vertices } => geom::polygon_centroid(vertices),
        }
    }

    /// Largest distance from the centroid to the boundary.
    pub fn circumradius(&self) -> f64 {
        match self {
            ConvexDomain::Square { half_width, .. } => std::f64::consts::SQRT_2 * half_width,
            ConvexDomain::Disk { radius, .. } => *radius,
            ConvexDomain::Polygon { vertices } => {
                let c = self.centroid();
                vertices.iter().map(|&v| geom::dist(v, c)).fold(0.0, f64::max)
            }
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        match self {
            ConvexDomain::Square { center, half_width } => (
                [center[0] - half_width, center[1] - half_width],
                [center[0] + half_width, center[1] + half_width],
            ),
            ConvexDomain::Disk { center, radius } => (
                [center[0] - radius, center[1] - radius],
                [center[0] + radius, center[1] + radius],
            ),
            ConvexDomain::Polygon { vertices } => {
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for v in vertices {
                    for k in 0..2 {
                        lo[k] = lo[k].min(v[k]);
                        hi[k] = hi[k].max(v[k]);
                    }
                }
                (lo, hi)
            }
        }
    }

    /// Area of `cell ∩ domain` for a convex CCW `cell`; exact for all three
    /// shapes (circular-arc corrections for the disk).
    pub fn clip_cell_area(&self, cell: &[Vec2]) -> f64 {
        match self {
            ConvexDomain::Square { center, half_width } => {
                let sq = square_vertices(*center, *half_width);
                geom::polygon_area(&geom::clip_convex(cell, &sq))
            }
            ConvexDomain::Disk { center, radius } => geom::polygon_disk_area(cell, *center, *radius),
            ConvexDomain::Polygon { vertices } => {
                geom::polygon_area(&geom::clip_convex(cell, vertices))
            }
        }
    }

    /// Centroid of `cell ∩ domain`; the disk boundary is approximated by
    /// short chords (the area above stays exact, only quadrature points use
    /// this).
    pub fn clip_cell_centroid(&self, cell: &[Vec2]) -> Vec2 {
        let clipped = self.clip_cell_polygon(cell);
        if clipped.len() < 3 {
            geom::polygon_centroid(cell)
        } else {
            geom::polygon_centroid(&clipped)
        }
    }

    /// Polygonal representation of `cell ∩ domain` (chord approximation of
    /// arcs for the disk).
    pub fn clip_cell_polygon(&self, cell: &[Vec2]) -> Vec<Vec2> {
        match self {
            ConvexDomain::Square { center, half_width } => {
                geom::clip_convex(cell, &square_vertices(*center, *half_width))
            }
            ConvexDomain::Polygon { vertices } => geom::clip_convex(cell, vertices),
            ConvexDomain::Disk { center, radius } => {
                // Clip against the chords of the arc sector subtended by the
                // cell; 64 chords keep the centroid error negligible.
                let c = geom::polygon_centroid(cell);
                let far = cell.iter().map(|&v| geom::dist(v, *center)).fold(0.0, f64::max);
                if far <= *radius {
                    return cell.to_vec();
                }
                let ang = geom::sub(c, *center);
                let mid = ang[1].atan2(ang[0]);
                let spread = cell
                    .iter()
                    .map(|&v| {
                        let d = geom::sub(v, *center);
                        let a = d[1].atan2(d[0]) - mid;
                        let a = (a + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
                            - std::f64::consts::PI;
                        a.abs()
                    })
                    .fold(0.0, f64::max)
                    + 0.2;
                let mut out = cell.to_vec();
                let n = 64;
                for k in 0..=n {
                    let a = mid - spread + 2.0 * spread * (k as f64) / (n as f64);
                    let p = [center[0] + radius * a.cos(), center[1] + radius * a.sin()];
                    let nrm = [a.cos(), a.sin()];
                    out = geom::clip_halfplane(&out, nrm, geom::dot(nrm, p));
                    if out.is_empty() {
                        break;
                    }
                }
                out
            }
        }
    }
}

fn square_vertices(center: Vec2, w: f64) -> [Vec2; 4] {
    [
        [center[0] - w, center[1] - w],
        [center[0] + w, center[1] - w],
        [center[0] + w, center[1] + w],
        [center[0] - w, center[1] + w],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_ray_examples() {
        let sq = ConvexDomain::unit_square();
        // distance to the wall is 0.1 = rho * delta
        let rho = sq.ray_to_boundary([0.9, 0.0], [1.0, 0.0], 0.5).unwrap();
        assert!((rho - 0.2).abs() < 1e-15);
        // diagonal ray from (0.5, 0.5): solve 0.5 + rho/sqrt(2) = 1
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = sq.ray_to_boundary([0.5, 0.5], [s, s], 1.0).unwrap();
        assert!((rho - 0.5 * std::f64::consts::SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn disk_ray_full_scale() {
        let d = ConvexDomain::unit_disk();
        for w in [[1.0, 0.0], [0.0, 1.0], [0.6, 0.8]] {
            let rho = d.ray_to_boundary([0.0, 0.0], w, 0.5).unwrap();
            assert_eq!(rho, 1.0);
        }
    }

    #[test]
    fn ray_rejects_exterior_point() {
        let d = ConvexDomain::unit_disk();
        assert!(d.ray_to_boundary([2.0, 0.0], [1.0, 0.0], 0.5).is_err());
    }

    #[test]
    fn ray_consistency_near_boundary() {
        // x +- rho d w stays inside, x +- (rho + eps) d w leaves.
        let shapes = [
            ConvexDomain::unit_square(),
            ConvexDomain::unit_disk(),
            ConvexDomain::polygon(vec![[-1.0, -1.0], [1.5, -0.5], [0.8, 1.2], [-0.9, 0.9]]).unwrap(),
        ];
        let mut rng = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            (rng >> 11) as f64 / (1u64 << 53) as f64
        };
        for dom in &shapes {
            for _ in 0..200 {
                let (lo, hi) = dom.bounding_box();
                let x = [
                    lo[0] + (hi[0] - lo[0]) * next(),
                    lo[1] + (hi[1] - lo[1]) * next(),
                ];
                if !dom.contains_interior(x) {
                    continue;
                }
                let ang = 2.0 * std::f64::consts::PI * next();
                let w = [ang.cos(), ang.sin()];
                let delta = 0.7;
                let rho = dom.ray_to_boundary(x, w, delta).unwrap();
                for s in [1.0, -1.0] {
                    let p = geom::add(x, geom::scale(w, s * rho * delta));
                    assert!(
                        dom.contains(p) || !dom.contains_interior(p),
                        "endpoint must not be strictly outside"
                    );
                }
                if rho < 1.0 {
                    let eps = 1e-6;
                    let pp = geom::add(x, geom::scale(w, (rho + eps) * delta));
                    let pm = geom::add(x, geom::scale(w, -(rho + eps) * delta));
                    assert!(!dom.contains(pp) || !dom.contains(pm));
                }
            }
        }
    }

    #[test]
    fn polygon_must_be_convex_ccw() {
        assert!(ConvexDomain::polygon(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]]).is_err());
        assert!(ConvexDomain::polygon(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).is_ok());
    }

    #[test]
    fn clip_cell_area_disk_quadrant() {
        let d = ConvexDomain::unit_disk();
        let cell = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        let a = d.clip_cell_area(&cell);
        assert!((a - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }
}
