//! Small planar geometry kit: vectors, convex polygons, half-plane
//! clipping, convex hulls, and exact polygon/disk intersection areas.

use crate::exact::orient2d;

pub type Vec2 = [f64; 2];

#[inline]
pub fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn scale(a: Vec2, t: f64) -> Vec2 {
    [a[0] * t, a[1] * t]
}

#[inline]
pub fn norm(a: Vec2) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub fn dist(a: Vec2, b: Vec2) -> f64 {
    norm(sub(a, b))
}

/// Signed area of a polygon (positive when counterclockwise).
pub fn polygon_area(poly: &[Vec2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        s += cross(poly[i], poly[j]);
    }
    0.5 * s
}

/// Area centroid of a polygon; falls back to the vertex mean when the
/// polygon is degenerate.
pub fn polygon_centroid(poly: &[Vec2]) -> Vec2 {
    let a = polygon_area(poly);
    if poly.is_empty() {
        return [0.0, 0.0];
    }
    if a.abs() < 1e-300 {
        let mut c = [0.0, 0.0];
        for p in poly {
            c = add(c, *p);
        }
        return scale(c, 1.0 / poly.len() as f64);
    }
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        let w = cross(poly[i], poly[j]);
        cx += (poly[i][0] + poly[j][0]) * w;
        cy += (poly[i][1] + poly[j][1]) * w;
    }
    [cx / (6.0 * a), cy / (6.0 * a)]
}

/// Clips `poly` to the half-plane `{ p : n . p <= c }` (Sutherland-Hodgman,
/// one pass per constraint).
pub fn clip_halfplane(poly: &[Vec2], n: Vec2, c: f64) -> Vec<Vec2> {
    if poly.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(poly.len() + 1);
    let m = poly.len();
    for i in 0..m {
        let s = poly[i];
        let e = poly[(i + 1) % m];
        let ds = dot(n, s) - c;
        let de = dot(n, e) - c;
        let s_in = ds <= 0.0;
        let e_in = de <= 0.0;
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) => {
                let denom = ds - de;
                if denom.abs() > 1e-300 {
                    let t = ds / denom;
                    out.push([s[0] + (e[0] - s[0]) * t, s[1] + (e[1] - s[1]) * t]);
                }
            }
            (false, true) => {
                let denom = ds - de;
                if denom.abs() > 1e-300 {
                    let t = ds / denom;
                    out.push([s[0] + (e[0] - s[0]) * t, s[1] + (e[1] - s[1]) * t]);
                }
                out.push(e);
            }
            (false, false) => {}
        }
    }
    out
}

/// Clips a polygon against another convex polygon given by CCW vertices.
pub fn clip_convex(subject: &[Vec2], clip: &[Vec2]) -> Vec<Vec2> {
    let mut result = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if result.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % m];
        // inside of edge a->b is the left side: (b-a) x (p-a) >= 0,
        // i.e. n . p <= c with n = (b-a) rotated clockwise.
        let e = sub(b, a);
        let n = [e[1], -e[0]];
        let c = dot(n, a);
        result = clip_halfplane(&result, n, c);
    }
    result
}

/// Convex hull of a point set (monotone chain), counterclockwise, without
/// collinear points on the hull boundary.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    pts.dedup();
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Vec2> = Vec::with_capacity(2 * n);
    for &p in pts.iter() {
        while hull.len() >= 2 && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && orient2d(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Exact area of the intersection of a counterclockwise polygon with the
/// disk of radius `r` centered at `c`, by Green's theorem with circular
/// arc corrections.
pub fn polygon_disk_area(poly: &[Vec2], c: Vec2, r: f64) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..poly.len() {
        let a = sub(poly[i], c);
        let b = sub(poly[(i + 1) % poly.len()], c);
        total += edge_disk_contribution(a, b, r);
    }
    total
}

fn edge_disk_contribution(a: Vec2, b: Vec2, r: f64) -> f64 {
    // Splits the segment a->b at its circle crossings; interior pieces
    // contribute chord (cross product) terms, exterior pieces sector terms.
    let d = sub(b, a);
    let aa = dot(d, d);
    if aa == 0.0 {
        return 0.0;
    }
    let bb = 2.0 * dot(a, d);
    let cc = dot(a, a) - r * r;
    let mut ts = vec![0.0];
    let disc = bb * bb - 4.0 * aa * cc;
    if disc > 0.0 {
        let sq = disc.sqrt();
        for t in [(-bb - sq) / (2.0 * aa), (-bb + sq) / (2.0 * aa)] {
            if t > 0.0 && t < 1.0 {
                ts.push(t);
            }
        }
    }
    ts.push(1.0);
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut area = 0.0;
    for w in ts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        if t1 - t0 <= 0.0 {
            continue;
        }
        let p = add(a, scale(d, t0));
        let q = add(a, scale(d, t1));
        let mid = add(a, scale(d, 0.5 * (t0 + t1)));
        if dot(mid, mid) <= r * r {
            area += 0.5 * cross(p, q);
        } else {
            // Exterior piece: replace the chord by the circular arc; a
            // fully exterior sub-segment subtends less than pi.
            let a0 = p[1].atan2(p[0]);
            let a1 = q[1].atan2(q[0]);
            let mut da = a1 - a0;
            if da > std::f64::consts::PI {
                da -= 2.0 * std::f64::consts::PI;
            } else if da < -std::f64::consts::PI {
                da += 2.0 * std::f64::consts::PI;
            }
            area += 0.5 * r * r * da;
        }
    }
    area
}

/// Symmetric 2x2 matrix `[[a, b], [b, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SymMat2 {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 1.0 }
    }

    pub fn diag(a: f64, c: f64) -> Self {
        Self { a, b: 0.0, c }
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    pub fn trace(&self) -> f64 {
        self.a + self.c
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        [self.a * v[0] + self.b * v[1], self.b * v[0] + self.c * v[1]]
    }

    /// Quadratic form `v . M v`.
    pub fn quad(&self, v: Vec2) -> f64 {
        dot(v, self.apply(v))
    }

    /// Eigenvalues in increasing order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let m = 0.5 * self.trace();
        let d = (m * m - self.det()).max(0.0).sqrt();
        (m - d, m + d)
    }

    pub fn is_spd(&self) -> bool {
        self.a > 0.0 && self.det() > 0.0
    }

    /// Spectral norm (largest eigenvalue for SPD matrices).
    pub fn norm2(&self) -> f64 {
        let (lo, hi) = self.eigenvalues();
        hi.abs().max(lo.abs())
    }

    /// Spectral condition number `||M|| ||M^-1||` for SPD matrices.
    pub fn cond(&self) -> f64 {
        let (lo, hi) = self.eigenvalues();
        hi / lo
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shoelace_unit_square() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert_eq!(polygon_area(&sq), 1.0);
        assert_eq!(polygon_centroid(&sq), [0.5, 0.5]);
    }

    #[test]
    fn halfplane_clip_cuts_square() {
        let sq = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        let clipped = clip_halfplane(&sq, [1.0, 0.0], 0.5);
        assert!((polygon_area(&clipped) - 0.5).abs() < 1e-14);
        let gone = clip_halfplane(&sq, [1.0, 0.0], -1.0);
        assert!(gone.is_empty());
    }

    #[test]
    fn hull_of_grid_is_square() {
        let mut pts = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                pts.push([i as f64, j as f64]);
            }
        }
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
        assert!((polygon_area(&hull) - 16.0).abs() < 1e-12);
    }

    #[test]
    fn disk_area_of_containing_polygon_is_pi_r2() {
        let sq = [[-2.0, -2.0], [2.0, -2.0], [2.0, 2.0], [-2.0, 2.0]];
        let a = polygon_disk_area(&sq, [0.0, 0.0], 1.0);
        assert!((a - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn disk_area_quarter_plane() {
        // Unit disk intersected with the first quadrant.
        let sq = [[0.0, 0.0], [3.0, 0.0], [3.0, 3.0], [0.0, 3.0]];
        let a = polygon_disk_area(&sq, [0.0, 0.0], 1.0);
        assert!((a - std::f64::consts::PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn disk_area_small_polygon_inside() {
        let sq = [[0.1, 0.1], [0.3, 0.1], [0.3, 0.4], [0.1, 0.4]];
        let a = polygon_disk_area(&sq, [0.0, 0.0], 2.0);
        assert!((a - 0.06).abs() < 1e-14);
    }

    #[test]
    fn symmat_eigen_and_cond() {
        let m = SymMat2::new(2.0, 1.0, 2.0);
        let (lo, hi) = m.eigenvalues();
        assert!((lo - 1.0).abs() < 1e-14 && (hi - 3.0).abs() < 1e-14);
        assert!((m.cond() - 3.0).abs() < 1e-14);
        assert!((m.det() - 3.0).abs() < 1e-14);
    }
}
