//! Adaptive-precision orientation predicates.
//!
//! The lifted lower-hull construction evaluates signs of small determinants
//! whose inputs are maximally degenerate for lattice data (every cell of a
//! quadratic is coplanar after lifting). Each predicate is first evaluated
//! in `f64` with a forward error bound; ambiguous signs are recomputed in
//! exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn rat(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Sign of the 2D orientation determinant `det [b - a; c - a]`.
///
/// Returns `1` if `c` lies strictly left of the directed line `a -> b`,
/// `-1` if strictly right, `0` if the three points are exactly collinear.
pub fn orient2d(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> i32 {
    let (acx, acy) = (a[0] - c[0], a[1] - c[1]);
    let (bcx, bcy) = (b[0] - c[0], b[1] - c[1]);
    let det = acx * bcy - acy * bcx;
    let perm = acx.abs() * bcy.abs() + acy.abs() * bcx.abs();
    // 8 eps covers the rounding of the four subtractions and the 2x2 det.
    let bound = 8.0 * f64::EPSILON * perm;
    if det > bound {
        return 1;
    }
    if det < -bound {
        return -1;
    }
    orient2d_exact(a, b, c)
}

fn orient2d_exact(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> i32 {
    let det = (rat(a[0]) - rat(c[0])) * (rat(b[1]) - rat(c[1]))
        - (rat(a[1]) - rat(c[1])) * (rat(b[0]) - rat(c[0]));
    sign(&det)
}

/// Sign of `det [b - a; c - a; q - a]` for lifted points `(x, y, z)`.
///
/// With `(a, b, c)` counterclockwise in the plane, the value is positive
/// when `q` lies strictly above the plane through `a, b, c`, negative when
/// strictly below, and zero when exactly coplanar.
pub fn orient3d(a: [f64; 3], b: [f64; 3], c: [f64; 3], q: [f64; 3]) -> i32 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let w = [q[0] - a[0], q[1] - a[1], q[2] - a[2]];
    let m0 = u[1] * v[2] - u[2] * v[1];
    let m1 = u[2] * v[0] - u[0] * v[2];
    let m2 = u[0] * v[1] - u[1] * v[0];
    let det = m0 * w[0] + m1 * w[1] + m2 * w[2];
    let p0 = u[1].abs() * v[2].abs() + u[2].abs() * v[1].abs();
    let p1 = u[2].abs() * v[0].abs() + u[0].abs() * v[2].abs();
    let p2 = u[0].abs() * v[1].abs() + u[1].abs() * v[0].abs();
    let perm = p0 * w[0].abs() + p1 * w[1].abs() + p2 * w[2].abs();
    let bound = 16.0 * f64::EPSILON * perm;
    if det > bound {
        return 1;
    }
    if det < -bound {
        return -1;
    }
    orient3d_exact(a, b, c, q)
}

fn orient3d_exact(a: [f64; 3], b: [f64; 3], c: [f64; 3], q: [f64; 3]) -> i32 {
    let col = |p: [f64; 3]| [rat(p[0]) - rat(a[0]), rat(p[1]) - rat(a[1]), rat(p[2]) - rat(a[2])];
    let u = col(b);
    let v = col(c);
    let w = col(q);
    let det = (&u[1] * &v[2] - &u[2] * &v[1]) * &w[0]
        + (&u[2] * &v[0] - &u[0] * &v[2]) * &w[1]
        + (&u[0] * &v[1] - &u[1] * &v[0]) * &w[2];
    sign(&det)
}

fn sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.numer() < &BigInt::from(0) {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orient2d_detects_exact_collinearity() {
        assert_eq!(orient2d([0.0, 0.0], [1.0, 1.0], [2.0, 2.0]), 0);
        assert_eq!(orient2d([0.0, 0.0], [1.0, 0.0], [0.5, 1e-300]), 1);
        assert_eq!(orient2d([0.0, 0.0], [1.0, 0.0], [0.5, -1e-300]), -1);
    }

    #[test]
    fn orient3d_detects_coplanar_lift() {
        // Four corners of a lattice cell lifted by a quadratic are coplanar
        // only when the quadratic is harmonic along the diagonal; x^2 + y^2
        // on the unit cell: z values 0, 1, 1, 2 -> coplanar.
        let a = [0.0, 0.0, 0.0];
        let b = [1.0, 0.0, 1.0];
        let c = [0.0, 1.0, 1.0];
        let q = [1.0, 1.0, 2.0];
        assert_eq!(orient3d(a, b, c, q), 0);
        let q_below = [1.0, 1.0, 2.0 - 1e-12];
        assert_eq!(orient3d(a, b, c, q_below), -1);
        let q_above = [1.0, 1.0, 2.0 + 1e-12];
        assert_eq!(orient3d(a, b, c, q_above), 1);
    }
}
