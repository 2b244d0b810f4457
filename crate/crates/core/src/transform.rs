//! Rigid motions, reflections and hyperbolic isometries of point sets.

use rand::Rng;

use crate::vec3::{self, Point3};

pub type Mat3 = [[f64; 3]; 3];

pub const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

/// Rotation by `angle` about `axis` (Rodrigues' formula).
pub fn rotation(axis: Point3, angle: f64) -> Mat3 {
    let n = vec3::norm(axis);
    let [x, y, z] = vec3::scale(1.0 / n, axis);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

/// Uniformly distributed rotation, from a random unit quaternion.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Mat3 {
    let (u1, u2, u3): (f64, f64, f64) = (rng.random(), rng.random(), rng.random());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (
        a * (tau * u2).sin(),
        a * (tau * u2).cos(),
        b * (tau * u3).sin(),
        b * (tau * u3).cos(),
    );
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - z * w),
            2.0 * (x * z + y * w),
        ],
        [
            2.0 * (x * y + z * w),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - x * w),
        ],
        [
            2.0 * (x * z - y * w),
            2.0 * (y * z + x * w),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

pub fn transpose(m: &Mat3) -> Mat3 {
    let mut t = [[0.0; 3]; 3];
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = *v;
        }
    }
    t
}

pub fn rotate(points: &[Point3], m: &Mat3) -> Vec<Point3> {
    points.iter().map(|p| vec3::mat_apply(m, *p)).collect()
}

pub fn translate(points: &[Point3], offset: Point3) -> Vec<Point3> {
    points.iter().map(|p| vec3::add(*p, offset)).collect()
}

pub fn scale(points: &[Point3], lambda: f64) -> Vec<Point3> {
    points.iter().map(|p| vec3::scale(lambda, *p)).collect()
}

/// Reflection in the plane `z = 0`.
pub fn reflect_z(points: &[Point3]) -> Vec<Point3> {
    points.iter().map(|p| [p[0], p[1], -p[2]]).collect()
}

pub fn centroid(points: &[Point3]) -> Point3 {
    let sum = points.iter().fold([0.0; 3], |acc, p| vec3::add(acc, *p));
    vec3::scale(1.0 / points.len() as f64, sum)
}

/// Lorentz boost of rapidity `phi` along `z`, acting on the ball of radius
/// `radius` viewed as the projective model of hyperbolic space. Straight
/// chords map to straight chords and the ball to itself.
pub fn klein_boost_z(points: &[Point3], radius: f64, phi: f64) -> Vec<Point3> {
    let (ch, sh) = (phi.cosh(), phi.sinh());
    points
        .iter()
        .map(|p| {
            let [x, y, z] = vec3::scale(1.0 / radius, *p);
            let w = ch + sh * z;
            vec3::scale(radius / w, [x, y, sh + ch * z])
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn is_orthogonal(m: &Mat3) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let want = if i == j { 1.0 } else { 0.0 };
                (vec3::dot(m[i], m[j]) - want).abs() < 1e-12
            })
        })
    }

    #[test]
    fn rotations_are_orthogonal() {
        assert!(is_orthogonal(&rotation([1.0, 2.0, -0.5], 0.7)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            assert!(is_orthogonal(&random_rotation(&mut rng)));
        }
    }

    #[test]
    fn quarter_turn_about_z() {
        let m = rotation([0.0, 0.0, 1.0], std::f64::consts::FRAC_PI_2);
        let p = vec3::mat_apply(&m, [1.0, 0.0, 0.0]);
        assert!(vec3::max_dist(&p, &[0.0, 1.0, 0.0]) < 1e-15);
    }

    #[test]
    fn boost_keeps_the_ball() {
        let pts = vec![[0.1, 0.2, 0.3], [0.0, 0.0, -0.9], [0.5, -0.5, 0.5]];
        for q in klein_boost_z(&pts, 1.0, 1.3) {
            assert!(vec3::norm(q) < 1.0);
        }
        let boundary = klein_boost_z(&[[0.6, 0.0, 0.8]], 1.0, 0.9);
        assert!((vec3::norm(boundary[0]) - 1.0).abs() < 1e-14);
    }
}
