//! Directions on S², points of CP¹ and their spinor lifts.
//!
//! The projection pole is fixed at `(0, 0, 1)`: a unit vector `(x, y, z)`
//! maps to the complex number `(x + iy) / (1 - z)`, with the pole itself
//! going to `∞ = [1 : 0]`. Points of CP¹ are always carried as homogeneous
//! pairs `[U : V]`, so the point at infinity needs no special casing.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::precision::{modulus, Real};

/// Tolerance on `x² + y² + z² = 1` accepted by [`SpherePoint::new`].
pub const SPHERE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint<T = f64> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> SpherePoint<T> {
    /// Checked constructor; the coordinates must already be a unit vector.
    pub fn new(x: T, y: T, z: T) -> Result<Self, Error> {
        let norm2 = x * x + y * y + z * z;
        if !norm2.is_finite() || (norm2 - T::one()).abs().to_f64() > SPHERE_TOLERANCE {
            return Err(Error::NotOnSphere {
                norm: norm2.sqrt().to_f64(),
            });
        }
        Ok(Self { x, y, z })
    }

    /// Normalizes a nonzero vector onto the sphere.
    pub fn from_vector(v: [T; 3]) -> Result<Self, Error> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            x: v[0] / norm,
            y: v[1] / norm,
            z: v[2] / norm,
        })
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn north_pole() -> Self {
        Self {
            x: T::zero(),
            y: T::zero(),
            z: T::one(),
        }
    }
}

/// A point `[U : V]` of the complex projective line.
#[derive(Debug, Clone, Copy)]
pub struct ProjectivePoint<T = f64> {
    pub u: Complex<T>,
    pub v: Complex<T>,
}

impl<T: Real> ProjectivePoint<T> {
    pub fn new(u: Complex<T>, v: Complex<T>) -> Result<Self, Error> {
        if u.is_zero() && v.is_zero() {
            return Err(Error::ZeroHomogeneousPair);
        }
        Ok(Self { u, v })
    }

    /// The affine point `z = [z : 1]`.
    pub fn finite(z: Complex<T>) -> Self {
        Self {
            u: z,
            v: Complex::one(),
        }
    }

    pub fn infinity() -> Self {
        Self {
            u: Complex::one(),
            v: Complex::zero(),
        }
    }

    /// `U / V`, or `None` at infinity.
    pub fn affine(&self) -> Option<Complex<T>> {
        if self.v.is_zero() {
            None
        } else {
            Some(self.u / self.v)
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    /// Chordal distance between the two points viewed on the Riemann sphere:
    /// `|U V' - V U'| / (‖(U, V)‖ ‖(U', V')‖)`. It lies in `[0, 1]`, is
    /// independent of the representatives and is zero exactly for equal points.
    pub fn chordal_distance(&self, other: &Self) -> T {
        let cross = self.u * other.v - self.v * other.u;
        let n1 = (self.u.norm_sqr() + self.v.norm_sqr()).sqrt();
        let n2 = (other.u.norm_sqr() + other.v.norm_sqr()).sqrt();
        modulus(cross) / (n1 * n2)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.chordal_distance(other).to_f64() <= tol
    }
}

impl<T: Real> PartialEq for ProjectivePoint<T> {
    /// Projective equality: `[U : V] = [λU : λV]`.
    fn eq(&self, other: &Self) -> bool {
        self.u * other.v == self.v * other.u
    }
}

/// A concrete representative `(c0, c1) ∈ C²` of a point of CP¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T = f64> {
    pub c0: Complex<T>,
    pub c1: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(c0: Complex<T>, c1: Complex<T>) -> Self {
        Self { c0, c1 }
    }

    pub fn norm(&self) -> T {
        (self.c0.norm_sqr() + self.c1.norm_sqr()).sqrt()
    }

    pub fn scale(&self, lambda: Complex<T>) -> Self {
        Self {
            c0: self.c0 * lambda,
            c1: self.c1 * lambda,
        }
    }

    pub fn projection(&self) -> Result<ProjectivePoint<T>, Error> {
        ProjectivePoint::new(self.c0, self.c1)
    }
}

/// Stereographic projection from the north pole, in homogeneous form.
///
/// On the lower hemisphere the pair `[x + iy : 1 - z]` is used; on the upper
/// hemisphere the equivalent `[1 + z : x - iy]`, which stays nonzero at the pole.
pub fn stereographic_to_cp1<T: Real>(p: SpherePoint<T>) -> ProjectivePoint<T> {
    if p.z > T::zero() {
        ProjectivePoint {
            u: Complex::new(T::one() + p.z, T::zero()),
            v: Complex::new(p.x, -p.y),
        }
    } else {
        ProjectivePoint {
            u: Complex::new(p.x, p.y),
            v: Complex::new(T::one() - p.z, T::zero()),
        }
    }
}

/// Inverse of [`stereographic_to_cp1`].
pub fn cp1_to_sphere<T: Real>(q: ProjectivePoint<T>) -> SpherePoint<T> {
    let uu = q.u.norm_sqr();
    let vv = q.v.norm_sqr();
    let s = uu + vv;
    let w = q.u * q.v.conj();
    let two = T::two();
    SpherePoint {
        x: two * w.re / s,
        y: two * w.im / s,
        z: (uu - vv) / s,
    }
}

pub fn antipode<T: Real>(p: SpherePoint<T>) -> SpherePoint<T> {
    SpherePoint {
        x: -p.x,
        y: -p.y,
        z: -p.z,
    }
}

/// The antipodal map on CP¹: `[U : V] ↦ [-conj(V) : conj(U)]`.
pub fn antipode_cp1<T: Real>(q: ProjectivePoint<T>) -> ProjectivePoint<T> {
    ProjectivePoint {
        u: -q.v.conj(),
        v: q.u.conj(),
    }
}

/// Unit-norm representative of `q`.
pub fn lift<T: Real>(q: ProjectivePoint<T>) -> Spinor<T> {
    let norm = (q.u.norm_sqr() + q.v.norm_sqr()).sqrt();
    Spinor {
        c0: q.u.unscale(norm),
        c1: q.v.unscale(norm),
    }
}

/// The standard symplectic form on C²: `a.c0 b.c1 - a.c1 b.c0`.
#[inline]
pub fn wedge<T: Real>(a: &Spinor<T>, b: &Spinor<T>) -> Complex<T> {
    a.c0 * b.c1 - a.c1 * b.c0
}

/// A unimodular matrix `((a, b), (c, d))` acting by `u ↦ (au + b) / (cu + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap<T = f64> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Real> MobiusMap<T> {
    /// Builds the map and rescales it to determinant one.
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Result<Self, Error> {
        let det = a * d - b * c;
        if modulus(det).to_f64() < 1e-300 || !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::SingularMobius);
        }
        let k = Complex::<T>::one() / det.sqrt();
        Ok(Self {
            a: a * k,
            b: b * k,
            c: c * k,
            d: d * k,
        })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::one(),
            b: Complex::zero(),
            c: Complex::zero(),
            d: Complex::one(),
        }
    }

    /// `u ↦ u + b`.
    pub fn translation(b: Complex<T>) -> Self {
        Self {
            a: Complex::one(),
            b,
            c: Complex::zero(),
            d: Complex::one(),
        }
    }

    /// `u ↦ -1/u`.
    pub fn inversion() -> Self {
        Self {
            a: Complex::zero(),
            b: Complex::one(),
            c: -Complex::<T>::one(),
            d: Complex::zero(),
        }
    }

    pub fn determinant(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

pub fn mobius_apply<T: Real>(m: &MobiusMap<T>, q: ProjectivePoint<T>) -> ProjectivePoint<T> {
    ProjectivePoint {
        u: m.a * q.u + m.b * q.v,
        v: m.c * q.u + m.d * q.v,
    }
}

pub fn mobius_apply_spinor<T: Real>(m: &MobiusMap<T>, s: &Spinor<T>) -> Spinor<T> {
    Spinor {
        c0: m.a * s.c0 + m.b * s.c1,
        c1: m.c * s.c0 + m.d * s.c1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sphere(x: f64, y: f64, z: f64) -> SpherePoint {
        SpherePoint::new(x, y, z).unwrap()
    }

    #[test]
    fn pole_maps_to_infinity() {
        let q = stereographic_to_cp1(sphere(0.0, 0.0, 1.0));
        assert!(q.is_infinity());
        assert_eq!(q, ProjectivePoint::infinity());
    }

    #[test]
    fn south_pole_maps_to_zero() {
        let q = stereographic_to_cp1(sphere(0.0, 0.0, -1.0));
        assert_eq!(q.u, c(0.0, 0.0));
        assert_eq!(q.v, c(2.0, 0.0));
        assert_eq!(q.affine().unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn equator_maps_to_unit_circle() {
        let q = stereographic_to_cp1(sphere(1.0, 0.0, 0.0));
        assert_eq!(q, ProjectivePoint::finite(c(1.0, 0.0)));
        let q = stereographic_to_cp1(sphere(0.6, 0.8, 0.0));
        assert!((q.affine().unwrap().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn both_hemisphere_forms_agree_near_equator() {
        let p = SpherePoint::from_vector([0.3, -0.4, 1e-3]).unwrap();
        let upper = stereographic_to_cp1(p);
        let lower = ProjectivePoint::finite(c(p.x, p.y) / (1.0 - p.z));
        assert!(upper.chordal_distance(&lower) < 1e-15);
    }

    #[test]
    fn off_sphere_point_is_rejected() {
        assert!(matches!(
            SpherePoint::new(1.0, 1.0, 0.0),
            Err(Error::NotOnSphere { .. })
        ));
        assert!(matches!(
            SpherePoint::<f64>::from_vector([0.0; 3]),
            Err(Error::ZeroDirection)
        ));
    }

    #[test]
    fn antipodes() {
        assert_eq!(antipode(sphere(0.0, 0.0, 1.0)), sphere(0.0, 0.0, -1.0));
        assert_eq!(
            antipode_cp1(ProjectivePoint::finite(c(1.0, 0.0))),
            ProjectivePoint::finite(c(-1.0, 0.0))
        );
        let zero = ProjectivePoint::finite(c(0.0, 0.0));
        assert_eq!(antipode_cp1(ProjectivePoint::infinity()), zero);
    }

    #[test]
    fn canonical_lifts() {
        let s = lift(ProjectivePoint::finite(c(0.0, 0.0)));
        assert_eq!((s.c0, s.c1), (c(0.0, 0.0), c(1.0, 0.0)));
        let s = lift(ProjectivePoint::<f64>::infinity());
        assert_eq!((s.c0, s.c1), (c(1.0, 0.0), c(0.0, 0.0)));
        let s = lift(ProjectivePoint::finite(c(1.0, 0.0)));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.c0 - c(h, 0.0)).norm() < 1e-15 && (s.c1 - c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn wedge_basics() {
        let e0 = Spinor::new(c(1.0, 0.0), c(0.0, 0.0));
        let e1 = Spinor::new(c(0.0, 0.0), c(1.0, 0.0));
        assert_eq!(wedge(&e0, &e1), c(1.0, 0.0));
        let a = Spinor::new(c(0.3, -1.2), c(2.0, 0.5));
        let b = Spinor::new(c(-0.7, 0.1), c(0.4, 0.9));
        assert_eq!(wedge(&a, &a), c(0.0, 0.0));
        let lambda = c(1.5, -2.0);
        assert!((wedge(&a.scale(lambda), &b) - lambda * wedge(&a, &b)).norm() < 1e-14);
        assert_eq!(wedge(&a, &b), -wedge(&b, &a));
    }

    #[test]
    fn mobius_examples() {
        let q = ProjectivePoint::finite(c(0.3, 0.7));
        assert_eq!(mobius_apply(&MobiusMap::identity(), q), q);
        let b = c(2.0, -1.0);
        let shifted = mobius_apply(&MobiusMap::translation(b), q).affine().unwrap();
        assert!((shifted - (c(0.3, 0.7) + b)).norm() < 1e-15);
        let inv = mobius_apply(&MobiusMap::inversion(), ProjectivePoint::finite(c(2.0, 0.0)));
        assert_eq!(inv.affine().unwrap(), c(-0.5, 0.0));
    }

    #[test]
    fn mobius_constructor_normalizes() {
        let m = MobiusMap::new(c(2.0, 1.0), c(0.5, 0.0), c(-1.0, 3.0), c(1.0, 1.0)).unwrap();
        assert!((m.determinant() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(matches!(
            MobiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)),
            Err(Error::SingularMobius)
        ));
        let id = m.compose(&m.inverse());
        assert!((id.a - c(1.0, 0.0)).norm() < 1e-12 && id.b.norm() < 1e-12);
    }

    fn unit_vector() -> impl Strategy<Value = SpherePoint> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
            .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-6)
            .prop_map(|(x, y, z)| SpherePoint::from_vector([x, y, z]).unwrap())
    }

    fn complex() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| c(re, im))
    }

    fn spinor() -> impl Strategy<Value = Spinor> {
        (complex(), complex()).prop_map(|(a, b)| Spinor::new(a, b))
    }

    fn unimodular() -> impl Strategy<Value = MobiusMap> {
        (complex(), complex(), complex(), complex())
            .prop_filter_map("singular", |(a, b, c, d)| MobiusMap::new(a, b, c, d).ok())
            .prop_filter("moderate", |m| [m.a, m.b, m.c, m.d].iter().all(|z| z.norm() < 4.0))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn stereographic_round_trip(p in unit_vector()) {
            let back = cp1_to_sphere(stereographic_to_cp1(p));
            prop_assert!((back.x - p.x).abs() <= 1e-12);
            prop_assert!((back.y - p.y).abs() <= 1e-12);
            prop_assert!((back.z - p.z).abs() <= 1e-12);
        }

        #[test]
        fn antipode_commutes_with_projection(p in unit_vector()) {
            let a = stereographic_to_cp1(antipode(p));
            let b = antipode_cp1(stereographic_to_cp1(p));
            prop_assert!(a.chordal_distance(&b) <= 1e-12);
        }

        #[test]
        fn antipodal_wedge_has_unit_modulus(p in unit_vector()) {
            let q = stereographic_to_cp1(p);
            let w = wedge(&lift(q), &lift(antipode_cp1(q)));
            prop_assert!((w.norm() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn lift_reprojects(p in unit_vector()) {
            let q = stereographic_to_cp1(p);
            let s = lift(q);
            prop_assert!((s.norm() - 1.0).abs() <= 1e-15);
            prop_assert!(s.projection().unwrap().chordal_distance(&q) <= 1e-15);
        }

        #[test]
        fn wedge_is_mobius_invariant(m in unimodular(), s in spinor(), t in spinor()) {
            let before = wedge(&s, &t);
            let after = wedge(&mobius_apply_spinor(&m, &s), &mobius_apply_spinor(&m, &t));
            prop_assert!((after - before).norm() <= 1e-12 * (1.0 + s.norm() * t.norm()));
        }
    }
}
