//! Upper-half-plane geometry: Möbius isometries, pointers (unit tangent
//! vectors), the geodesic and horocycle one-parameter groups, and the
//! dictionary between `PSL₂(ℝ)` and the unit tangent bundle.
//!
//! Orientation conventions:
//!
//! * `pointer_of(B) = (B⁻¹(i), dB⁻¹ᵢ(π/2))`, the map usually called `g`.
//! * `lattice_pointer_of(B) = (B(i), dBᵢ(π/2))`, the map called `h` on the
//!   representation variety. Both are kept; neither is derived from the other.
//! * [`flow_pointer`] moves the base point forward in the direction the pointer
//!   points. On the group side this reads `pointer_of(B) ↦ pointer_of(G₋ₜ·B)`,
//!   i.e. left multiplication by `G_t` flows pointers backwards.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::tolerance::ALGEBRAIC;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("point {x} + {y}i is not in the upper half plane")]
    NotInUpperHalfPlane { x: f64, y: f64 },
    #[error("matrix has non-positive determinant {0}")]
    NonPositiveDeterminant(f64),
    #[error("non-finite value in input")]
    NonFinite,
    #[error("isometry is not hyperbolic (|trace| = {0})")]
    NotHyperbolic(f64),
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
}

/// A point `x + iy` with `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperHalfPoint {
    x: f64,
    y: f64,
}

impl UpperHalfPoint {
    pub const I: UpperHalfPoint = UpperHalfPoint { x: 0.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if y <= 0.0 {
            return Err(GeometryError::NotInUpperHalfPlane { x, y });
        }
        Ok(Self { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    /// Hyperbolic distance `arccosh(1 + |z − w|² / (2·Im z·Im w))`.
    pub fn distance(&self, other: &UpperHalfPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let arg = 1.0 + (dx * dx + dy * dy) / (2.0 * self.y * other.y);
        arg.max(1.0).acosh()
    }
}

impl fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.x, self.y)
    }
}

/// A point of `ℝ ∪ {∞}`, the ideal boundary of the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn approx_eq(&self, other: &BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => {
                (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
            }
            _ => false,
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "∞"),
        }
    }
}

/// An oriented geodesic given by its ideal endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryGeodesic {
    start: BoundaryPoint,
    end: BoundaryPoint,
}

impl BoundaryGeodesic {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Result<Self, GeometryError> {
        if start.approx_eq(&end, 0.0) {
            return Err(GeometryError::DegenerateGeodesic);
        }
        Ok(Self { start, end })
    }

    pub fn start(&self) -> BoundaryPoint {
        self.start
    }

    pub fn end(&self) -> BoundaryPoint {
        self.end
    }
}

/// A unit tangent vector: base point plus direction angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pointer {
    base: UpperHalfPoint,
    angle: f64,
}

pub(crate) fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed difference of two angles, reduced into `(−π, π]`.
pub fn angle_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    if d > std::f64::consts::PI {
        d - TAU
    } else {
        d
    }
}

impl Pointer {
    pub fn new(base: UpperHalfPoint, angle: f64) -> Result<Self, GeometryError> {
        if !angle.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        Ok(Self {
            base,
            angle: reduce_angle(angle),
        })
    }

    /// The reference pointer `(i, π/2)`.
    pub fn reference() -> Self {
        Self {
            base: UpperHalfPoint::I,
            angle: FRAC_PI_2,
        }
    }

    pub fn base(&self) -> UpperHalfPoint {
        self.base
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn approx_eq(&self, other: &Pointer, tol: f64) -> bool {
        (self.base.x - other.base.x).abs() <= tol
            && (self.base.y - other.base.y).abs() <= tol
            && angle_difference(self.angle, other.angle).abs() <= tol
    }
}

/// An orientation-preserving isometry of the upper half plane: a unit
/// determinant real matrix, stored with a canonical sign (the first nonzero
/// of `a, b, c` is positive) so values represent elements of `PSL₂(ℝ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusTransform {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusTransform {
    pub const IDENTITY: MobiusTransform = MobiusTransform {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Scales to unit determinant and fixes the sign.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, GeometryError> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(GeometryError::NonPositiveDeterminant(det));
        }
        let s = det.sqrt();
        Ok(Self::canonical(a / s, b / s, c / s, d / s))
    }

    fn canonical(a: f64, b: f64, c: f64, d: f64) -> Self {
        // Entries this small are rounding noise on a unit-determinant matrix.
        const NOISE: f64 = 1e-15;
        let lead = [a, b, c]
            .into_iter()
            .find(|v| v.abs() > NOISE)
            .unwrap_or(d);
        if lead < 0.0 {
            Self {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Self { a, b, c, d }
        }
    }

    fn from_product(a: f64, b: f64, c: f64, d: f64) -> Self {
        let det = a * d - b * c;
        let s = det.sqrt();
        Self::canonical(a / s, b / s, c / s, d / s)
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn compose(&self, other: &MobiusTransform) -> MobiusTransform {
        Self::from_product(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
    }

    pub fn inverse(&self) -> MobiusTransform {
        Self::canonical(self.d, -self.b, -self.c, self.a)
    }

    pub fn pow(&self, n: i64) -> MobiusTransform {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = Self::IDENTITY;
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Entrywise distance in `PSL₂`: the smaller of `‖M − N‖∞` and `‖M + N‖∞`.
    pub fn distance(&self, other: &MobiusTransform) -> f64 {
        let x = self.entries();
        let y = other.entries();
        let minus = x.iter().zip(&y).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        let plus = x.iter().zip(&y).map(|(p, q)| (p + q).abs()).fold(0.0, f64::max);
        minus.min(plus)
    }

    pub fn approx_eq(&self, other: &MobiusTransform, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&Self::IDENTITY, tol)
    }

    /// Fractional-linear action `(az + b)/(cz + d)`.
    pub fn apply(&self, p: &UpperHalfPoint) -> UpperHalfPoint {
        let z = p.to_complex();
        let w = (z * self.a + self.b) / (z * self.c + self.d);
        // Im w = Im z / |cz + d|² > 0; clamp only guards underflow.
        UpperHalfPoint {
            x: w.re,
            y: w.im.max(f64::MIN_POSITIVE),
        }
    }

    pub fn apply_boundary(&self, x: BoundaryPoint) -> BoundaryPoint {
        match x {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / den)
                }
            }
        }
    }

    /// Argument of the complex derivative `1/(cz + d)²` at `p`.
    fn derivative_angle(&self, p: &UpperHalfPoint) -> f64 {
        let den = p.to_complex() * self.c + self.d;
        -2.0 * den.arg()
    }

    pub fn apply_pointer(&self, pt: &Pointer) -> Pointer {
        Pointer {
            base: self.apply(&pt.base),
            angle: reduce_angle(pt.angle + self.derivative_angle(&pt.base)),
        }
    }
}

impl Mul for MobiusTransform {
    type Output = MobiusTransform;

    fn mul(self, rhs: MobiusTransform) -> MobiusTransform {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a MobiusTransform> for &'a MobiusTransform {
    type Output = MobiusTransform;

    fn mul(self, rhs: &'a MobiusTransform) -> MobiusTransform {
        self.compose(rhs)
    }
}

impl fmt::Display for MobiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} {}; {} {}]", self.a, self.b, self.c, self.d)
    }
}

/// `G_t = diag(e^{t/2}, e^{−t/2})`.
pub fn geodesic_flow_matrix(t: f64) -> MobiusTransform {
    let h = (t / 2.0).exp();
    MobiusTransform::canonical(h, 0.0, 0.0, 1.0 / h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Horocycle {
    /// `H⁺_u = (1 u; 0 1)`, expanded by the geodesic flow.
    Plus,
    /// `H⁻_s = (1 0; s 1)`, contracted by the geodesic flow.
    Minus,
}

pub fn horocycle_matrix(s: f64, sign: Horocycle) -> MobiusTransform {
    match sign {
        Horocycle::Plus => MobiusTransform::canonical(1.0, s, 0.0, 1.0),
        Horocycle::Minus => MobiusTransform::canonical(1.0, 0.0, s, 1.0),
    }
}

/// `K_θ`: rotation about `i` by `θ` (counterclockwise on tangent vectors).
pub fn rotation_about_i(theta: f64) -> MobiusTransform {
    let (s, c) = (theta / 2.0).sin_cos();
    MobiusTransform::canonical(c, s, -s, c)
}

/// The isometry taking `i` to `p` with positive real derivative.
fn translate_from_i(p: &UpperHalfPoint) -> MobiusTransform {
    let r = p.y.sqrt();
    MobiusTransform::canonical(r, p.x / r, 0.0, 1.0 / r)
}

/// Elliptic element fixing `p` with rotation angle `θ`.
pub fn rotation_about(p: &UpperHalfPoint, theta: f64) -> MobiusTransform {
    let t = translate_from_i(p);
    t * rotation_about_i(theta) * t.inverse()
}

/// `g(B) = (B⁻¹(i), dB⁻¹ᵢ(π/2))`.
pub fn pointer_of(b: &MobiusTransform) -> Pointer {
    b.inverse().apply_pointer(&Pointer::reference())
}

/// Inverse of [`pointer_of`]: the unique `B` with `pointer_of(B) = pt`.
pub fn transform_of(pt: &Pointer) -> MobiusTransform {
    let carry = translate_from_i(&pt.base) * rotation_about_i(pt.angle - FRAC_PI_2);
    carry.inverse()
}

/// `h(B) = (B(i), dBᵢ(π/2))`.
pub fn lattice_pointer_of(b: &MobiusTransform) -> Pointer {
    b.apply_pointer(&Pointer::reference())
}

/// Inverse of [`lattice_pointer_of`].
pub fn transform_of_lattice_pointer(pt: &Pointer) -> MobiusTransform {
    translate_from_i(&pt.base) * rotation_about_i(pt.angle - FRAC_PI_2)
}

/// Moves a pointer a signed distance `t` along its geodesic.
pub fn flow_pointer(pt: &Pointer, t: f64) -> Pointer {
    let carry = transform_of(pt).inverse();
    (carry * geodesic_flow_matrix(t)).apply_pointer(&Pointer::reference())
}

/// The oriented geodesic through a pointer, as ideal endpoints (backward, forward).
pub fn geodesic_of(pt: &Pointer) -> BoundaryGeodesic {
    let carry = transform_of(pt).inverse();
    BoundaryGeodesic {
        start: carry.apply_boundary(BoundaryPoint::Finite(0.0)),
        end: carry.apply_boundary(BoundaryPoint::Infinity),
    }
}

/// Fixed points of a hyperbolic isometry, ordered (repelling, attracting).
pub fn axis(m: &MobiusTransform) -> Result<BoundaryGeodesic, GeometryError> {
    let tr = m.trace().abs();
    if tr <= 2.0 + crate::tolerance::PARABOLIC_BAND {
        return Err(GeometryError::NotHyperbolic(tr));
    }
    let [a, b, c, d] = m.entries();
    let (p, q) = if c.abs() <= ALGEBRAIC * (a.abs() + d.abs()) {
        // c = 0: z ↦ (az + b)/d fixes ∞ and b/(d − a).
        let finite = BoundaryPoint::Finite(b / (d - a));
        if (a / d).abs() > 1.0 {
            (finite, BoundaryPoint::Infinity)
        } else {
            (BoundaryPoint::Infinity, finite)
        }
    } else {
        // c·x² + (d − a)·x − b = 0
        let qb = d - a;
        let disc = (qb * qb + 4.0 * b * c).max(0.0).sqrt();
        let r1 = if qb >= 0.0 {
            (-qb - disc) / (2.0 * c)
        } else {
            (-qb + disc) / (2.0 * c)
        };
        let r2 = -b / (c * r1);
        let r2 = if r1 == 0.0 { -qb / c } else { r2 };
        let slope = |x: f64| 1.0 / (c * x + d).powi(2);
        if slope(r1) < 1.0 {
            (BoundaryPoint::Finite(r2), BoundaryPoint::Finite(r1))
        } else {
            (BoundaryPoint::Finite(r1), BoundaryPoint::Finite(r2))
        }
    };
    BoundaryGeodesic::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::GEOMETRIC;
    use std::f64::consts::PI;

    fn pt(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn compose_identity_and_inverse() {
        let m = MobiusTransform::new(2.0, 1.0, 3.0, 2.0).unwrap();
        assert!(MobiusTransform::IDENTITY.compose(&m).approx_eq(&m, ALGEBRAIC));
        assert!(m.compose(&m.inverse()).is_identity(ALGEBRAIC));
    }

    #[test]
    fn flow_matrices_form_a_group() {
        let lhs = geodesic_flow_matrix(0.3) * geodesic_flow_matrix(0.7);
        let e = 0.5f64.exp();
        let expected = MobiusTransform::new(e, 0.0, 0.0, 1.0 / e).unwrap();
        assert!(lhs.approx_eq(&expected, ALGEBRAIC));
        assert!(geodesic_flow_matrix(0.0).is_identity(0.0));
        let g2 = geodesic_flow_matrix(2.0).entries();
        assert!((g2[0] - 1f64.exp()).abs() < ALGEBRAIC);
        assert!((g2[3] - (-1f64).exp()).abs() < ALGEBRAIC);
    }

    #[test]
    fn rejects_lower_half_plane() {
        assert!(UpperHalfPoint::new(0.0, 0.0).is_err());
        assert!(UpperHalfPoint::new(1.0, -2.0).is_err());
        assert!(MobiusTransform::new(0.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn apply_fixed_points() {
        let i = UpperHalfPoint::I;
        let p = MobiusTransform::IDENTITY.apply(&i);
        assert_eq!(p, i);
        let inv = MobiusTransform::new(0.0, -1.0, 1.0, 0.0).unwrap();
        let q = inv.apply(&i);
        assert!((q.x() - 0.0).abs() < ALGEBRAIC && (q.y() - 1.0).abs() < ALGEBRAIC);
        let r = geodesic_flow_matrix(1.0).apply(&i);
        assert!(r.x().abs() < ALGEBRAIC && (r.y() - 1f64.exp()).abs() < ALGEBRAIC);
    }

    #[test]
    fn pointer_action_examples() {
        let refp = Pointer::reference();
        assert_eq!(MobiusTransform::IDENTITY.apply_pointer(&refp), refp);

        let alpha = 0.4;
        let theta = 1.1;
        let p = Pointer::new(UpperHalfPoint::I, alpha).unwrap();
        let q = rotation_about(&UpperHalfPoint::I, theta).apply_pointer(&p);
        let expected = Pointer::new(UpperHalfPoint::I, alpha + theta).unwrap();
        assert!(q.approx_eq(&expected, GEOMETRIC));

        let h = horocycle_matrix(1.0, Horocycle::Plus).apply_pointer(&refp);
        assert!(h.approx_eq(&Pointer::new(pt(1.0, 1.0), FRAC_PI_2).unwrap(), GEOMETRIC));
    }

    #[test]
    fn horocycle_examples() {
        assert!(horocycle_matrix(0.0, Horocycle::Minus).is_identity(0.0));
        assert_eq!(
            horocycle_matrix(1.0, Horocycle::Minus).entries(),
            [1.0, 0.0, 1.0, 1.0]
        );
        let (t, u) = (0.7, 2.0);
        let g = geodesic_flow_matrix(t);
        let lhs = g * horocycle_matrix(u, Horocycle::Plus) * g.inverse();
        assert!(lhs.approx_eq(&horocycle_matrix(u * t.exp(), Horocycle::Plus), ALGEBRAIC));
        let (t, s) = (1.0, 0.5);
        let g = geodesic_flow_matrix(t);
        let lhs = g * horocycle_matrix(s, Horocycle::Minus) * g.inverse();
        assert!(lhs.approx_eq(&horocycle_matrix(s * (-t).exp(), Horocycle::Minus), ALGEBRAIC));
    }

    #[test]
    fn rotation_examples() {
        assert!(rotation_about(&pt(0.3, 2.0), 0.0).is_identity(ALGEBRAIC));
        let half = rotation_about(&UpperHalfPoint::I, PI);
        let inv = MobiusTransform::new(0.0, -1.0, 1.0, 0.0).unwrap();
        assert!(half.approx_eq(&inv, ALGEBRAIC));

        let k = 5;
        let r = rotation_about(&pt(0.0, 2.0), 2.0 * PI / k as f64);
        assert!(r.pow(k).is_identity(GEOMETRIC));
        for j in 1..k {
            assert!(!r.pow(j).is_identity(1e-6), "power {j} is identity");
        }
        let theta = 0.8;
        let tr = rotation_about(&pt(-1.0, 0.5), theta).trace().abs();
        assert!((tr - 2.0 * (theta / 2.0).cos()).abs() < GEOMETRIC);
    }

    #[test]
    fn dictionary_examples() {
        assert!(pointer_of(&MobiusTransform::IDENTITY).approx_eq(&Pointer::reference(), 0.0));
        let g = pointer_of(&geodesic_flow_matrix(1.0));
        let expected = Pointer::new(pt(0.0, (-1f64).exp()), FRAC_PI_2).unwrap();
        assert!(g.approx_eq(&expected, GEOMETRIC));

        let b = MobiusTransform::new(1.5, 0.3, -0.7, 0.9).unwrap();
        assert!(transform_of(&pointer_of(&b)).approx_eq(&b, GEOMETRIC));
        assert!(transform_of_lattice_pointer(&lattice_pointer_of(&b)).approx_eq(&b, GEOMETRIC));
    }

    #[test]
    fn fiber_rotation_under_both_dictionaries() {
        let b = MobiusTransform::new(1.5, 0.3, -0.7, 0.9).unwrap();
        let theta = 0.9;
        let kb = rotation_about_i(theta) * b;

        // g: the base point stays, the direction turns by −θ.
        let before = pointer_of(&b);
        let after = pointer_of(&kb);
        assert!((before.base().x() - after.base().x()).abs() < GEOMETRIC);
        assert!((before.base().y() - after.base().y()).abs() < GEOMETRIC);
        assert!((angle_difference(after.angle(), before.angle()) + theta).abs() < GEOMETRIC);

        // h: the base point rotates by θ about i.
        let moved = lattice_pointer_of(&kb).base();
        let rotated = rotation_about_i(theta).apply(&lattice_pointer_of(&b).base());
        assert!((moved.x() - rotated.x()).abs() < GEOMETRIC);
        assert!((moved.y() - rotated.y()).abs() < GEOMETRIC);
    }

    #[test]
    fn flow_pointer_examples() {
        let p = Pointer::new(pt(0.2, 0.7), 2.3).unwrap();
        assert!(flow_pointer(&p, 0.0).approx_eq(&p, GEOMETRIC));
        let up = flow_pointer(&Pointer::reference(), 1.0);
        let expected = Pointer::new(pt(0.0, 1f64.exp()), FRAC_PI_2).unwrap();
        assert!(up.approx_eq(&expected, GEOMETRIC));
        let q = flow_pointer(&p, 0.9);
        assert!((p.base().distance(&q.base()) - 0.9).abs() < GEOMETRIC);
    }

    #[test]
    fn flow_pointer_matches_group_formula() {
        let b = MobiusTransform::new(1.2, -0.4, 0.5, 0.8).unwrap();
        let t = 0.65;
        let lhs = flow_pointer(&pointer_of(&b), t);
        let rhs = pointer_of(&(geodesic_flow_matrix(-t) * b));
        assert!(lhs.approx_eq(&rhs, GEOMETRIC));
    }

    #[test]
    fn axis_examples() {
        let g = axis(&geodesic_flow_matrix(1.0)).unwrap();
        assert_eq!(g.start(), BoundaryPoint::Finite(0.0));
        assert_eq!(g.end(), BoundaryPoint::Infinity);
        let back = axis(&geodesic_flow_matrix(-1.0)).unwrap();
        assert_eq!(back.start(), BoundaryPoint::Infinity);
        assert!(axis(&rotation_about_i(1.0)).is_err());
        assert!(axis(&horocycle_matrix(1.0, Horocycle::Plus)).is_err());
    }

    #[test]
    fn axis_is_equivariant() {
        let b = MobiusTransform::new(0.8, 1.7, -0.4, 0.6).unwrap();
        let conj = b * geodesic_flow_matrix(1.3) * b.inverse();
        let ax = axis(&conj).unwrap();
        assert!(ax.start().approx_eq(&b.apply_boundary(BoundaryPoint::Finite(0.0)), GEOMETRIC));
        assert!(ax.end().approx_eq(&b.apply_boundary(BoundaryPoint::Infinity), GEOMETRIC));
    }

    #[test]
    fn geodesic_of_reference_pointer_is_imaginary_axis() {
        let g = geodesic_of(&Pointer::reference());
        assert_eq!(g.start(), BoundaryPoint::Finite(0.0));
        assert_eq!(g.end(), BoundaryPoint::Infinity);
    }
}
