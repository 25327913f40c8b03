//! Oriented spheres, their Lie-quadric coordinates and the contact relation.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A point of `F³`.
pub type Point3 = [Scalar; 3];

/// An oriented sphere `(x, y, z, r)`: center and signed radius. `r = 0`
/// encodes a point.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedSphere {
    coords: [Scalar; 4],
}

impl OrientedSphere {
    pub fn new(x: Scalar, y: Scalar, z: Scalar, r: Scalar) -> Result<Self> {
        Self::from_coords([x, y, z, r])
    }

    pub fn from_coords(coords: [Scalar; 4]) -> Result<Self> {
        let f = coords[0].field();
        if coords.iter().any(|c| c.field() != f) {
            return Err(Error::FieldMismatch);
        }
        Ok(OrientedSphere { coords })
    }

    pub fn from_ints(field: FieldSpec, c: [i64; 4]) -> Self {
        OrientedSphere {
            coords: c.map(|v| field.int(v)),
        }
    }

    /// The radius-`r` sphere about `center`.
    pub fn centered(center: Point3, r: Scalar) -> Result<Self> {
        Self::new(center[0], center[1], center[2], r)
    }

    #[inline]
    pub fn x(&self) -> Scalar {
        self.coords[0]
    }
    #[inline]
    pub fn y(&self) -> Scalar {
        self.coords[1]
    }
    #[inline]
    pub fn z(&self) -> Scalar {
        self.coords[2]
    }
    #[inline]
    pub fn r(&self) -> Scalar {
        self.coords[3]
    }

    #[inline]
    pub fn center(&self) -> Point3 {
        [self.coords[0], self.coords[1], self.coords[2]]
    }

    #[inline]
    pub fn coords(&self) -> [Scalar; 4] {
        self.coords
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }
}

impl fmt::Debug for OrientedSphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, r] = self.coords;
        write!(f, "({x}, {y}, {z}, {r})")
    }
}

/// `|p − q|²` for two points of `F³`.
#[inline]
pub fn squared_distance(p: &Point3, q: &Point3) -> Scalar {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    dx * dx + dy * dy + dz * dz
}

/// `(Δx)² + (Δy)² + (Δz)² = (Δr)²`. Every sphere is in contact with itself.
pub fn contact(s: &OrientedSphere, t: &OrientedSphere) -> Result<bool> {
    if s.field() != t.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(contact_unchecked(s, t))
}

/// [`contact`] for callers that already know both spheres share a field.
#[inline]
pub fn contact_unchecked(s: &OrientedSphere, t: &OrientedSphere) -> bool {
    let dr = s.r() - t.r();
    squared_distance(&s.center(), &t.center()) == dr * dr
}

/// A point `[a : b : c : d : e : f]` of `FP⁵`.
///
/// The stored representative is kept as constructed so that the bilinear
/// form can be evaluated on it; equality and hashing are projective.
#[derive(Clone, Copy)]
pub struct LiePoint {
    coords: [Scalar; 6],
}

pub(crate) fn projective_canonical<T, const N: usize>(
    coords: &[T; N],
    is_zero: impl Fn(&T) -> bool,
    scale_by_inverse: impl Fn(&T, &T) -> T,
) -> Option<[T; N]>
where
    T: Copy,
{
    let pivot = coords.iter().position(|c| !is_zero(c))?;
    let lead = coords[pivot];
    Some(coords.map(|c| scale_by_inverse(&c, &lead)))
}

impl LiePoint {
    pub fn new(coords: [Scalar; 6]) -> Result<Self> {
        let f = coords[0].field();
        if coords.iter().any(|c| c.field() != f) {
            return Err(Error::FieldMismatch);
        }
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidParameter("all Lie coordinates are zero".into()));
        }
        Ok(LiePoint { coords })
    }

    pub fn from_ints(field: FieldSpec, c: [i64; 6]) -> Result<Self> {
        Self::new(c.map(|v| field.int(v)))
    }

    pub fn coords(&self) -> [Scalar; 6] {
        self.coords
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }

    /// First nonzero coordinate scaled to 1.
    pub fn canonical(&self) -> LiePoint {
        let coords = projective_canonical(&self.coords, Scalar::is_zero, |c, lead| {
            c.try_div(*lead).expect("lead is nonzero")
        })
        .expect("Lie points are nonzero");
        LiePoint { coords }
    }

    pub fn a(&self) -> Scalar {
        self.coords[0]
    }
}

impl PartialEq for LiePoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical().coords == other.canonical().coords
    }
}

impl Eq for LiePoint {}

impl Hash for LiePoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().coords.hash(state);
    }
}

impl fmt::Debug for LiePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords;
        write!(f, "[{}:{}:{}:{}:{}:{}]", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

/// `[1 : −x : −y : −z : x²+y²+z²−r² : r]`.
pub fn sphere_to_lie(s: &OrientedSphere) -> LiePoint {
    let [x, y, z, r] = s.coords();
    let e = x * x + y * y + z * z - r * r;
    LiePoint {
        coords: [s.field().one(), -x, -y, -z, e, r],
    }
}

/// Center `(−b/a, −c/a, −d/a)`, signed radius `f/a`.
pub fn lie_to_sphere(q: &LiePoint) -> Result<OrientedSphere> {
    let [a, b, c, d, _, f] = q.coords;
    if a.is_zero() {
        return Err(Error::AtInfinity);
    }
    let inv = a.inv()?;
    Ok(OrientedSphere {
        coords: [-b * inv, -c * inv, -d * inv, f * inv],
    })
}

/// The symmetric bilinear form `2bb′ + 2cc′ + 2dd′ − ae′ − ea′ − 2ff′` on
/// the stored representatives.
pub fn lie_form(q: &LiePoint, q2: &LiePoint) -> Scalar {
    lie_form_raw(&q.coords, &q2.coords)
}

pub(crate) fn lie_form_raw(q: &[Scalar; 6], w: &[Scalar; 6]) -> Scalar {
    let [a, b, c, d, e, f] = *q;
    let [a2, b2, c2, d2, e2, f2] = *w;
    (b * b2 + c * c2 + d * d2 - f * f2).double() - a * e2 - e * a2
}

/// The Lie relation `L(q, q) = 0`.
pub fn on_lie_quadric(q: &LiePoint) -> bool {
    lie_form(q, q).is_zero()
}

/// `a(x²+y²+z²) + 2bx + 2cy + 2dz + e = 0`.
#[inline]
pub fn sphere_point_membership(p: &Point3, q: &LiePoint) -> bool {
    let [a, b, c, d, e, _] = q.coords;
    let [x, y, z] = *p;
    let lhs = a * (x * x + y * y + z * z) + (b * x + c * y + d * z).double() + e;
    lhs.is_zero()
}
