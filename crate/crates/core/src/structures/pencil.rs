use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::sphere::{contact, OrientedSphere};

/// Canonical key of a pencil of contacting spheres: the line
/// `{base + t·dir}` in `F⁴`.
///
/// `dir` is monic (first nonzero coordinate in `(x, y, z, r)` order is 1),
/// `base` is 0 at that pivot, and `δx² + δy² + δz² = δr²`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PencilKey {
    base: [Scalar; 4],
    dir: [Scalar; 4],
}

impl PencilKey {
    /// Canonicalizes any point and direction of the line.
    pub fn new(base: [Scalar; 4], dir: [Scalar; 4]) -> Result<Self> {
        let f = base[0].field();
        if base.iter().chain(dir.iter()).any(|c| c.field() != f) {
            return Err(Error::FieldMismatch);
        }
        let pivot = dir
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidPencilKey("direction is zero".into()))?;
        let inv = dir[pivot].inv()?;
        let dir = dir.map(|c| c * inv);
        let [dx, dy, dz, dr] = dir;
        if dx * dx + dy * dy + dz * dz != dr * dr {
            return Err(Error::InvalidPencilKey(
                "direction does not satisfy dx^2 + dy^2 + dz^2 = dr^2".into(),
            ));
        }
        let t = base[pivot];
        let base = std::array::from_fn(|k| base[k] - t * dir[k]);
        Ok(PencilKey { base, dir })
    }

    pub fn base(&self) -> [Scalar; 4] {
        self.base
    }

    pub fn dir(&self) -> [Scalar; 4] {
        self.dir
    }

    pub fn field(&self) -> FieldSpec {
        self.base[0].field()
    }

    fn pivot(&self) -> usize {
        self.dir.iter().position(|c| !c.is_zero()).expect("monic")
    }

    pub fn sphere_at(&self, t: Scalar) -> OrientedSphere {
        OrientedSphere::from_coords(std::array::from_fn(|k| self.base[k] + t * self.dir[k]))
            .expect("same field")
    }

    /// Whether the quadruple of `s` lies on the key's line.
    pub fn contains(&self, s: &OrientedSphere) -> bool {
        let c = s.coords();
        let t = c[self.pivot()];
        (0..4).all(|k| c[k] == self.base[k] + t * self.dir[k])
    }
}

impl fmt::Debug for PencilKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PencilKey(base {:?}, dir {:?})", self.base, self.dir)
    }
}

/// The pencil through two distinct contacting spheres.
pub fn pencil_from_pair(s: &OrientedSphere, t: &OrientedSphere) -> Result<PencilKey> {
    if s == t {
        return Err(Error::IdenticalSpheres);
    }
    if !contact(s, t)? {
        return Err(Error::NotInContact);
    }
    let (a, b) = (s.coords(), t.coords());
    PencilKey::new(a, std::array::from_fn(|k| b[k] - a[k]))
}

pub fn pencil_members(key: &PencilKey, spheres: &[OrientedSphere]) -> Vec<OrientedSphere> {
    spheres
        .iter()
        .filter(|s| s.field() == key.field() && key.contains(s))
        .copied()
        .collect()
}

/// All `p` spheres of the pencil over `F_p`, sorted.
pub fn enumerate_pencil(key: &PencilKey) -> Result<Vec<OrientedSphere>> {
    let mut out: Vec<_> = key.field().elements()?.map(|t| key.sphere_at(t)).collect();
    out.sort();
    Ok(out)
}
