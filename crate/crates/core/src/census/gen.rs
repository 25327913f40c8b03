//! Generators for sphere and point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldKind, FieldSpec, Scalar};
use crate::sphere::{contact_unchecked, OrientedSphere};
use crate::structures::{common_contact_conic, conic_enumerate, ConicSection};

use super::{PointSet, SphereSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform scalar: any residue over `F_p`, an integer in `[-range, range]`
/// over `Q`.
pub fn random_scalar(f: FieldSpec, rng: &mut impl Rng, range: i64) -> Scalar {
    match f.kind() {
        FieldKind::Prime(p) => f.residue(rng.gen_range(0..p as u64)),
        FieldKind::Rational => f.int(rng.gen_range(-range..=range)),
    }
}

pub fn random_sphere(f: FieldSpec, rng: &mut impl Rng, range: i64) -> OrientedSphere {
    OrientedSphere::from_coords(std::array::from_fn(|_| random_scalar(f, rng, range))).expect("same field")
}

pub fn random(f: FieldSpec, n: usize, seed: u64, range: i64) -> Result<SphereSet> {
    if f.kind() == FieldKind::Rational && range < 1 {
        return Err(Error::InvalidParameter("range must be at least 1".into()));
    }
    let mut r = rng(seed);
    SphereSet::new(f, (0..n).map(|_| random_sphere(f, &mut r, range)).collect::<Vec<_>>())
}

pub fn random_points(f: FieldSpec, n: usize, seed: u64, range: i64) -> Result<PointSet> {
    if f.kind() == FieldKind::Rational && range < 1 {
        return Err(Error::InvalidParameter("range must be at least 1".into()));
    }
    let mut r = rng(seed);
    let pts: Vec<_> = (0..n)
        .map(|_| std::array::from_fn(|_| random_scalar(f, &mut r, range)))
        .collect();
    PointSet::new(f, pts)
}

/// All quadruples in `{1, ..., m}⁴`.
pub fn grid(f: FieldSpec, m: u32) -> Result<SphereSet> {
    if m < 2 {
        return Err(Error::InvalidParameter("grid side must be at least 2".into()));
    }
    if let FieldKind::Prime(p) = f.kind() {
        if p <= m {
            return Err(Error::InvalidParameter(format!("grid side {m} needs p > {m}")));
        }
    }
    let side: Vec<Scalar> = (1..=m as i64).map(|v| f.int(v)).collect();
    let mut out = Vec::with_capacity(side.len().pow(4));
    for &a in &side {
        for &b in &side {
            for &c in &side {
                for &d in &side {
                    out.push(OrientedSphere::new(a, b, c, d)?);
                }
            }
        }
    }
    SphereSet::new(f, out)
}

/// `{base + t·dir : t = 0, ..., k-1}` with `dir = (u, v, w, s)`,
/// `u² + v² + w² = s²` and `s ≠ 0`.
pub fn pencil(base: [Scalar; 4], dir: [Scalar; 4], k: usize) -> Result<SphereSet> {
    let f = base[0].field();
    if dir.iter().chain(base.iter()).any(|c| c.field() != f) {
        return Err(Error::FieldMismatch);
    }
    let [u, v, w, s] = dir;
    if s.is_zero() || u * u + v * v + w * w != s * s {
        return Err(Error::BadPencilDirection);
    }
    if let FieldKind::Prime(p) = f.kind() {
        if k > p as usize {
            return Err(Error::InvalidParameter(format!("a pencil over F_{p} has only {p} spheres")));
        }
    }
    let out: Vec<_> = (0..k as i64)
        .map(|t| {
            let t = f.int(t);
            OrientedSphere::from_coords(std::array::from_fn(|j| base[j] + t * dir[j])).expect("same field")
        })
        .collect();
    SphereSet::new(f, out)
}

/// A seeded pairwise non-contacting triple.
pub fn admissible_triple(f: FieldSpec, rng: &mut impl Rng, range: i64) -> [OrientedSphere; 3] {
    loop {
        let t = [0; 3].map(|_| random_sphere(f, rng, range));
        if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
            continue;
        }
        if !contact_unchecked(&t[0], &t[1]) && !contact_unchecked(&t[0], &t[2]) && !contact_unchecked(&t[1], &t[2])
        {
            return t;
        }
    }
}

/// The common-contact conic of a seeded admissible triple, its complement,
/// and the union of both enumerations.
pub fn conic_pair_parts(f: FieldSpec, seed: u64) -> Result<(ConicSection, ConicSection, SphereSet)> {
    if !f.is_prime() {
        return Err(Error::UnsupportedForRationals);
    }
    let mut r = rng(seed);
    let t = admissible_triple(f, &mut r, 0);
    let c = common_contact_conic(&t[0], &t[1], &t[2])?;
    let dual = c.dual();
    let mut all = conic_enumerate(&c)?.spheres;
    all.extend(conic_enumerate(&dual)?.spheres);
    Ok((c, dual, SphereSet::new(f, all)?))
}

pub fn conic_pair(f: FieldSpec, seed: u64) -> Result<SphereSet> {
    conic_pair_parts(f, seed).map(|(_, _, s)| s)
}

/// `F_p × F_p × {0}`.
pub fn plane_points(f: FieldSpec) -> Result<PointSet> {
    let elems: Vec<_> = f.elements()?.collect();
    let mut pts = Vec::with_capacity(elems.len() * elems.len());
    for &x in &elems {
        for &y in &elems {
            pts.push([x, y, f.zero()]);
        }
    }
    PointSet::new(f, pts)
}
