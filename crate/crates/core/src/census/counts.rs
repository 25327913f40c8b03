//! Pair-scan censuses.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};
use crate::line::{intersect, EPoint, HLine, Intersection};
use crate::sphere::{
    contact_unchecked, sphere_point_membership, sphere_to_lie, squared_distance, OrientedSphere, Point3,
};
use crate::structures::{pencil_from_pair, PencilKey};

use super::parallel::fold_rows;
use super::{CensusReport, PointSet, SphereSet};

/// Every pencil meeting the set in at least two spheres, with the sorted
/// indices of its members.
pub fn pencil_groups(set: &SphereSet, workers: usize) -> BTreeMap<PencilKey, Vec<usize>> {
    let s = set.spheres();
    let groups = fold_rows(
        s.len(),
        workers,
        HashMap::<PencilKey, Vec<usize>>::new,
        |acc, i| {
            for j in (i + 1)..s.len() {
                if contact_unchecked(&s[i], &s[j]) {
                    let key = pencil_from_pair(&s[i], &s[j]).expect("distinct contacting pair");
                    let e = acc.entry(key).or_default();
                    e.push(i);
                    e.push(j);
                }
            }
        },
        |mut a, b| {
            for (k, v) in b {
                a.entry(k).or_default().extend(v);
            }
            a
        },
    );
    groups
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_unstable();
            v.dedup();
            (k, v)
        })
        .collect()
}

pub fn pencil_census(set: &SphereSet, workers: usize) -> CensusReport {
    let start = Instant::now();
    let groups = pencil_groups(set, workers);
    let mut histogram = BTreeMap::new();
    let mut contact_pairs = 0u64;
    for members in groups.values() {
        let k = members.len() as u64;
        *histogram.entry(k).or_insert(0) += 1;
        contact_pairs += k * (k - 1) / 2;
    }
    let n = set.len();
    let mut warnings = Vec::new();
    if set.dedup_dropped() > 0 {
        warnings.push(format!("dropped {} duplicate spheres", set.dedup_dropped()));
    }
    if let FieldKind::Prime(p) = set.field().kind() {
        let sq = p as u64 * p as u64;
        if n as u64 > sq {
            warnings.push(format!(
                "n = {n} exceeds (char F)^2 = {sq}; the richness bound is not guaranteed"
            ));
        }
    }
    CensusReport {
        n,
        field: set.field().to_string(),
        contact_pairs,
        histogram,
        warnings,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

fn check_radius(set: &PointSet, r: Scalar) -> Result<()> {
    if r.field() != set.field() {
        return Err(Error::FieldMismatch);
    }
    if r.is_zero() {
        return Err(Error::ZeroRadius);
    }
    Ok(())
}

/// Unordered pairs of points at squared distance `r²`.
pub fn repeated_distance_census(points: &PointSet, r: Scalar, workers: usize) -> Result<u64> {
    check_radius(points, r)?;
    let target = r.square();
    let p = points.points();
    Ok(fold_rows(
        p.len(),
        workers,
        || 0u64,
        |acc, i| *acc += ((i + 1)..p.len()).filter(|&j| squared_distance(&p[i], &p[j]) == target).count() as u64,
        |a, b| a + b,
    ))
}

/// The same count from contacts between radius-`r` spheres and radius-0
/// spheres at the points. Each pair is seen once from either end.
pub fn repeated_distance_via_contact(points: &PointSet, r: Scalar, workers: usize) -> Result<u64> {
    check_radius(points, r)?;
    let big = points.spheres(r);
    let small = points.spheres(r.field().zero());
    let ordered = fold_rows(
        big.len(),
        workers,
        || 0u64,
        |acc, i| *acc += small.iter().filter(|t| contact_unchecked(&big[i], t)).count() as u64,
        |a, b| a + b,
    );
    debug_assert!(ordered % 2 == 0);
    Ok(ordered / 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDistribution {
    /// Squared distance → number of unordered pairs.
    pub classes: BTreeMap<Scalar, u64>,
    pub total_pairs: u64,
    /// The largest class among nonzero squares, keyed by its value `r²`.
    pub max_nonzero_square: Option<(Scalar, u64)>,
}

pub fn distance_distribution(points: &PointSet, workers: usize) -> DistanceDistribution {
    let p = points.points();
    let classes = fold_rows(
        p.len(),
        workers,
        BTreeMap::<Scalar, u64>::new,
        |acc, i| {
            for j in (i + 1)..p.len() {
                *acc.entry(squared_distance(&p[i], &p[j])).or_insert(0) += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    );
    let total_pairs = classes.values().sum();
    let mut max_nonzero_square: Option<(Scalar, u64)> = None;
    for (&d, &c) in &classes {
        if !d.is_zero() && d.is_square() && max_nonzero_square.is_none_or(|(_, m)| c > m) {
            max_nonzero_square = Some((d, c));
        }
    }
    DistanceDistribution {
        classes,
        total_pairs,
        max_nonzero_square,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncidenceReport {
    /// By substituting each point into the sphere equation.
    pub direct: u64,
    /// By contact between each sphere and the radius-0 sphere at each point.
    pub via_contact: u64,
}

impl IncidenceReport {
    pub fn agree(&self) -> bool {
        self.direct == self.via_contact
    }
}

pub fn incidence_census(points: &PointSet, spheres: &SphereSet, workers: usize) -> Result<IncidenceReport> {
    if points.field() != spheres.field() {
        return Err(Error::FieldMismatch);
    }
    let s = spheres.spheres();
    if s.iter().any(|x| x.r().is_zero()) {
        return Err(Error::ZeroRadiusSphere);
    }
    let lie: Vec<_> = s.iter().map(sphere_to_lie).collect();
    let pts = points.points();
    let direct = fold_rows(
        pts.len(),
        workers,
        || 0u64,
        |acc, i| *acc += lie.iter().filter(|q| sphere_point_membership(&pts[i], q)).count() as u64,
        |a, b| a + b,
    );
    let zero = points.spheres(points.field().zero());
    let via_contact = fold_rows(
        zero.len(),
        workers,
        || 0u64,
        |acc, i| *acc += s.iter().filter(|t| contact_unchecked(&zero[i], t)).count() as u64,
        |a, b| a + b,
    );
    Ok(IncidenceReport { direct, via_contact })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BichromaticReport {
    /// Distinct points lying on a red line and on a blue line.
    pub points: u64,
    /// Red/blue pairs that are the same line; their points are not counted.
    pub shared_lines: u64,
}

pub fn bichromatic_census(red: &[HLine], blue: &[HLine], workers: usize) -> BichromaticReport {
    let (pts, shared) = fold_rows(
        red.len(),
        workers,
        || (HashSet::<EPoint>::new(), 0u64),
        |acc, i| {
            for b in blue {
                match intersect(&red[i], b) {
                    Intersection::Point(w) => {
                        acc.0.insert(w);
                    }
                    Intersection::Identical => acc.1 += 1,
                    Intersection::Parallel | Intersection::Skew => {}
                }
            }
        },
        |mut a, b| {
            a.0.extend(b.0);
            (a.0, a.1 + b.1)
        },
    );
    BichromaticReport {
        points: pts.len() as u64,
        shared_lines: shared,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub incident: u64,
    pub max_coplanar: u64,
}

impl EtaReport {
    pub fn is_non_degenerate(&self, eta: f64) -> bool {
        self.max_coplanar as f64 <= eta * self.incident as f64
    }
}

fn sub(a: &Point3, b: &Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(u: &Point3, v: &Point3) -> Point3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

/// Points of `points` on `s`, and the most of them any single plane holds.
pub fn eta_check(s: &OrientedSphere, points: &PointSet) -> EtaReport {
    let q = sphere_to_lie(s);
    let on: Vec<Point3> = points
        .points()
        .iter()
        .filter(|p| p[0].field() == s.field() && sphere_point_membership(p, &q))
        .copied()
        .collect();
    let incident = on.len() as u64;
    let mut best: Option<u64> = None;
    for i in 0..on.len() {
        for j in (i + 1)..on.len() {
            let u = sub(&on[j], &on[i]);
            for k in (j + 1)..on.len() {
                let n = cross(&u, &sub(&on[k], &on[i]));
                if n.iter().all(Scalar::is_zero) {
                    continue;
                }
                let count = on
                    .iter()
                    .filter(|x| {
                        let d = sub(x, &on[i]);
                        (n[0] * d[0] + n[1] * d[1] + n[2] * d[2]).is_zero()
                    })
                    .count() as u64;
                best = Some(best.map_or(count, |b| b.max(count)));
            }
        }
    }
    // fewer than three points, or all collinear: one plane holds them all
    EtaReport {
        incident,
        max_coplanar: best.unwrap_or(incident),
    }
}
