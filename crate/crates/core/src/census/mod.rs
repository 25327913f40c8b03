//! Generators, counting censuses and the verification suites.

pub mod conics;
pub mod counts;
pub mod gen;
pub mod io;
pub mod parallel;
pub mod verify;

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::sphere::{OrientedSphere, Point3};

pub use conics::{conic_pair_census, ConicPairHit, EXHAUSTIVE_LIMIT};
pub use counts::{
    bichromatic_census, distance_distribution, eta_check, incidence_census, pencil_census,
    pencil_groups, repeated_distance_census, repeated_distance_via_contact, BichromaticReport,
    DistanceDistribution, EtaReport, IncidenceReport,
};
pub use verify::{verify, SuiteResult, VerifyConfig, VerifyReport};

/// A deduplicated list of spheres over one field. Insertion order of first
/// occurrences is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereSet {
    field: FieldSpec,
    spheres: Vec<OrientedSphere>,
    dedup_dropped: usize,
}

impl SphereSet {
    pub fn new(field: FieldSpec, spheres: impl IntoIterator<Item = OrientedSphere>) -> Result<Self> {
        let (spheres, dedup_dropped) = dedup(field, spheres, |s| s.field())?;
        Ok(SphereSet {
            field,
            spheres,
            dedup_dropped,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn spheres(&self) -> &[OrientedSphere] {
        &self.spheres
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn dedup_dropped(&self) -> usize {
        self.dedup_dropped
    }
}

/// A deduplicated list of points of `F³`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: FieldSpec,
    points: Vec<Point3>,
    dedup_dropped: usize,
}

impl PointSet {
    pub fn new(field: FieldSpec, points: impl IntoIterator<Item = Point3>) -> Result<Self> {
        let (points, dedup_dropped) = dedup(field, points, |p| {
            if p[1].field() != p[0].field() || p[2].field() != p[0].field() {
                None
            } else {
                Some(p[0].field())
            }
        })?;
        Ok(PointSet {
            field,
            points,
            dedup_dropped,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dedup_dropped(&self) -> usize {
        self.dedup_dropped
    }

    /// The radius-`r` spheres centered at the points.
    pub fn spheres(&self, r: crate::field::Scalar) -> Vec<OrientedSphere> {
        self.points
            .iter()
            .map(|c| OrientedSphere::centered(*c, r).expect("same field"))
            .collect()
    }
}


fn dedup<T: Copy + Eq + std::hash::Hash, F: Into<Option<FieldSpec>>>(
    field: FieldSpec,
    items: impl IntoIterator<Item = T>,
    field_of: impl Fn(&T) -> F,
) -> Result<(Vec<T>, usize)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut dropped = 0;
    for it in items {
        if field_of(&it).into() != Some(field) {
            return Err(Error::FieldMismatch);
        }
        if seen.insert(it) {
            out.push(it);
        } else {
            dropped += 1;
        }
    }
    Ok((out, dropped))
}

/// Result of a pencil census. Field order matches the JSON report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub field: String,
    pub contact_pairs: u64,
    pub histogram: BTreeMap<u64, u64>,
    pub warnings: Vec<String>,
    pub runtime_ms: u64,
}

impl CensusReport {
    /// `Σ_k C(k,2)·histogram[k]`.
    pub fn histogram_pair_total(&self) -> u64 {
        self.histogram.iter().map(|(&k, &c)| k * (k - 1) / 2 * c).sum()
    }

    /// Number of pencils with at least `k` members.
    pub fn at_least(&self, k: u64) -> u64 {
        self.histogram.range(k..).map(|(_, &c)| c).sum()
    }

    pub fn max_richness(&self) -> Option<u64> {
        self.histogram.keys().next_back().copied()
    }
}
