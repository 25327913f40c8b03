//! Cross-module invariant suites. Failures are collected, not raised.

use rand::Rng;
use serde::Serialize;

use crate::bridge::{phi, sphere_to_hline};
use crate::field::{ExtScalar, FieldSpec, Scalar};
use crate::line::{coplanar, heisenberg_membership, klein_form, klein_form_raw, HLine};
use crate::sphere::{contact_unchecked, lie_form, lie_form_raw, sphere_to_lie, LiePoint, OrientedSphere, Point3};
use crate::structures::{
    common_contact_conic, complementary_of, conic_classify, conic_enumerate, enumerate_pencil,
    pencil_from_pair, ConicKind,
};

use super::gen::{admissible_triple, random_scalar, random_sphere, rng};
use super::parallel::fold_rows;

/// The sphere → line map under test. Replaceable so that a broken map can be
/// shown to fail the suites.
pub type HLineMap = fn(&OrientedSphere) -> HLine;

/// Integer range for random rational inputs.
const RATIONAL_RANGE: i64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// The first failing case, by case index.
    pub counterexample: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub field: FieldSpec,
    pub seed: u64,
    pub workers: usize,
    /// Multiplies every suite's case count; 1.0 is the full run.
    pub scale: f64,
    pub map: HLineMap,
}

impl VerifyConfig {
    pub fn new(field: FieldSpec, seed: u64) -> Self {
        VerifyConfig {
            field,
            seed,
            workers: 1,
            scale: 1.0,
            map: sphere_to_hline,
        }
    }

    fn cases(&self, full: usize) -> usize {
        ((full as f64 * self.scale).ceil() as usize).max(1)
    }
}

pub fn verify(cfg: &VerifyConfig) -> VerifyReport {
    let (f, seed, w) = (cfg.field, cfg.seed, cfg.workers);
    let suites = vec![
        bilinear_suite(f, seed, cfg.cases(100_000), w),
        four_way_suite(f, seed, cfg.cases(100_000), w, cfg.map),
        heisenberg_suite(f, seed, cfg.cases(10_000), 5, w, cfg.map),
        pencil_oracle_suite(seed, cfg.cases(100), w),
        conic_oracle_suite(seed, cfg.cases(20), w),
        two_solutions_suite(seed, cfg.cases(10_000), w),
        collinear_suite(seed, cfg.cases(1_000), w),
        no_lines_suite(seed, cfg.cases(50), w),
    ];
    VerifyReport {
        field: f.to_string(),
        seed,
        suites,
    }
}

fn run_cases<C: Sync>(
    name: &str,
    cases: &[C],
    workers: usize,
    check: impl Fn(&C) -> Result<(), String> + Sync,
) -> SuiteResult {
    let (failures, first) = fold_rows(
        cases.len(),
        workers,
        || (0u64, None::<(usize, String)>),
        |acc, i| {
            if let Err(msg) = check(&cases[i]) {
                acc.0 += 1;
                if acc.1.as_ref().is_none_or(|(j, _)| i < *j) {
                    acc.1 = Some((i, msg));
                }
            }
        },
        |a, b| {
            let first = match (a.1, b.1) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, y) => x.or(y),
            };
            (a.0 + b.0, first)
        },
    );
    SuiteResult {
        name: name.to_string(),
        cases: cases.len() as u64,
        failures,
        counterexample: first.map(|(i, m)| format!("case {i}: {m}")),
    }
}

fn range_for(f: FieldSpec) -> i64 {
    if f.is_prime() {
        0
    } else {
        RATIONAL_RANGE
    }
}

fn nonzero_tuple(f: FieldSpec, r: &mut impl Rng) -> LiePoint {
    loop {
        let c: [Scalar; 6] = std::array::from_fn(|_| random_scalar(f, r, range_for(f)));
        if let Ok(q) = LiePoint::new(c) {
            return q;
        }
    }
}

/// A nonzero `(u, v, w, s)` with `u² + v² + w² = s²`, from the standard
/// four-parameter family.
fn isotropic_direction(f: FieldSpec, r: &mut impl Rng) -> [Scalar; 4] {
    loop {
        let [m, n, p, q] = [0; 4].map(|_| random_scalar(f, r, 30));
        let s = m * m + n * n + p * p + q * q;
        let d = [
            m * m + n * n - p * p - q * q,
            (m * q + n * p).double(),
            (n * q - m * p).double(),
            s,
        ];
        if d.iter().any(|c| !c.is_zero()) {
            return d;
        }
    }
}

fn shifted(s: &OrientedSphere, dir: &[Scalar; 4], t: Scalar) -> OrientedSphere {
    let c = s.coords();
    OrientedSphere::from_coords(std::array::from_fn(|k| c[k] + t * dir[k])).expect("same field")
}

/// K(φ(q), φ(q′)) = L(q, q′) on random 6-tuples.
pub fn bilinear_suite(f: FieldSpec, seed: u64, cases: usize, workers: usize) -> SuiteResult {
    let mut r = rng(seed ^ 0x01);
    let pairs: Vec<_> = (0..cases).map(|_| (nonzero_tuple(f, &mut r), nonzero_tuple(f, &mut r))).collect();
    run_cases("bilinear identity", &pairs, workers, |(q, w)| {
        let k = klein_form_raw(&phi(q).coords(), &phi(w).coords());
        let l = lie_form_raw(&q.coords(), &w.coords());
        if k == ExtScalar::real(l) {
            Ok(())
        } else {
            Err(format!("{q:?}, {w:?}: K = {k}, L = {l}"))
        }
    })
}

/// The four contact tests agree. Half the pairs are built in contact.
pub fn four_way_suite(f: FieldSpec, seed: u64, cases: usize, workers: usize, map: HLineMap) -> SuiteResult {
    let mut r = rng(seed ^ 0x02);
    let range = range_for(f);
    let pairs: Vec<_> = (0..cases)
        .map(|i| {
            let s = random_sphere(f, &mut r, range);
            let t = if i % 2 == 0 {
                random_sphere(f, &mut r, range)
            } else {
                let d = isotropic_direction(f, &mut r);
                shifted(&s, &d, random_scalar(f, &mut r, 30))
            };
            (s, t)
        })
        .collect();
    run_cases("four-way contact agreement", &pairs, workers, |(s, t)| {
        let eq = contact_unchecked(s, t);
        let (qs, qt) = (sphere_to_lie(s), sphere_to_lie(t));
        let lie = lie_form(&qs, &qt).is_zero();
        let klein = klein_form(&phi(&qs), &phi(&qt)).is_zero();
        let cop = coplanar(&map(s), &map(t));
        if eq == lie && lie == klein && klein == cop {
            Ok(())
        } else {
            Err(format!("{s:?}, {t:?}: contact {eq}, L {lie}, K {klein}, coplanar {cop}"))
        }
    })
}

/// Points of the image lines lie on the Heisenberg variety.
pub fn heisenberg_suite(
    f: FieldSpec,
    seed: u64,
    spheres: usize,
    per_line: usize,
    workers: usize,
    map: HLineMap,
) -> SuiteResult {
    let mut r = rng(seed ^ 0x03);
    let range = range_for(f);
    let cases: Vec<_> = (0..spheres)
        .map(|_| {
            let s = random_sphere(f, &mut r, range);
            let ts: Vec<ExtScalar> = (0..per_line)
                .map(|_| {
                    ExtScalar::new(random_scalar(f, &mut r, 50), random_scalar(f, &mut r, 50)).expect("same field")
                })
                .collect();
            (s, ts)
        })
        .collect();
    run_cases("heisenberg containment", &cases, workers, |(s, ts)| {
        let l = map(s);
        match ts.iter().find(|t| !heisenberg_membership(&l.point_at(**t))) {
            None => Ok(()),
            Some(t) => Err(format!("{s:?} at parameter {t}")),
        }
    })
}

fn all_spheres(f: FieldSpec) -> Vec<OrientedSphere> {
    let e: Vec<_> = f.elements().expect("prime field").collect();
    let mut out = Vec::with_capacity(e.len().pow(4));
    for &x in &e {
        for &y in &e {
            for &z in &e {
                for &r in &e {
                    out.push(OrientedSphere::new(x, y, z, r).expect("same field"));
                }
            }
        }
    }
    out
}

fn all_points(f: FieldSpec) -> Vec<Point3> {
    let e: Vec<_> = f.elements().expect("prime field").collect();
    let mut out = Vec::with_capacity(e.len().pow(3));
    for &x in &e {
        for &y in &e {
            for &z in &e {
                out.push([x, y, z]);
            }
        }
    }
    out
}

/// Over `F_7`: the spheres in contact with both members of a contacting
/// pair are exactly its pencil.
pub fn pencil_oracle_suite(seed: u64, pairs: usize, workers: usize) -> SuiteResult {
    let f = FieldSpec::prime(7).expect("valid prime");
    let mut r = rng(seed ^ 0x04);
    let cases: Vec<_> = (0..pairs)
        .map(|_| {
            let s = random_sphere(f, &mut r, 0);
            let d = loop {
                let d: [Scalar; 4] = std::array::from_fn(|_| random_scalar(f, &mut r, 0));
                if d.iter().any(|c| !c.is_zero()) && d[0] * d[0] + d[1] * d[1] + d[2] * d[2] == d[3] * d[3] {
                    break d;
                }
            };
            let t = loop {
                let t = random_scalar(f, &mut r, 0);
                if !t.is_zero() {
                    break t;
                }
            };
            (s, shifted(&s, &d, t))
        })
        .collect();
    let universe = all_spheres(f);
    run_cases("pencil oracle over F_7", &cases, workers, |(s, t)| {
        let key = pencil_from_pair(s, t).map_err(|e| format!("{s:?}, {t:?}: {e}"))?;
        let pencil = enumerate_pencil(&key).map_err(|e| e.to_string())?;
        let brute: Vec<_> = universe
            .iter()
            .filter(|u| contact_unchecked(u, s) && contact_unchecked(u, t))
            .copied()
            .collect();
        if brute == pencil {
            Ok(())
        } else {
            Err(format!("{s:?}, {t:?}: {} common-contact spheres, pencil has {}", brute.len(), pencil.len()))
        }
    })
}

/// Over `F_11`: conic enumeration equals the triple-contact filter, and the
/// complementary conic is in full cross contact.
pub fn conic_oracle_suite(seed: u64, triples: usize, workers: usize) -> SuiteResult {
    let f = FieldSpec::prime(11).expect("valid prime");
    let mut r = rng(seed ^ 0x05);
    let mut cases: Vec<[OrientedSphere; 3]> = vec![[[0, 0, 0, 1], [4, 0, 0, 1], [0, 4, 0, 1]].map(|c| OrientedSphere::from_ints(f, c))];
    cases.extend((1..triples).map(|_| admissible_triple(f, &mut r, 0)));
    let universe = all_spheres(f);
    run_cases("conic oracle over F_11", &cases, workers, |t| {
        let ctx = || format!("{:?}, {:?}, {:?}", t[0], t[1], t[2]);
        let c = common_contact_conic(&t[0], &t[1], &t[2]).map_err(|e| format!("{}: {e}", ctx()))?;
        let en = conic_enumerate(&c).map_err(|e| e.to_string())?;
        let brute: Vec<_> = universe.iter().filter(|u| t.iter().all(|s| contact_unchecked(s, u))).copied().collect();
        if brute != en.spheres {
            return Err(format!("{}: enumeration {} vs filter {}", ctx(), en.spheres.len(), brute.len()));
        }
        if en.spheres.len() < 3 {
            return Err(format!("{}: only {} members", ctx(), en.spheres.len()));
        }
        let members = [en.spheres[0], en.spheres[1], en.spheres[2]];
        let comp = complementary_of(&c, &members).map_err(|e| format!("{}: {e}", ctx()))?;
        let en2 = conic_enumerate(&comp).map_err(|e| e.to_string())?;
        for a in &en.spheres {
            for b in &en2.spheres {
                if !contact_unchecked(a, b) {
                    return Err(format!("{}: cross pair {a:?}, {b:?} not in contact", ctx()));
                }
            }
        }
        for (conic, list) in [(&c, &en.spheres), (&comp, &en2.spheres)] {
            if conic_classify(conic) != ConicKind::Irreducible {
                continue;
            }
            for i in 0..list.len() {
                for j in (i + 1)..list.len() {
                    if contact_unchecked(&list[i], &list[j]) {
                        return Err(format!("{}: intra pair {:?}, {:?} in contact", ctx(), list[i], list[j]));
                    }
                }
            }
        }
        Ok(())
    })
}

fn sub(a: &Point3, b: &Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dist2(a: &Point3, b: &Point3) -> Scalar {
    let d = sub(a, b);
    d[0] * d[0] + d[1] * d[1] + d[2] * d[2]
}

fn collinear(a: &Point3, b: &Point3, c: &Point3) -> bool {
    let (u, v) = (sub(b, a), sub(c, a));
    (u[1] * v[2] - u[2] * v[1]).is_zero()
        && (u[2] * v[0] - u[0] * v[2]).is_zero()
        && (u[0] * v[1] - u[1] * v[0]).is_zero()
}

fn random_point(f: FieldSpec, r: &mut impl Rng) -> Point3 {
    std::array::from_fn(|_| random_scalar(f, r, 0))
}

/// Common solutions of the three sphere equations, per nonzero squared radius.
fn common_solutions(universe: &[Point3], t: &[Point3; 3]) -> std::collections::BTreeMap<Scalar, usize> {
    let mut out = std::collections::BTreeMap::new();
    for x in universe {
        let d = dist2(x, &t[0]);
        if !d.is_zero() && d == dist2(x, &t[1]) && d == dist2(x, &t[2]) {
            *out.entry(d).or_insert(0) += 1;
        }
    }
    out
}

/// Over `F_7`: three non-collinear points have at most two common
/// equidistant points at each squared radius `r² ≠ 0`.
pub fn two_solutions_suite(seed: u64, triples: usize, workers: usize) -> SuiteResult {
    let f = FieldSpec::prime(7).expect("valid prime");
    let mut r = rng(seed ^ 0x06);
    let cases: Vec<[Point3; 3]> = (0..triples)
        .map(|_| loop {
            let t = [0; 3].map(|_| random_point(f, &mut r));
            if !collinear(&t[0], &t[1], &t[2]) {
                break t;
            }
        })
        .collect();
    let universe = all_points(f);
    run_cases("at most two solutions over F_7", &cases, workers, |t| {
        match common_solutions(&universe, t).into_iter().find(|(d, c)| d.is_square() && *c > 2) {
            None => Ok(()),
            Some((d, c)) => Err(format!("{t:?}: {c} solutions at r^2 = {d}")),
        }
    })
}

/// Over `F_7`: three distinct collinear points have no common solution for
/// any `r ≠ 0`.
pub fn collinear_suite(seed: u64, triples: usize, workers: usize) -> SuiteResult {
    let f = FieldSpec::prime(7).expect("valid prime");
    let mut r = rng(seed ^ 0x07);
    let cases: Vec<[Point3; 3]> = (0..triples)
        .map(|_| loop {
            let a = random_point(f, &mut r);
            let d = random_point(f, &mut r);
            let (s, t) = (random_scalar(f, &mut r, 0), random_scalar(f, &mut r, 0));
            if d.iter().all(Scalar::is_zero) || s.is_zero() || t.is_zero() || s == t {
                continue;
            }
            break [a, std::array::from_fn(|k| a[k] + s * d[k]), std::array::from_fn(|k| a[k] + t * d[k])];
        })
        .collect();
    let universe = all_points(f);
    run_cases("collinear triples over F_7", &cases, workers, |t| {
        match common_solutions(&universe, t).into_iter().find(|(d, _)| d.is_square()) {
            None => Ok(()),
            Some((d, c)) => Err(format!("{t:?}: {c} solutions at r^2 = {d}")),
        }
    })
}

/// Over `F_7`: no line meets a sphere of nonzero radius in three points.
pub fn no_lines_suite(seed: u64, spheres: usize, workers: usize) -> SuiteResult {
    let f = FieldSpec::prime(7).expect("valid prime");
    let mut r = rng(seed ^ 0x08);
    let cases: Vec<(Point3, Scalar)> = (0..spheres)
        .map(|_| {
            let c = random_point(f, &mut r);
            let rad = loop {
                let x = random_scalar(f, &mut r, 0);
                if !x.is_zero() {
                    break x;
                }
            };
            (c, rad)
        })
        .collect();
    let universe = all_points(f);
    let elems: Vec<Scalar> = f.elements().expect("prime field").collect();
    run_cases("spheres contain no lines over F_7", &cases, workers, |(c, rad)| {
        let r2 = rad.square();
        let on: Vec<&Point3> = universe.iter().filter(|x| dist2(x, c) == r2).collect();
        for i in 0..on.len() {
            for j in (i + 1)..on.len() {
                let d = sub(on[j], on[i]);
                let hits = elems
                    .iter()
                    .filter(|&&t| {
                        let x: Point3 = std::array::from_fn(|k| on[i][k] + t * d[k]);
                        dist2(&x, c) == r2
                    })
                    .count();
                if hits > 2 {
                    return Err(format!("center {c:?}, r = {rad}: line through {:?}, {:?}", on[i], on[j]));
                }
            }
        }
        Ok(())
    })
}
