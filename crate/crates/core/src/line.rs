//! Lines of the Heisenberg variety in `E³`, their Plücker coordinates and
//! incidence tests.
//!
//! The variety is `H* = {(x, y, z) : im(z) = im(x̄·y)}` and the line with
//! parameters `(a, b, c, d) ∈ F⁴` is `(0, c+di, a) + E·(1, b, −c+di)`. This
//! is the convention under which the sphere images computed through the
//! Lie–Klein map are Heisenberg lines, so the coplanarity normal form is
//! `(Δc)² + (Δd)² + Δa·Δb = 0`.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{ExtScalar, FieldSpec, Scalar};
use crate::sphere::projective_canonical;

/// A point of `E³`.
pub type EPoint = [ExtScalar; 3];

/// A Heisenberg line not parallel to the xy plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HLine {
    params: [Scalar; 4],
}

impl HLine {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let f = a.field();
        if [b, c, d].iter().any(|s| s.field() != f) {
            return Err(Error::FieldMismatch);
        }
        Ok(HLine {
            params: [a, b, c, d],
        })
    }

    pub fn from_ints(field: FieldSpec, p: [i64; 4]) -> Self {
        HLine {
            params: p.map(|v| field.int(v)),
        }
    }

    pub(crate) fn from_params(params: [Scalar; 4]) -> Self {
        HLine { params }
    }

    pub fn a(&self) -> Scalar {
        self.params[0]
    }
    pub fn b(&self) -> Scalar {
        self.params[1]
    }
    pub fn c(&self) -> Scalar {
        self.params[2]
    }
    pub fn d(&self) -> Scalar {
        self.params[3]
    }

    pub fn params(&self) -> [Scalar; 4] {
        self.params
    }

    pub fn field(&self) -> FieldSpec {
        self.params[0].field()
    }

    /// `s = c + di`.
    fn s(&self) -> ExtScalar {
        ExtScalar::new(self.c(), self.d()).expect("same field")
    }

    /// `v = −c + di = −s̄`.
    fn v(&self) -> ExtScalar {
        -self.s().conj()
    }

    /// `(0, c+di, a)`.
    pub fn base(&self) -> EPoint {
        [
            ExtScalar::real(self.field().zero()),
            self.s(),
            ExtScalar::real(self.a()),
        ]
    }

    /// `(1, b, −c+di)`.
    pub fn direction(&self) -> EPoint {
        [ExtScalar::real(self.field().one()), ExtScalar::real(self.b()), self.v()]
    }

    pub fn point_at(&self, t: ExtScalar) -> EPoint {
        let base = self.base();
        let dir = self.direction();
        [0, 1, 2].map(|k| base[k] + dir[k] * t)
    }

    pub fn contains(&self, w: &EPoint) -> bool {
        // the x coordinate is the line parameter
        self.point_at(w[0]) == *w
    }
}

impl fmt::Debug for HLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.params;
        write!(f, "HLine({a}, {b}, {c}, {d})")
    }
}

/// A point `[p01 : p02 : p03 : p23 : p31 : p12]` of `EP⁵`. As with
/// [`crate::sphere::LiePoint`], the representative is stored verbatim and
/// equality is projective.
#[derive(Clone, Copy)]
pub struct PlueckerPoint {
    coords: [ExtScalar; 6],
}

impl PlueckerPoint {
    pub fn new(coords: [ExtScalar; 6]) -> Result<Self> {
        let f = coords[0].field();
        if coords.iter().any(|c| c.field() != f) {
            return Err(Error::FieldMismatch);
        }
        if coords.iter().all(ExtScalar::is_zero) {
            return Err(Error::InvalidParameter("all Pluecker coordinates are zero".into()));
        }
        Ok(PlueckerPoint { coords })
    }

    pub(crate) fn from_raw(coords: [ExtScalar; 6]) -> Self {
        PlueckerPoint { coords }
    }

    pub fn coords(&self) -> [ExtScalar; 6] {
        self.coords
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }

    pub fn canonical(&self) -> PlueckerPoint {
        let coords = projective_canonical(&self.coords, ExtScalar::is_zero, |c, lead| {
            c.try_div(*lead).expect("lead is nonzero")
        })
        .expect("Pluecker points are nonzero");
        PlueckerPoint { coords }
    }

    /// `p01·p23 + p02·p31 + p03·p12 = 0`.
    pub fn satisfies_pluecker_relation(&self) -> bool {
        klein_form(self, self).is_zero()
    }
}

impl PartialEq for PlueckerPoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical().coords == other.canonical().coords
    }
}

impl Eq for PlueckerPoint {}

impl Hash for PlueckerPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical().coords.hash(state);
    }
}

impl fmt::Debug for PlueckerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords;
        write!(f, "[{}:{}:{}:{}:{}:{}]", c[0], c[1], c[2], c[3], c[4], c[5])
    }
}

/// `[1 : u : v : sv − tu : t : −s]` for the line `(0, s, t) + E(1, u, v)`.
pub fn hline_to_pluecker(l: &HLine) -> PlueckerPoint {
    let one = ExtScalar::real(l.field().one());
    let s = l.s();
    let t = ExtScalar::real(l.a());
    let u = ExtScalar::real(l.b());
    let v = l.v();
    PlueckerPoint {
        coords: [one, u, v, s * v - t * u, t, -s],
    }
}

/// Inverse of [`hline_to_pluecker`] on its image.
pub fn pluecker_to_hline(p: &PlueckerPoint) -> Result<HLine> {
    let [p01, ..] = p.coords;
    if p01.is_zero() {
        return Err(Error::ParallelToXY);
    }
    let inv = p01.inv()?;
    let [_, u, v, w, t, minus_s] = p.coords.map(|c| c * inv);
    let s = -minus_s;
    if !u.is_real() || !t.is_real() || v != -s.conj() || w != s * v - t * u {
        return Err(Error::NotHeisenberg);
    }
    Ok(HLine::from_params([t.re(), u.re(), s.re(), s.im()]))
}

/// `p01p23′ + p23p01′ + p02p31′ + p31p02′ + p03p12′ + p12p03′` on the
/// stored representatives.
pub fn klein_form(p: &PlueckerPoint, q: &PlueckerPoint) -> ExtScalar {
    klein_form_raw(&p.coords, &q.coords)
}

pub(crate) fn klein_form_raw(p: &[ExtScalar; 6], q: &[ExtScalar; 6]) -> ExtScalar {
    p[0] * q[3] + p[3] * q[0] + p[1] * q[4] + p[4] * q[1] + p[2] * q[5] + p[5] * q[2]
}

/// Whether two Heisenberg lines intersect or are parallel.
pub fn coplanar(l: &HLine, m: &HLine) -> bool {
    let da = l.a() - m.a();
    let db = l.b() - m.b();
    let dc = l.c() - m.c();
    let dd = l.d() - m.d();
    (dc * dc + dd * dd + da * db).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Point(EPoint),
    Parallel,
    Skew,
    Identical,
}

pub fn intersect(l: &HLine, m: &HLine) -> Intersection {
    if l == m {
        return Intersection::Identical;
    }
    if l.b() == m.b() && l.c() == m.c() && l.d() == m.d() {
        return Intersection::Parallel;
    }
    // Equal x forces equal parameters t; the y and z rows then read
    // (b − b′)t = s′ − s and (v − v′)t = a′ − a.
    let db = ExtScalar::real(l.b() - m.b());
    let ds = m.s() - l.s();
    let dv = l.v() - m.v();
    let da = ExtScalar::real(m.a() - l.a());
    let t = if !db.is_zero() {
        ds.try_div(db).expect("nonzero")
    } else if ds.is_zero() && !dv.is_zero() {
        da.try_div(dv).expect("nonzero")
    } else {
        return Intersection::Skew;
    };
    if dv * t != da || db * t != ds {
        return Intersection::Skew;
    }
    Intersection::Point(l.point_at(t))
}

/// `im(z) = im(x̄·y)`.
pub fn heisenberg_membership(w: &EPoint) -> bool {
    let [x, y, z] = *w;
    z.im() == (x.conj() * y).im()
}

/// The lines through a point of `H*`, a line `V_w` in parameter space
/// indexed by `b ∈ F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointPencil {
    point: EPoint,
}

impl PointPencil {
    pub fn point(&self) -> EPoint {
        self.point
    }

    /// `c = re y₀ − b·re x₀`, `d = im y₀ − b·im x₀`,
    /// `a = re z₀ + c·re x₀ + d·im x₀`.
    pub fn member(&self, b: Scalar) -> HLine {
        let [x, y, z] = self.point;
        let c = y.re() - b * x.re();
        let d = y.im() - b * x.im();
        let a = z.re() + c * x.re() + d * x.im();
        HLine::from_params([a, b, c, d])
    }

    /// All `p` members over a prime field.
    pub fn members(&self) -> Result<Vec<HLine>> {
        Ok(self
            .point[0]
            .field()
            .elements()?
            .map(|b| self.member(b))
            .collect())
    }
}

pub fn lines_through_point(w: &EPoint) -> Result<PointPencil> {
    let f = w[0].field();
    if w.iter().any(|c| c.field() != f) {
        return Err(Error::FieldMismatch);
    }
    if !heisenberg_membership(w) {
        return Err(Error::NotInHeisenberg);
    }
    Ok(PointPencil { point: *w })
}

/// The plane `αx + βy + γz = δ` in `E³`.
#[derive(Clone, Copy)]
pub struct Plane {
    coeffs: [ExtScalar; 4],
}

impl Plane {
    pub fn new(alpha: ExtScalar, beta: ExtScalar, gamma: ExtScalar, delta: ExtScalar) -> Result<Self> {
        let coeffs = [alpha, beta, gamma, delta];
        let f = alpha.field();
        if coeffs.iter().any(|c| c.field() != f) {
            return Err(Error::FieldMismatch);
        }
        if coeffs[..3].iter().all(ExtScalar::is_zero) {
            return Err(Error::InvalidParameter("plane normal is zero".into()));
        }
        Ok(Plane { coeffs })
    }

    pub fn coeffs(&self) -> [ExtScalar; 4] {
        self.coeffs
    }

    fn normal_dot(&self, v: &EPoint) -> ExtScalar {
        self.coeffs[0] * v[0] + self.coeffs[1] * v[1] + self.coeffs[2] * v[2]
    }

    pub fn contains_point(&self, w: &EPoint) -> bool {
        self.normal_dot(w) == self.coeffs[3]
    }

    pub fn contains_line(&self, l: &HLine) -> bool {
        self.contains_point(&l.base()) && self.normal_dot(&l.direction()).is_zero()
    }

    fn canonical(&self) -> [ExtScalar; 4] {
        projective_canonical(&self.coeffs, ExtScalar::is_zero, |c, lead| {
            c.try_div(*lead).expect("lead is nonzero")
        })
        .expect("normal is nonzero")
    }
}

impl PartialEq for Plane {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for Plane {}

impl fmt::Debug for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coeffs;
        write!(f, "({a})x + ({b})y + ({c})z = {d}")
    }
}

/// `y − bx = c + di`, containing every line with parameters `(·, b, c, d)`.
pub fn direction_plane(b: Scalar, c: Scalar, d: Scalar) -> Result<Plane> {
    let f = b.field();
    Plane::new(
        ExtScalar::real(-b),
        ExtScalar::real(f.one()),
        ExtScalar::real(f.zero()),
        ExtScalar::new(c, d)?,
    )
}

/// `z = z₀ − ȳ₀(x − x₀) + x̄₀(y − y₀)`, containing every Heisenberg line
/// through `w`.
pub fn tangent_plane(w: &EPoint) -> Result<Plane> {
    if !heisenberg_membership(w) {
        return Err(Error::NotInHeisenberg);
    }
    let [x0, y0, z0] = *w;
    let one = ExtScalar::real(x0.field().one());
    Plane::new(
        y0.conj(),
        -x0.conj(),
        one,
        z0 + y0.conj() * x0 - x0.conj() * y0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(f: FieldSpec, re: i64, im: i64) -> ExtScalar {
        ExtScalar::new(f.int(re), f.int(im)).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn pluecker_examples() {
        let f = q();
        let l = HLine::from_ints(f, [-1, 1, 0, 0]);
        let p = hline_to_pluecker(&l);
        assert_eq!(
            p.coords(),
            [e(f, 1, 0), e(f, 1, 0), e(f, 0, 0), e(f, 1, 0), e(f, -1, 0), e(f, 0, 0)]
        );
        assert!(p.satisfies_pluecker_relation());
        assert_eq!(pluecker_to_hline(&p).unwrap(), l);

        let x_axis = hline_to_pluecker(&HLine::from_ints(f, [0; 4]));
        let mut expected = [e(f, 0, 0); 6];
        expected[0] = e(f, 1, 0);
        assert_eq!(x_axis.coords(), expected);
    }

    #[test]
    fn pluecker_inverse_errors() {
        let f = q();
        let mut c = [e(f, 0, 0); 6];
        c[1] = e(f, 1, 0);
        assert_eq!(
            pluecker_to_hline(&PlueckerPoint::new(c).unwrap()),
            Err(Error::ParallelToXY)
        );
        let mut c = [e(f, 0, 0); 6];
        c[0] = e(f, 1, 0);
        c[1] = e(f, 0, 1);
        assert_eq!(
            pluecker_to_hline(&PlueckerPoint::new(c).unwrap()),
            Err(Error::NotHeisenberg)
        );
    }

    #[test]
    fn pluecker_inverse_accepts_rescaled_points() {
        let f = FieldSpec::prime(11).unwrap();
        let l = HLine::from_ints(f, [3, 4, 5, 6]);
        let p = hline_to_pluecker(&l);
        let k = e(f, 2, 7);
        let scaled = PlueckerPoint::new(p.coords().map(|c| c * k)).unwrap();
        assert_eq!(scaled, p);
        assert_eq!(pluecker_to_hline(&scaled).unwrap(), l);
    }

    #[test]
    fn coplanar_examples() {
        let f = q();
        let l = |p| HLine::from_ints(f, p);
        assert!(coplanar(&l([-1, 1, 0, 0]), &l([-1, -3, 0, 0])));
        assert!(coplanar(&l([0, 0, 0, 0]), &l([1, 0, 0, 0])));
        assert!(!coplanar(&l([0, 1, 0, 0]), &l([1, 2, 1, 0])));
        assert!(coplanar(&l([4, 5, 6, 7]), &l([4, 5, 6, 7])));
    }

    #[test]
    fn intersect_examples() {
        let f = q();
        let l = |p| HLine::from_ints(f, p);
        assert_eq!(
            intersect(&l([-1, 1, 0, 0]), &l([-1, -3, 0, 0])),
            Intersection::Point([e(f, 0, 0), e(f, 0, 0), e(f, -1, 0)])
        );
        assert_eq!(intersect(&l([0, 0, 0, 0]), &l([1, 0, 0, 0])), Intersection::Parallel);
        assert_eq!(intersect(&l([0, 1, 0, 0]), &l([1, 2, 1, 0])), Intersection::Skew);
        assert_eq!(intersect(&l([2, 1, 0, 3]), &l([2, 1, 0, 3])), Intersection::Identical);
        assert_eq!(intersect(&l([0, 1, 1, 1]), &l([2, 1, 1, 1])), Intersection::Parallel);
        // equal b, different s: never coplanar
        assert_eq!(intersect(&l([0, 1, 1, 1]), &l([0, 1, 2, 1])), Intersection::Skew);
    }

    #[test]
    fn heisenberg_examples() {
        let f = q();
        assert!(heisenberg_membership(&[e(f, 1, 0), e(f, 2, 3), e(f, 7, 3)]));
        assert!(!heisenberg_membership(&[e(f, 0, 0), e(f, 0, 0), e(f, 0, 1)]));
    }

    #[test]
    fn point_pencil_examples() {
        let f = q();
        let origin = [e(f, 0, 0); 3];
        let v = lines_through_point(&origin).unwrap();
        for b in -3..3 {
            assert_eq!(v.member(f.int(b)), HLine::from_ints(f, [0, b, 0, 0]));
        }
        let w = [e(f, 1, 0), e(f, 2, 3), e(f, 7, 3)];
        let v = lines_through_point(&w).unwrap();
        let l = v.member(f.zero());
        assert_eq!(l, HLine::from_ints(f, [9, 0, 2, 3]));
        assert!(l.contains(&w));
        assert_eq!(
            lines_through_point(&[e(f, 0, 0), e(f, 0, 0), e(f, 0, 1)]),
            Err(Error::NotInHeisenberg)
        );
    }

    #[test]
    fn direction_plane_examples() {
        let f = q();
        let p0 = direction_plane(f.zero(), f.zero(), f.zero()).unwrap();
        assert_eq!(
            p0,
            Plane::new(e(f, 0, 0), e(f, 1, 0), e(f, 0, 0), e(f, 0, 0)).unwrap()
        );
        let p1 = direction_plane(f.one(), f.zero(), f.zero()).unwrap();
        assert!(p1.contains_line(&HLine::from_ints(f, [5, 1, 0, 0])));
        assert!(!p1.contains_line(&HLine::from_ints(f, [5, 2, 0, 0])));
    }

    #[test]
    fn tangent_plane_examples() {
        let f = q();
        let t0 = tangent_plane(&[e(f, 0, 0); 3]).unwrap();
        assert_eq!(
            t0,
            Plane::new(e(f, 0, 0), e(f, 0, 0), e(f, 1, 0), e(f, 0, 0)).unwrap()
        );
        let w = [e(f, 1, 0), e(f, 2, 3), e(f, 7, 3)];
        let t = tangent_plane(&w).unwrap();
        // z = (7+3i) − (2−3i)(x−1) + (y−(2+3i)): spot-check at x = 2, y = 0
        let x = e(f, 2, 0);
        let y = e(f, 0, 0);
        let z = w[2] - w[1].conj() * (x - w[0]) + w[0].conj() * (y - w[1]);
        assert!(t.contains_point(&[x, y, z]));
        let v = lines_through_point(&w).unwrap();
        for b in -4..4 {
            assert!(t.contains_line(&v.member(f.int(b))));
        }
        let w2 = [e(f, 0, 0), e(f, 0, 0), e(f, 5, 0)];
        assert_ne!(tangent_plane(&w2).unwrap(), t0);
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::prime(7).unwrap()),
            Just(FieldSpec::prime(10007).unwrap()),
            Just(FieldSpec::rational()),
        ]
    }

    fn heis_point(f: FieldSpec, x: (i64, i64), y: (i64, i64), zr: i64) -> EPoint {
        let xx = e(f, x.0, x.1);
        let yy = e(f, y.0, y.1);
        let zi = (xx.conj() * yy).im();
        [xx, yy, ExtScalar::new(f.int(zr), zi).unwrap()]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(3000))]

        #[test]
        fn coplanarity_three_ways(f in field_strategy(), p in prop::array::uniform4(-5i64..5), q in prop::array::uniform4(-5i64..5)) {
            let (l, m) = (HLine::from_ints(f, p), HLine::from_ints(f, q));
            let k = klein_form(&hline_to_pluecker(&l), &hline_to_pluecker(&m)).is_zero();
            let c = coplanar(&l, &m);
            let i = !matches!(intersect(&l, &m), Intersection::Skew);
            prop_assert_eq!(c, k);
            prop_assert_eq!(c, i);
            if let Intersection::Point(w) = intersect(&l, &m) {
                prop_assert!(l.contains(&w) && m.contains(&w));
                prop_assert!(heisenberg_membership(&w));
            }
        }

        #[test]
        fn pluecker_round_trip(f in field_strategy(), p in prop::array::uniform4(-50i64..50)) {
            let l = HLine::from_ints(f, p);
            let pp = hline_to_pluecker(&l);
            prop_assert!(pp.satisfies_pluecker_relation());
            prop_assert_eq!(pluecker_to_hline(&pp).unwrap(), l);
        }

        #[test]
        fn lines_on_variety(f in field_strategy(), p in prop::array::uniform4(-50i64..50), tr in -9i64..9, ti in -9i64..9) {
            let l = HLine::from_ints(f, p);
            prop_assert!(heisenberg_membership(&l.point_at(e(f, tr, ti))));
            prop_assert!(direction_plane(l.b(), l.c(), l.d()).unwrap().contains_line(&l));
        }

        #[test]
        fn point_pencils_are_concurrent(
            f in field_strategy(),
            x in (-9i64..9, -9i64..9), y in (-9i64..9, -9i64..9), zr in -9i64..9,
            bs in prop::array::uniform3(-20i64..20),
        ) {
            let w = heis_point(f, x, y, zr);
            let v = lines_through_point(&w).unwrap();
            let plane = tangent_plane(&w).unwrap();
            let lines: Vec<HLine> = bs.iter().map(|&b| v.member(f.int(b))).collect();
            for l in &lines {
                prop_assert!(l.contains(&w));
                prop_assert!(plane.contains_line(l));
                prop_assert!(heisenberg_membership(&l.point_at(e(f, 3, -2))));
            }
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if lines[i] != lines[j] {
                        prop_assert_eq!(intersect(&lines[i], &lines[j]), Intersection::Point(w));
                    }
                }
            }
        }
    }
}
