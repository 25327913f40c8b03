use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{dot, null_space, rank, rref};
use crate::sphere::{contact, lie_form_raw, lie_to_sphere, sphere_to_lie, LiePoint, OrientedSphere};

/// The plane section of the Lie quadric cut out by three linear conditions
/// `L(q, qᵢ) = 0`.
///
/// `constraints` is in RREF and serves as the canonical key; `basis` spans
/// its solution space and `form[j][k] = L(basis[j], basis[k])`.
#[derive(Clone)]
pub struct ConicSection {
    constraints: [[Scalar; 6]; 3],
    basis: [[Scalar; 6]; 3],
    form: [[Scalar; 3]; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConicKind {
    Irreducible,
    TwoLines,
    DoubleLine,
    /// The form vanishes identically. Not produced by admissible triples.
    WholePlane,
}

/// Result of scanning the projective plane of a conic over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicEnumeration {
    pub spheres: Vec<OrientedSphere>,
    pub at_infinity_count: usize,
}

/// Coefficients of `x ↦ L(x, q)`.
pub(crate) fn lie_gradient(q: &[Scalar; 6]) -> [Scalar; 6] {
    let [a, b, c, d, e, f] = *q;
    [-e, b.double(), c.double(), d.double(), -a, -f.double()]
}

impl ConicSection {
    /// Builds the section from three constraint rows of full rank.
    pub fn from_constraints(rows: [[Scalar; 6]; 3]) -> Result<Self> {
        let mut constraints = rows;
        let pivots = rref(&mut constraints);
        if pivots.len() < 3 {
            return Err(Error::DegenerateTriple);
        }
        let ns = null_space(&constraints, &pivots);
        let basis: [[Scalar; 6]; 3] = [ns[0], ns[1], ns[2]];
        let form = std::array::from_fn(|j| std::array::from_fn(|k| lie_form_raw(&basis[j], &basis[k])));
        Ok(ConicSection {
            constraints,
            basis,
            form,
        })
    }

    pub fn constraints(&self) -> &[[Scalar; 6]; 3] {
        &self.constraints
    }

    pub fn basis(&self) -> &[[Scalar; 6]; 3] {
        &self.basis
    }

    pub fn form(&self) -> &[[Scalar; 3]; 3] {
        &self.form
    }

    pub fn field(&self) -> FieldSpec {
        self.constraints[0][0].field()
    }

    /// Whether a 6-tuple satisfies the three linear conditions.
    pub fn satisfies_constraints(&self, q: &[Scalar; 6]) -> bool {
        self.constraints.iter().all(|row| dot(row, q).is_zero())
    }

    pub fn combination(&self, coeffs: [Scalar; 3]) -> [Scalar; 6] {
        std::array::from_fn(|k| {
            coeffs[0] * self.basis[0][k] + coeffs[1] * self.basis[1][k] + coeffs[2] * self.basis[2][k]
        })
    }

    pub fn form_value(&self, c: [Scalar; 3]) -> Scalar {
        let mut acc = self.field().zero();
        for j in 0..3 {
            for k in 0..3 {
                acc = acc + c[j] * c[k] * self.form[j][k];
            }
        }
        acc
    }

    /// The complementary section: the conditions are orthogonality to this
    /// section's solution space.
    pub fn dual(&self) -> ConicSection {
        ConicSection::from_constraints(self.basis.map(|b| lie_gradient(&b)))
            .expect("L is nondegenerate, so the gradients stay independent")
    }
}

impl PartialEq for ConicSection {
    fn eq(&self, other: &Self) -> bool {
        self.constraints == other.constraints
    }
}

impl Eq for ConicSection {}

impl Hash for ConicSection {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.constraints.hash(state);
    }
}

impl PartialOrd for ConicSection {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ConicSection {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.constraints.cmp(&other.constraints)
    }
}

impl fmt::Debug for ConicSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConicSection")
            .field("constraints", &self.constraints)
            .finish()
    }
}

/// Spheres in contact with each of three pairwise non-contacting spheres.
pub fn common_contact_conic(
    s1: &OrientedSphere,
    s2: &OrientedSphere,
    s3: &OrientedSphere,
) -> Result<ConicSection> {
    for (a, b) in [(s1, s2), (s1, s3), (s2, s3)] {
        if contact(a, b)? {
            return Err(Error::PairInContact);
        }
    }
    let rows = [s1, s2, s3].map(|s| lie_gradient(&sphere_to_lie(s).coords()));
    ConicSection::from_constraints(rows)
}

pub fn conic_membership(c: &ConicSection, s: &OrientedSphere) -> bool {
    s.field() == c.field() && c.satisfies_constraints(&sphere_to_lie(s).coords())
}

/// Scans the `p² + p + 1` points of the projective plane spanned by the basis.
pub fn conic_enumerate(c: &ConicSection) -> Result<ConicEnumeration> {
    let f = c.field();
    let elems: Vec<Scalar> = f.elements()?.collect();
    let (zero, one) = (f.zero(), f.one());
    let mut points = Vec::with_capacity(elems.len() * elems.len() + elems.len() + 1);
    for &b in &elems {
        for &g in &elems {
            points.push([one, b, g]);
        }
    }
    for &g in &elems {
        points.push([zero, one, g]);
    }
    points.push([zero, zero, one]);

    let mut spheres = Vec::new();
    let mut at_infinity_count = 0;
    for coeffs in points {
        if !c.form_value(coeffs).is_zero() {
            continue;
        }
        let q = c.combination(coeffs);
        if q[0].is_zero() {
            at_infinity_count += 1;
        } else {
            let lp = LiePoint::new(q)?;
            spheres.push(lie_to_sphere(&lp)?);
        }
    }
    spheres.sort();
    Ok(ConicEnumeration {
        spheres,
        at_infinity_count,
    })
}

pub fn classify_form(form: &[[Scalar; 3]; 3]) -> ConicKind {
    match rank(form) {
        3 => ConicKind::Irreducible,
        2 => ConicKind::TwoLines,
        1 => ConicKind::DoubleLine,
        _ => ConicKind::WholePlane,
    }
}

pub fn conic_classify(c: &ConicSection) -> ConicKind {
    classify_form(&c.form)
}

/// The section of spheres in contact with three members of `c`.
pub fn complementary_of(c: &ConicSection, members: &[OrientedSphere; 3]) -> Result<ConicSection> {
    if members.iter().any(|m| !conic_membership(c, m)) {
        return Err(Error::NotOnConic);
    }
    common_contact_conic(&members[0], &members[1], &members[2])
}
