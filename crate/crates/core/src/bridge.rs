//! The linear map from the Lie quadric to the Klein quadric and the
//! resulting sphere ↔ Heisenberg-line correspondence.

use crate::error::{Error, Result};
use crate::field::{ExtScalar, Scalar};
use crate::line::{HLine, PlueckerPoint};
use crate::sphere::{LiePoint, OrientedSphere};

/// `[a : b : c : d : e : f] ↦ [a : d+f : −b+ic : −e : d−f : −b−ic]`.
///
/// Linear on representatives, so `K(φ(q), φ(q′)) = L(q, q′)` holds exactly
/// for the stored coordinates.
pub fn phi(q: &LiePoint) -> PlueckerPoint {
    let [a, b, c, d, e, f] = q.coords();
    let r = ExtScalar::real;
    let bc = |sign_im: Scalar| ExtScalar::new(-b, sign_im).expect("same field");
    PlueckerPoint::from_raw([r(a), r(d + f), bc(c), r(-e), r(d - f), bc(-c)])
}

pub fn phi_inverse(p: &PlueckerPoint) -> Result<LiePoint> {
    let [p01, p02, p03, p23, p31, p12] = p.coords();
    let sum = p03 + p12;
    let diff = p03 - p12;
    let i = p01.field().i();
    let diff_over_i = diff * (-i);
    // Each of these is real on the image; rescale by the first nonzero one
    // so that representatives differing by a non-real factor are accepted.
    let lead = [p01, p23, p02, p31, sum, diff_over_i]
        .into_iter()
        .find(|c| !c.is_zero())
        .ok_or(Error::NotInImage)?;
    let inv = lead.inv()?;
    let [p01, p02, p23, p31, sum, diff_over_i] =
        [p01, p02, p23, p31, sum, diff_over_i].map(|c| c * inv);
    if ![p01, p02, p23, p31, sum, diff_over_i]
        .iter()
        .all(ExtScalar::is_real)
    {
        return Err(Error::NotInImage);
    }
    let a = p01.re();
    let e = -p23.re();
    let d = (p02.re() + p31.re()).half();
    let f = (p02.re() - p31.re()).half();
    let b = -sum.re().half();
    let c = diff_over_i.re().half();
    LiePoint::new([a, b, c, d, e, f])
}

/// `(a, b, c, d) = (−z−r, −z+r, −x, −y)`.
pub fn sphere_to_hline(s: &OrientedSphere) -> HLine {
    let [x, y, z, r] = s.coords();
    HLine::from_params([-z - r, -z + r, -x, -y])
}

/// `(x, y, z, r) = (−c, −d, −(a+b)/2, (b−a)/2)`.
pub fn hline_to_sphere(l: &HLine) -> OrientedSphere {
    let [a, b, c, d] = l.params();
    OrientedSphere::from_coords([-c, -d, -(a + b).half(), (b - a).half()])
        .expect("line parameters share a field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::line::{
        coplanar, heisenberg_membership, hline_to_pluecker, klein_form, klein_form_raw,
        pluecker_to_hline,
    };
    use crate::sphere::{contact, lie_form, lie_form_raw, sphere_to_lie};
    use proptest::prelude::*;

    fn e(f: FieldSpec, re: i64, im: i64) -> ExtScalar {
        ExtScalar::new(f.int(re), f.int(im)).unwrap()
    }

    #[test]
    fn phi_examples() {
        let f = FieldSpec::rational();
        let q = LiePoint::from_ints(f, [1, -1, -2, -3, -11, 5]).unwrap();
        let p = phi(&q);
        let expected = [e(f, 1, 0), e(f, 2, 0), e(f, 1, -2), e(f, 11, 0), e(f, -8, 0), e(f, 1, 2)];
        assert_eq!(p.coords(), expected);
        assert!(p.satisfies_pluecker_relation());
        assert_eq!(phi_inverse(&p).unwrap().coords(), q.coords());

        let q2 = LiePoint::from_ints(f, [0, 0, 0, 0, 1, 0]).unwrap();
        let mut exp2 = [e(f, 0, 0); 6];
        exp2[3] = e(f, -1, 0);
        assert_eq!(phi(&q2).coords(), exp2);
    }

    #[test]
    fn phi_inverse_rejects_non_image() {
        let f = FieldSpec::rational();
        let mut c = [e(f, 0, 0); 6];
        c[0] = e(f, 1, 0);
        c[1] = e(f, 0, 1);
        assert_eq!(
            phi_inverse(&PlueckerPoint::new(c).unwrap()),
            Err(Error::NotInImage)
        );
    }

    #[test]
    fn phi_inverse_accepts_complex_rescaling() {
        let f = FieldSpec::prime(11).unwrap();
        let q = LiePoint::from_ints(f, [0, 3, 4, 1, 2, -1]).unwrap();
        let p = phi(&q).canonical();
        assert_eq!(phi_inverse(&p).unwrap(), q);
    }

    #[test]
    fn sphere_to_hline_examples() {
        let f = FieldSpec::rational();
        let s = |c| OrientedSphere::from_ints(f, c);
        assert_eq!(sphere_to_hline(&s([0, 0, 0, 1])), HLine::from_ints(f, [-1, 1, 0, 0]));
        assert_eq!(sphere_to_hline(&s([1, 2, 3, 5])), HLine::from_ints(f, [-8, 2, -1, -2]));
        assert_eq!(sphere_to_hline(&s([0, 0, 0, 0])), HLine::from_ints(f, [0, 0, 0, 0]));
        // the composite route
        let via = pluecker_to_hline(&phi(&sphere_to_lie(&s([1, 2, 3, 5])))).unwrap();
        assert_eq!(via, HLine::from_ints(f, [-8, 2, -1, -2]));
        assert_eq!(hline_to_sphere(&HLine::from_ints(f, [-1, 1, 0, 0])), s([0, 0, 0, 1]));
        assert_eq!(hline_to_sphere(&HLine::from_ints(f, [0, 0, 0, 0])), s([0, 0, 0, 0]));
    }

    #[test]
    fn tangent_spheres_give_coplanar_lines() {
        let f = FieldSpec::rational();
        let a = OrientedSphere::from_ints(f, [0, 0, 0, 1]);
        let b = OrientedSphere::from_ints(f, [0, 0, 2, -1]);
        let c = OrientedSphere::from_ints(f, [0, 0, 0, 2]);
        let k = |s: &OrientedSphere, t: &OrientedSphere| {
            klein_form(&hline_to_pluecker(&sphere_to_hline(s)), &hline_to_pluecker(&sphere_to_hline(t)))
        };
        assert!(k(&a, &b).is_zero());
        assert!(!k(&a, &c).is_zero());
    }

    fn field_strategy() -> impl Strategy<Value = FieldSpec> {
        prop_oneof![
            Just(FieldSpec::prime(7).unwrap()),
            Just(FieldSpec::prime(10007).unwrap()),
            Just(FieldSpec::rational()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(3000))]

        #[test]
        fn bilinear_identity(f in field_strategy(), u in prop::array::uniform6(-30i64..30), v in prop::array::uniform6(-30i64..30)) {
            prop_assume!(u.iter().any(|&x| x != 0) && v.iter().any(|&x| x != 0));
            let (Ok(q), Ok(w)) = (LiePoint::from_ints(f, u), LiePoint::from_ints(f, v)) else {
                return Ok(());
            };
            let k = klein_form_raw(&phi(&q).coords(), &phi(&w).coords());
            prop_assert_eq!(k, ExtScalar::real(lie_form_raw(&q.coords(), &w.coords())));
            prop_assert_eq!(phi_inverse(&phi(&q)).unwrap(), q);
        }

        #[test]
        fn four_way_agreement(f in field_strategy(), s in prop::array::uniform4(-6i64..6), t in prop::array::uniform4(-6i64..6)) {
            let (s, t) = (OrientedSphere::from_ints(f, s), OrientedSphere::from_ints(f, t));
            let c = contact(&s, &t).unwrap();
            let (qs, qt) = (sphere_to_lie(&s), sphere_to_lie(&t));
            prop_assert_eq!(c, lie_form(&qs, &qt).is_zero());
            prop_assert_eq!(c, klein_form(&phi(&qs), &phi(&qt)).is_zero());
            prop_assert_eq!(c, coplanar(&sphere_to_hline(&s), &sphere_to_hline(&t)));
        }

        #[test]
        fn correspondence_routes_agree(f in field_strategy(), s in prop::array::uniform4(-60i64..60), tr in -5i64..5, ti in -5i64..5) {
            let s = OrientedSphere::from_ints(f, s);
            let l = sphere_to_hline(&s);
            prop_assert_eq!(pluecker_to_hline(&phi(&sphere_to_lie(&s))).unwrap(), l);
            prop_assert_eq!(hline_to_sphere(&l), s);
            prop_assert!(heisenberg_membership(&l.point_at(e(f, tr, ti))));
            prop_assert!(phi(&sphere_to_lie(&s)).satisfies_pluecker_relation());
        }
    }
}
