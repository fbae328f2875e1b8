//! The triple categories M(T) for T = i^*j_* and T = i^!j_!, with the
//! equivalences Ker i^! ≃ M(i^*j_*) and Ker i* ≃ M(i^!j_!) and their
//! quasi-inverses, verified by round trips.

use super::Recollement;
use crate::category::{cokernel, is_isomorphic, kernel, IsoCheck, Object};
use crate::error::{Error, Result};
use crate::functor::{derived_left, Functor};
use crate::gf2::{kernel_basis, BitMatrix, LinearMap};
use crate::report::Check;
use crate::rep::{self, hom_space, morphism_to_coords, Rep, RepMorphism, iso_budget};

/// An object of M(T): a monomorphism α: V → T(X).
#[derive(Debug, Clone)]
pub struct MtObject {
    pub x: Rep,
    pub v: Rep,
    pub alpha: RepMorphism,
}

impl MtObject {
    pub fn new(x: Rep, v: Rep, alpha: RepMorphism) -> Result<MtObject> {
        if !alpha.is_mono() {
            return Err(Error::Precondition("M(T) structure map must be mono".into()));
        }
        Ok(MtObject { x, v, alpha })
    }
}

/// T = i^*j_* for the equivalence with Ker i^!.
pub fn t_functor(rec: &Recollement) -> Functor {
    rec.i_star.compose(&rec.j_sub)
}

/// T = i^!j_! for the dual equivalence with Ker i*.
pub fn t_functor_dual(rec: &Recollement) -> Functor {
    rec.i_shriek.compose(&rec.j_shriek)
}

/// A ↦ (j^*A, i^*A, i^*η_A) on Ker i^!.
pub fn to_mt(rec: &Recollement, a: &Object) -> Result<MtObject> {
    if !rec.i_shriek.apply(a).is_zero() {
        return Err(Error::Precondition("to_mt requires i^!A = 0".into()));
    }
    let x = rec.j_star.apply(a).as_rep().clone();
    let v = rec.i_star.apply(a).as_rep().clone();
    let eta = rec.adj_j_star.unit.at(a);
    let alpha = rec.i_star.apply_mor(&eta).as_rep().clone();
    debug_assert_eq!(v, alpha.source);
    MtObject::new(x, v, alpha)
}

/// (X, V, α) ↦ Ker(j_*X → i_*i^*j_*X → Coker i_*α).
pub fn from_mt(rec: &Recollement, o: &MtObject) -> Object {
    let x = Object::Rep(o.x.clone());
    let jx = rec.j_sub.apply(&x);
    let eps = rec.adj_i_star.unit.at(&jx); // j_*X → i_*i^*j_*X, epi
    let pushed_alpha = rec.i_sub.apply_mor(&crate::category::Morphism::Rep(o.alpha.clone()));
    let (_, q) = cokernel(&pushed_alpha);
    let (ker, _) = kernel(&q.compose(&eps));
    ker
}

/// A ↦ (j^*A, i^!Ker ε_A, i^! of the kernel inclusion) on Ker i*.
pub fn to_mt_dual(rec: &Recollement, a: &Object) -> Result<MtObject> {
    if !rec.i_star.apply(a).is_zero() {
        return Err(Error::Precondition("to_mt_dual requires i*A = 0".into()));
    }
    let x = rec.j_star.apply(a).as_rep().clone();
    let eps = rec.adj_j_shriek.counit.at(a); // j_!j^*A → A
    let (ker, incl) = kernel(&eps);
    let v = rec.i_shriek.apply(&ker).as_rep().clone();
    let alpha = rec.i_shriek.apply_mor(&incl).as_rep().clone();
    MtObject::new(x, v, alpha)
}

/// (X, V, α) ↦ Coker(i_*V → i_*i^!j_!X → j_!X).
pub fn from_mt_dual(rec: &Recollement, o: &MtObject) -> Object {
    let x = Object::Rep(o.x.clone());
    let jx = rec.j_shriek.apply(&x);
    let counit = rec.adj_i_shriek.counit.at(&jx); // i_*i^!j_!X → j_!X, mono
    let pushed_alpha = rec.i_sub.apply_mor(&crate::category::Morphism::Rep(o.alpha.clone()));
    let (coker, _) = cokernel(&counit.compose(&pushed_alpha));
    coker
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleIso {
    Iso,
    NotIso,
    Undecided,
}

/// Isomorphism of triples: an invertible pair (f: X → X', φ: V → V')
/// with α'∘φ = T(f)∘α. The compatible pairs form a linear subspace of
/// Hom(X,X') ⊕ Hom(V,V'); scan it for an invertible pair.
pub fn mt_is_isomorphic(t: &Functor, o1: &MtObject, o2: &MtObject, budget: usize) -> TripleIso {
    if o1.x.dims != o2.x.dims || o1.v.dims != o2.v.dims {
        return TripleIso::NotIso;
    }
    let tx2 = t.apply_rep(&o2.x);
    let hx = hom_space(&o1.x, &o2.x);
    let hv = hom_space(&o1.v, &o2.v);
    let coord_dim = morphism_to_coords(&RepMorphism::zero(&o1.v, &tx2)).cols();
    let unknowns = hx.len() + hv.len();
    let mut cols = BitMatrix::zeros(coord_dim, unknowns);
    for (j, f) in hx.iter().enumerate() {
        let defect = t.apply_rep_mor(f).compose(&o1.alpha);
        let row = morphism_to_coords(&defect);
        for c in 0..coord_dim {
            if row.get(0, c) {
                cols.set(c, j, true);
            }
        }
    }
    for (j, phi) in hv.iter().enumerate() {
        let defect = o2.alpha.compose(phi);
        let row = morphism_to_coords(&defect);
        for c in 0..coord_dim {
            if row.get(0, c) {
                cols.set(c, hx.len() + j, true);
            }
        }
    }
    let sols = kernel_basis(&LinearMap::new(cols));
    if sols.dim() > budget {
        return TripleIso::Undecided;
    }
    for mask in 0u64..(1u64 << sols.dim()) {
        let mut f = RepMorphism::zero(&o1.x, &o2.x);
        let mut phi = RepMorphism::zero(&o1.v, &o2.v);
        for row in 0..sols.dim() {
            if mask >> row & 1 == 0 {
                continue;
            }
            for (j, b) in hx.iter().enumerate() {
                if sols.basis.get(row, j) {
                    f = f.add(b);
                }
            }
            for (j, b) in hv.iter().enumerate() {
                if sols.basis.get(row, hx.len() + j) {
                    phi = phi.add(b);
                }
            }
        }
        if f.is_isomorphism() && phi.is_isomorphism() {
            return TripleIso::Iso;
        }
    }
    TripleIso::NotIso
}

/// Enumerate M(T) objects with constituent dimensions at most the caps.
pub fn enumerate_mt(
    rec: &Recollement,
    t: &Functor,
    cap_x: usize,
    cap_v: usize,
) -> Result<Vec<MtObject>> {
    let xs = rec.adouble.enumerate_objects(cap_x)?;
    let vs = rec.aprime.enumerate_objects(cap_v)?;
    let mut out = Vec::new();
    for x in &xs {
        let tx = t.apply_rep(x.as_rep());
        for v in &vs {
            let basis = hom_space(v.as_rep(), &tx);
            for alpha in rep::span_elements(v.as_rep(), &tx, &basis) {
                if alpha.is_mono() {
                    out.push(MtObject {
                        x: x.as_rep().clone(),
                        v: v.as_rep().clone(),
                        alpha,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Round-trip verification of both equivalences at the given caps.
pub fn mt_round_trip_suite(rec: &Recollement, cap_a: usize, cap_sides: usize) -> Result<Vec<Check>> {
    let a_objs = rec.a.enumerate_objects(cap_a)?;
    let mut checks = Vec::new();

    for (id, dual) in [("mt_ker_i_shriek_equivalence", false), ("mt_ker_i_star_equivalence", true)] {
        let mut c = Check::pass(id);
        // A-side round trip on the kernel subcategory.
        for a in &a_objs {
            let killed = if dual {
                rec.i_star.apply(a).is_zero()
            } else {
                rec.i_shriek.apply(a).is_zero()
            };
            if !killed {
                continue;
            }
            let back = if dual {
                from_mt_dual(rec, &to_mt_dual(rec, a)?)
            } else {
                from_mt(rec, &to_mt(rec, a)?)
            };
            match is_isomorphic(a, &back, iso_budget()) {
                IsoCheck::Iso(_) => {}
                IsoCheck::NotIso => {
                    c = Check::fail(id, format!("A-side round trip fails at dim {}", a.total_dim()));
                }
                IsoCheck::Undecided => {
                    c = Check::undecided(id, format!("A-side round trip undecided at dim {}", a.total_dim()));
                }
            }
        }
        // Triple-side round trip.
        let t = if dual { t_functor_dual(rec) } else { t_functor(rec) };
        for o in enumerate_mt(rec, &t, cap_sides, cap_sides)? {
            let (a, back) = if dual {
                let a = from_mt_dual(rec, &o);
                (a.clone(), to_mt_dual(rec, &a)?)
            } else {
                let a = from_mt(rec, &o);
                (a.clone(), to_mt(rec, &a)?)
            };
            let _ = a;
            match mt_is_isomorphic(&t, &o, &back, iso_budget()) {
                TripleIso::Iso => {}
                TripleIso::NotIso => {
                    c = Check::fail(
                        id,
                        format!("triple round trip fails at dims {:?}/{:?}", o.x.dims, o.v.dims),
                    );
                }
                TripleIso::Undecided => {
                    c = Check::undecided(
                        id,
                        format!("triple round trip undecided at dims {:?}/{:?}", o.x.dims, o.v.dims),
                    );
                }
            }
        }
        checks.push(c);
    }

    // The dual V-component agrees with (L1 i*)A in dimension.
    let mut c = Check::pass("mt_dual_v_is_first_derived");
    for a in &a_objs {
        if !rec.i_star.apply(a).is_zero() {
            continue;
        }
        let o = to_mt_dual(rec, a)?;
        let l1 = derived_left(&rec.i_star, a, 1)?;
        if o.v.total_dim() != l1.total_dim() {
            c = Check::fail(
                "mt_dual_v_is_first_derived",
                format!("dim {} vs {}", o.v.total_dim(), l1.total_dim()),
            );
        }
    }
    checks.push(c);

    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{build_rec_2_1, build_rec_2_2, f2_trivial_involution};
    use crate::report::Status;

    #[test]
    fn intermediate_extension_maps_to_zero_v() {
        let rec = build_rec_2_1();
        let x = Object::Rep(f2_trivial_involution());
        let a = rec.j_shriek_star(&x);
        let o = to_mt(&rec, &a).unwrap();
        assert_eq!(o.v.total_dim(), 0);
        let back = from_mt(&rec, &o);
        assert!(matches!(
            is_isomorphic(&a, &back, iso_budget()),
            IsoCheck::Iso(_)
        ));
    }

    #[test]
    fn j_sub_maps_to_identity_alpha() {
        // A = j_*X gives the triple (X, i^*j_*X, id); from_mt kills the
        // zero composite and returns all of j_*X.
        let rec = build_rec_2_1();
        let x = Object::Rep(f2_trivial_involution());
        let a = rec.j_sub.apply(&x);
        let o = to_mt(&rec, &a).unwrap();
        assert!(o.alpha.is_isomorphism());
        let back = from_mt(&rec, &o);
        assert_eq!(back.total_dim(), a.total_dim());
    }

    #[test]
    fn round_trips_pass_on_both_examples() {
        for rec in [build_rec_2_1(), build_rec_2_2()] {
            for c in mt_round_trip_suite(&rec, 2, 1).unwrap() {
                assert_eq!(c.status, Status::Pass, "{}: {c:?}", rec.name);
            }
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        let rec = build_rec_2_1();
        // A = i_*F2 has i^!A ≠ 0 and i*A ≠ 0.
        let a = rec.i_sub.apply(&Object::Rep(crate::examples::f2_vect()));
        assert!(to_mt(&rec, &a).is_err());
        assert!(to_mt_dual(&rec, &a).is_err());
    }
}
