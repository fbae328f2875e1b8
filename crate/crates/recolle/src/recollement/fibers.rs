//! The linear-extension structure on hom sets: Hom_A(B, B') fibers over
//! the pairs (induced map on Im η, induced map on i^!) and every nonempty
//! fiber is a torsor under Hom_{A'}(i^*(B/i_*i^!B), i^!B'), hence has
//! cardinality 2^dim of that hom space over GF(2).

use std::collections::BTreeMap;

use super::Recollement;
use crate::category::{cokernel, extend_through_epi, hom_basis, span_morphisms, Object};
use crate::error::{Error, Result};
use crate::report::Check;

/// Outcome for one pair (B, B'): the sizes observed and expected.
#[derive(Debug)]
pub struct FiberReport {
    pub hom_size: usize,
    pub fiber_count: usize,
    pub expected_fiber_size: usize,
    pub all_fibers_correct: bool,
}

pub fn linear_extension_fiber_check(
    rec: &Recollement,
    b: &Object,
    bprime: &Object,
) -> Result<FiberReport> {
    // Im η_B = B / i_*i^!B, with its canonical quotient map.
    let q_b = im_eta_projection(rec, b);
    let q_bp = im_eta_projection(rec, bprime);
    // The torsor group: Hom_{A'}(V, U') with V = i^*(B/i_*i^!B), U' = i^!B'.
    let v = rec.i_star.apply(&q_b.target());
    let uprime = rec.i_shriek.apply(bprime);
    let expected = 1usize << hom_basis(&v, &uprime).len();

    let basis = hom_basis(b, bprime);
    if basis.len() > 20 {
        return Err(Error::BudgetExceeded(format!(
            "hom space of dim {} too large to partition",
            basis.len()
        )));
    }
    let mut fibers: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for f in span_morphisms(b, bprime, &basis) {
        let induced_quotient = extend_through_epi(&q_b, &q_bp.compose(&f));
        let induced_shriek = rec.i_shriek.apply_mor(&f);
        let mut key = row_bits(&induced_quotient.coords());
        key.push(2);
        key.extend(row_bits(&induced_shriek.coords()));
        *fibers.entry(key).or_insert(0) += 1;
    }
    let all_fibers_correct = fibers.values().all(|&n| n == expected);
    Ok(FiberReport {
        hom_size: 1 << basis.len(),
        fiber_count: fibers.len(),
        expected_fiber_size: expected,
        all_fibers_correct,
    })
}

fn row_bits(m: &crate::gf2::BitMatrix) -> Vec<u8> {
    (0..m.cols()).map(|c| m.get(0, c) as u8).collect()
}

fn im_eta_projection(rec: &Recollement, b: &Object) -> crate::category::Morphism {
    let counit = rec.adj_i_shriek.counit.at(b); // i_*i^!B → B, mono
    let (_, q) = cokernel(&counit);
    q
}

/// Exhaustive fiber check over all pairs of enumerated objects.
pub fn fiber_suite(rec: &Recollement, cap_a: usize) -> Result<Check> {
    let a_objs = rec.a.enumerate_objects(cap_a)?;
    for b in &a_objs {
        for bprime in &a_objs {
            let r = linear_extension_fiber_check(rec, b, bprime)?;
            if !r.all_fibers_correct {
                return Ok(Check::fail(
                    "fiber_torsor_cardinality",
                    format!(
                        "fiber sizes differ from {} at dims {}/{}",
                        r.expected_fiber_size,
                        b.total_dim(),
                        bprime.total_dim()
                    ),
                ));
            }
            // Consistency: fibers partition the hom set.
            if r.fiber_count * r.expected_fiber_size != r.hom_size {
                return Ok(Check::fail(
                    "fiber_torsor_cardinality",
                    format!(
                        "{} fibers of size {} do not fill a hom set of size {}",
                        r.fiber_count, r.expected_fiber_size, r.hom_size
                    ),
                ));
            }
        }
    }
    Ok(Check::pass("fiber_torsor_cardinality"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{build_rec_2_1, build_rec_2_2, f2_trivial_involution, f2_vect};
    use crate::report::Status;

    #[test]
    fn singleton_fibers_on_i_sub_endomorphisms() {
        // B = B' = i_*U: V = 0, so the torsor group is trivial and the
        // induced map on i^! determines everything — one singleton fiber
        // per endomorphism of U.
        let rec = build_rec_2_1();
        let b = rec.i_sub.apply(&Object::Rep(f2_vect()));
        let r = linear_extension_fiber_check(&rec, &b, &b).unwrap();
        assert_eq!(r.expected_fiber_size, 1);
        assert_eq!(r.fiber_count, r.hom_size);
        assert!(r.all_fibers_correct);
    }

    #[test]
    fn singleton_fibers_when_target_kills_i_shriek() {
        // B' in Ker i^!: U' = 0 forces all fibers to be singletons.
        let rec = build_rec_2_1();
        let b = rec.i_sub.apply(&Object::Rep(f2_vect()));
        let bprime = rec.j_shriek_star(&Object::Rep(f2_trivial_involution()));
        assert!(rec.i_shriek.apply(&bprime).is_zero());
        let r = linear_extension_fiber_check(&rec, &b, &bprime).unwrap();
        assert_eq!(r.expected_fiber_size, 1);
        assert!(r.all_fibers_correct);
    }

    #[test]
    fn nontrivial_fiber_exists_somewhere() {
        // B = j_*X with X = (F2, T = id) has i^!B = 0 and i^*B = F2, so
        // V ≠ 0; B' = i_*F2 has U' ≠ 0, giving a 2-element torsor group.
        let rec = build_rec_2_1();
        let x = Object::Rep(f2_trivial_involution());
        let b = rec.j_sub.apply(&x);
        let bprime = rec.i_sub.apply(&Object::Rep(f2_vect()));
        let r = linear_extension_fiber_check(&rec, &b, &bprime).unwrap();
        assert!(r.expected_fiber_size > 1, "{r:?}");
        assert!(r.all_fibers_correct);
    }

    #[test]
    fn fiber_suite_passes_on_both_examples() {
        for rec in [build_rec_2_1(), build_rec_2_2()] {
            let c = fiber_suite(&rec, 2).unwrap();
            assert_eq!(c.status, Status::Pass, "{}: {c:?}", rec.name);
        }
    }
}
