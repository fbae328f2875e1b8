//! End-to-end acceptance suite: one test per acceptance criterion, each an
//! exhaustive exact check over GF(2) at the stated dimension caps.

use std::process::Command;
use std::sync::Arc;

use recolle::category::{is_isomorphic, IsoCheck, Object};
use recolle::examples::{
    build_rec_2_1, build_rec_2_2, counterexample_witness, f2_trivial_involution, f2_vect,
    inclusion_functor,
};
use recolle::functor::{exactness_profile, Functor};
use recolle::recollement::axioms::verify_axioms;
use recolle::recollement::comparison::{comparison_check, mv_comparison_functor, semidirect_suite};
use recolle::recollement::fibers::fiber_suite;
use recolle::recollement::mt::mt_round_trip_suite;
use recolle::recollement::mv_construct::{
    gluing_data_from_quadratic, mv_audit, mv_construct, mv_recollement_quadratic, semidirect_data,
};
use recolle::recollement::prehereditary::prehereditary_check;
use recolle::recollement::sequences::check_sequences;
use recolle::recollement::vanishing::vanishing_suite;
use recolle::rep::{self, DEFAULT_ISO_BUDGET};
use recolle::report::Status;
use recolle::resolution::ext_group;
use recolle::{quiver, BoundQuiver};

fn assert_all_pass(checks: &[recolle::report::Check], label: &str) {
    for c in checks {
        assert_eq!(c.status, Status::Pass, "{label}: {c:?}");
    }
}

/// Criterion 1: both example recollements satisfy all five axioms
/// exhaustively at middle-category dims <= (2,2), side dims <= 3.
#[test]
fn criterion_01_axiom_suite() {
    for rec in [build_rec_2_1(), build_rec_2_2()] {
        let checks = verify_axioms(&rec, 2, 3).unwrap();
        assert_eq!(checks.len(), 5, "{}", rec.name);
        assert_all_pass(&checks, &rec.name);
    }
}

/// Criterion 2: the unit/counit/norm exact sequences, the snake corollary,
/// and the kernel/cokernel comparisons with first derived functors hold at
/// every joint for all enumerated inputs in both examples.
#[test]
fn criterion_02_exact_sequences() {
    for rec in [build_rec_2_1(), build_rec_2_2()] {
        let checks = check_sequences(&rec, 2, 2).unwrap();
        let ids: Vec<&str> = checks.iter().map(|c| c.id.as_str()).collect();
        for required in [
            "seq_epsilon",
            "seq_eta",
            "seq_norme",
            "seq_norm_jstar_identity",
            "seq_snake",
            "seq_kerepsilon",
            "seq_cokereta",
        ] {
            assert!(ids.contains(&required), "{}: missing {required}", rec.name);
        }
        assert_all_pass(&checks, &rec.name);
    }
}

/// Criterion 3: the vanishing identities for the structural compositions
/// and for higher derived functors up to degree 3, plus the dimensionwise
/// identity relating first derived values on intermediate extensions.
#[test]
fn criterion_03_vanishing() {
    for rec in [build_rec_2_1(), build_rec_2_2()] {
        let checks = vanishing_suite(&rec, 2, 3).unwrap();
        let ids: Vec<&str> = checks.iter().map(|c| c.id.as_str()).collect();
        assert!(ids.contains(&"van_intermediate_first_derived_dims"));
        assert_all_pass(&checks, &rec.name);
    }
}

/// Criterion 4: for every ordered pair of representations, the
/// resolution-based Ext^1 dimension d satisfies 2^d = number of Baer
/// equivalence classes of extensions found by exhaustive enumeration.
/// Total dim <= 4 over the loop-with-square-zero quiver, <= 3 over the
/// two-vertex quadratic quiver.
#[test]
fn criterion_04_ext_oracle() {
    let mut pairs = 0usize;
    for (q, cap) in [(quiver::sigma2(), 4usize), (quiver::quad_free(), 3)] {
        pairs += ext_matches_baer_everywhere(&q, cap);
    }
    assert!(pairs > 50, "suspiciously few pairs checked: {pairs}");
}

fn ext_matches_baer_everywhere(q: &Arc<BoundQuiver>, total_cap: usize) -> usize {
    let mut pairs = 0usize;
    for top_dims in rep::dim_vectors(q, total_cap) {
        for bot_dims in rep::dim_vectors(q, total_cap) {
            let total: usize = top_dims.iter().sum::<usize>() + bot_dims.iter().sum::<usize>();
            if total > total_cap {
                continue;
            }
            for top in rep::enumerate_reps(q, &top_dims).unwrap() {
                for bot in rep::enumerate_reps(q, &bot_dims).unwrap() {
                    let (dim, _) = ext_group(&top, &bot, 1).unwrap();
                    let classes = rep::baer_class_count(&top, &bot).unwrap();
                    assert_eq!(
                        1usize << dim,
                        classes,
                        "Ext^1 dim {dim} vs {classes} Baer classes at dims {top_dims:?}/{bot_dims:?}"
                    );
                    pairs += 1;
                }
            }
        }
    }
    pairs
}

/// Criterion 5: the kernel-category equivalences and their duals round-trip
/// up to isomorphism on every enumerated valid input.
#[test]
fn criterion_05_kernel_equivalence_round_trips() {
    for rec in [build_rec_2_1(), build_rec_2_2()] {
        let checks = mt_round_trip_suite(&rec, 2, 1).unwrap();
        assert_all_pass(&checks, &rec.name);
    }
}

/// Criterion 6: the explicit witness (F2^2, [1 0], F2, (0,1)^T) satisfies
/// the free quadratic relations, has PH != 0, and is isomorphic to no
/// object of the stricter category; the inclusion commutes with the six
/// structural functors but is not an equivalence at budget.
#[test]
fn criterion_06_counterexample() {
    let (w, cert) = counterexample_witness().unwrap();
    assert_eq!(w.dims, vec![2, 1]);
    assert!(cert.relations_ok);
    assert!(cert.ph_nonzero);
    assert!(cert.no_isomorph_in_subimage);

    let rec1 = build_rec_2_2();
    let rec2 = build_rec_2_1();
    let out = comparison_check(&inclusion_functor(), &rec1, &rec2, 2, "incl").unwrap();
    let commutes = out
        .checks
        .iter()
        .find(|c| c.id == "incl_commutes_with_structure")
        .unwrap();
    assert_eq!(commutes.status, Status::Pass, "{commutes:?}");
    assert_eq!(out.equivalence, Some(false));
}

/// Criterion 7: the two examples are not both pre-hereditary; the computed
/// second-derived dimensions on the embedded projectives are reported.
#[test]
fn criterion_07_prehereditary_disjunction() {
    let r1 = prehereditary_check(&build_rec_2_1()).unwrap();
    let r2 = prehereditary_check(&build_rec_2_2()).unwrap();
    println!("rec_2_1 pre-hereditary: {} (L2 dims {:?})", r1.verdict, r1.evidence);
    println!("rec_2_2 pre-hereditary: {} (L2 dims {:?})", r2.verdict, r2.evidence);
    assert!(
        !(r1.verdict && r2.verdict),
        "both examples claim to be pre-hereditary"
    );
    // The concrete verdicts: the free quadratic example is pre-hereditary,
    // the vector-space one is not (second syzygy of dimension 1).
    assert!(r1.verdict, "{:?}", r1.evidence);
    assert!(!r2.verdict);
    assert_eq!(r2.evidence, vec![(vec![1], 1)]);
}

/// Criterion 8: gluing the retraction data of the first example yields a
/// category passing the full axiom suite and the pre-hereditary check, and
/// the comparison functor into it is an equivalence at budget exactly when
/// the source is pre-hereditary.
#[test]
fn criterion_08_mv_soundness() {
    let rec1 = Arc::new(build_rec_2_1());
    let data = gluing_data_from_quadratic();
    let glued = mv_recollement_quadratic(1).unwrap();

    assert_all_pass(&verify_axioms(&glued, 1, 1).unwrap(), "glued axioms");
    assert_all_pass(&mv_audit(&glued, 1).unwrap(), "glued audit");
    let pre_glued = prehereditary_check(&glued).unwrap();
    assert!(pre_glued.verdict, "{:?}", pre_glued.evidence);

    let e = mv_comparison_functor(rec1.clone(), data);
    let out = comparison_check(&e, &rec1, &glued, 1, "mv").unwrap();
    assert_all_pass(&out.checks, "comparison");
    let pre_src = prehereditary_check(&rec1).unwrap();
    assert_eq!(out.equivalence, Some(pre_src.verdict));
}

/// Criterion 9: for all pairs (B, B') at dims <= (2,2) in the first
/// example, every nonempty fiber of the hom-set partition has cardinality
/// 2^(dim Hom_{A'}(V, U')).
#[test]
fn criterion_09_fiber_torsor() {
    let c = fiber_suite(&build_rec_2_1(), 2).unwrap();
    assert_eq!(c.status, Status::Pass, "{c:?}");
}

/// Criterion 10: on a constructed semidirect gluing, i^* j_* = 0 and i^!
/// is exact; on the first example, i^! j_! of the trivial-involution line
/// is one-dimensional (nonvanishing witness); a split product gluing has
/// an invertible norm everywhere.
#[test]
fn criterion_10_semidirect_suite() {
    let base = gluing_data_from_quadratic();
    let semi = mv_construct(
        semidirect_data("semi", base.aprime.clone(), base.adouble.clone(), base.f.clone()),
        1,
    )
    .unwrap();
    for x in semi.adouble.enumerate_objects(1).unwrap() {
        assert!(semi.i_star.apply(&semi.j_sub.apply(&x)).is_zero());
    }
    let profile = exactness_profile(&semi.i_shriek, 1).unwrap();
    assert!(profile.exact, "{profile:?}");
    assert_all_pass(&semidirect_suite(&semi, 1).unwrap(), "semidirect");

    let rec = build_rec_2_1();
    let witness = rec
        .i_shriek
        .apply(&rec.j_shriek.apply(&Object::Rep(f2_trivial_involution())));
    assert!(matches!(
        is_isomorphic(&witness, &Object::Rep(f2_vect()), DEFAULT_ISO_BUDGET),
        IsoCheck::Iso(_)
    ));

    let product = mv_construct(
        semidirect_data(
            "product",
            base.aprime.clone(),
            base.adouble.clone(),
            Functor::zero(
                recolle::category::Category::Rep(base.adouble.clone()),
                recolle::category::Category::Rep(base.aprime.clone()),
            ),
        ),
        1,
    )
    .unwrap();
    for x in product.adouble.enumerate_objects(1).unwrap() {
        assert!(product.norm(&x).is_isomorphism());
    }
    assert_all_pass(&semidirect_suite(&product, 1).unwrap(), "product");
}

/// Criterion 11: two CLI runs with identical configuration and seed
/// produce byte-identical JSON reports.
#[test]
fn criterion_11_deterministic_reports() {
    let run = |path: &std::path::Path| {
        let out = Command::new(env!("CARGO_BIN_EXE_recolle"))
            .args([
                "verify",
                "--example",
                "quad-free",
                "--seed",
                "62194",
                "--format",
                "json",
            ])
            .arg("--json")
            .arg(path)
            .output()
            .expect("spawn recolle");
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("run1.json");
    let p2 = dir.path().join("run2.json");
    let stdout1 = run(&p1);
    let stdout2 = run(&p2);
    assert_eq!(stdout1, stdout2, "stdout differs between runs");
    let f1 = std::fs::read(&p1).unwrap();
    let f2 = std::fs::read(&p2).unwrap();
    assert!(!f1.is_empty());
    assert_eq!(f1, f2, "JSON report files differ between runs");
}
