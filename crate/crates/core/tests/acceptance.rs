//! Acceptance suite: every criterion below is exact (zero tolerance) and
//! prints one pass/fail line. Run with `--nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use common::{demo_intervals, triangle_sets};
use pslat::cbo::close_by_one;
use pslat::descriptions::{interval_grid_lattice, IntervalVector};
use pslat::oracle::{run_property, PropertyBudget};
use pslat::projections::{
    aggregated_length_kernel, fixed_point, fixed_point_downward_closed, kernel_from_fixed_point,
    o_project, proj_leq, proj_meet, validate_kernel, KernelOperator, SetKernel, TableKernel,
};
use pslat::representation::{
    interordinal_context, minimal_representation_context, simpler_than, verify_representation,
    write_cxt, SimplerOutcome,
};
use pslat::{Elt, FiniteLattice, IntervalSpace};

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("ACCEPTANCE {name}: PASS"),
        Err(cause) => {
            println!("ACCEPTANCE {name}: FAIL");
            resume_unwind(cause);
        }
    }
}

fn ivp(pairs: &[(f64, f64)]) -> IntervalVector {
    IntervalVector::from_pairs(pairs).unwrap()
}

/// The interval demo produces exactly seven concepts with the expected
/// extents, and the two-object intents are the convex hulls of the rows.
#[test]
fn acceptance_1_interval_demo_lattice() {
    criterion("interval-demo-seven-concepts", || {
        let ps = demo_intervals();
        let cs = close_by_one(&ps).unwrap();
        assert_eq!(
            cs.extent_family(),
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![1, 2],
                vec![0, 1, 2],
            ]
        );
        let intent_of = |idx: &[usize]| {
            cs.concepts()
                .iter()
                .find(|c| c.extent.indices() == idx)
                .expect("extent present")
                .intent
                .clone()
        };
        assert_eq!(intent_of(&[0, 1]), ivp(&[(1.0, 2.0), (1.0, 2.0)]));
        assert_eq!(intent_of(&[1, 2]), ivp(&[(2.0, 3.0), (2.0, 2.0)]));
    });
}

const INTERORDINAL_GOLDEN: &str = "B\n\n3\n7\n\ng1\ng2\ng3\nm1>=3\nm1>=2\nm1<=1\nm1<=2\nm2>=2\nm2<=1\n<[1,3];[1,2]>\n..XX.XX\n.X.XX.X\nXX..X.X\n";

/// The interordinal builder reproduces the seven-attribute threshold
/// context byte for byte: two thresholds per value family plus the single
/// global pattern.
#[test]
fn acceptance_2_interordinal_context() {
    criterion("interordinal-context-bytes", || {
        let rep = interordinal_context(&demo_intervals()).unwrap();
        assert_eq!(write_cxt(&rep.context), INTERORDINAL_GOLDEN);
    });
}

const MINIMAL_GOLDEN: &str = "B\n\n3\n5\n\ng1\ng2\ng3\n<[1,1];[1,1]>\n<[3,3];[2,2]>\n<[1,2];[1,2]>\n<[2,3];[2,2]>\n<[1,3];[1,2]>\nX.X.X\n..XXX\n.X.XX\n";

/// The minimal builder yields the five-attribute context and the concept
/// bijection between the pattern lattice and the context lattice is a
/// size-7 bijection with d = join(B) and B = down-set(d) ∩ M.
#[test]
fn acceptance_3_minimal_context_bijection() {
    criterion("minimal-context-bijection", || {
        let ps = demo_intervals();
        let rep = minimal_representation_context(&ps).unwrap();
        assert_eq!(write_cxt(&rep.context), MINIMAL_GOLDEN);
        let report = verify_representation(&ps, &rep).unwrap();
        assert!(report.ok(), "failures: {:?}", report.failures);
        assert_eq!(report.pattern_concepts, 7);
        assert_eq!(report.context_concepts, 7);
    });
}

/// A valid kernel on the five-element kite lattice maps the meet of the
/// two arms below their fixed images: the projected meet differs from the
/// base meet, and the fixed point is not downward closed.
#[test]
fn acceptance_4_meet_collapse_kernel() {
    criterion("meet-collapse-kernel", || {
        let lat = FiniteLattice::from_meet_fn(
            ["bot", "z", "x", "y", "top"].map(String::from).to_vec(),
            |a, b| {
                // order: bot < z < x, y < top
                let leq = |p: usize, q: usize| {
                    p == q || p == 0 || q == 4 || (p == 1 && (q == 2 || q == 3))
                };
                if leq(a, b) {
                    a
                } else if leq(b, a) {
                    b
                } else {
                    1 // meet of the incomparable arms x and y is z
                }
            },
        )
        .unwrap();
        let fixed: Vec<Elt> = ["bot", "x", "y", "top"]
            .iter()
            .map(|n| lat.elt(n).unwrap())
            .collect();
        let k = kernel_from_fixed_point(&lat, &fixed).unwrap();
        assert!(validate_kernel(&lat, &k).is_valid());
        let (x, y, z) = (
            lat.elt("x").unwrap(),
            lat.elt("y").unwrap(),
            lat.elt("z").unwrap(),
        );
        assert_eq!(k.map(z), lat.bottom());
        assert_eq!(k.map(lat.meet(x, y)), lat.bottom());
        assert_eq!(lat.meet(k.map(x), k.map(y)), z);
        assert!(!fixed_point_downward_closed(&k, &lat));
    });
}

/// The aggregated-length kernel at threshold 2 keeps point descriptions,
/// collapses the two-unit hull to the unbounded bottom, and leaves the
/// demo delta unchanged.
#[test]
fn acceptance_5_aggregated_length_kernel() {
    criterion("aggregated-length-kernel", || {
        let space = IntervalSpace::with_arity(2);
        let k = aggregated_length_kernel(2.0);
        let point = ivp(&[(1.0, 1.0), (1.0, 1.0)]);
        assert_eq!(k.apply(&space, &point), point);
        assert_eq!(
            k.apply(&space, &ivp(&[(1.0, 2.0), (1.0, 2.0)])),
            ivp(&[
                (f64::NEG_INFINITY, f64::INFINITY),
                (f64::NEG_INFINITY, f64::INFINITY)
            ])
        );
        let ps = demo_intervals();
        let projected = o_project(&ps, k);
        for g in 0..ps.len() {
            assert_eq!(projected.delta(g), ps.delta(g), "delta must be unchanged");
        }
    });
}

/// Threshold kernels on the discretised demo grid form a chain in the
/// projection order, and the projection meet of any two is the smaller.
#[test]
fn acceptance_6_threshold_chain() {
    criterion("threshold-kernel-chain", || {
        let space = IntervalSpace::with_arity(2);
        let (lat, vectors) = interval_grid_lattice(&space, &[vec![1.0, 2.0, 3.0], vec![1.0, 2.0]]);
        let table_kernel = |threshold: f64| {
            let map = vectors
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    if pslat::descriptions::aggregated_size(v) < threshold {
                        Elt(i)
                    } else {
                        lat.bottom()
                    }
                })
                .collect();
            TableKernel::new(map)
        };
        let (k2, k5, k10) = (table_kernel(2.0), table_kernel(5.0), table_kernel(10.0));
        for k in [&k2, &k5, &k10] {
            assert!(validate_kernel(&lat, k).is_valid());
        }
        assert!(proj_leq(&k2, &k5, &lat));
        assert!(proj_leq(&k5, &k10, &lat));
        assert!(proj_leq(&k2, &k10, &lat));
        for (a, b, smaller) in [(&k2, &k5, &k2), (&k2, &k10, &k2), (&k5, &k10, &k5)] {
            let m = proj_meet(a, b, &lat).unwrap();
            assert_eq!(fixed_point(&m, &lat), fixed_point(smaller, &lat));
        }
    });
}

/// Projecting the triangle structure through the drop-one-singleton
/// kernel grows the minimal representation context from three attributes
/// to four, and the projected context is simpler with a full witness.
#[test]
fn acceptance_7_representation_growth_and_simplicity() {
    criterion("representation-growth-and-simplicity", || {
        let ps = triangle_sets();
        let base = minimal_representation_context(&ps).unwrap().context;
        assert_eq!(base.attributes(), ["a", "b", "c"]);

        let kernel = SetKernel::dropping(3, &[ps.space().set_of(&["a"])]).unwrap();
        let projected = o_project(&ps, kernel);
        let proj = minimal_representation_context(&projected).unwrap().context;
        assert_eq!(proj.attributes(), ["ab", "ac", "b", "c"]);

        match simpler_than(&proj, &base).unwrap() {
            SimplerOutcome::Simpler(w) => {
                let lookup = |m: &str| {
                    w.map
                        .iter()
                        .find(|(a, _)| a == m)
                        .map(|(_, b)| b.clone())
                        .expect("attribute mapped")
                };
                assert_eq!(lookup("ab"), vec!["a", "b"]);
                assert_eq!(lookup("ac"), vec!["a", "c"]);
                assert_eq!(lookup("b"), vec!["b"]);
                assert_eq!(lookup("c"), vec!["c"]);
            }
            SimplerOutcome::NotSimpler { attribute } => {
                panic!("projected context must be simpler; failed at {attribute}")
            }
        }
        assert!(!simpler_than(&base, &proj).unwrap().is_simpler());
    });
}

/// The full property battery: all lattices with up to five elements with
/// all their kernels, plus 500 seeded random instances with at most eight
/// objects, with zero counterexamples across every registered law.
#[test]
fn acceptance_8_property_battery() {
    criterion("property-battery", || {
        let budget = PropertyBudget {
            max_lattice_size: 5,
            random_instances: 500,
            base_seed: 0,
        };
        for property in [
            "projected-meet-identity",
            "subsemilattice-image",
            "kernel-fixed-points",
            "extent-preservation",
            "implication-transfer",
            "rep-simpler",
            "simpler-context-realizable",
            "projection-meet-law",
            "projection-order-monotone",
            "cbo-oracle",
            "meet-collapse-witness",
        ] {
            let reports = run_property(property, &budget).unwrap();
            for r in &reports {
                assert!(r.pass, "counterexample: {}", r.to_json_line());
            }
        }
    });
}

/// Kernel enumeration agrees with the count of bottom-containing
/// pairwise-join-closed subsets on every enumerated lattice.
#[test]
fn acceptance_9_kernel_enumeration_agreement() {
    criterion("kernel-enumeration-agreement", || {
        let budget = PropertyBudget {
            max_lattice_size: 5,
            random_instances: 0,
            base_seed: 0,
        };
        let reports = run_property("kernel-enumeration-agreement", &budget).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.pass, "counterexample: {}", r.to_json_line());
        }
    });
}
