use std::sync::Arc;

use drtoolkit::builders::{random_complex, Requirement};
use drtoolkit::certificate::{self, verify_json, Bounds};
use drtoolkit::complex::{barycentric_subdivision, Cycle, TwoComplex};
use drtoolkit::diagram::{fill_cycle, FillBounds};
use drtoolkit::dr::{brute_force_core_oracle, decide_dr, greedy_core, sphere_search, DrBounds, DrStatus};
use drtoolkit::homotopy::{collapsible, homology, replay_collapse, smith_normal_form, ChainData, IntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn any_complex() -> impl Strategy<Value = TwoComplex> {
    (any::<u64>(), 1usize..6, 1usize..5).prop_map(|(s, f, w)| random_complex(s, f, w, Requirement::Any))
}

fn dr_complex() -> impl Strategy<Value = TwoComplex> {
    (any::<u64>(), 1usize..6, 1usize..5).prop_map(|(s, f, w)| random_complex(s, f, w, Requirement::SimplyConnectedDr))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(x in any_complex()) {
        prop_assert_eq!(TwoComplex::from_text(&x.to_text()).unwrap(), x);
    }

    #[test]
    fn boundary_of_boundary_vanishes(x in any_complex()) {
        prop_assert!(ChainData::new(&x).boundaries_compose_to_zero());
    }

    #[test]
    fn euler_is_alternating_betti_sum(x in any_complex()) {
        prop_assert_eq!(homology(&x).euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn subdivision_keeps_homology(x in any_complex()) {
        let sd = barycentric_subdivision(&x);
        prop_assert!(sd.complex.is_valid());
        prop_assert_eq!(homology(&sd.complex), homology(&x));
    }

    #[test]
    fn greedy_core_matches_oracle(x in any_complex()) {
        let greedy = greedy_core(&x);
        prop_assert!(greedy.verify(&x).is_ok());
        prop_assert_eq!(greedy.is_collapsible(), brute_force_core_oracle(&x, 12).unwrap().is_none());
    }

    #[test]
    fn grown_complexes_are_dr_with_verified_certificates(x in dr_complex()) {
        let steps = collapsible(&x);
        prop_assert!(steps.is_some());
        let end = replay_collapse(&x, &steps.unwrap()).unwrap();
        prop_assert_eq!(end.num_vertices(), 1);
        let v = decide_dr(&x, &DrBounds::default());
        prop_assert_eq!(v.status, DrStatus::Dr);
        let c = certificate::emit_dr(&x, &v, Bounds::default()).unwrap();
        prop_assert!(verify_json(&c.to_json()).is_ok());
    }

    #[test]
    fn faces_fill_with_area_at_most_one(x in any_complex()) {
        let shared = Arc::new(x.clone());
        for (_, w) in x.faces() {
            let gamma = Cycle::from_letters(&x, w.letters().to_vec()).unwrap();
            let d = fill_cycle(&shared, &gamma, &FillBounds { max_area: 1, ..FillBounds::default() }).unwrap().unwrap();
            prop_assert!(d.area() <= 1);
            prop_assert!(d.boundary_cycle().is_ok());
        }
    }

    #[test]
    fn reduced_spheres_imply_not_dr(x in any_complex()) {
        if let Some(s) = sphere_search(&x, 2).sphere {
            prop_assert!(s.is_near_immersion());
            prop_assert_ne!(decide_dr(&x, &DrBounds::default()).status, DrStatus::Dr);
        }
    }

    #[test]
    fn smith_form_replays(rows in prop::collection::vec(prop::collection::vec(-6i64..7, 4), 1..5)) {
        let m = IntMatrix::from_rows(&rows);
        let s = smith_normal_form(&m);
        prop_assert!(s.verify(&m));
        prop_assert!(s.factors.iter().all(|d| *d > BigInt::from(0)));
    }

    #[test]
    fn homology_certificates_verify(x in any_complex()) {
        let c = certificate::emit_homology(&x, Bounds::default());
        prop_assert!(verify_json(&c.to_json()).is_ok());
    }
}
