use std::sync::Arc;

use proptest::prelude::*;
use serde_json::json;

use maxcomm::algebra::{catalog, catalog_entry, CATALOG_IDS};
use maxcomm::centralizer::{commutant, end_algebra, hom_lift, matrix_span};
use maxcomm::io::{parse_rep_doc, rep_to_json};
use maxcomm::module::{feasible_filtrations, sample_module, SampleConfig};
use maxcomm::normal_form::{structured_end_solver, BlockConfiguration};
use maxcomm::{Field, Matrix, ModuleRep};

fn sampled(class: u32, field: Field, seed: u64) -> Option<ModuleRep> {
    let a = Arc::new(catalog_entry(class, field).unwrap().algebra);
    sample_module(a, 6, None, SampleConfig { seed, attempts: 50 }).into_rep()
}

#[test]
fn regular_modules_have_the_catalog_type() {
    for f in [Field::Rationals, Field::prime(101).unwrap()] {
        for (id, e) in catalog(f) {
            let rep = ModuleRep::regular(Arc::new(e.algebra));
            assert_eq!(rep.filtration().unwrap().0, e.hilbert_samuel, "class {id}");
            assert!(rep.is_faithful());
            // The regular module of a commutative algebra is its own commutant.
            assert_eq!(end_algebra(&rep).unwrap().dim(), 5, "class {id}");
        }
    }
}

#[test]
fn every_class_has_a_feasible_six_dimensional_shape() {
    for id in CATALOG_IDS {
        let a = catalog_entry(id, Field::Rationals).unwrap().algebra;
        assert!(!feasible_filtrations(&a, 6).is_empty(), "class {id}");
    }
}

fn class_strategy() -> impl Strategy<Value = u32> {
    prop::sample::select(CATALOG_IDS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampled_modules_are_faithful_with_exact_layers(class in class_strategy(), seed in any::<u64>()) {
        if let Some(rep) = sampled(class, Field::Rationals, seed) {
            prop_assert!(rep.validate());
            prop_assert!(rep.is_faithful());
            let f = rep.filtration().unwrap();
            prop_assert_eq!(f.total(), 6);
            let layers = rep.radical_layers().unwrap();
            for (k, d) in f.dims().iter().enumerate() {
                prop_assert_eq!(layers[k].dim() - layers[k + 1].dim(), *d);
            }
            prop_assert!(rep.socle().unwrap().contains_subspace(&layers[f.len() - 1]));
        }
    }

    #[test]
    fn end_contains_image_and_lifts(class in class_strategy(), seed in any::<u64>()) {
        if let Some(rep) = sampled(class, Field::prime(101).unwrap(), seed) {
            let end = end_algebra(&rep).unwrap();
            for a in rep.images() {
                prop_assert!(end.contains(a));
            }
            let soc = rep.socle().unwrap();
            let lifts = hom_lift(&rep, soc.basis()).unwrap();
            for l in &lifts {
                prop_assert!(end.contains(l));
            }
            let top = rep.filtration().unwrap().top();
            prop_assert_eq!(matrix_span(rep.field(), 6, &lifts).dim(), top * soc.dim());
            prop_assert!(end.dim() > matrix_span(rep.field(), 6, rep.images()).dim());
        }
    }

    #[test]
    fn commutant_dimension_is_conjugation_invariant(class in class_strategy(), seed in any::<u64>(), entries in prop::collection::vec(-2i64..=2, 36)) {
        let f = Field::Rationals;
        let p = Matrix::from_fn(f, 6, 6, |i, j| f.from_i64(entries[i * 6 + j] + if i == j { 7 } else { 0 }));
        prop_assume!(p.is_invertible());
        if let Some(rep) = sampled(class, f, seed) {
            let pinv = p.inverse().unwrap();
            let conj: Vec<Matrix> = rep
                .generator_images()
                .iter()
                .map(|m| p.mul(m).unwrap().mul(&pinv).unwrap())
                .collect();
            let before = end_algebra(&rep).unwrap().dim();
            let after = commutant(&conj).unwrap().dim();
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn layered_modules_agree_with_block_solver(class in prop::sample::select(vec![11u32, 14, 16]), seed in any::<u64>()) {
        if let Some(rep) = sampled(class, Field::Rationals, seed) {
            if rep.filtration().unwrap().len() == 3 {
                let (cfg, _) = BlockConfiguration::from_module(&rep).unwrap();
                let s = structured_end_solver(&cfg);
                let g = commutant(cfg.matrices()).unwrap();
                prop_assert!(s.same_space(&g));
                prop_assert_eq!(s.dim(), end_algebra(&rep).unwrap().dim());
            }
        }
    }

    #[test]
    fn rep_documents_round_trip(class in class_strategy(), seed in any::<u64>()) {
        if let Some(rep) = sampled(class, Field::prime(101).unwrap(), seed) {
            let doc = rep_to_json(&rep, json!(class));
            let back = parse_rep_doc(&doc.to_string(), None).unwrap();
            prop_assert_eq!(back.images(), rep.images());
        }
    }
}
