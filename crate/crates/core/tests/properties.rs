// Identities that must hold on every model, checked on the corpus and on random models.

use bcwb::cohomology::Engine;
use bcwb::dsl::{parse_form, parse_model};
use bcwb::invariants::consistency_report;
use bcwb::io::{compute, load_model, to_json, ResultDocument, Selection};
use proptest::prelude::*;

fn parse_all(gens: &[String], n: usize) -> Vec<bcwb::exterior::Form> {
    gens.iter().map(|g| parse_form(g, n).unwrap()).collect()
}

#[test]
fn every_corpus_model_validates() {
    for m in bcwb::corpus::all() {
        assert!(m.validate().passed(), "{}", m.name());
    }
}

#[test]
fn generator_strings_lie_in_their_spans() {
    for name in bcwb::corpus::names() {
        let loaded = load_model(&format!("corpus:{name}")).unwrap();
        let n = loaded.model.dim();
        let e = Engine::new(loaded.model.clone());
        let doc = compute(&loaded, &Selection::default());
        for (key, rec) in &doc.maps.i {
            let (p, q) = key.split_once(',').unwrap();
            let m = e.map_i(p.parse().unwrap(), q.parse().unwrap());
            assert!(m.kernel_spanned_by(&parse_all(&rec.ker_generators, n)), "{name} I({key}) ker");
            assert!(m.cokernel_spanned_by(&parse_all(&rec.coker_generators, n)), "{name} I({key}) coker");
        }
        for (key, rec) in &doc.maps.c {
            let m = e.map_c(key.parse().unwrap());
            assert!(m.kernel_spanned_by(&parse_all(&rec.ker_generators, n)), "{name} C({key}) ker");
            assert!(m.cokernel_spanned_by(&parse_all(&rec.coker_generators, n)), "{name} C({key}) coker");
        }
    }
}

fn coefficient() -> impl Strategy<Value = String> {
    (-2i64..3, -1i64..2).prop_map(|(re, im)| format!("({re}{im:+}i)"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // Two-step models d w3 = a w1^w2 + b w1^cw1 + c w1^cw2 + e w2^cw1 + f w2^cw2.
    #[test]
    fn random_two_step_models(cs in proptest::collection::vec(coefficient(), 5)) {
        let text = format!(
            "model r {{ dim 3 d w1 = 0 d w2 = 0 d w3 = {}*w1^w2 + {}*w1^cw1 + {}*w1^cw2 + {}*w2^cw1 + {}*w2^cw2 }}",
            cs[0], cs[1], cs[2], cs[3], cs[4]
        );
        let m = parse_model(&text).unwrap();
        prop_assert!(m.validate().passed());
        let e = Engine::new(m);
        let r = consistency_report(&e);
        let failed: Vec<_> = r.structural_failures().map(|c| c.name.clone()).collect();
        prop_assert!(failed.is_empty(), "{:?}", failed);
        for k in 1..=6 {
            prop_assert_eq!(r.spade.get(k), r.hyper_c1.get(k) - r.hyper_bc11.get(k));
            prop_assert_eq!(r.club.get(k), r.betti.get(k) - r.hyper_bc11.get(k));
            let c = e.map_c(k);
            prop_assert_eq!(r.spade.get(k), c.coker_dim() as i64 - c.ker_dim() as i64);
        }
        prop_assert!(r.nk_degree.values.iter().all(|&x| x >= 0));
        prop_assert_eq!(r.ddbar_lemma, r.nk_degree.values.iter().all(|&x| x == 0));
    }

    #[test]
    fn result_documents_round_trip(cs in proptest::collection::vec(coefficient(), 2)) {
        let text = format!("model r {{ dim 3 d w1 = 0 d w2 = 0 d w3 = {}*w1^w2 + {}*w1^cw1 }}", cs[0], cs[1]);
        let loaded = bcwb::io::LoadedModel { model: parse_model(&text).unwrap(), source: text };
        let sel = Selection { bc: vec![(1, 1)], trunc: vec![(2, 1)], maps_i: true, ..Selection::default() };
        let doc = compute(&loaded, &sel);
        let back: ResultDocument = serde_json::from_str(&to_json(&doc)).unwrap();
        prop_assert_eq!(back, doc);
    }
}
