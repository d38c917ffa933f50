//! Property tests: library results against the brute-force oracles in `common`.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use indball::checks::{self, CheckConfig, Field, PseudomanifoldStatus, Verdict};
use indball::constructions;
use indball::graphs::{self, GorensteinInput, Graph};
use indball::ideals::{self, MonomialIdeal};
use indball::{io, Face};

const N: usize = 6;

/// A vertex count and up to six nonempty faces on it.
fn small_complex() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1..=N).prop_flat_map(|n| (Just(n), prop::collection::vec(1u64..(1 << n), 1..=6)))
}

/// Same, but every face has the same size.
fn pure_complex() -> impl Strategy<Value = (usize, Vec<u64>)> {
    (2..=N)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, k)| {
            let sized: Vec<u64> = (1u64..(1 << n)).filter(|m| popcount(*m) == k).collect();
            (Just(n), prop::collection::vec(prop::sample::select(sized), 1..=6))
        })
}

fn small_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        (Just(n), prop::sample::subsequence(pairs, 0..=len))
    })
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    let v = labels(n);
    let e: Vec<(String, String)> = edges.iter().map(|&(a, b)| (v[a].clone(), v[b].clone())).collect();
    Graph::build(&v, &e).unwrap()
}

fn monomial_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1..=3usize)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..=3, n), 1..=4))
        .prop_filter_map("proper ideal", |gens| {
            let n = gens[0].len();
            let i = MonomialIdeal::new((0..n).map(|k| format!("x{k}")).collect(), gens).ok()?;
            (!i.is_unit() && !i.is_zero()).then_some(i)
        })
}

fn cfg(field: Field) -> CheckConfig {
    CheckConfig {
        field,
        budget: checks::DEFAULT_BUDGET,
    }
}

fn faces_of(c: &indball::SimplicialComplex) -> BTreeSet<u64> {
    c.faces().into_iter().map(|f| f.0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_idempotent((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        prop_assert_eq!(masks(&c).into_iter().collect::<BTreeSet<_>>(), maximal(fs.iter().copied()));
        prop_assert_eq!(complex(n, &masks(&c)), c.clone());
        let json = io::complex_to_json(&c);
        prop_assert_eq!(io::complex_from_json(&json).unwrap(), c);
    }

    #[test]
    fn independence_complex_matches_enumeration((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        let ind = c.independence_complex().unwrap();
        prop_assert_eq!(masks(&ind).into_iter().collect::<BTreeSet<_>>(), independence_facets(n, &masks(&c)));
    }

    #[test]
    fn stanley_reisner_ideal_is_minimal_nonfaces((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        let sr = ideals::stanley_reisner_ideal(&c).unwrap();
        let got: BTreeSet<u64> = sr.generators().iter().map(|m| m.support().0).collect();
        prop_assert_eq!(got, minimal_nonfaces(n, &fs));
        // and the Stanley-Reisner complex of that ideal gives back the complex
        if !sr.is_zero() {
            let back = sr.to_complexes().unwrap().sr_complex;
            prop_assert_eq!(back.facet_label_sets(), c.facet_label_sets());
        }
    }

    #[test]
    fn links_and_deletions_match_definitions((n, fs) in small_complex(), pick in any::<prop::sample::Index>()) {
        let c = complex(n, &fs);
        let all: Vec<u64> = faces(&fs).into_iter().collect();
        let f = all[pick.index(all.len())];
        let lk = c.link(Face(f)).unwrap();
        let want: BTreeSet<BTreeSet<String>> = link(&fs, f)
            .into_iter()
            .map(|g| c.labels(Face(g)).into_iter().collect())
            .collect();
        prop_assert_eq!(lk.facet_label_sets(), want);
        let del = c.deletion(Face(f));
        let want: BTreeSet<BTreeSet<String>> = deletion(&fs, f)
            .into_iter()
            .map(|g| c.labels(Face(g)).into_iter().collect())
            .collect();
        prop_assert_eq!(del.facet_label_sets(), want);
    }

    #[test]
    fn f_vector_counts_faces((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        let f = c.f_vector();
        let all = faces(&fs);
        prop_assert_eq!(f.iter().sum::<u64>(), all.len() as u64);
        for (k, &count) in f.iter().enumerate() {
            prop_assert_eq!(count, all.iter().filter(|&&g| popcount(g) == k).count() as u64);
        }
        prop_assert_eq!(faces_of(&c), all);
    }

    #[test]
    fn homology_matches_dense_elimination((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        for (field, p) in [(Field::GF2, 2), (Field::Prime(3), 3), (Field::Rationals, 10007)] {
            let b = checks::reduced_homology(&c, field).unwrap();
            let want = betti_mod_p(&fs, p);
            for (k, &w) in want.iter().enumerate() {
                prop_assert_eq!(b.get(k as i32 - 1), w, "field {}", field);
            }
            prop_assert!(b.satisfies_euler(&c.f_vector()));
        }
    }

    #[test]
    fn pseudomanifold_status_matches_definition((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        let status = checks::pseudomanifold_status(&c).unwrap();
        let want = pseudomanifold(&masks(&c));
        prop_assert_eq!(status.is_pseudomanifold(), want.is_some());
        prop_assert_eq!(status.has_boundary(), want == Some(true));
        if let PseudomanifoldStatus::NotPure { .. } = status {
            prop_assert!(!c.is_pure());
        }
    }

    #[test]
    fn shellability_matches_all_orders((n, fs) in pure_complex()) {
        let c = complex(n, &fs);
        let r = checks::shelling(&c, &cfg(Field::GF2)).unwrap();
        prop_assert_eq!(r.is_yes(), shellable(&masks(&c)));
        if let checks::Certificate::ShellingOrder { order } = &r.certificate {
            prop_assert!(checks::replay_shelling(&c, order));
        }
        let sc = checks::is_strongly_connected(&c).unwrap();
        prop_assert_eq!(sc.is_yes(), strongly_connected(&masks(&c)));
    }

    #[test]
    fn vertex_decomposability_matches_definition((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        let r = checks::vertex_decomposition(&c, &cfg(Field::GF2)).unwrap();
        prop_assert_eq!(r.is_yes(), vertex_decomposable(&masks(&c).into_iter().collect()));
        if let checks::Certificate::Decomposition { tree } = &r.certificate {
            prop_assert!(checks::replay_decomposition(&c, tree));
        }
    }

    #[test]
    fn reisner_and_spheres_match_definition((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        for (field, p) in [(Field::GF2, 2), (Field::Prime(3), 3)] {
            let cm = checks::reisner_cm(&c, &cfg(field)).unwrap();
            prop_assert_eq!(cm.is_yes(), cohen_macaulay(&masks(&c), p));
            let hs = checks::homology_sphere(&c, &cfg(field)).unwrap();
            prop_assert_eq!(hs.is_yes(), homology_sphere(&masks(&c), p));
        }
    }

    #[test]
    fn implications_hold((n, fs) in pure_complex()) {
        let c = complex(n, &fs);
        let k = cfg(Field::GF2);
        let vd = checks::vertex_decomposition(&c, &k).unwrap().verdict;
        let sh = checks::shelling(&c, &k).unwrap().verdict;
        let cm = checks::reisner_cm(&c, &k).unwrap().verdict;
        let sc = checks::is_strongly_connected(&c).unwrap().verdict;
        let yes = |v: Verdict| v == Verdict::Yes;
        prop_assert!(!yes(vd) || yes(sh));
        prop_assert!(!yes(sh) || yes(cm));
        prop_assert!(!yes(cm) || yes(sc));
        if checks::homology_sphere(&c, &k).unwrap().is_yes() {
            prop_assert_eq!(checks::pseudomanifold_status(&c).unwrap(), PseudomanifoldStatus::WithoutBoundary);
        }
    }

    #[test]
    fn gorenstein_general_path_matches_cone_stripping((n, fs) in small_complex()) {
        let c = complex(n, &fs);
        let r = graphs::gorenstein_classify(GorensteinInput::Complex(&c), &cfg(Field::GF2), false).unwrap();
        // strip vertices common to all facets, then ask for a homology sphere
        let ms = masks(&c);
        let common_bits = ms.iter().fold(u64::MAX, |a, &f| a & f);
        let core: Vec<u64> = maximal(ms.iter().map(|&f| f & !common_bits)).into_iter().collect();
        let want = if core == [0] { true } else { homology_sphere(&core, 2) };
        prop_assert_eq!(r.is_yes(), want);
    }

    #[test]
    fn polarization_invariants(ideal in monomial_ideal()) {
        let p = ideal.polarize().unwrap();
        let q = &p.polarized;
        prop_assert!(q.is_squarefree());
        prop_assert_eq!(q.generators().len(), ideal.generators().len());
        let degrees = |i: &MonomialIdeal| {
            let mut d: Vec<u32> = i.generators().iter().map(|m| m.degree()).collect();
            d.sort_unstable();
            d
        };
        prop_assert_eq!(degrees(q), degrees(&ideal));
        // collapsing each block back onto its variable recovers the ideal
        let collapse: BTreeSet<Vec<(String, u32)>> = q
            .generators()
            .iter()
            .map(|m| {
                let mut count: std::collections::BTreeMap<String, u32> = Default::default();
                for v in m.support().iter() {
                    let name = q.variables()[v].split('#').next().unwrap().to_string();
                    *count.entry(name).or_default() += 1;
                }
                count.into_iter().collect()
            })
            .collect();
        prop_assert_eq!(collapse, ideal.generator_label_sets());
        // polarizing again only renames
        let twice = q.polarize().unwrap().polarized;
        prop_assert_eq!(twice.generators(), q.generators());
        prop_assert_eq!(io::ideal_from_json(&io::ideal_to_json(&ideal)).unwrap(), ideal);
    }

    #[test]
    fn whiskering_gives_very_well_covered((n, edges) in small_graph(5)) {
        let g = graph(n, &edges);
        let w = constructions::whisker_graph(&g).unwrap();
        let w_edges: Vec<(usize, usize)> = w.edges().to_vec();
        let mis = maximal_independent_sets(2 * n, &w_edges);
        prop_assert!(mis.iter().all(|&s| popcount(s) == n));
        prop_assert!(w.is_very_well_covered());
        prop_assert!(w.is_whiskered());
        let ind = w.independence_complex();
        prop_assert!(checks::pseudomanifold_status(&ind).unwrap().is_pseudomanifold());
        prop_assert!(cohen_macaulay(&masks(&ind), 2));
    }

    #[test]
    fn labelling_exists_iff_cohen_macaulay((n, edges) in small_graph(8)) {
        let g = graph(n, &edges);
        let mis = maximal_independent_sets(n, &edges);
        let vwc = n % 2 == 0 && mis.iter().all(|&s| 2 * popcount(s) == n);
        prop_assert_eq!(g.is_very_well_covered(), vwc);
        if vwc && g.isolated().is_empty() {
            let lab = graphs::vwc_labelling(&g).unwrap();
            let ind: Vec<u64> = mis.iter().copied().collect();
            prop_assert_eq!(lab.is_some(), cohen_macaulay(&ind, 2));
            if let Some(l) = lab {
                prop_assert_eq!(l.verify(&g), Ok(()));
                prop_assert!(l.facets_are_transversals(&g));
            }
        }
    }

    #[test]
    fn coloured_whiskering_shape((n, fs) in small_complex(), seed in any::<u64>()) {
        let c = complex(n, &fs);
        // a vertex in no face behaves like an empty colour class
        prop_assume!(c.isolated_vertices().is_empty());
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let chi = indball::suite::random_colouring(&mut rng, &c);
        let w = constructions::coloured_whisker(&c, &chi).unwrap();
        prop_assert!(w.is_pure());
        prop_assert_eq!(w.dim(), Some(chi.parts.len() as i32 - 1));
        prop_assert!(vertex_decomposable(&masks(&w).into_iter().collect()));
        let pm = pseudomanifold(&masks(&w)).is_some();
        prop_assert_eq!(pm, chi.is_singletons());
    }
}
