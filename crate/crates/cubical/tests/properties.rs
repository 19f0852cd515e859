//! Randomized property tests for the structural invariants of the library.

use proptest::prelude::*;

use cubical::constructions::{
    circle, point, product, salvetti, subdivide, surface_complex, torus_complex, wedge_of_circles,
    SimplicialGraph,
};
use cubical::curvature::is_npc;
use cubical::groups::{
    pieces, raag_normal_form, small_cancellation, symmetrize, Presentation,
};
use cubical::hyperplanes::{carrier, hyperplanes, pathologies};
use cubical::complex::CubeComplex;

fn arb_word(max_len: usize, gens: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(
        (1..=gens as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]),
        1..=max_len,
    )
}

fn arb_graph(max_vertices: usize) -> impl Strategy<Value = SimplicialGraph> {
    (2..=max_vertices).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::ANY, n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = SimplicialGraph::edgeless(n);
            let mut k = 0;
            for a in 0..n {
                for b in (a + 1)..n {
                    if bits[k] {
                        g.add_edge(a, b);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Brute-force maximal piece length: enumerate every subword of every
/// symmetrized relator and keep those occurring as a prefix of at least two
/// distinct elements.  (An occurrence of a subword in a cyclic relator is
/// the same thing as a rotation having it as a prefix, so distinct
/// occurrences are distinct symmetrized words.)
fn brute_force_max_piece(words: &std::collections::BTreeSet<Vec<i32>>) -> usize {
    let mut best = 0;
    for w in words {
        for len in 1..=w.len() {
            let u = &w[..len];
            let occurrences = words
                .iter()
                .filter(|v| v.len() >= len && &v[..len] == u)
                .count();
            if occurrences >= 2 {
                best = best.max(len);
            }
        }
    }
    best
}

fn small_zoo() -> Vec<CubeComplex> {
    vec![
        point(),
        circle(),
        wedge_of_circles(2),
        torus_complex(1).unwrap(),
        torus_complex(2).unwrap(),
        surface_complex(2, true).unwrap(),
        salvetti(&SimplicialGraph::path(3)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Symmetrizing a symmetrized relator set changes nothing.
    #[test]
    fn symmetrize_is_idempotent(words in prop::collection::vec(arb_word(6, 2), 1..4)) {
        let p = Presentation::new(vec!["a".into(), "b".into()], words).unwrap();
        if let Ok(sym) = symmetrize(&p) {
            let again = Presentation::new(
                p.generators.clone(),
                sym.words.iter().cloned().collect(),
            )
            .unwrap();
            prop_assert_eq!(symmetrize(&again).unwrap().words, sym.words);
        }
    }

    /// The prefix-based piece length equals the brute-force maximal common
    /// subword over distinct symmetrized relators.
    #[test]
    fn pieces_match_common_subword_oracle(words in prop::collection::vec(arb_word(6, 2), 1..4)) {
        let p = Presentation::new(vec!["a".into(), "b".into()], words).unwrap();
        if let Ok(sym) = symmetrize(&p) {
            prop_assert_eq!(pieces(&sym).0, brute_force_max_piece(&sym.words));
        }
    }

    /// C'(1/n) implies C(n+1).
    #[test]
    fn cprime_implies_c(words in prop::collection::vec(arb_word(6, 2), 1..3), n in 2..6usize) {
        let p = Presentation::new(vec!["a".into(), "b".into()], words).unwrap();
        if symmetrize(&p).is_ok() {
            let (cprime, _) = small_cancellation(&p, n).unwrap();
            if cprime {
                prop_assert!(small_cancellation(&p, n + 1).unwrap().1);
            }
        }
    }

    /// Normal forms are idempotent and never longer than the input; on a
    /// complete graph they are sorted, on an edgeless graph freely reduced.
    #[test]
    fn raag_normal_form_properties(g in arb_graph(4), w in arb_word(8, 4)) {
        let w: Vec<i32> = w.into_iter()
            .filter(|l| l.unsigned_abs() as usize <= g.vertices.len())
            .collect();
        let nf = raag_normal_form(&g, &w).unwrap();
        prop_assert!(nf.len() <= w.len());
        prop_assert_eq!(raag_normal_form(&g, &nf).unwrap(), nf);
    }

    /// Salvetti complexes are non-positively curved and special.
    #[test]
    fn salvetti_is_npc_and_special(g in arb_graph(5)) {
        let x = salvetti(&g).unwrap();
        prop_assert!(is_npc(&x).npc);
        prop_assert!(pathologies(&x).is_special());
    }

    /// Euler characteristics multiply under products.
    #[test]
    fn product_multiplies_euler_characteristic(i in 0..7usize, j in 0..7usize) {
        let zoo = small_zoo();
        let x = &zoo[i];
        let y = &zoo[j];
        let p = product(x, y).unwrap();
        prop_assert_eq!(
            p.euler_characteristic(),
            x.euler_characteristic() * y.euler_characteristic()
        );
    }

    /// Subdivision preserves the Euler characteristic and the NPC verdict.
    #[test]
    fn subdivision_preserves_euler_and_npc(i in 0..7usize) {
        let zoo = small_zoo();
        let x = &zoo[i];
        let s = subdivide(x).unwrap();
        prop_assert_eq!(s.euler_characteristic(), x.euler_characteristic());
        prop_assert_eq!(is_npc(&s).npc, is_npc(x).npc);
    }

    /// Carriers of hyperplanes in special complexes are themselves special:
    /// specialness passes to complexes admitting a local isometry into a
    /// special one.
    #[test]
    fn carriers_of_special_complexes_are_special(i in 0..7usize) {
        let zoo = small_zoo();
        let x = &zoo[i];
        if is_npc(x).npc && pathologies(x).is_special() {
            for hp in hyperplanes(x) {
                let (n, _) = carrier(x, &hp).unwrap();
                prop_assert!(is_npc(&n).npc);
                prop_assert!(pathologies(&n).is_special());
            }
        }
    }
}
