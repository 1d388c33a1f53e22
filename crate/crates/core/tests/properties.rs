use std::sync::OnceLock;

use flagpieces::oracle::{bruhat_oracle, coset_scan_min, i_j_delta_oracle, twisted_orbit};
use flagpieces::pieces::{sequence_for, sequence_to_label};
use flagpieces::{DiagramAutomorphism, ElemId, Group, RootSystem, Side, Subset, Twist, Word};
use proptest::prelude::*;

const TYPES: [&str; 6] = ["A3", "B3", "C3", "D4", "G2", "A4"];

fn groups() -> &'static Vec<Group> {
    static GROUPS: OnceLock<Vec<Group>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        TYPES
            .iter()
            .map(|t| Group::new(RootSystem::new(t.parse().unwrap()).unwrap()).unwrap())
            .collect()
    })
}

fn pick(g: &Group, seed: usize) -> ElemId {
    ElemId::from_index(seed % g.order())
}

fn twist_for(g: &Group, seed: usize) -> Twist<'_> {
    let all = DiagramAutomorphism::all(g.root_system().cartan());
    Twist::new(g, all[seed % all.len()].clone()).unwrap()
}

fn subset(g: &Group, bits: u16) -> Subset {
    Subset::from_bits(bits & Subset::full(g.rank()).bits())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn length_is_subadditive_and_inverse_invariant(t in 0..TYPES.len(), a in any::<usize>(), b in any::<usize>()) {
        let g = &groups()[t];
        let (u, v) = (pick(g, a), pick(g, b));
        prop_assert!(g.length(g.multiply(u, v)) <= g.length(u) + g.length(v));
        prop_assert_eq!(g.length(g.inverse(u)), g.length(u));
    }

    #[test]
    fn bruhat_matches_subwords(t in 0..TYPES.len(), a in any::<usize>(), b in any::<usize>()) {
        let g = &groups()[t];
        let (u, v) = (pick(g, a), pick(g, b));
        prop_assert_eq!(g.bruhat_leq(u, v), bruhat_oracle(g, u, v).unwrap());
    }

    #[test]
    fn words_round_trip(t in 0..TYPES.len(), letters in prop::collection::vec(0u8..8, 0..16)) {
        let g = &groups()[t];
        let word = Word(letters.into_iter().map(|x| x % g.rank() as u8).collect());
        let w = g.from_word(&word).unwrap();
        prop_assert_eq!(g.parse_element(&g.format(w)).unwrap(), w);
        prop_assert!(g.canonical_word(w).len() <= word.len());
    }

    #[test]
    fn coset_minima_match_scan(t in 0..TYPES.len(), a in any::<usize>(), bits in any::<u16>()) {
        let g = &groups()[t];
        let (w, j) = (pick(g, a), subset(g, bits));
        for side in [Side::Right, Side::Left] {
            prop_assert_eq!(g.min_coset_rep(w, j, side), coset_scan_min(g, w, j, side).unwrap());
        }
    }

    #[test]
    fn sequences_round_trip(t in 0..TYPES.len(), s in any::<usize>(), a in any::<usize>(), bits in any::<u16>()) {
        let g = &groups()[t];
        let tw = twist_for(g, s);
        let j = subset(g, bits);
        let w = g.min_coset_rep(pick(g, a), j, Side::Right);
        let seq = sequence_for(&tw, j, w).unwrap();
        prop_assert!(seq.steps.len() <= j.len() + 2);
        prop_assert_eq!(sequence_to_label(&tw, &seq).unwrap(), w);
        prop_assert_eq!(seq.stable_j(), i_j_delta_oracle(&tw, j, w).unwrap());
    }

    #[test]
    fn orbits_are_closed_under_the_action(t in 0..TYPES.len(), s in any::<usize>(), a in any::<usize>(), x in any::<usize>(), bits in any::<u16>()) {
        let g = &groups()[t];
        let tw = twist_for(g, s);
        let j = subset(g, bits);
        let y = pick(g, a);
        let orbit = tw.orbit(y, j);
        prop_assert_eq!(&orbit.members, &twisted_orbit(&tw, y, j));
        let wj = g.parabolic_elements(j);
        let x = wj[x % wj.len()];
        let moved = tw.twisted_conjugate(x, y, j).unwrap();
        prop_assert!(orbit.members.binary_search(&moved).is_ok());
        prop_assert_eq!(tw.orbit(moved, j), orbit);
    }

    #[test]
    fn delta_is_a_length_preserving_automorphism(t in 0..TYPES.len(), s in any::<usize>(), a in any::<usize>(), b in any::<usize>()) {
        let g = &groups()[t];
        let tw = twist_for(g, s);
        let (u, v) = (pick(g, a), pick(g, b));
        let d = |w| tw.delta_on_element(w);
        prop_assert_eq!(d(g.multiply(u, v)), g.multiply(d(u), d(v)));
        prop_assert_eq!(g.length(d(u)), g.length(u));
    }
}
