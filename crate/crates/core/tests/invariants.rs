mod common;

use bilocale_core::generate::{self, GenConfig};
use bilocale_core::ideal::ideal_bilocale;
use bilocale_core::maps::{enumerate_biframe_maps, BiframeMap};
use bilocale_core::{Bilocale, ElemSet, Execution, Frame, Orientation, RawFrame, Side};
use proptest::prelude::*;

fn frame(seed: u64) -> Frame {
    generate::random_frame(&mut generate::rng(seed), &GenConfig::default())
}

fn bilocale(seed: u64) -> Bilocale {
    generate::random_bilocale(&mut generate::rng(seed), &GenConfig::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heyting_is_residual(seed in any::<u64>()) {
        let f = frame(seed);
        let n = f.len();
        for a in 0..n {
            prop_assert_eq!(f.meet(a, f.pseudocomplement(a)), f.bottom());
            prop_assert_eq!(f.pseudocomplement(a), f.heyting(a, f.bottom()));
            for b in 0..n {
                for c in 0..n {
                    prop_assert_eq!(f.leq(a, f.heyting(b, c)), f.leq(f.meet(a, b), c));
                }
            }
        }
    }

    #[test]
    fn bullet_is_largest_disjoint(seed in any::<u64>()) {
        let b = bilocale(seed);
        let f = b.frame();
        for i in Side::BOTH {
            for c in b.side(i) {
                let bullet = b.bullet(i, c).unwrap();
                prop_assert!(b.side(i.other()).contains(bullet));
                prop_assert_eq!(f.meet(bullet, c), f.bottom());
                for d in b.side(i.other()) {
                    prop_assert_eq!(f.meet(d, c) == f.bottom(), f.leq(d, bullet));
                }
            }
        }
    }

    #[test]
    fn sublocale_enumeration_matches_oracle(seed in any::<u64>()) {
        let f = frame(seed);
        prop_assume!(f.len() <= 12);
        let mut found: Vec<u64> = f.sublocales().unwrap().iter().map(|s| s.members().bits()).collect();
        found.sort_unstable();
        prop_assert_eq!(found, common::powerset_sublocales(&f));
        let seq = f.enumerate_sublocales_with(Execution::Sequential).unwrap();
        let par = f.enumerate_sublocales_with(Execution::Parallel).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn open_and_closed_are_complementary(seed in any::<u64>()) {
        let f = frame(seed);
        for a in 0..f.len() {
            let (o, c) = (f.open(a), f.closed(a));
            prop_assert_eq!(o.members().bits(), common::open_set(&f, a));
            prop_assert_eq!(o.meet(c), f.void());
            prop_assert_eq!(f.join2(o, c), f.whole());
        }
    }

    #[test]
    fn closure_is_closed_of_meet(seed in any::<u64>()) {
        let f = frame(seed);
        let lattice = f.sublocales().unwrap();
        for s in lattice.iter() {
            let cl = f.closure(s);
            prop_assert_eq!(cl, f.closed(f.meet_all(s.members())));
            prop_assert!(s.is_subset(cl));
            prop_assert_eq!(f.closure(cl), cl);
        }
    }

    #[test]
    fn side_closure_and_interior_laws(seed in any::<u64>()) {
        let b = bilocale(seed);
        let f = b.frame();
        let subs = f.sublocales().unwrap().to_vec();
        for i in Side::BOTH {
            for &s in subs.iter().take(24) {
                let (cl, int) = (b.side_closure(i, s), b.interior(i, s));
                prop_assert!(s.is_subset(cl) && int.is_subset(s));
                prop_assert_eq!(b.side_closure(i, cl), cl);
                prop_assert_eq!(b.interior(i, int), int);
                for &t in subs.iter().take(24) {
                    if s.is_subset(t) {
                        prop_assert!(cl.is_subset(b.side_closure(i, t)));
                        prop_assert!(int.is_subset(b.interior(i, t)));
                    }
                }
                prop_assert_eq!(b.is_side_dense(i, s), common::side_dense(&b, i, s.members().bits()));
            }
        }
    }

    #[test]
    fn booleanization_is_smallest_dense(seed in any::<u64>()) {
        let f = frame(seed);
        let boole = f.booleanization();
        prop_assert!(f.is_dense_sublocale(boole));
        for s in f.sublocales().unwrap().iter().filter(|&s| f.is_dense_sublocale(s)) {
            prop_assert!(boole.is_subset(s));
        }
    }

    #[test]
    fn nu_is_onto_and_meet_preserving(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let b = bilocale(seed);
        let f = b.frame();
        let subs = f.sublocales().unwrap().to_vec();
        let s = subs[pick.index(subs.len())];
        let map = BiframeMap::onto_subbilocale(&b, s).unwrap();
        let local = map.target().frame();
        let image: ElemSet = (0..f.len()).map(|a| map.apply(a)).collect();
        prop_assert_eq!(image, local.all());
        for x in 0..f.len() {
            for y in 0..f.len() {
                prop_assert_eq!(map.apply(f.meet(x, y)), local.meet(map.apply(x), map.apply(y)));
            }
        }
    }

    #[test]
    fn worst_family_matches_all_subfamilies(seed in any::<u64>()) {
        let b = bilocale(seed);
        for o in Orientation::BOTH {
            prop_assume!(common::dense_opens(&b, o).len() <= 8);
            prop_assert_eq!(b.is_ij_baire(o).verdict, common::baire_all_subfamilies(&b, o));
        }
    }

    #[test]
    fn ideal_bilocale_is_isomorphic(seed in any::<u64>()) {
        let b = bilocale(seed);
        prop_assert!(ideal_bilocale(&b).unwrap().verify_isomorphism(&b));
    }

    #[test]
    fn induced_open_sublocales(seed in any::<u64>()) {
        let bs = generate::random_bispace(&mut generate::rng(seed), 4, Default::default());
        let f = bs.bilocale().frame();
        for &u in bs.join_topology() {
            let e = bs.element_of(u).unwrap();
            prop_assert_eq!(bs.induced_sublocale(u).unwrap(), f.open(e));
        }
    }

    #[test]
    fn frame_json_round_trip(seed in any::<u64>()) {
        let f = frame(seed);
        let again = Frame::validate(&f.to_raw()).unwrap();
        prop_assert_eq!(again.to_raw(), f.to_raw());
    }
}

#[test]
fn enumerated_maps_satisfy_adjunction() {
    let sources = [RawFrame::powerset(2), RawFrame::chain3(), RawFrame::chain(2)];
    for sraw in &sources {
        for traw in &sources {
            let s = Bilocale::symmetric(Frame::validate(sraw).unwrap());
            let t = Bilocale::symmetric(Frame::validate(traw).unwrap());
            let (m, l) = (s.frame(), t.frame());
            for h in enumerate_biframe_maps(&s, &t, 8).unwrap() {
                let star = h.right_adjoint();
                for a in 0..m.len() {
                    for (x, &sx) in star.iter().enumerate() {
                        assert_eq!(l.leq(h.apply(a), x), m.leq(a, sx));
                    }
                }
                assert!(h.adjunction_holds());
            }
        }
    }
}

#[test]
fn orientation_strings() {
    for o in Orientation::BOTH {
        assert_eq!(o.to_string().parse::<Orientation>().unwrap(), o);
    }
    assert_eq!("(2, 1)".parse::<Orientation>().unwrap(), Orientation::TWO_ONE);
    assert!("1,1".parse::<Orientation>().is_err());
}
