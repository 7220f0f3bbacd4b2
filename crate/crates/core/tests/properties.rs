use proptest::prelude::*;

use residua::dynkin::{distinguished_partitions, partition_to_segment, segment_to_wdd, wdd_to_segment};
use residua::langlands::{langlands_param, leq_order, linked, union_intersection, LinearSegment, SegmentMultiset};
use residua::orbits::{dominant_rep, is_residual_point, orbit_equivalent, OrbitContext};
use residua::rootsys::{is_dominant, pairing, positive_roots, weyl_apply, SignedPermutation};
use residua::{HalfInt, Kind, RootSystemSpec, Weight};

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::A), Just(Kind::B), Just(Kind::C), Just(Kind::D)]
}

fn classical() -> impl Strategy<Value = Kind> {
    prop_oneof![Just(Kind::B), Just(Kind::C), Just(Kind::D)]
}

fn half_int() -> impl Strategy<Value = HalfInt> {
    (-20i64..=20).prop_map(HalfInt::from_twice)
}

/// A spec, a vector of matching length, and a group element of that kind.
fn weyl_case(max_rank: usize) -> impl Strategy<Value = (RootSystemSpec, Weight, SignedPermutation)> {
    (kind(), 2..=max_rank).prop_flat_map(|(k, rank)| {
        let spec = RootSystemSpec::new(k, rank).unwrap();
        let n = spec.dim();
        (
            Just(spec),
            prop::collection::vec(half_int(), n),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            prop::collection::vec(prop::bool::ANY, n),
        )
            .prop_map(move |(spec, lambda, perm, flips)| {
                let mut signs: Vec<i8> = flips.iter().map(|&f| if f && k != Kind::A { -1 } else { 1 }).collect();
                if k == Kind::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                    signs[0] = -signs[0];
                }
                (spec, lambda, SignedPermutation::new(perm, signs).unwrap())
            })
    })
}

fn segment(half: bool) -> impl Strategy<Value = LinearSegment> {
    (-6i64..=6, 1i64..=6).prop_map(move |(b, len)| {
        let b = HalfInt::from_twice(2 * b + i64::from(half));
        LinearSegment::new(b + HalfInt::from_int(len - 1), b).unwrap()
    })
}

proptest! {
    #[test]
    fn halfint_text_round_trip(x in half_int()) {
        prop_assert_eq!(x.to_string().parse::<HalfInt>().unwrap(), x);
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<HalfInt>(&json).unwrap(), x);
    }

    #[test]
    fn pairing_is_odd_in_the_root((spec, lambda, _) in weyl_case(6)) {
        for r in positive_roots(spec) {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            prop_assert_eq!(pairing(&lambda, &r).unwrap() + pairing(&lambda, &neg).unwrap(), HalfInt::ZERO);
        }
    }

    #[test]
    fn weyl_action_keeps_absolute_values((spec, lambda, w) in weyl_case(8)) {
        let moved = weyl_apply(spec.kind, &w, &lambda).unwrap();
        let key = |v: &Weight| { let mut a: Vec<HalfInt> = v.iter().map(|x| x.abs()).collect(); a.sort(); a };
        prop_assert_eq!(key(&moved), key(&lambda));
    }

    #[test]
    fn dominant_rep_is_dominant_and_equivalent((spec, lambda, w) in weyl_case(8)) {
        let ctx = OrbitContext::standard(spec.kind, spec.rank).unwrap();
        let (dom, wit) = dominant_rep(&ctx, &lambda).unwrap();
        prop_assert!(is_dominant(spec, &dom).unwrap());
        prop_assert_eq!(weyl_apply(spec.kind, &wit, &lambda).unwrap(), dom.clone());
        prop_assert!(orbit_equivalent(&ctx, &lambda, &dom));
        let moved = weyl_apply(spec.kind, &w, &lambda).unwrap();
        prop_assert_eq!(dominant_rep(&ctx, &moved).unwrap().0, dom.clone());
        if matches!(spec.kind, Kind::B | Kind::C) {
            let mut sorted: Weight = lambda.iter().map(|x| x.abs()).collect();
            sorted.sort_by(|a, b| b.cmp(a));
            prop_assert_eq!(dom, sorted);
        }
    }

    #[test]
    fn residuality_is_weyl_invariant((spec, lambda, w) in weyl_case(9)) {
        let ctx = OrbitContext::standard(spec.kind, spec.rank).unwrap();
        let moved = weyl_apply(spec.kind, &w, &lambda).unwrap();
        prop_assert_eq!(is_residual_point(&ctx, &lambda).unwrap(), is_residual_point(&ctx, &moved).unwrap());
    }

    #[test]
    fn orbit_points_stay_residual(k in classical(), rank in 2usize..=9, pick in any::<prop::sample::Index>(),
                                  (perm, flips) in (Just((0..9).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(prop::bool::ANY, 9))) {
        let spec = RootSystemSpec::new(k, rank).unwrap();
        let ctx = OrbitContext::standard(k, rank).unwrap();
        let parts = distinguished_partitions(spec);
        let s = partition_to_segment(pick.get(&parts));
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < rank).collect();
        let mut signs: Vec<i8> = flips[..rank].iter().map(|&f| if f { -1 } else { 1 }).collect();
        if k == Kind::D && signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
            signs[0] = -signs[0];
        }
        let w = SignedPermutation::new(perm, signs).unwrap();
        let moved = weyl_apply(k, &w, s.values()).unwrap();
        prop_assert!(is_residual_point(&ctx, &moved).unwrap());
    }

    #[test]
    fn diagrams_round_trip(k in kind(), rank in 1usize..=12, pick in any::<prop::sample::Index>()) {
        prop_assume!(rank >= k.min_rank());
        let parts = distinguished_partitions(RootSystemSpec::new(k, rank).unwrap());
        let s = partition_to_segment(pick.get(&parts));
        let labels = segment_to_wdd(&s).unwrap();
        prop_assert!(labels.iter().all(|l| *l == 0 || *l == 2));
        prop_assert_eq!(wdd_to_segment(k, &labels).unwrap(), s);
    }

    #[test]
    fn union_intersection_lowers_the_parameter(half in any::<bool>(), s1 in segment(false), s2 in segment(false)) {
        let shift = |s: LinearSegment| if half {
            LinearSegment::new(s.a + HalfInt::HALF, s.b + HalfInt::HALF).unwrap()
        } else { s };
        let (s1, s2) = (shift(s1), shift(s2));
        prop_assume!(linked(&s1, &s2).unwrap());
        let (u, i) = union_intersection(&s1, &s2).unwrap();
        let before = langlands_param(&SegmentMultiset::new(vec![s1, s2]));
        let after = langlands_param(&SegmentMultiset::new(std::iter::once(u).chain(i).collect()));
        let spec = RootSystemSpec::new(Kind::B, before.len()).unwrap();
        prop_assert!(leq_order(spec, &after, &before).unwrap());
    }

    #[test]
    fn equal_midpoints_are_nested(s1 in segment(true), k in 0i64..3) {
        let k = HalfInt::from_int(k.min((s1.len() as i64 - 1) / 2));
        let s2 = LinearSegment::new(s1.a - k, s1.b + k).unwrap();
        prop_assert_eq!(s1.midpoint(), s2.midpoint());
        prop_assert!(!linked(&s1, &s2).unwrap());
        prop_assert!(s1.contains(&s2) || s2.contains(&s1));
    }

    #[test]
    fn leq_order_is_reflexive((spec, lambda, _) in weyl_case(7)) {
        prop_assert!(leq_order(spec, &lambda, &lambda).unwrap());
    }

    #[test]
    fn segment_text_round_trip(s in segment(true)) {
        prop_assert_eq!(s.to_string().parse::<LinearSegment>().unwrap(), s);
    }
}
