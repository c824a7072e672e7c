//! Property tests for the half-unit arithmetic and the small geometric
//! helpers everything else leans on.

use proptest::prelude::*;
use steiner_embed::model::{
    clamp_to_bbox, path_lengths, Embedding, HalfPoint, Instance, Length,
};
use steiner_embed::scaling::grid_exponent;
use std::collections::BTreeMap;

const C: i64 = 1 << 20;

fn chain_instance(t: (i64, i64), limit: Length) -> Instance {
    Instance::new(
        "chain",
        &["r", "s1", "s2", "t"],
        &[("r", "s1"), ("s1", "s2"), ("s2", "t")],
        "r",
        &[
            ("r", HalfPoint::of_units(0, 0), Length::INFINITY),
            ("t", HalfPoint::of_units(t.0, t.1), limit),
        ],
    )
    .unwrap()
}

proptest! {
    #[test]
    fn l1_is_a_metric(ax in -C..C, ay in -C..C, bx in -C..C, by in -C..C, cx in -C..C, cy in -C..C) {
        let (a, b, c) = (HalfPoint::new(ax, ay), HalfPoint::new(bx, by), HalfPoint::new(cx, cy));
        prop_assert_eq!(a.l1(b), b.l1(a));
        prop_assert_eq!(a.l1(a), 0);
        prop_assert!(a.l1(c) <= a.l1(b) + b.l1(c));
        prop_assert!(a.l1(b) >= 0);
    }

    #[test]
    fn l1_ignores_translation(ax in -C..C, ay in -C..C, bx in -C..C, by in -C..C, dx in -C..C, dy in -C..C) {
        let (a, b) = (HalfPoint::new(ax, ay), HalfPoint::new(bx, by));
        prop_assert_eq!(a.offset(dx, dy).l1(b.offset(dx, dy)), a.l1(b));
    }

    #[test]
    fn length_plus_saturates_and_keeps_order(v in 0i64..C, w in 0i64..C, d in 0i64..C) {
        let (a, b) = (Length::finite(v), Length::finite(w));
        prop_assert_eq!(Length::INFINITY.plus(d), Length::INFINITY);
        prop_assert_eq!(a.plus(d), Length::finite(v + d));
        prop_assert!(a.plus(d) >= a);
        prop_assert!(a < Length::INFINITY);
        prop_assert_eq!(a.min(b), if v <= w { a } else { b });
        prop_assert_eq!(a.min(Length::INFINITY), a);
    }

    #[test]
    fn grid_exponent_brackets_the_farthest_offset(tx in -1000i64..1000, ty in -1000i64..1000) {
        let inst = chain_instance((tx, ty), Length::INFINITY);
        let m = grid_exponent(&inst);
        let d = HalfPoint::of_units(tx, ty);
        let far = d.x2.abs().max(d.y2.abs());
        prop_assert!(far < 1i64 << (m + 1));
        if m > 0 {
            prop_assert!(far >= 1i64 << m, "m {} is not minimal for {}", m, far);
        }
    }

    #[test]
    fn paths_on_integral_instances_have_even_length(
        tx in -50i64..50, ty in -50i64..50,
        s1 in (-120i64..120, -120i64..120),
        s2 in (-120i64..120, -120i64..120),
    ) {
        let inst = chain_instance((tx, ty), Length::INFINITY);
        let mut map = BTreeMap::new();
        map.insert("r".to_string(), HalfPoint::of_units(0, 0));
        map.insert("t".to_string(), HalfPoint::of_units(tx, ty));
        map.insert("s1".to_string(), HalfPoint::new(s1.0, s1.1));
        map.insert("s2".to_string(), HalfPoint::new(s2.0, s2.1));
        let emb = Embedding::from_positions(&inst, &map).unwrap();
        let pl = path_lengths(&inst, &emb);
        let t = inst.index("t").unwrap();
        prop_assert_eq!(pl.by_terminal[&t] % 2, 0);
    }

    #[test]
    fn clamped_positions_land_inside_the_terminal_box(
        tx in -50i64..50, ty in -50i64..50,
        s1 in (-300i64..300, -300i64..300),
        s2 in (-300i64..300, -300i64..300),
    ) {
        let inst = chain_instance((tx, ty), Length::INFINITY);
        let mut map = BTreeMap::new();
        map.insert("r".to_string(), HalfPoint::of_units(0, 0));
        map.insert("t".to_string(), HalfPoint::of_units(tx, ty));
        map.insert("s1".to_string(), HalfPoint::new(s1.0, s1.1));
        map.insert("s2".to_string(), HalfPoint::new(s2.0, s2.1));
        let emb = Embedding::from_positions(&inst, &map).unwrap();
        let clamped = clamp_to_bbox(&inst, &emb);
        let (lo, hi) = inst.terminal_bbox();
        for v in 0..inst.len() {
            let p = clamped.position(v);
            prop_assert!(lo.x2 <= p.x2 && p.x2 <= hi.x2);
            prop_assert!(lo.y2 <= p.y2 && p.y2 <= hi.y2);
        }
    }
}
