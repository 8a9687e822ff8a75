mod common;

use common::{pool, q};
use num_rational::BigRational;
use proptest::prelude::*;
use substral::algebraic::FieldElement;
use substral::tiling::Tiling;

fn entry() -> impl Strategy<Value = usize> {
    0..common::POOL.len()
}

fn radius() -> impl Strategy<Value = BigRational> {
    (0i64..48, 1i64..8).prop_map(|(n, d)| q(n, d))
}

fn translation(e: &common::Entry, c: &[BigRational]) -> FieldElement {
    common::element(e.geo.field(), c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inflation_commutes_with_translation(i in entry(), r in radius(), t in common::coords()) {
        let e = &pool()[i];
        let t = translation(e, &t);
        let p = e.tiling.window(&e.geo.field().from_rational(r));
        let lambda = e.geo.inflation();
        let moved = e.geo.inflate_patch(&p.shifted(&-&t));
        prop_assert_eq!(moved, e.geo.inflate_patch(&p).shifted(&-(lambda * &t)));
    }

    #[test]
    fn support_scales_by_lambda(i in entry(), r in radius()) {
        let e = &pool()[i];
        let p = e.tiling.window(&e.geo.field().from_rational(r));
        let (a, b) = p.support().unwrap();
        let (c, d) = e.geo.inflate_patch(&p).support().unwrap();
        let lambda = e.geo.inflation();
        prop_assert_eq!(c, lambda * &a);
        prop_assert_eq!(d, lambda * &b);
    }

    #[test]
    fn windows_nest(i in entry(), r in radius(), extra in radius()) {
        let e = &pool()[i];
        let f = e.geo.field();
        let small = e.tiling.window(&f.from_rational(r.clone()));
        let big = e.tiling.window(&f.from_rational(r + extra));
        for t in &small.tiles {
            prop_assert!(big.tiles.contains(t));
        }
    }

    #[test]
    fn windows_are_contiguous_and_cover(i in entry(), r in radius()) {
        let e = &pool()[i];
        let f = e.geo.field();
        let r = f.from_rational(r);
        let p = e.tiling.window(&r);
        for w in p.tiles.windows(2) {
            prop_assert_eq!(&w[0].right, &w[1].left);
        }
        let (a, b) = p.support().unwrap();
        prop_assert!(a <= -&r && b >= r);
        for t in &p.tiles {
            prop_assert!(t.meets(&-&r, &r));
        }
    }

    #[test]
    fn fixed_tiling_is_invariant(i in entry(), r in radius()) {
        let e = &pool()[i];
        let f = e.geo.field();
        let r = f.from_rational(r);
        let step = e.geo.power(e.k).unwrap();
        let p = e.tiling.window(&r);
        let inflated = step.inflate_patch(&p);
        prop_assert_eq!(inflated.meeting(&-&r, &r), p);
    }

    #[test]
    fn translated_windows_shift(i in entry(), r in radius(), t in common::coords()) {
        let e = &pool()[i];
        let f = e.geo.field();
        let r = f.from_rational(r);
        let t = translation(e, &t);
        let moved: Tiling = e.tiling.translate(&t);
        let direct = e.tiling.tiles_meeting(&(&t - &r), &(&t + &r)).shifted(&-&t);
        prop_assert_eq!(moved.window(&r), direct);
    }
}
