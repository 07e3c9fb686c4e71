//! Property tests for band operators on one-sided sequences: composition
//! agrees with running the operators one after the other, is associative
//! and bilinear, and the shift pair cancels exactly through arbitrary
//! operators.

use algpoly::scalar::int;
use algpoly::shift::{BandOperator, DiagonalSequence};
use algpoly::Scalar;
use proptest::prelude::*;

fn seq() -> impl Strategy<Value = DiagonalSequence> {
    (prop::collection::vec(-4i64..=4, 0..4), -4i64..=4).prop_map(|(prefix, tail)| {
        DiagonalSequence::new(prefix.into_iter().map(int).collect(), int(tail))
    })
}

fn band_op() -> impl Strategy<Value = BandOperator> {
    prop::collection::vec((-3i64..=3, seq()), 0..4)
        .prop_map(|bands| BandOperator::from_bands(bands).unwrap())
}

fn input() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-5i64..=5).prop_map(int), 8)
}

proptest! {
    #[test]
    fn composition_matches_sequential_application(
        a in band_op(),
        b in band_op(),
        s in input(),
    ) {
        // The second stage reads at most 3 positions ahead, so a 16-long
        // intermediate determines the first 8 outputs exactly.
        let composed = a.compose(&b).unwrap().apply_truncated(&s, 8);
        let intermediate = a.apply_truncated(&s, 16);
        prop_assert_eq!(composed, b.apply_truncated(&intermediate, 8));
    }

    #[test]
    fn composition_is_associative(a in band_op(), b in band_op(), c in band_op()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_is_bilinear(
        a in band_op(),
        b in band_op(),
        c in band_op(),
        s in (-4i64..=4).prop_map(int),
    ) {
        let dist_left = a.compose(&b.add(&c)).unwrap();
        let dist_right = a.compose(&b).unwrap().add(&a.compose(&c).unwrap());
        prop_assert_eq!(dist_left, dist_right);

        let dist_left = a.add(&b).compose(&c).unwrap();
        let dist_right = a.compose(&c).unwrap().add(&b.compose(&c).unwrap());
        prop_assert_eq!(dist_left, dist_right);

        let scaled = a.scale(&s).compose(&b).unwrap();
        prop_assert_eq!(&scaled, &a.compose(&b).unwrap().scale(&s));
        prop_assert_eq!(&scaled, &a.compose(&b.scale(&s)).unwrap());
    }

    #[test]
    fn identity_is_neutral(a in band_op()) {
        let id = BandOperator::identity();
        prop_assert_eq!(&id.compose(&a).unwrap(), &a);
        prop_assert_eq!(&a.compose(&id).unwrap(), &a);
    }

    #[test]
    fn application_is_linear(a in band_op(), b in band_op(), s in input()) {
        let summed: Vec<Scalar> = a
            .apply_truncated(&s, 8)
            .into_iter()
            .zip(b.apply_truncated(&s, 8))
            .map(|(x, y)| x + y)
            .collect();
        prop_assert_eq!(a.add(&b).apply_truncated(&s, 8), summed);
    }

    #[test]
    fn truncation_matches_application(a in band_op(), s in input()) {
        prop_assert_eq!(a.truncation(8).apply(&s), a.apply_truncated(&s, 8));
    }

    // The down shift followed by the up shift is the identity, and stays
    // the identity through an arbitrary operator on either side.
    #[test]
    fn shift_pair_cancels_through_any_operator(h in band_op()) {
        let f = BandOperator::down_shift();
        let g = BandOperator::up_shift();
        prop_assert_eq!(&h.compose(&f).unwrap().compose(&g).unwrap(), &h);
        prop_assert_eq!(&f.compose(&g).unwrap().compose(&h).unwrap(), &h);
    }
}
