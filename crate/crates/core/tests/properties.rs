use num_bigint::BigInt;
use proptest::prelude::*;

use durfee_core::partitions::{compose_cell, enumerate_partitions, PartCount, Partition, SectorCell};
use durfee_core::qseries::{gaussian_continued, pochhammer, qbinomial};
use durfee_core::rational::{rat, Rat};
use durfee_core::{Ctx, Series, ZMonomial};

const CUT: i64 = 12;

/// A series in one `z` with small integer coefficients and q-exponents in
/// halves between -2 and `CUT`.
fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec((-4i64..=2 * CUT, 0i64..3, -3i64..=3), 0..8).prop_map(|terms| {
        let mut s = Series::zero(1, rat(CUT));
        for (h, z, c) in terms {
            s.add_term(Rat::new(h, 2), ZMonomial::new(vec![z]), BigInt::from(c));
        }
        s
    })
}

fn unit_series() -> impl Strategy<Value = Series> {
    (series(), prop_oneof![Just(1i64), Just(-1)]).prop_map(|(s, lead)| {
        let mut u = Series::monomial(1, rat(CUT), lead, rat(0), ZMonomial::one(1));
        for (q, z, c) in s.terms() {
            if *q > rat(0) {
                u.add_term(*q, z.clone(), c.clone());
            }
        }
        u
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u64..7, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        let cut = lhs.cutoff().min(rhs.cutoff());
        prop_assert_eq!(lhs.truncate(cut), rhs.truncate(cut));
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        let cut = lhs.cutoff().min(rhs.cutoff());
        prop_assert_eq!(lhs.truncate(cut), rhs.truncate(cut));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_is_inverse(u in unit_series()) {
        let inv = u.invert().unwrap();
        prop_assert_eq!(&u * &inv, Series::one(1, rat(CUT)));
    }

    #[test]
    fn pascal_and_symmetry(top in 0i64..=12, bottom in 0i64..=12) {
        prop_assume!(bottom <= top);
        let ctx = Ctx::new(0, rat(100));
        let b = |t: i64, k: i64| qbinomial(ctx, rat(t), rat(k));
        prop_assert_eq!(b(top, bottom), b(top, top - bottom));
        if top >= 1 {
            let rhs = &b(top - 1, bottom) + &b(top - 1, bottom - 1).shift(rat(top - bottom), &ZMonomial::one(0));
            prop_assert_eq!(b(top, bottom), rhs);
        }
    }

    #[test]
    fn continued_pascal(top in -10i64..=10, bottom in 1i64..=6) {
        // [x;k] = [x-1;k] + q^{x-k} [x-1;k-1] for every integer x
        let as_series = |t: i64, k: i64| {
            let mut s = Series::zero(0, rat(1000));
            if let Some((shift, coeffs)) = gaussian_continued(t, k) {
                for (i, c) in coeffs.into_iter().enumerate() {
                    s.add_term(rat(shift + i as i64), ZMonomial::one(0), c);
                }
            }
            s
        };
        let rhs = &as_series(top - 1, bottom) + &as_series(top - 1, bottom - 1).shift(rat(top - bottom), &ZMonomial::one(0));
        prop_assert_eq!(as_series(top, bottom).truncate(rat(500)), rhs.truncate(rat(500)));
    }

    #[test]
    fn durfee_reconstruction_is_unique(p in partition()) {
        let d = p.durfee_square();
        let cell = SectorCell { m: d, n: d, a: 0, b: 0 };
        let mut hits = 0;
        for total in 0..=p.size() {
            for right in enumerate_partitions(total, PartCount::AtMost(d as usize), None) {
                let rest = p.size() - d * d;
                if total > rest {
                    continue;
                }
                for below in enumerate_partitions(rest - total, PartCount::Any, Some(d)) {
                    if compose_cell(cell, &right, &below).unwrap() == p {
                        hits += 1;
                    }
                }
            }
        }
        prop_assert_eq!(hits, 1);
    }
}

#[test]
fn pochhammer_counts_partitions() {
    // coefficient of z^m q^n in 1/(zq)_M counts partitions of n into m parts at most M
    for big_m in 0..=6u64 {
        let ctx = Ctx::new(1, rat(20));
        let gf = pochhammer(ctx, &ZMonomial::var(1, 0), rat(1), big_m).invert().unwrap();
        for m in 0..=20u64 {
            for n in 0..=20u64 {
                let want = enumerate_partitions(n, PartCount::Exactly(m as usize), Some(big_m)).len();
                let got = gf.coefficient(rat(n as i64), &ZMonomial::new(vec![m as i64]));
                assert_eq!(got, BigInt::from(want), "M={big_m} m={m} n={n}");
            }
        }
    }
}
