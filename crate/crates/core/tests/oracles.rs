//! Reference values, each checked against an independent computation
//! (enumeration, hand expansion, or a closed form).

use num_bigint::BigInt;

use durfee_core::catalog::{
    build_rs_system, build_shift_system, build_theorem31, build_theorem32, build_theorem33, catalog_system,
};
use durfee_core::identities::{lhs_product, verify_finite, verify_specialized, verify_symmetric};
use durfee_core::matrix::RationalMatrix;
use durfee_core::partitions::{
    cell_generating_function, compose_cell, count_pm, enumerate_partitions, sector_coverage_check, PartCount,
    Partition, SectorCell,
};
use durfee_core::qseries::{pochhammer, pochhammer_inf, qbinomial};
use durfee_core::rational::{rat, ratio};
use durfee_core::ucpf::{
    check_recursions, check_finite_product, lattice_sum, ucpf_infinity, LatticeSumSpec, TopRule, ZAssign,
};
use durfee_core::{Bound, Ctx, DurfeeSystem, Sector, Series, ZMonomial};

fn q_coeffs(s: &Series, upto: i64) -> Vec<i64> {
    let one = ZMonomial::one(s.dim());
    (0..=upto).map(|e| i64::try_from(s.coefficient(rat(e), &one)).unwrap()).collect()
}

fn part(v: &[u64]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn products_and_inverses() {
    let ctx = Ctx::new(0, rat(10));
    let one = ZMonomial::one(0);
    // (1-q)(1-q^2)(1-q^3) expanded by hand
    assert_eq!(q_coeffs(&pochhammer(ctx, &one, rat(1), 3), 6), vec![1, -1, -1, 0, 1, 1, -1]);
    let inv = pochhammer(ctx, &one, rat(1), 2).invert().unwrap();
    let by_count: Vec<i64> = (0..=6).map(|n| enumerate_partitions(n, PartCount::Any, Some(2)).len() as i64).collect();
    assert_eq!(q_coeffs(&inv, 6), by_count);
    assert_eq!(by_count, vec![1, 1, 2, 2, 3, 3, 4]);
    let euler = pochhammer_inf(ctx, &one, rat(1)).unwrap().invert().unwrap();
    assert_eq!(q_coeffs(&euler, 6), vec![1, 1, 2, 3, 5, 7, 11]);
    let z = ZMonomial::var(1, 0);
    let gf = pochhammer_inf(Ctx::new(1, rat(6)), &z, rat(1)).unwrap().invert().unwrap();
    assert_eq!(gf.coefficient(rat(3), &ZMonomial::new(vec![2])), BigInt::from(1));
    // z^2 q^4 in 1/(zq)_2: only [2,2]
    let gf = pochhammer(Ctx::new(1, rat(8)), &z, rat(1), 2).invert().unwrap();
    assert_eq!(gf.coefficient(rat(4), &ZMonomial::new(vec![2])), BigInt::from(1));
    assert_eq!(count_pm(2, 2, 4), BigInt::from(1));
}

#[test]
fn binomials_count_box_partitions() {
    let ctx = Ctx::new(0, rat(20));
    for top in 0..=8u64 {
        for bottom in 0..=top {
            let s = qbinomial(ctx, rat(top as i64), rat(bottom as i64));
            let width = top - bottom;
            let want: Vec<i64> = (0..=(bottom * width) as i64)
                .map(|n| enumerate_partitions(n as u64, PartCount::AtMost(bottom as usize), Some(width)).len() as i64)
                .collect();
            assert_eq!(q_coeffs(&s, (bottom * width) as i64), want, "[{top};{bottom}]");
        }
    }
    assert_eq!(q_coeffs(&qbinomial(ctx, rat(4), rat(2)), 4), vec![1, 1, 2, 1, 1]);
    assert!(qbinomial(ctx, rat(1), rat(2)).is_zero());
}

#[test]
fn partition_counts() {
    assert_eq!(count_pm(3, 2, 4), BigInt::from(2));
    assert_eq!(count_pm(5, 0, 0), BigInt::from(1));
    assert_eq!(count_pm(1, 2, 3), BigInt::from(0));
    assert_eq!(enumerate_partitions(4, PartCount::Any, None).len(), 5);
}

#[test]
fn figure_one_dissection() {
    let p = part(&[6, 4, 4, 2]);
    assert_eq!(p.durfee_square(), 3);
    let cell = SectorCell { m: 3, n: 3, a: 0, b: 0 };
    assert_eq!(compose_cell(cell, &part(&[3, 1, 1]), &part(&[2])).unwrap(), p);
    assert_eq!(part(&[1, 1, 1, 1]).durfee_square(), 1);
    let cell = SectorCell { m: 0, n: 1, a: 1, b: 0 };
    assert_eq!(compose_cell(cell, &part(&[2]), &Partition::empty()).unwrap(), part(&[3]));
}

#[test]
fn cell_series_match_compositions() {
    // summing q^|compose| over all attachments reproduces the cell series
    let cutoff = 10u64;
    for m in 0..=3u64 {
        for n in 0..=3u64 {
            for a in 0..=1 {
                for b in 0..=1 {
                    let cell = SectorCell { m, n, a, b };
                    let gf = cell_generating_function(Ctx::new(0, rat(cutoff as i64)), cell, false).unwrap();
                    let mut counts = vec![0i64; cutoff as usize + 1];
                    let rect = cell.rect_rows() * cell.rect_cols();
                    for r in 0..=cutoff {
                        for l in 0..=cutoff {
                            if rect + r + l > cutoff {
                                continue;
                            }
                            for right in enumerate_partitions(r, PartCount::AtMost(n as usize), None) {
                                for below in enumerate_partitions(l, PartCount::Any, Some(m)) {
                                    let size = compose_cell(cell, &right, &below).unwrap().size();
                                    counts[size as usize] += 1;
                                }
                            }
                        }
                    }
                    assert_eq!(q_coeffs(&gf, cutoff as i64), counts, "{cell:?}");
                }
            }
        }
    }
}

#[test]
fn coverage_and_missing_bipartitions() {
    let r = sector_coverage_check(&build_theorem31(), 6).unwrap();
    assert!(r.pass && r.overlap_count == 0 && r.gap_count == 0);
    let vacuum = build_theorem31().without_sector(1).unwrap();
    let r = sector_coverage_check(&vacuum, 2).unwrap();
    assert!(!r.pass);
    let first = &r.gaps[0];
    // the missing ones have lambda(1) empty and lambda(2) a single row
    assert!(first.0[0].is_empty() && first.0[1].len() == 1, "{first}");
    assert!(r.gaps.iter().all(|g| g.0[0].is_empty() && g.0[1].len() == 1));
    // dropping that sector also breaks the identity, at the same size
    let r = verify_finite(&vacuum, &[Bound::Infinite, Bound::Infinite], rat(6)).unwrap();
    let w = r.witness.unwrap();
    assert_eq!((w.q_exp.as_str(), w.z_exp), ("1/1", vec![0, 1]));
}

#[test]
fn identity_examples() {
    let inf = Bound::Infinite;
    let t31 = build_theorem31();
    let t32 = build_theorem32();
    let lhs = lhs_product(Ctx::new(2, rat(14)), &[inf, inf]).at_z_one();
    assert_eq!(q_coeffs(&lhs, 6), vec![1, 2, 5, 10, 20, 36, 65]);
    assert!(verify_finite(&t31, &[inf, inf], rat(14)).unwrap().pass);
    assert!(verify_finite(&t32, &[Bound::Finite(3), Bound::Finite(2)], rat(12)).unwrap().pass);
    assert!(verify_symmetric(&t31, &[2, 2], &[2, 2], &[0, 0]).unwrap().pass);
    assert!(verify_symmetric(&t32, &[1, 2], &[2, 1], &[1, 0]).unwrap().pass);
    assert!(verify_specialized(&build_theorem33(2).unwrap(), &[0, 0], rat(12)).unwrap().pass);
    assert!(verify_specialized(&t31, &[2, -1], rat(10)).unwrap().pass);
    let classical = DurfeeSystem::new(RationalMatrix::scalar(rat(1)), vec![Sector::from_integers(&[0], &[0], &[0])]).unwrap();
    assert!(verify_specialized(&classical, &[0], rat(14)).unwrap().pass);
}

#[test]
fn catalog_shapes() {
    assert_eq!(build_rs_system(1, 1).unwrap().len(), 1);
    assert_eq!(build_rs_system(2, 1).unwrap().len(), 2);
    assert_eq!(build_rs_system(2, 2).unwrap().len(), 4);
    let t33 = build_theorem33(1).unwrap();
    assert_eq!(t33.k, RationalMatrix::scalar(rat(2)));
    assert_eq!(t33.sectors, vec![Sector::from_integers(&[0], &[0], &[0]), Sector::from_integers(&[1], &[1], &[0])]);
    assert_eq!(build_theorem33(3).unwrap().len(), 4);
    let id = build_shift_system(0, 1, 1).unwrap();
    assert_eq!((id.len(), id.k), (1, RationalMatrix::identity(2)));
    let k = RationalMatrix::identity(2).shift_deform(2, &[1, 2]).unwrap();
    assert_eq!(k, RationalMatrix::from_integers(&[vec![3, 4], vec![4, 9]]).unwrap());
    assert_eq!(k.determinant(), rat(11));
    assert_eq!(catalog_system("theorem4.1:1,1,1").unwrap().len(), 3);
    assert!(catalog_system("theorem9.9").is_err());
}

#[test]
fn limit_sums() {
    let s = ucpf_infinity(&RationalMatrix::scalar(rat(2)), &[rat(0)], &[ZAssign::One], rat(6)).unwrap();
    assert_eq!(q_coeffs(&s, 6), vec![1, 1, 1, 1, 2, 2, 3]);
    let theta = lattice_sum(&LatticeSumSpec::new(RationalMatrix::scalar(ratio(1, 2))), rat(2)).unwrap().at_z_one();
    let euler = pochhammer_inf(Ctx::new(0, rat(2)), &ZMonomial::one(0), rat(1)).unwrap().invert().unwrap();
    let mut numerator = Series::zero(0, rat(2));
    for (q, c) in [(rat(0), 1), (ratio(1, 4), 2), (rat(1), 2), (ratio(9, 4), 2)] {
        numerator.add_term(q, ZMonomial::one(0), BigInt::from(c));
    }
    assert_eq!(theta, (&numerator * &euler).truncate(rat(2)));
}

#[test]
fn finite_identity_examples() {
    let t32 = build_theorem32();
    for (m, n) in [([0, 0], [0, 0]), ([1, 1], [1, 1])] {
        let r = check_finite_product(&t32, &m, &n).unwrap();
        assert!(r.pass, "{r}");
    }
    assert!(check_finite_product(&build_theorem33(1).unwrap(), &[3], &[3]).unwrap().pass);
    // the sector-zero P family obeys its recursion on the interior of the box
    let grid: Vec<Vec<i64>> = (1..=3).flat_map(|a| (1..=3).map(move |b| vec![a, b])).collect();
    let r = check_recursions(&t32, &grid, &[], TopRule::ZeroExtended, 0).unwrap();
    assert!(r.checked.iter().filter(|c| c.sector == 0).all(|c| c.pass));
}
