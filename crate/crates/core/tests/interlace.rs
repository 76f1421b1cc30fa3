mod common;

use common::{counterexample, poly_matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tnloop::factor::{factor, FactorError};
use tnloop::interlace::{
    check_same_row_col, hurwitz, interlaces_routh, interlaces_sturm, one_by_two, reverse, SameRowColViolation,
};
use tnloop::random::poly_pair;
use tnloop::scalar::rat;
use tnloop::tncheck::{default_scan, is_tn_window};
use tnloop::{LoopMatrix, RatPoly};

fn poly(c: &[i64]) -> RatPoly {
    RatPoly::new(c.iter().map(|&x| rat(x)).collect())
}

#[test]
fn hurwitz_layout() {
    let (p0, p1) = (poly(&[11, 12, 13, 14]), poly(&[21, 22, 23, 24]));
    let h = hurwitz(&p0, &p1);
    let w = h.window(&[1, 2, 3, 4], &[1, 2, 3, 4]);
    let expect = [[21, 22, 23, 24], [11, 12, 13, 14], [0, 21, 22, 23], [0, 11, 12, 13]];
    for (i, row) in expect.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            assert_eq!(w[(i, j)], rat(x));
        }
    }
    let one = hurwitz(&poly(&[1]), &poly(&[1]));
    assert_eq!(one, poly_matrix(&[&[&[1]], &[&[1]]]));
}

#[test]
fn counterexample_passes_pairwise_checks_but_is_not_tn() {
    let m = counterexample();
    assert!(check_same_row_col(&m).unwrap().is_empty());
    let w = is_tn_window(&m, 2, 2).witness().unwrap();
    assert_eq!(w.value, rat(-22));
    assert!(check_same_row_col(&LoopMatrix::identity(3)).unwrap().is_empty());
}

#[test]
fn swapped_rows_violate_column_condition() {
    // p_{2,1} = t + 2 does not interlace p_{1,1} = t + 1
    let m = poly_matrix(&[&[&[1, 1]], &[&[2, 1]]]);
    assert_eq!(check_same_row_col(&m).unwrap(), vec![SameRowColViolation::Column { i: 1, i2: 2, j: 1 }]);
}

#[test]
fn oracles_agree_with_hurwitz_total_nonnegativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..300 {
        let (p0, p1) = poly_pair(&mut rng, 6);
        let sturm = interlaces_sturm(&p0, &p1);
        let routh = interlaces_routh(&p0, &p1).unwrap();
        assert_eq!(sturm, routh, "p0 = {p0}, p1 = {p1}");
        let h = hurwitz(&p0, &p1);
        let certified = match factor(&h) {
            Ok(r) => r.certified,
            Err(FactorError::NotTotallyNonnegative { .. }) => false,
            Err(e) => panic!("{e} for p0 = {p0}, p1 = {p1}"),
        };
        assert_eq!(sturm, certified, "factor: p0 = {p0}, p1 = {p1}");
        let (span, order) = default_scan(2);
        assert_eq!(sturm, is_tn_window(&h, span, order).is_pass(), "window: p0 = {p0}, p1 = {p1}");
        if sturm {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 50 && no > 50, "{yes} / {no}");
}

#[test]
fn one_by_two_matches_reversed_interlacing() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (a, b) = poly_pair(&mut rng, 5);
        // p1 carries the weakly larger degree here.
        let (p0, p1) = (b, a);
        if p1.is_zero() {
            continue;
        }
        let d = p1.degree().unwrap();
        let expected = match (reverse(&p0, d), reverse(&p1, d)) {
            (Ok(r0), Ok(r1)) => interlaces_sturm(&r0, &r1),
            _ => false,
        };
        let m = one_by_two(&p1, &p0);
        let certified = match factor(&m) {
            Ok(r) => r.certified,
            Err(FactorError::NotTotallyNonnegative { .. }) => false,
            Err(e) => panic!("{e} for p0 = {p0}, p1 = {p1}"),
        };
        assert_eq!(expected, certified, "p0 = {p0}, p1 = {p1}");
    }
}
