mod common;

use common::poly_matrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tnloop::random::planar_network;
use tnloop::tl::{build_delta_machinery, expand_decorated, verify_dcmd_det_report, DecoratedCmDiagram, Dot};
use tnloop::tncheck::{find_special_sw_corner, CornerLocation};
use tnloop::{LoopMatrix, Rational};

use Dot::{Black as B, White as W};

fn corner_at(m: &LoopMatrix, i: i64, j: i64) -> CornerLocation<Rational> {
    CornerLocation { i_star: i, j_star: j, a0: m.unfold_entry(i, j), b0: m.unfold_entry(i - 1, j) }
}

/// (4,2)-periodic with every row of the first period starting in column 1,
/// so `(4, 1)` is a special SW corner.
fn largereg() -> LoopMatrix {
    poly_matrix(&[
        &[&[1, 2, 1], &[3, 1, 2]],
        &[&[2, 1, 1], &[1, 4, 1]],
        &[&[3, 5, 2], &[2, 1, 3]],
        &[&[2, 3, 1], &[5, 2, 1]],
    ])
}

#[test]
fn largereg_sets_and_diagram() {
    let m = largereg();
    let corner = corner_at(&m, 4, 1);
    let dm = build_delta_machinery(&m, &corner, &[4, 6, 8, 12], &[2, 3, 4, 5]).unwrap();
    assert_eq!(dm.a_rows, vec![4, 8, 12]);
    assert_eq!(dm.c_cols, vec![1, 3, 5]);
    assert_eq!(dm.tilde_rows, vec![3, 4, 6, 7, 8, 11, 12]);
    assert_eq!(dm.tilde_cols, vec![1, 2, 3, 3, 4, 5, 5]);
    assert_eq!(dm.diagram.left(), &[B, W, B, W, W, B, W]);
    assert_eq!(dm.diagram.right(), &[None, None, Some(B), None, None, None, None]);
    assert_eq!(dm.diagram.gray_blocks(), &[0, 3, 5]);
    assert_eq!(dm.tilde, m.window(&dm.tilde_rows, &dm.tilde_cols));
}

#[test]
fn largereg_delta_s() {
    let m = largereg();
    let dm = build_delta_machinery(&m, &corner_at(&m, 4, 1), &[4, 6, 8, 12], &[2, 3, 4, 5]).unwrap();
    let cols = [2, 3, 4, 5];
    assert_eq!(dm.delta_s(&m, &[]).unwrap(), m.window(&[4, 6, 8, 12], &cols));
    assert_eq!(dm.delta_s(&m, &[8]).unwrap(), m.window(&[4, 6, 7, 12], &cols));
    assert_eq!(dm.delta_s(&m, &[4, 12]).unwrap(), m.window(&[3, 6, 8, 11], &cols));
    assert!(dm.delta_s(&m, &[6]).is_err());
    let report = verify_dcmd_det_report(&m, &dm.corner, &dm.rows, &dm.cols).unwrap();
    assert!(report.all(), "{report:?}");
}

#[test]
fn two_one_example_sets() {
    // rows b(t) and a(t)
    let m = poly_matrix(&[&[&[2, 3, 1]], &[&[1, 4, 3, 1]]]);
    let corner = corner_at(&m, 2, 1);
    let dm = build_delta_machinery(&m, &corner, &[2, 5, 8], &[5, 6, 7]).unwrap();
    assert_eq!(dm.a_rows, vec![2, 8]);
    assert_eq!(dm.c_cols, vec![1, 4]);
    assert!(verify_dcmd_det_report(&m, &corner, &[2, 5, 8], &[5, 6, 7]).unwrap().all());
}

#[test]
fn two_gray_blocks_expand_to_four_terms() {
    let d = DecoratedCmDiagram::new(vec![B, B, W, W, W], vec![None, None, Some(B), None, None]).unwrap();
    let mut shapes: Vec<(i8, Vec<Dot>)> = expand_decorated(&d).into_iter().map(|(s, c)| (s, c.right)).collect();
    let mut expected = vec![
        (1, vec![W, B, B, W, B]),
        (-1, vec![W, B, B, B, W]),
        (-1, vec![B, W, B, W, B]),
        (1, vec![B, W, B, B, W]),
    ];
    shapes.sort();
    expected.sort();
    assert_eq!(shapes, expected);
    assert!(DecoratedCmDiagram::new(vec![B, W, B], vec![None, Some(B), None]).is_err());
}

#[test]
fn non_special_corner_is_rejected() {
    let m = largereg();
    assert!(build_delta_machinery(&m, &corner_at(&m, 3, 1), &[3], &[2]).is_err());
}

#[test]
fn random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 40 {
        let (n, m) = if rng.gen_bool(0.5) { (2, 1) } else { (4, 2) };
        let pieces = rng.gen_range(2..=5);
        let mat = planar_network(&mut rng, n, m, pieces).folded_weight_matrix();
        let Ok(Some(corner)) = find_special_sw_corner(&mat) else { continue };
        let rows_pool: Vec<i64> = (corner.i_star - 1..corner.i_star + 2 * n as i64).collect();
        let cols_pool: Vec<i64> = (corner.j_star..corner.j_star + 3 * m as i64 + 2).collect();
        for _ in 0..5 {
            let k = rng.gen_range(1..=3);
            let mut rows: Vec<i64> = rows_pool.choose_multiple(&mut rng, k).copied().collect();
            let mut cols: Vec<i64> = cols_pool.choose_multiple(&mut rng, k).copied().collect();
            rows.sort_unstable();
            cols.sort_unstable();
            let report = verify_dcmd_det_report(&mat, &corner, &rows, &cols).unwrap();
            assert!(report.all(), "{mat} {corner:?} {rows:?} {cols:?} {report:?}");
        }
        checked += 1;
    }
}
