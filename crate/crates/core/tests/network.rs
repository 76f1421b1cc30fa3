mod common;

use common::{example_folded, example_network, index_subsets};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tnloop::network::{concatenate, elementary_row_network, identity_network, rotate_network, transpose_network, Network};
use tnloop::random::{planar_network, small_planar_network};
use tnloop::scalar::rat;
use tnloop::tncheck::is_tn_window;
use tnloop::{CylNetwork, LaurentPoly, LoopMatrix};

fn folded_by_paths(net: &CylNetwork) -> LoopMatrix {
    LoopMatrix::from_fn(net.n(), net.m(), |i, j| {
        LaurentPoly::from_terms(net.enumerate_paths(i, j).unwrap().into_iter().map(|p| (p.rotor, p.weight)))
    })
}

#[test]
fn example_network_paths() {
    let net = example_network();
    let p13 = net.enumerate_paths(1, 3).unwrap();
    assert_eq!(p13.len(), 1);
    assert_eq!((p13[0].rotor, p13[0].weight.clone()), (-1, rat(1)));
    let p22 = net.enumerate_paths(2, 2).unwrap();
    assert_eq!(p22.len(), 1);
    assert_eq!(p22[0].rotor, 0);
    assert_eq!(net.folded_weight_matrix(), example_folded());
    assert_eq!(folded_by_paths(&net), example_folded());
}

#[test]
fn edgeless_network_has_no_paths() {
    let net = Network::<tnloop::Rational>::new(2, vec![], vec![0], vec![1]).unwrap();
    assert!(net.enumerate_paths(1, 1).unwrap().is_empty());
}

#[test]
fn example_glv_fixtures() {
    let net = example_network();
    let w = net.folded_weight_matrix();
    for (rows, cols) in [(vec![1, 3], vec![4, 6]), (vec![1, 3], vec![1, 3]), (vec![3, 4], vec![3, 4])] {
        let det = w.window(&rows, &cols).determinant().unwrap();
        assert_eq!(net.glv_minor(&rows, &cols).unwrap(), det, "rows {rows:?} cols {cols:?}");
    }
    assert_eq!(net.glv_minor(&[3, 4], &[3, 4]).unwrap(), rat(0));
    assert_eq!(net.glv_minor(&[1, 3], &[1, 3]).unwrap(), rat(1));
}

#[test]
fn concatenation_multiplies() {
    let net = example_network();
    let sq = concatenate(&net, &net).unwrap();
    let w = net.folded_weight_matrix();
    assert_eq!(sq.folded_weight_matrix(), w.mul(&w).unwrap());
    let id = identity_network(3).unwrap();
    assert_eq!(concatenate(&id, &net).unwrap().folded_weight_matrix(), w);
    let a = elementary_row_network(3, 1, rat(2)).unwrap();
    let b = elementary_row_network(3, 3, rat(5)).unwrap();
    let ab = concatenate(&a, &b).unwrap().folded_weight_matrix();
    assert_eq!(ab, a.folded_weight_matrix().mul(&b.folded_weight_matrix()).unwrap());
}

#[test]
fn transpose_and_rotation() {
    let net = example_network();
    let w = net.folded_weight_matrix();
    assert_eq!(transpose_network(&net).folded_weight_matrix(), w.transpose());
    assert_eq!(transpose_network(&transpose_network(&net)).folded_weight_matrix(), w);
    assert_eq!(rotate_network(&net).folded_weight_matrix(), w.rotate());
    let id = identity_network::<tnloop::Rational>(2).unwrap();
    assert_eq!(transpose_network(&id).folded_weight_matrix(), LoopMatrix::identity(2));
}

#[test]
fn random_networks_dp_matches_paths_and_multiplies() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = rand::Rng::gen_range(&mut rng, 1..=3);
        let m = rand::Rng::gen_range(&mut rng, 1..=3);
        let a = planar_network(&mut rng, n, m, 3);
        let b = planar_network(&mut rng, m, n, 2);
        assert_eq!(a.folded_weight_matrix(), folded_by_paths(&a));
        let ab = concatenate(&a, &b).unwrap().folded_weight_matrix();
        assert_eq!(ab, a.folded_weight_matrix().mul(&b.folded_weight_matrix()).unwrap());
        assert!(is_tn_window(&a.folded_weight_matrix(), 2, 2).is_pass());
    }
}

#[test]
fn glv_matches_determinants_on_random_planar_networks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..8 {
        let n = rand::Rng::gen_range(&mut rng, 1..=3);
        let m = rand::Rng::gen_range(&mut rng, 1..=3);
        let net = small_planar_network(&mut rng, n, m, 8, 12, 1);
        let w = net.folded_weight_matrix();
        for k in 1..=2 {
            for rows in index_subsets(1..=(2 * n) as i64, k) {
                for cols in index_subsets(1..=(2 * m) as i64, k) {
                    let det = w.window(&rows, &cols).determinant().unwrap();
                    assert_eq!(net.glv_minor(&rows, &cols).unwrap(), det, "{net:?} {rows:?} {cols:?}");
                }
            }
        }
    }
}
