mod common;

use proptest::prelude::*;
use rand::Rng;

use structured_lbfgs::operators::{five_point_laplacian, SparseSymmetric, SymmetricOperator};

use common::*;

fn random_operator(rng: &mut impl Rng, n: usize) -> SymmetricOperator {
    let mut triplets = Vec::new();
    for i in 0..n {
        triplets.push((i, i, rng.gen_range(0.5..3.0)));
        for j in 0..i {
            if rng.gen_bool(0.3) {
                let v = rng.gen_range(-1.0..1.0);
                triplets.push((i, j, v));
                triplets.push((j, i, v));
            }
        }
    }
    let sparse = SymmetricOperator::Sparse(SparseSymmetric::from_triplets(n, &triplets).unwrap());
    let diag =
        SymmetricOperator::diagonal((0..n).map(|_| rng.gen_range(0.0..2.0)).collect()).unwrap();
    let sum = SymmetricOperator::sum(diag, sparse).unwrap();
    SymmetricOperator::sum(sum, SymmetricOperator::scaled_identity(0.25, n)).unwrap()
}

#[test]
fn apply_matches_dense_and_is_symmetric() {
    let mut rng = rng(101);
    for _ in 0..200 {
        let n = rng.gen_range(1..=12);
        let op = random_operator(&mut rng, n);
        let dense = to_dmatrix(&op.to_dense());
        assert!((&dense - dense.transpose()).amax() == 0.0);
        let u = random_vec(&mut rng, n);
        let v = random_vec(&mut rng, n);
        let au = op.apply(&u).unwrap();
        let av = op.apply(&v).unwrap();
        assert!(rel_err(&au, &matvec(&dense, &u)) < 1e-14);

        // linearity
        let w: Vec<f64> = u.iter().zip(&v).map(|(a, b)| 2.0 * a - 3.0 * b).collect();
        let aw = op.apply(&w).unwrap();
        let combo: Vec<f64> = au.iter().zip(&av).map(|(a, b)| 2.0 * a - 3.0 * b).collect();
        assert!(rel_err(&aw, &combo) < 1e-13);

        // <Au, v> = <u, Av>
        let l: f64 = au.iter().zip(&v).map(|(a, b)| a * b).sum();
        let r: f64 = u.iter().zip(&av).map(|(a, b)| a * b).sum();
        assert!((l - r).abs() <= 1e-13 * (1.0 + l.abs()));

        let diag = op.diagonal_of();
        for i in 0..n {
            assert_eq!(diag[i], dense[(i, i)]);
        }
    }
}

#[test]
fn laplacian_is_spd_with_known_spectrum() {
    for m in 1..=8 {
        let op = five_point_laplacian(m, 1.0).unwrap();
        let dense = to_dmatrix(&op.to_dense());
        let (lo, hi) = extreme_eigenvalues(&dense);
        // eigenvalues 4 - 2 cos(i pi h) - 2 cos(j pi h), h = 1 / (m + 1)
        let c = (std::f64::consts::PI / (m + 1) as f64).cos();
        assert!((lo - (4.0 - 4.0 * c)).abs() < 1e-12, "m={m}: {lo}");
        assert!((hi - (4.0 + 4.0 * c)).abs() < 1e-12, "m={m}: {hi}");
        assert!(lo > 0.0);
    }
}

#[test]
fn laplacian_row_sums() {
    let op = five_point_laplacian(5, 2.0).unwrap();
    let ones = vec![1.0; 25];
    let r = op.apply(&ones).unwrap();
    // corners lose two neighbours, edges one, interior none
    assert_eq!(r[0], 4.0);
    assert_eq!(r[1], 2.0);
    assert_eq!(r[6], 0.0);
}

#[test]
fn dimension_mismatch_rejected() {
    let op = SymmetricOperator::identity(3);
    assert!(op.apply(&[1.0, 2.0]).is_err());
    assert!(SymmetricOperator::sum(op, SymmetricOperator::identity(4)).is_err());
}

#[test]
fn asymmetric_triplets_rejected() {
    assert!(SparseSymmetric::from_triplets(2, &[(0, 1, 1.0)]).is_err());
    assert!(SparseSymmetric::from_triplets(2, &[(0, 1, 1.0), (1, 0, 2.0)]).is_err());
    assert!(SparseSymmetric::from_triplets(2, &[(2, 0, 1.0)]).is_err());
    assert!(SparseSymmetric::from_triplets(1, &[(0, 0, f64::NAN)]).is_err());
}

proptest! {
    #[test]
    fn duplicates_are_summed(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let s = SparseSymmetric::from_triplets(2, &[(0, 1, a), (1, 0, a), (0, 1, b), (1, 0, b)]).unwrap();
        prop_assert_eq!(s.get(0, 1), Some(a + b));
        prop_assert_eq!(s.get(1, 0), Some(a + b));
    }

    #[test]
    fn scaled_identity_apply(scale in -5.0..5.0f64, v in prop::collection::vec(-1e3..1e3f64, 1..20)) {
        let op = SymmetricOperator::scaled_identity(scale, v.len());
        let out = op.apply(&v).unwrap();
        for (o, x) in out.iter().zip(&v) {
            prop_assert_eq!(*o, scale * x);
        }
    }
}
