use std::collections::{BTreeMap, HashSet};

use gf2core::{homology_dims, BitMatrix, BitVec, GradedMap, GradedVectorSpace};
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(prop::collection::vec(0u8..2, cols), rows).prop_map(move |r| {
        if rows == 0 {
            BitMatrix::zeros(0, cols)
        } else {
            BitMatrix::from_u8_rows(&r).unwrap()
        }
    })
}

fn sized_matrix() -> impl Strategy<Value = BitMatrix> {
    (0usize..9, 0usize..9).prop_flat_map(|(r, c)| matrix(r, c))
}

fn all_vectors(n: usize) -> impl Iterator<Item = BitVec> {
    (0u32..(1 << n)).map(move |m| BitVec::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
}

proptest! {
    #[test]
    fn rank_plus_nullity(m in sized_matrix()) {
        prop_assert_eq!(m.rank() + m.kernel_basis().cols(), m.cols());
    }

    #[test]
    fn kernel_is_annihilated_and_independent(m in sized_matrix()) {
        let k = m.kernel_basis();
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn rank_matches_transpose(m in sized_matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn solve_is_correct_or_inconsistent(m in sized_matrix(), seed in any::<u64>()) {
        let b = BitVec::from_indices(m.rows(), (0..m.rows()).filter(|i| seed >> (i % 64) & 1 == 1));
        match m.solve(&b) {
            Some(x) => prop_assert_eq!(m.mul_vec(&x), b),
            None => {
                let reachable: HashSet<BitVec> = all_vectors(m.cols()).map(|x| m.mul_vec(&x)).collect();
                prop_assert!(!reachable.contains(&b));
            }
        }
    }

    #[test]
    fn solve_respects_any_pivot_order(m in sized_matrix(), rot in 0usize..8) {
        let b = m.mul_vec(&BitVec::from_indices(m.cols(), (0..m.cols()).step_by(2)));
        let order: Vec<usize> = (0..m.cols()).map(|i| (i + rot) % m.cols().max(1)).collect();
        let x = m.solve_with_order(&b, Some(&order)).unwrap();
        prop_assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn homology_matches_enumeration(a in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| matrix(r, c)), seed in any::<u64>()) {
        // C' --a--> C --b--> C'' with b built from annihilators of im(a).
        let n = a.rows();
        let ann = a.transpose().kernel_basis();
        let out_dim = 1 + (seed % 4) as usize;
        let mut b = BitMatrix::zeros(out_dim, n);
        for r in 0..out_dim {
            for k in 0..ann.cols() {
                if (seed >> (r * 5 + k)) & 1 == 1 {
                    let col = ann.column(k);
                    for i in col.ones() { b.flip(r, i); }
                }
            }
        }
        prop_assert!(b.mul(&a).unwrap().is_zero());
        let space = |d: i64, k: usize| GradedVectorSpace::with_dims(-5, 5, [(d, k)]).unwrap();
        let d_in = GradedMap::new(space(1, a.cols()), space(0, n), -1, BTreeMap::from([(1, a.clone())])).unwrap();
        let d_out = GradedMap::new(space(0, n), space(-1, out_dim), -1, BTreeMap::from([(0, b.clone())])).unwrap();
        let h = homology_dims(&d_in, &d_out).unwrap();

        let kernel = all_vectors(n).filter(|v| b.mul_vec(v).is_zero()).count();
        let image: HashSet<BitVec> = all_vectors(a.cols()).map(|u| a.mul_vec(&u)).collect();
        let brute = (kernel / image.len()).trailing_zeros() as usize;
        prop_assert_eq!(h.dim(0), brute);
    }
}
