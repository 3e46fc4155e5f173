//! Exact integer linear algebra: Hermite and Smith forms, kernels,
//! integer solving, abelian group invariants and a sparse elimination path
//! for large boundary matrices.

mod abelian;
mod hnf;
mod int;
mod matrix;
pub mod modp;
mod snf;
mod solve;
mod sparse;

pub use abelian::{AbelianHom, AbelianInvariants, AbelianQuotient, Subgroup};
pub use hnf::{hnf, hnf_in_place, hnf_only, lattice_basis, HermiteForm};
pub use int::Int;
pub use matrix::{IntMatrix, SparseMatrix};
pub use snf::{smith_divisors, snf, SmithForm};
pub use solve::{cokernel_invariants, det, kernel_basis, rank, solve_integer};
pub use sparse::{elementary_divisors, sparse_elementary_divisors, SPARSE_THRESHOLD};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate sparse entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("sparse entry ({row}, {col}) out of range")]
    IndexOutOfRange { row: usize, col: usize },
}

/// Invariants of the cokernel of a sparse relation matrix (rows =
/// relations), using the sparse path when the matrix is large.
pub fn sparse_cokernel_invariants(m: &SparseMatrix) -> AbelianInvariants {
    let d = elementary_divisors(m);
    let nonzero = d.iter().filter(|x| !x.is_zero()).count();
    AbelianInvariants::new(
        m.cols() - nonzero,
        d.into_iter().filter(|x| !x.is_zero()).collect(),
    )
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
                .prop_map(move |rows| IntMatrix::from_rows(c, &rows))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn smith_is_a_valid_factorization(m in small_matrix()) {
            let s = snf(&m);
            let d = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
            prop_assert_eq!(d, IntMatrix::diagonal(m.rows(), m.cols(), &s.divisors));
            for w in s.divisors.windows(2) {
                prop_assert!(w[0].divides(&w[1]));
            }
            prop_assert!(det(&s.left).is_unit());
            prop_assert!(det(&s.right).is_unit());
        }

        #[test]
        fn cokernel_invariant_under_unimodular_ops(
            m in small_matrix(),
            ops in proptest::collection::vec((0usize..8, 0usize..8, -3i64..=3, any::<bool>()), 0..12),
        ) {
            let before = cokernel_invariants(&m, m.cols()).unwrap();
            let mut a = m.clone();
            for (x, y, k, on_rows) in ops {
                if on_rows {
                    let (x, y) = (x % a.rows(), y % a.rows());
                    if x != y { a.add_row_multiple(x, y, &Int::from(k)); } else { a.swap_rows(0, x); }
                } else {
                    let (x, y) = (x % a.cols(), y % a.cols());
                    if x != y { a.add_col_multiple(x, y, &Int::from(k)); } else { a.swap_cols(0, x); }
                }
            }
            prop_assert_eq!(before, cokernel_invariants(&a, a.cols()).unwrap());
        }

        #[test]
        fn kernel_vectors_annihilate(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), m.cols() - rank(&m));
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Int::is_zero));
                let first = v.iter().find(|x| !x.is_zero()).unwrap();
                prop_assert!(!first.is_negative());
            }
        }
    }
}
