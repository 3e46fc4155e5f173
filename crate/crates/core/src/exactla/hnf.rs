use super::int::Int;
use super::matrix::IntMatrix;

/// Row Hermite normal form.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Pivot column of each nonzero row of `h`, in order.
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Returns H = U·M in row Hermite normal form with U unimodular.
pub fn hnf(m: &IntMatrix) -> HermiteForm {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let pivots = hnf_in_place(&mut h, Some(&mut u), m.cols());
    HermiteForm { h, u, pivots }
}

/// Hermite form without the transform.
pub fn hnf_only(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut h = m.clone();
    let pivots = hnf_in_place(&mut h, None, m.cols());
    (h, pivots)
}

/// Row-reduces `a` in place, looking for pivots only in columns
/// `0..col_limit` (further columns are carried along). Row operations are
/// mirrored on `track` when given. Returns the pivot columns; rows past the
/// pivot count are zero on the searched columns.
pub fn hnf_in_place(
    a: &mut IntMatrix,
    mut track: Option<&mut IntMatrix>,
    col_limit: usize,
) -> Vec<usize> {
    let nrows = a.rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..col_limit {
        if r == nrows {
            break;
        }
        loop {
            // minimal |entry| in column c among rows r.., ties -> lowest row
            let mut best: Option<usize> = None;
            for i in r..nrows {
                let v = a.get(i, c);
                if v.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if v.cmp_abs(a.get(b, c)).is_lt() {
                            best = Some(i)
                        }
                    }
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, p);
            }
            let piv = a.get(r, c).clone();
            let mut clean = true;
            for i in r + 1..nrows {
                let v = a.get(i, c);
                if v.is_zero() {
                    continue;
                }
                let q = v.div_round(&piv);
                let nq = -q;
                a.add_row_multiple(i, r, &nq);
                if let Some(t) = track.as_deref_mut() {
                    t.add_row_multiple(i, r, &nq);
                }
                if !a.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < nrows && !a.get(r, c).is_zero() {
            if a.get(r, c).is_negative() {
                a.negate_row(r);
                if let Some(t) = track.as_deref_mut() {
                    t.negate_row(r);
                }
            }
            let piv = a.get(r, c).clone();
            for i in 0..r {
                let q = a.get(i, c).div_floor(&piv);
                if !q.is_zero() {
                    let nq = -q;
                    a.add_row_multiple(i, r, &nq);
                    if let Some(t) = track.as_deref_mut() {
                        t.add_row_multiple(i, r, &nq);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    pivots
}

/// Hermite-reduced basis of the lattice spanned by `rows`, zero rows removed.
pub fn lattice_basis(cols: usize, rows: &[Vec<Int>]) -> IntMatrix {
    let m = IntMatrix::from_rows(cols, rows);
    let (h, piv) = hnf_only(&m);
    h.submatrix(0..piv.len(), 0..cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_hnf(h: &IntMatrix, pivots: &[usize]) -> bool {
        for (r, &c) in pivots.iter().enumerate() {
            let p = h.get(r, c);
            if !p.is_negative() && !p.is_zero() {
                for i in 0..r {
                    let v = h.get(i, c);
                    if v.is_negative() || v >= p {
                        return false;
                    }
                }
                for i in r + 1..h.rows() {
                    if !h.get(i, c).is_zero() {
                        return false;
                    }
                }
                for cc in 0..c {
                    if !h.get(r, cc).is_zero() {
                        return false;
                    }
                }
            } else {
                return false;
            }
        }
        (pivots.len()..h.rows()).all(|r| h.row(r).iter().all(Int::is_zero))
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(3);
        let f = hnf(&id);
        assert_eq!(f.h, id);
        assert_eq!(f.u, id);
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zero(2, 3);
        let f = hnf(&z);
        assert_eq!(f.h, z);
        assert_eq!(f.u, IntMatrix::identity(2));
        assert!(f.pivots.is_empty());
    }

    #[test]
    fn empty_matrix() {
        let z = IntMatrix::zero(0, 0);
        let f = hnf(&z);
        assert_eq!(f.h.rows(), 0);
    }

    /// Oracle: the row lattice of [[2,4],[1,1]] is spanned by (1,1),(0,2)
    /// since det = -2 and the first column gcd is 1. Enumerating all 2x2
    /// integer matrices with entries in [-6,6] that are unimodular and whose
    /// product with M is upper triangular with positive diagonal and reduced
    /// off-diagonal gives exactly one result.
    #[test]
    fn two_by_two_against_enumeration() {
        let m = IntMatrix::from_i64(&[&[2, 4], &[1, 1]]);
        let mut found = Vec::new();
        for a in -6i64..=6 {
            for b in -6i64..=6 {
                for c in -6i64..=6 {
                    for d in -6i64..=6 {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let h = [[a * 2 + b, a * 4 + b], [c * 2 + d, c * 4 + d]];
                        if h[1][0] == 0
                            && h[0][0] > 0
                            && h[1][1] > 0
                            && h[0][1] >= 0
                            && h[0][1] < h[1][1]
                        {
                            found.push(h);
                        }
                    }
                }
            }
        }
        found.sort();
        found.dedup();
        assert_eq!(found, vec![[[1, 1], [0, 2]]]);
        let f = hnf(&m);
        assert_eq!(f.h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
        assert_eq!(f.u.mul(&m).unwrap(), f.h);
    }

    #[test]
    fn random_hnf_shape() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = rng.gen_range(0..6);
            let c = rng.gen_range(0..6);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let m = IntMatrix::from_rows(c, &rows);
            let f = hnf(&m);
            assert!(is_hnf(&f.h, &f.pivots));
            assert_eq!(f.u.mul(&m).unwrap(), f.h);
            assert!(super::super::det(&f.u).is_unit());
        }
    }
}
