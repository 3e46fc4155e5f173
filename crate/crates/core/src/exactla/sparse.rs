//! Elementary divisors of large sparse integer matrices.
//!
//! Unit pivots are eliminated first with a Markowitz-style choice (sparsest
//! column, then shortest row); each such pivot contributes a divisor 1 and
//! its row and column drop out. Whatever survives is handed to the dense
//! Smith routine.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::int::Int;
use super::matrix::{IntMatrix, SparseMatrix};
use super::snf::smith_divisors;

/// Above this many stored entries the sparse path is used.
pub const SPARSE_THRESHOLD: usize = 10_000;

type Row = Vec<(u32, Int)>;

fn entry(row: &Row, c: u32) -> Option<&Int> {
    row.binary_search_by_key(&c, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

/// row_i - k * row_p, both sorted by column.
fn axpy(dst: &Row, k: &Int, src: &Row) -> Row {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let ci = dst.get(i).map_or(u32::MAX, |e| e.0);
        let cj = src.get(j).map_or(u32::MAX, |e| e.0);
        if ci < cj {
            out.push(dst[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(k * &src[j].1)));
            j += 1;
        } else {
            let v = &dst[i].1 - &(k * &src[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Elementary divisors of `m` (length min(rows, cols), zeros last), computed
/// by sparse unit-pivot elimination followed by dense Smith reduction.
pub fn sparse_elementary_divisors(m: &SparseMatrix) -> Vec<Int> {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut rows: Vec<Row> = m
        .row_lists()
        .into_iter()
        .map(|r| r.into_iter().map(|(c, v)| (c as u32, v)).collect())
        .collect();
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut col_count = vec![0usize; ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_rows[*c as usize].push(r as u32);
            col_count[*c as usize] += 1;
        }
    }
    let mut row_alive = vec![true; nrows];
    let mut col_alive = vec![true; ncols];
    let mut units = 0usize;

    loop {
        let mut progressed = false;
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..ncols)
            .filter(|&c| col_alive[c] && col_count[c] > 0)
            .map(|c| Reverse((col_count[c], c as u32)))
            .collect();
        while let Some(Reverse((cnt, c))) = heap.pop() {
            let cu = c as usize;
            if !col_alive[cu] || cnt != col_count[cu] {
                continue;
            }
            // live rows of this column
            let mut live: Vec<u32> = Vec::with_capacity(col_rows[cu].len());
            for &r in &col_rows[cu] {
                if row_alive[r as usize] && entry(&rows[r as usize], c).is_some() {
                    live.push(r);
                }
            }
            live.sort_unstable();
            live.dedup();
            col_rows[cu] = live.clone();
            let pivot = live
                .iter()
                .copied()
                .filter(|&r| entry(&rows[r as usize], c).is_some_and(Int::is_unit))
                .min_by_key(|&r| (rows[r as usize].len(), r));
            let Some(p) = pivot else { continue };
            let prow = std::mem::take(&mut rows[p as usize]);
            let pval = entry(&prow, c).unwrap().clone();
            for &r in &live {
                if r == p {
                    continue;
                }
                let ru = r as usize;
                let a = entry(&rows[ru], c).unwrap().clone();
                // pivot is ±1 so a * pval clears the entry exactly
                let k = &a * &pval;
                let old = std::mem::take(&mut rows[ru]);
                let new = axpy(&old, &k, &prow);
                // maintain column counts
                let (mut i, mut j) = (0, 0);
                while i < old.len() || j < new.len() {
                    let ci = old.get(i).map_or(u32::MAX, |e| e.0);
                    let cj = new.get(j).map_or(u32::MAX, |e| e.0);
                    if ci < cj {
                        col_count[ci as usize] -= 1;
                        if col_alive[ci as usize] && ci != c {
                            heap.push(Reverse((col_count[ci as usize], ci)));
                        }
                        i += 1;
                    } else if cj < ci {
                        col_count[cj as usize] += 1;
                        col_rows[cj as usize].push(r);
                        if col_alive[cj as usize] {
                            heap.push(Reverse((col_count[cj as usize], cj)));
                        }
                        j += 1;
                    } else {
                        i += 1;
                        j += 1;
                    }
                }
                rows[ru] = new;
            }
            row_alive[p as usize] = false;
            col_alive[cu] = false;
            for (cc, _) in &prow {
                col_count[*cc as usize] -= 1;
                if col_alive[*cc as usize] {
                    heap.push(Reverse((col_count[*cc as usize], *cc)));
                }
            }
            col_rows[cu].clear();
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    // residual block
    let live_cols: Vec<usize> = (0..ncols).filter(|&c| col_alive[c]).collect();
    let mut col_index = vec![usize::MAX; ncols];
    for (k, &c) in live_cols.iter().enumerate() {
        col_index[c] = k;
    }
    let mut dense_rows: Vec<Vec<Int>> = Vec::new();
    for r in 0..nrows {
        if !row_alive[r] || rows[r].is_empty() {
            continue;
        }
        let mut v = vec![Int::ZERO; live_cols.len()];
        for (c, x) in &rows[r] {
            let k = col_index[*c as usize];
            debug_assert!(k != usize::MAX, "entry left in an eliminated column");
            v[k] = x.clone();
        }
        dense_rows.push(v);
    }
    let mut divisors = vec![Int::ONE; units];
    if !dense_rows.is_empty() && !live_cols.is_empty() {
        let rest = smith_divisors(&IntMatrix::from_rows(live_cols.len(), &dense_rows));
        divisors.extend(rest.into_iter().filter(|d| !d.is_zero()));
    }
    divisors.resize(nrows.min(ncols), Int::ZERO);
    divisors
}

/// Elementary divisors, choosing the sparse path above `SPARSE_THRESHOLD`
/// stored entries.
pub fn elementary_divisors(m: &SparseMatrix) -> Vec<Int> {
    if m.nnz() >= SPARSE_THRESHOLD {
        sparse_elementary_divisors(m)
    } else {
        smith_divisors(&m.to_dense())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn agrees_with_dense_on_random_sparse() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let r = rng.gen_range(1..=12);
            let c = rng.gen_range(1..=12);
            let mut entries = Vec::new();
            for i in 0..r {
                for j in 0..c {
                    if rng.gen_bool(0.25) {
                        entries.push((i, j, rng.gen_range(-4i64..=4)));
                    }
                }
            }
            let m = SparseMatrix::from_accumulated(r, c, entries);
            assert_eq!(
                sparse_elementary_divisors(&m),
                smith_divisors(&m.to_dense())
            );
        }
    }

    #[test]
    fn zero_and_empty() {
        let m = SparseMatrix::from_accumulated(3, 2, Vec::new());
        assert_eq!(sparse_elementary_divisors(&m), vec![Int::ZERO; 2]);
        let m = SparseMatrix::from_accumulated(0, 4, Vec::new());
        assert!(sparse_elementary_divisors(&m).is_empty());
    }
}
