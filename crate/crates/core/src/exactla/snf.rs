use super::int::Int;
use super::matrix::IntMatrix;

/// Smith normal form U·M·V = diag(divisors), zero padded.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal entries d_1 | d_2 | ... ; length min(rows, cols).
    pub divisors: Vec<Int>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    /// Inverse of `right`.
    pub right_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    Row,
    Col,
}

/// Smith normal form with both transforms.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut vinv = IntMatrix::identity(cols);
    let n = rows.min(cols);

    // column ops on `a` are mirrored on `v` (right-multiplication) and the
    // inverse op is applied to the rows of `vinv`.
    let col_add = |a: &mut IntMatrix,
                   v: &mut IntMatrix,
                   vinv: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   k: &Int| {
        a.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        vinv.add_row_multiple(src, dst, &-k);
    };
    let col_swap =
        |a: &mut IntMatrix, v: &mut IntMatrix, vinv: &mut IntMatrix, x: usize, y: usize| {
            a.swap_cols(x, y);
            v.swap_cols(x, y);
            vinv.swap_rows(x, y);
        };

    for t in 0..n {
        // global pivot: minimal |entry| in the trailing block, ties -> lowest (row, col)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.cmp_abs(a.get(bi, bj)).is_lt() {
                            best = Some((i, j))
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        col_swap(&mut a, &mut v, &mut vinv, t, pj);

        loop {
            // bring the smallest entry of row t / column t to (t, t)
            let mut best = (Axis::Row, t);
            for i in t + 1..rows {
                let x = a.get(i, t);
                if !x.is_zero() && x.cmp_abs(a.get(t, t)).is_lt() {
                    let cur = match best {
                        (Axis::Row, k) => a.get(k, t),
                        (Axis::Col, k) => a.get(t, k),
                    };
                    if x.cmp_abs(cur).is_lt() {
                        best = (Axis::Row, i);
                    }
                }
            }
            for j in t + 1..cols {
                let x = a.get(t, j);
                if !x.is_zero() && x.cmp_abs(a.get(t, t)).is_lt() {
                    let cur = match best {
                        (Axis::Row, k) => a.get(k, t),
                        (Axis::Col, k) => a.get(t, k),
                    };
                    if x.cmp_abs(cur).is_lt() {
                        best = (Axis::Col, j);
                    }
                }
            }
            match best {
                (Axis::Row, i) if i != t => {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                }
                (Axis::Col, j) => col_swap(&mut a, &mut v, &mut vinv, t, j),
                _ => {}
            }
            let piv = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let x = a.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_round(&piv);
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let x = a.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_round(&piv);
                col_add(&mut a, &mut v, &mut vinv, j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !piv.divides(a.get(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &Int::ONE);
                    u.add_row_multiple(t, i, &Int::ONE);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let divisors = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        divisors,
        left: u,
        right: v,
        right_inv: vinv,
    }
}

/// Elementary divisors only (no transforms tracked).
pub fn smith_divisors(m: &IntMatrix) -> Vec<Int> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let n = rows.min(cols);
    for t in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.cmp_abs(a.get(bi, bj)).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !a.get(i, t).is_zero() && a.get(i, t).cmp_abs(a.get(t, t)).is_lt() {
                    a.swap_rows(t, i);
                }
            }
            for j in t + 1..cols {
                if !a.get(t, j).is_zero() && a.get(t, j).cmp_abs(a.get(t, t)).is_lt() {
                    a.swap_cols(t, j);
                }
            }
            let piv = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_round(&piv);
                a.add_row_multiple(i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_round(&piv);
                a.add_col_multiple(j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !piv.divides(a.get(i, j)) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => a.add_row_multiple(t, i, &Int::ONE),
                None => break,
            }
        }
    }
    (0..n).map(|i| a.get(i, i).abs()).collect()
}
