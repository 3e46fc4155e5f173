//! Low-degree slices of the bar resolution with trivial coefficients.
//!
//! d(a|b) = (b) - (ab) + (a)
//! d(a|b|c) = (b|c) - (ab|c) + (a|bc) - (a|b)
//!
//! In the normalized complex tuples containing the identity are zero.

use rayon::prelude::*;

use super::HomologyError;
use crate::exactla::{
    elementary_divisors, lattice_basis, sparse_cokernel_invariants, sparse_elementary_divisors,
    AbelianInvariants, AbelianQuotient, Int, IntMatrix, SparseMatrix,
};
use crate::permgrp::{GroupTable, PermGroup};

/// Default order bound for bar computations.
pub const DEFAULT_BAR_BOUND: u64 = 60;
/// Above this order only the sparse elimination path is used.
pub const DENSE_ORDER_LIMIT: u64 = 16;

/// Boundary matrices d2: C2 → C1 and d3: C3 → C2 of the (normalized or
/// full) bar complex, stored as relation rows: row t of `d3` is the
/// boundary of the t-th basis 3-chain in C2 coordinates.
#[derive(Clone, Debug)]
pub struct BarComplexSlice {
    pub table: GroupTable,
    pub normalized: bool,
    pub d2: SparseMatrix,
    pub d3: SparseMatrix,
}

impl BarComplexSlice {
    pub fn new(g: &PermGroup, max_order: u64, normalized: bool) -> Result<Self, HomologyError> {
        let table = GroupTable::new(g, max_order).map_err(|_| HomologyError::OrderBound {
            order: g.order().to_string(),
            bound: max_order,
        })?;
        Ok(Self::from_table(table, normalized))
    }

    pub fn from_table(table: GroupTable, normalized: bool) -> Self {
        let n = table.order();
        let m = if normalized { n - 1 } else { n };
        let idx = |x: u32| -> Option<usize> {
            if normalized {
                (x != 0).then(|| x as usize - 1)
            } else {
                Some(x as usize)
            }
        };
        let elem = |i: usize| -> u32 {
            if normalized {
                i as u32 + 1
            } else {
                i as u32
            }
        };
        let pair = |a: u32, b: u32| -> Option<usize> { Some(idx(a)? * m + idx(b)?) };

        let mut e2 = Vec::with_capacity(3 * m * m);
        for i in 0..m {
            for j in 0..m {
                let (a, b) = (elem(i), elem(j));
                let row = i * m + j;
                for (x, s) in [(b, 1i64), (table.mul(a, b), -1), (a, 1)] {
                    if let Some(c) = idx(x) {
                        e2.push((row, c, s));
                    }
                }
            }
        }
        let d2 = SparseMatrix::from_accumulated(m * m, m, e2);

        let blocks: Vec<Vec<(usize, usize, i64)>> = (0..m)
            .into_par_iter()
            .map(|i| {
                let a = elem(i);
                let mut out = Vec::with_capacity(4 * m * m);
                for j in 0..m {
                    let b = elem(j);
                    let ab = table.mul(a, b);
                    for k in 0..m {
                        let c = elem(k);
                        let row = (i * m + j) * m + k;
                        let terms = [
                            (b, c, 1i64),
                            (ab, c, -1),
                            (a, table.mul(b, c), 1),
                            (a, b, -1),
                        ];
                        for (x, y, s) in terms {
                            if let Some(col) = pair(x, y) {
                                out.push((row, col, s));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let d3 = SparseMatrix::from_accumulated(m * m * m, m * m, blocks.into_iter().flatten());
        let slice = BarComplexSlice {
            table,
            normalized,
            d2,
            d3,
        };
        assert!(slice.boundary_squared_is_zero(), "d2 d3 != 0");
        slice
    }

    /// d2 ∘ d3 = 0, checked exactly.
    pub fn boundary_squared_is_zero(&self) -> bool {
        let p = self.d3.mul(&self.d2).expect("dimensions agree");
        p.triplets().iter().all(|t| t.2.is_zero())
    }

    pub fn c2_rank(&self) -> usize {
        self.d3.cols()
    }

    /// Basis index of the 2-chain (a|b), or None if it is zero.
    pub fn pair_index(&self, a: u32, b: u32) -> Option<usize> {
        let m = self.d2.cols();
        if self.normalized {
            (a != 0 && b != 0).then(|| (a as usize - 1) * m + b as usize - 1)
        } else {
            Some(a as usize * m + b as usize)
        }
    }

    /// The pair of table elements of a 2-chain basis index.
    pub fn pair_of(&self, idx: usize) -> (u32, u32) {
        let m = self.d2.cols();
        let (i, j) = (idx / m, idx % m);
        if self.normalized {
            (i as u32 + 1, j as u32 + 1)
        } else {
            (i as u32, j as u32)
        }
    }

    /// H_2 as the torsion of C2 / im d3 (the quotient C2 / ker d2 is free).
    pub fn h2(&self) -> AbelianInvariants {
        let d = if self.table.order() as u64 > DENSE_ORDER_LIMIT {
            sparse_elementary_divisors(&self.d3)
        } else {
            elementary_divisors(&self.d3)
        };
        AbelianInvariants::new(
            0,
            d.into_iter()
                .filter(|x| !x.is_zero() && !x.is_one())
                .collect(),
        )
    }

    /// H_1 = C1 / im d2.
    pub fn h1(&self) -> AbelianInvariants {
        sparse_cokernel_invariants(&self.d2)
    }

    /// H_2 with explicit cycle representatives of its cyclic factors.
    pub fn h2_cycles(&self) -> H2Cycles {
        let rows: Vec<Vec<Int>> = self
            .d3
            .row_lists()
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut v = vec![Int::ZERO; self.c2_rank()];
                for (c, x) in r {
                    v[c] = x;
                }
                v
            })
            .collect();
        let basis = lattice_basis(self.c2_rank(), &rows);
        let full = AbelianQuotient::from_relations(self.c2_rank(), &basis);
        let torsion: Vec<usize> = (0..full.ngens())
            .filter(|&i| !full.moduli()[i].is_zero())
            .collect();
        let moduli: Vec<Int> = torsion.iter().map(|&i| full.moduli()[i].clone()).collect();
        let group = AbelianQuotient::from_relations(
            moduli.len(),
            &IntMatrix::diagonal(moduli.len(), moduli.len(), &moduli),
        );
        let cycles = torsion
            .iter()
            .map(|&i| full.generators()[i].clone())
            .collect();
        H2Cycles {
            full,
            torsion,
            group,
            cycles,
        }
    }
}

/// H_2 as Z^t / diag(moduli), where the t ambient basis vectors are the
/// cycles in `cycles`.
#[derive(Clone, Debug)]
pub struct H2Cycles {
    full: AbelianQuotient,
    torsion: Vec<usize>,
    pub group: AbelianQuotient,
    pub cycles: Vec<Vec<Int>>,
}

impl H2Cycles {
    /// Coordinates of the class of a 2-cycle (given in C2 coordinates) in the
    /// ambient basis of `group`.
    pub fn coords(&self, cycle: &[Int]) -> Vec<Int> {
        let r = self.full.reduce(cycle);
        debug_assert!(
            (0..r.len())
                .filter(|i| !self.torsion.contains(i))
                .all(|i| r[i].is_zero()),
            "not a cycle"
        );
        self.torsion.iter().map(|&i| r[i].clone()).collect()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        self.group.invariants()
    }
}

/// The Schur multiplier H_2(G, Z) from the normalized bar complex. Groups of
/// order above `max_order` are refused.
pub fn h2_finite_bar(g: &PermGroup) -> Result<AbelianInvariants, HomologyError> {
    h2_finite_bar_with(g, DEFAULT_BAR_BOUND)
}

pub fn h2_finite_bar_with(
    g: &PermGroup,
    max_order: u64,
) -> Result<AbelianInvariants, HomologyError> {
    Ok(BarComplexSlice::new(g, max_order, true)?.h2())
}

/// H_2 from the unnormalized bar complex; much larger, used for
/// cross-checking.
pub fn h2_unnormalized(g: &PermGroup, max_order: u64) -> Result<AbelianInvariants, HomologyError> {
    Ok(BarComplexSlice::new(g, max_order, false)?.h2())
}
