//! Finitely generated abelian groups given as Z^n modulo a relation lattice,
//! with explicit coordinates so maps, kernels and images can be compared.

use std::fmt;

use serde::Serialize;

use super::hnf::lattice_basis;
use super::int::Int;
use super::matrix::IntMatrix;
use super::snf::snf;
use super::solve::kernel_basis;

/// Isomorphism type of a f.g. abelian group: Z^free_rank ⊕ Z/t_1 ⊕ ... with
/// t_1 | t_2 | ... and every t_i >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianInvariants {
    /// Normalizes an arbitrary list of cyclic orders (entries 0 count as
    /// free, 1 is dropped) into the divisibility chain.
    pub fn new(free_rank: usize, torsion: Vec<Int>) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for t in torsion {
            let t = t.abs();
            if t.is_zero() {
                free += 1;
            } else if !t.is_one() {
                finite.push(t);
            }
        }
        AbelianInvariants {
            free_rank: free,
            torsion: canonical_chain(finite),
        }
    }

    pub fn trivial() -> Self {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, None when infinite.
    pub fn order(&self) -> Option<Int> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.torsion.iter().cloned().product())
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Rewrites a list of cyclic orders >= 2 into invariant-factor form.
fn canonical_chain(orders: Vec<Int>) -> Vec<Int> {
    if orders.is_empty() {
        return orders;
    }
    let d = IntMatrix::diagonal(orders.len(), orders.len(), &orders);
    super::snf::smith_divisors(&d)
        .into_iter()
        .filter(|x| !x.is_one())
        .collect()
}

/// Z^n / L with a coordinate change to invariant-factor form.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    ambient: usize,
    /// Columns of V for kept components (ambient x kept).
    to_reduced: IntMatrix,
    /// Modulus per kept component: 0 = free, otherwise >= 2.
    moduli: Vec<Int>,
    /// Ambient-coordinate representative of each kept generator.
    generators: Vec<Vec<Int>>,
}

impl AbelianQuotient {
    /// Quotient of Z^n by the row span of `relations` (k x n).
    pub fn from_relations(n: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.cols(), n);
        let s = snf(relations);
        let mut kept = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..n {
            let d = s.divisors.get(i).cloned().unwrap_or(Int::ZERO);
            if !d.is_one() {
                kept.push(i);
                moduli.push(d);
            }
        }
        let mut to_reduced = IntMatrix::zero(n, kept.len());
        for (k, &i) in kept.iter().enumerate() {
            for r in 0..n {
                to_reduced.set(r, k, s.right.get(r, i).clone());
            }
        }
        let generators = kept.iter().map(|&i| s.right_inv.row_vec(i)).collect();
        AbelianQuotient {
            ambient: n,
            to_reduced,
            moduli,
            generators,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of cyclic components.
    pub fn ngens(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants::new(0, self.moduli.clone())
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|m| !m.is_zero())
    }

    /// Reduced coordinates of an ambient vector.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        let mut z = self.to_reduced.vec_mul(v).expect("ambient length");
        for (x, m) in z.iter_mut().zip(&self.moduli) {
            if !m.is_zero() {
                *x = x.mod_floor(m);
            }
        }
        z
    }

    /// Relation lattice of the reduced coordinates.
    fn relation_rows(&self) -> Vec<Vec<Int>> {
        let k = self.ngens();
        self.moduli
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(i, m)| {
                let mut row = vec![Int::ZERO; k];
                row[i] = m.clone();
                row
            })
            .collect()
    }

    /// Canonical lattice (Hermite basis, containing the relations) of the
    /// subgroup generated by `gens`, given in reduced coordinates.
    pub fn subgroup(&self, gens: &[Vec<Int>]) -> Subgroup {
        let mut rows: Vec<Vec<Int>> = gens.to_vec();
        rows.extend(self.relation_rows());
        Subgroup(lattice_basis(self.ngens(), &rows))
    }

    pub fn whole(&self) -> Subgroup {
        let k = self.ngens();
        let rows: Vec<Vec<Int>> = (0..k)
            .map(|i| {
                let mut r = vec![Int::ZERO; k];
                r[i] = Int::ONE;
                r
            })
            .collect();
        self.subgroup(&rows)
    }

    pub fn zero_subgroup(&self) -> Subgroup {
        self.subgroup(&[])
    }
}

/// A subgroup of an `AbelianQuotient`, stored as the Hermite basis of its
/// preimage lattice in reduced coordinates. Equal subgroups have equal bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup(pub IntMatrix);

/// A homomorphism between two abelian quotients, given by the images of the
/// source's reduced generators in the target's reduced coordinates.
#[derive(Clone, Debug)]
pub struct AbelianHom<'a> {
    pub source: &'a AbelianQuotient,
    pub target: &'a AbelianQuotient,
    pub images: Vec<Vec<Int>>,
}

impl<'a> AbelianHom<'a> {
    /// Builds the map from ambient-coordinate images: `ambient_images[i]` is the
    /// image of the i-th ambient basis vector of the source, in the target's
    /// ambient coordinates.
    pub fn from_ambient(
        source: &'a AbelianQuotient,
        target: &'a AbelianQuotient,
        ambient_images: &[Vec<Int>],
    ) -> Self {
        assert_eq!(ambient_images.len(), source.ambient());
        let images = source
            .generators()
            .iter()
            .map(|g| {
                let mut acc = vec![Int::ZERO; target.ambient()];
                for (coef, img) in g.iter().zip(ambient_images) {
                    if coef.is_zero() {
                        continue;
                    }
                    for (a, b) in acc.iter_mut().zip(img) {
                        *a += &(coef * b);
                    }
                }
                target.reduce(&acc)
            })
            .collect();
        AbelianHom {
            source,
            target,
            images,
        }
    }

    pub fn image(&self) -> Subgroup {
        self.target.subgroup(&self.images)
    }

    pub fn kernel(&self) -> Subgroup {
        let ks = self.source.ngens();
        let kt = self.target.ngens();
        // x F - y D = 0 with D the target relation rows
        let rel = self.target.relation_rows();
        let mut stacked: Vec<Vec<Int>> = self.images.clone();
        for r in &rel {
            stacked.push(r.iter().map(|x| -x).collect());
        }
        if kt == 0 {
            return self.source.whole();
        }
        let s = IntMatrix::from_rows(kt, &stacked);
        let kb = kernel_basis(&s.transpose());
        let gens: Vec<Vec<Int>> = kb.into_iter().map(|v| v[..ks].to_vec()).collect();
        self.source.subgroup(&gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel() == self.source.zero_subgroup()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == self.target.whole()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn invariants_normalize() {
        let a = AbelianInvariants::new(0, ints(&[2, 3]));
        assert_eq!(a.torsion, ints(&[6]));
        let b = AbelianInvariants::new(1, ints(&[4, 6, 1, 0]));
        assert_eq!(b.free_rank, 2);
        assert_eq!(b.torsion, ints(&[2, 12]));
        assert_eq!(b.to_string(), "Z^2 + Z/2 + Z/12");
    }

    #[test]
    fn quotient_coordinates() {
        // Z^2 / <(2,0),(0,3)> = Z/6
        let q = AbelianQuotient::from_relations(2, &IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(q.invariants(), AbelianInvariants::new(0, ints(&[6])));
        assert_eq!(q.reduce(&ints(&[2, 0])), ints(&[0]));
        assert_eq!(q.reduce(&ints(&[2, 3])), ints(&[0]));
        assert_ne!(q.reduce(&ints(&[1, 0])), ints(&[0]));
        // generator reduces to a unit vector
        let g = &q.generators()[0];
        assert_eq!(q.reduce(g), ints(&[1]));
    }

    #[test]
    fn hom_kernel_image() {
        // Z/2 -> Z/4, 1 -> 2 : injective, not surjective
        let a = AbelianQuotient::from_relations(1, &IntMatrix::from_i64(&[&[2]]));
        let b = AbelianQuotient::from_relations(1, &IntMatrix::from_i64(&[&[4]]));
        let f = AbelianHom::from_ambient(&a, &b, &[ints(&[2])]);
        assert!(f.is_injective());
        assert!(!f.is_surjective());
        // Z/4 -> Z/2 projection: surjective with kernel of order 2
        let g = AbelianHom::from_ambient(&b, &a, &[ints(&[1])]);
        assert!(g.is_surjective());
        assert!(!g.is_injective());
        assert_eq!(g.kernel(), b.subgroup(&[b.reduce(&ints(&[2]))]));
    }

    #[test]
    fn free_parts() {
        // Z -> Z, x -> 2x injective not surjective
        let z = AbelianQuotient::from_relations(1, &IntMatrix::zero(0, 1));
        let f = AbelianHom::from_ambient(&z, &z, &[ints(&[2])]);
        assert!(f.is_injective());
        assert!(!f.is_surjective());
        let id = AbelianHom::from_ambient(&z, &z, &[ints(&[-1])]);
        assert!(id.is_isomorphism());
    }
}
