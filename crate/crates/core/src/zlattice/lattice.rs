//! Sublattices of `Z^n` and their subquotients.
//!
//! A [`Subquotient`] `L1 / L2` (with `L2 <= L1 <= Z^n`) is the workhorse for
//! every presentation in the crate: cohomology groups, kernels of maps between
//! finite abelian groups, and Picard groups all end up as one. It carries a
//! coordinate map that sends an element of `L1` to its canonical coordinates
//! with respect to the invariant-factor generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::abelian::{reduce_coords, AbelianGroupShape};
use super::matrix::Matrix;
use super::smith::{smith_with, SmithDecomposition, SmithOptions};
use crate::error::{Error, Result};

/// Sublattice of `Z^dim` spanned by a list of generators (not necessarily independent).
#[derive(Debug, Clone)]
pub struct Sublattice {
    dim: usize,
    num_gens: usize,
    snf: SmithDecomposition<BigInt>,
}

impl Sublattice {
    pub fn new(dim: usize, generators: &[Vec<BigInt>]) -> Self {
        let g = Matrix::from_columns(dim, generators);
        Self { dim, num_gens: generators.len(), snf: smith_with(&g, SmithOptions::FULL) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.snf.rank
    }

    /// Coefficients `c` with `sum c_j g_j = x`, if `x` lies in the lattice.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.snf.u().mul_vec(x);
        let mut z = vec![BigInt::zero(); self.num_gens];
        for (k, yk) in y.iter().enumerate() {
            if k < self.snf.rank {
                let (q, r) = yk.div_rem(&self.snf.diagonal[k]);
                if !r.is_zero() {
                    return None;
                }
                z[k] = q;
            } else if !yk.is_zero() {
                return None;
            }
        }
        Some(self.snf.v().mul_vec(&z))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        let y = self.snf.u().mul_vec(x);
        y.iter().enumerate().all(
            |(k, yk)| {
                if k < self.snf.rank {
                    (yk % &self.snf.diagonal[k]).is_zero()
                } else {
                    yk.is_zero()
                }
            },
        )
    }

    /// Index in `Z^dim` (`None` if not of full rank).
    pub fn index(&self) -> Option<BigInt> {
        (self.snf.rank == self.dim).then(|| self.snf.diagonal[..self.dim].iter().product())
    }
}

/// Basis of the right kernel `{x : A x = 0}` of an integer matrix.
pub fn kernel_basis(a: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    smith_with(a, SmithOptions::RIGHT).kernel_basis()
}

/// A finitely generated abelian group realised as `L1 / L2` inside `Z^dim`.
#[derive(Debug, Clone)]
pub struct Subquotient {
    dim: usize,
    shape: AbelianGroupShape,
    generators: Vec<Vec<BigInt>>,
    // coordinates: c = (U1 x)[..s] / d1, then z = P c, keep rows `keep`, reduce mod orders
    u1_rows: Matrix<BigInt>,
    d1: Vec<BigInt>,
    p_rows: Matrix<BigInt>,
    orders: Vec<BigInt>,
}

impl Subquotient {
    /// `span(l1) / span(l2)`; the caller guarantees `span(l2) <= span(l1)`,
    /// which is checked.
    pub fn new(dim: usize, l1: &[Vec<BigInt>], l2: &[Vec<BigInt>]) -> Result<Self> {
        let g1 = Matrix::from_columns(dim, l1);
        let s1 = smith_with(&g1, SmithOptions::LEFT);
        let rank1 = s1.rank;
        let idx: Vec<usize> = (0..rank1).collect();
        let u1_rows = s1.u().select_rows(&idx);
        let d1: Vec<BigInt> = s1.diagonal[..rank1].to_vec();
        let coords_of = |x: &[BigInt]| -> Option<Vec<BigInt>> {
            let y = s1.u().mul_vec(x);
            if y[rank1..].iter().any(|v| !v.is_zero()) {
                return None;
            }
            y[..rank1]
                .iter()
                .zip(&d1)
                .map(|(v, d)| {
                    let (q, r) = v.div_rem(d);
                    r.is_zero().then_some(q)
                })
                .collect()
        };
        let mut cols = Vec::with_capacity(l2.len());
        for x in l2 {
            cols.push(
                coords_of(x).ok_or_else(|| Error::Internal("denominator lattice not contained in numerator".into()))?,
            );
        }
        let c = Matrix::from_columns(rank1, &cols);
        let s2 = smith_with(&c, SmithOptions::LEFT);
        let mut keep = Vec::new();
        let mut orders = Vec::new();
        for j in 0..rank1 {
            let e = if j < s2.rank { s2.diagonal[j].clone() } else { BigInt::zero() };
            if !e.is_one() {
                keep.push(j);
                orders.push(e);
            }
        }
        let p_inv = s2.u_inv();
        let w_basis = s1.u_inv();
        let generators = keep
            .iter()
            .map(|&j| {
                let col: Vec<BigInt> = (0..rank1).map(|k| &d1[k] * &p_inv[(k, j)]).collect();
                let mut full = vec![BigInt::zero(); dim];
                for (k, ck) in col.iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    for (i, f) in full.iter_mut().enumerate() {
                        *f += ck * &w_basis[(i, k)];
                    }
                }
                full
            })
            .collect();
        let shape = AbelianGroupShape::from_cyclic_orders(&orders);
        debug_assert_eq!(shape.generator_orders(), orders);
        Ok(Self { dim, shape, generators, u1_rows, d1, p_rows: s2.u().select_rows(&keep), orders })
    }

    /// Assembles a subquotient from a known coordinate transform: the class of
    /// `x` has coordinates `coord_rows * x` reduced modulo `orders`, which must
    /// already form a divisibility chain of entries greater than 1.
    pub(crate) fn from_transform(
        dim: usize,
        generators: Vec<Vec<BigInt>>,
        coord_rows: Matrix<BigInt>,
        orders: Vec<BigInt>,
    ) -> Self {
        let k = orders.len();
        let shape = AbelianGroupShape::from_cyclic_orders(&orders);
        debug_assert_eq!(shape.generator_orders(), orders);
        Self {
            dim,
            shape,
            generators,
            u1_rows: coord_rows,
            d1: vec![BigInt::one(); k],
            p_rows: Matrix::identity(k),
            orders,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &AbelianGroupShape {
        &self.shape
    }

    /// Representatives in `Z^dim` of the canonical generators, in the order of
    /// [`AbelianGroupShape::generator_orders`].
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Canonical coordinates of the class of `x`; `None` if `x` is not in `L1`.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(x.len(), self.dim);
        let y = self.u1_rows.mul_vec(x);
        let mut c = Vec::with_capacity(y.len());
        for (v, d) in y.iter().zip(&self.d1) {
            let (q, r) = v.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        // Components of U1 x past the rank are not checked: x is assumed to lie
        // in the rational span of L1.
        let mut z = self.p_rows.mul_vec(&c);
        reduce_coords(&mut z, &self.orders);
        Some(z)
    }

    /// Element of `Z^dim` representing the given coordinates.
    pub fn element(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, g) in coords.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(g) {
                *o += c * v;
            }
        }
        out
    }
}

/// Relation vectors `d_j e_j` for a presentation with the given generator orders.
pub fn relation_vectors(orders: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = orders.len();
    orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(j, d)| {
            let mut v = vec![BigInt::zero(); n];
            v[j] = d.clone();
            v
        })
        .collect()
}

/// Kernel of the homomorphism `Z^a / R_src -> Z^b / R_dst` given by `phi`
/// (a `b x a` matrix), as a subquotient of `Z^a` modulo the source relations.
pub fn hom_kernel(src_orders: &[BigInt], dst_orders: &[BigInt], phi: &Matrix<BigInt>) -> Result<Subquotient> {
    let a = src_orders.len();
    let b = dst_orders.len();
    assert_eq!((phi.rows(), phi.cols()), (b, a));
    let dst_rel = Matrix::from_columns(b, &relation_vectors(dst_orders));
    let big = if dst_rel.cols() > 0 { phi.hcat(&dst_rel) } else { phi.clone() };
    let mut l1: Vec<Vec<BigInt>> = kernel_basis(&big).into_iter().map(|v| v[..a].to_vec()).collect();
    let src_rel = relation_vectors(src_orders);
    l1.extend(src_rel.iter().cloned());
    Subquotient::new(a, &l1, &src_rel)
}

/// Subgroup of `Z^a / R` generated by `gens`.
pub fn generated_subgroup(orders: &[BigInt], gens: &[Vec<BigInt>]) -> Result<Subquotient> {
    let rel = relation_vectors(orders);
    let mut l1 = gens.to_vec();
    l1.extend(rel.iter().cloned());
    Subquotient::new(orders.len(), &l1, &rel)
}

/// Whether every element of `sub` lies in the subgroup generated by `sup`
/// (both given by generators in `Z^a / R`).
pub fn subgroup_contained(orders: &[BigInt], sub: &[Vec<BigInt>], sup: &[Vec<BigInt>]) -> bool {
    let mut l = sup.to_vec();
    l.extend(relation_vectors(orders));
    let lat = Sublattice::new(orders.len(), &l);
    sub.iter().all(|x| lat.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn subquotient_of_z2() {
        // L1 = Z^2, L2 = span{(2,0),(0,4)} -> Z/2 x Z/4
        let l1 = vec![v(&[1, 0]), v(&[0, 1])];
        let l2 = vec![v(&[2, 0]), v(&[0, 4])];
        let q = Subquotient::new(2, &l1, &l2).unwrap();
        assert_eq!(q.shape(), &AbelianGroupShape::from_factors(&[2, 4], 0).unwrap());
        for (g, ord) in q.generators().iter().zip(q.orders()) {
            let c = q.coordinates(g).unwrap();
            assert!(c.iter().enumerate().all(|(i, x)| if q.generators()[i] == *g { x.is_one() } else { x.is_zero() }));
            let scaled: Vec<BigInt> = g.iter().map(|x| x * ord).collect();
            assert!(q.coordinates(&scaled).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_of_projection() {
        // Z/4 -> Z/2, x -> x: kernel {0, 2}
        let k = hom_kernel(&v(&[4]), &v(&[2]), &Matrix::from_i64(&[&[1]])).unwrap();
        assert_eq!(k.shape(), &AbelianGroupShape::cyclic(2));
        // the generator is 2 mod 4
        assert_eq!(k.generators()[0][0].mod_floor(&BigInt::from(4)), BigInt::from(2));
    }

    #[test]
    fn solve_and_index() {
        let lat = Sublattice::new(2, &[v(&[2, 1]), v(&[0, 3])]);
        assert_eq!(lat.index(), Some(BigInt::from(6)));
        let c = lat.solve(&v(&[4, 5])).unwrap();
        assert_eq!(c, v(&[2, 1]));
        assert!(lat.solve(&v(&[1, 0])).is_none());
    }
}
