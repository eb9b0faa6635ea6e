use num_bigint::BigInt;
use num_traits::Zero;

use super::module::GLattice;
use crate::error::{Error, Result};
use crate::zlattice::{
    kernel_basis, smith_generic, sparse_rank_at_least, AbelianGroupShape, Matrix, SmithDecomposition, SmithOptions,
    Subquotient,
};
use crate::{IntScalar, SmallMatrix};

const RANK_PRIME: u64 = (1 << 31) - 1;

/// Resource caps for bar-resolution computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Cap on the number of `i`-tuples `|G|^i`.
    pub max_elems: u128,
    /// Cap on the cochain dimension `|G|^i * dim M`.
    pub max_dim: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_elems: 4096, max_dim: 16384 }
    }
}

impl Budget {
    pub fn check(&self, group_order: usize, degree: usize, module_dim: usize) -> Result<()> {
        let elems = (group_order as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        if elems > self.max_elems {
            return Err(Error::BudgetExceeded {
                what: format!("|G|^{degree} tuples"),
                required: elems,
                limit: self.max_elems,
            });
        }
        let dim = elems.saturating_mul(module_dim as u128);
        if dim > self.max_dim {
            return Err(Error::BudgetExceeded {
                what: format!("degree-{degree} cochain dimension"),
                required: dim,
                limit: self.max_dim,
            });
        }
        Ok(())
    }
}

/// An inhomogeneous cochain stored as a full table: for each `i`-tuple
/// (first entry most significant) the `dim` coordinates of its value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    group_order: usize,
    dim: usize,
    values: Vec<BigInt>,
}

impl Cochain {
    pub fn zero(degree: usize, group_order: usize, dim: usize) -> Self {
        let len = group_order.pow(degree as u32) * dim;
        Self { degree, group_order, dim, values: vec![BigInt::zero(); len] }
    }

    pub fn from_values(degree: usize, group_order: usize, dim: usize, values: Vec<BigInt>) -> Result<Self> {
        if values.len() != group_order.pow(degree as u32) * dim {
            return Err(Error::invalid("cochain table has the wrong length"));
        }
        Ok(Self { degree, group_order, dim, values })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn num_tuples(&self) -> usize {
        self.group_order.pow(self.degree as u32)
    }

    pub fn tuple_index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &g| acc * self.group_order + g)
    }

    pub fn tuple_of(&self, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree];
        for k in (0..self.degree).rev() {
            t[k] = idx % self.group_order;
            idx /= self.group_order;
        }
        t
    }

    pub fn get(&self, tuple: &[usize]) -> &[BigInt] {
        let k = self.tuple_index(tuple) * self.dim;
        &self.values[k..k + self.dim]
    }

    pub fn set(&mut self, tuple: &[usize], value: &[BigInt]) {
        let k = self.tuple_index(tuple) * self.dim;
        self.values[k..k + self.dim].clone_from_slice(value);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Vanishes on every tuple containing the identity.
    pub fn is_normalized(&self, identity: usize) -> bool {
        (0..self.num_tuples()).all(|t| {
            let tuple = self.tuple_of(t);
            !tuple.contains(&identity) || self.values[t * self.dim..(t + 1) * self.dim].iter().all(Zero::is_zero)
        })
    }
}

/// `d f` on full tables, computed straight from the inhomogeneous formula.
pub fn coboundary(m: &GLattice, f: &Cochain) -> Cochain {
    let g = m.group();
    let i = f.degree;
    let mut out = Cochain::zero(i + 1, g.order(), m.dim());
    for t in 0..out.num_tuples() {
        let tuple = out.tuple_of(t);
        let mut acc = m.act(tuple[0], f.get(&tuple[1..]));
        for j in 1..=i {
            let mut merged = tuple[..j - 1].to_vec();
            merged.push(g.mul(tuple[j - 1], tuple[j]));
            merged.extend_from_slice(&tuple[j + 1..]);
            add_signed(&mut acc, f.get(&merged), j % 2 == 1);
        }
        add_signed(&mut acc, f.get(&tuple[..i]), (i + 1) % 2 == 1);
        m.reduce(&mut acc);
        out.set(&tuple, &acc);
    }
    out
}

fn add_signed(acc: &mut [BigInt], v: &[BigInt], negate: bool) {
    for (a, x) in acc.iter_mut().zip(v) {
        if negate {
            *a -= x;
        } else {
            *a += x;
        }
    }
}

/// Index bookkeeping for normalized cochains: tuples of non-identity elements.
pub(crate) struct Normalized {
    pub n: usize,
    pub ne: Vec<usize>,
    pub pos: Vec<Option<usize>>,
    pub dim: usize,
}

impl Normalized {
    pub fn new(m: &GLattice) -> Self {
        let g = m.group();
        let ne = g.non_identity();
        let mut pos = vec![None; g.order()];
        for (k, &x) in ne.iter().enumerate() {
            pos[x] = Some(k);
        }
        Self { n: g.order(), ne, pos, dim: m.dim() }
    }

    pub fn tuples(&self, degree: usize) -> usize {
        (self.n - 1).pow(degree as u32)
    }

    pub fn len(&self, degree: usize) -> usize {
        self.tuples(degree) * self.dim
    }

    fn index(&self, tuple: &[usize]) -> Option<usize> {
        let base = self.n - 1;
        let mut acc = 0;
        for &g in tuple {
            acc = acc * base + self.pos[g]?;
        }
        Some(acc)
    }

    fn tuple(&self, degree: usize, mut idx: usize) -> Vec<usize> {
        let base = self.n - 1;
        let mut t = vec![0; degree];
        for k in (0..degree).rev() {
            t[k] = self.ne[idx % base];
            idx /= base;
        }
        t
    }

    /// Restricts a full table to the normalized coordinates.
    pub fn compress(&self, f: &Cochain) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(self.len(f.degree));
        for t in 0..self.tuples(f.degree) {
            out.extend_from_slice(f.get(&self.tuple(f.degree, t)));
        }
        out
    }

    pub fn expand(&self, degree: usize, v: &[BigInt]) -> Cochain {
        let mut f = Cochain::zero(degree, self.n, self.dim);
        for t in 0..self.tuples(degree) {
            f.set(&self.tuple(degree, t), &v[t * self.dim..(t + 1) * self.dim]);
        }
        f
    }

    /// Rows of the normalized coboundary `C^i -> C^{i+1}`, sparse.
    pub fn boundary_rows(&self, m: &GLattice, degree: usize) -> Vec<Vec<(usize, i64)>> {
        let g = m.group();
        let d = self.dim;
        let mut rows = Vec::with_capacity(self.len(degree + 1));
        let mut scratch: Vec<i64> = Vec::new();
        let mut cols: Vec<usize> = Vec::new();
        for t in 0..self.tuples(degree + 1) {
            let tuple = self.tuple(degree + 1, t);
            let head = self.index(&tuple[1..]).expect("non-identity entries") * d;
            let tail = self.index(&tuple[..degree]).expect("non-identity entries") * d;
            let mut merged_cols = Vec::new();
            for j in 1..=degree {
                let p = g.mul(tuple[j - 1], tuple[j]);
                if p == g.identity() {
                    continue;
                }
                let mut merged = tuple[..j - 1].to_vec();
                merged.push(p);
                merged.extend_from_slice(&tuple[j + 1..]);
                let sign = if j % 2 == 1 { -1 } else { 1 };
                merged_cols.push((self.index(&merged).expect("non-identity entries") * d, sign));
            }
            let tail_sign = if (degree + 1) % 2 == 1 { -1 } else { 1 };
            let a = m.action(tuple[0]);
            for r in 0..d {
                scratch.clear();
                cols.clear();
                let push = |c: usize, v: i64, cols: &mut Vec<usize>, scratch: &mut Vec<i64>| {
                    if let Some(k) = cols.iter().position(|&x| x == c) {
                        scratch[k] += v;
                    } else {
                        cols.push(c);
                        scratch.push(v);
                    }
                };
                for c in 0..d {
                    let v = a[(r, c)];
                    if v != 0 {
                        push(head + c, v, &mut cols, &mut scratch);
                    }
                }
                for &(base, s) in &merged_cols {
                    push(base + r, s, &mut cols, &mut scratch);
                }
                push(tail + r, tail_sign, &mut cols, &mut scratch);
                let mut row: Vec<(usize, i64)> =
                    cols.iter().copied().zip(scratch.iter().copied()).filter(|&(_, v)| v != 0).collect();
                row.sort_unstable();
                rows.push(row);
            }
        }
        rows
    }

    /// Relation vectors `m_j e_{(t, j)}` for every tuple and torsion coordinate.
    pub fn relations(&self, m: &GLattice, degree: usize) -> Vec<Vec<BigInt>> {
        let len = self.len(degree);
        let mut out = Vec::new();
        for t in 0..self.tuples(degree) {
            for j in m.free_rank()..self.dim {
                let mut v = vec![BigInt::zero(); len];
                v[t * self.dim + j] = BigInt::from(m.modulus(j));
                out.push(v);
            }
        }
        out
    }
}

pub(crate) fn dense(rows: &[Vec<(usize, i64)>], ncols: usize) -> SmallMatrix {
    let mut m = SmallMatrix::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        for &(j, v) in row {
            m[(i, j)] = v;
        }
    }
    m
}

/// `H^i(G, M)` with explicit generators.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    degree: usize,
    module: GLattice,
    quotient: Subquotient,
    representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &GLattice {
        &self.module
    }

    pub fn shape(&self) -> &AbelianGroupShape {
        self.quotient.shape()
    }

    /// Orders of the canonical generators (0 for a free generator).
    pub fn orders(&self) -> &[BigInt] {
        self.quotient.orders()
    }

    pub fn num_generators(&self) -> usize {
        self.representatives.len()
    }

    /// Normalized cocycles representing the canonical generators.
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// Coordinates of the class of a normalized cocycle.
    pub fn class_of(&self, f: &Cochain) -> Result<Vec<BigInt>> {
        let g = self.module.group();
        if f.degree != self.degree || f.group_order != g.order() || f.dim != self.module.dim() {
            return Err(Error::invalid("cochain does not match this cohomology group"));
        }
        if !f.is_normalized(g.identity()) {
            return Err(Error::invalid("cochain is not normalized"));
        }
        if !coboundary(&self.module, f).is_zero() {
            return Err(Error::invalid("cochain is not a cocycle"));
        }
        let norm = Normalized::new(&self.module);
        self.quotient
            .coordinates(&norm.compress(f))
            .ok_or_else(|| Error::Internal("cocycle outside the computed cocycle lattice".into()))
    }

    /// A normalized cocycle in the class with the given coordinates.
    pub fn cochain_of(&self, coords: &[BigInt]) -> Cochain {
        let norm = Normalized::new(&self.module);
        let v = self.quotient.element(coords);
        let mut f = norm.expand(self.degree, &v);
        let dim = self.module.dim();
        for t in 0..f.num_tuples() {
            self.module.reduce(&mut f.values[t * dim..(t + 1) * dim]);
        }
        f
    }
}

/// `H^i(G, M)` through the normalized inhomogeneous bar resolution.
pub fn cohomology(m: &GLattice, degree: usize) -> Result<CohomologyGroup> {
    cohomology_with_budget(m, degree, &Budget::default())
}

pub fn cohomology_with_budget(m: &GLattice, degree: usize, budget: &Budget) -> Result<CohomologyGroup> {
    budget.check(m.group().order(), degree, m.dim())?;
    let norm = Normalized::new(m);
    let quotient = if m.is_free() && degree >= 1 {
        match saturated_route(m, &norm, degree)? {
            Some(q) => q,
            None => general_route(m, &norm, degree)?,
        }
    } else {
        general_route(m, &norm, degree)?
    };
    let mut out = CohomologyGroup { degree, module: m.clone(), quotient, representatives: Vec::new() };
    let k = out.quotient.generators().len();
    out.representatives = (0..k)
        .map(|j| {
            let mut e = vec![BigInt::zero(); k];
            e[j] = BigInt::from(1);
            out.cochain_of(&e)
        })
        .collect();
    Ok(out)
}

/// Free coefficients in positive degree: `Z^i` is the saturation of `B^i`
/// once `rank D_i = dim C^i - rank D_{i-1}` is certified.
fn saturated_route(m: &GLattice, norm: &Normalized, degree: usize) -> Result<Option<Subquotient>> {
    let rows_prev = norm.boundary_rows(m, degree - 1);
    let d_prev = dense(&rows_prev, norm.len(degree - 1));
    let len = norm.len(degree);
    let (rank, gens, coord_rows, orders) = match smith_generic(&d_prev, SmithOptions::LEFT) {
        Ok(s) => torsion_part(&s),
        Err(_) => torsion_part(&smith_generic(&d_prev.to_big(), SmithOptions::LEFT).expect("exact")),
    };
    let target = len - rank;
    let rows_next = norm.boundary_rows(m, degree);
    if !sparse_rank_at_least(&rows_next, len, target, RANK_PRIME) {
        return Ok(None);
    }
    let coord = if coord_rows.is_empty() { Matrix::zeros(0, len) } else { Matrix::from_rows(coord_rows)? };
    Ok(Some(Subquotient::from_transform(len, gens, coord, orders)))
}

type TorsionPart = (usize, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<BigInt>);

/// Rank, then generators, coordinate rows and orders of the invariant factors above 1.
fn torsion_part<T: IntScalar>(s: &SmithDecomposition<T>) -> TorsionPart {
    let big = |v: &[T]| v.iter().map(IntScalar::to_bigint).collect::<Vec<_>>();
    let mut out = (s.rank, Vec::new(), Vec::new(), Vec::new());
    for t in 0..s.rank {
        let d = s.diagonal[t].to_bigint();
        if d > BigInt::from(1) {
            out.1.push(big(&s.u_inv().column(t)));
            out.2.push(big(s.u().row(t)));
            out.3.push(d);
        }
    }
    out
}

/// `Z^i / (B^i + R^i)` with `Z^i` the projection of `ker [D_i | R^{i+1}]`.
fn general_route(m: &GLattice, norm: &Normalized, degree: usize) -> Result<Subquotient> {
    let len = norm.len(degree);
    let rows_next = norm.boundary_rows(m, degree);
    let rel_next = norm.relations(m, degree + 1);
    let mut big = dense(&rows_next, len).to_big();
    if !rel_next.is_empty() {
        big = big.hcat(&Matrix::from_columns(norm.len(degree + 1), &rel_next));
    }
    let mut cocycles: Vec<Vec<BigInt>> = kernel_basis(&big).into_iter().map(|v| v[..len].to_vec()).collect();
    let rel = norm.relations(m, degree);
    cocycles.extend(rel.iter().cloned());
    let mut bounds = rel;
    if degree >= 1 {
        let rows_prev = norm.boundary_rows(m, degree - 1);
        let d_prev = dense(&rows_prev, norm.len(degree - 1)).to_big();
        for j in 0..d_prev.cols() {
            let c = d_prev.column(j);
            if c.iter().any(|x| !x.is_zero()) {
                bounds.push(c);
            }
        }
    }
    Subquotient::new(len, &cocycles, &bounds)
}

/// Closed-form cohomology of a cyclic group `<s>` of order `m` acting on a
/// free lattice by `a`: odd degree `ker N / im(s - 1)`, positive even degree
/// `ker(s - 1) / im N`, degree 0 the fixed points.
pub fn cyclic_cohomology_shape(a: &SmallMatrix, order: usize, degree: usize) -> Result<AbelianGroupShape> {
    let d = a.rows();
    let a = a.to_big();
    let id = Matrix::identity(d);
    let s1 = a.checked_sub(&id)?;
    let mut norm = Matrix::zeros(d, d);
    let mut p = id.clone();
    for _ in 0..order {
        norm = add(&norm, &p);
        p = &p * &a;
    }
    if !p.is_identity() {
        return Err(Error::invalid("matrix order does not divide the group order"));
    }
    let (kernel_of, image_of) = match degree {
        0 => {
            let k = kernel_basis(&s1);
            return Ok(AbelianGroupShape::free(k.len()));
        }
        i if i % 2 == 1 => (norm, s1),
        _ => (s1, norm),
    };
    let ker = kernel_basis(&kernel_of);
    let img: Vec<Vec<BigInt>> = (0..d).map(|j| image_of.column(j)).collect();
    let mut l1 = ker;
    l1.extend(img.iter().cloned());
    Ok(Subquotient::new(d, &l1, &img)?.shape().clone())
}

fn add(a: &Matrix<BigInt>, b: &Matrix<BigInt>) -> Matrix<BigInt> {
    let data = a.entries().iter().zip(b.entries()).map(|(x, y)| x + y).collect();
    Matrix::new(a.rows(), a.cols(), data).expect("same shape")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gcohom::GroupTable;

    fn sign() -> GLattice {
        GLattice::from_generators(
            Arc::new(GroupTable::cyclic(2)),
            1,
            vec![],
            &[(1, SmallMatrix::from_i64_rows(&[&[-1]]))],
        )
        .unwrap()
    }

    #[test]
    fn sign_lattice_h1() {
        let h = cohomology(&sign(), 1).unwrap();
        assert_eq!(*h.shape(), AbelianGroupShape::cyclic(2));
        let rep = &h.representatives()[0];
        assert!(coboundary(&sign(), rep).is_zero());
        assert_eq!(cohomology(&sign(), 2).unwrap().shape(), &AbelianGroupShape::trivial());
        assert_eq!(cohomology(&sign(), 0).unwrap().shape(), &AbelianGroupShape::trivial());
    }

    #[test]
    fn trivial_coefficients() {
        for m in 1..=6 {
            let z = GLattice::trivial(Arc::new(GroupTable::cyclic(m)), 1);
            assert!(cohomology(&z, 1).unwrap().shape().is_trivial());
            assert_eq!(*cohomology(&z, 2).unwrap().shape(), AbelianGroupShape::cyclic(m as u64));
            assert_eq!(*cohomology(&z, 0).unwrap().shape(), AbelianGroupShape::free(1));
        }
    }

    #[test]
    fn torsion_coefficients() {
        // H^1(Z/2, Z/2) = Hom(Z/2, Z/2) = Z/2, H^2 = Z/2
        let g = Arc::new(GroupTable::cyclic(2));
        let m = GLattice::new(g.clone(), 0, vec![2], vec![SmallMatrix::identity(1); 2]).unwrap();
        for i in 0..=3 {
            assert_eq!(*cohomology(&m, i).unwrap().shape(), AbelianGroupShape::cyclic(2), "degree {i}");
        }
        // H^1(Z/4, Z/2) = Z/2
        let m = GLattice::new(Arc::new(GroupTable::cyclic(4)), 0, vec![2], vec![SmallMatrix::identity(1); 4]).unwrap();
        assert_eq!(*cohomology(&m, 1).unwrap().shape(), AbelianGroupShape::cyclic(2));
    }

    #[test]
    fn klein_augmentation_ideal() {
        let v4 = Arc::new(GroupTable::elementary_abelian_2(2));
        let ig = GLattice::augmentation_kernel(v4.clone(), &v4.trivial_subgroup());
        let h1 = cohomology(&ig, 1).unwrap();
        assert_eq!(*h1.shape(), AbelianGroupShape::cyclic(4));
        for f in h1.representatives() {
            assert!(coboundary(&ig, f).is_zero());
            assert!(f.is_normalized(0));
        }
        // H^1(G, I_G) = H^0-hat(G, Z) and H^2(G, I_G) = H^1(G, Z) = 0
        assert!(cohomology(&ig, 2).unwrap().shape().is_trivial());
    }

    #[test]
    fn budget_is_reported() {
        let z = GLattice::trivial(Arc::new(GroupTable::cyclic(12)), 1);
        let err = cohomology_with_budget(&z, 4, &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { required: 20736, .. }));
    }

    #[test]
    fn class_coordinates_roundtrip() {
        let z = GLattice::trivial(Arc::new(GroupTable::cyclic(6)), 1);
        let h = cohomology(&z, 2).unwrap();
        let c = vec![BigInt::from(5)];
        let f = h.cochain_of(&c);
        assert_eq!(h.class_of(&f).unwrap(), c);
    }

    #[test]
    fn cyclic_closed_form() {
        let a = SmallMatrix::from_i64_rows(&[&[-1]]);
        assert_eq!(cyclic_cohomology_shape(&a, 2, 1).unwrap(), AbelianGroupShape::cyclic(2));
        assert!(cyclic_cohomology_shape(&a, 2, 2).unwrap().is_trivial());
    }
}
