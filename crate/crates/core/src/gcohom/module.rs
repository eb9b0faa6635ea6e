use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{GroupTable, Subgroup};
use crate::error::{Error, Result};
use crate::zlattice::{smith_with, Matrix, SmithOptions};
use crate::SmallMatrix;

/// A finite group acting on `Z^r + Z/m_1 + ... + Z/m_t`.
///
/// Coordinates are ordered free part first. Action matrices act on column
/// vectors, and the entries of torsion rows are kept reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLattice {
    group: Arc<GroupTable>,
    free_rank: usize,
    moduli: Vec<i64>,
    action: Vec<SmallMatrix>,
}

impl GLattice {
    /// Builds from one matrix per group element, checking the module axioms.
    pub fn new(group: Arc<GroupTable>, free_rank: usize, moduli: Vec<i64>, action: Vec<SmallMatrix>) -> Result<Self> {
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::invalid("torsion moduli must be at least 2"));
        }
        if action.len() != group.order() {
            return Err(Error::invalid(format!("expected {} action matrices, got {}", group.order(), action.len())));
        }
        let dim = free_rank + moduli.len();
        let mut lat = Self { group, free_rank, moduli, action: Vec::new() };
        let mut reduced = Vec::with_capacity(action.len());
        for (g, a) in action.into_iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::invalid(format!("action matrix of element {g} must be {dim}x{dim}")));
            }
            lat.check_respects_torsion(&a).map_err(|e| Error::invalid(format!("element {g}: {e}")))?;
            reduced.push(lat.reduce_matrix(&a));
        }
        lat.action = reduced;
        lat.verify_action()?;
        Ok(lat)
    }

    /// Builds from the images of some elements; the remaining matrices are
    /// obtained by closure and every relation of the group is verified.
    pub fn from_generators(
        group: Arc<GroupTable>,
        free_rank: usize,
        moduli: Vec<i64>,
        gens: &[(usize, SmallMatrix)],
    ) -> Result<Self> {
        let n = group.order();
        let dim = free_rank + moduli.len();
        let probe = Self { group: group.clone(), free_rank, moduli: moduli.clone(), action: Vec::new() };
        let mut act: Vec<Option<SmallMatrix>> = vec![None; n];
        act[group.identity()] = Some(SmallMatrix::identity(dim));
        for (g, a) in gens {
            if *g >= n {
                return Err(Error::invalid(format!("generator element {g} out of range")));
            }
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::invalid(format!("action matrix of element {g} must be {dim}x{dim}")));
            }
            probe.check_respects_torsion(a).map_err(|e| Error::invalid(format!("element {g}: {e}")))?;
        }
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let ax = act[x].clone().expect("visited");
            for (g, a) in gens {
                let y = group.mul(x, *g);
                let prod = probe.reduce_matrix(&ax.checked_mul(a).map_err(|_| Error::Overflow)?);
                match &act[y] {
                    Some(existing) if *existing != prod => {
                        return Err(Error::invalid(format!("generator images violate the group law at element {y}")));
                    }
                    Some(_) => {}
                    None => {
                        act[y] = Some(prod);
                        queue.push_back(y);
                    }
                }
            }
        }
        if act.iter().any(Option::is_none) {
            return Err(Error::invalid("the listed elements do not generate the group"));
        }
        Self::new(group, free_rank, moduli, act.into_iter().map(Option::unwrap).collect())
    }

    /// Trivial action on `Z^rank`.
    pub fn trivial(group: Arc<GroupTable>, rank: usize) -> Self {
        let action = vec![SmallMatrix::identity(rank); group.order()];
        Self { group, free_rank: rank, moduli: vec![], action }
    }

    /// Permutation lattice `Z[G/H]` on left cosets, identity coset first.
    pub fn permutation(group: Arc<GroupTable>, h: &Subgroup) -> Self {
        let (reps, act) = group.left_cosets(h);
        let k = reps.len();
        let action = act
            .iter()
            .map(|row| {
                let mut m = SmallMatrix::zeros(k, k);
                for (j, &(jj, _)) in row.iter().enumerate() {
                    m[(jj, j)] = 1;
                }
                m
            })
            .collect();
        Self { group, free_rank: k, moduli: vec![], action }
    }

    /// The regular lattice `Z[G]`.
    pub fn regular(group: Arc<GroupTable>) -> Self {
        let t = group.trivial_subgroup();
        Self::permutation(group, &t)
    }

    /// Kernel of the augmentation `Z[G/H] -> Z`, on the basis `e_j - e_0`.
    pub fn augmentation_kernel(group: Arc<GroupTable>, h: &Subgroup) -> Self {
        let perm = Self::permutation(group.clone(), h);
        let k = perm.free_rank;
        let action = perm
            .action
            .iter()
            .map(|p| {
                // g(e_j - e_0) = e_{pj} - e_{p0} = (e_{pj} - e_0) - (e_{p0} - e_0)
                let img = |j: usize| (0..k).find(|&i| p[(i, j)] == 1).expect("permutation");
                let p0 = img(0);
                let mut m = SmallMatrix::zeros(k - 1, k - 1);
                for j in 1..k {
                    let pj = img(j);
                    if pj != 0 {
                        m[(pj - 1, j - 1)] += 1;
                    }
                    if p0 != 0 {
                        m[(p0 - 1, j - 1)] -= 1;
                    }
                }
                m
            })
            .collect();
        Self { group, free_rank: k - 1, moduli: vec![], action }
    }

    /// `Z[G/H] / Z * N`, where `N` is the sum of all cosets, on the images of
    /// `e_1, ..., e_{k-1}` (the class of `e_0` is minus their sum).
    pub fn norm_quotient(group: Arc<GroupTable>, h: &Subgroup) -> Self {
        let perm = Self::permutation(group.clone(), h);
        let k = perm.free_rank;
        let action = perm
            .action
            .iter()
            .map(|p| {
                let img = |j: usize| (0..k).find(|&i| p[(i, j)] == 1).expect("permutation");
                let mut m = SmallMatrix::zeros(k - 1, k - 1);
                for j in 1..k {
                    let pj = img(j);
                    if pj == 0 {
                        for i in 0..k - 1 {
                            m[(i, j - 1)] -= 1;
                        }
                    } else {
                        m[(pj - 1, j - 1)] += 1;
                    }
                }
                m
            })
            .collect();
        Self { group, free_rank: k - 1, moduli: vec![], action }
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    /// Total number of coordinates.
    pub fn dim(&self) -> usize {
        self.free_rank + self.moduli.len()
    }

    pub fn is_free(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn action(&self, g: usize) -> &SmallMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[SmallMatrix] {
        &self.action
    }

    /// Modulus of coordinate `j`, 0 for free coordinates.
    pub fn modulus(&self, j: usize) -> i64 {
        if j < self.free_rank {
            0
        } else {
            self.moduli[j - self.free_rank]
        }
    }

    /// Moduli of all coordinates as arbitrary-precision orders (0 = free).
    pub fn coordinate_orders(&self) -> Vec<BigInt> {
        (0..self.dim()).map(|j| BigInt::from(self.modulus(j))).collect()
    }

    /// Reduces torsion coordinates into `[0, m)`.
    pub fn reduce(&self, v: &mut [BigInt]) {
        for (j, x) in v.iter_mut().enumerate().skip(self.free_rank) {
            let m = BigInt::from(self.moduli[j - self.free_rank]);
            *x = ((&*x % &m) + &m) % &m;
        }
    }

    pub fn act(&self, g: usize, v: &[BigInt]) -> Vec<BigInt> {
        let a = &self.action[g];
        let mut out: Vec<BigInt> = (0..a.rows())
            .map(|i| {
                let mut s = BigInt::zero();
                for (j, x) in v.iter().enumerate() {
                    let c = a[(i, j)];
                    if c != 0 && !x.is_zero() {
                        s += x * c;
                    }
                }
                s
            })
            .collect();
        self.reduce(&mut out);
        out
    }

    /// Whether `g` acts as the identity.
    pub fn acts_trivially(&self, g: usize) -> bool {
        self.action[g].is_identity()
    }

    /// Elements acting trivially.
    pub fn kernel(&self) -> Subgroup {
        let ker: Vec<usize> = (0..self.group.order()).filter(|&g| self.acts_trivially(g)).collect();
        self.group.subgroup(&ker).expect("kernel of an action is a subgroup")
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().order() == 1
    }

    fn check_respects_torsion(&self, a: &SmallMatrix) -> std::result::Result<(), String> {
        let r = self.free_rank;
        for k in r..a.cols() {
            let mk = self.moduli[k - r];
            for i in 0..a.rows() {
                let c = a[(i, k)];
                if i < r {
                    if c != 0 {
                        return Err(format!("torsion column {k} maps into the free part"));
                    }
                } else {
                    let mi = self.moduli[i - r];
                    if (mk as i128 * c as i128) % mi as i128 != 0 {
                        return Err(format!("entry ({i}, {k}) does not respect the moduli {mk} -> {mi}"));
                    }
                }
            }
        }
        Ok(())
    }

    fn reduce_matrix(&self, a: &SmallMatrix) -> SmallMatrix {
        let mut out = a.clone();
        for i in self.free_rank..a.rows() {
            let m = self.moduli[i - self.free_rank];
            for j in 0..a.cols() {
                out[(i, j)] = a[(i, j)].rem_euclid(m);
            }
        }
        out
    }

    fn verify_action(&self) -> Result<()> {
        let g = &self.group;
        if !self.action[g.identity()].is_identity() {
            return Err(Error::invalid("the identity must act trivially"));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let prod = self.action[a].checked_mul(&self.action[b]).map_err(|_| Error::Overflow)?;
                if self.reduce_matrix(&prod) != self.action[g.mul(a, b)] {
                    return Err(Error::invalid(format!("action is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        // torsion rows also see the free columns only modulo m; nothing else to check
        Ok(())
    }

    /// Restriction to a subgroup, as a lattice over the subgroup table
    /// returned by [`GroupTable::subgroup_table`].
    pub fn restrict(&self, h: &Subgroup) -> (Self, Vec<usize>) {
        let (ht, emb) = self.group.subgroup_table(h);
        let action = emb.iter().map(|&g| self.action[g].clone()).collect();
        (Self { group: Arc::new(ht), free_rank: self.free_rank, moduli: self.moduli.clone(), action }, emb)
    }

    /// Pulls back along a surjection `other -> group` given as an index map.
    pub fn pullback(&self, other: Arc<GroupTable>, proj: &[usize]) -> Result<Self> {
        if proj.len() != other.order() {
            return Err(Error::invalid("projection map has the wrong length"));
        }
        let action = proj.iter().map(|&q| self.action[q].clone()).collect();
        Self::new(other, self.free_rank, self.moduli.clone(), action)
    }

    /// `M + N`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::invalid("direct sum needs a common group"));
        }
        let (a, b) = (self, other);
        // reorder coordinates as (free a, free b, torsion a, torsion b)
        let (ra, rb) = (a.free_rank, b.free_rank);
        let (ta, tb) = (a.moduli.len(), b.moduli.len());
        let dim = ra + rb + ta + tb;
        let pos_a = |j: usize| if j < ra { j } else { ra + rb + (j - ra) };
        let pos_b = |j: usize| if j < rb { ra + j } else { ra + rb + ta + (j - rb) };
        let action = (0..a.group.order())
            .map(|g| {
                let mut m = SmallMatrix::zeros(dim, dim);
                let (ma, mb) = (&a.action[g], &b.action[g]);
                for i in 0..ma.rows() {
                    for j in 0..ma.cols() {
                        m[(pos_a(i), pos_a(j))] = ma[(i, j)];
                    }
                }
                for i in 0..mb.rows() {
                    for j in 0..mb.cols() {
                        m[(pos_b(i), pos_b(j))] = mb[(i, j)];
                    }
                }
                m
            })
            .collect();
        let mut moduli = a.moduli.clone();
        moduli.extend_from_slice(&b.moduli);
        Self::new(a.group.clone(), ra + rb, moduli, action)
    }

    /// Contragredient `Hom(M, Z)` with action `g -> (A_{g^-1})^T`.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_free() {
            return Err(Error::invalid("dual lattice needs a free module"));
        }
        let action = (0..self.group.order()).map(|g| self.action[self.group.inv(g)].transpose()).collect();
        Ok(Self { group: self.group.clone(), free_rank: self.free_rank, moduli: vec![], action })
    }

    /// `M / nM` for a free module, as a torsion module.
    pub fn tensor_mod(&self, n: i64) -> Result<Self> {
        if !self.is_free() {
            return Err(Error::invalid("reduction modulo n needs a free module"));
        }
        if n < 2 {
            return Err(Error::invalid("modulus must be at least 2"));
        }
        let action = self.action.iter().map(|a| a.map(|x| x.rem_euclid(n))).collect();
        Self::new(self.group.clone(), 0, vec![n; self.free_rank], action)
    }

    /// Basis of the fixed sublattice `M^H` of a free module.
    pub fn fixed_basis(&self, h: &Subgroup) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_free() {
            return Err(Error::invalid("fixed sublattice needs a free module"));
        }
        let d = self.free_rank;
        let gens = self.group.generate(h.elements());
        let blocks: Vec<Matrix<BigInt>> = gens
            .elements()
            .iter()
            .filter(|&&g| g != self.group.identity())
            .map(|&g| self.action[g].to_big().checked_sub(&Matrix::identity(d)).expect("bigint"))
            .collect();
        if blocks.is_empty() {
            return Ok((0..d).map(|i| unit(d, i)).collect());
        }
        let stacked = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.vcat(b));
        Ok(smith_with(&stacked, SmithOptions::RIGHT).kernel_basis())
    }
}

pub(crate) fn unit(d: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d];
    v[i] = BigInt::from(1);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> Arc<GroupTable> {
        Arc::new(GroupTable::cyclic(n))
    }

    #[test]
    fn sign_lattice_from_generator() {
        let m = GLattice::from_generators(g(2), 1, vec![], &[(1, SmallMatrix::from_i64_rows(&[&[-1]]))]).unwrap();
        assert_eq!(m.action(1)[(0, 0)], -1);
        assert!(GLattice::from_generators(g(3), 1, vec![], &[(1, SmallMatrix::from_i64_rows(&[&[-1]]))]).is_err());
    }

    #[test]
    fn augmentation_and_norm_quotient_are_dual() {
        let v4 = Arc::new(GroupTable::elementary_abelian_2(2));
        let t = v4.trivial_subgroup();
        let ig = GLattice::augmentation_kernel(v4.clone(), &t);
        let q = GLattice::norm_quotient(v4.clone(), &t);
        assert_eq!(ig.free_rank(), 3);
        assert_eq!(q.free_rank(), 3);
        assert_eq!(GLattice::regular(v4).free_rank(), 4);
        // both constructions pass the homomorphism check
        GLattice::new(ig.group().clone(), 3, vec![], ig.actions().to_vec()).unwrap();
        GLattice::new(q.group().clone(), 3, vec![], q.dual().unwrap().actions().to_vec()).unwrap();
    }

    #[test]
    fn torsion_module_checks() {
        let bad = SmallMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        // column of Z/2 into the free part
        assert!(GLattice::new(g(1), 1, vec![2], vec![bad]).is_err());
        let ok = GLattice::new(g(1), 0, vec![2, 4], vec![SmallMatrix::identity(2)]).unwrap();
        assert_eq!(ok.dim(), 2);
        // Z/2 -> Z/4 must land in 2Z/4
        let m = SmallMatrix::from_i64_rows(&[&[1, 0], &[1, 1]]);
        assert!(GLattice::new(g(1), 0, vec![2, 4], vec![m]).is_err());
    }
}
