use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// A subgroup as a sorted list of element indices of its ambient table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.0.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.0.iter().all(|&g| other.contains(g))
    }
}

/// Finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    identity: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validates the group axioms exhaustively.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::invalid("group table is empty"));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("group table must be square with entries below its order"));
        }
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g && mul[g * n + e] == g))
            .ok_or_else(|| Error::invalid("group table has no identity"))?;
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g * n + h] == identity && mul[h * n + g] == identity)
                .ok_or_else(|| Error::invalid(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::invalid(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self { n, identity, mul, inv })
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_table(table).expect("constructed tables satisfy the axioms")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n`, element `k` standing for the generator to the power `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// `Z/n_1 x ... x Z/n_k` with mixed-radix indexing (first factor fastest).
    pub fn abelian(orders: &[usize]) -> Self {
        let n: usize = orders.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&m| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect()
        };
        Self::from_fn(n, |a, b| {
            let (da, db) = (digits(a), digits(b));
            let mut idx = 0;
            for k in (0..orders.len()).rev() {
                idx = idx * orders[k] + (da[k] + db[k]) % orders[k];
            }
            idx
        })
    }

    /// `(Z/2)^k` indexed by bitmasks, so multiplication is XOR.
    pub fn elementary_abelian_2(k: u32) -> Self {
        Self::from_fn(1 << k, |a, b| a ^ b)
    }

    /// Dihedral group of order `2m`: element `r^i s^j` has index `i + m j`.
    pub fn dihedral(m: usize) -> Self {
        Self::from_fn(2 * m, |a, b| {
            let (i1, j1) = (a % m, a / m);
            let (i2, j2) = (b % m, b / m);
            let i = if j1 == 0 { (i1 + i2) % m } else { (i1 + m - i2) % m };
            i + m * ((j1 + j2) % 2)
        })
    }

    pub fn direct_product(&self, other: &GroupTable) -> Self {
        let m = other.n;
        Self::from_fn(self.n * m, |a, b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements other than the identity, in index order.
    pub fn non_identity(&self) -> Vec<usize> {
        (0..self.n).filter(|&g| g != self.identity).collect()
    }

    /// Subgroup generated by the given elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup(seen.into_iter().collect())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup((0..self.n).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![self.identity])
    }

    /// Validates that the given indices form a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if set.iter().any(|&g| g >= self.n) {
            return Err(Error::NotSubgroup("element index out of range".into()));
        }
        if !set.contains(&self.identity) {
            return Err(Error::NotSubgroup("missing the identity".into()));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("not closed: {a} * {b} = {}", self.mul(a, b))));
                }
            }
        }
        Ok(Subgroup(set.into_iter().collect()))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        (0..self.n).all(|g| h.elements().iter().all(|&x| h.contains(self.mul(self.mul(g, x), self.inv(g)))))
    }

    /// All cyclic subgroups, sorted.
    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let set: BTreeSet<Subgroup> = (0..self.n).map(|g| self.generate(&[g])).collect();
        set.into_iter().collect()
    }

    /// All subgroups, obtained by closing the cyclic subgroups under joins.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclic = self.cyclic_subgroups();
        let mut all: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.is_subset_of(h) {
                        continue;
                    }
                    let mut gens = h.elements().to_vec();
                    gens.extend_from_slice(c.elements());
                    let j = self.generate(&gens);
                    if all.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }

    /// The subgroup as a group in its own right, with its embedding.
    /// The identity of the subgroup table is index 0 and maps to the ambient identity.
    pub fn subgroup_table(&self, h: &Subgroup) -> (GroupTable, Vec<usize>) {
        let mut emb: Vec<usize> = vec![self.identity];
        emb.extend(h.elements().iter().copied().filter(|&g| g != self.identity));
        let pos = |g: usize| emb.iter().position(|&x| x == g).expect("closed subgroup");
        let table = emb.iter().map(|&a| emb.iter().map(|&b| pos(self.mul(a, b))).collect()).collect();
        (GroupTable::from_table(table).expect("subgroup of a group"), emb)
    }

    /// Quotient by a normal subgroup with the projection map.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<(GroupTable, Vec<usize>)> {
        if !self.is_normal(nsub) {
            return Err(Error::NotSubgroup("quotient needs a normal subgroup".into()));
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for g in 0..self.n {
            if proj[g] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(g);
            for &x in nsub.elements() {
                proj[self.mul(g, x)] = k;
            }
        }
        let table = reps.iter().map(|&a| reps.iter().map(|&b| proj[self.mul(a, b)]).collect()).collect();
        Ok((GroupTable::from_table(table)?, proj))
    }

    /// Left coset representatives of `h`, identity first, and for every
    /// `(g, j)` the pair `(j', h')` with `g * t_j = t_j' * h'`.
    pub fn left_cosets(&self, h: &Subgroup) -> (Vec<usize>, Vec<Vec<(usize, usize)>>) {
        let mut which = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        let order: Vec<usize> =
            std::iter::once(self.identity).chain((0..self.n).filter(|&g| g != self.identity)).collect();
        for g in order {
            if which[g] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(g);
            for &x in h.elements() {
                which[self.mul(g, x)] = k;
            }
        }
        let action = (0..self.n)
            .map(|g| {
                reps.iter()
                    .map(|&t| {
                        let gt = self.mul(g, t);
                        let j = which[gt];
                        (j, self.mul(self.inv(reps[j]), gt))
                    })
                    .collect()
            })
            .collect();
        (reps, action)
    }

    /// A small generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for g in 0..self.n {
            if !cur.contains(g) {
                gens.push(g);
                cur = self.generate(&gens);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        let c6 = GroupTable::cyclic(6);
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.all_subgroups().len(), 4);
        let v4 = GroupTable::elementary_abelian_2(2);
        assert_eq!(v4.all_subgroups().len(), 5);
        assert_eq!(v4.cyclic_subgroups().len(), 4);
        let d4 = GroupTable::dihedral(4);
        assert!(!d4.is_abelian());
        assert_eq!(d4.all_subgroups().len(), 10);
        let s3 = GroupTable::dihedral(3);
        assert_eq!(s3.all_subgroups().len(), 6);
        assert_eq!(GroupTable::abelian(&[2, 3]).element_order(1), 2);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(GroupTable::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        let c4 = GroupTable::cyclic(4);
        assert!(c4.subgroup(&[0, 1]).is_err());
        assert!(c4.subgroup(&[0, 2]).is_ok());
    }

    #[test]
    fn quotient_and_cosets() {
        let c4 = GroupTable::cyclic(4);
        let n = c4.subgroup(&[0, 2]).unwrap();
        let (q, proj) = c4.quotient(&n).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj[1], proj[3]);
        let (reps, act) = c4.left_cosets(&n);
        assert_eq!(reps.len(), 2);
        assert_eq!(act[1][0].0, 1);
    }
}
