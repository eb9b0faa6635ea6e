use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::smith::{smith_with, SmithOptions};
use crate::error::{Error, Result};

/// Invariant-factor presentation `Z/d_1 x ... x Z/d_k x Z^r` with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroupShape {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl AbelianGroupShape {
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Result<Self> {
        if invariant_factors.iter().any(|d| *d <= BigInt::one()) {
            return Err(Error::invalid("invariant factors must exceed 1"));
        }
        if invariant_factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::invalid("invariant factors must form a divisibility chain"));
        }
        Ok(Self { invariant_factors, free_rank })
    }

    pub fn trivial() -> Self {
        Self { invariant_factors: vec![], free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        Self { invariant_factors: vec![], free_rank: rank }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => Self { invariant_factors: vec![BigInt::from(n)], free_rank: 0 },
        }
    }

    pub fn from_factors(factors: &[u64], free_rank: usize) -> Result<Self> {
        Self::new(factors.iter().map(|&f| BigInt::from(f)).collect(), free_rank)
    }

    /// Canonical shape of `Z/a_1 x ... x Z/a_n` for arbitrary cyclic orders
    /// (0 meaning `Z`, 1 meaning trivial).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let diag = Matrix::diagonal(orders);
        let s = smith_with(&diag, SmithOptions::NONE);
        Self::from_diagonal(&s.diagonal, n)
    }

    /// Reads off the cokernel shape of a matrix with `rows` rows from its Smith diagonal.
    pub(crate) fn from_diagonal(diagonal: &[BigInt], rows: usize) -> Self {
        let factors: Vec<BigInt> = diagonal.iter().filter(|d| **d > BigInt::one()).cloned().collect();
        let nonzero = diagonal.iter().filter(|d| !d.is_zero()).count();
        Self { invariant_factors: factors, free_rank: rows - nonzero }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Number of generators in the canonical presentation.
    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len() + self.free_rank
    }

    /// Orders of the canonical generators, `0` for free generators.
    pub fn generator_orders(&self) -> Vec<BigInt> {
        let mut v = self.invariant_factors.clone();
        v.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank));
        v
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_cyclic_orders(&orders)
    }

    pub fn power(&self, d: usize) -> Self {
        (0..d).fold(Self::trivial(), |acc, _| acc.direct_sum(self))
    }

    /// Whether every invariant factor divides `n`.
    pub fn annihilated_by(&self, n: &BigInt) -> bool {
        self.is_finite() && self.invariant_factors.iter().all(|d| (n % d).is_zero())
    }

    /// Shape of the subgroup of elements killed by `l`.
    pub fn torsion(&self, l: &BigInt) -> Self {
        let mut orders: Vec<BigInt> = self.invariant_factors.iter().map(|d| d.gcd(l)).collect();
        orders.extend(std::iter::repeat_n(BigInt::one(), self.free_rank));
        Self::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for AbelianGroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Shape of `Z^rows / A * Z^cols`.
pub fn cokernel_shape(a: &Matrix<BigInt>) -> AbelianGroupShape {
    let s = smith_with(a, SmithOptions::NONE);
    AbelianGroupShape::from_diagonal(&s.diagonal, a.rows())
}

/// Reduces a coordinate vector into canonical range `[0, d)` per generator.
pub(crate) fn reduce_coords(coords: &mut [BigInt], orders: &[BigInt]) {
    for (c, d) in coords.iter_mut().zip(orders) {
        if d.is_positive() {
            *c = c.mod_floor(d);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        let s = cokernel_shape(&Matrix::from_i64(&[&[5]]));
        assert_eq!(s, AbelianGroupShape::cyclic(5));
        let s = cokernel_shape(&Matrix::zeros(2, 2));
        assert_eq!(s, AbelianGroupShape::free(2));
        let s = cokernel_shape(&Matrix::from_i64(&[&[2, 4], &[6, 8]]));
        assert_eq!(s, AbelianGroupShape::from_factors(&[2, 4], 0).unwrap());
    }

    #[test]
    fn canonical_combination() {
        let a = AbelianGroupShape::cyclic(2).direct_sum(&AbelianGroupShape::cyclic(3));
        assert_eq!(a, AbelianGroupShape::cyclic(6));
        let p = AbelianGroupShape::cyclic(2).power(3);
        assert_eq!(p.invariant_factors().len(), 3);
        assert_eq!(p.order(), Some(BigInt::from(8)));
        assert_eq!(AbelianGroupShape::cyclic(12).torsion(&BigInt::from(2)), AbelianGroupShape::cyclic(2));
        assert!(AbelianGroupShape::new(vec![BigInt::from(4), BigInt::from(2)], 0).is_err());
        assert_eq!(format!("{}", AbelianGroupShape::from_factors(&[2, 4], 1).unwrap()), "Z/2 x Z/4 x Z");
    }
}
