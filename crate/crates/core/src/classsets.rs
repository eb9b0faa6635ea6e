//! Picard groups, unit groups and class sets of split tori over open subsets
//! of `P^1` over `F_p`, and class groups of imaginary quadratic fields by
//! reduced binary quadratic forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fpoly::{check_prime, FpPoly, RatFunc};
use crate::gcohom::GroupTable;
use crate::places::Place;
use crate::zlattice::{kernel_basis, AbelianGroupShape, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenCurve {
    p: u64,
    removed: Vec<Place>,
}

impl OpenCurve {
    pub fn new(p: u64, mut removed: Vec<Place>) -> Result<Self> {
        check_prime(p)?;
        for v in &removed {
            match v {
                Place::Infinity => {}
                Place::Poly(f) if f.p() == p => {}
                _ => return Err(Error::invalid(format!("{v} is not a place of F_{p}(t)"))),
            }
        }
        let n = removed.len();
        removed.sort();
        removed.dedup();
        if removed.len() != n {
            return Err(Error::invalid("removed places must be distinct"));
        }
        Ok(Self { p, removed })
    }

    pub fn projective_line(p: u64) -> Result<Self> {
        Self::new(p, vec![])
    }

    /// `A^1 = P^1` minus infinity.
    pub fn affine_line(p: u64) -> Result<Self> {
        Self::new(p, vec![Place::Infinity])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn removed(&self) -> &[Place] {
        &self.removed
    }

    pub fn without(&self, extra: &[Place]) -> Result<Self> {
        let mut r = self.removed.clone();
        r.extend_from_slice(extra);
        Self::new(self.p, r)
    }

    fn degree_gcd(&self) -> usize {
        self.removed.iter().fold(0, |g, v| g.gcd(&v.degree()))
    }

    /// First degree-1 place still on the curve: `(t - c)` for `c = 0, 1, ...`, then infinity.
    fn free_degree_one_place(&self) -> Option<Place> {
        (0..self.p)
            .map(|c| Place::Poly(FpPoly::from_i64(self.p, &[-(c as i64), 1])))
            .chain(std::iter::once(Place::Infinity))
            .find(|v| !self.removed.contains(v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardGroup {
    pub shape: AbelianGroupShape,
    /// Places whose classes generate.
    pub generators: Vec<Place>,
}

/// `Z` for `P^1`, otherwise `Z / gcd(deg v : v removed)`.
pub fn picard_open_p1(curve: &OpenCurve) -> PicardGroup {
    let g = curve.degree_gcd();
    let shape = if curve.removed.is_empty() { AbelianGroupShape::free(1) } else { AbelianGroupShape::cyclic(g as u64) };
    let generators = if shape.is_trivial() {
        vec![]
    } else {
        vec![curve.free_degree_one_place().expect("a degree-1 place survives when Pic is nontrivial")]
    };
    PicardGroup { shape, generators }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    /// Order of the constant units `F_p^*`.
    pub torsion_order: u64,
    pub free_rank: usize,
    pub generators: Vec<RatFunc>,
}

impl UnitGroup {
    /// Orders of the generators at the removed places, one row per generator.
    pub fn divisor_matrix(&self, curve: &OpenCurve) -> Vec<Vec<i64>> {
        self.generators
            .iter()
            .map(|u| {
                curve
                    .removed
                    .iter()
                    .map(|v| match v {
                        Place::Poly(f) => u.ord_at(f),
                        _ => u.ord_infinity(),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Units of the coordinate ring of `P^1` minus the removed places.
pub fn units_open_p1(curve: &OpenCurve) -> Result<UnitGroup> {
    let p = curve.p;
    let finite: Vec<&FpPoly> = curve
        .removed
        .iter()
        .filter_map(|v| match v {
            Place::Poly(f) => Some(f),
            _ => None,
        })
        .collect();
    let generators: Vec<RatFunc> = if curve.removed.contains(&Place::Infinity) {
        finite.iter().map(|f| RatFunc::from_poly((*f).clone())).collect()
    } else if finite.len() < 2 {
        vec![]
    } else {
        // exponent vectors of total degree zero
        let degs = Matrix::from_rows(vec![finite.iter().map(|f| BigInt::from(f.degree().unwrap_or(0))).collect()])?;
        kernel_basis(&degs)
            .into_iter()
            .map(|mut e| {
                if e.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
                    e.iter_mut().for_each(|x| *x = -x.clone());
                }
                let (mut num, mut den) = (FpPoly::one(p), FpPoly::one(p));
                for (f, k) in finite.iter().zip(&e) {
                    let k = i64::try_from(k).expect("small exponent");
                    if k > 0 {
                        num = &num * &f.pow(k as u64);
                    } else if k < 0 {
                        den = &den * &f.pow((-k) as u64);
                    }
                }
                RatFunc::new(num, den).expect("monic denominator")
            })
            .collect()
    };
    Ok(UnitGroup { torsion_order: p - 1, free_rank: generators.len(), generators })
}

/// `Pic(V)^d`, the class set of `G_m^d`.
pub fn class_set_split_torus(curve: &OpenCurve, d: usize) -> Result<AbelianGroupShape> {
    if d == 0 {
        return Err(Error::invalid("torus dimension must be positive"));
    }
    Ok(picard_open_p1(curve).shape.power(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionTWitness {
    pub places: Vec<Place>,
    pub class_set_after: AbelianGroupShape,
    pub verified: bool,
}

/// Greedily removes degree-1 places until the class set of `G_m^d` is trivial.
pub fn condition_t_split(curve: &OpenCurve, d: usize) -> Result<ConditionTWitness> {
    let mut places = Vec::new();
    let mut current = curve.clone();
    while !class_set_split_torus(&current, d)?.is_trivial() {
        let v = current.free_degree_one_place().ok_or_else(|| Error::Internal("no degree-1 place left".into()))?;
        current = current.without(std::slice::from_ref(&v))?;
        places.push(v);
    }
    let class_set_after = class_set_split_torus(&current, d)?;
    Ok(ConditionTWitness { places, verified: class_set_after.is_trivial(), class_set_after })
}

/// Primitive positive definite form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    pub fn reduce(self) -> Self {
        let QuadForm { mut a, mut b, mut c } = self;
        loop {
            // b into (-a, a]
            if b <= -a || b > a {
                let two_a = 2 * a;
                let k = Integer::div_floor(&(a - b), &two_a);
                let nb = b + two_a * k;
                c = (nb * nb - self.discriminant()) / (4 * a);
                b = nb;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if a == c && b < 0 {
                b = -b;
            }
            return QuadForm { a, b, c };
        }
    }

    /// Gaussian composition followed by reduction.
    pub fn compose(&self, other: &Self) -> Self {
        let (mut f1, mut f2) = (*self, *other);
        if f1.a > f2.a {
            std::mem::swap(&mut f1, &mut f2);
        }
        let (a1, b1) = (f1.a as i128, f1.b as i128);
        let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
        let s = (b1 + b2) / 2;
        let n = b2 - s;
        let (y1, d) = if a2 % a1 == 0 {
            (0, a1)
        } else {
            let e = a2.extended_gcd(&a1);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s % d == 0 {
            (0, -1, d)
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = a1 / d1;
        let v2 = a2 / d1;
        let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
        let b3 = b2 + 2 * v2 * r;
        let a3 = v1 * v2;
        let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
        QuadForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }.reduce()
    }

    pub fn inverse(&self) -> Self {
        QuadForm { a: self.a, b: -self.b, c: self.c }.reduce()
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    let squarefree = |m: i64| {
        let m = m.unsigned_abs();
        let mut k = 2u64;
        while k * k <= m {
            if m.is_multiple_of(k * k) {
                return false;
            }
            k += 1;
        }
        true
    };
    match d.rem_euclid(4) {
        1 => d != 1 && squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

/// All primitive reduced forms of discriminant `d`, sorted.
pub fn reduced_forms(d: i64) -> Vec<QuadForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            let f = QuadForm { a, b, c };
            if f.is_reduced() && a.gcd(&b).gcd(&c) == 1 {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassGroup {
    pub discriminant: i64,
    pub forms: Vec<QuadForm>,
    pub shape: AbelianGroupShape,
    /// Composition table on `forms`.
    pub table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn class_number(&self) -> usize {
        self.forms.len()
    }
}

pub fn class_group_imaginary_quadratic(d: i64) -> Result<ClassGroup> {
    if d >= 0 || !is_fundamental_discriminant(d) {
        return Err(Error::invalid(format!("{d} is not a negative fundamental discriminant")));
    }
    let forms = reduced_forms(d);
    let mut table = vec![vec![0; forms.len()]; forms.len()];
    for (i, f) in forms.iter().enumerate() {
        for (j, g) in forms.iter().enumerate() {
            let h = f.compose(g);
            table[i][j] = forms
                .binary_search(&h)
                .map_err(|_| Error::Internal(format!("composition of {f} and {g} left the reduced forms")))?;
        }
    }
    let group = GroupTable::from_table(table.clone())?;
    let shape = abelian_invariants(&group)?;
    Ok(ClassGroup { discriminant: d, forms, shape, table })
}

/// Invariant factors of a finite abelian group from its `p^k`-torsion counts.
pub fn abelian_invariants(g: &GroupTable) -> Result<AbelianGroupShape> {
    if !g.is_abelian() {
        return Err(Error::invalid("group is not abelian"));
    }
    let n = g.order();
    let mut cyclic: Vec<BigInt> = Vec::new();
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if !m.is_multiple_of(q) {
            q += 1;
            continue;
        }
        while m.is_multiple_of(q) {
            m /= q;
        }
        // r_k = number of cyclic factors of order >= q^k
        let mut counts = vec![1usize];
        let mut pk = 1;
        loop {
            pk *= q;
            let c = (0..n).filter(|&x| g.pow(x, pk) == g.identity()).count();
            if c == *counts.last().expect("nonempty") {
                break;
            }
            counts.push(c);
        }
        let mut r: Vec<u32> = counts.windows(2).map(|w| (w[1] / w[0]).ilog(q)).collect();
        r.push(0);
        for k in 0..r.len() - 1 {
            for _ in 0..(r[k] - r[k + 1]) {
                cyclic.push(BigInt::from(q).pow(k as u32 + 1));
            }
        }
    }
    Ok(AbelianGroupShape::from_cyclic_orders(&cyclic))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[i64]) -> Place {
        Place::poly(FpPoly::from_i64(p, c)).unwrap()
    }

    #[test]
    fn picard_examples() {
        assert!(picard_open_p1(&OpenCurve::affine_line(3).unwrap()).shape.is_trivial());
        assert_eq!(picard_open_p1(&OpenCurve::projective_line(3).unwrap()).shape, AbelianGroupShape::free(1));
        let c = OpenCurve::new(3, vec![poly(3, &[1, 0, 1])]).unwrap();
        let pic = picard_open_p1(&c);
        assert_eq!(pic.shape, AbelianGroupShape::cyclic(2));
        assert_eq!(pic.generators.len(), 1);
        assert_eq!(class_set_split_torus(&c, 2).unwrap(), AbelianGroupShape::from_factors(&[2, 2], 0).unwrap());
        assert!(OpenCurve::new(3, vec![Place::Infinity, Place::Infinity]).is_err());
    }

    #[test]
    fn unit_examples() {
        let c = OpenCurve::new(3, vec![Place::Infinity, poly(3, &[0, 1])]).unwrap();
        let u = units_open_p1(&c).unwrap();
        assert_eq!((u.torsion_order, u.free_rank), (2, 1));
        assert_eq!(u.generators[0], RatFunc::from_poly(FpPoly::t(3)));
        assert_eq!(units_open_p1(&OpenCurve::affine_line(3).unwrap()).unwrap().free_rank, 0);
        let c2 = OpenCurve::new(2, vec![poly(2, &[0, 1]), poly(2, &[1, 1])]).unwrap();
        let u2 = units_open_p1(&c2).unwrap();
        assert_eq!(u2.free_rank, 1);
        let g = &u2.generators[0];
        assert_eq!(g.num(), &FpPoly::t(2));
        assert_eq!(g.den(), &FpPoly::from_i64(2, &[1, 1]));
    }

    #[test]
    fn condition_t() {
        let w = condition_t_split(&OpenCurve::affine_line(5).unwrap(), 3).unwrap();
        assert!(w.places.is_empty() && w.verified);
        let w = condition_t_split(&OpenCurve::projective_line(5).unwrap(), 1).unwrap();
        assert_eq!(w.places.len(), 1);
        let c = OpenCurve::new(3, vec![poly(3, &[1, 0, 1])]).unwrap();
        let w = condition_t_split(&c, 2).unwrap();
        assert_eq!(w.places.len(), 1);
        assert_eq!(w.places[0].degree(), 1);
    }

    #[test]
    fn class_numbers() {
        let h = |d| class_group_imaginary_quadratic(d).unwrap();
        assert_eq!(h(-3).class_number(), 1);
        assert_eq!(h(-4).class_number(), 1);
        let g23 = h(-23);
        assert_eq!(
            g23.forms,
            vec![QuadForm { a: 1, b: 1, c: 6 }, QuadForm { a: 2, b: -1, c: 3 }, QuadForm { a: 2, b: 1, c: 3 }]
        );
        assert_eq!(g23.shape, AbelianGroupShape::cyclic(3));
        assert_eq!(h(-84).shape, AbelianGroupShape::from_factors(&[2, 2], 0).unwrap());
        assert_eq!(h(-56).shape, AbelianGroupShape::cyclic(4));
        assert!(class_group_imaginary_quadratic(-12).is_err());
        assert!(class_group_imaginary_quadratic(5).is_err());
    }
}
