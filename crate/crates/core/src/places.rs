//! Global-field models, places, supports, and Frobenius and inertia data for
//! explicit abelian splitting data.
//!
//! Two models are supported: `Q` with its finite primes, and `F_p(t)` with its
//! geometric places (monic irreducibles and the place at infinity).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::artinschreier::canonical_reduction;
use crate::error::{Error, Result};
use crate::fpoly::{check_prime, inv_mod, is_prime, norm_mod, pow_mod, primitive_root, trace_mod, FpPoly, RatFunc};
use crate::gcohom::{GroupTable, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GlobalFieldModel {
    Rationals,
    /// `F_p(t)` for a prime `p`.
    FunctionField {
        p: u64,
    },
}

impl GlobalFieldModel {
    pub fn function_field(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::FunctionField { p })
    }

    /// Characteristic, `None` for `Q`.
    pub fn characteristic(&self) -> Option<u64> {
        match self {
            Self::Rationals => None,
            Self::FunctionField { p } => Some(*p),
        }
    }

    fn check_place(&self, v: &Place) -> Result<()> {
        let ok = match (self, v) {
            (Self::Rationals, Place::Prime(_)) => true,
            (Self::FunctionField { p }, Place::Poly(f)) => f.p() == *p,
            (Self::FunctionField { .. }, Place::Infinity) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("place {v} does not belong to the model")))
        }
    }

    /// The places used by sampling sweeps: primes up to `bound` for `Q`;
    /// monic irreducibles of degree at most `bound`, then infinity, for `F_p(t)`.
    pub fn places_up_to(&self, bound: usize) -> Vec<Place> {
        match self {
            Self::Rationals => (2..=bound as u64).filter(|&q| is_prime(q)).map(Place::Prime).collect(),
            Self::FunctionField { p } => {
                let mut out: Vec<Place> =
                    (1..=bound).flat_map(|d| FpPoly::irreducibles_of_degree(*p, d)).map(Place::Poly).collect();
                out.push(Place::Infinity);
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Prime(u64),
    /// Monic irreducible polynomial.
    Poly(FpPoly),
    Infinity,
}

impl Place {
    pub fn prime(q: u64) -> Result<Self> {
        if is_prime(q) {
            Ok(Self::Prime(q))
        } else {
            Err(Error::invalid(format!("{q} is not prime")))
        }
    }

    pub fn poly(f: FpPoly) -> Result<Self> {
        if f.is_monic() && f.is_irreducible() {
            Ok(Self::Poly(f))
        } else {
            Err(Error::invalid(format!("{f} is not monic irreducible")))
        }
    }

    /// Residue degree over the prime field (1 for primes of `Q`).
    pub fn degree(&self) -> usize {
        match self {
            Self::Poly(f) => f.degree().unwrap_or(0),
            _ => 1,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Prime(q) => write!(f, "{q}"),
            Self::Poly(g) => write!(f, "({g})"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldElement {
    Rational { num: BigInt, den: BigInt },
    Function(RatFunc),
}

impl FieldElement {
    pub fn integer(n: i64) -> Self {
        Self::Rational { num: n.into(), den: BigInt::one() }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Rational { num, .. } => num.is_zero(),
            Self::Function(f) => f.is_zero(),
        }
    }
}

fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut k = 0;
            while n.is_multiple_of(d) {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn small_abs(n: &BigInt) -> Result<u64> {
    n.abs().to_u64().ok_or_else(|| Error::invalid("integer too large for trial division"))
}

/// `ord_v(a)` for nonzero `a`.
pub fn ord(model: &GlobalFieldModel, a: &FieldElement, v: &Place) -> Result<i64> {
    model.check_place(v)?;
    if a.is_zero() {
        return Err(Error::invalid("the order of zero is undefined"));
    }
    match (a, v) {
        (FieldElement::Rational { num, den }, Place::Prime(q)) => {
            let qq = BigInt::from(*q);
            let count = |mut n: BigInt| {
                let mut k = 0i64;
                while (&n % &qq).is_zero() {
                    n /= &qq;
                    k += 1;
                }
                k
            };
            Ok(count(num.clone()) - count(den.clone()))
        }
        (FieldElement::Function(f), Place::Poly(g)) => Ok(f.ord_at(g)),
        (FieldElement::Function(f), Place::Infinity) => Ok(f.ord_infinity()),
        _ => Err(Error::invalid("element does not belong to the model")),
    }
}

/// The finite set of places where `a` has nonzero order, sorted.
pub fn support(model: &GlobalFieldModel, a: &FieldElement) -> Result<Vec<Place>> {
    if a.is_zero() {
        return Err(Error::invalid("zero has infinite support"));
    }
    let mut out = Vec::new();
    match (model, a) {
        (GlobalFieldModel::Rationals, FieldElement::Rational { num, den }) => {
            let g = num.gcd(den);
            for n in [num / &g, den / &g] {
                out.extend(factor_u64(small_abs(&n)?).into_iter().map(|(q, _)| Place::Prime(q)));
            }
        }
        (GlobalFieldModel::FunctionField { p }, FieldElement::Function(f)) if f.p() == *p => {
            for g in [f.num(), f.den()] {
                out.extend(g.factor()?.1.into_iter().map(|(q, _)| Place::Poly(q)));
            }
            if f.ord_infinity() != 0 {
                out.push(Place::Infinity);
            }
        }
        _ => return Err(Error::invalid("element does not belong to the model")),
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `(d | q)` for an odd prime `q`: Legendre symbol as -1, 0 or 1.
pub fn legendre(d: i64, q: u64) -> i32 {
    let a = d.rem_euclid(q as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (q - 1) / 2, q) == 1 {
        1
    } else {
        -1
    }
}

/// Kronecker-type symbol of a quadratic field `Q(sqrt d)` at a prime not
/// ramified in it: 1 split, -1 inert. At 2 this is `d = 1 mod 8`.
fn quadratic_symbol(d: i64, q: u64) -> i32 {
    if q == 2 {
        match d.rem_euclid(8) {
            1 => 1,
            5 => -1,
            _ => 0,
        }
    } else {
        legendre(d, q)
    }
}

fn quadratic_ramified(d: i64, q: u64) -> bool {
    if q == 2 {
        d.rem_euclid(4) != 1
    } else {
        d % q as i64 == 0
    }
}

fn squarefree_product(a: i64, b: i64) -> Result<i64> {
    let g = a.gcd(&b);
    let prod = (a as i128 * b as i128) / (g as i128 * g as i128);
    i64::try_from(prod).map_err(|_| Error::Overflow)
}

fn is_squarefree(d: i64) -> bool {
    factor_u64(d.unsigned_abs()).iter().all(|&(_, k)| k == 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DatumKind {
    Trivial,
    /// `Q(sqrt d_1, ..., sqrt d_k)`; the group is `(Z/2)^k` with bit `i`
    /// recording the action on `sqrt d_i`.
    Multiquadratic(Vec<i64>),
    /// `y^p - y = a`; the group is `Z/p`, element `k` acting by `y -> y + k`.
    ArtinSchreier(FpPoly),
    /// `y^n = b` with `n | p - 1`; element `k` acts by `y -> zeta^k y`,
    /// `zeta = g^((p-1)/n)` for the least primitive root `g`.
    Kummer {
        n: u64,
        radicand: FpPoly,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingDatum {
    model: GlobalFieldModel,
    group: Arc<GroupTable>,
    kind: DatumKind,
    ramified: Vec<Place>,
}

impl SplittingDatum {
    pub fn trivial(model: GlobalFieldModel) -> Self {
        Self { model, group: Arc::new(GroupTable::trivial()), kind: DatumKind::Trivial, ramified: vec![] }
    }

    pub fn multiquadratic(discriminants: &[i64]) -> Result<Self> {
        let k = discriminants.len();
        if k == 0 || k > 8 {
            return Err(Error::invalid("between 1 and 8 quadratic generators are supported"));
        }
        for &d in discriminants {
            if d == 0 || d == 1 || !is_squarefree(d) {
                return Err(Error::invalid(format!("{d} is not a squarefree integer other than 0, 1")));
            }
        }
        let mut primes: Vec<u64> = Vec::new();
        for mask in 1u32..(1 << k) {
            let d = subset_product(discriminants, mask)?;
            if d == 1 {
                return Err(Error::invalid("generators are dependent modulo squares"));
            }
            if d.rem_euclid(4) != 1 {
                primes.push(2);
            }
            primes.extend(factor_u64(d.unsigned_abs()).into_iter().map(|(q, _)| q));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(Self {
            model: GlobalFieldModel::Rationals,
            group: Arc::new(GroupTable::elementary_abelian_2(k as u32)),
            kind: DatumKind::Multiquadratic(discriminants.to_vec()),
            ramified: primes.into_iter().map(Place::Prime).collect(),
        })
    }

    /// Errors when `a` lies in the image of `x -> x^p - x`.
    pub fn artin_schreier(a: &FpPoly) -> Result<Self> {
        let p = a.p();
        check_prime(p)?;
        let r = canonical_reduction(a);
        if r.is_zero() {
            return Err(Error::invalid(format!("{a} lies in the Artin-Schreier image; no extension")));
        }
        let ramified = if r.is_constant() { vec![] } else { vec![Place::Infinity] };
        Ok(Self {
            model: GlobalFieldModel::FunctionField { p },
            group: Arc::new(GroupTable::cyclic(p as usize)),
            kind: DatumKind::ArtinSchreier(a.clone()),
            ramified,
        })
    }

    pub fn kummer(n: u64, radicand: &FpPoly) -> Result<Self> {
        let p = radicand.p();
        check_prime(p)?;
        if n < 2 || !(p - 1).is_multiple_of(n) {
            return Err(Error::invalid(format!("Kummer data need 2 <= n and n | p - 1 (n = {n}, p = {p})")));
        }
        if radicand.is_zero() {
            return Err(Error::invalid("zero radicand"));
        }
        let (lc, fs) = radicand.factor()?;
        for (l, _) in factor_u64(n) {
            let power = fs.iter().all(|(_, m)| (*m as u64).is_multiple_of(l)) && pow_mod(lc, (p - 1) / l, p) == 1;
            if power {
                return Err(Error::invalid(format!("radicand is an {l}-th power; extension degree drops")));
            }
        }
        let mut ramified: Vec<Place> =
            fs.into_iter().filter(|(_, m)| !(*m as u64).is_multiple_of(n)).map(|(q, _)| Place::Poly(q)).collect();
        if !(radicand.degree().unwrap_or(0) as u64).is_multiple_of(n) {
            ramified.push(Place::Infinity);
        }
        Ok(Self {
            model: GlobalFieldModel::FunctionField { p },
            group: Arc::new(GroupTable::cyclic(n as usize)),
            kind: DatumKind::Kummer { n, radicand: radicand.clone() },
            ramified,
        })
    }

    pub fn model(&self) -> &GlobalFieldModel {
        &self.model
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn kind(&self) -> &DatumKind {
        &self.kind
    }

    pub fn ramified_places(&self) -> &[Place] {
        &self.ramified
    }

    pub fn is_ramified(&self, v: &Place) -> bool {
        self.ramified.contains(v)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            DatumKind::Trivial => "trivial".into(),
            DatumKind::Multiquadratic(ds) => {
                format!("Q({})", ds.iter().map(|d| format!("sqrt({d})")).collect::<Vec<_>>().join(", "))
            }
            DatumKind::ArtinSchreier(a) => format!("AS(p={}, a={a})", a.p()),
            DatumKind::Kummer { n, radicand } => format!("Kummer(p={}, n={n}, b={radicand})", radicand.p()),
        }
    }

    /// Frobenius element at an unramified place.
    pub fn frobenius(&self, v: &Place) -> Result<usize> {
        self.model.check_place(v)?;
        if self.is_ramified(v) {
            return Err(Error::Ramified(v.to_string()));
        }
        match (&self.kind, v) {
            (DatumKind::Trivial, _) => Ok(0),
            (DatumKind::Multiquadratic(ds), Place::Prime(q)) => {
                let mut bits = 0usize;
                for (i, &d) in ds.iter().enumerate() {
                    if quadratic_symbol(d, *q) == -1 {
                        bits |= 1 << i;
                    }
                }
                Ok(bits)
            }
            (DatumKind::ArtinSchreier(a), Place::Poly(m)) => Ok(trace_mod(a, m) as usize),
            (DatumKind::ArtinSchreier(a), Place::Infinity) => Ok(canonical_reduction(a).coeff(0) as usize),
            (DatumKind::Kummer { n, radicand }, _) => {
                let p = radicand.p();
                let value = match v {
                    Place::Poly(m) => {
                        let mut u = radicand.clone();
                        while let Some(q) = u.div_exact(m) {
                            u = q;
                        }
                        pow_mod(norm_mod(&u, m), (p - 1) / n, p)
                    }
                    _ => pow_mod(radicand.leading(), (p - 1) / n, p),
                };
                let zeta = pow_mod(primitive_root(p), (p - 1) / n, p);
                (0..*n)
                    .find(|&k| pow_mod(zeta, k, p) == value)
                    .map(|k| k as usize)
                    .ok_or_else(|| Error::Internal("power residue symbol outside mu_n".into()))
            }
            _ => Err(Error::invalid("place does not belong to the datum's model")),
        }
    }

    /// Inertia subgroup at `v`.
    pub fn inertia(&self, v: &Place) -> Result<Subgroup> {
        self.model.check_place(v)?;
        if !self.is_ramified(v) {
            return Ok(self.group.trivial_subgroup());
        }
        match (&self.kind, v) {
            (DatumKind::Multiquadratic(ds), Place::Prime(q)) => {
                let unramified = self.unramified_characters(ds, *q)?;
                let elems: Vec<usize> = (0..self.group.order())
                    .filter(|&s| unramified.iter().all(|&(mask, _)| (s & mask as usize).count_ones().is_multiple_of(2)))
                    .collect();
                self.group.subgroup(&elems)
            }
            (DatumKind::ArtinSchreier(_), _) => Ok(self.group.whole()),
            (DatumKind::Kummer { n, radicand }, _) => {
                let e = match v {
                    Place::Poly(m) => radicand.valuation(m) as u64,
                    _ => radicand.degree().unwrap_or(0) as u64,
                };
                let g = n.gcd(&e) as usize;
                Ok(self.group.generate(&[g % *n as usize]))
            }
            _ => Err(Error::Internal("ramified place without inertia rule".into())),
        }
    }

    /// Decomposition subgroup: cyclic Frobenius group at unramified places,
    /// inertia extended by a Frobenius lift where computable; `None` otherwise.
    pub fn decomposition(&self, v: &Place) -> Result<Option<Subgroup>> {
        if !self.is_ramified(v) {
            let f = self.frobenius(v)?;
            return Ok(Some(self.group.generate(&[f])));
        }
        let inertia = self.inertia(v)?;
        match (&self.kind, v) {
            (DatumKind::Multiquadratic(ds), Place::Prime(q)) => {
                let unramified = self.unramified_characters(ds, *q)?;
                let lift = (0..self.group.order()).find(|&s| {
                    unramified.iter().all(|&(mask, sym)| {
                        let parity = (s & mask as usize).count_ones() % 2 == 1;
                        parity == (sym == -1)
                    })
                });
                let lift = lift.ok_or_else(|| Error::Internal("inconsistent Frobenius on unramified part".into()))?;
                let mut gens = inertia.elements().to_vec();
                gens.push(lift);
                Ok(Some(self.group.generate(&gens)))
            }
            // totally ramified: inertia is everything
            (_, _) if inertia.order() == self.group.order() => Ok(Some(inertia)),
            _ => Ok(None),
        }
    }

    /// Subsets (as bitmasks) whose quadratic field is unramified at `q`, with their symbol.
    fn unramified_characters(&self, ds: &[i64], q: u64) -> Result<Vec<(u32, i32)>> {
        let mut out = Vec::new();
        for mask in 1u32..(1 << ds.len()) {
            let d = subset_product(ds, mask)?;
            if !quadratic_ramified(d, q) {
                out.push((mask, quadratic_symbol(d, q)));
            }
        }
        Ok(out)
    }
}

fn subset_product(ds: &[i64], mask: u32) -> Result<i64> {
    let mut d = 1i64;
    for (i, &di) in ds.iter().enumerate() {
        if mask >> i & 1 == 1 {
            d = squarefree_product(d, di)?;
        }
    }
    Ok(d)
}

/// Decomposition data realized by the places of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// Distinct subgroups with the first place realizing each.
    pub subgroups: Vec<(Subgroup, Place)>,
    /// Whether every cyclic subgroup of the group occurs.
    pub all_cyclic_realized: bool,
    /// Ramified places whose decomposition group is not computable.
    pub excluded: Vec<Place>,
}

pub fn realized_cyclics(datum: &SplittingDatum, sample_bound: usize) -> Result<Realization> {
    if sample_bound < 2 && datum.model == GlobalFieldModel::Rationals {
        return Err(Error::invalid("sample bound must be at least 2"));
    }
    let mut subgroups: Vec<(Subgroup, Place)> = Vec::new();
    let mut excluded = Vec::new();
    for v in datum.model.places_up_to(sample_bound) {
        match datum.decomposition(&v)? {
            Some(d) => {
                if !subgroups.iter().any(|(h, _)| *h == d) {
                    subgroups.push((d, v));
                }
            }
            None => excluded.push(v),
        }
    }
    let all_cyclic_realized = datum.group.cyclic_subgroups().iter().all(|c| subgroups.iter().any(|(h, _)| h == c));
    Ok(Realization { subgroups, all_cyclic_realized, excluded })
}

/// Residue of a unit at `v`: `f mod v` as an element of `F_p[t]/(v)`
/// (a constant at infinity). Errors if `ord_v(f) != 0`.
pub fn residue_of_unit(f: &RatFunc, v: &Place) -> Result<FpPoly> {
    let p = f.p();
    match v {
        Place::Poly(m) => {
            if f.ord_at(m) != 0 {
                return Err(Error::invalid(format!("not a unit at {v}")));
            }
            let den = f.den().inv_mod(m).ok_or_else(|| Error::Internal("denominator not invertible".into()))?;
            Ok(f.num().mulmod(&den, m))
        }
        Place::Infinity => {
            if f.ord_infinity() != 0 {
                return Err(Error::invalid("not a unit at infinity"));
            }
            Ok(FpPoly::constant(p, f.num().leading() * inv_mod(f.den().leading(), p) % p))
        }
        Place::Prime(_) => Err(Error::invalid("rational prime used in a function field")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_elem(n: i64, d: i64) -> FieldElement {
        FieldElement::Rational { num: n.into(), den: d.into() }
    }

    #[test]
    fn supports() {
        let q = GlobalFieldModel::Rationals;
        assert_eq!(support(&q, &q_elem(12, 1)).unwrap(), vec![Place::Prime(2), Place::Prime(3)]);
        assert!(support(&q, &q_elem(1, 1)).unwrap().is_empty());
        assert!(support(&q, &q_elem(0, 1)).is_err());
        let f3 = GlobalFieldModel::function_field(3).unwrap();
        let a = FieldElement::Function(RatFunc::from_poly(FpPoly::from_i64(3, &[-1, 0, 1])));
        let s = support(&f3, &a).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s[2], Place::Infinity);
    }

    #[test]
    fn quadratic_frobenius() {
        let d = SplittingDatum::multiquadratic(&[13]).unwrap();
        assert_eq!(d.frobenius(&Place::Prime(17)).unwrap(), 0);
        assert_eq!(d.frobenius(&Place::Prime(2)).unwrap(), 1);
        assert_eq!(d.inertia(&Place::Prime(13)).unwrap().order(), 2);
        assert_eq!(d.inertia(&Place::Prime(5)).unwrap().order(), 1);
        assert!(matches!(d.frobenius(&Place::Prime(13)), Err(Error::Ramified(_))));
        let d2 = SplittingDatum::multiquadratic(&[13, 17]).unwrap();
        assert_eq!(d2.frobenius(&Place::Prime(2)).unwrap(), 0b01);
        assert_eq!(d2.ramified_places(), &[Place::Prime(13), Place::Prime(17)]);
        let d8 = SplittingDatum::multiquadratic(&[-1, 2]).unwrap();
        assert_eq!(d8.inertia(&Place::Prime(2)).unwrap().order(), 4);
        assert!(SplittingDatum::multiquadratic(&[2, 8]).is_err());
        assert!(SplittingDatum::multiquadratic(&[3, 5, 15]).is_err());
    }

    #[test]
    fn realized() {
        let d2 = SplittingDatum::multiquadratic(&[13, 17]).unwrap();
        let r = realized_cyclics(&d2, 100).unwrap();
        assert!(r.all_cyclic_realized);
        assert_eq!(r.subgroups.len(), 4);
        let r1 = realized_cyclics(&SplittingDatum::multiquadratic(&[13]).unwrap(), 100).unwrap();
        assert_eq!(r1.subgroups.len(), 2);
        let t = realized_cyclics(&SplittingDatum::trivial(GlobalFieldModel::Rationals), 100).unwrap();
        assert_eq!(t.subgroups.len(), 1);
    }

    #[test]
    fn artin_schreier_data() {
        let a = FpPoly::t(2);
        let d = SplittingDatum::artin_schreier(&a).unwrap();
        assert_eq!(d.ramified_places(), &[Place::Infinity]);
        for m in FpPoly::irreducibles_of_degree(2, 3) {
            let v = Place::Poly(m);
            assert_eq!(d.inertia(&v).unwrap().order(), 1);
            d.frobenius(&v).unwrap();
        }
        assert!(SplittingDatum::artin_schreier(&FpPoly::from_i64(2, &[0, 1, 1])).is_err());
    }

    #[test]
    fn kummer_data() {
        // y^2 = t over F_3: ramified at t and infinity
        let d = SplittingDatum::kummer(2, &FpPoly::t(3)).unwrap();
        assert_eq!(d.ramified_places().len(), 2);
        // t = 1 is a square mod (t - 1), t = 2 is not mod (t - 2)
        assert_eq!(d.frobenius(&Place::poly(FpPoly::from_i64(3, &[-1, 1])).unwrap()).unwrap(), 0);
        assert_eq!(d.frobenius(&Place::poly(FpPoly::from_i64(3, &[-2, 1])).unwrap()).unwrap(), 1);
        assert!(SplittingDatum::kummer(2, &FpPoly::t(3).pow(2)).is_err());
    }

    #[test]
    fn product_formula() {
        let p = 3;
        let f3 = GlobalFieldModel::function_field(p).unwrap();
        for num in FpPoly::all_up_to_degree(p, 3).filter(|f| !f.is_zero()) {
            let den = FpPoly::from_i64(p, &[1, 0, 1]);
            let f = FieldElement::Function(RatFunc::new(num, den).unwrap());
            let total: i64 =
                support(&f3, &f).unwrap().iter().map(|v| ord(&f3, &f, v).unwrap() * v.degree() as i64).sum();
            assert_eq!(total, 0);
        }
    }
}
