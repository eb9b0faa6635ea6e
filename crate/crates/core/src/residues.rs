//! Degree-1 and degree-2 residue maps over `F_p(t)` for moduli prime to `p`.
//!
//! Elements are carried in factored form. Residue fields `F_p[t]/(pi)` are
//! handled through discrete-logarithm tables, so residue classes modulo
//! `n`-th powers become elements of `Z/gcd(n, q - 1)`.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fpoly::{check_prime, inv_mod, pow_mod, FpPoly, RatFunc};
use crate::places::Place;

/// Residue fields larger than this are rejected.
pub const MAX_RESIDUE_FIELD: u64 = 1 << 20;

/// `unit * prod f_i^{e_i}` with distinct monic irreducible `f_i` and `e_i != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factored {
    p: u64,
    unit: u64,
    factors: Vec<(FpPoly, i64)>,
}

impl Factored {
    pub fn new(p: u64, unit: u64, factors: Vec<(FpPoly, i64)>) -> Result<Self> {
        check_prime(p)?;
        if unit.is_multiple_of(p) {
            return Err(Error::invalid("zero is not a unit"));
        }
        for (f, _) in &factors {
            if f.p() != p || !f.is_monic() || !f.is_irreducible() {
                return Err(Error::invalid(format!("{f} is not a monic irreducible over F_{p}")));
            }
        }
        let mut out = Self { p, unit: unit % p, factors: vec![] };
        for (f, e) in factors {
            out.add_factor(f, e);
        }
        Ok(out)
    }

    pub fn constant(p: u64, c: u64) -> Result<Self> {
        Self::new(p, c, vec![])
    }

    pub fn from_poly(f: &FpPoly) -> Result<Self> {
        let (lc, fs) = f.factor()?;
        Ok(Self { p: f.p(), unit: lc, factors: fs.into_iter().map(|(g, m)| (g, m as i64)).collect() })
    }

    pub fn from_ratfunc(f: &RatFunc) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::invalid("zero has no factorization"));
        }
        Ok(Self::from_poly(f.num())?.mul(&Self::from_poly(f.den())?.inv()))
    }

    fn add_factor(&mut self, f: FpPoly, e: i64) {
        match self.factors.binary_search_by(|(g, _)| g.cmp(&f)) {
            Ok(i) => {
                self.factors[i].1 += e;
                if self.factors[i].1 == 0 {
                    self.factors.remove(i);
                }
            }
            Err(i) if e != 0 => self.factors.insert(i, (f, e)),
            Err(_) => {}
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn unit(&self) -> u64 {
        self.unit
    }

    pub fn factors(&self) -> &[(FpPoly, i64)] {
        &self.factors
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.unit = self.unit * o.unit % self.p;
        for (f, e) in &o.factors {
            r.add_factor(f.clone(), *e);
        }
        r
    }

    pub fn inv(&self) -> Self {
        Self {
            p: self.p,
            unit: inv_mod(self.unit, self.p),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let k = k.unsigned_abs();
        Self {
            p: self.p,
            unit: pow_mod(base.unit, k, self.p),
            factors: if k == 0 {
                vec![]
            } else {
                base.factors.iter().map(|(f, e)| (f.clone(), e * k as i64)).collect()
            },
        }
    }

    pub fn ord_at(&self, v: &Place) -> i64 {
        match v {
            Place::Poly(q) => self.factors.iter().find(|(f, _)| f == q).map_or(0, |(_, e)| *e),
            Place::Infinity => -self.factors.iter().map(|(f, e)| e * f.degree().unwrap_or(0) as i64).sum::<i64>(),
            Place::Prime(_) => 0,
        }
    }

    /// Places of nonzero order, infinity last.
    pub fn support(&self) -> Vec<Place> {
        let mut out: Vec<Place> = self.factors.iter().map(|(f, _)| Place::Poly(f.clone())).collect();
        if self.ord_at(&Place::Infinity) != 0 {
            out.push(Place::Infinity);
        }
        out
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let (mut num, mut den) = (FpPoly::constant(self.p, self.unit), FpPoly::one(self.p));
        for (f, e) in &self.factors {
            if *e > 0 {
                num = &num * &f.pow(*e as u64);
            } else {
                den = &den * &f.pow(e.unsigned_abs());
            }
        }
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    /// Total degree of the polynomial part with positive exponents.
    pub fn height(&self) -> usize {
        self.factors.iter().map(|(f, e)| e.unsigned_abs() as usize * f.degree().unwrap_or(0)).sum()
    }
}

fn check_tame(p: u64, n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    if n.is_multiple_of(p) {
        return Err(Error::CharacteristicClash { p, n });
    }
    Ok(())
}

/// Class in `K^* / K^*n` (degree-1 cohomology with `mu_n` coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareClass {
    element: Factored,
    n: u64,
}

impl SquareClass {
    /// Canonical form: exponents in `[0, n)`, constant minimal in its coset mod `n`-th powers.
    pub fn new(element: &Factored, n: u64) -> Result<Self> {
        check_tame(element.p, n)?;
        let p = element.p;
        let factors: Vec<(FpPoly, i64)> = element
            .factors
            .iter()
            .filter_map(|(f, e)| {
                let r = e.rem_euclid(n as i64);
                (r != 0).then(|| (f.clone(), r))
            })
            .collect();
        let unit = (1..p).map(|x| element.unit * pow_mod(x, n, p) % p).min().expect("p >= 2");
        Ok(Self { element: Factored { p, unit, factors }, n })
    }

    pub fn element(&self) -> &Factored {
        &self.element
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn is_constant(&self) -> bool {
        self.element.factors.is_empty()
    }
}

/// `ord_v(f) mod n`.
pub fn residue_deg1(f: &SquareClass, v: &Place) -> Result<u64> {
    check_tame(f.element.p, f.n)?;
    Ok(f.element.ord_at(v).rem_euclid(f.n as i64) as u64)
}

/// Residues at every place where they are nonzero, infinity last.
pub fn residue_profile(f: &SquareClass) -> Result<Vec<(Place, u64)>> {
    let mut out = Vec::new();
    for v in f.element.support() {
        let r = residue_deg1(f, &v)?;
        if r != 0 {
            out.push((v, r));
        }
    }
    let inf = residue_deg1(f, &Place::Infinity)?;
    if inf != 0 && !out.iter().any(|(v, _)| v.is_infinite()) {
        out.push((Place::Infinity, inf));
    }
    Ok(out)
}

/// `sum_v res_v(f) deg v = 0 mod n`; in particular no profile is a single
/// nonzero residue at one degree-1 place.
pub fn sum_formula_holds(f: &SquareClass) -> Result<bool> {
    let profile = residue_profile(f)?;
    let total: u64 = profile.iter().map(|(v, r)| r * v.degree() as u64).sum();
    let single = profile.len() == 1 && profile[0].0.degree() == 1;
    Ok(total.is_multiple_of(f.n) && !single)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub classes: Vec<SquareClass>,
    pub swept: usize,
    pub profile_violations: usize,
}

/// Classes of height at most `degree_bound` unramified at every place of
/// `P^1` except `removed`.
pub fn unramified_h1(p: u64, removed: &[Place], n: u64, degree_bound: usize) -> Result<SweepReport> {
    check_prime(p)?;
    check_tame(p, n)?;
    let irreducibles: Vec<FpPoly> = (1..=degree_bound).flat_map(|d| FpPoly::irreducibles_of_degree(p, d)).collect();
    let mut units: Vec<u64> = (1..p).map(|c| (1..p).map(|x| c * pow_mod(x, n, p) % p).min().expect("p >= 2")).collect();
    units.sort_unstable();
    units.dedup();
    let mut exps: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut stack = vec![(0usize, 0usize, Vec::<(usize, i64)>::new())];
    while let Some((start, deg, chosen)) = stack.pop() {
        exps.push(chosen.clone());
        for (i, f) in irreducibles.iter().enumerate().skip(start) {
            let d = f.degree().unwrap_or(0);
            for e in 1..n as i64 {
                if deg + d * e as usize > degree_bound {
                    break;
                }
                let mut c = chosen.clone();
                c.push((i, e));
                stack.push((i + 1, deg + d * e as usize, c));
            }
        }
    }
    let mut classes = Vec::new();
    let mut swept = 0;
    let mut profile_violations = 0;
    for e in &exps {
        for &u in &units {
            let f = Factored::new(p, u, e.iter().map(|&(i, k)| (irreducibles[i].clone(), k)).collect())?;
            let s = SquareClass::new(&f, n)?;
            swept += 1;
            if !sum_formula_holds(&s)? {
                profile_violations += 1;
            }
            let unramified = residue_profile(&s)?.iter().all(|(v, _)| removed.contains(v));
            if unramified {
                classes.push(s);
            }
        }
    }
    Ok(SweepReport { classes, swept, profile_violations })
}

/// Pair `(a, b)` representing a degree-2 class with `mu_n` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolClass {
    pub a: Factored,
    pub b: Factored,
    pub n: u64,
}

impl SymbolClass {
    pub fn new(a: Factored, b: Factored, n: u64) -> Result<Self> {
        if a.p != b.p {
            return Err(Error::invalid("entries over different fields"));
        }
        check_tame(a.p, n)?;
        Ok(Self { a, b, n })
    }

    /// Places where either entry has nonzero order, plus infinity.
    pub fn joint_support(&self) -> Vec<Place> {
        let mut v = self.a.support();
        v.extend(self.b.support());
        v.push(Place::Infinity);
        v.sort();
        v.dedup();
        v
    }
}

/// Residue class in `F_q^* / F_q^*n`, identified with `Z/modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameResidue {
    pub value: u64,
    pub modulus: u64,
    /// The `mu_n(-1)` twist is ignored; this is exact only for `n = 2`.
    pub twist_warning: bool,
}

impl TameResidue {
    pub fn is_trivial(&self) -> bool {
        self.value == 0
    }
}

/// `F_p[t]/(pi)` with a discrete-logarithm table.
#[derive(Debug, Clone)]
pub struct ResidueField {
    p: u64,
    modulus: Option<FpPoly>,
    q: u64,
    log: Vec<u64>,
}

impl ResidueField {
    pub fn at(p: u64, v: &Place) -> Result<Self> {
        let modulus = match v {
            Place::Poly(m) => Some(m.clone()),
            Place::Infinity => None,
            Place::Prime(_) => return Err(Error::invalid("rational prime used in a function field")),
        };
        let k = modulus.as_ref().map_or(1, |m| m.degree().unwrap_or(1));
        let q = p
            .checked_pow(k as u32)
            .filter(|&q| q <= MAX_RESIDUE_FIELD)
            .ok_or_else(|| Error::invalid(format!("residue field of size {p}^{k} exceeds {MAX_RESIDUE_FIELD}")))?;
        let mut field = Self { p, modulus, q, log: vec![u64::MAX; q as usize] };
        let one = FpPoly::one(p);
        for g in 2..q {
            let gamma = field.decode(g);
            let mut x = one.clone();
            let mut ok = true;
            for i in 0..q - 1 {
                let idx = field.encode(&x) as usize;
                if field.log[idx] != u64::MAX {
                    ok = false;
                    break;
                }
                field.log[idx] = i;
                x = field.mul(&x, &gamma);
            }
            if ok {
                return Ok(field);
            }
            field.log.iter_mut().for_each(|l| *l = u64::MAX);
        }
        if q == 2 {
            field.log[1] = 0;
            return Ok(field);
        }
        Err(Error::Internal("no primitive element found".into()))
    }

    pub fn size(&self) -> u64 {
        self.q
    }

    fn encode(&self, x: &FpPoly) -> u64 {
        x.coeffs().iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn decode(&self, mut k: u64) -> FpPoly {
        let mut c = Vec::new();
        while k > 0 {
            c.push(k % self.p);
            k /= self.p;
        }
        FpPoly::new(self.p, c)
    }

    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        match &self.modulus {
            Some(m) => a.mulmod(b, m),
            None => (a * b).rem(&FpPoly::t(self.p)),
        }
    }

    /// Discrete log of a nonzero residue.
    pub fn log(&self, x: &FpPoly) -> Result<u64> {
        let x = match &self.modulus {
            Some(m) => x.rem(m),
            None => x.clone(),
        };
        let l = self.log[self.encode(&x) as usize];
        if l == u64::MAX {
            return Err(Error::invalid("zero has no logarithm"));
        }
        Ok(l)
    }

    /// Log of the residue of a factor at this place; at infinity monic factors reduce to 1.
    fn factor_log(&self, f: &FpPoly) -> Result<u64> {
        match &self.modulus {
            Some(_) => self.log(f),
            None => Ok(0),
        }
    }
}

/// Caches residue fields for repeated tame-symbol evaluations.
#[derive(Debug, Default)]
pub struct TameContext {
    fields: HashMap<(u64, Place), ResidueField>,
}

impl TameContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, p: u64, v: &Place) -> Result<&ResidueField> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.fields.entry((p, v.clone())) {
            let f = ResidueField::at(p, v)?;
            e.insert(f);
        }
        Ok(&self.fields[&(p, v.clone())])
    }

    /// `(-1)^{ab} a^b b^{-a}` at `v` with `a = ord_v(a)`, `b = ord_v(b)`, modulo `n`-th powers.
    pub fn tame(&mut self, s: &SymbolClass, v: &Place) -> Result<TameResidue> {
        let p = s.a.p;
        check_tame(p, s.n)?;
        let field = self.field(p, v)?;
        let q1 = field.q - 1;
        let m = s.n.gcd(&q1);
        let alpha = s.a.ord_at(v);
        let beta = s.b.ord_at(v);
        // accumulate the log modulo q - 1 as an i128
        let mut l: i128 = 0;
        if (alpha * beta).rem_euclid(2) == 1 {
            l += field.log(&FpPoly::constant(p, p - 1))? as i128;
        }
        l += beta as i128 * field.log(&FpPoly::constant(p, s.a.unit))? as i128;
        l -= alpha as i128 * field.log(&FpPoly::constant(p, s.b.unit))? as i128;
        let here = |f: &FpPoly| matches!(v, Place::Poly(m) if m == f);
        for (f, e) in &s.a.factors {
            if !here(f) {
                l += beta as i128 * *e as i128 * field.factor_log(f)? as i128;
            }
        }
        for (f, e) in &s.b.factors {
            if !here(f) {
                l -= alpha as i128 * *e as i128 * field.factor_log(f)? as i128;
            }
        }
        let value = l.rem_euclid(q1 as i128) as u64 % m;
        Ok(TameResidue { value, modulus: m, twist_warning: s.n > 2 })
    }
}

pub fn residue_deg2_tame(s: &SymbolClass, v: &Place) -> Result<TameResidue> {
    TameContext::new().tame(s, v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolCheck {
    pub unramified: bool,
    pub ramified_places: Vec<Place>,
    pub twist_warning: bool,
}

/// Evaluates the tame residue at every place of the joint support (plus
/// infinity) that is not in `removed`.
pub fn unramified_symbol_check(s: &SymbolClass, removed: &[Place]) -> Result<SymbolCheck> {
    let mut ctx = TameContext::new();
    let mut ramified_places = Vec::new();
    for v in s.joint_support() {
        if removed.contains(&v) {
            continue;
        }
        if !ctx.tame(s, &v)?.is_trivial() {
            ramified_places.push(v);
        }
    }
    Ok(SymbolCheck { unramified: ramified_places.is_empty(), ramified_places, twist_warning: s.n > 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(p: u64, c: &[i64]) -> Factored {
        Factored::from_poly(&FpPoly::from_i64(p, c)).unwrap()
    }

    fn place(p: u64, c: &[i64]) -> Place {
        Place::poly(FpPoly::from_i64(p, c)).unwrap()
    }

    #[test]
    fn degree_one() {
        let t = SquareClass::new(&fac(3, &[0, 1]), 2).unwrap();
        assert_eq!(residue_deg1(&t, &place(3, &[0, 1])).unwrap(), 1);
        let t2 = SquareClass::new(&fac(3, &[0, 0, 1]), 2).unwrap();
        assert_eq!(residue_deg1(&t2, &place(3, &[0, 1])).unwrap(), 0);
        let f = fac(3, &[1, 1]).mul(&fac(3, &[0, 0, 0, 1]).inv());
        assert_eq!(residue_deg1(&SquareClass::new(&f, 2).unwrap(), &Place::Infinity).unwrap(), 0);
        assert!(matches!(SquareClass::new(&f, 3), Err(Error::CharacteristicClash { p: 3, n: 3 })));
    }

    #[test]
    fn tame_examples() {
        let t = fac(3, &[0, 1]);
        let s = SymbolClass::new(t.clone(), t.clone(), 2).unwrap();
        assert!(!residue_deg2_tame(&s, &place(3, &[0, 1])).unwrap().is_trivial());
        let chk = unramified_symbol_check(&s, &[]).unwrap();
        assert_eq!(chk.ramified_places, vec![place(3, &[0, 1]), Place::Infinity]);
        let st = SymbolClass::new(t.clone(), fac(3, &[1, -1]), 2).unwrap();
        assert!(unramified_symbol_check(&st, &[]).unwrap().unramified);
        let c = SymbolClass::new(Factored::constant(3, 2).unwrap(), Factored::constant(3, 2).unwrap(), 2).unwrap();
        let chk = unramified_symbol_check(&c, &[]).unwrap();
        assert!(chk.unramified && chk.ramified_places.is_empty());
        let s5 = SymbolClass::new(fac(5, &[0, 1]), fac(5, &[0, 1]), 4).unwrap();
        assert!(residue_deg2_tame(&s5, &Place::Infinity).unwrap().twist_warning);
    }

    #[test]
    fn unramified_sweep() {
        let r = unramified_h1(3, &[], 2, 4).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.profile_violations, 0);
        let r0 = unramified_h1(3, &[], 2, 0).unwrap();
        assert!(r0.classes.iter().all(SquareClass::is_constant));
        let open = unramified_h1(3, &[place(3, &[0, 1]), Place::Infinity], 2, 3).unwrap();
        assert_eq!(open.classes.len(), 4);
    }
}
