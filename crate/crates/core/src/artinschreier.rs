//! Artin-Schreier classes over `F_p[t]` and the tori they define.
//!
//! The cokernel of `x -> x^p - x` on `F_p[t]` is infinite; every class has a
//! unique representative with no term `c t^(pk)`, `k >= 1`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fpoly::{check_prime, FpPoly};
use crate::places::{Place, SplittingDatum};
use crate::torus::TorusDescriptor;

/// `g^p - g`.
pub fn wp(g: &FpPoly) -> FpPoly {
    &g.pow(g.p()) - g
}

/// Canonical representative `r` and a witness `g` with `a = r + wp(g)`.
pub fn reduce_with_witness(a: &FpPoly) -> (FpPoly, FpPoly) {
    let p = a.p() as usize;
    let mut c = a.coeffs().to_vec();
    let mut g = vec![0u64; c.len()];
    for e in (1..c.len()).rev() {
        if e % p == 0 && c[e] != 0 {
            // c t^(pk) = c t^k + wp(c t^k), since c^p = c in F_p
            let k = e / p;
            c[k] = (c[k] + c[e]) % a.p();
            g[k] = (g[k] + c[e]) % a.p();
            c[e] = 0;
        }
    }
    (FpPoly::new(a.p(), c), FpPoly::new(a.p(), g))
}

pub fn canonical_reduction(a: &FpPoly) -> FpPoly {
    reduce_with_witness(a).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `wp(witness) = a`.
    Member(FpPoly),
    /// Carries the nonzero canonical representative.
    NotMember(FpPoly),
}

/// Decides `a in wp(F_p[t])`; requires `deg a <= 2 * degree_bound`.
pub fn wp_image_member(a: &FpPoly, degree_bound: usize) -> Result<Membership> {
    if a.degree().unwrap_or(0) > 2 * degree_bound && !a.is_zero() {
        return Err(Error::invalid("degree of a exceeds twice the degree bound"));
    }
    let (r, g) = reduce_with_witness(a);
    if r.is_zero() {
        debug_assert_eq!(wp(&g), *a);
        Ok(Membership::Member(g))
    } else {
        Ok(Membership::NotMember(r))
    }
}

/// Exhaustive search for `g` with `deg g <= degree_bound` and `wp(g) = a`.
pub fn brute_force_member(a: &FpPoly, degree_bound: usize) -> Option<FpPoly> {
    FpPoly::all_up_to_degree(a.p(), degree_bound).find(|g| wp(g) == *a)
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ASClass {
    representative: FpPoly,
}

impl ASClass {
    pub fn of(a: &FpPoly) -> Self {
        Self { representative: canonical_reduction(a) }
    }

    pub fn p(&self) -> u64 {
        self.representative.p()
    }

    pub fn representative(&self) -> &FpPoly {
        &self.representative
    }

    pub fn is_trivial(&self) -> bool {
        self.representative.is_zero()
    }
}

/// Exponents allowed in canonical representatives of degree at most `d`.
pub fn allowed_exponents(p: u64, d: usize) -> Vec<usize> {
    (0..=d).filter(|&k| k == 0 || !(k as u64).is_multiple_of(p)).collect()
}

/// Number of nonzero classes with canonical representative of degree at most `d`.
pub fn class_count(p: u64, d: usize) -> u64 {
    p.pow(allowed_exponents(p, d).len() as u32) - 1
}

/// All nonzero classes of degree at most `d`, sorted by representative.
pub fn enumerate_as_classes(p: u64, d: usize) -> Result<Vec<ASClass>> {
    check_prime(p)?;
    if d == 0 {
        return Err(Error::invalid("degree bound must be at least 1"));
    }
    let exps = allowed_exponents(p, d);
    let total = p.checked_pow(exps.len() as u32).ok_or(Error::Overflow)?;
    let mut out = Vec::with_capacity(total as usize - 1);
    for mut k in 1..total {
        let mut c = vec![0u64; d + 1];
        for &e in &exps {
            c[e] = k % p;
            k /= p;
        }
        out.push(ASClass { representative: FpPoly::new(p, c) });
    }
    out.sort();
    Ok(out)
}

/// Number of nonzero cosets of `wp(F_p[t])` among polynomials of degree at
/// most `d`, by exhaustive enumeration.
pub fn brute_force_class_count(p: u64, d: usize) -> u64 {
    let image: Vec<FpPoly> =
        FpPoly::all_up_to_degree(p, d / p as usize).map(|g| wp(&g)).collect::<HashSet<_>>().into_iter().collect();
    let keys: HashSet<FpPoly> =
        FpPoly::all_up_to_degree(p, d).map(|a| image.iter().map(|w| &a + w).min().expect("image contains 0")).collect();
    keys.len() as u64 - 1
}

/// The Artin-Schreier polynomial `x^p - x - a` and its `x`-derivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnramifiedCertificate {
    pub a: FpPoly,
    /// Coefficients in `x`, low to high, each in `F_p[t]`.
    pub defining_polynomial: Vec<FpPoly>,
    pub derivative: Vec<FpPoly>,
}

impl UnramifiedCertificate {
    /// The derivative is the constant `-1`, a unit at every affine place.
    pub fn derivative_is_minus_one(&self) -> bool {
        let p = self.a.p();
        self.derivative.len() == 1 && self.derivative[0] == FpPoly::constant(p, p - 1)
    }
}

pub fn as_unramified_certificate(a: &FpPoly) -> Result<UnramifiedCertificate> {
    if canonical_reduction(a).is_zero() {
        return Err(Error::invalid(format!("{a} lies in the Artin-Schreier image")));
    }
    let p = a.p();
    let mut f = vec![FpPoly::zero(p); p as usize + 1];
    f[0] = -a;
    f[1] = FpPoly::constant(p, p - 1);
    f[p as usize] = &f[p as usize] + &FpPoly::one(p);
    let mut df: Vec<FpPoly> = f.iter().enumerate().skip(1).map(|(i, c)| c.scale(i as u64 % p)).collect();
    while df.last().is_some_and(|c| c.is_zero()) {
        df.pop();
    }
    let cert = UnramifiedCertificate { a: a.clone(), defining_polynomial: f, derivative: df };
    if !cert.derivative_is_minus_one() {
        return Err(Error::Internal("derivative of the Artin-Schreier polynomial is not -1".into()));
    }
    Ok(cert)
}

/// Norm-one torus of the extension `y^p - y = a`, tagged with its datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASTorus {
    pub class: ASClass,
    pub datum: SplittingDatum,
    pub torus: TorusDescriptor,
}

impl ASTorus {
    /// Checks good reduction at the first `count` affine places in degree order.
    pub fn good_reduction_on_affine_sample(&self, count: usize) -> Result<bool> {
        let p = self.class.p();
        let mut checked = 0;
        let mut deg = 1;
        while checked < count {
            for f in FpPoly::irreducibles_of_degree(p, deg) {
                if checked == count {
                    break;
                }
                let inertia = self.datum.inertia(&Place::Poly(f))?;
                if !self.torus.good_reduction_at(&inertia)? {
                    return Ok(false);
                }
                checked += 1;
            }
            deg += 1;
        }
        Ok(true)
    }
}

pub fn as_norm_torus(a: &FpPoly) -> Result<ASTorus> {
    let class = ASClass::of(a);
    if class.is_trivial() {
        return Err(Error::invalid("trivial Artin-Schreier class defines no extension"));
    }
    let datum = SplittingDatum::artin_schreier(class.representative())?;
    let g = datum.group().clone();
    let torus = TorusDescriptor::from_characters(
        TorusDescriptor::norm_one(g.clone(), &g.trivial_subgroup())?.characters().clone(),
        format!("norm_one(C{}) for y^{} - y = {}", a.p(), a.p(), class.representative()),
    )?;
    Ok(ASTorus { class, datum, torus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator() {
        assert_eq!(wp(&FpPoly::t(2)), FpPoly::from_i64(2, &[0, 1, 1]));
        assert!(wp(&FpPoly::constant(5, 3)).is_zero());
        assert_eq!(wp(&FpPoly::t(3)), FpPoly::from_i64(3, &[0, -1, 0, 1]));
    }

    #[test]
    fn membership() {
        let a = FpPoly::from_i64(2, &[0, 1, 1]);
        assert_eq!(wp_image_member(&a, 1).unwrap(), Membership::Member(FpPoly::t(2)));
        assert!(matches!(wp_image_member(&FpPoly::t(2), 1).unwrap(), Membership::NotMember(_)));
        assert_eq!(brute_force_member(&FpPoly::t(2), 1), None);
        assert_eq!(wp_image_member(&FpPoly::zero(2), 0).unwrap(), Membership::Member(FpPoly::zero(2)));
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_as_classes(2, 3).unwrap().len(), 7);
        assert_eq!(enumerate_as_classes(2, 1).unwrap().len(), 3);
        for p in [2, 3] {
            for d in 1..=4 {
                assert_eq!(class_count(p, d), brute_force_class_count(p, d), "p={p} d={d}");
            }
        }
    }

    #[test]
    fn certificates() {
        assert!(as_unramified_certificate(&FpPoly::t(2)).unwrap().derivative_is_minus_one());
        assert!(as_unramified_certificate(&FpPoly::t(3)).unwrap().derivative_is_minus_one());
        assert!(as_unramified_certificate(&FpPoly::from_i64(2, &[0, 1, 1])).is_err());
    }

    #[test]
    fn tori() {
        let t2 = as_norm_torus(&FpPoly::t(2)).unwrap();
        assert_eq!(t2.torus.dimension(), 1);
        assert!(t2.good_reduction_on_affine_sample(20).unwrap());
        let t3 = as_norm_torus(&FpPoly::t(3)).unwrap();
        assert_eq!(t3.torus.dimension(), 2);
        assert!(as_norm_torus(&FpPoly::from_i64(2, &[0, 1, 1])).is_err());
    }
}
