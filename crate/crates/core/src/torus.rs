//! Algebraic tori as lattices with an action of a finite splitting group.
//!
//! A torus split by a Galois extension with group `G` is determined by its
//! character lattice `X(T)` with the `G`-action; the descriptor stores exactly
//! that. Cocharacters are the contragredient lattice.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gcohom::{GLattice, GroupTable, Subgroup};
use crate::glzfin::{minkowski_reduction_check, table_cache, ConjClassTable, MinkowskiCheck};
use crate::zlattice::{glz_simultaneous_conjugate_search, Certificate, Conjugacy};
use crate::{IntMatrix, SmallMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusDescriptor {
    characters: GLattice,
    provenance: String,
}

impl TorusDescriptor {
    /// Wraps a free lattice as the character lattice of a torus.
    pub fn from_characters(characters: GLattice, provenance: impl Into<String>) -> Result<Self> {
        if !characters.is_free() {
            return Err(Error::invalid("character lattices are free"));
        }
        Ok(Self { characters, provenance: provenance.into() })
    }

    /// `G_m^d` with trivial action.
    pub fn split(group: Arc<GroupTable>, d: usize) -> Self {
        Self { characters: GLattice::trivial(group, d), provenance: format!("split({d})") }
    }

    /// Weil restriction from the fixed field of `h`: `X(T) = Z[G/H]`.
    pub fn restriction(group: Arc<GroupTable>, h: &Subgroup) -> Result<Self> {
        let h = group.subgroup(h.elements())?;
        let lat = GLattice::permutation(group.clone(), &h);
        Ok(Self { characters: lat, provenance: format!("restriction({})", describe(&group, &h)) })
    }

    /// Norm-one torus: `X(T) = Z[G/H] / Z N`, so `X_*(T)` is the augmentation kernel.
    pub fn norm_one(group: Arc<GroupTable>, h: &Subgroup) -> Result<Self> {
        let h = group.subgroup(h.elements())?;
        if h.order() == group.order() {
            return Err(Error::invalid("norm-one torus of the trivial extension has dimension 0"));
        }
        let lat = GLattice::norm_quotient(group.clone(), &h);
        Ok(Self { characters: lat, provenance: format!("norm_one({})", describe(&group, &h)) })
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        let lat = self.characters.direct_sum(&other.characters)?;
        Ok(Self { characters: lat, provenance: format!("product({}, {})", self.provenance, other.provenance) })
    }

    /// The torus whose characters are the cocharacters of this one.
    pub fn dual(&self) -> Self {
        Self { characters: self.cocharacters(), provenance: format!("dual({})", self.provenance) }
    }

    /// `T[n] = X_*(T) (x) Z/n` as a module over the splitting group.
    pub fn torsion_module(&self, n: i64) -> Result<GLattice> {
        if n < 2 {
            return Err(Error::invalid("torsion_module needs n >= 2"));
        }
        self.cocharacters().tensor_mod(n)
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        self.characters.group()
    }

    pub fn dimension(&self) -> usize {
        self.characters.free_rank()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn characters(&self) -> &GLattice {
        &self.characters
    }

    /// `X_*(T)`, acted on by the inverse transposes.
    pub fn cocharacters(&self) -> GLattice {
        self.characters.dual().expect("character lattices are free")
    }

    /// Elements acting trivially; `G` modulo this is the group of the minimal splitting field.
    pub fn action_kernel(&self) -> Subgroup {
        self.characters.kernel()
    }

    pub fn faithful_quotient_order(&self) -> usize {
        self.group().order() / self.action_kernel().order()
    }

    /// Good reduction at a place with the given inertia group: inertia acts trivially.
    pub fn good_reduction_at(&self, inertia: &Subgroup) -> Result<bool> {
        let h = self.group().subgroup(inertia.elements())?;
        Ok(h.elements().iter().all(|&g| self.characters.acts_trivially(g)))
    }
}

fn describe(group: &GroupTable, h: &Subgroup) -> String {
    format!("G{}, H{}", group.order(), h.order())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TorusIsomorphism {
    /// `X` with `X A_g = B_g X` on character lattices for every `g`.
    Isomorphic(IntMatrix),
    NotIsomorphic(String),
    Inconclusive {
        entry_bound: u32,
    },
}

impl TorusIsomorphism {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Self::Isomorphic(_))
    }
}

/// Decides isomorphism by simultaneous `GL_d(Z)`-conjugacy of the actions.
pub fn tori_isomorphic(t1: &TorusDescriptor, t2: &TorusDescriptor, search_bound: u32) -> Result<TorusIsomorphism> {
    if t1.group() != t2.group() {
        if t1.faithful_quotient_order() != t2.faithful_quotient_order() {
            return Ok(TorusIsomorphism::NotIsomorphic("faithful quotients have different orders".into()));
        }
        return Err(Error::invalid("tori over different splitting groups cannot be compared directly"));
    }
    if t1.dimension() != t2.dimension() {
        return Ok(TorusIsomorphism::NotIsomorphic(format!(
            "dimensions differ ({} vs {})",
            t1.dimension(),
            t2.dimension()
        )));
    }
    if t1.action_kernel() != t2.action_kernel() {
        return Ok(TorusIsomorphism::NotIsomorphic("actions have different kernels".into()));
    }
    let gens = t1.group().generators();
    let a: Vec<IntMatrix> = gens.iter().map(|&g| t1.characters.action(g).to_big()).collect();
    let b: Vec<IntMatrix> = gens.iter().map(|&g| t2.characters.action(g).to_big()).collect();
    Ok(match glz_simultaneous_conjugate_search(&a, &b, search_bound)? {
        Conjugacy::Conjugate(x) => TorusIsomorphism::Isomorphic(x),
        Conjugacy::NotConjugate(c) => TorusIsomorphism::NotIsomorphic(certificate_text(&c, &gens)),
        Conjugacy::Inconclusive { entry_bound } => TorusIsomorphism::Inconclusive { entry_bound },
    })
}

fn certificate_text(c: &Certificate, gens: &[usize]) -> String {
    let text = c.describe();
    match c {
        Certificate::TraceDiffers { index, .. }
        | Certificate::DeterminantDiffers { index, .. }
        | Certificate::CharPolyDiffers { index, .. } => format!("{text} (group element {})", gens[*index]),
        _ => text,
    }
}

/// Entry bound used when deduplicating census results.
pub const CENSUS_SEARCH_BOUND: u32 = 10;

/// All `d`-dimensional tori split by `G` with good reduction at every place
/// whose inertia is listed, up to isomorphism; `d <= 2`.
pub fn enumerate_good_reduction_tori(
    group: &Arc<GroupTable>,
    inertia: &[Subgroup],
    d: usize,
) -> Result<Vec<TorusDescriptor>> {
    if d == 0 {
        return Ok(vec![TorusDescriptor::split(group.clone(), 0)]);
    }
    let table = table_cache()
        .get(&d)
        .ok_or_else(|| Error::invalid(format!("census supports d <= 2 (got {d}); pass a table for larger d")))?;
    enumerate_good_reduction_tori_with(group, inertia, table)
}

/// Same as [`enumerate_good_reduction_tori`] with an explicit class table
/// (for example the dimension-3 one).
pub fn enumerate_good_reduction_tori_with(
    group: &Arc<GroupTable>,
    inertia: &[Subgroup],
    table: &ConjClassTable,
) -> Result<Vec<TorusDescriptor>> {
    let d = table.dimension;
    let inertia: Vec<Subgroup> = inertia.iter().map(|h| group.subgroup(h.elements())).collect::<Result<_>>()?;
    let gens = group.generators();
    let mut found: Vec<TorusDescriptor> = Vec::new();
    let mut profiles: Vec<Vec<(BigInt, BigInt)>> = Vec::new();
    for class in &table.classes {
        let els = class.representative.elements();
        let small: Vec<SmallMatrix> =
            els.iter().map(|x| x.try_cast::<i64>().map_err(|_| Error::Overflow)).collect::<Result<_>>()?;
        let mut choice = vec![0usize; gens.len()];
        loop {
            let images: Vec<(usize, SmallMatrix)> =
                gens.iter().zip(&choice).map(|(&g, &c)| (g, small[c].clone())).collect();
            if let Ok(lat) = GLattice::from_generators(group.clone(), d, vec![], &images) {
                let t =
                    TorusDescriptor { characters: lat, provenance: format!("census({}, class {})", d, class.label) };
                if inertia.iter().all(|h| t.good_reduction_at(h).unwrap_or(false)) {
                    for g in 0..group.order() {
                        if let MinkowskiCheck::Violation(_) =
                            minkowski_reduction_check(&t.characters.action(g).to_big())?
                        {
                            return Err(Error::Internal("finite-order image congruent to I mod 3".into()));
                        }
                    }
                    let profile = trace_profile(&t);
                    let mut duplicate = false;
                    for (k, other) in found.iter().enumerate() {
                        if profiles[k] != profile {
                            continue;
                        }
                        match tori_isomorphic(other, &t, CENSUS_SEARCH_BOUND)? {
                            TorusIsomorphism::Isomorphic(_) => {
                                duplicate = true;
                                break;
                            }
                            TorusIsomorphism::NotIsomorphic(_) => {}
                            TorusIsomorphism::Inconclusive { .. } => {
                                return Err(Error::Inconclusive(
                                    "census deduplication could not decide isomorphism".into(),
                                ))
                            }
                        }
                    }
                    if !duplicate {
                        found.push(t);
                        profiles.push(profile);
                    }
                }
            }
            // odometer over generator images
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < els.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }
    for (i, t) in found.iter_mut().enumerate() {
        t.provenance = format!("census(d={d}, #{i})");
    }
    Ok(found)
}

fn trace_profile(t: &TorusDescriptor) -> Vec<(BigInt, BigInt)> {
    (0..t.group().order())
        .map(|g| {
            let a = t.characters.action(g).to_big();
            (a.trace().expect("bigint"), a.determinant().expect("bigint"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<GroupTable> {
        Arc::new(GroupTable::cyclic(2))
    }

    #[test]
    fn constructors() {
        let g = c2();
        let t = TorusDescriptor::norm_one(g.clone(), &g.trivial_subgroup()).unwrap();
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.characters().action(1)[(0, 0)], -1);
        assert_eq!(t.cocharacters().action(1)[(0, 0)], -1);
        let v4 = Arc::new(GroupTable::elementary_abelian_2(2));
        let r = TorusDescriptor::restriction(v4.clone(), &v4.trivial_subgroup()).unwrap();
        assert_eq!(r.dimension(), 4);
        assert_eq!(t.torsion_module(3).unwrap().moduli(), &[3]);
        assert!(t.torsion_module(1).is_err());
    }

    #[test]
    fn good_reduction() {
        let g = c2();
        let t = TorusDescriptor::norm_one(g.clone(), &g.trivial_subgroup()).unwrap();
        assert!(t.good_reduction_at(&g.trivial_subgroup()).unwrap());
        assert!(!t.good_reduction_at(&g.whole()).unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        let g = c2();
        let s2 = TorusDescriptor::split(g.clone(), 2);
        assert!(tori_isomorphic(&s2, &s2, 5).unwrap().is_isomorphic());
        let r = TorusDescriptor::restriction(g.clone(), &g.trivial_subgroup()).unwrap();
        let n = TorusDescriptor::norm_one(g.clone(), &g.trivial_subgroup()).unwrap();
        let p = TorusDescriptor::split(g.clone(), 1).product(&n).unwrap();
        match tori_isomorphic(&r, &p, 5).unwrap() {
            TorusIsomorphism::NotIsomorphic(why) => assert!(why.contains("mod 2"), "{why}"),
            other => panic!("{other:?}"),
        }
        assert!(tori_isomorphic(&n, &n.dual(), 5).unwrap().is_isomorphic());
    }

    #[test]
    fn census() {
        let g = c2();
        assert_eq!(enumerate_good_reduction_tori(&g, &[], 2).unwrap().len(), 4);
        assert_eq!(enumerate_good_reduction_tori(&g, &[g.whole()], 2).unwrap().len(), 1);
        assert_eq!(enumerate_good_reduction_tori(&g, &[], 1).unwrap().len(), 2);
        let t = Arc::new(GroupTable::trivial());
        assert_eq!(enumerate_good_reduction_tori(&t, &[], 1).unwrap().len(), 1);
        assert!(enumerate_good_reduction_tori(&g, &[], 3).is_err());
    }
}
