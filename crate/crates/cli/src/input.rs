//! Job input documents and their conversion into library objects.

use std::sync::Arc;

use serde::Deserialize;
use torilab::fpoly::{FpPoly, RatFunc};
use torilab::gcohom::{GLattice, GroupTable, Subgroup};
use torilab::places::{Place, SplittingDatum};
use torilab::residues::Factored;
use torilab::torus::TorusDescriptor;
use torilab::{Error, Result, SmallMatrix};

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Abelian(Vec<usize>),
    ElementaryAbelian2(u32),
    Dihedral(usize),
    Table(Vec<Vec<usize>>),
}

impl GroupSpec {
    pub fn build(&self) -> Result<Arc<GroupTable>> {
        let bad = |what: &str| Err(Error::invalid(format!("{what} must be positive")));
        Ok(Arc::new(match self {
            Self::Trivial => GroupTable::trivial(),
            Self::Cyclic(0) => return bad("cyclic order"),
            Self::Cyclic(n) => GroupTable::cyclic(*n),
            Self::Abelian(v) if v.contains(&0) => return bad("factor orders"),
            Self::Abelian(v) => GroupTable::abelian(v),
            Self::ElementaryAbelian2(k) if *k > 6 => return Err(Error::invalid("at most (Z/2)^6 is supported")),
            Self::ElementaryAbelian2(k) => GroupTable::elementary_abelian_2(*k),
            Self::Dihedral(m) if *m < 2 => return Err(Error::invalid("dihedral groups need m >= 2")),
            Self::Dihedral(m) => GroupTable::dihedral(*m),
            Self::Table(t) => GroupTable::from_table(t.clone())?,
        }))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenImage {
    pub element: usize,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub moduli: Vec<i64>,
    pub generators: Vec<GenImage>,
}

impl ActionSpec {
    pub fn build(&self, g: &Arc<GroupTable>) -> Result<GLattice> {
        let dim = self.free_rank + self.moduli.len();
        let mut images = Vec::with_capacity(self.generators.len());
        for gen in &self.generators {
            if gen.element >= g.order() {
                return Err(Error::invalid(format!("element {} outside the group", gen.element)));
            }
            if gen.matrix.len() != dim || gen.matrix.iter().any(|r| r.len() != dim) {
                return Err(Error::invalid(format!("action matrices must be {dim} x {dim}")));
            }
            let rows: Vec<&[i64]> = gen.matrix.iter().map(Vec::as_slice).collect();
            images.push((gen.element, SmallMatrix::from_i64_rows(&rows)));
        }
        GLattice::from_generators(g.clone(), self.free_rank, self.moduli.clone(), &images)
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Trivial(usize),
    Regular,
    Permutation(Vec<usize>),
    Augmentation(Vec<usize>),
    NormQuotient(Vec<usize>),
    Action(ActionSpec),
}

fn subgroup(g: &GroupTable, elems: &[usize]) -> Result<Subgroup> {
    g.subgroup(elems)
}

impl ModuleSpec {
    pub fn build(&self, g: &Arc<GroupTable>) -> Result<GLattice> {
        Ok(match self {
            Self::Trivial(r) => GLattice::trivial(g.clone(), *r),
            Self::Regular => GLattice::regular(g.clone()),
            Self::Permutation(h) => GLattice::permutation(g.clone(), &subgroup(g, h)?),
            Self::Augmentation(h) => GLattice::augmentation_kernel(g.clone(), &subgroup(g, h)?),
            Self::NormQuotient(h) => GLattice::norm_quotient(g.clone(), &subgroup(g, h)?),
            Self::Action(a) => a.build(g)?,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomInput {
    pub group: GroupSpec,
    pub module: ModuleSpec,
    pub degree: usize,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum TorusSpec {
    Split(usize),
    Restriction(Vec<usize>),
    NormOne(Vec<usize>),
    Product(Vec<TorusSpec>),
    Dual(Box<TorusSpec>),
    Lattice(ActionSpec),
}

impl TorusSpec {
    pub fn build(&self, g: &Arc<GroupTable>) -> Result<TorusDescriptor> {
        match self {
            Self::Split(d) => Ok(TorusDescriptor::split(g.clone(), *d)),
            Self::Restriction(h) => TorusDescriptor::restriction(g.clone(), &subgroup(g, h)?),
            Self::NormOne(h) => TorusDescriptor::norm_one(g.clone(), &subgroup(g, h)?),
            Self::Product(parts) => {
                let mut it = parts.iter();
                let first = it.next().ok_or_else(|| Error::invalid("empty product"))?.build(g)?;
                it.try_fold(first, |acc, t| acc.product(&t.build(g)?))
            }
            Self::Dual(t) => Ok(t.build(g)?.dual()),
            Self::Lattice(a) => TorusDescriptor::from_characters(a.build(g)?, "lattice"),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToriClassifyInput {
    pub group: GroupSpec,
    pub torus: TorusSpec,
}

fn default_search_bound() -> u32 {
    5
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToriIsomInput {
    pub group: GroupSpec,
    pub left: TorusSpec,
    pub right: TorusSpec,
    #[serde(default = "default_search_bound")]
    pub bound: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToriCensusInput {
    pub group: GroupSpec,
    #[serde(default)]
    pub inertia: Vec<Vec<usize>>,
    pub dimension: usize,
    /// Enables the dimension-3 table.
    #[serde(default)]
    pub stretch: bool,
}

impl ToriCensusInput {
    pub fn inertia(&self, g: &GroupTable) -> Result<Vec<Subgroup>> {
        self.inertia.iter().map(|h| subgroup(g, h)).collect()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsSpec {
    pub p: u64,
    pub a: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KummerSpec {
    pub p: u64,
    pub n: u64,
    pub b: Vec<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DatumSpec {
    Trivial,
    Multiquadratic(Vec<i64>),
    ArtinSchreier(AsSpec),
    Kummer(KummerSpec),
}

impl DatumSpec {
    pub fn build(&self) -> Result<SplittingDatum> {
        match self {
            Self::Trivial => Ok(SplittingDatum::trivial(torilab::places::GlobalFieldModel::Rationals)),
            Self::Multiquadratic(ds) => SplittingDatum::multiquadratic(ds),
            Self::ArtinSchreier(s) => SplittingDatum::artin_schreier(&poly(s.p, &s.a)?),
            Self::Kummer(s) => SplittingDatum::kummer(s.n, &poly(s.p, &s.b)?),
        }
    }
}

pub fn poly(p: u64, coeffs: &[i64]) -> Result<FpPoly> {
    torilab::fpoly::is_prime(p)
        .then(|| FpPoly::from_i64(p, coeffs))
        .ok_or_else(|| Error::invalid(format!("{p} is not prime")))
}

fn one_usize() -> usize {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShaInput {
    pub torus: TorusSpec,
    pub datum: DatumSpec,
    pub bound: usize,
    #[serde(default = "one_usize")]
    pub degree: usize,
    #[serde(default)]
    pub ell: Option<u64>,
}

/// `"inf"` or a monic irreducible as coefficients, low to high.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PlaceSpec {
    Named(String),
    Poly(Vec<i64>),
}

impl PlaceSpec {
    pub fn build(&self, p: u64) -> Result<Place> {
        match self {
            Self::Named(s) if s == "inf" => Ok(Place::Infinity),
            Self::Named(s) => Err(Error::invalid(format!("unknown place {s:?}; use \"inf\" or coefficients"))),
            Self::Poly(c) => Place::poly(poly(p, c)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInput {
    pub p: u64,
    #[serde(default)]
    pub removed: Vec<PlaceSpec>,
    #[serde(default = "one_usize")]
    pub d: usize,
}

impl CurveInput {
    pub fn places(&self) -> Result<Vec<Place>> {
        self.removed.iter().map(|v| v.build(self.p)).collect()
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub poly: Vec<i64>,
    pub exp: i64,
}

fn one_i64() -> i64 {
    1
}

/// Either a factored element or a plain rational function.
#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ElementSpec {
    Factored {
        #[serde(default = "one_i64")]
        unit: i64,
        factors: Vec<FactorSpec>,
    },
    Poly(Vec<i64>),
    Ratio {
        num: Vec<i64>,
        den: Vec<i64>,
    },
}

impl ElementSpec {
    pub fn build(&self, p: u64) -> Result<Factored> {
        match self {
            Self::Factored { unit, factors } => {
                let u = unit.rem_euclid(p as i64) as u64;
                let fs = factors.iter().map(|f| Ok((poly(p, &f.poly)?, f.exp))).collect::<Result<Vec<_>>>()?;
                Factored::new(p, u, fs)
            }
            Self::Poly(c) => Factored::from_poly(&poly(p, c)?),
            Self::Ratio { num, den } => Factored::from_ratfunc(&RatFunc::new(poly(p, num)?, poly(p, den)?)?),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residue1Input {
    pub p: u64,
    pub n: u64,
    pub element: ElementSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residue2Input {
    pub p: u64,
    pub n: u64,
    pub a: ElementSpec,
    pub b: ElementSpec,
    #[serde(default)]
    pub removed: Vec<PlaceSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlzInput {
    pub dim: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassGroupInput {
    pub discriminant: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtinSchreierInput {
    pub p: u64,
    pub max_degree: usize,
}
