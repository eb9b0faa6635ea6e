//! Payload schemas. Every payload type round-trips through serde.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use torilab::fpoly::RatFunc;
use torilab::gcohom::{GLattice, Subgroup};
use torilab::places::Place;
use torilab::zlattice::{AbelianGroupShape, Matrix};
use torilab::IntScalar;

const SAFE: u64 = 1 << 53;

/// An integer that is written as a JSON number up to `2^53` and as a decimal
/// string above that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl From<&BigInt> for JsonInt {
    fn from(x: &BigInt) -> Self {
        Self(x.clone())
    }
}

impl From<i64> for JsonInt {
    fn from(x: i64) -> Self {
        Self(x.into())
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.unsigned_abs() <= SAFE => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonIntVisitor;

impl Visitor<'_> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        let x: BigInt = v.parse().map_err(|_| E::custom(format!("not an integer: {v:?}")))?;
        if x.abs() <= BigInt::from(SAFE) {
            return Err(E::custom("integers up to 2^53 must be written as numbers"));
        }
        Ok(JsonInt(x))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(JsonIntVisitor)
    }
}

fn ints(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(JsonInt::from).collect()
}

pub fn matrix<T: IntScalar>(m: &Matrix<T>) -> Vec<Vec<JsonInt>> {
    let big = m.to_big();
    (0..big.rows()).map(|i| ints(big.row(i))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeOut {
    pub shape: Vec<JsonInt>,
    pub free_rank: usize,
}

impl From<&AbelianGroupShape> for ShapeOut {
    fn from(s: &AbelianGroupShape) -> Self {
        Self { shape: ints(s.invariant_factors()), free_rank: s.free_rank() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionOut {
    pub element: usize,
    pub matrix: Vec<Vec<JsonInt>>,
}

/// Images of the group generators.
pub fn actions(lat: &GLattice) -> Vec<ActionOut> {
    lat.group().generators().into_iter().map(|g| ActionOut { element: g, matrix: matrix(lat.action(g)) }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomOut {
    pub degree: usize,
    pub group_order: usize,
    pub module_dim: usize,
    #[serde(flatten)]
    pub shape: ShapeOut,
    pub generator_orders: Vec<JsonInt>,
    /// Normalized cocycle tables, one per generator.
    pub representatives: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassOut {
    pub index: usize,
    pub order: usize,
    pub label: String,
    pub members: usize,
    pub generators: Vec<Vec<Vec<JsonInt>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparationOut {
    pub left: usize,
    pub right: usize,
    pub certificate: Option<String>,
    pub moduli: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlzOut {
    pub dimension: usize,
    pub class_count: usize,
    pub undecided: usize,
    pub classes: Vec<ClassOut>,
    pub separations: Vec<SeparationOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusOut {
    pub provenance: String,
    pub dimension: usize,
    pub faithful_quotient_order: usize,
    pub action_kernel: Vec<usize>,
    pub characters: Vec<ActionOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyOut {
    pub torus: TorusOut,
    /// Index into the `glz subgroups` table of the same dimension.
    pub image_class: Option<usize>,
    pub image_order: usize,
    pub image_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsomVerdict {
    Isomorphic,
    NotIsomorphic,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsomOut {
    pub verdict: IsomVerdict,
    pub intertwiner: Option<Vec<Vec<JsonInt>>>,
    pub certificate: Option<String>,
    pub entry_bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusOut {
    pub dimension: usize,
    pub count: usize,
    pub tori: Vec<TorusOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalOut {
    pub subgroup: Vec<usize>,
    pub place: String,
}

pub fn family(f: &[(Subgroup, Place)]) -> Vec<LocalOut> {
    f.iter().map(|(h, v)| LocalOut { subgroup: h.elements().to_vec(), place: v.to_string() }).collect()
}

pub fn places(vs: &[Place]) -> Vec<String> {
    vs.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShaOut {
    pub label: String,
    pub degree: usize,
    #[serde(flatten)]
    pub kernel: ShapeOut,
    pub ambient: ShapeOut,
    pub classes: Vec<Vec<JsonInt>>,
    pub family: Vec<LocalOut>,
    pub excluded_places: Vec<String>,
    pub all_cyclic_realized: bool,
    pub stabilized: bool,
    pub sample_bound: usize,
    pub confirmation_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sha2Out {
    pub label: String,
    pub ell: u64,
    pub sha2: ShapeOut,
    pub direct: ShapeOut,
    pub direct_generators: Vec<Vec<JsonInt>>,
    pub alpha_bound: ShapeOut,
    pub beta_image: ShapeOut,
    pub contained: bool,
    pub family: Vec<LocalOut>,
}

pub fn ratfunc(f: &RatFunc) -> String {
    if f.den().is_one() {
        format!("{}", f.num())
    } else {
        format!("({}) / ({})", f.num(), f.den())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PicardOut {
    pub p: u64,
    pub removed: Vec<String>,
    pub picard: ShapeOut,
    pub picard_generators: Vec<String>,
    pub unit_torsion_order: u64,
    pub unit_free_rank: usize,
    pub unit_generators: Vec<String>,
    pub unit_divisors: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSetOut {
    pub d: usize,
    #[serde(flatten)]
    pub class_set: ShapeOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CondTOut {
    pub d: usize,
    pub places: Vec<String>,
    pub class_set_after: ShapeOut,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassGroupOut {
    pub discriminant: i64,
    pub class_number: usize,
    #[serde(flatten)]
    pub group: ShapeOut,
    pub forms: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ASCountOut {
    pub degree: usize,
    pub count: u64,
    pub brute_force: u64,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArtinSchreierOut {
    pub p: u64,
    pub counts: Vec<ASCountOut>,
    pub strictly_increasing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceValue {
    pub place: String,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residue1Out {
    pub n: u64,
    pub class: String,
    pub profile: Vec<PlaceValue>,
    pub sum_formula_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TameOut {
    pub place: String,
    pub value: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residue2Out {
    pub n: u64,
    pub residues: Vec<TameOut>,
    pub unramified: bool,
    pub ramified_places: Vec<String>,
    pub twist_warning: bool,
}
