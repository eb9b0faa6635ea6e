//! Batch front end: one JSON job in, one canonical JSON result out.

pub mod input;
pub mod output;

use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use torilab::artinschreier::{
    as_norm_torus, as_unramified_certificate, brute_force_class_count, class_count, enumerate_as_classes,
};
use torilab::classsets::{
    class_group_imaginary_quadratic, class_set_split_torus, condition_t_split, picard_open_p1, units_open_p1, OpenCurve,
};
use torilab::gcohom::{cohomology_with_budget, Budget};
use torilab::glzfin::{close_group, enumerate_finite_subgroups, ConjClassTable};
use torilab::residues::{
    residue_profile, sum_formula_holds, unramified_symbol_check, SquareClass, SymbolClass, TameContext,
};
use torilab::sha::{sha1_places, sha2_torsion};
use torilab::torus::{enumerate_good_reduction_tori, enumerate_good_reduction_tori_with, tori_isomorphic};
use torilab::torus::{TorusDescriptor, TorusIsomorphism};
use torilab::Error;

use input::*;
use output::*;

pub const TOOL_VERSION: &str = concat!("torilab ", env!("CARGO_PKG_VERSION"));

/// Commands accepted by [`execute`].
pub const COMMANDS: &[&str] = &[
    "cohom",
    "sha",
    "tori classify",
    "tori isom",
    "tori census",
    "glz subgroups",
    "picard",
    "classset",
    "condT",
    "classgroup",
    "artin-schreier",
    "residue deg1",
    "residue deg2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    pub max_elems: u64,
    pub max_dim: u64,
}

impl Default for BudgetSpec {
    fn default() -> Self {
        let b = Budget::default();
        Self { max_elems: b.max_elems as u64, max_dim: b.max_dim as u64 }
    }
}

impl From<BudgetSpec> for Budget {
    fn from(b: BudgetSpec) -> Self {
        Budget { max_elems: b.max_elems.into(), max_dim: b.max_dim.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobRequest {
    pub command: String,
    #[serde(default)]
    pub input: Value,
    #[serde(default)]
    pub budget: BudgetSpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    InvalidInput,
    BudgetExceeded,
    /// Internal failure or an undecided search; not one of the user-facing errors.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::Failed => 1,
            Self::InvalidInput => 2,
            Self::BudgetExceeded => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrippedBudget {
    pub what: String,
    pub required: String,
    pub limit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorInfo {
    pub kind: String,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pointer: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<TrippedBudget>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub tool_version: String,
    pub input_digest: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobResult {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub payload: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorInfo>,
    pub provenance: Provenance,
}

impl JobResult {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Sorted keys, no whitespace.
    pub fn to_canonical(&self) -> String {
        canonical(&serde_json::to_value(self).expect("results serialize"))
    }
}

/// Compact JSON with object keys in sorted order.
pub fn canonical(v: &Value) -> String {
    // serde_json's map is a BTreeMap without the preserve_order feature.
    serde_json::to_string(v).expect("values serialize")
}

pub fn digest(req: &JobRequest) -> String {
    let text = canonical(&serde_json::to_value(req).expect("requests serialize"));
    hex::encode(Sha256::digest(text.as_bytes()))
}

struct Failure {
    status: Status,
    info: Box<ErrorInfo>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let reason = e.to_string();
        let (status, kind, budget) = match &e {
            Error::BudgetExceeded { what, required, limit } => (
                Status::BudgetExceeded,
                "budget-exceeded",
                Some(TrippedBudget { what: what.clone(), required: required.to_string(), limit: limit.to_string() }),
            ),
            Error::Invalid(_) => (Status::InvalidInput, "invalid", None),
            Error::ExceedsBound(_) => (Status::InvalidInput, "exceeds-bound", None),
            Error::NotSubgroup(_) => (Status::InvalidInput, "not-subgroup", None),
            Error::NotExact { .. } => (Status::InvalidInput, "not-exact", None),
            Error::Ramified(_) => (Status::InvalidInput, "ramified", None),
            Error::BadReduction(_) => (Status::InvalidInput, "bad-reduction", None),
            Error::CharacteristicClash { .. } => (Status::InvalidInput, "characteristic-clash", None),
            Error::Inconclusive(_) => (Status::Failed, "inconclusive", None),
            Error::Overflow => (Status::Failed, "overflow", None),
            Error::Internal(_) => (Status::Failed, "internal", None),
        };
        Failure { status, info: Box::new(ErrorInfo { kind: kind.into(), reason, pointer: None, budget }) }
    }
}

fn invalid(reason: impl Into<String>, pointer: Option<String>) -> Failure {
    Failure {
        status: Status::InvalidInput,
        info: Box::new(ErrorInfo { kind: "schema".into(), reason: reason.into(), pointer, budget: None }),
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut s = String::from("/input");
    for seg in path.iter() {
        s.push('/');
        match seg {
            Segment::Seq { index } => s.push_str(&index.to_string()),
            Segment::Map { key } | Segment::Enum { variant: key } => {
                s.push_str(&key.replace('~', "~0").replace('/', "~1"))
            }
            Segment::Unknown => s.push('?'),
        }
    }
    s
}

fn parse<T: DeserializeOwned>(v: &Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let pointer = pointer_of(e.path());
        invalid(e.into_inner().to_string(), Some(pointer))
    })
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payloads serialize")
}

pub fn execute(req: &JobRequest) -> JobResult {
    let start = Instant::now();
    let outcome = if req.budget.max_elems == 0 || req.budget.max_dim == 0 {
        Err(invalid("budgets must be positive", Some("/budget".into())))
    } else {
        dispatch(req)
    };
    let provenance = Provenance {
        tool_version: TOOL_VERSION.into(),
        input_digest: digest(req),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    match outcome {
        Ok(payload) => JobResult { status: Status::Ok, payload: Some(payload), error: None, provenance },
        Err(f) => JobResult { status: f.status, payload: None, error: Some(*f.info), provenance },
    }
}

fn dispatch(req: &JobRequest) -> Result<Value, Failure> {
    let budget: Budget = req.budget.into();
    let v = &req.input;
    Ok(match req.command.as_str() {
        "cohom" => to_value(&cohom(parse(v)?, &budget)?),
        "sha" => sha(parse(v)?, &budget)?,
        "tori classify" => to_value(&classify(parse(v)?)?),
        "tori isom" => to_value(&isom(parse(v)?)?),
        "tori census" => to_value(&census(parse(v)?)?),
        "glz subgroups" => to_value(&glz(parse(v)?)?),
        "picard" => to_value(&picard(parse(v)?)?),
        "classset" => {
            let c: CurveInput = parse(v)?;
            let curve = OpenCurve::new(c.p, c.places()?)?;
            to_value(&ClassSetOut { d: c.d, class_set: (&class_set_split_torus(&curve, c.d)?).into() })
        }
        "condT" => {
            let c: CurveInput = parse(v)?;
            let w = condition_t_split(&OpenCurve::new(c.p, c.places()?)?, c.d)?;
            to_value(&CondTOut {
                d: c.d,
                places: places(&w.places),
                class_set_after: (&w.class_set_after).into(),
                verified: w.verified,
            })
        }
        "classgroup" => {
            let c: ClassGroupInput = parse(v)?;
            let g = class_group_imaginary_quadratic(c.discriminant)?;
            to_value(&ClassGroupOut {
                discriminant: g.discriminant,
                class_number: g.class_number(),
                group: (&g.shape).into(),
                forms: g.forms.iter().map(|f| [f.a, f.b, f.c]).collect(),
            })
        }
        "artin-schreier" => to_value(&artin_schreier(parse(v)?, &budget)?),
        "residue deg1" => to_value(&residue1(parse(v)?)?),
        "residue deg2" => to_value(&residue2(parse(v)?)?),
        other => {
            return Err(invalid(
                format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")),
                Some("/command".into()),
            ))
        }
    })
}

fn cohom(c: CohomInput, budget: &Budget) -> Result<CohomOut, Failure> {
    let g = c.group.build()?;
    let m = c.module.build(&g)?;
    let h = cohomology_with_budget(&m, c.degree, budget)?;
    Ok(CohomOut {
        degree: c.degree,
        group_order: g.order(),
        module_dim: m.dim(),
        shape: h.shape().into(),
        generator_orders: h.orders().iter().map(JsonInt::from).collect(),
        representatives: h.representatives().iter().map(|f| f.values().iter().map(JsonInt::from).collect()).collect(),
    })
}

fn sha(s: ShaInput, budget: &Budget) -> Result<Value, Failure> {
    let datum = s.datum.build()?;
    let t = s.torus.build(datum.group())?;
    match s.degree {
        1 => {
            let r = sha1_places(&t, &datum, s.bound, budget)?;
            Ok(to_value(&ShaOut {
                label: r.label.into(),
                degree: r.degree,
                kernel: (&r.kernel).into(),
                ambient: (&r.ambient).into(),
                classes: r.classes.iter().map(|c| c.iter().map(JsonInt::from).collect()).collect(),
                family: family(&r.family_used),
                excluded_places: places(&r.excluded_places),
                all_cyclic_realized: r.all_cyclic_realized,
                stabilized: r.stabilized,
                sample_bound: r.sample_bound,
                confirmation_bound: r.confirmation_bound,
            }))
        }
        2 => {
            let ell = s.ell.ok_or_else(|| invalid("degree 2 needs the prime ell", Some("/input/ell".into())))?;
            let r = sha2_torsion(&t, ell, &datum, s.bound, budget)?;
            Ok(to_value(&Sha2Out {
                label: r.label.into(),
                ell: r.ell,
                sha2: (&r.sha2).into(),
                direct: (&r.direct).into(),
                direct_generators: r.direct_generators.iter().map(|c| c.iter().map(JsonInt::from).collect()).collect(),
                alpha_bound: (&r.alpha_bound).into(),
                beta_image: (&r.beta_image).into(),
                contained: r.contained,
                family: family(&r.family_used),
            }))
        }
        d => Err(invalid(format!("degree must be 1 or 2, got {d}"), Some("/input/degree".into()))),
    }
}

fn torus_out(t: &TorusDescriptor) -> TorusOut {
    TorusOut {
        provenance: t.provenance().into(),
        dimension: t.dimension(),
        faithful_quotient_order: t.faithful_quotient_order(),
        action_kernel: t.action_kernel().elements().to_vec(),
        characters: actions(t.characters()),
    }
}

fn classify(c: ToriClassifyInput) -> Result<ClassifyOut, Failure> {
    let g = c.group.build()?;
    let t = c.torus.build(&g)?;
    let gens: Vec<_> = g.generators().iter().map(|&x| t.characters().action(x).to_big()).collect();
    let image = close_group(&gens, g.order())?;
    let image_class = match t.dimension() {
        1 | 2 => enumerate_finite_subgroups(t.dimension())?.classify(&image)?,
        _ => None,
    };
    Ok(ClassifyOut { torus: torus_out(&t), image_class, image_order: image.order(), image_label: image.label() })
}

fn isom(c: ToriIsomInput) -> Result<IsomOut, Failure> {
    let g = c.group.build()?;
    let (l, r) = (c.left.build(&g)?, c.right.build(&g)?);
    Ok(match tori_isomorphic(&l, &r, c.bound)? {
        TorusIsomorphism::Isomorphic(x) => IsomOut {
            verdict: IsomVerdict::Isomorphic,
            intertwiner: Some(matrix(&x)),
            certificate: None,
            entry_bound: None,
        },
        TorusIsomorphism::NotIsomorphic(why) => IsomOut {
            verdict: IsomVerdict::NotIsomorphic,
            intertwiner: None,
            certificate: Some(why),
            entry_bound: None,
        },
        TorusIsomorphism::Inconclusive { entry_bound } => IsomOut {
            verdict: IsomVerdict::Inconclusive,
            intertwiner: None,
            certificate: None,
            entry_bound: Some(entry_bound),
        },
    })
}

fn census(c: ToriCensusInput) -> Result<CensusOut, Failure> {
    let g = c.group.build()?;
    let inertia = c.inertia(&g)?;
    let tori = match (c.dimension, c.stretch) {
        (3, true) => {
            let table: ConjClassTable = enumerate_finite_subgroups(3)?;
            enumerate_good_reduction_tori_with(&g, &inertia, &table)?
        }
        (3, false) => return Err(invalid("dimension 3 needs \"stretch\": true", Some("/input/dimension".into()))),
        (d, _) => enumerate_good_reduction_tori(&g, &inertia, d)?,
    };
    Ok(CensusOut { dimension: c.dimension, count: tori.len(), tori: tori.iter().map(torus_out).collect() })
}

fn glz(c: GlzInput) -> Result<GlzOut, Failure> {
    if !(1..=3).contains(&c.dim) {
        return Err(invalid("dimension must be 1, 2 or 3", Some("/input/dim".into())));
    }
    let t = enumerate_finite_subgroups(c.dim)?;
    Ok(GlzOut {
        dimension: t.dimension,
        class_count: t.classes.len(),
        undecided: t.separations.iter().filter(|s| s.certificate.is_none()).count(),
        classes: t
            .classes
            .iter()
            .enumerate()
            .map(|(i, k)| ClassOut {
                index: i,
                order: k.order,
                label: k.label.clone(),
                members: k.members,
                generators: k.representative.generators().iter().map(matrix).collect(),
            })
            .collect(),
        separations: t
            .separations
            .iter()
            .map(|s| SeparationOut {
                left: s.left,
                right: s.right,
                certificate: s.certificate.as_ref().map(|c| c.describe()),
                moduli: s.certificate.as_ref().map(|c| c.moduli()).unwrap_or_default(),
            })
            .collect(),
    })
}

fn picard(c: CurveInput) -> Result<PicardOut, Failure> {
    let curve = OpenCurve::new(c.p, c.places()?)?;
    let pic = picard_open_p1(&curve);
    let units = units_open_p1(&curve)?;
    Ok(PicardOut {
        p: c.p,
        removed: places(curve.removed()),
        picard: (&pic.shape).into(),
        picard_generators: places(&pic.generators),
        unit_torsion_order: units.torsion_order,
        unit_free_rank: units.free_rank,
        unit_generators: units.generators.iter().map(ratfunc).collect(),
        unit_divisors: units.divisor_matrix(&curve),
    })
}

fn artin_schreier(c: ArtinSchreierInput, budget: &Budget) -> Result<ArtinSchreierOut, Failure> {
    if c.max_degree == 0 {
        return Err(invalid("max_degree must be at least 1", Some("/input/max_degree".into())));
    }
    torilab::fpoly::is_prime(c.p)
        .then_some(())
        .ok_or_else(|| invalid(format!("{} is not prime", c.p), Some("/input/p".into())))?;
    let mut counts = Vec::new();
    for d in 1..=c.max_degree {
        let count = class_count(c.p, d);
        // the brute-force check enumerates p^(d+1) polynomials
        let work = (c.p as u128).checked_pow(d as u32 + 1).unwrap_or(u128::MAX);
        if work > budget.max_elems * budget.max_dim {
            return Err(Error::BudgetExceeded {
                what: format!("Artin-Schreier enumeration at degree {d}"),
                required: work,
                limit: budget.max_elems * budget.max_dim,
            }
            .into());
        }
        let mut certified = true;
        for cls in enumerate_as_classes(c.p, d)? {
            let cert = as_unramified_certificate(cls.representative())?;
            certified &= cert.derivative_is_minus_one()
                && as_norm_torus(cls.representative())?.torus.dimension() + 1 == c.p as usize;
        }
        counts.push(ASCountOut { degree: d, count, brute_force: brute_force_class_count(c.p, d), certified });
    }
    let strictly_increasing = counts.windows(2).all(|w| w[0].count < w[1].count);
    Ok(ArtinSchreierOut { p: c.p, counts, strictly_increasing })
}

fn residue1(c: Residue1Input) -> Result<Residue1Out, Failure> {
    let f = SquareClass::new(&c.element.build(c.p)?, c.n)?;
    let profile = residue_profile(&f)?;
    Ok(Residue1Out {
        n: c.n,
        class: ratfunc(&f.element().to_ratfunc()),
        profile: profile.iter().map(|(v, r)| PlaceValue { place: v.to_string(), value: *r }).collect(),
        sum_formula_holds: sum_formula_holds(&f)?,
    })
}

fn residue2(c: Residue2Input) -> Result<Residue2Out, Failure> {
    let removed = c.removed.iter().map(|v| v.build(c.p)).collect::<torilab::Result<Vec<_>>>()?;
    let s = SymbolClass::new(c.a.build(c.p)?, c.b.build(c.p)?, c.n)?;
    let mut ctx = TameContext::new();
    let mut residues = Vec::new();
    for v in s.joint_support() {
        let r = ctx.tame(&s, &v)?;
        residues.push(TameOut { place: v.to_string(), value: r.value, modulus: r.modulus });
    }
    let check = unramified_symbol_check(&s, &removed)?;
    Ok(Residue2Out {
        n: c.n,
        residues,
        unramified: check.unramified,
        ramified_places: places(&check.ramified_places),
        twist_warning: check.twist_warning,
    })
}
