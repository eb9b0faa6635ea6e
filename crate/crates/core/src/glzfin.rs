//! Finite subgroups of `GL_d(Z)`: closure, conjugacy classification and the
//! mod-3 congruence check.
//!
//! Classification works from the maximal finite subgroups: every subgroup of
//! every maximal group is enumerated, and the results are merged under
//! `GL_d(Z)`-conjugacy. Dimension 2 gives 13 classes. Dimension 3 is available
//! through [`enumerate_finite_subgroups`] but is much slower.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::gcohom::GroupTable;
use crate::zlattice::{
    glz_simultaneous_conjugate_search, matrix_order, Certificate, Conjugacy, Matrix, ORDER_BOUND_DIM4,
};
use crate::IntMatrix;

/// A finite group of integer matrices, elements sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixGroup {
    dim: usize,
    elements: Vec<IntMatrix>,
    generators: Vec<IntMatrix>,
}

/// The group generated by `generators`, provided it has at most `size_bound` elements.
pub fn close_group(generators: &[IntMatrix], size_bound: usize) -> Result<MatrixGroup> {
    let dim = match generators.first() {
        Some(g) => g.rows(),
        None => return Err(Error::invalid("close_group needs at least one generator")),
    };
    for g in generators {
        if !g.is_square() || g.rows() != dim {
            return Err(Error::invalid("generators must be square of equal dimension"));
        }
        if !g.is_unimodular() {
            return Err(Error::invalid("generator is not invertible over Z (det is not +1 or -1)"));
        }
    }
    let elements: Vec<IntMatrix> = generate(generators, dim, size_bound)?.into_iter().collect();
    Ok(MatrixGroup::from_sorted(dim, elements))
}

fn generate(generators: &[IntMatrix], dim: usize, size_bound: usize) -> Result<BTreeSet<IntMatrix>> {
    let id = IntMatrix::identity(dim);
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = &x * g;
            if !seen.contains(&y) {
                if seen.len() >= size_bound {
                    return Err(Error::ExceedsBound(size_bound));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

impl MatrixGroup {
    fn from_sorted(dim: usize, elements: Vec<IntMatrix>) -> Self {
        let mut g = Self { dim, elements, generators: Vec::new() };
        g.generators = g.minimal_generators();
        g
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn contains(&self, x: &IntMatrix) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &IntMatrix) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    /// A generating set of minimal size among sets of at most three elements,
    /// lexicographically first in element order; greedy beyond that.
    fn minimal_generators(&self) -> Vec<IntMatrix> {
        let n = self.order();
        if n == 1 {
            return vec![];
        }
        let spans = |idx: &[usize]| {
            let gens: Vec<IntMatrix> = idx.iter().map(|&i| self.elements[i].clone()).collect();
            generate(&gens, self.dim, n).map(|s| s.len() == n).unwrap_or(false)
        };
        for k in 1..=3usize.min(n) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if spans(&idx) {
                    return idx.iter().map(|&i| self.elements[i].clone()).collect();
                }
                // next combination
                let mut i = k;
                while i > 0 && idx[i - 1] == n - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        self.greedy_generators()
    }

    fn greedy_generators(&self) -> Vec<IntMatrix> {
        let mut gens: Vec<IntMatrix> = Vec::new();
        let mut span: BTreeSet<IntMatrix> = BTreeSet::from([IntMatrix::identity(self.dim)]);
        for x in &self.elements {
            if span.contains(x) {
                continue;
            }
            gens.push(x.clone());
            span = generate(&gens, self.dim, self.order()).expect("subset of a finite group");
        }
        gens
    }

    /// Multiplication table in the element order of [`MatrixGroup::elements`].
    pub fn table(&self) -> GroupTable {
        let n = self.order();
        let table = (0..n)
            .map(|a| (0..n).map(|b| self.index_of(&(&self.elements[a] * &self.elements[b])).expect("closed")).collect())
            .collect();
        GroupTable::from_table(table).expect("matrix groups satisfy the axioms")
    }

    /// All subgroups, each as a [`MatrixGroup`].
    pub fn subgroups(&self) -> Vec<MatrixGroup> {
        let t = self.table();
        t.all_subgroups()
            .into_iter()
            .map(|h| {
                let mut els: Vec<IntMatrix> = h.elements().iter().map(|&i| self.elements[i].clone()).collect();
                els.sort();
                MatrixGroup::from_sorted(self.dim, els)
            })
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| (a * b) == (b * a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u32;
        self.elements.iter().any(|x| matrix_order(x, n).ok().flatten() == Some(n))
    }

    /// `C_n` or `D_n` in dimension 2, where every finite group is one of them;
    /// otherwise `C_n` for cyclic groups and `G_n` for the rest.
    pub fn label(&self) -> String {
        let n = self.order();
        if self.is_cyclic() && (self.dim != 2 || self.elements.iter().all(|x| det(x).is_one())) {
            format!("C{n}")
        } else if self.dim == 2 {
            format!("D{}", n / 2)
        } else {
            format!("G{n}")
        }
    }

    /// Conjugation-invariant summary: sorted `(order, det, trace)` of elements.
    pub fn element_profile(&self) -> Vec<(u32, BigInt, BigInt)> {
        let mut p: Vec<(u32, BigInt, BigInt)> = self
            .elements
            .iter()
            .map(|x| {
                let o = matrix_order(x, self.order() as u32).ok().flatten().unwrap_or(0);
                (o, det(x), x.trace().expect("bigint"))
            })
            .collect();
        p.sort();
        p
    }

    /// `X G X^{-1}` for unimodular `X`.
    pub fn conjugate_by(&self, x: &IntMatrix) -> Result<MatrixGroup> {
        let xi = inverse_unimodular(x)?;
        let mut els: Vec<IntMatrix> = self.elements.iter().map(|g| &(x * g) * &xi).collect();
        els.sort();
        Ok(MatrixGroup::from_sorted(self.dim, els))
    }
}

fn det(x: &IntMatrix) -> BigInt {
    x.determinant().expect("bigint determinant")
}

/// Inverse of a unimodular matrix via the adjugate.
pub fn inverse_unimodular(x: &IntMatrix) -> Result<IntMatrix> {
    if !x.is_unimodular() {
        return Err(Error::invalid("matrix is not unimodular"));
    }
    let n = x.rows();
    let d = det(x);
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // adj(x)[i][j] = (-1)^(i+j) det(minor(j, i))
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = x.select_rows(&rows).select_cols(&cols);
            let m = if n == 1 { BigInt::one() } else { det(&minor) };
            let sign = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            data.push(sign * m * &d);
        }
    }
    Matrix::new(n, n, data)
}

/// Why two subgroups are not conjugate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupCertificate {
    OrderDiffers {
        left: usize,
        right: usize,
    },
    /// The multisets of (order, determinant, trace) differ.
    ElementProfileDiffers,
    /// Every assignment of the left generators to elements of the right group
    /// was refuted; one certificate per assignment.
    EveryAssignmentRefuted(Vec<Certificate>),
    /// The reductions mod `m` are not conjugate subgroups of `GL_d(Z/m)`.
    ModularReduction {
        modulus: u32,
    },
}

impl SubgroupCertificate {
    pub fn describe(&self) -> String {
        match self {
            Self::OrderDiffers { left, right } => format!("orders differ ({left} vs {right})"),
            Self::ElementProfileDiffers => "element (order, det, trace) profiles differ".into(),
            Self::EveryAssignmentRefuted(certs) => {
                let mut kinds: Vec<String> = certs.iter().map(Certificate::describe).collect();
                kinds.sort();
                kinds.dedup();
                format!("all {} generator assignments refuted: {}", certs.len(), kinds.join("; "))
            }
            Self::ModularReduction { modulus } => {
                format!("reductions mod {modulus} are not conjugate subgroups of GL_d(Z/{modulus})")
            }
        }
    }

    /// Moduli of the congruence arguments used, if any.
    pub fn moduli(&self) -> Vec<u32> {
        match self {
            Self::ModularReduction { modulus } => vec![*modulus],
            Self::EveryAssignmentRefuted(certs) => {
                let mut m: Vec<u32> = certs
                    .iter()
                    .filter_map(|c| match c {
                        Certificate::ModularReduction { modulus } => Some(*modulus),
                        _ => None,
                    })
                    .collect();
                m.sort();
                m.dedup();
                m
            }
            _ => vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupConjugacy {
    /// `X` with `X H1 X^{-1} = H2`.
    Conjugate(IntMatrix),
    NotConjugate(SubgroupCertificate),
    Inconclusive,
}

const ENTRY_BOUNDS: [u32; 2] = [5, 10];

/// Decides whether `h2 = X h1 X^{-1}` for some `X` in `GL_d(Z)`.
pub fn subgroup_conjugacy(h1: &MatrixGroup, h2: &MatrixGroup) -> Result<SubgroupConjugacy> {
    if h1.dim != h2.dim {
        return Err(Error::invalid("subgroups live in different dimensions"));
    }
    if h1.order() != h2.order() {
        return Ok(SubgroupConjugacy::NotConjugate(SubgroupCertificate::OrderDiffers {
            left: h1.order(),
            right: h2.order(),
        }));
    }
    if h1 == h2 {
        return Ok(SubgroupConjugacy::Conjugate(IntMatrix::identity(h1.dim)));
    }
    if h1.element_profile() != h2.element_profile() {
        return Ok(SubgroupConjugacy::NotConjugate(SubgroupCertificate::ElementProfileDiffers));
    }
    let gens = h1.generators();
    let key = |x: &IntMatrix| (det(x), x.trace().expect("bigint"), matrix_order(x, 64).ok().flatten());
    let candidates: Vec<Vec<&IntMatrix>> =
        gens.iter().map(|g| h2.elements().iter().filter(|y| key(y) == key(g)).collect()).collect();
    let mut assignments: Vec<Vec<IntMatrix>> = vec![vec![]];
    for c in &candidates {
        let mut next = Vec::new();
        for a in &assignments {
            for &y in c {
                let mut b = a.clone();
                b.push(y.clone());
                next.push(b);
            }
        }
        assignments = next;
    }
    assignments.retain(|b| generate(b, h2.dim, h2.order()).map(|g| g.len() == h2.order()).unwrap_or(false));
    let mut pending: Vec<Vec<IntMatrix>> = assignments;
    let mut refuted = Vec::new();
    for bound in ENTRY_BOUNDS {
        let mut still = Vec::new();
        for b in pending {
            match glz_simultaneous_conjugate_search(gens, &b, bound)? {
                Conjugacy::Conjugate(x) => return Ok(SubgroupConjugacy::Conjugate(x)),
                Conjugacy::NotConjugate(c) => refuted.push(c),
                Conjugacy::Inconclusive { .. } => still.push(b),
            }
        }
        pending = still;
        if pending.is_empty() {
            break;
        }
    }
    if pending.is_empty() {
        return Ok(SubgroupConjugacy::NotConjugate(SubgroupCertificate::EveryAssignmentRefuted(refuted)));
    }
    for m in [2u32, 3, 4] {
        if let Some(false) = modular_subgroup_conjugate(h1, h2, m) {
            return Ok(SubgroupConjugacy::NotConjugate(SubgroupCertificate::ModularReduction { modulus: m }));
        }
    }
    Ok(SubgroupConjugacy::Inconclusive)
}

/// Whether the reductions mod `m` are conjugate in `GL_d(Z/m)`, by exhaustive
/// search. `None` when `GL_d(Z/m)` is too large to enumerate.
pub fn modular_subgroup_conjugate(h1: &MatrixGroup, h2: &MatrixGroup, m: u32) -> Option<bool> {
    let d = h1.dim;
    let space = (m as u64).checked_pow((d * d) as u32)?;
    if space > 300_000 {
        return None;
    }
    let red = |x: &IntMatrix| -> Vec<u32> {
        x.entries().iter().map(|v| v.mod_floor(&BigInt::from(m)).to_u32().expect("reduced")).collect()
    };
    let s1: BTreeSet<Vec<u32>> = h1.elements().iter().map(red).collect();
    let s2: BTreeSet<Vec<u32>> = h2.elements().iter().map(red).collect();
    if s1.len() != s2.len() {
        return Some(false);
    }
    let gens: Vec<Vec<u32>> = h1.generators().iter().map(red).collect();
    let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; d * d];
        for i in 0..d {
            for l in 0..d {
                let xv = x[i * d + l];
                if xv != 0 {
                    for j in 0..d {
                        out[i * d + j] = (out[i * d + j] + xv * y[l * d + j]) % m;
                    }
                }
            }
        }
        out
    };
    let mut x = vec![0u32; d * d];
    for _ in 0..space {
        // X g X^{-1} in s2  <=>  X g = y X for some y in s2; test X g X^-1 via membership of (X g, X) pairs
        let xm = Matrix::new(d, d, x.iter().map(|&v| BigInt::from(v)).collect()).expect("square");
        let dt = det(&xm).mod_floor(&BigInt::from(m));
        if dt.gcd(&BigInt::from(m)).is_one() {
            let ok = gens.iter().all(|g| {
                let xg = mul(&x, g);
                s2.iter().any(|y| mul(y, &x) == xg)
            });
            if ok {
                return Some(true);
            }
        }
        for v in x.iter_mut() {
            *v += 1;
            if *v < m {
                break;
            }
            *v = 0;
        }
    }
    Some(false)
}

/// One conjugacy class of finite subgroups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: MatrixGroup,
    pub order: usize,
    pub label: String,
    /// Number of enumerated subgroups that fell into this class.
    pub members: usize,
}

/// Record of how two classes with equal order and label were told apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub left: usize,
    pub right: usize,
    pub certificate: Option<SubgroupCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjClassTable {
    pub dimension: usize,
    pub classes: Vec<ConjClass>,
    /// Certificates for classes sharing order and label (`None` = undecided).
    pub separations: Vec<Separation>,
}

impl ConjClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing `h`.
    pub fn classify(&self, h: &MatrixGroup) -> Result<Option<usize>> {
        for (i, c) in self.classes.iter().enumerate() {
            if let SubgroupConjugacy::Conjugate(_) = subgroup_conjugacy(&c.representative, h)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

/// Generators of representatives of the maximal finite subgroups of `GL_d(Z)`
/// up to conjugacy, for `d <= 3`.
pub fn maximal_finite_subgroups(dim: usize) -> Result<Vec<Vec<IntMatrix>>> {
    match dim {
        1 => Ok(vec![vec![m(&[&[-1]])]]),
        2 => Ok(vec![
            vec![m(&[&[0, -1], &[1, 0]]), m(&[&[1, 0], &[0, -1]])],
            vec![m(&[&[1, -1], &[1, 0]]), m(&[&[0, 1], &[1, 0]])],
        ]),
        3 => {
            let cubic = vec![
                m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
                m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                m(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            ];
            let face = m(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
            let body = m(&[&[-1, 1, 1], &[1, -1, 1], &[1, 1, -1]]);
            let hex = vec![
                m(&[&[1, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
                m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]),
                m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
                m(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
            ];
            Ok(vec![cubic.clone(), rational_conjugate(&cubic, &face)?, rational_conjugate(&cubic, &body)?, hex])
        }
        _ => Err(Error::invalid(format!("maximal finite subgroups are only tabulated for d <= 3, not {dim}"))),
    }
}

/// `M^{-1} g M` for each generator; fails unless every result is integral.
fn rational_conjugate(gens: &[IntMatrix], mm: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let n = mm.rows();
    let d = det(mm);
    // adjugate = d * M^{-1}
    let mut adj = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = det(&mm.select_rows(&rows).select_cols(&cols));
            adj.push(if (i + j) % 2 == 0 { minor } else { -minor });
        }
    }
    let adj = Matrix::new(n, n, adj)?;
    gens.iter()
        .map(|g| {
            let p = &(&adj * g) * mm;
            let data: Option<Vec<BigInt>> = p
                .entries()
                .iter()
                .map(|v| {
                    let (q, r) = v.div_rem(&d);
                    r.is_zero().then_some(q)
                })
                .collect();
            Matrix::new(n, n, data.ok_or_else(|| Error::Internal("conjugate is not integral".into()))?)
        })
        .collect()
}

type Invariants = (usize, String, Vec<(u32, BigInt, BigInt)>);

/// Classifies all subgroups of the given finite groups up to `GL_d(Z)`-conjugacy.
pub fn classify_subgroups(maximal: &[Vec<IntMatrix>], dim: usize) -> Result<ConjClassTable> {
    let mut all: BTreeSet<MatrixGroup> = BTreeSet::new();
    for gens in maximal {
        let g = close_group(gens, 10_000)?;
        for h in g.subgroups() {
            debug_assert_eq!(g.order() % h.order(), 0);
            all.insert(h);
        }
    }
    // bucket by conjugation invariants, then merge within buckets
    let mut buckets: BTreeMap<Invariants, Vec<MatrixGroup>> = BTreeMap::new();
    for h in all {
        buckets.entry((h.order(), h.label(), h.element_profile())).or_default().push(h);
    }
    let mut classes: Vec<(MatrixGroup, usize)> = Vec::new();
    for (_, members) in buckets {
        let mut reps: Vec<Vec<MatrixGroup>> = Vec::new();
        for h in members {
            let mut placed = false;
            for class in reps.iter_mut() {
                if let SubgroupConjugacy::Conjugate(_) = subgroup_conjugacy(&class[0], &h)? {
                    class.push(h.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                reps.push(vec![h]);
            }
        }
        for class in reps {
            let n = class.len();
            let canon = class.into_iter().min().expect("nonempty");
            classes.push((canon, n));
        }
    }
    classes.sort_by(|a, b| (a.0.order(), a.0.label(), &a.0.elements).cmp(&(b.0.order(), b.0.label(), &b.0.elements)));
    let classes: Vec<ConjClass> = classes
        .into_iter()
        .map(|(rep, members)| ConjClass { order: rep.order(), label: rep.label(), representative: rep, members })
        .collect();
    let mut separations = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if classes[i].order == classes[j].order && classes[i].label == classes[j].label {
                let certificate = match subgroup_conjugacy(&classes[i].representative, &classes[j].representative)? {
                    SubgroupConjugacy::NotConjugate(c) => Some(c),
                    SubgroupConjugacy::Inconclusive => None,
                    SubgroupConjugacy::Conjugate(_) => {
                        return Err(Error::Internal("two table classes turned out conjugate".into()))
                    }
                };
                separations.push(Separation { left: i, right: j, certificate });
            }
        }
    }
    Ok(ConjClassTable { dimension: dim, classes, separations })
}

/// Conjugacy classes of finite subgroups of `GL_d(Z)` for `d <= 3`.
pub fn enumerate_finite_subgroups(dim: usize) -> Result<ConjClassTable> {
    classify_subgroups(&maximal_finite_subgroups(dim)?, dim)
}

/// The 13 conjugacy classes of finite subgroups of `GL_2(Z)`.
pub fn enumerate_finite_subgroups_gl2() -> Result<ConjClassTable> {
    enumerate_finite_subgroups(2)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinkowskiCheck {
    Pass,
    /// A nontrivial finite-order matrix congruent to the identity mod 3.
    Violation(IntMatrix),
}

/// For finite-order `A`: `A = I mod 3` forces `A = I`.
pub fn minkowski_reduction_check(a: &IntMatrix) -> Result<MinkowskiCheck> {
    let bound = if a.rows() <= 4 { ORDER_BOUND_DIM4 } else { 10_000 };
    if matrix_order(a, bound)?.is_none() {
        return Err(Error::invalid("matrix has infinite order"));
    }
    let three = BigInt::from(3);
    let congruent = (0..a.rows()).all(|i| {
        (0..a.cols()).all(|j| {
            let target = if i == j { BigInt::one() } else { BigInt::zero() };
            (&a[(i, j)] - target).mod_floor(&three).is_zero()
        })
    });
    if congruent && !a.is_identity() {
        Ok(MinkowskiCheck::Violation(a.clone()))
    } else {
        Ok(MinkowskiCheck::Pass)
    }
}

/// A random product of `steps` elementary and sign matrices.
pub fn random_unimodular<R: Rng + ?Sized>(dim: usize, steps: usize, rng: &mut R) -> IntMatrix {
    let mut x = IntMatrix::identity(dim);
    if dim < 2 {
        if rng.gen_bool(0.5) {
            x = x.neg();
        }
        return x;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut e = IntMatrix::identity(dim);
        e[(i, j)] = BigInt::from(c);
        x = &x * &e;
        if rng.gen_ratio(1, 8) {
            let k = rng.gen_range(0..dim);
            for r in 0..dim {
                let v = -x[(r, k)].clone();
                x[(r, k)] = v;
            }
        }
    }
    x
}

/// Tables for `d = 1, 2`, built once.
pub(crate) fn table_cache() -> &'static HashMap<usize, ConjClassTable> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<HashMap<usize, ConjClassTable>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut h = HashMap::new();
        for d in [1, 2] {
            h.insert(d, enumerate_finite_subgroups(d).expect("tabulated dimensions"));
        }
        h
    })
}


#[cfg(test)]
mod table_tests {
    use super::*;

    #[test]
    fn gl2_has_thirteen_classes() {
        let t = enumerate_finite_subgroups_gl2().unwrap();
        assert_eq!(t.len(), 13);
        assert!(t.separations.iter().all(|s| s.certificate.is_some()));
        assert_eq!(t.classes.iter().filter(|c| c.order == 1).count(), 1);
        assert_eq!(enumerate_finite_subgroups(1).unwrap().len(), 2);
    }

    #[test]
    fn gl3_has_73_classes() {
        let t = enumerate_finite_subgroups(3).unwrap();
        assert_eq!(t.len(), 73);
        assert!(t.separations.iter().all(|s| s.certificate.is_some()));
    }
}
