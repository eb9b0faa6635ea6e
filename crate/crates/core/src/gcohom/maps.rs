use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bar::{cohomology_with_budget, Budget, Cochain, CohomologyGroup};
use super::group::{GroupTable, Subgroup};
use super::module::GLattice;
use crate::error::{Error, Result};
use crate::zlattice::{hom_kernel, relation_vectors, AbelianGroupShape, Matrix, Sublattice, Subquotient};
use crate::SmallMatrix;

/// Homomorphism between finite presentations `Z^a / R_src -> Z^b / R_dst`,
/// given on the canonical generators (column `j` is the image of generator `j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyMap {
    source_orders: Vec<BigInt>,
    target_orders: Vec<BigInt>,
    matrix: Matrix<BigInt>,
}

impl CohomologyMap {
    pub fn new(source_orders: Vec<BigInt>, target_orders: Vec<BigInt>, columns: &[Vec<BigInt>]) -> Self {
        assert_eq!(columns.len(), source_orders.len());
        let mut cols = columns.to_vec();
        for c in cols.iter_mut() {
            reduce(c, &target_orders);
        }
        let matrix = Matrix::from_columns(target_orders.len(), &cols);
        Self { source_orders, target_orders, matrix }
    }

    pub fn identity(orders: &[BigInt]) -> Self {
        let cols: Vec<Vec<BigInt>> = (0..orders.len()).map(|j| unit(orders.len(), j)).collect();
        Self::new(orders.to_vec(), orders.to_vec(), &cols)
    }

    pub fn matrix(&self) -> &Matrix<BigInt> {
        &self.matrix
    }

    pub fn source_orders(&self) -> &[BigInt] {
        &self.source_orders
    }

    pub fn target_orders(&self) -> &[BigInt] {
        &self.target_orders
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.matrix.mul_vec(x);
        reduce(&mut y, &self.target_orders);
        y
    }

    pub fn compose(&self, first: &CohomologyMap) -> CohomologyMap {
        assert_eq!(first.target_orders, self.source_orders);
        let cols: Vec<Vec<BigInt>> = (0..first.matrix.cols()).map(|j| self.apply(&first.matrix.column(j))).collect();
        CohomologyMap::new(first.source_orders.clone(), self.target_orders.clone(), &cols)
    }

    pub fn kernel(&self) -> Result<Subquotient> {
        hom_kernel(&self.source_orders, &self.target_orders, &self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.source_orders == self.target_orders && *self == Self::identity(&self.source_orders)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.shape().is_trivial())
    }

    fn image_lattice(&self) -> Sublattice {
        let mut gens: Vec<Vec<BigInt>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        gens.extend(relation_vectors(&self.target_orders));
        Sublattice::new(self.target_orders.len(), &gens)
    }

    pub fn is_surjective(&self) -> bool {
        let img = self.image_lattice();
        (0..self.target_orders.len()).all(|j| img.contains(&unit(self.target_orders.len(), j)))
    }

    /// Whether `y` lies in the image.
    pub fn image_contains(&self, y: &[BigInt]) -> bool {
        self.image_lattice().contains(y)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Result<Option<CohomologyMap>> {
        if !self.is_surjective() || !self.is_injective()? {
            return Ok(None);
        }
        let a = self.source_orders.len();
        let mut gens: Vec<Vec<BigInt>> = (0..a).map(|j| self.matrix.column(j)).collect();
        gens.extend(relation_vectors(&self.target_orders));
        let lat = Sublattice::new(self.target_orders.len(), &gens);
        let cols: Vec<Vec<BigInt>> = (0..self.target_orders.len())
            .map(|j| {
                let c = lat.solve(&unit(self.target_orders.len(), j)).expect("surjective");
                c[..a].to_vec()
            })
            .collect();
        Ok(Some(CohomologyMap::new(self.target_orders.clone(), self.source_orders.clone(), &cols)))
    }
}

fn reduce(v: &mut [BigInt], orders: &[BigInt]) {
    for (x, d) in v.iter_mut().zip(orders) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
}

fn unit(n: usize, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[j] = BigInt::one();
    v
}

fn checked_subgroup(g: &GroupTable, h: &Subgroup) -> Result<Subgroup> {
    g.subgroup(h.elements())
}

/// A map between two cohomology groups together with both groups.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub map: CohomologyMap,
}

/// Restriction of normalized cochains along an embedding of groups whose
/// identity maps to the identity.
pub fn restrict_cochain(f: &Cochain, sub_order: usize, emb: &[usize]) -> Cochain {
    let mut out = Cochain::zero(f.degree(), sub_order, f.dim());
    for t in 0..out.num_tuples() {
        let tuple = out.tuple_of(t);
        let big: Vec<usize> = tuple.iter().map(|&x| emb[x]).collect();
        out.set(&tuple, f.get(&big));
    }
    out
}

/// Restriction from an already computed `H^i(G, M)` to a subgroup.
pub fn restrict_cohomology(src: &CohomologyGroup, h: &Subgroup, budget: &Budget) -> Result<InducedMap> {
    let m = src.module();
    let h = checked_subgroup(m.group(), h)?;
    let (mh, emb) = m.restrict(&h);
    let target = cohomology_with_budget(&mh, src.degree(), budget)?;
    let cols = src
        .representatives()
        .iter()
        .map(|f| target.class_of(&restrict_cochain(f, h.order(), &emb)))
        .collect::<Result<Vec<_>>>()?;
    let map = CohomologyMap::new(src.orders().to_vec(), target.orders().to_vec(), &cols);
    Ok(InducedMap { source: src.clone(), target, map })
}

/// `res: H^i(G, M) -> H^i(H, M)`.
pub fn restriction_map(m: &GLattice, h: &Subgroup, degree: usize, budget: &Budget) -> Result<InducedMap> {
    checked_subgroup(m.group(), h)?;
    let src = cohomology_with_budget(m, degree, budget)?;
    restrict_cohomology(&src, h, budget)
}

/// The fixed lattice `M^N` as a `G/N`-lattice, with its basis in `M`
/// (columns) and the projection `G -> G/N`.
pub fn fixed_quotient_lattice(m: &GLattice, nsub: &Subgroup) -> Result<(GLattice, Matrix<BigInt>, Vec<usize>)> {
    let g = m.group();
    let nsub = checked_subgroup(g, nsub)?;
    let (q, proj) = g.quotient(&nsub)?;
    let basis = m.fixed_basis(&nsub)?;
    let k = basis.len();
    let lat = Sublattice::new(m.dim(), &basis);
    let mut action = vec![SmallMatrix::identity(k); q.order()];
    for x in 0..g.order() {
        let a = m.action(x).to_big();
        let mut mat = SmallMatrix::zeros(k, k);
        for (j, b) in basis.iter().enumerate() {
            let img = a.mul_vec(b);
            let c = lat.solve(&img).ok_or_else(|| Error::Internal("fixed lattice is not stable".into()))?;
            for (i, ci) in c.iter().enumerate() {
                mat[(i, j)] = i64::try_from(ci).map_err(|_| Error::Overflow)?;
            }
        }
        action[proj[x]] = mat;
    }
    let quot = GLattice::new(Arc::new(q), k, vec![], action)?;
    Ok((quot, Matrix::from_columns(m.dim(), &basis), proj))
}

/// `inf: H^i(G/N, M^N) -> H^i(G, M)` for a free module.
pub fn inflation_map(m: &GLattice, nsub: &Subgroup, degree: usize, budget: &Budget) -> Result<InducedMap> {
    let (quot, basis, proj) = fixed_quotient_lattice(m, nsub)?;
    let source = cohomology_with_budget(&quot, degree, budget)?;
    let target = cohomology_with_budget(m, degree, budget)?;
    let n = m.group().order();
    let cols = source
        .representatives()
        .iter()
        .map(|f| {
            let mut out = Cochain::zero(degree, n, m.dim());
            for t in 0..out.num_tuples() {
                let tuple = out.tuple_of(t);
                let down: Vec<usize> = tuple.iter().map(|&x| proj[x]).collect();
                out.set(&tuple, &basis.mul_vec(f.get(&down)));
            }
            target.class_of(&out)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = CohomologyMap::new(source.orders().to_vec(), target.orders().to_vec(), &cols);
    Ok(InducedMap { source, target, map })
}

/// `0 -> A -> B -> C -> 0` of lattices over one group, with the maps given
/// on coordinates (`alpha` is `dim B x dim A`, `beta` is `dim C x dim B`).
#[derive(Debug, Clone)]
pub struct ShortExactSequence {
    a: GLattice,
    b: GLattice,
    c: GLattice,
    alpha: Matrix<BigInt>,
    beta: Matrix<BigInt>,
    section: Vec<Vec<BigInt>>,
}

fn not_exact(position: &str, reason: impl Into<String>) -> Error {
    Error::NotExact { position: position.into(), reason: reason.into() }
}

impl ShortExactSequence {
    /// Verifies equivariance, well-definedness on torsion, and exactness at
    /// every position.
    pub fn new(a: GLattice, b: GLattice, c: GLattice, alpha: Matrix<BigInt>, beta: Matrix<BigInt>) -> Result<Self> {
        if a.group() != b.group() || b.group() != c.group() {
            return Err(Error::invalid("all three lattices must share one group"));
        }
        if (alpha.rows(), alpha.cols()) != (b.dim(), a.dim()) {
            return Err(not_exact("A -> B", "alpha has the wrong dimensions"));
        }
        if (beta.rows(), beta.cols()) != (c.dim(), b.dim()) {
            return Err(not_exact("B -> C", "beta has the wrong dimensions"));
        }
        check_hom(&a, &b, &alpha, "A -> B")?;
        check_hom(&b, &c, &beta, "B -> C")?;
        let ba = &beta * &alpha;
        if (0..ba.cols()).any(|j| !is_zero_in(&c, &ba.column(j))) {
            return Err(not_exact("B", "beta * alpha is not zero"));
        }
        let (ao, bo, co) = (a.coordinate_orders(), b.coordinate_orders(), c.coordinate_orders());
        if !hom_kernel(&ao, &bo, &alpha)?.shape().is_trivial() {
            return Err(not_exact("A", "alpha is not injective"));
        }
        let beta_map = CohomologyMap { source_orders: bo.clone(), target_orders: co.clone(), matrix: beta.clone() };
        if !beta_map.is_surjective() {
            return Err(not_exact("C", "beta is not surjective"));
        }
        let ker_beta = hom_kernel(&bo, &co, &beta)?;
        let mut img_alpha: Vec<Vec<BigInt>> = (0..alpha.cols()).map(|j| alpha.column(j)).collect();
        img_alpha.extend(relation_vectors(&bo));
        let img = Sublattice::new(b.dim(), &img_alpha);
        if ker_beta.generators().iter().any(|x| !img.contains(x)) {
            return Err(not_exact("B", "kernel of beta is larger than the image of alpha"));
        }
        let mut beta_gens: Vec<Vec<BigInt>> = (0..beta.cols()).map(|j| beta.column(j)).collect();
        beta_gens.extend(relation_vectors(&co));
        let lat = Sublattice::new(c.dim(), &beta_gens);
        let section =
            (0..c.dim()).map(|j| lat.solve(&unit(c.dim(), j)).expect("surjective")[..b.dim()].to_vec()).collect();
        Ok(Self { a, b, c, alpha, beta, section })
    }

    pub fn sub(&self) -> &GLattice {
        &self.a
    }

    pub fn middle(&self) -> &GLattice {
        &self.b
    }

    pub fn quotient(&self) -> &GLattice {
        &self.c
    }

    pub fn alpha(&self) -> &Matrix<BigInt> {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix<BigInt> {
        &self.beta
    }

    fn lift_value(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.b.dim()];
        for (xj, s) in x.iter().zip(&self.section) {
            if xj.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(s) {
                *o += xj * v;
            }
        }
        out
    }
}

fn is_zero_in(m: &GLattice, v: &[BigInt]) -> bool {
    v.iter().enumerate().all(|(j, x)| {
        let md = m.modulus(j);
        if md == 0 {
            x.is_zero()
        } else {
            (x % BigInt::from(md)).is_zero()
        }
    })
}

fn check_hom(src: &GLattice, dst: &GLattice, phi: &Matrix<BigInt>, position: &str) -> Result<()> {
    for j in 0..src.dim() {
        let md = src.modulus(j);
        if md != 0 {
            let v: Vec<BigInt> = phi.column(j).iter().map(|x| x * md).collect();
            if !is_zero_in(dst, &v) {
                return Err(not_exact(position, format!("not well defined on torsion coordinate {j}")));
            }
        }
    }
    for g in 0..src.group().order() {
        let lhs = phi * &src.action(g).to_big();
        let rhs = &dst.action(g).to_big() * phi;
        let diff = lhs.checked_sub(&rhs)?;
        if (0..diff.cols()).any(|j| !is_zero_in(dst, &diff.column(j))) {
            return Err(not_exact(position, format!("map is not equivariant for element {g}")));
        }
    }
    Ok(())
}

/// `delta: H^i(G, C) -> H^{i+1}(G, A)`: lift, apply `d`, pull back along
/// `alpha`. Every class is computed from two different lifts and compared.
pub fn connecting_hom(ses: &ShortExactSequence, degree: usize, budget: &Budget) -> Result<InducedMap> {
    let source = cohomology_with_budget(&ses.c, degree, budget)?;
    let target = cohomology_with_budget(&ses.a, degree + 1, budget)?;
    let n = ses.a.group().order();
    let mut pull_gens: Vec<Vec<BigInt>> = (0..ses.alpha.cols()).map(|j| ses.alpha.column(j)).collect();
    pull_gens.extend(relation_vectors(&ses.b.coordinate_orders()));
    let pull = Sublattice::new(ses.b.dim(), &pull_gens);
    let delta_of = |big_f: &Cochain| -> Result<Vec<BigInt>> {
        let df = super::bar::coboundary(&ses.b, big_f);
        let mut y = Cochain::zero(degree + 1, n, ses.a.dim());
        for t in 0..df.num_tuples() {
            let tuple = df.tuple_of(t);
            let c = pull
                .solve(df.get(&tuple))
                .ok_or_else(|| not_exact("B", "coboundary of a lift does not come from A"))?;
            let mut v = c[..ses.a.dim()].to_vec();
            ses.a.reduce(&mut v);
            y.set(&tuple, &v);
        }
        target.class_of(&y)
    };
    let mut cols = Vec::with_capacity(source.num_generators());
    for (k, f) in source.representatives().iter().enumerate() {
        let mut lift = Cochain::zero(degree, n, ses.b.dim());
        let mut lift2 = lift.clone();
        for t in 0..f.num_tuples() {
            let tuple = f.tuple_of(t);
            let v = ses.lift_value(f.get(&tuple));
            let mut w = v.clone();
            if !tuple.contains(&ses.a.group().identity()) {
                // perturb by alpha of a small deterministic A-valued cochain
                let r: Vec<BigInt> =
                    (0..ses.a.dim()).map(|j| BigInt::from(((t * 7 + j * 3 + k) % 5) as i64 - 2)).collect();
                for (wi, ai) in w.iter_mut().zip(ses.alpha.mul_vec(&r)) {
                    *wi += ai;
                }
            }
            lift.set(&tuple, &v);
            lift2.set(&tuple, &w);
        }
        let c1 = delta_of(&lift)?;
        let c2 = delta_of(&lift2)?;
        if c1 != c2 {
            return Err(Error::Internal("connecting map depends on the lift".into()));
        }
        cols.push(c1);
    }
    let map = CohomologyMap::new(source.orders().to_vec(), target.orders().to_vec(), &cols);
    Ok(InducedMap { source, target, map })
}

/// Mutually inverse identifications `H^i(G, Ind_H^G M) <-> H^i(H, M)`.
#[derive(Debug, Clone)]
pub struct ShapiroWitness {
    pub induced: GLattice,
    pub over_g: CohomologyGroup,
    pub over_h: CohomologyGroup,
    pub forward: CohomologyMap,
    pub backward: CohomologyMap,
}

/// `Z[G] (x)_{Z[H]} M`, with `M` a lattice over the table returned by
/// [`GroupTable::subgroup_table`] for `h`. Free coordinates of every coset
/// block come first, then the torsion ones; the identity coset is block 0.
pub fn induced_module(g: &Arc<GroupTable>, h: &Subgroup, m: &GLattice) -> Result<GLattice> {
    let h = checked_subgroup(g, h)?;
    let (ht, emb) = g.subgroup_table(&h);
    if **m.group() != ht {
        return Err(Error::invalid("module is not over the subgroup table of H"));
    }
    let (reps, act) = g.left_cosets(&h);
    let k = reps.len();
    let (r, t) = (m.free_rank(), m.moduli().len());
    let d = m.dim();
    let pos = |j: usize, c: usize| if c < r { j * r + c } else { k * r + j * t + (c - r) };
    let local = |x: usize| emb.iter().position(|&e| e == x).expect("element of H");
    let action = (0..g.order())
        .map(|x| {
            let mut mat = SmallMatrix::zeros(k * d, k * d);
            for (j, &(jj, hh)) in act[x].iter().enumerate() {
                let a = m.action(local(hh));
                for row in 0..d {
                    for col in 0..d {
                        mat[(pos(jj, row), pos(j, col))] = a[(row, col)];
                    }
                }
            }
            mat
        })
        .collect();
    let moduli: Vec<i64> = (0..k).flat_map(|_| m.moduli().iter().copied()).collect();
    GLattice::new(g.clone(), k * r, moduli, action)
}

pub fn shapiro(
    g: &Arc<GroupTable>,
    h: &Subgroup,
    m: &GLattice,
    degree: usize,
    budget: &Budget,
) -> Result<ShapiroWitness> {
    let h = checked_subgroup(g, h)?;
    let induced = induced_module(g, &h, m)?;
    let over_g = cohomology_with_budget(&induced, degree, budget)?;
    let over_h = cohomology_with_budget(m, degree, budget)?;
    let (_, emb) = g.subgroup_table(&h);
    let (r, t) = (m.free_rank(), m.moduli().len());
    let k = induced.dim() / m.dim().max(1);
    let block0: Vec<usize> = (0..r).chain((0..t).map(|c| k * r + c)).collect();
    let cols = over_g
        .representatives()
        .iter()
        .map(|f| {
            let res = restrict_cochain(f, h.order(), &emb);
            let mut out = Cochain::zero(degree, h.order(), m.dim());
            for tt in 0..out.num_tuples() {
                let tuple = out.tuple_of(tt);
                let v = res.get(&tuple);
                let proj: Vec<BigInt> = block0.iter().map(|&i| v[i].clone()).collect();
                out.set(&tuple, &proj);
            }
            over_h.class_of(&out)
        })
        .collect::<Result<Vec<_>>>()?;
    let forward = CohomologyMap::new(over_g.orders().to_vec(), over_h.orders().to_vec(), &cols);
    let backward = forward.inverse()?.ok_or_else(|| Error::Internal("Shapiro map is not bijective".into()))?;
    if !forward.compose(&backward).is_identity() || !backward.compose(&forward).is_identity() {
        return Err(Error::Internal("Shapiro maps are not mutually inverse".into()));
    }
    Ok(ShapiroWitness { induced, over_g, over_h, forward, backward })
}

/// Kernel of `H^i(G, M) -> prod_{H in family} H^i(H, M)`.
#[derive(Debug, Clone)]
pub struct ShaLattice {
    pub ambient: CohomologyGroup,
    pub kernel: Subquotient,
    /// Kernel generators as coordinates in the ambient group.
    pub classes: Vec<Vec<BigInt>>,
    pub representatives: Vec<Cochain>,
    pub restrictions: Vec<InducedMap>,
}

impl ShaLattice {
    pub fn shape(&self) -> &AbelianGroupShape {
        self.kernel.shape()
    }

    /// Whether an ambient class lies in the kernel.
    pub fn contains(&self, coords: &[BigInt]) -> bool {
        self.restrictions.iter().all(|r| r.map.apply(coords).iter().all(Zero::is_zero))
    }
}

pub fn sha_lattice(m: &GLattice, degree: usize, family: &[Subgroup], budget: &Budget) -> Result<ShaLattice> {
    let ambient = cohomology_with_budget(m, degree, budget)?;
    sha_lattice_of(&ambient, family, budget)
}

pub fn sha_lattice_of(ambient: &CohomologyGroup, family: &[Subgroup], budget: &Budget) -> Result<ShaLattice> {
    if family.is_empty() {
        return Err(Error::invalid("the family of subgroups must not be empty"));
    }
    let restrictions = family.iter().map(|h| restrict_cohomology(ambient, h, budget)).collect::<Result<Vec<_>>>()?;
    let a = ambient.num_generators();
    let mut dst_orders = Vec::new();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for r in &restrictions {
        dst_orders.extend_from_slice(r.map.target_orders());
        for i in 0..r.map.matrix().rows() {
            rows.push(r.map.matrix().row(i).to_vec());
        }
    }
    let phi = if rows.is_empty() { Matrix::zeros(0, a) } else { Matrix::from_rows(rows)? };
    let kernel = hom_kernel(ambient.orders(), &dst_orders, &phi)?;
    let classes: Vec<Vec<BigInt>> = kernel
        .generators()
        .iter()
        .map(|x| {
            let mut v = x.clone();
            reduce(&mut v, ambient.orders());
            v
        })
        .collect();
    let representatives = classes.iter().map(|c| ambient.cochain_of(c)).collect();
    Ok(ShaLattice { ambient: ambient.clone(), kernel, classes, representatives, restrictions })
}

/// `phi_*: H^i(G, M) -> H^i(G, N)` for an equivariant `phi` (`dim N x dim M`).
pub fn pushforward(
    m: &GLattice,
    n: &GLattice,
    phi: &Matrix<BigInt>,
    degree: usize,
    budget: &Budget,
) -> Result<InducedMap> {
    if m.group() != n.group() {
        return Err(Error::invalid("modules over different groups"));
    }
    if (phi.rows(), phi.cols()) != (n.dim(), m.dim()) {
        return Err(Error::invalid("map has the wrong dimensions"));
    }
    check_hom(m, n, phi, "M -> N")?;
    let source = cohomology_with_budget(m, degree, budget)?;
    let target = cohomology_with_budget(n, degree, budget)?;
    let cols = source
        .representatives()
        .iter()
        .map(|f| {
            let mut g = Cochain::zero(degree, f.group_order(), n.dim());
            for t in 0..f.num_tuples() {
                let tuple = f.tuple_of(t);
                let mut v = phi.mul_vec(f.get(&tuple));
                n.reduce(&mut v);
                g.set(&tuple, &v);
            }
            target.class_of(&g)
        })
        .collect::<Result<Vec<_>>>()?;
    let map = CohomologyMap::new(source.orders().to_vec(), target.orders().to_vec(), &cols);
    Ok(InducedMap { source, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    fn v4() -> Arc<GroupTable> {
        Arc::new(GroupTable::elementary_abelian_2(2))
    }

    #[test]
    fn restriction_examples() {
        let g = v4();
        let ig = GLattice::augmentation_kernel(g.clone(), &g.trivial_subgroup());
        let r = restriction_map(&ig, &g.whole(), 1, &b()).unwrap();
        assert!(r.map.is_identity());
        let r = restriction_map(&ig, &g.trivial_subgroup(), 1, &b()).unwrap();
        assert!(r.map.is_zero());
        for h in g.cyclic_subgroups().into_iter().filter(|h| h.order() == 2) {
            let r = restriction_map(&ig, &h, 1, &b()).unwrap();
            assert_eq!(*r.target.shape(), AbelianGroupShape::cyclic(2));
            assert!(r.map.is_surjective());
        }
    }

    #[test]
    fn sha_of_klein_augmentation_ideal() {
        let g = v4();
        let ig = GLattice::augmentation_kernel(g.clone(), &g.trivial_subgroup());
        let s = sha_lattice(&ig, 1, &g.cyclic_subgroups(), &b()).unwrap();
        assert_eq!(*s.shape(), AbelianGroupShape::cyclic(2));
        assert_eq!(s.classes, vec![vec![BigInt::from(2)]]);
        let mut fam = g.cyclic_subgroups();
        fam.push(g.whole());
        assert!(sha_lattice(&ig, 1, &fam, &b()).unwrap().shape().is_trivial());
        assert!(sha_lattice(&ig, 1, &[], &b()).is_err());
    }

    #[test]
    fn connecting_map_of_doubling() {
        let g = Arc::new(GroupTable::cyclic(2));
        let z = GLattice::trivial(g.clone(), 1);
        let z2 = GLattice::new(g.clone(), 0, vec![2], vec![SmallMatrix::identity(1); 2]).unwrap();
        let ses =
            ShortExactSequence::new(z.clone(), z.clone(), z2, Matrix::from_i64(&[&[2]]), Matrix::from_i64(&[&[1]]))
                .unwrap();
        let d = connecting_hom(&ses, 1, &b()).unwrap();
        assert!(d.map.is_injective().unwrap() && d.map.is_surjective());
        let bad = ShortExactSequence::new(
            z.clone(),
            z.clone(),
            GLattice::new(g, 0, vec![3], vec![SmallMatrix::identity(1); 2]).unwrap(),
            Matrix::from_i64(&[&[2]]),
            Matrix::from_i64(&[&[1]]),
        );
        assert!(matches!(bad, Err(Error::NotExact { .. })));
    }

    #[test]
    fn connecting_map_augmentation_sequence() {
        let g = v4();
        let t = g.trivial_subgroup();
        let ig = GLattice::augmentation_kernel(g.clone(), &t);
        let zg = GLattice::regular(g.clone());
        let z = GLattice::trivial(g.clone(), 1);
        // I_G basis e_j - e_0 into Z[G]; augmentation Z[G] -> Z
        let mut alpha = Matrix::zeros(4, 3);
        for j in 1..4 {
            alpha[(j, j - 1)] = BigInt::from(1);
            alpha[(0, j - 1)] = BigInt::from(-1);
        }
        let beta = Matrix::from_i64(&[&[1, 1, 1, 1]]);
        let ses = ShortExactSequence::new(ig, zg, z, alpha, beta).unwrap();
        let d = connecting_hom(&ses, 0, &b()).unwrap();
        assert_eq!(*d.source.shape(), AbelianGroupShape::free(1));
        assert_eq!(*d.target.shape(), AbelianGroupShape::cyclic(4));
        assert!(d.map.is_surjective());
        let ker = d.map.kernel().unwrap();
        assert_eq!(ker.generators(), &[vec![BigInt::from(4)]]);
    }

    #[test]
    fn shapiro_examples() {
        let g = Arc::new(GroupTable::cyclic(2));
        let t = g.trivial_subgroup();
        let (tt, _) = g.subgroup_table(&t);
        let z = GLattice::trivial(Arc::new(tt), 1);
        for i in 1..=2 {
            let w = shapiro(&g, &t, &z, i, &b()).unwrap();
            assert!(w.over_g.shape().is_trivial());
        }
        let zg = GLattice::trivial(g.clone(), 1);
        let (gt, _) = g.subgroup_table(&g.whole());
        let zg2 = GLattice::new(Arc::new(gt), 1, vec![], zg.actions().to_vec()).unwrap();
        let w = shapiro(&g, &g.whole(), &zg2, 2, &b()).unwrap();
        assert_eq!(*w.over_g.shape(), AbelianGroupShape::cyclic(2));
        assert!(w.forward.is_identity());
    }

    #[test]
    fn inflation_restriction_for_c4() {
        let g = Arc::new(GroupTable::cyclic(4));
        let m = GLattice::regular(g.clone());
        let n = g.subgroup(&[0, 2]).unwrap();
        let inf = inflation_map(&m, &n, 1, &b()).unwrap();
        assert!(inf.map.is_injective().unwrap());
    }
}
