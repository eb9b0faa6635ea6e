//! Fixed lattice corpora shared by the acceptance run.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torilab::gcohom::{GLattice, GroupTable};
use torilab::glzfin::{close_group, inverse_unimodular, maximal_finite_subgroups, random_unimodular};
use torilab::zlattice::matrix_order;
use torilab::{IntMatrix, SmallMatrix};

pub const CORPUS_SEED: u64 = 0x70_72_69;

/// A lattice for `Z/m`, whose generator is group element 1.
#[derive(Debug, Clone)]
pub struct CyclicCase {
    pub name: String,
    pub m: usize,
    pub lattice: GLattice,
}

impl CyclicCase {
    /// Action of the generator.
    pub fn generator(&self) -> SmallMatrix {
        if self.m == 1 {
            SmallMatrix::identity(self.lattice.dim())
        } else {
            self.lattice.action(1).clone()
        }
    }
}

fn case(name: String, m: usize, lattice: GLattice) -> CyclicCase {
    CyclicCase { name, m, lattice }
}

fn from_generator(m: usize, a: &SmallMatrix) -> GLattice {
    let g = Arc::new(GroupTable::cyclic(m));
    let gens = if m == 1 { vec![] } else { vec![(1, a.clone())] };
    GLattice::from_generators(g, a.rows(), vec![], &gens).expect("order of the matrix divides m")
}

/// Non-identity finite-order matrices of the maximal finite subgroups in dimension `d`.
fn finite_order_pool(d: usize) -> Vec<IntMatrix> {
    let mut pool: Vec<IntMatrix> = Vec::new();
    for gens in maximal_finite_subgroups(d).expect("dimension at most 3") {
        let g = close_group(&gens, 100).expect("finite");
        pool.extend(g.elements().iter().filter(|x| !x.is_identity()).cloned());
    }
    pool.sort();
    pool.dedup();
    pool
}

/// The 50 cyclic cases: trivial, sign, permutation, augmentation and norm
/// quotient lattices for `m <= 6`, then 24 random conjugates of finite-order
/// matrices in dimensions 2 and 3.
pub fn cyclic_corpus() -> Vec<CyclicCase> {
    let mut out = Vec::new();
    for m in 1..=6 {
        let g = Arc::new(GroupTable::cyclic(m));
        out.push(case(format!("C{m} trivial"), m, GLattice::trivial(g.clone(), 1)));
        if m % 2 == 0 {
            out.push(case(format!("C{m} sign"), m, from_generator(m, &SmallMatrix::from_i64_rows(&[&[-1]]))));
        }
        for k in [2, 3, 4] {
            if m % k != 0 || m == 1 {
                continue;
            }
            let h = g.generate(&[k % m]);
            if k <= 3 {
                out.push(case(format!("C{m} Z[G/C{}]", m / k), m, GLattice::permutation(g.clone(), &h)));
            }
            out.push(case(format!("C{m} I[G/C{}]", m / k), m, GLattice::augmentation_kernel(g.clone(), &h)));
            out.push(case(format!("C{m} J[G/C{}]", m / k), m, GLattice::norm_quotient(g.clone(), &h)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let pools = [finite_order_pool(2), finite_order_pool(3)];
    let ms = [2, 3, 4, 6];
    let mut i = 0;
    while out.len() < 50 {
        let m = ms[i % ms.len()];
        let d = 2 + (i / ms.len()) % 2;
        i += 1;
        let candidates: Vec<&IntMatrix> = pools[d - 2]
            .iter()
            .filter(|x| matrix_order(x, 12).ok().flatten().is_some_and(|o| (m as u32).is_multiple_of(o)))
            .collect();
        let a = *candidates.choose(&mut rng).expect("some element of order dividing m");
        let x = random_unimodular(d, 3, &mut rng);
        let conj = &(&x * a) * &inverse_unimodular(&x).expect("unimodular");
        let small = conj.try_cast::<i64>().expect("small entries");
        out.push(case(format!("C{m} random rank {d} #{i}"), m, from_generator(m, &small)));
    }
    out
}

fn table_from_perms(perms: &[Vec<usize>]) -> GroupTable {
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let idx = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
    let table = perms.iter().map(|a| perms.iter().map(|b| idx(&compose(a, b))).collect()).collect();
    GroupTable::from_table(table).expect("a group")
}

fn closure(gens: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = gens[0].len();
    let mut all = vec![(0..n).collect::<Vec<_>>()];
    let mut i = 0;
    while i < all.len() {
        for g in gens {
            let p: Vec<usize> = g.iter().map(|&x| all[i][x]).collect();
            if !all.contains(&p) {
                all.push(p);
            }
        }
        i += 1;
    }
    all
}

pub fn alternating4() -> GroupTable {
    table_from_perms(&closure(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]))
}

/// Quaternions as signed permutations of `{1, i, j, k}` acting by left multiplication.
pub fn quaternion8() -> GroupTable {
    // points 0..8 encode +1,+i,+j,+k,-1,-i,-j,-k
    let neg = |x: usize| (x + 4) % 8;
    let left = |u: [usize; 4]| -> Vec<usize> { (0..8).map(|x| if x < 4 { u[x] } else { neg(u[x - 4]) }).collect() };
    // i * (1, i, j, k) = (i, -1, k, -j); j * (1, i, j, k) = (j, -k, -1, i)
    table_from_perms(&closure(&[left([1, 4, 3, 6]), left([2, 7, 4, 1])]))
}

/// `C3 x| C4` with the generator of order 4 inverting the 3-cycle.
pub fn dicyclic12() -> GroupTable {
    // on 7 points: a 3-cycle on {0,1,2}, and x swapping 1 <-> 2 together with a 4-cycle on {3,4,5,6}
    table_from_perms(&closure(&[vec![1, 2, 0, 3, 4, 5, 6], vec![0, 2, 1, 4, 5, 6, 3]]))
}

/// Non-cyclic groups of order at most 12.
pub fn noncyclic_groups() -> Vec<(&'static str, GroupTable)> {
    vec![
        ("V4", GroupTable::elementary_abelian_2(2)),
        ("S3", GroupTable::dihedral(3)),
        ("C2xC4", GroupTable::abelian(&[2, 4])),
        ("C2^3", GroupTable::elementary_abelian_2(3)),
        ("D4", GroupTable::dihedral(4)),
        ("Q8", quaternion8()),
        ("D5", GroupTable::dihedral(5)),
        ("D6", GroupTable::dihedral(6)),
        ("A4", alternating4()),
        ("C2xC6", GroupTable::abelian(&[2, 6])),
        ("Dic3", dicyclic12()),
    ]
}

/// Trivial, regular, and the permutation, augmentation and norm-quotient
/// lattices of every subgroup of index at most 4.
pub fn standard_lattices(name: &str, g: GroupTable) -> Vec<(String, GLattice)> {
    let g = Arc::new(g);
    let n = g.order();
    let mut out = vec![(format!("{name} trivial"), GLattice::trivial(g.clone(), 1))];
    out.push((format!("{name} regular"), GLattice::regular(g.clone())));
    for h in g.all_subgroups() {
        let index = n / h.order();
        if !(2..=4).contains(&index) {
            continue;
        }
        let tag = format!("{name} H{:?}", h.elements());
        out.push((format!("{tag} perm"), GLattice::permutation(g.clone(), &h)));
        out.push((format!("{tag} aug"), GLattice::augmentation_kernel(g.clone(), &h)));
        out.push((format!("{tag} norm"), GLattice::norm_quotient(g.clone(), &h)));
    }
    out
}
