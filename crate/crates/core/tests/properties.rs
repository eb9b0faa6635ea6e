use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use torilab::artinschreier::{canonical_reduction, reduce_with_witness, wp};
use torilab::classsets::{picard_open_p1, units_open_p1, OpenCurve};
use torilab::fpoly::{FpPoly, RatFunc};
use torilab::gcohom::{cohomology, cyclic_cohomology_shape, GLattice, GroupTable};
use torilab::places::{ord, support, FieldElement, GlobalFieldModel, Place};
use torilab::residues::{Factored, SymbolClass, TameContext};
use torilab::torus::TorusDescriptor;
use torilab::zlattice::{cokernel_shape, rank_mod_p, smith_generic, sparse_rank_at_least, Matrix, SmithOptions};
use torilab::{IntMatrix, IntScalar};

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<i64>> {
    prop::collection::vec(-20i64..=20, rows * cols).prop_map(move |d| Matrix::new(rows, cols, d).unwrap())
}

fn poly(p: u64, max_len: usize) -> impl Strategy<Value = FpPoly> {
    prop::collection::vec(0..p, 0..=max_len).prop_map(move |c| FpPoly::new(p, c))
}

fn nonzero_poly(p: u64, max_len: usize) -> impl Strategy<Value = FpPoly> {
    poly(p, max_len).prop_filter("nonzero", |f| !f.is_zero())
}

fn diagonal_as_big<T: IntScalar>(a: &Matrix<i64>) -> Vec<BigInt> {
    let s = smith_generic(&a.map(|x| T::from_i64(*x).unwrap()), SmithOptions::FULL).unwrap();
    assert!(s.chain_holds());
    let d = &(&s.u().clone() * &a.map(|x| T::from_i64(*x).unwrap())) * s.v();
    assert_eq!(d, s.d());
    s.diagonal.iter().map(IntScalar::to_bigint).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_agrees_across_scalars(a in small_matrix(3, 4)) {
        let d64 = diagonal_as_big::<i64>(&a);
        prop_assert_eq!(&d64, &diagonal_as_big::<i128>(&a));
        prop_assert_eq!(&d64, &diagonal_as_big::<BigInt>(&a));
    }

    #[test]
    fn sparse_rank_is_sharp(a in small_matrix(5, 6)) {
        let p = 7u64;
        let dense: Vec<Vec<u64>> =
            (0..5).map(|i| a.row(i).iter().map(|x| x.rem_euclid(p as i64) as u64).collect()).collect();
        let r = rank_mod_p(dense, p);
        let sparse: Vec<Vec<(usize, i64)>> = (0..5)
            .map(|i| a.row(i).iter().enumerate().filter(|(_, x)| **x != 0).map(|(j, x)| (j, *x)).collect())
            .collect();
        prop_assert!(sparse_rank_at_least(&sparse, 6, r, p));
        prop_assert!(!sparse_rank_at_least(&sparse, 6, r + 1, p));
    }

    #[test]
    fn cyclic_cohomology_matches_bar_complex(m in 2usize..=6, k in 1usize..=3, kind in 0usize..3, degree in 1usize..=3) {
        let g = Arc::new(GroupTable::cyclic(m));
        let h = g.generate(&[k % m]);
        let lattice = match kind {
            0 => GLattice::permutation(g.clone(), &h),
            1 => GLattice::augmentation_kernel(g.clone(), &h),
            _ => GLattice::norm_quotient(g.clone(), &h),
        };
        let shape = cohomology(&lattice, degree).unwrap().shape().clone();
        prop_assert!(shape.annihilated_by(&BigInt::from(m)));
        prop_assert_eq!(shape, cyclic_cohomology_shape(lattice.action(1), m, degree).unwrap());
    }
}

fn dihedral_torus(kind: usize, pick: usize) -> TorusDescriptor {
    let g = Arc::new(GroupTable::dihedral(4));
    let subs: Vec<_> = g.all_subgroups().into_iter().filter(|h| h.order() < g.order()).collect();
    let h = &subs[pick % subs.len()];
    match kind {
        0 => TorusDescriptor::split(g, 1 + pick % 2),
        1 => TorusDescriptor::restriction(g, h).unwrap(),
        _ => TorusDescriptor::norm_one(g, h).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_is_an_involution(kind in 0usize..3, pick in 0usize..10) {
        let t = dihedral_torus(kind, pick);
        let back = t.dual().dual();
        prop_assert_eq!(back.characters(), t.characters());
    }

    #[test]
    fn torsion_has_order_n_to_the_dimension(kind in 0usize..3, pick in 0usize..10, n in 2i64..=12) {
        let t = dihedral_torus(kind, pick);
        let tn = t.torsion_module(n).unwrap();
        prop_assert_eq!(tn.free_rank(), 0);
        prop_assert_eq!(tn.moduli().len(), t.dimension());
        prop_assert!(tn.moduli().iter().all(|&q| q == n));
    }

    #[test]
    fn good_reduction_passes_to_smaller_inertia(kind in 0usize..3, pick in 0usize..10) {
        let t = dihedral_torus(kind, pick);
        let subs = t.group().all_subgroups();
        for big in &subs {
            if !t.good_reduction_at(big).unwrap() {
                continue;
            }
            for small in subs.iter().filter(|s| s.is_subset_of(big)) {
                prop_assert!(t.good_reduction_at(small).unwrap());
            }
        }
    }

    #[test]
    fn rational_orders_rebuild_the_number(num in 1i64..=1_000_000, den in 1i64..=1_000_000, neg in any::<bool>()) {
        let q = FieldElement::Rational { num: BigInt::from(if neg { -num } else { num }), den: BigInt::from(den) };
        let model = GlobalFieldModel::Rationals;
        let (mut top, mut bottom) = (BigInt::from(1), BigInt::from(1));
        for v in support(&model, &q).unwrap() {
            let Place::Prime(p) = v else { unreachable!() };
            let e = ord(&model, &q, &v).unwrap();
            prop_assert_ne!(e, 0);
            if e > 0 { top *= BigInt::from(p).pow(e as u32) } else { bottom *= BigInt::from(p).pow((-e) as u32) }
        }
        let (n, d) = (BigInt::from(num), BigInt::from(den));
        prop_assert_eq!(top * &d, bottom * &n);
        let FieldElement::Rational { num: signed, .. } = q else { unreachable!() };
        prop_assert!(signed.abs() == n);
    }

    #[test]
    fn function_field_degree_formula(a in nonzero_poly(3, 6), b in nonzero_poly(3, 6)) {
        let f = FieldElement::Function(RatFunc::new(a, b).unwrap());
        let model = GlobalFieldModel::function_field(3).unwrap();
        let mut total = 0i64;
        for v in support(&model, &f).unwrap() {
            let e = ord(&model, &f, &v).unwrap();
            prop_assert_ne!(e, 0);
            total += e * v.degree() as i64;
        }
        prop_assert_eq!(total, 0);
        for v in model.places_up_to(2) {
            if !support(&model, &f).unwrap().contains(&v) {
                prop_assert_eq!(ord(&model, &f, &v).unwrap(), 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn artin_schreier_reduction(p in prop::sample::select(vec![2u64, 3, 5]), seed in prop::collection::vec(0u64..5, 0..=9), other in prop::collection::vec(0u64..5, 0..=9), g in prop::collection::vec(0u64..5, 0..=4)) {
        let a = FpPoly::new(p, seed);
        let b = FpPoly::new(p, other);
        let g = FpPoly::new(p, g);
        let (r, w) = reduce_with_witness(&a);
        prop_assert_eq!(&(&r + &wp(&w)), &a);
        let ca = canonical_reduction(&a);
        prop_assert_eq!(canonical_reduction(&ca), ca.clone());
        let cb = canonical_reduction(&b);
        prop_assert_eq!(canonical_reduction(&(&a + &b)), canonical_reduction(&(&ca + &cb)));
        prop_assert!(canonical_reduction(&wp(&g)).is_zero());
        prop_assert_eq!(canonical_reduction(&(&a + &wp(&g))), ca);
    }

    #[test]
    fn tame_symbol_is_bilinear_and_steinberg(a in nonzero_poly(5, 4), b in nonzero_poly(5, 4), c in nonzero_poly(5, 4)) {
        let n = 2;
        let (fa, fb, fc) = (Factored::from_poly(&a).unwrap(), Factored::from_poly(&b).unwrap(), Factored::from_poly(&c).unwrap());
        let ab = SymbolClass::new(fa.mul(&fb), fc.clone(), n).unwrap();
        let (sa, sb) = (SymbolClass::new(fa.clone(), fc.clone(), n).unwrap(), SymbolClass::new(fb, fc, n).unwrap());
        let mut ctx = TameContext::new();
        for v in ab.joint_support().into_iter().chain(sa.joint_support()).chain(sb.joint_support()) {
            let (x, y, z) = (ctx.tame(&ab, &v).unwrap(), ctx.tame(&sa, &v).unwrap(), ctx.tame(&sb, &v).unwrap());
            prop_assert_eq!(x.value, (y.value + z.value) % x.modulus);
        }
        let one_minus = &FpPoly::one(5) - &a;
        if !one_minus.is_zero() && !a.is_constant() {
            let s = SymbolClass::new(fa, Factored::from_poly(&one_minus).unwrap(), n).unwrap();
            for v in s.joint_support() {
                prop_assert!(ctx.tame(&s, &v).unwrap().is_trivial());
            }
        }
    }
}

fn removed_places(p: u64, picks: &[usize], infinity: bool) -> Vec<Place> {
    let mut pool: Vec<Place> = (1..=2).flat_map(|k| FpPoly::irreducibles_of_degree(p, k)).map(Place::Poly).collect();
    let mut out = Vec::new();
    for &i in picks {
        if pool.is_empty() {
            break;
        }
        out.push(pool.remove(i % pool.len()));
    }
    if infinity {
        out.push(Place::Infinity);
    }
    out.truncate(4);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn units_fill_the_degree_zero_divisors(p in prop::sample::select(vec![2u64, 3]), picks in prop::collection::vec(0usize..20, 0..=4), infinity in any::<bool>()) {
        let removed = removed_places(p, &picks, infinity);
        prop_assume!(!removed.is_empty());
        let curve = OpenCurve::new(p, removed.clone()).unwrap();
        let units = units_open_p1(&curve).unwrap();
        prop_assert_eq!(units.free_rank, removed.len() - 1);
        prop_assert_eq!(units.torsion_order, p - 1);
        let rows = units.divisor_matrix(&curve);
        for row in &rows {
            let weighted: i64 = row.iter().zip(curve.removed()).map(|(e, v)| e * v.degree() as i64).sum();
            prop_assert_eq!(weighted, 0);
        }
        let columns: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&e| BigInt::from(e)).collect()).collect();
        let image = IntMatrix::from_columns(removed.len(), &columns);
        let coker = cokernel_shape(&image);
        prop_assert_eq!(coker.free_rank(), 1);
        prop_assert!(coker.invariant_factors().is_empty());
        let gcd = removed.iter().map(Place::degree).fold(0, num_integer::gcd);
        prop_assert_eq!(picard_open_p1(&curve).shape.order(), Some(BigInt::from(gcd)));
    }
}
