//! Finite-order tests and bounded conjugacy search in `GL_d(Z)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lattice::kernel_basis;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::IntMatrix;

/// Order bound that decides finiteness for `d <= 4`: every finite-order
/// element of `GL_d(Z)` with `d <= 4` has order in {1,2,3,4,5,6,8,10,12}.
pub const ORDER_BOUND_DIM4: u32 = 12;

/// Smallest `k <= bound` with `A^k = I`, or `None` if there is none up to `bound`.
pub fn matrix_order(a: &IntMatrix, bound: u32) -> Result<Option<u32>> {
    if !a.is_square() {
        return Err(Error::invalid(format!("matrix_order needs a square matrix, got {}x{}", a.rows(), a.cols())));
    }
    let mut p = a.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Ok(Some(k));
        }
        p = &p * a;
    }
    Ok(None)
}

/// Why two (tuples of) matrices cannot be conjugate in `GL_d(Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    TraceDiffers {
        index: usize,
        left: BigInt,
        right: BigInt,
    },
    DeterminantDiffers {
        index: usize,
        left: BigInt,
        right: BigInt,
    },
    CharPolyDiffers {
        index: usize,
        left: Vec<BigInt>,
        right: Vec<BigInt>,
    },
    /// Conjugacy over `Z` implies conjugacy of the reductions in `GL_d(Z/m)`;
    /// an exhaustive search found no such mod-`m` conjugator.
    ModularReduction {
        modulus: u32,
    },
    /// The intertwiner lattice `{X : X A = B X}` is zero.
    NoIntertwiner,
}

impl Certificate {
    pub fn describe(&self) -> String {
        match self {
            Certificate::DimensionMismatch { left, right } => format!("dimensions differ ({left} vs {right})"),
            Certificate::TraceDiffers { index, left, right } => {
                format!("traces of element {index} differ ({left} vs {right})")
            }
            Certificate::DeterminantDiffers { index, left, right } => {
                format!("determinants of element {index} differ ({left} vs {right})")
            }
            Certificate::CharPolyDiffers { index, .. } => {
                format!("characteristic polynomials of element {index} differ")
            }
            Certificate::ModularReduction { modulus } => {
                format!("reductions mod {modulus} are not conjugate in GL_d(Z/{modulus})")
            }
            Certificate::NoIntertwiner => "no nonzero intertwiner exists".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugacy {
    /// `X` unimodular with `X * A_k = B_k * X` for every k.
    Conjugate(IntMatrix),
    NotConjugate(Certificate),
    /// The bounded search was exhausted and no certificate applies.
    Inconclusive {
        entry_bound: u32,
    },
}

impl Conjugacy {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Conjugacy::Conjugate(_))
    }
}

/// Cap on the number of lattice points examined per search.
const MAX_CANDIDATES: usize = 2_000_000;

/// Searches for unimodular `X` with `X * A = B * X`.
pub fn glz_conjugate_search(a: &IntMatrix, b: &IntMatrix, entry_bound: u32) -> Result<Conjugacy> {
    glz_simultaneous_conjugate_search(std::slice::from_ref(a), std::slice::from_ref(b), entry_bound)
}

/// Searches for one unimodular `X` with `X * A_k = B_k * X` for all k.
pub fn glz_simultaneous_conjugate_search(a: &[IntMatrix], b: &[IntMatrix], entry_bound: u32) -> Result<Conjugacy> {
    if a.len() != b.len() {
        return Err(Error::invalid("conjugacy search needs equally many matrices on both sides"));
    }
    for m in a.iter().chain(b) {
        if !m.is_square() {
            return Err(Error::invalid("conjugacy search needs square matrices"));
        }
    }
    let d = a.first().map_or(0, |m| m.rows());
    if let Some(m) = a.iter().chain(b).find(|m| m.rows() != d) {
        return Err(Error::invalid(format!("size mismatch: {}x{} vs {d}x{d}", m.rows(), m.cols())));
    }
    if a == b {
        return Ok(Conjugacy::Conjugate(Matrix::identity(d)));
    }
    if let Some(c) = invariant_certificate(a, b)? {
        return Ok(Conjugacy::NotConjugate(c));
    }
    let basis = intertwiner_basis(a, b);
    if basis.is_empty() {
        return Ok(Conjugacy::NotConjugate(Certificate::NoIntertwiner));
    }
    if let Some(x) = search_unimodular(&basis, d, entry_bound) {
        debug_assert!(a.iter().zip(b).all(|(ai, bi)| &x * ai == bi * &x));
        return Ok(Conjugacy::Conjugate(x));
    }
    for m in [2u32, 3, 4] {
        if let Some(false) = modular_conjugate(a, b, m) {
            return Ok(Conjugacy::NotConjugate(Certificate::ModularReduction { modulus: m }));
        }
    }
    Ok(Conjugacy::Inconclusive { entry_bound })
}

fn invariant_certificate(a: &[IntMatrix], b: &[IntMatrix]) -> Result<Option<Certificate>> {
    for (index, (x, y)) in a.iter().zip(b).enumerate() {
        let (tx, ty) = (x.trace()?, y.trace()?);
        if tx != ty {
            return Ok(Some(Certificate::TraceDiffers { index, left: tx, right: ty }));
        }
        let (dx, dy) = (x.determinant()?, y.determinant()?);
        if dx != dy {
            return Ok(Some(Certificate::DeterminantDiffers { index, left: dx, right: dy }));
        }
        let (cx, cy) = (x.char_poly()?, y.char_poly()?);
        if cx != cy {
            return Ok(Some(Certificate::CharPolyDiffers { index, left: cx, right: cy }));
        }
    }
    Ok(None)
}

/// Basis of the lattice `{X : X A_k = B_k X for all k}`, flattened row-major.
pub fn intertwiner_basis(a: &[IntMatrix], b: &[IntMatrix]) -> Vec<Vec<BigInt>> {
    let d = a.first().map_or(0, |m| m.rows());
    let n = d * d;
    let mut sys = Matrix::<BigInt>::zeros(a.len() * n, n);
    for (k, (ak, bk)) in a.iter().zip(b).enumerate() {
        for i in 0..d {
            for j in 0..d {
                let row = k * n + i * d + j;
                // (X A)_{ij} = sum_l X_{il} A_{lj}
                for l in 0..d {
                    sys[(row, i * d + l)] += &ak[(l, j)];
                    sys[(row, l * d + j)] -= &bk[(i, l)];
                }
            }
        }
    }
    let mut basis = kernel_basis(&sys);
    size_reduce(&mut basis);
    basis
}

fn dot(x: &[BigInt], y: &[BigInt]) -> BigInt {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Pairwise size reduction; shortens skewed kernel bases before enumeration.
fn size_reduce(basis: &mut [Vec<BigInt>]) {
    let k = basis.len();
    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < 100 {
        changed = false;
        rounds += 1;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let num = dot(&basis[i], &basis[j]);
                // round(num / nj)
                let q: BigInt = (BigInt::from(2) * &num + &nj).div_floor(&(BigInt::from(2) * &nj));
                if q.is_zero() {
                    continue;
                }
                let cand: Vec<BigInt> = basis[i].iter().zip(&basis[j]).map(|(x, y)| x - &q * y).collect();
                if dot(&cand, &cand) < dot(&basis[i], &basis[i]) {
                    basis[i] = cand;
                    changed = true;
                }
            }
        }
    }
    basis.sort_by_key(|v| dot(v, v));
}

fn search_unimodular(basis: &[Vec<BigInt>], d: usize, bound: u32) -> Option<IntMatrix> {
    let k = basis.len();
    let bound = bound as i64;
    let mut examined = 0usize;
    let mut coeffs = vec![0i64; k];
    for radius in 0..=bound {
        // every coefficient vector in [-radius, radius]^k with max-norm exactly radius
        coeffs.iter_mut().for_each(|c| *c = -radius);
        loop {
            if coeffs.iter().any(|c| c.abs() == radius) {
                examined += 1;
                if examined > MAX_CANDIDATES {
                    return None;
                }
                let mut flat = vec![BigInt::zero(); d * d];
                for (c, v) in coeffs.iter().zip(basis) {
                    if *c == 0 {
                        continue;
                    }
                    for (f, x) in flat.iter_mut().zip(v) {
                        *f += x * *c;
                    }
                }
                let x = Matrix::new(d, d, flat).expect("square");
                if x.determinant().map(|det| det.abs().is_one()).unwrap_or(false) {
                    return Some(x);
                }
            }
            // odometer step
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                if coeffs[pos] < radius {
                    coeffs[pos] += 1;
                    break;
                }
                coeffs[pos] = -radius;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
        if radius == 0 && k == 0 {
            break;
        }
    }
    None
}

/// Exhaustive search over `GL_d(Z/m)` for a common conjugator of the
/// reductions. `None` when the group is too large to enumerate.
pub fn modular_conjugate(a: &[IntMatrix], b: &[IntMatrix], m: u32) -> Option<bool> {
    let d = a.first().map_or(0, |x| x.rows());
    let space = (m as u64).checked_pow((d * d) as u32)?;
    if space > 300_000 {
        return None;
    }
    let red = |x: &IntMatrix| -> Vec<u32> {
        x.entries().iter().map(|v| v.mod_floor(&BigInt::from(m)).to_u32().unwrap()).collect()
    };
    let ra: Vec<Vec<u32>> = a.iter().map(red).collect();
    let rb: Vec<Vec<u32>> = b.iter().map(red).collect();
    let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let mut out = vec![0u32; d * d];
        for i in 0..d {
            for l in 0..d {
                let xv = x[i * d + l];
                if xv == 0 {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] = (out[i * d + j] + xv * y[l * d + j]) % m;
                }
            }
        }
        out
    };
    let mut y = vec![0u32; d * d];
    for code in 0..space {
        let mut c = code;
        for e in y.iter_mut() {
            *e = (c % m as u64) as u32;
            c /= m as u64;
        }
        if !unit_det_mod(&y, d, m) {
            continue;
        }
        if ra.iter().zip(&rb).all(|(ak, bk)| mul(&y, ak) == mul(bk, &y)) {
            return Some(true);
        }
    }
    Some(false)
}

fn unit_det_mod(y: &[u32], d: usize, m: u32) -> bool {
    let mat = Matrix::<i64>::new(d, d, y.iter().map(|&v| v as i64).collect()).expect("square");
    let det = mat.determinant().expect("small entries");
    det.rem_euclid(m as i64).gcd(&(m as i64)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn orders() {
        assert_eq!(matrix_order(&m(&[&[0, -1], &[1, 0]]), 12).unwrap(), Some(4));
        assert_eq!(matrix_order(&m(&[&[0, -1], &[1, -1]]), 12).unwrap(), Some(3));
        assert_eq!(matrix_order(&Matrix::identity(3), 12).unwrap(), Some(1));
        assert_eq!(matrix_order(&m(&[&[1, 1], &[0, 1]]), 12).unwrap(), None);
        assert!(matrix_order(&m(&[&[1, 1]]), 12).is_err());
    }

    #[test]
    fn identity_conjugates_to_itself() {
        let i = Matrix::identity(2);
        assert_eq!(glz_conjugate_search(&i, &i, 5).unwrap(), Conjugacy::Conjugate(Matrix::identity(2)));
    }

    #[test]
    fn reflections_split_by_mod_two() {
        let a = m(&[&[1, 0], &[0, -1]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            glz_conjugate_search(&a, &b, 10).unwrap(),
            Conjugacy::NotConjugate(Certificate::ModularReduction { modulus: 2 })
        );
    }

    #[test]
    fn inverse_rotations_are_conjugate() {
        let a = m(&[&[0, -1], &[1, 0]]);
        let b = m(&[&[0, 1], &[-1, 0]]);
        match glz_conjugate_search(&a, &b, 5).unwrap() {
            Conjugacy::Conjugate(x) => {
                assert!(x.is_unimodular());
                assert_eq!(&x * &a, &b * &x);
            }
            other => panic!("expected a conjugator, got {other:?}"),
        }
    }

    #[test]
    fn trace_certificate() {
        let a = m(&[&[0, -1], &[1, 0]]);
        let b = m(&[&[0, -1], &[1, -1]]);
        assert!(matches!(
            glz_conjugate_search(&a, &b, 5).unwrap(),
            Conjugacy::NotConjugate(Certificate::TraceDiffers { .. })
        ));
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(glz_conjugate_search(&Matrix::identity(2), &Matrix::identity(3), 5).is_err());
    }
}
