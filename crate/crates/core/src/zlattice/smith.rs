//! Smith normal form with unimodular transforms.
//!
//! For an `m x n` matrix `A` we compute unimodular `U` (`m x m`) and `V`
//! (`n x n`) with `U * A * V = D`, `D` diagonal, nonnegative, with
//! `d_1 | d_2 | ... | d_r` and zeros last. The inverses of both transforms are
//! tracked alongside so that `A = U^-1 * D * V^-1` can be reconstructed without
//! another inversion.
//!
//! Pivoting always takes the entry of smallest nonzero absolute value in the
//! active block, lowest row first, then lowest column. The output is therefore
//! a deterministic function of the input.

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::Matrix;
use crate::scalar::{IntScalar, Overflow};

/// Which transforms to accumulate. Skipping them makes rank and invariant
/// factor queries much cheaper on tall boundary matrices.
#[derive(Debug, Clone, Copy)]
pub struct SmithOptions {
    pub left: bool,
    pub right: bool,
}

impl SmithOptions {
    pub const FULL: Self = Self { left: true, right: true };
    pub const LEFT: Self = Self { left: true, right: false };
    pub const RIGHT: Self = Self { left: false, right: true };
    pub const NONE: Self = Self { left: false, right: false };
}

#[derive(Debug, Clone)]
pub struct SmithDecomposition<T> {
    pub source_rows: usize,
    pub source_cols: usize,
    /// Diagonal entries `d_1, ..., d_min(m,n)`, nonnegative, zeros last.
    pub diagonal: Vec<T>,
    pub rank: usize,
    pub u: Option<Matrix<T>>,
    pub u_inv: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
    pub v_inv: Option<Matrix<T>>,
}

impl<T: IntScalar> SmithDecomposition<T> {
    /// The full `m x n` diagonal matrix `D`.
    pub fn d(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.source_rows, self.source_cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d[(i, i)] = v.clone();
        }
        d
    }

    pub fn u(&self) -> &Matrix<T> {
        self.u.as_ref().expect("left transform was not tracked")
    }

    pub fn u_inv(&self) -> &Matrix<T> {
        self.u_inv.as_ref().expect("left transform was not tracked")
    }

    pub fn v(&self) -> &Matrix<T> {
        self.v.as_ref().expect("right transform was not tracked")
    }

    pub fn v_inv(&self) -> &Matrix<T> {
        self.v_inv.as_ref().expect("right transform was not tracked")
    }

    /// Nonzero diagonal entries satisfy the divisibility chain and zeros trail.
    pub fn chain_holds(&self) -> bool {
        let nz = &self.diagonal[..self.rank];
        nz.iter().all(|d| d.is_positive())
            && nz.windows(2).all(|w| (w[1].clone() % w[0].clone()).is_zero())
            && self.diagonal[self.rank..].iter().all(Zero::is_zero)
    }

    /// Basis of the right kernel: the columns of `V` past the rank.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let v = self.v();
        (self.rank..self.source_cols).map(|j| v.column(j)).collect()
    }

    pub fn to_big(&self) -> SmithDecomposition<BigInt> {
        SmithDecomposition {
            source_rows: self.source_rows,
            source_cols: self.source_cols,
            diagonal: self.diagonal.iter().map(IntScalar::to_bigint).collect(),
            rank: self.rank,
            u: self.u.as_ref().map(Matrix::to_big),
            u_inv: self.u_inv.as_ref().map(Matrix::to_big),
            v: self.v.as_ref().map(Matrix::to_big),
            v_inv: self.v_inv.as_ref().map(Matrix::to_big),
        }
    }
}

struct Work<T> {
    a: Matrix<T>,
    u: Option<Matrix<T>>,
    u_inv: Option<Matrix<T>>,
    v: Option<Matrix<T>>,
    v_inv: Option<Matrix<T>>,
}

impl<T: IntScalar> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// `row[dst] -= q * row[src]`
    fn row_op(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        self.a.row_sub_mul(dst, src, q)?;
        if let Some(u) = &mut self.u {
            u.row_sub_mul(dst, src, q)?;
        }
        if let Some(ui) = &mut self.u_inv {
            // inverse operation acts on columns: col[src] += q * col[dst]
            ui.col_sub_mul(src, dst, &-q.clone())?;
        }
        Ok(())
    }

    /// `col[dst] -= q * col[src]`
    fn col_op(&mut self, dst: usize, src: usize, q: &T) -> Result<(), Overflow> {
        self.a.col_sub_mul(dst, src, q)?;
        if let Some(v) = &mut self.v {
            v.col_sub_mul(dst, src, q)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_sub_mul(src, dst, &-q.clone())?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }
}

/// Smith normal form over any [`IntScalar`]; fails only on machine-integer overflow.
pub fn smith_generic<T: IntScalar>(a: &Matrix<T>, opts: SmithOptions) -> Result<SmithDecomposition<T>, Overflow> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: opts.left.then(|| Matrix::identity(m)),
        u_inv: opts.left.then(|| Matrix::identity(m)),
        v: opts.right.then(|| Matrix::identity(n)),
        v_inv: opts.right.then(|| Matrix::identity(n)),
    };
    let k = m.min(n);
    let mut rank = 0;
    for t in 0..k {
        let Some((pi, pj)) = smallest_in_block(&w.a, t, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            // column t below the pivot
            for i in t + 1..m {
                if w.a[(i, t)].is_zero() {
                    continue;
                }
                let q = w.a[(i, t)].clone() / w.a[(t, t)].clone();
                if !q.is_zero() {
                    w.row_op(i, t, &q)?;
                }
                if !w.a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let i = smallest_in_col(&w.a, t, t);
                w.swap_rows(t, i);
                continue;
            }
            // row t right of the pivot
            for j in t + 1..n {
                if w.a[(t, j)].is_zero() {
                    continue;
                }
                let q = w.a[(t, j)].clone() / w.a[(t, t)].clone();
                if !q.is_zero() {
                    w.col_op(j, t, &q)?;
                }
                if !w.a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let j = smallest_in_row(&w.a, t, t);
                w.swap_cols(t, j);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = w.a[(t, t)].clone();
            if !p.abs().is_one() {
                if let Some(i) = non_divisible_row(&w.a, t, &p) {
                    // row[t] += row[i]
                    w.row_op(t, i, &-T::one())?;
                    continue;
                }
            }
            break;
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        rank += 1;
    }
    let diagonal = (0..k).map(|i| w.a[(i, i)].clone()).collect();
    Ok(SmithDecomposition {
        source_rows: m,
        source_cols: n,
        diagonal,
        rank,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    })
}

fn smallest_in_block<T: IntScalar>(a: &Matrix<T>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(T, usize, usize)> = None;
    for i in r0..a.rows() {
        for j in c0..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(b, _, _)| av < *b) {
                if av.is_one() {
                    return Some((i, j));
                }
                best = Some((av, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn smallest_in_col<T: IntScalar>(a: &Matrix<T>, r0: usize, c: usize) -> usize {
    (r0..a.rows())
        .filter(|&i| !a[(i, c)].is_zero())
        .min_by(|&x, &y| a[(x, c)].abs().cmp(&a[(y, c)].abs()).then(x.cmp(&y)))
        .expect("column has a nonzero entry")
}

fn smallest_in_row<T: IntScalar>(a: &Matrix<T>, r: usize, c0: usize) -> usize {
    (c0..a.cols())
        .filter(|&j| !a[(r, j)].is_zero())
        .min_by(|&x, &y| a[(r, x)].abs().cmp(&a[(r, y)].abs()).then(x.cmp(&y)))
        .expect("row has a nonzero entry")
}

fn non_divisible_row<T: IntScalar>(a: &Matrix<T>, t: usize, p: &T) -> Option<usize> {
    (t + 1..a.rows()).find(|&i| (t + 1..a.cols()).any(|j| !(a[(i, j)].clone() % p.clone()).is_zero()))
}

/// Smith normal form of an arbitrary-precision matrix.
///
/// The elimination first runs on `i64` with checked arithmetic and falls back
/// to arbitrary precision if any intermediate value would overflow, so the
/// result is always exact.
pub fn smith_normal_form(a: &Matrix<BigInt>) -> SmithDecomposition<BigInt> {
    smith_with(a, SmithOptions::FULL)
}

pub fn smith_with(a: &Matrix<BigInt>, opts: SmithOptions) -> SmithDecomposition<BigInt> {
    if let Ok(small) = a.try_cast::<i64>() {
        if let Ok(s) = smith_generic(&small, opts) {
            return s.to_big();
        }
    }
    smith_generic(a, opts).expect("arbitrary precision cannot overflow")
}

/// Same as [`smith_with`] for matrices assembled with machine integers.
pub fn smith_i64(a: &Matrix<i64>, opts: SmithOptions) -> SmithDecomposition<BigInt> {
    match smith_generic(a, opts) {
        Ok(s) => s.to_big(),
        Err(Overflow) => smith_generic(&a.to_big(), opts).expect("arbitrary precision cannot overflow"),
    }
}
