/// Rank of a dense matrix over `F_p` (`p < 2^32`), rows given as residues.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        for v in rows[rank][col..].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Whether a sparse integer matrix has rank at least `target` over `F_p`,
/// by row-by-row sparse elimination that stops once `target` pivots exist.
pub fn sparse_rank_at_least(rows: &[Vec<(usize, i64)>], ncols: usize, target: usize, p: u64) -> bool {
    if target == 0 {
        return true;
    }
    if target > ncols {
        return false;
    }
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut r: Vec<(usize, u64)> =
            row.iter().map(|&(j, v)| (j, v.rem_euclid(p as i64) as u64)).filter(|&(_, v)| v != 0).collect();
        r.sort_unstable_by_key(|&(j, _)| j);
        while let Some(&(lead, f)) = r.first() {
            match &pivots[lead] {
                Some(piv) => r = axpy(&r, piv, p - f, p),
                None => {
                    let inv = pow_mod(f, p - 2, p);
                    for e in r.iter_mut() {
                        e.1 = (e.1 as u128 * inv as u128 % p as u128) as u64;
                    }
                    pivots[lead] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
        if rank >= target {
            return true;
        }
    }
    false
}

/// `x + c * y` on sorted sparse vectors.
fn axpy(x: &[(usize, u64)], y: &[(usize, u64)], c: u64, p: u64) -> Vec<(usize, u64)> {
    let mul = |v: u64| (v as u128 * c as u128 % p as u128) as u64;
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, mul(y[j].1)));
            j += 1;
        } else {
            let v = (x[i].1 + mul(y[j].1)) % p;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![2, 4]], 7), 1);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![3, 4]], 7), 2);
        assert_eq!(rank_mod_p(vec![vec![1, 2], vec![3, 4]], 2), 1);
    }

    #[test]
    fn sparse_matches_dense() {
        let rows = vec![vec![(0, 1), (2, 2)], vec![(0, 2), (2, 4)], vec![(1, 3)], vec![(0, 1), (1, 1), (2, 2)]];
        let dense: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![0; 3];
                for &(j, v) in r {
                    d[j] = v as u64;
                }
                d
            })
            .collect();
        assert_eq!(rank_mod_p(dense, 7), 2);
        assert!(sparse_rank_at_least(&rows, 3, 2, 7));
        assert!(!sparse_rank_at_least(&rows, 3, 3, 7));
    }
}
