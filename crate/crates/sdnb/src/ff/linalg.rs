//! Small dense linear algebra over F_p (entries `u64` in `[0,p)`):
//! rank, kernel bases, and exact linear solves. Deterministic pivoting
//! (first nonzero row, columns left to right) so downstream enumeration
//! orders are reproducible.

use crate::ff::intutil;

/// Row-reduce `mat` (rows of equal length) in place to reduced row-echelon
/// form; returns the list of pivot columns.
pub fn rref(p: u64, mat: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let mut sel = None;
        for i in r..rows {
            if mat[i][c] != 0 {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        mat.swap(r, sel);
        let inv = intutil::invmod_u64(mat[r][c], p).expect("pivot invertible");
        for x in mat[r].iter_mut() {
            *x = (*x * inv) % p;
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let factor = mat[i][c];
                for j in 0..cols {
                    let sub_val = (factor * mat[r][j]) % p;
                    mat[i][j] = (mat[i][j] + p - sub_val) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of the matrix given as rows.
pub fn rank(p: u64, rows: &[Vec<u64>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    rref(p, &mut m).len()
}

/// Kernel basis of the linear map x ↦ M·x (M given as rows; x a column
/// vector of length cols). Basis vectors are returned in a canonical
/// echelonized form: one vector per free column, ascending, with entry 1 at
/// its free column and 0 at every other free column.
pub fn kernel_basis(p: u64, mat: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut m: Vec<Vec<u64>> = mat.to_vec();
    let pivots = rref(p, &mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for fc in 0..cols {
        if pivot_set.contains(&fc) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[fc] = 1;
        for (ri, &pc) in pivots.iter().enumerate() {
            // row ri: x_pc + Σ_{free j} m[ri][j]·x_j = 0
            v[pc] = (p - m[ri][fc] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Solve Σ_i x_i·columns[i] = target over F_p. Returns None if inconsistent.
/// If the solution is not unique the deterministic RREF solution (free
/// variables set to 0) is returned.
pub fn solve_columns(p: u64, columns: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let n = columns.len();
    let rows = target.len();
    // augmented matrix [A | target] with A's columns = inputs
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            let mut row: Vec<u64> = (0..n).map(|c| columns[c][r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let pivots = rref(p, &mut m);
    if pivots.contains(&n) {
        return None; // pivot in the augmented column → inconsistent
    }
    let mut x = vec![0u64; n];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = m[ri][n];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let p = 3;
        let mat = vec![vec![1, 2, 0], vec![2, 4 % 3, 0], vec![0, 0, 0]];
        assert_eq!(rank(p, &mat), 1);
        let k = kernel_basis(p, &mat);
        assert_eq!(k.len(), 2);
        for v in &k {
            // M·v = 0
            for row in &mat {
                let s: u64 = row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % p;
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn solve_exact() {
        let p = 7;
        // columns of the 2×2 identity scaled
        let cols = vec![vec![2, 0], vec![0, 3]];
        let x = solve_columns(p, &cols, &[4, 6]).unwrap();
        assert_eq!(x, vec![2, 2]);
        assert!(solve_columns(p, &vec![vec![1, 2]], &[1, 1]).is_none());
    }
}
