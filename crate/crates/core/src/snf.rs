//! Smith normal form over the integers.
//!
//! The linear-system cohomology backend reduces everything it needs —
//! image sizes of maps between finite abelian groups, and solvability of
//! linear congruence systems — to invariant factors of small integer
//! matrices. Pivots are chosen by minimal absolute value to keep entry
//! growth down; all arithmetic is `i128`, which at these matrix sizes
//! leaves astronomical headroom (debug builds still carry overflow
//! checks).

use num_bigint::BigUint;

/// The decomposition `U * A * V = D` with `U`, `V` unimodular and `D`
/// diagonal, the diagonal entries positive and each dividing the next.
pub(crate) struct Smith {
    pub rank: usize,
    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub invariant_factors: Vec<i128>,
    /// `U`, a `rows x rows` unimodular matrix.
    pub row_transform: Vec<Vec<i128>>,
    /// `V`, a `cols x cols` unimodular matrix.
    pub col_transform: Vec<Vec<i128>>,
}

pub(crate) fn smith_normal_form(matrix: &[Vec<i128>]) -> Smith {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut a: Vec<Vec<i128>> = matrix.to_vec();
    debug_assert!(a.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Locate the smallest nonzero entry of the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);

        // Clear row and column t; each reduction can reintroduce entries,
        // so iterate until the cross is clean.
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = div_round(a[i][t], a[t][t]);
                    row_sub(&mut a, i, t, q);
                    row_sub(&mut u, i, t, q);
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        u.swap(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = div_round(a[t][j], a[t][t]);
                    col_sub(&mut a, j, t, q);
                    col_sub(&mut v, j, t, q);
                    if a[t][j] != 0 {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                        dirty = true;
                    }
                }
            }
            if !dirty && (t + 1..rows).all(|i| a[i][t] == 0) && (t + 1..cols).all(|j| a[t][j] == 0)
            {
                break;
            }
        }

        // Enforce the divisibility chain: if some trailing entry is not a
        // multiple of the pivot, fold its row in and redo this pivot.
        let mut redo = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if a[i][j] % a[t][t] != 0 {
                    row_add(&mut a, t, i);
                    row_add(&mut u, t, i);
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        if a[t][t] < 0 {
            for x in &mut a[t] {
                *x = -*x;
            }
            for x in &mut u[t] {
                *x = -*x;
            }
        }
        t += 1;
    }

    let invariant_factors: Vec<i128> = (0..t).map(|i| a[i][i]).collect();
    Smith {
        rank: t,
        invariant_factors,
        row_transform: u,
        col_transform: v,
    }
}

/// One integer solution `y` of `A y = t`, if the system is solvable.
pub(crate) fn solve(matrix: &[Vec<i128>], target: &[i128]) -> Option<Vec<i128>> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    debug_assert_eq!(target.len(), rows);
    let s = smith_normal_form(matrix);
    let ut: Vec<i128> = s
        .row_transform
        .iter()
        .map(|row| row.iter().zip(target).map(|(&u, &t)| u * t).sum())
        .collect();
    let mut z = vec![0i128; cols];
    for i in 0..rows {
        if i < s.rank {
            let d = s.invariant_factors[i];
            if ut[i] % d != 0 {
                return None;
            }
            z[i] = ut[i] / d;
        } else if ut[i] != 0 {
            return None;
        }
    }
    let y: Vec<i128> = (0..cols)
        .map(|r| (0..cols).map(|k| s.col_transform[r][k] * z[k]).sum())
        .collect();
    Some(y)
}

/// The index `[Z^rows : L]` of the lattice `L` spanned by the columns of
/// `matrix`. `None` when the columns do not span a finite-index lattice
/// (rank below the row count).
pub(crate) fn lattice_index(matrix: &[Vec<i128>]) -> Option<BigUint> {
    let rows = matrix.len();
    let s = smith_normal_form(matrix);
    if s.rank < rows {
        return None;
    }
    let mut index = BigUint::from(1u32);
    for d in &s.invariant_factors {
        index *= BigUint::from(d.unsigned_abs());
    }
    Some(index)
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m {
        row.swap(a, b);
    }
}

/// `row[i] -= q * row[t]`.
fn row_sub(m: &mut [Vec<i128>], i: usize, t: usize, q: i128) {
    for j in 0..m[i].len() {
        let s = m[t][j];
        m[i][j] -= q * s;
    }
}

/// `row[t] += row[i]`.
fn row_add(m: &mut [Vec<i128>], t: usize, i: usize) {
    for j in 0..m[t].len() {
        let s = m[i][j];
        m[t][j] += s;
    }
}

/// `col[j] -= q * col[t]`.
fn col_sub(m: &mut [Vec<i128>], j: usize, t: usize, q: i128) {
    for row in m {
        let s = row[t];
        row[j] -= q * s;
    }
}

/// Division rounded to nearest (ties toward zero), which keeps remainders
/// at most half the divisor during elimination.
fn div_round(a: i128, b: i128) -> i128 {
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (r < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}
