//! Small dense exact linear algebra over `F`.

use crate::field::Scalar;

/// Reduces `rows` in place to reduced row-echelon form and returns the pivot
/// columns. Zero rows end up at the bottom.
pub fn rref<const N: usize>(rows: &mut [[Scalar; N]]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..N {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = rows[r][col].inv().expect("pivot is nonzero");
        let pivot_row = rows[r].map(|x| x * inv);
        rows[r] = pivot_row;
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let k = rows[i][col];
                for j in 0..N {
                    rows[i][j] = rows[i][j] - k * pivot_row[j];
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank<const N: usize>(rows: &[[Scalar; N]]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{v : rows·v = 0}` given `rows` already in RREF with `pivots`.
/// One vector per free column, with a 1 in that column.
pub fn null_space<const N: usize>(rows: &[[Scalar; N]], pivots: &[usize]) -> Vec<[Scalar; N]> {
    let f = rows[0][0].field();
    (0..N)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = [f.zero(); N];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][free];
            }
            v
        })
        .collect()
}

/// `Σ uᵢ·vᵢ`.
pub fn dot<const N: usize>(u: &[Scalar; N], v: &[Scalar; N]) -> Scalar {
    let mut acc = u[0] * v[0];
    for i in 1..N {
        acc = acc + u[i] * v[i];
    }
    acc
}
