//! Dense Gaussian elimination over the table fields.

use crate::galois::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(field: &Field, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(sel) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, sel);
        let inv = field.inv(rows[rank][col]);
        if inv != 1 {
            for x in rows[rank].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(factor, p));
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    pivots
}

pub(crate) fn rank(field: &Field, rows: &[Vec<u8>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Rank of a set of column vectors, each of length `dim`.
pub(crate) fn column_rank(field: &Field, dim: usize, columns: &[&[u8]]) -> usize {
    let mut rows: Vec<Vec<u8>> = (0..dim)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    if columns.is_empty() {
        return 0;
    }
    rref(field, &mut rows).len()
}

/// Inverse of the square matrix whose columns are `columns`, returned as a
/// row-major matrix. `None` if singular.
pub(crate) fn invert_columns(field: &Field, columns: &[Vec<u8>]) -> Option<Vec<Vec<u8>>> {
    let k = columns.len();
    let mut aug: Vec<Vec<u8>> = (0..k)
        .map(|i| {
            let mut row: Vec<u8> = columns.iter().map(|c| c[i]).collect();
            row.extend((0..k).map(|j| u8::from(i == j)));
            row
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.len() < k || pivots[k - 1] != k - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[k..].to_vec()).collect())
}

pub(crate) fn mat_vec(field: &Field, m: &[Vec<u8>], v: &[u8]) -> Vec<u8> {
    m.iter().map(|row| field.dot(row, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::field;

    #[test]
    fn rank_and_inverse() {
        let f = field(3).unwrap();
        let cols = vec![vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 2]];
        let inv = invert_columns(f, &cols).unwrap();
        for (j, c) in cols.iter().enumerate() {
            let e = mat_vec(f, &inv, c);
            for (i, &x) in e.iter().enumerate() {
                assert_eq!(x, u8::from(i == j));
            }
        }
        assert_eq!(rank(f, &[vec![1, 1], vec![2, 2]]), 1);
        assert!(invert_columns(f, &[vec![1, 1], vec![2, 2]]).is_none());
    }
}
