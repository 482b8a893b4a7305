//! Dense Gaussian elimination over GF(p).

use crate::field::PrimeField;

/// Rank of the matrix whose rows are `rows` (all of equal length).
pub fn rank(field: PrimeField, mut rows: Vec<Vec<u32>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
        for x in rows[rank][col..].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let neg = field.neg(c);
            for (x, &y) in row[col..].iter_mut().zip(&prow[col..]) {
                if y != 0 {
                    *x = field.add(*x, field.mul(neg, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(rank(f, vec![]), 0);
        assert_eq!(rank(f, vec![vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank(f, vec![vec![1, 2], vec![2, 1]]), 1); // second row = 2 * first mod 3
        assert_eq!(rank(f, vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]), 3);
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(rank(f2, vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]), 2);
    }
}
