use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Solves `A x = b` over Q when `A` has full column rank, returning `None`
/// if the system is inconsistent. Columns of `A` are given as vectors.
///
/// Used to write a homology class in a basis of `H_k(·; Q)` given by other
/// classes, all in free coordinates.
pub fn solve_in_span(columns: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = columns.len();
    let m = b.len();
    let mut rows: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut r: Vec<BigRational> =
                columns.iter().map(|c| BigRational::from_integer(c.get(i).cloned().unwrap_or_default())).collect();
            r.push(BigRational::from_integer(b[i].clone()));
            r
        })
        .collect();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&i| !rows[i][col].is_zero()) else { return None };
        rows.swap(row, p);
        let inv = BigRational::one() / rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..m {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=n {
                    let d = rows[row][j].clone() * f.clone();
                    rows[i][j] -= d;
                }
            }
        }
        row += 1;
    }
    if rows[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| rows[i][n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn solves_and_rejects() {
        let cols = vec![v(&[2, 0, 0]), v(&[0, 1, 1])];
        let x = solve_in_span(&cols, &v(&[1, 3, 3])).unwrap();
        assert_eq!(x, vec![BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into())]);
        assert!(solve_in_span(&cols, &v(&[0, 1, 2])).is_none());
        // dependent columns have no unique solution
        assert!(solve_in_span(&[v(&[1]), v(&[2])], &v(&[1])).is_none());
    }
}
