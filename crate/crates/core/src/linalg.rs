//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;

/// Row-major rational matrix.
pub type RatMatrix = Vec<Vec<Rational>>;

/// Scales each row by the lcm of its denominators, giving an integer matrix of equal rank.
fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = integer_rows(rows);
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Inverse by Gauss–Jordan elimination; `None` when singular.
pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "inverse needs a square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Matrix-vector product.
pub fn mat_vec(m: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn rank_of_small_matrices() {
        let m = vec![
            vec![int(1), int(2), int(3)],
            vec![int(2), int(4), int(6)],
            vec![rat(1, 2), int(0), int(1)],
        ];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
        let id: RatMatrix = (0..4)
            .map(|i| (0..4).map(|j| int((i == j) as i64)).collect())
            .collect();
        assert_eq!(rank(&id), 4);
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = vec![
            vec![int(2), int(1), rat(1, 3)],
            vec![int(0), int(-1), int(4)],
            vec![int(5), rat(2, 7), int(1)],
        ];
        let inv = inverse(&a).unwrap();
        for i in 0..3 {
            let col: Vec<Rational> = (0..3).map(|k| a[k][i].clone()).collect();
            let e = mat_vec(&inv, &col);
            for (j, v) in e.iter().enumerate() {
                assert_eq!(*v, int((i == j) as i64));
            }
        }
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert!(inverse(&singular).is_none());
    }
}
