//! Fraction-free integer linear algebra (Bareiss elimination).

/// Rank of an integer matrix given by rows.
pub(crate) fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for c in 0..cols {
                row[c] = pivot[col] * row[c] - factor * pivot[c];
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant of a square integer matrix.
pub(crate) fn det(matrix: &[Vec<i128>]) -> i128 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = matrix.to_vec();
    let mut sign = 1i128;
    let mut prev_pivot = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev_pivot;
            }
        }
        prev_pivot = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// A vector orthogonal to the `d - 1` rows of a `(d - 1) x d` matrix: the
/// signed maximal minors. Zero iff the rows are linearly dependent.
pub(crate) fn orthogonal_complement(rows: &[Vec<i128>]) -> Vec<i128> {
    let d = rows.len() + 1;
    (0..d)
        .map(|skip| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != skip)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let m = det(&minor);
            if skip % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Laplace expansion along the first row.
    fn det_laplace(m: &[Vec<i128>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| [&r[..c], &r[c + 1..]].concat())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det_laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn det_matches_laplace() {
        let mats = [
            vec![vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 5]],
            vec![
                vec![0, 2, -1, 3],
                vec![1, 0, 4, -2],
                vec![3, 1, 0, 1],
                vec![-1, 5, 2, 0],
            ],
        ];
        for m in &mats {
            assert_eq!(det(m), det_laplace(m));
        }
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 0, 1], vec![1, 0, 1]]), 2);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(
            rank(&[
                vec![1, -1, 0],
                vec![0, 1, -1],
                vec![1, 0, -1],
                vec![2, 1, -3]
            ]),
            2
        );
    }

    #[test]
    fn complement_is_orthogonal() {
        let rows = vec![vec![1, 2, 0, -1], vec![0, 1, 3, 2], vec![4, 0, 1, 1]];
        let n = orthogonal_complement(&rows);
        assert!(n.iter().any(|&x| x != 0));
        for r in &rows {
            assert_eq!(r.iter().zip(&n).map(|(a, b)| a * b).sum::<i128>(), 0);
        }
    }
}
