use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Invariant factors of an integer matrix.
///
/// Returns the `min(rows, cols)` diagonal entries of the Smith normal form,
/// nonnegative and with `d_1 | d_2 | ...`; zeros come last.
pub fn smith_normal_form(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    assert!(matrix.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(a, steps);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }

            let mut clean = true;
            for i in t + 1..rows {
                let f = a[i][t].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for j in t..cols {
                        let v = &f * &a[t][j];
                        a[i][j] -= v;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let f = a[t][j].div_floor(&a[t][t]);
                if !f.is_zero() {
                    for i in t..rows {
                        let v = &f * &a[i][t];
                        a[i][j] -= v;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest; otherwise fold the offending row in
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
    }
    finish(a, steps)
}

fn finish(a: Vec<Vec<BigInt>>, steps: usize) -> Vec<BigInt> {
    (0..steps).map(|t| a[t][t].abs()).collect()
}
