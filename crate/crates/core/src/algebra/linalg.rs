use num_traits::{One, Zero};

use super::{Poly, Rat, RatFunc};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Row echelon form in place, eliminating below each pivot only; returns the
/// pivot columns.
fn echelon(rows: &mut Vec<Vec<Rat>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, below) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut().filter(|row| !row[c].is_zero()) {
            let f = &row[c] / &pivot_row[c];
            for (v, p) in row.iter_mut().zip(pivot_row).skip(c) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn exact_nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    let pivots = echelon(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &p) in m.iter().zip(&pivots).rev() {
                let s: Rat = dot(&row[p + 1..], &v[p + 1..]);
                v[p] = -s / &row[p];
            }
            v
        })
        .collect()
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Basis of `{v : A v = 0}` for `A` given by rows with `ncols` columns.
///
/// Rows independent modulo a prime are solved exactly first; the remaining
/// rows then cut the candidate kernel down.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let Some(chosen) = super::modp::independent_rows(rows, ncols) else {
        return exact_nullspace(rows, ncols);
    };
    if chosen.len() == ncols {
        return Vec::new();
    }
    let sub: Vec<Vec<Rat>> = chosen.iter().map(|&i| rows[i].clone()).collect();
    let candidates = exact_nullspace(&sub, ncols);
    let residual: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| candidates.iter().map(|v| dot(r, v)).collect::<Vec<Rat>>())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    if residual.is_empty() {
        return candidates;
    }
    exact_nullspace(&residual, candidates.len())
        .iter()
        .map(|w| {
            (0..ncols)
                .map(|j| w.iter().zip(&candidates).map(|(c, v)| c * &v[j]).sum())
                .collect()
        })
        .collect()
}

pub fn rank(rows: &[Vec<Rat>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Kernel of a linear map into tuples of rational functions.
///
/// `columns[j]` is the image of the `j`-th unit vector; each image is a tuple
/// of rational functions of the same length. Returns a basis of the
/// coefficient vectors whose combination vanishes identically.
pub fn rational_kernel(columns: &[Vec<RatFunc>]) -> Vec<Vec<Rat>> {
    let ncols = columns.len();
    let Some(width) = columns.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows = Vec::new();
    for e in 0..width {
        let den = columns.iter().fold(Poly::one(), |acc, col| acc.lcm(col[e].denom()));
        let nums: Vec<Poly> = columns
            .iter()
            .map(|col| {
                let f = &col[e];
                f.numer() * &den.exact_div(f.denom()).expect("lcm is divisible")
            })
            .collect();
        let deg = nums.iter().filter_map(Poly::degree).max();
        if let Some(deg) = deg {
            for k in 0..=deg {
                rows.push(nums.iter().map(|p| p.coeff(k)).collect());
            }
        }
    }
    nullspace(&rows, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn row(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = vec![row(&[1, 2, 3]), row(&[2, 4, 6])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let dot: Rat = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(rank(&a, 3), 1);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let a = vec![row(&[1, 0]), row(&[1, 1])];
        assert!(nullspace(&a, 2).is_empty());
    }

    #[test]
    fn kernel_of_rational_map() {
        // c0·x + c1·x² + c2·(x - x²) = 0
        let x = RatFunc::x();
        let x2 = &x * &x;
        let cols = vec![vec![x.clone()], vec![x2.clone()], vec![&x - &x2]];
        let k = rational_kernel(&cols);
        assert_eq!(k, vec![row(&[-1, 1, 1])]);
    }
}
