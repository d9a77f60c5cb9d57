//! Small exact linear algebra over `i64` and `Rational64`.
//!
//! Everything here operates on tiny matrices (dimension at most 8), so the
//! algorithms are the textbook ones with no attention paid to fill-in.

use num_rational::Rational64;
use num_traits::Zero;

pub(crate) type IntMatrix = Vec<Vec<i64>>;

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Z-basis (in row echelon form) of the lattice spanned by `rows`.
pub(crate) fn row_basis(mut rows: IntMatrix) -> IntMatrix {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut pivot_row = 0;
    for col in 0..ncols {
        loop {
            // smallest nonzero entry at or below pivot_row moves to pivot_row
            let best = (pivot_row..rows.len())
                .filter(|&i| rows[i][col] != 0)
                .min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let p = rows[pivot_row][col];
            let mut clean = true;
            for i in pivot_row + 1..rows.len() {
                let q = rows[i][col].div_euclid(p);
                if q != 0 {
                    let prow = rows[pivot_row].clone();
                    for (x, y) in rows[i].iter_mut().zip(&prow) {
                        *x -= q * y;
                    }
                }
                if rows[i][col] != 0 {
                    clean = false;
                }
            }
            if clean {
                if rows[pivot_row][col] < 0 {
                    rows[pivot_row].iter_mut().for_each(|x| *x = -*x);
                }
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows
}

/// Solves `a x = b` for square nonsingular `a`; `None` if singular.
pub(crate) fn solve_rational(a: &[Vec<Rational64>], b: &[Rational64]) -> Option<Vec<Rational64>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        m[col].iter_mut().for_each(|x| *x /= p);
        for i in 0..n {
            if i != col && !m[i][col].is_zero() {
                let f = m[i][col];
                let prow = m[col].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

pub(crate) fn invert_rational(a: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational64> = (0..n)
            .map(|i| if i == j { Rational64::from(1) } else { Rational64::zero() })
            .collect();
        cols.push(solve_rational(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect())
}

pub(crate) fn to_integer(v: &[Rational64]) -> Option<Vec<i64>> {
    v.iter()
        .map(|q| q.is_integer().then(|| q.to_integer()))
        .collect()
}

/// Presentation of `Z^m / span(columns)` as a product of cyclic groups,
/// read off from a Smith normal form `U A V = D`.
#[derive(Clone, Debug)]
pub(crate) struct SmithQuotient {
    u: IntMatrix,
    u_inv: IntMatrix,
    /// `(row of U, modulus)`; modulus 0 marks a free factor.
    factors: Vec<(usize, i64)>,
}

impl SmithQuotient {
    /// `columns` are the generators of the sublattice, each of length `m`.
    pub(crate) fn new(m: usize, columns: &[Vec<i64>]) -> Self {
        let r = columns.len();
        let mut a: IntMatrix = (0..m).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        let mut u = identity(m);
        let mut u_inv = identity(m);

        let row_axpy = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, q: i64| {
            // row_dst -= q * row_src
            for k in 0..a[0].len() {
                a[dst][k] -= q * a[src][k];
            }
            for k in 0..m {
                u[dst][k] -= q * u[src][k];
            }
            for row in u_inv.iter_mut() {
                row[src] += q * row[dst];
            }
        };

        let mut rank = 0;
        for t in 0..m.min(r) {
            loop {
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..r {
                        if a[i][j] != 0
                            && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { break };
                a.swap(t, bi);
                u.swap(t, bi);
                for row in u_inv.iter_mut() {
                    row.swap(t, bi);
                }
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                let p = a[t][t];
                let mut clean = true;
                for i in t + 1..m {
                    let q = a[i][t].div_euclid(p);
                    if q != 0 {
                        row_axpy(&mut a, &mut u, &mut u_inv, i, t, q);
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..r {
                    let q = a[t][j].div_euclid(p);
                    if q != 0 {
                        for row in a.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    clean &= a[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                let bad_row = (t + 1..m).find(|&i| (t + 1..r).any(|j| a[i][j] % p != 0));
                if let Some(i) = bad_row {
                    // row_t += row_i
                    row_axpy(&mut a, &mut u, &mut u_inv, t, i, -1);
                    continue;
                }
                if p < 0 {
                    a[t].iter_mut().for_each(|x| *x = -*x);
                    u[t].iter_mut().for_each(|x| *x = -*x);
                    for row in u_inv.iter_mut() {
                        row[t] = -row[t];
                    }
                }
                rank = t + 1;
                break;
            }
            if rank != t + 1 {
                break;
            }
        }

        let mut factors = Vec::new();
        for t in 0..rank {
            if a[t][t] != 1 {
                factors.push((t, a[t][t]));
            }
        }
        for t in rank..m {
            // free factor: orient so the first nonzero entry is positive
            if u[t].iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                u[t].iter_mut().for_each(|x| *x = -*x);
                for row in u_inv.iter_mut() {
                    row[t] = -row[t];
                }
            }
            factors.push((t, 0));
        }
        SmithQuotient { u, u_inv, factors }
    }

    /// Moduli of the cyclic factors; 0 means a copy of Z.
    pub(crate) fn moduli(&self) -> Vec<i64> {
        self.factors.iter().map(|&(_, d)| d).collect()
    }

    pub(crate) fn label(&self, v: &[i64]) -> Vec<i64> {
        self.factors
            .iter()
            .map(|&(t, d)| {
                let x = dot(&self.u[t], v);
                if d == 0 {
                    x
                } else {
                    x.rem_euclid(d)
                }
            })
            .collect()
    }

    /// Some lattice vector whose class has the given label.
    pub(crate) fn lift(&self, label: &[i64]) -> Vec<i64> {
        let m = self.u.len();
        let mut e = vec![0; m];
        for (&(t, _), &x) in self.factors.iter().zip(label) {
            e[t] = x;
        }
        (0..m).map(|i| dot(&self.u_inv[i], &e)).collect()
    }
}

pub(crate) fn rational_vec(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&x| Rational64::from(x)).collect()
}
