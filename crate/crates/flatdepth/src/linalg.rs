//! Exact linear algebra over `Rat`: row reduction, rank, kernels, and span
//! membership. Matrices are row-major `Vec<Vec<Rat>>`; every row must have
//! the same width.

use crate::rat::{sign, Rat};
use num_traits::{One, Zero};

/// Reduce `m` in place to reduced row echelon form. Returns the pivot
/// columns, whose count is the rank.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| sign(&m[i][c]) != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone();
        for x in &mut m[r][c..] {
            *x = &*x / &inv;
        }
        for i in 0..rows {
            if i != r && sign(&m[i][c]) != 0 {
                let (row_i, row_r) = if i < r {
                    let (head, tail) = m.split_at_mut(r);
                    (&mut head[i], &tail[0])
                } else {
                    let (head, tail) = m.split_at_mut(i);
                    (&mut tail[0], &head[r])
                };
                let f = std::mem::replace(&mut row_i[c], Rat::zero());
                for (x, p) in row_i[c + 1..].iter_mut().zip(&row_r[c + 1..]) {
                    let delta = &f * p;
                    *x = &*x - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : Ax = 0}` for the matrix with the given rows, each of width
/// `cols`. One basis vector per free column, in column order; each has a 1 in
/// its free column. Returns `cols` unit vectors when `rows` is empty.
pub fn kernel_basis(rows: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Whether `v` lies in the row span of `basis`.
pub fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let base_rank = rank(basis);
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    rank(&extended) == base_rank
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}
