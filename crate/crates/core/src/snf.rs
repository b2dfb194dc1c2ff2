//! Smith normal form over the integers, with the unimodular transforms kept.
//!
//! For an `m × n` matrix `A` this produces unimodular `U` (`m × m`) and `V`
//! (`n × n`) with `U · A · V = D`, where `D` is diagonal, its entries are
//! non-negative and each divides the next. `V⁻¹` is tracked alongside so that
//! coordinate changes can be undone without a second inversion.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{vec_mul, zero_vec, IntMatrix};

#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal of `D`, length `min(m, n)`. The first `rank` entries are
    /// positive, the rest zero.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

/// Quotient rounded to the nearest integer, which keeps entries small.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    if b.is_negative() {
        return round_div(&-a, &-b);
    }
    let num: BigInt = a * 2 + b;
    num.div_floor(&(b * 2))
}

struct Work {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
    }

    /// Smallest nonzero entry (by absolute value) in the block starting at `t`.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d[(bi, bj)].abs() <= x.abs() => {}
                    _ => {
                        if x.is_one() || (-x).is_one() {
                            return Some((i, j));
                        }
                        best = Some((i, j));
                    }
                }
            }
        }
        best
    }
}

pub fn smith(a: &IntMatrix) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work { d: a.clone(), u: IntMatrix::identity(m), v: IntMatrix::identity(n), v_inv: IntMatrix::identity(n) };
    let k = m.min(n);
    let mut rank = 0;
    for t in 0..k {
        let Some((pi, pj)) = w.pivot(t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !w.d[(i, t)].is_zero() {
                    let q = round_div(&w.d[(i, t)], &w.d[(t, t)]);
                    w.add_row(i, t, &-q);
                    if !w.d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !w.d[(t, j)].is_zero() {
                    let q = round_div(&w.d[(t, j)], &w.d[(t, t)]);
                    w.add_col(j, t, &-q);
                    if !w.d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = &w.d[(i, t)];
                    if !x.is_zero() && x.abs() < w.d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = &w.d[(t, j)];
                    if !x.is_zero() && x.abs() < w.d[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    w.swap_rows(t, best.0);
                } else if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility of the remaining block
            let p = w.d[(t, t)].clone();
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.d[(i, j)].is_multiple_of(&p) {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => {
                    w.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
        rank = t + 1;
    }
    let diag = (0..k).map(|i| w.d[(i, i)].clone()).collect();
    Snf { diag, rank, u: w.u, v: w.v, v_inv: w.v_inv }
}

/// A basis (as rows) of `{x : x · A = 0}`.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let idx: Vec<usize> = (s.rank..a.rows()).collect();
    s.u.select_rows(&idx)
}

/// Some `x` with `x · A = v`, if one exists.
pub fn solve_left(a: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_left_with(&smith(a), a.rows(), v)
}

/// [`solve_left`] reusing a precomputed factorisation of `A` (`m` rows).
pub fn solve_left_with(s: &Snf, m: usize, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let w = vec_mul(v, &s.v);
    let mut z = zero_vec(m);
    for (i, wi) in w.iter().enumerate() {
        if i < s.rank {
            let (q, r) = wi.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !wi.is_zero() {
            return None;
        }
    }
    Some(vec_mul(&z, &s.u))
}

/// A basis (as rows) of the lattice spanned by the rows of `A`.
pub fn row_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let rows = (0..s.rank)
        .map(|i| s.v_inv.row(i).iter().map(|x| x * &s.diag[i]).collect())
        .collect();
    IntMatrix::from_rows(a.cols(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(a: &IntMatrix) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d[(i, j)], want);
            }
        }
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        for i in 0..s.diag.len() {
            assert!(!s.diag[i].is_negative());
            assert_eq!(i < s.rank, !s.diag[i].is_zero());
            if i + 1 < s.rank {
                assert!(s.diag[i + 1].is_multiple_of(&s.diag[i]));
            }
        }
    }

    #[test]
    fn small_example() {
        let a = IntMatrix::from_i64(3, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a);
        assert_eq!(s.diag, crate::matrix::int_vec(&[2, 6, 12]));
        check(&a);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_i64(2, &[&[1, 2], &[2, 4], &[0, 3]]);
        let k = left_kernel(&a);
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
        let x = solve_left(&a, &crate::matrix::int_vec(&[1, 5])).unwrap();
        assert_eq!(vec_mul(&x, &a), crate::matrix::int_vec(&[1, 5]));
        assert!(solve_left(&a, &crate::matrix::int_vec(&[0, 1])).is_none());
    }

    proptest! {
        #[test]
        fn snf_factorisation(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-20i64..20, 25)) {
            let data: Vec<Vec<BigInt>> = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(seed[i * 5 + j])).collect())
                .collect();
            check(&IntMatrix::from_rows(cols, data));
        }
    }
}
